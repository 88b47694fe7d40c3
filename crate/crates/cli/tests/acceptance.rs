//! End-to-end acceptance checks. Each test prints exactly one line,
//! `criterion NN (<what it checks>): PASS` or `... FAIL`, so the suite
//! doubles as a scoreboard when run with `--nocapture`.
//!
//! The heaviest table cells (the 1596-evaluation hierarchy row) live in
//! `#[ignore]` tests; run them with `cargo test -- --ignored`.

use interp_cli::config::{Method, SchemeChoice};
use interp_cli::noise::{noise_trials, NoiseSuiteSettings};
use interp_cli::runner::{find_min_evaluations, MethodSettings};
use interp_cli::table::format_min_evals;
use interp_core::catalog::bundled_instance;
use interp_core::linalg::eig_hermitian;
use interp_core::lp::{dual_certificate, rigorous_lp, CandidateGrid};
use interp_core::measure::measure_from_polynomial;
use interp_core::moments::collect_moments;
use interp_core::multi_index::{box_up_to, natural_up_to, signed_differences};
use interp_core::recover::{decode_exponents, relative_error};
use interp_core::sdp::{
    build_hierarchy_step, realify, super_resolution, SuperResolutionConfig,
};
use interp_core::{
    BasePoint, Complex64, EvaluationOracle, IndexScheme, MultiIndex, SchemeKind, SparsePolynomial,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::time::Instant;

fn criterion(num: u32, desc: &str, res: Result<(), String>) {
    match res {
        Ok(()) => println!("criterion {:02} ({}): PASS", num, desc),
        Err(e) => {
            println!("criterion {:02} ({}): FAIL - {}", num, desc, e);
            panic!("criterion {:02} ({}) failed: {}", num, desc, e);
        }
    }
}

fn showcase_polynomial() -> SparsePolynomial {
    SparsePolynomial::new(
        1,
        vec![
            (MultiIndex::new(vec![20]), 3.0),
            (MultiIndex::new(vec![75]), 1.0),
            (MultiIndex::new(vec![80]), -6.0),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_01_univariate_showcase_integer_angles() {
    criterion(1, "univariate hierarchy trace at an integer-angle point", (|| {
        let start = Instant::now();
        let g = showcase_polynomial();
        let oracle = EvaluationOracle::new(g.clone(), None);
        let phi = BasePoint::unit_angles(1).map_err(|e| e.to_string())?;
        let out = super_resolution(
            &oracle,
            &phi,
            SchemeKind::OneNormSigned,
            0,
            3,
            None,
            &SuperResolutionConfig::default(),
        )
        .map_err(|e| e.to_string())?;
        let want_tv = [2.0, 8.7759, 9.2803, 10.0];
        let want_atoms = [1usize, 2, 3, 3];
        if out.trace.len() != 4 {
            return Err(format!("expected 4 trace rows, got {}", out.trace.len()));
        }
        for (row, (&tv, &atoms)) in out.trace.iter().zip(want_tv.iter().zip(&want_atoms)) {
            if (row.tv_value - tv).abs() > 1e-3 {
                return Err(format!(
                    "order {}: total variation {:.4}, expected {:.4}",
                    row.order, row.tv_value, tv
                ));
            }
            if row.atom_count != atoms {
                return Err(format!(
                    "order {}: {} atoms, expected {}",
                    row.order, row.atom_count, atoms
                ));
            }
        }
        let back = decode_exponents(&out.measure, &phi, 80, None).map_err(|e| e.to_string())?;
        let err = relative_error(&back, &g).map_err(|e| e.to_string())?;
        if err > 1e-6 {
            return Err(format!("recovery error {:.2e}%", err));
        }
        let secs = start.elapsed().as_secs_f64();
        if secs > 10.0 {
            return Err(format!("took {:.1}s, budget 10s", secs));
        }
        Ok(())
    })());
}

#[test]
fn criterion_02_univariate_roots_of_unity() {
    criterion(2, "univariate hierarchy at a 101st root of unity", (|| {
        let start = Instant::now();
        let g = showcase_polynomial();
        let oracle = EvaluationOracle::new(g.clone(), None);
        let phi = BasePoint::roots_of_unity(vec![101]).map_err(|e| e.to_string())?;
        let out = super_resolution(
            &oracle,
            &phi,
            SchemeKind::OneNormSigned,
            0,
            11,
            None,
            &SuperResolutionConfig::default(),
        )
        .map_err(|e| e.to_string())?;
        if out.trace.len() != 12 {
            return Err(format!("expected 12 trace rows, got {}", out.trace.len()));
        }
        for w in out.trace.windows(2) {
            if w[1].tv_value < w[0].tv_value - 1e-6 {
                return Err(format!(
                    "total variation decreased between orders {} and {}",
                    w[0].order, w[1].order
                ));
            }
        }
        let last = out.trace.last().unwrap();
        if (last.tv_value - 10.0).abs() > 1e-3 {
            return Err(format!("final total variation {:.4}", last.tv_value));
        }
        let back = decode_exponents(&out.measure, &phi, 100, None).map_err(|e| e.to_string())?;
        let err = relative_error(&back, &g).map_err(|e| e.to_string())?;
        if err > 1e-6 {
            return Err(format!("recovery error {:.2e}%", err));
        }
        let secs = start.elapsed().as_secs_f64();
        if secs > 120.0 {
            return Err(format!("took {:.1}s, budget 120s", secs));
        }
        Ok(())
    })());
}

/// Expected noiseless (evaluations, degree) cells, rendered the same way the
/// table formatter does: "evals (degree)" or just "evals" for the advanced
/// variants, "N. A." where the candidate grid is refused.
fn check_cells(
    scheme: SchemeChoice,
    method: Method,
    expected: &[(usize, &str)],
) -> Result<(), String> {
    for &(k, want) in expected {
        let inst = bundled_instance(k).map_err(|e| e.to_string())?;
        let truth = inst.polynomial().map_err(|e| e.to_string())?;
        let out = find_min_evaluations(
            &truth,
            inst.degree_bound,
            method,
            scheme,
            &MethodSettings::default(),
        )
        .map_err(|e| e.to_string())?;
        let got = format_min_evals(&out);
        if got != want {
            return Err(format!(
                "{} p{} under {:?}: got \"{}\", expected \"{}\"",
                method.label(),
                k,
                scheme,
                got,
                want
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_03_minimum_evaluation_tables() {
    criterion(3, "noiseless minimum-evaluation tables, both schemes", (|| {
        let start = Instant::now();
        // signed scheme
        check_cells(
            SchemeChoice::A1,
            Method::RigorousLp,
            &[
                (1, "2 (1)"), (2, "4 (3)"), (3, "5 (4)"), (4, "19 (3)"), (5, "10 (2)"),
                (6, "10 (2)"), (7, "7 (1)"), (8, "28 (2)"), (9, "136 (2)"), (10, "N. A."),
            ],
        )?;
        check_cells(
            SchemeChoice::A1,
            Method::Superres,
            &[
                (1, "3 (2)"), (2, "5 (4)"), (3, "6 (5)"), (4, "31 (4)"), (5, "19 (3)"),
                (6, "19 (3)"), (7, "28 (2)"), (8, "28 (2)"), (9, "136 (2)"),
            ],
        )?;
        check_cells(
            SchemeChoice::A1,
            Method::ToeplitzProny,
            &[
                (1, "3 (2)"), (2, "4 (3)"), (3, "6 (5)"), (4, "10 (2)"), (5, "19 (3)"),
                (6, "19 (3)"), (7, "28 (2)"), (8, "28 (2)"), (9, "136 (2)"), (10, "1596 (2)"),
            ],
        )?;
        check_cells(
            SchemeChoice::A1,
            Method::AdvancedT,
            &[
                (1, "3"), (2, "4"), (3, "6"), (4, "6"), (5, "13"),
                (6, "14"), (7, "9"), (8, "16"), (9, "30"), (10, "65"),
            ],
        )?;
        // simplex scheme
        check_cells(
            SchemeChoice::A2,
            Method::RigorousLp,
            &[
                (1, "2 (1)"), (2, "4 (3)"), (3, "5 (4)"), (4, "10 (3)"), (5, "10 (3)"),
                (6, "10 (3)"), (7, "10 (2)"), (8, "20 (3)"), (9, "21 (2)"), (10, "66 (2)"),
            ],
        )?;
        check_cells(
            SchemeChoice::A2,
            Method::Superres,
            &[
                (1, "3 (2)"), (2, "5 (4)"), (3, "6 (5)"), (4, "15 (4)"), (5, "15 (4)"),
                (6, "15 (4)"), (7, "10 (2)"), (8, "20 (3)"), (9, "21 (2)"),
            ],
        )?;
        check_cells(
            SchemeChoice::A2,
            Method::HankelProny,
            &[
                (1, "4 (3)"), (2, "6 (5)"), (3, "10 (9)"), (4, "10 (3)"), (5, "21 (5)"),
                (6, "21 (5)"), (7, "20 (3)"), (8, "20 (3)"), (9, "56 (3)"), (10, "286 (3)"),
            ],
        )?;
        check_cells(
            SchemeChoice::A2,
            Method::AdvancedH,
            &[
                (1, "4"), (2, "6"), (3, "10"), (4, "7"), (5, "15"),
                (6, "18"), (7, "10"), (8, "16"), (9, "28"), (10, "58"),
            ],
        )?;
        let secs = start.elapsed().as_secs_f64();
        if secs > 1800.0 {
            return Err(format!("took {:.0}s, budget 1800s", secs));
        }
        Ok(())
    })());
}

#[test]
#[ignore = "the ten-variable hierarchy solves semidefinite programs with thousands of variables"]
fn criterion_03_slow_hierarchy_rows() {
    criterion(3, "ten-variable hierarchy cells", (|| {
        check_cells(SchemeChoice::A2, Method::Superres, &[(10, "66 (2)")])?;
        check_cells(SchemeChoice::A1, Method::Superres, &[(10, "1596 (2)")])?;
        Ok(())
    })());
}

#[test]
fn criterion_04_hierarchy_step_shapes() {
    criterion(4, "hierarchy step matrix sizes and equality counts", (|| {
        let inst = bundled_instance(10).map_err(|e| e.to_string())?;
        let truth = inst.polynomial().map_err(|e| e.to_string())?;
        let oracle = EvaluationOracle::new(truth, None);
        let phi = BasePoint::unit_angles(10).map_err(|e| e.to_string())?;
        let cases = [
            (SchemeKind::OneNormSigned, 1i64, 11usize, 56usize),
            (SchemeKind::OneNormSigned, 2, 66, 1596),
            (SchemeKind::OneNormNatural, 2, 66, 66),
        ];
        for (kind, d, want_dim, want_eqs) in cases {
            let scheme = IndexScheme::new(kind, d, 10);
            let seq = collect_moments(&oracle, &phi, &scheme).map_err(|e| e.to_string())?;
            let step = build_hierarchy_step(&seq, &scheme, None).map_err(|e| e.to_string())?;
            if step.block_dim != want_dim || step.num_equalities != want_eqs {
                return Err(format!(
                    "{:?} order {}: {}x{} with {} equalities, expected {}x{} with {}",
                    kind, d, step.block_dim, step.block_dim, step.num_equalities,
                    want_dim, want_dim, want_eqs
                ));
            }
        }
        Ok(())
    })());
}

/// Published mean errors (percent) for the three comparable methods under
/// bounded noise of amplitude 0.1 at the shared minimal degree.
const NOISE_REFERENCE_A1: &[(usize, f64, f64, f64)] = &[
    // (instance, l1 recovery, hierarchy, direct decomposition)
    (1, 4.18, 1.58, 0.61),
    (2, 1.94, 1.81, 0.85),
    (3, 1.47, 1.40, 0.69),
    (4, 3.23, 4.84, 2.26),
    (5, 1.13, 0.87, 1.29),
    (6, 1.23, 1.08, 6.28),
    (7, 0.79, 0.70, 0.50),
    (8, 2.19, 1.03, 1.39),
];
const NOISE_REFERENCE_A2: &[(usize, f64, f64, f64)] = &[
    (1, 2.32, 1.66, 0.97),
    (2, 1.71, 2.31, 3.33),
    (3, 0.80, 1.64, 2.89),
    (4, 14.91, 11.03, 52.14),
    (5, 0.73, 1.01, 2.13),
    (6, 1.19, 12.30, 2.67),
    (7, 0.82, 1.32, 0.93),
    (8, 3.29, 2.13, 16.99),
    (9, 2.90, 1.64, 6.74),
];

fn noise_row(
    k: usize,
    scheme: SchemeChoice,
    methods: [Method; 3],
    seed: u64,
) -> Result<[f64; 3], String> {
    let inst = bundled_instance(k).map_err(|e| e.to_string())?;
    let truth = inst.polynomial().map_err(|e| e.to_string())?;
    let (_, degree) = interp_cli::noise::shared_noise_degree(
        &truth,
        inst.degree_bound,
        &methods,
        scheme,
        0.1,
    )
    .map_err(|e| e.to_string())?;
    let degree = degree.ok_or("no shared degree")?;
    let settings = NoiseSuiteSettings {
        amplitude: 0.1,
        trials: 10,
        base_seed: seed,
        rank_threshold: 0.1,
    };
    let mut means = [0.0f64; 3];
    for (slot, &m) in methods.iter().enumerate() {
        let stats = noise_trials(&truth, inst.degree_bound, m, scheme, degree, &settings);
        means[slot] = stats.mean;
    }
    Ok(means)
}

#[test]
fn criterion_05_noise_suite_within_published_bounds() {
    criterion(5, "noisy recovery errors within 3x the published means", (|| {
        for seed in [0u64, 1000, 2000] {
            for &(k, lp_ref, sr_ref, direct_ref) in NOISE_REFERENCE_A1 {
                let means = noise_row(
                    k,
                    SchemeChoice::A1,
                    [Method::RigorousLp, Method::Superres, Method::ToeplitzProny],
                    seed,
                )?;
                let refs = [lp_ref, sr_ref, direct_ref];
                for (got, want) in means.iter().zip(refs) {
                    if *got > 3.0 * want {
                        return Err(format!(
                            "signed scheme p{} seed {}: mean {:.2}% vs published {:.2}%",
                            k, seed, got, want
                        ));
                    }
                    if k <= 3 && *got > 10.0 {
                        return Err(format!(
                            "univariate p{} seed {}: mean {:.2}% above 10%",
                            k, seed, got
                        ));
                    }
                }
            }
            for &(k, lp_ref, sr_ref, direct_ref) in NOISE_REFERENCE_A2 {
                let means = noise_row(
                    k,
                    SchemeChoice::A2,
                    [Method::RigorousLp, Method::Superres, Method::HankelProny],
                    seed,
                )?;
                let refs = [lp_ref, sr_ref, direct_ref];
                for (got, want) in means.iter().zip(refs) {
                    if *got > 3.0 * want {
                        return Err(format!(
                            "simplex scheme p{} seed {}: mean {:.2}% vs published {:.2}%",
                            k, seed, got, want
                        ));
                    }
                    if k <= 3 && *got > 10.0 {
                        return Err(format!(
                            "univariate p{} seed {}: mean {:.2}% above 10%",
                            k, seed, got
                        ));
                    }
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_06_rank_threshold_direction() {
    criterion(6, "smaller rank thresholds degrade noisy recovery", (|| {
        let methods = [Method::Superres, Method::ToeplitzProny];
        let mut sums = [[0.0f64; 2]; 2]; // [method][threshold]
        for k in 4..=8usize {
            let inst = bundled_instance(k).map_err(|e| e.to_string())?;
            let truth = inst.polynomial().map_err(|e| e.to_string())?;
            let (_, degree) = interp_cli::noise::shared_noise_degree(
                &truth,
                inst.degree_bound,
                &[Method::RigorousLp, Method::Superres, Method::ToeplitzProny],
                SchemeChoice::A1,
                0.1,
            )
            .map_err(|e| e.to_string())?;
            let degree = degree.ok_or("no shared degree")?;
            for (mi, &m) in methods.iter().enumerate() {
                for (ti, eps) in [0.1f64, 1e-3].into_iter().enumerate() {
                    let settings = NoiseSuiteSettings {
                        amplitude: 0.1,
                        trials: 10,
                        base_seed: 0,
                        rank_threshold: eps,
                    };
                    let stats =
                        noise_trials(&truth, inst.degree_bound, m, SchemeChoice::A1, degree, &settings);
                    sums[mi][ti] += stats.mean;
                }
            }
        }
        for (mi, m) in methods.iter().enumerate() {
            if sums[mi][1] <= sums[mi][0] {
                return Err(format!(
                    "{}: error at threshold 1e-3 ({:.2}%) not above threshold 1e-1 ({:.2}%)",
                    m.label(),
                    sums[mi][1] / 5.0,
                    sums[mi][0] / 5.0
                ));
            }
        }
        Ok(())
    })());
}

fn random_support(rng: &mut ChaCha20Rng, pool: &[MultiIndex], terms: usize) -> Vec<MultiIndex> {
    let mut picked = Vec::new();
    while picked.len() < terms {
        let cand = pool[rng.gen_range(0..pool.len())].clone();
        if !picked.contains(&cand) {
            picked.push(cand);
        }
    }
    picked
}

fn random_poly_on(rng: &mut ChaCha20Rng, n: usize, pool: &[MultiIndex], terms: usize) -> SparsePolynomial {
    let support = random_support(rng, pool, terms);
    SparsePolynomial::new(
        n,
        support.into_iter().map(|b| {
            let mag = rng.gen_range(0.5..10.0);
            let sign = if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
            (b, sign * mag)
        }),
    )
    .unwrap()
}

#[test]
fn criterion_07_decode_round_trip_per_scheme() {
    criterion(7, "measure encoding and decoding round-trips exactly", (|| {
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        for case in 0..600 {
            let scheme = case % 3;
            let n = rng.gen_range(1..=3usize);
            let pool: Vec<MultiIndex> = match scheme {
                // nonnegative members of each index family
                0 => box_up_to(n, 4).into_iter().filter(|a| a.is_nonnegative()).collect(),
                1 => signed_differences(n, 4).into_iter().filter(|a| a.is_nonnegative()).collect(),
                _ => natural_up_to(n, 8),
            };
            let terms = rng.gen_range(1..=4usize);
            let g = random_poly_on(&mut rng, n, &pool, terms);
            let phi = BasePoint::unit_angles(n).map_err(|e| e.to_string())?;
            let mu = measure_from_polynomial(&g, &phi).map_err(|e| e.to_string())?;
            let back = decode_exponents(&mu, &phi, 10, None).map_err(|e| e.to_string())?;
            let err = relative_error(&back, &g).map_err(|e| e.to_string())?;
            if err > 1e-9 || back.sparsity() != g.sparsity() {
                return Err(format!("case {}: round-trip error {:.2e}%", case, err));
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_08_dual_certificate_complementarity() {
    criterion(8, "l1 dual certificate bounded by one, signs match the support", (|| {
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        for trial in 0..50 {
            let n = rng.gen_range(1..=2usize);
            let pool = natural_up_to(n, 3);
            let terms = rng.gen_range(1..=3usize);
            let g = random_poly_on(&mut rng, n, &pool, terms);
            let oracle = EvaluationOracle::new(g.clone(), None);
            let phi = BasePoint::unit_angles(n).map_err(|e| e.to_string())?;
            let scheme = IndexScheme::new(SchemeKind::OneNormSigned, 3, n);
            let seq = collect_moments(&oracle, &phi, &scheme).map_err(|e| e.to_string())?;
            let grid = CandidateGrid::Box { bound: 3 };
            let outcome =
                rigorous_lp(&seq, &phi, &scheme, &grid, None).map_err(|e| e.to_string())?;
            let cert = dual_certificate(&outcome, &phi).map_err(|e| e.to_string())?;
            for (beta, value) in &cert {
                if value.abs() > 1.0 + 1e-6 {
                    return Err(format!(
                        "trial {}: |dual functional| = {:.6} at {}",
                        trial, value.abs(), beta
                    ));
                }
                let coeff = outcome.polynomial.coefficient(beta);
                if coeff.abs() > 1e-7 && (value * coeff.signum() - 1.0).abs() > 1e-6 {
                    return Err(format!(
                        "trial {}: dual functional {:.6} at recovered term {} with sign {}",
                        trial, value, beta, coeff.signum()
                    ));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_09_hierarchy_contracts() {
    criterion(9, "hierarchy bounds, monotone trace, realification, extraction audit", (|| {
        // total variation never exceeds the coefficient 1-norm, trace is
        // monotone, and a certified extraction reproduces its data
        for k in 1..=3usize {
            let inst = bundled_instance(k).map_err(|e| e.to_string())?;
            let truth = inst.polynomial().map_err(|e| e.to_string())?;
            let oracle = EvaluationOracle::new(truth.clone(), None);
            let phi = BasePoint::unit_angles(1).map_err(|e| e.to_string())?;
            let out = super_resolution(
                &oracle,
                &phi,
                SchemeKind::OneNormSigned,
                0,
                8,
                None,
                &SuperResolutionConfig::default(),
            )
            .map_err(|e| e.to_string())?;
            for row in &out.trace {
                if row.tv_value > truth.one_norm() + 1e-6 {
                    return Err(format!(
                        "p{} order {}: total variation {:.4} above the 1-norm {:.4}",
                        k, row.order, row.tv_value, truth.one_norm()
                    ));
                }
            }
            for w in out.trace.windows(2) {
                if w[1].tv_value < w[0].tv_value - 1e-6 {
                    return Err(format!("p{}: trace not monotone", k));
                }
            }
            if out.certified {
                match out.audit_error {
                    Some(a) if a <= 1e-5 => {}
                    other => {
                        return Err(format!(
                            "p{}: certified extraction with audit error {:?}",
                            k, other
                        ))
                    }
                }
            }
        }
        // realification keeps Hermitian spectra (doubled)
        let mut rng = ChaCha20Rng::seed_from_u64(47);
        for trial in 0..100 {
            let dim = rng.gen_range(1..=5usize);
            let a = interp_core::linalg::DenseMatrix::from_fn(dim, dim, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let h = a.add(&a.adjoint());
            let r = realify(&h);
            let (wh, _) = eig_hermitian(&h).map_err(|e| e.to_string())?;
            let (wr, _) = eig_hermitian(&r).map_err(|e| e.to_string())?;
            for (i, &w) in wh.iter().enumerate() {
                if (wr[2 * i] - w).abs() > 1e-8 || (wr[2 * i + 1] - w).abs() > 1e-8 {
                    return Err(format!("trial {}: realified spectrum differs", trial));
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_10_node_separation_lemmas() {
    criterion(10, "point-separating matrices have full rank", (|| {
        let mut rng = ChaCha20Rng::seed_from_u64(53);
        // d distinct random points, monomial rows up to total degree d-1
        for trial in 0..100 {
            let n = rng.gen_range(1..=3usize);
            let d = rng.gen_range(2..=6usize);
            let points: Vec<Vec<Complex64>> = (0..d)
                .map(|_| {
                    (0..n)
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                })
                .collect();
            let rows = natural_up_to(n, d as i64 - 1);
            let mat = interp_core::linalg::DenseMatrix::from_fn(rows.len(), d, |i, j| {
                rows[i]
                    .entries()
                    .iter()
                    .zip(&points[j])
                    .map(|(&e, z)| z.powi(e as i32))
                    .product()
            });
            let f = interp_core::linalg::svd(&mat).map_err(|e| e.to_string())?;
            if f.s[d - 1] <= 1e-8 * f.s[0].max(1e-300) {
                return Err(format!("trial {}: rank below the point count {}", trial, d));
            }
        }
        // two distinct r-atom torus measures differ within degree r
        for trial in 0..100 {
            let n = rng.gen_range(1..=3usize);
            let r = rng.gen_range(1..=4usize);
            let draw = |rng: &mut ChaCha20Rng| {
                let atoms: Vec<interp_core::measure::Atom> = (0..r)
                    .map(|_| interp_core::measure::Atom {
                        point: (0..n)
                            .map(|_| {
                                Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0))
                            })
                            .collect(),
                        weight: rng.gen_range(0.5..2.0)
                            * if rng.gen_bool(0.5) { -1.0 } else { 1.0 },
                    })
                    .collect();
                interp_core::AtomicMeasure::new(n, atoms).unwrap()
            };
            let m1 = draw(&mut rng);
            let m2 = draw(&mut rng);
            let mut max_gap = 0.0f64;
            for alpha in signed_differences(n, r as i64) {
                let gap = (m1.moment(&alpha).unwrap() - m2.moment(&alpha).unwrap()).norm();
                max_gap = max_gap.max(gap);
            }
            if max_gap <= 1e-9 {
                return Err(format!(
                    "trial {}: distinct random measures share all moments to degree {}",
                    trial, r
                ));
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_11_solver_oracles() {
    criterion(11, "solver outputs match independent reference computations", (|| {
        // the detailed cross-checks (vertex enumeration for the simplex
        // solver, feasibility scans for the interior point method, Gram
        // spectra for the SVD) run in the core crate's oracle test target;
        // here a compact version guards the same contract end to end
        let mut rng = ChaCha20Rng::seed_from_u64(59);
        for trial in 0..100 {
            let m = rng.gen_range(1..=3usize);
            let nvars = rng.gen_range(m + 1..=8usize);
            let cols: Vec<Vec<f64>> = (0..nvars)
                .map(|_| (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let x0: Vec<f64> = (0..nvars)
                .map(|_| if rng.gen_bool(0.5) { rng.gen_range(0.0..2.0) } else { 0.0 })
                .collect();
            let mut b = vec![0.0; m];
            for (j, col) in cols.iter().enumerate() {
                for i in 0..m {
                    b[i] += col[i] * x0[j];
                }
            }
            let c: Vec<f64> = (0..nvars).map(|_| rng.gen_range(0.1..2.0)).collect();

            // reference: enumerate basic solutions
            let mut best: Option<f64> = None;
            let mut subset: Vec<usize> = (0..m).collect();
            loop {
                if let Some(xb) = solve_square(&cols, &b, &subset) {
                    if xb.iter().all(|&v| v >= -1e-9) {
                        let obj: f64 = subset.iter().zip(&xb).map(|(&j, &v)| c[j] * v).sum();
                        best = Some(best.map_or(obj, |cur: f64| cur.min(obj)));
                    }
                }
                if !next_combination(&mut subset, nvars) {
                    break;
                }
            }
            let reference = best.ok_or_else(|| format!("trial {}: no vertex found", trial))?;

            let lp = interp_core::lp::StandardLp {
                m,
                n: nvars,
                cols,
                b,
                c,
                neg_pairs: 0,
            };
            let sol = interp_core::lp::solve_standard(&lp).map_err(|e| e.to_string())?;
            if sol.status != interp_core::lp::LpStatus::Optimal {
                return Err(format!("trial {}: status {:?}", trial, sol.status));
            }
            if (sol.objective - reference).abs() > 1e-8 * (1.0 + reference.abs()) {
                return Err(format!(
                    "trial {}: simplex {:.10} vs enumeration {:.10}",
                    trial, sol.objective, reference
                ));
            }
        }
        Ok(())
    })());
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let m = subset.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (m - i) {
            subset[i] += 1;
            for k in i + 1..m {
                subset[k] = subset[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn solve_square(cols: &[Vec<f64>], b: &[f64], subset: &[usize]) -> Option<Vec<f64>> {
    let m = b.len();
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|i| subset.iter().map(|&j| cols[j][i]).collect())
        .collect();
    let mut rhs = b.to_vec();
    for k in 0..m {
        let (piv, mag) = (k..m)
            .map(|i| (i, a[i][k].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        if mag < 1e-10 {
            return None;
        }
        a.swap(k, piv);
        rhs.swap(k, piv);
        for i in k + 1..m {
            let f = a[i][k] / a[k][k];
            for j in k..m {
                a[i][j] -= f * a[k][j];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    let mut x = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|j| a[i][j] * x[j]).sum();
        x[i] = (rhs[i] - s) / a[i][i];
    }
    Some(x)
}
