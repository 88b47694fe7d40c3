use interp_cli::config::{Method, SchemeChoice};
use interp_cli::runner::{run_method, MethodSettings};
use interp_core::catalog::bundled_instance;
use interp_core::{IndexScheme, SchemeKind};
use interp_core::linalg::svd;
use interp_core::moments::toeplitz_matrix_shifted;
use interp_core::multi_index::MultiIndex;
use interp_core::oracle::{EvaluationOracle, NoiseModel};
use interp_core::BasePoint;
use interp_core::recover::relative_error;

fn collect(
    oracle: &EvaluationOracle,
    phi: &BasePoint,
    idx: &IndexScheme,
) -> interp_core::moments::MomentSequence {
    interp_core::moments::collect_moments(oracle, phi, idx).unwrap()
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: usize = args[1].parse().unwrap();
    let d: i64 = args[2].parse().unwrap();
    let inst = bundled_instance(k).unwrap();
    let truth = inst.polynomial().unwrap();
    let n = truth.dimension();
    let phi = BasePoint::unit_angles(n).unwrap();
    for trial in 0u64..10 {
        let noise = NoiseModel::new(0.1, trial);
        let oracle = EvaluationOracle::new(truth.clone(), Some(noise));
        let idx = IndexScheme::new(SchemeKind::OneNormSigned, d, n);
        let seq = collect(&oracle, &phi, &idx);
        let t0 = toeplitz_matrix_shifted(&seq, d - 1, &MultiIndex::zero(n)).unwrap();
        let f = svd(&t0.entries).unwrap();
        let svals: Vec<String> = f.s.iter().map(|s| format!("{:.4}", s)).collect();
        // successive-ratio rank and max-relative rank
        let mut r_succ = f.s.len();
        for i in 1..f.s.len() {
            if f.s[i] == 0.0 || f.s[i] / f.s[i - 1] < 0.1 {
                r_succ = i;
                break;
            }
        }
        let r_max = f.s.iter().filter(|&&s| s >= 0.1 * f.s[0]).count();
        let oracle2 = EvaluationOracle::new(truth.clone(), Some(NoiseModel::new(0.1, trial)));
        {
            let idx2 = IndexScheme::new(SchemeKind::OneNormSigned, d, n);
            let seq2 = collect(&oracle2, &phi, &idx2);
            let cfg = interp_core::prony::PronyConfig::default();
            if let Ok(out) = interp_core::prony::toeplitz_prony(&seq2, d, &cfg) {
                for atom in out.measure.atoms() {
                    let coords: Vec<String> = atom
                        .point
                        .iter()
                        .map(|z| format!("|{:.3}|@{:.3}", z.norm(), z.arg()))
                        .collect();
                    println!("  atom w={:.3} [{}]", atom.weight, coords.join(" "));
                }
            }
        }
        let oracle2 = EvaluationOracle::new(truth.clone(), Some(NoiseModel::new(0.1, trial)));
        let settings = MethodSettings::default();
        let err = run_method(
            Method::ToeplitzProny,
            &oracle2,
            inst.degree_bound,
            d,
            truth.sparsity(),
            SchemeChoice::A1,
            &settings,
        )
        .map(|r| (relative_error(&r.estimate, &truth).unwrap(), r.dropped_atoms))
        .unwrap_or((100.0, 99));
        let (err, dropped) = err;
        println!(
            "trial {} rank_succ {} rank_max {} err {:.2}% dropped {} s=[{}]",
            trial,
            r_succ,
            r_max,
            err,
            dropped,
            svals.join(", ")
        );
    }
}
