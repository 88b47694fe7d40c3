use interp_cli::runner::{lp_base_point, lp_candidate_grid};
use interp_cli::SchemeChoice;
use interp_core::catalog::bundled_instance;
use interp_core::lp::rigorous_lp;
use interp_core::moments::{collect_moments, IndexScheme};
use interp_core::oracle::EvaluationOracle;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: usize = args[1].parse().unwrap();
    let d: i64 = args[2].parse().unwrap();
    let inst = bundled_instance(k).unwrap();
    let truth = inst.polynomial().unwrap();
    let n = truth.dimension();
    let oracle = EvaluationOracle::new(truth.clone(), None);
    let phi = lp_base_point(n, inst.degree_bound).unwrap();
    let grid = lp_candidate_grid(SchemeChoice::A1, inst.degree_bound);
    let idx = IndexScheme::new(interp_core::moments::SchemeKind::OneNormSigned, d, n);
    let seq = collect_moments(&oracle, &phi, &idx).unwrap();
    eprintln!("collected {} moments", seq.records().len());
    let out = rigorous_lp(&seq, &phi, &idx, &grid, None).unwrap();
    eprintln!(
        "status {:?} iters {} obj {:.6} rows {} cands {}",
        out.solution.status,
        out.solution.iterations,
        out.solution.objective,
        out.rows.len(),
        out.candidates.len()
    );
    eprintln!("estimate: {:?}", out.polynomial);
}
