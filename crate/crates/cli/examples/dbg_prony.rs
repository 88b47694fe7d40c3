use interp_core::catalog::bundled_instance;
use interp_core::moments::{collect_moments, IndexScheme, SchemeKind};
use interp_core::oracle::EvaluationOracle;
use interp_core::prony::{advanced_prony, toeplitz_prony, PronyConfig, PronyVariant};
use interp_core::recover::{decode_exponents_lossy, relative_error};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let k: usize = args[1].parse().unwrap();
    let mode = args[2].as_str();
    let d: i64 = args[3].parse().unwrap();
    let inst = bundled_instance(k).unwrap();
    let truth = inst.polynomial().unwrap();
    let n = truth.dimension();
    let oracle = EvaluationOracle::new(truth.clone(), None);
    let phi = interp_core::base_point::BasePoint::unit_angles(n).unwrap();
    let cfg = PronyConfig::default();
    let mu = match mode {
        "tp" => {
            let idx = IndexScheme::new(SchemeKind::OneNormSigned, d, n);
            let seq = collect_moments(&oracle, &phi, &idx).unwrap();
            toeplitz_prony(&seq, d, &cfg)
        }
        "advt" => advanced_prony(&oracle, &phi, truth.sparsity(), PronyVariant::Toeplitz, &cfg),
        "advh" => advanced_prony(&oracle, &phi, truth.sparsity(), PronyVariant::Hankel, &cfg),
        _ => panic!("mode"),
    };
    match mu {
        Err(e) => eprintln!("error: {}", e),
        Ok(out) => {
            let mu = out.measure;
            eprintln!("warnings: {:?}", out.warnings);
            eprintln!("atoms: {}", mu.len());
            for a in mu.atoms() {
                let angles: Vec<f64> = a.point.iter().map(|z| z.arg()).collect();
                eprintln!("  w={:.6} angles={:?}", a.weight, angles);
            }
            match decode_exponents_lossy(&mu, &phi, inst.degree_bound, None) {
                Err(e) => eprintln!("decode error: {}", e),
                Ok((est, dropped)) => {
                    eprintln!("decoded (dropped {}): {:?}", dropped, est);
                    eprintln!("relerr = {:.3e}%", relative_error(&est, &truth).unwrap());
                }
            }
        }
    }
    eprintln!("evals: {}", oracle.evaluation_count());
}
