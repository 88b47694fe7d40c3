use interp_core::sdp::{super_resolution, SuperResolutionConfig};
use interp_core::{BasePoint, EvaluationOracle, MultiIndex, SchemeKind, SparsePolynomial};

fn main() {
    let g = SparsePolynomial::new(
        1,
        vec![
            (MultiIndex::new(vec![20]), 3.0),
            (MultiIndex::new(vec![75]), 1.0),
            (MultiIndex::new(vec![80]), -6.0),
        ],
    )
    .unwrap();
    let oracle = EvaluationOracle::new(g, None);
    let phi = BasePoint::roots_of_unity(vec![101]).unwrap();
    let out = super_resolution(
        &oracle,
        &phi,
        SchemeKind::OneNormSigned,
        0,
        11,
        None,
        &SuperResolutionConfig::default(),
    )
    .unwrap();
    for row in &out.trace {
        println!("order {} tv {:.4} atoms {}", row.order, row.tv_value, row.atom_count);
    }
    println!("certified {} audit {:?}", out.certified, out.audit_error);
}
