use dsemion::anyons::{f_symbol_report, r_symbol_report, s_matrix, SectorAlgebra};
use dsemion::category::AnyonData;
use dsemion::groundstate::Convention;

#[test]
fn f_symbols_at_n3() {
    let r = f_symbol_report(3).unwrap();
    eprintln!("{}", serde_json::to_string(&r.checks).unwrap());
    assert!(r.passed(), "{:?}", r.checks);
}

#[test]
fn r_symbols_at_n3() {
    let r = r_symbol_report(3).unwrap();
    eprintln!("{}", serde_json::to_string(&r.checks).unwrap());
    assert!(r.passed(), "{:?}", r.checks);
}

#[test]
fn sector_data_is_gauge_equivalent_to_reference() {
    let data = SectorAlgebra::new(3).unwrap().anyon_data().unwrap();
    assert!(data.gauge_equivalent(&AnyonData::double_semion()).is_some());
}

#[test]
fn s_matrix_at_n3() {
    let (rep, _) = s_matrix(3, Convention::LoopCount, 1).unwrap();
    assert!(rep.passed());
}

#[test]
fn tables_match_reference_values() {
    let alg = SectorAlgebra::new(3).unwrap();
    let chiral = |x: usize| x == 1 || x == 2;
    let f = alg.f_table().unwrap();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let want = if chiral(a) && chiral(b) && chiral(c) { 2 } else { 0 };
                assert_eq!(f[16 * a + 4 * b + c], want);
            }
        }
    }
    let eps = alg.epsilon_table().unwrap();
    assert_eq!(eps, vec![0, 0, 0, 0, 0, 1, 3, 2, 0, 1, 3, 2, 0, 0, 0, 0]);
}
