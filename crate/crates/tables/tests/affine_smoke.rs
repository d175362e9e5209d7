//! Candidate counts for the small affine degrees.

use tables::affine_check::table1_check;
use tables::data::load_tables;

#[test]
fn degree_25_has_four() {
    let t = load_tables().unwrap();
    let row = t.t1.iter().find(|r| r.degree == "5^2").unwrap();
    let rep = table1_check(row, false).unwrap();
    assert!(rep.oracle_agreements, "{rep:?}");
    assert!(rep.matches, "expected 4, got {} ({:?})", rep.ae_count, rep.candidates);
}

#[test]
fn degree_16_has_two() {
    let t = load_tables().unwrap();
    let row = t.t1.iter().find(|r| r.degree == "2^4").unwrap();
    let rep = table1_check(row, false).unwrap();
    assert!(rep.oracle_agreements, "{rep:?}");
    assert!(rep.matches, "expected 2, got {} ({:?})", rep.ae_count, rep.candidates);
}
