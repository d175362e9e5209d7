//! Fast cross-checks of a handful of rows, exercised on every test run;
//! the full sweep lives in the acceptance suite.

use tables::crosscheck::{b1_family_scan, crosscheck_b2_row, crosscheck_row, RowStatus, Session};
use tables::data::load_tables;

#[test]
fn a5_and_a6_rows_match() {
    let t = load_tables().unwrap();
    let mut session = Session::new(false);
    for id in ["a5_d10", "a6_l25", "a6_d20", "a6_54", "a6_3q8", "a6_s3wr"] {
        let row = t.a2.iter().find(|r| r.row_id == id).unwrap();
        for form in &row.g_forms {
            let rep = crosscheck_row(&mut session, row, form).unwrap();
            assert_eq!(rep.status, RowStatus::Match, "{id}/{form}: {rep:?}");
        }
    }
}

#[test]
fn l28_rows_match() {
    let t = load_tables().unwrap();
    let mut session = Session::new(false);
    for id in ["l28_p1", "l28_d14", "l28_d18"] {
        let row = t.a2.iter().find(|r| r.row_id == id).unwrap();
        for form in &row.g_forms {
            let rep = crosscheck_row(&mut session, row, form).unwrap();
            assert_eq!(rep.status, RowStatus::Match, "{id}/{form}: {rep:?}");
        }
    }
}

#[test]
fn m10_quasiprimitive_row() {
    let t = load_tables().unwrap();
    let mut session = Session::new(false);
    let row = t.b2.iter().find(|r| r.row_id == "b2_m10").unwrap();
    let rep = crosscheck_b2_row(&mut session, row).unwrap();
    assert_eq!(rep.status, RowStatus::Match, "{rep:?}");
    assert_eq!(rep.depth, Some(2));
}

#[test]
fn b1_scan_small_mersenne() {
    let cfg = derangement::CensusConfig::default();
    let scan = b1_family_scan("II", 7, &cfg).unwrap();
    assert!(scan.all_match, "{scan:?}");
    // no proper divisor of 6 has the full radical, so only d = 6 is
    // almost elusive
    for e in &scan.entries {
        assert_eq!(e.actual_ae, e.d == 6, "{e:?}");
        // the involutory remark: a unique class of involutory derangements
        // for every even d
        if e.d % 2 == 0 {
            assert_eq!(e.involutory_derangement_classes, 1, "{e:?}");
        }
    }
}
