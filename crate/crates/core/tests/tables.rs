mod common;

use common::{data_path, table};
use lg_core::alexander::alexander_oracle;
use lg_core::{lg11, lg21, LaurentPoly2};

#[test]
fn bundled_tables_are_knots() {
    for (rel, n) in [("knots/upto10.tsv", 250), ("knots/11.tsv", 552), ("knots/12.tsv", 2176), ("knots/extra.tsv", 10)]
    {
        let t = table(rel);
        assert_eq!(t.len(), n, "{rel}");
        for r in &t {
            assert_eq!(r.braid.closure_components(), 1, "{}", r.name);
            if let Some(dt) = &r.dt {
                assert_eq!(dt.crossings() as u32, r.name.crossings().unwrap_or(dt.crossings() as u32));
            }
        }
    }
    assert!(data_path("pd/upto10.pd").exists());
}

#[test]
fn lg11_matches_alexander_up_to_8_crossings() {
    let mut checked = 0;
    for r in table("knots/upto10.tsv") {
        let c: u32 = r.name.to_string().split('_').next().unwrap().parse().unwrap();
        if c > 8 {
            continue;
        }
        let a = alexander_oracle(&r.braid).unwrap();
        assert!(lg11(&r.braid).unwrap().dot_eq(&a.in_p_squared()), "{}: {}", r.name, a);
        checked += 1;
    }
    assert_eq!(checked, 36);
}

#[test]
fn lg21_is_nontrivial_up_to_10_crossings() {
    let one = LaurentPoly2::one();
    for r in table("knots/upto10.tsv") {
        let v = lg21(&r.braid).unwrap();
        let trivial = r.name.to_string() == "0_1";
        assert_eq!(v == one, trivial, "{}", r.name);
        assert_eq!(v.sum_of_coeffs(), 1.into(), "{}", r.name);
    }
}
