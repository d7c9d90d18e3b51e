mod common;

use proptest::prelude::*;

use common::{braids, p_palindromic, q_parity_holds};
use lg_core::alexander::alexander_oracle;
use lg_core::{lg11, lg21, BraidWord, Var};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn stabilization(b in braids(4, 12), positive in any::<bool>()) {
        let v = lg21(&b).unwrap();
        let up = b.stabilize(positive);
        prop_assert_eq!(lg21(&up).unwrap(), v.clone());
        prop_assert_eq!(up.destabilize().unwrap(), b);
    }

    #[test]
    fn conjugation(b in braids(4, 12), w in prop::collection::vec(-3i32..=3, 0..4), k in 0usize..12) {
        let v = lg21(&b).unwrap();
        let w: Vec<i32> = w.into_iter().filter(|&l| l != 0 && (l.unsigned_abs() as usize) < b.strands()).collect();
        prop_assert_eq!(lg21(&b.conjugate(&w).unwrap()).unwrap(), v.clone());
        prop_assert_eq!(lg21(&b.rotate(k)).unwrap(), v);
    }

    #[test]
    fn braid_relations(b in braids(4, 12), i in 0usize..12) {
        if let Ok(c) = b.braid_relation_rewrite(i) {
            prop_assert_eq!(lg21(&c).unwrap(), lg21(&b).unwrap());
        }
    }

    #[test]
    fn reflection_inverts_q(b in braids(4, 12)) {
        let v = lg21(&b).unwrap();
        prop_assert_eq!(lg21(&b.reflect()).unwrap(), v.substitute_inverse(Var::Q));
        prop_assert!(lg21(&b.invert()).unwrap().dot_eq(&v));
    }

    #[test]
    fn symmetry_of_values(b in braids(4, 12)) {
        let v = lg21(&b).unwrap();
        prop_assert!(p_palindromic(&v), "{} gives {}", b, v);
        prop_assert!(q_parity_holds(&v), "{} gives {}", b, v);
        prop_assert!(v.has_integral_exponents());
    }

    #[test]
    fn lg11_is_alexander(b in braids(4, 12)) {
        prop_assume!(b.closure_components() == 1);
        let a = alexander_oracle(&b).unwrap();
        prop_assert!(lg11(&b).unwrap().dot_eq(&a.in_p_squared()), "{}", b);
    }
}

#[test]
fn unknot_diagrams() {
    for w in ["", "1", "-1", "1,2", "1,-2,-3"] {
        let b: BraidWord = w.parse().unwrap();
        assert!(lg21(&b).unwrap().is_one(), "{w}");
    }
}
