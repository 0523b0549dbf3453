use proptest::prelude::*;

use britton::morphisms::{compose, is_inverse_pair, power_map, rho, rho_prime, tau, tau_inverse};
use britton::{Level, Subgroup, Tower, Word};

fn tower() -> &'static Tower {
    Tower::shared()
}

fn w(text: &str) -> Word {
    Word::parse(text).unwrap()
}

fn word_over(level: Level) -> impl Strategy<Value = Word> {
    let letters = level.alphabet().to_vec();
    prop::collection::vec((0..letters.len(), prop_oneof![Just(-1i64), Just(1i64), Just(2i64)]), 0..10).prop_map(
        move |gens| {
            let mut out = Word::empty();
            for (i, e) in gens {
                out.push_word(&Word::power(letters[i], e));
            }
            out
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_trivial_in_g(x in word_over(Level::G)) {
        prop_assert!(tower().wp_is_trivial(Level::G, &x.concat(&x.inverse())).unwrap());
    }

    #[test]
    fn normal_form_is_equal_in_k(x in word_over(Level::K)) {
        let nf = tower().normal_form(Level::K, &x).unwrap();
        prop_assert!(tower().wp_equal(Level::K, &x, &nf).unwrap());
    }

    #[test]
    fn h2_words_agree_with_g(x in word_over(Level::H2)) {
        prop_assert_eq!(
            tower().wp_is_trivial(Level::H2, &x).unwrap(),
            tower().wp_is_trivial(Level::G, &x).unwrap()
        );
    }

    #[test]
    fn powers_of_u_are_found(n in -30i64..30) {
        let x = Word::power(britton::Letter::U, n);
        prop_assert_eq!(tower().subgroup_member(Level::K, Subgroup::U, &x).unwrap(), Some(n.into()));
    }
}

#[test]
fn spec_words() {
    let t = tower();
    assert!(t.wp_is_trivial(Level::H2, &w("t^-1 s t s^-3")).unwrap());
    assert!(!t.wp_is_trivial(Level::G, &w("c^3")).unwrap());
    assert!(t.wp_is_trivial(Level::K, &w("u^-1 b a c b^-1 u a^-1")).unwrap());
    assert!(t.wp_is_trivial(Level::G, &w("y^-1 v y f c^-3 f^-1 c^-3")).unwrap());
    assert!(!t.wp_is_trivial(Level::G, &w("x^-1 u x u^-1")).unwrap());
}

#[test]
fn subgroup_levels_are_enforced() {
    assert!(tower().subgroup_member(Level::G, Subgroup::U, &w("u")).is_err());
    assert_eq!(tower().subgroup_member(Level::H1, Subgroup::S3, &w("s^6")).unwrap(), Some(2.into()));
    assert_eq!(tower().subgroup_member(Level::H1, Subgroup::S3, &w("s^4")).unwrap(), None);
}

#[test]
fn automorphism_pairs() {
    let t = tower();
    let v = |h: britton::morphisms::Hom| h.verified(t).unwrap();
    assert!(is_inverse_pair(t, &rho(2), &rho_prime(2)).is_err());
    assert!(is_inverse_pair(t, &v(rho(2)), &v(rho_prime(2))).unwrap());
    assert!(is_inverse_pair(t, &v(tau(5).unwrap()), &v(tau_inverse(5).unwrap())).unwrap());
    let mut bad = power_map(4, -1);
    assert!(!bad.check_well_defined(t).unwrap().verdict);
    let r1 = rho(1).verified(t).unwrap();
    let twice = compose(&r1, &r1).unwrap();
    assert!(is_inverse_pair(t, &twice, &v(rho_prime(2))).unwrap());
}
