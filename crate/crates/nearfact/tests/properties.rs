//! Property-based invariants over random groups and subsets.

use proptest::prelude::*;

use nearfact::group::{automorphism_generators, canonical_reject, Group, Subset, AUT_ENUM_BUDGET};
use nearfact::mate::mate;
use nearfact::ring::{check_nf, RingElem};

const GROUP_SPECS: &[&str] = &[
    "Z5", "Z7", "Z8", "Z9", "Z12", "Z15", "Z2xZ2xZ2", "Z6xZ2", "Z4xZ4", "Z3xZ3",
];

fn group_and_subset() -> impl Strategy<Value = (Group, Subset)> {
    (0..GROUP_SPECS.len()).prop_flat_map(|gi| {
        let g = Group::parse(GROUP_SPECS[gi]).unwrap();
        let n = g.order();
        proptest::collection::btree_set(0..n, 1..=5.min(n - 1)).prop_map(move |elems| {
            let s = Subset::new(&g, elems.into_iter().collect()).unwrap();
            (g.clone(), s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Parsing the rendered form gives the subset back.
    #[test]
    fn subset_render_roundtrip((g, s) in group_and_subset()) {
        let text = s.render();
        let back = Subset::parse(&g, text.trim_matches(['{', '}'])).unwrap();
        prop_assert_eq!(back, s);
    }

    /// translation_normalize yields a translate containing the identity,
    /// lexicographically least among all translates.
    #[test]
    fn translation_normalize_is_least_translate((g, s) in group_and_subset()) {
        let norm = s.translation_normalize();
        prop_assert!(norm.contains(g.zero()));
        let mut found = false;
        for e in 0..g.order() {
            let tr = s.translate(e);
            prop_assert!(norm.elems() <= tr.elems());
            found |= tr == norm;
        }
        prop_assert!(found, "normal form must be an actual translate");
    }

    /// Convolution commutes (the group ring of an abelian group is
    /// commutative), so the near-factorization check is order-insensitive
    /// up to swapping the reported roles.
    #[test]
    fn convolution_commutes((g, s) in group_and_subset(), seed in 0usize..1000) {
        let t_elems: Vec<usize> = (0..g.order()).filter(|e| (e * 7 + seed) % 3 == 0).collect();
        prop_assume!(!t_elems.is_empty());
        let t = Subset::new(&g, t_elems).unwrap();
        let a = RingElem::from_subset(&s).convolve(&RingElem::from_subset(&t)).unwrap();
        let b = RingElem::from_subset(&t).convolve(&RingElem::from_subset(&s)).unwrap();
        prop_assert_eq!(a.coeffs(), b.coeffs());
        prop_assert_eq!(check_nf(&s, &t).unwrap(), check_nf(&t, &s).unwrap());
    }

    /// Mates are translation-equivariant: mate(S + g) = mate(S) − g.
    #[test]
    fn mate_translation_equivariance((g, s) in group_and_subset(), shift in 0usize..16) {
        let shift = shift % g.order();
        let m1 = mate(&s).unwrap().mate;
        let m2 = mate(&s.translate(shift)).unwrap().mate;
        match (m1, m2) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                prop_assert_eq!(&a.t().translate(g.neg(shift)), b.t());
                prop_assert_eq!(a.lambda(), b.lambda());
            }
            _ => prop_assert!(false, "translate changed mate existence"),
        }
    }

    /// The dual swaps roles and inverts; applying it twice is the identity.
    #[test]
    fn dual_is_involutive((_g, s) in group_and_subset()) {
        if let Some(nf) = mate(&s).unwrap().mate {
            let d = nf.dual();
            prop_assert_eq!(d.s(), &nf.t().negate());
            prop_assert_eq!(d.lambda(), nf.lambda());
            let dd = d.dual();
            prop_assert_eq!(dd.s(), nf.s());
            prop_assert_eq!(dd.t(), nf.t());
        }
    }

    /// Automorphisms preserve near-factorizations and λ.
    #[test]
    fn automorphisms_preserve_nf((g, s) in group_and_subset()) {
        if let Some(nf) = mate(&s).unwrap().mate {
            for tr in automorphism_generators(&g, AUT_ENUM_BUDGET).iter().take(8) {
                let si = nf.s().apply(tr);
                let ti = nf.t().apply(tr);
                prop_assert_eq!(check_nf(&si, &ti).unwrap(), Some(nf.lambda()));
            }
        }
    }

    /// Pruning is sound: the lexicographically least member of an
    /// equivalence class is never rejected.
    #[test]
    fn canonical_reject_keeps_class_minimum((g, s) in group_and_subset()) {
        let transforms = automorphism_generators(&g, AUT_ENUM_BUDGET);
        // Compute the class minimum by hand.
        let mut best = s.translation_normalize().elems().to_vec();
        for tr in &transforms {
            let e = s.apply(tr).translation_normalize().elems().to_vec();
            if e < best {
                best = e;
            }
        }
        prop_assert!(!canonical_reject(&g, &best, &transforms));
    }
}
