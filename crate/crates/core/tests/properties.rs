//! Randomized checks of the structural identities everything else leans
//! on: composition, universal properties of (co)products, the currying
//! bijection, enumeration contracts, and lasso canonicalization.

use std::collections::HashSet;

use costrength_core::finset::{
    all_functions, compose, copair, coproduct, curry, exponential, hom_size, identity, pair,
    product, uncurry, FinFun, FinSet,
};
use costrength_core::functor::FunctorExpr;
use costrength_core::nat::{enumerate_nat, NatFamily};
use costrength_core::streams::Lasso;
use costrength_core::universe::{Budget, Universe};
use proptest::prelude::*;

/// A function table into a nonempty codomain of the given size.
fn table(dom: usize, cod: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..cod, dom)
}

fn fun(dom: usize, cod: usize, t: Vec<usize>) -> FinFun {
    FinFun::new(FinSet::canonical(dom), FinSet::canonical(cod), t).unwrap()
}

proptest! {
    #[test]
    fn composition_is_associative(
        (f, g, h) in (1usize..5, 1usize..5, 1usize..5, 1usize..5).prop_flat_map(|(a, b, c, d)| {
            (table(a, b), table(b, c), table(c, d)).prop_map(move |(tf, tg, th)| {
                (fun(a, b, tf), fun(b, c, tg), fun(c, d, th))
            })
        })
    ) {
        let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
        let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identities_are_neutral(
        f in (1usize..6, 1usize..6).prop_flat_map(|(a, b)| {
            table(a, b).prop_map(move |t| fun(a, b, t))
        })
    ) {
        prop_assert_eq!(&compose(&identity(f.cod()), &f).unwrap(), &f);
        prop_assert_eq!(&compose(&f, &identity(f.dom())).unwrap(), &f);
    }

    #[test]
    fn pairing_is_the_unique_mediator(
        (f, g) in (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(z, a, b)| {
            (table(z, a), table(z, b)).prop_map(move |(tf, tg)| {
                (fun(z, a, tf), fun(z, b, tg))
            })
        })
    ) {
        let p = product(f.cod(), g.cod());
        let h = pair(&f, &g).unwrap();
        prop_assert_eq!(&compose(&p.proj1(), &h).unwrap(), &f);
        prop_assert_eq!(&compose(&p.proj2(), &h).unwrap(), &g);
        let mediators = all_functions(f.dom(), &p.object)
            .filter(|cand| {
                compose(&p.proj1(), cand).unwrap() == f && compose(&p.proj2(), cand).unwrap() == g
            })
            .count();
        prop_assert_eq!(mediators, 1);
    }

    #[test]
    fn copairing_is_the_unique_mediator(
        (f, g) in (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, z)| {
            (table(a, z), table(b, z)).prop_map(move |(tf, tg)| {
                (fun(a, z, tf), fun(b, z, tg))
            })
        })
    ) {
        let c = coproduct(f.dom(), g.dom());
        let h = copair(&f, &g).unwrap();
        prop_assert_eq!(&compose(&h, &c.inl()).unwrap(), &f);
        prop_assert_eq!(&compose(&h, &c.inr()).unwrap(), &g);
        let mediators = all_functions(&c.object, f.cod())
            .filter(|cand| {
                compose(cand, &c.inl()).unwrap() == f && compose(cand, &c.inr()).unwrap() == g
            })
            .count();
        prop_assert_eq!(mediators, 1);
    }

    #[test]
    fn currying_transposes_bijectively(
        (zs, as_, f) in (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(z, a, b)| {
            table(z * a, b).prop_map(move |t| {
                let zs = FinSet::canonical(z);
                let as_ = FinSet::canonical(a);
                let p = product(&zs, &as_);
                let f = FinFun::new(p.object, FinSet::canonical(b), t).unwrap();
                (zs, as_, f)
            })
        })
    ) {
        let curried = curry(&f, &zs, &as_).unwrap();
        let back = uncurry(&curried, &as_, f.cod()).unwrap();
        prop_assert_eq!(&back, &f);
        // the two hom-sets the transpose connects have the same size
        let e = exponential(&as_, f.cod());
        prop_assert_eq!(hom_size(f.dom(), f.cod()), hom_size(&zs, &e.object));
    }

    #[test]
    fn lassos_expand_like_their_streams(
        prefix in prop::collection::vec(0usize..4, 0..6),
        cycle in prop::collection::vec(0usize..4, 1..5),
        n in 0usize..24,
    ) {
        let lasso = Lasso::new(prefix.clone(), cycle.clone()).unwrap();
        let direct: Vec<usize> = (0..n)
            .map(|i| {
                if i < prefix.len() {
                    prefix[i]
                } else {
                    cycle[(i - prefix.len()) % cycle.len()]
                }
            })
            .collect();
        prop_assert_eq!(lasso.take(n).outputs, direct);
    }

    #[test]
    fn lasso_canonicalization_is_stream_invariant(
        prefix in prop::collection::vec(0usize..3, 0..5),
        cycle in prop::collection::vec(0usize..3, 1..4),
    ) {
        // unrolling the cycle does not change the stream
        let doubled: Vec<usize> = cycle.iter().chain(cycle.iter()).copied().collect();
        prop_assert_eq!(
            &Lasso::new(prefix.clone(), doubled).unwrap(),
            &Lasso::new(prefix.clone(), cycle.clone()).unwrap()
        );
        // absorbing one step of the cycle into the prefix does not either
        let mut longer = prefix.clone();
        longer.push(cycle[0]);
        let mut rotated = cycle[1..].to_vec();
        rotated.push(cycle[0]);
        prop_assert_eq!(
            &Lasso::new(longer, rotated).unwrap(),
            &Lasso::new(prefix, cycle).unwrap()
        );
    }
}

#[test]
fn all_functions_is_complete_and_duplicate_free() {
    for (a, b) in [(0usize, 3usize), (1, 2), (2, 3), (3, 2), (3, 0)] {
        let dom = FinSet::canonical(a);
        let cod = FinSet::canonical(b);
        let expected = hom_size(&dom, &cod).unwrap();
        let mut seen = HashSet::new();
        let mut count = 0u128;
        for f in all_functions(&dom, &cod) {
            assert_eq!((f.dom(), f.cod()), (&dom, &cod));
            assert!(seen.insert(f.table().to_vec()), "duplicate function");
            count += 1;
        }
        assert_eq!(count, expected, "wrong count for hom({a}, {b})");
    }
}

#[test]
fn transformation_enumeration_is_natural_and_complete() {
    let u = Universe::with_budget(
        vec![FinSet::unit(), FinSet::canonical(2)],
        Budget::default().with_max_size(64),
    );
    let f = FunctorExpr::Id;
    let g = FunctorExpr::maybe();
    let found = enumerate_nat(&f, &g, &u).unwrap();
    for nat in &found {
        assert!(nat.check_natural().unwrap().is_pass());
    }
    let tables: HashSet<Vec<Vec<usize>>> = found
        .iter()
        .map(|n| {
            (0..u.len())
                .map(|i| n.component(i).table().to_vec())
                .collect()
        })
        .collect();
    assert_eq!(tables.len(), found.len(), "duplicate families");

    // brute force over every component choice agrees
    let cap = 64;
    let mut brute = 0usize;
    let f1 = f.apply_obj(&FinSet::unit(), cap).unwrap();
    let g1 = g.apply_obj(&FinSet::unit(), cap).unwrap();
    let f2 = f.apply_obj(&FinSet::canonical(2), cap).unwrap();
    let g2 = g.apply_obj(&FinSet::canonical(2), cap).unwrap();
    for c1 in all_functions(&f1, &g1) {
        for c2 in all_functions(&f2, &g2) {
            let family = NatFamily::new(f.clone(), g.clone(), u.clone(), vec![c1.clone(), c2]);
            if let Ok(family) = family {
                if family.check_natural().unwrap().is_pass() {
                    brute += 1;
                }
            }
        }
    }
    assert_eq!(found.len(), brute);
}
