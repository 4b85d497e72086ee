//! The registered structures the single-shot verbs reach for when a
//! command says "the costrength of F" without spelling out components.
//!
//! Every entry here is one of the catalogued constructions; a functor with
//! several lawful costrengths (Costate) or none (Maybe over products) gets
//! an error pointing at `enumerate` instead of an arbitrary pick.

use costrength_core::actions::ActionRef;
use costrength_core::catalogue::{
    filtrable_costrength, op_exponential_costrength, powerset_cocart_costrength,
    writer_cocart_costrength, writer_symmetry_costrength,
};
use costrength_core::costrength::{
    canonical_strength, identity_costrength, psi, Copoint, Costrength, Strength,
};
use costrength_core::finset::{coproduct, exponential, product, Side};
use costrength_core::mates::{product_exponential_adjunction, AdjunctionModel};
use costrength_core::nat::NatFamily;
use costrength_core::{Error, FinFun, FinSet, FunctorExpr, Result, Universe};

fn writer_weight(f: &FunctorExpr) -> Option<&FinSet> {
    if let FunctorExpr::Prod(a, b) = f {
        if let (FunctorExpr::Const(s), FunctorExpr::Id) = (a.as_ref(), b.as_ref()) {
            return Some(s);
        }
    }
    None
}

fn cofree_inner(f: &FunctorExpr) -> Option<&FunctorExpr> {
    if let FunctorExpr::Prod(a, b) = f {
        if matches!(a.as_ref(), FunctorExpr::Id) {
            return Some(b.as_ref());
        }
    }
    None
}

fn is_pow_of_id(f: &FunctorExpr) -> bool {
    matches!(f, FunctorExpr::Pow(inner) if matches!(inner.as_ref(), FunctorExpr::Id))
}

/// The two-layer failure collapse `1 + (1 + X) -> 1 + X`, the filtering
/// structure that makes Maybe costrong over coproducts.
pub fn maybe_join(universe: &Universe) -> Result<NatFamily> {
    let maybe = FunctorExpr::maybe();
    let source = FunctorExpr::comp(maybe.clone(), maybe.clone());
    let comps = universe
        .objects()
        .iter()
        .map(|x| {
            let inner = coproduct(&FinSet::unit(), x);
            let outer = coproduct(&FinSet::unit(), &inner.object);
            FinFun::from_fn(outer.object.clone(), inner.object.clone(), |i| {
                match outer.decode(i) {
                    Side::Left(_) => 0,
                    Side::Right(j) => j,
                }
            })
        })
        .collect();
    NatFamily::new(source, maybe, universe.clone(), comps)
}

/// The cofree copoint of `Id x F`, taking the first projection.
pub fn cofree_copoint(inner: &FunctorExpr, universe: &Universe) -> Result<Copoint> {
    let (_, eps) = costrength_core::catalogue::cofree_copointed(inner, universe)?;
    Ok(eps)
}

/// Evaluation at a fixed position of the base set: a copoint of
/// `Costate(S)` for every element of `S`, which is exactly why the costate
/// costrength is not unique.
pub fn costate_eval_copoint(s: &FinSet, at: usize, universe: &Universe) -> Result<Copoint> {
    if at >= s.size() {
        return Err(Error::precondition(format!(
            "evaluation point {at} outside the {}-element base",
            s.size()
        )));
    }
    let expr = FunctorExpr::costate(s.clone());
    let comps = universe
        .objects()
        .iter()
        .map(|x| {
            let e = costrength_core::finset::exponential(s, x);
            let cx = product(s, &e.object);
            FinFun::from_fn(cx.object.clone(), x.clone(), |i| {
                let (_, table) = cx.decode(i);
                e.decode(table)[at]
            })
        })
        .collect();
    Copoint::from_family(NatFamily::new(expr, FunctorExpr::Id, universe.clone(), comps)?)
}

/// Builds the registered costrength of `functor` over `action` on the
/// given universes.
pub fn canonical_costrength(
    functor: &FunctorExpr,
    action: &ActionRef,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    match action.name() {
        "cart" => {
            if *functor == FunctorExpr::Id {
                identity_costrength(action.clone(), objects, grades)
            } else if let Some(s) = writer_weight(functor) {
                writer_symmetry_costrength(s, objects, grades)
            } else if let Some(inner) = cofree_inner(functor) {
                let eps = cofree_copoint(inner, objects)?;
                psi(&eps, objects, grades)
            } else {
                Err(Error::precondition(format!(
                    "no canonical cartesian costrength is registered for {functor}; \
                     `enumerate` lists every lawful one"
                )))
            }
        }
        "cocart" => {
            if *functor == FunctorExpr::Id {
                identity_costrength(action.clone(), objects, grades)
            } else if is_pow_of_id(functor) {
                powerset_cocart_costrength(objects, grades)
            } else if let Some(s) = writer_weight(functor) {
                writer_cocart_costrength(s, objects, grades)
            } else if *functor == FunctorExpr::maybe() {
                filtrable_costrength(functor, &maybe_join(objects)?, objects, grades)
            } else {
                Err(Error::precondition(format!(
                    "no cocartesian costrength is registered for {functor}; \
                     `enumerate` lists every lawful one"
                )))
            }
        }
        _ => op_exponential_costrength(functor, objects, grades),
    }
}

/// The canonical strength, which exists for every functor but only over
/// the cartesian action.
pub fn canonical_strength_over(
    functor: &FunctorExpr,
    action: &ActionRef,
    objects: &Universe,
    grades: &Universe,
) -> Result<Strength> {
    if action.name() != "cart" {
        return Err(Error::precondition(
            "the canonical strength is registered over the cartesian action only",
        ));
    }
    canonical_strength(functor, objects, grades)
}

/// Universes wide enough to transpose along `S x - -| [S, -]`. Mate
/// components chain the unit at X, the strength at (M, S x X) and the
/// counit at M x (S x X), so each structure map gets a universe closed
/// under the objects its leg is looked up at. Returns the strength's
/// object universe together with the adjunction.
pub fn transposition_setup(
    s: &FinSet,
    grades: &Universe,
    mate_objects: &Universe,
) -> Result<(Universe, AdjunctionModel)> {
    let reader_images: Vec<FinSet> = grades
        .objects()
        .iter()
        .map(|y| exponential(s, y).object)
        .collect();
    let mut unit_extra = reader_images;
    for m in grades.objects() {
        for x in mate_objects.objects() {
            unit_extra.push(product(m, x).object);
        }
    }
    let u_unit = mate_objects.extended(unit_extra);

    let mut counit_extra: Vec<FinSet> = u_unit
        .objects()
        .iter()
        .map(|x| product(s, x).object)
        .collect();
    for m in grades.objects() {
        for x in mate_objects.objects() {
            counit_extra.push(product(m, &product(s, x).object).object);
        }
    }
    let u_counit = mate_objects.extended(counit_extra);

    let writer_images: Vec<FinSet> = mate_objects
        .objects()
        .iter()
        .map(|x| product(s, x).object)
        .collect();
    let u_strength = mate_objects.extended(writer_images);

    let adj = product_exponential_adjunction(s, &u_unit, &u_counit)?;
    Ok((u_strength, adj))
}
