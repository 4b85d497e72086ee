//! Adjunctions between syntactic functors and the mate correspondence:
//! a strength on a right adjoint transposes to a costrength on the left
//! adjoint and back, with no information lost.

use crate::costrength::{check_costrength, check_strength, Costrength, Strength};
use crate::error::{Error, Result};
use crate::finset::{compose, exponential, identity, product, FinFun, FinSet};
use crate::functor::FunctorExpr;
use crate::nat::NatFamily;
use crate::report::{eq_or, instance, LawReport};
use crate::universe::Universe;

/// An adjunction `L -| R` witnessed by unit and counit families over
/// explicit universes. The unit is tabulated where `L` will be applied,
/// the counit where `R` will be; the two universes may differ.
#[derive(Debug, Clone)]
pub struct AdjunctionModel {
    pub left: FunctorExpr,
    pub right: FunctorExpr,
    pub unit: NatFamily,
    pub counit: NatFamily,
}

impl AdjunctionModel {
    pub fn new(
        left: FunctorExpr,
        right: FunctorExpr,
        unit: NatFamily,
        counit: NatFamily,
    ) -> Result<Self> {
        let rl = FunctorExpr::comp(right.clone(), left.clone());
        if unit.source != FunctorExpr::Id || unit.target != rl {
            return Err(Error::mismatch(
                "adjunction unit boundary",
                format!("Id => {rl}"),
                format!("{} => {}", unit.source, unit.target),
            ));
        }
        let lr = FunctorExpr::comp(left.clone(), right.clone());
        if counit.source != lr || counit.target != FunctorExpr::Id {
            return Err(Error::mismatch(
                "adjunction counit boundary",
                format!("{lr} => Id"),
                format!("{} => {}", counit.source, counit.target),
            ));
        }
        Ok(AdjunctionModel {
            left,
            right,
            unit,
            counit,
        })
    }

    /// Naturality of both structure maps plus the two triangle identities
    /// at every object where the needed components exist; missing
    /// components and over-cap images become recorded skips.
    pub fn check(&self) -> Result<LawReport> {
        let mut report = LawReport::new("adjunction-laws");
        report.absorb("unit", self.unit.check_natural()?);
        report.absorb("counit", self.counit.check_natural()?);
        let cap = self.unit.universe.budget().max_size;

        for (ix, x) in self.unit.universe.objects().iter().enumerate() {
            let lx = match self.left.apply_obj(x, cap) {
                Ok(o) => o,
                Err(Error::SizeCap { .. }) => {
                    report.skip(format!("left triangle at {x}: image exceeds the cap"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(i_lx) = self.counit.universe.index_of(&lx) else {
                report.skip(format!(
                    "left triangle at {x}: counit not tabulated at {lx}"
                ));
                continue;
            };
            let before = report.checked;
            instance(&mut report, || format!("left triangle at {x}"), || {
                let l_unit = self.left.apply_mor(self.unit.component(ix), cap)?;
                let path = compose(self.counit.component(i_lx), &l_unit)?;
                Ok(eq_or(
                    "left-triangle",
                    &[("X", x.to_string())],
                    &path,
                    &identity(&lx),
                ))
            })?;
            if report.checked > before {
                report.bump("left-triangle");
            }
        }

        for (iy, y) in self.counit.universe.objects().iter().enumerate() {
            let ry = match self.right.apply_obj(y, cap) {
                Ok(o) => o,
                Err(Error::SizeCap { .. }) => {
                    report.skip(format!("right triangle at {y}: image exceeds the cap"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(i_ry) = self.unit.universe.index_of(&ry) else {
                report.skip(format!(
                    "right triangle at {y}: unit not tabulated at {ry}"
                ));
                continue;
            };
            let before = report.checked;
            instance(&mut report, || format!("right triangle at {y}"), || {
                let r_counit = self.right.apply_mor(self.counit.component(iy), cap)?;
                let path = compose(&r_counit, self.unit.component(i_ry))?;
                Ok(eq_or(
                    "right-triangle",
                    &[("Y", y.to_string())],
                    &path,
                    &identity(&ry),
                ))
            })?;
            if report.checked > before {
                report.bump("right-triangle");
            }
        }
        report.seal();
        Ok(report)
    }
}

fn require_lawful(adj: &AdjunctionModel) -> Result<()> {
    let r = adj.check()?;
    if !r.is_pass() {
        return Err(Error::precondition(format!(
            "adjunction laws fail: {:?}",
            r.counterexample
        )));
    }
    Ok(())
}

/// Transposes a strength on the right adjoint to a costrength on the left
/// adjoint:
///
/// ```text
/// L(M.X) --L(M.unit)--> L(M.RLX) --L(st)--> L(R(M.LX)) --counit--> M.LX
/// ```
///
/// Both structure maps are looked up by object, so the adjunction's
/// universes must cover `X` and `M.L(X)` respectively.
pub fn mate_left(
    adj: &AdjunctionModel,
    st: &Strength,
    objects: &Universe,
) -> Result<Costrength> {
    require_lawful(adj)?;
    if st.functor != adj.right {
        return Err(Error::mismatch(
            "mate input",
            format!("strength on {}", adj.right),
            format!("strength on {}", st.functor),
        ));
    }
    let law = check_strength(st)?;
    if !law.is_pass() {
        return Err(Error::precondition(format!(
            "input strength fails its laws: {:?}",
            law.counterexample
        )));
    }
    let cap = objects.budget().max_size;
    let act = st.action.clone();
    Costrength::from_fn(
        adj.left.clone(),
        st.action.clone(),
        objects.clone(),
        st.grades.clone(),
        |m, x| {
            let eta = adj.unit.component_at(x)?;
            let leg1 = adj.left.apply_mor(&act.act_mor(&identity(m), eta, cap)?, cap)?;
            let lx = adj.left.apply_obj(x, cap)?;
            let st_leg = st.component_at(m, &lx)?;
            let leg2 = adj.left.apply_mor(st_leg, cap)?;
            let mlx = act.act_obj(m, &lx, cap)?;
            let eps = adj.counit.component_at(&mlx)?;
            compose(eps, &compose(&leg2, &leg1)?)
        },
    )
}

/// The inverse transposition, from a costrength on the left adjoint to a
/// strength on the right adjoint:
///
/// ```text
/// M.RY --unit--> R(L(M.RY)) --R(cst)--> R(M.LRY) --R(M.counit)--> R(M.Y)
/// ```
pub fn mate_right(
    adj: &AdjunctionModel,
    cst: &Costrength,
    objects: &Universe,
) -> Result<Strength> {
    require_lawful(adj)?;
    if cst.functor != adj.left {
        return Err(Error::mismatch(
            "mate input",
            format!("costrength on {}", adj.left),
            format!("costrength on {}", cst.functor),
        ));
    }
    let law = check_costrength(cst)?;
    if !law.is_pass() {
        return Err(Error::precondition(format!(
            "input costrength fails its laws: {:?}",
            law.counterexample
        )));
    }
    let cap = objects.budget().max_size;
    let act = cst.action.clone();
    Strength::from_fn(
        adj.right.clone(),
        cst.action.clone(),
        objects.clone(),
        cst.grades.clone(),
        |m, y| {
            let ry = adj.right.apply_obj(y, cap)?;
            let m_ry = act.act_obj(m, &ry, cap)?;
            let eta = adj.unit.component_at(&m_ry)?;
            let cst_leg = cst.component_at(m, &ry)?;
            let leg2 = adj.right.apply_mor(cst_leg, cap)?;
            let eps = adj.counit.component_at(y)?;
            let leg3 = adj
                .right
                .apply_mor(&act.act_mor(&identity(m), eps, cap)?, cap)?;
            compose(&leg3, &compose(&leg2, eta)?)
        },
    )
}

/// The tensor-hom adjunction `S x - -| [S, -]` over a universe: the unit
/// packages a value with every possible weight, the counit evaluates.
pub fn product_exponential_adjunction(
    s: &FinSet,
    unit_universe: &Universe,
    counit_universe: &Universe,
) -> Result<AdjunctionModel> {
    let left = FunctorExpr::writer(s.clone());
    let right = FunctorExpr::reader(s.clone());
    let mut units = Vec::with_capacity(unit_universe.len());
    for x in unit_universe.objects() {
        let sx = product(s, x);
        let e = exponential(s, &sx.object);
        units.push(FinFun::from_fn(x.clone(), e.object.clone(), |ix| {
            let values: Vec<usize> = (0..s.size()).map(|is| sx.encode(is, ix)).collect();
            e.encode(&values)
        }));
    }
    let unit = NatFamily::new(
        FunctorExpr::Id,
        FunctorExpr::comp(right.clone(), left.clone()),
        unit_universe.clone(),
        units,
    )?;
    let mut counits = Vec::with_capacity(counit_universe.len());
    for y in counit_universe.objects() {
        let e = exponential(s, y);
        let p = product(s, &e.object);
        counits.push(FinFun::from_fn(p.object.clone(), y.clone(), |i| {
            let (is, it) = p.decode(i);
            e.decode(it)[is]
        }));
    }
    let counit = NatFamily::new(
        FunctorExpr::comp(left.clone(), right.clone()),
        FunctorExpr::Id,
        counit_universe.clone(),
        counits,
    )?;
    AdjunctionModel::new(left, right, unit, counit)
}

/// The identity adjunction `Id -| Id`; mates through it are identities.
pub fn identity_adjunction(universe: &Universe) -> Result<AdjunctionModel> {
    let ids: Vec<FinFun> = universe.objects().iter().map(identity).collect();
    let unit = NatFamily::new(
        FunctorExpr::Id,
        FunctorExpr::comp(FunctorExpr::Id, FunctorExpr::Id),
        universe.clone(),
        ids.clone(),
    )?;
    let counit = NatFamily::new(
        FunctorExpr::comp(FunctorExpr::Id, FunctorExpr::Id),
        FunctorExpr::Id,
        universe.clone(),
        ids,
    )?;
    AdjunctionModel::new(FunctorExpr::Id, FunctorExpr::Id, unit, counit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::writer_symmetry_costrength;
    use crate::costrength::canonical_strength;
    use crate::universe::Budget;

    fn base(max_size: usize) -> Universe {
        Universe::with_budget(
            Universe::default_small().objects().to_vec(),
            Budget::default().with_max_size(max_size).with_max_hom(512),
        )
    }

    /// Universes big enough to transpose the reader strength over
    /// `mate_objects` and to keep the triangle identities non-vacuous: the
    /// unit gets reader images (right triangles), the counit gets writer
    /// images of everything the unit covers (left triangles) plus the
    /// `M x (S x X)` objects the transposition lands in.
    fn transposition_universes(
        s: &FinSet,
        grades: &Universe,
        mate_objects: &Universe,
    ) -> (Universe, AdjunctionModel) {
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
        let u_strength = mate_objects.extended(
            mate_objects
                .objects()
                .iter()
                .map(|x| product(s, x).object)
                .collect::<Vec<_>>(),
        );
        let adj = product_exponential_adjunction(s, &u_unit, &u_counit).unwrap();
        (u_strength, adj)
    }

    #[test]
    fn tensor_hom_adjunction_satisfies_the_triangle_identities() {
        let u = base(1024);
        let (_, adj) = transposition_universes(&FinSet::canonical(2), &u, &u);
        let r = adj.check().unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts["left-triangle"] > 0);
        assert!(r.counts["right-triangle"] > 0);
    }

    #[test]
    fn reader_strength_transposes_to_the_writer_costrength() {
        for n in [1usize, 2] {
            let s = FinSet::canonical(n);
            let u = base(1024);
            let (u_strength, adj) = transposition_universes(&s, &u, &u);
            let st = canonical_strength(&FunctorExpr::reader(s.clone()), &u_strength, &u).unwrap();
            let mate = mate_left(&adj, &st, &u).unwrap();
            let expected = writer_symmetry_costrength(&s, &u, &u).unwrap();
            assert_eq!(mate, expected, "|S| = {n}");
        }
    }

    #[test]
    fn mates_round_trip_on_the_reader_strength() {
        let s = FinSet::canonical(2);
        let u = base(8192);
        // the round trip looks the costrength up at reader images, so it
        // must be built over a universe one level wider than the base
        let mate_extra: Vec<FinSet> = u
            .objects()
            .iter()
            .map(|x| exponential(&s, x).object)
            .collect();
        let u_mate = u.extended(mate_extra);
        let (u_strength, adj) = transposition_universes(&s, &u, &u_mate);
        let st = canonical_strength(&FunctorExpr::reader(s.clone()), &u_strength, &u).unwrap();
        let mate = mate_left(&adj, &st, &u_mate).unwrap();
        assert!(check_costrength(&mate).unwrap().is_pass());
        let back = mate_right(&adj, &mate, &u).unwrap();
        // the two strengths live over different object universes, so the
        // round-trip identity is a statement about shared components
        for m in u.objects() {
            for y in u.objects() {
                assert_eq!(
                    back.component_at(m, y).unwrap(),
                    st.component_at(m, y).unwrap(),
                    "round trip must restore the component at ({m}, {y})"
                );
            }
        }
    }

    #[test]
    fn identity_adjunction_mates_are_identities() {
        let u = base(512);
        // the mate lands in M.X, so the structure maps must cover products
        let mut products = Vec::new();
        for m in u.objects() {
            for x in u.objects() {
                products.push(product(m, x).object);
            }
        }
        let adj = identity_adjunction(&u.extended(products)).unwrap();
        let st = canonical_strength(&FunctorExpr::Id, &u, &u).unwrap();
        let mate = mate_left(&adj, &st, &u).unwrap();
        for comp in mate.components() {
            assert!(comp.is_bijection());
        }
        let back = mate_right(&adj, &mate, &u).unwrap();
        assert_eq!(back, st);
    }

    #[test]
    fn a_broken_counit_is_rejected() {
        let u = base(1024);
        let s = FinSet::canonical(2);
        let (u_strength, mut adj) = transposition_universes(&s, &u, &u);
        let idx = adj.counit.universe.require(&FinSet::canonical(2)).unwrap();
        let dom = adj.counit.components[idx].dom().clone();
        let cod = adj.counit.components[idx].cod().clone();
        let table: Vec<usize> = adj.counit.components[idx]
            .table()
            .iter()
            .map(|&v| (v + 1) % cod.size())
            .collect();
        adj.counit.components[idx] = FinFun::new(dom, cod, table).unwrap();
        let st = canonical_strength(&FunctorExpr::reader(s.clone()), &u_strength, &u).unwrap();
        match mate_left(&adj, &st, &u) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected a precondition rejection, got {other:?}"),
        }
    }
}
