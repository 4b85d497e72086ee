//! Strengths, costrengths, copoints, and the correspondence between the
//! last two over the cartesian action.
//!
//! A [`Costrength`] tabulates components `F(M.X) -> M.F(X)` over an
//! explicit grade universe and object universe; a [`Strength`] tabulates
//! the reversed components. [`check_costrength`] and [`check_strength`]
//! decide the colax and lax morphism laws on that scope: naturality in both
//! arguments, the unit triangle, and the tensor hexagon. Hexagon instances
//! whose tensor or acted object falls outside the declared universes are
//! counted and reported as skips, never silently dropped; the
//! [`closed_grade_universe`] and [`closed_object_universe`] helpers extend
//! a base universe one tensor/action level so that those instances become
//! checkable.
//!
//! Over the cartesian action a costrength is the same thing as a copoint
//! `F => Id`: [`phi`] extracts the copoint by evaluating at the unit
//! object, [`psi`] rebuilds the costrength by pairing with projections, and
//! [`roundtrip_report`] verifies that the two are mutually inverse on
//! everything [`enumerate_costrengths`] and the copoint enumeration can
//! find. The enumerations are the crate's independent oracle: exhaustive
//! search pruned by constraint propagation, then filtered through the full
//! law checker.

use crate::actions::{
    cartesian, grade_arrows, grade_hom_size, Action, ActionRef,
};
use crate::csp::FamilySearch;
use crate::error::{Error, Result};
use crate::finset::{all_functions, compose, hom_size, identity, pair, product, product_map, FinFun, FinSet};
use crate::functor::FunctorExpr;
use crate::nat::{enumerate_nat, NatFamily};
use crate::report::{counterexample, eq_or, instance, LawReport};
use crate::universe::Universe;

#[derive(Clone)]
pub struct Costrength {
    pub functor: FunctorExpr,
    pub action: ActionRef,
    /// Object universe (`X` ranges here).
    pub objects: Universe,
    /// Grade universe (`M` ranges here).
    pub grades: Universe,
    components: Vec<FinFun>,
}

#[derive(Clone)]
pub struct Strength {
    pub functor: FunctorExpr,
    pub action: ActionRef,
    pub objects: Universe,
    pub grades: Universe,
    components: Vec<FinFun>,
}

fn expect_boundary(
    what: &str,
    m: &FinSet,
    x: &FinSet,
    comp: &FinFun,
    dom: &FinSet,
    cod: &FinSet,
) -> Result<()> {
    if comp.dom() != dom || comp.cod() != cod {
        return Err(Error::mismatch(
            format!("{what} component at ({m}, {x})"),
            format!("{dom} -> {cod}"),
            format!("{} -> {}", comp.dom(), comp.cod()),
        ));
    }
    Ok(())
}

impl Costrength {
    /// Wraps raw components, validating that entry `ig * |objects| + ix`
    /// has boundary `F(M.X) -> M.F(X)`.
    pub fn new(
        functor: FunctorExpr,
        action: ActionRef,
        objects: Universe,
        grades: Universe,
        components: Vec<FinFun>,
    ) -> Result<Self> {
        let cap = objects.budget().max_size;
        if components.len() != grades.len() * objects.len() {
            return Err(Error::BadLength {
                expected: grades.len() * objects.len(),
                found: components.len(),
            });
        }
        for (ig, m) in grades.objects().iter().enumerate() {
            for (ix, x) in objects.objects().iter().enumerate() {
                let mx = action.act_obj(m, x, cap)?;
                let dom = functor.apply_obj(&mx, cap)?;
                let fx = functor.apply_obj(x, cap)?;
                let cod = action.act_obj(m, &fx, cap)?;
                expect_boundary(
                    "costrength",
                    m,
                    x,
                    &components[ig * objects.len() + ix],
                    &dom,
                    &cod,
                )?;
            }
        }
        Ok(Costrength {
            functor,
            action,
            objects,
            grades,
            components,
        })
    }

    /// Builds components pointwise from a formula on `(M, X)`.
    pub fn from_fn(
        functor: FunctorExpr,
        action: ActionRef,
        objects: Universe,
        grades: Universe,
        mut component: impl FnMut(&FinSet, &FinSet) -> Result<FinFun>,
    ) -> Result<Self> {
        let mut components = Vec::with_capacity(grades.len() * objects.len());
        for m in grades.objects() {
            for x in objects.objects() {
                components.push(component(m, x)?);
            }
        }
        Costrength::new(functor, action, objects, grades, components)
    }

    pub fn component(&self, ig: usize, ix: usize) -> &FinFun {
        &self.components[ig * self.objects.len() + ix]
    }

    pub fn component_at(&self, m: &FinSet, x: &FinSet) -> Result<&FinFun> {
        let ig = self.grades.require(m)?;
        let ix = self.objects.require(x)?;
        Ok(self.component(ig, ix))
    }

    pub fn components(&self) -> &[FinFun] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [FinFun] {
        &mut self.components
    }
}

impl Strength {
    /// Same layout as [`Costrength::new`], boundary `M.F(X) -> F(M.X)`.
    pub fn new(
        functor: FunctorExpr,
        action: ActionRef,
        objects: Universe,
        grades: Universe,
        components: Vec<FinFun>,
    ) -> Result<Self> {
        let cap = objects.budget().max_size;
        if components.len() != grades.len() * objects.len() {
            return Err(Error::BadLength {
                expected: grades.len() * objects.len(),
                found: components.len(),
            });
        }
        for (ig, m) in grades.objects().iter().enumerate() {
            for (ix, x) in objects.objects().iter().enumerate() {
                let fx = functor.apply_obj(x, cap)?;
                let dom = action.act_obj(m, &fx, cap)?;
                let mx = action.act_obj(m, x, cap)?;
                let cod = functor.apply_obj(&mx, cap)?;
                expect_boundary(
                    "strength",
                    m,
                    x,
                    &components[ig * objects.len() + ix],
                    &dom,
                    &cod,
                )?;
            }
        }
        Ok(Strength {
            functor,
            action,
            objects,
            grades,
            components,
        })
    }

    pub fn from_fn(
        functor: FunctorExpr,
        action: ActionRef,
        objects: Universe,
        grades: Universe,
        mut component: impl FnMut(&FinSet, &FinSet) -> Result<FinFun>,
    ) -> Result<Self> {
        let mut components = Vec::with_capacity(grades.len() * objects.len());
        for m in grades.objects() {
            for x in objects.objects() {
                components.push(component(m, x)?);
            }
        }
        Strength::new(functor, action, objects, grades, components)
    }

    pub fn component(&self, ig: usize, ix: usize) -> &FinFun {
        &self.components[ig * self.objects.len() + ix]
    }

    pub fn component_at(&self, m: &FinSet, x: &FinSet) -> Result<&FinFun> {
        let ig = self.grades.require(m)?;
        let ix = self.objects.require(x)?;
        Ok(self.component(ig, ix))
    }

    pub fn components(&self) -> &[FinFun] {
        &self.components
    }

    pub fn components_mut(&mut self) -> &mut [FinFun] {
        &mut self.components
    }
}

impl PartialEq for Costrength {
    fn eq(&self, other: &Self) -> bool {
        self.functor == other.functor
            && self.action.name() == other.action.name()
            && self.objects.objects() == other.objects.objects()
            && self.grades.objects() == other.grades.objects()
            && self.components == other.components
    }
}

impl PartialEq for Strength {
    fn eq(&self, other: &Self) -> bool {
        self.functor == other.functor
            && self.action.name() == other.action.name()
            && self.objects.objects() == other.objects.objects()
            && self.grades.objects() == other.grades.objects()
            && self.components == other.components
    }
}

impl std::fmt::Debug for Costrength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Costrength")
            .field("functor", &self.functor.to_string())
            .field("action", &self.action.name())
            .field("grades", &self.grades.len())
            .field("objects", &self.objects.len())
            .finish()
    }
}

impl std::fmt::Debug for Strength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Strength")
            .field("functor", &self.functor.to_string())
            .field("action", &self.action.name())
            .field("grades", &self.grades.len())
            .field("objects", &self.objects.len())
            .finish()
    }
}

/// A copointed functor: `F` together with `epsilon: F => Id`.
#[derive(Debug, Clone)]
pub struct Copoint {
    pub epsilon: NatFamily,
}

impl Copoint {
    pub fn new(functor: FunctorExpr, universe: Universe, components: Vec<FinFun>) -> Result<Self> {
        Ok(Copoint {
            epsilon: NatFamily::new(functor, FunctorExpr::Id, universe, components)?,
        })
    }

    pub fn from_family(epsilon: NatFamily) -> Result<Self> {
        if epsilon.target != FunctorExpr::Id {
            return Err(Error::mismatch(
                "copoint target",
                "Id".to_string(),
                epsilon.target.to_string(),
            ));
        }
        Ok(Copoint { epsilon })
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.epsilon.source
    }

    pub fn universe(&self) -> &Universe {
        &self.epsilon.universe
    }

    pub fn check(&self) -> Result<LawReport> {
        self.epsilon.check_natural()
    }
}

impl PartialEq for Copoint {
    fn eq(&self, other: &Self) -> bool {
        self.epsilon.source == other.epsilon.source
            && self.epsilon.universe.objects() == other.epsilon.universe.objects()
            && self.epsilon.components == other.epsilon.components
    }
}

/// Extends a grade universe with all pairwise tensors no larger than
/// `max_obj`, so tensor-law instances over the base grades have somewhere
/// to live.
pub fn closed_grade_universe(
    action: &dyn Action,
    base: &Universe,
    max_obj: usize,
) -> Result<Universe> {
    let mut extra = Vec::new();
    for m in base.objects() {
        for n in base.objects() {
            match action.tensor(m, n, max_obj) {
                Ok(t) => extra.push(t),
                Err(Error::SizeCap { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(base.extended(extra))
}

/// Extends an object universe with `M.X` for every grade and base object,
/// capped at `max_obj`, so hexagon instances over the base have their
/// middle object available.
pub fn closed_object_universe(
    action: &dyn Action,
    grades: &Universe,
    base: &Universe,
    max_obj: usize,
) -> Result<Universe> {
    let mut extra = Vec::new();
    for m in grades.objects() {
        for x in base.objects() {
            match action.act_obj(m, x, max_obj) {
                Ok(t) => extra.push(t),
                Err(Error::SizeCap { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(base.extended(extra))
}

/// Decides the colax morphism laws for `c` on its declared universes:
/// naturality in the object, naturality in the grade, the unit triangle,
/// and the associativity hexagon.
pub fn check_costrength(c: &Costrength) -> Result<LawReport> {
    let mut report = LawReport::new("costrength-laws");
    let cap = c.objects.budget().max_size;
    let max_hom = c.objects.budget().max_hom;
    let act = c.action.as_ref();

    // naturality in X
    for (ix, x) in c.objects.objects().iter().enumerate() {
        for (iy, y) in c.objects.objects().iter().enumerate() {
            if hom_size(x, y).map_or(true, |h| h > max_hom) {
                report.skip(format!("object naturality over hom({x}, {y})"));
                continue;
            }
            for f in all_functions(x, y) {
                for (ig, m) in c.grades.objects().iter().enumerate() {
                    instance(
                        &mut report,
                        || format!("object naturality at ({m}, {f})"),
                        || {
                            let idm = identity(m);
                            let ff = c.functor.apply_mor(&f, cap)?;
                            let lhs =
                                compose(&act.act_mor(&idm, &ff, cap)?, c.component(ig, ix))?;
                            let inner = act.act_mor(&idm, &f, cap)?;
                            let rhs =
                                compose(c.component(ig, iy), &c.functor.apply_mor(&inner, cap)?)?;
                            Ok(eq_or(
                                "object-naturality",
                                &[("M", m.to_string()), ("f", f.to_string())],
                                &lhs,
                                &rhs,
                            ))
                        },
                    )?;
                }
            }
        }
    }

    // naturality in M
    for (im, m) in c.grades.objects().iter().enumerate() {
        for (in_, n) in c.grades.objects().iter().enumerate() {
            if grade_hom_size(act, m, n).map_or(true, |h| h > max_hom) {
                report.skip(format!("grade naturality over hom({m}, {n})"));
                continue;
            }
            for u in grade_arrows(act, m, n) {
                for (ix, x) in c.objects.objects().iter().enumerate() {
                    instance(
                        &mut report,
                        || format!("grade naturality at ({u}, {x})"),
                        || {
                            let fx = c.functor.apply_obj(x, cap)?;
                            let lhs =
                                compose(&act.act_mor(&u, &identity(&fx), cap)?, c.component(im, ix))?;
                            let inner = act.act_mor(&u, &identity(x), cap)?;
                            let rhs =
                                compose(c.component(in_, ix), &c.functor.apply_mor(&inner, cap)?)?;
                            Ok(eq_or(
                                "grade-naturality",
                                &[("u", u.to_string()), ("X", x.to_string())],
                                &lhs,
                                &rhs,
                            ))
                        },
                    )?;
                }
            }
        }
    }

    // unit triangle: the component at the unit grade must be the unitor
    // conjugate of the identity
    match c.grades.index_of(&act.unit()) {
        None => report.skip("unit triangle: unit object not in the grade universe"),
        Some(iu) => {
            for (ix, x) in c.objects.objects().iter().enumerate() {
                instance(&mut report, || format!("unit triangle at {x}"), || {
                    let fx = c.functor.apply_obj(x, cap)?;
                    let lhs = compose(&act.unitor(&fx, cap)?, c.component(iu, ix))?;
                    let rhs = c.functor.apply_mor(&act.unitor(x, cap)?, cap)?;
                    Ok(eq_or(
                        "unit-triangle",
                        &[("X", x.to_string())],
                        &lhs,
                        &rhs,
                    ))
                })?;
            }
        }
    }

    // hexagon: instances exist only where the tensor and the acted object
    // are themselves in the universes; everything else is a counted skip
    let mut hexagon_skipped = 0u64;
    for (_, m) in c.grades.objects().iter().enumerate() {
        for n in c.grades.objects() {
            for (ix, x) in c.objects.objects().iter().enumerate() {
                let tensor = match act.tensor(m, n, cap) {
                    Ok(t) => t,
                    Err(Error::SizeCap { .. }) => {
                        hexagon_skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let nx = match act.act_obj(n, x, cap) {
                    Ok(t) => t,
                    Err(Error::SizeCap { .. }) => {
                        hexagon_skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let (ig_mn, ix_nx) = match (c.grades.index_of(&tensor), c.objects.index_of(&nx)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        hexagon_skipped += 1;
                        continue;
                    }
                };
                let im = c.grades.index_of(m).expect("iterating the universe");
                let in_ = c.grades.index_of(n).expect("iterating the universe");
                instance(
                    &mut report,
                    || format!("hexagon at ({m}, {n}, {x})"),
                    || {
                        let fx = c.functor.apply_obj(x, cap)?;
                        let lhs = compose(
                            &act.associator(m, n, &fx, cap)?,
                            c.component(ig_mn, ix),
                        )?;
                        let f_assoc = c.functor.apply_mor(&act.associator(m, n, x, cap)?, cap)?;
                        let rhs = compose(
                            &act.act_mor(&identity(m), c.component(in_, ix), cap)?,
                            &compose(c.component(im, ix_nx), &f_assoc)?,
                        )?;
                        Ok(eq_or(
                            "hexagon",
                            &[("M", m.to_string()), ("N", n.to_string()), ("X", x.to_string())],
                            &lhs,
                            &rhs,
                        ))
                    },
                )?;
                report.bump("hexagon-checked");
            }
        }
    }
    if hexagon_skipped > 0 {
        report.count("hexagon-skipped", hexagon_skipped);
        report.skip(format!(
            "{hexagon_skipped} hexagon instances with tensor or acted object outside the universes"
        ));
    }

    report.seal();
    Ok(report)
}

/// Decides the lax morphism laws for `s`, dual to [`check_costrength`].
pub fn check_strength(s: &Strength) -> Result<LawReport> {
    let mut report = LawReport::new("strength-laws");
    let cap = s.objects.budget().max_size;
    let max_hom = s.objects.budget().max_hom;
    let act = s.action.as_ref();

    for (ix, x) in s.objects.objects().iter().enumerate() {
        for (iy, y) in s.objects.objects().iter().enumerate() {
            if hom_size(x, y).map_or(true, |h| h > max_hom) {
                report.skip(format!("object naturality over hom({x}, {y})"));
                continue;
            }
            for f in all_functions(x, y) {
                for (ig, m) in s.grades.objects().iter().enumerate() {
                    instance(
                        &mut report,
                        || format!("object naturality at ({m}, {f})"),
                        || {
                            let idm = identity(m);
                            let inner = act.act_mor(&idm, &f, cap)?;
                            let lhs =
                                compose(&s.functor.apply_mor(&inner, cap)?, s.component(ig, ix))?;
                            let ff = s.functor.apply_mor(&f, cap)?;
                            let rhs = compose(s.component(ig, iy), &act.act_mor(&idm, &ff, cap)?)?;
                            Ok(eq_or(
                                "object-naturality",
                                &[("M", m.to_string()), ("f", f.to_string())],
                                &lhs,
                                &rhs,
                            ))
                        },
                    )?;
                }
            }
        }
    }

    for (im, m) in s.grades.objects().iter().enumerate() {
        for (in_, n) in s.grades.objects().iter().enumerate() {
            if grade_hom_size(act, m, n).map_or(true, |h| h > max_hom) {
                report.skip(format!("grade naturality over hom({m}, {n})"));
                continue;
            }
            for u in grade_arrows(act, m, n) {
                for (ix, x) in s.objects.objects().iter().enumerate() {
                    instance(
                        &mut report,
                        || format!("grade naturality at ({u}, {x})"),
                        || {
                            let inner = act.act_mor(&u, &identity(x), cap)?;
                            let lhs =
                                compose(&s.functor.apply_mor(&inner, cap)?, s.component(im, ix))?;
                            let fx = s.functor.apply_obj(x, cap)?;
                            let rhs = compose(
                                s.component(in_, ix),
                                &act.act_mor(&u, &identity(&fx), cap)?,
                            )?;
                            Ok(eq_or(
                                "grade-naturality",
                                &[("u", u.to_string()), ("X", x.to_string())],
                                &lhs,
                                &rhs,
                            ))
                        },
                    )?;
                }
            }
        }
    }

    match s.grades.index_of(&act.unit()) {
        None => report.skip("unit triangle: unit object not in the grade universe"),
        Some(iu) => {
            for (ix, x) in s.objects.objects().iter().enumerate() {
                instance(&mut report, || format!("unit triangle at {x}"), || {
                    let lhs =
                        compose(&s.functor.apply_mor(&act.unitor(x, cap)?, cap)?, s.component(iu, ix))?;
                    let fx = s.functor.apply_obj(x, cap)?;
                    let rhs = act.unitor(&fx, cap)?;
                    Ok(eq_or(
                        "unit-triangle",
                        &[("X", x.to_string())],
                        &lhs,
                        &rhs,
                    ))
                })?;
            }
        }
    }

    let mut hexagon_skipped = 0u64;
    for m in s.grades.objects() {
        for n in s.grades.objects() {
            for (ix, x) in s.objects.objects().iter().enumerate() {
                let tensor = match act.tensor(m, n, cap) {
                    Ok(t) => t,
                    Err(Error::SizeCap { .. }) => {
                        hexagon_skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let nx = match act.act_obj(n, x, cap) {
                    Ok(t) => t,
                    Err(Error::SizeCap { .. }) => {
                        hexagon_skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let (ig_mn, ix_nx) = match (s.grades.index_of(&tensor), s.objects.index_of(&nx)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        hexagon_skipped += 1;
                        continue;
                    }
                };
                let im = s.grades.index_of(m).expect("iterating the universe");
                let in_ = s.grades.index_of(n).expect("iterating the universe");
                instance(
                    &mut report,
                    || format!("hexagon at ({m}, {n}, {x})"),
                    || {
                        // st_{M,N.X} . (id_M . st_{N,X}) . assoc
                        //   == F(assoc) . st_{M(x)N,X}
                        let fx = s.functor.apply_obj(x, cap)?;
                        let lhs = compose(
                            s.component(im, ix_nx),
                            &compose(
                                &act.act_mor(&identity(m), s.component(in_, ix), cap)?,
                                &act.associator(m, n, &fx, cap)?,
                            )?,
                        )?;
                        let f_assoc = s.functor.apply_mor(&act.associator(m, n, x, cap)?, cap)?;
                        let rhs = compose(&f_assoc, s.component(ig_mn, ix))?;
                        Ok(eq_or(
                            "hexagon",
                            &[("M", m.to_string()), ("N", n.to_string()), ("X", x.to_string())],
                            &lhs,
                            &rhs,
                        ))
                    },
                )?;
                report.bump("hexagon-checked");
            }
        }
    }
    if hexagon_skipped > 0 {
        report.count("hexagon-skipped", hexagon_skipped);
        report.skip(format!(
            "{hexagon_skipped} hexagon instances with tensor or acted object outside the universes"
        ));
    }

    report.seal();
    Ok(report)
}

/// The unique cartesian strength: `st(m, w) = F(x -> (m,x))(w)`.
pub fn canonical_strength(
    functor: &FunctorExpr,
    objects: &Universe,
    grades: &Universe,
) -> Result<Strength> {
    let cap = objects.budget().max_size;
    Strength::from_fn(
        functor.clone(),
        cartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let fx = functor.apply_obj(x, cap)?;
            let src = product(m, &fx);
            let mx = product(m, x);
            let fmx = functor.apply_obj(&mx.object, cap)?;
            let mut table = vec![0usize; src.object.size()];
            for im in 0..m.size() {
                let insert = FinFun::from_fn(x.clone(), mx.object.clone(), |i| mx.encode(im, i));
                let f_insert = functor.apply_mor(&insert, cap)?;
                for t in 0..fx.size() {
                    table[src.encode(im, t)] = f_insert.apply(t);
                }
            }
            FinFun::new(src.object, fmx, table)
        },
    )
}

/// The identity functor is costrong over any action, with identity
/// components; useful as the target of copoint squares.
pub fn identity_costrength(
    action: ActionRef,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    let cap = objects.budget().max_size;
    let act = action.clone();
    Costrength::from_fn(
        FunctorExpr::Id,
        action,
        objects.clone(),
        grades.clone(),
        |m, x| Ok(identity(&act.act_obj(m, x, cap)?)),
    )
}

/// Extracts the copoint of a cartesian costrength by evaluating at the
/// unit object: `eps_M = proj1 . cst_{M,1} . F(m -> (m,*))`.
pub fn phi(c: &Costrength) -> Result<Copoint> {
    if c.action.name() != "cart" {
        return Err(Error::precondition(
            "copoint extraction is defined over the cartesian action",
        ));
    }
    let cap = c.objects.budget().max_size;
    let one = FinSet::unit();
    let i1 = c.objects.require(&one)?;
    let mut components = Vec::with_capacity(c.grades.len());
    for (ig, m) in c.grades.objects().iter().enumerate() {
        let m1 = product(m, &one);
        let into = FinFun::from_fn(m.clone(), m1.object.clone(), |i| m1.encode(i, 0));
        let f_into = c.functor.apply_mor(&into, cap)?;
        let f1 = c.functor.apply_obj(&one, cap)?;
        let proj = product(m, &f1).proj1();
        components.push(compose(&proj, &compose(c.component(ig, i1), &f_into)?)?);
    }
    Copoint::new(c.functor.clone(), c.grades.clone(), components)
}

/// Rebuilds the cartesian costrength of a copoint:
/// `cst_{M,X} = (eps_M x id) . <F(proj1), F(proj2)>`.
pub fn psi(p: &Copoint, objects: &Universe, grades: &Universe) -> Result<Costrength> {
    let cap = objects.budget().max_size;
    let functor = p.functor().clone();
    Costrength::from_fn(
        functor.clone(),
        cartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let ig = p.universe().require(m)?;
            let eps_m = p.epsilon.component(ig);
            let mx = product(m, x);
            let f_p1 = functor.apply_mor(&mx.proj1(), cap)?;
            let f_p2 = functor.apply_mor(&mx.proj2(), cap)?;
            let split = pair(&f_p1, &f_p2)?;
            let fx = functor.apply_obj(x, cap)?;
            compose(&product_map(eps_m, &identity(&fx)), &split)
        },
    )
}

/// Checks `proj2 . cst_{M,X} = F(proj2)` for every component; over the
/// cartesian action this follows from the laws, and several uniqueness
/// arguments lean on it.
pub fn projection_lemma_report(c: &Costrength) -> Result<LawReport> {
    if c.action.name() != "cart" {
        return Err(Error::precondition(
            "the projection identity concerns the cartesian action",
        ));
    }
    let cap = c.objects.budget().max_size;
    let mut report = LawReport::new("projection-identity");
    for (ig, m) in c.grades.objects().iter().enumerate() {
        for (ix, x) in c.objects.objects().iter().enumerate() {
            let fx = c.functor.apply_obj(x, cap)?;
            let lhs = compose(&product(m, &fx).proj2(), c.component(ig, ix))?;
            let rhs = c.functor.apply_mor(&product(m, x).proj2(), cap)?;
            report.tick();
            if let Some(cx) = eq_or(
                "projection-identity",
                &[("M", m.to_string()), ("X", x.to_string())],
                &lhs,
                &rhs,
            ) {
                report.fail(cx);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// All costrengths of `functor` over the given action and universes, in a
/// canonical order.
///
/// Propagation enforces both naturalities and the unit triangle during the
/// search; survivors then pass through [`check_costrength`] so the returned
/// list satisfies every law the checker can decide on this scope.
pub fn enumerate_costrengths(
    functor: &FunctorExpr,
    action: &ActionRef,
    objects: &Universe,
    grades: &Universe,
) -> Result<Vec<Costrength>> {
    let candidates = enumerate_components(functor, action, objects, grades, false)?;
    let mut out = Vec::new();
    for components in candidates {
        let c = Costrength::new(
            functor.clone(),
            action.clone(),
            objects.clone(),
            grades.clone(),
            components,
        )?;
        if check_costrength(&c)?.is_pass() {
            out.push(c);
        }
    }
    Ok(out)
}

/// Dual enumeration; over the cartesian action the result is always the
/// one canonical strength.
pub fn enumerate_strengths(
    functor: &FunctorExpr,
    action: &ActionRef,
    objects: &Universe,
    grades: &Universe,
) -> Result<Vec<Strength>> {
    let candidates = enumerate_components(functor, action, objects, grades, true)?;
    let mut out = Vec::new();
    for components in candidates {
        let s = Strength::new(
            functor.clone(),
            action.clone(),
            objects.clone(),
            grades.clone(),
            components,
        )?;
        if check_strength(&s)?.is_pass() {
            out.push(s);
        }
    }
    Ok(out)
}

/// Shared search core: blocks indexed grade-major, naturality links in both
/// arguments, unit triangle pinned through a fixed block. `reversed` flips
/// the component boundary from costrength to strength.
fn enumerate_components(
    functor: &FunctorExpr,
    action: &ActionRef,
    objects: &Universe,
    grades: &Universe,
    reversed: bool,
) -> Result<Vec<Vec<FinFun>>> {
    let cap = objects.budget().max_size;
    let max_hom = objects.budget().max_hom;
    let act = action.as_ref();
    let mut search = FamilySearch::new();
    let width = objects.len();

    for m in grades.objects() {
        for x in objects.objects() {
            let mx = act.act_obj(m, x, cap)?;
            let fmx = functor.apply_obj(&mx, cap)?;
            let fx = functor.apply_obj(x, cap)?;
            let mfx = act.act_obj(m, &fx, cap)?;
            if reversed {
                search.add_block(mfx, fmx);
            } else {
                search.add_block(fmx, mfx);
            }
        }
    }

    // naturality in X links
    for (ix, x) in objects.objects().iter().enumerate() {
        for (iy, y) in objects.objects().iter().enumerate() {
            if hom_size(x, y).map_or(true, |h| h > max_hom) {
                return Err(Error::precondition(format!(
                    "enumeration must consider every arrow, but hom({x}, {y}) exceeds the budget"
                )));
            }
            for f in all_functions(x, y) {
                for (ig, m) in grades.objects().iter().enumerate() {
                    let idm = identity(m);
                    let f_on_act = functor.apply_mor(&act.act_mor(&idm, &f, cap)?, cap)?;
                    let act_on_f = act.act_mor(&idm, &functor.apply_mor(&f, cap)?, cap)?;
                    let (pre, post) = if reversed {
                        (act_on_f, f_on_act)
                    } else {
                        (f_on_act, act_on_f)
                    };
                    search.add_link(ig * width + ix, ig * width + iy, pre, post)?;
                }
            }
        }
    }

    // naturality in M links
    for (im, m) in grades.objects().iter().enumerate() {
        for (in_, n) in grades.objects().iter().enumerate() {
            if grade_hom_size(act, m, n).map_or(true, |h| h > max_hom) {
                return Err(Error::precondition(format!(
                    "enumeration must consider every grade arrow, but hom({m}, {n}) exceeds the budget"
                )));
            }
            for u in grade_arrows(act, m, n) {
                for (ix, x) in objects.objects().iter().enumerate() {
                    let fx = functor.apply_obj(x, cap)?;
                    let f_on_act = functor.apply_mor(&act.act_mor(&u, &identity(x), cap)?, cap)?;
                    let act_on_f = act.act_mor(&u, &identity(&fx), cap)?;
                    let (pre, post) = if reversed {
                        (act_on_f, f_on_act)
                    } else {
                        (f_on_act, act_on_f)
                    };
                    search.add_link(im * width + ix, in_ * width + ix, pre, post)?;
                }
            }
        }
    }

    // unit triangle, when the unit grade is present
    if let Some(iu) = grades.index_of(&act.unit()) {
        for (ix, x) in objects.objects().iter().enumerate() {
            let fx = functor.apply_obj(x, cap)?;
            let f_unitor = functor.apply_mor(&act.unitor(x, cap)?, cap)?;
            let act_unitor = act.unitor(&fx, cap)?;
            // costrength: unitor_F . sol == F(unitor); strength: F(unitor) . sol == unitor_F
            let (pinned, post) = if reversed {
                (act_unitor, f_unitor)
            } else {
                (f_unitor, act_unitor)
            };
            let fixed = search.add_fixed(&pinned);
            let pre = identity(pinned.dom());
            search.add_link(iu * width + ix, fixed, pre, post)?;
        }
    }

    let solutions = search.solve(objects.budget().max_candidates)?;
    Ok(solutions
        .into_iter()
        .map(|sol| sol[..grades.len() * width].to_vec())
        .collect())
}

/// Verifies that [`phi`] and [`psi`] are mutually inverse on everything the
/// enumerations can find for `functor`, and that every enumerated
/// costrength satisfies the projection identity.
pub fn roundtrip_report(
    functor: &FunctorExpr,
    objects: &Universe,
    grades: &Universe,
) -> Result<LawReport> {
    let mut report = LawReport::new("copoint-costrength-correspondence");
    let copoints: Vec<Copoint> = enumerate_nat(functor, &FunctorExpr::Id, grades)?
        .into_iter()
        .map(Copoint::from_family)
        .collect::<Result<_>>()?;
    let costrengths = enumerate_costrengths(functor, &cartesian(), objects, grades)?;
    report.count("copoints", copoints.len() as u64);
    report.count("costrengths", costrengths.len() as u64);

    for (i, p) in copoints.iter().enumerate() {
        let c = psi(p, objects, grades)?;
        report.absorb(&format!("psi[{i}]"), check_costrength(&c)?);
        let back = phi(&c)?;
        report.tick();
        if &back != p {
            report.fail(counterexample(
                "phi-after-psi",
                &[("copoint", i.to_string())],
                "phi(psi(p)) differs from p",
            ));
        }
    }

    for (i, c) in costrengths.iter().enumerate() {
        let p = phi(c)?;
        report.absorb(&format!("phi[{i}]"), p.check()?);
        let back = psi(&p, objects, grades)?;
        report.tick();
        if &back != c {
            report.fail(counterexample(
                "psi-after-phi",
                &[("costrength", i.to_string())],
                "psi(phi(c)) differs from c",
            ));
        }
        report.absorb(&format!("projection[{i}]"), projection_lemma_report(c)?);
    }

    // the two enumerations must agree in size if the correspondence is a
    // bijection on this scope
    report.tick();
    if copoints.len() != costrengths.len() {
        report.fail(counterexample(
            "correspondence-count",
            &[],
            format!(
                "{} copoints vs {} costrengths",
                copoints.len(),
                costrengths.len()
            ),
        ));
    }

    Ok(report)
}

/// Finds the first single-entry corruption of a component that the law
/// checker rejects. Every lawful costrength on a non-degenerate scope has
/// one; its existence in each suite is the proof that the checks are not
/// vacuous.
pub fn mutation_witness(c: &Costrength) -> Result<Option<(usize, usize, LawReport)>> {
    for k in 0..c.components().len() {
        let comp = &c.components()[k];
        let cod_size = comp.cod().size();
        if cod_size < 2 {
            continue;
        }
        for e in 0..comp.dom().size() {
            let old = comp.apply(e);
            let tweaked = (old + 1) % cod_size;
            let mut mutant = c.clone();
            let mut table = comp.table().to_vec();
            table[e] = tweaked;
            mutant.components_mut()[k] =
                FinFun::new(comp.dom().clone(), comp.cod().clone(), table)?;
            let report = check_costrength(&mutant)?;
            if !report.is_pass() {
                return Ok(Some((k, e, report)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::Budget;

    fn u4() -> Universe {
        Universe::with_budget(
            Universe::default_small().objects().to_vec(),
            Budget::default().with_max_size(512),
        )
    }

    fn writer2() -> FunctorExpr {
        FunctorExpr::writer(FinSet::canonical(2))
    }

    /// The symmetry-induced writer costrength, written down directly:
    /// S x (M x X) -> M x (S x X).
    fn writer_symmetry_costrength(u: &Universe) -> Costrength {
        let s = FinSet::canonical(2);
        Costrength::from_fn(writer2(), cartesian(), u.clone(), u.clone(), |m, x| {
            let mx = product(m, x);
            let src = product(&s, &mx.object);
            let sx = product(&s, x);
            let dst = product(m, &sx.object);
            Ok(FinFun::from_fn(
                src.object.clone(),
                dst.object.clone(),
                |i| {
                    let (is, imx) = src.decode(i);
                    let (im, ix) = mx.decode(imx);
                    dst.encode(im, sx.encode(is, ix))
                },
            ))
        })
        .unwrap()
    }

    #[test]
    fn writer_symmetry_costrength_passes_all_laws() {
        let u = u4();
        let c = writer_symmetry_costrength(&u);
        let r = check_costrength(&c).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.checked > 100);
    }

    #[test]
    fn identity_costrength_passes_for_every_action() {
        for action in [cartesian(), crate::actions::cocartesian()] {
            let u = u4();
            let c = identity_costrength(action, &u, &u).unwrap();
            let r = check_costrength(&c).unwrap();
            assert!(r.is_pass(), "{:?}", r.counterexample);
        }
    }

    #[test]
    fn canonical_strength_passes_and_is_unique() {
        let u = u4();
        for f in [
            FunctorExpr::Id,
            writer2(),
            FunctorExpr::maybe(),
            FunctorExpr::reader(FinSet::canonical(2)),
        ] {
            let st = canonical_strength(&f, &u, &u).unwrap();
            let r = check_strength(&st).unwrap();
            assert!(r.is_pass(), "{f}: {:?}", r.counterexample);
            let all = enumerate_strengths(&f, &cartesian(), &u, &u).unwrap();
            assert_eq!(all.len(), 1, "strength of {f} must be unique");
            assert_eq!(all[0], st, "enumerated strength of {f} must be canonical");
        }
    }

    #[test]
    fn canonical_strength_on_maybe_matches_the_formula() {
        let u = u4();
        let st = canonical_strength(&FunctorExpr::maybe(), &u, &u).unwrap();
        let m = FinSet::canonical(2);
        let x = FinSet::canonical(2);
        let comp = st.component_at(&m, &x).unwrap();
        // dom = M x (1 + X), A-major: (e0,inl *) (e0,inr e0) (e0,inr e1) ...
        // cod = 1 + (M x X) with pairs in A-major order after the point
        assert_eq!(comp.table(), &[0, 1, 2, 0, 3, 4]);
    }

    #[test]
    fn writer_costrength_count_is_one_and_roundtrips() {
        let u = u4();
        let found = enumerate_costrengths(&writer2(), &cartesian(), &u, &u).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0], writer_symmetry_costrength(&u));
        let r = roundtrip_report(&writer2(), &u, &u).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["copoints"], 1);
    }

    #[test]
    fn reader_has_exactly_two_costrengths() {
        let u = u4();
        let reader = FunctorExpr::reader(FinSet::canonical(2));
        let found = enumerate_costrengths(&reader, &cartesian(), &u, &u).unwrap();
        assert_eq!(found.len(), 2, "one per element of the base set");
        let r = roundtrip_report(&reader, &u, &u).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
    }

    #[test]
    fn maybe_has_no_cartesian_costrength() {
        let u = u4();
        let found = enumerate_costrengths(&FunctorExpr::maybe(), &cartesian(), &u, &u).unwrap();
        assert!(found.is_empty());
        let r = roundtrip_report(&FunctorExpr::maybe(), &u, &u).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.counts["copoints"], 0);
        assert_eq!(r.counts["costrengths"], 0);
    }

    #[test]
    fn phi_of_writer_costrength_is_the_projection() {
        let u = u4();
        let c = writer_symmetry_costrength(&u);
        let p = phi(&c).unwrap();
        assert!(p.check().unwrap().is_pass());
        let s = FinSet::canonical(2);
        for (ig, m) in u.objects().iter().enumerate() {
            assert_eq!(p.epsilon.component(ig), &product(&s, m).proj2());
        }
        // and psi takes it back to the symmetry costrength
        assert_eq!(psi(&p, &u, &u).unwrap(), c);
    }

    #[test]
    fn psi_of_a_corrupted_family_fails_the_law_check() {
        let u = u4();
        let c = writer_symmetry_costrength(&u);
        let p = phi(&c).unwrap();
        // break naturality: swap the copoint component at the 2-element set
        let mut comps = p.epsilon.components.clone();
        let idx = u.require(&FinSet::canonical(2)).unwrap();
        let dom = comps[idx].dom().clone();
        let cod = comps[idx].cod().clone();
        let flipped: Vec<usize> = comps[idx].table().iter().map(|&v| 1 - v).collect();
        comps[idx] = FinFun::new(dom, cod, flipped).unwrap();
        let bad = Copoint::new(writer2(), u.clone(), comps).unwrap();
        assert!(!bad.check().unwrap().is_pass());
        let bad_cst = psi(&bad, &u, &u).unwrap();
        let r = check_costrength(&bad_cst).unwrap();
        assert!(!r.is_pass(), "a non-natural copoint cannot yield a lawful costrength");
    }

    #[test]
    fn mutation_witness_exists_for_writer() {
        let u = u4();
        let c = writer_symmetry_costrength(&u);
        let witness = mutation_witness(&c).unwrap();
        assert!(witness.is_some(), "single-entry corruptions must be caught");
    }

    #[test]
    fn closure_universes_make_hexagons_checkable() {
        let base = Universe::with_budget(
            vec![FinSet::empty(), FinSet::unit(), FinSet::canonical(2)],
            Budget::default().with_max_size(2048),
        );
        let act = cartesian();
        let gu = closed_grade_universe(act.as_ref(), &base, 16).unwrap();
        let uu = closed_object_universe(act.as_ref(), &gu, &base, 16).unwrap();
        assert!(gu.len() > base.len());
        let c = Costrength::from_fn(writer2(), act, uu.clone(), gu.clone(), |m, x| {
            let s = FinSet::canonical(2);
            let mx = product(m, x);
            let src = product(&s, &mx.object);
            let sx = product(&s, x);
            let dst = product(m, &sx.object);
            Ok(FinFun::from_fn(src.object.clone(), dst.object.clone(), |i| {
                let (is, imx) = src.decode(i);
                let (im, ix) = mx.decode(imx);
                dst.encode(im, sx.encode(is, ix))
            }))
        })
        .unwrap();
        let r = check_costrength(&c).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts.get("hexagon-checked").copied().unwrap_or(0) > 0);
    }
}
