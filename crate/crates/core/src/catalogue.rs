//! A catalogue of concrete costrengths and the reports that tie them
//! together: cocartesian costrengths (powerset, filtrable, writer),
//! the op-exponential costrength and its agreement with the adjoint
//! transpose of the canonical strength, copower distribution families,
//! the uniqueness square, coproducts and composites of costrong functors,
//! costrong natural transformations, cofree copointed functors, comonad
//! counit/comultiplication squares, and the costrong-hom bijection.

use crate::actions::{cartesian, cocartesian, op_exponential, Variance};
use crate::costrength::{
    check_costrength, identity_costrength, psi, Copoint, Costrength,
    enumerate_costrengths,
};
use crate::error::{Error, Result};
use crate::finset::{
    all_functions, bang, compose, coproduct, coproduct_map, curry, exponential, hom_size,
    identity, point, powerset, product, FinFun, FinSet, Side,
};
use crate::functor::FunctorExpr;
use crate::nat::{enumerate_nat, NatFamily};
use crate::report::{counterexample, eq_or, instance, LawReport};
use crate::universe::Universe;

/// The writer costrength induced by the symmetry of the product:
/// `S x (M x X) -> M x (S x X)`.
pub fn writer_symmetry_costrength(
    s: &FinSet,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    Costrength::from_fn(
        FunctorExpr::writer(s.clone()),
        cartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let mx = product(m, x);
            let src = product(s, &mx.object);
            let sx = product(s, x);
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
        },
    )
}

/// The powerset functor's cocartesian costrength: a subset of `M + X`
/// forgets its left elements, `U -> inr {x | inr x in U}`.
pub fn powerset_cocart_costrength(objects: &Universe, grades: &Universe) -> Result<Costrength> {
    Costrength::from_fn(
        FunctorExpr::Pow(Box::new(FunctorExpr::Id)),
        cocartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let mx = coproduct(m, x);
            let pw_mx = powerset(&mx.object);
            let pw_x = powerset(x);
            let cod = coproduct(m, &pw_x.object);
            Ok(FinFun::from_fn(
                pw_mx.object.clone(),
                cod.object.clone(),
                |mask| {
                    let mut kept = 0usize;
                    for ix in 0..x.size() {
                        if pw_mx.contains(mask, mx.encode_right(ix)) {
                            kept |= 1 << ix;
                        }
                    }
                    cod.encode_right(kept)
                },
            ))
        },
    )
}

/// Builds the cocartesian costrength of a filtrable functor, one that
/// comes with a natural way to drop failures, `filt: F(Maybe -) => F`.
/// The component is the composite
///
/// ```text
/// F(M + X) --F(! + id)--> F(1 + X) --filt--> F(X) --inr--> M + F(X)
/// ```
///
/// A non-natural `filt` is rejected up front, because every law failure of
/// the output would otherwise be blamed on the composite.
pub fn filtrable_costrength(
    functor: &FunctorExpr,
    filt: &NatFamily,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    let expected_source = FunctorExpr::comp(functor.clone(), FunctorExpr::maybe());
    if filt.source != expected_source || filt.target != *functor {
        return Err(Error::mismatch(
            "filtrable structure boundary",
            format!("{} => {}", expected_source, functor),
            format!("{} => {}", filt.source, filt.target),
        ));
    }
    if !filt.check_natural()?.is_pass() {
        return Err(Error::precondition(
            "the filtering family must be natural before it can induce a costrength",
        ));
    }
    let cap = objects.budget().max_size;
    Costrength::from_fn(
        functor.clone(),
        cocartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let drop_left = coproduct_map(&bang(m), &identity(x));
            let step1 = functor.apply_mor(&drop_left, cap)?;
            let step2 = filt.component_at(x)?;
            let fx = functor.apply_obj(x, cap)?;
            let step3 = coproduct(m, &fx).inr();
            compose(&step3, &compose(step2, &step1)?)
        },
    )
}

/// The writer functor's cocartesian costrength
/// `S x (M + X) -> M + (S x X)`: a left summand drops the logged value,
/// a right summand keeps it.
pub fn writer_cocart_costrength(
    s: &FinSet,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    Costrength::from_fn(
        FunctorExpr::writer(s.clone()),
        cocartesian(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let mx = coproduct(m, x);
            let src = product(s, &mx.object);
            let sx = product(s, x);
            let cod = coproduct(m, &sx.object);
            Ok(FinFun::from_fn(
                src.object.clone(),
                cod.object.clone(),
                |i| {
                    let (is, imx) = src.decode(i);
                    match mx.decode(imx) {
                        Side::Left(im) => cod.encode_left(im),
                        Side::Right(ix) => cod.encode_right(sx.encode(is, ix)),
                    }
                },
            ))
        },
    )
}

/// Every functor is costrong for the contravariant exponential action,
/// with `cst(t)(m) = F(evaluate at m)(t) : F([M,X]) -> [M, F(X)]`.
pub fn op_exponential_costrength(
    functor: &FunctorExpr,
    objects: &Universe,
    grades: &Universe,
) -> Result<Costrength> {
    let cap = objects.budget().max_size;
    Costrength::from_fn(
        functor.clone(),
        op_exponential(),
        objects.clone(),
        grades.clone(),
        |m, x| {
            let e_mx = exponential(m, x);
            let dom = functor.apply_obj(&e_mx.object, cap)?;
            let fx = functor.apply_obj(x, cap)?;
            let e_res = exponential(m, &fx);
            let evaluders: Vec<FinFun> = (0..m.size())
                .map(|im| functor.apply_mor(&e_mx.eval_at(im), cap))
                .collect::<Result<_>>()?;
            let mut table = Vec::with_capacity(dom.size());
            for t in 0..dom.size() {
                let values: Vec<usize> = evaluders.iter().map(|fe| fe.apply(t)).collect();
                table.push(e_res.encode(&values));
            }
            FinFun::new(dom, e_res.object, table)
        },
    )
}

/// Confirms per grade that [`op_exponential_costrength`] coincides with
/// the adjoint transpose of the canonical right strength: the composite
/// `F([M,X]) x M -> F([M,X] x M) -> F(X)` curried over `M`. The two
/// constructions are compared as tables for every grade and object.
pub fn op_exp_mate_agreement_report(
    functor: &FunctorExpr,
    objects: &Universe,
    grades: &Universe,
) -> Result<LawReport> {
    let cap = objects.budget().max_size;
    let c = op_exponential_costrength(functor, objects, grades)?;
    let mut report = LawReport::new("op-exponential-mate-agreement");
    for (ig, m) in grades.objects().iter().enumerate() {
        for (ix, x) in objects.objects().iter().enumerate() {
            instance(&mut report, || format!("transpose at ({m}, {x})"), || {
                let e_mx = exponential(m, x);
                let f_emx = functor.apply_obj(&e_mx.object, cap)?;
                let p = product(&e_mx.object, m);
                let f_ev = functor.apply_mor(&e_mx.eval(), cap)?;
                // right strength of F at ([M,X], M), built pointwise in m
                let src = product(&f_emx, m);
                let f_p = functor.apply_obj(&p.object, cap)?;
                let mut st_table = vec![0usize; src.object.size()];
                for im in 0..m.size() {
                    let ins = FinFun::from_fn(e_mx.object.clone(), p.object.clone(), |u| {
                        p.encode(u, im)
                    });
                    let f_ins = functor.apply_mor(&ins, cap)?;
                    for t in 0..f_emx.size() {
                        st_table[src.encode(t, im)] = f_ins.apply(t);
                    }
                }
                let st_r = FinFun::new(src.object.clone(), f_p, st_table)?;
                let transpose = curry(&compose(&f_ev, &st_r)?, &f_emx, m)?;
                Ok(eq_or(
                    "mate-agreement",
                    &[("M", m.to_string()), ("X", x.to_string())],
                    c.component(ig, ix),
                    &transpose,
                ))
            })?;
        }
    }
    report.seal();
    Ok(report)
}

/// The copower distribution family `S x G(X) -> G(S x X)`,
/// `(s, w) -> G(x -> (s,x))(w)`, natural in `X` for any functor `G`.
pub fn copower_costrength(
    s: &FinSet,
    g: &FunctorExpr,
    objects: &Universe,
) -> Result<NatFamily> {
    let cap = objects.budget().max_size;
    let source = FunctorExpr::prod(FunctorExpr::Const(s.clone()), g.clone());
    let target = FunctorExpr::comp(g.clone(), FunctorExpr::writer(s.clone()));
    let mut components = Vec::with_capacity(objects.len());
    for x in objects.objects() {
        let gx = g.apply_obj(x, cap)?;
        let src = product(s, &gx);
        let sx = product(s, x);
        let g_sx = g.apply_obj(&sx.object, cap)?;
        let mut table = vec![0usize; src.object.size()];
        for is in 0..s.size() {
            let ins = FinFun::from_fn(x.clone(), sx.object.clone(), |ix| sx.encode(is, ix));
            let g_ins = g.apply_mor(&ins, cap)?;
            for iw in 0..gx.size() {
                table[src.encode(is, iw)] = g_ins.apply(iw);
            }
        }
        components.push(FinFun::new(src.object, g_sx, table)?);
    }
    NatFamily::new(source, target, objects.clone(), components)
}

/// Runs the copower family's naturality check for each functor in a
/// caller-supplied list. The list is the finite stand-in for "all
/// functors", and its members are named in the report.
pub fn copower_report(
    s: &FinSet,
    functors: &[FunctorExpr],
    objects: &Universe,
) -> Result<LawReport> {
    let mut report = LawReport::new("copower-distribution");
    report.note(format!(
        "functor list: {}",
        functors
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    for g in functors {
        let family = copower_costrength(s, g, objects)?;
        report.absorb(&g.to_string(), family.check_natural()?);
    }
    report.seal();
    Ok(report)
}

fn require_regular_at(c: &Costrength, m: &FinSet, y: &FinSet) -> Result<()> {
    if c.action.variance() != Variance::Covariant {
        return Err(Error::precondition(
            "the uniqueness square concerns regular actions, which are covariant",
        ));
    }
    let cap = c.objects.budget().max_size;
    if c.action.act_obj(m, y, cap)? != c.action.tensor(m, y, cap)? {
        return Err(Error::precondition(format!(
            "action is not regular at ({m}, {y}): acting and tensoring disagree"
        )));
    }
    Ok(())
}

/// Checks one instance of the square that pins down a costrength over a
/// regular action: for `f: X -> I` and `g: F(Y) -> I`,
///
/// ```text
/// (f (x) g) . cst_{X,Y} == g . F(unitor) . F(f (x) id)   up to I (x) I ~ I
/// ```
///
/// Only the commutation is decided here. The hypotheses under which the
/// square determines the costrength uniquely are not checked; no finite
/// scope in this crate satisfies them non-degenerately, and the uniqueness
/// phenomenon itself is exercised through enumeration counts instead.
pub fn check_uniqueness_square(
    c: &Costrength,
    y: &FinSet,
    f: &FinFun,
    g: &FinFun,
) -> Result<LawReport> {
    let mut report = LawReport::new("uniqueness-square");
    let cap = c.objects.budget().max_size;
    let act = c.action.as_ref();
    let unit = act.unit();
    let x = f.dom().clone();
    require_regular_at(c, &x, y)?;
    if f.cod() != &unit {
        return Err(Error::mismatch(
            "uniqueness square first leg",
            format!("map into {unit}"),
            format!("map into {}", f.cod()),
        ));
    }
    let fy = c.functor.apply_obj(y, cap)?;
    if g.dom() != &fy || g.cod() != &unit {
        return Err(Error::mismatch(
            "uniqueness square second leg",
            format!("{fy} -> {unit}"),
            format!("{} -> {}", g.dom(), g.cod()),
        ));
    }
    let cst = c.component_at(&x, y)?;
    let squash = act.unitor(&unit, cap)?;
    let lhs = compose(&squash, &compose(&act.act_mor(f, g, cap)?, cst)?)?;
    let into_unit = c.functor.apply_mor(&act.act_mor(f, &identity(y), cap)?, cap)?;
    let f_unitor = c.functor.apply_mor(&act.unitor(y, cap)?, cap)?;
    let rhs = compose(g, &compose(&f_unitor, &into_unit)?)?;
    report.tick();
    if let Some(cx) = eq_or(
        "uniqueness-square",
        &[
            ("X", x.to_string()),
            ("Y", y.to_string()),
            ("f", f.to_string()),
            ("g", g.to_string()),
        ],
        &lhs,
        &rhs,
    ) {
        report.fail(cx);
    }
    Ok(report)
}

/// The quantified variant: every grade, every object, every pair of legs
/// within the hom budget.
pub fn uniqueness_square_report(c: &Costrength) -> Result<LawReport> {
    let mut report = LawReport::new("uniqueness-square-sweep");
    let cap = c.objects.budget().max_size;
    let max_hom = c.objects.budget().max_hom;
    let act = c.action.as_ref();
    let unit = act.unit();
    for (ig, x) in c.grades.objects().iter().enumerate() {
        for (iy, y) in c.objects.objects().iter().enumerate() {
            require_regular_at(c, x, y)?;
            let fy = c.functor.apply_obj(y, cap)?;
            let too_big = hom_size(x, &unit).map_or(true, |h| h > max_hom)
                || hom_size(&fy, &unit).map_or(true, |h| h > max_hom);
            if too_big {
                report.skip(format!("legs at ({x}, {y}) exceed the hom budget"));
                continue;
            }
            let squash = act.unitor(&unit, cap)?;
            let f_unitor = c.functor.apply_mor(&act.unitor(y, cap)?, cap)?;
            for f in all_functions(x, &unit) {
                let into_unit =
                    c.functor.apply_mor(&act.act_mor(&f, &identity(y), cap)?, cap)?;
                for g in all_functions(&fy, &unit) {
                    let lhs = compose(
                        &squash,
                        &compose(&act.act_mor(&f, &g, cap)?, c.component(ig, iy))?,
                    )?;
                    let rhs = compose(&g, &compose(&f_unitor, &into_unit)?)?;
                    report.tick();
                    report.bump("squares");
                    if let Some(cx) = eq_or(
                        "uniqueness-square",
                        &[
                            ("X", x.to_string()),
                            ("Y", y.to_string()),
                            ("f", f.to_string()),
                            ("g", g.to_string()),
                        ],
                        &lhs,
                        &rhs,
                    ) {
                        report.fail(cx);
                        return Ok(report);
                    }
                }
            }
        }
    }
    report.seal();
    Ok(report)
}

/// A costrength for `F + G` from costrengths for `F` and `G`: case-split,
/// then fold the two sides `M.F(X) + M.G(X) -> M.(F(X) + G(X))` with the
/// acted injections.
pub fn coproduct_costrong(c1: &Costrength, c2: &Costrength) -> Result<Costrength> {
    if c1.action.name() != c2.action.name() {
        return Err(Error::precondition(format!(
            "coproduct of costrong functors needs one action, got {} and {}",
            c1.action.name(),
            c2.action.name()
        )));
    }
    if c1.objects.objects() != c2.objects.objects() || c1.grades.objects() != c2.grades.objects() {
        return Err(Error::precondition(
            "coproduct of costrong functors needs matching universes",
        ));
    }
    let cap = c1.objects.budget().max_size;
    let act = c1.action.clone();
    let expr = FunctorExpr::coprod(c1.functor.clone(), c2.functor.clone());
    Costrength::from_fn(
        expr,
        c1.action.clone(),
        c1.objects.clone(),
        c1.grades.clone(),
        |m, x| {
            let ig = c1.grades.require(m)?;
            let ix = c1.objects.require(x)?;
            let fx = c1.functor.apply_obj(x, cap)?;
            let gx = c2.functor.apply_obj(x, cap)?;
            let sum = coproduct(&fx, &gx);
            let left = compose(
                &act.act_mor(&identity(m), &sum.inl(), cap)?,
                c1.component(ig, ix),
            )?;
            let right = compose(
                &act.act_mor(&identity(m), &sum.inr(), cap)?,
                c2.component(ig, ix),
            )?;
            crate::finset::copair(&left, &right)
        },
    )
}

/// Builds the coproduct costrength, law-checks it, and verifies that both
/// coproduct injections are costrong natural transformations into it.
pub fn coproduct_report(c1: &Costrength, c2: &Costrength) -> Result<LawReport> {
    let combined = coproduct_costrong(c1, c2)?;
    let mut report = LawReport::new("coproduct-costrong");
    report.absorb("laws", check_costrength(&combined)?);
    let cap = c1.objects.budget().max_size;
    let u = &c1.objects;
    let mut inls = Vec::with_capacity(u.len());
    let mut inrs = Vec::with_capacity(u.len());
    for x in u.objects() {
        let fx = c1.functor.apply_obj(x, cap)?;
        let gx = c2.functor.apply_obj(x, cap)?;
        let sum = coproduct(&fx, &gx);
        inls.push(sum.inl());
        inrs.push(sum.inr());
    }
    let inl = NatFamily::new(
        c1.functor.clone(),
        combined.functor.clone(),
        u.clone(),
        inls,
    )?;
    let inr = NatFamily::new(
        c2.functor.clone(),
        combined.functor.clone(),
        u.clone(),
        inrs,
    )?;
    report.absorb("left-injection", check_costrong_nat(&inl, c1, &combined)?);
    report.absorb("right-injection", check_costrong_nat(&inr, c2, &combined)?);
    report.seal();
    Ok(report)
}

/// Checks the square making `alpha` a costrong natural transformation:
/// `act(id, alpha) . cst_src == cst_tgt . alpha` at `M . X`. Squares whose
/// acted object is missing from a universe are counted and skipped.
pub fn check_costrong_nat(
    alpha: &NatFamily,
    c_src: &Costrength,
    c_tgt: &Costrength,
) -> Result<LawReport> {
    if alpha.source != c_src.functor || alpha.target != c_tgt.functor {
        return Err(Error::mismatch(
            "costrong transformation boundary",
            format!("{} => {}", c_src.functor, c_tgt.functor),
            format!("{} => {}", alpha.source, alpha.target),
        ));
    }
    if c_src.action.name() != c_tgt.action.name() {
        return Err(Error::precondition(
            "costrong naturality relates costrengths over one action",
        ));
    }
    if c_src.grades.objects() != c_tgt.grades.objects() {
        return Err(Error::precondition(
            "costrong naturality needs a shared grade universe",
        ));
    }
    let cap = alpha.universe.budget().max_size;
    let act = c_src.action.as_ref();
    let mut report = LawReport::new("costrong-naturality");
    let mut out_of_scope = 0u64;
    for (ig, m) in c_src.grades.objects().iter().enumerate() {
        for (i_alpha, x) in alpha.universe.objects().iter().enumerate() {
            let (ix_src, ix_tgt) = match (c_src.objects.index_of(x), c_tgt.objects.index_of(x)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    out_of_scope += 1;
                    continue;
                }
            };
            let mx = match act.act_obj(m, x, cap) {
                Ok(t) => t,
                Err(Error::SizeCap { .. }) => {
                    out_of_scope += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(i_mx) = alpha.universe.index_of(&mx) else {
                out_of_scope += 1;
                continue;
            };
            instance(&mut report, || format!("square at ({m}, {x})"), || {
                let lhs = compose(
                    &act.act_mor(&identity(m), alpha.component(i_alpha), cap)?,
                    c_src.component(ig, ix_src),
                )?;
                let rhs = compose(c_tgt.component(ig, ix_tgt), alpha.component(i_mx))?;
                Ok(eq_or(
                    "costrong-naturality",
                    &[("M", m.to_string()), ("X", x.to_string())],
                    &lhs,
                    &rhs,
                ))
            })?;
            report.bump("squares-checked");
        }
    }
    if out_of_scope > 0 {
        report.count("squares-skipped", out_of_scope);
        report.skip(format!(
            "{out_of_scope} squares with an object or acted object outside a universe"
        ));
    }
    report.seal();
    Ok(report)
}

/// The cofree copointed functor on `F`: the product `Id x F` with first
/// projection as copoint. Its image under the copoint-to-costrength
/// construction is lawful for every `F`, including functors with no
/// costrength of their own.
pub fn cofree_copointed(
    functor: &FunctorExpr,
    universe: &Universe,
) -> Result<(FunctorExpr, Copoint)> {
    let cap = universe.budget().max_size;
    let expr = FunctorExpr::prod(FunctorExpr::Id, functor.clone());
    let mut components = Vec::with_capacity(universe.len());
    for x in universe.objects() {
        let fx = functor.apply_obj(x, cap)?;
        components.push(product(x, &fx).proj1());
    }
    Ok((expr.clone(), Copoint::new(expr, universe.clone(), components)?))
}

/// A costrength for the composite `F . G` out of costrengths for the
/// parts: push `G`'s component through `F`, then use `F`'s component at
/// `G(X)`. The result is tabulated over `objects`; the outer costrength
/// must already cover every `G(X)` arising there.
pub fn compose_costrength(
    outer: &Costrength,
    inner: &Costrength,
    objects: &Universe,
) -> Result<Costrength> {
    if outer.action.name() != inner.action.name() {
        return Err(Error::precondition(
            "composite costrength needs one action on both layers",
        ));
    }
    if outer.grades.objects() != inner.grades.objects() {
        return Err(Error::precondition(
            "composite costrength needs a shared grade universe",
        ));
    }
    let cap = objects.budget().max_size;
    let expr = FunctorExpr::comp(outer.functor.clone(), inner.functor.clone());
    Costrength::from_fn(
        expr,
        outer.action.clone(),
        objects.clone(),
        outer.grades.clone(),
        |m, x| {
            let g_cst = inner.component_at(m, x)?;
            let f_of_g = outer.functor.apply_mor(g_cst, cap)?;
            let gx = inner.functor.apply_obj(x, cap)?;
            let f_cst = outer.component_at(m, &gx)?;
            compose(f_cst, &f_of_g)
        },
    )
}

/// The writer comonad's structure maps over a universe: counit drops the
/// log, comultiplication duplicates it.
pub fn writer_comonad(s: &FinSet, universe: &Universe) -> Result<(NatFamily, NatFamily)> {
    let w = FunctorExpr::writer(s.clone());
    let ww = FunctorExpr::comp(w.clone(), w.clone());
    let mut counits = Vec::with_capacity(universe.len());
    let mut comults = Vec::with_capacity(universe.len());
    for x in universe.objects() {
        let sx = product(s, x);
        counits.push(sx.proj2());
        let ssx = product(s, &sx.object);
        comults.push(FinFun::from_fn(
            sx.object.clone(),
            ssx.object.clone(),
            |i| {
                let (is, _) = sx.decode(i);
                ssx.encode(is, i)
            },
        ));
    }
    Ok((
        NatFamily::new(w.clone(), FunctorExpr::Id, universe.clone(), counits)?,
        NatFamily::new(w, ww, universe.clone(), comults)?,
    ))
}

/// The costate (store) comonad's structure maps: counit evaluates the
/// focus at the position, comultiplication refocuses,
/// `(s, t) -> (s, s' -> (s', t))`.
pub fn costate_comonad(s: &FinSet, universe: &Universe) -> Result<(NatFamily, NatFamily)> {
    let c = FunctorExpr::costate(s.clone());
    let cc = FunctorExpr::comp(c.clone(), c.clone());
    let cap = universe.budget().max_size;
    let mut counits = Vec::with_capacity(universe.len());
    let mut comults = Vec::with_capacity(universe.len());
    for x in universe.objects() {
        let e_in = exponential(s, x);
        let cx = product(s, &e_in.object);
        counits.push(FinFun::from_fn(cx.object.clone(), x.clone(), |i| {
            let (is, it) = cx.decode(i);
            e_in.decode(it)[is]
        }));
        let cx_obj = c.apply_obj(x, cap)?;
        let e_out = exponential(s, &cx_obj);
        let ccx = product(s, &e_out.object);
        comults.push(FinFun::from_fn(cx.object.clone(), ccx.object.clone(), |i| {
            let (is, it) = cx.decode(i);
            let values: Vec<usize> = (0..s.size()).map(|is2| cx.encode(is2, it)).collect();
            ccx.encode(is, e_out.encode(&values))
        }));
    }
    Ok((
        NatFamily::new(c.clone(), FunctorExpr::Id, universe.clone(), counits)?,
        NatFamily::new(c, cc, universe.clone(), comults)?,
    ))
}

/// For a comonad whose counit is a copoint: rebuilds the induced
/// costrength, law-checks it, and verifies that counit and
/// comultiplication are costrong natural transformations (into the
/// identity functor and into the composite, respectively).
///
/// `counit` and `comult` must be tabulated over a universe containing the
/// acted objects, or the squares degrade to counted skips.
pub fn comonad_costrong_report(
    counit: &NatFamily,
    comult: &NatFamily,
    grades: &Universe,
) -> Result<LawReport> {
    let functor = counit.source.clone();
    let u = counit.universe.clone();
    let cap = u.budget().max_size;
    let mut report = LawReport::new("comonad-costrong");
    let copoint = Copoint::from_family(counit.restricted(grades)?)?;
    let c = psi(&copoint, &u, grades)?;
    report.absorb("induced-costrength", check_costrength(&c)?);
    let c_id = identity_costrength(cartesian(), &u, grades)?;
    report.absorb("counit-square", check_costrong_nat(counit, &c, &c_id)?);

    // the comultiplication lands in F . F, whose costrength is the
    // composite; tabulate it over the base objects the squares can reach
    let mut outer_extra = Vec::new();
    for x in u.objects() {
        match functor.apply_obj(x, cap) {
            Ok(fx) => outer_extra.push(fx),
            Err(Error::SizeCap { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let u_outer = u.extended(outer_extra);
    let c_outer = psi(&copoint, &u_outer, grades)?;
    let mut reachable = Vec::new();
    for x in u.objects() {
        let fx = functor.apply_obj(x, cap)?;
        if u_outer.index_of(&fx).is_some()
            && FunctorExpr::comp(functor.clone(), functor.clone())
                .apply_obj(x, cap)
                .is_ok()
        {
            reachable.push(x.clone());
        }
    }
    let u_compose = Universe::with_budget(reachable, *u.budget());
    let cc = compose_costrength(&c_outer, &c, &u_compose)?;
    report.absorb("comult-square", check_costrong_nat(comult, &c, &cc)?);
    report.seal();
    Ok(report)
}

/// Counts costrong natural transformations `(M0 x -, symmetry) -> (F, c)`
/// against plain functions `M0 -> F(1)`, for every enumerated costrength
/// `c` of `F`, and verifies that transposition
/// `alpha -> (m -> alpha(m, *))` and its inverse
/// `h -> (m, x) -> F(point x)(h(m))` are mutually inverse bijections
/// between the two sides.
pub fn hom_bijection_report(
    m0: &FinSet,
    functor: &FunctorExpr,
    objects: &Universe,
    grades: &Universe,
) -> Result<LawReport> {
    let cap = objects.budget().max_size;
    let mut report = LawReport::new("costrong-hom-bijection");
    let src_expr = FunctorExpr::prod(FunctorExpr::Const(m0.clone()), FunctorExpr::Id);
    let src_cst = writer_symmetry_costrength(m0, objects, grades)?;
    let one = FinSet::unit();
    let i1 = objects.require(&one)?;
    let f1 = functor.apply_obj(&one, cap)?;
    let hom: Vec<FinFun> = all_functions(m0, &f1).collect();
    report.count("hom-functions", hom.len() as u64);

    let costrengths = enumerate_costrengths(functor, &cartesian(), objects, grades)?;
    report.count("costrengths", costrengths.len() as u64);
    let nats = enumerate_nat(&src_expr, functor, objects)?;

    let transpose = |alpha: &NatFamily| -> FinFun {
        let p = product(m0, &one);
        FinFun::from_fn(m0.clone(), f1.clone(), |im| {
            alpha.component(i1).apply(p.encode(im, 0))
        })
    };
    let untranspose = |h: &FinFun| -> Result<NatFamily> {
        let mut comps = Vec::with_capacity(objects.len());
        for x in objects.objects() {
            let p = product(m0, x);
            let fx = functor.apply_obj(x, cap)?;
            let mut pointed = Vec::with_capacity(x.size());
            for ix in 0..x.size() {
                pointed.push(functor.apply_mor(&point(x, ix), cap)?);
            }
            comps.push(FinFun::from_fn(p.object.clone(), fx, |i| {
                let (im, ix) = p.decode(i);
                pointed[ix].apply(h.apply(im))
            }));
        }
        NatFamily::new(src_expr.clone(), functor.clone(), objects.clone(), comps)
    };

    for (ci, c) in costrengths.iter().enumerate() {
        let mut costrong: Vec<&NatFamily> = Vec::new();
        let mut skipped_squares = 0u64;
        for alpha in &nats {
            let sub = check_costrong_nat(alpha, &src_cst, c)?;
            skipped_squares += sub.counts.get("squares-skipped").copied().unwrap_or(0);
            if sub.status != crate::report::LawStatus::Fail {
                costrong.push(alpha);
            }
        }
        report.count(&format!("costrong-nats[{ci}]"), costrong.len() as u64);
        if skipped_squares > 0 {
            report.count(&format!("skipped-squares[{ci}]"), skipped_squares);
        }
        report.tick();
        if costrong.len() != hom.len() {
            report.fail(counterexample(
                "hom-bijection-count",
                &[("costrength", ci.to_string())],
                format!(
                    "{} costrong transformations vs {} functions into F(1)",
                    costrong.len(),
                    hom.len()
                ),
            ));
            continue;
        }
        for (ai, alpha) in costrong.iter().enumerate() {
            let h = transpose(alpha);
            let back = untranspose(&h)?;
            report.tick();
            if back.components != alpha.components {
                report.fail(counterexample(
                    "transpose-roundtrip",
                    &[("costrength", ci.to_string()), ("index", ai.to_string())],
                    "rebuilding from the transposed function changed the transformation",
                ));
            }
        }
        for (hi, h) in hom.iter().enumerate() {
            let alpha = untranspose(h)?;
            let sub = check_costrong_nat(&alpha, &src_cst, c)?;
            report.tick();
            if sub.status == crate::report::LawStatus::Fail {
                report.fail(counterexample(
                    "untranspose-costrong",
                    &[("costrength", ci.to_string()), ("function", hi.to_string())],
                    "the rebuilt transformation is not costrong",
                ));
            }
            let back = transpose(&alpha);
            report.tick();
            if back != *h {
                report.fail(counterexample(
                    "untranspose-transpose",
                    &[("costrength", ci.to_string()), ("function", hi.to_string())],
                    "transposing the rebuilt transformation changed the function",
                ));
            }
        }
    }
    report.seal();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::costrength::{closed_object_universe, enumerate_costrengths};
    use crate::universe::Budget;

    fn u3() -> Universe {
        Universe::with_budget(
            vec![FinSet::empty(), FinSet::unit(), FinSet::canonical(2)],
            Budget::default().with_max_size(512),
        )
    }

    fn u4() -> Universe {
        Universe::with_budget(
            Universe::default_small().objects().to_vec(),
            Budget::default().with_max_size(512),
        )
    }

    fn powerset_filter(u: &Universe) -> NatFamily {
        let pw = FunctorExpr::Pow(Box::new(FunctorExpr::Id));
        let source = FunctorExpr::comp(pw.clone(), FunctorExpr::maybe());
        let comps = u
            .objects()
            .iter()
            .map(|x| {
                let mx = coproduct(&FinSet::unit(), x);
                let pw_mx = powerset(&mx.object);
                let pw_x = powerset(x);
                FinFun::from_fn(pw_mx.object.clone(), pw_x.object.clone(), |mask| {
                    let mut kept = 0usize;
                    for ix in 0..x.size() {
                        if pw_mx.contains(mask, mx.encode_right(ix)) {
                            kept |= 1 << ix;
                        }
                    }
                    kept
                })
            })
            .collect();
        NatFamily::new(source, pw, u.clone(), comps).unwrap()
    }

    #[test]
    fn powerset_cocart_forgets_left_elements() {
        let u = u3();
        let c = powerset_cocart_costrength(&u, &u).unwrap();
        let r = check_costrength(&c).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        let two = FinSet::canonical(2);
        let comp = c.component_at(&two, &two).unwrap();
        // M + X = {inl e0, inl e1, inr e0, inr e1}; masks are bitsets
        assert_eq!(comp.apply(0b0101), 2 + 0b01, "{{inl e0, inr e0}} keeps e0");
        assert_eq!(comp.apply(0), 2, "empty subset stays empty");
        assert_eq!(comp.apply(0b1111), 2 + 0b11, "full subset keeps all of X");
    }

    #[test]
    fn filtrable_with_powerset_filter_reproduces_the_powerset_costrength() {
        let u = u3();
        let pw = FunctorExpr::Pow(Box::new(FunctorExpr::Id));
        let filt = powerset_filter(&u);
        let via_filter = filtrable_costrength(&pw, &filt, &u, &u).unwrap();
        let direct = powerset_cocart_costrength(&u, &u).unwrap();
        assert_eq!(via_filter.components(), direct.components());
    }

    #[test]
    fn filtrable_maybe_join_gives_a_lawful_costrength() {
        let u = u3();
        let maybe = FunctorExpr::maybe();
        let source = FunctorExpr::comp(maybe.clone(), maybe.clone());
        let comps = u
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
        let join = NatFamily::new(source, maybe.clone(), u.clone(), comps).unwrap();
        let c = filtrable_costrength(&maybe, &join, &u, &u).unwrap();
        let r = check_costrength(&c).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        // just(inl m) collapses to nothing, just(inr x) survives
        let two = FinSet::canonical(2);
        let comp = c.component_at(&two, &two).unwrap();
        let mx = coproduct(&two, &two);
        let cod = coproduct(&two, &coproduct(&FinSet::unit(), &two).object);
        let outer = coproduct(&FinSet::unit(), &mx.object);
        assert_eq!(comp.apply(outer.encode_left(0)), cod.encode_right(0));
        assert_eq!(
            comp.apply(outer.encode_right(mx.encode_left(1))),
            cod.encode_right(0),
            "a logged grade value is forgotten"
        );
        assert_eq!(
            comp.apply(outer.encode_right(mx.encode_right(1))),
            cod.encode_right(2),
            "a payload survives as just"
        );
    }

    #[test]
    fn filtrable_rejects_a_non_natural_filter() {
        let u = u3();
        let pw = FunctorExpr::Pow(Box::new(FunctorExpr::Id));
        let mut filt = powerset_filter(&u);
        let i2 = u.require(&FinSet::canonical(2)).unwrap();
        let broken = FinFun::from_fn(
            filt.components[i2].dom().clone(),
            filt.components[i2].cod().clone(),
            |mask| (mask + 1) % 4,
        );
        filt.components[i2] = broken;
        match filtrable_costrength(&pw, &filt, &u, &u) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected a precondition rejection, got {other:?}"),
        }
    }

    #[test]
    fn writer_cocart_matches_the_hand_table() {
        let u = u3();
        let s = FinSet::canonical(2);
        let c = writer_cocart_costrength(&s, &u, &u).unwrap();
        assert!(check_costrength(&c).unwrap().is_pass());
        let two = FinSet::canonical(2);
        let comp = c.component_at(&two, &two).unwrap();
        assert_eq!(comp.table(), &[0, 1, 2, 3, 0, 1, 4, 5]);
    }

    #[test]
    fn op_exponential_costrength_is_lawful_and_matches_its_transpose() {
        let u = u3();
        for f in [
            FunctorExpr::Id,
            FunctorExpr::writer(FinSet::canonical(2)),
            FunctorExpr::maybe(),
            FunctorExpr::Pow(Box::new(FunctorExpr::Id)),
        ] {
            let c = op_exponential_costrength(&f, &u, &u).unwrap();
            let r = check_costrength(&c).unwrap();
            assert!(r.is_pass(), "{f}: {:?}", r.counterexample);
            let mates = op_exp_mate_agreement_report(&f, &u, &u).unwrap();
            assert!(mates.is_pass(), "{f}: {:?}", mates.counterexample);
            // at the unit grade the component is the canonical iso
            let comp = c.component_at(&FinSet::unit(), &FinSet::canonical(2)).unwrap();
            assert!(comp.is_bijection(), "{f}: unit-grade component must be iso");
        }
    }

    #[test]
    fn copower_family_is_natural_for_the_sample_list() {
        let u = u3();
        let s = FinSet::canonical(2);
        let list = [
            FunctorExpr::Id,
            FunctorExpr::maybe(),
            FunctorExpr::Pow(Box::new(FunctorExpr::Id)),
        ];
        let r = copower_report(&s, &list, &u).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);

        let id_family = copower_costrength(&s, &FunctorExpr::Id, &u).unwrap();
        for comp in &id_family.components {
            assert!(comp.is_identity(), "for Id both sides are the same product");
        }
        let maybe_family = copower_costrength(&s, &FunctorExpr::maybe(), &u).unwrap();
        let two = FinSet::canonical(2);
        let comp = maybe_family.component_at(&two).unwrap();
        let p = product(&s, &coproduct(&FinSet::unit(), &two).object);
        assert_eq!(comp.apply(p.encode(1, 0)), 0, "(s1, nothing) -> nothing");
    }

    #[test]
    fn uniqueness_square_commutes_even_for_corrupted_costrengths() {
        let u = u3();
        let s = FinSet::canonical(2);
        let c = writer_symmetry_costrength(&s, &u, &u).unwrap();
        let sweep = uniqueness_square_report(&c).unwrap();
        assert!(sweep.is_pass(), "{:?}", sweep.counterexample);
        assert_eq!(sweep.counts["squares"], 9, "one (f, g) pair per grade/object");

        // single-instance form with explicit legs
        let two = FinSet::canonical(2);
        let f = bang(&two);
        let g = bang(&product(&s, &two).object);
        assert!(check_uniqueness_square(&c, &two, &f, &g).unwrap().is_pass());

        // the unit is terminal here, so any pair of costrength-shaped
        // tables satisfies the square; corruption goes undetected, which
        // is exactly the degeneracy the hypotheses rule out
        let mut broken = c.clone();
        let k = broken.components().len() - 1;
        let comp = broken.components()[k].clone();
        let cod = comp.cod().size();
        let table: Vec<usize> = comp.table().iter().map(|&v| (v + 1) % cod).collect();
        broken.components_mut()[k] =
            FinFun::new(comp.dom().clone(), comp.cod().clone(), table).unwrap();
        assert!(!check_costrength(&broken).unwrap().is_pass());
        assert!(uniqueness_square_report(&broken).unwrap().is_pass());
    }

    #[test]
    fn coproduct_of_writer_costrengths_is_costrong_with_costrong_injections() {
        let base = u3();
        let gu = u3();
        let u_cl = closed_object_universe(cartesian().as_ref(), &gu, &base, 16).unwrap();
        let s = FinSet::canonical(2);
        let c1 = writer_symmetry_costrength(&s, &u_cl, &gu).unwrap();
        let c2 = writer_symmetry_costrength(&s, &u_cl, &gu).unwrap();
        let r = coproduct_report(&c1, &c2).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts.get("left-injection.squares-checked").copied().unwrap_or(0) > 0);
    }

    #[test]
    fn coproduct_of_identity_costrengths_is_the_distribution_iso() {
        let u = u3();
        let c = identity_costrength(cartesian(), &u, &u).unwrap();
        let combined = coproduct_costrong(&c, &c).unwrap();
        assert!(check_costrength(&combined).unwrap().is_pass());
        for comp in combined.components() {
            assert!(comp.is_bijection());
        }
    }

    #[test]
    fn coproduct_rejects_mismatched_actions() {
        let u = u3();
        let c1 = identity_costrength(cartesian(), &u, &u).unwrap();
        let c2 = identity_costrength(cocartesian(), &u, &u).unwrap();
        match coproduct_costrong(&c1, &c2) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected a precondition rejection, got {other:?}"),
        }
    }

    #[test]
    fn projection_is_costrong_from_writer_to_identity() {
        let base = u3();
        let gu = u3();
        let u_cl = closed_object_universe(cartesian().as_ref(), &gu, &base, 16).unwrap();
        let s = FinSet::canonical(2);
        let c_src = writer_symmetry_costrength(&s, &u_cl, &gu).unwrap();
        let c_tgt = identity_costrength(cartesian(), &u_cl, &gu).unwrap();
        let comps = u_cl
            .objects()
            .iter()
            .map(|x| product(&s, x).proj2())
            .collect();
        let pi2 = NatFamily::new(
            FunctorExpr::writer(s.clone()),
            FunctorExpr::Id,
            u_cl.clone(),
            comps,
        )
        .unwrap();
        let r = check_costrong_nat(&pi2, &c_src, &c_tgt).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts["squares-checked"] > 0);

        // identity transformation on the writer functor
        let id_comps = u_cl
            .objects()
            .iter()
            .map(|x| identity(&product(&s, x).object))
            .collect();
        let id_nat = NatFamily::new(
            FunctorExpr::writer(s.clone()),
            FunctorExpr::writer(s.clone()),
            u_cl.clone(),
            id_comps,
        )
        .unwrap();
        assert!(check_costrong_nat(&id_nat, &c_src, &c_src).unwrap().is_pass());

        // corrupting one component breaks the square
        let mut bad = pi2.clone();
        let i2 = u_cl.require(&FinSet::canonical(2)).unwrap();
        let dom = bad.components[i2].dom().clone();
        let cod = bad.components[i2].cod().clone();
        let table: Vec<usize> = bad.components[i2].table().iter().map(|&v| 1 - v).collect();
        bad.components[i2] = FinFun::new(dom, cod, table).unwrap();
        assert!(!check_costrong_nat(&bad, &c_src, &c_tgt).unwrap().is_pass());
    }

    #[test]
    fn cofree_copointed_is_costrong_even_over_maybe() {
        for (f, u) in [
            (FunctorExpr::maybe(), u4()),
            (FunctorExpr::Const(FinSet::unit()), u4()),
            // the powerset factor outgrows the cap on 3x3-sized products,
            // so it runs on the smaller universe
            (FunctorExpr::Pow(Box::new(FunctorExpr::Id)), u3()),
        ] {
            let (expr, eps) = cofree_copointed(&f, &u).unwrap();
            assert_eq!(expr, FunctorExpr::prod(FunctorExpr::Id, f.clone()));
            assert!(eps.check().unwrap().is_pass());
            let c = psi(&eps, &u, &u).unwrap();
            let r = check_costrength(&c).unwrap();
            assert!(r.is_pass(), "{f}: {:?}", r.counterexample);
        }
    }

    #[test]
    fn constant_unit_has_one_cocartesian_costrength() {
        let u = u3();
        let found = enumerate_costrengths(
            &FunctorExpr::Const(FinSet::unit()),
            &cocartesian(),
            &u,
            &u,
        )
        .unwrap();
        assert_eq!(found.len(), 1, "naturality from the empty grade forces inr");
        for (ig, m) in u.objects().iter().enumerate() {
            for ix in 0..u.len() {
                let comp = found[0].component(ig, ix);
                assert_eq!(comp.apply(0), m.size(), "value must be inr *");
            }
        }
    }

    #[test]
    fn writer_comonad_squares_pass() {
        let base = u3();
        let gu = u3();
        let u_cl = closed_object_universe(cartesian().as_ref(), &gu, &base, 16).unwrap();
        let (counit, comult) = writer_comonad(&FinSet::canonical(2), &u_cl).unwrap();
        assert!(counit.check_natural().unwrap().is_pass());
        assert!(comult.check_natural().unwrap().is_pass());
        let r = comonad_costrong_report(&counit, &comult, &gu).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts.get("comult-square.squares-checked").copied().unwrap_or(0) > 0);
    }

    #[test]
    fn costate_comonad_squares_pass() {
        let base = Universe::with_budget(
            vec![FinSet::empty(), FinSet::unit(), FinSet::canonical(2)],
            Budget::default().with_max_size(65_536),
        );
        let gu = base.clone();
        let u_cl = closed_object_universe(cartesian().as_ref(), &gu, &base, 16).unwrap();
        let (counit, comult) = costate_comonad(&FinSet::canonical(2), &u_cl).unwrap();
        assert!(counit.check_natural().unwrap().is_pass());
        let r = comonad_costrong_report(&counit, &comult, &gu).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts.get("comult-square.squares-checked").copied().unwrap_or(0) > 0);
    }

    #[test]
    fn hom_bijection_holds_for_writer_with_two_element_weight() {
        let u = u4();
        let r = hom_bijection_report(
            &FinSet::canonical(2),
            &FunctorExpr::writer(FinSet::canonical(2)),
            &u,
            &u,
        )
        .unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["hom-functions"], 4);
        assert_eq!(r.counts["costrong-nats[0]"], 4);
    }
}
