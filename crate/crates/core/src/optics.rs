//! Representative-based optics over an action, their composition, and the
//! decision procedure for when two representatives denote the same optic.
//!
//! An optic is a triple (residual, forward part, backward part) up to the
//! relation that lets a residual arrow slide from one part to the other.
//! Equality of these classes is decided extensionally: for the cartesian
//! action by a lens normal form, for the cocartesian action by a prism
//! normal form, and [`slide_reachability_report`] validates at small sizes
//! that the normal forms carve out exactly the slide-connected components.
//!
//! Costrength/strength pairs transform optics functorially; the checks in
//! [`transformer_functoriality_report`] exercise precisely the laws a
//! transformer needs, so corrupting a structure map makes them fail.

use std::collections::HashMap;

use crate::actions::ActionRef;
use crate::costrength::{check_costrength, check_strength, Costrength, Strength};
use crate::error::{Error, Result};
use crate::finset::{
    all_functions, compose, coproduct, hom_size, identity, pair, product, FinFun, FinSet,
};
use crate::report::{counterexample, LawReport};
use crate::universe::Universe;

/// The four boundary objects of an optic, outside-in: the forward part
/// consumes `outer_in` and focuses on `inner_in`; the backward part turns
/// an updated `inner_out` back into `outer_out`.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    pub outer_in: FinSet,
    pub inner_in: FinSet,
    pub inner_out: FinSet,
    pub outer_out: FinSet,
}

/// A coend representative: `fwd: outer_in -> M . inner_in` and
/// `bwd: M . inner_out -> outer_out` with residual `M`.
#[derive(Clone)]
pub struct OpticRep {
    pub action: ActionRef,
    pub residual: FinSet,
    pub boundary: Boundary,
    pub fwd: FinFun,
    pub bwd: FinFun,
}

impl std::fmt::Debug for OpticRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OpticRep")
            .field("action", &self.action.name())
            .field("residual", &self.residual)
            .field("boundary", &self.boundary)
            .field("fwd", &self.fwd)
            .field("bwd", &self.bwd)
            .finish()
    }
}

impl OpticRep {
    pub fn new(
        action: ActionRef,
        residual: FinSet,
        boundary: Boundary,
        fwd: FinFun,
        bwd: FinFun,
    ) -> Result<Self> {
        let m_in = action.act_obj(&residual, &boundary.inner_in, usize::MAX)?;
        if fwd.dom() != &boundary.outer_in || fwd.cod() != &m_in {
            return Err(Error::mismatch(
                "optic forward part",
                format!("{} -> {m_in}", boundary.outer_in),
                format!("{} -> {}", fwd.dom(), fwd.cod()),
            ));
        }
        let m_out = action.act_obj(&residual, &boundary.inner_out, usize::MAX)?;
        if bwd.dom() != &m_out || bwd.cod() != &boundary.outer_out {
            return Err(Error::mismatch(
                "optic backward part",
                format!("{m_out} -> {}", boundary.outer_out),
                format!("{} -> {}", bwd.dom(), bwd.cod()),
            ));
        }
        Ok(OpticRep {
            action,
            residual,
            boundary,
            fwd,
            bwd,
        })
    }
}

/// The do-nothing optic between `x` and `y` boundaries: residual is the
/// acting unit, both parts are unitors.
pub fn unit_optic(action: ActionRef, x: &FinSet, y: &FinSet) -> Result<OpticRep> {
    let fwd = action.unitor(x, usize::MAX)?.inverse()?;
    let bwd = action.unitor(y, usize::MAX)?;
    OpticRep::new(
        action.clone(),
        action.unit(),
        Boundary {
            outer_in: x.clone(),
            inner_in: x.clone(),
            inner_out: y.clone(),
            outer_out: y.clone(),
        },
        fwd,
        bwd,
    )
}

pub fn identity_optic(action: ActionRef, x: &FinSet) -> Result<OpticRep> {
    unit_optic(action, x, x)
}

/// Sequential composition, outer optic first: the composite focuses
/// through `outer` and then through `inner`, and its residual is the
/// tensor of the two residuals.
pub fn compose_optics(outer: &OpticRep, inner: &OpticRep, cap: usize) -> Result<OpticRep> {
    if outer.action.name() != inner.action.name() {
        return Err(Error::mismatch(
            "optic composition actions",
            outer.action.name().to_string(),
            inner.action.name().to_string(),
        ));
    }
    if outer.boundary.inner_in != inner.boundary.outer_in
        || outer.boundary.inner_out != inner.boundary.outer_out
    {
        return Err(Error::mismatch(
            "optic composition middle boundary",
            format!(
                "({}, {})",
                outer.boundary.inner_in, outer.boundary.inner_out
            ),
            format!(
                "({}, {})",
                inner.boundary.outer_in, inner.boundary.outer_out
            ),
        ));
    }
    let act = &outer.action;
    let residual = act.tensor(&outer.residual, &inner.residual, cap)?;
    let id_outer = identity(&outer.residual);
    // fwd: the outer part exposes its focus, the inner part runs under the
    // outer residual, then the associator regroups
    let nested_fwd = compose(&act.act_mor(&id_outer, &inner.fwd, cap)?, &outer.fwd)?;
    let assoc_in = act.associator(
        &outer.residual,
        &inner.residual,
        &inner.boundary.inner_in,
        cap,
    )?;
    let fwd = compose(&assoc_in.inverse()?, &nested_fwd)?;
    let assoc_out = act.associator(
        &outer.residual,
        &inner.residual,
        &inner.boundary.inner_out,
        cap,
    )?;
    let bwd = compose(
        &outer.bwd,
        &compose(&act.act_mor(&id_outer, &inner.bwd, cap)?, &assoc_out)?,
    )?;
    OpticRep::new(
        outer.action.clone(),
        residual,
        Boundary {
            outer_in: outer.boundary.outer_in.clone(),
            inner_in: inner.boundary.inner_in.clone(),
            inner_out: inner.boundary.inner_out.clone(),
            outer_out: outer.boundary.outer_out.clone(),
        },
        fwd,
        bwd,
    )
}

/// What a cartesian optic does, with the residual eliminated: read the
/// focus, and rebuild using whatever the forward pass remembered.
#[derive(Debug, Clone, PartialEq)]
pub struct LensNF {
    pub get: FinFun,
    pub put: FinFun,
}

/// What a cocartesian optic does: either commit to an output early or
/// expose the focus, and embed an updated focus.
#[derive(Debug, Clone, PartialEq)]
pub struct PrismNF {
    pub matcher: FinFun,
    pub build: FinFun,
}

fn require_action(o: &OpticRep, name: &str) -> Result<()> {
    if o.action.name() != name {
        return Err(Error::precondition(format!(
            "normal form needs the {name} action, found {:?}",
            o.action.name()
        )));
    }
    Ok(())
}

/// The extensional normal form of a cartesian optic. Two representatives
/// denote the same optic exactly when their normal forms coincide.
pub fn lens_nf(o: &OpticRep) -> Result<LensNF> {
    require_action(o, "cart")?;
    let p_in = product(&o.residual, &o.boundary.inner_in);
    let get = compose(&p_in.proj2(), &o.fwd)?;
    let p_out = product(&o.residual, &o.boundary.inner_out);
    let dom = product(&o.boundary.outer_in, &o.boundary.inner_out);
    let put = FinFun::from_fn(dom.object.clone(), o.boundary.outer_out.clone(), |i| {
        let (ix, iy) = dom.decode(i);
        let (im, _) = p_in.decode(o.fwd.apply(ix));
        o.bwd.apply(p_out.encode(im, iy))
    });
    Ok(LensNF { get, put })
}

/// The extensional normal form of a cocartesian optic.
pub fn prism_nf(o: &OpticRep) -> Result<PrismNF> {
    require_action(o, "cocart")?;
    let c_in = coproduct(&o.residual, &o.boundary.inner_in);
    let c_out = coproduct(&o.residual, &o.boundary.inner_out);
    let split = coproduct(&o.boundary.outer_out, &o.boundary.inner_in);
    let matcher = FinFun::from_fn(
        o.boundary.outer_in.clone(),
        split.object.clone(),
        |ix| match c_in.decode(o.fwd.apply(ix)) {
            crate::finset::Side::Left(im) => split.encode_left(o.bwd.apply(c_out.encode_left(im))),
            crate::finset::Side::Right(i) => split.encode_right(i),
        },
    );
    let build = compose(&o.bwd, &c_out.inr())?;
    Ok(PrismNF { matcher, build })
}

/// Decides whether two representatives denote the same optic. Complete
/// for the cartesian and cocartesian actions; other actions have no
/// normal form here and are rejected.
pub fn nf_equivalent(a: &OpticRep, b: &OpticRep) -> Result<bool> {
    if a.action.name() != b.action.name() {
        return Err(Error::mismatch(
            "optic equivalence actions",
            a.action.name().to_string(),
            b.action.name().to_string(),
        ));
    }
    if a.boundary != b.boundary {
        return Ok(false);
    }
    match a.action.name() {
        "cart" => Ok(lens_nf(a)? == lens_nf(b)?),
        "cocart" => Ok(prism_nf(a)? == prism_nf(b)?),
        other => Err(Error::precondition(format!(
            "no complete equivalence decision for the {other} action; compare via slide search"
        ))),
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, i: usize) -> usize {
        if self.0[i] != i {
            let r = self.find(self.0[i]);
            self.0[i] = r;
        }
        self.0[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

fn nf_key(o: &OpticRep) -> Result<Vec<usize>> {
    match o.action.name() {
        "cart" => {
            let nf = lens_nf(o)?;
            let mut key = nf.get.table().to_vec();
            key.push(usize::MAX);
            key.extend_from_slice(nf.put.table());
            Ok(key)
        }
        "cocart" => {
            let nf = prism_nf(o)?;
            let mut key = nf.matcher.table().to_vec();
            key.push(usize::MAX);
            key.extend_from_slice(nf.build.table());
            Ok(key)
        }
        other => Err(Error::precondition(format!(
            "no normal form for the {other} action"
        ))),
    }
}

/// Validates, by exhaustion, that the normal form decides exactly the
/// coend relation: over the given boundary and residual universe, two
/// representatives have equal normal forms if and only if they are
/// connected by a chain of residual slides. Exponential in the boundary
/// sizes; meant for small validation instances.
pub fn slide_reachability_report(
    action: ActionRef,
    boundary: &Boundary,
    residuals: &Universe,
) -> Result<LawReport> {
    let mut report = LawReport::new("slide-reachability");
    let cap = residuals.budget().max_size;
    let max_hom = residuals.budget().max_hom as u128;

    // enumerate every representative over the universe
    let mut nodes: Vec<OpticRep> = Vec::new();
    let mut index: HashMap<(usize, Vec<usize>, Vec<usize>), usize> = HashMap::new();
    for (ir, m) in residuals.objects().iter().enumerate() {
        let m_in = action.act_obj(m, &boundary.inner_in, cap)?;
        let m_out = action.act_obj(m, &boundary.inner_out, cap)?;
        let fwd_count = hom_size(&boundary.outer_in, &m_in).unwrap_or(u128::MAX);
        let bwd_count = hom_size(&m_out, &boundary.outer_out).unwrap_or(u128::MAX);
        if fwd_count.saturating_mul(bwd_count) > max_hom {
            return Err(Error::precondition(format!(
                "exhaustive slide validation needs every representative, but residual {m} \
                 contributes {fwd_count} x {bwd_count} of them, over the arrow budget"
            )));
        }
        for fwd in all_functions(&boundary.outer_in, &m_in) {
            for bwd in all_functions(&m_out, &boundary.outer_out) {
                let key = (ir, fwd.table().to_vec(), bwd.table().to_vec());
                index.insert(key, nodes.len());
                nodes.push(OpticRep::new(
                    action.clone(),
                    m.clone(),
                    boundary.clone(),
                    fwd.clone(),
                    bwd,
                )?);
            }
        }
    }
    report.count("representatives", nodes.len() as u64);

    // connect the two representatives related by each slide
    let mut dsu = Dsu::new(nodes.len());
    let mut edges = 0u64;
    for (im, m) in residuals.objects().iter().enumerate() {
        for (in_, n) in residuals.objects().iter().enumerate() {
            let m_in = action.act_obj(m, &boundary.inner_in, cap)?;
            let n_out = action.act_obj(n, &boundary.inner_out, cap)?;
            for r in all_functions(m, n) {
                let slide_in = action.act_mor(&r, &identity(&boundary.inner_in), cap)?;
                let slide_out = action.act_mor(&r, &identity(&boundary.inner_out), cap)?;
                for fwd in all_functions(&boundary.outer_in, &m_in) {
                    let slid_fwd = compose(&slide_in, &fwd)?;
                    for bwd in all_functions(&n_out, &boundary.outer_out) {
                        let slid_bwd = compose(&bwd, &slide_out)?;
                        let a = index[&(im, fwd.table().to_vec(), slid_bwd.table().to_vec())];
                        let b = index[&(in_, slid_fwd.table().to_vec(), bwd.table().to_vec())];
                        dsu.union(a, b);
                        edges += 1;
                    }
                }
            }
        }
    }
    report.count("slides", edges);

    // the two partitions must coincide
    let keys: Vec<Vec<usize>> = nodes.iter().map(nf_key).collect::<Result<_>>()?;
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut root_of_class: HashMap<Vec<usize>, usize> = HashMap::new();
    for i in 0..nodes.len() {
        let root = dsu.find(i);
        if let Some(j) = root_of_class.get(&keys[i]) {
            if dsu.find(*j) != root {
                report.fail(counterexample(
                    "slide-completeness",
                    &[
                        ("first", describe(&nodes[*j])),
                        ("second", describe(&nodes[i])),
                    ],
                    "equal normal forms but no slide chain connects them".to_string(),
                ));
                return Ok(report);
            }
        } else {
            root_of_class.insert(keys[i].clone(), i);
        }
        if let Some(k) = class_of_root.get(&root) {
            if keys[*k] != keys[i] {
                report.fail(counterexample(
                    "slide-soundness",
                    &[
                        ("first", describe(&nodes[*k])),
                        ("second", describe(&nodes[i])),
                    ],
                    "slide-connected representatives with different normal forms".to_string(),
                ));
                return Ok(report);
            }
        } else {
            class_of_root.insert(root, i);
        }
        report.tick();
    }
    report.count("classes", root_of_class.len() as u64);
    report.seal();
    Ok(report)
}

fn describe(o: &OpticRep) -> String {
    format!("residual {}, fwd {}, bwd {}", o.residual, o.fwd, o.bwd)
}

/// Applies a costrength/strength pair to an optic: `F` rewrites the
/// forward part, `G` the backward part, and the residual is untouched.
fn transform_parts(f_cst: &Costrength, g_st: &Strength, o: &OpticRep) -> Result<OpticRep> {
    let cap = f_cst.objects.budget().max_size;
    let cst = f_cst.component_at(&o.residual, &o.boundary.inner_in)?;
    let fwd = compose(cst, &f_cst.functor.apply_mor(&o.fwd, cap)?)?;
    let st = g_st.component_at(&o.residual, &o.boundary.inner_out)?;
    let bwd = compose(&g_st.functor.apply_mor(&o.bwd, cap)?, st)?;
    OpticRep::new(
        o.action.clone(),
        o.residual.clone(),
        Boundary {
            outer_in: f_cst.functor.apply_obj(&o.boundary.outer_in, cap)?,
            inner_in: f_cst.functor.apply_obj(&o.boundary.inner_in, cap)?,
            inner_out: g_st.functor.apply_obj(&o.boundary.inner_out, cap)?,
            outer_out: g_st.functor.apply_obj(&o.boundary.outer_out, cap)?,
        },
        fwd,
        bwd,
    )
}

/// Transforms an optic along a lawful costrength/strength pair over the
/// optic's action. Unlawful structure maps are rejected; see
/// [`transformer_functoriality_report`] for what goes wrong with them.
pub fn transform_optic(f_cst: &Costrength, g_st: &Strength, o: &OpticRep) -> Result<OpticRep> {
    if f_cst.action.name() != o.action.name() || g_st.action.name() != o.action.name() {
        return Err(Error::mismatch(
            "optic transformer actions",
            o.action.name().to_string(),
            format!("{} / {}", f_cst.action.name(), g_st.action.name()),
        ));
    }
    let law = check_costrength(f_cst)?;
    if !law.is_pass() {
        return Err(Error::precondition(format!(
            "the forward structure fails the costrength laws: {:?}",
            law.counterexample
        )));
    }
    let law = check_strength(g_st)?;
    if !law.is_pass() {
        return Err(Error::precondition(format!(
            "the backward structure fails the strength laws: {:?}",
            law.counterexample
        )));
    }
    transform_parts(f_cst, g_st, o)
}

/// Checks that a costrength/strength pair transforms optics functorially:
/// identity optics map to identity optics, composites map to composites,
/// and slide-equivalent representatives stay equivalent. The structure
/// maps are used as given, without a prior law check, so a corrupted map
/// shows up here as a functoriality failure rather than an input error.
pub fn transformer_functoriality_report(
    f_cst: &Costrength,
    g_st: &Strength,
    pairs: &[(OpticRep, OpticRep)],
    objects: &Universe,
) -> Result<LawReport> {
    let mut report = LawReport::new("transformer-functoriality");
    let cap = f_cst.objects.budget().max_size;
    let action = f_cst.action.clone();

    for x in objects.objects() {
        let o = identity_optic(action.clone(), x)?;
        let transformed = transform_parts(f_cst, g_st, &o)?;
        let expected = unit_optic(
            action.clone(),
            &f_cst.functor.apply_obj(x, cap)?,
            &g_st.functor.apply_obj(x, cap)?,
        )?;
        report.tick();
        report.bump("identity-optics");
        if !nf_equivalent(&transformed, &expected)? {
            report.fail(counterexample(
                "transform-identity",
                &[("X", x.to_string())],
                "the transformed identity optic is not the identity optic".to_string(),
            ));
            return Ok(report);
        }
    }

    for (outer, inner) in pairs {
        let composite = compose_optics(outer, inner, cap)?;
        let lhs = transform_parts(f_cst, g_st, &composite)?;
        let rhs = compose_optics(
            &transform_parts(f_cst, g_st, outer)?,
            &transform_parts(f_cst, g_st, inner)?,
            cap,
        )?;
        report.tick();
        report.bump("composites");
        if !nf_equivalent(&lhs, &rhs)? {
            report.fail(counterexample(
                "transform-composition",
                &[
                    ("outer residual", outer.residual.to_string()),
                    ("inner residual", inner.residual.to_string()),
                ],
                "transforming the composite differs from composing the transforms".to_string(),
            ));
            return Ok(report);
        }
    }

    // slide-equivalent representatives of every listed optic must stay
    // equivalent after transformation
    let max_hom = f_cst.objects.budget().max_hom as u128;
    for (outer, inner) in pairs {
        for o in [outer, inner] {
            for n in f_cst.grades.objects() {
                let n_out = action.act_obj(n, &o.boundary.inner_out, cap)?;
                let slide_count = hom_size(&o.residual, n).unwrap_or(u128::MAX);
                let bwd_count = hom_size(&n_out, &o.boundary.outer_out).unwrap_or(u128::MAX);
                if slide_count.saturating_mul(bwd_count) > max_hom {
                    report.skip(format!(
                        "slides from {} to {n}: over the arrow budget",
                        o.residual
                    ));
                    continue;
                }
                for r in all_functions(&o.residual, n) {
                    let slide_in = action.act_mor(&r, &identity(&o.boundary.inner_in), cap)?;
                    let slide_out = action.act_mor(&r, &identity(&o.boundary.inner_out), cap)?;
                    for bwd in all_functions(&n_out, &o.boundary.outer_out) {
                        let variant_a = OpticRep::new(
                            action.clone(),
                            o.residual.clone(),
                            o.boundary.clone(),
                            o.fwd.clone(),
                            compose(&bwd, &slide_out)?,
                        )?;
                        let variant_b = OpticRep::new(
                            action.clone(),
                            n.clone(),
                            o.boundary.clone(),
                            compose(&slide_in, &o.fwd)?,
                            bwd,
                        )?;
                        report.tick();
                        report.bump("slide-variants");
                        if !nf_equivalent(
                            &transform_parts(f_cst, g_st, &variant_a)?,
                            &transform_parts(f_cst, g_st, &variant_b)?,
                        )? {
                            report.fail(counterexample(
                                "transform-equivalence",
                                &[
                                    ("residuals", format!("{} -> {n}", o.residual)),
                                    ("slide", r.to_string()),
                                ],
                                "slide-equivalent inputs transformed to inequivalent optics"
                                    .to_string(),
                            ));
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    report.seal();
    Ok(report)
}

/// Packages a lens as an optic: the residual is the whole source, the
/// forward part remembers it, the backward part applies `put`.
pub fn lens_optic(action: ActionRef, get: &FinFun, put: &FinFun, inner_out: &FinSet) -> Result<OpticRep> {
    let outer_in = get.dom().clone();
    let inner_in = get.cod().clone();
    let expected_put_dom = product(&outer_in, inner_out);
    if put.dom() != &expected_put_dom.object {
        return Err(Error::mismatch(
            "lens put",
            format!("{} -> {}", expected_put_dom.object, put.cod()),
            format!("{} -> {}", put.dom(), put.cod()),
        ));
    }
    let fwd = pair(&identity(&outer_in), get)?;
    let boundary = Boundary {
        outer_in: outer_in.clone(),
        inner_in,
        inner_out: inner_out.clone(),
        outer_out: put.cod().clone(),
    };
    OpticRep::new(action, outer_in, boundary, fwd, put.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{cartesian, cocartesian};
    use crate::catalogue::{cofree_copointed, writer_symmetry_costrength};
    use crate::costrength::{canonical_strength, psi, Costrength};
    use crate::functor::FunctorExpr;
    use crate::universe::{Budget, Universe};

    const CAP: usize = 1 << 16;

    fn fun(dom: usize, cod: usize, table: &[usize]) -> FinFun {
        FinFun::new(
            FinSet::canonical(dom),
            FinSet::canonical(cod),
            table.to_vec(),
        )
        .unwrap()
    }

    /// A concrete lens between 2-element sets, as get/put tables.
    fn sample_lens(get: &[usize], put: &[usize]) -> OpticRep {
        let get = fun(2, 2, get);
        let put = FinFun::new(
            product(&FinSet::canonical(2), &FinSet::canonical(2)).object,
            FinSet::canonical(2),
            put.to_vec(),
        )
        .unwrap();
        lens_optic(cartesian(), &get, &put, &FinSet::canonical(2)).unwrap()
    }

    #[test]
    fn unit_optics_are_compositional_units() {
        let o = sample_lens(&[1, 0], &[0, 1, 1, 0]);
        let left_id = identity_optic(cartesian(), &o.boundary.outer_in).unwrap();
        let right_id = identity_optic(cartesian(), &o.boundary.inner_in).unwrap();
        let left = compose_optics(&left_id, &o, CAP).unwrap();
        let right = compose_optics(&o, &right_id, CAP).unwrap();
        assert!(nf_equivalent(&left, &o).unwrap());
        assert!(nf_equivalent(&right, &o).unwrap());
        // the representatives themselves differ: composition grew the residual
        assert_ne!(left.residual, o.residual);
    }

    #[test]
    fn composite_lens_nf_matches_the_get_put_formulas() {
        let o1 = sample_lens(&[1, 0], &[0, 1, 1, 0]);
        let o2 = sample_lens(&[0, 1], &[1, 1, 0, 1]);
        let composite = compose_optics(&o1, &o2, CAP).unwrap();
        let nf = lens_nf(&composite).unwrap();
        let nf1 = lens_nf(&o1).unwrap();
        let nf2 = lens_nf(&o2).unwrap();
        let pp = product(&FinSet::canonical(2), &FinSet::canonical(2));
        for s in 0..2 {
            let focus1 = nf1.get.apply(s);
            assert_eq!(nf.get.apply(s), nf2.get.apply(focus1));
            for d in 0..2 {
                let mid = nf2.put.apply(pp.encode(focus1, d));
                assert_eq!(
                    nf.put.apply(pp.encode(s, d)),
                    nf1.put.apply(pp.encode(s, mid))
                );
            }
        }
    }

    #[test]
    fn composition_is_associative_up_to_equivalence() {
        let o1 = sample_lens(&[1, 0], &[0, 1, 1, 0]);
        let o2 = sample_lens(&[0, 1], &[1, 1, 0, 1]);
        let o3 = sample_lens(&[1, 1], &[0, 0, 1, 0]);
        let left = compose_optics(&compose_optics(&o1, &o2, CAP).unwrap(), &o3, CAP).unwrap();
        let right = compose_optics(&o1, &compose_optics(&o2, &o3, CAP).unwrap(), CAP).unwrap();
        assert!(nf_equivalent(&left, &right).unwrap());
    }

    #[test]
    fn lens_shaped_optics_recover_their_get_and_put() {
        let get = fun(2, 2, &[1, 0]);
        let put = FinFun::new(
            product(&FinSet::canonical(2), &FinSet::canonical(2)).object,
            FinSet::canonical(2),
            vec![0, 1, 1, 0],
        )
        .unwrap();
        let o = lens_optic(cartesian(), &get, &put, &FinSet::canonical(2)).unwrap();
        let nf = lens_nf(&o).unwrap();
        assert_eq!(nf.get, get);
        assert_eq!(nf.put, put);
    }

    #[test]
    fn unit_residual_optics_read_directly_through_the_unitor() {
        let x = FinSet::canonical(3);
        let o = identity_optic(cartesian(), &x).unwrap();
        let nf = lens_nf(&o).unwrap();
        assert!(nf.get.is_identity());
        let p = product(&x, &x);
        for ix in 0..3 {
            for iy in 0..3 {
                assert_eq!(nf.put.apply(p.encode(ix, iy)), iy, "put ignores the residual");
            }
        }
    }

    #[test]
    fn an_explicit_slide_does_not_change_the_normal_form() {
        // residual 3 slides onto residual 2 along r
        let m = FinSet::canonical(3);
        let n = FinSet::canonical(2);
        let r = FinFun::new(m.clone(), n.clone(), vec![0, 1, 1]).unwrap();
        let x = FinSet::canonical(2);
        let act = cartesian();
        let fwd = FinFun::new(
            x.clone(),
            product(&m, &x).object,
            vec![product(&m, &x).encode(2, 1), product(&m, &x).encode(0, 0)],
        )
        .unwrap();
        let bwd_n = FinFun::new(
            product(&n, &x).object,
            x.clone(),
            vec![0, 1, 1, 0],
        )
        .unwrap();
        let slide_in = act.act_mor(&r, &identity(&x), CAP).unwrap();
        let slide_out = act.act_mor(&r, &identity(&x), CAP).unwrap();
        let boundary = Boundary {
            outer_in: x.clone(),
            inner_in: x.clone(),
            inner_out: x.clone(),
            outer_out: x.clone(),
        };
        let before = OpticRep::new(
            act.clone(),
            m,
            boundary.clone(),
            fwd.clone(),
            compose(&bwd_n, &slide_out).unwrap(),
        )
        .unwrap();
        let after = OpticRep::new(
            act.clone(),
            n,
            boundary,
            compose(&slide_in, &fwd).unwrap(),
            bwd_n,
        )
        .unwrap();
        assert!(nf_equivalent(&before, &after).unwrap());
    }

    fn tiny_universe(sizes: &[usize]) -> Universe {
        Universe::with_budget(
            sizes.iter().map(|&n| FinSet::canonical(n)).collect(),
            Budget::default().with_max_size(CAP).with_max_hom(1 << 20),
        )
    }

    #[test]
    fn normal_forms_decide_exactly_the_slide_relation() {
        let boundary = Boundary {
            outer_in: FinSet::canonical(2),
            inner_in: FinSet::canonical(2),
            inner_out: FinSet::canonical(2),
            outer_out: FinSet::canonical(2),
        };
        let residuals = tiny_universe(&[0, 1, 2]);
        let r = slide_reachability_report(cartesian(), &boundary, &residuals).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["representatives"], 16 + 256);

        let r = slide_reachability_report(cocartesian(), &boundary, &residuals).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
    }

    fn writer_pair(s: usize) -> (Costrength, Strength, Universe) {
        let s = FinSet::canonical(s);
        let u = Universe::with_budget(
            Universe::default_small().objects().to_vec(),
            Budget::default().with_max_size(1 << 12),
        );
        // composing two lenses with 2-element sources tensors their
        // residuals, so the grade universe must carry that product
        let two = FinSet::canonical(2);
        let grades = u.extended([product(&two, &two).object]);
        let cst = writer_symmetry_costrength(&s, &u, &grades).unwrap();
        let st = canonical_strength(&FunctorExpr::writer(s.clone()), &u, &grades).unwrap();
        (cst, st, u)
    }

    #[test]
    fn identity_transformer_leaves_optics_alone() {
        let u = tiny_universe(&[0, 1, 2, 3]);
        let cst = crate::costrength::identity_costrength(cartesian(), &u, &u).unwrap();
        let st = canonical_strength(&FunctorExpr::Id, &u, &u).unwrap();
        let o = sample_lens(&[1, 0], &[0, 1, 1, 0]);
        let t = transform_optic(&cst, &st, &o).unwrap();
        assert_eq!(t.fwd, o.fwd);
        assert_eq!(t.bwd, o.bwd);
        assert!(nf_equivalent(&t, &o).unwrap());
    }

    #[test]
    fn writer_transformer_is_functorial() {
        let (cst, st, u) = writer_pair(2);
        let pairs = vec![
            (
                sample_lens(&[1, 0], &[0, 1, 1, 0]),
                sample_lens(&[0, 1], &[1, 1, 0, 1]),
            ),
            (
                sample_lens(&[1, 1], &[0, 0, 1, 0]),
                sample_lens(&[0, 0], &[0, 1, 0, 1]),
            ),
        ];
        let r = transformer_functoriality_report(&cst, &st, &pairs, &u).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.counts["identity-optics"] >= 4);
        assert!(r.counts["composites"] == 2);
        assert!(r.counts["slide-variants"] > 0);
    }

    #[test]
    fn corrupted_strength_breaks_functoriality() {
        let (cst, mut st, u) = writer_pair(2);
        // damage one entry of the strength component at (M=2, X=2)
        let comp = &mut st.components_mut()[10];
        let dom = comp.dom().clone();
        let cod = comp.cod().clone();
        let mut table = comp.table().to_vec();
        table[0] = (table[0] + 1) % cod.size();
        *comp = FinFun::new(dom, cod, table).unwrap();
        let pairs = vec![(
            sample_lens(&[1, 0], &[0, 1, 1, 0]),
            sample_lens(&[0, 1], &[1, 1, 0, 1]),
        )];
        let r = transformer_functoriality_report(&cst, &st, &pairs, &u).unwrap();
        assert!(!r.is_pass(), "a broken strength must not look functorial");
    }

    #[test]
    fn maybe_needs_its_copointed_envelope_to_transform() {
        let u = tiny_universe(&[0, 1, 2, 3]);
        // Maybe alone admits no lawful cartesian costrength; any candidate
        // table fails the law check and is rejected
        let grades = tiny_universe(&[1, 2]);
        let maybe = FunctorExpr::maybe();
        let candidate = Costrength::from_fn(
            maybe.clone(),
            cartesian(),
            u.clone(),
            grades.clone(),
            |m, x| {
                let dom = maybe.apply_obj(&product(m, x).object, CAP)?;
                let cod = product(m, &maybe.apply_obj(x, CAP)?).object;
                Ok(FinFun::from_fn(dom, cod, |_| 0))
            },
        )
        .unwrap();
        let st = canonical_strength(&maybe, &u, &grades).unwrap();
        let o = sample_lens(&[1, 0], &[0, 1, 1, 0]);
        match transform_optic(&candidate, &st, &o) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected a law-check rejection, got {other:?}"),
        }

        // the cofree copointed envelope id x Maybe does carry a costrength
        let (envelope, copoint) = cofree_copointed(&maybe, &u).unwrap();
        let cst = psi(&copoint, &u, &u).unwrap();
        let g_st = canonical_strength(&maybe, &u, &u).unwrap();
        let t = transform_optic(&cst, &g_st, &o).unwrap();
        assert_eq!(
            t.boundary.outer_in,
            envelope.apply_obj(&o.boundary.outer_in, CAP).unwrap()
        );
        assert_eq!(
            t.boundary.outer_out,
            FunctorExpr::maybe()
                .apply_obj(&o.boundary.outer_out, CAP)
                .unwrap()
        );
        assert!(lens_nf(&t).is_ok());
    }
}
