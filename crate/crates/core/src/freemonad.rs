//! Depth-truncated free monads: term levels `T_0(X) = X`,
//! `T_d(X) = X + F(T_{d-1}(X))`, grafting as substitution, and the
//! costrength that threads a grade through a whole term by structural
//! recursion on depth.
//!
//! The untruncated free monad is a colimit; at desk scale its checkable
//! shadow is the tower of finite levels together with compatibility of
//! everything along the level embeddings. Labels are arranged so that a
//! lower level is literally a subset of the next one: leaves keep their
//! base label at every depth and an operation layer shows up as an `Op `
//! prefix. Grafts that would land beyond the built depth are errors;
//! [`free_monad_law_report`] lists them as skips instead of checking them.

use crate::costrength::Costrength;
use crate::error::{Error, Result};
use crate::finset::{all_functions, compose, hom_size, identity, product, product_map, FinFun, FinSet};
use crate::functor::FunctorExpr;
use crate::report::{eq_or, LawReport};
use crate::universe::{Budget, Universe};

/// How a term label at some level splits: a leaf carries an index into
/// the base set, an operation an index into `F` applied to the level
/// below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermView {
    Var(usize),
    Op(usize),
}

/// The finite levels `T_0 .. T_depth` over one base set.
#[derive(Debug, Clone)]
pub struct FreeMonad {
    pub functor: FunctorExpr,
    pub base: FinSet,
    pub depth: usize,
    levels: Vec<FinSet>,
}

impl FreeMonad {
    pub fn new(functor: FunctorExpr, base: FinSet, depth: usize, cap: usize) -> Result<Self> {
        // leaves are tagged at every level so that an operation over a
        // term-valued base can never collide with a term of the base
        let var_labels: Vec<String> = base.labels().iter().map(|x| format!("Var {x}")).collect();
        let mut levels = vec![FinSet::new(var_labels.clone())?];
        for d in 1..=depth {
            let image = functor.apply_obj(&levels[d - 1], cap)?;
            let total = base.size() + image.size();
            if total > cap {
                return Err(Error::precondition(format!(
                    "term level {d} needs {total} labels, over the cap of {cap}"
                )));
            }
            let mut labels = var_labels.clone();
            labels.extend(image.labels().iter().map(|w| format!("Op {w}")));
            levels.push(FinSet::new(labels)?);
        }
        Ok(FreeMonad {
            functor,
            base,
            depth,
            levels,
        })
    }

    pub fn level(&self, d: usize) -> &FinSet {
        &self.levels[d]
    }

    pub fn view(&self, i: usize) -> TermView {
        if i < self.base.size() {
            TermView::Var(i)
        } else {
            TermView::Op(i - self.base.size())
        }
    }

    /// The unit `x -> Var(x)` into the chosen level.
    pub fn unit(&self, d: usize) -> FinFun {
        FinFun::from_fn(self.base.clone(), self.level(d).clone(), |i| i)
    }

    /// The level embedding; levels are nested by label, so this is an
    /// index lookup.
    pub fn embed(&self, from: usize, to: usize) -> FinFun {
        let target = self.level(to).clone();
        FinFun::from_fn(self.level(from).clone(), target.clone(), |i| {
            target
                .index_of(self.level(from).label(i))
                .expect("term levels are nested by label")
        })
    }

    /// The functorial action on terms: relabel every leaf along `g`.
    pub fn map(&self, g: &FinFun, target: &FreeMonad, d: usize) -> Result<FinFun> {
        if self.functor != target.functor {
            return Err(Error::mismatch(
                "term map functors",
                format!("{}", self.functor),
                format!("{}", target.functor),
            ));
        }
        if g.dom() != &self.base || g.cod() != &target.base {
            return Err(Error::mismatch(
                "term map leaf function",
                format!("{} -> {}", self.base, target.base),
                format!("{} -> {}", g.dom(), g.cod()),
            ));
        }
        self.fold(g.clone(), target, d, 0)
    }

    /// Substitution: replace every leaf by its image term under `sigma`,
    /// which sends the base into `target`'s level `e`. A depth-`d` term
    /// lands at level `e + d`.
    pub fn graft(&self, d: usize, sigma: &FinFun, target: &FreeMonad, e: usize) -> Result<FinFun> {
        if sigma.dom() != &self.base || sigma.cod() != target.level(e) {
            return Err(Error::mismatch(
                "graft substitution",
                format!("{} -> {}", self.base, target.level(e)),
                format!("{} -> {}", sigma.dom(), sigma.cod()),
            ));
        }
        if e + d > target.depth {
            return Err(Error::precondition(format!(
                "grafting depth-{d} terms over level-{e} images lands at depth {}, \
                 beyond the built depth {}",
                e + d,
                target.depth
            )));
        }
        self.fold(sigma.clone(), target, d, e)
    }

    /// Shared recursion for map and graft: level `k` sends a leaf through
    /// the leaf function (embedded up to the right level) and an
    /// operation through `F` applied to level `k - 1`.
    fn fold(&self, leaf: FinFun, target: &FreeMonad, d: usize, e: usize) -> Result<FinFun> {
        let cap = usize::MAX;
        // leaf indices agree between the base and every level's Var block
        let mut current = FinFun::from_fn(
            self.level(0).clone(),
            target.level(e).clone(),
            |i| leaf.apply(i),
        );
        for k in 1..=d {
            let f_prev = self.functor.apply_mor(&current, cap)?;
            let emb = target.embed(e + k - 1, e + k);
            let lifted = compose(&emb, &current)?;
            let to = target.level(e + k).clone();
            let var_block = target.base.size();
            current = FinFun::from_fn(self.level(k).clone(), to, |i| match self.view(i) {
                TermView::Var(ix) => lifted.apply(ix),
                TermView::Op(iw) => var_block + f_prev.apply(iw),
            });
        }
        Ok(current)
    }
}

/// The term level `T_d(X)` on its own.
pub fn build_terms(functor: &FunctorExpr, base: &FinSet, d: usize, cap: usize) -> Result<FinSet> {
    Ok(FreeMonad::new(functor.clone(), base.clone(), d, cap)?
        .level(d)
        .clone())
}

/// All levels of the term costrength `T_k(M x X) -> M x T_k(X)`: a leaf
/// splits off its grade directly, an operation pushes the grade through
/// `F` one layer at a time using `c`'s component at the level below.
pub fn free_costrength_levels(
    mx: &FreeMonad,
    xt: &FreeMonad,
    c: &Costrength,
    m: &FinSet,
    d: usize,
) -> Result<Vec<FinFun>> {
    if mx.functor != xt.functor || mx.functor != c.functor {
        return Err(Error::mismatch(
            "term costrength functors",
            format!("{}", c.functor),
            format!("{} over {}", mx.functor, xt.functor),
        ));
    }
    let p_base = product(m, &xt.base);
    if mx.base != p_base.object {
        return Err(Error::mismatch(
            "term costrength base",
            format!("{}", p_base.object),
            format!("{}", mx.base),
        ));
    }
    if d > mx.depth || d > xt.depth {
        return Err(Error::precondition(format!(
            "term costrength needs levels up to {d}, built only to {} and {}",
            mx.depth, xt.depth
        )));
    }
    let cap = usize::MAX;
    let mut out = Vec::with_capacity(d + 1);
    out.push(FinFun::from_fn(
        mx.level(0).clone(),
        product(m, xt.level(0)).object,
        |i| i,
    ));
    for k in 1..=d {
        let f_prev = mx.functor.apply_mor(&out[k - 1], cap)?;
        let split = c.component_at(m, xt.level(k - 1))?.clone();
        let f_level = mx.functor.apply_obj(xt.level(k - 1), cap)?;
        let p_mid = product(m, &f_level);
        let p_out = product(m, xt.level(k));
        let var_block = xt.base.size();
        out.push(FinFun::from_fn(
            mx.level(k).clone(),
            p_out.object.clone(),
            |i| match mx.view(i) {
                TermView::Var(imx) => {
                    let (im, ix) = p_base.decode(imx);
                    p_out.encode(im, ix)
                }
                TermView::Op(iw) => {
                    let (im, iu) = p_mid.decode(split.apply(f_prev.apply(iw)));
                    p_out.encode(im, var_block + iu)
                }
            },
        ));
    }
    Ok(out)
}

/// The term costrength at one depth. The caller is responsible for `c`
/// being lawful; see [`free_monad_law_report`] for what an unlawful `c`
/// breaks.
pub fn free_costrength(
    mx: &FreeMonad,
    xt: &FreeMonad,
    c: &Costrength,
    m: &FinSet,
    d: usize,
) -> Result<FinFun> {
    Ok(free_costrength_levels(mx, xt, c, m, d)?.pop().unwrap())
}

/// The object and grade universes [`free_monad_law_report`] draws its
/// costrength components from: every term level the recursion touches,
/// and the grades `1`, `M`, `M x M`.
pub fn free_law_universes(
    functor: &FunctorExpr,
    m: &FinSet,
    x: &FinSet,
    depth: usize,
    budget: Budget,
) -> Result<(Universe, Universe)> {
    let cap = budget.max_size;
    let xt = FreeMonad::new(functor.clone(), x.clone(), depth, cap)?;
    let mxt = FreeMonad::new(functor.clone(), product(m, x).object, depth, cap)?;
    let mut objects: Vec<FinSet> = vec![x.clone()];
    for k in 0..depth {
        for level in [xt.level(k), mxt.level(k)] {
            if !objects.contains(level) {
                objects.push(level.clone());
            }
        }
    }
    if depth >= 1 {
        // the multiplication square regrades terms whose leaves are
        // themselves terms of the level below the top
        let nested = FreeMonad::new(functor.clone(), xt.level(depth - 1).clone(), 0, cap)?;
        if !objects.contains(nested.level(0)) {
            objects.push(nested.level(0).clone());
        }
    }
    let one = FinSet::unit();
    let mut grades = vec![one.clone()];
    for g in [m.clone(), product(m, m).object] {
        if !grades.contains(&g) {
            grades.push(g);
        }
    }
    Ok((
        Universe::with_budget(objects, budget.clone()),
        Universe::with_budget(grades, budget),
    ))
}

/// Law suite for the truncated free monad built from `c`: grafting is a
/// lawful substitution where depth permits (out-of-depth instances are
/// listed as skips), the term costrength is natural in both arguments,
/// satisfies the structure laws, commutes with the unit and the
/// multiplication, projects correctly, and restricts coherently along
/// level embeddings. `c` is used as given, so a corrupted table surfaces
/// as a failed diagram with the offending term in the counterexample.
pub fn free_monad_law_report(
    c: &Costrength,
    m: &FinSet,
    x: &FinSet,
    depth: usize,
) -> Result<LawReport> {
    if c.action.name() != "cart" {
        return Err(Error::precondition(
            "the term costrength recursion is exercised over the cartesian action",
        ));
    }
    let cap = c.objects.budget().max_size;
    let max_hom = c.objects.budget().max_hom as u128;
    let f = c.functor.clone();
    let mut report = LawReport::new("free-monad");

    let xt = FreeMonad::new(f.clone(), x.clone(), depth, cap)?;
    let p_mx = product(m, x);
    let mxt = FreeMonad::new(f.clone(), p_mx.object.clone(), depth, cap)?;
    let cst = free_costrength_levels(&mxt, &xt, c, m, depth)?;

    // graft unit laws, with every substitution into level 1 where that
    // stays within depth
    if depth >= 1 {
        let sigma_count = hom_size(x, xt.level(1)).unwrap_or(u128::MAX);
        if sigma_count > max_hom {
            report.skip(format!(
                "graft laws: {sigma_count} substitutions exceed the arrow budget"
            ));
        } else {
            let sigmas: Vec<FinFun> = all_functions(x, xt.level(1)).collect();
            for d0 in 0..=depth {
                if d0 + 1 > depth {
                    report.skip(format!(
                        "graft left unit on depth-{d0} terms: lands at depth {}, out of depth",
                        d0 + 1
                    ));
                    continue;
                }
                let emb = xt.embed(1, 1 + d0);
                for sigma in &sigmas {
                    let grafted = xt.graft(d0, sigma, &xt, 1)?;
                    report.tick();
                    report.bump("graft-unit");
                    if let Some(cx) = eq_or(
                        "graft-left-unit",
                        &[("depth", d0.to_string()), ("sigma", sigma.to_string())],
                        &compose(&grafted, &xt.unit(d0))?,
                        &compose(&emb, sigma)?,
                    ) {
                        report.fail(cx);
                        return Ok(report);
                    }
                }
            }
            // associativity where both grafts fit
            for d0 in 0..=depth {
                if d0 + 2 > depth {
                    report.skip(format!(
                        "graft associativity on depth-{d0} terms: lands at depth {}, out of depth",
                        d0 + 2
                    ));
                    continue;
                }
                for sigma in &sigmas {
                    for tau in &sigmas {
                        let tau_graft = xt.graft(1, tau, &xt, 1)?;
                        let two_step =
                            compose(&xt.graft(d0 + 1, tau, &xt, 1)?, &xt.graft(d0, sigma, &xt, 1)?)?;
                        let rho = compose(&tau_graft, sigma)?;
                        let one_step = xt.graft(d0, &rho, &xt, 2)?;
                        report.tick();
                        report.bump("graft-assoc");
                        if let Some(cx) = eq_or(
                            "graft-assoc",
                            &[
                                ("depth", d0.to_string()),
                                ("sigma", sigma.to_string()),
                                ("tau", tau.to_string()),
                            ],
                            &two_step,
                            &one_step,
                        ) {
                            report.fail(cx);
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    // grafting the unit is the identity at every depth
    for d0 in 0..=depth {
        let back = xt.graft(d0, &xt.unit(0), &xt, 0)?;
        report.tick();
        report.bump("graft-right-unit");
        if let Some(cx) = eq_or(
            "graft-right-unit",
            &[("depth", d0.to_string())],
            &back,
            &identity(xt.level(d0)),
        ) {
            report.fail(cx);
            return Ok(report);
        }
    }

    // naturality in the object argument, over endofunctions of the base
    let endo_count = hom_size(x, x).unwrap_or(u128::MAX);
    if endo_count > max_hom {
        report.skip(format!(
            "naturality in the object: {endo_count} endofunctions exceed the arrow budget"
        ));
    } else {
        let id_m = identity(m);
        for g in all_functions(x, x) {
            let t_g = xt.map(&g, &xt, depth)?;
            let t_mg = mxt.map(&product_map(&id_m, &g), &mxt, depth)?;
            report.tick();
            report.bump("nat-object");
            if let Some(cx) = eq_or(
                "nat-object",
                &[("g", g.to_string())],
                &compose(&product_map(&id_m, &t_g), &cst[depth])?,
                &compose(&cst[depth], &t_mg)?,
            ) {
                report.fail(cx);
                return Ok(report);
            }
        }
    }

    // naturality in the grade, against the unit grade and endomorphisms
    let one = FinSet::unit();
    let id_x = identity(x);
    for n in [&one, m] {
        let arrows = hom_size(m, n).unwrap_or(u128::MAX);
        if arrows > max_hom {
            report.skip(format!(
                "naturality in the grade towards {n}: {arrows} arrows exceed the budget"
            ));
            continue;
        }
        let nxt = FreeMonad::new(f.clone(), product(n, x).object, depth, cap)?;
        let cst_n = free_costrength_levels(&nxt, &xt, c, n, depth)?;
        for u in all_functions(m, n) {
            let base_map = product_map(&u, &id_x);
            let t_u = mxt.map(&base_map, &nxt, depth)?;
            report.tick();
            report.bump("nat-grade");
            if let Some(cx) = eq_or(
                "nat-grade",
                &[("u", u.to_string())],
                &compose(&product_map(&u, &identity(xt.level(depth))), &cst[depth])?,
                &compose(&cst_n[depth], &t_u)?,
            ) {
                report.fail(cx);
                return Ok(report);
            }
        }
    }

    // structure law at the unit grade: stripping the trivial grade is the
    // same as relabelling leaves along the unitor
    {
        let oxt = FreeMonad::new(f.clone(), product(&one, x).object, depth, cap)?;
        let cst_one = free_costrength_levels(&oxt, &xt, c, &one, depth)?;
        let lam = product(&one, x).proj2();
        let t_lam = oxt.map(&lam, &xt, depth)?;
        report.tick();
        report.bump("unit-law");
        if let Some(cx) = eq_or(
            "unit-law",
            &[("depth", depth.to_string())],
            &compose(&product(&one, xt.level(depth)).proj2(), &cst_one[depth])?,
            &t_lam,
        ) {
            report.fail(cx);
            return Ok(report);
        }
    }

    // structure law for a tensor grade: splitting off M x M at once
    // agrees with splitting twice
    {
        let mm = product(m, m).object;
        let mmx = FreeMonad::new(f.clone(), product(&mm, x).object, depth, cap)?;
        let cst_mm = free_costrength_levels(&mmx, &xt, c, &mm, depth)?;
        let act = crate::actions::cartesian();
        let assoc_terms = act.associator(m, m, xt.level(depth), cap)?;
        let lhs = compose(&assoc_terms, &cst_mm[depth])?;
        let m_nx = FreeMonad::new(f.clone(), product(m, &p_mx.object).object, depth, cap)?;
        let cst_outer = free_costrength_levels(&m_nx, &mxt, c, m, depth)?;
        let assoc_base = act.associator(m, m, x, cap)?;
        let t_assoc = mmx.map(&assoc_base, &m_nx, depth)?;
        let rhs = compose(
            &product_map(&identity(m), &cst[depth]),
            &compose(&cst_outer[depth], &t_assoc)?,
        )?;
        report.tick();
        report.bump("tensor-law");
        if let Some(cx) = eq_or("tensor-law", &[("depth", depth.to_string())], &lhs, &rhs) {
            report.fail(cx);
            return Ok(report);
        }
    }

    // the unit of the monad is a costrong transformation
    {
        let lhs = compose(&cst[depth], &mxt.unit(depth))?;
        let rhs = product_map(&identity(m), &xt.unit(depth));
        report.tick();
        report.bump("unit-square");
        if let Some(cx) = eq_or("unit-square", &[], &lhs, &rhs) {
            report.fail(cx);
            return Ok(report);
        }
    }

    // so is the multiplication, checked as one level of grafting over
    // terms of the deepest inner level that still fits
    if depth >= 1 {
        let inner = depth - 1;
        let outer_mx = FreeMonad::new(f.clone(), mxt.level(inner).clone(), 1, cap)?;
        let sigma_mx = FinFun::from_fn(mxt.level(inner).clone(), mxt.level(inner).clone(), |i| i);
        let mu_mx = outer_mx.graft(1, &sigma_mx, &mxt, inner)?;
        let lhs = compose(&cst[depth], &mu_mx)?;

        let mid = FreeMonad::new(f.clone(), product(m, xt.level(inner)).object, 1, cap)?;
        let t_split = outer_mx.map(&cst[inner], &mid, 1)?;
        let inner_tower = FreeMonad::new(f.clone(), xt.level(inner).clone(), 1, cap)?;
        let cst_top = free_costrength_levels(&mid, &inner_tower, c, m, 1)?;
        let sigma_x = FinFun::from_fn(xt.level(inner).clone(), xt.level(inner).clone(), |i| i);
        let mu_x = inner_tower.graft(1, &sigma_x, &xt, inner)?;
        let rhs = compose(
            &product_map(&identity(m), &mu_x),
            &compose(&cst_top[1], &t_split)?,
        )?;
        report.tick();
        report.bump("mult-square");
        if let Some(cx) = eq_or("mult-square", &[("inner depth", inner.to_string())], &lhs, &rhs) {
            report.fail(cx);
            return Ok(report);
        }
    } else {
        report.skip("multiplication square: needs at least depth 1".to_string());
    }

    // discarding the grade recovers the plain term relabelling, level by
    // level
    for k in 0..=depth {
        let t_proj = mxt.map(&p_mx.proj2(), &xt, k)?;
        report.tick();
        report.bump("grade-projection");
        if let Some(cx) = eq_or(
            "grade-projection",
            &[("level", k.to_string())],
            &compose(&product(m, xt.level(k)).proj2(), &cst[k])?,
            &t_proj,
        ) {
            report.fail(cx);
            return Ok(report);
        }
    }

    // the costrength computed at level k restricts to the one at k - 1
    for k in 1..=depth {
        report.tick();
        report.bump("level-compatibility");
        if let Some(cx) = eq_or(
            "level-compatibility",
            &[("level", k.to_string())],
            &compose(&cst[k], &mxt.embed(k - 1, k))?,
            &compose(&product_map(&identity(m), &xt.embed(k - 1, k)), &cst[k - 1])?,
        ) {
            report.fail(cx);
            return Ok(report);
        }
    }

    report.seal();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::cartesian;
    use crate::catalogue::writer_symmetry_costrength;
    use crate::costrength::{enumerate_costrengths, identity_costrength, Costrength};
    use crate::universe::Budget;

    const CAP: usize = 1 << 16;

    #[test]
    fn term_levels_follow_the_size_recursion() {
        let x = FinSet::new(vec!["x".into()]).unwrap();
        let s = FinSet::new(vec!["s".into()]).unwrap();
        let writer = FreeMonad::new(FunctorExpr::writer(s), x.clone(), 1, CAP).unwrap();
        assert_eq!(writer.level(0).labels(), &["Var x"]);
        assert_eq!(writer.level(1).labels(), &["Var x", "Op (s,Var x)"]);

        let maybe = FreeMonad::new(FunctorExpr::maybe(), x, 2, CAP).unwrap();
        let sizes: Vec<usize> = (0..=2).map(|d| maybe.level(d).size()).collect();
        assert_eq!(sizes, vec![1, 3, 5]);
    }

    #[test]
    fn level_caps_are_enforced_with_an_estimate() {
        let x = FinSet::canonical(2);
        let err = FreeMonad::new(FunctorExpr::writer(FinSet::canonical(3)), x, 4, 50).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("over the cap")),
            Error::SizeCap { .. } => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn grafting_substitutes_at_the_leaves() {
        let x = FinSet::new(vec!["x".into()]).unwrap();
        let y = FinSet::new(vec!["y".into()]).unwrap();
        let s = FinSet::new(vec!["s".into()]).unwrap();
        let f = FunctorExpr::writer(s);
        let over_x = FreeMonad::new(f.clone(), x, 1, CAP).unwrap();
        let over_y = FreeMonad::new(f, y, 2, CAP).unwrap();
        // send the single leaf to the depth-1 term Op (s, y)
        let sigma = FinFun::from_fn(over_x.base.clone(), over_y.level(1).clone(), |_| 1);
        let g = over_x.graft(1, &sigma, &over_y, 1).unwrap();
        let term = over_x.level(1).index_of("Op (s,Var x)").unwrap();
        assert_eq!(
            over_y.level(2).label(g.apply(term)),
            "Op (s,Op (s,Var y))",
            "an operation layer survives and the leaf is replaced"
        );
    }

    fn writer_setup(
        s: usize,
        m: usize,
        x: usize,
        depth: usize,
    ) -> (Costrength, FinSet, FinSet) {
        let s = FinSet::canonical(s);
        let m = FinSet::canonical(m);
        let x = FinSet::canonical(x);
        let f = FunctorExpr::writer(s.clone());
        let budget = Budget::default().with_max_size(CAP).with_max_hom(4096);
        let (objects, grades) = free_law_universes(&f, &m, &x, depth, budget).unwrap();
        let c = writer_symmetry_costrength(&s, &objects, &grades).unwrap();
        (c, m, x)
    }

    #[test]
    fn annotations_ride_along_the_writer_costrength() {
        let mv = FinSet::new(vec!["m0".into(), "m1".into()]).unwrap();
        let x = FinSet::new(vec!["x".into()]).unwrap();
        let s = FinSet::new(vec!["s".into()]).unwrap();
        let f = FunctorExpr::writer(s.clone());
        let budget = Budget::default().with_max_size(CAP);
        let (objects, grades) = free_law_universes(&f, &mv, &x, 1, budget).unwrap();
        let c = writer_symmetry_costrength(&s, &objects, &grades).unwrap();
        let xt = FreeMonad::new(f.clone(), x.clone(), 1, CAP).unwrap();
        let mxt = FreeMonad::new(f, product(&mv, &x).object, 1, CAP).unwrap();
        let cst = free_costrength(&mxt, &xt, &c, &mv, 1).unwrap();
        let term = mxt.level(1).index_of("Op (s,Var (m1,x))").unwrap();
        let out = product(&mv, xt.level(1));
        let (im, it) = out.decode(cst.apply(term));
        assert_eq!(mv.label(im), "m1");
        assert_eq!(xt.level(1).label(it), "Op (s,Var x)");
    }

    #[test]
    fn writer_terms_satisfy_the_law_suite() {
        let (c, m, x) = writer_setup(2, 2, 2, 2);
        let report = free_monad_law_report(&c, &m, &x, 2).unwrap();
        assert!(report.is_pass(), "{:?}", report.counterexample);
        for key in [
            "graft-unit",
            "graft-assoc",
            "graft-right-unit",
            "nat-object",
            "nat-grade",
            "unit-law",
            "tensor-law",
            "unit-square",
            "mult-square",
            "grade-projection",
            "level-compatibility",
        ] {
            assert!(report.counts[key] > 0, "missing checks under {key}");
        }
        // at depth 2, grafting depth-1 terms twice overruns the tower and
        // is listed, not silently dropped
        assert!(report
            .skipped
            .iter()
            .any(|s| s.contains("out of depth")));
    }

    #[test]
    fn identity_terms_are_delays_and_pass_trivially() {
        let m = FinSet::canonical(2);
        let x = FinSet::canonical(2);
        let f = FunctorExpr::Id;
        let budget = Budget::default().with_max_size(CAP).with_max_hom(4096);
        let (objects, grades) = free_law_universes(&f, &m, &x, 2, budget).unwrap();
        let c = identity_costrength(cartesian(), &objects, &grades).unwrap();
        let xt = FreeMonad::new(f, x.clone(), 2, CAP).unwrap();
        assert_eq!(
            xt.level(2).labels()[2..],
            ["Op Var e0", "Op Var e1", "Op Op Var e0", "Op Op Var e1"]
        );
        let report = free_monad_law_report(&c, &m, &x, 2).unwrap();
        assert!(report.is_pass(), "{:?}", report.counterexample);
    }

    #[test]
    fn a_corrupted_component_fails_on_a_deep_term() {
        let (mut c, m, x) = writer_setup(2, 2, 2, 2);
        let xt = FreeMonad::new(c.functor.clone(), x.clone(), 2, CAP).unwrap();
        // damage the component the depth-2 recursion reads
        let ig = c.grades.require(&m).unwrap();
        let ix = c.objects.require(xt.level(1)).unwrap();
        let width = c.objects.len();
        let comp = &mut c.components_mut()[ig * width + ix];
        let dom = comp.dom().clone();
        let cod = comp.cod().clone();
        let mut table = comp.table().to_vec();
        table[0] = (table[0] + 1) % cod.size();
        *comp = FinFun::new(dom, cod, table).unwrap();
        let report = free_monad_law_report(&c, &m, &x, 2).unwrap();
        assert!(!report.is_pass(), "the damaged table must surface");
    }

    #[test]
    fn constant_functors_admit_no_cartesian_costrength() {
        let a = FinSet::new(vec!["a".into()]).unwrap();
        let u = Universe::with_budget(
            vec![FinSet::empty(), FinSet::unit(), FinSet::canonical(2)],
            Budget::default().with_max_size(CAP),
        );
        let found =
            enumerate_costrengths(&FunctorExpr::Const(a), &cartesian(), &u, &u).unwrap();
        assert!(found.is_empty(), "a constant has nowhere to put the grade");
    }

    #[test]
    fn the_writer_copoint_reads_the_unique_leaf() {
        let m = FinSet::canonical(2);
        let one = FinSet::unit();
        let s = FinSet::canonical(2);
        let f = FunctorExpr::writer(s.clone());
        let depth = 2;
        let budget = Budget::default().with_max_size(CAP);
        let (objects, grades) = free_law_universes(&f, &m, &one, depth, budget).unwrap();
        let c = writer_symmetry_costrength(&s, &objects, &grades).unwrap();

        let mt = FreeMonad::new(f.clone(), m.clone(), depth, CAP).unwrap();
        let p = product(&m, &one);
        let m1t = FreeMonad::new(f.clone(), p.object.clone(), depth, CAP).unwrap();
        let onet = FreeMonad::new(f.clone(), one.clone(), depth, CAP).unwrap();
        let intro = FinFun::from_fn(m.clone(), p.object.clone(), |i| p.encode(i, 0));
        let t_intro = mt.map(&intro, &m1t, depth).unwrap();
        let cst = free_costrength(&m1t, &onet, &c, &m, depth).unwrap();
        let eps = compose(
            &product(&m, onet.level(depth)).proj1(),
            &compose(&cst, &t_intro).unwrap(),
        )
        .unwrap();

        // independent recursion: strip writer layers and read the leaf
        let mut direct = identity(&m);
        for k in 1..=depth {
            let prev = direct.clone();
            let inner = product(&s, mt.level(k - 1));
            direct = FinFun::from_fn(mt.level(k).clone(), m.clone(), |i| match mt.view(i) {
                TermView::Var(ix) => ix,
                TermView::Op(iw) => prev.apply(inner.decode(iw).1),
            });
        }
        assert_eq!(eps, direct);
    }
}
