//! Natural transformations between syntactic functors, restricted to a
//! finite universe of objects.
//!
//! A [`NatFamily`] stores one component per universe object. Checking
//! naturality quantifies over every function between universe objects,
//! except that hom-sets larger than the budget are skipped and recorded in
//! the report. Enumeration refuses to skip: a hom-set over budget is an
//! error there, because the returned list claims to be complete.

use crate::csp::FamilySearch;
use crate::error::{Error, Result};
use crate::finset::{all_functions, compose, FinFun, FinSet};
use crate::functor::FunctorExpr;
use crate::report::{counterexample, LawReport};
use crate::universe::Universe;

#[derive(Debug, Clone)]
pub struct NatFamily {
    pub source: FunctorExpr,
    pub target: FunctorExpr,
    pub universe: Universe,
    pub components: Vec<FinFun>,
}

impl NatFamily {
    pub fn new(
        source: FunctorExpr,
        target: FunctorExpr,
        universe: Universe,
        components: Vec<FinFun>,
    ) -> Result<Self> {
        let cap = universe.budget().max_size;
        if components.len() != universe.len() {
            return Err(Error::BadLength {
                expected: universe.len(),
                found: components.len(),
            });
        }
        for (x, comp) in universe.objects().iter().zip(&components) {
            let sx = source.apply_obj(x, cap)?;
            let tx = target.apply_obj(x, cap)?;
            if comp.dom() != &sx || comp.cod() != &tx {
                return Err(Error::mismatch(
                    format!("component at {x}"),
                    format!("{sx} -> {tx}"),
                    format!("{} -> {}", comp.dom(), comp.cod()),
                ));
            }
        }
        Ok(NatFamily {
            source,
            target,
            universe,
            components,
        })
    }

    pub fn component(&self, object_index: usize) -> &FinFun {
        &self.components[object_index]
    }

    /// Looks up the component at a specific object.
    pub fn component_at(&self, x: &FinSet) -> Result<&FinFun> {
        Ok(self.component(self.universe.require(x)?))
    }

    /// The same family re-tabulated over a universe whose objects all occur
    /// in the current one.
    pub fn restricted(&self, universe: &Universe) -> Result<NatFamily> {
        let components = universe
            .objects()
            .iter()
            .map(|x| Ok(self.component(self.universe.require(x)?).clone()))
            .collect::<Result<Vec<_>>>()?;
        NatFamily::new(
            self.source.clone(),
            self.target.clone(),
            universe.clone(),
            components,
        )
    }

    /// Checks every naturality square with both feet in the universe.
    pub fn check_natural(&self) -> Result<LawReport> {
        let mut report = LawReport::new("naturality");
        let cap = self.universe.budget().max_size;
        for (i, x) in self.universe.objects().iter().enumerate() {
            for (j, y) in self.universe.objects().iter().enumerate() {
                if !self.universe.budget().hom_within(x, y) {
                    report.skip(format!("hom({x}, {y}) exceeds the arrow budget"));
                    continue;
                }
                for f in all_functions(x, y) {
                    let sf = self.source.apply_mor(&f, cap)?;
                    let tf = self.target.apply_mor(&f, cap)?;
                    let lhs = compose(&tf, &self.components[i])?;
                    let rhs = compose(&self.components[j], &sf)?;
                    report.tick();
                    if lhs != rhs {
                        report.fail(counterexample(
                            "naturality",
                            &[
                                ("X", x.to_string()),
                                ("Y", y.to_string()),
                                ("f", f.to_string()),
                            ],
                            format!("target(f) . component != component . source(f): {lhs} vs {rhs}"),
                        ));
                        return Ok(report);
                    }
                }
            }
        }
        report.seal();
        Ok(report)
    }
}

/// Enumerates every natural transformation `source => target` over the
/// universe, in a canonical order.
pub fn enumerate_nat(
    source: &FunctorExpr,
    target: &FunctorExpr,
    universe: &Universe,
) -> Result<Vec<NatFamily>> {
    let cap = universe.budget().max_size;
    let mut search = FamilySearch::new();
    for x in universe.objects() {
        let sx = source.apply_obj(x, cap)?;
        let tx = target.apply_obj(x, cap)?;
        search.add_block(sx, tx);
    }
    for (i, x) in universe.objects().iter().enumerate() {
        for (j, y) in universe.objects().iter().enumerate() {
            if !universe.budget().hom_within(x, y) {
                return Err(Error::precondition(format!(
                    "enumeration must consider every arrow, but hom({x}, {y}) exceeds the budget"
                )));
            }
            for f in all_functions(x, y) {
                let sf = source.apply_mor(&f, cap)?;
                let tf = target.apply_mor(&f, cap)?;
                search.add_link(i, j, sf, tf)?;
            }
        }
    }
    let solutions = search.solve(universe.budget().max_candidates)?;
    solutions
        .into_iter()
        .map(|components| {
            NatFamily::new(source.clone(), target.clone(), universe.clone(), components)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;
    use crate::report::LawStatus;
    use crate::universe::Budget;

    fn tiny_universe() -> Universe {
        // keep 3 out so brute-force stays around a hundred thousand tuples
        Universe::new(vec![FinSet::empty(), FinSet::unit(), FinSet::canonical(2)])
    }

    /// Brute force: filter all component tuples through check_natural.
    fn brute_nat(source: &FunctorExpr, target: &FunctorExpr, universe: &Universe) -> Vec<Vec<FinFun>> {
        let cap = universe.budget().max_size;
        let per_object: Vec<Vec<FinFun>> = universe
            .objects()
            .iter()
            .map(|x| {
                let sx = source.apply_obj(x, cap).unwrap();
                let tx = target.apply_obj(x, cap).unwrap();
                all_functions(&sx, &tx).collect()
            })
            .collect();
        let mut found = Vec::new();
        let mut idx = vec![0usize; per_object.len()];
        'outer: loop {
            let tuple: Vec<FinFun> = idx
                .iter()
                .zip(&per_object)
                .map(|(&i, fs)| fs[i].clone())
                .collect();
            let fam = NatFamily::new(
                source.clone(),
                target.clone(),
                universe.clone(),
                tuple.clone(),
            )
            .unwrap();
            if fam.check_natural().unwrap().is_pass() {
                found.push(tuple);
            }
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < per_object[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
                if k == 0 {
                    break 'outer;
                }
            }
        }
        found
    }

    #[test]
    fn enumeration_matches_brute_force_for_identity_functor() {
        let u = tiny_universe();
        let id = FunctorExpr::Id;
        let fast: Vec<_> = enumerate_nat(&id, &id, &u)
            .unwrap()
            .into_iter()
            .map(|f| f.components)
            .collect();
        let slow = brute_nat(&id, &id, &u);
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 1, "only the identity is natural in the identity functor");
    }

    #[test]
    fn enumeration_matches_brute_force_for_maybe() {
        let u = tiny_universe();
        let m = FunctorExpr::maybe();
        let fast: Vec<_> = enumerate_nat(&m, &m, &u)
            .unwrap()
            .into_iter()
            .map(|f| f.components)
            .collect();
        let slow = brute_nat(&m, &m, &u);
        assert_eq!(fast, slow);
        // the identity and the constant-nothing collapse
        assert_eq!(fast.len(), 2);
    }

    #[test]
    fn enumeration_matches_brute_force_across_functors() {
        let u = tiny_universe();
        let w = FunctorExpr::writer(FinSet::canonical(2));
        let id = FunctorExpr::Id;
        let fast: Vec<_> = enumerate_nat(&w, &id, &u)
            .unwrap()
            .into_iter()
            .map(|f| f.components)
            .collect();
        let slow = brute_nat(&w, &id, &u);
        assert_eq!(fast, slow);
        // 2 x X -> X naturally: only the projection... and nothing else can
        // depend on the 2-part, so exactly one
        assert_eq!(fast.len(), 1);
    }

    #[test]
    fn every_enumerated_family_is_natural_and_distinct() {
        let u = tiny_universe();
        let m = FunctorExpr::maybe();
        let r = FunctorExpr::reader(FinSet::canonical(2));
        let families = enumerate_nat(&m, &r, &u).unwrap();
        for fam in &families {
            assert!(fam.check_natural().unwrap().is_pass());
        }
        for (a, b) in families.iter().zip(families.iter().skip(1)) {
            assert_ne!(a.components, b.components);
        }
    }

    #[test]
    fn hom_budget_skips_in_checking_but_errors_in_enumeration() {
        let big = Universe::with_budget(
            vec![FinSet::canonical(2), FinSet::canonical(3)],
            Budget::default().with_max_hom(3),
        );
        let id = FunctorExpr::Id;
        let fam = NatFamily::new(
            id.clone(),
            id.clone(),
            big.clone(),
            big.objects().iter().map(crate::finset::identity).collect(),
        )
        .unwrap();
        let report = fam.check_natural().unwrap();
        assert_eq!(report.status, LawStatus::Skipped);
        assert!(!report.skipped.is_empty());
        assert!(enumerate_nat(&id, &id, &big).is_err());
    }
}
