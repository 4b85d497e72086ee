//! Monoidal actions on finite sets, and graded monads over a preordered
//! monoid of grades.
//!
//! An [`Action`] packages a monoidal category of grades together with its
//! action on finite sets: the unit and tensor of grades, the action on
//! objects and on pairs of arrows, and the structural isomorphisms
//! (associator and unitor) with their grade-level counterparts. Three
//! instances are provided:
//!
//! - [`cartesian`]: grades are finite sets under product, acting by `M x X`;
//! - [`cocartesian`]: grades under coproduct with empty unit, acting by `M + X`;
//! - [`op_exponential`]: grades are finite sets *contravariantly* under
//!   product, acting by the function space `[M, X]`.
//!
//! Contravariance is handled by representation: a grade arrow `M => N` of a
//! contravariant action is stored as the underlying function `N -> M`, and
//! every trait method speaks the representation. [`grade_compose`] and
//! [`grade_arrows`] centralize the two readings.
//!
//! [`check_action_coherence`] verifies the action laws over a universe:
//! structural maps are isos, pentagon and triangle commute, everything is
//! natural, and the action is bifunctorial. Instances whose objects exceed
//! the size cap are skipped and listed in the report rather than silently
//! dropped.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::{
    all_functions, assoc_coproduct, assoc_product, compose, coproduct, coproduct_map, copair,
    exponential, hom_size, identity, initial_arrow, product, product_map, FinFun, FinSet,
};
use crate::functor::FunctorExpr;
use crate::nat::NatFamily;
use crate::report::{counterexample, eq_or, instance, LawReport};
use crate::universe::Universe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

pub trait Action {
    fn name(&self) -> &str;

    /// How grade arrows vary. Contravariant actions represent a grade arrow
    /// `M => N` as a [`FinFun`] from `N` to `M`.
    fn variance(&self) -> Variance;

    fn unit(&self) -> FinSet;

    fn tensor(&self, m: &FinSet, n: &FinSet, cap: usize) -> Result<FinSet>;

    fn act_obj(&self, m: &FinSet, x: &FinSet, cap: usize) -> Result<FinSet>;

    /// Functorial action on a grade arrow `u: M => N` (in representation)
    /// and a base arrow `f: X -> Y`, giving `M . X -> N . Y`.
    fn act_mor(&self, u: &FinFun, f: &FinFun, cap: usize) -> Result<FinFun>;

    /// Tensor of grade arrows, in representation.
    fn grade_tensor_mor(&self, u: &FinFun, v: &FinFun, cap: usize) -> Result<FinFun>;

    /// Associator `(M (x) N) . X -> M . (N . X)`, a base-category iso.
    fn associator(&self, m: &FinSet, n: &FinSet, x: &FinSet, cap: usize) -> Result<FinFun>;

    /// Unitor `I . X -> X`, a base-category iso.
    fn unitor(&self, x: &FinSet, cap: usize) -> Result<FinFun>;

    /// Grade associator `(M (x) N) (x) K => M (x) (N (x) K)`, in representation.
    fn grade_assoc(&self, m: &FinSet, n: &FinSet, k: &FinSet, cap: usize) -> Result<FinFun>;

    /// Grade left unitor `I (x) M => M`, in representation.
    fn grade_lunit(&self, m: &FinSet, cap: usize) -> Result<FinFun>;

    /// Grade right unitor `M (x) I => M`, in representation.
    fn grade_runit(&self, m: &FinSet, cap: usize) -> Result<FinFun>;
}

pub type ActionRef = Arc<dyn Action + Send + Sync>;

/// Composite `w . u` of grade arrows `u: M => N`, `w: N => K`, in
/// representation.
pub fn grade_compose(action: &dyn Action, w: &FinFun, u: &FinFun) -> Result<FinFun> {
    match action.variance() {
        Variance::Covariant => compose(w, u),
        Variance::Contravariant => compose(u, w),
    }
}

/// All grade arrows `M => N`, in representation, in canonical order.
pub fn grade_arrows(action: &dyn Action, m: &FinSet, n: &FinSet) -> Vec<FinFun> {
    match action.variance() {
        Variance::Covariant => all_functions(m, n).collect(),
        Variance::Contravariant => all_functions(n, m).collect(),
    }
}

pub fn grade_hom_size(action: &dyn Action, m: &FinSet, n: &FinSet) -> Option<u128> {
    match action.variance() {
        Variance::Covariant => hom_size(m, n),
        Variance::Contravariant => hom_size(n, m),
    }
}

struct Cartesian;

impl Action for Cartesian {
    fn name(&self) -> &str {
        "cart"
    }

    fn variance(&self) -> Variance {
        Variance::Covariant
    }

    fn unit(&self) -> FinSet {
        FinSet::unit()
    }

    fn tensor(&self, m: &FinSet, n: &FinSet, cap: usize) -> Result<FinSet> {
        sized(m.size() as u128 * n.size() as u128, cap)?;
        Ok(product(m, n).object)
    }

    fn act_obj(&self, m: &FinSet, x: &FinSet, cap: usize) -> Result<FinSet> {
        self.tensor(m, x, cap)
    }

    fn act_mor(&self, u: &FinFun, f: &FinFun, cap: usize) -> Result<FinFun> {
        sized(u.dom().size() as u128 * f.dom().size() as u128, cap)?;
        sized(u.cod().size() as u128 * f.cod().size() as u128, cap)?;
        Ok(product_map(u, f))
    }

    fn grade_tensor_mor(&self, u: &FinFun, v: &FinFun, cap: usize) -> Result<FinFun> {
        self.act_mor(u, v, cap)
    }

    fn associator(&self, m: &FinSet, n: &FinSet, x: &FinSet, cap: usize) -> Result<FinFun> {
        sized(m.size() as u128 * n.size() as u128 * x.size() as u128, cap)?;
        Ok(assoc_product(m, n, x))
    }

    fn unitor(&self, x: &FinSet, _cap: usize) -> Result<FinFun> {
        Ok(product(&FinSet::unit(), x).proj2())
    }

    fn grade_assoc(&self, m: &FinSet, n: &FinSet, k: &FinSet, cap: usize) -> Result<FinFun> {
        self.associator(m, n, k, cap)
    }

    fn grade_lunit(&self, m: &FinSet, _cap: usize) -> Result<FinFun> {
        Ok(product(&FinSet::unit(), m).proj2())
    }

    fn grade_runit(&self, m: &FinSet, _cap: usize) -> Result<FinFun> {
        Ok(product(m, &FinSet::unit()).proj1())
    }
}

struct Cocartesian;

impl Action for Cocartesian {
    fn name(&self) -> &str {
        "cocart"
    }

    fn variance(&self) -> Variance {
        Variance::Covariant
    }

    fn unit(&self) -> FinSet {
        FinSet::empty()
    }

    fn tensor(&self, m: &FinSet, n: &FinSet, cap: usize) -> Result<FinSet> {
        sized(m.size() as u128 + n.size() as u128, cap)?;
        Ok(coproduct(m, n).object)
    }

    fn act_obj(&self, m: &FinSet, x: &FinSet, cap: usize) -> Result<FinSet> {
        self.tensor(m, x, cap)
    }

    fn act_mor(&self, u: &FinFun, f: &FinFun, _cap: usize) -> Result<FinFun> {
        Ok(coproduct_map(u, f))
    }

    fn grade_tensor_mor(&self, u: &FinFun, v: &FinFun, cap: usize) -> Result<FinFun> {
        self.act_mor(u, v, cap)
    }

    fn associator(&self, m: &FinSet, n: &FinSet, x: &FinSet, _cap: usize) -> Result<FinFun> {
        Ok(assoc_coproduct(m, n, x))
    }

    fn unitor(&self, x: &FinSet, _cap: usize) -> Result<FinFun> {
        copair(&initial_arrow(x), &identity(x))
    }

    fn grade_assoc(&self, m: &FinSet, n: &FinSet, k: &FinSet, cap: usize) -> Result<FinFun> {
        self.associator(m, n, k, cap)
    }

    fn grade_lunit(&self, m: &FinSet, cap: usize) -> Result<FinFun> {
        self.unitor(m, cap)
    }

    fn grade_runit(&self, m: &FinSet, _cap: usize) -> Result<FinFun> {
        copair(&identity(m), &initial_arrow(m))
    }
}

struct OpExponential;

impl Action for OpExponential {
    fn name(&self) -> &str {
        "op-exp"
    }

    fn variance(&self) -> Variance {
        Variance::Contravariant
    }

    fn unit(&self) -> FinSet {
        FinSet::unit()
    }

    fn tensor(&self, m: &FinSet, n: &FinSet, cap: usize) -> Result<FinSet> {
        sized(m.size() as u128 * n.size() as u128, cap)?;
        Ok(product(m, n).object)
    }

    fn act_obj(&self, m: &FinSet, x: &FinSet, cap: usize) -> Result<FinSet> {
        sized(
            crate::finset::checked_pow(x.size(), m.size()).unwrap_or(u128::MAX),
            cap,
        )?;
        Ok(exponential(m, x).object)
    }

    fn act_mor(&self, u: &FinFun, f: &FinFun, cap: usize) -> Result<FinFun> {
        // u: M => N is represented as a function N -> M
        let m = u.cod();
        let n = u.dom();
        self.act_obj(m, f.dom(), cap)?;
        self.act_obj(n, f.cod(), cap)?;
        let src = exponential(m, f.dom());
        let dst = exponential(n, f.cod());
        Ok(FinFun::from_fn(
            src.object.clone(),
            dst.object.clone(),
            |i| {
                let t = src.decode(i);
                let vals: Vec<usize> = (0..n.size()).map(|j| f.apply(t[u.apply(j)])).collect();
                dst.encode(&vals)
            },
        ))
    }

    fn grade_tensor_mor(&self, u: &FinFun, v: &FinFun, _cap: usize) -> Result<FinFun> {
        // (N1 x N2) -> (M1 x M2) represents M1 x M2 => N1 x N2
        Ok(product_map(u, v))
    }

    fn associator(&self, m: &FinSet, n: &FinSet, x: &FinSet, cap: usize) -> Result<FinFun> {
        // currying: [M x N, X] -> [M, [N, X]]
        let mn = self.tensor(m, n, cap)?;
        self.act_obj(&mn, x, cap)?;
        let inner = self.act_obj(n, x, cap)?;
        self.act_obj(m, &inner, cap)?;
        let src = exponential(&mn, x);
        let mid = exponential(n, x);
        let dst = exponential(m, &mid.object);
        let pr = product(m, n);
        Ok(FinFun::from_fn(
            src.object.clone(),
            dst.object.clone(),
            |i| {
                let t = src.decode(i);
                let outer: Vec<usize> = (0..m.size())
                    .map(|im| {
                        let slice: Vec<usize> =
                            (0..n.size()).map(|jn| t[pr.encode(im, jn)]).collect();
                        mid.encode(&slice)
                    })
                    .collect();
                dst.encode(&outer)
            },
        ))
    }

    fn unitor(&self, x: &FinSet, _cap: usize) -> Result<FinFun> {
        Ok(exponential(&FinSet::unit(), x).eval_at(0))
    }

    fn grade_assoc(&self, m: &FinSet, n: &FinSet, k: &FinSet, cap: usize) -> Result<FinFun> {
        sized(m.size() as u128 * n.size() as u128 * k.size() as u128, cap)?;
        assoc_product(m, n, k).inverse()
    }

    fn grade_lunit(&self, m: &FinSet, _cap: usize) -> Result<FinFun> {
        // M -> 1 x M underlies 1 (x) M => M
        product(&FinSet::unit(), m).proj2().inverse()
    }

    fn grade_runit(&self, m: &FinSet, _cap: usize) -> Result<FinFun> {
        product(m, &FinSet::unit()).proj1().inverse()
    }
}

fn sized(size: u128, cap: usize) -> Result<()> {
    if size <= cap as u128 {
        Ok(())
    } else {
        Err(Error::SizeCap { size, cap })
    }
}

pub fn cartesian() -> ActionRef {
    Arc::new(Cartesian)
}

pub fn cocartesian() -> ActionRef {
    Arc::new(Cocartesian)
}

pub fn op_exponential() -> ActionRef {
    Arc::new(OpExponential)
}

pub fn action_by_name(name: &str) -> Option<ActionRef> {
    match name {
        "cart" => Some(cartesian()),
        "cocart" => Some(cocartesian()),
        "op-exp" => Some(op_exponential()),
        _ => None,
    }
}

/// Verifies the action laws over `universe` (used both for grades and for
/// base objects): structural maps are isos and natural, pentagon and
/// triangle commute, and the action is a bifunctor.
pub fn check_action_coherence(action: &dyn Action, universe: &Universe) -> Result<LawReport> {
    let mut report = LawReport::new(format!("action-coherence({})", action.name()));
    let cap = universe.budget().max_size;
    let max_hom = universe.budget().max_hom;
    let objs = universe.objects();
    let i = action.unit();

    // unitor: iso and natural
    for x in objs {
        instance(&mut report, || format!("unitor iso at {x}"), || {
            let lam = action.unitor(x, cap)?;
            if lam.inverse().is_err() {
                return Ok(Some(counterexample(
                    "unitor-iso",
                    &[("X", x.to_string())],
                    format!("{lam} is not a bijection"),
                )));
            }
            Ok(None)
        })?;
    }
    for x in objs {
        for y in objs {
            if hom_size(x, y).map_or(true, |h| h > max_hom) {
                report.skip(format!("unitor naturality over hom({x}, {y})"));
                continue;
            }
            for f in all_functions(x, y) {
                instance(
                    &mut report,
                    || format!("unitor naturality at {f}"),
                    || {
                        let lhs = compose(&action.unitor(y, cap)?, &action.act_mor(&identity(&i), &f, cap)?)?;
                        let rhs = compose(&f, &action.unitor(x, cap)?)?;
                        Ok(eq_or(
                            "unitor-naturality",
                            &[("f", f.to_string())],
                            &lhs,
                            &rhs,
                        ))
                    },
                )?;
            }
        }
    }

    // associator: iso at every triple
    for m in objs {
        for n in objs {
            for x in objs {
                instance(
                    &mut report,
                    || format!("associator iso at ({m}, {n}, {x})"),
                    || {
                        let a = action.associator(m, n, x, cap)?;
                        if a.inverse().is_err() {
                            return Ok(Some(counterexample(
                                "associator-iso",
                                &[("M", m.to_string()), ("N", n.to_string()), ("X", x.to_string())],
                                format!("{a} is not a bijection"),
                            )));
                        }
                        Ok(None)
                    },
                )?;
            }
        }
    }

    // associator naturality, one variable at a time (bifunctoriality below
    // makes single-variable naturality imply the joint statement)
    for m in objs {
        for n in objs {
            for x in objs {
                for y in objs {
                    if hom_size(x, y).map_or(true, |h| h > max_hom) {
                        report.skip(format!("associator naturality over hom({x}, {y})"));
                        continue;
                    }
                    for f in all_functions(x, y) {
                        instance(
                            &mut report,
                            || format!("associator naturality in X at ({m}, {n}, {f})"),
                            || {
                                let mn = action.tensor(m, n, cap)?;
                                let lhs = compose(
                                    &action.associator(m, n, y, cap)?,
                                    &action.act_mor(&identity(&mn), &f, cap)?,
                                )?;
                                let inner = action.act_mor(&identity(n), &f, cap)?;
                                let rhs = compose(
                                    &action.act_mor(&identity(m), &inner, cap)?,
                                    &action.associator(m, n, x, cap)?,
                                )?;
                                Ok(eq_or(
                                    "associator-naturality-base",
                                    &[("M", m.to_string()), ("N", n.to_string()), ("f", f.to_string())],
                                    &lhs,
                                    &rhs,
                                ))
                            },
                        )?;
                    }
                }
            }
        }
    }
    for m in objs {
        for m2 in objs {
            if grade_hom_size(action, m, m2).map_or(true, |h| h > max_hom) {
                report.skip(format!("associator naturality over grade hom({m}, {m2})"));
                continue;
            }
            for u in grade_arrows(action, m, m2) {
                for n in objs {
                    for x in objs {
                        instance(
                            &mut report,
                            || format!("associator naturality in M at ({n}, {x})"),
                            || {
                                let tens = action.grade_tensor_mor(&u, &identity(n), cap)?;
                                let lhs = compose(
                                    &action.associator(m2, n, x, cap)?,
                                    &action.act_mor(&tens, &identity(x), cap)?,
                                )?;
                                let nx = action.act_obj(n, x, cap)?;
                                let rhs = compose(
                                    &action.act_mor(&u, &identity(&nx), cap)?,
                                    &action.associator(m, n, x, cap)?,
                                )?;
                                Ok(eq_or(
                                    "associator-naturality-grade-left",
                                    &[("u", u.to_string()), ("N", n.to_string()), ("X", x.to_string())],
                                    &lhs,
                                    &rhs,
                                ))
                            },
                        )?;
                        instance(
                            &mut report,
                            || format!("associator naturality in N at ({n}, {x})"),
                            || {
                                let tens = action.grade_tensor_mor(&identity(n), &u, cap)?;
                                let lhs = compose(
                                    &action.associator(n, m2, x, cap)?,
                                    &action.act_mor(&tens, &identity(x), cap)?,
                                )?;
                                let inner = action.act_mor(&u, &identity(x), cap)?;
                                let rhs = compose(
                                    &action.act_mor(&identity(n), &inner, cap)?,
                                    &action.associator(n, m, x, cap)?,
                                )?;
                                Ok(eq_or(
                                    "associator-naturality-grade-right",
                                    &[("u", u.to_string()), ("N", n.to_string()), ("X", x.to_string())],
                                    &lhs,
                                    &rhs,
                                ))
                            },
                        )?;
                    }
                }
            }
        }
    }

    // pentagon
    for m in objs {
        for n in objs {
            for k in objs {
                for x in objs {
                    instance(
                        &mut report,
                        || format!("pentagon at ({m}, {n}, {k}, {x})"),
                        || {
                            let mn = action.tensor(m, n, cap)?;
                            let nk = action.tensor(n, k, cap)?;
                            let kx = action.act_obj(k, x, cap)?;
                            let lhs = compose(
                                &action.associator(m, n, &kx, cap)?,
                                &action.associator(&mn, k, x, cap)?,
                            )?;
                            let rhs = compose(
                                &action.act_mor(&identity(m), &action.associator(n, k, x, cap)?, cap)?,
                                &compose(
                                    &action.associator(m, &nk, x, cap)?,
                                    &action.act_mor(&action.grade_assoc(m, n, k, cap)?, &identity(x), cap)?,
                                )?,
                            )?;
                            Ok(eq_or(
                                "pentagon",
                                &[
                                    ("M", m.to_string()),
                                    ("N", n.to_string()),
                                    ("K", k.to_string()),
                                    ("X", x.to_string()),
                                ],
                                &lhs,
                                &rhs,
                            ))
                        },
                    )?;
                }
            }
        }
    }

    // triangle and left-unit coherence
    for m in objs {
        for x in objs {
            instance(&mut report, || format!("triangle at ({m}, {x})"), || {
                let lhs = action.act_mor(&action.grade_runit(m, cap)?, &identity(x), cap)?;
                let rhs = compose(
                    &action.act_mor(&identity(m), &action.unitor(x, cap)?, cap)?,
                    &action.associator(m, &i, x, cap)?,
                )?;
                Ok(eq_or(
                    "triangle",
                    &[("M", m.to_string()), ("X", x.to_string())],
                    &lhs,
                    &rhs,
                ))
            })?;
            instance(&mut report, || format!("left unit at ({m}, {x})"), || {
                let lhs = action.act_mor(&action.grade_lunit(m, cap)?, &identity(x), cap)?;
                let mx = action.act_obj(m, x, cap)?;
                let rhs = compose(&action.unitor(&mx, cap)?, &action.associator(&i, m, x, cap)?)?;
                Ok(eq_or(
                    "left-unit",
                    &[("M", m.to_string()), ("X", x.to_string())],
                    &lhs,
                    &rhs,
                ))
            })?;
        }
    }

    // bifunctoriality: identities, interchange, composition in each slot
    for m in objs {
        for x in objs {
            instance(&mut report, || format!("act identity at ({m}, {x})"), || {
                let act = action.act_mor(&identity(m), &identity(x), cap)?;
                let mx = action.act_obj(m, x, cap)?;
                Ok(eq_or(
                    "act-identity",
                    &[("M", m.to_string()), ("X", x.to_string())],
                    &act,
                    &identity(&mx),
                ))
            })?;
        }
    }
    for m in objs {
        for n in objs {
            if grade_hom_size(action, m, n).map_or(true, |h| h > max_hom) {
                report.skip(format!("interchange over grade hom({m}, {n})"));
                continue;
            }
            for u in grade_arrows(action, m, n) {
                for x in objs {
                    for y in objs {
                        if hom_size(x, y).map_or(true, |h| h > max_hom) {
                            report.skip(format!("interchange over hom({x}, {y})"));
                            continue;
                        }
                        for f in all_functions(x, y) {
                            instance(
                                &mut report,
                                || format!("interchange at ({u}, {f})"),
                                || {
                                    let joint = action.act_mor(&u, &f, cap)?;
                                    let left = compose(
                                        &action.act_mor(&u, &identity(y), cap)?,
                                        &action.act_mor(&identity(m), &f, cap)?,
                                    )?;
                                    let right = compose(
                                        &action.act_mor(&identity(n), &f, cap)?,
                                        &action.act_mor(&u, &identity(x), cap)?,
                                    )?;
                                    if joint != left || joint != right {
                                        return Ok(Some(counterexample(
                                            "interchange",
                                            &[("u", u.to_string()), ("f", f.to_string())],
                                            format!("{joint} vs {left} vs {right}"),
                                        )));
                                    }
                                    Ok(None)
                                },
                            )?;
                        }
                    }
                }
            }
        }
    }
    for m in objs {
        for n in objs {
            for k in objs {
                let pairs = grade_hom_size(action, m, n)
                    .zip(grade_hom_size(action, n, k))
                    .and_then(|(a, b)| a.checked_mul(b));
                if pairs.map_or(true, |h| h > max_hom) {
                    report.skip(format!("grade composition over ({m}, {n}, {k})"));
                    continue;
                }
                for u in grade_arrows(action, m, n) {
                    for w in grade_arrows(action, n, k) {
                        for x in objs {
                            instance(
                                &mut report,
                                || format!("grade composition at {x}"),
                                || {
                                    let wu = grade_compose(action, &w, &u)?;
                                    let lhs = action.act_mor(&wu, &identity(x), cap)?;
                                    let rhs = compose(
                                        &action.act_mor(&w, &identity(x), cap)?,
                                        &action.act_mor(&u, &identity(x), cap)?,
                                    )?;
                                    Ok(eq_or(
                                        "act-grade-composition",
                                        &[("u", u.to_string()), ("w", w.to_string()), ("X", x.to_string())],
                                        &lhs,
                                        &rhs,
                                    ))
                                },
                            )?;
                        }
                    }
                }
            }
        }
    }
    for x in objs {
        for y in objs {
            for z in objs {
                let pairs = hom_size(x, y)
                    .zip(hom_size(y, z))
                    .and_then(|(a, b)| a.checked_mul(b));
                if pairs.map_or(true, |h| h > max_hom) {
                    report.skip(format!("base composition over ({x}, {y}, {z})"));
                    continue;
                }
                for f in all_functions(x, y) {
                    for g in all_functions(y, z) {
                        for m in objs {
                            instance(
                                &mut report,
                                || format!("base composition at {m}"),
                                || {
                                    let gf = compose(&g, &f)?;
                                    let lhs = action.act_mor(&identity(m), &gf, cap)?;
                                    let rhs = compose(
                                        &action.act_mor(&identity(m), &g, cap)?,
                                        &action.act_mor(&identity(m), &f, cap)?,
                                    )?;
                                    Ok(eq_or(
                                        "act-base-composition",
                                        &[("f", f.to_string()), ("g", g.to_string()), ("M", m.to_string())],
                                        &lhs,
                                        &rhs,
                                    ))
                                },
                            )?;
                        }
                    }
                }
            }
        }
    }

    report.seal();
    Ok(report)
}

/// A finite monoid whose carrier also carries a preorder, with
/// multiplication monotone in both arguments. Construction validates all of
/// that eagerly, so a value of this type is always lawful.
#[derive(Debug, Clone)]
pub struct PreorderedMonoid {
    elements: FinSet,
    unit: usize,
    mult: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl PreorderedMonoid {
    pub fn new(
        elements: FinSet,
        unit: usize,
        mult: Vec<Vec<usize>>,
        leq: Vec<Vec<bool>>,
    ) -> Result<Self> {
        let n = elements.size();
        if unit >= n {
            return Err(Error::precondition(format!("unit index {unit} out of range")));
        }
        let table_ok = mult.len() == n
            && mult.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n))
            && leq.len() == n
            && leq.iter().all(|r| r.len() == n);
        if !table_ok {
            return Err(Error::precondition("malformed monoid tables"));
        }
        let m = PreorderedMonoid {
            elements,
            unit,
            mult,
            leq,
        };
        for x in 0..n {
            if m.mult[m.unit][x] != x || m.mult[x][m.unit] != x {
                return Err(Error::precondition(format!(
                    "unit law fails at {}",
                    m.elements.label(x)
                )));
            }
            if !m.leq[x][x] {
                return Err(Error::precondition(format!(
                    "preorder not reflexive at {}",
                    m.elements.label(x)
                )));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m.mult[m.mult[x][y]][z] != m.mult[x][m.mult[y][z]] {
                        return Err(Error::precondition(format!(
                            "associativity fails at ({}, {}, {})",
                            m.elements.label(x),
                            m.elements.label(y),
                            m.elements.label(z)
                        )));
                    }
                    if m.leq[x][y] && m.leq[y][z] && !m.leq[x][z] {
                        return Err(Error::precondition("preorder not transitive"));
                    }
                    if m.leq[x][y] && (!m.leq[m.mult[x][z]][m.mult[y][z]] || !m.leq[m.mult[z][x]][m.mult[z][y]]) {
                        return Err(Error::precondition("multiplication not monotone"));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn elements(&self) -> &FinSet {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.size()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x][y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn label(&self, x: usize) -> &str {
        self.elements.label(x)
    }
}

/// A monad graded by a preordered monoid, materialized over a universe.
///
/// Each grade `x` names a functor level `T_x`. The data is colax: grade
/// inequalities `x <= y` induce maps `T_x => T_y`, the unit lands in the
/// unit grade, and multiplication *decomposes*, `T_{x*y} => T_x . T_y`.
/// Component tables are stored over `carrier`, which extends the base
/// universe with every `T_z(X)` so that the associativity squares (which
/// evaluate one level inside another) stay inside the table domain.
pub struct GradedMonad {
    pub grades: PreorderedMonoid,
    pub levels: Vec<FunctorExpr>,
    pub base: Universe,
    pub carrier: Universe,
    pub on_leq: BTreeMap<(usize, usize), NatFamily>,
    pub unit: NatFamily,
    pub mult: BTreeMap<(usize, usize), NatFamily>,
}

impl GradedMonad {
    /// The carrier a graded monad over `base` stores its tables on.
    pub fn carrier_universe(levels: &[FunctorExpr], base: &Universe) -> Result<Universe> {
        let cap = base.budget().max_size;
        let mut extra = Vec::new();
        for level in levels {
            for x in base.objects() {
                extra.push(level.apply_obj(x, cap)?);
            }
        }
        Ok(base.extended(extra))
    }
}

/// Checks every law of a graded monad over its base universe: shape and
/// naturality of all three families, functoriality of the `on_leq`
/// family, the unit squares, and the associativity squares. Also records
/// which multiplication components are isos, because several catalogue
/// facts hinge on exactly where iso-ness fails.
pub fn check_graded_laws(gm: &GradedMonad) -> Result<LawReport> {
    let mut report = LawReport::new("graded-monad");
    let cap = gm.base.budget().max_size;
    let n = gm.grades.size();
    if gm.levels.len() != n {
        return Err(Error::BadLength {
            expected: n,
            found: gm.levels.len(),
        });
    }

    // shape: families present exactly where the grade structure says, with
    // the right source and target functors, all tabulated over the carrier
    let e = gm.grades.unit();
    if gm.unit.source != FunctorExpr::Id || gm.unit.target != gm.levels[e] {
        return Err(Error::mismatch(
            "unit family",
            format!("Id => {}", gm.levels[e]),
            format!("{} => {}", gm.unit.source, gm.unit.target),
        ));
    }
    for x in 0..n {
        for y in 0..n {
            if gm.grades.leq(x, y) && !gm.on_leq.contains_key(&(x, y)) {
                return Err(Error::MissingComponent(format!(
                    "on_leq({}, {})",
                    gm.grades.label(x),
                    gm.grades.label(y)
                )));
            }
            let fam = gm.mult.get(&(x, y)).ok_or_else(|| {
                Error::MissingComponent(format!(
                    "mult({}, {})",
                    gm.grades.label(x),
                    gm.grades.label(y)
                ))
            })?;
            let want_src = &gm.levels[gm.grades.mult(x, y)];
            let want_tgt = FunctorExpr::comp(gm.levels[x].clone(), gm.levels[y].clone());
            if &fam.source != want_src || fam.target != want_tgt {
                return Err(Error::mismatch(
                    format!("mult({}, {})", gm.grades.label(x), gm.grades.label(y)),
                    format!("{want_src} => {want_tgt}"),
                    format!("{} => {}", fam.source, fam.target),
                ));
            }
        }
    }
    for fam in gm
        .on_leq
        .values()
        .chain(gm.mult.values())
        .chain(std::iter::once(&gm.unit))
    {
        if fam.universe.objects() != gm.carrier.objects() {
            return Err(Error::precondition(
                "family tabulated over a universe other than the carrier",
            ));
        }
    }

    // naturality of every family over the carrier
    report.absorb("unit", gm.unit.check_natural()?);
    for (&(x, y), fam) in &gm.on_leq {
        if !gm.grades.leq(x, y) {
            return Err(Error::precondition(format!(
                "on_leq family at non-related pair ({}, {})",
                gm.grades.label(x),
                gm.grades.label(y)
            )));
        }
        report.absorb(
            &format!("leq({},{})", gm.grades.label(x), gm.grades.label(y)),
            fam.check_natural()?,
        );
    }
    for (&(x, y), fam) in &gm.mult {
        report.absorb(
            &format!("mult({},{})", gm.grades.label(x), gm.grades.label(y)),
            fam.check_natural()?,
        );
    }

    // on_leq functoriality: identities and composition along the preorder
    for x in 0..n {
        for (k, obj) in gm.carrier.objects().iter().enumerate() {
            let fam = gm.on_leq.get(&(x, x)).ok_or_else(|| {
                Error::MissingComponent(format!("on_leq({0}, {0})", gm.grades.label(x)))
            })?;
            report.tick();
            if !fam.components[k].is_identity() {
                report.fail(counterexample(
                    "leq-identity",
                    &[("x", gm.grades.label(x).to_string()), ("X", obj.to_string())],
                    format!("{} is not the identity", fam.components[k]),
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !(gm.grades.leq(x, y) && gm.grades.leq(y, z)) {
                    continue;
                }
                let xy = &gm.on_leq[&(x, y)];
                let yz = &gm.on_leq[&(y, z)];
                let xz = &gm.on_leq[&(x, z)];
                for (k, obj) in gm.carrier.objects().iter().enumerate() {
                    let two_step = compose(&yz.components[k], &xy.components[k])?;
                    report.tick();
                    if two_step != xz.components[k] {
                        report.fail(counterexample(
                            "leq-composition",
                            &[
                                ("x", gm.grades.label(x).to_string()),
                                ("y", gm.grades.label(y).to_string()),
                                ("z", gm.grades.label(z).to_string()),
                                ("X", obj.to_string()),
                            ],
                            format!("{two_step} vs {}", xz.components[k]),
                        ));
                    }
                }
            }
        }
    }

    // unit squares: T_{x*e} => T_x(T_e) along mult must be T_x(unit), and
    // dually on the left
    for x in 0..n {
        for obj in gm.base.objects() {
            let k = gm.carrier.require(obj)?;
            let right = &gm.mult[&(x, e)].components[k];
            let lifted_unit = gm.levels[x].apply_mor(&gm.unit.components[k], cap)?;
            report.tick();
            if right != &lifted_unit {
                report.fail(counterexample(
                    "unit-right",
                    &[("x", gm.grades.label(x).to_string()), ("X", obj.to_string())],
                    format!("{right} vs {lifted_unit}"),
                ));
            }
            let tx_obj = gm.levels[x].apply_obj(obj, cap)?;
            let kk = gm.carrier.require(&tx_obj)?;
            let left = &gm.mult[&(e, x)].components[k];
            let unit_at = &gm.unit.components[kk];
            report.tick();
            if left != unit_at {
                report.fail(counterexample(
                    "unit-left",
                    &[("x", gm.grades.label(x).to_string()), ("X", obj.to_string())],
                    format!("{left} vs {unit_at}"),
                ));
            }
        }
    }

    // associativity squares: decompose (x*y)*z in the two orders
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for obj in gm.base.objects() {
                    let tz = gm.levels[z].apply_obj(obj, cap)?;
                    let k = gm.carrier.require(obj)?;
                    let ktz = gm.carrier.require(&tz)?;
                    let first = &gm.mult[&(gm.grades.mult(x, y), z)].components[k];
                    let second = &gm.mult[&(x, y)].components[ktz];
                    let path_a = compose(second, first)?;
                    let head = &gm.mult[&(x, gm.grades.mult(y, z))].components[k];
                    let inner = &gm.mult[&(y, z)].components[k];
                    let path_b = compose(&gm.levels[x].apply_mor(inner, cap)?, head)?;
                    report.tick();
                    if path_a != path_b {
                        report.fail(counterexample(
                            "mult-associativity",
                            &[
                                ("x", gm.grades.label(x).to_string()),
                                ("y", gm.grades.label(y).to_string()),
                                ("z", gm.grades.label(z).to_string()),
                                ("X", obj.to_string()),
                            ],
                            format!("{path_a} vs {path_b}"),
                        ));
                    }
                }
            }
        }
    }

    // iso census over the base universe
    let mut iso_pairs = 0u64;
    for (&(x, y), fam) in &gm.mult {
        let mut iso = true;
        for obj in gm.base.objects() {
            let k = gm.carrier.require(obj)?;
            if !fam.components[k].is_bijection() {
                iso = false;
            }
        }
        if iso {
            iso_pairs += 1;
        } else {
            report.note(format!(
                "mult({}, {}) is not invertible",
                gm.grades.label(x),
                gm.grades.label(y)
            ));
        }
    }
    report.count("mult-iso-pairs", iso_pairs);
    report.count("mult-pairs", (n * n) as u64);

    report.seal();
    Ok(report)
}

/// The graded shape of the maybe monad: grades `f <= m >= s` with unit `s`,
/// levels `T_f = Const(1)`, `T_s = Id`, `T_m = Maybe`. Multiplication
/// decomposes a flat value into nested ones; the only non-invertible
/// components are `mult(m, f)` and `mult(m, m)`, where the decomposition
/// genuinely chooses how to split a failure between the layers.
pub fn maybe_graded_monad(base: &Universe) -> Result<GradedMonad> {
    let grades = PreorderedMonoid::new(
        FinSet::new(vec!["f".into(), "s".into(), "m".into()])?,
        1,
        vec![
            vec![0, 0, 0], // f * _
            vec![0, 1, 2], // s * _ = _
            vec![0, 2, 2], // m * _
        ],
        vec![
            vec![true, false, true],
            vec![false, true, true],
            vec![false, false, true],
        ],
    )?;
    let levels = vec![
        FunctorExpr::Const(FinSet::unit()),
        FunctorExpr::Id,
        FunctorExpr::maybe(),
    ];
    let carrier = GradedMonad::carrier_universe(&levels, base)?;
    let cap = carrier.budget().max_size;

    let component =
        |src: &FunctorExpr, dst: &FunctorExpr, x: &FinSet, f: &dyn Fn(usize, usize) -> usize| {
            let s = src.apply_obj(x, cap)?;
            let d = dst.apply_obj(x, cap)?;
            let ds = d.size();
            Ok::<FinFun, Error>(FinFun::from_fn(s, d, |i| f(i, ds)))
        };

    let family = |src: FunctorExpr, dst: FunctorExpr, f: &dyn Fn(usize, usize) -> usize| {
        let comps = carrier
            .objects()
            .iter()
            .map(|x| component(&src, &dst, x, f))
            .collect::<Result<Vec<_>>>()?;
        NatFamily::new(src, dst, carrier.clone(), comps)
    };

    let idf = |i: usize, _: usize| i;
    let t_f = || levels[0].clone();
    let t_s = || levels[1].clone();
    let t_m = || levels[2].clone();

    let unit = family(FunctorExpr::Id, t_s(), &idf)?;

    let mut on_leq = BTreeMap::new();
    on_leq.insert((0, 0), family(t_f(), t_f(), &idf)?);
    on_leq.insert((1, 1), family(t_s(), t_s(), &idf)?);
    on_leq.insert((2, 2), family(t_m(), t_m(), &idf)?);
    // nothing-into-maybe and value-into-maybe embeddings
    on_leq.insert((0, 2), family(t_f(), t_m(), &|_, _| 0)?);
    on_leq.insert((1, 2), family(t_s(), t_m(), &|i, _| i + 1)?);

    let mut mult = BTreeMap::new();
    let comp = |x: usize, y: usize| FunctorExpr::comp(levels[x].clone(), levels[y].clone());
    for y in 0..3 {
        // T_{s*y} = T_y -> T_s(T_y) = T_y and T_f cases are all identities
        mult.insert((1, y), family(levels[grades.mult(1, y)].clone(), comp(1, y), &idf)?);
        mult.insert((0, y), family(levels[grades.mult(0, y)].clone(), comp(0, y), &idf)?);
    }
    mult.insert((2, 1), family(t_m(), comp(2, 1), &idf)?);
    // a flat failure becomes "the inner layer failed"
    mult.insert((2, 0), family(t_f(), comp(2, 0), &|_, _| 1)?);
    // a flat maybe is wrapped as a present inner maybe
    mult.insert((2, 2), family(t_m(), comp(2, 2), &|i, _| i + 1)?);

    Ok(GradedMonad {
        grades,
        levels,
        base: base.clone(),
        carrier,
        on_leq,
        unit,
        mult,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::LawStatus;
    use crate::universe::Budget;

    fn small() -> Universe {
        Universe::default_small()
    }

    #[test]
    fn cartesian_action_is_coherent() {
        let r = check_action_coherence(cartesian().as_ref(), &small()).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.checked > 1000);
    }

    #[test]
    fn cocartesian_action_is_coherent() {
        let r = check_action_coherence(cocartesian().as_ref(), &small()).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
    }

    #[test]
    fn op_exponential_action_is_coherent_where_it_fits() {
        let u = Universe::with_budget(
            small().objects().to_vec(),
            Budget::default().with_max_size(256),
        );
        let r = check_action_coherence(op_exponential().as_ref(), &u).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert!(r.checked > 100);
        assert!(!r.skipped.is_empty(), "towers of exponentials must overflow");
    }

    /// Wrapper that misplaces the associator, to prove the checker bites.
    struct BrokenAssoc(ActionRef);

    impl Action for BrokenAssoc {
        fn name(&self) -> &str {
            "broken"
        }
        fn variance(&self) -> Variance {
            self.0.variance()
        }
        fn unit(&self) -> FinSet {
            self.0.unit()
        }
        fn tensor(&self, m: &FinSet, n: &FinSet, cap: usize) -> Result<FinSet> {
            self.0.tensor(m, n, cap)
        }
        fn act_obj(&self, m: &FinSet, x: &FinSet, cap: usize) -> Result<FinSet> {
            self.0.act_obj(m, x, cap)
        }
        fn act_mor(&self, u: &FinFun, f: &FinFun, cap: usize) -> Result<FinFun> {
            self.0.act_mor(u, f, cap)
        }
        fn grade_tensor_mor(&self, u: &FinFun, v: &FinFun, cap: usize) -> Result<FinFun> {
            self.0.grade_tensor_mor(u, v, cap)
        }
        fn associator(&self, m: &FinSet, n: &FinSet, x: &FinSet, cap: usize) -> Result<FinFun> {
            let a = self.0.associator(m, n, x, cap)?;
            if a.dom().size() == 8 {
                // rotate one fiber to desynchronize a single instance
                let mut t = a.table().to_vec();
                t.rotate_left(1);
                return FinFun::new(a.dom().clone(), a.cod().clone(), t);
            }
            Ok(a)
        }
        fn unitor(&self, x: &FinSet, cap: usize) -> Result<FinFun> {
            self.0.unitor(x, cap)
        }
        fn grade_assoc(&self, m: &FinSet, n: &FinSet, k: &FinSet, cap: usize) -> Result<FinFun> {
            self.0.grade_assoc(m, n, k, cap)
        }
        fn grade_lunit(&self, m: &FinSet, cap: usize) -> Result<FinFun> {
            self.0.grade_lunit(m, cap)
        }
        fn grade_runit(&self, m: &FinSet, cap: usize) -> Result<FinFun> {
            self.0.grade_runit(m, cap)
        }
    }

    #[test]
    fn coherence_checker_rejects_a_corrupted_associator() {
        let r = check_action_coherence(&BrokenAssoc(cartesian()), &small()).unwrap();
        assert_eq!(r.status, LawStatus::Fail);
        let cx = r.counterexample.unwrap();
        assert!(!cx.bindings.is_empty());
    }

    #[test]
    fn preordered_monoid_rejects_broken_tables() {
        let two = FinSet::canonical(2);
        // non-associative: x*y = 1 except 1*1 = 0 has no unit anyway
        assert!(PreorderedMonoid::new(
            two.clone(),
            0,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![true, true], vec![true, false]],
        )
        .is_err());
        // monotonicity failure: 0 <= 1 but 0*0 = 0 > 1 = 1*0 under leq
        assert!(PreorderedMonoid::new(
            two.clone(),
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![true, true], vec![false, true]],
        )
        .is_err());
    }

    #[test]
    fn maybe_graded_monad_satisfies_all_laws() {
        let gm = maybe_graded_monad(&small()).unwrap();
        let r = check_graded_laws(&gm).unwrap();
        assert!(r.is_pass(), "{:?}", r.counterexample);
        assert_eq!(r.counts["mult-iso-pairs"], 7);
        assert_eq!(r.counts["mult-pairs"], 9);
        let notes = r.notes.join("; ");
        assert!(notes.contains("mult(m, f)"));
        assert!(notes.contains("mult(m, m)"));
    }

    #[test]
    fn graded_checker_rejects_a_corrupted_decomposition() {
        let mut gm = maybe_graded_monad(&small()).unwrap();
        // send the flat failure to the outer layer instead of the inner one
        let fam = gm.mult.get_mut(&(2, 0)).unwrap();
        for c in &mut fam.components {
            *c = FinFun::constant(c.dom().clone(), c.cod().clone(), 0);
        }
        let r = check_graded_laws(&gm).unwrap();
        assert_eq!(r.status, LawStatus::Fail);
        assert_eq!(r.counterexample.unwrap().law, "mult-associativity");
    }
}
