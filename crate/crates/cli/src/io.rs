//! On-disk formats and the flag-to-universe plumbing.
//!
//! Sets travel as arrays of labels, functions as index tables against the
//! declared domain order, so a file round-trips to exactly the structure
//! it was written from. Loaders rebuild the typed core values and let the
//! core constructors do the validating.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use costrength_core::actions::{action_by_name, ActionRef};
use costrength_core::costrength::Copoint;
use costrength_core::nat::NatFamily;
use costrength_core::optics::{Boundary, OpticRep};
use costrength_core::streams::StreamAutomaton;
use costrength_core::{Budget, FinFun, FinSet, FunctorExpr, Universe};

/// Global knobs shared by every command. A `None` means the command's own
/// default applies, so heavyweight suites can pick larger caps than the
/// quick single-shot verbs without fighting the flag.
#[derive(Clone)]
pub struct Lab {
    pub json: bool,
    pub max_size: Option<usize>,
    pub budget: Option<u64>,
    pub universe_sizes: Option<Vec<usize>>,
    pub jobs: usize,
}

impl Lab {
    pub fn budget_with(&self, default_max_size: usize) -> Budget {
        let mut b = Budget::default().with_max_size(self.max_size.unwrap_or(default_max_size));
        if let Some(candidates) = self.budget {
            b = b.with_max_candidates(candidates);
        }
        b
    }

    /// Canonical sets of the requested sizes, default `{0, 1, 2, 3}`.
    pub fn base_sets(&self) -> Vec<FinSet> {
        self.universe_sizes
            .clone()
            .unwrap_or_else(|| vec![0, 1, 2, 3])
            .into_iter()
            .map(sized_object)
            .collect()
    }

    pub fn universe(&self, default_max_size: usize) -> Universe {
        Universe::with_budget(self.base_sets(), self.budget_with(default_max_size))
    }
}

/// The stock object of a given size. Size 1 is the acting unit itself, not
/// a relabeled copy: universe membership goes by labels, so unit laws only
/// engage when the literal unit object is present.
pub fn sized_object(n: usize) -> FinSet {
    if n == 1 {
        FinSet::unit()
    } else {
        FinSet::canonical(n)
    }
}

pub fn label_set(labels: &[String]) -> anyhow::Result<FinSet> {
    Ok(FinSet::new(labels.to_vec())?)
}

pub fn named_action(name: &str) -> anyhow::Result<ActionRef> {
    action_by_name(name)
        .ok_or_else(|| anyhow::anyhow!("unknown action {name:?}; expected cart, cocart or op-exp"))
}

pub fn parse_functor(src: &str) -> anyhow::Result<FunctorExpr> {
    FunctorExpr::parse(src).with_context(|| format!("parsing functor expression {src:?}"))
}

pub fn parse_set_arg(src: &str) -> anyhow::Result<FinSet> {
    costrength_core::functor::parse_set(src).with_context(|| format!("parsing set {src:?}"))
}

/// Adds only the sets the universe does not already contain, so repeated
/// extensions never duplicate objects.
pub fn extend_unique(u: &Universe, extra: impl IntoIterator<Item = FinSet>) -> Universe {
    let mut seen = u.clone();
    let mut missing = Vec::new();
    for s in extra {
        if seen.index_of(&s).is_none() {
            seen = seen.extended([s.clone()]);
            missing.push(s);
        }
    }
    u.extended(missing)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

/// A total function: domain and codomain by label, values by codomain index.
#[derive(Debug, Serialize, Deserialize)]
pub struct FunFile {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub table: Vec<usize>,
}

impl FunFile {
    pub fn of(f: &FinFun) -> Self {
        FunFile {
            dom: f.dom().labels().to_vec(),
            cod: f.cod().labels().to_vec(),
            table: f.table().to_vec(),
        }
    }
}

/// A stream automaton: `out` maps each state to an alphabet index, `next`
/// to a state index, both in the order `states` is listed.
#[derive(Debug, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub out: Vec<usize>,
    pub next: Vec<usize>,
}

impl AutomatonFile {
    pub fn of(a: &StreamAutomaton) -> Self {
        AutomatonFile {
            states: a.states.labels().to_vec(),
            alphabet: a.alphabet.labels().to_vec(),
            out: a.out.table().to_vec(),
            next: a.next.table().to_vec(),
        }
    }

    pub fn build(&self) -> anyhow::Result<StreamAutomaton> {
        let states = label_set(&self.states)?;
        let alphabet = label_set(&self.alphabet)?;
        let out = FinFun::new(states.clone(), alphabet.clone(), self.out.clone())?;
        let next = FinFun::new(states.clone(), states.clone(), self.next.clone())?;
        Ok(StreamAutomaton::new(states, alphabet, out, next)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoundaryFile {
    pub outer_in: Vec<String>,
    pub inner_in: Vec<String>,
    pub inner_out: Vec<String>,
    pub outer_out: Vec<String>,
}

/// An optic representative. `fwd` is a table `outer_in -> residual . inner_in`
/// and `bwd` a table `residual . inner_out -> outer_out`, against the
/// element order the named action gives the acted sets.
#[derive(Debug, Serialize, Deserialize)]
pub struct OpticFile {
    pub action: String,
    pub residual: Vec<String>,
    pub boundary: BoundaryFile,
    pub fwd: Vec<usize>,
    pub bwd: Vec<usize>,
}

impl OpticFile {
    pub fn of(o: &OpticRep) -> Self {
        OpticFile {
            action: o.action.name().to_string(),
            residual: o.residual.labels().to_vec(),
            boundary: BoundaryFile {
                outer_in: o.boundary.outer_in.labels().to_vec(),
                inner_in: o.boundary.inner_in.labels().to_vec(),
                inner_out: o.boundary.inner_out.labels().to_vec(),
                outer_out: o.boundary.outer_out.labels().to_vec(),
            },
            fwd: o.fwd.table().to_vec(),
            bwd: o.bwd.table().to_vec(),
        }
    }

    pub fn build(&self) -> anyhow::Result<OpticRep> {
        let action = named_action(&self.action)?;
        let residual = label_set(&self.residual)?;
        let boundary = Boundary {
            outer_in: label_set(&self.boundary.outer_in)?,
            inner_in: label_set(&self.boundary.inner_in)?,
            inner_out: label_set(&self.boundary.inner_out)?,
            outer_out: label_set(&self.boundary.outer_out)?,
        };
        let fwd_cod = action.act_obj(&residual, &boundary.inner_in, usize::MAX)?;
        let fwd = FinFun::new(boundary.outer_in.clone(), fwd_cod, self.fwd.clone())?;
        let bwd_dom = action.act_obj(&residual, &boundary.inner_out, usize::MAX)?;
        let bwd = FinFun::new(bwd_dom, boundary.outer_out.clone(), self.bwd.clone())?;
        Ok(OpticRep::new(action, residual, boundary, fwd, bwd)?)
    }
}

/// A copoint given extensionally: component `i` is a table
/// `F(universe[i]) -> universe[i]`.
#[derive(Debug, Deserialize)]
pub struct CopointFile {
    pub universe: Vec<Vec<String>>,
    pub components: Vec<Vec<usize>>,
}

/// A guarded system of stream equations. `map` assigns every carrier
/// variable an element of `alphabet x F(carrier)` by index; the copoint is
/// derived by enumeration when the functor admits exactly one, or spelled
/// out under `copoint` otherwise.
#[derive(Debug, Deserialize)]
pub struct UpToFile {
    pub carrier: Vec<String>,
    pub alphabet: Vec<String>,
    pub functor: String,
    pub map: Vec<usize>,
    #[serde(default)]
    pub copoint: Option<CopointFile>,
}

pub fn build_copoint(
    file: &CopointFile,
    functor: &FunctorExpr,
    budget: Budget,
) -> anyhow::Result<Copoint> {
    if file.universe.len() != file.components.len() {
        anyhow::bail!(
            "copoint lists {} universe objects but {} components",
            file.universe.len(),
            file.components.len()
        );
    }
    let objects: Vec<FinSet> = file
        .universe
        .iter()
        .map(|labels| label_set(labels))
        .collect::<anyhow::Result<_>>()?;
    let comps: Vec<FinFun> = file
        .components
        .iter()
        .zip(&objects)
        .map(|(table, x)| {
            let fx = functor.apply_obj(x, budget.max_size)?;
            FinFun::new(fx, x.clone(), table.clone())
        })
        .collect::<costrength_core::Result<_>>()?;
    let u = Universe::with_budget(objects, budget);
    let family = NatFamily::new(functor.clone(), FunctorExpr::Id, u, comps)?;
    Ok(Copoint::from_family(family)?)
}
