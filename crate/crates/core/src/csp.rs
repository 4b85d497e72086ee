//! Exhaustive search for families of functions subject to commuting
//! constraints.
//!
//! Every enumeration problem in this crate (natural transformations,
//! costrengths, strengths) has the same shape: a finite family of unknown
//! functions, plus constraints saying that certain squares built from known
//! functions must commute. [`FamilySearch`] solves exactly that by
//! depth-first search over function entries with eager forward propagation:
//! assigning one entry immediately forces entries of linked unknowns, so
//! contradictions surface long before a full candidate is built.
//!
//! The search is complete and duplicate-free, and yields solutions in a
//! canonical order: entries are decided block-major, values tried ascending.

use crate::error::{Error, Result};
use crate::finset::{FinFun, FinSet};

struct Block {
    dom: FinSet,
    cod: FinSet,
    offset: usize,
}

/// Constraint `post(u(e)) == v(pre(e))` for every entry `e` of block `u`.
///
/// A naturality square is the special case `u = component at X`,
/// `v = component at Y`, `pre = S(f)`, `post = T(f)`.
struct Link {
    v: usize,
    pre: FinFun,
    post: FinFun,
}

pub struct FamilySearch {
    blocks: Vec<Block>,
    links: Vec<Link>,
    out_links: Vec<Vec<usize>>,
    num_vars: usize,
    fixed: Vec<(usize, Vec<usize>)>,
}

const UNASSIGNED: usize = usize::MAX;

impl FamilySearch {
    pub fn new() -> Self {
        FamilySearch {
            blocks: Vec::new(),
            links: Vec::new(),
            out_links: Vec::new(),
            num_vars: 0,
            fixed: Vec::new(),
        }
    }

    /// Adds an unknown function `dom -> cod` and returns its block id.
    pub fn add_block(&mut self, dom: FinSet, cod: FinSet) -> usize {
        let offset = self.num_vars;
        self.num_vars += dom.size();
        self.blocks.push(Block { dom, cod, offset });
        self.out_links.push(Vec::new());
        self.blocks.len() - 1
    }

    /// Adds a block pinned to a known function. Links into a fixed block
    /// turn commuting constraints into constraints against known data, which
    /// is how unary conditions (unit laws) enter the search.
    pub fn add_fixed(&mut self, f: &FinFun) -> usize {
        let id = self.add_block(f.dom().clone(), f.cod().clone());
        self.fixed.push((id, f.table().to_vec()));
        id
    }

    /// Requires `post . sol[u] == sol[v] . pre` to commute.
    pub fn add_link(&mut self, u: usize, v: usize, pre: FinFun, post: FinFun) -> Result<()> {
        let bu = self
            .blocks
            .get(u)
            .ok_or_else(|| Error::precondition(format!("no block {u}")))?;
        let bv = self
            .blocks
            .get(v)
            .ok_or_else(|| Error::precondition(format!("no block {v}")))?;
        if pre.dom() != &bu.dom || pre.cod() != &bv.dom {
            return Err(Error::mismatch(
                "link pre-map boundary",
                format!("{} -> {}", bu.dom, bv.dom),
                format!("{} -> {}", pre.dom(), pre.cod()),
            ));
        }
        if post.dom() != &bu.cod || post.cod() != &bv.cod {
            return Err(Error::mismatch(
                "link post-map boundary",
                format!("{} -> {}", bu.cod, bv.cod),
                format!("{} -> {}", post.dom(), post.cod()),
            ));
        }
        self.links.push(Link { v, pre, post });
        self.out_links[u].push(self.links.len() - 1);
        Ok(())
    }

    /// All solutions, each one function per block, in canonical order.
    ///
    /// `max_nodes` bounds the number of value trials; exceeding it is an
    /// error rather than a truncated answer, so a returned list is always
    /// the complete one.
    pub fn solve(&self, max_nodes: u64) -> Result<Vec<Vec<FinFun>>> {
        let mut state = State {
            assignment: vec![UNASSIGNED; self.num_vars],
            trail: Vec::new(),
            work: Vec::new(),
            nodes: 0,
            max_nodes,
        };
        for (block, table) in &self.fixed {
            let offset = self.blocks[*block].offset;
            for (entry, &value) in table.iter().enumerate() {
                if !self.assign_and_propagate(&mut state, offset + entry, value) {
                    // pinned data already contradicts the constraints
                    return Ok(Vec::new());
                }
            }
        }
        let mut out = Vec::new();
        self.dfs(&mut state, 0, &mut out)?;
        Ok(out)
    }

    fn dfs(&self, state: &mut State, from: usize, out: &mut Vec<Vec<FinFun>>) -> Result<()> {
        let mut var = from;
        while var < self.num_vars && state.assignment[var] != UNASSIGNED {
            var += 1;
        }
        if var == self.num_vars {
            out.push(self.extract(state));
            return Ok(());
        }
        let block = self.block_of(var);
        let values = self.blocks[block].cod.size();
        for val in 0..values {
            state.nodes += 1;
            if state.nodes > state.max_nodes {
                return Err(Error::BudgetExceeded {
                    estimate: state.nodes as u128,
                    budget: state.max_nodes,
                });
            }
            let mark = state.trail.len();
            if self.assign_and_propagate(state, var, val) {
                self.dfs(state, var + 1, out)?;
            }
            state.undo_to(mark);
        }
        Ok(())
    }

    fn assign_and_propagate(&self, state: &mut State, var: usize, val: usize) -> bool {
        debug_assert!(state.work.is_empty());
        if !state.try_assign(var, val) {
            return false;
        }
        while let Some(v) = state.work.pop() {
            let block = self.block_of(v);
            let entry = v - self.blocks[block].offset;
            let assigned = state.assignment[v];
            for &li in &self.out_links[block] {
                let link = &self.links[li];
                let forced_var = self.blocks[link.v].offset + link.pre.apply(entry);
                let forced_val = link.post.apply(assigned);
                if !state.try_assign(forced_var, forced_val) {
                    state.work.clear();
                    return false;
                }
            }
        }
        true
    }

    fn block_of(&self, var: usize) -> usize {
        // blocks are few; linear scan keeps the state flat
        self.blocks
            .iter()
            .rposition(|b| b.offset <= var)
            .expect("variable out of range")
    }

    fn extract(&self, state: &State) -> Vec<FinFun> {
        self.blocks
            .iter()
            .map(|b| {
                let table = state.assignment[b.offset..b.offset + b.dom.size()].to_vec();
                FinFun::new(b.dom.clone(), b.cod.clone(), table)
                    .expect("search assigns in-range values only")
            })
            .collect()
    }
}

impl Default for FamilySearch {
    fn default() -> Self {
        Self::new()
    }
}

struct State {
    assignment: Vec<usize>,
    trail: Vec<usize>,
    work: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl State {
    fn try_assign(&mut self, var: usize, val: usize) -> bool {
        if self.assignment[var] != UNASSIGNED {
            return self.assignment[var] == val;
        }
        self.assignment[var] = val;
        self.trail.push(var);
        self.work.push(var);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().unwrap();
            self.assignment[var] = UNASSIGNED;
        }
    }
}
