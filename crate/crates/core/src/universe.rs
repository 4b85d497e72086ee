//! Finite universes of objects and the resource budgets that bound every
//! exhaustive claim.

use crate::error::{Error, Result};
use crate::finset::{hom_size, FinSet};

/// Resource limits. Exceeding one is a reported error or a named skip, never
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Cap on the size of any constructed set.
    pub max_size: usize,
    /// Cap on search nodes visited by an enumeration.
    pub max_candidates: u64,
    /// Cap on the number of functions quantified per object pair in a
    /// naturality check; larger hom-sets are skipped with a note.
    pub max_hom: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_size: 64,
            max_candidates: 10_000_000,
            max_hom: 200_000,
        }
    }
}

impl Budget {
    pub fn with_max_size(mut self, max_size: usize) -> Self {
        self.max_size = max_size;
        self
    }

    pub fn with_max_hom(mut self, max_hom: u128) -> Self {
        self.max_hom = max_hom;
        self
    }

    pub fn with_max_candidates(mut self, max_candidates: u64) -> Self {
        self.max_candidates = max_candidates;
        self
    }

    pub fn check_size(&self, size: u128) -> Result<usize> {
        if size > self.max_size as u128 {
            return Err(Error::SizeCap {
                size,
                cap: self.max_size,
            });
        }
        Ok(size as usize)
    }

    /// Whether the hom-set `A -> B` is small enough to quantify over.
    pub fn hom_within(&self, a: &FinSet, b: &FinSet) -> bool {
        match hom_size(a, b) {
            Some(n) => n <= self.max_hom,
            None => false,
        }
    }
}

/// An explicit, ordered list of objects to quantify over.
///
/// Duplicates (by label equality) are dropped, keeping first occurrence, so
/// extending a universe never disturbs existing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Universe {
    objects: Vec<FinSet>,
    budget: Budget,
}

impl Universe {
    pub fn new(objects: Vec<FinSet>) -> Self {
        Universe::with_budget(objects, Budget::default())
    }

    pub fn with_budget(objects: Vec<FinSet>, budget: Budget) -> Self {
        let mut dedup: Vec<FinSet> = Vec::with_capacity(objects.len());
        for o in objects {
            if !dedup.contains(&o) {
                dedup.push(o);
            }
        }
        Universe {
            objects: dedup,
            budget,
        }
    }

    /// The default quantification scope: one set of each size 0 through 3.
    pub fn default_small() -> Self {
        Universe::new(vec![
            FinSet::empty(),
            FinSet::unit(),
            FinSet::canonical(2),
            FinSet::canonical(3),
        ])
    }

    pub fn objects(&self) -> &[FinSet] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &FinSet {
        &self.objects[i]
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub fn index_of(&self, s: &FinSet) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }

    pub fn require(&self, s: &FinSet) -> Result<usize> {
        self.index_of(s).ok_or_else(|| {
            Error::MissingComponent(format!("object {s} not in universe"))
        })
    }

    /// A new universe with `extra` appended (deduplicated), same budget.
    pub fn extended(&self, extra: impl IntoIterator<Item = FinSet>) -> Self {
        let mut objects = self.objects.clone();
        for o in extra {
            if !objects.contains(&o) {
                objects.push(o);
            }
        }
        Universe {
            objects,
            budget: self.budget,
        }
    }
}
