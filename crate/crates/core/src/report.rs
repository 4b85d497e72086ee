//! Structured verdicts for law checks.
//!
//! A report never hides scope: `checked` counts the instances actually
//! verified and `skipped` names every instance class left out (with the
//! reason), so "pass" always means "pass on exactly this finite scope".

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::FinFun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawStatus {
    Pass,
    Fail,
    Skipped,
}

/// A refuted instance, pinned down to element level.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// Which equation broke.
    pub law: String,
    /// Named bindings for the quantified variables, e.g. `M`, `X`, `f`.
    pub bindings: Vec<(String, String)>,
    /// The disagreeing values.
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub name: String,
    pub status: LawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Deterministically ordered counters (enumeration totals, per-law instance counts).
    pub counts: BTreeMap<String, u64>,
    /// Total number of equation instances verified.
    pub checked: u64,
    /// Instance classes that were not verified, with reasons.
    pub skipped: Vec<String>,
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn new(name: impl Into<String>) -> Self {
        LawReport {
            name: name.into(),
            status: LawStatus::Pass,
            counterexample: None,
            counts: BTreeMap::new(),
            checked: 0,
            skipped: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == LawStatus::Pass
    }

    /// Records a verified instance.
    pub fn tick(&mut self) {
        self.checked += 1;
    }

    /// Records a failing instance; the first counterexample wins.
    pub fn fail(&mut self, cx: Counterexample) {
        if self.counterexample.is_none() {
            self.counterexample = Some(cx);
        }
        self.status = LawStatus::Fail;
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.skipped.push(reason.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn count(&mut self, key: impl Into<String>, value: u64) {
        self.counts.insert(key.into(), value);
    }

    pub fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_insert(0) += 1;
    }

    /// Downgrades a vacuous pass: if nothing was verified and something was
    /// skipped, the honest status is `Skipped`, not `Pass`.
    pub fn seal(&mut self) {
        if self.status == LawStatus::Pass && self.checked == 0 && !self.skipped.is_empty() {
            self.status = LawStatus::Skipped;
        }
    }

    /// Marks the whole report as skipped (nothing checkable), keeping notes.
    pub fn mark_skipped(&mut self, reason: impl Into<String>) {
        if self.status == LawStatus::Pass && self.checked == 0 {
            self.status = LawStatus::Skipped;
        }
        self.skipped.push(reason.into());
    }

    /// Folds a sub-report in: failures and skips propagate, counts are merged
    /// under `prefix.key`.
    pub fn absorb(&mut self, prefix: &str, sub: LawReport) {
        self.checked += sub.checked;
        if let Some(cx) = sub.counterexample {
            if self.counterexample.is_none() {
                self.counterexample = Some(cx);
            }
        }
        if sub.status == LawStatus::Fail {
            self.status = LawStatus::Fail;
        }
        for s in sub.skipped {
            self.skipped.push(format!("{prefix}: {s}"));
        }
        for n in sub.notes {
            self.notes.push(format!("{prefix}: {n}"));
        }
        for (k, v) in sub.counts {
            self.counts.insert(format!("{prefix}.{k}"), v);
        }
    }
}

/// Convenience for checkers: build a counterexample from labelled bindings.
pub fn counterexample(
    law: &str,
    bindings: &[(&str, String)],
    detail: impl Into<String>,
) -> Counterexample {
    Counterexample {
        law: law.to_string(),
        bindings: bindings
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        detail: detail.into(),
    }
}

/// Compares two composites and, on disagreement, pins down the first
/// element where they differ.
pub fn eq_or(
    law: &str,
    bindings: &[(&str, String)],
    lhs: &FinFun,
    rhs: &FinFun,
) -> Option<Counterexample> {
    if lhs == rhs {
        return None;
    }
    let detail = if lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod() {
        format!(
            "boundary mismatch: {} -> {} vs {} -> {}",
            lhs.dom(),
            lhs.cod(),
            rhs.dom(),
            rhs.cod()
        )
    } else {
        let i = (0..lhs.dom().size())
            .find(|&i| lhs.apply(i) != rhs.apply(i))
            .expect("unequal functions with equal boundaries differ somewhere");
        format!(
            "at element {}: {} vs {}",
            lhs.dom().label(i),
            lhs.cod().label(lhs.apply(i)),
            rhs.cod().label(rhs.apply(i))
        )
    };
    Some(counterexample(law, bindings, detail))
}

/// Runs one law instance, turning a size-cap overflow into a recorded skip
/// rather than an error: an oversized instance limits the scope of the
/// verdict but does not invalidate it.
pub fn instance(
    report: &mut LawReport,
    describe: impl Fn() -> String,
    run: impl FnOnce() -> Result<Option<Counterexample>>,
) -> Result<()> {
    match run() {
        Ok(None) => {
            report.tick();
            Ok(())
        }
        Ok(Some(cx)) => {
            report.fail(cx);
            Ok(())
        }
        Err(Error::SizeCap { size, cap }) => {
            report.skip(format!("{}: needs {size} elements, cap {cap}", describe()));
            Ok(())
        }
        Err(e) => Err(e),
    }
}
