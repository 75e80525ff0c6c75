//! GYO ear reduction for hypergraph (α-)acyclicity, with a replayable trace.

use serde::{Deserialize, Serialize};

use crate::attr::AttributeSet;
use crate::cover::Cover;
use crate::error::{Error, Result};

/// One reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GyoStep {
    /// `attribute` occurred only in `component` and was deleted from it.
    DeleteAttribute { attribute: usize, component: usize },
    /// `component` was deleted: empty (`into: None`) or contained in `into`.
    AbsorbComponent {
        component: usize,
        into: Option<usize>,
    },
}

/// The ordered reduction steps plus whatever hypergraph is left.
///
/// Replaying the steps from the original cover must reproduce the residual
/// exactly; the residual is empty exactly when the cover is acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyoTrace {
    pub steps: Vec<GyoStep>,
    /// Surviving components: original index plus remaining attributes.
    pub residual: Vec<(usize, AttributeSet)>,
}

/// Verdict of the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyoResult {
    pub acyclic: bool,
    pub trace: GyoTrace,
}

struct ReductionState {
    components: Vec<AttributeSet>,
    alive: Vec<bool>,
    universe_len: usize,
}

impl ReductionState {
    fn new(cover: &Cover) -> Self {
        Self {
            components: cover.components().to_vec(),
            alive: vec![true; cover.len()],
            universe_len: cover.universe_len(),
        }
    }

    fn occurrences(&self, attr: usize) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| self.alive[i] && self.components[i].contains(attr))
            .collect()
    }

    /// Finds the applicable step with the lowest (rule, index) order:
    /// attribute deletions scan attributes ascending, absorptions scan
    /// components ascending.
    fn next_step(&self) -> Option<GyoStep> {
        for attr in 0..self.universe_len {
            if let [only] = self.occurrences(attr)[..] {
                return Some(GyoStep::DeleteAttribute {
                    attribute: attr,
                    component: only,
                });
            }
        }
        for i in 0..self.components.len() {
            if !self.alive[i] {
                continue;
            }
            if self.components[i].is_empty() {
                // A lone empty component absorbs into nothing.
                let into = (0..self.components.len()).find(|&j| j != i && self.alive[j]);
                return Some(GyoStep::AbsorbComponent { component: i, into });
            }
            for j in 0..self.components.len() {
                if i == j || !self.alive[j] {
                    continue;
                }
                let contained = self.components[i].is_subset(&self.components[j]);
                // Equal components absorb rightward into the earlier one.
                if contained && (self.components[i] != self.components[j] || j < i) {
                    return Some(GyoStep::AbsorbComponent {
                        component: i,
                        into: Some(j),
                    });
                }
            }
        }
        None
    }

    /// Applies `step`, verifying its precondition still holds.
    fn apply(&mut self, step: &GyoStep) -> Result<()> {
        match *step {
            GyoStep::DeleteAttribute { attribute, component } => {
                if self.occurrences(attribute) != vec![component] {
                    return Err(Error::invalid(format!(
                        "replay failure: attribute {attribute} is not unique to component {component}"
                    )));
                }
                self.components[component].remove(attribute);
            }
            GyoStep::AbsorbComponent { component, into } => {
                if !self.alive[component] {
                    return Err(Error::invalid(format!(
                        "replay failure: component {component} already deleted"
                    )));
                }
                match into {
                    Some(j) => {
                        if !self.alive[j] || !self.components[component].is_subset(&self.components[j]) {
                            return Err(Error::invalid(format!(
                                "replay failure: component {component} is not contained in {j}"
                            )));
                        }
                    }
                    None => {
                        if !self.components[component].is_empty() {
                            return Err(Error::invalid(format!(
                                "replay failure: component {component} is not empty"
                            )));
                        }
                    }
                }
                self.alive[component] = false;
            }
        }
        Ok(())
    }

    fn residual(&self) -> Vec<(usize, AttributeSet)> {
        (0..self.components.len())
            .filter(|&i| self.alive[i])
            .map(|i| (i, self.components[i]))
            .collect()
    }
}

/// Reduces a cover by iterated ear removal: delete attributes unique to one
/// component, delete components contained in (or made empty by) another.
/// The cover is acyclic iff the reduction empties the hypergraph.
pub fn gyo_reduce(cover: &Cover) -> GyoResult {
    let mut state = ReductionState::new(cover);
    let mut steps = Vec::new();
    while let Some(step) = state.next_step() {
        state
            .apply(&step)
            .expect("a freshly derived step always applies");
        steps.push(step);
    }
    let residual = state.residual();
    GyoResult {
        acyclic: residual.is_empty(),
        trace: GyoTrace { steps, residual },
    }
}

impl GyoTrace {
    /// Replays the recorded steps against `cover` and checks the final state
    /// matches the recorded residual.
    pub fn replay(&self, cover: &Cover) -> Result<bool> {
        let mut state = ReductionState::new(cover);
        for step in &self.steps {
            state.apply(step)?;
        }
        Ok(state.residual() == self.residual)
    }
}
