//! Action plans such as `visit(louvre), eat(cafe)|shop(market)`.
//!
//! Top-level commas separate steps and top-level `|` separates concurrent
//! actions inside one step. Separators nested in parentheses belong to the
//! action's arguments.

use std::collections::BTreeSet;
use std::fmt;

use crate::align::lcs_length;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanParseError {
    #[error("unmatched ')' at character {offset}")]
    UnexpectedClose { offset: usize },
    #[error("'(' at character {offset} is never closed")]
    Unclosed { offset: usize },
}

/// One plan step: a nonempty set of normalized actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step(BTreeSet<String>);

impl Step {
    /// Returns `None` if no action survives normalization.
    pub fn new<I, S>(actions: I) -> Option<Step>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set: BTreeSet<String> = actions
            .into_iter()
            .map(|a| normalize_action(a.as_ref()))
            .filter(|a| !a.is_empty())
            .collect();
        (!set.is_empty()).then_some(Step(set))
    }

    pub fn actions(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlanSequence {
    steps: Vec<Step>,
}

impl PlanSequence {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn action_set(&self) -> BTreeSet<&str> {
        self.steps.iter().flat_map(Step::actions).collect()
    }
}

/// Serializes back to the plan grammar; `parse_plan` of the result gives the
/// same plan.
impl fmt::Display for PlanSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            for (j, action) in step.actions().enumerate() {
                if j > 0 {
                    f.write_str("|")?;
                }
                f.write_str(action)?;
            }
        }
        Ok(())
    }
}

fn normalize_action(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Parses a plan string. Empty segments (such as a trailing comma) are
/// skipped.
pub fn parse_plan(text: &str) -> Result<PlanSequence, PlanParseError> {
    let mut steps = Vec::new();
    let mut actions: Vec<String> = Vec::new();
    let mut current = String::new();
    let mut open: Vec<usize> = Vec::new();

    let mut finish_step = |actions: &mut Vec<String>| {
        if let Some(step) = Step::new(actions.drain(..)) {
            steps.push(step);
        }
    };

    for (offset, c) in text.chars().enumerate() {
        match c {
            '(' => {
                open.push(offset);
                current.push(c);
            }
            ')' => {
                if open.pop().is_none() {
                    return Err(PlanParseError::UnexpectedClose { offset });
                }
                current.push(c);
            }
            ',' if open.is_empty() => {
                actions.push(std::mem::take(&mut current));
                finish_step(&mut actions);
            }
            '|' if open.is_empty() => actions.push(std::mem::take(&mut current)),
            _ => current.push(c),
        }
    }
    if let Some(&offset) = open.first() {
        return Err(PlanParseError::Unclosed { offset });
    }
    actions.push(current);
    finish_step(&mut actions);
    Ok(PlanSequence::new(steps))
}

/// Ordered agreement: LCS over steps (a match needs equal action sets),
/// divided by the longer plan's length.
pub fn planning_lcs(candidate: &PlanSequence, reference: &PlanSequence) -> f64 {
    let longest = candidate.len().max(reference.len());
    if longest == 0 {
        return 1.0;
    }
    lcs_length(candidate.steps(), reference.steps()) as f64 / longest as f64
}

/// Jaccard index of the flattened action sets.
pub fn planning_jaccard(candidate: &PlanSequence, reference: &PlanSequence) -> f64 {
    let a = candidate.action_set();
    let b = reference.action_set();
    let union = a.union(&b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}
