use std::fmt;

use serde::Serialize;

/// Outcome of checking one identity over many instances.
///
/// Values are kept as exact strings so a failing instance can be reproduced
/// from the report alone.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub identity: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub context: String,
    pub lhs: String,
    pub rhs: String,
}

impl Report {
    pub fn new(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            checked: 0,
            violations: Vec::new(),
        }
    }

    /// Records one instance of `lhs == rhs`.
    pub fn check<T: PartialEq + fmt::Display + ?Sized>(
        &mut self,
        context: impl FnOnce() -> String,
        lhs: &T,
        rhs: &T,
    ) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                context: context(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records an instance that failed for a reason other than unequal values.
    pub fn fail(&mut self, context: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) {
        self.checked += 1;
        self.violations.push(Violation {
            context: context.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}
