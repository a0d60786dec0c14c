//! Serializable results shared by the verifiers and the command line.

use serde::{Deserialize, Serialize};

use crate::tol::MC_SIGMAS;

/// Whether a check compares two sides for equality or asserts `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Equality,
    Inequality,
}

/// Outcome of one identity on one instance.
///
/// For equalities `residual = |lhs − rhs|`; for inequalities it is the
/// violation `max(0, lhs − rhs)`. Checks whose preconditions fail on the
/// instance are kept with `applicable = false` and residual 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub kind: CheckKind,
    pub residual: f64,
    pub applicable: bool,
}

impl IdentityCheck {
    pub fn equality(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            kind: CheckKind::Equality,
            residual: (lhs - rhs).abs(),
            applicable: true,
        }
    }

    /// Records a precomputed residual for an equality.
    pub fn residual(name: &str, residual: f64) -> Self {
        Self {
            name: name.to_string(),
            kind: CheckKind::Equality,
            residual,
            applicable: true,
        }
    }

    /// Asserts `lhs ≤ rhs`.
    pub fn at_most(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            kind: CheckKind::Inequality,
            residual: (lhs - rhs).max(0.0),
            applicable: true,
        }
    }

    pub fn not_applicable(name: &str, kind: CheckKind) -> Self {
        Self {
            name: name.to_string(),
            kind,
            residual: 0.0,
            applicable: false,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        !self.applicable || self.residual <= tol
    }
}

/// One labelled summand of a Pythagorean sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub value: f64,
}

/// A sum of terms compared against its expected total.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SumReport {
    pub identity: String,
    pub terms: Vec<Term>,
    pub sum: f64,
    pub target: f64,
    /// `|sum − target|`, divided by `target` when `relative` is set.
    pub residual: f64,
    pub relative: bool,
    pub tolerance: f64,
    pub pass: bool,
    /// Standard error of the sum when the terms are Monte Carlo estimates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
}

impl SumReport {
    pub fn new(identity: &str, terms: Vec<Term>, target: f64, tolerance: f64) -> Self {
        let sum: f64 = terms.iter().map(|t| t.value).sum();
        let residual = (sum - target).abs();
        Self {
            identity: identity.to_string(),
            terms,
            sum,
            target,
            residual,
            relative: false,
            tolerance,
            pass: residual <= tolerance,
            std_error: None,
        }
    }

    /// Residual relative to the target. A zero target is a degenerate
    /// instance and passes trivially.
    pub fn relative(identity: &str, terms: Vec<Term>, target: f64, tolerance: f64) -> Self {
        let mut r = Self::new(identity, terms, target, tolerance);
        r.relative = true;
        if target == 0.0 {
            r.residual = 0.0;
        } else {
            r.residual /= target.abs();
        }
        r.pass = r.residual <= tolerance;
        r
    }

    /// Re-evaluates `pass` against a different tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = match self.std_error {
            Some(se) => self.residual <= (MC_SIGMAS * se).max(tolerance),
            None => self.residual <= tolerance,
        };
        self
    }

    /// Monte Carlo variant: passes when the residual is within
    /// [`MC_SIGMAS`](crate::tol::MC_SIGMAS) standard errors, or within
    /// `tolerance` when that is larger. `std_error` is on the scale of the
    /// residual (relative when the residual is).
    pub fn with_std_error(mut self, std_error: f64) -> Self {
        self.std_error = Some(std_error);
        self.pass = self.residual <= (MC_SIGMAS * std_error).max(self.tolerance);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_report() {
        let terms = vec![
            Term { label: "a".into(), value: 0.25 },
            Term { label: "b".into(), value: 0.75 },
        ];
        let r = SumReport::new("x", terms, 1.0, 1e-12);
        assert!(r.pass);
        assert_eq!(r.sum, 1.0);
        let json = serde_json::to_string(&r).unwrap();
        assert!(!json.contains("std_error"));
    }

    #[test]
    fn inequality_residual_is_violation() {
        assert_eq!(IdentityCheck::at_most("x", 0.2, 0.5).residual, 0.0);
        assert!((IdentityCheck::at_most("x", 0.7, 0.5).residual - 0.2).abs() < 1e-15);
        assert!(IdentityCheck::not_applicable("x", CheckKind::Equality).passes(0.0));
    }
}
