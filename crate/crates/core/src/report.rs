//! Pass/fail records for identity checks.

use std::fmt;

use serde::Serialize;

/// The first case where the two sides of an identity disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking an identity over a family of cases.
///
/// The check passes exactly when `counterexample` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub parameters: String,
    pub cases: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, parameters: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            parameters: parameters.into(),
            cases: 0,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one case. Only the first failing case is kept.
    pub fn check<T>(&mut self, case: impl FnOnce() -> String, lhs: &T, rhs: &T) -> bool
    where
        T: PartialEq + fmt::Display + ?Sized,
    {
        self.cases += 1;
        let ok = lhs == rhs;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                case: case(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }

    /// Folds another report's cases into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} [{}] ({} cases)",
            self.identity, self.parameters, self.cases
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  at {}: lhs = {}, rhs = {}", c.case, c.lhs, c.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_first_failure_only() {
        let mut r = VerificationReport::new("id", "none");
        assert!(r.check(|| "a".into(), &1, &1));
        assert!(!r.check(|| "b".into(), &1, &2));
        assert!(!r.check(|| "c".into(), &3, &2));
        assert_eq!(r.cases, 3);
        assert_eq!(r.counterexample.as_ref().unwrap().case, "b");
        assert!(!r.passed());
    }
}
