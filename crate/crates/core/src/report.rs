use std::fmt;

/// Outcome of one named identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Number of individual equalities compared.
    pub cases: usize,
    /// First failing case, described.
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verdict of a verifier: one or more checks, all of which must pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub verifier: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(verifier: impl Into<String>) -> Self {
        Self {
            verifier: verifier.into(),
            checks: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, name: impl Into<String>, cases: usize, failure: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            cases,
            failure,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.checks
            .iter()
            .find_map(|c| c.failure.as_deref().map(|f| (c.name.as_str(), f)))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{}: {verdict}", self.verifier)?;
        for c in &self.checks {
            match &c.failure {
                None => writeln!(f, "  {}: pass ({} cases)", c.name, c.cases)?,
                Some(why) => writeln!(f, "  {}: FAIL at {why}", c.name)?,
            }
        }
        Ok(())
    }
}
