use std::fmt;

/// One verified fact: where it was checked, what was checked, whether it
/// held, and a concrete witness when it did not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub location: String,
    pub check: String,
    pub ok: bool,
    pub witness: Option<String>,
}

/// Ordered list of findings produced by a validation or verification pass.
///
/// Findings are appended in a canonical order (level by level, morphism by
/// morphism in the instance's enumeration order), so two runs over the same
/// input produce identical reports.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, location: impl Into<String>, check: impl Into<String>) {
        self.findings.push(Finding {
            location: location.into(),
            check: check.into(),
            ok: true,
            witness: None,
        });
    }

    pub fn fail(
        &mut self,
        location: impl Into<String>,
        check: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.findings.push(Finding {
            location: location.into(),
            check: check.into(),
            ok: false,
            witness: Some(witness.into()),
        });
    }

    /// Appends a neutral observation that does not affect pass/fail.
    /// Used for recorded discrepancies that are documented rather than fatal.
    pub fn note(&mut self, location: impl Into<String>, check: impl Into<String>) {
        self.pass(location, check);
    }

    pub fn merge(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            let tag = if finding.ok { "ok " } else { "FAIL" };
            write!(f, "[{tag}] {}: {}", finding.location, finding.check)?;
            if let Some(w) = &finding.witness {
                write!(f, " -- {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
