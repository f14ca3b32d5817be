use serde::{Deserialize, Serialize};

/// Outcome of one named check, with the first failing basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        self.checks.push(Check {
            name: name.into(),
            passed: witness.is_none(),
            witness,
            note: None,
        });
    }

    /// Records an informational flag that does not count as a failure.
    pub fn note(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
            note: Some(note.into()),
        });
    }

    /// Records a failure explained by a note rather than a witness.
    pub fn fail(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witness: None,
            note: Some(note.into()),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn check_passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

/// Runs `test` over `0..n` and returns the first index where it fails.
pub(crate) fn first_failing(n: usize, mut test: impl FnMut(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&i| !test(i)).map(|i| vec![i])
}
