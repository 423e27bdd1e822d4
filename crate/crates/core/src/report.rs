use serde::Serialize;

/// Outcome of an exhaustive or sampled check: how many instances were
/// examined and which ones failed.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub checked: usize,
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn new() -> Self {
        ValidationReport {
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, violation: Option<V>) {
        self.checked += 1;
        if let Some(v) = violation {
            self.violations.push(v);
        }
    }

    pub fn merge(&mut self, other: ValidationReport<V>) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        Self::new()
    }
}
