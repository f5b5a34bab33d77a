use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `observed ≥ bound − tolerance`.
    Lower,
    /// `observed ≤ bound + tolerance`.
    Upper,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lower => "lower",
            Self::Upper => "upper",
        }
    }
}

/// Outcome of checking one inequality numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub bound: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub context: BTreeMap<String, String>,
}

impl Certificate {
    pub fn new(name: impl Into<String>, direction: Direction, bound: f64, observed: f64, tolerance: f64) -> Self {
        let passed = match direction {
            Direction::Lower => observed >= bound - tolerance,
            Direction::Upper => observed <= bound + tolerance,
        };
        let mut context = BTreeMap::new();
        context.insert("direction".to_owned(), direction.as_str().to_owned());
        Self {
            name: name.into(),
            bound,
            observed,
            tolerance,
            passed,
            context,
        }
    }

    pub fn lower(name: impl Into<String>, bound: f64, observed: f64, tolerance: f64) -> Self {
        Self::new(name, Direction::Lower, bound, observed, tolerance)
    }

    pub fn upper(name: impl Into<String>, bound: f64, observed: f64, tolerance: f64) -> Self {
        Self::new(name, Direction::Upper, bound, observed, tolerance)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.context.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn direction(&self) -> Direction {
        match self.context.get("direction").map(String::as_str) {
            Some("upper") => Direction::Upper,
            _ => Direction::Lower,
        }
    }

    /// Signed distance from the bound in the passing direction.
    pub fn margin(&self) -> f64 {
        match self.direction() {
            Direction::Lower => self.observed - self.bound,
            Direction::Upper => self.bound - self.observed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_follow_direction() {
        assert!(Certificate::lower("a", 1.0, 0.95, 0.1).passed);
        assert!(!Certificate::lower("a", 1.0, 0.85, 0.1).passed);
        assert!(Certificate::upper("b", 1.0, 1.05, 0.1).passed);
        assert!(!Certificate::upper("b", 1.0, 1.2, 0.1).passed);
        let c = Certificate::upper("b", 1.0, 0.5, 0.0).with("k", 3);
        assert_eq!(c.direction(), Direction::Upper);
        assert_eq!(c.margin(), 0.5);
        assert_eq!(c.context["k"], "3");
    }
}
