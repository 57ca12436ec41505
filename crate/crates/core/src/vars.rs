//! Variable tables: ordered variable names with exact rational weights.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// An ordered list of distinct variable names, each carrying a rational
/// weight used for weighted-degree computations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<Ratio>,
}

impl VarTable {
    pub fn new(names: Vec<String>, weights: Vec<Ratio>) -> Result<Arc<Self>> {
        if names.len() != weights.len() {
            return Err(Error::DimensionMismatch(
                "variable names and weights differ in length".into(),
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(VarTable { names, weights }))
    }

    /// Table with every weight equal to 1 (plain total degree).
    pub fn unweighted(names: &[&str]) -> Arc<Self> {
        VarTable::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![Ratio::one(); names.len()],
        )
        .expect("unweighted table")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> &Ratio {
        &self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}
