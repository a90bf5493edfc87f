//! Finite contexts: a universe of elements paired with a set of parameters.
//!
//! Every soft object in the engine is anchored to one [`Context`]. Label
//! order is fixed at construction and defines the canonical cell order used
//! for keys, witnesses, and file output, so two runs over the same input
//! always agree bit for bit.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to an immutable context.
pub type Ctx = Arc<Context>;

/// A nonempty finite universe and a nonempty finite parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    universe: Vec<String>,
    params: Vec<String>,
    elem_lookup: HashMap<String, usize>,
    param_lookup: HashMap<String, usize>,
}

impl Context {
    /// Builds a context, rejecting empty or duplicated label lists.
    pub fn new(universe: Vec<String>, params: Vec<String>) -> Result<Ctx> {
        if universe.is_empty() {
            return Err(Error::InvalidContext("universe must be nonempty".into()));
        }
        if params.is_empty() {
            return Err(Error::InvalidContext(
                "parameter set must be nonempty".into(),
            ));
        }
        let elem_lookup = index_labels(&universe, "universe")?;
        let param_lookup = index_labels(&params, "parameter")?;
        Ok(Arc::new(Context {
            universe,
            params,
            elem_lookup,
            param_lookup,
        }))
    }

    /// Convenience constructor from string slices.
    pub fn from_labels(universe: &[&str], params: &[&str]) -> Result<Ctx> {
        Context::new(
            universe.iter().map(|s| s.to_string()).collect(),
            params.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn universe_len(&self) -> usize {
        self.universe.len()
    }

    pub fn params_len(&self) -> usize {
        self.params.len()
    }

    /// Number of cells in the approximation table, `|U| * |E|`.
    pub fn cells(&self) -> usize {
        self.universe.len() * self.params.len()
    }

    pub fn universe_labels(&self) -> &[String] {
        &self.universe
    }

    pub fn param_labels(&self) -> &[String] {
        &self.params
    }

    pub fn elem_label(&self, elem: usize) -> &str {
        &self.universe[elem]
    }

    pub fn param_label(&self, param: usize) -> &str {
        &self.params[param]
    }

    pub fn elem_index(&self, label: &str) -> Option<usize> {
        self.elem_lookup.get(label).copied()
    }

    pub fn param_index(&self, label: &str) -> Option<usize> {
        self.param_lookup.get(label).copied()
    }
}

fn index_labels(labels: &[String], kind: &str) -> Result<HashMap<String, usize>> {
    let mut lookup = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if lookup.insert(label.clone(), i).is_some() {
            return Err(Error::InvalidContext(format!(
                "duplicate {kind} label {label:?}"
            )));
        }
    }
    Ok(lookup)
}

/// True when both handles denote the same context, by pointer or by value.
pub fn same_context(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_indexes() {
        let ctx = Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap();
        assert_eq!(ctx.universe_len(), 2);
        assert_eq!(ctx.params_len(), 2);
        assert_eq!(ctx.cells(), 4);
        assert_eq!(ctx.elem_index("b"), Some(1));
        assert_eq!(ctx.param_index("e1"), Some(0));
        assert_eq!(ctx.elem_index("zz"), None);
    }

    #[test]
    fn rejects_empty_universe() {
        assert!(matches!(
            Context::from_labels(&[], &["e"]),
            Err(Error::InvalidContext(_))
        ));
    }

    #[test]
    fn rejects_empty_params() {
        assert!(matches!(
            Context::from_labels(&["a"], &[]),
            Err(Error::InvalidContext(_))
        ));
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(Context::from_labels(&["a", "a"], &["e"]).is_err());
        assert!(Context::from_labels(&["a"], &["e", "e"]).is_err());
    }

    #[test]
    fn user_order_is_preserved() {
        let ctx = Context::from_labels(&["z", "a"], &["q", "p"]).unwrap();
        assert_eq!(ctx.elem_label(0), "z");
        assert_eq!(ctx.param_label(0), "q");
    }
}
