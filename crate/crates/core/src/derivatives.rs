use alloc::vec::Vec;
use core::ops::Index;

use crate::graph::NodeId;

/// Per-node derivative values from one pass, covering every node of the
/// graph. Nodes the pass never reached hold exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivatives(Vec<f64>);

impl Derivatives {
    pub(crate) fn new(values: Vec<f64>) -> Self {
        Derivatives(values)
    }

    pub fn get(&self, id: NodeId) -> Option<f64> {
        self.0.get(id.index()).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.0.iter().enumerate().map(|(i, &d)| (NodeId::new(i), d))
    }
}

impl Index<NodeId> for Derivatives {
    type Output = f64;

    fn index(&self, id: NodeId) -> &f64 {
        &self.0[id.index()]
    }
}
