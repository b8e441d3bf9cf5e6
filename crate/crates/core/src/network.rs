//! The 2-layer network model and the solution object.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An edge from fixed-layer position `x` to free-layer vertex `y` (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub x: u32,
    pub y: u32,
}

impl Edge {
    pub const fn new(x: u32, y: u32) -> Self {
        Edge { x, y }
    }
}

/// Bipartite graph `(X, Y, E)` with `X` ordered by position.
///
/// Edge identity is the input index; every per-edge result in this crate is
/// indexed the same way. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLayerNetwork {
    x_count: u32,
    y_count: u32,
    edges: Vec<Edge>,
    // Per free vertex (index y - 1): edge ids sorted ascending by x.
    incident: Vec<Vec<usize>>,
    neighbors: Vec<Vec<u32>>,
}

impl TwoLayerNetwork {
    pub fn new(x_count: u32, y_count: u32, edges: Vec<Edge>) -> Result<Self> {
        let mut seen: BTreeMap<Edge, usize> = BTreeMap::new();
        for (index, &edge) in edges.iter().enumerate() {
            if edge.x == 0 || edge.x > x_count || edge.y == 0 || edge.y > y_count {
                return Err(Error::EdgeOutOfRange { index, edge });
            }
            if let Some(&first) = seen.get(&edge) {
                return Err(Error::DuplicateEdge {
                    first,
                    second: index,
                    edge,
                });
            }
            seen.insert(edge, index);
        }

        let mut incident = vec![Vec::new(); y_count as usize];
        for (id, edge) in edges.iter().enumerate() {
            incident[edge.y as usize - 1].push(id);
        }
        for list in &mut incident {
            list.sort_unstable_by_key(|&id| edges[id].x);
        }
        let neighbors = incident
            .iter()
            .map(|list| list.iter().map(|&id| edges[id].x).collect())
            .collect();

        Ok(TwoLayerNetwork {
            x_count,
            y_count,
            edges,
            incident,
            neighbors,
        })
    }

    /// Convenience constructor from `(x, y)` pairs.
    pub fn from_pairs(x_count: u32, y_count: u32, pairs: &[(u32, u32)]) -> Result<Self> {
        Self::new(
            x_count,
            y_count,
            pairs.iter().map(|&(x, y)| Edge::new(x, y)).collect(),
        )
    }

    pub fn x_count(&self) -> u32 {
        self.x_count
    }

    pub fn y_count(&self) -> u32 {
        self.y_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// X-neighbors of `y`, strictly increasing.
    pub fn neighbors(&self, y: u32) -> &[u32] {
        &self.neighbors[y as usize - 1]
    }

    /// Edge ids incident to `y`, in the order of [`Self::neighbors`].
    pub fn incident_edges(&self, y: u32) -> &[usize] {
        &self.incident[y as usize - 1]
    }

    pub fn degree(&self, y: u32) -> usize {
        self.neighbors[y as usize - 1].len()
    }

    pub fn find_edge(&self, x: u32, y: u32) -> Option<usize> {
        if y == 0 || y > self.y_count {
            return None;
        }
        let nbrs = self.neighbors(y);
        nbrs.binary_search(&x)
            .ok()
            .map(|i| self.incident_edges(y)[i])
    }

    pub fn y_ids(&self) -> impl Iterator<Item = u32> + '_ {
        1..=self.y_count
    }

    /// Number of neighbors of `y` strictly left of position `x`.
    pub fn neighbors_before(&self, y: u32, x: u32) -> usize {
        self.neighbors(y).partition_point(|&w| w < x)
    }

    /// Number of neighbors of `y` strictly right of position `x`.
    pub fn neighbors_after(&self, y: u32, x: u32) -> usize {
        let nbrs = self.neighbors(y);
        nbrs.len() - nbrs.partition_point(|&w| w <= x)
    }

    /// The same network with the fixed layer mirrored (`x -> x_count + 1 - x`).
    pub fn mirrored(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(self.x_count + 1 - e.x, e.y))
            .collect();
        Self::new(self.x_count, self.y_count, edges).expect("mirroring preserves validity")
    }
}

/// A linear order of the free layer, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YOrder {
    positions: Vec<u32>,
}

impl YOrder {
    /// Validates that `positions` is a permutation of `1..=network.y_count()`.
    pub fn new(network: &TwoLayerNetwork, positions: Vec<u32>) -> Result<Self> {
        let order = YOrder { positions };
        order.validate(network)?;
        Ok(order)
    }

    /// `1, 2, ..., y_count`.
    pub fn identity(y_count: u32) -> Self {
        YOrder {
            positions: (1..=y_count).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(positions: Vec<u32>) -> Self {
        YOrder { positions }
    }

    pub fn validate(&self, network: &TwoLayerNetwork) -> Result<()> {
        let n = network.y_count() as usize;
        if self.positions.len() != n {
            return Err(Error::InvalidOrder(format!(
                "order has {} entries, network has {} free vertices",
                self.positions.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &y in &self.positions {
            if y == 0 || y as usize > n {
                return Err(Error::InvalidOrder(format!("vertex {y} is out of range")));
            }
            if core::mem::replace(&mut seen[y as usize - 1], true) {
                return Err(Error::InvalidOrder(format!("vertex {y} appears twice")));
            }
        }
        Ok(())
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `rank[y - 1]` is the 0-based position of `y`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.positions.len()];
        for (i, &y) in self.positions.iter().enumerate() {
            rank[y as usize - 1] = i;
        }
        rank
    }

    pub fn reversed(&self) -> Self {
        let mut positions = self.positions.clone();
        positions.reverse();
        YOrder { positions }
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.positions
    }
}
