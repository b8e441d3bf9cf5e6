//! Exact crossing counts for a drawing `(<_X, order)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::network::{Edge, TwoLayerNetwork, YOrder};

/// How [`crossing_profile`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// All pairs, quadratic in the edge count.
    Oracle,
    /// Two sweeps over the order with a prefix-count index on `X`.
    #[default]
    Fast,
}

/// Per-edge crossing counts, indexed by edge id, and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingProfile {
    per_edge: Vec<u64>,
    local_crossing_number: u64,
}

impl CrossingProfile {
    fn from_counts(per_edge: Vec<u64>) -> Self {
        let local_crossing_number = per_edge.iter().copied().max().unwrap_or(0);
        CrossingProfile {
            per_edge,
            local_crossing_number,
        }
    }

    pub fn per_edge(&self) -> &[u64] {
        &self.per_edge
    }

    pub fn count(&self, edge_id: usize) -> u64 {
        self.per_edge[edge_id]
    }

    pub fn local_crossing_number(&self) -> u64 {
        self.local_crossing_number
    }

    /// Lowest edge id attaining the maximum, if there are edges.
    pub fn max_edge(&self) -> Option<usize> {
        self.per_edge
            .iter()
            .position(|&c| c == self.local_crossing_number)
    }

    /// Number of crossing pairs (each crossing is seen by both of its edges).
    pub fn total_crossings(&self) -> u64 {
        self.per_edge.iter().sum::<u64>() / 2
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.per_edge
    }
}

#[inline]
fn crosses_ranked(e1: Edge, e2: Edge, ranks: &[usize]) -> bool {
    let r1 = ranks[e1.y as usize - 1];
    let r2 = ranks[e2.y as usize - 1];
    (e1.x < e2.x && r2 < r1) || (e2.x < e1.x && r1 < r2)
}

/// Whether two edges cross in the drawing `(<_X, order)`.
///
/// Edges sharing an endpoint never cross. Both `y` endpoints must occur in
/// `order`.
pub fn edges_cross(e1: Edge, e2: Edge, order: &YOrder) -> bool {
    let pos = |y: u32| {
        order
            .positions()
            .iter()
            .position(|&v| v == y)
            .expect("edge endpoint missing from order")
    };
    let (p1, p2) = (pos(e1.y), pos(e2.y));
    (e1.x < e2.x && p2 < p1) || (e2.x < e1.x && p1 < p2)
}

pub fn crossing_profile(
    network: &TwoLayerNetwork,
    order: &YOrder,
    mode: CountMode,
) -> Result<CrossingProfile> {
    order.validate(network)?;
    let counts = match mode {
        CountMode::Oracle => oracle_counts(network, &order.ranks()),
        CountMode::Fast => {
            let mut index = Fenwick::new(network.x_count() as usize);
            let mut counts = vec![0; network.edge_count()];
            sweep_counts(network, order.positions(), &mut index, &mut counts);
            counts
        }
    };
    Ok(CrossingProfile::from_counts(counts))
}

pub fn local_crossing_number(network: &TwoLayerNetwork, order: &YOrder) -> Result<u64> {
    crossing_profile(network, order, CountMode::Fast).map(|p| p.local_crossing_number())
}

fn oracle_counts(network: &TwoLayerNetwork, ranks: &[usize]) -> Vec<u64> {
    let edges = network.edges();
    let mut counts = vec![0u64; edges.len()];
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            if crosses_ranked(edges[i], edges[j], ranks) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    counts
}

/// Fills `counts` (length = edge count) for a validated order. `index` must
/// cover `1..=x_count`; it is cleared before use.
pub(crate) fn sweep_counts(
    network: &TwoLayerNetwork,
    positions: &[u32],
    index: &mut Fenwick,
    counts: &mut [u64],
) {
    counts.iter_mut().for_each(|c| *c = 0);

    // Earlier-placed edges strictly right of x.
    index.clear();
    let mut inserted = 0u64;
    for &y in positions {
        let ids = network.incident_edges(y);
        for &id in ids {
            let x = network.edge(id).x as usize;
            counts[id] += inserted - index.prefix(x);
        }
        for &id in ids {
            index.add(network.edge(id).x as usize, 1);
        }
        inserted += ids.len() as u64;
    }

    // Later-placed edges strictly left of x.
    index.clear();
    for &y in positions.iter().rev() {
        let ids = network.incident_edges(y);
        for &id in ids {
            let x = network.edge(id).x as usize;
            counts[id] += index.prefix(x - 1);
        }
        for &id in ids {
            index.add(network.edge(id).x as usize, 1);
        }
    }
}

/// Number of edges with a free endpoint in `z_set` that cross edge `edge_id`.
///
/// `z_set` is treated as a set; repeated ids count once.
pub fn cr_restricted(
    network: &TwoLayerNetwork,
    edge_id: usize,
    z_set: &[u32],
    order: &YOrder,
) -> Result<u64> {
    order.validate(network)?;
    if edge_id >= network.edge_count() {
        return Err(Error::InvalidArgument(alloc::format!(
            "edge id {edge_id} out of range"
        )));
    }
    let mut in_z = vec![false; network.y_count() as usize];
    for &z in z_set {
        if z == 0 || z > network.y_count() {
            return Err(Error::UnknownVertex(z));
        }
        in_z[z as usize - 1] = true;
    }

    let ranks = order.ranks();
    let Edge { x, y } = network.edge(edge_id);
    let y_rank = ranks[y as usize - 1];
    let count = network
        .edges()
        .iter()
        .filter(|f| in_z[f.y as usize - 1])
        .filter(|f| {
            let z_rank = ranks[f.y as usize - 1];
            (x < f.x && z_rank < y_rank) || (f.x < x && y_rank < z_rank)
        })
        .count();
    Ok(count as u64)
}
