//! The median heuristic: median choice, vertex and edge classes, the
//! bunch-wise tie-breaking that produces the heuristic order, and valleys.
//!
//! Under [`MedianRule::HeuristicA`] every vertex `y` with `deg(y) >= 1`
//! satisfies the side-count identities the approximation analysis relies on:
//!
//! * odd degree: as many left edges as right edges;
//! * degree 2: one left edge, no right edge;
//! * even degree >= 4: at least one left edge, and one more right edge than
//!   left edges.

use alloc::vec;
use alloc::vec::Vec;

use crate::network::{TwoLayerNetwork, YOrder};

/// Which neighbor (1-based, in `<_X` order) becomes the median.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MedianRule {
    /// Second neighbor for degree 2, `ceil(d/2)`-th otherwise.
    #[default]
    HeuristicA,
    /// `ceil(d/2)`-th neighbor for every degree (lower median).
    FloorGeneric,
    /// `floor(d/2) + 1`-th neighbor for every degree (upper median).
    CeilGeneric,
}

impl MedianRule {
    /// 1-based index of the median among `degree >= 1` sorted neighbors.
    pub fn median_rank(self, degree: usize) -> usize {
        debug_assert!(degree >= 1);
        match self {
            MedianRule::HeuristicA if degree == 2 => 2,
            MedianRule::HeuristicA | MedianRule::FloorGeneric => degree.div_ceil(2),
            MedianRule::CeilGeneric => degree / 2 + 1,
        }
    }
}

/// Ordering inside a bunch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Degree-2 vertices by heavy neighbor, then odd vertices, then even
    /// degree >= 4 by ascending degree.
    #[default]
    Paper,
    /// Odd degree before even degree.
    EwOddFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    Two,
    Odd,
    FourPlus,
    Isolated,
}

impl VertexClass {
    pub fn of_degree(degree: usize) -> Self {
        match degree {
            0 => VertexClass::Isolated,
            2 => VertexClass::Two,
            d if d % 2 == 1 => VertexClass::Odd,
            _ => VertexClass::FourPlus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianAssignment {
    rule: MedianRule,
    // 0-based slot into `neighbors(y)`; `None` for isolated vertices.
    slot: Vec<Option<usize>>,
    median: Vec<Option<u32>>,
    class: Vec<VertexClass>,
}

impl MedianAssignment {
    pub fn rule(&self) -> MedianRule {
        self.rule
    }

    pub fn median(&self, y: u32) -> Option<u32> {
        self.median[y as usize - 1]
    }

    /// 0-based index of the median within `network.neighbors(y)`.
    pub fn median_slot(&self, y: u32) -> Option<usize> {
        self.slot[y as usize - 1]
    }

    pub fn vertex_class(&self, y: u32) -> VertexClass {
        self.class[y as usize - 1]
    }
}

pub fn compute_medians(network: &TwoLayerNetwork, rule: MedianRule) -> MedianAssignment {
    let n = network.y_count() as usize;
    let mut slot = Vec::with_capacity(n);
    let mut median = Vec::with_capacity(n);
    let mut class = Vec::with_capacity(n);
    for y in network.y_ids() {
        let nbrs = network.neighbors(y);
        let d = nbrs.len();
        class.push(VertexClass::of_degree(d));
        if d == 0 {
            slot.push(None);
            median.push(None);
        } else {
            let s = rule.median_rank(d) - 1;
            slot.push(Some(s));
            median.push(Some(nbrs[s]));
        }
    }
    MedianAssignment {
        rule,
        slot,
        median,
        class,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Median,
    Heavy,
    Light,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Median,
    Right,
}

/// Edge classes and sides, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    class: Vec<EdgeClass>,
    side: Vec<Side>,
    heavy_neighbor: Vec<Option<u32>>,
}

impl EdgeClassification {
    pub fn edge_class(&self, edge_id: usize) -> EdgeClass {
        self.class[edge_id]
    }

    pub fn side(&self, edge_id: usize) -> Side {
        self.side[edge_id]
    }

    pub fn classes(&self) -> &[EdgeClass] {
        &self.class
    }

    /// The non-median neighbor of a degree-2 vertex.
    pub fn heavy_neighbor(&self, y: u32) -> Option<u32> {
        self.heavy_neighbor[y as usize - 1]
    }
}

pub fn classify_edges(
    network: &TwoLayerNetwork,
    assignment: &MedianAssignment,
) -> EdgeClassification {
    let m = network.edge_count();
    let mut class = vec![EdgeClass::Light; m];
    let mut side = vec![Side::Median; m];
    let mut heavy_neighbor = vec![None; network.y_count() as usize];

    for y in network.y_ids() {
        let Some(med) = assignment.median(y) else {
            continue;
        };
        let two = assignment.vertex_class(y) == VertexClass::Two;
        for &id in network.incident_edges(y) {
            let x = network.edge(id).x;
            side[id] = match x.cmp(&med) {
                core::cmp::Ordering::Less => Side::Left,
                core::cmp::Ordering::Equal => Side::Median,
                core::cmp::Ordering::Greater => Side::Right,
            };
            class[id] = if x == med {
                EdgeClass::Median
            } else if two {
                heavy_neighbor[y as usize - 1] = Some(x);
                EdgeClass::Heavy
            } else {
                EdgeClass::Light
            };
        }
    }

    EdgeClassification {
        class,
        side,
        heavy_neighbor,
    }
}

/// Free vertices whose median is `x`, ascending by id.
pub fn bunch(network: &TwoLayerNetwork, assignment: &MedianAssignment, x: u32) -> Vec<u32> {
    network
        .y_ids()
        .filter(|&y| assignment.median(y) == Some(x))
        .collect()
}

/// The median heuristic's order of `Y`.
///
/// Bunches appear by ascending median. Residual ties are broken by ascending
/// id; isolated vertices come last.
pub fn heuristic_order(network: &TwoLayerNetwork, rule: MedianRule, tie_break: TieBreak) -> YOrder {
    let assignment = compute_medians(network, rule);
    order_from_assignment(network, &assignment, tie_break)
}

pub fn order_from_assignment(
    network: &TwoLayerNetwork,
    assignment: &MedianAssignment,
    tie_break: TieBreak,
) -> YOrder {
    let classification = classify_edges(network, assignment);
    let mut keyed: Vec<((u32, u8, usize), u32)> = Vec::with_capacity(network.y_count() as usize);
    let mut isolated = Vec::new();

    for y in network.y_ids() {
        let Some(med) = assignment.median(y) else {
            isolated.push(y);
            continue;
        };
        let degree = network.degree(y);
        let within = match tie_break {
            TieBreak::Paper => match assignment.vertex_class(y) {
                VertexClass::Two => (
                    0,
                    classification
                        .heavy_neighbor(y)
                        .expect("degree-2 vertex has a heavy neighbor")
                        as usize,
                ),
                VertexClass::Odd => (1, 0),
                VertexClass::FourPlus => (2, degree),
                VertexClass::Isolated => unreachable!(),
            },
            TieBreak::EwOddFirst => (u8::from(degree.is_multiple_of(2)), 0),
        };
        keyed.push(((med, within.0, within.1), y));
    }

    keyed.sort_unstable();
    let mut positions: Vec<u32> = keyed.into_iter().map(|(_, y)| y).collect();
    positions.extend(isolated);
    YOrder::from_vec_unchecked(positions)
}

/// Two edges `(w, y)` and `(x, y)` with `w < x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Valley {
    pub w: u32,
    pub y: u32,
    pub x: u32,
}

/// All valleys, grouped by `y` ascending, then by `(w, x)`.
pub fn valleys_of(network: &TwoLayerNetwork) -> Vec<Valley> {
    let mut out = Vec::new();
    for y in network.y_ids() {
        let nbrs = network.neighbors(y);
        for (i, &w) in nbrs.iter().enumerate() {
            for &x in &nbrs[i + 1..] {
                out.push(Valley { w, y, x });
            }
        }
    }
    out
}

/// Counts intrusive edges for many valleys of one network.
#[derive(Debug, Clone)]
pub struct IntrusionCounter<'a> {
    network: &'a TwoLayerNetwork,
    // prefix[x] = number of edges with fixed endpoint <= x.
    prefix: Vec<u64>,
}

impl<'a> IntrusionCounter<'a> {
    pub fn new(network: &'a TwoLayerNetwork) -> Self {
        let mut prefix = vec![0u64; network.x_count() as usize + 1];
        for e in network.edges() {
            prefix[e.x as usize] += 1;
        }
        for i in 1..prefix.len() {
            prefix[i] += prefix[i - 1];
        }
        IntrusionCounter { network, prefix }
    }

    /// Edges `(x', y')` with `y' != valley.y` and `w < x' < x`.
    pub fn count(&self, valley: &Valley) -> u64 {
        if valley.x <= valley.w + 1 {
            return 0;
        }
        let between_all = self.prefix[valley.x as usize - 1] - self.prefix[valley.w as usize];
        let nbrs = self.network.neighbors(valley.y);
        let own =
            nbrs.partition_point(|&v| v < valley.x) - nbrs.partition_point(|&v| v <= valley.w);
        between_all - own as u64
    }
}

pub fn intrusive_edge_count(network: &TwoLayerNetwork, valley: &Valley) -> u64 {
    IntrusionCounter::new(network).count(valley)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(degree: u32) -> TwoLayerNetwork {
        let pairs: Vec<(u32, u32)> = (1..=degree).map(|x| (x, 1)).collect();
        TwoLayerNetwork::from_pairs(degree, 1, &pairs).unwrap()
    }

    fn side_counts(g: &TwoLayerNetwork, c: &EdgeClassification, y: u32) -> (usize, usize) {
        let ids = g.incident_edges(y);
        (
            ids.iter().filter(|&&e| c.side(e) == Side::Left).count(),
            ids.iter().filter(|&&e| c.side(e) == Side::Right).count(),
        )
    }

    #[test]
    fn heuristic_a_medians() {
        let g = single(2);
        let a = compute_medians(&g, MedianRule::HeuristicA);
        assert_eq!(a.median(1), Some(2));
        assert_eq!(a.vertex_class(1), VertexClass::Two);

        let g = single(5);
        let a = compute_medians(&g, MedianRule::HeuristicA);
        assert_eq!(a.median(1), Some(3));
        assert_eq!(side_counts(&g, &classify_edges(&g, &a), 1), (2, 2));

        let g = single(4);
        let a = compute_medians(&g, MedianRule::HeuristicA);
        assert_eq!(a.median(1), Some(2));
        assert_eq!(a.vertex_class(1), VertexClass::FourPlus);
        assert_eq!(side_counts(&g, &classify_edges(&g, &a), 1), (1, 2));
    }

    #[test]
    fn variant_rules() {
        assert_eq!(MedianRule::FloorGeneric.median_rank(2), 1);
        assert_eq!(MedianRule::CeilGeneric.median_rank(2), 2);
        assert_eq!(MedianRule::FloorGeneric.median_rank(4), 2);
        assert_eq!(MedianRule::CeilGeneric.median_rank(4), 3);
        for d in [1, 3, 5, 7] {
            assert_eq!(
                MedianRule::FloorGeneric.median_rank(d),
                MedianRule::CeilGeneric.median_rank(d)
            );
        }
    }

    #[test]
    fn edge_classes() {
        let g = single(2);
        let c = classify_edges(&g, &compute_medians(&g, MedianRule::HeuristicA));
        assert_eq!((c.edge_class(0), c.side(0)), (EdgeClass::Heavy, Side::Left));
        assert_eq!(
            (c.edge_class(1), c.side(1)),
            (EdgeClass::Median, Side::Median)
        );
        assert_eq!(c.heavy_neighbor(1), Some(1));

        let g = single(1);
        let c = classify_edges(&g, &compute_medians(&g, MedianRule::HeuristicA));
        assert_eq!(c.edge_class(0), EdgeClass::Median);
        assert_eq!(c.heavy_neighbor(1), None);

        let g = single(3);
        let c = classify_edges(&g, &compute_medians(&g, MedianRule::HeuristicA));
        assert_eq!((c.edge_class(0), c.side(0)), (EdgeClass::Light, Side::Left));
        assert_eq!(c.edge_class(1), EdgeClass::Median);
        assert_eq!(
            (c.edge_class(2), c.side(2)),
            (EdgeClass::Light, Side::Right)
        );
    }

    #[test]
    fn bunches() {
        let g = TwoLayerNetwork::from_pairs(3, 3, &[(2, 1), (2, 2), (3, 3)]).unwrap();
        let a = compute_medians(&g, MedianRule::HeuristicA);
        assert_eq!(bunch(&g, &a, 2), vec![1, 2]);
        assert_eq!(bunch(&g, &a, 1), Vec::<u32>::new());
        assert_eq!(bunch(&g, &a, 3), vec![3]);
    }

    #[test]
    fn two_vertices_sorted_by_heavy_neighbor() {
        // y1: {5, 6}, y2: {3, 6}; both have median 6.
        let g = TwoLayerNetwork::from_pairs(6, 2, &[(5, 1), (6, 1), (3, 2), (6, 2)]).unwrap();
        let order = heuristic_order(&g, MedianRule::HeuristicA, TieBreak::Paper);
        assert_eq!(order.positions(), &[2, 1]);
    }

    #[test]
    fn bunch_classes_in_order() {
        // All medians at x = 4.
        // y1: deg 6 {2,3,4,5,6,7}  median = 3rd = 4
        // y2: deg 4 {3,4,5,6}      median = 2nd = 4
        // y3: deg 3 {1,4,7}        median 4
        // y4: deg 2 {1,4}          median 4, heavy 1
        // y5: isolated
        let g = TwoLayerNetwork::from_pairs(
            7,
            5,
            &[
                (2, 1),
                (3, 1),
                (4, 1),
                (5, 1),
                (6, 1),
                (7, 1),
                (3, 2),
                (4, 2),
                (5, 2),
                (6, 2),
                (1, 3),
                (4, 3),
                (7, 3),
                (1, 4),
                (4, 4),
            ],
        )
        .unwrap();
        let order = heuristic_order(&g, MedianRule::HeuristicA, TieBreak::Paper);
        assert_eq!(order.positions(), &[4, 3, 2, 1, 5]);
        let ew = heuristic_order(&g, MedianRule::HeuristicA, TieBreak::EwOddFirst);
        assert_eq!(ew.positions(), &[3, 1, 2, 4, 5]);
    }

    #[test]
    fn valleys_and_intrusions() {
        let g = TwoLayerNetwork::from_pairs(2, 2, &[(1, 1), (2, 1), (1, 2), (2, 2)]).unwrap();
        let vs = valleys_of(&g);
        assert_eq!(vs.len(), 2);
        assert_eq!(intrusive_edge_count(&g, &vs[0]), 0);

        // X={1,2,3}, Y={a,b}, edges (1,a),(3,a),(2,b).
        let g = TwoLayerNetwork::from_pairs(3, 2, &[(1, 1), (3, 1), (2, 2)]).unwrap();
        let vs = valleys_of(&g);
        assert_eq!(vs, vec![Valley { w: 1, y: 1, x: 3 }]);
        assert_eq!(intrusive_edge_count(&g, &vs[0]), 1);

        // Own neighbors between w and x are not intrusive.
        let g = TwoLayerNetwork::from_pairs(4, 2, &[(1, 1), (2, 1), (4, 1), (3, 2)]).unwrap();
        let c = IntrusionCounter::new(&g);
        assert_eq!(c.count(&Valley { w: 1, y: 1, x: 4 }), 1);
        assert_eq!(c.count(&Valley { w: 1, y: 1, x: 2 }), 0);
        assert_eq!(c.count(&Valley { w: 2, y: 1, x: 4 }), 1);
    }
}
