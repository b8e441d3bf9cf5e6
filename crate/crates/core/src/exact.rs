//! Exact one-sided local crossing number: branch-and-bound over prefixes of
//! the free-layer order, the k-planarity decision procedure built on the same
//! search, and a plain enumeration used as ground truth.
//!
//! The search places free vertices left to right. Once a vertex `y` is placed,
//! every vertex still unplaced ends up to its right, so the final crossing
//! count of each edge of `y` is known at that moment:
//!
//! ```text
//! cr((x, y)) = sum_{z placed before y} #{nbrs of z right of x}
//!            + sum_{z placed after y}  #{nbrs of z left of x}
//! ```
//!
//! For edges of unplaced vertices the placed part is fixed and each remaining
//! vertex contributes at least `min(left, right)`, which gives an admissible
//! lower bound. Whether a placed *set* can be completed does not depend on the
//! order inside it, so sets that failed under a bound are remembered.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::crossing::{crossing_profile, sweep_counts, CountMode};
use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::median::{heuristic_order, MedianRule, TieBreak};
use crate::network::{TwoLayerNetwork, YOrder};

/// Default cap on `|Y|` for [`brute_force_optimum`].
pub const DEFAULT_ENUMERATION_CAP: usize = 9;

const MEMO_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    /// Only honoured with the `std` feature.
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const fn unlimited() -> Self {
        SearchBudget {
            max_nodes: None,
            time_limit: None,
        }
    }

    pub const fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == Some(0) || self.time_limit == Some(Duration::ZERO) {
            return Err(Error::InvalidArgument(
                "search budget must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub order: YOrder,
    pub value: u64,
    pub nodes_explored: u64,
    pub proven_optimal: bool,
}

/// Outcome of [`decide_k_planar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A verified k-planar order.
    Yes(YOrder),
    No,
    /// The budget ran out before the search finished.
    Unknown,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

pub fn exact_optimum(network: &TwoLayerNetwork, budget: SearchBudget) -> Result<ExactResult> {
    budget.validate()?;
    let start = heuristic_order(network, MedianRule::HeuristicA, TieBreak::Paper);
    let start_value = crossing_profile(network, &start, CountMode::Fast)?.local_crossing_number();

    let mut search = Search::new(network, budget);
    let mut best = (start, start_value);
    let mut complete = true;
    if start_value > 0 {
        search.bound = start_value - 1;
        complete = search.run(|search, order, value| {
            best = (order, value);
            if value == 0 {
                return Flow::Stop;
            }
            search.bound = value - 1;
            Flow::Continue
        });
    }

    let (order, value) = best;
    debug_assert_eq!(
        crossing_profile(network, &order, CountMode::Oracle)
            .map(|p| p.local_crossing_number())
            .ok(),
        Some(value)
    );
    Ok(ExactResult {
        order,
        value,
        nodes_explored: search.nodes,
        proven_optimal: complete || value == 0,
    })
}

pub fn decide_k_planar(
    network: &TwoLayerNetwork,
    k: u64,
    budget: SearchBudget,
) -> Result<Decision> {
    budget.validate()?;
    let mut search = Search::new(network, budget);
    search.bound = k;
    let mut witness = None;
    let complete = search.run(|_, order, _| {
        witness = Some(order);
        Flow::Stop
    });

    match witness {
        Some(order) => {
            let verified = crossing_profile(network, &order, CountMode::Oracle)?;
            assert!(
                verified.local_crossing_number() <= k,
                "search produced a witness that is not {k}-planar"
            );
            Ok(Decision::Yes(order))
        }
        None if complete => Ok(Decision::No),
        None => Ok(Decision::Unknown),
    }
}

pub fn brute_force_optimum(network: &TwoLayerNetwork) -> Result<ExactResult> {
    brute_force_optimum_with_cap(network, DEFAULT_ENUMERATION_CAP)
}

/// Evaluates all `|Y|!` orders (Heap's algorithm); keeps the first minimum.
pub fn brute_force_optimum_with_cap(network: &TwoLayerNetwork, cap: usize) -> Result<ExactResult> {
    let n = network.y_count() as usize;
    if n > cap {
        return Err(Error::EnumerationCapExceeded { y_count: n, cap });
    }
    let mut index = Fenwick::new(network.x_count() as usize);
    let mut counts = vec![0u64; network.edge_count()];
    let mut evaluate = |perm: &[u32]| {
        sweep_counts(network, perm, &mut index, &mut counts);
        counts.iter().copied().max().unwrap_or(0)
    };

    let mut perm: Vec<u32> = (1..=n as u32).collect();
    let mut best_value = evaluate(&perm);
    let mut best = perm.clone();
    let mut evaluated = 1u64;

    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let value = evaluate(&perm);
            evaluated += 1;
            if value < best_value {
                best_value = value;
                best.copy_from_slice(&perm);
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    Ok(ExactResult {
        order: YOrder::from_vec_unchecked(best),
        value: best_value,
        nodes_explored: evaluated,
        proven_optimal: true,
    })
}

enum Flow {
    Continue,
    Stop,
}

struct Search<'a> {
    network: &'a TwoLayerNetwork,
    budget: SearchBudget,
    #[cfg(feature = "std")]
    started: std::time::Instant,
    nodes: u64,
    aborted: bool,
    stopped: bool,
    bound: u64,
    solutions: u64,

    /// Non-isolated free vertices, in heuristic order (branching order).
    active: Vec<u32>,
    isolated: Vec<u32>,
    /// `twin_prev[i]`: an earlier active index with the same neighborhood.
    twin_prev: Vec<Option<usize>>,
    /// Per active vertex, per edge: neighbors strictly left / right of the
    /// edge's fixed endpoint (zero for the edge's own vertex).
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    /// Active index of each edge's free endpoint.
    edge_owner: Vec<usize>,
    /// Edge ids per active index.
    owned: Vec<Vec<usize>>,

    placed: Vec<bool>,
    prefix: Vec<usize>,
    fixed: Vec<u64>,
    pending_left: Vec<u64>,
    pending_min: Vec<u64>,
    failed: BTreeSet<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn new(network: &'a TwoLayerNetwork, budget: SearchBudget) -> Self {
        let start = heuristic_order(network, MedianRule::HeuristicA, TieBreak::Paper);
        let (active, isolated): (Vec<u32>, Vec<u32>) = start
            .positions()
            .iter()
            .partition(|&&y| network.degree(y) > 0);

        let mut slot = vec![usize::MAX; network.y_count() as usize];
        for (i, &y) in active.iter().enumerate() {
            slot[y as usize - 1] = i;
        }

        // Twins are ordered by id: a vertex may only be placed after its
        // lower-id twin.
        let mut twin_prev = vec![None; active.len()];
        let mut by_id: Vec<usize> = (0..active.len()).collect();
        by_id.sort_by_key(|&i| active[i]);
        for (pos, &i) in by_id.iter().enumerate() {
            twin_prev[i] = by_id[..pos]
                .iter()
                .rev()
                .find(|&&j| network.neighbors(active[j]) == network.neighbors(active[i]))
                .copied();
        }

        let m = network.edge_count();
        let edge_owner: Vec<usize> = network
            .edges()
            .iter()
            .map(|e| slot[e.y as usize - 1])
            .collect();
        let mut owned = vec![Vec::new(); active.len()];
        for (id, &o) in edge_owner.iter().enumerate() {
            owned[o].push(id);
        }

        let mut left = vec![vec![0u32; m]; active.len()];
        let mut right = vec![vec![0u32; m]; active.len()];
        for (zi, &z) in active.iter().enumerate() {
            for (id, e) in network.edges().iter().enumerate() {
                if edge_owner[id] != zi {
                    left[zi][id] = network.neighbors_before(z, e.x) as u32;
                    right[zi][id] = network.neighbors_after(z, e.x) as u32;
                }
            }
        }

        let mut pending_left = vec![0u64; m];
        let mut pending_min = vec![0u64; m];
        for id in 0..m {
            for zi in 0..active.len() {
                pending_left[id] += u64::from(left[zi][id]);
                pending_min[id] += u64::from(left[zi][id].min(right[zi][id]));
            }
        }

        Search {
            network,
            budget,
            #[cfg(feature = "std")]
            started: std::time::Instant::now(),
            nodes: 0,
            aborted: false,
            stopped: false,
            bound: 0,
            solutions: 0,
            placed: vec![false; active.len()],
            prefix: Vec::with_capacity(active.len()),
            twin_prev,
            left,
            right,
            edge_owner,
            owned,
            active,
            isolated,
            fixed: vec![0; m],
            pending_left,
            pending_min,
            failed: BTreeSet::new(),
        }
    }

    /// Runs the search, calling `on_solution` for every complete order whose
    /// value is within the current bound. Returns `true` when the search space
    /// was exhausted (or deliberately stopped) without hitting the budget.
    fn run<F>(&mut self, mut on_solution: F) -> bool
    where
        F: FnMut(&mut Self, YOrder, u64) -> Flow,
    {
        if self.root_infeasible() {
            return true;
        }
        self.descend(0, &mut on_solution);
        !self.aborted
    }

    fn root_infeasible(&self) -> bool {
        (0..self.network.edge_count()).any(|id| self.pending_min[id] > self.bound)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if let Some(max) = self.budget.max_nodes {
            if self.nodes >= max {
                self.aborted = true;
            }
        }
        #[cfg(feature = "std")]
        if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(256) && self.started.elapsed() >= limit {
                self.aborted = true;
            }
        }
        self.aborted
    }

    fn placed_key(&self) -> Vec<u64> {
        let mut key = vec![0u64; self.placed.len().div_ceil(64)];
        for (i, &p) in self.placed.iter().enumerate() {
            if p {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        key
    }

    fn descend<F>(&mut self, path_max: u64, on_solution: &mut F)
    where
        F: FnMut(&mut Self, YOrder, u64) -> Flow,
    {
        if self.prefix.len() == self.active.len() {
            let mut positions: Vec<u32> = self.prefix.iter().map(|&i| self.active[i]).collect();
            positions.extend_from_slice(&self.isolated);
            let order = YOrder::from_vec_unchecked(positions);
            self.solutions += 1;
            if let Flow::Stop = on_solution(self, order, path_max) {
                self.stopped = true;
            }
            return;
        }

        let key = self.placed_key();
        if self.failed.contains(&key) {
            return;
        }
        let solutions_before = self.solutions;

        for zi in 0..self.active.len() {
            if self.stopped || self.out_of_budget() {
                return;
            }
            if self.placed[zi] {
                continue;
            }
            if let Some(prev) = self.twin_prev[zi] {
                if !self.placed[prev] {
                    continue;
                }
            }
            self.nodes += 1;

            let bound = self.bound;
            let own_max = self.owned[zi]
                .iter()
                .map(|&id| self.fixed[id] + self.pending_left[id])
                .max()
                .unwrap_or(0);
            if own_max > bound {
                continue;
            }

            self.place(zi);
            let feasible = (0..self.network.edge_count()).all(|id| {
                self.placed[self.edge_owner[id]] || self.fixed[id] + self.pending_min[id] <= bound
            });
            if feasible {
                self.descend(path_max.max(own_max), on_solution);
            }
            self.unplace(zi);
        }

        // A solution below this set may owe its value to the order inside the
        // set, so only fruitless subtrees are remembered.
        if !self.aborted
            && !self.stopped
            && self.solutions == solutions_before
            && self.failed.len() < MEMO_LIMIT
        {
            self.failed.insert(key);
        }
    }

    fn place(&mut self, zi: usize) {
        self.placed[zi] = true;
        self.prefix.push(zi);
        for id in 0..self.fixed.len() {
            if !self.placed[self.edge_owner[id]] {
                let (l, r) = (self.left[zi][id], self.right[zi][id]);
                self.fixed[id] += u64::from(r);
                self.pending_left[id] -= u64::from(l);
                self.pending_min[id] -= u64::from(l.min(r));
            }
        }
    }

    fn unplace(&mut self, zi: usize) {
        for id in 0..self.fixed.len() {
            if !self.placed[self.edge_owner[id]] {
                let (l, r) = (self.left[zi][id], self.right[zi][id]);
                self.fixed[id] -= u64::from(r);
                self.pending_left[id] += u64::from(l);
                self.pending_min[id] += u64::from(l.min(r));
            }
        }
        self.prefix.pop();
        self.placed[zi] = false;
    }
}
