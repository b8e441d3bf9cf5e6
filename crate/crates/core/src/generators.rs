//! Instance builders: the reduction from 3-Partition (with its certificate
//! orders and soundness probes), the tightness family `G_k` for the median
//! heuristic, and seeded random instances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crossing::{crossing_profile, CountMode};
use crate::error::{Error, Result};
use crate::network::{Edge, TwoLayerNetwork, YOrder};

/// A vertex addressed by name in a generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// Fixed-layer position.
    X(u32),
    /// Free-layer id.
    Y(u32),
}

pub type NameMap = BTreeMap<String, Vertex>;

/// A multiset of `3n` positive integers with `T = sum / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    values: Vec<u64>,
    n: usize,
    target: u64,
}

impl ThreePartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(3) {
            return Err(Error::InvalidInstance(format!(
                "3-Partition needs 3n > 0 values, got {}",
                values.len()
            )));
        }
        if values.contains(&0) {
            return Err(Error::InvalidInstance("values must be positive".into()));
        }
        let n = values.len() / 3;
        let sum: u64 = values.iter().sum();
        if !sum.is_multiple_of(n as u64) {
            return Err(Error::InvalidInstance(format!(
                "sum {sum} is not divisible by n = {n}"
            )));
        }
        Ok(ThreePartitionInstance {
            values,
            n,
            target: sum / n as u64,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `T`.
    pub fn target(&self) -> u64 {
        self.target
    }

    /// Reasons the strong-hardness assumptions (distinct values,
    /// `T/4 < s < T/2`) fail; empty when they hold.
    pub fn strict_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut sorted = self.values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            out.push("values are not distinct".into());
        }
        for &s in &self.values {
            if !(4 * s > self.target && 2 * s < self.target) {
                out.push(format!("{s} is outside (T/4, T/2) for T = {}", self.target));
            }
        }
        out
    }

    pub fn is_strict(&self) -> bool {
        self.strict_violations().is_empty()
    }

    /// Some partition into triplets of indices (0-based) summing to `T`, by
    /// backtracking. Meant for small `n`.
    pub fn find_partition(&self) -> Option<Vec<[usize; 3]>> {
        let mut used = vec![false; self.values.len()];
        let mut out = Vec::with_capacity(self.n);
        self.extend_partition(&mut used, &mut out).then_some(out)
    }

    fn extend_partition(&self, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
        let Some(first) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[first] = true;
        let len = self.values.len();
        for second in first + 1..len {
            if used[second] || self.values[first] + self.values[second] >= self.target {
                continue;
            }
            used[second] = true;
            for third in second + 1..len {
                if used[third]
                    || self.values[first] + self.values[second] + self.values[third] != self.target
                {
                    continue;
                }
                used[third] = true;
                out.push([first, second, third]);
                if self.extend_partition(used, out) {
                    return true;
                }
                out.pop();
                used[third] = false;
            }
            used[second] = false;
        }
        used[first] = false;
        false
    }
}

/// What the reduction produced.
#[derive(Debug, Clone)]
pub struct ReductionArtifacts {
    pub network: TwoLayerNetwork,
    pub k: u64,
    pub n: usize,
    pub target: u64,
    pub values: Vec<u64>,
    pub name_map: NameMap,
    /// Strong-hardness assumptions that did not hold for the input.
    pub strict_violations: Vec<String>,
}

impl ReductionArtifacts {
    fn y(&self, name: &str) -> u32 {
        match self.name_map[name] {
            Vertex::Y(y) => y,
            Vertex::X(_) => unreachable!("{name} is a fixed-layer vertex"),
        }
    }

    fn x(&self, name: &str) -> u32 {
        match self.name_map[name] {
            Vertex::X(x) => x,
            Vertex::Y(_) => unreachable!("{name} is a free-layer vertex"),
        }
    }

    pub fn l(&self) -> u32 {
        self.y("l")
    }

    pub fn r(&self) -> u32 {
        self.y("r")
    }

    /// `u_j`, `j` in `1..=3n`.
    pub fn u(&self, j: usize) -> u32 {
        self.y(&format!("u_{j}"))
    }

    /// `p'_i`, `i` in `1..n`.
    pub fn p_prime(&self, i: usize) -> u32 {
        self.y(&format!("p'_{i}"))
    }

    /// Fixed-layer `p_i`.
    pub fn p(&self, i: usize) -> u32 {
        self.x(&format!("p_{i}"))
    }

    /// Fixed-layer `p''_i`.
    pub fn p_double_prime(&self, i: usize) -> u32 {
        self.x(&format!("p''_{i}"))
    }
}

/// Whether strong-hardness assumption violations abort the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StrictMode {
    Enforce,
    /// Build anyway and record the violations.
    #[default]
    Record,
}

/// Builds the One-Sided k-Planarity instance for `instance`.
///
/// Fixed layer, left to right:
/// `B, p_1, Q_1, ..., p_{n-1}, Q_{n-1}, A_1, ..., A_{3n},
///  Q''_1, p''_1, ..., Q''_{n-1}, p''_{n-1}, B''`
/// with `|B| = |B''| = k + 1`, `|Q_i| = |Q''_i| = nT`, `|A_i| = n s_i` and
/// `k = n^2 T + n - 1`. Free layer ids: `l = 1`, `r = 2`, `p'_i = 2 + i`,
/// `u_j = n + 1 + j`.
pub fn hardness_instance(
    instance: &ThreePartitionInstance,
    mode: StrictMode,
) -> Result<ReductionArtifacts> {
    let strict_violations = instance.strict_violations();
    if mode == StrictMode::Enforce && !strict_violations.is_empty() {
        return Err(Error::InvalidInstance(strict_violations.join("; ")));
    }

    let n = instance.n() as u64;
    let t = instance.target();
    let k = n * n * t + (n - 1);
    let q_len = n * t;
    let b_len = k + 1;
    let too_big = || Error::InvalidInstance("instance exceeds 32-bit vertex ids".into());

    let mut names = NameMap::new();
    let l = 1u32;
    let r = 2u32;
    names.insert("l".into(), Vertex::Y(l));
    names.insert("r".into(), Vertex::Y(r));
    let p_prime = |i: u64| 2 + i as u32;
    for i in 1..n {
        names.insert(format!("p'_{i}"), Vertex::Y(p_prime(i)));
    }
    let u = |j: usize| n as u32 + 1 + j as u32;
    for j in 1..=3 * instance.n() {
        names.insert(format!("u_{j}"), Vertex::Y(u(j)));
    }
    let y_count = 3 * n as u32 + (n as u32 - 1) + 2;

    let mut next_x: u64 = 0;
    let mut take = |names: &mut NameMap, name: String| -> u32 {
        next_x += 1;
        names.insert(name, Vertex::X(next_x as u32));
        next_x as u32
    };

    let mut l_edges = Vec::new();
    let mut r_edges = Vec::new();
    let mut p_edges = Vec::new();
    let mut u_edges = Vec::new();

    for j in 1..=b_len {
        let x = take(&mut names, format!("b_{j}"));
        l_edges.push(Edge::new(x, l));
    }
    for i in 1..n {
        let x = take(&mut names, format!("p_{i}"));
        p_edges.push(Edge::new(x, p_prime(i)));
        for j in 1..=q_len {
            let x = take(&mut names, format!("q_{i}_{j}"));
            l_edges.push(Edge::new(x, l));
        }
    }
    for (idx, &s) in instance.values().iter().enumerate() {
        let i = idx + 1;
        for j in 1..=n * s {
            let x = take(&mut names, format!("a_{i}_{j}"));
            u_edges.push(Edge::new(x, u(i)));
        }
    }
    for i in 1..n {
        for j in 1..=q_len {
            let x = take(&mut names, format!("q''_{i}_{j}"));
            r_edges.push(Edge::new(x, r));
        }
        let x = take(&mut names, format!("p''_{i}"));
        p_edges.push(Edge::new(x, p_prime(i)));
    }
    for j in 1..=b_len {
        let x = take(&mut names, format!("b''_{j}"));
        r_edges.push(Edge::new(x, r));
    }

    let x_count = u32::try_from(next_x).map_err(|_| too_big())?;
    // (p_i, p'_i) and (p''_i, p'_i) adjacent in the edge list.
    p_edges.sort_by_key(|e| (e.y, e.x));
    let mut edges = l_edges;
    edges.extend(r_edges);
    edges.extend(p_edges);
    edges.extend(u_edges);

    Ok(ReductionArtifacts {
        network: TwoLayerNetwork::new(x_count, y_count, edges)?,
        k,
        n: instance.n(),
        target: t,
        values: instance.values().to_vec(),
        name_map: names,
        strict_violations,
    })
}

/// `l, S_1's u's, p'_1, S_2's u's, ..., p'_{n-1}, S_n's u's, r`; `u`'s
/// ascending inside each group. Triplets hold 0-based indices into the values.
pub fn certificate_order(
    artifacts: &ReductionArtifacts,
    partition: &[[usize; 3]],
) -> Result<YOrder> {
    let len = artifacts.values.len();
    if partition.len() != artifacts.n {
        return Err(Error::InvalidArgument(format!(
            "expected {} triplets, got {}",
            artifacts.n,
            partition.len()
        )));
    }
    let mut seen = vec![false; len];
    for triplet in partition {
        let mut sum = 0;
        for &j in triplet {
            if j >= len || core::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidArgument(format!(
                    "index {j} is out of range or used twice"
                )));
            }
            sum += artifacts.values[j];
        }
        if sum != artifacts.target {
            return Err(Error::InvalidArgument(format!(
                "triplet {triplet:?} sums to {sum}, expected {}",
                artifacts.target
            )));
        }
    }

    let mut positions = vec![artifacts.l()];
    for (i, triplet) in partition.iter().enumerate() {
        let mut group = *triplet;
        group.sort_unstable();
        positions.extend(group.iter().map(|&j| artifacts.u(j + 1)));
        if i + 1 < artifacts.n {
            positions.push(artifacts.p_prime(i + 1));
        }
    }
    positions.push(artifacts.r());
    YOrder::new(&artifacts.network, positions)
}

/// A modification of a base order breaking one of the structural properties
/// every k-planar order of a reduction instance has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// Leave the base order unchanged.
    None,
    /// Move free vertex `y` directly before `l`.
    BeforeL(u32),
    /// Move free vertex `y` directly after `r`.
    AfterR(u32),
    /// Exchange `p'_i` and `p'_j` (1-based, `i < j`), putting `p'_j` first.
    SwapPPrime(usize, usize),
}

/// Applies `violation` to `base` and returns the order with its local
/// crossing number.
pub fn soundness_probe(
    artifacts: &ReductionArtifacts,
    base: &YOrder,
    violation: Violation,
) -> Result<(YOrder, u64)> {
    let net = &artifacts.network;
    base.validate(net)?;
    let mut positions = base.positions().to_vec();
    let (l, r) = (artifacts.l(), artifacts.r());
    let check_y = |y: u32| {
        if y == 0 || y > net.y_count() {
            Err(Error::UnknownVertex(y))
        } else {
            Ok(())
        }
    };

    match violation {
        Violation::None => {}
        Violation::BeforeL(y) => {
            check_y(y)?;
            if y == l {
                return Err(Error::InvalidArgument("cannot move l before itself".into()));
            }
            positions.retain(|&v| v != y);
            let at = positions.iter().position(|&v| v == l).expect("l is placed");
            positions.insert(at, y);
        }
        Violation::AfterR(y) => {
            check_y(y)?;
            if y == r {
                return Err(Error::InvalidArgument("cannot move r after itself".into()));
            }
            positions.retain(|&v| v != y);
            let at = positions.iter().position(|&v| v == r).expect("r is placed");
            positions.insert(at + 1, y);
        }
        Violation::SwapPPrime(i, j) => {
            if !(1 <= i && i < j && j < artifacts.n) {
                return Err(Error::InvalidArgument(format!(
                    "p' swap needs 1 <= i < j <= {}, got ({i}, {j})",
                    artifacts.n.saturating_sub(1)
                )));
            }
            let (pi, pj) = (artifacts.p_prime(i), artifacts.p_prime(j));
            let a = positions.iter().position(|&v| v == pi).expect("p' placed");
            let b = positions.iter().position(|&v| v == pj).expect("p' placed");
            if a < b {
                positions.swap(a, b);
            }
        }
    }

    let order = YOrder::new(net, positions)?;
    let value = crossing_profile(net, &order, CountMode::Fast)?.local_crossing_number();
    Ok((order, value))
}

/// The tightness network `G_k` with free ids `u = 1`, `v = 2`, `w = 3` and
/// fixed positions `x_1..x_{3k+3}`.
#[derive(Debug, Clone)]
pub struct TightnessInstance {
    pub k: u32,
    pub network: TwoLayerNetwork,
    pub name_map: NameMap,
}

impl TightnessInstance {
    pub const U: u32 = 1;
    pub const V: u32 = 2;
    pub const W: u32 = 3;
}

/// `u ~ x_1..x_k, x_{k+2}..x_{2k+2}`; `w ~ x_{k+4}..x_{2k+2}, x_{2k+4}..x_{3k+3}`;
/// `v ~ x_k, x_{k+1}, x_{2k+3}`.
pub fn tightness_instance(k: u32) -> Result<TightnessInstance> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "tightness family needs k >= 1".into(),
        ));
    }
    let (u, v, w) = (
        TightnessInstance::U,
        TightnessInstance::V,
        TightnessInstance::W,
    );
    let mut edges = Vec::new();
    edges.extend((1..=k).chain(k + 2..=2 * k + 2).map(|x| Edge::new(x, u)));
    edges.extend([k, k + 1, 2 * k + 3].map(|x| Edge::new(x, v)));
    edges.extend(
        (k + 4..=2 * k + 2)
            .chain(2 * k + 4..=3 * k + 3)
            .map(|x| Edge::new(x, w)),
    );

    let mut name_map = NameMap::new();
    name_map.insert("u".into(), Vertex::Y(u));
    name_map.insert("v".into(), Vertex::Y(v));
    name_map.insert("w".into(), Vertex::Y(w));
    for x in 1..=3 * k + 3 {
        name_map.insert(format!("x_{x}"), Vertex::X(x));
    }
    Ok(TightnessInstance {
        k,
        network: TwoLayerNetwork::new(3 * k + 3, 3, edges)?,
        name_map,
    })
}

/// Distribution of free-vertex degrees for [`random_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeSampler {
    Constant(u32),
    /// Uniform on `min..=max`.
    Uniform {
        min: u32,
        max: u32,
    },
}

impl DegreeSampler {
    fn bounds(self) -> (u32, u32) {
        match self {
            DegreeSampler::Constant(d) => (d, d),
            DegreeSampler::Uniform { min, max } => (min, max),
        }
    }
}

/// Seeded random network; each free vertex gets a sampled degree and that many
/// distinct fixed-layer neighbors chosen uniformly.
pub fn random_instance(
    x_count: u32,
    y_count: u32,
    degrees: DegreeSampler,
    seed: u64,
) -> Result<TwoLayerNetwork> {
    let (min, max) = degrees.bounds();
    if min > max {
        return Err(Error::InvalidArgument(format!(
            "degree range {min}..={max} is empty"
        )));
    }
    if y_count > 0 && max > x_count {
        return Err(Error::InvalidArgument(format!(
            "degree {max} exceeds the fixed layer size {x_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for y in 1..=y_count {
        let degree = rng.random_range(min..=max);
        let mut picks: Vec<u32> = sample(&mut rng, x_count as usize, degree as usize)
            .into_iter()
            .map(|i| i as u32 + 1)
            .collect();
        picks.sort_unstable();
        edges.extend(picks.into_iter().map(|x| Edge::new(x, y)));
    }
    TwoLayerNetwork::new(x_count, y_count, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::median::{compute_medians, heuristic_order, MedianRule, TieBreak};

    fn example() -> ThreePartitionInstance {
        ThreePartitionInstance::new(vec![12, 13, 14, 15, 17, 19]).unwrap()
    }

    #[test]
    fn three_partition_validation() {
        assert!(ThreePartitionInstance::new(vec![1, 2, 3, 4, 5]).is_err());
        assert!(ThreePartitionInstance::new(vec![]).is_err());
        assert!(ThreePartitionInstance::new(vec![1, 1, 1, 1, 1, 2]).is_err());
        assert!(ThreePartitionInstance::new(vec![0, 1, 2]).is_err());
        let inst = example();
        assert_eq!((inst.n(), inst.target()), (2, 45));
        assert!(inst.is_strict());
        let loose = ThreePartitionInstance::new(vec![1, 1, 4]).unwrap();
        assert_eq!(loose.strict_violations().len(), 4);
        assert!(hardness_instance(&loose, StrictMode::Enforce).is_err());
        assert!(!hardness_instance(&loose, StrictMode::Record)
            .unwrap()
            .strict_violations
            .is_empty());
    }

    #[test]
    fn partition_search() {
        let inst = example();
        let p = inst.find_partition().unwrap();
        for t in &p {
            assert_eq!(t.iter().map(|&j| inst.values()[j]).sum::<u64>(), 45);
        }
        let none = ThreePartitionInstance::new(vec![10, 11, 12, 13, 14, 20]).unwrap();
        assert_eq!(none.find_partition(), None);
    }

    #[test]
    fn reduction_sizes_n2() {
        let a = hardness_instance(&example(), StrictMode::Enforce).unwrap();
        assert_eq!(a.k, 181);
        assert_eq!(a.network.y_count(), 9);
        assert_eq!(a.network.x_count(), 726);
        assert_eq!(a.network.degree(a.l()), 182 + 90);
        assert_eq!(a.network.degree(a.u(1)), 24);
        assert_eq!(a.p(1), 183);
        assert_eq!(a.p_double_prime(1), 726 - 182);
    }

    #[test]
    fn certificate_rejects_bad_partition() {
        let a = hardness_instance(&example(), StrictMode::Enforce).unwrap();
        assert!(certificate_order(&a, &[[0, 1, 2], [3, 4, 5]]).is_err());
        assert!(certificate_order(&a, &[[0, 2, 5]]).is_err());
        assert!(certificate_order(&a, &[[0, 2, 5], [0, 3, 4]]).is_err());
        let order = certificate_order(&a, &[[0, 2, 5], [1, 3, 4]]).unwrap();
        assert_eq!(order.positions(), &[1, 4, 6, 9, 3, 5, 7, 8, 2]);
    }

    #[test]
    fn probe_argument_checks() {
        let a = hardness_instance(&example(), StrictMode::Enforce).unwrap();
        let base = certificate_order(&a, &[[0, 2, 5], [1, 3, 4]]).unwrap();
        assert!(soundness_probe(&a, &base, Violation::SwapPPrime(1, 2)).is_err());
        assert!(soundness_probe(&a, &base, Violation::BeforeL(a.l())).is_err());
        assert!(soundness_probe(&a, &base, Violation::AfterR(42)).is_err());
    }

    #[test]
    fn tightness_structure() {
        let g2 = tightness_instance(2).unwrap();
        let net = &g2.network;
        assert_eq!(net.x_count(), 9);
        assert_eq!(net.neighbors(1), &[1, 2, 4, 5, 6]);
        assert_eq!(net.neighbors(2), &[2, 3, 7]);
        assert_eq!(net.neighbors(3), &[6, 8, 9]);
        let a = compute_medians(net, MedianRule::HeuristicA);
        assert_eq!(
            (a.median(1), a.median(2), a.median(3)),
            (Some(4), Some(3), Some(8))
        );
        assert_eq!(
            heuristic_order(net, MedianRule::HeuristicA, TieBreak::Paper).positions(),
            &[2, 1, 3]
        );

        let g1 = tightness_instance(1).unwrap();
        assert_eq!(g1.network.neighbors(3), &[6]);
        assert!(tightness_instance(0).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let d = DegreeSampler::Uniform { min: 1, max: 4 };
        let a = random_instance(10, 6, d, 7).unwrap();
        let b = random_instance(10, 6, d, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.y_ids().all(|y| (1..=4).contains(&a.degree(y))));
        assert_ne!(a, random_instance(10, 6, d, 8).unwrap());
        assert_eq!(random_instance(5, 0, d, 1).unwrap().y_count(), 0);
        assert!(random_instance(3, 2, DegreeSampler::Constant(4), 1).is_err());
        assert!(random_instance(3, 2, DegreeSampler::Uniform { min: 3, max: 2 }, 1).is_err());
    }
}
