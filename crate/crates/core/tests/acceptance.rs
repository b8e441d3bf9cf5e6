//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use oslcm_core::generators::{
    certificate_order, hardness_instance, random_instance, soundness_probe, tightness_instance,
    DegreeSampler, ReductionArtifacts, StrictMode, ThreePartitionInstance, Violation,
};
use oslcm_core::median::IntrusionCounter;
use oslcm_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 5000;
const CORPUS_SEED: u64 = 0x0a5c_2025;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

struct CorpusEntry {
    network: TwoLayerNetwork,
    optimum: u64,
}

/// `|Y|` in 1..=7, `|X|` in 3..=12, degrees uniform in `[1, min(6, |X|)]`.
fn corpus() -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE)
        .map(|_| {
            let x_count = rng.random_range(3..=12u32);
            let y_count = rng.random_range(1..=7u32);
            let max = x_count.min(6);
            let seed = rng.random();
            let network = random_instance(
                x_count,
                y_count,
                DegreeSampler::Uniform { min: 1, max },
                seed,
            )
            .unwrap();
            let optimum = brute_force_optimum(&network).unwrap().value;
            CorpusEntry { network, optimum }
        })
        .collect()
}

fn heuristic(network: &TwoLayerNetwork) -> YOrder {
    heuristic_order(network, MedianRule::HeuristicA, TieBreak::Paper)
}

fn ac1_tightness() -> Outcome {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for k in 2..=6u32 {
        let g = tightness_instance(k).unwrap().network;
        let h = local_crossing_number(&g, &heuristic(&g)).unwrap();
        let opt = brute_force_optimum(&g).unwrap().value;
        let bnb = exact_optimum(&g, SearchBudget::unlimited()).unwrap().value;
        rows.push(format!("k={k}: heuristic {h}, optimum {opt}"));
        if h != 3 * u64::from(k) {
            failures.push(format!("k={k}: heuristic {h} != {}", 3 * k));
        }
        if opt != u64::from(k) || bnb != opt {
            failures.push(format!("k={k}: optimum {opt} (b&b {bnb}) != {k}"));
        }
    }
    let g1 = tightness_instance(1).unwrap().network;
    let h1 = local_crossing_number(&g1, &heuristic(&g1)).unwrap();
    let opt1 = brute_force_optimum(&g1).unwrap().value;
    rows.push(format!(
        "k=1 (recorded only): heuristic {h1}, optimum {opt1}, ratio {:.3}",
        h1 as f64 / opt1 as f64
    ));
    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("took {elapsed:?}"));
    }
    let detail = if failures.is_empty() {
        rows.join("; ")
    } else {
        format!("{} | measured: {}", failures.join("; "), rows.join("; "))
    };
    Outcome::new(failures.is_empty(), detail)
}

fn ac2_three_approximation(corpus: &[CorpusEntry], built_in: Duration) -> Outcome {
    let started = Instant::now();
    let mut worst = 0.0f64;
    let mut violations = 0;
    for entry in corpus {
        let h = local_crossing_number(&entry.network, &heuristic(&entry.network)).unwrap();
        if h > 3 * entry.optimum {
            violations += 1;
        }
        if entry.optimum > 0 {
            worst = worst.max(h as f64 / entry.optimum as f64);
        }
    }
    let elapsed = started.elapsed() + built_in;
    Outcome::new(
        violations == 0 && corpus.len() >= 5000 && elapsed < Duration::from_secs(300),
        format!(
            "{} instances, {violations} violations, worst ratio {worst:.3}, {elapsed:.2?}",
            corpus.len()
        ),
    )
}

fn ac3_lemmas(corpus: &[CorpusEntry]) -> Outcome {
    let (mut crossing_medians, mut median_over, mut heavy_over, mut light_over, mut valley_over) =
        (0, 0, 0, 0, 0);
    for entry in corpus {
        let g = &entry.network;
        let k = entry.optimum;
        let order = heuristic(g);
        let assignment = compute_medians(g, MedianRule::HeuristicA);
        let classes = classify_edges(g, &assignment);
        let profile = crossing_profile(g, &order, CountMode::Oracle).unwrap();

        let medians: Vec<Edge> = (0..g.edge_count())
            .filter(|&id| classes.edge_class(id) == EdgeClass::Median)
            .map(|id| g.edge(id))
            .collect();
        for (i, &e) in medians.iter().enumerate() {
            for &f in &medians[i + 1..] {
                if edges_cross(e, f, &order) {
                    crossing_medians += 1;
                }
            }
        }
        for id in 0..g.edge_count() {
            let c = profile.count(id);
            match classes.edge_class(id) {
                EdgeClass::Median if c > k => median_over += 1,
                EdgeClass::Heavy if c > 3 * k => heavy_over += 1,
                EdgeClass::Light if c > 3 * k => light_over += 1,
                _ => {}
            }
        }
        let counter = IntrusionCounter::new(g);
        valley_over += valleys_of(g)
            .iter()
            .filter(|v| counter.count(v) > 2 * k)
            .count();
    }
    let total = crossing_medians + median_over + heavy_over + light_over + valley_over;
    Outcome::new(
        total == 0,
        format!(
            "(a) crossing median pairs {crossing_medians}, (b) median > k* {median_over}, \
             (c) heavy > 3k* {heavy_over}, light > 3k* {light_over}, (d) valleys > 2k* {valley_over}"
        ),
    )
}

fn n2_reduction() -> (ReductionArtifacts, YOrder) {
    let inst = ThreePartitionInstance::new(vec![12, 13, 14, 15, 17, 19]).unwrap();
    let artifacts = hardness_instance(&inst, StrictMode::Enforce).unwrap();
    // {12, 14, 19} and {13, 15, 17} as indices.
    let order = certificate_order(&artifacts, &[[0, 2, 5], [1, 3, 4]]).unwrap();
    (artifacts, order)
}

fn ac4_completeness() -> Outcome {
    let started = Instant::now();
    let (a, order) = n2_reduction();
    let g = &a.network;
    let profile = crossing_profile(g, &order, CountMode::Fast).unwrap();
    let oracle = crossing_profile(g, &order, CountMode::Oracle).unwrap();

    let max_on = |y: u32| {
        g.incident_edges(y)
            .iter()
            .map(|&id| profile.count(id))
            .max()
            .unwrap_or(0)
    };
    let lr = max_on(a.l()).max(max_on(a.r()));
    let pp = profile.count(g.find_edge(a.p(1), a.p_prime(1)).unwrap());
    let u_max = (1..=6).map(|j| max_on(a.u(j))).max().unwrap();
    let elapsed = started.elapsed();
    let pass = a.k == 181
        && profile == oracle
        && profile.local_crossing_number() <= 181
        && lr <= 1
        && pp == 180
        && u_max <= 181
        && elapsed < Duration::from_secs(1);
    Outcome::new(
        pass,
        format!(
            "k={}, |X|={}, |Y|={}, |E|={}, max {}, l/r edges {lr}, (p_1,p'_1) {pp}, u edges {u_max}, {elapsed:.2?}",
            a.k,
            g.x_count(),
            g.y_count(),
            g.edge_count(),
            profile.local_crossing_number()
        ),
    )
}

fn ac5_soundness() -> Outcome {
    let (a, certificate) = n2_reduction();
    let g = &a.network;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut bases = vec![certificate.clone()];
    for _ in 0..20 {
        let mut ids: Vec<u32> = g.y_ids().collect();
        ids.shuffle(&mut rng);
        bases.push(YOrder::new(g, ids).unwrap());
    }

    let mut probes = 0;
    let mut min_value = u64::MAX;
    for base in &bases {
        for y in g.y_ids() {
            for violation in [Violation::BeforeL(y), Violation::AfterR(y)] {
                let skip = matches!(violation, Violation::BeforeL(v) if v == a.l())
                    || matches!(violation, Violation::AfterR(v) if v == a.r());
                if skip {
                    continue;
                }
                let (order, value) = soundness_probe(&a, base, violation).unwrap();
                // Only orders that really put something before l / after r.
                let pos = order.ranks();
                if pos[a.l() as usize - 1] == 0 && pos[a.r() as usize - 1] == order.len() - 1 {
                    continue;
                }
                probes += 1;
                min_value = min_value.min(value);
            }
        }
    }
    let (_, identity) = soundness_probe(&a, &certificate, Violation::None).unwrap();

    // n = 3: putting p'_2 before p'_1 pushes one of the two p' edges above k.
    let inst3 = ThreePartitionInstance::new(vec![13, 17, 21, 14, 18, 19, 15, 16, 20]).unwrap();
    let a3 = hardness_instance(&inst3, StrictMode::Enforce).unwrap();
    let cert3 = certificate_order(&a3, &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
    let (_, cert3_value) = soundness_probe(&a3, &cert3, Violation::None).unwrap();
    let (_, swapped) = soundness_probe(&a3, &cert3, Violation::SwapPPrime(1, 2)).unwrap();

    Outcome::new(
        min_value >= 182 && identity <= a.k && cert3_value <= a3.k && swapped > a3.k,
        format!(
            "{probes} l/r probes, smallest local crossing number {min_value} (k = {}), identity {identity}; \
             n=3 (k = {}): certificate {cert3_value}, p'_2 before p'_1 {swapped}",
            a.k, a3.k
        ),
    )
}

fn ac6_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let x_count = rng.random_range(1..=30u32);
        let y_count = rng.random_range(0..=25u32);
        let max = x_count.min(8);
        let g = random_instance(
            x_count,
            y_count,
            DegreeSampler::Uniform { min: 0, max },
            rng.random(),
        )
        .unwrap();
        let mut ids: Vec<u32> = g.y_ids().collect();
        ids.shuffle(&mut rng);
        let order = YOrder::new(&g, ids).unwrap();
        let fast = crossing_profile(&g, &order, CountMode::Fast).unwrap();
        let oracle = crossing_profile(&g, &order, CountMode::Oracle).unwrap();
        if fast.per_edge() != oracle.per_edge() {
            mismatches += 1;
        }
    }

    let big = random_instance(
        100_000,
        220_000,
        DegreeSampler::Uniform { min: 1, max: 9 },
        66,
    )
    .unwrap();
    let mut ids: Vec<u32> = big.y_ids().collect();
    ids.shuffle(&mut rng);
    let order = YOrder::new(&big, ids).unwrap();
    let started = Instant::now();
    let profile = crossing_profile(&big, &order, CountMode::Fast).unwrap();
    let elapsed = started.elapsed();
    Outcome::new(
        mismatches == 0 && big.edge_count() >= 1_000_000 && elapsed < Duration::from_secs(10),
        format!(
            "1000 pairs, {mismatches} mismatches; {} edges in {elapsed:.2?} (lcn {})",
            big.edge_count(),
            profile.local_crossing_number()
        ),
    )
}

fn ac7_decision(corpus: &[CorpusEntry]) -> Outcome {
    let mut wrong = 0;
    for entry in corpus {
        let g = &entry.network;
        let k = entry.optimum;
        match decide_k_planar(g, k, SearchBudget::unlimited()).unwrap() {
            Decision::Yes(w) => {
                let check = crossing_profile(g, &w, CountMode::Oracle).unwrap();
                if check.local_crossing_number() > k {
                    wrong += 1;
                }
            }
            _ => wrong += 1,
        }
        if k > 0 && decide_k_planar(g, k - 1, SearchBudget::unlimited()).unwrap() != Decision::No {
            wrong += 1;
        }
    }

    // Stretch: the full decision on the n = 2 reduction instance.
    let (a, _) = n2_reduction();
    let budget = SearchBudget {
        max_nodes: Some(2_000_000),
        time_limit: Some(Duration::from_secs(20)),
    };
    let started = Instant::now();
    let stretch = match decide_k_planar(&a.network, a.k, budget).unwrap() {
        Decision::Yes(w) => format!(
            "reduction k={} decided yes (witness lcn {})",
            a.k,
            local_crossing_number(&a.network, &w).unwrap()
        ),
        Decision::No => {
            wrong += 1;
            format!("reduction k={} decided NO despite a certificate", a.k)
        }
        Decision::Unknown => format!("reduction k={} unknown within budget, covered by AC5", a.k),
    };
    let below = match decide_k_planar(&a.network, a.k - 1, budget).unwrap() {
        Decision::Yes(_) => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    };
    Outcome::new(
        wrong == 0,
        format!(
            "{} instances, {wrong} wrong decisions; {stretch}, k-1 {below} in {:.2?}",
            corpus.len(),
            started.elapsed()
        ),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = corpus();
    let corpus_time = started.elapsed();

    let results = [
        ("AC1 tightness family G_k", ac1_tightness()),
        (
            "AC2 3-approximation",
            ac2_three_approximation(&corpus, corpus_time),
        ),
        ("AC3 lemma suite", ac3_lemmas(&corpus)),
        ("AC4 reduction completeness", ac4_completeness()),
        ("AC5 reduction soundness probes", ac5_soundness()),
        ("AC6 oracle equivalence", ac6_oracle_equivalence()),
        ("AC7 decision procedure", ac7_decision(&corpus)),
    ];

    let mut failed = 0;
    for (name, outcome) in &results {
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({:.2?})",
        results.len() - failed,
        started.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
