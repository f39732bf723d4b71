//! Seeded random composition of bistellar moves, plus the annealing flip
//! search that recognizes spheres by driving them onto a simplex boundary.
//!
//! A walk samples a move index by weight, then a move uniformly within
//! that index, and logs every application together with the resulting
//! f-vector so the run can be replayed bit-exactly. The annealed variant
//! filters proposals through a Metropolis step on the vertex-then-edge
//! count energy; that is what `sphere_recognize` runs until the complex
//! becomes isomorphic to the boundary of a simplex or the budget runs out.

use crate::builtins::boundary_simplex;
use crate::calculus::MoveDelta;
use crate::complex::{FVector, SimplicialComplex};
use crate::iso::is_isomorphic;
use crate::moves::{apply_move, engine_dim, enumerate_moves, BistellarMove, MoveError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Geometric cooling with a full reheat after a stretch of attempts that
/// fail to improve the best energy seen so far.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnealSchedule {
    pub t0: f64,
    pub cooling: f64,
    pub restart_after: usize,
}

impl Default for AnnealSchedule {
    fn default() -> Self {
        AnnealSchedule {
            t0: 3.0,
            cooling: 0.9995,
            restart_after: 500,
        }
    }
}

/// Parameters of a seeded walk. `weights[i]` is the relative probability
/// of attempting an `i`-move; with `anneal` set, each step is an attempted
/// proposal that may be rejected, otherwise every step applies a move.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkConfig {
    pub steps: usize,
    pub seed: u64,
    pub weights: Vec<f64>,
    pub anneal: Option<AnnealSchedule>,
}

impl WalkConfig {
    /// Uniform weights over all `n + 1` move indices, no annealing.
    pub fn uniform(steps: usize, seed: u64, n: usize) -> Self {
        WalkConfig {
            steps,
            seed,
            weights: vec![1.0; n + 1],
            anneal: None,
        }
    }
}

/// One applied move and the f-vector it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    pub mv: BistellarMove,
    pub f_after: FVector,
}

/// A replayable record of a walk.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveLog {
    pub seed: u64,
    pub entries: Vec<LogEntry>,
}

impl MoveLog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// How many moves of each index `0 ..= n` the log contains.
    pub fn index_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0usize; n + 1];
        for e in &self.entries {
            counts[e.mv.i] += 1;
        }
        counts
    }
}

fn check_weights(weights: &[f64], n: usize) -> Result<(), MoveError> {
    if weights.len() != n + 1 {
        return Err(MoveError::InvalidConfig(format!(
            "{} weights supplied for move indices 0..={n}",
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(MoveError::InvalidConfig(
            "weights must be finite and nonnegative".into(),
        ));
    }
    if weights.iter().all(|w| *w == 0.0) {
        return Err(MoveError::InvalidConfig(
            "at least one weight must be positive".into(),
        ));
    }
    Ok(())
}

/// Vertex count dominates, edge count breaks ties: annealing minimizes
/// this toward the simplex boundary, the unique minimizer among spheres.
fn energy(f: &FVector) -> i64 {
    f.entries()[0] * 10_000 + f.entries()[1]
}

fn energy_delta(n_param: usize, i: usize) -> i64 {
    let col = MoveDelta::column(n_param, i).expect("index in range");
    col.entries()[0] * 10_000 + col.entries()[1]
}

/// Samples an index by weight among those with a valid move, then a move
/// uniformly within the index. `None` when no index has a valid move.
fn sample_move(
    rng: &mut ChaCha8Rng,
    m: &SimplicialComplex,
    weights: &[f64],
) -> Result<Option<BistellarMove>, MoveError> {
    let n = engine_dim(m)?;
    let mut live: Vec<usize> = (0..=n).filter(|&i| weights[i] > 0.0).collect();
    while !live.is_empty() {
        let total: f64 = live.iter().map(|&i| weights[i]).sum();
        let x = rng.gen::<f64>() * total;
        let mut acc = 0.0;
        let mut chosen = *live.last().expect("nonempty");
        for &i in &live {
            acc += weights[i];
            if x < acc {
                chosen = i;
                break;
            }
        }
        let moves = enumerate_moves(m, chosen)?;
        if moves.is_empty() {
            live.retain(|&i| i != chosen);
            continue;
        }
        let pick = rng.gen_range(0..moves.len());
        return Ok(Some(moves[pick].clone()));
    }
    Ok(None)
}

/// Runs `cfg.steps` seeded steps from `m`. Without annealing every step
/// applies one move; with annealing each step is one attempted proposal,
/// accepted by the Metropolis rule, so the log may be shorter than
/// `cfg.steps`.
pub fn random_walk(
    m: &SimplicialComplex,
    cfg: &WalkConfig,
) -> Result<(SimplicialComplex, MoveLog), MoveError> {
    let n = engine_dim(m)?;
    check_weights(&cfg.weights, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cur = m.clone();
    let mut entries = Vec::new();
    let mut temperature = cfg.anneal.as_ref().map(|s| s.t0);
    for _ in 0..cfg.steps {
        let mv = match sample_move(&mut rng, &cur, &cfg.weights)? {
            Some(mv) => mv,
            None => return Err(MoveError::NoValidMoves),
        };
        if let (Some(t), Some(schedule)) = (temperature.as_mut(), cfg.anneal.as_ref()) {
            let de = energy_delta(n + 1, mv.i);
            let accept = de <= 0 || rng.gen::<f64>() < (-(de as f64) / *t).exp();
            *t *= schedule.cooling;
            if !accept {
                continue;
            }
        }
        cur = apply_move(&cur, &mv)?;
        entries.push(LogEntry {
            mv,
            f_after: cur.f_vector(),
        });
    }
    Ok((
        cur,
        MoveLog {
            seed: cfg.seed,
            entries,
        },
    ))
}

/// Applies the logged moves in order, insisting that every recorded
/// f-vector snapshot matches; returns the final complex.
pub fn replay(m: &SimplicialComplex, log: &MoveLog) -> Result<SimplicialComplex, MoveError> {
    let mut cur = m.clone();
    for (step, entry) in log.entries.iter().enumerate() {
        cur = apply_move(&cur, &entry.mv)?;
        if cur.f_vector() != entry.f_after {
            return Err(MoveError::InvalidMove(format!(
                "replay diverged at step {step}: snapshot does not match"
            )));
        }
    }
    Ok(cur)
}

/// Effort cap for `sphere_recognize`, measured in attempted proposals.
#[derive(Debug, Clone, PartialEq)]
pub struct RecognizeBudget {
    pub max_attempts: usize,
    pub seed: u64,
    pub schedule: AnnealSchedule,
}

impl Default for RecognizeBudget {
    fn default() -> Self {
        RecognizeBudget {
            max_attempts: 10_000,
            seed: 0,
            schedule: AnnealSchedule::default(),
        }
    }
}

/// Result of the flip search.
#[derive(Debug, Clone, PartialEq)]
pub enum Recognition {
    /// A replayable move log taking the input onto a complex isomorphic
    /// to the boundary of a simplex; the input is a PL sphere.
    Sphere(MoveLog),
    /// No conclusion: a cheap obstruction fired or the budget ran out.
    Unknown,
}

/// Simulated-annealing flip search. Proposals favor the locally best
/// energy change (mixed with uniform exploration); acceptance is the
/// Metropolis rule under the cooling schedule, reheated on stagnation.
/// Success is isomorphism with the boundary simplex of matching
/// dimension, checked whenever the vertex count is minimal.
pub fn sphere_recognize(m: &SimplicialComplex, budget: &RecognizeBudget) -> Recognition {
    let Ok(n) = engine_dim(m) else {
        return Recognition::Unknown;
    };
    // cheap obstructions: a sphere is closed, connected, and has the
    // right Euler characteristic
    if m.ridge_degrees().values().any(|&d| d != 2) || !m.is_connected() {
        return Recognition::Unknown;
    }
    let sphere_chi = 1 + if n % 2 == 0 { 1 } else { -1 };
    if m.euler_characteristic() != sphere_chi {
        return Recognition::Unknown;
    }
    let target = boundary_simplex(n as u32 + 1);
    let target_vertices = n as i64 + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut cur = m.clone();
    let mut entries = Vec::new();
    let mut t = budget.schedule.t0;
    let mut best = energy(&cur.f_vector());
    let mut stagnant = 0usize;
    for _ in 0..budget.max_attempts {
        if cur.f_vector().entries()[0] == target_vertices && is_isomorphic(&cur, &target).is_some()
        {
            return Recognition::Sphere(MoveLog {
                seed: budget.seed,
                entries,
            });
        }
        let per_index: Vec<Vec<BistellarMove>> = (0..=n)
            .map(|i| enumerate_moves(&cur, i).expect("index in range"))
            .collect();
        let live: Vec<usize> = (0..=n).filter(|&i| !per_index[i].is_empty()).collect();
        if live.is_empty() {
            return Recognition::Unknown;
        }
        let best_de = live
            .iter()
            .map(|&i| energy_delta(n + 1, i))
            .min()
            .expect("live nonempty");
        let greedy = rng.gen::<f64>() < 0.7;
        let pool: Vec<&BistellarMove> = live
            .iter()
            .filter(|&&i| !greedy || energy_delta(n + 1, i) == best_de)
            .flat_map(|&i| per_index[i].iter())
            .collect();
        let mv = pool[rng.gen_range(0..pool.len())].clone();
        let de = energy_delta(n + 1, mv.i);
        let accept = de <= 0 || rng.gen::<f64>() < (-(de as f64) / t).exp();
        if accept {
            cur = apply_move(&cur, &mv).expect("enumerated move applies");
            let f = cur.f_vector();
            let e = energy(&f);
            entries.push(LogEntry { mv, f_after: f });
            if e < best {
                best = e;
                stagnant = 0;
            } else {
                stagnant += 1;
            }
        } else {
            stagnant += 1;
        }
        if stagnant >= budget.schedule.restart_after {
            t = budget.schedule.t0;
            stagnant = 0;
        } else {
            t *= budget.schedule.cooling;
        }
    }
    if cur.f_vector().entries()[0] == target_vertices && is_isomorphic(&cur, &target).is_some() {
        return Recognition::Sphere(MoveLog {
            seed: budget.seed,
            entries,
        });
    }
    Recognition::Unknown
}
