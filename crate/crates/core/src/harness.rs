//! Evaluation of vertex-local formulas and the checks that make or break
//! candidate invariants: re-evaluation along random walks, deterministic
//! witness search, and the per-move balance identity.
//!
//! A local formula assigns a rational to every vertex link; its global
//! value is the sum over vertices. A bistellar move shifts that sum by a
//! quantity expressible entirely in the old vertex links (each link of a
//! touched vertex changes by a lower-dimensional move, so its f-vector
//! moves by a known column; a 0-move adds a vertex contributing the
//! simplex-boundary value, an n-move deletes one). `balance_check`
//! computes that expression; it must equal the actual difference of sums,
//! and for an invariant formula it must vanish.

use crate::calculus::{beta, f_delta, LocalFormula};
use crate::complex::{ComplexError, FVector, SimplicialComplex};
use crate::moves::{apply_move, enumerate_moves, validate_move, BistellarMove, MoveError};
use crate::rat::Rat;
use crate::simplex::Simplex;
use crate::walk::{random_walk, WalkConfig};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("formula is for {formula}-manifolds, complex has dimension {complex}")]
    DimensionMismatch { formula: usize, complex: i32 },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn check_dimension(m: &SimplicialComplex, psi: &LocalFormula) -> Result<(), HarnessError> {
    if psi.n as i32 != m.dim() {
        return Err(HarnessError::DimensionMismatch {
            formula: psi.n,
            complex: m.dim(),
        });
    }
    Ok(())
}

/// The sum of `psi` over the f-vectors of all vertex links.
pub fn evaluate_invariant(m: &SimplicialComplex, psi: &LocalFormula) -> Result<Rat, HarnessError> {
    check_dimension(m, psi)?;
    let mut total = Rat::zero();
    for v in m.vertices() {
        let link = m.link(&Simplex::vertex(v))?;
        total += psi.eval(&link.f_vector());
    }
    Ok(total)
}

/// What a walk said about a candidate formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The sum held the same value at every step.
    Invariant(Rat),
    /// First step at which the sum moved.
    Witness {
        step: usize,
        mv: BistellarMove,
        before: Rat,
        after: Rat,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub start_value: Rat,
    pub seed: u64,
    pub steps_requested: usize,
    pub steps_applied: usize,
    pub verdict: Verdict,
}

/// Runs a seeded walk and re-evaluates the formula after every applied
/// move, stopping at the first change.
pub fn invariance_report(
    m: &SimplicialComplex,
    psi: &LocalFormula,
    cfg: &WalkConfig,
) -> Result<InvarianceReport, HarnessError> {
    check_dimension(m, psi)?;
    let start_value = evaluate_invariant(m, psi)?;
    let (_, log) = random_walk(m, cfg)?;
    let steps_applied = log.len();
    let mut cur = m.clone();
    let mut prev = start_value;
    for (step, entry) in log.entries.iter().enumerate() {
        cur = apply_move(&cur, &entry.mv)?;
        let val = evaluate_invariant(&cur, psi)?;
        if val != prev {
            return Ok(InvarianceReport {
                start_value,
                seed: cfg.seed,
                steps_requested: cfg.steps,
                steps_applied,
                verdict: Verdict::Witness {
                    step,
                    mv: entry.mv.clone(),
                    before: prev,
                    after: val,
                },
            });
        }
        prev = val;
    }
    Ok(InvarianceReport {
        start_value,
        seed: cfg.seed,
        steps_requested: cfg.steps,
        steps_applied,
        verdict: Verdict::Invariant(start_value),
    })
}

/// Deterministic witness search: scans moves index by index (0-moves
/// first, they always exist) in canonical order, and returns the first
/// move that shifts the sum, with the shift. `None` if `max_moves` moves
/// all preserve it.
pub fn find_witness(
    m: &SimplicialComplex,
    psi: &LocalFormula,
    max_moves: usize,
) -> Result<Option<(BistellarMove, Rat)>, HarnessError> {
    check_dimension(m, psi)?;
    let base = evaluate_invariant(m, psi)?;
    let n = psi.n;
    let mut scanned = 0;
    for i in 0..=n {
        for mv in enumerate_moves(m, i)? {
            if scanned >= max_moves {
                return Ok(None);
            }
            scanned += 1;
            let delta = evaluate_invariant(&apply_move(m, &mv)?, psi)? - base;
            if !delta.is_zero() {
                return Ok(Some((mv, delta)));
            }
        }
    }
    Ok(None)
}

/// The move's effect on the vertex sum, computed from the old links only:
/// every vertex of sigma sees its link move by an `i`-column, every vertex
/// of tau by an `(i-1)`-column; a 0-move's fresh vertex arrives with the
/// simplex-boundary link, an n-move's deleted vertex takes that value
/// away. Accepts any function of the link f-vector, not just affine ones.
pub fn balance_check<F>(
    m: &SimplicialComplex,
    mv: &BistellarMove,
    psi: F,
) -> Result<Rat, HarnessError>
where
    F: Fn(&FVector) -> Rat,
{
    validate_move(m, mv)?;
    let n = mv.n;
    let delta_value = psi(&f_delta(n));
    let mut total = Rat::zero();
    if mv.i < n {
        for &v in mv.sigma.vertices() {
            let f = m.link(&Simplex::vertex(v))?.f_vector();
            let shifted = beta(n, &f, mv.i).expect("link f-vector has n entries");
            total += psi(&shifted) - psi(&f);
        }
    } else {
        total -= delta_value;
    }
    if mv.i > 0 {
        for &u in mv.tau.vertices() {
            let f = m.link(&Simplex::vertex(u))?.f_vector();
            let shifted = beta(n, &f, mv.i - 1).expect("link f-vector has n entries");
            total += psi(&shifted) - psi(&f);
        }
    } else {
        total += delta_value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{boundary_simplex, cross_polytope_boundary, torus7};
    use crate::calculus::{derive_psi, euler_psi};
    use crate::rat::{rat, rat_int};

    #[test]
    fn euler_sums_match_the_euler_characteristic() {
        let s2 = boundary_simplex(3);
        assert_eq!(
            evaluate_invariant(&s2, &euler_psi(2, false)).unwrap(),
            rat_int(2)
        );
        assert_eq!(
            evaluate_invariant(&torus7(), &euler_psi(2, false)).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            evaluate_invariant(&boundary_simplex(4), &euler_psi(3, false)).unwrap(),
            rat_int(0)
        );
        // the reduced form agrees on manifolds because links are spheres
        assert_eq!(
            evaluate_invariant(&s2, &euler_psi(2, true)).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn dimension_mismatches_are_reported() {
        assert!(matches!(
            evaluate_invariant(&boundary_simplex(3), &euler_psi(3, false)),
            Err(HarnessError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn vertex_count_jumps_by_six_under_a_vertex_split() {
        // psi(f) = f_0 summed over vertices counts 2 f_1; a 0-move gains
        // three link edges and a fresh degree-3 vertex
        let m = boundary_simplex(3);
        let mv = enumerate_moves(&m, 0).unwrap().into_iter().next().unwrap();
        let psi = |f: &FVector| rat_int(f.get(0));
        assert_eq!(balance_check(&m, &mv, psi).unwrap(), rat_int(6));
    }

    #[test]
    fn balance_vanishes_for_the_euler_formula_on_every_move() {
        let euler2 = euler_psi(2, false);
        for m in [boundary_simplex(3), torus7()] {
            for i in 0..=2 {
                for mv in enumerate_moves(&m, i).unwrap() {
                    let b = balance_check(&m, &mv, |f| euler2.eval(f)).unwrap();
                    assert!(b.is_zero(), "move {:?} on {:?}", mv.i, m.f_vector());
                }
            }
        }
        let euler3 = euler_psi(3, false);
        let m = cross_polytope_boundary(4);
        for i in 0..=3 {
            for mv in enumerate_moves(&m, i).unwrap() {
                assert!(balance_check(&m, &mv, |f| euler3.eval(f)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn balance_equals_the_actual_difference_of_sums() {
        // an arbitrary affine formula, deliberately not invariant
        let lopsided = LocalFormula::new(2, vec![rat(1, 7), rat_int(1), rat(-2, 5)]);
        for m in [boundary_simplex(3), torus7()] {
            for i in 0..=2 {
                for mv in enumerate_moves(&m, i).unwrap() {
                    let lhs = balance_check(&m, &mv, |f| lopsided.eval(f)).unwrap();
                    let moved = apply_move(&m, &mv).unwrap();
                    let rhs = evaluate_invariant(&moved, &lopsided).unwrap()
                        - evaluate_invariant(&m, &lopsided).unwrap();
                    assert_eq!(lhs, rhs, "{}-move at {}", mv.i, mv.sigma);
                }
            }
        }
    }

    #[test]
    fn balance_covers_the_vertex_deleting_move() {
        // split a vertex into the tetrahedron, then delete it again
        let m = boundary_simplex(3);
        let split = enumerate_moves(&m, 0).unwrap().into_iter().next().unwrap();
        let grown = apply_move(&m, &split).unwrap();
        let deletions = enumerate_moves(&grown, 2).unwrap();
        assert!(!deletions.is_empty());
        let psi = |f: &FVector| rat_int(f.get(0));
        let mv = &deletions[0];
        let lhs = balance_check(&grown, mv, psi).unwrap();
        let shrunk = apply_move(&grown, mv).unwrap();
        let rhs = rat_int(
            shrunk
                .vertices()
                .iter()
                .map(|&v| shrunk.link(&Simplex::vertex(v)).unwrap().f_vector().get(0))
                .sum::<i64>()
                - grown
                    .vertices()
                    .iter()
                    .map(|&v| grown.link(&Simplex::vertex(v)).unwrap().f_vector().get(0))
                    .sum::<i64>(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn walks_leave_the_derived_formula_constant() {
        let report = invariance_report(
            &boundary_simplex(3),
            &derive_psi(2),
            &WalkConfig::uniform(100, 2, 2),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Invariant(rat_int(4)));
        assert_eq!(report.steps_applied, 100);
    }

    #[test]
    fn a_noninvariant_formula_is_caught_mid_walk() {
        let f0 = LocalFormula::new(2, vec![rat_int(0), rat_int(1), rat_int(0)]);
        let report = invariance_report(
            &boundary_simplex(3),
            &f0,
            &WalkConfig::uniform(100, 2, 2),
        )
        .unwrap();
        match report.verdict {
            Verdict::Witness { before, after, .. } => assert_ne!(before, after),
            Verdict::Invariant(_) => panic!("f_0 sums cannot survive a walk"),
        }
    }

    #[test]
    fn witness_search_finds_the_first_vertex_split() {
        let m = boundary_simplex(3);
        let f0 = LocalFormula::new(2, vec![rat_int(0), rat_int(1), rat_int(0)]);
        let (mv, delta) = find_witness(&m, &f0, 200).unwrap().expect("witness exists");
        assert_eq!(mv.i, 0);
        assert_eq!(mv.sigma, Simplex::from_labels(&[1, 2, 3]));
        assert_eq!(delta, rat_int(6));
        // the invariant formula survives the same scan
        assert_eq!(find_witness(&m, &derive_psi(2), 200).unwrap(), None);
    }
}
