//! Bistellar (Pachner) moves.
//!
//! An `i`-move on an n-dimensional complex is determined by a pair of
//! disjoint simplices: `sigma` with `n - i + 1` vertices and `tau` with
//! `i + 1` vertices. It is admissible when `link(sigma) = boundary(tau)`
//! and `tau` is not already a face; applying it swaps the two halves of
//! the bistellar ball, replacing the facets `sigma ∪ (tau \ {u})` with
//! the facets `(sigma \ {v}) ∪ tau`. The 0-move introduces a fresh vertex
//! (`tau` is a single new label) and the n-move deletes one (`sigma` is a
//! single vertex whose star is replaced by `tau`).

use crate::complex::SimplicialComplex;
use crate::simplex::{Simplex, VertexId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("move index {i} out of range 0..={max}")]
    IndexOutOfRange { i: usize, max: usize },
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("no valid moves available for any permitted index")]
    NoValidMoves,
    #[error("the move engine requires dimension >= 2, got {0}")]
    UnsupportedDimension(i32),
    #[error("invalid walk configuration: {0}")]
    InvalidConfig(String),
}

/// One bistellar move on an `n`-dimensional complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BistellarMove {
    /// Dimension of the complex the move applies to.
    pub n: usize,
    /// Move index, `0 ..= n`.
    pub i: usize,
    /// The simplex whose star is removed; `n - i + 1` vertices.
    pub sigma: Simplex,
    /// The simplex whose star appears; `i + 1` vertices. For `i = 0` this
    /// is a single vertex not yet present in the complex.
    pub tau: Simplex,
}

impl BistellarMove {
    /// Facets removed by the move: `sigma ∪ (tau \ {u})` for `u` in `tau`.
    pub fn removed_facets(&self) -> Vec<Simplex> {
        self.tau
            .vertices()
            .iter()
            .map(|&u| self.sigma.union(&self.tau.minus_vertex(u)))
            .collect()
    }

    /// Facets added by the move: `(sigma \ {v}) ∪ tau` for `v` in `sigma`.
    pub fn added_facets(&self) -> Vec<Simplex> {
        self.sigma
            .vertices()
            .iter()
            .map(|&v| self.sigma.minus_vertex(v).union(&self.tau))
            .collect()
    }

    /// Vertices whose stars the move touches.
    pub fn support(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .sigma
            .vertices()
            .iter()
            .chain(self.tau.vertices())
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

/// The same move with the two defining simplices swapped; applying a move
/// and then its inverse restores the original facet set.
pub fn inverse_move(mv: &BistellarMove) -> BistellarMove {
    BistellarMove {
        n: mv.n,
        i: mv.n - mv.i,
        sigma: mv.tau.clone(),
        tau: mv.sigma.clone(),
    }
}

/// Checks admissibility of `mv` against `m`: shape of the data, fresh
/// vertex for 0-moves, and `link(sigma) = boundary(tau)` with `tau` not a
/// face otherwise.
pub fn validate_move(m: &SimplicialComplex, mv: &BistellarMove) -> Result<(), MoveError> {
    let n = engine_dim(m)?;
    if mv.n != n {
        return Err(MoveError::InvalidMove(format!(
            "move is for dimension {}, complex has dimension {n}",
            mv.n
        )));
    }
    if mv.i > n {
        return Err(MoveError::IndexOutOfRange { i: mv.i, max: n });
    }
    if mv.sigma.len() != n - mv.i + 1 {
        return Err(MoveError::InvalidMove(format!(
            "sigma must have {} vertices for an {}-move, got {}",
            n - mv.i + 1,
            mv.i,
            mv.sigma.len()
        )));
    }
    if mv.tau.len() != mv.i + 1 {
        return Err(MoveError::InvalidMove(format!(
            "tau must have {} vertices for an {}-move, got {}",
            mv.i + 1,
            mv.i,
            mv.tau.len()
        )));
    }
    if !mv.sigma.is_disjoint_from(&mv.tau) {
        return Err(MoveError::InvalidMove("sigma and tau overlap".into()));
    }
    if mv.i == 0 {
        let new = mv.tau.vertices()[0];
        if !m.facet_set().contains(&mv.sigma) {
            return Err(MoveError::InvalidMove(format!(
                "sigma {} is not a facet",
                mv.sigma
            )));
        }
        if m.contains_vertex(new) {
            return Err(MoveError::InvalidMove(format!(
                "vertex {new} is already present; 0-moves need a fresh label"
            )));
        }
        return Ok(());
    }
    let link = m
        .link(&mv.sigma)
        .map_err(|_| MoveError::InvalidMove(format!("sigma {} is not a face", mv.sigma)))?;
    let expected: BTreeSet<Simplex> = mv
        .tau
        .vertices()
        .iter()
        .map(|&u| mv.tau.minus_vertex(u))
        .collect();
    if link.facet_set() != &expected {
        return Err(MoveError::InvalidMove(format!(
            "link of sigma {} is not the boundary of tau {}",
            mv.sigma, mv.tau
        )));
    }
    if m.has_face(&mv.tau) {
        return Err(MoveError::InvalidMove(format!(
            "tau {} is already a face",
            mv.tau
        )));
    }
    Ok(())
}

/// Applies a validated move, returning the rewritten complex. The label
/// counter only ever advances, so 0-moves never recycle labels.
pub fn apply_move(
    m: &SimplicialComplex,
    mv: &BistellarMove,
) -> Result<SimplicialComplex, MoveError> {
    validate_move(m, mv)?;
    let mut facets = m.facet_set().clone();
    for f in mv.removed_facets() {
        let present = facets.remove(&f);
        debug_assert!(present, "validated move removes existing facets");
    }
    for f in mv.added_facets() {
        facets.insert(f);
    }
    Ok(m.with_facets(facets))
}

/// All admissible `i`-moves in canonical order (lexicographic by `sigma`).
/// Every facet admits a 0-move; its `tau` is the complex's fresh label, so
/// enumeration (and hence walking) is reproducible.
pub fn enumerate_moves(
    m: &SimplicialComplex,
    i: usize,
) -> Result<Vec<BistellarMove>, MoveError> {
    let n = engine_dim(m)?;
    if i > n {
        return Err(MoveError::IndexOutOfRange { i, max: n });
    }
    if i == 0 {
        let tau = Simplex::vertex(m.fresh_label());
        return Ok(m
            .facets()
            .map(|f| BistellarMove {
                n,
                i: 0,
                sigma: f.clone(),
                tau: tau.clone(),
            })
            .collect());
    }
    // candidate sigmas are the (n-i)-faces lying in exactly i+1 facets
    let sigma_len = n - i + 1;
    let mut containing: BTreeMap<Simplex, Vec<&Simplex>> = BTreeMap::new();
    for f in m.facets() {
        for s in f.subsets_of_len(sigma_len) {
            containing.entry(s).or_default().push(f);
        }
    }
    let mut out = Vec::new();
    for (sigma, facets) in containing {
        if facets.len() != i + 1 {
            continue;
        }
        let link_facets: Vec<Simplex> = facets.iter().map(|f| f.minus(&sigma)).collect();
        let mut tau_verts: BTreeSet<VertexId> = BTreeSet::new();
        for lf in &link_facets {
            tau_verts.extend(lf.vertices().iter().copied());
        }
        if tau_verts.len() != i + 1 {
            continue;
        }
        let tau = Simplex::new(tau_verts.into_iter().collect());
        // the i+1 link facets must be exactly the i-subsets of tau
        let expected: BTreeSet<Simplex> = tau
            .vertices()
            .iter()
            .map(|&u| tau.minus_vertex(u))
            .collect();
        let got: BTreeSet<Simplex> = link_facets.into_iter().collect();
        if got != expected {
            continue;
        }
        if m.has_face(&tau) {
            continue;
        }
        out.push(BistellarMove {
            n,
            i,
            sigma,
            tau,
        });
    }
    Ok(out)
}

/// The moves induced on vertex links: an `i`-move on the ambient complex
/// acts on the link of `v ∈ sigma` as the `i`-move with `sigma \ {v}`, and
/// on the link of `u ∈ tau` as the `(i-1)`-move with `tau \ {u}`. The
/// vertex created by a 0-move and the vertex deleted by an n-move have no
/// induced move; links of vertices outside `sigma ∪ tau` are untouched.
pub fn induced_link_moves(
    m: &SimplicialComplex,
    mv: &BistellarMove,
) -> Result<BTreeMap<VertexId, BistellarMove>, MoveError> {
    validate_move(m, mv)?;
    let mut out = BTreeMap::new();
    if mv.i < mv.n {
        for &v in mv.sigma.vertices() {
            out.insert(
                v,
                BistellarMove {
                    n: mv.n - 1,
                    i: mv.i,
                    sigma: mv.sigma.minus_vertex(v),
                    tau: mv.tau.clone(),
                },
            );
        }
    }
    if mv.i > 0 {
        for &u in mv.tau.vertices() {
            out.insert(
                u,
                BistellarMove {
                    n: mv.n - 1,
                    i: mv.i - 1,
                    sigma: mv.sigma.clone(),
                    tau: mv.tau.minus_vertex(u),
                },
            );
        }
    }
    Ok(out)
}

pub(crate) fn engine_dim(m: &SimplicialComplex) -> Result<usize, MoveError> {
    let d = m.dim();
    if d < 2 {
        return Err(MoveError::UnsupportedDimension(d));
    }
    Ok(d as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{boundary_simplex, cross_polytope_boundary};

    #[test]
    fn every_facet_offers_a_zero_move() {
        let c = boundary_simplex(3);
        let moves = enumerate_moves(&c, 0).unwrap();
        assert_eq!(moves.len(), 4);
        assert!(moves.iter().all(|mv| mv.tau == Simplex::from_labels(&[5])));
        // canonical order: sigma ascending
        let sigmas: Vec<_> = moves.iter().map(|mv| mv.sigma.clone()).collect();
        let mut sorted = sigmas.clone();
        sorted.sort();
        assert_eq!(sigmas, sorted);
    }

    #[test]
    fn the_tetrahedron_boundary_admits_no_other_moves() {
        let c = boundary_simplex(3);
        assert!(enumerate_moves(&c, 1).unwrap().is_empty());
        assert!(enumerate_moves(&c, 2).unwrap().is_empty());
        assert!(matches!(
            enumerate_moves(&c, 3),
            Err(MoveError::IndexOutOfRange { i: 3, max: 2 })
        ));
    }

    #[test]
    fn octahedron_edge_flips_are_enumerated() {
        let c = cross_polytope_boundary(3);
        let flips = enumerate_moves(&c, 1).unwrap();
        assert_eq!(flips.len(), 12, "every edge of the octahedron flips");
        for mv in &flips {
            validate_move(&c, mv).unwrap();
            // the diagonal joins an antipodal pair
            let t = mv.tau.labels();
            assert_eq!((t[0] as i32 - t[1] as i32).abs(), 3);
        }
        assert!(enumerate_moves(&c, 2).unwrap().is_empty());
    }

    #[test]
    fn zero_move_subdivides_a_facet() {
        let c = boundary_simplex(3);
        let mv = &enumerate_moves(&c, 0).unwrap()[0];
        let c2 = apply_move(&c, mv).unwrap();
        assert_eq!(c2.f_vector().entries(), &[5, 9, 6]);
        // label 5 now exists and the counter moved past it
        assert!(c2.contains_vertex(VertexId(5)));
        assert_eq!(c2.fresh_label(), VertexId(6));

        let back = apply_move(&c2, &inverse_move(mv)).unwrap();
        assert_eq!(back, c);
        // labels are not recycled after the round trip
        assert_eq!(back.fresh_label(), VertexId(6));
    }

    #[test]
    fn stale_and_malformed_moves_are_rejected() {
        let c = boundary_simplex(3);
        // diagonal already present: every vertex pair is an edge
        let flip = BistellarMove {
            n: 2,
            i: 1,
            sigma: Simplex::from_labels(&[1, 2]),
            tau: Simplex::from_labels(&[3, 4]),
        };
        assert!(matches!(
            apply_move(&c, &flip),
            Err(MoveError::InvalidMove(_))
        ));
        // 0-move with a stale label
        let stale = BistellarMove {
            n: 2,
            i: 0,
            sigma: Simplex::from_labels(&[1, 2, 3]),
            tau: Simplex::from_labels(&[4]),
        };
        assert!(matches!(
            apply_move(&c, &stale),
            Err(MoveError::InvalidMove(_))
        ));
    }

    #[test]
    fn inverse_is_an_involution() {
        let c = cross_polytope_boundary(4);
        for i in 0..=3 {
            for mv in enumerate_moves(&c, i).unwrap() {
                assert_eq!(inverse_move(&inverse_move(&mv)), mv);
            }
        }
    }

    #[test]
    fn induced_moves_of_a_zero_move_touch_only_sigma() {
        let c = boundary_simplex(4);
        let mv = &enumerate_moves(&c, 0).unwrap()[0];
        let induced = induced_link_moves(&c, mv).unwrap();
        assert_eq!(induced.len(), 4);
        for (v, imv) in &induced {
            assert!(mv.sigma.contains(*v));
            assert_eq!(imv.i, 0);
            assert_eq!(imv.n, 2);
        }
    }

    #[test]
    fn dimension_one_complexes_are_excluded() {
        let cycle = SimplicialComplex::from_facets([[1, 2], [2, 3], [1, 3]]).unwrap();
        assert!(matches!(
            enumerate_moves(&cycle, 0),
            Err(MoveError::UnsupportedDimension(1))
        ));
    }
}
