//! Closed-manifold verification by checking that every vertex link is a
//! sphere of codimension one.
//!
//! Links of dimension at most two admit exact combinatorial sphere tests
//! (two points; a single cycle; a closed connected surface with Euler
//! characteristic 2). From dimension three on, no cheap certificate
//! exists, so verification falls back on the annealing flip search and
//! may answer `Unknown`. Cheap obstructions (wrong ridge degrees, wrong
//! Euler characteristic, disconnectedness) still yield a definite `No`.

use crate::complex::SimplicialComplex;
use crate::simplex::Simplex;
use crate::walk::{sphere_recognize, AnnealSchedule, Recognition, RecognizeBudget};

/// Outcome of a verification: definite yes, definite no with a witness
/// vertex whose link fails, or inconclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldStatus {
    Verified,
    No(Simplex),
    Unknown,
}

/// Effort knobs for the heuristic part of verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyPolicy {
    /// Attempted flips granted to each high-dimensional link check.
    pub flip_budget: usize,
    pub seed: u64,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy {
            flip_budget: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    Yes,
    No,
    Unknown,
}

fn all_vertex_degrees_are(c: &SimplicialComplex, expected: usize) -> bool {
    c.vertex_facet_map().values().all(|fs| fs.len() == expected)
}

/// Exact sphere recognition for dimensions up to two; `None` above that.
pub fn is_sphere_exact(c: &SimplicialComplex) -> Option<bool> {
    match c.dim() {
        -1 => Some(c == &SimplicialComplex::minus_one_sphere()),
        0 => Some(c.f_vector().entries() == [2]),
        1 => Some(all_vertex_degrees_are(c, 2) && c.is_connected()),
        2 => Some(
            c.ridge_degrees().values().all(|&d| d == 2)
                && c.is_connected()
                && c.euler_characteristic() == 2
                && c.vertex_facet_map()
                    .keys()
                    .all(|&v| is_sphere_exact(&c.link(&Simplex::vertex(v)).expect("vertex is a face")) == Some(true)),
        ),
        _ => None,
    }
}

/// Exact ball recognition for dimensions up to two: a point, a path, or
/// a disk (connected, Euler characteristic 1, boundary a single cycle,
/// interior vertex links cycles and boundary vertex links paths).
pub fn is_ball_exact(c: &SimplicialComplex) -> Option<bool> {
    match c.dim() {
        0 => Some(c.f_vector().entries() == [1]),
        1 => {
            let degrees: Vec<usize> = c.vertex_facet_map().values().map(|fs| fs.len()).collect();
            Some(
                c.is_connected()
                    && degrees.iter().all(|&d| d == 1 || d == 2)
                    && degrees.iter().filter(|&&d| d == 1).count() == 2,
            )
        }
        2 => {
            if !c.is_connected()
                || c.euler_characteristic() != 1
                || c.ridge_degrees().values().any(|&d| d == 0 || d > 2)
            {
                return Some(false);
            }
            let Some(boundary) = c.boundary_complex() else {
                return Some(false);
            };
            if is_sphere_exact(&boundary) != Some(true) {
                return Some(false);
            }
            let on_boundary = boundary.vertex_facet_map();
            for &v in c.vertex_facet_map().keys() {
                let link = c.link(&Simplex::vertex(v)).expect("vertex is a face");
                let ok = if on_boundary.contains_key(&v) {
                    is_ball_exact(&link) == Some(true)
                } else {
                    is_sphere_exact(&link) == Some(true)
                };
                if !ok {
                    return Some(false);
                }
            }
            Some(true)
        }
        _ => None,
    }
}

fn sphere_tri(c: &SimplicialComplex, policy: &VerifyPolicy) -> Tri {
    if let Some(exact) = is_sphere_exact(c) {
        return if exact { Tri::Yes } else { Tri::No };
    }
    // definite obstructions first, so non-spheres are reported as such
    let d = c.dim();
    if c.ridge_degrees().values().any(|&x| x != 2)
        || !c.is_connected()
        || c.euler_characteristic() != 1 + if d % 2 == 0 { 1 } else { -1 }
    {
        return Tri::No;
    }
    let budget = RecognizeBudget {
        max_attempts: policy.flip_budget,
        seed: policy.seed,
        schedule: AnnealSchedule::default(),
    };
    match sphere_recognize(c, &budget) {
        Recognition::Sphere(_) => Tri::Yes,
        Recognition::Unknown => Tri::Unknown,
    }
}

/// Checks that every vertex link is a sphere of codimension one. The
/// witness in `No` is the first vertex (in label order) whose link
/// certifiably fails; if nothing fails but some link stays uncertified,
/// the answer is `Unknown`.
pub fn verify_closed_manifold(c: &SimplicialComplex, policy: &VerifyPolicy) -> ManifoldStatus {
    let mut inconclusive = false;
    for v in c.vertices() {
        let vertex = Simplex::vertex(v);
        let link = c.link(&vertex).expect("vertex is a face");
        match sphere_tri(&link, policy) {
            Tri::Yes => {}
            Tri::No => return ManifoldStatus::No(vertex),
            Tri::Unknown => inconclusive = true,
        }
    }
    if inconclusive {
        ManifoldStatus::Unknown
    } else {
        ManifoldStatus::Verified
    }
}
