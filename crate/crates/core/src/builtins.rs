//! Named reference complexes.
//!
//! The corpus used across the tests and the CLI:
//!
//! | name                       | parameter | result                                        |
//! |----------------------------|-----------|-----------------------------------------------|
//! | `boundary_simplex`         | n >= 1    | boundary of the n-simplex, an (n-1)-sphere    |
//! | `cross_polytope_boundary`  | n >= 1    | boundary of the n-cross-polytope              |
//! | `torus7`                   | -         | the 7-vertex torus, f = (7, 21, 14)           |
//! | `rp2_6`                    | -         | the 6-vertex real projective plane            |
//! | `bary_boundary_simplex`    | n >= 1    | barycentric subdivision of `boundary_simplex` |

use crate::complex::{barycentric_subdivision, SimplicialComplex};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown complex name `{0}`")]
    UnknownName(String),
    #[error("`{0}` requires a dimension parameter n >= {1}")]
    MissingParameter(String, u32),
}

/// Boundary of the n-simplex on labels `1..=n+1`.
pub fn boundary_simplex(n: u32) -> SimplicialComplex {
    assert!(n >= 1);
    let all: Vec<u32> = (1..=n + 1).collect();
    let facets: Vec<Vec<u32>> = (0..=n)
        .map(|skip| {
            all.iter()
                .copied()
                .filter(|&v| v != skip + 1)
                .collect::<Vec<u32>>()
        })
        .collect();
    SimplicialComplex::from_facets(facets).expect("simplex boundary is well formed")
}

/// Boundary of the n-dimensional cross polytope: labels `i` and `i + n`
/// are antipodal; facets pick one vertex from each antipodal pair.
pub fn cross_polytope_boundary(n: u32) -> SimplicialComplex {
    assert!(n >= 1);
    let mut facets = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let facet: Vec<u32> = (0..n)
            .map(|axis| {
                if mask & (1 << axis) != 0 {
                    axis + 1 + n
                } else {
                    axis + 1
                }
            })
            .collect();
        facets.push(facet);
    }
    SimplicialComplex::from_facets(facets).expect("cross polytope boundary is well formed")
}

/// The unique 7-vertex triangulation of the torus. Every pair of vertices
/// is an edge and every vertex link is a hexagon.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::with_capacity(14);
    for i in 0..7u32 {
        facets.push(vec![i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]);
        facets.push(vec![i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1]);
    }
    SimplicialComplex::from_facets(facets).expect("torus7 is well formed")
}

/// The 6-vertex projective plane (the antipodal quotient of the
/// icosahedron): 10 triangles, every edge of K6 used twice.
pub fn rp2_6() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ])
    .expect("rp2_6 is well formed")
}

/// Looks up a corpus complex by name; `n` parameterises the families.
pub fn builtin_complex(name: &str, n: Option<u32>) -> Result<SimplicialComplex, BuiltinError> {
    let need = |min: u32| {
        n.filter(|&v| v >= min)
            .ok_or_else(|| BuiltinError::MissingParameter(name.to_string(), min))
    };
    match name {
        "boundary_simplex" => Ok(boundary_simplex(need(1)?)),
        "cross_polytope_boundary" => Ok(cross_polytope_boundary(need(1)?)),
        "torus7" => Ok(torus7()),
        "rp2_6" => Ok(rp2_6()),
        "bary_boundary_simplex" => Ok(barycentric_subdivision(&boundary_simplex(need(1)?))),
        other => Err(BuiltinError::UnknownName(other.to_string())),
    }
}

/// The corpus complexes of a given dimension, with their names. Used by
/// the exhaustive move oracles.
pub fn corpus_of_dim(dim: i32) -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = Vec::new();
    let mut push = |name: String, c: SimplicialComplex| {
        if c.dim() == dim {
            out.push((name, c));
        }
    };
    for n in 1..=6u32 {
        push(format!("boundary_simplex:{n}"), boundary_simplex(n));
        push(
            format!("cross_polytope_boundary:{n}"),
            cross_polytope_boundary(n),
        );
    }
    push("torus7".into(), torus7());
    push("rp2_6".into(), rp2_6());
    if dim == 2 {
        push(
            "bary_boundary_simplex:3".into(),
            barycentric_subdivision(&boundary_simplex(3)),
        );
    }
    out
}
