//! Gadget cells: PL balls whose boundary is the boundary of a simplex and
//! which carry, anchored at one boundary vertex, a valid interior
//! bistellar move of every index.
//!
//! Implanting such a cell into a facet of a closed manifold rewrites one
//! vertex's link by a fixed f-vector delta (the a-vector) while leaving
//! the stars of all other vertices untouched; the designated moves then
//! let the implanted region absorb a move of any index without disturbing
//! the rest of the manifold. Cells are verified, not trusted: the
//! construction is checked mechanically from scratch by `verify_gadget`.

use crate::complex::{ComplexError, SimplicialComplex};
use crate::iso::{is_isomorphic, relabel};
use crate::manifold::{is_ball_exact, is_sphere_exact};
use crate::moves::{apply_move, validate_move, BistellarMove};
use crate::simplex::{Simplex, VertexId};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("{0} is not a facet of the ambient complex")]
    NotAFacet(Simplex),
    #[error("vertex {0} is not in the chosen facet")]
    BaseNotInFacet(VertexId),
    #[error("cell interior label {0} already occurs in the ambient complex")]
    LabelClash(VertexId),
    #[error("cell has dimension {cell}, ambient complex {ambient}")]
    DimensionMismatch { cell: i32, ambient: i32 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A ball with simplex boundary, a distinguished boundary vertex, and one
/// designated interior move per index `0 ..= n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GadgetCell {
    pub cell: SimplicialComplex,
    pub base: VertexId,
    /// The `n + 1` vertices realizing the boundary simplex.
    pub boundary: Vec<VertexId>,
    /// Designated moves, one per index, each with `base` in its sigma.
    pub moves: Vec<BistellarMove>,
}

impl GadgetCell {
    pub fn n(&self) -> usize {
        self.cell.dim() as usize
    }

    /// Cell vertices not on the boundary, ascending.
    pub fn interior_vertices(&self) -> Vec<VertexId> {
        self.cell
            .vertices()
            .into_iter()
            .filter(|v| !self.boundary.contains(v))
            .collect()
    }

    /// The same cell with interior labels (and the fresh labels used by
    /// designated 0-moves) renumbered from `start`. Boundary labels stay.
    /// Pick `start` beyond every label of the complex you implant into.
    pub fn with_fresh_interior(&self, start: u32) -> GadgetCell {
        let mut map = BTreeMap::new();
        let mut next = start;
        for v in self.interior_vertices() {
            map.insert(v, VertexId(next));
            next += 1;
        }
        // labels appearing only in moves (the fresh vertices of 0-moves)
        let mut synthetic: Vec<VertexId> = self
            .moves
            .iter()
            .flat_map(|mv| mv.sigma.vertices().iter().chain(mv.tau.vertices()))
            .copied()
            .filter(|v| !self.cell.contains_vertex(*v) && !map.contains_key(v))
            .collect();
        synthetic.sort_unstable();
        synthetic.dedup();
        for v in synthetic {
            map.insert(v, VertexId(next));
            next += 1;
        }
        GadgetCell {
            cell: relabel(&self.cell, &map),
            base: self.base,
            boundary: self.boundary.clone(),
            moves: self.moves.iter().map(|mv| map_move(mv, &map)).collect(),
        }
    }
}

/// Pushes a move through a vertex relabeling (identity off the map).
pub fn map_move(mv: &BistellarMove, map: &BTreeMap<VertexId, VertexId>) -> BistellarMove {
    let through = |s: &Simplex| {
        Simplex::new(
            s.vertices()
                .iter()
                .map(|v| *map.get(v).unwrap_or(v))
                .collect(),
        )
    };
    BistellarMove {
        n: mv.n,
        i: mv.i,
        sigma: through(&mv.sigma),
        tau: through(&mv.tau),
    }
}

/// Outcome of `verify_gadget`: empty failure list means the cell is good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub failures: Vec<String>,
}

impl GadgetReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every defining property of a gadget cell from scratch: the
/// boundary is a simplex boundary containing the base, the cell is a ball
/// (interior links spheres, boundary links balls), and each designated
/// move is valid, anchored at the base, and leaves the star of every other
/// boundary vertex bitwise unchanged.
pub fn verify_gadget(k: &GadgetCell) -> GadgetReport {
    let mut failures = Vec::new();
    let mut fail = |msg: String| failures.push(msg);
    let n = k.cell.dim();
    if n < 2 {
        fail(format!("cell dimension {n} is below 2"));
        return GadgetReport { failures };
    }
    let n = n as usize;

    if k.boundary.len() != n + 1 {
        fail(format!(
            "boundary lists {} vertices, expected {}",
            k.boundary.len(),
            n + 1
        ));
    }
    if !k.boundary.contains(&k.base) {
        fail(format!("base {} is not a boundary vertex", k.base));
    }
    match k.cell.boundary_complex() {
        None => fail("cell is closed; a ball must have boundary".into()),
        Some(bd) => {
            let listed: std::collections::BTreeSet<VertexId> =
                k.boundary.iter().copied().collect();
            if bd.vertices() != listed {
                fail("listed boundary vertices differ from the boundary complex".into());
            }
            let model = crate::builtins::boundary_simplex(n as u32);
            if is_isomorphic(&bd, &model).is_none() {
                fail("boundary complex is not a simplex boundary".into());
            }
            for v in k.cell.vertices() {
                let link = k.cell.link(&Simplex::vertex(v)).expect("vertex is a face");
                let verdict = if k.boundary.contains(&v) {
                    is_ball_exact(&link)
                } else {
                    is_sphere_exact(&link)
                };
                match verdict {
                    Some(true) => {}
                    Some(false) => fail(format!("link of {v} has the wrong type")),
                    None => fail(format!("link of {v} is too high-dimensional to certify")),
                }
            }
        }
    }

    if k.moves.len() != n {
        fail(format!(
            "cell designates {} moves, expected one per index 0..={}",
            k.moves.len(),
            n - 1
        ));
    }
    for (slot, mv) in k.moves.iter().enumerate() {
        if mv.i != slot {
            fail(format!("move in slot {slot} has index {}", mv.i));
        }
        if !mv.sigma.contains(k.base) {
            fail(format!("designated {}-move does not anchor at the base", mv.i));
        }
        if let Err(e) = validate_move(&k.cell, mv) {
            fail(format!("designated {}-move is invalid: {e}", mv.i));
            continue;
        }
        let moved = apply_move(&k.cell, mv).expect("validated");
        for &b in &k.boundary {
            if b == k.base {
                continue;
            }
            let before = k.cell.star(&Simplex::vertex(b)).expect("boundary vertex");
            let after = moved.star(&Simplex::vertex(b)).expect("boundary vertex");
            if before != after {
                fail(format!(
                    "designated {}-move disturbs the star of boundary vertex {b}",
                    mv.i
                ));
            }
        }
    }
    GadgetReport { failures }
}

/// The change a cell inflicts on the f-vector of the link of the vertex
/// it is implanted at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AVector {
    pub n: usize,
    pub entries: Vec<i64>,
}

/// Entry `i` counts the base-link faces the implantation contributes:
/// faces of the base's link in the cell, minus those already in the
/// boundary, minus the one facet opposite the base that the gluing
/// removes from the ambient link.
pub fn a_vector(k: &GadgetCell) -> AVector {
    let n = k.n();
    let in_cell = k
        .cell
        .link(&Simplex::vertex(k.base))
        .expect("base is a vertex")
        .f_vector();
    let bd = k.cell.boundary_complex().expect("cell has boundary");
    let in_bd = bd
        .link(&Simplex::vertex(k.base))
        .expect("base is on the boundary")
        .f_vector();
    let entries = (0..n as i32)
        .map(|i| in_cell.get(i) - in_bd.get(i) - i64::from(i == n as i32 - 1))
        .collect();
    AVector { n, entries }
}

/// Replaces `facet` of `m` by the cell, gluing the cell's boundary onto
/// the facet's boundary with `base` landing on `v` and the remaining
/// boundary vertices matched in ascending order. Returns the rewritten
/// complex together with the boundary-to-ambient vertex map (interior
/// labels map to themselves and are omitted).
pub fn implant_gadget(
    m: &SimplicialComplex,
    facet: &Simplex,
    v: VertexId,
    k: &GadgetCell,
) -> Result<(SimplicialComplex, BTreeMap<VertexId, VertexId>), GadgetError> {
    if k.cell.dim() != m.dim() {
        return Err(GadgetError::DimensionMismatch {
            cell: k.cell.dim(),
            ambient: m.dim(),
        });
    }
    if !m.facet_set().contains(facet) {
        return Err(GadgetError::NotAFacet(facet.clone()));
    }
    if !facet.contains(v) {
        return Err(GadgetError::BaseNotInFacet(v));
    }
    let ambient = m.vertices();
    for w in k.interior_vertices() {
        if ambient.contains(&w) {
            return Err(GadgetError::LabelClash(w));
        }
    }
    let mut map = BTreeMap::new();
    map.insert(k.base, v);
    let mut rest_cell: Vec<VertexId> = k
        .boundary
        .iter()
        .copied()
        .filter(|&b| b != k.base)
        .collect();
    rest_cell.sort_unstable();
    let rest_facet = facet
        .vertices()
        .iter()
        .copied()
        .filter(|&w| w != v);
    for (b, w) in rest_cell.into_iter().zip(rest_facet) {
        map.insert(b, w);
    }
    let mut facets = m.facet_set().clone();
    facets.remove(facet);
    for f in relabel(&k.cell, &map).facets() {
        facets.insert(f.clone());
    }
    Ok((m.with_facets(facets), map))
}

/// A disk with boundary triangle {1,2,3}, base 1, and seven interior
/// vertices arranged so that a vertex split (0-move) and an edge flip
/// (1-move) both exist strictly inside, anchored at the base.
pub fn gadget_2() -> GadgetCell {
    let facets: &[[u32; 3]] = &[
        // collar along the boundary
        [1, 2, 4],
        [2, 3, 5],
        [2, 4, 5],
        [1, 3, 5],
        // fan around the base
        [1, 4, 9],
        [1, 8, 9],
        [1, 8, 10],
        [1, 6, 10],
        [1, 6, 7],
        [1, 5, 7],
        // fill between the fan and the collar
        [4, 8, 9],
        [4, 8, 10],
        [4, 6, 10],
        [4, 6, 7],
        [4, 5, 7],
    ];
    let cell = SimplicialComplex::from_facets(facets).expect("well-formed facet list");
    GadgetCell {
        base: VertexId(1),
        boundary: vec![VertexId(1), VertexId(2), VertexId(3)],
        moves: vec![
            BistellarMove {
                n: 2,
                i: 0,
                sigma: Simplex::from_labels(&[1, 6, 7]),
                tau: Simplex::from_labels(&[11]),
            },
            BistellarMove {
                n: 2,
                i: 1,
                sigma: Simplex::from_labels(&[1, 8]),
                tau: Simplex::from_labels(&[9, 10]),
            },
        ],
        cell,
    }
}

/// A 3-ball with boundary tetrahedron {1,2,3,4} and base 1, built as two
/// cones over an interior disk: `cell = 1 * D  ∪  17 * (D ∪ {2,3,4})`.
/// The disk D is shaped so the base's link (D itself) contains a facet
/// for a 0-move, an edge with diamond link for a 1-move, and a vertex of
/// degree 3 for a 2-move, all away from the boundary.
pub fn gadget_3() -> GadgetCell {
    let disk: &[[u32; 3]] = &[
        // sector between boundary vertices 2 and 3
        [2, 3, 5],
        [3, 5, 6],
        [3, 6, 16],
        [6, 7, 16],
        [2, 7, 16],
        [2, 5, 7],
        [5, 6, 7],
        // sector between 3 and 4
        [3, 4, 10],
        [4, 9, 10],
        [4, 9, 16],
        [9, 11, 16],
        [3, 11, 16],
        [3, 8, 11],
        [3, 8, 10],
        [8, 9, 10],
        [8, 9, 11],
        // sector between 2 and 4
        [2, 4, 13],
        [4, 13, 14],
        [4, 14, 16],
        [14, 15, 16],
        [2, 15, 16],
        [2, 13, 15],
        [12, 13, 14],
        [12, 14, 15],
        [12, 13, 15],
    ];
    let mut facets: Vec<[u32; 4]> = Vec::with_capacity(2 * disk.len() + 1);
    for t in disk {
        facets.push([1, t[0], t[1], t[2]]);
        facets.push([17, t[0], t[1], t[2]]);
    }
    facets.push([2, 3, 4, 17]);
    let cell = SimplicialComplex::from_facets(facets).expect("well-formed facet list");
    GadgetCell {
        base: VertexId(1),
        boundary: vec![VertexId(1), VertexId(2), VertexId(3), VertexId(4)],
        moves: vec![
            BistellarMove {
                n: 3,
                i: 0,
                sigma: Simplex::from_labels(&[1, 5, 6, 7]),
                tau: Simplex::from_labels(&[18]),
            },
            BistellarMove {
                n: 3,
                i: 1,
                sigma: Simplex::from_labels(&[1, 8, 9]),
                tau: Simplex::from_labels(&[10, 11]),
            },
            BistellarMove {
                n: 3,
                i: 2,
                sigma: Simplex::from_labels(&[1, 12]),
                tau: Simplex::from_labels(&[13, 14, 15]),
            },
        ],
        cell,
    }
}
