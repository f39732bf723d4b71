//! Simplicial isomorphism by backtracking search.

use crate::complex::SimplicialComplex;
use crate::simplex::{Simplex, VertexId};
use std::collections::{BTreeMap, HashMap};

/// Searches for a vertex bijection carrying facets of `a` onto facets of
/// `b`. Candidate images are grouped and ordered by a per-vertex degree
/// profile (the f-vector of the vertex link), which prunes the search and
/// makes the returned map deterministic for fixed inputs.
pub fn is_isomorphic(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.facet_len() != b.facet_len() || a.facet_count() != b.facet_count() {
        return None;
    }
    if a.facet_len() == 0 {
        return Some(BTreeMap::new());
    }
    if a.f_vector() != b.f_vector() {
        return None;
    }

    let signature = |c: &SimplicialComplex, v: VertexId| -> Vec<i64> {
        c.link(&Simplex::vertex(v))
            .expect("vertex of the complex")
            .f_vector()
            .entries()
            .to_vec()
    };

    let a_verts: Vec<VertexId> = a.vertices().into_iter().collect();
    let b_verts: Vec<VertexId> = b.vertices().into_iter().collect();
    if a_verts.len() != b_verts.len() {
        return None;
    }

    let a_sig: HashMap<VertexId, Vec<i64>> =
        a_verts.iter().map(|&v| (v, signature(a, v))).collect();
    let mut b_classes: BTreeMap<Vec<i64>, Vec<VertexId>> = BTreeMap::new();
    for &w in &b_verts {
        b_classes.entry(signature(b, w)).or_default().push(w);
    }
    {
        let mut a_classes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for sig in a_sig.values() {
            *a_classes.entry(sig.clone()).or_insert(0) += 1;
        }
        let b_counts: BTreeMap<Vec<i64>, usize> = b_classes
            .iter()
            .map(|(sig, vs)| (sig.clone(), vs.len()))
            .collect();
        if a_classes != b_counts {
            return None;
        }
    }

    // rarest signature classes first: fail fast on asymmetric complexes
    let mut order = a_verts.clone();
    order.sort_by_key(|v| {
        let sig = &a_sig[v];
        (b_classes[sig].len(), sig.clone(), *v)
    });

    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeMap<VertexId, bool> = b_verts.iter().map(|&w| (w, false)).collect();
    if assign(a, b, &order, 0, &a_sig, &b_classes, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    order: &[VertexId],
    pos: usize,
    a_sig: &HashMap<VertexId, Vec<i64>>,
    b_classes: &BTreeMap<Vec<i64>, Vec<VertexId>>,
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeMap<VertexId, bool>,
) -> bool {
    if pos == order.len() {
        return facets_match(a, b, map);
    }
    let v = order[pos];
    for &w in &b_classes[&a_sig[&v]] {
        if used[&w] {
            continue;
        }
        map.insert(v, w);
        used.insert(w, true);
        if consistent_so_far(a, b, map, v) && assign(a, b, order, pos + 1, a_sig, b_classes, map, used)
        {
            return true;
        }
        map.remove(&v);
        used.insert(w, false);
    }
    false
}

/// Every facet through `v` whose vertices are all assigned must map onto a
/// facet of `b`.
fn consistent_so_far(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    map: &BTreeMap<VertexId, VertexId>,
    v: VertexId,
) -> bool {
    for f in a.facets() {
        if !f.contains(v) {
            continue;
        }
        if let Some(image) = image_of(f, map) {
            if !b.facet_set().contains(&image) {
                return false;
            }
        }
    }
    true
}

fn facets_match(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    map: &BTreeMap<VertexId, VertexId>,
) -> bool {
    a.facets().all(|f| {
        image_of(f, map)
            .map(|img| b.facet_set().contains(&img))
            .unwrap_or(false)
    })
}

fn image_of(f: &Simplex, map: &BTreeMap<VertexId, VertexId>) -> Option<Simplex> {
    let mut verts = Vec::with_capacity(f.len());
    for v in f.vertices() {
        verts.push(*map.get(v)?);
    }
    verts.sort_unstable();
    if verts.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(Simplex::new(verts))
}

/// Applies a vertex relabelling to a whole complex (used by tests and the
/// gadget gluing). The map must be injective on the complex's vertices.
pub fn relabel(c: &SimplicialComplex, map: &BTreeMap<VertexId, VertexId>) -> SimplicialComplex {
    let facets = c
        .facets()
        .map(|f| {
            Simplex::new(
                f.vertices()
                    .iter()
                    .map(|v| *map.get(v).unwrap_or(v))
                    .collect(),
            )
        })
        .collect();
    SimplicialComplex::from_simplex_set(c.facet_len(), facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{boundary_simplex, cross_polytope_boundary, torus7};

    #[test]
    fn relabelled_sphere_is_isomorphic() {
        let a = boundary_simplex(3);
        let map: BTreeMap<VertexId, VertexId> = [(1, 40), (2, 10), (3, 99), (4, 7)]
            .into_iter()
            .map(|(x, y)| (VertexId(x), VertexId(y)))
            .collect();
        let b = relabel(&a, &map);
        let found = is_isomorphic(&a, &b).expect("isomorphic");
        for f in a.facets() {
            let image = Simplex::new(f.vertices().iter().map(|v| found[v]).collect());
            assert!(b.facet_set().contains(&image));
        }
    }

    #[test]
    fn cycles_of_different_length_are_not_isomorphic() {
        let c3 = SimplicialComplex::from_facets([[1, 2], [2, 3], [1, 3]]).unwrap();
        let c4 = SimplicialComplex::from_facets([[1, 2], [2, 3], [3, 4], [1, 4]]).unwrap();
        assert!(is_isomorphic(&c3, &c4).is_none());
        assert!(is_isomorphic(&c3, &c3).is_some());
    }

    #[test]
    fn torus_and_sphere_with_matching_counts_disagree() {
        // same dimension, different f-vectors: rejected before search
        assert!(is_isomorphic(&torus7(), &boundary_simplex(3)).is_none());
    }

    #[test]
    fn octahedron_is_isomorphic_to_a_shifted_copy() {
        let a = cross_polytope_boundary(3);
        let map: BTreeMap<VertexId, VertexId> =
            (1..=6).map(|x| (VertexId(x), VertexId(x + 100))).collect();
        let b = relabel(&a, &map);
        assert!(is_isomorphic(&a, &b).is_some());
        assert!(is_isomorphic(&b, &a).is_some());
    }
}
