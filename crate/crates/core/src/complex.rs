//! Pure simplicial complexes stored as facet sets.
//!
//! A complex is represented by its facets alone; lower faces are enumerated
//! on demand. All complexes here are pure (every facet has the same vertex
//! count). The complex whose only facet is the empty simplex is the
//! (-1)-dimensional complex; it is the identity for `join` and the boundary
//! of a point, which makes the 0-move bookkeeping uniform.

use crate::simplex::{Simplex, VertexId};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facets have mixed vertex counts")]
    MixedDimension,
    #[error("a facet lists the same vertex twice")]
    DuplicateVertexInFacet,
    #[error("a complex needs at least one facet")]
    EmptyInput,
    #[error("simplex {0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("join operands share vertex labels")]
    VertexClash,
}

/// Face counts `(f_0, ..., f_d)` of a `d`-dimensional complex, with the
/// convention `f_{-1} = 1` kept implicit. The same type carries f-vectors
/// of vertex links, where the vector length equals the ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FVector(Vec<i64>);

impl FVector {
    pub fn from_entries(entries: Vec<i64>) -> Self {
        assert!(entries.iter().all(|&e| e >= 0), "face counts are nonnegative");
        FVector(entries)
    }

    /// Number of stored entries; the f-vector of a `d`-complex has `d + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `f_k`, honouring `f_{-1} = 1`; zero beyond the dimension.
    pub fn get(&self, k: i32) -> i64 {
        if k == -1 {
            1
        } else if k >= 0 && (k as usize) < self.0.len() {
            self.0[k as usize]
        } else {
            0
        }
    }

    /// Euler characteristic: the alternating sum of the entries.
    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f } else { -f })
            .sum()
    }
}

impl std::fmt::Debug for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A pure simplicial complex. Equality compares the facet sets; the fresh
/// label counter is bookkeeping and deliberately ignored so that applying a
/// move and its inverse returns a complex equal to the original.
#[derive(Clone)]
pub struct SimplicialComplex {
    facet_len: usize,
    facets: BTreeSet<Simplex>,
    next_label: u32,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facet_len == other.facet_len && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(dim {}, {} facets)", self.dim(), self.facets.len())
    }
}

impl SimplicialComplex {
    /// Validates raw facet lists: every facet distinct labels, all the same
    /// cardinality, at least one facet. Duplicate facets collapse silently
    /// (equal cardinality makes containment and equality coincide).
    pub fn from_facets<I, F>(facets: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let mut set = BTreeSet::new();
        let mut facet_len: Option<usize> = None;
        for raw in facets {
            let raw = raw.as_ref();
            let mut labels: Vec<u32> = raw.to_vec();
            labels.sort_unstable();
            if labels.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertexInFacet);
            }
            match facet_len {
                None => facet_len = Some(labels.len()),
                Some(l) if l != labels.len() => return Err(ComplexError::MixedDimension),
                _ => {}
            }
            set.insert(Simplex::new(labels.into_iter().map(VertexId).collect()));
        }
        let facet_len = facet_len.ok_or(ComplexError::EmptyInput)?;
        Ok(Self::from_simplex_set(facet_len, set))
    }

    pub(crate) fn from_simplex_set(facet_len: usize, facets: BTreeSet<Simplex>) -> Self {
        let max = facets
            .iter()
            .flat_map(|s| s.vertices().iter().map(|v| v.0))
            .max()
            .unwrap_or(0);
        SimplicialComplex {
            facet_len,
            facets,
            next_label: max + 1,
        }
    }

    /// The (-1)-dimensional complex `{∅}`: the boundary of a point and the
    /// identity element for `join`.
    pub fn minus_one_sphere() -> Self {
        let mut facets = BTreeSet::new();
        facets.insert(Simplex::empty());
        SimplicialComplex {
            facet_len: 0,
            facets,
            next_label: 1,
        }
    }

    pub fn dim(&self) -> i32 {
        self.facet_len as i32 - 1
    }

    pub fn facet_len(&self) -> usize {
        self.facet_len
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.iter()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_set(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.facets.iter().any(|f| f.contains(v))
    }

    /// A label never used by this complex (nor by any of its ancestors:
    /// the counter survives moves, so removed labels are not recycled).
    pub fn fresh_label(&self) -> VertexId {
        VertexId(self.next_label)
    }

    /// Rebuilds with a rewritten facet set, keeping the label counter
    /// monotone. Used by move application and gadget implantation.
    pub(crate) fn with_facets(&self, facets: BTreeSet<Simplex>) -> Self {
        let max = facets
            .iter()
            .flat_map(|s| s.vertices().iter().map(|v| v.0))
            .max()
            .unwrap_or(0);
        SimplicialComplex {
            facet_len: self.facet_len,
            facets,
            next_label: self.next_label.max(max + 1),
        }
    }

    /// True when `s` is contained in some facet. The empty simplex is a
    /// face of every complex.
    pub fn has_face(&self, s: &Simplex) -> bool {
        if s.is_empty() {
            return true;
        }
        self.facets.iter().any(|f| s.is_subset_of(f))
    }

    /// Map from each vertex to the facets containing it.
    pub fn vertex_facet_map(&self) -> HashMap<VertexId, Vec<&Simplex>> {
        let mut map: HashMap<VertexId, Vec<&Simplex>> = HashMap::new();
        for f in &self.facets {
            for &v in f.vertices() {
                map.entry(v).or_default().push(f);
            }
        }
        map
    }

    /// Facets containing `s`, computed by filtering the facet list of one
    /// of its vertices.
    fn facets_containing(&self, s: &Simplex) -> Vec<&Simplex> {
        if s.is_empty() {
            return self.facets.iter().collect();
        }
        let v = s.vertices()[0];
        self.facets
            .iter()
            .filter(|f| f.contains(v) && s.is_subset_of(f))
            .collect()
    }

    /// Star: the subcomplex generated by all facets containing `s`.
    pub fn star(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        let hits: BTreeSet<Simplex> = self.facets_containing(s).into_iter().cloned().collect();
        if hits.is_empty() {
            return Err(ComplexError::NotAFace(s.clone()));
        }
        Ok(SimplicialComplex {
            facet_len: self.facet_len,
            facets: hits,
            next_label: self.next_label,
        })
    }

    /// Link: all faces disjoint from `s` whose join with `s` lies in the
    /// complex. For a pure complex the link's facets are `F \ s` over the
    /// facets `F ⊇ s`; the link of a facet is the (-1)-sphere.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        let hits = self.facets_containing(s);
        if hits.is_empty() {
            return Err(ComplexError::NotAFace(s.clone()));
        }
        let facets: BTreeSet<Simplex> = hits.into_iter().map(|f| f.minus(s)).collect();
        Ok(SimplicialComplex {
            facet_len: self.facet_len - s.len(),
            facets,
            next_label: self.next_label,
        })
    }

    /// Join of two complexes on disjoint vertex sets: facets are pairwise
    /// unions. Joining with the (-1)-sphere is the identity.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
        let mine = self.vertices();
        if other.vertices().iter().any(|v| mine.contains(v)) {
            return Err(ComplexError::VertexClash);
        }
        let mut facets = BTreeSet::new();
        for a in &self.facets {
            for b in &other.facets {
                facets.insert(a.union(b));
            }
        }
        Ok(SimplicialComplex {
            facet_len: self.facet_len + other.facet_len,
            facets,
            next_label: self.next_label.max(other.next_label),
        })
    }

    /// Counts faces of every dimension by expanding facet subsets.
    pub fn f_vector(&self) -> FVector {
        if self.facet_len == 0 {
            return FVector(Vec::new());
        }
        let mut seen: Vec<HashSet<Simplex>> = vec![HashSet::new(); self.facet_len];
        for f in &self.facets {
            for s in f.all_nonempty_subsets() {
                seen[s.len() - 1].insert(s);
            }
        }
        FVector(seen.iter().map(|set| set.len() as i64).collect())
    }

    /// All faces of the given dimension (`k`-simplices have `k+1` vertices).
    pub fn faces_of_dim(&self, k: i32) -> BTreeSet<Simplex> {
        assert!(k >= -1);
        let len = (k + 1) as usize;
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for s in f.subsets_of_len(len) {
                out.insert(s);
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler()
    }

    /// Connectivity of the 1-skeleton (trivially true below dimension 1).
    pub fn is_connected(&self) -> bool {
        let verts: Vec<VertexId> = self.vertices().into_iter().collect();
        if verts.len() <= 1 {
            return true;
        }
        let index: HashMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for f in &self.facets {
            let vs = f.vertices();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let (a, b) = (index[&vs[i]], index[&vs[j]]);
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        let mut seen = vec![false; verts.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == verts.len()
    }

    /// Ridges (codimension-1 faces) with the number of facets containing
    /// each. Degree 2 everywhere characterises closed pseudomanifolds.
    pub fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let mut map: BTreeMap<Simplex, usize> = BTreeMap::new();
        for f in &self.facets {
            for r in f.subsets_of_len(self.facet_len - 1) {
                *map.entry(r).or_insert(0) += 1;
            }
        }
        map
    }

    /// The subcomplex generated by ridges lying in exactly one facet, or
    /// `None` when the complex is closed.
    pub fn boundary_complex(&self) -> Option<SimplicialComplex> {
        if self.facet_len == 0 {
            return None;
        }
        let facets: BTreeSet<Simplex> = self
            .ridge_degrees()
            .into_iter()
            .filter(|(_, deg)| *deg == 1)
            .map(|(r, _)| r)
            .collect();
        if facets.is_empty() {
            None
        } else {
            Some(SimplicialComplex {
                facet_len: self.facet_len - 1,
                facets,
                next_label: self.next_label,
            })
        }
    }
}

/// Barycentric subdivision. Vertices of the result are the faces of the
/// input, numbered from 1 in (dimension, lexicographic) order; facets are
/// the maximal chains of faces.
pub fn barycentric_subdivision(c: &SimplicialComplex) -> SimplicialComplex {
    assert!(c.facet_len() > 0, "cannot subdivide the (-1)-sphere");
    // number faces by (dimension, lex) so output labels are reproducible
    let mut id: BTreeMap<Simplex, u32> = BTreeMap::new();
    let mut counter = 1u32;
    for k in 0..c.facet_len() {
        for s in c.faces_of_dim(k as i32) {
            id.insert(s, counter);
            counter += 1;
        }
    }
    let mut facets: BTreeSet<Simplex> = BTreeSet::new();
    for f in c.facets() {
        // each ordering of the facet's vertices is one maximal chain
        let verts = f.vertices().to_vec();
        let mut perm: Vec<usize> = (0..verts.len()).collect();
        loop {
            let mut chain = Vec::with_capacity(verts.len());
            let mut acc: Vec<VertexId> = Vec::new();
            for &p in &perm {
                acc.push(verts[p]);
                let face = Simplex::new(acc.clone());
                chain.push(VertexId(id[&face]));
            }
            facets.insert(Simplex::new(chain));
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    SimplicialComplex::from_simplex_set(c.facet_len(), facets)
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
