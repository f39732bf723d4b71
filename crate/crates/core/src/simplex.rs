//! Vertices and abstract simplices.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A vertex label. Labels are plain unsigned integers; a complex never
/// reuses a label once it has been handed out (see `SimplicialComplex`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// An abstract simplex: a strictly increasing sequence of vertex labels.
/// The empty simplex is allowed; it is the unique face of dimension -1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    verts: Vec<VertexId>,
}

impl Simplex {
    /// Builds a simplex from unordered labels. Panics on duplicates;
    /// callers that accept untrusted input must check for those first.
    pub fn new(mut verts: Vec<VertexId>) -> Self {
        verts.sort_unstable();
        assert!(
            verts.windows(2).all(|w| w[0] < w[1]),
            "simplex vertices must be distinct"
        );
        Simplex { verts }
    }

    pub fn from_labels(labels: &[u32]) -> Self {
        Simplex::new(labels.iter().copied().map(VertexId).collect())
    }

    pub fn empty() -> Self {
        Simplex { verts: Vec::new() }
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex { verts: vec![v] }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Geometric dimension: one less than the number of vertices.
    pub fn dim(&self) -> i32 {
        self.verts.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn labels(&self) -> Vec<u32> {
        self.verts.iter().map(|v| v.0).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// Subset test against another sorted simplex (merge scan).
    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        let mut it = other.verts.iter();
        'outer: for v in &self.verts {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.verts.len() && j < other.verts.len() {
            match self.verts[i].cmp(&other.verts[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Union of two disjoint simplices.
    pub fn union(&self, other: &Simplex) -> Simplex {
        debug_assert!(self.is_disjoint_from(other));
        let mut verts = Vec::with_capacity(self.verts.len() + other.verts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.verts.len() && j < other.verts.len() {
            if self.verts[i] < other.verts[j] {
                verts.push(self.verts[i]);
                i += 1;
            } else {
                verts.push(other.verts[j]);
                j += 1;
            }
        }
        verts.extend_from_slice(&self.verts[i..]);
        verts.extend_from_slice(&other.verts[j..]);
        Simplex { verts }
    }

    /// The simplex with `drop` removed. `drop` must be a subset.
    pub fn minus(&self, drop: &Simplex) -> Simplex {
        debug_assert!(drop.is_subset_of(self));
        Simplex {
            verts: self
                .verts
                .iter()
                .copied()
                .filter(|v| !drop.contains(*v))
                .collect(),
        }
    }

    pub fn minus_vertex(&self, v: VertexId) -> Simplex {
        Simplex {
            verts: self.verts.iter().copied().filter(|w| *w != v).collect(),
        }
    }

    /// All subsets with `k` vertices, in lexicographic order.
    pub fn subsets_of_len(&self, k: usize) -> Vec<Simplex> {
        let n = self.verts.len();
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(crate::rat::binom(n as i64, k as i64) as usize);
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex {
                verts: idx.iter().map(|&i| self.verts[i]).collect(),
            });
            // advance the combination cursor
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                if idx[pos] != pos + n - k {
                    idx[pos] += 1;
                    for j in pos + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    return out;
                }
            }
            if k == 0 {
                return out;
            }
        }
    }

    /// Every nonempty subset, grouped by nothing in particular.
    pub fn all_nonempty_subsets(&self) -> Vec<Simplex> {
        let n = self.verts.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u32..(1 << n) {
            let verts = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.verts[i])
                .collect();
            out.push(Simplex { verts });
        }
        out
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
