//! Cross-checks between the flip engine and the f-vector calculus over
//! the whole builtin corpus: empirical move deltas against the closed
//! form columns, link recomputation against induced moves, locality of
//! the facet edits, inverse round trips, Dehn-Sommerville completion on
//! walked sphere f-vectors, move-count recovery from walk bookkeeping,
//! and the per-vertex tiling identity behind globalization.

use bistellar::calculus::{ds_complete, move_counts, MoveDelta};
use bistellar::moves::{
    apply_move, enumerate_moves, induced_link_moves, inverse_move, BistellarMove,
};
use bistellar::walk::{random_walk, WalkConfig};
use bistellar::{corpus_of_dim, Simplex, SimplicialComplex};
use std::collections::BTreeSet;

/// Every builtin of dimension 2 and 3, plus a walked snapshot of each so
/// the oracles also run on complexes the generators never wrote down.
fn corpus() -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        for (name, c) in corpus_of_dim(dim) {
            let cfg = WalkConfig::uniform(25, 0xC0FFEE, dim as usize);
            let (walked, _) = random_walk(&c, &cfg).expect("corpus walks");
            out.push((format!("walked:{name}"), walked));
            out.push((name, c));
        }
    }
    out
}

fn facet_set(c: &SimplicialComplex) -> BTreeSet<Simplex> {
    c.facets().cloned().collect()
}

fn all_moves(c: &SimplicialComplex) -> Vec<BistellarMove> {
    let d = c.dim() as usize;
    (0..=d)
        .flat_map(|i| enumerate_moves(c, i).expect("enumeration"))
        .collect()
}

#[test]
fn empirical_f_vector_deltas_match_the_closed_form_columns() {
    let mut cases = 0usize;
    for (name, c) in corpus() {
        let d = c.dim() as usize;
        let before = c.f_vector();
        for mv in all_moves(&c) {
            let after = apply_move(&c, &mv).expect("valid move").f_vector();
            let col = MoveDelta::column(d + 1, mv.i).expect("column");
            for k in 0..=d {
                assert_eq!(
                    after.entries()[k] - before.entries()[k],
                    col.entries()[k],
                    "{name}: {}-move at sigma {:?}, entry f_{k}",
                    mv.i,
                    mv.sigma.labels()
                );
            }
            cases += 1;
        }
    }
    assert!(cases >= 200, "corpus should offer hundreds of moves, got {cases}");
}

#[test]
fn links_transform_exactly_by_their_induced_moves() {
    let mut links_checked = 0usize;
    for (name, c) in corpus() {
        let n = c.dim() as usize;
        for mv in all_moves(&c) {
            let next = apply_move(&c, &mv).expect("valid move");
            let induced = induced_link_moves(&c, &mv).expect("induced moves");
            for (&v, im) in &induced {
                let old_link = c.link(&Simplex::vertex(v)).expect("old link");
                let new_link = next.link(&Simplex::vertex(v)).expect("new link");
                // independent application: edit the facet set by hand
                let mut expected = facet_set(&old_link);
                for gone in im.removed_facets() {
                    assert!(
                        expected.remove(&gone),
                        "{name}: induced move removes {:?} absent from lk({v:?})",
                        gone.labels()
                    );
                }
                for fresh in im.added_facets() {
                    expected.insert(fresh);
                }
                assert_eq!(
                    expected,
                    facet_set(&new_link),
                    "{name}: lk({v:?}) after a {}-move",
                    mv.i
                );
                // when the link is big enough for the engine, cross-check
                if old_link.dim() >= 2 {
                    let by_engine = apply_move(&old_link, im).expect("induced move valid");
                    assert_eq!(facet_set(&by_engine), facet_set(&new_link));
                }
                links_checked += 1;
            }
            if mv.i == 0 {
                // the fresh vertex appears with link = boundary(sigma)
                let u = mv.tau.vertices()[0];
                assert!(induced.keys().all(|&w| w != u));
                let new_link = next.link(&Simplex::vertex(u)).expect("fresh link");
                let expected: BTreeSet<Simplex> =
                    mv.sigma.subsets_of_len(mv.sigma.len() - 1).into_iter().collect();
                assert_eq!(expected, facet_set(&new_link), "{name}: link of fresh vertex");
                links_checked += 1;
            }
            if mv.i == n {
                // the swallowed vertex is gone entirely
                let v = mv.sigma.vertices()[0];
                assert!(!next.contains_vertex(v), "{name}: {v:?} should vanish");
            }
        }
    }
    assert!(links_checked >= 500, "expected many link checks, got {links_checked}");
}

#[test]
fn moves_edit_only_facets_containing_sigma_or_tau() {
    for (name, c) in corpus() {
        let old = facet_set(&c);
        for mv in all_moves(&c) {
            let new = facet_set(&apply_move(&c, &mv).expect("valid move"));
            let removed: BTreeSet<Simplex> = old.difference(&new).cloned().collect();
            let added: BTreeSet<Simplex> = new.difference(&old).cloned().collect();
            assert_eq!(
                removed,
                mv.removed_facets().into_iter().collect(),
                "{name}: removed facets of the {}-move at {:?}",
                mv.i,
                mv.sigma.labels()
            );
            assert_eq!(added, mv.added_facets().into_iter().collect());
            assert!(removed.iter().all(|f| mv.sigma.is_subset_of(f)));
            assert!(added.iter().all(|f| mv.tau.is_subset_of(f)));
        }
    }
}

#[test]
fn applying_a_move_and_its_inverse_restores_the_facet_set() {
    for (name, c) in corpus() {
        let original = facet_set(&c);
        for mv in all_moves(&c) {
            let there = apply_move(&c, &mv).expect("valid move");
            let back = apply_move(&there, &inverse_move(&mv)).expect("inverse valid");
            assert_eq!(original, facet_set(&back), "{name}: {}-move round trip", mv.i);
        }
    }
}

#[test]
fn dehn_sommerville_completion_reproduces_walked_sphere_f_vectors() {
    for n in 3..=5usize {
        let sphere = bistellar::builtin_complex("boundary_simplex", Some(n as u32)).unwrap();
        for seed in 0..4u64 {
            let cfg = WalkConfig::uniform(60, seed, n - 1);
            let (walked, _) = random_walk(&sphere, &cfg).expect("sphere walk");
            let f = walked.f_vector();
            let prefix: Vec<i64> = f.entries()[..n / 2].to_vec();
            let completed = ds_complete(n, &prefix).expect("sphere prefix");
            assert_eq!(completed.entries(), f.entries(), "n={n} seed={seed}");
        }
    }
}

#[test]
fn move_counts_recover_walk_bookkeeping_differences() {
    // On a 3-sphere the four move indices pair up as 0<->3 and 1<->2, and
    // the end f-vector determines both differences uniquely.
    let sphere = bistellar::builtin_complex("boundary_simplex", Some(4)).unwrap();
    for seed in 0..6u64 {
        let cfg = WalkConfig::uniform(80, seed, 3);
        let (walked, log) = random_walk(&sphere, &cfg).expect("sphere walk");
        let counts = log.index_counts(4);
        let expected = vec![
            counts[0] as i64 - counts[3] as i64,
            counts[1] as i64 - counts[2] as i64,
        ];
        let mc = move_counts(4, &walked.f_vector()).expect("sphere f-vector");
        assert_eq!(mc.entries, expected, "seed={seed}");
    }
    // 2-sphere: the middle index changes nothing, so only m_0 - m_2 shows.
    let sphere = bistellar::builtin_complex("boundary_simplex", Some(3)).unwrap();
    for seed in 0..6u64 {
        let cfg = WalkConfig::uniform(80, seed, 2);
        let (walked, log) = random_walk(&sphere, &cfg).expect("sphere walk");
        let counts = log.index_counts(3);
        let expected = vec![counts[0] as i64 - counts[2] as i64];
        let mc = move_counts(3, &walked.f_vector()).expect("sphere f-vector");
        assert_eq!(mc.entries, expected, "seed={seed}");
    }
}

#[test]
fn per_vertex_link_counts_tile_global_face_counts() {
    // Every j-face with j >= 1 shows up once in the link of each of its
    // j+1 vertices, one dimension down; this is what lets a per-vertex
    // formula globalize.
    for (name, c) in corpus() {
        let d = c.dim();
        let f = c.f_vector();
        let mut sums = vec![0i64; d as usize + 1]; // index k accumulates f_{k-1} of links
        for v in c.vertices() {
            let link = c.link(&Simplex::vertex(v)).expect("vertex link");
            let lf = link.f_vector();
            for k in 0..=d {
                sums[k as usize] += lf.get(k - 1);
            }
        }
        for k in 0..=d as i64 {
            assert_eq!(
                sums[k as usize],
                (k + 1) * f.get(k as i32),
                "{name}: faces of dimension {k}"
            );
        }
    }
}
