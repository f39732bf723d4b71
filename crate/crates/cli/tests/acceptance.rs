//! End-to-end acceptance checks. Each test covers one numbered criterion
//! and prints a single `PASS criterion N` line once its assertions hold;
//! a failing criterion fails its test.

use bistellar::calculus::{derive_psi, ds_complete, ds_relations, r_coeff, MoveDelta};
use bistellar::gadget::{a_vector, gadget_2, implant_gadget, map_move, verify_gadget};
use bistellar::harness::{find_witness, invariance_report, Verdict};
use bistellar::manifold::is_sphere_exact;
use bistellar::moves::{apply_move, enumerate_moves};
use bistellar::walk::{replay, sphere_recognize, Recognition, RecognizeBudget, WalkConfig};
use bistellar::{
    builtin_complex, is_isomorphic, rat::rat_int, LocalFormula, Simplex, SimplicialComplex,
};
use serde_json::Value;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

fn run_cli(args: &[&str]) -> (Value, bool, std::time::Duration) {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_bistellar"))
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    let stdout = String::from_utf8(out.stdout).expect("utf8 output");
    let json: Value = serde_json::from_str(&stdout).expect("json report");
    (json, out.status.success(), elapsed)
}

fn facet_set(c: &SimplicialComplex) -> BTreeSet<Simplex> {
    c.facets().cloned().collect()
}

#[test]
fn criterion_1_dimension_4_derivation_via_cli() {
    let (report, ok, elapsed) = run_cli(&["derive", "--n", "4"]);
    assert!(ok, "derive --n 4 should exit 0");
    let h = report["h_values_from_minus_one"].as_array().unwrap();
    assert_eq!(h[1], "-1/5", "H_0");
    assert_eq!(h[2], "1/10", "H_1");
    let forms = report["move_count_forms"].as_array().unwrap();
    assert_eq!(forms[0]["rendered"], "m_0 - m_3 = f_0 - 5");
    assert_eq!(forms[1]["rendered"], "m_1 - m_2 = -4*f_0 + f_1 + 10");
    let psi: Vec<&str> = report["psi"]["coeffs_from_minus_one"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(psi, ["3", "-3/5", "1/10", "0", "0"], "psi = 3(1 - f_0/5 + f_1/30)");
    assert_eq!(report["proportionality"]["kind"], "lambda");
    assert_eq!(report["proportionality"]["lambda"], "3");
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("PASS criterion 1: derive --n 4 gives H = (-1/5, 1/10), both count forms, psi, lambda = 3 in {elapsed:?}");
}

#[test]
fn criterion_2_dehn_sommerville_anchors() {
    let completed = ds_complete(4, &[5, 10]).unwrap();
    assert_eq!(completed.entries(), &[5, 10, 10, 5]);
    let relations = ds_relations(4);
    assert_eq!(relations.len(), 2);
    let (f2, f3) = (&relations[0], &relations[1]);
    // f_3 = f_1 - f_0, identically
    assert_eq!(f3.constant, rat_int(0));
    assert_eq!(f3.coeffs, vec![rat_int(-1), rat_int(1)]);
    assert_eq!(f3.render("f_3"), "f_3 = -f_0 + f_1");
    // f_2 = 2 f_3, identically: every coefficient doubles
    assert_eq!(f2.constant, f3.constant * 2);
    let doubled: Vec<_> = f3.coeffs.iter().map(|c| c * 2).collect();
    assert_eq!(f2.coeffs, doubled);
    assert_eq!(f2.render("f_2"), "f_2 = -2*f_0 + 2*f_1");
    println!("PASS criterion 2: ds_complete(4, (5,10)) = (5,10,10,5); f_2 = 2 f_3 and f_3 = f_1 - f_0 as forms");
}

#[test]
fn criterion_3_move_delta_oracle() {
    let check_all_moves = |name: &str, c: &SimplicialComplex| -> usize {
        let dim = c.dim() as usize;
        let before = c.f_vector();
        let mut cases = 0;
        for i in 0..=dim {
            for mv in enumerate_moves(c, i).unwrap() {
                let after = apply_move(c, &mv).unwrap().f_vector();
                let col = MoveDelta::column(dim + 1, i).unwrap();
                for k in 0..=dim {
                    assert_eq!(
                        after.entries()[k] - before.entries()[k],
                        col.entries()[k],
                        "{name} i={i} f_{k}"
                    );
                }
                cases += 1;
            }
        }
        cases
    };
    let mut cases = 0usize;
    for dim in [2, 3] {
        for (name, c) in bistellar::corpus_of_dim(dim) {
            cases += check_all_moves(&name, &c);
            // a walked variant exercises states the generators never wrote
            let cfg = WalkConfig::uniform(30, 7, dim as usize);
            let (walked, _) = bistellar::walk::random_walk(&c, &cfg).unwrap();
            cases += check_all_moves(&format!("walked:{name}"), &walked);
        }
    }
    assert!(cases >= 300, "only {cases} moves checked");
    let mut symmetry_checks = 0usize;
    for n in 2..=8usize {
        for k in 0..n {
            for i in 0..n {
                let r = r_coeff(n, k, i).unwrap();
                assert_eq!(r, -r_coeff(n, k, n - 1 - i).unwrap(), "n={n} k={k} i={i}");
                if 2 * i == n - 1 {
                    assert_eq!(r, 0, "n={n} k={k} i={i}");
                }
                symmetry_checks += 1;
            }
        }
    }
    println!("PASS criterion 3: {cases} corpus move deltas match the columns; antisymmetry and middle vanishing over {symmetry_checks} (n,k,i) triples");
}

#[test]
fn criterion_4_links_follow_induced_moves() {
    let mut links = 0usize;
    for dim in [2, 3] {
        for (name, c) in bistellar::corpus_of_dim(dim) {
            let n = c.dim() as usize;
            for i in 0..=n {
                for mv in enumerate_moves(&c, i).unwrap() {
                    let next = apply_move(&c, &mv).unwrap();
                    let induced = bistellar::moves::induced_link_moves(&c, &mv).unwrap();
                    for (&v, im) in &induced {
                        let old_link = c.link(&Simplex::vertex(v)).unwrap();
                        let new_link = next.link(&Simplex::vertex(v)).unwrap();
                        let mut expected = facet_set(&old_link);
                        for gone in im.removed_facets() {
                            assert!(expected.remove(&gone), "{name}: missing facet in lk({v:?})");
                        }
                        expected.extend(im.added_facets());
                        assert_eq!(expected, facet_set(&new_link), "{name} i={i} lk({v:?})");
                        links += 1;
                    }
                    if mv.i == 0 {
                        let u = mv.tau.vertices()[0];
                        let fresh_link = next.link(&Simplex::vertex(u)).unwrap();
                        let boundary: BTreeSet<Simplex> = mv
                            .sigma
                            .subsets_of_len(mv.sigma.len() - 1)
                            .into_iter()
                            .collect();
                        assert_eq!(boundary, facet_set(&fresh_link), "{name}: fresh vertex link");
                        links += 1;
                    }
                }
            }
        }
    }
    assert!(links >= 500, "only {links} links checked");
    println!("PASS criterion 4: {links} vertex links equal their induced-move rewrites, including fresh vertices of 0-moves");
}

#[test]
fn criterion_5_derived_formula_is_walk_invariant_and_f0_is_not() {
    let started = Instant::now();
    let fixtures: [(&str, Option<u32>, usize, i64); 4] = [
        ("boundary_simplex", Some(3), 2, 4),
        ("torus7", None, 2, 0),
        ("rp2_6", None, 2, 2),
        ("boundary_simplex", Some(4), 3, 0),
    ];
    for (name, param, n, expected) in fixtures {
        let c = builtin_complex(name, param).unwrap();
        let psi = derive_psi(n);
        let cfg = WalkConfig::uniform(500, 0xACCE55, n);
        let report = invariance_report(&c, &psi, &cfg).unwrap();
        assert_eq!(report.steps_applied, 500, "{name}: walk ran out of moves");
        assert_eq!(report.start_value, rat_int(expected), "{name}: starting sum");
        match report.verdict {
            Verdict::Invariant(v) => assert_eq!(v, rat_int(expected), "{name}"),
            Verdict::Witness { step, .. } => panic!("{name}: drifted at step {step}"),
        }
    }
    // a formula that merely counts link vertices breaks immediately
    let sphere = builtin_complex("boundary_simplex", Some(3)).unwrap();
    let f0 = LocalFormula::new(2, vec![rat_int(0), rat_int(1), rat_int(0)]);
    let (witness, delta) = find_witness(&sphere, &f0, 10_000).unwrap().expect("witness");
    let first_zero_move = enumerate_moves(&sphere, 0).unwrap().into_iter().next().unwrap();
    assert_eq!(witness, first_zero_move, "witness should be the first 0-move scanned");
    assert_eq!(delta, rat_int(6));
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!("PASS criterion 5: 500-step walks hold the derived sums at 4, 0, 2, 0; psi = f_0 falls to the first 0-move ({elapsed:?})");
}

#[test]
fn criterion_6_proportionality_sweep_via_cli() {
    let (report, ok, elapsed) = run_cli(&["verify-theorem", "--n", "2..8"]);
    assert!(ok, "sweep should exit 0");
    assert_eq!(report["pass"], true);
    let rows = report["results"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        let prop = &row["proportionality"];
        assert_ne!(prop["kind"], "not_proportional", "n={n}");
        if n % 2 == 0 {
            assert_eq!(prop["kind"], "lambda", "n={n}");
            let lambda = prop["lambda"].as_str().unwrap();
            assert_ne!(lambda, "0", "n={n}: lambda must be nonzero");
            match n {
                2 => assert_eq!(lambda, "2"),
                4 => assert_eq!(lambda, "3"),
                _ => {}
            }
        } else {
            assert_eq!(prop["kind"], "both_zero", "n={n}");
        }
    }
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("PASS criterion 6: verify-theorem 2..8 gives lambda(2)=2, lambda(4)=3, nonzero lambda(6), lambda(8), both-zero odds in {elapsed:?}");
}

#[test]
fn criterion_7_gadget_implant_shifts_one_link_by_the_a_vector() {
    let cell = gadget_2().with_fresh_interior(100);
    let report = verify_gadget(&cell);
    assert!(report.pass(), "gadget_2 verification: {:?}", report.failures);
    let a = a_vector(&cell);
    assert_eq!(a.entries, vec![7, 7]);

    let sphere = builtin_complex("boundary_simplex", Some(3)).unwrap();
    let site = Simplex::from_labels(&[1, 2, 3]);
    let target = bistellar::VertexId(1);
    let link_before = sphere.link(&Simplex::vertex(target)).unwrap().f_vector();
    let (implanted, map) = implant_gadget(&sphere, &site, target, &cell).unwrap();

    let link_after = implanted.link(&Simplex::vertex(target)).unwrap().f_vector();
    let delta: Vec<i64> = link_after
        .entries()
        .iter()
        .zip(link_before.entries())
        .map(|(a, b)| a - b)
        .collect();
    assert_eq!(delta, a.entries, "link delta equals the a-vector");
    assert_eq!(is_sphere_exact(&implanted), Some(true), "still a 2-sphere");

    // each designated move leaves every non-base boundary star untouched
    let spared: Vec<bistellar::VertexId> = cell
        .boundary
        .iter()
        .filter(|&&w| w != cell.base)
        .map(|w| map[w])
        .collect();
    for mv in &cell.moves {
        let mapped = map_move(mv, &map);
        let moved = apply_move(&implanted, &mapped).unwrap();
        for &w in &spared {
            let before = facet_set(&implanted.star(&Simplex::vertex(w)).unwrap());
            let after = facet_set(&moved.star(&Simplex::vertex(w)).unwrap());
            assert_eq!(before, after, "star({w:?}) under the {}-move", mv.i);
        }
    }
    println!("PASS criterion 7: implanting the 2-cell moves one link f-vector by (7,7), keeps a verified 2-sphere, and spares the other boundary stars");
}

#[test]
fn criterion_8_sphere_recognition_with_certificate() {
    let bary = builtin_complex("bary_boundary_simplex", Some(3)).unwrap();
    assert_eq!(bary.f_vector().entries(), &[14, 36, 24]);
    let budget = RecognizeBudget::default();
    assert_eq!(budget.max_attempts, 10_000);
    match sphere_recognize(&bary, &budget) {
        Recognition::Sphere(log) => {
            let end = replay(&bary, &log).expect("certificate replays");
            let target = builtin_complex("boundary_simplex", Some(3)).unwrap();
            assert!(
                is_isomorphic(&end, &target).is_some(),
                "certificate must land on the simplex boundary"
            );
            println!("PASS criterion 8: (14,36,24) falls to the tetrahedron boundary in {} replayable moves; torus7 stays unknown", log.len());
        }
        Recognition::Unknown => panic!("recognition should succeed within 10^4 attempts"),
    }
    let torus = builtin_complex("torus7", None).unwrap();
    assert!(matches!(sphere_recognize(&torus, &budget), Recognition::Unknown));
}
