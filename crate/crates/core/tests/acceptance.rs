//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use common::{affine, all_words, sequence_property_failures, CachedRewriter};
use parahoric::bedard::{check_against, enumerate_sequences, BedardSequence, DiagramAut};
use parahoric::bitorsor::{examples, run_suite};
use parahoric::sl2::{census, match_pieces, orbit_census, predicted_orbits, OrbitStatus, PieceLabel};
use parahoric::weyl::ball_enumerate;
use parahoric::{Exec, NodeSet, WeylElement};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn census_exact() -> Outcome {
    let mut rows = 0;
    let mut bad = Vec::new();
    for q in [2u32, 3] {
        match census(q, 3) {
            Ok(rs) => {
                for r in rs {
                    rows += 1;
                    if !r.matches {
                        bad.push(format!("q={q} {}: {} vs {}", r.label, r.count, r.formula_value));
                    }
                }
            }
            Err(e) => bad.push(format!("q={q}: {e}")),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{rows} rows equal the closed forms") } else { bad.join("; ") })
}

fn pieces_match() -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for q in [2u32, 3] {
        match match_pieces(q, 6) {
            Ok(r) => {
                rows += r.rows.len();
                if !r.passed() {
                    bad.push(format!("q={q}: {:?} unique={}", r.mismatches, r.assignment_unique));
                }
            }
            Err(e) => bad.push(format!("q={q}: {e}")),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{rows} pieces matched, L=6") } else { bad.join("; ") })
}

type Case = (&'static str, usize, NodeSet, Vec<usize>);

fn bijection_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let set = |v: &[usize]| v.iter().copied().collect::<NodeSet>();
    for perm in [vec![0, 1], vec![1, 0]] {
        cases.push(("A", 1, set(&[0]), perm));
    }
    for perm in [vec![0, 1, 2], vec![1, 2, 0], vec![0, 2, 1]] {
        for mask in 1u32..7 {
            cases.push(("A", 2, NodeSet::from_bits(mask), perm.clone()));
        }
    }
    for mask in 0u32..7 {
        cases.push(("G", 2, NodeSet::from_bits(mask), vec![0, 1, 2]));
    }
    cases
}

fn bijections(store: &mut Vec<BedardSequence>) -> Outcome {
    let mut bad = Vec::new();
    let cases = bijection_cases();
    for (f, r, nodes, perm) in &cases {
        let spec = affine(f, *r);
        let res = DiagramAut::new(&spec, perm.clone()).and_then(|delta| {
            let seqs = enumerate_sequences(&spec, *nodes, &delta, 8)?;
            let report = check_against(&spec, *nodes, &delta, 8, &seqs, Exec::default())?;
            Ok((seqs, report))
        });
        match res {
            Ok((seqs, report)) => {
                if !report.passed() {
                    bad.push(format!("{f}{r}~ J={nodes} delta={perm:?}: {:?}", report.violations));
                }
                store.extend(seqs);
            }
            Err(e) => bad.push(format!("{f}{r}~ J={nodes} delta={perm:?}: {e}")),
        }
    }
    let detail = if bad.is_empty() {
        format!("{} cases, {} sequences, all four checks hold at L=8", cases.len(), store.len())
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty(), detail)
}

fn rewriting_oracle() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (f, r) in [("A", 1), ("A", 2), ("C", 2)] {
        let spec = affine(f, r);
        let mut rw = CachedRewriter::new(&spec);
        for w in ball_enumerate(&spec, 6).iter() {
            checked += 1;
            let word = w.reduced_word().0;
            let nf = rw.normal_form(&word);
            if nf != word {
                bad.push(format!("{f}{r}~: engine {word:?}, oracle {nf:?}"));
            }
            if w.right_descents().to_vec() != rw.rewriter().right_descents(&word)
                || w.left_descents().to_vec() != rw.rewriter().left_descents(&word)
            {
                bad.push(format!("{f}{r}~: descents differ at {word:?}"));
            }
        }
        let mut by_matrix: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for word in all_words(spec.size(), 6) {
            let m = WeylElement::from_word(&spec, &word).unwrap().matrix().to_vec();
            let nf = rw.normal_form(&word);
            if nf.len() != WeylElement::from_word(&spec, &word).unwrap().length() {
                bad.push(format!("{f}{r}~: length differs at {word:?}"));
            }
            let prev = by_matrix.entry(m).or_insert_with(|| nf.clone());
            if *prev != nf {
                bad.push(format!("{f}{r}~: {word:?} collides with {prev:?}"));
            }
        }
        let classes: std::collections::HashSet<&Vec<usize>> = by_matrix.values().collect();
        if classes.len() != by_matrix.len() {
            bad.push(format!("{f}{r}~: two matrices share a normal form"));
        }
    }
    bad.truncate(5);
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} ball elements and all words of length <= 6 agree")
        } else {
            bad.join("; ")
        },
    )
}

fn bitorsors() -> Outcome {
    let reports: Vec<_> = examples::all().iter().map(run_suite).collect();
    let pass = reports.iter().all(|r| r.passed());
    let detail = reports
        .iter()
        .map(|r| format!("{}: {}", r.name, if r.passed() { "ok" } else { "failed" }))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, detail)
}

fn orbits() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (q, label, expect) in
        [(3u32, PieceLabel::Y0, 7usize), (3, PieceLabel::YPrime(1), 2), (2, PieceLabel::YPrime(1), 1)]
    {
        let predicted = predicted_orbits(q, label).ok();
        match orbit_census(q, label, 4) {
            Ok(r) => match r.status {
                OrbitStatus::Stable { count, precision } => {
                    let ok = count == expect && predicted == Some(count);
                    pass &= ok;
                    let p = predicted.map_or("none".to_string(), |p| p.to_string());
                    parts.push(format!("q={q} {label}: {count} at precision {precision}, predicted {p}"));
                }
                OrbitStatus::Inconclusive => {
                    pass = false;
                    parts.push(format!("q={q} {label}: INCONCLUSIVE {:?}", r.counts_by_precision));
                }
            },
            Err(e) => {
                pass = false;
                parts.push(format!("q={q} {label}: {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn sequence_properties(seqs: &[BedardSequence]) -> Outcome {
    let mut bad = Vec::new();
    for s in seqs {
        for f in sequence_property_failures(s) {
            bad.push(format!("{} w_inf={}: {f}", s.spec().label(), s.w_inf().reduced_word()));
        }
    }
    let n = seqs.len();
    let pass = bad.is_empty() && n > 0;
    bad.truncate(5);
    outcome(pass, if pass { format!("{n} sequences") } else { bad.join("; ") })
}

fn main() -> ExitCode {
    let mut seqs = Vec::new();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id}. {name} ({:.1}s): {}", t.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failed += 1;
        }
    };
    report(1, "exact Y0/Y'/Y'' cardinalities, q in {2,3}, n <= 3", &mut census_exact);
    report(2, "census matches A1~ point counts", &mut pieces_match);
    report(3, "truncated bijection, A1~, A2~, G2~ at L=8", &mut || bijections(&mut seqs));
    report(4, "matrix engine vs word rewriting, radius 6", &mut rewriting_oracle);
    report(5, "bitorsor suite on trivial, S3/A3, D4/Z4", &mut bitorsors);
    report(6, "orbit census vs twisted classes", &mut orbits);
    report(7, "sequence structural properties", &mut || sequence_properties(&seqs));
    if failed == 0 {
        println!("all 7 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
