//! Diagram automorphisms, Bedard sequences `(J_n, w_n)` and the pieces they
//! index.
//!
//! A sequence for `(J, delta)` satisfies
//!
//! * `J_0 = J` and `J_n = J_{n-1} ∩ delta^{-1}(Ad(w_{n-1}) J_{n-1})`,
//! * `w_n` is minimal in `W'_{delta(J_n)} w_n W'_{J_n}`,
//! * `w_n ∈ w_{n-1} W'_{J_{n-1}}`,
//!
//! and becomes constant once the node sets stop shrinking, at which point
//! `Ad(w_inf) J_inf = delta(J_inf)`. Only the stages up to and including the
//! first stable one are stored.
//!
//! [`enumerate_sequences`] builds every sequence by a staged search that
//! never looks at the limit element, while [`sequence_from_w`] rebuilds a
//! sequence from its limit with `w_n = min_right(w_inf, J_n)`.
//! [`bijection_check`] compares the two.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cartan::CartanSpec;
use crate::cosets::{ad_simple, ad_subset, enumerate_parabolic, is_min_double_rep, min_right, ParabolicTable};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::nodeset::NodeSet;
use crate::poly::Polynomial;
use crate::weyl::{ball_enumerate_with, ReducedWord, WeylElement};

/// A permutation of `I` preserving the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DiagramAut {
    perm: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(n: usize) -> Self {
        DiagramAut { perm: (0..n).collect() }
    }

    /// Accepts `perm` (as the list of images of `0..n`) iff it is a
    /// permutation with `A[perm(i)][perm(j)] = A[i][j]`.
    pub fn new(spec: &CartanSpec, perm: Vec<usize>) -> Result<Self> {
        let n = spec.size();
        if perm.len() != n {
            return Err(Error::InvalidAutomorphism(format!("expected images of {n} nodes, got {}", perm.len())));
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::InvalidAutomorphism(format!("{perm:?} is not a permutation of 0..{n}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if spec.entry(perm[i], perm[j]) != spec.entry(i, j) {
                    return Err(Error::InvalidAutomorphism(format!(
                        "{perm:?} does not preserve the Cartan matrix at ({i},{j})"
                    )));
                }
            }
        }
        Ok(DiagramAut { perm })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, set: NodeSet) -> NodeSet {
        set.iter().map(|i| self.perm[i]).collect()
    }

    /// `delta^{-1}(set)`.
    pub fn preimage(&self, set: NodeSet) -> NodeSet {
        (0..self.perm.len()).filter(|&i| set.contains(self.perm[i])).collect()
    }

    pub fn inverse_of(&self, k: usize) -> usize {
        self.perm.iter().position(|&p| p == k).expect("permutation")
    }

    pub fn order(&self) -> usize {
        permutation_order(self.perm.iter().copied().enumerate())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}

fn permutation_order(pairs: impl Iterator<Item = (usize, usize)>) -> usize {
    let map: BTreeMap<usize, usize> = pairs.collect();
    let mut order = 1usize;
    let mut done = HashSet::new();
    for &start in map.keys() {
        if done.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        loop {
            done.insert(x);
            x = map[&x];
            len += 1;
            if x == start {
                break;
            }
        }
        order = order.lcm(&len);
    }
    order
}

/// `J ∩ delta^{-1}(Ad(w) J)`.
pub fn next_nodes(nodes: NodeSet, w: &WeylElement, delta: &DiagramAut) -> NodeSet {
    nodes.intersection(delta.preimage(ad_subset(w, nodes)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub nodes: NodeSet,
    pub element: WeylElement,
}

impl Serialize for Stage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Stage", 2)?;
        st.serialize_field("J", &self.nodes)?;
        st.serialize_field("w", &self.element.reduced_word())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BedardSequence {
    nodes: NodeSet,
    delta: DiagramAut,
    stages: Vec<Stage>,
}

impl BedardSequence {
    pub fn nodes(&self) -> NodeSet {
        self.nodes
    }

    pub fn delta(&self) -> &DiagramAut {
        &self.delta
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn spec(&self) -> &Arc<CartanSpec> {
        self.stages[0].element.spec()
    }

    pub fn j_inf(&self) -> NodeSet {
        self.stages.last().unwrap().nodes
    }

    pub fn w_inf(&self) -> &WeylElement {
        &self.stages.last().unwrap().element
    }

    /// One more step of the recursion applied to the limit stage.
    pub fn step_limit(&self) -> Stage {
        let last = self.stages.last().unwrap();
        let nodes = next_nodes(last.nodes, &last.element, &self.delta);
        Stage { element: min_right(&last.element, nodes), nodes }
    }

    /// Check every defining condition; the first failure is reported.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::SequenceInvariant(msg));
        if self.stages.is_empty() {
            return fail("no stages".into());
        }
        if self.stages[0].nodes != self.nodes {
            return fail(format!("J_0 = {} differs from J = {}", self.stages[0].nodes, self.nodes));
        }
        for (n, st) in self.stages.iter().enumerate() {
            let left = self.delta.image(st.nodes);
            if !is_min_double_rep(&st.element, left, st.nodes) {
                return fail(format!(
                    "w_{n} = {} is not minimal in its ({left}, {}) double coset",
                    st.element.reduced_word(),
                    st.nodes
                ));
            }
            if n == 0 {
                continue;
            }
            let prev = &self.stages[n - 1];
            let expect = next_nodes(prev.nodes, &prev.element, &self.delta);
            if st.nodes != expect {
                return fail(format!("J_{n} = {} but the recursion gives {expect}", st.nodes));
            }
            if st.nodes == prev.nodes {
                return fail(format!("stage {n} repeats J_{}; the sequence was already stable", n - 1));
            }
            if min_right(&st.element, prev.nodes) != prev.element {
                return fail(format!("w_{n} is not in w_{} W'_J_{}", n - 1, n - 1));
            }
        }
        let last = self.stages.last().unwrap();
        if next_nodes(last.nodes, &last.element, &self.delta) != last.nodes {
            return fail(format!("last stage J = {} is not stable", last.nodes));
        }
        if ad_subset(&last.element, last.nodes) != self.delta.image(last.nodes) {
            return fail("Ad(w_inf) J_inf differs from delta(J_inf)".into());
        }
        Ok(())
    }
}

impl Serialize for BedardSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BedardSequence", 6)?;
        st.serialize_field("J", &self.nodes)?;
        st.serialize_field("delta", &self.delta)?;
        st.serialize_field("stages", &self.stages)?;
        st.serialize_field("J_inf", &self.j_inf())?;
        st.serialize_field("w_inf", &self.w_inf().reduced_word())?;
        st.serialize_field("length", &self.w_inf().length())?;
        st.end()
    }
}

fn check_setup(spec: &CartanSpec, nodes: NodeSet, delta: &DiagramAut) -> Result<()> {
    spec.check_nodes(nodes)?;
    if nodes == spec.nodes() {
        return Err(Error::Precondition("J must be a proper subset of I".into()));
    }
    if delta.perm().len() != spec.size() {
        return Err(Error::Precondition("delta acts on a different node set".into()));
    }
    Ok(())
}

/// Rebuild the sequence with limit `w` greedily. Any invariant failure is
/// returned as an error, never repaired.
pub fn sequence_from_w(w: &WeylElement, nodes: NodeSet, delta: &DiagramAut) -> Result<BedardSequence> {
    check_setup(w.spec(), nodes, delta)?;
    let twisted = delta.image(nodes);
    if let Some(k) = twisted.iter().find(|&k| w.has_left_descent(k)) {
        return Err(Error::Precondition(format!("{} has left descent {k} in delta(J) = {twisted}", w.reduced_word())));
    }
    let mut stages = vec![Stage { nodes, element: min_right(w, nodes) }];
    loop {
        let last = stages.last().unwrap();
        let next = next_nodes(last.nodes, &last.element, delta);
        if next == last.nodes {
            break;
        }
        if stages.len() > nodes.len() + 1 {
            return Err(Error::SequenceInvariant("node sets failed to stabilize".into()));
        }
        stages.push(Stage { nodes: next, element: min_right(w, next) });
    }
    let seq = BedardSequence { nodes, delta: delta.clone(), stages };
    seq.validate()?;
    if seq.w_inf() != w {
        return Err(Error::SequenceInvariant(format!(
            "limit {} differs from the requested {}",
            seq.w_inf().reduced_word(),
            w.reduced_word()
        )));
    }
    Ok(seq)
}

type TableCache = Mutex<HashMap<NodeSet, Arc<ParabolicTable>>>;

fn cached_table(spec: &Arc<CartanSpec>, cache: &TableCache, nodes: NodeSet) -> Result<Arc<ParabolicTable>> {
    if let Some(t) = cache.lock().unwrap().get(&nodes) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(enumerate_parabolic(spec, nodes)?);
    cache.lock().unwrap().insert(nodes, Arc::clone(&t));
    Ok(t)
}

fn extend(
    spec: &Arc<CartanSpec>,
    delta: &DiagramAut,
    max_len: usize,
    cache: &TableCache,
    stages: &mut Vec<Stage>,
    root: NodeSet,
    out: &mut Vec<BedardSequence>,
) -> Result<()> {
    let last = stages.last().unwrap().clone();
    let next = next_nodes(last.nodes, &last.element, delta);
    if next == last.nodes {
        out.push(BedardSequence { nodes: root, delta: delta.clone(), stages: stages.clone() });
        return Ok(());
    }
    let table = cached_table(spec, cache, last.nodes)?;
    let left = delta.image(next);
    for y in &table.elements {
        let cand = last.element.multiply(y)?;
        if cand.length() <= max_len && is_min_double_rep(&cand, left, next) {
            stages.push(Stage { nodes: next, element: cand });
            extend(spec, delta, max_len, cache, stages, root, out)?;
            stages.pop();
        }
    }
    Ok(())
}

/// Every sequence in `T(J, delta)` whose limit has length at most `max_len`,
/// ordered by limit length and then by smallest reduced word of the limit.
pub fn enumerate_sequences(
    spec: &Arc<CartanSpec>,
    nodes: NodeSet,
    delta: &DiagramAut,
    max_len: usize,
) -> Result<Vec<BedardSequence>> {
    enumerate_sequences_with(spec, nodes, delta, max_len, Exec::default())
}

pub fn enumerate_sequences_with(
    spec: &Arc<CartanSpec>,
    nodes: NodeSet,
    delta: &DiagramAut,
    max_len: usize,
    exec: Exec,
) -> Result<Vec<BedardSequence>> {
    check_setup(spec, nodes, delta)?;
    let ball = ball_enumerate_with(spec, max_len, exec);
    let left = delta.image(nodes);
    let starts: Vec<WeylElement> = ball.iter().filter(|w| is_min_double_rep(w, left, nodes)).cloned().collect();
    let cache: TableCache = Mutex::new(HashMap::new());
    let branches = exec.map(&starts, |w0| {
        let mut out = Vec::new();
        let mut stages = vec![Stage { nodes, element: w0.clone() }];
        extend(spec, delta, max_len, &cache, &mut stages, nodes, &mut out).map(|_| out)
    });
    let mut all = Vec::new();
    for b in branches {
        all.extend(b?);
    }
    let mut keyed: Vec<((usize, ReducedWord), BedardSequence)> =
        exec.map(&all, |s| ((s.w_inf().length(), s.w_inf().reduced_word()), s.clone()));
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

/// Outcome of comparing the staged enumeration with the greedy inverse on a
/// length-bounded truncation.
#[derive(Debug, Clone, Serialize)]
pub struct BijectionReport {
    pub spec: String,
    #[serde(rename = "J")]
    pub nodes: NodeSet,
    pub delta: DiagramAut,
    pub max_len: usize,
    pub sequences: usize,
    /// `|{w : no left descent in delta(J), l(w) <= max_len}|`.
    pub targets: usize,
    pub limits_in_quotient: bool,
    pub injective: bool,
    pub surjective: bool,
    pub round_trip: bool,
    pub violations: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.limits_in_quotient && self.injective && self.surjective && self.round_trip
    }
}

pub fn bijection_check(
    spec: &Arc<CartanSpec>,
    nodes: NodeSet,
    delta: &DiagramAut,
    max_len: usize,
) -> Result<BijectionReport> {
    bijection_check_with(spec, nodes, delta, max_len, Exec::default())
}

pub fn bijection_check_with(
    spec: &Arc<CartanSpec>,
    nodes: NodeSet,
    delta: &DiagramAut,
    max_len: usize,
    exec: Exec,
) -> Result<BijectionReport> {
    let seqs = enumerate_sequences_with(spec, nodes, delta, max_len, exec)?;
    check_against(spec, nodes, delta, max_len, &seqs, exec)
}

/// Run the four checks against an already enumerated list of sequences.
pub fn check_against(
    spec: &Arc<CartanSpec>,
    nodes: NodeSet,
    delta: &DiagramAut,
    max_len: usize,
    seqs: &[BedardSequence],
    exec: Exec,
) -> Result<BijectionReport> {
    let left = delta.image(nodes);
    let mut violations = Vec::new();

    let mut limits_in_quotient = true;
    for s in seqs {
        if let Some(k) = left.iter().find(|&k| s.w_inf().has_left_descent(k)) {
            limits_in_quotient = false;
            violations.push(format!("limit {} has left descent {k}", s.w_inf().reduced_word()));
        }
    }

    let mut seen: HashSet<&WeylElement> = HashSet::new();
    let mut injective = true;
    for s in seqs {
        if !seen.insert(s.w_inf()) {
            injective = false;
            violations.push(format!("limit {} reached by two sequences", s.w_inf().reduced_word()));
        }
    }

    let ball = ball_enumerate_with(spec, max_len, exec);
    let targets: Vec<&WeylElement> = ball.iter().filter(|w| left.iter().all(|k| !w.has_left_descent(k))).collect();
    let mut surjective = true;
    for w in &targets {
        if !seen.contains(*w) {
            surjective = false;
            violations.push(format!("{} is not the limit of any sequence", w.reduced_word()));
        }
    }

    let trips = exec.map(seqs, |s| match sequence_from_w(s.w_inf(), nodes, delta) {
        Ok(back) if back == *s => None,
        Ok(_) => Some(format!("greedy rebuild of {} gives a different sequence", s.w_inf().reduced_word())),
        Err(e) => Some(format!("greedy rebuild of {} failed: {e}", s.w_inf().reduced_word())),
    });
    let mut round_trip = true;
    for v in trips.into_iter().flatten() {
        round_trip = false;
        violations.push(v);
    }

    Ok(BijectionReport {
        spec: spec.label(),
        nodes,
        delta: delta.clone(),
        max_len,
        sequences: seqs.len(),
        targets: targets.len(),
        limits_in_quotient,
        injective,
        surjective,
        round_trip,
        violations,
    })
}

/// Combinatorial data of the piece indexed by a sequence.
#[derive(Debug, Clone)]
pub struct PieceDescriptor {
    pub sequence: BedardSequence,
    pub w_inf_length: usize,
    /// `j -> k` with `delta(k) = Ad(w_inf)(j)`, for `j` in `J_inf`.
    pub twist: BTreeMap<usize, usize>,
    pub twist_order: usize,
}

impl PieceDescriptor {
    pub fn new(sequence: BedardSequence) -> Result<Self> {
        let w = sequence.w_inf();
        let j_inf = sequence.j_inf();
        let mut twist = BTreeMap::new();
        for j in j_inf.iter() {
            let img = ad_simple(w, j)
                .ok_or_else(|| Error::SequenceInvariant(format!("Ad(w_inf) moves node {j} off the simple roots")))?;
            let k = sequence.delta().inverse_of(img);
            if !j_inf.contains(k) {
                return Err(Error::SequenceInvariant(format!("twist sends {j} outside J_inf")));
            }
            twist.insert(j, k);
        }
        let twist_order = permutation_order(twist.iter().map(|(&a, &b)| (a, b)));
        Ok(PieceDescriptor { w_inf_length: w.length(), sequence, twist, twist_order })
    }

    pub fn nodes(&self) -> NodeSet {
        self.sequence.nodes()
    }
}

impl Serialize for PieceDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PieceDescriptor", 5)?;
        st.serialize_field("J", &self.nodes())?;
        st.serialize_field("J_inf", &self.sequence.j_inf())?;
        st.serialize_field("w_inf", &self.sequence.w_inf().reduced_word())?;
        st.serialize_field("w_inf_length", &self.w_inf_length)?;
        st.serialize_field("twist", &self.twist)?;
        st.serialize_field("twist_order", &self.twist_order)?;
        st.end()
    }
}

/// The order of `P/U_P` for a parahoric of type `J`:
/// `q^{N_J} (q-1)^rank P_{W'_J}(q)`.
pub fn levi_order(spec: &Arc<CartanSpec>, nodes: NodeSet, rank: usize) -> Result<Polynomial> {
    let table = enumerate_parabolic(spec, nodes)?;
    Ok(Polynomial::monomial(table.n_positive).mul(&Polynomial::new(vec![-1, 1]).pow(rank)).mul(&table.poincare))
}

/// Point count of the piece over `F_q`: `#(P/U_P) q^{l(w_inf)}`.
pub fn point_count(descriptor: &PieceDescriptor, rank: usize) -> Result<Polynomial> {
    let spec = descriptor.sequence.spec();
    Ok(levi_order(spec, descriptor.nodes(), rank)?.mul(&Polynomial::monomial(descriptor.w_inf_length)))
}

/// Default reductive rank `|I| - 1`.
pub fn default_rank(spec: &CartanSpec) -> usize {
    spec.size() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: &str, r: usize) -> Arc<CartanSpec> {
        Arc::new(CartanSpec::affine(f, r).unwrap())
    }

    fn w(s: &Arc<CartanSpec>, word: &[usize]) -> WeylElement {
        WeylElement::from_word(s, word).unwrap()
    }

    fn set(v: &[usize]) -> NodeSet {
        v.iter().copied().collect()
    }

    #[test]
    fn automorphism_validation() {
        let a2 = spec("A", 2);
        assert!(DiagramAut::new(&a2, vec![0, 1, 2]).is_ok());
        assert!(DiagramAut::new(&a2, vec![1, 2, 0]).is_ok());
        assert!(DiagramAut::new(&a2, vec![0, 2, 1]).is_ok());
        assert!(DiagramAut::new(&a2, vec![0, 2, 2]).is_err());
        assert!(DiagramAut::new(&a2, vec![0, 1]).is_err());
        let a1 = spec("A", 1);
        assert!(DiagramAut::new(&a1, vec![1, 0]).is_ok());
        // C2~: swapping the two end nodes is a symmetry, moving the middle is not
        let c2 = spec("C", 2);
        assert!(DiagramAut::new(&c2, vec![2, 1, 0]).is_ok());
        assert!(DiagramAut::new(&c2, vec![1, 0, 2]).is_err());
        assert_eq!(DiagramAut::new(&a2, vec![1, 2, 0]).unwrap().order(), 3);
    }

    #[test]
    fn greedy_identity_case() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let s = sequence_from_w(&WeylElement::identity(&a1), set(&[0]), &id).unwrap();
        assert_eq!(s.stages().len(), 1);
        assert_eq!(s.j_inf(), set(&[0]));
        assert!(s.w_inf().is_identity());
    }

    #[test]
    fn greedy_a1_s1s0() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let s = sequence_from_w(&w(&a1, &[1, 0]), set(&[0]), &id).unwrap();
        let got: Vec<(NodeSet, Vec<usize>)> =
            s.stages().iter().map(|st| (st.nodes, st.element.reduced_word().0)).collect();
        assert_eq!(got, vec![(set(&[0]), vec![1]), (NodeSet::EMPTY, vec![1, 0])]);
    }

    #[test]
    fn greedy_a2_rotation() {
        let a2 = spec("A", 2);
        let rot = DiagramAut::new(&a2, vec![1, 2, 0]).unwrap();
        let s = sequence_from_w(&WeylElement::identity(&a2), set(&[0]), &rot).unwrap();
        let got: Vec<(NodeSet, bool)> = s.stages().iter().map(|st| (st.nodes, st.element.is_identity())).collect();
        assert_eq!(got, vec![(set(&[0]), true), (NodeSet::EMPTY, true)]);
    }

    #[test]
    fn greedy_rejects_left_descent_in_delta_j() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let err = sequence_from_w(&w(&a1, &[0, 1]), set(&[0]), &id).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let err = sequence_from_w(&w(&a1, &[0]), set(&[0, 1]), &id).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn tampered_sequence_fails_validation() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let mut s = sequence_from_w(&w(&a1, &[1, 0]), set(&[0]), &id).unwrap();
        s.stages[1].element = w(&a1, &[1, 0, 1]);
        assert!(matches!(s.validate(), Err(Error::SequenceInvariant(_))));
        let mut s = sequence_from_w(&w(&a1, &[1, 0]), set(&[0]), &id).unwrap();
        s.stages.pop();
        assert!(s.validate().is_err());
    }

    #[test]
    fn a1_enumeration_counts() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let seqs = enumerate_sequences(&a1, set(&[0]), &id, 0).unwrap();
        assert_eq!(seqs.len(), 1);
        let seqs = enumerate_sequences(&a1, set(&[0]), &id, 3).unwrap();
        let lens: Vec<usize> = seqs.iter().map(|s| s.w_inf().length()).collect();
        assert_eq!(lens, vec![0, 1, 2, 3]);
        let words: Vec<Vec<usize>> = seqs.iter().map(|s| s.w_inf().reduced_word().0).collect();
        assert_eq!(words, vec![vec![], vec![1], vec![1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn a1_bijection_both_deltas() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let r = bijection_check(&a1, set(&[0]), &id, 8).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.sequences, 9);
        let swap = DiagramAut::new(&a1, vec![1, 0]).unwrap();
        let r = bijection_check(&a1, set(&[0]), &swap, 6).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn a2_bijection_counts_match_quotient() {
        let a2 = spec("A", 2);
        let id = DiagramAut::identity(3);
        let r = bijection_check(&a2, set(&[1, 2]), &id, 4).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.sequences, r.targets);
        let rot = DiagramAut::new(&a2, vec![1, 2, 0]).unwrap();
        let r = bijection_check(&a2, set(&[0, 1]), &rot, 6).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn modes_agree() {
        let g2 = spec("G", 2);
        let id = DiagramAut::identity(3);
        let a = enumerate_sequences_with(&g2, set(&[1]), &id, 6, Exec::Sequential).unwrap();
        let b = enumerate_sequences_with(&g2, set(&[1]), &id, 6, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn point_counts_for_a1() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let seqs = enumerate_sequences(&a1, set(&[0]), &id, 2).unwrap();
        let polys: Vec<Vec<i64>> = seqs
            .into_iter()
            .map(|s| point_count(&PieceDescriptor::new(s).unwrap(), 1).unwrap().coeffs().to_vec())
            .collect();
        // q(q^2-1), q^2(q^2-1), q^3(q^2-1)
        assert_eq!(polys, vec![vec![0, -1, 0, 1], vec![0, 0, -1, 0, 1], vec![0, 0, 0, -1, 0, 1]]);
    }

    #[test]
    fn descriptor_twist() {
        let a2 = spec("A", 2);
        let id = DiagramAut::identity(3);
        // the longest element of W_{1,2} swaps nodes 1 and 2 by conjugation
        let x = w(&a2, &[1, 2, 1]);
        let s = sequence_from_w(&x, set(&[1, 2]), &id);
        // x has left descents 1 and 2, so it is not a valid limit for J = {1,2}
        assert!(s.is_err());
        let seqs = enumerate_sequences(&a2, set(&[1, 2]), &id, 2).unwrap();
        let d = PieceDescriptor::new(seqs[0].clone()).unwrap();
        assert_eq!(d.twist.len(), 2);
        assert_eq!(d.twist_order, 1);
        let rot = DiagramAut::new(&a2, vec![1, 2, 0]).unwrap();
        let r = enumerate_sequences(&a2, NodeSet::EMPTY, &rot, 1).unwrap();
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn json_shape() {
        let a1 = spec("A", 1);
        let id = DiagramAut::identity(2);
        let s = sequence_from_w(&w(&a1, &[1, 0]), set(&[0]), &id).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(
            js,
            r#"{"J":[0],"delta":[0,1],"stages":[{"J":[0],"w":[1]},{"J":[],"w":[1,0]}],"J_inf":[],"w_inf":[1,0],"length":2}"#
        );
    }
}
