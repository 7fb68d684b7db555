//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use parahoric::bedard::{next_nodes, sequence_from_w, BedardSequence};
use parahoric::bitorsor::FiniteGroup;
use parahoric::cartan::coxeter_exponent;
use parahoric::CartanSpec;

/// Word rewriting in the Coxeter presentation: braid moves plus deletion of
/// `ss`. A word with no `ss` anywhere in its braid class is reduced, and the
/// class is then the set of its reduced words.
pub struct Rewriter {
    m: Vec<Vec<Option<u32>>>,
}

impl Rewriter {
    pub fn new(spec: &CartanSpec) -> Self {
        let n = spec.size();
        Rewriter { m: (0..n).map(|i| (0..n).map(|j| coxeter_exponent(spec, i, j)).collect()).collect() }
    }

    fn braid_moves(&self, w: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            for t in 0..self.m.len() {
                let s = w[p];
                if s == t {
                    continue;
                }
                let Some(m) = self.m[s][t] else { continue };
                let m = m as usize;
                if p + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|k| w[p + k] == if k % 2 == 0 { s } else { t });
                if alternates {
                    let mut v = w.to_vec();
                    for k in 0..m {
                        v[p + k] = if k % 2 == 0 { t } else { s };
                    }
                    out.push(v);
                }
            }
        }
        out
    }

    fn class(&self, w: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut seen = BTreeSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for y in self.braid_moves(&x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Lexicographically smallest reduced word for the element `w`.
    pub fn normal_form(&self, w: &[usize]) -> Vec<usize> {
        let mut cur = w.to_vec();
        'outer: loop {
            let class = self.class(&cur);
            for x in &class {
                if let Some(k) = (0..x.len().saturating_sub(1)).find(|&k| x[k] == x[k + 1]) {
                    let mut y = x.clone();
                    y.drain(k..k + 2);
                    cur = y;
                    continue 'outer;
                }
            }
            return class.into_iter().next().unwrap();
        }
    }

    pub fn right_descents(&self, w: &[usize]) -> Vec<usize> {
        let l = self.normal_form(w).len();
        (0..self.m.len())
            .filter(|&i| {
                let mut v = w.to_vec();
                v.push(i);
                self.normal_form(&v).len() < l
            })
            .collect()
    }

    pub fn left_descents(&self, w: &[usize]) -> Vec<usize> {
        let l = self.normal_form(w).len();
        (0..self.m.len())
            .filter(|&i| {
                let mut v = vec![i];
                v.extend_from_slice(w);
                self.normal_form(&v).len() < l
            })
            .collect()
    }
}

/// All words of length at most `max_len` over `0..n`.
pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..n {
                let mut v: Vec<usize> = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// An isomorphism `g -> h`, by backtracking over images with the
/// multiplication table checked on every assigned pair.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(k: usize, g: &FiniteGroup, h: &FiniteGroup, phi: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = g.order();
        if k == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            phi[k] = cand;
            let ok = (0..=k).all(|a| {
                [(a, k), (k, a)].iter().all(|&(x, y)| {
                    let xy = g.mul(x, y);
                    xy > k || phi[xy] == h.mul(phi[x], phi[y])
                })
            });
            if ok {
                used[cand] = true;
                if go(k + 1, g, h, phi, used) {
                    return true;
                }
                used[cand] = false;
            }
        }
        phi[k] = usize::MAX;
        false
    }

    if go(0, g, h, &mut phi, &mut used) {
        Some(phi)
    } else {
        None
    }
}

/// Structural properties of one sequence; returns the failures.
pub fn sequence_property_failures(s: &BedardSequence) -> Vec<String> {
    let mut out = Vec::new();
    let st = s.stages();
    for k in 1..st.len() {
        if st[k].element.length() < st[k - 1].element.length() {
            out.push(format!("length drops at stage {k}"));
        }
        if !st[k].nodes.is_subset(st[k - 1].nodes) || st[k].nodes == st[k - 1].nodes {
            out.push(format!("J_{k} is not a proper subset of J_{}", k - 1));
        }
        if next_nodes(st[k - 1].nodes, &st[k - 1].element, s.delta()) != st[k].nodes {
            out.push(format!("J_{k} does not follow the recursion"));
        }
    }
    let step = s.step_limit();
    if step.nodes != s.j_inf() || &step.element != s.w_inf() {
        out.push("the limit stage is not fixed by one more step".into());
    }
    match sequence_from_w(s.w_inf(), s.nodes(), s.delta()) {
        Ok(back) if &back == s => {}
        Ok(_) => out.push("sequence_from_w(w_inf) rebuilds a different sequence".into()),
        Err(e) => out.push(format!("sequence_from_w(w_inf) failed: {e}")),
    }
    out
}

pub fn affine(family: &str, rank: usize) -> Arc<CartanSpec> {
    Arc::new(CartanSpec::affine(family, rank).unwrap())
}

/// Memoized normal forms, for oracle runs over many words.
pub struct CachedRewriter {
    inner: Rewriter,
    cache: HashMap<Vec<usize>, Vec<usize>>,
}

impl CachedRewriter {
    pub fn new(spec: &CartanSpec) -> Self {
        CachedRewriter { inner: Rewriter::new(spec), cache: HashMap::new() }
    }

    pub fn normal_form(&mut self, w: &[usize]) -> Vec<usize> {
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let v = self.inner.normal_form(w);
        self.cache.insert(w.to_vec(), v.clone());
        v
    }

    pub fn rewriter(&self) -> &Rewriter {
        &self.inner
    }
}
