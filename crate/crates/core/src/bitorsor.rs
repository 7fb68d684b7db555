//! Bitorsors over finite groups.
//!
//! A bitorsor is a finite set `E` with commuting free transitive left and
//! right actions of a group `L`. Each `e` defines an automorphism `tau_e` of
//! `L` by `tau_e(l) e = e l`. Fixing `e0`, the map `l e0 -> l omega` identifies
//! `E` with the coset `L omega` of the semidirect product `L ⋊ <omega>` where
//! `omega l omega^{-1} = tau_e0(l)`, and the conjugation action
//! `l: e -> l e l^{-1}` becomes conjugation inside that group.
//!
//! Groups are explicit multiplication tables so every identity can be checked
//! exhaustively.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validate closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not a closed square".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table: flat, identity, inverses })
    }

    fn from_parts(order: usize, table: Vec<usize>) -> Self {
        let identity = (0..order).find(|&e| (0..order).all(|x| table[e * order + x] == x)).unwrap();
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == identity).unwrap()).collect();
        FiniteGroup { order, table, identity, inverses }
    }

    /// The group generated by permutations of `0..degree` (given as image
    /// lists). Returns the group and its elements as permutations; index 0
    /// is the identity and elements are ordered by breadth-first discovery.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidGroup("generators act on different degrees".into()));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("{g:?} is not a permutation")));
                }
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in generators {
                let p = compose(&elems[k], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            k += 1;
            if elems.len() > 1 << 16 {
                return Err(Error::TooLarge("permutation group has more than 65536 elements".into()));
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elems[a], &elems[b])];
            }
        }
        Ok((Self::from_parts(n, table), elems))
    }

    /// `Z/n` written additively.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_parts(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        if map.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &x in map {
            if x >= self.order || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// `x -> a x a^{-1}`.
    pub fn inner(&self, a: usize) -> Automorphism {
        Automorphism(self.elements().map(|x| self.mul(self.mul(a, x), self.inv(a))).collect())
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let id = Automorphism((0..self.order).collect());
        orbits(self, &id)
    }
}

/// `(p ∘ q)(i) = p(q(i))`; as a product of permutations, apply `q` first.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// An automorphism of a [`FiniteGroup`] as the list of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Automorphism(pub Vec<usize>);

impl Automorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Smallest `d >= 1` with `self^d = id`.
    pub fn order(&self) -> usize {
        let mut power = self.clone();
        let mut d = 1;
        while !power.is_identity() {
            power = power.then(self);
            d += 1;
        }
        d
    }
}

/// A group `L` with left and right actions on a set `E` of the same size.
#[derive(Debug, Clone, Serialize)]
pub struct BiTorsor {
    pub name: String,
    group: FiniteGroup,
    size: usize,
    /// `left[l * size + e] = l.e`
    left: Vec<usize>,
    /// `right[e * |L| + l] = e.l`
    right: Vec<usize>,
}

impl BiTorsor {
    /// Validate freeness, transitivity and compatibility of both actions.
    pub fn new(
        name: impl Into<String>,
        group: FiniteGroup,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = group.order();
        let size = right.len();
        let bad = |m: String| Err(Error::InvalidTorsor(m));
        if size != n {
            return bad(format!("|E| = {size} differs from |L| = {n}"));
        }
        if left.len() != n || left.iter().any(|r| r.len() != size) || right.iter().any(|r| r.len() != n) {
            return bad("action tables have the wrong shape".into());
        }
        let t = BiTorsor {
            name: name.into(),
            group,
            size,
            left: left.into_iter().flatten().collect(),
            right: right.into_iter().flatten().collect(),
        };
        if t.left.iter().chain(&t.right).any(|&x| x >= size) {
            return bad("action lands outside E".into());
        }
        let g = &t.group;
        for e in 0..size {
            if t.act_left(g.identity(), e) != e || t.act_right(e, g.identity()) != e {
                return bad(format!("identity does not fix {e}"));
            }
            let mut orbit_l = vec![false; size];
            let mut orbit_r = vec![false; size];
            for l in g.elements() {
                orbit_l[t.act_left(l, e)] = true;
                orbit_r[t.act_right(e, l)] = true;
            }
            if orbit_l.contains(&false) || orbit_r.contains(&false) {
                return bad(format!("an action is not free and transitive at {e}"));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if t.act_left(g.mul(a, b), e) != t.act_left(a, t.act_left(b, e)) {
                        return bad("left action is not an action".into());
                    }
                    if t.act_right(e, g.mul(a, b)) != t.act_right(t.act_right(e, a), b) {
                        return bad("right action is not an action".into());
                    }
                    if t.act_right(t.act_left(a, e), b) != t.act_left(a, t.act_right(e, b)) {
                        return bad(format!("(le)l' != l(el') at ({a},{e},{b})"));
                    }
                }
            }
        }
        Ok(t)
    }

    /// `E = L` with both actions given by multiplication.
    pub fn trivial(name: impl Into<String>, group: FiniteGroup) -> Result<Self> {
        let n = group.order();
        let left = (0..n).map(|l| (0..n).map(|e| group.mul(l, e)).collect()).collect();
        let right = (0..n).map(|e| (0..n).map(|l| group.mul(e, l)).collect()).collect();
        Self::new(name, group, left, right)
    }

    /// For a normal subgroup `L` of a permutation group `Γ` and `g ∈ Γ`,
    /// the coset `E = gL = Lg` with left and right multiplication by `L`.
    pub fn from_normal_coset(
        name: impl Into<String>,
        ambient_generators: &[Vec<usize>],
        subgroup_generators: &[Vec<usize>],
        coset_rep: &[usize],
    ) -> Result<Self> {
        let (_, ambient) = FiniteGroup::from_permutations(ambient_generators)?;
        let (group, sub) = FiniteGroup::from_permutations(subgroup_generators)?;
        let in_ambient = |p: &Vec<usize>| ambient.contains(p);
        if !sub.iter().all(in_ambient) || !in_ambient(&coset_rep.to_vec()) {
            return Err(Error::InvalidTorsor("subgroup or coset representative outside the ambient group".into()));
        }
        let coset: Vec<Vec<usize>> = sub.iter().map(|l| compose(coset_rep, l)).collect();
        let index: HashMap<&Vec<usize>, usize> = coset.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let lookup =
            |p: Vec<usize>| index.get(&p).copied().ok_or_else(|| Error::InvalidTorsor("subgroup is not normal".into()));
        let n = sub.len();
        let mut left = vec![vec![0; n]; n];
        let mut right = vec![vec![0; n]; n];
        for (li, l) in sub.iter().enumerate() {
            for (ei, e) in coset.iter().enumerate() {
                left[li][ei] = lookup(compose(l, e))?;
                right[ei][li] = lookup(compose(e, l))?;
            }
        }
        Self::new(name, group, left, right)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn act_left(&self, l: usize, e: usize) -> usize {
        self.left[l * self.size + e]
    }

    pub fn act_right(&self, e: usize, l: usize) -> usize {
        self.right[e * self.group.order() + l]
    }

    /// `l e l^{-1}`, read as `l (e l^{-1})`.
    pub fn conjugate(&self, l: usize, e: usize) -> usize {
        self.act_left(l, self.act_right(e, self.group.inv(l)))
    }

    /// The automorphism `tau_e` with `tau_e(l) e = e l`.
    pub fn tau_of(&self, e: usize) -> Result<Automorphism> {
        let g = &self.group;
        let by_image: HashMap<usize, usize> = g.elements().map(|m| (self.act_left(m, e), m)).collect();
        let map: Vec<usize> = g.elements().map(|l| by_image[&self.act_right(e, l)]).collect();
        if !g.is_automorphism(&map) {
            return Err(Error::InvalidTorsor(format!("tau_{e} is not an automorphism")));
        }
        Ok(Automorphism(map))
    }
}

/// `L` with an automorphism `theta` of finite order dividing `d`; stands for
/// the coset `L omega` inside `L ⋊ Z/d`.
#[derive(Debug, Clone, Serialize)]
pub struct TwistedComponent {
    pub group: FiniteGroup,
    pub theta: Automorphism,
    pub d: usize,
}

impl TwistedComponent {
    /// `d = None` picks the exact order of `theta`.
    pub fn new(group: FiniteGroup, theta: Automorphism, d: Option<usize>) -> Result<Self> {
        if !group.is_automorphism(&theta.0) {
            return Err(Error::InvalidGroup("theta is not an automorphism".into()));
        }
        let order = theta.order();
        let d = d.unwrap_or(order);
        if d == 0 || !d.is_multiple_of(order) {
            return Err(Error::InvalidGroup(format!("theta^{d} is not the identity (order {order})")));
        }
        Ok(TwistedComponent { group, theta, d })
    }

    /// The semidirect product `L ⋊ Z/d`; element `l omega^k` has index
    /// `k |L| + l`.
    pub fn semidirect(&self) -> FiniteGroup {
        let n = self.group.order();
        let total = n * self.d;
        let mut powers = vec![Automorphism((0..n).collect())];
        for k in 1..self.d {
            powers.push(powers[k - 1].then(&self.theta));
        }
        let mut table = vec![0; total * total];
        for x in 0..total {
            let (a, l1) = (x / n, x % n);
            for y in 0..total {
                let (b, l2) = (y / n, y % n);
                // (l1 w^a)(l2 w^b) = l1 theta^a(l2) w^{a+b}
                let l = self.group.mul(l1, powers[a].apply(l2));
                table[x * total + y] = ((a + b) % self.d) * n + l;
            }
        }
        FiniteGroup::from_parts(total, table)
    }

    /// Index of `l omega^k` in [`Self::semidirect`].
    pub fn embed(&self, l: usize, k: usize) -> usize {
        (k % self.d) * self.group.order() + l
    }
}

/// The component built from `e0` together with `f: E -> L omega`, stored as
/// `f(e) = image[e] * omega`.
#[derive(Debug, Clone, Serialize)]
pub struct Component {
    pub twisted: TwistedComponent,
    pub e0: usize,
    pub image: Vec<usize>,
}

pub fn build_component(t: &BiTorsor, e0: usize, d: Option<usize>) -> Result<Component> {
    if e0 >= t.size() {
        return Err(Error::InvalidTorsor(format!("{e0} is not in E")));
    }
    let theta = t.tau_of(e0)?;
    let twisted = TwistedComponent::new(t.group().clone(), theta, d)?;
    let mut image = vec![usize::MAX; t.size()];
    for l in t.group().elements() {
        image[t.act_left(l, e0)] = l;
    }
    debug_assert!(!image.contains(&usize::MAX));
    Ok(Component { twisted, e0, image })
}

/// `f(l e l^{-1}) = l f(e) l^{-1}` for all `l`, `e`, computed in `L ⋊ Z/d`.
pub fn check_equivariance(t: &BiTorsor, e0: usize) -> Result<bool> {
    let c = build_component(t, e0, None)?;
    let semi = c.twisted.semidirect();
    let g = t.group();
    for l in g.elements() {
        let l_s = c.twisted.embed(l, 0);
        let l_inv = c.twisted.embed(g.inv(l), 0);
        for e in 0..t.size() {
            let lhs = c.twisted.embed(c.image[t.conjugate(l, e)], 1);
            let rhs = semi.mul(semi.mul(l_s, c.twisted.embed(c.image[e], 1)), l_inv);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Orbits of `x -> l x theta(l)^{-1}` on `L`, each sorted, in order of their
/// smallest element.
pub fn twisted_classes(c: &TwistedComponent) -> Vec<Vec<usize>> {
    orbits(&c.group, &c.theta)
}

fn orbits(g: &FiniteGroup, theta: &Automorphism) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; g.order()];
    let mut out = Vec::new();
    for x in g.elements() {
        if label[x] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        for l in g.elements() {
            let y = g.mul(g.mul(l, x), g.inv(theta.apply(l)));
            if label[y] == usize::MAX {
                label[y] = out.len();
                orbit.push(y);
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Per-torsor results of the exhaustive suite.
#[derive(Debug, Clone, Serialize)]
pub struct TorsorReport {
    pub name: String,
    pub order: usize,
    pub tau_automorphism_for_all_e: bool,
    pub tau_orders: BTreeMap<usize, usize>,
    pub component_built: bool,
    pub semidirect_order: usize,
    pub equivariant_for_all_e0: bool,
    pub twisted_class_count: usize,
}

impl TorsorReport {
    pub fn passed(&self) -> bool {
        self.tau_automorphism_for_all_e && self.component_built && self.equivariant_for_all_e0
    }
}

pub fn run_suite(t: &BiTorsor) -> TorsorReport {
    let mut tau_ok = true;
    let mut tau_orders = BTreeMap::new();
    for e in 0..t.size() {
        match t.tau_of(e) {
            Ok(tau) => {
                tau_orders.insert(e, tau.order());
            }
            Err(_) => tau_ok = false,
        }
    }
    let comp = build_component(t, 0, None);
    let equivariant = (0..t.size()).all(|e0| check_equivariance(t, e0).unwrap_or(false));
    TorsorReport {
        name: t.name.clone(),
        order: t.group().order(),
        tau_automorphism_for_all_e: tau_ok,
        tau_orders,
        component_built: comp.is_ok(),
        semidirect_order: comp.as_ref().map_or(0, |c| c.twisted.semidirect().order()),
        equivariant_for_all_e0: equivariant,
        twisted_class_count: comp.map_or(0, |c| twisted_classes(&c.twisted).len()),
    }
}

/// Built-in examples: trivial over `S_3`, `A_3 ⊂ S_3`, `Z/4 ⊂ D_4`.
pub mod examples {
    use super::*;

    pub fn s3_generators() -> Vec<Vec<usize>> {
        vec![vec![1, 0, 2], vec![1, 2, 0]]
    }

    pub fn trivial_s3() -> BiTorsor {
        let (g, _) = FiniteGroup::from_permutations(&s3_generators()).unwrap();
        BiTorsor::trivial("trivial S3", g).unwrap()
    }

    /// `E = (12) A_3` inside `S_3`.
    pub fn s3_over_a3() -> BiTorsor {
        BiTorsor::from_normal_coset("S3/A3", &s3_generators(), &[vec![1, 2, 0]], &[1, 0, 2]).unwrap()
    }

    /// `E` = the reflections of the square, over the rotation group `Z/4`.
    pub fn d4_over_z4() -> BiTorsor {
        let rot = vec![1, 2, 3, 0];
        let refl = vec![0, 3, 2, 1];
        BiTorsor::from_normal_coset("D4/Z4", &[rot.clone(), refl.clone()], &[rot], &refl).unwrap()
    }

    pub fn all() -> Vec<BiTorsor> {
        vec![trivial_s3(), s3_over_a3(), d4_over_z4()]
    }
}
