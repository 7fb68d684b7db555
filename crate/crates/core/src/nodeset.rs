use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Maximum number of nodes supported by [`NodeSet`].
pub const MAX_NODES: usize = 32;

/// A subset of the node set `I`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All nodes `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == MAX_NODES {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        NodeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_NODES && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_NODES).filter(move |&i| bits & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let mask = self.0;
        let mut sub: u32 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = NodeSet(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(out)
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = NodeSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for NodeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= MAX_NODES) {
            return Err(serde::de::Error::custom(format!("node {bad} out of range")));
        }
        Ok(v.into_iter().collect())
    }
}
