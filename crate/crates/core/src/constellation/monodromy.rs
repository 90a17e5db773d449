use std::collections::HashSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::Constellation;

/// Default cap on the number of group elements enumerated by
/// [`Constellation::monodromy_order`].
pub const DEFAULT_GROUP_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupOrder {
    Exact(u64),
    /// The closure grew past the limit before stabilising.
    Exceeded(u64),
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOrder::Exact(n) => write!(f, "{n}"),
            GroupOrder::Exceeded(limit) => write!(f, ">{limit}"),
        }
    }
}

impl Constellation {
    /// Order of the monodromy group `⟨σ, α⟩`, by breadth-first closure.
    ///
    /// Plain enumeration: every element is stored, so `limit` bounds memory
    /// as well as time. Elements on up to 25 darts are packed into one integer.
    pub fn monodromy_order(&self, limit: u64) -> GroupOrder {
        let n = self.n_darts();
        let gens: Vec<Vec<u32>> = [self.sigma(), self.alpha()]
            .iter()
            .map(|p| p.zero_based().iter().map(|&i| i as u32).collect())
            .collect();
        if n <= 16 {
            closure(&gens, limit, pack::<u64, 4>, unpack::<u64, 4>)
        } else if n <= 25 {
            closure(&gens, limit, pack::<u128, 5>, unpack::<u128, 5>)
        } else {
            closure(&gens, limit, <[u32]>::to_vec, |k: &Vec<u32>, out: &mut [u32]| {
                out.copy_from_slice(k)
            })
        }
    }
}

trait Word: Copy + From<u8> + std::ops::Shl<u32, Output = Self> + std::ops::Shr<u32, Output = Self> {
    fn or(self, other: Self) -> Self;
    fn low(self, bits: u32) -> u32;
}

impl Word for u64 {
    fn or(self, other: Self) -> Self {
        self | other
    }
    fn low(self, bits: u32) -> u32 {
        (self & ((1 << bits) - 1)) as u32
    }
}

impl Word for u128 {
    fn or(self, other: Self) -> Self {
        self | other
    }
    fn low(self, bits: u32) -> u32 {
        (self & ((1 << bits) - 1)) as u32
    }
}

fn pack<W: Word, const BITS: u32>(p: &[u32]) -> W {
    p.iter()
        .enumerate()
        .fold(W::from(0), |acc, (i, &x)| acc.or(W::from(x as u8) << (BITS * i as u32)))
}

fn unpack<W: Word, const BITS: u32>(k: &W, out: &mut [u32]) {
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = (*k >> (BITS * i as u32)).low(BITS);
    }
}

fn closure<K: Eq + Hash>(
    gens: &[Vec<u32>],
    limit: u64,
    encode: impl Fn(&[u32]) -> K,
    decode: impl Fn(&K, &mut [u32]),
) -> GroupOrder {
    let n = gens[0].len();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut seen: HashSet<K> = HashSet::new();
    seen.insert(encode(&identity));
    let mut frontier = vec![encode(&identity)];
    let (mut x, mut gx) = (vec![0u32; n], vec![0u32; n]);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for k in &frontier {
            decode(k, &mut x);
            for g in gens {
                for (dst, &i) in gx.iter_mut().zip(&x) {
                    *dst = g[i as usize];
                }
                let key = encode(&gx);
                if !seen.contains(&key) {
                    if seen.len() as u64 >= limit {
                        return GroupOrder::Exceeded(limit);
                    }
                    seen.insert(encode(&gx));
                    next.push(key);
                }
            }
        }
        frontier = next;
    }
    GroupOrder::Exact(seen.len() as u64)
}
