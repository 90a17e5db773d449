//! Galois-orbit invariants.
//!
//! Constellations in one orbit of the absolute Galois group have isomorphic
//! centers and normalizations of their surface orders, and share a passport.
//! [`signature`] collects those invariants. Equal signatures are necessary
//! but not sufficient for sharing an orbit. The Galois action itself is not
//! computable from permutation data, so [`compare`] can only ever prove two
//! dessins lie in *different* orbits.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constellation::{Constellation, GroupOrder};
use crate::error::{Error, Result};
use crate::permutation::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantSignature {
    pub degree: usize,
    pub sigma_type: Partition,
    pub alpha_type: Partition,
    pub phi_type: Partition,
    pub genus: u64,
    /// Number of generators `z₁..z_r` of the center.
    pub center_rank: usize,
    /// Block sizes of the hereditary normalization.
    pub normalization_type: Partition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy_order: Option<GroupOrder>,
}

impl fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {} sigma {} alpha {} phi {} genus {} center_rank {} normalization {}",
            self.degree,
            self.sigma_type,
            self.alpha_type,
            self.phi_type,
            self.genus,
            self.center_rank,
            self.normalization_type
        )?;
        if let Some(order) = self.monodromy_order {
            write!(f, " monodromy {order}")?;
        }
        Ok(())
    }
}

/// Invariant signature of a map; `group_limit` enables the monodromy order.
pub fn signature(c: &Constellation, group_limit: Option<u64>) -> Result<InvariantSignature> {
    if !c.is_map() {
        return Err(Error::HypermapMode);
    }
    let passport = c.passport(group_limit);
    Ok(InvariantSignature {
        degree: passport.degree,
        center_rank: passport.sigma_type.len(),
        normalization_type: passport.sigma_type.clone(),
        sigma_type: passport.sigma_type,
        alpha_type: passport.alpha_type,
        phi_type: passport.phi_type,
        genus: passport.genus,
        monodromy_order: passport.monodromy_order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Signatures differ, so no Galois element maps one to the other.
    DifferentOrbits,
    /// Signatures agree; orbit membership is undecided.
    InvariantEquivalent { isomorphic: bool },
}

pub fn compare(a: &Constellation, b: &Constellation) -> Result<Verdict> {
    if signature(a, None)? != signature(b, None)? {
        return Ok(Verdict::DifferentOrbits);
    }
    Ok(Verdict::InvariantEquivalent {
        isomorphic: a.canonical_form().constellation == b.canonical_form().constellation,
    })
}

/// Hex SHA-256 of the canonical form's image sequences.
pub fn canonical_hash(c: &Constellation) -> String {
    let mut hasher = Sha256::new();
    for x in c.canonical_form().key() {
        hasher.update(x.to_le_bytes());
    }
    hex::encode(hasher.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismClass {
    pub canonical_hash: String,
    /// Indices into the input batch, ascending.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureBucket {
    pub signature: InvariantSignature,
    pub classes: Vec<IsomorphismClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub buckets: Vec<SignatureBucket>,
}

/// Buckets by signature, then splits each bucket into isomorphism classes.
///
/// Buckets are ordered by signature and classes by their first member.
pub fn classify_batch(cs: &[Constellation], group_limit: Option<u64>) -> Result<ClassificationReport> {
    let keyed: Vec<(InvariantSignature, String)> = cs
        .par_iter()
        .map(|c| Ok((signature(c, group_limit)?, canonical_hash(c))))
        .collect::<Result<_>>()?;

    let mut buckets: BTreeMap<InvariantSignature, Vec<IsomorphismClass>> = BTreeMap::new();
    for (i, (sig, hash)) in keyed.into_iter().enumerate() {
        let classes = buckets.entry(sig).or_default();
        match classes.iter_mut().find(|cl| cl.canonical_hash == hash) {
            Some(cl) => cl.members.push(i),
            None => classes.push(IsomorphismClass {
                canonical_hash: hash,
                members: vec![i],
            }),
        }
    }
    Ok(ClassificationReport {
        buckets: buckets
            .into_iter()
            .map(|(signature, classes)| SignatureBucket { signature, classes })
            .collect(),
    })
}

impl ClassificationReport {
    pub fn to_text(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (b, bucket) in self.buckets.iter().enumerate() {
            out.push_str(&format!("bucket {b}: {}\n", bucket.signature));
            for class in &bucket.classes {
                let members: Vec<&str> = class
                    .members
                    .iter()
                    .map(|&i| names.get(i).map_or("?", String::as_str))
                    .collect();
                out.push_str(&format!("  {}  {}\n", &class.canonical_hash[..16], members.join(" ")));
            }
        }
        out
    }
}
