//! Permutation triples `[σ, α, φ]` and their topology.
//!
//! A constellation on `n` darts is valid when the three permutations share
//! the degree, generate a transitive group, and satisfy the composite law
//! `φ(α(σ(d))) = d` for every dart. In map mode `α` must additionally be a
//! fixed-point-free involution, and the triple describes a graph cellularly
//! embedded in a closed orientable surface: `σ` rotates darts around
//! vertices, `α` glues darts into edges, and `φ = σ⁻¹∘α` walks faces.

mod canonical;
mod monodromy;
mod subdivide;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{Partition, Permutation};

pub use canonical::CanonicalForm;
pub use monodromy::{GroupOrder, DEFAULT_GROUP_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Map,
    Hypermap,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Map => "map",
            Mode::Hypermap => "hypermap",
        })
    }
}

/// A validated 3-constellation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constellation {
    sigma: Permutation,
    alpha: Permutation,
    phi: Permutation,
    mode: Mode,
}

/// One α-2-cycle of a map. `darts.0 < darts.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub darts: (usize, usize),
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.darts.0, self.darts.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DegreeMismatch {
        permutation: String,
        expected: usize,
        found: usize,
    },
    NotTransitive {
        orbits: usize,
    },
    ProductNotIdentity {
        dart: usize,
        image: usize,
    },
    AlphaNotInvolution {
        dart: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeMismatch {
                permutation,
                expected,
                found,
            } => write!(
                f,
                "DegreeMismatch: {permutation} has degree {found}, expected {expected}"
            ),
            Violation::NotTransitive { orbits } => {
                write!(f, "NotTransitive: <sigma, alpha> has {orbits} orbits")
            }
            Violation::ProductNotIdentity { dart, image } => {
                write!(f, "ProductNotIdentity: phi(alpha(sigma({dart}))) = {image}")
            }
            Violation::AlphaNotInvolution { dart } => {
                write!(
                    f,
                    "AlphaNotInvolution: alpha is not a fixed-point-free involution at dart {dart}"
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every constellation invariant for the declared mode.
///
/// Only the first offending dart is reported for the composite law and the
/// involution check.
pub fn validate(
    n_darts: usize,
    sigma: &Permutation,
    alpha: &Permutation,
    phi: &Permutation,
    mode: Mode,
) -> ValidationReport {
    let mut violations = Vec::new();
    for (name, p) in [("sigma", sigma), ("alpha", alpha), ("phi", phi)] {
        if p.degree() != n_darts {
            violations.push(Violation::DegreeMismatch {
                permutation: name.to_string(),
                expected: n_darts,
                found: p.degree(),
            });
        }
    }
    if !violations.is_empty() || n_darts == 0 {
        if n_darts == 0 {
            violations.push(Violation::NotTransitive { orbits: 0 });
        }
        return ValidationReport { violations };
    }

    let orbits = orbit_count(n_darts, &[sigma, alpha]);
    if orbits != 1 {
        violations.push(Violation::NotTransitive { orbits });
    }
    if let Some(d) = (1..=n_darts).find(|&d| phi.apply(alpha.apply(sigma.apply(d))) != d) {
        violations.push(Violation::ProductNotIdentity {
            dart: d,
            image: phi.apply(alpha.apply(sigma.apply(d))),
        });
    }
    if mode == Mode::Map {
        if let Some(d) = (1..=n_darts).find(|&d| {
            let a = alpha.apply(d);
            a == d || alpha.apply(a) != d
        }) {
            violations.push(Violation::AlphaNotInvolution { dart: d });
        }
    }
    ValidationReport { violations }
}

/// Number of orbits of the group generated by `gens` on `{1..n}`.
fn orbit_count(n: usize, gens: &[&Permutation]) -> usize {
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(d) = stack.pop() {
            for g in gens {
                let e = g.apply0(d);
                if !seen[e] {
                    seen[e] = true;
                    stack.push(e);
                }
            }
        }
    }
    orbits
}

/// The unique `φ` satisfying `φ∘α∘σ = id`, i.e. `φ = σ⁻¹∘α⁻¹`.
/// For maps `α⁻¹ = α` and this is `σ⁻¹∘α`.
pub fn complete_phi(sigma: &Permutation, alpha: &Permutation) -> Result<Permutation> {
    sigma.inverse().compose(&alpha.inverse())
}

/// Euler characteristic and genus of a map, with `χ = 2 − 2g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub chi: i64,
    pub genus: u64,
}

/// Cycle types, genus and (optionally) monodromy order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub degree: usize,
    pub sigma_type: Partition,
    pub alpha_type: Partition,
    pub phi_type: Partition,
    pub genus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy_order: Option<GroupOrder>,
}

impl Constellation {
    /// Validates the triple and returns it, or the full violation report.
    pub fn new(sigma: Permutation, alpha: Permutation, phi: Permutation, mode: Mode) -> Result<Self> {
        let report = validate(sigma.degree(), &sigma, &alpha, &phi, mode);
        if !report.is_ok() {
            return Err(Error::InvalidConstellation(report));
        }
        Ok(Constellation {
            sigma,
            alpha,
            phi,
            mode,
        })
    }

    /// Completes `φ` from `σ` and `α`, then validates.
    pub fn from_sigma_alpha(sigma: Permutation, alpha: Permutation, mode: Mode) -> Result<Self> {
        let phi = complete_phi(&sigma, &alpha)?;
        Constellation::new(sigma, alpha, phi, mode)
    }

    /// Map-mode shorthand from 1-based cycle lists.
    pub fn map_from_cycles(n: usize, sigma: &[&[usize]], alpha: &[&[usize]]) -> Result<Self> {
        Constellation::from_sigma_alpha(
            Permutation::from_cycles(n, sigma)?,
            Permutation::from_cycles(n, alpha)?,
            Mode::Map,
        )
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.degree()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_map(&self) -> bool {
        self.mode == Mode::Map
    }

    pub(crate) fn require_map(&self) -> Result<()> {
        if self.is_map() {
            Ok(())
        } else {
            Err(Error::HypermapMode)
        }
    }

    /// Edges in order of their smaller dart; ids are positions in this list.
    ///
    /// Only meaningful in map mode, where every α-cycle has two darts.
    pub fn edges(&self) -> Vec<Edge> {
        self.alpha
            .cycles()
            .into_iter()
            .filter(|c| c.len() == 2)
            .enumerate()
            .map(|(id, c)| Edge {
                id,
                darts: (c[0], c[1]),
            })
            .collect()
    }

    /// Edge id of every dart, indexed by `dart - 1`.
    pub fn edge_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.n_darts()];
        for e in self.edges() {
            index[e.darts.0 - 1] = e.id;
            index[e.darts.1 - 1] = e.id;
        }
        index
    }

    /// Looks up the edge made of the two given darts, in either order.
    pub fn edge_by_darts(&self, a: usize, b: usize) -> Result<Edge> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.edges()
            .into_iter()
            .find(|e| e.darts == (lo, hi))
            .ok_or(Error::UnknownEdge(a, b))
    }

    pub fn edge(&self, id: usize) -> Option<Edge> {
        self.edges().into_iter().nth(id)
    }

    /// `χ = #cycles(φ) − #cycles(α) + #cycles(σ)` and `g = (2 − χ)/2`.
    pub fn euler_and_genus(&self) -> Result<Topology> {
        self.require_map()?;
        let chi = self.phi.cycle_count() as i64 - self.alpha.cycle_count() as i64 + self.sigma.cycle_count() as i64;
        assert!(
            chi % 2 == 0 && chi <= 2,
            "validated map has non-integral genus (chi = {chi})"
        );
        Ok(Topology {
            chi,
            genus: ((2 - chi) / 2) as u64,
        })
    }

    /// Genus in either mode; hypermaps go through edge subdivision.
    pub fn genus(&self) -> u64 {
        match self.mode {
            Mode::Map => self.euler_and_genus().map(|t| t.genus),
            Mode::Hypermap => self.subdivide_hypermap().euler_and_genus().map(|t| t.genus),
        }
        .expect("subdivision always yields a map")
    }

    /// One word per face: the φ-cycle read from its minimal dart.
    pub fn face_words(&self) -> Vec<Vec<usize>> {
        self.phi.cycles()
    }

    /// Relabels darts by `g`, replacing each permutation `p` by `g∘p∘g⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Constellation> {
        Ok(Constellation {
            sigma: self.sigma.conjugate_by(g)?,
            alpha: self.alpha.conjugate_by(g)?,
            phi: self.phi.conjugate_by(g)?,
            mode: self.mode,
        })
    }

    pub fn passport(&self, group_limit: Option<u64>) -> Passport {
        Passport {
            degree: self.n_darts(),
            sigma_type: self.sigma.cycle_type(),
            alpha_type: self.alpha.cycle_type(),
            phi_type: self.phi.cycle_type(),
            genus: self.genus(),
            monodromy_order: group_limit.map(|limit| self.monodromy_order(limit)),
        }
    }
}
