//! Periodic projective resolutions of simple modules over a surface order.
//!
//! The simple module at an edge `e = (d₁, d₂)` has projective cover `P(e)`.
//! The radical of `P(e)` splits into the uniserials at `σ(d₁)` and `σ(d₂)`.
//! From there each arm walks its φ-orbit:
//!
//! ```text
//! S(e) ← P(e) ← P(φd₁) ⊕ P(φd₂) ← P(φ²d₁) ⊕ P(φ²d₂) ← …
//! ```
//!
//! The differential at step `m` is the diagonal matrix of the arrows labelled
//! by the darts `φᵐd₁` and `φᵐd₂`. The complex repeats after
//! `lcm(|O_φ(d₁)|, |O_φ(d₂)|)` steps.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constellation::{Constellation, Edge, Mode};
use crate::error::{Error, Result};
use crate::permutation::{Partition, Permutation};

/// Term of a resolution, by edge id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResolutionTerm {
    /// `P(e)` at step 0.
    Cover(usize),
    /// `P(e₁) ⊕ P(e₂)` at steps `m ≥ 1`, arm of the smaller dart first.
    Sum(usize, usize),
}

impl ResolutionTerm {
    pub fn edges(&self) -> Vec<usize> {
        match *self {
            ResolutionTerm::Cover(e) => vec![e],
            ResolutionTerm::Sum(a, b) => vec![a, b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveResolution {
    pub simple: Edge,
    pub period: usize,
    /// `terms[m]` for `m = 0..=horizon`.
    pub terms: Vec<ResolutionTerm>,
    /// `differentials[m] = (φᵐd₁, φᵐd₂)`; entry 0 is the simple's own darts.
    pub differentials: Vec<(usize, usize)>,
}

impl ProjectiveResolution {
    pub fn horizon(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, m: usize) -> Option<ResolutionTerm> {
        self.terms.get(m).copied()
    }

    /// Two-column table: step, summands, arm darts.
    pub fn to_text(&self, edges: &[Edge]) -> String {
        let show = |id: usize| edges.get(id).map_or_else(|| format!("#{id}"), ToString::to_string);
        let mut out = String::new();
        let _ = writeln!(out, "S{}", self.simple);
        let _ = writeln!(out, "period: {}", self.period);
        for (m, (term, darts)) in self.terms.iter().zip(&self.differentials).enumerate() {
            match *term {
                ResolutionTerm::Cover(e) => {
                    let _ = writeln!(out, "{m:>4}  {}", show(e));
                }
                ResolutionTerm::Sum(a, b) => {
                    let _ = writeln!(out, "{m:>4}  {} {}    arrows {} {}", show(a), show(b), darts.0, darts.1);
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Syzygy {
    pub index: usize,
    /// Darts indexing the two uniserial summands.
    pub darts: (usize, usize),
}

fn check_edge(c: &Constellation, e: &Edge) -> Result<()> {
    c.require_map()?;
    match c.edge(e.id) {
        Some(found) if found == *e => Ok(()),
        _ => Err(Error::UnknownEdge(e.darts.0, e.darts.1)),
    }
}

/// Darts of the two uniserial summands of `rad P(e)`: `(σd₁, σd₂)`.
pub fn radical_decomposition(c: &Constellation, e: &Edge) -> Result<(usize, usize)> {
    check_edge(c, e)?;
    Ok((c.sigma().apply(e.darts.0), c.sigma().apply(e.darts.1)))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Materialises steps `0..=max(horizon, period)`.
pub fn resolve_simple(c: &Constellation, e: &Edge, horizon: usize) -> Result<ProjectiveResolution> {
    check_edge(c, e)?;
    let phi = c.phi();
    let edge_of = c.edge_index();
    let (d1, d2) = e.darts;
    let (l1, l2) = (phi.orbit_len(d1), phi.orbit_len(d2));
    let period = l1 / gcd(l1, l2) * l2;
    let steps = horizon.max(period);

    let mut terms = Vec::with_capacity(steps + 1);
    let mut differentials = Vec::with_capacity(steps + 1);
    terms.push(ResolutionTerm::Cover(e.id));
    differentials.push((d1, d2));
    let (mut a, mut b) = (d1, d2);
    for _ in 1..=steps {
        a = phi.apply(a);
        b = phi.apply(b);
        terms.push(ResolutionTerm::Sum(edge_of[a - 1], edge_of[b - 1]));
        differentials.push((a, b));
    }
    Ok(ProjectiveResolution {
        simple: *e,
        period,
        terms,
        differentials,
    })
}

/// Resolutions of every simple, in edge order.
pub fn resolve_all(c: &Constellation, horizon: usize) -> Result<Vec<ProjectiveResolution>> {
    c.require_map()?;
    c.edges().par_iter().map(|e| resolve_simple(c, e, horizon)).collect()
}

/// `Ωᵐ(S(e)) = U(φᵐd₁) ⊕ U(φᵐd₂)`.
pub fn syzygy(c: &Constellation, e: &Edge, m: usize) -> Result<Syzygy> {
    check_edge(c, e)?;
    let phi_m = c.phi().pow(m);
    Ok(Syzygy {
        index: m,
        darts: (phi_m.apply(e.darts.0), phi_m.apply(e.darts.1)),
    })
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentData(msg.into())
}

/// Rebuilds the map from one resolution per edge.
///
/// φ is read off the differential dart streams, α off the simples, and
/// `σ = α∘φ⁻¹`. Every term is checked against the streams and against
/// periodicity; any disagreement is `InconsistentData`.
pub fn reconstruct_constellation(
    resolutions: &[ProjectiveResolution],
    normalization_type: &Partition,
) -> Result<Constellation> {
    let n = 2 * resolutions.len();
    if n == 0 {
        return Err(inconsistent("no resolutions given"));
    }

    let mut edge_darts: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut edge_of = vec![usize::MAX; n];
    let mut alpha = vec![0; n];
    for r in resolutions {
        let (d1, d2) = r.simple.darts;
        if d1 == d2 || d1 == 0 || d2 == 0 || d1 > n || d2 > n {
            return Err(inconsistent(format!("simple {} has invalid darts", r.simple)));
        }
        if edge_darts.insert(r.simple.id, r.simple.darts).is_some() {
            return Err(inconsistent(format!("edge id {} appears twice", r.simple.id)));
        }
        for d in [d1, d2] {
            if edge_of[d - 1] != usize::MAX {
                return Err(inconsistent(format!("dart {d} lies on two simples")));
            }
            edge_of[d - 1] = r.simple.id;
        }
        alpha[d1 - 1] = d2;
        alpha[d2 - 1] = d1;
    }

    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut set_phi = |from: usize, to: usize| -> Result<()> {
        if to == 0 || to > n {
            return Err(inconsistent(format!("dart {to} is out of range")));
        }
        match phi[from - 1] {
            Some(prev) if prev != to => Err(inconsistent(format!(
                "streams disagree on the successor of dart {from}: {prev} vs {to}"
            ))),
            _ => {
                phi[from - 1] = Some(to);
                Ok(())
            }
        }
    };

    for r in resolutions {
        let s = r.simple;
        if r.period == 0 || r.terms.len() != r.differentials.len() || r.terms.len() < r.period + 1 {
            return Err(inconsistent(format!("resolution of S{s} is shorter than its period")));
        }
        if r.terms[0] != ResolutionTerm::Cover(s.id) || r.differentials[0] != s.darts {
            return Err(inconsistent(format!("resolution of S{s} does not start at its simple")));
        }
        for m in 1..r.terms.len() {
            let (a, b) = r.differentials[m];
            let (pa, pb) = r.differentials[m - 1];
            set_phi(pa, a)?;
            set_phi(pb, b)?;
            let expected = ResolutionTerm::Sum(edge_of[a - 1], edge_of[b - 1]);
            if r.terms[m] != expected {
                return Err(inconsistent(format!(
                    "term {m} of S{s} is {:?} but its arrows {a},{b} lie on {:?}",
                    r.terms[m], expected
                )));
            }
            if m > r.period
                && (r.terms[m] != r.terms[m - r.period] || r.differentials[m] != r.differentials[m - r.period])
            {
                return Err(inconsistent(format!("S{s} is not periodic with period {}", r.period)));
            }
        }
        if r.differentials[r.period] != s.darts {
            return Err(inconsistent(format!("S{s} does not close up after {} steps", r.period)));
        }
    }

    let phi: Vec<usize> = phi
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| inconsistent(format!("no successor recorded for dart {}", i + 1))))
        .collect::<Result<_>>()?;
    let phi = Permutation::from_images(&phi).map_err(|e| inconsistent(e.to_string()))?;
    let alpha = Permutation::from_images(&alpha).map_err(|e| inconsistent(e.to_string()))?;
    let sigma = alpha.compose(&phi.inverse())?;

    if sigma.cycle_type() != *normalization_type {
        return Err(inconsistent(format!(
            "recovered vertex type {} differs from normalization type {}",
            sigma.cycle_type(),
            normalization_type
        )));
    }
    Constellation::new(sigma, alpha, phi, Mode::Map).map_err(|e| inconsistent(e.to_string()))
}
