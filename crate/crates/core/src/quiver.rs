//! Medial quivers with gentle relations.
//!
//! The medial quiver of a map has one vertex per edge and one arrow per
//! dart `d`, running from the edge of `d` to the edge of `σ(d)`. Out of the
//! head of `a(d)` leave exactly two arrows, `a(σ(d))` and `a(α(σ(d)))`. The
//! first composition is nonzero and the second is a zero relation. Nonzero
//! continuations trace the σ-cycles and relations trace the φ-cycles.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::constellation::{Constellation, Mode};
use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverVertex {
    pub id: usize,
    /// The α-edge this vertex sits on, when the quiver came from a map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub darts: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    /// Arrow (and dart) label, 1-based.
    pub dart: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedialQuiver {
    pub vertices: Vec<QuiverVertex>,
    /// `arrows[i].dart == i + 1`.
    pub arrows: Vec<Arrow>,
    /// `(a, b)`: following arrow `a` by arrow `b` is zero.
    pub relations: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GentleCondition {
    /// In- and out-degree two at every vertex.
    Degree,
    /// Exactly one zero continuation and one zero predecessor per arrow.
    UniqueRelation,
    /// Exactly one nonzero continuation and one nonzero predecessor per arrow.
    UniqueNonzero,
    /// Relations are composable paths of length two.
    LengthTwo,
    Connected,
}

impl GentleCondition {
    fn label(self) -> &'static str {
        match self {
            GentleCondition::Degree => "(1) degree",
            GentleCondition::UniqueRelation => "(2) unique relation",
            GentleCondition::UniqueNonzero => "(3) unique nonzero",
            GentleCondition::LengthTwo => "(4) length-two relations",
            GentleCondition::Connected => "connected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleViolation {
    pub condition: GentleCondition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrow: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleReport {
    pub violations: Vec<GentleViolation>,
}

impl GentleReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, condition: GentleCondition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

impl fmt::Display for GentleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}: {}", v.condition.label(), v.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowPartitions {
    pub sigma_cycles: Vec<Vec<usize>>,
    pub phi_cycles: Vec<Vec<usize>>,
}

impl ArrowPartitions {
    pub fn sigma_lengths(&self) -> Vec<usize> {
        self.sigma_cycles.iter().map(Vec::len).collect()
    }

    pub fn phi_lengths(&self) -> Vec<usize> {
        self.phi_cycles.iter().map(Vec::len).collect()
    }
}

/// Medial quiver of a map; arrows are labelled by darts.
pub fn build_medial_quiver(c: &Constellation) -> Result<MedialQuiver> {
    c.require_map()?;
    let edge_of = c.edge_index();
    let vertices = c
        .edges()
        .into_iter()
        .map(|e| QuiverVertex {
            id: e.id,
            darts: Some(e.darts),
        })
        .collect();
    let n = c.n_darts();
    let arrows = (1..=n)
        .map(|d| Arrow {
            dart: d,
            tail: edge_of[d - 1],
            head: edge_of[c.sigma().apply(d) - 1],
        })
        .collect();
    let relations = (1..=n).map(|d| (d, c.alpha().apply(c.sigma().apply(d)))).collect();
    Ok(MedialQuiver {
        vertices,
        arrows,
        relations,
    })
}

impl MedialQuiver {
    /// Abstract quiver from `(tail, head)` pairs and zero relations between
    /// arrow labels. Arrows are labelled `1..` in input order.
    pub fn from_parts(vertex_count: usize, arrows: &[(usize, usize)], relations: &[(usize, usize)]) -> Self {
        MedialQuiver {
            vertices: (0..vertex_count).map(|id| QuiverVertex { id, darts: None }).collect(),
            arrows: arrows
                .iter()
                .enumerate()
                .map(|(i, &(tail, head))| Arrow {
                    dart: i + 1,
                    tail,
                    head,
                })
                .collect(),
            relations: relations.to_vec(),
        }
    }

    fn arrow(&self, label: usize) -> Option<&Arrow> {
        label.checked_sub(1).and_then(|i| self.arrows.get(i))
    }

    fn out_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tail == v)
    }

    fn in_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.head == v)
    }

    fn has_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    /// Arrow `b` with `(a, b)` a relation; only valid on gentle quivers.
    fn relation_next(&self, a: usize) -> usize {
        self.relations.iter().find(|r| r.0 == a).expect("gentle quiver").1
    }

    /// The nonzero continuation of `a`; only valid on gentle quivers.
    fn nonzero_next(&self, a: usize) -> usize {
        let head = self.arrows[a - 1].head;
        self.out_arrows(head)
            .find(|b| !self.has_relation(a, b.dart))
            .expect("gentle quiver")
            .dart
    }

    /// Arrow map `a ↦` nonzero continuation, as a permutation (equals σ).
    pub fn sigma_successor(&self) -> Result<Permutation> {
        self.require_gentle()?;
        Permutation::from_images(
            &(1..=self.arrows.len())
                .map(|a| self.nonzero_next(a))
                .collect::<Vec<_>>(),
        )
    }

    /// Arrow map `a ↦` zero continuation, as a permutation (equals α∘σ).
    pub fn relation_successor(&self) -> Result<Permutation> {
        self.require_gentle()?;
        Permutation::from_images(
            &(1..=self.arrows.len())
                .map(|a| self.relation_next(a))
                .collect::<Vec<_>>(),
        )
    }

    fn require_gentle(&self) -> Result<()> {
        let report = check_gentle(self);
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::NotGentle(report))
        }
    }
}

/// Checks the four gentle conditions plus connectedness.
pub fn check_gentle(q: &MedialQuiver) -> GentleReport {
    let mut violations = Vec::new();
    fn push(
        violations: &mut Vec<GentleViolation>,
        condition: GentleCondition,
        vertex: Option<usize>,
        arrow: Option<usize>,
        detail: String,
    ) {
        violations.push(GentleViolation {
            condition,
            vertex,
            arrow,
            detail,
        })
    }
    let nv = q.vertices.len();

    for (i, a) in q.arrows.iter().enumerate() {
        if a.dart != i + 1 || a.tail >= nv || a.head >= nv {
            push(
                &mut violations,
                GentleCondition::Degree,
                None,
                Some(a.dart),
                format!("arrow {} is mislabelled or has an unknown endpoint", a.dart),
            );
        }
    }
    if !violations.is_empty() {
        return GentleReport { violations };
    }

    for v in 0..nv {
        let (ins, outs) = (q.in_arrows(v).count(), q.out_arrows(v).count());
        if ins != 2 || outs != 2 {
            push(
                &mut violations,
                GentleCondition::Degree,
                Some(v),
                None,
                format!("vertex {v} has in-degree {ins} and out-degree {outs}"),
            );
        }
    }

    for &(a, b) in &q.relations {
        match (q.arrow(a), q.arrow(b)) {
            (Some(x), Some(y)) if x.head == y.tail => {}
            (Some(_), Some(_)) => push(
                &mut violations,
                GentleCondition::LengthTwo,
                None,
                Some(a),
                format!("relation ({a},{b}) is not a composable path"),
            ),
            _ => push(
                &mut violations,
                GentleCondition::LengthTwo,
                None,
                Some(a),
                format!("relation ({a},{b}) names an unknown arrow"),
            ),
        }
    }

    for a in &q.arrows {
        let after = q.relations.iter().filter(|r| r.0 == a.dart).count();
        let before = q.relations.iter().filter(|r| r.1 == a.dart).count();
        if after != 1 || before != 1 {
            push(
                &mut violations,
                GentleCondition::UniqueRelation,
                None,
                Some(a.dart),
                format!(
                    "arrow {} starts {after} relations and ends {before} (need exactly one each)",
                    a.dart
                ),
            );
        }
        let nonzero_after = q.out_arrows(a.head).filter(|b| !q.has_relation(a.dart, b.dart)).count();
        let nonzero_before = q.in_arrows(a.tail).filter(|c| !q.has_relation(c.dart, a.dart)).count();
        if nonzero_after != 1 || nonzero_before != 1 {
            push(
                &mut violations,
                GentleCondition::UniqueNonzero,
                None,
                Some(a.dart),
                format!(
                    "arrow {} has {nonzero_after} nonzero continuations and {nonzero_before} nonzero predecessors",
                    a.dart
                ),
            );
        }
    }

    if nv > 0 {
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &q.arrows {
                for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            push(
                &mut violations,
                GentleCondition::Connected,
                Some(v),
                None,
                format!("vertex {v} is not reachable from vertex 0"),
            );
        }
    }

    GentleReport { violations }
}

/// Arrows grouped into nonzero cycles (σ) and relation cycles (φ).
pub fn arrow_partitions(q: &MedialQuiver) -> Result<ArrowPartitions> {
    Ok(ArrowPartitions {
        sigma_cycles: q.sigma_successor()?.cycles(),
        phi_cycles: q.relation_successor()?.cycles(),
    })
}

/// Recovers the map: σ from nonzero continuations, α by pairing the two
/// arrows leaving each vertex, φ completed.
pub fn quiver_to_constellation(q: &MedialQuiver) -> Result<Constellation> {
    let sigma = q.sigma_successor()?;
    let mut alpha = vec![0; q.arrows.len()];
    for v in 0..q.vertices.len() {
        let outs: Vec<usize> = q.out_arrows(v).map(|a| a.dart).collect();
        alpha[outs[0] - 1] = outs[1];
        alpha[outs[1] - 1] = outs[0];
    }
    Constellation::from_sigma_alpha(sigma, Permutation::from_images(&alpha)?, Mode::Map)
}

const CYCLE_STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];

/// Graphviz digraph. Arrows in the same relation cycle share a style.
pub fn export_dot(q: &MedialQuiver) -> String {
    let mut cycle_of: BTreeMap<usize, usize> = BTreeMap::new();
    if let Ok(rel) = q.relation_successor() {
        for (k, cycle) in rel.cycles().iter().enumerate() {
            for &a in cycle {
                cycle_of.insert(a, k);
            }
        }
    }

    let mut out = String::from("digraph medial_quiver {\n");
    for v in &q.vertices {
        let label = match v.darts {
            Some((a, b)) => format!("({a},{b})"),
            None => v.id.to_string(),
        };
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.id, label);
    }
    for a in &q.arrows {
        match cycle_of.get(&a.dart) {
            Some(&k) => {
                let _ = writeln!(
                    out,
                    "  v{} -> v{} [label=\"{}\", style={}, comment=\"relation cycle {}\"];",
                    a.tail,
                    a.head,
                    a.dart,
                    CYCLE_STYLES[k % CYCLE_STYLES.len()],
                    k
                );
            }
            None => {
                let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", a.tail, a.head, a.dart);
            }
        }
    }
    out.push_str("}\n");
    out
}
