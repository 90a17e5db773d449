//! Rooted-map canonical labelling.
//!
//! For every root dart, darts are numbered in breadth-first order of first
//! visit, following σ, then α, then φ out of each dequeued dart. Transitivity
//! guarantees every dart gets a number. The relabelled triple whose image
//! sequences are lexicographically least wins. Two constellations are
//! simultaneously conjugate exactly when their winners coincide.

use std::collections::VecDeque;

use crate::permutation::Permutation;

use super::Constellation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub constellation: Constellation,
    /// `relabeling.apply(d)` is the canonical label of input dart `d`.
    pub relabeling: Permutation,
}

impl CanonicalForm {
    /// Image sequences of σ, α, φ concatenated, then the mode byte.
    pub fn key(&self) -> Vec<u32> {
        canonical_key(&self.constellation)
    }
}

fn canonical_key(c: &Constellation) -> Vec<u32> {
    let mut key: Vec<u32> = [c.sigma(), c.alpha(), c.phi()]
        .iter()
        .flat_map(|p| p.zero_based().iter().map(|&i| i as u32))
        .collect();
    key.push(c.mode() as u32);
    key
}

/// BFS labels from `root`: `labels[d]` is the new 0-based name of dart `d`.
fn bfs_labels(gens: [&[usize]; 3], root: usize, labels: &mut [usize], queue: &mut VecDeque<usize>) {
    labels.fill(usize::MAX);
    queue.clear();
    labels[root] = 0;
    let mut next = 1;
    queue.push_back(root);
    while let Some(d) = queue.pop_front() {
        for g in gens {
            let e = g[d];
            if labels[e] == usize::MAX {
                labels[e] = next;
                next += 1;
                queue.push_back(e);
            }
        }
    }
}

impl Constellation {
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n_darts();
        let gens = [
            self.sigma().zero_based(),
            self.alpha().zero_based(),
            self.phi().zero_based(),
        ];
        let mut labels = vec![0; n];
        let mut queue = VecDeque::with_capacity(n);
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut candidate = vec![0; 3 * n];

        for root in 0..n {
            bfs_labels(gens, root, &mut labels, &mut queue);
            for (k, g) in gens.iter().enumerate() {
                for d in 0..n {
                    candidate[k * n + labels[d]] = labels[g[d]];
                }
            }
            let better = match &best {
                None => true,
                Some((key, _)) => candidate < *key,
            };
            if better {
                best = Some((candidate.clone(), labels.clone()));
            }
        }

        let (_, labels) = best.expect("constellation has at least one dart");
        let relabeling = Permutation::from_zero_based_unchecked(labels);
        let constellation = self
            .conjugate(&relabeling)
            .expect("relabeling has the constellation's degree");
        CanonicalForm {
            constellation,
            relabeling,
        }
    }

    /// True when some relabelling maps `self` onto `other`.
    pub fn is_isomorphic(&self, other: &Constellation) -> bool {
        self.n_darts() == other.n_darts()
            && self.mode() == other.mode()
            && self.canonical_form().constellation == other.canonical_form().constellation
    }
}
