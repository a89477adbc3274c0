//! Group structure of graphs with a commuting partition.
//!
//! `P0` spans a free abelian factor `Z^|P0|`, each part `Pi` spans a free
//! factor `F_|Pi|`, and blocks commute with each other, so the graph group is
//! their direct product. Graphs without a commuting partition contain the
//! pattern whose group is `Z^2 * Z`, which does not embed in `V`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classifier::ForbiddenTriple;
use crate::graph::Graph;
use crate::partition::{canonical_partition, CommutingPartition};

/// `Z^abelian_rank x F_{r1} x F_{r2} x ...`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDecomposition {
    pub abelian_rank: usize,
    pub free_ranks: Vec<usize>,
}

impl GroupDecomposition {
    /// Folds every `F_1` into the abelian factor and sorts the remaining
    /// free ranks in descending order.
    pub fn canonical_form(&self) -> GroupDecomposition {
        let ones = self.free_ranks.iter().filter(|&&r| r == 1).count();
        let mut free_ranks: Vec<usize> = self
            .free_ranks
            .iter()
            .copied()
            .filter(|&r| r != 1)
            .collect();
        free_ranks.sort_unstable_by(|a, b| b.cmp(a));
        GroupDecomposition {
            abelian_rank: self.abelian_rank + ones,
            free_ranks,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.abelian_rank + self.free_ranks.iter().sum::<usize>()
    }
}

/// Renders as `Z^a x F_r1 x ...`; the abelian factor is omitted when `a = 0`
/// and the trivial group prints as `1`.
impl fmt::Display for GroupDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.abelian_rank > 0 {
            factors.push(format!("Z^{}", self.abelian_rank));
        }
        factors.extend(self.free_ranks.iter().map(|r| format!("F_{r}")));
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join(" x "))
        }
    }
}

/// Raw decomposition read off a commuting partition: `|P0|` and the part
/// sizes in partition order.
pub fn decompose(p: &CommutingPartition) -> GroupDecomposition {
    GroupDecomposition {
        abelian_rank: p.p0().len(),
        free_ranks: p.parts().iter().map(Vec::len).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Embeddable {
        partition: CommutingPartition,
        group: GroupDecomposition,
    },
    NotEmbeddable {
        witness: ForbiddenTriple,
    },
}

impl Verdict {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, Verdict::Embeddable { .. })
    }
}

pub fn verdict(g: &Graph) -> Verdict {
    let outcome = canonical_partition(g);
    #[cfg(debug_assertions)]
    {
        let greedy = crate::partition::greedy_partition(g, &mut crate::partition::MinIndex);
        debug_assert_eq!(greedy.is_ok(), outcome.is_ok());
        if let (Ok(a), Ok(b)) = (&greedy, &outcome) {
            debug_assert_eq!(a, b);
        }
    }
    match outcome {
        Ok(partition) => {
            let group = decompose(&partition).canonical_form();
            Verdict::Embeddable { partition, group }
        }
        Err(witness) => Verdict::NotEmbeddable { witness },
    }
}

/// Presentation with generators `x0..x{n-1}` and one commutator relation per
/// edge, edges in lexicographic order.
pub fn emit_presentation(g: &Graph) -> String {
    let generators: Vec<String> = g.vertices().map(|v| format!("x{v}")).collect();
    let relations: Vec<String> = g
        .edges()
        .map(|(u, v)| format!("x{u}x{v}=x{v}x{u}"))
        .collect();
    format!("⟨{} | {}⟩", generators.join(","), relations.join(", "))
}
