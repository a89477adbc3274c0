//! Word problem for graph groups that split as a direct product of free
//! groups.
//!
//! Letters from different blocks of a commuting partition commute, so a word
//! is trivial exactly when its projection to every block is trivial: exponent
//! sums on `P0` (free abelian) and free reduction on each part (free group).

use std::fmt;

use thiserror::Error;

use crate::classifier::ForbiddenTriple;
use crate::graph::{Graph, Vertex};
use crate::partition::{canonical_partition, CommutingPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(
        "the word problem is only implemented for graphs without a forbidden triple; \
         found {0}"
    )]
    NotEmbeddable(ForbiddenTriple),
    #[error("generator {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("invalid generator token {0:?}: expected a nonzero signed integer")]
    BadToken(String),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub vertex: Vertex,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(vertex: Vertex) -> Self {
        Letter {
            vertex,
            inverse: false,
        }
    }

    pub fn inv(vertex: Vertex) -> Self {
        Letter {
            vertex,
            inverse: true,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.vertex == other.vertex && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.vertex)
        } else {
            write!(f, "x{}", self.vertex)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Parses whitespace-separated signed 1-based generator numbers, e.g.
    /// `"1 3 -1 -3"`. Zero is rejected.
    pub fn parse_signed(text: &str, n: usize) -> Result<Word, WordError> {
        text.split_whitespace()
            .map(|token| {
                let value: i64 = token
                    .parse()
                    .map_err(|_| WordError::BadToken(token.to_string()))?;
                if value == 0 {
                    return Err(WordError::BadToken(token.to_string()));
                }
                let vertex = (value.unsigned_abs() - 1) as usize;
                if vertex >= n {
                    return Err(WordError::OutOfRange { vertex, n });
                }
                Ok(Letter {
                    vertex,
                    inverse: value < 0,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Inverse of [`Word::parse_signed`].
    pub fn to_signed(&self) -> String {
        self.0
            .iter()
            .map(|l| (l.sign() * (l.vertex as i64 + 1)).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// `u v u^-1 v^-1`
    pub fn commutator(u: Vertex, v: Vertex) -> Word {
        Word(vec![
            Letter::gen(u),
            Letter::gen(v),
            Letter::inv(u),
            Letter::inv(v),
        ])
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|pair| !pair[0].cancels(pair[1]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Letters of `w` on vertices of `block`, order preserved.
pub fn project(w: &Word, block: &[Vertex]) -> Word {
    w.0.iter()
        .filter(|l| block.contains(&l.vertex))
        .copied()
        .collect()
}

/// Single left-to-right stack pass removing adjacent inverse pairs.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &letter in &w.0 {
        match stack.last() {
            Some(&top) if top.cancels(letter) => {
                stack.pop();
            }
            _ => stack.push(letter),
        }
    }
    Word(stack)
}

/// Coordinates of a group element in `Z^|P0| x F_|P1| x ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    /// Vertices of `P0`, ascending; `abelian_exponents[i]` belongs to `p0[i]`.
    pub p0: Vec<Vertex>,
    pub abelian_exponents: Vec<i64>,
    /// Freely reduced word per part, in partition order.
    pub part_words: Vec<Word>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.abelian_exponents.iter().all(|&e| e == 0) && self.part_words.iter().all(Word::is_empty)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (&v, &e) in self.p0.iter().zip(&self.abelian_exponents) {
            if e != 0 {
                factors.push(format!("x{v}^{e}"));
            }
        }
        for w in self.part_words.iter().filter(|w| !w.is_empty()) {
            factors.push(format!("[{w}]"));
        }
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join(" . "))
        }
    }
}

/// Word-problem solver bound to one embeddable graph.
#[derive(Debug, Clone)]
pub struct WordProblem {
    n: usize,
    partition: CommutingPartition,
}

impl WordProblem {
    pub fn new(g: &Graph) -> Result<Self, WordError> {
        let partition = canonical_partition(g).map_err(WordError::NotEmbeddable)?;
        Ok(WordProblem {
            n: g.vertex_count(),
            partition,
        })
    }

    pub fn partition(&self) -> &CommutingPartition {
        &self.partition
    }

    pub fn normal_form(&self, w: &Word) -> Result<NormalForm, WordError> {
        if let Some(l) = w.0.iter().find(|l| l.vertex >= self.n) {
            return Err(WordError::OutOfRange {
                vertex: l.vertex,
                n: self.n,
            });
        }
        let p0 = self.partition.p0().to_vec();
        let abelian_exponents = p0
            .iter()
            .map(|&v| w.0.iter().filter(|l| l.vertex == v).map(|l| l.sign()).sum())
            .collect();
        let part_words = self
            .partition
            .parts()
            .iter()
            .map(|part| free_reduce(&project(w, part)))
            .collect();
        Ok(NormalForm {
            p0,
            abelian_exponents,
            part_words,
        })
    }

    pub fn is_trivial(&self, w: &Word) -> Result<bool, WordError> {
        Ok(self.normal_form(w)?.is_identity())
    }
}

pub fn normal_form(g: &Graph, w: &Word) -> Result<NormalForm, WordError> {
    WordProblem::new(g)?.normal_form(w)
}

pub fn is_trivial(g: &Graph, w: &Word) -> Result<bool, WordError> {
    WordProblem::new(g)?.is_trivial(w)
}
