//! Shared test helpers: graph strategies and a faithful matrix representation
//! used as an independent oracle for the word problem.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use raag_embed::harness::BlockFamily;
use raag_embed::{Graph, Letter, Word};

pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut bits = bits.into_iter();
                Graph::from_fn(n, |_, _| bits.next().unwrap())
            },
        )
    })
}

pub fn block_family_strategy(max_n: usize) -> impl Strategy<Value = BlockFamily> {
    (1..=max_n, any::<u64>())
        .prop_map(|(n, seed)| raag_embed::harness::random_block_family(n, seed))
}

pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> Word {
    if n == 0 {
        return Word::default();
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter {
            vertex: rng.gen_range(0..n),
            inverse: rng.gen_bool(0.5),
        })
        .collect()
}

/// 2x2 integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2([BigInt; 4]);

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([a.into(), b.into(), c.into(), d.into()])
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn is_identity(&self) -> bool {
        self.0[0].is_one() && self.0[1].is_zero() && self.0[2].is_zero() && self.0[3].is_one()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2 {
        let [a, b, c, d] = &self.0;
        Mat2([d.clone(), -b.clone(), -c.clone(), a.clone()])
    }

    pub fn pow(&self, k: usize) -> Mat2 {
        (0..k).fold(Mat2::identity(), |acc, _| acc.mul(self))
    }
}

/// Faithful block-diagonal representation of the graph group of a
/// [`BlockFamily`] graph.
///
/// `P0` maps to exponent vectors in `Z^|P0|`. Part `i` maps into its own copy
/// of `SL(2, Z)`: with `A = [[1,2],[0,1]]` and `B = [[1,0],[2,1]]` generating
/// a free group of rank 2, the `k`-th vertex of the part goes to
/// `B^k A B^-k`. These conjugates freely generate a free subgroup, so each
/// part's representation is faithful, and distinct blocks commute.
pub struct MatrixOracle {
    p0_slot: Vec<Option<usize>>,
    part_image: Vec<Option<(usize, Mat2)>>,
    p0_len: usize,
    part_count: usize,
}

impl MatrixOracle {
    pub fn new(family: &BlockFamily) -> Self {
        let a = Mat2::new(1, 2, 0, 1);
        let b = Mat2::new(1, 0, 2, 1);
        let mut p0_slot = vec![None; family.n];
        let mut part_image = vec![None; family.n];
        for (slot, &v) in family.p0.iter().enumerate() {
            p0_slot[v] = Some(slot);
        }
        for (i, part) in family.parts.iter().enumerate() {
            for (k, &v) in part.iter().enumerate() {
                let bk = b.pow(k);
                let image = bk.mul(&a).mul(&bk.inverse());
                part_image[v] = Some((i, image));
            }
        }
        MatrixOracle {
            p0_slot,
            part_image,
            p0_len: family.p0.len(),
            part_count: family.parts.len(),
        }
    }

    pub fn evaluate(&self, w: &Word) -> (Vec<i64>, Vec<Mat2>) {
        let mut exponents = vec![0i64; self.p0_len];
        let mut mats = vec![Mat2::identity(); self.part_count];
        for l in w.letters() {
            if let Some(slot) = self.p0_slot[l.vertex] {
                exponents[slot] += l.sign();
            } else {
                let (part, image) = self.part_image[l.vertex].as_ref().unwrap();
                let factor = if l.inverse {
                    image.inverse()
                } else {
                    image.clone()
                };
                mats[*part] = mats[*part].mul(&factor);
            }
        }
        (exponents, mats)
    }

    pub fn is_trivial(&self, w: &Word) -> bool {
        let (exponents, mats) = self.evaluate(w);
        exponents.iter().all(|&e| e == 0) && mats.iter().all(Mat2::is_identity)
    }
}
