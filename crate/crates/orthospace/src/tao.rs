//! Orthogonal representations of finite graphs with nonnegative inner
//! products: from a graph on n vertices, exact rational vectors whose
//! Gram zero-pattern equals adjacency and whose rank is n.
//!
//! The construction doubles the ambient space at every step, so the
//! output vectors live in dimension 2^(n−1); linear independence is
//! certified by exact rank instead of reducing to an n-dimensional basis,
//! which would need irrational coordinates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::greechie::GraphSpec;
use crate::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TaoError {
    #[error("the construction needs at least one vertex")]
    EmptyGraph,
    #[error("dimension mismatch: expected {expected} vectors of dim {dim}")]
    DimensionMismatch { expected: usize, dim: usize },
}

/// A vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RationalVector(
    #[serde(with = "rational_vec_text")] pub Vec<Rational>,
);

mod rational_vec_text {
    use crate::scalar::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(de::Error::custom))
            .collect()
    }
}

impl RationalVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn inner(&self, other: &Self) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }
}

/// Exact Gram data for a vector system against a graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramReport {
    pub gram: Vec<RationalVector>,
    pub rank: usize,
    pub pattern_ok: bool,
    pub nonneg_ok: bool,
}

/// Vectors w₁,…,wₙ with ⟨wᵢ,wⱼ⟩ = 0 iff {i,j} is an edge and > 0
/// otherwise, built by induction on the vertices: previous vectors embed
/// into the first summand of a doubled space, wᵢ picks up eᵢ from the
/// second summand when vᵢ is not adjacent to the new vertex, and the new
/// vertex gets e₁+⋯+eₖ.
pub fn tao_vectors(g: &GraphSpec) -> Result<Vec<RationalVector>, TaoError> {
    let n = g.n();
    if n == 0 {
        return Err(TaoError::EmptyGraph);
    }
    let mut vectors = vec![vec![Rational::one()]];
    for k in 1..n {
        let dim = vectors[0].len();
        let mut next: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
        for (i, old) in vectors.iter().enumerate() {
            let mut w = old.clone();
            w.resize(2 * dim, Rational::zero());
            if !g.adjacent(i, k) {
                w[dim + i] = Rational::one();
            }
            next.push(w);
        }
        let mut last = vec![Rational::zero(); 2 * dim];
        for slot in last.iter_mut().skip(dim).take(k) {
            *slot = Rational::one();
        }
        next.push(last);
        vectors = next;
    }
    Ok(vectors.into_iter().map(RationalVector).collect())
}

/// Recompute the Gram matrix, compare its zero-pattern with the edge set,
/// check nonnegativity, and certify the rank by fraction-free elimination.
pub fn verify_gram(vectors: &[RationalVector], g: &GraphSpec) -> Result<GramReport, TaoError> {
    let n = g.n();
    let dim = vectors.first().map(|v| v.dim()).unwrap_or(0);
    if vectors.len() != n || vectors.iter().any(|v| v.dim() != dim) {
        return Err(TaoError::DimensionMismatch { expected: n, dim });
    }
    let gram: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|u| vectors.iter().map(|v| u.inner(v)).collect())
        .collect();
    let mut pattern_ok = true;
    let mut nonneg_ok = true;
    for i in 0..n {
        for j in 0..n {
            let entry = &gram[i][j];
            if entry.is_negative() {
                nonneg_ok = false;
            }
            if i != j && entry.is_zero() != g.adjacent(i, j) {
                pattern_ok = false;
            }
            if i == j && entry.is_zero() {
                pattern_ok = false;
            }
        }
    }
    let rank = rational_rank(vectors.iter().map(|v| v.0.clone()).collect());
    Ok(GramReport {
        gram: gram.into_iter().map(RationalVector).collect(),
        rank,
        pattern_ok,
        nonneg_ok,
    })
}

/// Rank over ℚ: clear denominators row-wise, then Bareiss fraction-free
/// elimination over ℤ.
fn rational_rank(rows: Vec<Vec<Rational>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .map(|r| r.denom().clone())
                .fold(BigInt::one(), |acc, d| num_integer::lcm(acc, d));
            row.iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect()
        })
        .collect();
    let rows_n = m.len();
    let cols_n = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols_n {
        let Some(pivot) = (rank..rows_n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..rows_n {
            if r == rank {
                continue;
            }
            for c in 0..cols_n {
                if c == col {
                    continue;
                }
                m[r][c] = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows_n {
            break;
        }
    }
    rank
}
