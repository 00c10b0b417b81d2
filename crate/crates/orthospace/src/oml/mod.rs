//! Finite orthomodular lattices as explicit combinatorial objects.
//!
//! The order is stored as one bitset row per element (the up-set
//! {y : x ≤ y}) plus the transposed down-sets, with the orthocomplement
//! as a permutation. Elements are kept in a canonical linear extension —
//! indices sorted by up-set size, bottom first, top last — which makes
//! joins and meets single bitset scans: the join of x and y, when it
//! exists, is the lowest-index element of up(x) ∩ up(y).
//!
//! Pipeline lattices reach 10³–10⁴ elements, so everything here works on
//! whole rows of 64-bit words rather than element pairs where possible.

mod check;
mod paste;

pub mod fixtures;

pub use check::{check_oml, naive_check_oml, CheckReport};
pub use paste::{
    bigcoatom_extend, interval_union_subalgebra, kalmbach_coatom_extension, lemma2_extend,
    BigCoatomExtension, CoatomExtension, Lemma2Extension, Lemma2Mode,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmlError {
    #[error("malformed lattice tables: {0}")]
    Malformed(String),
    #[error("size limit exceeded: {what} needs {requested}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("the element e must be nonzero")]
    ZeroElement,
    #[error("degenerate one-element lattice (use FiniteOml::trivial to opt in)")]
    Degenerate,
    #[error("paste verification failed: {0}")]
    PasteVerification(String),
    #[error("construction invariant violated: {0}")]
    InvariantViolation(String),
}

/// Caps on lattice construction. `max_elements` bounds the element count;
/// `max_table_bytes` bounds the dense up/down bitset tables, which grow
/// quadratically and are what actually exhausts memory.
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_elements: usize,
    pub max_table_bytes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_elements: 1 << 20,
            max_table_bytes: 2 << 30,
        }
    }
}

impl Limits {
    /// Read `ORTHOSPACE_MAX_ELEMENTS` / `ORTHOSPACE_MAX_TABLE_BYTES`,
    /// falling back to the defaults.
    pub fn from_env() -> Self {
        let read = |key: &str| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        };
        let mut limits = Limits::default();
        if let Some(n) = read("ORTHOSPACE_MAX_ELEMENTS") {
            limits.max_elements = n;
        }
        if let Some(b) = read("ORTHOSPACE_MAX_TABLE_BYTES") {
            limits.max_table_bytes = b;
        }
        limits
    }

    pub fn admit(&self, n: usize, what: &'static str) -> Result<(), OmlError> {
        if n > self.max_elements {
            return Err(OmlError::SizeLimit {
                what,
                requested: n,
                cap: self.max_elements,
            });
        }
        let words = n.div_ceil(64);
        let bytes = n
            .checked_mul(words)
            .and_then(|w| w.checked_mul(16))
            .unwrap_or(usize::MAX);
        if bytes > self.max_table_bytes {
            return Err(OmlError::SizeLimit {
                what,
                requested: bytes,
                cap: self.max_table_bytes,
            });
        }
        Ok(())
    }
}

/// Row-major square bit matrix.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.row_mut(i)[j / 64] |= 1 << (j % 64);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in iter_bits(self.row(i), self.n) {
                t.set(j, i);
            }
        }
        t
    }
}

/// Indices of set bits, ascending.
pub(crate) fn iter_bits<'a>(row: &'a [u64], n: usize) -> impl Iterator<Item = usize> + 'a {
    row.iter()
        .take(n.div_ceil(64))
        .enumerate()
        .flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * 64 + t)
                }
            })
        })
        .filter(move |&i| i < n)
}

/// OR `src` into `dst` starting at bit `offset`.
pub(crate) fn or_shifted(dst: &mut [u64], src: &[u64], offset: usize, src_bits: usize) {
    let word = offset / 64;
    let shift = offset % 64;
    let src_words = src_bits.div_ceil(64);
    for (k, &s) in src.iter().take(src_words).enumerate() {
        if s == 0 {
            continue;
        }
        dst[word + k] |= s << shift;
        if shift != 0 && word + k + 1 < dst.len() {
            dst[word + k + 1] |= s >> (64 - shift);
        }
    }
}

/// A finite bounded poset with orthocomplement, candidate orthomodular
/// lattice. Whether it actually satisfies the OML laws is decided by
/// [`check_oml`]; the constructors here only normalize the encoding.
#[derive(Clone)]
pub struct FiniteOml {
    n: usize,
    up: BitMatrix,
    down: BitMatrix,
    up_count: Vec<u32>,
    down_count: Vec<u32>,
    ortho: Vec<u32>,
    labels: Vec<String>,
}

impl std::fmt::Debug for FiniteOml {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteOml(n={})", self.n)
    }
}

impl FiniteOml {
    /// Normalize raw up-set rows into canonical element order (up-set
    /// size descending, construction order breaking ties). Returns the
    /// lattice and the permutation from raw to canonical indices.
    pub(crate) fn from_raw(
        n: usize,
        rows: Vec<Vec<u64>>,
        ortho: Vec<u32>,
        labels: Vec<String>,
    ) -> (FiniteOml, Vec<usize>) {
        assert_eq!(rows.len(), n);
        assert_eq!(ortho.len(), n);
        assert_eq!(labels.len(), n);
        let counts: Vec<u32> = rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones()).sum())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (u32::MAX - counts[i], i));
        let mut perm = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        let mut up = BitMatrix::new(n);
        for old in 0..n {
            let dst = perm[old];
            for y in iter_bits(&rows[old], n) {
                up.set(dst, perm[y]);
            }
        }
        let down = up.transpose();
        let up_count = (0..n)
            .map(|i| up.row(i).iter().map(|w| w.count_ones()).sum())
            .collect();
        let down_count = (0..n)
            .map(|i| down.row(i).iter().map(|w| w.count_ones()).sum())
            .collect();
        let mut new_ortho = vec![0u32; n];
        let mut new_labels = vec![String::new(); n];
        for old in 0..n {
            new_ortho[perm[old]] = perm[ortho[old] as usize] as u32;
            new_labels[perm[old]] = labels[old].clone();
        }
        (
            FiniteOml {
                n,
                up,
                down,
                up_count,
                down_count,
                ortho: new_ortho,
                labels: new_labels,
            },
            perm,
        )
    }

    /// The one-element lattice. Rejected by [`check_oml`]; exists for
    /// callers that explicitly want the degenerate case.
    pub fn trivial() -> FiniteOml {
        let mut rows = vec![vec![1u64]];
        rows[0] = vec![1];
        FiniteOml::from_raw(1, rows, vec![0], vec!["1".into()]).0
    }

    /// The Boolean algebra 2^k on subset masks.
    pub fn boolean_powerset(k: usize, limits: &Limits) -> Result<FiniteOml, OmlError> {
        Ok(Self::boolean_powerset_with_perm(k, limits)?.0)
    }

    /// As [`Self::boolean_powerset`], also returning the permutation from
    /// subset masks to canonical element indices.
    pub(crate) fn boolean_powerset_with_perm(
        k: usize,
        limits: &Limits,
    ) -> Result<(FiniteOml, Vec<usize>), OmlError> {
        if k == 0 {
            return Err(OmlError::Degenerate);
        }
        if k >= usize::BITS as usize - 1 {
            return Err(OmlError::SizeLimit {
                what: "boolean powerset",
                requested: usize::MAX,
                cap: limits.max_elements,
            });
        }
        let n = 1usize << k;
        limits.admit(n, "boolean powerset")?;
        let words = n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; n];
        for a in 0..n {
            // supersets of a: a | t over subsets t of the complement
            let comp = !a & (n - 1);
            let mut t = 0usize;
            loop {
                let b = a | t;
                rows[a][b / 64] |= 1 << (b % 64);
                if t == comp {
                    break;
                }
                t = (t.wrapping_sub(comp)) & comp;
            }
        }
        let ortho = (0..n).map(|a| (!a & (n - 1)) as u32).collect();
        let labels = (0..n).map(|a| mask_label(a, k)).collect();
        Ok(FiniteOml::from_raw(n, rows, ortho, labels))
    }

    /// Componentwise product of two lattices.
    pub fn product(l: &FiniteOml, m: &FiniteOml, limits: &Limits) -> Result<FiniteOml, OmlError> {
        Ok(Self::product_with_perm(l, m, limits)?.0)
    }

    /// As [`Self::product`], also returning the permutation from raw pair
    /// indices a·|M|+b to canonical element indices.
    pub(crate) fn product_with_perm(
        l: &FiniteOml,
        m: &FiniteOml,
        limits: &Limits,
    ) -> Result<(FiniteOml, Vec<usize>), OmlError> {
        let n = l
            .n
            .checked_mul(m.n)
            .ok_or(OmlError::SizeLimit {
                what: "product",
                requested: usize::MAX,
                cap: limits.max_elements,
            })?;
        limits.admit(n, "product")?;
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for a in 0..l.n {
            for b in 0..m.n {
                let row = &mut rows[a * m.n + b];
                for c in iter_bits(l.up.row(a), l.n) {
                    or_shifted(row, m.up.row(b), c * m.n, m.n);
                }
            }
        }
        let mut ortho = vec![0u32; n];
        let mut labels = vec![String::new(); n];
        for a in 0..l.n {
            for b in 0..m.n {
                let i = a * m.n + b;
                ortho[i] = (l.ortho[a] as usize * m.n + m.ortho[b] as usize) as u32;
                labels[i] = format!("({},{})", l.labels[a], m.labels[b]);
            }
        }
        Ok(FiniteOml::from_raw(n, rows, ortho, labels))
    }

    /// Load from explicit ≤ pairs. The relation is taken as given and
    /// normalized; validity is [`check_oml`]'s business.
    pub fn from_leq_pairs(
        n: usize,
        leq: &[(usize, usize)],
        ortho: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<FiniteOml, OmlError> {
        Self::validate_tables(n, &ortho, &labels)?;
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for &(i, j) in leq {
            if i >= n || j >= n {
                return Err(OmlError::Malformed(format!("leq pair ({i},{j}) out of range")));
            }
            rows[i][j / 64] |= 1 << (j % 64);
        }
        let ortho = ortho.into_iter().map(|o| o as u32).collect();
        Ok(FiniteOml::from_raw(n, rows, ortho, labels).0)
    }

    /// Load from cover pairs; the reflexive-transitive closure is computed.
    pub fn from_cover_pairs(
        n: usize,
        covers: &[(usize, usize)],
        ortho: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<FiniteOml, OmlError> {
        Self::validate_tables(n, &ortho, &labels)?;
        let mut above = vec![Vec::new(); n];
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(OmlError::Malformed(format!(
                    "cover pair ({i},{j}) out of range"
                )));
            }
            above[i].push(j);
        }
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for start in 0..n {
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if rows[start][v / 64] >> (v % 64) & 1 == 1 {
                    continue;
                }
                rows[start][v / 64] |= 1 << (v % 64);
                stack.extend(&above[v]);
            }
        }
        let ortho = ortho.into_iter().map(|o| o as u32).collect();
        Ok(FiniteOml::from_raw(n, rows, ortho, labels).0)
    }

    fn validate_tables(n: usize, ortho: &[usize], labels: &[String]) -> Result<(), OmlError> {
        if ortho.len() != n {
            return Err(OmlError::Malformed(format!(
                "ortho has {} entries for {} elements",
                ortho.len(),
                n
            )));
        }
        if labels.len() != n {
            return Err(OmlError::Malformed(format!(
                "labels has {} entries for {} elements",
                labels.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &o in ortho {
            if o >= n || seen[o] {
                return Err(OmlError::Malformed("ortho is not a permutation".into()));
            }
            seen[o] = true;
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Canonical position of the bottom element.
    pub fn bottom(&self) -> usize {
        0
    }

    /// Canonical position of the top element.
    pub fn top(&self) -> usize {
        self.n - 1
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    pub fn ortho(&self, x: usize) -> usize {
        self.ortho[x] as usize
    }

    /// x ⊥ y iff x ≤ y′.
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.le(x, self.ortho(y))
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn up_row(&self, x: usize) -> &[u64] {
        self.up.row(x)
    }

    pub(crate) fn down_row(&self, x: usize) -> &[u64] {
        self.down.row(x)
    }

    pub(crate) fn up_count(&self, x: usize) -> u32 {
        self.up_count[x]
    }

    pub(crate) fn down_count(&self, x: usize) -> u32 {
        self.down_count[x]
    }

    pub fn upset(&self, x: usize) -> Vec<usize> {
        iter_bits(self.up.row(x), self.n).collect()
    }

    pub fn downset(&self, x: usize) -> Vec<usize> {
        iter_bits(self.down.row(x), self.n).collect()
    }

    /// Least upper bound, if one exists. In canonical order the candidate
    /// is the lowest-index common upper bound; it is the join exactly
    /// when its up-set covers the whole intersection.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let rx = self.up.row(x);
        let ry = self.up.row(y);
        let mut first = None;
        let mut count = 0u32;
        for (w, (&a, &b)) in rx.iter().zip(ry).enumerate() {
            let v = a & b;
            count += v.count_ones();
            if first.is_none() && v != 0 {
                first = Some(w * 64 + v.trailing_zeros() as usize);
            }
        }
        let m = first?;
        (self.up_count[m] == count).then_some(m)
    }

    /// Greatest lower bound, if one exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let rx = self.down.row(x);
        let ry = self.down.row(y);
        let mut last = None;
        let mut count = 0u32;
        for (w, (&a, &b)) in rx.iter().zip(ry).enumerate() {
            let v = a & b;
            count += v.count_ones();
            if v != 0 {
                last = Some(w * 64 + 63 - v.leading_zeros() as usize);
            }
        }
        let m = last?;
        (self.down_count[m] == count).then_some(m)
    }

    /// Join when totality is already established: the lowest-index common
    /// upper bound, found by scanning from the word of max(x,y) upward.
    pub(crate) fn join_trusted(&self, x: usize, y: usize) -> usize {
        let rx = self.up.row(x);
        let ry = self.up.row(y);
        for w in x.max(y) / 64..rx.len() {
            let v = rx[w] & ry[w];
            if v != 0 {
                return w * 64 + v.trailing_zeros() as usize;
            }
        }
        unreachable!("bounded poset: the top is a common upper bound")
    }

    /// Meet when totality is already established.
    pub(crate) fn meet_trusted(&self, x: usize, y: usize) -> usize {
        let rx = self.down.row(x);
        let ry = self.down.row(y);
        for w in (0..=x.min(y) / 64).rev() {
            let v = rx[w] & ry[w];
            if v != 0 {
                return w * 64 + 63 - v.leading_zeros() as usize;
            }
        }
        unreachable!("bounded poset: the bottom is a common lower bound")
    }

    /// Join of a set, with ⋁∅ = bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut acc = self.bottom();
        for x in xs {
            acc = self.join(acc, x)?;
        }
        Some(acc)
    }

    pub fn is_atom(&self, x: usize) -> bool {
        self.down_count[x] == 2 && self.down.get(x, self.bottom())
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.is_atom(x)).collect()
    }

    /// All ≤ pairs, for serialization.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| iter_bits(self.up.row(x), self.n).map(move |y| (x, y)))
            .collect()
    }

    /// Upper covers of every element.
    pub(crate) fn upper_covers(&self) -> Vec<Vec<u32>> {
        use rayon::prelude::*;
        (0..self.n)
            .into_par_iter()
            .map(|x| {
                let row = self.up.row(x);
                iter_bits(row, self.n)
                    .filter(|&y| y != x)
                    .filter(|&y| {
                        // minimal in up⁺(x): nothing strictly between
                        let dy = self.down.row(y);
                        let mut strict = 0u32;
                        for (w, (&a, &b)) in row.iter().zip(dy).enumerate() {
                            let mut v = a & b;
                            if w == x / 64 {
                                v &= !(1u64 << (x % 64));
                            }
                            if w == y / 64 {
                                v &= !(1u64 << (y % 64));
                            }
                            strict += v.count_ones();
                            if strict > 0 {
                                break;
                            }
                        }
                        strict == 0
                    })
                    .map(|y| y as u32)
                    .collect()
            })
            .collect()
    }

    /// Lower covers of every element.
    pub(crate) fn lower_covers(&self) -> Vec<Vec<u32>> {
        use rayon::prelude::*;
        (0..self.n)
            .into_par_iter()
            .map(|x| {
                let row = self.down.row(x);
                iter_bits(row, self.n)
                    .filter(|&y| y != x)
                    .filter(|&y| {
                        let uy = self.up.row(y);
                        let mut strict = 0u32;
                        for (w, (&a, &b)) in row.iter().zip(uy).enumerate() {
                            let mut v = a & b;
                            if w == x / 64 {
                                v &= !(1u64 << (x % 64));
                            }
                            if w == y / 64 {
                                v &= !(1u64 << (y % 64));
                            }
                            strict += v.count_ones();
                            if strict > 0 {
                                break;
                            }
                        }
                        strict == 0
                    })
                    .map(|y| y as u32)
                    .collect()
            })
            .collect()
    }
}

fn mask_label(mask: usize, k: usize) -> String {
    let members: Vec<String> = (0..k)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

#[derive(Serialize, Deserialize)]
struct OmlJson {
    n: usize,
    leq: Vec<[usize; 2]>,
    ortho: Vec<usize>,
    labels: Vec<String>,
}

impl Serialize for FiniteOml {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OmlJson {
            n: self.n,
            leq: self.leq_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            ortho: self.ortho.iter().map(|&o| o as usize).collect(),
            labels: self.labels.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteOml {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = OmlJson::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = raw.leq.iter().map(|p| (p[0], p[1])).collect();
        let labels = if raw.labels.is_empty() {
            (0..raw.n).map(|i| i.to_string()).collect()
        } else {
            raw.labels
        };
        FiniteOml::from_leq_pairs(raw.n, &pairs, raw.ortho, labels)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or_shifted_blits_across_words() {
        let src = vec![0b1011u64];
        let mut dst = vec![0u64; 3];
        or_shifted(&mut dst, &src, 62, 4);
        assert_eq!(dst[0], 0b11 << 62);
        assert_eq!(dst[1], 0b10);
        let mut dst2 = vec![0u64; 2];
        or_shifted(&mut dst2, &src, 64, 4);
        assert_eq!(dst2[1], 0b1011);
    }

    #[test]
    fn powerset_shape() {
        let limits = Limits::default();
        let b3 = FiniteOml::boolean_powerset(3, &limits).unwrap();
        assert_eq!(b3.size(), 8);
        assert_eq!(b3.atoms().len(), 3);
        assert_eq!(b3.up_count(b3.bottom()), 8);
        assert_eq!(b3.down_count(b3.top()), 8);
        assert!(FiniteOml::boolean_powerset(0, &limits).is_err());
    }

    #[test]
    fn join_meet_on_powerset() {
        let limits = Limits::default();
        let b3 = FiniteOml::boolean_powerset(3, &limits).unwrap();
        let atoms = b3.atoms();
        let j = b3.join(atoms[0], atoms[1]).unwrap();
        assert_eq!(b3.down_count(j), 4); // a two-element subset
        assert_eq!(b3.meet(atoms[0], atoms[1]), Some(b3.bottom()));
        assert_eq!(b3.join_all(atoms.iter().copied()), Some(b3.top()));
        assert_eq!(b3.join_all([]), Some(b3.bottom()));
    }

    #[test]
    fn product_of_squares_is_cube() {
        let limits = Limits::default();
        let b1 = FiniteOml::boolean_powerset(1, &limits).unwrap();
        let b2 = FiniteOml::boolean_powerset(2, &limits).unwrap();
        let p = FiniteOml::product(&b2, &b1, &limits).unwrap();
        assert_eq!(p.size(), 8);
        assert_eq!(p.atoms().len(), 3);
        assert!(check_oml(&p).passed);
    }

    #[test]
    fn size_limits_are_enforced() {
        let limits = Limits {
            max_elements: 4,
            max_table_bytes: 1 << 20,
        };
        assert!(matches!(
            FiniteOml::boolean_powerset(3, &limits),
            Err(OmlError::SizeLimit { .. })
        ));
        let tight = Limits {
            max_elements: 1 << 30,
            max_table_bytes: 64,
        };
        assert!(matches!(
            FiniteOml::boolean_powerset(8, &tight),
            Err(OmlError::SizeLimit { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let limits = Limits::default();
        let b2 = FiniteOml::boolean_powerset(2, &limits).unwrap();
        let text = serde_json::to_string(&b2).unwrap();
        let back: FiniteOml = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(check_oml(&back).passed);
    }

    #[test]
    fn cover_closure() {
        // diamond as covers
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        let l = FiniteOml::from_cover_pairs(
            4,
            &covers,
            vec![3, 2, 1, 0],
            vec!["0".into(), "a".into(), "a'".into(), "1".into()],
        )
        .unwrap();
        assert!(l.le(l.bottom(), l.top()));
        assert!(check_oml(&l).passed);
        assert_eq!(l.atoms().len(), 2);
    }

    #[test]
    fn malformed_ortho_is_rejected() {
        let r = FiniteOml::from_leq_pairs(
            2,
            &[(0, 0), (0, 1), (1, 1)],
            vec![1, 1],
            vec!["0".into(), "1".into()],
        );
        assert!(matches!(r, Err(OmlError::Malformed(_))));
    }
}
