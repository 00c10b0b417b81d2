//! Rays (1-dimensional subspaces) of K³ with the Hermitian inner product,
//! the conjugated cross product, and exact angle comparisons.
//!
//! The inner product is conjugate-linear in its second argument. Angles
//! never leave ℚ: the sole angle proxy is the squared cosine
//! |⟨u,v⟩|² / (‖u‖²‖v‖²).

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{ExactScalar, FieldTag, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RayError {
    #[error("zero vector does not span a ray")]
    ZeroVector,
    #[error("block is not pairwise orthogonal")]
    BlockNotOrthogonal,
    #[error("field tag mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldTag, found: FieldTag },
    #[error("bad ray encoding: {0}")]
    Encoding(String),
}

/// A vector of K³.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector3<K> {
    pub x: K,
    pub y: K,
    pub z: K,
}

impl<K: ExactScalar> Vector3<K> {
    pub fn new(x: K, y: K, z: K) -> Self {
        Vector3 { x, y, z }
    }

    pub fn components(&self) -> [&K; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Hermitian inner product u₁v̄₁ + u₂v̄₂ + u₃v̄₃.
    pub fn inner(&self, other: &Self) -> K {
        self.x.clone() * other.x.conj()
            + self.y.clone() * other.y.conj()
            + self.z.clone() * other.z.conj()
    }

    /// The conjugated cross product
    /// (conj(u₂v₃−u₃v₂), conj(u₃v₁−u₁v₃), conj(u₁v₂−u₂v₁)).
    ///
    /// For linearly independent inputs the result is nonzero and
    /// orthogonal to both; for dependent inputs it is the zero vector and
    /// callers must check.
    pub fn cross(&self, other: &Self) -> Self {
        let (u, v) = (self, other);
        Vector3::new(
            (u.y.clone() * v.z.clone() - u.z.clone() * v.y.clone()).conj(),
            (u.z.clone() * v.x.clone() - u.x.clone() * v.z.clone()).conj(),
            (u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()).conj(),
        )
    }

    pub fn scaled(&self, s: &K) -> Self {
        Vector3::new(
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// ‖v‖² = Σ vᵢv̄ᵢ as a rational.
    pub fn norm2(&self) -> Rational {
        self.x.norm() + self.y.norm() + self.z.norm()
    }
}

impl<K: ExactScalar> fmt::Debug for Vector3<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A 1-dimensional subspace of K³ in canonical form: the representative
/// is scaled so its first nonzero component is 1, making equality and
/// hashing structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ray<K> {
    rep: Vector3<K>,
}

impl<K: ExactScalar> Ray<K> {
    pub fn new(v: Vector3<K>) -> Result<Self, RayError> {
        let lead = [&v.x, &v.y, &v.z]
            .into_iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(RayError::ZeroVector)?;
        let rep = Vector3::new(
            v.x / lead.clone(),
            v.y / lead.clone(),
            v.z / lead,
        );
        Ok(Ray { rep })
    }

    pub fn from_components(x: K, y: K, z: K) -> Result<Self, RayError> {
        Ray::new(Vector3::new(x, y, z))
    }

    pub fn rep(&self) -> &Vector3<K> {
        &self.rep
    }

    pub fn orthogonal(&self, other: &Self) -> bool {
        self.rep.inner(&other.rep).is_zero()
    }

    /// cos²θ = |⟨u,v⟩|² / (‖u‖²‖v‖²); representative-independent,
    /// in [0,1], zero iff orthogonal.
    pub fn squared_cosine(&self, other: &Self) -> Rational {
        self.rep.inner(&other.rep).norm() / (self.rep.norm2() * other.rep.norm2())
    }
}

impl<K: ExactScalar> fmt::Debug for Ray<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}, {}>", self.rep.x, self.rep.y, self.rep.z)
    }
}

/// An exact angle comparison between two rays.
#[derive(Clone)]
pub struct RayAngle<K: ExactScalar> {
    pub u: Ray<K>,
    pub v: Ray<K>,
    pub cos2: Rational,
}

impl<K: ExactScalar> RayAngle<K> {
    pub fn between(u: Ray<K>, v: Ray<K>) -> Self {
        let cos2 = u.squared_cosine(&v);
        RayAngle { u, v, cos2 }
    }
}

/// True iff the squared cosines of u against the three block rays agree.
///
/// The block must be pairwise orthogonal.
pub fn unbiased_wrt_block<K: ExactScalar>(
    u: &Ray<K>,
    block: &[Ray<K>; 3],
) -> Result<bool, RayError> {
    for i in 0..3 {
        for j in i + 1..3 {
            if !block[i].orthogonal(&block[j]) {
                return Err(RayError::BlockNotOrthogonal);
            }
        }
    }
    let c0 = u.squared_cosine(&block[0]);
    let c1 = u.squared_cosine(&block[1]);
    let c2 = u.squared_cosine(&block[2]);
    Ok(c0 == c1 && c1 == c2)
}

/// The standard basis rays ⟨1,0,0⟩, ⟨0,1,0⟩, ⟨0,0,1⟩.
pub fn standard_basis<K: ExactScalar>() -> [Ray<K>; 3] {
    let o = K::zero;
    let l = K::one;
    [
        Ray::from_components(l(), o(), o()).unwrap(),
        Ray::from_components(o(), l(), o()).unwrap(),
        Ray::from_components(o(), o(), l()).unwrap(),
    ]
}

#[derive(Serialize, Deserialize)]
struct RayJson {
    field: FieldTag,
    v: [String; 3],
}

impl<K: ExactScalar> Serialize for Ray<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RayJson {
            field: K::FIELD,
            v: [
                self.rep.x.to_text(),
                self.rep.y.to_text(),
                self.rep.z.to_text(),
            ],
        }
        .serialize(s)
    }
}

impl<'de, K: ExactScalar> Deserialize<'de> for Ray<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RayJson::deserialize(d)?;
        if raw.field != K::FIELD {
            return Err(D::Error::custom(RayError::FieldMismatch {
                expected: K::FIELD,
                found: raw.field,
            }));
        }
        let parse = |t: &str| K::parse_text(t).map_err(D::Error::custom);
        Ray::from_components(parse(&raw.v[0])?, parse(&raw.v[1])?, parse(&raw.v[2])?)
            .map_err(D::Error::custom)
    }
}
