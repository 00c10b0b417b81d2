//! Exact scalar arithmetic over ℚ and the Eisenstein rationals ℚ(ω).
//!
//! ω is a primitive cube root of unity, reduced with the single rewrite
//! rule ω² = −1 − ω. Conjugation sends a + bω to (a − b) − bω, so every
//! norm s·s̄ lands back in ℚ and all comparisons stay exact.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational in canonical reduced form.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed field tags: {0} vs {1}")]
    MixedField(FieldTag, FieldTag),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Which ground field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Qw")]
    Qw,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Qw => write!(f, "Qw"),
        }
    }
}

/// An exact field scalar with conjugation and a rational norm s·s̄.
///
/// Implemented by [`Rational`] (conjugation is the identity) and
/// [`Eisenstein`]. Code that works with vectors and rays is generic over
/// this trait; the two ground fields never mix inside one computation.
pub trait ExactScalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: FieldTag;

    fn conj(&self) -> Self;

    /// s·s̄ as a rational; nonnegative, zero iff s = 0.
    fn norm(&self) -> Rational;

    fn from_rational(r: Rational) -> Self;

    /// Some(r) iff the scalar is rational-valued.
    fn to_rational(&self) -> Option<Rational>;

    fn parse_text(s: &str) -> Result<Self, ScalarError>;

    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Parse "p/q" or "p" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if let Some((_, den)) = t.split_once('/') {
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ScalarError::Parse(s.to_string()))?;
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
    }
    Rational::from_str(t).map_err(|_| ScalarError::Parse(s.to_string()))
}

impl ExactScalar for Rational {
    const FIELD: FieldTag = FieldTag::Q;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn norm(&self) -> Rational {
        self * self
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn parse_text(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }
}

/// Element a + b·ω of ℚ(ω), with ω² = −1 − ω.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Eisenstein {
    a: Rational,
    b: Rational,
}

impl Eisenstein {
    pub fn new(a: Rational, b: Rational) -> Self {
        Eisenstein { a, b }
    }

    pub fn omega() -> Self {
        Eisenstein::new(Rational::zero(), Rational::one())
    }

    /// ω² = −1 − ω.
    pub fn omega_sq() -> Self {
        Eisenstein::new(-Rational::one(), -Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Eisenstein::new(Rational::from_integer(n.into()), Rational::zero())
    }

    pub fn coeff_one(&self) -> &Rational {
        &self.a
    }

    pub fn coeff_omega(&self) -> &Rational {
        &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = ExactScalar::norm(self);
        let c = self.conj();
        Some(Eisenstein::new(c.a / &n, c.b / &n))
    }
}

impl fmt::Debug for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Eisenstein({self})")
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}w", self.a, -&self.b)
        } else {
            write!(f, "{}+{}w", self.a, self.b)
        }
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Self) -> Self {
        Eisenstein::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Self) -> Self {
        Eisenstein::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Self {
        Eisenstein::new(-self.a, -self.b)
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    // (a₁ + b₁ω)(a₂ + b₂ω) = a₁a₂ − b₁b₂ + (a₁b₂ + a₂b₁ − b₁b₂)ω
    fn mul(self, rhs: Self) -> Self {
        let bb = &self.b * &rhs.b;
        let a = &self.a * &rhs.a - &bb;
        let b = &self.a * &rhs.b + &self.b * &rhs.a - bb;
        Eisenstein::new(a, b)
    }
}

impl Div for Eisenstein {
    type Output = Eisenstein;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero in Q(w)");
        self * inv
    }
}

impl Zero for Eisenstein {
    fn zero() -> Self {
        Eisenstein::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Eisenstein {
    fn one() -> Self {
        Eisenstein::new(Rational::one(), Rational::zero())
    }
}

impl From<Rational> for Eisenstein {
    fn from(r: Rational) -> Self {
        Eisenstein::new(r, Rational::zero())
    }
}

impl ExactScalar for Eisenstein {
    const FIELD: FieldTag = FieldTag::Qw;

    // conj(a + bω) = (a − b) − bω, since ω̄ = ω² = −1 − ω.
    fn conj(&self) -> Self {
        Eisenstein::new(&self.a - &self.b, -self.b.clone())
    }

    // (a + bω)·conj(a + bω) = a² − ab + b²
    fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    fn from_rational(r: Rational) -> Self {
        r.into()
    }

    fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn parse_text(s: &str) -> Result<Self, ScalarError> {
        parse_eisenstein(s)
    }
}

/// Parse "p/q+r/sw", "p/q-r/sw", a bare rational, or a bare ω-term
/// like "w", "-w", "2w", "1/2w".
pub fn parse_eisenstein(s: &str) -> Result<Eisenstein, ScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    if !t.contains('w') {
        return Ok(parse_rational(t)?.into());
    }
    let body = t
        .strip_suffix('w')
        .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
    // Split off the ω coefficient at the last sign that is not leading.
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i);
    let (a_text, b_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let a = if a_text.is_empty() {
        Rational::zero()
    } else {
        parse_rational(a_text)?
    };
    let b = match b_text {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        _ => parse_rational(b_text)?,
    };
    Ok(Eisenstein::new(a, b))
}

impl FromStr for Eisenstein {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_eisenstein(s)
    }
}

/// A scalar together with its field tag, for I/O boundaries where the
/// ground field is only known at runtime. Computation proper is generic
/// over [`ExactScalar`] instead.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Q(Rational),
    Qw(Eisenstein),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Q(_) => FieldTag::Q,
            Scalar::Qw(_) => FieldTag::Qw,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Qw(e) => e.is_zero(),
        }
    }

    /// Exact field arithmetic; both operands must carry the same tag.
    pub fn arith(lhs: &Scalar, rhs: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if op == ArithOp::Div && rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match (lhs, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Ok(Scalar::Q(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => a / b,
            })),
            (Scalar::Qw(a), Scalar::Qw(b)) => Ok(Scalar::Qw(match op {
                ArithOp::Add => a.clone() + b.clone(),
                ArithOp::Sub => a.clone() - b.clone(),
                ArithOp::Mul => a.clone() * b.clone(),
                ArithOp::Div => a.clone() / b.clone(),
            })),
            _ => Err(ScalarError::MixedField(lhs.field(), rhs.field())),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.clone()),
            Scalar::Qw(e) => Scalar::Qw(e.conj()),
        }
    }

    pub fn norm(&self) -> Rational {
        match self {
            Scalar::Q(r) => ExactScalar::norm(r),
            Scalar::Qw(e) => ExactScalar::norm(e),
        }
    }

    /// Reinterpret in ℚ(ω); rationals embed with zero ω-part.
    pub fn into_eisenstein(self) -> Eisenstein {
        match self {
            Scalar::Q(r) => r.into(),
            Scalar::Qw(e) => e,
        }
    }

    pub fn into_rational(self) -> Option<Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Qw(e) => e.to_rational(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Qw(e) => write!(f, "{e}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    /// Text containing `w` parses into ℚ(ω), anything else into ℚ.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('w') {
            Ok(Scalar::Qw(parse_eisenstein(s)?))
        } else {
            Ok(Scalar::Q(parse_rational(s)?))
        }
    }
}

/// serde adapter: rationals as "p/q" strings.
pub mod rational_text {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ei(a: Rational, b: Rational) -> Eisenstein {
        Eisenstein::new(a, b)
    }

    #[test]
    fn omega_squared_is_minus_one_minus_omega() {
        let w = Eisenstein::omega();
        assert_eq!(w.clone() * w, Eisenstein::omega_sq());
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn one_plus_omega_squared_is_omega() {
        // (1 + ω)² expands to ω² + 2ω + 1 = ω under ω² = −1 − ω.
        let s = Eisenstein::one() + Eisenstein::omega();
        assert_eq!(s.clone() * s, Eisenstein::omega());
    }

    #[test]
    fn conj_examples() {
        assert_eq!(ExactScalar::conj(&q(3, 7)), q(3, 7));
        assert_eq!(Eisenstein::omega().conj(), Eisenstein::omega_sq());
        let s = ei(q(2, 1), q(5, 1));
        assert_eq!(s.conj(), ei(q(-3, 1), q(-5, 1)));
        assert_eq!(s.conj().conj(), s);
        // s·s̄ is rational
        assert!((s.clone() * s.conj()).to_rational().is_some());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(ExactScalar::norm(&Eisenstein::omega()), q(1, 1));
        assert_eq!(ExactScalar::norm(&q(-2, 3)), q(4, 9));
        let s = Eisenstein::one() + Eisenstein::omega(); // 1 + ω = −ω²
        assert_eq!(ExactScalar::norm(&s), q(1, 1));
    }

    #[test]
    fn scalar_arith_checks_tags() {
        let a = Scalar::Q(q(1, 2));
        let b = Scalar::Qw(Eisenstein::omega());
        assert_eq!(
            Scalar::arith(&a, &b, ArithOp::Add),
            Err(ScalarError::MixedField(FieldTag::Q, FieldTag::Qw))
        );
        assert_eq!(
            Scalar::arith(&a, &Scalar::Q(q(0, 1)), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(
            Scalar::arith(&a, &Scalar::Q(q(1, 3)), ArithOp::Add),
            Ok(Scalar::Q(q(5, 6)))
        );
    }

    #[test]
    fn eisenstein_text_forms() {
        for text in ["0+1w", "w", "1w"] {
            assert_eq!(parse_eisenstein(text).unwrap(), Eisenstein::omega());
        }
        assert_eq!(parse_eisenstein("-w").unwrap(), -Eisenstein::omega());
        assert_eq!(
            parse_eisenstein("-3-5w").unwrap(),
            ei(q(-3, 1), q(-5, 1))
        );
        assert_eq!(
            parse_eisenstein("1/2-3/4w").unwrap(),
            ei(q(1, 2), q(-3, 4))
        );
        assert_eq!(ei(q(-3, 1), q(-5, 1)).to_string(), "-3-5w");
        assert_eq!(ei(q(1, 1), q(0, 1)).to_string(), "1+0w");
        assert_eq!(q(-7, 2).to_string(), "-7/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_eisenstein("").is_err());
        assert!(parse_eisenstein("zz").is_err());
    }

    #[test]
    fn scalar_text_detects_field() {
        assert_eq!("3/4".parse::<Scalar>().unwrap().field(), FieldTag::Q);
        assert_eq!("3/4+0w".parse::<Scalar>().unwrap().field(), FieldTag::Qw);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    fn arb_eisenstein() -> impl Strategy<Value = Eisenstein> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| ei(a, b))
    }

    proptest! {
        #[test]
        fn q_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert_eq!(&a * (Rational::one() / &a), Rational::one());
            }
        }

        #[test]
        fn qw_field_axioms(a in arb_eisenstein(), b in arb_eisenstein(), c in arb_eisenstein()) {
            prop_assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.inverse().unwrap(), Eisenstein::one());
            }
        }

        #[test]
        fn conj_is_field_automorphism(a in arb_eisenstein(), b in arb_eisenstein()) {
            prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
            prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        }

        #[test]
        fn norm_is_multiplicative(a in arb_eisenstein(), b in arb_eisenstein()) {
            prop_assert_eq!(
                ExactScalar::norm(&(a.clone() * b.clone())),
                ExactScalar::norm(&a) * ExactScalar::norm(&b)
            );
            prop_assert!(ExactScalar::norm(&a) >= Rational::zero());
            prop_assert_eq!(ExactScalar::norm(&a).is_zero(), a.is_zero());
        }

        #[test]
        fn text_round_trip_qw(a in arb_eisenstein()) {
            let text = a.to_string();
            prop_assert_eq!(parse_eisenstein(&text).unwrap(), a);
        }

        #[test]
        fn text_round_trip_q(a in arb_rational()) {
            let text = a.to_string();
            prop_assert_eq!(parse_rational(&text).unwrap(), a);
        }
    }
}
