//! Idempotent semifields over the extended reals.
//!
//! Four concrete semifields are supported, selected by [`SemifieldKind`]:
//!
//! | kind       | carrier      | ⊕   | ⊗ | 𝟘   | 𝟙 |
//! |------------|--------------|-----|---|-----|---|
//! | `MaxPlus`  | ℝ ∪ {−∞}     | max | + | −∞  | 0 |
//! | `MinPlus`  | ℝ ∪ {+∞}     | min | + | +∞  | 0 |
//! | `MaxTimes` | ℝ₊ ∪ {0}     | max | × | 0   | 1 |
//! | `MinTimes` | ℝ₊ ∪ {+∞}    | min | × | +∞  | 1 |
//!
//! Elements are stored as `f64` with the semifield zero encoded as the
//! matching infinity (or `0.0` for `MaxTimes`). The raw-value operations on
//! [`SemifieldKind`] are what the matrix code uses in its inner loops;
//! [`Scalar`] is the checked, kind-carrying wrapper.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemifieldKind {
    MaxPlus,
    MinPlus,
    MaxTimes,
    MinTimes,
}

impl SemifieldKind {
    pub const ALL: [SemifieldKind; 4] = [
        SemifieldKind::MaxPlus,
        SemifieldKind::MinPlus,
        SemifieldKind::MaxTimes,
        SemifieldKind::MinTimes,
    ];

    /// The tag used in problem files and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            SemifieldKind::MaxPlus => "max-plus",
            SemifieldKind::MinPlus => "min-plus",
            SemifieldKind::MaxTimes => "max-times",
            SemifieldKind::MinTimes => "min-times",
        }
    }

    /// `true` when ⊕ is `max`.
    pub fn is_max(self) -> bool {
        matches!(self, SemifieldKind::MaxPlus | SemifieldKind::MaxTimes)
    }

    /// `true` when ⊗ is ordinary addition.
    pub fn is_additive(self) -> bool {
        matches!(self, SemifieldKind::MaxPlus | SemifieldKind::MinPlus)
    }

    pub fn zero(self) -> f64 {
        match self {
            SemifieldKind::MaxPlus => f64::NEG_INFINITY,
            SemifieldKind::MinPlus | SemifieldKind::MinTimes => f64::INFINITY,
            SemifieldKind::MaxTimes => 0.0,
        }
    }

    pub fn one(self) -> f64 {
        if self.is_additive() {
            0.0
        } else {
            1.0
        }
    }

    /// Default comparison tolerance: exact for the additive kinds, 1e-9
    /// relative for the multiplicative ones.
    pub fn default_epsilon(self) -> f64 {
        if self.is_additive() {
            0.0
        } else {
            1e-9
        }
    }

    pub fn is_zero(self, a: f64) -> bool {
        a == self.zero()
    }

    /// Checks that `value` encodes an element of this semifield and
    /// normalizes `-0.0` to `0.0`.
    pub fn validate(self, value: f64) -> Result<f64> {
        let ok = match self {
            SemifieldKind::MaxPlus => value.is_finite() || value == f64::NEG_INFINITY,
            SemifieldKind::MinPlus => value.is_finite() || value == f64::INFINITY,
            SemifieldKind::MaxTimes => value.is_finite() && value >= 0.0,
            SemifieldKind::MinTimes => (value.is_finite() && value > 0.0) || value == f64::INFINITY,
        };
        if ok {
            Ok(if value == 0.0 { 0.0 } else { value })
        } else {
            Err(Error::InvalidValue { value, kind: self })
        }
    }

    #[inline]
    pub fn add(self, a: f64, b: f64) -> f64 {
        if self.is_max() {
            a.max(b)
        } else {
            a.min(b)
        }
    }

    #[inline]
    pub fn mul(self, a: f64, b: f64) -> f64 {
        // absorption wins over ∞ − ∞ and 0 · ∞
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        if self.is_additive() {
            a + b
        } else {
            a * b
        }
    }

    pub fn inv(self, a: f64) -> Result<f64> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(if self.is_additive() { -a } else { 1.0 / a })
    }

    /// `a` raised to the real power `r`: `a·r` for the additive kinds and
    /// `a^r` for the multiplicative ones.
    pub fn pow(self, a: f64, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::Numerical(format!("non-finite exponent {r}")));
        }
        if self.is_zero(a) {
            return if r > 0.0 {
                Ok(self.zero())
            } else {
                Err(Error::ZeroPower { exponent: r })
            };
        }
        if r == 0.0 {
            return Ok(self.one());
        }
        let v = if self.is_additive() { a * r } else { a.powf(r) };
        self.validate(v)
    }

    /// Order induced by ⊕ (`a ≤ b` iff `a ⊕ b = b`), relaxed by `eps`:
    /// absolute for the additive kinds, relative for the multiplicative ones.
    #[inline]
    pub fn leq(self, a: f64, b: f64, eps: f64) -> bool {
        if a == b {
            return true;
        }
        match self {
            SemifieldKind::MaxPlus => a <= b + eps,
            SemifieldKind::MinPlus => a >= b - eps,
            SemifieldKind::MaxTimes => a <= b * (1.0 + eps),
            SemifieldKind::MinTimes => a * (1.0 + eps) >= b,
        }
    }

    #[inline]
    pub fn approx_eq(self, a: f64, b: f64, eps: f64) -> bool {
        self.leq(a, b, eps) && self.leq(b, a, eps)
    }

    /// Strict order without tolerance.
    #[inline]
    pub fn lt(self, a: f64, b: f64) -> bool {
        a != b && self.add(a, b) == b
    }
}

impl fmt::Display for SemifieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown semifield `{0}` (expected max-plus, min-plus, max-times or min-times)")]
pub struct UnknownSemifield(pub String);

impl FromStr for SemifieldKind {
    type Err = UnknownSemifield;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SemifieldKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| UnknownSemifield(s.to_owned()))
    }
}

/// Comparison tolerance used by order tests and feasibility checks.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Tolerance {
    /// [`SemifieldKind::default_epsilon`] for whichever kind is in use.
    #[default]
    Policy,
    Fixed(f64),
}

impl Tolerance {
    pub fn epsilon(self, kind: SemifieldKind) -> f64 {
        match self {
            Tolerance::Policy => kind.default_epsilon(),
            Tolerance::Fixed(eps) => eps,
        }
    }
}

/// An element of one of the four semifields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    kind: SemifieldKind,
    value: f64,
}

impl Scalar {
    pub fn new(kind: SemifieldKind, value: f64) -> Result<Self> {
        Ok(Scalar {
            kind,
            value: kind.validate(value)?,
        })
    }

    pub(crate) fn from_raw(kind: SemifieldKind, value: f64) -> Self {
        debug_assert!(kind.validate(value).is_ok(), "{value} not in {kind}");
        Scalar { kind, value }
    }

    pub fn zero(kind: SemifieldKind) -> Self {
        Scalar {
            kind,
            value: kind.zero(),
        }
    }

    pub fn one(kind: SemifieldKind) -> Self {
        Scalar {
            kind,
            value: kind.one(),
        }
    }

    pub fn kind(self) -> SemifieldKind {
        self.kind
    }

    /// The encoded value (`-inf` for the max-plus zero, and so on).
    pub fn value(self) -> f64 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.kind.is_zero(self.value)
    }

    fn same_kind(self, other: Scalar) -> Result<SemifieldKind> {
        if self.kind == other.kind {
            Ok(self.kind)
        } else {
            Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            })
        }
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        let k = self.same_kind(other)?;
        Ok(Scalar::from_raw(k, k.add(self.value, other.value)))
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        let k = self.same_kind(other)?;
        Ok(Scalar::from_raw(k, k.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<Scalar> {
        Ok(Scalar::from_raw(self.kind, self.kind.inv(self.value)?))
    }

    pub fn pow(self, r: f64) -> Result<Scalar> {
        Ok(Scalar::from_raw(self.kind, self.kind.pow(self.value, r)?))
    }

    pub fn sqrt(self) -> Result<Scalar> {
        self.pow(0.5)
    }

    /// `self ≤ other` under the default tolerance policy.
    pub fn leq(self, other: Scalar) -> Result<bool> {
        self.leq_with(other, Tolerance::Policy)
    }

    pub fn leq_with(self, other: Scalar, tol: Tolerance) -> Result<bool> {
        let k = self.same_kind(other)?;
        Ok(k.leq(self.value, other.value, tol.epsilon(k)))
    }

    pub fn approx_eq(self, other: Scalar, tol: Tolerance) -> Result<bool> {
        let k = self.same_kind(other)?;
        Ok(k.approx_eq(self.value, other.value, tol.epsilon(k)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
