//! Exact rational coefficient that stays on machine integers until a checked
//! operation overflows, then promotes to arbitrary precision.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

type Small = Ratio<i64>;

#[derive(Clone, Debug)]
pub(crate) enum Coeff {
    Small(Small),
    Big(BigRational),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Small(Small::zero())
    }

    #[cfg(test)]
    pub fn one() -> Self {
        Coeff::Small(Small::one())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Small(x) => x.is_zero(),
            Coeff::Big(x) => x.is_zero(),
        }
    }

    pub fn from_big(x: &BigRational) -> Self {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Coeff::Small(Small::new_raw(n, d)),
            _ => Coeff::Big(x.clone()),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Coeff::Small(x) => BigRational::new_raw(BigInt::from(*x.numer()), BigInt::from(*x.denom())),
            Coeff::Big(x) => x.clone(),
        }
    }

    fn demote(x: BigRational) -> Self {
        Self::from_big(&x)
    }

    fn small_ok(x: Small) -> Option<Small> {
        // i64::MIN has no negation; keep clear of it so neg/recip stay total.
        (*x.numer() != i64::MIN && *x.denom() != i64::MIN).then_some(x)
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(b).and_then(Self::small_ok) {
                return Coeff::Small(c);
            }
        }
        Self::demote(self.to_big() + other.to_big())
    }

    #[cfg(test)]
    pub fn sub(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(b).and_then(Self::small_ok) {
                return Coeff::Small(c);
            }
        }
        Self::demote(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(b).and_then(Self::small_ok) {
                return Coeff::Small(c);
            }
        }
        Self::demote(self.to_big() * other.to_big())
    }

    /// `self - a * b` without an intermediate allocation in the common case.
    pub fn sub_mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if let (Coeff::Small(x), Coeff::Small(y), Coeff::Small(z)) = (self, a, b) {
            if let Some(c) = y.checked_mul(z).and_then(|p| x.checked_sub(&p)).and_then(Self::small_ok) {
                return Coeff::Small(c);
            }
        }
        Self::demote(self.to_big() - a.to_big() * b.to_big())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Small(x) => Coeff::Small(-*x),
            Coeff::Big(x) => Coeff::Big(-x.clone()),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Coeff {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Coeff::Small(x) => Coeff::Small(x.recip()),
            Coeff::Big(x) => Coeff::Big(x.recip()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Small(x) => x.is_one(),
            Coeff::Big(x) => x.is_one(),
        }
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Coeff {}
