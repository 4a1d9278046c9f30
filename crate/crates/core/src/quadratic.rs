//! Exact arithmetic in `ℤ[γ]`.
//!
//! For a coprime pair `(α, β)` the dominant root `γ = (α + √D)/2`, `D = α² + 4β`,
//! satisfies `γ² = αγ + β`, so `{x + yγ : x, y ∈ ℤ}` is closed under addition
//! and multiplication. `λ = α − γ`, powers `γ^k = g_k·γ + β·g_{k−1}`, drift
//! values `λ^t(γb − a)` and the density offset `δ` all live in this ring.
//! Signs, floors and ceilings of ring elements are decided exactly with integer
//! square roots, so no comparison depends on a floating-point precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::sequences::Params;

/// The element `x + y·γ` of `ℤ[γ_{α,β}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    alpha: u64,
    beta: u64,
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadInt {
    pub fn new(params: &Params, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadInt {
            alpha: params.alpha(),
            beta: params.beta(),
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn int(params: &Params, x: impl Into<BigInt>) -> Self {
        Self::new(params, x, 0)
    }

    /// `γ` itself.
    pub fn gamma(params: &Params) -> Self {
        Self::new(params, 0, 1)
    }

    /// `λ = α − γ`.
    pub fn lambda(params: &Params) -> Self {
        Self::new(params, params.alpha(), -1)
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            self.alpha == other.alpha && self.beta == other.beta,
            "mixing Z[gamma] elements of ({}, {}) and ({}, {})",
            self.alpha,
            self.beta,
            other.alpha,
            other.beta
        );
    }

    fn with(&self, x: BigInt, y: BigInt) -> Self {
        QuadInt {
            alpha: self.alpha,
            beta: self.beta,
            x,
            y,
        }
    }

    pub fn disc(&self) -> BigInt {
        BigInt::from(self.alpha) * self.alpha + BigInt::from(4u64) * self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        self.with(&self.x * k, &self.y * k)
    }

    /// Image under `γ ↦ λ`.
    pub fn conj(&self) -> Self {
        self.with(&self.x + &self.y * self.alpha, -&self.y)
    }

    /// `(x + yγ)(x + yλ) = x² + αxy − βy²`.
    pub fn norm(&self) -> BigInt {
        &self.x * &self.x + &self.x * &self.y * self.alpha - &self.y * &self.y * self.beta
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.with(BigInt::one(), BigInt::zero());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The value is `(u + v√D)/2` with `u = 2x + αy`, `v = y`.
    fn halves(&self) -> (BigInt, BigInt) {
        (&self.x * 2 + &self.y * self.alpha, self.y.clone())
    }

    /// Exact sign of the real number this element denotes.
    pub fn signum(&self) -> Ordering {
        let (u, v) = self.halves();
        let su = u.sign();
        let sv = v.sign();
        use num_bigint::Sign::*;
        match (su, sv) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            _ => {
                let uu = &u * &u;
                let vvd = &v * &v * self.disc();
                match uu.cmp(&vvd) {
                    Ordering::Greater => {
                        if su == Plus {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    }
                    Ordering::Less => {
                        if sv == Plus {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    }
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// `⌊value / w⌋` for a positive integer `w`.
    pub fn floor_div(&self, w: &BigInt) -> BigInt {
        assert!(w.is_positive(), "floor_div by non-positive {w}");
        let (u, v) = self.halves();
        let den = w * 2;
        let rad = &v * &v * self.disc();
        let r = Roots::sqrt(&rad);
        if !v.is_negative() {
            (u + r).div_floor(&den)
        } else {
            let ceil = if &r * &r == rad { r } else { r + 1 };
            (u - ceil).div_floor(&den)
        }
    }

    pub fn floor(&self) -> BigInt {
        self.floor_div(&BigInt::one())
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// True when the value is a rational integer.
    pub fn is_integral_value(&self) -> bool {
        let f = self.with(self.floor(), BigInt::zero());
        (self - &f).signum() == Ordering::Equal
    }

    /// Nearest `f64`, accurate to a few ulps even when `x` and `yγ` nearly
    /// cancel.
    pub fn to_f64(&self) -> f64 {
        if self.signum() == Ordering::Equal {
            return 0.0;
        }
        let (u, v) = self.halves();
        let prec = 2 * (u.bits() + v.bits()) + 128;
        let root = Roots::sqrt(&(self.disc() << (2 * prec)));
        let scaled = (u << prec) + v * root;
        scaled_to_f64(&scaled, prec + 1)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.same_ring(other);
        (self - other).signum()
    }
}

/// `n / 2^shift` rounded to `f64`.
pub(crate) fn scaled_to_f64(n: &BigInt, shift: u64) -> f64 {
    let bits = n.bits();
    let (mantissa, exp) = if bits > 64 {
        let drop = bits - 64;
        (
            (n >> drop).to_f64().unwrap_or(f64::NAN),
            drop as i64 - shift as i64,
        )
    } else {
        (n.to_f64().unwrap_or(f64::NAN), -(shift as i64))
    };
    ldexp(mantissa, exp)
}

fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}γ", self.x, self.y)
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        self.same_ring(rhs);
        self.with(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        self.same_ring(rhs);
        self.with(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        self.same_ring(rhs);
        let yy = &self.y * &rhs.y;
        let x = &self.x * &rhs.x + &yy * self.beta;
        let y = &self.x * &rhs.y + &self.y * &rhs.x + yy * self.alpha;
        self.with(x, y)
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        self.with(-&self.x, -&self.y)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadInt {
            type Output = QuadInt;
            fn $m(self, rhs: QuadInt) -> QuadInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}
