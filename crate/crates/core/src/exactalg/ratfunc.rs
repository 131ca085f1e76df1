use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, Scalar};
use crate::error::{Error, Result};

/// A rational function `num / den` in lowest terms with a monic denominator.
/// The zero function is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    // Caller guarantees the pair is already reduced with a monic denominator.
    fn from_parts_unchecked(num: Poly, den: Poly) -> Self {
        debug_assert!(den.leading().is_some_and(|c| c.is_one()));
        if num.is_zero() {
            return Self::zero();
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// The independent variable.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `c * x^k` for any integer `k`.
    pub fn monomial(c: Scalar, k: i32) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            Self::normalized(Poly::constant(c), Poly::monomial(Scalar::one(), (-k) as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Sum of numerator and denominator degrees (zero counts as 0).
    pub fn total_degree(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// Numerator and denominator rescaled to integer coefficients with no
    /// common factor, the denominator's leading coefficient positive. Zero
    /// gives `([], [1])`.
    pub fn integer_coeffs(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        use num_integer::Integer;
        let all = self.num.coeffs().iter().chain(self.den.coeffs());
        let lcm = super::common_denominator(all.clone());
        let scaled = |p: &Poly| -> Vec<BigInt> {
            p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        };
        let (mut num, mut den) = (scaled(&self.num), scaled(&self.den));
        let g = num.iter().chain(&den).fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            num.iter_mut().chain(den.iter_mut()).for_each(|c| *c /= &g);
        }
        (num, den)
    }

    /// Inverse of [`RatFunc::integer_coeffs`]; accepts any nonzero
    /// denominator and normalizes.
    pub fn from_integer_coeffs(num: &[BigInt], den: &[BigInt]) -> Result<RatFunc> {
        let lift = |c: &[BigInt]| Poly::from_coeffs(c.iter().cloned().map(Scalar::from_integer).collect());
        RatFunc::new(lift(num), lift(den))
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        Self::from_parts_unchecked(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> RatFunc {
        let mut base = self.clone();
        let mut acc = RatFunc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> RatFunc {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let dn = self.num.derivative();
        let dd = self.den.derivative();
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalized(num, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, k: usize) -> RatFunc {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Antiderivative with zero integration constant, for functions whose
    /// denominator is a power of `x` and whose Laurent expansion has no
    /// `1/x` term (polynomials and sums of `x^-k`, `k >= 2`). Anything else
    /// would need a logarithm or a partial-fraction step and is rejected.
    pub fn antiderivative(&self) -> Result<RatFunc> {
        let non_elementary = || Error::NonElementaryAntiderivative {
            context: format!("{self}"),
        };
        let shift = self.den.degree().unwrap_or(0);
        if self.den != Poly::monomial(Scalar::one(), shift) {
            return Err(non_elementary());
        }
        // self = sum_j c_j x^(j - shift)
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for (j, c) in self.num.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = j as i64 - shift as i64;
            if power == -1 {
                return Err(non_elementary());
            }
            let c = c / Scalar::from_integer(BigInt::from(power + 1));
            if power >= 0 {
                positive.push((c, (power + 1) as usize));
            } else {
                negative.push((c, (-(power + 1)) as usize));
            }
        }
        let mut acc = RatFunc::zero();
        for (c, k) in positive {
            acc = &acc + &Self::from_poly(Poly::monomial(c, k));
        }
        for (c, k) in negative {
            acc = &acc + &Self::monomial(c, -(k as i32));
        }
        Ok(acc)
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Substitution `self(inner(x))`.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        let horner = |p: &Poly| {
            p.coeffs().iter().rev().fold(RatFunc::zero(), |acc, c| {
                &(&acc * inner) + &RatFunc::constant(c.clone())
            })
        };
        horner(&self.num).checked_div(&horner(&self.den))
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Scalar> for RatFunc {
    fn from(c: Scalar) -> Self {
        RatFunc::constant(c)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        let (a, b) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g), rhs.den.div_exact(&g))
        };
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::normalized(num, &self.den * &b)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel so the product is already in lowest terms
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let cancel = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g)
            }
        };
        let num = &cancel(&self.num, &g1) * &cancel(&rhs.num, &g2);
        let den = &cancel(&self.den, &g2) * &cancel(&rhs.den, &g1);
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc::from_parts_unchecked(num, den)
        } else {
            let inv = lc.recip();
            RatFunc::from_parts_unchecked(num.scale(&inv), den.scale(&inv))
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl core::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        iter.fold(RatFunc::zero(), |acc, f| &acc + &f)
    }
}
