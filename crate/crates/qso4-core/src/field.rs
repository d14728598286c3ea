//! The coefficient-field abstraction shared by the exact and numeric backends.

use crate::error::{Error, Result};
use crate::scalars::{self, HalfInt, Scalar};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

/// Relative tolerance of the numeric backend.
pub const NUMERIC_TOL: f64 = 1e-9;

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn imag() -> Self;

    fn inv(&self) -> Option<Self>;

    /// Zero test relative to a magnitude `scale` (ignored when exact).
    fn is_small(&self, scale: f64) -> bool;

    /// Larger is a better elimination pivot.
    fn pivot_score(&self) -> f64;

    /// Rough size for tolerance scaling (1 when exact).
    fn magnitude(&self) -> f64;

    fn parse_text(s: &str) -> Result<Self>;

    /// Numeric shadow at `s = s0` (the identity for the numeric backend).
    fn to_complex(&self, s0: Complex64) -> Option<Complex64>;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn div_ref(&self, o: &Self) -> Option<Self> {
        o.inv().map(|r| self.mul_ref(&r))
    }

    fn approx_eq(&self, o: &Self) -> bool {
        let scale = self.magnitude().max(o.magnitude()).max(1.0);
        self.sub_ref(o).is_small(scale)
    }

    fn negligible(&self) -> bool {
        self.is_small(1.0)
    }

    /// `s^k` for the deformation parameter `s = q^(1/2)`.
    fn s_power(q: &QParam<Self>, k: i64) -> Self {
        let base = if k < 0 { &q.s_inv } else { &q.s };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        acc
    }

    /// `[a]` or `[a]_+`.
    fn q_number(q: &QParam<Self>, a: HalfInt, plus: bool) -> Self {
        let up = Self::s_power(q, a.twice());
        let down = Self::s_power(q, -a.twice());
        let num = if plus { up + down } else { up - down };
        num.div_ref(&q.q_diff()).expect("q - 1/q vanishes")
    }
}

impl Field for Scalar {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Scalar::from_i64(v)
    }

    fn imag() -> Self {
        Scalar::i()
    }

    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }

    fn is_small(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn pivot_score(&self) -> f64 {
        -(self.weight() as f64)
    }

    fn magnitude(&self) -> f64 {
        1.0
    }

    fn parse_text(s: &str) -> Result<Self> {
        scalars::parse(s).map_err(|e| Error::Parse(e.to_string()))
    }

    fn to_complex(&self, s0: Complex64) -> Option<Complex64> {
        self.eval_s(s0)
    }

    fn add_ref(&self, o: &Self) -> Self {
        Scalar::add_ref(self, o)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        Scalar::sub_ref(self, o)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        Scalar::mul_ref(self, o)
    }

    fn div_ref(&self, o: &Self) -> Option<Self> {
        Scalar::div_ref(self, o)
    }

    fn approx_eq(&self, o: &Self) -> bool {
        self == o
    }

    fn s_power(_q: &QParam<Self>, k: i64) -> Self {
        Scalar::s_pow(k)
    }

    fn q_number(_q: &QParam<Self>, a: HalfInt, plus: bool) -> Self {
        if plus {
            scalars::qplus(a)
        } else {
            scalars::qint(a)
        }
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn imag() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.norm() == 0.0 {
            None
        } else {
            Some(self.inv())
        }
    }

    fn is_small(&self, scale: f64) -> bool {
        self.norm() <= NUMERIC_TOL * scale.max(1.0)
    }

    fn pivot_score(&self) -> f64 {
        self.norm()
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn parse_text(s: &str) -> Result<Self> {
        s.trim().parse::<Complex64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }

    fn to_complex(&self, _s0: Complex64) -> Option<Complex64> {
        Some(*self)
    }
}

/// The deformation parameter: `s = q^(1/2)` and its inverse.
#[derive(Clone, Debug)]
pub struct QParam<F> {
    s: F,
    s_inv: F,
}

impl QParam<Scalar> {
    /// `s` as the transcendental indeterminate.
    pub fn generic() -> Self {
        QParam { s: Scalar::s_pow(1), s_inv: Scalar::s_pow(-1) }
    }
}

impl QParam<Complex64> {
    /// `s = sqrt(q0)` (principal branch) after screening `q0^n != 1` for
    /// `1 <= n <= bound`.
    pub fn numeric(q0: Complex64, bound: u32) -> Result<Self> {
        screen_root_of_unity(q0, bound)?;
        let s = q0.sqrt();
        Ok(QParam { s, s_inv: s.inv() })
    }

    /// `s = s0` without any screening.
    pub(crate) fn at_point(s0: Complex64) -> Self {
        QParam { s: s0, s_inv: s0.inv() }
    }
}

pub fn screen_root_of_unity(q0: Complex64, bound: u32) -> Result<()> {
    if q0.norm() == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let one = Complex64::new(1.0, 0.0);
    let mut p = one;
    for n in 1..=bound {
        p *= q0;
        if (p - one).norm() <= NUMERIC_TOL {
            return Err(Error::RootOfUnity { order: n });
        }
    }
    Ok(())
}

impl<F: Field> QParam<F> {
    pub fn s(&self) -> &F {
        &self.s
    }

    pub fn s_pow(&self, k: i64) -> F {
        F::s_power(self, k)
    }

    /// `q^a = s^(2a)`.
    pub fn q_pow(&self, a: HalfInt) -> F {
        F::s_power(self, a.twice())
    }

    pub fn q(&self) -> F {
        self.s_pow(2)
    }

    pub fn q_inv(&self) -> F {
        self.s_pow(-2)
    }

    /// `q - q^-1`.
    pub fn q_diff(&self) -> F {
        self.q() - self.q_inv()
    }

    pub fn qint(&self, a: HalfInt) -> F {
        F::q_number(self, a, false)
    }

    pub fn qplus(&self, a: HalfInt) -> F {
        F::q_number(self, a, true)
    }

    /// `q^a + q^-a`.
    pub fn q_sum(&self, a: HalfInt) -> F {
        self.q_pow(a) + self.q_pow(-a)
    }
}
