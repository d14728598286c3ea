//! Gaussian integers `a + b i`.

use super::int::Int;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: Int,
    pub im: Int,
}

impl GaussInt {
    pub fn new(re: Int, im: Int) -> Self {
        GaussInt { re, im }
    }

    pub fn zero() -> Self {
        GaussInt::new(Int::ZERO, Int::ZERO)
    }

    pub fn one() -> Self {
        GaussInt::new(Int::ONE, Int::ZERO)
    }

    pub fn i() -> Self {
        GaussInt::new(Int::ZERO, Int::ONE)
    }

    pub fn from_i64(v: i64) -> Self {
        GaussInt::new(Int::from(v), Int::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        let (a, b) = (self.re.abs(), self.im.abs());
        (a.is_one() && b.is_zero()) || (a.is_zero() && b.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussInt::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        GaussInt::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt::new(&self.re * &o.re, Int::ZERO);
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        GaussInt::new(re, im)
    }

    /// `self + a*b`, the inner step of polynomial products.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.im.is_zero() && b.im.is_zero() && self.im.is_zero() {
            self.re = &self.re + &(&a.re * &b.re);
            return;
        }
        let p = a.mul(b);
        *self = self.add(&p);
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Int {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => GaussInt::new(-&self.im, self.re.clone()),
            2 => self.neg(),
            _ => GaussInt::new(self.im.clone(), -&self.re),
        }
    }

    /// Exponent `k` with `self * i^k` in the canonical quadrant `re > 0, im >= 0`.
    pub fn unit_normalizer(&self) -> u32 {
        let (r, m) = (self.re.signum(), self.im.signum());
        if r > 0 && m >= 0 {
            0
        } else if r <= 0 && m > 0 {
            3
        } else if r < 0 && m <= 0 {
            2
        } else {
            1
        }
    }

    /// Nearest-integer Euclidean quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let n = d.norm();
        let num = self.mul(&d.conj());
        let round = |x: &Int| {
            // floor((2x + n) / (2n))
            let two = Int::from(2);
            let (q, _) = (&(&two * x) + &n).div_mod_floor(&(&two * &n));
            q
        };
        let q = GaussInt::new(round(&num.re), round(&num.im));
        let r = self.sub(&q.mul(d));
        (q, r)
    }

    /// Quotient when divisibility is known.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            return GaussInt::new(self.re.div_exact(&d.re), self.im.div_exact(&d.re));
        }
        let n = d.norm();
        let num = self.mul(&d.conj());
        GaussInt::new(num.re.div_exact(&n), num.im.div_exact(&n))
    }

    pub fn divides(&self, x: &Self) -> bool {
        if self.im.is_zero() {
            let (_, r1) = x.re.div_mod_floor(&self.re);
            let (_, r2) = x.im.div_mod_floor(&self.re);
            return r1.is_zero() && r2.is_zero();
        }
        x.div_rem(self).1.is_zero()
    }

    /// Greatest common divisor, normalized to the canonical quadrant.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            let g = self.re.gcd(&o.re);
            return GaussInt::new(g, Int::ZERO);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        let k = a.unit_normalizer();
        a.mul_i_pow(k)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.signum() < 0 {
                    write!(f, "({}-{}i)", self.re, self.im.abs())
                } else {
                    write!(f, "({}+{}i)", self.re, self.im)
                }
            }
        }
    }
}
