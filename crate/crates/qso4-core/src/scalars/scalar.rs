//! Elements of `Q(i)(s)` in canonical form.

use super::gauss::GaussInt;
use super::poly::{self, Poly};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `s^shift * num(s) / den(s)` with `num`, `den` over `Z[i]`.
///
/// Canonical form: `num(0) != 0` (or `num = 0`, `shift = 0`, `den = 1`),
/// `den(0) != 0`, `gcd(num, den) = 1`, the coefficients of `num` and `den`
/// have no common Gaussian factor, and the leading coefficient of `den`
/// lies in the quadrant `re > 0, im >= 0`. Equal values have equal fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussInt::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussInt::i())
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::from_gauss(GaussInt::from_i64(v))
    }

    pub fn from_gauss(g: GaussInt) -> Self {
        if g.is_zero() {
            return Scalar::zero();
        }
        Scalar { shift: 0, num: Poly::constant(g), den: Poly::one() }
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Scalar { shift: k, num: Poly::one(), den: Poly::one() }
    }

    /// Laurent polynomial `sum_k c_k s^(low + k)`.
    pub fn laurent(low: i64, coeffs: Vec<GaussInt>) -> Self {
        Scalar::from_parts(low, Poly::from_coeffs(coeffs), 0, Poly::one())
    }

    /// `s^(ns - ds) * n / d` brought into canonical form.
    pub fn from_parts(ns: i64, n: Poly, ds: i64, d: Poly) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if n.is_zero() {
            return Scalar::zero();
        }
        let (mut n, mut d) = (n, d);
        let nz = n.low_zeros();
        n.drop_low(nz);
        let dz = d.low_zeros();
        d.drop_low(dz);
        let shift = ns - ds + nz as i64 - dz as i64;
        if !d.is_one() {
            let g = poly::gcd(&n, &d);
            if !g.is_one() {
                n = n.div_exact(&g).expect("gcd divides numerator");
                d = d.div_exact(&g).expect("gcd divides denominator");
            }
        }
        Scalar::finish(shift, n, d)
    }

    /// Content and unit normalisation; `gcd(n, d) = 1` is already known.
    fn finish(shift: i64, mut n: Poly, mut d: Poly) -> Self {
        if n.is_zero() {
            return Scalar::zero();
        }
        if !d.is_one() {
            let cd = d.content();
            if !cd.is_one() {
                let c = cd.gcd(&n.content());
                if !c.is_one() {
                    n = n.div_exact_scalar(&c);
                    d = d.div_exact_scalar(&c);
                }
            }
            let k = d.lc().unit_normalizer();
            if k != 0 {
                n = n.mul_i_pow(k);
                d = d.mul_i_pow(k);
            }
        }
        let nz = n.low_zeros();
        n.drop_low(nz);
        Scalar { shift: shift + nz as i64, num: n, den: d }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Complexity measure for pivot choice (smaller is simpler).
    pub fn weight(&self) -> u64 {
        self.num.weight() + self.den.weight()
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let m = self.shift.min(o.shift);
        let a = self.num.shifted((self.shift - m) as usize);
        let b = o.num.shifted((o.shift - m) as usize);
        if self.den == o.den {
            let n = a.add(&b);
            if n.is_zero() {
                return Scalar::zero();
            }
            if self.den.is_one() {
                return Scalar::finish(m, n, Poly::one());
            }
            let g = poly::gcd(&n, &self.den);
            if g.is_one() {
                return Scalar::finish(m, n, self.den.clone());
            }
            let n = n.div_exact(&g).expect("gcd divides numerator");
            let d = self.den.div_exact(&g).expect("gcd divides denominator");
            return Scalar::finish(m, n, d);
        }
        let g = if self.den.is_one() || o.den.is_one() {
            Poly::one()
        } else {
            poly::gcd(&self.den, &o.den)
        };
        let (da, db) = if g.is_one() {
            (self.den.clone(), o.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                o.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let n = a.mul(&db).add(&b.mul(&da));
        if n.is_zero() {
            return Scalar::zero();
        }
        let mut d = self.den.mul(&db);
        let mut n = n;
        if !g.is_one() {
            let g2 = poly::gcd(&n, &g);
            if !g2.is_one() {
                n = n.div_exact(&g2).expect("gcd divides numerator");
                d = d.div_exact(&g2).expect("gcd divides denominator");
            }
        }
        Scalar::finish(m, n, d)
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        let cross = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_one() || n.degree() == 0 {
                return (n.clone(), d.clone());
            }
            let g = poly::gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (a, db) = cross(&self.num, &o.den);
        let (b, da) = cross(&o.num, &self.den);
        Scalar::finish(self.shift + o.shift, a.mul(&b), da.mul(&db))
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::finish(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|r| self.mul_ref(&r))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut b = base;
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

    /// Value at `s = s0`; `None` when the denominator vanishes there.
    pub fn eval_s(&self, s0: Complex64) -> Option<Complex64> {
        let d = self.den.eval(s0);
        if d.norm() == 0.0 {
            return None;
        }
        Some(self.num.eval(s0) * s0.powi(self.shift as i32) / d)
    }

    /// Exponents and coefficients of the numerator as a Laurent polynomial.
    pub fn numerator_terms(&self) -> impl Iterator<Item = (i64, &GaussInt)> {
        let s = self.shift;
        self.num.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (s + k as i64, c))
    }

    pub fn denominator_terms(&self) -> impl Iterator<Item = (i64, &GaussInt)> {
        self.den.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as i64, c))
    }

    /// Leading denominator coefficient, the normaliser for monic display.
    pub(crate) fn den_lc(&self) -> &GaussInt {
        self.den.lc()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(&self, &o)
            }
        }
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(&self, o)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.sub_ref(b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.div_ref(b).expect("division by zero scalar"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl num_traits::Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl num_traits::One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}
