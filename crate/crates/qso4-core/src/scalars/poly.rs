//! Dense polynomials in `s` over the Gaussian integers.

use super::gauss::GaussInt;
use super::int::Int;
use super::modp::{self, Fp2, Modulus};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use std::cell::RefCell;
use std::collections::HashMap;

/// Coefficients low degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub c: Vec<GaussInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(g: GaussInt) -> Self {
        let mut p = Poly { c: vec![g] };
        p.trim();
        p
    }

    pub fn one() -> Self {
        Poly::constant(GaussInt::one())
    }

    pub fn from_coeffs(c: Vec<GaussInt>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &GaussInt {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    /// Number of vanishing low-order coefficients.
    pub fn low_zeros(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    pub fn drop_low(&mut self, k: usize) {
        self.c.drain(..k);
    }

    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![GaussInt::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = GaussInt::zero();
        let c = (0..n)
            .map(|k| {
                let a = self.c.get(k).unwrap_or(&z);
                let b = o.c.get(k).unwrap_or(&z);
                a.add(b)
            })
            .collect();
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![GaussInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j].add_mul(a, b);
                }
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, g: &GaussInt) -> Poly {
        if g.is_one() {
            return self.clone();
        }
        Poly::from_coeffs(self.c.iter().map(|x| x.mul(g)).collect())
    }

    pub fn mul_i_pow(&self, k: u32) -> Poly {
        if k % 4 == 0 {
            return self.clone();
        }
        Poly { c: self.c.iter().map(|x| x.mul_i_pow(k)).collect() }
    }

    pub fn div_exact_scalar(&self, g: &GaussInt) -> Poly {
        if g.is_one() {
            return self.clone();
        }
        Poly { c: self.c.iter().map(|x| x.div_exact(g)).collect() }
    }

    /// Gcd of all coefficients, in the canonical quadrant.
    pub fn content(&self) -> GaussInt {
        let mut g = GaussInt::zero();
        for x in &self.c {
            if x.is_zero() {
                continue;
            }
            g = if g.is_zero() {
                let k = x.unit_normalizer();
                x.mul_i_pow(k)
            } else {
                g.gcd(x)
            };
            if g.is_unit() {
                return GaussInt::one();
            }
        }
        g
    }

    /// Primitive part with leading coefficient in the canonical quadrant.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let p = self.div_exact_scalar(&self.content());
        let k = p.lc().unit_normalizer();
        p.mul_i_pow(k)
    }

    /// Quotient in `Z[i][s]`, if the division is exact there.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dd = d.degree();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![GaussInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            if !lc.divides(top) {
                return None;
            }
            let t = top.div_exact(lc);
            for (m, dm) in d.c.iter().enumerate() {
                if !dm.is_zero() {
                    r[k + m] = r[k + m].sub(&t.mul(dm));
                }
            }
            q[k] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(q))
    }

    pub fn reduce(&self, m: &Modulus) -> Vec<Fp2> {
        let mut v: Vec<Fp2> = self
            .c
            .iter()
            .map(|x| Fp2 { a: x.re.rem_u64(m.p), b: x.im.rem_u64(m.p) })
            .collect();
        modp::trim(&mut v);
        v
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in self.c.iter().rev() {
            acc = acc * z + Complex64::new(x.re.to_f64(), x.im.to_f64());
        }
        acc
    }

    /// Total coefficient size, used to rank elimination pivots.
    pub fn weight(&self) -> u64 {
        self.c.iter().map(|x| x.re.bits() + x.im.bits() + 1).sum()
    }
}

/// Primitive gcd in `Z[i][s]` of two nonzero polynomials, leading
/// coefficient in the canonical quadrant.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.degree() == 0 || b.degree() == 0 {
        return Poly::one();
    }
    // The same few denominators recur throughout a computation. Entries are
    // keyed by cheap fingerprints and confirmed by comparison.
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    let key = (fa.min(fb), fa.max(fb));
    let hit = GCD_CACHE.with(|c| {
        c.borrow()
            .get(&key)
            .filter(|(x, y, _)| (x == a && y == b) || (x == b && y == a))
            .map(|(_, _, g)| g.clone())
    });
    if let Some(g) = hit {
        return g;
    }
    let g = gcd_uncached(a, b);
    GCD_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= GCD_CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, (a.clone(), b.clone(), g.clone()));
    });
    g
}

const GCD_CACHE_LIMIT: usize = 1 << 12;

thread_local! {
    static GCD_CACHE: RefCell<HashMap<(u64, u64), (Poly, Poly, Poly)>> = RefCell::new(HashMap::new());
}

/// Value modulo a prime at a fixed point, mixed with the length.
fn fingerprint(a: &Poly) -> u64 {
    let m = Modulus { p: modp::primes()[0] };
    let z = Fp2 { a: 1_234_567, b: 7_654_321 };
    let v = a.c.iter().rev().fold(m.zero(), |acc, x| {
        m.add(m.mul(acc, z), Fp2 { a: x.re.rem_u64(m.p), b: x.im.rem_u64(m.p) })
    });
    (v.a << 32 | v.b) ^ (a.c.len() as u64).rotate_left(61)
}

fn gcd_uncached(a: &Poly, b: &Poly) -> Poly {
    let pa = a.primitive();
    let pb = b.primitive();
    if pa == pb {
        return pa;
    }
    // Images modulo primes not dividing either leading coefficient have
    // degree at least that of the true gcd. A lifted candidate of that degree
    // dividing both inputs is therefore the gcd.
    let gamma = pa.lc().gcd(pb.lc());
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<(BigInt, BigInt)> = Vec::new();
    let mut prev: Option<Poly> = None;
    for &p in modp::primes() {
        let m = Modulus { p };
        let la = pa.reduce(&m);
        let lb = pb.reduce(&m);
        if la.len() != pa.c.len() || lb.len() != pb.c.len() {
            continue;
        }
        let g = m.poly_gcd(la, lb);
        let deg = g.len() - 1;
        if deg == 0 {
            return Poly::one();
        }
        if deg > best_deg {
            continue;
        }
        let gm = Fp2 { a: gamma.re.rem_u64(p), b: gamma.im.rem_u64(p) };
        let h: Vec<Fp2> = g.iter().map(|&x| m.mul(x, gm)).collect();
        if deg < best_deg {
            best_deg = deg;
            for (x, y) in [(&pa, &pb), (&pb, &pa)] {
                if deg == y.degree() && x.div_exact(y).is_some() {
                    return y.clone();
                }
            }
            modulus = BigInt::from(p);
            acc = h.iter().map(|x| (BigInt::from(x.a), BigInt::from(x.b))).collect();
            prev = None;
        } else {
            let minv = m.inv_u64((&modulus % p).to_u64().unwrap());
            for (slot, x) in acc.iter_mut().zip(h.iter()) {
                slot.0 = crt(&slot.0, &modulus, x.a, p, minv);
                slot.1 = crt(&slot.1, &modulus, x.b, p, minv);
            }
            modulus *= BigInt::from(p);
        }
        let half = &modulus >> 1;
        let lift = |v: &BigInt| {
            if v > &half {
                Int::from(v - &modulus)
            } else {
                Int::from(v.clone())
            }
        };
        let cand = Poly::from_coeffs(
            acc.iter().map(|(re, im)| GaussInt::new(lift(re), lift(im))).collect(),
        )
        .primitive();
        // Trial division is tried on the first image and then whenever the
        // lift stabilises.
        if prev.is_none() || prev.as_ref() == Some(&cand) {
            if pa.div_exact(&cand).is_some() && pb.div_exact(&cand).is_some() {
                return cand;
            }
        }
        prev = Some(cand);
    }
    panic!("polynomial gcd did not stabilise over the prime table");
}

fn crt(r: &BigInt, modulus: &BigInt, v: u64, p: u64, minv: u64) -> BigInt {
    let rp = r.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let diff = (v + p - rp) % p;
    let t = diff * minv % p;
    let out = r + modulus * BigInt::from(t);
    debug_assert!(!out.is_negative());
    out
}
