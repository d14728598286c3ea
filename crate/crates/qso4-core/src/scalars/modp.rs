//! Arithmetic in `F_p[i] = F_{p^2}` for primes `p = 3 mod 4`, used to find
//! polynomial gcds by reduction.

use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct Modulus {
    pub p: u64,
}

impl Modulus {
    pub fn zero(&self) -> Fp2 {
        Fp2 { a: 0, b: 0 }
    }

    // Residues are below 2^31, so the sums of products below stay under 2^64.

    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        let red = |v: u64| if v >= self.p { v - self.p } else { v };
        Fp2 { a: red(x.a + y.a), b: red(x.b + y.b) }
    }

    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        let red = |v: u64| if v >= self.p { v - self.p } else { v };
        Fp2 { a: red(x.a + self.p - y.a), b: red(x.b + self.p - y.b) }
    }

    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let pp = self.p * self.p;
        Fp2 { a: (x.a * y.a + pp - x.b * y.b) % self.p, b: (x.a * y.b + x.b * y.a) % self.p }
    }

    /// `z - x * y`.
    fn mul_sub(&self, z: Fp2, x: Fp2, y: Fp2) -> Fp2 {
        let pp = self.p * self.p;
        Fp2 {
            a: (z.a + x.b * y.b + pp - x.a * y.a) % self.p,
            b: (z.b + 2 * pp - x.a * y.b - x.b * y.a) % self.p,
        }
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Fp2) -> Fp2 {
        let p = self.p;
        let n = (x.a * x.a % p + x.b * x.b % p) % p;
        let ni = self.pow(n, p - 2);
        Fp2 { a: x.a * ni % p, b: (p - x.b) % p * ni % p }
    }

    pub fn inv_u64(&self, x: u64) -> u64 {
        self.pow(x, self.p - 2)
    }

    pub fn is_zero(x: Fp2) -> bool {
        x.a == 0 && x.b == 0
    }

    /// Monic gcd of two polynomials (low degree first, no trailing zeros).
    pub fn poly_gcd(&self, a: Vec<Fp2>, b: Vec<Fp2>) -> Vec<Fp2> {
        let (mut a, mut b) = (a, b);
        trim(&mut a);
        trim(&mut b);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            self.rem_in_place(&mut a, &b);
            std::mem::swap(&mut a, &mut b);
        }
        if let Some(&lc) = a.last() {
            let li = self.inv(lc);
            for c in a.iter_mut() {
                *c = self.mul(*c, li);
            }
        }
        a
    }

    fn rem_in_place(&self, a: &mut Vec<Fp2>, b: &[Fp2]) {
        let db = b.len() - 1;
        let li = self.inv(b[db]);
        while a.len() > db {
            let top = a.len() - 1;
            let t = self.mul(a[top], li);
            if !Self::is_zero(t) {
                let shift = top - db;
                for (k, &bk) in b.iter().enumerate() {
                    a[shift + k] = self.mul_sub(a[shift + k], t, bk);
                }
            }
            a.pop();
            trim(a);
        }
    }
}

pub fn trim(v: &mut Vec<Fp2>) {
    while let Some(last) = v.last() {
        if Modulus::is_zero(*last) {
            v.pop();
        } else {
            break;
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `p = 3 mod 4` just below `2^31`, largest first.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut p = (1u64 << 31) - 1;
        while out.len() < 256 {
            if p % 4 == 3 && is_prime(p) {
                out.push(p);
            }
            p -= 1;
        }
        out
    })
}
