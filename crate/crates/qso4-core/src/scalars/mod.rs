//! Exact arithmetic in `Q(i)(s)`, `s = q^(1/2)`.

mod gauss;
mod halfint;
mod int;
mod modp;
mod poly;
mod scalar;
mod text;

pub use gauss::GaussInt;
pub use halfint::{HalfInt, ParseHalfIntError};
pub use int::Int;
pub use poly::Poly;
pub use scalar::Scalar;
pub use text::{parse, ParseScalarError};

use crate::error::{Error, Result};
use crate::field::screen_root_of_unity;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

type Cache = Mutex<HashMap<(bool, i64), Scalar>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn q_number(a: HalfInt, plus: bool) -> Scalar {
    let key = (plus, a.twice());
    if let Some(v) = cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let t = a.twice();
    let sign = if plus { 1 } else { -1 };
    // (s^t +- s^-t) / (s^2 - s^-2) = s^2 (s^2t +- 1) / (s^t (s^4 - 1))
    let mut num = vec![GaussInt::zero(); (2 * t.unsigned_abs() + 1) as usize];
    let (lo, hi) = if t >= 0 { (0, 2 * t as usize) } else { (0, (-2 * t) as usize) };
    if t >= 0 {
        num[hi] = GaussInt::one();
        num[lo] = num[lo].add(&GaussInt::from_i64(sign));
    } else {
        num[hi] = GaussInt::from_i64(sign);
        num[lo] = num[lo].add(&GaussInt::one());
    }
    let den = vec![GaussInt::from_i64(-1), GaussInt::zero(), GaussInt::zero(), GaussInt::zero(), GaussInt::one()];
    let v = Scalar::from_parts(2 - t.abs(), Poly::from_coeffs(num), 0, Poly::from_coeffs(den));
    cache().lock().unwrap().insert(key, v.clone());
    v
}

/// `[a] = (q^a - q^-a) / (q - q^-1)`.
pub fn qint(a: HalfInt) -> Scalar {
    q_number(a, false)
}

/// `[a]_+ = (q^a + q^-a) / (q - q^-1)`.
pub fn qplus(a: HalfInt) -> Scalar {
    q_number(a, true)
}

/// Value at `q = q0`, `s = sqrt(q0)` on the principal branch.
pub fn evaluate(x: &Scalar, q0: Complex64, bound: u32) -> Result<Complex64> {
    screen_root_of_unity(q0, bound)?;
    x.eval_s(q0.sqrt()).ok_or(Error::DivisionByZero)
}
