//! Irreducible representations of `U_q(sl2)` with the extension element `x`.

use crate::error::{Error, Result};
use crate::field::{Field, QParam};
use crate::matrix::Matrix;
use crate::scalars::HalfInt;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The four one-dimensional twists `eps` of `q^H`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::One, Phase::MinusOne, Phase::I, Phase::MinusI];

    pub fn value<F: Field>(self) -> F {
        match self {
            Phase::One => F::one(),
            Phase::MinusOne => -F::one(),
            Phase::I => F::imag(),
            Phase::MinusI => -F::imag(),
        }
    }

    pub fn is_imaginary(self) -> bool {
        matches!(self, Phase::I | Phase::MinusI)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::One => "+1",
            Phase::MinusOne => "-1",
            Phase::I => "+i",
            Phase::MinusI => "-i",
        })
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase> {
        match s.trim() {
            "+1" | "1" => Ok(Phase::One),
            "-1" => Ok(Phase::MinusOne),
            "+i" | "i" => Ok(Phase::I),
            "-i" => Ok(Phase::MinusI),
            other => Err(Error::Parse(format!("unknown phase {other:?}"))),
        }
    }
}

/// `T_l^(eps)` on the basis `|l,m>`, `m = l, l-1, ..., -l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Rep<F> {
    pub l: HalfInt,
    pub eps: Phase,
    pub qh: Matrix<F>,
    pub qh_inv: Matrix<F>,
    pub e: Matrix<F>,
    pub f: Matrix<F>,
    pub x: Matrix<F>,
}

pub fn build_sl2_irrep<F: Field>(l: HalfInt, eps: Phase, q: &QParam<F>) -> Result<Sl2Rep<F>> {
    if l < HalfInt::ZERO {
        return Err(Error::InvalidSpin(l));
    }
    let n = l.multiplicity();
    let ms: Vec<HalfInt> = l.descending().collect();
    let phase: F = eps.value();
    let qh = Matrix::diag(ms.iter().map(|&m| phase.mul_ref(&q.q_pow(m))).collect());
    let phase_inv = phase.inv().expect("phase is a unit");
    let qh_inv = Matrix::diag(ms.iter().map(|&m| phase_inv.mul_ref(&q.q_pow(-m))).collect());
    let sign = if eps.is_imaginary() { -F::one() } else { F::one() };
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for (i, &m) in ms.iter().enumerate() {
        if i > 0 {
            e[(i - 1, i)] = q.qint(l - m);
        }
        if i + 1 < n {
            f[(i + 1, i)] = sign.mul_ref(&q.qint(l + m));
        }
    }
    // x = q^-l for the real phases and i q^-l for the imaginary ones,
    // the branch compatible with the Casimir sign of each family.
    let xv = if eps.is_imaginary() { F::imag().mul_ref(&q.q_pow(-l)) } else { q.q_pow(-l) };
    let x = Matrix::scalar(n, xv);
    Ok(Sl2Rep { l, eps, qh, qh_inv, e, f, x })
}

impl<F: Field> Sl2Rep<F> {
    pub fn dim(&self) -> usize {
        self.qh.rows()
    }

    /// `c = e f + (q^-1 qH^2 + q qH^-2) / (q - q^-1)^2`.
    pub fn casimir_matrix(&self, q: &QParam<F>) -> Matrix<F> {
        casimir_from(&self.qh, &self.qh_inv, &self.e, &self.f, q)
    }

    /// Residuals of `qH e = q e qH`, `qH f = q^-1 f qH`,
    /// `e f - f e = (qH^2 - qH^-2)/(q - q^-1)`.
    pub fn relation_residuals(&self, q: &QParam<F>) -> [Matrix<F>; 3] {
        let (qh, e, f) = (&self.qh, &self.e, &self.f);
        let r1 = qh.mul(e).sub(&e.mul(qh).scale(&q.q()));
        let r2 = qh.mul(f).sub(&f.mul(qh).scale(&q.q_inv()));
        let d = q.q_diff().inv().expect("q - 1/q is invertible");
        let rhs = qh.mul(qh).sub(&self.qh_inv.mul(&self.qh_inv)).scale(&d);
        let r3 = e.mul(f).sub(&f.mul(e)).sub(&rhs);
        [r1, r2, r3]
    }

    /// Residual of `x^4 - q c (q - q^-1)^2 x^2 + q^2`.
    pub fn quartic_residual(&self, q: &QParam<F>) -> Matrix<F> {
        let c = self.casimir_matrix(q);
        x_quartic_residual(&self.x, &c, q)
    }

    /// Residual of `c = (x^2 q^-1 + x^-2 q) / (q - q^-1)^2`.
    pub fn casimir_x_residual(&self, q: &QParam<F>) -> Matrix<F> {
        let xi = x_inverse(self, q);
        let d2 = q.q_diff().mul_ref(&q.q_diff());
        let rhs = self
            .x
            .mul(&self.x)
            .scale(&q.q_inv())
            .add(&xi.mul(&xi).scale(&q.q()))
            .scale(&d2.inv().expect("nonzero"));
        self.casimir_matrix(q).sub(&rhs)
    }
}

pub(crate) fn casimir_from<F: Field>(
    qh: &Matrix<F>,
    qh_inv: &Matrix<F>,
    e: &Matrix<F>,
    f: &Matrix<F>,
    q: &QParam<F>,
) -> Matrix<F> {
    let d = q.q_diff();
    let d2i = d.mul_ref(&d).inv().expect("q - 1/q is invertible");
    let diag = qh.mul(qh).scale(&q.q_inv()).add(&qh_inv.mul(qh_inv).scale(&q.q()));
    e.mul(f).add(&diag.scale(&d2i))
}

/// `q^-1 x^4 - c (q - q^-1)^2 x^2 + q`, multiplied through by `q`.
pub(crate) fn x_quartic_residual<F: Field>(x: &Matrix<F>, c: &Matrix<F>, q: &QParam<F>) -> Matrix<F> {
    let d2 = q.q_diff().mul_ref(&q.q_diff());
    let x2 = x.mul(x);
    let n = x.rows();
    x2.mul(&x2)
        .sub(&c.mul(&x2).scale(&q.q().mul_ref(&d2)))
        .add(&Matrix::scalar(n, q.q().mul_ref(&q.q())))
}

/// The scalar value of the Casimir element.
pub fn casimir_sl2<F: Field>(rep: &Sl2Rep<F>, q: &QParam<F>) -> Result<F> {
    rep.casimir_matrix(q).as_scalar().ok_or(Error::NotScalar)
}

/// `x^-1 = (-x^3 q^-1 + c (q - q^-1)^2 x) q^-1`.
pub fn x_inverse<F: Field>(rep: &Sl2Rep<F>, q: &QParam<F>) -> Matrix<F> {
    let c = rep.casimir_matrix(q);
    let x = &rep.x;
    let d2 = q.q_diff().mul_ref(&q.q_diff());
    let x3 = x.mul(x).mul(x);
    x3.scale(&q.q_inv()).neg().add(&c.mul(x).scale(&d2)).scale(&q.q_inv())
}

/// JSON form of an [`Sl2Rep`].
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Sl2RepJson {
    pub l: HalfInt,
    pub eps: String,
    #[serde(rename = "qH")]
    pub qh: Vec<Vec<String>>,
    pub e: Vec<Vec<String>>,
    pub f: Vec<Vec<String>>,
    pub x: Vec<Vec<String>>,
}

impl<F: Field> Sl2Rep<F> {
    pub fn to_json(&self) -> Sl2RepJson {
        Sl2RepJson {
            l: self.l,
            eps: self.eps.to_string(),
            qh: crate::io::matrix_to_strings(&self.qh),
            e: crate::io::matrix_to_strings(&self.e),
            f: crate::io::matrix_to_strings(&self.f),
            x: crate::io::matrix_to_strings(&self.x),
        }
    }
}
