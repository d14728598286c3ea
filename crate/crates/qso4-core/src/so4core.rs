//! Representations of `U'_q(so4)`: defining relations and Casimir elements.

use crate::error::{Error, Result};
use crate::field::{Field, QParam};
use crate::irreps::IrrepLabel;
use crate::matrix::Matrix;
use crate::scalars::HalfInt;

/// Images of the generators `I21`, `I32`, `I43`.
#[derive(Clone, Debug, PartialEq)]
pub struct So4Rep<F> {
    pub i21: Matrix<F>,
    pub i32: Matrix<F>,
    pub i43: Matrix<F>,
    /// Weight labels `(k, l)` of the basis vectors, when known.
    pub basis: Option<Vec<(HalfInt, HalfInt)>>,
    pub provenance: String,
    pub label: Option<IrrepLabel>,
}

impl<F: Field> So4Rep<F> {
    pub fn new(i21: Matrix<F>, i32: Matrix<F>, i43: Matrix<F>, provenance: &str) -> Result<Self> {
        let n = i21.rows();
        for (name, m) in [("I21", &i21), ("I32", &i32), ("I43", &i43)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
            }
        }
        Ok(So4Rep { i21, i32, i43, basis: None, provenance: provenance.to_string(), label: None })
    }

    pub fn dim(&self) -> usize {
        self.i21.rows()
    }

    pub fn with_basis(mut self, basis: Vec<(HalfInt, HalfInt)>) -> Self {
        assert_eq!(basis.len(), self.dim(), "basis length");
        self.basis = Some(basis);
        self
    }

    pub fn with_label(mut self, label: IrrepLabel) -> Self {
        self.label = Some(label);
        self
    }

    /// `P^-1 R(g) P` for each generator.
    pub fn conjugate(&self, p: &Matrix<F>, p_inv: &Matrix<F>, provenance: &str) -> Self {
        let c = |m: &Matrix<F>| p_inv.mul(m).mul(p);
        So4Rep {
            i21: c(&self.i21),
            i32: c(&self.i32),
            i43: c(&self.i43),
            basis: None,
            provenance: provenance.to_string(),
            label: None,
        }
    }

    /// Block direct sum.
    pub fn direct_sum(parts: &[&So4Rep<F>], provenance: &str) -> Self {
        let b = |f: fn(&So4Rep<F>) -> &Matrix<F>| {
            Matrix::block_diag(&parts.iter().map(|r| f(r)).collect::<Vec<_>>())
        };
        let basis = parts.iter().map(|r| r.basis.clone()).collect::<Option<Vec<_>>>().map(|v| v.concat());
        So4Rep {
            i21: b(|r| &r.i21),
            i32: b(|r| &r.i32),
            i43: b(|r| &r.i43),
            basis,
            provenance: provenance.to_string(),
            label: None,
        }
    }

    /// Generator images twisted by `I21 -> e1 I21`, `I43 -> e2 I43`.
    pub fn twisted(&self, e1: i64, e2: i64) -> Self {
        let mut out = self.clone();
        if e1 < 0 {
            out.i21 = out.i21.neg();
        }
        if e2 < 0 {
            out.i43 = out.i43.neg();
        }
        out
    }
}

/// `[A, B]_q = q^(1/2) AB - q^(-1/2) BA`, or with `inverse` the
/// `q^-1`-commutator `q^(-1/2) AB - q^(1/2) BA`.
pub fn q_comm<F: Field>(a: &Matrix<F>, b: &Matrix<F>, inverse: bool, q: &QParam<F>) -> Result<Matrix<F>> {
    if !a.is_square() || a.rows() != b.rows() || !b.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (l, r) = if inverse { (q.s_pow(-1), q.s_pow(1)) } else { (q.s_pow(1), q.s_pow(-1)) };
    Ok(a.mul(b).scale(&l).sub(&b.mul(a).scale(&r)))
}

fn qc<F: Field>(a: &Matrix<F>, b: &Matrix<F>, q: &QParam<F>) -> Matrix<F> {
    q_comm(a, b, false, q).expect("square matrices of equal size")
}

fn qci<F: Field>(a: &Matrix<F>, b: &Matrix<F>, q: &QParam<F>) -> Matrix<F> {
    q_comm(a, b, true, q).expect("square matrices of equal size")
}

#[derive(Clone, Debug)]
pub struct Derived<F> {
    pub i31: Matrix<F>,
    pub i42: Matrix<F>,
    /// `[I31, I43]_q`.
    pub i41: Matrix<F>,
    /// `[I21, I42]_q`, which must equal `i41`.
    pub i41_alt: Matrix<F>,
    pub i31m: Matrix<F>,
    pub i42m: Matrix<F>,
    /// `[I31^-, I43]_{q^-1}`.
    pub i41m: Matrix<F>,
    pub i41_consistent: bool,
}

pub fn derived_generators<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Derived<F> {
    let (a, b, c) = (&rep.i21, &rep.i32, &rep.i43);
    let i31 = qc(a, b, q);
    let i42 = qc(b, c, q);
    let i41 = qc(&i31, c, q);
    let i41_alt = qc(a, &i42, q);
    let i31m = qci(a, b, q);
    let i42m = qci(b, c, q);
    let i41m = qci(&i31m, c, q);
    let i41_consistent = i41.approx_eq(&i41_alt);
    Derived { i31, i42, i41, i41_alt, i31m, i42m, i41m, i41_consistent }
}

/// Residuals of one numbered relation (several identities for (11)-(15)).
#[derive(Clone, Debug)]
pub struct Relation<F> {
    pub name: String,
    pub residuals: Vec<Matrix<F>>,
}

impl<F: Field> Relation<F> {
    pub fn passes(&self) -> bool {
        self.residuals.iter().all(|m| m.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport<F> {
    pub relations: Vec<Relation<F>>,
    /// Agreement of the two definitions of `I41` (long form only).
    pub i41_consistent: Option<bool>,
}

impl<F: Field> RelationReport<F> {
    pub fn passes(&self) -> bool {
        self.relations.iter().all(|r| r.passes()) && self.i41_consistent != Some(false)
    }

    pub fn short_form_passes(&self) -> bool {
        self.relations.iter().take(5).all(|r| r.passes())
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.relations.iter().find(|r| !r.passes()).map(|r| r.name.as_str())
    }
}

/// `A B^2 - (q + q^-1) B A B + B^2 A + A`.
fn serre<F: Field>(a: &Matrix<F>, b: &Matrix<F>, q: &QParam<F>) -> Matrix<F> {
    let qs = q.q() + q.q_inv();
    let ab = a.mul(b);
    let ba = b.mul(a);
    ab.mul(b).sub(&b.mul(&ab).scale(&qs)).add(&b.mul(&ba)).add(a)
}

pub fn verify_relations<F: Field>(rep: &So4Rep<F>, include_long_form: bool, q: &QParam<F>) -> RelationReport<F> {
    let (i21, i32, i43) = (&rep.i21, &rep.i32, &rep.i43);
    let rel = |name: &str, residuals: Vec<Matrix<F>>| Relation { name: name.to_string(), residuals };
    let mut relations = vec![
        rel("(6)", vec![serre(i21, i32, q)]),
        rel("(7)", vec![serre(i32, i21, q)]),
        rel("(8)", vec![serre(i32, i43, q)]),
        rel("(9)", vec![serre(i43, i32, q)]),
        rel("(10)", vec![i21.mul(i43).sub(&i43.mul(i21))]),
    ];
    let mut i41_consistent = None;
    if include_long_form {
        let d = derived_generators(rep, q);
        let (i31, i42, i41) = (&d.i31, &d.i42, &d.i41);
        let triple = |x: &Matrix<F>, y: &Matrix<F>, z: &Matrix<F>| {
            vec![qc(x, y, q).sub(z), qc(y, z, q).sub(x), qc(z, x, q).sub(y)]
        };
        relations.push(rel("(11)", triple(i21, i32, i31)));
        relations.push(rel("(12)", triple(i32, i43, i42)));
        relations.push(rel("(13)", triple(i31, i43, i41)));
        relations.push(rel("(14)", triple(i21, i42, i41)));
        let comm = |x: &Matrix<F>, y: &Matrix<F>| x.mul(y).sub(&y.mul(x));
        let rhs = i21.mul(i43).sub(&i32.mul(i41)).scale(&q.q_diff());
        relations.push(rel("(15)", vec![comm(i21, i43), comm(i32, i41), comm(i42, i31).sub(&rhs)]));
        i41_consistent = Some(d.i41_consistent);
    }
    RelationReport { relations, i41_consistent }
}

#[derive(Clone, Debug)]
pub struct Casimirs<F> {
    pub c4: Matrix<F>,
    pub c4p_short: Matrix<F>,
    pub c4p_long: Matrix<F>,
}

/// `C4` and both forms of `C'4`; errors when the two forms of `C'4` differ.
pub fn casimirs<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Casimirs<F>> {
    let d = derived_generators(rep, q);
    let (i21, i32, i43) = (&rep.i21, &rep.i32, &rep.i43);
    let (i31, i42, i41) = (&d.i31, &d.i42, &d.i41);
    let (qq, qi) = (q.q(), q.q_inv());
    let c4 = i21.mul(i43).scale(&qi).sub(&i31.mul(i42)).add(&i32.mul(i41).scale(&qq));

    let sq = |m: &Matrix<F>| m.mul(m);
    let c4p_short = sq(i21)
        .scale(&q.s_pow(-4))
        .add(&sq(i32))
        .add(&sq(i43).scale(&q.s_pow(4)))
        .add(&i31.mul(&d.i31m).scale(&qi))
        .add(&i42.mul(&d.i42m).scale(&qq))
        .add(&i41.mul(&d.i41m));

    let dq = q.q_diff();
    let t1 = sq(i42).scale(&q.s_pow(4)).add(&sq(i41)).add(&sq(i32));
    let t2 = sq(i43).add(&sq(i21)).add(&sq(i31)).scale(&q.s_pow(-4));
    let t3 = i31.mul(i32).mul(i21).add(&i31.mul(i41).mul(i43)).scale(&dq.mul_ref(&q.s_pow(-3)));
    let t4 = i32.mul(i42).mul(i43).add(&i41.mul(i42).mul(i21)).scale(&dq.mul_ref(&q.s_pow(1)));
    let t5 = i32.mul(i41).mul(i43).mul(i21).scale(&dq.mul_ref(&dq));
    let c4p_long = t1.add(&t2).sub(&t3).sub(&t4).add(&t5);

    if !c4p_short.approx_eq(&c4p_long) {
        return Err(Error::FormMismatch);
    }
    Ok(Casimirs { c4, c4p_short, c4p_long })
}
