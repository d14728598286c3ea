//! The homomorphism into the extended `U_q(sl2) (x) U_q(sl2)` realised on
//! concrete representations, and tensor products of classical irreps.

use crate::error::{Error, Result};
use crate::field::{Field, QParam};
use crate::irreps::IrrepLabel;
use crate::ladder;
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::HalfInt;
use crate::so4core::So4Rep;
use crate::uqsl2::{build_sl2_irrep, casimir_from, x_inverse, Phase, Sl2Rep};
use rayon::prelude::*;
use std::borrow::Cow;
use std::collections::HashMap;

/// A diagonal denominator `q^j A + q^-j A^-1` together with its inverse.
#[derive(Clone, Debug)]
pub struct Denominator<F> {
    pub name: String,
    pub diagonal: Vec<F>,
    pub inverse: Vec<F>,
}

/// A representation of the extended tensor square on a product space.
#[derive(Clone, Debug)]
pub struct ExtRep<F> {
    pub factors: Option<(Sl2Rep<F>, Sl2Rep<F>)>,
    pub k1: Matrix<F>,
    pub k1_inv: Matrix<F>,
    pub k2: Matrix<F>,
    pub k2_inv: Matrix<F>,
    pub e1: Matrix<F>,
    pub f1: Matrix<F>,
    pub e2: Matrix<F>,
    pub f2: Matrix<F>,
    pub x1: Matrix<F>,
    pub x1_inv: Matrix<F>,
    pub x2: Matrix<F>,
    pub x2_inv: Matrix<F>,
    /// `P(j) = q^j K1 K2 + q^-j (K1 K2)^-1` and `M(j) = q^j K1 K2^-1 + q^-j K1^-1 K2`
    /// for `j = -1, 0, 1`.
    pub denominators: Vec<Denominator<F>>,
}

/// The operator families one `U_q(sl2)` factor contributes.
#[derive(Clone, Debug)]
pub struct Sl2Action<F> {
    pub k: Matrix<F>,
    pub k_inv: Matrix<F>,
    pub e: Matrix<F>,
    pub f: Matrix<F>,
    pub x: Matrix<F>,
    pub x_inv: Matrix<F>,
}

impl<F: Field> Sl2Action<F> {
    /// The action of an irreducible, with `x^-1 = q^-1 (c (q - q^-1)^2 x - q^-1 x^3)`.
    pub fn of(rep: &Sl2Rep<F>, q: &QParam<F>) -> Result<Self> {
        let x_inv = x_inverse(rep, q);
        if !rep.x.mul(&x_inv).approx_eq(&Matrix::identity(rep.dim())) {
            return Err(Error::NotARepresentation("x does not satisfy its quartic equation".into()));
        }
        Ok(Sl2Action {
            k: rep.qh.clone(),
            k_inv: rep.qh_inv.clone(),
            e: rep.e.clone(),
            f: rep.f.clone(),
            x: rep.x.clone(),
            x_inv,
        })
    }

    pub fn casimir(&self, q: &QParam<F>) -> Matrix<F> {
        casimir_from(&self.k, &self.k_inv, &self.e, &self.f, q)
    }

    /// Every operator mapped through `f` (used for `kron` embeddings).
    fn map(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        Sl2Action {
            k: f(&self.k),
            k_inv: f(&self.k_inv),
            e: f(&self.e),
            f: f(&self.f),
            x: f(&self.x),
            x_inv: f(&self.x_inv),
        }
    }
}

fn diag_entries<F: Field>(m: &Matrix<F>, what: &str) -> Result<Vec<F>> {
    if !m.is_diagonal() {
        return Err(Error::NotARepresentation(format!("{what} is not diagonal")));
    }
    Ok(m.diagonal())
}

impl<F: Field> ExtRep<F> {
    /// Assemble from two commuting factor actions already placed on one space.
    pub fn from_actions(a: Sl2Action<F>, b: Sl2Action<F>, q: &QParam<F>) -> Result<Self> {
        let k1 = diag_entries(&a.k, "K1")?;
        let k1i = diag_entries(&a.k_inv, "K1^-1")?;
        let k2 = diag_entries(&b.k, "K2")?;
        let k2i = diag_entries(&b.k_inv, "K2^-1")?;
        let mut denominators = Vec::new();
        for (tag, u, v) in [("P", &k2, &k2i), ("M", &k2i, &k2)] {
            for j in [-1i64, 0, 1] {
                let (qj, qmj) = (q.s_pow(2 * j), q.s_pow(-2 * j));
                let diagonal: Vec<F> = (0..k1.len())
                    .map(|t| qj.mul_ref(&k1[t].mul_ref(&u[t])).add_ref(&qmj.mul_ref(&k1i[t].mul_ref(&v[t]))))
                    .collect();
                let name = format!("{tag}({j})");
                let inverse = diagonal
                    .iter()
                    .map(|d| {
                        if d.negligible() {
                            None
                        } else {
                            d.inv()
                        }
                    })
                    .collect::<Option<Vec<F>>>()
                    .ok_or_else(|| Error::NonInvertibleDenominator(format!("{name} has a zero eigenvalue")))?;
                denominators.push(Denominator { name, diagonal, inverse });
            }
        }
        Ok(ExtRep {
            factors: None,
            k1: a.k,
            k1_inv: a.k_inv,
            k2: b.k,
            k2_inv: b.k_inv,
            e1: a.e,
            f1: a.f,
            e2: b.e,
            f2: b.f,
            x1: a.x,
            x1_inv: a.x_inv,
            x2: b.x,
            x2_inv: b.x_inv,
            denominators,
        })
    }

    pub fn dim(&self) -> usize {
        self.k1.rows()
    }

    fn denominator(&self, name: &str) -> &[F] {
        &self.denominators.iter().find(|d| d.name == name).expect("all denominators are cached").inverse
    }
}

/// `T_l^(eps) (x) T_lp^(epsp)` on `|l,m> (x) |lp,m'>`, `m` descending then `m'`.
pub fn ext_rep<F: Field>(l: HalfInt, lp: HalfInt, eps: Phase, epsp: Phase, q: &QParam<F>) -> Result<ExtRep<F>> {
    if eps.is_imaginary() != epsp.is_imaginary() && (l + lp).is_integer() {
        return Err(Error::NonInvertibleDenominator(format!(
            "phases ({eps}, {epsp}) need l + l' half-odd, got {}",
            l + lp
        )));
    }
    let a = build_sl2_irrep(l, eps, q)?;
    let b = build_sl2_irrep(lp, epsp, q)?;
    let (ia, ib) = (Matrix::identity(a.dim()), Matrix::identity(b.dim()));
    let act1 = Sl2Action::of(&a, q)?.map(|m| m.kron(&ib));
    let act2 = Sl2Action::of(&b, q)?.map(|m| ia.kron(m));
    let mut ext = ExtRep::from_actions(act1, act2, q)?;
    ext.factors = Some((a, b));
    Ok(ext)
}

/// The pullback of an [`ExtRep`] along the homomorphism.
pub fn phi<F: Field>(ext: &ExtRep<F>, q: &QParam<F>) -> Result<So4Rep<F>> {
    let i_over = F::imag().div_ref(&q.q_diff()).ok_or(Error::DivisionByZero)?;
    let k12 = ext.k1.mul(&ext.k2);
    let k12i = ext.k1_inv.mul(&ext.k2_inv);
    let k1k2i = ext.k1.mul(&ext.k2_inv);
    let k1ik2 = ext.k1_inv.mul(&ext.k2);
    let i21 = k12.sub(&k12i).scale(&i_over);
    let i43 = k1k2i.sub(&k1ik2).scale(&i_over);

    let (qq, qi) = (q.q(), q.q_inv());
    let prod = |a: &str, b: &str| -> Vec<F> {
        ext.denominator(a).iter().zip(ext.denominator(b)).map(|(x, y)| x.mul_ref(y)).collect()
    };
    // (x^-1 A q + x B q^-1) (P M)^-1 g
    let term = |xi: &Matrix<F>, a: &Matrix<F>, x: &Matrix<F>, b: &Matrix<F>, den: Vec<F>, g: &Matrix<F>| {
        let pre = xi.mul(a).scale(&qq).add(&x.mul(b).scale(&qi));
        pre.mul(&g.left_diag(&den))
    };
    let t1 = term(&ext.x1_inv, &ext.k2_inv, &ext.x1, &ext.k2, prod("P(-1)", "M(1)"), &ext.e2);
    let t2 = term(&ext.x1_inv, &ext.k2, &ext.x1, &ext.k2_inv, prod("P(1)", "M(-1)"), &ext.f2);
    let t3 = term(&ext.x2_inv, &ext.k1_inv, &ext.x2, &ext.k1, prod("P(-1)", "M(-1)"), &ext.e1);
    let t4 = term(&ext.x2_inv, &ext.k1, &ext.x2, &ext.k1_inv, prod("P(1)", "M(1)"), &ext.f1);
    let i32 = t2.sub(&t1).add(&t3).sub(&t4);

    let mut rep = So4Rep::new(i21, i32, i43, "phi pullback")?;
    if let Some((a, b)) = &ext.factors {
        let basis = a.l.descending().flat_map(|m| b.l.descending().map(move |mp| (m, mp))).collect();
        rep = rep.with_basis(basis);
    }
    Ok(rep)
}

/// The spin-`k` Casimir value `(q^(2k+1) + q^(-2k-1)) / (q - q^-1)^2`.
pub fn spin_casimir<F: Field>(k: HalfInt, q: &QParam<F>) -> F {
    let d2 = q.q_diff().mul_ref(&q.q_diff());
    q.q_sum(k + k + HalfInt::ONE).div_ref(&d2).expect("generic q")
}

/// The solution of `q^-1 x^4 - c (q - q^-1)^2 x^2 + q = 0` equal to `q^-k` on the
/// spin-`k` eigenspace of `c`.
pub fn solve_x_quartic<F: Field>(c: &Matrix<F>, q: &QParam<F>) -> Result<Matrix<F>> {
    let spins: Vec<HalfInt> = (0..c.rows() as i64).map(HalfInt::from_twice).collect();
    x_with_inverse(c, &spins, q).map(|(x, _)| x)
}

/// `x` and `x^-1` on a block whose Casimir eigenvalues come from `spins`.
fn x_with_inverse<F: Field>(c: &Matrix<F>, spins: &[HalfInt], q: &QParam<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let n = c.rows();
    let cands: Vec<F> = spins.iter().map(|&k| spin_casimir(k, q)).collect();
    let mut cols = Vec::with_capacity(n);
    let mut vals = Vec::with_capacity(n);
    for (idx, vs) in linalg::eigenspaces(c, &cands) {
        for v in vs {
            cols.push(v);
            vals.push(spins[idx]);
        }
    }
    if cols.len() != n {
        return Err(Error::UnrecognizedEigenvalue(format!(
            "Casimir eigenvectors span {} of {n} dimensions",
            cols.len()
        )));
    }
    let v = Matrix::from_cols(&cols, n);
    let vi = linalg::inverse(&v).ok_or_else(|| Error::NotDiagonalizable("Casimir eigenbasis".into()))?;
    let conj = |sign: i64| v.mul(&Matrix::diag(vals.iter().map(|&k| q.s_pow(sign * k.twice())).collect())).mul(&vi);
    Ok((conj(-1), conj(1)))
}

/// Ratios `g_(i+1) / g_i` of the diagonal form with `e^T g = g f` on an
/// irreducible (`e` raising, `f` lowering).
fn adjoint_ratios<F: Field>(rep: &Sl2Rep<F>) -> Result<Vec<F>> {
    (0..rep.dim().saturating_sub(1))
        .map(|i| rep.e[(i, i + 1)].div_ref(&rep.f[(i + 1, i)]).ok_or(Error::DivisionByZero))
        .collect()
}

/// Nonzero entries of `m` grouped by column.
fn columns<F: Field>(m: &Matrix<F>) -> Vec<Vec<(usize, F)>> {
    let mut out = vec![Vec::new(); m.cols()];
    for (r, c, x) in m.nonzero_entries() {
        out[c].push((r, x.clone()));
    }
    out
}

fn sparse_apply<F: Field>(cols: &[Vec<(usize, F)>], v: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); v.len()];
    for (c, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (r, a) in &cols[c] {
            out[*r] = out[*r].add_ref(&a.mul_ref(x));
        }
    }
    out
}

/// `T_j (x) T_s` under `K -> K (x) K`, `e -> e (x) K + K^-1 (x) e`, `f -> f (x) K + K^-1 (x) f`.
///
/// Spin-`k` weight vectors come from the kernel of `e` at weight `k`, lowered
/// by `f`. With `g = g_j (x) g_s` one has `e^T g = g f`, so vectors of
/// different spin are `g`-orthogonal and
/// `x = sum q^-k v v^T g / (v^T g v)`.
fn coupled<F: Field>(j: HalfInt, s: HalfInt, q: &QParam<F>) -> Result<Sl2Action<F>> {
    let a = build_sl2_irrep(j, Phase::One, q)?;
    let b = build_sl2_irrep(s, Phase::One, q)?;
    let k = a.qh.kron(&b.qh);
    let k_inv = a.qh_inv.kron(&b.qh_inv);
    let e = a.e.kron(&b.qh).add(&a.qh_inv.kron(&b.e));
    let f = a.f.kron(&b.qh).add(&a.qh_inv.kron(&b.f));
    let n = k.rows();
    let (ra, rb) = (adjoint_ratios(&a)?, adjoint_ratios(&b)?);
    let (na, nb) = (a.dim(), b.dim());
    // g = g_j (x) g_s satisfies e^T g = g f for the coproduct; e only links
    // (ia, ib) to (ia - 1, ib) or (ia, ib - 1), where g changes by one ratio.
    for (r, c, x) in e.nonzero_entries() {
        let ratio = match ((r / nb, r % nb), (c / nb, c % nb)) {
            ((p, t), (u, w)) if p + 1 == u && t == w => &ra[p],
            ((p, t), (u, w)) if p == u && t + 1 == w => &rb[t],
            _ => return Err(Error::NotARepresentation("coproduct e leaves the expected pattern".into())),
        };
        if !x.approx_eq(&ratio.mul_ref(&f[(c, r)])) {
            return Err(Error::NotARepresentation("coproduct is not adjoint for the product form".into()));
        }
    }
    // Basis (ia, ib) sits at depth ia + ib below the top weight j + s.
    let depth = |d: usize| -> Vec<usize> {
        (0..na).filter(|&ia| d >= ia && d - ia < nb).map(|ia| ia * nb + d - ia).collect()
    };
    // Vectors of one weight only meet g on their own depth, where it may be
    // rescaled freely: g is 1 on the first basis vector of each depth.
    let mut g = vec![F::one(); n];
    for d in 0..na + nb - 1 {
        let idx = depth(d);
        for t in 1..idx.len() {
            let (ia, ib) = (idx[t - 1] / nb, idx[t - 1] % nb);
            g[idx[t]] = g[idx[t - 1]].mul_ref(&ra[ia]).div_ref(&rb[ib - 1]).ok_or(Error::DivisionByZero)?;
        }
    }
    let f_cols = columns(&f);
    // x = sum q^{-k} v v^T G / (v^T G v) is S G with S symmetric.
    let mut sym: Matrix<F> = Matrix::zeros(n, n);
    let mut sym_inv: Matrix<F> = Matrix::zeros(n, n);
    let mut found = 0;
    for d in 0..na.min(nb) {
        let spin = j + s - HalfInt::int(d as i64);
        let cols = depth(d);
        let top = if d == 0 { vec![vec![F::one()]] } else { linalg::null_space(&e.select(&depth(d - 1), &cols)) };
        let [hw] = top.as_slice() else {
            return Err(Error::NotDiagonalizable(format!("spin {spin} highest weight space has dimension {}", top.len())));
        };
        let mut v = vec![F::zero(); n];
        for (c, t) in cols.iter().zip(hw) {
            v[*c] = t.clone();
        }
        let (down, up) = (q.s_pow(-spin.twice()), q.s_pow(spin.twice()));
        for _ in 0..=spin.twice() {
            let norm = v.iter().zip(&g).fold(F::zero(), |acc, (p, h)| acc.add_ref(&p.mul_ref(p).mul_ref(h)));
            let ni = norm.inv().ok_or_else(|| Error::NotDiagonalizable("isotropic weight vector".into()))?;
            let (dn, un) = (down.mul_ref(&ni), up.mul_ref(&ni));
            let nz: Vec<usize> = (0..n).filter(|&r| !v[r].is_zero()).collect();
            for (a, &r) in nz.iter().enumerate() {
                let (dr, ur) = (dn.mul_ref(&v[r]), un.mul_ref(&v[r]));
                for &t in &nz[a..] {
                    sym[(r, t)] = sym[(r, t)].add_ref(&dr.mul_ref(&v[t]));
                    sym_inv[(r, t)] = sym_inv[(r, t)].add_ref(&ur.mul_ref(&v[t]));
                }
            }
            found += 1;
            // Each projector is invariant under rescaling its vector.
            v = sparse_apply(&f_cols, &v);
            if let Some(p) = v.iter().find(|t| !t.is_zero()).and_then(|t| t.inv()) {
                v = v.iter().map(|t| t.mul_ref(&p)).collect();
            }
        }
    }
    if found != n {
        return Err(Error::NotDiagonalizable(format!("weight vectors span {found} of {n} dimensions")));
    }
    let mut x: Matrix<F> = Matrix::zeros(n, n);
    let mut x_inv: Matrix<F> = Matrix::zeros(n, n);
    for (r, t, w) in sym.nonzero_entries() {
        let w_inv = &sym_inv[(r, t)];
        x[(r, t)] = w.mul_ref(&g[t]);
        x_inv[(r, t)] = w_inv.mul_ref(&g[t]);
        if r != t {
            x[(t, r)] = w.mul_ref(&g[r]);
            x_inv[(t, r)] = w_inv.mul_ref(&g[r]);
        }
    }
    Ok(Sl2Action { k, k_inv, e, f, x, x_inv })
}

/// The tensor product of two classical irreps and the extension operators used.
#[derive(Clone, Debug)]
pub struct TensorRep<F> {
    pub rep: So4Rep<F>,
    pub factors: [IrrepLabel; 2],
    pub x1: Matrix<F>,
    pub x2: Matrix<F>,
}

/// `R_{jj'} (x) R_{ss'}` on `(H_j (x) H_s) (x) (H_j' (x) H_s')`.
pub fn tensor<F: Field>(a: &IrrepLabel, b: &IrrepLabel, q: &QParam<F>) -> Result<TensorRep<F>> {
    TensorBuilder::new(q.clone()).tensor(a, b)
}

/// Builds tensor products over one field, reusing the coupled `U_q(sl2)`
/// factors `T_j (x) T_s` across calls.
pub struct TensorBuilder<F: Field> {
    q: QParam<F>,
    coupled: HashMap<(HalfInt, HalfInt), Sl2Action<F>>,
}

impl<F: Field> TensorBuilder<F> {
    pub fn new(q: QParam<F>) -> Self {
        TensorBuilder { q, coupled: HashMap::new() }
    }

    /// Computes the coupled factors needed by `pairs`, in parallel.
    pub fn prepare(&mut self, pairs: &[(IrrepLabel, IrrepLabel)]) -> Result<()> {
        let mut keys: Vec<(HalfInt, HalfInt)> = Vec::new();
        for (a, b) in pairs {
            let ((j, jp), (s, sp)) = (a.spins(), b.spins());
            for key in [(j, s), (jp, sp)] {
                if !self.coupled.contains_key(&key) && !keys.contains(&key) {
                    keys.push(key);
                }
            }
        }
        let built: Vec<_> = keys.par_iter().map(|&(j, s)| coupled(j, s, &self.q).map(|act| ((j, s), act))).collect();
        for item in built {
            let (key, act) = item?;
            self.coupled.insert(key, act);
        }
        Ok(())
    }

    fn factor(&self, j: HalfInt, s: HalfInt) -> Result<Cow<'_, Sl2Action<F>>> {
        match self.coupled.get(&(j, s)) {
            Some(act) => Ok(Cow::Borrowed(act)),
            None => Ok(Cow::Owned(coupled(j, s, &self.q)?)),
        }
    }

    pub fn tensor(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<TensorRep<F>> {
        let (IrrepLabel::Classical { j, jp }, IrrepLabel::Classical { j: s, jp: sp }) = (*a, *b) else {
            return Err(Error::InvalidLabel("tensor products are built for classical factors".into()));
        };
        let n2 = jp.multiplicity() * sp.multiplicity();
        let n1 = j.multiplicity() * s.multiplicity();
        let act1 = self.factor(j, s)?.map(|m| m.kron(&Matrix::identity(n2)));
        let act2 = self.factor(jp, sp)?.map(|m| Matrix::identity(n1).kron(m));
        let (x1, x2) = (act1.x.clone(), act2.x.clone());
        let ext = ExtRep::from_actions(act1, act2, &self.q)?;
        let mut rep = phi(&ext, &self.q)?;
        rep.provenance = format!("tensor {a} (x) {b}");
        Ok(TensorRep { rep, factors: [*a, *b], x1, x2 })
    }

    /// Decomposition of `a (x) b` computed by the ladder route and checked
    /// against [`tensor_formula`].
    pub fn decompose(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<Vec<IrrepLabel>> {
        let t = self.tensor(a, b)?;
        let mut got: Vec<IrrepLabel> = ladder::decompose(&t.rep, &self.q)?.components.iter().map(|c| c.label).collect();
        got.sort();
        let expected = tensor_formula(a, b)?;
        if got != expected {
            let show = |v: &[IrrepLabel]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" + ");
            return Err(Error::MismatchAgainstFormula { computed: show(&got), expected: show(&expected) });
        }
        Ok(got)
    }
}

/// `sum_{k=|j-s|}^{j+s} sum_{k'=|j'-s'|}^{j'+s'} R_{kk'}`, sorted.
pub fn tensor_formula(a: &IrrepLabel, b: &IrrepLabel) -> Result<Vec<IrrepLabel>> {
    let (IrrepLabel::Classical { j, jp }, IrrepLabel::Classical { j: s, jp: sp }) = (*a, *b) else {
        return Err(Error::InvalidLabel("tensor products are built for classical factors".into()));
    };
    let range = |x: HalfInt, y: HalfInt| {
        let lo = (x - y).abs();
        (0..=((x + y) - lo).twice() / 2).map(move |t| lo + HalfInt::int(t))
    };
    let mut out = Vec::new();
    for k in range(j, s) {
        for kp in range(jp, sp) {
            out.push(IrrepLabel::classical(k, kp)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Decomposition of `a (x) b` computed by the ladder route and checked
/// against [`tensor_formula`].
pub fn decompose_tensor<F: Field>(a: &IrrepLabel, b: &IrrepLabel, q: &QParam<F>) -> Result<Vec<IrrepLabel>> {
    TensorBuilder::new(q.clone()).decompose(a, b)
}
