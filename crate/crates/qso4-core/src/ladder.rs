//! Ladder operators, highest weights and the constructive decomposition of
//! finite-dimensional representations into irreducibles.

use crate::error::{Error, Result};
use crate::field::{Field, QParam};
use crate::irreps::{build_irrep, nonclassical_direct, weight_spaces, IrrepLabel, Sign, Weight};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::HalfInt;
use crate::so4core::{verify_relations, So4Rep};
use std::collections::HashMap;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Classical,
    Nonclassical,
}

impl Variant {
    pub fn of(w: &Weight) -> Variant {
        if w.nonclassical {
            Variant::Nonclassical
        } else {
            Variant::Classical
        }
    }
}

/// Coefficients of `X1..X4` (rows) on `I41, I32, I42, I31` (columns).
pub fn ladder_coefficients<F: Field>(k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> [[F; 4]; 4] {
    let (tk, tl) = (k.twice(), l.twice());
    let s = |e: i64| q.s_pow(e);
    let i = F::imag();
    let one = F::one();
    match variant {
        Variant::Classical => [
            [-one.clone(), s(-2 * tk), -i.mul_ref(&s(-tk - tl + 1)), -i.mul_ref(&s(-tk + tl - 1))],
            [-one.clone(), s(2 * tk), i.mul_ref(&s(tk + tl + 1)), i.mul_ref(&s(tk - tl - 1))],
            [one.clone(), s(-2 * tl), i.mul_ref(&s(-tk - tl + 1)), -i.mul_ref(&s(tk - tl - 1))],
            [one, s(2 * tl), -i.mul_ref(&s(tk + tl + 1)), i.mul_ref(&s(-tk + tl - 1))],
        ],
        Variant::Nonclassical => [
            [one.clone(), s(-2 * tk), -s(-tk - tl + 1), -s(-tk + tl - 1)],
            [one.clone(), s(2 * tk), -s(tk + tl + 1), -s(tk - tl - 1)],
            [-one.clone(), -s(-2 * tl), s(-tk - tl + 1), s(tk - tl - 1)],
            [-one, -s(2 * tl), s(tk + tl + 1), s(-tk + tl - 1)],
        ],
    }
}

fn coefficient_matrix<F: Field>(k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> Matrix<F> {
    let c = ladder_coefficients(k, l, variant, q);
    Matrix::from_rows(c.iter().map(|r| r.to_vec()).collect()).expect("4x4")
}

/// Determinant of the coefficient matrix, computed by elimination.
pub fn ladder_determinant<F: Field>(k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> F {
    linalg::det(&coefficient_matrix(k, l, variant, q))
}

/// `D = (q^(k+l) +- q^(-k-l)) (q^(k-l) +- q^(l-k))`; nonzero for generic `q`.
pub fn determinant_factor<F: Field>(k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> F {
    let f = |a: HalfInt| match variant {
        Variant::Classical => q.q_pow(a) + q.q_pow(-a),
        Variant::Nonclassical => q.q_pow(a) - q.q_pow(-a),
    };
    f(k + l).mul_ref(&f(k - l))
}

/// The determinant of the coefficient matrix in closed form, `-D^2`.
pub fn closed_form_determinant<F: Field>(k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> F {
    let d = determinant_factor(k, l, variant, q);
    -d.mul_ref(&d)
}

/// `X1..X4` at `(k, l)` as full matrices built from `rep`'s generators.
pub fn x_ladder<F: Field>(rep: &So4Rep<F>, k: HalfInt, l: HalfInt, variant: Variant, q: &QParam<F>) -> [Matrix<F>; 4] {
    let d = crate::so4core::derived_generators(rep, q);
    let gens = [&d.i41, &rep.i32, &d.i42, &d.i31];
    let c = ladder_coefficients(k, l, variant, q);
    let n = rep.dim();
    std::array::from_fn(|i| {
        (0..4).fold(Matrix::zeros(n, n), |acc, j| acc.add(&gens[j].scale(&c[i][j])))
    })
}

/// Column-sparse storage for repeated matrix-vector products.
#[derive(Clone, Debug)]
struct Sparse<F> {
    n: usize,
    cols: Vec<Vec<(usize, F)>>,
}

impl<F: Field> Sparse<F> {
    fn from(m: &Matrix<F>) -> Self {
        let mut cols = vec![Vec::new(); m.cols()];
        for (r, c, x) in m.nonzero_entries() {
            cols[c].push((r, x.clone()));
        }
        Sparse { n: m.rows(), cols }
    }

    fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.n];
        for (c, vc) in v.iter().enumerate() {
            if vc.is_zero() {
                continue;
            }
            for (r, x) in &self.cols[c] {
                out[*r] = out[*r].add_ref(&x.mul_ref(vc));
            }
        }
        out
    }
}

/// The generators a ladder operator combines, for a rep whose `I21`, `I43`
/// are diagonal (derived generators are then entrywise rescalings of `I32`).
pub struct Ladder<F: Field> {
    q: QParam<F>,
    /// `I41, I32, I42, I31`.
    gens: [Sparse<F>; 4],
}

impl<F: Field> Ladder<F> {
    pub fn new(rep: &So4Rep<F>, q: &QParam<F>) -> Self {
        let (i41, i32, i42, i31) = if rep.i21.is_diagonal() && rep.i43.is_diagonal() {
            let a = rep.i21.diagonal();
            let b = rep.i43.diagonal();
            let (s, si) = (q.s_pow(1), q.s_pow(-1));
            let n = rep.dim();
            let mut i31 = Matrix::zeros(n, n);
            let mut i42 = Matrix::zeros(n, n);
            let mut i41 = Matrix::zeros(n, n);
            for (r, c, x) in rep.i32.nonzero_entries() {
                let y = s.mul_ref(&a[r]).sub_ref(&si.mul_ref(&a[c])).mul_ref(x);
                let shift = s.mul_ref(&b[c]).sub_ref(&si.mul_ref(&b[r]));
                i42[(r, c)] = shift.mul_ref(x);
                i41[(r, c)] = shift.mul_ref(&y);
                i31[(r, c)] = y;
            }
            (i41, rep.i32.clone(), i42, i31)
        } else {
            let d = crate::so4core::derived_generators(rep, q);
            (d.i41, rep.i32.clone(), d.i42, d.i31)
        };
        Ladder { q: q.clone(), gens: [Sparse::from(&i41), Sparse::from(&i32), Sparse::from(&i42), Sparse::from(&i31)] }
    }

    /// `X_which^(k,l) v` (`which` in 1..=4). `signs` untwists a nonclassical
    /// rep: `I21 -> s21 I21`, `I43 -> s43 I43`.
    pub fn apply(&self, which: usize, k: HalfInt, l: HalfInt, variant: Variant, signs: (i64, i64), v: &[F]) -> Vec<F> {
        let c = &ladder_coefficients(k, l, variant, &self.q)[which - 1];
        let (s1, s2) = signs;
        let tw = [s1 * s2, 1, s2, s1];
        let mut out = vec![F::zero(); v.len()];
        for j in 0..4 {
            let coef = if tw[j] < 0 { -c[j].clone() } else { c[j].clone() };
            for (o, x) in out.iter_mut().zip(self.gens[j].apply(v)) {
                if !x.is_zero() {
                    *o = o.add_ref(&coef.mul_ref(&x));
                }
            }
        }
        out
    }

    /// `X` at the canonical labels of `w`, untwisted by its signs.
    pub fn at(&self, which: usize, w: &Weight, v: &[F]) -> Vec<F> {
        self.apply(which, w.k, w.l, Variant::of(w), (w.s21.value(), w.s43.value()), v)
    }
}

/// Outcome of checking the ladder identities on every weight vector.
#[derive(Clone, Debug, Default)]
pub struct LemmaReport {
    pub vectors: usize,
    pub identities: usize,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks on each weight vector `|k,l>` of `rep`: the shift rules of
/// `X1..X4`, the four commutations `X3 X1 = X1 X3`, `X4 X2 = X2 X4`,
/// `X4 X1 = X1 X4`, `X3 X2 = X2 X3` (upper indices at the intermediate
/// weights) and the four products `X2 X1`, `X1 X2`, `X4 X3`, `X3 X4` against
/// their Casimir polynomials. Nonclassical vectors are checked on the
/// untwisted rep, where `C4` picks up the factor `s21 s43`.
pub fn check_lemmas<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<LemmaReport> {
    let cas = crate::so4core::casimirs(rep, q)?;
    let c4 = cas.c4.as_scalar().ok_or(Error::NotScalar)?;
    let c4p = cas.c4p_short.as_scalar().ok_or(Error::NotScalar)?;
    let ladder = Ladder::new(rep, q);
    let (i21, i43) = (Sparse::from(&rep.i21), Sparse::from(&rep.i43));
    let same = |a: &[F], b: &[F]| a.iter().zip(b).all(|(x, y)| x.approx_eq(y));
    let scaled = |c: &F, v: &[F]| v.iter().map(|x| c.mul_ref(x)).collect::<Vec<F>>();
    let mut report = LemmaReport::default();
    let h = HalfInt::ONE;
    let z = HalfInt::ZERO;
    for space in weight_spaces(rep, q)? {
        let w = space.weight;
        let variant = Variant::of(&w);
        let signs = (w.s21.value(), w.s43.value());
        let sign = F::from_i64(signs.0 * signs.1);
        let x = |i: usize, k: HalfInt, l: HalfInt, v: &[F]| ladder.apply(i, k, l, variant, signs, v);
        let eig = |k: HalfInt, l: HalfInt| -> (F, F) {
            match variant {
                Variant::Classical => (F::imag().mul_ref(&q.qint(k + l)), F::imag().mul_ref(&q.qint(k - l))),
                Variant::Nonclassical => (
                    F::from_i64(signs.0).mul_ref(&q.qplus(k + l)),
                    F::from_i64(signs.1).mul_ref(&q.qplus(k - l)),
                ),
            }
        };
        let (k, l) = (w.k, w.l);
        let c4u = sign.mul_ref(&c4);
        // C'4 -+ (q^a + q^-a) C4 + [2m][2m +- 2]
        let product = |a: HalfInt, minus: bool, m: HalfInt, m2: HalfInt| {
            let t = q.q_sum(a).mul_ref(&c4u);
            let base = if minus { c4p.sub_ref(&t) } else { c4p.add_ref(&t) };
            base.add_ref(&q.qint(m + m).mul_ref(&q.qint(m2 + m2)))
        };
        let k_minus = variant == Variant::Nonclassical;
        for v in &space.vectors {
            report.vectors += 1;
            let mut check = |ok: bool, what: String| {
                report.identities += 1;
                if !ok {
                    report.failures.push(format!("{what} at {w}"));
                }
            };
            let shifts = [(z, h), (z, -h), (h, z), (-h, z)];
            for (i, (dk, dl)) in shifts.iter().enumerate() {
                let u = x(i + 1, k, l, v);
                let (a, b) = eig(k + *dk, l + *dl);
                check(same(&i21.apply(&u), &scaled(&a, &u)), format!("shift rule of X{} for I21", i + 1));
                check(same(&i43.apply(&u), &scaled(&b, &u)), format!("shift rule of X{} for I43", i + 1));
            }
            let commutations = [
                (3, (k, l + h), 1, 1, (k + h, l), 3),
                (4, (k, l - h), 2, 2, (k - h, l), 4),
                (4, (k, l + h), 1, 1, (k - h, l), 4),
                (3, (k, l - h), 2, 2, (k + h, l), 3),
            ];
            for (a, (ka, la), b, c, (kc, lc), d) in commutations {
                let lhs = x(a, ka, la, &x(b, k, l, v));
                let rhs = x(c, kc, lc, &x(d, k, l, v));
                check(same(&lhs, &rhs), format!("X{a} X{b} = X{c} X{d}"));
            }
            let products = [
                (2, (k, l + h), 1, product(l + l + h, true, l, l + h)),
                (1, (k, l - h), 2, product(l + l - h, true, l, l - h)),
                (4, (k + h, l), 3, product(k + k + h, k_minus, k, k + h)),
                (3, (k - h, l), 4, product(k + k - h, k_minus, k, k - h)),
            ];
            for (a, (ka, la), b, c) in products {
                let lhs = x(a, ka, la, &x(b, k, l, v));
                check(same(&lhs, &scaled(&c, v)), format!("X{a} X{b} Casimir product"));
            }
        }
    }
    Ok(report)
}

/// `C4` and `C'4` on the irreducible with the given label.
pub fn hw_casimir_eigenvalues<F: Field>(label: &IrrepLabel, q: &QParam<F>) -> (F, F) {
    let one = HalfInt::ONE;
    let (j, jp) = label.spins();
    let tail = q.qint(j + j).mul_ref(&q.qint(j + j + one + one));
    let lead = q.q_sum(j + j + one);
    match label {
        IrrepLabel::Classical { .. } => {
            let c4 = q.qint(j + jp + one).mul_ref(&q.qint(jp - j));
            let c4p = lead.mul_ref(&q.qint(j - jp)).mul_ref(&q.qint(j + jp + one)).sub_ref(&tail);
            (c4, c4p)
        }
        IrrepLabel::Nonclassical { eps, .. } => {
            let prod = q.qplus(j + jp + one).mul_ref(&q.qplus(j - jp));
            let c4 = F::from_i64(eps[0].value() * eps[1].value()).mul_ref(&prod);
            (c4, lead.mul_ref(&prod).sub_ref(&tail))
        }
    }
}

/// Actions of `I32, I31, I42, I41` on `|k,l>` recovered from the four
/// vectors `X_i^(k,l) |k,l>`.
pub fn solve_generator_action<F: Field>(
    k: HalfInt,
    l: HalfInt,
    variant: Variant,
    x_images: &[Vec<F>; 4],
    q: &QParam<F>,
) -> Result<[Vec<F>; 4]> {
    let inv = linalg::inverse(&coefficient_matrix(k, l, variant, q)).ok_or(Error::SingularSystem { k, l })?;
    let n = x_images[0].len();
    // unknowns in coefficient-column order I41, I32, I42, I31
    let y: Vec<Vec<F>> = (0..4)
        .map(|j| {
            let mut out = vec![F::zero(); n];
            for (i, xi) in x_images.iter().enumerate() {
                let c = &inv[(j, i)];
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(xi) {
                    *o = o.add_ref(&c.mul_ref(x));
                }
            }
            out
        })
        .collect();
    Ok([y[1].clone(), y[3].clone(), y[2].clone(), y[0].clone()])
}

/// A highest weight vector in the coordinates of the given rep.
#[derive(Clone, Debug)]
pub struct HighestWeight<F> {
    pub weight: Weight,
    pub vector: Vec<F>,
}

/// A representation together with its weight-basis form.
struct WeightFrame<F: Field> {
    /// Columns: weight vectors in the original coordinates.
    basis: Option<Matrix<F>>,
    weights: Vec<Weight>,
    index: HashMap<Weight, Vec<usize>>,
    /// `X1..X4` with each column taken at the weight of its basis vector.
    xs: [Sparse<F>; 4],
    i32: Sparse<F>,
}

impl<F: Field> WeightFrame<F> {
    fn new(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Self> {
        let spaces = weight_spaces(rep, q)?;
        let n = rep.dim();
        let diagonal = rep.i21.is_diagonal() && rep.i43.is_diagonal();
        let mut weights = vec![spaces[0].weight; n];
        let (work, basis) = if diagonal {
            for s in &spaces {
                for v in &s.vectors {
                    let c = v.iter().position(|x| !x.is_zero()).expect("unit vector");
                    weights[c] = s.weight;
                }
            }
            (rep.clone(), None)
        } else {
            let mut cols = Vec::with_capacity(n);
            let mut t = 0;
            for s in &spaces {
                for v in &s.vectors {
                    cols.push(v.clone());
                    weights[t] = s.weight;
                    t += 1;
                }
            }
            let w = Matrix::from_cols(&cols, n);
            let wi = linalg::inverse(&w).ok_or_else(|| Error::NotDiagonalizable("weight vectors are dependent".into()))?;
            (rep.conjugate(&w, &wi, &rep.provenance), Some(w))
        };
        let mut index: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (c, w) in weights.iter().enumerate() {
            index.entry(*w).or_default().push(c);
        }
        // In the weight basis the derived generators rescale I32 entrywise
        // (see `Ladder::new`), so each X_i entry is I32[r, c] times a scalar.
        let a = work.i21.diagonal();
        let b = work.i43.diagonal();
        let (s, si) = (q.s_pow(1), q.s_pow(-1));
        let mut coefs: HashMap<Weight, [[F; 4]; 4]> = HashMap::new();
        let mut xcols: [Vec<Vec<(usize, F)>>; 4] = std::array::from_fn(|_| vec![Vec::new(); n]);
        let mut i32_cols = vec![Vec::new(); n];
        for (r, c, x) in work.i32.nonzero_entries() {
            let w = &weights[c];
            let cf = coefs.entry(*w).or_insert_with(|| {
                let (s1, s2) = (w.s21.value(), w.s43.value());
                let tw = [s1 * s2, 1, s2, s1];
                let raw = ladder_coefficients(w.k, w.l, Variant::of(w), q);
                std::array::from_fn(|i| std::array::from_fn(|j| if tw[j] < 0 { -raw[i][j].clone() } else { raw[i][j].clone() }))
            });
            let y = s.mul_ref(&a[r]).sub_ref(&si.mul_ref(&a[c]));
            let shift = s.mul_ref(&b[c]).sub_ref(&si.mul_ref(&b[r]));
            // I41, I32, I42, I31 factors
            let f = [shift.mul_ref(&y), F::one(), shift, y];
            for (i, col) in xcols.iter_mut().enumerate() {
                let mut t = F::zero();
                for (cij, fj) in cf[i].iter().zip(&f) {
                    if !cij.is_zero() && !fj.is_zero() {
                        t = t.add_ref(&cij.mul_ref(fj));
                    }
                }
                if !t.is_zero() {
                    col[c].push((r, t.mul_ref(x)));
                }
            }
            i32_cols[c].push((r, x.clone()));
        }
        let xs = xcols.map(|cols| Sparse { n, cols });
        let i32 = Sparse { n, cols: i32_cols };
        Ok(WeightFrame { basis, weights, index, xs, i32 })
    }

    /// `X_which v` for `v` inside a single weight space.
    fn x(&self, which: usize, v: &[F]) -> Vec<F> {
        self.xs[which - 1].apply(v)
    }

    /// `X_which v` rescaled to a unit first nonzero entry, which keeps long
    /// ladder strings from compounding their coefficients.
    fn x_unit(&self, which: usize, v: &[F]) -> Vec<F> {
        normalized(self.x(which, v))
    }

    fn n(&self) -> usize {
        self.weights.len()
    }

    fn unit(&self, c: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.n()];
        v[c] = F::one();
        v
    }

    fn to_original(&self, v: &[F]) -> Vec<F> {
        match &self.basis {
            Some(w) => w.mul_vec(v),
            None => v.to_vec(),
        }
    }

    /// Checks `v` lies in the weight space of `w` (zero vectors pass).
    fn in_space(&self, v: &[F], w: &Weight) -> bool {
        v.iter().enumerate().all(|(c, x)| x.is_zero() || self.weights[c] == *w)
    }

    /// Highest weight vectors grouped by weight, heaviest weights first.
    fn highest_weights(&self) -> Vec<(Weight, Vec<Vec<F>>)> {
        let mut ws: Vec<Weight> = self.index.keys().copied().collect();
        ws.sort_by(|a, b| b.cmp(a));
        let mut out = Vec::new();
        for w in ws {
            let cols = &self.index[&w];
            let mut m = Matrix::zeros(2 * self.n(), cols.len());
            for (t, &c) in cols.iter().enumerate() {
                for (which, off) in [(0, 0), (2, self.n())] {
                    for (r, x) in &self.xs[which].cols[c] {
                        m[(off + r, t)] = x.clone();
                    }
                }
            }
            let ns = linalg::null_space(&m);
            if ns.is_empty() {
                continue;
            }
            let vecs = ns
                .into_iter()
                .map(|coef| {
                    let mut v = vec![F::zero(); self.n()];
                    for (t, &c) in cols.iter().enumerate() {
                        v[c] = coef[t].clone();
                    }
                    v
                })
                .collect();
            out.push((w, vecs));
        }
        out
    }

    /// The weight vectors `X2^r X4^t h` spanning the module generated by the
    /// highest weight vector `h` of weight `hw`.
    fn generate(&self, hw: &Weight, h: &[F]) -> Result<Vec<(Weight, Vec<F>)>> {
        let (j, jp) = (hw.k, hw.l);
        let k_min = if hw.nonclassical { HalfInt::HALF } else { -j };
        let mut out = Vec::new();
        let mut top = normalized(h.to_vec());
        let mut k = j;
        loop {
            let mut w = Weight { k, l: jp, ..*hw };
            let mut v = top.clone();
            loop {
                if v.iter().all(|x| x.is_zero()) || !self.in_space(&v, &w) {
                    return Err(Error::NotARepresentation(format!("ladder string from {hw} breaks at {w}")));
                }
                out.push((w, v.clone()));
                if w.l == -jp {
                    break;
                }
                v = self.x_unit(2, &v);
                w = Weight { l: w.l - HalfInt::ONE, ..w };
            }
            if k == k_min {
                break;
            }
            top = self.x_unit(4, &top);
            k = k - HalfInt::ONE;
        }
        Ok(out)
    }
}

/// Highest weight vectors of `rep`, in its own coordinates.
pub fn highest_weights<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Vec<HighestWeight<F>>> {
    let frame = WeightFrame::new(rep, q)?;
    Ok(frame
        .highest_weights()
        .into_iter()
        .flat_map(|(w, vs)| vs.into_iter().map(move |v| (w, v)))
        .map(|(weight, v)| HighestWeight { weight, vector: frame.to_original(&v) })
        .collect())
}

/// One irreducible summand.
#[derive(Clone, Debug)]
pub struct Component<F> {
    pub label: IrrepLabel,
    pub weights: Vec<Weight>,
    /// Columns spanning the summand, in the coordinates of the input rep.
    pub basis: Matrix<F>,
    /// The rep restricted to the summand in that basis.
    pub block: So4Rep<F>,
    /// `S` with `S block(g) = builder(g) S` for the canonical builder of `label`.
    pub intertwiner: Matrix<F>,
}

#[derive(Clone, Debug)]
pub struct DecompositionResult<F> {
    pub components: Vec<Component<F>>,
    /// The concatenated component bases; invertible.
    pub change_of_basis: Matrix<F>,
}

impl<F> DecompositionResult<F> {
    pub fn labels(&self) -> Vec<IrrepLabel> {
        self.components.iter().map(|c| c.label).collect()
    }
}

/// The image of `h` at weight `(1/2, 0)` under the `X4`, then `X2` strings,
/// rescaled as it goes; also returns the accumulated scale.
fn descend_to_base<F: Field>(frame: &WeightFrame<F>, hw: &Weight, h: &[F]) -> (Vec<F>, F) {
    let mut v = h.to_vec();
    let mut scale = F::one();
    let mut w = *hw;
    let mut step = |which: usize, v: &mut Vec<F>| {
        let y = frame.x(which, v);
        if let Some(p) = y.iter().find(|x| !x.is_zero()).and_then(|p| p.inv()) {
            scale = scale.mul_ref(&p);
            *v = y.iter().map(|x| x.mul_ref(&p)).collect();
        } else {
            *v = y;
        }
    };
    while w.k > HalfInt::HALF {
        step(4, &mut v);
        w.k = w.k - HalfInt::ONE;
    }
    while w.l > HalfInt::ZERO {
        step(2, &mut v);
        w.l = w.l - HalfInt::ONE;
    }
    (v, scale)
}

/// The scalar by which `X4^(1/2,0)` acts at the base weight of the untwisted
/// nonclassical irreducible with highest weight `(j, jp)`.
fn reference_ratio<F: Field>(j: HalfInt, jp: HalfInt, eps3: Sign, q: &QParam<F>) -> Result<F> {
    let rep = nonclassical_direct(j, jp, [Sign::Plus, Sign::Plus, eps3], q)?;
    let frame = WeightFrame::new(&rep, q)?;
    let hw = frame.weights[0];
    let (d, _) = descend_to_base(&frame, &hw, &frame.unit(0));
    let r = frame.x(4, &d);
    let c = d.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::NotARepresentation("empty ladder".into()))?;
    r[c].div_ref(&d[c]).ok_or(Error::DivisionByZero)
}

/// Split a nonclassical highest weight space by `eps3`, read off from the
/// action of `X4^(1/2,0)` at the base weight.
fn split_eps3<F: Field>(
    frame: &WeightFrame<F>,
    hw: &Weight,
    hs: &[Vec<F>],
    q: &QParam<F>,
) -> Result<Vec<(Sign, Vec<F>)>> {
    let base = Weight { k: HalfInt::HALF, l: HalfInt::ZERO, ..*hw };
    let rows = frame.index.get(&base).cloned().unwrap_or_default();
    let n = frame.n();
    let mut d = Vec::new();
    let mut r = Vec::new();
    let mut scales = Vec::new();
    for h in hs {
        let (dv, scale) = descend_to_base(frame, hw, h);
        scales.push(scale);
        let rv = frame.x(4, &dv);
        r.push(rows.iter().map(|&c| rv[c].clone()).collect::<Vec<_>>());
        d.push(rows.iter().map(|&c| dv[c].clone()).collect::<Vec<_>>());
    }
    let dm = Matrix::from_cols(&d, rows.len());
    let rm = Matrix::from_cols(&r, rows.len());
    let t = linalg::solve(&dm, &rm).ok_or_else(|| Error::NotARepresentation("reflection is not invariant".into()))?;
    let cands = [
        reference_ratio(hw.k, hw.l, Sign::Plus, q)?,
        reference_ratio(hw.k, hw.l, Sign::Minus, q)?,
    ];
    let mut out = Vec::new();
    for (idx, vecs) in linalg::eigenspaces(&t, &cands) {
        let sign = if idx == 0 { Sign::Plus } else { Sign::Minus };
        for c in vecs {
            let mut v = vec![F::zero(); n];
            // the descended vectors carry their own scales
            for ((coef, h), scale) in c.iter().zip(hs).zip(&scales) {
                if coef.is_zero() {
                    continue;
                }
                let coef = coef.mul_ref(scale);
                for (o, x) in v.iter_mut().zip(h) {
                    *o = o.add_ref(&coef.mul_ref(x));
                }
            }
            out.push((sign, v));
        }
    }
    if out.len() != hs.len() {
        return Err(Error::Unclassifiable(format!("reflection at {hw} has unexpected eigenvalues")));
    }
    Ok(out)
}

/// Weights of a rep with diagonal `I21`, `I43`, per basis vector.
fn diagonal_weights<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Vec<Weight>> {
    let frame = WeightFrame::new(rep, q)?;
    if frame.basis.is_some() {
        return Err(Error::NotDiagonalizable("reference rep is not in a weight basis".into()));
    }
    Ok(frame.weights)
}

/// A diagonal-times-permutation `S` with `S rep(g) = target(g) S`, both reps
/// weight-diagonal with multiplicity-free weights.
pub fn monomial_intertwiner<F: Field>(
    rep: &So4Rep<F>,
    rep_weights: &[Weight],
    target: &So4Rep<F>,
    q: &QParam<F>,
) -> Result<Matrix<F>> {
    let n = rep.dim();
    let fail = |why: &str| Error::Unclassifiable(why.to_string());
    if target.dim() != n {
        return Err(fail("dimension differs from the builder"));
    }
    let tw = diagonal_weights(target, q)?;
    let pos: HashMap<Weight, usize> = tw.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let perm: Vec<usize> = rep_weights
        .iter()
        .map(|w| pos.get(w).copied().ok_or_else(|| fail("weights differ from the builder")))
        .collect::<Result<_>>()?;
    // S e_c = lambda_c e_perm(c); propagate lambda along nonzero I32 entries.
    let mut lambda: Vec<Option<F>> = vec![None; n];
    let mut stack = Vec::new();
    let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (r, c, _) in rep.i32.nonzero_entries() {
        edges[c].push((r, true));
        edges[r].push((c, false));
    }
    for start in 0..n {
        if lambda[start].is_some() {
            continue;
        }
        lambda[start] = Some(F::one());
        stack.push(start);
        while let Some(c) = stack.pop() {
            let lc = lambda[c].clone().unwrap();
            for &(o, forward) in &edges[c] {
                if lambda[o].is_some() {
                    continue;
                }
                // target[p(r), p(c)] lambda_c = lambda_r rep[r, c]
                let (r, cc) = if forward { (o, c) } else { (c, o) };
                let t = &target.i32[(perm[r], perm[cc])];
                let s = &rep.i32[(r, cc)];
                let value = if forward { t.mul_ref(&lc).div_ref(s) } else { s.mul_ref(&lc).div_ref(t) };
                match value {
                    Some(v) if !v.is_zero() => {
                        lambda[o] = Some(v);
                        stack.push(o);
                    }
                    _ => return Err(fail("no intertwiner to the builder")),
                }
            }
        }
    }
    let mut s = Matrix::zeros(n, n);
    for c in 0..n {
        s[(perm[c], c)] = lambda[c].clone().unwrap();
    }
    if perm.iter().collect::<std::collections::HashSet<_>>().len() != n {
        return Err(fail("weights differ from the builder"));
    }
    // S a = b S entrywise: lambda_r a[r, c] = b[p(r), p(c)] lambda_c
    let lam: Vec<F> = lambda.into_iter().map(|x| x.unwrap()).collect();
    let mut inv_perm = vec![0; n];
    for (c, &p) in perm.iter().enumerate() {
        inv_perm[p] = c;
    }
    for (a, b) in [(&rep.i21, &target.i21), (&rep.i32, &target.i32), (&rep.i43, &target.i43)] {
        let mut pairs: Vec<(usize, usize)> = a.nonzero_entries().map(|(r, c, _)| (r, c)).collect();
        pairs.extend(b.nonzero_entries().map(|(r, c, _)| (inv_perm[r], inv_perm[c])));
        pairs.sort_unstable();
        pairs.dedup();
        for (r, c) in pairs {
            if !lam[r].mul_ref(&a[(r, c)]).approx_eq(&b[(perm[r], perm[c])].mul_ref(&lam[c])) {
                return Err(fail("no intertwiner to the builder"));
            }
        }
    }
    Ok(s)
}

/// `v` divided by its first nonzero entry (zero vectors unchanged).
fn normalized<F: Field>(v: Vec<F>) -> Vec<F> {
    match v.iter().find(|x| !x.is_zero()).and_then(|p| p.inv()) {
        Some(p) if !p.is_one() => v.iter().map(|x| if x.is_zero() { F::zero() } else { x.mul_ref(&p) }).collect(),
        _ => v,
    }
}

/// The index of the largest nonzero entry, if any.
fn pivot_entry<F: Field>(v: &[F]) -> Option<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
        .map(|(c, _)| c)
}

/// The rep restricted to the span of the weight vectors `vs` (one per
/// weight). Weight spaces have disjoint supports in the frame, so each
/// weight part of `I32 v` must be a multiple of the summand's vector there.
fn summand_block<F: Field>(frame: &WeightFrame<F>, vs: &[(Weight, Vec<F>)], q: &QParam<F>) -> Result<So4Rep<F>> {
    let d = vs.len();
    let at: HashMap<Weight, usize> = vs.iter().enumerate().map(|(t, (w, _))| (*w, t)).collect();
    if at.len() != d {
        return Err(Error::NotARepresentation("repeated weight".into()));
    }
    let mut i32: Matrix<F> = Matrix::zeros(d, d);
    for (t, (_, v)) in vs.iter().enumerate() {
        let y = frame.i32.apply(v);
        let mut seen: Vec<Weight> = Vec::new();
        for (c, x) in y.iter().enumerate() {
            let w = frame.weights[c];
            if x.is_zero() || seen.contains(&w) {
                continue;
            }
            seen.push(w);
            let cols = &frame.index[&w];
            let part: Vec<F> = cols.iter().map(|&r| y[r].clone()).collect();
            let Some(p) = pivot_entry(&part) else {
                continue;
            };
            let not_invariant = || Error::NotARepresentation(format!("not invariant at {w}"));
            let &u = at.get(&w).ok_or_else(not_invariant)?;
            let target: Vec<&F> = cols.iter().map(|&r| &vs[u].1[r]).collect();
            let lambda = part[p].div_ref(target[p]).ok_or_else(not_invariant)?;
            if part.iter().zip(&target).any(|(a, b)| !a.approx_eq(&lambda.mul_ref(b))) {
                return Err(not_invariant());
            }
            i32[(u, t)] = lambda;
        }
    }
    let weights: Vec<Weight> = vs.iter().map(|(w, _)| *w).collect();
    let (e21, e43): (Vec<F>, Vec<F>) = weights.iter().map(|w| w.eigenvalues(q)).unzip();
    Ok(So4Rep::new(Matrix::diag(e21), i32, Matrix::diag(e43), "summand")?
        .with_basis(weights.iter().map(|w| (w.k, w.l)).collect()))
}

/// Complete reduction into irreducible summands, each classified and certified.
pub fn decompose<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<DecompositionResult<F>> {
    // A successful result is itself a certificate that `rep` is a
    // representation (every summand is checked against a builder), so the
    // relations are only evaluated to explain a failure.
    decompose_unchecked(rep, q).map_err(|e| {
        let report = verify_relations(rep, false, q);
        match report.first_failure() {
            Some(name) => Error::NotARepresentation(format!("relation {name} fails")),
            None => e,
        }
    })
}

fn decompose_unchecked<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<DecompositionResult<F>> {
    if rep.dim() == 0 {
        return Ok(DecompositionResult { components: vec![], change_of_basis: Matrix::zeros(0, 0) });
    }
    let frame = WeightFrame::new(rep, q)?;
    let n = frame.n();

    // (label, weights, vectors) per summand, in work coordinates
    let mut parts: Vec<(IrrepLabel, Vec<(Weight, Vec<F>)>)> = Vec::new();
    for (hw, hs) in frame.highest_weights() {
        if hw.nonclassical {
            for (e3, h) in split_eps3(&frame, &hw, &hs, q)? {
                let label = IrrepLabel::nonclassical(hw.k, hw.l, [hw.s21, hw.s43, e3])?;
                parts.push((label, frame.generate(&hw, &h)?));
            }
        } else {
            if hw.k < HalfInt::ZERO || hw.l < HalfInt::ZERO {
                return Err(Error::Unclassifiable(format!("highest weight {hw}")));
            }
            let label = IrrepLabel::classical(hw.k, hw.l)?;
            for h in hs {
                parts.push((label, frame.generate(&hw, &h)?));
            }
        }
    }

    // the summands must fill each weight space independently
    let mut slots: HashMap<Weight, Vec<&Vec<F>>> = HashMap::new();
    for (_, vs) in &parts {
        for (w, v) in vs {
            slots.entry(*w).or_default().push(v);
        }
    }
    for (w, cols) in &frame.index {
        let vecs = slots.get(w).map_or(&[][..], |s| s.as_slice());
        if vecs.len() != cols.len() {
            return Err(Error::NotARepresentation(format!(
                "weight {w}: summands supply {} of {} vectors",
                vecs.len(),
                cols.len()
            )));
        }
        if vecs.len() > 1 {
            let m = Matrix::from_cols(
                &vecs.iter().map(|v| cols.iter().map(|&c| v[c].clone()).collect()).collect::<Vec<_>>(),
                cols.len(),
            );
            if linalg::rank(&m) != cols.len() {
                return Err(Error::NotARepresentation(format!("summands overlap at {w}")));
            }
        }
    }

    let mut components = Vec::with_capacity(parts.len());
    let mut all_cols = Vec::with_capacity(n);
    for (label, vs) in &parts {
        let block = summand_block(&frame, vs, q)
            .map_err(|e| match e {
                Error::NotARepresentation(why) => Error::NotARepresentation(format!("summand {label}: {why}")),
                e => e,
            })?;
        let weights: Vec<Weight> = vs.iter().map(|(w, _)| *w).collect();
        let target = build_irrep(label, q)?;
        let intertwiner = monomial_intertwiner(&block, &weights, &target, q)?;
        let cols: Vec<Vec<F>> = vs.iter().map(|(_, v)| frame.to_original(v)).collect();
        all_cols.extend(cols.iter().cloned());
        components.push(Component {
            label: *label,
            weights,
            basis: Matrix::from_cols(&cols, n),
            block: block.with_label(*label),
            intertwiner,
        });
    }
    let change_of_basis = Matrix::from_cols(&all_cols, n);
    Ok(DecompositionResult { components, change_of_basis })
}

/// The label of an irreducible rep, with its certificate.
pub fn classify_with_certificate<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Component<F>> {
    let mut d = decompose(rep, q)?;
    if d.components.len() != 1 {
        let labels: Vec<String> = d.labels().iter().map(|l| l.to_string()).collect();
        return Err(Error::Unclassifiable(format!("reducible: {}", labels.join(" + "))));
    }
    Ok(d.components.pop().unwrap())
}

pub fn classify_irrep<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<IrrepLabel> {
    classify_with_certificate(rep, q).map(|c| c.label)
}

/// Lengths `(m, n)` of the `X4` and `X2` strings from the highest weight of
/// a classical irreducible (the vector count until the ladder vanishes).
pub fn string_lengths<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<(usize, usize)> {
    let frame = WeightFrame::new(rep, q)?;
    let hws = frame.highest_weights();
    let [(hw, hs)] = hws.as_slice() else {
        return Err(Error::Unclassifiable(format!("{} highest weights", hws.len())));
    };
    if hs.len() != 1 || hw.nonclassical {
        return Err(Error::Unclassifiable("expected one classical highest weight".into()));
    }
    let count = |which: usize| {
        let mut v = hs[0].clone();
        let mut len = 0;
        while v.iter().any(|x| !x.is_zero()) && len <= frame.n() {
            len += 1;
            v = frame.x(which, &v);
        }
        len
    };
    Ok((count(4), count(2)))
}
