//! Irreducible representations of classical and nonclassical type.

use crate::error::{Error, Result};
use crate::field::{Field, QParam};
use crate::homtensor::{ext_rep, phi};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalars::HalfInt;
use crate::so4core::So4Rep;
use crate::uqsl2::Phase;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use num_complex::Complex64;
use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn all_triples() -> impl Iterator<Item = [Sign; 3]> {
        (0..8).map(|b| {
            let s = |bit: u32| if b >> bit & 1 == 1 { Sign::Minus } else { Sign::Plus };
            [s(2), s(1), s(0)]
        })
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// An equivalence class of irreducible representations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    Classical { j: HalfInt, jp: HalfInt },
    /// Canonical form: `j >= jp`, exactly one of them half-odd.
    Nonclassical { j: HalfInt, jp: HalfInt, eps: [Sign; 3] },
}

impl IrrepLabel {
    pub fn classical(j: HalfInt, jp: HalfInt) -> Result<Self> {
        for v in [j, jp] {
            if v < HalfInt::ZERO {
                return Err(Error::InvalidSpin(v));
            }
        }
        Ok(IrrepLabel::Classical { j, jp })
    }

    /// Canonical nonclassical label; `j < jp` is swapped with `eps3` flipped.
    pub fn nonclassical(j: HalfInt, jp: HalfInt, eps: [Sign; 3]) -> Result<Self> {
        for v in [j, jp] {
            if v < HalfInt::ZERO {
                return Err(Error::InvalidSpin(v));
            }
        }
        if j.is_integer() == jp.is_integer() {
            return Err(Error::InvalidLabel(format!(
                "nonclassical label needs exactly one half-odd spin, got j={j}, jp={jp}"
            )));
        }
        if j < jp {
            return Ok(IrrepLabel::Nonclassical { j: jp, jp: j, eps: [eps[0], eps[1], eps[2].flip()] });
        }
        Ok(IrrepLabel::Nonclassical { j, jp, eps })
    }

    pub fn spins(&self) -> (HalfInt, HalfInt) {
        match *self {
            IrrepLabel::Classical { j, jp } | IrrepLabel::Nonclassical { j, jp, .. } => (j, jp),
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self, IrrepLabel::Classical { .. })
    }

    pub fn dim(&self) -> usize {
        let (j, jp) = self.spins();
        let d = j.multiplicity() * jp.multiplicity();
        if self.is_classical() {
            d
        } else {
            d / 2
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Classical { j, jp } => write!(f, "classical:j={j},jp={jp}"),
            IrrepLabel::Nonclassical { j, jp, eps } => {
                write!(f, "nonclassical:j={j},jp={jp},eps={},{},{}", eps[0], eps[1], eps[2])
            }
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidLabel(format!("{s:?}: {why}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing kind"))?;
        let (mut j, mut jp, mut eps) = (None, None, None);
        // eps carries commas itself, so take it from the tail first.
        let (head, eps_text) = match rest.find("eps=") {
            Some(p) => (&rest[..p], Some(&rest[p + 4..])),
            None => (rest, None),
        };
        for part in head.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v: HalfInt = val.trim().parse().map_err(|_| bad("bad spin"))?;
            match key.trim() {
                "j" => j = Some(v),
                "jp" => jp = Some(v),
                _ => return Err(bad("unknown key")),
            }
        }
        if let Some(t) = eps_text {
            let signs: Vec<Sign> = t
                .split(',')
                .map(|x| match x.trim() {
                    "+" | "+1" => Ok(Sign::Plus),
                    "-" | "-1" => Ok(Sign::Minus),
                    _ => Err(bad("bad sign")),
                })
                .collect::<Result<_>>()?;
            if signs.len() != 3 {
                return Err(bad("eps needs three signs"));
            }
            eps = Some([signs[0], signs[1], signs[2]]);
        }
        let (j, jp) = (j.ok_or_else(|| bad("missing j"))?, jp.ok_or_else(|| bad("missing jp"))?);
        match (kind.trim(), eps) {
            ("classical", None) => IrrepLabel::classical(j, jp),
            ("nonclassical", Some(e)) => IrrepLabel::nonclassical(j, jp, e),
            _ => Err(bad("kind and eps do not match")),
        }
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IrrepLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Basis `(k, l)` of `R_{jj'}`: `k` descending, then `l` descending.
pub fn classical_basis(j: HalfInt, jp: HalfInt) -> Vec<(HalfInt, HalfInt)> {
    j.descending().flat_map(|k| jp.descending().map(move |l| (k, l))).collect()
}

/// Basis of the nonclassical module, the axis that stops at 1/2 outermost.
pub fn nonclassical_basis(j: HalfInt, jp: HalfInt) -> Vec<(HalfInt, HalfInt)> {
    if !j.is_integer() {
        j.descending().filter(|k| k.twice() > 0).flat_map(|k| jp.descending().map(move |l| (k, l))).collect()
    } else {
        jp.descending().filter(|l| l.twice() > 0).flat_map(|l| j.descending().map(move |k| (k, l))).collect()
    }
}

fn index_of(basis: &[(HalfInt, HalfInt)], w: (HalfInt, HalfInt)) -> Option<usize> {
    basis.iter().position(|&b| b == w)
}

/// `R_{jj'}` from the explicit matrix elements.
pub fn classical_irrep<F: Field>(j: HalfInt, jp: HalfInt, q: &QParam<F>) -> Result<So4Rep<F>> {
    let label = IrrepLabel::classical(j, jp)?;
    let basis = classical_basis(j, jp);
    let n = basis.len();
    let i = F::imag();
    let mut i21 = Matrix::zeros(n, n);
    let mut i43 = Matrix::zeros(n, n);
    let mut i32 = Matrix::zeros(n, n);
    for (c, &(k, l)) in basis.iter().enumerate() {
        i21[(c, c)] = i.mul_ref(&q.qint(k + l));
        i43[(c, c)] = i.mul_ref(&q.qint(k - l));
        let pre = q.q_sum(k + l).mul_ref(&q.q_sum(k - l)).inv().expect("generic q");
        let terms = [
            ((k, l + HalfInt::ONE), -q.q_sum(j - l).mul_ref(&q.qint(jp - l))),
            ((k, l - HalfInt::ONE), q.q_sum(j + l).mul_ref(&q.qint(jp + l))),
            ((k + HalfInt::ONE, l), q.q_sum(jp - k).mul_ref(&q.qint(j - k))),
            ((k - HalfInt::ONE, l), -q.q_sum(jp + k).mul_ref(&q.qint(j + k))),
        ];
        for (w, coef) in terms {
            if let Some(r) = index_of(&basis, w) {
                i32[(r, c)] = pre.mul_ref(&coef);
            }
        }
    }
    Ok(So4Rep::new(i21, i32, i43, "classical builder")?.with_basis(basis).with_label(label))
}

/// The nonclassical module from the closed-form matrix elements, for any
/// admissible `(j, jp)` (not necessarily canonical) and signs.
pub fn nonclassical_direct<F: Field>(j: HalfInt, jp: HalfInt, eps: [Sign; 3], q: &QParam<F>) -> Result<So4Rep<F>> {
    if j.is_integer() == jp.is_integer() || j < HalfInt::ZERO || jp < HalfInt::ZERO {
        return Err(Error::InvalidLabel(format!("j={j}, jp={jp}")));
    }
    let basis = nonclassical_basis(j, jp);
    let n = basis.len();
    let i = F::imag();
    let half = HalfInt::HALF;
    let one = HalfInt::ONE;
    let e3 = F::from_i64(eps[2].value());
    let case_a = !j.is_integer();
    let mut i21 = Matrix::zeros(n, n);
    let mut i43 = Matrix::zeros(n, n);
    let mut i32: Matrix<F> = Matrix::zeros(n, n);
    for (c, &(k, l)) in basis.iter().enumerate() {
        i21[(c, c)] = q.qplus(k + l);
        i43[(c, c)] = q.qplus(k - l);
        let pre = q.qint(k + l).mul_ref(&q.qint(k - l)).mul_ref(&q.q_diff()).inv().expect("generic q");
        let mut terms = vec![
            ((k, l + one), -i.mul_ref(&q.qint(jp - l).mul_ref(&q.qint(j - l)))),
            ((k + one, l), -i.mul_ref(&q.qint(jp - k).mul_ref(&q.qint(j - k)))),
        ];
        let boundary = q.qint(j + half).mul_ref(&q.qint(jp + half));
        if case_a && k == half {
            let sign = F::from_i64(l.parity_sign());
            terms.push(((half, -l), e3.mul_ref(&sign).mul_ref(&boundary)));
        } else {
            terms.push(((k - one, l), i.mul_ref(&q.qint(jp + k).mul_ref(&q.qint(j + k)))));
        }
        if !case_a && l == half {
            let sign = F::from_i64(k.parity_sign());
            terms.push(((-k, half), e3.mul_ref(&sign).mul_ref(&boundary)));
        } else {
            terms.push(((k, l - one), i.mul_ref(&q.qint(jp + l).mul_ref(&q.qint(j + l)))));
        }
        for (w, coef) in terms {
            if let Some(r) = index_of(&basis, w) {
                let v = pre.mul_ref(&coef);
                i32[(r, c)] = i32[(r, c)].add_ref(&v);
            }
        }
    }
    let rep = So4Rep::new(i21, i32, i43, "nonclassical closed form")?.with_basis(basis);
    Ok(rep.twisted(eps[0].value(), eps[1].value()))
}

/// The `eps3 = +` and `eps3 = -` blocks of `(T_j^(-i) (x) T_jp^(1)) o phi`,
/// untwisted (`eps1 = eps2 = +`).
pub fn nonclassical_pullback_blocks<F: Field>(j: HalfInt, jp: HalfInt, q: &QParam<F>) -> Result<[So4Rep<F>; 2]> {
    if j.is_integer() == jp.is_integer() {
        return Err(Error::InvalidLabel(format!("j={j}, jp={jp}")));
    }
    let full = phi(&ext_rep(j, jp, Phase::MinusI, Phase::One, q)?, q)?;
    let pb = classical_basis(j, jp);
    let half_basis = nonclassical_basis(j, jp);
    let n = pb.len();
    let i = F::imag();
    let mut out = Vec::with_capacity(2);
    for e3 in [1i64, -1] {
        // b_{k,l} = |k,l> + eps3 J|k,l>,  J|k,l> = i (-1)^(k+l-1/2) |-k,-l>
        let mut cols = Vec::with_capacity(half_basis.len());
        for &(k, l) in &half_basis {
            let mut v = vec![F::zero(); n];
            v[index_of(&pb, (k, l)).unwrap()] = F::one();
            let sign = (k + l - HalfInt::HALF).parity_sign() * e3;
            v[index_of(&pb, (-k, -l)).unwrap()] = i.mul_ref(&F::from_i64(sign));
            cols.push(v);
        }
        let b = Matrix::from_cols(&cols, n);
        let rows: Vec<usize> = half_basis.iter().map(|&w| index_of(&pb, w).unwrap()).collect();
        let all: Vec<usize> = (0..n).collect();
        let project = |m: &Matrix<F>| -> Result<Matrix<F>> {
            let mb = m.mul(&b);
            let block = mb.select(&rows, &(0..half_basis.len()).collect::<Vec<_>>());
            if !b.mul(&block).approx_eq(&mb.select(&all, &(0..half_basis.len()).collect::<Vec<_>>())) {
                return Err(Error::NotARepresentation("pullback block is not invariant".into()));
            }
            Ok(block)
        };
        let rep = So4Rep::new(project(&full.i21)?, project(&full.i32)?, project(&full.i43)?, "nonclassical pullback")?
            .with_basis(half_basis.clone());
        out.push(rep);
    }
    let minus = out.pop().unwrap();
    let plus = out.pop().unwrap();
    Ok([plus, minus])
}

/// `R^(eps1,eps2,eps3)_{jj'}` through the pullback route.
pub fn nonclassical_irrep<F: Field>(label: &IrrepLabel, q: &QParam<F>) -> Result<So4Rep<F>> {
    let IrrepLabel::Nonclassical { j, jp, eps } = *label else {
        return Err(Error::InvalidLabel(format!("{label} is not nonclassical")));
    };
    let canonical = IrrepLabel::nonclassical(j, jp, eps)?;
    if canonical != *label {
        return Err(Error::InvalidLabel(format!("{label} is not canonical (expected {canonical})")));
    }
    let [plus, minus] = nonclassical_pullback_blocks(j, jp, q)?;
    let base = if eps[2] == Sign::Plus { plus } else { minus };
    let mut rep = base.twisted(eps[0].value(), eps[1].value());
    rep.provenance = "nonclassical builder".into();
    Ok(rep.with_label(*label))
}

/// All eight sign variants of one `(j, jp)` from a single pullback.
pub fn nonclassical_family<F: Field>(j: HalfInt, jp: HalfInt, q: &QParam<F>) -> Result<Vec<So4Rep<F>>> {
    let [plus, minus] = nonclassical_pullback_blocks(j, jp, q)?;
    Sign::all_triples()
        .map(|eps| {
            let label = IrrepLabel::nonclassical(j, jp, eps)?;
            let base = if eps[2] == Sign::Plus { &plus } else { &minus };
            let mut rep = base.twisted(eps[0].value(), eps[1].value());
            rep.provenance = "nonclassical builder".into();
            Ok(rep.with_label(label))
        })
        .collect()
}

/// The builder for any label.
pub fn build_irrep<F: Field>(label: &IrrepLabel, q: &QParam<F>) -> Result<So4Rep<F>> {
    match *label {
        IrrepLabel::Classical { j, jp } => classical_irrep(j, jp, q),
        IrrepLabel::Nonclassical { .. } => nonclassical_irrep(label, q),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightType {
    Classical,
    Nonclassical,
}

/// A weight: `(I21, I43)` eigenvalues `(i[k+l], i[k-l])` (classical) or
/// `(s21 [k+l]_+, s43 [k-l]_+)` (nonclassical). Nonclassical weights are
/// labelled with `k` half-odd and positive, which fixes `(k, l)` uniquely.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub k: HalfInt,
    pub l: HalfInt,
    pub s21: Sign,
    pub s43: Sign,
    pub nonclassical: bool,
}

impl Weight {
    pub fn classical(k: HalfInt, l: HalfInt) -> Self {
        Weight { k, l, s21: Sign::Plus, s43: Sign::Plus, nonclassical: false }
    }

    pub fn kind(&self) -> WeightType {
        if self.nonclassical {
            WeightType::Nonclassical
        } else {
            WeightType::Classical
        }
    }

    /// Eigenvalues of `I21` and `I43`.
    pub fn eigenvalues<F: Field>(&self, q: &QParam<F>) -> (F, F) {
        let (a, b) = (self.k + self.l, self.k - self.l);
        if self.nonclassical {
            (F::from_i64(self.s21.value()).mul_ref(&q.qplus(a)), F::from_i64(self.s43.value()).mul_ref(&q.qplus(b)))
        } else {
            (F::imag().mul_ref(&q.qint(a)), F::imag().mul_ref(&q.qint(b)))
        }
    }

    /// The weight of the same eigenvalues written as `(k + dk, l + dl)`;
    /// `None` when that point is not an admissible weight.
    pub fn shifted(&self, dk: HalfInt, dl: HalfInt) -> Option<Weight> {
        let (k, l) = (self.k + dk, self.l + dl);
        if !self.nonclassical {
            return Some(Weight::classical(k, l));
        }
        Weight::nonclassical_from(k + l, k - l, self.s21, self.s43)
    }

    /// Nonclassical weight from `k + l = a`, `k - l = b` (signs of `a`, `b`
    /// are irrelevant since `[m]_+` is even).
    pub fn nonclassical_from(a: HalfInt, b: HalfInt, s21: Sign, s43: Sign) -> Option<Weight> {
        let (a, b) = (a.abs(), b.abs());
        if a.is_integer() || b.is_integer() {
            return None;
        }
        let sum = HalfInt::from_twice((a + b).twice() / 2);
        let diff = HalfInt::from_twice((a - b).twice() / 2);
        let (k, l) = if !sum.is_integer() {
            (sum, diff)
        } else if diff.twice() > 0 {
            (diff, sum)
        } else {
            (-diff, -sum)
        };
        Some(Weight { k, l, s21, s43, nonclassical: true })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.nonclassical {
            write!(f, "({}, {}; {}{})", self.k, self.l, self.s21, self.s43)
        } else {
            write!(f, "({}, {})", self.k, self.l)
        }
    }
}

/// One simultaneous eigenspace of `I21` and `I43`.
#[derive(Clone, Debug)]
pub struct WeightSpace<F> {
    pub weight: Weight,
    pub vectors: Vec<Vec<F>>,
}

#[derive(Clone, Debug)]
pub struct WeightTable<F> {
    pub kind: WeightType,
    pub spaces: Vec<WeightSpace<F>>,
}

impl<F> WeightTable<F> {
    pub fn multiplicities(&self) -> Vec<(Weight, usize)> {
        self.spaces.iter().map(|s| (s.weight, s.vectors.len())).collect()
    }
}

#[derive(Clone, Copy)]
enum Match {
    Classical(HalfInt),
    Plus(HalfInt, Sign),
}

impl Match {
    fn value<F: Field>(&self, q: &QParam<F>) -> F {
        match *self {
            Match::Classical(m) => F::imag().mul_ref(&q.qint(m)),
            Match::Plus(m, sign) => F::from_i64(sign.value()).mul_ref(&q.qplus(m)),
        }
    }
}

/// The admissible eigenvalues `i[m]` and `+-[m]_+` with `|m| <= bound`.
/// For exact fields the values are computed on demand, after a numeric
/// comparison at a generic point.
struct EigenTable<F> {
    q: QParam<F>,
    entries: Vec<(Match, Option<Complex64>, OnceCell<F>)>,
}

impl<F: Field> EigenTable<F> {
    fn new(bound: i64, q: &QParam<F>) -> Self {
        let mut matches = Vec::new();
        for t in -2 * bound..=2 * bound {
            matches.push(Match::Classical(HalfInt::from_twice(t)));
        }
        for t in 0..=2 * bound {
            let m = HalfInt::from_twice(t);
            matches.push(Match::Plus(m, Sign::Minus));
            matches.push(Match::Plus(m, Sign::Plus));
        }
        let shadow = QParam::at_point(linalg::screen_point());
        let entries = matches
            .into_iter()
            .map(|m| (m, if F::EXACT { Some(m.value(&shadow)) } else { None }, OnceCell::new()))
            .collect();
        EigenTable { q: q.clone(), entries }
    }

    fn value(&self, i: usize) -> &F {
        let (m, _, cell) = &self.entries[i];
        cell.get_or_init(|| m.value(&self.q))
    }

    fn values(&self) -> Vec<F> {
        (0..self.entries.len()).map(|i| self.value(i).clone()).collect()
    }

    /// Identify `lambda`; exact comparisons are limited to numerically close
    /// candidates whenever `lambda` can be evaluated.
    fn find(&self, lambda: &F) -> Option<Match> {
        let z = if F::EXACT { lambda.to_complex(linalg::screen_point()) } else { None };
        let close = |i: &usize| match (z, self.entries[*i].1) {
            (Some(z), Some(c)) => (c - z).norm() <= 1e-6 * z.norm().max(1.0),
            _ => true,
        };
        (0..self.entries.len()).filter(close).find(|&i| self.value(i).approx_eq(lambda)).map(|i| self.entries[i].0)
    }
}

fn weight_of<F: Field>(a: &F, b: &F, table: &EigenTable<F>) -> Result<Weight> {
    let unrec = |x: &F| Error::UnrecognizedEigenvalue(x.to_string());
    let ma = table.find(a).ok_or_else(|| unrec(a))?;
    let mb = table.find(b).ok_or_else(|| unrec(b))?;
    match (ma, mb) {
        (Match::Classical(x), Match::Classical(y)) => {
            let (t1, t2) = (x.twice() + y.twice(), x.twice() - y.twice());
            if t1 % 2 != 0 {
                return Err(Error::UnrecognizedEigenvalue(format!("k+l={x}, k-l={y} give no weight")));
            }
            Ok(Weight::classical(HalfInt::from_twice(t1 / 2), HalfInt::from_twice(t2 / 2)))
        }
        (Match::Plus(x, s1), Match::Plus(y, s2)) => Weight::nonclassical_from(x, y, s1, s2)
            .ok_or_else(|| Error::UnrecognizedEigenvalue(format!("[{x}]_+, [{y}]_+ give no weight"))),
        _ => Err(Error::MixedTypes),
    }
}

/// Simultaneous eigenspaces of `I21` and `I43`, heaviest weight first,
/// without any check on the weight types.
pub fn weight_spaces<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<Vec<WeightSpace<F>>> {
    let n = rep.dim();
    if !rep.i21.mul(&rep.i43).approx_eq(&rep.i43.mul(&rep.i21)) {
        return Err(Error::NotCommuting);
    }
    let table = EigenTable::new(n as i64 + 1, q);
    let mut spaces: Vec<WeightSpace<F>> = Vec::new();
    let mut push = |w: Weight, v: Vec<F>| match spaces.iter_mut().find(|s| s.weight == w) {
        Some(s) => s.vectors.push(v),
        None => spaces.push(WeightSpace { weight: w, vectors: vec![v] }),
    };
    if rep.i21.is_diagonal() && rep.i43.is_diagonal() {
        for c in 0..n {
            let w = weight_of(&rep.i21[(c, c)], &rep.i43[(c, c)], &table)?;
            let mut v = vec![F::zero(); n];
            v[c] = F::one();
            push(w, v);
        }
    } else {
        for (lambda, vecs) in eigenspaces(&rep.i21, &table) {
            let e = Matrix::from_cols(&vecs, n);
            let a = linalg::solve(&e, &rep.i43.mul(&e)).ok_or(Error::NotCommuting)?;
            for (mu, inner) in eigenspaces(&a, &table) {
                let w = weight_of(&lambda, &mu, &table)?;
                for c in inner {
                    push(w, e.mul_vec(&c));
                }
            }
        }
    }
    let total: usize = spaces.iter().map(|s| s.vectors.len()).sum();
    if total != n {
        return Err(Error::NotDiagonalizable(format!("eigenvectors span {total} of {n} dimensions")));
    }
    spaces.sort_by(|a, b| b.weight.cmp(&a.weight));
    Ok(spaces)
}

/// Simultaneous eigen-decomposition of `I21` and `I43` with the weight type.
pub fn weight_spectrum<F: Field>(rep: &So4Rep<F>, q: &QParam<F>) -> Result<WeightTable<F>> {
    let spaces = weight_spaces(rep, q)?;
    let kind = spaces.first().map_or(WeightType::Classical, |s| s.weight.kind());
    if spaces.iter().any(|s| s.weight.kind() != kind) {
        return Err(Error::MixedTypes);
    }
    Ok(WeightTable { kind, spaces })
}

/// Eigenvalues among `i[m]`, `+-[m]_+` with their eigenvectors.
fn eigenspaces<F: Field>(m: &Matrix<F>, table: &EigenTable<F>) -> Vec<(F, Vec<Vec<F>>)> {
    let cands = table.values();
    linalg::eigenspaces(m, &cands).into_iter().map(|(i, vs)| (cands[i].clone(), vs)).collect()
}
