//! Skew-symmetric matrices of linear forms, Pfaffians, and the tensor flip.
//!
//! A tensor `φ = Σ a^k_{ij} u_k ⊗ (v_i ∧ v_j)` in `U ⊗ Λ²V` is stored either as
//! the `n × n` skew matrix `N` with `N_ij = Σ_k a^k_{ij} y_k`, or as the
//! `n × m` matrix `M` with `M_jk = Σ_i a^k_{ij} x_i`. Indices are 0-based.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ExactMatrix;
use crate::poly::{parse_poly, Alphabet, HomogPoly};

/// Entries a Pfaffian or determinant can be expanded over.
trait RingElem: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl RingElem for Scalar {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl RingElem for HomogPoly {
    fn add(&self, other: &Self) -> Self {
        HomogPoly::add(self, other).expect("homogeneous summands")
    }
    fn mul(&self, other: &Self) -> Self {
        HomogPoly::mul(self, other).expect("same ring")
    }
    fn neg(&self) -> Self {
        HomogPoly::neg(self)
    }
}

/// Pfaffian of the principal submatrix on `set` by first-row expansion,
/// memoized on index subsets. The empty Pfaffian is `one`.
fn pf_subset<T: RingElem>(
    entry: &dyn Fn(usize, usize) -> T,
    set: u32,
    one: &T,
    cache: &mut HashMap<u32, T>,
) -> T {
    if set == 0 {
        return one.clone();
    }
    if let Some(v) = cache.get(&set) {
        return v.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc: Option<T> = None;
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let sub = pf_subset(entry, rest & !(1 << j), one, cache);
        let mut term = entry(first, j).mul(&sub);
        if !sign_positive {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
        sign_positive = !sign_positive;
    }
    let v = acc.expect("even nonempty set");
    cache.insert(set, v.clone());
    v
}

fn full_set(n: usize) -> u32 {
    assert!(n < 32, "order too large for subset memoization");
    ((1u64 << n) - 1) as u32
}

/// Pfaffian of a constant skew-symmetric matrix of even order.
pub fn pfaffian(a: &ExactMatrix) -> Result<Scalar> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Shape("Pfaffian of a non-square matrix".into()));
    }
    for i in 0..n {
        for j in i..n {
            if *a.get(i, j) != -a.get(j, i) {
                return Err(Error::NotSkew(i, j));
            }
        }
    }
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let entry = |i: usize, j: usize| a.get(i, j).clone();
    Ok(pf_subset(
        &entry,
        full_set(n),
        &a.field().one(),
        &mut HashMap::new(),
    ))
}

/// An `n × n` skew-symmetric matrix of linear forms in `y_0..y_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewLinearMatrix {
    n: usize,
    m: usize,
    field: Field,
    entries: Vec<HomogPoly>,
}

impl SkewLinearMatrix {
    /// Validates linearity, the alphabet and skewness.
    pub fn new(field: Field, n: usize, m: usize, entries: Vec<Vec<HomogPoly>>) -> Result<Self> {
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("expected an {n}x{n} matrix")));
        }
        let alphabet = Alphabet::y(m);
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.alphabet() != alphabet {
                    return Err(Error::AlphabetMismatch(
                        alphabet.to_string(),
                        e.alphabet().to_string(),
                    ));
                }
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        e.field().to_string(),
                    ));
                }
                if e.degree() != 1 && !e.is_zero() {
                    return Err(Error::NotLinear(i, j));
                }
            }
        }
        let entries: Vec<HomogPoly> = entries
            .into_iter()
            .flatten()
            .map(|e| {
                if e.degree() == 1 {
                    e
                } else {
                    HomogPoly::zero(field, alphabet, 1)
                }
            })
            .collect();
        for i in 0..n {
            for j in i..n {
                if entries[i * n + j] != entries[j * n + i].neg() {
                    return Err(Error::NotSkew(i, j));
                }
            }
        }
        Ok(SkewLinearMatrix {
            n,
            m,
            field,
            entries,
        })
    }

    /// Builds `N` from coefficients `a[k][i][j]` of `y_k` in `N_ij`.
    pub fn from_tensor(field: Field, n: usize, m: usize, a: &[Vec<Vec<Scalar>>]) -> Result<Self> {
        if a.len() != m {
            return Err(Error::Shape("tensor slice count".into()));
        }
        let alphabet = Alphabet::y(m);
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        HomogPoly::linear(
                            field,
                            alphabet,
                            (0..m).map(|k| a[k][i][j].clone()).collect(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, n, m, entries)
    }

    /// Uniformly random coefficients above the diagonal.
    pub fn random<R: Rng + ?Sized>(field: Field, n: usize, m: usize, rng: &mut R) -> Self {
        let alphabet = Alphabet::y(m);
        let mut entries = vec![HomogPoly::zero(field, alphabet, 1); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = (0..m).map(|_| field.random(rng)).collect();
                let e = HomogPoly::linear(field, alphabet, c).expect("m coefficients");
                entries[j * n + i] = e.neg();
                entries[i * n + j] = e;
            }
        }
        SkewLinearMatrix {
            n,
            m,
            field,
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomogPoly {
        &self.entries[i * self.n + j]
    }

    /// `a^k_{ij}`.
    pub fn coefficient(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.entry(i, j).coeffs()[k]
    }

    pub fn rows(&self) -> Vec<Vec<HomogPoly>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    fn pf_on(&self, set: u32, cache: &mut HashMap<u32, HomogPoly>) -> HomogPoly {
        let one = HomogPoly::constant(self.field.one(), Alphabet::y(self.m));
        let entry = |i: usize, j: usize| self.entry(i, j).clone();
        pf_subset(&entry, set, &one, cache)
    }

    /// Pfaffian, a form of degree `n/2`.
    pub fn pfaffian(&self) -> Result<HomogPoly> {
        if self.n % 2 == 1 {
            return Err(Error::OddOrder(self.n));
        }
        Ok(self.pf_on(full_set(self.n), &mut HashMap::new()))
    }

    /// `Pf_i`, the Pfaffian with row and column `i` deleted.
    pub fn sub_pfaffians(&self) -> Result<Vec<HomogPoly>> {
        if self.n.is_multiple_of(2) {
            return Err(Error::EvenOrder(self.n));
        }
        let full = full_set(self.n);
        let mut cache = HashMap::new();
        Ok((0..self.n)
            .map(|i| self.pf_on(full & !(1 << i), &mut cache))
            .collect())
    }

    /// `s_i = (-1)^i Pf_i`, the signs for which `N s = 0`.
    pub fn signed_sub_pfaffians(&self) -> Result<Vec<HomogPoly>> {
        Ok(self
            .sub_pfaffians()?
            .into_iter()
            .enumerate()
            .map(|(i, p)| if i % 2 == 0 { p } else { p.neg() })
            .collect())
    }

    /// `N v` for a vector of forms of a common degree.
    pub fn apply(&self, v: &[HomogPoly]) -> Result<Vec<HomogPoly>> {
        if v.len() != self.n {
            return Err(Error::Shape("vector length".into()));
        }
        (0..self.n)
            .map(|i| {
                let mut acc: Option<HomogPoly> = None;
                for (j, vj) in v.iter().enumerate() {
                    let t = self.entry(i, j).mul(vj)?;
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.add(&t)?,
                    });
                }
                acc.ok_or_else(|| Error::Shape("empty matrix".into()))
            })
            .collect()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<ExactMatrix> {
        let values = HomogPoly::evaluate_all(&self.entries, point)?;
        ExactMatrix::from_rows(
            self.field,
            values.chunks(self.n).map(<[Scalar]>::to_vec).collect(),
        )
    }

    /// `M_{jk} = Σ_i a^k_{ij} x_i`.
    pub fn flip(&self) -> LinearPencilMatrix {
        let xs = Alphabet::x(self.n);
        let entries = (0..self.n)
            .flat_map(|j| {
                (0..self.m).map(move |k| {
                    let c = (0..self.n)
                        .map(|i| self.coefficient(k, i, j).clone())
                        .collect();
                    HomogPoly::linear(self.field, xs, c).expect("n coefficients")
                })
            })
            .collect();
        LinearPencilMatrix {
            rows: self.n,
            cols: self.m,
            field: self.field,
            entries,
        }
    }

    /// `(A^{-1})^T N A^{-1}` for a constant invertible `A`.
    pub fn congruence_transport(&self, a: &ExactMatrix) -> Result<SkewLinearMatrix> {
        if a.rows() != self.n || a.cols() != self.n {
            return Err(Error::Shape("transport matrix must be n x n".into()));
        }
        let b = a.inverse()?;
        let alphabet = Alphabet::y(self.m);
        let mut out = vec![HomogPoly::zero(self.field, alphabet, 1); self.n * self.n];
        // (B^T N B)_{ij} = Σ_{k,l} B_{ki} N_{kl} B_{lj}.
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = HomogPoly::zero(self.field, alphabet, 1);
                for k in 0..self.n {
                    if b.get(k, i).is_zero() {
                        continue;
                    }
                    for l in 0..self.n {
                        let c = b.get(k, i) * b.get(l, j);
                        if !c.is_zero() {
                            acc = acc.add(&self.entry(k, l).scale(&c))?;
                        }
                    }
                }
                out[i * self.n + j] = acc;
            }
        }
        Ok(SkewLinearMatrix {
            entries: out,
            ..self.clone()
        })
    }
}

/// An `n × m` matrix of linear forms in `x_0..x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPencilMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<HomogPoly>,
}

impl LinearPencilMatrix {
    pub fn new(field: Field, entries: Vec<Vec<HomogPoly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let xs = Alphabet::x(rows);
        let mut flat = Vec::with_capacity(rows * cols);
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape("ragged matrix".into()));
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.alphabet() != xs {
                    return Err(Error::AlphabetMismatch(
                        xs.to_string(),
                        e.alphabet().to_string(),
                    ));
                }
                if e.field() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        e.field().to_string(),
                    ));
                }
                if e.is_zero() {
                    flat.push(HomogPoly::zero(field, xs, 1));
                } else if e.degree() != 1 {
                    return Err(Error::NotLinear(i, j));
                } else {
                    flat.push(e);
                }
            }
        }
        Ok(LinearPencilMatrix {
            rows,
            cols,
            field,
            entries: flat,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, j: usize, k: usize) -> &HomogPoly {
        &self.entries[j * self.cols + k]
    }

    pub fn entry_rows(&self) -> Vec<Vec<HomogPoly>> {
        (0..self.rows)
            .map(|j| (0..self.cols).map(|k| self.entry(j, k).clone()).collect())
            .collect()
    }

    /// Inverse of [`SkewLinearMatrix::flip`]; fails if the tensor is not
    /// alternating in `i, j`.
    pub fn unflip(&self) -> Result<SkewLinearMatrix> {
        let (n, m) = (self.rows, self.cols);
        let a: Vec<Vec<Vec<Scalar>>> = (0..m)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| self.entry(j, k).coeffs()[i].clone())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SkewLinearMatrix::from_tensor(self.field, n, m, &a)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<ExactMatrix> {
        let values = HomogPoly::evaluate_all(&self.entries, point)?;
        ExactMatrix::from_rows(
            self.field,
            values.chunks(self.cols).map(<[Scalar]>::to_vec).collect(),
        )
    }

    /// All `m × m` minors, row subsets in lex order.
    pub fn maximal_minors(&self) -> Vec<HomogPoly> {
        let (n, m) = (self.rows, self.cols);
        let one = HomogPoly::constant(self.field.one(), Alphabet::x(n));
        let mut cache: HashMap<u32, HomogPoly> = HashMap::new();
        row_subsets(n, m)
            .into_iter()
            .map(|rows| {
                let set = rows.iter().fold(0u32, |s, &r| s | (1 << r));
                self.minor(set, &one, &mut cache)
            })
            .collect()
    }

    /// Determinant of the rows in `set` against the first `|set|` columns,
    /// expanded along the last of those columns.
    fn minor(&self, set: u32, one: &HomogPoly, cache: &mut HashMap<u32, HomogPoly>) -> HomogPoly {
        if set == 0 {
            return one.clone();
        }
        if let Some(v) = cache.get(&set) {
            return v.clone();
        }
        let size = set.count_ones() as usize;
        let col = size - 1;
        let mut acc: Option<HomogPoly> = None;
        let mut bits = set;
        let mut pos = 0;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let sub = self.minor(set & !(1 << r), one, cache);
            let mut term = RingElem::mul(self.entry(r, col), &sub);
            // Cofactor sign for (pos, col) within the square submatrix.
            if (pos + col) % 2 == 1 {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => RingElem::add(&a, &term),
            });
            pos += 1;
        }
        let v = acc.expect("nonempty");
        cache.insert(set, v.clone());
        v
    }
}

/// All `k`-subsets of `0..n` in lex order.
pub fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// File format: `{"field": "fp:32003", "n": 5, "m": 3, "entries": [["0", "y0 + y1", ...], ...]}`.
///
/// For a skew matrix `entries` is `n × n` over `y0..`; for a flipped matrix it
/// is `n × m` over `x0..`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn from_skew(n: &SkewLinearMatrix) -> Self {
        MatrixFile {
            field: Some(n.field.to_string()),
            n: n.n,
            m: n.m,
            entries: n
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_pencil(p: &LinearPencilMatrix) -> Self {
        MatrixFile {
            field: Some(p.field.to_string()),
            n: p.rows,
            m: p.cols,
            entries: p
                .entry_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    /// The field named in the file, or `default` when absent.
    pub fn field_or(&self, default: Field) -> Result<Field> {
        match &self.field {
            Some(s) => s.parse(),
            None => Ok(default),
        }
    }

    fn parse_entries(&self, field: Field, alphabet: Alphabet) -> Result<Vec<Vec<HomogPoly>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_poly(field, alphabet, s, Some(1)))
                    .collect()
            })
            .collect()
    }

    pub fn to_skew(&self, field: Field) -> Result<SkewLinearMatrix> {
        let rows = self.parse_entries(field, Alphabet::y(self.m))?;
        SkewLinearMatrix::new(field, self.n, self.m, rows)
    }

    pub fn to_pencil(&self, field: Field) -> Result<LinearPencilMatrix> {
        let rows = self.parse_entries(field, Alphabet::x(self.n))?;
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.m) {
            return Err(Error::Shape(format!(
                "expected an {}x{} matrix",
                self.n, self.m
            )));
        }
        LinearPencilMatrix::new(field, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym(names: &[&str]) -> (Field, Alphabet, Vec<HomogPoly>) {
        let f = Field::Rational;
        let a = Alphabet::y(names.len());
        let v = (0..names.len()).map(|i| HomogPoly::var(f, a, i)).collect();
        (f, a, v)
    }

    #[test]
    fn small_pfaffians() {
        let f = Field::Rational;
        let a = ExactMatrix::from_i64(f, &[&[0, 5], &[-5, 0]]);
        assert_eq!(pfaffian(&a).unwrap(), f.from_i64(5));
        let j = ExactMatrix::from_i64(f, &[&[0, 1], &[-1, 0]]);
        assert_eq!(pfaffian(&j).unwrap(), f.one());
        assert_eq!(pfaffian(&ExactMatrix::zeros(f, 0, 0)).unwrap(), f.one());
        assert_eq!(
            pfaffian(&ExactMatrix::zeros(f, 3, 3)),
            Err(Error::OddOrder(3))
        );
        let bad = ExactMatrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        assert_eq!(pfaffian(&bad), Err(Error::NotSkew(0, 1)));
    }

    #[test]
    fn generic_four_by_four() {
        // Six independent variables a01..a23 in lex order.
        let (f, _, v) = sym(&["a01", "a02", "a03", "a12", "a13", "a23"]);
        let m = SkewLinearMatrix::new(
            f,
            4,
            6,
            vec![
                vec![
                    HomogPoly::zero(f, Alphabet::y(6), 1),
                    v[0].clone(),
                    v[1].clone(),
                    v[2].clone(),
                ],
                vec![
                    v[0].neg(),
                    HomogPoly::zero(f, Alphabet::y(6), 1),
                    v[3].clone(),
                    v[4].clone(),
                ],
                vec![
                    v[1].neg(),
                    v[3].neg(),
                    HomogPoly::zero(f, Alphabet::y(6), 1),
                    v[5].clone(),
                ],
                vec![
                    v[2].neg(),
                    v[4].neg(),
                    v[5].neg(),
                    HomogPoly::zero(f, Alphabet::y(6), 1),
                ],
            ],
        )
        .unwrap();
        let expected = v[0]
            .mul(&v[5])
            .unwrap()
            .sub(&v[1].mul(&v[4]).unwrap())
            .unwrap()
            .add(&v[2].mul(&v[3]).unwrap())
            .unwrap();
        assert_eq!(m.pfaffian().unwrap(), expected);
    }

    #[test]
    fn square_is_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for field in [Field::Rational, Field::fp()] {
            for n in [2, 4, 6, 8] {
                let mut a = ExactMatrix::zeros(field, n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let c = field.random(&mut rng);
                        a.set(j, i, -&c);
                        a.set(i, j, c);
                    }
                }
                let pf = pfaffian(&a).unwrap();
                assert_eq!(&pf * &pf, a.determinant().unwrap());
            }
        }
    }

    #[test]
    fn three_by_three_syzygy() {
        let (f, a, v) = sym(&["p", "q", "r"]);
        let z = HomogPoly::zero(f, a, 1);
        // N01 = p, N02 = q, N12 = r.
        let n = SkewLinearMatrix::new(
            f,
            3,
            3,
            vec![
                vec![z.clone(), v[0].clone(), v[1].clone()],
                vec![v[0].neg(), z.clone(), v[2].clone()],
                vec![v[1].neg(), v[2].neg(), z.clone()],
            ],
        )
        .unwrap();
        assert_eq!(
            n.sub_pfaffians().unwrap(),
            vec![v[2].clone(), v[1].clone(), v[0].clone()]
        );
        let s = n.signed_sub_pfaffians().unwrap();
        assert_eq!(s, vec![v[2].clone(), v[1].neg(), v[0].clone()]);
        assert!(n.apply(&s).unwrap().iter().all(HomogPoly::is_zero));
    }

    #[test]
    fn random_syzygies_and_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = SkewLinearMatrix::random(Field::fp(), 7, 3, &mut rng);
        let s = n.signed_sub_pfaffians().unwrap();
        assert!(s.iter().all(|p| p.degree() == 3));
        assert!(n.apply(&s).unwrap().iter().all(HomogPoly::is_zero));
        let span =
            crate::poly::GradedSlice::from_polys(Field::fp(), Alphabet::y(3), 3, &s).unwrap();
        assert_eq!(span.dim(), 7);
        assert_eq!(n.pfaffian(), Err(Error::OddOrder(7)));
        let even = SkewLinearMatrix::random(Field::fp(), 6, 3, &mut rng);
        assert_eq!(even.sub_pfaffians(), Err(Error::EvenOrder(6)));
        assert_eq!(even.pfaffian().unwrap().degree(), 3);
    }

    #[test]
    fn flip_single_coefficient() {
        let f = Field::Rational;
        let a = Alphabet::y(3);
        let z = HomogPoly::zero(f, a, 1);
        let y0 = HomogPoly::var(f, a, 0);
        let mut rows = vec![vec![z.clone(); 4]; 4];
        rows[0][1] = y0.clone();
        rows[1][0] = y0.neg();
        let n = SkewLinearMatrix::new(f, 4, 3, rows).unwrap();
        let m = n.flip();
        let col0: Vec<String> = (0..4).map(|j| m.entry(j, 0).to_string()).collect();
        assert_eq!(col0, vec!["-x1", "x0", "0", "0"]);
        for k in 1..3 {
            assert!((0..4).all(|j| m.entry(j, k).is_zero()));
        }
        assert_eq!(m.unflip().unwrap(), n);
    }

    #[test]
    fn flip_is_an_involution_and_rejects_non_alternating() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = SkewLinearMatrix::random(Field::Rational, 6, 4, &mut rng);
        assert_eq!(n.flip().unflip().unwrap(), n);
        let mut rows = n.flip().entry_rows();
        rows[0][0] = rows[0][0]
            .add(&HomogPoly::var(Field::Rational, Alphabet::x(6), 0))
            .unwrap();
        let bad = LinearPencilMatrix::new(Field::Rational, rows).unwrap();
        assert!(matches!(bad.unflip(), Err(Error::NotSkew(0, 0))));
    }

    #[test]
    fn parametrized_points_drop_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let field = Field::fp();
        let n = SkewLinearMatrix::random(field, 5, 3, &mut rng);
        let m = n.flip();
        let s = n.signed_sub_pfaffians().unwrap();
        for _ in 0..5 {
            let y: Vec<Scalar> = (0..3).map(|_| field.random(&mut rng)).collect();
            let x = HomogPoly::evaluate_all(&s, &y).unwrap();
            assert_eq!(n.evaluate(&y).unwrap().rank(), 4);
            assert!(m.evaluate(&x).unwrap().rank() <= 2);
        }
        assert!(n
            .evaluate(&[field.zero(), field.zero(), field.zero()])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn minors() {
        let f = Field::Rational;
        let xs = Alphabet::x(4);
        let x: Vec<HomogPoly> = (0..4).map(|i| HomogPoly::var(f, xs, i)).collect();
        let z = HomogPoly::zero(f, xs, 1);
        // Diagonal pencil in the first three rows: the only nonzero minor is x0 x1 x2.
        let rows = vec![
            vec![x[0].clone(), z.clone(), z.clone()],
            vec![z.clone(), x[1].clone(), z.clone()],
            vec![z.clone(), z.clone(), x[2].clone()],
            vec![z.clone(), z.clone(), z.clone()],
        ];
        let m = LinearPencilMatrix::new(f, rows).unwrap();
        let minors = m.maximal_minors();
        assert_eq!(minors.len(), 4);
        assert_eq!(minors[0].to_string(), "x0*x1*x2");
        assert!(minors[1..].iter().all(HomogPoly::is_zero));

        // Compare with numeric determinants at a random point.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = SkewLinearMatrix::random(f, 6, 3, &mut rng);
        let m = n.flip();
        let minors = m.maximal_minors();
        let pt: Vec<Scalar> = (0..6).map(|_| f.random(&mut rng)).collect();
        let mv = m.evaluate(&pt).unwrap();
        for (rows, minor) in row_subsets(6, 3).iter().zip(&minors) {
            assert_eq!(
                minor.evaluate(&pt).unwrap(),
                mv.select_rows(rows).determinant().unwrap()
            );
        }
    }

    #[test]
    fn transport_by_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = SkewLinearMatrix::random(Field::fp(), 5, 3, &mut rng);
        let id = ExactMatrix::identity(Field::fp(), 5);
        assert_eq!(n.congruence_transport(&id).unwrap(), n);
        let sing = ExactMatrix::zeros(Field::fp(), 5, 5);
        assert_eq!(n.congruence_transport(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn file_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = SkewLinearMatrix::random(Field::Rational, 5, 3, &mut rng);
        let json = serde_json::to_string(&MatrixFile::from_skew(&n)).unwrap();
        let back: MatrixFile = serde_json::from_str(&json).unwrap();
        assert_eq!(
            back.to_skew(back.field_or(Field::fp()).unwrap()).unwrap(),
            n
        );
        let p = MatrixFile::from_pencil(&n.flip());
        assert_eq!(p.to_pencil(Field::Rational).unwrap(), n.flip());

        let mut bad = MatrixFile::from_skew(&n);
        bad.entries[0][1] = "y0".into();
        bad.entries[1][0] = "y0".into();
        assert_eq!(bad.to_skew(Field::Rational), Err(Error::NotSkew(0, 1)));
        bad.entries[1][0] = "y0^2".into();
        assert!(bad.to_skew(Field::Rational).is_err());
    }
}
