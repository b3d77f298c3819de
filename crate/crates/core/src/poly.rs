//! Homogeneous polynomials over a named alphabet with dense coefficient
//! vectors indexed by a graded-lex monomial basis.
//!
//! Three alphabets are in play: `y0..` for `R = k[y]`, `d0..` for the ring of
//! differential operators `S = k[∂]`, and `x0..` for coordinates on `P(V)`.
//! Within a degree, monomials are ordered lexicographically with
//! `y0 > y1 > ...`, so `y0^d` always comes first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlphabetKind {
    #[serde(rename = "Y")]
    Y,
    #[serde(rename = "DUAL")]
    Dual,
    #[serde(rename = "X")]
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub kind: AlphabetKind,
    pub nvars: usize,
}

impl Alphabet {
    pub fn y(nvars: usize) -> Self {
        Alphabet {
            kind: AlphabetKind::Y,
            nvars,
        }
    }

    pub fn dual(nvars: usize) -> Self {
        Alphabet {
            kind: AlphabetKind::Dual,
            nvars,
        }
    }

    pub fn x(nvars: usize) -> Self {
        Alphabet {
            kind: AlphabetKind::X,
            nvars,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self.kind {
            AlphabetKind::Y => "y",
            AlphabetKind::Dual => "d",
            AlphabetKind::X => "x",
        }
    }

    pub fn tag(self) -> &'static str {
        match self.kind {
            AlphabetKind::Y => "Y",
            AlphabetKind::Dual => "DUAL",
            AlphabetKind::X => "X",
        }
    }

    /// `R <-> S`; the coordinate alphabet has no apolar partner.
    pub fn mirrored(self) -> Result<Alphabet> {
        let kind = match self.kind {
            AlphabetKind::Y => AlphabetKind::Dual,
            AlphabetKind::Dual => AlphabetKind::Y,
            AlphabetKind::X => return Err(Error::Unsupported("the x alphabet has no dual".into())),
        };
        Ok(Alphabet {
            kind,
            nvars: self.nvars,
        })
    }

    /// `dim k[v_0..v_{n-1}]_d`.
    pub fn dim(self, degree: usize) -> usize {
        num_monomials(self.nvars, degree)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.tag(), self.nvars)
    }
}

pub fn num_monomials(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial((degree + nvars - 1) as i64, (nvars - 1) as i64) as usize
}

/// Exponent vectors of degree `d` in `nvars` variables, graded-lex order.
pub fn monomial_basis(nvars: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            rec(prefix, left - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(num_monomials(nvars, degree));
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(
        &mut Vec::with_capacity(nvars),
        nvars,
        degree as u32,
        &mut out,
    );
    out
}

/// Position of `exps` within [`monomial_basis`] of its degree.
pub fn monomial_index(exps: &[u32]) -> usize {
    let v = exps.len();
    let mut remaining: usize = exps.iter().map(|&e| e as usize).sum();
    let mut idx = 0;
    for (i, &e) in exps.iter().enumerate().take(v.saturating_sub(1)) {
        let rest = v - i - 1;
        // Monomials with a larger exponent at position i come first.
        for t in (e as usize + 1)..=remaining {
            idx += num_monomials(rest, remaining - t);
        }
        remaining -= e as usize;
    }
    idx
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    field: Field,
    alphabet: Alphabet,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl HomogPoly {
    pub fn zero(field: Field, alphabet: Alphabet, degree: usize) -> Self {
        HomogPoly {
            field,
            alphabet,
            degree,
            coeffs: vec![field.zero(); alphabet.dim(degree)],
        }
    }

    pub fn constant(c: Scalar, alphabet: Alphabet) -> Self {
        HomogPoly {
            field: c.field(),
            alphabet,
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(
        field: Field,
        alphabet: Alphabet,
        degree: usize,
        coeffs: Vec<Scalar>,
    ) -> Result<Self> {
        if coeffs.len() != alphabet.dim(degree) {
            return Err(Error::Shape(format!(
                "{} coefficients for {} monomials of degree {degree}",
                coeffs.len(),
                alphabet.dim(degree)
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(
                field.to_string(),
                bad.field().to_string(),
            ));
        }
        Ok(HomogPoly {
            field,
            alphabet,
            degree,
            coeffs,
        })
    }

    pub fn monomial(field: Field, alphabet: Alphabet, exps: &[u32], c: Scalar) -> Self {
        assert_eq!(exps.len(), alphabet.nvars, "exponent vector length");
        let degree = exps.iter().map(|&e| e as usize).sum();
        let mut p = Self::zero(field, alphabet, degree);
        p.coeffs[monomial_index(exps)] = c;
        p
    }

    /// Uniformly random coefficients, see [`Field::random`].
    pub fn random<R: rand::Rng + ?Sized>(
        field: Field,
        alphabet: Alphabet,
        degree: usize,
        rng: &mut R,
    ) -> Self {
        let coeffs = (0..alphabet.dim(degree))
            .map(|_| field.random(rng))
            .collect();
        HomogPoly {
            field,
            alphabet,
            degree,
            coeffs,
        }
    }

    pub fn var(field: Field, alphabet: Alphabet, i: usize) -> Self {
        let mut e = vec![0; alphabet.nvars];
        e[i] = 1;
        Self::monomial(field, alphabet, &e, field.one())
    }

    /// Linear form `sum c_i v_i`.
    pub fn linear(field: Field, alphabet: Alphabet, coeffs: Vec<Scalar>) -> Result<Self> {
        Self::from_coeffs(field, alphabet, 1, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: &[u32]) -> &Scalar {
        &self.coeffs[monomial_index(exps)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> Vec<(Scalar, Vec<u32>)> {
        monomial_basis(self.alphabet.nvars, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c.clone(), e))
            .collect()
    }

    /// Same coefficients over another alphabet of equal size, e.g. `G = Σ c y^β`
    /// becomes `F = Σ c ∂^β`.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Self> {
        if alphabet.nvars != self.alphabet.nvars {
            return Err(Error::AlphabetMismatch(
                self.alphabet.to_string(),
                alphabet.to_string(),
            ));
        }
        Ok(HomogPoly {
            alphabet,
            ..self.clone()
        })
    }

    pub fn mirror(&self) -> Result<Self> {
        self.with_alphabet(self.alphabet.mirrored()?)
    }

    fn check_compatible(&self, other: &HomogPoly) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                self.alphabet.to_string(),
                other.alphabet.to_string(),
            ));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogPoly) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomogPoly {
            coeffs,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        HomogPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &HomogPoly) -> Result<Self> {
        self.check_compatible(other)?;
        let nv = self.alphabet.nvars;
        let deg = self.degree + other.degree;
        let mut out = Self::zero(self.field, self.alphabet, deg);
        let lhs = self.terms();
        if lhs.is_empty() {
            return Ok(out);
        }
        let rhs = other.terms();
        let mut e = vec![0u32; nv];
        for (a, ea) in &lhs {
            for (b, eb) in &rhs {
                for i in 0..nv {
                    e[i] = ea[i] + eb[i];
                }
                let k = monomial_index(&e);
                out.coeffs[k] = &out.coeffs[k] + &(a * b);
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.alphabet.nvars {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.alphabet.nvars
            )));
        }
        let values = monomial_values(self.field, point, self.degree);
        Ok(dot(self.field, &self.coeffs, &values))
    }

    /// Evaluates many polynomials of one degree at a point, sharing the
    /// monomial values.
    pub fn evaluate_all(polys: &[HomogPoly], point: &[Scalar]) -> Result<Vec<Scalar>> {
        let Some(first) = polys.first() else {
            return Ok(Vec::new());
        };
        if polys
            .iter()
            .any(|p| p.degree != first.degree || p.alphabet != first.alphabet)
        {
            return Err(Error::Shape(
                "evaluate_all needs a common degree and alphabet".into(),
            ));
        }
        if point.len() != first.alphabet.nvars {
            return Err(Error::Shape("point length".into()));
        }
        let values = monomial_values(first.field, point, first.degree);
        Ok(polys
            .iter()
            .map(|p| dot(p.field, &p.coeffs, &values))
            .collect())
    }
}

/// Values of all degree-`d` monomials at `point`, in basis order.
fn monomial_values(field: Field, point: &[Scalar], degree: usize) -> Vec<Scalar> {
    if point.is_empty() {
        return vec![field.one(); usize::from(degree == 0)];
    }
    // Degree-d monomials = v_i * (degree d-1 monomials in v_i..v_n) with i the first variable used;
    // built from lower degrees via the exponent vectors directly.
    monomial_basis(point.len(), degree)
        .iter()
        .map(|e| {
            e.iter()
                .zip(point)
                .filter(|(k, _)| **k > 0)
                .fold(field.one(), |acc, (&k, x)| &acc * &x.pow(k))
        })
        .collect()
}

fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

impl fmt::Display for HomogPoly {
    /// Canonical text: terms in basis order, e.g. `3*y0^2*y1 - 1/2*y2^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let prefix = self.alphabet.prefix();
        for (k, (c, e)) in terms.iter().enumerate() {
            let (neg, mag) = c.signed_repr();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("{prefix}{i}")
                    } else {
                        format!("{prefix}{i}^{p}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses the text format. `degree` fixes the degree of a zero polynomial,
/// which otherwise reads as the constant 0.
pub fn parse_poly(
    field: Field,
    alphabet: Alphabet,
    text: &str,
    degree: Option<usize>,
) -> Result<HomogPoly> {
    let prefix = alphabet.prefix();
    let mut terms: Vec<(Scalar, Vec<u32>)> = Vec::new();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // Split on top-level signs, keeping the sign with the term.
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            pieces.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{text}`")));
    }
    pieces.push((neg, cur));

    for (neg, piece) in pieces {
        let mut coeff = field.one();
        let mut exps = vec![0u32; alphabet.nvars];
        for factor in piece.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{piece}`")));
            }
            if let Some(rest) = factor.strip_prefix(prefix) {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad_factor(factor))?),
                    None => (rest, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad_factor(factor))?;
                if i >= alphabet.nvars {
                    return Err(Error::Parse(format!(
                        "variable `{prefix}{i}` outside {alphabet}"
                    )));
                }
                exps[i] += pow;
            } else if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff = &coeff * &field.parse_scalar(factor)?;
            } else {
                return Err(bad_factor(factor));
            }
        }
        if neg {
            coeff = -coeff;
        }
        terms.push((coeff, exps));
    }

    let degs: Vec<usize> = terms
        .iter()
        .map(|(_, e)| e.iter().map(|&x| x as usize).sum())
        .collect();
    let d = match (degs.first(), degree) {
        (Some(&d0), _) if degs.iter().any(|&d| d != d0) => {
            return Err(Error::Parse(format!("`{text}` is not homogeneous")))
        }
        (Some(&d0), Some(want)) if d0 != want && !terms.iter().all(|(c, _)| c.is_zero()) => {
            return Err(Error::DegreeMismatch(d0, want))
        }
        (_, Some(want)) if terms.iter().all(|(c, _)| c.is_zero()) => want,
        (Some(&d0), _) => d0,
        (None, None) => return Err(Error::Parse("degree of `0` is ambiguous".into())),
        (None, Some(want)) => want,
    };
    let mut p = HomogPoly::zero(field, alphabet, d);
    for (c, e) in terms {
        if c.is_zero() {
            continue;
        }
        let k = monomial_index(&e);
        p.coeffs[k] = &p.coeffs[k] + &c;
    }
    Ok(p)
}

fn bad_factor(f: &str) -> Error {
    Error::Parse(format!("cannot read factor `{f}`"))
}

/// `{"degree": d, "alphabet": "Y", "nvars": v, "terms": [["3", [2,1,0]], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub degree: usize,
    pub alphabet: AlphabetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    pub terms: Vec<(serde_json::Value, Vec<u32>)>,
}

impl PolyJson {
    pub fn from_poly(p: &HomogPoly) -> Self {
        PolyJson {
            degree: p.degree,
            alphabet: p.alphabet.kind,
            nvars: Some(p.alphabet.nvars),
            terms: p
                .terms()
                .into_iter()
                .map(|(c, e)| (serde_json::Value::String(c.to_string()), e))
                .collect(),
        }
    }

    pub fn to_poly(&self, field: Field) -> Result<HomogPoly> {
        let nvars = match (self.nvars, self.terms.first()) {
            (Some(v), _) => v,
            (None, Some((_, e))) => e.len(),
            (None, None) => return Err(Error::Parse("zero polynomial needs `nvars`".into())),
        };
        let alphabet = Alphabet {
            kind: self.alphabet,
            nvars,
        };
        let mut p = HomogPoly::zero(field, alphabet, self.degree);
        for (c, e) in &self.terms {
            if e.len() != nvars {
                return Err(Error::Parse("exponent vector length".into()));
            }
            if e.iter().map(|&x| x as usize).sum::<usize>() != self.degree {
                return Err(Error::Parse(format!("term {e:?} has the wrong degree")));
            }
            let c = match c {
                serde_json::Value::String(s) => field.parse_scalar(s)?,
                serde_json::Value::Number(n) => field.parse_scalar(&n.to_string())?,
                other => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            let k = monomial_index(e);
            p.coeffs[k] = &p.coeffs[k] + &c;
        }
        Ok(p)
    }
}

/// A subspace of `R_d` (or `S_d`, or the x-ring) stored as the columns of an
/// exact matrix in reduced column echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    alphabet: Alphabet,
    degree: usize,
    basis: ExactMatrix,
}

impl GradedSlice {
    pub fn zero(field: Field, alphabet: Alphabet, degree: usize) -> Self {
        GradedSlice {
            alphabet,
            degree,
            basis: ExactMatrix::zeros(field, alphabet.dim(degree), 0),
        }
    }

    pub fn full(field: Field, alphabet: Alphabet, degree: usize) -> Self {
        GradedSlice {
            alphabet,
            degree,
            basis: ExactMatrix::identity(field, alphabet.dim(degree)),
        }
    }

    /// Span of coefficient vectors (each of length `dim R_d`).
    pub fn from_vectors(
        field: Field,
        alphabet: Alphabet,
        degree: usize,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = alphabet.dim(degree);
        if vectors.is_empty() {
            return Ok(Self::zero(field, alphabet, degree));
        }
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Shape("slice vector length".into()));
        }
        let ech = ExactMatrix::from_rows(field, vectors)?.echelon();
        let rows: Vec<usize> = (0..ech.pivots.len()).collect();
        Ok(GradedSlice {
            alphabet,
            degree,
            basis: ech.rref.select_rows(&rows).transpose(),
        })
    }

    pub fn from_polys(
        field: Field,
        alphabet: Alphabet,
        degree: usize,
        polys: &[HomogPoly],
    ) -> Result<Self> {
        for p in polys {
            if p.alphabet != alphabet {
                return Err(Error::AlphabetMismatch(
                    alphabet.to_string(),
                    p.alphabet.to_string(),
                ));
            }
            if p.degree != degree {
                return Err(Error::DegreeMismatch(p.degree, degree));
            }
        }
        Self::from_vectors(
            field,
            alphabet,
            degree,
            polys.iter().map(|p| p.coeffs.clone()).collect(),
        )
    }

    /// Columns of `m` are coefficient vectors.
    pub fn from_column_matrix(alphabet: Alphabet, degree: usize, m: &ExactMatrix) -> Result<Self> {
        Self::from_vectors(m.field(), alphabet, degree, m.columns())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn polys(&self) -> Vec<HomogPoly> {
        self.basis
            .columns()
            .into_iter()
            .map(|c| HomogPoly {
                field: self.field(),
                alphabet: self.alphabet,
                degree: self.degree,
                coeffs: c,
            })
            .collect()
    }

    pub fn contains(&self, p: &HomogPoly) -> Result<bool> {
        if p.alphabet != self.alphabet || p.degree != self.degree {
            return Err(Error::DegreeMismatch(p.degree, self.degree));
        }
        let m = self.basis.hconcat(&ExactMatrix::from_columns(
            self.field(),
            self.ambient_dim(),
            std::slice::from_ref(&p.coeffs),
        )?)?;
        Ok(m.rank() == self.dim())
    }

    /// Sum of two subspaces of the same graded piece.
    pub fn sum(&self, other: &GradedSlice) -> Result<GradedSlice> {
        check_same_piece(self, other)?;
        let mut v = self.basis.columns();
        v.extend(other.basis.columns());
        Self::from_vectors(self.field(), self.alphabet, self.degree, v)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.polys().iter().map(ToString::to_string).collect()
    }
}

fn check_same_piece(a: &GradedSlice, b: &GradedSlice) -> Result<()> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(
            a.alphabet.to_string(),
            b.alphabet.to_string(),
        ));
    }
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    Ok(())
}

/// Subspace equality by comparing reduced echelon forms.
pub fn slices_equal(a: &GradedSlice, b: &GradedSlice) -> Result<bool> {
    check_same_piece(a, b)?;
    Ok(a.basis == b.basis)
}

/// Degree-`d` piece of the ideal generated by `gens`, all of one degree `e`.
/// Below the generating degree the piece is zero.
pub fn slice_of_products(
    field: Field,
    alphabet: Alphabet,
    gens: &[HomogPoly],
    degree: usize,
) -> Result<GradedSlice> {
    let Some(first) = gens.first() else {
        return Ok(GradedSlice::zero(field, alphabet, degree));
    };
    let e = first.degree;
    for g in gens {
        if g.degree != e {
            return Err(Error::DegreeMismatch(g.degree, e));
        }
        if g.alphabet != alphabet {
            return Err(Error::AlphabetMismatch(
                alphabet.to_string(),
                g.alphabet.to_string(),
            ));
        }
    }
    if degree < e {
        return Ok(GradedSlice::zero(field, alphabet, degree));
    }
    let mut vectors = Vec::new();
    for mono in monomial_basis(alphabet.nvars, degree - e) {
        let m = HomogPoly::monomial(field, alphabet, &mono, field.one());
        for g in gens {
            vectors.push(m.mul(g)?.coeffs);
        }
    }
    GradedSlice::from_vectors(field, alphabet, degree, vectors)
}
