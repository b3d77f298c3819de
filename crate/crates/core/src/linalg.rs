//! Dense exact linear algebra over [`Field`].
//!
//! Echelon conventions are fixed so every derived basis is reproducible:
//! pivots are the first nonzero entry found scanning down a column, free
//! variables are set to zero, and kernels are read off the reduced row echelon
//! form one free column at a time.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        x.field().to_string(),
                    ));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, v).expect("rectangular literal")
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &ExactMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hconcat row count".into()));
        }
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut rref = self.clone();
        let pivots = match self.field {
            Field::Prime(p) => rref.rref_mod(p),
            Field::Rational => rref.rref_generic(),
        };
        Echelon { rref, pivots }
    }

    fn rref_generic(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(found) = (pr..rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if found != pr {
                for j in 0..cols {
                    self.data.swap(found * cols + j, pr * cols + j);
                }
            }
            let inv = self.get(pr, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let v = self.get(pr, j) * &inv;
                self.set(pr, j, v);
            }
            for r in 0..rows {
                if r == pr || self.get(r, c).is_zero() {
                    continue;
                }
                let f = self.get(r, c).clone();
                for j in c..cols {
                    let sub = &f * self.get(pr, j);
                    if !sub.is_zero() {
                        let v = self.get(r, j) - &sub;
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    /// Same elimination as [`Self::rref_generic`] on raw residues.
    fn rref_mod(&mut self, p: u32) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let p64 = p as u64;
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|x| match x {
                Scalar::Mod { value, .. } => *value as u64,
                Scalar::Rat(_) => unreachable!("rational entry in F_p matrix"),
            })
            .collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(found) = (pr..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            if found != pr {
                for j in 0..cols {
                    a.swap(found * cols + j, pr * cols + j);
                }
            }
            let inv = Field::Prime(p)
                .from_i64(a[pr * cols + c] as i64)
                .inv()
                .expect("nonzero pivot");
            let inv = match inv {
                Scalar::Mod { value, .. } => value as u64,
                Scalar::Rat(_) => unreachable!(),
            };
            for j in c..cols {
                a[pr * cols + j] = a[pr * cols + j] * inv % p64;
            }
            for r in 0..rows {
                let f = a[r * cols + c];
                if r == pr || f == 0 {
                    continue;
                }
                for j in c..cols {
                    let s = f * a[pr * cols + j] % p64;
                    a[r * cols + j] = (a[r * cols + j] + p64 - s) % p64;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        for (dst, v) in self.data.iter_mut().zip(a) {
            *dst = Scalar::Mod { value: v as u32, p };
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, self.field.one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = -rref.get(r, f);
                basis.set(pc, k, v);
            }
        }
        basis
    }

    /// Some `x` with `self * x = b`, free variables zeroed; `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Shape("right-hand side length".into()));
        }
        let aug = self.hconcat(&ExactMatrix::from_columns(
            self.field,
            self.rows,
            &[b.to_vec()],
        )?)?;
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Unit vectors, chosen greedily in index order, extending the columns of
    /// `self` to a basis of the ambient space.
    pub fn complement_basis(&self, ambient_dim: usize) -> Result<ExactMatrix> {
        if self.rows != ambient_dim {
            return Err(Error::Shape(format!(
                "subspace vectors have length {}, ambient dimension {ambient_dim}",
                self.rows
            )));
        }
        if self.rank() != self.cols {
            return Err(Error::DependentInput);
        }
        let mut current = self.clone();
        let mut chosen = Vec::new();
        let mut rank = self.cols;
        for i in 0..ambient_dim {
            if rank == ambient_dim {
                break;
            }
            let mut e = vec![self.field.zero(); ambient_dim];
            e[i] = self.field.one();
            let trial = current.hconcat(&ExactMatrix::from_columns(
                self.field,
                ambient_dim,
                &[e.clone()],
            )?)?;
            if trial.rank() > rank {
                rank += 1;
                current = trial;
                chosen.push(e);
            }
        }
        ExactMatrix::from_columns(self.field, ambient_dim, &chosen)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                for j in 0..n {
                    a.data.swap(pr * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c) * &inv;
                for j in c..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hconcat(&ExactMatrix::identity(self.field, n))?;
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(rref.select_columns(&idx))
    }

    pub fn entries_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_i64).collect())
            .collect()
    }

    /// Rows of strings, for reports.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized form: field tag plus rows of exact entries as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub field: String,
    pub rows: Vec<Vec<String>>,
}

impl From<&ExactMatrix> for MatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        MatrixJson {
            field: m.field.to_string(),
            rows: m.to_strings(),
        }
    }
}
