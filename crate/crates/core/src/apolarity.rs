//! The differentiation pairing between `R = k[y]` and `S = k[∂]`.
//!
//! `y^α` acts on `∂^β` as `α! C(β, α) ∂^{β-α}` (zero unless `β >= α`), and
//! symmetrically `∂^α` acts on `y^β`. This is honest differentiation, not the
//! divided-power contraction, so over F_p the factorials up to the degree in
//! play must be invertible.

use crate::combinat::falling;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::poly::{monomial_basis, monomial_index, GradedSlice, HomogPoly};

fn check_pair(op: &HomogPoly, target: &HomogPoly) -> Result<()> {
    if op.alphabet().mirrored()? != target.alphabet() {
        return Err(Error::AlphabetMismatch(
            op.alphabet().to_string(),
            target.alphabet().to_string(),
        ));
    }
    if op.field() != target.field() {
        return Err(Error::FieldMismatch(
            op.field().to_string(),
            target.field().to_string(),
        ));
    }
    Ok(())
}

/// `∏ falling(β_i, α_i)` when `β >= α` componentwise.
fn monomial_factor(alpha: &[u32], beta: &[u32]) -> Option<u64> {
    alpha
        .iter()
        .zip(beta)
        .try_fold(1u64, |acc, (&a, &b)| (b >= a).then(|| acc * falling(b, a)))
}

/// `D(F)` for `D` in one ring and `F` in its apolar partner.
///
/// A higher-degree operator gives the zero polynomial of degree 0.
pub fn apply(op: &HomogPoly, target: &HomogPoly) -> Result<HomogPoly> {
    check_pair(op, target)?;
    let field = target.field();
    let alphabet = target.alphabet();
    if op.degree() > target.degree() {
        return Ok(HomogPoly::zero(field, alphabet, 0));
    }
    let out_deg = target.degree() - op.degree();
    let mut coeffs = vec![field.zero(); alphabet.dim(out_deg)];
    let targets = target.terms();
    let mut diff = vec![0u32; alphabet.nvars];
    for (a, alpha) in op.terms() {
        for (b, beta) in &targets {
            let Some(k) = monomial_factor(&alpha, beta) else {
                continue;
            };
            for i in 0..diff.len() {
                diff[i] = beta[i] - alpha[i];
            }
            let idx = monomial_index(&diff);
            let term = &(&a * b) * &field.from_i64(k as i64);
            coeffs[idx] = &coeffs[idx] + &term;
        }
    }
    HomogPoly::from_coeffs(field, alphabet, out_deg, coeffs)
}

/// Matrix of `D ↦ D(F)` on the degree-`d` operators: column `j` holds the
/// coefficients of `y^{α_j}(F)` in the basis of degree `k - d`.
pub fn pairing_matrix(form: &HomogPoly, d: usize) -> Result<ExactMatrix> {
    let field = form.field();
    let alphabet = form.alphabet();
    let k = form.degree();
    if d > k {
        return Err(Error::DegreeMismatch(d, k));
    }
    let ops = monomial_basis(alphabet.nvars, d);
    let out_dim = alphabet.dim(k - d);
    let mut m = ExactMatrix::zeros(field, out_dim, ops.len());
    let terms = form.terms();
    let mut diff = vec![0u32; alphabet.nvars];
    for (j, alpha) in ops.iter().enumerate() {
        for (c, beta) in &terms {
            let Some(f) = monomial_factor(alpha, beta) else {
                continue;
            };
            for i in 0..diff.len() {
                diff[i] = beta[i] - alpha[i];
            }
            let r = monomial_index(&diff);
            let v = m.get(r, j) + &(c * &field.from_i64(f as i64));
            m.set(r, j, v);
        }
    }
    Ok(m)
}

/// Span of the order-`t` partial derivatives `{ y^α(F) : |α| = t }`.
pub fn partials(form: &HomogPoly, t: usize) -> Result<GradedSlice> {
    let k = form.degree();
    if t > k {
        return Err(Error::DegreeMismatch(t, k));
    }
    GradedSlice::from_column_matrix(form.alphabet(), k - t, &pairing_matrix(form, t)?)
}

/// Degree-`d` piece of the annihilator `F^⊥` in the partner ring.
pub fn perp_slice(form: &HomogPoly, d: usize) -> Result<GradedSlice> {
    let ops = form.alphabet().mirrored()?;
    if d > form.degree() {
        return Ok(GradedSlice::full(form.field(), ops, d));
    }
    let kernel = pairing_matrix(form, d)?.kernel_basis();
    GradedSlice::from_column_matrix(ops, d, &kernel)
}

/// The `(a, k-a)` catalecticant block: entry `(i, j)` is the scalar
/// `y^{β_i} y^{α_j}(F)` with `|α| = a`, `|β| = k - a`.
pub fn catalecticant(form: &HomogPoly, a: usize) -> Result<ExactMatrix> {
    let p = pairing_matrix(form, a)?;
    let field = form.field();
    let rows = monomial_basis(form.alphabet().nvars, form.degree() - a);
    let mut out = p.clone();
    for (i, beta) in rows.iter().enumerate() {
        let fact = field.from_i64(beta.iter().map(|&b| falling(b, b)).product::<u64>() as i64);
        for j in 0..p.cols() {
            out.set(i, j, p.get(i, j) * &fact);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalecticantRank {
    pub rank: usize,
    /// `C(k/2 + 2, 2)`, the size of the middle block.
    pub full: usize,
}

impl CatalecticantRank {
    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.full
    }
}

/// Rank of the middle catalecticant of an even-degree form.
pub fn catalecticant_rank(form: &HomogPoly) -> Result<CatalecticantRank> {
    let k = form.degree();
    if k % 2 == 1 {
        return Err(Error::OddDegree(k));
    }
    Ok(CatalecticantRank {
        rank: pairing_matrix(form, k / 2)?.rank(),
        full: form.alphabet().dim(k / 2),
    })
}

pub fn is_nondegenerate(form: &HomogPoly) -> Result<bool> {
    Ok(catalecticant_rank(form)?.is_nondegenerate())
}

/// `h(d) = dim R_d - dim F^⊥_d` for `0 <= d <= k`.
pub fn hilbert_function(form: &HomogPoly) -> Result<Vec<usize>> {
    if form.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero form has no apolar algebra".into(),
        ));
    }
    let k = form.degree();
    let mut h: Vec<usize> = (0..=k)
        .map(|d| pairing_matrix(form, d).map(|m| m.rank()))
        .collect::<Result<_>>()?;
    while h.last() == Some(&0) {
        h.pop();
    }
    Ok(h)
}

/// The form `F` of degree `k`, unique up to scalar, killed by every
/// generator. Normalized so its first nonzero coefficient is 1.
pub fn dual_socle_generator(gens: &[HomogPoly], k: usize) -> Result<HomogPoly> {
    let Some(first) = gens.first() else {
        return Err(Error::DegenerateInput("no generators".into()));
    };
    let field = first.field();
    let ring = first.alphabet();
    let target = ring.mirrored()?;
    let unknowns = target.dim(k);
    let mut rows: Vec<Vec<_>> = Vec::new();
    for g in gens {
        if g.alphabet() != ring {
            return Err(Error::AlphabetMismatch(
                ring.to_string(),
                g.alphabet().to_string(),
            ));
        }
        if g.degree() > k {
            continue;
        }
        // The conditions from g are the rows of the transpose of the pairing
        // of g against S_k, read monomial by monomial.
        let mut block = vec![vec![field.zero(); unknowns]; target.dim(k - g.degree())];
        for (j, beta) in monomial_basis(target.nvars, k).iter().enumerate() {
            let mono = HomogPoly::monomial(field, target, beta, field.one());
            let image = apply(g, &mono)?;
            for (i, c) in image.coeffs().iter().enumerate() {
                block[i][j] = c.clone();
            }
        }
        rows.extend(block);
    }
    let kernel = if rows.is_empty() {
        ExactMatrix::identity(field, unknowns)
    } else {
        ExactMatrix::from_rows(field, rows)?.kernel_basis()
    };
    if kernel.cols() != 1 {
        return Err(Error::NotGorensteinSocle {
            degree: k,
            dim: kernel.cols(),
        });
    }
    normalize(HomogPoly::from_coeffs(field, target, k, kernel.column(0))?)
}

/// Scales so the first nonzero coefficient in basis order is 1.
pub fn normalize(p: HomogPoly) -> Result<HomogPoly> {
    match p.coeffs().iter().find(|c| !c.is_zero()) {
        Some(lead) => Ok(p.scale(&lead.inv().ok_or(Error::DivisionByZero)?)),
        None => Err(Error::DegenerateInput(
            "cannot normalize the zero form".into(),
        )),
    }
}
