//! The bijection, for odd `n`, between nondegenerate plane forms `F` of degree
//! `n - 3` and `n × n` skew matrices of linear forms in three variables, up to
//! congruence: the sub-Pfaffians of `N` span the generating slice of `F^⊥`.

use serde::Serialize;

use crate::apolarity::{catalecticant_rank, dual_socle_generator, hilbert_function, perp_slice};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::ExactMatrix;
use crate::poly::{Alphabet, GradedSlice, HomogPoly};
use crate::skew::{MatrixFile, SkewLinearMatrix};

pub use crate::poly::slices_equal;

/// Everything needed to audit one instance of the correspondence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceCertificate {
    pub n: usize,
    pub field: String,
    pub matrix: MatrixFile,
    pub form: String,
    /// Echelon basis of the span of the sub-Pfaffians, degree `(n-1)/2`.
    pub pfaffian_slice: Vec<String>,
    /// Echelon basis of `F^⊥` in degree `(n-1)/2`.
    pub annihilator_slice: Vec<String>,
    pub slices_equal: bool,
    pub hilbert_function: Vec<usize>,
    pub catalecticant_rank: usize,
    pub catalecticant_full: usize,
    /// `dim F^⊥_{(n-1)/2}`.
    pub generating_dim: usize,
    /// `F^⊥_d = 0` for every `d <= (n-3)/2`.
    pub lower_degrees_vanish: bool,
    /// `h(n-3)` and `h(n-2)`.
    pub socle_value: usize,
    pub beyond_socle: usize,
    pub hilbert_symmetric: bool,
}

impl CorrespondenceCertificate {
    fn build(n: usize, matrix: &SkewLinearMatrix, form: &HomogPoly) -> Result<Self> {
        let h = (n - 1) / 2;
        let y = Alphabet::y(3);
        let field = form.field();
        let pf = GradedSlice::from_polys(field, y, h, &matrix.sub_pfaffians()?)?;
        let perp = perp_slice(form, h)?;
        let hilb = hilbert_function(form)?;
        let cat = catalecticant_rank(form)?;
        let lower_degrees_vanish = (0..h)
            .map(|d| perp_slice(form, d).map(|s| s.dim() == 0))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        let hilb_at = |d: usize| hilb.get(d).copied().unwrap_or(0);
        Ok(CorrespondenceCertificate {
            n,
            field: field.to_string(),
            matrix: MatrixFile::from_skew(matrix),
            form: form.to_string(),
            pfaffian_slice: pf.to_strings(),
            annihilator_slice: perp.to_strings(),
            slices_equal: slices_equal(&pf, &perp)?,
            hilbert_symmetric: (0..=n - 3).all(|d| hilb_at(d) == hilb_at(n - 3 - d)),
            hilbert_function: hilb.clone(),
            catalecticant_rank: cat.rank,
            catalecticant_full: cat.full,
            generating_dim: perp.dim(),
            lower_degrees_vanish,
            socle_value: hilb_at(n - 3),
            beyond_socle: hilb_at(n - 2),
        })
    }

    /// All structural checks hold.
    pub fn is_valid(&self) -> bool {
        self.slices_equal
            && self.pfaffian_slice == self.annihilator_slice
            && self.generating_dim == self.n
            && self.lower_degrees_vanish
            && self.socle_value == 1
            && self.beyond_socle == 0
            && self.hilbert_symmetric
            && self.catalecticant_rank == self.catalecticant_full
    }
}

fn check_odd_order(n: usize, field: Field) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "the correspondence needs odd n, got {n}"
        )));
    }
    if n < 5 {
        return Err(Error::Unsupported(format!(
            "the correspondence needs n >= 5, got {n}"
        )));
    }
    field.require_invertible_up_to(n - 3)
}

/// `F`, the dual socle generator of the ideal of sub-Pfaffians of `N`.
pub fn matrix_to_form(matrix: &SkewLinearMatrix) -> Result<(HomogPoly, CorrespondenceCertificate)> {
    let n = matrix.n();
    if matrix.m() != 3 {
        return Err(Error::Unsupported(format!(
            "the correspondence needs three variables, got {}",
            matrix.m()
        )));
    }
    check_odd_order(n, matrix.field())?;
    let pfs = matrix.sub_pfaffians()?;
    let span = GradedSlice::from_polys(matrix.field(), Alphabet::y(3), (n - 1) / 2, &pfs)?;
    if span.dim() < n {
        return Err(Error::DegenerateInput(format!(
            "sub-Pfaffians span only {} of {n} dimensions",
            span.dim()
        )));
    }
    let form = match dual_socle_generator(&pfs, n - 3) {
        Ok(f) => f,
        Err(Error::NotGorensteinSocle { dim, .. }) => {
            return Err(Error::DegenerateInput(format!(
                "joint annihilator of the sub-Pfaffians has dimension {dim}"
            )))
        }
        Err(e) => return Err(e),
    };
    let cert = CorrespondenceCertificate::build(n, matrix, &form)?;
    if !cert.is_valid() {
        return Err(Error::DegenerateInput(
            "the sub-Pfaffians do not generate a Gorenstein ideal with the expected Hilbert function"
                .into(),
        ));
    }
    Ok((form, cert))
}

/// Basis of `{ ℓ ∈ (R_1)^len : Σ ℓ_i g_i = 0 }` for forms `g` of one degree.
pub fn linear_syzygies(gens: &[HomogPoly]) -> Result<Vec<Vec<HomogPoly>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    let alphabet = first.alphabet();
    let v = alphabet.nvars;
    // Column (i, k) is y_k * g_i.
    let mut columns = Vec::with_capacity(gens.len() * v);
    for g in gens {
        for k in 0..v {
            columns.push(HomogPoly::var(field, alphabet, k).mul(g)?.coeffs().to_vec());
        }
    }
    let rows = alphabet.dim(first.degree() + 1);
    let kernel = ExactMatrix::from_columns(field, rows, &columns)?.kernel_basis();
    kernel
        .columns()
        .into_iter()
        .map(|c| {
            c.chunks(v)
                .map(|l| HomogPoly::linear(field, alphabet, l.to_vec()))
                .collect()
        })
        .collect()
}

/// Finds a constant invertible `Q` with `Q T` skew-symmetric.
fn skew_normalize(field: Field, t: &[Vec<HomogPoly>]) -> Result<ExactMatrix> {
    let n = t.len();
    let v = t[0][0].alphabet().nvars;
    // Unknown Q_{ac} sits at index a*n + c. (QT)_{ab} + (QT)_{ba} = 0 for a <= b,
    // one equation per variable.
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a..n {
            for k in 0..v {
                let mut row = vec![field.zero(); n * n];
                for c in 0..n {
                    let x = &row[a * n + c] + &t[c][b].coeffs()[k];
                    row[a * n + c] = x;
                    let y = &row[b * n + c] + &t[c][a].coeffs()[k];
                    row[b * n + c] = y;
                }
                rows.push(row);
            }
        }
    }
    let kernel = ExactMatrix::from_rows(field, rows)?.kernel_basis();
    let to_q = |c: &[crate::field::Scalar]| {
        ExactMatrix::from_rows(field, c.chunks(n).map(<[_]>::to_vec).collect())
    };
    let mut candidates: Vec<Vec<crate::field::Scalar>> = kernel.columns();
    if candidates.len() > 1 {
        let sum = candidates
            .iter()
            .skip(1)
            .fold(candidates[0].clone(), |acc, c| {
                acc.iter().zip(c).map(|(x, y)| x + y).collect()
            });
        candidates.push(sum);
    }
    for c in candidates {
        let q = to_q(&c)?;
        if !q.determinant()?.is_zero() {
            return Ok(q);
        }
    }
    Err(Error::SkewNormalizationFailure)
}

/// A skew matrix of linear forms whose sub-Pfaffians span `F^⊥_{(n-1)/2}`.
pub fn form_to_matrix(form: &HomogPoly) -> Result<(SkewLinearMatrix, CorrespondenceCertificate)> {
    if form.alphabet() != Alphabet::dual(3) {
        return Err(Error::AlphabetMismatch(
            Alphabet::dual(3).to_string(),
            form.alphabet().to_string(),
        ));
    }
    let n = form.degree() + 3;
    check_odd_order(n, form.field())?;
    let cat = catalecticant_rank(form)?;
    if !cat.is_nondegenerate() {
        return Err(Error::DegenerateForm {
            rank: cat.rank,
            full: cat.full,
        });
    }
    let field = form.field();
    let gens = perp_slice(form, (n - 1) / 2)?;
    if gens.dim() != n {
        return Err(Error::Invariant(format!(
            "generating slice of a nondegenerate form has dimension {}, expected {n}",
            gens.dim()
        )));
    }
    let g = gens.polys();
    let t = linear_syzygies(&g)?;
    if t.len() != n {
        return Err(Error::SyzygyDefect {
            dim: t.len(),
            expected: n,
        });
    }
    let q = skew_normalize(field, &t)?;
    let y = Alphabet::y(3);
    let mut entries = vec![vec![HomogPoly::zero(field, y, 1); n]; n];
    for (a, row) in entries.iter_mut().enumerate() {
        for (b, e) in row.iter_mut().enumerate() {
            for (c, t_row) in t.iter().enumerate() {
                if !q.get(a, c).is_zero() {
                    *e = e.add(&t_row[b].scale(q.get(a, c)))?;
                }
            }
        }
    }
    let matrix = SkewLinearMatrix::new(field, n, 3, entries)
        .map_err(|e| Error::Invariant(format!("normalized syzygy matrix is not skew: {e}")))?;
    let cert = CorrespondenceCertificate::build(n, &matrix, form)?;
    if !cert.is_valid() {
        return Err(Error::Invariant(
            "constructed matrix fails its correspondence certificate".into(),
        ));
    }
    Ok((matrix, cert))
}

/// Degree-`(n-1)/2` span of the sub-Pfaffians.
pub fn pfaffian_slice(matrix: &SkewLinearMatrix) -> Result<GradedSlice> {
    GradedSlice::from_polys(
        matrix.field(),
        Alphabet::y(matrix.m()),
        (matrix.n() - 1) / 2,
        &matrix.sub_pfaffians()?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::normalize;
    use crate::field::Scalar;
    use crate::poly::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn matrix_to_form_small() {
        for n in [5, 7] {
            let m = SkewLinearMatrix::random(Field::fp(), n, 3, &mut rng(n as u64));
            let (f, cert) = matrix_to_form(&m).unwrap();
            assert_eq!(f.degree(), n - 3);
            assert!(cert.is_valid());
            assert_eq!(cert.generating_dim, n);
            if n == 7 {
                assert_eq!(cert.catalecticant_rank, 6);
                assert_eq!(cert.hilbert_function, vec![1, 3, 6, 3, 1]);
            }
        }
    }

    #[test]
    fn dependent_pfaffians_are_rejected() {
        let field = Field::Rational;
        let mut m = SkewLinearMatrix::random(field, 5, 3, &mut rng(1)).rows();
        // Kill row/column 0: every Pf_i with i != 0 vanishes.
        for i in 0..5 {
            m[0][i] = HomogPoly::zero(field, Alphabet::y(3), 1);
            m[i][0] = HomogPoly::zero(field, Alphabet::y(3), 1);
        }
        let m = SkewLinearMatrix::new(field, 5, 3, m).unwrap();
        assert!(matches!(matrix_to_form(&m), Err(Error::DegenerateInput(_))));
        let even = SkewLinearMatrix::random(field, 6, 3, &mut rng(2));
        assert!(matches!(matrix_to_form(&even), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sum_of_squares_conic() {
        let f = parse_poly(
            Field::Rational,
            Alphabet::dual(3),
            "d0^2 + d1^2 + d2^2",
            None,
        )
        .unwrap();
        let (m, cert) = form_to_matrix(&f).unwrap();
        assert!(cert.is_valid());
        let span = pfaffian_slice(&m).unwrap();
        for g in ["y0*y1", "y0*y2", "y1*y2", "y0^2 - y1^2", "y1^2 - y2^2"] {
            let p = parse_poly(Field::Rational, Alphabet::y(3), g, None).unwrap();
            assert!(span.contains(&p).unwrap());
        }
        assert_eq!(matrix_to_form(&m).unwrap().0, f);
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let f = parse_poly(Field::Rational, Alphabet::dual(3), "d0^4", None).unwrap();
        assert_eq!(
            form_to_matrix(&f),
            Err(Error::DegenerateForm { rank: 1, full: 6 })
        );
        let small = Field::prime(3).unwrap();
        let g = parse_poly(small, Alphabet::dual(3), "d0^4 + d1^4 + d2^4", None).unwrap();
        assert!(matches!(
            form_to_matrix(&g),
            Err(Error::FieldTooSmall { .. })
        ));
    }

    #[test]
    fn round_trips() {
        for n in [5, 7, 9] {
            let field = Field::fp();
            let m = SkewLinearMatrix::random(field, n, 3, &mut rng(100 + n as u64));
            let (f, _) = matrix_to_form(&m).unwrap();
            let (m2, _) = form_to_matrix(&f).unwrap();
            assert!(
                slices_equal(&pfaffian_slice(&m).unwrap(), &pfaffian_slice(&m2).unwrap()).unwrap()
            );
            assert_eq!(matrix_to_form(&m2).unwrap().0, f);
        }
    }

    #[test]
    fn syzygies_of_pfaffians_come_from_the_matrix() {
        let field = Field::fp();
        let m = SkewLinearMatrix::random(field, 7, 3, &mut rng(8));
        let s = m.signed_sub_pfaffians().unwrap();
        let syz = linear_syzygies(&s).unwrap();
        assert_eq!(syz.len(), 7);
        // Every row of N is a syzygy, so the row space of N sits in the span.
        let flatten = |row: &[HomogPoly]| -> Vec<Scalar> {
            row.iter().flat_map(|l| l.coeffs().to_vec()).collect()
        };
        let mut vectors: Vec<Vec<Scalar>> = syz.iter().map(|r| flatten(r)).collect();
        let rank = ExactMatrix::from_rows(field, vectors.clone())
            .unwrap()
            .rank();
        vectors.extend(m.rows().iter().map(|r| flatten(r)));
        assert_eq!(ExactMatrix::from_rows(field, vectors).unwrap().rank(), rank);
    }

    #[test]
    fn congruence_keeps_the_span() {
        let field = Field::fp();
        let m = SkewLinearMatrix::random(field, 7, 3, &mut rng(21));
        let mut r = rng(22);
        let mut a = ExactMatrix::identity(field, 7);
        a.set(0, 0, field.from_i64(5));
        let mut random = ExactMatrix::zeros(field, 7, 7);
        for i in 0..7 {
            for j in 0..7 {
                random.set(i, j, field.random(&mut r));
            }
        }
        for a in [a, random] {
            let t = m.congruence_transport(&a).unwrap();
            assert!(
                slices_equal(&pfaffian_slice(&m).unwrap(), &pfaffian_slice(&t).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn rational_round_trip() {
        let m = SkewLinearMatrix::random(Field::Rational, 5, 3, &mut rng(31));
        let (f, _) = matrix_to_form(&m).unwrap();
        let f = normalize(f).unwrap();
        let (m2, _) = form_to_matrix(&f).unwrap();
        assert_eq!(matrix_to_form(&m2).unwrap().0, f);
    }
}
