//! Degeneracy loci of `M: O^m -> Ω(2)` sampled at exact points, the projected
//! Veronese construction for odd `n`, and the scroll over the Pfaffian curve
//! for even `n`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::apolarity::{catalecticant_rank, partials, perp_slice};
use crate::combinat::binomial;
use crate::correspondence::{form_to_matrix, pfaffian_slice, slices_equal};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::ExactMatrix;
use crate::poly::{Alphabet, GradedSlice, HomogPoly};
use crate::skew::{LinearPencilMatrix, SkewLinearMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocusProfile {
    pub m: usize,
    pub n: usize,
    /// Dimension of the ambient `P(V)`.
    pub ambient_dim: usize,
    pub dim_x: usize,
    pub codim_sing: usize,
    pub smooth: bool,
    /// Expected codimension in `P(V)` of the locus where the rank drops to `m - 2`.
    pub codim_second_locus: usize,
    pub second_locus_empty: bool,
}

pub fn check_range(m: usize, n: usize) -> Result<()> {
    if m <= 2 || m + 1 >= n {
        return Err(Error::Range { m, n });
    }
    Ok(())
}

pub fn locus_profile(m: usize, n: usize) -> Result<LocusProfile> {
    check_range(m, n)?;
    let codim_second_locus = 2 * (n - m + 1);
    Ok(LocusProfile {
        m,
        n,
        ambient_dim: n - 1,
        dim_x: m - 1,
        codim_sing: n + 2 - m,
        smooth: n + 3 > 2 * m,
        codim_second_locus,
        second_locus_empty: codim_second_locus > n - 1,
    })
}

/// Pairs `(y, s(y))` with `s` the signed sub-Pfaffians.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSample {
    pub pairs: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    /// Random `y` at which every sub-Pfaffian vanished.
    pub skipped: usize,
}

/// Images of `count` random points of `P(U)` under the sub-Pfaffian map.
pub fn parametrization_points<R: Rng + ?Sized>(
    matrix: &SkewLinearMatrix,
    count: usize,
    rng: &mut R,
) -> Result<PointSample> {
    let s = matrix.signed_sub_pfaffians()?;
    let field = matrix.field();
    let mut pairs = Vec::with_capacity(count);
    let mut skipped = 0;
    // A base-point-free map almost never hits zero; the bound only guards
    // against degenerate input looping forever.
    let max_tries = 100 * count.max(1);
    let mut tries = 0;
    while pairs.len() < count && tries < max_tries {
        tries += 1;
        let y: Vec<Scalar> = (0..matrix.m()).map(|_| field.random(rng)).collect();
        if y.iter().all(Scalar::is_zero) {
            continue;
        }
        let x = HomogPoly::evaluate_all(&s, &y)?;
        if x.iter().all(Scalar::is_zero) {
            skipped += 1;
            continue;
        }
        pairs.push((y, x));
    }
    Ok(PointSample { pairs, skipped })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Incidence {
    pub rank: usize,
    pub on_locus: bool,
    /// How many maximal minors vanish at the point.
    pub vanishing_minors: usize,
    pub total_minors: usize,
}

/// Membership test for the degeneracy locus of a pencil, by rank and by the
/// maximal minors; the two must agree.
pub struct IncidenceChecker {
    pencil: LinearPencilMatrix,
    minors: Vec<HomogPoly>,
}

impl IncidenceChecker {
    pub fn new(pencil: LinearPencilMatrix) -> Self {
        let minors = pencil.maximal_minors();
        IncidenceChecker { pencil, minors }
    }

    pub fn pencil(&self) -> &LinearPencilMatrix {
        &self.pencil
    }

    pub fn minors(&self) -> &[HomogPoly] {
        &self.minors
    }

    pub fn check(&self, x: &[Scalar]) -> Result<Incidence> {
        if x.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroPoint);
        }
        let rank = self.pencil.evaluate(x)?.rank();
        let values = HomogPoly::evaluate_all(&self.minors, x)?;
        let vanishing = values.iter().filter(|v| v.is_zero()).count();
        let on_locus = rank < self.pencil.cols();
        if on_locus != (vanishing == values.len()) {
            return Err(Error::Invariant(format!(
                "rank {rank} disagrees with {vanishing}/{} vanishing minors",
                values.len()
            )));
        }
        Ok(Incidence {
            rank,
            on_locus,
            vanishing_minors: vanishing,
            total_minors: values.len(),
        })
    }
}

pub fn incidence_check(pencil: &LinearPencilMatrix, x: &[Scalar]) -> Result<Incidence> {
    IncidenceChecker::new(pencil.clone()).check(x)
}

/// The plane embedded by the forms of degree `(n-1)/2`, projected from the
/// span of the order-`(n-5)/2` partials of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionDatum {
    pub n: usize,
    pub g: HomogPoly,
    pub center: GradedSlice,
    /// The `n` forms defining the map to `P(V)`.
    pub complement: GradedSlice,
    /// Dimension of the Veronese embedding's target, `C((n-1)/2 + 2, 2) - 1`.
    pub r: usize,
}

pub fn veronese_projection(g: &HomogPoly) -> Result<ProjectionDatum> {
    if g.alphabet() != Alphabet::y(3) {
        return Err(Error::AlphabetMismatch(
            Alphabet::y(3).to_string(),
            g.alphabet().to_string(),
        ));
    }
    let n = g.degree() + 3;
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::Unsupported(format!(
            "the projection needs odd n >= 5, got {n}"
        )));
    }
    g.field().require_invertible_up_to(n - 3)?;
    let dual = g.mirror()?;
    let cat = catalecticant_rank(&dual)?;
    if !cat.is_nondegenerate() {
        return Err(Error::DegenerateForm {
            rank: cat.rank,
            full: cat.full,
        });
    }
    let center = partials(g, (n - 5) / 2)?;
    let complement = perp_slice(&dual, (n - 1) / 2)?;
    let r = binomial((n as i64 - 1) / 2 + 2, 2) as usize - 1;
    let total = center.sum(&complement)?;
    if center.dim() + complement.dim() != r + 1 || total.dim() != r + 1 {
        return Err(Error::DegenerateInput(format!(
            "center ({}) and forms ({}) do not split the space of dimension {}",
            center.dim(),
            complement.dim(),
            r + 1
        )));
    }
    Ok(ProjectionDatum {
        n,
        g: g.clone(),
        center,
        complement,
        r,
    })
}

/// A skew matrix realizing the projection, with the change of basis `A` taking
/// its signed sub-Pfaffians `s` to the projection forms: `f = A s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageWitness {
    pub matrix: SkewLinearMatrix,
    pub a: ExactMatrix,
    /// `(A^{-1})^T N A^{-1}`, whose signed sub-Pfaffians are `det(A)^{-1} f`.
    pub transported: SkewLinearMatrix,
    pub slices_equal: bool,
}

pub fn verify_in_image(datum: &ProjectionDatum) -> Result<ImageWitness> {
    let (matrix, _) = form_to_matrix(&datum.g.mirror()?)?;
    let field = matrix.field();
    let s = matrix.signed_sub_pfaffians()?;
    let f = datum.complement.polys();
    let rows = s[0].coeffs().len();
    let basis = ExactMatrix::from_columns(
        field,
        rows,
        &s.iter().map(|p| p.coeffs().to_vec()).collect::<Vec<_>>(),
    )?;
    let mut a_rows = Vec::with_capacity(f.len());
    for fi in &f {
        match basis.solve(fi.coeffs())? {
            Some(coords) => a_rows.push(coords),
            None => {
                return Err(Error::Invariant(
                    "projection form outside the span of the sub-Pfaffians".into(),
                ))
            }
        }
    }
    let a = ExactMatrix::from_rows(field, a_rows)?;
    let det = a.determinant()?;
    if det.is_zero() {
        return Err(Error::Invariant("change of basis is singular".into()));
    }
    let transported = matrix.congruence_transport(&a)?;
    let s2 = transported.signed_sub_pfaffians()?;
    for (fi, si) in f.iter().zip(&s2) {
        if si.scale(&det) != *fi {
            return Err(Error::Invariant(
                "transported sub-Pfaffians are not the projection forms".into(),
            ));
        }
    }
    let eq = slices_equal(&pfaffian_slice(&matrix)?, &datum.complement)?;
    Ok(ImageWitness {
        matrix,
        a,
        transported,
        slices_equal: eq,
    })
}

/// One point `y` of the Pfaffian curve with the kernel samples above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollPoint {
    pub y: Vec<Scalar>,
    pub kernel_dim: usize,
    pub samples: Vec<(Vec<Scalar>, Incidence)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollSample {
    pub p: u64,
    pub curve: HomogPoly,
    pub points: Vec<ScrollPoint>,
    /// Curve points whose kernel was not 2-dimensional.
    pub skipped: usize,
    /// Points of `P²(F_p)` examined before stopping.
    pub scanned: u64,
}

impl ScrollSample {
    pub fn all_pass(&self) -> bool {
        self.points
            .iter()
            .all(|pt| pt.samples.iter().all(|(_, inc)| inc.on_locus))
    }
}

/// Pfaffian of a matrix of linear forms in three variables, evaluated with
/// plain modular integer arithmetic.
struct ModForm {
    p: u64,
    terms: Vec<(u64, [u32; 3])>,
}

impl ModForm {
    fn new(f: &HomogPoly, p: u64) -> Self {
        let terms = f
            .terms()
            .into_iter()
            .map(|(c, e)| {
                let v = match c {
                    Scalar::Mod { value, .. } => value as u64,
                    Scalar::Rat(_) => unreachable!("prime field form"),
                };
                (v, [e[0], e[1], e[2]])
            })
            .collect();
        ModForm { p, terms }
    }

    fn eval(&self, pt: [u64; 3], pows: &mut [Vec<u64>; 3]) -> u64 {
        let p = self.p;
        for (i, pw) in pows.iter_mut().enumerate() {
            let mut acc = 1;
            for slot in pw.iter_mut() {
                *slot = acc;
                acc = acc * pt[i] % p;
            }
        }
        self.terms.iter().fold(0, |acc, (c, e)| {
            let t = c * pows[0][e[0] as usize] % p * pows[1][e[1] as usize] % p
                * pows[2][e[2] as usize]
                % p;
            (acc + t) % p
        })
    }
}

/// Points of `P²(F_p)` in scan order: `[1:a:b]` for all `a, b`, then
/// `[0:1:b]`, then `[0:0:1]`. Row `a` of the first chart is index `a`,
/// the line at infinity is index `p`.
fn scan_row(form: &ModForm, row: u64) -> Vec<[u64; 3]> {
    let p = form.p;
    let deg = form.terms.first().map_or(0, |(_, e)| e.iter().sum::<u32>()) as usize;
    let mut pows = [vec![0; deg + 1], vec![0; deg + 1], vec![0; deg + 1]];
    let mut out = Vec::new();
    if row < p {
        for b in 0..p {
            let pt = [1, row, b];
            if form.eval(pt, &mut pows) == 0 {
                out.push(pt);
            }
        }
    } else {
        for b in 0..p {
            let pt = [0, 1, b];
            if form.eval(pt, &mut pows) == 0 {
                out.push(pt);
            }
        }
        if form.eval([0, 0, 1], &mut pows) == 0 {
            out.push([0, 0, 1]);
        }
    }
    out
}

/// Samples the scroll over the Pfaffian curve of an even-order matrix over
/// F_p: scans `P²(F_p)` in a fixed order until `max_points` curve points with
/// 2-dimensional kernel are found, and checks `x`-points on each kernel line
/// against the flipped matrix.
pub fn even_scroll_sample(matrix: &SkewLinearMatrix, max_points: usize) -> Result<ScrollSample> {
    let n = matrix.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    if matrix.m() != 3 {
        return Err(Error::Unsupported(
            "the scroll sampler needs three variables".into(),
        ));
    }
    let Field::Prime(p) = matrix.field() else {
        return Err(Error::Unsupported(
            "the scroll sampler runs over F_p only".into(),
        ));
    };
    let p = p as u64;
    let field = matrix.field();
    let curve = matrix.pfaffian()?;
    let form = ModForm::new(&curve, p);
    let checker = IncidenceChecker::new(matrix.flip());

    const BATCH: u64 = 16;
    let mut points = Vec::new();
    let mut skipped = 0;
    let mut scanned = 0u64;
    let mut row = 0u64;
    'scan: while row <= p && points.len() < max_points {
        let end = (row + BATCH).min(p + 1);
        let hits: Vec<Vec<[u64; 3]>> = (row..end)
            .into_par_iter()
            .map(|r| scan_row(&form, r))
            .collect();
        for (r, found) in (row..end).zip(hits) {
            scanned += if r < p { p } else { p + 1 };
            for pt in found {
                let y: Vec<Scalar> = pt.iter().map(|&v| field.from_i64(v as i64)).collect();
                let kernel = matrix.evaluate(&y)?.kernel_basis();
                if kernel.cols() != 2 {
                    skipped += 1;
                    continue;
                }
                let b0 = kernel.column(0);
                let b1 = kernel.column(1);
                let sum: Vec<Scalar> = b0.iter().zip(&b1).map(|(u, v)| u + v).collect();
                let samples = [b0, b1, sum]
                    .into_iter()
                    .map(|x| checker.check(&x).map(|inc| (x, inc)))
                    .collect::<Result<Vec<_>>>()?;
                points.push(ScrollPoint {
                    y,
                    kernel_dim: 2,
                    samples,
                });
                if points.len() == max_points {
                    break 'scan;
                }
            }
        }
        row = end;
    }
    if points.is_empty() {
        return Err(Error::NoPointsFound { p });
    }
    Ok(ScrollSample {
        p,
        curve,
        points,
        skipped,
        scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::normalize;
    use crate::correspondence::matrix_to_form;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn profiles() {
        let p = locus_profile(4, 6).unwrap();
        assert!(p.smooth);
        assert_eq!(p.dim_x, 3);
        let p = locus_profile(5, 7).unwrap();
        assert!(!p.smooth);
        assert_eq!(p.codim_sing, 4);
        for n in 5..15 {
            assert!(locus_profile(3, n).unwrap().smooth);
        }
        assert_eq!(locus_profile(2, 5), Err(Error::Range { m: 2, n: 5 }));
        assert_eq!(locus_profile(5, 6), Err(Error::Range { m: 5, n: 6 }));
        for n in 5..=15 {
            for m in 3..n - 1 {
                let p = locus_profile(m, n).unwrap();
                assert!(p.codim_sing >= 3);
                assert_eq!(p.smooth, p.second_locus_empty);
            }
        }
    }

    #[test]
    fn parametrized_points_are_on_the_locus() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let m = SkewLinearMatrix::random(Field::fp(), 5, 3, &mut rng);
        let sample = parametrization_points(&m, 20, &mut rng).unwrap();
        assert_eq!(sample.pairs.len(), 20);
        assert_eq!(sample.skipped, 0);
        let checker = IncidenceChecker::new(m.flip());
        for (_, x) in &sample.pairs {
            let inc = checker.check(x).unwrap();
            assert!(inc.on_locus);
            assert_eq!(inc.vanishing_minors, 10);
        }
        let random: Vec<Scalar> = (0..5).map(|_| Field::fp().random(&mut rng)).collect();
        assert_eq!(checker.check(&random).unwrap().rank, 3);
        assert_eq!(
            checker.check(&vec![Field::fp().zero(); 5]),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn projections() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for (n, center) in [(5, 1), (7, 3), (9, 6)] {
            let field = Field::fp();
            let y = Alphabet::y(3);
            let c = (0..y.dim(n - 3)).map(|_| field.random(&mut rng)).collect();
            let g = HomogPoly::from_coeffs(field, y, n - 3, c).unwrap();
            let datum = veronese_projection(&g).unwrap();
            assert_eq!(datum.center.dim(), center);
            assert_eq!(datum.center.dim() + n, datum.r + 1);
            let w = verify_in_image(&datum).unwrap();
            assert!(w.slices_equal);
            let (f, _) = matrix_to_form(&w.transported).unwrap();
            assert_eq!(f, normalize(g.mirror().unwrap()).unwrap());
        }
        let deg = crate::poly::parse_poly(Field::Rational, Alphabet::y(3), "y0^4", None).unwrap();
        assert!(matches!(
            veronese_projection(&deg),
            Err(Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn conic_projection() {
        let g =
            crate::poly::parse_poly(Field::Rational, Alphabet::y(3), "y0^2 + y1^2 + y2^2", None)
                .unwrap();
        let datum = veronese_projection(&g).unwrap();
        assert_eq!(datum.center.polys(), vec![g.clone()]);
        assert_eq!(datum.r, 5);
        assert!(verify_in_image(&datum).unwrap().slices_equal);
    }

    #[test]
    fn scroll_over_small_prime() {
        let field = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = SkewLinearMatrix::random(field, 6, 3, &mut rng);
        let sample = even_scroll_sample(&m, 10).unwrap();
        assert_eq!(sample.curve.degree(), 3);
        assert!(!sample.points.is_empty());
        assert!(sample.all_pass());
        for pt in &sample.points {
            assert!(sample.curve.evaluate(&pt.y).unwrap().is_zero());
        }
        // Off the curve the kernel is zero.
        let off = (0..)
            .map(|_| (0..3).map(|_| field.random(&mut rng)).collect::<Vec<_>>())
            .find(|y| !sample.curve.evaluate(y).unwrap().is_zero())
            .unwrap();
        assert_eq!(m.evaluate(&off).unwrap().rank(), 6);
        assert!(matches!(
            even_scroll_sample(
                &SkewLinearMatrix::random(Field::Rational, 6, 3, &mut rng),
                1
            ),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn scan_is_deterministic() {
        let field = Field::fp();
        let m = SkewLinearMatrix::random(field, 8, 3, &mut ChaCha8Rng::seed_from_u64(2));
        let a = even_scroll_sample(&m, 5).unwrap();
        let b = even_scroll_sample(&m, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.points.len(), 5);
        assert!(a.all_pass());
    }
}
