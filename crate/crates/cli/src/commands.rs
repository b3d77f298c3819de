use anyhow::Context;
use degenlab::apolarity::normalize;
use degenlab::cohomology::{
    chase_sheaf, dimension_ledger, h0f, sheaf_tables, DimensionLedger, SheafTable, TraceStep,
    YSheaf, H0F,
};
use degenlab::correspondence::{form_to_matrix, matrix_to_form, CorrespondenceCertificate};
use degenlab::degeneracy::{
    check_range, even_scroll_sample, locus_profile, parametrization_points, verify_in_image,
    veronese_projection, Incidence, IncidenceChecker, LocusProfile,
};
use degenlab::poly::PolyJson;
use degenlab::random::{seeded_rng, RNG_NAME};
use degenlab::skew::MatrixFile;
use degenlab::{Alphabet, Field, HomogPoly, Scalar, SkewLinearMatrix};
use rayon::prelude::*;
use serde::Serialize;

use crate::input;
use crate::{Common, FormInput, MatrixInput};

/// Streams at or above this offset drive point sampling, below it instance generation.
const POINT_STREAM: u64 = 1 << 32;

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn require_n(c: &Common) -> anyhow::Result<usize> {
    c.n.context("--n is required here")
}

/// Runs `f` over `0..count` on the worker pool and returns results in index
/// order; the first failure by index wins, so errors are deterministic too.
fn fan_out<T: Send>(
    count: usize,
    f: impl Fn(usize) -> anyhow::Result<T> + Sync + Send,
) -> anyhow::Result<Vec<T>> {
    let results: Vec<anyhow::Result<T>> = (0..count).into_par_iter().map(f).collect();
    results.into_iter().collect()
}

#[derive(Serialize)]
struct RandomReport {
    generator: &'static str,
    seed: u64,
    field: String,
    m: usize,
    n: usize,
    profile: LocusProfile,
    instances: Vec<RandomInstance>,
}

#[derive(Serialize)]
struct RandomInstance {
    trial: usize,
    matrix: MatrixFile,
    flipped: MatrixFile,
}

pub fn random(c: &Common) -> anyhow::Result<String> {
    let field = c.field()?;
    let n = require_n(c)?;
    let m = c.m.unwrap_or(3);
    check_range(m, n)?;
    let instances = fan_out(c.trials, |t| {
        let matrix = SkewLinearMatrix::random(field, n, m, &mut seeded_rng(c.seed, t as u64));
        Ok(RandomInstance {
            trial: t,
            flipped: MatrixFile::from_pencil(&matrix.flip()),
            matrix: MatrixFile::from_skew(&matrix),
        })
    })?;
    json(&RandomReport {
        generator: RNG_NAME,
        seed: c.seed,
        field: field.to_string(),
        m,
        n,
        profile: locus_profile(m, n)?,
        instances,
    })
}

/// Matrices from `--input`, or `--trials` seeded ones with `m = 3`.
fn load_matrices(i: &MatrixInput, field: Field) -> anyhow::Result<Vec<SkewLinearMatrix>> {
    match &i.input {
        Some(path) => input::matrices(path, field),
        None => {
            let n = require_n(&i.common)?;
            check_range(3, n)?;
            fan_out(i.common.trials, |t| {
                Ok(SkewLinearMatrix::random(
                    field,
                    n,
                    3,
                    &mut seeded_rng(i.common.seed, t as u64),
                ))
            })
        }
    }
}

/// Forms from `--form`/`--input`, or `--trials` seeded ones of degree `n - 3`.
fn load_forms(i: &FormInput, field: Field, alphabet: Alphabet) -> anyhow::Result<Vec<HomogPoly>> {
    if i.form.is_some() || i.input.is_some() {
        return Ok(vec![input::form(
            i.form.as_deref(),
            i.input.as_deref(),
            field,
            alphabet,
        )?]);
    }
    let n = require_n(&i.common)?;
    check_range(3, n)?;
    fan_out(i.common.trials, |t| {
        Ok(HomogPoly::random(
            field,
            alphabet,
            n - 3,
            &mut seeded_rng(i.common.seed, t as u64),
        ))
    })
}

#[derive(Serialize)]
struct CorrespondReport {
    generator: &'static str,
    seed: u64,
    direction: &'static str,
    certificates: Vec<CertificateEntry>,
}

#[derive(Serialize)]
struct CertificateEntry {
    trial: usize,
    form_json: PolyJson,
    certificate: CorrespondenceCertificate,
}

pub fn from_matrix(i: &MatrixInput) -> anyhow::Result<String> {
    let field = i.common.field()?;
    let matrices = load_matrices(i, field)?;
    let certificates = fan_out(matrices.len(), |t| {
        let (form, certificate) = matrix_to_form(&matrices[t])?;
        Ok(CertificateEntry {
            trial: t,
            form_json: PolyJson::from_poly(&form),
            certificate,
        })
    })?;
    json(&CorrespondReport {
        generator: RNG_NAME,
        seed: i.common.seed,
        direction: "from-matrix",
        certificates,
    })
}

pub fn from_form(i: &FormInput) -> anyhow::Result<String> {
    let field = i.common.field()?;
    let forms = load_forms(i, field, Alphabet::dual(3))?;
    let certificates = fan_out(forms.len(), |t| {
        let (_, certificate) = form_to_matrix(&forms[t])?;
        Ok(CertificateEntry {
            trial: t,
            form_json: PolyJson::from_poly(&normalize(forms[t].clone())?),
            certificate,
        })
    })?;
    json(&CorrespondReport {
        generator: RNG_NAME,
        seed: i.common.seed,
        direction: "from-form",
        certificates,
    })
}

#[derive(Serialize)]
struct ProjectReport {
    generator: &'static str,
    seed: u64,
    field: String,
    projections: Vec<Projection>,
}

#[derive(Serialize)]
struct Projection {
    trial: usize,
    n: usize,
    g: String,
    r: usize,
    center_dim: usize,
    center: Vec<String>,
    forms: Vec<String>,
    witness: Witness,
    report: &'static str,
}

#[derive(Serialize)]
struct Witness {
    matrix: MatrixFile,
    /// Change of basis taking the signed sub-Pfaffians to the projection forms.
    a: Vec<Vec<String>>,
    det_a: String,
    transported: MatrixFile,
    slices_equal: bool,
}

pub fn project(i: &FormInput) -> anyhow::Result<String> {
    let field = i.common.field()?;
    let forms = load_forms(i, field, Alphabet::y(3))?;
    let projections = fan_out(forms.len(), |t| {
        let datum = veronese_projection(&forms[t])?;
        let w = verify_in_image(&datum)?;
        Ok(Projection {
            trial: t,
            n: datum.n,
            g: datum.g.to_string(),
            r: datum.r,
            center_dim: datum.center.dim(),
            center: datum.center.to_strings(),
            forms: datum.complement.to_strings(),
            report: if w.slices_equal { "OK" } else { "MISMATCH" },
            witness: Witness {
                matrix: MatrixFile::from_skew(&w.matrix),
                det_a: w.a.determinant()?.to_string(),
                a: w.a.to_strings(),
                transported: MatrixFile::from_skew(&w.transported),
                slices_equal: w.slices_equal,
            },
        })
    })?;
    json(&ProjectReport {
        generator: RNG_NAME,
        seed: i.common.seed,
        field: field.to_string(),
        projections,
    })
}

#[derive(Serialize)]
struct SampleReport {
    generator: &'static str,
    seed: u64,
    campaigns: Vec<Campaign>,
}

#[derive(Serialize)]
struct Campaign {
    trial: usize,
    n: usize,
    field: String,
    /// `parametrization` for odd `n`, `scroll` for even `n`.
    kind: &'static str,
    /// Pfaffian curve, for even `n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    curve: Option<String>,
    checked: usize,
    passed: usize,
    skipped: usize,
    points: Vec<SampledPoint>,
}

#[derive(Serialize)]
struct SampledPoint {
    y: Vec<String>,
    x: Vec<String>,
    incidence: Incidence,
}

fn campaign(
    t: usize,
    matrix: &SkewLinearMatrix,
    seed: u64,
    points: usize,
) -> anyhow::Result<Campaign> {
    let n = matrix.n();
    let (kind, curve, skipped, pts) = if n % 2 == 1 {
        let checker = IncidenceChecker::new(matrix.flip());
        let sample = parametrization_points(
            matrix,
            points,
            &mut seeded_rng(seed, POINT_STREAM + t as u64),
        )?;
        let pts = sample
            .pairs
            .iter()
            .map(|(y, x)| {
                Ok(SampledPoint {
                    y: strings(y),
                    x: strings(x),
                    incidence: checker.check(x)?,
                })
            })
            .collect::<degenlab::Result<Vec<_>>>()?;
        ("parametrization", None, sample.skipped, pts)
    } else {
        let sample = even_scroll_sample(matrix, points)?;
        let pts = sample
            .points
            .into_iter()
            .flat_map(|pt| {
                let y = strings(&pt.y);
                pt.samples
                    .into_iter()
                    .map(move |(x, incidence)| SampledPoint {
                        y: y.clone(),
                        x: strings(&x),
                        incidence,
                    })
            })
            .collect();
        (
            "scroll",
            Some(sample.curve.to_string()),
            sample.skipped,
            pts,
        )
    };
    Ok(Campaign {
        trial: t,
        n,
        field: matrix.field().to_string(),
        kind,
        curve,
        checked: pts.len(),
        passed: pts.iter().filter(|p| p.incidence.on_locus).count(),
        skipped,
        points: pts,
    })
}

pub fn sample(i: &MatrixInput, points: usize) -> anyhow::Result<String> {
    let field = i.common.field()?;
    let matrices = load_matrices(i, field)?;
    let campaigns = fan_out(matrices.len(), |t| {
        campaign(t, &matrices[t], i.common.seed, points)
    })?;
    json(&SampleReport {
        generator: RNG_NAME,
        seed: i.common.seed,
        campaigns,
    })
}

#[derive(Serialize)]
struct CohomologyReport {
    m: usize,
    n: usize,
    tables: Vec<SheafTable>,
    traces: Vec<SheafTrace>,
    h0f: H0F,
    ledger: DimensionLedger,
}

#[derive(Serialize)]
struct SheafTrace {
    sheaf: YSheaf,
    steps: Vec<TraceStep>,
}

/// Admissible `(m, n)` with `5 <= n <= n_max`, optionally for one `m`.
fn grid(n_max: usize, only_m: Option<usize>) -> Vec<(usize, usize)> {
    (5..=n_max)
        .flat_map(|n| (3..n - 1).map(move |m| (m, n)))
        .filter(|&(m, _)| only_m.is_none_or(|x| x == m))
        .collect()
}

fn format_bounds(b: &degenlab::cohomology::BoundedCohomVector) -> String {
    b.0.iter()
        .map(|iv| format_range(iv.lo, iv.hi))
        .collect::<Vec<_>>()
        .join(";")
}

fn format_range<T: ToString + PartialEq>(lo: T, hi: T) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{}..{}", lo.to_string(), hi.to_string())
    }
}

fn grid_csv(c: &Common) -> anyhow::Result<String> {
    let cells = grid(c.n.unwrap_or(12), c.m);
    let rows = fan_out(cells.len(), |k| {
        let (m, n) = cells[k];
        let ledger = dimension_ledger(m, n)?;
        let mut lines = String::new();
        for t in sheaf_tables(m, n)? {
            let closed: Vec<String> = t.closed_form.iter().map(u64::to_string).collect();
            lines.push_str(&format!(
                "{m},{n},\"{}\",{},{},{},{},{},{},{}\n",
                t.sheaf.name(),
                format_bounds(&t.chase),
                closed.join(";"),
                t.agree,
                format_range(ledger.h0f.lo, ledger.h0f.hi),
                ledger.dim_gr,
                format_range(ledger.delta.0, ledger.delta.1),
                ledger.flagged
            ));
        }
        Ok(lines)
    })?;
    let mut out = String::from("m,n,sheaf,chase,closed_form,agree,h0F,dimGr,delta,flagged\n");
    out.extend(rows);
    Ok(out)
}

pub fn cohomology(c: &Common, sweep: bool) -> anyhow::Result<String> {
    if sweep {
        return grid_csv(c);
    }
    let (m, n) = (c.m.context("--m is required here")?, require_n(c)?);
    check_range(m, n)?;
    let traces = YSheaf::ALL
        .iter()
        .map(|&sheaf| {
            Ok(SheafTrace {
                sheaf,
                steps: chase_sheaf(m, n, sheaf)?.1,
            })
        })
        .collect::<degenlab::Result<Vec<_>>>()?;
    json(&CohomologyReport {
        m,
        n,
        tables: sheaf_tables(m, n)?,
        traces,
        h0f: h0f(m, n)?,
        ledger: dimension_ledger(m, n)?,
    })
}

pub fn ledger(c: &Common) -> anyhow::Result<String> {
    if let (Some(m), Some(n)) = (c.m, c.n) {
        check_range(m, n)?;
        return json(&dimension_ledger(m, n)?);
    }
    let cells = grid(c.n.unwrap_or(12), c.m);
    let ledgers = fan_out(cells.len(), |k| {
        Ok(dimension_ledger(cells[k].0, cells[k].1)?)
    })?;
    json(&ledgers)
}
