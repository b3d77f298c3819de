//! Loading matrices and forms from the JSON and text file formats.

use std::path::Path;

use anyhow::{bail, Context};
use degenlab::poly::{parse_poly, PolyJson};
use degenlab::skew::MatrixFile;
use degenlab::{Alphabet, Field, HomogPoly, SkewLinearMatrix};
use serde_json::Value;

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Finds every matrix in a document: a bare matrix file, anything with a
/// `matrix` member, or arrays of those under `instances`/`certificates`.
fn collect(value: &Value, out: &mut Vec<MatrixFile>) -> anyhow::Result<()> {
    let Some(obj) = value.as_object() else {
        bail!("expected a JSON object");
    };
    if obj.contains_key("entries") {
        out.push(serde_json::from_value(value.clone())?);
    } else if let Some(inner) = obj.get("matrix").or_else(|| obj.get("certificate")) {
        collect(inner, out)?;
    } else if let Some(list) = obj.get("instances").or_else(|| obj.get("certificates")) {
        for item in list.as_array().context("expected an array")? {
            collect(item, out)?;
        }
    } else {
        bail!("no matrix found in input");
    }
    Ok(())
}

pub fn matrices(path: &Path, default: Field) -> anyhow::Result<Vec<SkewLinearMatrix>> {
    let mut files = Vec::new();
    collect(&read_json(path)?, &mut files)?;
    files
        .iter()
        .map(|f| Ok(f.to_skew(f.field_or(default)?)?))
        .collect()
}

/// A form given inline, or in a file as text or as the JSON form format.
pub fn form(
    text: Option<&str>,
    path: Option<&Path>,
    field: Field,
    alphabet: Alphabet,
) -> anyhow::Result<HomogPoly> {
    let text = match (text, path) {
        (Some(t), _) => t.to_owned(),
        (None, Some(p)) => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        (None, None) => bail!("no form given"),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let json: PolyJson = serde_json::from_str(trimmed)?;
        let p = json.to_poly(field)?;
        if p.alphabet() != alphabet {
            return Err(degenlab::Error::AlphabetMismatch(
                alphabet.to_string(),
                p.alphabet().to_string(),
            )
            .into());
        }
        return Ok(p);
    }
    Ok(parse_poly(field, alphabet, trimmed, None)?)
}
