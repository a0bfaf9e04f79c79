use std::path::Path;

use actorkit::algebra::Coefficient;
use actorkit::{catalog, ActingMorphism, ActorElement, Algebra, Field, Matrix, Preset, Scalar, Variety};
use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

/// Loads an algebra from a JSON file, falling back to a bundled catalog stem.
pub fn load_algebra(spec: &str, field: Option<Field>) -> Result<Algebra> {
    if Path::new(spec).exists() {
        let a = Algebra::load(spec).with_context(|| format!("loading algebra {spec}"))?;
        return match field {
            Some(f) if f != a.field() => Ok(a.with_field(f)?),
            _ => Ok(a),
        };
    }
    let stem = spec.strip_suffix(".json").unwrap_or(spec);
    let stem = Path::new(stem).file_name().and_then(|s| s.to_str()).unwrap_or(stem);
    catalog::bundled(field.unwrap_or(Field::Rational))
        .into_iter()
        .find(|(name, _)| *name == stem)
        .map(|(_, a)| a)
        .ok_or_else(|| anyhow!("algebra file not found: {spec}"))
}

/// Resolves `--variety` (path or preset name) and `--preset`.
pub fn load_variety(variety: Option<&str>, preset: Option<Preset>, default: Option<Preset>) -> Result<Variety> {
    if let Some(p) = preset {
        return Ok(Variety::preset(p));
    }
    match variety {
        Some(v) if Path::new(v).exists() => Variety::load(v).with_context(|| format!("loading variety {v}")),
        Some(v) => {
            let stem = Path::new(v.strip_suffix(".json").unwrap_or(v))
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or(v)
                .to_string();
            stem.parse::<Preset>()
                .map(Variety::preset)
                .map_err(|_| anyhow!("variety file not found and not a preset name: {v}"))
        }
        None => {
            default.map(Variety::preset).ok_or_else(|| anyhow!("a variety is required: pass --variety or --preset"))
        }
    }
}

/// Comma-separated scalars such as `1,0,-1/2`.
pub fn parse_vector(src: &str, field: Field, dim: usize) -> Result<Vec<Scalar>> {
    let v: Vec<Scalar> = src
        .split(',')
        .map(|t| field.parse_scalar(t.trim()))
        .collect::<actorkit::Result<_>>()
        .with_context(|| format!("parsing vector {src:?}"))?;
    if v.len() != dim {
        bail!("vector {src:?} has {} entries, expected {dim}", v.len());
    }
    Ok(v)
}

pub fn budget(flag: Option<u64>) -> Result<u64> {
    match std::env::var("ACTORKIT_BUDGET") {
        Ok(s) => s.trim().parse().with_context(|| format!("ACTORKIT_BUDGET={s:?} is not a count")),
        Err(_) => Ok(flag.unwrap_or(actorkit::DEFAULT_BUDGET)),
    }
}

type Rows = Vec<Vec<Coefficient>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiFile {
    #[serde(default)]
    psi: Option<Vec<Vec<Coefficient>>>,
    #[serde(default)]
    actions: Option<Vec<ActionFile>>,
    #[serde(default)]
    der: Option<Vec<Rows>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    left: Rows,
    right: Rows,
}

fn scalar(field: Field, c: &Coefficient) -> Result<Scalar> {
    Ok(match c {
        Coefficient::Text(t) => field.parse_scalar(t)?,
        Coefficient::Integer(v) => field.from_i64(*v),
    })
}

fn matrix(field: Field, n: usize, rows: &Rows) -> Result<Matrix> {
    if rows.len() != n {
        bail!("matrix has {} rows, expected {n}", rows.len());
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|c| scalar(field, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, n, rows)?)
}

/// Reads an acting-morphism file: either `psi` (images in X of B's basis) or explicit actions.
pub fn load_phi(path: &str, b: &Algebra, x: &Algebra) -> Result<ActingMorphism> {
    let src = std::fs::read_to_string(path).with_context(|| format!("phi file not found: {path}"))?;
    let file: PhiFile = serde_json::from_str(&src).with_context(|| format!("parsing {path}"))?;
    let (field, n) = (x.field(), x.dim());
    match (file.psi, file.actions) {
        (Some(images), None) => {
            if file.der.is_some() {
                bail!("{path}: `der` is derived from `psi` and must not be given");
            }
            let cols = images
                .iter()
                .map(|img| {
                    if img.len() != n {
                        bail!("psi image has {} entries, expected {n}", img.len());
                    }
                    img.iter().map(|c| scalar(field, c)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            if cols.len() != b.dim() {
                bail!("psi lists {} images, expected {}", cols.len(), b.dim());
            }
            Ok(ActingMorphism::inner(b, x, &Matrix::from_columns(field, n, &cols))?)
        }
        (None, Some(actions)) => {
            let actions = actions
                .iter()
                .map(|a| Ok(ActorElement::new(matrix(field, n, &a.left)?, matrix(field, n, &a.right)?)))
                .collect::<Result<Vec<_>>>()?;
            let der =
                file.der.map(|d| d.iter().map(|m| matrix(field, n, m)).collect::<Result<Vec<_>>>()).transpose()?;
            Ok(ActingMorphism::new(b.clone(), x.clone(), actions, der)?)
        }
        _ => bail!("{path}: give exactly one of `psi` or `actions`"),
    }
}
