//! JSON object files.
//!
//! Every object the CLI touches has a file form with scalars as canonical
//! strings (integers and residues as decimals, rationals as `p/q`,
//! polynomials as coefficient-string arrays indexed by degree).  Matrices
//! are sparse triples `[row, col, scalar]`; the ambient ring is declared
//! once per file.  Serialization is canonical: keys sorted, entries in
//! row-major order, no timestamps, so equal objects produce byte-equal
//! files.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlin::{BaseRing, Scalar, SparseMatrix};
use crate::hopf::{AssocAlgebraData, HopfAlgebraData};
use crate::modsys::{IndSystem, ProSystem};
use crate::motive::HopfPairing;
use crate::proalg::ProAlgebraPresentation;

/// A scalar in a file: one canonical string, or coefficient strings for
/// polynomial entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Text(String),
    Coeffs(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, ScalarRepr)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopfFile {
    pub ring: String,
    pub basis: Vec<String>,
    pub mul: MatrixFile,
    pub unit: MatrixFile,
    pub comul: MatrixFile,
    pub counit: MatrixFile,
    pub antipode: MatrixFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub ring: String,
    pub basis: Vec<String>,
    pub mul: MatrixFile,
    pub unit: MatrixFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemFile {
    pub ring: String,
    pub ranks: Vec<usize>,
    pub transitions: Vec<MatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<MatrixFile>,
    pub direction: String,
}

/// A Hopf algebra referenced from a pairing file: inline or by path
/// (resolved relative to the referencing file).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HopfRef {
    Path(String),
    Inline(HopfFile),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairingFile {
    #[serde(rename = "A")]
    pub a: HopfRef,
    #[serde(rename = "B")]
    pub b: HopfRef,
    pub u: MatrixFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub ring: String,
    pub ranks: Vec<usize>,
    pub transitions: Vec<MatrixFile>,
    pub mults: Vec<MatrixFile>,
    pub units: Vec<MatrixFile>,
}

fn scalar_to_repr(s: &Scalar) -> ScalarRepr {
    match s.to_json_string() {
        Some(text) => ScalarRepr::Text(text),
        None => ScalarRepr::Coeffs(s.to_coeff_strings().expect("poly scalar")),
    }
}

fn scalar_from_repr(ring: BaseRing, repr: &ScalarRepr) -> Result<Scalar> {
    match repr {
        ScalarRepr::Text(text) => Scalar::parse(ring, text),
        ScalarRepr::Coeffs(coeffs) => {
            if ring != BaseRing::RationalPolynomials {
                return Err(Error::Invalid(format!(
                    "coefficient-array scalar in a file over {}",
                    ring.token()
                )));
            }
            Scalar::parse_poly(coeffs)
        }
    }
}

pub fn matrix_to_file(m: &SparseMatrix) -> MatrixFile {
    MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .iter()
            .map(|(i, j, v)| (i, j, scalar_to_repr(v)))
            .collect(),
    }
}

pub fn matrix_from_file(ring: BaseRing, f: &MatrixFile) -> Result<SparseMatrix> {
    let mut entries = Vec::with_capacity(f.entries.len());
    for (i, j, repr) in &f.entries {
        entries.push((*i, *j, scalar_from_repr(ring, repr)?));
    }
    SparseMatrix::from_entries(ring, f.rows, f.cols, entries)
}

pub fn hopf_to_file(h: &HopfAlgebraData) -> HopfFile {
    HopfFile {
        ring: h.ring.token(),
        basis: h.basis_labels.clone(),
        mul: matrix_to_file(&h.mul),
        unit: matrix_to_file(&h.unit),
        comul: matrix_to_file(&h.comul),
        counit: matrix_to_file(&h.counit),
        antipode: matrix_to_file(&h.antipode),
    }
}

pub fn hopf_from_file(f: &HopfFile) -> Result<HopfAlgebraData> {
    let ring = BaseRing::parse_token(&f.ring)?;
    HopfAlgebraData::new(
        ring,
        f.basis.clone(),
        matrix_from_file(ring, &f.mul)?,
        matrix_from_file(ring, &f.unit)?,
        matrix_from_file(ring, &f.comul)?,
        matrix_from_file(ring, &f.counit)?,
        matrix_from_file(ring, &f.antipode)?,
    )
}

pub fn algebra_to_file(a: &AssocAlgebraData) -> AlgebraFile {
    AlgebraFile {
        ring: a.ring.token(),
        basis: a.basis_labels.clone(),
        mul: matrix_to_file(&a.mul),
        unit: matrix_to_file(&a.unit),
    }
}

pub fn algebra_from_file(f: &AlgebraFile) -> Result<AssocAlgebraData> {
    let ring = BaseRing::parse_token(&f.ring)?;
    AssocAlgebraData::new(
        ring,
        f.basis.clone(),
        matrix_from_file(ring, &f.mul)?,
        matrix_from_file(ring, &f.unit)?,
    )
}

/// A parsed system file, tagged with its declared direction.
#[derive(Debug, Clone)]
pub enum SystemKind {
    Ind(IndSystem),
    Pro(ProSystem),
}

pub fn ind_system_to_file(s: &IndSystem) -> SystemFile {
    SystemFile {
        ring: s.ring().token(),
        ranks: s.ranks().to_vec(),
        transitions: s.transitions().iter().map(matrix_to_file).collect(),
        tail: None,
        direction: "ind".into(),
    }
}

pub fn pro_system_to_file(s: &ProSystem) -> SystemFile {
    SystemFile {
        ring: s.ring().token(),
        ranks: s.ranks().to_vec(),
        transitions: s.transitions().iter().map(matrix_to_file).collect(),
        tail: s.tail().map(matrix_to_file),
        direction: "pro".into(),
    }
}

pub fn system_from_file(f: &SystemFile) -> Result<SystemKind> {
    let ring = BaseRing::parse_token(&f.ring)?;
    let transitions = f
        .transitions
        .iter()
        .map(|m| matrix_from_file(ring, m))
        .collect::<Result<Vec<_>>>()?;
    match f.direction.as_str() {
        "ind" => {
            if f.tail.is_some() {
                return Err(Error::Invalid("ind systems do not carry a tail".into()));
            }
            Ok(SystemKind::Ind(IndSystem::new(
                ring,
                f.ranks.clone(),
                transitions,
            )?))
        }
        "pro" => {
            let tail = f
                .tail
                .as_ref()
                .map(|m| matrix_from_file(ring, m))
                .transpose()?;
            Ok(SystemKind::Pro(ProSystem::new(
                ring,
                f.ranks.clone(),
                transitions,
                tail,
            )?))
        }
        other => Err(Error::Invalid(format!(
            "direction must be \"ind\" or \"pro\", not {other:?}"
        ))),
    }
}

pub fn pairing_to_file(p: &HopfPairing) -> PairingFile {
    PairingFile {
        a: HopfRef::Inline(hopf_to_file(&p.a)),
        b: HopfRef::Inline(hopf_to_file(&p.b)),
        u: matrix_to_file(&p.u),
    }
}

fn resolve_hopf_ref(r: &HopfRef, base: &Path) -> Result<HopfAlgebraData> {
    match r {
        HopfRef::Inline(f) => hopf_from_file(f),
        HopfRef::Path(p) => {
            let file: HopfFile = read_json(&base.join(p))?;
            hopf_from_file(&file)
        }
    }
}

/// Resolves a pairing file; path references are taken relative to `base`.
pub fn pairing_from_file(f: &PairingFile, base: &Path) -> Result<HopfPairing> {
    let a = resolve_hopf_ref(&f.a, base)?;
    let b = resolve_hopf_ref(&f.b, base)?;
    let u = matrix_from_file(a.ring, &f.u)?;
    HopfPairing::new(a, b, u)
}

pub fn presentation_to_file(p: &ProAlgebraPresentation) -> PresentationFile {
    PresentationFile {
        ring: p.ring().token(),
        ranks: p.ranks().to_vec(),
        transitions: (0..p.stages() - 1)
            .map(|i| matrix_to_file(p.transition(i)))
            .collect(),
        mults: (0..p.stages() - 1)
            .map(|i| matrix_to_file(p.mult(i)))
            .collect(),
        units: (0..p.stages())
            .map(|i| matrix_to_file(p.unit(i)))
            .collect(),
    }
}

pub fn presentation_from_file(f: &PresentationFile) -> Result<ProAlgebraPresentation> {
    let ring = BaseRing::parse_token(&f.ring)?;
    let load = |ms: &[MatrixFile]| -> Result<Vec<SparseMatrix>> {
        ms.iter().map(|m| matrix_from_file(ring, m)).collect()
    };
    ProAlgebraPresentation::new(
        ring,
        f.ranks.clone(),
        load(&f.transitions)?,
        load(&f.mults)?,
        load(&f.units)?,
    )
}

/// Reads and deserializes a JSON file; parse problems come back as
/// [`Error::Invalid`] so callers can treat them as malformed input.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Invalid(format!("cannot parse {}: {}", path.display(), e)))
}

/// Canonical serialization: route through `serde_json::Value` so object
/// keys come out sorted regardless of struct declaration order.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable value");
    let mut text = serde_json::to_string_pretty(&v).expect("serializable value");
    text.push('\n');
    text
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, canonical_json(value))
        .map_err(|e| Error::Invalid(format!("cannot write {}: {}", path.display(), e)))
}

/// Canonical value form, for embedding objects inside reports.
pub fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable value")
}
