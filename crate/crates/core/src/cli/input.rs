//! Input documents: `{version, scalar, payload}` with all numbers given as
//! integers or `"p/q"` strings.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::conventions::Conventions;
use crate::liepoisson::algebra::LieAlgebra;
use crate::liepoisson::algebroid::AlgebroidPointData;
use crate::matrix::Matrix;
use crate::polysymplectic::PolyForm;
use crate::scalar::{Field, Tol};
use crate::subspaces::Subspace;

pub const SCHEMA_VERSION: &str = "1";

/// A number as written in the file.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Num(pub String);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string \"p/q\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(v.to_string()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Ok(Num(v.to_string()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                Ok(Num(v.to_string()))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDocument {
    pub version: String,
    pub scalar: Option<ScalarDoc>,
    pub payload: Payload,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarDoc {
    pub mode: String,
    #[serde(default)]
    pub epsilon: Option<Num>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    LieAlgebra(LieAlgebraDoc),
    AlgebroidPoint(AlgebroidDoc),
    Polyform(PolyformDoc),
    Subspace(SubspaceDoc),
    Dirac(DiracDoc),
    Reduction(ReductionDoc),
    Gstar(GstarDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::LieAlgebra(_) => "lie_algebra",
            Payload::AlgebroidPoint(_) => "algebroid_point",
            Payload::Polyform(_) => "polyform",
            Payload::Subspace(_) => "subspace",
            Payload::Dirac(_) => "dirac",
            Payload::Reduction(_) => "reduction",
            Payload::Gstar(_) => "gstar",
        }
    }
}

/// Brackets are `[α, β, γ, value]` meaning `[e_α, e_β]` has `value` on `e_γ`,
/// with 1-based indices.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub n: usize,
    #[serde(default)]
    pub brackets: Vec<(usize, usize, usize, Num)>,
}

/// Sparse 1-based entries: `rho` dense rows; `drho` as `[i, α, j, value]` for
/// `∂ⱼρⁱ_α`; `c` as brackets; `dc` as `[α, β, γ, i, value]` for `∂ᵢC^γ_{αβ}`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebroidDoc {
    pub m: usize,
    pub n: usize,
    pub rho: Vec<Vec<Num>>,
    #[serde(default)]
    pub drho: Vec<(usize, usize, usize, Num)>,
    #[serde(default)]
    pub c: Vec<(usize, usize, usize, Num)>,
    #[serde(default)]
    pub dc: Vec<(usize, usize, usize, usize, Num)>,
    #[serde(default)]
    pub fiber: Option<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PolyformDoc {
    pub m: usize,
    pub k: usize,
    pub matrices: Vec<Vec<Vec<Num>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub ambient: usize,
    pub basis: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DiracDoc {
    pub polyform: PolyformDoc,
    pub subspace: SubspaceDoc,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDoc {
    pub polyform: PolyformDoc,
    pub w: SubspaceDoc,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionDoc {
    pub polyform: PolyformDoc,
    pub w: SubspaceDoc,
    #[serde(default)]
    pub samples: Vec<SampleDoc>,
}

/// `algebra_ref` is a path relative to the document or a bundled name.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GstarDoc {
    #[serde(default)]
    pub algebra_ref: Option<String>,
    #[serde(default)]
    pub algebra: Option<LieAlgebraDoc>,
    #[serde(default)]
    pub k: Option<usize>,
    pub mu: Vec<Vec<Num>>,
}

/// Schema or value problem with a location.
#[derive(Clone, Debug, PartialEq)]
pub struct InputError {
    pub path: String,
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "line {l}, column {c}: ")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, "at `{}`: ", self.path)?;
        }
        write!(f, "{}", self.message)
    }
}

impl InputError {
    pub fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            path: path.into(),
            message: message.into(),
            line: None,
            column: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: String,
    #[serde(default)]
    scalar: Option<ScalarDoc>,
    payload: serde_json::Value,
}

fn located(e: serde_path_to_error::Error<serde_json::Error>, prefix: &str) -> InputError {
    let inner_path = e.path().to_string();
    let path = match (prefix, inner_path.as_str()) {
        ("", p) => p.to_string(),
        (pre, ".") => pre.to_string(),
        (pre, p) => format!("{pre}.{p}"),
    };
    let inner = e.into_inner();
    let mut message = inner.to_string();
    if let Some(i) = message.rfind(" at line ") {
        message.truncate(i);
    }
    let has_pos = inner.line() > 0;
    InputError {
        path,
        message,
        line: has_pos.then(|| inner.line()),
        column: has_pos.then(|| inner.column()),
    }
}

fn payload_part<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize(v).map_err(|e| located(e, "payload"))
}

/// Two passes: the envelope against the text (for line and column), then the
/// payload by kind (for the field path).
pub fn parse_document(text: &str) -> Result<InputDocument, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| located(e, ""))?;
    if raw.version != SCHEMA_VERSION {
        return Err(InputError::at(
            "version",
            format!("unsupported version {:?}, expected {SCHEMA_VERSION:?}", raw.version),
        ));
    }
    let mut body = raw.payload;
    let kind = match body.as_object_mut().map(|o| o.remove("kind")) {
        None => return Err(InputError::at("payload", "expected an object")),
        Some(None) => return Err(InputError::at("payload", "missing field `kind`")),
        Some(Some(serde_json::Value::String(k))) => k,
        Some(Some(_)) => return Err(InputError::at("payload.kind", "expected a string")),
    };
    let payload = match kind.as_str() {
        "lie_algebra" => Payload::LieAlgebra(payload_part(body)?),
        "algebroid_point" => Payload::AlgebroidPoint(payload_part(body)?),
        "polyform" => Payload::Polyform(payload_part(body)?),
        "subspace" => Payload::Subspace(payload_part(body)?),
        "dirac" => Payload::Dirac(payload_part(body)?),
        "reduction" => Payload::Reduction(payload_part(body)?),
        "gstar" => Payload::Gstar(payload_part(body)?),
        other => {
            return Err(InputError::at(
                "payload.kind",
                format!("unknown kind {other:?} (lie_algebra, algebroid_point, polyform, subspace, dirac, reduction, gstar)"),
            ))
        }
    };
    Ok(InputDocument {
        version: raw.version,
        scalar: raw.scalar,
        payload,
    })
}

pub fn num<T: Field>(x: &Num, path: &str) -> Result<T, InputError> {
    T::parse(&x.0).ok_or_else(|| InputError::at(path, format!("cannot parse {:?} as a number", x.0)))
}

pub fn vector<T: Field>(xs: &[Num], len: usize, path: &str) -> Result<Vec<T>, InputError> {
    if xs.len() != len {
        return Err(InputError::at(path, format!("expected {len} entries, found {}", xs.len())));
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| num(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn matrix<T: Field>(rows: &[Vec<Num>], r: usize, c: usize, path: &str) -> Result<Matrix<T>, InputError> {
    if rows.len() != r {
        return Err(InputError::at(path, format!("expected {r} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, row)| vector(row, c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<Vec<T>>, _>>()?;
    Ok(Matrix::from_fn(r, c, |i, j| rows[i][j].clone()))
}

fn index(i: usize, n: usize, path: &str) -> Result<usize, InputError> {
    if i == 0 || i > n {
        return Err(InputError::at(path, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

pub fn lie_algebra<T: Field>(doc: &LieAlgebraDoc, conv: Conventions, tol: Tol, path: &str) -> Result<LieAlgebra<T>, InputError> {
    let brackets = doc
        .brackets
        .iter()
        .enumerate()
        .map(|(i, (a, b, g, v))| {
            let p = format!("{path}.brackets[{i}]");
            Ok((
                index(*a, doc.n, &p)?,
                index(*b, doc.n, &p)?,
                index(*g, doc.n, &p)?,
                num(v, &p)?,
            ))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    LieAlgebra::from_brackets(doc.n, &brackets, conv, tol)
        .map_err(|e| InputError::at(format!("{path}.brackets"), e.to_string()))
}

pub fn polyform<T: Field>(doc: &PolyformDoc, conv: Conventions, tol: Tol, path: &str) -> Result<PolyForm<T>, InputError> {
    if doc.matrices.len() != doc.k {
        return Err(InputError::at(
            format!("{path}.matrices"),
            format!("expected k = {} matrices, found {}", doc.k, doc.matrices.len()),
        ));
    }
    let forms = doc
        .matrices
        .iter()
        .enumerate()
        .map(|(a, m)| matrix(m, doc.m, doc.m, &format!("{path}.matrices[{a}]")))
        .collect::<Result<Vec<_>, _>>()?;
    PolyForm::new(doc.m, forms, tol, conv).map_err(|e| InputError::at(format!("{path}.matrices"), e.to_string()))
}

pub fn subspace<T: Field>(doc: &SubspaceDoc, tol: Tol, path: &str) -> Result<Subspace<T>, InputError> {
    let vecs = doc
        .basis
        .iter()
        .enumerate()
        .map(|(i, v)| vector(v, doc.ambient, &format!("{path}.basis[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Subspace::span(doc.ambient, &vecs, tol).map_err(|e| InputError::at(path, e.to_string()))
}

pub fn algebroid<T: Field>(doc: &AlgebroidDoc, tol: Tol, path: &str) -> Result<AlgebroidPointData<T>, InputError> {
    let (m, n) = (doc.m, doc.n);
    let rho = matrix(&doc.rho, m, n, &format!("{path}.rho"))?;
    let mut drho = vec![T::zero(); m * n * m];
    for (e, (i, a, j, v)) in doc.drho.iter().enumerate() {
        let p = format!("{path}.drho[{e}]");
        let (i, a, j) = (index(*i, m, &p)?, index(*a, n, &p)?, index(*j, m, &p)?);
        drho[(i * n + a) * m + j] = num(v, &p)?;
    }
    let mut c = vec![T::zero(); n * n * n];
    for (e, (a, b, g, v)) in doc.c.iter().enumerate() {
        let p = format!("{path}.c[{e}]");
        let (a, b, g) = (index(*a, n, &p)?, index(*b, n, &p)?, index(*g, n, &p)?);
        let v: T = num(v, &p)?;
        c[(g * n + a) * n + b] = v.clone();
        c[(g * n + b) * n + a] = -v;
    }
    let mut dc = vec![T::zero(); n * n * n * m];
    for (e, (a, b, g, i, v)) in doc.dc.iter().enumerate() {
        let p = format!("{path}.dc[{e}]");
        let (a, b, g, i) = (index(*a, n, &p)?, index(*b, n, &p)?, index(*g, n, &p)?, index(*i, m, &p)?);
        let v: T = num(v, &p)?;
        dc[((g * n + a) * n + b) * m + i] = v.clone();
        dc[((g * n + b) * n + a) * m + i] = -v;
    }
    AlgebroidPointData::new(rho, drho, c, dc, tol).map_err(|e| InputError::at(path, e.to_string()))
}

/// Parses `"[[0,0,1],[1,0,0]]"` (entries may be quoted rationals).
pub fn vector_list<T: Field>(text: &str, flag: &str) -> Result<Vec<Vec<T>>, InputError> {
    let rows: Vec<Vec<Num>> = serde_json::from_str(text).map_err(|e| InputError::at(flag, e.to_string()))?;
    rows.iter()
        .enumerate()
        .map(|(i, r)| vector(r, r.len(), &format!("{flag}[{i}]")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    #[test]
    fn numbers_parse_from_strings_and_integers() {
        let doc = parse_document(
            r#"{"version":"1","payload":{"kind":"subspace","ambient":2,"basis":[[1,"1/2"]]}}"#,
        )
        .unwrap();
        let Payload::Subspace(s) = doc.payload else { panic!() };
        let sub: Subspace<Q> = subspace(&s, Tol::EXACT, "payload").unwrap();
        assert!(sub.contains(&[qi(2), qi(1)]));
    }

    #[test]
    fn malformed_documents_report_location() {
        let e = parse_document("{\"version\":\"1\",\n\"payload\":{\"kind\":\"polyform\",\"m\":2}}").unwrap_err();
        assert_eq!(e.path, "payload");
        assert!(e.message.starts_with("missing field"), "{e}");
        let e = parse_document("{\"version\":\"1\",\n\"extra\":1}").unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_document(r#"{"version":"1","payload":{"kind":"polyform","m":"x","k":1,"matrices":[]}}"#).unwrap_err();
        assert_eq!(e.path, "payload.m");
        let e = parse_document("{\"version\":").unwrap_err();
        assert!(e.line.is_some());
    }

    #[test]
    fn brackets_are_one_based() {
        let doc = LieAlgebraDoc {
            name: None,
            n: 3,
            brackets: vec![(1, 2, 3, Num("1".into()))],
        };
        let g: LieAlgebra<Q> = lie_algebra(&doc, Conventions::default(), Tol::EXACT, "payload").unwrap();
        assert_eq!(g, LieAlgebra::heisenberg3(Conventions::default()));
        let bad = LieAlgebraDoc {
            name: None,
            n: 3,
            brackets: vec![(0, 2, 3, Num("1".into()))],
        };
        assert!(lie_algebra::<Q>(&bad, Conventions::default(), Tol::EXACT, "payload").is_err());
    }
}
