//! JSON documents, DOT output and JSON reports.
//!
//! Indices in every JSON and DOT output are one-based. Integers whose absolute
//! value exceeds `2^53 - 1` are written as decimal strings; both forms are accepted
//! on input.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::catalog::Label;
use crate::classify::{Certificate, ClassReport, FiniteType, GrowthTrace, Outcome, TheoremReport, Verdict};
use crate::companion::{Companion, CompanionError};
use crate::diagram::Diagram;
use crate::exchange::{ExchangeError, ExtendedMatrix};
use crate::linalg::Semidefiniteness;
use crate::matrix::IntMatrix;

const SAFE: i64 = (1 << 53) - 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("field `{0}` is missing or has the wrong type")]
    Field(&'static str),
    #[error("entry ({row},{col}) is not an integer")]
    NotInteger { row: usize, col: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("symmetrizer entry {0} is not an integer")]
    SymmetrizerEntry(usize),
    #[error("{message}")]
    Invalid {
        message: String,
        location: Option<Vec<usize>>,
    },
}

impl IoError {
    /// Machine-readable error object.
    pub fn to_json(&self) -> Value {
        let (code, location) = match self {
            IoError::Json(_) => ("malformed_json", None),
            IoError::Field(_) => ("missing_field", None),
            IoError::NotInteger { row, col } => ("not_integer", Some(vec![*row, *col])),
            IoError::RowCount { .. } => ("row_count", None),
            IoError::RowLength { row, .. } => ("row_length", Some(vec![*row])),
            IoError::SymmetrizerEntry(i) => ("symmetrizer_entry", Some(vec![*i])),
            IoError::Invalid { location, .. } => ("invalid_matrix", location.clone()),
        };
        let mut obj = json!({ "error": code, "message": self.to_string() });
        if let Some(loc) = location {
            obj["location"] = json!(loc);
        }
        obj
    }
}

/// One-based rendering of an exchange error, with the offending indices.
pub fn describe_exchange_error(e: &ExchangeError) -> (String, Option<Vec<usize>>) {
    match e {
        ExchangeError::NotSquare { rows, cols } => (format!("matrix is not square ({rows}x{cols})"), None),
        ExchangeError::NonZeroDiagonal(i) => (format!("diagonal entry {} is nonzero", i + 1), Some(vec![i + 1, i + 1])),
        ExchangeError::NotSignSkewSymmetric(i, j) => (
            format!("entries ({a},{b}) and ({b},{a}) are not sign-skew-symmetric", a = i + 1, b = j + 1),
            Some(vec![i + 1, j + 1]),
        ),
        ExchangeError::InconsistentCycle(c) => {
            let c: Vec<usize> = c.iter().map(|v| v + 1).collect();
            (format!("cycle {c:?} violates the cycle product condition"), Some(c))
        }
        ExchangeError::IndexOutOfRange { index, size } => {
            (format!("index {} out of range for size {size}", index + 1), Some(vec![index + 1]))
        }
        ExchangeError::FrozenIndex { index, mutable } => (
            format!("index {} is frozen; only indices 1..={mutable} can be mutated", index + 1),
            Some(vec![index + 1]),
        ),
        ExchangeError::SymmetrizerLength { expected, found } => {
            (format!("symmetrizer has length {found}, expected {expected}"), None)
        }
        ExchangeError::NonPositiveSymmetrizer(i) => {
            (format!("symmetrizer entry {} is not positive", i + 1), Some(vec![i + 1]))
        }
        ExchangeError::SymmetrizerMismatch(i, j) => (
            format!("symmetrizer does not skew-symmetrize entries ({},{})", i + 1, j + 1),
            Some(vec![i + 1, j + 1]),
        ),
        ExchangeError::TooFewRows { rows, cols } => (format!("extended matrix has {rows} rows but {cols} columns"), None),
        ExchangeError::NonIntegralCompletion { row, col } => (
            format!("square completion is not integral at ({},{})", row + 1, col + 1),
            Some(vec![row + 1, col + 1]),
        ),
    }
}

impl From<ExchangeError> for IoError {
    fn from(e: ExchangeError) -> Self {
        let (message, location) = describe_exchange_error(&e);
        IoError::Invalid { message, location }
    }
}

/// A matrix as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    pub m: usize,
    pub n: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub name: Option<String>,
    /// Symmetrizer for all `m` indices; derived when absent.
    pub symmetrizer: Option<Vec<BigInt>>,
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

fn json_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints_json(m.row(i))).collect())
}

impl MatrixDocument {
    pub fn from_extended(b: &ExtendedMatrix, name: Option<String>) -> MatrixDocument {
        MatrixDocument {
            m: b.rows(),
            n: b.mutable_count(),
            rows: b.matrix().to_rows(),
            name,
            symmetrizer: Some(b.symmetrizer().to_vec()),
        }
    }

    pub fn parse(text: &str) -> Result<MatrixDocument, IoError> {
        let v: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
        MatrixDocument::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<MatrixDocument, IoError> {
        let rows_v = v.get("rows").and_then(Value::as_array).ok_or(IoError::Field("rows"))?;
        let mut rows = Vec::with_capacity(rows_v.len());
        for (i, r) in rows_v.iter().enumerate() {
            let r = r.as_array().ok_or(IoError::Field("rows"))?;
            let mut row = Vec::with_capacity(r.len());
            for (j, x) in r.iter().enumerate() {
                row.push(json_int(x).ok_or(IoError::NotInteger { row: i + 1, col: j + 1 })?);
            }
            rows.push(row);
        }
        let dim = |key: &'static str, default: usize| match v.get(key) {
            None => Ok(default),
            Some(x) => x.as_u64().map(|x| x as usize).ok_or(IoError::Field(key)),
        };
        let m = dim("m", rows.len())?;
        let n = dim("n", rows.first().map_or(0, Vec::len))?;
        if rows.len() != m {
            return Err(IoError::RowCount {
                expected: m,
                found: rows.len(),
            });
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(IoError::RowLength {
                    row: i + 1,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let name = match v.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(IoError::Field("name")),
        };
        let symmetrizer = match v.get("symmetrizer") {
            None | Some(Value::Null) => None,
            Some(Value::Array(a)) => Some(
                a.iter()
                    .enumerate()
                    .map(|(i, x)| json_int(x).ok_or(IoError::SymmetrizerEntry(i + 1)))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            Some(_) => return Err(IoError::Field("symmetrizer")),
        };
        Ok(MatrixDocument {
            m,
            n,
            rows,
            name,
            symmetrizer,
        })
    }

    /// Validates and builds the extended matrix (square when `m = n`).
    pub fn to_extended(&self) -> Result<ExtendedMatrix, IoError> {
        let b = IntMatrix::try_from_rows(self.rows.clone()).map_err(|_| IoError::Field("rows"))?;
        let b = if self.rows.is_empty() {
            IntMatrix::zeros(self.m, self.n)
        } else {
            b
        };
        Ok(match &self.symmetrizer {
            Some(d) => ExtendedMatrix::with_symmetrizer(b, d.clone())?,
            None => ExtendedMatrix::new(b)?,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("m".into(), json!(self.m));
        obj.insert("n".into(), json!(self.n));
        obj.insert(
            "rows".into(),
            Value::Array(self.rows.iter().map(|r| ints_json(r)).collect()),
        );
        if let Some(name) = &self.name {
            obj.insert("name".into(), json!(name));
        }
        if let Some(d) = &self.symmetrizer {
            obj.insert("symmetrizer".into(), ints_json(d));
        }
        Value::Object(obj)
    }
}

pub fn parse_matrix(text: &str) -> Result<ExtendedMatrix, IoError> {
    MatrixDocument::parse(text)?.to_extended()
}

/// Compact JSON including the full symmetrizer, so that parsing gives back an equal matrix.
pub fn emit_matrix(b: &ExtendedMatrix) -> String {
    MatrixDocument::from_extended(b, None).to_value().to_string()
}

/// DOT text: frozen vertices as boxes, weight labels only on edges of weight above 1.
pub fn emit_dot(d: &Diagram) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..d.size() {
        let shape = if d.is_frozen(v) { "box" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", v + 1);
    }
    for e in d.edges() {
        if e.weight > BigInt::from(1) {
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from + 1, e.to + 1, e.weight);
        } else {
            let _ = writeln!(out, "  {} -> {};", e.from + 1, e.to + 1);
        }
    }
    out.push_str("}\n");
    out
}

pub fn diagram_json(d: &Diagram) -> Value {
    json!({
        "vertices": (0..d.size()).map(|v| json!({ "id": v + 1, "frozen": d.is_frozen(v) })).collect::<Vec<_>>(),
        "edges": d.edges().iter().map(|e| json!({
            "from": e.from + 1,
            "to": e.to + 1,
            "weight": int_json(&e.weight),
        })).collect::<Vec<_>>(),
        "max_weight": int_json(&d.max_weight()),
    })
}

pub fn label_json(l: &Label) -> Value {
    json!({ "family": l.family.letter(), "rank": l.rank, "affine": l.affine, "label": l.to_string() })
}

fn path_json(path: &[usize]) -> Value {
    json!(path.iter().map(|k| k + 1).collect::<Vec<_>>())
}

pub fn finite_type_json(f: &FiniteType) -> Value {
    match f {
        FiniteType::Finite(class) => json!({ "finite_type": true, "class_size": class.len() }),
        FiniteType::Infinite { path, diagram, edge } => json!({
            "finite_type": false,
            "witness_path": path_json(path),
            "witness_edge": [edge.0 + 1, edge.1 + 1],
            "witness_weight": int_json(&diagram.weight(edge.0, edge.1)),
        }),
    }
}

pub fn growth_json(t: &GrowthTrace) -> Value {
    json!({
        "initial_weights": ints_json(&t.initial),
        "normalization": t.normalization,
        "oriented_weights": ints_json(&t.oriented),
        "steps": t.steps.iter().map(|s| json!({
            "vertex": s.vertex,
            "weights": ints_json(&s.weights),
            "sum": int_json(&s.sum),
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    let mut obj = json!({
        "kind": c.kind.name(),
        "pattern": c.pattern_kind().name(),
        "path": path_json(&c.original_path()),
        "triangle": [c.triangle.i + 1, c.triangle.j + 1, c.triangle.r + 1],
        "witness": MatrixDocument::from_extended(&c.witness, None).to_value(),
    });
    if let Some(l) = &c.lift {
        obj["restricted_to"] = path_json(&l.keep);
    }
    obj
}

pub fn class_report_json(r: &ClassReport) -> Value {
    let budget = json!({
        "nodes": r.budget.nodes,
        "max_weight": r.budget.max_weight.as_ref().map(int_json),
    });
    let outcome = match &r.outcome {
        Outcome::Closed {
            labeled, up_to_iso, ..
        } => json!({ "outcome": "closed", "labeled": labeled, "up_to_iso": up_to_iso }),
        Outcome::Infinite(c) => json!({ "outcome": "infinite", "certificate": certificate_json(c) }),
        Outcome::BudgetExhausted { visited } => json!({ "outcome": "budget_exhausted", "visited": visited }),
    };
    let mut obj = outcome;
    obj["visited"] = json!(r.visited);
    obj["budget"] = budget;
    obj
}

pub fn theorem_json(r: &TheoremReport) -> Value {
    let rhs = match &r.rhs.outcome {
        Outcome::Closed { .. } => "closed",
        Outcome::Infinite(_) => "infinite",
        Outcome::BudgetExhausted { .. } => "budget_exhausted",
    };
    let mut obj = json!({
        "consistent": r.verdict == Verdict::Consistent,
        "verdict": r.verdict.to_string(),
        "lhs": if r.lhs.is_finite() { "finite" } else { "infinite" },
        "rhs": rhs,
        "rhs_certificate": r.rhs.certificate().map(|c| c.kind.name()),
        "report": class_report_json(&r.rhs),
    });
    if let Some(Ok(trace)) = &r.replay {
        obj["growth"] = growth_json(trace);
    }
    obj
}

pub fn semidefiniteness_json(s: &Semidefiniteness) -> Value {
    match s {
        Semidefiniteness::Positive => json!({ "kind": "positive" }),
        Semidefiniteness::SemipositiveCorank(c) => json!({ "kind": "semipositive", "corank": c }),
        Semidefiniteness::Indefinite => json!({ "kind": "indefinite" }),
    }
}

pub fn companion_json(c: &Companion) -> Value {
    json!({
        "matrix": matrix_json(c.matrix()),
        "admissible": c.is_admissible(),
        "semidefiniteness": semidefiniteness_json(&c.semidefiniteness()),
        "radical": c.radical_basis().iter().map(|r| json!({
            "vector": ints_json(&r.u),
            "sincere": r.is_sincere(),
        })).collect::<Vec<_>>(),
    })
}

pub fn companion_error_json(e: &CompanionError) -> Value {
    json!({ "error": "companion", "message": e.to_string() })
}

/// Pretty or compact JSON text with a trailing newline.
pub fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        v.to_string()
    };
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExchangeMatrix;

    #[test]
    fn round_trip_principal_extension() {
        let b0 = ExchangeMatrix::from_rows([[0, 1], [-1, 0]]).unwrap();
        let b = ExtendedMatrix::principal_extension(&b0).mutate_seq(&[0, 1, 0]).unwrap();
        assert_eq!(parse_matrix(&emit_matrix(&b)).unwrap(), b);
    }

    #[test]
    fn big_entries_are_strings() {
        let big = BigInt::from(1u64 << 60);
        assert_eq!(int_json(&big), Value::String(big.to_string()));
        assert_eq!(int_json(&BigInt::from(-7)), json!(-7));
        let doc = MatrixDocument::parse(r#"{"rows":[[0,"1152921504606846976"],[-1,0]]}"#).unwrap();
        assert_eq!(doc.rows[0][1], big);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_matrix(r#"{"m":2,"n":2,"rows":[[0,1],[-1]]}"#),
            Err(IoError::RowLength { row: 2, .. })
        ));
        let err = parse_matrix(r#"{"m":2,"n":2,"rows":[[0,1],[1,0]]}"#).unwrap_err();
        assert_eq!(err.to_json()["location"], json!([1, 2]));
        assert!(matches!(parse_matrix("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn dot_labels() {
        let d = Diagram::from_edges(3, 2, &[(0, 1, 4), (1, 2, 1)]).unwrap();
        let dot = emit_dot(&d);
        assert!(dot.contains("1 -> 2 [label=\"4\"];"));
        assert!(dot.contains("2 -> 3;\n"));
        assert!(dot.contains("3 [shape=box];"));
        assert_eq!(dot, emit_dot(&d));
    }
}
