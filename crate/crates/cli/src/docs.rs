//! The document format: a single JSON-compatible structured-text format with
//! exact rationals (`"p/q"` strings or bare integers), matrices as row-major
//! arrays of arrays, subspaces as basis-column matrices, and an explicit
//! `kind` + `format_version` header. Parsing is strict: unknown fields,
//! non-reduced rationals, and shape mismatches are rejected with the path of
//! the offending field. Serialization is canonical, so a canonical document
//! roundtrips byte-identically.

use serde_json::{Map, Number, Value};

use cs2g::doldkan::LinearTwoGroupoid;
use cs2g::exactla::{format_rat, parse_rat, Mat, Rat, Subspace};

pub const FORMAT_VERSION: &str = "1";

/// A schema-level error: message plus the path of the offending field.
#[derive(Debug, Clone)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: &str, message: impl Into<String>) -> Self {
        SchemaError {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

type Parsed<T> = Result<T, SchemaError>;

/// Structural payloads, one per document kind. Shapes are validated here;
/// semantic invariants (chain condition, skewness, isotropy, ...) belong to
/// `verify` and to the conversions into core types.
#[derive(Debug, Clone)]
pub enum Document {
    Tuple(TupleDoc),
    Complex(ComplexDoc),
    Groupoid(Box<LinearTwoGroupoid>),
    Form(FormDoc),
    Courant(CourantDoc),
    Subcomplex(SubcomplexDoc),
    Alpha(AlphaDoc),
    Csg(CsgDoc),
}

#[derive(Debug, Clone)]
pub struct TupleDoc {
    pub dim_w1: usize,
    pub dim_w0: usize,
    pub pairing: Mat,
    pub boundary: Mat,
    pub r: Mat,
}

#[derive(Debug, Clone)]
pub struct ComplexDoc {
    pub dim_w2: usize,
    pub dim_w1: usize,
    pub dim_w0: usize,
    pub d2: Mat,
    pub d1: Mat,
}

#[derive(Debug, Clone)]
pub struct FormDoc {
    pub dim_w2: usize,
    pub dim_w1: usize,
    pub dim_w0: usize,
    pub matrix: Mat,
}

#[derive(Debug, Clone)]
pub struct CourantDoc {
    pub dim_w1: usize,
    pub dim_w0: usize,
    pub pairing: Mat,
    pub boundary: Mat,
}

#[derive(Debug, Clone)]
pub struct SubcomplexDoc {
    pub u2: Subspace,
    pub u1: Subspace,
    pub u0: Subspace,
}

#[derive(Debug, Clone)]
pub struct AlphaDoc {
    pub dim_w1: usize,
    pub dim_w0: usize,
    pub b11: Mat,
    pub b12: Mat,
}

#[derive(Debug, Clone)]
pub struct CsgDoc {
    pub complex: ComplexDoc,
    pub form: FormDoc,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Tuple(_) => "tuple",
            Document::Complex(_) => "complex",
            Document::Groupoid(_) => "groupoid",
            Document::Form(_) => "form",
            Document::Courant(_) => "courant",
            Document::Subcomplex(_) => "subcomplex",
            Document::Alpha(_) => "alpha",
            Document::Csg(_) => "csg",
        }
    }
}

// ---------------------------------------------------------------------------
// Reading

fn as_object<'v>(v: &'v Value, path: &str) -> Parsed<&'v Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| SchemaError::new(path, "expected an object"))
}

fn reject_unknown(map: &Map<String, Value>, allowed: &[&str], path: &str) -> Parsed<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(SchemaError::new(
                &format!("{path}.{key}"),
                format!("unknown field (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

fn get<'v>(map: &'v Map<String, Value>, field: &str, path: &str) -> Parsed<&'v Value> {
    map.get(field)
        .ok_or_else(|| SchemaError::new(&format!("{path}.{field}"), "missing field"))
}

fn dim(map: &Map<String, Value>, field: &str, path: &str) -> Parsed<usize> {
    let v = get(map, field, path)?;
    let p = format!("{path}.{field}");
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| SchemaError::new(&p, "expected a nonnegative integer"))
}

fn rational(v: &Value, path: &str) -> Parsed<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(cs2g::exactla::rat(i))
            } else {
                Err(SchemaError::new(
                    path,
                    "expected an integer or a \"p/q\" string (floats are not allowed)",
                ))
            }
        }
        Value::String(s) => parse_rat(s).map_err(|hint| SchemaError::new(path, hint)),
        _ => Err(SchemaError::new(path, "expected an integer or a \"p/q\" string")),
    }
}

fn matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Parsed<Mat> {
    let arr = v
        .as_array()
        .ok_or_else(|| SchemaError::new(path, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(SchemaError::new(
            path,
            format!("expected {rows} rows, found {}", arr.len()),
        ));
    }
    let mut m = Mat::zeros(rows, cols);
    for (i, row_v) in arr.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let row = row_v
            .as_array()
            .ok_or_else(|| SchemaError::new(&row_path, "expected an array of rationals"))?;
        if row.len() != cols {
            return Err(SchemaError::new(
                &row_path,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            m[(i, j)] = rational(cell, &format!("{row_path}[{j}]"))?;
        }
    }
    Ok(m)
}

/// A matrix whose column count is read off the data (used for subspace
/// bases, whose dimension is not prescribed).
fn basis_matrix(v: &Value, ambient: usize, path: &str) -> Parsed<Mat> {
    let arr = v
        .as_array()
        .ok_or_else(|| SchemaError::new(path, "expected an array of rows"))?;
    if arr.len() != ambient {
        return Err(SchemaError::new(
            path,
            format!("expected {ambient} rows (the ambient dimension), found {}", arr.len()),
        ));
    }
    let cols = arr
        .first()
        .and_then(|r| r.as_array())
        .map(|r| r.len())
        .unwrap_or(0);
    matrix(v, ambient, cols, path)
}

fn subspace(v: &Value, ambient: usize, path: &str) -> Parsed<Subspace> {
    let basis = basis_matrix(v, ambient, path)?;
    let cols = basis.cols();
    let space = Subspace::span(ambient, &basis)
        .map_err(|e| SchemaError::new(path, e.to_string()))?;
    if space.dim() != cols {
        return Err(SchemaError::new(path, "basis columns are linearly dependent"));
    }
    Ok(space)
}

/// Parses a full document. `serde_json` syntax errors (with line/column) are
/// surfaced separately by the caller; this function handles schema only.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let value: Value = serde_json::from_str(text).map_err(DocError::Syntax)?;
    parse_document_value(&value).map_err(DocError::Schema)
}

/// Errors from reading a document: JSON syntax (carries line and column) or
/// schema violation (carries the field path).
#[derive(Debug)]
pub enum DocError {
    Syntax(serde_json::Error),
    Schema(SchemaError),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Syntax(e) => write!(f, "syntax error: {e}"),
            DocError::Schema(e) => write!(f, "schema violation at {e}"),
        }
    }
}

fn parse_document_value(value: &Value) -> Parsed<Document> {
    let root = as_object(value, "$")?;
    reject_unknown(root, &["format_version", "kind", "payload"], "$")?;
    let version = get(root, "format_version", "$")?
        .as_str()
        .ok_or_else(|| SchemaError::new("$.format_version", "expected a string"))?;
    if version != FORMAT_VERSION {
        return Err(SchemaError::new(
            "$.format_version",
            format!("unsupported version {version:?}, expected \"{FORMAT_VERSION}\""),
        ));
    }
    let kind = get(root, "kind", "$")?
        .as_str()
        .ok_or_else(|| SchemaError::new("$.kind", "expected a string"))?;
    let payload = get(root, "payload", "$")?;
    let path = "$.payload";
    match kind {
        "tuple" => Ok(Document::Tuple(parse_tuple(payload, path)?)),
        "complex" => Ok(Document::Complex(parse_complex(payload, path)?)),
        "groupoid" => Ok(Document::Groupoid(Box::new(parse_groupoid(payload, path)?))),
        "form" => Ok(Document::Form(parse_form(payload, path)?)),
        "courant" => Ok(Document::Courant(parse_courant(payload, path)?)),
        "subcomplex" => Ok(Document::Subcomplex(parse_subcomplex(payload, path)?)),
        "alpha" => Ok(Document::Alpha(parse_alpha(payload, path)?)),
        "csg" => Ok(Document::Csg(parse_csg(payload, path)?)),
        other => Err(SchemaError::new(
            "$.kind",
            format!(
                "unknown kind {other:?} (expected tuple, complex, groupoid, form, courant, subcomplex, alpha, or csg)"
            ),
        )),
    }
}

fn parse_tuple(v: &Value, path: &str) -> Parsed<TupleDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w1", "dim_w0", "pairing", "boundary", "r"], path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    Ok(TupleDoc {
        dim_w1,
        dim_w0,
        pairing: matrix(get(map, "pairing", path)?, dim_w1, dim_w1, &format!("{path}.pairing"))?,
        boundary: matrix(get(map, "boundary", path)?, dim_w0, dim_w1, &format!("{path}.boundary"))?,
        r: matrix(get(map, "r", path)?, dim_w1, dim_w1, &format!("{path}.r"))?,
    })
}

fn parse_complex(v: &Value, path: &str) -> Parsed<ComplexDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w2", "dim_w1", "dim_w0", "d2", "d1"], path)?;
    let dim_w2 = dim(map, "dim_w2", path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    Ok(ComplexDoc {
        dim_w2,
        dim_w1,
        dim_w0,
        d2: matrix(get(map, "d2", path)?, dim_w1, dim_w2, &format!("{path}.d2"))?,
        d1: matrix(get(map, "d1", path)?, dim_w0, dim_w1, &format!("{path}.d1"))?,
    })
}

fn parse_matrix_list(
    v: &Value,
    count: usize,
    rows: usize,
    cols: usize,
    path: &str,
) -> Parsed<Vec<Mat>> {
    let arr = v
        .as_array()
        .ok_or_else(|| SchemaError::new(path, "expected an array of matrices"))?;
    if arr.len() != count {
        return Err(SchemaError::new(
            path,
            format!("expected {count} matrices, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, m)| matrix(m, rows, cols, &format!("{path}[{i}]")))
        .collect()
}

fn parse_groupoid(v: &Value, path: &str) -> Parsed<LinearTwoGroupoid> {
    let map = as_object(v, path)?;
    reject_unknown(
        map,
        &["dim_v0", "dim_v1", "dim_v2", "dim_v3", "f1", "f2", "f3", "s0", "s1", "s2"],
        path,
    )?;
    let dims = [
        dim(map, "dim_v0", path)?,
        dim(map, "dim_v1", path)?,
        dim(map, "dim_v2", path)?,
        dim(map, "dim_v3", path)?,
    ];
    let f1 = parse_matrix_list(get(map, "f1", path)?, 2, dims[0], dims[1], &format!("{path}.f1"))?;
    let f2 = parse_matrix_list(get(map, "f2", path)?, 3, dims[1], dims[2], &format!("{path}.f2"))?;
    let f3 = parse_matrix_list(get(map, "f3", path)?, 4, dims[2], dims[3], &format!("{path}.f3"))?;
    let s0 = parse_matrix_list(get(map, "s0", path)?, 1, dims[1], dims[0], &format!("{path}.s0"))?;
    let s1 = parse_matrix_list(get(map, "s1", path)?, 2, dims[2], dims[1], &format!("{path}.s1"))?;
    let s2 = parse_matrix_list(get(map, "s2", path)?, 3, dims[3], dims[2], &format!("{path}.s2"))?;
    LinearTwoGroupoid::from_parts(dims, f1, f2, f3, s0, s1, s2)
        .map_err(|e| SchemaError::new(path, e.to_string()))
}

fn parse_form(v: &Value, path: &str) -> Parsed<FormDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w2", "dim_w1", "dim_w0", "matrix"], path)?;
    let dim_w2 = dim(map, "dim_w2", path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    let n = dim_w2 + 2 * dim_w1 + dim_w0;
    Ok(FormDoc {
        dim_w2,
        dim_w1,
        dim_w0,
        matrix: matrix(get(map, "matrix", path)?, n, n, &format!("{path}.matrix"))?,
    })
}

fn parse_courant(v: &Value, path: &str) -> Parsed<CourantDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w1", "dim_w0", "pairing", "boundary"], path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    Ok(CourantDoc {
        dim_w1,
        dim_w0,
        pairing: matrix(get(map, "pairing", path)?, dim_w1, dim_w1, &format!("{path}.pairing"))?,
        boundary: matrix(get(map, "boundary", path)?, dim_w0, dim_w1, &format!("{path}.boundary"))?,
    })
}

fn parse_subcomplex(v: &Value, path: &str) -> Parsed<SubcomplexDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w2", "dim_w1", "dim_w0", "u2", "u1", "u0"], path)?;
    let dim_w2 = dim(map, "dim_w2", path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    Ok(SubcomplexDoc {
        u2: subspace(get(map, "u2", path)?, dim_w2, &format!("{path}.u2"))?,
        u1: subspace(get(map, "u1", path)?, dim_w1, &format!("{path}.u1"))?,
        u0: subspace(get(map, "u0", path)?, dim_w0, &format!("{path}.u0"))?,
    })
}

fn parse_alpha(v: &Value, path: &str) -> Parsed<AlphaDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["dim_w1", "dim_w0", "b11", "b12"], path)?;
    let dim_w1 = dim(map, "dim_w1", path)?;
    let dim_w0 = dim(map, "dim_w0", path)?;
    Ok(AlphaDoc {
        dim_w1,
        dim_w0,
        b11: matrix(get(map, "b11", path)?, dim_w1, dim_w1, &format!("{path}.b11"))?,
        b12: matrix(get(map, "b12", path)?, dim_w1, dim_w0, &format!("{path}.b12"))?,
    })
}

fn parse_csg(v: &Value, path: &str) -> Parsed<CsgDoc> {
    let map = as_object(v, path)?;
    reject_unknown(map, &["complex", "form"], path)?;
    let complex = parse_complex(get(map, "complex", path)?, &format!("{path}.complex"))?;
    let form = parse_form(get(map, "form", path)?, &format!("{path}.form"))?;
    if (form.dim_w2, form.dim_w1, form.dim_w0) != (complex.dim_w2, complex.dim_w1, complex.dim_w0)
    {
        return Err(SchemaError::new(
            &format!("{path}.form"),
            "form dimensions do not match the complex",
        ));
    }
    Ok(CsgDoc { complex, form })
}

/// A bare matrix file (used for the `build-form` blocks and the `dirac`
/// subspace argument): just a JSON array of rows.
pub fn parse_bare_matrix(text: &str, rows: usize, cols: usize) -> Result<Mat, DocError> {
    let value: Value = serde_json::from_str(text).map_err(DocError::Syntax)?;
    matrix(&value, rows, cols, "$").map_err(DocError::Schema)
}

/// A bare basis-column matrix file with a fixed ambient dimension.
pub fn parse_bare_subspace(text: &str, ambient: usize) -> Result<Subspace, DocError> {
    let value: Value = serde_json::from_str(text).map_err(DocError::Syntax)?;
    subspace(&value, ambient, "$").map_err(DocError::Schema)
}

// ---------------------------------------------------------------------------
// Writing

fn rational_value(x: &Rat) -> Value {
    match cs2g::exactla::as_small_integer(x) {
        Some(i) => Value::Number(Number::from(i)),
        None => Value::String(format_rat(x)),
    }
}

pub fn matrix_value(m: &Mat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| rational_value(&m[(i, j)])).collect())
            })
            .collect(),
    )
}

fn obj(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn document_value(doc: &Document) -> Value {
    let payload = match doc {
        Document::Tuple(t) => obj(vec![
            ("dim_w1", Value::from(t.dim_w1)),
            ("dim_w0", Value::from(t.dim_w0)),
            ("pairing", matrix_value(&t.pairing)),
            ("boundary", matrix_value(&t.boundary)),
            ("r", matrix_value(&t.r)),
        ]),
        Document::Complex(c) => complex_payload(c),
        Document::Groupoid(g) => obj(vec![
            ("dim_v0", Value::from(g.dim_v(0))),
            ("dim_v1", Value::from(g.dim_v(1))),
            ("dim_v2", Value::from(g.dim_v(2))),
            ("dim_v3", Value::from(g.dim_v(3))),
            ("f1", faces(g, 1, 2)),
            ("f2", faces(g, 2, 3)),
            ("f3", faces(g, 3, 4)),
            ("s0", degens(g, 0, 1)),
            ("s1", degens(g, 1, 2)),
            ("s2", degens(g, 2, 3)),
        ]),
        Document::Form(f) => form_payload(f),
        Document::Courant(c) => obj(vec![
            ("dim_w1", Value::from(c.dim_w1)),
            ("dim_w0", Value::from(c.dim_w0)),
            ("pairing", matrix_value(&c.pairing)),
            ("boundary", matrix_value(&c.boundary)),
        ]),
        Document::Subcomplex(s) => obj(vec![
            ("dim_w2", Value::from(s.u2.ambient_dim())),
            ("dim_w1", Value::from(s.u1.ambient_dim())),
            ("dim_w0", Value::from(s.u0.ambient_dim())),
            ("u2", matrix_value(s.u2.basis())),
            ("u1", matrix_value(s.u1.basis())),
            ("u0", matrix_value(s.u0.basis())),
        ]),
        Document::Alpha(a) => obj(vec![
            ("dim_w1", Value::from(a.dim_w1)),
            ("dim_w0", Value::from(a.dim_w0)),
            ("b11", matrix_value(&a.b11)),
            ("b12", matrix_value(&a.b12)),
        ]),
        Document::Csg(c) => obj(vec![
            ("complex", complex_payload(&c.complex)),
            ("form", form_payload(&c.form)),
        ]),
    };
    obj(vec![
        ("format_version", Value::String(FORMAT_VERSION.into())),
        ("kind", Value::String(doc.kind().into())),
        ("payload", payload),
    ])
}

fn complex_payload(c: &ComplexDoc) -> Value {
    obj(vec![
        ("dim_w2", Value::from(c.dim_w2)),
        ("dim_w1", Value::from(c.dim_w1)),
        ("dim_w0", Value::from(c.dim_w0)),
        ("d2", matrix_value(&c.d2)),
        ("d1", matrix_value(&c.d1)),
    ])
}

fn form_payload(f: &FormDoc) -> Value {
    obj(vec![
        ("dim_w2", Value::from(f.dim_w2)),
        ("dim_w1", Value::from(f.dim_w1)),
        ("dim_w0", Value::from(f.dim_w0)),
        ("matrix", matrix_value(&f.matrix)),
    ])
}

fn faces(g: &LinearTwoGroupoid, q: usize, count: usize) -> Value {
    Value::Array((0..count).map(|i| matrix_value(g.face(q, i))).collect())
}

fn degens(g: &LinearTwoGroupoid, q: usize, count: usize) -> Value {
    Value::Array((0..count).map(|i| matrix_value(g.degeneracy(q, i))).collect())
}

/// Canonical single-line rendering with a trailing newline.
pub fn serialize_document(doc: &Document) -> String {
    let mut text = serde_json::to_string(&document_value(doc)).expect("JSON value serializes");
    text.push('\n');
    text
}

pub fn serialize_pretty(doc: &Document) -> String {
    let mut text =
        serde_json::to_string_pretty(&document_value(doc)).expect("JSON value serializes");
    text.push('\n');
    text
}
