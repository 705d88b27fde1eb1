//! Conversions from structural documents into validated core objects, the
//! per-kind verification reports, and the report/error JSON rendering.

use serde_json::{Map, Value};

use cs2g::bridge::{ConstantSymplectic2Groupoid, CsgTuple};
use cs2g::courant::{new_algebroid, ConstantCourantAlgebroid};
use cs2g::dirac::Subcomplex;
use cs2g::doldkan::{kan_report, verify_simplicial, ChainComplex3};
use cs2g::exactla::Bilin;
use cs2g::forms::{is_simplicially_nondegenerate, ConstantTwoForm};
use cs2g::Report;

use crate::docs::{
    AlphaDoc, ComplexDoc, CourantDoc, CsgDoc, Document, FormDoc, SubcomplexDoc, TupleDoc,
};

/// A command-level failure: input errors exit with 2, and carry a category
/// plus an optional field path.
#[derive(Debug)]
pub struct CliError {
    pub category: &'static str,
    pub message: String,
    pub path: Option<String>,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            category: "input",
            message: message.into(),
            path: None,
        }
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("category".into(), Value::String(self.category.into()));
        map.insert("message".into(), Value::String(self.message.clone()));
        if let Some(p) = &self.path {
            map.insert("path".into(), Value::String(p.clone()));
        }
        let mut outer = Map::new();
        outer.insert("error".into(), Value::Object(map));
        Value::Object(outer)
    }
}

impl From<crate::docs::DocError> for CliError {
    fn from(e: crate::docs::DocError) -> Self {
        match e {
            crate::docs::DocError::Syntax(err) => CliError {
                category: "syntax",
                message: format!(
                    "invalid JSON at line {}, column {}: {err}",
                    err.line(),
                    err.column()
                ),
                path: None,
            },
            crate::docs::DocError::Schema(err) => CliError {
                category: "schema",
                message: err.message,
                path: Some(err.path),
            },
        }
    }
}

impl From<cs2g::Error> for CliError {
    fn from(e: cs2g::Error) -> Self {
        CliError {
            category: "invariant",
            message: e.to_string(),
            path: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Document -> core conversions (semantic validation happens here)

impl ComplexDoc {
    pub fn to_core(&self) -> Result<ChainComplex3, CliError> {
        Ok(ChainComplex3::new(
            self.dim_w2,
            self.dim_w1,
            self.dim_w0,
            self.d2.clone(),
            self.d1.clone(),
        )?)
    }

    pub fn from_core(c: &ChainComplex3) -> Self {
        ComplexDoc {
            dim_w2: c.dim_w2(),
            dim_w1: c.dim_w1(),
            dim_w0: c.dim_w0(),
            d2: c.d2().clone(),
            d1: c.d1().clone(),
        }
    }
}

impl FormDoc {
    pub fn to_core(&self) -> Result<ConstantTwoForm, CliError> {
        Ok(ConstantTwoForm::disassemble(
            &Bilin::new(self.matrix.clone()),
            self.dim_w2,
            self.dim_w1,
            self.dim_w0,
        )?)
    }

    pub fn from_core(f: &ConstantTwoForm) -> Self {
        let (dim_w2, dim_w1, dim_w0) = f.dims();
        FormDoc {
            dim_w2,
            dim_w1,
            dim_w0,
            matrix: f.assemble().gram().clone(),
        }
    }
}

impl TupleDoc {
    pub fn to_core(&self) -> Result<CsgTuple, CliError> {
        Ok(CsgTuple::new(
            Bilin::new(self.pairing.clone()),
            self.boundary.clone(),
            Bilin::new(self.r.clone()),
        )?)
    }

    pub fn from_core(t: &CsgTuple) -> Self {
        TupleDoc {
            dim_w1: t.dim_w1(),
            dim_w0: t.dim_w0(),
            pairing: t.pairing().gram().clone(),
            boundary: t.boundary().clone(),
            r: t.r().gram().clone(),
        }
    }
}

impl CourantDoc {
    pub fn to_core(&self) -> Result<ConstantCourantAlgebroid, CliError> {
        Ok(new_algebroid(
            Bilin::new(self.pairing.clone()),
            self.boundary.clone(),
        )?)
    }

    pub fn from_core(e: &ConstantCourantAlgebroid) -> Self {
        CourantDoc {
            dim_w1: e.dim_w1(),
            dim_w0: e.dim_w0(),
            pairing: e.pairing().gram().clone(),
            boundary: e.boundary().clone(),
        }
    }
}

impl CsgDoc {
    pub fn to_core(&self) -> Result<ConstantSymplectic2Groupoid, CliError> {
        let complex = self.complex.to_core()?;
        let form = self.form.to_core()?;
        Ok(ConstantSymplectic2Groupoid::new(complex, form)?)
    }

    pub fn from_core(s: &ConstantSymplectic2Groupoid) -> Self {
        CsgDoc {
            complex: ComplexDoc::from_core(s.complex()),
            form: FormDoc::from_core(s.form()),
        }
    }
}

impl SubcomplexDoc {
    pub fn to_core(&self, c: &ChainComplex3) -> Result<Subcomplex, CliError> {
        Ok(cs2g::dirac::make_subcomplex(
            self.u2.clone(),
            self.u1.clone(),
            self.u0.clone(),
            c,
        )?)
    }
}

impl AlphaDoc {
    pub fn from_core(a: &cs2g::forms::AlphaForm) -> Self {
        let (dim_w1, dim_w0) = a.dims();
        AlphaDoc {
            dim_w1,
            dim_w0,
            b11: a.b11().clone(),
            b12: a.b12().clone(),
        }
    }

}

// ---------------------------------------------------------------------------
// Per-kind verification

/// Runs every invariant of the document's kind and reports each check.
pub fn verify_document(doc: &Document) -> Report {
    let mut report = Report::new();
    match doc {
        Document::Tuple(t) => {
            let pairing = Bilin::new(t.pairing.clone());
            report.record("pairing symmetric", pairing.is_symmetric(), "gram != gram^T");
            report.record(
                "pairing nondegenerate",
                pairing.is_nondegenerate(),
                "gram matrix is singular",
            );
            let r = Bilin::new(t.r.clone());
            report.record("r skew", r.is_skew(), "r != -r^T");
            match t.pairing.inverse() {
                Ok(g_inv) => {
                    let iso = (&(&t.boundary * &g_inv) * &t.boundary.transpose()).is_zero();
                    report.record(
                        "image of adjoint boundary isotropic",
                        iso,
                        "d g^-1 d^T != 0",
                    );
                }
                Err(_) => report.fail("image of adjoint boundary isotropic", "pairing not invertible"),
            }
        }
        Document::Complex(c) => {
            report.record(
                "chain condition d1 d2 = 0",
                (&c.d1 * &c.d2).is_zero(),
                "composition is nonzero",
            );
        }
        Document::Groupoid(g) => {
            report.absorb("simplicial", verify_simplicial(g));
            report.absorb("kan", kan_report(g));
        }
        Document::Form(f) => {
            let skew = f.matrix == -&f.matrix.transpose();
            report.record("matrix antisymmetric", skew, "matrix != -matrix^T");
        }
        Document::Courant(c) => {
            let pairing = Bilin::new(c.pairing.clone());
            report.record("pairing symmetric", pairing.is_symmetric(), "gram != gram^T");
            report.record(
                "pairing nondegenerate",
                pairing.is_nondegenerate(),
                "gram matrix is singular",
            );
            match c.pairing.inverse() {
                Ok(g_inv) => {
                    let iso = (&(&c.boundary * &g_inv) * &c.boundary.transpose()).is_zero();
                    report.record("anchor composed with coanchor vanishes", iso, "d g^-1 d^T != 0");
                }
                Err(_) => report.fail("anchor composed with coanchor vanishes", "pairing not invertible"),
            }
        }
        Document::Subcomplex(s) => {
            // Closure is relative to a complex and checked by `classify`;
            // alone, a subcomplex document is three canonical bases.
            report.record(
                "bases canonical and independent",
                s.u2.dim() <= s.u2.ambient_dim()
                    && s.u1.dim() <= s.u1.ambient_dim()
                    && s.u0.dim() <= s.u0.ambient_dim(),
                "unreachable after parsing",
            );
            report.note("boundary closure is verified against a complex by `classify`");
        }
        Document::Alpha(a) => {
            let skew = a.b11 == -&a.b11.transpose();
            report.record("B11 skew", skew, "B11 != -B11^T");
        }
        Document::Csg(c) => {
            report.absorb("complex", verify_document(&Document::Complex(c.complex.clone())));
            report.absorb("form", verify_document(&Document::Form(c.form.clone())));
            let core = c
                .complex
                .to_core()
                .ok()
                .zip(c.form.to_core().ok());
            match core {
                None => report.fail("symplectic conditions", "complex or form invalid"),
                Some((complex, form)) => {
                    let groupoid = cs2g::doldkan::realize(&complex);
                    report.record("closed (constant forms are closed)", form.is_closed(), "unreachable");
                    report.record(
                        "normalized",
                        form.is_normalized(),
                        "degeneracy pullbacks do not vanish",
                    );
                    let multiplicative = cs2g::forms::delta_omega(&form, &groupoid)
                        .map(|d| d.gram().is_zero())
                        .unwrap_or(false);
                    report.record("multiplicative", multiplicative, "delta omega != 0");
                    let nondeg = form.is_normalized()
                        && is_simplicially_nondegenerate(&form).unwrap_or(false);
                    report.record(
                        "simplicially nondegenerate",
                        nondeg,
                        "C41 or the symmetric part of C32 is degenerate",
                    );
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Report rendering

pub fn report_value(report: &Report) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut map = Map::new();
            map.insert("name".into(), Value::String(c.name.clone()));
            map.insert(
                "status".into(),
                Value::String(if c.passed { "pass" } else { "fail" }.into()),
            );
            if let Some(w) = &c.witness {
                map.insert("witness".into(), Value::String(w.clone()));
            }
            Value::Object(map)
        })
        .collect();
    let mut map = Map::new();
    map.insert("checks".into(), Value::Array(checks));
    if !report.notes.is_empty() {
        map.insert(
            "notes".into(),
            Value::Array(report.notes.iter().map(|n| Value::String(n.clone())).collect()),
        );
    }
    map.insert(
        "summary".into(),
        Value::String(if report.all_passed() { "pass" } else { "fail" }.into()),
    );
    Value::Object(map)
}
