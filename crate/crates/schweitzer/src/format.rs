//! JSON documents for double complexes, structure-equation models and
//! multiplicity tables.
//!
//! Scalars and polynomial coefficients are strings (`"1/2"`, `"-1+2*i"`,
//! `"1/2*t^2-3"`), so documents stay exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use schweitzer_core::lie::{StructureEquation, Term};
use schweitzer_core::shapes::ZigzagShape;
use schweitzer_core::{Bidegree, DoubleComplex, LieModel, Matrix, MultiplicityTable, Poly, Scalar};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] schweitzer_core::Error),
    #[error("{0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Invalid(msg.into()))
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// One block of `∂` or `∂̄`, keyed by its source bidegree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub from: [usize; 2],
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub n: usize,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub del: Vec<BlockDoc>,
    #[serde(default)]
    pub delbar: Vec<BlockDoc>,
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let parsed = key.split_once(',').and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)));
    match parsed {
        Some((p, q)) if p <= n && q <= n => Ok((p, q)),
        Some(_) => invalid(format!("bidegree \"{key}\" lies outside [0,{n}]²")),
        None => invalid(format!("bad bidegree key \"{key}\", expected \"p,q\"")),
    }
}

fn parse_matrix(rows: &[Vec<String>], target: usize, source: usize, what: &str) -> Result<Matrix> {
    if rows.len() != target {
        return invalid(format!("{what}: {} rows, target dimension is {target}", rows.len()));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != source {
            return invalid(format!("{what}: row of length {}, source dimension is {source}", row.len()));
        }
        let r = row.iter().map(|s| s.parse::<Scalar>()).collect::<std::result::Result<Vec<_>, _>>();
        parsed.push(r.map_err(|e| FormatError::Invalid(format!("{what}: {e}")))?);
    }
    Ok(Matrix::from_rows(parsed, source)?)
}

fn render_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
}

impl ComplexDoc {
    /// Builds the complex. Block shapes are checked; the double-complex
    /// identities are not, so that invalid documents can still be diagnosed.
    pub fn to_complex(&self) -> Result<DoubleComplex> {
        let n = self.n;
        let mut dims = vec![vec![0; n + 1]; n + 1];
        for (key, &d) in &self.dims {
            let (p, q) = parse_key(key, n)?;
            dims[p][q] = d;
        }
        let mut a = DoubleComplex::with_dims(n, |p, q| dims[p][q]);
        for (blocks, is_del) in [(&self.del, true), (&self.delbar, false)] {
            let name = if is_del { "del" } else { "delbar" };
            let mut seen = std::collections::BTreeSet::new();
            for b in blocks {
                let [p, q] = b.from;
                if p > n || q > n {
                    return invalid(format!("{name} block from ({p},{q}) lies outside [0,{n}]²"));
                }
                if !seen.insert((p, q)) {
                    return invalid(format!("duplicate {name} block from ({p},{q})"));
                }
                let (tp, tq) = if is_del { (p + 1, q) } else { (p, q + 1) };
                let target = if tp <= n && tq <= n { dims[tp][tq] } else { 0 };
                let what = format!("{name} block from ({p},{q})");
                let m = parse_matrix(&b.matrix, target, dims[p][q], &what)?;
                if is_del {
                    a.set_del(p, q, m)?;
                } else {
                    a.set_delbar(p, q, m)?;
                }
            }
        }
        Ok(a)
    }

    /// Nonzero dimensions and nonzero blocks only, in bidegree order.
    pub fn from_complex(a: &DoubleComplex) -> Self {
        let mut doc = ComplexDoc { n: a.n(), dims: BTreeMap::new(), del: Vec::new(), delbar: Vec::new() };
        for b in a.bidegrees() {
            let d = a.dim_at(b);
            if d > 0 {
                doc.dims.insert(format!("{},{}", b.p, b.q), d);
            }
            for (m, out) in [(a.del(b.p, b.q), &mut doc.del), (a.delbar(b.p, b.q), &mut doc.delbar)] {
                if !m.is_zero() {
                    out.push(BlockDoc { from: [b.p, b.q], matrix: render_matrix(m) });
                }
            }
        }
        doc
    }
}

pub fn parse_complex(text: &str) -> Result<DoubleComplex> {
    serde_json::from_str::<ComplexDoc>(text)?.to_complex()
}

pub fn emit_complex(a: &DoubleComplex) -> String {
    serde_json::to_string_pretty(&ComplexDoc::from_complex(a)).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term20Doc {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term11Doc {
    pub i: usize,
    pub jbar: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term02Doc {
    pub ibar: usize,
    pub jbar: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDoc {
    pub d_omega: usize,
    #[serde(default)]
    pub terms20: Vec<Term20Doc>,
    #[serde(default)]
    pub terms11: Vec<Term11Doc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms02: Vec<Term02Doc>,
}

/// Structure equations `dω^i`, 1-based. Generators without an equation are closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub n: usize,
    pub equations: Vec<EquationDoc>,
}

impl ModelDoc {
    pub fn to_model(&self) -> Result<LieModel> {
        let n = self.n;
        let mut model = LieModel::abelian(n);
        let mut seen = vec![false; n];
        let index = |x: usize, what: &str| -> Result<usize> {
            if (1..=n).contains(&x) {
                Ok(x - 1)
            } else {
                invalid(format!("{what} index {x} outside 1..={n}"))
            }
        };
        let poly = |s: &str| -> Result<Poly> { s.parse().map_err(|e| FormatError::Invalid(format!("coefficient: {e}"))) };
        for eq in &self.equations {
            let i = index(eq.d_omega, "d_omega")?;
            if std::mem::replace(&mut seen[i], true) {
                return invalid(format!("duplicate equation for dω^{}", eq.d_omega));
            }
            let target: &mut StructureEquation = &mut model.equations[i];
            for t in &eq.terms20 {
                target.terms20.push(Term { a: index(t.i, "i")?, b: index(t.j, "j")?, coeff: poly(&t.coeff)? });
            }
            for t in &eq.terms11 {
                target.terms11.push(Term { a: index(t.i, "i")?, b: index(t.jbar, "jbar")?, coeff: poly(&t.coeff)? });
            }
            for t in &eq.terms02 {
                target.terms02.push(Term { a: index(t.ibar, "ibar")?, b: index(t.jbar, "jbar")?, coeff: poly(&t.coeff)? });
            }
        }
        Ok(model)
    }

    pub fn from_model(m: &LieModel) -> Self {
        let equations = m
            .equations
            .iter()
            .enumerate()
            .map(|(i, e)| EquationDoc {
                d_omega: i + 1,
                terms20: e.terms20.iter().map(|t| Term20Doc { i: t.a + 1, j: t.b + 1, coeff: t.coeff.to_string() }).collect(),
                terms11: e.terms11.iter().map(|t| Term11Doc { i: t.a + 1, jbar: t.b + 1, coeff: t.coeff.to_string() }).collect(),
                terms02: e.terms02.iter().map(|t| Term02Doc { ibar: t.a + 1, jbar: t.b + 1, coeff: t.coeff.to_string() }).collect(),
            })
            .collect();
        ModelDoc { n: m.n, equations }
    }
}

pub fn parse_model(text: &str) -> Result<LieModel> {
    serde_json::from_str::<ModelDoc>(text)?.to_model()
}

pub fn emit_model(m: &LieModel) -> String {
    serde_json::to_string_pretty(&ModelDoc::from_model(m)).expect("serializable")
}

/// Either kind of input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Complex(DoubleComplex),
    Model(LieModel),
}

/// Structure-equation documents are recognised by their `equations` field.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("equations").is_some() {
        Ok(Document::Model(serde_json::from_value::<ModelDoc>(value)?.to_model()?))
    } else {
        Ok(Document::Complex(serde_json::from_value::<ComplexDoc>(value)?.to_complex()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZigzagEntry {
    pub shape: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareEntry {
    pub corner: [usize; 2],
    pub count: usize,
}

/// Extra top-level fields are ignored, so a `zigzag --format json` report
/// can be read back as a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub n: usize,
    #[serde(default)]
    pub zigzags: Vec<ZigzagEntry>,
    #[serde(default)]
    pub squares: Vec<SquareEntry>,
}

impl TableDoc {
    pub fn from_table(n: usize, t: &MultiplicityTable) -> Self {
        TableDoc {
            n,
            zigzags: t.zigzags.iter().map(|(z, &count)| ZigzagEntry { shape: z.to_string(), count }).collect(),
            squares: t.squares.iter().map(|(c, &count)| SquareEntry { corner: [c.p, c.q], count }).collect(),
        }
    }

    /// Zero counts are dropped; repeated entries add up.
    pub fn to_table(&self) -> Result<MultiplicityTable> {
        let mut t = MultiplicityTable::default();
        for e in &self.zigzags {
            let z: ZigzagShape = e.shape.parse()?;
            if !z.fits(self.n) {
                return invalid(format!("zigzag {z} does not fit in [0,{}]²", self.n));
            }
            if e.count > 0 {
                *t.zigzags.entry(z).or_default() += e.count;
            }
        }
        for e in &self.squares {
            let [p, q] = e.corner;
            if p >= self.n || q >= self.n {
                return invalid(format!("square at ({p},{q}) does not fit in [0,{}]²", self.n));
            }
            if e.count > 0 {
                *t.squares.entry(Bidegree::new(p, q)).or_default() += e.count;
            }
        }
        Ok(t)
    }
}

pub fn parse_table(text: &str) -> Result<(usize, MultiplicityTable)> {
    let doc: TableDoc = serde_json::from_str(text)?;
    Ok((doc.n, doc.to_table()?))
}

pub fn emit_table(n: usize, t: &MultiplicityTable) -> String {
    serde_json::to_string_pretty(&TableDoc::from_table(n, t)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use schweitzer_core::builtin;
    use schweitzer_core::shapes::make_square;

    #[test]
    fn fractions_normalize() {
        let text = r#"{"n":1,"dims":{"0,0":1,"1,0":1},"del":[{"from":[0,0],"matrix":[["2/4"]]}]}"#;
        let a = parse_complex(text).unwrap();
        assert_eq!(a.del(0, 0)[(0, 0)], Scalar::ratio(1, 2));
        assert!(emit_complex(&a).contains("\"1/2\""));
    }

    #[test]
    fn shape_errors_are_reported() {
        let text = r#"{"n":1,"dims":{"0,0":1,"1,0":1},"del":[{"from":[0,0],"matrix":[["1","2"]]}]}"#;
        assert!(parse_complex(text).is_err());
        assert!(parse_complex(r#"{"n":1,"dims":{"2,0":1}}"#).is_err());
        assert!(parse_complex(r#"{"n":1,"dims":{"x":1}}"#).is_err());
        assert!(parse_complex(r#"{"n":1,"bogus":1}"#).is_err());
    }

    #[test]
    fn complex_roundtrip() {
        let a = make_square(0, 0, 2).unwrap();
        assert_eq!(parse_complex(&emit_complex(&a)).unwrap(), a);
    }

    #[test]
    fn model_roundtrip_and_detection() {
        let m = builtin::iwasawa_family();
        let text = emit_model(&m);
        assert_eq!(parse_model(&text).unwrap(), m);
        assert_eq!(parse_document(&text).unwrap(), Document::Model(m));
    }

    #[test]
    fn missing_equations_are_closed() {
        let m = parse_model(r#"{"n":2,"equations":[{"d_omega":2,"terms11":[{"i":1,"jbar":1,"coeff":"1"}]}]}"#).unwrap();
        assert_eq!(m, builtin::kodaira_thurston());
        assert!(parse_model(r#"{"n":2,"equations":[{"d_omega":3}]}"#).is_err());
    }
}
