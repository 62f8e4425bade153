//! JSON documents: the input object description and the computed result.
//!
//! Rationals travel as `"a/b"` strings (integers are accepted on input). Log-rational values
//! travel as `{"neg_half_log_of": "a/b"}`, with `"divided_by": r` when the value is
//! `-½ log(a/b) / r`.

use crate::CliError;
use hn_core::degree::{ExactDegree, Slope};
use hn_core::filtration::StepFiltration;
use hn_core::fp::{FpSpace, MultiFiltSpace};
use hn_core::lattice::EuclideanLattice;
use hn_core::rational::{parse_q, Q};
use hn_core::render::decimal_trimmed;
use hn_core::suites::Witness;
use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub const VERSION: u32 = 1;

/// An exact rational on the wire.
#[derive(Debug, Clone, PartialEq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_q(&s).map(Rat).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rat(Q::from_integer(i.into()))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub version: u32,
    #[serde(flatten)]
    pub object: ObjectDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ObjectDoc {
    MultifiltFp {
        p: u64,
        dim: usize,
        /// One non-negative coefficient per filtration; all ones when omitted.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha: Option<Vec<Rat>>,
        filtrations: Vec<FiltrationDoc>,
    },
    Lattice {
        gram: Vec<Vec<Rat>>,
    },
}

/// Weights `λ_1 > … > λ_k` and the flag `U_1 ⊂ … ⊂ U_k`, each `U_i` by spanning vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiltrationDoc {
    pub weights: Vec<Rat>,
    pub flag: Vec<Vec<Vec<i64>>>,
}

/// A parsed, validated object.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Fp(MultiFiltSpace),
    Lattice(EuclideanLattice),
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(msg.to_string())
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, CliError> {
        let doc: InputDocument = serde_json::from_str(text).map_err(|e| invalid(format!("malformed input: {e}")))?;
        if doc.version != VERSION {
            return Err(invalid(format!("unsupported version {}, expected {VERSION}", doc.version)));
        }
        Ok(doc)
    }

    pub fn to_object(&self) -> Result<Object, CliError> {
        match &self.object {
            ObjectDoc::MultifiltFp { p, dim, alpha, filtrations } => {
                let sp = FpSpace::new(*p, *dim).map_err(invalid)?;
                let mut fils = Vec::with_capacity(filtrations.len());
                for (k, f) in filtrations.iter().enumerate() {
                    if f.weights.len() != f.flag.len() {
                        return Err(invalid(format!("filtration {k}: {} weights for {} flag steps", f.weights.len(), f.flag.len())));
                    }
                    let mut values = Vec::with_capacity(f.flag.len());
                    for (i, vs) in f.flag.iter().enumerate() {
                        if let Some(v) = vs.iter().find(|v| v.len() != *dim) {
                            return Err(invalid(format!("filtration {k}, step {i}: vector of length {} in dimension {dim}", v.len())));
                        }
                        values.push(sp.span_signed(vs).map_err(invalid)?);
                    }
                    let weights = f.weights.iter().map(|w| w.0.clone()).collect();
                    let fil = StepFiltration::from_flag(&sp, weights, values).map_err(|e| invalid(format!("filtration {k}: {e}")))?;
                    fils.push(fil);
                }
                let alpha = match alpha {
                    Some(a) => a.iter().map(|x| x.0.clone()).collect(),
                    None => vec![Q::from_integer(1.into()); fils.len()],
                };
                Ok(Object::Fp(MultiFiltSpace::new(sp, fils, alpha).map_err(invalid)?))
            }
            ObjectDoc::Lattice { gram } => {
                let g = gram.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
                Ok(Object::Lattice(EuclideanLattice::new(g).map_err(invalid)?))
            }
        }
    }

    /// The document describing `obj`; parsing it back gives an equal object.
    pub fn from_object(obj: &Object) -> InputDocument {
        let object = match obj {
            Object::Fp(x) => ObjectDoc::MultifiltFp {
                p: x.space().prime(),
                dim: x.dim(),
                alpha: Some(x.alpha().iter().cloned().map(Rat).collect()),
                filtrations: x
                    .filtrations()
                    .iter()
                    .map(|f| FiltrationDoc {
                        weights: f.steps().iter().map(|s| Rat(s.index.clone())).collect(),
                        flag: f
                            .steps()
                            .iter()
                            .map(|s| s.value.basis().iter().map(|v| v.iter().map(|&c| c as i64).collect()).collect())
                            .collect(),
                    })
                    .collect(),
            },
            Object::Lattice(l) => ObjectDoc::Lattice { gram: l.gram().iter().map(|r| r.iter().cloned().map(Rat).collect()).collect() },
        };
        InputDocument { version: VERSION, object }
    }
}

impl From<Witness> for Object {
    fn from(w: Witness) -> Object {
        match w {
            Witness::Fp(x) => Object::Fp(x),
            Witness::Lattice(l) => Object::Lattice(l),
        }
    }
}

/// An exact degree or slope value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactDoc {
    Rational(Rat),
    Log {
        neg_half_log_of: Rat,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divided_by: usize,
    },
}

fn one() -> usize {
    1
}

fn is_one(x: &usize) -> bool {
    *x == 1
}

impl ExactDoc {
    pub fn from_slope(s: &Slope) -> ExactDoc {
        match &s.degree {
            ExactDegree::Rational(_) => ExactDoc::Rational(Rat(s.as_rational().expect("rational degree"))),
            ExactDegree::LogRational(d) => ExactDoc::Log { neg_half_log_of: Rat(d.clone()), divided_by: s.rank },
        }
    }

    pub fn from_degree(d: &ExactDegree) -> ExactDoc {
        Self::from_slope(&Slope { degree: d.clone(), rank: 1 })
    }

    pub fn to_slope(&self) -> Slope {
        match self {
            ExactDoc::Rational(q) => Slope::rational(q.0.clone()),
            ExactDoc::Log { neg_half_log_of, divided_by } => {
                Slope { degree: ExactDegree::LogRational(neg_half_log_of.0.clone()), rank: *divided_by }
            }
        }
    }
}

/// An exact value with its decimal rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub exact: ExactDoc,
    pub decimal: String,
}

impl ValueDoc {
    pub fn new(s: &Slope, digits: usize) -> ValueDoc {
        ValueDoc { exact: ExactDoc::from_slope(s), decimal: decimal_trimmed(s, digits) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepDoc {
    pub rank: usize,
    /// Canonical basis: reduced echelon rows over `F_p`, Hermite normal form rows over `Z`.
    pub basis: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub t: Rat,
    #[serde(rename = "P")]
    pub height: ValueDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomDoc {
    pub location: ValueDoc,
    pub mass: Rat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub version: u32,
    pub kind: String,
    /// `ok`, `uncertified` (heuristic destabilizer) or `failed` (partial chain only).
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub rank: usize,
    pub degree: ValueDoc,
    /// `X_1 ⊂ … ⊂ X_n = X`; the HN filtration takes the value `X_i` on `(μ_{i+1}, μ_i]`.
    pub chain: Vec<StepDoc>,
    /// Slopes `μ_1 > … > μ_n` of the subquotients.
    pub slopes: Vec<ValueDoc>,
    pub polygon: Vec<VertexDoc>,
    pub measure: Vec<AtomDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
    pub digits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hn_core::rational::{q, qr};

    const FP: &str = r#"{"version": 1, "kind": "multifilt_fp", "p": 2, "dim": 2,
        "filtrations": [{"weights": ["1", 0], "flag": [[[1, 0]], [[1, 0], [0, 1]]]}]}"#;

    #[test]
    fn parses_and_roundtrips() {
        let doc = InputDocument::parse(FP).unwrap();
        let obj = doc.to_object().unwrap();
        let Object::Fp(x) = &obj else { panic!() };
        assert_eq!(x.alpha(), &[q(1)]);
        let again = InputDocument::from_object(&obj);
        assert_eq!(again.to_object().unwrap(), obj);
        let text = serde_json::to_string(&again).unwrap();
        assert_eq!(InputDocument::parse(&text).unwrap(), again);
    }

    #[test]
    fn lattice_roundtrip() {
        let doc = InputDocument::parse(r#"{"version": 1, "kind": "lattice", "gram": [["1/4", "0"], ["0", "4"]]}"#).unwrap();
        let obj = doc.to_object().unwrap();
        assert_eq!(obj, Object::Lattice(EuclideanLattice::diagonal(&[qr(1, 4), q(4)]).unwrap()));
        assert_eq!(InputDocument::from_object(&obj).to_object().unwrap(), obj);
    }

    #[test]
    fn validation_errors() {
        for bad in [
            r#"{"version": 2, "kind": "lattice", "gram": [["1"]]}"#,
            r#"{"version": 1, "kind": "lattice", "gram": [["1", "2"], ["2", "1"]]}"#,
            r#"{"version": 1, "kind": "lattice", "gram": [["1/0"]]}"#,
            r#"{"version": 1, "kind": "multifilt_fp", "p": 4, "dim": 1, "filtrations": []}"#,
            r#"{"version": 1, "kind": "multifilt_fp", "p": 2, "dim": 2, "filtrations": [{"weights": ["1"], "flag": [[[1, 0]]]}]}"#,
            r#"{"version": 1, "kind": "multifilt_fp", "p": 2, "dim": 2, "filtrations": [{"weights": ["0", "1"], "flag": [[[1, 0]], [[1, 0], [0, 1]]]}]}"#,
            r#"{"version": 1, "kind": "multifilt_fp", "p": 2, "dim": 2, "filtrations": [{"weights": ["1"], "flag": [[[1, 0, 0]]]}]}"#,
            r#"{"version": 1, "kind": "nope"}"#,
        ] {
            let r = InputDocument::parse(bad).and_then(|d| d.to_object());
            assert!(matches!(r, Err(CliError::Validation(_))), "{bad}: {r:?}");
        }
    }

    #[test]
    fn exact_values_reparse() {
        let s = Slope { degree: ExactDegree::LogRational(qr(1, 4)), rank: 3 };
        let v = ValueDoc::new(&s, 12);
        let back: ValueDoc = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back.exact.to_slope(), s);
        let r = ValueDoc::new(&Slope::rational(qr(-7, 3)), 4);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"exact":"-7/3","decimal":"-2.3333"}"#);
    }
}
