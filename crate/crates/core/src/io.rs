//! JSON documents for POVMs and observable pairs, plus float formatting with
//! 17 significant digits for every emitted number.
//!
//! ```json
//! {"elements": [{"i": "+", "j": "-", "r": 0.25, "x": [0.0, 0.0, 0.1]}, ...]}
//! {"n_a": [0, 0, 1], "n_b": [1, 0, 0]}
//! ```
//!
//! Unknown keys are ignored, so a single document may carry both a POVM and
//! its observables.

use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::bloch::{BlochVector, JointPovm, ObservablePair, Outcome, PovmElement, Sign};
use crate::error::{Constraint, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub i: Sign,
    pub j: Sign,
    pub r: f64,
    pub x: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmDoc {
    pub elements: Vec<ElementRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservablesDoc {
    pub n_a: [f64; 3],
    pub n_b: [f64; 3],
}

impl PovmDoc {
    pub fn from_povm(povm: &JointPovm) -> Self {
        let elements = povm
            .iter()
            .map(|(o, e)| ElementRecord { i: o.i, j: o.j, r: e.r(), x: e.x().to_array() })
            .collect();
        Self { elements }
    }

    pub fn to_povm(&self) -> Result<JointPovm> {
        if self.elements.len() != 4 {
            return Err(Error::constraint(
                Constraint::OutcomeLabels,
                format!("expected 4 elements, found {}", self.elements.len()),
            ));
        }
        let mut labelled = Vec::with_capacity(4);
        for rec in &self.elements {
            let element = PovmElement::new(rec.r, BlochVector::from(rec.x)).map_err(|e| match e {
                Error::Constraint { constraint, detail } => Error::Constraint {
                    constraint,
                    detail: format!("element ({},{}): {detail}", rec.i, rec.j),
                },
                other => other,
            })?;
            labelled.push((Outcome::new(rec.i, rec.j), element));
        }
        JointPovm::from_labelled(labelled)
    }
}

impl ObservablesDoc {
    pub fn from_pair(obs: &ObservablePair) -> Self {
        Self { n_a: obs.n_a().to_array(), n_b: obs.n_b().to_array() }
    }

    pub fn to_pair(&self) -> Result<ObservablePair> {
        ObservablePair::new(self.n_a.into(), self.n_b.into())
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_povm(text: &str) -> Result<JointPovm> {
    parse::<PovmDoc>(text, "POVM document")?.to_povm()
}

pub fn parse_observables(text: &str) -> Result<ObservablePair> {
    parse::<ObservablesDoc>(text, "observables document")?.to_pair()
}

/// `v` with 17 significant digits in scientific notation (`{:.16e}`).
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty JSON formatter that writes every float via [`format_float`].
struct FullPrecision<'a>(PrettyFormatter<'a>);

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty-printed JSON with 17-significant-digit floats. Non-finite floats
/// become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
