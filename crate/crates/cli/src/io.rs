//! Recurrence files: JSON with every ring element as a decimal string.
//!
//! ```json
//! {
//!   "ring": {"kind": "prime", "modulus": "1000000007"},
//!   "depth": 2,
//!   "degree": 0,
//!   "coeffs": [["1"], ["-1"], ["-1"]],
//!   "initial": ["0", "1"],
//!   "offset": 0
//! }
//! ```
//!
//! `coeffs` lists `a_0 .. a_k`, each lowest degree first; `initial` lists
//! `P_0 .. P_{offset+k-1}`.

use std::fs;
use std::path::Path;

use linrec::domain::{Domain, Float64, PrimeField, Rationals};
use linrec::error::Error;
use linrec::holonomic::HolonomicRecurrence;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceFile {
    pub ring: RingSpec,
    pub depth: usize,
    pub degree: usize,
    pub coeffs: Vec<Vec<String>>,
    pub initial: Vec<String>,
    pub offset: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Rational,
    Prime(u64),
    Float,
}

impl Ring {
    pub fn spec(&self) -> RingSpec {
        match self {
            Ring::Rational => RingSpec { kind: "rational".into(), modulus: None },
            Ring::Prime(p) => RingSpec { kind: "prime".into(), modulus: Some(p.to_string()) },
            Ring::Float => RingSpec { kind: "float".into(), modulus: None },
        }
    }

    pub fn from_spec(s: &RingSpec) -> Result<Ring, Error> {
        match (s.kind.as_str(), &s.modulus) {
            ("rational", None) => Ok(Ring::Rational),
            ("float", None) => Ok(Ring::Float),
            ("prime", Some(m)) => {
                let p = m.trim().parse::<u64>().map_err(|e| Error::parse("ring.modulus", e.to_string()))?;
                PrimeField::new(p).map_err(|e| Error::parse("ring.modulus", e.to_string()))?;
                Ok(Ring::Prime(p))
            }
            ("prime", None) => Err(Error::parse("ring.modulus", "a prime ring needs a modulus")),
            (k, Some(_)) if k != "prime" => Err(Error::parse("ring.modulus", format!("ring kind {k:?} takes no modulus"))),
            (k, _) => Err(Error::parse("ring.kind", format!("unknown ring kind {k:?}"))),
        }
    }
}

/// A recurrence over whichever ring its file names.
#[derive(Clone, Debug)]
pub enum AnyRecurrence {
    Rational(HolonomicRecurrence<Rationals>),
    Prime(HolonomicRecurrence<PrimeField>),
    Float(HolonomicRecurrence<Float64>),
}

impl AnyRecurrence {
    pub fn ring(&self) -> Ring {
        match self {
            AnyRecurrence::Rational(_) => Ring::Rational,
            AnyRecurrence::Prime(r) => Ring::Prime(r.domain().modulus()),
            AnyRecurrence::Float(_) => Ring::Float,
        }
    }
}

pub fn to_file<D: Domain>(rec: &HolonomicRecurrence<D>, ring: Ring) -> RecurrenceFile {
    let d = rec.domain();
    RecurrenceFile {
        ring: ring.spec(),
        depth: rec.depth(),
        degree: rec.degree(),
        coeffs: rec.coeffs().iter().map(|c| c.iter().map(|e| d.format(e)).collect()).collect(),
        initial: rec.initial().iter().map(|e| d.format(e)).collect(),
        offset: rec.offset(),
    }
}

/// Parses the coefficients of `file` in `dom`, checking the declared shape.
pub fn from_file<D: Domain>(dom: &D, file: &RecurrenceFile) -> Result<HolonomicRecurrence<D>, Error> {
    if file.coeffs.len() != file.depth + 1 {
        return Err(Error::parse(
            "depth",
            format!("declared {}, but {} coefficient lists imply {}", file.depth, file.coeffs.len(), file.coeffs.len().saturating_sub(1)),
        ));
    }
    let coeffs = file
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.iter()
                .enumerate()
                .map(|(j, s)| dom.parse(s).map_err(|e| Error::parse(format!("coeffs[{i}][{j}]"), e.to_string())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let initial = file
        .initial
        .iter()
        .enumerate()
        .map(|(i, s)| dom.parse(s).map_err(|e| Error::parse(format!("initial[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let rec = HolonomicRecurrence::new(dom, coeffs, initial, file.offset).map_err(|e| match e {
        Error::InvalidArgument(m) => Error::parse("initial", m),
        Error::DegenerateOperand => Error::parse("coeffs[0]", "a_0 vanishes identically"),
        other => other,
    })?;
    if rec.degree() != file.degree {
        return Err(Error::parse("degree", format!("declared {}, but the coefficients have degree {}", file.degree, rec.degree())));
    }
    Ok(rec)
}

pub fn parse_recurrence(text: &str) -> Result<AnyRecurrence, Error> {
    let file: RecurrenceFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    Ok(match Ring::from_spec(&file.ring)? {
        Ring::Rational => AnyRecurrence::Rational(from_file(&Rationals::new(), &file)?),
        Ring::Prime(p) => AnyRecurrence::Prime(from_file(&PrimeField::new(p)?, &file)?),
        Ring::Float => AnyRecurrence::Float(from_file(&Float64::new(), &file)?),
    })
}

pub fn read_recurrence(path: &Path) -> Result<AnyRecurrence, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_recurrence(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::parse(format!("{}: {location}", path.display()), message),
        other => other,
    })
}

pub fn render(file: &RecurrenceFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("plain data");
    s.push('\n');
    s
}

pub fn write_recurrence<D: Domain>(rec: &HolonomicRecurrence<D>, ring: Ring, path: &Path) -> Result<(), Error> {
    fs::write(path, render(&to_file(rec, ring))).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}
