//! JSON-facing views of exact objects. Fractions are strings, phase exponents
//! use the `a;b;c` text form, and collections keep the crates' canonical order.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Multiplier};
use crate::error::Result;
use crate::functions::{InnerValue, RealFunction, TestFunctionQp};
use crate::heisenberg::InnerProductTable;
use crate::phase::{PhaseExponent, PhasePolynomial};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTermDto {
    pub phase: String,
    pub rational: String,
    pub sqrt_p: String,
}

fn poly_dto(c: &PhasePolynomial) -> Vec<PhaseTermDto> {
    c.terms()
        .map(|(e, q)| PhaseTermDto { phase: e.to_text(), rational: q.u().to_string(), sqrt_p: q.v().to_string() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraTermDto {
    pub r1: String,
    pub r2: String,
    pub coeff: Vec<PhaseTermDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraElementDto {
    pub p: u32,
    pub multiplier: String,
    pub terms: Vec<AlgebraTermDto>,
}

impl From<&AlgebraElement> for AlgebraElementDto {
    fn from(a: &AlgebraElement) -> Self {
        let multiplier = match a.multiplier() {
            Multiplier::Psi(_) => "psi",
            Multiplier::EtaD => "eta",
            Multiplier::EtaBarPerp => "eta_bar",
        };
        let terms = a
            .coeffs()
            .iter()
            .map(|(g, c)| AlgebraTermDto { r1: g.r1.to_string(), r2: g.r2.to_string(), coeff: poly_dto(c) })
            .collect();
        AlgebraElementDto { p: a.p(), multiplier: multiplier.into(), terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallTermDto {
    pub center: String,
    pub scale: i64,
    pub coeff: Vec<PhaseTermDto>,
}

impl From<&TestFunctionQp> for Vec<BallTermDto> {
    fn from(f: &TestFunctionQp) -> Self {
        f.terms()
            .iter()
            .map(|(b, c)| BallTermDto { center: b.center().to_string(), scale: b.scale(), coeff: poly_dto(c) })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDto {
    pub width: String,
    pub center: String,
    pub freq: String,
    pub residual: String,
    pub coeff: Vec<PhaseTermDto>,
}

impl From<&RealFunction> for Vec<AtomDto> {
    fn from(f: &RealFunction) -> Self {
        f.atoms()
            .iter()
            .map(|(s, c)| AtomDto {
                width: s.width.to_string(),
                center: s.center.to_string(),
                freq: s.freq.to_string(),
                residual: s.residual.to_string(),
                coeff: poly_dto(c),
            })
            .collect()
    }
}

/// One table entry. When the exact value is a single lattice phase times a
/// Gaussian factor, `exact_phase` holds the phase and `real_integral` the
/// remaining factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntryDto {
    pub r1: String,
    pub r2: String,
    pub exact_phase: Option<String>,
    pub real_integral: Option<[f64; 2]>,
    pub complex_value: [f64; 2],
}

fn single_phase(v: &InnerValue) -> Option<(PhaseExponent, InnerValue)> {
    let mut terms = v.terms().iter();
    let (key, c) = terms.next()?;
    if terms.next().is_some() || c.len() != 1 {
        return None;
    }
    let (e, q) = c.terms().next()?;
    let mut rest = InnerValue::zero(v.p());
    rest.push(key.clone(), PhasePolynomial::scalar(q.clone()));
    Some((e.clone(), rest))
}

fn pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)]
}

pub fn table_entries<T: Real>(table: &InnerProductTable, theta: T) -> Result<Vec<TableEntryDto>> {
    table
        .entries
        .iter()
        .map(|(g, v)| {
            let split = single_phase(v);
            let real_integral = match &split {
                Some((_, rest)) => Some(pair(rest.eval(theta)?)),
                None => None,
            };
            Ok(TableEntryDto {
                r1: g.r1.to_string(),
                r2: g.r2.to_string(),
                exact_phase: split.map(|(e, _)| e.to_text()),
                real_integral,
                complex_value: pair(v.eval(theta)?),
            })
        })
        .collect()
}
