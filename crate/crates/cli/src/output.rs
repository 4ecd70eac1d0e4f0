//! Output record assembly and rendering.
//!
//! JSON carries exact fractions as `"numerator/denominator"` strings in
//! lowest terms; decimals appear only in the CSV plot stream. Field order
//! is fixed by declaration order.

use serde::Serialize;
use upsilon_torsion::rational::{decimal_string, fraction_string, Rat};
use upsilon_torsion::staircase::StaircaseComplex;
use upsilon_torsion::upsilon::PiecewiseLinear;

/// Significant digits used for the CSV plot stream.
pub const CSV_DIGITS: u32 = 12;

#[derive(Serialize)]
pub struct Record {
    pub knot: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub staircase: Option<StaircaseDump>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upsilon: Option<Vec<Breakpoint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ord: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ord_prime: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl Record {
    pub fn new(knot: String) -> Self {
        Self {
            knot,
            alexander: None,
            gaps: None,
            genus: None,
            staircase: None,
            upsilon: None,
            ord: None,
            ord_prime: None,
            checks: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

#[derive(Serialize)]
pub struct Breakpoint {
    pub t: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct StaircaseDump {
    pub generators: Vec<GeneratorDump>,
    pub arrows: Vec<ArrowDump>,
}

#[derive(Serialize)]
pub struct GeneratorDump {
    pub index: usize,
    pub x: i64,
    pub y: i64,
    pub grading: u8,
}

#[derive(Serialize)]
pub struct ArrowDump {
    pub source: usize,
    pub target: usize,
}

#[derive(Serialize, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: Option<String>) -> Self {
        Self {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

pub fn breakpoints_of(u: &PiecewiseLinear) -> Vec<Breakpoint> {
    u.breakpoints()
        .iter()
        .zip(u.values())
        .map(|(t, v)| Breakpoint {
            t: fraction_string(t),
            value: fraction_string(v),
        })
        .collect()
}

pub fn dump_staircase(c: &StaircaseComplex) -> StaircaseDump {
    StaircaseDump {
        generators: c
            .generators
            .iter()
            .map(|g| GeneratorDump {
                index: g.index,
                x: g.x,
                y: g.y,
                grading: g.grading,
            })
            .collect(),
        arrows: c
            .arrows
            .iter()
            .map(|a| ArrowDump {
                source: a.source,
                target: a.target,
            })
            .collect(),
    }
}

pub fn csv_plot_row(t: &Rat, value: &Rat) -> String {
    format!(
        "{},{}",
        decimal_string(t, CSV_DIGITS),
        decimal_string(value, CSV_DIGITS)
    )
}
