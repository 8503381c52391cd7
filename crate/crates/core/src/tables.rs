//! Parameter tables for balanced codes.
//!
//! Asymptotic entries are formulas, not measurements, and are tagged as such.
//! Only quantities computable from concrete sizes (qubit and check counts,
//! exponents) are evaluated, and those appear in a separate `exact` list.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Scenario {
    /// Balancing the Q-complex with the two repetition-code check matrices.
    Table1,
    /// Balancing the Q-complex with a repetition code versus an LDPC code.
    Table4,
    /// Double balancing applied to two square-root-distance qLTC families.
    GenParams,
    /// Example lengths for double balancing the hemicubic codes.
    ExampleParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown table scenario {0:?}; expected table1, table4, genParams or exampleParams")]
pub struct UnknownScenario(pub String);

impl FromStr for Scenario {
    type Err = UnknownScenario;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "table1" => Ok(Scenario::Table1),
            "table4" => Ok(Scenario::Table4),
            "genparams" => Ok(Scenario::GenParams),
            "exampleparams" => Ok(Scenario::ExampleParams),
            _ => Err(UnknownScenario(s.to_string())),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Table1 => "table1",
            Scenario::Table4 => "table4",
            Scenario::GenParams => "genParams",
            Scenario::ExampleParams => "exampleParams",
        })
    }
}

/// Optional concrete sizes. Each exact entry is evaluated only when all of
/// its inputs are present.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TableInputs {
    /// Qubits of the input code.
    pub n: Option<usize>,
    pub n_x: Option<usize>,
    pub n_z: Option<usize>,
    /// Classical code length and check count.
    pub t: Option<usize>,
    pub s: Option<usize>,
    /// Repetition length.
    pub l: Option<usize>,
    /// Exponent in `t = n^α`.
    pub alpha: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    /// An asymptotic or quoted expression.
    Formula,
    /// A value computed exactly from the inputs.
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub text: String,
    pub kind: CellKind,
}

fn formula(text: &str) -> Cell {
    Cell {
        text: text.to_string(),
        kind: CellKind::Formula,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub quantity: String,
    pub cells: Vec<Cell>,
}

/// A closed-form count and, when the inputs allow, its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactEntry {
    pub quantity: String,
    pub formula: String,
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamTable {
    pub scenario: Scenario,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
    pub exact: Vec<ExactEntry>,
}

fn rows(spec: &[(&str, &[&str])]) -> Vec<TableRow> {
    spec.iter()
        .map(|(q, cells)| TableRow {
            quantity: q.to_string(),
            cells: cells.iter().map(|c| formula(c)).collect(),
        })
        .collect()
}

fn entry(quantity: &str, formula: &str, value: Option<usize>) -> ExactEntry {
    ExactEntry {
        quantity: quantity.to_string(),
        formula: formula.to_string(),
        value: value.map(|v| v.to_string()),
    }
}

fn exponent(alpha: Rational) -> Rational {
    // 2α/(1+2α) with α = p/q is 2p/(q+2p)
    let (p, q) = (alpha.num(), alpha.den());
    Rational::new(2 * p, q + 2 * p)
}

pub fn param_table(scenario: Scenario, inputs: &TableInputs) -> ParamTable {
    let i = inputs;
    match scenario {
        Scenario::Table1 => {
            let qubits = (|| Some(i.n? * i.l? + i.n_x? * (i.l?.checked_sub(1)?)))();
            ParamTable {
                scenario,
                title: "Balancing the Q-complex with a length-l repetition code".into(),
                columns: vec!["standard checks H_l".into(), "modified checks H̃_l".into()],
                rows: rows(&[
                    ("Physical Qubits", &["O(nl)", "O(nl)"]),
                    ("Soundness", &["Ω(1/l)", "Ω(1)"]),
                    ("Distance", &["Θ(min(n,l))", "Θ(min(n,l))"]),
                    ("Dimension", &["Θ(n)", "Θ(n)"]),
                    ("Locality", &["Θ(1)", "(avg,max) = (Θ(1), Θ(l))"]),
                ]),
                exact: vec![
                    entry("Physical Qubits", "n·l + n_X·(l−1)", qubits),
                    entry(
                        "Locality of H̃_l",
                        "l−1 (heavy last column)",
                        i.l.map(|l| l - 1),
                    ),
                ],
            }
        }
        Scenario::Table4 => {
            let qubits = (|| Some(i.n? * i.t? + i.n_x? * i.s?))();
            let x_checks = (|| Some(i.n_x? * i.t?))();
            let z_checks = (|| Some(i.n_z? * i.t? + i.n? * i.s?))();
            ParamTable {
                scenario,
                title: "Balancing the Q-complex".into(),
                columns: vec![
                    "repetition code, length l".into(),
                    "independent-check LDPC code, length t".into(),
                    "example, t = Θ(log n)".into(),
                ],
                rows: rows(&[
                    ("Physical Qubits", &["Θ(nl)", "Θ(nt)", "n"]),
                    ("Soundness", &["Ω(1/l)", "Ω(1/t)", "Ω(1/log(n))"]),
                    ("Distance", &["Θ(min(n,l))", "Θ(min(n,t))", "Θ(log(n))"]),
                    ("Rate", &["Θ(1/l)", "Θ(1)", "Θ(1)"]),
                    ("Locality", &["Θ(1)", "Θ(1)", "Θ(1)"]),
                ]),
                exact: vec![
                    entry("Physical Qubits", "n·t + n_X·s", qubits),
                    entry("X checks", "n_X·t", x_checks),
                    entry("Z checks", "n_Z·t + n·s", z_checks),
                ],
            }
        }
        Scenario::GenParams => {
            let qubits = (|| {
                let (n, nx, nz, t, s) = (i.n?, i.n_x?, i.n_z?, i.t?, i.s?);
                let (n1, nz1) = (n * t + nx * s, nz * t + n * s);
                Some(n1 * t + nz1 * s)
            })();
            ParamTable {
                scenario,
                title: "Double balancing with an LDPC code of length t".into(),
                columns: vec![
                    "hypersphere product codes".into(),
                    "hemicubic codes".into(),
                    "hypersphere product, double balanced".into(),
                    "hemicubic, double balanced".into(),
                ],
                rows: rows(&[
                    ("Physical Qubits", &["n", "n", "Θ(nt²)", "Θ(nt²)"]),
                    (
                        "Soundness",
                        &[
                            "1/log(n)²",
                            "Ω(1/log(n))",
                            "Ω(1/(log(n)²·t²))",
                            "Ω(1/(log(n)·t²))",
                        ],
                    ),
                    ("Distance", &["Θ(√n)", "Θ(√n)", "Θ(√n·t)", "Θ(√n·t)"]),
                    ("Dimension", &["2", "1", "Θ(t²)", "Θ(t²)"]),
                    (
                        "Locality",
                        &[
                            "Θ(log(n)/log log(n))",
                            "O(log(n))",
                            "Θ(log(n)/log log(n))",
                            "O(log(n))",
                        ],
                    ),
                ]),
                exact: vec![entry(
                    "Physical Qubits after two rounds",
                    "(n·t + n_X·s)·t + (n_Z·t + n·s)·s",
                    qubits,
                )],
            }
        }
        Scenario::ExampleParams => {
            let e = i.alpha.map(exponent);
            let power = match e {
                Some(e) if e.den() == 1 => format!("n^{}", e.num()),
                Some(e) => format!("n^({e})"),
                None => "n^(2α/(1+2α))".to_string(),
            };
            let soundness = format!("Ω(1/({power}·log(n)))");
            let dimension = format!("Θ({power})");
            let poly_col = match i.alpha {
                Some(a) => format!("polynomial example, t = n^({a})"),
                None => "polynomial example, t = n^α".to_string(),
            };
            ParamTable {
                scenario,
                title: "Double balancing the hemicubic codes".into(),
                columns: vec!["logarithmic example, t = √log(n)".into(), poly_col],
                rows: vec![
                    TableRow {
                        quantity: "Physical Qubits".into(),
                        cells: vec![formula("n"), formula("n")],
                    },
                    TableRow {
                        quantity: "Soundness".into(),
                        cells: vec![formula("Ω(1/log(n)²)"), formula(&soundness)],
                    },
                    TableRow {
                        quantity: "Distance".into(),
                        cells: vec![formula("Θ(√n)"), formula("Θ(√n)")],
                    },
                    TableRow {
                        quantity: "Dimension".into(),
                        cells: vec![formula("Θ(log(n))"), formula(&dimension)],
                    },
                    TableRow {
                        quantity: "Locality".into(),
                        cells: vec![formula("O(log(n))"), formula("O(log(n))")],
                    },
                ],
                exact: vec![ExactEntry {
                    quantity: "Dimension exponent".into(),
                    formula: "2α/(1+2α)".into(),
                    value: e.map(|e| e.to_string()),
                }],
            }
        }
    }
}

impl ParamTable {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("{}\n\n", self.title);
        out.push_str("| |");
        for c in &self.columns {
            out.push_str(&format!(" {c} |"));
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(self.columns.len()));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("| {} |", r.quantity));
            for c in &r.cells {
                out.push_str(&format!(" {} |", c.text));
            }
            out.push('\n');
        }
        out.push_str("\nAll table entries are asymptotic formulas, not measurements.\n");
        if !self.exact.is_empty() {
            out.push_str("\nExact counts:\n");
            for e in &self.exact {
                match &e.value {
                    Some(v) => out.push_str(&format!("- {}: {} = {}\n", e.quantity, e.formula, v)),
                    None => out.push_str(&format!("- {}: {}\n", e.quantity, e.formula)),
                }
            }
        }
        out
    }
}
