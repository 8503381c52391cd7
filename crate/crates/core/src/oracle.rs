//! Exact code parameters by exhaustive enumeration.
//!
//! Every routine here is exact: distances come from [`crate::search`], and
//! soundness is a reduced [`Rational`]. Anything whose exhaustive set would
//! exceed the enumeration cap fails with [`CapExceeded`] instead of guessing.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{ClassicalCode, CssCode};
use crate::gf2::{popcount_words, words_for, xor_words, BitMatrix, BitVector};
use crate::rational::Rational;
use crate::search::{min_weight, Admit};

pub use crate::search::CapExceeded;

/// Default bound on the size of any exhaustive set, 2^24.
pub const DEFAULT_CAP: u64 = 1 << 24;

/// A code distance; `Infinite` when there are no logical operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl Mul for Distance {
    type Output = Distance;
    fn mul(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a * b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => serializer.serialize_u64(*d as u64),
            Distance::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Int(u64),
            Str(String),
        }
        match Wire::deserialize(deserializer)? {
            Wire::Int(d) => Ok(Distance::Finite(d as usize)),
            Wire::Str(s) if s == "inf" => Ok(Distance::Infinite),
            Wire::Str(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

/// The two check types of a CSS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Z,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Z => "Z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndefinedCause {
    /// s = 0: the normalising denominator vanishes.
    NoChecks,
    /// Every check is zero, so the code is the whole space.
    WholeSpace,
}

impl fmt::Display for UndefinedCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UndefinedCause::NoChecks => "no checks",
            UndefinedCause::WholeSpace => "code is the whole space",
        })
    }
}

/// Soundness of a check matrix, or the reason it is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Soundness {
    Value(Rational),
    Undefined {
        side: Option<Side>,
        cause: UndefinedCause,
    },
}

impl Soundness {
    pub fn value(self) -> Option<Rational> {
        match self {
            Soundness::Value(r) => Some(r),
            Soundness::Undefined { .. } => None,
        }
    }

    fn on_side(self, side: Side) -> Soundness {
        match self {
            Soundness::Undefined { cause, .. } => Soundness::Undefined {
                side: Some(side),
                cause,
            },
            v => v,
        }
    }
}

impl fmt::Display for Soundness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Soundness::Value(r) => write!(f, "{r}"),
            Soundness::Undefined {
                side: Some(s),
                cause,
            } => {
                write!(f, "undefined ({s} side: {cause})")
            }
            Soundness::Undefined { side: None, cause } => write!(f, "undefined ({cause})"),
        }
    }
}

impl Serialize for Soundness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Soundness::Value(r) => r.serialize(serializer),
            Soundness::Undefined { .. } => serializer.serialize_str("undefined"),
        }
    }
}

pub fn classical_dimension(code: &ClassicalCode) -> usize {
    code.t() - code.rank()
}

/// Minimum weight of a nonzero codeword of ker(H).
pub fn classical_distance(code: &ClassicalCode, cap: u64) -> Result<Distance, CapExceeded> {
    let zero = BitVector::zeros(code.s());
    Ok(match min_weight(code.h(), &zero, &Admit::NonZero, cap)? {
        Some(d) => Distance::Finite(d),
        None => Distance::Infinite,
    })
}

/// d(x, ker H) = min over codewords c of |x + c|.
pub fn distance_to_code(
    x: &BitVector,
    code: &ClassicalCode,
    cap: u64,
) -> Result<usize, CapExceeded> {
    assert_eq!(x.len(), code.t(), "word length must equal code length");
    let syndrome = code.h().mul_vec(x).expect("length checked");
    Ok(min_weight(code.h(), &syndrome, &Admit::Any, cap)?.expect("x itself solves H·v = H·x"))
}

/// The largest ρ with `|Hx|/s ≥ ρ·d(x, ker H)/t` for every word `x`.
///
/// Both `|Hx|` and `d(x, ker H)` depend only on the syndrome of `x`, and the
/// distance is the weight of that syndrome coset's leader. Leaders are found
/// by breadth-first search in syndrome space, where one step adds a column of
/// `H`, so each of the `2^rank(H)` syndromes is visited once.
pub fn classical_soundness(code: &ClassicalCode, cap: u64) -> Result<Soundness, CapExceeded> {
    let (t, s) = (code.t(), code.s());
    if s == 0 {
        return Ok(Soundness::Undefined {
            side: None,
            cause: UndefinedCause::NoChecks,
        });
    }
    let h = code.h();
    let pivots = h.independent_rows();
    let r = pivots.len();
    if r == 0 {
        return Ok(Soundness::Undefined {
            side: None,
            cause: UndefinedCause::WholeSpace,
        });
    }
    if r >= 63 || (1u64 << r) > cap {
        return Err(CapExceeded {
            log2_required: r as u32,
            cap,
        });
    }

    // A syndrome is determined by its entries on a basis of the row space,
    // so those r bits index the search space.
    let ht = h.transpose();
    let keys: Vec<u64> = (0..t)
        .map(|j| {
            pivots
                .iter()
                .enumerate()
                .filter(|&(_, &p)| h.get(p, j))
                .fold(0u64, |k, (i, _)| k | (1 << i))
        })
        .collect();
    let stride = words_for(s);

    const UNSEEN: u8 = u8::MAX;
    let mut leader = vec![UNSEEN; 1usize << r];
    leader[0] = 0;
    let mut frontier_keys = vec![0u64];
    let mut frontier_syn = vec![0u64; stride];
    let mut best: Option<(u128, u128)> = None;
    let mut depth: u8 = 0;
    while !frontier_keys.is_empty() {
        depth += 1;
        let mut next_keys = Vec::new();
        let mut next_syn = Vec::new();
        for (idx, &key) in frontier_keys.iter().enumerate() {
            let syn = &frontier_syn[idx * stride..(idx + 1) * stride];
            for (j, &kj) in keys.iter().enumerate() {
                let nk = key ^ kj;
                if leader[nk as usize] != UNSEEN {
                    continue;
                }
                leader[nk as usize] = depth;
                let start = next_syn.len();
                next_syn.extend_from_slice(syn);
                xor_words(&mut next_syn[start..], ht.row_words(j));
                let weight = popcount_words(&next_syn[start..]) as u128;
                let num = t as u128 * weight;
                let den = s as u128 * depth as u128;
                if best.is_none_or(|(bn, bd)| num * bd < bn * den) {
                    best = Some((num, den));
                }
                next_keys.push(nk);
            }
        }
        frontier_keys = next_keys;
        frontier_syn = next_syn;
    }
    let (num, den) = best.expect("rank ≥ 1 leaves a nonzero syndrome");
    Ok(Soundness::Value(Rational::new(num, den)))
}

pub fn quantum_dimension(code: &CssCode) -> usize {
    code.n() - code.h_x().rank() - code.h_z().rank()
}

fn logical_distance(
    checks: &BitMatrix,
    stabilizers: &BitMatrix,
    cap: u64,
) -> Result<Distance, CapExceeded> {
    // rowspace(S) = ker(G)ᵀ-orthogonal complement: v ∈ rowspace(S) iff G·v = 0
    // for G whose rows span ker(S).
    let g = BitMatrix::from_row_vectors(stabilizers.cols(), &stabilizers.kernel_basis());
    let zero = BitVector::zeros(checks.rows());
    Ok(
        match min_weight(checks, &zero, &Admit::OutsideKernelOf(g), cap)? {
            Some(d) => Distance::Finite(d),
            None => Distance::Infinite,
        },
    )
}

/// `(d_X, d_Z)`: minimum weights over ker(H_Z) \ im(H_Xᵀ) and ker(H_X) \ im(H_Zᵀ).
pub fn quantum_distances(code: &CssCode, cap: u64) -> Result<(Distance, Distance), CapExceeded> {
    let d_x = logical_distance(code.h_z(), code.h_x(), cap)?;
    let d_z = logical_distance(code.h_x(), code.h_z(), cap)?;
    Ok((d_x, d_z))
}

pub trait Locality {
    /// Largest row or column weight over all check matrices.
    fn locality(&self) -> usize;
}

impl Locality for ClassicalCode {
    fn locality(&self) -> usize {
        self.h().max_weight()
    }
}

impl Locality for CssCode {
    fn locality(&self) -> usize {
        self.h_x().max_weight().max(self.h_z().max_weight())
    }
}

/// Soundness of the two component classical codes of a CSS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentSoundness {
    /// Code with parity-check matrix H_X.
    pub x: Soundness,
    /// Code with parity-check matrix H_Z.
    pub z: Soundness,
}

impl ComponentSoundness {
    /// The smaller of the two; a CSS code whose components both have
    /// soundness ρ is itself locally testable with soundness at least ρ.
    /// Undefined if either side is, naming that side.
    pub fn combined(&self) -> Soundness {
        match (self.x, self.z) {
            (Soundness::Value(a), Soundness::Value(b)) => Soundness::Value(a.min(b)),
            (u @ Soundness::Undefined { .. }, _) => u,
            (_, u) => u,
        }
    }
}

pub fn quantum_soundness(code: &CssCode, cap: u64) -> Result<ComponentSoundness, CapExceeded> {
    let x = classical_soundness(&ClassicalCode::new(code.h_x().clone()), cap)?.on_side(Side::X);
    let z = classical_soundness(&ClassicalCode::new(code.h_z().clone()), cap)?.on_side(Side::Z);
    Ok(ComponentSoundness { x, z })
}

/// Parameters of a classical code. `None` marks a value skipped because its
/// enumeration exceeded the cap; such fields are listed in `incomplete`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalReport {
    pub kind: &'static str,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub d: Option<Distance>,
    pub soundness: Option<Soundness>,
    pub locality: usize,
    pub s: usize,
    pub provenance: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub incomplete: Vec<String>,
}

/// Parameters of a CSS code. `soundness` is the component soundness, the
/// minimum over the H_X and H_Z codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumReport {
    pub kind: &'static str,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "dX")]
    pub d_x: Option<Distance>,
    #[serde(rename = "dZ")]
    pub d_z: Option<Distance>,
    pub locality: usize,
    pub soundness: Option<Soundness>,
    #[serde(rename = "nX")]
    pub n_x: usize,
    #[serde(rename = "nZ")]
    pub n_z: usize,
    pub provenance: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub incomplete: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CodeReport {
    Classical(ClassicalReport),
    Quantum(QuantumReport),
}

impl CodeReport {
    pub fn incomplete(&self) -> &[String] {
        match self {
            CodeReport::Classical(r) => &r.incomplete,
            CodeReport::Quantum(r) => &r.incomplete,
        }
    }

    pub fn provenance(&self) -> &str {
        match self {
            CodeReport::Classical(r) => &r.provenance,
            CodeReport::Quantum(r) => &r.provenance,
        }
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        match &mut self {
            CodeReport::Classical(r) => r.provenance = provenance.into(),
            CodeReport::Quantum(r) => r.provenance = provenance.into(),
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }

    /// Aligned `key: value` lines for terminals.
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "(cap exceeded)".into());
        let mut rows: Vec<(&str, String)> = Vec::new();
        match self {
            CodeReport::Classical(r) => {
                rows.push(("kind", r.kind.into()));
                rows.push(("length t", r.n.to_string()));
                rows.push(("dimension k", r.k.to_string()));
                rows.push(("distance d", opt(r.d.map(|d| d.to_string()))));
                rows.push(("checks s", r.s.to_string()));
                rows.push(("locality", r.locality.to_string()));
                rows.push(("soundness", opt(r.soundness.map(|s| s.to_string()))));
                rows.push(("provenance", r.provenance.clone()));
            }
            CodeReport::Quantum(r) => {
                rows.push(("kind", r.kind.into()));
                rows.push(("qubits n", r.n.to_string()));
                rows.push(("dimension K", r.k.to_string()));
                rows.push(("X-distance dX", opt(r.d_x.map(|d| d.to_string()))));
                rows.push(("Z-distance dZ", opt(r.d_z.map(|d| d.to_string()))));
                rows.push(("X checks nX", r.n_x.to_string()));
                rows.push(("Z checks nZ", r.n_z.to_string()));
                rows.push(("locality", r.locality.to_string()));
                rows.push((
                    "component soundness",
                    opt(r.soundness.map(|s| s.to_string())),
                ));
                rows.push(("provenance", r.provenance.clone()));
            }
        }
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        if !self.incomplete().is_empty() {
            out.push_str(&format!(
                "{:<width$}  {}\n",
                "incomplete",
                self.incomplete().join(", ")
            ));
        }
        out
    }
}

pub fn analyze_classical(code: &ClassicalCode, cap: u64, provenance: &str) -> CodeReport {
    let mut incomplete = Vec::new();
    let d = classical_distance(code, cap)
        .map_err(|_| incomplete.push("d".to_string()))
        .ok();
    let soundness = classical_soundness(code, cap)
        .map_err(|_| incomplete.push("soundness".to_string()))
        .ok();
    CodeReport::Classical(ClassicalReport {
        kind: "classical",
        n: code.t(),
        k: classical_dimension(code),
        d,
        soundness,
        locality: code.locality(),
        s: code.s(),
        provenance: provenance.to_string(),
        incomplete,
    })
}

pub fn analyze_quantum(code: &CssCode, cap: u64, provenance: &str) -> CodeReport {
    let mut incomplete = Vec::new();
    let (d_x, d_z) = match quantum_distances(code, cap) {
        Ok((a, b)) => (Some(a), Some(b)),
        Err(_) => {
            // one side may still fit
            let g = |checks: &BitMatrix, stab: &BitMatrix, name: &str, inc: &mut Vec<String>| {
                logical_distance(checks, stab, cap)
                    .map_err(|_| inc.push(name.to_string()))
                    .ok()
            };
            let a = g(code.h_z(), code.h_x(), "dX", &mut incomplete);
            let b = g(code.h_x(), code.h_z(), "dZ", &mut incomplete);
            (a, b)
        }
    };
    let soundness = quantum_soundness(code, cap)
        .map(|c| c.combined())
        .map_err(|_| incomplete.push("soundness".to_string()))
        .ok();
    CodeReport::Quantum(QuantumReport {
        kind: "quantum",
        n: code.n(),
        k: quantum_dimension(code),
        d_x,
        d_z,
        locality: code.locality(),
        soundness,
        n_x: code.n_x(),
        n_z: code.n_z(),
        provenance: provenance.to_string(),
        incomplete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = DEFAULT_CAP;

    fn rep3() -> ClassicalCode {
        ClassicalCode::new(BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1]]))
    }

    fn hamming() -> ClassicalCode {
        ClassicalCode::new(BitMatrix::from_fn(3, 7, |r, c| ((c + 1) >> r) & 1 == 1))
    }

    fn q_of(hhat: &BitMatrix) -> CssCode {
        let n = hhat.cols();
        let i = BitMatrix::identity(n);
        let h_z = BitMatrix::block(&[vec![Some(&i), Some(&i)]]).unwrap();
        let h_x = BitMatrix::block(&[vec![Some(hhat), Some(hhat)]]).unwrap();
        CssCode::from_checks(h_x, h_z).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(classical_dimension(&rep3()), 1);
        assert_eq!(classical_dimension(&hamming()), 4);
        assert_eq!(
            classical_dimension(&ClassicalCode::new(BitMatrix::zeros(0, 5))),
            5
        );
    }

    #[test]
    fn distances() {
        assert_eq!(classical_distance(&rep3(), CAP), Ok(Distance::Finite(3)));
        assert_eq!(classical_distance(&hamming(), CAP), Ok(Distance::Finite(3)));
        let full = ClassicalCode::new(BitMatrix::identity(4));
        assert_eq!(classical_distance(&full, CAP), Ok(Distance::Infinite));
    }

    #[test]
    fn distance_to_rep3() {
        let c = rep3();
        assert_eq!(
            distance_to_code(&BitVector::from_bits(&[1, 1, 1]), &c, CAP),
            Ok(0)
        );
        assert_eq!(
            distance_to_code(&BitVector::from_bits(&[1, 1, 0]), &c, CAP),
            Ok(1)
        );
        assert_eq!(
            distance_to_code(&BitVector::from_bits(&[1, 0, 0]), &c, CAP),
            Ok(1)
        );
    }

    #[test]
    fn soundness_examples() {
        assert_eq!(
            classical_soundness(&rep3(), CAP),
            Ok(Soundness::Value(Rational::new(3, 2)))
        );
        let single = ClassicalCode::new(BitMatrix::from_rows(2, &[[1, 1]]));
        assert_eq!(
            classical_soundness(&single, CAP),
            Ok(Soundness::Value(Rational::integer(2)))
        );
        let padded =
            ClassicalCode::new(BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1], [0, 0, 0]]));
        assert_eq!(
            classical_soundness(&padded, CAP),
            Ok(Soundness::Value(Rational::ONE))
        );
    }

    #[test]
    fn soundness_undefined_cases() {
        let none = ClassicalCode::new(BitMatrix::zeros(0, 3));
        assert!(matches!(
            classical_soundness(&none, CAP),
            Ok(Soundness::Undefined {
                cause: UndefinedCause::NoChecks,
                ..
            })
        ));
        let zero = ClassicalCode::new(BitMatrix::zeros(2, 3));
        assert!(matches!(
            classical_soundness(&zero, CAP),
            Ok(Soundness::Undefined {
                cause: UndefinedCause::WholeSpace,
                ..
            })
        ));
    }

    #[test]
    fn trivial_kernel_soundness_uses_word_weight() {
        // ker = {0}: d(x, ker) = |x|, so ρ = min t|x|/(s|x|) over x ≠ 0 = 1 for I
        let id = ClassicalCode::new(BitMatrix::identity(3));
        assert_eq!(
            classical_soundness(&id, CAP),
            Ok(Soundness::Value(Rational::ONE))
        );
    }

    #[test]
    fn quantum_toy_and_q_complex() {
        let toy = CssCode::from_checks(
            BitMatrix::from_rows(2, &[[1, 1]]),
            BitMatrix::from_rows(2, &[[1, 1]]),
        )
        .unwrap();
        assert_eq!(quantum_dimension(&toy), 0);
        assert_eq!(
            quantum_distances(&toy, CAP),
            Ok((Distance::Infinite, Distance::Infinite))
        );

        let q = q_of(rep3().h());
        assert_eq!(quantum_dimension(&q), 1);
        assert_eq!(
            quantum_distances(&q, CAP),
            Ok((Distance::Finite(2), Distance::Finite(3)))
        );
        let qh = q_of(hamming().h());
        assert_eq!(quantum_dimension(&qh), 4);
        assert_eq!(
            quantum_distances(&qh, CAP),
            Ok((Distance::Finite(2), Distance::Finite(3)))
        );

        let empty = CssCode::from_checks(BitMatrix::zeros(0, 4), BitMatrix::zeros(0, 4)).unwrap();
        assert_eq!(quantum_dimension(&empty), 4);
    }

    #[test]
    fn locality_examples() {
        assert_eq!(rep3().locality(), 2);
        assert_eq!(ClassicalCode::new(BitMatrix::identity(5)).locality(), 1);
        assert_eq!(hamming().locality(), 4);
    }

    #[test]
    fn component_soundness_of_q_rep3() {
        let q = q_of(rep3().h());
        let c = quantum_soundness(&q, CAP).unwrap();
        let x = classical_soundness(&ClassicalCode::new(q.h_x().clone()), CAP).unwrap();
        let z = classical_soundness(&ClassicalCode::new(q.h_z().clone()), CAP).unwrap();
        assert_eq!(c.x, x);
        assert_eq!(c.z, z);
        assert_eq!(
            c.combined().value(),
            Some(x.value().unwrap().min(z.value().unwrap()))
        );
    }

    #[test]
    fn component_soundness_names_failing_side() {
        let q = CssCode::from_checks(BitMatrix::zeros(0, 2), BitMatrix::from_rows(2, &[[1, 1]]))
            .unwrap();
        let c = quantum_soundness(&q, CAP).unwrap();
        assert_eq!(
            c.combined(),
            Soundness::Undefined {
                side: Some(Side::X),
                cause: UndefinedCause::NoChecks
            }
        );
    }

    #[test]
    fn report_json_shape() {
        let r = analyze_classical(&rep3(), CAP, "rep_standard(3)");
        assert_eq!(
            r.to_json(),
            r#"{"kind":"classical","n":3,"K":1,"d":3,"soundness":{"num":3,"den":2},"locality":2,"s":2,"provenance":"rep_standard(3)"}"#
        );
        let q = analyze_quantum(&q_of(rep3().h()), CAP, "q");
        let v: serde_json::Value = serde_json::from_str(&q.to_json()).unwrap();
        assert_eq!(v["dX"], 2);
        assert_eq!(v["dZ"], 3);
        let inf = analyze_quantum(
            &CssCode::from_checks(
                BitMatrix::from_rows(2, &[[1, 1]]),
                BitMatrix::from_rows(2, &[[1, 1]]),
            )
            .unwrap(),
            CAP,
            "toy",
        );
        assert!(inf.to_json().contains(r#""dX":"inf""#));
    }

    #[test]
    fn report_marks_cap_overflow() {
        let wide = ClassicalCode::new(BitMatrix::from_fn(5, 31, |r, c| ((c + 1) >> r) & 1 == 1));
        let r = analyze_classical(&wide, 1 << 4, "hamming31");
        assert_eq!(r.incomplete(), &["d".to_string(), "soundness".to_string()]);
        assert!(r.to_json().contains(r#""d":null"#));
    }
}
