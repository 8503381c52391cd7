//! Distance balancing: the product of a CSS code with the cocomplex of a
//! classical code, its iterated form, parameter predictions, and the exact
//! soundness lower bounds for the balanced checks.
//!
//! For `Q = (F2^{n_Z} → F2^n → F2^{n_X})` and a classical code `H: F2^t → F2^s`,
//! the balanced code has
//!
//! ```text
//! C_2 = (n_Z⊗t) ⊕ (n⊗s)  --∂₂-->  C_1 = (n⊗t) ⊕ (n_X⊗s)  --∂₁-->  C_0 = n_X⊗t
//!
//! ∂₂ = [ H_Zᵀ⊗I_t   I_n⊗Hᵀ  ]      ∂₁ = [ H_X⊗I_t   I_{n_X}⊗Hᵀ ]
//!      [    0       H_X⊗I_s ]
//! ```
//!
//! with `H_Z′ = ∂₂ᵀ` and `H_X′ = ∂₁`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ChainComplex, ClassicalCode, ComplexError, CssCode};
use crate::oracle::{
    classical_dimension, classical_distance, classical_soundness, quantum_dimension,
    quantum_distances, quantum_soundness, CapExceeded, Distance, Locality, Side, Soundness,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalanceError {
    #[error("classical code has dependent checks (rank {rank} < {s} rows); reduce them first")]
    DependentChecks { rank: usize, s: usize },
    #[error("classical code has more checks than bits (s = {s} > t = {t})")]
    TooManyChecks { s: usize, t: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A contiguous index range `[start, end)` inside one space, with the tensor
/// factors it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

/// Where each tensor block sits among the qubits and the two check sets.
/// Within a block `A⊗B`, index `a·dim B + b` is the tensor coordinate `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockLayout {
    pub qubits: Vec<Block>,
    pub x_checks: Vec<Block>,
    pub z_checks: Vec<Block>,
}

fn blocks(parts: &[(&str, usize)]) -> Vec<Block> {
    let mut start = 0;
    parts
        .iter()
        .map(|&(label, len)| {
            let b = Block {
                label: label.to_string(),
                start,
                end: start + len,
            };
            start += len;
            b
        })
        .collect()
}

/// Descriptions of the two inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parent {
    pub quantum: String,
    pub classical: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedCode {
    pub code: CssCode,
    pub parent: Parent,
    pub block_layout: BlockLayout,
    /// Number of balancing rounds applied (1 or 2).
    pub rounds: usize,
}

impl BalancedCode {
    pub fn with_parent(mut self, quantum: impl Into<String>, classical: impl Into<String>) -> Self {
        self.parent = Parent {
            quantum: quantum.into(),
            classical: classical.into(),
        };
        self
    }
}

fn describe_css(q: &CssCode) -> String {
    format!("css(n={}, nX={}, nZ={})", q.n(), q.n_x(), q.n_z())
}

fn describe_classical(r: &ClassicalCode) -> String {
    format!("classical(t={}, s={})", r.t(), r.s())
}

fn check_classical(r: &ClassicalCode) -> Result<(), BalanceError> {
    if !r.independent_checks() {
        return Err(BalanceError::DependentChecks {
            rank: r.rank(),
            s: r.s(),
        });
    }
    if r.s() > r.t() {
        return Err(BalanceError::TooManyChecks { s: r.s(), t: r.t() });
    }
    Ok(())
}

fn balance_once(q: &CssCode, r: &ClassicalCode) -> Result<CssCode, BalanceError> {
    check_classical(r)?;
    let product = q.complex().homological_product(&r.complex().cocomplex())?;
    // product degrees are 3..0; the code lives on degrees 2..0
    let window = product.window(2, 0)?;
    Ok(CssCode::from_complex(strip_labels(window))?)
}

fn strip_labels(c: ChainComplex) -> ChainComplex {
    ChainComplex::new(c.spaces().to_vec(), c.diffs().to_vec(), None).expect("same shapes")
}

/// One round of distance balancing.
pub fn distance_balance(q: &CssCode, r: &ClassicalCode) -> Result<BalancedCode, BalanceError> {
    let code = balance_once(q, r)?;
    let (n, n_x, n_z, t, s) = (q.n(), q.n_x(), q.n_z(), r.t(), r.s());
    let block_layout = BlockLayout {
        qubits: blocks(&[("n⊗t", n * t), ("nX⊗s", n_x * s)]),
        x_checks: blocks(&[("nX⊗t", n_x * t)]),
        z_checks: blocks(&[("nZ⊗t", n_z * t), ("n⊗s", n * s)]),
    };
    Ok(BalancedCode {
        code,
        parent: Parent {
            quantum: describe_css(q),
            classical: describe_classical(r),
        },
        block_layout,
        rounds: 1,
    })
}

/// Balances, swaps X and Z, balances again, and swaps back, so both distances
/// grow by the classical distance.
pub fn double_balance(q: &CssCode, r: &ClassicalCode) -> Result<BalancedCode, BalanceError> {
    let first = balance_once(q, r)?;
    let second = balance_once(&first.dual(), r)?;
    let code = second.dual();
    let (n1, n1_x, n1_z, t, s) = (first.n(), first.n_x(), first.n_z(), r.t(), r.s());
    // the second round sees (n′, nX = nZ′, nZ = nX′); the final swap turns its
    // C_2 into X checks and its C_0 into Z checks
    let block_layout = BlockLayout {
        qubits: blocks(&[("n′⊗t", n1 * t), ("nZ′⊗s", n1_z * s)]),
        x_checks: blocks(&[("nX′⊗t", n1_x * t), ("n′⊗s", n1 * s)]),
        z_checks: blocks(&[("nZ′⊗t", n1_z * t)]),
    };
    Ok(BalancedCode {
        code,
        parent: Parent {
            quantum: describe_css(q),
            classical: describe_classical(r),
        },
        block_layout,
        rounds: 2,
    })
}

/// Parameters of a CSS code as used by the predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    pub n_x: usize,
    pub n_z: usize,
    /// Soundness of the H_X code.
    pub rho_x: Option<Rational>,
    /// Soundness of the H_Z code.
    pub rho_z: Option<Rational>,
    pub locality: usize,
}

/// Parameters of a classical code as used by the predictors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalParams {
    pub t: usize,
    pub k: usize,
    pub d: Distance,
    pub s: usize,
    pub locality: usize,
}

impl QuantumParams {
    /// Measures every parameter by enumeration.
    pub fn measure(q: &CssCode, cap: u64) -> Result<Self, CapExceeded> {
        let (d_x, d_z) = quantum_distances(q, cap)?;
        let rho = quantum_soundness(q, cap)?;
        Ok(Self {
            n: q.n(),
            k: quantum_dimension(q),
            d_x,
            d_z,
            n_x: q.n_x(),
            n_z: q.n_z(),
            rho_x: rho.x.value(),
            rho_z: rho.z.value(),
            locality: q.locality(),
        })
    }
}

impl ClassicalParams {
    pub fn measure(r: &ClassicalCode, cap: u64) -> Result<Self, CapExceeded> {
        Ok(Self {
            t: r.t(),
            k: classical_dimension(r),
            d: classical_distance(r, cap)?,
            s: r.s(),
            locality: r.locality(),
        })
    }
}

/// Parameters of a balanced code computed from the inputs alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedParams {
    pub n: usize,
    pub n_x: usize,
    pub n_z: usize,
    pub k: usize,
    pub d_x: Distance,
    pub d_z: Distance,
    /// Lower bound on the soundness of the ∂₂ᵀ checks; `None` when the input
    /// soundness it needs is undefined or the expression divides by zero.
    pub soundness_bound_x: Option<Rational>,
    /// Lower bound on the soundness of the ∂₁ checks.
    pub soundness_bound_z: Option<Rational>,
    pub locality_bound: usize,
}

fn ratio(num: usize, den: usize) -> Option<Rational> {
    (den != 0).then(|| Rational::new(num as u128, den as u128))
}

/// `(1/(s+1))·min(n_Z·ρ_Z/n, 1)·(n·t + n_X·s)/(n_Z·t + n·s)`.
pub fn x_side_bound(q: &QuantumParams, t: usize, s: usize, rho_z: Rational) -> Option<Rational> {
    let scaled = (ratio(q.n_z, q.n)? * rho_z).min(Rational::ONE);
    Some(ratio(1, s + 1)? * scaled * ratio(q.n * t + q.n_x * s, q.n_z * t + q.n * s)?)
}

/// `(1/t)·min(n_X·ρ_X/n, 1)·(n·t + n_X·s)/(n_X·t)`.
pub fn z_side_bound(q: &QuantumParams, t: usize, s: usize, rho_x: Rational) -> Option<Rational> {
    let scaled = (ratio(q.n_x, q.n)? * rho_x).min(Rational::ONE);
    Some(ratio(1, t)? * scaled * ratio(q.n * t + q.n_x * s, q.n_x * t)?)
}

fn logical_or_infinite(k: usize, d: Distance) -> Distance {
    if k == 0 {
        Distance::Infinite
    } else {
        d
    }
}

/// One round: `K′ = K·k`, `d_X′ = d_X·d`, `d_Z′ = d_Z` (exact when the
/// classical checks are independent), plus both soundness bounds.
pub fn predicted_params(q: &QuantumParams, r: &ClassicalParams) -> PredictedParams {
    let (t, s) = (r.t, r.s);
    let k = q.k * r.k;
    PredictedParams {
        n: q.n * t + q.n_x * s,
        n_x: q.n_x * t,
        n_z: q.n_z * t + q.n * s,
        k,
        d_x: logical_or_infinite(k, q.d_x * r.d),
        d_z: logical_or_infinite(k, q.d_z),
        soundness_bound_x: q.rho_z.and_then(|rho| x_side_bound(q, t, s, rho)),
        soundness_bound_z: q.rho_x.and_then(|rho| z_side_bound(q, t, s, rho)),
        locality_bound: q.locality + r.locality,
    }
}

/// Two rounds: `K″ = K·k²`, `d_X″ = d·d_X`, `d_Z″ = d·d_Z`. Soundness bounds
/// are not predicted for the second round.
pub fn predicted_double(q: &QuantumParams, r: &ClassicalParams) -> PredictedParams {
    let (t, s) = (r.t, r.s);
    let first = predicted_params(q, r);
    let k = first.k * r.k;
    PredictedParams {
        n: first.n * t + first.n_z * s,
        n_x: first.n_x * t + first.n * s,
        n_z: first.n_z * t,
        k,
        d_x: logical_or_infinite(k, q.d_x * r.d),
        d_z: logical_or_infinite(k, q.d_z * r.d),
        soundness_bound_x: None,
        soundness_bound_z: None,
        locality_bound: q.locality + 2 * r.locality,
    }
}

/// Measured-versus-bound comparison for one side of a balanced code.
/// Side X is the ∂₂ᵀ check matrix, side Z the ∂₁ check matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SideCheck {
    pub side: Side,
    pub measured: Rational,
    pub bound: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoSource {
    Measured,
    Assumed,
}

/// Whether `ρ ≤ min(2n/n_Z, 2n/n_X)` held for the input soundness used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub rho: Rational,
    /// `None` when both n_X and n_Z are zero, leaving no cap.
    pub limit: Option<Rational>,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub x: SideCheck,
    pub z: SideCheck,
    pub rho_source: RhoSource,
    pub rho_x: Rational,
    pub rho_z: Rational,
    pub hypothesis: Hypothesis,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.x.holds && self.z.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Balance(#[from] BalanceError),
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
    #[error("soundness of the {side} side is undefined: {what}")]
    Undefined { side: Side, what: String },
}

fn defined(s: Soundness, side: Side, what: &str) -> Result<Rational, BoundError> {
    s.value().ok_or_else(|| BoundError::Undefined {
        side,
        what: format!("{what} is {s}"),
    })
}

/// The hypothesis limit `min(2n/n_Z, 2n/n_X)` on the input soundness.
pub fn hypothesis_limit(n: usize, n_x: usize, n_z: usize) -> Option<Rational> {
    [n_z, n_x]
        .into_iter()
        .filter(|&m| m != 0)
        .map(|m| Rational::new(2 * n as u128, m as u128))
        .min()
}

/// Balances `q` with `r`, measures the soundness of both new check matrices,
/// and compares each with its lower bound. Input soundness is measured on
/// the H_X and H_Z codes unless `assume_rho` supplies one value for both.
pub fn bound_check(
    q: &CssCode,
    r: &ClassicalCode,
    assume_rho: Option<Rational>,
    cap: u64,
) -> Result<BoundReport, BoundError> {
    let balanced = distance_balance(q, r)?;
    let (rho_x, rho_z, rho_source) = match assume_rho {
        Some(rho) => (rho, rho, RhoSource::Assumed),
        None => {
            let c = quantum_soundness(q, cap)?;
            (
                defined(c.x, Side::X, "input H_X soundness")?,
                defined(c.z, Side::Z, "input H_Z soundness")?,
                RhoSource::Measured,
            )
        }
    };

    let h_z = ClassicalCode::new(balanced.code.h_z().clone());
    let h_x = ClassicalCode::new(balanced.code.h_x().clone());
    let (mx, mz) = std::thread::scope(|scope| {
        let x = scope.spawn(|| classical_soundness(&h_z, cap));
        let z = classical_soundness(&h_x, cap);
        (x.join().expect("soundness worker"), z)
    });
    let measured_x = defined(mx?, Side::X, "balanced ∂₂ᵀ soundness")?;
    let measured_z = defined(mz?, Side::Z, "balanced ∂₁ soundness")?;

    let qp = QuantumParams {
        n: q.n(),
        k: 0,
        d_x: Distance::Infinite,
        d_z: Distance::Infinite,
        n_x: q.n_x(),
        n_z: q.n_z(),
        rho_x: Some(rho_x),
        rho_z: Some(rho_z),
        locality: 0,
    };
    let undefined_bound = |side| BoundError::Undefined {
        side,
        what: "bound divides by zero".into(),
    };
    let bound_x = x_side_bound(&qp, r.t(), r.s(), rho_z).ok_or_else(|| undefined_bound(Side::X))?;
    let bound_z = z_side_bound(&qp, r.t(), r.s(), rho_x).ok_or_else(|| undefined_bound(Side::Z))?;

    let rho = rho_x.min(rho_z);
    let limit = hypothesis_limit(q.n(), q.n_x(), q.n_z());
    Ok(BoundReport {
        x: SideCheck {
            side: Side::X,
            measured: measured_x,
            bound: bound_x,
            holds: measured_x >= bound_x,
        },
        z: SideCheck {
            side: Side::Z,
            measured: measured_z,
            bound: bound_z,
            holds: measured_z >= bound_z,
        },
        rho_source,
        rho_x,
        rho_z,
        hypothesis: Hypothesis {
            rho,
            limit,
            holds: limit.is_none_or(|l| rho <= l),
        },
    })
}

impl fmt::Display for SideCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: measured {} {} bound {}",
            self.side,
            self.measured,
            if self.holds { ">=" } else { "<" },
            self.bound
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;
    use crate::oracle::DEFAULT_CAP;

    fn h3() -> BitMatrix {
        BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1]])
    }

    fn q_of(hhat: &BitMatrix) -> CssCode {
        let i = BitMatrix::identity(hhat.cols());
        let h_z = BitMatrix::block(&[vec![Some(&i), Some(&i)]]).unwrap();
        let h_x = BitMatrix::block(&[vec![Some(hhat), Some(hhat)]]).unwrap();
        CssCode::from_checks(h_x, h_z).unwrap()
    }

    fn rep2() -> ClassicalCode {
        ClassicalCode::new(BitMatrix::from_rows(2, &[[1, 1]]))
    }

    fn trivial() -> ClassicalCode {
        ClassicalCode::new(BitMatrix::zeros(0, 1))
    }

    #[test]
    fn product_window_equals_explicit_blocks() {
        let q = q_of(&h3());
        let r = rep2();
        let b = distance_balance(&q, &r).unwrap();
        let (n, n_x, n_z) = (q.n(), q.n_x(), q.n_z());
        let (t, s, h) = (r.t(), r.s(), r.h());
        let id = BitMatrix::identity;
        let a = q.h_z().transpose().kron(&id(t));
        let bb = id(n).kron(&h.transpose());
        let c = q.h_x().kron(&id(s));
        let d2 = BitMatrix::block(&[vec![Some(&a), Some(&bb)], vec![None, Some(&c)]]).unwrap();
        let e = q.h_x().kron(&id(t));
        let f = id(n_x).kron(&h.transpose());
        let d1 = BitMatrix::block(&[vec![Some(&e), Some(&f)]]).unwrap();
        assert_eq!(b.code.h_z(), &d2.transpose());
        assert_eq!(b.code.h_x(), &d1);
        assert_eq!((b.code.n(), b.code.n_x(), b.code.n_z()), (14, 4, 12));
        assert_eq!(b.code.n(), n * t + n_x * s);
        assert_eq!(b.code.n_z(), n_z * t + n * s);
    }

    #[test]
    fn layout_covers_each_space() {
        let b = distance_balance(&q_of(&h3()), &rep2()).unwrap();
        let l = &b.block_layout;
        assert_eq!(l.qubits.last().unwrap().end, b.code.n());
        assert_eq!(l.x_checks.last().unwrap().end, b.code.n_x());
        assert_eq!(l.z_checks.last().unwrap().end, b.code.n_z());
        let d = double_balance(&q_of(&h3()), &rep2()).unwrap();
        let l = &d.block_layout;
        assert_eq!(l.qubits.last().unwrap().end, d.code.n());
        assert_eq!(l.x_checks.last().unwrap().end, d.code.n_x());
        assert_eq!(l.z_checks.last().unwrap().end, d.code.n_z());
    }

    #[test]
    fn trivial_classical_code_is_identity() {
        let q = q_of(&h3());
        let b = distance_balance(&q, &trivial()).unwrap();
        assert_eq!(b.code, q);
        let d = double_balance(&q, &trivial()).unwrap();
        assert_eq!(d.code, q);
    }

    #[test]
    fn refuses_bad_classical_inputs() {
        let q = q_of(&h3());
        let dup = ClassicalCode::new(BitMatrix::from_rows(2, &[[1, 1], [1, 1]]));
        assert!(matches!(
            distance_balance(&q, &dup),
            Err(BalanceError::DependentChecks { rank: 1, s: 2 })
        ));
    }

    #[test]
    fn balancing_prediction_matches_oracle() {
        let q = q_of(&h3());
        let r = rep2();
        let qp = QuantumParams::measure(&q, DEFAULT_CAP).unwrap();
        let rp = ClassicalParams::measure(&r, DEFAULT_CAP).unwrap();
        assert_eq!(
            (qp.n, qp.k, qp.d_x, qp.d_z, qp.n_x, qp.n_z),
            (6, 1, Distance::Finite(2), Distance::Finite(3), 2, 3)
        );
        let p = predicted_params(&qp, &rp);
        assert_eq!(
            (p.n, p.k, p.d_x, p.d_z),
            (14, 1, Distance::Finite(4), Distance::Finite(3))
        );
        let b = distance_balance(&q, &r).unwrap();
        assert_eq!(quantum_dimension(&b.code), p.k);
        assert_eq!(
            quantum_distances(&b.code, DEFAULT_CAP).unwrap(),
            (p.d_x, p.d_z)
        );
    }

    #[test]
    fn double_balance_parameters() {
        let q = q_of(&h3());
        let r = rep2();
        let d = double_balance(&q, &r).unwrap();
        let qp = QuantumParams::measure(&q, DEFAULT_CAP).unwrap();
        let rp = ClassicalParams::measure(&r, DEFAULT_CAP).unwrap();
        let p = predicted_double(&qp, &rp);
        assert_eq!(quantum_dimension(&d.code), 1);
        assert_eq!(
            quantum_distances(&d.code, DEFAULT_CAP).unwrap(),
            (Distance::Finite(4), Distance::Finite(6))
        );
        assert_eq!(
            (p.k, p.d_x, p.d_z),
            (1, Distance::Finite(4), Distance::Finite(6))
        );
        assert_eq!(
            (d.code.n(), d.code.n_x(), d.code.n_z()),
            (p.n, p.n_x, p.n_z)
        );
        assert_eq!(p.n, 14 * 2 + 12);
    }

    #[test]
    fn x_side_example_is_seven_twenty_fourths() {
        let q = QuantumParams {
            n: 6,
            k: 1,
            d_x: Distance::Finite(2),
            d_z: Distance::Finite(3),
            n_x: 2,
            n_z: 3,
            rho_x: None,
            rho_z: Some(Rational::ONE),
            locality: 0,
        };
        assert_eq!(
            x_side_bound(&q, 2, 1, Rational::ONE),
            Some(Rational::new(7, 24))
        );
        let r = ClassicalParams {
            t: 2,
            k: 1,
            d: Distance::Finite(2),
            s: 1,
            locality: 2,
        };
        let p = predicted_params(&q, &r);
        assert_eq!(p.soundness_bound_x, Some(Rational::new(7, 24)));
        assert_eq!(p.soundness_bound_z, None);
    }

    #[test]
    fn bounds_hold_for_q_rep3_with_rep2() {
        let rep = bound_check(&q_of(&h3()), &rep2(), None, DEFAULT_CAP).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        assert_eq!(rep.rho_source, RhoSource::Measured);
    }

    #[test]
    fn trivial_code_bound_side_x_measures_input() {
        let q = q_of(&h3());
        let rep = bound_check(&q, &trivial(), None, DEFAULT_CAP).unwrap();
        assert_eq!(rep.x.measured, rep.rho_z);
        assert!(rep.all_hold());
    }

    #[test]
    fn assumed_rho_above_limit_is_flagged() {
        let q = q_of(&h3());
        let rep = bound_check(&q, &rep2(), Some(Rational::integer(5)), DEFAULT_CAP).unwrap();
        assert_eq!(rep.rho_source, RhoSource::Assumed);
        assert_eq!(rep.hypothesis.limit, Some(Rational::integer(4)));
        assert!(!rep.hypothesis.holds);
        // min(n_Z·5/n, 1) clamps to 1
        assert_eq!(rep.x.bound, Rational::new(1, 2) * Rational::new(14, 12));
    }

    #[test]
    fn side_check_json() {
        let c = SideCheck {
            side: Side::X,
            measured: Rational::new(1, 2),
            bound: Rational::new(7, 24),
            holds: true,
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"side":"X","measured":{"num":1,"den":2},"bound":{"num":7,"den":24},"holds":true}"#
        );
    }
}
