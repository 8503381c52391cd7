//! Named code generators and the serialisable [`CodeSpec`] that selects them.

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ClassicalCode, ComplexError, CssCode};
use crate::gf2::{BitMatrix, BitVector};
use crate::io::{read_code, CodeFile, FormatError};

/// Resamples allowed before a random family gives up.
pub const RETRY_BUDGET: usize = 1000;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("no valid sample after {0} attempts")]
    Exhausted(usize),
    #[error("{0} code expected here, found a {1} code")]
    WrongKind(&'static str, &'static str),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn invalid(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Invalid(msg.into())
}

/// Repetition code of length `l` with checks `e_i + e_{i+1}`.
pub fn rep_standard(l: usize) -> Result<ClassicalCode, ConstructionError> {
    if l < 2 {
        return Err(invalid(format!(
            "repetition length must be at least 2, got {l}"
        )));
    }
    Ok(ClassicalCode::new(BitMatrix::from_fn(l - 1, l, |r, c| {
        c == r || c == r + 1
    })))
}

/// Repetition code of length `l` with checks `e_i + e_l`: the same code with
/// one heavy column.
pub fn rep_modified(l: usize) -> Result<ClassicalCode, ConstructionError> {
    if l < 2 {
        return Err(invalid(format!(
            "repetition length must be at least 2, got {l}"
        )));
    }
    Ok(ClassicalCode::new(BitMatrix::from_fn(l - 1, l, |r, c| {
        c == r || c == l - 1
    })))
}

/// The CSS code with `H_Z = [I | I]` and `H_X = [Ĥ | Ĥ]` on `2n` qubits.
pub fn q_complex(hhat: &BitMatrix) -> Result<CssCode, ConstructionError> {
    let n = hhat.cols();
    if n == 0 {
        return Err(invalid("Ĥ needs at least one column"));
    }
    let i = BitMatrix::identity(n);
    let h_z = BitMatrix::block(&[vec![Some(&i), Some(&i)]]).expect("equal heights");
    let h_x = BitMatrix::block(&[vec![Some(hhat), Some(hhat)]]).expect("equal heights");
    Ok(CssCode::from_checks(h_x, h_z)?)
}

/// The [7,4,3] Hamming code; column `c` is the binary expansion of `c + 1`.
pub fn hamming74() -> ClassicalCode {
    ClassicalCode::new(BitMatrix::from_fn(3, 7, |r, c| ((c + 1) >> r) & 1 == 1))
}

/// A seeded random `s×t` check matrix with full row rank.
///
/// With `regular`, every row has weight `row_w` and every column `col_w`
/// (requires `row_w·s = col_w·t` and odd `col_w`, since with even column
/// weight the rows sum to zero). Otherwise each column gets a random weight
/// in `1..=col_w` and no row exceeds `row_w`.
pub fn random_ldpc(
    t: usize,
    s: usize,
    row_w: usize,
    col_w: usize,
    seed: u64,
    regular: bool,
) -> Result<ClassicalCode, ConstructionError> {
    if s > t {
        return Err(invalid(format!("s = {s} exceeds t = {t}")));
    }
    if s == 0 {
        return Ok(ClassicalCode::new(BitMatrix::zeros(0, t)));
    }
    if row_w == 0 || col_w == 0 {
        return Err(invalid("weights must be at least 1"));
    }
    if regular && (row_w > t || col_w > s) {
        return Err(invalid(format!(
            "weights ({row_w}, {col_w}) exceed the matrix shape {s}×{t}"
        )));
    }
    if regular && row_w * s != col_w * t {
        return Err(invalid(format!(
            "regular profile needs row_w·s = col_w·t, got {row_w}·{s} ≠ {col_w}·{t}"
        )));
    }
    if !regular && row_w * s < t {
        return Err(invalid(format!(
            "{s} rows of weight ≤ {row_w} cannot cover {t} columns"
        )));
    }
    if regular && col_w.is_multiple_of(2) {
        return Err(invalid(format!(
            "regular profile with even column weight {col_w} always has dependent checks"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRY_BUDGET {
        let sample = if regular {
            sample_regular(t, s, row_w, col_w, &mut rng)
        } else {
            sample_bounded(t, s, row_w, col_w, &mut rng)
        };
        if let Some(h) = sample {
            if h.rank() == s {
                return Ok(ClassicalCode::new(h));
            }
        }
    }
    Err(ConstructionError::Exhausted(RETRY_BUDGET))
}

// Configuration model: shuffle column sockets into row slots; a repeated
// (row, column) pair would cancel, so such samples are rejected.
fn sample_regular(
    t: usize,
    s: usize,
    row_w: usize,
    col_w: usize,
    rng: &mut ChaCha8Rng,
) -> Option<BitMatrix> {
    let mut sockets: Vec<usize> = (0..t).flat_map(|c| std::iter::repeat_n(c, col_w)).collect();
    sockets.shuffle(rng);
    let mut h = BitMatrix::zeros(s, t);
    for (slot, &c) in sockets.iter().enumerate() {
        let r = slot / row_w;
        if h.get(r, c) {
            return None;
        }
        h.set(r, c, true);
    }
    Some(h)
}

fn sample_bounded(
    t: usize,
    s: usize,
    row_w: usize,
    col_w: usize,
    rng: &mut ChaCha8Rng,
) -> Option<BitMatrix> {
    let mut h = BitMatrix::zeros(s, t);
    let mut load = vec![0usize; s];
    for c in 0..t {
        let open: Vec<usize> = (0..s).filter(|&r| load[r] < row_w).collect();
        if open.is_empty() {
            return None;
        }
        let w = rng.gen_range(1..=col_w.min(open.len()));
        for &r in open.choose_multiple(rng, w) {
            h.set(r, c, true);
            load[r] += 1;
        }
    }
    Some(h)
}

/// A seeded random CSS code: `n_z` nonzero Z checks, and `n_x` nonzero X
/// checks drawn uniformly from ker(H_Z), so the chain condition holds.
pub fn random_css(
    n: usize,
    n_x: usize,
    n_z: usize,
    seed: u64,
) -> Result<CssCode, ConstructionError> {
    if n == 0 {
        return Err(invalid("a CSS code needs at least one qubit"));
    }
    if n == 1 && n_x > 0 && n_z > 0 {
        return Err(invalid(
            "one qubit cannot carry both nonzero X and Z checks",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = BitVector::from_bools((0..n).map(|_| rng.gen::<bool>()));
        if !v.is_zero() {
            return v;
        }
    };
    for _ in 0..RETRY_BUDGET {
        let z_rows: Vec<BitVector> = (0..n_z).map(|_| random_nonzero(&mut rng)).collect();
        let h_z = BitMatrix::from_row_vectors(n, &z_rows);
        let kernel = h_z.kernel_basis();
        if n_x > 0 && kernel.is_empty() {
            continue;
        }
        let mut x_rows = Vec::with_capacity(n_x);
        while x_rows.len() < n_x {
            let mut v = BitVector::zeros(n);
            for b in &kernel {
                if rng.gen::<bool>() {
                    v.xor_assign(b);
                }
            }
            if !v.is_zero() {
                x_rows.push(v);
            }
        }
        let h_x = BitMatrix::from_row_vectors(n, &x_rows);
        return Ok(CssCode::from_checks(h_x, h_z)?);
    }
    Err(ConstructionError::Exhausted(RETRY_BUDGET))
}

/// A named code family with its parameters, as written in job files:
/// `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum CodeSpec {
    Rep {
        l: usize,
    },
    RepModified {
        l: usize,
    },
    QComplex {
        hhat: Box<CodeSpec>,
    },
    Hamming74 {},
    RandomLdpc {
        t: usize,
        s: usize,
        row_w: usize,
        col_w: usize,
        seed: u64,
        #[serde(default)]
        regular: bool,
    },
    RandomCss {
        n: usize,
        n_x: usize,
        n_z: usize,
        seed: u64,
    },
    FromFile {
        path: PathBuf,
    },
}

impl CodeSpec {
    pub fn build(&self) -> Result<CodeFile, ConstructionError> {
        Ok(match self {
            CodeSpec::Rep { l } => CodeFile::Classical(rep_standard(*l)?),
            CodeSpec::RepModified { l } => CodeFile::Classical(rep_modified(*l)?),
            CodeSpec::QComplex { hhat } => {
                let h = hhat.build_classical()?;
                CodeFile::Quantum(q_complex(h.h())?)
            }
            CodeSpec::Hamming74 {} => CodeFile::Classical(hamming74()),
            CodeSpec::RandomLdpc {
                t,
                s,
                row_w,
                col_w,
                seed,
                regular,
            } => CodeFile::Classical(random_ldpc(*t, *s, *row_w, *col_w, *seed, *regular)?),
            CodeSpec::RandomCss { n, n_x, n_z, seed } => {
                CodeFile::Quantum(random_css(*n, *n_x, *n_z, *seed)?)
            }
            CodeSpec::FromFile { path } => read_code(path)?,
        })
    }

    pub fn build_classical(&self) -> Result<ClassicalCode, ConstructionError> {
        match self.build()? {
            CodeFile::Classical(c) => Ok(c),
            other => Err(ConstructionError::WrongKind("classical", other.kind())),
        }
    }

    pub fn build_quantum(&self) -> Result<CssCode, ConstructionError> {
        match self.build()? {
            CodeFile::Quantum(q) => Ok(q),
            other => Err(ConstructionError::WrongKind("quantum", other.kind())),
        }
    }

    /// The same spec with every random family reseeded.
    pub fn with_seed(&self, new_seed: u64) -> CodeSpec {
        let mut spec = self.clone();
        match &mut spec {
            CodeSpec::RandomLdpc { seed, .. } | CodeSpec::RandomCss { seed, .. } => {
                *seed = new_seed
            }
            CodeSpec::QComplex { hhat } => **hhat = hhat.with_seed(new_seed),
            _ => {}
        }
        spec
    }

    /// Short human-readable description, e.g. `q_complex(rep(3))`.
    pub fn describe(&self) -> String {
        match self {
            CodeSpec::Rep { l } => format!("rep({l})"),
            CodeSpec::RepModified { l } => format!("rep_modified({l})"),
            CodeSpec::QComplex { hhat } => format!("q_complex({})", hhat.describe()),
            CodeSpec::Hamming74 {} => "hamming74".into(),
            CodeSpec::RandomLdpc {
                t,
                s,
                row_w,
                col_w,
                seed,
                regular,
            } => format!(
                "random_ldpc(t={t}, s={s}, row_w={row_w}, col_w={col_w}, seed={seed}{})",
                if *regular { ", regular" } else { "" }
            ),
            CodeSpec::RandomCss { n, n_x, n_z, seed } => {
                format!("random_css(n={n}, nX={n_x}, nZ={n_z}, seed={seed})")
            }
            CodeSpec::FromFile { path } => path.display().to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        classical_dimension, classical_distance, quantum_dimension, quantum_distances, Distance,
        Locality, DEFAULT_CAP,
    };

    #[test]
    fn repetition_matrices() {
        assert_eq!(
            rep_standard(3).unwrap().h(),
            &BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1]])
        );
        assert_eq!(
            rep_modified(3).unwrap().h(),
            &BitMatrix::from_rows(3, &[[1, 0, 1], [0, 1, 1]])
        );
        assert!(rep_standard(1).is_err());
        assert!(rep_modified(0).is_err());
        assert_eq!(
            classical_distance(&rep_standard(5).unwrap(), DEFAULT_CAP),
            Ok(Distance::Finite(5))
        );
        for l in 2..=8 {
            let (a, b) = (rep_standard(l).unwrap(), rep_modified(l).unwrap());
            assert_eq!(a.rank(), l - 1);
            assert!(b.independent_checks());
            assert_eq!(a.h().kernel_basis(), b.h().kernel_basis());
            assert_eq!(*b.h().col_weights().iter().max().unwrap(), l - 1);
        }
    }

    #[test]
    fn q_complex_examples() {
        let q = q_complex(rep_standard(3).unwrap().h()).unwrap();
        assert_eq!((q.n(), q.n_x(), q.n_z()), (6, 2, 3));
        assert_eq!(quantum_dimension(&q), 1);
        let qh = q_complex(hamming74().h()).unwrap();
        assert_eq!(quantum_dimension(&qh), 4);
        assert_eq!(
            quantum_distances(&qh, DEFAULT_CAP),
            Ok((Distance::Finite(2), Distance::Finite(3)))
        );
        let q1 = q_complex(&BitMatrix::identity(1)).unwrap();
        assert_eq!((q1.n(), quantum_dimension(&q1)), (2, 0));
        assert!(q_complex(&BitMatrix::zeros(2, 0)).is_err());
    }

    #[test]
    fn hamming_parameters() {
        let h = hamming74();
        assert_eq!(classical_dimension(&h), 4);
        assert_eq!(classical_distance(&h, DEFAULT_CAP), Ok(Distance::Finite(3)));
        assert_eq!(h.locality(), 4);
    }

    #[test]
    fn random_ldpc_postconditions() {
        let a = random_ldpc(8, 4, 4, 2, 1, false).unwrap();
        assert_eq!(a.rank(), 4);
        assert!(a.locality() <= 4);
        assert!(a.h().row_weights().iter().all(|&w| w <= 4));
        assert!(a.h().col_weights().iter().all(|&w| (1..=2).contains(&w)));
        assert_eq!(a, random_ldpc(8, 4, 4, 2, 1, false).unwrap());

        let b = random_ldpc(8, 6, 4, 3, 7, true).unwrap();
        assert_eq!(b.rank(), 6);
        assert!(b.h().row_weights().iter().all(|&w| w == 4));
        assert!(b.h().col_weights().iter().all(|&w| w == 3));

        let sq = random_ldpc(4, 4, 1, 1, 3, true).unwrap();
        assert_eq!(sq.rank(), 4);

        for bad in [(6, 4, 2, 1, true), (8, 4, 4, 2, true), (3, 4, 1, 1, false)] {
            assert!(matches!(
                random_ldpc(bad.0, bad.1, bad.2, bad.3, 0, bad.4),
                Err(ConstructionError::Invalid(_))
            ));
        }
    }

    #[test]
    fn random_css_is_valid_and_seeded() {
        for seed in 0..20 {
            let q = random_css(5, 2, 2, seed).unwrap();
            assert!(q.complex().validate().is_ok());
            assert!(q.h_x().row_weights().iter().all(|&w| w > 0));
            assert_eq!(q, random_css(5, 2, 2, seed).unwrap());
        }
    }

    #[test]
    fn spec_json_shape_and_build() {
        let spec = CodeSpec::QComplex {
            hhat: Box::new(CodeSpec::Rep { l: 3 }),
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            json,
            r#"{"family":"q_complex","params":{"hhat":{"family":"rep","params":{"l":3}}}}"#
        );
        let back: CodeSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(matches!(spec.build().unwrap(), CodeFile::Quantum(_)));
        let ham: CodeSpec = serde_json::from_str(r#"{"family":"hamming74","params":{}}"#).unwrap();
        assert_eq!(ham.build_classical().unwrap(), hamming74());
        let ldpc: CodeSpec = serde_json::from_str(
            r#"{"family":"random_ldpc","params":{"t":6,"s":3,"row_w":4,"col_w":2,"seed":0}}"#,
        )
        .unwrap();
        assert!(ldpc.build_classical().is_ok());
        assert!(matches!(
            ldpc.build_quantum(),
            Err(ConstructionError::WrongKind("quantum", "classical"))
        ));
        assert_eq!(
            ldpc.with_seed(9),
            CodeSpec::RandomLdpc {
                t: 6,
                s: 3,
                row_w: 4,
                col_w: 2,
                seed: 9,
                regular: false
            }
        );
    }
}
