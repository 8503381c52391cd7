//! Chain complexes over F2 and the code views built on them.
//!
//! Spaces are listed from the top degree down, `[dim C_k, ..., dim C_0]`,
//! and `diffs[i]` is the differential out of `spaces[i]`, so it has
//! `spaces[i + 1]` rows and `spaces[i]` columns.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a complex needs at least one space")]
    Empty,
    #[error("{spaces} spaces need {} differentials, found {diffs}", spaces.saturating_sub(1))]
    DiffCount { spaces: usize, diffs: usize },
    #[error("differential out of degree {degree} has shape {found:?}, expected {expected:?}")]
    DiffShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {0} labels, found {1}")]
    LabelCount(usize, usize),
    #[error("expected a {expected}-term complex, found {found} terms")]
    Arity { expected: usize, found: usize },
    #[error("chain condition violated: {0}")]
    ChainCondition(Violation),
    #[error("window [{hi}, {lo}] out of range for a complex of top degree {top}")]
    WindowRange { hi: usize, lo: usize, top: usize },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// The first adjacent pair of differentials whose composite is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Degree of the outer differential: ∂_{degree-1} ∘ ∂_degree ≠ 0.
    pub degree: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂{}∘∂{} ≠ 0", self.degree - 1, self.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    spaces: Vec<usize>,
    diffs: Vec<BitMatrix>,
    labels: Option<Vec<String>>,
}

impl ChainComplex {
    /// Checks shapes; the chain condition is left to [`ChainComplex::validate`].
    pub fn new(
        spaces: Vec<usize>,
        diffs: Vec<BitMatrix>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ComplexError> {
        if spaces.is_empty() {
            return Err(ComplexError::Empty);
        }
        if diffs.len() + 1 != spaces.len() {
            return Err(ComplexError::DiffCount {
                spaces: spaces.len(),
                diffs: diffs.len(),
            });
        }
        let top = spaces.len() - 1;
        for (i, d) in diffs.iter().enumerate() {
            let expected = (spaces[i + 1], spaces[i]);
            if d.shape() != expected {
                return Err(ComplexError::DiffShape {
                    degree: top - i,
                    expected,
                    found: d.shape(),
                });
            }
        }
        if let Some(l) = &labels {
            if l.len() != spaces.len() {
                return Err(ComplexError::LabelCount(spaces.len(), l.len()));
            }
        }
        Ok(Self {
            spaces,
            diffs,
            labels,
        })
    }

    /// Builds a complex from its differentials, top first.
    pub fn from_diffs(diffs: Vec<BitMatrix>) -> Result<Self, ComplexError> {
        let Some(first) = diffs.first() else {
            return Err(ComplexError::Empty);
        };
        let mut spaces = vec![first.cols()];
        spaces.extend(diffs.iter().map(BitMatrix::rows));
        Self::new(spaces, diffs, None)
    }

    /// A single space with no differential.
    pub fn single(dim: usize) -> Self {
        Self {
            spaces: vec![dim],
            diffs: Vec::new(),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ComplexError> {
        if labels.len() != self.spaces.len() {
            return Err(ComplexError::LabelCount(self.spaces.len(), labels.len()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of spaces.
    pub fn terms(&self) -> usize {
        self.spaces.len()
    }

    pub fn top_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Space dimensions, top degree first.
    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    /// Differentials, top degree first.
    pub fn diffs(&self) -> &[BitMatrix] {
        &self.diffs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// dim C_p; zero outside the complex.
    pub fn dim(&self, degree: usize) -> usize {
        if degree > self.top_degree() {
            0
        } else {
            self.spaces[self.top_degree() - degree]
        }
    }

    /// ∂_p : C_p → C_{p-1}, for `1 <= p <= top_degree`.
    pub fn diff(&self, degree: usize) -> &BitMatrix {
        assert!(
            (1..=self.top_degree()).contains(&degree),
            "no differential out of degree {degree}"
        );
        &self.diffs[self.top_degree() - degree]
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let top = self.top_degree();
        for i in 0..self.diffs.len().saturating_sub(1) {
            let composite = self.diffs[i + 1]
                .mul(&self.diffs[i])
                .expect("shapes checked at construction");
            if !composite.is_zero() {
                return Err(Violation { degree: top - i });
            }
        }
        Ok(())
    }

    /// Reverses every arrow: spaces in reverse order, differentials transposed.
    pub fn cocomplex(&self) -> ChainComplex {
        let mut spaces = self.spaces.clone();
        spaces.reverse();
        let diffs = self.diffs.iter().rev().map(BitMatrix::transpose).collect();
        let labels = self.labels.clone().map(|mut l| {
            l.reverse();
            l
        });
        ChainComplex {
            spaces,
            diffs,
            labels,
        }
    }

    /// Sub-complex of degrees `hi` down to `lo`.
    pub fn window(&self, hi: usize, lo: usize) -> Result<ChainComplex, ComplexError> {
        let top = self.top_degree();
        if lo > hi || hi > top {
            return Err(ComplexError::WindowRange { hi, lo, top });
        }
        let (a, b) = (top - hi, top - lo);
        Ok(ChainComplex {
            spaces: self.spaces[a..=b].to_vec(),
            diffs: self.diffs[a..b].to_vec(),
            labels: self.labels.as_ref().map(|l| l[a..=b].to_vec()),
        })
    }

    /// The summands `(i, j)` of degree `p` in a product with `other`, with
    /// `X_i ⊗ Y_j` and `i + j = p`, ordered by descending `i`.
    fn summands(&self, other: &ChainComplex, p: usize) -> Vec<(usize, usize)> {
        let (kx, ky) = (self.top_degree(), other.top_degree());
        (0..=kx.min(p))
            .rev()
            .filter(|&i| p - i <= ky)
            .map(|i| (i, p - i))
            .collect()
    }

    /// The homological product `self × other`.
    ///
    /// Degree `p` is `⊕ X_i ⊗ Y_{p-i}`; summands are ordered by descending
    /// left degree and each is indexed left-factor-major. The differential is
    /// `∂(u⊗v) = ∂u⊗v + u⊗∂v`.
    pub fn homological_product(&self, other: &ChainComplex) -> Result<ChainComplex, ComplexError> {
        self.validate().map_err(ComplexError::ChainCondition)?;
        other.validate().map_err(ComplexError::ChainCondition)?;
        let top = self.top_degree() + other.top_degree();
        let dims = |p: usize| -> Vec<usize> {
            self.summands(other, p)
                .into_iter()
                .map(|(i, j)| self.dim(i) * other.dim(j))
                .collect()
        };
        let spaces: Vec<usize> = (0..=top).rev().map(|p| dims(p).iter().sum()).collect();

        let mut diffs = Vec::with_capacity(top);
        for p in (1..=top).rev() {
            let cols = self.summands(other, p);
            let rows = self.summands(other, p - 1);
            let mut blocks: Vec<((usize, usize), BitMatrix)> = Vec::new();
            for (ci, &(i, j)) in cols.iter().enumerate() {
                for (ri, &(a, b)) in rows.iter().enumerate() {
                    if i >= 1 && a == i - 1 && b == j {
                        let m = self.diff(i).kron(&BitMatrix::identity(other.dim(j)));
                        blocks.push(((ri, ci), m));
                    } else if j >= 1 && a == i && b == j - 1 {
                        let m = BitMatrix::identity(self.dim(i)).kron(other.diff(j));
                        blocks.push(((ri, ci), m));
                    }
                }
            }
            let row_dims = dims(p - 1);
            let col_dims = dims(p);
            let mut out = BitMatrix::zeros(row_dims.iter().sum(), col_dims.iter().sum());
            // some summands have no incoming or outgoing block, so place by offset
            let row_off: Vec<usize> = offsets(&row_dims);
            let col_off: Vec<usize> = offsets(&col_dims);
            for ((ri, ci), m) in &blocks {
                out.paste(m, row_off[*ri], col_off[*ci]);
            }
            diffs.push(out);
        }

        let labels = match (&self.labels, &other.labels) {
            (Some(lx), Some(ly)) => Some(
                (0..=top)
                    .rev()
                    .map(|p| {
                        self.summands(other, p)
                            .into_iter()
                            .map(|(i, j)| {
                                format!(
                                    "{}⊗{}",
                                    lx[self.top_degree() - i],
                                    ly[other.top_degree() - j]
                                )
                            })
                            .collect::<Vec<_>>()
                            .join(" ⊕ ")
                    })
                    .collect(),
            ),
            _ => None,
        };
        let product = ChainComplex::new(spaces, diffs, labels)?;
        debug_assert!(product.validate().is_ok());
        Ok(product)
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .scan(0, |acc, &d| {
            let start = *acc;
            *acc += d;
            Some(start)
        })
        .collect()
}

/// A 3-term complex `F2^{n_Z} --H_Zᵀ--> F2^n --H_X--> F2^{n_X}` viewed as a CSS code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssCode {
    complex: ChainComplex,
    h_z: BitMatrix,
}

impl CssCode {
    pub fn from_checks(h_x: BitMatrix, h_z: BitMatrix) -> Result<Self, ComplexError> {
        let complex = ChainComplex::from_diffs(vec![h_z.transpose(), h_x])?;
        Self::from_complex(complex)
    }

    pub fn from_complex(complex: ChainComplex) -> Result<Self, ComplexError> {
        if complex.terms() != 3 {
            return Err(ComplexError::Arity {
                expected: 3,
                found: complex.terms(),
            });
        }
        complex.validate().map_err(ComplexError::ChainCondition)?;
        let h_z = complex.diffs()[0].transpose();
        Ok(Self { complex, h_z })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> ChainComplex {
        self.complex
    }

    pub fn h_x(&self) -> &BitMatrix {
        &self.complex.diffs()[1]
    }

    pub fn h_z(&self) -> &BitMatrix {
        &self.h_z
    }

    /// Number of qubits.
    pub fn n(&self) -> usize {
        self.complex.spaces()[1]
    }

    pub fn n_x(&self) -> usize {
        self.complex.spaces()[2]
    }

    pub fn n_z(&self) -> usize {
        self.complex.spaces()[0]
    }

    /// The same code with X and Z exchanged.
    pub fn dual(&self) -> CssCode {
        CssCode::from_complex(self.complex.cocomplex()).expect("cocomplex of a valid CSS complex")
    }
}

/// A 2-term complex `F2^t --H--> F2^s` viewed as a classical code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    h: BitMatrix,
    rank: usize,
}

impl ClassicalCode {
    pub fn new(h: BitMatrix) -> Self {
        let rank = h.rank();
        Self { h, rank }
    }

    pub fn from_complex(complex: &ChainComplex) -> Result<Self, ComplexError> {
        if complex.terms() != 2 {
            return Err(ComplexError::Arity {
                expected: 2,
                found: complex.terms(),
            });
        }
        Ok(Self::new(complex.diffs()[0].clone()))
    }

    pub fn h(&self) -> &BitMatrix {
        &self.h
    }

    /// Code length.
    pub fn t(&self) -> usize {
        self.h.cols()
    }

    /// Number of checks.
    pub fn s(&self) -> usize {
        self.h.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn independent_checks(&self) -> bool {
        self.rank == self.s()
    }

    pub fn complex(&self) -> ChainComplex {
        ChainComplex::from_diffs(vec![self.h.clone()]).expect("single differential")
    }

    /// Keeps a greedy ascending set of independent rows; the code is unchanged.
    pub fn reduce_checks(&self) -> ClassicalCode {
        ClassicalCode::new(self.h.select_rows(&self.h.independent_rows()))
    }
}

pub fn as_css(complex: ChainComplex) -> Result<CssCode, ComplexError> {
    CssCode::from_complex(complex)
}

pub fn as_classical(complex: &ChainComplex) -> Result<ClassicalCode, ComplexError> {
    ClassicalCode::from_complex(complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> BitMatrix {
        BitMatrix::from_rows(3, &[[1, 1, 0], [0, 1, 1]])
    }

    #[test]
    fn validate_examples() {
        assert!(ClassicalCode::new(h3()).complex().validate().is_ok());
        let ok = ChainComplex::from_diffs(vec![
            BitMatrix::from_rows(2, &[[1, 1]]).transpose(),
            BitMatrix::from_rows(2, &[[1, 1]]),
        ])
        .unwrap();
        assert!(ok.validate().is_ok());
        let bad = ChainComplex::from_diffs(vec![
            BitMatrix::from_rows(2, &[[1, 0]]).transpose(),
            BitMatrix::from_rows(2, &[[1, 0]]),
        ])
        .unwrap();
        assert_eq!(bad.validate(), Err(Violation { degree: 2 }));
    }

    #[test]
    fn shape_errors() {
        let err = ChainComplex::new(vec![3, 2], vec![BitMatrix::zeros(3, 2)], None).unwrap_err();
        assert!(matches!(err, ComplexError::DiffShape { .. }));
        let err = ChainComplex::new(vec![3, 2], vec![], None).unwrap_err();
        assert!(matches!(err, ComplexError::DiffCount { .. }));
    }

    #[test]
    fn cocomplex_swaps_roles() {
        let hz = BitMatrix::from_rows(4, &[[1, 1, 1, 1]]);
        let hx = BitMatrix::from_rows(4, &[[1, 1, 0, 0], [0, 0, 1, 1]]);
        let q = CssCode::from_checks(hx.clone(), hz.clone()).unwrap();
        let co = q.complex().cocomplex();
        assert_eq!(co.spaces(), &[2, 4, 1]);
        assert_eq!(co.diffs()[0], hx.transpose());
        assert_eq!(co.diffs()[1], hz);
        assert_eq!(co.cocomplex(), *q.complex());

        let r = ClassicalCode::new(h3()).complex().cocomplex();
        assert_eq!(r.spaces(), &[2, 3]);
        assert_eq!(r.diffs()[0], h3().transpose());
    }

    #[test]
    fn product_of_two_classical_complexes() {
        let a = ClassicalCode::new(h3()).complex();
        let b = ClassicalCode::new(BitMatrix::from_rows(2, &[[1, 1]])).complex();
        let p = a.homological_product(&b).unwrap();
        // (t=3 -> s=2) x (t'=2 -> s'=1): middle = t·s' + s·t'
        assert_eq!(p.spaces(), &[3 * 2, 3 + 2 * 2, 2]);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn product_with_single_space_scales_dims() {
        let a = ClassicalCode::new(h3()).complex();
        let p = a.homological_product(&ChainComplex::single(4)).unwrap();
        assert_eq!(p.spaces(), &[12, 8]);
        assert_eq!(p.diffs()[0], h3().kron(&BitMatrix::identity(4)));
    }

    #[test]
    fn window_examples() {
        let c =
            ChainComplex::from_diffs(vec![BitMatrix::zeros(2, 1), BitMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(c.window(2, 0).unwrap(), c);
        let w = c.window(1, 0).unwrap();
        assert_eq!(w.spaces(), &[2, 3]);
        assert!(c.window(3, 0).is_err());
        assert!(c.window(0, 1).is_err());
    }

    #[test]
    fn code_views() {
        let toy = CssCode::from_checks(
            BitMatrix::from_rows(2, &[[1, 1]]),
            BitMatrix::from_rows(2, &[[1, 1]]),
        )
        .unwrap();
        assert_eq!((toy.n(), toy.n_x(), toy.n_z()), (2, 1, 1));

        let r = as_classical(&ClassicalCode::new(h3()).complex()).unwrap();
        assert_eq!((r.t(), r.s(), r.independent_checks()), (3, 2, true));

        let four = ChainComplex::from_diffs(vec![
            BitMatrix::zeros(1, 1),
            BitMatrix::zeros(1, 1),
            BitMatrix::zeros(1, 1),
        ])
        .unwrap();
        assert!(matches!(
            as_css(four),
            Err(ComplexError::Arity {
                expected: 3,
                found: 4
            })
        ));
        let violating = ChainComplex::from_diffs(vec![
            BitMatrix::from_rows(2, &[[1, 0]]).transpose(),
            BitMatrix::from_rows(2, &[[1, 0]]),
        ])
        .unwrap();
        assert!(matches!(
            as_css(violating),
            Err(ComplexError::ChainCondition(_))
        ));
    }

    #[test]
    fn reduce_checks_keeps_code() {
        let dup = BitMatrix::from_rows(3, &[[1, 1, 0], [1, 1, 0], [0, 1, 1]]);
        let r = ClassicalCode::new(dup.clone());
        assert!(!r.independent_checks());
        let reduced = r.reduce_checks();
        assert!(reduced.independent_checks());
        assert_eq!(reduced.h(), &h3());
        assert_eq!(reduced.h().kernel_basis(), dup.kernel_basis());
    }
}
