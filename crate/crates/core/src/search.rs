//! Exhaustive minimum-weight search over affine subspaces `{v : H·v = b}`.
//!
//! Two exact routes are available and the cheaper one is taken:
//!
//! * a weight-ordered scan over all supports of size 0, 1, 2, ... which stops
//!   at the first weight that has a solution, and
//! * a Gray-code walk over the whole coset `x0 + ker(H)`.
//!
//! The scan is charged `C(n, 0) + ... + C(n, w)` elements and the walk
//! `2^dim ker(H)`; whichever route is used must stay under the enumeration cap.

use thiserror::Error;

use crate::gf2::{popcount_words, words_for, xor_words, BitMatrix, BitVector, WORD_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("enumeration of 2^{log2_required} elements exceeds the cap of {cap}")]
pub struct CapExceeded {
    /// Base-2 logarithm of the smallest exhaustive set that would be needed,
    /// rounded up.
    pub log2_required: u32,
    pub cap: u64,
}

/// Which solutions are admissible besides `H·v = b`.
#[derive(Debug, Clone)]
pub enum Admit {
    Any,
    NonZero,
    /// `G·v ≠ 0`; with `G` a kernel basis of some `S`, this says `v` lies
    /// outside the row space of `S`.
    OutsideKernelOf(BitMatrix),
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn pow2(k: usize) -> u128 {
    if k >= 127 {
        u128::MAX
    } else {
        1u128 << k
    }
}

fn log2_ceil(x: u128) -> u32 {
    if x <= 1 {
        0
    } else {
        128 - (x - 1).leading_zeros()
    }
}

/// Minimum Hamming weight over admissible `v` with `H·v = target`, or `None`
/// when no admissible solution exists.
pub fn min_weight(
    h: &BitMatrix,
    target: &BitVector,
    admit: &Admit,
    cap: u64,
) -> Result<Option<usize>, CapExceeded> {
    assert_eq!(
        h.rows(),
        target.len(),
        "target length must equal check count"
    );
    if let Admit::OutsideKernelOf(g) = admit {
        assert_eq!(
            g.cols(),
            h.cols(),
            "exclusion matrix width must equal code length"
        );
    }
    let Some(x0) = h.solve(target).expect("lengths checked") else {
        return Ok(None);
    };
    let n = h.cols();
    let kernel = h.kernel_basis();
    let walk_cost = pow2(kernel.len());
    let budget = walk_cost.min(cap as u128);

    let scan = WeightScan::new(h, target, admit);
    let mut spent: u128 = 0;
    for w in 0..=n {
        spent = spent.saturating_add(binomial(n, w));
        if spent > budget {
            break;
        }
        if scan.has_solution_of_weight(w) {
            return Ok(Some(w));
        }
        if w == n {
            return Ok(None);
        }
    }
    if walk_cost > cap as u128 {
        return Err(CapExceeded {
            log2_required: log2_ceil(walk_cost.min(spent)),
            cap,
        });
    }
    Ok(coset_walk(&x0, &kernel, admit))
}

struct WeightScan {
    n: usize,
    stride: usize,
    columns: Vec<u64>,
    target: Vec<u64>,
    h_mask: Vec<u64>,
    g_mask: Vec<u64>,
    admit_nonzero: bool,
    admit_outside: bool,
}

impl WeightScan {
    fn new(h: &BitMatrix, target: &BitVector, admit: &Admit) -> Self {
        let hr = h.rows();
        let g = match admit {
            Admit::OutsideKernelOf(g) => Some(g),
            _ => None,
        };
        let gr = g.map_or(0, BitMatrix::rows);
        let total = hr + gr;
        let stride = words_for(total);
        let n = h.cols();
        let mut columns = vec![0u64; n * stride];
        let ht = h.transpose();
        let gt = g.map(BitMatrix::transpose);
        for j in 0..n {
            let col = &mut columns[j * stride..(j + 1) * stride];
            for r in ht.row(j).ones() {
                col[r / WORD_BITS] |= 1 << (r % WORD_BITS);
            }
            if let Some(gt) = &gt {
                for r in gt.row(j).ones() {
                    let b = hr + r;
                    col[b / WORD_BITS] |= 1 << (b % WORD_BITS);
                }
            }
        }
        let mut t = vec![0u64; stride];
        let mut h_mask = vec![0u64; stride];
        let mut g_mask = vec![0u64; stride];
        for r in target.ones() {
            t[r / WORD_BITS] |= 1 << (r % WORD_BITS);
        }
        for b in 0..total {
            let m = if b < hr { &mut h_mask } else { &mut g_mask };
            m[b / WORD_BITS] |= 1 << (b % WORD_BITS);
        }
        Self {
            n,
            stride,
            columns,
            target: t,
            h_mask,
            g_mask,
            admit_nonzero: matches!(admit, Admit::NonZero),
            admit_outside: g.is_some(),
        }
    }

    fn accepts(&self, acc: &[u64], weight: usize) -> bool {
        let syndrome_ok = acc
            .iter()
            .zip(&self.target)
            .zip(&self.h_mask)
            .all(|((a, t), m)| (a ^ t) & m == 0);
        if !syndrome_ok {
            return false;
        }
        if self.admit_nonzero && weight == 0 {
            return false;
        }
        if self.admit_outside {
            return acc.iter().zip(&self.g_mask).any(|(a, m)| a & m != 0);
        }
        true
    }

    fn has_solution_of_weight(&self, w: usize) -> bool {
        let mut stack = vec![0u64; (w + 1) * self.stride];
        self.descend(0, w, w, &mut stack)
    }

    // stack[d*stride..] holds the running sum after d chosen columns
    fn descend(&self, start: usize, remaining: usize, w: usize, stack: &mut [u64]) -> bool {
        let depth = w - remaining;
        if remaining == 0 {
            return self.accepts(&stack[depth * self.stride..(depth + 1) * self.stride], w);
        }
        for j in start..=self.n - remaining {
            let (cur, next) = stack.split_at_mut((depth + 1) * self.stride);
            let cur = &cur[depth * self.stride..];
            let next = &mut next[..self.stride];
            next.copy_from_slice(cur);
            xor_words(next, &self.columns[j * self.stride..(j + 1) * self.stride]);
            if self.descend(j + 1, remaining - 1, w, stack) {
                return true;
            }
        }
        false
    }
}

fn coset_walk(x0: &BitVector, kernel: &[BitVector], admit: &Admit) -> Option<usize> {
    let g = match admit {
        Admit::OutsideKernelOf(g) => Some(g),
        _ => None,
    };
    let mut v = x0.words().to_vec();
    let mut gv = g.map(|g| g.mul_vec(x0).expect("widths checked").words().to_vec());
    let images: Vec<Vec<u64>> = match g {
        Some(g) => kernel
            .iter()
            .map(|b| g.mul_vec(b).expect("widths checked").words().to_vec())
            .collect(),
        None => Vec::new(),
    };
    let admissible = |v: &[u64], gv: &Option<Vec<u64>>| match admit {
        Admit::Any => true,
        Admit::NonZero => v.iter().any(|&w| w != 0),
        Admit::OutsideKernelOf(_) => gv.as_ref().is_some_and(|g| g.iter().any(|&w| w != 0)),
    };
    let floor = usize::from(!matches!(admit, Admit::Any));
    let mut best: Option<usize> = None;
    let total: u128 = 1u128 << kernel.len();
    let mut i: u128 = 0;
    loop {
        if admissible(&v, &gv) {
            let w = popcount_words(&v);
            if best.is_none_or(|b| w < b) {
                best = Some(w);
                if w <= floor {
                    break;
                }
            }
        }
        i += 1;
        if i == total {
            break;
        }
        let flip = i.trailing_zeros() as usize;
        xor_words(&mut v, kernel[flip].words());
        if let Some(gv) = gv.as_mut() {
            xor_words(gv, &images[flip]);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 1 << 24;

    fn hamming() -> BitMatrix {
        BitMatrix::from_fn(3, 7, |r, c| ((c + 1) >> r) & 1 == 1)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(log2_ceil(1 << 20), 20);
        assert_eq!(log2_ceil((1 << 20) + 1), 21);
    }

    #[test]
    fn both_routes_agree() {
        let h = hamming();
        let zero = BitVector::zeros(3);
        let kernel = h.kernel_basis();
        let x0 = BitVector::zeros(7);
        assert_eq!(coset_walk(&x0, &kernel, &Admit::NonZero), Some(3));
        let scan = WeightScan::new(&h, &zero, &Admit::NonZero);
        assert!(!scan.has_solution_of_weight(2));
        assert!(scan.has_solution_of_weight(3));
        assert_eq!(min_weight(&h, &zero, &Admit::NonZero, CAP), Ok(Some(3)));
    }

    #[test]
    fn unsolvable_target() {
        let h = BitMatrix::from_rows(2, &[[1, 1], [1, 1]]);
        let b = BitVector::from_bits(&[1, 0]);
        assert_eq!(min_weight(&h, &b, &Admit::Any, CAP), Ok(None));
    }

    #[test]
    fn trivial_kernel_has_no_nonzero_codeword() {
        let h = BitMatrix::identity(4);
        let zero = BitVector::zeros(4);
        assert_eq!(min_weight(&h, &zero, &Admit::NonZero, CAP), Ok(None));
        assert_eq!(min_weight(&h, &zero, &Admit::Any, CAP), Ok(Some(0)));
    }

    #[test]
    fn cap_is_enforced() {
        // [31,26,3] Hamming code: the weight-3 scan needs 4992 elements and the
        // kernel walk 2^26, both beyond 2^10
        let h = BitMatrix::from_fn(5, 31, |r, c| ((c + 1) >> r) & 1 == 1);
        let zero = BitVector::zeros(5);
        let err = min_weight(&h, &zero, &Admit::NonZero, 1 << 10).unwrap_err();
        assert_eq!(err.cap, 1 << 10);
        assert!(err.log2_required > 10);
        assert_eq!(min_weight(&h, &zero, &Admit::NonZero, 1 << 13), Ok(Some(3)));
    }
}
