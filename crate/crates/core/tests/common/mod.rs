//! Reference implementations that enumerate every word directly. They share
//! no code with the library's search routines, so agreement is meaningful.

#![allow(dead_code)]

use qltc::{BitMatrix, BitVector, Rational};

pub fn word(bits: usize, x: u64) -> BitVector {
    BitVector::from_bools((0..bits).map(|i| (x >> i) & 1 == 1))
}

fn syndrome_weight(h: &BitMatrix, x: &BitVector) -> usize {
    h.mul_vec(x).unwrap().weight()
}

pub fn codewords(h: &BitMatrix) -> Vec<u64> {
    let t = h.cols();
    (0..1u64 << t)
        .filter(|&x| syndrome_weight(h, &word(t, x)) == 0)
        .collect()
}

pub fn naive_distance(h: &BitMatrix) -> Option<usize> {
    codewords(h)
        .into_iter()
        .filter(|&x| x != 0)
        .map(|x| x.count_ones() as usize)
        .min()
}

/// `min over x ∉ ker H of t·|Hx| / (s·d(x, ker H))`, by sweeping all 2^t words.
pub fn naive_soundness(h: &BitMatrix) -> Option<Rational> {
    let (s, t) = (h.rows(), h.cols());
    if s == 0 {
        return None;
    }
    let code = codewords(h);
    let mut best: Option<Rational> = None;
    for x in 0..1u64 << t {
        let sw = syndrome_weight(h, &word(t, x));
        if sw == 0 {
            continue;
        }
        let d = code
            .iter()
            .map(|c| (x ^ c).count_ones() as u128)
            .min()
            .unwrap();
        let r = Rational::new((t * sw) as u128, s as u128 * d);
        best = Some(best.map_or(r, |b| b.min(r)));
    }
    best
}

fn row_span(m: &BitMatrix) -> Vec<u64> {
    let rows: Vec<u64> = (0..m.rows())
        .map(|r| m.row(r).ones().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut span = vec![0u64];
    for r in rows {
        if !span.contains(&r) {
            let extra: Vec<u64> = span.iter().map(|v| v ^ r).collect();
            span.extend(extra);
        }
    }
    span.sort_unstable();
    span.dedup();
    span
}

/// Minimum weight over ker(checks) minus rowspace(stabilizers).
pub fn naive_logical(checks: &BitMatrix, stabilizers: &BitMatrix) -> Option<usize> {
    let span = row_span(stabilizers);
    codewords(checks)
        .into_iter()
        .filter(|x| span.binary_search(x).is_err())
        .map(|x| x.count_ones() as usize)
        .min()
}
