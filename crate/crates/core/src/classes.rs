//! Enumeration of nonzero vectors in F_s^M up to scalar multiples.
//!
//! A class is represented by its normalized vector: the first nonzero entry
//! is 1. Classes are indexed by leading position (block `i` holds the
//! `s^(M-1-i)` vectors led by position `i`), then by the remaining entries
//! read as a base-`s` number with position `i+1` most significant and
//! element indices as digits.
//!
//! While walking a range, the enumerator maintains the linear combination
//! `sum_m v[m] * rows[m]` of fixed rows, updating it incrementally.

use std::ops::ControlFlow;

use crate::field::{Elem, FieldSpec};

/// `(s^m - 1) / (s - 1)`, or `None` on overflow.
pub fn num_classes(s: u16, m: usize) -> Option<u128> {
    let s = s as u128;
    let pow = s.checked_pow(u32::try_from(m).ok()?)?;
    Some((pow - 1) / (s - 1))
}

pub struct ClassEnumerator<'a> {
    field: &'a FieldSpec,
    /// `M` rows, each of length `width`.
    rows: &'a [Vec<Elem>],
    width: usize,
    total: u128,
    /// `block_start[i]` is the first index of block `i`; one extra sentinel.
    block_start: Vec<u128>,
}

impl<'a> ClassEnumerator<'a> {
    /// `None` when the class count does not fit in `u128`.
    pub fn new(field: &'a FieldSpec, rows: &'a [Vec<Elem>]) -> Option<ClassEnumerator<'a>> {
        let m = rows.len();
        assert!(m > 0);
        let width = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == width));
        let s = field.order();
        let total = num_classes(s, m)?;
        let mut block_start = Vec::with_capacity(m + 1);
        let mut acc = 0u128;
        for i in 0..m {
            block_start.push(acc);
            acc += (s as u128).pow((m - 1 - i) as u32);
        }
        block_start.push(acc);
        debug_assert_eq!(acc, total);
        Some(ClassEnumerator { field, rows, width, total, block_start })
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Normalized vector of class `index`.
    pub fn decode(&self, index: u128) -> Vec<Elem> {
        assert!(index < self.total);
        let m = self.rows.len();
        let s = self.field.order() as u128;
        let lead = self.block_start.partition_point(|&b| b <= index) - 1;
        let mut rest = index - self.block_start[lead];
        let mut v = vec![Elem::ZERO; m];
        v[lead] = Elem::ONE;
        for j in (lead + 1..m).rev() {
            v[j] = Elem((rest % s) as u16);
            rest /= s;
        }
        v
    }

    /// Inverse of [`decode`](Self::decode); the vector must be normalized.
    pub fn encode(&self, v: &[Elem]) -> u128 {
        let s = self.field.order() as u128;
        let lead = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
        assert_eq!(v[lead], Elem::ONE, "vector is not normalized");
        let rest = v[lead + 1..].iter().fold(0u128, |acc, c| acc * s + c.0 as u128);
        self.block_start[lead] + rest
    }

    pub fn combine(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.width];
        for (c, row) in v.iter().zip(self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(*c, r));
            }
        }
        out
    }

    fn shift(&self, vals: &mut [Elem], row: usize, old: Elem, new: Elem) {
        let f = self.field;
        let delta = f.sub(new, old);
        if delta.is_zero() {
            return;
        }
        for (o, &r) in vals.iter_mut().zip(&self.rows[row]) {
            *o = f.add(*o, f.mul(delta, r));
        }
    }

    /// Visits classes `start..end` in index order with the normalized vector
    /// and its combination of rows. Stops early on `Break`.
    pub fn walk<F>(&self, start: u128, end: u128, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(u128, &[Elem], &[Elem]) -> ControlFlow<()>,
    {
        let end = end.min(self.total);
        if start >= end {
            return ControlFlow::Continue(());
        }
        let m = self.rows.len();
        let s = self.field.order();
        let mut v = self.decode(start);
        let mut vals = self.combine(&v);
        let mut lead = v.iter().position(|c| !c.is_zero()).unwrap();
        let mut idx = start;
        loop {
            visit(idx, &v, &vals)?;
            idx += 1;
            if idx == end {
                return ControlFlow::Continue(());
            }
            let mut j = m - 1;
            loop {
                if j == lead {
                    // Every trailing digit wrapped: move to the next block.
                    self.shift(&mut vals, lead, Elem::ONE, Elem::ZERO);
                    v[lead] = Elem::ZERO;
                    lead += 1;
                    self.shift(&mut vals, lead, Elem::ZERO, Elem::ONE);
                    v[lead] = Elem::ONE;
                    break;
                }
                let old = v[j];
                if old.0 + 1 < s {
                    let new = Elem(old.0 + 1);
                    self.shift(&mut vals, j, old, new);
                    v[j] = new;
                    break;
                }
                self.shift(&mut vals, j, old, Elem::ZERO);
                v[j] = Elem::ZERO;
                j -= 1;
            }
        }
    }
}

/// Splits `0..total` into contiguous chunks of at most `chunk` indices.
pub fn chunks(total: u128, chunk: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut a = 0;
    while a < total {
        let b = (a + chunk).min(total);
        out.push((a, b));
        a = b;
    }
    out
}
