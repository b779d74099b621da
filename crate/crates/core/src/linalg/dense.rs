//! Row echelon form on the local coordinates of one graded class.
//!
//! Candidate vectors are accumulated in a `u64` scratch row without reducing
//! mod `p`; each position is reduced once, when the left-to-right scan reaches
//! it. Rows are not back-reduced, so a stored row only ever absorbs rows that
//! were inserted before it. That keeps the birth labels meaningful.

use crate::ring::PrimeModulus;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub(crate) struct RowMeta {
    pub pivot: u32,
    pub offset: usize,
    pub len: u32,
    pub label: u32,
}

/// Row echelon form of one class, filled through a pending vector.
pub(crate) trait Echelon {
    fn reset(&mut self, width: usize);
    fn rank(&self) -> usize;
    fn rows(&self) -> &[RowMeta];
    fn has_pivot(&self, pos: usize) -> bool;
    /// Adds `value` at `pos` of the pending vector.
    fn add(&mut self, pos: usize, value: u64);
    /// Reduces the pending vector and stores it with `label` if it is
    /// independent. The pending vector is cleared either way.
    fn commit(&mut self, label: u32) -> bool;
    /// Calls `visit(pos, value)` for the nonzero entries of `row`.
    fn for_each_entry(&self, row: &RowMeta, visit: impl FnMut(usize, u64));
}

#[derive(Debug)]
pub(crate) struct DenseEchelon {
    modulus: PrimeModulus,
    width: usize,
    pivot_of: Vec<u32>,
    rows: Vec<RowMeta>,
    data: Vec<u32>,
    scratch: Vec<u64>,
    lo: usize,
    hi: usize,
}

impl DenseEchelon {
    pub fn new(modulus: PrimeModulus) -> Self {
        DenseEchelon {
            modulus,
            width: 0,
            pivot_of: Vec::new(),
            rows: Vec::new(),
            data: Vec::new(),
            scratch: Vec::new(),
            lo: 0,
            hi: 0,
        }
    }

    pub fn row_data(&self, row: &RowMeta) -> &[u32] {
        &self.data[row.offset..row.offset + row.len as usize]
    }
}

impl Echelon for DenseEchelon {
    fn reset(&mut self, width: usize) {
        self.width = width;
        self.rows.clear();
        self.data.clear();
        self.pivot_of.clear();
        self.pivot_of.resize(width, NONE);
        if self.scratch.len() < width {
            self.scratch.resize(width, 0);
        }
        self.lo = width;
        self.hi = 0;
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn rows(&self) -> &[RowMeta] {
        &self.rows
    }

    fn has_pivot(&self, pos: usize) -> bool {
        self.pivot_of[pos] != NONE
    }

    #[inline]
    fn add(&mut self, pos: usize, value: u64) {
        debug_assert!(pos < self.width);
        self.scratch[pos] += value;
        self.lo = self.lo.min(pos);
        self.hi = self.hi.max(pos + 1);
    }

    fn commit(&mut self, label: u32) -> bool {
        let p = self.modulus.get() as u64;
        let mut k = self.lo;
        let mut hi = self.hi;
        self.lo = self.width;
        self.hi = 0;
        while k < hi {
            let x = self.scratch[k] % p;
            if x == 0 {
                self.scratch[k] = 0;
                k += 1;
                continue;
            }
            let r = self.pivot_of[k];
            if r != NONE {
                let meta = self.rows[r as usize];
                let c = p - x;
                let len = meta.len as usize;
                let row = &self.data[meta.offset..meta.offset + len];
                let dst = &mut self.scratch[k..k + len];
                for (s, &v) in dst.iter_mut().zip(row) {
                    *s += c * v as u64;
                }
                self.scratch[k] = 0;
                hi = hi.max(k + len);
                k += 1;
            } else {
                let inv = self.modulus.inv(x as u32) as u64;
                let offset = self.data.len();
                for j in k..hi {
                    let v = (self.scratch[j] % p) * inv % p;
                    self.data.push(v as u32);
                    self.scratch[j] = 0;
                }
                while self.data.last() == Some(&0) {
                    self.data.pop();
                }
                let len = (self.data.len() - offset) as u32;
                self.pivot_of[k] = self.rows.len() as u32;
                self.rows.push(RowMeta {
                    pivot: k as u32,
                    offset,
                    len,
                    label,
                });
                return true;
            }
        }
        false
    }

    fn for_each_entry(&self, row: &RowMeta, mut visit: impl FnMut(usize, u64)) {
        for (k, &v) in self.row_data(row).iter().enumerate() {
            if v != 0 {
                visit(row.pivot as usize + k, v as u64);
            }
        }
    }
}
