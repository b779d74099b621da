//! The same echelon form over `F_2`, with rows packed 64 entries to a word.
//! A stored row keeps the words from the one holding its pivot onwards.

use super::dense::{Echelon, RowMeta};

const NONE: u32 = u32::MAX;

#[derive(Debug, Default)]
pub(crate) struct BitEchelon {
    width: usize,
    pivot_of: Vec<u32>,
    rows: Vec<RowMeta>,
    data: Vec<u64>,
    scratch: Vec<u64>,
    lo: usize,
    hi: usize,
}

impl BitEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    fn words(&self, row: &RowMeta) -> &[u64] {
        &self.data[row.offset..row.offset + row.len as usize]
    }
}

impl Echelon for BitEchelon {
    fn reset(&mut self, width: usize) {
        self.width = width;
        self.rows.clear();
        self.data.clear();
        self.pivot_of.clear();
        self.pivot_of.resize(width, NONE);
        let nwords = width.div_ceil(64);
        if self.scratch.len() < nwords {
            self.scratch.resize(nwords, 0);
        }
        self.lo = nwords;
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
        if value & 1 == 1 {
            let w = pos / 64;
            self.scratch[w] ^= 1 << (pos % 64);
            self.lo = self.lo.min(w);
            self.hi = self.hi.max(w + 1);
        }
    }

    fn commit(&mut self, label: u32) -> bool {
        let mut w = self.lo;
        let mut hi = self.hi;
        self.lo = self.scratch.len();
        self.hi = 0;
        while w < hi {
            let word = self.scratch[w];
            if word == 0 {
                w += 1;
                continue;
            }
            let k = w * 64 + word.trailing_zeros() as usize;
            let r = self.pivot_of[k];
            if r != NONE {
                let meta = self.rows[r as usize];
                let len = meta.len as usize;
                let src = &self.data[meta.offset..meta.offset + len];
                for (d, &s) in self.scratch[w..w + len].iter_mut().zip(src) {
                    *d ^= s;
                }
                hi = hi.max(w + len);
            } else {
                let offset = self.data.len();
                let mut end = hi;
                while self.scratch[end - 1] == 0 {
                    end -= 1;
                }
                self.data.extend_from_slice(&self.scratch[w..end]);
                self.scratch[w..hi].iter_mut().for_each(|x| *x = 0);
                self.pivot_of[k] = self.rows.len() as u32;
                self.rows.push(RowMeta {
                    pivot: k as u32,
                    offset,
                    len: (end - w) as u32,
                    label,
                });
                return true;
            }
        }
        false
    }

    fn for_each_entry(&self, row: &RowMeta, mut visit: impl FnMut(usize, u64)) {
        let base = row.pivot as usize / 64 * 64;
        for (i, &word) in self.words(row).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                visit(base + i * 64 + bits.trailing_zeros() as usize, 1);
                bits &= bits - 1;
            }
        }
    }
}
