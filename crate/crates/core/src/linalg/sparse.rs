use std::collections::BTreeMap;

use crate::ring::{merge_add, PrimeModulus, TruncatedPoly};

/// Vector over `F_p` indexed by monomial indices, entries strictly increasing
/// by index with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVector {
    entries: Vec<(u64, u32)>,
}

impl SparseVector {
    /// Canonicalizes arbitrary `(index, coefficient)` pairs.
    pub fn from_entries(mut entries: Vec<(u64, u32)>, p: PrimeModulus) -> Self {
        entries.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(u64, u32)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            let c = c % p.get();
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = p.add(last.1, c),
                _ => out.push((i, c)),
            }
        }
        out.retain(|e| e.1 != 0);
        SparseVector { entries: out }
    }

    pub fn unit(index: u64) -> Self {
        SparseVector {
            entries: vec![(index, 1)],
        }
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(u64, u32)> {
        self.entries.first().copied()
    }

    pub fn get(&self, index: u64) -> u32 {
        self.entries
            .binary_search_by_key(&index, |e| e.0)
            .map_or(0, |k| self.entries[k].1)
    }

    fn scaled(&self, c: u32, p: PrimeModulus) -> Vec<(u64, u32)> {
        self.entries
            .iter()
            .map(|&(i, a)| (i, p.mul(a, c)))
            .collect()
    }
}

impl From<&TruncatedPoly> for SparseVector {
    fn from(g: &TruncatedPoly) -> Self {
        SparseVector {
            entries: g.terms().to_vec(),
        }
    }
}

/// Reduced row echelon basis of a subspace of `F_p^N`.
///
/// Every row starts with its pivot (coefficient 1), pivots are distinct and no
/// row has a nonzero entry at another row's pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    modulus: PrimeModulus,
    rows: Vec<SparseVector>,
    pivots: BTreeMap<u64, usize>,
}

impl EchelonBasis {
    pub fn new(modulus: PrimeModulus) -> Self {
        EchelonBasis {
            modulus,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = u64> + '_ {
        self.pivots.keys().copied()
    }

    /// Remainder of `v` modulo the span. Because rows are fully reduced, one
    /// subtraction per pivot present in `v` is enough.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let p = self.modulus;
        let mut acc = v.entries.clone();
        for &(i, c) in &v.entries {
            if let Some(&r) = self.pivots.get(&i) {
                acc = merge_add(&acc, &self.rows[r].scaled(p.neg(c), p), p);
            }
        }
        SparseVector { entries: acc }
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let p = self.modulus;
        let rem = self.reduce(&v);
        let Some((lead, c)) = rem.leading() else {
            return false;
        };
        let new_row = SparseVector {
            entries: rem.scaled(p.inv(c), p),
        };
        for row in &mut self.rows {
            let c = row.get(lead);
            if c != 0 {
                row.entries = merge_add(&row.entries, &new_row.scaled(p.neg(c), p), p);
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(new_row);
        true
    }
}
