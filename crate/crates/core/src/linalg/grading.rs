//! Gradings of the truncated ring under which a given element is homogeneous.
//!
//! For `g = Σ c_i x^{a_i}` any integer weight `w` with `w·a_i` constant over
//! the terms makes multiplication by `g` shift the `w`-degree by `w·a_0`. The
//! weights form the orthogonal complement of the span of the differences
//! `a_i - a_0`. Monomials are split into classes by their full weight key and
//! multiplication by `g` maps each class into the class shifted by the key of
//! `a_0`, so all eliminations decompose class by class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::TruncatedRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Grading {
    /// Weight of positive degree, if one exists.
    pub degree_weight: Option<Vec<i64>>,
    /// Degree of the element under `degree_weight` (0 when there is none).
    pub degree: i64,
    /// Further weights under which the element has degree 0.
    pub flat_weights: Vec<Vec<i64>>,
}

impl Grading {
    pub fn for_exponents(nvars: usize, exps: &[Vec<u32>]) -> Grading {
        let basis = match exps.split_first() {
            None => identity(nvars),
            Some((first, rest)) => {
                let rows: Vec<Vec<i64>> = rest
                    .iter()
                    .map(|a| {
                        a.iter()
                            .zip(first)
                            .map(|(&x, &y)| x as i64 - y as i64)
                            .collect()
                    })
                    .collect();
                integer_nullspace(&rows, nvars)
            }
        };
        let zero = vec![0u32; nvars];
        let a0 = exps.first().unwrap_or(&zero);
        let deg = |w: &[i64]| -> i64 { w.iter().zip(a0).map(|(&x, &a)| x * a as i64).sum() };

        let chosen = basis
            .iter()
            .enumerate()
            .filter(|(_, w)| deg(w) != 0)
            .min_by_key(|(_, w)| w.iter().map(|x| x.abs()).sum::<i64>())
            .map(|(k, _)| k);
        let Some(k) = chosen else {
            return Grading {
                degree_weight: None,
                degree: 0,
                flat_weights: basis,
            };
        };
        let mut w0 = basis[k].clone();
        if deg(&w0) < 0 {
            w0.iter_mut().for_each(|x| *x = -*x);
        }
        let d = deg(&w0);
        let flat_weights = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .filter_map(|(_, w)| {
                let dw = deg(w);
                let v: Vec<i64> = w.iter().zip(&w0).map(|(&x, &y)| d * x - dw * y).collect();
                primitive(v)
            })
            .collect();
        Grading {
            degree_weight: Some(w0),
            degree: d,
            flat_weights,
        }
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn primitive(mut v: Vec<i64>) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= g);
    Some(v)
}

/// Integer basis (primitive vectors) of `{w : rows · w = 0}`.
fn integer_nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[row][fc].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            ints.iter()
                .map(|x| (x / &g).to_i64().expect("weight fits in i64"))
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ClassSpan {
    pub start: usize,
    pub len: usize,
    pub line: u64,
    pub pos: u64,
}

/// Monomials of a truncated ring grouped by class. Classes are ordered by
/// `(line, pos)`: a line collects the classes reachable from each other by
/// repeated multiplication, `pos` counts steps along it.
#[derive(Debug)]
pub(crate) struct ClassLayout {
    pub order: Vec<u32>,
    pub local_of: Vec<u32>,
    pub classes: Vec<ClassSpan>,
    pub shifting: bool,
}

impl ClassLayout {
    pub fn build(ring: &TruncatedRing, grading: &Grading) -> Result<ClassLayout> {
        let n = ring.size();
        if n > u32::MAX as u64 {
            return Err(Error::CapacityExceeded {
                needed: n.to_string(),
                limit: u32::MAX as u64,
            });
        }
        let n = n as usize;
        let side = ring.side() as i64;
        let nvars = ring.nvars();

        let mut weights: Vec<Vec<i64>> = Vec::new();
        let shifting = grading.degree_weight.is_some();
        if let Some(w0) = &grading.degree_weight {
            weights.push(w0.clone());
        }
        weights.extend(grading.flat_weights.iter().cloned());
        let mins: Vec<i64> = weights
            .iter()
            .map(|w| w.iter().filter(|&&x| x < 0).map(|&x| x * (side - 1)).sum())
            .collect();
        let ranges: Vec<u128> = weights
            .iter()
            .map(|w| (w.iter().map(|x| x.abs()).sum::<i64>() * (side - 1) + 1) as u128)
            .collect();

        let degree = grading.degree.max(1) as u128;
        // radices: [pos | line digits...], dropping trailing flat weights
        // (a coarser grading) if the code would not fit in 64 bits
        let mut used = weights.len();
        let positions = loop {
            let (positions, mut total) = if shifting {
                let positions = (ranges[0] - 1) / degree + 1;
                (positions, positions * degree)
            } else {
                (1, 1)
            };
            let first_flat = usize::from(shifting);
            for r in ranges.iter().take(used).skip(first_flat) {
                total = total.saturating_mul(*r);
            }
            if total <= u64::MAX as u128 || used == first_flat {
                break positions as u64;
            }
            used -= 1;
        };

        let mut codes: Vec<u64> = vec![0; n];
        let mut digits = vec![0i64; nvars];
        for code in codes.iter_mut() {
            let mut line: u64 = 0;
            let mut pos: u64 = 0;
            for (k, w) in weights.iter().enumerate().take(used) {
                let v = w.iter().zip(&digits).map(|(a, b)| a * b).sum::<i64>() - mins[k];
                let v = v as u64;
                if shifting && k == 0 {
                    line = v % degree as u64;
                    pos = v / degree as u64;
                } else {
                    line = line * ranges[k] as u64 + v;
                }
            }
            *code = line * positions + pos;
            // odometer step over the mixed-radix digits
            for d in digits.iter_mut() {
                *d += 1;
                if *d < side {
                    break;
                }
                *d = 0;
            }
        }

        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| codes[i as usize]);
        let mut local_of = vec![0u32; n];
        let mut classes = Vec::new();
        let mut start = 0;
        while start < n {
            let code = codes[order[start] as usize];
            let mut end = start;
            while end < n && codes[order[end] as usize] == code {
                local_of[order[end] as usize] = (end - start) as u32;
                end += 1;
            }
            classes.push(ClassSpan {
                start,
                len: end - start,
                line: code / positions,
                pos: code % positions,
            });
            start = end;
        }
        Ok(ClassLayout {
            order,
            local_of,
            classes,
            shifting,
        })
    }

    pub fn members(&self, class: &ClassSpan) -> &[u32] {
        &self.order[class.start..class.start + class.len]
    }
}
