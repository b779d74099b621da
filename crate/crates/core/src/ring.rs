//! Prime fields, polynomials and the truncated rings `F_p[x]/(x_i^{p^e})`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime is below this bound, so a product of two residues
/// always fits in 32 bits and long accumulations fit in 64.
pub const PRIME_BOUND: u64 = 1 << 16;

/// Default limit on `p^{e(n+1)}`, the dimension of the truncated ring.
pub const DEFAULT_CAPACITY: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..PRIME_BOUND).contains(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }

    /// `p^e`, or `None` on overflow.
    pub fn checked_power(self, e: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(e)
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Upper bound on `p^{e(n+1)}` for any single computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capacity(pub u64);

impl Default for Capacity {
    fn default() -> Self {
        Capacity(DEFAULT_CAPACITY)
    }
}

impl Capacity {
    pub fn check(self, ring: &TruncatedRing) -> Result<()> {
        if ring.size() > self.0 {
            Err(Error::CapacityExceeded {
                needed: ring.size().to_string(),
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Largest `e` with `p^{e * nvars} <= limit`.
    pub fn max_exponent(self, p: PrimeModulus, nvars: usize) -> u32 {
        let mut e = 0u32;
        loop {
            match TruncatedRing::new(p, nvars, e + 1) {
                Ok(r) if r.size() <= self.0 => e += 1,
                _ => return e,
            }
        }
    }
}

/// Exponents of a monomial `x_1^{a_1} ... x_k^{a_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Sparse polynomial over `F_p` with canonical (nonzero, reduced) coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    modulus: PrimeModulus,
    terms: BTreeMap<ExponentVector, u32>,
}

impl Polynomial {
    pub fn zero(nvars: usize, modulus: PrimeModulus) -> Self {
        Polynomial {
            nvars,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials and dropping anything that vanishes mod `p`.
    pub fn from_terms<I>(nvars: usize, modulus: PrimeModulus, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut out = Polynomial::zero(nvars, modulus);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::VariableOutOfRange {
                    index: exps.len(),
                    nvars,
                });
            }
            out.add_term(ExponentVector(exps), modulus.reduce(c));
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, exps: ExponentVector, c: u32) {
        let p = self.modulus;
        let sum = p.add(self.terms.get(&exps).copied().unwrap_or(0), c % p.get());
        if sum == 0 {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, u32)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u32 {
        self.terms
            .get(&ExponentVector::zero(self.nvars))
            .copied()
            .unwrap_or(0)
    }

    /// Checks `0 != f ∈ m`.
    pub fn ensure_nonzero_in_maximal_ideal(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.constant_term() != 0 {
            return Err(Error::NotInMaximalIdeal);
        }
        Ok(())
    }

    /// Exponents of `f` when `f` is a single term (any nonzero coefficient).
    pub fn monomial_exponents(&self) -> Option<&ExponentVector> {
        if self.terms.len() == 1 {
            self.terms.keys().next()
        } else {
            None
        }
    }

    /// Variables that occur with a positive exponent somewhere in `f`.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&j| self.terms.keys().any(|e| e.0[j] > 0))
            .collect()
    }
}

pub(crate) fn variable_name(j: usize, nvars: usize) -> String {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    if nvars <= 4 {
        LETTERS[j].to_string()
    } else {
        format!("x{}", j + 1)
    }
}

pub(crate) fn format_monomial(exps: &[u32], coeff: u32, nvars: usize) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (j, &a) in exps.iter().enumerate() {
        match a {
            0 => {}
            1 => factors.push(variable_name(j, nvars)),
            _ => factors.push(format!("{}^{}", variable_name(j, nvars), a)),
        }
    }
    match (coeff, factors.is_empty()) {
        (c, true) => c.to_string(),
        (1, false) => factors.join("*"),
        (c, false) => format!("{}*{}", c, factors.join("*")),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, &c)| format_monomial(&e.0, c, self.nvars))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Shape of `F_p[x_1..x_k]/(x_1^{p^e}, ..., x_k^{p^e})`.
///
/// Monomials are encoded in mixed radix `p^e`, the exponent of `x_1` being
/// the least significant digit. This index order is the pivot order used by
/// all eliminations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedRing {
    modulus: PrimeModulus,
    nvars: usize,
    e: u32,
    side: u64,
    size: u64,
}

impl TruncatedRing {
    pub fn new(modulus: PrimeModulus, nvars: usize, e: u32) -> Result<Self> {
        let overflow = || Error::CapacityExceeded {
            needed: format!("{}^({}*{})", modulus, e, nvars),
            limit: u64::MAX,
        };
        let side = modulus.checked_power(e).ok_or_else(overflow)?;
        let size = side.checked_pow(nvars as u32).ok_or_else(overflow)?;
        Ok(TruncatedRing {
            modulus,
            nvars,
            e,
            side,
            size,
        })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    /// `p^e`
    pub fn side(&self) -> u64 {
        self.side
    }
    /// `p^{e * nvars}`, the dimension over `F_p`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Index of a monomial, or `None` when some exponent reaches `p^e`.
    pub fn encode(&self, exps: &[u32]) -> Option<u64> {
        let mut idx = 0u64;
        for &a in exps.iter().rev() {
            if a as u64 >= self.side {
                return None;
            }
            idx = idx * self.side + a as u64;
        }
        Some(idx)
    }

    pub fn decode_into(&self, mut idx: u64, out: &mut [u32]) {
        for slot in out.iter_mut() {
            *slot = (idx % self.side) as u32;
            idx /= self.side;
        }
    }

    pub fn decode(&self, idx: u64) -> Vec<u32> {
        let mut out = vec![0; self.nvars];
        self.decode_into(idx, &mut out);
        out
    }

    fn check_same(&self, other: &TruncatedRing) -> Result<()> {
        if self != other {
            return Err(Error::MismatchedRings(format!(
                "(p={}, nvars={}, e={}) vs (p={}, nvars={}, e={})",
                self.modulus, self.nvars, self.e, other.modulus, other.nvars, other.e
            )));
        }
        Ok(())
    }
}

/// Element of a [`TruncatedRing`]: terms sorted by monomial index, no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    ring: TruncatedRing,
    terms: Vec<(u64, u32)>,
}

impl TruncatedPoly {
    pub fn zero(ring: TruncatedRing) -> Self {
        TruncatedPoly {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: TruncatedRing) -> Self {
        // in R_0 = F_p the constant 1 has index 0 as well
        TruncatedPoly {
            ring,
            terms: vec![(0, 1)],
        }
    }

    /// `c * x^exps`, zero if the monomial falls outside the box.
    pub fn monomial(ring: TruncatedRing, exps: &[u32], c: u32) -> Self {
        let c = c % ring.modulus.get();
        match ring.encode(exps) {
            Some(idx) if c != 0 => TruncatedPoly {
                ring,
                terms: vec![(idx, c)],
            },
            _ => TruncatedPoly::zero(ring),
        }
    }

    /// Builds from arbitrary `(index, coefficient)` pairs.
    pub fn from_indexed(ring: TruncatedRing, mut terms: Vec<(u64, u32)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let p = ring.modulus;
        let mut out: Vec<(u64, u32)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            debug_assert!(i < ring.size);
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = p.add(last.1, c % p.get()),
                _ => out.push((i, c % p.get())),
            }
        }
        out.retain(|t| t.1 != 0);
        TruncatedPoly { ring, terms: out }
    }

    /// Image of `f` in `R/m^{[p^e]}`: every term with an exponent `>= p^e` is
    /// dropped. Reduction mod `m^{[p^e]}` is a ring map, so every later power
    /// and product may be computed on this image.
    pub fn truncate(f: &Polynomial, e: u32) -> Result<Self> {
        let ring = TruncatedRing::new(f.modulus(), f.nvars(), e)?;
        let terms = f
            .terms()
            .filter_map(|(exps, c)| ring.encode(exps.as_slice()).map(|i| (i, c)))
            .collect();
        Ok(TruncatedPoly::from_indexed(ring, terms))
    }

    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent vectors and coefficients of the terms.
    pub fn exponent_terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.terms
            .iter()
            .map(|&(i, c)| (self.ring.decode(i), c))
            .collect()
    }

    pub fn add(&self, other: &TruncatedPoly) -> Result<TruncatedPoly> {
        self.ring.check_same(&other.ring)?;
        Ok(TruncatedPoly {
            ring: self.ring,
            terms: merge_add(&self.terms, &other.terms, self.ring.modulus),
        })
    }

    pub fn scale(&self, c: u32) -> TruncatedPoly {
        let p = self.ring.modulus;
        let c = c % p.get();
        if c == 0 {
            return TruncatedPoly::zero(self.ring);
        }
        TruncatedPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|&(i, a)| (i, p.mul(a, c))).collect(),
        }
    }

    /// Product in the truncated ring. Each term of the shorter factor shifts
    /// the other factor into a sorted stream; streams are merged pairwise.
    pub fn mul(&self, other: &TruncatedPoly) -> Result<TruncatedPoly> {
        self.ring.check_same(&other.ring)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.is_zero() {
            return Ok(TruncatedPoly::zero(self.ring));
        }
        let ring = self.ring;
        let p = ring.modulus;
        let k = ring.nvars;
        let side = ring.side as u32;
        let mut large_digits = vec![0u32; large.terms.len() * k];
        for (chunk, &(i, _)) in large_digits.chunks_mut(k.max(1)).zip(&large.terms) {
            ring.decode_into(i, chunk);
        }
        let mut da = vec![0u32; k];
        let mut runs: Vec<Vec<(u64, u32)>> = Vec::with_capacity(small.terms.len());
        for &(ia, ca) in &small.terms {
            ring.decode_into(ia, &mut da);
            let run: Vec<(u64, u32)> = large
                .terms
                .iter()
                .zip(large_digits.chunks(k.max(1)))
                .filter(|(_, db)| da.iter().zip(db.iter()).all(|(&x, &y)| x + y < side))
                .map(|(&(ib, cb), _)| (ia + ib, p.mul(ca, cb)))
                .collect();
            if !run.is_empty() {
                runs.push(run);
            }
        }
        while runs.len() > 1 {
            let mut next = Vec::with_capacity(runs.len().div_ceil(2));
            let mut it = runs.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge_add(&a, &b, p)),
                    None => next.push(a),
                }
            }
            runs = next;
        }
        Ok(TruncatedPoly {
            ring,
            terms: runs.pop().unwrap_or_default(),
        })
    }

    /// `f(x_1^p, ..., x_k^p)`, which equals `f^p` over `F_p`.
    fn frobenius(&self) -> TruncatedPoly {
        let ring = self.ring;
        let p = ring.modulus.get();
        let mut exps = vec![0u32; ring.nvars];
        let terms = self
            .terms
            .iter()
            .filter_map(|&(i, c)| {
                ring.decode_into(i, &mut exps);
                for a in exps.iter_mut() {
                    *a = a.checked_mul(p)?;
                }
                ring.encode(&exps).map(|j| (j, c))
            })
            .collect();
        // multiplying every exponent by p keeps the index order
        TruncatedPoly { ring, terms }
    }

    /// `f^t` in the truncated ring, as a product of Frobenius twists of
    /// `f^{t_i}` over the base-`p` digits `t_i` of `t`.
    pub fn pow(&self, t: u64) -> TruncatedPoly {
        let ring = self.ring;
        let p = ring.modulus.get() as u64;
        let mut acc = TruncatedPoly::one(ring);
        let mut twist = self.clone();
        let mut rest = t;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let mut factor = TruncatedPoly::one(ring);
                for _ in 0..digit {
                    factor = factor.mul(&twist).expect("same ring");
                }
                acc = acc.mul(&factor).expect("same ring");
                if acc.is_zero() {
                    return acc;
                }
            }
            rest /= p;
            if rest > 0 {
                twist = twist.frobenius();
            }
        }
        acc
    }
}

pub(crate) fn merge_add(a: &[(u64, u32)], b: &[(u64, u32)], p: PrimeModulus) -> Vec<(u64, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = p.add(a[i].1, b[j].1);
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(i, c)| format_monomial(&self.ring.decode(i), c, self.ring.nvars))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
