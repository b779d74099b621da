//! Linear algebra over `F_p` on the monomial basis of the truncated ring.

mod bits;
mod chain;
mod dense;
mod grading;
mod sparse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Capacity, TruncatedPoly};

pub use sparse::{EchelonBasis, SparseVector};

/// `d_t = dim_k f^t R_e` for `t = 0..=T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageChain {
    pub dims: Vec<u64>,
    /// `d_T = 0` was reached.
    pub terminated: bool,
}

impl ImageChain {
    /// First `t` with `d_t = 0`, if the chain got that far.
    pub fn first_zero(&self) -> Option<u64> {
        self.dims.iter().position(|&d| d == 0).map(|t| t as u64)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainStrategy {
    /// Classes of a grading adapted to `f`, swept line by line with birth
    /// labels; one pass gives the whole chain.
    #[default]
    Graded,
    /// `B_{t+1}` = echelon basis of `{f·b : b ∈ B_t}` on the whole ring.
    Incremental,
    /// `dim f^t R_e` recomputed from scratch for each `t`.
    Naive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankStrategy {
    #[default]
    Graded,
    /// Every product `g·x^a` inserted into one global [`EchelonBasis`].
    Sparse,
}

/// `dim_k (g R_e)`: the rank of `{g·x^a : a ∈ [0, p^e)^{n+1}}`.
pub fn image_dimension(g: &TruncatedPoly, capacity: Capacity) -> Result<u64> {
    image_dimension_with(g, capacity, RankStrategy::Graded)
}

pub fn image_dimension_with(
    g: &TruncatedPoly,
    capacity: Capacity,
    strategy: RankStrategy,
) -> Result<u64> {
    capacity.check(g.ring())?;
    match strategy {
        RankStrategy::Graded => chain::graded_rank(g),
        RankStrategy::Sparse => Ok(sparse_rank(g)),
    }
}

fn sparse_rank(g: &TruncatedPoly) -> u64 {
    let ring = *g.ring();
    let mut basis = EchelonBasis::new(ring.modulus());
    for a in 0..ring.size() {
        let x = TruncatedPoly::from_indexed(ring, vec![(a, 1)]);
        let v = SparseVector::from(&g.mul(&x).expect("same ring"));
        basis.insert(v);
    }
    basis.rank() as u64
}

/// The chain `d_0 >= d_1 >= ...` of `dim f^t R_e`, stopping at the first
/// zero or at `t_max`, whichever comes first.
pub fn image_chain(f: &TruncatedPoly, t_max: u64, capacity: Capacity) -> Result<ImageChain> {
    image_chain_with(f, t_max, capacity, ChainStrategy::Graded)
}

pub fn image_chain_with(
    f: &TruncatedPoly,
    t_max: u64,
    capacity: Capacity,
    strategy: ChainStrategy,
) -> Result<ImageChain> {
    let ring = f.ring();
    capacity.check(ring)?;
    if f.terms().first().is_some_and(|&(i, _)| i == 0) {
        return Err(Error::NotInMaximalIdeal);
    }
    let t_max = t_max.min(ring.side());
    let mut dims = match strategy {
        ChainStrategy::Graded => chain::graded_chain(f)?,
        ChainStrategy::Incremental => incremental_chain(f, t_max),
        ChainStrategy::Naive => naive_chain(f, t_max, capacity)?,
    };
    dims.truncate(t_max as usize + 1);
    let terminated = dims.last() == Some(&0);
    Ok(ImageChain { dims, terminated })
}

fn incremental_chain(f: &TruncatedPoly, t_max: u64) -> Vec<u64> {
    let ring = *f.ring();
    let mut dims = vec![ring.size()];
    // B_0 is the standard basis; no elimination needed for d_0
    let mut current: Vec<SparseVector> = (0..ring.size()).map(SparseVector::unit).collect();
    let fv = f.terms().to_vec();
    while (dims.len() as u64) <= t_max && !current.is_empty() {
        let mut basis = EchelonBasis::new(ring.modulus());
        for b in &current {
            let bp = TruncatedPoly::from_indexed(ring, b.entries().to_vec());
            let fp = TruncatedPoly::from_indexed(ring, fv.clone());
            basis.insert(SparseVector::from(&fp.mul(&bp).expect("same ring")));
        }
        dims.push(basis.rank() as u64);
        current = basis.rows().to_vec();
    }
    dims
}

fn naive_chain(f: &TruncatedPoly, t_max: u64, capacity: Capacity) -> Result<Vec<u64>> {
    let mut dims = Vec::new();
    for t in 0..=t_max {
        let d = image_dimension(&f.pow(t), capacity)?;
        dims.push(d);
        if d == 0 {
            break;
        }
    }
    Ok(dims)
}
