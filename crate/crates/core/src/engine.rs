//! Length tables `ℓ_{e,t} = dim f^t R_e - dim f^{t+1} R_e` and everything
//! read off from them.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{image_chain_with, image_dimension, ChainStrategy};
use crate::rational::RationalValue;
use crate::ring::{Capacity, Polynomial, TruncatedPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Engine {
    pub capacity: Capacity,
    pub strategy: ChainStrategy,
}

impl Engine {
    pub fn new(capacity: Capacity) -> Self {
        Engine {
            capacity,
            strategy: ChainStrategy::default(),
        }
    }

    pub fn with_strategy(mut self, strategy: ChainStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    fn truncated(&self, f: &Polynomial, e: u32) -> Result<TruncatedPoly> {
        f.ensure_nonzero_in_maximal_ideal()?;
        let g = TruncatedPoly::truncate(f, e)?;
        self.capacity.check(g.ring())?;
        Ok(g)
    }

    pub fn length_table(&self, f: &Polynomial, e: u32) -> Result<LengthTable> {
        let g = self.truncated(f, e)?;
        let q = g.ring().side();
        let chain = image_chain_with(&g, q, self.capacity, self.strategy)?;
        debug_assert!(chain.terminated);
        let lengths: Vec<u64> = chain.dims.windows(2).map(|w| w[0] - w[1]).collect();
        Ok(LengthTable {
            p: f.modulus().get() as u64,
            e,
            nvars: f.nvars(),
            mu: lengths.len() as u64,
            lengths,
        })
    }

    /// Tables for `e = lo..=hi`.
    pub fn tower(&self, f: &Polynomial, lo: u32, hi: u32) -> Result<Vec<LengthTable>> {
        (lo..=hi).map(|e| self.length_table(f, e)).collect()
    }

    /// Largest `e <= limit` whose ring fits under the capacity.
    pub fn max_exponent(&self, f: &Polynomial, limit: u32) -> u32 {
        self.capacity
            .max_exponent(f.modulus(), f.nvars())
            .min(limit)
    }

    /// `min { t >= 1 : f^t = 0 in R_e }`.
    pub fn mu_value(&self, f: &Polynomial, e: u32) -> Result<u64> {
        Ok(self.length_table(f, e)?.mu)
    }

    /// `a_e = dim (f^{p^e - 1} R_e)`, from the power itself rather than the
    /// chain.
    pub fn fedder_ae(&self, f: &Polynomial, e: u32) -> Result<u64> {
        let g = self.truncated(f, e)?;
        let q = g.ring().side();
        image_dimension(&g.pow(q - 1), self.capacity)
    }

    /// `dim (f^s R_e) / p^{e(n+1)}` with `s = ⌈t (p^e - 1)⌉`.
    pub fn pair_fsignature_estimate(
        &self,
        f: &Polynomial,
        e: u32,
        t: &RationalValue,
    ) -> Result<RationalValue> {
        if !t.in_unit_interval() {
            return Err(Error::OutOfRange(format!("t = {t} is not in [0, 1]")));
        }
        let g = self.truncated(f, e)?;
        let ring = *g.ring();
        let s = (t.clone() * RationalValue::from(ring.side() - 1)).ceil();
        let s: u64 = s.try_into().expect("s <= p^e - 1");
        let d = image_dimension(&g.pow(s), self.capacity)?;
        Ok(RationalValue::from_ratio(
            &BigUint::from(d),
            &BigUint::from(ring.size()),
        ))
    }

    pub fn ehk_estimates(&self, f: &Polynomial, e_max: u32) -> Result<EstimateSequence> {
        Ok(EstimateSequence::ehk(&self.tower(f, 1, e_max)?))
    }

    pub fn fsig_estimates(&self, f: &Polynomial, e_max: u32) -> Result<EstimateSequence> {
        Ok(EstimateSequence::fsig(&self.tower(f, 1, e_max)?))
    }

    pub fn fpt_estimates(&self, f: &Polynomial, e_max: u32) -> Result<FptEstimate> {
        FptEstimate::from_tables(&self.tower(f, 1, e_max)?)
            .ok_or_else(|| Error::OutOfRange("need at least one exponent e".into()))
    }
}

/// `ℓ_{e,t}` for `t < μ` and `μ = min { t >= 1 : f^t = 0 in R_e }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthTable {
    pub p: u64,
    pub e: u32,
    pub nvars: usize,
    pub lengths: Vec<u64>,
    pub mu: u64,
}

impl LengthTable {
    /// `q = p^e`.
    pub fn side(&self) -> u64 {
        self.p.pow(self.e)
    }

    fn q_big(&self) -> BigUint {
        BigUint::from(self.p).pow(self.e)
    }

    /// `p^{e(n+1)}`.
    pub fn total_size(&self) -> BigUint {
        self.q_big().pow(self.nvars as u32)
    }

    /// `p^{en}`.
    pub fn c_denominator(&self) -> BigUint {
        self.q_big().pow(self.nvars as u32 - 1)
    }

    /// `ℓ_{e,t}`, zero from `μ` on.
    pub fn length(&self, t: u64) -> u64 {
        self.lengths.get(t as usize).copied().unwrap_or(0)
    }

    /// `a_e = ℓ_{e,p^e-1}`.
    pub fn a_e(&self) -> u64 {
        self.length(self.side() - 1)
    }

    pub fn total(&self) -> BigUint {
        self.lengths.iter().map(|&l| BigUint::from(l)).sum()
    }

    /// `C_{e,t} = ℓ_{e,t} / p^{en}`.
    pub fn c_value(&self, t: u64) -> RationalValue {
        RationalValue::from_ratio(&BigUint::from(self.length(t)), &self.c_denominator())
    }

    pub fn xi_step(&self) -> XiStep {
        let q = self.side();
        let values: Vec<RationalValue> = (0..q).map(|t| self.c_value(t)).collect();
        XiStep {
            e: self.e,
            q,
            value_at_one: values.last().cloned().expect("q >= 1"),
            values,
        }
    }

    /// `ℓ_{e,a} / p^{e(n+1)}`, the integral of `ξ_f` over `[a/q, (a+1)/q]`.
    pub fn interval_integral(&self, a: u64) -> Result<RationalValue> {
        if a >= self.side() {
            return Err(Error::OutOfRange(format!(
                "interval index {a} is not below p^e = {}",
                self.side()
            )));
        }
        Ok(RationalValue::from_ratio(
            &BigUint::from(self.length(a)),
            &self.total_size(),
        ))
    }

    /// `(1/q) Σ_{t < ⌊x q⌋} C_{e,t}`.
    pub fn phi_partial(&self, x: &RationalValue) -> Result<RationalValue> {
        if !x.in_unit_interval() {
            return Err(Error::OutOfRange(format!("x = {x} is not in [0, 1]")));
        }
        let upto = (x.clone() * RationalValue::from(self.side())).floor();
        let upto: u64 = upto.try_into().expect("at most q");
        let sum: BigUint = (0..upto.min(self.mu))
            .map(|t| BigUint::from(self.length(t)))
            .sum();
        Ok(RationalValue::from_ratio(&sum, &self.total_size()))
    }

    /// `C_{e,⌈αq⌉} <= ξ_f(α) <= C_{e,⌊αq⌋-1}`; the upper side needs
    /// `⌊αq⌋ >= 1`.
    pub fn bracket(&self, alpha: &RationalValue) -> Result<Bracket> {
        if !alpha.in_unit_interval() || alpha.is_zero() {
            return Err(Error::OutOfRange(format!(
                "alpha = {alpha} is not in (0, 1]"
            )));
        }
        let scaled = alpha.clone() * RationalValue::from(self.side());
        let lower_index: u64 = scaled.ceil().try_into().expect("at most q");
        let fl: u64 = scaled.floor().try_into().expect("at most q");
        let upper_index = fl.checked_sub(1);
        Ok(Bracket {
            alpha: alpha.clone(),
            e: self.e,
            lower_index,
            lower: self.c_value(lower_index),
            upper_index,
            upper: upper_index.map(|t| self.c_value(t)),
        })
    }
}

/// `ξ_{f,e}`: the value on `[t/q, (t+1)/q)` is `values[t]`, and
/// `ξ_{f,e}(1) = C_{e,q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiStep {
    pub e: u32,
    pub q: u64,
    pub values: Vec<RationalValue>,
    pub value_at_one: RationalValue,
}

impl XiStep {
    /// `(t/q, value)` for every step start, then `(1, value_at_one)`.
    pub fn breakpoints(&self) -> Vec<(RationalValue, RationalValue)> {
        let q = BigUint::from(self.q);
        let mut out: Vec<_> = self
            .values
            .iter()
            .enumerate()
            .map(|(t, v)| (RationalValue::from_ratio(&BigUint::from(t), &q), v.clone()))
            .collect();
        out.push((RationalValue::one(), self.value_at_one.clone()));
        out
    }

    pub fn integral(&self) -> RationalValue {
        let sum: RationalValue = self.values.iter().cloned().sum();
        sum / RationalValue::from(self.q)
    }

    pub fn at(&self, x: &RationalValue) -> Option<RationalValue> {
        if !x.in_unit_interval() {
            return None;
        }
        let t: u64 = (x.clone() * RationalValue::from(self.q))
            .floor()
            .try_into()
            .ok()?;
        Some(
            self.values
                .get(t as usize)
                .unwrap_or(&self.value_at_one)
                .clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    pub alpha: RationalValue,
    pub e: u32,
    pub lower_index: u64,
    pub lower: RationalValue,
    pub upper_index: Option<u64>,
    pub upper: Option<RationalValue>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    Ehk,
    Fsig,
    Fpt,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateSequence {
    pub kind: EstimateKind,
    pub values: Vec<(u32, RationalValue)>,
    pub direction: Monotonicity,
}

impl EstimateSequence {
    fn from_tables(
        kind: EstimateKind,
        direction: Monotonicity,
        tables: &[LengthTable],
        value: impl Fn(&LengthTable) -> RationalValue,
    ) -> Self {
        EstimateSequence {
            kind,
            values: tables.iter().map(|t| (t.e, value(t))).collect(),
            direction,
        }
    }

    /// `C_{e,0}`.
    pub fn ehk(tables: &[LengthTable]) -> Self {
        Self::from_tables(EstimateKind::Ehk, Monotonicity::Increasing, tables, |t| {
            t.c_value(0)
        })
    }

    /// `a_e / p^{en}`.
    pub fn fsig(tables: &[LengthTable]) -> Self {
        Self::from_tables(EstimateKind::Fsig, Monotonicity::Decreasing, tables, |t| {
            t.c_value(t.side() - 1)
        })
    }

    /// `μ_f(p^e) / p^e`.
    pub fn fpt(tables: &[LengthTable]) -> Self {
        Self::from_tables(EstimateKind::Fpt, Monotonicity::Decreasing, tables, |t| {
            RationalValue::from_ratio(&BigUint::from(t.mu), &BigUint::from(t.side()))
        })
    }

    /// First consecutive pair `(e, e')` breaking the expected direction.
    pub fn violation(&self) -> Option<(u32, u32)> {
        self.values.windows(2).find_map(|w| {
            let ok = match self.direction {
                Monotonicity::Increasing => w[0].1 <= w[1].1,
                Monotonicity::Decreasing => w[0].1 >= w[1].1,
            };
            (!ok).then_some((w[0].0, w[1].0))
        })
    }

    pub fn last(&self) -> Option<&RationalValue> {
        self.values.last().map(|v| &v.1)
    }
}

/// `fpt(f) <= μ_f(p^e)/p^e` for every `e`; only this upper bound is
/// certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FptEstimate {
    pub sequence: EstimateSequence,
    pub upper_bound: RationalValue,
    pub at_e: u32,
    /// Present when `a_e > 0` at the largest `e`: then `ξ_f(1) = 0` is not
    /// visible at this level, and that is assumed by the characterization of
    /// the fpt through `μ`.
    pub caveat: Option<String>,
}

impl FptEstimate {
    pub fn from_tables(tables: &[LengthTable]) -> Option<Self> {
        let last = tables.last()?;
        let sequence = EstimateSequence::fpt(tables);
        let upper_bound = sequence
            .values
            .iter()
            .map(|v| v.1.clone())
            .min()
            .expect("nonempty");
        let caveat = (last.a_e() > 0).then(|| {
            format!(
                "a_{} = {} > 0: xi_f(1) = 0 is not established at this level",
                last.e,
                last.a_e()
            )
        });
        Some(FptEstimate {
            sequence,
            upper_bound,
            at_e: last.e,
            caveat,
        })
    }
}

/// `p^{n+1} ℓ_{e,t}` and `Σ_{i<p} ℓ_{e+1,pt+i}`, for every `t < p^e`.
pub fn recursion_sums(lo: &LengthTable, hi: &LengthTable) -> Vec<(u64, BigInt, BigInt)> {
    let p = lo.p;
    let scale = BigInt::from(p).pow(lo.nvars as u32);
    (0..lo.side())
        .map(|t| {
            let left = &scale * lo.length(t);
            let right: BigInt = (0..p).map(|i| BigInt::from(hi.length(p * t + i))).sum();
            (t, left, right)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialSpec;
    use crate::parse::parse_polynomial;
    use crate::ring::PrimeModulus;

    fn poly(text: &str, nvars: usize, p: u64) -> Polynomial {
        parse_polynomial(text, nvars, PrimeModulus::new(p).unwrap()).unwrap()
    }

    fn rv(s: &str) -> RationalValue {
        s.parse().unwrap()
    }

    fn engine() -> Engine {
        Engine::new(Capacity(1 << 20))
    }

    #[test]
    fn table_examples() {
        let t = engine().length_table(&poly("x*y", 2, 2), 2).unwrap();
        assert_eq!(t.lengths, vec![7, 5, 3, 1]);
        assert_eq!(t.mu, 4);
        let t = engine().length_table(&poly("x", 2, 3), 1).unwrap();
        assert_eq!(t.lengths, vec![3, 3, 3]);
        assert_eq!(t.mu, 3);
        // (x^2+y^3)^3 = 3x^4y^3 and (x^2+y^3)^4 = 0 at p = 5, e = 1
        let t = engine().length_table(&poly("x^2 + y^3", 2, 5), 1).unwrap();
        assert_eq!(t.mu, 4);
        assert_eq!(t.lengths[3], 2);
    }

    #[test]
    fn mu_examples() {
        let e = engine();
        assert_eq!(e.mu_value(&poly("x*y", 2, 2), 2).unwrap(), 4);
        assert_eq!(e.mu_value(&poly("x^2 + y^3", 2, 5), 1).unwrap(), 4);
        for p in [2u64, 3, 5] {
            for k in 0..3 {
                assert_eq!(e.mu_value(&poly("x", 2, p), k).unwrap(), p.pow(k));
            }
        }
    }

    #[test]
    fn c_values() {
        let t = engine().length_table(&poly("x*y", 2, 2), 2).unwrap();
        assert_eq!(t.c_value(0), rv("7/4"));
        assert_eq!(t.c_value(4), rv("0"));
        let t = engine().length_table(&poly("x", 2, 3), 1).unwrap();
        assert_eq!(t.c_value(1), rv("1"));
    }

    #[test]
    fn xi_steps() {
        let t = engine().length_table(&poly("x*y", 2, 2), 2).unwrap();
        let xi = t.xi_step();
        let expect: Vec<RationalValue> =
            ["7/4", "5/4", "3/4", "1/4"].iter().map(|s| rv(s)).collect();
        assert_eq!(xi.values, expect);
        assert_eq!(xi.value_at_one, rv("1/4"));
        assert_eq!(xi.integral(), rv("1"));
        let bp = xi.breakpoints();
        assert_eq!(bp[1], (rv("1/4"), rv("5/4")));
        assert_eq!(bp[4], (rv("1"), rv("1/4")));
        assert_eq!(xi.at(&rv("1/2")), Some(rv("3/4")));

        let xi = engine()
            .length_table(&poly("x", 2, 2), 1)
            .unwrap()
            .xi_step();
        assert_eq!(xi.values, vec![rv("1"), rv("1")]);
        assert_eq!(xi.value_at_one, rv("1"));
    }

    #[test]
    fn integrals_and_phi() {
        let t = engine().length_table(&poly("x*y", 2, 2), 2).unwrap();
        assert_eq!(t.interval_integral(0).unwrap(), rv("7/16"));
        let total: RationalValue = (0..4).map(|a| t.interval_integral(a).unwrap()).sum();
        assert_eq!(total, rv("1"));
        assert!(t.interval_integral(4).is_err());
        assert_eq!(t.phi_partial(&rv("0")).unwrap(), rv("0"));
        assert_eq!(t.phi_partial(&rv("1")).unwrap(), rv("1"));
        assert_eq!(t.phi_partial(&rv("1/2")).unwrap(), rv("3/4"));
        assert!(t.phi_partial(&rv("3/2")).is_err());
        let t = engine().length_table(&poly("x", 2, 2), 1).unwrap();
        assert_eq!(t.interval_integral(1).unwrap(), rv("1/2"));
    }

    #[test]
    fn estimates_for_xy() {
        let f = poly("x*y", 2, 2);
        let ehk = engine().ehk_estimates(&f, 3).unwrap();
        let vals: Vec<_> = ehk.values.iter().map(|v| v.1.clone()).collect();
        assert_eq!(vals, vec![rv("3/2"), rv("7/4"), rv("15/8")]);
        assert_eq!(ehk.violation(), None);
        let fsig = engine().fsig_estimates(&f, 3).unwrap();
        let vals: Vec<_> = fsig.values.iter().map(|v| v.1.clone()).collect();
        assert_eq!(vals, vec![rv("1/2"), rv("1/4"), rv("1/8")]);
        let fpt = engine().fpt_estimates(&f, 3).unwrap();
        assert!(fpt.sequence.values.iter().all(|v| v.1 == rv("1")));
        assert_eq!(fpt.upper_bound, rv("1"));
        assert!(fpt.caveat.is_some());
    }

    #[test]
    fn estimates_for_linear_and_square() {
        let f = poly("x", 2, 3);
        for seq in [
            engine().ehk_estimates(&f, 3).unwrap(),
            engine().fsig_estimates(&f, 3).unwrap(),
            engine().fpt_estimates(&f, 3).unwrap().sequence,
        ] {
            assert!(seq.values.iter().all(|v| v.1 == rv("1")));
        }
        let f = poly("x^2", 2, 3);
        let ehk = engine().ehk_estimates(&f, 4).unwrap();
        assert!(ehk.values.iter().all(|v| v.1 == rv("2")));
        let fpt = engine().fpt_estimates(&f, 4).unwrap();
        for (e, v) in &fpt.sequence.values {
            let q = 3u64.pow(*e);
            assert_eq!(
                *v,
                RationalValue::from_ratio(&q.div_ceil(2).into(), &q.into())
            );
        }
        assert_eq!(fpt.caveat, None);
    }

    #[test]
    fn cusp_at_five() {
        let f = poly("x^2 + y^3", 2, 5);
        assert_eq!(engine().fedder_ae(&f, 1).unwrap(), 0);
        let fsig = engine().fsig_estimates(&f, 1).unwrap();
        assert_eq!(fsig.values, vec![(1, rv("0"))]);
        let fpt = engine().fpt_estimates(&f, 1).unwrap();
        assert_eq!(fpt.upper_bound, rv("4/5"));
        assert_eq!(fpt.caveat, None);
    }

    #[test]
    fn fedder_examples() {
        assert_eq!(engine().fedder_ae(&poly("x*y", 2, 2), 2).unwrap(), 1);
        assert_eq!(engine().fedder_ae(&poly("x", 2, 3), 1).unwrap(), 3);
        assert_eq!(engine().fedder_ae(&poly("x", 2, 2), 2).unwrap(), 4);
    }

    #[test]
    fn pair_examples() {
        let e = engine();
        let f = poly("x*y", 2, 2);
        assert_eq!(
            e.pair_fsignature_estimate(&f, 3, &rv("0")).unwrap(),
            rv("1")
        );
        assert_eq!(
            e.pair_fsignature_estimate(&f, 3, &rv("1/2")).unwrap(),
            rv("1/4")
        );
        assert_eq!(
            e.pair_fsignature_estimate(&f, 3, &rv("1")).unwrap(),
            rv("1/64")
        );
        assert!(e.pair_fsignature_estimate(&f, 3, &rv("-1/2")).is_err());
        let g = poly("x^2 + y^3 + x*y", 2, 3);
        assert_eq!(
            e.pair_fsignature_estimate(&g, 2, &rv("0")).unwrap(),
            rv("1")
        );
        let mut prev = rv("1");
        for k in 0..=12 {
            let t = RationalValue::from_ratio(&BigUint::from(k as u32), &BigUint::from(12u32));
            let s = e.pair_fsignature_estimate(&g, 2, &t).unwrap();
            assert!(s <= prev);
            prev = s;
        }
    }

    #[test]
    fn brackets() {
        let t = engine().length_table(&poly("x*y", 2, 2), 3).unwrap();
        let b = t.bracket(&rv("1/3")).unwrap();
        assert_eq!(b.lower_index, 3);
        assert_eq!(b.upper_index, Some(1));
        assert_eq!(b.lower, t.c_value(3));
        assert_eq!(b.upper, Some(t.c_value(1)));
        let t1 = engine().length_table(&poly("x*y", 2, 2), 1).unwrap();
        assert_eq!(t1.bracket(&rv("1/3")).unwrap().upper_index, None);
        assert!(t.bracket(&rv("0")).is_err());
    }

    #[test]
    fn brackets_are_monotone_in_e() {
        let f = poly("x^2 + y^3", 2, 3);
        let tables = engine().tower(&f, 1, 5).unwrap();
        for alpha in ["1/2", "1/3", "5/6", "1", "2/7"] {
            let bs: Vec<Bracket> = tables
                .iter()
                .map(|t| t.bracket(&rv(alpha)).unwrap())
                .collect();
            for w in bs.windows(2) {
                assert!(w[0].lower <= w[1].lower, "alpha {alpha}");
                if let (Some(a), Some(b)) = (&w[0].upper, &w[1].upper) {
                    assert!(a >= b, "alpha {alpha}");
                }
            }
            for b in &bs {
                if let Some(u) = &b.upper {
                    assert!(u >= &b.lower);
                }
            }
        }
    }

    #[test]
    fn monomial_tables_match_closed_form() {
        for (alphas, p) in [
            (vec![1u32, 2], 3u64),
            (vec![2, 3], 2),
            (vec![1, 2, 3], 2),
            (vec![0, 1, 2], 2),
        ] {
            let spec = MonomialSpec::new(alphas, PrimeModulus::new(p).unwrap()).unwrap();
            let f = spec.polynomial();
            for e in 0..=3 {
                let t = engine().length_table(&f, e).unwrap();
                assert_eq!(BigUint::from(t.mu), spec.mu(e));
                for (k, &l) in t.lengths.iter().enumerate() {
                    assert_eq!(BigUint::from(l), spec.closed_form_length(e, k as u64));
                }
            }
        }
    }

    #[test]
    fn recursion_identity() {
        let f = poly("x*y", 2, 2);
        let lo = engine().length_table(&f, 1).unwrap();
        let hi = engine().length_table(&f, 2).unwrap();
        let sums = recursion_sums(&lo, &hi);
        assert_eq!(sums[0], (0, BigInt::from(12), BigInt::from(12)));
        assert_eq!(sums[1], (1, BigInt::from(4), BigInt::from(4)));
    }

    #[test]
    fn strategies_give_equal_tables() {
        let f = poly("x^3 + y^3 + x*y", 2, 3);
        let a = engine().length_table(&f, 2).unwrap();
        let b = engine()
            .with_strategy(ChainStrategy::Incremental)
            .length_table(&f, 2)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        let f = poly("x*y", 2, 2);
        let small = Engine::new(Capacity(100));
        assert!(small.length_table(&f, 4).unwrap_err().is_capacity());
        assert_eq!(small.max_exponent(&f, 10), 3);
    }
}
