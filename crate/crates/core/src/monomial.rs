//! Closed forms for monomials `f = x_1^{α_1} ... x_{n+1}^{α_{n+1}}`.
//!
//! For monomials the image `f^t R_e` is spanned by the monomials in a box, so
//! `dim f^t R_e = ∏_j max(q - tα_j, 0)` with `q = p^e`, and every length is a
//! difference of two such products.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::RationalValue;
use crate::ring::{Polynomial, PrimeModulus};

/// Exponents sorted ascending, at least two of them, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSpec {
    alphas: Vec<u32>,
    p: PrimeModulus,
}

impl MonomialSpec {
    pub fn new(mut alphas: Vec<u32>, p: PrimeModulus) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::InvalidMonomial(format!(
                "need at least two exponents, got {}",
                alphas.len()
            )));
        }
        if alphas.iter().all(|&a| a == 0) {
            return Err(Error::InvalidMonomial("all exponents are zero".into()));
        }
        alphas.sort_unstable();
        Ok(MonomialSpec { alphas, p })
    }

    /// Reads a monomial `Polynomial` (one term) as a spec. The exponent order
    /// of the variables is forgotten.
    pub fn from_polynomial(f: &Polynomial) -> Option<Self> {
        if f.num_terms() != 1 {
            return None;
        }
        let (exps, _) = f.terms().next()?;
        MonomialSpec::new(exps.as_slice().to_vec(), f.modulus()).ok()
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.alphas.len()
    }

    pub fn alpha_max(&self) -> u32 {
        *self.alphas.last().expect("nonempty")
    }

    /// `x_1^{α_1} ... x_{n+1}^{α_{n+1}}` with coefficient 1.
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::from_terms(self.nvars(), self.p, [(self.alphas.clone(), 1i64)])
            .expect("valid monomial")
    }

    /// `[β_1, ..., β_{n+1}]`.
    pub fn elementary_symmetric(&self) -> Vec<BigInt> {
        // coefficients of ∏ (1 + α_j z)
        let mut c = vec![BigInt::one()];
        for &a in &self.alphas {
            c.push(BigInt::zero());
            for k in (1..c.len()).rev() {
                let add = &c[k - 1] * a;
                c[k] += add;
            }
        }
        c.remove(0);
        c
    }

    fn q(&self, e: u32) -> BigInt {
        BigInt::from(self.p.get()).pow(e)
    }

    fn box_product(&self, q: &BigInt, t: &BigInt) -> BigInt {
        self.alphas
            .iter()
            .map(|&a| q - t * a)
            .fold(BigInt::one(), |acc, x| acc * x)
    }

    /// `ℓ(M_{e,t})`, split at `t α_max >= q` and `(t+1) α_max >= q`.
    pub fn closed_form_length(&self, e: u32, t: u64) -> BigUint {
        let q = self.q(e);
        let t = BigInt::from(t);
        let amax = self.alpha_max();
        let out = if &t * amax >= q {
            BigInt::zero()
        } else if (&t + 1u32) * amax >= q {
            self.box_product(&q, &t)
        } else {
            self.box_product(&q, &t) - self.box_product(&q, &(&t + 1u32))
        };
        out.to_biguint().expect("lengths are nonnegative")
    }

    /// `ℓ(M_{e,t})` through the expansion
    /// `Σ_j (-1)^{j+1} (Σ_{i<j} C(j,i) t^i) β_j q^{n+1-j}`, valid while
    /// `(t+1) α_max < q`.
    pub fn expanded_length(&self, e: u32, t: u64) -> BigInt {
        let q = self.q(e);
        let t = BigInt::from(t);
        let m = self.nvars();
        let beta = self.elementary_symmetric();
        let mut total = BigInt::zero();
        for j in 1..=m {
            let mut inner = BigInt::zero();
            let mut binom = BigInt::one();
            let mut tp = BigInt::one();
            for i in 0..j {
                inner += &binom * &tp;
                binom = binom * (j - i) / (i + 1);
                tp *= &t;
            }
            let term = inner * &beta[j - 1] * q.pow((m - j) as u32);
            if j % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// First `t` with `f^t = 0` in `R_e`: `⌈q / α_max⌉`.
    pub fn mu(&self, e: u32) -> BigUint {
        let q = self.q(e).to_biguint().expect("positive");
        q.div_ceil(&BigUint::from(self.alpha_max()))
    }

    pub fn xi_polynomial(&self) -> XiPolynomial {
        let coefficients = self
            .elementary_symmetric()
            .into_iter()
            .enumerate()
            .map(|(k, b)| {
                let j = k + 1;
                let c = b * j;
                if j % 2 == 1 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        XiPolynomial {
            coefficients,
            valid_below: self.exact_fpt(),
        }
    }

    /// `Σ_j j 2^j β_j`: bounds `|C_{e,⌊xq⌋} - ξ(x)| q` for `x < 1/α_max`.
    pub fn convergence_constant(&self) -> BigInt {
        self.elementary_symmetric()
            .into_iter()
            .enumerate()
            .map(|(k, b)| b * (k + 1) * (BigInt::one() << (k + 1)))
            .sum()
    }

    pub fn exact_fpt(&self) -> RationalValue {
        RationalValue::new(1, self.alpha_max())
    }

    fn gap_product(&self) -> BigInt {
        let amax = self.alpha_max();
        self.alphas[..self.alphas.len() - 1]
            .iter()
            .map(|&a| BigInt::from(amax - a))
            .product()
    }

    fn inv_alpha_pow(&self, k: i32) -> RationalValue {
        RationalValue::new(1, self.alpha_max()).pow(k)
    }

    /// `(1/α_max)^{n-1} ∏_{j<=n} (α_max - α_j)`.
    pub fn left_limit_at_fpt(&self) -> RationalValue {
        let n = self.nvars() as i32 - 1;
        self.inv_alpha_pow(n - 1) * RationalValue::from_integer(self.gap_product())
    }

    /// `limsup_e C_{e,⌊q/α_max⌋} = (limsup ε_e) (1/α_max)^n ∏ (α_max - α_j)`.
    pub fn limsup_at_fpt(&self) -> RationalValue {
        self.scaled_epsilon(self.classify().analysis.limsup)
    }

    /// The same expression with `min` over the ε cycle in place of `max`.
    /// Not a stated result: it is what the formula for
    /// `C_{e,⌊q/α_max⌋}` gives along the cycle, assuming it is attained.
    pub fn liminf_at_fpt_conjectural(&self) -> RationalValue {
        self.scaled_epsilon(self.classify().analysis.liminf)
    }

    fn scaled_epsilon(&self, eps: u64) -> RationalValue {
        let n = self.nvars() as i32 - 1;
        RationalValue::from(eps)
            * self.inv_alpha_pow(n)
            * RationalValue::from_integer(self.gap_product())
    }

    /// `ε_e = p^e mod α_max`.
    pub fn epsilon(&self, e: u32) -> u64 {
        let a = self.alpha_max() as u64;
        let mut r = 1 % a;
        for _ in 0..e {
            r = r * self.p.get() as u64 % a;
        }
        r
    }

    pub fn classify(&self) -> Classification {
        let m = self.nvars();
        let continuous = self.alphas[m - 1] == self.alphas[m - 2];
        let analysis = EpsilonAnalysis::new(self.alpha_max(), self.p);
        Classification {
            continuous,
            limit_exists_at_fpt: continuous || analysis.limit_exists,
            analysis,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `ξ_f` is continuous on `[0, 1]`.
    pub continuous: bool,
    /// `lim_e ξ_{f,e}(1/α_max)` exists.
    pub limit_exists_at_fpt: bool,
    pub analysis: EpsilonAnalysis,
}

/// Behaviour of `ε_e = p^e mod α_max` with `α_max = p^s q`, `p ∤ q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonAnalysis {
    pub s: u32,
    pub q: u64,
    /// `ε_e` is periodic for `e >= preperiod`.
    pub preperiod: u32,
    /// Multiplicative order of `p` mod `q`.
    pub period: u32,
    /// `ε_e` for `e = max(preperiod, 1) .. + period`.
    pub cycle: Vec<u64>,
    /// `ε_e` is eventually constant, i.e. `p ≡ 1 (mod q)`.
    pub limit_exists: bool,
    pub limsup: u64,
    pub liminf: u64,
}

impl EpsilonAnalysis {
    pub fn new(alpha_max: u32, p: PrimeModulus) -> Self {
        let pp = p.get() as u64;
        let mut q = alpha_max as u64;
        let mut s = 0;
        while q.is_multiple_of(pp) {
            q /= pp;
            s += 1;
        }
        let mut period = 1;
        let mut r = pp % q;
        while r != 1 % q {
            r = r * pp % q;
            period += 1;
        }
        let a = alpha_max as u64;
        let start = s.max(1);
        let mut eps = 1 % a;
        for _ in 0..start {
            eps = eps * pp % a;
        }
        let mut cycle = Vec::with_capacity(period as usize);
        for _ in 0..period {
            cycle.push(eps);
            eps = eps * pp % a;
        }
        EpsilonAnalysis {
            s,
            q,
            preperiod: s,
            period,
            limsup: *cycle.iter().max().expect("period >= 1"),
            liminf: *cycle.iter().min().expect("period >= 1"),
            cycle,
            limit_exists: pp % q == 1 % q,
        }
    }
}

/// `ξ_f(x) = Σ_k c_k x^k` on `[0, 1/α_max)`, `c_{j-1} = (-1)^{j+1} j β_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiPolynomial {
    pub coefficients: Vec<BigInt>,
    pub valid_below: RationalValue,
}

impl XiPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &RationalValue) -> RationalValue {
        horner(&self.coefficients, x.inner())
    }

    /// `d^order/dx^order ξ(x)`.
    pub fn derivative(&self, order: usize, x: &RationalValue) -> RationalValue {
        let coeffs: Vec<BigInt> = self
            .coefficients
            .iter()
            .enumerate()
            .skip(order)
            .map(|(k, c)| {
                let falling: BigInt = ((k - order + 1)..=k).map(BigInt::from).product();
                c * falling
            })
            .collect();
        horner(&coeffs, x.inner())
    }
}

fn horner(coeffs: &[BigInt], x: &BigRational) -> RationalValue {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    RationalValue::from(acc)
}

/// `|a - b| <= k / q`, exactly.
pub fn within(a: &RationalValue, b: &RationalValue, k: &BigInt, q: &BigInt) -> bool {
    let diff = (a.inner() - b.inner()).abs();
    diff * BigRational::from_integer(q.clone()) <= BigRational::from_integer(k.clone())
}

impl std::fmt::Display for MonomialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
