//! Inputs shared by the benchmarks.

use fxi_core::{parse_polynomial, Polynomial, PrimeModulus};

/// `(label, f, nvars, p, e)` for the chain benchmarks.
pub const CASES: &[(&str, &str, usize, u64, u32)] = &[
    ("xy_p2_e6", "x*y", 2, 2, 6),
    ("cusp_p2_e6", "x^2 + y^3", 2, 2, 6),
    ("cusp_p3_e4", "x^2 + y^3", 2, 3, 4),
    ("cusp_p5_e3", "x^2 + y^3", 2, 5, 3),
    ("fermat_p7_e2", "x^3 + y^3", 2, 7, 2),
    ("bp3_p2_e4", "x^2 + y^3 + z^5", 3, 2, 4),
];

pub fn polynomial(text: &str, nvars: usize, p: u64) -> Polynomial {
    parse_polynomial(text, nvars, PrimeModulus::new(p).expect("prime")).expect("valid input")
}
