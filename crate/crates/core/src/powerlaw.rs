//! Aiello-Chung-Lu power-law degree sequences and the threshold exponent.
//!
//! For parameters `alpha` and `beta` there are `floor(e^alpha / i^beta)`
//! vertices of degree `i` for `1 <= i <= floor(e^(alpha/beta))`. The sign of
//! `sum i(i-2) n_i` flips at the root `beta_0` of
//! `zeta(beta - 2) = 2 zeta(beta - 1)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};

/// Default cap on the number of vertices [`acl_sequence`] may produce.
pub const DEFAULT_VERTEX_BUDGET: u64 = 10_000_000;

/// Bisection bracket for [`beta0`].
pub const BETA0_BRACKET: (f64, f64) = (3.05, 3.95);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AclParams {
    pub alpha: f64,
    pub beta: f64,
}

impl AclParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() || alpha < 0.0 || beta <= 0.0 {
            return Err(Error::Value(format!("need finite alpha >= 0 and beta > 0, got alpha={alpha}, beta={beta}")));
        }
        Ok(Self { alpha, beta })
    }

    /// Maximum degree `floor(e^(alpha/beta))`.
    pub fn max_degree(&self) -> u64 {
        // largest i with beta ln i <= alpha, tolerant of rounding at exact powers
        let mut d = robust_floor((self.alpha / self.beta).exp()).max(1.0) as u64;
        while d > 1 && self.beta * (d as f64).ln() > self.alpha + 1e-12 * self.alpha.max(1.0) {
            d -= 1;
        }
        while self.beta * ((d + 1) as f64).ln() <= self.alpha + 1e-12 * self.alpha.max(1.0) {
            d += 1;
        }
        d
    }

    /// The literal count `floor(e^alpha i^-beta)`.
    pub fn count(&self, i: u64) -> u64 {
        robust_floor((self.alpha - self.beta * (i as f64).ln()).exp()) as u64
    }
}

/// `floor`, except that values within `1e-9` (relative) of an integer round
/// to it.
fn robust_floor(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AclSequence {
    pub params: AclParams,
    pub sequence: DegreeSequence,
    /// True if one degree-1 vertex was appended to make the degree sum even.
    pub parity_fixed: bool,
}

impl AclSequence {
    /// The counts before the parity fix.
    pub fn literal_counts(&self) -> BTreeMap<u32, u64> {
        let mut c = self.sequence.counts().clone();
        if self.parity_fixed {
            let e = c.get_mut(&1).expect("parity fix adds a degree-1 vertex");
            *e -= 1;
            if *e == 0 {
                c.remove(&1);
            }
        }
        c
    }
}

/// [`acl_sequence_with_budget`] with [`DEFAULT_VERTEX_BUDGET`].
pub fn acl_sequence(p: AclParams) -> Result<AclSequence> {
    acl_sequence_with_budget(p, DEFAULT_VERTEX_BUDGET)
}

pub fn acl_sequence_with_budget(p: AclParams, budget: u64) -> Result<AclSequence> {
    let p = AclParams::new(p.alpha, p.beta)?;
    let top = (p.alpha / p.beta).exp();
    if top > budget as f64 || p.alpha.exp() > budget as f64 {
        return Err(Error::Overflow { requested: top.max(p.alpha.exp()), budget });
    }
    let mut counts = BTreeMap::new();
    let mut n: u64 = 0;
    let mut odd = false;
    for i in 1..=p.max_degree() {
        let c = p.count(i);
        if c == 0 {
            continue;
        }
        n += c;
        if n > budget {
            return Err(Error::Overflow { requested: n as f64, budget });
        }
        odd ^= (i % 2 == 1) && (c % 2 == 1);
        counts.insert(i as u32, c);
    }
    if odd {
        *counts.entry(1).or_insert(0) += 1;
    }
    Ok(AclSequence { params: p, sequence: DegreeSequence::from_counts(counts)?, parity_fixed: odd })
}

// Bernoulli numbers B_2 .. B_14.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Riemann zeta for real `x > 1`, to absolute error `tol`.
///
/// Uses a partial sum followed by the Euler-Maclaurin tail, doubling the
/// cut-off until the last correction term is below `tol`.
pub fn zeta(x: f64, tol: f64) -> Result<f64> {
    if x.is_nan() || x <= 1.0 || x.is_infinite() {
        return Err(Error::Domain(format!("zeta needs x > 1, got {x}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Value(format!("tol must be positive, got {tol}")));
    }
    let mut n: u64 = 16;
    loop {
        let (value, last) = zeta_em(x, n);
        if last.abs() < tol * 0.1 || n > 1 << 24 {
            return Ok(value);
        }
        n *= 2;
    }
}

/// Euler-Maclaurin evaluation with cut-off `n`; returns the value and the
/// magnitude of the last correction term.
fn zeta_em(x: f64, n: u64) -> (f64, f64) {
    let nf = n as f64;
    let mut head = 0.0;
    for i in (1..n).rev() {
        head += (i as f64).powf(-x);
    }
    let mut tail = nf.powf(1.0 - x) / (x - 1.0) + 0.5 * nf.powf(-x);
    // rising product x (x+1) ... (x+2k-2) / (2k)!  times  n^(-x-2k+1)
    let mut coeff = x / 2.0;
    let mut power = nf.powf(-x - 1.0);
    let mut last = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k as f64 + 1.0;
        if k > 1.0 {
            coeff *= (x + 2.0 * k - 3.0) * (x + 2.0 * k - 2.0) / ((2.0 * k - 1.0) * (2.0 * k));
            power /= nf * nf;
        }
        last = b * coeff * power;
        tail += last;
    }
    (head + tail, last)
}

/// `zeta(beta - 2) - 2 zeta(beta - 1)`.
pub fn threshold_function(beta: f64, tol: f64) -> Result<f64> {
    Ok(zeta(beta - 2.0, tol)? - 2.0 * zeta(beta - 1.0, tol)?)
}

/// Root of [`threshold_function`] by bisection on [`BETA0_BRACKET`].
pub fn beta0(tol: f64) -> Result<f64> {
    beta0_in(BETA0_BRACKET.0, BETA0_BRACKET.1, tol)
}

pub fn beta0_in(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Value(format!("tol must be positive, got {tol}")));
    }
    let ztol = 1e-13;
    let (mut a, mut b) = (lo, hi);
    let fa = threshold_function(a, ztol)?;
    let fb = threshold_function(b, ztol)?;
    if fa.signum() == fb.signum() {
        return Err(Error::ConvergenceFailure { lo, hi });
    }
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = threshold_function(mid, ztol)?;
        if fm.signum() == fa.signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
