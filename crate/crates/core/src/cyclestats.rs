//! Counting and sampling 2-regular graphs, and the distribution of the
//! number of cyclic degree-2 vertices.
//!
//! `C_t` is the number of simple 2-regular graphs on `t` labeled vertices,
//! built from
//!
//! ```text
//! C_t = sum_{l=3}^{t} binom(t-1, l-1) (l-1)!/2 C_{t-l}
//! ```
//!
//! Exact big-integer values are kept for `t <= EXACT_CAP`. For every `t`
//! the table also holds `c_t = C_t / t!`, which satisfies
//! `c_t = (1/2t) sum_{k<=t-3} c_k` and stays well scaled in `f64`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Largest `t` with an exact entry.
pub const EXACT_CAP: usize = 300;

/// Largest `n2'` for which [`q_distribution`] uses exact arithmetic.
pub const Q_EXACT_CAP: usize = 30;

#[derive(Debug, Clone)]
pub struct CycleCountTable {
    exact: Vec<BigUint>,
    normalized: Vec<f64>,
    log: Vec<f64>,
}

impl CycleCountTable {
    pub fn new(tmax: usize) -> Self {
        let exact_max = tmax.min(EXACT_CAP);
        let mut exact: Vec<BigUint> = Vec::with_capacity(exact_max + 1);
        for t in 0..=exact_max {
            if t == 0 {
                exact.push(BigUint::one());
                continue;
            }
            let mut sum = BigUint::zero();
            // (t-1)!/(t-l)! as a running falling factorial
            let mut ff = BigUint::from(t.saturating_sub(1) * t.saturating_sub(2));
            for l in 3..=t {
                if l > 3 {
                    ff *= (t - l + 1) as u64;
                }
                sum += &ff * &exact[t - l];
            }
            exact.push(sum >> 1u32);
        }

        let mut normalized = vec![0.0; tmax + 1];
        normalized[0] = 1.0;
        let mut prefix = 0.0;
        for t in 1..=tmax {
            if t >= 3 {
                prefix += normalized[t - 3];
                normalized[t] = prefix / (2.0 * t as f64);
            }
        }
        let log = (0..=tmax)
            .map(|t| if normalized[t] > 0.0 { normalized[t].ln() + ln_factorial(t as u64) } else { f64::NEG_INFINITY })
            .collect();
        Self { exact, normalized, log }
    }

    pub fn tmax(&self) -> usize {
        self.normalized.len() - 1
    }

    /// Exact `C_t`, if `t <= min(tmax, EXACT_CAP)`.
    pub fn exact(&self, t: usize) -> Option<&BigUint> {
        self.exact.get(t)
    }

    /// `ln C_t`; negative infinity when `C_t = 0`.
    pub fn log(&self, t: usize) -> f64 {
        self.log[t]
    }

    /// `C_t / t!`.
    pub fn normalized(&self, t: usize) -> f64 {
        self.normalized[t]
    }

    fn check(&self, t: usize) -> Result<()> {
        if t > self.tmax() {
            return Err(Error::Value(format!("table holds t <= {}, asked for {t}", self.tmax())));
        }
        Ok(())
    }

    fn exact_checked(&self, t: usize) -> Result<&BigUint> {
        self.exact(t).ok_or(Error::TooLarge { n: t, cap: self.exact.len().saturating_sub(1) })
    }
}

/// `ln k!`, summed directly for small `k` and by Stirling's series above.
pub fn ln_factorial(k: u64) -> f64 {
    if k < 256 {
        return (2..=k).map(|i| (i as f64).ln()).sum();
    }
    let x = k as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
}

fn check_pair(ell: usize, t: usize) -> Result<()> {
    if ell < 3 || ell > t {
        return Err(Error::Domain(format!("need 3 <= ell <= t, got ell={ell}, t={t}")));
    }
    Ok(())
}

fn falling(from: usize, count: usize) -> BigUint {
    (0..count).fold(BigUint::one(), |acc, i| acc * BigUint::from(from - i))
}

fn rational(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

/// Exact probability that a fixed vertex lies on an `ell`-cycle of a
/// uniform 2-regular graph on `t` labeled vertices.
pub fn p_cycle(ell: usize, t: usize, table: &CycleCountTable) -> Result<BigRational> {
    check_pair(ell, t)?;
    let ct = table.exact_checked(t)?;
    if ct.is_zero() {
        return Err(Error::Domain(format!("no 2-regular graph on {t} vertices")));
    }
    let ways = falling(t - 1, ell - 1) * table.exact_checked(t - ell)?;
    Ok(rational(ways, &(ct * 2u32)))
}

/// [`p_cycle`] in floating point, valid for all `t <= tmax`.
pub fn p_cycle_f64(ell: usize, t: usize, table: &CycleCountTable) -> Result<f64> {
    check_pair(ell, t)?;
    table.check(t)?;
    if table.normalized(t) == 0.0 {
        return Err(Error::Domain(format!("no 2-regular graph on {t} vertices")));
    }
    Ok(table.normalized(t - ell) / (2.0 * t as f64 * table.normalized(t)))
}

/// Leading-order approximation `1 / (2 sqrt(t (t - ell)))`, for `ell < t`.
pub fn p_cycle_asymptotic(ell: usize, t: usize) -> f64 {
    0.5 / ((t as f64) * (t - ell) as f64).sqrt()
}

/// `ln` of the leading asymptotic `e^{-3/4} t! / sqrt(pi t)` for `C_t`.
pub fn ln_count_asymptotic(t: usize) -> f64 {
    -0.75 - 0.5 * (std::f64::consts::PI * t as f64).ln() + ln_factorial(t as u64)
}

/// Coefficient `a` of the second-order factor `(1 + a/t)` in the
/// asymptotic count.
pub const SECOND_ORDER_COEFF: f64 = -5.0 / 8.0;

/// [`ln_count_asymptotic`] with the second-order factor included.
pub fn ln_count_asymptotic_second_order(t: usize) -> f64 {
    ln_count_asymptotic(t) + (1.0 + SECOND_ORDER_COEFF / t as f64).ln()
}

/// Uniform 2-regular graph on `0..t`, as a list of cycles. Each cycle
/// starts at its smallest label.
pub fn sample_2regular<R: Rng>(t: usize, table: &CycleCountTable, rng: &mut R) -> Result<Vec<Vec<u32>>> {
    if t == 1 || t == 2 {
        return Err(Error::Domain(format!("no 2-regular graph on {t} vertices")));
    }
    table.check(t)?;
    let mut remaining: Vec<u32> = (0..t as u32).collect();
    let mut taken = vec![false; t];
    let mut cycles = Vec::new();
    while !remaining.is_empty() {
        let r = remaining.len();
        let mut u: f64 = rng.gen();
        let mut ell = r;
        for l in 3..r {
            let p = p_cycle_f64(l, r, table)?;
            if u < p {
                ell = l;
                break;
            }
            u -= p;
        }
        let mut rest = remaining[1..].to_vec();
        let (chosen, _) = rest.partial_shuffle(rng, ell - 1);
        let mut cycle = vec![remaining[0]];
        cycle.extend_from_slice(chosen);
        for &v in &cycle {
            taken[v as usize] = true;
        }
        remaining.retain(|&v| !taken[v as usize]);
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Exact `N(s, t, m') = binom(s+t, t) (s+m'-1)!/(m'-1)! C_t`: the number of
/// ways to place `s` degree-2 vertices on the kernel edges and `t` on cycles.
pub fn n_configurations(s: usize, t: usize, mprime: usize, table: &CycleCountTable) -> Result<BigUint> {
    if mprime < 1 {
        return Err(Error::Domain("m' must be at least 1".into()));
    }
    let ct = table.exact_checked(t)?;
    let binom = falling(s + t, t) / falling(t, t);
    Ok(binom * falling(s + mprime - 1, s) * ct)
}

fn ln_n_configurations(s: usize, t: usize, mprime: usize, table: &CycleCountTable) -> f64 {
    let (s, t, m) = (s as u64, t as u64, mprime as u64);
    ln_factorial(s + t) - ln_factorial(s) - ln_factorial(t) + ln_factorial(s + m - 1) - ln_factorial(m - 1)
        + table.log(t as usize)
}

/// Support of `q`: `0` and `3..=n2prime`.
fn q_support(n2prime: usize) -> impl Iterator<Item = usize> {
    std::iter::once(0).chain(3..=n2prime)
}

/// Exact `q_t` for `t` in `{0} ∪ [3, n2']`.
pub fn q_distribution_exact(n2prime: usize, mprime: usize, table: &CycleCountTable) -> Result<Vec<(usize, BigRational)>> {
    if mprime < 1 {
        return Err(Error::Domain("m' must be at least 1".into()));
    }
    let weights = q_support(n2prime)
        .map(|t| Ok((t, n_configurations(n2prime - t, t, mprime, table)?)))
        .collect::<Result<Vec<_>>>()?;
    let total: BigUint = weights.iter().map(|(_, w)| w).sum();
    Ok(weights.into_iter().map(|(t, w)| (t, rational(w, &total))).collect())
}

/// `q_t`, exact for `n2' <= Q_EXACT_CAP` and by log-sum-exp above.
pub fn q_distribution(n2prime: usize, mprime: usize, table: &CycleCountTable) -> Result<Vec<(usize, f64)>> {
    if mprime < 1 {
        return Err(Error::Domain("m' must be at least 1".into()));
    }
    if n2prime <= Q_EXACT_CAP && n2prime <= table.exact.len().saturating_sub(1) {
        return Ok(q_distribution_exact(n2prime, mprime, table)?
            .into_iter()
            .map(|(t, q)| (t, q.to_f64().unwrap_or(f64::NAN)))
            .collect());
    }
    q_distribution_log(n2prime, mprime, table)
}

/// Log-space `q_t` for any `n2' <= tmax`.
pub fn q_distribution_log(n2prime: usize, mprime: usize, table: &CycleCountTable) -> Result<Vec<(usize, f64)>> {
    if mprime < 1 {
        return Err(Error::Domain("m' must be at least 1".into()));
    }
    table.check(n2prime)?;
    let logs: Vec<(usize, f64)> =
        q_support(n2prime).map(|t| (t, ln_n_configurations(n2prime - t, t, mprime, table))).collect();
    let top = logs.iter().map(|&(_, l)| l).fold(f64::NEG_INFINITY, f64::max);
    let z: f64 = logs.iter().map(|&(_, l)| (l - top).exp()).sum();
    Ok(logs.into_iter().map(|(t, l)| (t, (l - top).exp() / z)).collect())
}

fn check_tail(t: usize, l: usize) -> Result<()> {
    if t == 1 || t == 2 || l < 3 {
        return Err(Error::Domain(format!("need t = 0 or t >= 3, and L >= 3; got t={t}, L={l}")));
    }
    Ok(())
}

/// Exact probability that a uniform 2-regular graph on `t` vertices has a
/// cycle of length at least `l`.
pub fn longest_cycle_tail_exact(t: usize, l: usize, table: &CycleCountTable) -> Result<BigRational> {
    check_tail(t, l)?;
    let ct = table.exact_checked(t)?;
    // short[k]: 2-regular graphs on k vertices with every cycle shorter than l
    let mut short: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=t {
        let mut sum = BigUint::zero();
        let mut ff = BigUint::one();
        for len in 1..l.min(k + 1) {
            if len > 1 {
                ff *= (k - len + 1) as u64;
            }
            if len >= 3 {
                sum += &ff * &short[k - len];
            }
        }
        short.push(sum >> 1u32);
    }
    Ok(BigRational::one() - rational(short[t].clone(), ct))
}

/// Floating-point [`longest_cycle_tail_exact`], valid for any `t <= tmax`.
pub fn longest_cycle_tail_f64(t: usize, l: usize, table: &CycleCountTable) -> Result<f64> {
    check_tail(t, l)?;
    table.check(t)?;
    if t == 0 {
        return Ok(0.0);
    }
    // g[k] = (short-cycle count on k vertices) / k!
    let mut g = vec![0.0; t + 1];
    g[0] = 1.0;
    let mut window = 0.0;
    for k in 1..=t {
        if k >= 3 {
            window += g[k - 3];
        }
        if k >= l {
            window -= g[k - l];
        }
        g[k] = window / (2.0 * k as f64);
    }
    Ok(1.0 - g[t] / table.normalized(t))
}

/// [`longest_cycle_tail_exact`] for `t <= EXACT_CAP`, floating point above.
pub fn longest_cycle_tail(t: usize, l: usize, table: &CycleCountTable) -> Result<f64> {
    if t < table.exact.len() {
        return Ok(longest_cycle_tail_exact(t, l, table)?.to_f64().unwrap_or(f64::NAN));
    }
    longest_cycle_tail_f64(t, l, table)
}

/// CSV report for `t`: a `C_t` comment line, then one row per `ell` with
/// `p(ell, t)` and the probability of a cycle of length at least `ell`.
pub fn report_csv(t: usize) -> Result<String> {
    if t < 3 {
        return Err(Error::Domain(format!("need t >= 3, got {t}")));
    }
    let table = CycleCountTable::new(t);
    let mut out = String::new();
    match table.exact(t) {
        Some(c) => writeln!(out, "# C_t,{c}").unwrap(),
        None => writeln!(out, "# ln C_t,{:.12e}", table.log(t)).unwrap(),
    }
    out.push_str("ell,p,tail\n");
    for ell in 3..=t {
        let p = p_cycle_f64(ell, t, &table)?;
        let tail = longest_cycle_tail(t, ell, &table)?;
        writeln!(out, "{ell},{p:.12e},{tail:.12e}").unwrap();
    }
    Ok(out)
}
