//! Degree sequences and the invariants that decide whether a uniformly random
//! simple graph with those degrees has a giant component.
//!
//! Degrees are held in count form (`degree -> multiplicity`). Whenever a
//! labeled view is needed, vertex `i` (0-based) receives the `i`-th smallest
//! degree, see [`DegreeSequence::to_list`].

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default well-behaved threshold on `M`.
pub const DEFAULT_LAMBDA: u64 = 30;
/// Default lower-bounded fraction for [`DegreeSequence::classify`].
pub const DEFAULT_EPS: f64 = 0.1;
/// Default upper-bounded fraction for [`DegreeSequence::classify`].
pub const DEFAULT_DELTA: f64 = 0.01;

/// A multiset of positive vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    counts: BTreeMap<u32, u64>,
    n: u64,
    degree_sum: u64,
}

impl DegreeSequence {
    /// Builds a sequence from `(degree, multiplicity)` pairs. Pairs with zero
    /// multiplicity are dropped; repeated degrees accumulate.
    pub fn from_counts<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u64)>,
    {
        let mut counts = BTreeMap::new();
        for (degree, mult) in pairs {
            if mult == 0 {
                continue;
            }
            if degree == 0 {
                return Err(Error::Validation("degree 0 is not allowed".into()));
            }
            *counts.entry(degree).or_insert(0) += mult;
        }
        let n = counts.values().sum();
        let degree_sum = counts.iter().map(|(&d, &c)| d as u64 * c).sum();
        Ok(Self { counts, n, degree_sum })
    }

    /// Builds a sequence from one degree per vertex.
    pub fn from_degrees(degrees: &[u32]) -> Result<Self> {
        Self::from_counts(degrees.iter().map(|&d| (d, 1)))
    }

    /// Parses either list form (one degree per line) or count form (a
    /// `#counts` header followed by `degree<TAB>multiplicity` lines).
    /// Blank lines are ignored, as are `#` comment lines in list form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();

        let counts_form = matches!(lines.peek(), Some((_, l)) if *l == "#counts");
        let mut pairs = Vec::new();
        if counts_form {
            lines.next();
            for (line, l) in lines {
                let mut fields = l.split_whitespace();
                let (Some(d), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected `degree<TAB>count`, found {l:?}"),
                    });
                };
                let d = parse_degree(d, line)?;
                let c: u64 = c.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("bad multiplicity {c:?}"),
                })?;
                pairs.push((d, c));
            }
        } else {
            for (line, l) in lines {
                if l.starts_with('#') {
                    continue;
                }
                pairs.push((parse_degree(l, line)?, 1));
            }
        }
        let seq = Self::from_counts(pairs)?;
        if seq.n == 0 {
            return Err(Error::Validation("empty degree sequence".into()));
        }
        Ok(seq)
    }

    /// Count-form text accepted by [`DegreeSequence::parse`].
    pub fn to_counts_text(&self) -> String {
        let mut out = String::from("#counts\n");
        for (d, c) in &self.counts {
            out.push_str(&format!("{d}\t{c}\n"));
        }
        out
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn degree_sum(&self) -> u64 {
        self.degree_sum
    }

    pub fn count(&self, degree: u32) -> u64 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of vertices of degree 2.
    pub fn n2(&self) -> u64 {
        self.count(2)
    }

    /// `M`: total degree over vertices whose degree is not 2.
    pub fn kernel_mass(&self) -> u64 {
        self.degree_sum - 2 * self.n2()
    }

    pub fn sum_of_squares(&self) -> u128 {
        self.counts
            .iter()
            .map(|(&d, &c)| (d as u128) * (d as u128) * c as u128)
            .sum()
    }

    /// Degrees in ascending order; position `i` is the degree of vertex `i`.
    pub fn to_list(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        for (&d, &c) in &self.counts {
            out.extend(std::iter::repeat(d).take(c as usize));
        }
        out
    }

    /// The same multiset with every degree-2 entry removed.
    pub fn without_twos(&self) -> DegreeSequence {
        Self::from_counts(self.counts.iter().filter(|(&d, _)| d != 2).map(|(&d, &c)| (d, c)))
            .expect("subset of a valid sequence")
    }

    /// True iff some simple graph has exactly these degrees (Erdős–Gallai).
    pub fn is_feasible(&self) -> bool {
        if self.degree_sum % 2 == 1 {
            return false;
        }
        if self.max_degree() as u64 >= self.n {
            return false;
        }
        let desc: Vec<u64> = self.to_list().into_iter().rev().map(u64::from).collect();
        let n = desc.len();
        let max = self.max_degree() as usize;
        // at_least[k] = #{i : d_i >= k}
        let mut at_least = vec![0u64; max + 2];
        for (&d, &c) in &self.counts {
            at_least[d as usize] += c;
        }
        for k in (0..=max).rev() {
            at_least[k] += at_least[k + 1];
        }
        let mut prefix = vec![0u64; n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i] + desc[i];
        }

        // sum_min = sum over all i of min(d_i, k)
        let mut sum_min = 0u64;
        for k in 1..=n {
            let ku = k as u64;
            sum_min += if k <= max { at_least[k] } else { 0 };
            let big = if k <= max { at_least[k] } else { 0 };
            // contribution of the k largest to sum_min
            let head_big = big.min(ku);
            let mut head = ku * head_big;
            if head_big < ku {
                head += prefix[k] - prefix[head_big as usize];
            }
            let tail = sum_min - head;
            if prefix[k] > ku * (ku - 1) + tail {
                return false;
            }
        }
        true
    }

    /// Computes `jD`, `R`, `M` and the Molloy–Reed statistics.
    pub fn invariants(&self, lambda_thresh: u64) -> InvariantReport {
        let m = self.kernel_mass();
        let mut prefix: i128 = 0;
        let mut seen: u64 = 0;
        let mut crossing = None;
        for (&d, &c) in &self.counts {
            let w = d as i128 * (d as i128 - 2);
            if w > 0 {
                // smallest k in 1..=c with prefix + k*w > 0
                let k = (-prefix).div_euclid(w) + 1;
                if k <= c as i128 {
                    crossing = Some((seen + k as u64, d, k as u64));
                    break;
                }
            }
            prefix += w * c as i128;
            seen += c;
        }
        let (j_d, r) = match crossing {
            Some((j, d, k)) => {
                let rest_of_block = d as u64 * (self.count(d) - k + 1);
                let above: u64 = self
                    .counts
                    .range(d + 1..)
                    .map(|(&e, &c)| e as u64 * c)
                    .sum();
                (j, rest_of_block + above)
            }
            None => (self.n, self.max_degree() as u64),
        };
        let q_num: i128 = self
            .counts
            .iter()
            .map(|(&d, &c)| d as i128 * (d as i128 - 2) * c as i128)
            .sum();
        InvariantReport {
            n: self.n,
            degree_sum: self.degree_sum,
            m,
            r,
            j_d,
            ratio_hat: Ratio::new(q_num, self.degree_sum as i128),
            q_hat: Ratio::new(q_num, self.n as i128),
            well_behaved: m >= lambda_thresh,
            lambda_thresh,
        }
    }

    /// Giant / no-giant verdict from `R` versus `M`.
    pub fn classify(&self, eps: f64, delta: f64, lambda_thresh: u64) -> Result<Classification> {
        if !(0.0 < delta && delta < eps && eps <= 1.0) {
            return Err(Error::Value(format!(
                "need 0 < delta < eps <= 1, got eps={eps}, delta={delta}"
            )));
        }
        if !self.is_feasible() {
            return Err(Error::InfeasibleSequence);
        }
        let inv = self.invariants(lambda_thresh);
        let (r, m) = (inv.r as f64, inv.m as f64);
        let verdict = if !inv.well_behaved {
            Verdict::NotWellBehaved
        } else if r >= eps * m {
            Verdict::GiantWhp
        } else if r <= delta * m {
            Verdict::NoGiantWhp
        } else {
            Verdict::Indeterminate
        };
        Ok(Classification {
            verdict,
            epsilon_used: eps,
            delta_used: delta,
            lambda_thresh,
        })
    }

    /// Evaluates `R >= M - 2(n - n2)`.
    pub fn r_lower_bound_check(&self) -> RBoundCheck {
        let inv = self.invariants(0);
        let bound = inv.m as i128 - 2 * (self.n - self.n2()) as i128;
        RBoundCheck {
            r: inv.r,
            bound,
            holds: inv.r as i128 >= bound,
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

fn parse_degree(s: &str, line: usize) -> Result<u32> {
    let v: i64 = s.parse().map_err(|_| Error::Parse {
        line,
        message: format!("not an integer: {s:?}"),
    })?;
    if v <= 0 {
        return Err(Error::Validation(format!("line {line}: degree {v} must be positive")));
    }
    u32::try_from(v).map_err(|_| Error::Parse {
        line,
        message: format!("degree {v} out of range"),
    })
}

/// Invariants of a degree sequence. Serializes with the keys
/// `n, degree_sum, M, R, jD, ratio_hat, q_hat, well_behaved`; the two ratios
/// are written as exact `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub n: u64,
    pub degree_sum: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "R")]
    pub r: u64,
    /// 1-based index into the ascending degree list.
    #[serde(rename = "jD")]
    pub j_d: u64,
    /// `sum d(d-2) / sum d`
    #[serde(serialize_with = "ser_ratio")]
    pub ratio_hat: Ratio<i128>,
    /// `sum d(d-2) / n`
    #[serde(serialize_with = "ser_ratio")]
    pub q_hat: Ratio<i128>,
    pub well_behaved: bool,
    #[serde(skip)]
    pub lambda_thresh: u64,
}

impl InvariantReport {
    pub fn ratio_hat_f64(&self) -> f64 {
        ratio_f64(&self.ratio_hat)
    }

    pub fn q_hat_f64(&self) -> f64 {
        ratio_f64(&self.q_hat)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn ratio_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn ser_ratio<S: Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    GiantWhp,
    NoGiantWhp,
    NotWellBehaved,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::GiantWhp => "GiantWHP",
            Verdict::NoGiantWhp => "NoGiantWHP",
            Verdict::NotWellBehaved => "NotWellBehaved",
            Verdict::Indeterminate => "Indeterminate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub epsilon_used: f64,
    pub delta_used: f64,
    pub lambda_thresh: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RBoundCheck {
    #[serde(rename = "R")]
    pub r: u64,
    pub bound: i128,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Claim0Check {
    pub lhs: i128,
    pub rhs: i128,
    pub holds: bool,
}

/// For positive integers `a_1..a_j`, none equal to 2, with `sum a >= 2j - ell`,
/// checks `sum a(a-2) >= j - 2 ell`.
pub fn check_claim0(a: &[u64], ell: u64) -> Result<Claim0Check> {
    if let Some(&bad) = a.iter().find(|&&x| x == 0 || x == 2) {
        return Err(Error::Value(format!("entries must be positive and not 2, found {bad}")));
    }
    let j = a.len() as i128;
    let sum: i128 = a.iter().map(|&x| x as i128).sum();
    if sum < 2 * j - ell as i128 {
        return Err(Error::PreconditionViolated(format!(
            "sum {sum} < 2*{j} - {ell}"
        )));
    }
    let lhs: i128 = a.iter().map(|&x| x as i128 * (x as i128 - 2)).sum();
    let rhs = j - 2 * ell as i128;
    Ok(Claim0Check { lhs, rhs, holds: lhs >= rhs })
}
