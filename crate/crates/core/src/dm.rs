//! Ball 5-tuples `μ` and their hypergeometric periods.
//!
//! For `μ = (n₁, …, n₅)/d` the periods are
//! `ω_ij = ∫_{xᵢ}^{xⱼ} ∏ₖ (z − xₖ)^{−nₖ/d} dz` along the straight segment.
//! The integrality condition INT is the one of Deligne and Mostow: for every
//! pair with `μᵢ + μⱼ < 1`, `(1 − μᵢ − μⱼ)⁻¹` is an integer.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::num::NonZeroUsize;
use std::str::FromStr;
use std::sync::OnceLock;

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DmError {
    #[error("expected 5 weights, got {0}")]
    Count(usize),
    #[error("weight {index} = {value} is not strictly between 0 and 1")]
    Range { index: usize, value: Rational64 },
    #[error("weights sum to {0}, not 2")]
    Sum(Rational64),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("denominator bound {0} is outside 1..=24")]
    Bound(i64),
    #[error("points {0} and {1} are closer than the separation bound")]
    Separation(usize, usize),
    #[error("segment from x{0} to x{1} passes within the separation bound of x{2}")]
    Segment(usize, usize, usize),
    #[error("indices must be distinct and below 5, got ({0}, {1})")]
    Index(usize, usize),
    #[error("quadrature did not converge on x{0} → x{1} (estimate {2:e})")]
    Convergence(usize, usize, f64),
    #[error("branch continuation failed for x{0} → x{1} along the deformation")]
    Continuity(usize, usize),
    #[error("at least one sample is needed")]
    NoSamples,
}

/// Minimal distance between points, and between a point and a segment.
pub const SEPARATION: f64 = 1e-6;

/// Relative accuracy target of [`period`].
pub const TARGET: f64 = 1e-8;

/// Relative singular-value threshold of [`period_rank`].
pub const RANK_THRESHOLD: f64 = 1e-6;

/// A validated tuple with `μᵢ = nᵢ/d`, `d` the least common denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MuTuple {
    mu: [Rational64; 5],
    d: i64,
    n: [i64; 5],
}

pub fn validate_mu(mu: &[Rational64]) -> Result<MuTuple, DmError> {
    let mu: [Rational64; 5] = mu.try_into().map_err(|_| DmError::Count(mu.len()))?;
    for (index, &value) in mu.iter().enumerate() {
        if value <= Rational64::zero() || value >= Rational64::one() {
            return Err(DmError::Range { index, value });
        }
    }
    let sum: Rational64 = mu.iter().sum();
    if sum != Rational64::from_integer(2) {
        return Err(DmError::Sum(sum));
    }
    let d = mu.iter().fold(1i64, |acc, m| acc.lcm(m.denom()));
    let n = mu.map(|m| (m * d).to_integer());
    Ok(MuTuple { mu, d, n })
}

/// Five comma- or space-separated rationals `p/q`.
pub fn parse_mu(s: &str) -> Result<MuTuple, DmError> {
    let vals = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Rational64>().map_err(|_| DmError::Parse(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    validate_mu(&vals)
}

impl MuTuple {
    pub fn mu(&self) -> &[Rational64; 5] {
        &self.mu
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> &[i64; 5] {
        &self.n
    }

    /// Exponents `nₖ/d` as floats.
    pub fn exponents(&self) -> [f64; 5] {
        self.n.map(|n| n as f64 / self.d as f64)
    }

    /// Sorted ascending.
    pub fn canonical(&self) -> Self {
        let mut mu = self.mu;
        mu.sort();
        validate_mu(&mu).expect("permutation of a valid tuple")
    }
}

impl fmt::Display for MuTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.mu.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MuTuple {
    type Err = DmError;

    fn from_str(s: &str) -> Result<Self, DmError> {
        parse_mu(s.trim().trim_start_matches('(').trim_end_matches(')'))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    /// `μᵢ + μⱼ ≥ 1`.
    Exempt,
    /// `(1 − μᵢ − μⱼ)⁻¹` and whether it satisfies the condition.
    Checked { inverse: Rational64, pass: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub sum: Rational64,
    pub status: PairStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntCertificate {
    pub holds: bool,
    pub pairs: Vec<PairCheck>,
}

/// Which integrality condition to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Condition {
    /// `(1 − μᵢ − μⱼ)⁻¹ ∈ Z` for every non-exempt pair.
    #[default]
    Int,
    /// As `Int`, but pairs with `μᵢ = μⱼ` only need `(1 − μᵢ − μⱼ)⁻¹ ∈ ½Z`.
    SigmaInt,
}

pub fn check_condition(mu: &MuTuple, condition: Condition) -> IntCertificate {
    let mut pairs = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let sum = mu.mu[i] + mu.mu[j];
            let status = if sum >= Rational64::one() {
                PairStatus::Exempt
            } else {
                let inverse = (Rational64::one() - sum).recip();
                let pass = match condition {
                    Condition::SigmaInt if mu.mu[i] == mu.mu[j] => (inverse * 2).is_integer(),
                    _ => inverse.is_integer(),
                };
                PairStatus::Checked { inverse, pass }
            };
            pairs.push(PairCheck { i, j, sum, status });
        }
    }
    let holds = pairs.iter().all(|p| !matches!(p.status, PairStatus::Checked { pass: false, .. }));
    IntCertificate { holds, pairs }
}

pub fn int_condition(mu: &MuTuple) -> IntCertificate {
    check_condition(mu, Condition::Int)
}

pub fn sigma_int(mu: &MuTuple) -> IntCertificate {
    check_condition(mu, Condition::SigmaInt)
}

/// All canonical tuples with least common denominator at most `max_den`
/// satisfying the condition, ordered by `(d, n)`.
pub fn enumerate_tuples(max_den: i64, condition: Condition) -> Result<Vec<MuTuple>, DmError> {
    if !(1..=24).contains(&max_den) {
        return Err(DmError::Bound(max_den));
    }
    fn rec(d: i64, start: i64, remaining: i64, left: usize, acc: &mut Vec<i64>, out: &mut Vec<[i64; 5]>) {
        if left == 0 {
            if remaining == 0 {
                out.push(acc.clone().try_into().unwrap());
            }
            return;
        }
        for n in start..d {
            // the remaining entries are at least n each
            if n * left as i64 > remaining {
                break;
            }
            acc.push(n);
            rec(d, n, remaining - n, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for d in 2..=max_den {
        let mut raw = Vec::new();
        rec(d, 1, 2 * d, 5, &mut Vec::new(), &mut raw);
        for n in raw {
            let mu = validate_mu(&n.map(|x| Rational64::new(x, d))).expect("constructed valid");
            // keep each tuple once, at its least denominator
            if mu.d == d && check_condition(&mu, condition).holds {
                out.push(mu);
            }
        }
    }
    Ok(out)
}

pub fn enumerate_int(max_den: i64) -> Result<Vec<MuTuple>, DmError> {
    enumerate_tuples(max_den, Condition::Int)
}

/// Five distinct points of the affine line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointConfig {
    x: [Complex64; 5],
}

impl PointConfig {
    pub fn new(x: [Complex64; 5]) -> Result<Self, DmError> {
        for i in 0..5 {
            for j in i + 1..5 {
                if (x[i] - x[j]).norm() <= SEPARATION {
                    return Err(DmError::Separation(i, j));
                }
            }
        }
        Ok(Self { x })
    }

    pub fn points(&self) -> &[Complex64; 5] {
        &self.x
    }

    /// `z ↦ az + b` applied to every point.
    pub fn affine(&self, a: Complex64, b: Complex64) -> Result<Self, DmError> {
        Self::new(self.x.map(|z| a * z + b))
    }

    /// Uniform points in the unit disc with every pairwise distance, and
    /// every distance from a point to a segment between two others, at least
    /// `min_sep`.
    pub fn random(rng: &mut impl Rng, min_sep: f64) -> Self {
        loop {
            let x: [Complex64; 5] = std::array::from_fn(|_| {
                let r: f64 = rng.gen::<f64>().sqrt();
                Complex64::from_polar(r, TAU * rng.gen::<f64>())
            });
            let cfg = Self { x };
            if cfg.clearance() >= min_sep {
                return cfg;
            }
        }
    }

    /// Smallest distance from a point to a segment joining two other points
    /// (or to another point).
    pub fn clearance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, j) in pairs() {
            best = best.min((self.x[i] - self.x[j]).norm());
            for k in (0..5).filter(|&k| k != i && k != j) {
                best = best.min(segment_distance(self.x[k], self.x[i], self.x[j]));
            }
        }
        best
    }
}

/// Comma-separated `re+imI` literals.
pub fn parse_points(s: &str) -> Result<PointConfig, DmError> {
    let vals =
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    let x: [Complex64; 5] = vals.try_into().map_err(|v: Vec<Complex64>| DmError::Count(v.len()))?;
    PointConfig::new(x)
}

/// `re`, `imI`, `re+imI`, `re-imI`; `i` is accepted for `I`.
pub fn parse_complex(t: &str) -> Result<Complex64, DmError> {
    let bad = || DmError::Parse(t.to_string());
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('I').or_else(|| s.strip_suffix('i')) else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

pub fn format_complex(z: Complex64) -> String {
    format!("{:.12e}{:+.12e}I", z.re, z.im)
}

/// Arguments fixing the branch of every factor on one segment.
///
/// `args[k]` is the argument of `z − xₖ` at the segment midpoint for
/// `k ∉ {i, j}`; for the endpoints it is the argument of `xⱼ − xᵢ`
/// (slot `i`) and of `xᵢ − xⱼ` (slot `j`), constant along the segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub args: [f64; 5],
}

/// Principal argument in `(−π, π]`, independent of the sign of a zero
/// imaginary part.
fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

/// `θ + 2πm` closest to `reference`.
fn nearest_lift(theta: f64, reference: f64) -> f64 {
    theta + TAU * ((reference - theta) / TAU).round()
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let t = (((p - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn check_pair(i: usize, j: usize) -> Result<(), DmError> {
    if i >= 5 || j >= 5 || i == j {
        return Err(DmError::Index(i, j));
    }
    Ok(())
}

fn check_segment(x: &PointConfig, i: usize, j: usize) -> Result<(), DmError> {
    for k in (0..5).filter(|&k| k != i && k != j) {
        if segment_distance(x.x[k], x.x[i], x.x[j]) <= SEPARATION {
            return Err(DmError::Segment(i, j, k));
        }
    }
    Ok(())
}

/// Principal determinations at the midpoint, or the lifts nearest to `base`.
pub fn branch_for(x: &PointConfig, i: usize, j: usize, base: Option<&Branch>) -> Result<Branch, DmError> {
    check_pair(i, j)?;
    let mid = (x.x[i] + x.x[j]) * 0.5;
    let delta = x.x[j] - x.x[i];
    let mut args = [0.0; 5];
    for (k, a) in args.iter_mut().enumerate() {
        let principal = if k == i {
            principal_arg(delta)
        } else if k == j {
            principal_arg(-delta)
        } else {
            principal_arg(mid - x.x[k])
        };
        *a = match base {
            Some(b) => nearest_lift(principal, b.args[k]),
            None => principal,
        };
    }
    Ok(Branch { args })
}

/// A period with its quadrature error estimate and the branch used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodValue {
    pub value: Complex64,
    pub error: f64,
    pub branch: Branch,
}

const NODES: usize = 24;

struct Rules {
    legendre: [Vec<(f64, f64)>; 2],
}

fn legendre_rules() -> &'static Rules {
    static RULES: OnceLock<Rules> = OnceLock::new();
    RULES.get_or_init(|| {
        let rule = |n: usize| GaussLegendre::new(NonZeroUsize::new(n).unwrap()).as_node_weight_pairs().to_vec();
        Rules { legendre: [rule(NODES), rule(2 * NODES)] }
    })
}

/// Nodes and weights for `∫₋₁¹ (1 + x)^β g(x) dx`.
fn jacobi_rule(beta: f64, n: usize) -> Vec<(f64, f64)> {
    if beta == 0.0 {
        return GaussLegendre::new(NonZeroUsize::new(n).unwrap()).as_node_weight_pairs().to_vec();
    }
    GaussJacobi::new(
        NonZeroUsize::new(n).unwrap(),
        FiniteAboveNegOneF64::new(0.0).unwrap(),
        FiniteAboveNegOneF64::new(beta).expect("exponent above -1"),
    )
    .as_node_weight_pairs()
    .to_vec()
}

/// `∫₀¹ t^{−a} (1 − t)^{−b} g(t) dt` for smooth `g` and `a, b < 1`.
///
/// Composite rule: endpoint panels carry the singular weight exactly through
/// Gauss–Jacobi nodes, interior panels use Gauss–Legendre; a panel is split
/// until the `n`- and `2n`-node values agree to `tol` relative to the running
/// total. Returns the value and the summed panel error estimate.
pub fn singular_integral(a: f64, b: f64, g: &(dyn Fn(f64) -> Complex64 + Sync), tol: f64) -> Option<(Complex64, f64)> {
    let left = [jacobi_rule(-a, NODES), jacobi_rule(-a, 2 * NODES)];
    let right = [jacobi_rule(-b, NODES), jacobi_rule(-b, 2 * NODES)];
    let leg = &legendre_rules().legendre;

    #[derive(Clone, Copy)]
    enum Panel {
        Left(f64),
        Right(f64),
        Mid(f64, f64),
    }

    // t^{−a}(1−t)^{−b} g(t) on each panel type
    let eval = |p: Panel, level: usize| -> Complex64 {
        match p {
            Panel::Left(h) => {
                // t = h(1+x)/2, t^{−a} = (h/2)^{−a}(1+x)^{−a}
                let scale = (h / 2.0).powf(1.0 - a);
                left[level]
                    .iter()
                    .map(|&(x, w)| {
                        let t = h * (1.0 + x) / 2.0;
                        g(t) * (w * (1.0 - t).powf(-b))
                    })
                    .sum::<Complex64>()
                    * scale
            }
            Panel::Right(h) => {
                // s = 1 − t = h(1+x)/2
                let scale = (h / 2.0).powf(1.0 - b);
                right[level]
                    .iter()
                    .map(|&(x, w)| {
                        let s = h * (1.0 + x) / 2.0;
                        let t = 1.0 - s;
                        g(t) * (w * t.powf(-a))
                    })
                    .sum::<Complex64>()
                    * scale
            }
            Panel::Mid(lo, hi) => {
                let half = (hi - lo) / 2.0;
                leg[level]
                    .iter()
                    .map(|&(x, w)| {
                        let t = lo + half * (1.0 + x);
                        g(t) * (w * t.powf(-a) * (1.0 - t).powf(-b))
                    })
                    .sum::<Complex64>()
                    * half
            }
        }
    };
    let split = |p: Panel| -> [Panel; 2] {
        match p {
            Panel::Left(h) => [Panel::Left(h / 2.0), Panel::Mid(h / 2.0, h)],
            Panel::Right(h) => [Panel::Mid(1.0 - h, 1.0 - h / 2.0), Panel::Right(h / 2.0)],
            Panel::Mid(lo, hi) => [Panel::Mid(lo, (lo + hi) / 2.0), Panel::Mid((lo + hi) / 2.0, hi)],
        }
    };

    let initial = [Panel::Left(0.5), Panel::Right(0.5)];
    let rough: Complex64 = initial.iter().map(|&p| eval(p, 1)).sum();
    let scale = rough.norm().max(f64::MIN_POSITIVE);
    let mut stack: Vec<(Panel, u32)> = initial.iter().rev().map(|&p| (p, 0)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    while let Some((p, depth)) = stack.pop() {
        let (coarse, fine) = (eval(p, 0), eval(p, 1));
        let diff = (fine - coarse).norm();
        if diff <= tol * scale * 1e-2 || depth >= 60 {
            if depth >= 60 && diff > tol * scale {
                return None;
            }
            total += fine;
            error += diff;
        } else {
            let [p1, p2] = split(p);
            stack.push((p2, depth + 1));
            stack.push((p1, depth + 1));
        }
    }
    Some((total, error))
}

/// `ω_ij` with the branch fixed by `base` (principal at the midpoint when
/// absent).
pub fn period_with_branch(
    x: &PointConfig,
    i: usize,
    j: usize,
    mu: &MuTuple,
    base: Option<&Branch>,
) -> Result<PeriodValue, DmError> {
    check_pair(i, j)?;
    check_segment(x, i, j)?;
    let branch = branch_for(x, i, j, base)?;
    let e = mu.exponents();
    let (xi, xj) = (x.x[i], x.x[j]);
    let delta = xj - xi;
    let mid = (xi + xj) * 0.5;
    let others: Vec<usize> = (0..5).filter(|&k| k != i && k != j).collect();

    // (z − xₖ)^{−eₖ} continued from the midpoint argument
    let g = |t: f64| -> Complex64 {
        let z = xi + delta * t;
        let mut log = Complex64::new(0.0, 0.0);
        for &k in &others {
            let w = z - x.x[k];
            let rel = (w / (mid - x.x[k])).arg();
            log += Complex64::new(w.norm().ln(), branch.args[k] + rel) * (-e[k]);
        }
        log.exp()
    };
    let (integral, err) = singular_integral(e[i], e[j], &g, TARGET).ok_or(DmError::Convergence(i, j, f64::NAN))?;

    // dz = Δ dt, (z − xᵢ)^{−eᵢ} = Δ^{−eᵢ} t^{−eᵢ}, (z − xⱼ)^{−eⱼ} = (−Δ)^{−eⱼ} (1 − t)^{−eⱼ}
    let r = delta.norm();
    let prefactor = delta
        * Complex64::from_polar(r.powf(-e[i]), -e[i] * branch.args[i])
        * Complex64::from_polar(r.powf(-e[j]), -e[j] * branch.args[j]);
    let value = prefactor * integral;
    let error = prefactor.norm() * err;
    if !value.re.is_finite() || !value.im.is_finite() || error > 10.0 * TARGET * value.norm().max(f64::MIN_POSITIVE) {
        return Err(DmError::Convergence(i, j, error / value.norm()));
    }
    Ok(PeriodValue { value, error, branch })
}

pub fn period(x: &PointConfig, i: usize, j: usize, mu: &MuTuple) -> Result<Complex64, DmError> {
    Ok(period_with_branch(x, i, j, mu, None)?.value)
}

/// The ten pairs `i < j` in lexicographic order.
pub fn pairs() -> Vec<(usize, usize)> {
    (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect()
}

/// Which side of the line through `a`, `b` the point `p` lies on, and where
/// it projects (`0` at `a`, `1` at `b`).
fn side(p: Complex64, a: Complex64, b: Complex64) -> (f64, f64) {
    let ab = b - a;
    let rel = (p - a) * ab.conj();
    (rel.im, rel.re / ab.norm_sqr())
}

/// Branches continued along the straight deformation from `from` to `to`.
///
/// The straight-segment integral is the analytic continuation only while no
/// point crosses a segment; a crossing is reported as a continuity failure.
pub fn continue_branches(
    from: &PointConfig,
    to: &PointConfig,
    base: &[Branch],
    steps: usize,
) -> Result<Vec<Branch>, DmError> {
    let mut current = base.to_vec();
    let mut prev = *from;
    for s in 1..=steps {
        let t = s as f64 / steps as f64;
        let xs: [Complex64; 5] = std::array::from_fn(|k| from.x[k] * (1.0 - t) + to.x[k] * t);
        let cfg = PointConfig::new(xs)?;
        for (p, &(i, j)) in pairs().iter().enumerate() {
            check_segment(&cfg, i, j).map_err(|_| DmError::Continuity(i, j))?;
            for k in (0..5).filter(|&k| k != i && k != j) {
                let (s0, t0) = side(prev.x[k], prev.x[i], prev.x[j]);
                let (s1, t1) = side(cfg.x[k], cfg.x[i], cfg.x[j]);
                let within = (0.0..=1.0).contains(&t0) || (0.0..=1.0).contains(&t1);
                if s0.signum() != s1.signum() && within {
                    return Err(DmError::Continuity(i, j));
                }
            }
            let next = branch_for(&cfg, i, j, Some(&current[p]))?;
            // a jump of more than a quarter turn per step means the step was too coarse
            if next.args.iter().zip(&current[p].args).any(|(a, b)| (a - b).abs() > PI / 2.0) {
                return Err(DmError::Continuity(i, j));
            }
            current[p] = next;
        }
        prev = cfg;
    }
    Ok(current)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodRank {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// Fewer samples than the dimension it is meant to detect.
    pub degenerate: bool,
}

/// Numerical rank of the `10 × samples` matrix of periods over perturbations
/// of `x`, with branches continued from the principal ones at `x`.
pub fn period_rank(
    x: &PointConfig,
    mu: &MuTuple,
    samples: usize,
    perturbation: f64,
    rng: &mut impl Rng,
) -> Result<PeriodRank, DmError> {
    if samples == 0 {
        return Err(DmError::NoSamples);
    }
    let base: Vec<Branch> = pairs().iter().map(|&(i, j)| branch_for(x, i, j, None)).collect::<Result<_, _>>()?;
    let mut configs = vec![*x];
    while configs.len() < samples {
        let shift: [Complex64; 5] =
            std::array::from_fn(|_| Complex64::from_polar(perturbation * rng.gen::<f64>(), TAU * rng.gen::<f64>()));
        configs.push(PointConfig::new(std::array::from_fn(|k| x.x[k] + shift[k]))?);
    }
    let columns: Vec<Vec<Complex64>> = configs
        .par_iter()
        .map(|cfg| {
            let branches = continue_branches(x, cfg, &base, 16)?;
            pairs()
                .iter()
                .zip(&branches)
                .map(|(&(i, j), b)| period_with_branch(cfg, i, j, mu, Some(b)).map(|p| p.value))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let m = DMatrix::from_fn(10, samples, |r, c| columns[c][r]);
    let sv: Vec<f64> = m.svd(false, false).singular_values.iter().copied().collect();
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > RANK_THRESHOLD * top).count();
    Ok(PeriodRank { rank, singular_values: sv, degenerate: samples < 6 })
}
