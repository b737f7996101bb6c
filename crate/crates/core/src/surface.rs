//! Divisor lattices and characteristic-number bookkeeping.
//!
//! Linear and numerical equivalence are identified throughout: a class is a
//! coefficient vector in a fixed basis and the only structure is the Gram
//! matrix of the intersection pairing. All arithmetic is exact.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::fano::{self, CurveLabel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("no pair labeling reproduces the (-1)-curve configuration")]
    NoLabeling,
    #[error("cover degree must be positive, got {0}")]
    Degree(i64),
    #[error("branch weight must be at least 2, got {0}")]
    Weight(u32),
    #[error("Hirzebruch covers need n >= 2, got {0}")]
    HirzebruchIndex(u32),
    #[error("Euler characteristic is not an integer: {0}")]
    NonIntegral(String),
    #[error("point {0} lies on fewer than two curves")]
    Incidence(usize),
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A divisor class as a rational coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coeffs: Vec<BigRational>,
}

impl DivisorClass {
    pub fn zero(rank: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); rank] }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self { coeffs: c.iter().map(|&x| rat(x)).collect() }
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    /// The `k`-th basis vector.
    pub fn basis(rank: usize, k: usize) -> Self {
        let mut d = Self::zero(rank);
        d.coeffs[k] = BigRational::one();
        d
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if integral and small.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten()).collect()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), rhs.rank(), "adding classes of different rank");
        DivisorClass { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&rat(self))
    }
}

impl<'a> std::iter::Sum<&'a DivisorClass> for Option<DivisorClass> {
    fn sum<I: Iterator<Item = &'a DivisorClass>>(mut iter: I) -> Self {
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, d| &acc + d))
    }
}

/// Free abelian group with a symmetric integer pairing and a canonical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>, canonical: DivisorClass) -> Result<Self, SurfaceError> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|r| r.len() != n) {
            return Err(SurfaceError::Dimension("gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(SurfaceError::NotSymmetric(i, j));
                }
            }
        }
        if canonical.rank() != n {
            return Err(SurfaceError::Dimension(format!(
                "canonical class has {} coefficients, lattice rank {n}",
                canonical.rank()
            )));
        }
        Ok(Self { gram, canonical })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn check_class(&self, d: &DivisorClass) -> Result<(), SurfaceError> {
        if d.rank() != self.rank() {
            return Err(SurfaceError::Dimension(format!(
                "class of rank {} in a lattice of rank {}",
                d.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// Panics on a rank mismatch; use [`Self::check_class`] for untrusted input.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> BigRational {
        assert_eq!(a.rank(), self.rank());
        assert_eq!(b.rank(), self.rank());
        let mut acc = BigRational::zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !bj.is_zero() {
                    acc += ai * bj * rat(g);
                }
            }
        }
        acc
    }

    pub fn square(&self, a: &DivisorClass) -> BigRational {
        self.pair(a, a)
    }

    pub fn k_squared(&self) -> BigRational {
        self.square(&self.canonical)
    }
}

/// The degree-5 del Pezzo surface with its ten (−1)-curves.
#[derive(Clone, Debug)]
pub struct DelPezzo {
    /// Basis `L, E₁, E₂, E₃, E₄`.
    pub lattice: IntersectionLattice,
    /// `E₁..E₄`, then `L − E_a − E_b` for `a < b`.
    pub curves: Vec<DivisorClass>,
    /// Pair label `{i, j}` of each curve, so that `X_ij · X_st = 1` exactly
    /// when the labels are disjoint.
    pub labels: Vec<(u8, u8)>,
}

impl DelPezzo {
    /// Boundary divisor `Σ′`, the sum of the ten curves.
    pub fn boundary(&self) -> DivisorClass {
        self.curves.iter().sum::<Option<DivisorClass>>().expect("ten curves")
    }

    pub fn curve_by_label(&self, pair: (u8, u8)) -> Option<&DivisorClass> {
        self.labels.iter().position(|&l| l == pair).map(|k| &self.curves[k])
    }

    /// Ten rational curves meeting in the 15 double points.
    pub fn curve_config(&self) -> CurveConfig {
        let gram: Vec<Vec<i64>> = self
            .curves
            .iter()
            .map(|a| self.curves.iter().map(|b| self.lattice.pair(a, b).to_integer().to_i64().unwrap()).collect())
            .collect();
        let names = self.labels.iter().map(|(i, j)| format!("X{i}{j}")).collect();
        CurveConfig::from_transversal_pairing(names, vec![2; 10], &gram)
    }
}

fn labels_disjoint(a: (u8, u8), b: (u8, u8)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

pub fn del_pezzo_lattice() -> Result<DelPezzo, SurfaceError> {
    let gram = vec![
        vec![1, 0, 0, 0, 0],
        vec![0, -1, 0, 0, 0],
        vec![0, 0, -1, 0, 0],
        vec![0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, -1],
    ];
    let lattice = IntersectionLattice::new(gram, DivisorClass::from_ints(&[-3, 1, 1, 1, 1]))?;
    let mut curves: Vec<DivisorClass> = (1..=4).map(|a| DivisorClass::basis(5, a)).collect();
    for a in 1..=4 {
        for b in a + 1..=4 {
            let mut c = [1i64, 0, 0, 0, 0];
            c[a] = -1;
            c[b] = -1;
            curves.push(DivisorClass::from_ints(&c));
        }
    }
    let pairing: Vec<Vec<BigRational>> =
        curves.iter().map(|a| curves.iter().map(|b| lattice.pair(a, b)).collect()).collect();
    let labels = find_labeling(&pairing).ok_or(SurfaceError::NoLabeling)?;
    Ok(DelPezzo { lattice, curves, labels })
}

/// First (lexicographic) assignment of pair labels matching the pairing.
fn find_labeling(pairing: &[Vec<BigRational>]) -> Option<Vec<(u8, u8)>> {
    fn extend(pairing: &[Vec<BigRational>], pairs: &[(u8, u8)], used: &mut [bool], acc: &mut Vec<(u8, u8)>) -> bool {
        let k = acc.len();
        if k == pairing.len() {
            return true;
        }
        for (idx, &cand) in pairs.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let consistent = acc.iter().enumerate().all(|(l, &lab)| {
                let want = if labels_disjoint(cand, lab) { 1 } else { 0 };
                pairing[k][l] == rat(want)
            });
            if consistent {
                used[idx] = true;
                acc.push(cand);
                if extend(pairing, pairs, used, acc) {
                    return true;
                }
                acc.pop();
                used[idx] = false;
            }
        }
        false
    }
    let pairs = fano::index_pairs();
    if pairing.len() != pairs.len() || pairing.iter().enumerate().any(|(k, r)| r[k] != rat(-1)) {
        return None;
    }
    let mut used = vec![false; pairs.len()];
    let mut acc = Vec::new();
    extend(pairing, &pairs, &mut used, &mut acc).then_some(acc)
}

/// Generators `K_S, E₁, …, E₃₀` of the Fano surface with the pairing
/// `K² = 45`, `K·E = 3` and the 30-curve configuration.
///
/// `K² = 45` and `K·E = 3` are input data, not derived here.
#[derive(Clone, Debug)]
pub struct FanoSurfaceLattice {
    pub lattice: IntersectionLattice,
    pub curves: Vec<CurveLabel>,
}

pub const FANO_K_SQUARED: i64 = 45;
pub const FANO_K_DOT_E: i64 = 3;
pub const FANO_EULER: i64 = 27;

impl FanoSurfaceLattice {
    pub fn new() -> Self {
        let curves = CurveLabel::all();
        let n = curves.len() + 1;
        let mut gram = vec![vec![0i64; n]; n];
        gram[0][0] = FANO_K_SQUARED;
        for (a, ca) in curves.iter().enumerate() {
            gram[0][a + 1] = FANO_K_DOT_E;
            gram[a + 1][0] = FANO_K_DOT_E;
            for (b, cb) in curves.iter().enumerate() {
                gram[a + 1][b + 1] = fano::intersection_number(ca, cb);
            }
        }
        let lattice = IntersectionLattice::new(gram, DivisorClass::basis(n, 0)).unwrap();
        Self { lattice, curves }
    }

    pub fn curve_class(&self, c: &CurveLabel) -> DivisorClass {
        DivisorClass::basis(self.lattice.rank(), c.index() + 1)
    }

    /// `Σ = Σ E_ij^β` over all 30 curves.
    pub fn sigma(&self) -> DivisorClass {
        self.sum_of(&self.curves)
    }

    /// The twelve curves `E_ki^β` containing the index `k`; pairwise disjoint.
    pub fn twelve_curves(&self, k: u8) -> Vec<CurveLabel> {
        self.curves.iter().copied().filter(|c| c.pair().0 == k || c.pair().1 == k).collect()
    }

    pub fn sum_of(&self, cs: &[CurveLabel]) -> DivisorClass {
        cs.iter().fold(DivisorClass::zero(self.lattice.rank()), |acc, c| &acc + &self.curve_class(c))
    }

    pub fn curve_config(&self, cs: &[CurveLabel]) -> CurveConfig {
        let gram: Vec<Vec<i64>> =
            cs.iter().map(|a| cs.iter().map(|b| fano::intersection_number(a, b)).collect()).collect();
        CurveConfig::from_transversal_pairing(cs.iter().map(ToString::to_string).collect(), vec![0; cs.len()], &gram)
    }
}

impl Default for FanoSurfaceLattice {
    fn default() -> Self {
        Self::new()
    }
}

/// Curves with their topological Euler characteristics and the points
/// where they meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    pub curves: Vec<(String, i64)>,
    /// Indices of the curves through each point.
    pub points: Vec<Vec<usize>>,
}

impl CurveConfig {
    pub fn new(curves: Vec<(String, i64)>, points: Vec<Vec<usize>>) -> Result<Self, SurfaceError> {
        for (k, p) in points.iter().enumerate() {
            let mut q = p.clone();
            q.sort_unstable();
            q.dedup();
            if q.len() < 2 || q.iter().any(|&c| c >= curves.len()) {
                return Err(SurfaceError::Incidence(k));
            }
        }
        Ok(Self { curves, points })
    }

    /// Every positive pairing between distinct curves is taken as that many
    /// transversal double points.
    pub fn from_transversal_pairing(names: Vec<String>, euler: Vec<i64>, gram: &[Vec<i64>]) -> Self {
        let mut points = Vec::new();
        for a in 0..gram.len() {
            for b in a + 1..gram.len() {
                for _ in 0..gram[a][b].max(0) {
                    points.push(vec![a, b]);
                }
            }
        }
        Self { curves: names.into_iter().zip(euler).collect(), points }
    }
}

/// `χ(∪ Cᵢ) = Σ χ(Cᵢ) − Σ_p (mult(p) − 1)`.
pub fn config_euler(cfg: &CurveConfig) -> i64 {
    let curves: i64 = cfg.curves.iter().map(|(_, e)| e).sum();
    let overcount: i64 = cfg.points.iter().map(|p| p.len() as i64 - 1).sum();
    curves - overcount
}

/// `Σ degreeᵢ · χᵢ` over strata `(χᵢ, degreeᵢ)`.
pub fn stratified_euler(strata: &[(i64, i64)]) -> i64 {
    strata.iter().map(|(chi, deg)| chi * deg).sum()
}

/// Solves `total = generic_degree · χ(open) + Σ degₖ χₖ` for the open stratum
/// and returns `χ(base) = χ(open) + Σ χₖ`.
pub fn solve_base_euler(total: i64, generic_degree: i64, special: &[(i64, i64)]) -> Result<i64, SurfaceError> {
    if generic_degree <= 0 {
        return Err(SurfaceError::Degree(generic_degree));
    }
    let rest = total - stratified_euler(special);
    if rest % generic_degree != 0 {
        return Err(SurfaceError::NonIntegral(format!("{rest}/{generic_degree}")));
    }
    Ok(rest / generic_degree + special.iter().map(|(chi, _)| chi).sum::<i64>())
}

/// Riemann–Hurwitz for a curve cover: `χ = d·χ_base − Σ nₚ (d − d/eₚ)` over
/// `branch = [(number of branch points, ramification index)]`.
pub fn riemann_hurwitz(degree: i64, base_euler: i64, branch: &[(i64, i64)]) -> Result<i64, SurfaceError> {
    if degree <= 0 {
        return Err(SurfaceError::Degree(degree));
    }
    let mut chi = degree * base_euler;
    for &(count, e) in branch {
        if e < 1 || degree % e != 0 {
            return Err(SurfaceError::NonIntegral(format!("{degree}/{e}")));
        }
        chi -= count * (degree - degree / e);
    }
    Ok(chi)
}

/// `degree · (K + Σ (1 − 1/eᵢ) Dᵢ)²`, the canonical self-intersection of an
/// abelian cover branched along `Dᵢ` with index `eᵢ`.
pub fn branched_canonical(
    base: &IntersectionLattice,
    branch: &[(DivisorClass, u32)],
    degree: i64,
) -> Result<BigRational, SurfaceError> {
    if degree <= 0 {
        return Err(SurfaceError::Degree(degree));
    }
    let mut k = base.canonical().clone();
    for (d, e) in branch {
        if *e < 2 {
            return Err(SurfaceError::Weight(*e));
        }
        base.check_class(d)?;
        let w = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(*e));
        k = &k + &d.scale(&w);
    }
    Ok(base.square(&k) * rat(degree))
}

/// Logarithmic Chern numbers of `S − D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogChern {
    pub c1_sq: i64,
    pub c2: i64,
    /// `c̄₁² ≤ 3c̄₂`
    pub inequality: bool,
    pub equality: bool,
}

/// `c̄₁² = K² + 2K·D + D²`, `c̄₂ = χ(S) − χ(D)`.
pub fn log_chern(k2: i64, kd: i64, d2: i64, chi_s: i64, chi_d: i64) -> LogChern {
    let c1_sq = k2 + 2 * kd + d2;
    let c2 = chi_s - chi_d;
    LogChern { c1_sq, c2, inequality: c1_sq <= 3 * c2, equality: c1_sq == 3 * c2 }
}

/// Chern numbers `(c₁², c₂)` of Hirzebruch's degree-`n⁵` cover of the
/// del Pezzo surface branched with index `n` along the ten (−1)-curves.
pub fn hirzebruch_invariants(n: u32) -> Result<(i64, i64), SurfaceError> {
    if n < 2 {
        return Err(SurfaceError::HirzebruchIndex(n));
    }
    let dp = del_pezzo_lattice()?;
    let n = n as i64;
    let degree = n.pow(5);
    let branch: Vec<(DivisorClass, u32)> = dp.curves.iter().map(|c| (c.clone(), n as u32)).collect();
    let c1 = branched_canonical(&dp.lattice, &branch, degree)?;
    if !c1.is_integer() {
        return Err(SurfaceError::NonIntegral(c1.to_string()));
    }

    // strata: X − Σ′, Σ′ − I′, I′
    let cfg = dp.curve_config();
    let boundary = config_euler(&cfg);
    let points = cfg.points.len() as i64;
    // rational surface: χ = 2 + Picard rank
    let chi_x = 2 + dp.lattice.rank() as i64;
    let c2 = stratified_euler(&[(chi_x - boundary, degree), (boundary - points, n.pow(4)), (points, n.pow(3))]);
    Ok((c1.to_integer().to_i64().unwrap(), c2))
}

impl IntersectionLattice {
    pub fn is_unimodular(&self) -> bool {
        let m = crate::algebra::IntMatrix::from_rows(&self.gram);
        m.determinant().abs().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn del_pezzo_basics() {
        let dp = del_pezzo_lattice().unwrap();
        assert_eq!(dp.lattice.k_squared(), rat(5));
        assert_eq!(dp.curves.len(), 10);
        for c in &dp.curves {
            assert_eq!(dp.lattice.square(c), rat(-1));
            assert_eq!(dp.lattice.pair(c, dp.lattice.canonical()), rat(-1));
        }
        for (a, la) in dp.curves.iter().zip(&dp.labels) {
            for (b, lb) in dp.curves.iter().zip(&dp.labels) {
                if la != lb {
                    let want = if labels_disjoint(*la, *lb) { 1 } else { 0 };
                    assert_eq!(dp.lattice.pair(a, b), rat(want));
                }
            }
        }
        assert!(dp.lattice.is_unimodular());
    }

    #[test]
    fn euler_of_configurations() {
        let dp = del_pezzo_lattice().unwrap();
        let cfg = dp.curve_config();
        assert_eq!(cfg.points.len(), 15);
        assert_eq!(config_euler(&cfg), 5);
        let single = CurveConfig::new(vec![("C".into(), -4)], vec![]).unwrap();
        assert_eq!(config_euler(&single), -4);
        let s = FanoSurfaceLattice::new();
        assert_eq!(config_euler(&s.curve_config(&s.curves)), -135);
        assert!(CurveConfig::new(vec![("C".into(), 2)], vec![vec![0]]).is_err());
    }

    #[test]
    fn stratified() {
        assert_eq!(stratified_euler(&[(2, 81), (-10, 27), (15, 9)]), 27);
        assert_eq!(stratified_euler(&[(2, 243), (-10, 81), (15, 27)]), 81);
        assert_eq!(solve_base_euler(27, 81, &[(-10, 27), (15, 9)]), Ok(7));
        assert_eq!(solve_base_euler(0, 9, &[(3, 3)]), Ok(2));
        assert!(solve_base_euler(1, 9, &[(3, 3)]).is_err());
        assert_eq!(riemann_hurwitz(9, 2, &[(3, 3)]), Ok(0));
    }

    #[test]
    fn canonical_of_covers() {
        let dp = del_pezzo_lattice().unwrap();
        let branch: Vec<_> = dp.curves.iter().map(|c| (c.clone(), 3)).collect();
        assert_eq!(branched_canonical(&dp.lattice, &branch, 81), Ok(rat(45)));
        assert_eq!(branched_canonical(&dp.lattice, &branch, 243), Ok(rat(135)));
        assert_eq!(branched_canonical(&dp.lattice, &[], 1), Ok(rat(5)));
        assert_eq!(branched_canonical(&dp.lattice, &branch, 0), Err(SurfaceError::Degree(0)));
        let bad = vec![(dp.curves[0].clone(), 1)];
        assert_eq!(branched_canonical(&dp.lattice, &bad, 3), Err(SurfaceError::Weight(1)));
    }

    #[test]
    fn log_chern_examples() {
        let s = log_chern(45, 36, -36, 27, 0);
        assert_eq!((s.c1_sq, s.c2, s.equality), (81, 27, true));
        let h = log_chern(135, 108, -108, 81, 0);
        assert_eq!((h.c1_sq, h.c2, h.equality), (243, 81, true));
        let t = log_chern(9, 0, 0, 3, 0);
        assert_eq!((t.c1_sq, t.c2), (9, 3));
    }

    #[test]
    fn hirzebruch() {
        assert_eq!(hirzebruch_invariants(5), Ok((5625, 1875)));
        assert_eq!(hirzebruch_invariants(3), Ok((135, 81)));
        // (0, 24): the n = 2 cover has the Chern numbers of a K3 surface
        assert_eq!(hirzebruch_invariants(2), Ok((0, 24)));
        assert_eq!(hirzebruch_invariants(1), Err(SurfaceError::HirzebruchIndex(1)));
        for n in 2..=12u32 {
            let (c1, c2) = hirzebruch_invariants(n).unwrap();
            let m = n as i64;
            assert_eq!(c2, 2 * m.pow(5) - 10 * m.pow(4) + 15 * m.pow(3));
            assert_eq!(c1 == 3 * c2, n == 5, "n = {n}");
        }
    }
}
