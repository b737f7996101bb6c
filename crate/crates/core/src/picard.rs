//! The congruence group `Γ = {T ∈ GL₃(Z[ω]) : T ≡ I mod λ, T*HT = H}` with
//! `H = diag(1, 1, −1)`.
//!
//! Algebraic identities are checked exactly in `Z[ω]`; only [`ball_act`] uses
//! floating point.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{factors_from_torsion_counts, AlgebraError, FiniteAbelianGroup};
use crate::{EisensteinInt as Z, Valuation};

/// Diagonal of the Hermitian form.
pub const HERMITIAN: [i64; 3] = [1, 1, -1];

/// Default bound on the size of finite closures.
pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PicardError {
    #[error("{0} is not an element of the congruence group")]
    NotInGamma(String),
    #[error("reflection vector must have H-norm 1, got {0}")]
    ReflectionNorm(i64),
    #[error("closure exceeded the budget of {0} elements")]
    Budget(usize),
    #[error("residue level must be between 1 and 8, got {0}")]
    Level(u32),
    #[error("height must be at least 1")]
    Height,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
    #[error("point ({0}, {1}) is not in the open unit ball")]
    OutsideBall(Complex64, Complex64),
    #[error("image of the lift has vanishing last coordinate")]
    Degenerate,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `⟨x, y⟩_H = y* H x`.
pub fn hermitian(x: &[Z; 3], y: &[Z; 3]) -> Z {
    (0..3).map(|i| y[i].conj() * x[i] * Z::from_int(HERMITIAN[i])).sum()
}

/// A 3 × 3 matrix over `Z[ω]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3(pub [[Z; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Self =
        Self([[Z::ONE, Z::ZERO, Z::ZERO], [Z::ZERO, Z::ONE, Z::ZERO], [Z::ZERO, Z::ZERO, Z::ONE]]);

    pub fn diagonal(d: [Z; 3]) -> Self {
        let mut m = [[Z::ZERO; 3]; 3];
        for i in 0..3 {
            m[i][i] = d[i];
        }
        Self(m)
    }

    pub fn from_columns(c: [[Z; 3]; 3]) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| c[j][i])))
    }

    pub fn column(&self, j: usize) -> [Z; 3] {
        std::array::from_fn(|i| self.0[i][j])
    }

    pub fn entries(&self) -> impl Iterator<Item = Z> + '_ {
        self.0.iter().flatten().copied()
    }

    pub fn conj_transpose(&self) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }

    pub fn determinant(&self) -> Z {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry norm.
    pub fn height(&self) -> i64 {
        self.entries().map(Z::norm).max().unwrap_or(0)
    }

    pub fn is_unitary(&self) -> bool {
        let h = Self::diagonal(HERMITIAN.map(Z::from_int));
        &(self.conj_transpose() * h) * self == h
    }

    /// Minimal λ-valuation over the entries of `T − I`.
    pub fn congruence_level(&self) -> Valuation {
        let mut level = Valuation::Infinite;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.0[i][j] - if i == j { Z::ONE } else { Z::ZERO };
                level = level.min(d.lambda_valuation());
            }
        }
        level
    }

    pub fn in_gamma(&self) -> bool {
        self.is_unitary() && self.congruence_level().is_at_least(1)
    }

    /// Exact inverse when the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.determinant();
        if !d.is_unit() {
            return None;
        }
        if self.is_unitary() {
            let h = Self::diagonal(HERMITIAN.map(Z::from_int));
            return Some((h * self.conj_transpose()) * h);
        }
        // adjugate divided by the unit d, i.e. multiplied by conj(d)
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
            let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
            let minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]];
            if (i + j).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let dinv = d.conj();
        Some(Self(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) * dinv))))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::IDENTITY, |acc, _| &acc * self)
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())))
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    #[allow(clippy::op_ref)]
    fn mul(self, rhs: Mat3) -> Mat3 {
        &self * &rhs
    }
}

/// Nine `a+bw` tokens, row-major, separated by single spaces.
impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.entries().map(|x| x.to_string()).collect();
        f.write_str(&t.join(" "))
    }
}

impl Mat3 {
    pub fn tokens(&self) -> Vec<String> {
        self.entries().map(|x| x.to_string()).collect()
    }
}

/// Nine tokens separated by whitespace, commas or semicolons; brackets are
/// ignored.
impl FromStr for Mat3 {
    type Err = PicardError;

    fn from_str(s: &str) -> Result<Self, PicardError> {
        let cleaned: String = s.chars().map(|c| if "[](),;".contains(c) { ' ' } else { c }).collect();
        let toks: Vec<&str> = cleaned.split_whitespace().collect();
        if toks.len() != 9 {
            return Err(PicardError::Parse(format!("expected 9 entries, found {}", toks.len())));
        }
        let vals = toks.iter().map(|t| t.parse::<Z>()).collect::<Result<Vec<_>, _>>()?;
        Ok(Self(std::array::from_fn(|i| std::array::from_fn(|j| vals[3 * i + j]))))
    }
}

/// `R_v : x ↦ x − λ ⟨x, v⟩_H v` for `⟨v, v⟩_H = 1`.
pub fn reflection(v: [Z; 3]) -> Result<Mat3, PicardError> {
    let n = hermitian(&v, &v);
    if n != Z::ONE {
        // ⟨v,v⟩ is always rational
        return Err(PicardError::ReflectionNorm(n.a));
    }
    Ok(Mat3(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let delta = if i == j { Z::ONE } else { Z::ZERO };
            delta - Z::LAMBDA * v[i] * v[j].conj() * Z::from_int(HERMITIAN[j])
        })
    })))
}

/// `TUT⁻¹U⁻¹` and its congruence level.
pub fn commutator(t: &Mat3, u: &Mat3) -> Result<(Mat3, Valuation), PicardError> {
    for m in [t, u] {
        if !m.in_gamma() {
            return Err(PicardError::NotInGamma(m.to_string()));
        }
    }
    let ti = t.inverse().expect("unitary");
    let ui = u.inverse().expect("unitary");
    let c = ((t * u) * ti) * ui;
    Ok((c, c.congruence_level()))
}

/// Elements of `Z[ω]` with norm at most `h`, sorted.
pub fn elements_up_to_norm(h: i64) -> Vec<Z> {
    // a² − ab + b² ≥ (3/4)·max(a,b)², so |a|, |b| ≤ 2√(h/3)
    let r = ((4 * h) as f64 / 3.0).sqrt().ceil() as i64 + 1;
    let mut out: Vec<Z> =
        (-r..=r).flat_map(|a| (-r..=r).map(move |b| Z::new(a, b))).filter(|x| x.norm() <= h).collect();
    out.sort();
    out
}

/// Columns `c` with `⟨c, c⟩_H = H_jj` and `c ≡ e_j mod λ`.
fn column_candidates(j: usize, h: i64) -> Vec<[Z; 3]> {
    let entries = elements_up_to_norm(h);
    let congruent = |i: usize| -> Vec<Z> {
        let target = if i == j { Z::ONE } else { Z::ZERO };
        entries.iter().copied().filter(|&x| (x - target).lambda_valuation().is_at_least(1)).collect()
    };
    let (e0, e1, e2) = (congruent(0), congruent(1), congruent(2));
    let mut by_norm: HashMap<i64, Vec<Z>> = HashMap::new();
    for &x in &e2 {
        by_norm.entry(x.norm()).or_default().push(x);
    }
    let s = HERMITIAN[j];
    let mut out = Vec::new();
    for &x0 in &e0 {
        for &x1 in &e1 {
            // N(x0) + N(x1) − N(x2) = s
            if let Some(x2s) = by_norm.get(&(x0.norm() + x1.norm() - s)) {
                out.extend(x2s.iter().map(|&x2| [x0, x1, x2]));
            }
        }
    }
    out
}

fn cross(a: &[Z; 3], b: &[Z; 3]) -> [Z; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Every element of `Γ` with all entry norms at most `height`, ordered by
/// height and then by entries.
///
/// Columns 1 and 3 are searched; column 2 is then fixed up to a unit by the
/// cofactor identity `adj T = det T · H T* H`.
pub fn enumerate_gamma(height: i64) -> Result<Vec<Mat3>, PicardError> {
    if height < 1 {
        return Err(PicardError::Height);
    }
    let c1s = column_candidates(0, height);
    let c3s = column_candidates(2, height);
    let units = Z::units();
    let mut found: Vec<Mat3> = c1s
        .par_iter()
        .flat_map_iter(|c1| {
            let mut local = Vec::new();
            for c3 in &c3s {
                if !hermitian(c1, c3).is_zero() {
                    continue;
                }
                let w = cross(c3, c1);
                let base: [Z; 3] = std::array::from_fn(|i| w[i].conj() * Z::from_int(HERMITIAN[i]));
                for &u in &units {
                    let c2 = base.map(|x| x * u);
                    if c2.iter().any(|x| x.norm() > height) {
                        continue;
                    }
                    let t = Mat3::from_columns([*c1, c2, *c3]);
                    if t.in_gamma() {
                        local.push(t);
                    }
                }
            }
            local
        })
        .collect();
    found.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    found.dedup();
    Ok(found)
}

/// Reflections in the vectors of H-norm 1 with entry norms at most 1, one per
/// unit class of vectors, sorted.
pub fn height_one_reflections() -> Vec<Mat3> {
    let small = elements_up_to_norm(1);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &a in &small {
        for &b in &small {
            for &c in &small {
                if let Ok(r) = reflection([a, b, c]) {
                    if seen.insert(r) {
                        out.push(r);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// `Z[ω]/λᵏ` with canonical representatives.
///
/// The ideal `λᵏZ[ω]` is a sublattice of `Z² = {a + bω}` with basis
/// `(n, 0), (c, m)`, `nm = 3ᵏ`; representatives are `a ∈ [0, n)`, `b ∈ [0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    k: u32,
    n: i64,
    c: i64,
    m: i64,
}

impl ResidueRing {
    pub fn new(k: u32) -> Result<Self, PicardError> {
        if !(1..=8).contains(&k) {
            return Err(PicardError::Level(k));
        }
        let g1 = Z::LAMBDA.pow(k);
        let g2 = g1 * Z::OMEGA;
        let (v1, v2) = ((g1.a, g1.b), (g2.a, g2.b));
        let e = v1.1.extended_gcd(&v2.1);
        let m = e.gcd;
        let c0 = e.x * v1.0 + e.y * v2.0;
        let n = ((v2.1 / m) * v1.0 - (v1.1 / m) * v2.0).abs();
        debug_assert_eq!(n * m.abs(), 3i64.pow(k));
        let (c, m) = if m < 0 { (-c0, -m) } else { (c0, m) };
        Ok(Self { k, n, c: c.rem_euclid(n), m })
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> usize {
        (self.n * self.m) as usize
    }

    pub fn reduce(&self, x: Z) -> Z {
        let t = Integer::div_floor(&x.b, &self.m);
        let (a, b) = (x.a - t * self.c, x.b - t * self.m);
        Z::new(a.rem_euclid(self.n), b)
    }

    pub fn index(&self, x: Z) -> u16 {
        let r = self.reduce(x);
        (r.a + self.n * r.b) as u16
    }

    pub fn element(&self, idx: u16) -> Z {
        let i = idx as i64;
        Z::new(i % self.n, i / self.n)
    }

    pub fn reduce_mat(&self, t: &Mat3) -> ResidueMat {
        ResidueMat(std::array::from_fn(|i| self.index(t.0[i / 3][i % 3])))
    }

    pub fn mul(&self, x: &ResidueMat, y: &ResidueMat) -> ResidueMat {
        let xe = x.0.map(|i| self.element(i));
        let ye = y.0.map(|i| self.element(i));
        ResidueMat(std::array::from_fn(|p| {
            let (i, j) = (p / 3, p % 3);
            self.index((0..3).map(|k| xe[3 * i + k] * ye[3 * k + j]).sum())
        }))
    }

    pub fn identity(&self) -> ResidueMat {
        self.reduce_mat(&Mat3::IDENTITY)
    }

    pub fn lift(&self, x: &ResidueMat) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.element(x.0[3 * i + j]))))
    }
}

/// A matrix over `Z[ω]/λᵏ`, entries as residue indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueMat(pub [u16; 9]);

/// `T mod λᵏ`.
pub fn reduce_mod(t: &Mat3, k: u32) -> Result<ResidueMat, PicardError> {
    Ok(ResidueRing::new(k)?.reduce_mat(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotient {
    pub level: u32,
    pub image_order: usize,
    pub derived_order: usize,
    pub abelianization: FiniteAbelianGroup,
}

fn closure(
    start: ResidueMat,
    step: impl Fn(&ResidueMat) -> Vec<ResidueMat>,
    budget: usize,
) -> Result<HashSet<ResidueMat>, PicardError> {
    let mut seen = HashSet::from([start]);
    let mut frontier = vec![start];
    while let Some(x) = frontier.pop() {
        for y in step(&x) {
            if seen.insert(y) {
                if seen.len() > budget {
                    return Err(PicardError::Budget(budget));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

fn power(ring: &ResidueMat, e: u64, r: &ResidueRing) -> ResidueMat {
    let mut acc = r.identity();
    let mut base = *ring;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = r.mul(&acc, &base);
        }
        base = r.mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// Image of the group generated by `generators` in `GL₃(Z[ω]/λᵏ)`, its
/// derived subgroup and abelianization.
pub fn finite_group_analysis(generators: &[Mat3], k: u32, budget: usize) -> Result<FiniteQuotient, PicardError> {
    let ring = ResidueRing::new(k)?;
    let gens: Vec<ResidueMat> = generators.iter().map(|g| ring.reduce_mat(g)).collect();
    let inverses: Vec<ResidueMat> = generators
        .iter()
        .map(|g| g.inverse().map(|x| ring.reduce_mat(&x)).ok_or_else(|| PicardError::NotInGamma(g.to_string())))
        .collect::<Result<_, _>>()?;
    let id = ring.identity();
    let group = closure(id, |x| gens.iter().map(|g| ring.mul(x, g)).collect(), budget)?;

    // normal closure of the generator commutators
    let mut comms = Vec::new();
    for (a, ai) in gens.iter().zip(&inverses) {
        for (b, bi) in gens.iter().zip(&inverses) {
            let c = ring.mul(&ring.mul(&ring.mul(a, b), ai), bi);
            if c != id && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let derived = closure(
        id,
        |x| {
            let mut next: Vec<ResidueMat> = comms.iter().map(|c| ring.mul(x, c)).collect();
            next.extend(gens.iter().zip(&inverses).map(|(g, gi)| ring.mul(&ring.mul(g, x), gi)));
            next
        },
        budget,
    )?;

    let quotient = (group.len() / derived.len()) as u64;
    let elems: Vec<ResidueMat> = group.iter().copied().collect();
    let abelianization = factors_from_torsion_counts(quotient, |p, j| {
        let e = p.pow(j);
        let hits = elems.par_iter().filter(|x| derived.contains(&power(x, e, &ring))).count();
        (hits / derived.len()) as u64
    })?;
    Ok(FiniteQuotient { level: k, image_order: group.len(), derived_order: derived.len(), abelianization })
}

/// A point `(z₁, z₂)` with `|z₁|² + |z₂|² < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl BallPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self, PicardError> {
        if z1.norm_sqr() + z2.norm_sqr() >= 1.0 {
            return Err(PicardError::OutsideBall(z1, z2));
        }
        Ok(Self { z1, z2 })
    }

    /// `|z₁|² + |z₂|² − 1`, the form on the lift `(z₁, z₂, 1)`.
    pub fn form(&self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr() - 1.0
    }
}

/// Action together with the drift of the form on the lift, relative to the
/// squared length of the lifted image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallImage {
    pub point: BallPoint,
    pub drift: f64,
}

/// `z ↦ T(z, 1)` rescaled to last coordinate 1.
pub fn ball_act(t: &Mat3, z: &BallPoint) -> Result<BallImage, PicardError> {
    let lift = [z.z1, z.z2, Complex64::new(1.0, 0.0)];
    let w: [Complex64; 3] = std::array::from_fn(|i| (0..3).map(|j| t.0[i][j].to_complex() * lift[j]).sum());
    if w[2].norm_sqr() == 0.0 {
        return Err(PicardError::Degenerate);
    }
    let lifted_form = w[0].norm_sqr() + w[1].norm_sqr() - w[2].norm_sqr();
    let scale = w[0].norm_sqr() + w[1].norm_sqr() + w[2].norm_sqr();
    let drift = (lifted_form - z.form()).abs() / scale;
    let point = BallPoint { z1: w[0] / w[2], z2: w[1] / w[2] };
    Ok(BallImage { point, drift })
}
