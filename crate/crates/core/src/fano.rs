//! The 30 elliptic curves on the Fano surface of the Fermat cubic threefold,
//! their 135 intersection points, and the action of the diagonal torsion
//! group `G ≅ (Z/3)⁴`.
//!
//! Curves are labelled `E_ij^β` with `1 ≤ i < j ≤ 5` and `β = ω^b`. Each label
//! stands for the cone in the cubic with vertex `eᵢ − ω^b eⱼ`; an intersection
//! point is the line joining two vertices with disjoint supports. `G` acts by
//! `diag(ω^{t₁}, …, ω^{t₅})` with `Σ tᵢ ≡ 0 (mod 3)`, which sends the vertex of
//! `E_ij^{ω^b}` to that of `E_ij^{ω^{b + tⱼ − tᵢ}}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Convention string reported alongside every computation that depends on it.
pub const ACTION_CONVENTION: &str = "g.E_ij^(w^b) = E_ij^(w^(b + t_j - t_i)), vertex e_i - w^b e_j";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanoError {
    #[error("{g} does not stabilize {p}")]
    NotInStabilizer { g: TorsionAut, p: PointLabel },
    #[error("the identity fixes the whole surface")]
    Identity,
    #[error("invalid label: {0}")]
    Label(String),
}

/// An element `ω^k` of `μ₃`, stored by its exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubeRoot(pub u8);

impl CubeRoot {
    pub fn is_one(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for CubeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}", self.0)
    }
}

/// `E_ij^{ω^beta}`; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveLabel {
    i: u8,
    j: u8,
    beta: u8,
}

impl CurveLabel {
    pub fn new(i: u8, j: u8, beta: u8) -> Result<Self, FanoError> {
        if !(1 <= i && i < j && j <= 5 && beta < 3) {
            return Err(FanoError::Label(format!("E_{i}{j}^{beta}")));
        }
        Ok(Self { i, j, beta })
    }

    pub fn pair(&self) -> (u8, u8) {
        (self.i, self.j)
    }

    pub fn beta(&self) -> CubeRoot {
        CubeRoot(self.beta)
    }

    pub fn disjoint_from(&self, other: &CurveLabel) -> bool {
        self.i != other.i && self.i != other.j && self.j != other.i && self.j != other.j
    }

    /// The 30 labels ordered by `(i, j, β)`.
    pub fn all() -> Vec<CurveLabel> {
        let mut out = Vec::with_capacity(30);
        for (i, j) in index_pairs() {
            for beta in 0..3 {
                out.push(CurveLabel { i, j, beta });
            }
        }
        out
    }

    /// Position in [`CurveLabel::all`].
    pub fn index(&self) -> usize {
        let pair = index_pairs().iter().position(|&p| p == (self.i, self.j)).unwrap();
        3 * pair + self.beta as usize
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}{}^{}", self.i, self.j, self.beta)
    }
}

/// The ten pairs `{i, j} ⊂ {1..5}` in lexicographic order.
pub fn index_pairs() -> [(u8, u8); 10] {
    [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
}

/// Intersection point of two curves with disjoint index pairs, stored with
/// the lexicographically smaller pair first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointLabel {
    first: CurveLabel,
    second: CurveLabel,
}

impl PointLabel {
    pub fn new(a: CurveLabel, b: CurveLabel) -> Result<Self, FanoError> {
        if !a.disjoint_from(&b) {
            return Err(FanoError::Label(format!("{a} and {b} do not meet")));
        }
        Ok(if a.pair() < b.pair() { Self { first: a, second: b } } else { Self { first: b, second: a } })
    }

    pub fn curves(&self) -> (CurveLabel, CurveLabel) {
        (self.first, self.second)
    }

    pub fn lies_on(&self, c: &CurveLabel) -> bool {
        self.first == *c || self.second == *c
    }

    /// The 135 points in canonical order.
    pub fn all() -> Vec<PointLabel> {
        let curves = CurveLabel::all();
        let mut out = Vec::with_capacity(135);
        for (k, a) in curves.iter().enumerate() {
            for b in &curves[k + 1..] {
                if a.disjoint_from(b) {
                    out.push(PointLabel::new(*a, *b).unwrap());
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.first, self.second)
    }
}

/// `diag(ω^{t₁}, …, ω^{t₅})` with `Σ tᵢ ≡ 0 (mod 3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorsionAut {
    t: [u8; 5],
}

impl TorsionAut {
    pub const IDENTITY: Self = Self { t: [0; 5] };

    pub fn new(t: [u8; 5]) -> Result<Self, FanoError> {
        if t.iter().any(|&x| x > 2) || t.iter().map(|&x| x as u32).sum::<u32>() % 3 != 0 {
            return Err(FanoError::Label(format!("{t:?} is not in A(3,3,5)")));
        }
        Ok(Self { t })
    }

    pub fn exponents(&self) -> [u8; 5] {
        self.t
    }

    /// Exponent of the `k`-th diagonal entry, `k` 1-based.
    pub fn exp(&self, k: u8) -> u8 {
        self.t[k as usize - 1]
    }

    /// All 81 elements ordered lexicographically by exponents.
    pub fn all() -> Vec<TorsionAut> {
        let mut out = Vec::with_capacity(81);
        for code in 0..81u32 {
            let mut t = [0u8; 5];
            let mut c = code;
            for k in (0..4).rev() {
                t[k] = (c % 3) as u8;
                c /= 3;
            }
            t[4] = ((6 - t[..4].iter().map(|&x| x as u32).sum::<u32>() % 3) % 3) as u8;
            out.push(TorsionAut { t });
        }
        out
    }

    pub fn compose(&self, other: &TorsionAut) -> TorsionAut {
        let mut t = [0u8; 5];
        for k in 0..5 {
            t[k] = (self.t[k] + other.t[k]) % 3;
        }
        TorsionAut { t }
    }

    pub fn inverse(&self) -> TorsionAut {
        let mut t = self.t;
        for x in &mut t {
            *x = (3 - *x) % 3;
        }
        TorsionAut { t }
    }

    pub fn is_identity(&self) -> bool {
        self.t == [0; 5]
    }
}

impl fmt::Display for TorsionAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.t;
        write!(f, "({},{},{},{},{})", t[0], t[1], t[2], t[3], t[4])
    }
}

/// Intersection pairing of the 30 curves.
pub fn intersection_number(c1: &CurveLabel, c2: &CurveLabel) -> i64 {
    if c1 == c2 {
        -3
    } else if c1.disjoint_from(c2) {
        1
    } else {
        0
    }
}

/// The 30 × 30 Gram matrix in [`CurveLabel::all`] order.
pub fn gram_matrix() -> Vec<Vec<i64>> {
    let curves = CurveLabel::all();
    curves.iter().map(|a| curves.iter().map(|b| intersection_number(a, b)).collect()).collect()
}

pub fn act_on_curve(g: &TorsionAut, c: &CurveLabel) -> CurveLabel {
    let shift = 3 + g.exp(c.j) - g.exp(c.i);
    CurveLabel { beta: (c.beta + shift) % 3, ..*c }
}

pub fn act_on_point(g: &TorsionAut, p: &PointLabel) -> PointLabel {
    PointLabel::new(act_on_curve(g, &p.first), act_on_curve(g, &p.second)).unwrap()
}

/// Stabilizer of a curve, with the subgroup fixing it pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveStabilizer {
    pub setwise: Vec<TorsionAut>,
    pub pointwise: Vec<TorsionAut>,
}

pub fn curve_stabilizer(c: &CurveLabel) -> CurveStabilizer {
    let setwise: Vec<TorsionAut> = TorsionAut::all().into_iter().filter(|g| act_on_curve(g, c) == *c).collect();
    let pointwise = setwise.iter().copied().filter(|g| fixes_pointwise(g, c)).collect();
    CurveStabilizer { setwise, pointwise }
}

/// `g` fixes every line of the cone over `E_ij`: it fixes the vertex and acts
/// as a scalar on the three complementary coordinates, which forces
/// `tᵢ = tⱼ = 0`.
fn fixes_pointwise(g: &TorsionAut, c: &CurveLabel) -> bool {
    let rest: Vec<u8> = (1..=5).filter(|&k| k != c.i && k != c.j).map(|k| g.exp(k)).collect();
    g.exp(c.i) == 0 && g.exp(c.j) == 0 && rest.iter().all(|&x| x == rest[0])
}

pub fn point_stabilizer(p: &PointLabel) -> Vec<TorsionAut> {
    TorsionAut::all().into_iter().filter(|g| act_on_point(g, p) == *p).collect()
}

/// Eigenvalues of `g` on the plane spanned by the two cone vertices of `p`,
/// which are the eigenvalues of its differential on the tangent space at `p`.
pub fn tangent_eigenvalues(g: &TorsionAut, p: &PointLabel) -> Result<(CubeRoot, CubeRoot), FanoError> {
    if act_on_point(g, p) != *p {
        return Err(FanoError::NotInStabilizer { g: *g, p: *p });
    }
    Ok((CubeRoot(g.exp(p.first.i)), CubeRoot(g.exp(p.second.i))))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedLocus {
    pub curves: BTreeSet<CurveLabel>,
    pub isolated_points: BTreeSet<PointLabel>,
}

/// Curves fixed pointwise by `g`, and fixed intersection points lying on none
/// of them.
pub fn fixed_locus(g: &TorsionAut) -> Result<FixedLocus, FanoError> {
    if g.is_identity() {
        return Err(FanoError::Identity);
    }
    let curves: BTreeSet<CurveLabel> = CurveLabel::all().into_iter().filter(|c| fixes_pointwise(g, c)).collect();
    let isolated_points = PointLabel::all()
        .into_iter()
        .filter(|p| act_on_point(g, p) == *p && !curves.iter().any(|c| p.lies_on(c)))
        .collect();
    Ok(FixedLocus { curves, isolated_points })
}

/// Partition of `items` into `G`-orbits, each orbit sorted, orbits ordered by
/// their least element.
pub fn orbits<T: Ord + Copy>(items: &[T], act: impl Fn(&TorsionAut, &T) -> T) -> Vec<Vec<T>> {
    let group = TorsionAut::all();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut sorted = items.to_vec();
    sorted.sort();
    for x in sorted {
        if seen.contains(&x) {
            continue;
        }
        let orbit: BTreeSet<T> = group.iter().map(|g| act(g, &x)).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

#[derive(Clone, Debug)]
pub struct OrbitCensus {
    pub curve_orbits: Vec<Vec<CurveLabel>>,
    pub point_orbits: Vec<Vec<PointLabel>>,
    /// `η*X_ij = 3 Σ_β E_ij^β`, one entry per pair.
    pub pullbacks: Vec<((u8, u8), Vec<(CurveLabel, i64)>)>,
}

impl OrbitCensus {
    /// `(η*X_a)·(η*X_b)` expanded over the 30-curve pairing.
    pub fn pullback_product(&self, a: usize, b: usize) -> i64 {
        let (_, da) = &self.pullbacks[a];
        let (_, db) = &self.pullbacks[b];
        da.iter().flat_map(|(c1, m1)| db.iter().map(move |(c2, m2)| m1 * m2 * intersection_number(c1, c2))).sum()
    }
}

pub fn orbit_census() -> OrbitCensus {
    let curve_orbits = orbits(&CurveLabel::all(), act_on_curve);
    let point_orbits = orbits(&PointLabel::all(), act_on_point);
    let pullbacks = curve_orbits
        .iter()
        .map(|orbit| {
            // the ramification index along each curve is |pointwise fixer| = 3
            let pair = orbit[0].pair();
            let e = curve_stabilizer(&orbit[0]).pointwise.len() as i64;
            (pair, orbit.iter().map(|c| (*c, e)).collect())
        })
        .collect();
    OrbitCensus { curve_orbits, point_orbits, pullbacks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u8, j: u8, b: u8) -> CurveLabel {
        CurveLabel::new(i, j, b).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(CurveLabel::all().len(), 30);
        assert_eq!(PointLabel::all().len(), 135);
        assert_eq!(TorsionAut::all().len(), 81);
        let set: BTreeSet<_> = TorsionAut::all().into_iter().collect();
        assert_eq!(set.len(), 81);
    }

    #[test]
    fn intersection_cases() {
        assert_eq!(intersection_number(&e(1, 2, 0), &e(3, 4, 1)), 1);
        assert_eq!(intersection_number(&e(1, 2, 0), &e(1, 2, 0)), -3);
        assert_eq!(intersection_number(&e(1, 2, 0), &e(1, 3, 1)), 0);
        assert_eq!(intersection_number(&e(1, 2, 0), &e(1, 2, 1)), 0);
    }

    #[test]
    fn gram_row_sums() {
        let g = gram_matrix();
        for (r, row) in g.iter().enumerate() {
            assert_eq!(row.iter().sum::<i64>(), 6);
            assert_eq!(row[r], -3);
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x, g[c][r]);
            }
        }
    }

    #[test]
    fn action_examples() {
        let g = TorsionAut::new([1, 2, 0, 0, 0]).unwrap();
        assert_eq!(act_on_curve(&g, &e(1, 2, 0)), e(1, 2, 1));
        for c in CurveLabel::all() {
            assert_eq!(act_on_curve(&TorsionAut::IDENTITY, &c), c);
        }
        assert!(TorsionAut::new([1, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn stabilizer_sizes() {
        for c in CurveLabel::all() {
            let s = curve_stabilizer(&c);
            assert_eq!(s.setwise.len(), 27);
            assert_eq!(s.pointwise.len(), 3);
            assert!(s.pointwise.iter().all(|g| s.setwise.contains(g)));
        }
        for p in PointLabel::all() {
            let s = point_stabilizer(&p);
            assert_eq!(s.len(), 9);
            // elementary abelian: every element has order dividing 3
            assert!(s.iter().all(|g| g.compose(g).compose(g).is_identity()));
        }
    }

    #[test]
    fn eigenvalues_reject_outsiders() {
        let p = PointLabel::new(e(1, 2, 0), e(3, 4, 0)).unwrap();
        let g = TorsionAut::new([1, 2, 0, 0, 0]).unwrap();
        assert!(matches!(tangent_eigenvalues(&g, &p), Err(FanoError::NotInStabilizer { .. })));
        assert_eq!(tangent_eigenvalues(&TorsionAut::IDENTITY, &p).unwrap(), (CubeRoot(0), CubeRoot(0)));
    }

    #[test]
    fn fixed_locus_example() {
        let g = TorsionAut::new([0, 0, 1, 1, 1]).unwrap();
        let fl = fixed_locus(&g).unwrap();
        let expected: BTreeSet<_> = (0..3).map(|b| e(1, 2, b)).collect();
        assert_eq!(fl.curves, expected);
        assert_eq!(fixed_locus(&TorsionAut::IDENTITY), Err(FanoError::Identity));
    }

    #[test]
    fn census() {
        let c = orbit_census();
        assert_eq!(c.curve_orbits.len(), 10);
        assert!(c.curve_orbits.iter().all(|o| o.len() == 3));
        assert_eq!(c.point_orbits.len(), 15);
        assert!(c.point_orbits.iter().all(|o| o.len() == 9));
        assert!(c.pullbacks.iter().all(|(_, d)| d.iter().all(|&(_, m)| m == 3)));
    }

    #[test]
    fn orbit_of_a_point() {
        let p = PointLabel::new(e(1, 2, 0), e(3, 4, 0)).unwrap();
        let orbit: BTreeSet<_> = TorsionAut::all().iter().map(|g| act_on_point(g, &p)).collect();
        let expected: BTreeSet<_> =
            (0..3).flat_map(|b| (0..3).map(move |c| PointLabel::new(e(1, 2, b), e(3, 4, c)).unwrap())).collect();
        assert_eq!(orbit, expected);
    }
}
