//! Abelian covers branched over a weighted divisor arrangement.
//!
//! A cover branched with index `eᵢ` along `Dᵢ` corresponds to a subgroup of
//! `Div⁰(M, D)/∼`. Over a base whose Picard group is free and on which linear
//! and numerical equivalence agree, that group is the kernel of
//!
//! ```text
//! ⊕ᵢ Z/eᵢ → Pic ⊗ Q/Z,   (aᵢ) ↦ Σ (aᵢ/eᵢ) [Dᵢ]
//! ```
//!
//! and elements are written in branch coordinates `(a₁, …, a_s)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{modp, smith_normal_form, AlgebraError, CoordinateModel, FiniteAbelianGroup, IntMatrix};
use crate::surface::{self, DivisorClass, IntersectionLattice, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NambaError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arrangement has no branch divisors")]
    Empty,
    #[error("branch {0}: weight must be at least 2, got {1}")]
    Weight(usize, u32),
    #[error("branch {0}: class is not an integral class of the lattice")]
    NotInLattice(usize),
    #[error("subgroups live in different ambient groups")]
    AmbientMismatch,
    #[error("generator {0} does not lie in the ambient group")]
    NotMember(usize),
    #[error("ambient group {0} is not elementary abelian")]
    NotElementary(String),
    #[error("index {index} is not a power of {p} dividing the group order")]
    Index { index: u64, p: u64 },
    #[error("branch order lists have lengths {0} and {1}")]
    BranchCount(usize, usize),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub class: DivisorClass,
    pub weight: u32,
    pub label: Option<String>,
}

/// `D = e₁D₁ + … + e_sD_s` on a base with a given intersection lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchArrangement {
    lattice: IntersectionLattice,
    branches: Vec<Branch>,
}

impl BranchArrangement {
    pub fn new(lattice: IntersectionLattice, branches: Vec<Branch>) -> Result<Self, NambaError> {
        if branches.is_empty() {
            return Err(NambaError::Empty);
        }
        for (k, b) in branches.iter().enumerate() {
            if b.weight < 2 {
                return Err(NambaError::Weight(k, b.weight));
            }
            lattice.check_class(&b.class)?;
            if !b.class.is_integral() {
                return Err(NambaError::NotInLattice(k));
            }
        }
        Ok(Self { lattice, branches })
    }

    /// Every branch gets the same weight; labels are left empty.
    pub fn uniform(lattice: IntersectionLattice, classes: Vec<DivisorClass>, weight: u32) -> Result<Self, NambaError> {
        let branches = classes.into_iter().map(|class| Branch { class, weight, label: None }).collect();
        Self::new(lattice, branches)
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn weights(&self) -> Vec<u64> {
        self.branches.iter().map(|b| b.weight as u64).collect()
    }

    /// `K² ` of a cover of the given degree branched along the arrangement.
    pub fn branched_canonical(&self, degree: i64) -> Result<BigRational, NambaError> {
        let branch: Vec<(DivisorClass, u32)> = self.branches.iter().map(|b| (b.class.clone(), b.weight)).collect();
        Ok(surface::branched_canonical(&self.lattice, &branch, degree)?)
    }

    pub fn to_text(&self) -> String {
        let ints = |c: &DivisorClass| -> String {
            c.to_ints().expect("integral class").iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
        };
        let mut out = format!("rank {}\ngram\n", self.lattice.rank());
        for row in self.lattice.gram() {
            out += &row.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            out.push('\n');
        }
        out += &format!("canonical {}\n", ints(self.lattice.canonical()));
        for b in &self.branches {
            out += &format!("branch {} weight {}", ints(&b.class), b.weight);
            if let Some(l) = &b.label {
                out += &format!(" {l}");
            }
            out.push('\n');
        }
        out
    }
}

impl FromStr for BranchArrangement {
    type Err = NambaError;

    /// Line format: `rank N`, `gram` followed by `N` rows, `canonical c₁ … c_N`,
    /// then `branch c₁ … c_N weight e [label]` per divisor. Blank lines and
    /// text after `#` are ignored.
    fn from_str(text: &str) -> Result<Self, NambaError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: &str| NambaError::Parse { line, msg: msg.to_string() };
        let ints = |line: usize, toks: &[&str]| -> Result<Vec<i64>, NambaError> {
            toks.iter()
                .map(|t| t.parse::<i64>().map_err(|_| err(line, &format!("expected an integer, found `{t}`"))))
                .collect()
        };

        let (ln, first) = lines.next().ok_or_else(|| err(1, "empty arrangement"))?;
        let toks: Vec<&str> = first.split_whitespace().collect();
        let n = match toks.as_slice() {
            ["rank", n] => {
                n.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| err(ln, "rank must be a positive integer"))?
            }
            _ => return Err(err(ln, "expected `rank N`")),
        };

        let (ln, g) = lines.next().ok_or_else(|| err(ln + 1, "missing `gram`"))?;
        if g != "gram" {
            return Err(err(ln, "expected `gram`"));
        }
        let mut gram = Vec::with_capacity(n);
        let mut last = ln;
        for _ in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| err(last + 1, "gram matrix has too few rows"))?;
            let row = ints(ln, &row.split_whitespace().collect::<Vec<_>>())?;
            if row.len() != n {
                return Err(err(ln, &format!("gram row has {} entries, expected {n}", row.len())));
            }
            gram.push(row);
            last = ln;
        }

        let (ln, c) = lines.next().ok_or_else(|| err(last + 1, "missing `canonical`"))?;
        let toks: Vec<&str> = c.split_whitespace().collect();
        if toks.first() != Some(&"canonical") {
            return Err(err(ln, "expected `canonical c1 .. cN`"));
        }
        let k = ints(ln, &toks[1..])?;
        if k.len() != n {
            return Err(err(ln, &format!("canonical class has {} entries, expected {n}", k.len())));
        }
        let lattice =
            IntersectionLattice::new(gram, DivisorClass::from_ints(&k)).map_err(|e| err(ln, &e.to_string()))?;
        last = ln;

        let mut branches = Vec::new();
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.first() != Some(&"branch") {
                return Err(err(ln, "expected `branch c1 .. cN weight e [label]`"));
            }
            if toks.len() < n + 3 || toks[n + 1] != "weight" {
                return Err(err(ln, &format!("branch needs {n} coefficients followed by `weight e`")));
            }
            let class = DivisorClass::from_ints(&ints(ln, &toks[1..=n])?);
            let weight = toks[n + 2]
                .parse::<u32>()
                .ok()
                .filter(|&w| w >= 2)
                .ok_or_else(|| err(ln, &format!("weight must be an integer >= 2, found `{}`", toks[n + 2])))?;
            let label = (toks.len() > n + 3).then(|| toks[n + 3..].join(" "));
            branches.push(Branch { class, weight, label });
            last = ln;
        }
        if branches.is_empty() {
            return Err(err(last + 1, "no branch divisors"));
        }
        Self::new(lattice, branches)
    }
}

/// Integer kernel of `m` as the columns of the returned matrix.
fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    IntMatrix::from_fn(n, n - r, |i, j| snf.v[(i, r + j)].clone())
}

/// `Div⁰(M, D)/∼` with generators in branch coordinates.
pub fn divisor_cover_group(arr: &BranchArrangement) -> Result<FiniteAbelianGroup, NambaError> {
    let e = arr.weights();
    let s = e.len();
    let n = arr.lattice.rank();
    let m = e.iter().fold(1u64, |acc, &x| acc.lcm(&x));
    let classes: Vec<Vec<i64>> = arr.branches.iter().map(|b| b.class.to_ints().expect("checked integral")).collect();

    // a ↦ Σ aᵢ (m/eᵢ) cᵢ  must lie in m·Zⁿ: kernel of [A | m·I] on (a, y)
    let big = IntMatrix::from_fn(n, s + n, |r, c| {
        if c < s {
            BigInt::from(classes[c][r]) * BigInt::from(m / e[c])
        } else if c - s == r {
            BigInt::from(m)
        } else {
            BigInt::zero()
        }
    });
    let ker = integer_kernel(&big);
    debug_assert_eq!(ker.cols(), s);
    // projection to a is injective, so the top block is a basis of the lattice
    let basis = IntMatrix::from_fn(s, s, |i, j| ker[(i, j)].clone());

    // relation matrix R = B⁻¹ · diag(e), exact through the Smith form of B
    let sb = smith_normal_form(&basis);
    let diag_e = IntMatrix::diagonal(&e.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    let mut ue = &sb.u * &diag_e;
    for k in 0..s {
        let d = &sb.d[(k, k)];
        for j in 0..s {
            let (q, rem) = ue[(k, j)].div_rem(d);
            assert!(rem.is_zero(), "diag(e) lies in the kernel lattice");
            ue[(k, j)] = q;
        }
    }
    let relations = &sb.v * &ue;

    let sr = smith_normal_form(&relations);
    let factors: Vec<u64> = sr.invariant_factors().iter().map(|x| x.to_u64().expect("small factor")).collect();
    let mut generators = Vec::new();
    let gens_in_a = &basis * &sr.u_inv;
    for (k, d) in factors.iter().enumerate() {
        if *d == 1 {
            continue;
        }
        generators.push((0..s).map(|i| modp::reduce(&gens_in_a[(i, k)], e[i])).collect());
    }
    let group = FiniteAbelianGroup::from_invariant_factors(factors)?;
    Ok(group.with_coordinates(CoordinateModel { moduli: e, generators })?)
}

/// Ambient coordinates of a group: its own model when present, otherwise the
/// standard one on the invariant factors.
fn coordinate_model(g: &FiniteAbelianGroup) -> CoordinateModel {
    g.coordinates().cloned().unwrap_or_else(|| {
        let f = g.invariant_factors().to_vec();
        let generators = (0..f.len()).map(|k| (0..f.len()).map(|i| u64::from(i == k)).collect()).collect();
        CoordinateModel { moduli: f, generators }
    })
}

/// Whether `v` lies in the subgroup of `⊕ Z/mᵢ` generated by `gens`.
fn member(moduli: &[u64], gens: &[Vec<u64>], v: &[u64]) -> bool {
    let s = moduli.len();
    let cols = gens.len() + s;
    let m = IntMatrix::from_fn(s, cols, |i, j| {
        if j < gens.len() {
            BigInt::from(gens[j][i])
        } else if j - gens.len() == i {
            BigInt::from(moduli[i])
        } else {
            BigInt::zero()
        }
    });
    let snf = smith_normal_form(&m);
    let rhs = IntMatrix::from_fn(s, 1, |i, _| BigInt::from(v[i]));
    let w = &snf.u * &rhs;
    (0..s).all(|k| {
        let d = if k < cols { &snf.d[(k, k)] } else { return w[(k, 0)].is_zero() };
        if d.is_zero() {
            w[(k, 0)].is_zero()
        } else {
            w[(k, 0)].is_multiple_of(d)
        }
    })
}

/// Order of the subgroup of `⊕ Z/mᵢ` generated by `gens`.
fn subgroup_order(moduli: &[u64], gens: &[Vec<u64>]) -> u64 {
    let s = moduli.len();
    let m = IntMatrix::from_fn(s, gens.len() + s, |i, j| {
        if j < gens.len() {
            BigInt::from(gens[j][i])
        } else if j - gens.len() == i {
            BigInt::from(moduli[i])
        } else {
            BigInt::zero()
        }
    });
    let cokernel: u64 =
        smith_normal_form(&m).invariant_factors().iter().map(|x| x.to_u64().expect("small factor")).product();
    moduli.iter().product::<u64>() / cokernel
}

/// A subgroup `𝒢(π)` of an ambient `Div⁰(M, D)/∼`, in the ambient's
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverGroup {
    ambient: FiniteAbelianGroup,
    generators: Vec<Vec<u64>>,
}

impl CoverGroup {
    pub fn full(ambient: FiniteAbelianGroup) -> Self {
        let generators = coordinate_model(&ambient).generators;
        Self { ambient, generators }
    }

    pub fn new(ambient: FiniteAbelianGroup, generators: Vec<Vec<u64>>) -> Result<Self, NambaError> {
        let model = coordinate_model(&ambient);
        for (k, g) in generators.iter().enumerate() {
            if g.len() != model.moduli.len() || !member(&model.moduli, &model.generators, g) {
                return Err(NambaError::NotMember(k));
            }
        }
        let generators =
            generators.into_iter().map(|g| g.iter().zip(&model.moduli).map(|(x, m)| x % m).collect()).collect();
        Ok(Self { ambient, generators })
    }

    pub fn ambient(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn moduli(&self) -> Vec<u64> {
        coordinate_model(&self.ambient).moduli
    }

    pub fn order(&self) -> u64 {
        subgroup_order(&self.moduli(), &self.generators)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.moduli().len() && member(&self.moduli(), &self.generators, v)
    }

    /// RREF basis over `F_p` when every coordinate modulus is the prime `p`.
    pub fn echelon_basis(&self) -> Option<Vec<Vec<u64>>> {
        let moduli = self.moduli();
        let p = *moduli.first()?;
        (modp::is_prime(p) && moduli.iter().all(|&m| m == p)).then(|| modp::row_space(&self.generators, p))
    }

    /// Whether the projection to every coordinate is onto.
    pub fn surjects_on_coordinates(&self) -> bool {
        let moduli = self.moduli();
        (0..moduli.len()).all(|i| {
            let g = self.generators.iter().fold(moduli[i], |acc, v| acc.gcd(&v[i]));
            g == 1
        })
    }
}

impl fmt::Display for CoverGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}> of order {}", gens.join(", "), self.order())
    }
}

/// `Some(|g₂| / |g₁|)` when `g₁ ⊆ g₂`, i.e. when the cover of `g₁` factors
/// through the cover of `g₂`.
pub fn factorization_exists(g1: &CoverGroup, g2: &CoverGroup) -> Result<Option<u64>, NambaError> {
    if g1.ambient != g2.ambient {
        return Err(NambaError::AmbientMismatch);
    }
    let contained = match (g1.echelon_basis(), g2.echelon_basis()) {
        (Some(b1), Some(b2)) => {
            let p = g1.moduli()[0];
            b1.iter().all(|v| modp::in_span(&b2, v, p))
        }
        _ => g1.generators.iter().all(|v| g2.contains(v)),
    };
    Ok(contained.then(|| g2.order() / g1.order()))
}

/// A factorization is étale exactly when both covers have the same branch
/// order over every branch divisor.
pub fn etale_check(orders1: &[u32], orders2: &[u32]) -> Result<bool, NambaError> {
    if orders1.len() != orders2.len() {
        return Err(NambaError::BranchCount(orders1.len(), orders2.len()));
    }
    Ok(orders1 == orders2)
}

#[derive(Clone, Debug)]
pub struct SubgroupCensus {
    pub count: usize,
    /// Sorted by the echelon basis in abstract coordinates.
    pub subgroups: Vec<CoverGroup>,
}

/// All `k`-dimensional subspaces of `F_pⁿ` as RREF bases, in lexicographic
/// order of (pivot columns, free entries).
fn echelon_subspaces(n: usize, k: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    fn pivots(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for c in start..n {
            acc.push(c);
            pivots(n, k, c + 1, acc, out);
            acc.pop();
        }
    }
    let mut sets = Vec::new();
    pivots(n, k, 0, &mut Vec::new(), &mut sets);
    let mut out = Vec::new();
    for piv in sets {
        // free slots: (row r, column c) with c > piv[r] and c not a pivot
        let slots: Vec<(usize, usize)> =
            (0..k).flat_map(|r| (piv[r] + 1..n).filter(|c| !piv.contains(c)).map(move |c| (r, c))).collect();
        let total = p.pow(slots.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut x = code;
            for &(r, c) in slots.iter().rev() {
                rows[r][c] = x % p;
                x /= p;
            }
            out.push(rows);
        }
    }
    out
}

/// Every subgroup of the given index in an elementary abelian group.
pub fn subgroup_census(ambient: &FiniteAbelianGroup, index: u64) -> Result<SubgroupCensus, NambaError> {
    if ambient.is_trivial() {
        return if index == 1 {
            Ok(SubgroupCensus { count: 1, subgroups: vec![CoverGroup::full(ambient.clone())] })
        } else {
            Err(NambaError::Index { index, p: 1 })
        };
    }
    let p = ambient.elementary_prime().ok_or_else(|| NambaError::NotElementary(ambient.to_string()))?;
    let n = ambient.rank();
    let mut codim = 0usize;
    let mut t = index;
    while t > 1 && t.is_multiple_of(p) {
        t /= p;
        codim += 1;
    }
    if t != 1 || codim > n {
        return Err(NambaError::Index { index, p });
    }
    let model = coordinate_model(ambient);
    let subgroups: Vec<CoverGroup> = echelon_subspaces(n, n - codim, p)
        .into_iter()
        .map(|basis| CoverGroup {
            ambient: ambient.clone(),
            generators: basis.iter().map(|c| model.combine(c)).collect(),
        })
        .collect();
    Ok(SubgroupCensus { count: subgroups.len(), subgroups })
}

/// Every element of the subgroup, by closure under the generators.
pub fn enumerate_elements(g: &CoverGroup) -> BTreeSet<Vec<u64>> {
    let moduli = g.moduli();
    let zero = vec![0u64; moduli.len()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for gen in &g.generators {
            let y: Vec<u64> = x.iter().zip(gen).zip(&moduli).map(|((a, b), m)| (a + b) % m).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn plane(classes: &[i64], weight: u32) -> BranchArrangement {
        let lattice = IntersectionLattice::new(vec![vec![1]], DivisorClass::from_ints(&[-3])).unwrap();
        BranchArrangement::uniform(lattice, classes.iter().map(|&c| DivisorClass::from_ints(&[c])).collect(), weight)
            .unwrap()
    }

    /// Every tuple in `∏ Z/eᵢ` whose fractional divisor is integral.
    fn brute_kernel(arr: &BranchArrangement) -> BTreeSet<Vec<u64>> {
        let e = arr.weights();
        let classes: Vec<Vec<i64>> = arr.branches().iter().map(|b| b.class.to_ints().unwrap()).collect();
        let n = arr.lattice().rank();
        let total: u64 = e.iter().product();
        let mut out = BTreeSet::new();
        for code in 0..total {
            let mut a = Vec::new();
            let mut x = code;
            for &ei in &e {
                a.push(x % ei);
                x /= ei;
            }
            let integral = (0..n).all(|r| {
                let s: BigRational = a
                    .iter()
                    .zip(&e)
                    .zip(&classes)
                    .map(|((&ai, &ei), c)| BigRational::new(BigInt::from(ai as i64 * c[r]), BigInt::from(ei)))
                    .sum();
                s.is_integer()
            });
            if integral {
                out.insert(a);
            }
        }
        out
    }

    fn elements_of(g: &FiniteAbelianGroup) -> BTreeSet<Vec<u64>> {
        enumerate_elements(&CoverGroup::full(g.clone()))
    }

    #[test]
    fn six_lines_in_the_plane() {
        let arr = plane(&[1; 6], 3);
        let g = divisor_cover_group(&arr).unwrap();
        assert_eq!(g.to_string(), "(Z/3)^5");
        let expected: BTreeSet<Vec<u64>> = brute_kernel(&arr);
        assert_eq!(expected.len(), 243);
        assert!(expected.iter().all(|a| a.iter().sum::<u64>() % 3 == 0));
        assert_eq!(elements_of(&g), expected);
    }

    #[test]
    fn single_line_weight_two_is_trivial() {
        let arr = plane(&[1], 2);
        let g = divisor_cover_group(&arr).unwrap();
        assert!(g.is_trivial());
        assert_eq!(brute_kernel(&arr).len(), 1);
    }

    #[test]
    fn mixed_weights_match_brute_force() {
        for (classes, weights) in
            [(vec![1, 1, 2], vec![2, 3, 5]), (vec![1, 2, 1, 1], vec![2, 2, 3, 3]), (vec![2, 2, 2], vec![2, 2, 2])]
        {
            let lattice = IntersectionLattice::new(vec![vec![1]], DivisorClass::from_ints(&[-3])).unwrap();
            let branches = classes
                .iter()
                .zip(&weights)
                .map(|(&c, &w)| Branch { class: DivisorClass::from_ints(&[c]), weight: w, label: None })
                .collect();
            let arr = BranchArrangement::new(lattice, branches).unwrap();
            let g = divisor_cover_group(&arr).unwrap();
            assert_eq!(elements_of(&g), brute_kernel(&arr), "{classes:?} {weights:?}");
        }
    }

    #[test]
    fn rejects_bad_arrangements() {
        let lattice = IntersectionLattice::new(vec![vec![1]], DivisorClass::from_ints(&[-3])).unwrap();
        let half = DivisorClass::from_rationals(vec![BigRational::new(1.into(), 2.into())]);
        let b = |class, weight| vec![Branch { class, weight, label: None }];
        assert_eq!(BranchArrangement::new(lattice.clone(), b(half, 3)), Err(NambaError::NotInLattice(0)));
        assert_eq!(
            BranchArrangement::new(lattice.clone(), b(DivisorClass::from_ints(&[1]), 1)),
            Err(NambaError::Weight(0, 1))
        );
        assert!(matches!(
            BranchArrangement::new(lattice.clone(), b(DivisorClass::from_ints(&[1, 0]), 3)),
            Err(NambaError::Surface(_))
        ));
        assert_eq!(BranchArrangement::new(lattice, vec![]), Err(NambaError::Empty));
    }

    #[test]
    fn text_format() {
        let text =
            "# plane\nrank 1\ngram\n1\ncanonical -3\n\nbranch 1 weight 3 first line\nbranch 1 weight 3 # trailing\n";
        let arr: BranchArrangement = text.parse().unwrap();
        assert_eq!(arr.branches().len(), 2);
        assert_eq!(arr.branches()[0].label.as_deref(), Some("first line"));
        assert_eq!(arr.branches()[1].label, None);
        assert_eq!(arr.to_text().parse::<BranchArrangement>().unwrap(), arr);

        let line_of = |t: &str| match t.parse::<BranchArrangement>() {
            Err(NambaError::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line_of("rank 2\ngram\n1 0\n0 1\ncanonical -3\nbranch 1 0 weight 3\n"), 5);
        assert_eq!(line_of("rank 1\ngram\n1\ncanonical -3\nbranch 1 weight 1\n"), 5);
        assert_eq!(line_of("rank 1\ngram\nx\n"), 3);
        assert_eq!(line_of("rank 1\ngram\n1\ncanonical -3\n"), 5);
        assert_eq!(line_of("rank 2\ngram\n1 2\n3 1\ncanonical 0 0\nbranch 1 1 weight 2\n"), 5);
        assert_eq!(line_of(""), 1);
    }

    #[test]
    fn census_counts() {
        let g35 = FiniteAbelianGroup::from_invariant_factors(vec![3; 5]).unwrap();
        let c = subgroup_census(&g35, 3).unwrap();
        assert_eq!(c.count, 121);
        assert!(c.subgroups.iter().all(|h| h.order() == 81));
        let distinct: BTreeSet<_> = c.subgroups.iter().map(enumerate_elements).collect();
        assert_eq!(distinct.len(), 121);

        let g32 = FiniteAbelianGroup::from_invariant_factors(vec![3; 2]).unwrap();
        assert_eq!(subgroup_census(&g32, 3).unwrap().count, 4);
        assert_eq!(subgroup_census(&g32, 1).unwrap().count, 1);
        assert_eq!(subgroup_census(&g32, 9).unwrap().count, 1);
        assert_eq!(subgroup_census(&g35, 1).unwrap().count, 1);
        assert_eq!(subgroup_census(&g35, 2).unwrap_err(), NambaError::Index { index: 2, p: 3 });
        assert!(subgroup_census(&g32, 27).is_err());
        let mixed = FiniteAbelianGroup::from_invariant_factors(vec![3, 9]).unwrap();
        assert!(matches!(subgroup_census(&mixed, 3), Err(NambaError::NotElementary(_))));
    }

    #[test]
    fn census_matches_brute_force_for_small_groups() {
        // subgroups of (Z/2)^3 and (Z/3)^2 by closure of every generator pair
        for (p, n) in [(2u64, 3usize), (3, 2), (2, 4)] {
            let g = FiniteAbelianGroup::from_invariant_factors(vec![p; n]).unwrap();
            let elems: Vec<Vec<u64>> = elements_of(&g).into_iter().collect();
            let mut by_order: std::collections::BTreeMap<u64, BTreeSet<BTreeSet<Vec<u64>>>> = Default::default();
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        let h = CoverGroup::new(g.clone(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
                        let set = enumerate_elements(&h);
                        by_order.entry(set.len() as u64).or_default().insert(set);
                    }
                }
            }
            let order = g.order();
            for (ord, subs) in by_order {
                if n > 3 && order / ord > p * p {
                    continue;
                }
                assert_eq!(subgroup_census(&g, order / ord).unwrap().count, subs.len(), "p={p} n={n} |H|={ord}");
            }
        }
    }

    #[test]
    fn factorization_examples() {
        let g = divisor_cover_group(&plane(&[1; 6], 3)).unwrap();
        let full = CoverGroup::full(g.clone());
        let census = subgroup_census(&g, 3).unwrap();
        let (h1, h2) = (&census.subgroups[0], &census.subgroups[1]);
        assert_eq!(factorization_exists(h1, &full).unwrap(), Some(3));
        assert_eq!(factorization_exists(&full, &full).unwrap(), Some(1));
        assert_eq!(factorization_exists(h1, h2).unwrap(), None);
        assert_eq!(factorization_exists(&full, h1).unwrap(), None);
        let other = FiniteAbelianGroup::from_invariant_factors(vec![3; 5]).unwrap();
        assert_eq!(factorization_exists(h1, &CoverGroup::full(other)), Err(NambaError::AmbientMismatch));
        assert_eq!(full.order(), 243);
        assert_eq!(h1.order() * 3, full.order());
    }

    #[test]
    fn generators_outside_ambient_rejected() {
        let g = divisor_cover_group(&plane(&[1; 6], 3)).unwrap();
        assert_eq!(CoverGroup::new(g.clone(), vec![vec![1, 0, 0, 0, 0, 0]]), Err(NambaError::NotMember(0)));
        assert!(CoverGroup::new(g, vec![vec![1, 2, 0, 0, 0, 0]]).is_ok());
    }

    #[test]
    fn etale_examples() {
        assert_eq!(etale_check(&[3; 10], &[3; 10]), Ok(true));
        let mut one = [3u32; 10];
        one[0] = 1;
        assert_eq!(etale_check(&[3; 10], &one), Ok(false));
        assert_eq!(etale_check(&[3; 2], &[3; 3]), Err(NambaError::BranchCount(2, 3)));
        // degree-9 cover of a line, three branch points of index 3
        assert_eq!(surface::riemann_hurwitz(9, 2, &[(3, 3)]).unwrap(), 0);
        assert_eq!(9 * 2 - 3 * (9 - 3), 0);
    }

    proptest! {
        #[test]
        fn group_order_matches_image(
            classes in prop::collection::vec(-3i64..=3, 1..=8),
        ) {
            let arr = plane(&classes, 3);
            let g = divisor_cover_group(&arr).unwrap();
            let kernel = brute_kernel(&arr);
            // image of the coefficient map in (1/3)Z/Z
            let image: BTreeSet<i64> = (0..3u64.pow(classes.len() as u32))
                .map(|code| {
                    let mut x = code;
                    let s: i64 = classes.iter().map(|c| { let a = (x % 3) as i64; x /= 3; a * c }).sum();
                    s.rem_euclid(3)
                })
                .collect();
            prop_assert_eq!(g.order() as usize, kernel.len());
            prop_assert_eq!(g.order() * image.len() as u64, 3u64.pow(classes.len() as u32));
            prop_assert_eq!(elements_of(&g), kernel);
        }

        #[test]
        fn factorization_is_a_partial_order(
            a in prop::collection::vec(prop::collection::vec(0u64..3, 4), 0..3),
            b in prop::collection::vec(prop::collection::vec(0u64..3, 4), 0..3),
            c in prop::collection::vec(prop::collection::vec(0u64..3, 4), 0..3),
        ) {
            let g = FiniteAbelianGroup::from_invariant_factors(vec![3; 4]).unwrap();
            let mk = |gens: &Vec<Vec<u64>>| CoverGroup::new(g.clone(), gens.clone()).unwrap();
            let (ha, hb, hc) = (mk(&a), mk(&b), mk(&c));
            let le = |x: &CoverGroup, y: &CoverGroup| factorization_exists(x, y).unwrap().is_some();
            prop_assert!(le(&ha, &ha));
            if le(&ha, &hb) && le(&hb, &hc) {
                prop_assert!(le(&ha, &hc));
            }
            if le(&ha, &hb) && le(&hb, &ha) {
                prop_assert_eq!(ha.echelon_basis(), hb.echelon_basis());
            }
            let (ea, eb) = (enumerate_elements(&ha), enumerate_elements(&hb));
            prop_assert_eq!(le(&ha, &hb), ea.is_subset(&eb));
            prop_assert_eq!(ha.order() as usize, ea.len());
        }
    }
}
