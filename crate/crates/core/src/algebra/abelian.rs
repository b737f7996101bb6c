use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{smith_normal_form, AlgebraError, IntMatrix};

/// Generators of a finite abelian group realised inside `⊕ Z/mᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateModel {
    /// Moduli of the ambient coordinates.
    pub moduli: Vec<u64>,
    /// One residue vector per invariant factor, in the same order.
    pub generators: Vec<Vec<u64>>,
}

impl CoordinateModel {
    /// `Σ cₖ gₖ` reduced coordinatewise.
    pub fn combine(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.moduli.len()];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for (i, (o, x)) in out.iter_mut().zip(g).enumerate() {
                *o = (*o + c * x) % self.moduli[i];
            }
        }
        out
    }
}

/// `Z/d₁ × … × Z/dₖ` with `1 < d₁ | d₂ | … | dₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    coords: Option<CoordinateModel>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self { factors: Vec::new(), coords: None }
    }

    /// Drops factors equal to 1; the rest must form a divisibility chain.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self, AlgebraError> {
        if factors.contains(&0) {
            return Err(AlgebraError::Infinite(factors.iter().filter(|&&d| d == 0).count()));
        }
        let f: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if f.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(AlgebraError::NotAChain(f));
        }
        Ok(Self { factors: f, coords: None })
    }

    /// `⊕ Z/oᵢ` for arbitrary cyclic orders, normalised through SNF.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Self, AlgebraError> {
        let diag: Vec<BigInt> = orders.iter().map(|&o| BigInt::from(o)).collect();
        Self::cokernel(&IntMatrix::diagonal(&diag))
    }

    /// `Zʳ / M·Zᶜ` for an `r × c` relation matrix.
    pub fn cokernel(relations: &IntMatrix) -> Result<Self, AlgebraError> {
        let snf = smith_normal_form(relations);
        let f = snf.invariant_factors();
        let free = relations.rows() - f.len();
        if free > 0 {
            return Err(AlgebraError::Infinite(free));
        }
        Self::from_invariant_factors(f.iter().map(|x| x.to_u64().expect("small factor")).collect())
    }

    pub fn with_coordinates(mut self, model: CoordinateModel) -> Result<Self, AlgebraError> {
        if model.generators.len() != self.factors.len()
            || model.generators.iter().any(|g| g.len() != model.moduli.len())
        {
            return Err(AlgebraError::Dimension(format!(
                "{} generators for {} invariant factors",
                model.generators.len(),
                self.factors.len()
            )));
        }
        self.coords = Some(model);
        Ok(self)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn coordinates(&self) -> Option<&CoordinateModel> {
        self.coords.as_ref()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// `Some(p)` when the group is `(Z/p)ⁿ` with `n ≥ 1`.
    pub fn elementary_prime(&self) -> Option<u64> {
        let p = *self.factors.first()?;
        (super::modp::is_prime(p) && self.factors.iter().all(|&d| d == p)).then_some(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// `(Z/3)^5`, `Z/2 x Z/6`, `trivial`.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if run == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{run}") });
            i += run;
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Invariant factors recovered from `|A[p^j]|` counts, for each prime `p`.
///
/// `torsion_counts(p, j)` must return the number of elements of order
/// dividing `p^j`. Used when the group is only available as an explicit set.
pub fn factors_from_torsion_counts(
    order: u64,
    mut torsion_counts: impl FnMut(u64, u32) -> u64,
) -> Result<FiniteAbelianGroup, AlgebraError> {
    let mut cyclic = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut pk = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            pk += 1;
        }
        // number of cyclic p-factors of order ≥ p^j is log_p(|A[p^j]| / |A[p^{j-1}]|)
        let mut prev = 1u64;
        let mut at_least = Vec::new();
        for j in 1..=pk {
            let c = torsion_counts(p, j);
            let ratio = c / prev;
            let mut n = 0u32;
            let mut t = 1u64;
            while t < ratio {
                t *= p;
                n += 1;
            }
            at_least.push(n);
            prev = c;
        }
        for (j, &n) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..n.saturating_sub(next) {
                cyclic.push(p.pow(j as u32 + 1));
            }
        }
        p += 1;
    }
    FiniteAbelianGroup::from_cyclic_orders(&cyclic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let g = FiniteAbelianGroup::from_invariant_factors(vec![3; 5]).unwrap();
        assert_eq!(g.to_string(), "(Z/3)^5");
        assert_eq!(g.order(), 243);
        assert_eq!(g.elementary_prime(), Some(3));
        let h = FiniteAbelianGroup::from_cyclic_orders(&[2, 3, 2]).unwrap();
        assert_eq!(h.to_string(), "Z/2 x Z/6");
        assert_eq!(h.elementary_prime(), None);
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "trivial");
    }

    #[test]
    fn rejects_broken_chain() {
        assert!(FiniteAbelianGroup::from_invariant_factors(vec![2, 3]).is_err());
        assert!(FiniteAbelianGroup::from_invariant_factors(vec![1, 1, 4]).is_ok());
    }

    #[test]
    fn cokernel_with_free_part() {
        let m = IntMatrix::from_rows(&[[2, 0]]);
        assert!(FiniteAbelianGroup::cokernel(&m).is_ok());
        let m = IntMatrix::from_rows(&[[2], [0]]);
        assert_eq!(FiniteAbelianGroup::cokernel(&m), Err(AlgebraError::Infinite(1)));
    }

    #[test]
    fn torsion_counts_recover_structure() {
        // Z/3 x Z/9 x Z/2: |A[3]| = 9, |A[9]| = 27, |A[2]| = 2
        let g = factors_from_torsion_counts(54, |p, j| match (p, j) {
            (2, 1) => 2,
            (3, 1) => 9,
            (3, 2) => 27,
            (3, 3) => 27,
            _ => unreachable!(),
        })
        .unwrap();
        assert_eq!(g.invariant_factors(), &[3, 18]);
    }
}
