use std::collections::BTreeSet;

use fanoball::namba::{
    divisor_cover_group, enumerate_elements, etale_check, factorization_exists, subgroup_census, BranchArrangement,
    CoverGroup,
};
use fanoball::surface::{riemann_hurwitz, DivisorClass, IntersectionLattice};

use crate::data;
use crate::report::{Checks, Provenance::*};

pub fn notes() -> Vec<String> {
    vec![
        "cover groups are computed in branch coordinates: tuples a with sum (a_i/e_i) D_i integral".to_string(),
        "which index-3 subgroup belongs to the quotient map is not decided; only census constraints are reported"
            .to_string(),
    ]
}

/// Tuples `a ∈ ⊕ Z/eᵢ` with `Σ (aᵢ/eᵢ) cᵢ` integral, by exhaustive scan.
pub fn brute_force_kernel(arr: &BranchArrangement) -> BTreeSet<Vec<u64>> {
    let weights = arr.weights();
    let classes: Vec<Vec<i64>> = arr.branches().iter().map(|b| b.class.to_ints().unwrap_or_default()).collect();
    let m = weights.iter().fold(1u64, |acc, &e| lcm(acc, e)) as i64;
    let rank = arr.lattice().rank();
    let total: u64 = weights.iter().product();
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut rest = code;
        let a: Vec<u64> = weights
            .iter()
            .map(|&e| {
                let x = rest % e;
                rest /= e;
                x
            })
            .collect();
        let integral = (0..rank).all(|r| {
            let s: i64 = (0..a.len()).map(|i| a[i] as i64 * (m / weights[i] as i64) * classes[i][r]).sum();
            s.rem_euclid(m) == 0
        });
        if integral {
            out.insert(a);
        }
    }
    out
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

pub fn run(c: &mut Checks) {
    let p2 = match data::p2_quadrilateral() {
        Ok(a) => a,
        Err(e) => return c.error("arrangement.p2", Paper, "rank 1, 6 branches", e),
    };
    let dp5 = match data::dp5_ten_curves() {
        Ok(a) => a,
        Err(e) => return c.error("arrangement.dp5", Paper, "rank 5, 10 branches", e),
    };
    let shape = |a: &BranchArrangement| format!("rank {}, {} branches", a.lattice().rank(), a.branches().len());
    c.exact("arrangement.p2", Paper, "rank 1, 6 branches", shape(&p2));
    c.exact("arrangement.dp5", Paper, "rank 5, 10 branches", shape(&dp5));

    for (tag, arr) in [("p2", &p2), ("dp5", &dp5)] {
        let id = format!("cover_group.{tag}");
        let group = match divisor_cover_group(arr) {
            Ok(g) => g,
            Err(e) => {
                c.error(&id, Paper, "(Z/3)^5", e);
                continue;
            }
        };
        c.exact(&id, Paper, "(Z/3)^5", &group);
        let elements = enumerate_elements(&CoverGroup::full(group));
        let oracle = brute_force_kernel(arr);
        c.exact(
            &format!("{id}.oracle"),
            Derived,
            format!("{} tuples", oracle.len()),
            if elements == oracle { format!("{} tuples", elements.len()) } else { "differs".to_string() },
        );
    }

    // the P² group is exactly {Σ aᵢ ≡ 0 mod 3}
    let zero_sum: BTreeSet<Vec<u64>> = (0..3u64.pow(6))
        .map(|code| (0..6).map(|k| code / 3u64.pow(k) % 3).collect::<Vec<u64>>())
        .filter(|a| a.iter().sum::<u64>() % 3 == 0)
        .collect();
    match divisor_cover_group(&p2) {
        Ok(g) => c.exact("cover_group.p2.zero_sum", Paper, true, enumerate_elements(&CoverGroup::full(g)) == zero_sum),
        Err(e) => c.error("cover_group.p2.zero_sum", Paper, true, e),
    }

    let single = IntersectionLattice::new(vec![vec![1]], DivisorClass::from_ints(&[-3]))
        .map_err(|e| e.to_string())
        .and_then(|l| BranchArrangement::uniform(l, vec![DivisorClass::from_ints(&[1])], 2).map_err(|e| e.to_string()))
        .and_then(|a| divisor_cover_group(&a).map_err(|e| e.to_string()));
    match single {
        Ok(g) => c.exact("cover_group.single_line_e2", Derived, "trivial", g),
        Err(e) => c.error("cover_group.single_line_e2", Derived, "trivial", e),
    }

    match dp5.branched_canonical(81) {
        Ok(v) => c.exact("cover.k_squared", Paper, 45, v),
        Err(e) => c.error("cover.k_squared", Paper, 45, e),
    }

    let Ok(group) = divisor_cover_group(&dp5) else { return };
    let full = CoverGroup::full(group.clone());
    let census = match subgroup_census(&group, 3) {
        Ok(s) => s,
        Err(e) => return c.error("census.index3", Derived, 121, e),
    };
    c.exact("census.index3", Derived, 121, census.count);
    let degrees: BTreeSet<String> = census
        .subgroups
        .iter()
        .map(|h| match factorization_exists(h, &full) {
            Ok(Some(d)) => format!("degree {d}"),
            Ok(None) => "none".to_string(),
            Err(e) => e.to_string(),
        })
        .collect();
    c.exact("factorization.index3_into_full", Paper, "{\"degree 3\"}", format!("{degrees:?}"));
    c.exact(
        "factorization.reflexive",
        Trivial,
        "Some(1)",
        format!("{:?}", factorization_exists(&full, &full).ok().flatten()),
    );
    if let [h1, h2, ..] = census.subgroups.as_slice() {
        c.exact(
            "factorization.distinct_hyperplanes",
            Derived,
            "None",
            format!("{:?}", factorization_exists(h1, h2).ok().flatten()),
        );
    }
    let orders: BTreeSet<u64> = census.subgroups.iter().map(CoverGroup::order).collect();
    c.exact(
        "degree.bookkeeping",
        Derived,
        "243 = 81·3",
        format!("{} = {}·3", full.order(), orders.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    );

    let surjective = census.subgroups.iter().filter(|h| h.surjects_on_coordinates()).count();
    c.exact("census.coordinate_surjective", Derived, "121 - 10 = 111", format!("121 - 10 = {surjective}"));
    c.exact("census.trivial_index", Trivial, 1, subgroup_census(&group, 1).map(|s| s.count).unwrap_or(0));

    c.exact("etale.eta_vs_eta3", Paper, "Ok(true)", format!("{:?}", etale_check(&[3; 10], &[3; 10])));
    let mut ramified = [3u32; 10];
    ramified[0] = 1;
    c.exact("etale.mismatch", Trivial, "Ok(false)", format!("{:?}", etale_check(&ramified, &[3; 10])));
    match riemann_hurwitz(9, 2, &[(3, 3)]) {
        Ok(v) => c.exact("etale.curve_riemann_hurwitz", Derived, 0, v),
        Err(e) => c.error("etale.curve_riemann_hurwitz", Derived, 0, e),
    }
}
