//! Cover groups over the del Pezzo quotient, built from the lattice module.

use std::collections::BTreeSet;

use fanoball::namba::{
    divisor_cover_group, enumerate_elements, factorization_exists, subgroup_census, BranchArrangement, CoverGroup,
};
use fanoball::surface::del_pezzo_lattice;

fn ten_curves() -> BranchArrangement {
    let dp = del_pezzo_lattice().unwrap();
    BranchArrangement::uniform(dp.lattice.clone(), dp.curves.clone(), 3).unwrap()
}

#[test]
fn ten_curves_group_is_rank_five() {
    let arr = ten_curves();
    let g = divisor_cover_group(&arr).unwrap();
    assert_eq!(g.to_string(), "(Z/3)^5");

    // oracle: tuples a ∈ F₃¹⁰ with Σ aᵢ cᵢ ≡ 0 mod 3 coefficientwise
    let classes: Vec<Vec<i64>> = arr.branches().iter().map(|b| b.class.to_ints().unwrap()).collect();
    let mut kernel = BTreeSet::new();
    for code in 0..3u64.pow(10) {
        let a: Vec<u64> = (0..10).map(|k| code / 3u64.pow(k) % 3).collect();
        if (0..5).all(|r| (0..10).map(|i| a[i] as i64 * classes[i][r]).sum::<i64>().rem_euclid(3) == 0) {
            kernel.insert(a);
        }
    }
    assert_eq!(enumerate_elements(&CoverGroup::full(g)), kernel);
}

#[test]
fn degree_three_factorization_through_the_full_cover() {
    let g = divisor_cover_group(&ten_curves()).unwrap();
    let full = CoverGroup::full(g.clone());
    let census = subgroup_census(&g, 3).unwrap();
    assert_eq!(census.count, 121);
    for h in &census.subgroups {
        assert_eq!(h.order(), 81);
        assert_eq!(factorization_exists(h, &full).unwrap(), Some(3));
    }
    assert_eq!(full.order(), 81 * 3);
}

#[test]
fn coordinate_surjectivity_census() {
    let g = divisor_cover_group(&ten_curves()).unwrap();
    let census = subgroup_census(&g, 3).unwrap();
    let surjective = census.subgroups.iter().filter(|h| h.surjects_on_coordinates()).count();

    // oracle: H fails exactly when some coordinate vanishes on all of H
    let brute = census
        .subgroups
        .iter()
        .filter(|h| {
            let elems = enumerate_elements(h);
            (0..10).all(|i| elems.iter().any(|v| v[i] != 0))
        })
        .count();
    assert_eq!(surjective, brute);
    // the ten coordinate functionals are pairwise non-proportional on the group
    assert_eq!(surjective, 121 - 10);
}

#[test]
fn bundled_text_round_trip() {
    let arr = ten_curves();
    let back: BranchArrangement = arr.to_text().parse().unwrap();
    assert_eq!(back, arr);
    assert_eq!(back.branched_canonical(81).unwrap(), num_rational::BigRational::from_integer(45.into()));
}
