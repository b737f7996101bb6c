use std::collections::BTreeSet;

use fanoball::fano::{
    act_on_curve, act_on_point, curve_stabilizer, fixed_locus, gram_matrix, intersection_number, orbit_census,
    point_stabilizer, tangent_eigenvalues, CurveLabel, PointLabel, TorsionAut, ACTION_CONVENTION,
};
use fanoball::surface::{del_pezzo_lattice, FanoSurfaceLattice};
use num_rational::BigRational;

use crate::report::{Checks, Provenance::*};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn notes() -> Vec<String> {
    vec![format!("action convention: {ACTION_CONVENTION}")]
}

/// The case formula read directly off the labels.
fn case_formula(a: &CurveLabel, b: &CurveLabel) -> i64 {
    let (p, q) = (a.pair(), b.pair());
    if a == b {
        -3
    } else if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
        1
    } else {
        0
    }
}

fn uniform_sizes<T>(parts: &[Vec<T>]) -> String {
    let sizes: BTreeSet<usize> = parts.iter().map(Vec::len).collect();
    sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Every non-identity element has order 3 and the group is abelian, so a
/// group of order 9 is `(Z/3)^2`.
fn elementary_rank_two(group: &[TorsionAut]) -> String {
    let abelian = group.iter().all(|g| group.iter().all(|h| g.compose(h) == h.compose(g)));
    let exponent_three = group.iter().all(|g| g.compose(g).compose(g).is_identity());
    match (group.len(), abelian && exponent_three) {
        (9, true) => "(Z/3)^2".to_string(),
        (n, e) => format!("order {n}, elementary {e}"),
    }
}

pub fn run(c: &mut Checks) {
    let curves = CurveLabel::all();
    let points = PointLabel::all();
    let group = TorsionAut::all();

    c.exact("curves.count", Trivial, 30, curves.len());
    c.exact("points.count", Paper, 135, points.len());
    c.exact("group.order", Paper, 81, group.len());

    let gram = gram_matrix();
    let mismatches = curves
        .iter()
        .enumerate()
        .flat_map(|(a, ca)| curves.iter().enumerate().map(move |(b, cb)| (a, b, ca, cb)))
        .filter(|&(a, b, ca, cb)| gram[a][b] != case_formula(ca, cb))
        .count();
    c.exact("gram.case_formula", Paper, "0 mismatches of 900", format!("{mismatches} mismatches of 900"));
    let symmetric = (0..30).all(|a| (0..30).all(|b| gram[a][b] == gram[b][a]));
    c.exact("gram.symmetric", Trivial, true, symmetric);
    let row_sums: BTreeSet<i64> = gram.iter().map(|r| r.iter().sum()).collect();
    c.exact("gram.row_sums", Derived, "6", row_sums.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    let meeting_points: usize = (0..30).map(|a| (a + 1..30).filter(|&b| gram[a][b] == 1).count()).sum();
    c.exact("gram.meeting_pairs", Derived, 135, meeting_points);

    let census = orbit_census();
    c.exact("curve_orbits.count", Paper, 10, census.curve_orbits.len());
    c.exact("curve_orbits.sizes", Paper, "3", uniform_sizes(&census.curve_orbits));
    c.exact("point_orbits.count", Derived, 15, census.point_orbits.len());
    c.exact("point_orbits.sizes", Paper, "9", uniform_sizes(&census.point_orbits));
    let first = PointLabel::new(CurveLabel::new(1, 2, 0).unwrap(), CurveLabel::new(3, 4, 0).unwrap()).unwrap();
    let orbit: BTreeSet<PointLabel> = group.iter().map(|g| act_on_point(g, &first)).collect();
    let expected: BTreeSet<PointLabel> = (0..3)
        .flat_map(|b| {
            (0..3).map(move |g| {
                PointLabel::new(CurveLabel::new(1, 2, b).unwrap(), CurveLabel::new(3, 4, g).unwrap()).unwrap()
            })
        })
        .collect();
    c.exact(
        "point_orbits.e12_e34",
        Paper,
        "the 9 points E12^b.E34^c",
        if orbit == expected {
            "the 9 points E12^b.E34^c".to_string()
        } else {
            format!("{} other points", orbit.len())
        },
    );

    let stabs: Vec<_> = curves.iter().map(curve_stabilizer).collect();
    let setwise: BTreeSet<usize> = stabs.iter().map(|s| s.setwise.len()).collect();
    let pointwise: BTreeSet<usize> = stabs.iter().map(|s| s.pointwise.len()).collect();
    c.exact("curve_stabilizer.order", Paper, "{27}", format!("{setwise:?}"));
    c.exact("curve_stabilizer.pointwise", Paper, "{3}", format!("{pointwise:?}"));
    let nested = stabs.iter().all(|s| s.pointwise.iter().all(|g| s.setwise.contains(g)));
    c.exact("curve_stabilizer.nested", Trivial, true, nested);

    let point_stabs: Vec<Vec<TorsionAut>> = points.iter().map(point_stabilizer).collect();
    let shapes: BTreeSet<String> = point_stabs.iter().map(|s| elementary_rank_two(s)).collect();
    c.exact("point_stabilizer.structure", Paper, "{\"(Z/3)^2\"}", format!("{shapes:?}"));

    let mut axioms = 0usize;
    let mut violations = 0usize;
    for g in &group {
        for h in &group {
            let gh = g.compose(h);
            for x in &curves {
                axioms += 1;
                violations += usize::from(act_on_curve(&gh, x) != act_on_curve(g, &act_on_curve(h, x)));
            }
            for p in &points {
                axioms += 1;
                violations += usize::from(act_on_point(&gh, p) != act_on_point(g, &act_on_point(h, p)));
            }
        }
    }
    c.exact("action.composition", Trivial, format!("0 of {axioms}"), format!("{violations} of {axioms}"));
    let invariant = group.iter().all(|g| {
        curves.iter().all(|a| {
            curves
                .iter()
                .all(|b| intersection_number(&act_on_curve(g, a), &act_on_curve(g, b)) == intersection_number(a, b))
        })
    });
    c.exact("action.pairing_invariant", Trivial, true, invariant);
    let orbit_stabilizer =
        curves.iter().zip(&stabs).all(|(x, s)| {
            group.iter().map(|g| act_on_curve(g, x)).collect::<BTreeSet<_>>().len() * s.setwise.len() == 81
        }) && points
            .iter()
            .zip(&point_stabs)
            .all(|(p, s)| group.iter().map(|g| act_on_point(g, p)).collect::<BTreeSet<_>>().len() * s.len() == 81);
    c.exact("action.orbit_stabilizer", Trivial, true, orbit_stabilizer);

    // eigenvalue criterion over every (point, stabilizer element)
    let mut cases = 0usize;
    let mut agree = 0usize;
    let mut full_rep = 0usize;
    for (p, stab) in points.iter().zip(&point_stabs) {
        let mut reps = BTreeSet::new();
        for g in stab {
            let Ok((a, b)) = tangent_eigenvalues(g, p) else { continue };
            reps.insert((a, b));
            cases += 1;
            let isolated = !g.is_identity() && fixed_locus(g).is_ok_and(|f| f.isolated_points.contains(p));
            agree += usize::from(g.is_identity() || isolated == (!a.is_one() && !b.is_one()));
        }
        full_rep += usize::from(reps.len() == 9);
    }
    c.exact("eigen.criterion", Derived, "1215 of 1215", format!("{agree} of {cases}"));
    c.exact("eigen.representation", Paper, "135 of 135 full mu3^2", format!("{full_rep} of 135 full mu3^2"));

    let mut isolated = BTreeSet::new();
    for g in group.iter().filter(|g| !g.is_identity()) {
        if let Ok(f) = fixed_locus(g) {
            isolated.extend(f.isolated_points);
        }
    }
    c.exact("fixed.isolated_union", Paper, 135, isolated.len());
    let g = TorsionAut::new([0, 0, 1, 1, 1]).unwrap();
    let fixed: Vec<String> =
        fixed_locus(&g).map(|f| f.curves.iter().map(|x| x.to_string()).collect()).unwrap_or_default();
    let want: Vec<String> = (0..3).map(|b| CurveLabel::new(1, 2, b).unwrap().to_string()).collect();
    c.exact("fixed.example_00111", Derived, want.join(" "), fixed.join(" "));

    let ram_point: BTreeSet<usize> = point_stabs.iter().map(Vec::len).collect();
    c.exact("ramification.points", Paper, "{9}", format!("{ram_point:?}"));
    c.exact("ramification.curves", Paper, "{3}", format!("{pointwise:?}"));

    match del_pezzo_lattice() {
        Ok(dp) => {
            let n = census.pullbacks.len();
            let mut ok = 0;
            let mut total = 0;
            for a in 0..n {
                for b in a..n {
                    total += 1;
                    let (Some(xa), Some(xb)) =
                        (dp.curve_by_label(census.pullbacks[a].0), dp.curve_by_label(census.pullbacks[b].0))
                    else {
                        continue;
                    };
                    let down = dp.lattice.pair(xa, xb);
                    ok += usize::from(rat(census.pullback_product(a, b)) == down * rat(81));
                }
            }
            c.exact("pullback.consistency", Derived, "55 of 55", format!("{ok} of {total}"));
        }
        Err(e) => c.error("pullback.consistency", Derived, "55 of 55", e),
    }

    let s = FanoSurfaceLattice::new();
    let sigma = s.sigma();
    let k = s.lattice.canonical().clone();
    let two_k = s.curves.iter().all(|e| {
        let class = s.curve_class(e);
        s.lattice.pair(&sigma, &class) == s.lattice.pair(&k, &class) * rat(2)
    });
    c.exact("sigma.twice_canonical", Paper, true, two_k);
}
