//! The combinatorial action checked against explicit cone vertices in `Z[ω]⁵`.

use std::collections::BTreeSet;

use fanoball::fano::{
    act_on_curve, act_on_point, curve_stabilizer, fixed_locus, intersection_number, orbit_census, point_stabilizer,
    tangent_eigenvalues, CurveLabel, PointLabel, TorsionAut,
};
use fanoball::surface::{del_pezzo_lattice, FanoSurfaceLattice};
use fanoball::EisensteinInt as Z;

type Vec5 = [Z; 5];

fn vertex(c: &CurveLabel) -> Vec5 {
    let (i, j) = c.pair();
    let mut v = [Z::ZERO; 5];
    v[i as usize - 1] = Z::ONE;
    v[j as usize - 1] = -Z::omega_pow(c.beta().0 as i64);
    v
}

fn apply(g: &TorsionAut, v: &Vec5) -> Vec5 {
    let t = g.exponents();
    let mut out = *v;
    for k in 0..5 {
        out[k] = v[k] * Z::omega_pow(t[k] as i64);
    }
    out
}

fn det3(m: [[Z; 3]; 3]) -> Z {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `w ∈ span(a, b)` iff every 3 × 3 minor of `[a b w]` vanishes.
fn in_span(a: &Vec5, b: &Vec5, w: &Vec5) -> bool {
    for r0 in 0..5 {
        for r1 in r0 + 1..5 {
            for r2 in r1 + 1..5 {
                let m = [[a[r0], b[r0], w[r0]], [a[r1], b[r1], w[r1]], [a[r2], b[r2], w[r2]]];
                if !det3(m).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn proportional(a: &Vec5, b: &Vec5) -> bool {
    (0..5).all(|x| (0..5).all(|y| a[x] * b[y] == a[y] * b[x]))
}

/// Reads the curve label off a vertex `u(eᵢ − ω^β eⱼ)`.
fn label_of(v: &Vec5) -> CurveLabel {
    let support: Vec<usize> = (0..5).filter(|&k| !v[k].is_zero()).collect();
    assert_eq!(support.len(), 2);
    let (i, j) = (support[0], support[1]);
    let ratio = (-v[j]).div_exact(v[i]).unwrap();
    let beta = (0..3).find(|&b| Z::omega_pow(b) == ratio).unwrap();
    CurveLabel::new(i as u8 + 1, j as u8 + 1, beta as u8).unwrap()
}

#[test]
fn vertices_lie_on_the_fermat_cubic() {
    for c in CurveLabel::all() {
        let s: Z = vertex(&c).iter().map(|x| x.pow(3)).sum();
        assert!(s.is_zero(), "{c}");
    }
}

#[test]
fn curve_action_matches_vertex_model() {
    for g in TorsionAut::all() {
        for c in CurveLabel::all() {
            assert_eq!(act_on_curve(&g, &c), label_of(&apply(&g, &vertex(&c))), "{g} on {c}");
        }
    }
}

#[test]
fn point_stabilizer_matches_plane_stabilizer() {
    for p in PointLabel::all() {
        let (a, b) = p.curves();
        let (va, vb) = (vertex(&a), vertex(&b));
        let oracle: Vec<TorsionAut> = TorsionAut::all()
            .into_iter()
            .filter(|g| in_span(&va, &vb, &apply(g, &va)) && in_span(&va, &vb, &apply(g, &vb)))
            .collect();
        assert_eq!(point_stabilizer(&p), oracle, "{p}");
    }
}

#[test]
fn pointwise_fixer_matches_cone_lines() {
    // nine points of the plane cubic x³ + y³ + z³ = 0 with a zero coordinate
    let mut base_points = Vec::new();
    for (x, y) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for b in 0..3 {
            let mut q = [Z::ZERO; 3];
            q[x] = Z::ONE;
            q[y] = -Z::omega_pow(b);
            base_points.push(q);
        }
    }
    for c in CurveLabel::all() {
        let (i, j) = c.pair();
        let rest: Vec<usize> = (0..5).filter(|&k| k != i as usize - 1 && k != j as usize - 1).collect();
        let v = vertex(&c);
        let oracle: Vec<TorsionAut> = TorsionAut::all()
            .into_iter()
            .filter(|g| {
                base_points.iter().all(|q3| {
                    let mut q = [Z::ZERO; 5];
                    for (k, &r) in rest.iter().enumerate() {
                        q[r] = q3[k];
                    }
                    in_span(&v, &q, &apply(g, &v)) && in_span(&v, &q, &apply(g, &q))
                })
            })
            .collect();
        assert_eq!(curve_stabilizer(&c).pointwise, oracle, "{c}");
    }
}

#[test]
fn tangent_eigenvalues_match_vertex_eigenvalues() {
    for p in PointLabel::all() {
        let (a, b) = p.curves();
        for g in point_stabilizer(&p) {
            let (ea, eb) = tangent_eigenvalues(&g, &p).unwrap();
            for (c, e) in [(a, ea), (b, eb)] {
                let v = vertex(&c);
                let gv = apply(&g, &v);
                assert!(proportional(&v, &gv));
                let k = c.pair().0 as usize - 1;
                assert_eq!(gv[k].div_exact(v[k]).unwrap(), Z::omega_pow(e.0 as i64));
            }
        }
    }
}

#[test]
fn group_action_axioms_exhaustive() {
    let group = TorsionAut::all();
    let curves = CurveLabel::all();
    let points = PointLabel::all();
    for g in &group {
        for h in &group {
            let gh = g.compose(h);
            for c in &curves {
                assert_eq!(act_on_curve(&gh, c), act_on_curve(g, &act_on_curve(h, c)));
            }
            for p in &points {
                assert_eq!(act_on_point(&gh, p), act_on_point(g, &act_on_point(h, p)));
            }
        }
        for c1 in &curves {
            for c2 in &curves {
                assert_eq!(
                    intersection_number(&act_on_curve(g, c1), &act_on_curve(g, c2)),
                    intersection_number(c1, c2)
                );
            }
        }
    }
}

#[test]
fn orbit_stabilizer_exhaustive() {
    let group = TorsionAut::all();
    for c in CurveLabel::all() {
        let orbit: BTreeSet<_> = group.iter().map(|g| act_on_curve(g, &c)).collect();
        assert_eq!(orbit.len() * curve_stabilizer(&c).setwise.len(), 81);
    }
    for p in PointLabel::all() {
        let orbit: BTreeSet<_> = group.iter().map(|g| act_on_point(g, &p)).collect();
        assert_eq!(orbit.len() * point_stabilizer(&p).len(), 81);
    }
}

#[test]
fn isolated_fixed_points_and_eigenvalue_criterion() {
    let mut union = BTreeSet::new();
    for g in TorsionAut::all().into_iter().filter(|g| !g.is_identity()) {
        union.extend(fixed_locus(&g).unwrap().isolated_points);
    }
    assert_eq!(union.len(), 135);

    for p in PointLabel::all() {
        let stab = point_stabilizer(&p);
        let mut reps = BTreeSet::new();
        for g in &stab {
            let (a, b) = tangent_eigenvalues(g, &p).unwrap();
            reps.insert((a, b));
            if g.is_identity() {
                continue;
            }
            let isolated = fixed_locus(g).unwrap().isolated_points.contains(&p);
            assert_eq!(isolated, !a.is_one() && !b.is_one(), "{g} at {p}");
        }
        // the representation is all of μ₃ × μ₃
        assert_eq!(reps.len(), 9);
    }
}

#[test]
fn pullbacks_match_del_pezzo_configuration() {
    let census = orbit_census();
    let dp = del_pezzo_lattice().unwrap();
    let n = census.pullbacks.len();
    assert_eq!(n, 10);
    let mut checked = 0;
    for a in 0..n {
        for b in a..n {
            let xa = dp.curve_by_label(census.pullbacks[a].0).unwrap();
            let xb = dp.curve_by_label(census.pullbacks[b].0).unwrap();
            let down = dp.lattice.pair(xa, xb).to_integer();
            assert_eq!(
                num_bigint::BigInt::from(census.pullback_product(a, b)),
                down * 81,
                "{:?} {:?}",
                census.pullbacks[a].0,
                census.pullbacks[b].0
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 55);
}

#[test]
fn sigma_is_twice_canonical_on_curves() {
    let s = FanoSurfaceLattice::new();
    let sigma = s.sigma();
    let k = s.lattice.canonical().clone();
    for c in &s.curves {
        let e = s.curve_class(c);
        let lhs = s.lattice.pair(&sigma, &e);
        assert_eq!(lhs, s.lattice.pair(&k, &e) * num_rational::BigRational::from_integer(2.into()));
        assert_eq!(lhs, num_rational::BigRational::from_integer(6.into()));
    }
}
