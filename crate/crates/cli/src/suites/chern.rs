use fanoball::fano::CurveLabel;
use fanoball::surface::{
    branched_canonical, config_euler, del_pezzo_lattice, hirzebruch_invariants, log_chern, riemann_hurwitz,
    solve_base_euler, stratified_euler, DivisorClass, FanoSurfaceLattice, LogChern, FANO_EULER, FANO_K_DOT_E,
    FANO_K_SQUARED,
};
use num_rational::BigRational;

use crate::report::{Checks, Provenance::*};

pub fn notes() -> Vec<String> {
    vec![format!(
        "input data: K_S^2 = {FANO_K_SQUARED}, K_S.E = {FANO_K_DOT_E}, chi(S) = {FANO_EULER} are taken as given"
    )]
}

fn ratio(l: &LogChern) -> String {
    if l.equality {
        format!("{}=3·{}", l.c1_sq, l.c2)
    } else {
        format!("{} vs 3·{}", l.c1_sq, l.c2)
    }
}

pub fn run(c: &mut Checks) {
    let dp = match del_pezzo_lattice() {
        Ok(dp) => dp,
        Err(e) => {
            c.error("dp5.lattice", Paper, "rank 5", e);
            return;
        }
    };
    c.exact("dp5.k_squared", Paper, 5, dp.lattice.k_squared());
    let k = dp.lattice.canonical();
    let minus_one =
        dp.curves.iter().filter(|x| dp.lattice.square(x) == rat(-1) && dp.lattice.pair(k, x) == rat(-1)).count();
    c.exact("dp5.minus_one_curves", Trivial, 10, minus_one);
    let petersen = (0..10).all(|a| {
        (0..10).all(|b| {
            let (p, q) = (dp.labels[a], dp.labels[b]);
            let want = if a == b {
                -1
            } else if p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1 {
                1
            } else {
                0
            };
            dp.lattice.pair(&dp.curves[a], &dp.curves[b]) == rat(want)
        })
    });
    c.exact("dp5.pair_labels", Derived, true, petersen);

    // 3⁴ K_X² = (η*K_X)² = (−3K_S)² = 9·45
    let lifted = 9 * FANO_K_SQUARED;
    let k_x = if lifted % 81 == 0 { (lifted / 81).to_string() } else { format!("{lifted}/81") };
    c.exact("k_x.from_cover", Paper, 5, k_x);

    let cfg = dp.curve_config();
    let sigma_prime = config_euler(&cfg);
    let i_prime = cfg.points.len() as i64;
    c.exact("sigma_prime.euler", Paper, 5, sigma_prime);
    c.exact("i_prime.count", Paper, 15, i_prime);
    let strata = [(sigma_prime - i_prime, 27), (i_prime, 9)];
    match solve_base_euler(FANO_EULER, 81, &strata) {
        Ok(chi) => c.exact("chi_x.stratified", Paper, 7, chi),
        Err(e) => c.error("chi_x.stratified", Paper, 7, e),
    }
    let chi_x = 2 + dp.lattice.rank() as i64;
    c.exact("chi_x.rational_surface", Trivial, 7, chi_x);
    let open = chi_x - sigma_prime;
    c.exact("stratified.s", Paper, 27, stratified_euler(&[(open, 81), (sigma_prime - i_prime, 27), (i_prime, 9)]));
    c.exact("stratified.h3", Derived, 81, stratified_euler(&[(open, 243), (sigma_prime - i_prime, 81), (i_prime, 27)]));
    c.exact(
        "stratified.s_curves",
        Derived,
        -135,
        config_euler(&FanoSurfaceLattice::new().curve_config(&CurveLabel::all())),
    );

    // 0 = χ(E) = 9(χ(X_ij) − 3) + 3·3
    match solve_base_euler(0, 9, &[(3, 3)]) {
        Ok(chi) => c.exact("quotient_curve.euler", Paper, 2, chi),
        Err(e) => c.error("quotient_curve.euler", Paper, 2, e),
    }
    match riemann_hurwitz(9, 2, &[(3, 3)]) {
        Ok(chi) => c.exact("quotient_curve.riemann_hurwitz", Derived, 0, chi),
        Err(e) => c.error("quotient_curve.riemann_hurwitz", Derived, 0, e),
    }

    let branch: Vec<(DivisorClass, u32)> = dp.curves.iter().map(|x| (x.clone(), 3)).collect();
    for (id, degree, want, prov) in [("branched.s", 81, 45, Paper), ("branched.h3", 243, 135, Derived)] {
        match branched_canonical(&dp.lattice, &branch, degree) {
            Ok(v) => c.exact(id, prov, want, v),
            Err(e) => c.error(id, prov, want, e),
        }
    }
    match branched_canonical(&dp.lattice, &[], 1) {
        Ok(v) => c.exact("branched.unbranched", Trivial, 5, v),
        Err(e) => c.error("branched.unbranched", Trivial, 5, e),
    }

    // D = twelve disjoint elliptic curves: K·D = 12·3, D² = 12·(−3)
    let s = log_chern(FANO_K_SQUARED, 12 * FANO_K_DOT_E, -12 * 3, FANO_EULER, 0);
    c.exact("log_chern.S", Paper, "81=3·27", ratio(&s));
    c.exact("log_chern.S.inequality", Paper, true, s.inequality);
    let h3 = log_chern(135, 108, -108, 81, 0);
    c.exact("log_chern.H3", Derived, "243=3·81", ratio(&h3));
    let empty = log_chern(5, 0, 0, 7, 0);
    c.exact("log_chern.empty", Trivial, "(5, 7)", format!("({}, {})", empty.c1_sq, empty.c2));

    for (id, n, want, prov) in [
        ("hirzebruch.n5", 5, "(5625, 1875)", Paper),
        ("hirzebruch.n3", 3, "(135, 81)", Derived),
        ("hirzebruch.n2", 2, "(0, 24)", Derived),
    ] {
        match hirzebruch_invariants(n) {
            Ok(v) => c.exact(id, prov, want, format!("{v:?}")),
            Err(e) => c.error(id, prov, want, e),
        }
    }
    let equal: Vec<String> = (2..=12)
        .filter(|&n| hirzebruch_invariants(n).is_ok_and(|(c1, c2)| c1 == 3 * c2))
        .map(|n| n.to_string())
        .collect();
    c.exact("hirzebruch.ratio_three", Derived, "n = 5", format!("n = {}", equal.join(",")));
    let c2_formula = (2..=12i64).all(|n| {
        hirzebruch_invariants(n as u32).is_ok_and(|(_, c2)| c2 == 2 * n.pow(5) - 10 * n.pow(4) + 15 * n.pow(3))
    });
    c.exact("hirzebruch.c2_closed_form", Derived, true, c2_formula);
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
