use std::f64::consts::PI;

use fanoball::dm::{
    enumerate_int, int_condition, parse_mu, period, period_rank, period_with_branch, MuTuple, PairStatus, PointConfig,
};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::function::beta::beta;

use crate::report::{Checks, Provenance::*};

const BETA_TOLERANCE: f64 = 1e-6;
const RANK_CONFIGS: usize = 5;

pub fn notes() -> Vec<String> {
    vec![
        "INT: for i != j with mu_i + mu_j < 1, (1 - mu_i - mu_j)^-1 must be an integer; the condition is taken from the hypergeometric lattice literature".to_string(),
        "periods use the principal argument of each factor at the segment midpoint, continued along the segment".to_string(),
        format!("period_rank: {RANK_CONFIGS} seeded configurations, 8 samples each, perturbation 0.02, relative threshold 1e-6"),
    ]
}

fn tuple_summary(m: &MuTuple) -> String {
    let n: Vec<String> = m.n().iter().map(i64::to_string).collect();
    format!("d = {}, n = ({})", m.d(), n.join(","))
}

fn certificate(m: &MuTuple) -> String {
    let c = int_condition(m);
    let exempt = c.pairs.iter().filter(|p| p.status == PairStatus::Exempt).count();
    format!("{}, {exempt} exempt", c.holds)
}

pub fn run(c: &mut Checks) {
    let ball = parse_mu("1/3,1/3,1/3,1/3,2/3");
    let fifths = parse_mu("2/5,2/5,2/5,2/5,2/5");
    match &ball {
        Ok(m) => c.exact("mu.thirds", Paper, "d = 3, n = (1,1,1,1,2)", tuple_summary(m)),
        Err(e) => c.error("mu.thirds", Paper, "d = 3, n = (1,1,1,1,2)", e),
    }
    match &fifths {
        Ok(m) => c.exact("mu.fifths", Paper, "d = 5, n = (2,2,2,2,2)", tuple_summary(m)),
        Err(e) => c.error("mu.fifths", Paper, "d = 5, n = (2,2,2,2,2)", e),
    }
    c.exact(
        "mu.rejects_one",
        Trivial,
        "rejected",
        if parse_mu("1,1/3,1/3,1/6,1/6").is_err() { "rejected" } else { "accepted" },
    );
    let (Ok(ball), Ok(fifths)) = (ball, fifths) else { return };

    c.exact("int.thirds", Derived, "true, 4 exempt", certificate(&ball));
    c.exact("int.fifths", Derived, "true, 0 exempt", certificate(&fifths));
    match parse_mu("1/2,1/2,1/2,1/4,1/4") {
        Ok(m) => c.exact("int.halves_quarters", Derived, "true, 3 exempt", certificate(&m)),
        Err(e) => c.error("int.halves_quarters", Derived, "true, 3 exempt", e),
    }

    match enumerate_int(12) {
        Ok(list) => {
            let has = |m: &MuTuple| if list.contains(m) { "member" } else { "missing" };
            c.exact("enumerate.12.thirds", Paper, "member", has(&ball.canonical()));
            c.exact("enumerate.12.fifths", Paper, "member", has(&fifths.canonical()));
            let valid = list.iter().all(|m| *m == m.canonical() && int_condition(m).holds);
            c.exact("enumerate.12.canonical_int", Trivial, true, valid);
        }
        Err(e) => c.error("enumerate.12", Paper, "member", e),
    }
    c.exact("enumerate.2.empty", Derived, 0, enumerate_int(2).map(|l| l.len()).unwrap_or(usize::MAX));

    // ∫₀¹ t^{−1/3}(1 − t)^{−1/3} dt with the far factors divided out
    let far = 1e8;
    let x = PointConfig::new([
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(far, 0.0),
        Complex64::new(0.0, far),
        Complex64::new(-far, -far),
    ]);
    let want = beta(2.0 / 3.0, 2.0 / 3.0);
    match x.and_then(|x| period_with_branch(&x, 0, 1, &ball, None).map(|p| (x, p))) {
        Ok((x, p)) => {
            let e = ball.exponents();
            let mid = Complex64::new(0.5, 0.0);
            let rest: Complex64 = (2..5).map(|k| (mid - x.points()[k]).powf(-e[k])).product();
            let got = p.value / (rest * Complex64::from_polar(1.0, -PI / 3.0));
            let rel = (got - want).norm() / want;
            c.judged(
                "period.beta_oracle",
                Derived,
                format!("B(2/3,2/3) = {want:.10} within {BETA_TOLERANCE:e}"),
                format!("{:.10}{:+.1e}i (rel {rel:.1e})", got.re, got.im),
                rel < BETA_TOLERANCE,
            );
        }
        Err(e) => c.error("period.beta_oracle", Derived, format!("B(2/3,2/3) = {want:.10}"), e),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let x = PointConfig::random(&mut rng, 0.25);
    let mut worst = 0.0f64;
    let mut compared = 0;
    for (i, j) in fanoball::dm::pairs() {
        let forward = period_with_branch(&x, i, j, &ball, None);
        // slot i holds arg(xⱼ − xᵢ) and slot j arg(xᵢ − xⱼ) in either orientation
        let backward = forward.as_ref().ok().map(|p| period_with_branch(&x, j, i, &ball, Some(&p.branch)));
        if let (Ok(f), Some(Ok(b))) = (forward, backward) {
            worst = worst.max((f.value + b.value).norm() / f.value.norm());
            compared += 1;
        }
    }
    c.judged(
        "period.orientation",
        Trivial,
        "10 pairs negate within 1e-8",
        format!("{compared} pairs, worst {worst:.1e}"),
        compared == 10 && worst < 1e-8,
    );

    let mut ranks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..RANK_CONFIGS {
        let x = PointConfig::random(&mut rng, 0.25);
        ranks.push(match period_rank(&x, &ball, 8, 0.02, &mut rng) {
            Ok(r) => r.rank.to_string(),
            Err(e) => format!("error: {e}"),
        });
    }
    c.exact("period.rank", Paper, ["3"; RANK_CONFIGS].join(","), ranks.join(","));
    match period_rank(&x, &ball, 1, 0.02, &mut rng) {
        Ok(r) => c.exact(
            "period.rank.single_sample",
            Trivial,
            "1, degenerate",
            format!("{}, {}", r.rank, if r.degenerate { "degenerate" } else { "regular" }),
        ),
        Err(e) => c.error("period.rank.single_sample", Trivial, "1, degenerate", e),
    }
    let a = Complex64::new(0.3, 1.7);
    let affine = x.affine(a, Complex64::new(-2.0, 0.5)).and_then(|y| {
        let rx = period_rank(&x, &ball, 8, 0.02, &mut ChaCha8Rng::seed_from_u64(1))?;
        let ry = period_rank(&y, &ball, 8, 0.02 * a.norm(), &mut ChaCha8Rng::seed_from_u64(1))?;
        Ok((rx.rank, ry.rank))
    });
    match affine {
        Ok((rx, ry)) => c.exact("period.rank.affine", Derived, "3 = 3", format!("{rx} = {ry}")),
        Err(e) => c.error("period.rank.affine", Derived, "3 = 3", e),
    }
    c.exact("period.rejects_collision", Trivial, "error", {
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.0), (0.2, 0.9), (-0.6, -0.7)].map(|(a, b)| Complex64::new(a, b));
        match PointConfig::new(pts).and_then(|x| period(&x, 0, 1, &ball)) {
            Ok(_) => "value",
            Err(_) => "error",
        }
    });
}
