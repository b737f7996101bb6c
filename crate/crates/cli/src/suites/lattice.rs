use std::collections::BTreeSet;

use fanoball::picard::{
    ball_act, commutator, enumerate_gamma, finite_group_analysis, height_one_reflections, reduce_mod, reflection,
    BallPoint, Mat3, DEFAULT_BUDGET,
};
use fanoball::{EisensteinInt as Z, Valuation};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Checks, Provenance::*};

const DRIFT_TOLERANCE: f64 = 1e-10;
const ACTION_TOLERANCE: f64 = 1e-9;

pub fn notes() -> Vec<String> {
    vec![
        "generators: complex reflections in the 38 height-1 vectors of H-norm 1; they are not claimed to generate the group"
            .to_string(),
        "ball drift is |form(Tz) - form(z)| relative to the squared size of the lifted image".to_string(),
        "level-3 abelianization rank is reported, not asserted; the maximal abelian cover reading suggests rank 5"
            .to_string(),
    ]
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[Mat3], len: usize) -> Mat3 {
    (0..len).fold(Mat3::IDENTITY, |acc, _| acc * gens[rng.gen_range(0..gens.len())])
}

fn random_ball_point(rng: &mut ChaCha8Rng) -> BallPoint {
    loop {
        let z1 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let z2 = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if let Ok(p) = BallPoint::new(z1, z2) {
            if z1.norm_sqr() + z2.norm_sqr() < 0.95 {
                return p;
            }
        }
    }
}

fn matrix(rows: [[i64; 3]; 3]) -> Mat3 {
    Mat3(rows.map(|r| r.map(|a| Z::new(a, 0))))
}

pub fn run(c: &mut Checks) {
    let (o, i, w) = (Z::ZERO, Z::ONE, Z::OMEGA);

    c.exact("unitary.identity", Trivial, true, Mat3::IDENTITY.is_unitary());
    c.exact("unitary.scalar_omega", Trivial, true, Mat3::diagonal([w, w, w]).is_unitary());
    let swap12 = matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let swap13 = matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    c.exact("unitary.swap12", Derived, true, swap12.is_unitary());
    c.exact("unitary.swap13", Derived, false, swap13.is_unitary());
    c.exact("gamma.swap12", Derived, false, swap12.in_gamma());
    c.exact("gamma.diag_omega", Derived, true, Mat3::diagonal([w, i, i]).in_gamma());

    let height1 = match enumerate_gamma(1) {
        Ok(v) => v,
        Err(e) => return c.error("gamma.height1", Derived, "27 diagonal", e),
    };
    let diagonals: BTreeSet<Mat3> =
        (0..27).map(|k| Mat3::diagonal([Z::omega_pow(k % 3), Z::omega_pow(k / 3 % 3), Z::omega_pow(k / 9)])).collect();
    let found: BTreeSet<Mat3> = height1.iter().copied().collect();
    c.exact(
        "gamma.height1.diagonals",
        Derived,
        "27 of 27",
        format!("{} of 27", diagonals.intersection(&found).count()),
    );
    c.exact("gamma.height1.members", Trivial, height1.len(), height1.iter().filter(|t| t.in_gamma()).count());
    let products = height1.iter().flat_map(|a| height1.iter().map(move |b| a * b)).filter(|t| t.in_gamma()).count();
    c.exact("gamma.height1.products", Trivial, height1.len().pow(2), products);
    let inverses = height1.iter().filter(|t| t.inverse().is_some_and(|u| u.in_gamma())).count();
    c.exact("gamma.height1.inverses", Trivial, height1.len(), inverses);
    match enumerate_gamma(4) {
        Ok(v) => c.exact("gamma.height4.count", Derived, 351, v.len()),
        Err(e) => c.error("gamma.height4.count", Derived, 351, e),
    }

    let r1 = reflection([i, o, o]);
    let r2 = reflection([o, i, o]);
    let r111 = reflection([i, i, i]);
    match (&r1, &r2, &r111) {
        (Ok(r1), Ok(r2), Ok(r111)) => {
            c.exact("reflection.e1", Trivial, Mat3::diagonal([w, i, i]), r1);
            for (id, r) in [("reflection.e1", r1), ("reflection.e2", r2), ("reflection.111", r111)] {
                let ok = r.in_gamma() && r.pow(3) == Mat3::IDENTITY && *r != Mat3::IDENTITY;
                c.exact(&format!("{id}.order3_in_gamma"), Derived, true, ok);
                c.exact(&format!("{id}.determinant"), Derived, w, r.determinant());
            }
            c.exact("reflection.111.height", Derived, 7, r111.height());
            match commutator(r1, r111) {
                Ok((m, level)) => {
                    let ok = m != Mat3::IDENTITY && level.is_at_least(2);
                    c.judged("commutator.e1_111", Derived, "non-trivial, level >= 2", format!("level {level}"), ok);
                }
                Err(e) => c.error("commutator.e1_111", Derived, "non-trivial, level >= 2", e),
            }
        }
        _ => c.error("reflection.examples", Derived, "order 3", "construction failed"),
    }
    match commutator(&Mat3::diagonal([w, i, i]), &Mat3::diagonal([i, w, i])) {
        Ok((m, level)) => c.exact(
            "commutator.diagonal",
            Trivial,
            "I, level inf",
            format!("{}, level {level}", if m == Mat3::IDENTITY { "I" } else { "not I" }),
        ),
        Err(e) => c.error("commutator.diagonal", Trivial, "I, level inf", e),
    }

    let refl = height_one_reflections();
    c.exact("reflections.height1", Derived, 38, refl.len());
    let pool: Vec<Mat3> = height1.iter().chain(&refl).copied().collect();
    let mut worst = Valuation::Infinite;
    for a in &pool {
        for b in &pool {
            if let Ok((_, level)) = commutator(a, b) {
                worst = worst.min(level);
            }
        }
    }
    c.judged(
        "commutator.height1_pairs",
        Derived,
        format!("min level >= 2 over {} pairs", pool.len().pow(2)),
        format!("min level {worst} over {} pairs", pool.len().pow(2)),
        worst.is_at_least(2),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut worst = Valuation::Infinite;
    for _ in 0..500 {
        let (lt, lu) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let t = random_word(&mut rng, &refl, lt);
        let u = random_word(&mut rng, &refl, lu);
        worst = worst.min(commutator(&t, &u).map(|(_, l)| l).unwrap_or(Valuation::Finite(0)));
    }
    c.judged(
        "commutator.random_words",
        Derived,
        "min level >= 2 over 500 pairs",
        format!("min level {worst} over 500 pairs"),
        worst.is_at_least(2),
    );

    let trivial_level1 =
        pool.iter().all(|t| reduce_mod(t, 1).is_ok_and(|r| Some(r) == reduce_mod(&Mat3::IDENTITY, 1).ok()));
    c.exact("quotient.level1.trivial", Trivial, true, trivial_level1);
    for k in [1u32, 2, 3] {
        let id = format!("quotient.level{k}");
        match finite_group_analysis(&refl, k, DEFAULT_BUDGET) {
            Ok(q) => {
                let computed = format!(
                    "order {}, derived {}, abelianization {}",
                    q.image_order, q.derived_order, q.abelianization
                );
                let (expected, ok) = match k {
                    1 => ("order 1".to_string(), q.image_order == 1),
                    2 => ("abelian (derived 1)".to_string(), q.derived_order == 1),
                    _ => ("abelianization of exponent 3".to_string(), q.abelianization.exponent() == 3),
                };
                c.judged(&id, Derived, expected, computed, ok);
            }
            Err(e) => c.error(&id, Derived, "closure within budget", e),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut drift = 0.0f64;
    let mut action = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..1000 {
        let (lt, lu) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let t = random_word(&mut rng, &refl, lt);
        let u = random_word(&mut rng, &refl, lu);
        let z = random_ball_point(&mut rng);
        let results = (ball_act(&t, &z), ball_act(&(t * u), &z), ball_act(&u, &z));
        let (Ok(tz), Ok(tuz), Ok(uz)) = results else {
            failures += 1;
            continue;
        };
        drift = drift.max(tz.drift);
        let Ok(t_uz) = ball_act(&t, &uz.point) else {
            failures += 1;
            continue;
        };
        let gap = ((tuz.point.z1 - t_uz.point.z1).norm_sqr() + (tuz.point.z2 - t_uz.point.z2).norm_sqr()).sqrt();
        action = action.max(gap);
    }
    c.judged(
        "ball.form_drift",
        Derived,
        format!("< {DRIFT_TOLERANCE:e} over 1000 trials"),
        format!("{drift:.1e}, {failures} failures"),
        drift < DRIFT_TOLERANCE && failures == 0,
    );
    c.judged(
        "ball.group_action",
        Derived,
        format!("< {ACTION_TOLERANCE:e} over 1000 trials"),
        format!("{action:.1e}"),
        action < ACTION_TOLERANCE && failures == 0,
    );
    let z = BallPoint::new(Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0));
    match z.and_then(|z| ball_act(&Mat3::diagonal([w, i, i]), &z)) {
        Ok(img) => {
            let want = w.to_complex() * 0.5;
            let gap = (img.point.z1 - want).norm() + img.point.z2.norm();
            c.judged("ball.rotation", Trivial, "(0.5w, 0)", format!("distance {gap:.1e}"), gap < 1e-12);
        }
        Err(e) => c.error("ball.rotation", Trivial, "(0.5w, 0)", e),
    }
}
