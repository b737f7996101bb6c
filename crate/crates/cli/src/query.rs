//! Ad-hoc queries behind the non-`verify` subcommands. Each returns a JSON
//! value; keys come out sorted, so output is stable.

use anyhow::{bail, Context, Result};
use fanoball::dm::{
    check_condition, enumerate_tuples, format_complex, parse_mu, parse_points, period_rank, period_with_branch,
    Condition, PeriodValue,
};
use fanoball::namba::{divisor_cover_group, BranchArrangement, CoverGroup};
use fanoball::picard::{enumerate_gamma, finite_group_analysis, height_one_reflections, Mat3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Format;

pub fn classify(text: &str, source: &str) -> Result<Value> {
    let arr: BranchArrangement = text.parse().with_context(|| format!("reading {source}"))?;
    let group = divisor_cover_group(&arr)?;
    let order = group.order();
    let cover = CoverGroup::full(group.clone());
    let k_squared = arr.branched_canonical(order as i64)?;
    let branches: Vec<Value> = arr
        .branches()
        .iter()
        .map(|b| {
            let class: Vec<String> = b.class.coeffs().iter().map(|q| q.to_string()).collect();
            json!({ "class": class, "weight": b.weight, "label": b.label })
        })
        .collect();
    let canonical: Vec<String> = arr.lattice().canonical().coeffs().iter().map(|q| q.to_string()).collect();
    Ok(json!({
        "source": source,
        "rank": arr.lattice().rank(),
        "gram": arr.lattice().gram(),
        "canonical": canonical,
        "branches": branches,
        "cover_group": group.to_string(),
        "invariant_factors": group.invariant_factors(),
        "order": order,
        "generators": cover.generators(),
        "cover_k_squared": k_squared.to_string(),
    }))
}

pub fn search(height: i64) -> Result<Value> {
    if height < 1 {
        bail!("height must be at least 1");
    }
    let elements = enumerate_gamma(height)?;
    let tokens: Vec<Vec<String>> = elements.iter().map(Mat3::tokens).collect();
    Ok(json!({ "height": height, "count": elements.len(), "elements": tokens }))
}

pub fn quotient(level: u32, budget: usize) -> Result<Value> {
    let gens = height_one_reflections();
    let q = finite_group_analysis(&gens, level, budget)?;
    Ok(json!({
        "level": level,
        "generators": format!("{} height-1 reflections", gens.len()),
        "image_order": q.image_order,
        "derived_order": q.derived_order,
        "abelianization": q.abelianization.to_string(),
        "abelianization_rank": q.abelianization.rank(),
        "abelianization_exponent": q.abelianization.exponent(),
    }))
}

pub fn member(matrix: &str) -> Result<Value> {
    let t: Mat3 = matrix.parse()?;
    Ok(json!({
        "matrix": t.tokens(),
        "unitary": t.is_unitary(),
        "in_gamma": t.in_gamma(),
        "congruence_level": t.congruence_level().to_string(),
        "determinant": t.determinant().to_string(),
        "height": t.height(),
    }))
}

pub fn enumerate(max_den: i64, sigma: bool) -> Result<Value> {
    let condition = if sigma { Condition::SigmaInt } else { Condition::Int };
    let list = enumerate_tuples(max_den, condition)?;
    let tuples: Vec<Value> = list.iter().map(|m| json!({ "mu": m.to_string(), "d": m.d() })).collect();
    Ok(json!({
        "max_den": max_den,
        "condition": if sigma { "sigma-int" } else { "int" },
        "count": list.len(),
        "tuples": tuples,
    }))
}

pub fn periods(mu: &str, points: &str, rank_samples: Option<usize>, seed: u64) -> Result<Value> {
    let mu = parse_mu(mu.trim().trim_start_matches('(').trim_end_matches(')'))?;
    let x = parse_points(points)?;
    let cert = check_condition(&mu, Condition::Int);
    let mut rows = Vec::new();
    for (i, j) in fanoball::dm::pairs() {
        let PeriodValue { value, error, .. } = period_with_branch(&x, i, j, &mu, None)?;
        rows.push(json!({
            "i": i + 1,
            "j": j + 1,
            "value": format_complex(value),
            "error": format!("{error:.1e}"),
        }));
    }
    let mut out = json!({
        "mu": mu.to_string(),
        "int": cert.holds,
        "points": x.points().iter().map(|&z| format_complex(z)).collect::<Vec<_>>(),
        "periods": rows,
    });
    if let Some(samples) = rank_samples {
        let r = period_rank(&x, &mu, samples, 0.02, &mut ChaCha8Rng::seed_from_u64(seed))?;
        out["rank"] = json!({
            "samples": samples,
            "rank": r.rank,
            "degenerate": r.degenerate,
            "singular_values": r.singular_values.iter().map(|s| format!("{s:.6e}")).collect::<Vec<_>>(),
        });
    }
    Ok(out)
}

pub fn render(title: &str, value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("value serializes") + "\n",
        Format::Md => markdown(title, value),
    }
}

fn markdown(title: &str, value: &Value) -> String {
    let mut out = format!("# {title}\n\n");
    let Value::Object(map) = value else {
        return out + &format!("{value}\n");
    };
    for (k, v) in map {
        match v {
            Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
                out += &format!("**{k}**\n\n```\n");
                for item in items {
                    out += &format!("{item}\n");
                }
                out += "```\n\n";
            }
            Value::Object(_) => out += &format!("**{k}**: `{v}`\n\n"),
            Value::String(s) => out += &format!("- **{k}**: {s}\n"),
            _ => out += &format!("- **{k}**: {v}\n"),
        }
    }
    out
}
