//! Table reproduction: each tag binds a pipeline to golden values shipped
//! with the repo. The command recomputes the payload, diffs it against the
//! golden (ignoring `_`-prefixed annotation keys), and exits nonzero on any
//! mismatch.

use crate::{now_epoch_s, write_atomic, Cli};
use raolab::analyzer::{self, Verdict};
use raolab::configs;
use raolab::error::Error;
use raolab::gf::FieldSpec;
use raolab::ideal::{hilbert_function, ops, GbBudget, Ideal};
use raolab::poly::{Polynomial, RingSpec};
use raolab::restriction;
use serde_json::{json, Value};
use std::process::ExitCode;

const GOLDENS: &[(&str, &str)] = &[
    ("example-3.9", include_str!("../goldens/example-3.9.json")),
    ("theorem-z3", include_str!("../goldens/theorem-z3.json")),
    ("example-3.11", include_str!("../goldens/example-3.11.json")),
    (
        "quadric-lines",
        include_str!("../goldens/quadric-lines.json"),
    ),
    ("all-but-one", include_str!("../goldens/all-but-one.json")),
    ("all-but-two", include_str!("../goldens/all-but-two.json")),
    ("remark-5.6", include_str!("../goldens/remark-5.6.json")),
    ("remark-5.7", include_str!("../goldens/remark-5.7.json")),
    (
        "arith-genus-0",
        include_str!("../goldens/arith-genus-0.json"),
    ),
    ("flat-fat", include_str!("../goldens/flat-fat.json")),
    (
        "cubic-intersection",
        include_str!("../goldens/cubic-intersection.json"),
    ),
    ("example-2.6", include_str!("../goldens/example-2.6.json")),
];

pub fn run(cli: &Cli, field: FieldSpec, tag: &str) -> Result<ExitCode, Error> {
    // Historical alias for the smallest failing case.
    let tag = if tag == "all-but-two-s10" {
        "all-but-two"
    } else {
        tag
    };
    let golden_text = GOLDENS
        .iter()
        .find(|(t, _)| *t == tag)
        .map(|(_, g)| *g)
        .ok_or_else(|| Error::UnknownTag(tag.to_string()))?;
    let golden: Value = serde_json::from_str(golden_text)?;
    let actual = compute(cli, field, tag)?;

    let mut diffs = Vec::new();
    diff_values("", &strip(&golden), &strip(&actual), &mut diffs);

    if let Some(p2) = cli.second_prime {
        let second = compute(cli, FieldSpec::new(p2)?, tag)?;
        let mut second_diffs = Vec::new();
        diff_values("", &strip(&actual), &strip(&second), &mut second_diffs);
        if !second_diffs.is_empty() {
            eprintln!("warning: characteristic artifact suspected (p = {p2} disagrees):");
            for d in &second_diffs {
                eprintln!("  {d}");
            }
            diffs.extend(second_diffs);
        }
    }

    if let Some(dir) = &cli.out {
        write_atomic(
            &dir.join(format!("reproduce-{tag}.json")),
            &serde_json::to_string_pretty(&json!({
                "generated_at": now_epoch_s(),
                "tag": tag,
                "prime": field.p(),
                "actual": actual,
                "matches": diffs.is_empty(),
            }))?,
        )?;
        if cli.format == "md" {
            write_atomic(
                &dir.join(format!("reproduce-{tag}.md")),
                &to_markdown(tag, &actual),
            )?;
        }
    }

    if diffs.is_empty() {
        println!("reproduce {tag}: all values match");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("reproduce {tag}: MISMATCH");
        for d in &diffs {
            println!("  {d}");
        }
        Ok(ExitCode::from(1))
    }
}

/// Render a recomputed payload as markdown tables laid out for eyeball
/// comparison: h-vectors in parentheses, dimension tables by degree.
fn to_markdown(tag: &str, actual: &Value) -> String {
    let mut out = format!("## {tag}\n\n");
    fn fmt(value: &Value) -> String {
        match value {
            Value::Array(items) if items.iter().all(|v| v.is_number()) => format!(
                "({})",
                items
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            other => other.to_string(),
        }
    }
    let Value::Object(map) = actual else {
        out.push_str(&actual.to_string());
        return out;
    };
    // Row-shaped payloads become one table; anything else a key/value table.
    let rows = map.get("rows").or_else(|| map.get("stages"));
    if let Some(Value::Array(items)) = rows {
        if let Some(Value::Object(first)) = items.first() {
            let keys: Vec<&String> = first.keys().collect();
            out.push_str(&format!(
                "| {} |\n|{}|\n",
                keys.iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join(" | "),
                keys.iter().map(|_| "---").collect::<Vec<_>>().join("|")
            ));
            for item in items {
                if let Value::Object(o) = item {
                    let cells: Vec<String> = keys
                        .iter()
                        .map(|k| o.get(*k).map(fmt).unwrap_or_default())
                        .collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
            }
            return out;
        }
    }
    out.push_str("| quantity | value |\n|---|---|\n");
    for (k, v) in map {
        out.push_str(&format!("| {k} | {} |\n", fmt(v)));
    }
    out
}

/// Drop `_`-prefixed annotation keys before comparing.
fn strip(v: &Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.iter()
                .filter(|(k, _)| !k.starts_with('_'))
                .map(|(k, v)| (k.clone(), strip(v)))
                .collect(),
        ),
        Value::Array(items) => Value::Array(items.iter().map(strip).collect()),
        other => other.clone(),
    }
}

fn diff_values(path: &str, golden: &Value, actual: &Value, out: &mut Vec<String>) {
    match (golden, actual) {
        (Value::Object(g), Value::Object(a)) => {
            for (k, gv) in g {
                match a.get(k) {
                    Some(av) => diff_values(&format!("{path}/{k}"), gv, av, out),
                    None => out.push(format!("{path}/{k}: missing in recomputation")),
                }
            }
        }
        (Value::Array(g), Value::Array(a)) => {
            if g.len() != a.len() {
                out.push(format!(
                    "{path}: length {} expected, got {}",
                    g.len(),
                    a.len()
                ));
                return;
            }
            for (i, (gv, av)) in g.iter().zip(a).enumerate() {
                diff_values(&format!("{path}[{i}]"), gv, av, out);
            }
        }
        _ => {
            if golden != actual {
                out.push(format!("{path}: expected {golden}, got {actual}"));
            }
        }
    }
}

fn compute(cli: &Cli, field: FieldSpec, tag: &str) -> Result<Value, Error> {
    let budget = GbBudget {
        max_spair_reductions: cli.budget,
    };
    match tag {
        "example-3.9" => {
            let cfg = configs::general_skew_lines(29, cli.seed, field)?;
            let plane = analyzer::sample_plane(&cfg, cli.seed ^ 0xA0)?;
            let z1 = analyzer::h_vector_of_section(&cfg, &plane, 1)?;
            let z2 = analyzer::h_vector_of_section(&cfg, &plane, 2)?;
            let ts: Vec<i64> = (3..=8).collect();
            let mut dims = Vec::new();
            for &t in &ts {
                dims.push(restriction::section_scheme_dimension(
                    &cfg,
                    &plane,
                    2,
                    t - 1,
                )?);
            }
            let ring = cfg.ring;
            let z1_dim = |t: i64| -> Result<usize, Error> {
                Ok(restriction::section_scheme_dimension(&cfg, &plane, 1, t)? - ring.dim_t(t - 1))
            };
            let z2_hf6 = ring.dim_t(6) - restriction::section_scheme_dimension(&cfg, &plane, 2, 6)?;
            let h1 = restriction::section_scheme_degree(&cfg, 2) - z2_hf6;
            Ok(json!({
                "r": 29,
                "z1_h_vector": z1.0,
                "z2_h_vector": z2.0,
                "ideal_z2_ts": ts,
                "ideal_z2_dims": dims,
                "plane_z1_dim_7": z1_dim(7)?,
                "plane_z1_dim_8": z1_dim(8)?,
                "h1_z2_at_6": h1,
            }))
        }
        "theorem-z3" => {
            let cfg = configs::general_skew_lines(29, cli.seed, field)?;
            let plane = analyzer::sample_plane(&cfg, cli.seed ^ 0xA0)?;
            let hf = analyzer::section_hilbert_function(&cfg, &plane, 3)?;
            Ok(json!({ "r": 29, "z3_hilbert_function": &hf[..9] }))
        }
        "example-3.11" => {
            let mut stages = Vec::new();
            for k in 0..=2usize {
                let (x1, x2) = analyzer::specialization_h_vectors(25, k, cli.seed, field)?;
                stages.push(json!({ "k": k, "x1": x1.0, "x2": x2.0 }));
            }
            Ok(json!({ "r": 25, "stages": stages }))
        }
        "quadric-lines" => {
            let mut rows = Vec::new();
            for r in 4..=10usize {
                let cfg = configs::quadric_ruling_lines(r, cli.seed, field)?;
                let profile = restriction::rao_profile(&cfg)?;
                let (lo, hi) = profile.support().unwrap();
                let dims: Vec<usize> = (lo..=hi).map(|t| profile.dim_m(t)).collect();
                let socle = restriction::socle_dimensions(&profile, &cfg, lo..=hi)?;
                let socle_degree = socle
                    .iter()
                    .filter(|&(_, &d)| d > 0)
                    .map(|(&t, _)| t)
                    .max()
                    .unwrap_or(hi);
                let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, cli.trials)?;
                rows.push(json!({
                    "r": r,
                    "dims": dims,
                    "socle_degree": socle_degree,
                    "socle_dim": socle[&socle_degree],
                    "verdict": rep.verdict,
                }));
            }
            Ok(json!({ "rows": rows }))
        }
        "all-but-one" => {
            let mut rows = Vec::new();
            for r in 6..=10usize {
                let cfg = configs::quadric_plus_general(r, 1, cli.seed, field)?;
                let profile = restriction::rao_profile(&cfg)?;
                let dims: Vec<usize> = (1..r as i64).map(|t| profile.dim_m(t)).collect();
                let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, cli.trials)?;
                rows.push(json!({ "r": r, "dims_t1_on": dims, "verdict": rep.verdict }));
            }
            Ok(json!({ "rows": rows }))
        }
        "all-but-two" => {
            let mut rows = Vec::new();
            for s in 10..=12usize {
                let cfg = configs::quadric_plus_general(s - 2, 2, cli.seed, field)?;
                let profile = restriction::rao_profile(&cfg)?;
                let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, cli.trials)?;
                let failing = rep.failing_degrees.first().copied().unwrap_or(-1);
                rows.push(json!({
                    "s": s,
                    "dim_m2": profile.dim_m(2),
                    "dim_m3": profile.dim_m(3),
                    "verdict": rep.verdict,
                    "failing_degree": failing,
                }));
            }
            Ok(json!({ "rows": rows }))
        }
        "remark-5.6" => {
            let cfg = configs::quadric_plus_general(10, 3, cli.seed, field)?;
            let profile = restriction::rao_profile(&cfg)?;
            let plane = analyzer::sample_plane(&cfg, cli.seed ^ 0xB1)?;
            let z1_4 =
                restriction::section_scheme_dimension(&cfg, &plane, 1, 4)? - cfg.ring.dim_t(3);
            let rep = analyzer::slp_range_verdict_with_profile(&cfg, &profile, 1, cli.trials)?;
            Ok(json!({
                "ruling": 10,
                "general": 3,
                "dim_m3": profile.dim_m(3),
                "dim_m4": profile.dim_m(4),
                "plane_section_ideal_dim_4": z1_4,
                "ideal_dim_4": profile.dim_ideal(4),
                "fails_at": rep.failing_degrees.first().copied().unwrap_or(-1),
            }))
        }
        "remark-5.7" => {
            let cfg = configs::quadric_plus_general(11, 4, cli.seed, field)?;
            let profile = restriction::rao_profile(&cfg)?;
            let plane = analyzer::sample_plane(&cfg, cli.seed ^ 0xB2)?;
            let rank = restriction::multiplication_rank(&profile, &cfg, &plane, 1, 4)?;
            Ok(json!({
                "ruling": 11,
                "general": 4,
                "dim_m3": profile.dim_m(3),
                "dim_m4": profile.dim_m(4),
                "rank_3_to_4": rank,
            }))
        }
        "arith-genus-0" => {
            let cfg = configs::arith_genus_zero(cli.seed, field)?;
            let profile = restriction::rao_profile(&cfg)?;
            let rep = analyzer::wlp_verdict(&cfg, cli.trials)?;
            Ok(json!({
                "dims": (0..=3i64).map(|t| profile.dim_m(t)).collect::<Vec<_>>(),
                "fails_at": rep.failing_degrees.first().copied().unwrap_or(-1),
                "degree": cfg.curve_degree(),
                "arithmetic_genus": cfg.arithmetic_genus(),
            }))
        }
        "flat-fat" => {
            let mut rows = Vec::new();
            for m in 1..=4u32 {
                for s in 1..=10usize {
                    let rep = analyzer::genericity_test_flatfat(
                        s,
                        m,
                        cli.trials,
                        cli.seed ^ ((m as u64) << 8 | s as u64),
                        field,
                    )?;
                    let mut row = json!({ "s": s, "m": m, "generic": rep.generic });
                    if m == 4 {
                        row["conjecture_evidence"] = json!(true);
                    }
                    rows.push(row);
                }
            }
            Ok(json!({ "rows": rows }))
        }
        "cubic-intersection" => {
            let ring = RingSpec::p2(field);
            let parse = |s: &str| Polynomial::parse(s, ring).unwrap();
            let i1 = Ideal::new(ring, vec![parse("(x+y)^3"), parse("z")])?;
            let i2 = Ideal::new(ring, vec![parse("(x+z)^3"), parse("y")])?;
            let i3 = Ideal::new(ring, vec![parse("(y-z)^3"), parse("x")])?;
            let all = ops::intersect_many(&[i1, i2, i3], budget)?;
            let data = hilbert_function(&all, 4, budget)?;
            Ok(json!({
                "dim_degree_3": data.dims_ideal[&3],
                "contains_xyz": all.contains(&parse("x*y*z"), budget)?,
            }))
        }
        "example-2.6" => {
            let out = configs::liaison_quintic_pipeline(41, field, budget)?;
            let data = hilbert_function(&out.c3, 6, budget)?;
            let sing = ops::singular_locus(&out.c3, 2, budget)?;
            let (sat, _) = ops::saturate(&sing, &ops::irrelevant_ideal(out.c3.ring()), budget)?;
            Ok(json!({
                "deg_c1": out.deg_c1,
                "deg_c2": out.deg_c2,
                "deg_removed": out.deg_removed,
                "deg_c3": out.deg_c3,
                "dim_quintics": data.dims_ideal[&5],
                "smooth": sat.is_unit(budget)?,
            }))
        }
        other => Err(Error::UnknownTag(other.to_string())),
    }
}

// Serde serialization of Verdict is lowercase, matching the goldens.
#[allow(dead_code)]
fn _verdict_shape(v: Verdict) -> Value {
    serde_json::to_value(v).unwrap()
}
