use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::atinfinity::{BifurcationReport, CountReport, HypothesisVerdict};
use crate::bound::{BoundReport, Ledger};
use crate::exactmath::{Ran, Rat};
use crate::newton::Face;

/// Display precision: intervals are refined to width `2^-precision_bits`
/// before rendering (decisions never depend on this).
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub precision_bits: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            precision_bits: 256,
        }
    }
}

impl ReportOptions {
    pub fn from_env() -> Self {
        let bits = std::env::var("NBIF_PRECISION_BITS")
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .unwrap_or(256)
            .clamp(16, 65536);
        ReportOptions {
            precision_bits: bits,
        }
    }

    fn min_width(&self) -> Rat {
        Rat::new(BigInt::one(), BigInt::from(2u8).pow(self.precision_bits))
    }
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ran_json(r: &Ran, opts: &ReportOptions) -> Value {
    let mut refined = r.clone();
    refined.refine_below(&opts.min_width());
    let iv = refined.interval();
    let minpoly: Vec<String> = refined
        .minpoly()
        .coeffs()
        .iter()
        .map(rat_str)
        .collect();
    json!({
        "minpoly": minpoly,
        "interval": [rat_str(&iv.lo), rat_str(&iv.hi)],
        "approx": r.approx_decimal(15, &opts.min_width()),
    })
}

pub fn ran_text(r: &Ran, opts: &ReportOptions) -> String {
    if let Some(q) = r.as_rational() {
        return rat_str(&q);
    }
    format!("~{}", r.approx_decimal(15, &opts.min_width()))
}

fn face_json(face: &Face) -> Value {
    json!({
        "covector": [face.covector.p, face.covector.q],
        "d": face.d,
        "class": match face.cls {
            crate::newton::FaceClass::Plus => "plus",
            crate::newton::FaceClass::Zero => "zero",
            crate::newton::FaceClass::Minus => "minus",
        },
    })
}

fn verdict_json(v: &HypothesisVerdict) -> Value {
    json!({
        "nondegenerate_plus_minus": v.nondegenerate_plus_minus,
        "offending_nondegenerate": v
            .offending_nondegenerate
            .iter()
            .map(|c| json!([c.p, c.q]))
            .collect::<Vec<_>>(),
        "morse_bad_faces": v.morse_bad_faces,
        "offending_morse": v
            .offending_morse
            .iter()
            .map(|c| json!([c.p, c.q]))
            .collect::<Vec<_>>(),
    })
}

fn counts_json(c: &CountReport) -> Value {
    json!({
        "r_plus": c.r_plus,
        "r_zero": c.r_zero,
        "total": c.total,
        "vanish_min": c.vanish_min,
        "vanish_max": c.vanish_max,
        "exact_split": c.exact_split.map(|(cleav, vanish)| json!({
            "cleav": cleav,
            "vanish": vanish,
        })),
    })
}

pub fn bound_json(b: &BoundReport) -> Value {
    json!({
        "sigma_size": b.sigma_size,
        "epsilon": b.epsilon,
        "r_zero": b.r_zero,
        "mu_sum": b.mu_sum,
        "total": b.total,
    })
}

pub fn ledger_json(l: &Ledger) -> Value {
    json!({
        "sigma_size": l.sigma_size,
        "entries": l.entries.iter().map(|e| json!({
            "site": e.site,
            "lambdas": e.lambdas.iter().map(|(c, v)| json!({
                "covector": [c.p, c.q],
                "lambda": v,
            })).collect::<Vec<_>>(),
            "epsilon_sigma": e.epsilon_sigma,
            "lambda_after": e.lambda_after,
        })).collect::<Vec<_>>(),
        "final_bound": l.final_bound,
    })
}

/// Full JSON report for `analyze`.
pub fn analyze_json(
    input: &str,
    report: &BifurcationReport,
    opts: &ReportOptions,
) -> Value {
    json!({
        "input": input,
        "hypotheses": verdict_json(&report.verdict),
        "sigma": report.sigma.iter().map(|r| ran_json(r, opts)).collect::<Vec<_>>(),
        "condition_ii": json!({
            "holds": report.cond_ii,
            "witnesses": report.cond_ii_witnesses.iter().map(face_json).collect::<Vec<_>>(),
        }),
        "condition_iii": report.cond_iii.iter().map(|(face, t, v)| json!({
            "face": face_json(face),
            "t_star": ran_json(t, opts),
            "value": ran_json(v, opts),
        })).collect::<Vec<_>>(),
        "bifurcation_set": report.b_set.iter().map(|(v, tags)| {
            let mut o = ran_json(v, opts);
            o.as_object_mut().unwrap().insert(
                "provenance".to_string(),
                json!(tags.iter().map(|t| t.label()).collect::<Vec<_>>()),
            );
            o
        }).collect::<Vec<_>>(),
        "counts": report.counts.as_ref().map(counts_json),
        "bound": report.bound.as_ref().map(bound_json),
        "ledger": Value::Null,
    })
}

/// JSON report for a hypothesis-violated input: verdict plus the bound
/// fallback.
pub fn violation_json(input: &str, v: &HypothesisVerdict, bound: &BoundReport) -> Value {
    json!({
        "input": input,
        "hypotheses": verdict_json(v),
        "sigma": Value::Null,
        "condition_ii": Value::Null,
        "condition_iii": Value::Null,
        "bifurcation_set": Value::Null,
        "counts": Value::Null,
        "bound": bound_json(bound),
        "ledger": Value::Null,
    })
}

pub fn analyze_text(input: &str, report: &BifurcationReport, opts: &ReportOptions) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {input}\n"));
    let v = &report.verdict;
    out.push_str(&format!(
        "hypotheses: non-degenerate on Gamma+ u Gamma-: {}; Morse bad faces: {}\n",
        v.nondegenerate_plus_minus, v.morse_bad_faces
    ));
    if report.sigma.is_empty() {
        out.push_str("critical values: (none)\n");
    } else {
        let vals: Vec<String> = report.sigma.iter().map(|r| ran_text(r, opts)).collect();
        out.push_str(&format!("critical values: {}\n", vals.join(", ")));
    }
    out.push_str(&format!(
        "condition (ii): {}{}\n",
        if report.cond_ii { "holds" } else { "fails" },
        if report.cond_ii_witnesses.is_empty() {
            String::new()
        } else {
            let w: Vec<String> = report
                .cond_ii_witnesses
                .iter()
                .map(|f| format!("({},{})", f.covector.p, f.covector.q))
                .collect();
            format!(" (witness faces: {})", w.join(", "))
        }
    ));
    if report.cond_iii.is_empty() {
        out.push_str("condition (iii) values: (none)\n");
    } else {
        for (face, t, val) in &report.cond_iii {
            out.push_str(&format!(
                "condition (iii): face ({},{}) t* = {} value = {}\n",
                face.covector.p,
                face.covector.q,
                ran_text(t, opts),
                ran_text(val, opts)
            ));
        }
    }
    if report.b_set.is_empty() {
        out.push_str("bifurcation set: (empty)\n");
    } else {
        out.push_str("bifurcation set:\n");
        for (val, tags) in &report.b_set {
            let labels: Vec<&str> = tags.iter().map(|t| t.label()).collect();
            out.push_str(&format!(
                "  {}  [{}]\n",
                ran_text(val, opts),
                labels.join(", ")
            ));
        }
    }
    if let Some(c) = &report.counts {
        out.push_str(&counts_text(c));
    }
    if let Some(b) = &report.bound {
        out.push_str(&bound_text(b));
    }
    out
}

pub fn counts_text(c: &CountReport) -> String {
    let mut out = format!(
        "counts: R+ = {}, R0 = {}, cleav + vanish = {}\n",
        c.r_plus, c.r_zero, c.total
    );
    match c.exact_split {
        Some((cleav, vanish)) => {
            out.push_str(&format!("counts: cleav = {cleav}, vanish = {vanish}\n"));
        }
        None => {
            out.push_str(&format!(
                "counts: vanish in [{}, {}] (tangency undetermined at some points)\n",
                c.vanish_min, c.vanish_max
            ));
        }
    }
    out
}

pub fn bound_text(b: &BoundReport) -> String {
    format!(
        "bound: |Sigma_f| = {}, epsilon = {}, R0 = {}, sum mu = {} => |B_f| <= {}\n",
        b.sigma_size, b.epsilon, b.r_zero, b.mu_sum, b.total
    )
}

pub fn ledger_text(l: &Ledger) -> String {
    let mut out = String::new();
    for e in &l.entries {
        let lams: Vec<String> = e
            .lambdas
            .iter()
            .map(|(c, v)| format!("({},{})->{}", c.p, c.q, v))
            .collect();
        out.push_str(&format!(
            "ledger: site {} | lambdas [{}] | eps = {} | Lambda = {}\n",
            e.site,
            lams.join(", "),
            e.epsilon_sigma,
            e.lambda_after
        ));
    }
    out.push_str(&format!(
        "ledger: final bound |B_f| <= |Sigma_f| + Lambda = {} + {} = {}\n",
        l.sigma_size,
        l.final_bound - l.sigma_size,
        l.final_bound
    ));
    out
}

pub fn violation_text(input: &str, v: &HypothesisVerdict, bound: &BoundReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("input: {input}\n"));
    if !v.nondegenerate_plus_minus {
        let faces: Vec<String> = v
            .offending_nondegenerate
            .iter()
            .map(|c| format!("({},{})", c.p, c.q))
            .collect();
        out.push_str(&format!(
            "hypothesis violated: degenerate face function on {}\n",
            faces.join(", ")
        ));
    }
    if !v.morse_bad_faces {
        let faces: Vec<String> = v
            .offending_morse
            .iter()
            .map(|c| format!("({},{})", c.p, c.q))
            .collect();
        out.push_str(&format!(
            "hypothesis violated: non-Morse bad face on {}\n",
            faces.join(", ")
        ));
    }
    out.push_str("exact bifurcation set unavailable; falling back to the upper bound\n");
    out.push_str(&bound_text(bound));
    out
}
