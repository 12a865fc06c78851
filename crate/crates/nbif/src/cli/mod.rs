//! Command-line front end: expression parsing, dispatch, JSON/text report
//! serialization, and SVG rendering of the Newton polygon and fan.

mod parse;
mod report;
mod svg;

pub use parse::{parse_poly, poly_to_string};
pub use report::{
    analyze_json, analyze_text, ran_json, ran_text, violation_json, ReportOptions,
};
pub use svg::{render_svg, svg_string};

use crate::atinfinity::{bifurcation_set, counts};
use crate::bound::{bound_components, refine_bound, theorem5_bound};
use crate::fan::complete_fan;
use crate::newton::{infinity_faces, newton_polygon};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Analyze,
    Counts,
    Bound,
    Polygon,
}

/// Parsed invocation.
#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    pub polynomial_text: String,
    pub json: bool,
    pub svg_path: Option<String>,
    pub refine_depth: usize,
}

pub const USAGE: &str = "\
usage: nbif <verb> \"<polynomial in x, y>\" [flags]

verbs:
  analyze    hypotheses, critical values, conditions (ii)/(iii), B_f,
             family counts, and the upper bound
  counts     cleaving/vanishing family counts
  bound      upper bound on |B_f| with the refinement ledger
  polygon    render the Newton polygon (and fan) as SVG

flags:
  --json           emit a JSON report
  --svg <path>     SVG output path (polygon verb; default polygon.svg)
  --depth <n>      refinement depth for bound (default 0)

environment:
  NBIF_PRECISION_BITS   display precision for isolating intervals (256)

exit codes: 0 success, 1 parse/usage error, 2 theorem hypotheses violated
(the report then falls back to the upper bound).";

/// Parses command-line arguments (without the executable name).
pub fn parse_args(args: &[String]) -> Result<Command, String> {
    let mut it = args.iter();
    let verb = match it.next().map(String::as_str) {
        Some("analyze") => Verb::Analyze,
        Some("counts") => Verb::Counts,
        Some("bound") => Verb::Bound,
        Some("polygon") => Verb::Polygon,
        Some(other) => return Err(format!("unknown verb '{other}'\n{USAGE}")),
        None => return Err(USAGE.to_string()),
    };
    let mut polynomial_text: Option<String> = None;
    let mut json = false;
    let mut svg_path = None;
    let mut refine_depth = 0usize;
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--svg" => {
                let Some(p) = it.next() else {
                    return Err("--svg requires a path".to_string());
                };
                svg_path = Some(p.clone());
            }
            "--depth" => {
                let Some(d) = it.next() else {
                    return Err("--depth requires a number".to_string());
                };
                refine_depth = d
                    .parse::<usize>()
                    .map_err(|_| format!("invalid depth '{d}'"))?;
            }
            _ if polynomial_text.is_none() => polynomial_text = Some(arg.clone()),
            other => return Err(format!("unexpected argument '{other}'\n{USAGE}")),
        }
    }
    let Some(polynomial_text) = polynomial_text else {
        return Err(format!("missing polynomial argument\n{USAGE}"));
    };
    Ok(Command {
        verb,
        polynomial_text,
        json,
        svg_path,
        refine_depth,
    })
}

/// Executes a command; returns the exit code and the report text.
pub fn run(cmd: &Command) -> (i32, String) {
    let opts = ReportOptions::from_env();
    match execute(cmd, &opts) {
        Ok((code, out)) => (code, out),
        Err(e) => {
            let code = match e {
                Error::Parse { .. } | Error::Io(_) => 1,
                Error::HypothesisViolated(_) | Error::NonIsolatedSingularities => 2,
                _ => 1,
            };
            (code, format!("error: {e}\n"))
        }
    }
}

fn execute(cmd: &Command, opts: &ReportOptions) -> crate::Result<(i32, String)> {
    let f = parse_poly(&cmd.polynomial_text)?;
    let input = &cmd.polynomial_text;
    match cmd.verb {
        Verb::Analyze => match bifurcation_set(&f) {
            Ok(mut rep) => {
                rep.bound = Some(bound_components(&f, rep.sigma.len())?);
                let out = if cmd.json {
                    format!("{:#}\n", analyze_json(input, &rep, opts))
                } else {
                    analyze_text(input, &rep, opts)
                };
                Ok((0, out))
            }
            Err(Error::HypothesisViolated(v)) => {
                let bound = theorem5_bound(&f)?;
                let out = if cmd.json {
                    format!("{:#}\n", report::violation_json(input, &v, &bound))
                } else {
                    report::violation_text(input, &v, &bound)
                };
                Ok((2, out))
            }
            Err(e) => Err(e),
        },
        Verb::Counts => match counts(&f) {
            Ok(c) => {
                let out = if cmd.json {
                    format!(
                        "{:#}\n",
                        serde_json::json!({
                            "input": input,
                            "counts": {
                                "r_plus": c.r_plus,
                                "r_zero": c.r_zero,
                                "total": c.total,
                                "vanish_min": c.vanish_min,
                                "vanish_max": c.vanish_max,
                                "exact_split": c.exact_split.map(|(cl, va)| {
                                    serde_json::json!({"cleav": cl, "vanish": va})
                                }),
                            },
                        })
                    )
                } else {
                    report::counts_text(&c)
                };
                Ok((0, out))
            }
            Err(Error::HypothesisViolated(v)) => {
                let bound = theorem5_bound(&f)?;
                let out = if cmd.json {
                    format!("{:#}\n", report::violation_json(input, &v, &bound))
                } else {
                    report::violation_text(input, &v, &bound)
                };
                Ok((2, out))
            }
            Err(Error::NonIsolatedSingularities) => {
                let bound = theorem5_bound(&f)?;
                let mut out = String::from(
                    "counts unavailable: the critical locus is not finite over the reals\n",
                );
                out.push_str(&report::bound_text(&bound));
                Ok((2, out))
            }
            Err(e) => Err(e),
        },
        Verb::Bound => {
            let ledger = refine_bound(&f, cmd.refine_depth)?;
            let closed = theorem5_bound(&f)?;
            let out = if cmd.json {
                format!(
                    "{:#}\n",
                    serde_json::json!({
                        "input": input,
                        "bound": report::bound_json(&closed),
                        "ledger": report::ledger_json(&ledger),
                    })
                )
            } else {
                let mut out = report::bound_text(&closed);
                out.push_str(&report::ledger_text(&ledger));
                out
            };
            Ok((0, out))
        }
        Verb::Polygon => {
            let polygon = newton_polygon(&f)?;
            let faces = infinity_faces(&f)?;
            let fan = if faces.is_empty() {
                None
            } else {
                Some(complete_fan(
                    &faces.iter().map(|fa| fa.covector).collect::<Vec<_>>(),
                )?)
            };
            let path = cmd.svg_path.clone().unwrap_or_else(|| "polygon.svg".to_string());
            render_svg(&polygon, &faces, fan.as_ref(), &path)?;
            Ok((0, format!("wrote {path}\n")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmd(verb: Verb, poly: &str) -> Command {
        Command {
            verb,
            polynomial_text: poly.to_string(),
            json: false,
            svg_path: None,
            refine_depth: 0,
        }
    }

    #[test]
    fn arg_parsing() {
        let c = parse_args(&[
            "analyze".to_string(),
            "x+y".to_string(),
            "--json".to_string(),
        ])
        .unwrap();
        assert_eq!(c.verb, Verb::Analyze);
        assert!(c.json);
        let c = parse_args(&[
            "bound".to_string(),
            "x".to_string(),
            "--depth".to_string(),
            "3".to_string(),
        ])
        .unwrap();
        assert_eq!(c.refine_depth, 3);
        assert!(parse_args(&[]).is_err());
        assert!(parse_args(&["frobnicate".to_string()]).is_err());
    }

    #[test]
    fn analyze_example1_text_and_exit_codes() {
        let (code, out) = run(&cmd(Verb::Analyze, "x*(1+x*y^2)"));
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("bifurcation set"), "{out}");
        assert!(out.contains("cond_ii"), "{out}");
        // parse error -> exit 1
        let (code, _) = run(&cmd(Verb::Analyze, "x^(-1)"));
        assert_eq!(code, 1);
        // degenerate face -> exit 2 with bound fallback
        let (code, out) = run(&cmd(Verb::Analyze, "x*(1+x*y^2)^2"));
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("|B_f| <="), "{out}");
    }

    #[test]
    fn analyze_json_shape() {
        let c = Command {
            json: true,
            ..cmd(Verb::Analyze, "x*(1+x*y^2)")
        };
        let (code, out) = run(&c);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let bs = v["bifurcation_set"].as_array().unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0]["approx"], "0");
        assert_eq!(bs[0]["minpoly"].as_array().unwrap().len(), 2);
        assert_eq!(bs[0]["provenance"][0], "cond_ii");
        assert_eq!(v["counts"]["exact_split"]["cleav"], 2);
        assert_eq!(v["bound"]["total"], 1);
    }

    #[test]
    fn counts_verb() {
        let (code, out) = run(&cmd(Verb::Counts, "x*(1+x^2*y^2)"));
        assert_eq!(code, 0);
        assert!(out.contains("R+ = 0"), "{out}");
        assert!(out.contains("cleav + vanish = 0"), "{out}");
    }
}
