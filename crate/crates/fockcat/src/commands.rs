use fockcat_core::fock::{gamma_minus, gamma_plus, FockVector};
use fockcat_core::heisenberg::{normal_order, vacuum_expectation, HExpr};
use fockcat_core::macmahon::{self, Flavor, Method, PAIRS_ORACLE_MAX};
use fockcat_core::parse::parse_expression;
use fockcat_core::partition::Partition;
use fockcat_core::planepart::{enumerate_plane_partitions, DESK_SCALE_VOLUME};
use fockcat_core::series::{render_half, QSeries, Rational};
use fockcat_core::symgrp::{ch, character_table, ClassFunction};
use fockcat_core::verify::{run_verify, Budget};
use serde_json::{json, Value};

use crate::output::{self, Format};
use crate::{Cli, Command, Failure, GammaArgs, MethodArg, PlanePartitionArgs, SideArg, VerifyArgs, ZseriesArgs};

type Outcome = Result<String, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::NormalOrder { expr } => normal_order_cmd(fmt, expr),
        Command::Vacuum { expr } => vacuum_cmd(fmt, expr),
        Command::Zseries(args) => zseries_cmd(fmt, cli.max_q, args),
        Command::PlanePartitions(args) => plane_partitions_cmd(fmt, args),
        Command::Gamma(args) => gamma_cmd(fmt, cli.max_q, args),
        Command::CharacterTable { n } => character_table_cmd(fmt, *n),
        Command::Ch { n, lambda } => ch_cmd(fmt, *n, lambda),
        Command::Verify(args) => verify_cmd(fmt, cli.max_q, cli.seed, args),
    }
}

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn parse(expr: &str) -> Result<HExpr, Failure> {
    parse_expression(expr).map_err(|e| usage(format!("cannot parse {expr:?}: {e}")))
}

fn parse_partition(text: &str) -> Result<Partition, Failure> {
    text.parse().map_err(usage)
}

fn word_label(w: &fockcat_core::heisenberg::Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn normal_order_cmd(fmt: Format, expr: &str) -> Outcome {
    let nf = normal_order(&parse(expr)?);
    Ok(match fmt {
        Format::Plain => output::lines([nf.to_string()]),
        Format::Json => output::json(&json!({
            "input": expr,
            "normal_form": nf.to_string(),
            "terms": nf.terms().map(|(w, c)| json!({"word": word_label(w), "coeff": c.to_json()})).collect::<Vec<_>>(),
        })),
        Format::Csv => output::csv(
            &["word", "coefficient"],
            nf.terms().map(|(w, c)| vec![word_label(w), c.to_expr_string()]),
        ),
    })
}

fn vacuum_cmd(fmt: Format, expr: &str) -> Outcome {
    let v = vacuum_expectation(&parse(expr)?);
    Ok(match fmt {
        Format::Plain => output::lines([v.to_expr_string()]),
        Format::Json => output::json(&json!({"input": expr, "value": v.to_expr_string(), "coeff": v.to_json()})),
        Format::Csv => output::csv(&["value"], [vec![v.to_expr_string()]]),
    })
}

fn within_limit(method: Method, max_q: u32) -> bool {
    match method {
        Method::Enumeration => max_q <= DESK_SCALE_VOLUME,
        Method::Pairs => max_q <= PAIRS_ORACLE_MAX,
        _ => true,
    }
}

fn zseries_cmd(fmt: Format, max_q: u32, args: &ZseriesArgs) -> Outcome {
    let flavor = match (args.deformed, args.refined) {
        (_, true) => Flavor::Refined,
        (true, false) => Flavor::Deformed,
        (false, false) => Flavor::Classical,
    };
    let methods: Vec<Method> = match args.method {
        MethodArg::All => Method::ALL
            .into_iter()
            .filter(|m| m.supports(flavor) && within_limit(*m, max_q))
            .collect(),
        MethodArg::Product => vec![Method::Product],
        MethodArg::Transfer => vec![Method::Transfer],
        MethodArg::Commutation => vec![Method::Commutation],
        MethodArg::Enumeration => vec![Method::Enumeration],
        MethodArg::Pairs => vec![Method::Pairs],
    };
    let at_t = args
        .at_t
        .as_deref()
        .map(|s| s.trim().parse::<Rational>().map_err(|_| usage(format!("--at-t expects a rational, got {s:?}"))))
        .transpose()?;
    let report = macmahon::report(flavor, &methods, max_q).map_err(usage)?;
    let shown: Vec<(Method, QSeries)> = report
        .results
        .iter()
        .map(|(m, s)| match &at_t {
            Some(v) => s.specialize_t(v).map(|s| (*m, s)).map_err(usage),
            None => Ok((*m, s.clone())),
        })
        .collect::<Result<_, _>>()?;

    let text = match fmt {
        Format::Plain => {
            let mut out = vec![format!("{flavor} partition function through q^{max_q}")];
            if let Some(v) = &at_t {
                out.push(format!("at t = {v}"));
            }
            let width = shown.iter().map(|(m, _)| m.to_string().len()).max().unwrap_or(0);
            out.extend(shown.iter().map(|(m, s)| format!("{:<width$}  {s}", m.to_string())));
            for v in &report.verdicts {
                if !v.agrees {
                    let at = v.first_mismatch_u.map_or_else(String::new, |u| format!(" at q^{}", render_half(u as i64)));
                    out.push(format!("mismatch: {} differs from {}{at}", v.method, v.reference));
                }
            }
            for (m, ok) in &report.integral {
                if !ok {
                    out.push(format!("non-integral coefficients: {m}"));
                }
            }
            out.push(format!("agree: {}", if report.all_agree() { "yes" } else { "no" }));
            output::lines(out)
        }
        Format::Json => {
            let mut v = report.to_json();
            v["at_t"] = at_t.as_ref().map_or(Value::Null, |t| Value::String(t.to_string()));
            v["results"] = json!(shown
                .iter()
                .map(|(m, s)| json!({"method": m.to_string(), "series": s.to_json(), "text": s.to_string()}))
                .collect::<Vec<_>>());
            output::json(&v)
        }
        Format::Csv => output::csv(
            &["method", "q_power", "coefficient"],
            shown.iter().flat_map(|(m, s)| {
                s.terms()
                    .map(|(u, c)| vec![m.to_string(), render_half(u as i64), c.to_expr_string()])
                    .collect::<Vec<_>>()
            }),
        ),
    };
    if report.all_agree() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn plane_partitions_cmd(fmt: Format, args: &PlanePartitionArgs) -> Outcome {
    if args.volume > DESK_SCALE_VOLUME {
        return Err(usage(format!(
            "exhaustive enumeration is limited to volume <= {DESK_SCALE_VOLUME}, got {}",
            args.volume
        )));
    }
    let all = enumerate_plane_partitions(args.volume);
    let v = args.volume;
    Ok(if args.list {
        match fmt {
            Format::Plain => output::lines(all.iter().map(ToString::to_string)),
            Format::Json => output::json(&json!({
                "volume": v,
                "plane_partitions": all.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })),
            Format::Csv => output::csv(
                &["index", "plane_partition"],
                all.iter().enumerate().map(|(i, p)| vec![i.to_string(), p.to_string()]),
            ),
        }
    } else if args.slices {
        match fmt {
            Format::Plain => output::lines(all.iter().map(|p| {
                let slices: Vec<String> = p.diagonal_slices().iter().map(|(m, s)| format!("{m}:{s}")).collect();
                format!("{p}  {}", slices.join(" "))
            })),
            Format::Json => output::json(&json!({
                "volume": v,
                "plane_partitions": all.iter().map(|p| {
                    let slices: serde_json::Map<String, Value> = p
                        .diagonal_slices()
                        .iter()
                        .map(|(m, s)| (m.to_string(), Value::String(s.to_string())))
                        .collect();
                    json!({"plane_partition": p.to_string(), "slices": slices})
                }).collect::<Vec<_>>(),
            })),
            Format::Csv => output::csv(
                &["plane_partition", "diagonal", "slice"],
                all.iter().flat_map(|p| {
                    p.diagonal_slices()
                        .iter()
                        .map(|(m, s)| vec![p.to_string(), m.to_string(), s.to_string()])
                        .collect::<Vec<_>>()
                }),
            ),
        }
    } else {
        match fmt {
            Format::Plain => output::lines([all.len().to_string()]),
            Format::Json => output::json(&json!({"volume": v, "count": all.len()})),
            Format::Csv => output::csv(&["volume", "count"], [vec![v.to_string(), all.len().to_string()]]),
        }
    })
}

/// `q1/2`, `q3/2`, `q2`, `q^(3/2)`, `q` to a power of `u = q^{1/2}`.
fn parse_spectral(text: &str) -> Result<u32, Failure> {
    let bad = || usage(format!("--z expects a positive power of q such as q1/2 or q2, got {text:?}"));
    let body = text.trim().strip_prefix(['q', 'Q']).ok_or_else(bad)?;
    let body = body.strip_prefix('^').unwrap_or(body);
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body).trim();
    let units = if body.is_empty() {
        2
    } else if let Some((num, den)) = body.split_once('/') {
        if den.trim() != "2" {
            return Err(bad());
        }
        num.trim().parse::<u32>().map_err(|_| bad())?
    } else {
        body.parse::<u32>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)?
    };
    if units == 0 {
        return Err(bad());
    }
    Ok(units)
}

fn gamma_cmd(fmt: Format, max_q: u32, args: &GammaArgs) -> Outcome {
    let z = parse_spectral(&args.z)?;
    let state = parse_partition(&args.state)?;
    if state.weight() > args.cutoff {
        return Err(usage(format!("state {state} is above the cutoff {}", args.cutoff)));
    }
    let order = macmahon::series_order(max_q);
    let start = FockVector::basis(state.clone(), args.cutoff, order);
    let result = match args.side {
        SideArg::Minus => gamma_minus(&start, z),
        SideArg::Plus => gamma_plus(&start, z),
    };
    let side = match args.side {
        SideArg::Minus => "minus",
        SideArg::Plus => "plus",
    };
    Ok(match fmt {
        Format::Plain => output::lines([result.to_string()]),
        Format::Json => output::json(&json!({
            "side": side,
            "z_exponent": render_half(z as i64),
            "state": state.to_string(),
            "cutoff": args.cutoff,
            "order": render_half(order as i64),
            "result": result.to_json(),
        })),
        Format::Csv => output::csv(
            &["state", "coefficient"],
            result.terms().map(|(l, c)| vec![l.to_string(), c.to_string()]),
        ),
    })
}

fn character_table_cmd(fmt: Format, n: u32) -> Outcome {
    let classes = Partition::all_of(n);
    let table = character_table(n);
    let labels: Vec<String> = classes.iter().map(ToString::to_string).collect();
    Ok(match fmt {
        Format::Plain => {
            let cells: Vec<Vec<String>> = table.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            let first = labels.iter().map(String::len).max().unwrap_or(0).max(1);
            let widths: Vec<usize> = (0..labels.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([labels[j].len()]).max().unwrap_or(1))
                .collect();
            let row = |head: &str, items: &[String]| {
                let body: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                format!("{head:<first$}  {}", body.join("  ")).trim_end().to_string()
            };
            let mut out = vec![row("", &labels)];
            out.extend(labels.iter().zip(&cells).map(|(l, r)| row(l, r)));
            output::lines(out)
        }
        Format::Json => output::json(&json!({
            "n": n,
            "classes": labels,
            "rows": labels.iter().zip(&table).map(|(l, r)| json!({"lambda": l, "values": r})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let header: Vec<&str> = ["lambda"].into_iter().chain(labels.iter().map(String::as_str)).collect();
            output::csv(
                &header,
                labels.iter().zip(&table).map(|(l, r)| {
                    std::iter::once(l.clone()).chain(r.iter().map(ToString::to_string)).collect::<Vec<_>>()
                }),
            )
        }
    })
}

fn ch_cmd(fmt: Format, n: u32, lambda: &str) -> Outcome {
    let lambda = parse_partition(lambda)?;
    if lambda.weight() != n {
        return Err(usage(format!("{lambda} is not a partition of {n}")));
    }
    let image = ch(&ClassFunction::irreducible(&lambda));
    Ok(match fmt {
        Format::Plain => output::lines([image.to_string()]),
        Format::Json => output::json(&json!({
            "n": n,
            "lambda": lambda.to_string(),
            "ch": image.to_string(),
            "terms": image.poly.terms().map(|(mu, c)| json!({"mu": mu.to_string(), "coeff": c.to_json()})).collect::<Vec<_>>(),
        })),
        Format::Csv => output::csv(
            &["mu", "coefficient"],
            image.poly.terms().map(|(mu, c)| vec![mu.to_string(), c.to_expr_string()]),
        ),
    })
}

fn verify_cmd(fmt: Format, max_q: u32, seed: u64, args: &VerifyArgs) -> Outcome {
    let budget = Budget {
        max_n: args.max_n,
        random_words: args.words,
        symmetrizer_rank: args.symmetrizer_rank,
        character_rank: args.character_rank,
        ch_rank: args.ch_rank,
        fock_cutoff: args.cutoff,
        max_volume: args.max_volume.min(DESK_SCALE_VOLUME),
        max_q,
        seed,
        ..Budget::default()
    };
    let report = run_verify(&args.suite, &budget).map_err(usage)?;
    let text = match fmt {
        Format::Plain => {
            let mut out: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    if c.passed {
                        format!("PASS {}/{}", c.suite, c.name)
                    } else {
                        format!("FAIL {}/{} {}", c.suite, c.name, c.detail)
                    }
                })
                .collect();
            let failed = report.failures().count();
            out.push(format!("{} checks, {failed} failed", report.checks.len()));
            output::lines(out)
        }
        Format::Json => output::json(&report.to_json()),
        Format::Csv => output::csv(
            &["suite", "name", "passed", "detail"],
            report
                .checks
                .iter()
                .map(|c| vec![c.suite.to_string(), c.name.to_string(), c.passed.to_string(), c.detail.to_string()]),
        ),
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}
