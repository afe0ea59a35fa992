use std::collections::BTreeMap;

use polyesf::cycle_index::{AlphaVector, DummyMatrix};
use polyesf::esf::{esf_conditional, esf_distribution, verify_consistency, EsfParams, classical_esf};
use polyesf::json::SCHEMA;
use polyesf::moments::{
    gamma_moment, moment_via_matrix_sum, moment_via_recursion, moment_via_theorem,
    monte_carlo_gamma_moment, monte_carlo_moment, MomentProblem,
};
use polyesf::necklaces::{all_fiber_sizes, enumerate_necklaces, epsilon, multinomial_via_necklaces};
use polyesf::partition::{
    enumerate_all_colored_partitions, enumerate_colored_partitions, multinomial_coefficient,
};
use polyesf::rational::{factorial, format_rational, is_integer, parse_rational, parse_rational_list, to_f64};
use polyesf::samplers::{
    exact_as_f64, partition_histogram, permutation_shape_histogram, tv_distance, PartitionSampler,
    SamplerParams,
};
use polyesf::verify::{run_all, Status, VerifyOptions, CHECKS};
use polyesf::{BigRational, Limits};
use serde_json::{json, Value};

use crate::output::{table, CliError, Report};
use crate::{
    EnumerateArgs, EsfArgs, MomentArgs, MomentMethod, NecklaceCheckArgs, NecklacesArgs,
    SampleArgs, SamplerKind, VerifyArgs,
};

type CliResult = Result<Report, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
        d.extend(b);
    }
    doc
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn rationals_json(v: &[BigRational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

pub fn enumerate(args: &EnumerateArgs, limits: &Limits) -> CliResult {
    let partitions = match args.q {
        Some(0) => return Err(usage("--q must be at least 1")),
        Some(q) if args.n.len() == 1 && q != 1 => {
            enumerate_all_colored_partitions(args.n[0], q, limits)?
        }
        Some(q) if q != args.n.len() => {
            return Err(usage(format!(
                "--n has {} entries but --q is {q}",
                args.n.len()
            )))
        }
        _ => enumerate_colored_partitions(&args.n, limits)?,
    };
    let q = args.q.unwrap_or(args.n.len());
    let rows: Vec<(String, String)> = partitions
        .iter()
        .map(|a| (a.to_string(), format_rational(&multinomial_coefficient(a))))
        .collect();
    let json = document(
        "enumerate",
        json!({
            "n": args.n,
            "q": q,
            "count": partitions.len(),
            "partitions": partitions
                .iter()
                .zip(&rows)
                .map(|(a, (_, multi))| json!({ "partition": a, "multi": multi }))
                .collect::<Vec<_>>(),
        }),
    );
    let pretty = format!("{} partitions\n", partitions.len())
        + &table(
            &["partition", "multi"],
            &rows.into_iter().map(|(a, m)| vec![a, m]).collect::<Vec<_>>(),
        );
    Ok(Report {
        json,
        pretty,
        passed: true,
    })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<BigRational>>, CliError> {
    s.split(';')
        .map(|row| parse_rational_list(row).map_err(CliError::from))
        .collect()
}

fn moment_problem(args: &MomentArgs) -> Result<MomentProblem, CliError> {
    if let Some(path) = &args.problem {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        return serde_json::from_str(&text).map_err(|e| usage(format!("bad problem file: {e}")));
    }
    let (Some(s), Some(alpha)) = (&args.s, &args.alpha) else {
        return Err(usage("give --S, --alpha and --n, or --problem"));
    };
    if args.n.is_empty() {
        return Err(usage("--n is required"));
    }
    let s = DummyMatrix::new(parse_matrix(s)?)?;
    let alpha = AlphaVector::new(parse_rational_list(alpha)?)?;
    Ok(MomentProblem::new(s, alpha, args.n.clone())?)
}

pub fn moment(args: &MomentArgs, limits: &Limits) -> CliResult {
    let p = moment_problem(args)?;
    let method = args.method;
    let dirichlet = method != MomentMethod::Gamma;
    let mut results: BTreeMap<&str, BigRational> = BTreeMap::new();
    if matches!(method, MomentMethod::Theorem | MomentMethod::All) {
        results.insert("theorem", moment_via_theorem(&p, limits)?);
    }
    if matches!(method, MomentMethod::Matrix | MomentMethod::All) {
        results.insert("matrix_sum", moment_via_matrix_sum(&p, limits)?);
    }
    if matches!(method, MomentMethod::Recursion | MomentMethod::All) {
        results.insert("recursion", moment_via_recursion(&p)?);
    }
    if method == MomentMethod::Gamma {
        results.insert("gamma", gamma_moment(&p, limits)?);
    }
    let exact = results.values().next().cloned();
    let agree = results.values().all(|v| Some(v) == exact.as_ref());

    let mut body = json!({
        "problem": &p,
        "distribution": if dirichlet { "dirichlet" } else { "gamma" },
    });
    let mut pretty = String::new();
    if let Some(value) = &exact {
        body["results"] = results
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(format_rational(v))))
            .collect::<serde_json::Map<_, _>>()
            .into();
        body["value"] = json!(format_rational(value));
        body["agree"] = json!(agree);
        pretty += &table(
            &["method", "value"],
            &results
                .iter()
                .map(|(k, v)| vec![k.to_string(), format_rational(v)])
                .collect::<Vec<_>>(),
        );
    }
    let samples = match (method, args.monte_carlo) {
        (_, Some(s)) => Some(s),
        (MomentMethod::Mc, None) => Some(1_000_000),
        _ => None,
    };
    if let Some(samples) = samples {
        if samples == 0 {
            return Err(usage("--monte-carlo needs at least one sample"));
        }
        let seed = resolve_seed(args.seed);
        let mc = if dirichlet {
            monte_carlo_moment(&p, samples, seed)
        } else {
            monte_carlo_gamma_moment(&p, samples, seed)
        };
        body["monte_carlo"] = json!({
            "estimate": mc.estimate,
            "std_error": mc.std_error,
            "samples": mc.samples,
            "seed": seed,
        });
        pretty += &format!(
            "monte carlo: {} ± {} ({} samples, seed {seed})\n",
            mc.estimate, mc.std_error, mc.samples
        );
        if let Some(value) = &exact {
            let z = mc.z_score(to_f64(value));
            body["monte_carlo"]["z_score"] = json!(z);
            pretty += &format!("standard errors from exact: {z:.3}\n");
        }
    }
    if !agree {
        pretty += "methods disagree\n";
    }
    Ok(Report {
        json: document("moment", body),
        pretty,
        passed: agree,
    })
}

fn esf_params(theta: &BigRational, p: Option<&str>, q: Option<usize>) -> Result<EsfParams, CliError> {
    let p = match (p, q) {
        (Some(p), _) => parse_rational_list(p)?,
        (None, Some(0)) => return Err(usage("--q must be at least 1")),
        (None, Some(q)) => vec![BigRational::new(1.into(), (q as i64).into()); q],
        (None, None) => vec![BigRational::from_integer(1.into())],
    };
    if let Some(q) = q {
        if q != p.len() {
            return Err(usage(format!("--p has {} entries but --q is {q}", p.len())));
        }
    }
    Ok(EsfParams::new(theta.clone(), p)?)
}

pub fn esf(args: &EsfArgs, limits: &Limits) -> CliResult {
    let theta = parse_rational(&args.theta)?;
    let params = esf_params(&theta, args.p.as_deref(), args.q)?;
    let (n, d) = match &args.conditional {
        Some(n_vec) => {
            if n_vec.len() != params.q() {
                return Err(usage(format!(
                    "--conditional has {} entries for {} colors",
                    n_vec.len(),
                    params.q()
                )));
            }
            let total: u32 = n_vec.iter().sum();
            if args.n.is_some_and(|n| n != total) {
                return Err(usage("--n must equal the sum of --conditional"));
            }
            (total, esf_conditional(n_vec, &theta, limits)?)
        }
        None => {
            let n = args.n.ok_or_else(|| usage("--n is required"))?;
            (n, esf_distribution(n, &params, limits)?)
        }
    };
    let mut body = json!({
        "n": n,
        "q": params.q(),
        "theta": format_rational(&theta),
        "p": rationals_json(params.p()),
        "conditional": args.conditional,
        "total": format_rational(&d.total()),
        "distribution": d.to_json(),
    });
    let mut pretty = table(
        &["partition", "mass"],
        &d.iter()
            .map(|(a, m)| vec![a.to_string(), format_rational(m)])
            .collect::<Vec<_>>(),
    );
    let mut passed = true;
    if args.verify_consistency {
        if n == 0 {
            return Err(usage("--verify-consistency needs n >= 1"));
        }
        passed = verify_consistency(n, &params, limits)?;
        body["consistency"] = json!(passed);
        pretty += &format!(
            "consistency {n} -> {}: {}\n",
            n - 1,
            if passed { "pass" } else { "FAIL" }
        );
    }
    Ok(Report {
        json: document("esf", body),
        pretty,
        passed,
    })
}

pub fn sample(args: &SampleArgs, limits: &Limits) -> CliResult {
    if args.runs == 0 {
        return Err(usage("--runs must be positive"));
    }
    let theta = parse_rational(&args.theta)?;
    let seed = resolve_seed(args.seed);
    let runs = args.runs as f64;
    let (rows, p_json, tv) = match args.sampler {
        SamplerKind::Perm => {
            if theta <= BigRational::from_integer(0.into()) {
                return Err(usage("theta must be positive"));
            }
            let counts = permutation_shape_histogram(args.t, to_f64(&theta), args.runs, seed);
            let exact = args.compare_exact.then(|| classical_esf(args.t as u32, &theta));
            let tv = exact.as_ref().map(|e| {
                tv_distance(&counts, &e.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect())
            });
            let rows: Vec<Value> = counts
                .iter()
                .map(|(lambda, &c)| {
                    let mut row = json!({
                        "shape": lambda.multiplicities(),
                        "count": c,
                        "frequency": c as f64 / runs,
                    });
                    if let Some(e) = &exact {
                        row["exact"] = json!(format_rational(&e[lambda]));
                    }
                    row
                })
                .collect();
            (rows, Value::Null, tv)
        }
        kind => {
            let params = EsfParams::new(theta.clone(), parse_rational_list(&args.p)?)?;
            let sampler = if kind == SamplerKind::Hoppe {
                PartitionSampler::Hoppe
            } else {
                PartitionSampler::Crp
            };
            let fparams = SamplerParams::from_exact(&params)?;
            let counts = partition_histogram(sampler, args.t, &fparams, args.runs, seed);
            let exact = if args.compare_exact {
                Some(esf_distribution(args.t as u32, &params, limits)?)
            } else {
                None
            };
            let tv = exact.as_ref().map(|e| tv_distance(&counts, &exact_as_f64(e)));
            let rows: Vec<Value> = counts
                .iter()
                .map(|(a, &c)| {
                    let mut row = json!({
                        "partition": a,
                        "count": c,
                        "frequency": c as f64 / runs,
                    });
                    if let Some(e) = &exact {
                        row["exact"] = json!(format_rational(&e.mass_of(a)));
                    }
                    row
                })
                .collect();
            (rows, rationals_json(params.p()), tv)
        }
    };
    let sampler_name = match args.sampler {
        SamplerKind::Hoppe => "hoppe",
        SamplerKind::Crp => "crp",
        SamplerKind::Perm => "perm",
    };
    let mut body = json!({
        "sampler": sampler_name,
        "T": args.t,
        "theta": format_rational(&theta),
        "p": p_json,
        "runs": args.runs,
        "seed": seed,
        "histogram": rows,
    });
    if let Some(tv) = tv {
        body["tv_distance"] = json!(tv);
    }
    let key = if args.sampler == SamplerKind::Perm { "shape" } else { "partition" };
    let pretty_rows: Vec<Vec<String>> = rows_for_table(&body["histogram"], key);
    let mut pretty = format!("{sampler_name}, T={}, {} runs, seed {seed}\n", args.t, args.runs)
        + &table(&[key, "count", "frequency", "exact"], &pretty_rows);
    if let Some(tv) = tv {
        pretty += &format!("total variation distance: {tv:.6}\n");
    }
    Ok(Report {
        json: document("sample", body),
        pretty,
        passed: true,
    })
}

fn rows_for_table(histogram: &Value, key: &str) -> Vec<Vec<String>> {
    histogram
        .as_array()
        .map(|rows| {
            rows.iter()
                .map(|r| {
                    let label = if key == "partition" {
                        serde_json::from_value::<polyesf::partition::ColoredPartition>(r[key].clone())
                            .map(|a| a.to_string())
                            .unwrap_or_default()
                    } else {
                        r[key].to_string()
                    };
                    vec![
                        label,
                        r["count"].to_string(),
                        format!("{:.6}", r["frequency"].as_f64().unwrap_or(0.0)),
                        r.get("exact").and_then(Value::as_str).unwrap_or("").to_string(),
                    ]
                })
                .collect()
        })
        .unwrap_or_default()
}

pub fn necklaces(args: &NecklacesArgs, limits: &Limits) -> CliResult {
    let list = enumerate_necklaces(args.q, args.ell, limits)?;
    let entries: Vec<Value> = list
        .iter()
        .map(|nu| {
            json!({
                "word": nu,
                "period": nu.period(),
                "content": epsilon(nu).counts(),
            })
        })
        .collect();
    let json = document(
        "necklaces",
        json!({ "q": args.q, "ell": args.ell, "count": list.len(), "necklaces": entries }),
    );
    let pretty = format!("{} necklaces\n", list.len())
        + &table(
            &["necklace", "period", "content"],
            &list
                .iter()
                .map(|nu| {
                    vec![
                        nu.to_string(),
                        nu.period().to_string(),
                        epsilon(nu).to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        );
    Ok(Report {
        json,
        pretty,
        passed: true,
    })
}

pub fn necklace_check(args: &NecklaceCheckArgs, limits: &Limits) -> CliResult {
    let mut passed = true;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for a in enumerate_colored_partitions(&args.n, limits)? {
        let multi = multinomial_coefficient(&a);
        let via = multinomial_via_necklaces(&a, limits)?;
        let ok = multi == via;
        passed &= ok;
        let status = if ok { "pass" } else { "fail" };
        entries.push(json!({
            "partition": &a,
            "multi": format_rational(&multi),
            "via_necklaces": format_rational(&via),
            "status": status,
        }));
        rows.push(vec![
            a.to_string(),
            format_rational(&multi),
            format_rational(&via),
            status.to_string(),
        ]);
    }
    let fibers = all_fiber_sizes(&args.n, limits)?;
    let total = fibers
        .iter()
        .fold(BigRational::from_integer(0.into()), |acc, (_, s)| acc + s);
    let n: u32 = args.n.iter().sum();
    let expected = BigRational::from_integer(factorial(n));
    let integral = fibers.iter().all(|(_, s)| is_integer(s));
    let fibers_ok = integral && total == expected;
    passed &= fibers_ok;
    let json = document(
        "necklace-check",
        json!({
            "n": args.n,
            "partitions": entries,
            "fibers": {
                "count": fibers.len(),
                "all_integer": integral,
                "total": format_rational(&total),
                "expected": format_rational(&expected),
                "status": if fibers_ok { "pass" } else { "fail" },
            },
            "status": if passed { "pass" } else { "fail" },
        }),
    );
    let pretty = table(&["partition", "multi", "via necklaces", "status"], &rows)
        + &format!(
            "{} necklace multisets, fiber sizes sum to {} (expected {}): {}\n",
            fibers.len(),
            format_rational(&total),
            format_rational(&expected),
            if fibers_ok { "pass" } else { "fail" }
        );
    Ok(Report {
        json,
        pretty,
        passed,
    })
}

pub fn verify(args: &VerifyArgs, limits: &Limits) -> CliResult {
    if args.list {
        return Ok(Report {
            json: document("verify", json!({ "checks": CHECKS })),
            pretty: CHECKS.join("\n") + "\n",
            passed: true,
        });
    }
    for name in &args.only {
        if !CHECKS.contains(&name.as_str()) {
            return Err(usage(format!(
                "unknown check {name:?}; available: {}",
                CHECKS.join(", ")
            )));
        }
    }
    let seed = resolve_seed(args.seed);
    let opts = VerifyOptions {
        n_max: args.n_max,
        runs: args.runs,
        seed,
        inject_fault: args.inject_fault,
        limits: *limits,
    };
    let reports = run_all(&args.only, &opts)?;
    let passed = reports.iter().all(|r| r.status == Status::Pass);
    let json = document(
        "verify",
        json!({
            "seed": seed,
            "n_max": args.n_max,
            "runs": args.runs,
            "checks": reports,
            "status": if passed { "pass" } else { "fail" },
        }),
    );
    let mut pretty = table(
        &["check", "instances", "status"],
        &reports
            .iter()
            .map(|r| {
                vec![
                    r.check.clone(),
                    r.instances.to_string(),
                    if r.status == Status::Pass { "pass" } else { "FAIL" }.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    for r in &reports {
        if let Some(c) = &r.counterexample {
            pretty += &format!("{}: {c}\n", r.check);
        }
    }
    pretty += &format!("seed {seed}\n");
    Ok(Report {
        json,
        pretty,
        passed,
    })
}
