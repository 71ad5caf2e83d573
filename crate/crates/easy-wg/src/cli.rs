//! Command-line frontend. Every subcommand emits JSON by default (plain
//! text via `--format text`); exit code 0 on success, 1 on a domain
//! error (for example a singular Gram matrix), 2 on a usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use num::ToPrimitive;
use serde_json::{json, Value};

use crate::category::{
    closure_capped, verify_classification, ClassificationEntry, ClosureSpec, DEFAULT_CLOSURE_CAP,
};
use crate::category::{CategoryId, Family};
use crate::error::{Error, Result};
use crate::freeprob::{
    bercovici_pata, cumulants_from_moments, law_moments, partition_sum_moments, Kind, LawId,
    MomentSequence,
};
use crate::linalg::{format_rational, RationalMatrix};
use crate::mc::estimate_integral;
use crate::partition::Partition;
use crate::tpoly::TPoly;
use crate::verify::{all_passed, run_battery};
use crate::weingarten::{
    char_moment_asymptotic, char_moment_exact, default_cache_dir, gram, integrate,
    weingarten_with_cache,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "easy-wg",
    version,
    about = "Exact partition calculus and Weingarten integration for the easy orthogonal groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Weingarten cache directory (overrides the environment variable).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the partitions of P(k,l), optionally filtered to a category.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Category filter: o, s, h, b, s', b', a "+" suffix for the
        /// noncrossing version, or o*.
        #[arg(long)]
        category: Option<String>,
    },
    /// Bounded closure of a generator set under the category operations.
    Closure {
        /// Generator partition, repeatable.
        #[arg(long = "generator", required = true)]
        generators: Vec<String>,
        /// Include the basic crossing as an axiom.
        #[arg(long)]
        crossing: bool,
        /// Point bound on every element kept.
        #[arg(long, default_value_t = 8)]
        bound: usize,
        /// Element cap; the run reports complete = false when hit.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
        /// Include the full element list in the output.
        #[arg(long)]
        list: bool,
    },
    /// Identify the closure of one generator against the named categories.
    Classify {
        #[arg(long)]
        generator: Option<String>,
        /// Classify every generator of at most `bound` points instead.
        #[arg(long)]
        all: bool,
        /// Drop the crossing axiom (noncrossing regime).
        #[arg(long)]
        no_crossing: bool,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// Gram matrix of a category basis D_k at dimension n.
    Gram {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Weingarten matrix (inverse Gram) of a category basis.
    Wg {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Exact Haar integral of a monomial in matrix entries (1-based indices).
    Integrate {
        #[arg(long)]
        category: String,
        #[arg(long)]
        n: usize,
        /// Row indices, comma separated.
        #[arg(long)]
        i: String,
        /// Column indices, comma separated.
        #[arg(long)]
        j: String,
    },
    /// Moments of the (truncated) character, exact at finite n or as the
    /// asymptotic polynomial in t.
    #[command(name = "char-moments")]
    CharMoments {
        #[arg(long)]
        category: String,
        #[arg(long)]
        k: usize,
        /// Dimension for the exact finite-n moment.
        #[arg(long)]
        n: Option<usize>,
        /// Truncation rank (defaults to n).
        #[arg(long)]
        s: Option<usize>,
        /// Emit the asymptotic partition-sum polynomial instead.
        #[arg(long)]
        asymptotic: bool,
    },
    /// Cumulants of a category's asymptotic character law, or of an
    /// explicit moment sequence.
    Cumulants {
        /// Lattice for the transform; defaults to the category's side.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        category: Option<String>,
        /// Inline JSON moment list, each entry a {power: "num/den"} map.
        #[arg(long)]
        moments_json: Option<String>,
    },
    /// Bercovici-Pata map applied to a classical moment sequence.
    Bp {
        /// Inline JSON moment list, each entry a {power: "num/den"} map.
        #[arg(long)]
        moments_json: String,
    },
    /// Moments of a named limit law: g, p, b, s, gamma, pi, beta, sigma,
    /// rho, with an optional ' suffix for the symmetrized variant.
    Laws {
        #[arg(long)]
        law: String,
        #[arg(long)]
        k: usize,
    },
    /// Monte Carlo estimate of a Haar integral against its exact value.
    #[command(name = "mc-check")]
    McCheck {
        /// Group: o, s, h, b, s', b'.
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
        /// Sample count; scientific notation such as 1e6 accepted.
        #[arg(long, default_value = "1e5")]
        samples: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the full acceptance battery; nonzero exit on any failure.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Parses argv, runs the subcommand, prints the result, returns the exit
/// code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap uses 0 for --help/--version and 2 for usage errors
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(Output { value, text, code }) => {
            match format {
                Format::Json => println!("{value}"),
                Format::Text => println!("{text}"),
            }
            code
        }
        Err(e) => {
            let kind = if is_usage_error(&e) {
                "usage"
            } else {
                "domain"
            };
            let payload = json!({ "error": e.to_string(), "kind": kind });
            match format {
                Format::Json => eprintln!("{payload}"),
                Format::Text => eprintln!("error: {e}"),
            }
            if kind == "usage" {
                2
            } else {
                1
            }
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::BadMultiIndex { .. }
            | Error::UnknownCategory(_)
            | Error::UnknownLaw(_)
            | Error::InvalidArgument(_)
    )
}

struct Output {
    value: Value,
    text: String,
    code: i32,
}

impl Output {
    fn ok(value: Value, text: String) -> Result<Output> {
        Ok(Output {
            value,
            text,
            code: 0,
        })
    }
}

fn parse_category(s: &str) -> Result<CategoryId> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family> {
    match parse_category(s)? {
        CategoryId::Classical(f) => Ok(f),
        _ => Err(Error::UnknownCategory(format!(
            "{s} is not one of the six classical groups"
        ))),
    }
}

fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadMultiIndex {
                    msg: format!("bad index component {part:?}"),
                })
        })
        .collect()
}

fn parse_samples(s: &str) -> Result<u64> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad sample count {s:?}")))?;
    if f.is_finite() && (1.0..=1e12).contains(&f) && f.fract() == 0.0 {
        Ok(f as u64)
    } else {
        Err(Error::InvalidArgument(format!("bad sample count {s:?}")))
    }
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "classical" => Ok(Kind::Classical),
        "free" => Ok(Kind::Free),
        _ => Err(Error::InvalidArgument(format!(
            "kind must be classical or free, got {s:?}"
        ))),
    }
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(format_rational(m.get(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn moments_json(entries: &[TPoly]) -> Value {
    Value::Array(entries.iter().map(|p| p.to_json()).collect())
}

fn moments_text(entries: &[TPoly]) -> String {
    entries
        .iter()
        .enumerate()
        .map(|(i, p)| format!("m_{} = {p}", i + 1))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_moments_json(s: &str, kind: Kind) -> Result<MomentSequence> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| Error::InvalidArgument(format!("bad moments JSON: {e}")))?;
    let arr = match &v {
        Value::Array(a) => a.clone(),
        Value::Object(o) => match o.get("moments") {
            Some(Value::Array(a)) => a.clone(),
            _ => {
                return Err(Error::InvalidArgument(
                    "moments JSON must be a list or have a \"moments\" list".into(),
                ))
            }
        },
        _ => {
            return Err(Error::InvalidArgument(
                "moments JSON must be a list or have a \"moments\" list".into(),
            ))
        }
    };
    let entries: Result<Vec<TPoly>> = arr.iter().map(TPoly::from_json).collect();
    Ok(MomentSequence {
        kind,
        entries: entries?,
    })
}

fn rational_value(r: &BigRational) -> Value {
    json!({ "value": format_rational(r) })
}

fn classification_json(e: &ClassificationEntry) -> Value {
    serde_json::to_value(e).expect("classification entries serialize")
}

fn dispatch(cli: Cli) -> Result<Output> {
    let cache_dir = cli.cache_dir.clone().or_else(default_cache_dir);
    match cli.command {
        Command::Enumerate { k, l, category } => {
            let filter = category.as_deref().map(parse_category).transpose()?;
            let words: Vec<String> = Partition::enumerate(k, l)?
                .filter(|p| filter.is_none_or(|c| c.contains(p)))
                .map(|p| p.to_string())
                .collect();
            let text = words.join("\n");
            Output::ok(
                json!({ "k": k, "l": l, "count": words.len(), "partitions": words }),
                text,
            )
        }
        Command::Closure {
            generators,
            crossing,
            bound,
            cap,
            list,
        } => {
            let gens: Result<Vec<Partition>> =
                generators.iter().map(|g| Partition::parse(g)).collect();
            let spec = ClosureSpec {
                generators: gens?,
                crossing_axiom: crossing,
                point_bound: bound,
            };
            let res = closure_capped(&spec, cap, None)?;
            let mut value = json!({
                "size": res.set.len(),
                "complete": res.complete,
                "bound": bound,
            });
            if list {
                let words: Vec<String> = res.set.iter().map(|p| p.to_string()).collect();
                value["elements"] = json!(words);
            }
            let text = format!(
                "size {} complete {}{}",
                res.set.len(),
                res.complete,
                if list {
                    format!(
                        "\n{}",
                        res.set
                            .iter()
                            .map(|p| p.to_string())
                            .collect::<Vec<_>>()
                            .join("\n")
                    )
                } else {
                    String::new()
                }
            );
            Output::ok(value, text)
        }
        Command::Classify {
            generator,
            all,
            no_crossing,
            bound,
        } => {
            if all {
                let report = verify_classification(bound, !no_crossing)?;
                let text = format!(
                    "{} generators, {} unidentified",
                    report.entries.len(),
                    report.unidentified
                );
                return Output::ok(
                    serde_json::to_value(&report).expect("report serializes"),
                    text,
                );
            }
            let gen_word = generator.ok_or_else(|| {
                Error::InvalidArgument("classify needs --generator or --all".into())
            })?;
            let p = Partition::parse(&gen_word)?;
            let entry = crate::category::classify_generator(&p, !no_crossing, bound)?;
            let text = format!("{} -> {}", entry.generator, entry.identified_as);
            Output::ok(classification_json(&entry), text)
        }
        Command::Gram { category, k, n } => {
            let c = parse_category(&category)?;
            let data = gram(c, k, n)?;
            let basis: Vec<String> = data.basis.iter().map(|p| p.to_string()).collect();
            let text = format!("|D_{k}| = {} at n = {n}", basis.len());
            Output::ok(
                json!({
                    "category": c.to_string(),
                    "k": k,
                    "n": n,
                    "basis": basis,
                    "gram": matrix_json(&data.gram),
                }),
                text,
            )
        }
        Command::Wg { category, k, n } => {
            let c = parse_category(&category)?;
            let data = weingarten_with_cache(c, k, n, cache_dir.as_deref())?;
            let wg = data.weingarten()?;
            let basis: Vec<String> = data.basis.iter().map(|p| p.to_string()).collect();
            let text = format!("|D_{k}| = {} at n = {n}, Gram invertible", basis.len());
            Output::ok(
                json!({
                    "category": c.to_string(),
                    "k": k,
                    "n": n,
                    "basis": basis,
                    "gram": matrix_json(&data.gram),
                    "weingarten": matrix_json(wg),
                }),
                text,
            )
        }
        Command::Integrate { category, n, i, j } => {
            let c = parse_category(&category)?;
            let iv = parse_indices(&i)?;
            let jv = parse_indices(&j)?;
            let v = integrate(c, n, &iv, &jv)?;
            let text = format_rational(&v);
            Output::ok(rational_value(&v), text)
        }
        Command::CharMoments {
            category,
            k,
            n,
            s,
            asymptotic,
        } => {
            let c = parse_category(&category)?;
            match n {
                Some(n) if !asymptotic => {
                    let s = s.unwrap_or(n);
                    let v = char_moment_exact(c, n, s, k)?;
                    let text = format_rational(&v);
                    Output::ok(rational_value(&v), text)
                }
                _ => {
                    let poly = char_moment_asymptotic(c, k)?;
                    let text = poly.to_string();
                    Output::ok(json!({ "coeffs": poly.to_json() }), text)
                }
            }
        }
        Command::Cumulants {
            kind,
            k,
            category,
            moments_json: mj,
        } => {
            let moments = match (category, mj) {
                (Some(cat), None) => {
                    let c = parse_category(&cat)?;
                    let default_kind = if c.is_free() {
                        Kind::Free
                    } else {
                        Kind::Classical
                    };
                    let kind = kind
                        .as_deref()
                        .map(parse_kind)
                        .transpose()?
                        .unwrap_or(default_kind);
                    MomentSequence {
                        kind,
                        entries: partition_sum_moments(c, k)?,
                    }
                }
                (None, Some(s)) => {
                    let kind = kind
                        .as_deref()
                        .map(parse_kind)
                        .transpose()?
                        .unwrap_or(Kind::Classical);
                    let mut m = parse_moments_json(&s, kind)?;
                    m.entries.truncate(k);
                    m
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "cumulants needs exactly one of --category or --moments-json".into(),
                    ))
                }
            };
            let c = cumulants_from_moments(&moments)?;
            let kind_name = match c.kind {
                Kind::Classical => "classical",
                Kind::Free => "free",
            };
            let text = c
                .entries
                .iter()
                .enumerate()
                .map(|(i, p)| format!("c_{} = {p}", i + 1))
                .collect::<Vec<_>>()
                .join("\n");
            Output::ok(
                json!({ "kind": kind_name, "cumulants": moments_json(&c.entries) }),
                text,
            )
        }
        Command::Bp { moments_json: mj } => {
            let m = parse_moments_json(&mj, Kind::Classical)?;
            let free = bercovici_pata(&m)?;
            Output::ok(
                json!({ "kind": "free", "moments": moments_json(&free.entries) }),
                moments_text(&free.entries),
            )
        }
        Command::Laws { law, k } => {
            let (id, primed) = LawId::parse(&law)?;
            let m = law_moments(id, primed, k)?;
            let kind_name = match m.kind {
                Kind::Classical => "classical",
                Kind::Free => "free",
            };
            Output::ok(
                json!({ "law": law, "kind": kind_name, "moments": moments_json(&m.entries) }),
                moments_text(&m.entries),
            )
        }
        Command::McCheck {
            group,
            n,
            i,
            j,
            samples,
            seed,
        } => {
            let fam = parse_family(&group)?;
            let iv = parse_indices(&i)?;
            let jv = parse_indices(&j)?;
            let count = parse_samples(&samples)?;
            let exact = integrate(CategoryId::Classical(fam), n, &iv, &jv)?;
            let est = estimate_integral(fam, n, &iv, &jv, count, seed)?;
            let exact_f = exact
                .to_f64()
                .ok_or_else(|| Error::InvalidArgument("exact value out of f64 range".into()))?;
            let sigmas = est.sigmas_from(exact_f);
            let text = format!(
                "mean {} stderr {} exact {} sigmas {sigmas:.2}",
                est.mean,
                est.stderr,
                format_rational(&exact)
            );
            Output::ok(
                json!({
                    "mean": est.mean,
                    "stderr": est.stderr,
                    "samples": est.samples,
                    "exact": format_rational(&exact),
                    "sigmas": sigmas,
                }),
                text,
            )
        }
        Command::Verify { seed } => {
            let results = run_battery(seed);
            let passed = all_passed(&results);
            let criteria: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "index": r.index,
                        "name": r.name,
                        "passed": r.passed,
                        "detail": r.detail,
                    })
                })
                .collect();
            let text = results
                .iter()
                .map(|r| {
                    format!(
                        "criterion {:2} [{}] {}: {}",
                        r.index,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.name,
                        r.detail
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                value: json!({ "seed": seed, "passed": passed, "criteria": criteria }),
                text,
                code: if passed { 0 } else { 1 },
            })
        }
    }
}
