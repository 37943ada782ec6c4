//! Command-line front door. Every run echoes its resolved configuration into
//! the JSON output, numeric content is rendered as exact strings, and
//! identical invocations produce byte-identical output.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification
//! failure.

use clap::{Parser, Subcommand};
use lightcone::json as cert;
use lightcone::minkowski::{
    clique_factorization_map, explicit_map, semilinear_map, theorem_glavni_verdict, LightMap,
    MinkowskiSpace, RuleMode,
};
use lightcone::ovoid::{
    construction, enumerate_generators, generator_audit, ovoid_to_affine_indep,
    search_partial_ovoid, verify_partial_ovoid, OvoidCheck,
};
use lightcone::polar::{AffineGraph, QuadricGraph};
use lightcone::spectrum::{
    canonical_form, core_verdict, hoffman_alpha_bound, spectrum_character,
    spectrum_character_analytic, spectrum_closed_form, spectrum_numeric_oracle,
};
use lightcone::{named_form, Field, FieldSpec, FormKind, SymForm, Vect};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "lightcone", version, about = "Exact toolkit for affine polar graphs, ovoids, and finite Minkowski light-cone maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Field spec "p^k" or "p^k/c0,c1,...,ck" (modulus little-endian)
    #[arg(long, global = true)]
    field: Option<String>,
    /// Field order shorthand (factored as p^k automatically)
    #[arg(short = 'q', long, global = true)]
    q: Option<u64>,
    /// Dimension of the ambient space
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Form id ("minkowski", "antidiag", "paper-5x5", ...) or a JSON file
    #[arg(long, global = true)]
    form: Option<String>,
    /// Form kind: parabolic | hyperbolic | elliptic
    #[arg(long, global = true)]
    kind: Option<String>,
    /// Exhaustive graph work cap (vertex count)
    #[arg(long, global = true, default_value_t = 10_000)]
    budget_vertices: u64,
    /// Branch-and-bound node cap
    #[arg(long, global = true, default_value_t = 200_000_000)]
    budget_nodes: u64,
    /// Pairwise verification cap
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_pairs: u128,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker count (reserved; all kernels currently run single-threaded)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write JSON here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render an aligned text table instead of compact JSON
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a finite field (modulus, non-square, quadratic character)
    Field,
    /// Classify a symmetric form (kind, Witt index, generator size)
    Classify,
    /// Report graph parameters for the affine and quadric graphs of a form
    Graph,
    /// Exact spectrum of an affine polar graph
    Spectrum {
        /// closed | character | analytic | numeric
        #[arg(long, default_value = "closed")]
        source: String,
    },
    /// Maximum clique certificate for an affine polar graph
    Clique,
    /// Core verdict: exact/bounded independence number and clique cover test
    Mis,
    /// Ovoid search, verification, constructions, and affine transfer
    Ovoid {
        #[command(subcommand)]
        action: OvoidCmd,
    },
    /// Light-cone map construction, verification, and the main-theorem verdict
    Map {
        #[command(subcommand)]
        action: MapCmd,
    },
}

#[derive(Subcommand)]
enum OvoidCmd {
    /// Exact search for a maximum partial ovoid, with a generator audit
    Search,
    /// Verify a point set from a JSON file
    Verify {
        #[arg(long)]
        points: PathBuf,
    },
    /// Build a named construction: primer0 | primer1 | primer2 | primer3
    Construct { name: String },
    /// Turn an ovoid of an antidiagonal quadric into affine independent sets
    Transfer {
        /// Point file; when omitted, an exact search supplies the ovoid
        #[arg(long)]
        points: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapCmd {
    /// Construct a light-cone map
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Verify the light-cone rule for a map
    Verify {
        /// Named example map: dim2 | dim3 | exa5 | dim6_thas | dim6_kantor
        #[arg(long)]
        example: String,
        /// exhaustive | sampled
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Sample count for sampled mode
        #[arg(long, default_value_t = 1_000_000)]
        count: u64,
    },
    /// Which branch of the classification theorem applies to M_n(q)
    Verdict,
}

#[derive(Subcommand)]
enum BuildCmd {
    /// x -> a P x^tau + x0 with P Lorentz or anti-Lorentz
    Semilinear {
        #[arg(long, default_value = "1")]
        scale: String,
        /// Use the block anti-Lorentz matrix instead of the identity
        #[arg(long)]
        anti: bool,
        /// Frobenius exponent j (tau = x -> x^{p^j})
        #[arg(long, default_value_t = 0)]
        frobenius: usize,
        /// Translation vector, comma-separated ("1,0,0,0")
        #[arg(long)]
        shift: Option<String>,
    },
    /// Clique-factorization endomorphism from a maximum clique and MIS
    Factor,
    /// A named closed-form example map
    Example { name: String },
}

struct Outcome {
    result: Value,
    verified: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help/--version through the error path too
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let config = echo_config(&cli);
    match run(&cli) {
        Ok(out) => {
            let doc = json!({
                "schema": 1,
                "config": config,
                "result": out.result,
            });
            let rendered = if cli.pretty {
                let mut s = String::new();
                pretty(&doc, 0, &mut s);
                s
            } else {
                serde_json::to_string(&doc).expect("serializable") + "\n"
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{rendered}");
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn echo_config(cli: &Cli) -> Value {
    json!({
        "subcommand": match &cli.cmd {
            Cmd::Field => "field",
            Cmd::Classify => "classify",
            Cmd::Graph => "graph",
            Cmd::Spectrum { .. } => "spectrum",
            Cmd::Clique => "clique",
            Cmd::Mis => "mis",
            Cmd::Ovoid { .. } => "ovoid",
            Cmd::Map { .. } => "map",
        },
        "field": cli.field,
        "q": cli.q,
        "n": cli.n,
        "form": cli.form,
        "kind": cli.kind,
        "budget_vertices": cli.budget_vertices,
        "budget_nodes": cli.budget_nodes,
        "budget_pairs": cli.budget_pairs.to_string(),
        "seed": cli.seed,
        "threads": cli.threads,
    })
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    if cli.threads == 0 {
        return Err("--threads must be at least 1".into());
    }
    match &cli.cmd {
        Cmd::Field => {
            let f = resolve_field(cli)?;
            let ns = f.find_nonsquare();
            Ok(Outcome {
                result: json!({
                    "p": f.p().to_string(),
                    "k": f.k(),
                    "q": f.q().to_string(),
                    "spec": f.spec_string(),
                    "modulus": f.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "nonsquare": f.format_elt(&ns),
                    "eta_minus_one": f.eta(&f.from_int(-1)),
                }),
                verified: true,
            })
        }
        Cmd::Classify => {
            let f = resolve_field(cli)?;
            let form = resolve_form(cli, &f)?;
            Ok(Outcome { result: cert::form_json(&form), verified: true })
        }
        Cmd::Graph => {
            let f = resolve_field(cli)?;
            let form = resolve_form(cli, &f)?;
            let affine = AffineGraph::new(form.clone());
            let quadric = QuadricGraph::new(form);
            Ok(Outcome {
                result: json!({
                    "affine": {
                        "graph": affine.graph_id(),
                        "vertices": affine.vertex_count().to_string(),
                        "valency": affine.valency().to_string(),
                    },
                    "quadric": {
                        "graph": quadric.graph_id(),
                        "points": quadric.point_count(),
                        "generator_size": quadric.class.generator_size.to_string(),
                        "witt_index": quadric.class.witt_index,
                    },
                }),
                verified: true,
            })
        }
        Cmd::Spectrum { source } => {
            let f = resolve_field(cli)?;
            let form = resolve_form(cli, &f)?;
            let report = match source.as_str() {
                "closed" => {
                    spectrum_closed_form(form.classify().kind, form.n, f.q()).map_err(stringify)?
                }
                "character" => spectrum_character(&form, cli.budget_pairs).map_err(stringify)?,
                "analytic" => spectrum_character_analytic(&form).map_err(stringify)?,
                "numeric" => {
                    spectrum_numeric_oracle(&form, cli.budget_vertices).map_err(stringify)?
                }
                other => return Err(format!("unknown spectrum source: {other}")),
            };
            let mut result = cert::spectrum_json(&report);
            result["graph"] = Value::String(AffineGraph::new(form).graph_id());
            result["hoffman"] = match hoffman_alpha_bound(&report) {
                Ok((ratio, floor)) => json!({
                    "bound": ratio.to_string(),
                    "floor": floor.to_string(),
                }),
                Err(_) => Value::Null,
            };
            Ok(Outcome { result, verified: true })
        }
        Cmd::Clique => {
            let f = resolve_field(cli)?;
            let form = resolve_form(cli, &f)?;
            let affine = AffineGraph::new(form);
            let cert_out = affine.max_clique().map_err(stringify)?;
            let verified = cert_out.verified;
            Ok(Outcome { result: cert::vertex_cert_json(&f, &cert_out), verified })
        }
        Cmd::Mis => {
            let f = resolve_field(cli)?;
            let form = resolve_form(cli, &f)?;
            let report =
                core_verdict(&form, cli.budget_vertices, cli.budget_nodes).map_err(stringify)?;
            let verified = report.witness.as_ref().map(|w| w.verified).unwrap_or(true);
            Ok(Outcome { result: cert::core_report_json(&f, &report), verified })
        }
        Cmd::Ovoid { action } => run_ovoid(cli, action),
        Cmd::Map { action } => run_map(cli, action),
    }
}

fn run_ovoid(cli: &Cli, action: &OvoidCmd) -> Result<Outcome, String> {
    let f = resolve_field(cli)?;
    match action {
        OvoidCmd::Search => {
            let form = resolve_form(cli, &f)?;
            let quad = QuadricGraph::new(form);
            let check = search_partial_ovoid(&quad, cli.budget_nodes).map_err(stringify)?;
            ovoid_outcome(&f, &quad, check)
        }
        OvoidCmd::Verify { points } => {
            let form = resolve_form(cli, &f)?;
            let quad = QuadricGraph::new(form);
            let pts = read_points(&f, points)?;
            match verify_partial_ovoid(&quad, &pts) {
                Ok(check) => ovoid_outcome(&f, &quad, check),
                Err(e) => Ok(Outcome {
                    result: json!({"status": "invalid", "reason": e.to_string()}),
                    verified: false,
                }),
            }
        }
        OvoidCmd::Construct { name } => {
            let (form, pts) = construction(name, &f).map_err(stringify)?;
            Ok(Outcome {
                result: json!({
                    "construction": name,
                    "form": cert::form_json(&form),
                    "size": pts.len(),
                    "points": cert::points_json(&f, &pts),
                }),
                verified: true,
            })
        }
        OvoidCmd::Transfer { points } => {
            let form = resolve_form(cli, &f)?;
            let pts: Vec<Vect> = match points {
                Some(path) => read_points(&f, path)?,
                None => {
                    let quad = QuadricGraph::new(form.clone());
                    match search_partial_ovoid(&quad, cli.budget_nodes).map_err(stringify)? {
                        OvoidCheck::Ovoid(c) => c.partial.points,
                        OvoidCheck::Partial(_) => {
                            return Err("search found no full ovoid to transfer".into())
                        }
                    }
                }
            };
            let transfer = ovoid_to_affine_indep(&form, &pts).map_err(stringify)?;
            Ok(Outcome { result: cert::transfer_json(&f, &transfer), verified: true })
        }
    }
}

fn ovoid_outcome(f: &Field, quad: &QuadricGraph, check: OvoidCheck) -> Result<Outcome, String> {
    match check {
        OvoidCheck::Ovoid(c) => {
            let audit = generator_audit(quad, &c.partial.points).map_err(stringify)?;
            let generators = enumerate_generators(quad).map_err(stringify)?;
            let ok = c.verified && audit.iter().all(|&m| m == 1);
            Ok(Outcome {
                result: json!({
                    "status": "ovoid",
                    "certificate": cert::ovoid_cert_json(f, &c),
                    "audit": {
                        "generators": generators.len(),
                        "meets_min": audit.iter().min().copied().unwrap_or(0),
                        "meets_max": audit.iter().max().copied().unwrap_or(0),
                    },
                }),
                verified: ok,
            })
        }
        OvoidCheck::Partial(p) => Ok(Outcome {
            result: json!({
                "status": "partial",
                "quadric": p.quadric,
                "size": p.size,
                "points": cert::points_json(f, &p.points),
            }),
            verified: true,
        }),
    }
}

fn run_map(cli: &Cli, action: &MapCmd) -> Result<Outcome, String> {
    let f = resolve_field(cli)?;
    match action {
        MapCmd::Build { what } => {
            let map = build_map(cli, &f, what)?;
            Ok(Outcome { result: cert::light_map_json(&map, None), verified: true })
        }
        MapCmd::Verify { example, mode, count } => {
            let map = explicit_map(example, &f).map_err(stringify)?;
            let rule_mode = match mode.as_str() {
                "exhaustive" => RuleMode::Exhaustive,
                "sampled" => RuleMode::Sampled { count: *count, seed: cli.seed },
                other => return Err(format!("unknown mode: {other}")),
            };
            let report = lightcone::minkowski::verify_rule(
                &map.space,
                &|v| map.apply(v),
                rule_mode,
                cli.budget_pairs,
            )
            .map_err(stringify)?;
            let passed = report.passed();
            Ok(Outcome { result: cert::light_map_json(&map, Some(&report)), verified: passed })
        }
        MapCmd::Verdict => {
            let n = cli.n.ok_or("map verdict requires -n")?;
            let space = MinkowskiSpace::new(&f, n).map_err(stringify)?;
            let verdict = theorem_glavni_verdict(&space).map_err(stringify)?;
            Ok(Outcome { result: cert::glavni_json(&verdict), verified: true })
        }
    }
}

fn build_map(cli: &Cli, f: &Field, what: &BuildCmd) -> Result<LightMap, String> {
    match what {
        BuildCmd::Semilinear { scale, anti, frobenius, shift } => {
            let n = cli.n.ok_or("map build semilinear requires -n")?;
            let space = MinkowskiSpace::new(f, n).map_err(stringify)?;
            let a = f.parse_elt(scale).map_err(stringify)?;
            let p = if *anti {
                space.make_anti_lorentz().map_err(stringify)?
            } else {
                lightcone::Mat::identity(f, n)
            };
            let x0 = match shift {
                Some(s) => s
                    .split(',')
                    .map(|c| f.parse_elt(c.trim()).map_err(stringify))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![f.zero(); n],
            };
            if x0.len() != n {
                return Err(format!("--shift must have {n} coordinates"));
            }
            semilinear_map(&space, &a, &p, *frobenius, &x0).map_err(stringify)
        }
        BuildCmd::Factor => {
            let n = cli.n.ok_or("map build factor requires -n")?;
            let space = MinkowskiSpace::new(f, n).map_err(stringify)?;
            let graph = space.graph();
            let clique = graph.max_clique().map_err(stringify)?;
            let indep = graph
                .exact_mis(cli.budget_vertices, cli.budget_nodes)
                .map_err(stringify)?;
            clique_factorization_map(&space, &clique.vertices, &indep.vertices)
                .map_err(stringify)
        }
        BuildCmd::Example { name } => explicit_map(name, f).map_err(stringify),
    }
}

fn stringify(e: lightcone::Error) -> String {
    e.to_string()
}

fn resolve_field(cli: &Cli) -> Result<Field, String> {
    if let Some(spec) = &cli.field {
        let parsed = FieldSpec::from_str(spec).map_err(stringify)?;
        return parsed.build().map_err(stringify);
    }
    if let Some(q) = cli.q {
        let (p, k) = factor_prime_power(q)?;
        return Field::new(p, k, None).map_err(stringify);
    }
    Err("a field is required: pass --field p^k or -q".into())
}

fn factor_prime_power(q: u64) -> Result<(u64, usize), String> {
    if q < 2 {
        return Err(format!("{q} is not a prime power"));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(format!("{q} is not a prime power"));
    }
    Ok((p, k))
}

fn resolve_form(cli: &Cli, f: &Field) -> Result<SymForm, String> {
    if let Some(spec) = &cli.form {
        let path = std::path::Path::new(spec);
        if spec.ends_with(".json") || path.exists() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {spec}: {e}"))?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| format!("bad JSON in {spec}: {e}"))?;
            let mat_value = value.get("matrix").unwrap_or(&value);
            let m = cert::mat_from_json(f, mat_value).map_err(stringify)?;
            return SymForm::new(m).map_err(stringify);
        }
        return named_form(spec, f, cli.n).map_err(stringify);
    }
    if let Some(kind) = &cli.kind {
        let kind = parse_kind(kind)?;
        let n = cli.n.ok_or("a canonical form needs -n")?;
        return canonical_form(kind, n, f).map_err(stringify);
    }
    Err("a form is required: pass --form <id|file.json> or --kind with -n".into())
}

fn parse_kind(s: &str) -> Result<FormKind, String> {
    match s {
        "parabolic" | "par" => Ok(FormKind::Parabolic),
        "hyperbolic" | "+" | "plus" => Ok(FormKind::Hyperbolic),
        "elliptic" | "-" | "minus" => Ok(FormKind::Elliptic),
        other => Err(format!("unknown kind: {other}")),
    }
}

fn read_points(f: &Field, path: &PathBuf) -> Result<Vec<Vect>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("bad JSON in {}: {e}", path.display()))?;
    cert::points_from_json(f, &value).map_err(stringify)
}

/// Aligned text rendering for --pretty.
fn pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(v, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(v, indent + 1, out);
                    }
                    _ => {
                        out.push_str(&format!("{pad}{k:<width$}  {}\n", scalar(v)));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) => pretty(item, indent, out),
                    _ => out.push_str(&format!("{pad}{}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(value))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => {
            let inner: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", inner.join(" "))
        }
        other => other.to_string(),
    }
}
