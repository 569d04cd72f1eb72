//! Command-line front end for the multisym library.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

use clap::{Args, Parser, Subcommand};
use multisym::rat::{rat_from_str, rat_to_string};
use multisym::trace::{
    fundamental_identity, fundamental_identity_rat, gamma_evaluation_check, generic_matrices,
    random_rat_matrix,
};
use multisym::{
    kernel_member, min_generator_report, parse_poly, psi, reduce_long_word, rewrite_product, s4,
    BasedAlgebra, BasisWord, Rat, RatMatrix, VarContext, WordMultiset,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "multisym", version, about = "Exact computations in symmetric tensor powers")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Algebra descriptor: poly:m, veronese:m:q, or table:<path>.
    #[arg(long)]
    algebra: String,
    /// Tensor power.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a bracket product [w1]...[wr] and show its orbit-sum coordinates.
    Expand {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Comma-separated basis words, e.g. "x^2,x".
        #[arg(long)]
        words: String,
    },
    /// Print the master syzygy for a multiset of n+1 words.
    Psi {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        words: String,
    },
    /// Rewrite a bracket product as products of at most n power sums.
    Rewrite {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        words: String,
    },
    /// Rewrite the long power sum [w1...w_{n+1}] in proper subproducts.
    ReduceWord {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        words: String,
    },
    /// Test whether a T-polynomial lies in the kernel of the presentation.
    KernelTest {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Polynomial in T-symbols, e.g. "T_x^2 - T_x2 - 2*T_xx".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Largest basis-word degree to register T-symbols for.
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
    },
    /// Degreewise minimal-generator counts for the invariant algebra.
    Mingen {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        max_degree: u32,
    },
    /// Verify the fundamental trace identity of n x n matrices.
    TraceCheck {
        #[arg(long)]
        n: usize,
        /// "symbolic" (generic matrices) or "random" (seeded rational points).
        #[arg(long, default_value = "symbolic")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Evaluate a T-polynomial under T_w -> Tr(w(M)) at commuting matrices.
    GammaCheck {
        /// Algebra descriptor; must be poly:m.
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// JSON matrices (inline or a file path): [[["1/2","0"],["0","3"]], ...].
        #[arg(long)]
        matrices: String,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        /// Fail (exit 1) unless the value is exactly 0.
        #[arg(long)]
        expect_zero: bool,
    },
    /// The S4-on-pairs application.
    S4 {
        #[command(subcommand)]
        sub: S4Command,
    },
}

#[derive(Subcommand)]
enum S4Command {
    /// Check that all relation generators map to 0.
    VerifyRelations,
    /// Degreewise kernel-vs-ideal comparison with minimality witnesses.
    Kernel {
        #[arg(long, default_value_t = 10)]
        max_degree: u32,
    },
    /// Indecomposable invariant counts per degree.
    Mingen {
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
    /// Fingerprint of one graph, given as an edge list like "12,34".
    Fingerprint {
        #[arg(long, default_value = "")]
        edges: String,
    },
    /// Partition all 64 labeled 4-vertex graphs by fingerprint and by orbit.
    Graphs,
}

struct Report {
    lines: Vec<String>,
    payload: Map<String, Value>,
    ok: bool,
}

impl Report {
    fn new() -> Report {
        Report {
            lines: Vec::new(),
            payload: Map::new(),
            ok: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: &str, v: Value) {
        self.payload.insert(key.to_string(), v);
    }

    fn fail(&mut self) {
        self.ok = false;
    }

    fn emit(mut self, cli: &Cli) -> ExitCode {
        let text = if cli.json {
            self.payload.insert(
                "status".into(),
                Value::String(if self.ok { "ok" } else { "fail" }.into()),
            );
            serde_json::to_string_pretty(&Value::Object(self.payload)).unwrap() + "\n"
        } else {
            let mut t = self.lines.join("\n");
            t.push('\n');
            t
        };
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None => print!("{text}"),
        }
        if self.ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn words_arg(alg: &BasedAlgebra, text: &str) -> multisym::Result<WordMultiset> {
    text.split(',')
        .map(|w| alg.parse_word(w.trim()))
        .collect::<multisym::Result<Vec<BasisWord>>>()
        .map(WordMultiset::new)
}

fn multiset_label(alg: &BasedAlgebra, mu: &WordMultiset) -> String {
    mu.words()
        .iter()
        .map(|w| format!("[{}]", alg.word_name(w)))
        .collect::<Vec<_>>()
        .join("")
}

/// T-symbols for every basis word up to `max_degree`, for parsing input.
fn tsym_context(alg: &BasedAlgebra, max_degree: u32) -> multisym::Result<VarContext> {
    let words = alg.basis_words_up_to(max_degree)?;
    Ok(VarContext::known(words.iter().map(|w| alg.tsym(w))))
}

fn run(cli: &Cli) -> multisym::Result<Report> {
    let mut report = Report::new();
    match &cli.command {
        Command::Expand { alg, words } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let mu = words_arg(&a, words)?;
            let t = a.bracket_product(alg.n, &mu)?;
            let coeffs = a.to_orbit_basis(alg.n, &t)?;
            report.line(format!("{} =", multiset_label(&a, &mu)));
            report.line(format!("  tensor: {}", a.render_tensor(&t)));
            let mut obj = Map::new();
            for (nu, c) in &coeffs {
                let key = nu
                    .words()
                    .iter()
                    .map(|w| a.word_name(w))
                    .collect::<Vec<_>>()
                    .join(",");
                report.line(format!("  {} * O({})", rat_to_string(c), key));
                obj.insert(key, Value::String(rat_to_string(c)));
            }
            report.field("tensor", Value::String(a.render_tensor(&t)));
            report.field("orbit_coefficients", Value::Object(obj));
        }
        Command::Psi { alg, words } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let mu = words_arg(&a, words)?;
            let p = psi(&a, alg.n, &mu)?;
            report.line(p.to_string());
            report.field("psi", Value::String(p.to_string()));
        }
        Command::Rewrite { alg, words } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let mu = words_arg(&a, words)?;
            let r = rewrite_product(&a, alg.n, &mu)?;
            let mut obj = Map::new();
            report.line(format!("{} =", multiset_label(&a, &mu)));
            for (nu, c) in &r {
                report.line(format!(
                    "  {} * {}",
                    rat_to_string(c),
                    multiset_label(&a, nu)
                ));
                let key = nu
                    .words()
                    .iter()
                    .map(|w| a.word_name(w))
                    .collect::<Vec<_>>()
                    .join(",");
                obj.insert(key, Value::String(rat_to_string(c)));
            }
            report.field("rewrite", Value::Object(obj));
        }
        Command::ReduceWord { alg, words } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let mu = words_arg(&a, words)?;
            let p = reduce_long_word(&a, alg.n, mu.words())?;
            report.line(p.to_string());
            report.field("reduced", Value::String(p.to_string()));
        }
        Command::KernelTest {
            alg,
            poly,
            max_degree,
        } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let ctx = tsym_context(&a, *max_degree)?;
            let f = parse_poly(poly, &ctx)?;
            let inside = kernel_member(&a, alg.n, &f)?;
            report.line(format!(
                "{}",
                if inside { "in kernel" } else { "not in kernel" }
            ));
            report.field("in_kernel", Value::Bool(inside));
            if !inside {
                report.fail();
            }
        }
        Command::Mingen { alg, max_degree } => {
            let a = BasedAlgebra::from_descriptor(&alg.algebra)?;
            let rows = min_generator_report(&a, alg.n, *max_degree)?;
            let mut obj = Map::new();
            for row in &rows[1..] {
                report.line(format!(
                    "degree {}: dim {}, decomposable {}, new generators {}",
                    row.degree, row.dim, row.decomposable_dim, row.indecomposable
                ));
                let witnesses: Vec<Value> = row
                    .witnesses
                    .iter()
                    .map(|mu| Value::String(multiset_label(&a, mu)))
                    .collect();
                obj.insert(
                    row.degree.to_string(),
                    json!({
                        "dim": row.dim,
                        "decomposable": row.decomposable_dim,
                        "indecomposable": row.indecomposable,
                        "witnesses": witnesses,
                    }),
                );
            }
            report.field("degrees", Value::Object(obj));
        }
        Command::TraceCheck {
            n,
            mode,
            seed,
            trials,
        } => {
            report.field("n", json!(n));
            report.field("mode", Value::String(mode.clone()));
            match mode.as_str() {
                "symbolic" => {
                    let y = generic_matrices(*n, n + 1);
                    let p = fundamental_identity(*n, &y)?;
                    let zero = p.is_zero();
                    report.line(format!(
                        "fundamental identity at n = {n}, generic matrices: {}",
                        if zero { "0" } else { "NONZERO" }
                    ));
                    report.field("identity_vanishes", Value::Bool(zero));
                    if !zero {
                        report.fail();
                    }
                }
                "random" => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let mut failures = 0usize;
                    for _ in 0..*trials {
                        let y: Vec<RatMatrix> =
                            (0..=*n).map(|_| random_rat_matrix(*n, &mut rng)).collect();
                        if fundamental_identity_rat(*n, &y)? != Rat::from_integer(0.into()) {
                            failures += 1;
                        }
                    }
                    report.line(format!(
                        "fundamental identity at n = {n}: {trials} random trials, {failures} failures (seed {seed})"
                    ));
                    report.field("seed", json!(seed));
                    report.field("trials", json!(trials));
                    report.field("failures", json!(failures));
                    if failures > 0 {
                        report.fail();
                    }
                }
                other => {
                    return Err(multisym::Error::Invalid(format!(
                        "unknown mode `{other}` (use symbolic or random)"
                    )));
                }
            }
        }
        Command::GammaCheck {
            algebra,
            poly,
            matrices,
            max_degree,
            expect_zero,
        } => {
            let a = BasedAlgebra::from_descriptor(algebra)?;
            let ctx = tsym_context(&a, *max_degree)?;
            let f = parse_poly(poly, &ctx)?;
            let mats = parse_matrices(matrices)?;
            let value = gamma_evaluation_check(&a, &mats, &f)?;
            report.line(format!("value: {}", rat_to_string(&value)));
            report.field("value", Value::String(rat_to_string(&value)));
            if *expect_zero && value != Rat::from_integer(0.into()) {
                report.fail();
            }
        }
        Command::S4 { sub } => run_s4(sub, &mut report)?,
    }
    Ok(report)
}

fn run_s4(sub: &S4Command, report: &mut Report) -> multisym::Result<()> {
    match sub {
        S4Command::VerifyRelations => {
            let names = s4::relation_names();
            let mut obj = Map::new();
            let (_, tilde) = s4::corollary5_presentation();
            for (name, rel) in names.iter().zip(s4::relation_generators()) {
                let image = s4::phi_s4(&rel);
                let zero = image.is_zero();
                report.line(format!(
                    "{name}: image {}",
                    if zero { "0" } else { "NONZERO" }
                ));
                obj.insert((*name).into(), Value::Bool(zero));
                if !zero {
                    report.fail();
                }
            }
            for (k, j) in tilde.iter().enumerate() {
                let zero = s4::phi_s4(j).is_zero();
                let name = format!("substituted {}", names[k + 1]);
                report.line(format!("{name}: image {}", if zero { "0" } else { "NONZERO" }));
                obj.insert(name, Value::Bool(zero));
                if !zero {
                    report.fail();
                }
            }
            report.field("relations_vanish", Value::Object(obj));
        }
        S4Command::Kernel { max_degree } => {
            let r = s4::kernel_report(*max_degree);
            let mut degrees = Map::new();
            for d in &r.degrees {
                report.line(format!(
                    "degree {}: kernel {}, ideal {}, match {}",
                    d.degree, d.kernel_dim, d.ideal_dim, d.matches
                ));
                degrees.insert(
                    d.degree.to_string(),
                    json!({
                        "kernel_dim": d.kernel_dim,
                        "ideal_dim": d.ideal_dim,
                        "match": d.matches,
                    }),
                );
                if !d.matches {
                    report.fail();
                }
            }
            let mut min = Vec::new();
            for w in &r.minimality {
                report.line(format!(
                    "{} (degree {}): ideal {} -> {} without it, essential {}",
                    w.relation, w.degree, w.ideal_dim, w.dropped_dim, w.essential
                ));
                min.push(json!({
                    "relation": w.relation,
                    "degree": w.degree,
                    "ideal_dim": w.ideal_dim,
                    "dropped_dim": w.dropped_dim,
                    "essential": w.essential,
                }));
                if !w.essential {
                    report.fail();
                }
            }
            report.field("degrees", Value::Object(degrees));
            report.field("minimality", Value::Array(min));
        }
        S4Command::Mingen { max_degree } => {
            let profile = s4::min_generator_profile(*max_degree);
            let mut obj = Map::new();
            for (d, count) in (1..).zip(&profile) {
                report.line(format!("degree {d}: {count} new generators"));
                obj.insert(d.to_string(), json!(count));
            }
            report.line(format!("total: {}", profile.iter().sum::<usize>()));
            report.field("new_generators", Value::Object(obj));
            report.field("total", json!(profile.iter().sum::<usize>()));
        }
        S4Command::Fingerprint { edges } => {
            let g = s4::Graph4::parse(edges)?;
            let fp = s4::fingerprint(g);
            let names = [
                "[x]", "[x^2]", "[x^3]", "[z^2]", "[z^4]", "[xz^2]", "[x^2z^2]", "[xz^4]",
                "z1z2z3",
            ];
            let mut obj = Map::new();
            for (name, v) in names.iter().zip(&fp) {
                report.line(format!("{name} = {}", rat_to_string(v)));
                obj.insert((*name).into(), Value::String(rat_to_string(v)));
            }
            report.field("edges", Value::String(g.to_string_edges()));
            report.field("fingerprint", Value::Object(obj));
        }
        S4Command::Graphs => {
            let r = s4::isomorphism_classes();
            let mut classes = Vec::new();
            for (id, (fp, graphs)) in r.fingerprint_classes.iter().enumerate() {
                let members: Vec<String> = graphs
                    .iter()
                    .map(|g| s4::Graph4::to_string_edges(g))
                    .collect();
                report.line(format!(
                    "class {id}: {} graphs, e.g. {{{}}}",
                    members.len(),
                    members[0]
                ));
                classes.push(json!({
                    "graphs": members,
                    "fingerprint": fp.iter().map(rat_to_string).collect::<Vec<_>>(),
                }));
            }
            report.line(format!(
                "{} classes; fingerprint and orbit partitions {}",
                r.fingerprint_classes.len(),
                if r.equal { "agree" } else { "DISAGREE" }
            ));
            report.field("classes", Value::Array(classes));
            report.field("class_count", json!(r.fingerprint_classes.len()));
            report.field("partitions_agree", Value::Bool(r.equal));
            if !r.equal {
                report.fail();
            }
        }
    }
    Ok(())
}

/// Matrices as JSON: inline text or a file path; entries are rational
/// strings or integers.
fn parse_matrices(spec: &str) -> multisym::Result<Vec<RatMatrix>> {
    let text = if spec.trim_start().starts_with('[') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec)
            .map_err(|e| multisym::Error::Invalid(format!("cannot read {spec}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| multisym::Error::Invalid(format!("bad matrix JSON: {e}")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| multisym::Error::Invalid("expected an array of matrices".into()))?;
    arr.iter()
        .map(|m| {
            let rows = m
                .as_array()
                .ok_or_else(|| multisym::Error::Invalid("matrix must be an array of rows".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| multisym::Error::Invalid("row must be an array".into()))?
                        .iter()
                        .map(json_rat)
                        .collect()
                })
                .collect::<multisym::Result<Vec<Vec<Rat>>>>()?;
            RatMatrix::from_rows(rows)
        })
        .collect()
}

fn json_rat(v: &Value) -> multisym::Result<Rat> {
    match v {
        Value::String(s) => {
            rat_from_str(s).ok_or_else(|| multisym::Error::Invalid(format!("bad rational `{s}`")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rat::from_integer(k.into()))
            .ok_or_else(|| multisym::Error::Invalid(format!("bad number {n}"))),
        _ => Err(multisym::Error::Invalid("entry must be string or integer".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => report.emit(&cli),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
