//! `knotadj`: braid words, 2-bridge closures, invariants and verified
//! 2-adjacencies from the command line.
//!
//! Exit codes: 0 success, 1 a verification came out false, 2 usage or
//! input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use knot_adjacency::adjacency::{
    obstruct_fibered_target, obstruct_pair_adjacency, obstruct_unknot_adjacency, symmetric_grid,
    verify_two_adjacency, FamilyParams, TwistUnit,
};
use knot_adjacency::graph::{build_family_graph, export_dot, export_json, BuildConfig};
use knot_adjacency::{
    cf_to_fraction, fingerprint, fraction_to_canonical_word, parse_braid_word, plat_closure,
    two_bridge_closure, word_to_fraction, BraidWord, Fingerprint, FingerprintPolicy, Fraction,
    LaurentPolynomial,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "knotadj", version, about = "2-bridge knots and verified 2-adjacencies")]
struct Cli {
    /// Skip Alexander polynomials above this many crossings.
    #[arg(long, global = true, env = "ADJ_ALEX_CAP", default_value_t = 40)]
    alexander_cap: usize,

    /// Worker threads for grid verification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a braid word.
    Parse { word: String },
    /// Fingerprint of the closure of a word.
    Invariants { word: String },
    /// Schubert normal form of a closure, a continued fraction, or back to a word.
    Fraction(FractionArgs),
    /// PD code of the closure.
    Closure { word: String },
    /// Verify one member of the K_beta(m, n) family.
    Verify(FamilyArgs),
    /// Extend a tower and verify every level.
    Tower {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Build a sample of the adjacency graph.
    Graph(GraphArgs),
    /// Genus and Alexander obstructions.
    #[command(subcommand)]
    Obstruct(ObstructCommand),
}

#[derive(Args)]
struct FractionArgs {
    /// Braid word whose closure is classified.
    word: Option<String>,
    /// Continued fraction terms, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "word")]
    cf: Option<Vec<i64>>,
    /// Print the canonical odd-length word for `S(p,q)`.
    #[arg(long, conflicts_with_all = ["word", "cf"])]
    word_for: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    beta: String,
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    /// Read m and n as full twists (exponents 2m and 2n).
    #[arg(long)]
    full_twists: bool,
}

#[derive(Args)]
struct GraphArgs {
    /// One base word per line; `#` starts a comment.
    #[arg(long)]
    bases: PathBuf,
    /// Grid of all m, n with 1 <= |m|, |n| <= bound.
    #[arg(long, default_value_t = 2)]
    grid: i64,
    #[arg(long, default_value_t = 0)]
    depth: usize,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    tower_m: i64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    tower_n: i64,
    #[arg(long)]
    full_twists: bool,
    /// Accept witnesses whose family knot equals the target.
    #[arg(long)]
    allow_loops: bool,
    #[arg(long)]
    dot: Option<PathBuf>,
    #[arg(long = "json-out")]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ObstructCommand {
    /// Can a knot be n-adjacent to the unknot?
    Unknot {
        #[arg(long)]
        order: u64,
        /// Take genus and Alexander polynomial from this word.
        #[arg(long, conflicts_with_all = ["genus", "alexander"])]
        word: Option<String>,
        #[arg(long, requires = "alexander")]
        genus: Option<u64>,
        /// Term list such as `1*t^1,-1*t^0,1*t^-1`.
        #[arg(long, requires = "genus")]
        alexander: Option<String>,
    },
    /// Is K -> K' of order n ruled out by the genus bound?
    Pair {
        #[arg(long)]
        genus_k: u64,
        #[arg(long)]
        genus_target: u64,
        #[arg(long)]
        order: u64,
    },
    /// Does an adjacency onto a fibered target contradict the genus rule?
    Fibered {
        #[arg(long)]
        target_fibered: bool,
        #[arg(long)]
        genus_k: u64,
        #[arg(long)]
        genus_target: u64,
        #[arg(long)]
        isotopic: bool,
    },
}

/// An input problem (exit 2) as opposed to a false verdict (exit 1).
enum Failure {
    Input(anyhow::Error),
    Verdict,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<knot_adjacency::Error> for Failure {
    fn from(e: knot_adjacency::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn policy(cli: &Cli) -> FingerprintPolicy {
    FingerprintPolicy { alexander_cap: cli.alexander_cap }
}

fn word(text: &str) -> Result<BraidWord> {
    let w = parse_braid_word(text).with_context(|| format!("cannot parse `{}`", text))?;
    if w.is_empty() {
        bail!("`{}` is the empty word", text);
    }
    Ok(w)
}

/// Reduced, odd-length form used as a family base.
fn base_word(text: &str) -> Result<BraidWord> {
    let w = word(text)?.reduce_closure_word();
    Ok(w.normalize_to_odd_length()?)
}

fn params(a: &FamilyArgs) -> Result<FamilyParams> {
    let unit = if a.full_twists { TwistUnit::Full } else { TwistUnit::Half };
    Ok(FamilyParams::with_unit(a.m, a.n, unit)?)
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    match &cli.command {
        Command::Parse { word: text } => {
            let w = word(text)?;
            let reduced = w.reduce_closure_word();
            if cli.json {
                print_json(&json!({
                    "word": w,
                    "syllables": w.pairs(),
                    "length": w.len(),
                    "crossings": w.crossing_count(),
                    "closure_word": reduced,
                }));
            } else {
                println!("word: {}", w);
                println!("length: {}", w.len());
                println!("crossings: {}", w.crossing_count());
                println!("closure word: {}", reduced);
            }
        }
        Command::Invariants { word: text } => {
            let w = word(text)?;
            let fp = fingerprint(&plat_closure(&w)?, &policy(cli))?;
            if cli.json {
                print_json(&fp);
            } else {
                print_fingerprint(&fp);
            }
        }
        Command::Fraction(args) => fraction(cli, args)?,
        Command::Closure { word: text } => {
            let w = word(text)?;
            let d = two_bridge_closure(&w.reduce_closure_word())?;
            if cli.json {
                print_json(&json!({
                    "pd": d.to_pd_string(),
                    "components": d.component_count(),
                    "crossings": d.crossing_count(),
                    "writhe": d.writhe(),
                }));
            } else {
                println!("components: {}", d.component_count());
                println!("crossings: {}", d.crossing_count());
                println!("writhe: {}", d.writhe());
                println!("pd: {}", d.to_pd_string());
            }
        }
        Command::Verify(args) => {
            let beta = base_word(&args.beta)?;
            let wit = verify_two_adjacency(&beta, params(args)?, &policy(cli))?;
            print_json(&wit);
            if !wit.verdict {
                for issue in &wit.issues {
                    eprintln!("not verified: {}", issue);
                }
                return Err(Failure::Verdict);
            }
        }
        Command::Tower { family, depth } => {
            let p = params(family)?;
            let mut beta = base_word(&family.beta)?;
            let mut levels = Vec::new();
            let mut ok = true;
            for level in 0..*depth {
                let wit = verify_two_adjacency(&beta, p, &policy(cli))?;
                let target = wit.base_fingerprint.fraction.clone();
                let source = wit.family_fingerprint.fraction.clone();
                let issues: Vec<String> = wit.issues.iter().map(|i| i.to_string()).collect();
                if !cli.json {
                    let show = |f: &Option<Fraction>| f.as_ref().map_or("link".to_string(), |f| f.to_string());
                    println!(
                        "level {}: {} -> {} ({} syllables, {} crossings): {}",
                        level + 1,
                        show(&source),
                        show(&target),
                        wit.family_word.len(),
                        wit.family_word.crossing_count(),
                        if wit.verdict { "verified".to_string() } else { issues.join("; ") }
                    );
                }
                levels.push(json!({
                    "level": level + 1,
                    "source": source,
                    "target": target,
                    "syllables": wit.family_word.len(),
                    "crossings": wit.family_word.crossing_count(),
                    "verdict": wit.verdict,
                    "issues": issues,
                }));
                if !wit.verdict {
                    ok = false;
                    break;
                }
                beta = wit.family_word;
            }
            if cli.json {
                print_json(&json!({ "params": p, "levels": levels }));
            }
            if !ok {
                return Err(Failure::Verdict);
            }
        }
        Command::Graph(args) => graph(cli, args)?,
        Command::Obstruct(cmd) => obstruct(cli, cmd)?,
    }
    Ok(())
}

fn show_poly(p: &Option<LaurentPolynomial>) -> String {
    p.as_ref().map_or("-".to_string(), |p| p.to_string())
}

fn print_fingerprint(fp: &Fingerprint) {
    println!("components: {}", fp.components);
    if let Some(f) = &fp.fraction {
        println!("fraction: {}{}", f, if f.is_unknot() { " (unknot)" } else { "" });
    }
    println!("determinant: {}", fp.determinant);
    if fp.is_knot() {
        println!("jones: {}", show_poly(&fp.jones));
        println!("alexander: {}", show_poly(&fp.alexander));
        println!("genus: {}", fp.genus.map_or("-".to_string(), |g| g.to_string()));
    }
}

fn fraction(cli: &Cli, args: &FractionArgs) -> std::result::Result<(), Failure> {
    if let Some(text) = &args.word_for {
        let f: Fraction = text.parse()?;
        let w = fraction_to_canonical_word(&f)?;
        if cli.json {
            print_json(&json!({ "fraction": f, "word": w }));
        } else {
            println!("{}", w);
        }
        return Ok(());
    }
    let f = match (&args.cf, &args.word) {
        (Some(terms), _) => cf_to_fraction(terms)?,
        (None, Some(text)) => {
            let w = word(text)?;
            let d = plat_closure(&w)?;
            if !d.is_knot() {
                return Err(Failure::Input(anyhow!(
                    "closure is a {}-component link",
                    d.component_count()
                )));
            }
            word_to_fraction(&w)?
        }
        (None, None) => return Err(Failure::Input(anyhow!("give a word, --cf or --word-for"))),
    };
    if cli.json {
        print_json(&f);
    } else {
        println!("{}", f);
    }
    Ok(())
}

fn read_bases(path: &PathBuf) -> Result<Vec<BraidWord>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(base_word)
        .collect()
}

fn graph(cli: &Cli, args: &GraphArgs) -> std::result::Result<(), Failure> {
    let bases = read_bases(&args.bases)?;
    let unit = if args.full_twists { TwistUnit::Full } else { TwistUnit::Half };
    if args.grid < 0 {
        return Err(Failure::Input(anyhow!("grid bound must be nonnegative")));
    }
    let mut config = BuildConfig::new(bases);
    config.grid = symmetric_grid(args.grid, unit);
    config.tower_depth = args.depth;
    config.tower_params = FamilyParams::with_unit(args.tower_m, args.tower_n, unit)?;
    config.allow_loops = args.allow_loops;
    config.policy = policy(cli);
    let (g, report) = build_family_graph(&config);
    if let Some(path) = &args.dot {
        fs::write(path, export_dot(&g)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(path) = &args.json_out {
        fs::write(path, export_json(&g)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let longest = config
        .bases
        .iter()
        .filter_map(|b| word_to_fraction(b).ok().and_then(|f| g.vertex_of(&f)))
        .map(|v| g.longest_path_into(v))
        .max()
        .unwrap_or(0);
    let summary = json!({
        "vertices": g.vertices().len(),
        "edges": g.edges().len(),
        "verified": report.verified,
        "failures": report.failures.len(),
        "distinct_fractions": g.vertices().len(),
        "longest_path": longest,
    });
    if cli.json {
        print_json(&json!({ "summary": summary, "failures": report.failures }));
    } else {
        println!("vertices: {}", g.vertices().len());
        println!("edges: {}", g.edges().len());
        println!("verified: {}", report.verified);
        println!("failures: {}", report.failures.len());
        println!("distinct fractions: {}", g.vertices().len());
        println!("longest path: {}", longest);
        for f in &report.failures {
            let p = f.params.map_or(String::new(), |p| format!(" ({})", p));
            eprintln!("failed: {}{} level {}: {}", f.beta, p, f.level, f.reason);
        }
    }
    Ok(())
}

fn obstruct(cli: &Cli, cmd: &ObstructCommand) -> std::result::Result<(), Failure> {
    let out = match cmd {
        ObstructCommand::Unknot { order, word: text, genus, alexander } => {
            let (g, delta) = match (text, genus, alexander) {
                (Some(t), _, _) => {
                    let fp = fingerprint(&plat_closure(&word(t)?)?, &policy(cli))?;
                    match (fp.genus, fp.alexander) {
                        (Some(g), Some(a)) => (g, a),
                        _ => {
                            return Err(Failure::Input(anyhow!(
                                "no Alexander polynomial for this word (link, or above the cap)"
                            )))
                        }
                    }
                }
                (None, Some(g), Some(a)) => {
                    let terms: Vec<&str> = a.split(',').map(str::trim).collect();
                    (*g, LaurentPolynomial::from_term_strings(&terms)?)
                }
                _ => return Err(Failure::Input(anyhow!("give --word, or --genus with --alexander"))),
            };
            json!({ "result": obstruct_unknot_adjacency(g, *order, &delta)?.to_string() })
        }
        ObstructCommand::Pair { genus_k, genus_target, order } => {
            json!({ "impossible": obstruct_pair_adjacency(*genus_k, *genus_target, *order) })
        }
        ObstructCommand::Fibered { target_fibered, genus_k, genus_target, isotopic } => {
            json!({ "contradiction": obstruct_fibered_target(*target_fibered, *genus_k, *genus_target, *isotopic) })
        }
    };
    if cli.json {
        print_json(&out);
    } else {
        for (k, v) in out.as_object().expect("object") {
            println!("{}: {}", k, v.as_str().map_or(v.to_string(), str::to_string));
        }
    }
    Ok(())
}
