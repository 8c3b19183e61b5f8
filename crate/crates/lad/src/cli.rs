//! Command-line front end. All behaviour lives here so the binary stays a
//! one-line dispatcher; everything is deterministic, and identical argument
//! vectors produce identical bytes.
//!
//! Exit codes: 0 on success, 1 on domain-level "no" results (validation
//! violations, missing isomorphisms, failed independence or round trips),
//! 2 on usage and file errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::ball::{
    ball_group, build_ball_with_cap, check_independence_with_cap, recompute_lad_with_cap,
    DEFAULT_MAX_BALL_VERTICES,
};
use crate::classify::catalog;
use crate::diagram::{
    box_product, burger_mozes, cotree_scopo, from_pair, iso, property_report, scopos,
    smallest_cotree, LocalActionDiagram,
};
use crate::json::{ball_to_json, diagram_from_json, diagram_to_json, report_to_json};
use crate::perm::{ColourDomain, FinitePermGroup, Perm};
use crate::{dot, json};

#[derive(Parser)]
#[command(
    name = "lad",
    version,
    about = "Local action diagrams: validate, construct, analyse, and classify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the diagram invariants of a file
    Validate { file: PathBuf },
    /// Search for an isomorphism between two diagrams
    Iso { file1: PathBuf, file2: PathBuf },
    /// Construct a diagram and print (or write) its JSON
    Make {
        #[command(subcommand)]
        what: MakeCommand,
    },
    /// List all strongly confluent partial orientations
    Scopos {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Full property report: density, simplicity, compactness
    Props {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The smallest cotree and its associated arc set
    Cotree {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a tree ball and export it
    Tree {
        file: PathBuf,
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Order, generators and orbits of the induced ball group
    Ballgroup {
        file: PathBuf,
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Verify the independence property across diagram arcs on a ball
    CheckP {
        file: PathBuf,
        #[arg(long)]
        edge: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Recompute the diagram from the ball action and compare
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Enumerate the vertex-transitive classes at one degree
    Classify {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum MakeCommand {
    /// Single vertex with one self-paired loop per orbit
    Bm {
        /// colour names, whitespace or comma separated
        #[arg(long)]
        domain: String,
        /// semicolon-separated generators in cycle notation
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete-bipartite diagram of two local actions
    Box {
        #[arg(long)]
        domain1: String,
        #[arg(long, default_value = "")]
        gens1: String,
        #[arg(long)]
        domain2: String,
        #[arg(long, default_value = "")]
        gens2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Single vertex from a group and an involution of its orbit set
    Pair {
        #[arg(long)]
        domain: String,
        #[arg(long, default_value = "")]
        gens: String,
        /// cycle notation over orbit indices, e.g. "(0 1)"; empty = identity
        #[arg(long, default_value = "")]
        pairing: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn domain_no(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        usage_error(format!("file error: {e}"))
    }
}

fn ball_cap() -> usize {
    std::env::var("LAD_MAX_BALL")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_BALL_VERTICES)
}

fn load(file: &PathBuf) -> Result<LocalActionDiagram, Failure> {
    let text = fs::read_to_string(file)?;
    diagram_from_json(&text).map_err(|e| usage_error(format!("{}: {e}", file.display())))
}

fn load_valid(file: &PathBuf) -> Result<LocalActionDiagram, Failure> {
    let d = load(file)?;
    let report = d.validate();
    if !report.ok() {
        return Err(domain_no(format!("{}:\n{report}", file.display())));
    }
    Ok(d)
}

fn parse_group(domain: &str, gens: &str) -> Result<FinitePermGroup, Failure> {
    let names: Vec<&str> = domain
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect();
    let domain =
        ColourDomain::new(names).map_err(|e| usage_error(format!("bad domain: {e}")))?;
    let gens: Vec<&str> = gens
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    FinitePermGroup::from_cycles(domain, &gens)
        .map_err(|e| usage_error(format!("bad generators: {e}")))
}

fn parse_pairing(group: &FinitePermGroup, pairing: &str) -> Result<Vec<usize>, Failure> {
    let k = group.orbits().len();
    let domain = ColourDomain::new((0..k).map(|i| i.to_string()))
        .map_err(|e| usage_error(format!("bad orbit set: {e}")))?;
    let perm = Perm::parse(&domain, pairing)
        .map_err(|e| usage_error(format!("bad pairing: {e}")))?;
    // Domain order is lexicographic; orbit indices are single digits here.
    Ok((0..k)
        .map(|i| {
            let idx = domain.index_of(&i.to_string()).expect("index name");
            domain.name(perm.apply(idx)).parse().expect("numeric name")
        })
        .collect())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            load_valid(&file)?;
            println!("ok");
            Ok(())
        }
        Command::Iso { file1, file2 } => {
            let d1 = load_valid(&file1)?;
            let d2 = load_valid(&file2)?;
            match iso(&d1, &d2).map_err(|e| usage_error(e.to_string()))? {
                Some(w) => {
                    for (a, b) in &w.vertex_map {
                        println!("vertex {a} -> {b}");
                    }
                    for (a, b) in &w.arc_map {
                        println!("arc {a} -> {b}");
                    }
                    for (v, pairs) in &w.colour_maps {
                        let text: Vec<String> =
                            pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                        println!("colours at {v}: {}", text.join(" "));
                    }
                    Ok(())
                }
                None => Err(domain_no("not isomorphic".to_string())),
            }
        }
        Command::Make { what } => {
            let (diagram, out) = match what {
                MakeCommand::Bm { domain, gens, out } => {
                    let f = parse_group(&domain, &gens)?;
                    (
                        burger_mozes(&f).map_err(|e| usage_error(e.to_string()))?,
                        out,
                    )
                }
                MakeCommand::Box {
                    domain1,
                    gens1,
                    domain2,
                    gens2,
                    out,
                } => {
                    let f1 = parse_group(&domain1, &gens1)?;
                    let f2 = parse_group(&domain2, &gens2)?;
                    (
                        box_product(&f1, &f2).map_err(|e| usage_error(e.to_string()))?,
                        out,
                    )
                }
                MakeCommand::Pair {
                    domain,
                    gens,
                    pairing,
                    out,
                } => {
                    let h = parse_group(&domain, &gens)?;
                    let r = parse_pairing(&h, &pairing)?;
                    (
                        from_pair(&h, &r).map_err(|e| usage_error(e.to_string()))?,
                        out,
                    )
                }
            };
            emit(&out, &diagram_to_json(&diagram))
        }
        Command::Scopos { file, format } => {
            let d = load_valid(&file)?;
            let all = scopos(&d).map_err(|e| usage_error(e.to_string()))?;
            match format {
                Format::Json => {
                    let sets: Vec<Vec<&String>> =
                        all.iter().map(|s| s.arcs().iter().collect()).collect();
                    let mut text = serde_json::to_string_pretty(&sets).expect("serializable");
                    text.push('\n');
                    print!("{text}");
                }
                _ => {
                    println!("{} scopo(s)", all.len());
                    for s in &all {
                        if s.is_empty() {
                            println!("{{}}");
                        } else {
                            let arcs: Vec<&str> =
                                s.arcs().iter().map(String::as_str).collect();
                            println!("{{{}}}", arcs.join(" "));
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Props { file, format } => {
            let d = load_valid(&file)?;
            let report = property_report(&d).map_err(|e| usage_error(e.to_string()))?;
            match format {
                Format::Json => print!("{}", report_to_json(&report)),
                _ => println!("{report}"),
            }
            Ok(())
        }
        Command::Cotree { file, format } => {
            let d = load_valid(&file)?;
            let cotree = smallest_cotree(&d).map_err(|e| usage_error(e.to_string()))?;
            let cs = cotree_scopo(&d, &cotree).map_err(|e| usage_error(e.to_string()))?;
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Out<'a> {
                        vertices: Vec<&'a String>,
                        scopo_arcs: Vec<&'a String>,
                        is_scopo: bool,
                    }
                    let out = Out {
                        vertices: cotree.vertices.iter().collect(),
                        scopo_arcs: cs.arcs.iter().collect(),
                        is_scopo: cs.is_scopo(),
                    };
                    let mut text = serde_json::to_string_pretty(&out).expect("serializable");
                    text.push('\n');
                    print!("{text}");
                }
                _ => {
                    let vs: Vec<&str> = cotree.vertices.iter().map(String::as_str).collect();
                    println!("smallest cotree: {{{}}}", vs.join(" "));
                    let arcs: Vec<&str> = cs.arcs.iter().map(String::as_str).collect();
                    println!("associated arc set: {{{}}}", arcs.join(" "));
                    println!(
                        "satisfies the scopo conditions: {}",
                        if cs.is_scopo() { "yes" } else { "no" }
                    );
                }
            }
            Ok(())
        }
        Command::Tree {
            file,
            root,
            radius,
            format,
        } => {
            let d = load_valid(&file)?;
            let root = root.unwrap_or_else(|| d.vertex_ids()[0].to_string());
            let ball = build_ball_with_cap(&d, &root, radius, ball_cap())
                .map_err(|e| usage_error(e.to_string()))?;
            match format {
                Format::Dot => print!("{}", dot::ball_to_dot(&ball)),
                Format::Json => print!("{}", ball_to_json(&ball)),
                Format::Text => {
                    println!(
                        "ball over {root} at radius {radius}: {} vertices",
                        ball.vertex_count()
                    );
                    let boundary = (0..ball.vertex_count())
                        .filter(|&v| !ball.is_interior(v))
                        .count();
                    println!("interior {} / boundary {boundary}", ball.vertex_count() - boundary);
                }
            }
            Ok(())
        }
        Command::Ballgroup { file, root, radius } => {
            let d = load_valid(&file)?;
            let root = root.unwrap_or_else(|| d.vertex_ids()[0].to_string());
            let ball = build_ball_with_cap(&d, &root, radius, ball_cap())
                .map_err(|e| usage_error(e.to_string()))?;
            let group = ball_group(&ball).map_err(|e| usage_error(e.to_string()))?;
            println!("order {}", group.order);
            println!("generators {}", group.generators.len());
            let orbits: Vec<String> = group
                .vertex_orbit_sizes
                .iter()
                .map(usize::to_string)
                .collect();
            println!("vertex orbit sizes [{}]", orbits.join(" "));
            Ok(())
        }
        Command::CheckP { file, edge, radius } => {
            let d = load_valid(&file)?;
            let arcs: Vec<String> = match edge {
                Some(a) => vec![a],
                None => d.arc_ids().iter().map(|s| s.to_string()).collect(),
            };
            let mut all_hold = true;
            for arc in &arcs {
                let check = check_independence_with_cap(&d, arc, radius, ball_cap())
                    .map_err(|e| usage_error(e.to_string()))?;
                all_hold &= check.holds;
                println!(
                    "arc {arc}: independence {} (stabilizer {} = {} x {}{})",
                    if check.holds { "holds" } else { "FAILS" },
                    check.stabilizer_order,
                    check.side_orders.0,
                    check.side_orders.1,
                    if check.via_elements {
                        ", certified by element enumeration"
                    } else {
                        ""
                    }
                );
            }
            if all_hold {
                Ok(())
            } else {
                Err(domain_no("independence fails on some arc".to_string()))
            }
        }
        Command::Roundtrip { file, radius } => {
            let d = load_valid(&file)?;
            let radius = match radius {
                Some(r) => r,
                None => {
                    // Smallest permitted radius: quotient diameter plus two.
                    match recompute_lad_with_cap(&d, 0, ball_cap()) {
                        Err(crate::ball::BallError::RadiusTooSmall { required, .. }) => required,
                        _ => 2,
                    }
                }
            };
            let out = recompute_lad_with_cap(&d, radius, ball_cap())
                .map_err(|e| usage_error(e.to_string()))?;
            println!("{}", out.note);
            if out.iso.is_some() {
                Ok(())
            } else {
                print!("{}", json::diagram_to_json(&out.diagram));
                Err(domain_no("round trip failed".to_string()))
            }
        }
        Command::Classify { degree, out, jobs } => {
            let summary =
                catalog(degree, &out, jobs).map_err(|e| usage_error(e.to_string()))?;
            println!(
                "degree {}: {} classes written to {}",
                summary.degree,
                summary.count,
                out.join(format!("d{degree}")).display()
            );
            Ok(())
        }
    }
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("{}", f.message);
            f.code
        }
    }
}
