use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rcc_core::cert::{normalized_bracket_capped, Caps, DEFAULT_BRACKET_CAP, DEFAULT_CERT_CAP};
use rcc_core::codes::{load_corpus, parse_pd, serialize, validate};
use rcc_core::diagram::PdDiagram;
use rcc_core::engine::{construct, RccSystem, RegionRule};
use rcc_core::solver::{bound_for, generate_table, region_unknotting_number_diagram_with};
use rcc_core::{Error, Result};

#[derive(Parser)]
#[command(name = "rcc", version, about = "Region crossing change on knot diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest diagram the bracket state sum will take.
    #[arg(long, global = true, default_value_t = DEFAULT_BRACKET_CAP)]
    bracket_cap: usize,
    /// Largest diagram unknot certification will take.
    #[arg(long, global = true, default_value_t = DEFAULT_CERT_CAP)]
    cert_cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Input {
    /// PD code, e.g. "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]".
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pd: Option<String>,
    /// File holding a PD code.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Parity,
    Boundary,
}

impl From<Rule> for RegionRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Parity => RegionRule::Parity,
            Rule::Boundary => RegionRule::Boundary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram and print its summary.
    Validate(Input),
    /// List the regions with their corners.
    Regions(Input),
    /// Apply region crossing changes and print the new diagram.
    Apply {
        #[command(flatten)]
        input: Input,
        /// Comma-separated region indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        regions: Vec<usize>,
        #[arg(long, value_enum, default_value = "parity")]
        rule: Rule,
    },
    /// Region sets that change exactly one crossing: the splice construction
    /// and the cheapest linear-algebra solution.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        crossing: usize,
        #[arg(long, value_enum, default_value = "parity")]
        rule: Rule,
    },
    /// The splice construction for one crossing, with its intermediate data.
    Construct {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        crossing: usize,
        #[arg(long, value_enum, default_value = "parity")]
        rule: Rule,
    },
    /// Normalized Kauffman bracket, writhe and unknot verdict.
    Jones(Input),
    /// Region unknotting number of the diagram, as JSON.
    Ur(Input),
    /// Region unknotting numbers for every diagram of a corpus.
    Table {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the upper bounds on the region unknotting number.
    BoundCheck(Input),
}

fn read_input(input: &Input) -> Result<PdDiagram> {
    let text = match (&input.pd, &input.file) {
        (Some(pd), _) => pd.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    parse_pd(&text)
}

/// Runs a command, returning what to print and whether it counts as a
/// domain failure.
fn run(cli: &Cli, out: &mut impl std::io::Write) -> Result<bool> {
    let caps = Caps {
        bracket: cli.bracket_cap,
        cert: cli.cert_cap,
    };
    match &cli.command {
        Command::Validate(input) => {
            let d = read_input(input)?;
            let report = validate(&d)?;
            writeln!(out, "{}", serialize(&d))?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
        }
        Command::Regions(input) => {
            let d = read_input(input)?;
            let system = RccSystem::new(d)?;
            for (i, face) in system.faces.faces().iter().enumerate() {
                let corners: Vec<String> = face
                    .corners
                    .iter()
                    .map(|c| {
                        let p = system.diagram.crossings()[c.crossing].ports();
                        let q = c.quadrant as usize;
                        format!("c{}:{}/{}", c.crossing, p[q], p[(q + 1) % 4])
                    })
                    .collect();
                writeln!(out, "R{i}\t{}", corners.join(" "))?;
            }
        }
        Command::Apply {
            input,
            regions,
            rule,
        } => {
            let system = RccSystem::with_rule(read_input(input)?, (*rule).into())?;
            let set = system.faces.region_set(regions.iter().copied())?;
            writeln!(out, "{}", serialize(&system.apply(&set)?))?;
        }
        Command::Solve {
            input,
            crossing,
            rule,
        } => {
            let system = RccSystem::with_rule(read_input(input)?, (*rule).into())?;
            let target = system.unit_target(*crossing)?;
            let (oracle, weight) = system
                .min_weight_solution(&target)?
                .ok_or(Error::NoSolution)?;
            let built = construct(&system, *crossing)?;
            let line = json!({
                "crossing": crossing,
                "construction": built.regions.indices(),
                "oracle": oracle.indices(),
                "oracle_weight": weight,
                "same_coset": system.same_coset(&built.regions, &oracle)?,
            });
            writeln!(out, "{line}")?;
        }
        Command::Construct {
            input,
            crossing,
            rule,
        } => {
            let system = RccSystem::with_rule(read_input(input)?, (*rule).into())?;
            let built = construct(&system, *crossing)?;
            let recolored: Vec<_> = built
                .recolored
                .iter()
                .map(|p| json!({"crossing": p.crossing, "kind": format!("{:?}", p.kind), "regions": p.regions}))
                .collect();
            let line = json!({
                "crossing": crossing,
                "regions": built.regions.indices(),
                "spliced": serialize(&built.splice.diagram),
                "colored_component": built.colored_component,
                "black": built.coloring.black_faces(),
                "recolored": recolored,
                "inverted": built.inverted,
            });
            writeln!(out, "{line}")?;
        }
        Command::Jones(input) => {
            let d = read_input(input)?;
            let f = normalized_bracket_capped(&d, caps.bracket)?;
            writeln!(out, "f(A) = {f}")?;
            writeln!(out, "writhe = {}", d.writhe())?;
            if d.is_knot() && d.crossing_count() <= caps.cert {
                writeln!(out, "unknot = {}", f.is_one())?;
            }
        }
        Command::Ur(input) => {
            let d = read_input(input)?;
            let r = region_unknotting_number_diagram_with(&d, caps)?;
            writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
        }
        Command::Table { corpus, format } => {
            let corpus = load_corpus(corpus)?;
            let report = generate_table(&corpus, caps);
            match format {
                Format::Text => write!(out, "{}", report.text_table())?,
                Format::Json => write!(out, "{}", report.json_lines())?,
            }
            let bad = report.violations();
            for row in &bad {
                eprintln!("E_TABLE: {} violates its constraint or failed", row.name);
            }
            return Ok(!bad.is_empty());
        }
        Command::BoundCheck(input) => {
            let d = read_input(input)?;
            let r = region_unknotting_number_diagram_with(&d, caps)?;
            let b = bound_for(&r);
            writeln!(out, "{}", serde_json::to_string(&b).expect("serializable"))?;
            return Ok(!b.holds);
        }
    }
    Ok(false)
}

fn exit_code(e: &Error) -> u8 {
    match e.code() {
        "E_PARSE" | "E_EULER" | "E_IO" => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("E_USAGE: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Vec::new();
    let result = run(&cli, &mut out);
    std::io::stdout().write_all(&out).ok();
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}
