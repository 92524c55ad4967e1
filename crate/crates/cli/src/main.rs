use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use gtperm::atlas::{construct, families, Group, GroupSpec};
use gtperm::classes::ConjugacyClassTable;
use gtperm::dessins::{analyze_dessin, cyclic_structures, load_dessin};
use gtperm::gbar::{gt1, gt_full, GbarContext};
use gtperm::report::{
    dessin_section, gt1_section, gt_full_section, pairs_section, sg_section, CyclicSection, Report,
};
use gtperm::repro::{run_table, TABLES};
use gtperm::sg::SgComputation;
use gtperm::table::{ElementTable, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "gtperm", version, about = "Generating pairs, their symmetries, and the groups they determine")]
struct Cli {
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Largest group (or model group) to enumerate element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutations of pair classes commuting with swap, twist and Out(G).
    Sg {
        spec: String,
        /// Include explicit generators in the JSON report.
        #[arg(long)]
        generators: bool,
    },
    /// Order of gt1 by double cosets in the model group.
    Gt1 { spec: String },
    /// Order of gt over all exponents k (experimental beyond cyclic groups).
    Gtfull { spec: String },
    /// Pair classes, blocks and induced permutations.
    Pc { spec: String },
    /// Monodromy and regularity of a dessin file.
    Dessin {
        file: PathBuf,
        /// Also classify cyclic structures of order dividing n.
        #[arg(long, value_name = "N")]
        cyclic: Option<u64>,
    },
    /// Recompute a table of expected values; nonzero exit on any mismatch.
    Repro {
        table: String,
        /// Include the long-running entries.
        #[arg(long)]
        extended: bool,
    },
    /// Built-in group families.
    Atlas {
        #[command(subcommand)]
        what: AtlasCommand,
    },
}

#[derive(Subcommand)]
enum AtlasCommand {
    List,
}

fn load(spec: &str) -> Result<Group> {
    let parsed: GroupSpec = spec.parse()?;
    Ok(construct(&parsed)?)
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn run(cli: &Cli) -> Result<(Report, bool)> {
    let cap = cli.cap;
    let start = Instant::now();
    let mut ok = true;
    let report = match &cli.command {
        Command::Sg { spec, generators } => {
            let g = load(spec)?;
            let mut rep = Report::new("sg", spec);
            rep.group_order = Some(g.order().to_string());
            let c = SgComputation::run(&g, cap)?;
            rep.timings_ms.insert("pairs".into(), ms(start));
            let t = Instant::now();
            rep.pairs = Some(pairs_section(&c));
            rep.sg = Some(sg_section(&c.report()?, *generators));
            rep.timings_ms.insert("decomposition".into(), ms(t));
            rep
        }
        Command::Pc { spec } => {
            let g = load(spec)?;
            let mut rep = Report::new("pc", spec);
            rep.group_order = Some(g.order().to_string());
            let c = SgComputation::run(&g, cap)?;
            rep.pairs = Some(pairs_section(&c));
            rep
        }
        Command::Gt1 { spec } | Command::Gtfull { spec } => {
            let full = matches!(cli.command, Command::Gtfull { .. });
            let g = load(spec)?;
            let mut rep = Report::new(if full { "gtfull" } else { "gt1" }, spec);
            rep.group_order = Some(g.order().to_string());
            let ctx = GbarContext::new(&g, cap)?;
            let gbar = ctx.gbar(cap)?;
            rep.timings_ms.insert("model".into(), ms(start));
            let t = Instant::now();
            rep.gt = Some(if full {
                gt_full_section(&gt_full(&gbar), gbar.r())
            } else {
                gt1_section(&gt1(&gbar))
            });
            rep.timings_ms.insert("double cosets".into(), ms(t));
            rep
        }
        Command::Dessin { file, cyclic } => {
            let d = load_dessin(file).with_context(|| format!("reading {}", file.display()))?;
            let a = analyze_dessin(&d)?;
            let mut rep = Report::new("dessin", &file.display().to_string());
            let mut section = dessin_section(&a);
            if let Some(n) = *cyclic {
                if !a.regular {
                    bail!("cyclic structures need a regular dessin");
                }
                let t = ElementTable::from_generators(d.darts(), &[d.x.clone(), d.y.clone()], cap)?;
                let classes = ConjugacyClassTable::new(&t);
                let pair = (t.index_of(&d.x).unwrap(), t.index_of(&d.y).unwrap());
                let reps = cyclic_structures(&t, &classes, pair, n)?;
                section.cyclic = Some(CyclicSection {
                    n,
                    classes: reps.len(),
                    representatives: reps.iter().map(|s| t.perm(s.images[0]).to_string()).collect(),
                });
            }
            rep.dessin = Some(section);
            rep
        }
        Command::Repro { table, extended } => {
            let checks = run_table(table, *extended, cap)?;
            ok = checks.iter().all(|c| c.pass);
            let mut rep = Report::new("repro", table);
            rep.checks = Some(checks);
            rep
        }
        Command::Atlas { what: AtlasCommand::List } => {
            for (name, desc) in families() {
                println!("{name:<16} {desc}");
            }
            println!("\nrepro tables:");
            for (id, desc) in TABLES {
                println!("{id:<16} {desc}");
            }
            return Ok((Report::new("atlas", "list"), true));
        }
    };
    let mut report = report;
    report.timings_ms.insert("total".into(), ms(start));
    Ok((report, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok((report, ok)) => {
            if report.command != "atlas" {
                match &cli.json {
                    Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
                    Some(p) => {
                        if let Err(e) = std::fs::write(p, report.to_json()) {
                            eprintln!("error: writing {}: {e}", p.display());
                            return ExitCode::FAILURE;
                        }
                        print!("{report}");
                    }
                    None => print!("{report}"),
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: some reproduced values disagree with the expected table");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
