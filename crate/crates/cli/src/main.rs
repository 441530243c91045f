//! `magc`: command-line access to MAG labeling, codecs and analysis.
//!
//! Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
//! Output is assembled in memory and written only on success.

mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use magc_core::analysis::{self, Diameter, DEFAULT_SEARCH_LIMIT};
use magc_core::codec::{EdgeSetString, Indexer, Layout};
use magc_core::complexity::{self, ESTIMATE_TAG};
use magc_core::family::{self, FamilySpec};
use magc_core::nesting::{self, BitSource};
use magc_core::ordering::{self, EdgeIndex};
use magc_core::{iso, BigUint, BitString, CompanionTuple, Index, MagError, TopologyParams};

use format::{mag_file, parse_bits, parse_tau, report, tau_text};

pub const SEED_ENV: &str = "MAGC_SEED";
const SENTINEL: &str = "<0>";
/// Largest edge-set string `t35-build` will spell out.
const MAX_LISTED_EDGES: u128 = 1 << 20;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] MagError),
    #[error("{0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "magc", version, about = "Recursive labeling of multiaspect graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    /// Use the family-wide labeling of equal-aspect MAGs.
    #[arg(long)]
    family: bool,
    /// Smallest aspect size in the family.
    #[arg(long, default_value_t = 1)]
    n0: u64,
}

impl FamilyArgs {
    fn indexer(&self, p: usize) -> Result<Indexer, CliError> {
        Ok(if self.family {
            Indexer::Family(FamilySpec::new(p, self.n0)?)
        } else {
            Indexer::PerMag
        })
    }
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct BitsInput {
    /// Bits as '0'/'1' text; whitespace is ignored.
    #[arg(long, value_parser = parse_bits)]
    bits: Option<BitString>,
    #[arg(long)]
    bits_file: Option<PathBuf>,
}

impl BitsInput {
    fn load(&self) -> Result<BitString, CliError> {
        match (&self.bits, &self.bits_file) {
            (Some(b), _) => Ok(b.clone()),
            (None, Some(path)) => read_bits(path),
            (None, None) => Err(CliError::Usage("one of --bits or --bits-file is required".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Index of an edge; prints 0 for an invalid pair.
    Index {
        #[arg(long, value_parser = parse_tau, required_unless_present = "family")]
        tau: Option<CompanionTuple>,
        /// Edge as (a1,...,ap)-(b1,...,bp).
        #[arg(long)]
        edge: String,
        #[command(flatten)]
        fam: FamilyArgs,
        /// Aspect count for --family.
        #[arg(long, requires = "family")]
        p: Option<usize>,
    },
    /// Edge at an index; prints <0> when there is none.
    Edge {
        #[arg(long, value_parser = parse_tau, required_unless_present = "family")]
        tau: Option<CompanionTuple>,
        #[arg(long)]
        j: BigUint,
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, requires = "family")]
        p: Option<usize>,
    },
    /// MagFile to characteristic string.
    Encode {
        #[arg(long)]
        mag: PathBuf,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Characteristic string to MagFile.
    Decode {
        #[arg(long, value_parser = parse_tau)]
        tau: CompanionTuple,
        #[command(flatten)]
        input: BitsInput,
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Edge-set strings.
    Edgestring {
        #[command(subcommand)]
        action: EdgestringAction,
    },
    /// MAG and classical graph conversion.
    Iso {
        #[command(subcommand)]
        action: IsoAction,
    },
    /// Grows a nesting family from a bit source into a directory.
    Grow {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        s_max: u64,
        #[arg(long)]
        out: PathBuf,
        /// Generator seed; overrides MAGC_SEED.
        #[arg(long, conflicts_with_all = ["bits_file", "pattern"])]
        seed: Option<u64>,
        #[arg(long, conflicts_with = "pattern")]
        bits_file: Option<PathBuf>,
        /// Repeated bit pattern.
        #[arg(long, value_parser = parse_bits)]
        pattern: Option<BitString>,
    },
    /// Topology report.
    Analyze {
        #[arg(long)]
        mag: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Star threshold; defaults to ceil((lg N)^2).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        search_limit: u64,
    },
    /// Compression upper-bound estimates for the encodings of a MAG.
    Estimate {
        #[arg(long)]
        mag: PathBuf,
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 64)]
        slack: usize,
    },
    /// Edge-set string of a MAG whose companion tuple is driven by bits.
    #[command(name = "t35-build")]
    T35Build {
        #[command(flatten)]
        input: BitsInput,
        /// Generator seed; overrides MAGC_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 64)]
        max_attempts: u32,
    },
    /// Recovers the driving bits from an edge-set string.
    #[command(name = "t35-recover")]
    T35Recover {
        #[command(flatten)]
        input: BitsInput,
        /// Bits that must be recovered.
        #[arg(long, value_parser = parse_bits)]
        expect: Option<BitString>,
    },
    /// Seeded random MAG.
    Rand {
        #[arg(long, value_parser = parse_tau)]
        tau: CompanionTuple,
        /// Generator seed; overrides MAGC_SEED.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

#[derive(Subcommand, Debug)]
enum EdgestringAction {
    Encode {
        #[arg(long)]
        mag: PathBuf,
        #[command(flatten)]
        fam: FamilyArgs,
        /// Presence bits only, without edge tuples.
        #[arg(long)]
        compact: bool,
    },
    Decode {
        #[command(flatten)]
        input: BitsInput,
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        compact: bool,
        /// Aspect count for --family.
        #[arg(long, requires = "family")]
        p: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum IsoAction {
    ToGraph {
        #[arg(long)]
        mag: PathBuf,
    },
    ToMag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_tau)]
        tau: CompanionTuple,
    },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_bits(path: &Path) -> Result<BitString, CliError> {
    parse_bits(&read_text(path)?).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn read_mag(path: &Path) -> Result<magc_core::Mag, CliError> {
    format::parse_mag_file(&read_text(path)?)
        .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn family_spec(fam: &FamilyArgs, p: Option<usize>, tau: Option<&CompanionTuple>) -> Result<FamilySpec, CliError> {
    let p = p
        .or(tau.map(CompanionTuple::order))
        .ok_or_else(|| CliError::Usage("--family needs --p or --tau".into()))?;
    Ok(FamilySpec::new(p, fam.n0)?)
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Index { tau, edge, fam, p } => {
            let (u, v) = format::parse_edge(&edge).map_err(CliError::Usage)?;
            if fam.family {
                let spec = family_spec(&fam, p, tau.as_ref())?;
                let j: Index = family::family_edge_index(&u, &v, &spec)?;
                Ok(format!("{j}\n"))
            } else {
                let tau = tau.expect("required without --family");
                Ok(match ordering::edge_index::<Index>(&u, &v, &tau)? {
                    EdgeIndex::Index(j) => format!("{j}\n"),
                    EdgeIndex::Invalid => "0\n".into(),
                })
            }
        }
        Command::Edge { tau, j, fam, p } => {
            let edge = if fam.family {
                family::family_index_edge(&j, &family_spec(&fam, p, tau.as_ref())?)?
            } else {
                ordering::index_edge(&j, &tau.expect("required without --family"))?
            };
            Ok(edge.map_or_else(|| SENTINEL.to_string(), |e| e.to_string()) + "\n")
        }
        Command::Encode { mag, fam } => {
            let g = read_mag(&mag)?;
            Ok(format!("{}\n", fam.indexer(g.tau().order())?.char_string(&g)?))
        }
        Command::Decode { tau, input, fam } => {
            let x = input.load()?;
            Ok(mag_file(&fam.indexer(tau.order())?.decode_char_string(&x, &tau)?))
        }
        Command::Edgestring { action } => match action {
            EdgestringAction::Encode { mag, fam, compact } => {
                let g = read_mag(&mag)?;
                let s = EdgeSetString::from_mag(&g, &fam.indexer(g.tau().order())?)?;
                Ok(format!("{}\n", s.encode(layout(compact))?))
            }
            EdgestringAction::Decode { input, fam, compact, p } => {
                let bits = input.load()?;
                let indexer = if fam.family {
                    let p = match p {
                        Some(p) => p,
                        None => magc_core::codec::read_companion_tuple(&mut bits.reader())?.order(),
                    };
                    Indexer::Family(FamilySpec::new(p, fam.n0)?)
                } else {
                    Indexer::PerMag
                };
                Ok(mag_file(&EdgeSetString::decode(&bits, &indexer, layout(compact))?.to_mag()))
            }
        },
        Command::Iso { action } => match action {
            IsoAction::ToGraph { mag } => Ok(format::graph_file(&iso::mag_to_graph(&read_mag(&mag)?)?)),
            IsoAction::ToMag { graph, tau } => {
                let text = read_text(&graph)?;
                let g = format::parse_graph_file(&text)
                    .map_err(|e| CliError::Format(format!("{}: {e}", graph.display())))?;
                Ok(mag_file(&iso::graph_to_mag(&g, &tau)?))
            }
        },
        Command::Grow {
            p,
            n0,
            s_max,
            out,
            seed,
            bits_file,
            pattern,
        } => {
            let mut src = match (bits_file, pattern) {
                (Some(path), _) => {
                    // the file name alone keeps manifests independent of the working directory
                    let label = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
                    BitSource::file(label, read_bits(&path)?)
                }
                (None, Some(pattern)) => BitSource::constant(pattern)?,
                (None, None) => BitSource::seeded(resolve_seed(seed)?),
            };
            let spec = FamilySpec::new(p, n0)?;
            let fam = nesting::grow_family(&mut src, &spec, s_max)?;
            grow_output(&fam, &out)
        }
        Command::Analyze {
            mag,
            c,
            delta,
            k,
            search_limit,
        } => {
            let g = read_mag(&mag)?;
            let params = TopologyParams {
                c,
                delta,
                k,
                search_limit,
            };
            Ok(analysis_report(&g, &analysis::topology_report(&g, &params)?))
        }
        Command::Estimate { mag, fam, slack } => {
            let g = read_mag(&mag)?;
            let indexer = fam.indexer(g.tau().order())?;
            let r = complexity::information_report(&g, &indexer, &complexity::default_adapters(), slack)?;
            Ok(estimate_report(&g.tau().clone(), &indexer, &r))
        }
        Command::T35Build {
            input,
            seed,
            max_attempts,
        } => {
            let bits = input.load()?;
            let tau = nesting::build_bitdriven_tau(&bits)?;
            let m: u128 = magc_core::num_possible_edges(&tau)?;
            if m > MAX_LISTED_EDGES {
                return Err(CliError::Domain(MagError::InvalidParameter(format!(
                    "edge-set string for tau=({}) lists {m} entries, above {MAX_LISTED_EDGES}",
                    tau_text(&tau)
                ))));
            }
            let g = nesting::witnessing_mag(&tau, resolve_seed(seed)?, max_attempts);
            let s = EdgeSetString::from_mag(&g, &Indexer::PerMag)?;
            nesting::recover_bits_checked(&s, &bits)?;
            Ok(format!("{}\n", s.encode(Layout::Full)?))
        }
        Command::T35Recover { input, expect } => {
            let s = EdgeSetString::decode(&input.load()?, &Indexer::PerMag, Layout::Full)?;
            let bits = match expect {
                Some(expected) => nesting::recover_bits_checked(&s, &expected)?,
                None => {
                    let r = nesting::recover_bits(&s);
                    if let Some(&aspect) = r.unwitnessed.first() {
                        return Err(MagError::UnwitnessedAspect { aspect }.into());
                    }
                    r.bits
                }
            };
            Ok(format!("{bits}\n"))
        }
        Command::Rand { tau, seed, density } => {
            Ok(mag_file(&analysis::random_mag(&tau, resolve_seed(seed)?, density)?))
        }
    }
}

fn layout(compact: bool) -> Layout {
    if compact {
        Layout::Compact
    } else {
        Layout::Full
    }
}

fn grow_output(fam: &nesting::NestingFamily, out: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: out.display().to_string(),
        source,
    };
    fs::create_dir_all(out).map_err(io)?;
    let spec = fam.spec();
    let mut manifest = vec![
        ("source".to_string(), fam.source_id().to_string()),
        ("p".to_string(), spec.order().to_string()),
        ("n0".to_string(), spec.n0().to_string()),
        ("members".to_string(), fam.members().len().to_string()),
    ];
    for g in fam.members() {
        let s = spec.size_of(g.tau())?;
        let name = format!("member-{s:04}.mag");
        fs::write(out.join(&name), mag_file(g)).map_err(io)?;
        manifest.push((format!("member.{s:04}.file"), name));
        manifest.push((format!("member.{s:04}.edges"), g.edge_count().to_string()));
        manifest.push((format!("member.{s:04}.tau"), tau_text(g.tau())));
    }
    let text = report(manifest);
    fs::write(out.join("manifest.txt"), &text).map_err(io)?;
    Ok(text)
}

fn analysis_report(g: &magc_core::Mag, r: &magc_core::TopologyReport) -> String {
    let mut e: Vec<(String, String)> = vec![
        ("tau".into(), tau_text(g.tau())),
        ("vertices".into(), r.n_vertices.to_string()),
        ("edges".into(), r.edge_count.to_string()),
        ("diameter".into(), r.diameter.to_string()),
        ("star.k".into(), r.star_k.to_string()),
        ("star.holds".into(), r.star.holds.to_string()),
    ];
    if let Diameter::Finite(_) = r.diameter {
        e.push(("connected".into(), "true".into()));
    } else {
        e.push(("connected".into(), "false".into()));
    }
    if let Some((u, v)) = &r.star.counterexample {
        e.push(("star.counterexample".into(), format!("{u} {v}")));
    }
    match &r.degree {
        Some(d) => {
            e.push(("degree.max_deviation".into(), format!("{:.6}", d.max_deviation)));
            e.push(("degree.bound".into(), format!("{:.6}", d.bound)));
            e.push(("degree.holds".into(), d.holds().to_string()));
        }
        None => e.push(("degree.holds".into(), "n/a".into())),
    }
    match r.two_paths {
        Some((lo, hi)) => {
            e.push(("two_paths.min".into(), lo.to_string()));
            e.push(("two_paths.max".into(), hi.to_string()));
        }
        None => e.push(("two_paths.min".into(), "n/a".into())),
    }
    e.push((
        "rigid".into(),
        r.rigid.map_or("not-searched".into(), |b| b.to_string()),
    ));
    if let Some(images) = &r.witness_automorphism {
        let moved: Vec<String> = g
            .vertices()
            .zip(images)
            .filter(|(v, w)| v != *w)
            .map(|(v, w)| format!("{v}->{w}"))
            .collect();
        e.push(("automorphism.moves".into(), moved.join(" ")));
    }
    report(e)
}

fn estimate_report(tau: &CompanionTuple, indexer: &Indexer, r: &complexity::InformationReport) -> String {
    let labeling = match indexer {
        Indexer::PerMag => "per-mag".to_string(),
        Indexer::Family(spec) => format!("family(p={},n0={})", spec.order(), spec.n0()),
    };
    let mut e: Vec<(String, String)> = vec![
        ("estimate".into(), ESTIMATE_TAG.into()),
        ("tau".into(), tau_text(tau)),
        ("labeling".into(), labeling),
        ("length.char_string".into(), r.char_string_len.to_string()),
        ("length.edge_set".into(), r.edge_set_len.to_string()),
        ("length.tuple".into(), r.tuple_len.to_string()),
        ("length.gap".into(), r.exact_gap().to_string()),
        ("slack".into(), r.slack.to_string()),
        ("gap.estimate".into(), r.estimate_gap().to_string()),
        ("gap.threshold".into(), r.gap_threshold().to_string()),
        ("gap.flagged".into(), r.flagged().to_string()),
    ];
    for (name, est) in [("char_string", &r.char_string), ("edge_set", &r.edge_set), ("tuple", &r.tuple)] {
        e.push((format!("{ESTIMATE_TAG}.{name}.bits"), est.bits.to_string()));
        e.push((format!("{ESTIMATE_TAG}.{name}.adapter"), est.adapter.clone()));
        if !est.disqualified.is_empty() {
            e.push((format!("{ESTIMATE_TAG}.{name}.disqualified"), est.disqualified.join(",")));
        }
    }
    report(e)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
