//! `ntcodes`: construct codes in Hamming graphs, certify their symmetry
//! properties, and build the paired-action fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ntcodes::analyze::{self, Report};
use ntcodes::codes::{self, GroupTable, PairedAction};
use ntcodes::hamming::io::{parse_code, write_code};
use ntcodes::hamming::Code;
use ntcodes::perm::io::{parse_group, parse_hom, write_hom};
use ntcodes::perm::PermGroup;
use ntcodes::wreath::io::{parse_wreath_group, write_wreath_group};
use ntcodes::wreath::WreathGroup;
use ntcodes::{Bounds, Error};

#[derive(Parser)]
#[command(name = "ntcodes", version, about = "Neighbour transitive codes in Hamming graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group order enumerated element by element.
    #[arg(long, global = true, env = "NTCODES_ENUM_BOUND")]
    enum_bound: Option<u64>,
    /// Largest vertex orbit computed.
    #[arg(long, global = true, env = "NTCODES_ORBIT_BOUND")]
    orbit_bound: Option<u64>,
    /// Largest Hamming space swept by a distance partition.
    #[arg(long, global = true, env = "NTCODES_PARTITION_BOUND")]
    partition_bound: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it in the canonical code format.
    Construct {
        #[command(subcommand)]
        kind: Construct,
        /// Output file (default: standard output).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run a certifier and emit a report.
    Analyze(AnalyzeArgs),
    /// Build, validate and write a paired-action fixture.
    Fixture {
        name: String,
        /// Directory receiving `<name>.hom` and `<name>.normalizer.hom`.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Build a group acting on a Hamming graph and write it as a wreath group file.
    Group {
        #[command(subcommand)]
        kind: GroupKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Rep(m,q).
    Rep {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
    },
    /// All(pq,q).
    All {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Words with distinct entries, m < q.
    Injective {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: usize,
    },
    /// Binary words of weight (m±1)/2.
    Weight {
        #[arg(long)]
        m: usize,
    },
    /// C(T) for a permutation group T.
    Perm {
        #[arg(long)]
        group: String,
    },
    /// C(T,T^τ) from a homomorphism file pairing two actions.
    Twisted {
        #[arg(long)]
        paired: PathBuf,
    },
    /// C(G) for a group given as a permutation group or as Z_n.
    Cayley {
        #[arg(long, conflicts_with = "cyclic")]
        group: Option<String>,
        #[arg(long)]
        cyclic: Option<usize>,
        /// Ordering of the group elements (default: the natural one).
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// Prod_l(C).
    Prod {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        l: usize,
    },
    /// Rep_l(C).
    Repl {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        l: usize,
    },
    /// π_J(C).
    Project {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_delimiter = ',')]
        coords: Vec<usize>,
    },
    /// The code ⋃ Prod_l(C(A_q t)) in H(lq, q).
    Example {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum GroupKind {
    /// Diag_m(T) ⋊ S_m.
    DiagTop {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: usize,
    },
    /// ⟨Diag_q(T), x_n σ(n) : n ∈ N⟩ on H(q,q).
    PermNt {
        #[arg(long)]
        group: String,
        #[arg(long)]
        normalizer: String,
    },
    /// The neighbour transitive group of a twisted permutation code.
    TwistedNt {
        #[arg(long)]
        paired: PathBuf,
        #[arg(long)]
        normalizer: PathBuf,
    },
    /// The group of the code built by `construct example`.
    Example {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        l: usize,
    },
    /// X wr S_l on H(ml, q).
    WreathPower {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        l: usize,
    },
    /// Diag_q(S_q) ⋊ S_q transported onto C(G) by its repetition-code witness.
    CayleyNt {
        #[arg(long, conflicts_with = "cyclic")]
        group: Option<String>,
        #[arg(long)]
        cyclic: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(value_enum)]
    property: Property,
    #[arg(long)]
    code: PathBuf,
    /// Wreath group file.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Radius for `sregular`; omit to test complete regularity.
    #[arg(long)]
    s: Option<usize>,
    /// Coordinate blocks for `projstruct`, e.g. `0,1,2;3,4,5` (default: the
    /// supports found by `decompose`).
    #[arg(long)]
    blocks: Option<String>,
    /// Report file (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Mindist,
    Covrad,
    Partition,
    Nt,
    Ct,
    Sregular,
    Repwitness,
    Decompose,
    Projstruct,
    Prop27,
}

/// Failure of a command, mapped onto the exit codes.
enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Lib(Error::BoundExceeded { .. }) => 3,
            Failure::Lib(Error::Parse { .. }) => 4,
            Failure::Lib(Error::Precondition(_) | Error::StructureViolation(_) | Error::FixtureValidation(_)) => 1,
            Failure::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) | Failure::Io(s) => s.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool configured once");
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn bounds(cli: &Cli) -> Bounds {
    let mut b = Bounds::default();
    if let Some(v) = cli.enum_bound {
        b.enumeration = v;
    }
    if let Some(v) = cli.orbit_bound {
        b.orbit = v;
    }
    if let Some(v) = cli.partition_bound {
        b.partition = v;
    }
    b
}

fn run(cli: &Cli) -> CmdResult<u8> {
    let b = bounds(cli);
    if b.enumeration == 0 || b.orbit == 0 || b.partition == 0 {
        return Err(Failure::Usage("bounds must be positive".into()));
    }
    match &cli.command {
        Command::Construct { kind, out } => {
            let code = construct(kind, &b)?;
            write_output(out.as_deref(), &write_code(&code))?;
            let summary = json!({"size": code.len(), "m": code.m(), "q": code.q()});
            let line = match cli.format {
                Format::Json => summary.to_string(),
                Format::Text => format!("size {} m {} q {}", code.len(), code.m(), code.q()),
            };
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(0)
        }
        Command::Analyze(args) => {
            let report = analyze_cmd(args, &b)?;
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_string(),
            };
            write_output(args.out.as_deref(), &text)?;
            Ok(if report.verdict { 0 } else { 1 })
        }
        Command::Fixture { name, out } => {
            let f = codes::fixture(name, b.enumeration)?;
            fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            let pair_path = out.join(format!("{name}.hom"));
            write_output(Some(&pair_path), &write_hom(f.pair.hom()))?;
            let mut files = vec![pair_path.display().to_string()];
            if let Some(n) = &f.normalizer {
                let p = out.join(format!("{name}.normalizer.hom"));
                write_output(Some(&p), &write_hom(n.hom()))?;
                files.push(p.display().to_string());
            }
            let report = Report::new("fixture")
                .witness("name", name)
                .witness("check", &f.check)
                .witness("files", files)
                .stat("degree", f.pair.q())
                .stat("order", f.check.order);
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_string(),
            };
            println!("{}", text.trim_end());
            Ok(0)
        }
        Command::Group { kind, out } => {
            let g = group_cmd(kind, &b)?;
            write_output(out.as_deref(), &write_wreath_group(&g))?;
            let line = json!({"m": g.m(), "q": g.q(), "order": g.order().to_string()});
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(0)
        }
    }
}

fn read(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_code(path: &Path) -> CmdResult<Code> {
    Ok(parse_code(&read(path)?)?)
}

fn load_wreath(path: &Path) -> CmdResult<WreathGroup> {
    Ok(parse_wreath_group(&read(path)?)?)
}

fn load_pairing(path: &Path) -> CmdResult<PairedAction> {
    Ok(PairedAction::from_hom(parse_hom(&read(path)?)?)?)
}

/// A group file, or one of the names `S<n>`, `A<n>`, `C<n>`.
fn load_perm_group(spec: &str) -> CmdResult<PermGroup> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(parse_group(&read(path)?)?);
    }
    let (kind, n) = spec.split_at(1.min(spec.len()));
    let n: usize = n
        .parse()
        .map_err(|_| Failure::Usage(format!("`{spec}` is neither a file nor a group name like S5, A5, C5")))?;
    if n == 0 || n > ntcodes::hamming::MAX_Q {
        return Err(Failure::Usage(format!("degree {n} out of range")));
    }
    match kind {
        "S" => Ok(PermGroup::symmetric(n)),
        "A" => Ok(PermGroup::alternating(n)),
        "C" => Ok(PermGroup::cyclic(n)),
        _ => Err(Failure::Usage(format!("unknown group name `{spec}`"))),
    }
}

fn group_table(group: &Option<String>, cyclic: Option<usize>, b: &Bounds) -> CmdResult<GroupTable> {
    match (group, cyclic) {
        (Some(g), None) => Ok(GroupTable::from_perm_group(&load_perm_group(g)?, b.enumeration)?),
        (None, Some(n)) => Ok(GroupTable::cyclic(n)?),
        _ => Err(Failure::Usage("give exactly one of --group and --cyclic".into())),
    }
}

fn cayley(group: &Option<String>, cyclic: Option<usize>, ordering: &Option<Vec<usize>>, b: &Bounds) -> CmdResult<Code> {
    let table = group_table(group, cyclic, b)?;
    let ordering = ordering.clone().unwrap_or_else(|| (0..table.order()).collect());
    Ok(codes::cayley_code(&table, &ordering)?)
}

fn construct(kind: &Construct, b: &Bounds) -> CmdResult<Code> {
    let e = b.enumeration;
    Ok(match kind {
        Construct::Rep { m, q } => codes::rep_code(*m, *q)?,
        Construct::All { p, q } => codes::all_code(*p, *q, e)?,
        Construct::Injective { m, q } => codes::injective_code(*m, *q, e)?,
        Construct::Weight { m } => codes::weight_code(*m)?,
        Construct::Perm { group } => codes::perm_code(&load_perm_group(group)?, e)?,
        Construct::Twisted { paired } => codes::twisted_code(&load_pairing(paired)?, e)?,
        Construct::Cayley {
            group,
            cyclic,
            ordering,
        } => cayley(group, *cyclic, ordering, b)?,
        Construct::Prod { code, l } => codes::prod_code(&load_code(code)?, *l, e)?,
        Construct::Repl { code, l } => codes::rep_l_code(&load_code(code)?, *l)?,
        Construct::Project { code, coords } => codes::project(&load_code(code)?, coords)?,
        Construct::Example { q, l } => codes::example_code(*q, *l, e)?,
    })
}

fn group_cmd(kind: &GroupKind, b: &Bounds) -> CmdResult<WreathGroup> {
    Ok(match kind {
        GroupKind::DiagTop { group, m } => codes::diag_top_group(&load_perm_group(group)?, *m),
        GroupKind::PermNt { group, normalizer } => {
            codes::perm_code_group(&load_perm_group(group)?, &load_perm_group(normalizer)?)?
        }
        GroupKind::TwistedNt { paired, normalizer } => {
            codes::twisted_group(&load_pairing(paired)?, &load_pairing(normalizer)?)?
        }
        GroupKind::Example { q, l } => codes::example_group(*q, *l)?,
        GroupKind::WreathPower { group, l } => load_wreath(group)?.wreath_power(*l)?,
        GroupKind::CayleyNt {
            group,
            cyclic,
            ordering,
        } => {
            let code = cayley(group, *cyclic, ordering, b)?;
            let y = analyze::rep_equivalence_witness(&code)?;
            let q = code.q();
            codes::diag_top_group(&PermGroup::symmetric(q), q).conjugate_by(&y.inverse())?
        }
    })
}

fn parse_blocks(s: &str) -> CmdResult<Vec<Vec<usize>>> {
    s.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad block `{block}`")))
        })
        .collect()
}

fn analyze_cmd(args: &AnalyzeArgs, b: &Bounds) -> CmdResult<Report> {
    let code = load_code(&args.code)?;
    let group = || -> CmdResult<WreathGroup> {
        let path = args
            .group
            .as_deref()
            .ok_or_else(|| Failure::Usage("this property needs --group".into()))?;
        load_wreath(path)
    };
    Ok(match args.property {
        Property::Mindist => analyze::min_distance_report(&code)?,
        Property::Covrad => analyze::covering_radius_report(&code, b)?,
        Property::Partition => analyze::partition_report(&code, b)?,
        Property::Nt => analyze::check_neighbour_transitive(&code, &group()?, b)?,
        Property::Ct => analyze::check_completely_transitive(&code, &group()?, b)?,
        Property::Sregular => match args.s {
            Some(s) => analyze::check_s_regular(&code, s, b)?,
            None => analyze::check_completely_regular(&code, b)?,
        },
        Property::Repwitness => analyze::rep_witness_report(&code)?,
        Property::Decompose => analyze::decompose_report(&code, &group()?, b)?,
        Property::Projstruct => {
            let x = group()?;
            let blocks = match &args.blocks {
                Some(s) => parse_blocks(s)?,
                None => analyze::decompose(&code, &x, b)?.supports,
            };
            analyze::check_projection_structure(&code, &x, &blocks, b)?
        }
        Property::Prop27 => analyze::check_prop27(&code, &group()?, b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks() {
        assert_eq!(
            parse_blocks("0,1,2;3, 4,5").ok(),
            Some(vec![vec![0, 1, 2], vec![3, 4, 5]])
        );
        assert!(parse_blocks("0,x").is_err());
    }

    #[test]
    fn group_names() {
        assert_eq!(load_perm_group("S4").ok().map(|g| g.order()), Some(24));
        assert_eq!(load_perm_group("A5").ok().map(|g| g.order()), Some(60));
        assert_eq!(load_perm_group("C7").ok().map(|g| g.order()), Some(7));
        assert!(load_perm_group("Q8").is_err());
        assert!(load_perm_group("S0").is_err());
    }
}
