//! `banakh`: file-based front end for the library. JSON on stdout; exit 0 for a true verdict,
//! 1 for a false one (witness included), 2 for usage or format errors, 3 when undecided.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "banakh", version, about = "Exact computations on Banakh metric spaces")]
struct Cli {
    /// Print prose instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Print a Graphviz description where the command produces a graph or fragment.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct MonoidArg {
    /// Built-in monoid name (naturals, even, dyadic, omega-minus-1, dyadic-thirds) or a JSON description.
    #[arg(long, conflicts_with = "gens")]
    monoid: Option<String>,
    /// Comma-separated generators of a finitely generated monoid, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArg {
    /// Upper end of the search window; defaults to a bound that makes discrete verdicts complete.
    #[arg(long)]
    window: Option<String>,
    /// Largest denominator searched in dense monoids.
    #[arg(long, default_value_t = 64)]
    denom: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SegmentMode {
    Extend,
    Split,
    Directed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LatticeArg {
    H,
    L,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file (edge values are shortest paths) or a fragment file (metric and two-point spheres).
    Verify { file: String },
    /// Isometric embedding of a fragment into the real line, or an obstruction.
    Embed { file: String },
    /// Whether the monoid together with its negatives forms a group.
    Halfgroup {
        #[command(flatten)]
        monoid: MonoidArg,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Floppiness of a monoid, or of a graph file with --graph.
    Floppy {
        #[command(flatten)]
        monoid: MonoidArg,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, conflicts_with_all = ["monoid", "gens"])]
        graph: Option<String>,
    },
    /// Nonzero elements that are not a sum of two nonzero elements.
    Ddot {
        #[command(flatten)]
        monoid: MonoidArg,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Reduction of a pair of members to the p-free part of their gcd.
    Dzik {
        a: u64,
        b: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        monoid: MonoidArg,
    },
    /// Window of the canonical graph metric of a monoid.
    Mu {
        #[command(flatten)]
        monoid: MonoidArg,
        #[arg(long)]
        window: String,
        #[arg(long, default_value = "1")]
        scale: String,
        #[arg(long, default_value_t = 4)]
        denom: u64,
    },
    /// Complete a floppy graph metric to a full metric with generic new values.
    Extend {
        file: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_backtracks: usize,
        #[arg(long, default_value_t = 1)]
        prime_floor: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Points x_-n..x_n of the line through a and b in a fragment.
    Line {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        n: usize,
    },
    /// The point at distance ra from a and rb from b.
    Gps {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        ra: String,
        #[arg(long, allow_hyphen_values = true)]
        rb: String,
    },
    /// Orientation of x and y seen from an origin.
    Orient {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        origin: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Extend xy beyond y by r, split xy into parts a and b, or step r from x toward y.
    Segment {
        file: String,
        #[arg(long, value_enum)]
        mode: SegmentMode,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true, required_if_eq_any = [("mode", "extend"), ("mode", "directed")])]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_if_eq("mode", "split"))]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_if_eq("mode", "split"))]
        b: Option<String>,
    },
    /// Operations in the symbolic group on coordinates e0, e1, ...
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Build a metric fragment from a spec file.
    Build {
        #[arg(long)]
        spec: String,
        /// Overrides the seed in the spec.
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a built fragment and its certificate against the spec.
    Certify { fragment: String, spec: String },
}

#[derive(Subcommand, Debug)]
pub enum GroupOp {
    Add {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    Sub {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    Neg {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    Scale {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value = "h")]
        lattice: LatticeArg,
    },
    /// Whether the norms of x and y agree.
    NormEqual {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Distance token of x and y.
    Dist {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Points at the distance of token t from c.
    Sphere {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Whether x is p times a lattice element.
    Divisible {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "h")]
        lattice: LatticeArg,
    },
    /// Numeric norm with sampled coordinate weights.
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        seed: u64,
    },
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    use commands as c;
    match &cli.command {
        Command::Verify { file } => c::verify(file),
        Command::Embed { file } => c::embed(file),
        Command::Halfgroup { monoid, window } => c::halfgroup(monoid, window),
        Command::Floppy { monoid, window, graph } => c::floppy(monoid, window, graph.as_deref()),
        Command::Ddot { monoid, window } => c::ddot(monoid, window),
        Command::Dzik { a, b, p, monoid } => c::dzik(*a, *b, *p, monoid),
        Command::Mu { monoid, window, scale, denom } => c::mu(monoid, window, scale, *denom),
        Command::Extend { file, seed, max_backtracks, prime_floor, out } => {
            c::extend(file, *seed, *max_backtracks, *prime_floor, out.as_deref())
        }
        Command::Line { file, a, b, n } => c::line(file, a, b, *n),
        Command::Gps { file, a, b, ra, rb } => c::gps(file, a, b, ra, rb),
        Command::Orient { file, origin, x, y } => c::orient(file, origin, x, y),
        Command::Segment { file, mode, x, y, r, a, b } => c::segment(file, *mode, x, y, r.as_deref(), a.as_deref(), b.as_deref()),
        Command::Group { op } => c::group(op),
        Command::Build { spec, seed, out } => c::build(spec, *seed, out.as_deref()),
        Command::Certify { fragment, spec } => c::certify(fragment, spec),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let text = match (&out.dot, cli.dot, cli.human) {
                (Some(d), true, _) => d.clone(),
                (_, _, true) => format!("{}\n", out.human),
                _ => banakh::io::to_text(&out.json),
            };
            print!("{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
