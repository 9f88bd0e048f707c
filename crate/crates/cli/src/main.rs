//! `hallva`: command-line front end for the hallvertex engines.

mod cmd;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exact computations with CoHAs, braided vertex coalgebras and lattice vertex algebras.
#[derive(Parser, Debug)]
#[command(name = "hallva", version, about)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Shuffle products on the cohomological Hall algebra.
    #[command(subcommand)]
    Coha(CohaCmd),
    /// Vertex coproduct, Yang–Baxter series and the Yang–Baxter equation.
    #[command(subcommand)]
    Vertex(VertexCmd),
    /// Lattice vertex algebras.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Independent oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Equivariant localization.
    #[command(subcommand)]
    Loc(LocCmd),
    /// Exhaustive checks of the bialgebra axioms; exit code 1 on failure.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver JSON file, or one of the built-ins `a1`, `jordan`, `kronecker`.
    #[arg(long)]
    quiver: String,
}

#[derive(Args, Debug)]
struct WindowArgs {
    /// Number of powers below the leading one.
    #[arg(long, default_value_t = 3, conflicts_with = "window")]
    depth: u32,
    /// Explicit inclusive window `lo,hi` of powers of z.
    #[arg(long, value_parser = input::parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
}

#[derive(Args, Debug)]
struct OrientArg {
    /// Sign convention for ε and δ: `euler` or `trivial`.
    #[arg(long, default_value = "euler")]
    orientation: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Largest total dimension |γ| of the components.
    #[arg(long, default_value_t = 2)]
    maxdim: u32,
    /// Largest polynomial degree of the sampled classes.
    #[arg(long, default_value_t = 2)]
    degree: u32,
    /// Check this many randomly chosen instances instead of all of them.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed for `--samples`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct LatticeArg {
    /// Gram matrix as JSON, e.g. `[[2,-1],[-1,2]]`.
    #[arg(long, conflicts_with = "lattice")]
    gram: Option<String>,
    /// LatticeSpec JSON file `{"rank": r, "gram": [[...]]}`.
    #[arg(long)]
    lattice: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CohaCmd {
    /// Shuffle product of two classes.
    Mul {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Left class literal, e.g. `x1@[1]`.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        /// Right class literal.
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Associativity on three given classes, or on a sweep of monomial classes.
    Assoc {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Exactly three class literals; omit to sweep.
        #[arg(long = "class", num_args = 1, allow_hyphen_values = true)]
        classes: Vec<String>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Subcommand, Debug)]
enum VertexCmd {
    /// The vertex coproduct Y^∨(α) at a split γ = γ₁ + γ₂.
    Ycov {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Class literal.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// First component γ₁ of the split.
        #[arg(long)]
        first: String,
        /// Second component γ₂ of the split.
        #[arg(long)]
        second: String,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        orient: OrientArg,
    },
    /// The Yang–Baxter series S(γ, γ').
    Smatrix {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        orient: OrientArg,
    },
    /// The Yang–Baxter equation for three dimension vectors.
    Ybe {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Three dimension vectors.
        #[arg(long, num_args = 3, required = true)]
        dims: Vec<String>,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[command(flatten)]
        orient: OrientArg,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Graded character Σ q^{(γ,γ)} / Π (1 − q^{2i})^rank.
    Char {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Highest power of q.
        #[arg(long)]
        order: i64,
        /// Per-coordinate bounds `lo:hi,lo:hi,...`, required for indefinite lattices.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Y(u, z) v on Fock vectors such as `b1(-1)|1,0>`.
    Yop {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Field state u.
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        /// Target state v; defaults to the vacuum.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Pushforward along the flag bundle to Vect_{n+m}.
    Grassmann {
        /// Rank of the subspace.
        #[arg(long)]
        n: usize,
        /// Rank of the quotient.
        #[arg(long)]
        m: usize,
        /// Polynomial in x1..xn and y1..ym.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Also compare with the shuffle product on A1.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum LocCmd {
    /// Σ class / e(normal) over fixed components.
    Pushforward {
        /// Fixed-point data JSON file.
        #[arg(long)]
        fixed: PathBuf,
        /// Require a polynomial sum and return its z⁰ coefficient.
        #[arg(long)]
        t0: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Y^∨(α·β) against the braided product of Y^∨(α) and Y^∨(β).
    Bialgebra {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[command(flatten)]
        orient: OrientArg,
    },
    /// The Yang–Baxter equation on all triples of components.
    Ybe {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 2)]
        maxdim: u32,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[command(flatten)]
        orient: OrientArg,
    },
    /// Normal-complex identities on all quadruples of components.
    Normal {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 2)]
        maxdim: u32,
    },
    /// Unit and counit compatibilities.
    Counit {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 2)]
        maxdim: u32,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[command(flatten)]
        orient: OrientArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cmd::run(&cli.cmd) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
                );
            } else {
                println!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(input::exit_code(&e))
        }
    }
}
