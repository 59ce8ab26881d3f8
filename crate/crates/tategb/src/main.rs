use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tategb::error::Error;
use tategb::io::{run, Command, ProblemFile, RunOptions};

/// Exact Gröbner-basis computations over p-adically valued fields.
#[derive(Parser)]
#[command(name = "tategb", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Local Gröbner basis at the log-radii of the problem file
    Gb(CommonArgs),
    /// Universal analytic Gröbner basis of the generators
    Uagb(CommonArgs),
    /// Test whether the generators already form a universal basis
    TestUagb(CommonArgs),
    /// Maximal cones of the analytic Gröbner fan (homogeneous input)
    Fan(CommonArgs),
    /// Tropical variety as the monomial-free subfan (homogeneous input)
    Tropical(CommonArgs),
    /// Mora weak normal form of the first generator against the rest
    Wnf(CommonArgs),
    /// Leading-term candidates of the first generator over the polyhedron
    TermsP(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON problem file
    file: PathBuf,
    /// Valuation cap for weak normal forms (overrides the file)
    #[arg(long)]
    cap: Option<String>,
    /// Tie-break order: grevlex, lex or grlex (overrides the file)
    #[arg(long)]
    tie_break: Option<String>,
    /// Worker threads for vertex checks and cone scans (0 = automatic)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Include LP / vertex / multiplier certificates in the output
    #[arg(long)]
    emit_certificates: bool,
}

fn dispatch(cmd: &Cmd) -> (Command, &CommonArgs) {
    match cmd {
        Cmd::Gb(a) => (Command::Gb, a),
        Cmd::Uagb(a) => (Command::Uagb, a),
        Cmd::TestUagb(a) => (Command::TestUagb, a),
        Cmd::Fan(a) => (Command::Fan, a),
        Cmd::Tropical(a) => (Command::Tropical, a),
        Cmd::Wnf(a) => (Command::Wnf, a),
        Cmd::TermsP(a) => (Command::TermsP, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = dispatch(&cli.command);

    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let file: ProblemFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("parse error in {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        cap: args.cap.clone(),
        tie_break: args.tie_break.clone(),
        emit_certificates: args.emit_certificates,
    };

    let outcome = if args.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build() {
            Ok(pool) => pool.install(|| run(command, &file, &opts)),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                return ExitCode::from(1);
            }
        }
    } else {
        run(command, &file, &opts)
    };

    match outcome {
        Ok(doc) => {
            // tolerate downstream consumers closing the pipe early
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", doc.to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e @ Error::Parse { .. }) => {
            eprintln!("parse error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
