use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use straightedge_cli::commands::{
    parse_partition, run_certificate, run_oracle, run_verify, CertificateSource, CliError, PipelineFlags, TraceTarget,
    EXIT_INPUT,
};

/// Decide whether ten points lie on a plane cubic with straightedge constructions.
#[derive(Parser)]
#[command(name = "straightedge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pipeline {
    /// First scheme to try, e.g. "s1=1,2,3,4,5;t1=3,4,5,6,7".
    #[arg(long)]
    partition: Option<String>,
    /// Seed for the auxiliary points used by the radical axis construction.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of partition schemes to attempt before giving up.
    #[arg(long)]
    max_retries: Option<usize>,
}

impl Pipeline {
    fn flags(&self) -> Result<PipelineFlags, CliError> {
        Ok(PipelineFlags {
            partition: self.partition.as_deref().map(parse_partition).transpose()?,
            seed: self.seed,
            max_retries: self.max_retries,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the construction and report the verdict.
    Verify {
        points: PathBuf,
        /// Emit the JSON trace, to stdout or to PATH.
        #[arg(long, value_name = "PATH", num_args = 0..=1)]
        trace: Option<Option<PathBuf>>,
        /// Draw the construction as SVG.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[command(flatten)]
        pipeline: Pipeline,
    },
    /// Evaluate the 10×10 determinant of cubic monomials.
    Oracle { points: PathBuf },
    /// Check the binomial certificate on the extended configuration.
    Certificate {
        #[arg(required_unless_present = "from_trace")]
        points: Option<PathBuf>,
        /// Use a trace written by `verify --trace` instead of a point file.
        #[arg(long, value_name = "PATH", conflicts_with = "points")]
        from_trace: Option<PathBuf>,
        /// Relations to check, one per line; defaults to the built-in certificate.
        #[arg(long, value_name = "FILE")]
        relations: Option<PathBuf>,
        #[command(flatten)]
        pipeline: Pipeline,
    },
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Verify {
            points,
            trace,
            svg,
            pipeline,
        } => {
            let target = trace.map(|t| t.map_or(TraceTarget::Stdout, TraceTarget::File));
            run_verify(&points, &pipeline.flags()?, target, svg.as_deref(), &mut out)
        }
        Command::Oracle { points } => run_oracle(&points, &mut out),
        Command::Certificate {
            points,
            from_trace,
            relations,
            pipeline,
        } => {
            let source = match (&from_trace, &points) {
                (Some(t), _) => CertificateSource::Trace(t),
                (None, Some(p)) => CertificateSource::Points(p, pipeline.flags()?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            run_certificate(source, relations.as_deref(), &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
