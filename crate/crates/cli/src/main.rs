use std::path::PathBuf;
use std::process::ExitCode;

use cantorkit::{Error, Limits, DEFAULT_DEPTH_CAP};
use cantorkit_cli::commands::{self, Format};
use cantorkit_cli::render::{render_svg, RenderConfig};
use cantorkit_cli::spec_doc::load_spec;
use cantorkit_cli::{diagnostic, error_code, exit_code, EXIT_VALIDATION};
use clap::{Args, Parser, Subcommand};

/// Exact constructions of Cantor-like sets.
#[derive(Parser)]
#[command(name = "cantorkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Preset name (cantor, c12, c14, c34, svc:<m>, ac, ac-reflected, ac5a, ac5b),
    /// inline JSON spec document, or path to one.
    #[arg(long)]
    spec: String,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print every stage up to the given depth.
    Construct {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Measures, characterization, scale census and dimension.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether a rational point belongs to the limit set.
    Member {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        cap: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Draw the stages as stacked rows of an SVG image.
    Render {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 5)]
        depth: u32,
        #[arg(long, default_value_t = 729)]
        width: u32,
        #[arg(long, default_value_t = 12)]
        row_height: u32,
        /// Omit the stage numbers on the left.
        #[arg(long)]
        no_label: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate the Cantor function at a point of the ternary Cantor set.
    Cantorfun {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        output: Output,
    },
}

fn run(command: Command) -> Result<(String, Option<PathBuf>), Error> {
    let limits = Limits::default();
    Ok(match command {
        Command::Construct { spec, depth, format, output } => {
            (commands::construct(&load_spec(&spec.spec)?, depth, format, &limits)?, output.out)
        }
        Command::Analyze { spec, depth, format, output } => {
            (commands::analyze(&load_spec(&spec.spec)?, depth, format, &limits)?, output.out)
        }
        Command::Member { spec, x, cap, format, output } => {
            (commands::member(&load_spec(&spec.spec)?, &x, cap, format)?, output.out)
        }
        Command::Render { spec, depth, width, row_height, no_label, output } => {
            let cfg = RenderConfig { width_px: width, row_height_px: row_height, depth, label: !no_label };
            (render_svg(&load_spec(&spec.spec)?, &cfg, &limits)?, output.out)
        }
        Command::Cantorfun { x, output } => (commands::cantorfun(&x)?, output.out),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            eprintln!("{}", diagnostic("validation", EXIT_VALIDATION, first));
            return ExitCode::from(EXIT_VALIDATION as u8);
        }
    };
    match run(cli.command) {
        Ok((text, None)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok((text, Some(path))) => match std::fs::write(&path, text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{}", diagnostic("io", 1, &format!("cannot write {}: {e}", path.display())));
                ExitCode::FAILURE
            }
        },
        Err(err) => {
            let code = exit_code(&err);
            eprintln!("{}", diagnostic(error_code(&err), code, &err.to_string()));
            ExitCode::from(code as u8)
        }
    }
}
