//! File-driven front end; the library's `examples/` directory shows the same
//! pipelines as plain code.

use phaseless2d::config::RunConfig;
use phaseless2d::{cli, Error};
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
phaseless2d <command> [flags]

commands:
  simulate          synthesize phaseless (and far-field) datasets from a scene
  invert            reconstruct an indicator field from a phaseless dataset
  invert-farfield   reference reconstruction from a far-field dataset
  validate          run a numerical validation suite

flags:
  --config <file>   run configuration (TOML); required
  --data <file>     input dataset (invert / invert-farfield)
  --out-dir <dir>   output directory (default .)
  --suite <name>    validation suite: reciprocity | farfield-asymptotics |
                    operator-asymptotics | sharp-asymptotics | truncation | oracle
  --seed <u64>      override the config noise seed
  --delta <f64>     override the config noise ratio
  --grid <spec>     override the sampling grid: xmin,xmax,ymin,ymax,nx,ny
  --cutoff <f64>    override the eigenvalue cutoff
  --with-farfield   also write farfield.csv during simulate

exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 validation failure";

struct Args {
    command: String,
    config: Option<PathBuf>,
    data: Option<PathBuf>,
    out_dir: PathBuf,
    suite: Option<String>,
    seed: Option<u64>,
    delta: Option<f64>,
    grid: Option<String>,
    cutoff: Option<f64>,
    with_farfield: bool,
}

fn parse_args() -> Result<Args, String> {
    let mut argv = std::env::args().skip(1);
    let command = argv.next().ok_or_else(|| USAGE.to_string())?;
    let mut args = Args {
        command,
        config: None,
        data: None,
        out_dir: PathBuf::from("."),
        suite: None,
        seed: None,
        delta: None,
        grid: None,
        cutoff: None,
        with_farfield: false,
    };
    while let Some(flag) = argv.next() {
        let mut value = |name: &str| {
            argv.next().ok_or_else(|| format!("flag {name} needs a value\n\n{USAGE}"))
        };
        match flag.as_str() {
            "--config" => args.config = Some(PathBuf::from(value("--config")?)),
            "--data" => args.data = Some(PathBuf::from(value("--data")?)),
            "--out-dir" => args.out_dir = PathBuf::from(value("--out-dir")?),
            "--suite" => args.suite = Some(value("--suite")?),
            "--seed" => {
                args.seed =
                    Some(value("--seed")?.parse().map_err(|e| format!("bad --seed: {e}"))?)
            }
            "--delta" => {
                args.delta =
                    Some(value("--delta")?.parse().map_err(|e| format!("bad --delta: {e}"))?)
            }
            "--grid" => args.grid = Some(value("--grid")?),
            "--cutoff" => {
                args.cutoff =
                    Some(value("--cutoff")?.parse().map_err(|e| format!("bad --cutoff: {e}"))?)
            }
            "--with-farfield" => args.with_farfield = true,
            "--help" | "-h" => return Err(USAGE.to_string()),
            other => return Err(format!("unknown flag `{other}`\n\n{USAGE}")),
        }
    }
    Ok(args)
}

fn apply_overrides(cfg: &mut RunConfig, args: &Args) -> Result<(), Error> {
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(delta) = args.delta {
        cfg.delta = delta;
    }
    if let Some(cutoff) = args.cutoff {
        cfg.cutoff = cutoff;
    }
    if let Some(spec) = &args.grid {
        let toks: Vec<&str> = spec.split(',').collect();
        if toks.len() != 6 {
            return Err(Error::Parse(format!(
                "--grid needs xmin,xmax,ymin,ymax,nx,ny, got `{spec}`"
            )));
        }
        let p = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{e}")));
        let pu = |s: &str| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{e}")));
        cfg.grid.xmin = p(toks[0])?;
        cfg.grid.xmax = p(toks[1])?;
        cfg.grid.ymin = p(toks[2])?;
        cfg.grid.ymax = p(toks[3])?;
        cfg.grid.nx = pu(toks[4])?;
        cfg.grid.ny = pu(toks[5])?;
    }
    cfg.validate()
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::InvalidArgument(_) | Error::Admissibility(_) | Error::Io(_) => 2,
        _ => 3,
    }
}

fn run() -> Result<u8, (u8, String)> {
    let args = parse_args().map_err(|msg| (2, msg))?;
    let config_path = args
        .config
        .clone()
        .ok_or_else(|| (2u8, format!("--config is required\n\n{USAGE}")))?;
    let mut cfg = RunConfig::load(&config_path).map_err(|e| (2, e.to_string()))?;
    apply_overrides(&mut cfg, &args).map_err(|e| (2, e.to_string()))?;

    match args.command.as_str() {
        "simulate" => {
            cli::cmd_simulate(&cfg, &args.out_dir, args.with_farfield)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            Ok(0)
        }
        "invert" => {
            let data = args.data.ok_or_else(|| (2u8, "--data is required for invert".into()))?;
            cli::cmd_invert(&data, &cfg, &args.out_dir)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            Ok(0)
        }
        "invert-farfield" => {
            let data =
                args.data.ok_or_else(|| (2u8, "--data is required for invert-farfield".into()))?;
            cli::cmd_invert_farfield(&data, &cfg, &args.out_dir)
                .map_err(|e| (exit_code_for(&e), e.to_string()))?;
            Ok(0)
        }
        "validate" => {
            let suite =
                args.suite.ok_or_else(|| (2u8, "--suite is required for validate".into()))?;
            let pass = cli::cmd_validate(&suite, &cfg, &args.out_dir).map_err(|e| {
                let code = match &e {
                    Error::InvalidArgument(msg) if msg.starts_with("unknown suite") => 2,
                    other => exit_code_for(other),
                };
                (code, e.to_string())
            })?;
            if pass {
                Ok(0)
            } else {
                Ok(4)
            }
        }
        other => Err((2, format!("unknown command `{other}`\n\n{USAGE}"))),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
