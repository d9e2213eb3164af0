use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isometry_core::Vec3d;
use isometry_lab::{
    parse_batch, render_svg, run, AngleUnit, Batch, CliError, Kind, Method, ProblemInstance,
    RunOptions, SolutionRecord,
};

/// Recover, compose and decompose rigid motions of the plane and the sphere.
#[derive(Debug, Parser)]
#[command(name = "isometry-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rotation or translation taking segment XY to X'Y'.
    PlaneRecover(Common),
    /// Single rotation equal to rotating about H by beta, then about G by alpha.
    PlaneCompose(Common),
    /// Two line reflections whose composite is the rotation about P by theta.
    PlaneReflections(Common),
    /// Sphere rotation taking arc XY to X'Y'.
    SphereRecover(Common),
    /// Axis and angle of the composite of two sphere rotations.
    SphereCompose(Common),
    /// Fixed points of a ball from two marked points seen before and after.
    Baseball(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON file with one instance or an array of instances.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// Write a figure here. Batches get `-<index>` before the extension.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Read and write angles in degrees.
    #[arg(long)]
    degrees: bool,
    /// Cross-method discrepancy above which a warning is emitted.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// View direction for sphere figures, as `x,y,z`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    view: Option<Vec<f64>>,
}

impl Command {
    fn split(&self) -> (Kind, &Common) {
        match self {
            Command::PlaneRecover(c) => (Kind::PlaneRecover, c),
            Command::PlaneCompose(c) => (Kind::PlaneCompose, c),
            Command::PlaneReflections(c) => (Kind::PlaneReflections, c),
            Command::SphereRecover(c) => (Kind::SphereRecover, c),
            Command::SphereCompose(c) => (Kind::SphereCompose, c),
            Command::Baseball(c) => (Kind::Baseball, c),
        }
    }
}

fn options(common: &Common) -> Result<RunOptions, CliError> {
    if !(common.tolerance >= 0.0 && common.tolerance.is_finite()) {
        return Err(CliError::Schema("--tolerance must be a finite non-negative number".into()));
    }
    let view = match common.view.as_deref() {
        None => Vec3d::unit_z(),
        Some([x, y, z]) => {
            let v = Vec3d::new(*x, *y, *z);
            if !(v.is_finite() && v.norm() > 0.0) {
                return Err(CliError::Schema("--view must be a finite nonzero vector".into()));
            }
            v
        }
        Some(_) => return Err(CliError::Schema("--view takes three numbers".into())),
    };
    Ok(RunOptions {
        method: common.method,
        tolerance: common.tolerance,
        angle_unit: if common.degrees { AngleUnit::Degrees } else { AngleUnit::Radians },
        view,
    })
}

fn solve_one(
    kind: Kind,
    instance: Result<ProblemInstance, CliError>,
    opts: &RunOptions,
) -> Result<SolutionRecord, CliError> {
    let instance = instance?;
    if instance.kind() != kind {
        return Err(CliError::Schema(format!(
            "instance kind `{}` does not match subcommand `{}`",
            instance.kind().as_str(),
            kind.subcommand()
        )));
    }
    run(&instance, opts)
}

fn indexed_path(path: &Path, index: usize) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{index}"),
    };
    path.with_file_name(name)
}

fn write_svg(record: &SolutionRecord, path: &Path) -> Result<(), CliError> {
    let svg = render_svg(&record.figure).map_err(|e| CliError::Internal(e.to_string()))?;
    std::fs::write(path, svg).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn error_json(e: &CliError) -> serde_json::Value {
    serde_json::json!({
        "error": { "code": e.code(), "message": e.to_string(), "exit_code": e.exit_code() }
    })
}

fn report(e: &CliError, index: Option<usize>) {
    match index {
        Some(i) => eprintln!("error[{}] instance {i}: {e}", e.code()),
        None => eprintln!("error[{}]: {e}", e.code()),
    }
}

fn diagnostics(record: &SolutionRecord, index: Option<usize>) {
    for d in &record.diagnostics {
        match index {
            Some(i) => eprintln!("instance {i}: {d}"),
            None => eprintln!("{d}"),
        }
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let (kind, common) = cli.command.split();
    let opts = options(common)?;
    let text = std::fs::read(&common.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", common.input.display())))?;
    match parse_batch(&text, opts.angle_unit)? {
        Batch::Single(instance) => {
            let record = solve_one(kind, instance, &opts)?;
            if let Some(path) = &common.svg {
                write_svg(&record, path)?;
            }
            diagnostics(&record, None);
            println!("{}", record.to_json());
            Ok(0)
        }
        Batch::Many(instances) => {
            // results keep input order; the exit code is that of the first failure
            let mut status = 0u8;
            let mut out = Vec::with_capacity(instances.len());
            for (i, instance) in instances.into_iter().enumerate() {
                let outcome = solve_one(kind, instance, &opts).and_then(|record| {
                    if let Some(path) = &common.svg {
                        write_svg(&record, &indexed_path(path, i))?;
                    }
                    Ok(record)
                });
                match outcome {
                    Ok(record) => {
                        diagnostics(&record, Some(i));
                        out.push(record.to_json());
                    }
                    Err(e) => {
                        report(&e, Some(i));
                        if status == 0 {
                            status = e.exit_code() as u8;
                        }
                        out.push(error_json(&e));
                    }
                }
            }
            println!("{}", serde_json::Value::Array(out));
            Ok(status)
        }
    }
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
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            report(&e, None);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
