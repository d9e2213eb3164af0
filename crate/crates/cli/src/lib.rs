//! Batch front end for the isometry solvers: JSON problem instances in,
//! JSON solution records and SVG figures out.

pub mod error;
pub mod instance;
pub mod solve;
pub mod svg;

pub use error::CliError;
pub use instance::{parse_batch, parse_instance, parse_instance_with, AngleUnit, Batch, Kind, ProblemInstance};
pub use solve::{run, run_baseball, Method, RunOptions, Solution, SolutionRecord};
pub use svg::{render_svg, FigureSpec};
