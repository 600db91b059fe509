//! Counting functions, Siegel–Veech transforms, circle averages and the
//! experiments built on them.

pub mod circle;
pub mod convergence;
pub mod count;
pub mod doubling;
pub mod quad;
pub mod recurrence;
pub mod report;
pub mod testfn;

pub use circle::{circle_integral, circle_integral_fn, ell_on_circle, CircleIntegrand};
pub use convergence::{convergence_experiment, detect_convention, ConvergenceReport, ConvergenceRow, TARGET};
pub use count::{count_N, count_series, siegel_veech_transform, svc_estimate, transform_over, FitResult, Weighting};
pub use doubling::{doubling_check, summarize_doubling, uniform_bound, DoublingInstance, DoublingSummary, UniformReport};
pub use quad::Quadrature;
pub use recurrence::{recurrence_experiment, RecurrenceReport};
pub use report::{to_json_17, write_csv, ExperimentReport};
pub use testfn::TestFunction;
