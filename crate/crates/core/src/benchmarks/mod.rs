//! Built-in verification cases, the radial tracer scenario and error metrics.

mod cases;
mod metrics;
mod tables;
mod tracer;

pub use cases::{BenchmarkCase, BenchmarkId, MeshSettings};
pub use metrics::{
    convergence_ratio, convergence_study, linf_error, normalized_error, ConvergenceRow,
};
pub use tables::{
    quarter_disk_probe_time, table1, table2, table3, table4, table5, table6, Table, TABLE6_POINTS,
};
pub use tracer::{breakthrough_curves, tracer_setup, DispersionRelation, TracerScenario};
