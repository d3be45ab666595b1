//! Configuration-driven campaigns over the simulation core: sweeps for the
//! demonstration family, randomized fuzz runs for every identity and bound,
//! and deterministic CSV/JSON reporting.

mod config;
mod report;
mod run;
pub mod sample;

pub use config::{ConfigOverrides, HarnessError, Mode, RunConfig};
pub use report::{re_evaluate, CampaignReport, CaseRecord, Violation, KIND_IDENTITY, KIND_VERTEX};
pub use run::{
    chsh_csv, cnot_family_scenario, execute, fig2_csv, run_chsh, run_fig2, run_fuzz, run_vertex,
    vertex_csv, ChshRow, SweepRow, VertexRow, CHSH_PEAK_TOTAL, VERTEX_TOL_HYPERBOLA,
    VERTEX_TOL_SYMMETRIC,
};
