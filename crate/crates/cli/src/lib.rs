//! Scenario configuration, execution and reporting for the `orelab` binary.

pub mod config;
pub mod oracle;
pub mod report;
pub mod run;

pub use config::{parse_config, ConfigError, ScenarioConfig, ScenarioKind};
pub use report::{emit_report, parse_report, Format, ScenarioReport, Status};
pub use run::{check_maps, run_scenarios, RunOptions};

/// Process exit code for a finished run: 0 when every report passes, 1 otherwise.
pub fn exit_code(reports: &[ScenarioReport]) -> i32 {
    if reports.iter().all(ScenarioReport::passed) {
        0
    } else {
        1
    }
}

/// Exit code for configuration and usage errors.
pub const CONFIG_ERROR: i32 = 2;
