//! Run configurations, certificates, re-verification and evidence tables.

mod certificate;
mod config;
mod replay;
mod run;
mod table;

pub use certificate::{
    first_difference, producer, Certificate, Settings, CERTIFICATE_SCHEMA, EVIDENCE_SCHEMA,
};
pub use config::{
    ActionSpec, BandTask, BrickTask, FreenessTask, PiSnTask, RunConfig, SSpec, SearchTask,
    SubshiftTask, TableTask, TableWindowSpec, Task, VerifyTask, WindowSpec, DEFAULT_LIMIT,
};
pub use replay::{verify_certificate, Check, VerifyReport};
pub use run::{run_config, run_task, settings_for, write_outputs, RunOptions, RunSummary, TaskOutput};
pub use table::{emit_table, EvidenceFile, TableFormat};
