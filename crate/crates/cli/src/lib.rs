//! Batch experiments over the word library: coverage profiles with a
//! persistent result cache, verdict records and plotted reports.

pub mod cache;
pub mod experiment;
pub mod range;
pub mod report;

pub use cache::{CacheEntry, CacheError, CacheKey, ResultCache, CACHE_FILE};
pub use experiment::{run_experiment, ConfigError, ExperimentConfig, ExperimentError, ExperimentOutput};
pub use range::{parse_list, parse_range, RangeError};
pub use report::{render_report, summary_table, ReportError};
