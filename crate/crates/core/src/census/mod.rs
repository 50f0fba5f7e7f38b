//! File formats, report tables and the experiments run by the CLI.

pub mod experiments;
pub mod format;
pub mod record;
pub mod target;

pub use experiments::{
    count, count_rank, counts_from_csv, minor_census, nonbasis_bound, nonbasis_ratio, verify,
    Fault, MinorCensus, MinorMode, Population, VerifyOutcome, VERIFY_MAX_N,
};
pub use format::{format_matroid, parse_matroid, read_matroid, write_matroid};
pub use record::{parse_csv, CensusRecord, Format, Value};
pub use target::Target;
