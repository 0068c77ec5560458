//! Plans and time series extracted from generated text.

mod plan;
mod timeseries;

pub use plan::{parse_plan, planning_jaccard, planning_lcs, PlanParseError, PlanSequence, Step};
pub use timeseries::{
    dtw_path, parse_timeseries, timeseries_dtw, timeseries_element_diff, DuplicateKey, ParsedSeries,
    SeriesParseError, TimeSeries,
};
