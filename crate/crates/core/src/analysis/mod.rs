//! Classification metrics, hypothesis tests and the answer-outcome report.

pub mod effects;
pub mod hypothesis;
pub mod metrics;
pub mod special;

pub use effects::{
    answer_delays, effect_report, reputation_bucket, time_slot, AnswerDelay, CategoryOutcome, DaySlot, DayWindow,
    DelaySample, EffectReport, HourSlot, PairwiseComparison, ReputationBucket, Slice, SliceRow, COAC_STAR,
};
pub use hypothesis::{
    chi_squared, cliffs_delta, cohens_kappa, mann_whitney, ContingencyTable, Magnitude, MwMethod, TestResult,
};
pub use metrics::{classification_metrics, render_metrics_table, ClassMetrics, Confusion, MetricsReport};
