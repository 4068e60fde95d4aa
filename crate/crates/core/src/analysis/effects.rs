use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hypothesis::{chi_squared, cliffs_delta, mann_whitney, ContingencyTable, MwMethod, TestResult};
use crate::corpus::{first_code_revision_time, Category, LabeledQuestion, Timestamp};

pub const EFFECT_REPORT_VERSION: u32 = 1;

/// Categories compared in the answer analysis, in report order.
pub const ANALYZED: [Category; 3] = [Category::Mico, Category::Coac, Category::Cods];

/// Name of the COAC delay measured from the code addition.
pub const COAC_STAR: &str = "COAC*";

/// Buckets with fewer questions than this are left out of the slices.
pub const MIN_SLICE_QUESTIONS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnswerDelay {
    Unresolved,
    /// COAC question whose accepted answer predates the code revision.
    AcceptedBeforeCode,
    Resolved {
        minutes: f64,
        /// COAC only: minutes from the first code-bearing revision.
        after_code_minutes: Option<f64>,
    },
}

fn minutes(from: Timestamp, to: Timestamp) -> f64 {
    (to - from) as f64 / 60.0
}

pub fn answer_delays(q: &LabeledQuestion) -> AnswerDelay {
    let Some(accepted) = q.record.accepted_answer() else {
        return AnswerDelay::Unresolved;
    };
    let delay = minutes(q.record.creation_utc, accepted.creation_utc);
    if q.label.category != Category::Coac {
        return AnswerDelay::Resolved {
            minutes: delay,
            after_code_minutes: None,
        };
    }
    match first_code_revision_time(&q.record) {
        Some(code_at) if accepted.creation_utc < code_at => AnswerDelay::AcceptedBeforeCode,
        Some(code_at) => AnswerDelay::Resolved {
            minutes: delay,
            after_code_minutes: Some(minutes(code_at, accepted.creation_utc)),
        },
        None => AnswerDelay::Resolved {
            minutes: delay,
            after_code_minutes: None,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReputationBucket {
    New,
    LowReputed,
    Established,
    Trusted,
}

impl ReputationBucket {
    pub const ALL: [ReputationBucket; 4] = [
        ReputationBucket::New,
        ReputationBucket::LowReputed,
        ReputationBucket::Established,
        ReputationBucket::Trusted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReputationBucket::New => "New",
            ReputationBucket::LowReputed => "Low Reputed",
            ReputationBucket::Established => "Established",
            ReputationBucket::Trusted => "Trusted",
        }
    }
}

/// New below 10, Low Reputed below 1,000, Established below 20,000.
pub fn reputation_bucket(score: u64) -> ReputationBucket {
    match score {
        0..=9 => ReputationBucket::New,
        10..=999 => ReputationBucket::LowReputed,
        1_000..=19_999 => ReputationBucket::Established,
        _ => ReputationBucket::Trusted,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HourSlot {
    Day,
    Night,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DaySlot {
    Weekday,
    Weekend,
}

/// UTC hours counted as day: `start_hour <= h < end_hour`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DayWindow {
    pub start_hour: u32,
    pub end_hour: u32,
}

impl Default for DayWindow {
    fn default() -> Self {
        Self {
            start_hour: 8,
            end_hour: 20,
        }
    }
}

/// Hour slot and weekday/weekend of a UTC timestamp.
pub fn time_slot(creation_utc: Timestamp, window: DayWindow) -> (HourSlot, DaySlot) {
    let days = creation_utc.div_euclid(86_400);
    let hour = (creation_utc.rem_euclid(86_400) / 3_600) as u32;
    // 1970-01-01 was a Thursday; 0 = Monday
    let weekday = (days + 3).rem_euclid(7);
    let hour_slot = if (window.start_hour..window.end_hour).contains(&hour) {
        HourSlot::Day
    } else {
        HourSlot::Night
    };
    let day_slot = if weekday >= 5 { DaySlot::Weekend } else { DaySlot::Weekday };
    (hour_slot, day_slot)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryOutcome {
    pub category: Category,
    pub size: usize,
    pub resolved: usize,
    pub unresolved: usize,
    /// COAC accepted answers given before the code arrived; excluded from
    /// the resolved/unresolved counts and from delays.
    pub accepted_before_code: usize,
    pub answered: usize,
    pub unanswered: usize,
    pub resolved_rate: Option<f64>,
    pub unanswered_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DelaySample {
    pub group: String,
    pub ids: Vec<u64>,
    pub minutes: Vec<f64>,
    pub median: Option<f64>,
    pub mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub name: String,
    pub first: String,
    pub second: String,
    pub mann_whitney: TestResult,
    pub cliffs_delta: TestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceRow {
    pub category: Category,
    pub size: usize,
    pub resolved: usize,
    pub unresolved: usize,
    pub unanswered: usize,
    pub resolved_rate: Option<f64>,
    pub unanswered_rate: Option<f64>,
    pub delay_median: Option<f64>,
    pub delay_mean: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub after_code_median: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub after_code_mean: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slice {
    pub factor: String,
    pub level: String,
    pub rows: Vec<SliceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectReport {
    pub format_version: u32,
    pub day_window: DayWindow,
    pub outcomes: Vec<CategoryOutcome>,
    pub resolution_test: Option<TestResult>,
    pub answered_test: Option<TestResult>,
    pub delays: Vec<DelaySample>,
    pub pairwise: Vec<PairwiseComparison>,
    pub slices: Vec<Slice>,
    /// Slice levels left out for having too few questions.
    pub dropped_levels: Vec<String>,
    /// Parts of the report that could not be computed, and why.
    pub gaps: Vec<String>,
}

pub fn median(v: &[f64]) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    Some(if s.len() % 2 == 1 { s[m] } else { (s[m - 1] + s[m]) / 2.0 })
}

pub fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

fn rate(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

struct Analyzed<'a> {
    q: &'a LabeledQuestion,
    delay: AnswerDelay,
}

fn outcome(category: Category, items: &[&Analyzed]) -> CategoryOutcome {
    let mut o = CategoryOutcome {
        category,
        size: items.len(),
        resolved: 0,
        unresolved: 0,
        accepted_before_code: 0,
        answered: 0,
        unanswered: 0,
        resolved_rate: None,
        unanswered_rate: None,
    };
    for a in items {
        match a.delay {
            AnswerDelay::Unresolved => o.unresolved += 1,
            AnswerDelay::AcceptedBeforeCode => o.accepted_before_code += 1,
            AnswerDelay::Resolved { .. } => o.resolved += 1,
        }
        if a.q.record.is_answered() {
            o.answered += 1;
        } else {
            o.unanswered += 1;
        }
    }
    o.resolved_rate = rate(o.resolved, o.resolved + o.unresolved);
    o.unanswered_rate = rate(o.unanswered, o.size);
    o
}

fn delay_values(items: &[&Analyzed], after_code: bool) -> (Vec<u64>, Vec<f64>) {
    items
        .iter()
        .filter_map(|a| match a.delay {
            AnswerDelay::Resolved { minutes, .. } if !after_code => Some((a.q.record.id, minutes)),
            AnswerDelay::Resolved {
                after_code_minutes: Some(m),
                ..
            } if after_code => Some((a.q.record.id, m)),
            _ => None,
        })
        .unzip()
}

fn slice_row(category: Category, items: &[&Analyzed]) -> SliceRow {
    let o = outcome(category, items);
    let (_, d) = delay_values(items, false);
    let (_, star) = delay_values(items, true);
    let coac = category == Category::Coac;
    SliceRow {
        category,
        size: o.size,
        resolved: o.resolved,
        unresolved: o.unresolved,
        unanswered: o.unanswered,
        resolved_rate: o.resolved_rate,
        unanswered_rate: o.unanswered_rate,
        delay_median: median(&d),
        delay_mean: mean(&d),
        after_code_median: if coac { median(&star) } else { None },
        after_code_mean: if coac { mean(&star) } else { None },
    }
}

fn table_test(
    name: &str,
    outcomes: &[CategoryOutcome],
    columns: [&str; 2],
    cells: impl Fn(&CategoryOutcome) -> [usize; 2],
    gaps: &mut Vec<String>,
) -> Option<TestResult> {
    let present: Vec<&CategoryOutcome> = outcomes.iter().filter(|o| o.size > 0).collect();
    if present.len() < 2 {
        gaps.push(format!("{name}: fewer than two categories present"));
        return None;
    }
    let table = ContingencyTable::new(
        present.iter().map(|o| o.category.to_string()).collect(),
        columns.iter().map(|c| c.to_string()).collect(),
        present
            .iter()
            .map(|o| cells(o).iter().map(|&v| v as u64).collect())
            .collect(),
    )
    .ok()?;
    match chi_squared(&table) {
        Ok(r) => Some(r),
        Err(e) => {
            gaps.push(format!("{name}: {e}"));
            None
        }
    }
}

/// Full answer-outcome analysis over the MICO, COAC and CODS questions of
/// a labeled corpus. DONC questions are ignored.
pub fn effect_report(corpus: &[LabeledQuestion], window: DayWindow) -> EffectReport {
    let mut sorted: Vec<&LabeledQuestion> = corpus
        .iter()
        .filter(|q| ANALYZED.contains(&q.label.category))
        .collect();
    sorted.sort_by_key(|q| q.record.id);
    let analyzed: Vec<Analyzed> = sorted
        .par_iter()
        .map(|q| Analyzed {
            q,
            delay: answer_delays(q),
        })
        .collect();
    let by_cat = |c: Category| -> Vec<&Analyzed> { analyzed.iter().filter(|a| a.q.label.category == c).collect() };

    let mut gaps = Vec::new();
    let outcomes: Vec<CategoryOutcome> = ANALYZED.iter().map(|&c| outcome(c, &by_cat(c))).collect();
    for o in &outcomes {
        if o.size == 0 {
            gaps.push(format!("category {} absent", o.category));
        }
    }
    let resolution_test = table_test(
        "resolved vs unresolved",
        &outcomes,
        ["resolved", "unresolved"],
        |o| [o.resolved, o.unresolved],
        &mut gaps,
    );
    let answered_test = table_test(
        "answered vs unanswered",
        &outcomes,
        ["answered", "unanswered"],
        |o| [o.answered, o.unanswered],
        &mut gaps,
    );

    let mut delays = Vec::new();
    for c in ANALYZED {
        let items = by_cat(c);
        if items.is_empty() {
            continue;
        }
        let (ids, minutes) = delay_values(&items, false);
        delays.push(DelaySample {
            group: c.to_string(),
            median: median(&minutes),
            mean: mean(&minutes),
            ids,
            minutes,
        });
        if c == Category::Coac {
            let (ids, minutes) = delay_values(&items, true);
            delays.push(DelaySample {
                group: COAC_STAR.to_string(),
                median: median(&minutes),
                mean: mean(&minutes),
                ids,
                minutes,
            });
        }
    }

    let groups = [
        ("G1", "MICO", "COAC"),
        ("G2", "COAC", "CODS"),
        ("G3", "MICO", "CODS"),
        ("G4", "MICO", COAC_STAR),
        ("G5", COAC_STAR, "CODS"),
    ];
    let sample = |g: &str| delays.iter().find(|d| d.group == g).map(|d| &d.minutes[..]);
    let mut pairwise = Vec::new();
    for (name, first, second) in groups {
        match (sample(first), sample(second)) {
            (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => {
                let mw = mann_whitney(a, b, MwMethod::Auto).expect("samples are non-empty");
                let cd = cliffs_delta(a, b).expect("samples are non-empty");
                pairwise.push(PairwiseComparison {
                    name: name.to_string(),
                    first: first.to_string(),
                    second: second.to_string(),
                    mann_whitney: mw,
                    cliffs_delta: cd,
                });
            }
            _ => gaps.push(format!("{name} ({first} vs {second}): no delay sample")),
        }
    }

    let mut slices = Vec::new();
    let mut dropped_levels = Vec::new();
    let mut add_slice = |factor: &str, level: &str, keep: &dyn Fn(&LabeledQuestion) -> bool| {
        let members: Vec<&Analyzed> = analyzed.iter().filter(|a| keep(a.q)).collect();
        if members.len() < MIN_SLICE_QUESTIONS {
            dropped_levels.push(format!("{factor}={level} ({} questions)", members.len()));
            return;
        }
        let rows = ANALYZED
            .iter()
            .map(|&c| {
                let items: Vec<&Analyzed> = members.iter().copied().filter(|a| a.q.label.category == c).collect();
                slice_row(c, &items)
            })
            .collect();
        slices.push(Slice {
            factor: factor.to_string(),
            level: level.to_string(),
            rows,
        });
    };
    for bucket in ReputationBucket::ALL {
        add_slice("reputation", bucket.as_str(), &|q| {
            reputation_bucket(q.record.reputation_at_post) == bucket
        });
    }
    for (level, slot) in [("day", HourSlot::Day), ("night", HourSlot::Night)] {
        add_slice("hour", level, &|q| time_slot(q.record.creation_utc, window).0 == slot);
    }
    for (level, slot) in [("weekday", DaySlot::Weekday), ("weekend", DaySlot::Weekend)] {
        add_slice("day", level, &|q| time_slot(q.record.creation_utc, window).1 == slot);
    }

    EffectReport {
        format_version: EFFECT_REPORT_VERSION,
        day_window: window,
        outcomes,
        resolution_test,
        answered_test,
        delays,
        pairwise,
        slices,
        dropped_levels,
        gaps,
    }
}

fn pct(r: Option<f64>) -> String {
    r.map_or("-".to_string(), |v| format!("{:.1}%", v * 100.0))
}

fn num(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |v| format!("{v:.1}"))
}

fn p_text(r: &TestResult) -> String {
    match r.p_value {
        Some(p) if p < 0.001 => format!("{p:.3e}"),
        Some(p) => format!("{p:.4}"),
        None => "-".to_string(),
    }
}

impl EffectReport {
    pub fn is_partial(&self) -> bool {
        !self.gaps.is_empty()
    }

    /// Aligned plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Accepted answers");
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>9} {:>11} {:>13} {:>9}",
            "Category", "Size", "Resolved", "Unresolved", "Before code", "Rate"
        );
        for o in &self.outcomes {
            let _ = writeln!(
                out,
                "{:<8} {:>6} {:>9} {:>11} {:>13} {:>9}",
                o.category.as_str(),
                o.size,
                o.resolved,
                o.unresolved,
                o.accepted_before_code,
                pct(o.resolved_rate)
            );
        }
        if let Some(t) = &self.resolution_test {
            let _ = writeln!(out, "chi-squared = {:.4}, dof = {}, p = {}", t.statistic, t.dof.unwrap_or(0), p_text(t));
        }
        let _ = writeln!(out, "\nAnswers");
        let _ = writeln!(
            out,
            "{:<8} {:>6} {:>9} {:>11} {:>11}",
            "Category", "Size", "Answered", "Unanswered", "Unans. rate"
        );
        for o in &self.outcomes {
            let _ = writeln!(
                out,
                "{:<8} {:>6} {:>9} {:>11} {:>11}",
                o.category.as_str(),
                o.size,
                o.answered,
                o.unanswered,
                pct(o.unanswered_rate)
            );
        }
        if let Some(t) = &self.answered_test {
            let _ = writeln!(out, "chi-squared = {:.4}, dof = {}, p = {}", t.statistic, t.dof.unwrap_or(0), p_text(t));
        }
        let _ = writeln!(out, "\nDelay to accepted answer (minutes)");
        let _ = writeln!(out, "{:<8} {:>6} {:>10} {:>10}", "Group", "N", "Median", "Mean");
        for d in &self.delays {
            let _ = writeln!(
                out,
                "{:<8} {:>6} {:>10} {:>10}",
                d.group,
                d.minutes.len(),
                num(d.median),
                num(d.mean)
            );
        }
        let _ = writeln!(out, "\nPairwise delay comparisons");
        let _ = writeln!(
            out,
            "{:<4} {:<16} {:>10} {:>12} {:>9} {:<10}",
            "", "Groups", "U", "p", "delta", "Magnitude"
        );
        for c in &self.pairwise {
            let _ = writeln!(
                out,
                "{:<4} {:<16} {:>10.1} {:>12} {:>9.3} {:<10}",
                c.name,
                format!("{} & {}", c.first, c.second),
                c.mann_whitney.statistic,
                p_text(&c.mann_whitney),
                c.cliffs_delta.statistic,
                c.cliffs_delta.magnitude.map_or("-", |m| m.as_str())
            );
        }
        for s in &self.slices {
            let _ = writeln!(out, "\nSlice {} = {}", s.factor, s.level);
            let _ = writeln!(
                out,
                "{:<8} {:>16} {:>16} {:>8} {:>8} {:>10} {:>10}",
                "Category", "Resolved", "Unanswered", "Med", "Avg", "Med*", "Avg*"
            );
            for r in &s.rows {
                let _ = writeln!(
                    out,
                    "{:<8} {:>16} {:>16} {:>8} {:>8} {:>10} {:>10}",
                    r.category.as_str(),
                    format!("{}/{} ({})", r.resolved, r.resolved + r.unresolved, pct(r.resolved_rate)),
                    format!("{}/{} ({})", r.unanswered, r.size, pct(r.unanswered_rate)),
                    num(r.delay_median),
                    num(r.delay_mean),
                    num(r.after_code_median),
                    num(r.after_code_mean)
                );
            }
        }
        if !self.dropped_levels.is_empty() {
            let _ = writeln!(out, "\nDropped slice levels: {}", self.dropped_levels.join(", "));
        }
        if !self.gaps.is_empty() {
            let _ = writeln!(out, "\nGaps:");
            for g in &self.gaps {
                let _ = writeln!(out, "  {g}");
            }
        }
        out
    }
}
