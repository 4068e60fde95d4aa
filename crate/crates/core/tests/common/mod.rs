//! Independent oracles and helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use codeneed::corpus::{Category, CategoryLabel, LabeledQuestion, QuestionRecord};
use codeneed::features::{Thresholds, TrainingText};
use codeneed::models::Mlp;

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn codeneed<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_codeneed"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn question(id: u64, title: &str, body_html: &str, created: i64) -> QuestionRecord {
    QuestionRecord {
        id,
        title: title.into(),
        body_html: body_html.into(),
        creation_utc: created,
        reputation_at_post: 1,
        comments: vec![],
        answers: vec![],
        revisions: vec![],
    }
}

pub fn labeled(record: QuestionRecord, category: Category) -> LabeledQuestion {
    LabeledQuestion {
        record,
        label: CategoryLabel::new(category),
    }
}

/// Twelve hand-written questions, six needing code and six not.
pub fn micro_corpus() -> Vec<LabeledQuestion> {
    let code = [
        ("Why does my loop throw an error?", "<p>I get an error when the loop runs. The error appears but I do not know why.</p>"),
        ("Error when calling the function", "<p>The function throws an error. I tried to fix the error.</p><pre><code>f(x)</code></pre>"),
        ("How to fix this crash in my script", "<p>My script crashes when I run it. The crash happens because the file is missing.</p>"),
        ("Why is my query returning null?", "<p>The query returns null. I tried again but it still returns null.</p>"),
        ("Exception in the parser after update", "<p>After the update the parser throws an exception. The error is strange.</p><p>It stops at <code>parse()</code>.</p>"),
        ("Loop fails with an error", "<p>The loop fails. I get an error on the last line.</p>"),
    ];
    let concept = [
        ("What is the difference between REST and SOAP?", "<p>I am reading about REST. Which one is better for a small project?</p>"),
        ("Which library is best for charts?", "<p>I need a library for charts. Which one do developers prefer?</p>"),
        ("Is it good practice to use tabs?", "<p>Some people prefer tabs. What is the best practice?</p>"),
        ("What are the advantages of Rust?", "<p>I am learning Rust. What are the advantages over C?</p>"),
        ("Which book is best for learning algorithms?", "<p>I want to learn algorithms. Which book do you recommend?</p>"),
        ("What is the best way to learn SQL?", "<p>I am new to databases. What is the best way to learn?</p>"),
    ];
    let mut out = Vec::new();
    for (i, (t, b)) in code.iter().enumerate() {
        let cat = if b.contains("<pre>") { Category::Cods } else { Category::Mico };
        out.push(labeled(question(i as u64 + 1, t, b, i as i64 * 100), cat));
    }
    for (i, (t, b)) in concept.iter().enumerate() {
        out.push(labeled(question(i as u64 + 7, t, b, i as i64 * 100 + 50), Category::Donc));
    }
    out
}

pub fn micro_thresholds() -> Thresholds {
    Thresholds {
        keyword_d_min: 3,
        body_d_min: 3,
        title_d_min: 2,
        r_max: 50.0,
    }
}

/// Exhaustive selection: every distinct candidate is counted by rescanning
/// every question, and kept when `|f_c - f_nc| >= d_min` and
/// `100 * min <= r_max * max` with `max > 0`.
pub fn brute_force_selection(texts: &[TrainingText], t: &Thresholds) -> (Vec<String>, Vec<String>, Vec<String>) {
    fn passes(f_c: u64, f_nc: u64, d_min: u64, r_max: f64) -> bool {
        let (hi, lo) = (f_c.max(f_nc), f_c.min(f_nc));
        hi > 0 && hi - lo >= d_min && 100.0 * lo as f64 <= r_max * hi as f64
    }
    fn windows(seq: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        for start in 0..seq.len() {
            for len in 3..=6 {
                if start + len <= seq.len() {
                    out.push(seq[start..start + len].join("+"));
                }
            }
        }
        out
    }
    let select = |units: &dyn Fn(&TrainingText) -> Vec<String>, d_min: u64| -> Vec<String> {
        let candidates: BTreeSet<String> = texts.iter().flat_map(units).collect();
        candidates
            .into_iter()
            .filter(|c| {
                let (mut f_c, mut f_nc) = (0, 0);
                for t in texts {
                    let n = units(t).iter().filter(|u| *u == c).count() as u64;
                    if t.needs_code {
                        f_c += n;
                    } else {
                        f_nc += n;
                    }
                }
                passes(f_c, f_nc, d_min, t.r_max)
            })
            .collect()
    };
    (
        select(&|t| t.text.keyword_stems.clone(), t.keyword_d_min),
        select(&|t| windows(&t.text.title_symbols), t.title_d_min),
        select(
            &|t| t.text.body_symbols.iter().flat_map(|s| windows(s)).collect(),
            t.body_d_min,
        ),
    )
}

/// (tp, fp, fn, tn) counted one pair at a time.
pub fn recount(y_true: &[bool], y_pred: &[bool]) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for i in 0..y_true.len() {
        if y_true[i] && y_pred[i] {
            c.0 += 1;
        } else if !y_true[i] && y_pred[i] {
            c.1 += 1;
        } else if y_true[i] {
            c.2 += 1;
        } else {
            c.3 += 1;
        }
    }
    c
}

/// Posterior of the positive class from products of normal densities.
pub fn gnb_oracle_log_posterior(x: &[Vec<f64>], y: &[bool], row: &[f64], smoothing: f64) -> f64 {
    let d = row.len();
    let var = |rows: &[&Vec<f64>], j: usize| {
        let m: f64 = rows.iter().map(|r| r[j]).sum::<f64>() / rows.len() as f64;
        (m, rows.iter().map(|r| (r[j] - m) * (r[j] - m)).sum::<f64>() / rows.len() as f64)
    };
    let all: Vec<&Vec<f64>> = x.iter().collect();
    let eps = smoothing * (0..d).map(|j| var(&all, j).1).fold(0.0, f64::max);
    let mut log_joint = [0.0f64; 2];
    for (c, slot) in log_joint.iter_mut().enumerate() {
        let rows: Vec<&Vec<f64>> = x.iter().zip(y).filter(|(_, l)| **l == (c == 1)).map(|(r, _)| r).collect();
        let mut lp = (rows.len() as f64 / x.len() as f64).ln();
        for j in 0..d {
            let (m, v) = var(&rows, j);
            let v = v + eps;
            lp += -(row[j] - m).powi(2) / (2.0 * v) - 0.5 * (2.0 * std::f64::consts::PI * v).ln();
        }
        *slot = lp;
    }
    let hi = log_joint[0].max(log_joint[1]);
    log_joint[1] - (hi + ((log_joint[0] - hi).exp() + (log_joint[1] - hi).exp()).ln())
}

/// Majority label of the `k` nearest training rows by Euclidean distance,
/// ties in distance broken by training index, tied votes by the nearest.
pub fn knn_oracle(train: &[Vec<f64>], y: &[bool], query: &[f64], k: usize) -> bool {
    let mut all: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, t)| (t.iter().zip(query).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt(), i))
        .collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let votes = all[..k].iter().filter(|(_, i)| y[*i]).count();
    if 2 * votes == k {
        y[all[0].1]
    } else {
        2 * votes > k
    }
}

/// Largest relative error between the analytic gradient and central
/// differences with step `h`, over every parameter.
pub fn mlp_gradient_error(m: &Mlp, x: &[Vec<f64>], y: &[bool], h: f64) -> f64 {
    let (_, g) = m.loss_and_gradient(x, y);
    let loss = |m: &Mlp| m.loss_and_gradient(x, y).0;
    let mut worst = 0.0f64;
    let mut check = |analytic: f64, edit: &dyn Fn(&mut Mlp, f64)| {
        let (mut p, mut q) = (m.clone(), m.clone());
        edit(&mut p, h);
        edit(&mut q, -h);
        let numeric = (loss(&p) - loss(&q)) / (2.0 * h);
        let scale = analytic.abs().max(numeric.abs()).max(1e-8);
        worst = worst.max((analytic - numeric).abs() / scale);
    };
    for j in 0..m.b1.len() {
        for i in 0..m.w1[j].len() {
            check(g.w1[j][i], &|m, d| m.w1[j][i] += d);
        }
        check(g.b1[j], &|m, d| m.b1[j] += d);
        check(g.w2[j], &|m, d| m.w2[j] += d);
    }
    check(g.b2, &|m, d| m.b2 += d);
    worst
}
