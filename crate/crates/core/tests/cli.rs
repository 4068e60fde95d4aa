mod common;

use std::fs;
use std::path::Path;

use codeneed::corpus::{write_lines, AnswerRecord, Category, CommentRecord, QuestionRecord, RevisionRecord};
use codeneed::synth::{outcome_corpus, published_shapes, CategoryShape};
use common::{codeneed, fixture, question, stderr, stdout};
use tempfile::TempDir;

fn write_corpus(dir: &Path, name: &str, records: &[QuestionRecord]) -> String {
    let path = dir.join(name);
    write_lines(fs::File::create(&path).unwrap(), records).unwrap();
    path.to_string_lossy().into_owned()
}

fn four_categories() -> Vec<QuestionRecord> {
    let ask = |t| CommentRecord {
        text: "Please show your code".into(),
        creation_utc: t,
    };
    let code = "<p>x</p><pre><code>y()</code></pre>";
    let mut mico = question(1, "Broken loop", "<p>It fails.</p>", 0);
    mico.comments.push(ask(60));
    let mut coac = question(2, "Broken query", code, 0);
    coac.comments.push(ask(60));
    coac.revisions = vec![
        RevisionRecord {
            creation_utc: 0,
            body_html: "<p>x</p>".into(),
        },
        RevisionRecord {
            creation_utc: 120,
            body_html: code.into(),
        },
    ];
    coac.answers.push(AnswerRecord {
        creation_utc: 600,
        is_accepted: true,
    });
    let cods = question(3, "Broken parser", code, 0);
    let donc = question(4, "Which editor?", "<p>Opinions welcome.</p>", 0);
    vec![mico, coac, cods, donc]
}

/// `n` needs-code and `n` no-code questions with distinct times.
fn balanced(n: usize) -> Vec<QuestionRecord> {
    (0..2 * n)
        .map(|i| {
            let body = if i % 2 == 0 {
                "<p>I get an error.</p><pre><code>boom()</code></pre>"
            } else {
                "<p>Which one is better?</p>"
            };
            question(i as u64 + 1, "Title", body, i as i64 * 10)
        })
        .collect()
}

fn ok(o: &std::process::Output) {
    assert_eq!(o.status.code(), Some(0), "stdout:\n{}\nstderr:\n{}", stdout(o), stderr(o));
}

#[test]
fn label_counts_each_category() {
    let dir = TempDir::new().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &four_categories());
    let o = codeneed(["label", &input, "--out-dir", dir.path().to_str().unwrap()]);
    ok(&o);
    assert_eq!(stdout(&o), "MICO\t1\nCOAC\t1\nCODS\t1\nDONC\t1\n");
    let labeled = fs::read_to_string(dir.path().join("labeled.jsonl")).unwrap();
    assert_eq!(labeled.lines().count(), 4);
    assert!(labeled.contains(r#""category":"COAC","needs_code":true,"low_confidence":false"#));
}

#[test]
fn empty_input_is_a_warning() {
    let dir = TempDir::new().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &[]);
    let out = dir.path().to_str().unwrap();
    let o = codeneed(["label", &input, "--out-dir", out]);
    ok(&o);
    assert_eq!(stdout(&o), "MICO\t0\nCOAC\t0\nCODS\t0\nDONC\t0\n");
    assert_eq!(codeneed(["label", &input, "--out-dir", out, "--strict"]).status.code(), Some(1));
}

#[test]
fn duplicate_id_exits_two() {
    let dir = TempDir::new().unwrap();
    let mut recs = four_categories();
    recs[3].id = 1;
    let input = write_corpus(dir.path(), "q.jsonl", &recs);
    let o = codeneed(["label", &input, "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate question id 1"), "{}", stderr(&o));
}

#[test]
fn bad_arguments_exit_two() {
    let dir = TempDir::new().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &four_categories());
    let out = dir.path().to_str().unwrap();
    assert_eq!(codeneed(["label", &input, "--out-dir", out, "--algorithm", "svm"]).status.code(), Some(2));
    assert_eq!(codeneed(["label", &input, "--out-dir", out, "--train-fraction", "1.5"]).status.code(), Some(2));
    assert_eq!(codeneed(["label", "missing.jsonl", "--out-dir", out]).status.code(), Some(2));
    assert_eq!(codeneed(["frobnicate"]).status.code(), Some(2));
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "train_fraction = 0\n").unwrap();
    assert_eq!(
        codeneed(["label", &input, "--out-dir", out, "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn split_manifest_of_twenty_plus_twenty() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &balanced(20));
    ok(&codeneed(["label", &input, "--out-dir", out]));
    let labeled = dir.path().join("labeled.jsonl");
    let o = codeneed(["split", labeled.to_str().unwrap(), "--out-dir", out, "--no-timestamp"]);
    ok(&o);
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("split.json")).unwrap()).unwrap();
    assert_eq!(m["train_needs_code"].as_array().unwrap().len(), 14);
    assert_eq!(m["train_no_code"].as_array().unwrap().len(), 14);
    assert_eq!(m["test_needs_code"].as_array().unwrap().len(), 6);
    assert!(m.get("generated_unix").is_none());
    let o = codeneed(["split", labeled.to_str().unwrap(), "--out-dir", out]);
    ok(&o);
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("split.json")).unwrap()).unwrap();
    assert!(m["generated_unix"].as_u64().unwrap() > 1_600_000_000);
}

#[test]
fn single_class_training_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let recs: Vec<QuestionRecord> = balanced(5).into_iter().step_by(2).collect();
    let input = write_corpus(dir.path(), "q.jsonl", &recs);
    ok(&codeneed(["label", &input, "--out-dir", out]));
    let o = codeneed(["train", dir.path().join("labeled.jsonl").to_str().unwrap(), "--out-dir", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no-code"), "{}", stderr(&o));
}

#[test]
fn schema_records_default_thresholds() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &balanced(20));
    ok(&codeneed(["label", &input, "--out-dir", out]));
    let labeled = dir.path().join("labeled.jsonl");
    let o = codeneed(["train", labeled.to_str().unwrap(), "--out-dir", out, "--algorithm", "gnb"]);
    ok(&o);
    let schema: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("schema.json")).unwrap()).unwrap();
    let t = &schema["thresholds"];
    assert_eq!((t["keyword_d_min"].as_u64(), t["body_d_min"].as_u64(), t["title_d_min"].as_u64()), (Some(50), Some(50), Some(20)));
    assert_eq!(t["r_max"].as_f64(), Some(50.0));
    // 14 + 14 questions cannot reach d >= 50, so only the two count features remain
    assert!(stderr(&o).contains("no keyword or pattern"));
    assert_eq!(
        codeneed(["train", labeled.to_str().unwrap(), "--out-dir", out, "--algorithm", "gnb", "--strict"]).status.code(),
        Some(1)
    );
    assert!(dir.path().join("model-gnb.model").exists());
    assert!(!dir.path().join("model-rf.model").exists());
}

fn train_fixture(dir: &Path, extra: &[&str]) {
    let out = dir.to_str().unwrap();
    let config = fixture("fixture.toml");
    let corpus = fixture("corpus.jsonl");
    let base = ["--config", config.to_str().unwrap(), "--out-dir", out, "--no-timestamp"];
    ok(&codeneed(base.iter().copied().chain(["label", corpus.to_str().unwrap()])));
    let labeled = dir.join("labeled.jsonl");
    ok(&codeneed(base.iter().copied().chain(["train", labeled.to_str().unwrap()]).chain(extra.iter().copied())));
}

#[test]
fn knn_with_k1_reproduces_training_labels() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("k1.toml");
    fs::write(
        &cfg,
        fs::read_to_string(fixture("fixture.toml")).unwrap() + "\n[hyperparams.knn]\nk = 1\n",
    )
    .unwrap();
    let out = dir.path().to_str().unwrap();
    let corpus = fixture("corpus.jsonl");
    let base = ["--config", cfg.to_str().unwrap(), "--out-dir", out, "--algorithm", "knn"];
    ok(&codeneed(base.iter().copied().chain(["label", corpus.to_str().unwrap()])));
    let labeled = dir.path().join("labeled.jsonl");
    ok(&codeneed(base.iter().copied().chain(["train", labeled.to_str().unwrap()])));
    ok(&codeneed(base.iter().copied().chain(["predict", labeled.to_str().unwrap(), "--partition", "train"])));
    let o = codeneed(base.iter().copied().chain(["evaluate", "--truth", labeled.to_str().unwrap()]));
    ok(&o);
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    assert_eq!(m["models"][0]["model"], "KNN");
    assert_eq!(m["models"][0]["n"], 140);
    assert_eq!(m["models"][0]["accuracy"], 1.0);
}

#[test]
fn predict_rejects_foreign_schema() {
    let a = TempDir::new().unwrap();
    train_fixture(a.path(), &["--algorithm", "gnb"]);
    let b = TempDir::new().unwrap();
    let cfg = b.path().join("other.toml");
    fs::write(&cfg, "[thresholds]\nkeyword_d_min = 20\nbody_d_min = 20\ntitle_d_min = 10\n").unwrap();
    let corpus = fixture("corpus.jsonl");
    let bout = b.path().to_str().unwrap();
    ok(&codeneed(["label", corpus.to_str().unwrap(), "--out-dir", bout]));
    ok(&codeneed([
        "train",
        b.path().join("labeled.jsonl").to_str().unwrap(),
        "--out-dir",
        bout,
        "--algorithm",
        "gnb",
        "--config",
        cfg.to_str().unwrap(),
    ]));
    let o = codeneed([
        "predict",
        corpus.to_str().unwrap(),
        "--out-dir",
        bout,
        "--model",
        a.path().join("model-gnb.model").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fingerprint mismatch"), "{}", stderr(&o));
}

#[test]
fn empty_questions_give_empty_predictions() {
    let dir = TempDir::new().unwrap();
    train_fixture(dir.path(), &["--algorithm", "lsvm"]);
    let empty = write_corpus(dir.path(), "none.jsonl", &[]);
    let o = codeneed(["predict", &empty, "--out-dir", dir.path().to_str().unwrap(), "--algorithm", "lsvm"]);
    ok(&o);
    assert_eq!(fs::read_to_string(dir.path().join("predictions-lsvm.csv")).unwrap(), "id,label,score\n");
}

fn write_predictions(dir: &Path, name: &str, rows: &[(u64, &str)]) -> String {
    let path = dir.join(name);
    let mut s = String::from("id,label,score\n");
    for (id, label) in rows {
        s.push_str(&format!("{id},{label},\n"));
    }
    fs::write(&path, s).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn evaluate_perfect_inverted_and_unmatched() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let input = write_corpus(dir.path(), "q.jsonl", &balanced(3));
    ok(&codeneed(["label", &input, "--out-dir", out]));
    let truth = dir.path().join("labeled.jsonl");
    let truth = truth.to_str().unwrap();
    let rows: Vec<(u64, bool)> = (1..=6).map(|id| (id, id % 2 == 1)).collect();
    let name = |b: bool| if b { "needs-code" } else { "no-code" };
    let perfect: Vec<(u64, &str)> = rows.iter().map(|&(id, b)| (id, name(b))).collect();
    let inverted: Vec<(u64, &str)> = rows.iter().map(|&(id, b)| (id, name(!b))).collect();
    let p = write_predictions(dir.path(), "predictions-perfect.csv", &perfect);
    let q = write_predictions(dir.path(), "predictions-inverted.csv", &inverted);
    let o = codeneed(["evaluate", "--predictions", &p, "--predictions", &q, "--truth", truth, "--out-dir", out, "--no-timestamp"]);
    ok(&o);
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("metrics.json")).unwrap()).unwrap();
    assert_eq!(m["models"][0]["model"], "PERFECT");
    for class in ["needs_code", "no_code"] {
        for k in ["precision", "recall", "f1"] {
            assert_eq!(m["models"][0][class][k], 1.0);
        }
    }
    assert_eq!(m["models"][0]["accuracy"], 1.0);
    assert_eq!(m["models"][1]["accuracy"], 0.0);
    assert!(stdout(&o).starts_with("Model"));
    assert_eq!(fs::read_to_string(dir.path().join("metrics.txt")).unwrap(), stdout(&o));

    let stray = write_predictions(dir.path(), "predictions-stray.csv", &[(99, "no-code")]);
    let o = codeneed(["evaluate", "--predictions", &stray, "--truth", truth, "--out-dir", out]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("question 99"));
}

fn effects_json(dir: &Path, records: &[QuestionRecord], extra: &[&str]) -> (std::process::Output, serde_json::Value) {
    let out = dir.to_str().unwrap();
    let input = write_corpus(dir, "q.jsonl", records);
    ok(&codeneed(["label", &input, "--out-dir", out]));
    let labeled = dir.join("labeled.jsonl");
    let mut args = vec!["effects", labeled.to_str().unwrap(), "--out-dir", out, "--no-timestamp"];
    args.extend_from_slice(extra);
    let o = codeneed(&args);
    let v = serde_json::from_str(&fs::read_to_string(dir.join("effects.json")).unwrap_or_default()).unwrap_or_default();
    (o, v)
}

fn rates(v: &serde_json::Value, key: &str) -> Vec<f64> {
    v["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| (o[key].as_f64().unwrap() * 1000.0).round() / 10.0)
        .collect()
}

#[test]
fn effects_on_published_shape() {
    let dir = TempDir::new().unwrap();
    let (o, v) = effects_json(dir.path(), &outcome_corpus(&published_shapes(), 1, 42).unwrap(), &[]);
    ok(&o);
    assert_eq!(rates(&v, "resolved_rate"), vec![23.8, 44.0, 61.4]);
    assert_eq!(rates(&v, "unanswered_rate"), vec![28.0, 20.0, 8.8]);
    assert!(stdout(&o).contains("Accepted answers"));
    assert!(fs::read_to_string(dir.path().join("effects.txt")).unwrap().contains("G5"));
}

#[test]
fn single_category_effects_warn() {
    let dir = TempDir::new().unwrap();
    let shape = CategoryShape {
        category: Category::Mico,
        size: 12,
        resolved: 4,
        accepted_before_code: 0,
        answered: 9,
    };
    let recs = outcome_corpus(&[shape], 1, 2).unwrap();
    let (o, v) = effects_json(dir.path(), &recs, &[]);
    ok(&o);
    assert!(stderr(&o).contains("partial report"));
    assert!(v["pairwise"].as_array().unwrap().is_empty());
    assert_eq!(v["outcomes"][0]["size"], 12);
    let (o, _) = effects_json(dir.path(), &recs, &["--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn flags_override_config() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(
        &cfg,
        fs::read_to_string(fixture("fixture.toml")).unwrap().replace("seed = 42", "seed = 5").replace("\"all\"", "\"rf\""),
    )
    .unwrap();
    let out = dir.path().to_str().unwrap();
    let corpus = fixture("corpus.jsonl");
    ok(&codeneed(["label", corpus.to_str().unwrap(), "--out-dir", out]));
    let labeled = dir.path().join("labeled.jsonl");
    let cfg = cfg.to_str().unwrap();
    ok(&codeneed(["train", labeled.to_str().unwrap(), "--config", cfg, "--out-dir", out]));
    let header = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap().lines().nth(2).unwrap().to_string();
    assert!(header("model-rf.model").contains("\"seed\":5"));
    ok(&codeneed(["train", labeled.to_str().unwrap(), "--config", cfg, "--out-dir", out, "--seed", "9", "--algorithm", "gbstump"]));
    assert!(header("model-gbstump.model").contains("\"seed\":9"));
}

#[test]
fn writes_only_inside_out_dir() {
    let work = TempDir::new().unwrap();
    let out = TempDir::new().unwrap();
    let corpus = fixture("corpus.jsonl");
    let o = out.path().to_str().unwrap();
    let config = fixture("fixture.toml");
    let run = |args: &[&str]| {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_codeneed"))
            .args(args)
            .args(["--out-dir", o, "--config", config.to_str().unwrap(), "--algorithm", "gnb"])
            .current_dir(work.path())
            .output()
            .unwrap();
        ok(&status);
    };
    let labeled = out.path().join("labeled.jsonl");
    let labeled = labeled.to_str().unwrap();
    run(&["label", corpus.to_str().unwrap()]);
    run(&["train", labeled]);
    run(&["predict", labeled, "--partition", "test"]);
    run(&["evaluate", "--truth", labeled]);
    run(&["effects", labeled]);
    assert_eq!(fs::read_dir(work.path()).unwrap().count(), 0);
    let mut names: Vec<String> = fs::read_dir(out.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "effects.json",
            "effects.txt",
            "features-train.csv",
            "labeled.jsonl",
            "metrics.json",
            "metrics.txt",
            "model-gnb.model",
            "predictions-gnb.csv",
            "schema.json",
            "selection.json",
            "split.json"
        ]
    );
}
