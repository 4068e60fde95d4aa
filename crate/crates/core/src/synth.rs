//! Seeded synthetic data: linearly separable point clouds for classifier
//! checks and labeled corpora with prescribed category outcomes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::corpus::{AnswerRecord, Category, CommentRecord, QuestionRecord, RevisionRecord, Timestamp};
use crate::error::{Error, Result};

/// Labeled points in feature space.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<bool>,
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Random unit direction `w` and a generator of points separated by a
/// hyperplane through the origin with a gap of `margin` between classes.
#[derive(Debug, Clone)]
pub struct Separable {
    pub direction: Vec<f64>,
    pub margin: f64,
}

impl Separable {
    pub fn new(dim: usize, margin: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w: Vec<f64> = (0..dim).map(|_| standard_normal(&mut rng)).collect();
        let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
        w.iter_mut().for_each(|v| *v /= norm);
        Self {
            direction: w,
            margin,
        }
    }

    /// Draws `n` points: Gaussian noise, then pushed `margin / 2` away from
    /// the hyperplane on its own side. Labels alternate to keep classes
    /// balanced.
    pub fn sample(&self, n: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let label = i % 2 == 0;
            let mut p: Vec<f64> = self.direction.iter().map(|_| standard_normal(&mut rng)).collect();
            let along: f64 = p.iter().zip(&self.direction).map(|(a, b)| a * b).sum();
            let side = if label { 1.0 } else { -1.0 };
            let target = side * (along.abs() + self.margin / 2.0);
            for (v, w) in p.iter_mut().zip(&self.direction) {
                *v += (target - along) * w;
            }
            x.push(p);
            y.push(label);
        }
        Dataset { x, y }
    }

    /// Signed distance of `row` from the separating hyperplane.
    pub fn distance(&self, row: &[f64]) -> f64 {
        row.iter().zip(&self.direction).map(|(a, b)| a * b).sum()
    }
}

/// Train and test sets from one generator.
pub fn separable_split(dim: usize, n_train: usize, n_test: usize, margin: f64, seed: u64) -> (Dataset, Dataset) {
    let g = Separable::new(dim, margin, seed);
    (g.sample(n_train, seed.wrapping_add(1)), g.sample(n_test, seed.wrapping_add(2)))
}

/// Prescribed outcome counts for one category of a synthetic corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategoryShape {
    pub category: Category,
    pub size: usize,
    /// Questions with an accepted answer (after the code, for COAC).
    pub resolved: usize,
    /// COAC questions whose accepted answer predates the code revision.
    pub accepted_before_code: usize,
    /// Questions with at least one answer; includes every resolved one.
    pub answered: usize,
}

impl CategoryShape {
    fn check(&self) -> Result<()> {
        let accepted = self.resolved + self.accepted_before_code;
        if accepted > self.answered || self.answered > self.size {
            return Err(Error::InvalidInput(format!(
                "{}: need resolved + accepted_before_code <= answered <= size",
                self.category
            )));
        }
        if self.accepted_before_code > 0 && self.category != Category::Coac {
            return Err(Error::InvalidInput(format!(
                "{}: only COAC can have answers accepted before code",
                self.category
            )));
        }
        Ok(())
    }
}

/// Category sizes and outcomes of the published MICO/COAC/CODS sample:
/// 400/400/407 questions, 95/170/250 resolved (14 COAC answers accepted
/// before the code arrived), 288/320/371 answered.
pub fn published_shapes() -> [CategoryShape; 3] {
    [
        CategoryShape {
            category: Category::Mico,
            size: 400,
            resolved: 95,
            accepted_before_code: 0,
            answered: 288,
        },
        CategoryShape {
            category: Category::Coac,
            size: 400,
            resolved: 170,
            accepted_before_code: 14,
            answered: 320,
        },
        CategoryShape {
            category: Category::Cods,
            size: 407,
            resolved: 250,
            accepted_before_code: 0,
            answered: 371,
        },
    ]
}

/// 2021-01-04 00:00 UTC, a Monday.
const EPOCH: Timestamp = 1_609_718_400;
const YEAR: i64 = 365 * 86_400;

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn minutes(rng: &mut ChaCha8Rng, median: f64) -> i64 {
    let z: f64 = StandardNormal.sample(rng);
    ((median * (1.2 * z).exp()).max(1.0) * 60.0).round() as i64
}

const CODE_BLOCK: &str = "<pre><code>result = compute(items)\nprint(result)</code></pre>";

/// Questions whose labeling and answer outcomes follow `shapes` exactly.
/// Texts are placeholders; times, reputations and delays are random.
/// Ids start at `first_id` and follow category order.
pub fn outcome_corpus(shapes: &[CategoryShape], first_id: u64, seed: u64) -> Result<Vec<QuestionRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut id = first_id;
    for shape in shapes {
        shape.check()?;
        let mut outcomes = Vec::with_capacity(shape.size);
        outcomes.extend(std::iter::repeat_n(Outcome::Resolved, shape.resolved));
        outcomes.extend(std::iter::repeat_n(Outcome::AcceptedBeforeCode, shape.accepted_before_code));
        let open = shape.answered - shape.resolved - shape.accepted_before_code;
        outcomes.extend(std::iter::repeat_n(Outcome::AnsweredOnly, open));
        outcomes.resize(shape.size, Outcome::Unanswered);
        outcomes.shuffle(&mut rng);
        for outcome in outcomes {
            out.push(outcome_question(&mut rng, id, shape.category, outcome));
            id += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Resolved,
    AcceptedBeforeCode,
    AnsweredOnly,
    Unanswered,
}

fn outcome_question(rng: &mut ChaCha8Rng, id: u64, category: Category, outcome: Outcome) -> QuestionRecord {
    let created = EPOCH + rng.gen_range(0..YEAR);
    let request_at = created + minutes(rng, 8.0);
    let code_at = request_at + minutes(rng, 25.0);
    let plain = "<p>Something goes wrong in my program.</p>".to_string();
    let with_code = format!("{plain}{CODE_BLOCK}");
    let request = || CommentRecord {
        text: "Please post your code.".into(),
        creation_utc: request_at,
    };
    let (body_html, comments, revisions) = match category {
        Category::Mico => (plain.clone(), vec![request()], vec![]),
        Category::Coac => (
            with_code.clone(),
            vec![request()],
            vec![
                RevisionRecord {
                    creation_utc: created,
                    body_html: plain.clone(),
                },
                RevisionRecord {
                    creation_utc: code_at,
                    body_html: with_code.clone(),
                },
            ],
        ),
        Category::Cods => (with_code.clone(), vec![], vec![]),
        Category::Donc => ("<p>Which approach do people prefer?</p>".into(), vec![], vec![]),
    };
    let median = match category {
        Category::Mico => 60.0,
        Category::Coac => 45.0,
        _ => 20.0,
    };
    let answers = match outcome {
        Outcome::Unanswered => vec![],
        Outcome::AnsweredOnly => vec![AnswerRecord {
            creation_utc: created + minutes(rng, median),
            is_accepted: false,
        }],
        Outcome::AcceptedBeforeCode => vec![AnswerRecord {
            creation_utc: created + 60 * rng.gen_range(1..=(code_at - created) / 60).max(1) - 30,
            is_accepted: true,
        }],
        Outcome::Resolved => {
            let start = if category == Category::Coac { code_at } else { created };
            vec![AnswerRecord {
                creation_utc: start + minutes(rng, median),
                is_accepted: true,
            }]
        }
    };
    QuestionRecord {
        id,
        title: format!("Question {id}"),
        body_html,
        creation_utc: created,
        reputation_at_post: log_uniform(rng, 1.0, 60_000.0) as u64,
        comments,
        answers,
        revisions,
    }
}

const LANGS: [&str; 6] = ["Python", "Java", "JavaScript", "C#", "PHP", "Ruby"];
const THINGS: [&str; 8] = ["function", "loop", "query", "script", "method", "request", "parser", "class"];
const ERRORS: [&str; 6] = [
    "a NullPointerException",
    "a TypeError",
    "a syntax error",
    "an IndexError",
    "a segmentation fault",
    "an undefined variable error",
];
const ACTIONS: [&str; 6] = [
    "update the library",
    "change the loop",
    "rename the variable",
    "add a parameter",
    "move the file",
    "upgrade the compiler",
];
const TOPICS: [&str; 8] = [
    "REST", "GraphQL", "SQL", "NoSQL", "microservices", "monoliths", "tabs", "spaces",
];
const TASKS: [&str; 5] = [
    "a small web site",
    "data analysis",
    "a mobile game",
    "learning programming",
    "a team project",
];
const SNIPPETS: [&str; 4] = [
    "for i in range(10):\n    total += values[i]",
    "String name = user.getName();\nSystem.out.println(name.length());",
    "const data = await fetch(url);\nconsole.log(data.json());",
    "$rows = $db->query($sql);\nforeach ($rows as $row) { echo $row; }",
];

fn pick<'a>(rng: &mut ChaCha8Rng, items: &[&'a str]) -> &'a str {
    items.choose(rng).copied().expect("non-empty pool")
}

fn code_title(rng: &mut ChaCha8Rng) -> String {
    let (lang, thing, err) = (pick(rng, &LANGS), pick(rng, &THINGS), pick(rng, &ERRORS));
    match rng.gen_range(0..4) {
        0 => format!("Why does my {lang} {thing} throw {err}?"),
        1 => format!("How to fix {err} in my {thing}"),
        2 => format!("{lang} {thing} is not working after I {}", pick(rng, &ACTIONS)),
        _ => format!("Getting {err} when calling the {thing}"),
    }
}

fn code_sentences(rng: &mut ChaCha8Rng) -> Vec<String> {
    let (thing, err) = (pick(rng, &THINGS), pick(rng, &ERRORS));
    let mut s = vec![
        format!("I am getting {err} when I run the {thing}."),
        format!("I tried to {} but it still crashes.", pick(rng, &ACTIONS)),
        format!("The {thing} returns null when I call it with an empty list."),
        "It worked yesterday, however now the error is back.".to_string(),
        "Can someone explain what is wrong with this code?".to_string(),
    ];
    s.shuffle(rng);
    s.truncate(rng.gen_range(2..=4));
    s
}

fn concept_title(rng: &mut ChaCha8Rng) -> String {
    let (a, b) = (pick(rng, &TOPICS), pick(rng, &TOPICS));
    match rng.gen_range(0..4) {
        0 => format!("What is the difference between {a} and {b}?"),
        1 => format!("Which tool should I use for {}?", pick(rng, &TASKS)),
        2 => format!("Is it good practice to prefer {a} over {b}?"),
        _ => format!("What are the advantages of {a} for {}?", pick(rng, &TASKS)),
    }
}

fn concept_sentences(rng: &mut ChaCha8Rng) -> Vec<String> {
    let (a, task) = (pick(rng, &TOPICS), pick(rng, &TASKS));
    let mut s = vec![
        format!("I am reading about {a} and similar approaches."),
        format!("Which one is recommended for {task}?"),
        format!("Are there good resources to learn about {a}?"),
        "What do experienced developers usually prefer?".to_string(),
        "I would like to understand the general idea better.".to_string(),
    ];
    s.shuffle(rng);
    s.truncate(rng.gen_range(2..=4));
    s
}

fn paragraph(sentences: &[String]) -> String {
    format!("<p>{}</p>", sentences.join(" "))
}

/// Realistic-looking corpus with all four categories, for end-to-end runs.
///
/// Needs-code questions talk about errors and failing code, the others ask
/// conceptual questions; about one question in six borrows a sentence from
/// the other side so the classes overlap. Counts per category are
/// `n / 2` DONC and the rest split between MICO, COAC and CODS.
pub fn fixture_corpus(n: usize, seed: u64) -> Vec<QuestionRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let needs = n - n / 2;
    let mut cats: Vec<Category> = (0..n)
        .map(|i| {
            if i >= needs {
                Category::Donc
            } else {
                [Category::Mico, Category::Coac, Category::Cods][i % 3]
            }
        })
        .collect();
    cats.shuffle(&mut rng);
    let mut times: Vec<Timestamp> = (0..n).map(|_| EPOCH + rng.gen_range(0..YEAR)).collect();
    times.sort_unstable();
    cats.into_iter()
        .zip(times)
        .enumerate()
        .map(|(i, (category, created))| fixture_question(&mut rng, 1000 + i as u64, category, created))
        .collect()
}

fn fixture_question(rng: &mut ChaCha8Rng, id: u64, category: Category, created: Timestamp) -> QuestionRecord {
    let borrow = rng.gen_bool(1.0 / 6.0);
    let (title, mut sentences) = if category.needs_code() {
        (code_title(rng), code_sentences(rng))
    } else {
        (concept_title(rng), concept_sentences(rng))
    };
    if borrow {
        let other = if category.needs_code() {
            concept_sentences(rng)
        } else {
            code_sentences(rng)
        };
        sentences.push(other[0].clone());
    }
    let plain = paragraph(&sentences);
    let snippet = format!("<pre><code>{}</code></pre>", pick(rng, &SNIPPETS));
    let inline = format!("<p>The call <code>{}()</code> is where it stops.</p>", pick(rng, &THINGS));
    let request_at = created + minutes(rng, 10.0);
    let code_at = request_at + minutes(rng, 20.0);
    let request = CommentRecord {
        text: "Could you show your code, please?".into(),
        creation_utc: request_at,
    };
    let chatter = CommentRecord {
        text: "Thanks for the question.".into(),
        creation_utc: created + minutes(rng, 30.0),
    };
    let (body_html, comments, revisions) = match category {
        Category::Mico => (plain.clone(), vec![request], vec![]),
        Category::Coac => {
            let body = format!("{plain}{snippet}");
            (
                body.clone(),
                vec![request],
                vec![
                    RevisionRecord {
                        creation_utc: created,
                        body_html: plain.clone(),
                    },
                    RevisionRecord {
                        creation_utc: code_at,
                        body_html: body,
                    },
                ],
            )
        }
        Category::Cods => (format!("{plain}{snippet}{inline}"), vec![], vec![]),
        Category::Donc => (plain.clone(), vec![chatter], vec![]),
    };
    let resolve_p = match category {
        Category::Mico => 0.25,
        Category::Coac => 0.45,
        Category::Cods => 0.6,
        Category::Donc => 0.5,
    };
    let mut answers = Vec::new();
    if rng.gen_bool(0.85) {
        let start = if category == Category::Coac { code_at } else { created };
        answers.push(AnswerRecord {
            creation_utc: start + minutes(rng, 30.0),
            is_accepted: rng.gen_bool(resolve_p),
        });
    }
    QuestionRecord {
        id,
        title,
        body_html,
        creation_utc: created,
        reputation_at_post: log_uniform(rng, 1.0, 40_000.0) as u64,
        comments,
        answers,
        revisions,
    }
}
