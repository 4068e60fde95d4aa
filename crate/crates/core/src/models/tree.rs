use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Node {
    Leaf {
        positive: u32,
        total: u32,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

/// Classification tree grown with Gini impurity. Rows with
/// `x[feature] <= threshold` go left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

struct Grower<'a> {
    x: &'a [Vec<f64>],
    y: &'a [bool],
    max_features: usize,
    rng: ChaCha8Rng,
    nodes: Vec<Node>,
}

/// Weighted Gini impurity of a two-way split, scaled by `n / 2` so it is
/// the exact fraction `pl*nl/kl + pr*nr/kr`, kept as (numerator, denominator).
#[derive(Debug, Clone, Copy)]
struct Impurity {
    num: u128,
    den: u128,
}

impl Impurity {
    fn of_split(left_pos: usize, left: usize, pos: usize, n: usize) -> Self {
        let (kl, kr) = (left as u128, (n - left) as u128);
        let (pl, pr) = (left_pos as u128, (pos - left_pos) as u128);
        Self {
            num: pl * (kl - pl) * kr + pr * (kr - pr) * kl,
            den: kl * kr,
        }
    }

    fn less_than(self, other: Self) -> bool {
        self.num * other.den < other.num * self.den
    }

    fn equals(self, other: Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Grower<'_> {
    fn grow(&mut self, idx: Vec<usize>) -> usize {
        let pos = idx.iter().filter(|&&i| self.y[i]).count();
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf {
            positive: pos as u32,
            total: idx.len() as u32,
        });
        if idx.len() < 2 || pos == 0 || pos == idx.len() {
            return id;
        }
        let Some((feature, threshold)) = self.best_split(&idx, pos) else {
            return id;
        };
        let (l, r): (Vec<usize>, Vec<usize>) = idx.iter().partition(|&&i| self.x[i][feature] <= threshold);
        let left = self.grow(l);
        let right = self.grow(r);
        self.nodes[id] = Node::Split {
            feature,
            threshold,
            left,
            right,
        };
        id
    }

    /// Draws features in random order, evaluating `max_features` of them and
    /// continuing past that only while no candidate has yielded a valid split.
    fn best_split(&mut self, idx: &[usize], pos: usize) -> Option<(usize, f64)> {
        let d = self.x[0].len();
        let mut features: Vec<usize> = (0..d).collect();
        features.shuffle(&mut self.rng);
        let mut best: Option<(Impurity, usize, f64)> = None;
        let mut start = 0;
        while start < d && best.is_none() {
            let end = if start == 0 { self.max_features.min(d) } else { start + 1 };
            let mut batch = features[start..end].to_vec();
            batch.sort_unstable();
            for f in batch {
                if let Some((imp, thr)) = best_threshold(self.x, self.y, idx, pos, f) {
                    let better = match best {
                        None => true,
                        Some((bi, bf, bt)) => imp.less_than(bi) || (imp.equals(bi) && (f, thr) < (bf, bt)),
                    };
                    if better {
                        best = Some((imp, f, thr));
                    }
                }
            }
            start = end;
        }
        best.map(|(_, f, t)| (f, t))
    }
}

/// Lowest weighted child impurity over midpoints between distinct values of
/// feature `f`; the first (lowest) threshold wins ties.
fn best_threshold(x: &[Vec<f64>], y: &[bool], idx: &[usize], pos: usize, f: usize) -> Option<(Impurity, f64)> {
    let mut sorted: Vec<(f64, bool)> = idx.iter().map(|&i| (x[i][f], y[i])).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = sorted.len();
    let mut best: Option<(Impurity, f64)> = None;
    let mut left_pos = 0;
    for k in 1..n {
        if sorted[k - 1].1 {
            left_pos += 1;
        }
        if sorted[k - 1].0 == sorted[k].0 {
            continue;
        }
        let imp = Impurity::of_split(left_pos, k, pos, n);
        if best.is_none_or(|(b, _)| imp.less_than(b)) {
            best = Some((imp, (sorted[k - 1].0 + sorted[k].0) / 2.0));
        }
    }
    best
}

impl Tree {
    /// Grows on the given sample indices (duplicates allowed) until nodes
    /// are pure or hold fewer than two samples.
    pub fn fit(x: &[Vec<f64>], y: &[bool], sample: Vec<usize>, max_features: usize, seed: u64) -> Self {
        let mut g = Grower {
            x,
            y,
            max_features: max_features.max(1),
            rng: ChaCha8Rng::seed_from_u64(seed),
            nodes: Vec::new(),
        };
        g.grow(sample);
        Tree { nodes: g.nodes }
    }

    pub fn leaf(&self, row: &[f64]) -> (u32, u32) {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { positive, total } => return (*positive, *total),
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => at = if row[*feature] <= *threshold { *left } else { *right },
            }
        }
    }

    /// Majority class of the reached leaf; an evenly split leaf votes needs-code.
    pub fn vote(&self, row: &[f64]) -> bool {
        let (p, n) = self.leaf(row);
        2 * p >= n
    }

    pub fn depth(&self) -> usize {
        fn go(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(nodes, *left).max(go(nodes, *right)),
            }
        }
        go(&self.nodes, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    pub trees: Vec<Tree>,
}

impl RandomForest {
    /// Tree `i` draws its bootstrap sample and split candidates from seed
    /// `seed + i`.
    pub fn fit(
        x: &[Vec<f64>],
        y: &[bool],
        n_trees: usize,
        max_features: Option<usize>,
        bootstrap: bool,
        seed: u64,
    ) -> Self {
        let d = x[0].len();
        let mtry = max_features.unwrap_or_else(|| (d as f64).sqrt().floor() as usize).clamp(1, d.max(1));
        let trees = (0..n_trees)
            .into_par_iter()
            .map(|t| {
                let tree_seed = seed.wrapping_add(t as u64);
                let sample = if bootstrap {
                    let mut rng = ChaCha8Rng::seed_from_u64(tree_seed ^ 0x9e37_79b9_7f4a_7c15);
                    (0..x.len()).map(|_| rng.gen_range(0..x.len())).collect()
                } else {
                    (0..x.len()).collect()
                };
                Tree::fit(x, y, sample, mtry, tree_seed)
            })
            .collect();
        Self { trees }
    }

    /// Fraction of trees voting needs-code.
    pub fn score(&self, row: &[f64]) -> f64 {
        self.trees.iter().filter(|t| t.vote(row)).count() as f64 / self.trees.len() as f64
    }
}
