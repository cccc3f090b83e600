//! Brute-force reference model: intervals are built by explicit recursion
//! from the raw parameter lists, with child positions from closed-form
//! placement formulas, and compared against the library.

#![allow(dead_code)]

use moran_core::rational::ratio;
use moran_core::{Address, LayoutRule, MoranSet, ParameterSchedule, Rational};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ends,
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct Spec {
    pub n_pre: Vec<u32>,
    pub n_per: Vec<u32>,
    pub r_pre: Vec<Rational>,
    pub r_per: Vec<Rational>,
    pub kind: Kind,
}

/// One level as drawn by a generator: `(n, e, half)` gives
/// `r = 1/(n+e)` or `r = 2/(2(n+e)+1)`.
pub type LevelChoice = (u32, u32, bool);

pub fn level_ratio((n, e, half): LevelChoice) -> Rational {
    if half {
        ratio(2, 2 * (n + e) as i64 + 1)
    } else {
        ratio(1, (n + e) as i64)
    }
}

fn at<T: Clone>(pre: &[T], per: &[T], k: usize) -> T {
    assert!(k >= 1);
    if k <= pre.len() {
        pre[k - 1].clone()
    } else {
        per[(k - pre.len() - 1) % per.len()].clone()
    }
}

impl Spec {
    pub fn from_choices(pre: &[LevelChoice], per: &[LevelChoice], kind: Kind) -> Spec {
        Spec {
            n_pre: pre.iter().map(|c| c.0).collect(),
            n_per: per.iter().map(|c| c.0).collect(),
            r_pre: pre.iter().map(|&c| level_ratio(c)).collect(),
            r_per: per.iter().map(|&c| level_ratio(c)).collect(),
            kind,
        }
    }

    pub fn constant(n: u32, r: Rational, kind: Kind) -> Spec {
        Spec {
            n_pre: vec![],
            n_per: vec![n],
            r_pre: vec![],
            r_per: vec![r],
            kind,
        }
    }

    pub fn n(&self, k: usize) -> u32 {
        at(&self.n_pre, &self.n_per, k)
    }

    pub fn r(&self, k: usize) -> Rational {
        at(&self.r_pre, &self.r_per, k)
    }

    pub fn beta(&self) -> u32 {
        self.n_pre.iter().chain(&self.n_per).copied().max().unwrap()
    }

    /// Left end of child `i` of `[0, 1]` at level `k`.
    pub fn offset(&self, k: usize, i: u32) -> Rational {
        let n = self.n(k);
        let r = self.r(k);
        match self.kind {
            Kind::Ends => ratio(i as i64, 1) * (Rational::one() - &r) / ratio(n as i64 - 1, 1),
            Kind::Left => ratio(i as i64, 1) * r,
            Kind::Right => Rational::one() - ratio((n - i) as i64, 1) * r,
        }
    }

    pub fn build(&self) -> MoranSet {
        let schedule = ParameterSchedule::new(
            self.n_pre.clone(),
            self.n_per.clone(),
            self.r_pre.clone(),
            self.r_per.clone(),
        )
        .expect("valid schedule");
        let layout = match self.kind {
            Kind::Ends => LayoutRule::EndsAnchored,
            Kind::Left => LayoutRule::LeftPacked,
            Kind::Right => LayoutRule::RightPacked,
        };
        MoranSet::new(schedule, layout).expect("valid set")
    }

    pub fn count(&self, k: usize) -> u64 {
        (1..=k).map(|j| self.n(j) as u64).product()
    }

    /// Rank-`k` intervals in lexicographic address order.
    pub fn intervals(&self, k: usize) -> Vec<Node> {
        let mut out = Vec::new();
        self.walk(Vec::new(), Rational::zero(), Rational::one(), k, &mut out);
        out
    }

    fn walk(&self, word: Vec<u32>, left: Rational, len: Rational, k: usize, out: &mut Vec<Node>) {
        if word.len() == k {
            out.push(Node { word, left, len });
            return;
        }
        let level = word.len() + 1;
        let r = self.r(level);
        for i in 0..self.n(level) {
            let mut child = word.clone();
            child.push(i);
            let l = &left + &len * self.offset(level, i);
            self.walk(child, l, &len * &r, k, out);
        }
    }

    /// Free length of a rank-`k-1` parent, measured from its children.
    pub fn measured_gap(&self, k: usize) -> Rational {
        let parent_len: Rational = (1..k).fold(Rational::one(), |acc, j| acc * self.r(j));
        let children = &parent_len * self.r(k) * ratio(self.n(k) as i64, 1);
        parent_len - children
    }

    /// `min Δ_k/Δ_{k+1}` over a prefix long enough to cover the periodic part
    /// several times; `None` when a gap vanishes.
    pub fn gamma(&self) -> Option<Rational> {
        let reach = self.n_pre.len().max(self.r_pre.len()) + 4 * self.n_per.len() * self.r_per.len() + 2;
        let mut best: Option<Rational> = None;
        for k in 1..=reach {
            let a = self.measured_gap(k);
            let b = self.measured_gap(k + 1);
            if a.is_zero() || b.is_zero() {
                return None;
            }
            let q = a / b;
            best = Some(match best {
                Some(v) if v <= q => v,
                _ => q,
            });
        }
        best
    }

    /// Smallest `dist/free` over sibling pairs that do not touch, levels with
    /// free length zero skipped; `None` when nothing constrains it.
    pub fn eta0(&self) -> Option<Rational> {
        let reach = self.n_pre.len().max(self.r_pre.len()) + self.n_per.len() * self.r_per.len();
        let mut best: Option<Rational> = None;
        for k in 1..=reach {
            let n = self.n(k);
            let r = self.r(k);
            let free = Rational::one() - ratio(n as i64, 1) * &r;
            if free.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in i + 1..n {
                    let dist = self.offset(k, j) - (self.offset(k, i) + &r);
                    if dist > Rational::zero() {
                        let q = dist / &free;
                        best = Some(match best {
                            Some(v) if v <= q => v,
                            _ => q,
                        });
                    }
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub word: Vec<u32>,
    pub left: Rational,
    pub len: Rational,
}

impl Node {
    pub fn right(&self) -> Rational {
        &self.left + &self.len
    }

    pub fn address(&self) -> Address {
        Address::new(self.word.clone())
    }
}

/// Touching runs of intervals: `(left, right, member count)`, left to right.
pub fn merge(nodes: &[Node]) -> Vec<(Rational, Rational, usize)> {
    let mut sorted: Vec<&Node> = nodes.iter().collect();
    sorted.sort_by(|a, b| a.left.cmp(&b.left));
    let mut out: Vec<(Rational, Rational, usize)> = Vec::new();
    for node in sorted {
        match out.last_mut() {
            Some(last) if last.1 == node.left => {
                last.1 = node.right();
                last.2 += 1;
            }
            Some(last) => {
                assert!(last.1 < node.left, "overlap");
                out.push((node.left.clone(), node.right(), 1));
            }
            None => out.push((node.left.clone(), node.right(), 1)),
        }
    }
    out
}

/// Source and target words of a section-pairing map.
pub type Pairs = Vec<(Vec<u32>, Vec<u32>)>;

/// Deterministic pseudo-random choices from a seed list.
pub struct Picks<'a> {
    values: &'a [u32],
    at: usize,
}

impl<'a> Picks<'a> {
    pub fn new(values: &'a [u32]) -> Self {
        Picks { values, at: 0 }
    }

    pub fn next(&mut self, bound: usize) -> usize {
        let v = if self.values.is_empty() {
            0
        } else {
            self.values[self.at % self.values.len()]
        };
        self.at += 1;
        v as usize % bound.max(1)
    }
}

/// A complete prefix code from `splits` random leaf expansions, depth <= `max_depth`.
pub fn random_section(spec: &Spec, splits: usize, max_depth: usize, picks: &mut Picks) -> Vec<Vec<u32>> {
    let mut leaves: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..splits {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < max_depth).collect();
        if open.is_empty() {
            break;
        }
        let at = open[picks.next(open.len())];
        let leaf = leaves.remove(at);
        for i in 0..spec.n(leaf.len() + 1) {
            let mut child = leaf.clone();
            child.push(i);
            leaves.push(child);
        }
    }
    leaves.sort();
    leaves
}

pub fn shuffle<T>(items: &mut [T], picks: &mut Picks) {
    for i in (1..items.len()).rev() {
        let j = picks.next(i + 1);
        items.swap(i, j);
    }
}

/// Pairs for a map of `spec` onto itself. Constant schedules pair two
/// independent random sections with equal leaf counts; otherwise all words
/// of one depth are permuted.
pub fn random_pairs(spec: &Spec, picks: &mut Picks) -> Pairs {
    let constant = spec.n_pre.is_empty() && spec.r_pre.is_empty() && spec.n_per.len() == 1 && spec.r_per.len() == 1;
    if constant {
        let splits = 1 + picks.next(4);
        let max_depth = if spec.n(1) == 2 { 3 } else { 2 };
        let source = random_section(spec, splits, max_depth, picks);
        let mut target = random_section(spec, splits, max_depth, picks);
        if source.len() == target.len() {
            shuffle(&mut target, picks);
            return source.into_iter().zip(target).collect();
        }
    }
    let depth = 1 + picks.next(2);
    let words: Vec<Vec<u32>> = spec.intervals(depth).into_iter().map(|n| n.word).collect();
    let mut image = words.clone();
    shuffle(&mut image, picks);
    words.into_iter().zip(image).collect()
}

/// `f(E_σ)` by rewriting: every deep word below `σ` is sent through the
/// unique pair whose source is its prefix.
pub fn image_words(pairs: &[(Vec<u32>, Vec<u32>)], spec: &Spec, sigma: &[u32]) -> Vec<Vec<u32>> {
    let deep = pairs.iter().map(|p| p.0.len()).max().unwrap().max(sigma.len());
    let mut out = Vec::new();
    let mut below = vec![sigma.to_vec()];
    while below[0].len() < deep {
        below = below
            .iter()
            .flat_map(|w| {
                (0..spec.n(w.len() + 1)).map(move |i| {
                    let mut c = w.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    for word in below {
        let hits: Vec<_> = pairs.iter().filter(|p| word.starts_with(&p.0)).collect();
        assert_eq!(hits.len(), 1, "section is not a prefix code at {word:?}");
        let (a, b) = hits[0];
        let mut w = b.clone();
        w.extend_from_slice(&word[a.len()..]);
        out.push(w);
    }
    out.sort();
    out
}

/// Bernoulli mass of a word list (words may have different lengths).
pub fn mass(spec: &Spec, words: &[Vec<u32>]) -> Rational {
    words.iter().map(|w| ratio(1, spec.count(w.len()) as i64)).sum()
}

pub fn to_addresses(pairs: &[(Vec<u32>, Vec<u32>)]) -> Vec<(Address, Address)> {
    pairs
        .iter()
        .map(|(a, b)| (Address::new(a.clone()), Address::new(b.clone())))
        .collect()
}

/// All rank-`depth` words below any of `words`, sorted.
pub fn expand_words(spec: &Spec, words: &[Vec<u32>], depth: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for w in words {
        let mut frontier = vec![w.clone()];
        while frontier.first().is_some_and(|w| w.len() < depth) {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    (0..spec.n(w.len() + 1)).map(move |i| {
                        let mut c = w.clone();
                        c.push(i);
                        c
                    })
                })
                .collect();
        }
        out.extend(frontier);
    }
    out.sort();
    out
}
