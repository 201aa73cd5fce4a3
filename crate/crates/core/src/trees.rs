//! Trees on ω, the Kleene-Brouwer ordering, and branch search.
//!
//! A tree is presented by its root, a parent map and an ascending child
//! enumeration; lazily generated trees have finite branching. `x ⪯ y` in the
//! tree order means `x` is an ancestor of `y` or equal to it. In the
//! Kleene-Brouwer order descendants precede their ancestors, and of two
//! incomparable nodes the one below the numerically smaller child of their
//! infimum comes first.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinals::LinearOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("{0} is not a node")]
    NotANode(u64),
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error("sequence is not strictly descending at position {0}")]
    NotDescending(usize),
}

pub trait Tree {
    fn root(&self) -> u64;

    fn contains(&self, x: u64) -> bool;

    /// `None` for the root and for non-nodes.
    fn parent(&self, x: u64) -> Option<u64>;

    /// Immediate successors, ascending.
    fn children(&self, x: u64) -> Vec<u64>;

    /// `Pred(x) ∪ {x}`, from the root down.
    fn path(&self, x: u64) -> Vec<u64> {
        let mut out = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent(cur) {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Nodes in breadth-first order, siblings ascending.
    fn nodes(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        let mut queue = VecDeque::from([self.root()]);
        Box::new(std::iter::from_fn(move || {
            let x = queue.pop_front()?;
            queue.extend(self.children(x));
            Some(x)
        }))
    }
}

impl<T: Tree + ?Sized> Tree for &T {
    fn root(&self) -> u64 {
        (**self).root()
    }
    fn contains(&self, x: u64) -> bool {
        (**self).contains(x)
    }
    fn parent(&self, x: u64) -> Option<u64> {
        (**self).parent(x)
    }
    fn children(&self, x: u64) -> Vec<u64> {
        (**self).children(x)
    }
}

fn node<T: Tree + ?Sized>(t: &T, x: u64) -> Result<Vec<u64>, TreeError> {
    if t.contains(x) {
        Ok(t.path(x))
    } else {
        Err(TreeError::NotANode(x))
    }
}

fn common_prefix(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Whether `x` is an ancestor of `y` or equal to it.
pub fn is_ancestor<T: Tree + ?Sized>(t: &T, x: u64, y: u64) -> Result<bool, TreeError> {
    node(t, x)?;
    Ok(node(t, y)?.contains(&x))
}

/// The greatest common ancestor.
pub fn infimum<T: Tree + ?Sized>(t: &T, x: u64, y: u64) -> Result<u64, TreeError> {
    let (px, py) = (node(t, x)?, node(t, y)?);
    Ok(px[common_prefix(&px, &py) - 1])
}

/// `x ≤_KB y`.
pub fn kb_compare<T: Tree + ?Sized>(t: &T, x: u64, y: u64) -> Result<bool, TreeError> {
    let (px, py) = (node(t, x)?, node(t, y)?);
    let k = common_prefix(&px, &py);
    Ok(if k == py.len() {
        true
    } else if k == px.len() {
        false
    } else {
        px[k] < py[k]
    })
}

/// The Kleene-Brouwer order of a tree, enumerated breadth-first.
#[derive(Debug, Clone)]
pub struct KbOrder<T: Tree>(pub T);

impl<T: Tree> LinearOrder for KbOrder<T> {
    type Elem = u64;

    fn contains(&self, x: &u64) -> bool {
        self.0.contains(*x)
    }

    fn leq(&self, x: &u64, y: &u64) -> bool {
        kb_compare(&self.0, *x, *y).unwrap_or(false)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        self.0.nodes()
    }
}

/// `τ_x`: the nodes at or below `x`.
#[derive(Debug, Clone)]
pub struct Subtree<T: Tree> {
    inner: T,
    top: u64,
}

pub fn subtree<T: Tree>(t: T, x: u64) -> Result<Subtree<T>, TreeError> {
    node(&t, x)?;
    Ok(Subtree { inner: t, top: x })
}

impl<T: Tree> Tree for Subtree<T> {
    fn root(&self) -> u64 {
        self.top
    }

    fn contains(&self, x: u64) -> bool {
        self.inner.contains(x) && self.inner.path(x).contains(&self.top)
    }

    fn parent(&self, x: u64) -> Option<u64> {
        if x == self.top || !self.contains(x) {
            None
        } else {
            self.inner.parent(x)
        }
    }

    fn children(&self, x: u64) -> Vec<u64> {
        if self.contains(x) {
            self.inner.children(x)
        } else {
            Vec::new()
        }
    }
}

/// A finite tree given by its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    root: u64,
    parent: BTreeMap<u64, u64>,
    children: BTreeMap<u64, BTreeSet<u64>>,
}

/// JSON form: `{"root": 0, "edges": [[parent, child], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeJson {
    pub root: u64,
    pub edges: Vec<(u64, u64)>,
}

impl FiniteTree {
    pub fn new(root: u64, edges: &[(u64, u64)]) -> Result<Self, TreeError> {
        let mut t = FiniteTree {
            root,
            parent: BTreeMap::new(),
            children: BTreeMap::from([(root, BTreeSet::new())]),
        };
        for &(p, c) in edges {
            if c == root || t.parent.insert(c, p).is_some() {
                return Err(TreeError::Malformed(format!("node {c} has two parents")));
            }
            t.children.entry(p).or_default().insert(c);
            t.children.entry(c).or_default();
        }
        // every node must reach the root
        let mut seen = BTreeSet::from([root]);
        let mut queue = vec![root];
        while let Some(x) = queue.pop() {
            for &c in &t.children[&x] {
                seen.insert(c);
                queue.push(c);
            }
        }
        if seen.len() != t.children.len() {
            return Err(TreeError::Malformed("some node is not below the root".into()));
        }
        Ok(t)
    }

    /// Nodes `0..parents.len()+1` with root 0 and `parents[i-1]` the parent
    /// of node `i`.
    pub fn from_parents(parents: &[u64]) -> Result<Self, TreeError> {
        let edges: Vec<(u64, u64)> = parents.iter().enumerate().map(|(i, &p)| (p, i as u64 + 1)).collect();
        Self::new(0, &edges)
    }

    /// A random tree with `n ≥ 1` nodes labelled by a random permutation of
    /// `0..n`.
    pub fn random(seed: u64, n: usize) -> Self {
        assert!(n >= 1, "a tree has at least one node");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut labels: Vec<u64> = (0..n as u64).collect();
        labels.shuffle(&mut rng);
        let edges: Vec<(u64, u64)> = (1..n).map(|i| (labels[rng.gen_range(0..i)], labels[i])).collect();
        Self::new(labels[0], &edges).expect("recursive trees are trees")
    }

    /// Every tree on nodes `0..n` in which parents have smaller labels.
    pub fn all_recursive(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut parents = vec![0u64; n.saturating_sub(1)];
        loop {
            out.push(Self::from_parents(&parents).expect("recursive trees are trees"));
            let mut i = parents.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if parents[i] < i as u64 {
                    parents[i] += 1;
                    break;
                }
                parents[i] = 0;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            root: self.root,
            edges: self.parent.iter().map(|(&c, &p)| (p, c)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        let j: TreeJson = serde_json::from_str(text).map_err(|e| TreeError::Malformed(e.to_string()))?;
        Self::new(j.root, &j.edges)
    }
}

impl Tree for FiniteTree {
    fn root(&self) -> u64 {
        self.root
    }

    fn contains(&self, x: u64) -> bool {
        self.children.contains_key(&x)
    }

    fn parent(&self, x: u64) -> Option<u64> {
        self.parent.get(&x).copied()
    }

    fn children(&self, x: u64) -> Vec<u64> {
        self.children
            .get(&x)
            .map(|c| c.iter().copied().collect())
            .unwrap_or_default()
    }
}

/// The full binary tree: node `x` has children `2x+1` and `2x+2`, down to
/// depth 62.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullBinary;

const BINARY_LIMIT: u64 = (1 << 62) - 2;

impl Tree for FullBinary {
    fn root(&self) -> u64 {
        0
    }

    fn contains(&self, x: u64) -> bool {
        x <= 2 * BINARY_LIMIT + 2
    }

    fn parent(&self, x: u64) -> Option<u64> {
        (x > 0 && self.contains(x)).then(|| (x - 1) / 2)
    }

    fn children(&self, x: u64) -> Vec<u64> {
        if x <= BINARY_LIMIT {
            vec![2 * x + 1, 2 * x + 2]
        } else {
            Vec::new()
        }
    }
}

/// A comb: spine nodes `2k` with children `2k+1` (a leaf tooth) and `2k+2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Comb;

impl Comb {
    pub fn spine(k: u64) -> u64 {
        2 * k
    }
}

impl Tree for Comb {
    fn root(&self) -> u64 {
        0
    }

    fn contains(&self, _: u64) -> bool {
        true
    }

    fn parent(&self, x: u64) -> Option<u64> {
        match x {
            0 => None,
            x if x % 2 == 1 => Some(x - 1),
            x => Some(x - 2),
        }
    }

    fn children(&self, x: u64) -> Vec<u64> {
        if x.is_multiple_of(2) {
            vec![x + 1, x + 2]
        } else {
            Vec::new()
        }
    }
}

/// A finite tree with an infinite path attached below one of its nodes. The
/// path uses the labels above the finite part: the `k`-th path node is
/// `offset + k`.
#[derive(Debug, Clone)]
pub struct PlantedBranch {
    base: FiniteTree,
    attach: u64,
    offset: u64,
}

impl PlantedBranch {
    pub fn new(base: FiniteTree, attach: u64) -> Result<Self, TreeError> {
        if !base.contains(attach) {
            return Err(TreeError::NotANode(attach));
        }
        let offset = base.children.keys().next_back().map_or(0, |m| m + 1);
        Ok(Self { base, attach, offset })
    }

    pub fn attach_point(&self) -> u64 {
        self.attach
    }

    /// The `k`-th node of the planted path.
    pub fn spine(&self, k: u64) -> u64 {
        self.offset + k
    }

    /// Whether `x` lies on the infinite branch.
    pub fn on_branch(&self, x: u64) -> bool {
        x >= self.offset || self.base.path(self.attach).contains(&x)
    }
}

impl Tree for PlantedBranch {
    fn root(&self) -> u64 {
        self.base.root
    }

    fn contains(&self, x: u64) -> bool {
        x >= self.offset || self.base.contains(x)
    }

    fn parent(&self, x: u64) -> Option<u64> {
        match x {
            x if x == self.offset => Some(self.attach),
            x if x > self.offset => Some(x - 1),
            x => self.base.parent(x),
        }
    }

    fn children(&self, x: u64) -> Vec<u64> {
        if x >= self.offset {
            return vec![x + 1];
        }
        let mut c = self.base.children(x);
        if x == self.attach {
            c.push(self.offset);
        }
        c
    }
}

/// Outcome of a branch search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "chain", rename_all = "snake_case")]
pub enum BranchSearch {
    /// A chain from the root with the requested number of nodes.
    Found(Vec<u64>),
    /// Every branch is shorter.
    Exhausted,
    /// The node budget ran out first.
    BudgetExceeded,
}

/// Depth-first search for a chain of `depth` nodes starting at the root,
/// visiting at most `budget` nodes.
pub fn branch_search<T: Tree + ?Sized>(t: &T, depth: usize, budget: usize) -> BranchSearch {
    assert!(depth >= 1, "depth must be positive");
    let mut visited = 0usize;
    let mut stack = vec![vec![t.root()]];
    while let Some(path) = stack.pop() {
        visited += 1;
        if visited > budget {
            return BranchSearch::BudgetExceeded;
        }
        if path.len() == depth {
            return BranchSearch::Found(path);
        }
        let last = *path.last().expect("paths are nonempty");
        for c in t.children(last).into_iter().rev() {
            let mut p = path.clone();
            p.push(c);
            stack.push(p);
        }
    }
    BranchSearch::Exhausted
}

/// Running infima of the tails of a strictly KB-descending sequence.
pub fn infima_chain<T: Tree + ?Sized>(t: &T, seq: &[u64]) -> Result<Vec<u64>, TreeError> {
    for (i, w) in seq.windows(2).enumerate() {
        if kb_compare(t, w[0], w[1])? {
            return Err(TreeError::NotDescending(i + 1));
        }
    }
    let mut out = vec![0u64; seq.len()];
    let mut acc: Option<u64> = None;
    for i in (0..seq.len()).rev() {
        let b = match acc {
            Some(a) => infimum(t, seq[i], a)?,
            None => node(t, seq[i]).map(|_| seq[i])?,
        };
        out[i] = b;
        acc = Some(b);
    }
    Ok(out)
}

/// Random finite trees with up to `max_nodes` nodes.
pub fn random_trees(seed: u64, count: usize, max_nodes: usize) -> Vec<FiniteTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_nodes);
            FiniteTree::random(rng.gen(), n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::{check_linear_order, wo_probe};

    fn three() -> FiniteTree {
        FiniteTree::new(0, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn three_node_kb_order() {
        let t = three();
        let mut nodes: Vec<u64> = t.nodes().collect();
        nodes.sort_by(|&x, &y| {
            if x == y {
                std::cmp::Ordering::Equal
            } else if kb_compare(&t, x, y).unwrap() {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        assert_eq!(nodes, vec![1, 2, 0]);
        for x in 0..3 {
            assert!(kb_compare(&t, x, x).unwrap());
            assert!(kb_compare(&t, x, 0).unwrap());
        }
        assert_eq!(kb_compare(&t, 0, 7), Err(TreeError::NotANode(7)));
    }

    #[test]
    fn infima() {
        let t = FiniteTree::new(0, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(infimum(&t, 3, 4).unwrap(), 1);
        assert_eq!(infimum(&t, 1, 4).unwrap(), 1);
        assert_eq!(infimum(&t, 0, 4).unwrap(), 0);
        assert_eq!(infimum(&t, 3, 2).unwrap(), 0);
    }

    #[test]
    fn subtrees() {
        let t = FiniteTree::new(0, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let whole: Vec<u64> = subtree(&t, 0).unwrap().nodes().collect();
        assert_eq!(whole, t.nodes().collect::<Vec<_>>());
        assert_eq!(subtree(&t, 3).unwrap().nodes().collect::<Vec<_>>(), vec![3]);
        assert!(subtree(&t, 9).is_err());
    }

    #[test]
    fn branches() {
        assert_eq!(
            branch_search(&FullBinary, 10, 1000),
            BranchSearch::Found((0..10).map(|k| (1 << k) - 1).collect())
        );
        let t = FiniteTree::new(0, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        assert_eq!(branch_search(&t, 4, 100), BranchSearch::Exhausted);
        assert!(matches!(branch_search(&t, 3, 100), BranchSearch::Found(_)));
        // the last node may be a tooth; everything above it is spine
        let BranchSearch::Found(chain) = branch_search(&Comb, 6, 100) else {
            panic!()
        };
        assert_eq!(chain[..5], (0..5).map(Comb::spine).collect::<Vec<_>>()[..]);
        assert_eq!(branch_search(&FullBinary, 60, 10), BranchSearch::BudgetExceeded);
    }

    #[test]
    fn chains_of_infima() {
        let spine: Vec<u64> = (0..6).map(Comb::spine).collect();
        assert_eq!(infima_chain(&Comb, &spine).unwrap(), spine);
        let t = three();
        assert_eq!(infima_chain(&t, &[2, 1]).unwrap(), vec![0, 1]);
        assert_eq!(infima_chain(&t, &[2]).unwrap(), vec![2]);
        assert_eq!(infima_chain(&t, &[1, 2]), Err(TreeError::NotDescending(1)));
    }

    #[test]
    fn kb_is_linear() {
        for n in 1..=5 {
            for t in FiniteTree::all_recursive(n) {
                check_linear_order(&KbOrder(&t), n).unwrap();
            }
        }
        assert_eq!(FiniteTree::all_recursive(5).len(), 24);
        for t in random_trees(3, 20, 25) {
            check_linear_order(&KbOrder(&t), 25).unwrap();
        }
        check_linear_order(&KbOrder(Comb), 60).unwrap();
    }

    #[test]
    fn json_round_trip() {
        let t = FiniteTree::random(9, 12);
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(FiniteTree::from_json(&text).unwrap(), t);
        assert!(FiniteTree::from_json(r#"{"root":0,"edges":[[0,1],[2,1]]}"#).is_err());
        assert!(FiniteTree::from_json(r#"{"root":0,"edges":[[5,1]]}"#).is_err());
    }

    #[test]
    fn planted_branches_are_flagged() {
        let base = FiniteTree::random(5, 20);
        let attach = base.nodes().nth(7).unwrap();
        let t = PlantedBranch::new(base, attach).unwrap();
        let r = wo_probe(&KbOrder(&t), 200, 20);
        assert!(r.suspects.iter().any(|&x| x >= t.spine(0)));
        let deep = t.spine(10_000);
        for x in &r.suspects {
            assert!(kb_compare(&t, deep, *x).unwrap());
        }
        // the final inspected path node has no observed descent below it
        let last = t.nodes().nth(199).unwrap();
        for x in r.wellfounded.iter().filter(|&&x| x != last) {
            assert!(!kb_compare(&t, deep, *x).unwrap());
        }
        let finite = wo_probe(&KbOrder(FiniteTree::random(5, 25)), 200, 20);
        assert!(finite.suspects.is_empty());
    }
}
