//! Black-partitioned maps and star thorn trees.
//!
//! Orientation conventions used throughout:
//!
//! - White root slots are stored left to right. Turning counter-clockwise
//!   around the root moves one slot to the left, wrapping from the leftmost
//!   slot to the rightmost one.
//! - Black vertices are indexed by the left-to-right order of their edges on
//!   the root, so the leftmost edge (when there is one) belongs to vertex 0.
//! - Black thorns are stored counter-clockwise, starting right after the
//!   vertex's edge. The clockwise reading runs the other way and ends with
//!   the edge; see [`StarThornTree::counter_clockwise`] and
//!   [`StarThornTree::clockwise_reading`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::oracle::Budget;
use crate::permutation::next_permutation;
use crate::{Error, Partition, Permutation, Result, SetPartition};

// ---------------------------------------------------------------------------
// Black-partitioned maps
// ---------------------------------------------------------------------------

/// A rooted unicellular map given by `β`, with `α = (1 2 … n)·β⁻¹`, and a set
/// partition `π` of the black half-edges coarser than the orbits of `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlackPartitionedStarMap {
    beta: Permutation,
    pi: SetPartition,
    alpha: Permutation,
}

impl BlackPartitionedStarMap {
    pub fn new(beta: Permutation, pi: SetPartition) -> Result<Self> {
        let n = beta.len();
        if pi.n() != n {
            return Err(Error::SizeMismatch {
                left: n,
                right: pi.n(),
            });
        }
        let block = pi.block_index();
        for cycle in beta.cycles() {
            let first = block[cycle[0]];
            if let Some(&other) = cycle.iter().find(|&&x| block[x] != first) {
                let shown: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
                return Err(Error::NotCoarser {
                    cycle: format!("({})", shown.join(" ")),
                    first,
                    second: block[other],
                });
            }
        }
        let alpha = Permutation::long_cycle(n)?.compose(&beta.inverse())?;
        Ok(BlackPartitionedStarMap { beta, pi, alpha })
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn pi(&self) -> &SetPartition {
        &self.pi
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// True iff the map has a single white vertex, i.e. `α` is a long cycle.
    pub fn is_star(&self) -> bool {
        self.alpha.is_long_cycle()
    }

    /// Block sizes of `π`.
    pub fn type_of(&self) -> Partition {
        self.pi.type_of()
    }

    /// Every black-partitioned star map of type `λ`.
    pub fn all_star_of_type(lam: &Partition, budget: &Budget) -> Result<Vec<Self>> {
        let n = lam.size();
        budget.check_pairs(n)?;
        let mut out = Vec::new();
        for pi in SetPartition::all_of_type(lam) {
            for beta in pi.permutations_within() {
                let map = Self::new(beta, pi.clone())?;
                if map.is_star() {
                    out.push(map);
                }
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Star thorn trees
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Edge,
    Thorn,
}

/// An element on the black side: a vertex's edge, or its `i`-th thorn in
/// counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlackElem {
    Edge(usize),
    Thorn(usize, usize),
}

impl BlackElem {
    pub fn vertex(self) -> usize {
        match self {
            BlackElem::Edge(b) | BlackElem::Thorn(b, _) => b,
        }
    }
}

/// Ordered star thorn tree: a white root with `n` slots, `p` of which are
/// edges to black vertices and the rest thorns; black vertex `b` carries
/// `thorns[b]` thorns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarThornTree {
    white: Vec<Slot>,
    thorns: Vec<usize>,
    edge_slot: Vec<usize>,
    slot_black: Vec<Option<usize>>,
    slot_thorn: Vec<Option<usize>>,
}

impl StarThornTree {
    pub fn new(white: Vec<Slot>, thorns: Vec<usize>) -> Result<Self> {
        let n = white.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty white vertex".into()));
        }
        let mut edge_slot = Vec::new();
        let mut slot_black = vec![None; n];
        let mut slot_thorn = vec![None; n];
        let mut white_thorns = 0;
        for (s, slot) in white.iter().enumerate() {
            match slot {
                Slot::Edge => {
                    slot_black[s] = Some(edge_slot.len());
                    edge_slot.push(s);
                }
                Slot::Thorn => {
                    slot_thorn[s] = Some(white_thorns);
                    white_thorns += 1;
                }
            }
        }
        if edge_slot.len() != thorns.len() {
            return Err(Error::InvalidTree(format!(
                "{} edges on the root but {} black vertices",
                edge_slot.len(),
                thorns.len()
            )));
        }
        let black_thorns: usize = thorns.iter().sum();
        if black_thorns != white_thorns {
            return Err(Error::InvalidTree(format!(
                "{white_thorns} white thorns but {black_thorns} black thorns"
            )));
        }
        Ok(StarThornTree {
            white,
            thorns,
            edge_slot,
            slot_black,
            slot_thorn,
        })
    }

    /// The tree with one black vertex of degree `n` whose edge sits at
    /// `edge_at`.
    pub fn single_vertex(n: usize, edge_at: usize) -> Result<Self> {
        if edge_at >= n {
            return Err(Error::InvalidCoordinates(format!(
                "edge slot {edge_at} outside 0..{n}"
            )));
        }
        let white = (0..n)
            .map(|s| {
                if s == edge_at {
                    Slot::Edge
                } else {
                    Slot::Thorn
                }
            })
            .collect();
        Self::new(white, vec![n - 1])
    }

    pub fn n(&self) -> usize {
        self.white.len()
    }

    /// Number of black vertices.
    pub fn p(&self) -> usize {
        self.thorns.len()
    }

    pub fn white(&self) -> &[Slot] {
        &self.white
    }

    pub fn thorn_counts(&self) -> &[usize] {
        &self.thorns
    }

    pub fn degree(&self, b: usize) -> usize {
        self.thorns[b] + 1
    }

    pub fn edge_slot(&self, b: usize) -> usize {
        self.edge_slot[b]
    }

    /// Black vertex attached at slot `s`, if the slot is an edge.
    pub fn black_at(&self, s: usize) -> Option<usize> {
        self.slot_black[s]
    }

    /// Ordinal of slot `s` among the white thorns, if it is a thorn.
    pub fn thorn_ordinal(&self, s: usize) -> Option<usize> {
        self.slot_thorn[s]
    }

    /// Sorted black degrees.
    pub fn type_of(&self) -> Partition {
        Partition::from_unsorted(self.thorns.iter().map(|t| t + 1).collect())
            .expect("degrees are positive")
    }

    /// Property (P1): the leftmost root slot is an edge.
    pub fn has_p1(&self) -> bool {
        self.white[0] == Slot::Edge
    }

    /// Elements around `b` counter-clockwise: the edge, then the thorns.
    pub fn counter_clockwise(&self, b: usize) -> impl Iterator<Item = BlackElem> {
        std::iter::once(BlackElem::Edge(b))
            .chain((0..self.thorns[b]).map(move |i| BlackElem::Thorn(b, i)))
    }

    /// Elements around `b` clockwise, starting with the thorn right after the
    /// edge and finishing with the edge.
    pub fn clockwise_reading(&self, b: usize) -> impl Iterator<Item = BlackElem> {
        (0..self.thorns[b])
            .rev()
            .map(move |i| BlackElem::Thorn(b, i))
            .chain(std::iter::once(BlackElem::Edge(b)))
    }

    /// Position of `e` in [`Self::clockwise_reading`] of its vertex.
    pub fn clockwise_index(&self, e: BlackElem) -> usize {
        match e {
            BlackElem::Edge(b) => self.thorns[b],
            BlackElem::Thorn(b, i) => self.thorns[b] - 1 - i,
        }
    }

    pub fn contains(&self, e: BlackElem) -> bool {
        match e {
            BlackElem::Edge(b) => b < self.p(),
            BlackElem::Thorn(b, i) => b < self.p() && i < self.thorns[b],
        }
    }

    /// Every star thorn tree of type `λ`: each `p`-subset of root slots for
    /// the edges, with each distinct ordering of the degrees along them.
    pub fn all_of_type(lam: &Partition) -> Vec<StarThornTree> {
        let n = lam.size();
        let p = lam.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut orders = Vec::new();
        let mut degrees: Vec<usize> = lam.parts().to_vec();
        degrees.sort_unstable();
        loop {
            orders.push(degrees.clone());
            if !next_permutation(&mut degrees) {
                break;
            }
        }
        let mut edges: Vec<usize> = (0..p).collect();
        loop {
            let mut white = vec![Slot::Thorn; n];
            for &s in &edges {
                white[s] = Slot::Edge;
            }
            for order in &orders {
                let thorns = order.iter().map(|d| d - 1).collect();
                out.push(StarThornTree::new(white.clone(), thorns).expect("valid by construction"));
            }
            if !advance_subset(&mut edges, n) {
                break;
            }
        }
        out
    }
}

fn advance_subset(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Permuted thorn trees
// ---------------------------------------------------------------------------

/// A star thorn tree with a bijection `σ` from white thorns to black thorns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutedThornTree {
    tree: StarThornTree,
    white_to_black: Vec<Option<(usize, usize)>>,
    black_to_white: Vec<Vec<usize>>,
}

impl PermutedThornTree {
    /// `pairs` lists `(white slot, (black vertex, thorn index))`.
    pub fn new(tree: StarThornTree, pairs: &[(usize, (usize, usize))]) -> Result<Self> {
        let n = tree.n();
        let mut white_to_black = vec![None; n];
        let mut black_to_white: Vec<Vec<Option<usize>>> =
            tree.thorns.iter().map(|&t| vec![None; t]).collect();
        for &(s, (b, i)) in pairs {
            if s >= n || tree.white[s] != Slot::Thorn {
                return Err(Error::InvalidTree(format!(
                    "sigma source {s} is not a white thorn"
                )));
            }
            if b >= tree.p() || i >= tree.thorns[b] {
                return Err(Error::InvalidTree(format!(
                    "sigma target ({b}, {i}) is not a black thorn"
                )));
            }
            if white_to_black[s].replace((b, i)).is_some() {
                return Err(Error::InvalidTree(format!("white thorn {s} paired twice")));
            }
            if black_to_white[b][i].replace(s).is_some() {
                return Err(Error::InvalidTree(format!(
                    "black thorn ({b}, {i}) paired twice"
                )));
            }
        }
        let white_thorns = tree.white.iter().filter(|&&s| s == Slot::Thorn).count();
        if pairs.len() != white_thorns {
            return Err(Error::InvalidTree(format!(
                "sigma pairs {} of {white_thorns} thorns",
                pairs.len()
            )));
        }
        let black_to_white = black_to_white
            .into_iter()
            .map(|v| v.into_iter().map(|s| s.expect("all paired")).collect())
            .collect();
        Ok(PermutedThornTree {
            tree,
            white_to_black,
            black_to_white,
        })
    }

    pub fn tree(&self) -> &StarThornTree {
        &self.tree
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn p(&self) -> usize {
        self.tree.p()
    }

    pub fn type_of(&self) -> Partition {
        self.tree.type_of()
    }

    pub fn has_p1(&self) -> bool {
        self.tree.has_p1()
    }

    /// `σ` as sorted `(white slot, (vertex, thorn))` pairs.
    pub fn sigma(&self) -> Vec<(usize, (usize, usize))> {
        self.white_to_black
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t)))
            .collect()
    }

    /// The black element sharing a label with root slot `s`: the edge
    /// itself, or `σ` of the thorn.
    pub fn black_partner(&self, s: usize) -> BlackElem {
        match self.tree.white[s] {
            Slot::Edge => BlackElem::Edge(self.tree.slot_black[s].expect("edge slot")),
            Slot::Thorn => {
                let (b, i) = self.white_to_black[s].expect("thorn is paired");
                BlackElem::Thorn(b, i)
            }
        }
    }

    /// Root slot sharing a label with `e`.
    pub fn white_partner(&self, e: BlackElem) -> usize {
        match e {
            BlackElem::Edge(b) => self.tree.edge_slot[b],
            BlackElem::Thorn(b, i) => self.black_to_white[b][i],
        }
    }

    /// Every permuted thorn tree of type `λ`, each exactly once.
    pub fn all_of_type(
        lam: &Partition,
        budget: &Budget,
    ) -> Result<impl Iterator<Item = PermutedThornTree>> {
        budget.check_pairs(lam.size())?;
        let free = lam.size() - lam.len();
        Ok(StarThornTree::all_of_type(lam)
            .into_iter()
            .flat_map(move |tree| {
                let white_thorns: Vec<usize> = (0..tree.n())
                    .filter(|&s| tree.white[s] == Slot::Thorn)
                    .collect();
                let black_thorns: Vec<(usize, usize)> = (0..tree.p())
                    .flat_map(|b| (0..tree.thorns[b]).map(move |i| (b, i)))
                    .collect();
                let perms: Box<dyn Iterator<Item = Permutation>> = if free == 0 {
                    Box::new(std::iter::once(Permutation::identity(0)))
                } else {
                    Box::new(Permutation::all(free))
                };
                perms.map(move |sigma| {
                    let pairs: Vec<_> = white_thorns
                        .iter()
                        .enumerate()
                        .map(|(k, &s)| {
                            (s, black_thorns[sigma.images().get(k).copied().unwrap_or(0)])
                        })
                        .collect();
                    PermutedThornTree::new(tree.clone(), &pairs).expect("valid by construction")
                })
            }))
    }

    /// Adds a white thorn and a black thorn paired with each other.
    pub fn lift(&self, site: LiftSite) -> Result<PermutedThornTree> {
        let n = self.n();
        if site.white_pos > n
            || site.black >= self.p()
            || site.thorn_pos > self.tree.thorns[site.black]
        {
            return Err(Error::InvalidCoordinates(format!(
                "{site:?} on a tree of size {n}"
            )));
        }
        let mut draft = Draft::from_tree(self);
        let pair = draft.fresh_pair();
        draft.white.insert(site.white_pos, DraftSlot::Thorn(pair));
        draft.vertices[site.black].insert(site.thorn_pos, pair);
        Ok(draft.into_tree().0)
    }

    /// Removes the black thorn `(b, i)` and its white partner; the inverse of
    /// [`Self::lift`].
    pub fn drop_thorn(&self, b: usize, i: usize) -> Result<(PermutedThornTree, LiftSite)> {
        if !self.tree.contains(BlackElem::Thorn(b, i)) {
            return Err(Error::InvalidCoordinates(format!(
                "no black thorn ({b}, {i})"
            )));
        }
        let s = self.black_to_white[b][i];
        let mut draft = Draft::from_tree(self);
        draft.white.remove(s);
        draft.vertices[b].remove(i);
        let site = LiftSite {
            white_pos: s,
            black: b,
            thorn_pos: i,
        };
        Ok((draft.into_tree().0, site))
    }

    /// All lift sites on vertices of degree `i` (or all vertices if `None`).
    pub fn lift_sites(&self, degree: Option<usize>) -> Vec<LiftSite> {
        let mut out = Vec::new();
        for b in 0..self.p() {
            if degree.is_some_and(|d| d != self.tree.degree(b)) {
                continue;
            }
            for white_pos in 0..=self.n() {
                for thorn_pos in 0..=self.tree.thorns[b] {
                    out.push(LiftSite {
                        white_pos,
                        black: b,
                        thorn_pos,
                    });
                }
            }
        }
        out
    }
}

/// Where [`PermutedThornTree::lift`] inserts: a white insertion index in
/// `0..=n`, a black vertex, and an insertion index among its thorns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LiftSite {
    pub white_pos: usize,
    pub black: usize,
    pub thorn_pos: usize,
}

// ---------------------------------------------------------------------------
// Editable form
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DraftSlot {
    Edge(usize),
    Thorn(usize),
}

/// Mutable working copy of a permuted tree: vertices have stable ids, and
/// each thorn pair has an id shared by its white and black ends.
#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub white: Vec<DraftSlot>,
    /// Thorn pair ids per vertex in counter-clockwise order. A vertex whose
    /// edge no longer appears on the root is simply dropped.
    pub vertices: Vec<Vec<usize>>,
    next_pair: usize,
}

impl Draft {
    pub fn from_tree(t: &PermutedThornTree) -> Self {
        let n = t.n();
        // Pair ids are the white slot indices of the thorns.
        let white = (0..n)
            .map(|s| match t.tree.white[s] {
                Slot::Edge => DraftSlot::Edge(t.tree.slot_black[s].expect("edge")),
                Slot::Thorn => DraftSlot::Thorn(s),
            })
            .collect();
        Draft {
            white,
            vertices: t.black_to_white.clone(),
            next_pair: n,
        }
    }

    pub fn fresh_pair(&mut self) -> usize {
        self.next_pair += 1;
        self.next_pair - 1
    }

    pub fn add_vertex(&mut self, thorns: Vec<usize>) -> usize {
        self.vertices.push(thorns);
        self.vertices.len() - 1
    }

    /// Canonical tree plus the map from vertex ids to black indices.
    pub fn into_tree(self) -> (PermutedThornTree, HashMap<usize, usize>) {
        let mut index = HashMap::new();
        let mut white = Vec::with_capacity(self.white.len());
        let mut pair_slot = HashMap::new();
        for (s, slot) in self.white.iter().enumerate() {
            match *slot {
                DraftSlot::Edge(v) => {
                    let b = index.len();
                    index.insert(v, b);
                    white.push(Slot::Edge);
                }
                DraftSlot::Thorn(pair) => {
                    pair_slot.insert(pair, s);
                    white.push(Slot::Thorn);
                }
            }
        }
        let mut by_index: Vec<(usize, usize)> = index.iter().map(|(&v, &b)| (b, v)).collect();
        by_index.sort_unstable();
        let thorns: Vec<usize> = by_index
            .iter()
            .map(|&(_, v)| self.vertices[v].len())
            .collect();
        let mut pairs = Vec::new();
        for &(b, v) in &by_index {
            for (i, pair) in self.vertices[v].iter().enumerate() {
                pairs.push((pair_slot[pair], (b, i)));
            }
        }
        let tree = StarThornTree::new(white, thorns).expect("draft keeps counts consistent");
        let permuted = PermutedThornTree::new(tree, &pairs).expect("draft keeps pairs consistent");
        (permuted, index)
    }
}

// ---------------------------------------------------------------------------
// Labeled thorn trees
// ---------------------------------------------------------------------------

/// A star thorn tree whose root slots and black elements all carry labels
/// `1..=n`, each label once per side. An edge has the same label at both
/// ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledThornTree {
    tree: StarThornTree,
    white_labels: Vec<usize>,
    /// Per black vertex: edge label first, then thorn labels counter-clockwise.
    black_labels: Vec<Vec<usize>>,
}

impl LabeledThornTree {
    pub fn new(
        tree: StarThornTree,
        white_labels: Vec<usize>,
        black_labels: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = tree.n();
        let bad = |m: String| Err(Error::InvalidTree(m));
        if white_labels.len() != n {
            return bad(format!("{} white labels for {n} slots", white_labels.len()));
        }
        if !is_labeling(&white_labels, n) {
            return bad("white labels are not a permutation of 1..=n".into());
        }
        if white_labels[n - 1] != 1 {
            return bad("rightmost root slot must carry label 1".into());
        }
        if black_labels.len() != tree.p() {
            return bad(format!(
                "{} black label lists for {} vertices",
                black_labels.len(),
                tree.p()
            ));
        }
        for (b, labels) in black_labels.iter().enumerate() {
            if labels.len() != tree.degree(b) {
                return bad(format!(
                    "vertex {b} has degree {} but {} labels",
                    tree.degree(b),
                    labels.len()
                ));
            }
            if labels[0] != white_labels[tree.edge_slot(b)] {
                return bad(format!(
                    "edge of vertex {b} has different labels at its ends"
                ));
            }
        }
        let flat: Vec<usize> = black_labels.iter().flatten().copied().collect();
        if !is_labeling(&flat, n) {
            return bad("black labels are not a permutation of 1..=n".into());
        }
        Ok(LabeledThornTree {
            tree,
            white_labels,
            black_labels,
        })
    }

    pub fn tree(&self) -> &StarThornTree {
        &self.tree
    }

    pub fn white_labels(&self) -> &[usize] {
        &self.white_labels
    }

    pub fn black_labels(&self) -> &[Vec<usize>] {
        &self.black_labels
    }

    pub fn label_of(&self, e: BlackElem) -> usize {
        match e {
            BlackElem::Edge(b) => self.black_labels[b][0],
            BlackElem::Thorn(b, i) => self.black_labels[b][i + 1],
        }
    }

    /// Labels around `b` in clockwise reading order (edge last).
    pub fn clockwise_labels(&self, b: usize) -> Vec<usize> {
        self.tree
            .clockwise_reading(b)
            .map(|e| self.label_of(e))
            .collect()
    }

    /// Forgets the labels, keeping `σ` as the pairing of equal labels.
    pub fn to_permuted(&self) -> PermutedThornTree {
        let mut position = HashMap::new();
        for b in 0..self.tree.p() {
            for i in 0..self.tree.thorns[b] {
                position.insert(self.black_labels[b][i + 1], (b, i));
            }
        }
        let pairs: Vec<_> = (0..self.tree.n())
            .filter(|&s| self.tree.white[s] == Slot::Thorn)
            .map(|s| (s, position[&self.white_labels[s]]))
            .collect();
        PermutedThornTree::new(self.tree.clone(), &pairs).expect("labels pair thorns bijectively")
    }

    /// Reads the map back: `β` from the left-to-right maxima of each
    /// vertex's clockwise reading, `π` from the vertices.
    pub fn to_map(&self) -> Result<BlackPartitionedStarMap> {
        let n = self.tree.n();
        let mut beta = vec![usize::MAX; n];
        let mut blocks = Vec::with_capacity(self.tree.p());
        for b in 0..self.tree.p() {
            let reading = self.clockwise_labels(b);
            let mut starts = Vec::new();
            let mut best = 0;
            for (idx, &x) in reading.iter().enumerate() {
                if x > best {
                    best = x;
                    starts.push(idx);
                }
            }
            starts.push(reading.len());
            // A cycle read clockwise is (max, β⁻¹(max), β⁻²(max), …).
            for w in starts.windows(2) {
                let seg = &reading[w[0]..w[1]];
                for t in 1..seg.len() {
                    beta[seg[t] - 1] = seg[t - 1] - 1;
                }
                beta[seg[0] - 1] = seg[seg.len() - 1] - 1;
            }
            blocks.push(reading.iter().map(|x| x - 1).collect());
        }
        let beta = Permutation::from_images(beta)?;
        BlackPartitionedStarMap::new(beta, SetPartition::new(n, blocks)?)
    }
}

fn is_labeling(labels: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n + 1];
    labels.len() == n
        && labels
            .iter()
            .all(|&x| x >= 1 && x <= n && !std::mem::replace(&mut seen[x], true))
}

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum WhiteWire {
    Edge(usize),
    Thorn(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlackWire {
    thorns: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeWire {
    n: usize,
    white: Vec<WhiteWire>,
    blacks: Vec<BlackWire>,
    sigma: Vec<(usize, (usize, usize))>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabeledWire {
    n: usize,
    white: Vec<WhiteWire>,
    blacks: Vec<BlackWire>,
    white_labels: Vec<usize>,
    black_labels: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapWire {
    n: usize,
    beta: Vec<usize>,
    pi: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<usize>>,
}

fn white_wire(tree: &StarThornTree) -> Vec<WhiteWire> {
    (0..tree.n())
        .map(|s| match tree.white[s] {
            Slot::Edge => WhiteWire::Edge(tree.slot_black[s].expect("edge")),
            Slot::Thorn => WhiteWire::Thorn(tree.slot_thorn[s].expect("thorn")),
        })
        .collect()
}

fn tree_from_wire(n: usize, white: &[WhiteWire], blacks: &[BlackWire]) -> Result<StarThornTree> {
    if white.len() != n {
        return Err(Error::InvalidTree(format!(
            "n = {n} but {} white slots",
            white.len()
        )));
    }
    let mut edges = 0;
    let mut thorns = 0;
    let mut slots = Vec::with_capacity(n);
    for w in white {
        match *w {
            WhiteWire::Edge(b) => {
                if b != edges {
                    return Err(Error::InvalidTree(format!(
                        "edge indices must follow root order: expected {edges}, found {b}"
                    )));
                }
                edges += 1;
                slots.push(Slot::Edge);
            }
            WhiteWire::Thorn(k) => {
                if k != thorns {
                    return Err(Error::InvalidTree(format!(
                        "thorn ordinals must follow root order: expected {thorns}, found {k}"
                    )));
                }
                thorns += 1;
                slots.push(Slot::Thorn);
            }
        }
    }
    StarThornTree::new(slots, blacks.iter().map(|b| b.thorns).collect())
}

/// Objects with a byte-stable JSON form.
pub trait Canonical: Sized {
    fn to_canonical(&self) -> String;
    fn from_canonical(text: &str) -> Result<Self>;
}

impl Canonical for PermutedThornTree {
    fn to_canonical(&self) -> String {
        let wire = TreeWire {
            n: self.n(),
            white: white_wire(&self.tree),
            blacks: self
                .tree
                .thorns
                .iter()
                .map(|&t| BlackWire { thorns: t })
                .collect(),
            sigma: self.sigma(),
        };
        serde_json::to_string(&wire).expect("serializable")
    }

    fn from_canonical(text: &str) -> Result<Self> {
        let wire: TreeWire = serde_json::from_str(text)?;
        let tree = tree_from_wire(wire.n, &wire.white, &wire.blacks)?;
        PermutedThornTree::new(tree, &wire.sigma)
    }
}

impl Canonical for LabeledThornTree {
    fn to_canonical(&self) -> String {
        let wire = LabeledWire {
            n: self.tree.n(),
            white: white_wire(&self.tree),
            blacks: self
                .tree
                .thorns
                .iter()
                .map(|&t| BlackWire { thorns: t })
                .collect(),
            white_labels: self.white_labels.clone(),
            black_labels: self.black_labels.clone(),
        };
        serde_json::to_string(&wire).expect("serializable")
    }

    fn from_canonical(text: &str) -> Result<Self> {
        let wire: LabeledWire = serde_json::from_str(text)?;
        let tree = tree_from_wire(wire.n, &wire.white, &wire.blacks)?;
        LabeledThornTree::new(tree, wire.white_labels, wire.black_labels)
    }
}

impl Canonical for BlackPartitionedStarMap {
    fn to_canonical(&self) -> String {
        let wire = MapWire {
            n: self.n(),
            beta: self.beta.one_based_images(),
            pi: self.pi.one_based_blocks(),
            alpha: Some(self.alpha.one_based_images()),
        };
        serde_json::to_string(&wire).expect("serializable")
    }

    fn from_canonical(text: &str) -> Result<Self> {
        let wire: MapWire = serde_json::from_str(text)?;
        if wire.beta.len() != wire.n {
            return Err(Error::SizeMismatch {
                left: wire.n,
                right: wire.beta.len(),
            });
        }
        let beta = Permutation::from_one_based(&wire.beta)?;
        let pi = SetPartition::from_one_based(wire.n, &wire.pi)?;
        let map = BlackPartitionedStarMap::new(beta, pi)?;
        if let Some(alpha) = wire.alpha {
            if alpha != map.alpha.one_based_images() {
                return Err(Error::InvalidPermutation(
                    "alpha does not equal (1 2 … n)·beta⁻¹".into(),
                ));
            }
        }
        Ok(map)
    }
}

/// Any object accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyObject {
    Map(BlackPartitionedStarMap),
    Tree(PermutedThornTree),
    Labeled(LabeledThornTree),
}

impl AnyObject {
    /// Dispatches on the keys present: `beta` for maps, `sigma` for permuted
    /// trees, `white_labels` for labeled trees.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let has = |k: &str| value.get(k).is_some();
        if has("beta") {
            Ok(AnyObject::Map(BlackPartitionedStarMap::from_canonical(
                text,
            )?))
        } else if has("sigma") {
            Ok(AnyObject::Tree(PermutedThornTree::from_canonical(text)?))
        } else if has("white_labels") {
            Ok(AnyObject::Labeled(LabeledThornTree::from_canonical(text)?))
        } else {
            Err(Error::Parse {
                line: 1,
                column: 1,
                message: "expected a map (beta, pi), a permuted tree (sigma) or a labeled tree (white_labels)".into(),
            })
        }
    }

    pub fn to_canonical(&self) -> String {
        match self {
            AnyObject::Map(m) => m.to_canonical(),
            AnyObject::Tree(t) => t.to_canonical(),
            AnyObject::Labeled(t) => t.to_canonical(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_st;
    use num_bigint::BigUint;

    fn example_map() -> BlackPartitionedStarMap {
        let beta = Permutation::from_cycles(7, &[&[2, 5], &[3, 7]]).unwrap();
        let pi = SetPartition::from_one_based(7, &[vec![1, 3, 6, 7], vec![2, 5], vec![4]]).unwrap();
        BlackPartitionedStarMap::new(beta, pi).unwrap()
    }

    #[test]
    fn example_map_is_a_star() {
        let m = example_map();
        assert_eq!(m.alpha().to_string(), "(1 2 6 7 4 5 3)");
        assert!(m.is_star());
        assert_eq!(m.type_of().parts(), &[4, 2, 1]);
    }

    #[test]
    fn trivial_and_rejected_maps() {
        let m = BlackPartitionedStarMap::new(Permutation::identity(3), SetPartition::singletons(3))
            .unwrap();
        assert_eq!(m.alpha().to_string(), "(1 2 3)");
        assert!(m.is_star());
        let split = BlackPartitionedStarMap::new(
            Permutation::from_cycles(3, &[&[1, 2]]).unwrap(),
            SetPartition::singletons(3),
        );
        assert!(matches!(split, Err(Error::NotCoarser { .. })));
    }

    #[test]
    fn single_vertex_tree_type() {
        let t = StarThornTree::single_vertex(5, 2).unwrap();
        assert_eq!(t.type_of(), Partition::row(5));
        assert!(!t.has_p1());
    }

    #[test]
    fn orientation_helpers() {
        let t = StarThornTree::new(vec![Slot::Edge, Slot::Thorn, Slot::Thorn], vec![2]).unwrap();
        let ccw: Vec<_> = t.counter_clockwise(0).collect();
        let cw: Vec<_> = t.clockwise_reading(0).collect();
        assert_eq!(
            ccw,
            [
                BlackElem::Edge(0),
                BlackElem::Thorn(0, 0),
                BlackElem::Thorn(0, 1)
            ]
        );
        assert_eq!(
            cw,
            [
                BlackElem::Thorn(0, 1),
                BlackElem::Thorn(0, 0),
                BlackElem::Edge(0)
            ]
        );
        for (idx, e) in cw.iter().enumerate() {
            assert_eq!(t.clockwise_index(*e), idx);
        }
    }

    #[test]
    fn tree_validation() {
        assert!(StarThornTree::new(vec![Slot::Thorn, Slot::Thorn], vec![1]).is_err());
        assert!(StarThornTree::new(vec![Slot::Edge, Slot::Thorn], vec![0]).is_err());
        assert!(StarThornTree::new(vec![], vec![]).is_err());
        let t = StarThornTree::new(vec![Slot::Edge, Slot::Thorn], vec![1]).unwrap();
        assert!(PermutedThornTree::new(t.clone(), &[]).is_err());
        assert!(PermutedThornTree::new(t.clone(), &[(0, (0, 0))]).is_err());
        assert!(PermutedThornTree::new(t, &[(1, (0, 0))]).is_ok());
    }

    #[test]
    fn permuted_tree_counts() {
        let b = Budget::default();
        let count = |s: &str| {
            PermutedThornTree::all_of_type(&s.parse().unwrap(), &b)
                .unwrap()
                .count()
        };
        assert_eq!(count("1"), 1);
        assert_eq!(count("2,1"), 6);
        assert_eq!(count("2,2"), 12);
        for n in 1..=6 {
            for lam in Partition::all(n) {
                let all: Vec<_> = PermutedThornTree::all_of_type(&lam, &b).unwrap().collect();
                let fact: usize = (1..=n - lam.len()).product();
                assert_eq!(BigUint::from(all.len()), count_st(&lam) * fact);
                let distinct: std::collections::HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
                assert!(all.iter().all(|t| t.type_of() == lam));
            }
        }
    }

    #[test]
    fn lift_then_drop_is_identity() {
        let b = Budget::default();
        for n in 1..=4 {
            for lam in Partition::all(n) {
                for t in PermutedThornTree::all_of_type(&lam, &b).unwrap() {
                    for site in t.lift_sites(None) {
                        let lifted = t.lift(site).unwrap();
                        let i = t.tree().degree(site.black);
                        assert_eq!(lifted.type_of(), lam.up(i).unwrap());
                        let (back, recovered) =
                            lifted.drop_thorn(site.black, site.thorn_pos).unwrap();
                        assert_eq!(back, t);
                        assert_eq!(recovered, site);
                    }
                }
            }
        }
    }

    #[test]
    fn lift_on_row_gives_row() {
        let t = PermutedThornTree::all_of_type(&Partition::row(3), &Budget::default())
            .unwrap()
            .next()
            .unwrap();
        for site in t.lift_sites(None) {
            assert_eq!(t.lift(site).unwrap().type_of(), Partition::row(4));
        }
        assert!(t
            .lift(LiftSite {
                white_pos: 5,
                black: 0,
                thorn_pos: 0
            })
            .is_err());
        assert!(t.drop_thorn(0, 7).is_err());
    }

    #[test]
    fn map_json_roundtrip() {
        let m = example_map();
        let s = m.to_canonical();
        assert_eq!(
            s,
            r#"{"n":7,"beta":[1,5,7,4,2,6,3],"pi":[[1,3,6,7],[2,5],[4]],"alpha":[2,6,1,5,3,7,4]}"#
        );
        let back = BlackPartitionedStarMap::from_canonical(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_canonical(), s);
        let without_alpha = r#"{"n":7,"beta":[1,5,7,4,2,6,3],"pi":[[1,3,6,7],[2,5],[4]]}"#;
        assert_eq!(
            BlackPartitionedStarMap::from_canonical(without_alpha).unwrap(),
            m
        );
    }

    #[test]
    fn tree_json_roundtrip_and_errors() {
        let s = r#"{"n":3,"white":[{"edge":0},{"thorn":0},{"edge":1}],"blacks":[{"thorns":0},{"thorns":1}],"sigma":[[1,[1,0]]]}"#;
        let t = PermutedThornTree::from_canonical(s).unwrap();
        assert_eq!(t.to_canonical(), s);
        match PermutedThornTree::from_canonical("{\"n\":3,\n\"white\":[}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
        let misordered = r#"{"n":2,"white":[{"edge":1},{"edge":0}],"blacks":[{"thorns":0},{"thorns":0}],"sigma":[]}"#;
        assert!(PermutedThornTree::from_canonical(misordered).is_err());
        assert!(matches!(AnyObject::parse(s), Ok(AnyObject::Tree(_))));
        assert!(AnyObject::parse("{}").is_err());
    }

    #[test]
    fn all_star_maps_are_counted() {
        let b = Budget::default();
        let maps = BlackPartitionedStarMap::all_star_of_type(&"2,1".parse().unwrap(), &b).unwrap();
        assert_eq!(maps.len(), 3);
    }
}
