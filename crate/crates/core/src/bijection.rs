//! The map ↔ permuted thorn tree correspondence, its inverse procedure, and
//! the auxiliary graph that characterizes the image.

use std::collections::HashMap;

use serde::Serialize;

use crate::oracle::Budget;
use crate::structures::{
    BlackElem, BlackPartitionedStarMap, Draft, DraftSlot, LabeledThornTree, PermutedThornTree,
    Slot, StarThornTree,
};
use crate::{Error, ExactRational, Partition, Permutation, Result, SetPartition};

/// Builds the labeled tree of a star map. White labels read right to left
/// follow the `α`-orbit of 1; each block's vertex hangs from the white slot
/// labeled `β(max of block)`, and carries the block's `β`-cycles by
/// decreasing maximum.
pub fn psi_label(map: &BlackPartitionedStarMap) -> Result<LabeledThornTree> {
    if !map.is_star() {
        return Err(Error::NotStar {
            alpha: map.alpha().to_string(),
        });
    }
    let n = map.n();
    let alpha = map.alpha();
    let beta = map.beta();

    let mut white_labels = vec![0; n];
    let mut slot_of = vec![0; n];
    let mut x = 0;
    for k in 0..n {
        white_labels[n - 1 - k] = x + 1;
        slot_of[x] = n - 1 - k;
        x = alpha.apply(x);
    }

    let block = map.pi().block_index();
    let mut per_block: Vec<Vec<usize>> = vec![Vec::new(); map.pi().blocks().len()];
    // `cycles` lists each cycle as (β(max), β²(max), …, max), by decreasing max.
    for cycle in beta.cycles() {
        per_block[block[cycle[0]]].extend(cycle.iter().map(|c| c + 1));
    }
    let mut vertices: Vec<(usize, Vec<usize>)> = per_block
        .into_iter()
        .map(|labels| (slot_of[labels[0] - 1], labels))
        .collect();
    vertices.sort_unstable_by_key(|v| v.0);

    let mut white = vec![Slot::Thorn; n];
    for (s, _) in &vertices {
        white[*s] = Slot::Edge;
    }
    let thorns = vertices.iter().map(|(_, l)| l.len() - 1).collect();
    let tree = StarThornTree::new(white, thorns)?;
    LabeledThornTree::new(
        tree,
        white_labels,
        vertices.into_iter().map(|v| v.1).collect(),
    )
}

/// [`psi_label`] with the labels forgotten.
pub fn psi(map: &BlackPartitionedStarMap) -> Result<PermutedThornTree> {
    Ok(psi_label(map)?.to_permuted())
}

/// Evidence that the inverse procedure cannot label a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureCertificate {
    /// The label `i` being processed (1-based) when label `i + 1` collided.
    pub step: usize,
    /// The black element chosen as `β(i)`.
    pub chosen: BlackElem,
    /// Root slot of the chosen element.
    pub chosen_slot: usize,
    /// Root slot that was about to receive label `i + 1`.
    pub collided_slot: usize,
    /// The label already sitting there.
    pub collided_label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseOutcome {
    Success {
        map: BlackPartitionedStarMap,
        labeled: LabeledThornTree,
    },
    Failure(FailureCertificate),
}

impl InverseOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, InverseOutcome::Success { .. })
    }

    pub fn to_json(&self) -> String {
        use crate::structures::Canonical;
        let value = match self {
            InverseOutcome::Success { map, labeled } => serde_json::json!({
                "outcome": "success",
                "map": serde_json::from_str::<serde_json::Value>(&map.to_canonical()).expect("valid json"),
                "labeled": serde_json::from_str::<serde_json::Value>(&labeled.to_canonical()).expect("valid json"),
                "alpha": map.alpha().to_string(),
                "beta": map.beta().to_string(),
                "pi": map.pi().to_string(),
            }),
            InverseOutcome::Failure(cert) => serde_json::json!({
                "outcome": "failure",
                "certificate": cert,
            }),
        };
        serde_json::to_string_pretty(&value).expect("serializable")
    }
}

/// Tries to label `t` as the image of a map, assigning labels `1..=n` one at
/// a time.
///
/// Label 1 goes on the rightmost root slot. At step `i`, `β(i)` is read off
/// the clockwise reading of the vertex holding `i`: the element just before
/// the first unlabeled one if that comes before `i` (so `i` is not a
/// left-to-right maximum), otherwise the last labeled element of the vertex,
/// which closes the cycle. Label `i + 1` then goes on the root slot just left
/// of `β(i)`'s partner.
pub fn psi_inverse(t: &PermutedThornTree) -> InverseOutcome {
    let tree = t.tree();
    let n = t.n();
    let p = t.p();
    let readings: Vec<Vec<BlackElem>> = (0..p)
        .map(|b| tree.clockwise_reading(b).collect())
        .collect();
    let mut st = Labeling {
        white: vec![None; n],
        black: HashMap::with_capacity(n),
        at: vec![None; n],
        done: readings.iter().map(|r| vec![false; r.len()]).collect(),
    };
    // First unlabeled position per vertex, advanced lazily.
    let mut frontier = vec![0usize; p];
    st.put(t, n - 1, 0);

    let mut chosen_elem = Vec::with_capacity(n);
    for i in 0..n {
        let e = st.at[i].expect("label i is placed before step i");
        let b = e.vertex();
        let q = tree.clockwise_index(e);
        while frontier[b] < st.done[b].len() && st.done[b][frontier[b]] {
            frontier[b] += 1;
        }
        let chosen = if frontier[b] < q {
            readings[b][q - 1]
        } else {
            readings[b][frontier[b] - 1]
        };
        chosen_elem.push(chosen);
        let w = t.white_partner(chosen);
        let target = (w + n - 1) % n;
        let last = i == n - 1;
        match st.white[target] {
            Some(_) if last && target == n - 1 => {}
            Some(j) => {
                return InverseOutcome::Failure(FailureCertificate {
                    step: i + 1,
                    chosen,
                    chosen_slot: w,
                    collided_slot: target,
                    collided_label: j + 1,
                });
            }
            None => st.put(t, target, i + 1),
        }
    }

    let black_label = st.black;
    let white_labels = st.white;
    let mut beta = vec![0usize; n];
    for i in 0..n {
        beta[i] = black_label[&chosen_elem[i]];
    }
    let beta = Permutation::from_images(beta).expect("a completed labeling gives a bijection");
    let blocks: Vec<Vec<usize>> = (0..p)
        .map(|b| readings[b].iter().map(|e| black_label[e]).collect())
        .collect();
    let pi = SetPartition::new(n, blocks).expect("vertices partition the labels");
    let map = BlackPartitionedStarMap::new(beta, pi).expect("β stays inside vertices");
    let labeled = LabeledThornTree::new(
        tree.clone(),
        white_labels
            .iter()
            .map(|l| l.expect("all placed") + 1)
            .collect(),
        (0..p)
            .map(|b| {
                tree.counter_clockwise(b)
                    .map(|e| black_label[&e] + 1)
                    .collect()
            })
            .collect(),
    )
    .expect("labels are consistent");
    InverseOutcome::Success { map, labeled }
}

struct Labeling {
    white: Vec<Option<usize>>,
    black: HashMap<BlackElem, usize>,
    at: Vec<Option<BlackElem>>,
    done: Vec<Vec<bool>>,
}

impl Labeling {
    /// Puts label `v` (0-based) on root slot `s` and on its black partner.
    fn put(&mut self, t: &PermutedThornTree, s: usize, v: usize) {
        self.white[s] = Some(v);
        let e = t.black_partner(s);
        self.done[e.vertex()][t.tree().clockwise_index(e)] = true;
        self.black.insert(e, v);
        self.at[v] = Some(e);
    }
}

// ---------------------------------------------------------------------------
// Auxiliary graph
// ---------------------------------------------------------------------------

/// Successor graph on black vertices: every vertex except the root points to
/// the vertex holding the element just left of its edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxGraph {
    pub p: usize,
    pub root: usize,
    pub out: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", content = "vertices", rename_all = "lowercase")]
pub enum GraphShape {
    Tree(usize),
    Cycle(Vec<usize>),
}

impl AuxGraph {
    /// `Tree(root)` if every walk reaches the root, else the first cycle
    /// found, listed from its smallest vertex.
    pub fn classify(&self) -> GraphShape {
        // 0 = unvisited, 1 = on the current walk, 2 = known to reach root.
        let mut state = vec![0u8; self.p];
        state[self.root] = 2;
        for start in 0..self.p {
            let mut walk = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = self.out[v].expect("non-root vertices have a successor");
            }
            if state[v] == 1 {
                let from = walk.iter().position(|&w| w == v).expect("v is on the walk");
                let mut cycle = walk[from..].to_vec();
                let m = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &c)| c)
                    .map(|(i, _)| i)
                    .unwrap();
                cycle.rotate_left(m);
                return GraphShape::Cycle(cycle);
            }
            for w in walk {
                state[w] = 2;
            }
        }
        GraphShape::Tree(self.root)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .filter_map(|(v, o)| o.map(|w| (v, w)))
    }
}

pub fn aux_graph(t: &PermutedThornTree) -> Result<AuxGraph> {
    if !t.has_p1() {
        return Err(Error::NoP1);
    }
    let tree = t.tree();
    let root = tree.black_at(0).expect("slot 0 is an edge");
    debug_assert_eq!(root, 0);
    let out = (0..t.p())
        .map(|b| {
            if b == root {
                return None;
            }
            let s = tree.edge_slot(b);
            assert!(s > 0, "only the root vertex sits at the leftmost slot");
            Some(t.black_partner(s - 1).vertex())
        })
        .collect();
    Ok(AuxGraph {
        p: t.p(),
        root,
        out,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "classification", rename_all = "snake_case")]
pub enum Classification {
    NoP1,
    CycleFail { cycle: Vec<usize> },
    Image,
}

pub fn classify(t: &PermutedThornTree) -> Classification {
    match aux_graph(t) {
        Err(_) => Classification::NoP1,
        Ok(g) => match g.classify() {
            GraphShape::Tree(_) => Classification::Image,
            GraphShape::Cycle(cycle) => Classification::CycleFail { cycle },
        },
    }
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

/// Erases the marked vertex `b̄` and its edge, moving its thorns onto its
/// successor `π′` just clockwise of the element that sat left of `b̄`'s edge.
/// Returns the new tree and that element, whose vertex now has degree
/// `j + k − 1`.
pub fn contract(t: &PermutedThornTree, marked: usize) -> Result<(PermutedThornTree, BlackElem)> {
    let g = aux_graph(t)?;
    if marked >= t.p() {
        return Err(Error::InvalidCoordinates(format!(
            "no black vertex {marked}"
        )));
    }
    if marked == g.root {
        return Err(Error::InvalidCoordinates(
            "cannot contract the root vertex".into(),
        ));
    }
    let target = g.out[marked].expect("non-root");
    if target == marked {
        return Err(Error::InvalidCoordinates(format!(
            "vertex {marked} is its own successor"
        )));
    }
    let s = t.tree().edge_slot(marked);
    let left = t.black_partner(s - 1);
    let mut draft = Draft::from_tree(t);
    draft.white.remove(s);
    let moved = std::mem::take(&mut draft.vertices[marked]);
    let shift = moved.len();
    let rest = std::mem::take(&mut draft.vertices[target]);
    draft.vertices[target] = moved.into_iter().chain(rest).collect();
    let (tree, index) = draft.into_tree();
    let nb = index[&target];
    // π′'s own thorns keep their order, after the prepended ones.
    let elem = match left {
        BlackElem::Edge(_) => BlackElem::Edge(nb),
        BlackElem::Thorn(_, i) => BlackElem::Thorn(nb, shift + i),
    };
    Ok((tree, elem))
}

/// Inverse of [`contract`]: splits off the `k − 1` thorns counter-clockwise
/// right after the vertex's edge onto a new vertex of degree `k`, whose edge
/// goes just right of the marked element's root slot. Returns the new tree
/// and the new vertex.
pub fn expand(
    t: &PermutedThornTree,
    mark: BlackElem,
    k: usize,
) -> Result<(PermutedThornTree, usize)> {
    if !t.has_p1() {
        return Err(Error::NoP1);
    }
    if k == 0 || !t.tree().contains(mark) {
        return Err(Error::InvalidCoordinates(format!(
            "cannot expand at {mark:?} with k = {k}"
        )));
    }
    let v = mark.vertex();
    let thorns = t.tree().thorn_counts()[v];
    if thorns + 1 < k {
        return Err(Error::InvalidCoordinates(format!(
            "vertex {v} has degree {} < {k}",
            thorns + 1
        )));
    }
    if let BlackElem::Thorn(_, i) = mark {
        if i < k - 1 {
            return Err(Error::InvalidCoordinates(format!(
                "marked thorn {i} is among the {} thorns that move",
                k - 1
            )));
        }
    }
    let w = t.white_partner(mark);
    let mut draft = Draft::from_tree(t);
    let moved: Vec<usize> = draft.vertices[v].drain(..k - 1).collect();
    let id = draft.add_vertex(moved);
    draft.white.insert(w + 1, DraftSlot::Edge(id));
    let (tree, index) = draft.into_tree();
    Ok((tree, index[&id]))
}

// ---------------------------------------------------------------------------
// Proportions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionStats {
    pub total: u64,
    pub p1: u64,
    pub image: u64,
    /// `image / total`.
    pub p: ExactRational,
    /// `image / p1`.
    pub p_prime: ExactRational,
    /// `p1 / total`.
    pub p1_rate: ExactRational,
}

pub fn proportion_stats(lam: &Partition, budget: &Budget) -> Result<ProportionStats> {
    let mut total = 0u64;
    let mut p1 = 0u64;
    let mut image = 0u64;
    for t in PermutedThornTree::all_of_type(lam, budget)? {
        total += 1;
        match classify(&t) {
            Classification::NoP1 => {}
            Classification::CycleFail { .. } => p1 += 1,
            Classification::Image => {
                p1 += 1;
                image += 1;
            }
        }
    }
    let ratio = |a: u64, b: u64| ExactRational::new(a.into(), b.into());
    Ok(ProportionStats {
        total,
        p1,
        image,
        p: ratio(image, total),
        p_prime: ratio(image, p1),
        p1_rate: ratio(p1, total),
    })
}
