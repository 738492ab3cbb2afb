//! Set partitions of `{1..n}` and the permutations they contain.

use std::fmt;

use crate::permutation::next_permutation;
use crate::{Error, Partition, Permutation, Result};

/// Blocks are 0-based, each sorted ascending, and listed by increasing
/// minimum. That normal form makes derived equality set-theoretic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates 0-based blocks and puts them in normal form.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= n {
                    return Err(Error::InvalidSetPartition(format!(
                        "element {} out of range 1..={n}",
                        x + 1
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidSetPartition(format!(
                        "element {} in two blocks",
                        x + 1
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidSetPartition(format!(
                "element {} is not covered",
                missing + 1
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub fn from_one_based(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut zero = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.contains(&0) {
                return Err(Error::InvalidSetPartition(
                    "element 0 in a 1-based block".into(),
                ));
            }
            zero.push(block.iter().map(|&x| x - 1).collect());
        }
        Self::new(n, zero)
    }

    pub fn singletons(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (0..n).map(|x| vec![x]).collect(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        SetPartition {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    /// The orbit partition of a permutation.
    pub fn orbits(p: &Permutation) -> Self {
        Self::new(p.len(), p.cycles()).expect("cycles partition the ground set")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn one_based_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&x| x + 1).collect())
            .collect()
    }

    /// Block index of each element.
    pub fn block_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                idx[x] = b;
            }
        }
        idx
    }

    /// Sorted block sizes.
    pub fn type_of(&self) -> Partition {
        Partition::from_unsorted(self.blocks.iter().map(Vec::len).collect())
            .expect("blocks are nonempty")
    }

    /// Every set partition of `{0..n}` whose block sizes form `shape`, each
    /// exactly once.
    pub fn all_of_type(shape: &Partition) -> Vec<SetPartition> {
        let n = shape.size();
        let mut sizes = shape.multiplicities();
        let mut out = Vec::new();
        let mut assigned = vec![false; n];
        let mut blocks = Vec::new();
        of_type_rec(n, &mut sizes, &mut assigned, &mut blocks, &mut out);
        out
    }

    /// Permutations whose cycles each lie inside one block, i.e. the product
    /// of the blocks' symmetric groups.
    pub fn permutations_within(&self) -> BlockPermutations {
        BlockPermutations {
            n: self.n,
            arrangements: self.blocks.clone(),
            blocks: self.blocks.clone(),
            done: self.n == 0,
        }
    }

    /// True iff every orbit of `p` lies inside a block.
    pub fn is_coarser_than(&self, p: &Permutation) -> bool {
        let idx = self.block_index();
        (0..self.n).all(|k| idx[k] == idx[p.apply(k)])
    }
}

fn of_type_rec(
    n: usize,
    sizes: &mut Vec<(usize, usize)>,
    assigned: &mut Vec<bool>,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<SetPartition>,
) {
    let Some(first) = assigned.iter().position(|a| !a) else {
        out.push(SetPartition {
            n,
            blocks: blocks.clone(),
        });
        return;
    };
    // The smallest free element opens the next block; only its size varies.
    assigned[first] = true;
    let free: Vec<usize> = (first + 1..n).filter(|&x| !assigned[x]).collect();
    for s in 0..sizes.len() {
        let (size, mult) = sizes[s];
        if mult == 0 {
            continue;
        }
        sizes[s].1 -= 1;
        let mut choice: Vec<usize> = (0..size - 1).collect();
        if size - 1 <= free.len() {
            loop {
                let mut block = vec![first];
                block.extend(choice.iter().map(|&c| free[c]));
                for &x in &block[1..] {
                    assigned[x] = true;
                }
                blocks.push(block);
                of_type_rec(n, sizes, assigned, blocks, out);
                let block = blocks.pop().unwrap();
                for &x in &block[1..] {
                    assigned[x] = false;
                }
                if !next_combination(&mut choice, free.len()) {
                    break;
                }
            }
        }
        sizes[s].1 += 1;
    }
    assigned[first] = false;
}

/// Advances a sorted `k`-subset of `0..m` to its lexicographic successor.
fn next_combination(c: &mut [usize], m: usize) -> bool {
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

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Odometer over the per-block arrangements; the last block varies fastest.
pub struct BlockPermutations {
    n: usize,
    blocks: Vec<Vec<usize>>,
    arrangements: Vec<Vec<usize>>,
    done: bool,
}

impl Iterator for BlockPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let mut images = vec![0; self.n];
        for (block, arr) in self.blocks.iter().zip(&self.arrangements) {
            for (&x, &y) in block.iter().zip(arr) {
                images[x] = y;
            }
        }
        let mut advanced = false;
        for arr in self.arrangements.iter_mut().rev() {
            if next_permutation(arr) {
                advanced = true;
                break;
            }
        }
        self.done = !advanced;
        Some(Permutation::from_images(images).expect("block arrangements form a bijection"))
    }
}
