//! Tree constants and their quotients.
//!
//! The tree constant of a vertex is the sum, over all spanning trees of its
//! linkage class directed toward that vertex, of the product of edge labels.
//! Per class, the vector of tree constants spans the kernel of the class
//! Laplacian. Two independent computations are provided: the minor of the
//! class Laplacian (matrix-tree theorem) and direct enumeration of the
//! arborescences; tests hold them against each other.

use std::collections::BTreeMap;

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::Error;
use crate::model::{linkage_structure, Gcrn};

/// Upper bound on linkage-class size for the determinant expansion.
const COFACTOR_LIMIT: usize = 12;
/// Upper bound on linkage-class size for the enumeration oracle.
const ENUMERATION_LIMIT: usize = 10;
/// Upper bound on the number of out-edge combinations the oracle will scan.
const ENUMERATION_COMBINATIONS: u64 = 5_000_000;

/// One spanning tree per linkage class, as (root, member) vertex pairs by
/// internal index. Pairs need not be edges of the network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForest {
    pub edges: Vec<(usize, usize)>,
}

impl SpanningForest {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn display_edges(&self, net: &Gcrn) -> Vec<(u32, u32)> {
        self.edges
            .iter()
            .map(|&(i, j)| (net.display_id(i), net.display_id(j)))
            .collect()
    }
}

/// Deterministic star forest: in every linkage class the vertex with the
/// lowest display id is the root, joined to each other member in display-id
/// order. Classes are ordered by their lowest display id.
pub fn choose_forest(net: &Gcrn) -> SpanningForest {
    let structure = linkage_structure(net);
    let mut classes: Vec<Vec<usize>> = structure
        .linkage_classes
        .iter()
        .map(|class| {
            let mut members = class.clone();
            members.sort_by_key(|&v| net.display_id(v));
            members
        })
        .collect();
    classes.sort_by_key(|c| net.display_id(c[0]));
    let mut edges = Vec::new();
    for class in classes {
        let root = class[0];
        for &member in &class[1..] {
            edges.push((root, member));
        }
    }
    SpanningForest { edges }
}

/// Per-vertex tree constants, indexed by internal vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeConstants {
    pub constants: Vec<Polynomial>,
}

impl TreeConstants {
    pub fn of(&self, vertex: usize) -> &Polynomial {
        &self.constants[vertex]
    }
}

/// Quotients of tree constants along the forest edges, target over source.
#[derive(Clone, Debug)]
pub struct KappaVector {
    pub entries: Vec<RationalFunction>,
}

/// Builds the quotient vector: entry `K_j / K_i` for forest edge `(i, j)`.
pub fn kappa(constants: &TreeConstants, forest: &SpanningForest) -> Result<KappaVector, Error> {
    let entries = forest
        .edges
        .iter()
        .map(|&(i, j)| {
            RationalFunction::new(constants.constants[j].clone(), constants.constants[i].clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KappaVector { entries })
}

struct ClassContext {
    /// Internal vertex indices of the class, ascending.
    members: Vec<usize>,
    /// Edges within the class as (member position, member position, label poly).
    edges: Vec<(usize, usize, Polynomial)>,
}

fn class_contexts(net: &Gcrn) -> Result<Vec<ClassContext>, Error> {
    let structure = linkage_structure(net);
    if !structure.weakly_reversible {
        let bad = structure
            .linkage_classes
            .iter()
            .find(|c| !structure.strong_classes.contains(c))
            .expect("some class is not strongly connected");
        return Err(Error::NotWeaklyReversible {
            class: bad.iter().map(|&v| net.display_id(v)).collect(),
        });
    }
    Ok(structure
        .linkage_classes
        .iter()
        .map(|members| {
            let pos: BTreeMap<usize, usize> =
                members.iter().enumerate().map(|(p, &v)| (v, p)).collect();
            let edges = net
                .edges()
                .iter()
                .filter(|e| pos.contains_key(&e.source) && pos.contains_key(&e.target))
                .map(|e| (pos[&e.source], pos[&e.target], e.label.poly()))
                .collect();
            ClassContext { members: members.clone(), edges }
        })
        .collect())
}

/// Tree constants via the matrix-tree theorem: the constant of vertex `i` is
/// the determinant of the out-degree Laplacian of its class with row and
/// column `i` removed. Requires every linkage class to be strongly connected.
pub fn tree_constants_cofactor(net: &Gcrn) -> Result<TreeConstants, Error> {
    let mut constants = vec![Polynomial::zero(); net.vertices().len()];
    for ctx in class_contexts(net)? {
        let w = ctx.members.len();
        if w > COFACTOR_LIMIT {
            return Err(Error::ClassTooLarge { size: w, limit: COFACTOR_LIMIT });
        }
        // Out-degree Laplacian: diagonal sums outgoing labels, entry (u, v)
        // subtracts the labels of edges u -> v.
        let mut lap = vec![vec![Polynomial::zero(); w]; w];
        for (s, t, k) in &ctx.edges {
            lap[*s][*s] = &lap[*s][*s] + k;
            lap[*s][*t] = &lap[*s][*t] - k;
        }
        for (pos, &vertex) in ctx.members.iter().enumerate() {
            let minor: Vec<Vec<Polynomial>> = (0..w)
                .filter(|&r| r != pos)
                .map(|r| {
                    (0..w)
                        .filter(|&c| c != pos)
                        .map(|c| lap[r][c].clone())
                        .collect()
                })
                .collect();
            constants[vertex] = determinant(&minor);
        }
    }
    Ok(TreeConstants { constants })
}

/// Determinant by column-subset dynamic programming (memoized Laplace
/// expansion along rows).
fn determinant(mat: &[Vec<Polynomial>]) -> Polynomial {
    let d = mat.len();
    if d == 0 {
        return Polynomial::one();
    }
    assert!(d <= 20, "determinant dimension out of range");
    let full: u32 = (1u32 << d) - 1;
    let mut dp: Vec<Option<Polynomial>> = vec![None; (full as usize) + 1];
    dp[0] = Some(Polynomial::one());
    for mask in 1..=full {
        let row = (mask.count_ones() - 1) as usize;
        let mut acc = Polynomial::zero();
        // Laplace expansion along the last row: sign (-1)^(row + position),
        // position counting set columns from the right.
        let mut position = 0usize;
        for (col, entry) in mat[row].iter().enumerate() {
            let bit = 1u32 << col;
            if mask & bit == 0 {
                continue;
            }
            if !entry.is_zero() {
                let sub = dp[(mask ^ bit) as usize]
                    .as_ref()
                    .expect("smaller subsets filled");
                let term = entry * sub;
                acc = if (row + position).is_multiple_of(2) { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        dp[mask as usize] = Some(acc);
    }
    dp[full as usize].take().expect("full mask filled")
}

/// Independent oracle: enumerates, per class and root, every choice of one
/// outgoing edge per non-root vertex and keeps the choices whose paths all
/// converge to the root. Intended for small classes.
pub fn tree_constants_enumerate(net: &Gcrn) -> Result<TreeConstants, Error> {
    let mut constants = vec![Polynomial::zero(); net.vertices().len()];
    for ctx in class_contexts(net)? {
        let w = ctx.members.len();
        if w > ENUMERATION_LIMIT {
            return Err(Error::ClassTooLarge { size: w, limit: ENUMERATION_LIMIT });
        }
        for root_pos in 0..w {
            // Outgoing edge choices for each non-root position.
            let mut choices: Vec<Vec<(usize, &Polynomial)>> = vec![Vec::new(); w];
            for (s, t, k) in &ctx.edges {
                choices[*s].push((*t, k));
            }
            let non_root: Vec<usize> = (0..w).filter(|&p| p != root_pos).collect();
            let mut combos: u64 = 1;
            for &p in &non_root {
                combos = combos.saturating_mul(choices[p].len() as u64);
            }
            if combos > ENUMERATION_COMBINATIONS {
                return Err(Error::ClassTooLarge { size: w, limit: ENUMERATION_LIMIT });
            }
            let mut sum = Polynomial::zero();
            let mut pick = vec![0usize; non_root.len()];
            'combos: loop {
                // Check convergence to the root: follow each vertex's chosen
                // edge; every walk must reach the root without revisiting.
                let parent: Vec<Option<usize>> = {
                    let mut parent = vec![None; w];
                    for (slot, &p) in non_root.iter().enumerate() {
                        parent[p] = Some(choices[p][pick[slot]].0);
                    }
                    parent
                };
                let mut ok = true;
                'verify: for &start in &non_root {
                    let mut seen = vec![false; w];
                    let mut v = start;
                    loop {
                        if v == root_pos {
                            break;
                        }
                        if seen[v] {
                            ok = false;
                            break 'verify;
                        }
                        seen[v] = true;
                        v = parent[v].expect("non-root has a choice");
                    }
                }
                if ok {
                    let mut product = Polynomial::one();
                    for (slot, &p) in non_root.iter().enumerate() {
                        product = &product * choices[p][pick[slot]].1;
                    }
                    sum = &sum + &product;
                }
                // Advance the mixed-radix counter.
                for slot in 0..pick.len() {
                    pick[slot] += 1;
                    if pick[slot] < choices[non_root[slot]].len() {
                        continue 'combos;
                    }
                    pick[slot] = 0;
                }
                break;
            }
            if non_root.is_empty() {
                sum = Polynomial::one();
            }
            constants[ctx.members[root_pos]] = sum;
        }
    }
    Ok(TreeConstants { constants })
}
