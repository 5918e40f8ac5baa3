//! Structural analysis: edge partition, linkage classes, deficiencies, and
//! the condensed network.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Complex, EdgeKind, Gcrn, SymbolRole, SymbolTable, Vertex};
use crate::error::Error;

/// Splits the edge index set into effective and phantom parts.
pub fn partition_edges(net: &Gcrn) -> (Vec<usize>, Vec<usize>) {
    let mut effective = Vec::new();
    let mut phantom = Vec::new();
    for (i, e) in net.edges().iter().enumerate() {
        match e.kind {
            EdgeKind::Effective => effective.push(i),
            EdgeKind::Phantom => phantom.push(i),
        }
    }
    (effective, phantom)
}

#[derive(Clone, Debug)]
pub struct LinkageStructure {
    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest member.
    pub linkage_classes: Vec<Vec<usize>>,
    /// Strongly connected components, normalized the same way.
    pub strong_classes: Vec<Vec<usize>>,
    pub weakly_reversible: bool,
}

/// Computes linkage classes, strong linkage classes, and weak reversibility
/// (the two partitions coincide).
pub fn linkage_structure(net: &Gcrn) -> LinkageStructure {
    let m = net.vertices().len();
    let adj = net.adjacency();

    // Undirected reachability for linkage classes.
    let mut undirected = vec![Vec::new(); m];
    for e in net.edges() {
        undirected[e.source].push(e.target);
        undirected[e.target].push(e.source);
    }
    let mut comp = vec![usize::MAX; m];
    let mut n_comp = 0;
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = n_comp;
        while let Some(v) = stack.pop() {
            for &w in &undirected[v] {
                if comp[w] == usize::MAX {
                    comp[w] = n_comp;
                    stack.push(w);
                }
            }
        }
        n_comp += 1;
    }
    let linkage_classes = normalize_partition(&comp, n_comp);

    // Kosaraju for strong components.
    let mut order = Vec::with_capacity(m);
    let mut visited = vec![false; m];
    for start in 0..m {
        if visited[start] {
            continue;
        }
        // Iterative post-order DFS.
        let mut stack = vec![(start, 0usize)];
        visited[start] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); m];
    for e in net.edges() {
        radj[e.target].push(e.source);
    }
    let mut scc = vec![usize::MAX; m];
    let mut n_scc = 0;
    for &start in order.iter().rev() {
        if scc[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        scc[start] = n_scc;
        while let Some(v) = stack.pop() {
            for &w in &radj[v] {
                if scc[w] == usize::MAX {
                    scc[w] = n_scc;
                    stack.push(w);
                }
            }
        }
        n_scc += 1;
    }
    let strong_classes = normalize_partition(&scc, n_scc);

    let weakly_reversible = linkage_classes == strong_classes;
    LinkageStructure { linkage_classes, strong_classes, weakly_reversible }
}

fn normalize_partition(assignment: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); n];
    for (v, &c) in assignment.iter().enumerate() {
        classes[c].push(v);
    }
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// The condensed network: vertices grouped by equal stoichiometric complex,
/// phantom edges dropped, parallel class edges merged.
#[derive(Clone, Debug)]
pub struct CondensedCrn {
    /// Member internal indices per class, sorted; classes ordered by smallest
    /// member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each vertex.
    pub class_of: Vec<usize>,
    /// The shared stoichiometric complex of each class.
    pub complexes: Vec<Complex>,
    /// Deduplicated directed class pairs induced by effective edges.
    pub edges: BTreeSet<(usize, usize)>,
}

pub fn condense(net: &Gcrn) -> CondensedCrn {
    let m = net.vertices().len();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut complexes: Vec<Complex> = Vec::new();
    let mut class_of = vec![usize::MAX; m];
    for (i, v) in net.vertices().iter().enumerate() {
        match complexes.iter().position(|c| *c == v.stoich) {
            Some(c) => {
                classes[c].push(i);
                class_of[i] = c;
            }
            None => {
                class_of[i] = classes.len();
                classes.push(vec![i]);
                complexes.push(v.stoich.clone());
            }
        }
    }
    let mut edges = BTreeSet::new();
    for e in net.edges() {
        if e.kind == EdgeKind::Effective {
            edges.insert((class_of[e.source], class_of[e.target]));
        }
    }
    CondensedCrn { classes, class_of, complexes, edges }
}

impl CondensedCrn {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Number of connected components of the condensed graph.
    pub fn linkage_class_count(&self) -> usize {
        let n = self.classes.len();
        let mut und = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            und[a].push(b);
            und[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &und[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Rebuilds the condensed network as a classical network with one vertex
    /// per class and freshly labeled edges.
    pub fn to_crn(&self, species: &[String]) -> Result<Gcrn, Error> {
        let mut symbols = SymbolTable::new();
        let vertices: Vec<Vertex> = self
            .complexes
            .iter()
            .enumerate()
            .map(|(i, c)| Vertex {
                id: (i + 1) as u32,
                stoich: c.clone(),
                kinetic: Some(c.clone()),
            })
            .collect();
        let mut edges = Vec::new();
        for (n, &(a, b)) in self.edges.iter().enumerate() {
            let label = symbols.insert(&format!("c{}", n + 1), SymbolRole::RateConstant)?;
            edges.push((a, b, label));
        }
        Gcrn::new(species.to_vec(), vertices, edges, symbols)
    }
}

/// All structural quantities of a network in one report.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub effective_edge_count: usize,
    pub phantom_edge_count: usize,
    pub linkage_class_count: usize,
    /// Vertex display ids per linkage class.
    pub linkage_classes: Vec<Vec<u32>>,
    pub strong_linkage_classes: Vec<Vec<u32>>,
    pub weakly_reversible: bool,
    /// Dimension of the stoichiometric subspace.
    pub stoichiometric_rank: usize,
    /// Dimension of the kinetic-order subspace; absent unless every vertex is
    /// a source.
    pub kinetic_rank: Option<usize>,
    pub deficiency: usize,
    pub kinetic_deficiency: Option<usize>,
    pub effective_deficiency: usize,
    pub condensed_vertex_count: usize,
    pub condensed_linkage_class_count: usize,
}

pub fn structure_report(net: &Gcrn) -> StructureReport {
    let m = net.vertices().len();
    let structure = linkage_structure(net);
    let ell = structure.linkage_classes.len();
    let incidence = net.incidence();
    let s = net.stoich_matrix().matmul(&incidence).rank();

    let kinetic_rank = if net.all_vertices_are_sources() {
        net.kinetic_matrix().map(|ky| ky.matmul(&incidence).rank())
    } else {
        None
    };

    let condensed = condense(net);
    let m_prime = condensed.class_count();
    let ell_prime = condensed.linkage_class_count();

    let (effective, phantom) = partition_edges(net);
    let to_ids = |classes: &Vec<Vec<usize>>| {
        classes
            .iter()
            .map(|c| c.iter().map(|&v| net.display_id(v)).collect())
            .collect()
    };

    StructureReport {
        vertex_count: m,
        edge_count: net.edges().len(),
        effective_edge_count: effective.len(),
        phantom_edge_count: phantom.len(),
        linkage_class_count: ell,
        linkage_classes: to_ids(&structure.linkage_classes),
        strong_linkage_classes: to_ids(&structure.strong_classes),
        weakly_reversible: structure.weakly_reversible,
        stoichiometric_rank: s,
        kinetic_rank,
        deficiency: m - ell - s,
        kinetic_deficiency: kinetic_rank.map(|sk| m - ell - sk),
        effective_deficiency: m_prime - ell_prime - s,
        condensed_vertex_count: m_prime,
        condensed_linkage_class_count: ell_prime,
    }
}
