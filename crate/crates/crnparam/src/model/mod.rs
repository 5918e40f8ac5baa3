//! Reaction-network model: complexes, vertices, labeled edges, and the
//! generalized network type subsuming classical mass-action networks.
//!
//! A network is a directed graph without self-loops. Every vertex carries a
//! stoichiometric complex, and every source vertex additionally carries a
//! kinetic-order complex. Classical networks are the special case where the
//! two maps agree and the stoichiometric map is injective.

mod ode;
mod structure;
mod vstar;

pub use ode::{laplacian, ode_rhs, OdeExpression, SymbolicMatrix};
pub use structure::{
    condense, linkage_structure, partition_edges, structure_report, CondensedCrn, LinkageStructure,
    StructureReport,
};
pub use vstar::{default_vstar, is_v_star_directed, redirect, Redirection};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::algebra::poly::format_rat;
use crate::algebra::{Polynomial, Rat, RationalMatrix};
use crate::error::Error;

/// Identifier of a rate, phantom, or parametrization symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn poly(self) -> Polynomial {
        Polynomial::symbol(self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymbolRole {
    /// Ordinary rate constant on an effective (or initially phantom) edge.
    RateConstant,
    /// Free parameter labelling a phantom edge.
    PhantomParameter,
    /// Free parameter of an equilibrium parametrization.
    TauParameter,
}

/// Interns symbol names; names are unique within a network.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    entries: Vec<(String, SymbolRole)>,
    by_name: HashMap<String, SymbolId>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, name: &str, role: SymbolRole) -> Result<SymbolId, Error> {
        if self.by_name.contains_key(name) {
            return Err(Error::InvalidNetwork(format!("duplicate symbol name `{name}`")));
        }
        let id = SymbolId(self.entries.len() as u32);
        self.entries.push((name.to_string(), role));
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.entries[id.0 as usize].0
    }

    pub fn role(&self, id: SymbolId) -> SymbolRole {
        self.entries[id.0 as usize].1
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.entries.len()).map(|i| SymbolId(i as u32))
    }

    /// Mints `phi1`, `phi2`, ... skipping taken names.
    pub fn fresh_phantom(&mut self) -> SymbolId {
        let mut n = 1;
        loop {
            let name = format!("phi{n}");
            if !self.by_name.contains_key(&name) {
                return self.insert(&name, SymbolRole::PhantomParameter).expect("fresh name");
            }
            n += 1;
        }
    }

    /// Mints `tau1`, `tau2`, ... skipping taken names.
    pub fn fresh_tau(&mut self) -> SymbolId {
        let mut n = 1;
        loop {
            let name = format!("tau{n}");
            if !self.by_name.contains_key(&name) {
                return self.insert(&name, SymbolRole::TauParameter).expect("fresh name");
            }
            n += 1;
        }
    }

    /// Mints a merged-rate symbol named by the sorted `+`-joined parts.
    pub fn fresh_merged(&mut self, parts: &[SymbolId]) -> SymbolId {
        let mut names: Vec<&str> = parts.iter().map(|&p| self.name(p)).collect();
        names.sort_unstable();
        let mut name = names.join("+");
        while self.by_name.contains_key(&name) {
            name.push('\'');
        }
        self.insert(&name, SymbolRole::RateConstant).expect("fresh name")
    }

    pub fn display(&self, id: SymbolId) -> String {
        self.name(id).to_string()
    }

    /// Name lookup closure for polynomial rendering.
    pub fn namer(&self) -> impl Fn(u32) -> String + '_ {
        move |raw| self.entries[raw as usize].0.clone()
    }
}

/// A formal rational combination of species (sparse, no zero coefficients).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Complex {
    coeffs: BTreeMap<usize, Rat>,
}

impl Complex {
    pub fn zero() -> Self {
        Complex::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut c = Complex::zero();
        for (s, v) in pairs {
            c.add_species(s, v);
        }
        c
    }

    pub fn add_species(&mut self, species: usize, coeff: Rat) {
        use num::Zero;
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(species).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&species);
        }
    }

    pub fn coeff(&self, species: usize) -> Rat {
        use num::Zero;
        self.coeffs.get(&species).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&s, v)| (s, v))
    }

    pub fn add(&self, other: &Complex) -> Complex {
        let mut out = self.clone();
        for (s, v) in other.iter() {
            out.add_species(s, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Complex) -> Complex {
        let mut out = self.clone();
        for (s, v) in other.iter() {
            out.add_species(s, -v.clone());
        }
        out
    }

    pub fn dense(&self, n_species: usize) -> Vec<Rat> {
        let mut v = vec![<Rat as num::Zero>::zero(); n_species];
        for (s, c) in self.iter() {
            v[s] = c.clone();
        }
        v
    }

    pub fn render(&self, species: &[String]) -> String {
        use num::One;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (s, c) in self.iter() {
            if c.is_one() {
                parts.push(species[s].clone());
            } else {
                parts.push(format!("{}*{}", format_rat(c), species[s]));
            }
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Effective,
    Phantom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    /// User-facing vertex number (unique within a network).
    pub id: u32,
    pub stoich: Complex,
    pub kinetic: Option<Complex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Internal index of the source vertex.
    pub source: usize,
    /// Internal index of the target vertex.
    pub target: usize,
    pub label: SymbolId,
    /// Derived from the endpoint stoichiometric complexes.
    pub kind: EdgeKind,
}

/// A generalized chemical reaction network with symbolic edge labels.
#[derive(Clone, Debug)]
pub struct Gcrn {
    species: Vec<String>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    symbols: SymbolTable,
    values: BTreeMap<String, f64>,
}

impl Gcrn {
    pub fn new(
        species: Vec<String>,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize, SymbolId)>,
        symbols: SymbolTable,
    ) -> Result<Self, Error> {
        let mut seen_ids = HashMap::new();
        for (idx, v) in vertices.iter().enumerate() {
            if let Some(prev) = seen_ids.insert(v.id, idx) {
                return Err(Error::InvalidNetwork(format!(
                    "vertex id {} used by two vertices (internal {} and {})",
                    v.id, prev, idx
                )));
            }
        }
        let mut built = Vec::with_capacity(edges.len());
        for (source, target, label) in edges {
            if source >= vertices.len() || target >= vertices.len() {
                return Err(Error::InvalidNetwork("edge endpoint out of range".into()));
            }
            if source == target {
                return Err(Error::InvalidNetwork(format!(
                    "self-loop at vertex {}",
                    vertices[source].id
                )));
            }
            let kind = if vertices[source].stoich == vertices[target].stoich {
                EdgeKind::Phantom
            } else {
                EdgeKind::Effective
            };
            if symbols.role(label) == SymbolRole::PhantomParameter && kind == EdgeKind::Effective {
                return Err(Error::InvalidNetwork(format!(
                    "phantom label `{}` on effective edge {} -> {}",
                    symbols.name(label),
                    vertices[source].id,
                    vertices[target].id
                )));
            }
            built.push(Edge { source, target, label, kind });
        }
        for e in &built {
            if vertices[e.source].kinetic.is_none() {
                return Err(Error::MissingKinetic { vertex: vertices[e.source].id });
            }
        }
        Ok(Gcrn {
            species,
            vertices,
            edges: built,
            symbols,
            values: BTreeMap::new(),
        })
    }

    pub fn n_species(&self) -> usize {
        self.species.len()
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn values(&self) -> &BTreeMap<String, f64> {
        &self.values
    }

    pub fn set_values(&mut self, values: BTreeMap<String, f64>) {
        self.values = values;
    }

    pub fn vertex_index_of_id(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn display_id(&self, index: usize) -> u32 {
        self.vertices[index].id
    }

    /// A classical network has injective stoichiometric complexes and equal
    /// stoichiometric and kinetic-order complexes on every source vertex.
    pub fn is_classical(&self) -> bool {
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                if a.stoich == b.stoich {
                    return false;
                }
            }
        }
        self.vertices.iter().enumerate().all(|(idx, v)| {
            let is_source = self.edges.iter().any(|e| e.source == idx);
            !is_source || v.kinetic.as_ref() == Some(&v.stoich)
        })
    }

    pub fn is_source(&self, index: usize) -> bool {
        self.edges.iter().any(|e| e.source == index)
    }

    pub fn all_vertices_are_sources(&self) -> bool {
        (0..self.vertices.len()).all(|i| self.is_source(i))
    }

    /// Incidence matrix: column per edge with `-1` at the source and `+1` at
    /// the target.
    pub fn incidence(&self) -> RationalMatrix {
        let m = self.vertices.len();
        let mut out = RationalMatrix::zero(m, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            out.set(e.source, j, -crate::algebra::rat(1));
            out.set(e.target, j, crate::algebra::rat(1));
        }
        out
    }

    /// Source matrix: column per edge with `+1` at the source.
    pub fn source_matrix(&self) -> RationalMatrix {
        let m = self.vertices.len();
        let mut out = RationalMatrix::zero(m, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            out.set(e.source, j, crate::algebra::rat(1));
        }
        out
    }

    /// Matrix of stoichiometric complexes, one column per vertex.
    pub fn stoich_matrix(&self) -> RationalMatrix {
        let n = self.species.len();
        let mut out = RationalMatrix::zero(n, self.vertices.len());
        for (j, v) in self.vertices.iter().enumerate() {
            for (s, c) in v.stoich.iter() {
                out.set(s, j, c.clone());
            }
        }
        out
    }

    /// Matrix of kinetic-order complexes; `None` unless every vertex carries
    /// one.
    pub fn kinetic_matrix(&self) -> Option<RationalMatrix> {
        let n = self.species.len();
        let mut out = RationalMatrix::zero(n, self.vertices.len());
        for (j, v) in self.vertices.iter().enumerate() {
            let kin = v.kinetic.as_ref()?;
            for (s, c) in kin.iter() {
                out.set(s, j, c.clone());
            }
        }
        Some(out)
    }

    /// Successor lists by internal vertex index.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn two_vertex_net(same_stoich: bool) -> Gcrn {
        let mut symbols = SymbolTable::new();
        let k = symbols.insert("k1", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let b = if same_stoich {
            a.clone()
        } else {
            Complex::from_pairs([(1, rat(1))])
        };
        Gcrn::new(
            vec!["A".into(), "B".into()],
            vec![
                Vertex { id: 1, stoich: a.clone(), kinetic: Some(a) },
                Vertex { id: 2, stoich: b, kinetic: None },
            ],
            vec![(0, 1, k)],
            symbols,
        )
        .unwrap()
    }

    #[test]
    fn edge_kind_derived_from_stoich() {
        assert_eq!(two_vertex_net(false).edges()[0].kind, EdgeKind::Effective);
        assert_eq!(two_vertex_net(true).edges()[0].kind, EdgeKind::Phantom);
    }

    #[test]
    fn source_without_kinetic_rejected() {
        let mut symbols = SymbolTable::new();
        let k = symbols.insert("k1", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let b = Complex::from_pairs([(1, rat(1))]);
        let err = Gcrn::new(
            vec!["A".into(), "B".into()],
            vec![
                Vertex { id: 1, stoich: a, kinetic: None },
                Vertex { id: 2, stoich: b, kinetic: None },
            ],
            vec![(0, 1, k)],
            symbols,
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingKinetic { vertex: 1 }));
    }

    #[test]
    fn self_loop_rejected() {
        let mut symbols = SymbolTable::new();
        let k = symbols.insert("k1", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let err = Gcrn::new(
            vec!["A".into()],
            vec![Vertex { id: 1, stoich: a.clone(), kinetic: Some(a) }],
            vec![(0, 0, k)],
            symbols,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidNetwork(_)));
    }

    #[test]
    fn complex_arithmetic_is_canonical() {
        let a = Complex::from_pairs([(0, rat(1)), (1, rat(2))]);
        let b = Complex::from_pairs([(1, rat(-2)), (2, rat(1))]);
        let sum = a.add(&b);
        assert_eq!(sum, Complex::from_pairs([(0, rat(1)), (2, rat(1))]));
        assert!(a.sub(&a).is_zero());
    }
}
