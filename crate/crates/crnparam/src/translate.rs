//! Network translation: adding a complex to both sides of each reaction of a
//! classical network yields a generalized network with the same dynamics and
//! often better structure. The construction preserves reaction vectors and
//! turns each source complex into the kinetic-order complex of its translated
//! vertex; the resulting exact equivalence of the two differential systems is
//! certified term by term.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::model::{ode_rhs, Complex, Gcrn, OdeExpression, SymbolTable, Vertex};

/// Per-reaction added complexes plus optional phantom-edge requests (by
/// translated vertex id).
#[derive(Clone, Debug, Default)]
pub struct TranslationScheme {
    /// One added complex per directed reaction, indexed like the network's
    /// edge list.
    pub additions: Vec<Complex>,
    /// Requested phantom edges between translated vertices with equal
    /// stoichiometric complexes.
    pub phantom_requests: Vec<(u32, u32)>,
}

/// Outcome of [`translate`]: the generalized network and the reaction-to-edge
/// map.
#[derive(Clone, Debug)]
pub struct Translation {
    pub net: Gcrn,
    /// For each source reaction index, the corresponding edge index in the
    /// translated network.
    pub edge_map: Vec<usize>,
}

/// Exact dynamical-equivalence certificate.
#[derive(Clone, Debug)]
pub struct TranslationCertificate {
    /// Reaction vectors preserved on every mapped edge.
    pub reaction_vectors_preserved: bool,
    /// Source complexes of the original network equal the kinetic complexes
    /// of the translated sources.
    pub kinetic_complexes_match: bool,
    /// Exact difference of the two differential systems; must be zero.
    pub ode_difference: OdeExpression,
    /// Indices of reactions violating either condition.
    pub failures: Vec<usize>,
}

impl TranslationCertificate {
    pub fn valid(&self) -> bool {
        self.reaction_vectors_preserved
            && self.kinetic_complexes_match
            && self.ode_difference.is_zero()
    }
}

/// Applies a translation scheme to a classical network.
///
/// Vertices are created for every translated source first, keyed by the
/// (stoichiometric, kinetic) pair, numbered in reaction order. A reaction
/// target resolves to the vertex continuing its complex as a kinetic order
/// when one exists, otherwise to the lowest-id vertex with the same
/// stoichiometric complex, otherwise to a fresh target-only vertex.
pub fn translate(crn: &Gcrn, scheme: &TranslationScheme) -> Result<Translation, Error> {
    if !crn.is_classical() {
        return Err(Error::NotClassical(
            "translation requires an injective classical network".into(),
        ));
    }
    if scheme.additions.len() != crn.edges().len() {
        return Err(Error::Scheme(format!(
            "scheme covers {} reactions, network has {}",
            scheme.additions.len(),
            crn.edges().len()
        )));
    }

    let mut symbols = SymbolTable::new();
    for id in crn.symbols().ids() {
        symbols.insert(crn.symbols().name(id), crn.symbols().role(id))?;
    }

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut source_vertex = vec![usize::MAX; crn.edges().len()];

    // Pass 1: translated source vertices, deduplicated by complex pair.
    for (r, e) in crn.edges().iter().enumerate() {
        let base = &crn.vertices()[e.source].stoich;
        let stoich = base.add(&scheme.additions[r]);
        let kinetic = base.clone();
        let found = vertices
            .iter()
            .position(|v| v.stoich == stoich && v.kinetic.as_ref() == Some(&kinetic));
        source_vertex[r] = match found {
            Some(idx) => idx,
            None => {
                vertices.push(Vertex {
                    id: (vertices.len() + 1) as u32,
                    stoich,
                    kinetic: Some(kinetic),
                });
                vertices.len() - 1
            }
        };
    }

    // Pass 2: resolve targets and lay down the translated edges.
    let mut edges: Vec<(usize, usize, crate::model::SymbolId)> = Vec::new();
    let mut edge_map = Vec::with_capacity(crn.edges().len());
    for (r, e) in crn.edges().iter().enumerate() {
        let target_base = &crn.vertices()[e.target].stoich;
        let stoich = target_base.add(&scheme.additions[r]);
        let continuation = vertices
            .iter()
            .position(|v| v.stoich == stoich && v.kinetic.as_ref() == Some(target_base));
        let target = match continuation {
            Some(idx) => idx,
            None => match vertices.iter().position(|v| v.stoich == stoich) {
                Some(idx) => idx,
                None => {
                    vertices.push(Vertex {
                        id: (vertices.len() + 1) as u32,
                        stoich,
                        kinetic: None,
                    });
                    vertices.len() - 1
                }
            },
        };
        edge_map.push(edges.len());
        edges.push((source_vertex[r], target, e.label));
    }

    // Requested phantom edges with fresh labels.
    for &(a, b) in &scheme.phantom_requests {
        let ia = vertices
            .iter()
            .position(|v| v.id == a)
            .ok_or_else(|| Error::Scheme(format!("phantom request names unknown vertex {a}")))?;
        let ib = vertices
            .iter()
            .position(|v| v.id == b)
            .ok_or_else(|| Error::Scheme(format!("phantom request names unknown vertex {b}")))?;
        if vertices[ia].stoich != vertices[ib].stoich {
            return Err(Error::Scheme(format!(
                "phantom request {a} -> {b} joins unequal stoichiometric complexes"
            )));
        }
        let label = symbols.fresh_phantom();
        edges.push((ia, ib, label));
    }

    let net = Gcrn::new(crn.species().to_vec(), vertices, edges, symbols)?;
    Ok(Translation { net, edge_map })
}

/// Checks both translation conditions edge by edge and the exact equality of
/// the two differential systems.
pub fn certify(
    crn: &Gcrn,
    translated: &Gcrn,
    edge_map: &[usize],
) -> Result<TranslationCertificate, Error> {
    let mut vectors_ok = true;
    let mut kinetics_ok = true;
    let mut failures = Vec::new();
    for (r, e) in crn.edges().iter().enumerate() {
        let te = &translated.edges()[edge_map[r]];
        let source = &crn.vertices()[e.source].stoich;
        let target = &crn.vertices()[e.target].stoich;
        let t_source = &translated.vertices()[te.source];
        let t_target = &translated.vertices()[te.target];
        let mut bad = false;
        if t_target.stoich.sub(&t_source.stoich) != target.sub(source) {
            vectors_ok = false;
            bad = true;
        }
        if t_source.kinetic.as_ref() != Some(source) {
            kinetics_ok = false;
            bad = true;
        }
        if bad {
            failures.push(r);
        }
    }

    // Rate symbols carry over by name; align ids before comparing.
    let original = ode_rhs(crn)?;
    let translated_ode = align_symbols(&ode_rhs(translated)?, translated, crn)?;
    let ode_difference = translated_ode.sub(&original);

    Ok(TranslationCertificate {
        reaction_vectors_preserved: vectors_ok,
        kinetic_complexes_match: kinetics_ok,
        ode_difference,
        failures,
    })
}

/// Rewrites symbol ids of `expr` (over `from`'s table) into `to`'s ids, by
/// name. Symbols unknown to `to` (fresh phantom labels) must not occur.
fn align_symbols(expr: &OdeExpression, from: &Gcrn, to: &Gcrn) -> Result<OdeExpression, Error> {
    let mut map = BTreeMap::new();
    for id in from.symbols().ids() {
        let name = from.symbols().name(id);
        if let Some(target) = to.symbols().lookup(name) {
            if target != id {
                map.insert(id.0, target.poly());
            }
        } else if expr.contains_symbol(id.0) {
            return Err(Error::Scheme(format!(
                "symbol `{name}` has no counterpart in the original network"
            )));
        }
    }
    Ok(expr.substitute_symbols(&map))
}
