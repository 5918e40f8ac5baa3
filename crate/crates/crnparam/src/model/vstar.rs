//! Representative vertex sets and network redirection.
//!
//! A network is directed with respect to a set of representatives when every
//! effective edge enters its target class at the representative and the
//! phantom edges fan out from each representative to the rest of its class.
//! Redirection rewires any network into that shape while keeping the
//! associated differential equations unchanged: rerouted effective edges keep
//! their rate, edges merged onto the same representative sum their rates, and
//! phantom edges are free to relabel.

use std::collections::BTreeMap;

use super::structure::{condense, CondensedCrn};
use super::{EdgeKind, Gcrn, SymbolId};
use crate::error::Error;

/// Resolves user-facing representative ids to internal indices and checks the
/// section property: exactly one representative per condensed class.
pub fn validate_section(
    net: &Gcrn,
    condensed: &CondensedCrn,
    vstar_ids: &[u32],
) -> Result<Vec<usize>, Error> {
    let mut chosen: Vec<Option<usize>> = vec![None; condensed.class_count()];
    for &id in vstar_ids {
        let idx = net
            .vertex_index_of_id(id)
            .ok_or_else(|| Error::InvalidVstar(format!("unknown vertex id {id}")))?;
        let class = condensed.class_of[idx];
        if let Some(prev) = chosen[class] {
            return Err(Error::InvalidVstar(format!(
                "vertices {} and {} represent the same class",
                net.display_id(prev),
                id
            )));
        }
        chosen[class] = Some(idx);
    }
    chosen
        .into_iter()
        .enumerate()
        .map(|(c, v)| {
            v.ok_or_else(|| {
                Error::InvalidVstar(format!(
                    "no representative for the class of vertex {}",
                    net.display_id(condensed.classes[c][0])
                ))
            })
        })
        .collect()
}

/// Default representative per class: the common target of all effective edges
/// entering the class when there is one, otherwise the member with the lowest
/// display id.
pub fn default_vstar(net: &Gcrn, condensed: &CondensedCrn) -> Vec<usize> {
    let mut targets: Vec<Option<Option<usize>>> = vec![None; condensed.class_count()];
    // None: no edge seen; Some(Some(v)): all targets equal v; Some(None): mixed.
    for e in net.edges() {
        if e.kind != EdgeKind::Effective {
            continue;
        }
        let class = condensed.class_of[e.target];
        targets[class] = match targets[class] {
            None => Some(Some(e.target)),
            Some(Some(v)) if v == e.target => Some(Some(v)),
            _ => Some(None),
        };
    }
    condensed
        .classes
        .iter()
        .enumerate()
        .map(|(c, members)| match targets[c] {
            Some(Some(v)) => v,
            _ => *members
                .iter()
                .min_by_key(|&&v| net.display_id(v))
                .expect("nonempty class"),
        })
        .collect()
}

/// Checks the two directedness conditions for a section given by internal
/// indices, one per condensed class.
fn directed_with(net: &Gcrn, condensed: &CondensedCrn, section: &[usize]) -> bool {
    let is_rep = |v: usize| section[condensed.class_of[v]] == v;
    for e in net.edges() {
        if e.kind == EdgeKind::Effective && !is_rep(e.target) {
            return false;
        }
    }
    // The phantom edge set must be exactly the fan-out from representatives,
    // without duplicates.
    let mut expected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (c, members) in condensed.classes.iter().enumerate() {
        let rep = section[c];
        for &v in members {
            if v != rep {
                expected.insert((rep, v), 0);
            }
        }
    }
    for e in net.edges() {
        if e.kind != EdgeKind::Phantom {
            continue;
        }
        match expected.get_mut(&(e.source, e.target)) {
            Some(count) => *count += 1,
            None => return false,
        }
    }
    expected.values().all(|&c| c == 1)
}

/// Whether the network is directed with respect to the given representative
/// ids. Rejects invalid sections.
pub fn is_v_star_directed(net: &Gcrn, vstar_ids: &[u32]) -> Result<bool, Error> {
    let condensed = condense(net);
    let section = validate_section(net, &condensed, vstar_ids)?;
    Ok(directed_with(net, &condensed, &section))
}

/// Result of [`redirect`].
#[derive(Clone, Debug)]
pub struct Redirection {
    pub net: Gcrn,
    /// Representative display ids, ordered by condensed class.
    pub vstar: Vec<u32>,
    /// Merged-rate substitutions: each new symbol stands for the sum of the
    /// original symbols.
    pub merges: Vec<(SymbolId, Vec<SymbolId>)>,
    /// Freshly minted phantom labels.
    pub minted_phantoms: Vec<SymbolId>,
    /// Labels of phantom edges that were dropped.
    pub dropped_phantoms: Vec<SymbolId>,
}

impl Redirection {
    /// Substitution map sending every merged symbol to the sum of its parts,
    /// for exact dynamical-equivalence checks.
    pub fn substitution(&self) -> BTreeMap<u32, crate::algebra::Polynomial> {
        self.merges
            .iter()
            .map(|(new, parts)| {
                let mut sum = crate::algebra::Polynomial::zero();
                for p in parts {
                    sum = &sum + &p.poly();
                }
                (new.0, sum)
            })
            .collect()
    }
}

/// Rewires the network to be directed with respect to the given (or default)
/// representatives. The output is always directed; an already-directed input
/// comes back unchanged.
pub fn redirect(net: &Gcrn, vstar_ids: Option<&[u32]>) -> Result<Redirection, Error> {
    let condensed = condense(net);
    let section = match vstar_ids {
        Some(ids) => validate_section(net, &condensed, ids)?,
        None => default_vstar(net, &condensed),
    };
    let rep_of = |v: usize| section[condensed.class_of[v]];

    let mut symbols = net.symbols().clone();
    let mut merges = Vec::new();
    let mut minted = Vec::new();
    let mut dropped = Vec::new();

    // Group effective edges by (source, representative target), preserving
    // first-occurrence order.
    let mut group_order: Vec<(usize, usize)> = Vec::new();
    let mut groups: BTreeMap<(usize, usize), Vec<SymbolId>> = BTreeMap::new();
    for e in net.edges() {
        if e.kind != EdgeKind::Effective {
            continue;
        }
        let key = (e.source, rep_of(e.target));
        if !groups.contains_key(&key) {
            group_order.push(key);
        }
        groups.entry(key).or_default().push(e.label);
    }

    let mut edges: Vec<(usize, usize, SymbolId)> = Vec::new();
    for key in group_order {
        let labels = &groups[&key];
        let label = if labels.len() == 1 {
            labels[0]
        } else {
            let merged = symbols.fresh_merged(labels);
            merges.push((merged, labels.clone()));
            merged
        };
        edges.push((key.0, key.1, label));
    }

    // Phantom fan-out: reuse an existing label when the exact edge is already
    // present, mint a fresh one otherwise.
    let mut reused: Vec<(usize, usize, SymbolId)> = Vec::new();
    for (c, members) in condensed.classes.iter().enumerate() {
        let rep = section[c];
        for &v in members {
            if v == rep {
                continue;
            }
            let existing = net
                .edges()
                .iter()
                .find(|e| e.kind == EdgeKind::Phantom && e.source == rep && e.target == v);
            let label = match existing {
                Some(e) => e.label,
                None => {
                    let id = symbols.fresh_phantom();
                    minted.push(id);
                    id
                }
            };
            reused.push((rep, v, label));
        }
    }
    for e in net.edges() {
        if e.kind == EdgeKind::Phantom
            && !reused
                .iter()
                .any(|&(s, t, l)| s == e.source && t == e.target && l == e.label)
        {
            dropped.push(e.label);
        }
    }
    edges.extend(reused);

    let out = Gcrn::new(
        net.species().to_vec(),
        net.vertices().to_vec(),
        edges,
        symbols,
    )?;
    debug_assert!(directed_with(&out, &condense(&out), &section));

    let mut vstar: Vec<u32> = section.iter().map(|&v| net.display_id(v)).collect();
    vstar.sort_unstable();
    Ok(Redirection { net: out, vstar, merges, minted_phantoms: minted, dropped_phantoms: dropped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::model::{Complex, SymbolRole, SymbolTable, Vertex};

    /// Three vertices, two sharing a stoichiometric complex; edges from 1
    /// into both members of the class.
    fn merge_fixture() -> Gcrn {
        let mut symbols = SymbolTable::new();
        let k1 = symbols.insert("k1", SymbolRole::RateConstant).unwrap();
        let k2 = symbols.insert("k2", SymbolRole::RateConstant).unwrap();
        let k3 = symbols.insert("k3", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let b = Complex::from_pairs([(1, rat(1))]);
        Gcrn::new(
            vec!["A".into(), "B".into()],
            vec![
                Vertex { id: 1, stoich: a.clone(), kinetic: Some(a.clone()) },
                Vertex { id: 2, stoich: b.clone(), kinetic: Some(b.clone()) },
                Vertex { id: 3, stoich: b.clone(), kinetic: Some(a) },
            ],
            vec![(0, 1, k1), (0, 2, k2), (1, 0, k3)],
            symbols,
        )
        .unwrap()
    }

    #[test]
    fn parallel_class_edges_merge_with_summed_rate() {
        let net = merge_fixture();
        let r = redirect(&net, Some(&[1, 2])).unwrap();
        // Edges from vertex 1 into the class {2,3} collapse onto 2.
        let merged_edges: Vec<_> = r
            .net
            .edges()
            .iter()
            .filter(|e| e.source == 0 && e.target == 1)
            .collect();
        assert_eq!(merged_edges.len(), 1);
        let label = merged_edges[0].label;
        assert_eq!(r.net.symbols().name(label), "k1+k2");
        assert_eq!(r.merges.len(), 1);
        // A phantom edge 2 -> 3 is minted.
        assert!(r
            .net
            .edges()
            .iter()
            .any(|e| e.kind == EdgeKind::Phantom && e.source == 1 && e.target == 2));
        assert_eq!(r.minted_phantoms.len(), 1);
    }

    #[test]
    fn invalid_section_rejected() {
        let net = merge_fixture();
        assert!(is_v_star_directed(&net, &[2, 3]).is_err());
        assert!(is_v_star_directed(&net, &[1]).is_err());
        assert!(is_v_star_directed(&net, &[1, 2, 3]).is_err());
    }

    #[test]
    fn redirect_then_check_is_directed() {
        let net = merge_fixture();
        let r = redirect(&net, None).unwrap();
        assert!(is_v_star_directed(&r.net, &r.vstar).unwrap());
    }
}
