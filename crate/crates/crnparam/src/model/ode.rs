//! Symbolic assembly of the mass-action differential equations and of the
//! graph Laplacian.

use std::collections::BTreeMap;

use super::{EdgeKind, Gcrn};
use crate::algebra::{Polynomial, Rat};
use crate::error::Error;

/// A formal species-indexed sum of `rate-polynomial * x^exponents` terms in
/// canonical form: per species, a map from the species-exponent vector of the
/// rate monomial to its symbolic coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeExpression {
    terms: Vec<BTreeMap<Vec<Rat>, Polynomial>>,
}

impl OdeExpression {
    pub fn zero(n_species: usize) -> Self {
        OdeExpression { terms: vec![BTreeMap::new(); n_species] }
    }

    pub fn n_species(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, species: usize, exponents: Vec<Rat>, coeff: Polynomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms[species].get_mut(&exponents) {
            Some(slot) => {
                *slot = &*slot + &coeff;
                if slot.is_zero() {
                    self.terms[species].remove(&exponents);
                }
            }
            None => {
                self.terms[species].insert(exponents, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(BTreeMap::is_empty)
    }

    pub fn species_terms(&self, species: usize) -> impl Iterator<Item = (&Vec<Rat>, &Polynomial)> {
        self.terms[species].iter()
    }

    pub fn contains_symbol(&self, raw: u32) -> bool {
        self.terms
            .iter()
            .flat_map(|m| m.values())
            .any(|p| p.contains_symbol(raw))
    }

    pub fn sub(&self, other: &OdeExpression) -> OdeExpression {
        assert_eq!(self.terms.len(), other.terms.len());
        let mut out = self.clone();
        for (s, terms) in other.terms.iter().enumerate() {
            for (exp, p) in terms {
                out.add_term(s, exp.clone(), -p);
            }
        }
        out
    }

    /// Replaces symbols by polynomials in every coefficient (used to check
    /// dynamical equivalence across merged rate symbols).
    pub fn substitute_symbols(&self, map: &BTreeMap<u32, Polynomial>) -> OdeExpression {
        let mut out = OdeExpression::zero(self.terms.len());
        for (s, terms) in self.terms.iter().enumerate() {
            for (exp, p) in terms {
                let mut q = p.clone();
                for (&sym, value) in map {
                    if q.contains_symbol(sym) {
                        q = q.substitute_poly(sym, value);
                    }
                }
                out.add_term(s, exp.clone(), q);
            }
        }
        out
    }

    pub fn render(&self, species: &[String], name_of: &dyn Fn(u32) -> String) -> String {
        use crate::algebra::poly::format_rat;
        use num::{One, Zero};
        let mut lines = Vec::new();
        for (s, terms) in self.terms.iter().enumerate() {
            let mut parts = Vec::new();
            for (exp, p) in terms {
                let coeff = if p.term_count() > 1 {
                    format!("({})", p.render(name_of))
                } else {
                    p.render(name_of)
                };
                let mut mono = String::new();
                for (i, e) in exp.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    mono.push('*');
                    mono.push_str(&species[i]);
                    if !e.is_one() {
                        mono.push_str(&format!("^{}", format_rat(e)));
                    }
                }
                parts.push(format!("{coeff}{mono}"));
            }
            let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            lines.push(format!("d{}/dt = {}", species[s], rhs));
        }
        lines.join("\n")
    }

    /// Numeric evaluation of one species' right-hand side at a state,
    /// returning `(value, max_abs_term)` for relative residual scaling.
    pub fn eval_species(
        &self,
        species: usize,
        x: &[f64],
        value_of: &dyn Fn(u32) -> f64,
    ) -> (f64, f64) {
        use num::ToPrimitive;
        let mut acc = 0.0;
        let mut max_term: f64 = 0.0;
        for (exp, p) in &self.terms[species] {
            let mut t = p.eval_f64(value_of);
            for (i, e) in exp.iter().enumerate() {
                let ef = e.to_f64().unwrap_or(f64::NAN);
                t *= x[i].powf(ef);
            }
            acc += t;
            max_term = max_term.max(t.abs());
        }
        (acc, max_term)
    }
}

/// Assembles the right-hand side of the associated differential equations:
/// for each edge, the rate symbol times the kinetic-order monomial of its
/// source times the difference of stoichiometric complexes. Phantom edges
/// contribute nothing and are skipped.
pub fn ode_rhs(net: &Gcrn) -> Result<OdeExpression, Error> {
    let n = net.n_species();
    let mut out = OdeExpression::zero(n);
    for e in net.edges() {
        if e.kind == EdgeKind::Phantom {
            continue;
        }
        let src = &net.vertices()[e.source];
        let tgt = &net.vertices()[e.target];
        let kinetic = src
            .kinetic
            .as_ref()
            .ok_or(Error::MissingKinetic { vertex: src.id })?;
        let exponents = kinetic.dense(n);
        let diff = tgt.stoich.sub(&src.stoich);
        for (s, c) in diff.iter() {
            out.add_term(s, exponents.clone(), e.label.poly().scale(c));
        }
    }
    Ok(out)
}

/// A square matrix of polynomials in the rate symbols.
pub type SymbolicMatrix = Vec<Vec<Polynomial>>;

/// The Laplacian of the labeled graph: entry `(j, i)` sums the labels of
/// edges `i -> j`; diagonal entries subtract each vertex's outgoing labels,
/// so every column sums to zero.
pub fn laplacian(net: &Gcrn) -> SymbolicMatrix {
    let m = net.vertices().len();
    let mut a = vec![vec![Polynomial::zero(); m]; m];
    for e in net.edges() {
        let k = e.label.poly();
        a[e.target][e.source] = &a[e.target][e.source] + &k;
        a[e.source][e.source] = &a[e.source][e.source] - &k;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::model::{Complex, SymbolRole, SymbolTable, Vertex};

    /// Single reaction A -> B.
    fn single_edge_net() -> Gcrn {
        let mut symbols = SymbolTable::new();
        let k = symbols.insert("k", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let b = Complex::from_pairs([(1, rat(1))]);
        Gcrn::new(
            vec!["A".into(), "B".into()],
            vec![
                Vertex { id: 1, stoich: a.clone(), kinetic: Some(a) },
                Vertex { id: 2, stoich: b, kinetic: None },
            ],
            vec![(0, 1, k)],
            SymbolTable::clone(&symbols),
        )
        .unwrap()
    }

    #[test]
    fn laplacian_of_single_edge() {
        let net = single_edge_net();
        let a = laplacian(&net);
        let k = Polynomial::symbol(0);
        assert_eq!(a[0][0], -&k);
        assert_eq!(a[1][0], k);
        assert!(a[0][1].is_zero());
        assert!(a[1][1].is_zero());
    }

    #[test]
    fn laplacian_columns_sum_to_zero() {
        let net = single_edge_net();
        let a = laplacian(&net);
        for col in 0..2 {
            let mut sum = Polynomial::zero();
            for row in &a {
                sum = &sum + &row[col];
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn phantom_only_network_has_zero_ode() {
        let mut symbols = SymbolTable::new();
        let k = symbols.insert("k", SymbolRole::RateConstant).unwrap();
        let a = Complex::from_pairs([(0, rat(1))]);
        let net = Gcrn::new(
            vec!["A".into()],
            vec![
                Vertex { id: 1, stoich: a.clone(), kinetic: Some(a.clone()) },
                Vertex { id: 2, stoich: a.clone(), kinetic: Some(a) },
            ],
            vec![(0, 1, k)],
            symbols,
        )
        .unwrap();
        let f = ode_rhs(&net).unwrap();
        assert!(f.is_zero());
        assert!(!f.contains_symbol(0));
    }
}
