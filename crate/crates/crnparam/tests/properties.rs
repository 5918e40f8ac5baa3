//! Property tests for the exact algebra layer and the remaining structural
//! invariants: ring laws, row-reduction contracts, condensation idempotence,
//! invariance of the parametrized set under the choice of generalized
//! inverse, and stability of the emitters.

mod common;

use std::collections::BTreeMap;

use common::*;
use crnparam::algebra::{rat, Monomial, Polynomial, Rat, RationalFunction, RationalMatrix};
use crnparam::model::{condense, redirect, structure_report, Complex, SymbolRole, SymbolTable, Vertex};
use crnparam::param::{emit, parametrize, Coefficient, EmitFormat};
use crnparam::parse::{parse_network, parse_scheme, render_network};
use crnparam::translate::translate;
use crnparam::verify::numeric_verify;
use proptest::prelude::*;

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    // Up to four terms over three symbols with small exponents and
    // coefficients.
    prop::collection::vec(
        (
            prop::collection::vec((0u32..3, 1u32..3), 0..3),
            -3i64..=3,
        ),
        0..4,
    )
    .prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (factors, c) in terms {
            let m = Monomial::from_factors(factors);
            p = &p + &Polynomial::term(m, rat(c));
        }
        p
    })
}

fn arb_point() -> impl Strategy<Value = BTreeMap<u32, Rat>> {
    (1i64..=7, 1i64..=7, 1i64..=7).prop_map(|(a, b, c)| {
        BTreeMap::from([(0, rat(a)), (1, rat(b)), (2, rat(c))])
    })
}

proptest! {
    #[test]
    fn polynomial_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        // Associativity and distributivity.
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), pt in arb_point()) {
        let sum = &a + &b;
        let product = &a * &b;
        prop_assert_eq!(sum.eval_exact(&pt), a.eval_exact(&pt) + b.eval_exact(&pt));
        prop_assert_eq!(product.eval_exact(&pt), a.eval_exact(&pt) * b.eval_exact(&pt));
    }
}

#[test]
fn rref_contract_on_random_matrices() {
    let mut rng = rng(11);
    for _ in 0..60 {
        let a = random_matrix(&mut rng, 6, 7);
        let res = a.rref_with_transform();
        assert_eq!(res.p.matmul(&a), res.r, "P*A != R");
        assert!(res.r.is_rref(), "not in reduced echelon form");
        // P is invertible: it reduces to the identity.
        assert_eq!(res.p.rank(), a.rows());
    }
}

#[test]
fn kernel_basis_contract_on_random_matrices() {
    let mut rng = rng(12);
    for _ in 0..60 {
        let a = random_matrix(&mut rng, 6, 7);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), a.cols() - a.rank());
        if k.cols() > 0 {
            assert!(a.matmul(&k).is_zero(), "kernel columns not annihilated");
            assert_eq!(k.rank(), k.cols(), "kernel columns dependent");
        }
    }
}

#[test]
fn rf_equality_is_an_equivalence_relation() {
    let mut rng = rng(13);
    // A fixed sample of rational functions, including deliberately equal
    // pairs written differently.
    let mut sample: Vec<RationalFunction> = Vec::new();
    for _ in 0..8 {
        let num = random_matrix(&mut rng, 1, 1);
        let _ = num;
        let a = rat(rng.random_range(1i64..=4));
        let p = &Polynomial::symbol(0).scale(&a) + &Polynomial::symbol(1);
        let q = &Polynomial::symbol(1) + &Polynomial::constant(rat(rng.random_range(1i64..=3)));
        sample.push(RationalFunction::new(p.clone(), q.clone()).unwrap());
        // The same function scaled through a common factor.
        let f = &Polynomial::symbol(2) + &Polynomial::constant(rat(2));
        sample.push(RationalFunction::new(&p * &f, &q * &f).unwrap());
    }
    for a in &sample {
        assert!(a.eq_rf(a));
    }
    for a in &sample {
        for b in &sample {
            assert_eq!(a.eq_rf(b), b.eq_rf(a));
        }
    }
    for a in &sample {
        for b in &sample {
            for c in &sample {
                if a.eq_rf(b) && b.eq_rf(c) {
                    assert!(a.eq_rf(c), "transitivity violated");
                }
            }
        }
    }
}

#[test]
fn condense_is_idempotent_up_to_isomorphism() {
    let mut rng = rng(14);
    for _ in 0..40 {
        let net = random_gcrn_with_classes(&mut rng, 6);
        let c1 = condense(&net);
        let rebuilt = c1.to_crn(net.species()).unwrap();
        let c2 = condense(&rebuilt);
        // Classes of a classical network are singletons, and the edge sets
        // correspond one-to-one through the class complexes.
        assert_eq!(c2.class_count(), c1.class_count());
        assert!(c2.classes.iter().all(|m| m.len() == 1));
        let map: Vec<usize> = c2
            .complexes
            .iter()
            .map(|cx| c1.complexes.iter().position(|d| d == cx).unwrap())
            .collect();
        let mapped: std::collections::BTreeSet<(usize, usize)> =
            c2.edges.iter().map(|&(a, b)| (map[a], map[b])).collect();
        assert_eq!(mapped, c1.edges);
    }
}

fn histidine_parametrization() -> (crnparam::model::Gcrn, crnparam::param::Parametrization) {
    let parsed = parse_network(&fixture("histidine.mas")).unwrap();
    let scheme = parse_scheme(&fixture("histidine.scheme"), &parsed).unwrap();
    let t = translate(&parsed.net, &scheme).unwrap();
    let r = redirect(&t.net, None).unwrap();
    let p = parametrize(&r.net, &r.vstar).unwrap();
    (r.net, p)
}

/// Two different valid generalized inverses parametrize the same set: points
/// produced with `H' = H + B w^T` satisfy the same defining residuals.
#[test]
fn parametrization_is_invariant_under_generalized_inverse_choice() {
    use num::ToPrimitive;
    let (net, p) = histidine_parametrization();
    let mt = p.m_matrix.transpose();

    // B w^T has columns in ker M^T, so H' is again a generalized inverse.
    let w = RationalMatrix::from_i64(&[&[1, -2, 3]]);
    let correction = p.b_matrix.matmul(&w);
    let mut h_alt = RationalMatrix::zero(p.h_matrix.rows(), p.h_matrix.cols());
    for i in 0..h_alt.rows() {
        for j in 0..h_alt.cols() {
            h_alt.set(i, j, p.h_matrix.at(i, j) + correction.at(i, j));
        }
    }
    assert_eq!(mt.matmul(&h_alt).matmul(&mt), mt);
    assert_ne!(h_alt, p.h_matrix);

    let mut alt = p.clone();
    alt.h_matrix = h_alt.clone();
    for comp in &mut alt.components {
        let mut acc = RationalFunction::one();
        for (e, entry) in p.kappa.entries.iter().enumerate() {
            let exp = h_alt.at(comp.species, e).to_integer().to_i64().unwrap();
            if exp != 0 {
                acc = &acc * &entry.pow_i64(exp).unwrap();
            }
        }
        comp.coefficient = Coefficient::Rational(acc);
    }
    // Twenty sampled points from the alternative construction satisfy the
    // original defining equations (which do not involve H).
    let report = numeric_verify(&net, &alt, 20, 99, 1e-8).unwrap();
    assert!(report.pass, "alternative inverse fails residuals: {report:?}");
}

/// Fractional entries in the generalized inverse fall back to explicit
/// rational powers; the numeric checks still hold.
#[test]
fn fractional_kinetic_orders_use_rational_powers() {
    let text = "@species A B\n@gcrn\nv1:[A | 2*A] -> v2:[B | B] ; k1\nv2:[B | B] -> v1:[A | 2*A] ; k2\n";
    let parsed = parse_network(text).unwrap();
    let r = redirect(&parsed.net, None).unwrap();
    let p = parametrize(&r.net, &r.vstar).unwrap();
    assert!(
        p.components
            .iter()
            .any(|c| matches!(c.coefficient, Coefficient::Powers(_))),
        "expected a rational-power coefficient"
    );
    let report = numeric_verify(&r.net, &p, 50, 3, 1e-8).unwrap();
    assert!(report.pass, "residuals: {report:?}");
}

/// Emission is deterministic, and the machine-readable document evaluates to
/// the same numbers as the in-memory parametrization.
#[test]
fn emitted_json_is_stable_and_evaluates_identically() {
    let (_, p) = histidine_parametrization();
    let doc1 = emit(&p, EmitFormat::Json);
    let doc2 = emit(&p, EmitFormat::Json);
    assert_eq!(doc1, doc2);

    let parsed: serde_json::Value = serde_json::from_str(&doc1).unwrap();
    let names: Vec<String> = p
        .symbols
        .ids()
        .map(|id| p.symbols.name(id).to_string())
        .collect();
    let value_of = |raw: u32| 0.25 + (raw as f64) * 0.75;
    let lookup = |name: &str| -> f64 {
        value_of(names.iter().position(|n| n == name).unwrap() as u32)
    };

    let eval_poly = |terms: &serde_json::Value| -> f64 {
        let mut acc = 0.0;
        for term in terms.as_array().unwrap() {
            let coeff_str = term["coeff"].as_str().unwrap();
            let mut t = match coeff_str.split_once('/') {
                Some((n, d)) => n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap(),
                None => coeff_str.parse::<f64>().unwrap(),
            };
            for factor in term["monomial"].as_array().unwrap() {
                let id = factor[0].as_u64().unwrap() as u32;
                let e = factor[1].as_u64().unwrap() as i32;
                t *= value_of(id).powi(e);
            }
            acc += t;
        }
        acc
    };

    let taus: Vec<f64> = p
        .tau_symbols
        .iter()
        .map(|&t| value_of(t.0))
        .collect();
    for (i, comp) in parsed["components"].as_array().unwrap().iter().enumerate() {
        let coeff = &comp["coefficient"];
        let mut x = match coeff["kind"].as_str().unwrap() {
            "rational" => {
                eval_poly(&coeff["value"]["num"]) / eval_poly(&coeff["value"]["den"])
            }
            _ => panic!("fixture coefficients are rational"),
        };
        for (t, e) in comp["tau_exponents"].as_array().unwrap().iter().enumerate() {
            let e = e.as_str().unwrap().parse::<f64>().unwrap();
            x *= taus[t].powf(e);
        }
        let direct = p.components[i].eval_f64(&|raw| value_of(raw), &taus);
        assert!(
            (x - direct).abs() <= 1e-12 * direct.abs().max(1.0),
            "component {i}: document gives {x}, memory gives {direct}"
        );
        let _ = lookup;
    }
}

/// Rendered networks reparse to the same model for every fixture.
#[test]
fn fixture_round_trips() {
    for file in [
        "histidine.gcrn",
        "example22.gcrn",
        "wnt.gcrn",
        "histidine.mas",
        "envz.mas",
        "wnt.mas",
    ] {
        let parsed = parse_network(&fixture(file)).unwrap();
        let rendered = render_network(&parsed.net);
        let again = parse_network(&rendered).unwrap();
        assert_eq!(parsed.net.species(), again.net.species(), "{file}");
        assert_eq!(parsed.net.vertices(), again.net.vertices(), "{file}");
        let edges_a: Vec<_> = parsed
            .net
            .edges()
            .iter()
            .map(|e| (e.source, e.target, parsed.net.symbols().name(e.label).to_string()))
            .collect();
        let edges_b: Vec<_> = again
            .net
            .edges()
            .iter()
            .map(|e| (e.source, e.target, again.net.symbols().name(e.label).to_string()))
            .collect();
        assert_eq!(edges_a, edges_b, "{file}");
        // Structure reports agree as well.
        let ra = structure_report(&parsed.net);
        let rb = structure_report(&again.net);
        assert_eq!(ra.deficiency, rb.deficiency, "{file}");
        assert_eq!(ra.weakly_reversible, rb.weakly_reversible, "{file}");
    }
}

/// Zero-sample verification passes trivially.
#[test]
fn zero_sample_verification_is_trivially_green() {
    let (net, p) = histidine_parametrization();
    let report = numeric_verify(&net, &p, 0, 42, 1e-8).unwrap();
    assert!(report.pass);
    assert!(report.per_sample.is_empty());
}

/// Redirection of an already-directed network is the identity.
#[test]
fn redirect_is_a_fixed_point_on_directed_fixtures() {
    for file in ["histidine.gcrn", "wnt.gcrn"] {
        let parsed = parse_network(&fixture(file)).unwrap();
        let r = redirect(&parsed.net, None).unwrap();
        assert!(r.merges.is_empty(), "{file}");
        assert!(r.minted_phantoms.is_empty(), "{file}");
        assert!(r.dropped_phantoms.is_empty(), "{file}");
        assert_eq!(parsed.net.vertices(), r.net.vertices(), "{file}");
        let before: Vec<_> = parsed.net.edges().iter().map(|e| (e.source, e.target)).collect();
        let after: Vec<_> = r.net.edges().iter().map(|e| (e.source, e.target)).collect();
        // Same edge multiset; redirection may reorder phantom edges.
        let mut b = before.clone();
        let mut a = after.clone();
        b.sort_unstable();
        a.sort_unstable();
        assert_eq!(a, b, "{file}");
    }
}

/// Networks made entirely of vertices with one shared stoichiometric complex
/// condense to a single class with no edges.
#[test]
fn all_phantom_network_condenses_to_a_point() {
    let mut symbols = SymbolTable::new();
    let k1 = symbols.insert("k1", SymbolRole::RateConstant).unwrap();
    let k2 = symbols.insert("k2", SymbolRole::RateConstant).unwrap();
    let shared = Complex::from_pairs([(0, rat(1))]);
    let kin = |s: usize| Complex::from_pairs([(s, rat(1))]);
    let net = crnparam::model::Gcrn::new(
        vec!["A".into(), "B".into()],
        vec![
            Vertex { id: 1, stoich: shared.clone(), kinetic: Some(kin(0)) },
            Vertex { id: 2, stoich: shared.clone(), kinetic: Some(kin(1)) },
        ],
        vec![(0, 1, k1), (1, 0, k2)],
        symbols,
    )
    .unwrap();
    let c = condense(&net);
    assert_eq!(c.class_count(), 1);
    assert!(c.edges.is_empty());
    let f = crnparam::model::ode_rhs(&net).unwrap();
    assert!(f.is_zero());
}
