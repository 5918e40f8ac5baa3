//! Construction of the symbolic equilibrium parametrization.
//!
//! For a weakly reversible network with kinetic-order matrix differences `M`
//! along a spanning forest, the complex-balanced equilibria satisfy
//! `M^T ln x = ln kappa`. With a generalized inverse `H` of `M^T` and a
//! kernel basis `B` of `M^T`, every solution is
//! `x = kappa^(H^T) * tau^(B^T)` over positive free parameters. When the
//! kinetic deficiency is positive, the compatibility conditions
//! `kappa^C = 1` (with `C` a kernel basis of `M`) are first solved for
//! phantom-edge parameters.

use std::collections::BTreeSet;

use num::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{Polynomial, Rat, RationalFunction, RationalMatrix};
use crate::error::Error;
use crate::model::{
    condense, is_v_star_directed, linkage_structure, structure_report, EdgeKind, Gcrn, SymbolId,
    SymbolTable,
};
use crate::trees::{choose_forest, kappa, tree_constants_cofactor, KappaVector, SpanningForest};

/// Matrix of kinetic-complex differences along the forest edges: one column
/// `kinetic(j) - kinetic(i)` per forest edge `(i, j)`.
pub fn build_m(net: &Gcrn, forest: &SpanningForest) -> Result<RationalMatrix, Error> {
    let n = net.n_species();
    let mut m = RationalMatrix::zero(n, forest.len());
    for (col, &(i, j)) in forest.edges.iter().enumerate() {
        let ki = net.vertices()[i]
            .kinetic
            .as_ref()
            .ok_or(Error::MissingKinetic { vertex: net.display_id(i) })?;
        let kj = net.vertices()[j]
            .kinetic
            .as_ref()
            .ok_or(Error::MissingKinetic { vertex: net.display_id(j) })?;
        for (s, c) in kj.sub(ki).iter() {
            m.set(s, col, c.clone());
        }
    }
    Ok(m)
}

/// Decision for the equilibrium-set question: the positive equilibria agree
/// with the parametrized complex-balanced set exactly when the effective
/// deficiency vanishes and the network is directed for the given
/// representatives.
pub fn theorem_main_verdict(net: &Gcrn, vstar_ids: &[u32]) -> Result<bool, Error> {
    let directed = is_v_star_directed(net, vstar_ids)?;
    let report = structure_report(net);
    Ok(report.effective_deficiency == 0 && directed)
}

/// Symbolic coefficient of one species: either a plain rational function
/// (integer exponents) or a product of rational powers.
#[derive(Clone, Debug)]
pub enum Coefficient {
    Rational(RationalFunction),
    Powers(Vec<(RationalFunction, Rat)>),
}

impl Coefficient {
    pub fn as_rational(&self) -> Option<&RationalFunction> {
        match self {
            Coefficient::Rational(rf) => Some(rf),
            Coefficient::Powers(_) => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<u32> {
        match self {
            Coefficient::Rational(rf) => rf.symbols(),
            Coefficient::Powers(factors) => {
                factors.iter().flat_map(|(rf, _)| rf.symbols()).collect()
            }
        }
    }

    pub fn eval_f64(&self, value_of: &dyn Fn(u32) -> f64) -> f64 {
        match self {
            Coefficient::Rational(rf) => rf.eval_f64(value_of),
            Coefficient::Powers(factors) => factors
                .iter()
                .map(|(rf, e)| rf.eval_f64(value_of).powf(e.to_f64().unwrap_or(f64::NAN)))
                .product(),
        }
    }

    pub fn render(&self, name_of: &dyn Fn(u32) -> String) -> String {
        match self {
            Coefficient::Rational(rf) => rf.render(name_of),
            Coefficient::Powers(factors) => {
                if factors.is_empty() {
                    return "1".to_string();
                }
                factors
                    .iter()
                    .map(|(rf, e)| {
                        format!(
                            "({})^({})",
                            rf.render(name_of),
                            crate::algebra::poly::format_rat(e)
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" * ")
            }
        }
    }
}

/// Per-species factor of the parametrization: `coefficient * tau^exponents`.
#[derive(Clone, Debug)]
pub struct ParamComponent {
    pub species: usize,
    pub coefficient: Coefficient,
    pub tau_exponents: Vec<Rat>,
}

impl ParamComponent {
    pub fn eval_f64(&self, value_of: &dyn Fn(u32) -> f64, tau: &[f64]) -> f64 {
        let mut x = self.coefficient.eval_f64(value_of);
        for (t, e) in self.tau_exponents.iter().enumerate() {
            if !e.is_zero() {
                x *= tau[t].powf(e.to_f64().unwrap_or(f64::NAN));
            }
        }
        x
    }

    /// The component as a single rational function including the tau powers;
    /// `None` when any exponent is fractional.
    pub fn as_rational_with_tau(
        &self,
        tau_symbols: &[SymbolId],
    ) -> Result<Option<RationalFunction>, Error> {
        let Some(base) = self.coefficient.as_rational() else {
            return Ok(None);
        };
        let mut acc = base.clone();
        for (t, e) in self.tau_exponents.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !e.is_integer() {
                return Ok(None);
            }
            let exp = e.to_integer().to_i64().ok_or_else(|| {
                Error::InvalidNetwork("tau exponent out of range".to_string())
            })?;
            let tau_rf = RationalFunction::from_poly(tau_symbols[t].poly());
            acc = &acc * &tau_rf.pow_i64(exp)?;
        }
        Ok(Some(acc))
    }
}

/// The assembled positive parametrization of the complex-balanced set.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub species: Vec<String>,
    pub components: Vec<ParamComponent>,
    /// Phantom symbols that remain free parameters.
    pub free_phantoms: Vec<SymbolId>,
    /// Phantom symbols eliminated by the compatibility conditions, with their
    /// solved values.
    pub solved_phantoms: Vec<(SymbolId, RationalFunction)>,
    pub tau_symbols: Vec<SymbolId>,
    pub x_equals_zbar: bool,
    pub kinetic_deficiency: usize,
    /// Symbol table extended with the tau parameters.
    pub symbols: SymbolTable,
    pub forest: SpanningForest,
    pub m_matrix: RationalMatrix,
    pub h_matrix: RationalMatrix,
    pub b_matrix: RationalMatrix,
    /// Tree-constant quotients with solved phantoms substituted.
    pub kappa: KappaVector,
    /// Compatibility conditions before solving, one per kernel column of `M`.
    pub conditions: Vec<RationalFunction>,
}

impl Parametrization {
    pub fn tau_count(&self) -> usize {
        self.tau_symbols.len()
    }
}

/// Dispatches on the kinetic deficiency: the direct construction when it is
/// zero, the condition-solving path otherwise.
pub fn parametrize(net: &Gcrn, vstar_ids: &[u32]) -> Result<Parametrization, Error> {
    let forest = choose_forest(net);
    let m = build_m(net, &forest)?;
    let delta_tilde = forest.len() - m.rank();
    if delta_tilde == 0 {
        parametrize_zero(net, vstar_ids, &forest, m)
    } else {
        parametrize_positive_deficiency(net, vstar_ids, &forest, m, delta_tilde)
    }
}

fn require_weakly_reversible(net: &Gcrn) -> Result<(), Error> {
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
    Ok(())
}

fn phantom_symbols(net: &Gcrn) -> Vec<SymbolId> {
    let mut out: Vec<SymbolId> = net
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Phantom)
        .map(|e| e.label)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Zero kinetic deficiency: `M^T` has full row rank, every positive kappa is
/// compatible, and the parametrization follows directly from `H` and `B`.
pub fn parametrize_zero(
    net: &Gcrn,
    vstar_ids: &[u32],
    forest: &SpanningForest,
    m: RationalMatrix,
) -> Result<Parametrization, Error> {
    require_weakly_reversible(net)?;
    let delta_tilde = forest.len() - m.rank();
    if delta_tilde != 0 {
        return Err(Error::KineticDeficiencyMismatch { expected: 0, found: delta_tilde });
    }
    let constants = tree_constants_cofactor(net)?;
    let kv = kappa(&constants, forest)?;
    assemble(
        net,
        vstar_ids,
        forest,
        m,
        &constants,
        kv,
        phantom_symbols(net),
        Vec::new(),
        Vec::new(),
        0,
    )
}

/// Positive kinetic deficiency: solves the compatibility conditions
/// `kappa^C = 1` for phantom parameters, one condition at a time, then
/// proceeds as in the zero-deficiency case over the reduced free set.
pub fn parametrize_positive_deficiency(
    net: &Gcrn,
    vstar_ids: &[u32],
    forest: &SpanningForest,
    m: RationalMatrix,
    delta_tilde: usize,
) -> Result<Parametrization, Error> {
    require_weakly_reversible(net)?;
    let found = forest.len() - m.rank();
    if found != delta_tilde || delta_tilde == 0 {
        return Err(Error::KineticDeficiencyMismatch { expected: delta_tilde, found });
    }
    let mut free = phantom_symbols(net);
    if free.len() < delta_tilde {
        return Err(Error::TooFewPhantoms { needed: delta_tilde, available: free.len() });
    }
    let constants = tree_constants_cofactor(net)?;
    let mut kv = kappa(&constants, forest)?;

    let c = m.kernel_basis();
    debug_assert_eq!(c.cols(), delta_tilde);
    let mut conditions = Vec::with_capacity(delta_tilde);
    for t in 0..delta_tilde {
        conditions.push(condition_from_column(&constants, forest, &c, t)?);
    }

    let mut pending = conditions.clone();
    let mut solved: Vec<(SymbolId, RationalFunction)> = Vec::new();
    for idx in 0..pending.len() {
        let cond = pending[idx].clone();
        if cond.is_one() {
            continue;
        }
        let (phantom, value) = solve_condition(&cond, &free)?;
        // Eliminate the solved symbol everywhere downstream.
        for later in pending.iter_mut().skip(idx + 1) {
            *later = later.substitute(phantom.0, &value)?;
        }
        for entry in &mut kv.entries {
            *entry = entry.substitute(phantom.0, &value)?;
        }
        free.retain(|&p| p != phantom);
        solved.push((phantom, value));
    }

    assemble(net, vstar_ids, forest, m, &constants, kv, free, solved, conditions, delta_tilde)
}

/// Builds one compatibility condition `kappa^c = 1` as a rational function,
/// assembling numerator and denominator as multisets of tree constants and
/// cancelling equal factors before expanding. With a star forest every
/// quotient shares its class root constant, so this keeps the phantom degree
/// of the cross-multiplied condition minimal.
fn condition_from_column(
    constants: &crate::trees::TreeConstants,
    forest: &SpanningForest,
    c: &RationalMatrix,
    column: usize,
) -> Result<RationalFunction, Error> {
    let mut num: Vec<&Polynomial> = Vec::new();
    let mut den: Vec<&Polynomial> = Vec::new();
    for (e, &(i, j)) in forest.edges.iter().enumerate() {
        let exp = c
            .at(e, column)
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::InvalidNetwork("kernel entry out of range".into()))?;
        let (copies, top, bottom) = if exp >= 0 { (exp, j, i) } else { (-exp, i, j) };
        for _ in 0..copies {
            num.push(&constants.constants[top]);
            den.push(&constants.constants[bottom]);
        }
    }
    let mut den_left = den;
    let mut num_left: Vec<&Polynomial> = Vec::new();
    'outer: for f in num {
        for (idx, d) in den_left.iter().enumerate() {
            if *d == f {
                den_left.remove(idx);
                continue 'outer;
            }
        }
        num_left.push(f);
    }
    let product =
        |fs: &[&Polynomial]| fs.iter().fold(Polynomial::one(), |acc, f| &acc * *f);
    RationalFunction::new(product(&num_left), product(&den_left))
}

/// Finds the lowest-id free phantom symbol in which the cross-multiplied
/// condition has a rational positive root: directly for linear occurrence,
/// via an exact square root of the discriminant for quadratic occurrence.
fn solve_condition(
    cond: &RationalFunction,
    free: &[SymbolId],
) -> Result<(SymbolId, RationalFunction), Error> {
    let p = cond.num() - cond.den();
    if p.is_zero() {
        return Err(Error::ConditionNotSolvable {
            conditions: vec!["condition is trivially satisfied".into()],
        });
    }
    for &phantom in free {
        let roots = match p.degree_in(phantom.0) {
            1 => {
                let coeffs = p.coefficients_in(phantom.0);
                vec![RationalFunction::new(-&coeffs[0], coeffs[1].clone())?]
            }
            2 => {
                let coeffs = p.coefficients_in(phantom.0);
                let (c0, c1, c2) = (&coeffs[0], &coeffs[1], &coeffs[2]);
                let disc = &(c1 * c1) - &(c2 * c0).scale(&crate::algebra::rat(4));
                let Some(root) = disc.sqrt() else { continue };
                let two_c2 = c2.scale(&crate::algebra::rat(2));
                vec![
                    RationalFunction::new(&root - c1, two_c2.clone())?,
                    RationalFunction::new(-&(&root + c1), two_c2)?,
                ]
            }
            _ => continue,
        };
        // A valid solution must satisfy the condition identically and be a
        // positive function of the remaining symbols.
        let mut positive: Vec<RationalFunction> = Vec::new();
        for candidate in roots {
            let residue = crate::algebra::ratfun::substitute_poly_rf(&p, phantom.0, &candidate)?;
            if residue.is_zero() && is_positive_sample(&candidate) {
                positive.push(candidate);
            }
        }
        match positive.len() {
            1 => return Ok((phantom, positive.remove(0))),
            0 => continue,
            _ => {
                return Err(Error::ConditionNotSolvable {
                    conditions: vec![format!(
                        "multiple positive roots for phantom symbol id {}",
                        phantom.0
                    )],
                })
            }
        }
    }
    Err(Error::ConditionNotSolvable {
        conditions: vec![
            "no free phantom symbol occurs linearly or quadratically with a rational root".into(),
        ],
    })
}

/// Evaluates at two fixed positive points to decide the sign of a candidate
/// solution.
fn is_positive_sample(rf: &RationalFunction) -> bool {
    const PRIMES: [f64; 12] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0, 37.0];
    for offset in 0..2u32 {
        let value_of = move |raw: u32| PRIMES[((raw + offset) % 12) as usize] / 7.0;
        let v = rf.eval_f64(&value_of);
        if v.is_finite() {
            return v > 0.0;
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    net: &Gcrn,
    vstar_ids: &[u32],
    forest: &SpanningForest,
    m: RationalMatrix,
    constants: &crate::trees::TreeConstants,
    kv: KappaVector,
    free_phantoms: Vec<SymbolId>,
    solved_phantoms: Vec<(SymbolId, RationalFunction)>,
    conditions: Vec<RationalFunction>,
    kinetic_deficiency: usize,
) -> Result<Parametrization, Error> {
    let mt = m.transpose();
    let h = mt.generalized_inverse();
    let b = mt.kernel_basis();
    let x_equals_zbar = theorem_main_verdict(net, vstar_ids)?;

    let mut symbols = net.symbols().clone();
    let tau_symbols: Vec<SymbolId> = (0..b.cols()).map(|_| symbols.fresh_tau()).collect();

    let n = net.n_species();
    let mut components = Vec::with_capacity(n);
    for s in 0..n {
        let exponents: Vec<Rat> = (0..h.cols()).map(|e| h.at(s, e).clone()).collect();
        let coefficient = if exponents.iter().all(Rat::is_integer) {
            // Build from tree-constant factors with cancellation, then
            // eliminate solved phantoms once at the end; this keeps
            // coefficients far smaller than multiplying the quotients.
            let mut num: Vec<&Polynomial> = Vec::new();
            let mut den: Vec<&Polynomial> = Vec::new();
            for (e, exp) in exponents.iter().enumerate() {
                let i = exp
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidNetwork("exponent out of range".into()))?;
                let (i0, j0) = forest.edges[e];
                let (copies, top, bottom) = if i >= 0 { (i, j0, i0) } else { (-i, i0, j0) };
                for _ in 0..copies {
                    num.push(&constants.constants[top]);
                    den.push(&constants.constants[bottom]);
                }
            }
            let mut den_left = den;
            let mut num_left: Vec<&Polynomial> = Vec::new();
            'outer: for f in num {
                for (idx, d) in den_left.iter().enumerate() {
                    if *d == f {
                        den_left.remove(idx);
                        continue 'outer;
                    }
                }
                num_left.push(f);
            }
            let product =
                |fs: &[&Polynomial]| fs.iter().fold(Polynomial::one(), |acc, f| &acc * *f);
            let mut acc = RationalFunction::new(product(&num_left), product(&den_left))?;
            for (sym, value) in &solved_phantoms {
                acc = acc.substitute(sym.0, value)?;
            }
            Coefficient::Rational(acc)
        } else {
            Coefficient::Powers(
                exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, exp)| !exp.is_zero())
                    .map(|(e, exp)| (kv.entries[e].clone(), exp.clone()))
                    .collect(),
            )
        };
        let tau_exponents = (0..b.cols()).map(|t| b.at(s, t).clone()).collect();
        components.push(ParamComponent { species: s, coefficient, tau_exponents });
    }

    Ok(Parametrization {
        species: net.species().to_vec(),
        components,
        free_phantoms,
        solved_phantoms,
        tau_symbols,
        x_equals_zbar,
        kinetic_deficiency,
        symbols,
        forest: forest.clone(),
        m_matrix: m,
        h_matrix: h,
        b_matrix: b,
        kappa: kv,
        conditions,
    })
}

/// Robustness report: a species is concentration-robust when its component
/// carries no free parameter at all.
#[derive(Clone, Debug, Serialize)]
pub struct AcrEntry {
    pub species: String,
    pub robust: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcrReport {
    pub entries: Vec<AcrEntry>,
}

impl AcrReport {
    pub fn robust_species(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.robust)
            .map(|e| e.species.as_str())
            .collect()
    }
}

/// Flags species whose component has all-zero tau exponents and a coefficient
/// free of every free phantom symbol.
pub fn detect_acr(p: &Parametrization) -> AcrReport {
    let namer = p.symbols.namer();
    let entries = p
        .components
        .iter()
        .map(|comp| {
            let tau_free = comp.tau_exponents.iter().all(Rat::is_zero);
            let symbols = comp.coefficient.symbols();
            let phantom_free = p.free_phantoms.iter().all(|ph| !symbols.contains(&ph.0));
            let robust = tau_free && phantom_free;
            AcrEntry {
                species: p.species[comp.species].clone(),
                robust,
                value: robust.then(|| comp.coefficient.render(&namer)),
            }
        })
        .collect();
    AcrReport { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Text,
    Json,
    Latex,
}

/// Structured term list of a polynomial, for machine-readable output.
fn poly_terms_json(p: &Polynomial) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "coeff": crate::algebra::poly::format_rat(c),
                "monomial": m.factors().iter().map(|&(id, e)| json!([id, e])).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::Value::Array(terms)
}

fn rf_json(rf: &RationalFunction, namer: &dyn Fn(u32) -> String) -> serde_json::Value {
    json!({
        "display": rf.render(namer),
        "num": poly_terms_json(rf.num()),
        "den": poly_terms_json(rf.den()),
    })
}

/// Deterministic rendering of a parametrization.
pub fn emit(p: &Parametrization, format: EmitFormat) -> String {
    let namer = p.symbols.namer();
    match format {
        EmitFormat::Text => {
            let mut out = String::new();
            for comp in &p.components {
                let mut rhs = comp.coefficient.render(&namer);
                let taus = render_tau_product(p, comp, &namer);
                if !taus.is_empty() {
                    if rhs == "1" {
                        rhs = taus;
                    } else {
                        rhs = format!("({rhs}) * {taus}");
                    }
                }
                out.push_str(&format!("{} = {}\n", p.species[comp.species], rhs));
            }
            for (sym, value) in &p.solved_phantoms {
                out.push_str(&format!(
                    "where {} = {}\n",
                    p.symbols.name(*sym),
                    value.render(&namer)
                ));
            }
            out
        }
        EmitFormat::Json => {
            let components: Vec<serde_json::Value> = p
                .components
                .iter()
                .map(|comp| {
                    let coefficient = match &comp.coefficient {
                        Coefficient::Rational(rf) => json!({
                            "kind": "rational",
                            "value": rf_json(rf, &namer),
                        }),
                        Coefficient::Powers(fs) => json!({
                            "kind": "powers",
                            "factors": fs.iter().map(|(rf, e)| json!({
                                "base": rf_json(rf, &namer),
                                "exponent": crate::algebra::poly::format_rat(e),
                            })).collect::<Vec<_>>(),
                        }),
                    };
                    json!({
                        "species": p.species[comp.species],
                        "coefficient": coefficient,
                        "tau_exponents": comp.tau_exponents.iter()
                            .map(crate::algebra::poly::format_rat).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "x_equals_zbar": p.x_equals_zbar,
                "kinetic_deficiency": p.kinetic_deficiency,
                "tau_count": p.tau_count(),
                "tau_symbols": p.tau_symbols.iter().map(|&t| p.symbols.name(t)).collect::<Vec<_>>(),
                "free_phantoms": p.free_phantoms.iter().map(|&t| p.symbols.name(t)).collect::<Vec<_>>(),
                "solved_phantoms": p.solved_phantoms.iter().map(|(sym, v)| json!({
                    "symbol": p.symbols.name(*sym),
                    "value": rf_json(v, &namer),
                })).collect::<Vec<_>>(),
                "conditions": p.conditions.iter().map(|c| c.render(&namer)).collect::<Vec<_>>(),
                "components": components,
            });
            serde_json::to_string_pretty(&doc).expect("serializable")
        }
        EmitFormat::Latex => {
            let mut out = String::from("\\left\\{\\begin{aligned}\n");
            for comp in &p.components {
                let coeff = latex_coefficient(&comp.coefficient, &namer);
                let taus = latex_tau_product(p, comp);
                let rhs = match (coeff.as_str(), taus.is_empty()) {
                    ("1", false) => taus,
                    (_, true) => coeff,
                    _ => format!("{coeff} \\, {taus}"),
                };
                out.push_str(&format!(
                    "{} &= {} \\\\\n",
                    latex_symbol(&p.species[comp.species]),
                    rhs
                ));
            }
            out.push_str("\\end{aligned}\\right.\n");
            for (sym, value) in &p.solved_phantoms {
                out.push_str(&format!(
                    "\\quad \\text{{where }} {} = {}\n",
                    latex_symbol(p.symbols.name(*sym)),
                    latex_rf(value, p)
                ));
            }
            out
        }
    }
}

fn render_tau_product(
    p: &Parametrization,
    comp: &ParamComponent,
    _namer: &dyn Fn(u32) -> String,
) -> String {
    let mut parts = Vec::new();
    for (t, e) in comp.tau_exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let name = p.symbols.name(p.tau_symbols[t]);
        if e == &crate::algebra::rat(1) {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{}^{}", name, crate::algebra::poly::format_rat(e)));
        }
    }
    parts.join(" * ")
}

/// Turns `k12` into `k_{12}`, `phi1` into `\phi_{1}`, `tau2` into `\tau_{2}`.
pub fn latex_symbol(name: &str) -> String {
    let split = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (head, tail) = name.split_at(split);
    let head = match head {
        "phi" => "\\varphi".to_string(),
        "tau" => "\\tau".to_string(),
        _ => head.to_string(),
    };
    if tail.is_empty() {
        head
    } else {
        format!("{head}_{{{tail}}}")
    }
}

fn latex_poly(p: &Polynomial, table: &SymbolTable) -> String {
    let namer = |raw: u32| latex_symbol(table.name(SymbolId(raw)));
    p.render(&namer).replace('*', " ")
}

fn latex_rf(rf: &RationalFunction, p: &Parametrization) -> String {
    if rf.den().is_one() {
        latex_poly(rf.num(), &p.symbols)
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            latex_poly(rf.num(), &p.symbols),
            latex_poly(rf.den(), &p.symbols)
        )
    }
}

fn latex_coefficient(c: &Coefficient, namer: &dyn Fn(u32) -> String) -> String {
    match c {
        Coefficient::Rational(rf) => {
            if rf.den().is_one() {
                rf.num().render(&|raw| latex_symbol(&namer(raw))).replace('*', " ")
            } else {
                format!(
                    "\\frac{{{}}}{{{}}}",
                    rf.num().render(&|raw| latex_symbol(&namer(raw))).replace('*', " "),
                    rf.den().render(&|raw| latex_symbol(&namer(raw))).replace('*', " ")
                )
            }
        }
        Coefficient::Powers(fs) => fs
            .iter()
            .map(|(rf, e)| {
                format!(
                    "\\left({}\\right)^{{{}}}",
                    rf.render(&|raw| latex_symbol(&namer(raw))).replace('*', " "),
                    crate::algebra::poly::format_rat(e)
                )
            })
            .collect::<Vec<_>>()
            .join(" \\, "),
    }
}

fn latex_tau_product(p: &Parametrization, comp: &ParamComponent) -> String {
    let mut parts = Vec::new();
    for (t, e) in comp.tau_exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let name = latex_symbol(p.symbols.name(p.tau_symbols[t]));
        if e == &crate::algebra::rat(1) {
            parts.push(name);
        } else {
            parts.push(format!("{}^{{{}}}", name, crate::algebra::poly::format_rat(e)));
        }
    }
    parts.join(" ")
}

/// The verdict plus condensation data the command-line report needs.
pub fn condensed_summary(net: &Gcrn) -> (usize, usize) {
    let c = condense(net);
    (c.class_count(), c.linkage_class_count())
}
