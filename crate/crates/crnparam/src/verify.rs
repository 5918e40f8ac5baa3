//! Seeded numeric verification of a parametrization against its network.
//!
//! Draws rate constants, free phantom parameters, and parametrization
//! parameters log-uniformly from `[0.1, 10]`, evaluates the parametrized
//! state, and checks three residuals: the differential equations vanish, the
//! complex-balance equations vanish, and the log-linear system
//! `M^T ln x = ln kappa` holds. The first two are relative to the largest
//! contributing term, the third is absolute.

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::model::{ode_rhs, EdgeKind, Gcrn};
use crate::param::Parametrization;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SampleResidual {
    pub ode: f64,
    pub balance: f64,
    pub loglinear: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_ode_residual: f64,
    pub max_balance_residual: f64,
    pub max_loglinear_residual: f64,
    pub pass: bool,
    pub per_sample: Vec<SampleResidual>,
}

fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.random();
    10f64.powf(2.0 * u - 1.0)
}

/// Runs the three residual checks over seeded samples.
pub fn numeric_verify(
    net: &Gcrn,
    p: &Parametrization,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerifyReport, Error> {
    let ode = ode_rhs(net)?;
    let n_net_symbols = net.symbols().len();
    let solved: Vec<u32> = p.solved_phantoms.iter().map(|(s, _)| s.0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut per_sample = Vec::with_capacity(samples);
    let mut max_ode = 0.0f64;
    let mut max_balance = 0.0f64;
    let mut max_loglin = 0.0f64;

    for _ in 0..samples {
        // Sample in ascending symbol-id order, then tau parameters.
        let mut values = vec![f64::NAN; n_net_symbols];
        for raw in 0..n_net_symbols as u32 {
            if !solved.contains(&raw) {
                values[raw as usize] = log_uniform(&mut rng);
            }
        }
        let taus: Vec<f64> = (0..p.tau_count()).map(|_| log_uniform(&mut rng)).collect();
        for (sym, h) in &p.solved_phantoms {
            let snapshot = values.clone();
            values[sym.0 as usize] = h.eval_f64(&|raw| snapshot[raw as usize]);
        }
        let value_of = |raw: u32| values[raw as usize];

        let x: Vec<f64> = p
            .components
            .iter()
            .map(|c| c.eval_f64(&value_of, &taus))
            .collect();

        let residual = residuals_at(net, p, &ode, &x, &value_of)?;
        max_ode = max_ode.max(residual.ode);
        max_balance = max_balance.max(residual.balance);
        max_loglin = max_loglin.max(residual.loglinear);
        per_sample.push(residual);
    }

    let pass = per_sample
        .iter()
        .all(|r| r.ode <= tolerance && r.balance <= tolerance && r.loglinear <= tolerance);
    Ok(VerifyReport {
        samples,
        seed,
        tolerance,
        max_ode_residual: max_ode,
        max_balance_residual: max_balance,
        max_loglinear_residual: max_loglin,
        pass,
    per_sample,
    })
}

/// The three residuals at one evaluated state.
pub fn residuals_at(
    net: &Gcrn,
    p: &Parametrization,
    ode: &crate::model::OdeExpression,
    x: &[f64],
    value_of: &dyn Fn(u32) -> f64,
) -> Result<SampleResidual, Error> {
    // Differential equations, relative to the largest single term.
    let mut ode_res = 0.0f64;
    for s in 0..net.n_species() {
        let (value, max_term) = ode.eval_species(s, x, value_of);
        let rel = if max_term > 0.0 { value.abs() / max_term } else { value.abs() };
        ode_res = ode_res.max(rel);
    }

    // Complex balance: the Laplacian applied to the kinetic monomials.
    let monomials: Vec<f64> = net
        .vertices()
        .iter()
        .map(|v| match &v.kinetic {
            Some(kin) => kin
                .iter()
                .map(|(sp, c)| x[sp].powf(c.to_f64().unwrap_or(f64::NAN)))
                .product(),
            None => f64::NAN,
        })
        .collect();
    let mut flows = vec![0.0f64; net.vertices().len()];
    let mut max_flow_term = vec![0.0f64; net.vertices().len()];
    for e in net.edges() {
        let rate = value_of(e.label.0) * monomials[e.source];
        flows[e.source] -= rate;
        flows[e.target] += rate;
        max_flow_term[e.source] = max_flow_term[e.source].max(rate.abs());
        max_flow_term[e.target] = max_flow_term[e.target].max(rate.abs());
    }
    let mut balance_res = 0.0f64;
    for (v, flow) in flows.iter().enumerate() {
        let rel = if max_flow_term[v] > 0.0 { flow.abs() / max_flow_term[v] } else { flow.abs() };
        balance_res = balance_res.max(rel);
    }

    // Log-linear system along the forest, absolute.
    let mut loglin_res = 0.0f64;
    for (col, entry) in p.kappa.entries.iter().enumerate() {
        let mut lhs = 0.0f64;
        for (s, &xs) in x.iter().enumerate() {
            let coeff = p.m_matrix.at(s, col).to_f64().unwrap_or(f64::NAN);
            if coeff != 0.0 {
                lhs += coeff * xs.ln();
            }
        }
        let rhs = entry.eval_f64(value_of).ln();
        loglin_res = loglin_res.max((lhs - rhs).abs());
    }

    // Phantom edges must not influence the differential equations; their
    // sampled labels only enter the balance check.
    debug_assert!(net
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Phantom)
        .all(|e| !ode.contains_symbol(e.label.0)));

    Ok(SampleResidual { ode: ode_res, balance: balance_res, loglinear: loglin_res })
}
