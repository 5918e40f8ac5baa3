//! Shared fixtures and seeded random generators for the integration suites.
#![allow(dead_code)] // each test binary uses a different subset

use crnparam::algebra::{rat, Rat, RationalMatrix};
use crnparam::model::{Complex, Gcrn, SymbolRole, SymbolTable, Vertex};
use crnparam::translate::TranslationScheme;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture readable")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A strongly connected labeled digraph on up to `max_vertices` vertices,
/// wrapped as a network with one species per vertex and distinct unit
/// stoichiometric complexes (so every edge is effective).
pub fn random_strong_digraph(rng: &mut ChaCha8Rng, max_vertices: usize) -> Gcrn {
    let m = rng.random_range(1..=max_vertices);
    let mut symbols = SymbolTable::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if m > 1 {
        // A random Hamiltonian cycle guarantees strong connectivity.
        let mut order: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }
        for w in 0..m {
            edges.push((order[w], order[(w + 1) % m]));
        }
        let extra = rng.random_range(0..=2 * m);
        for _ in 0..extra {
            let a = rng.random_range(0..m);
            let b = rng.random_range(0..m);
            if a != b {
                edges.push((a, b));
            }
        }
    }
    let labeled: Vec<(usize, usize, crnparam::model::SymbolId)> = edges
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let label = symbols
                .insert(&format!("k{}", i + 1), SymbolRole::RateConstant)
                .unwrap();
            (a, b, label)
        })
        .collect();
    let species: Vec<String> = (0..m).map(|i| format!("S{}", i + 1)).collect();
    let vertices: Vec<Vertex> = (0..m)
        .map(|i| {
            let c = Complex::from_pairs([(i, rat(1))]);
            Vertex { id: (i + 1) as u32, stoich: c.clone(), kinetic: Some(c) }
        })
        .collect();
    Gcrn::new(species, vertices, labeled, symbols).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.random_range(-6i64..=6);
    let d = rng.random_range(1i64..=4);
    Rat::new(n.into(), d.into())
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_rows: usize, max_cols: usize) -> RationalMatrix {
    let r = rng.random_range(1..=max_rows);
    let c = rng.random_range(1..=max_cols);
    let rows: Vec<Vec<Rat>> = (0..r)
        .map(|_| (0..c).map(|_| random_rational(rng)).collect())
        .collect();
    RationalMatrix::from_rows(rows)
}

fn random_complex(rng: &mut ChaCha8Rng, n_species: usize, max_support: usize) -> Complex {
    let support = rng.random_range(0..=max_support.min(n_species));
    let mut c = Complex::zero();
    for _ in 0..support {
        let s = rng.random_range(0..n_species);
        let coeff = rng.random_range(1i64..=2);
        c.add_species(s, rat(coeff));
    }
    c
}

/// A classical network: distinct complexes, kinetic equal to stoichiometric,
/// up to `max_reactions` distinct directed reactions.
pub fn random_classical_crn(
    rng: &mut ChaCha8Rng,
    max_species: usize,
    max_reactions: usize,
) -> Gcrn {
    let n = rng.random_range(2..=max_species);
    // A pool of distinct complexes.
    let mut pool: Vec<Complex> = Vec::new();
    let target = rng.random_range(2..=(max_species + 2));
    while pool.len() < target {
        let c = random_complex(rng, n, 3);
        if !pool.contains(&c) {
            pool.push(c);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let want = rng.random_range(1..=max_reactions);
    let mut guard = 0;
    while pairs.len() < want && guard < 100 {
        guard += 1;
        let a = rng.random_range(0..pool.len());
        let b = rng.random_range(0..pool.len());
        if a != b && !pairs.contains(&(a, b)) {
            pairs.push((a, b));
        }
    }
    // Drop unused complexes so every vertex sits in some reaction.
    let mut used: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    used.sort_unstable();
    used.dedup();
    let remap: Vec<usize> = (0..pool.len())
        .map(|i| used.iter().position(|&u| u == i).unwrap_or(usize::MAX))
        .collect();
    let vertices: Vec<Vertex> = used
        .iter()
        .enumerate()
        .map(|(idx, &p)| Vertex {
            id: (idx + 1) as u32,
            stoich: pool[p].clone(),
            kinetic: Some(pool[p].clone()),
        })
        .collect();
    let mut symbols = SymbolTable::new();
    let edges: Vec<(usize, usize, crnparam::model::SymbolId)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let label = symbols
                .insert(&format!("k{}", i + 1), SymbolRole::RateConstant)
                .unwrap();
            (remap[a], remap[b], label)
        })
        .collect();
    let species: Vec<String> = (0..n).map(|i| format!("S{}", i + 1)).collect();
    Gcrn::new(species, vertices, edges, symbols).unwrap()
}

pub fn random_scheme(rng: &mut ChaCha8Rng, net: &Gcrn) -> TranslationScheme {
    let additions = (0..net.edges().len())
        .map(|_| {
            if rng.random_bool(0.5) {
                Complex::zero()
            } else {
                random_complex(rng, net.n_species(), 2)
            }
        })
        .collect();
    TranslationScheme { additions, phantom_requests: Vec::new() }
}

/// A generalized network whose stoichiometric complexes are drawn from a pool
/// smaller than the vertex count, forcing nontrivial condensed classes. Every
/// vertex carries a kinetic-order complex.
pub fn random_gcrn_with_classes(rng: &mut ChaCha8Rng, max_vertices: usize) -> Gcrn {
    let m = rng.random_range(2..=max_vertices);
    let n = rng.random_range(2..=4);
    let pool_size = rng.random_range(1..=m);
    let mut pool: Vec<Complex> = Vec::new();
    let mut salt = 0;
    while pool.len() < pool_size {
        let mut c = random_complex(rng, n, 2);
        // Distinct pool entries; nudge duplicates.
        while pool.contains(&c) {
            salt += 1;
            c.add_species(salt % n, rat(1));
        }
        pool.push(c);
    }
    let vertices: Vec<Vertex> = (0..m)
        .map(|i| Vertex {
            id: (i + 1) as u32,
            stoich: pool[rng.random_range(0..pool.len())].clone(),
            kinetic: Some(random_complex(rng, n, 2)),
        })
        .collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let want = rng.random_range(1..=8);
    let mut guard = 0;
    while pairs.len() < want && guard < 100 {
        guard += 1;
        let a = rng.random_range(0..m);
        let b = rng.random_range(0..m);
        if a != b && !pairs.contains(&(a, b)) {
            pairs.push((a, b));
        }
    }
    let mut symbols = SymbolTable::new();
    let edges: Vec<(usize, usize, crnparam::model::SymbolId)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let label = symbols
                .insert(&format!("k{}", i + 1), SymbolRole::RateConstant)
                .unwrap();
            (a, b, label)
        })
        .collect();
    let species: Vec<String> = (0..n).map(|i| format!("S{}", i + 1)).collect();
    Gcrn::new(species, vertices, edges, symbols).unwrap()
}

/// A random section: one representative display id per condensed class.
pub fn random_section(rng: &mut ChaCha8Rng, net: &Gcrn) -> Vec<u32> {
    let condensed = crnparam::model::condense(net);
    condensed
        .classes
        .iter()
        .map(|members| {
            let pick = members[rng.random_range(0..members.len())];
            net.display_id(pick)
        })
        .collect()
}
