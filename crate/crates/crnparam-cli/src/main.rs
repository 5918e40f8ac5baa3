//! Command-line front end: structural analysis, condensation, redirection,
//! translation, equilibrium parametrization, and numeric verification of
//! reaction-network files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crnparam::model::{
    condense, is_v_star_directed, redirect, structure_report, Gcrn, Redirection,
};
use crnparam::param::{detect_acr, emit, parametrize, EmitFormat, Parametrization};
use crnparam::parse::{parse_network, parse_scheme, render_network, NetworkKind, ParsedNetwork};
use crnparam::translate::{certify, translate};
use crnparam::verify::numeric_verify;
use crnparam::Error;

#[derive(Parser)]
#[command(
    name = "crnparam",
    about = "Structural analysis and exact equilibrium parametrization of (generalized) chemical reaction networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Network file (@mas or @gcrn format).
    file: PathBuf,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: linkage classes, reversibility, deficiencies.
    Analyze {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Condensed network: stoichiometric classes and their induced edges.
    Condense {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Rewire the network to be directed for a representative set.
    Redirect {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated representative vertex ids (default: automatic).
        #[arg(long, value_delimiter = ',')]
        vstar: Option<Vec<u32>>,
    },
    /// Apply a translation scheme to a classical network.
    Translate {
        #[command(flatten)]
        common: CommonArgs,
        /// Translation scheme file.
        #[arg(long)]
        scheme: PathBuf,
        /// Also redirect and add the full phantom fan-out automatically.
        #[arg(long)]
        auto_phantom: bool,
    },
    /// Full pipeline: translate, redirect, analyze, parametrize, ACR.
    Parametrize {
        #[command(flatten)]
        common: CommonArgs,
        /// Translation scheme file (requires an @mas network).
        #[arg(long)]
        scheme: Option<PathBuf>,
        /// Comma-separated representative vertex ids (default: automatic).
        #[arg(long, value_delimiter = ',')]
        vstar: Option<Vec<u32>>,
        /// Emit display mathematics instead of text.
        #[arg(long, conflicts_with = "json")]
        latex: bool,
    },
    /// Numeric verification of the parametrization at seeded samples.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Translation scheme file (requires an @mas network).
        #[arg(long)]
        scheme: Option<PathBuf>,
        /// Comma-separated representative vertex ids (default: automatic).
        #[arg(long, value_delimiter = ',')]
        vstar: Option<Vec<u32>>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, result) = run(cli.command);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "error": { "kind": e.kind(), "message": e.to_string() }
                    }))
                    .expect("serializable")
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> (bool, Result<(), Error>) {
    match command {
        Command::Analyze { common } => {
            let json = common.json;
            (json, analyze(&common))
        }
        Command::Condense { common } => {
            let json = common.json;
            (json, condense_cmd(&common))
        }
        Command::Redirect { common, vstar } => {
            let json = common.json;
            (json, redirect_cmd(&common, vstar.as_deref()))
        }
        Command::Translate { common, scheme, auto_phantom } => {
            let json = common.json;
            (json, translate_cmd(&common, &scheme, auto_phantom))
        }
        Command::Parametrize { common, scheme, vstar, latex } => {
            let json = common.json;
            (json, parametrize_cmd(&common, scheme.as_deref(), vstar.as_deref(), latex))
        }
        Command::Verify { common, scheme, vstar, samples, seed, tol } => {
            let json = common.json;
            (json, verify_cmd(&common, scheme.as_deref(), vstar.as_deref(), samples, seed, tol))
        }
    }
}

fn load(path: &PathBuf) -> Result<ParsedNetwork, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_network(&text)
}

fn analyze(common: &CommonArgs) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    let report = structure_report(&parsed.net);
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("vertices:              {}", report.vertex_count);
        println!(
            "edges:                 {} ({} effective, {} phantom)",
            report.edge_count, report.effective_edge_count, report.phantom_edge_count
        );
        println!("linkage classes:       {}", report.linkage_class_count);
        for class in &report.linkage_classes {
            println!("  {class:?}");
        }
        println!("weakly reversible:     {}", report.weakly_reversible);
        println!("stoichiometric rank:   {}", report.stoichiometric_rank);
        match report.kinetic_rank {
            Some(r) => println!("kinetic-order rank:    {r}"),
            None => println!("kinetic-order rank:    (not all vertices are sources)"),
        }
        println!("deficiency:            {}", report.deficiency);
        match report.kinetic_deficiency {
            Some(d) => println!("kinetic deficiency:    {d}"),
            None => println!("kinetic deficiency:    (not all vertices are sources)"),
        }
        println!("effective deficiency:  {}", report.effective_deficiency);
    }
    Ok(())
}

fn condense_cmd(common: &CommonArgs) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    let net = &parsed.net;
    let c = condense(net);
    if common.json {
        let classes: Vec<serde_json::Value> = c
            .classes
            .iter()
            .enumerate()
            .map(|(i, members)| {
                json!({
                    "members": members.iter().map(|&v| net.display_id(v)).collect::<Vec<_>>(),
                    "complex": c.complexes[i].render(net.species()),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = c.edges.iter().map(|&(a, b)| json!([a, b])).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "classes": classes,
                "edges": edges,
            }))
            .expect("serializable")
        );
    } else {
        for (i, members) in c.classes.iter().enumerate() {
            let ids: Vec<u32> = members.iter().map(|&v| net.display_id(v)).collect();
            println!("class {}: {:?}  [{}]", i, ids, c.complexes[i].render(net.species()));
        }
        for &(a, b) in &c.edges {
            println!("edge: class {a} -> class {b}");
        }
    }
    Ok(())
}

fn redirection_json(net: &Gcrn, r: &Redirection) -> serde_json::Value {
    json!({
        "vstar": r.vstar,
        "network": render_network(&r.net),
        "merged_rates": r.merges.iter().map(|(new, parts)| json!({
            "symbol": r.net.symbols().name(*new),
            "sum_of": parts.iter().map(|&p| net.symbols().name(p)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "minted_phantoms": r.minted_phantoms.iter()
            .map(|&p| r.net.symbols().name(p)).collect::<Vec<_>>(),
        "dropped_phantoms": r.dropped_phantoms.iter()
            .map(|&p| net.symbols().name(p)).collect::<Vec<_>>(),
    })
}

fn redirect_cmd(common: &CommonArgs, vstar: Option<&[u32]>) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    let r = redirect(&parsed.net, vstar)?;
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&redirection_json(&parsed.net, &r)).expect("serializable")
        );
    } else {
        println!("# V* = {:?}", r.vstar);
        for (new, parts) in &r.merges {
            let names: Vec<&str> = parts.iter().map(|&p| parsed.net.symbols().name(p)).collect();
            println!("# merged: {} = {}", r.net.symbols().name(*new), names.join(" + "));
        }
        print!("{}", render_network(&r.net));
    }
    Ok(())
}

fn translate_cmd(common: &CommonArgs, scheme_path: &PathBuf, auto_phantom: bool) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    if parsed.kind != NetworkKind::Mas {
        return Err(Error::NotClassical("translation requires an @mas network".into()));
    }
    let scheme_text = std::fs::read_to_string(scheme_path).map_err(|e| {
        Error::Scheme(format!("cannot read {}: {e}", scheme_path.display()))
    })?;
    let scheme = parse_scheme(&scheme_text, &parsed)?;
    let t = translate(&parsed.net, &scheme)?;
    let cert = certify(&parsed.net, &t.net, &t.edge_map)?;
    let net = if auto_phantom { redirect(&t.net, None)?.net } else { t.net.clone() };
    if common.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "network": render_network(&net),
                "certificate": {
                    "reaction_vectors_preserved": cert.reaction_vectors_preserved,
                    "kinetic_complexes_match": cert.kinetic_complexes_match,
                    "ode_difference_zero": cert.ode_difference.is_zero(),
                    "valid": cert.valid(),
                },
            }))
            .expect("serializable")
        );
    } else {
        println!("# certificate: valid = {}", cert.valid());
        print!("{}", render_network(&net));
    }
    if !cert.valid() {
        return Err(Error::Scheme("translation certificate is invalid".into()));
    }
    Ok(())
}

/// Shared front half of `parametrize` and `verify`: optional translation,
/// then redirection.
fn prepare(
    parsed: &ParsedNetwork,
    scheme_path: Option<&std::path::Path>,
    vstar: Option<&[u32]>,
) -> Result<Redirection, Error> {
    let net = match scheme_path {
        Some(path) => {
            if parsed.kind != NetworkKind::Mas {
                return Err(Error::NotClassical("--scheme requires an @mas network".into()));
            }
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Scheme(format!("cannot read {}: {e}", path.display()))
            })?;
            let scheme = parse_scheme(&text, parsed)?;
            let t = translate(&parsed.net, &scheme)?;
            let cert = certify(&parsed.net, &t.net, &t.edge_map)?;
            if !cert.valid() {
                return Err(Error::Scheme("translation certificate is invalid".into()));
            }
            t.net
        }
        None => parsed.net.clone(),
    };
    redirect(&net, vstar)
}

fn parametrize_cmd(
    common: &CommonArgs,
    scheme_path: Option<&std::path::Path>,
    vstar: Option<&[u32]>,
    latex: bool,
) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    let r = prepare(&parsed, scheme_path, vstar)?;
    let report = structure_report(&r.net);
    let directed = is_v_star_directed(&r.net, &r.vstar)?;
    let p = parametrize(&r.net, &r.vstar)?;
    let acr = detect_acr(&p);

    if common.json {
        let namer = p.symbols.namer();
        let forest: Vec<(u32, u32)> = p.forest.display_edges(&r.net);
        let doc = json!({
            "structure": report,
            "vstar": r.vstar,
            "v_star_directed": directed,
            "x_equals_zbar": p.x_equals_zbar,
            "forest": forest,
            "kappa": p.kappa.entries.iter().map(|e| e.render(&namer)).collect::<Vec<_>>(),
            "parametrization": serde_json::from_str::<serde_json::Value>(
                &emit(&p, EmitFormat::Json)).expect("emit produces valid JSON"),
            "acr": acr,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else if latex {
        print!("{}", emit(&p, EmitFormat::Latex));
    } else {
        println!(
            "# deficiency = {}, kinetic = {:?}, effective = {}",
            report.deficiency, report.kinetic_deficiency, report.effective_deficiency
        );
        println!(
            "# V* = {:?}, equilibria coincide with parametrized set: {}",
            r.vstar, p.x_equals_zbar
        );
        print!("{}", emit(&p, EmitFormat::Text));
        let robust = acr.robust_species();
        if robust.is_empty() {
            println!("# no species with absolute concentration robustness");
        } else {
            println!("# absolute concentration robustness: {}", robust.join(", "));
        }
    }
    Ok(())
}

fn verify_cmd(
    common: &CommonArgs,
    scheme_path: Option<&std::path::Path>,
    vstar: Option<&[u32]>,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<(), Error> {
    let parsed = load(&common.file)?;
    let r = prepare(&parsed, scheme_path, vstar)?;
    let p: Parametrization = parametrize(&r.net, &r.vstar)?;
    let report = numeric_verify(&r.net, &p, samples, seed, tol)?;
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("samples:                 {}", report.samples);
        println!("seed:                    {}", report.seed);
        println!("tolerance:               {:e}", report.tolerance);
        println!("max ODE residual:        {:e}", report.max_ode_residual);
        println!("max balance residual:    {:e}", report.max_balance_residual);
        println!("max log-linear residual: {:e}", report.max_loglinear_residual);
        println!("pass:                    {}", report.pass);
    }
    if !report.pass {
        return Err(Error::InvalidNetwork("verification failed".into()));
    }
    Ok(())
}
