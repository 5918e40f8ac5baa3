//! Line-oriented text formats for networks and translation schemes.
//!
//! Network files contain an optional `@species` ordering, one `@mas`
//! (classical) or `@gcrn` (generalized) section, and optional `@values`
//! assignments. `#` starts a comment. Classical reactions are written
//! `X + Y -> Xp + Y ; k2` or `A <-> B ; k1, k2` (forward rate first);
//! generalized edges name vertices as `v1:[X + Y | X]` with the
//! stoichiometric complex left of `|` and the kinetic-order complex right of
//! it, and a trailing `; phantom phi1` labels a phantom edge.
//!
//! Scheme files hold one `rN: + COMPLEX` line per directed reaction (`rN`
//! counts directed reactions in file order, a `<->` line consuming two ids
//! forward-then-backward; the forward entry of a reversible pair applies to
//! the backward direction unless overridden) and `phantom vA -> vB` requests.

use std::collections::BTreeMap;

use crate::algebra::{rat, Rat};
use crate::error::Error;
use crate::model::{Complex, EdgeKind, Gcrn, SymbolId, SymbolRole, SymbolTable, Vertex};
use crate::translate::TranslationScheme;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetworkKind {
    Mas,
    Gcrn,
}

/// A parsed network plus the file-level structure schemes refer to.
#[derive(Clone, Debug)]
pub struct ParsedNetwork {
    pub net: Gcrn,
    pub kind: NetworkKind,
    /// For each edge, its partner edge when both came from one `<->` line.
    pub reversible_partner: Vec<Option<usize>>,
}

struct Cursor<'a> {
    line: &'a str,
    chars: Vec<char>,
    pos: usize,
    line_no: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a str, line_no: usize) -> Self {
        Cursor { line, chars: line.chars().collect(), pos: 0, line_no }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line_no, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let candidate: String = self.chars[self.pos..].iter().take(s.chars().count()).collect();
        if candidate == s {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        if self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            self.pos += 1;
            while self
                .chars
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                self.pos += 1;
            }
            Ok(self.chars[start..self.pos].iter().collect())
        } else {
            Err(self.error("expected an identifier"))
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn rest(&self) -> String {
        self.chars[self.pos.min(self.chars.len())..].iter().collect()
    }
}

/// Shared builder state while reading a network file.
struct NetBuilder {
    species: Vec<String>,
    species_fixed: bool,
    species_index: BTreeMap<String, usize>,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize, SymbolId)>,
    reversible_partner: Vec<Option<usize>>,
    symbols: SymbolTable,
    values: BTreeMap<String, f64>,
    next_id: u32,
}

impl NetBuilder {
    fn new() -> Self {
        NetBuilder {
            species: Vec::new(),
            species_fixed: false,
            species_index: BTreeMap::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
            reversible_partner: Vec::new(),
            symbols: SymbolTable::new(),
            values: BTreeMap::new(),
            next_id: 1,
        }
    }

    fn species_id(&mut self, name: &str, cur: &Cursor) -> Result<usize, Error> {
        if let Some(&i) = self.species_index.get(name) {
            return Ok(i);
        }
        if self.species_fixed {
            return Err(cur.error(format!("species `{name}` not listed in @species")));
        }
        let i = self.species.len();
        self.species.push(name.to_string());
        self.species_index.insert(name.to_string(), i);
        Ok(i)
    }

    fn rate_symbol(&mut self, name: &str, role: SymbolRole, cur: &Cursor) -> Result<SymbolId, Error> {
        if let Some(id) = self.symbols.lookup(name) {
            if self.symbols.role(id) != role {
                return Err(cur.error(format!(
                    "symbol `{name}` already declared with a different role"
                )));
            }
            return Ok(id);
        }
        self.symbols
            .insert(name, role)
            .map_err(|e| cur.error(e.to_string()))
    }

    fn fresh_vertex(&mut self, id: Option<u32>, stoich: Complex, kinetic: Option<Complex>) -> usize {
        let id = id.unwrap_or_else(|| {
            while self.vertices.iter().any(|v| v.id == self.next_id) {
                self.next_id += 1;
            }
            self.next_id
        });
        self.vertices.push(Vertex { id, stoich, kinetic });
        self.vertices.len() - 1
    }
}

fn parse_complex(cur: &mut Cursor, builder: &mut NetBuilder, stops: &[char]) -> Result<Complex, Error> {
    let mut complex = Complex::zero();
    let mut first = true;
    loop {
        match cur.peek() {
            Some('0') if first => {
                cur.pos += 1;
                return Ok(complex);
            }
            Some(c) if stops.contains(&c) && !first => return Ok(complex),
            None if !first => return Ok(complex),
            _ => {}
        }
        // Optional rational coefficient followed by `*`, else coefficient 1.
        let coeff = if cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '-') {
            let numer = cur.integer()?;
            let denom = if cur.eat('/') { cur.integer()? } else { 1 };
            if denom == 0 {
                return Err(cur.error("zero denominator in coefficient"));
            }
            cur.expect('*')?;
            Rat::new(numer.into(), denom.into())
        } else {
            rat(1)
        };
        let name = cur.ident()?;
        let idx = builder.species_id(&name, cur)?;
        complex.add_species(idx, coeff);
        first = false;
        if !cur.eat('+') {
            return Ok(complex);
        }
    }
}

/// `vN:[stoich | kinetic]` or `[stoich | kinetic]` or `[stoich]`, resolved to
/// an internal vertex index.
fn parse_vertex_ref(cur: &mut Cursor, builder: &mut NetBuilder) -> Result<usize, Error> {
    let explicit_id = if cur.peek() == Some('v') {
        // Lookahead: `v<digits>:` is an id, anything else is a complex.
        let save = cur.pos;
        cur.pos += 1;
        let mut digits = String::new();
        while cur.chars.get(cur.pos).is_some_and(char::is_ascii_digit) {
            digits.push(cur.chars[cur.pos]);
            cur.pos += 1;
        }
        if !digits.is_empty() && cur.chars.get(cur.pos) == Some(&':') {
            cur.pos += 1;
            Some(digits.parse::<u32>().map_err(|_| cur.error("vertex id out of range"))?)
        } else {
            cur.pos = save;
            None
        }
    } else {
        None
    };

    cur.expect('[')?;
    let stoich = parse_complex(cur, builder, &['|', ']'])?;
    let kinetic = if cur.eat('|') {
        Some(parse_complex(cur, builder, &[']'])?)
    } else {
        None
    };
    cur.expect(']')?;

    if let Some(id) = explicit_id {
        if let Some(idx) = builder.vertices.iter().position(|v| v.id == id) {
            let v = &mut builder.vertices[idx];
            if v.stoich != stoich {
                return Err(cur.error(format!(
                    "vertex v{id} redeclared with a different stoichiometric complex"
                )));
            }
            match (&v.kinetic, &kinetic) {
                (Some(a), Some(b)) if a != b => {
                    return Err(cur.error(format!(
                        "vertex v{id} redeclared with a different kinetic complex"
                    )))
                }
                (None, Some(_)) => v.kinetic = kinetic,
                _ => {}
            }
            return Ok(idx);
        }
        return Ok(builder.fresh_vertex(Some(id), stoich, kinetic));
    }

    match &kinetic {
        Some(kin) => {
            if let Some(idx) = builder
                .vertices
                .iter()
                .position(|v| v.stoich == stoich && v.kinetic.as_ref() == Some(kin))
            {
                return Ok(idx);
            }
            Ok(builder.fresh_vertex(None, stoich, kinetic))
        }
        None => {
            let matches: Vec<usize> = builder
                .vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| v.stoich == stoich)
                .map(|(i, _)| i)
                .collect();
            match matches.len() {
                0 => Ok(builder.fresh_vertex(None, stoich, None)),
                1 => Ok(matches[0]),
                _ => Err(cur.error(
                    "ambiguous vertex reference; several vertices share this complex, use explicit ids",
                )),
            }
        }
    }
}

/// Classical complex resolved to a vertex (stoichiometric and kinetic equal).
fn classical_vertex(builder: &mut NetBuilder, complex: Complex) -> usize {
    if let Some(idx) = builder.vertices.iter().position(|v| v.stoich == complex) {
        return idx;
    }
    builder.fresh_vertex(None, complex.clone(), Some(complex))
}

fn parse_rates(cur: &mut Cursor, builder: &mut NetBuilder, reversible: bool) -> Result<(SymbolId, Option<SymbolId>, bool), Error> {
    cur.expect(';')?;
    if cur.eat_str("phantom") {
        if reversible {
            return Err(cur.error("phantom edges must be directed, not reversible"));
        }
        let name = cur.ident()?;
        let id = builder.rate_symbol(&name, SymbolRole::PhantomParameter, cur)?;
        return Ok((id, None, true));
    }
    let forward = cur.ident()?;
    let fwd = builder.rate_symbol(&forward, SymbolRole::RateConstant, cur)?;
    if reversible {
        cur.expect(',')?;
        let backward = cur.ident()?;
        let bwd = builder.rate_symbol(&backward, SymbolRole::RateConstant, cur)?;
        Ok((fwd, Some(bwd), false))
    } else {
        Ok((fwd, None, false))
    }
}

pub fn parse_network(text: &str) -> Result<ParsedNetwork, Error> {
    let mut builder = NetBuilder::new();
    let mut kind: Option<NetworkKind> = None;
    let mut phantom_marks: Vec<(usize, usize)> = Vec::new(); // (edge idx, line) for validation

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let stripped = raw.split('#').next().unwrap_or("");
        if stripped.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(stripped, line_no);

        if cur.eat_str("@species") {
            if builder.species_fixed {
                return Err(cur.error("duplicate @species directive"));
            }
            while !cur.at_end() {
                let name = cur.ident()?;
                if builder.species_index.contains_key(&name) {
                    return Err(cur.error(format!("species `{name}` listed twice")));
                }
                let i = builder.species.len();
                builder.species.push(name.clone());
                builder.species_index.insert(name, i);
            }
            builder.species_fixed = true;
            continue;
        }
        if cur.eat_str("@mas") || cur.eat_str("@gcrn") {
            let this = if cur.line.contains("@mas") { NetworkKind::Mas } else { NetworkKind::Gcrn };
            if kind.is_some() {
                return Err(cur.error("network file may contain only one section"));
            }
            if !cur.at_end() {
                return Err(cur.error("unexpected input after section marker"));
            }
            kind = Some(this);
            continue;
        }
        if cur.eat_str("@values") {
            while !cur.at_end() {
                let name = cur.ident()?;
                cur.expect('=')?;
                cur.skip_ws();
                let rest: String = cur.rest();
                let token: String = rest.split_whitespace().next().unwrap_or("").to_string();
                let value: f64 = token
                    .parse()
                    .map_err(|_| cur.error(format!("invalid numeric value `{token}`")))?;
                cur.pos += token.chars().count();
                builder.values.insert(name, value);
            }
            continue;
        }
        if cur.peek() == Some('@') {
            return Err(cur.error("unknown directive"));
        }

        match kind {
            None => return Err(cur.error("reaction line before @mas or @gcrn section")),
            Some(NetworkKind::Mas) => {
                let lhs = parse_complex(&mut cur, &mut builder, &['-', '<'])?;
                let reversible = if cur.eat_str("<->") {
                    true
                } else if cur.eat_str("->") {
                    false
                } else {
                    return Err(cur.error("expected `->` or `<->`"));
                };
                let rhs = parse_complex(&mut cur, &mut builder, &[';'])?;
                if lhs == rhs {
                    return Err(cur.error("reaction joins a complex to itself"));
                }
                let (fwd, bwd, phantom) = parse_rates(&mut cur, &mut builder, reversible)?;
                if phantom {
                    return Err(cur.error("phantom labels are only valid in @gcrn sections"));
                }
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing input"));
                }
                let a = classical_vertex(&mut builder, lhs);
                let b = classical_vertex(&mut builder, rhs);
                let fwd_idx = builder.edges.len();
                builder.edges.push((a, b, fwd));
                builder.reversible_partner.push(None);
                if let Some(bwd) = bwd {
                    let bwd_idx = builder.edges.len();
                    builder.edges.push((b, a, bwd));
                    builder.reversible_partner.push(Some(fwd_idx));
                    builder.reversible_partner[fwd_idx] = Some(bwd_idx);
                }
            }
            Some(NetworkKind::Gcrn) => {
                let a = parse_vertex_ref(&mut cur, &mut builder)?;
                let reversible = if cur.eat_str("<->") {
                    true
                } else if cur.eat_str("->") {
                    false
                } else {
                    return Err(cur.error("expected `->` or `<->`"));
                };
                let b = parse_vertex_ref(&mut cur, &mut builder)?;
                let (fwd, bwd, phantom) = parse_rates(&mut cur, &mut builder, reversible)?;
                if !cur.at_end() {
                    return Err(cur.error("unexpected trailing input"));
                }
                if phantom && builder.vertices[a].stoich != builder.vertices[b].stoich {
                    return Err(cur.error(
                        "phantom label on an edge whose endpoints have different stoichiometric complexes",
                    ));
                }
                let fwd_idx = builder.edges.len();
                builder.edges.push((a, b, fwd));
                builder.reversible_partner.push(None);
                if phantom {
                    phantom_marks.push((fwd_idx, line_no));
                }
                if let Some(bwd) = bwd {
                    let bwd_idx = builder.edges.len();
                    builder.edges.push((b, a, bwd));
                    builder.reversible_partner.push(Some(fwd_idx));
                    builder.reversible_partner[fwd_idx] = Some(bwd_idx);
                }
            }
        }
    }

    let kind = kind.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        col: 1,
        msg: "file contains no @mas or @gcrn section".into(),
    })?;

    let mut net = Gcrn::new(builder.species, builder.vertices, builder.edges, builder.symbols)?;
    for (idx, line) in phantom_marks {
        if net.edges()[idx].kind != EdgeKind::Phantom {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: "phantom label on a non-phantom edge".into(),
            });
        }
    }
    net.set_values(builder.values);
    Ok(ParsedNetwork { net, kind, reversible_partner: builder.reversible_partner })
}

/// Parses a translation scheme against the network it will be applied to.
pub fn parse_scheme(text: &str, network: &ParsedNetwork) -> Result<TranslationScheme, Error> {
    let n_reactions = network.net.edges().len();
    let mut additions: Vec<Option<Complex>> = vec![None; n_reactions];
    let mut phantom_requests = Vec::new();

    // Species resolution reuses the network's ordering and must not extend it.
    let mut builder = NetBuilder::new();
    builder.species = network.net.species().to_vec();
    builder.species_fixed = true;
    builder.species_index = builder
        .species
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let stripped = raw.split('#').next().unwrap_or("");
        if stripped.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(stripped, line_no);

        if cur.eat_str("phantom") {
            cur.expect('v')?;
            let a = cur.integer()? as u32;
            if !cur.eat_str("->") {
                return Err(cur.error("expected `->` in phantom request"));
            }
            cur.expect('v')?;
            let b = cur.integer()? as u32;
            if !cur.at_end() {
                return Err(cur.error("unexpected trailing input"));
            }
            phantom_requests.push((a, b));
            continue;
        }

        cur.expect('r')?;
        let idx = cur.integer()?;
        if idx < 1 || idx as usize > n_reactions {
            return Err(cur.error(format!(
                "unknown reaction id r{idx}; the network has {n_reactions} directed reactions"
            )));
        }
        cur.expect(':')?;
        // A leading `+` before the added complex is conventional but optional.
        cur.eat('+');
        let complex = parse_complex(&mut cur, &mut builder, &[])?;
        if !cur.at_end() {
            return Err(cur.error("unexpected trailing input"));
        }
        let slot = &mut additions[(idx - 1) as usize];
        if slot.is_some() {
            return Err(cur.error(format!("duplicate entry for r{idx}")));
        }
        *slot = Some(complex);
    }

    // A reversible line's annotation covers both directions unless overridden.
    for r in 0..n_reactions {
        if additions[r].is_none() {
            if let Some(p) = network.reversible_partner[r] {
                if let Some(c) = additions[p].clone() {
                    additions[r] = Some(c);
                }
            }
        }
    }
    let missing: Vec<String> = additions
        .iter()
        .enumerate()
        .filter(|(_, a)| a.is_none())
        .map(|(r, _)| format!("r{}", r + 1))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Scheme(format!(
            "scheme is missing entries for {}",
            missing.join(", ")
        )));
    }

    Ok(TranslationScheme {
        additions: additions.into_iter().map(Option::unwrap).collect(),
        phantom_requests,
    })
}

/// Renders a network in the generalized section format; parsing the output
/// reproduces the network vertex-for-vertex.
pub fn render_network(net: &Gcrn) -> String {
    let mut out = String::new();
    out.push_str("@species ");
    out.push_str(&net.species().join(" "));
    out.push('\n');
    out.push_str("@gcrn\n");
    for e in net.edges() {
        let v = |i: usize| {
            let vx = &net.vertices()[i];
            match &vx.kinetic {
                Some(kin) => format!(
                    "v{}:[{} | {}]",
                    vx.id,
                    vx.stoich.render(net.species()),
                    kin.render(net.species())
                ),
                None => format!("v{}:[{}]", vx.id, vx.stoich.render(net.species())),
            }
        };
        let label = net.symbols().name(e.label);
        let rate = if net.symbols().role(e.label) == SymbolRole::PhantomParameter {
            format!("phantom {label}")
        } else {
            label.to_string()
        };
        out.push_str(&format!("{} -> {} ; {}\n", v(e.source), v(e.target), rate));
    }
    if !net.values().is_empty() {
        out.push_str("@values");
        for (name, value) in net.values() {
            out.push_str(&format!(" {name}={value}"));
        }
        out.push('\n');
    }
    out
}
