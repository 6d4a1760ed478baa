//! A small negation-normal-form circuit format.
//!
//! Circuits arrive as `.cir` text: one node per line, children defined
//! before their parents, a final `ROOT` line naming the output. Inputs are
//! variable literals (`VAR i` / `NVAR i`) and the two Boolean constants;
//! gates are `AND` / `OR` over previously defined nodes:
//!
//! ```text
//! VARS 4            # optional: declare the arity explicitly
//! n1 VAR 1
//! n2 NVAR 2
//! n3 AND n1 n2
//! ROOT n3
//! ```
//!
//! The circuit's arity is the largest variable index referenced (or the
//! declared `VARS` count if larger). Two structural checks matter
//! downstream: *decomposability* (each AND's children touch disjoint
//! variables, checked syntactically on support masks) and *determinism*
//! (each OR's children are never simultaneously true, checked semantically
//! by table enumeration). Circuits are a front end only — analysis runs on
//! the materialized truth table.

use crate::function::{BooleanFunction, Point};
use crate::{Error, Result, HARD_MAX_ARITY};
use std::collections::HashMap;

/// One circuit node. Gate children are indices into the node list, always
/// pointing at earlier nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Node {
    True,
    False,
    Var(usize),
    NVar(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
}

/// A parsed, structurally valid circuit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: usize,
    arity: usize,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::CircuitParse {
        line,
        msg: msg.into(),
    }
}

fn node_id(token: &str, line: usize) -> Result<u64> {
    token
        .strip_prefix('n')
        .and_then(|rest| rest.parse::<u64>().ok())
        .ok_or_else(|| parse_err(line, format!("expected a node id like `n3`, got `{token}`")))
}

/// Parses `.cir` text into a validated circuit.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut index_of: HashMap<u64, usize> = HashMap::new();
    let mut declared: Option<usize> = None;
    let mut root: Option<usize> = None;
    let mut max_var = 0usize;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.split('#').next().unwrap_or("").trim();
        if trimmed.is_empty() {
            continue;
        }
        if root.is_some() {
            return Err(parse_err(line, "content after ROOT"));
        }
        let mut tokens = trimmed.split_whitespace();
        let head = tokens.next().expect("non-empty line");

        if head == "VARS" {
            if declared.is_some() {
                return Err(parse_err(line, "VARS declared more than once"));
            }
            let m = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&m| m >= 1)
                .ok_or_else(|| parse_err(line, "VARS needs a positive variable count"))?;
            if m > HARD_MAX_ARITY {
                return Err(Error::ArityTooLarge(m, HARD_MAX_ARITY));
            }
            if tokens.next().is_some() {
                return Err(parse_err(line, "trailing tokens after VARS"));
            }
            declared = Some(m);
            continue;
        }

        if head == "ROOT" {
            let id = node_id(
                tokens
                    .next()
                    .ok_or_else(|| parse_err(line, "ROOT needs a node id"))?,
                line,
            )?;
            if tokens.next().is_some() {
                return Err(parse_err(line, "trailing tokens after ROOT"));
            }
            let idx = *index_of
                .get(&id)
                .ok_or_else(|| parse_err(line, format!("ROOT references undefined node n{id}")))?;
            root = Some(idx);
            continue;
        }

        let id = node_id(head, line)?;
        if index_of.contains_key(&id) {
            return Err(parse_err(line, format!("node n{id} defined twice")));
        }
        let kind = tokens
            .next()
            .ok_or_else(|| parse_err(line, "missing node kind"))?;
        let node = match kind {
            "TRUE" | "FALSE" => {
                if tokens.next().is_some() {
                    return Err(parse_err(line, format!("trailing tokens after {kind}")));
                }
                if kind == "TRUE" {
                    Node::True
                } else {
                    Node::False
                }
            }
            "VAR" | "NVAR" => {
                let i = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| {
                        parse_err(line, format!("{kind} needs a variable index >= 1"))
                    })?;
                if i > HARD_MAX_ARITY {
                    return Err(Error::ArityTooLarge(i, HARD_MAX_ARITY));
                }
                if tokens.next().is_some() {
                    return Err(parse_err(line, format!("trailing tokens after {kind}")));
                }
                max_var = max_var.max(i);
                if kind == "VAR" {
                    Node::Var(i)
                } else {
                    Node::NVar(i)
                }
            }
            "AND" | "OR" => {
                let mut children = Vec::new();
                for token in tokens {
                    let child = node_id(token, line)?;
                    let idx = *index_of.get(&child).ok_or_else(|| {
                        parse_err(
                            line,
                            format!("child n{child} is not defined yet (children must precede parents)"),
                        )
                    })?;
                    children.push(idx);
                }
                if children.is_empty() {
                    return Err(parse_err(line, format!("{kind} needs at least one child")));
                }
                if kind == "AND" {
                    Node::And(children)
                } else {
                    Node::Or(children)
                }
            }
            other => {
                return Err(parse_err(line, format!("unknown node kind `{other}`")));
            }
        };
        index_of.insert(id, nodes.len());
        nodes.push(node);
    }

    let root = root.ok_or_else(|| parse_err(text.lines().count().max(1), "missing ROOT line"))?;
    let arity = max_var.max(declared.unwrap_or(0));
    if arity == 0 {
        return Err(parse_err(
            1,
            "circuit references no variables; declare `VARS <m>`",
        ));
    }
    Ok(Circuit { nodes, root, arity })
}

impl Circuit {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Evaluates the circuit at one point, node by node in definition
    /// order. This is the reference evaluator the bit-parallel
    /// [`materialize`] is tested against.
    pub fn evaluate(&self, p: Point) -> Result<bool> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch {
                point: p.arity(),
                function: self.arity,
            });
        }
        let mut value = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::True => true,
                Node::False => false,
                Node::Var(i) => p.coordinate(*i),
                Node::NVar(i) => !p.coordinate(*i),
                Node::And(cs) => cs.iter().all(|&c| value[c]),
                Node::Or(cs) => cs.iter().any(|&c| value[c]),
            };
            value.push(v);
        }
        Ok(value[self.root])
    }

    /// Per-node variable support masks (bit i-1 for variable i).
    fn supports(&self) -> Vec<u32> {
        let mut sup = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match node {
                Node::True | Node::False => 0,
                Node::Var(i) | Node::NVar(i) => 1u32 << (i - 1),
                Node::And(cs) | Node::Or(cs) => {
                    cs.iter().fold(0u32, |acc, &c| acc | sup[c])
                }
            };
            sup.push(s);
        }
        sup
    }

    /// Per-node truth tables over all 2^m points, bit-parallel (bit `idx`
    /// of a node's table = its value at point index `idx`).
    fn tables(&self) -> Vec<Vec<u64>> {
        let m = self.arity;
        let words = if m >= 6 { 1usize << (m - 6) } else { 1 };
        // Variable i contributes bit position m - i of the point index.
        // Positions below 6 vary inside a word with a fixed period;
        // positions 6 and up are constant within a word and follow the
        // word index instead.
        const PERIODIC: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        let var_word = |i: usize, w: usize| -> u64 {
            let pos = m - i;
            if pos < 6 {
                PERIODIC[pos]
            } else if w >> (pos - 6) & 1 == 1 {
                u64::MAX
            } else {
                0
            }
        };
        let mut tables: Vec<Vec<u64>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let t = match node {
                Node::True => vec![u64::MAX; words],
                Node::False => vec![0; words],
                Node::Var(i) => (0..words).map(|w| var_word(*i, w)).collect(),
                Node::NVar(i) => (0..words).map(|w| !var_word(*i, w)).collect(),
                Node::And(cs) => {
                    let mut acc = tables[cs[0]].clone();
                    for &c in &cs[1..] {
                        for (a, b) in acc.iter_mut().zip(&tables[c]) {
                            *a &= b;
                        }
                    }
                    acc
                }
                Node::Or(cs) => {
                    let mut acc = tables[cs[0]].clone();
                    for &c in &cs[1..] {
                        for (a, b) in acc.iter_mut().zip(&tables[c]) {
                            *a |= b;
                        }
                    }
                    acc
                }
            };
            tables.push(t);
        }
        tables
    }
}

/// Whether every AND node's children have pairwise-disjoint variable
/// supports. Purely syntactic: a variable occurring in two children fails
/// the check even if the overlap is semantically harmless.
pub fn check_decomposable(c: &Circuit) -> bool {
    let sup = c.supports();
    c.nodes.iter().all(|node| match node {
        Node::And(cs) => {
            let mut seen = 0u32;
            cs.iter().all(|&child| {
                if sup[child] & seen != 0 {
                    return false;
                }
                seen |= sup[child];
                true
            })
        }
        _ => true,
    })
}

/// Whether no point satisfies two distinct children of any OR node,
/// decided by enumerating the children's truth tables. `max_arity` bounds
/// the 2^m enumeration.
pub fn check_deterministic(c: &Circuit, max_arity: usize) -> Result<bool> {
    if c.arity > max_arity {
        return Err(Error::ArityTooLarge(c.arity, max_arity));
    }
    let tables = c.tables();
    let words = tables[0].len();
    let live = live_mask(c.arity);
    Ok(c.nodes.iter().all(|node| match node {
        Node::Or(cs) => {
            let mut union = vec![0u64; words];
            cs.iter().all(|&child| {
                let overlap = tables[child]
                    .iter()
                    .zip(&union)
                    .enumerate()
                    .any(|(w, (t, u))| t & u & word_mask(live, w) != 0);
                for (u, t) in union.iter_mut().zip(&tables[child]) {
                    *u |= t;
                }
                !overlap
            })
        }
        _ => true,
    }))
}

fn live_mask(m: usize) -> Option<u64> {
    if m < 6 {
        Some((1u64 << (1usize << m)) - 1)
    } else {
        None
    }
}

fn word_mask(live: Option<u64>, word: usize) -> u64 {
    debug_assert!(live.is_none() || word == 0);
    live.unwrap_or(u64::MAX)
}

/// Evaluates the circuit on every point and returns the truth table.
pub fn materialize(c: &Circuit, max_arity: usize) -> Result<BooleanFunction> {
    if c.arity > max_arity {
        return Err(Error::ArityTooLarge(c.arity, max_arity));
    }
    let tables = c.tables();
    Ok(BooleanFunction::from_words(
        c.arity,
        tables[c.root].clone(),
    ))
}
