//! Instance and order files.
//!
//! An instance is a header `p oslcm <x_count> <y_count> <m>` followed by `m`
//! edge lines `<x> <y>`. Fixed vertices are numbered `1..=x_count` and free
//! vertices continue at `x_count + 1`, so a free vertex `y` appears in files as
//! `x_count + y`. Lines starting with `c` are comments and may appear anywhere.
//!
//! Orders use the same file numbering: one free vertex per line, leftmost
//! first.

use std::fmt::Write as _;

use oslcm_core::{Edge, Error, TwoLayerNetwork, YOrder};
use sha2::{Digest, Sha256};

use crate::error::ParseError;

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ") || line.starts_with("c\t")
}

fn number(token: &str, line: usize, what: &str) -> Result<u32, ParseError> {
    token.parse().map_err(|_| {
        ParseError::new(
            line,
            format!("{what} `{token}` is not a non-negative integer"),
        )
    })
}

pub fn parse_instance(text: &str) -> Result<TwoLayerNetwork, ParseError> {
    let mut header: Option<(u32, u32, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((x_count, y_count, m)) = header else {
            if tokens.first() != Some(&"p") {
                return Err(ParseError::new(
                    line,
                    "expected header `p oslcm <x_count> <y_count> <m>`",
                ));
            }
            if tokens.len() != 5 || tokens[1] != "oslcm" {
                return Err(ParseError::new(
                    line,
                    format!("malformed header `{trimmed}`"),
                ));
            }
            let x_count = number(tokens[2], line, "x_count")?;
            let y_count = number(tokens[3], line, "y_count")?;
            let m = number(tokens[4], line, "edge count")? as usize;
            if x_count.checked_add(y_count).is_none() {
                return Err(ParseError::new(line, "vertex count exceeds 32 bits"));
            }
            header = Some((x_count, y_count, m));
            continue;
        };
        if tokens[0] == "p" {
            return Err(ParseError::new(line, "duplicate header"));
        }
        if tokens.len() != 2 {
            return Err(ParseError::new(
                line,
                format!("expected `<x> <y>`, found `{trimmed}`"),
            ));
        }
        if edges.len() == m {
            return Err(ParseError::new(
                line,
                format!("edge count mismatch: header declares {m} edges, found more"),
            ));
        }
        let x = number(tokens[0], line, "x")?;
        let y = number(tokens[1], line, "y")?;
        if x < 1 || x > x_count {
            return Err(ParseError::new(
                line,
                format!("x = {x} outside 1..={x_count}"),
            ));
        }
        if y <= x_count || y - x_count > y_count {
            return Err(ParseError::new(
                line,
                format!("y = {y} outside {}..={}", x_count + 1, x_count + y_count),
            ));
        }
        edges.push(Edge::new(x, y - x_count));
        edge_lines.push(line);
    }

    let Some((x_count, y_count, m)) = header else {
        return Err(ParseError::new(
            last_line.max(1),
            "missing header `p oslcm <x_count> <y_count> <m>`",
        ));
    };
    if edges.len() != m {
        return Err(ParseError::new(
            last_line.max(1),
            format!(
                "edge count mismatch: header declares {m} edges, found {}",
                edges.len()
            ),
        ));
    }
    TwoLayerNetwork::new(x_count, y_count, edges).map_err(|err| match err {
        Error::DuplicateEdge { first, second, .. } => ParseError::new(
            edge_lines[second],
            format!("duplicate edge (first given on line {})", edge_lines[first]),
        ),
        other => ParseError::new(last_line, other.to_string()),
    })
}

pub fn write_instance(network: &TwoLayerNetwork) -> String {
    write_instance_with_comments(network, &[])
}

pub fn write_instance_with_comments(network: &TwoLayerNetwork, comments: &[String]) -> String {
    let x_count = network.x_count();
    let mut text = String::with_capacity(16 + network.edge_count() * 12);
    for comment in comments {
        for line in comment.lines() {
            let _ = writeln!(text, "c {line}");
        }
    }
    let _ = writeln!(
        text,
        "p oslcm {} {} {}",
        x_count,
        network.y_count(),
        network.edge_count()
    );
    for edge in network.edges() {
        let _ = writeln!(text, "{} {}", edge.x, x_count + edge.y);
    }
    text
}

/// SHA-256 of the canonical (comment-free) instance text, hex encoded.
pub fn instance_digest(network: &TwoLayerNetwork) -> String {
    hex::encode(Sha256::digest(write_instance(network).as_bytes()))
}

/// Free vertices in file numbering, leftmost first.
pub fn order_file_ids(network: &TwoLayerNetwork, order: &YOrder) -> Vec<u32> {
    order
        .positions()
        .iter()
        .map(|&y| network.x_count() + y)
        .collect()
}

/// Reads free-vertex ids (file numbering) separated by whitespace or commas.
/// The result is checked to be a permutation of the free layer.
pub fn parse_order(text: &str, network: &TwoLayerNetwork) -> Result<YOrder, ParseError> {
    let x_count = network.x_count();
    let mut positions = Vec::with_capacity(network.y_count() as usize);
    let mut seen_on = vec![0usize; network.y_count() as usize];
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        for token in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let id = number(token, line, "vertex id")?;
            if id <= x_count || id - x_count > network.y_count() {
                return Err(ParseError::new(
                    line,
                    format!(
                        "vertex {id} is not a free vertex (expected {}..={})",
                        x_count + 1,
                        x_count + network.y_count()
                    ),
                ));
            }
            let y = id - x_count;
            let first = seen_on[y as usize - 1];
            if first != 0 {
                return Err(ParseError::new(
                    line,
                    format!("vertex {id} already listed on line {first}"),
                ));
            }
            seen_on[y as usize - 1] = line;
            positions.push(y);
        }
    }
    if positions.len() != network.y_count() as usize {
        return Err(ParseError::new(
            last_line.max(1),
            format!(
                "order lists {} of {} free vertices",
                positions.len(),
                network.y_count()
            ),
        ));
    }
    Ok(YOrder::new(network, positions).expect("checked to be a permutation"))
}

pub fn write_order(network: &TwoLayerNetwork, order: &YOrder) -> String {
    let mut text = String::new();
    for id in order_file_ids(network, order) {
        let _ = writeln!(text, "{id}");
    }
    text
}

/// Integers separated by whitespace or commas; `#` and `c` lines are comments.
pub fn parse_values(text: &str) -> Result<Vec<u64>, ParseError> {
    let mut values = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || is_comment(trimmed) {
            continue;
        }
        for token in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let value = token.parse().map_err(|_| {
                ParseError::new(
                    index + 1,
                    format!("`{token}` is not a non-negative integer"),
                )
            })?;
            values.push(value);
        }
    }
    Ok(values)
}
