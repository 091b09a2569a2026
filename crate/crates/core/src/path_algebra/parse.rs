//! Reading elements back from their printed form: `+`/`-` separated terms,
//! each a `*` product of an optional rational coefficient and vertex or edge
//! labels, leftmost factor applied last.

use super::{AlgElem, Quiver};
use crate::linalg::Rational;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseElemError {
    #[error("empty expression")]
    Empty,
    #[error("unbalanced brackets in {0}")]
    Unbalanced(String),
    #[error("unknown generator {0}")]
    UnknownLabel(String),
}

fn split_top(s: &str, seps: &[char]) -> Result<Vec<(char, String)>, ParseElemError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = '+';
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(ParseElemError::Unbalanced(s.into()));
        }
        if depth == 0 && seps.contains(&ch) {
            if !cur.trim().is_empty() {
                out.push((sign, std::mem::take(&mut cur)));
            }
            cur.clear();
            sign = ch;
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(ParseElemError::Unbalanced(s.into()));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    Ok(out)
}

pub fn parse_elem(q: &Quiver, text: &str) -> Result<AlgElem, ParseElemError> {
    let mut labels: HashMap<&str, AlgElem> = HashMap::new();
    for v in 0..q.vertex_count() {
        labels.insert(q.vertex_label(v), AlgElem::vertex(v));
    }
    for e in 0..q.edge_count() {
        labels.insert(q.edge(e).label.as_str(), AlgElem::word(q.edge_word(e)));
    }
    let text = text.trim();
    if text == "0" {
        return Ok(AlgElem::zero());
    }
    let terms = split_top(text, &['+', '-'])?;
    if terms.is_empty() {
        return Err(ParseElemError::Empty);
    }
    let mut out = AlgElem::zero();
    for (sign, t) in terms {
        let mut coeff = if sign == '-' { -Rational::one() } else { Rational::one() };
        let mut prod: Option<AlgElem> = None;
        for (_, f) in split_top(&t, &['*'])? {
            let f = f.trim();
            if let Ok(c) = f.parse::<Rational>() {
                coeff = &coeff * &c;
                continue;
            }
            let g = labels.get(f).ok_or_else(|| ParseElemError::UnknownLabel(f.into()))?;
            prod = Some(match prod {
                None => g.clone(),
                Some(p) => p.mul(g),
            });
        }
        match prod {
            Some(p) => out.add_scaled(&coeff, &p),
            None => return Err(ParseElemError::UnknownLabel(t.trim().into())),
        }
    }
    Ok(out)
}
