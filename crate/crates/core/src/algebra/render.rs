//! Canonical text rendering and parsing of polynomials.
//!
//! A root variable renders as `<letter><slot>` optionally followed by
//! `_<node>`, e.g. `x2_q` is the second root at node `q` on factor 1.
//! Factor letters default to `x, y, s, t`; `z` is the equivariant parameter.

use std::fmt::Write as _;

use super::poly::MPoly;
use super::rat::Rat;
use super::var::{Monomial, VarId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Naming context: node names and per-factor letters.
#[derive(Clone, Debug)]
pub struct VarNames {
    /// `None` renders node indices numerically (node 0 unsuffixed).
    pub nodes: Option<Vec<String>>,
    pub letters: Vec<String>,
}

impl Default for VarNames {
    fn default() -> Self {
        VarNames {
            nodes: None,
            letters: ["x", "y", "s", "t"].map(String::from).to_vec(),
        }
    }
}

impl VarNames {
    pub fn with_nodes(nodes: &[String]) -> Self {
        VarNames {
            nodes: Some(nodes.to_vec()),
            ..Default::default()
        }
    }

    pub fn with_letters(mut self, letters: &[&str]) -> Self {
        self.letters = letters.iter().map(|s| s.to_string()).collect();
        self
    }

    fn letter(&self, factor: u8) -> String {
        self.letters
            .get(factor as usize - 1)
            .cloned()
            .unwrap_or_else(|| format!("f{factor}r"))
    }

    pub fn render_var(&self, v: VarId) -> String {
        match v {
            VarId::Z => "z".into(),
            VarId::Root { factor, node, slot } => {
                let mut s = format!("{}{}", self.letter(factor), slot + 1);
                match &self.nodes {
                    Some(names) if names.len() > 1 => {
                        let _ = write!(s, "_{}", names[node as usize]);
                    }
                    Some(_) => {}
                    None if node == 0 => {}
                    None => {
                        let _ = write!(s, "_{node}");
                    }
                }
                s
            }
        }
    }

    fn lookup_node(&self, name: &str) -> Option<u16> {
        match &self.nodes {
            Some(names) => names.iter().position(|n| n == name).map(|i| i as u16),
            None => name.parse().ok(),
        }
    }

    fn default_node(&self) -> Option<u16> {
        match &self.nodes {
            Some(names) if names.len() > 1 => None,
            _ => Some(0),
        }
    }
}

fn render_monomial(m: &Monomial, names: &VarNames) -> String {
    let mut parts = Vec::new();
    for &(v, e) in m.iter() {
        let s = names.render_var(v);
        parts.push(if e == 1 { s } else { format!("{s}^{e}") });
    }
    parts.join("*")
}

/// Renders `p` with monomials in descending graded-lex order.
pub fn render_poly(p: &MPoly, names: &VarNames) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            let _ = write!(out, "{a}");
        } else if a.is_one() {
            out.push_str(&render_monomial(m, names));
        } else {
            let _ = write!(out, "{a}*{}", render_monomial(m, names));
        }
    }
    out
}

/// Parses a polynomial expression: sums, products, integer powers,
/// parentheses, rational literals and variables.
pub fn parse_poly(s: &str, names: &VarNames) -> Result<MPoly, ParseError> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
        names,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a VarNames,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc.add_assign(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc.sub_assign(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = d
                        .as_constant()
                        .filter(|c| !c.is_zero())
                        .ok_or_else(|| self.err("division only by nonzero constants"))?;
                    acc = acc.div_rat(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected non-negative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Rat = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(MPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() => self.variable(),
            _ => Err(self.err("expected a term")),
        }
    }

    fn variable(&mut self) -> Result<MPoly, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let letter = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_string();
        let dstart = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.s[dstart..self.pos]).unwrap();
        if letter == "z" && digits.is_empty() {
            return Ok(MPoly::z());
        }
        let factor = self
            .names
            .letters
            .iter()
            .position(|l| *l == letter)
            .ok_or_else(|| ParseError {
                pos: start,
                msg: format!("unknown variable `{letter}`"),
            })?
            + 1;
        let slot: usize = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| self.err("bad slot"))?
        };
        if slot == 0 {
            return Err(ParseError {
                pos: dstart,
                msg: "slots are numbered from 1".into(),
            });
        }
        let node = if self.s.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            let nstart = self.pos;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'\'')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[nstart..self.pos]).unwrap();
            self.names.lookup_node(name).ok_or_else(|| ParseError {
                pos: nstart,
                msg: format!("unknown node `{name}`"),
            })?
        } else {
            self.names
                .default_node()
                .ok_or_else(|| self.err("node suffix required for multi-node quivers"))?
        };
        Ok(MPoly::var(VarId::Root {
            factor: factor as u8,
            node,
            slot: (slot - 1) as u16,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_canonical() {
        let n = VarNames::default();
        let p = parse_poly("3/2*x1^2 - x2*y1 + 2 - z", &n).unwrap();
        assert_eq!(render_poly(&p, &n), "3/2*x1^2 - x2*y1 - z + 2");
        assert_eq!(render_poly(&MPoly::zero(), &n), "0");
        assert_eq!(
            render_poly(&parse_poly("-(x+1)^2", &n).unwrap(), &n),
            "-x1^2 - 2*x1 - 1"
        );
    }

    #[test]
    fn node_names() {
        let n = VarNames::with_nodes(&["p".into(), "q".into()]);
        let p = parse_poly("x1_p*x2_q + x1_q", &n).unwrap();
        assert_eq!(render_poly(&p, &n), "x1_p*x2_q + x1_q");
        assert!(parse_poly("x1", &n).is_err());
        assert!(parse_poly("w1", &n).is_err());
        assert!(parse_poly("x0", &n).is_err());
    }

    #[test]
    fn roundtrip() {
        let n = VarNames::with_nodes(&["a".into(), "b".into()]);
        for s in [
            "0",
            "1/3",
            "-x1_a^3*y2_b + 7/5*z^2*x1_b - 1",
            "(x1_a - y1_a)*(z + s1_b)",
        ] {
            let p = parse_poly(s, &n).unwrap();
            let back = parse_poly(&render_poly(&p, &n), &n).unwrap();
            assert_eq!(p, back);
        }
    }
}
