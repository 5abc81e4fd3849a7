//! Polycyclic presentations and their text format.
//!
//! Generators `g_1, ..., g_s` come with relative orders `m_i`, power rules
//! `g_i^{m_i} = w_i` and conjugation rules `g_j^{g_i} = g_i^{-1} g_j g_i = w_{ij}`
//! for `i < j`, where every right-hand side is a word in `g_{i+1}, ..., g_s`.
//! Missing rules default to the identity and to commuting generators.
//!
//! Text format, one statement per line, `#` starts a comment:
//!
//! ```text
//! gen b order 2
//! gen a order 4
//! conj a b = a^-1      # a^b = b^-1 a b, b listed before a
//! pow a = 1
//! ```

use crate::error::{invalid, Result};
use std::collections::BTreeMap;

/// A word as (generator index, exponent) letters.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PcPresentation {
    pub names: Vec<String>,
    pub rel_orders: Vec<u32>,
    pub powers: Vec<Word>,
    /// `(i, j) -> w` with `i < j` meaning `g_j^{g_i} = w`.
    pub conj: BTreeMap<(usize, usize), Word>,
}

impl PcPresentation {
    pub fn new() -> PcPresentation {
        PcPresentation::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Product of the relative orders.
    pub fn order(&self) -> u128 {
        self.rel_orders.iter().map(|&m| m as u128).product()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Appends a generator below all existing ones.
    pub fn gen(mut self, name: &str, order: u32) -> Self {
        self.add_gen(name, order).expect("valid generator");
        self
    }

    /// Sets `x^{m_x} = word`.
    pub fn pow(mut self, x: &str, word: &str) -> Self {
        self.set_pow(x, word).expect("valid power rule");
        self
    }

    /// Sets `x^y = word` (`y` must precede `x`).
    pub fn conj(mut self, x: &str, y: &str, word: &str) -> Self {
        self.set_conj(x, y, word).expect("valid conjugation rule");
        self
    }

    pub fn add_gen(&mut self, name: &str, order: u32) -> Result<()> {
        if self.index_of(name).is_some() {
            return invalid(format!("generator {name} declared twice"));
        }
        if order < 2 {
            return invalid(format!("generator {name} needs relative order at least 2"));
        }
        if !name.chars().all(|c| c.is_alphanumeric() || c == '_') || name.is_empty() {
            return invalid(format!("bad generator name {name:?}"));
        }
        self.names.push(name.to_string());
        self.rel_orders.push(order);
        self.powers.push(Vec::new());
        Ok(())
    }

    pub fn set_pow(&mut self, x: &str, word: &str) -> Result<()> {
        let i = self.lookup(x)?;
        let w = self.parse_word(word)?;
        self.check_below(&w, i, x)?;
        self.powers[i] = w;
        Ok(())
    }

    pub fn set_conj(&mut self, x: &str, y: &str, word: &str) -> Result<()> {
        let j = self.lookup(x)?;
        let i = self.lookup(y)?;
        if i >= j {
            return invalid(format!("conj {x} {y}: {y} must be listed before {x}"));
        }
        let w = self.parse_word(word)?;
        self.check_below(&w, i, x)?;
        self.conj.insert((i, j), w);
        Ok(())
    }

    fn lookup(&self, name: &str) -> Result<usize> {
        match self.index_of(name) {
            Some(i) => Ok(i),
            None => invalid(format!("unknown generator {name}")),
        }
    }

    fn check_below(&self, w: &Word, i: usize, ctx: &str) -> Result<()> {
        if let Some(&(g, _)) = w.iter().find(|&&(g, _)| g <= i) {
            return invalid(format!(
                "rule for {ctx}: word may only use generators after {}, found {}",
                self.names[i], self.names[g]
            ));
        }
        Ok(())
    }

    /// Parses `a^-1 b^2 c`; `1` or an empty string is the identity.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(out);
        }
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => match e.parse::<i64>() {
                    Ok(v) => (n, v),
                    Err(_) => return invalid(format!("bad exponent in {tok:?}")),
                },
                None => (tok, 1),
            };
            out.push((self.lookup(name)?, exp));
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<PcPresentation> {
        let mut p = PcPresentation::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| invalid(format!("line {}: {m}", ln + 1));
            let (head, rhs) = match line.split_once('=') {
                Some((h, r)) => (h.trim(), Some(r.trim())),
                None => (line, None),
            };
            let parts: Vec<&str> = head.split_whitespace().collect();
            let res = match (parts.as_slice(), rhs) {
                (["gen", name, "order", n], None) => match n.parse::<u32>() {
                    Ok(n) => p.add_gen(name, n),
                    Err(_) => return err("order must be a positive integer"),
                },
                (["pow", x], Some(w)) => p.set_pow(x, w),
                (["conj", x, y], Some(w)) => p.set_conj(x, y, w),
                _ => return err("expected `gen X order N`, `pow X = WORD` or `conj X Y = WORD`"),
            };
            if let Err(e) = res {
                return err(&e.to_string());
            }
        }
        if p.is_empty() {
            return invalid("presentation declares no generators");
        }
        Ok(p)
    }

    /// Renders in the text format accepted by [`PcPresentation::parse`].
    pub fn to_text(&self) -> String {
        let word = |w: &Word| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.iter()
                .map(|&(g, e)| if e == 1 { self.names[g].clone() } else { format!("{}^{}", self.names[g], e) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut s = String::new();
        for (n, m) in self.names.iter().zip(&self.rel_orders) {
            s += &format!("gen {n} order {m}\n");
        }
        for (i, w) in self.powers.iter().enumerate() {
            if !w.is_empty() {
                s += &format!("pow {} = {}\n", self.names[i], word(w));
            }
        }
        for (&(i, j), w) in &self.conj {
            s += &format!("conj {} {} = {}\n", self.names[j], self.names[i], word(w));
        }
        s
    }

    /// Presentation of `self x other` with `other`'s generators appended.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<PcPresentation> {
        let mut p = self.clone();
        let off = self.len();
        for n in &other.names {
            if p.index_of(n).is_some() {
                return invalid(format!("generator name {n} occurs in both factors"));
            }
        }
        p.names.extend(other.names.iter().cloned());
        p.rel_orders.extend(other.rel_orders.iter().copied());
        for w in &other.powers {
            p.powers.push(w.iter().map(|&(g, e)| (g + off, e)).collect());
        }
        for (&(i, j), w) in &other.conj {
            p.conj.insert((i + off, j + off), w.iter().map(|&(g, e)| (g + off, e)).collect());
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let text = "# dihedral of order 8\ngen b order 2\ngen a order 4\nconj a b = a^-1\n";
        let p = PcPresentation::parse(text).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(p.conj[&(0, 1)], vec![(1, -1)]);
        assert_eq!(PcPresentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!(PcPresentation::parse("gen a order 4\npow b = a\n").is_err());
        assert!(PcPresentation::parse("gen a order 4\ngen b order 2\nconj a b = a\n").is_err());
        assert!(PcPresentation::parse("gen a order 4\ngen a order 2\n").is_err());
        assert!(PcPresentation::parse("gen a order x\n").is_err());
        assert!(PcPresentation::parse("# nothing\n").is_err());
        assert!(PcPresentation::parse("gen a order 4\npow a = a\n").is_err());
    }
}
