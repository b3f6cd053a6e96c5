//! Words over presentation generators and the text syntax for relators.
//!
//! Syntax: `g1..gk` are generators, `G1..Gk` their inverses, juxtaposition is
//! the product, `x^n` a power (negative `n` inverts), `(…)` groups,
//! `[x,y]` is the commutator `x⁻¹y⁻¹xy`, `1` is the empty word, and a relation
//! `lhs = rhs` is normalised to the relator `lhs·rhs⁻¹`.

use std::fmt;

use super::CatalogError;
use crate::group::{Elem, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column in a coset table: `2·gen` for the generator, `2·gen + 1` for its
    /// inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Word {
        Word(vec![Letter {
            gen: i,
            inverse: false,
        }])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters).reduced()
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters).reduced()
    }

    /// `(a, b) = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// `a^b = b⁻¹ab`.
    pub fn conjugate(a: &Word, b: &Word) -> Word {
        b.inverse().mul(a).mul(b)
    }

    /// Free reduction: cancels adjacent `x x⁻¹` pairs.
    pub fn reduced(self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Cyclic reduction, used for relators where conjugates are equivalent.
    pub fn cyclically_reduced(self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// The group element obtained by substituting `images[i]` for `g{i+1}`.
    pub fn evaluate(&self, g: &Group, images: &[Elem]) -> Elem {
        self.0.iter().fold(Elem::IDENTITY, |acc, l| {
            let x = images[l.gen];
            g.mul(acc, if l.inverse { g.inv(x) } else { x })
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            let c = if l.inverse { 'G' } else { 'g' };
            write!(f, "{c}{}", l.gen + 1)?;
        }
        Ok(())
    }
}

/// Generators plus relator words, each implicitly equal to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Presentation, CatalogError> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= num_generators {
                    return Err(CatalogError::Presentation(format!(
                        "relator {r} uses generator g{} but only {num_generators} exist",
                        g + 1
                    )));
                }
            }
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    /// Parses one relator per entry in the text syntax described at the top
    /// of this module. Empty relators (such as `g1 = g1`) are dropped.
    pub fn parse(num_generators: usize, relators: &[&str]) -> Result<Presentation, CatalogError> {
        let mut words = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            let w = parse_relator(r, num_generators).map_err(|message| CatalogError::Parse {
                line: i + 1,
                message,
            })?;
            if !w.is_empty() {
                words.push(w);
            }
        }
        Presentation::new(num_generators, words)
    }
}

/// Parses a single expression (no `=`) into a freely reduced word, keeping it
/// as written rather than cyclically reducing it.
pub fn parse_word(text: &str, num_generators: usize) -> Result<Word, String> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        num_generators,
    };
    let w = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(format!(
            "unexpected character '{}' at column {}",
            p.bytes[p.pos] as char,
            p.pos + 1
        ));
    }
    Ok(w)
}

/// Parses `expr` or `expr = expr` into a single relator.
pub fn parse_relator(text: &str, num_generators: usize) -> Result<Word, String> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        num_generators,
    };
    let lhs = p.expr()?;
    p.skip_ws();
    let word = if p.eat(b'=') {
        let rhs = p.expr()?;
        lhs.mul(&rhs.inverse())
    } else {
        lhs
    };
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(format!(
            "unexpected character '{}' at column {}",
            p.bytes[p.pos] as char,
            p.pos + 1
        ));
    }
    Ok(word.cyclically_reduced())
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    num_generators: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!(
                "expected '{}' at column {}",
                c as char,
                self.pos + 1
            ))
        }
    }

    fn expr(&mut self) -> Result<Word, String> {
        let mut w = Word::identity();
        while let Some(c) = self.peek() {
            if matches!(c, b'g' | b'G' | b'(' | b'[' | b'1') {
                let t = self.term()?;
                w = w.mul(&t);
            } else {
                break;
            }
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, String> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let n = self.integer()?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word, String> {
        let col = self.pos + 1;
        match self.peek() {
            Some(c @ (b'g' | b'G')) => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let k: usize = digits
                    .parse()
                    .map_err(|_| format!("generator without index at column {col}"))?;
                if k == 0 || k > self.num_generators {
                    return Err(format!(
                        "generator index {k} at column {col} outside 1..={}",
                        self.num_generators
                    ));
                }
                let w = Word::gen(k - 1);
                Ok(if c == b'G' { w.inverse() } else { w })
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some(c) => Err(format!(
                "unexpected character '{}' at column {col}",
                c as char
            )),
            None => Err(format!("unexpected end of input at column {col}")),
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| format!("expected an exponent at column {}", start + 1))
    }
}
