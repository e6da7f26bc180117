//! Recursive-descent parser for the ring-construction language and element
//! literals. Whitespace is insignificant; errors carry a byte offset and
//! what was expected.

use ringlab_core::{ElemLit, RingExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

pub struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a constructor name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if text.is_empty() || text == "-" {
            self.pos = start;
            return self.err("expected an integer");
        }
        text.parse().map_err(|_| ParseError {
            offset: start,
            message: format!("integer '{text}' out of range"),
        })
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        if v < 0 {
            self.pos = start;
            return self.err("expected a nonnegative integer");
        }
        Ok(v as u64)
    }

    /// `ring := Z(n) | GF(p,[..]) | M(k,ring) | UT(k,ring) | Prod(ring,..)
    ///        | Quot(ring,{elem,..}) | Corner(ring,elem) | Table(path)`
    pub fn ring(&mut self) -> Result<RingExpr, ParseError> {
        let name = self.ident()?;
        self.expect(b'(')?;
        let expr = match name.as_str() {
            "Z" => RingExpr::Zn { modulus: self.nat()? },
            "GF" => {
                let prime = self.nat()?;
                self.expect(b',')?;
                let poly = self.int_list()?;
                RingExpr::GFp { prime, poly }
            }
            "M" => {
                let size = self.nat()? as usize;
                self.expect(b',')?;
                let base = self.ring()?;
                RingExpr::Mat {
                    size,
                    base: Box::new(base),
                }
            }
            "UT" => {
                let size = self.nat()? as usize;
                self.expect(b',')?;
                let base = self.ring()?;
                RingExpr::UpperTri {
                    size,
                    base: Box::new(base),
                }
            }
            "Prod" => {
                let mut factors = vec![self.ring()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    factors.push(self.ring()?);
                }
                if factors.len() < 2 {
                    return self.err("Prod needs at least two factors");
                }
                RingExpr::Prod { factors }
            }
            "Quot" => {
                let base = self.ring()?;
                self.expect(b',')?;
                self.expect(b'{')?;
                let mut ideal_gens = vec![self.elem()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    ideal_gens.push(self.elem()?);
                }
                self.expect(b'}')?;
                RingExpr::Quot {
                    base: Box::new(base),
                    ideal_gens,
                }
            }
            "Corner" => {
                let base = self.ring()?;
                self.expect(b',')?;
                let idem = self.elem()?;
                RingExpr::Corner {
                    base: Box::new(base),
                    idem: Box::new(idem),
                }
            }
            "Table" => {
                // Paths are raw text up to the closing parenthesis.
                self.skip_ws();
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|&c| c != b')') {
                    self.pos += 1;
                }
                let path = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .trim()
                    .to_string();
                if path.is_empty() {
                    return self.err("expected a table path");
                }
                RingExpr::Table { source: path }
            }
            other => {
                return Err(ParseError {
                    offset: self.pos - other.len() - 1,
                    message: format!(
                        "unknown constructor '{other}' (expected Z, GF, M, UT, Prod, Quot, Corner or Table)"
                    ),
                })
            }
        };
        self.expect(b')')?;
        Ok(expr)
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect(b'[')?;
        let mut items = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            items.push(self.int()?);
        }
        self.expect(b']')?;
        Ok(items)
    }

    /// `elem := int | [elem,..] | (elem,..)`
    pub fn elem(&mut self) -> Result<ElemLit, ParseError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = vec![self.elem()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.elem()?);
                }
                self.expect(b']')?;
                Ok(ElemLit::List(items))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut items = vec![self.elem()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.elem()?);
                }
                self.expect(b')')?;
                Ok(ElemLit::Tuple(items))
            }
            _ => Ok(ElemLit::Int(self.int()?)),
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parses a complete ring expression.
pub fn parse_ring(src: &str) -> Result<RingExpr, ParseError> {
    let mut p = Parser::new(src);
    let expr = p.ring()?;
    p.end()?;
    Ok(expr)
}

/// Parses a complete element literal.
pub fn parse_elem(src: &str) -> Result<ElemLit, ParseError> {
    let mut p = Parser::new(src);
    let lit = p.elem()?;
    p.end()?;
    Ok(lit)
}

/// Splits a comma-separated list of element literals at bracket depth zero,
/// so `[[0,1],[0,0]],[[0,0],[1,0]]` yields two literals.
pub fn split_elems(src: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in src.char_indices() {
        match c {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(src[start..].trim());
    parts.retain(|p| !p.is_empty());
    parts
}
