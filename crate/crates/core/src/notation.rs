//! Textual notation for multisegments.
//!
//! ```text
//! mseg := '0' | term ('+' term)*
//! term := (UINT '*')? seg
//! seg  := (LABEL ':')? '[' INT ',' INT ']'
//! ```
//!
//! Whitespace is ignored. Segments without a label live on line `"0"`.
//! `Display` on [`Multisegment`] produces the canonical form, which this
//! parser reads back.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::segment::{CuspidalPoint, Line, Segment};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && is_label_byte(self.src[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer out of range: {text}"),
        })
    }

    fn seg(&mut self, line: Line) -> Result<Segment> {
        self.expect(b'[')?;
        let b = self.int()?;
        self.expect(b',')?;
        let e = self.int()?;
        self.expect(b']')?;
        Segment::new(line, b, e)
    }

    /// `(UINT '*')? (LABEL ':')? seg`
    fn term(&mut self, out: &mut Vec<Segment>) -> Result<()> {
        let mut mult = 1usize;
        let mut line = Line::default();
        if self.peek() != Some(b'[') {
            let word_start = self.pos;
            let w = self.word();
            if w.is_empty() {
                return self.err("expected segment");
            }
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    mult = w.parse().map_err(|_| Error::Parse {
                        pos: word_start,
                        msg: format!("invalid multiplicity: {w}"),
                    })?;
                    if self.peek() != Some(b'[') {
                        let label = self.word();
                        if label.is_empty() {
                            return self.err("expected segment");
                        }
                        self.expect(b':')?;
                        line = Line::new(label);
                    }
                }
                Some(b':') => {
                    self.pos += 1;
                    line = Line::new(w);
                }
                _ => return self.err("expected '*' or ':'"),
            }
        }
        let s = self.seg(line)?;
        out.extend(std::iter::repeat_n(s, mult));
        Ok(())
    }

    fn mseg(&mut self) -> Result<Multisegment> {
        let rest = std::str::from_utf8(self.src).expect("ascii").trim();
        if rest == "0" {
            return Ok(Multisegment::zero());
        }
        let mut segs = Vec::new();
        self.term(&mut segs)?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            self.term(&mut segs)?;
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(Multisegment::new(segs))
    }
}

fn is_label_byte(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'.'
}

pub fn parse_mseg(text: &str) -> Result<Multisegment> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(Error::Parse {
            pos,
            msg: "non-ascii input".into(),
        });
    }
    Parser::new(text).mseg()
}

/// Parse a point written `LABEL:INT` or `INT` (default line).
pub fn parse_point(text: &str) -> Result<CuspidalPoint> {
    let text = text.trim();
    let (line, num) = match text.rsplit_once(':') {
        Some((l, n)) if !l.is_empty() && l.bytes().all(is_label_byte) => (Line::new(l), n),
        Some(_) => {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("invalid line label in {text:?}"),
            })
        }
        None => (Line::default(), text),
    };
    let pos = num.trim().parse().map_err(|_| Error::Parse {
        pos: text.len() - num.len(),
        msg: format!("invalid position {num:?}"),
    })?;
    Ok(CuspidalPoint { line, pos })
}

impl FromStr for Multisegment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_mseg(s)
    }
}
