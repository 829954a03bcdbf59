//! The canonical text grammar: field elements (`u^2+u+1`), ring elements
//! (`t^3+t+1`, `(u+1)*t^2+u`), multivariate polynomials
//! (`(t^2+1)*x0^3 + t*x1*x2^2`) and matrices (`t, 1; 1, t`).
//!
//! Parsing is the exact inverse of printing: `parse(print(x)) == x` for
//! every value, and printing a parsed canonical string reproduces it.
//! Parsers additionally accept whitespace, `-` for subtraction and
//! redundant parentheses, which the printers never emit.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::PolyMatrix;
use crate::mpoly::MultiPoly;
use crate::ring::RingElement;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner { src: src.as_bytes(), pos: 0 }
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
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(Error::parse(self.pos, format!("expected '{}'", c as char))),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| Error::parse(start, "number out of range"))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// One `c`, `u`, `c*u^k` piece of a field-element expression. A `*` after
/// the coefficient is consumed only when `u` follows; otherwise it belongs
/// to an enclosing grammar level (`2*t`, `2*x0`) and is left in place.
fn field_term(sc: &mut Scanner, field: &Field) -> Result<FieldElement> {
    let mut coeff: Option<u64> = None;
    if matches!(sc.peek(), Some(c) if c.is_ascii_digit()) {
        let pos = sc.pos;
        let n = sc.number()?;
        if n >= field.p() {
            return Err(Error::parse(pos, format!("coefficient {n} not in F_{}", field.p())));
        }
        coeff = Some(n);
        let save = sc.pos;
        if !sc.eat(b'*') || sc.peek() != Some(b'u') {
            sc.pos = save;
            return field.element(coeff.unwrap());
        }
    }
    let pos = sc.pos;
    sc.expect(b'u').map_err(|_| Error::parse(pos, "expected 'u' or a digit"))?;
    if field.extension_degree() == 1 {
        return Err(Error::parse(pos, "'u' is not an element of a prime field"));
    }
    let exp = if sc.eat(b'^') { sc.number()? } else { 1 };
    if exp >= field.extension_degree() as u64 {
        return Err(Error::parse(pos, format!("u^{exp} is not reduced in this field")));
    }
    let mut coords = vec![0u64; exp as usize + 1];
    coords[exp as usize] = coeff.unwrap_or(1);
    field.from_coords(&coords)
}

fn field_expr(sc: &mut Scanner, field: &Field) -> Result<FieldElement> {
    let mut acc = field_term(sc, field)?;
    loop {
        if sc.eat(b'+') {
            acc = &acc + &field_term(sc, field)?;
        } else if sc.eat(b'-') {
            acc = &acc - &field_term(sc, field)?;
        } else {
            return Ok(acc);
        }
    }
}

/// Parse a field element in the `u`-grammar; inverse of its `Display`.
pub fn parse_field_element(text: &str, field: &Field) -> Result<FieldElement> {
    let mut sc = Scanner::new(text);
    let v = field_expr(&mut sc, field)?;
    if !sc.at_end() {
        return Err(Error::parse(sc.pos, "trailing input after field element"));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Ring elements
// ---------------------------------------------------------------------------

/// One `c`, `t^k`, `c*t^k`, `(expr)*t^k` piece. As in [`field_term`], a `*`
/// after the coefficient is consumed only when `t` follows.
fn ring_term(sc: &mut Scanner, field: &Field) -> Result<RingElement> {
    let mut coeff: Option<FieldElement> = None;
    match sc.peek() {
        Some(b'(') => {
            sc.expect(b'(')?;
            coeff = Some(field_expr(sc, field)?);
            sc.expect(b')')?;
            let save = sc.pos;
            if !sc.eat(b'*') || sc.peek() != Some(b't') {
                sc.pos = save;
                return Ok(RingElement::constant(&coeff.unwrap()));
            }
        }
        Some(c) if c.is_ascii_digit() || c == b'u' => {
            coeff = Some(field_term(sc, field)?);
            let save = sc.pos;
            if !sc.eat(b'*') || sc.peek() != Some(b't') {
                sc.pos = save;
                return Ok(RingElement::constant(&coeff.unwrap()));
            }
        }
        _ => {}
    }
    let pos = sc.pos;
    sc.expect(b't').map_err(|_| Error::parse(pos, "expected 't', a coefficient or '('"))?;
    let exp = if sc.eat(b'^') { sc.number()? } else { 1 };
    let c = coeff.unwrap_or_else(|| field.one());
    Ok(RingElement::monomial(field, &c, exp as usize))
}

fn ring_expr(sc: &mut Scanner, field: &Field) -> Result<RingElement> {
    let mut acc = ring_term(sc, field)?;
    loop {
        if sc.eat(b'+') {
            acc = acc.add(&ring_term(sc, field)?);
        } else if sc.eat(b'-') {
            acc = acc.sub(&ring_term(sc, field)?);
        } else {
            return Ok(acc);
        }
    }
}

/// Parse an `F_q[t]` element in the canonical grammar; inverse of `Display`.
pub fn parse_ring_element(text: &str, field: &Field) -> Result<RingElement> {
    let mut sc = Scanner::new(text);
    let v = ring_expr(&mut sc, field)?;
    if !sc.at_end() {
        return Err(Error::parse(sc.pos, "trailing input after polynomial"));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Multivariate polynomials
// ---------------------------------------------------------------------------

/// One term: `coeff`, `coeff*vars`, or bare `vars` with variables `x0..x9`.
fn multi_term(sc: &mut Scanner, field: &Field, nvars: usize) -> Result<(Vec<u32>, RingElement)> {
    let mut coeff: Option<RingElement> = None;
    match sc.peek() {
        Some(b'(') => {
            sc.expect(b'(')?;
            coeff = Some(ring_expr(sc, field)?);
            sc.expect(b')')?;
            if !sc.eat(b'*') {
                return Ok((vec![0; nvars], coeff.unwrap()));
            }
        }
        Some(c) if c.is_ascii_digit() || c == b'u' || c == b't' => {
            coeff = Some(ring_expr(sc, field)?);
            if !sc.eat(b'*') {
                return Ok((vec![0; nvars], coeff.unwrap()));
            }
        }
        _ => {}
    }
    let mut exps = vec![0u32; nvars];
    loop {
        let pos = sc.pos;
        match sc.peek() {
            Some(b'x') => {
                sc.expect(b'x')?;
                let idx = sc.number()?;
                if idx as usize >= nvars {
                    return Err(Error::parse(
                        pos,
                        format!("variable x{idx} out of range (this context has {nvars} variables)"),
                    ));
                }
                let e = if sc.eat(b'^') { sc.number()? } else { 1 };
                exps[idx as usize] += e as u32;
            }
            Some(c) if c.is_ascii_alphabetic() && c != b'x' => {
                return Err(Error::parse(pos, format!("unknown variable '{}'", c as char)));
            }
            _ => {
                return Err(Error::parse(pos, "expected a variable like x0"));
            }
        }
        if !sc.eat(b'*') {
            break;
        }
        // after '*', either another variable or (rare) a further coefficient
        // is not part of the grammar; only variables may follow
    }
    Ok((exps, coeff.unwrap_or_else(|| RingElement::one(field))))
}

/// Parse a multivariate polynomial with variables `x0..x{nvars-1}`.
pub fn parse_multipoly(text: &str, field: &Field, nvars: usize) -> Result<MultiPoly> {
    if nvars == 0 || nvars > 10 {
        return Err(Error::precondition("the grammar supports 1 to 10 variables (x0..x9)"));
    }
    let mut sc = Scanner::new(text);
    let mut terms = Vec::new();
    let first = multi_term(&mut sc, field, nvars)?;
    terms.push(first);
    loop {
        if sc.eat(b'+') {
            terms.push(multi_term(&mut sc, field, nvars)?);
        } else if sc.eat(b'-') {
            let (e, c) = multi_term(&mut sc, field, nvars)?;
            terms.push((e, c.neg()));
        } else {
            break;
        }
    }
    if !sc.at_end() {
        return Err(Error::parse(sc.pos, "trailing input after polynomial"));
    }
    MultiPoly::from_terms(field, nvars, terms)
}

/// Infer the variable count from the largest `x` index appearing in the text,
/// then parse. Useful for command-line input.
pub fn parse_multipoly_auto(text: &str, field: &Field) -> Result<MultiPoly> {
    let mut max_var: Option<u32> = None;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' && i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let idx: u32 = std::str::from_utf8(&bytes[i + 1..j])
                .expect("digits")
                .parse()
                .map_err(|_| Error::parse(i, "variable index out of range"))?;
            max_var = Some(max_var.map_or(idx, |m: u32| m.max(idx)));
            i = j;
        } else {
            i += 1;
        }
    }
    let nvars = max_var
        .ok_or_else(|| Error::parse(0, "no variables found; write x0..x9"))?
        as usize
        + 1;
    parse_multipoly(text, field, nvars)
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Parse a matrix given as semicolon-separated rows of comma-separated
/// `F_q[t]` expressions, e.g. `t, 1; 1, t`.
pub fn parse_matrix(text: &str, field: &Field) -> Result<PolyMatrix> {
    let mut rows = Vec::new();
    for row_text in text.split(';') {
        let mut row = Vec::new();
        for cell in row_text.split(',') {
            let cell = cell.trim();
            if cell.is_empty() {
                return Err(Error::parse(0, "empty matrix entry"));
            }
            // accept "0" for the zero entry
            if cell == "0" {
                row.push(RingElement::zero(field));
            } else {
                row.push(parse_ring_element(cell, field)?);
            }
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows)
}
