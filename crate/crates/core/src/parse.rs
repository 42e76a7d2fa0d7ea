//! Text grammar for ring elements.
//!
//! ```text
//! poly  := ws sign? term (ws ('+'|'-') ws term)* ws
//! term  := factor ('*' factor)*
//! factor:= integer | var ('^' '-'? integer)?
//! ```
//! Variables are resolved through [`Ring::var_index`].

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, Ring, RingRef};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { column: self.pos + 1, message: message.into() })
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

fn parse_factor(lx: &mut Lexer, ring: &Ring, coeff: &mut i64, exp: &mut [i64]) -> Result<()> {
    lx.skip_ws();
    match lx.peek() {
        Some(b'0'..=b'9') => {
            let c = lx.integer()?;
            *coeff = coeff.checked_mul(c).ok_or(Error::Syntax {
                column: lx.pos,
                message: "coefficient overflow".into(),
            })?;
            Ok(())
        }
        Some(c) if c.is_ascii_alphabetic() => {
            let start = lx.pos;
            let name = lx.ident();
            let idx = match ring.var_index(name) {
                Some(i) => i,
                None => {
                    lx.pos = start;
                    return lx.err(format!("unknown variable '{name}'"));
                }
            };
            lx.skip_ws();
            let mut k = 1;
            if lx.peek() == Some(b'^') {
                lx.pos += 1;
                lx.skip_ws();
                let neg = lx.peek() == Some(b'-');
                if neg {
                    lx.pos += 1;
                }
                k = lx.integer()?;
                if neg {
                    k = -k;
                }
            }
            exp[idx] += k;
            Ok(())
        }
        Some(_) => lx.err("expected coefficient or variable"),
        None => lx.err("unexpected end of input"),
    }
}

pub(crate) fn parse_poly(ring: &RingRef, text: &str) -> Result<LaurentPoly> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut out = LaurentPoly::zero(ring);
    let mut first = true;
    loop {
        lx.skip_ws();
        let mut sign = 1i64;
        match lx.peek() {
            Some(b'+') if !first => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = -1;
            }
            None if first => return lx.err("empty polynomial"),
            None => break,
            _ if !first => return lx.err("expected '+' or '-'"),
            _ => {}
        }
        let mut coeff = sign;
        let mut exp = ring.lattice().zero();
        parse_factor(&mut lx, ring, &mut coeff, &mut exp)?;
        loop {
            lx.skip_ws();
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
                parse_factor(&mut lx, ring, &mut coeff, &mut exp)?;
            } else {
                break;
            }
        }
        out = out + LaurentPoly::monomial(ring, coeff % ring.modulus() as i64, exp);
        first = false;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::LatticeGroup;

    #[test]
    fn dangling_caret_reports_column() {
        let r = Ring::laurent(2, 1).unwrap();
        match LaurentPoly::parse(&r, "1 - x^") {
            Err(Error::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn aliases_and_indices_agree() {
        let r = Ring::laurent(5, 3).unwrap();
        let a = LaurentPoly::parse(&r, "1 - x^-1*y + 2*z^3").unwrap();
        let b = LaurentPoly::parse(&r, "2*x3^3 + 1 - x1^-1*x2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn torsion_variable() {
        let r = Ring::new(3, LatticeGroup::new(1, vec![4]).unwrap()).unwrap();
        let a = LaurentPoly::parse(&r, "u^5 - u").unwrap();
        assert!(a.is_zero());
        assert!(LaurentPoly::parse(&r, "u2").is_err());
    }

    #[test]
    fn rejects_garbage() {
        let r = Ring::laurent(3, 2).unwrap();
        for bad in ["", "x y", "x +", "q", "2**x", "x^y"] {
            assert!(LaurentPoly::parse(&r, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn render_round_trips() {
        let r = Ring::laurent(4, 2).unwrap();
        for s in ["1 - x^-1*y + 2*y^3", "0", "3*x*y^-2 - x + 1"] {
            let p = LaurentPoly::parse(&r, s).unwrap();
            assert_eq!(LaurentPoly::parse(&r, &p.render()).unwrap(), p);
        }
    }
}
