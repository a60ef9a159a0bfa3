//! Recursive-descent parser for the cobordism term syntax.
//!
//! ```text
//! term   := tensor ("." tensor)*
//! tensor := atom ("*" atom)*
//! atom   := "eta" | "mu" | "delta" | "eps" | "tau" | "id(" nat ")" | "(" term ")"
//! ```
//!
//! `a . b` applies `b` first. `*` binds tighter than `.`; both associate
//! to the left. Whitespace is allowed between tokens.

use super::term::{CobordismTerm, Generator, Signature};
use super::CobError;

/// Largest identity width accepted by the parser.
pub const MAX_IDENTITY_WIDTH: usize = 1 << 16;

/// Parses `text` and checks every composition, returning the term and its signature.
pub fn parse_and_check(text: &str) -> Result<(CobordismTerm, Signature), CobError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
        atoms: 0,
    };
    let (term, sig) = parser.term()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok((term, sig))
}

/// Parses and returns only the term.
pub fn parse_term(text: &str) -> Result<CobordismTerm, CobError> {
    parse_and_check(text).map(|(t, _)| t)
}

/// Maximum parenthesis nesting depth.
pub const MAX_NESTING: usize = 256;
/// Maximum number of atoms in one term.
pub const MAX_ATOMS: usize = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    atoms: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> CobError {
        CobError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
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

    fn term(&mut self) -> Result<(CobordismTerm, Signature), CobError> {
        let (mut acc, mut o) = self.tensor()?;
        while self.peek() == Some(b'.') {
            let dot = self.pos;
            self.pos += 1;
            let (inner, i) = self.tensor()?;
            if o.dom != i.cod {
                return Err(CobError::Arity {
                    offset: Some(dot),
                    outer: acc.to_string(),
                    inner: inner.to_string(),
                    outer_dom: o.dom,
                    inner_cod: i.cod,
                });
            }
            acc = CobordismTerm::Compose(Box::new(acc), Box::new(inner));
            o = Signature::new(i.dom, o.cod);
        }
        Ok((acc, o))
    }

    fn tensor(&mut self) -> Result<(CobordismTerm, Signature), CobError> {
        let (mut acc, mut sig) = self.atom()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let (right, r) = self.atom()?;
            acc = CobordismTerm::tensor(acc, right);
            sig = Signature::new(sig.dom + r.dom, sig.cod + r.cod);
        }
        Ok((acc, sig))
    }

    fn atom(&mut self) -> Result<(CobordismTerm, Signature), CobError> {
        self.atoms += 1;
        if self.atoms > MAX_ATOMS {
            return Err(self.error("term too large"));
        }
        match self.peek() {
            None => Err(self.error("expected a term, found end of input")),
            Some(b'(') => {
                if self.depth >= MAX_NESTING {
                    return Err(self.error("parentheses nested too deeply"));
                }
                self.pos += 1;
                self.depth += 1;
                let t = self.term()?;
                self.depth -= 1;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                // the slice is ASCII alphanumeric, so this cannot fail
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if word == "id" {
                    return self.identity_args();
                }
                match Generator::from_name(word) {
                    Some(g) => Ok((CobordismTerm::Generator(g), g.arity())),
                    None => Err(CobError::Syntax {
                        offset: start,
                        message: format!("unknown generator '{word}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("expected a generator, 'id(n)' or '('")),
        }
    }

    fn identity_args(&mut self) -> Result<(CobordismTerm, Signature), CobError> {
        if self.peek() != Some(b'(') {
            return Err(self.error("expected '(' after 'id'"));
        }
        self.pos += 1;
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap_or("");
        let n: usize = match digits.parse() {
            Ok(n) if n <= MAX_IDENTITY_WIDTH => n,
            _ => {
                return Err(CobError::Syntax {
                    offset: digits_start,
                    message: format!("identity width too large (max {MAX_IDENTITY_WIDTH})"),
                })
            }
        };
        if self.peek() != Some(b')') {
            return Err(self.error("expected ')'"));
        }
        self.pos += 1;
        Ok((CobordismTerm::Identity(n), Signature::new(n, n)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_signature() {
        let (t, sig) = parse_and_check("mu").unwrap();
        assert_eq!(t, CobordismTerm::Generator(Generator::Mu));
        assert_eq!(sig, Signature::new(2, 1));
    }

    #[test]
    fn identity_signature() {
        let (t, sig) = parse_and_check("id(3)").unwrap();
        assert_eq!(t, CobordismTerm::Identity(3));
        assert_eq!(sig, Signature::new(3, 3));
    }

    #[test]
    fn arity_mismatch_names_the_composition() {
        let err = parse_and_check("mu . eta").unwrap_err();
        match err {
            CobError::Arity {
                offset,
                outer,
                inner,
                outer_dom,
                inner_cod,
            } => {
                assert_eq!(offset, Some(3));
                assert_eq!(outer, "mu");
                assert_eq!(inner, "eta");
                assert_eq!((outer_dom, inner_cod), (2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("mu . eta * id(1)").unwrap();
        assert_eq!(
            t,
            CobordismTerm::Compose(
                Box::new(CobordismTerm::Generator(Generator::Mu)),
                Box::new(CobordismTerm::tensor(
                    CobordismTerm::Generator(Generator::Eta),
                    CobordismTerm::Identity(1)
                ))
            )
        );
        let t = parse_term("eps . mu . delta").unwrap();
        match t {
            CobordismTerm::Compose(outer, inner) => {
                assert_eq!(outer.to_string(), "eps . mu");
                assert_eq!(*inner, CobordismTerm::Generator(Generator::Delta));
            }
            _ => panic!("expected a composition"),
        }
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let cases = [
            ("", 0),
            ("mu .", 4),
            ("(mu", 3),
            ("id(", 3),
            ("id(x)", 3),
            ("foo", 0),
            ("mu ) ", 3),
            ("mu $ eta", 3),
            ("id 2", 3),
        ];
        for (text, want) in cases {
            match parse_and_check(text) {
                Err(CobError::Syntax { offset, .. }) => assert_eq!(offset, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_term(" ( mu*id( 1 ) ) .(id(1)\t*delta)").unwrap();
        let b = parse_term("(mu * id(1)) . (id(1) * delta)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oversized_identity_is_rejected() {
        assert!(matches!(
            parse_and_check("id(99999999999999999999999)"),
            Err(CobError::Syntax { .. })
        ));
    }

    #[test]
    fn nullary_terms_are_legal() {
        let (_, sig) = parse_and_check("eps . eta").unwrap();
        assert_eq!(sig, Signature::new(0, 0));
        let (_, sig) = parse_and_check("id(0)").unwrap();
        assert_eq!(sig, Signature::new(0, 0));
    }
}
