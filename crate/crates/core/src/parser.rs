//! Text syntax for mixed polynomials.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := postfix ('^' INT)? '~'*
//! postfix := atom '~'*
//! atom    := INT ('/' INT)? | 'i' | IDENT | 'conj' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `v~` and `conj(..)` are elaborated immediately, so the resulting
//! [`MixedPolynomial`] never carries a conjugation node. A trailing
//! `(n=N)` annotation is accepted so that the serialized zero polynomial
//! round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::ParseError;
use crate::mixed::MixedPolynomial;
use crate::rational::ComplexRational;

pub const MAX_EXPONENT: u32 = 64;
pub const MAX_VARIABLES: usize = 8;

/// Source text plus the ordered variable names it may use.
#[derive(Clone, Debug)]
pub struct SourceExpr {
    pub text: String,
    pub variable_names: Vec<String>,
}

impl SourceExpr {
    pub fn new(text: impl Into<String>, vars: &[&str]) -> Self {
        Self { text: text.into(), variable_names: vars.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Tilde,
    LParen,
    RParen,
    Eq,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'~' => Tok::Tilde,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Eq,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'.') {
                    return Err(ParseError::new(i, "malformed numeric literal"));
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    len: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::new(self.offset(), format!("expected {what}")))
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MixedPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MixedPolynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn tildes(&mut self, mut p: MixedPolynomial) -> MixedPolynomial {
        while self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            p = p.conjugate();
        }
        p
    }

    fn power(&mut self) -> Result<MixedPolynomial, ParseError> {
        let base = self.atom()?;
        let base = self.tildes(base);
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let e = match self.bump() {
            Some(Tok::Int(n)) => n,
            Some(Tok::Minus) => return Err(ParseError::new(at, "negative exponent")),
            _ => return Err(ParseError::new(at, "expected integer exponent")),
        };
        let e = e
            .to_u32()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(at, format!("exponent exceeds bound {MAX_EXPONENT}")))?;
        let p = base.pow(e);
        Ok(self.tildes(p))
    }

    fn atom(&mut self) -> Result<MixedPolynomial, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(num)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let den_at = self.offset();
                    match self.bump() {
                        Some(Tok::Int(den)) => {
                            if den.is_zero() {
                                return Err(ParseError::new(den_at, "zero denominator"));
                            }
                            let c = ComplexRational::real(BigRational::new(num, den));
                            Ok(MixedPolynomial::constant(self.n(), c))
                        }
                        _ => Err(ParseError::new(den_at, "malformed rational literal")),
                    }
                } else {
                    let c = ComplexRational::real(BigRational::from_integer(num));
                    Ok(MixedPolynomial::constant(self.n(), c))
                }
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    return Ok(MixedPolynomial::constant(self.n(), ComplexRational::i()));
                }
                if name == "conj" {
                    self.expect(Tok::LParen, "'(' after conj")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(inner.conjugate());
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(j) => Ok(MixedPolynomial::var(self.n(), j)),
                    None => Err(ParseError::new(at, format!("unknown identifier '{name}'"))),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::new(self.offset(), "unbalanced parentheses"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::RParen) => Err(ParseError::new(at, "unbalanced parentheses")),
            Some(Tok::Slash) => Err(ParseError::new(at, "division is only allowed in rational literals")),
            Some(_) => Err(ParseError::new(at, "expected a number, variable or '('")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }

    /// Optional `(n=N)` suffix.
    fn annotation(&mut self) -> Result<(), ParseError> {
        if self.peek() != Some(&Tok::LParen) {
            return Ok(());
        }
        let at = self.offset();
        let save = self.pos;
        self.pos += 1;
        if self.peek() == Some(&Tok::Ident("n".into())) && !self.vars.iter().any(|v| v == "n") {
            self.pos += 1;
            self.expect(Tok::Eq, "'='")?;
            let num_at = self.offset();
            let n = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return Err(ParseError::new(num_at, "expected variable count")),
            };
            self.expect(Tok::RParen, "')'")?;
            if n != BigInt::from(self.n()) {
                return Err(ParseError::new(at, "variable count annotation does not match"));
            }
            return Ok(());
        }
        self.pos = save;
        Err(ParseError::new(at, "expected operator"))
    }
}

fn check_names(names: &[String]) -> Result<(), ParseError> {
    if names.is_empty() {
        return Err(ParseError::new(0, "no variables declared"));
    }
    if names.len() > MAX_VARIABLES {
        return Err(ParseError::new(0, format!("more than {MAX_VARIABLES} variables")));
    }
    for (k, name) in names.iter().enumerate() {
        let valid = name
            .chars()
            .next()
            .map(|c| c.is_ascii_alphabetic() || c == '_')
            .unwrap_or(false)
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || name == "i" || name == "conj" {
            return Err(ParseError::new(0, format!("invalid variable name '{name}'")));
        }
        if names[..k].contains(name) {
            return Err(ParseError::new(0, format!("duplicate variable name '{name}'")));
        }
    }
    Ok(())
}

/// Parses a mixed polynomial over the declared variables.
pub fn parse_mixed(src: &SourceExpr) -> Result<MixedPolynomial, ParseError> {
    check_names(&src.variable_names)?;
    let toks = lex(&src.text)?;
    let mut p = Parser { toks, pos: 0, len: src.text.len(), vars: &src.variable_names };
    if p.peek().is_none() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let out = p.expr()?;
    p.annotation()?;
    if p.pos < p.toks.len() {
        let msg = match p.peek() {
            Some(Tok::RParen) => "unbalanced parentheses",
            _ => "expected operator",
        };
        return Err(ParseError::new(p.offset(), msg));
    }
    Ok(out)
}

/// Convenience wrapper around [`parse_mixed`].
pub fn parse_with(text: &str, vars: &[&str]) -> Result<MixedPolynomial, ParseError> {
    parse_mixed(&SourceExpr::new(text, vars))
}

/// Parses a polynomial in a real parameter `t` (so `conj(t) = t`) into its
/// coefficient list, lowest degree first.
pub fn parse_real_parameter_poly(text: &str) -> Result<Vec<ComplexRational>, ParseError> {
    let p = parse_with(text, &["t"])?;
    let mut coeffs: Vec<ComplexRational> = Vec::new();
    for (e, c) in p.terms() {
        let d = (e.nu[0] + e.mu[0]) as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, ComplexRational::zero());
        }
        coeffs[d] += c;
    }
    while coeffs.last().map(ComplexRational::is_zero).unwrap_or(false) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Canonical serialization over `z1..zn`.
pub fn format(f: &MixedPolynomial) -> String {
    let names: Vec<String> = (1..=f.n_vars()).map(|j| format!("z{j}")).collect();
    format_named(f, &names)
}

/// Serialization with caller-supplied variable names.
pub fn format_named<S: AsRef<str>>(f: &MixedPolynomial, names: &[S]) -> String {
    assert_eq!(names.len(), f.n_vars(), "one name per variable");
    if f.is_zero() {
        return format!("0 (n={})", f.n_vars());
    }
    let mut out = String::new();
    for (k, (e, c)) in f.terms().enumerate() {
        let mut factors: Vec<String> = Vec::new();
        for j in 0..f.n_vars() {
            let name = names[j].as_ref();
            match e.nu[j] {
                0 => {}
                1 => factors.push(name.to_string()),
                d => factors.push(format!("{name}^{d}")),
            }
            match e.mu[j] {
                0 => {}
                1 => factors.push(format!("{name}~")),
                d => factors.push(format!("{name}~^{d}")),
            }
        }
        let coeff = if !c.re.is_zero() && !c.im.is_zero() {
            format!("({})", c.canonical_string())
        } else {
            c.canonical_string()
        };
        let term = if factors.is_empty() {
            coeff
        } else {
            format!("{}*{}", coeff, factors.join("*"))
        };
        if k == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::ExponentPair;

    #[test]
    fn single_monomial() {
        let f = parse_with("x*y*conj(x)", &["x", "y"]).unwrap();
        assert_eq!(f.num_terms(), 1);
        let (e, c) = f.terms().next().unwrap();
        assert_eq!(e, &ExponentPair::new(vec![1, 1], vec![1, 0]));
        assert!(c.is_one());
    }

    #[test]
    fn distributes_products() {
        let f = parse_with("(x^2 - z*y^2)*y~", &["x", "y", "z"]).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(
            f.coeff(&ExponentPair::new(vec![2, 0, 0], vec![0, 1, 0])),
            ComplexRational::one()
        );
        assert_eq!(
            f.coeff(&ExponentPair::new(vec![0, 2, 1], vec![0, 1, 0])),
            ComplexRational::from_int(-1)
        );
    }

    #[test]
    fn conj_distributes_over_sums() {
        let f = parse_with("i*x + conj(i*x)", &["x"]).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&ExponentPair::new(vec![1], vec![0])), ComplexRational::i());
        assert_eq!(f.coeff(&ExponentPair::new(vec![0], vec![1])), -ComplexRational::i());
    }

    #[test]
    fn canonical_format() {
        let f = parse_with("x*y*x~", &["x", "y"]).unwrap();
        assert_eq!(format(&f), "1*z1*z1~*z2");
        assert_eq!(format(&MixedPolynomial::zero(3)), "0 (n=3)");
        let z = parse_mixed(&SourceExpr::new("0 (n=3)", &["z1", "z2", "z3"])).unwrap();
        assert!(z.is_zero());
        let g = parse_with("(1/2 - 2/3*i)*x^2*y~^3 - 3 + i*y", &["x", "y"]).unwrap();
        let s = format(&g);
        assert_eq!(parse_with(&s, &["z1", "z2"]).unwrap(), g);
        assert_eq!(s, "-3 + 1*i*z2 + (1/2-2/3*i)*z1^2*z2~^3");
    }

    #[test]
    fn errors_carry_positions() {
        let cases: &[(&str, usize)] = &[
            ("x + w", 4),
            ("x^-2", 2),
            ("(x + 1", 6),
            ("x + 1)", 5),
            ("1/0", 2),
            ("2x", 1),
            ("x ^ y", 4),
            ("", 0),
            ("x $ 1", 2),
            ("x^65", 2),
            ("1/", 2),
        ];
        for (src, pos) in cases {
            let err = parse_with(src, &["x", "y"]).unwrap_err();
            assert_eq!(err.position, *pos, "{src}: {err}");
            assert!(err.position <= src.len());
        }
    }

    #[test]
    fn variable_declarations_checked() {
        assert!(parse_with("x", &[]).is_err());
        assert!(parse_with("x", &["x", "x"]).is_err());
        assert!(parse_with("x", &["i"]).is_err());
        let nine: Vec<String> = (0..9).map(|k| format!("v{k}")).collect();
        let refs: Vec<&str> = nine.iter().map(String::as_str).collect();
        assert!(parse_with("v0", &refs).is_err());
    }

    #[test]
    fn real_parameter_polys() {
        let c = parse_real_parameter_poly("1 + i*t^2 + conj(t)").unwrap();
        assert_eq!(c, vec![ComplexRational::one(), ComplexRational::one(), ComplexRational::i()]);
    }
}
