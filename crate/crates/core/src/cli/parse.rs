//! Parsers for the group and space literal grammars.
//!
//! ```text
//! group   := term ('+' term)*
//! term    := 'Z' | 'Z' '^' INT | 'Z' '/' INT | '0'
//! space   := product ('v' product)*
//! product := atom ('x' atom)*
//! atom    := '*' | 'S' '^' INT | 'CP' '^' INT
//!          | 'M' '(' group ',' INT ')' | 'K' '(' group ',' INT ')'
//!          | '(' space ')'
//! ```
//!
//! Whitespace is insignificant. Chains of `v` or `x` parse into a single
//! n-ary node; parentheses nest.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::spaces::SpaceExpr;

pub fn parse_group(text: &str) -> Result<FgAbelianGroup> {
    let mut p = Parser::new(text)?;
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_space(text: &str) -> Result<SpaceExpr> {
    let mut p = Parser::new(text)?;
    let s = p.wedge()?;
    p.finish()?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Star,
    Caret,
    Slash,
    Plus,
    Comma,
    LParen,
    RParen,
    Int(BigInt),
    Keyword(&'static str),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Keyword(k) => format!("'{k}'"),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Comma => "','".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

// longest first
const KEYWORDS: [&str; 7] = ["CP", "S", "M", "K", "Z", "v", "x"];

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n: BigInt = digits.parse().expect("ascii digits");
            out.push((Tok::Int(n), column));
            continue;
        }
        let punct = match c {
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '+' => Some(Tok::Plus),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = punct {
            out.push((t, column));
            i += 1;
            continue;
        }
        let rest: String = chars[i..].iter().collect();
        match KEYWORDS.iter().find(|k| rest.starts_with(**k)) {
            Some(k) => {
                out.push((Tok::Keyword(k), column));
                i += k.chars().count();
            }
            None => {
                return Err(Error::Parse {
                    column,
                    expected: "a space or group literal".into(),
                    found: format!("'{c}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            pos: 0,
            end_column: text.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |(_, c)| *c)
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        Err(Error::Parse {
            column: self.column(),
            expected: expected.into(),
            found: self.peek().map_or("end of input".into(), Tok::describe),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.error(&t.describe())
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    /// Integer token with its column.
    fn int(&mut self) -> Result<(BigInt, usize)> {
        let column = self.column();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok((n, column))
            }
            _ => self.error("an integer"),
        }
    }

    fn small_int(&mut self) -> Result<(u32, usize)> {
        let (n, column) = self.int()?;
        let n = n.to_u32().ok_or_else(|| domain(column, format!("{n} is too large")))?;
        Ok((n, column))
    }

    fn group(&mut self) -> Result<FgAbelianGroup> {
        let mut g = self.term()?;
        while self.eat(&Tok::Plus) {
            g = g.direct_sum(&self.term()?);
        }
        Ok(g)
    }

    fn term(&mut self) -> Result<FgAbelianGroup> {
        match self.peek() {
            Some(Tok::Int(n)) if n.is_zero() => {
                self.pos += 1;
                Ok(FgAbelianGroup::trivial())
            }
            Some(Tok::Keyword("Z")) => {
                self.pos += 1;
                if self.eat(&Tok::Caret) {
                    let (r, column) = self.int()?;
                    let r = r
                        .to_usize()
                        .ok_or_else(|| domain(column, format!("rank {r} is too large")))?;
                    Ok(FgAbelianGroup::free(r))
                } else if self.eat(&Tok::Slash) {
                    let (n, column) = self.int()?;
                    if n.is_zero() || n.is_one() {
                        return Err(domain(column, format!("cyclic order must be >= 2, got {n}")));
                    }
                    Ok(FgAbelianGroup::cyclic(n))
                } else {
                    Ok(FgAbelianGroup::integers())
                }
            }
            _ => self.error("'Z', 'Z^r', 'Z/n' or '0'"),
        }
    }

    fn wedge(&mut self) -> Result<SpaceExpr> {
        let mut children = vec![self.product()?];
        while self.eat(&Tok::Keyword("v")) {
            children.push(self.product()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            SpaceExpr::Wedge(children)
        })
    }

    fn product(&mut self) -> Result<SpaceExpr> {
        let mut children = vec![self.atom()?];
        while self.eat(&Tok::Keyword("x")) {
            children.push(self.atom()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            SpaceExpr::Product(children)
        })
    }

    fn atom(&mut self) -> Result<SpaceExpr> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("a space");
        };
        match tok {
            Tok::Star => {
                self.pos += 1;
                Ok(SpaceExpr::Point)
            }
            Tok::LParen => {
                self.pos += 1;
                let s = self.wedge()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            Tok::Keyword("S") => {
                self.pos += 1;
                self.expect(Tok::Caret)?;
                let (n, column) = self.small_int()?;
                if n == 0 {
                    return Err(domain(column, "sphere dimension must be >= 1".into()));
                }
                Ok(SpaceExpr::Sphere(n))
            }
            Tok::Keyword("CP") => {
                self.pos += 1;
                self.expect(Tok::Caret)?;
                let (n, column) = self.small_int()?;
                match n {
                    0 => Err(domain(column, "CP^0 is a point; write *".into())),
                    1 => Err(domain(column, "CP^1 is the 2-sphere; write S^2".into())),
                    _ => Ok(SpaceExpr::ComplexProjective(n)),
                }
            }
            Tok::Keyword(k @ ("M" | "K")) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let group = self.group()?;
                self.expect(Tok::Comma)?;
                let (degree, column) = self.small_int()?;
                self.expect(Tok::RParen)?;
                if k == "M" {
                    if degree < 2 {
                        return Err(domain(
                            column,
                            format!("Moore space degree must be >= 2 (M(A, {degree}) is not defined)"),
                        ));
                    }
                    Ok(SpaceExpr::Moore { degree, group })
                } else {
                    if degree == 0 {
                        return Err(domain(column, "Eilenberg-MacLane degree must be >= 1".into()));
                    }
                    Ok(SpaceExpr::EilenbergMacLane { degree, group })
                }
            }
            _ => self.error("a space ('*', 'S^n', 'CP^n', 'M(..)', 'K(..)' or '(')"),
        }
    }
}

fn domain(column: usize, message: String) -> Error {
    Error::Domain { column, message }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpaceExpr::*;

    #[test]
    fn groups() {
        assert_eq!(parse_group("Z").unwrap(), FgAbelianGroup::integers());
        assert_eq!(parse_group("0").unwrap(), FgAbelianGroup::trivial());
        assert_eq!(parse_group("Z^2 + Z/4 + Z/6").unwrap().to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(parse_group(" Z / 2+Z/3 ").unwrap(), FgAbelianGroup::cyclic(6));
        assert_eq!(parse_group("Z^0").unwrap(), FgAbelianGroup::trivial());
    }

    #[test]
    fn group_errors() {
        let e = parse_group("Z/1").unwrap_err();
        assert_eq!(e, Error::Domain { column: 3, message: "cyclic order must be >= 2, got 1".into() });
        let e = parse_group("Z +").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 4, ref found, .. } if found == "end of input"));
        let e = parse_group("Q").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 1, .. }));
    }

    #[test]
    fn spaces() {
        assert_eq!(parse_space("S^2 v S^4").unwrap(), Wedge(vec![Sphere(2), Sphere(4)]));
        assert_eq!(parse_space("S^2vS^4").unwrap(), Wedge(vec![Sphere(2), Sphere(4)]));
        let m = parse_space("M(Z/4 + Z/2, 3)").unwrap();
        assert_eq!(
            m,
            Moore { degree: 3, group: parse_group("Z/2 + Z/4").unwrap() }
        );
        assert_eq!(
            parse_space("S^3 x K(Z,2)").unwrap(),
            Product(vec![
                Sphere(3),
                EilenbergMacLane { degree: 2, group: FgAbelianGroup::integers() }
            ])
        );
    }

    #[test]
    fn product_binds_tighter() {
        assert_eq!(
            parse_space("S^1 v S^2 x S^3 v *").unwrap(),
            Wedge(vec![Sphere(1), Product(vec![Sphere(2), Sphere(3)]), Point])
        );
        assert_eq!(
            parse_space("(S^1 v S^2) x CP^2").unwrap(),
            Product(vec![Wedge(vec![Sphere(1), Sphere(2)]), ComplexProjective(2)])
        );
    }

    #[test]
    fn domain_errors() {
        let e = parse_space("M(Z, 1)").unwrap_err();
        assert_eq!(e.code(), "domain_error");
        assert!(e.to_string().contains("Moore space degree must be >= 2"));
        let e = parse_space("CP^1").unwrap_err();
        assert!(e.to_string().contains("write S^2"));
        assert_eq!(parse_space("S^0").unwrap_err().code(), "domain_error");
        assert_eq!(parse_space("K(Z, 0)").unwrap_err().code(), "domain_error");
        assert_eq!(parse_space("S^99999999999").unwrap_err().code(), "domain_error");
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let e = parse_space("S^2 v").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 6, .. }), "{e:?}");
        let e = parse_space("S^2 S^3").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 5, ref expected, .. } if expected == "end of input"));
        let e = parse_space("M(Z, 2").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 7, ref expected, .. } if expected == "')'"));
        let e = parse_space("S^2 & S^3").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 5, .. }));
    }
}
