//! Textual series specifications.
//!
//! ```text
//! spec     := decls ";" "upper:" linforms ";" "lower:" linforms ";" "arg:" rational
//!             [";" "bind:" bindings]
//! decls    := "sym" [decl ("," decl)*]          decl := ident [":" "int"]
//! linforms := [linform ("," linform)*]
//! linform  := ["-"] term (("+" | "-") term)*
//! term     := rational ["*" ident] | ident
//! rational := integer ["/" positive-integer]    (a leading "-" is allowed for arg: and bind:)
//! bindings := ident "=" rational ("," ident "=" rational)*
//! ```
//!
//! Whitespace is insignificant and U+2212 is accepted as a minus sign.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hyperseries::HypSeries;
use crate::linform::{Env, LinForm, SymbolTable};
use crate::rat::Rat;

/// A parsed specification together with its optional bindings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub series: HypSeries,
    pub bindings: Env,
}

pub fn parse_series_spec(text: &str) -> Result<SeriesSpec> {
    let mut p = Parser::new(text);
    let spec = p.spec()?;
    Ok(spec)
}

/// Parses one linear form. With `declared`, every symbol must be in the
/// table; without it, any identifier is accepted.
pub fn parse_linform(text: &str, declared: Option<&SymbolTable>) -> Result<LinForm> {
    let mut p = Parser::new(text);
    let form = p.linform(declared)?;
    p.end()?;
    Ok(form)
}

/// Parses a standalone `name=value, ...` list against declared symbols.
pub fn parse_bindings(text: &str, declared: &SymbolTable) -> Result<Env> {
    let mut p = Parser::new(text);
    if p.peek().is_none() {
        return Ok(Env::new());
    }
    let env = p.bindings(declared)?;
    p.end()?;
    Ok(env)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, offset: usize, expected: &str) -> Result<T> {
        Err(Error::Parse {
            offset,
            expected: expected.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    /// Next significant character, with U+2212 folded to '-'.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw().map(|c| if c == '\u{2212}' { '-' } else { c })
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek_raw() {
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let at = self.pos;
            self.err(at, &format!("'{c}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some(c) if is_ident_start(c) => {}
            _ => return self.err(start, "identifier"),
        }
        while matches!(self.peek_raw(), Some(c) if is_ident_char(c)) {
            self.bump();
        }
        Ok((self.src[start..self.pos].to_string(), start))
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        match self.ident() {
            Ok((w, _)) if w == word => Ok(()),
            _ => self.err(at, &format!("'{word}'")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return self.err(start, "integer");
        }
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn unsigned_rational(&mut self) -> Result<Rat> {
        let num = self.digits()?;
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.digits()?;
            if den == BigInt::from(0) {
                return self.err(at, "positive integer");
            }
            Ok(Rat::from_bigints(num, den))
        } else {
            Ok(Rat::from_int(num))
        }
    }

    fn signed_rational(&mut self) -> Result<Rat> {
        let neg = self.eat('-');
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    fn resolve(&self, name: String, offset: usize, declared: Option<&SymbolTable>) -> Result<String> {
        match declared {
            Some(t) if !t.contains(&name) => Err(Error::UndeclaredSymbol { name, offset }),
            _ => Ok(name),
        }
    }

    fn term(&mut self, declared: Option<&SymbolTable>) -> Result<LinForm> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.unsigned_rational()?;
                if self.eat('*') {
                    let (name, at) = self.ident()?;
                    let name = self.resolve(name, at, declared)?;
                    Ok(LinForm::term(r, &name))
                } else {
                    Ok(LinForm::constant(r))
                }
            }
            Some(c) if is_ident_start(c) => {
                let (name, at) = self.ident()?;
                let name = self.resolve(name, at, declared)?;
                Ok(LinForm::symbol(&name))
            }
            _ => {
                let at = self.pos;
                self.err(at, "term")
            }
        }
    }

    fn linform(&mut self, declared: Option<&SymbolTable>) -> Result<LinForm> {
        let neg = self.eat('-');
        let first = self.term(declared)?;
        let mut acc = if neg { -&first } else { first };
        loop {
            let op = match self.peek() {
                Some('+') => '+',
                Some('-') => '-',
                _ => break,
            };
            let op_at = self.pos;
            self.bump();
            let t = match self.term(declared) {
                Ok(t) => t,
                Err(Error::Parse { .. }) => {
                    return self.err(op_at, &format!("term after '{op}'"));
                }
                Err(e) => return Err(e),
            };
            acc = if op == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn linform_list(&mut self, declared: &SymbolTable) -> Result<Vec<LinForm>> {
        if matches!(self.peek(), Some(';') | None) {
            return Ok(Vec::new());
        }
        let mut out = vec![self.linform(Some(declared))?];
        while self.eat(',') {
            out.push(self.linform(Some(declared))?);
        }
        Ok(out)
    }

    fn decls(&mut self) -> Result<(SymbolTable, BTreeSet<String>)> {
        self.keyword("sym")?;
        let mut table = SymbolTable::default();
        let mut ints = BTreeSet::new();
        if self.peek() == Some(';') {
            return Ok((table, ints));
        }
        loop {
            let (name, at) = self.ident()?;
            if table.contains(&name) {
                return self.err(at, "a symbol not already declared");
            }
            if self.eat(':') {
                self.keyword("int")?;
                ints.insert(name.clone());
            }
            table.push(name).expect("checked above");
            if !self.eat(',') {
                break;
            }
        }
        Ok((table, ints))
    }

    fn bindings(&mut self, declared: &SymbolTable) -> Result<Env> {
        let mut env = Env::new();
        loop {
            let (name, at) = self.ident()?;
            let name = self.resolve(name, at, Some(declared))?;
            self.expect('=')?;
            let value = self.signed_rational()?;
            if env.insert(name, value).is_some() {
                return self.err(at, "a symbol not already bound");
            }
            if !self.eat(',') {
                break;
            }
        }
        Ok(env)
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            let at = self.pos;
            return self.err(at, "end of input");
        }
        Ok(())
    }

    fn section(&mut self, word: &str) -> Result<()> {
        self.expect(';')?;
        self.keyword(word)?;
        self.expect(':')
    }

    fn spec(&mut self) -> Result<SeriesSpec> {
        let (table, ints) = self.decls()?;
        self.section("upper")?;
        let upper = self.linform_list(&table)?;
        self.section("lower")?;
        let lower = self.linform_list(&table)?;
        self.section("arg")?;
        let arg = self.signed_rational()?;
        let mut bindings = Env::new();
        if self.peek() == Some(';') {
            self.section("bind")?;
            bindings = self.bindings(&table)?;
        }
        self.end()?;
        let series = HypSeries::new(upper, lower, arg, table, ints)?;
        series.check_env(&bindings)?;
        Ok(SeriesSpec { series, bindings })
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Canonical text of a series: declarations in table order, parameters in
/// canonical linear-form syntax.
pub fn print_series(s: &HypSeries) -> String {
    let decls: Vec<String> = s
        .symbols
        .names()
        .iter()
        .map(|n| {
            if s.integer_symbols.contains(n) {
                format!("{n}:int")
            } else {
                n.clone()
            }
        })
        .collect();
    let sym = if decls.is_empty() {
        "sym".to_string()
    } else {
        format!("sym {}", decls.join(", "))
    };
    format!(
        "{sym}; upper: {}; lower: {}; arg: {}",
        join(&s.upper),
        join(&s.lower),
        s.arg
    )
}

pub fn print_series_spec(spec: &SeriesSpec) -> String {
    let mut out = print_series(&spec.series);
    if !spec.bindings.is_empty() {
        let binds: Vec<String> = spec
            .bindings
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        out.push_str("; bind: ");
        out.push_str(&binds.join(", "));
    }
    out
}

impl fmt::Display for HypSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_series(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANDREWS: &str = "sym m:int, x, z; upper: -2*m-1, x+2*m+2, x-z+1/2, x+m+1, z+m+1; \
                           lower: 1/2*x+1/2, 1/2*x+1, 2*z+2*m+2, 2*x-2*z+1; arg: 1";

    #[test]
    fn andrews_series() {
        let spec = parse_series_spec(ANDREWS).unwrap();
        let s = &spec.series;
        assert_eq!(s.upper.len(), 5);
        assert_eq!(s.lower.len(), 4);
        assert_eq!(s.symbols.names(), ["m", "x", "z"]);
        assert!(s.integer_symbols.contains("m"));
        assert_eq!(s.upper[2].to_string(), "x-z+1/2");
        assert_eq!(s.lower[0].coeff("x"), Rat::new(1, 2));
        assert!(s.is_balanced());
    }

    #[test]
    fn minimal() {
        let spec = parse_series_spec("sym a; upper: a; lower: a; arg: 1").unwrap();
        assert_eq!(spec.series.upper, vec![LinForm::symbol("a")]);
        assert_eq!(spec.series.lower, vec![LinForm::symbol("a")]);
    }

    #[test]
    fn dangling_operator() {
        let text = "sym a; upper: a+; lower: a; arg: 1";
        let err = parse_series_spec(text).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: text.find('+').unwrap(),
                expected: "term after '+'".into()
            }
        );
    }

    #[test]
    fn undeclared() {
        let err = parse_series_spec("sym a; upper: b; lower: ; arg: 1").unwrap_err();
        assert_eq!(err, Error::UndeclaredSymbol { name: "b".into(), offset: 14 });
    }

    #[test]
    fn bindings_and_unicode_minus() {
        let spec =
            parse_series_spec("sym m:int, x; upper: \u{2212}m, x; lower: 1; arg: -1/2; bind: m=2, x=1/5")
                .unwrap();
        assert_eq!(spec.series.upper[0].to_string(), "-m");
        assert_eq!(spec.series.arg, Rat::new(-1, 2));
        assert_eq!(spec.bindings["x"], Rat::new(1, 5));
        assert!(parse_series_spec("sym m:int; upper: -m; lower: ; arg: 1; bind: m=1/2").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_series_spec("sym a; upper: a; lower: a; arg: 1/0").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 34, .. }), "{e:?}");
        let e = parse_series_spec("sym a; upper: a lower: a; arg: 1").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_series_spec("sym a, a; upper: ; lower: ; arg: 1").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 7, .. }));
    }

    #[test]
    fn round_trip() {
        let spec = parse_series_spec(ANDREWS).unwrap();
        let printed = print_series_spec(&spec);
        assert_eq!(parse_series_spec(&printed).unwrap(), spec);
        let empty = parse_series_spec("sym; upper: ; lower: ; arg: 3").unwrap();
        assert_eq!(print_series(&empty.series), "sym; upper: ; lower: ; arg: 3");
        assert_eq!(parse_series_spec(&print_series(&empty.series)).unwrap(), empty);
    }

    #[test]
    fn free_linform() {
        let f = parse_linform(" 2*y + 2*z + 1 ", None).unwrap();
        assert_eq!(f.to_string(), "2*y+2*z+1");
        assert!(parse_linform("y z", None).is_err());
    }
}
