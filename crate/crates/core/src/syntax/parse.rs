//! Recursive-descent parsers for terms, formulas, substitutions,
//! environments and propositional terms.

use crate::formula::{Formula, Language};
use crate::prop::PropTerm;
use crate::semantics::Env;
use crate::terms::{is_variable_name, Substitution, Tail, Term};

use super::lexer::{lex, ParseError, Tok, Token};

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    /// Position reported for errors at the end of input.
    end: (usize, usize),
    lang: Option<&'a Language>,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(
        text: &str,
        line: usize,
        col: usize,
        lang: Option<&'a Language>,
    ) -> Result<Self, ParseError> {
        let toks = lex(text, line, col)?;
        let end = match text.rfind('\n') {
            Some(nl) => (
                line + text.matches('\n').count(),
                text[nl + 1..].chars().count() + 1,
            ),
            None => (line, col + text.chars().count()),
        };
        Ok(Parser {
            toks,
            pos: 0,
            end,
            lang,
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    pub(crate) fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or(self.end)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    pub(crate) fn word(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{kw}`"))),
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w == kw)
    }

    pub(crate) fn number<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        let here = self.here();
        let w = self.word()?;
        w.parse()
            .map_err(|_| ParseError::new(here.0, here.1, format!("expected a number, found `{w}`")))
    }

    fn lang(&self) -> &'a Language {
        self.lang.expect("term parsing needs a language")
    }

    fn variable(&self, w: &str) -> Result<Option<u32>, ParseError> {
        if !is_variable_name(w) {
            return Ok(None);
        }
        match w[1..].parse::<u32>() {
            Ok(0) => Err(self.error("variables are numbered from x1")),
            Ok(i) => Ok(Some(i)),
            Err(_) => Err(self.error(format!("variable index in `{w}` is too large"))),
        }
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        let (line, col) = self.here();
        let w = self.word()?;
        if let Some(i) = self
            .variable(&w)
            .map_err(|e| ParseError::new(line, col, e.message))?
        {
            return Ok(Term::Var(i));
        }
        let arity =
            self.lang().functions.arity(&w).ok_or_else(|| {
                ParseError::new(line, col, format!("unknown function symbol `{w}`"))
            })?;
        let args = if self.eat(&Tok::LParen) {
            let mut args = vec![self.term()?];
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            args
        } else {
            Vec::new()
        };
        if args.len() != arity {
            return Err(ParseError::new(
                line,
                col,
                format!("`{w}` expects {arity} arguments, got {}", args.len()),
            ));
        }
        Ok(Term::App(w.into(), args))
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::Word(w)) if w == "forall" || w == "exists" => {
                let universal = w == "forall";
                self.pos += 1;
                let binder = match (self.peek(), self.peek2()) {
                    (Some(Tok::Word(v)), Some(Tok::Dot)) if is_variable_name(v) => {
                        let v = v.clone();
                        let i = self.variable(&v)?.expect("variable name");
                        self.pos += 2;
                        Some(i)
                    }
                    _ => None,
                };
                let body = self.formula()?;
                Ok(match (universal, binder) {
                    (true, None) => Formula::forall(body),
                    (false, None) => Formula::exists(body),
                    (true, Some(i)) => Formula::forall_xi(i, &body),
                    (false, Some(i)) => Formula::exists_xi(i, &body),
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let left = self.formula()?;
                let out = match self.peek() {
                    Some(Tok::Amp) => Some(Formula::and as fn(Formula, Formula) -> Formula),
                    Some(Tok::Bar) => Some(Formula::or as fn(Formula, Formula) -> Formula),
                    Some(Tok::Arrow) => Some(Formula::imp as fn(Formula, Formula) -> Formula),
                    Some(Tok::DoubleArrow) => Some(Formula::iff as fn(Formula, Formula) -> Formula),
                    _ => None,
                };
                let result = match out {
                    Some(op) => {
                        self.pos += 1;
                        let right = self.formula()?;
                        op(left, right)
                    }
                    None => left,
                };
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)` or a connective"));
                }
                Ok(result)
            }
            Some(Tok::Word(_)) => self.atom(),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (line, col) = self.here();
        let w = self.word()?;
        let arity =
            self.lang().predicates.arity(&w).ok_or_else(|| {
                ParseError::new(line, col, format!("unknown predicate symbol `{w}`"))
            })?;
        let args = if self.eat(&Tok::LParen) {
            let mut args = vec![self.term()?];
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
            args
        } else {
            Vec::new()
        };
        if args.len() != arity {
            return Err(ParseError::new(
                line,
                col,
                format!("`{w}` expects {arity} arguments, got {}", args.len()),
            ));
        }
        Ok(Formula::Atom(w.into(), args))
    }

    /// `[t1, ..., tn ; shift d]`, `[t1, ..., tn ; const t]`, or `[t1, ..., tn]`
    /// for the eventually constant `[t1, ..., tn, tn, ...]`.
    pub(crate) fn substitution(&mut self) -> Result<Substitution, ParseError> {
        let (line, col) = self.here();
        self.expect(Tok::LBracket)?;
        let mut prefix = Vec::new();
        if !matches!(self.peek(), Some(Tok::Semi) | Some(Tok::RBracket)) {
            prefix.push(self.term()?);
            while self.eat(&Tok::Comma) {
                prefix.push(self.term()?);
            }
        }
        let built = if self.eat(&Tok::Semi) {
            let tail = if self.is_keyword("shift") {
                self.pos += 1;
                Tail::Shift(self.number()?)
            } else if self.is_keyword("const") {
                self.pos += 1;
                Tail::Const(self.term()?)
            } else {
                return Err(self.unexpected("`shift` or `const`"));
            };
            self.expect(Tok::RBracket)?;
            Substitution::new(prefix, tail)
        } else {
            self.expect(Tok::RBracket)?;
            Substitution::from_list(prefix)
        };
        built.map_err(|e| ParseError::new(line, col, e.to_string()))
    }

    /// `[d1, ..., dn ; d]`; without `; d` the default is 0.
    pub(crate) fn env(&mut self) -> Result<Env, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut prefix = Vec::new();
        if !matches!(self.peek(), Some(Tok::Semi) | Some(Tok::RBracket)) {
            prefix.push(self.number()?);
            while self.eat(&Tok::Comma) {
                prefix.push(self.number()?);
            }
        }
        let default = if self.eat(&Tok::Semi) {
            self.number()?
        } else {
            0
        };
        self.expect(Tok::RBracket)?;
        Ok(Env::new(prefix, default))
    }

    pub(crate) fn prop(&mut self) -> Result<PropTerm, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(PropTerm::not(self.prop()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let left = self.prop()?;
                let op: Option<fn(PropTerm, PropTerm) -> PropTerm> = match self.peek() {
                    Some(Tok::Amp) => Some(PropTerm::and),
                    Some(Tok::Bar) => Some(PropTerm::or),
                    Some(Tok::Arrow) => Some(PropTerm::imp),
                    Some(Tok::DoubleArrow) => Some(PropTerm::iff),
                    _ => None,
                };
                let result = match op {
                    Some(op) => {
                        self.pos += 1;
                        op(left, self.prop()?)
                    }
                    None => left,
                };
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)` or a connective"));
                }
                Ok(result)
            }
            Some(Tok::Word(_)) => {
                let w = self.word()?;
                if w == "BY" {
                    self.pos -= 1;
                    return Err(self.unexpected("a proposition"));
                }
                Ok(PropTerm::var(&w))
            }
            _ => Err(self.unexpected("a proposition")),
        }
    }
}

fn whole<T>(
    text: &str,
    lang: Option<&Language>,
    f: impl FnOnce(&mut Parser) -> Result<T, ParseError>,
) -> Result<T, ParseError> {
    let mut p = Parser::new(text, 1, 1, lang)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_term(lang: &Language, text: &str) -> Result<Term, ParseError> {
    whole(text, Some(lang), |p| p.term())
}

pub fn parse_formula(lang: &Language, text: &str) -> Result<Formula, ParseError> {
    whole(text, Some(lang), |p| p.formula())
}

pub fn parse_substitution(lang: &Language, text: &str) -> Result<Substitution, ParseError> {
    whole(text, Some(lang), |p| p.substitution())
}

pub fn parse_env(text: &str) -> Result<Env, ParseError> {
    whole(text, None, |p| p.env())
}

pub fn parse_prop(text: &str) -> Result<PropTerm, ParseError> {
    whole(text, None, |p| p.prop())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang() -> Language {
        Language::default()
            .with_fn("f", 1)
            .with_fn("c", 0)
            .with_rel("r", 2)
            .with_rel("q", 0)
            .with_equality("e")
    }

    #[test]
    fn terms_and_formulas_round_trip() {
        let l = lang();
        for s in ["f(f(x3))", "c", "x12"] {
            assert_eq!(parse_term(&l, s).unwrap().to_string(), s);
        }
        for s in [
            "r(x1, f(c))",
            "~(r(x1, x2) & q)",
            "forall exists (r(x1, x2) -> e(x2, x1))",
            "(q | ~q)",
            "(q <-> r(c, c))",
        ] {
            let phi = parse_formula(&l, s).unwrap();
            assert_eq!(phi.to_string(), s);
            assert_eq!(parse_formula(&l, &phi.to_string()).unwrap(), phi);
        }
    }

    #[test]
    fn named_binders() {
        let l = lang();
        let phi = parse_formula(&l, "forall x2. r(x2, x1)").unwrap();
        assert_eq!(
            phi,
            Formula::forall_xi(2, &parse_formula(&l, "r(x2, x1)").unwrap())
        );
        assert_eq!(phi.to_string(), "forall r(x1, x2)");
        assert_eq!(phi.rank(), 1);
    }

    #[test]
    fn substitutions() {
        let l = lang();
        for s in [
            "[x1 ; shift -1]",
            "[; shift 1]",
            "[c ; const x2]",
            "[f(x1), x3 ; shift 0]",
        ] {
            assert_eq!(parse_substitution(&l, s).unwrap().to_string(), s);
        }
        assert_eq!(
            parse_substitution(&l, "[c]").unwrap(),
            Substitution::from_list(vec![Term::constant("c")]).unwrap()
        );
        assert!(parse_substitution(&l, "[; shift -1]").is_err());
    }

    #[test]
    fn envs_and_props() {
        assert_eq!(parse_env("[4 ; 0]").unwrap(), Env::new(vec![4], 0));
        assert_eq!(parse_env("[;2]").unwrap(), Env::constant(2));
        assert_eq!(parse_env("[1, 2]").unwrap(), Env::new(vec![1, 2], 0));
        let p = parse_prop("(a -> (a & a))").unwrap();
        assert_eq!(p, PropTerm::axiom_a1(PropTerm::var("a")));
    }

    #[test]
    fn errors_carry_positions() {
        let l = lang();
        let e = parse_term(&l, "f(x1").unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = parse_formula(&l, "r(x1, g(x2))").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        assert!(parse_formula(&l, "r(x1)").is_err());
        assert!(parse_term(&l, "x0").is_err());
        assert!(parse_formula(&l, "(q q)").is_err());
    }
}
