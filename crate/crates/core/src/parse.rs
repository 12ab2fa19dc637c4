//! Textual I/O: polynomial expressions, canonical printing and ring configuration files.
//!
//! Expression grammar (`^` binds tighter than unary minus, which binds tighter than `*`,
//! which binds tighter than `+`/`-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := ['-'] atom ['^' NAT]
//! atom   := NAT ['/' NAT] | VAR | '(' expr ')'
//! ```
//!
//! `NAT '/' NAT` is a rational literal; it exists so that canonical output over the rationals
//! parses back. Variable names match `[A-Za-z][A-Za-z0-9]*`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{ConfigError, ParseError};
use crate::field::{FieldElem, FieldSpec};
use crate::poly::{Monomial, Polynomial, Universe};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 1 << 16;

/// Abstract syntax of a polynomial expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Var(String),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    /// Fully parenthesized rendering; always reparses to the same tree shape.
    pub fn render(&self) -> String {
        match self {
            PolyExpr::Int(n) => n.to_string(),
            PolyExpr::Ratio(a, b) => format!("{a}/{b}"),
            PolyExpr::Var(v) => v.clone(),
            PolyExpr::Neg(e) => format!("-({})", e.render()),
            PolyExpr::Add(a, b) => format!("({}) + ({})", a.render(), b.render()),
            PolyExpr::Sub(a, b) => format!("({}) - ({})", a.render(), b.render()),
            PolyExpr::Mul(a, b) => format!("({})*({})", a.render(), b.render()),
            PolyExpr::Pow(a, n) => format!("({})^{n}", a.render()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Ident(v) => format!("variable `{v}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l, column: col });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned { tok: Tok::Nat(s), line: l, column: col });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l, column: col });
            continue;
        }
        return Err(ParseError::Syntax {
            line: l,
            column: col,
            expected: "a number, variable, operator or parenthesis".into(),
            found: format!("`{c}`"),
        });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> &Spanned {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.to_string(),
            found: t.tok.describe(),
        }
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = PolyExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = PolyExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = PolyExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let t = &self.toks[self.pos];
            let (line, column) = (t.line, t.column);
            let Tok::Nat(n) = t.tok.clone() else {
                return Err(self.error("a nonnegative integer exponent"));
            };
            self.bump();
            let e: u32 = n
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError::ExponentOverflow { line, column, literal: n })?;
            base = PolyExpr::Pow(Box::new(base), e);
        }
        Ok(if negate { PolyExpr::Neg(Box::new(base)) } else { base })
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                let num: BigInt = n.parse().expect("digits");
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Nat(d) = self.peek().clone() else {
                        return Err(self.error("a denominator"));
                    };
                    self.bump();
                    return Ok(PolyExpr::Ratio(num, d.parse().expect("digits")));
                }
                Ok(PolyExpr::Int(num))
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(PolyExpr::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.error("a number, variable or `(`")),
        }
    }
}

/// Parses an expression into its syntax tree without resolving variables.
pub fn parse_expr(text: &str) -> Result<PolyExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

/// Parses `text` into a polynomial over `universe` with coefficients in `field`.
pub fn parse_poly(text: &str, universe: &Universe, field: FieldSpec) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    // Keep token positions for variable errors.
    let positions: Vec<(String, usize, usize)> = toks
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Ident(v) => Some((v.clone(), t.line, t.column)),
            _ => None,
        })
        .collect();
    for (name, line, column) in &positions {
        if universe.index(name).is_none() {
            return Err(ParseError::UnknownVariable {
                line: *line,
                column: *column,
                name: name.clone(),
            });
        }
    }
    let mut p = Parser { toks, pos: 0 };
    let expr = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    eval(&expr, universe, field).map_err(|()| {
        let t = &p.toks[0];
        ParseError::ZeroDenominator { line: t.line, column: t.column }
    })
}

fn eval(e: &PolyExpr, u: &Universe, field: FieldSpec) -> Result<Polynomial, ()> {
    Ok(match e {
        PolyExpr::Int(n) => Polynomial::constant(field, u, field.from_bigint(n)),
        PolyExpr::Ratio(a, b) => Polynomial::constant(field, u, field.from_fraction(a, b).ok_or(())?),
        PolyExpr::Var(v) => Polynomial::var(field, u, v).expect("checked before evaluation"),
        PolyExpr::Neg(a) => -&eval(a, u, field)?,
        PolyExpr::Add(a, b) => &eval(a, u, field)? + &eval(b, u, field)?,
        PolyExpr::Sub(a, b) => &eval(a, u, field)? - &eval(b, u, field)?,
        PolyExpr::Mul(a, b) => &eval(a, u, field)? * &eval(b, u, field)?,
        PolyExpr::Pow(a, n) => eval(a, u, field)?.pow(*n),
    })
}

fn write_monomial(out: &mut String, m: &Monomial, u: &Universe) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(u.name(i));
        if e != 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Canonical rendering: terms in decreasing graded-lex order, `" + "`/`" - "` separators,
/// unit coefficients omitted. Over a prime field coefficients are least nonnegative residues.
pub fn print_poly(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let u = f.universe();
    let mut out = String::new();
    for (i, (m, c)) in f.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag: FieldElem = c.abs();
        if m.is_one() {
            let _ = write!(out, "{mag}");
        } else {
            if !mag.is_one() {
                let _ = write!(out, "{mag}*");
            }
            write_monomial(&mut out, m, u);
        }
    }
    out
}

/// The two ring families handled by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    /// `k[T_1..T_m, U, V] / (T^r U - F(T, V))`.
    Danielewski,
    /// `k[X_1..X_m, Y, Z, T] / (X^r Y - H(X, Z, T))`.
    Asanuma,
}

impl Family {
    /// Variable names used for the defining polynomial in configuration files.
    pub fn config_universe(&self, m: usize) -> Universe {
        let mut names: Vec<String> = match self {
            Family::Danielewski => (1..=m).map(|i| format!("T{i}")).collect(),
            Family::Asanuma => (1..=m).map(|i| format!("X{i}")).collect(),
        };
        match self {
            Family::Danielewski => names.push("V".into()),
            Family::Asanuma => {
                names.push("Z".into());
                names.push("T".into());
            }
        }
        Universe::new(&names)
    }

    /// Name of the main free variable in config spelling (`V` or `Z`).
    pub fn main_free_var(&self) -> &'static str {
        match self {
            Family::Danielewski => "V",
            Family::Asanuma => "Z",
        }
    }
}

/// A validated ring presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingConfig {
    pub field: FieldSpec,
    pub family: Family,
    pub m: usize,
    pub r: Vec<u32>,
    /// `F` (Danielewski, over `T1..Tm, V`) or `H` (Asanuma, over `X1..Xm, Z, T`).
    pub defining: Polynomial,
    pub g1: Option<Polynomial>,
    pub g2: Option<Polynomial>,
}

impl RingConfig {
    /// Builds and validates a Danielewski presentation from an expression for `F`.
    pub fn danielewski(field: FieldSpec, r: &[u32], f: &str) -> Result<Self, ConfigError> {
        let u = Family::Danielewski.config_universe(r.len());
        let defining = parse_poly(f, &u, field)
            .map_err(|source| ConfigError::Parse { key: "F".into(), source })?;
        let cfg = RingConfig {
            field,
            family: Family::Danielewski,
            m: r.len(),
            r: r.to_vec(),
            defining,
            g1: None,
            g2: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Builds and validates an Asanuma presentation from an expression for `H`.
    pub fn asanuma(field: FieldSpec, r: &[u32], h: &str) -> Result<Self, ConfigError> {
        let u = Family::Asanuma.config_universe(r.len());
        let defining = parse_poly(h, &u, field)
            .map_err(|source| ConfigError::Parse { key: "H".into(), source })?;
        let cfg = RingConfig {
            field,
            family: Family::Asanuma,
            m: r.len(),
            r: r.to_vec(),
            defining,
            g1: None,
            g2: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_cofactors(mut self, g1: &str, g2: &str) -> Result<Self, ConfigError> {
        let u = self.cofactor_universe();
        self.g1 = Some(
            parse_poly(g1, &u, self.field)
                .map_err(|source| ConfigError::Parse { key: "g1".into(), source })?,
        );
        self.g2 = Some(
            parse_poly(g2, &u, self.field)
                .map_err(|source| ConfigError::Parse { key: "g2".into(), source })?,
        );
        Ok(self)
    }

    /// Variables allowed in the cofactors `g1`, `g2`.
    pub fn cofactor_universe(&self) -> Universe {
        match self.family {
            Family::Danielewski => self.family.config_universe(self.m),
            Family::Asanuma => {
                let mut names: Vec<String> = (1..=self.m).map(|i| format!("X{i}")).collect();
                names.push("Z".into());
                Universe::new(&names)
            }
        }
    }

    /// Checks every structural invariant, naming the violated clause.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let inv = |s: &str| Err(ConfigError::Invariant(s.to_string()));
        if self.m == 0 {
            return inv("m must be positive");
        }
        if self.r.len() != self.m {
            return Err(ConfigError::Invariant(format!(
                "r has {} entries but m = {}",
                self.r.len(),
                self.m
            )));
        }
        if self.r.contains(&0) {
            return inv("every r_i must be positive");
        }
        if !self.defining.is_polynomial() {
            return inv("defining polynomial has negative exponents");
        }
        match self.family {
            Family::Danielewski => {
                let vi = self.m;
                let coeffs = self.defining.coefficients_in(vi);
                let Some((&d, lead)) = coeffs.iter().next_back() else {
                    return inv("F is zero");
                };
                if !lead.constant_value().is_some_and(|c| c.is_one()) {
                    return inv("F not monic in V");
                }
                if d < 2 {
                    return inv("deg_V F < 2");
                }
            }
            Family::Asanuma => {
                if self.r.iter().any(|&x| x < 2) {
                    return inv("asanuma rings need r_i > 1 for all i");
                }
                let mut h = self.defining.clone();
                for i in 0..self.m {
                    h = h.eval_zero(i);
                }
                if h.is_zero() {
                    return inv("h(Z,T) = H(0,...,0,Z,T) is zero");
                }
            }
        }
        Ok(())
    }
}

const CONFIG_KEYS: [&str; 8] = ["field", "family", "m", "r", "F", "H", "g1", "g2"];

/// Parses the `key = value` configuration format (`#` starts a comment).
pub fn parse_ring_config(text: &str) -> Result<RingConfig, ConfigError> {
    let mut entries: Vec<(&'static str, String)> = Vec::new();
    let mut seen = HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or(ConfigError::Malformed { line: n + 1 })?;
        let k = k.trim();
        let key = CONFIG_KEYS
            .iter()
            .find(|&&c| c == k)
            .ok_or_else(|| ConfigError::UnknownKey { line: n + 1, key: k.to_string() })?;
        if !seen.insert(*key) {
            return Err(ConfigError::DuplicateKey { line: n + 1, key: k.to_string() });
        }
        entries.push((key, v.trim().to_string()));
    }
    let get = |k: &str| entries.iter().find(|(key, _)| *key == k).map(|(_, v)| v.as_str());

    let field: FieldSpec = get("field").ok_or(ConfigError::MissingKey("field"))?.parse()?;
    let family = match get("family").unwrap_or("danielewski").to_ascii_lowercase().as_str() {
        "danielewski" => Family::Danielewski,
        "asanuma" => Family::Asanuma,
        other => {
            return Err(ConfigError::BadValue {
                key: "family".into(),
                message: format!("`{other}` is not danielewski or asanuma"),
            })
        }
    };
    let m: usize = get("m")
        .ok_or(ConfigError::MissingKey("m"))?
        .parse()
        .map_err(|_| ConfigError::BadValue { key: "m".into(), message: "not a positive integer".into() })?;
    let r = parse_r(get("r").ok_or(ConfigError::MissingKey("r"))?)?;
    let (def_key, other_key) = match family {
        Family::Danielewski => ("F", "H"),
        Family::Asanuma => ("H", "F"),
    };
    if get(other_key).is_some() {
        return Err(ConfigError::BadValue {
            key: other_key.into(),
            message: format!("not valid for the {family:?} family"),
        });
    }
    let def_text = get(def_key).ok_or(if def_key == "F" {
        ConfigError::MissingKey("F")
    } else {
        ConfigError::MissingKey("H")
    })?;
    let defining = parse_poly(def_text, &family.config_universe(m), field)
        .map_err(|source| ConfigError::Parse { key: def_key.into(), source })?;
    let mut cfg = RingConfig { field, family, m, r, defining, g1: None, g2: None };
    match (get("g1"), get("g2")) {
        (Some(a), Some(b)) => cfg = cfg.with_cofactors(a, b)?,
        (None, None) => {}
        _ => {
            return Err(ConfigError::BadValue {
                key: "g1/g2".into(),
                message: "cofactors must be given together".into(),
            })
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_r(s: &str) -> Result<Vec<u32>, ConfigError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|x| {
            x.trim().parse::<u32>().map_err(|_| ConfigError::BadValue {
                key: "r".into(),
                message: format!("`{}` is not a positive integer", x.trim()),
            })
        })
        .collect()
}

pub fn load_ring_config(path: impl AsRef<Path>) -> Result<RingConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_ring_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuv() -> Universe {
        Universe::new(&["T1", "U", "V"])
    }

    #[test]
    fn parses_the_relation_of_a_danielewski_surface() {
        let f = parse_poly("T1^2*U - V^2", &tuv(), FieldSpec::Rationals).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(print_poly(&f), "T1^2*U - V^2");
    }

    #[test]
    fn minus_one_is_one_mod_two() {
        let f = parse_poly("V^2 - 1", &tuv(), FieldSpec::Prime(2)).unwrap();
        assert_eq!(print_poly(&f), "V^2 + 1");
    }

    #[test]
    fn rejects_negative_exponent() {
        let e = parse_poly("T1^-1", &tuv(), FieldSpec::Rationals).unwrap_err();
        match e {
            ParseError::Syntax { line, column, expected, .. } => {
                assert_eq!((line, column), (1, 4));
                assert!(expected.contains("exponent"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            parse_poly("T1 + Q", &tuv(), FieldSpec::Rationals),
            Err(ParseError::UnknownVariable { column: 6, .. })
        ));
        assert!(matches!(
            parse_poly("V^99999999999", &tuv(), FieldSpec::Rationals),
            Err(ParseError::ExponentOverflow { .. })
        ));
        assert!(matches!(
            parse_poly("1/3*V", &tuv(), FieldSpec::Prime(3)),
            Err(ParseError::ZeroDenominator { .. })
        ));
        assert!(parse_poly("2V", &tuv(), FieldSpec::Rationals).is_err());
        assert!(parse_poly("(V + 1", &tuv(), FieldSpec::Rationals).is_err());
        assert!(parse_poly("", &tuv(), FieldSpec::Rationals).is_err());
        assert!(parse_poly("V +", &tuv(), FieldSpec::Rationals).is_err());
        let multi = parse_poly("V +\n  $", &tuv(), FieldSpec::Rationals).unwrap_err();
        assert!(matches!(multi, ParseError::Syntax { line: 2, column: 3, .. }));
    }

    #[test]
    fn precedence() {
        let u = tuv();
        let q = |s: &str| parse_poly(s, &u, FieldSpec::Rationals).unwrap();
        assert_eq!(q("-V^2"), -&q("V*V"));
        assert_eq!(q("2*V^2 + 1"), q("(2*(V^2)) + 1"));
        assert_eq!(q("-V + V"), q("0"));
        assert_eq!(q("1 - -V"), q("1 + V"));
    }

    #[test]
    fn printing_examples() {
        let u = tuv();
        assert_eq!(print_poly(&Polynomial::zero(FieldSpec::Rationals, &u)), "0");
        let f = parse_poly("-1 + V^2", &u, FieldSpec::Rationals).unwrap();
        assert_eq!(print_poly(&f), "V^2 - 1");
        let g = parse_poly("-1/2*V*U + 3", &u, FieldSpec::Rationals).unwrap();
        assert_eq!(print_poly(&g), "-1/2*U*V + 3");
        assert_eq!(parse_poly(&print_poly(&g), &u, FieldSpec::Rationals).unwrap(), g);
    }

    #[test]
    fn config_examples() {
        let ok = parse_ring_config("field = Q\nm = 1\nr = 2\nF = V^2-1\n").unwrap();
        assert_eq!(ok.family, Family::Danielewski);
        assert_eq!(ok.r, vec![2]);

        let not_monic = parse_ring_config("field = Q\nm = 1\nr = 2\nF = T1*V\n").unwrap_err();
        assert_eq!(not_monic.to_string(), "F not monic in V");
        let low = parse_ring_config("field = Q\nm = 1\nr = 2\nF = V + T1\n").unwrap_err();
        assert_eq!(low.to_string(), "deg_V F < 2");

        let asa = parse_ring_config("field = Fp 5\nfamily = asanuma\nm = 1\nr = [1]\nH = Z + T\n")
            .unwrap_err();
        assert!(asa.to_string().contains("r_i > 1"));

        let with_comments = "# surface\nfield = Fp:5 # five\nfamily = asanuma\nm = 2\nr = 2, 2\nH = 1 + Z^2\n";
        let cfg = parse_ring_config(with_comments).unwrap();
        assert_eq!(cfg.field, FieldSpec::Prime(5));
        assert_eq!(cfg.m, 2);

        let zero_h = parse_ring_config("field = Q\nfamily = asanuma\nm = 1\nr = 2\nH = X1*Z\n");
        assert!(zero_h.unwrap_err().to_string().contains("zero"));
    }

    #[test]
    fn config_key_errors() {
        assert!(matches!(
            parse_ring_config("m = 1\nr = 2\nF = V^2\n"),
            Err(ConfigError::MissingKey("field"))
        ));
        assert!(matches!(
            parse_ring_config("field = Q\nm = 1\nr = 2\n"),
            Err(ConfigError::MissingKey("F"))
        ));
        assert!(matches!(
            parse_ring_config("field = Q\nm = 1\nr = 2\nF = V^2\ncolor = red\n"),
            Err(ConfigError::UnknownKey { line: 5, .. })
        ));
        assert!(matches!(
            parse_ring_config("field = Q\nm = 2\nr = 2\nF = V^2\n"),
            Err(ConfigError::Invariant(_))
        ));
        assert!(matches!(
            parse_ring_config("field = Q\nm = 1\nr = 2\nF = V^2\ng1 = 1\n"),
            Err(ConfigError::BadValue { .. })
        ));
        let cof = parse_ring_config("field = Q\nm = 1\nr = 2\nF = V^2 - 1\ng1 = -1\ng2 = 1/2*V\n")
            .unwrap();
        assert!(cof.g2.is_some());
    }
}
