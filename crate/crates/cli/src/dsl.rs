//! The presentation file format.
//!
//! ```text
//! field Q                  # or Qi
//! algebra name
//! generators x, y
//! relations x*x; y*y; x*y + y*x
//! clifford std: 1, 1, 0    # values against the listed relation order
//! central z1: x*x + y*y
//! assert koszul            # koszul | as_regular | gldim2
//! ```
//!
//! Scalars are exact: `3`, `-1/2`, `1/2+1/3i`. Parsing a canonical print
//! returns the same file.

use std::collections::BTreeMap;
use std::fmt;

use qforge_core::clifford::Hypotheses;
use qforge_core::quadalg::{Limits, QuadraticPresentation};
use qforge_core::scalar::{FieldKind, Scalar};
use qforge_core::tensor::Tensor;
use qforge_core::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax(String),
    Degree,
    UnknownGenerator(String),
    ArityMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub kind: DslErrorKind,
}

impl DslError {
    pub fn code(&self) -> &'static str {
        match self.kind {
            DslErrorKind::Syntax(_) => "SyntaxError",
            DslErrorKind::Degree => "DegreeError",
            DslErrorKind::UnknownGenerator(_) => "UnknownGenerator",
            DslErrorKind::ArityMismatch { .. } => "ArityMismatch",
        }
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.col)?;
        match &self.kind {
            DslErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            DslErrorKind::Degree => write!(f, "polynomial is not homogeneous of degree 2"),
            DslErrorKind::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            DslErrorKind::ArityMismatch { expected, got } => write!(
                f,
                "coordinate vector has {got} entries, expected {expected} (one per relation)"
            ),
        }
    }
}

impl std::error::Error for DslError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(at) => &line[..at],
            None => line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(at, c)) = chars.peek() {
            let col = at + 1;
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Int(s),
                    line: lineno + 1,
                    col,
                });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: lineno + 1,
                    col,
                });
            } else if "+-*/,;:".contains(c) {
                chars.next();
                out.push(Token {
                    tok: Tok::Punct(c),
                    line: lineno + 1,
                    col,
                });
            } else {
                return Err(DslError {
                    line: lineno + 1,
                    col,
                    kind: DslErrorKind::Syntax(format!("unexpected character `{c}`")),
                });
            }
        }
    }
    Ok(out)
}

/// A parsed presentation file; relations keep their listed order.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentationFile {
    pub field: FieldKind,
    pub name: String,
    pub generators: Vec<String>,
    pub relations: Vec<Tensor>,
    pub clifford_vectors: BTreeMap<String, Vec<Scalar>>,
    pub central_elements: BTreeMap<String, Tensor>,
    pub assertions: Hypotheses,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn position(&self) -> (usize, usize) {
        match self.tokens.get(self.at).or_else(|| self.tokens.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        let (line, col) = self.position();
        Err(DslError {
            line,
            col,
            kind: DslErrorKind::Syntax(msg.into()),
        })
    }

    fn error(&self, kind: DslErrorKind) -> DslError {
        let (line, col) = self.position();
        DslError { line, col, kind }
    }

    fn take_ident(&mut self, what: &str) -> Result<String, DslError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn take_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Ident(s)) if s == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.fail(format!("expected keyword `{kw}`")),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Punct(p)) if *p == c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn take_punct(&mut self, c: char) -> Result<(), DslError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn take_int(&mut self) -> Result<String, DslError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(s)) => {
                self.at += 1;
                Ok(s)
            }
            _ => self.fail("expected an integer"),
        }
    }

    /// `INT[/INT]` with optional leading sign.
    fn rational(&mut self) -> Result<Scalar, DslError> {
        let negative = if self.eat_punct('-') {
            true
        } else {
            let _ = self.eat_punct('+');
            false
        };
        let numer = self.take_int()?;
        let denom = if self.eat_punct('/') {
            Some(self.take_int()?)
        } else {
            None
        };
        let text = match denom {
            Some(d) => format!("{numer}/{d}"),
            None => numer,
        };
        let s: Scalar = text
            .parse()
            .map_err(|_| self.error(DslErrorKind::Syntax("invalid rational".into())))?;
        Ok(if negative { -s } else { s })
    }

    /// `INT[/INT][(+|-)INT[/INT]i]`, with optional leading sign.
    fn scalar(&mut self, field: FieldKind) -> Result<Scalar, DslError> {
        let real = self.rational()?;
        // An imaginary tail exists when a sign is followed by a rational
        // and the literal `i`.
        let save = self.at;
        let sign = if self.eat_punct('+') {
            Some(1)
        } else if self.eat_punct('-') {
            Some(-1)
        } else {
            None
        };
        if let Some(sign) = sign {
            if matches!(self.peek().map(|t| &t.tok), Some(Tok::Int(_))) {
                let magnitude = self.rational()?;
                if matches!(self.peek().map(|t| &t.tok), Some(Tok::Ident(s)) if s == "i") {
                    self.at += 1;
                    let imag = if sign < 0 { -magnitude } else { magnitude };
                    let value = &real + &(&imag * &Scalar::i());
                    if !value.fits(field) {
                        return self.fail("imaginary coefficient over field Q");
                    }
                    return Ok(value);
                }
            }
        }
        self.at = save;
        Ok(real)
    }

    /// `term := [scalar "*"] IDENT ("*" IDENT)?`
    fn term(
        &mut self,
        field: FieldKind,
        generators: &[String],
    ) -> Result<(Scalar, Vec<usize>), DslError> {
        let coefficient = match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(_)) | Some(Tok::Punct('-')) => {
                let c = self.scalar(field)?;
                self.take_punct('*')?;
                c
            }
            _ => Scalar::one(),
        };
        let mut letters = Vec::new();
        let first = self.take_ident("a generator name")?;
        letters.push(self.generator_index(&first, generators)?);
        while self.eat_punct('*') {
            let next = self.take_ident("a generator name")?;
            letters.push(self.generator_index(&next, generators)?);
        }
        Ok((coefficient, letters))
    }

    fn generator_index(&self, name: &str, generators: &[String]) -> Result<usize, DslError> {
        generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| self.error(DslErrorKind::UnknownGenerator(name.to_string())))
    }

    /// `poly := term (("+"|"-") term)*`, required homogeneous of degree 2.
    fn poly(&mut self, field: FieldKind, generators: &[String]) -> Result<Tensor, DslError> {
        let start = self.position();
        let mut terms: Vec<(Word, Scalar)> = Vec::new();
        let (c, letters) = self.term(field, generators)?;
        terms.push((Word::from_indices(&letters), c));
        loop {
            let negate = if self.eat_punct('+') {
                false
            } else if matches!(self.peek().map(|t| &t.tok), Some(Tok::Punct('-'))) {
                // Distinguish `- term` from a signed scalar: consume the
                // sign here only when a term follows; the scalar parser
                // never sees it.
                self.at += 1;
                true
            } else {
                break;
            };
            let (c, letters) = self.term(field, generators)?;
            let c = if negate { -c } else { c };
            terms.push((Word::from_indices(&letters), c));
        }
        if terms.iter().any(|(w, _)| w.len() != 2) {
            return Err(DslError {
                line: start.0,
                col: start.1,
                kind: DslErrorKind::Degree,
            });
        }
        Tensor::from_terms(field, 2, terms).map_err(|_| DslError {
            line: start.0,
            col: start.1,
            kind: DslErrorKind::Degree,
        })
    }
}

impl PresentationFile {
    pub fn parse(text: &str) -> Result<Self, DslError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, at: 0 };

        p.take_keyword("field")?;
        let field = match p.take_ident("`Q` or `Qi`")?.as_str() {
            "Q" => FieldKind::Rationals,
            "Qi" => FieldKind::GaussianRationals,
            other => return p.fail(format!("unknown field `{other}`")),
        };
        p.take_keyword("algebra")?;
        let name = p.take_ident("an algebra name")?;

        p.take_keyword("generators")?;
        let mut generators = vec![p.take_ident("a generator name")?];
        while p.eat_punct(',') {
            generators.push(p.take_ident("a generator name")?);
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return p.fail(format!("duplicate generator `{g}`"));
            }
        }

        p.take_keyword("relations")?;
        let mut relations = vec![p.poly(field, &generators)?];
        while p.eat_punct(';') {
            relations.push(p.poly(field, &generators)?);
        }

        let mut clifford_vectors = BTreeMap::new();
        let mut central_elements = BTreeMap::new();
        let mut assertions = Hypotheses::default();
        while let Some(token) = p.peek() {
            let keyword = match &token.tok {
                Tok::Ident(s) => s.clone(),
                _ => return p.fail("expected `clifford`, `central`, or `assert`"),
            };
            match keyword.as_str() {
                "clifford" => {
                    p.at += 1;
                    let vector_name = p.take_ident("a name for the vector")?;
                    p.take_punct(':')?;
                    let mut values = vec![p.scalar(field)?];
                    while p.eat_punct(',') {
                        values.push(p.scalar(field)?);
                    }
                    if values.len() != relations.len() {
                        return Err(p.error(DslErrorKind::ArityMismatch {
                            expected: relations.len(),
                            got: values.len(),
                        }));
                    }
                    clifford_vectors.insert(vector_name, values);
                }
                "central" => {
                    p.at += 1;
                    let element_name = p.take_ident("a name for the element")?;
                    p.take_punct(':')?;
                    let poly = p.poly(field, &generators)?;
                    central_elements.insert(element_name, poly);
                }
                "assert" => {
                    p.at += 1;
                    match p.take_ident("an assertion flag")?.as_str() {
                        "koszul" => assertions.koszul = true,
                        "as_regular" => assertions.as_regular = true,
                        "gldim2" => assertions.gldim_ge2 = true,
                        other => return p.fail(format!("unknown assertion `{other}`")),
                    }
                }
                other => return p.fail(format!("unexpected keyword `{other}`")),
            }
        }
        Ok(PresentationFile {
            field,
            name,
            generators,
            relations,
            clifford_vectors,
            central_elements,
            assertions,
        })
    }

    /// Canonical rendering; `parse(print(f)) == canonical(f)`.
    pub fn print(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field.name()));
        out.push_str(&format!("algebra {}\n", self.name));
        out.push_str(&format!("generators {}\n", self.generators.join(", ")));
        let polys: Vec<String> = self
            .relations
            .iter()
            .map(|r| print_poly(r, &self.generators))
            .collect();
        out.push_str(&format!("relations {}\n", polys.join("; ")));
        for (name, values) in &self.clifford_vectors {
            let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("clifford {name}: {}\n", rendered.join(", ")));
        }
        for (name, poly) in &self.central_elements {
            out.push_str(&format!(
                "central {name}: {}\n",
                print_poly(poly, &self.generators)
            ));
        }
        if self.assertions.koszul {
            out.push_str("assert koszul\n");
        }
        if self.assertions.as_regular {
            out.push_str("assert as_regular\n");
        }
        if self.assertions.gldim_ge2 {
            out.push_str("assert gldim2\n");
        }
        out
    }

    pub fn to_presentation(&self, limits: Limits) -> qforge_core::Result<QuadraticPresentation> {
        QuadraticPresentation::with_limits(
            self.field,
            self.generators.clone(),
            self.relations.clone(),
            limits,
        )
    }
}

/// Render a degree-2 polynomial in parser-compatible form.
pub fn print_poly(t: &Tensor, names: &[String]) -> String {
    if t.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (w, c) in t.terms() {
        let word: Vec<&str> = w.letters().map(|g| names[g].as_str()).collect();
        let word = word.join("*");
        if first {
            // The first term carries its sign inside the coefficient, so
            // the output stays inside the term grammar.
            first = false;
            if c.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{c}*{word}"));
            }
            continue;
        }
        let negative_real = c.is_negative_real();
        if negative_real {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let magnitude = if negative_real { -c.clone() } else { c.clone() };
        if magnitude.is_one() {
            out.push_str(&word);
        } else {
            out.push_str(&format!("{magnitude}*{word}"));
        }
    }
    out
}
