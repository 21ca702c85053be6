//! The line-oriented text format for presented algebras and quotient
//! rings, with a serializer that round-trips.
//!
//! Two file kinds share one surface syntax. `algebra <name>` introduces a
//! presented algebra: `generator` lines declare the PBW alphabet,
//! `comm`/`coproduct`/`steenrod`/`differential` lines attach structure,
//! and an optional `expect` line records the advertised answer. `ring
//! <name>` introduces a commutative quotient ring: `generator` lines
//! declare polynomial variables in significance order, `relation` lines
//! cut the quotient, and `steenrod` lines are degree-checked annotations.
//! `#` starts a comment; blank lines are ignored.
//!
//! Elements are sums `m1 + m2 + ...` of monomials `g1^e1*g2^e2`, with `1`
//! the unit monomial and `0` the zero element. Coproduct values are sums
//! of tensor pairs `m (x) m`. Expectations are either `expect dims d0 d1
//! ...` or `expect product F1 * F2 * ...` where each factor is `P[...]`,
//! `E[...]`, or `P[g]/(g^h)`.

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GeneratorSpec, Presentation};
use crate::groebner::{CommutativeRing, RingElement, RingError};
use crate::grading::GradedDims;
use crate::hopf::{CoproductSpec, TensorElement};
use crate::spectra::DerivationSpec;
use crate::steenrod::{SteenrodAction, SteenrodError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: unknown symbol `{name}`")]
    UnknownSymbol { line: usize, name: String },
    #[error("line {line}: inhomogeneous relation: {detail}")]
    InhomogeneousRelation { line: usize, detail: String },
    #[error("line {line}: degree mismatch: {detail}")]
    DegreeMismatch { line: usize, detail: String },
}

/// One tensor factor of an advertised product decomposition, with
/// generator degrees resolved against the file's declarations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductFactor {
    pub kind: FactorKind,
    pub gens: Vec<(String, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Polynomial,
    Exterior,
    /// P[g]/(g^h): a single generator truncated at the given height.
    Truncated(u32),
}

impl ProductFactor {
    /// Poincaré series of this factor through `cap`.
    pub fn dims(&self, cap: usize) -> GradedDims {
        let mut out = GradedDims::unit(cap);
        for &(_, d) in &self.gens {
            let height = match self.kind {
                FactorKind::Polynomial => None,
                FactorKind::Exterior => Some(2),
                FactorKind::Truncated(h) => Some(u64::from(h)),
            };
            out = out.convolve(&GradedDims::single_generator(d, height, cap), cap);
        }
        out
    }
}

/// Product of factor series through `cap`; the empty product is the unit.
pub fn product_dims(factors: &[ProductFactor], cap: usize) -> GradedDims {
    let mut out = GradedDims::unit(cap);
    for f in factors {
        out = out.convolve(&f.dims(cap), cap);
    }
    out
}

/// Renders a product expectation back into the file syntax, e.g.
/// `P[a2]/(a2^2) * P[a4,b10] * E[x3,x5]`.
pub fn format_product(factors: &[ProductFactor]) -> String {
    let rendered: Vec<String> = factors
        .iter()
        .map(|f| {
            let names: Vec<&str> = f.gens.iter().map(|(n, _)| n.as_str()).collect();
            match f.kind {
                FactorKind::Polynomial => format!("P[{}]", names.join(",")),
                FactorKind::Exterior => format!("E[{}]", names.join(",")),
                FactorKind::Truncated(h) => format!("P[{}]/({}^{h})", names[0], names[0]),
            }
        })
        .collect();
    rendered.join(" * ")
}

/// An advertised answer attached to a fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    /// Explicit dimensions from degree 0 up.
    Dims(Vec<u64>),
    /// A tensor-product formula.
    Product(Vec<ProductFactor>),
}

/// A parsed presented-algebra file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub presentation: Presentation,
    pub coproduct: CoproductSpec,
    pub steenrod: SteenrodAction,
    pub differential: Option<DerivationSpec>,
    pub expect: Option<Expectation>,
}

/// A degree-checked cohomology-side annotation on a ring file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteenrodNote {
    pub k: u32,
    pub gen: String,
    pub value: RingElement,
}

/// A parsed quotient-ring file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingFile {
    pub name: String,
    pub ring: CommutativeRing,
    pub steenrod: Vec<SteenrodNote>,
    pub expect: Option<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureFile {
    Algebra(AlgebraFile),
    Ring(RingFile),
}

impl FixtureFile {
    pub fn name(&self) -> &str {
        match self {
            FixtureFile::Algebra(a) => &a.name,
            FixtureFile::Ring(r) => &r.name,
        }
    }

    pub fn expect(&self) -> Option<&Expectation> {
        match self {
            FixtureFile::Algebra(a) => a.expect.as_ref(),
            FixtureFile::Ring(r) => r.expect.as_ref(),
        }
    }
}

// ---------------------------------------------------------------------
// Tokenizer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
        }
    }
}

fn tokenize(raw: &str, line: usize) -> Result<Vec<(Tok, usize)>, LoadError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = raw.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<u64>().map_err(|_| LoadError::Parse {
                line,
                col,
                message: format!("number `{text}` is too large"),
            })?;
            toks.push((Tok::Num(n), col));
            continue;
        }
        if "=+*^()[]/,".contains(c) {
            toks.push((Tok::Sym(c), col));
            i += 1;
            continue;
        }
        return Err(LoadError::Parse {
            line,
            col,
            message: format!("unexpected character `{c}`"),
        });
    }
    Ok(toks)
}

struct Cur<'a> {
    line: usize,
    toks: &'a [(Tok, usize)],
    pos: usize,
    end_col: usize,
}

impl<'a> Cur<'a> {
    fn new(line: usize, toks: &'a [(Tok, usize)], raw: &str) -> Cur<'a> {
        Cur {
            line,
            toks,
            pos: 0,
            end_col: raw.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_col)
    }

    fn err(&self, message: impl Into<String>) -> LoadError {
        LoadError::Parse {
            line: self.line,
            col: self.col(),
            message: message.into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), LoadError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{c}`, found {}", t.describe()))),
            None => Err(self.err(format!("expected `{c}`"))),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, LoadError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            Some(t) => Err(self.err(format!("expected {what}, found {}", t.describe()))),
            None => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), LoadError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected `{kw}`, found {}", t.describe()))),
            None => Err(self.err(format!("expected `{kw}`"))),
        }
    }

    fn expect_num(&mut self, what: &str) -> Result<u64, LoadError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            Some(t) => Err(self.err(format!("expected {what}, found {}", t.describe()))),
            None => Err(self.err(format!("expected {what}"))),
        }
    }

    fn expect_end(&self) -> Result<(), LoadError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected trailing {}", t.describe()))),
        }
    }
}

// ---------------------------------------------------------------------
// Element grammar, shared by both modes

/// A parsed element: `None` for the literal `0`, otherwise a list of
/// monomials, each a list of (name, exponent) factors (empty = unit).
type RawElement = Option<Vec<Vec<(String, u32)>>>;

fn parse_exponent(cur: &mut Cur) -> Result<u32, LoadError> {
    if cur.eat_sym('^') {
        let col = cur.col();
        let n = cur.expect_num("an exponent")?;
        if n == 0 {
            return Err(LoadError::Parse {
                line: cur.line,
                col,
                message: "exponent must be positive".to_string(),
            });
        }
        u32::try_from(n).map_err(|_| LoadError::Parse {
            line: cur.line,
            col,
            message: format!("exponent `{n}` is too large"),
        })
    } else {
        Ok(1)
    }
}

/// One monomial: `1`, or `g1^e1*g2^e2*...`.
fn parse_monomial(cur: &mut Cur) -> Result<Vec<(String, u32)>, LoadError> {
    if matches!(cur.peek(), Some(Tok::Num(1))) {
        cur.pos += 1;
        return Ok(Vec::new());
    }
    let mut factors = Vec::new();
    loop {
        let name = cur.expect_ident("a generator name")?;
        let exp = parse_exponent(cur)?;
        factors.push((name, exp));
        if !cur.eat_sym('*') {
            break;
        }
    }
    Ok(factors)
}

/// A whole element: `0`, or monomials joined by `+`.
fn parse_element_raw(cur: &mut Cur) -> Result<RawElement, LoadError> {
    if matches!(cur.peek(), Some(Tok::Num(0))) {
        cur.pos += 1;
        return Ok(None);
    }
    let mut terms = vec![parse_monomial(cur)?];
    while cur.eat_sym('+') {
        terms.push(parse_monomial(cur)?);
    }
    Ok(Some(terms))
}

fn build_element(pres: &Presentation, raw: &RawElement) -> Result<Element, AlgebraError> {
    let Some(terms) = raw else {
        return Ok(Element::zero());
    };
    let borrowed: Vec<Vec<(&str, u32)>> = terms
        .iter()
        .map(|t| t.iter().map(|(n, e)| (n.as_str(), *e)).collect())
        .collect();
    let slices: Vec<&[(&str, u32)]> = borrowed.iter().map(|v| v.as_slice()).collect();
    pres.element(&slices)
}

fn build_ring_element(ring: &CommutativeRing, raw: &RawElement) -> Result<RingElement, RingError> {
    let Some(terms) = raw else {
        return Ok(RingElement::zero());
    };
    let borrowed: Vec<Vec<(&str, u32)>> = terms
        .iter()
        .map(|t| t.iter().map(|(n, e)| (n.as_str(), *e)).collect())
        .collect();
    let slices: Vec<&[(&str, u32)]> = borrowed.iter().map(|v| v.as_slice()).collect();
    ring.element(&slices)
}

// ---------------------------------------------------------------------
// Error classification
//
// Constructor errors become the spec's taxonomy based on where they
// arose: relation-shaped lines report InhomogeneousRelation, value-shaped
// lines report DegreeMismatch, and unknown names always report
// UnknownSymbol.

#[derive(Clone, Copy)]
enum Ctx {
    Relation,
    Value,
}

fn classify_algebra(line: usize, ctx: Ctx, err: AlgebraError) -> LoadError {
    match err {
        AlgebraError::UnknownGenerator(name) => LoadError::UnknownSymbol { line, name },
        AlgebraError::Invalid(detail) => match ctx {
            Ctx::Relation => LoadError::InhomogeneousRelation { line, detail },
            Ctx::Value => LoadError::DegreeMismatch { line, detail },
        },
    }
}

fn classify_steenrod(line: usize, err: SteenrodError) -> LoadError {
    match err {
        SteenrodError::Algebra(inner) => classify_algebra(line, Ctx::Value, inner),
        SteenrodError::WrongDegree { k, gen, want, got } => LoadError::DegreeMismatch {
            line,
            detail: format!("operation {k} on `{gen}` must land in degree {want}, got {got}"),
        },
        other => LoadError::Parse {
            line,
            col: 1,
            message: other.to_string(),
        },
    }
}

fn classify_ring(line: usize, err: RingError) -> LoadError {
    match err {
        RingError::UnknownVariable(name) => LoadError::UnknownSymbol { line, name },
        RingError::InhomogeneousRelation(detail) => {
            LoadError::InhomogeneousRelation { line, detail }
        }
        other => LoadError::Parse {
            line,
            col: 1,
            message: other.to_string(),
        },
    }
}

// ---------------------------------------------------------------------
// Loader

struct SourceLine {
    number: usize,
    raw: String,
    toks: Vec<(Tok, usize)>,
}

fn significant_lines(text: &str) -> Result<Vec<SourceLine>, LoadError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let toks = tokenize(raw, number)?;
        if !toks.is_empty() {
            out.push(SourceLine {
                number,
                raw: raw.to_string(),
                toks,
            });
        }
    }
    Ok(out)
}

fn keyword(line: &SourceLine) -> Option<&str> {
    match &line.toks[0].0 {
        Tok::Ident(s) => Some(s.as_str()),
        _ => None,
    }
}

/// Parses a fixture file.
pub fn load_fixture(text: &str) -> Result<FixtureFile, LoadError> {
    let lines = significant_lines(text)?;
    let Some(header) = lines.first() else {
        return Err(LoadError::Parse {
            line: 1,
            col: 1,
            message: "empty file: expected `algebra <name>` or `ring <name>`".to_string(),
        });
    };
    let mut cur = Cur::new(header.number, &header.toks, &header.raw);
    let mode = cur.expect_ident("`algebra` or `ring`")?;
    if mode != "algebra" && mode != "ring" {
        return Err(LoadError::Parse {
            line: header.number,
            col: header.toks[0].1,
            message: format!("expected `algebra <name>` or `ring <name>`, found `{mode}`"),
        });
    }
    let name = cur.expect_ident("a fixture name")?;
    cur.expect_end()?;
    let body = &lines[1..];
    if mode == "algebra" {
        load_algebra(name, body).map(FixtureFile::Algebra)
    } else {
        load_ring(name, body).map(FixtureFile::Ring)
    }
}

/// First pass over `generator` lines, shared shape for both modes.
struct RawGenerator {
    line: usize,
    name: String,
    degree: usize,
    /// `None` = poly, `Some(h)` = nil h.
    height: Option<u32>,
}

fn parse_generator_line(line: &SourceLine, allow_nil: bool) -> Result<RawGenerator, LoadError> {
    let mut cur = Cur::new(line.number, &line.toks, &line.raw);
    cur.expect_keyword("generator")?;
    let name = cur.expect_ident("a generator name")?;
    cur.expect_keyword("deg")?;
    let deg_col = cur.col();
    let degree = cur.expect_num("a degree")? as usize;
    if degree == 0 {
        return Err(LoadError::Parse {
            line: line.number,
            col: deg_col,
            message: "generator degree must be positive".to_string(),
        });
    }
    let height = match cur.peek() {
        None => None,
        Some(Tok::Ident(kw)) if kw == "poly" => {
            cur.pos += 1;
            None
        }
        Some(Tok::Ident(kw)) if kw == "nil" => {
            if !allow_nil {
                return Err(cur.err("ring generators are always polynomial; `nil` is not allowed"));
            }
            cur.pos += 1;
            let h_col = cur.col();
            let h = cur.expect_num("a nilpotence height")?;
            if h < 2 {
                return Err(LoadError::Parse {
                    line: line.number,
                    col: h_col,
                    message: "nilpotence height must be at least 2".to_string(),
                });
            }
            Some(u32::try_from(h).map_err(|_| LoadError::Parse {
                line: line.number,
                col: h_col,
                message: format!("height `{h}` is too large"),
            })?)
        }
        Some(t) => {
            return Err(cur.err(format!(
                "expected `poly`, `nil <h>`, or end of line, found {}",
                t.describe()
            )))
        }
    };
    cur.expect_end()?;
    Ok(RawGenerator {
        line: line.number,
        name,
        degree,
        height,
    })
}

fn check_duplicates(gens: &[RawGenerator]) -> Result<(), LoadError> {
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].iter().any(|h| h.name == g.name) {
            return Err(LoadError::Parse {
                line: g.line,
                col: 1,
                message: format!("generator `{}` is declared twice", g.name),
            });
        }
    }
    Ok(())
}

fn parse_expect(cur: &mut Cur) -> Result<Expectation, LoadError> {
    let kind = cur.expect_ident("`dims` or `product`")?;
    match kind.as_str() {
        "dims" => {
            let mut dims = Vec::new();
            while cur.peek().is_some() {
                dims.push(cur.expect_num("a dimension")?);
            }
            if dims.is_empty() {
                return Err(cur.err("expected at least one dimension"));
            }
            Ok(Expectation::Dims(dims))
        }
        "product" => {
            let mut factors = vec![parse_factor(cur)?];
            while cur.eat_sym('*') {
                factors.push(parse_factor(cur)?);
            }
            cur.expect_end()?;
            Ok(Expectation::Product(factors))
        }
        other => Err(cur.err(format!(
            "expected `dims` or `product`, found `{other}`"
        ))),
    }
}

/// `P[g1,g2,...]`, `E[g1,...]`, or `P[g]/(g^h)`. Degrees are resolved by
/// the caller.
fn parse_factor(cur: &mut Cur) -> Result<ProductFactor, LoadError> {
    let head_col = cur.col();
    let head = cur.expect_ident("`P` or `E`")?;
    if head != "P" && head != "E" {
        return Err(LoadError::Parse {
            line: cur.line,
            col: head_col,
            message: format!("expected `P` or `E`, found `{head}`"),
        });
    }
    cur.expect_sym('[')?;
    let mut names = vec![cur.expect_ident("a generator name")?];
    while cur.eat_sym(',') {
        names.push(cur.expect_ident("a generator name")?);
    }
    cur.expect_sym(']')?;
    let kind = if cur.eat_sym('/') {
        if head != "P" || names.len() != 1 {
            return Err(cur.err("a truncation `/(g^h)` needs exactly `P[g]`"));
        }
        cur.expect_sym('(')?;
        let again = cur.expect_ident("the truncated generator")?;
        if again != names[0] {
            return Err(cur.err(format!(
                "truncation names `{again}` but the factor is on `{}`",
                names[0]
            )));
        }
        cur.expect_sym('^')?;
        let h_col = cur.col();
        let h = cur.expect_num("a height")?;
        if h < 2 {
            return Err(LoadError::Parse {
                line: cur.line,
                col: h_col,
                message: "truncation height must be at least 2".to_string(),
            });
        }
        cur.expect_sym(')')?;
        FactorKind::Truncated(u32::try_from(h).map_err(|_| LoadError::Parse {
            line: cur.line,
            col: h_col,
            message: format!("height `{h}` is too large"),
        })?)
    } else if head == "P" {
        FactorKind::Polynomial
    } else {
        FactorKind::Exterior
    };
    Ok(ProductFactor {
        kind,
        gens: names.into_iter().map(|n| (n, 0)).collect(),
    })
}

/// Fills in factor degrees from the file's declarations.
fn resolve_factor_degrees(
    line: usize,
    factors: &mut [ProductFactor],
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<(), LoadError> {
    for f in factors.iter_mut() {
        for (name, degree) in f.gens.iter_mut() {
            *degree = lookup(name).ok_or_else(|| LoadError::UnknownSymbol {
                line,
                name: name.clone(),
            })?;
        }
    }
    Ok(())
}

fn load_algebra(name: String, body: &[SourceLine]) -> Result<AlgebraFile, LoadError> {
    // Pass 1: the alphabet.
    let mut raw_gens = Vec::new();
    for line in body {
        if keyword(line) == Some("generator") {
            raw_gens.push(parse_generator_line(line, true)?);
        }
    }
    check_duplicates(&raw_gens)?;
    let specs: Vec<GeneratorSpec> = raw_gens
        .iter()
        .map(|g| match g.height {
            None => GeneratorSpec::poly(&g.name, g.degree),
            Some(h) => GeneratorSpec::nil(&g.name, g.degree, h),
        })
        .collect();
    let mut pres = Presentation::new(specs).map_err(|e| LoadError::Parse {
        line: raw_gens.first().map(|g| g.line).unwrap_or(1),
        col: 1,
        message: e.to_string(),
    })?;

    // Pass 2: structure. Commutators first, so later value lines are
    // validated against the finished presentation.
    for line in body {
        if keyword(line) != Some("comm") {
            continue;
        }
        let mut cur = Cur::new(line.number, &line.toks, &line.raw);
        cur.pos = 1;
        let g = cur.expect_ident("a generator name")?;
        let h = cur.expect_ident("a generator name")?;
        cur.expect_sym('=')?;
        let raw = parse_element_raw(&mut cur)?;
        cur.expect_end()?;
        if g == h {
            return Err(cur.err("a commutator needs two distinct generators"));
        }
        let value = build_element(&pres, &raw)
            .map_err(|e| classify_algebra(line.number, Ctx::Relation, e))?;
        // Commutators are symmetric here, so accept either order and
        // install the pair in PBW order.
        let gi = position_of(&pres, &g, line.number)?;
        let hi = position_of(&pres, &h, line.number)?;
        let (earlier, later) = if gi < hi { (&g, &h) } else { (&h, &g) };
        pres.set_commutator(earlier, later, value)
            .map_err(|e| classify_algebra(line.number, Ctx::Relation, e))?;
    }

    let mut coproduct = CoproductSpec::primitive(&pres);
    let mut steenrod = SteenrodAction::new();
    let mut differential: Option<DerivationSpec> = None;
    let mut expect = None;
    for line in body {
        let mut cur = Cur::new(line.number, &line.toks, &line.raw);
        match keyword(line) {
            Some("generator") | Some("comm") => continue,
            Some("coproduct") => {
                cur.pos = 1;
                let g = cur.expect_ident("a generator name")?;
                cur.expect_sym('=')?;
                let value = parse_tensor_value(&mut cur, &pres)?;
                cur.expect_end()?;
                coproduct
                    .set_reduced(&pres, &g, value)
                    .map_err(|e| classify_algebra(line.number, Ctx::Value, e))?;
            }
            Some("steenrod") => {
                cur.pos = 1;
                let k_col = cur.col();
                let k = cur.expect_num("an operation index")?;
                let k = u32::try_from(k).map_err(|_| LoadError::Parse {
                    line: line.number,
                    col: k_col,
                    message: format!("operation index `{k}` is too large"),
                })?;
                let g = cur.expect_ident("a generator name")?;
                cur.expect_sym('=')?;
                let raw = parse_element_raw(&mut cur)?;
                cur.expect_end()?;
                let value = build_element(&pres, &raw)
                    .map_err(|e| classify_algebra(line.number, Ctx::Value, e))?;
                steenrod
                    .set(&pres, k, &g, value)
                    .map_err(|e| classify_steenrod(line.number, e))?;
            }
            Some("differential") => {
                cur.pos = 1;
                let g = cur.expect_ident("a generator name")?;
                cur.expect_sym('=')?;
                let raw = parse_element_raw(&mut cur)?;
                cur.expect_end()?;
                let value = build_element(&pres, &raw)
                    .map_err(|e| classify_algebra(line.number, Ctx::Value, e))?;
                differential
                    .get_or_insert_with(|| DerivationSpec::zero(&pres))
                    .set(&pres, &g, value)
                    .map_err(|e| classify_algebra(line.number, Ctx::Value, e))?;
            }
            Some("expect") => {
                cur.pos = 1;
                if expect.is_some() {
                    return Err(cur.err("duplicate `expect` line"));
                }
                let mut e = parse_expect(&mut cur)?;
                if let Expectation::Product(factors) = &mut e {
                    resolve_factor_degrees(line.number, factors, |n| {
                        pres.generators()
                            .iter()
                            .find(|g| g.name == n)
                            .map(|g| g.degree)
                    })?;
                }
                expect = Some(e);
            }
            Some(other) => return Err(cur.err(format!("unknown directive `{other}`"))),
            None => return Err(cur.err("a line must start with a directive")),
        }
    }
    // A differential that is entirely zero is the same as none.
    if let Some(d) = &differential {
        if (0..pres.num_generators()).all(|g| d.of_generator(g).is_zero()) {
            differential = None;
        }
    }
    Ok(AlgebraFile {
        name,
        presentation: pres,
        coproduct,
        steenrod,
        differential,
        expect,
    })
}

fn parse_tensor_value(cur: &mut Cur, pres: &Presentation) -> Result<TensorElement, LoadError> {
    if matches!(cur.peek(), Some(Tok::Num(0))) {
        cur.pos += 1;
        return Ok(TensorElement::zero());
    }
    let mut value = TensorElement::zero();
    loop {
        let left = parse_monomial(cur)?;
        cur.expect_sym('(')?;
        cur.expect_keyword("x")?;
        cur.expect_sym(')')?;
        let right = parse_monomial(cur)?;
        let lm = build_monomial(pres, &left).map_err(|e| classify_algebra(cur.line, Ctx::Value, e))?;
        let rm =
            build_monomial(pres, &right).map_err(|e| classify_algebra(cur.line, Ctx::Value, e))?;
        value.toggle((lm, rm));
        if !cur.eat_sym('+') {
            break;
        }
    }
    Ok(value)
}

fn build_monomial(
    pres: &Presentation,
    raw: &[(String, u32)],
) -> Result<crate::algebra::Monomial, AlgebraError> {
    let borrowed: Vec<(&str, u32)> = raw.iter().map(|(n, e)| (n.as_str(), *e)).collect();
    pres.monomial(&borrowed)
}

fn position_of(pres: &Presentation, name: &str, line: usize) -> Result<usize, LoadError> {
    pres.generators()
        .iter()
        .position(|g| g.name == name)
        .ok_or_else(|| LoadError::UnknownSymbol {
            line,
            name: name.to_string(),
        })
}

fn load_ring(name: String, body: &[SourceLine]) -> Result<RingFile, LoadError> {
    let mut raw_gens = Vec::new();
    for line in body {
        if keyword(line) == Some("generator") {
            raw_gens.push(parse_generator_line(line, false)?);
        }
    }
    check_duplicates(&raw_gens)?;
    let vars: Vec<(String, usize)> = raw_gens.iter().map(|g| (g.name.clone(), g.degree)).collect();
    let mut ring = CommutativeRing::new(vars).map_err(|e| LoadError::Parse {
        line: raw_gens.first().map(|g| g.line).unwrap_or(1),
        col: 1,
        message: e.to_string(),
    })?;

    let mut steenrod = Vec::new();
    let mut expect = None;
    for line in body {
        let mut cur = Cur::new(line.number, &line.toks, &line.raw);
        match keyword(line) {
            Some("generator") => continue,
            Some("relation") => {
                cur.pos = 1;
                let raw = parse_element_raw(&mut cur)?;
                cur.expect_end()?;
                let rel = build_ring_element(&ring, &raw)
                    .map_err(|e| classify_ring(line.number, e))?;
                ring.add_relation(rel)
                    .map_err(|e| classify_ring(line.number, e))?;
            }
            Some("steenrod") => {
                cur.pos = 1;
                let k_col = cur.col();
                let k = cur.expect_num("an operation index")?;
                let k = u32::try_from(k).map_err(|_| LoadError::Parse {
                    line: line.number,
                    col: k_col,
                    message: format!("operation index `{k}` is too large"),
                })?;
                if k == 0 {
                    return Err(LoadError::Parse {
                        line: line.number,
                        col: k_col,
                        message: "operation index must be positive".to_string(),
                    });
                }
                let g = cur.expect_ident("a variable name")?;
                cur.expect_sym('=')?;
                let raw = parse_element_raw(&mut cur)?;
                cur.expect_end()?;
                let value = build_ring_element(&ring, &raw)
                    .map_err(|e| classify_ring(line.number, e))?;
                let gdeg = ring
                    .vars()
                    .iter()
                    .find(|(n, _)| n == &g)
                    .map(|&(_, d)| d)
                    .ok_or_else(|| LoadError::UnknownSymbol {
                        line: line.number,
                        name: g.clone(),
                    })?;
                // Cohomology-side annotation: the operation raises degree.
                if let Some(got) = ring.element_degree(&value) {
                    let want = gdeg + k as usize;
                    if got != want {
                        return Err(LoadError::DegreeMismatch {
                            line: line.number,
                            detail: format!(
                                "operation {k} on `{g}` must land in degree {want}, got {got}"
                            ),
                        });
                    }
                }
                steenrod.push(SteenrodNote { k, gen: g, value });
            }
            Some("expect") => {
                cur.pos = 1;
                if expect.is_some() {
                    return Err(cur.err("duplicate `expect` line"));
                }
                let mut e = parse_expect(&mut cur)?;
                if let Expectation::Product(factors) = &mut e {
                    resolve_factor_degrees(line.number, factors, |n| {
                        ring.vars().iter().find(|(v, _)| v == n).map(|&(_, d)| d)
                    })?;
                }
                expect = Some(e);
            }
            Some("comm") | Some("coproduct") | Some("differential") => {
                return Err(cur.err("this directive is only valid in `algebra` files"));
            }
            Some(other) => return Err(cur.err(format!("unknown directive `{other}`"))),
            None => return Err(cur.err("a line must start with a directive")),
        }
    }
    Ok(RingFile {
        name,
        ring,
        steenrod,
        expect,
    })
}

// ---------------------------------------------------------------------
// Serializer

/// Renders a fixture back to the text format; loading the result yields
/// structurally equal data.
pub fn serialize_fixture(f: &FixtureFile) -> String {
    match f {
        FixtureFile::Algebra(a) => serialize_algebra(a),
        FixtureFile::Ring(r) => serialize_ring(r),
    }
}

fn serialize_expect(out: &mut String, expect: &Option<Expectation>) {
    match expect {
        None => {}
        Some(Expectation::Dims(dims)) => {
            out.push_str("expect dims");
            for d in dims {
                out.push_str(&format!(" {d}"));
            }
            out.push('\n');
        }
        Some(Expectation::Product(factors)) => {
            out.push_str(&format!("expect product {}\n", format_product(factors)));
        }
    }
}

fn serialize_algebra(a: &AlgebraFile) -> String {
    let pres = &a.presentation;
    let mut out = format!("algebra {}\n", a.name);
    for g in pres.generators() {
        match g.height {
            None => out.push_str(&format!("generator {} deg {} poly\n", g.name, g.degree)),
            Some(h) => out.push_str(&format!("generator {} deg {} nil {h}\n", g.name, g.degree)),
        }
    }
    for (i, j, value) in pres.commutator_pairs() {
        out.push_str(&format!(
            "comm {} {} = {}\n",
            pres.generator(i).name,
            pres.generator(j).name,
            pres.format_element(value)
        ));
    }
    for (g, spec) in pres.generators().iter().enumerate() {
        let reduced = a.coproduct.reduced_of(g);
        if !reduced.is_zero() {
            out.push_str(&format!(
                "coproduct {} = {}\n",
                spec.name,
                reduced.format(pres)
            ));
        }
    }
    for (k, g, value) in a.steenrod.stated() {
        out.push_str(&format!(
            "steenrod {k} {} = {}\n",
            pres.generator(g).name,
            pres.format_element(value)
        ));
    }
    if let Some(d) = &a.differential {
        for (g, spec) in pres.generators().iter().enumerate() {
            let value = d.of_generator(g);
            if !value.is_zero() {
                out.push_str(&format!(
                    "differential {} = {}\n",
                    spec.name,
                    pres.format_element(value)
                ));
            }
        }
    }
    serialize_expect(&mut out, &a.expect);
    out
}

fn serialize_ring(r: &RingFile) -> String {
    let mut out = format!("ring {}\n", r.name);
    for (name, degree) in r.ring.vars() {
        out.push_str(&format!("generator {name} deg {degree}\n"));
    }
    for rel in r.ring.relations() {
        out.push_str(&format!("relation {}\n", r.ring.format_element(rel)));
    }
    for note in &r.steenrod {
        out.push_str(&format!(
            "steenrod {} {} = {}\n",
            note.k,
            note.gen,
            r.ring.format_element(&note.value)
        ));
    }
    serialize_expect(&mut out, &r.expect);
    out
}
