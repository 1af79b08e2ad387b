//! The model file format.
//!
//! ```text
//! # comments run to the end of the line
//! poset P { elements: a b c ; leq: a<=b b<=c }
//! semiring Z2 { elements: 0 1 ; zero: 0 ; one: 1 ; add: 0 1 1 0 ; mul: 0 0 0 1 ; order: discrete }
//! monoid M { elements: 1 a ; unit: 1 ; mul: 1 a a 1 }
//! lattice L { poset: P }
//! ```
//!
//! Tables are row-major over the declared element order. `order:` is
//! optional and defaults to `discrete`; monoids accept it too.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use pfspec_core::algebra::{to_localic, FiniteCommMonoid, FiniteCommSemiring, LocalicMonoid, LocalicSemiring};
use pfspec_core::{FinitePoset, Suplattice};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("{line}:{col}: parse error: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("{line}:{col}: unknown {kind} `{name}`")]
    UnknownReference {
        line: usize,
        col: usize,
        kind: &'static str,
        name: String,
    },
    #[error("{line}:{col}: `{table}` table of `{object}` has {found} entries, expected {expected}")]
    NonTotalTable {
        line: usize,
        col: usize,
        object: String,
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("object `{object}`: {source}")]
    Invalid {
        object: String,
        #[source]
        source: pfspec_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderRef {
    Discrete,
    Poset(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDecl {
    pub name: String,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringDecl {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    pub add: Vec<String>,
    pub mul: Vec<String>,
    pub order: OrderRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDecl {
    pub name: String,
    pub elements: Vec<String>,
    pub unit: String,
    pub mul: Vec<String>,
    pub order: OrderRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDecl {
    pub name: String,
    pub poset: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Poset(PosetDecl),
    Semiring(SemiringDecl),
    Monoid(MonoidDecl),
    Lattice(LatticeDecl),
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Poset(d) => &d.name,
            Block::Semiring(d) => &d.name,
            Block::Monoid(d) => &d.name,
            Block::Lattice(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Block::Poset(_) => "poset",
            Block::Semiring(_) => "semiring",
            Block::Monoid(_) => "monoid",
            Block::Lattice(_) => "lattice",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModelFile {
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Semi,
    Colon,
    Leq,
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let mut word: Option<(String, usize, usize)> = None;
    let flush = |word: &mut Option<(String, usize, usize)>, out: &mut Vec<Token>| {
        if let Some((w, l, c)) = word.take() {
            out.push(Token {
                tok: Tok::Word(w),
                line: l,
                col: c,
            });
        }
    };
    while let Some(ch) = chars.next() {
        let (l, c) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
        let single = match ch {
            '{' => Some(Tok::Open),
            '}' => Some(Tok::Close),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            '<' if chars.peek() == Some(&'=') => {
                chars.next();
                col += 1;
                Some(Tok::Leq)
            }
            _ => None,
        };
        if let Some(tok) = single {
            flush(&mut word, &mut out);
            out.push(Token { tok, line: l, col: c });
        } else if ch == '#' {
            flush(&mut word, &mut out);
            for rest in chars.by_ref() {
                if rest == '\n' {
                    line += 1;
                    col = 1;
                    break;
                }
            }
        } else if ch.is_whitespace() {
            flush(&mut word, &mut out);
        } else {
            word.get_or_insert_with(|| (String::new(), l, c)).0.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

/// A field value with the position of every word, for error reporting.
struct Field {
    line: usize,
    col: usize,
    words: Vec<(String, usize, usize)>,
    /// For `leq:`, chains of words joined by `<=`.
    chains: Vec<Vec<(String, usize, usize)>>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

fn parse_error<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError::Parse {
        line,
        col,
        message: message.into(),
    })
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ModelError> {
        let (line, col) = self.here();
        match self.next() {
            Some(t) if t.tok == want => Ok(t),
            _ => parse_error(line, col, format!("expected {what}")),
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize, usize), ModelError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                tok: Tok::Word(w),
                line,
                col,
            }) => Ok((w, line, col)),
            _ => parse_error(line, col, format!("expected {what}")),
        }
    }

    /// `key: value…` up to the next `;` or `}`.
    fn field(&mut self) -> Result<(String, Field), ModelError> {
        let (key, line, col) = self.word("a field name")?;
        self.expect(Tok::Colon, "`:` after the field name")?;
        let mut words = Vec::new();
        let mut chains: Vec<Vec<(String, usize, usize)>> = Vec::new();
        let mut pending_leq = false;
        loop {
            let (l, c) = self.here();
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Word(w)) => {
                    self.pos += 1;
                    if pending_leq {
                        chains.last_mut().expect("a chain is open").push((w.clone(), l, c));
                        pending_leq = false;
                    } else {
                        chains.push(vec![(w.clone(), l, c)]);
                    }
                    words.push((w, l, c));
                }
                Some(Tok::Leq) => {
                    if key != "leq" {
                        return parse_error(l, c, "`<=` outside `leq:`");
                    }
                    if pending_leq || chains.is_empty() {
                        return parse_error(l, c, "`<=` needs an element on each side");
                    }
                    self.pos += 1;
                    pending_leq = true;
                }
                Some(Tok::Semi) | Some(Tok::Close) | None => {
                    if pending_leq {
                        return parse_error(l, c, "`<=` needs an element on each side");
                    }
                    break;
                }
                Some(_) => return parse_error(l, c, "unexpected token in field value"),
            }
        }
        Ok((key, Field { line, col, words, chains }))
    }

    fn block(&mut self) -> Result<(String, (usize, usize), String, Vec<(String, Field)>), ModelError> {
        let (kind, line, col) = self.word("a block kind")?;
        let (name, _, _) = self.word("a block name")?;
        self.expect(Tok::Open, "`{`")?;
        let mut fields: Vec<(String, Field)> = Vec::new();
        loop {
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Semi) => {
                    self.pos += 1;
                }
                None => {
                    let (l, c) = self.here();
                    return parse_error(l, c, format!("unterminated block `{name}`"));
                }
                _ => {
                    let (key, f) = self.field()?;
                    if fields.iter().any(|(k, _)| *k == key) {
                        return parse_error(f.line, f.col, format!("duplicate field `{key}`"));
                    }
                    fields.push((key, f));
                    match self.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Semi) | Some(Tok::Close) => {}
                        _ => {
                            let (l, c) = self.here();
                            return parse_error(l, c, "expected `;` or `}`");
                        }
                    }
                }
            }
        }
        Ok((kind, (line, col), name, fields))
    }
}

struct Fields {
    object: String,
    at: (usize, usize),
    fields: Vec<(String, Field)>,
}

impl Fields {
    fn check_keys(&self, allowed: &[&str]) -> Result<(), ModelError> {
        for (k, f) in &self.fields {
            if !allowed.contains(&k.as_str()) {
                return parse_error(f.line, f.col, format!("unknown field `{k}` in `{}`", self.object));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, f)| f)
    }

    fn required(&self, key: &str) -> Result<&Field, ModelError> {
        self.get(key).map_or_else(
            || parse_error(self.at.0, self.at.1, format!("`{}` is missing `{key}:`", self.object)),
            Ok,
        )
    }

    fn single(&self, key: &str) -> Result<String, ModelError> {
        let f = self.required(key)?;
        match f.words.as_slice() {
            [(w, _, _)] => Ok(w.clone()),
            _ => parse_error(f.line, f.col, format!("`{key}:` takes exactly one value")),
        }
    }

    fn elements(&self) -> Result<Vec<String>, ModelError> {
        let f = self.required("elements")?;
        let mut seen = std::collections::BTreeSet::new();
        for (w, l, c) in &f.words {
            if !seen.insert(w) {
                return parse_error(*l, *c, format!("duplicate element `{w}`"));
            }
        }
        Ok(f.words.iter().map(|(w, _, _)| w.clone()).collect())
    }

    fn member(&self, key: &str, elements: &[String]) -> Result<String, ModelError> {
        let v = self.single(key)?;
        let f = self.required(key)?;
        if !elements.contains(&v) {
            return Err(ModelError::UnknownReference {
                line: f.words[0].1,
                col: f.words[0].2,
                kind: "element",
                name: v,
            });
        }
        Ok(v)
    }

    fn table(&self, key: &'static str, elements: &[String]) -> Result<Vec<String>, ModelError> {
        let f = self.required(key)?;
        let n = elements.len();
        if f.words.len() != n * n {
            return Err(ModelError::NonTotalTable {
                line: f.line,
                col: f.col,
                object: self.object.clone(),
                table: key,
                expected: n * n,
                found: f.words.len(),
            });
        }
        for (w, l, c) in &f.words {
            if !elements.contains(w) {
                return Err(ModelError::UnknownReference {
                    line: *l,
                    col: *c,
                    kind: "element",
                    name: w.clone(),
                });
            }
        }
        Ok(f.words.iter().map(|(w, _, _)| w.clone()).collect())
    }

    fn order(&self) -> Result<(OrderRef, Option<(usize, usize)>), ModelError> {
        match self.get("order") {
            None => Ok((OrderRef::Discrete, None)),
            Some(f) => match f.words.as_slice() {
                [(w, ..)] if w == "discrete" => Ok((OrderRef::Discrete, None)),
                [(w, l, c)] => Ok((OrderRef::Poset(w.clone()), Some((*l, *c)))),
                _ => parse_error(f.line, f.col, "`order:` takes `discrete` or one poset name"),
            },
        }
    }
}

/// Parse and check a model: names are unique, references resolve and tables are total.
pub fn parse_str(src: &str) -> Result<ModelFile, ModelError> {
    let toks = tokenize(src);
    let end = src.lines().count().max(1);
    let mut p = Parser {
        toks,
        pos: 0,
        end: (end, src.lines().last().map_or(1, |l| l.chars().count() + 1)),
    };
    let mut blocks = Vec::new();
    // poset references to resolve once every block is known
    let mut refs: Vec<(String, usize, usize)> = Vec::new();
    while p.peek().is_some() {
        let (kind, at, name, fields) = p.block()?;
        if blocks.iter().any(|b: &Block| b.name() == name) {
            return parse_error(at.0, at.1, format!("duplicate object name `{name}`"));
        }
        let f = Fields {
            object: name.clone(),
            at,
            fields,
        };
        let block = match kind.as_str() {
            "poset" => {
                f.check_keys(&["elements", "leq"])?;
                let elements = f.elements()?;
                let mut leq = Vec::new();
                if let Some(field) = f.get("leq") {
                    for chain in &field.chains {
                        if chain.len() < 2 {
                            let (w, l, c) = &chain[0];
                            return parse_error(*l, *c, format!("`{w}` in `leq:` is not part of a `<=` pair"));
                        }
                        for (w, l, c) in chain {
                            if !elements.contains(w) {
                                return Err(ModelError::UnknownReference {
                                    line: *l,
                                    col: *c,
                                    kind: "element",
                                    name: w.clone(),
                                });
                            }
                        }
                        leq.extend(chain.windows(2).map(|w| (w[0].0.clone(), w[1].0.clone())));
                    }
                }
                Block::Poset(PosetDecl { name, elements, leq })
            }
            "semiring" => {
                f.check_keys(&["elements", "zero", "one", "add", "mul", "order"])?;
                let elements = f.elements()?;
                let (order, at) = f.order()?;
                if let (OrderRef::Poset(o), Some((l, c))) = (&order, at) {
                    refs.push((o.clone(), l, c));
                }
                Block::Semiring(SemiringDecl {
                    name,
                    zero: f.member("zero", &elements)?,
                    one: f.member("one", &elements)?,
                    add: f.table("add", &elements)?,
                    mul: f.table("mul", &elements)?,
                    elements,
                    order,
                })
            }
            "monoid" => {
                f.check_keys(&["elements", "unit", "mul", "order"])?;
                let elements = f.elements()?;
                let (order, at) = f.order()?;
                if let (OrderRef::Poset(o), Some((l, c))) = (&order, at) {
                    refs.push((o.clone(), l, c));
                }
                Block::Monoid(MonoidDecl {
                    name,
                    unit: f.member("unit", &elements)?,
                    mul: f.table("mul", &elements)?,
                    elements,
                    order,
                })
            }
            "lattice" => {
                f.check_keys(&["poset"])?;
                let poset = f.single("poset")?;
                let w = &f.required("poset")?.words[0];
                refs.push((poset.clone(), w.1, w.2));
                Block::Lattice(LatticeDecl { name, poset })
            }
            other => return parse_error(at.0, at.1, format!("unknown block kind `{other}`")),
        };
        blocks.push(block);
    }
    for (name, line, col) in refs {
        if !blocks.iter().any(|b| matches!(b, Block::Poset(d) if d.name == name)) {
            return Err(ModelError::UnknownReference {
                line,
                col,
                kind: "poset",
                name,
            });
        }
    }
    Ok(ModelFile { blocks })
}

pub fn parse_model(path: &Path) -> Result<ModelFile, ModelError> {
    let src = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&src)
}

fn write_table(f: &mut fmt::Formatter<'_>, key: &str, n: usize, t: &[String]) -> fmt::Result {
    writeln!(f, "  {key}:")?;
    for row in t.chunks(n.max(1)) {
        writeln!(f, "    {}", row.join(" "))?;
    }
    writeln!(f, "  ;")
}

fn write_order(f: &mut fmt::Formatter<'_>, o: &OrderRef) -> fmt::Result {
    match o {
        OrderRef::Discrete => writeln!(f, "  order: discrete"),
        OrderRef::Poset(p) => writeln!(f, "  order: {p}"),
    }
}

/// Canonical pretty-printing; parsing the output gives back the same model.
impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{} {} {{", b.kind(), b.name())?;
            match b {
                Block::Poset(d) => {
                    writeln!(f, "  elements: {} ;", d.elements.join(" "))?;
                    let pairs: Vec<String> = d.leq.iter().map(|(a, b)| format!("{a}<={b}")).collect();
                    writeln!(f, "  leq: {}", pairs.join(" "))?;
                }
                Block::Semiring(d) => {
                    writeln!(f, "  elements: {} ;", d.elements.join(" "))?;
                    writeln!(f, "  zero: {} ;", d.zero)?;
                    writeln!(f, "  one: {} ;", d.one)?;
                    write_table(f, "add", d.elements.len(), &d.add)?;
                    write_table(f, "mul", d.elements.len(), &d.mul)?;
                    write_order(f, &d.order)?;
                }
                Block::Monoid(d) => {
                    writeln!(f, "  elements: {} ;", d.elements.join(" "))?;
                    writeln!(f, "  unit: {} ;", d.unit)?;
                    write_table(f, "mul", d.elements.len(), &d.mul)?;
                    write_order(f, &d.order)?;
                }
                Block::Lattice(d) => writeln!(f, "  poset: {}", d.poset)?,
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

/// A model block turned into library structures.
#[derive(Clone, Debug)]
pub enum Object {
    Poset(FinitePoset),
    Semiring {
        algebra: FiniteCommSemiring,
        localic: LocalicSemiring,
    },
    Monoid {
        algebra: FiniteCommMonoid,
        localic: LocalicMonoid,
    },
    Lattice(Suplattice),
}

#[derive(Clone, Debug)]
pub struct NamedObject {
    pub name: String,
    pub object: Object,
}

fn index(elements: &[String], table: &[String]) -> Vec<usize> {
    table
        .iter()
        .map(|w| elements.iter().position(|e| e == w).expect("checked while parsing"))
        .collect()
}

impl ModelFile {
    pub fn block(&self, name: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.name() == name)
    }

    fn poset(&self, name: &str) -> Result<FinitePoset, ModelError> {
        match self.block(name) {
            Some(Block::Poset(d)) => {
                let pairs: Vec<(&str, &str)> = d.leq.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                FinitePoset::build(&d.elements.iter().map(String::as_str).collect::<Vec<_>>(), &pairs).map_err(|source| {
                    ModelError::Invalid {
                        object: d.name.clone(),
                        source,
                    }
                })
            }
            _ => Err(ModelError::UnknownReference {
                line: 0,
                col: 0,
                kind: "poset",
                name: name.to_string(),
            }),
        }
    }

    fn order_for(&self, o: &OrderRef, elements: &[String]) -> Result<Option<FinitePoset>, ModelError> {
        match o {
            OrderRef::Discrete => Ok(None),
            OrderRef::Poset(p) => {
                let poset = self.poset(p)?;
                // the order's labels must be the object's elements, in any order
                let perm: Option<Vec<usize>> = elements.iter().map(|e| poset.index_of(e)).collect();
                match perm {
                    Some(perm) if perm.len() == poset.len() => {
                        let pairs: Vec<(&str, &str)> = (0..elements.len())
                            .flat_map(|a| (0..elements.len()).map(move |b| (a, b)))
                            .filter(|&(a, b)| a != b && poset.leq(perm[a], perm[b]))
                            .map(|(a, b)| (elements[a].as_str(), elements[b].as_str()))
                            .collect();
                        let els: Vec<&str> = elements.iter().map(String::as_str).collect();
                        FinitePoset::build(&els, &pairs).map(Some).map_err(|source| ModelError::Invalid {
                            object: p.clone(),
                            source,
                        })
                    }
                    _ => Err(ModelError::Invalid {
                        object: p.clone(),
                        source: pfspec_core::Error::UnknownElement(format!("poset `{p}` does not have exactly the object's elements")),
                    }),
                }
            }
        }
    }

    pub fn resolve_block(&self, b: &Block) -> Result<NamedObject, ModelError> {
        let invalid = |source| ModelError::Invalid {
            object: b.name().to_string(),
            source,
        };
        let object = match b {
            Block::Poset(d) => Object::Poset(self.poset(&d.name)?),
            Block::Lattice(d) => Object::Lattice(Suplattice::new(self.poset(&d.poset)?).map_err(invalid)?),
            Block::Semiring(d) => {
                let pos = |w: &str| d.elements.iter().position(|e| e == w).expect("checked while parsing");
                let algebra = FiniteCommSemiring::new(
                    d.elements.clone(),
                    pos(&d.zero),
                    pos(&d.one),
                    index(&d.elements, &d.add),
                    index(&d.elements, &d.mul),
                )
                .map_err(invalid)?;
                let order = self.order_for(&d.order, &d.elements)?;
                let localic = to_localic(&algebra, order.as_ref()).map_err(invalid)?;
                Object::Semiring { algebra, localic }
            }
            Block::Monoid(d) => {
                let unit = d.elements.iter().position(|e| *e == d.unit).expect("checked while parsing");
                let algebra = FiniteCommMonoid::new(d.elements.clone(), unit, index(&d.elements, &d.mul)).map_err(invalid)?;
                let localic = match self.order_for(&d.order, &d.elements)? {
                    None => LocalicMonoid::discrete(&algebra),
                    Some(o) => LocalicMonoid::ordered(&algebra, &o),
                }
                .map_err(invalid)?;
                Object::Monoid { algebra, localic }
            }
        };
        Ok(NamedObject {
            name: b.name().to_string(),
            object,
        })
    }

    pub fn resolve(&self) -> Result<Vec<NamedObject>, ModelError> {
        self.blocks.iter().map(|b| self.resolve_block(b)).collect()
    }
}
