//! Line-oriented text format for quivers, relations, modules and chains.
//!
//! ```text
//! # a comment
//! quiver { 1 2 3 ; a:1->2, b:2->3 }
//! relations { a*b }
//! module M { dim 1 0 1 ; map a = [[1]] ; }
//! chain { step { I3 I2 I1 } ; step { M I1 } }
//! ```
//!
//! Parsing is purely syntactic; name resolution against an algebra happens in
//! [`crate::names`].

use crate::error::ParseError;
use crate::field::{parse_scalar, FieldKind, Scalar};
use crate::quiver::{Path, Quiver, Relation};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<RelationSpec>,
}

/// A relation as written: signed terms of (coefficient, arrow labels).
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSpec {
    pub terms: Vec<(String, Vec<String>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    pub name: String,
    pub dims: Vec<usize>,
    pub maps: Vec<(String, Vec<Vec<String>>)>,
}

/// Reference to a module inside a chain step: by name or by dimension vector.
#[derive(Debug, Clone, PartialEq)]
pub enum ModuleRef {
    Named(String),
    DimVector(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainSpec {
    pub steps: Vec<Vec<ModuleRef>>,
}

/// A parsed input file: at most one quiver, any number of named modules, at
/// most one chain.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub algebra: Option<AlgebraSpec>,
    pub modules: Vec<ModuleSpec>,
    pub chain: Option<ChainSpec>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Punct(char),
    Arrow, // ->
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let bytes: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c == '-' && i + 1 < bytes.len() && bytes[i + 1] == '>' {
                toks.push((Tok::Arrow, ln + 1, col));
                i += 2;
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((
                    Tok::Ident(bytes[start..i].iter().collect()),
                    ln + 1,
                    col,
                ));
            } else if "{};,:*+-=[]/".contains(c) {
                toks.push((Tok::Punct(c), ln + 1, col));
                i += 1;
            } else {
                return Err(ParseError::Syntax {
                    line: ln + 1,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or((0, 0))
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        match self.next() {
            Some(Tok::Punct(p)) if p == c => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err(format!("expected `{c}`")))
            }
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.err("expected an identifier"))
            }
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Punct(p)) if *p == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut lx = lex(text)?;
    let mut doc = Document::default();
    loop {
        if lx.eat_keyword("quiver") {
            if doc.algebra.is_some() {
                return Err(lx.err("more than one quiver block"));
            }
            doc.algebra = Some(parse_quiver_block(&mut lx)?);
        } else if lx.eat_keyword("relations") {
            let Some(alg) = doc.algebra.as_mut() else {
                return Err(lx.err("relations block before quiver block"));
            };
            alg.relations = parse_relations_block(&mut lx)?;
        } else if lx.eat_keyword("module") {
            doc.modules.push(parse_module_block(&mut lx)?);
        } else if lx.eat_keyword("chain") {
            if doc.chain.is_some() {
                return Err(lx.err("more than one chain block"));
            }
            doc.chain = Some(parse_chain_block(&mut lx)?);
        } else if lx.peek().is_none() {
            break;
        } else {
            return Err(lx.err("expected `quiver`, `relations`, `module` or `chain`"));
        }
    }
    Ok(doc)
}

fn parse_quiver_block(lx: &mut Lexer) -> Result<AlgebraSpec, ParseError> {
    lx.expect_punct('{')?;
    let mut vertices = Vec::new();
    loop {
        match lx.peek() {
            Some(Tok::Ident(_)) => vertices.push(lx.expect_ident()?),
            Some(Tok::Punct(',')) => {
                lx.next();
            }
            Some(Tok::Punct(';')) => {
                lx.next();
                break;
            }
            Some(Tok::Punct('}')) => break,
            _ => return Err(lx.err("expected a vertex label")),
        }
    }
    let mut arrows = Vec::new();
    loop {
        if lx.eat_punct('}') {
            break;
        }
        if lx.eat_punct(',') || lx.eat_punct(';') {
            continue;
        }
        let label = lx.expect_ident()?;
        lx.expect_punct(':')?;
        let src = lx.expect_ident()?;
        match lx.next() {
            Some(Tok::Arrow) => {}
            _ => {
                lx.pos = lx.pos.saturating_sub(1);
                return Err(lx.err("expected `->`"));
            }
        }
        let dst = lx.expect_ident()?;
        arrows.push((label, src, dst));
    }
    Ok(AlgebraSpec {
        vertices,
        arrows,
        relations: Vec::new(),
    })
}

fn parse_relations_block(lx: &mut Lexer) -> Result<Vec<RelationSpec>, ParseError> {
    lx.expect_punct('{')?;
    let mut rels = Vec::new();
    loop {
        if lx.eat_punct('}') {
            break;
        }
        if lx.eat_punct(';') || lx.eat_punct(',') {
            continue;
        }
        rels.push(parse_relation(lx)?);
    }
    Ok(rels)
}

/// One relation: `[-] [coef] path (("+"|"-") [coef] path)*`
fn parse_relation(lx: &mut Lexer) -> Result<RelationSpec, ParseError> {
    let mut terms = Vec::new();
    let mut sign = if lx.eat_punct('-') { -1i64 } else { 1 };
    loop {
        // optional leading coefficient: integer or integer/integer
        let mut coef = String::new();
        if let Some(Tok::Ident(s)) = lx.peek() {
            if s.chars().all(|c| c.is_ascii_digit()) {
                // lookahead: a bare number followed by '*'-path or ident
                let save = lx.pos;
                let num = lx.expect_ident()?;
                if lx.eat_punct('/') {
                    let den = lx.expect_ident()?;
                    coef = format!("{num}/{den}");
                } else if matches!(lx.peek(), Some(Tok::Ident(_))) {
                    coef = num;
                } else {
                    // the "number" was actually the first arrow label
                    lx.pos = save;
                }
            }
        }
        if coef.is_empty() {
            coef = "1".into();
        }
        let mut word = vec![lx.expect_ident()?];
        while lx.eat_punct('*') {
            word.push(lx.expect_ident()?);
        }
        let signed = if sign < 0 {
            format!("-{coef}")
        } else {
            coef
        };
        terms.push((signed, word));
        if lx.eat_punct('+') {
            sign = 1;
        } else if lx.eat_punct('-') {
            sign = -1;
        } else {
            break;
        }
    }
    Ok(RelationSpec { terms })
}

fn parse_module_block(lx: &mut Lexer) -> Result<ModuleSpec, ParseError> {
    let name = lx.expect_ident()?;
    lx.expect_punct('{')?;
    if !lx.eat_keyword("dim") {
        return Err(lx.err("module block must start with `dim`"));
    }
    let mut dims = Vec::new();
    while let Some(Tok::Ident(s)) = lx.peek() {
        let d: usize = s
            .parse()
            .map_err(|_| lx.err("expected a nonnegative integer dimension"))?;
        dims.push(d);
        lx.next();
    }
    lx.expect_punct(';')?;
    let mut maps = Vec::new();
    loop {
        if lx.eat_punct('}') {
            break;
        }
        if lx.eat_punct(';') {
            continue;
        }
        if !lx.eat_keyword("map") {
            return Err(lx.err("expected `map` or `}`"));
        }
        let label = lx.expect_ident()?;
        lx.expect_punct('=')?;
        maps.push((label, parse_matrix(lx)?));
    }
    Ok(ModuleSpec { name, dims, maps })
}

fn parse_scalar_token(lx: &mut Lexer) -> Result<String, ParseError> {
    let neg = lx.eat_punct('-');
    let num = lx.expect_ident()?;
    let text = if lx.eat_punct('/') {
        let den = lx.expect_ident()?;
        format!("{num}/{den}")
    } else {
        num
    };
    Ok(if neg { format!("-{text}") } else { text })
}

fn parse_matrix(lx: &mut Lexer) -> Result<Vec<Vec<String>>, ParseError> {
    lx.expect_punct('[')?;
    let mut rows = Vec::new();
    loop {
        if lx.eat_punct(']') {
            break;
        }
        if lx.eat_punct(',') {
            continue;
        }
        lx.expect_punct('[')?;
        let mut row = Vec::new();
        loop {
            if lx.eat_punct(']') {
                break;
            }
            if lx.eat_punct(',') {
                continue;
            }
            row.push(parse_scalar_token(lx)?);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_chain_block(lx: &mut Lexer) -> Result<ChainSpec, ParseError> {
    lx.expect_punct('{')?;
    let mut steps = Vec::new();
    loop {
        if lx.eat_punct('}') {
            break;
        }
        if lx.eat_punct(';') || lx.eat_punct(',') {
            continue;
        }
        if !lx.eat_keyword("step") {
            return Err(lx.err("expected `step` or `}`"));
        }
        lx.expect_punct('{')?;
        let mut members = Vec::new();
        loop {
            if lx.eat_punct('}') {
                break;
            }
            if lx.eat_punct('+') || lx.eat_punct(',') {
                continue;
            }
            if lx.eat_keyword("dim") {
                lx.expect_punct('[')?;
                let mut dims = Vec::new();
                loop {
                    if lx.eat_punct(']') {
                        break;
                    }
                    if lx.eat_punct(',') {
                        continue;
                    }
                    let s = lx.expect_ident()?;
                    dims.push(
                        s.parse()
                            .map_err(|_| lx.err("expected a dimension entry"))?,
                    );
                }
                members.push(ModuleRef::DimVector(dims));
            } else {
                members.push(ModuleRef::Named(lx.expect_ident()?));
            }
        }
        steps.push(members);
    }
    Ok(ChainSpec { steps })
}

/// Builds the quiver and validated relations from a parsed spec.
pub fn build_quiver(spec: &AlgebraSpec, kind: FieldKind) -> Result<(Quiver, Vec<Relation>), ParseError> {
    let quiver = Quiver::new(spec.vertices.clone(), spec.arrows.clone())?;
    let mut relations = Vec::new();
    for r in &spec.relations {
        let mut terms: Vec<(Scalar, Path)> = Vec::new();
        for (coef, word) in &r.terms {
            let c = parse_scalar(kind, coef)?;
            let mut path: Option<Path> = None;
            for label in word {
                let ai = quiver
                    .arrow(label)
                    .ok_or_else(|| ParseError::UnknownArrow(label.clone()))?;
                let step = Path::of_arrow(&quiver, ai);
                path = Some(match path {
                    None => step,
                    Some(p) => p.compose(&quiver, &step).ok_or_else(|| {
                        ParseError::BadRelation(format!(
                            "arrows do not compose in `{}`",
                            word.join("*")
                        ))
                    })?,
                });
            }
            terms.push((c, path.expect("nonempty word")));
        }
        let rel = Relation { terms };
        rel.validate(&quiver)?;
        relations.push(rel);
    }
    Ok((quiver, relations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_quiver() {
        let doc = parse_document("quiver {1 2; a:1->2}").unwrap();
        let alg = doc.algebra.unwrap();
        assert_eq!(alg.vertices, vec!["1", "2"]);
        assert_eq!(alg.arrows, vec![("a".into(), "1".into(), "2".into())]);
    }

    #[test]
    fn parses_relations_and_modules() {
        let text = r#"
            # Example with everything
            quiver { 1 2 3 4 ;
              a: 1 -> 2, b: 1 -> 3, c: 2 -> 4, d: 3 -> 4 }
            relations { a*c - b*d }
            module M13 { dim 1 0 1 0 ; map a = [[0]] ; }
            chain { step { M13 I1 } ; step { dim [0, 1, 0, 0] } }
        "#;
        let doc = parse_document(text).unwrap();
        let alg = doc.algebra.as_ref().unwrap();
        assert_eq!(alg.relations.len(), 1);
        assert_eq!(
            alg.relations[0].terms,
            vec![
                ("1".to_string(), vec!["a".to_string(), "c".to_string()]),
                ("-1".to_string(), vec!["b".to_string(), "d".to_string()]),
            ]
        );
        assert_eq!(doc.modules[0].name, "M13");
        assert_eq!(doc.modules[0].dims, vec![1, 0, 1, 0]);
        let chain = doc.chain.unwrap();
        assert_eq!(chain.steps.len(), 2);
        assert_eq!(
            chain.steps[1],
            vec![ModuleRef::DimVector(vec![0, 1, 0, 0])]
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_document("quiver {1 2; a:1->}").unwrap_err();
        match err {
            ParseError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert!(col > 0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_arrow_in_relation() {
        let doc = parse_document("quiver {1 2; a:1->2} relations { z*a }").unwrap();
        let err = build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals).unwrap_err();
        assert!(matches!(err, ParseError::UnknownArrow(_)));
    }

    #[test]
    fn relation_with_coefficients() {
        let doc =
            parse_document("quiver {1 2 3; a:1->2, b:2->3, c:1->2} relations { 2 a*b - 1/2 c*b }")
                .unwrap();
        let (_, rels) = build_quiver(doc.algebra.as_ref().unwrap(), FieldKind::Rationals).unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].terms.len(), 2);
    }
}
