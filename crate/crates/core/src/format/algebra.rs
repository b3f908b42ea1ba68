//! Line-oriented algebra files.
//!
//! ```text
//! field 32003
//! vertices 2
//! arrow alpha 1 2
//! arrow beta 2 1
//! relation alpha.beta.alpha
//! relation 2*alpha.beta - beta.alpha     # must be parallel paths
//! nilpotency 4
//! ```
//!
//! Algebras given by structure constants use `basis <label> <left> <right>`
//! lines (vertex idempotents first, named `e<i>`) and
//! `product <x> <y> = <combination of labels>` lines. Products involving a
//! vertex idempotent are implied; unlisted products are zero.

use std::collections::HashMap;

use crate::algebra::{Algebra, Arrow, Quiver, Relation, Table};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A rational coefficient `numerator / denominator`.
pub type Coef = (i64, i64);

pub(crate) fn coef_scalar(field: Field, c: Coef) -> Result<Scalar> {
    field.from_ratio(c.0, c.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub field: Option<Field>,
    pub body: SpecBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecBody {
    Quiver { quiver: Quiver, relations: Vec<Vec<(Coef, Vec<usize>)>>, bound: usize },
    Table { basis: Vec<(String, usize, usize)>, products: Vec<(usize, usize, Vec<(Coef, usize)>)> },
}

impl AlgebraSpec {
    /// Builds the algebra; `field` overrides the file's `field` line.
    pub fn build(&self, field: Option<Field>) -> Result<Algebra> {
        let field = field.or(self.field).unwrap_or_default();
        match &self.body {
            SpecBody::Quiver { quiver, relations, bound } => {
                let mut rels = Vec::new();
                for r in relations {
                    let mut terms = Vec::new();
                    for (c, w) in r {
                        terms.push((coef_scalar(field, *c)?, w.clone()));
                    }
                    rels.push(Relation { terms });
                }
                Algebra::from_quiver(field, quiver.clone(), &rels, *bound)
            }
            SpecBody::Table { basis, products } => build_table(field, basis, products),
        }
    }
}

fn build_table(
    field: Field,
    basis: &[(String, usize, usize)],
    products: &[(usize, usize, Vec<(Coef, usize)>)],
) -> Result<Algebra> {
    let d = basis.len();
    let mut vertex_idem = Vec::new();
    for (i, (label, l, r)) in basis.iter().enumerate() {
        if *label == format!("e{}", l + 1) && l == r {
            if vertex_idem.len() != *l {
                return Err(Error::Precondition("vertex idempotents must come first, in order".into()));
            }
            vertex_idem.push(i);
        }
    }
    let n = vertex_idem.len();
    let mut mult: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d * d];
    for (i, (_, l, r)) in basis.iter().enumerate() {
        if *l >= n || *r >= n {
            return Err(Error::Precondition(format!("basis element {} has an unknown vertex", i + 1)));
        }
        mult[vertex_idem[*l] * d + i] = vec![(i, field.one())];
        mult[i * d + vertex_idem[*r]] = vec![(i, field.one())];
    }
    for (x, y, comb) in products {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (c, b) in comb {
            let e = acc.entry(*b).or_insert_with(|| field.zero());
            *e = &*e + &coef_scalar(field, *c)?;
        }
        let mut v: Vec<(usize, Scalar)> = acc.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        v.sort_by_key(|(i, _)| *i);
        mult[x * d + y] = v;
    }
    let mut unit = vec![field.zero(); d];
    for &i in &vertex_idem {
        unit[i] = field.one();
    }
    let table = Table::new(field, d, mult, unit);
    if !table.is_associative() {
        return Err(Error::Precondition("structure constants are not associative".into()));
    }
    Algebra::from_table(
        table,
        basis.iter().map(|b| b.0.clone()).collect(),
        basis.iter().map(|b| b.1).collect(),
        basis.iter().map(|b| b.2).collect(),
        vertex_idem,
    )
}

fn parse_coef(s: &str) -> Option<Coef> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.parse().ok()?;
            (d != 0).then_some(())?;
            Some((n.parse().ok()?, d))
        }
        None => Some((s.parse().ok()?, 1)),
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected {what}, got `{tok}`")))
}

/// Splits `2*a.b - c.d + e` into signed terms `(coefficient, word)`.
pub(crate) fn split_terms(s: &str, line: usize) -> Result<Vec<(Coef, String)>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let flush = |cur: &mut String, sign: i64, terms: &mut Vec<(Coef, String)>| -> Result<()> {
        let t = cur.trim().to_string();
        cur.clear();
        if t.is_empty() {
            return Err(Error::parse(line, "empty term"));
        }
        let (coef, word) = match t.split_once('*') {
            Some((c, w)) => {
                let c = parse_coef(c.trim()).ok_or_else(|| Error::parse(line, format!("bad coefficient `{c}`")))?;
                (c, w.trim().to_string())
            }
            None => {
                let mut it = t.split_whitespace();
                let first = it.next().unwrap();
                match parse_coef(first) {
                    Some(c) => match it.next() {
                        Some(w) => (c, w.to_string()),
                        None => (c, String::new()),
                    },
                    None => ((1, 1), first.to_string()),
                }
            }
        };
        if word.split_whitespace().count() > 1 {
            return Err(Error::parse(line, format!("malformed term `{t}`")));
        }
        terms.push(((sign * coef.0, coef.1), word));
        Ok(())
    };
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            flush(&mut cur, sign, &mut terms)?;
            sign = if ch == '-' { -1 } else { 1 };
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
    }
    flush(&mut cur, sign, &mut terms)?;
    Ok(terms)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraSpec> {
    let mut field = None;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<(Arrow, usize)> = Vec::new();
    let mut relations: Vec<(String, usize)> = Vec::new();
    let mut bound = None;
    let mut basis: Vec<(String, usize, usize)> = Vec::new();
    let mut products: Vec<(String, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match kw {
            "field" => {
                field = Some(Field::parse(rest).map_err(|e| Error::parse(ln, e.to_string()))?);
            }
            "vertices" => {
                if toks.len() != 1 {
                    return Err(Error::parse(ln, "usage: vertices <n>"));
                }
                vertices = Some(parse_usize(toks[0], ln, "a vertex count")?);
            }
            "arrow" => {
                if toks.len() != 3 {
                    return Err(Error::parse(ln, "usage: arrow <name> <source> <target>"));
                }
                let name = toks[0].to_string();
                if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                    return Err(Error::parse(ln, format!("invalid arrow name `{name}`")));
                }
                let s = parse_usize(toks[1], ln, "a vertex")?;
                let t = parse_usize(toks[2], ln, "a vertex")?;
                if s == 0 || t == 0 {
                    return Err(Error::parse(ln, "vertices are numbered from 1"));
                }
                arrows.push((Arrow { name, source: s - 1, target: t - 1 }, ln));
            }
            "relation" => relations.push((rest.to_string(), ln)),
            "nilpotency" => {
                if toks.len() != 1 {
                    return Err(Error::parse(ln, "usage: nilpotency <m>"));
                }
                bound = Some(parse_usize(toks[0], ln, "a bound")?);
            }
            "basis" => {
                if toks.len() != 3 {
                    return Err(Error::parse(ln, "usage: basis <label> <left> <right>"));
                }
                let l = parse_usize(toks[1], ln, "a vertex")?;
                let r = parse_usize(toks[2], ln, "a vertex")?;
                if l == 0 || r == 0 {
                    return Err(Error::parse(ln, "vertices are numbered from 1"));
                }
                if basis.iter().any(|b| b.0 == toks[0]) {
                    return Err(Error::parse(ln, format!("duplicate basis label `{}`", toks[0])));
                }
                basis.push((toks[0].to_string(), l - 1, r - 1));
            }
            "product" => products.push((rest.to_string(), ln)),
            _ => return Err(Error::parse(ln, format!("unknown keyword `{kw}`"))),
        }
    }

    if !basis.is_empty() {
        if !arrows.is_empty() || !relations.is_empty() {
            return Err(Error::parse(1, "cannot mix quiver and structure-constant descriptions"));
        }
        let index = |name: &str, ln: usize| {
            basis
                .iter()
                .position(|b| b.0 == name)
                .ok_or_else(|| Error::parse(ln, format!("unknown basis label `{name}`")))
        };
        let mut prods = Vec::new();
        for (p, ln) in &products {
            let (lhs, rhs) = p
                .split_once('=')
                .ok_or_else(|| Error::parse(*ln, "usage: product <x> <y> = <combination>"))?;
            let lt: Vec<&str> = lhs.split_whitespace().collect();
            if lt.len() != 2 {
                return Err(Error::parse(*ln, "usage: product <x> <y> = <combination>"));
            }
            let x = index(lt[0], *ln)?;
            let y = index(lt[1], *ln)?;
            let mut comb = Vec::new();
            if rhs.trim() != "0" {
                for (c, w) in split_terms(rhs, *ln)? {
                    comb.push((c, index(&w, *ln)?));
                }
            }
            prods.push((x, y, comb));
        }
        return Ok(AlgebraSpec { field, body: SpecBody::Table { basis, products: prods } });
    }

    let n = vertices.ok_or_else(|| Error::parse(1, "missing `vertices` line"))?;
    for (a, ln) in &arrows {
        if a.source >= n || a.target >= n {
            return Err(Error::parse(*ln, format!("arrow `{}` has an endpoint outside 1..{n}", a.name)));
        }
    }
    let quiver = Quiver::new(n, arrows.iter().map(|(a, _)| a.clone()).collect())
        .map_err(|e| Error::parse(arrows.last().map_or(1, |a| a.1), e.to_string()))?;
    let mut rels = Vec::new();
    for (r, ln) in &relations {
        let mut terms = Vec::new();
        for (c, word) in split_terms(r, *ln)? {
            let w = parse_word(&quiver, &word, *ln)?;
            if w.len() < 2 {
                return Err(Error::parse(*ln, format!("relation term `{word}` has length < 2")));
            }
            terms.push((c, w));
        }
        let check = Relation {
            terms: terms.iter().map(|(c, w)| (Field::Rational.from_ratio(c.0, c.1).unwrap(), w.clone())).collect(),
        };
        quiver.validate_relation(&check).map_err(|e| Error::parse(*ln, e.to_string()))?;
        rels.push(terms);
    }
    let bound = match bound {
        Some(b) => b,
        None if rels.is_empty() => n + 1,
        None => return Err(Error::parse(1, "missing `nilpotency` line")),
    };
    Ok(AlgebraSpec { field, body: SpecBody::Quiver { quiver, relations: rels, bound } })
}

fn parse_word(q: &Quiver, word: &str, ln: usize) -> Result<Vec<usize>> {
    let mut w = Vec::new();
    for name in word.split('.') {
        let a = q
            .arrow_index(name.trim())
            .ok_or_else(|| Error::parse(ln, format!("unknown arrow `{name}`")))?;
        w.push(a);
    }
    if q.word_endpoints(&w).is_none() {
        return Err(Error::parse(ln, format!("path `{word}` does not compose")));
    }
    Ok(w)
}

/// Emits structure constants in the `basis`/`product` form.
pub fn emit_structure_constants(alg: &Algebra) -> String {
    let mut out = String::new();
    out.push_str(&format!("field {}\n", alg.field().tag()));
    for b in 0..alg.dim() {
        out.push_str(&format!("basis {} {} {}\n", alg.label(b), alg.left(b) + 1, alg.right(b) + 1));
    }
    let t = alg.table();
    for x in 0..alg.dim() {
        for y in 0..alg.dim() {
            if alg.is_vertex_idempotent(x) || alg.is_vertex_idempotent(y) {
                continue;
            }
            let p = t.basis_product(x, y);
            if p.is_empty() {
                continue;
            }
            let rhs: Vec<String> = p
                .iter()
                .map(|(i, c)| {
                    if c.is_one() {
                        alg.label(*i).to_string()
                    } else {
                        format!("{c}*{}", alg.label(*i))
                    }
                })
                .collect();
            out.push_str(&format!("product {} {} = {}\n", alg.label(x), alg.label(y), rhs.join(" + ")));
        }
    }
    out
}
