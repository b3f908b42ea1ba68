//! Complex files.
//!
//! ```text
//! complex P
//! summand
//! deg 0 P1
//! summand
//! deg -1 P2
//! deg 0 P1
//! d[1,1] alpha
//! ```
//!
//! `deg <d> <terms>` lists the indecomposable projectives in degree `d`
//! (`P1^2 + P3` for multiplicities). `d[r,c] <expr>` sets the entry from
//! column `c` of the lowest degree to row `r` of the next; `d<k>[r,c]` names
//! the source degree `k` explicitly. Rows and columns count from 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{coef_scalar, split_terms, strip_comment};
use crate::algebra::Algebra;
use crate::complex::{AMatrix, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, Vector};

#[derive(Clone, Debug)]
pub struct ComplexFile {
    pub name: String,
    pub summands: Vec<ProjComplex>,
    pub total: ProjComplex,
}

/// Parses an element expression such as `2*alpha.beta - e1` over the algebra's labels.
pub fn parse_element(alg: &Algebra, expr: &str, line: usize) -> Result<Vector> {
    let f = alg.field();
    let mut x = alg.zero();
    if expr.trim() == "0" {
        return Ok(x);
    }
    for (c, word) in split_terms(expr, line)? {
        let c = coef_scalar(f, c).map_err(|e| Error::parse(line, e.to_string()))?;
        let mut term = alg.one();
        if !word.is_empty() {
            for factor in word.split('.') {
                let factor = factor.trim();
                let b = alg
                    .label_index(factor)
                    .ok_or_else(|| Error::parse(line, format!("unknown algebra element `{factor}`")))?;
                term = alg.mul(&term, &alg.basis_vector(b));
            }
        }
        linalg::axpy(&mut x, &c, &term);
    }
    Ok(x)
}

fn parse_terms(alg: &Algebra, s: &str, line: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(|c: char| c == '+' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let (p, mult) = match item.split_once('^') {
            Some((p, m)) => {
                let m: usize = m.parse().map_err(|_| Error::parse(line, format!("bad multiplicity in `{item}`")))?;
                (p, m)
            }
            None => (item, 1),
        };
        let v: usize = p
            .strip_prefix('P')
            .and_then(|n| n.parse().ok())
            .filter(|&v| v >= 1 && v <= alg.n_vertices())
            .ok_or_else(|| Error::parse(line, format!("unknown projective `{p}`")))?;
        out.extend(std::iter::repeat_n(v - 1, mult));
    }
    Ok(out)
}

struct Block {
    line: usize,
    terms: BTreeMap<i32, Vec<usize>>,
    entries: Vec<(Option<i32>, usize, usize, String, usize)>,
}

fn build_block(alg: &Arc<Algebra>, b: &Block) -> Result<ProjComplex> {
    if b.terms.is_empty() {
        return Err(Error::parse(b.line, "summand has no `deg` lines"));
    }
    let lo = *b.terms.keys().next().unwrap();
    let hi = *b.terms.keys().last().unwrap();
    let terms: Vec<Vec<usize>> = (lo..=hi).map(|i| b.terms.get(&i).cloned().unwrap_or_default()).collect();
    let mut diffs: Vec<AMatrix> =
        (lo..hi).map(|i| AMatrix::zero(alg, &terms[(i + 1 - lo) as usize], &terms[(i - lo) as usize])).collect();
    for (deg, r, c, expr, ln) in &b.entries {
        let k = deg.unwrap_or(lo);
        if k < lo || k >= hi {
            return Err(Error::parse(*ln, format!("no differential leaves degree {k}")));
        }
        let d = &mut diffs[(k - lo) as usize];
        if *r == 0 || *c == 0 || *r > d.n_rows() || *c > d.n_cols() {
            return Err(Error::parse(*ln, format!("entry [{r},{c}] outside a {}x{} differential", d.n_rows(), d.n_cols())));
        }
        let x = parse_element(alg, expr, *ln)?;
        let (v, u) = (d.rows[r - 1], d.cols[c - 1]);
        if !alg.in_corner(&x, v, u) {
            return Err(Error::parse(
                *ln,
                format!("entry [{r},{c}] = `{}` is not in e{} A e{}", expr.trim(), v + 1, u + 1),
            ));
        }
        d.set(r - 1, c - 1, x);
    }
    ProjComplex::new(alg.clone(), lo, terms, diffs).map_err(|e| Error::parse(b.line, e.to_string()))
}

pub fn parse_complex(text: &str, alg: &Arc<Algebra>) -> Result<ComplexFile> {
    let mut name = String::from("P");
    let mut blocks: Vec<Block> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "complex" => name = rest.to_string(),
            "summand" => blocks.push(Block { line: ln, terms: BTreeMap::new(), entries: Vec::new() }),
            "deg" => {
                let (d, ts) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let d: i32 = d.parse().map_err(|_| Error::parse(ln, format!("bad degree `{d}`")))?;
                let ts = parse_terms(alg, ts, ln)?;
                if blocks.is_empty() {
                    blocks.push(Block { line: ln, terms: BTreeMap::new(), entries: Vec::new() });
                }
                blocks.last_mut().unwrap().terms.entry(d).or_default().extend(ts);
            }
            _ if kw.starts_with('d') && line.contains('[') => {
                let open = line.find('[').unwrap();
                let close = line.find(']').ok_or_else(|| Error::parse(ln, "missing `]`"))?;
                let deg = &line[1..open];
                let deg = if deg.is_empty() {
                    None
                } else {
                    Some(deg.parse::<i32>().map_err(|_| Error::parse(ln, format!("bad degree `{deg}`")))?)
                };
                let idx = &line[open + 1..close];
                let (r, c) = idx.split_once(',').ok_or_else(|| Error::parse(ln, "usage: d[<row>,<col>] <expr>"))?;
                let r: usize = r.trim().parse().map_err(|_| Error::parse(ln, format!("bad row `{r}`")))?;
                let c: usize = c.trim().parse().map_err(|_| Error::parse(ln, format!("bad column `{c}`")))?;
                let expr = line[close + 1..].trim();
                if expr.is_empty() {
                    return Err(Error::parse(ln, "missing entry expression"));
                }
                let b = blocks.last_mut().ok_or_else(|| Error::parse(ln, "differential before any `deg` line"))?;
                b.entries.push((deg, r, c, expr.to_string(), ln));
            }
            _ => return Err(Error::parse(ln, format!("unknown keyword `{kw}`"))),
        }
    }
    let summands: Vec<ProjComplex> = blocks.iter().map(|b| build_block(alg, b)).collect::<Result<_>>()?;
    let total = ProjComplex::direct_sum(alg, &summands);
    Ok(ComplexFile { name, summands, total })
}

/// Emits a complex file with one `summand` block per complex.
pub fn emit_complex(name: &str, summands: &[ProjComplex]) -> String {
    let mut out = format!("complex {name}\n");
    for s in summands {
        out.push_str("summand\n");
        let alg = s.algebra();
        for (d, t) in s.terms() {
            out.push_str(&format!("deg {d} {}\n", format_terms(t)));
        }
        if let Some((lo, hi)) = s.support() {
            for i in lo..hi {
                let d = s.diff(i);
                for r in 0..d.n_rows() {
                    for c in 0..d.n_cols() {
                        let x = d.get(r, c);
                        if !linalg::is_zero_vector(x) {
                            out.push_str(&format!("d{i}[{},{}] {}\n", r + 1, c + 1, alg.format_element(x)));
                        }
                    }
                }
            }
        }
    }
    out
}

fn format_terms(t: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let mut j = i;
        while j < t.len() && t[j] == t[i] {
            j += 1;
        }
        let m = j - i;
        parts.push(if m == 1 { format!("P{}", t[i] + 1) } else { format!("P{}^{m}", t[i] + 1) });
        i = j;
    }
    parts.join(" + ")
}
