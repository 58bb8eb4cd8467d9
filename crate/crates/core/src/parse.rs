//! Line-oriented text formats and the element / functional expression syntax.
//!
//! Every format ignores blank lines and everything after `#`. Errors carry
//! 1-based line and column numbers.

use std::collections::BTreeMap;

use crate::dual::Functional;
use crate::error::{Error, Result};
use crate::finite_dual::{StructuredAlgebra, Vector};
use crate::incidence::{IncidenceElement, Interval, Poset};
use crate::linalg::{Field, Matrix, Scalar, SparseVector};
use crate::quiver::{find_simple_cycle, FamilyKind, Path, Quiver, QuiverFamily};
use crate::representations::Representation;
use crate::{Element, Tensor};

/// A parsed quiver file: either explicit declarations or a built-in family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverInput {
    Finite(Quiver),
    Family {
        family: QuiverFamily,
        truncate: Option<usize>,
    },
}

impl QuiverInput {
    /// The explicit quiver, or the family truncated at `truncate` (falling
    /// back to `default_truncation`).
    pub fn materialize(&self, default_truncation: usize) -> Quiver {
        match self {
            QuiverInput::Finite(q) => q.clone(),
            QuiverInput::Family { family, truncate } => family.truncate(truncate.unwrap_or(default_truncation)),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<Token<'_>> = body
            .char_indices()
            .filter(|&(j, c)| !c.is_whitespace() && (j == 0 || body[..j].ends_with(char::is_whitespace)))
            .map(|(j, _)| {
                let len = body[j..].find(char::is_whitespace).unwrap_or(body.len() - j);
                Token {
                    text: &body[j..j + len],
                    column: body[..j].chars().count() + 1,
                }
            })
            .collect();
        (!tokens.is_empty()).then_some((i + 1, body, tokens))
    })
}

fn arity(line: usize, tokens: &[Token<'_>], n: usize) -> Result<()> {
    if tokens.len() != n {
        let column = tokens.get(n).map_or(tokens[tokens.len() - 1].column, |t| t.column);
        return Err(Error::parse(
            line,
            column,
            format!("`{}` takes {} argument(s)", tokens[0].text, n - 1),
        ));
    }
    Ok(())
}

fn at(line: usize, column: usize, e: Error) -> Error {
    match e {
        Error::Parse {
            line: 1,
            column: c,
            message,
        } => Error::parse(line, column + c - 1, message),
        Error::Parse { .. } => e,
        other => Error::parse(line, column, other.to_string()),
    }
}

fn number(line: usize, tok: &Token<'_>) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| Error::parse(line, tok.column, format!("expected a nonnegative integer, found `{}`", tok.text)))
}

fn header<'a>(
    it: &mut impl Iterator<Item = (usize, &'a str, Vec<Token<'a>>)>,
    expected: &[&str],
) -> Result<(usize, Vec<Token<'a>>)> {
    match it.next() {
        Some((l, _, toks)) if expected.contains(&toks[0].text) => Ok((l, toks)),
        Some((l, _, toks)) => Err(Error::parse(
            l,
            toks[0].column,
            format!("expected `{}` header, found `{}`", expected.join("` or `"), toks[0].text),
        )),
        None => Err(Error::parse(1, 1, format!("empty input, expected `{}` header", expected[0]))),
    }
}

/// `quiver` / `vertex <label>` / `arrow <label> <src> <tgt>`, or
/// `family <kind>` with an optional `truncate <L>` line.
pub fn parse_quiver_input(text: &str) -> Result<QuiverInput> {
    let mut it = lines(text);
    let (l, toks) = header(&mut it, &["quiver", "family"])?;
    if toks[0].text == "family" {
        arity(l, &toks, 2)?;
        let kind: FamilyKind = toks[1].text.parse().map_err(|e| at(l, toks[1].column, e))?;
        let mut truncate = None;
        for (l, _, toks) in it {
            match toks[0].text {
                "truncate" if truncate.is_none() => {
                    arity(l, &toks, 2)?;
                    truncate = Some(number(l, &toks[1])?);
                }
                other => return Err(Error::parse(l, toks[0].column, format!("unexpected `{other}` in a family file"))),
            }
        }
        return Ok(QuiverInput::Family {
            family: QuiverFamily::new(kind),
            truncate,
        });
    }
    arity(l, &toks, 1)?;
    let mut q = Quiver::new();
    for (l, _, toks) in it {
        match toks[0].text {
            "vertex" => {
                arity(l, &toks, 2)?;
                q.add_vertex(toks[1].text).map_err(|e| at(l, toks[1].column, e))?;
            }
            "arrow" => {
                arity(l, &toks, 4)?;
                if let Err(e) = q.vertex_id(toks[2].text) {
                    return Err(at(l, toks[2].column, e));
                }
                if let Err(e) = q.vertex_id(toks[3].text) {
                    return Err(at(l, toks[3].column, e));
                }
                q.add_arrow(toks[1].text, toks[2].text, toks[3].text)
                    .map_err(|e| at(l, toks[1].column, e))?;
            }
            other => return Err(Error::parse(l, toks[0].column, format!("unknown declaration `{other}`"))),
        }
    }
    Ok(q.into())
}

impl From<Quiver> for QuiverInput {
    fn from(q: Quiver) -> Self {
        QuiverInput::Finite(q)
    }
}

/// Like [`parse_quiver_input`] but rejects family files.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    match parse_quiver_input(text)? {
        QuiverInput::Finite(q) => Ok(q),
        QuiverInput::Family { .. } => Err(Error::parse(1, 1, "expected an explicit quiver, found a family")),
    }
}

/// `poset` / `element <label>` / `cover <a> <b>` (meaning `a < b`).
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let (l, toks) = header(&mut it, &["poset"])?;
    arity(l, &toks, 1)?;
    let mut labels: Vec<String> = Vec::new();
    let mut covers = Vec::new();
    let mut last = l;
    for (l, _, toks) in it {
        last = l;
        match toks[0].text {
            "element" => {
                arity(l, &toks, 2)?;
                if labels.iter().any(|x| x == toks[1].text) {
                    return Err(Error::parse(l, toks[1].column, format!("duplicate element `{}`", toks[1].text)));
                }
                labels.push(toks[1].text.to_string());
            }
            "cover" => {
                arity(l, &toks, 3)?;
                let find = |t: &Token<'_>| {
                    labels
                        .iter()
                        .position(|x| x == t.text)
                        .ok_or_else(|| Error::parse(l, t.column, format!("unknown element `{}`", t.text)))
                };
                covers.push((find(&toks[1])?, find(&toks[2])?));
            }
            other => return Err(Error::parse(l, toks[0].column, format!("unknown declaration `{other}`"))),
        }
    }
    Poset::from_covers(labels, &covers).map_err(|e| at(last, 1, e))
}

/// `rep` / `dim <vertex> <n>` / `map <arrow> <rows>`, rows separated by `;`
/// and entries by whitespace. Missing dimensions are 0, missing maps are 0.
pub fn parse_representation(text: &str, quiver: &Quiver, field: Field) -> Result<Representation> {
    let mut it = lines(text);
    let (l, toks) = header(&mut it, &["rep"])?;
    arity(l, &toks, 1)?;
    let mut dims = vec![0usize; quiver.num_vertices()];
    let mut maps: Vec<Option<(usize, &str, usize)>> = vec![None; quiver.num_arrows()];
    for (l, body, toks) in it {
        match toks[0].text {
            "dim" => {
                arity(l, &toks, 3)?;
                let v = quiver.vertex_id(toks[1].text).map_err(|e| at(l, toks[1].column, e))?;
                dims[v] = number(l, &toks[2])?;
            }
            "map" => {
                if toks.len() < 2 {
                    return Err(Error::parse(l, toks[0].column, "`map` needs an arrow label"));
                }
                let a = quiver.arrow_id(toks[1].text).map_err(|e| at(l, toks[1].column, e))?;
                if maps[a].is_some() {
                    return Err(Error::parse(l, toks[1].column, format!("map for `{}` given twice", toks[1].text)));
                }
                let start = toks[1].column - 1 + toks[1].text.chars().count();
                let offset: usize = body.char_indices().nth(start).map_or(body.len(), |(b, _)| b);
                maps[a] = Some((l, &body[offset..], start + 1));
            }
            other => return Err(Error::parse(l, toks[0].column, format!("unknown declaration `{other}`"))),
        }
    }
    let mut matrices = Vec::with_capacity(quiver.num_arrows());
    for (a, entry) in maps.into_iter().enumerate() {
        let arrow = quiver.arrow(a);
        let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
        match entry {
            None => matrices.push(Matrix::zeros(rows, cols)),
            Some((l, body, column)) => matrices.push(parse_matrix(body, rows, cols, field, l, column)?),
        }
    }
    Representation::new(quiver.clone(), dims, matrices)
}

fn parse_matrix(body: &str, rows: usize, cols: usize, field: Field, line: usize, column: usize) -> Result<Matrix> {
    if body.trim().is_empty() || rows * cols == 0 && !body.chars().any(|c| c.is_ascii_alphanumeric()) {
        if rows * cols == 0 {
            return Ok(Matrix::zeros(rows, cols));
        }
        return Err(Error::parse(line, column, format!("expected a {rows}x{cols} matrix")));
    }
    let mut m = Matrix::zeros(rows, cols);
    let mut col = column;
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != rows {
        return Err(Error::parse(line, column, format!("expected {rows} row(s), found {}", parts.len())));
    }
    for (i, part) in parts.iter().enumerate() {
        let entries: Vec<(usize, &str)> = part
            .split_whitespace()
            .map(|e| (col + part.find(e).unwrap_or(0), e))
            .collect();
        if entries.len() != cols {
            return Err(Error::parse(
                line,
                col,
                format!("row {} has {} entries, expected {cols}", i + 1, entries.len()),
            ));
        }
        for (j, (c, e)) in entries.into_iter().enumerate() {
            m.set(i, j, field.parse_scalar(e).map_err(|err| at(line, c, err))?);
        }
        col += part.chars().count() + 1;
    }
    Ok(m)
}

/// `algebra` / `basis <labels…>` / `idempotents <labels…>` or
/// `idempotent <combination>` / `mul <a> <b> = <combination>`.
pub fn parse_algebra(text: &str, field: Field) -> Result<StructuredAlgebra> {
    let mut it = lines(text);
    let (l, toks) = header(&mut it, &["algebra"])?;
    arity(l, &toks, 1)?;
    let mut labels: Vec<String> = Vec::new();
    let mut products = BTreeMap::new();
    let mut idempotents = Vec::new();
    let mut last = l;
    for (l, body, toks) in it {
        last = l;
        let index = |t: &Token<'_>, labels: &[String]| {
            labels
                .iter()
                .position(|x| x == t.text)
                .ok_or_else(|| Error::parse(l, t.column, format!("unknown basis element `{}`", t.text)))
        };
        let rest = |t: &Token<'_>| {
            let start = t.column - 1 + t.text.chars().count();
            let offset = body.char_indices().nth(start).map_or(body.len(), |(b, _)| b);
            (&body[offset..], start + 1)
        };
        match toks[0].text {
            "basis" => {
                if !labels.is_empty() {
                    return Err(Error::parse(l, toks[0].column, "basis declared twice"));
                }
                for t in &toks[1..] {
                    if labels.iter().any(|x| x == t.text) {
                        return Err(Error::parse(l, t.column, format!("duplicate basis element `{}`", t.text)));
                    }
                    labels.push(t.text.to_string());
                }
            }
            "idempotents" => {
                for t in &toks[1..] {
                    idempotents.push(Vector::unit(index(t, &labels)?));
                }
            }
            "idempotent" => {
                let (expr, column) = rest(&toks[0]);
                let v = parse_combination(expr, field, |s| lookup(&labels, s)).map_err(|e| at(l, column, e))?;
                idempotents.push(v);
            }
            "mul" => {
                if toks.len() < 4 || toks[3].text != "=" {
                    return Err(Error::parse(l, toks[0].column, "expected `mul <a> <b> = <combination>`"));
                }
                let key = (index(&toks[1], &labels)?, index(&toks[2], &labels)?);
                let (expr, column) = rest(&toks[3]);
                let v = parse_combination(expr, field, |s| lookup(&labels, s)).map_err(|e| at(l, column, e))?;
                if products.insert(key, v).is_some() {
                    return Err(Error::parse(l, toks[1].column, "product given twice"));
                }
            }
            other => return Err(Error::parse(l, toks[0].column, format!("unknown declaration `{other}`"))),
        }
    }
    StructuredAlgebra::new(labels, products, idempotents).map_err(|e| at(last, 1, e))
}

fn lookup(labels: &[String], s: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == s)
        .ok_or_else(|| Error::LabelOutsideBasis(s.to_string()))
}

/// A cursor over one expression; columns are 1-based.
struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            text,
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(1, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(b, _)| b)
    }

    /// Consumes up to (not including) the first char in `stop`.
    fn until(&mut self, stop: &[char]) -> (usize, &'a str) {
        let (col, start) = (self.pos, self.offset());
        while self.peek().is_some_and(|c| !stop.contains(&c)) {
            self.pos += 1;
        }
        (col, &self.text[start..self.offset()])
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.chars.len()
    }

    /// An unsigned rational `n` or `n/d`, if one starts here.
    fn scalar(&mut self, field: Field) -> Result<Option<Scalar>> {
        self.skip_ws();
        let (col, start) = (self.pos, self.offset());
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        if self.pos == col {
            return Ok(None);
        }
        let s = &self.text[start..self.offset()];
        field.parse_scalar(s).map(Some).map_err(|_| Error::parse(1, col + 1, format!("invalid scalar `{s}`")))
    }

    fn signed_scalar(&mut self, field: Field) -> Result<Scalar> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let s = self.scalar(field)?.ok_or_else(|| self.err("expected a number"))?;
        Ok(if negative { -s } else { s })
    }
}

/// `c1*[label1] ± c2*[label2] …`, or `0`. Labels between brackets are
/// resolved by `resolve`; coefficients are optional.
pub fn parse_combination<L: Ord + Clone>(
    text: &str,
    field: Field,
    mut resolve: impl FnMut(&str) -> Result<L>,
) -> Result<SparseVector<L>> {
    let mut cur = Cursor::new(text);
    let mut out = SparseVector::zero();
    if cur.at_end() {
        return Err(cur.err("expected a linear combination"));
    }
    let mut first = true;
    while !cur.at_end() {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(cur.err("expected `+` or `-` between terms"));
        };
        let negative = negative ^ cur.eat('-');
        let coeff = cur.scalar(field)?;
        if let Some(c) = &coeff {
            if c.is_zero() && first && cur.at_end() {
                return Ok(out);
            }
            cur.eat('*');
        }
        cur.expect('[')?;
        let (col, label) = cur.until(&[']']);
        let label = label.trim();
        let resolved = resolve(label).map_err(|e| match e {
            Error::Parse { .. } => at(1, col + 1, e),
            other => Error::parse(1, col + 1, other.to_string()),
        })?;
        cur.expect(']')?;
        let mut c = coeff.unwrap_or_else(|| field.from_i64(1));
        if negative {
            c = -c;
        }
        out.add_term(resolved, c);
        first = false;
    }
    Ok(out)
}

/// `3*[x.y] - 1/2*[a]`: a combination of paths named by vertex labels or
/// dot-separated arrow labels.
pub fn parse_element(text: &str, quiver: &Quiver, field: Field) -> Result<Element> {
    parse_combination(text, field, |s| quiver.parse_path(s))
}

/// `2*[x|y] + [u|b]`: a combination of pure tensors of paths, the left path
/// in `left` and the right one in `right`.
pub fn parse_tensor(text: &str, left: &Quiver, right: &Quiver, field: Field) -> Result<Tensor> {
    parse_combination(text, field, |s| {
        let (p, q) = s
            .split_once('|')
            .ok_or_else(|| Error::Unsupported(format!("expected `p|q`, found `{s}`")))?;
        Ok((left.parse_path(p)?, right.parse_path(q)?))
    })
}

/// `[x,y] - 2*[x,x]`: a combination of intervals `x ≤ y`.
pub fn parse_incidence_element(text: &str, poset: &Poset, field: Field) -> Result<IncidenceElement> {
    parse_combination(text, field, |s| -> Result<Interval> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Unsupported(format!("expected `x,y`, found `{s}`")))?;
        let (x, y) = (poset.index_of(x.trim())?, poset.index_of(y.trim())?);
        if !poset.leq(x, y) {
            return Err(Error::NotAPartialOrder(format!(
                "`{}` is not below `{}`",
                poset.label(x),
                poset.label(y)
            )));
        }
        Ok((x, y))
    })
}

/// Functional syntax:
///
/// - `dual{[p]:3, [q]:-1}`: finitely supported
/// - `rule:gamma`: 1 on every path
/// - `rule:eval(λ)` or `rule:eval(λ, c)`: `λ^len` along the cycle `c`
///   (default: the shortest cycle of the quiver)
/// - `rule:starts-at(v)`: 1 on paths starting at `v`
/// - `rule:prefix(p)`: 1 on paths beginning with `p`
pub fn parse_functional(text: &str, quiver: &Quiver, field: Field) -> Result<Functional> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let (col, word) = cur.until(&['{', '(', ' ', '\t']);
    let word = word.trim();
    let f = match word {
        "dual" => {
            cur.expect('{')?;
            let mut f = SparseVector::zero();
            if !cur.eat('}') {
                loop {
                    cur.expect('[')?;
                    let (pc, label) = cur.until(&[']']);
                    let p = quiver.parse_path(label).map_err(|e| Error::parse(1, pc + 1, e.to_string()))?;
                    cur.expect(']')?;
                    cur.expect(':')?;
                    f.add_term(p, cur.signed_scalar(field)?);
                    if cur.eat('}') {
                        break;
                    }
                    cur.expect(',')?;
                }
            }
            Functional::Finite(f)
        }
        "rule:gamma" => Functional::gamma(),
        "rule:eval" => {
            cur.expect('(')?;
            let lambda = cur.signed_scalar(field)?;
            let cycle = if cur.eat(',') {
                cur.skip_ws();
                let (pc, label) = cur.until(&[')']);
                let p = quiver.parse_path(label).map_err(|e| Error::parse(1, pc + 1, e.to_string()))?;
                if p.is_vertex() || p.source() != p.target() {
                    return Err(Error::parse(1, pc + 1, format!("`{}` is not a closed path", label.trim())));
                }
                p
            } else {
                find_simple_cycle(quiver).ok_or_else(|| Error::parse(1, col + 1, Error::NoCycle.to_string()))?
            };
            cur.expect(')')?;
            Functional::eval(lambda, cycle)
        }
        "rule:starts-at" | "rule:prefix" => {
            cur.expect('(')?;
            cur.skip_ws();
            let (pc, label) = cur.until(&[')']);
            let label = label.trim();
            let f = if word == "rule:starts-at" {
                Functional::starts_at(quiver.vertex_id(label).map_err(|e| Error::parse(1, pc + 1, e.to_string()))?)
            } else {
                Functional::has_prefix(quiver.parse_path(label).map_err(|e| Error::parse(1, pc + 1, e.to_string()))?)
            };
            cur.expect(')')?;
            f
        }
        _ => return Err(Error::parse(1, col + 1, format!("unknown functional `{word}`"))),
    };
    if !cur.at_end() {
        return Err(cur.err("trailing input after functional"));
    }
    Ok(f)
}

/// Inverse of [`parse_quiver`].
pub fn quiver_to_text(q: &Quiver) -> String {
    let mut out = String::from("quiver\n");
    for v in q.vertex_labels() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.label,
            q.vertex_label(a.source),
            q.vertex_label(a.target)
        ));
    }
    out
}

/// Inverse of [`parse_poset`], listing cover relations.
pub fn poset_to_text(p: &Poset) -> String {
    let mut out = String::from("poset\n");
    for l in p.labels() {
        out.push_str(&format!("element {l}\n"));
    }
    for (x, y) in p.covers() {
        out.push_str(&format!("cover {} {}\n", p.label(x), p.label(y)));
    }
    out
}

/// Inverse of [`parse_algebra`].
pub fn algebra_to_text(a: &StructuredAlgebra) -> String {
    let mut out = format!("algebra\nbasis {}\n", a.labels().join(" "));
    for e in a.idempotents() {
        out.push_str(&format!("idempotent {}\n", a.format_vector(e)));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.basis_product(i, j);
            if !v.is_zero() {
                out.push_str(&format!("mul {} {} = {}\n", a.labels()[i], a.labels()[j], a.format_vector(v)));
            }
        }
    }
    out
}

/// The path named `text` (a vertex label or dot-joined arrows).
pub fn parse_path(text: &str, quiver: &Quiver) -> Result<Path> {
    quiver.parse_path(text).map_err(|e| Error::parse(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = "quiver\n# a path of length two\nvertex u\nvertex v\nvertex w\narrow x u v\narrow y v w  # second\n";

    fn parse_err(r: Result<impl std::fmt::Debug>) -> (usize, usize) {
        match r {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn quiver_round_trip() {
        let q = parse_quiver(LINE).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert_eq!(q.num_arrows(), 2);
        assert_eq!(parse_quiver(&quiver_to_text(&q)).unwrap(), q);
    }

    #[test]
    fn quiver_errors_have_positions() {
        assert_eq!(parse_err(parse_quiver("quiver\nvertex u\narrow x u q\n")), (3, 11));
        assert_eq!(parse_err(parse_quiver("quiver\nvertex u\nvertex u\n")), (3, 8));
        assert_eq!(parse_err(parse_quiver("quiver\n  edge a b\n")), (2, 3));
        assert_eq!(parse_err(parse_quiver("poset\n")), (1, 1));
        assert_eq!(parse_err(parse_quiver("quiver\nvertex\n")), (2, 1));
    }

    #[test]
    fn family_files() {
        let f = parse_quiver_input("family cycle:3\ntruncate 4\n").unwrap();
        assert_eq!(
            f,
            QuiverInput::Family {
                family: QuiverFamily::new(FamilyKind::Cycle(3)),
                truncate: Some(4)
            }
        );
        assert_eq!(f.materialize(0).num_vertices(), 3);
        assert_eq!(parse_err(parse_quiver_input("family cycle:0\n")), (1, 8));
        assert_eq!(parse_err(parse_quiver_input("family loop\ntruncate x\n")), (2, 10));
    }

    #[test]
    fn elements() {
        let q = parse_quiver(LINE).unwrap();
        let e = parse_element("3*[x.y] - 1/2*[x] + [u]", &q, Field::Rational).unwrap();
        assert_eq!(q.format_element(&e), "[u] - 1/2*[x] + 3*[x.y]");
        assert!(parse_element("0", &q, Field::Rational).unwrap().is_zero());
        assert_eq!(parse_element("[x] - [x]", &q, Field::Rational).unwrap().len(), 0);
        assert_eq!(parse_err(parse_element("[x] [y]", &q, Field::Rational)), (1, 5));
        assert_eq!(parse_err(parse_element("2*[y.x]", &q, Field::Rational)), (1, 4));
        assert_eq!(parse_err(parse_element("2*[x", &q, Field::Rational)), (1, 5));
        let e = parse_element("-3*[x]", &q, Field::Prime(5)).unwrap();
        assert_eq!(e.get(&q.parse_path("x").unwrap()), Field::Prime(5).from_i64(2));
    }

    #[test]
    fn functionals() {
        let q = parse_quiver(LINE).unwrap();
        let f = parse_functional("dual{[x.y]:3, [u]:-1/2}", &q, Field::Rational).unwrap();
        assert_eq!(f.value(&q.parse_path("x.y").unwrap()), Scalar::from(3));
        assert_eq!(f.value(&q.parse_path("y").unwrap()), Scalar::zero());
        assert_eq!(parse_functional("dual{}", &q, Field::Rational).unwrap(), Functional::zero());
        assert_eq!(parse_functional(" rule:gamma ", &q, Field::Rational).unwrap(), Functional::gamma());
        assert_eq!(
            parse_functional("rule:starts-at(v)", &q, Field::Rational).unwrap(),
            Functional::starts_at(1)
        );
        assert_eq!(
            parse_functional("rule:prefix(x)", &q, Field::Rational).unwrap(),
            Functional::has_prefix(q.parse_path("x").unwrap())
        );
        assert_eq!(parse_err(parse_functional("rule:eval(2)", &q, Field::Rational)), (1, 1));
        assert_eq!(parse_err(parse_functional("dual{[x]:}", &q, Field::Rational)), (1, 10));
        assert_eq!(parse_err(parse_functional("rule:delta", &q, Field::Rational)), (1, 1));

        let lp = QuiverFamily::new(FamilyKind::Loop).truncate(0);
        let e = parse_functional("rule:eval(2)", &lp, Field::Rational).unwrap();
        let xx = lp.parse_path("x.x").unwrap();
        assert_eq!(e.value(&xx), Scalar::from(4));
        assert_eq!(parse_functional("rule:eval(2, x)", &lp, Field::Rational).unwrap(), e);
    }

    #[test]
    fn posets() {
        let p = parse_poset("poset\nelement 0\nelement a\nelement b\nelement 1\ncover 0 a\ncover 0 b\ncover a 1\ncover b 1\n")
            .unwrap();
        assert_eq!(p.canonical_form(), Poset::diamond().canonical_form());
        assert_eq!(parse_poset(&poset_to_text(&p)).unwrap(), p);
        assert_eq!(parse_err(parse_poset("poset\nelement a\ncover a c\n")), (3, 9));
        assert!(matches!(
            parse_poset("poset\nelement a\nelement b\ncover a b\ncover b a\n"),
            Err(Error::Parse { line: 5, .. })
        ));
        let e = parse_incidence_element("[0,1] - 2*[a,a]", &p, Field::Rational).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(parse_err(parse_incidence_element("[a,b]", &p, Field::Rational)), (1, 2));
    }

    #[test]
    fn representations() {
        let q = parse_quiver(LINE).unwrap();
        let r = parse_representation("rep\ndim u 2\ndim v 1\nmap x 1 -1/2\n", &q, Field::Rational).unwrap();
        assert_eq!(r.dims(), &[2, 1, 0]);
        assert_eq!(r.map(0).get(0, 1), &Scalar::ratio(-1, 2));
        assert_eq!(r.map(1).nrows(), 0);
        assert_eq!(parse_representation(&r.to_text(), &q, Field::Rational).unwrap(), r);
        let square = parse_representation("rep\ndim u 2\ndim v 2\nmap x 1 2 ; 3 4\n", &q, Field::Rational).unwrap();
        assert_eq!(square.map(0).get(1, 0), &Scalar::from(3));
        assert_eq!(parse_representation(&square.to_text(), &q, Field::Rational).unwrap(), square);
        assert_eq!(parse_err(parse_representation("rep\ndim u 2\ndim v 1\nmap x 1 z\n", &q, Field::Rational)), (4, 9));
        assert_eq!(parse_err(parse_representation("rep\ndim u 2\ndim v 1\nmap x 1\n", &q, Field::Rational)), (4, 6));
        assert_eq!(parse_err(parse_representation("rep\ndim q 1\n", &q, Field::Rational)), (2, 5));
    }

    #[test]
    fn algebras() {
        let text = "algebra\nbasis u v x\nidempotents u v\nmul u u = [u]\nmul v v = [v]\nmul u x = [x]\nmul x v = [x]\n";
        let twisted = parse_algebra("algebra\nbasis u\nidempotent 1*[u]\nmul u u = 2*[u] + -1*[u]\n", Field::Rational);
        assert_eq!(twisted.unwrap().dim(), 1);
        let a = parse_algebra(text, Field::Rational).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.basis_product(0, 2), &Vector::unit(2));
        assert_eq!(parse_algebra(&algebra_to_text(&a), Field::Rational).unwrap(), a);
        assert_eq!(parse_err(parse_algebra("algebra\nbasis u\nmul u w = [u]\n", Field::Rational)), (3, 7));
        assert_eq!(parse_err(parse_algebra("algebra\nbasis u\nmul u u = [w]\n", Field::Rational)), (3, 12));
        assert!(matches!(
            parse_algebra("algebra\nbasis u\nidempotents u\n", Field::Rational),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn tensors() {
        let q = parse_quiver(LINE).unwrap();
        let t = parse_tensor("2*[x|y] - [u|u]", &q, &q, Field::Rational).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(parse_err(parse_tensor("[x y]", &q, &q, Field::Rational)), (1, 2));
    }
}
