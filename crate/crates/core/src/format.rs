//! The line-oriented presentation file format.
//!
//! ```text
//! # A[2]: 1 <- 2 <- 3 with b1*b2 = 0
//! vertices 3
//! arrow b1 2 1
//! arrow b2 3 2
//! relation b1*b2
//!
//! module M
//!   dims = [1, 1, 0]
//!   b1 = [[1]]
//! end
//! ```
//!
//! Relation terms are `[COEF]NAME*NAME*...` joined by `+` or `-`, where
//! `COEF` is an integer or `p/q`. Paths compose right to left: `b1*b2`
//! means `b2` first. Arrow matrices inside a `module` block are row-major
//! with shape `dim(target) x dim(source)`; omitted arrows act by zero.

use std::fmt::Write as _;

use num_traits::{One, Signed};

use crate::algebra::presentation::{is_identifier, Arrow, QuiverPresentation, Relation, Term};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, parse_q, Matrix, Q};

/// A module written out in a presentation file, not yet checked against an
/// algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleLiteral {
    pub name: String,
    pub dims: Vec<usize>,
    pub matrices: Vec<(String, Matrix)>,
}

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub presentation: QuiverPresentation,
    pub modules: Vec<ModuleLiteral>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parse only the presentation part of a file.
pub fn parse_presentation(text: &str) -> Result<QuiverPresentation> {
    Ok(parse_document(text)?.presentation)
}

pub fn parse_file(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Syntax {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut vertex_count: Option<usize> = None;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut max_path_length = None;
    let mut modules: Vec<ModuleLiteral> = Vec::new();
    let mut open: Option<(usize, ModuleLiteral, bool)> = None;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let col = indent + 1;

        if let Some((_, module, has_dims)) = open.as_mut() {
            if trimmed == "end" {
                let (start, module, has_dims) = open.take().unwrap();
                if !has_dims {
                    return Err(syntax(start, 1, format!("module `{}` lacks `dims`", module.name)));
                }
                modules.push(module);
                continue;
            }
            let Some((lhs, rhs)) = trimmed.split_once('=') else {
                return Err(syntax(line_no, col, "expected `dims = [...]`, `ARROW = [[...]]` or `end`"));
            };
            let lhs = lhs.trim();
            let rhs_col = col + trimmed.find('=').unwrap() + 1;
            if lhs == "dims" {
                let dims = parse_int_list(rhs, line_no, rhs_col)?;
                module.dims = dims;
                *has_dims = true;
            } else if is_identifier(lhs) {
                if module.matrices.iter().any(|(n, _)| n == lhs) {
                    return Err(syntax(line_no, col, format!("matrix for `{lhs}` given twice")));
                }
                let m = parse_matrix(rhs, line_no, rhs_col)?;
                module.matrices.push((lhs.to_string(), m));
            } else {
                return Err(syntax(line_no, col, format!("unexpected `{lhs}` in module block")));
            }
            continue;
        }

        let (word, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (trimmed, ""),
        };
        let rest_col = col + trimmed.len() - rest.len();
        match word {
            "vertices" => {
                if vertex_count.is_some() {
                    return Err(syntax(line_no, col, "duplicate `vertices` directive"));
                }
                vertex_count = Some(parse_usize(rest, line_no, rest_col)?);
            }
            "arrow" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(syntax(line_no, rest_col, "expected `arrow NAME SRC DST`"));
                }
                if !is_identifier(parts[0]) {
                    return Err(syntax(line_no, rest_col, format!("`{}` is not an identifier", parts[0])));
                }
                arrows.push(Arrow {
                    name: parts[0].to_string(),
                    source: parse_usize(parts[1], line_no, rest_col)?,
                    target: parse_usize(parts[2], line_no, rest_col)?,
                });
            }
            "relation" => relations.push(parse_relation(rest, line_no, rest_col)?),
            "max_path_length" => max_path_length = Some(parse_usize(rest, line_no, rest_col)?),
            "module" => {
                if !is_identifier(rest) {
                    return Err(syntax(line_no, rest_col, "expected `module NAME`"));
                }
                if modules.iter().any(|m| m.name == rest) {
                    return Err(syntax(line_no, rest_col, format!("module `{rest}` defined twice")));
                }
                open = Some((
                    line_no,
                    ModuleLiteral {
                        name: rest.to_string(),
                        dims: vec![],
                        matrices: vec![],
                    },
                    false,
                ));
            }
            other => {
                return Err(syntax(line_no, col, format!("unknown directive `{other}`")));
            }
        }
    }
    if let Some((start, module, _)) = open {
        return Err(syntax(start, 1, format!("module `{}` is missing `end`", module.name)));
    }
    let Some(vertex_count) = vertex_count else {
        return Err(syntax(1, 1, "missing `vertices N` directive"));
    };
    let presentation = QuiverPresentation {
        vertex_count,
        arrows,
        relations,
        max_path_length,
    };
    presentation.resolve()?;
    for m in &modules {
        if m.dims.len() != vertex_count {
            return Err(Error::InvalidModule(format!(
                "module `{}` has {} dims for {} vertices",
                m.name,
                m.dims.len(),
                vertex_count
            )));
        }
        for (arrow, _) in &m.matrices {
            if presentation.arrow_index(arrow).is_none() {
                return Err(Error::InvalidPresentation {
                    token: arrow.clone(),
                    message: format!("module `{}` names an unknown arrow", m.name),
                });
            }
        }
    }
    Ok(Document {
        presentation,
        modules,
    })
}

fn parse_usize(s: &str, line: usize, column: usize) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| syntax(line, column, format!("expected a non-negative integer, found `{}`", s.trim())))
}

fn parse_relation(text: &str, line: usize, column: usize) -> Result<Relation> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        let mut sign = Q::one();
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !terms.is_empty() {
            return Err(syntax(line, column + i, "expected `+` or `-` between terms"));
        }
        if i >= chars.len() {
            return Err(syntax(line, column + i, "expected a term"));
        }
        let start = i;
        while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
            i += 1;
        }
        let coefficient = if i > start {
            let lit: String = chars[start..i].iter().collect();
            let c = parse_q(&lit)
                .ok_or_else(|| syntax(line, column + start, format!("bad coefficient `{lit}`")))?;
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }
            c
        } else {
            Q::one()
        };
        let mut path = Vec::new();
        loop {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let name: String = chars[s..i].iter().collect();
            if !is_identifier(&name) {
                return Err(syntax(line, column + s, "expected an arrow name"));
            }
            path.push(name);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            } else {
                break;
            }
        }
        terms.push(Term {
            coefficient: sign * coefficient,
            path,
        });
        skip_ws(&mut i);
        if i >= chars.len() {
            break;
        }
    }
    Ok(Relation { terms })
}

fn parse_int_list(text: &str, line: usize, column: usize) -> Result<Vec<usize>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(line, column, "expected `[d1, ..., dk]`"))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| parse_usize(x, line, column))
        .collect()
}

fn parse_matrix(text: &str, line: usize, column: usize) -> Result<Matrix> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax(line, column, "expected a matrix `[[...], ...]`"))?
        .trim();
    if inner.is_empty() {
        return Ok(Matrix::zeros(0, 0));
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rest = inner;
    loop {
        let r = rest.trim_start();
        let Some(body) = r.strip_prefix('[') else {
            return Err(syntax(line, column, "expected `[` opening a row"));
        };
        let close = body
            .find(']')
            .ok_or_else(|| syntax(line, column, "unclosed matrix row"))?;
        let row_text = &body[..close];
        let row: Vec<Q> = if row_text.trim().is_empty() {
            vec![]
        } else {
            row_text
                .split(',')
                .map(|x| {
                    parse_q(x).ok_or_else(|| syntax(line, column, format!("bad rational `{}`", x.trim())))
                })
                .collect::<Result<_>>()?
        };
        rows.push(row);
        rest = body[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest
            .strip_prefix(',')
            .ok_or_else(|| syntax(line, column, "expected `,` between rows"))?;
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(syntax(line, column, "ragged matrix"));
    }
    Ok(Matrix::from_rows_shaped(rows.len(), cols, rows).unwrap())
}

fn write_term(out: &mut String, t: &Term, first: bool) {
    let negative = t.coefficient.is_negative();
    let magnitude = t.coefficient.abs();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if !magnitude.is_one() {
        out.push_str(&fmt_q(&magnitude));
    }
    out.push_str(&t.path.join("*"));
}

pub fn serialize_presentation(p: &QuiverPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", p.vertex_count).unwrap();
    for a in &p.arrows {
        writeln!(out, "arrow {} {} {}", a.name, a.source, a.target).unwrap();
    }
    for r in &p.relations {
        out.push_str("relation ");
        for (i, t) in r.terms.iter().enumerate() {
            write_term(&mut out, t, i == 0);
        }
        out.push('\n');
    }
    if let Some(n) = p.max_path_length {
        writeln!(out, "max_path_length {n}").unwrap();
    }
    out
}

pub fn serialize_document(doc: &Document) -> String {
    let mut out = serialize_presentation(&doc.presentation);
    for m in &doc.modules {
        writeln!(out, "\nmodule {}", m.name).unwrap();
        let dims: Vec<String> = m.dims.iter().map(usize::to_string).collect();
        writeln!(out, "  dims = [{}]", dims.join(", ")).unwrap();
        for (arrow, mat) in &m.matrices {
            if mat.rows() == 0 {
                writeln!(out, "  {arrow} = []").unwrap();
                continue;
            }
            let rows: Vec<String> = mat
                .entries_as_strings()
                .into_iter()
                .map(|r| format!("[{}]", r.join(", ")))
                .collect();
            writeln!(out, "  {arrow} = [{}]", rows.join(", ")).unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::{named_fixture, FixtureTag};
    use crate::linalg::{frac, q};

    const A2: &str = "# A[2]\nvertices 3\narrow b1 2 1\narrow b2 3 2\nrelation b1*b2\n";

    #[test]
    fn parses_a2() {
        let p = parse_presentation(A2).unwrap();
        assert_eq!(p.vertex_count, 3);
        assert_eq!(p.arrows.len(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p, named_fixture(FixtureTag::A(2)).unwrap());
    }

    #[test]
    fn non_composable_relation_is_semantic_error() {
        let text = A2.replace("b1*b2", "b2*b1");
        match parse_presentation(&text) {
            Err(Error::InvalidPresentation { token, .. }) => assert_eq!(token, "b2*b1"),
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn commutativity_relation() {
        let text = "vertices 6\narrow a 6 4\narrow g 6 5\narrow b 4 3\narrow d 5 3\n\
                    relation b*a - d*g\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.relations.len(), 1);
        let r = &p.relations[0];
        assert_eq!(r.terms.len(), 2);
        assert_eq!(r.terms[1].coefficient, q(-1));
        assert_eq!(r.terms[1].path, ["d", "g"]);
    }

    #[test]
    fn coefficients() {
        let text = "vertices 2\narrow a 1 2\narrow b 1 2\narrow c 2 2\n\
                    relation 2/3c*a - 5 c*b - c*c*a\n";
        let p = parse_presentation(text).unwrap();
        let cs: Vec<Q> = p.relations[0].terms.iter().map(|t| t.coefficient.clone()).collect();
        assert_eq!(cs, vec![frac(2, 3), q(-5), q(-1)]);
        let again = parse_presentation(&serialize_presentation(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_presentation("vertices 2\nfrobnicate 1\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("{other:?}"),
        }
        match parse_presentation("vertices 2\narrow a 1 2\nrelation a*a +\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn module_blocks() {
        let text = format!("{A2}\nmodule M\n  dims = [1, 1, 0]\n  b1 = [[1]]\n  b2 = []\nend\n");
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc.modules.len(), 1);
        let m = &doc.modules[0];
        assert_eq!(m.dims, [1, 1, 0]);
        assert_eq!(m.matrices[0].1, Matrix::from_i64(&[&[1]]));
        let again = parse_document(&serialize_document(&doc)).unwrap();
        assert_eq!(again, doc);
        assert!(parse_document(&format!("{A2}module M\n dims = [1]\n")).is_err());
    }

    #[test]
    fn fixtures_round_trip() {
        for tag in FixtureTag::corpus() {
            let p = named_fixture(tag).unwrap();
            let text = serialize_presentation(&p);
            assert_eq!(parse_presentation(&text).unwrap(), p, "{tag}");
            assert_eq!(serialize_presentation(&parse_presentation(&text).unwrap()), text);
        }
    }
}
