//! Sparse text formats for matrices and code bundles.
//!
//! Both formats are line-oriented ASCII, frozen in `docs/formats.md`.
//! Writing then parsing is bit-exact, and the writers produce canonical
//! text (single spaces, ascending indices, trailing newline), so emitted
//! files can be compared byte-for-byte.

use qdefect_core::css::CssCode;
use qdefect_core::f2::{BitMatrix, BitVector};

/// Failure to turn text into a matrix or bundle.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    /// The text does not follow the documented grammar.
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    /// The matrices parsed but do not form a CSS code.
    #[error(transparent)]
    Code(#[from] qdefect_core::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Lines with content, keeping 1-based positions; `#` starts a comment.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.starts_with('#'))
        .collect()
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, got `{token}`")))
}

/// Parse one matrix row: ascending set-column indices, each `< cols`.
fn parse_row(line: usize, text: &str, cols: usize) -> Result<BitVector, FormatError> {
    let mut row = BitVector::zeros(cols);
    let mut prev = None;
    for token in text.split_whitespace() {
        let c = parse_usize(line, token, "a column index")?;
        if c >= cols {
            return Err(syntax(line, format!("column {c} out of range ({cols} columns)")));
        }
        if prev.is_some_and(|p| c <= p) {
            return Err(syntax(line, "column indices must be strictly ascending"));
        }
        prev = Some(c);
        row.set(c, true);
    }
    Ok(row)
}

fn write_row(out: &mut String, row: &BitVector) {
    let mut first = true;
    for c in row.support() {
        if !first {
            out.push(' ');
        }
        out.push_str(&c.to_string());
        first = false;
    }
    out.push('\n');
}

/// Consume `n_rows` row lines starting at `lines[pos]`.
fn parse_rows(
    lines: &[(usize, &str)],
    pos: usize,
    n_rows: usize,
    cols: usize,
) -> Result<Vec<BitVector>, FormatError> {
    let mut rows = Vec::with_capacity(n_rows);
    for r in 0..n_rows {
        let (line, text) = *lines
            .get(pos + r)
            .ok_or_else(|| syntax(0, format!("file ends after {r} of {n_rows} rows")))?;
        rows.push(parse_row(line, text, cols)?);
    }
    Ok(rows)
}

/// Matrix text: header `n_rows n_cols`, then one line per row listing the
/// set columns in ascending order (an empty line is an all-zero row).
pub fn write_matrix(m: &BitMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.n_rows(), m.n_cols()));
    for row in m.rows() {
        write_row(&mut out, row);
    }
    out
}

/// Inverse of [`write_matrix`]; rejects trailing garbage.
pub fn parse_matrix(text: &str) -> Result<BitMatrix, FormatError> {
    let lines = content_lines(text);
    let (line, header) = *lines.first().ok_or_else(|| syntax(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(syntax(line, "header must be `n_rows n_cols`"));
    }
    let n_rows = parse_usize(line, tokens[0], "a row count")?;
    let n_cols = parse_usize(line, tokens[1], "a column count")?;
    let rows = parse_rows(&lines, 1, n_rows, n_cols)?;
    if let Some(&(line, _)) = lines.get(1 + n_rows) {
        return Err(syntax(line, "unexpected content after the last row"));
    }
    Ok(BitMatrix::from_rows(rows, n_cols)?)
}

/// A named CSS code as stored on disk.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub code: CssCode,
}

/// Bundle text: `css <name>`, `n <qubits>`, then an `X`-check matrix block
/// and a `Z`-check matrix block, each `<side> <n_rows> <n_cols>` followed
/// by rows as in the matrix format.
pub fn write_bundle(name: &str, code: &CssCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("css {name}\n"));
    out.push_str(&format!("n {}\n", code.n()));
    for (side, m) in [("X", code.p()), ("Z", code.q())] {
        out.push_str(&format!("{side} {} {}\n", m.n_rows(), m.n_cols()));
        for row in m.rows() {
            write_row(&mut out, row);
        }
    }
    out
}

/// Inverse of [`write_bundle`]. Orthogonality and shape of the two blocks
/// are validated by the [`CssCode`] constructor.
pub fn parse_bundle(text: &str) -> Result<Bundle, FormatError> {
    let lines = content_lines(text);
    let mut pos = 0;

    let (line, header) = *lines.get(pos).ok_or_else(|| syntax(1, "empty input"))?;
    let name = header
        .strip_prefix("css ")
        .ok_or_else(|| syntax(line, "expected `css <name>`"))?
        .trim()
        .to_string();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(syntax(line, "bundle name must be a single token"));
    }
    pos += 1;

    let (line, decl) = *lines.get(pos).ok_or_else(|| syntax(line, "missing `n <qubits>`"))?;
    let n_text = decl
        .strip_prefix("n ")
        .ok_or_else(|| syntax(line, "expected `n <qubits>`"))?;
    let n = parse_usize(line, n_text.trim(), "a qubit count")?;
    pos += 1;

    let mut blocks = Vec::new();
    for side in ["X", "Z"] {
        let (line, decl) = *lines
            .get(pos)
            .ok_or_else(|| syntax(0, format!("missing `{side}` block")))?;
        let tokens: Vec<&str> = decl.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != side {
            return Err(syntax(line, format!("expected `{side} <n_rows> <n_cols>`")));
        }
        let n_rows = parse_usize(line, tokens[1], "a row count")?;
        let n_cols = parse_usize(line, tokens[2], "a column count")?;
        if n_cols != n {
            return Err(syntax(
                line,
                format!("{side} block has {n_cols} columns, bundle declares n = {n}"),
            ));
        }
        let rows = parse_rows(&lines, pos + 1, n_rows, n_cols)?;
        blocks.push(BitMatrix::from_rows(rows, n_cols)?);
        pos += 1 + n_rows;
    }
    if let Some(&(line, _)) = lines.get(pos) {
        return Err(syntax(line, "unexpected content after the Z block"));
    }

    let q = blocks.pop().expect("two blocks parsed");
    let p = blocks.pop().expect("two blocks parsed");
    Ok(Bundle {
        name,
        code: CssCode::new(p, q)?,
    })
}
