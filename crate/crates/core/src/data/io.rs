//! Text file formats.
//!
//! * network: `from_id<TAB>to_id` per line, `#` comments allowed
//! * content: `user_id<TAB>word<TAB>count` per line
//! * questions: one JSON object per line with `id`, `words`, `accepted`

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::data::{EgoNetwork, Question, UserId};
use crate::error::{Error, Result};

type Counts = BTreeMap<UserId, BTreeMap<String, u64>>;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes `contents` to `path` through a buffered writer.
pub fn write_with(path: &Path, contents: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    contents(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// Yields `(line_number, trimmed_line)` for non-blank, non-comment lines.
fn data_lines<'a, R: BufRead + 'a>(
    reader: R,
    origin: &'a Path,
) -> impl Iterator<Item = Result<(usize, String)>> + 'a {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(i, line)| match line {
            Err(e) => Some(Err(Error::io(origin, e))),
            Ok(l) => {
                let t = l.trim_end_matches(['\r', '\n']);
                if t.trim().is_empty() || t.trim_start().starts_with('#') {
                    None
                } else {
                    Some(Ok((i + 1, t.to_string())))
                }
            }
        })
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    what: &str,
    origin: &Path,
    line: usize,
) -> Result<T> {
    let raw = field.ok_or_else(|| Error::parse(origin, line, format!("missing {what}")))?;
    raw.trim()
        .parse()
        .map_err(|_| Error::parse(origin, line, format!("bad {what} {raw:?}")))
}

pub fn parse_edges<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<(UserId, UserId)>> {
    let mut out = Vec::new();
    for item in data_lines(reader, origin) {
        let (n, line) = item?;
        let mut fields = line.split('\t');
        let from = parse_field(fields.next(), "from_id", origin, n)?;
        let to = parse_field(fields.next(), "to_id", origin, n)?;
        if fields.next().is_some() {
            return Err(Error::parse(origin, n, "expected 2 tab-separated fields"));
        }
        out.push((UserId(from), UserId(to)));
    }
    Ok(out)
}

pub fn read_edges(path: &Path) -> Result<Vec<(UserId, UserId)>> {
    parse_edges(open(path)?, path)
}

pub fn write_edges(path: &Path, network: &EgoNetwork) -> Result<()> {
    let mut edges: Vec<_> = network.edges().collect();
    edges.sort();
    write_with(path, |out| {
        for (from, to) in edges {
            writeln!(out, "{from}\t{to}")?;
        }
        Ok(())
    })
}

/// Repeated `(user, word)` lines are summed.
pub fn parse_content<R: BufRead>(reader: R, origin: &Path) -> Result<Counts> {
    let mut out = Counts::new();
    for item in data_lines(reader, origin) {
        let (n, line) = item?;
        let mut fields = line.split('\t');
        let user: usize = parse_field(fields.next(), "user_id", origin, n)?;
        let word = fields
            .next()
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .ok_or_else(|| Error::parse(origin, n, "missing word"))?
            .to_string();
        let count: u64 = parse_field(fields.next(), "count", origin, n)?;
        if fields.next().is_some() {
            return Err(Error::parse(origin, n, "expected 3 tab-separated fields"));
        }
        if count == 0 {
            return Err(Error::parse(origin, n, "count must be positive"));
        }
        *out.entry(UserId(user)).or_default().entry(word).or_default() += count;
    }
    Ok(out)
}

pub fn read_content(path: &Path) -> Result<Counts> {
    parse_content(open(path)?, path)
}

pub fn write_content(path: &Path, counts: &Counts) -> Result<()> {
    write_with(path, |out| {
        for (user, words) in counts {
            for (word, count) in words {
                writeln!(out, "{user}\t{word}\t{count}")?;
            }
        }
        Ok(())
    })
}

pub fn parse_questions<R: BufRead>(reader: R, origin: &Path) -> Result<Vec<Question>> {
    let mut out = Vec::new();
    for item in data_lines(reader, origin) {
        let (n, line) = item?;
        let q: Question = serde_json::from_str(&line)
            .map_err(|e| Error::parse(origin, n, e.to_string()))?;
        out.push(q);
    }
    Ok(out)
}

pub fn read_questions(path: &Path) -> Result<Vec<Question>> {
    parse_questions(open(path)?, path)
}

pub fn write_questions(path: &Path, questions: &[Question]) -> Result<()> {
    write_with(path, |out| {
        for q in questions {
            serde_json::to_writer(&mut *out, q)?;
            writeln!(out)?;
        }
        Ok(())
    })
}
