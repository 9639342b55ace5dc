//! Plain-text rule files.
//!
//! ```text
//! # comments and blank lines are ignored
//! k=2
//! r=1
//! table=01100110
//! ```
//!
//! `table` lists one base-k digit per window, windows in big-endian order
//! (window `0..0` first). The shorthand `eca:N` stands for the elementary
//! rule `N` in Wolfram numbering.

use crate::ca::{CellularAutomaton, RuleTableCA};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses either `eca:N` or the contents of a rule file.
pub fn parse_rule(text: &str) -> Result<RuleTableCA> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("eca:") {
        return parse_eca(rest, 1, text.find("eca:").map_or(1, |c| c + 5));
    }
    parse_rule_file(text)
}

fn parse_eca(number: &str, line: usize, column: usize) -> Result<RuleTableCA> {
    let n: u8 = number
        .trim()
        .parse()
        .map_err(|_| parse_error(line, column, format!("'{}' is not a rule number in 0..=255", number.trim())))?;
    Ok(RuleTableCA::elementary(n))
}

pub fn parse_rule_file(text: &str) -> Result<RuleTableCA> {
    let mut k: Option<(usize, usize)> = None;
    let mut r: Option<usize> = None;
    let mut table: Option<(String, usize, usize)> = None;
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let content = content.trim();
        if let Some(rest) = content.strip_prefix("eca:") {
            return parse_eca(rest, line, indent + 5);
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(parse_error(line, indent + 1, "expected key=value"));
        };
        let value_column = indent + key.len() + 2 + (value.len() - value.trim_start().len());
        let value = value.trim();
        match key.trim() {
            "k" => {
                let parsed = value
                    .parse()
                    .map_err(|_| parse_error(line, value_column, "k must be an integer"))?;
                Alphabet::new(parsed).map_err(|e| parse_error(line, value_column, e.to_string()))?;
                k = Some((parsed, line));
            }
            "r" => {
                r = Some(
                    value
                        .parse()
                        .map_err(|_| parse_error(line, value_column, "r must be a non-negative integer"))?,
                );
            }
            "table" => table = Some((value.to_string(), line, value_column)),
            other => {
                return Err(parse_error(line, indent + 1, format!("unknown key '{other}'")));
            }
        }
    }
    let eof = last_line.max(1);
    let (k, _) = k.ok_or_else(|| parse_error(eof, 1, "missing k="))?;
    let r = r.ok_or_else(|| parse_error(eof, 1, "missing r="))?;
    let (digits, line, column) = table.ok_or_else(|| parse_error(eof, 1, "missing table="))?;
    let alphabet = Alphabet::new(k)?;
    let word = Word::parse(&digits, alphabet).map_err(|e| match e {
        Error::Parse { column: c, message, .. } => parse_error(line, column + c - 1, message),
        other => other,
    })?;
    RuleTableCA::new(alphabet, r, word.into_inner()).map_err(|e| parse_error(line, column, e.to_string()))
}

/// Serializes in the format accepted by [`parse_rule_file`].
pub fn to_rule_file(ca: &RuleTableCA) -> String {
    format!(
        "k={}\nr={}\ntable={}\n",
        ca.alphabet(),
        ca.radius(),
        Word(ca.table().to_vec())
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eca_shorthand_uses_wolfram_bits() {
        let xor = parse_rule("eca:102").unwrap();
        assert_eq!(xor.table(), &[0, 1, 1, 0, 0, 1, 1, 0]);
        assert_eq!(xor.wolfram_number(), Some(102));
        assert!(matches!(parse_rule("eca:256"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn rule_file_round_trip() {
        let text = "# xor with right neighbour\nk=2\nr = 1\ntable=01100110\n";
        let ca = parse_rule(text).unwrap();
        assert_eq!(ca, RuleTableCA::elementary(102));
        assert_eq!(parse_rule(&to_rule_file(&ca)).unwrap(), ca);
    }

    #[test]
    fn diagnostics_point_at_the_problem() {
        assert_eq!(
            parse_rule("k=2\nr=1\ntable=01120110\n"),
            Err(Error::Parse {
                line: 3,
                column: 10,
                message: "symbol 2 is outside the alphabet of size 2".into()
            })
        );
        assert!(matches!(parse_rule("k=2\nr=1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_rule("k=2\nradius=1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_rule("k=x\n"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(
            parse_rule("k=2\nr=1\ntable=0110\n"),
            Err(Error::Parse { line: 3, column: 7, .. })
        ));
    }
}
