//! Text file formats: transactions, mining results, distance matrices and
//! generator manifests.
//!
//! All formats are line oriented. Lines starting with `#` are comments or
//! `# key: value` header entries.

use std::fmt::Write as _;

use crate::bits::BitString;
use crate::datagen::{Manifest, PlantRecord, PlantSpec};
use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};

/// Per-line encoding of a transaction.
///
/// * bare `0`/`1` characters: bit literal
/// * `hex:` + hex digits: four bits per digit, most significant first
/// * `txt:` + text: eight bits per byte, most significant first
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Bits,
    Hex,
    Text,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Decodes one line; `Ok(None)` for blank and comment lines. `line` is the
/// 1-based number used in error messages.
pub fn parse_transaction_line(raw: &str, line: usize) -> Result<Option<BitString>> {
    let raw = raw.strip_suffix('\r').unwrap_or(raw);
    let trimmed = raw.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let bits = if let Some(rest) = raw.trim_start().strip_prefix("txt:") {
        BitString::from_bytes_msb(rest.as_bytes())
    } else if let Some(rest) = trimmed.strip_prefix("hex:") {
        let mut bits = BitString::with_capacity(rest.len() * 4);
        for c in rest.trim().chars() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| parse_err(line, format!("invalid hex digit {c:?}")))?;
            for i in (0..4).rev() {
                bits.push((nibble >> i) & 1 == 1);
            }
        }
        bits
    } else {
        trimmed
            .parse()
            .map_err(|_| parse_err(line, format!("not a bit literal: {trimmed:?}")))?
    };
    if bits.is_empty() {
        return Err(parse_err(line, "transaction decodes to zero bits"));
    }
    Ok(Some(bits))
}

pub fn parse_transactions(text: &str) -> Result<Vec<BitString>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(bits) = parse_transaction_line(line, i + 1)? {
            out.push(bits);
        }
    }
    Ok(out)
}

/// Encodes `x` as a single line. Fails when `x` is not representable in
/// `encoding` (hex needs whole nibbles; text needs whole bytes forming UTF-8
/// without line breaks).
pub fn encode_transaction(x: &BitString, encoding: Encoding) -> Result<String> {
    match encoding {
        Encoding::Bits => Ok(x.to_string()),
        Encoding::Hex => {
            if !x.len().is_multiple_of(4) {
                return Err(Error::InvalidParameter(format!(
                    "{} bits is not a whole number of nibbles",
                    x.len()
                )));
            }
            let mut s = String::from("hex:");
            for chunk in 0..x.len() / 4 {
                let nibble = (0..4).fold(0u32, |acc, i| (acc << 1) | x.get(chunk * 4 + i).unwrap() as u32);
                s.push(char::from_digit(nibble, 16).unwrap());
            }
            Ok(s)
        }
        Encoding::Text => {
            if !x.len().is_multiple_of(8) {
                return Err(Error::InvalidParameter(format!(
                    "{} bits is not a whole number of bytes",
                    x.len()
                )));
            }
            let text = String::from_utf8(x.to_bytes_msb())
                .map_err(|_| Error::InvalidParameter("bytes are not valid UTF-8".into()))?;
            if text.contains(['\n', '\r']) {
                return Err(Error::InvalidParameter("text contains a line break".into()));
            }
            Ok(format!("txt:{text}"))
        }
    }
}

/// One transaction per line, preceded by `# ` comment lines.
pub fn write_transactions(items: &[BitString], encoding: Encoding, comments: &[String]) -> Result<String> {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    for x in items {
        out.push_str(&encode_transaction(x, encoding)?);
        out.push('\n');
    }
    Ok(out)
}

/// Ordered `# key: value` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Header {
    entries: Vec<(String, String)>,
}

impl Header {
    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    fn write(&self, out: &mut String) {
        for (k, v) in &self.entries {
            writeln!(out, "# {k}: {v}").unwrap();
        }
    }

    fn parse_entry(&mut self, line: &str) -> bool {
        let Some(body) = line.strip_prefix('#') else {
            return false;
        };
        if let Some((k, v)) = body.trim().split_once(": ") {
            self.entries.push((k.to_string(), v.to_string()));
        }
        true
    }
}

pub const RESULT_MAGIC: &str = "bitmine-result v1";
const RESULT_COLUMNS: &str = "level\tpattern\tcount\tcode_len";

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub level: usize,
    pub pattern: BitString,
    pub count: u64,
    pub code_len: f64,
}

/// Mining output: a configuration header and records sorted by
/// `(level, pattern)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultFile {
    pub header: Header,
    pub records: Vec<ResultRecord>,
}

impl ResultFile {
    pub fn sort(&mut self) {
        self.records
            .sort_by(|a, b| (a.level, &a.pattern).cmp(&(b.level, &b.pattern)));
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {RESULT_MAGIC}\n");
        self.header.write(&mut out);
        out.push_str(RESULT_COLUMNS);
        out.push('\n');
        for r in &self.records {
            writeln!(out, "{}\t{}\t{}\t{:.6}", r.level, r.pattern, r.count, r.code_len).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<ResultFile> {
        let mut file = ResultFile::default();
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim_start_matches('#').trim() == RESULT_MAGIC => {}
            _ => return Err(parse_err(1, format!("missing `# {RESULT_MAGIC}` line"))),
        }
        let mut seen_columns = false;
        for (i, line) in lines {
            let n = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            if !seen_columns {
                if file.header.parse_entry(line) {
                    continue;
                }
                if line == RESULT_COLUMNS {
                    seen_columns = true;
                    continue;
                }
                return Err(parse_err(n, "expected header entry or column line"));
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [level, pattern, count, code_len] = fields[..] else {
                return Err(parse_err(n, "expected 4 tab-separated fields"));
            };
            let bad = |what: &str| parse_err(n, format!("invalid {what}"));
            file.records.push(ResultRecord {
                level: level.parse().map_err(|_| bad("level"))?,
                pattern: pattern.parse().map_err(|_| bad("pattern"))?,
                count: count.parse().map_err(|_| bad("count"))?,
                code_len: code_len.parse().map_err(|_| bad("code_len"))?,
            });
        }
        if !seen_columns {
            return Err(parse_err(0, "missing column line"));
        }
        Ok(file)
    }
}

pub const MATRIX_MAGIC: &str = "bitmine-matrix v1";

/// Labelled matrix with a `# key: value` header; values to 6 decimals.
pub fn render_matrix(m: &DistanceMatrix, header: &Header) -> String {
    let mut out = format!("# {MATRIX_MAGIC}\n");
    header.write(&mut out);
    out.push_str("label");
    for l in &m.labels {
        write!(out, "\t{l}").unwrap();
    }
    out.push('\n');
    for (i, l) in m.labels.iter().enumerate() {
        out.push_str(l);
        for v in m.row(i) {
            write!(out, "\t{v:.6}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a rendered matrix into labels and rows.
pub fn parse_matrix(text: &str) -> Result<(Header, Vec<String>, Vec<Vec<f64>>)> {
    let mut header = Header::default();
    let mut labels = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if header.parse_entry(line) || line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let first = fields.next().unwrap_or_default();
        if labels.is_none() {
            if first != "label" {
                return Err(parse_err(n, "expected label row"));
            }
            labels = Some(fields.map(str::to_string).collect::<Vec<_>>());
            continue;
        }
        let row = fields
            .map(|f| f.parse::<f64>().map_err(|_| parse_err(n, format!("invalid value {f:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let labels = labels.ok_or_else(|| parse_err(0, "missing label row"))?;
    Ok((header, labels, rows))
}

pub const MANIFEST_MAGIC: &str = "bitmine-manifest v1";

pub fn render_manifest(m: &Manifest) -> String {
    let s = &m.spec;
    let mut header = Header::default();
    header
        .push("motif", &s.motif)
        .push("transactions", s.transaction_count)
        .push("planted_fraction", s.planted_fraction)
        .push("flip_prob", s.flip_prob)
        .push("pad_min", s.pad_len.start())
        .push("pad_max", s.pad_len.end())
        .push("seed", s.seed)
        .push("planted", m.planted_count());
    let mut out = format!("# {MANIFEST_MAGIC}\n");
    header.write(&mut out);
    out.push_str("index\tplanted\toffset\tflipped\n");
    for (i, r) in m.records.iter().enumerate() {
        let offset = r.offset.map_or("-".to_string(), |o| o.to_string());
        let flipped = if r.flipped.is_empty() {
            "-".to_string()
        } else {
            r.flipped.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        };
        writeln!(out, "{i}\t{}\t{offset}\t{flipped}", r.planted as u8).unwrap();
    }
    out
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut header = Header::default();
    let mut records = Vec::new();
    let mut in_body = false;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if !in_body {
            if header.parse_entry(line) {
                continue;
            }
            if line.starts_with("index\t") {
                in_body = true;
                continue;
            }
            return Err(parse_err(n, "expected header entry or column line"));
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [index, planted, offset, flipped] = fields[..] else {
            return Err(parse_err(n, "expected 4 tab-separated fields"));
        };
        if index.parse::<usize>().ok() != Some(records.len()) {
            return Err(parse_err(n, "records out of order"));
        }
        let bad = |what: &str| parse_err(n, format!("invalid {what}"));
        records.push(PlantRecord {
            planted: match planted {
                "1" => true,
                "0" => false,
                _ => return Err(bad("planted flag")),
            },
            offset: match offset {
                "-" => None,
                o => Some(o.parse().map_err(|_| bad("offset"))?),
            },
            flipped: match flipped {
                "-" => Vec::new(),
                f => f
                    .split(',')
                    .map(|v| v.parse().map_err(|_| bad("flip index")))
                    .collect::<Result<_>>()?,
            },
        });
    }
    let field = |key: &str| {
        header
            .get(key)
            .ok_or_else(|| parse_err(0, format!("manifest header lacks {key}")))
    };
    let num_err = |key: &str| parse_err(0, format!("invalid manifest value for {key}"));
    let spec = PlantSpec {
        motif: field("motif")?.parse().map_err(|_| num_err("motif"))?,
        transaction_count: field("transactions")?.parse().map_err(|_| num_err("transactions"))?,
        planted_fraction: field("planted_fraction")?
            .parse()
            .map_err(|_| num_err("planted_fraction"))?,
        flip_prob: field("flip_prob")?.parse().map_err(|_| num_err("flip_prob"))?,
        pad_len: field("pad_min")?.parse().map_err(|_| num_err("pad_min"))?
            ..=field("pad_max")?.parse().map_err(|_| num_err("pad_max"))?,
        seed: field("seed")?.parse().map_err(|_| num_err("seed"))?,
    };
    Ok(Manifest { spec, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::gen_planted;
    use proptest::prelude::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn line_encodings() {
        assert_eq!(parse_transaction_line("0110", 1).unwrap(), Some(bs("0110")));
        assert_eq!(parse_transaction_line("hex:a3", 1).unwrap(), Some(bs("10100011")));
        assert_eq!(parse_transaction_line("txt:A", 1).unwrap(), Some(bs("01000001")));
        assert_eq!(parse_transaction_line("   ", 1).unwrap(), None);
        assert_eq!(parse_transaction_line("# note", 1).unwrap(), None);
        assert_eq!(parse_transaction_line("01\r", 1).unwrap(), Some(bs("01")));
    }

    #[test]
    fn malformed_lines_name_their_number() {
        let err = parse_transactions("01\n\n0x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_transaction_line("hex:", 4).is_err());
        assert!(parse_transaction_line("hex:zz", 4).is_err());
        assert!(parse_transaction_line("txt:", 4).is_err());
    }

    #[test]
    fn unrepresentable_encodings() {
        assert!(encode_transaction(&bs("101"), Encoding::Hex).is_err());
        assert!(encode_transaction(&bs("0000101"), Encoding::Text).is_err());
        assert!(encode_transaction(&BitString::from_bytes_msb(b"a\nb"), Encoding::Text).is_err());
    }

    proptest! {
        #[test]
        fn transaction_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..80)) {
            let x: BitString = bits.into_iter().collect();
            for enc in [Encoding::Bits, Encoding::Hex] {
                if let Ok(line) = encode_transaction(&x, enc) {
                    prop_assert_eq!(parse_transaction_line(&line, 1).unwrap(), Some(x.clone()));
                }
            }
        }

        #[test]
        fn text_round_trip(s in "[ -~]{1,20}") {
            let x = BitString::from_bytes_msb(s.as_bytes());
            let line = encode_transaction(&x, Encoding::Text).unwrap();
            prop_assert_eq!(parse_transaction_line(&line, 1).unwrap(), Some(x));
        }
    }

    #[test]
    fn result_file_round_trip() {
        let mut header = Header::default();
        header.push("backend", "kt").push("c1", 0.6);
        let file = ResultFile {
            header,
            records: vec![
                ResultRecord { level: 0, pattern: bs("0"), count: 5, code_len: 1.0 },
                ResultRecord { level: 1, pattern: bs("011"), count: 4, code_len: 5.415037 },
            ],
        };
        let text = file.render();
        assert!(text.contains("1\t011\t4\t5.415037\n"));
        assert_eq!(ResultFile::parse(&text).unwrap(), file);
        assert!(ResultFile::parse("level\tpattern\n").is_err());
    }

    #[test]
    fn manifest_round_trip() {
        let d = gen_planted(&PlantSpec::default()).unwrap();
        let text = render_manifest(&d.manifest);
        let back = parse_manifest(&text).unwrap();
        assert_eq!(back, d.manifest);
        assert_eq!(back.replay().unwrap(), d.transactions);
    }
}
