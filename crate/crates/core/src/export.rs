//! Element-list dumps.
//!
//! Both formats hold one element per line in canonical order: `txt` writes
//! the bare element text, `jsonl` writes it as a JSON string. Import accepts
//! only what export would produce: canonical text, strictly increasing, no
//! duplicates. Gzip is detected on import by its magic bytes.

use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PartialPerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Txt,
    Jsonl,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "txt" => Ok(ExportFormat::Txt),
            "jsonl" => Ok(ExportFormat::Jsonl),
            _ => Err(Error::Parse {
                what: "export format",
                input: s.to_string(),
            }),
        }
    }
}

fn encode_line(alpha: &PartialPerm, format: ExportFormat) -> String {
    let text = alpha.to_string();
    match format {
        ExportFormat::Txt => text,
        ExportFormat::Jsonl => serde_json::to_string(&text).expect("string serialization"),
    }
}

/// Serializes `elements` (sorted internally) to bytes.
pub fn export_bytes(elements: &[PartialPerm], format: ExportFormat, gzip: bool) -> Result<Vec<u8>> {
    let mut sorted: Vec<&PartialPerm> = elements.iter().collect();
    sorted.sort_unstable();
    let mut plain = Vec::new();
    for alpha in sorted {
        plain.extend_from_slice(encode_line(alpha, format).as_bytes());
        plain.push(b'\n');
    }
    if !gzip {
        return Ok(plain);
    }
    // mtime 0 and no file name keep gzip output byte-stable
    let mut enc = GzEncoder::new(Vec::new(), Compression::default());
    enc.write_all(&plain)?;
    Ok(enc.finish()?)
}

pub fn export_to<W: Write>(mut out: W, elements: &[PartialPerm], format: ExportFormat, gzip: bool) -> Result<()> {
    out.write_all(&export_bytes(elements, format, gzip)?)?;
    out.flush()?;
    Ok(())
}

fn decode_line(line: &str, format: ExportFormat) -> Result<PartialPerm> {
    let text = match format {
        ExportFormat::Txt => line.to_string(),
        ExportFormat::Jsonl => serde_json::from_str::<String>(line).map_err(|_| Error::Parse {
            what: "JSON string line",
            input: line.to_string(),
        })?,
    };
    // strict parser: rejects anything whose text is not the canonical form
    let alpha: PartialPerm = text.parse()?;
    let canonical = encode_line(&alpha, format);
    if canonical != line {
        return Err(Error::NonCanonical {
            what: "export line",
            input: line.to_string(),
            canonical,
        });
    }
    Ok(alpha)
}

/// Parses an export, gzip-compressed or not.
pub fn import_from<R: Read>(input: R, format: ExportFormat) -> Result<Vec<PartialPerm>> {
    let mut bytes = Vec::new();
    BufReader::new(input).read_to_end(&mut bytes)?;
    let plain = if bytes.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        GzDecoder::new(&bytes[..]).read_to_end(&mut out)?;
        out
    } else {
        bytes
    };
    let mut elements: Vec<PartialPerm> = Vec::new();
    for line in plain.lines() {
        let line = line?;
        let alpha = decode_line(&line, format)?;
        if let Some(prev) = elements.last() {
            if *prev == alpha {
                return Err(Error::Duplicate(line));
            }
            if *prev > alpha {
                return Err(Error::NonCanonical {
                    what: "element order",
                    input: line,
                    canonical: "ascending canonical order".to_string(),
                });
            }
        }
        elements.push(alpha);
    }
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<PartialPerm> {
        vec![
            PartialPerm::identity(3),
            PartialPerm::empty(3),
            "n=3;1>2".parse().unwrap(),
        ]
    }

    #[test]
    fn round_trip_all_formats() {
        for format in [ExportFormat::Txt, ExportFormat::Jsonl] {
            for gzip in [false, true] {
                let bytes = export_bytes(&sample(), format, gzip).unwrap();
                let back = import_from(&bytes[..], format).unwrap();
                let mut expected = sample();
                expected.sort();
                assert_eq!(back, expected);
            }
        }
    }

    #[test]
    fn jsonl_lines_are_strings() {
        let bytes = export_bytes(&[PartialPerm::empty(3)], ExportFormat::Jsonl, false).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), "\"n=3;\"\n");
    }

    #[test]
    fn rejects_duplicates_and_non_canonical_lines() {
        let dup = "n=3;\nn=3;\n";
        assert!(matches!(
            import_from(dup.as_bytes(), ExportFormat::Txt),
            Err(Error::Duplicate(_))
        ));
        let spaced = "n=3; 1>2\n";
        assert!(import_from(spaced.as_bytes(), ExportFormat::Txt).is_err());
        let unsorted = "n=3;1>2\nn=3;\n";
        assert!(import_from(unsorted.as_bytes(), ExportFormat::Txt).is_err());
        let pretty = "\"n=3;\" \n";
        assert!(import_from(pretty.as_bytes(), ExportFormat::Jsonl).is_err());
    }
}
