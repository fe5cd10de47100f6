//! Sequence input: raw strings, FASTA files, or standard input.

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use stackfold::seq::{parse_sequence, RnaSequence};

/// One input record: an optional FASTA header and the parsed sequence.
pub struct Record {
    pub name: Option<String>,
    pub seq: RnaSequence,
}

/// Resolve the `<in>` argument: `-` reads standard input, an existing path
/// is read as a file (FASTA if it starts with `>`), anything else is
/// treated as a literal sequence.
pub fn read_input(arg: &str) -> Result<Vec<Record>> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        buf
    } else if Path::new(arg).exists() {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    } else {
        arg.to_string()
    };

    if text.trim_start().starts_with('>') {
        parse_fasta(&text)
    } else {
        Ok(vec![Record {
            name: None,
            seq: parse_sequence(&text)?,
        }])
    }
}

/// Minimal FASTA reader: records start at `>` lines; header text after the
/// marker becomes the record name; sequence lines are concatenated.
pub fn parse_fasta(text: &str) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    let mut name: Option<String> = None;
    let mut body = String::new();
    let mut flush = |name: &mut Option<String>, body: &mut String| -> Result<()> {
        if name.is_some() || !body.trim().is_empty() {
            records.push(Record {
                name: name.take(),
                seq: parse_sequence(body)?,
            });
            body.clear();
        }
        Ok(())
    };
    for line in text.lines() {
        if let Some(header) = line.strip_prefix('>') {
            flush(&mut name, &mut body)?;
            name = Some(header.trim().to_string());
        } else {
            body.push_str(line);
        }
    }
    flush(&mut name, &mut body)?;
    Ok(records)
}

/// Wrap a sequence at 70 columns under a FASTA header.
pub fn format_fasta(name: &str, seq: &RnaSequence) -> String {
    let mut out = format!(">{name}\n");
    let text = seq.to_string();
    for chunk in text.as_bytes().chunks(70) {
        out.push_str(std::str::from_utf8(chunk).expect("ASCII sequence"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fasta_multi_record() {
        let records = parse_fasta(">a\nACG\nU\n>b desc\nGGCC\n").unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].seq.to_string(), "ACGU");
        assert_eq!(records[1].name.as_deref(), Some("b desc"));
        assert_eq!(records[1].seq.to_string(), "GGCC");
    }

    #[test]
    fn literal_argument() {
        let records = read_input("acgu").unwrap();
        assert_eq!(records[0].seq.to_string(), "ACGU");
    }

    #[test]
    fn fasta_round_trip() {
        let seq = parse_sequence("ACGUACGU").unwrap();
        let text = format_fasta("probe", &seq);
        let records = parse_fasta(&text).unwrap();
        assert_eq!(records[0].seq, seq);
    }
}
