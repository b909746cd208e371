//! The `.lrc` coloring file format.
//!
//! ```text
//! LRC1 k=<k> N=<N> mode=<bitmap|rule>
//! <hex bitmap> | rule=split A=<a> B=<b> | rule=hash seed=<s> p=<num>/<den>
//! ```
//!
//! Bitmap digits hold four edges each, least significant bit first, in colex
//! order; a set bit means red.

use std::path::Path;

use crate::core::coloring::{bits_to_hex, ColoringSource, KUniformColoring, Ratio, Rule};
use crate::core::edge::Color;
use crate::error::{Error, Result};

pub fn to_lrc(c: &KUniformColoring) -> Result<String> {
    let (n, k) = (c.n(), c.k());
    let body = match c.source() {
        ColoringSource::Rule(Rule::Split { a, b }) => Some(format!("rule=split A={a} B={b}")),
        ColoringSource::Rule(Rule::Uniform(Color::Red)) => Some(format!("rule=split A={n} B=0")),
        ColoringSource::Rule(Rule::Uniform(Color::Blue)) => Some(format!("rule=split A=0 B={n}")),
        ColoringSource::Rule(Rule::Hash { seed, p }) => Some(format!("rule=hash seed={seed} p={}/{}", p.num, p.den)),
        _ => None,
    };
    Ok(match body {
        Some(rule) => format!("LRC1 k={k} N={n} mode=rule\n{rule}\n"),
        None => format!("LRC1 k={k} N={n} mode=bitmap\n{}\n", bits_to_hex(&c.to_bits()?)),
    })
}

fn field<'a>(tok: Option<&'a str>, key: &str) -> Result<&'a str> {
    tok.and_then(|t| t.strip_prefix(key)).and_then(|t| t.strip_prefix('=')).ok_or_else(|| {
        Error::Format(format!("expected {key}=..., found {:?}", tok.unwrap_or("end of line")))
    })
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Format(format!("bad number {s:?}")))
}

pub fn parse_lrc(text: &str) -> Result<KUniformColoring> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Format("empty file".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("LRC1") {
        return Err(Error::Format("missing LRC1 magic".into()));
    }
    let k: usize = num(field(toks.next(), "k")?)?;
    let n: usize = num(field(toks.next(), "N")?)?;
    let mode = field(toks.next(), "mode")?;
    let body = lines.next().ok_or_else(|| Error::Format("missing body line".into()))?;
    if lines.next().is_some() {
        return Err(Error::Format("trailing content".into()));
    }
    match mode {
        "bitmap" => KUniformColoring::from_hex(n, k, body),
        "rule" => {
            let mut toks = body.split_whitespace();
            let rule = match field(toks.next(), "rule")? {
                "split" => {
                    let a = num(field(toks.next(), "A")?)?;
                    let b = num(field(toks.next(), "B")?)?;
                    Rule::Split { a, b }
                }
                "hash" => {
                    let seed = num(field(toks.next(), "seed")?)?;
                    let p = field(toks.next(), "p")?;
                    let (pn, pd) = p.split_once('/').ok_or_else(|| Error::Format(format!("bad ratio {p:?}")))?;
                    Rule::Hash { seed, p: Ratio::new(num(pn)?, num(pd)?)? }
                }
                other => return Err(Error::Format(format!("unknown rule {other:?}"))),
            };
            if toks.next().is_some() {
                return Err(Error::Format("trailing rule fields".into()));
            }
            KUniformColoring::new(n, k, ColoringSource::Rule(rule))
        }
        other => Err(Error::Format(format!("unknown mode {other:?}"))),
    }
}

pub fn write_lrc(path: impl AsRef<Path>, c: &KUniformColoring) -> Result<()> {
    std::fs::write(path, to_lrc(c)?)?;
    Ok(())
}

pub fn read_lrc(path: impl AsRef<Path>) -> Result<KUniformColoring> {
    parse_lrc(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::coloring::random_coloring;

    #[test]
    fn roundtrips() {
        let s = KUniformColoring::split(21, 8, 20).unwrap();
        let text = to_lrc(&s).unwrap();
        assert_eq!(text, "LRC1 k=8 N=21 mode=rule\nrule=split A=20 B=1\n");
        assert_eq!(parse_lrc(&text).unwrap(), s);

        let r = random_coloring(6, 3, 4, 0.5).unwrap();
        let text = to_lrc(&r).unwrap();
        assert!(text.starts_with("LRC1 k=3 N=6 mode=bitmap\n"));
        assert_eq!(parse_lrc(&text).unwrap(), r);

        let h = parse_lrc("LRC1 k=3 N=7 mode=rule\nrule=hash seed=3 p=2/4\n").unwrap();
        assert_eq!(to_lrc(&h).unwrap(), "LRC1 k=3 N=7 mode=rule\nrule=hash seed=3 p=1/2\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_lrc("").is_err());
        assert!(parse_lrc("LRC2 k=3 N=4 mode=bitmap\n0\n").is_err());
        assert!(parse_lrc("LRC1 k=3 N=4 mode=bitmap\n00\n").is_err());
        assert!(parse_lrc("LRC1 k=3 N=4 mode=bitmap\nF\n").is_err());
        assert!(parse_lrc("LRC1 k=3 N=4 mode=rule\nrule=split A=2 B=1\n").is_err());
        assert_eq!(parse_lrc("LRC1 k=3 N=4 mode=bitmap\nf\n").unwrap().color_rank(3).unwrap(), Color::Red);
    }
}
