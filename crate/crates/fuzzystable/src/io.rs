//! Reading formulas, interpretations and valuations from files, stdin and
//! command-line strings.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use fuzzystable_core::equilibrium::Valuation;
use fuzzystable_core::{Atom, Interpretation, Truth};
use serde_json::Value;

/// File contents, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))
    }
}

/// Drops `#` comments to the end of a line.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| l.split_once('#').map_or(l, |(code, _)| code))
        .collect::<Vec<_>>()
        .join("\n")
}

/// `p=0.3, q=7/10` inline, or `@FILE` holding that text or a JSON object.
pub fn parse_interp_arg(arg: &str) -> Result<Interpretation> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_source(path)?,
        None => arg.to_string(),
    };
    parse_interp_text(&text)
}

pub fn parse_interp_text(text: &str) -> Result<Interpretation> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') && trimmed.contains('"') {
        let value: Value = serde_json::from_str(trimmed).context("interpretation JSON")?;
        return interp_from_json(&value);
    }
    Ok(strip_comments(trimmed).parse()?)
}

/// `{"atom": "num/den" | "0.3" | 0.3}`
pub fn interp_from_json(value: &Value) -> Result<Interpretation> {
    let obj = value
        .as_object()
        .ok_or_else(|| anyhow!("interpretation JSON must be an object"))?;
    let mut map = BTreeMap::new();
    for (name, v) in obj {
        map.insert(
            Atom::new(name),
            truth_from_json(v).with_context(|| format!("atom `{name}`"))?,
        );
    }
    Ok(Interpretation::from_map(map))
}

pub fn truth_from_json(v: &Value) -> Result<Truth> {
    match v {
        Value::String(s) => Ok(s.parse()?),
        // The number keeps its source text, so 0.1 stays exactly 1/10.
        Value::Number(n) => Ok(n.to_string().parse()?),
        _ => bail!("expected a number or a \"num/den\" string, found {v}"),
    }
}

/// `h:p=[0.2,0.7]; t:p=[0.2,0.7]` inline, or `@FILE` holding that text or
/// `{"h": {...}, "t": {...}}`.
pub fn parse_valuation_arg(arg: &str) -> Result<Valuation> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read_source(path)?,
        None => arg.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).context("valuation JSON");
    }
    Ok(strip_comments(trimmed).parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_interpretations() {
        let i = parse_interp_text(r#"{"p": "7/10", "q": 0.1, "r": "0.25"}"#).unwrap();
        assert_eq!(i.to_string(), "{p=0.7, q=0.1, r=0.25}");
        assert!(parse_interp_text(r#"{"p": true}"#).is_err());
        assert!(parse_interp_text(r#"["p"]"#).is_err());
    }

    #[test]
    fn text_interpretations() {
        let i = parse_interp_text("{trust(a,b,0)=0.5; q=1}").unwrap();
        assert_eq!(i.get("trust(a,b,0)"), Some("1/2".parse().unwrap()));
    }

    #[test]
    fn valuations() {
        let text = parse_valuation_arg("h:p=[0.2,0.7]; t:p=[0.2,0.7]").unwrap();
        let json = parse_valuation_arg(r#"{"h":{"p":["0.2","0.7"]},"t":{"p":["1/5","7/10"]}}"#);
        assert_eq!(json.unwrap(), text);
    }

    #[test]
    fn comments() {
        assert_eq!(strip_comments("p -> q # rule\n# all\nq"), "p -> q \n\nq");
    }
}
