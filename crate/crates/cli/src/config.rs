//! Optional `key = value` file that pre-binds flags.

use std::fs;
use std::path::Path;

/// Flag arguments equivalent to the file, in file order.
///
/// Blank lines and `#` comments are skipped; values may be wrapped in double quotes.
pub fn load(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split_once('#').map_or(raw, |(l, _)| l).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        let key = key.trim();
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: invalid key {key:?}", i + 1));
        }
        let value = value.trim();
        let value = value.strip_prefix('"').and_then(|v| v.strip_suffix('"')).unwrap_or(value);
        args.push(format!("--{key}={value}"));
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::parse;

    #[test]
    fn parses_pairs_comments_and_quotes() {
        let a = parse("# standard set\nq = 0.5\nlambda = \"0.4,0.3,0.2,0.1\"  # λ\n\ntol = check_mehler=1e-6\n").unwrap();
        assert_eq!(a, ["--q=0.5", "--lambda=0.4,0.3,0.2,0.1", "--tol=check_mehler=1e-6"]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("q 0.5").is_err());
        assert!(parse("= 0.5").is_err());
        assert!(parse("config = other.cfg").is_err());
    }
}
