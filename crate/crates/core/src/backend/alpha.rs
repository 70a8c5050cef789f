//! Alpha-equivalence of C sources at the token level.
//!
//! Comments and preprocessor lines are dropped, the rest is tokenised, and
//! every generated identifier (lowercase letters, an underscore, digits —
//! `v_1`, `t_4`, `x_2`) is renamed by order of first occurrence. Two sources
//! are alpha-equivalent when the resulting token streams are equal, so
//! whitespace, brace placement inside token boundaries and the numbering of
//! generated names do not matter.

use std::collections::HashMap;

use thiserror::Error;

/// Where two sources first disagree.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("token {index}: expected `{expected}`, found `{found}` (context: {context})")]
pub struct AlphaMismatch {
    pub index: usize,
    pub expected: String,
    pub found: String,
    pub context: String,
}

fn is_generated(tok: &str) -> bool {
    let Some((head, tail)) = tok.split_once('_') else {
        return false;
    };
    !head.is_empty()
        && head.bytes().all(|b| b.is_ascii_lowercase())
        && !tail.is_empty()
        && tail.bytes().all(|b| b.is_ascii_digit())
}

/// Splits C source into tokens, dropping comments and preprocessor lines.
pub fn tokenize(src: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    let mut line_start = true;
    while i < b.len() {
        let c = b[i];
        if c == b'\n' {
            line_start = true;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if line_start && c == b'#' {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        line_start = false;
        if c == b'/' && b.get(i + 1) == Some(&b'/') {
            while i < b.len() && b[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && b.get(i + 1) == Some(&b'*') {
            i += 2;
            while i + 1 < b.len() && !(b[i] == b'*' && b[i + 1] == b'/') {
                i += 1;
            }
            i += 2;
            continue;
        }
        let start = i;
        if c.is_ascii_alphanumeric() || c == b'_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'.') {
                i += 1;
            }
        } else if c == b'"' {
            i += 1;
            while i < b.len() && b[i] != b'"' {
                if b[i] == b'\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
        } else {
            const TWO: &[&str] = &["&&", "||", "==", "!=", "<=", ">=", "++", "--", "+=", "-=", "->"];
            if i + 1 < b.len() && TWO.contains(&&src[i..i + 2]) {
                i += 2;
            } else {
                i += 1;
            }
        }
        toks.push(src[start..i.min(b.len())].to_string());
    }
    toks
}

/// Tokenises and renames generated identifiers canonically.
pub fn canonical_tokens(src: &str) -> Vec<String> {
    let mut names: HashMap<String, usize> = HashMap::new();
    tokenize(src)
        .into_iter()
        .map(|t| {
            if is_generated(&t) {
                let n = names.len();
                let k = *names.entry(t).or_insert(n);
                format!("#{k}")
            } else {
                t
            }
        })
        .collect()
}

/// Checks two C sources for alpha-equivalence.
pub fn alpha_equivalent(expected: &str, found: &str) -> Result<(), AlphaMismatch> {
    let a = canonical_tokens(expected);
    let b = canonical_tokens(found);
    let n = a.len().max(b.len());
    for i in 0..n {
        let (x, y) = (a.get(i), b.get(i));
        if x != y {
            let lo = i.saturating_sub(6);
            return Err(AlphaMismatch {
                index: i,
                expected: x.cloned().unwrap_or_else(|| "<end>".into()),
                found: y.cloned().unwrap_or_else(|| "<end>".into()),
                context: b[lo..i.min(b.len())].join(" "),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renaming_and_layout_are_ignored() {
        let a = "int fn(){\n int x_1 = 0; /* c */\n while (x_1 > 0) { x_1--; }\n return x_1; }";
        let b = "#include <stdio.h>\nint fn() {\n  int v_7 = 0;\n  while (v_7 > 0) {\n    v_7--;\n  }\n  return v_7;\n}\n";
        assert_eq!(alpha_equivalent(a, b), Ok(()));
    }

    #[test]
    fn different_structure_is_reported() {
        let err = alpha_equivalent("int x_1 = 0; x_1++;", "int v_1 = 0; v_1--;").unwrap_err();
        assert_eq!(err.index, 6);
        assert_eq!((err.expected.as_str(), err.found.as_str()), ("++", "--"));
    }

    #[test]
    fn binding_structure_matters() {
        assert!(alpha_equivalent("x_1 = x_2;", "v_1 = v_1;").is_err());
    }

    #[test]
    fn params_are_not_renamed() {
        assert!(alpha_equivalent("a1[i_1]", "a2[i_1]").is_err());
        assert_eq!(tokenize("printf(\"%d\\n\", x);")[2], "\"%d\\n\"");
    }
}
