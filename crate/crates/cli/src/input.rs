use thiserror::Error;

/// Most samples accepted in one run.
pub const MAX_SAMPLES: usize = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("input is not valid UTF-8 (byte {0})")]
    NotUtf8(usize),
    #[error("line {line}: cannot parse {token:?} as a number")]
    BadToken { line: usize, token: String },
    #[error("line {line}: {token:?} is not a finite number")]
    NonFinite { line: usize, token: String },
    #[error("input has more than {MAX_SAMPLES} values")]
    TooMany,
}

/// Numbers separated by whitespace or commas; lines whose first non-blank
/// character is `#` are skipped.
pub fn parse_samples(input: &[u8]) -> Result<Vec<f64>, InputError> {
    let text = std::str::from_utf8(input).map_err(|e| InputError::NotUtf8(e.valid_up_to()))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for token in line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let line = i + 1;
            let v: f64 = token.parse().map_err(|_| InputError::BadToken {
                line,
                token: token.to_string(),
            })?;
            if !v.is_finite() {
                return Err(InputError::NonFinite {
                    line,
                    token: token.to_string(),
                });
            }
            if values.len() == MAX_SAMPLES {
                return Err(InputError::TooMany);
            }
            values.push(v);
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_separators_and_comments() {
        let text = b"# header comment\n0 1,2\n  # indented comment\n\t10,\n\n-3.5e1\r\n";
        assert_eq!(
            parse_samples(text).unwrap(),
            vec![0.0, 1.0, 2.0, 10.0, -35.0]
        );
    }

    #[test]
    fn names_line_and_token() {
        let err = parse_samples(b"1 2\n3 x4\n").unwrap_err();
        assert_eq!(
            err,
            InputError::BadToken {
                line: 2,
                token: "x4".into()
            }
        );
        assert_eq!(err.to_string(), "line 2: cannot parse \"x4\" as a number");
        let err = parse_samples(b"1\n\n nan").unwrap_err();
        assert_eq!(
            err,
            InputError::NonFinite {
                line: 3,
                token: "nan".into()
            }
        );
        assert!(matches!(
            parse_samples(b"1 inf"),
            Err(InputError::NonFinite { .. })
        ));
    }

    #[test]
    fn inline_hash_is_an_error() {
        assert!(matches!(
            parse_samples(b"1 # 2"),
            Err(InputError::BadToken { .. })
        ));
    }

    #[test]
    fn empty_and_invalid_utf8() {
        assert_eq!(parse_samples(b"").unwrap(), Vec::<f64>::new());
        assert_eq!(
            parse_samples(b"1 \xff").unwrap_err(),
            InputError::NotUtf8(2)
        );
    }
}
