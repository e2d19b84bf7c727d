//! Line-oriented `key=value` records.
//!
//! Values made only of "plain" characters are written bare; anything else is
//! double-quoted with `\\`, `\"` and `\n` escapes.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecordError {
    #[error("malformed record near `{0}`")]
    Malformed(String),
    #[error("missing field `{0}`")]
    Missing(String),
    #[error("field `{key}`: {message}")]
    BadField { key: String, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

fn is_plain(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_-+/.,:()<>".contains(c)
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, RecordError> {
        self.get(key)
            .ok_or_else(|| RecordError::Missing(key.into()))
    }

    /// Parses `key` with `FromStr`, mapping errors into [`RecordError`].
    pub fn parse_field<T>(&self, key: &str) -> Result<T, RecordError>
    where
        T: std::str::FromStr,
        T::Err: fmt::Display,
    {
        self.require(key)?
            .parse()
            .map_err(|e: T::Err| RecordError::BadField {
                key: key.into(),
                message: e.to_string(),
            })
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn parse(line: &str) -> Result<Self, RecordError> {
        let mut fields = Vec::new();
        let mut chars = line.chars().peekable();
        loop {
            while chars.peek() == Some(&' ') {
                chars.next();
            }
            if chars.peek().is_none() {
                break;
            }
            let mut key = String::new();
            for c in chars.by_ref() {
                if c == '=' {
                    break;
                }
                key.push(c);
            }
            if key.is_empty() || !key.chars().all(is_plain) {
                return Err(RecordError::Malformed(key));
            }
            let mut value = String::new();
            if chars.peek() == Some(&'"') {
                chars.next();
                let mut closed = false;
                while let Some(c) = chars.next() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match chars.next() {
                            Some('n') => value.push('\n'),
                            Some(e @ ('\\' | '"')) => value.push(e),
                            _ => return Err(RecordError::Malformed(key)),
                        },
                        c => value.push(c),
                    }
                }
                if !closed {
                    return Err(RecordError::Malformed(key));
                }
            } else {
                while let Some(&c) = chars.peek() {
                    if c == ' ' {
                        break;
                    }
                    value.push(c);
                    chars.next();
                }
            }
            fields.push((key, value));
        }
        Ok(Record { fields })
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if !v.is_empty() && v.chars().all(is_plain) {
                write!(f, "{k}={v}")?;
            } else {
                let escaped = v
                    .replace('\\', "\\\\")
                    .replace('"', "\\\"")
                    .replace('\n', "\\n");
                write!(f, "{k}=\"{escaped}\"")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quoting() {
        let r = Record::new()
            .with("law", "closure")
            .with("f", "DDF v1\njump 3/2 1")
            .with("empty", "");
        let line = r.to_string();
        assert_eq!(line, "law=closure f=\"DDF v1\\njump 3/2 1\" empty=\"\"");
        assert_eq!(Record::parse(&line).unwrap(), r);
    }

    #[test]
    fn rejects_unterminated_quote() {
        assert!(Record::parse("a=\"open").is_err());
        assert!(Record::parse("=x").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(values in proptest::collection::vec(".{0,12}", 1..5)) {
            let mut r = Record::new();
            for (i, v) in values.iter().enumerate() {
                r.push(&format!("k{i}"), v);
            }
            prop_assert_eq!(Record::parse(&r.to_string()).unwrap(), r);
        }
    }
}
