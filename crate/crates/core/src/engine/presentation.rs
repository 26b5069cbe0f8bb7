use std::fmt;

use crate::error::{Error, Result};
use crate::words::Word;

/// A finitely presented quotient of the universal rotation group.
///
/// Only the explicit relators are stored; the relators `(s_i ... s_j)^2`
/// for `1 <= i < j <= n-1` are always implied and are added by
/// [`Presentation::all_relators`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    rank: usize,
    relators: Vec<Word>,
    label: String,
}

impl Presentation {
    pub fn new(rank: usize, relators: Vec<Word>, label: impl Into<String>) -> Result<Self> {
        Word::identity(rank)?;
        if let Some(bad) = relators.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: bad.rank(),
            });
        }
        Ok(Presentation {
            rank,
            relators,
            label: label.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `(s_i ... s_j)^2` for every `1 <= i < j <= rank-1`.
    pub fn implicit_relators(rank: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for i in 1..rank {
            for j in i + 1..rank {
                let tau = Word::tau(i, j, rank).expect("indices in range");
                out.push(tau.pow(2));
            }
        }
        out
    }

    /// Implicit relators followed by the explicit ones, empty words dropped.
    pub fn all_relators(&self) -> Vec<Word> {
        let mut out = Self::implicit_relators(self.rank);
        out.extend(self.relators.iter().filter(|w| !w.is_empty()).cloned());
        out
    }

    /// Relators mapped by the duality map on words.
    pub fn dual(&self) -> Presentation {
        Presentation {
            rank: self.rank,
            relators: self.relators.iter().map(Word::dual).collect(),
            label: format!("dual({})", self.label),
        }
    }

    /// Relators mapped by the enantiomorph map on words.
    pub fn mirror(&self) -> Presentation {
        Presentation {
            rank: self.rank,
            relators: self.relators.iter().map(Word::enantiomorph).collect(),
            label: format!("mirror({})", self.label),
        }
    }

    /// Union of both relator lists over one generating set.
    pub fn comix(&self, other: &Presentation) -> Result<Presentation> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut relators = self.relators.clone();
        for r in &other.relators {
            if !relators.contains(r) {
                relators.push(r.clone());
            }
        }
        Ok(Presentation {
            rank: self.rank,
            relators,
            label: format!("{} # {}", self.label, other.label),
        })
    }

    /// Parses the text file format:
    ///
    /// ```text
    /// rank 3
    /// name {3,6}(1,2)
    /// s1^3
    /// s2^6
    /// (s1 s2^-1 s1^-1 s2)^1 (s2 s1 s2^-1 s1^-1)^2
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty presentation".into(),
        })?;
        let rank: usize = first
            .strip_prefix("rank")
            .map(str::trim)
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `rank <n>`, found {first:?}"),
            })?;

        let (line_no, second) = lines.next().ok_or(Error::Parse {
            line: line_no + 1,
            message: "missing `name` line".into(),
        })?;
        let label = second
            .strip_prefix("name")
            .map(|s| s.trim().to_string())
            .ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `name <label>`, found {second:?}"),
            })?;

        let mut relators = Vec::new();
        for (line_no, line) in lines {
            let word = Word::parse(line, rank).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    line: line_no,
                    message,
                },
                other => other,
            })?;
            relators.push(word);
        }
        Presentation::new(rank, relators, label)
    }

    /// Inverse of [`Presentation::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("rank {}\nname {}\n", self.rank, self.label);
        for r in &self.relators {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = <s1..s{} | ", self.label, self.rank - 1)?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(">")
    }
}
