use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked law: whether it held and, if not, a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawRow {
    pub law: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl LawRow {
    pub fn pass(law: impl Into<String>) -> Self {
        LawRow {
            law: law.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(law: impl Into<String>, witness: impl Into<String>) -> Self {
        LawRow {
            law: law.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    /// Passing row when `witness` is `None`, failing row carrying it otherwise.
    pub fn from_witness(law: impl Into<String>, witness: Option<String>) -> Self {
        LawRow {
            law: law.into(),
            pass: witness.is_none(),
            witness,
        }
    }

    pub fn check(law: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            LawRow::pass(law)
        } else {
            LawRow::fail(law, witness())
        }
    }
}

/// An ordered list of law rows; serializes as a plain JSON array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report(pub Vec<LawRow>);

impl Report {
    pub fn new() -> Self {
        Report(Vec::new())
    }

    pub fn push(&mut self, row: LawRow) {
        self.0.push(row);
    }

    pub fn extend(&mut self, other: Report) {
        self.0.extend(other.0);
    }

    pub fn all_pass(&self) -> bool {
        self.0.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRow> {
        self.0.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, law: &str) -> Option<&LawRow> {
        self.0.iter().find(|r| r.law == law)
    }

    pub fn rows(&self) -> &[LawRow] {
        &self.0
    }
}

impl FromIterator<LawRow> for Report {
    fn from_iter<I: IntoIterator<Item = LawRow>>(iter: I) -> Self {
        Report(iter.into_iter().collect())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let status = if row.pass { "pass" } else { "FAIL" };
            match &row.witness {
                Some(w) => writeln!(f, "{status} {} ({w})", row.law)?,
                None => writeln!(f, "{status} {}", row.law)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r: Report = [LawRow::pass("a"), LawRow::fail("b", "x=1")]
            .into_iter()
            .collect();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(
            text,
            r#"[{"law":"a","pass":true,"witness":null},{"law":"b","pass":false,"witness":"x=1"}]"#
        );
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }
}
