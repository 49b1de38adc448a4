use std::fmt;

use serde::{Deserialize, Serialize};

/// Three-valued answer to a yes/no question about a manifold or embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// A verdict together with the reason it was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub verdict: Verdict,
    pub reason: String,
}

impl Finding {
    pub fn new(verdict: Verdict, reason: impl Into<String>) -> Self {
        Finding {
            verdict,
            reason: reason.into(),
        }
    }

    pub fn yes(reason: impl Into<String>) -> Self {
        Self::new(Verdict::Yes, reason)
    }

    pub fn no(reason: impl Into<String>) -> Self {
        Self::new(Verdict::No, reason)
    }

    pub fn undetermined(reason: impl Into<String>) -> Self {
        Self::new(Verdict::Undetermined, reason)
    }

    pub fn is_yes(&self) -> bool {
        self.verdict.is_yes()
    }
}
