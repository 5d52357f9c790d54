use serde::{Deserialize, Serialize};

/// One named pass/fail check inside a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Check that two displayable values are equal, recording both.
    pub fn equal<T: PartialEq + std::fmt::Display>(
        name: impl Into<String>,
        got: &T,
        want: &T,
    ) -> Self {
        let passed = got == want;
        let detail = if passed {
            format!("{got}")
        } else {
            format!("got {got}, expected {want}")
        };
        Check::new(name, passed, detail)
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
