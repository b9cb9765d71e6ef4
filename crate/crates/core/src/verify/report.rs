use std::fmt;

use crate::qseries::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Consistent with the claim, but not proven by the computation.
    Uncertified,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Uncertified => "uncertified",
        }
    }

    pub fn parse(s: &str) -> Option<CheckStatus> {
        match s {
            "pass" => Some(CheckStatus::Pass),
            "fail" => Some(CheckStatus::Fail),
            "uncertified" => Some(CheckStatus::Uncertified),
            _ => None,
        }
    }

    pub fn from_bool(ok: bool) -> CheckStatus {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    /// Short identifier without spaces, used in `CHECK` lines.
    pub id: String,
    pub description: String,
    pub status: CheckStatus,
    /// Serialized values backing the verdict, on one line.
    pub witness: String,
}

/// Outcome of one verification run, with every parameter that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
    pub params: Vec<(String, String)>,
    /// `(X, b, density)` rows, when the run measures densities.
    pub densities: Vec<(u64, u32, Rational)>,
}

impl VerificationReport {
    pub fn new(name: &str) -> VerificationReport {
        VerificationReport { name: name.to_string(), checks: Vec::new(), params: Vec::new(), densities: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, id: &str, description: &str, status: CheckStatus, witness: impl Into<String>) {
        let witness: String = witness.into();
        self.checks.push(Check {
            id: id.replace(char::is_whitespace, "_"),
            description: description.to_string(),
            status,
            witness: witness.replace('\n', " "),
        });
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// `Fail` if any check failed, else `Uncertified` if any is, else `Pass`.
    /// An empty report passes.
    pub fn status(&self) -> CheckStatus {
        let has = |s| self.checks.iter().any(|c| c.status == s);
        if has(CheckStatus::Fail) {
            CheckStatus::Fail
        } else if has(CheckStatus::Uncertified) {
            CheckStatus::Uncertified
        } else {
            CheckStatus::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() != CheckStatus::Fail
    }

    /// `CHECK <report>/<id> <status> <witness>`, one per check.
    pub fn check_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("CHECK {}/{} {} {}\n", self.name, c.id, c.status, c.witness));
        }
        s
    }

    pub fn density_csv(&self) -> String {
        let mut s = String::from("X,b,density\n");
        for (x, b, d) in &self.densities {
            let v = num_traits::ToPrimitive::to_f64(d).unwrap_or(f64::NAN);
            s.push_str(&format!("{x},{b},{v}\n"));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("report {} ({})\n", self.name, self.status());
        for (k, v) in &self.params {
            s.push_str(&format!("  param {k} = {v}\n"));
        }
        for c in &self.checks {
            s.push_str(&format!("  [{}] {}: {}\n", c.status, c.id, c.description));
        }
        s.push_str(&self.check_lines());
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
