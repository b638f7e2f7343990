//! Verdicts shared by every check and the key-sorted JSON rendering.

use serde::Serialize;

/// Outcome of a check. When verdicts are combined the worst one wins:
/// fail, then refused, then inconclusive, then pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
    Inconclusive,
}

impl Status {
    fn rank(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Inconclusive => 1,
            Status::Refused => 2,
            Status::Fail => 3,
        }
    }

    pub fn from_bool(passed: bool) -> Status {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn combine(self, other: Status) -> Status {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }

    /// Process exit code: 0 pass, 1 fail, 2 refused, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Refused => 2,
            Status::Inconclusive => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Refused => "refused",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl FromIterator<Status> for Status {
    fn from_iter<I: IntoIterator<Item = Status>>(iter: I) -> Status {
        iter.into_iter().fold(Status::Pass, Status::combine)
    }
}

/// Pretty JSON with object keys sorted, so equal reports print identically.
pub fn to_sorted_json<T: Serialize>(value: &T) -> crate::Result<String> {
    // serde_json's default map is ordered by key
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        use Status::*;
        assert_eq!([Pass, Inconclusive].into_iter().collect::<Status>(), Inconclusive);
        assert_eq!([Inconclusive, Refused, Pass].into_iter().collect::<Status>(), Refused);
        assert_eq!([Refused, Fail].into_iter().collect::<Status>(), Fail);
        assert_eq!(std::iter::empty::<Status>().collect::<Status>(), Pass);
    }

    #[test]
    fn json_keys_are_sorted() {
        #[derive(Serialize)]
        struct R {
            zeta: u8,
            alpha: u8,
        }
        let s = to_sorted_json(&R { zeta: 1, alpha: 2 }).unwrap();
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
    }
}
