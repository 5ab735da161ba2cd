use crate::algebra::{fmt_scalar, Poly, Scalar};
use serde::Serialize;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

pub type Params = BTreeMap<String, String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One exact check. `status` is `Pass` iff `lhs == rhs` for equality checks.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub witness: Map<String, Value>,
    #[serde(skip)]
    pub sample: usize,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, params: &Params, status: Status) -> Self {
        CheckReport {
            check: check.into(),
            params: params.clone(),
            status,
            lhs: String::new(),
            rhs: String::new(),
            witness: Map::new(),
            sample: 0,
        }
    }

    pub fn equality(check: impl Into<String>, params: &Params, lhs: &Scalar, rhs: &Scalar) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        let mut r = CheckReport::new(check, params, status);
        r.lhs = fmt_scalar(lhs);
        r.rhs = fmt_scalar(rhs);
        r
    }

    /// Passes iff the residual polynomial is identically zero.
    pub fn zero_poly(check: impl Into<String>, params: &Params, residual: &Poly) -> Self {
        let status = if residual.is_zero() {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut r = CheckReport::new(check, params, status);
        r.lhs = residual.digest();
        r.rhs = Poly::zero().digest();
        r
    }

    pub fn truth(check: impl Into<String>, params: &Params, ok: bool) -> Self {
        let mut r = CheckReport::new(check, params, if ok { Status::Pass } else { Status::Fail });
        r.lhs = ok.to_string();
        r.rhs = "true".into();
        r
    }

    pub fn skip(check: impl Into<String>, params: &Params, reason: impl Into<String>) -> Self {
        CheckReport::new(check, params, Status::Skip).with("reason", reason.into())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.witness.insert(key.to_string(), value.into());
        self
    }

    pub fn with_scalar(self, key: &str, value: &Scalar) -> Self {
        self.with(key, fmt_scalar(value))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Order-normalize: by check name, then sample index (stable otherwise).
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| a.check.cmp(&b.check).then(a.sample.cmp(&b.sample)));
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

pub fn tally(reports: &[CheckReport]) -> Tally {
    reports.iter().fold(Tally::default(), |mut t, r| {
        match r.status {
            Status::Pass => t.pass += 1,
            Status::Fail => t.fail += 1,
            Status::Skip => t.skip += 1,
        }
        t
    })
}
