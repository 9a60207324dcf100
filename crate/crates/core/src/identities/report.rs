use num_complex::Complex64;
use serde::Serialize;

use crate::numeric::cjson::ComplexJson;
use crate::params::ModelParams;

/// Below this both sides count as zero and the deviation is absolute.
pub const ZERO_FLOOR: f64 = 1e-12;

/// One identity evaluated at one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub p: ComplexJson,
    pub a: ComplexJson,
    #[serde(rename = "N")]
    pub n: usize,
    pub x: Vec<ComplexJson>,
    pub lhs: ComplexJson,
    pub rhs: ComplexJson,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn new(
        identity: &str,
        params: &ModelParams,
        a: Complex64,
        xs: &[Complex64],
        lhs: Complex64,
        rhs: Complex64,
    ) -> Self {
        let deviation = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(ZERO_FLOOR);
        IdentityReport {
            identity: identity.to_string(),
            p: params.p.into(),
            a: a.into(),
            n: xs.len(),
            x: xs.iter().map(|&z| z.into()).collect(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            deviation,
            tolerance: params.tolerance,
            pass: deviation <= params.tolerance,
            note: None,
        }
    }

    /// Measures the deviation against `scale` when both sides are smaller, for identities whose sides
    /// are sums of larger cancelling terms.
    pub fn relative_to(mut self, scale: f64) -> Self {
        let (l, r) = (Complex64::from(self.lhs), Complex64::from(self.rhs));
        self.deviation = (l - r).norm() / l.norm().max(r.norm()).max(scale).max(ZERO_FLOOR);
        self.pass = self.deviation <= self.tolerance;
        self
    }

    /// Folds a companion check in: the worse deviation wins.
    pub(crate) fn absorb(mut self, other: &IdentityReport) -> Self {
        self.deviation = self.deviation.max(other.deviation);
        self.pass = self.deviation <= self.tolerance;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
