//! Wire formats: rationals as `num/den` strings (never floats), series and
//! polynomials in the input grammar, reports as JSON arrays.

use serde::{Deserialize, Serialize};

use mlv_core::exactmath::FieldTower;
use mlv_core::polyring::{CertifiedVal, Poly};
use mlv_core::tower::CheckRecord;

/// Result of an `eval` invocation.
#[derive(Serialize, Deserialize, Debug)]
pub struct EvalOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_least: Option<String>,
}

impl EvalOut {
    pub fn from_val(v: &CertifiedVal) -> (EvalOut, bool) {
        match v {
            CertifiedVal::Exact(x) => (
                EvalOut { value: Some(x.wire()), at_least: None },
                true,
            ),
            CertifiedVal::LowerBound(b) => (
                EvalOut { value: None, at_least: Some(b.wire()) },
                false,
            ),
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CheckOut {
    pub suite: String,
    pub check_id: String,
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
}

impl CheckOut {
    pub fn from_record(r: &CheckRecord) -> CheckOut {
        let error = match &r.status {
            mlv_core::tower::CheckStatus::Error(e) => Some(e.clone()),
            _ => None,
        };
        CheckOut {
            suite: r.suite.clone(),
            check_id: r.check_id.clone(),
            inputs: r.inputs.clone(),
            expected: r.expected.clone(),
            computed: r.computed.clone(),
            status: r.status.label().to_string(),
            error,
            millis: r.millis,
        }
    }
}

/// One node of the emitted MacLane-Vaquie chain.
#[derive(Serialize, Deserialize, Debug)]
pub struct ChainLevelOut {
    pub n: u32,
    pub kind: String,
    pub degree: usize,
    /// Full grammar rendering; reparses to the same polynomial.
    pub phi: String,
    /// Display rendering, elided past the display bound.
    pub phi_display: String,
    pub phi_ellipsis: bool,
    /// Precision of the constant coefficient (`"inf"` when exact).
    pub phi_precision: String,
    pub gamma: String,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct ChainOut {
    pub p: u32,
    pub levels: Vec<ChainLevelOut>,
    pub validation: Vec<CheckOut>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct PhiOut {
    pub n: u32,
    pub degree: usize,
    pub psi: String,
    pub phi: String,
    pub gamma: Option<String>,
}

/// Bounded rendering: at most `max_terms` series terms per coefficient.
/// Returns the display string and whether anything was elided.
pub fn render_poly_display(f: &Poly, tw: &FieldTower, max_terms: usize) -> (String, bool) {
    let mut elided = false;
    let mut parts: Vec<String> = Vec::new();
    let Some(deg) = f.degree() else {
        return ("0".to_string(), false);
    };
    for k in (0..=deg).rev() {
        let c = f.coeff(k);
        if c.is_exact_zero() {
            continue;
        }
        let (ctext, celided) = if c.terms().len() > max_terms {
            let truncated = mlv_core::series::PuiseuxSeries::from_terms(
                c.terms()[..max_terms].to_vec(),
                c.precision().clone(),
                tw,
            );
            (format!("{} + ...", truncated.render(tw)), true)
        } else {
            (c.render(tw), false)
        };
        elided |= celided;
        let needs_parens = c.terms().len() > 1 || celided;
        let body = if needs_parens { format!("({ctext})") } else { ctext };
        let part = match k {
            0 => body,
            1 if c == mlv_core::series::PuiseuxSeries::one(tw) => "x".to_string(),
            1 => format!("{body}*x"),
            _ if c == mlv_core::series::PuiseuxSeries::one(tw) => format!("x^{k}"),
            _ => format!("{body}*x^{k}"),
        };
        parts.push(part);
    }
    (parts.join(" + "), elided)
}
