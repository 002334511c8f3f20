use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::exactmath::Rat;
use crate::polyring::Poly;
use crate::valuations::Valuation;
use crate::{Caps, Error};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepKind {
    Ordinary,
    Limit,
}

impl StepKind {
    pub fn label(&self) -> &'static str {
        match self {
            StepKind::Ordinary => "ordinary",
            StepKind::Limit => "limit",
        }
    }
}

/// One augmentation step of a MacLane-Vaquie chain. Step 0 is the depth-zero
/// base node `[v; phi_0, gamma_0]`, recorded with kind `Ordinary`.
#[derive(Clone)]
pub struct ChainStep {
    pub kind: StepKind,
    pub phi: Poly,
    pub gamma: Rat,
    pub degree: usize,
}

/// A recorded MacLane-Vaquie chain: per-step kind, key polynomial, assigned
/// value and node degree.
#[derive(Clone, Default)]
pub struct MLVChain {
    pub steps: Vec<ChainStep>,
}

/// One validation check with its verdict.
#[derive(Clone, Debug)]
pub struct ChainCheck {
    pub id: String,
    pub ok: bool,
    pub detail: String,
}

/// Validates a chain record against realizing valuations.
///
/// Checks, per step: the recorded degree matches both `deg(phi_n)` and the
/// realizer's degree; `mu_n(phi_n) = gamma_n`; the degree rules per step
/// kind (ordinary steps strictly increase degree, limit steps augment a
/// family of the previous stable degree); and the MacLane-Vaquie condition
/// `mu_n(phi_n) = mu_{n+1}(phi_n)` (the key polynomial of a node is not a
/// tangent direction of the next augmentation).
pub fn chain_validate(
    chain: &MLVChain,
    valuations: &[Valuation],
    caps: &Caps,
) -> Result<Vec<ChainCheck>, Error> {
    let mut checks = Vec::new();
    if chain.steps.len() != valuations.len() {
        checks.push(ChainCheck {
            id: String::from("chain/shape"),
            ok: false,
            detail: format!(
                "{} steps but {} valuations",
                chain.steps.len(),
                valuations.len()
            ),
        });
        return Ok(checks);
    }
    for (n, (step, mu)) in chain.steps.iter().zip(valuations.iter()).enumerate() {
        let deg_phi = step.phi.degree().unwrap_or(0);
        checks.push(ChainCheck {
            id: format!("chain/{n}/degree"),
            ok: deg_phi == step.degree && mu.degree() == step.degree,
            detail: format!(
                "recorded degree {}, deg(phi) = {deg_phi}, realizer degree {}",
                step.degree,
                mu.degree()
            ),
        });
        let v = mu.exact_value(&step.phi, caps)?;
        checks.push(ChainCheck {
            id: format!("chain/{n}/gamma"),
            ok: v == step.gamma,
            detail: format!("mu_{n}(phi_{n}) = {v}, recorded gamma_{n} = {}", step.gamma),
        });
    }
    for n in 0..chain.steps.len().saturating_sub(1) {
        let cur = &chain.steps[n];
        let next = &chain.steps[n + 1];
        let ok = match next.kind {
            StepKind::Ordinary => cur.degree < next.degree,
            StepKind::Limit => {
                let family_deg = match &valuations[n + 1] {
                    Valuation::Limit { family, .. } => Some(family.stable_degree()),
                    _ => None,
                };
                cur.degree <= next.degree && family_deg.is_none_or(|d| d == cur.degree)
            }
        };
        checks.push(ChainCheck {
            id: format!("chain/{n}->{}/degree-rule", n + 1),
            ok,
            detail: format!(
                "{} step: degrees {} -> {}",
                next.kind.label(),
                cur.degree,
                next.degree
            ),
        });
        let here = valuations[n].exact_value(&cur.phi, caps)?;
        let there = valuations[n + 1].exact_value(&cur.phi, caps)?;
        checks.push(ChainCheck {
            id: format!("chain/{n}->{}/mlv-condition", n + 1),
            ok: here == there,
            detail: format!("mu_{n}(phi_{n}) = {here}, mu_{}(phi_{n}) = {there}", n + 1),
        });
    }
    Ok(checks)
}
