use super::net::NetSpec;
use super::order::order_converges_monotone;
use super::topological::converges_to;
use super::verdict::{Policy, Verdict};
use crate::error::{Error, Result};
use crate::lattice::LatticeElement;
use crate::topology::{tau_prime, TopologySpec};

#[derive(Clone, Debug, PartialEq)]
pub struct LebesgueRow {
    pub net: String,
    pub under_tau: Verdict,
    pub under_tau_prime: Verdict,
}

/// Evidence for "τ is Lebesgue iff τ′ is Lebesgue" on a family of nets.
#[derive(Clone, Debug, PartialEq)]
pub struct LebesgueReport {
    pub tau: String,
    pub tau_prime: String,
    pub rows: Vec<LebesgueRow>,
}

impl LebesgueReport {
    pub fn lebesgue_tau(&self) -> bool {
        self.rows.iter().all(|r| r.under_tau.converges())
    }

    pub fn lebesgue_tau_prime(&self) -> bool {
        self.rows.iter().all(|r| r.under_tau_prime.converges())
    }

    pub fn biconditional_holds(&self) -> bool {
        self.lebesgue_tau() == self.lebesgue_tau_prime()
    }
}

/// Run every decreasing null net under `tau` and under `tau_prime(tau, probes)`.
pub fn lebesgue_probe(
    tau: &TopologySpec,
    probes: &[LatticeElement],
    nets: &[NetSpec],
    policy: &Policy,
) -> Result<LebesgueReport> {
    let prime = tau_prime(tau, probes)?;
    let mut rows = Vec::with_capacity(nets.len());
    for net in nets {
        if !net.monotonicity()?.is_decreasing() {
            return Err(Error::NotMonotone(format!("{net} is not decreasing")));
        }
        let zero = net.space().zero();
        if !order_converges_monotone(net, &zero, policy)?.converges() {
            return Err(Error::NotNull(net.to_string()));
        }
        rows.push(LebesgueRow {
            net: net.to_string(),
            under_tau: converges_to(net, &zero, tau, policy)?,
            under_tau_prime: converges_to(net, &zero, &prime, policy)?,
        });
    }
    Ok(LebesgueReport { tau: tau.to_string(), tau_prime: prime.to_string(), rows })
}
