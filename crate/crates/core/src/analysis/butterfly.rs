use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operators::{OperatorKind, OperatorParams, ThetaScope};
use crate::spectra::{eigenphases, mother_spectrum, GridSpec, SpectrumKind};

use super::rationals::farey_rationals;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ButterflyRow {
    pub p: u64,
    pub q: u64,
    /// Eigenphase, or the real eigenvalue for kind H.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ButterflyDataset {
    pub kind: OperatorKind,
    pub kappa: f64,
    pub lambda: f64,
    pub q_max: u64,
    pub grid_n: usize,
    pub rows: Vec<ButterflyRow>,
}

/// Mother spectra for every Farey fraction up to q_max, on an n×n grid with
/// n = max(1, round(grid_n / q)) so each α costs about the same.
pub fn butterfly(
    kind: OperatorKind,
    kappa: f64,
    lambda: f64,
    q_max: u64,
    grid_n: usize,
) -> Result<ButterflyDataset> {
    let mut rows = Vec::new();
    for alpha in farey_rationals(q_max) {
        let params = OperatorParams::new(kind, kappa, lambda, alpha, ThetaScope::Mother)?;
        let n = ((grid_n as f64 / alpha.q() as f64).round() as usize).max(1);
        let s = mother_spectrum(&params, &GridSpec::square(n)?)?;
        let values = match s.kind() {
            SpectrumKind::RealLine => s.real_values(),
            SpectrumKind::UnitCircle => eigenphases(&s)?,
        };
        rows.extend(values.into_iter().map(|value| ButterflyRow {
            p: alpha.p(),
            q: alpha.q(),
            value,
        }));
    }
    rows.sort_by(|a, b| {
        a.q.cmp(&b.q)
            .then(a.p.cmp(&b.p))
            .then(a.value.total_cmp(&b.value))
    });
    let kappa = if kind == OperatorKind::H { 0.0 } else { kappa };
    Ok(ButterflyDataset {
        kind,
        kappa,
        lambda,
        q_max,
        grid_n,
        rows,
    })
}
