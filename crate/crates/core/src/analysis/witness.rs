use std::f64::consts::PI;

use crate::error::{Error, Result};

fn is_integer(t: f64) -> bool {
    (t - t.round()).abs() <= 1e-12
}

/// max over |n| <= n_max of |2λ sin(πn(α₁+α₂) + 2πθ) sin(πn(α₁−α₂))|, a lower
/// bound for the norm distance between Harper operators at two frequencies.
pub fn alpha_jump_witness(
    lambda: f64,
    alpha1: f64,
    alpha2: f64,
    theta: f64,
    n_max: u64,
) -> Result<f64> {
    if [lambda, alpha1, alpha2, theta]
        .iter()
        .any(|v| !v.is_finite())
    {
        return Err(Error::NonFinite);
    }
    if [alpha1, alpha2, alpha1 + alpha2, alpha1 - alpha2]
        .into_iter()
        .any(is_integer)
    {
        return Err(Error::DegenerateAlphas);
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let (s, d) = (alpha1 + alpha2, alpha1 - alpha2);
    let n = n_max as i64;
    Ok((-n..=n)
        .map(|k| {
            let k = k as f64;
            (2.0 * lambda * (PI * k * s + 2.0 * PI * theta).sin() * (PI * k * d).sin()).abs()
        })
        .fold(0.0, f64::max))
}
