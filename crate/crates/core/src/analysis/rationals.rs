use crate::operators::{gcd, RationalAlpha};

/// Consecutive Fibonacci ratios 1/2, 2/3, 3/5, … approximating (√5 − 1)/2.
pub fn golden_convergents(count: usize) -> Vec<RationalAlpha> {
    let (mut p, mut q) = (1u64, 2u64);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(RationalAlpha::new(p, q).expect("consecutive Fibonacci numbers are coprime"));
        let Some(next) = p.checked_add(q) else { break };
        (p, q) = (q, next);
    }
    out
}

/// Reduced fractions p/q with 0 < p < q <= q_max, ascending.
pub fn farey_rationals(q_max: u64) -> Vec<RationalAlpha> {
    let mut out: Vec<RationalAlpha> = (2..=q_max)
        .flat_map(|q| (1..q).filter(move |&p| gcd(p, q) == 1).map(move |p| (p, q)))
        .map(|(p, q)| RationalAlpha::new(p, q).expect("filtered to reduced fractions"))
        .collect();
    out.sort_by(|a, b| (a.p() as u128 * b.q() as u128).cmp(&(b.p() as u128 * a.q() as u128)));
    out
}
