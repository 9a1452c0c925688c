use std::collections::BTreeSet;

use crate::data::UserId;
use crate::error::{ensure, Result};
use crate::rank::RankedList;

fn check(accepted: &BTreeSet<UserId>) -> Result<()> {
    ensure!(!accepted.is_empty(), Contract, "accepted set is empty");
    Ok(())
}

/// `1 / r` for the first accepted user at 1-based rank `r`; 0 if none appears.
pub fn reciprocal_rank(list: &RankedList, accepted: &BTreeSet<UserId>) -> Result<f64> {
    check(accepted)?;
    Ok(list
        .users()
        .position(|u| accepted.contains(&u))
        .map_or(0.0, |p| 1.0 / (p + 1) as f64))
}

/// Precision at each hit within the top `cutoff`, summed and divided by
/// `min(cutoff, |accepted|)`.
pub fn average_precision_at_k(list: &RankedList, accepted: &BTreeSet<UserId>, cutoff: usize) -> Result<f64> {
    check(accepted)?;
    ensure!(cutoff >= 1, Contract, "cutoff must be >= 1");
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, user) in list.users().take(cutoff).enumerate() {
        if accepted.contains(&user) {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    Ok(sum / cutoff.min(accepted.len()) as f64)
}

/// Binary-gain NDCG with a `log2(i + 1)` discount.
pub fn ndcg_at_k(list: &RankedList, accepted: &BTreeSet<UserId>, cutoff: usize) -> Result<f64> {
    check(accepted)?;
    ensure!(cutoff >= 1, Contract, "cutoff must be >= 1");
    let discount = |i: usize| 1.0 / ((i + 2) as f64).log2();
    let dcg: f64 = list
        .users()
        .take(cutoff)
        .enumerate()
        .filter(|(_, u)| accepted.contains(u))
        .map(|(i, _)| discount(i))
        .sum();
    let ideal: f64 = (0..cutoff.min(accepted.len())).map(discount).sum();
    Ok(dcg / ideal)
}
