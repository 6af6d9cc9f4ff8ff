use crate::error::{Error, Result};
use crate::gf2m::FieldElement;
use crate::reduction::{ThreeDmInstance, Triple};

/// The lexicographically least matching of `inst`, if any.
///
/// Backtracks over first coordinates `1, ..., t` in order, trying the triples for each in
/// sorted order and pruning on used second and third coordinates.
pub fn solve_3dm(inst: &ThreeDmInstance) -> Option<Vec<Triple>> {
    let t = inst.t();
    let mut by_a: Vec<Vec<Triple>> = vec![Vec::new(); t];
    for &tr in inst.triples() {
        by_a[tr.a - 1].push(tr);
    }
    let mut used_b = vec![false; t + 1];
    let mut used_c = vec![false; t + 1];
    let mut chosen = Vec::with_capacity(t);
    search(&by_a, 0, &mut used_b, &mut used_c, &mut chosen).then_some(chosen)
}

fn search(
    by_a: &[Vec<Triple>],
    level: usize,
    used_b: &mut [bool],
    used_c: &mut [bool],
    chosen: &mut Vec<Triple>,
) -> bool {
    if level == by_a.len() {
        return true;
    }
    for &tr in &by_a[level] {
        if used_b[tr.b] || used_c[tr.c] {
            continue;
        }
        used_b[tr.b] = true;
        used_c[tr.c] = true;
        chosen.push(tr);
        if search(by_a, level + 1, used_b, used_c, chosen) {
            return true;
        }
        chosen.pop();
        used_b[tr.b] = false;
        used_c[tr.c] = false;
    }
    false
}

/// Lexicographically least set of `w` positions (zero-based, ascending) whose points sum to
/// `gamma`, by exhaustive search over all `w`-subsets.
pub fn subset_sum_witness(
    points: &[FieldElement],
    w: usize,
    gamma: FieldElement,
) -> Option<Vec<usize>> {
    if w > points.len() {
        return None;
    }
    let mut chosen = Vec::with_capacity(w);
    subset_search(points, w, 0, FieldElement::ZERO, gamma, &mut chosen).then_some(chosen)
}

fn subset_search(
    points: &[FieldElement],
    w: usize,
    start: usize,
    acc: FieldElement,
    gamma: FieldElement,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == w {
        return acc == gamma;
    }
    let remaining = w - chosen.len();
    for i in start..=points.len() - remaining {
        chosen.push(i);
        if subset_search(points, w, i + 1, acc + points[i], gamma, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Largest `t` for which [`block_solution_exhaustive`] runs (`2^(t^3)` candidates).
pub const BLOCK_SEARCH_MAX_T: usize = 3;

/// Exhaustive search for a weight `t^3 + t` solution `v = (v1, v2, v3, v4)` of the blocked
/// system `W v = (1, χ, χ, 1)` over GF(2).
///
/// Every solution has `v2 = χ + v1`, `v3 = v1`, `v4 = 1 + χ`, so only `v1` is enumerated; it is
/// accepted when `U v1 = 1` and the total weight is `t^3 + t`. Returns the lexicographically
/// least accepted `v`.
pub fn block_solution_exhaustive(inst: &ThreeDmInstance) -> Result<Option<Vec<bool>>> {
    let t = inst.t();
    if t > BLOCK_SEARCH_MAX_T {
        return Err(Error::BudgetExceeded {
            what: format!("2^(t^3) candidates for t = {t}"),
        });
    }
    let t3 = t.pow(3);
    let chi = inst.characteristic_vector();
    let chi_mask = chi
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .fold(0u64, |acc, (j, _)| acc | 1 << j);
    let full = (1u64 << t3) - 1;
    let target_u = (1u64 << (3 * t)) - 1;
    let universe = crate::reduction::universe(t);
    let columns: Vec<u64> = universe
        .iter()
        .map(|tr| 1u64 << (tr.a - 1) | 1u64 << (t + tr.b - 1) | 1u64 << (2 * t + tr.c - 1))
        .collect();
    let v4_weight = (full & !chi_mask).count_ones();
    let wanted = (t3 + t) as u32;

    // Gray-code walk over v1; `best` keeps the lexicographically least accepted v1, i.e. the
    // smallest after reversing bit order (position 0 is the most significant).
    let mut v1 = 0u64;
    let mut image = 0u64;
    let mut best: Option<u64> = None;
    let mut consider = |v1: u64, image: u64| {
        if image != target_u {
            return;
        }
        let weight = 2 * v1.count_ones() + (v1 ^ chi_mask).count_ones() + v4_weight;
        if weight == wanted {
            let key = v1.reverse_bits() >> (64 - t3);
            if best.is_none_or(|b| key < b.reverse_bits() >> (64 - t3)) {
                best = Some(v1);
            }
        }
    };
    consider(v1, image);
    for step in 1u64..=full {
        let j = step.trailing_zeros() as usize;
        v1 ^= 1 << j;
        image ^= columns[j];
        consider(v1, image);
    }
    Ok(best.map(|v1| {
        let bit = |mask: u64, j: usize| mask >> j & 1 == 1;
        let mut v = Vec::with_capacity(4 * t3);
        v.extend((0..t3).map(|j| bit(v1, j)));
        v.extend((0..t3).map(|j| bit(v1 ^ chi_mask, j)));
        v.extend((0..t3).map(|j| bit(v1, j)));
        v.extend((0..t3).map(|j| !bit(chi_mask, j)));
        v
    }))
}
