//! Enumeration of all origamis with `n` squares in a given stratum.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::OrigamiError;
use crate::origami::{make_origami, stratum_of, Origami, StratumSignature};
use crate::perm::Permutation;

/// Largest square count accepted by [`generate_stratum_origamis`]; the search
/// visits `p(n)·n!` pairs.
pub const MAX_GENERATE_N: usize = 11;

/// Integer partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The permutation with consecutive cycles `(0 … k₁−1)(k₁ …)…` of the given lengths.
pub fn cycle_type_representative(parts: &[usize]) -> Permutation {
    let n: usize = parts.iter().sum();
    let mut images = vec![0u32; n];
    let mut start = 0;
    for &len in parts {
        for k in 0..len {
            images[start + k] = (start + (k + 1) % len) as u32;
        }
        start += len;
    }
    Permutation::from_images(images).expect("cycles are disjoint")
}

/// Advances `xs` to the next permutation in lexicographic order.
fn next_permutation(xs: &mut [u32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("exists");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Cycle type of `h∘v∘h⁻¹∘v⁻¹` computed without allocating permutations.
fn commutator_zero_orders(h: &[u32], h_inv: &[u32], v: &[u32], v_inv: &[u32], seen: &mut [bool]) -> Vec<u32> {
    let n = h.len();
    seen.iter_mut().for_each(|s| *s = false);
    let mut orders = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = h[v[h_inv[v_inv[x] as usize] as usize] as usize] as usize;
        }
        if len > 1 {
            orders.push(len as u32 - 1);
        }
    }
    orders.sort_unstable_by(|a, b| b.cmp(a));
    orders
}

/// All isomorphism classes of connected origamis with `n` squares in stratum
/// `sig`, as canonical forms sorted by encoding.
pub fn generate_stratum_origamis(n: usize, sig: &StratumSignature) -> Result<Vec<Origami>, OrigamiError> {
    if n == 0 {
        return Err(OrigamiError::Empty);
    }
    if n > MAX_GENERATE_N {
        return Err(OrigamiError::InfeasibleSize(format!(
            "n = {n} exceeds the enumeration budget of {MAX_GENERATE_N} squares"
        )));
    }
    if sig.singular_corner_count() > n {
        return Ok(Vec::new());
    }

    let cells: Vec<(Vec<usize>, u32)> = partitions(n)
        .into_iter()
        .flat_map(|p| (0..n as u32).map(move |first| (p.clone(), first)))
        .collect();

    let found: Vec<HashSet<Origami>> = cells
        .par_iter()
        .map(|(parts, first)| {
            let h = cycle_type_representative(parts);
            let h_inv = h.inverse();
            let mut local = HashSet::new();
            let mut seen = vec![false; n];
            let mut v: Vec<u32> = std::iter::once(*first)
                .chain((0..n as u32).filter(|x| x != first))
                .collect();
            let mut v_inv = vec![0u32; n];
            loop {
                for (i, &x) in v.iter().enumerate() {
                    v_inv[x as usize] = i as u32;
                }
                let orders = commutator_zero_orders(h.images(), h_inv.images(), &v, &v_inv, &mut seen);
                if orders == sig.zero_orders {
                    if let Ok(o) = make_origami(h.clone(), Permutation::from_images_unchecked(v.clone())) {
                        local.insert(o.canonical_form());
                    }
                }
                if !next_permutation(&mut v[1..]) {
                    break;
                }
            }
            local
        })
        .collect();

    let mut all: HashSet<Origami> = HashSet::new();
    for set in found {
        all.extend(set);
    }
    let mut out: Vec<Origami> = all.into_iter().collect();
    out.sort();
    debug_assert!(out.iter().all(|o| &stratum_of(o) == sig));
    Ok(out)
}
