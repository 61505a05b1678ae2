//! Exhaustive enumeration of `ℙⁿ(F_p)` with machine-word arithmetic.
//!
//! Each projective point is visited once, through the representative whose
//! first nonzero coordinate is 1. Work is split over contiguous index ranges
//! and the results merged in lexicographic order, so output is independent
//! of the thread count.

use std::thread;

/// Largest `pⁿ` accepted by the determinantal and base-locus scans.
pub const SCAN_LIMIT: u128 = 10_000_000;

/// `pⁿ`, saturating; the dominant term of `|ℙⁿ(F_p)|`.
pub fn scan_size(n: usize, p: u64) -> u128 {
    (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Calls `f` on every point of `ℙⁿ(F_p)` and keeps the `Some` results,
/// sorted by point.
pub fn scan_projective<T, F>(n: usize, p: u64, f: F) -> Vec<(Vec<u64>, T)>
where
    T: Send,
    F: Fn(&[u64]) -> Option<T> + Sync,
{
    let threads = thread::available_parallelism().map(|t| t.get()).unwrap_or(1);
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let total = p.pow(free as u32);
        let chunks = if total < 4096 { 1 } else { threads as u64 };
        let step = total.div_ceil(chunks);
        let f = &f;
        let parts: Vec<Vec<(Vec<u64>, T)>> = thread::scope(|scope| {
            let handles: Vec<_> = (0..chunks)
                .map(|c| {
                    let start = c * step;
                    let end = ((c + 1) * step).min(total);
                    scope.spawn(move || scan_range(n, lead, p, start, end, f))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("scan worker")).collect()
        });
        out.extend(parts.into_iter().flatten());
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn scan_range<T, F>(n: usize, lead: usize, p: u64, start: u64, end: u64, f: &F) -> Vec<(Vec<u64>, T)>
where
    F: Fn(&[u64]) -> Option<T>,
{
    let mut out = Vec::new();
    if start >= end {
        return out;
    }
    let mut point = vec![0u64; n + 1];
    point[lead] = 1;
    // free coordinates lead+1..=n hold the base-p digits of the index,
    // most significant first
    let mut rest = start;
    for k in (lead + 1..=n).rev() {
        point[k] = rest % p;
        rest /= p;
    }
    for _ in start..end {
        if let Some(v) = f(&point) {
            out.push((point.clone(), v));
        }
        for k in (lead + 1..=n).rev() {
            point[k] += 1;
            if point[k] < p {
                break;
            }
            point[k] = 0;
        }
    }
    out
}

/// Rank over `GF(p)` of a small dense matrix, destroying its contents.
pub fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::field::pow_mod(rows[rank][c], p - 2, p);
        for i in rank + 1..rows.len() {
            let factor = rows[i][c] * inv % p;
            if factor == 0 {
                continue;
            }
            let (top, bottom) = rows.split_at_mut(i);
            for (x, &y) in bottom[0][c..ncols].iter_mut().zip(&top[rank][c..ncols]) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
