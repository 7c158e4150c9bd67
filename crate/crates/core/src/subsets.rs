//! Lexicographic k-subset enumeration and a deterministic parallel scan.
//!
//! Work is split into fixed lexicographic blocks claimed by rayon workers.
//! Each block reports its first failing rank and its local minimum; the merge
//! takes the smallest failing rank and the global minimum, so the outcome does
//! not depend on the number of threads.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

/// Ranks per work block.
const BLOCK: u64 = 512;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        let remaining = (k - slot - 1) as u64;
        loop {
            let c = binomial((n - next - 1) as u64, remaining);
            if rank < c {
                break;
            }
            rank -= c;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Lexicographic rank of a sorted k-subset of `0..n`.
pub fn rank_of(n: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (slot, &v) in subset.iter().enumerate() {
        for skipped in prev..v {
            rank += binomial((n - skipped - 1) as u64, (k - slot - 1) as u64);
        }
        prev = v + 1;
    }
    rank
}

/// Advances `subset` to its lexicographic successor; false when exhausted.
pub fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Iterator over all k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut nxt = out.clone();
        cur = if next_subset(&mut nxt, n) { Some(nxt) } else { None };
        Some(out)
    })
}

/// Runs `f` on a dedicated pool with `threads` workers (0 = all cores).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(f)
}

/// Smallest index in `0..total` for which `check` fails (returns false), or
/// the first error at an index not after any failure. Deterministic for any
/// number of threads.
pub fn first_failing_index<E, F>(total: usize, threads: usize, check: F) -> Result<Option<usize>, E>
where
    E: Send,
    F: Fn(usize) -> Result<bool, E> + Sync,
{
    let found = with_threads(threads, || {
        (0..total)
            .into_par_iter()
            .map(|i| (i, check(i)))
            .find_first(|(_, r)| !matches!(r, Ok(true)))
    });
    match found {
        None => Ok(None),
        Some((i, Ok(_))) => Ok(Some(i)),
        Some((_, Err(e))) => Err(e),
    }
}

/// Result of a scan over all k-subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanOutcome {
    /// Subsets evaluated, counted in lexicographic order: `rank + 1` of the
    /// first failure under early exit, otherwise the total.
    pub checked: u64,
    /// Lexicographically smallest failing subset.
    pub first_failure: Option<Vec<usize>>,
    /// Minimum score over the evaluated subsets (`None` when no scores).
    pub min_score: Option<f64>,
}

/// Scans every k-subset of `0..n`. `eval` returns `(passes, score)`.
///
/// With `early_exit`, blocks wholly after a known failure are skipped and
/// `min_score` covers only subsets up to the first failure.
pub fn scan<E, F>(n: usize, k: usize, threads: usize, early_exit: bool, eval: F) -> Result<ScanOutcome, E>
where
    E: Send,
    F: Fn(&[usize]) -> Result<(bool, Option<f64>), E> + Sync,
{
    let total = binomial(n as u64, k as u64);
    if total == 0 {
        return Ok(ScanOutcome {
            checked: 0,
            first_failure: None,
            min_score: None,
        });
    }
    let blocks = total.div_ceil(BLOCK);
    let best_fail = AtomicU64::new(u64::MAX);

    struct BlockResult {
        fail: Option<u64>,
        min: Option<f64>,
        /// per-rank minimum scores are needed when a later block fails first
        scores: Vec<(u64, f64)>,
    }

    let run = || {
        (0..blocks)
            .into_par_iter()
            .map(|b| -> Result<Option<BlockResult>, E> {
                let start = b * BLOCK;
                if early_exit && start > best_fail.load(Ordering::Relaxed) {
                    return Ok(None);
                }
                let end = (start + BLOCK).min(total);
                let mut subset = unrank(n, k, start);
                let mut res = BlockResult {
                    fail: None,
                    min: None,
                    scores: Vec::new(),
                };
                for rank in start..end {
                    if early_exit && rank > best_fail.load(Ordering::Relaxed) {
                        break;
                    }
                    let (ok, score) = eval(&subset)?;
                    if let Some(s) = score {
                        res.min = Some(res.min.map_or(s, |m: f64| m.min(s)));
                        if early_exit {
                            res.scores.push((rank, s));
                        }
                    }
                    if !ok && res.fail.is_none() {
                        res.fail = Some(rank);
                        best_fail.fetch_min(rank, Ordering::Relaxed);
                        if early_exit {
                            break;
                        }
                    }
                    if rank + 1 < end {
                        next_subset(&mut subset, n);
                    }
                }
                Ok(Some(res))
            })
            .collect::<Vec<_>>()
    };
    let results = with_threads(threads, run);

    let mut first_fail: Option<u64> = None;
    let mut done = Vec::with_capacity(results.len());
    for r in results {
        if let Some(br) = r? {
            if let Some(f) = br.fail {
                first_fail = Some(first_fail.map_or(f, |g| g.min(f)));
            }
            done.push(br);
        }
    }
    let min_score = if early_exit {
        let limit = first_fail.unwrap_or(u64::MAX);
        done.iter()
            .flat_map(|br| br.scores.iter())
            .filter(|(rank, _)| *rank <= limit)
            .map(|&(_, s)| s)
            .reduce(f64::min)
    } else {
        done.iter().filter_map(|br| br.min).reduce(f64::min)
    };
    let checked = match (early_exit, first_fail) {
        (true, Some(f)) => f + 1,
        _ => total,
    };
    Ok(ScanOutcome {
        checked,
        first_failure: first_fail.map(|f| unrank(n, k, f)),
        min_score,
    })
}
