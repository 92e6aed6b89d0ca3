//! Data-parallel map helpers. With the `parallel` feature (default) the
//! work is spread over a rayon pool; without it the same API runs
//! sequentially. Output order is by input index either way, so results are
//! identical across thread counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn maybe_par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Map `f` over `items`, preserving input order in the output.
#[cfg(not(feature = "parallel"))]
pub fn maybe_par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential map with the same signature, kept for benchmarking
/// the parallel path against a fixed baseline.
pub fn seq_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Run `f` inside a pool with `jobs` threads (0 = rayon default). Without
/// the `parallel` feature `f` runs directly and `jobs` is ignored.
#[cfg(feature = "parallel")]
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("failed to build thread pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<R>(_jobs: usize, f: impl FnOnce() -> R) -> R {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<usize> = (0..1000).collect();
        let out = maybe_par_map(v.clone(), |x| 2 * x);
        let expected: Vec<usize> = v.iter().map(|x| 2 * x).collect();
        assert_eq!(out, expected);
        assert_eq!(seq_map(v, |x| 2 * x), expected);
    }

    #[test]
    fn with_jobs_runs_closure() {
        let r = with_jobs(2, || 42);
        assert_eq!(r, 42);
    }
}
