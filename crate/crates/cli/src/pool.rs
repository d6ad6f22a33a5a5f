use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_VAR: &str = "ORITREE_THREADS";

/// Worker pool sized by `ORITREE_THREADS` when set, else by rayon's default.
pub fn pool() -> anyhow::Result<ThreadPool> {
    let mut b = ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            anyhow::bail!("{THREADS_VAR} must be at least 1");
        }
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}
