//! Ordered fan-out of independent grid evaluations.
//!
//! With the `parallel` feature the work is spread over a rayon pool;
//! without it every strategy runs sequentially. Results always come back in
//! input order, so downstream reductions and serialized output do not depend
//! on the worker count.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Global rayon pool.
    #[default]
    Parallel,
    /// Dedicated pool with this many workers.
    Threads(usize),
}

impl Execution {
    pub fn from_threads(threads: Option<usize>) -> Self {
        match threads {
            None => Execution::Parallel,
            Some(0) | Some(1) => Execution::Sequential,
            Some(n) => Execution::Threads(n),
        }
    }

    /// Whether work actually runs on more than one thread in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Execution::Sequential
    }
}

/// `items.iter().map(f).collect()`, possibly in parallel, preserving order.
pub fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match exec {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => items.par_iter().map(f).collect(),
            Execution::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
                Err(_) => items.par_iter().map(f).collect(),
            },
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = exec;
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let expected: Vec<u64> = items.iter().map(|x| x * x + 1).collect();
        for exec in [Execution::Sequential, Execution::Parallel, Execution::Threads(3)] {
            assert_eq!(map_ordered(&items, exec, |x| x * x + 1), expected);
        }
    }

    #[test]
    fn thread_count_mapping() {
        assert_eq!(Execution::from_threads(None), Execution::Parallel);
        assert_eq!(Execution::from_threads(Some(1)), Execution::Sequential);
        assert_eq!(Execution::from_threads(Some(4)), Execution::Threads(4));
    }
}
