//! Data-parallel helpers. With the `parallel` feature these fan out over a
//! rayon pool; without it (or with [`Execution::Sequential`]) they run inline.
//! Output order never depends on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// `items.iter().map(f)` collected in input order.
pub fn map<I, O, F>(exec: Execution, items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Concatenation of `f(i)` for `i` in `0..n`, in index order.
pub fn flat_map_range<O, F>(exec: Execution, n: u64, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(u64) -> Vec<O> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().flat_map_iter(f).collect(),
        _ => (0..n).flat_map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map(Execution::Sequential, &items, |x| x * x);
        let par = map(Execution::Parallel, &items, |x| x * x);
        assert_eq!(seq, par);
        let seq = flat_map_range(Execution::Sequential, 100, |i| vec![i; (i % 3) as usize]);
        let par = flat_map_range(Execution::Parallel, 100, |i| vec![i; (i % 3) as usize]);
        assert_eq!(seq, par);
    }
}
