//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon; otherwise (or with [`Execution::Sequential`]) they run in order.
//! Results are always collected in index order, so the choice never changes
//! an answer.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `(0..n).map(f).collect()`.
pub fn map_range<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// The result for the lowest index at which `f` returns `Some`.
pub fn find_first_range<T, F>(exec: Execution, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().filter_map(f).find_first(|_| true);
    }
    let _ = exec;
    (0..n).find_map(f)
}

pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map_range(exec, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(find_first_range(exec, 100, |i| (i % 7 == 3 && i > 20).then_some(i)), Some(24));
            assert_eq!(find_first_range(exec, 10, |_| None::<u8>), None);
            assert_eq!(map_slice(exec, &[1, 2, 3], |x| x + 1), vec![2, 3, 4]);
        }
    }
}
