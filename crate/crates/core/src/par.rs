//! Deterministic min-reduction over an indexed stream of work items.
//!
//! With the `parallel` feature the stream is bridged onto rayon workers, each
//! holding its own scratch state; otherwise (or with one thread) it runs on
//! the calling thread. Ties are broken by stream index, so the result does
//! not depend on scheduling.

use crate::error::Result;

/// Evaluates `eval(state, index, item)` for every item and returns the
/// result with the smallest `(key, index)`. `threads`: 0 uses the default
/// pool, 1 runs sequentially, larger values build a dedicated pool.
pub fn min_by_key<I, S, R, K, Init, F, KF>(
    threads: usize,
    items: I,
    init: Init,
    eval: F,
    key: KF,
) -> Result<Option<R>>
where
    I: Iterator + Send,
    I::Item: Send,
    R: Send,
    K: Ord,
    Init: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, I::Item) -> Result<Option<R>> + Sync + Send,
    KF: Fn(&R) -> K + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads != 1 {
        return parallel(threads, items, init, eval, key);
    }
    let _ = threads;
    let mut state = init();
    let mut best: Option<(usize, R)> = None;
    for (idx, item) in items.enumerate() {
        if let Some(r) = eval(&mut state, idx, item)? {
            if best.as_ref().is_none_or(|(_, b)| key(&r) < key(b)) {
                best = Some((idx, r));
            }
        }
    }
    Ok(best.map(|(_, r)| r))
}

#[cfg(feature = "parallel")]
fn parallel<I, S, R, K, Init, F, KF>(
    threads: usize,
    items: I,
    init: Init,
    eval: F,
    key: KF,
) -> Result<Option<R>>
where
    I: Iterator + Send,
    I::Item: Send,
    R: Send,
    K: Ord,
    Init: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, I::Item) -> Result<Option<R>> + Sync + Send,
    KF: Fn(&R) -> K + Sync + Send,
{
    use rayon::prelude::*;

    type Acc<R> = Result<Option<(usize, R)>>;
    let run = || -> Acc<R> {
        items
            .enumerate()
            .par_bridge()
            .map_init(&init, |state, (idx, item)| -> Acc<R> {
                Ok(eval(state, idx, item)?.map(|r| (idx, r)))
            })
            .reduce(
                || Ok(None),
                |a: Acc<R>, b: Acc<R>| match (a, b) {
                    (Err(e), _) | (_, Err(e)) => Err(e),
                    (Ok(None), x) | (x, Ok(None)) => x,
                    (Ok(Some(a)), Ok(Some(b))) => {
                        let ka = (key(&a.1), a.0);
                        let kb = (key(&b.1), b.0);
                        Ok(Some(if kb < ka { b } else { a }))
                    }
                },
            )
    };
    let best = if threads == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::error::Error::InvalidInput(format!("thread pool: {e}")))?
            .install(run)?
    };
    Ok(best.map(|(_, r)| r))
}
