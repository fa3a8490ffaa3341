pub mod depth;
pub mod figures;
pub mod optimize;
pub mod profile;
pub mod validate;

use rayon::prelude::*;

use crate::error::CliResult;

/// Evaluates `f` over `items` on the rayon pool, keeping input order.
pub(crate) fn ordered<I, R, F>(items: &[I], f: F) -> CliResult<Vec<R>>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> CliResult<R> + Sync + Send,
{
    items.par_iter().map(f).collect()
}
