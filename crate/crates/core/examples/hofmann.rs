//! Compares topological theories with Hofmann's conditions over `luk(2)`.

use qlaws::monads::{Budget, Monad, MonadKind};
use qlaws::quantaloid::luk;
use qlaws::theory::hofmann::{compare_with_hofmann, monotone_theories};

fn main() -> qlaws::Result<()> {
    let q = luk(2);
    let b = Budget::default();
    let t = Monad::standard(&q, MonadKind::Powerset, 2)?;
    let (corpus, exhaustive) = monotone_theories(&q, &t, &b)?;
    println!("{} monotone tables (exhaustive: {exhaustive})", corpus.len());
    for xi in &corpus {
        let cmp = compare_with_hofmann(&q, &t, xi, &b)?;
        if cmp.hofmann_passed {
            println!("{} passes Hofmann's conditions; theory conditions pass: {}", cmp.theory, cmp.natural_theory);
        }
    }
    Ok(())
}
