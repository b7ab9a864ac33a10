//! Lax extensions against distributive laws on the violator corpus.

use qlaws::distlaw::Universe;
use qlaws::extension::{check_extension_conditions, corpus_profile, violator_corpus};
use qlaws::monads::{Budget, Monad};
use qlaws::quantaloid::two;

fn main() -> qlaws::Result<()> {
    let q = two();
    let b = Budget::default();
    let u = Universe::sizes(&q, &[1, 2]);
    for e in violator_corpus() {
        let t = Monad::standard(&q, e.monad, 2)?;
        let r = check_extension_conditions(&q, &t, e.family.clone(), &u, &b)?;
        println!("{:<28} {:<12} breaks {:?}, discrepancies {}", r.family, t.name(), corpus_profile(&r), r.discrepancies());
    }
    Ok(())
}
