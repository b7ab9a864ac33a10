//! Checks the builtin lax distributive laws and prints a report.

use qlaws::distlaw::{builtin_law, check_law, Universe};
use qlaws::monads::{Budget, Monad, MonadKind};
use qlaws::quantaloid::{luk, two};
use qlaws::report::Report;

fn main() -> qlaws::Result<()> {
    let b = Budget::default();
    let mut report = Report::new("distributive laws", b.seed);
    for (q, kind, name) in [
        (two(), MonadKind::List, "tensor"),
        (luk(2), MonadKind::Powerset, "delta"),
        (two(), MonadKind::Ultrafilter, "beta"),
    ] {
        let t = Monad::standard(&q, kind, 2)?;
        let law = builtin_law(name, &q, &t)?;
        report.note(format!("{name} over {} with {}", q.name(), t.name()));
        report.extend(check_law(&q, &t, law.as_ref(), &Universe::sizes(&q, &[1, 2]), &b)?);
    }
    print!("{}", report.to_human());
    Ok(())
}
