//! Algebraic functors from the powerset and ultrafilter monads.

use qlaws::distlaw::Universe;
use qlaws::functors::{check_algebraic_morphism, counit_morphism, ultrafilter_membership, Side};
use qlaws::monads::{Budget, MonadKind};
use qlaws::quantaloid::two;

fn main() -> qlaws::Result<()> {
    let q = two();
    let b = Budget::default();
    let u = Universe::sizes(&q, &[1, 2]);
    let cases = [
        (counit_morphism(), (MonadKind::Powerset, "delta"), (MonadKind::Identity, "identity")),
        (ultrafilter_membership(), (MonadKind::Ultrafilter, "beta"), (MonadKind::Powerset, "delta")),
    ];
    for (h, (sk, sl), (dk, dl)) in cases {
        let src = Side::builtin(&q, sk, sl, 2)?;
        let dst = Side::builtin(&q, dk, dl, 2)?;
        println!("{}: {} → {}", h.name(), src.t.name(), dst.t.name());
        for c in check_algebraic_morphism(&q, &src, &dst, &h, &u, &b)? {
            println!("  {c}");
        }
    }
    Ok(())
}
