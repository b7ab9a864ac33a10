//! Enumerates lax algebras and builds the partial metric example.

use qlaws::distlaw::IdentityLaw;
use qlaws::laxalg::{build_example, enumerate_algebras, ExampleSpec, QCategory};
use qlaws::monads::{Budget, Monad};
use qlaws::quantaloid::two;

fn main() -> qlaws::Result<()> {
    let b = Budget::default();
    for n in 1..=4 {
        let algs = enumerate_algebras(&two(), &Monad::identity(), &IdentityLaw, &vec![0; n], &b)?;
        println!("|X| = {n}: {} preorders", algs.len());
    }

    let spec = ExampleSpec::PartialMetricPlus { n: 3, d: vec![vec![0, 1], vec![2, 0]] };
    let inst = build_example(&spec, &b)?;
    let c = QCategory::from_algebra(&inst.alg)?;
    println!("d⁺ over {}: array {:?}, entries {:?}", inst.q.name(), c.base, c.a.entries);
    for chk in &inst.checks {
        println!("  {chk}");
    }
    Ok(())
}
