//! Moves a partial metric between `D(V)` and `V`, and through `E_V`.

use qlaws::functors::{check_normed, ev_embedding, reflector, ChangeOfBase, Globalization};
use qlaws::laxalg::{algebra_to_category, build_example, ExampleSpec, QCategory};
use qlaws::distlaw::Universe;
use qlaws::monads::{Budget, MonadKind};

fn main() -> qlaws::Result<()> {
    let b = Budget::default();
    let inst = build_example(&ExampleSpec::PartialMetricPlus { n: 3, d: vec![vec![0, 1], vec![1, 0]] }, &b)?;
    let dv = inst.q.clone();
    let c = QCategory::from_algebra(&inst.alg)?;
    let cat = algebra_to_category(&dv, &inst.alg, &b)?;
    println!("partial metric: array {:?}, entries {:?}", c.base, c.a.entries);

    for which in [Globalization::Delta, Globalization::Gamma] {
        let cob = ChangeOfBase::globalization(&dv, which, MonadKind::Identity, 2)?;
        let out = cob.apply(&cat, &Universe::sizes(&dv, &[1, 2]), &b)?;
        println!("{which:?}: entries {:?}", out.alpha.entries);
    }

    let nc = ev_embedding(&dv, &c)?;
    println!("E_V: d = {:?}, t = {:?}", nc.d.entries, nc.t);
    println!("normed: {}", check_normed(&dv, &nc)?.iter().all(|c| c.passed()));
    println!("reflected back: {}", reflector(&dv, &nc)?.a == c.a);
    Ok(())
}
