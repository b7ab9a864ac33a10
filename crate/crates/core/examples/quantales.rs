//! Validates the builtin quantales and the diagonal construction over them.

use qlaws::quantaloid::{add_chain, check_divisible, check_lax_hom, diagonal, globalizations, luk, two, validate_quantaloid};

fn main() -> qlaws::Result<()> {
    for v in [two(), luk(3), add_chain(3)] {
        let div = check_divisible(&v);
        println!("{}: valid {}, divisible {}, integral {}", v.name(), validate_quantaloid(&v).passed(), div.divisible, div.integral);

        let dv = diagonal(&v)?;
        println!("  {} has {} objects and validates: {}", dv.name(), dv.n(), validate_quantaloid(&dv).passed());
        let g = globalizations(&dv)?;
        for (name, hom, src, dst) in [("ι", &g.iota, &v, &dv), ("δ", &g.delta, &dv, &v), ("γ", &g.gamma, &dv, &v)] {
            let r = check_lax_hom(hom, src, dst)?;
            println!("  {name}: lax {}, strict {}", r.is_lax(), r.strict);
        }
    }
    Ok(())
}
