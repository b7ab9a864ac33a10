//! The discrete presheaf monad over `D2`: its laws, and one multiplication.

use qlaws::monads::Budget;
use qlaws::presheaf::{check_monad_laws, mult, show_presheaf, yoneda, PresheafSet};
use qlaws::quantaloid::diagonal;
use qlaws::quantaloid::two;

fn main() -> qlaws::Result<()> {
    let q = diagonal(&two())?;
    let base = vec![1, 1, 0];
    for c in check_monad_laws(&q, &base, &Budget::default())? {
        println!("{c}");
    }

    let px = PresheafSet::build(&q, &base, 4096)?;
    println!("|PX| = {}", px.elems.len());
    let big = yoneda(&q, px.array(), px.elems.len() - 1);
    let flat = mult(&q, &px, &big);
    println!("s_X(y(σ)) = {} for σ = {}", show_presheaf(&q, &base, &flat), show_presheaf(&q, &base, &px.elems[px.elems.len() - 1]));
    Ok(())
}
