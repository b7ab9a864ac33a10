//! Topological theories from laws and back: the Galois correspondence.

use std::sync::Arc;

use qlaws::distlaw::{builtin_law, DistLaw, Universe};
use qlaws::monads::{Budget, Monad, MonadKind};
use qlaws::quantaloid::two;
use qlaws::theory::{builtin_theory, check_galois_law, check_galois_theory, check_theory, induced_theory};

fn main() -> qlaws::Result<()> {
    let q = two();
    let b = Budget::default();
    let u = Universe::sizes(&q, &[1, 2]);
    let t = Monad::standard(&q, MonadKind::Ultrafilter, 2)?;

    let beta: Arc<dyn DistLaw> = builtin_law("beta", &q, &t)?.into();
    let xi = induced_theory(&q, beta.clone());
    println!("ξ^β:");
    for c in check_theory(&q, &t, &xi, &b)? {
        println!("  {c}");
    }
    println!("λ ↦ ξ^λ ↦ λ^ξ:");
    for c in check_galois_law(&q, &t, beta, &u, &b)? {
        println!("  {c}");
    }
    println!("ξ ↦ λ^ξ ↦ ξ^λ for the ultrafilter theory:");
    for c in check_galois_theory(&q, &t, &builtin_theory("ultra", &q, &t)?, &u, &b)? {
        println!("  {c}");
    }
    Ok(())
}
