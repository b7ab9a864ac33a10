//! Hofmann's conditions for theories over a commutative quantale `V`, the
//! Barr–Hofmann extension `T_ξ` and its minimality.
//!
//! With a single object, `PQ₀` is `V` itself: an element of `TV` is passed
//! as a list of one-entry presheaves, exactly as for [`TopTheory`].

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::{condition3, lax_algebra, renamed, theory_eq, Ctx, Objects, TopTheory};
use crate::distlaw::{check_law, draw_elem, DistLaw, Universe};
use crate::error::{Error, Result};
use crate::extension::{check_0, check_monotone, psi, tabulate, ExtHarness, ExtensionFamily};
use crate::monads::{can_map, check_bc, Budget, Monad, MonadKind, SetMonad};
use crate::presheaf::{presheaf_leq, Presheaf, PresheafSet};
use crate::qrel::{all_maps, compose, graph, rel_leq, QRel, Relation};
use crate::quantaloid::Quantaloid;
use crate::report::{Check, Tally};
use crate::util::odometer;

fn value(v: usize) -> Presheaf {
    Presheaf { cod: 0, comps: vec![v] }
}

fn require_commutative(q: &Quantaloid) -> Result<()> {
    if q.is_quantale() && q.is_commutative() {
        Ok(())
    } else {
        Err(Error::Refused(format!("{} is not a commutative quantale", q.name())))
    }
}

/// Hofmann's conditions 1, 2*, 3 and 4.
pub fn check_hofmann(q: &Quantaloid, t: &Monad, theory: &TopTheory, budget: &Budget) -> Result<Vec<Check>> {
    require_commutative(q)?;
    let ctx = Ctx::new(q, t, theory, budget)?;
    let xi = |w: &[Presheaf]| Some(ctx.xi(w));
    let show = |w: &[Presheaf]| ctx.show_w(w);
    let [u, m] = lax_algebra(
        &ctx,
        ("hofmann.1-unit", "1. 1 ≤ ξ·e"),
        ("hofmann.1-mult", "1. ξ·Tξ ≤ ξ·m"),
        &ctx.objs.ids,
        Some(&ctx.objs.pq0.elems),
        &xi,
        &show,
    );
    Ok(vec![
        u,
        m,
        hom_unit(&ctx)?,
        hom_mult(&ctx)?,
        renamed(condition3(&ctx)?, "hofmann.3", "3. monotonicity"),
        naturality(&ctx, &[0, 1, 2])?,
    ])
}

/// `k·ζ ≤ ξ·Tk` on `T1`.
fn hom_unit(ctx: &Ctx) -> Result<Check> {
    let (q, t) = (ctx.q, ctx.t);
    let mut tally = Tally::new("hofmann.2*-unit", "2*. k·ζ ≤ ξ·Tk");
    let k = value(q.unit());
    for u in SetMonad::enumerate(t, 1, ctx.budget.domain)? {
        let rhs = ctx.xi(&t.map(&u, |_| k.clone()));
        tally.see(presheaf_leq(q, &ctx.objs.ids, &k, &rhs), k == rhs, || format!("u = {u:?}"));
    }
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

/// `⊗·(ξ×ξ)·can ≤ ξ·T(⊗)` on `T(V×V)`, pairs encoded as `a·|V| + b`.
fn hom_mult(ctx: &Ctx) -> Result<Check> {
    let (q, t, budget) = (ctx.q, ctx.t, ctx.budget);
    let l = q.lattice();
    let n = l.len();
    let mut tally = Tally::new("hofmann.2*-mult", "2*. ⊗·(ξ×ξ)·can ≤ ξ·T(⊗)");
    let mut rng = ctx.rng("hofmann.2*-mult");
    let points = match t.enumerate_checked(n * n, budget.domain) {
        Some(all) => all,
        None => {
            tally.mark_sampled();
            (0..budget.samples).map(|_| draw_elem(t, budget, &mut rng, |r| r.gen_range(0..n * n))).collect()
        }
    };
    for w in &points {
        let (x, y) = can_map(t, w, n);
        let a = ctx.xi(&t.map(&x, |&v| value(v))).comps[0];
        let b = ctx.xi(&t.map(&y, |&v| value(v))).comps[0];
        let lhs = q.tensor(a, b);
        let rhs = ctx.xi(&t.map(w, |&p| value(q.tensor(p / n, p % n)))).comps[0];
        tally.see(l.leq(lhs, rhs), lhs == rhs, || {
            let pairs: Vec<String> = w.iter().map(|&p| format!("({},{})", l.label(p / n), l.label(p % n))).collect();
            format!("w = [{}]: {} ⊗ {} = {}, ξ·T(⊗) = {}", pairs.join(" "), l.label(a), l.label(b), l.label(lhs), l.label(rhs))
        });
    }
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

/// `(Tf)_!·ξ_X = ξ_Y·f_!` for maps `f: X → Y` between sets of the given
/// sizes, with `ξ_X(σ) = ξ·Tσ`.
fn naturality(ctx: &Ctx, sizes: &[usize]) -> Result<Check> {
    let (q, t, budget) = (ctx.q, ctx.t, ctx.budget);
    let l = q.lattice();
    let mut tally = Tally::new("hofmann.4", "4. ξ_X = ξ·T(−) is natural P_V → P_V T");
    for &nx in sizes {
        for &ny in sizes {
            let (Some(tx), Some(ty)) = (t.enumerate_checked(nx, budget.domain), t.enumerate_checked(ny, budget.domain))
            else {
                continue;
            };
            for f in odometer(&vec![ny; nx]) {
                let images: Vec<Vec<usize>> = tx.iter().map(|u| t.fmap_vec(u, &f)).collect();
                for sigma in odometer(&vec![l.len(); nx]) {
                    let push: Vec<usize> =
                        (0..ny).map(|y| l.join_all((0..nx).filter(|&x| f[x] == y).map(|x| sigma[x]))).collect();
                    for v in &ty {
                        let lhs = l.join_all(
                            tx.iter()
                                .zip(&images)
                                .filter(|(_, im)| *im == v)
                                .map(|(u, _)| ctx.xi(&t.map(u, |&x| value(sigma[x]))).comps[0]),
                        );
                        let rhs = ctx.xi(&t.map(v, |&y| value(push[y]))).comps[0];
                        tally.same(lhs == rhs, || {
                            let s: Vec<&str> = sigma.iter().map(|&a| l.label(a)).collect();
                            format!(
                                "f = {f:?}: {nx} → {ny}, σ = [{}], at {v:?}: (Tf)_!·ξ_X gives {}, ξ_Y·f_! gives {}",
                                s.join(" "),
                                l.label(lhs),
                                l.label(rhs)
                            )
                        });
                    }
                }
            }
        }
    }
    tally.domain(format!("maps between sets of sizes {sizes:?}"));
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

/// The Barr–Hofmann extension
/// `T_ξφ(x, y) = ⋁{ξ·T|φ|(w) | w ∈ T(X×Y), Tπ₁(w) = x, Tπ₂(w) = y}`.
pub struct BarrHofmann {
    xi: TopTheory,
}

/// `T_ξ`, refused unless `V` is a commutative quantale and `T` passes the
/// Beck–Chevalley test on sets with at most two elements.
pub fn barr_hofmann_extension(q: &Quantaloid, t: &Monad, xi: &TopTheory) -> Result<BarrHofmann> {
    require_commutative(q)?;
    check_bc(t, 2).map_err(|w| Error::Refused(format!("{} fails Beck–Chevalley: {w}", t.name())))?;
    Ok(BarrHofmann { xi: xi.clone() })
}

impl BarrHofmann {
    fn xi_of(&self, q: &Quantaloid, t: &Monad, vals: &[usize]) -> usize {
        self.xi.eval(q, t, &t.map(vals, |&a| value(a))).comps[0]
    }

    /// The entry at `u ∈ TX`, `v ∈ TY`.
    pub fn entry(&self, q: &Quantaloid, t: &Monad, phi: &dyn Relation, u: &[usize], v: &[usize]) -> usize {
        let l = q.lattice();
        match t.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => self.xi_of(q, t, &[phi.get(u[0], v[0])]),
            // Tπ₁, Tπ₂ determine w as the zip of u and v
            MonadKind::List if u.len() == v.len() => {
                let vals: Vec<usize> = u.iter().zip(v).map(|(&x, &y)| phi.get(x, y)).collect();
                self.xi_of(q, t, &vals)
            }
            MonadKind::List => l.bottom(),
            MonadKind::Powerset => {
                // T|φ|(w) is the set of values on w, and a value set S occurs
                // iff the pairs valued in S cover u and v and realise all of S
                let mut acc = l.bottom();
                for mask in 0..1usize << l.len() {
                    let edges: Vec<(usize, usize)> = u
                        .iter()
                        .flat_map(|&x| v.iter().map(move |&y| (x, y)))
                        .filter(|&(x, y)| mask >> phi.get(x, y) & 1 == 1)
                        .collect();
                    let realised = edges.iter().fold(0usize, |m, &(x, y)| m | 1 << phi.get(x, y));
                    let covers = u.iter().all(|&x| edges.iter().any(|e| e.0 == x))
                        && v.iter().all(|&y| edges.iter().any(|e| e.1 == y));
                    if realised == mask && covers {
                        let vals: Vec<usize> = (0..l.len()).filter(|a| mask >> a & 1 == 1).collect();
                        acc = l.join(acc, self.xi_of(q, t, &vals));
                    }
                }
                acc
            }
        }
    }
}

impl ExtensionFamily for BarrHofmann {
    fn name(&self) -> String {
        format!("T_{}", self.xi.name())
    }

    fn column(&self, q: &Quantaloid, t: &Monad, phi: &dyn Relation, tx: &crate::monads::TSet, v: &[usize]) -> Presheaf {
        Presheaf { cod: 0, comps: tx.elems.iter().map(|u| self.entry(q, t, phi, u, v)).collect() }
    }
}

/// `Ξ(T̂) = ζ_!·⃖T̂ε₁`, tabulated on the enumerated `TV`.
pub fn xi_of_family(q: &Quantaloid, t: &Monad, fam: &dyn ExtensionFamily, budget: &Budget) -> Result<TopTheory> {
    require_commutative(q)?;
    let l = q.lattice();
    let px = PresheafSet::build(q, &[0], budget.px)?;
    let eps = QRel::from_fn(&[0], px.array(), |_, s| px.elems[s].comps[0]);
    let one = t.tset(q, &[0], budget.domain)?;
    let tp = t.tset(q, px.array(), budget.domain)?;
    let ext = tabulate(fam, q, t, &eps, &one, &tp);
    let entries = tp.elems.iter().enumerate().map(|(j, a)| {
        let key: Vec<Presheaf> = a.iter().map(|&i| px.elems[i].clone()).collect();
        (key, value(l.join_all((0..one.len()).map(|b| ext.get(b, j)))))
    });
    Ok(TopTheory::from_table(format!("Ξ({})", fam.name()), entries.collect::<Vec<_>>()))
}

/// `(T̂φ)¹ ≥ can_∘∘T̂(φ¹)∘ζ°` on the universe relations; the check is strict
/// exactly when the family is algebraic there.
pub fn check_admissible(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    require_commutative(q)?;
    let l = q.lattice();
    let h = ExtHarness::new(q, t, fam, budget);
    let mut tally = Tally::new("hofmann.admissible", "(T̂φ)¹ ≥ can_∘∘T̂(φ¹)∘ζ°");
    let mut rng = h.rng("hofmann.admissible");
    for a in &universe.arrays {
        for b in &universe.arrays {
            let pairs = vec![0; a.len() * b.len()];
            let (tx, ty, txy) = (h.tset(a)?, h.tset(b)?, h.tset(&pairs)?);
            let (phis, sampled) = h.rels(a, b, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            for phi in &phis {
                let phi1 = QRel::from_fn(&[0], &pairs, |_, p| phi.get(p / b.len(), p % b.len()));
                let lhs = h.ext(phi)?;
                let big = h.ext(&phi1)?;
                let mut rhs = QRel::bottom(q, &tx.array, &ty.array);
                for (j, w) in txy.elems.iter().enumerate() {
                    let (u, v) = can_map(t, w, b.len());
                    let (Some(iu), Some(iv)) = (tx.index_of(&u), ty.index_of(&v)) else { continue };
                    let val = l.join_all((0..big.src.len()).map(|i| big.get(i, j)));
                    rhs.set(iu, iv, l.join(rhs.get(iu, iv), val));
                }
                tally.see(rel_leq(q, &rhs, &*lhs)?, rhs == *lhs, || format!("φ = {}", crate::extension::show_rel(q, phi)));
            }
        }
    }
    tally.domain("relations between universe sets");
    Ok(tally.finish())
}

/// `T̂(g_∘∘φ) = (Tg)_∘∘T̂φ` for maps `g` between universe sets.
pub fn check_left_whiskering(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let h = ExtHarness::new(q, t, fam, budget);
    let mut tally = Tally::new("hofmann.left-whiskering", "T̂(g_∘∘φ) = (Tg)_∘∘T̂φ");
    let mut rng = h.rng("hofmann.left-whiskering");
    for a in &universe.arrays {
        for b in &universe.arrays {
            let (phis, sampled) = h.rels(a, b, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            let tb = h.tset(b)?;
            for c in &universe.arrays {
                let tc = h.tset(c)?;
                for g in all_maps(b, c, budget.domain)? {
                    let tg = graph(q, &h.tmap(&g, &tb, &tc), &tb.array, &tc.array)?;
                    let gq = graph(q, &g, b, c)?;
                    for phi in &phis {
                        let lhs = h.ext(&compose(q, &gq, phi)?)?;
                        let rhs = compose(q, &tg, &*h.ext(phi)?)?;
                        tally.same(*lhs == rhs, || format!("φ = {}, g = {g:?}", crate::extension::show_rel(q, phi)));
                    }
                }
            }
        }
    }
    tally.domain("maps between universe sets");
    Ok(tally.finish())
}

/// Checks that `T_ξ` lies below every admissible, left-op-whiskering and
/// monotone member of `corpus` with `Ξ(T̂) = ξ`. Members outside that class
/// are reported as excluded, naming the first failed requirement.
pub fn check_minimality(
    q: &Quantaloid,
    t: &Monad,
    xi: &TopTheory,
    corpus: &[Arc<dyn ExtensionFamily>],
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let txi = barr_hofmann_extension(q, t, xi)?;
    let low = ExtHarness::new(q, t, &txi, budget);
    let mut out = Vec::new();
    for fam in corpus {
        let name = format!("minimality.{}", fam.name());
        let label = format!("T_ξ ≤ {}", fam.name());
        let h = ExtHarness::new(q, t, &**fam, budget);
        let requirements = [
            check_admissible(q, t, &**fam, universe, budget)?,
            check_0(&h, universe)?,
            check_monotone(&h, universe)?,
            renamed(theory_eq(q, t, &xi_of_family(q, t, &**fam, budget)?, xi, budget)?, "hofmann.fiber", "Ξ(T̂) = ξ"),
        ];
        if let Some(bad) = requirements.iter().find(|c| !c.passed()) {
            out.push(Check::untested(&name, &label, format!("excluded: {} fails", bad.name)));
            continue;
        }
        let mut tally = Tally::new(name, label);
        let mut rng = h.rng("minimality");
        for phi in h.phis(universe, &mut rng, &mut tally) {
            let a = low.ext(&phi)?;
            let b = h.ext(&phi)?;
            tally.see(rel_leq(q, &*a, &*b)?, a == b, || format!("φ = {}", crate::extension::show_rel(q, &phi)));
        }
        out.push(tally.finish());
    }
    Ok(out)
}

/// All monotone tables `ξ: TV → V` when there are at most 16 elements in
/// `TV` and the candidate count fits `budget.domain`, else a seeded sample
/// of monotone tables. The flag tells whether the corpus is exhaustive.
pub fn monotone_theories(q: &Quantaloid, t: &Monad, budget: &Budget) -> Result<(Vec<TopTheory>, bool)> {
    require_commutative(q)?;
    if t.kind == MonadKind::List {
        return Err(Error::Refused("TV is infinite for the list monad".into()));
    }
    let l = q.lattice();
    let objs = Objects::new(q, budget)?;
    let tv = SetMonad::enumerate(t, objs.pq0.len(), budget.domain)?;
    let count = (l.len() as u128).checked_pow(tv.len() as u32).unwrap_or(u128::MAX);
    let exhaustive = tv.len() <= 16 && count <= budget.domain as u128;
    let tables: Vec<Vec<usize>> = if exhaustive {
        odometer(&vec![l.len(); tv.len()]).collect()
    } else {
        let mut rng = crate::util::rng_for(budget.seed, &format!("monotone-theories/{}/{}", t.name(), q.name()));
        (0..budget.samples).map(|_| (0..tv.len()).map(|_| rng.gen_range(0..l.len())).collect()).collect()
    };
    let mut out = Vec::new();
    for vals in tables {
        let labels: Vec<&str> = vals.iter().map(|&v| l.label(v)).collect();
        let entries = tv.iter().zip(&vals).map(|(u, &v)| (objs.entries(u), value(v)));
        let theory = TopTheory::from_table(format!("ξ[{}]", labels.join(",")), entries.collect::<Vec<_>>());
        let ctx = Ctx::new(q, t, &theory, budget)?;
        if condition3(&ctx)?.passed() {
            out.push(theory);
        }
    }
    Ok((out, exhaustive))
}

/// Verdicts of both definitions for one theory.
#[derive(Clone, Debug, Serialize)]
pub struct HofmannComparison {
    pub theory: String,
    /// conditions 0–3 of a topological theory
    pub definition: Vec<Check>,
    pub hofmann: Vec<Check>,
    /// `ξ` is natural and passes conditions 0–3
    pub natural_theory: bool,
    pub hofmann_passed: bool,
    /// condition 2 of a topological theory
    pub condition2: bool,
    /// both inequalities of 2*
    pub condition2_star: bool,
}

/// Evaluates a theory against both definitions.
pub fn compare_with_hofmann(q: &Quantaloid, t: &Monad, xi: &TopTheory, budget: &Budget) -> Result<HofmannComparison> {
    let definition = super::check_theory(q, t, xi, budget)?;
    let hofmann = check_hofmann(q, t, xi, budget)?;
    let passed = |cs: &[Check], prefix: &str| cs.iter().filter(|c| c.name.starts_with(prefix)).all(Check::passed);
    let natural = hofmann.iter().find(|c| c.name == "hofmann.4").is_some_and(Check::passed);
    Ok(HofmannComparison {
        theory: xi.name().to_string(),
        natural_theory: natural && definition.iter().all(Check::passed),
        hofmann_passed: hofmann.iter().all(Check::passed),
        condition2: passed(&definition, "theory.2"),
        condition2_star: passed(&hofmann, "hofmann.2*"),
        definition,
        hofmann,
    })
}

/// For a theory passing Hofmann's conditions: `ξ` is induced by the
/// monotone law `Ψ(T_ξ)`, i.e. that law passes (a)–(e) and monotonicity on
/// the universe and `ξ^{Ψ(T_ξ)} = ξ`.
pub fn check_induced_by_barr_hofmann(
    q: &Quantaloid,
    t: &Monad,
    xi: &TopTheory,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let txi: Arc<dyn ExtensionFamily> = Arc::new(barr_hofmann_extension(q, t, xi)?);
    let lam: Arc<dyn DistLaw> = Arc::new(psi(txi.clone(), budget));
    let law_ok = check_law(q, t, &*lam, universe, budget)?;
    let failed: Vec<&str> = law_ok.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    let law = Check::fact(
        "hofmann.psi-law",
        "Ψ(T_ξ) is a monotone lax distributive law",
        failed.is_empty(),
        (!failed.is_empty()).then(|| format!("fails {}", failed.join(", "))),
    );
    let back = super::induced_theory(q, lam);
    let eq = renamed(theory_eq(q, t, &back, xi, budget)?, "hofmann.psi-xi", "ξ^{Ψ(T_ξ)} = ξ");
    Ok(vec![law, eq])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::builtin_law;
    use crate::extension::{builtin_extension, check_lax_extension, check_same_family, phi, FnFamily};
    use crate::quantaloid::{diagonal, luk, two};
    use crate::theory::{builtin_theory, maximal_law};

    fn setup(q: &Quantaloid, kind: MonadKind) -> (Monad, Universe, Budget) {
        (Monad::standard(q, kind, 2).unwrap(), Universe::sizes(q, &[1, 2]), Budget::default())
    }

    fn meet_theory() -> TopTheory {
        TopTheory::from_fn("meet", |q, _t, w| value(q.lattice().meet_all(w.iter().map(|s| s.comps[0]))))
    }

    #[test]
    fn identity_and_ultrafilter_theories_pass() {
        for q in [two(), luk(2)] {
            for (kind, name) in [(MonadKind::Identity, "identity"), (MonadKind::Ultrafilter, "ultra")] {
                let (t, _, b) = setup(&q, kind);
                let xi = builtin_theory(name, &q, &t).unwrap();
                for c in check_hofmann(&q, &t, &xi, &b).unwrap() {
                    assert!(c.passed(), "{} {name}: {} {:?}", q.name(), c.name, c.witness);
                }
            }
        }
    }

    #[test]
    fn constant_top_is_not_natural() {
        let q = two();
        let (t, _, b) = setup(&q, MonadKind::Powerset);
        let xi = builtin_theory("top", &q, &t).unwrap();
        let cs = check_hofmann(&q, &t, &xi, &b).unwrap();
        let nat = cs.iter().find(|c| c.name == "hofmann.4").unwrap();
        assert!(nat.failed());
        assert!(nat.witness.is_some());
    }

    #[test]
    fn meet_passes_for_powerset() {
        let q = two();
        let (t, _, b) = setup(&q, MonadKind::Powerset);
        for c in check_hofmann(&q, &t, &meet_theory(), &b).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn multi_object_refused() {
        let q = diagonal(&two()).unwrap();
        let t = Monad::standard(&q, MonadKind::Identity, 2).unwrap();
        let xi = builtin_theory("identity", &q, &t).unwrap();
        assert!(check_hofmann(&q, &t, &xi, &Budget::default()).is_err());
        assert!(barr_hofmann_extension(&q, &t, &xi).is_err());
    }

    #[test]
    fn identity_theory_gives_identity_extension() {
        let q = two();
        let (t, u, b) = setup(&q, MonadKind::Identity);
        let xi = builtin_theory("identity", &q, &t).unwrap();
        let txi = barr_hofmann_extension(&q, &t, &xi).unwrap();
        let id = builtin_extension("identity", &q, &t).unwrap();
        assert!(check_same_family("same", "T_1 = 1", &q, &t, &txi, &id, &u, &b).unwrap().passed());
    }

    #[test]
    fn powerset_entries_match_enumeration_of_covers() {
        let q = two();
        let (t, _, _) = setup(&q, MonadKind::Powerset);
        let xi = meet_theory();
        let txi = barr_hofmann_extension(&q, &t, &xi).unwrap();
        let l = q.lattice();
        let phis = QRel::enumerate(&q, &[0, 0], &[0, 0], 100).unwrap();
        let subsets: Vec<Vec<usize>> = (0..4usize).map(|m| (0..2).filter(|i| m >> i & 1 == 1).collect()).collect();
        for phi in &phis {
            for a in &subsets {
                for bb in &subsets {
                    // every w ⊆ X×Y, kept when its projections are a and bb
                    let mut want = l.bottom();
                    for w in 0..16usize {
                        let pairs: Vec<(usize, usize)> = (0..4).filter(|p| w >> p & 1 == 1).map(|p| (p / 2, p % 2)).collect();
                        let mut p1: Vec<usize> = pairs.iter().map(|p| p.0).collect();
                        let mut p2: Vec<usize> = pairs.iter().map(|p| p.1).collect();
                        p1.sort();
                        p1.dedup();
                        p2.sort();
                        p2.dedup();
                        if &p1 == a && &p2 == bb {
                            let v = l.meet_all(pairs.iter().map(|&(x, y)| phi.get(x, y)));
                            want = l.join(want, v);
                        }
                    }
                    assert_eq!(txi.entry(&q, &t, phi, a, bb), want, "{phi:?} {a:?} {bb:?}");
                }
            }
        }
    }

    #[test]
    fn xi_is_recovered_from_its_extension() {
        for q in [two(), luk(2)] {
            for kind in [MonadKind::Identity, MonadKind::Powerset] {
                let (t, _, b) = setup(&q, kind);
                let (corpus, exhaustive) = monotone_theories(&q, &t, &b).unwrap();
                assert!(exhaustive);
                for xi in corpus.iter().take(12) {
                    let txi = barr_hofmann_extension(&q, &t, xi).unwrap();
                    let back = xi_of_family(&q, &t, &txi, &b).unwrap();
                    assert!(theory_eq(&q, &t, &back, xi, &b).unwrap().passed(), "{}", xi.name());
                }
            }
        }
    }

    #[test]
    fn barr_hofmann_extension_is_algebraic_and_whiskering() {
        let q = two();
        let (t, u, b) = setup(&q, MonadKind::Powerset);
        let txi = barr_hofmann_extension(&q, &t, &meet_theory()).unwrap();
        let adm = check_admissible(&q, &t, &txi, &u, &b).unwrap();
        assert!(adm.passed() && adm.strict);
        assert!(check_left_whiskering(&q, &t, &txi, &u, &b).unwrap().passed());
        assert!(check_lax_extension(&q, &t, &txi, &u, &b).unwrap().iter().all(Check::passed));
    }

    #[test]
    fn delta_extension_is_not_left_whiskering() {
        let q = two();
        let (t, u, b) = setup(&q, MonadKind::Powerset);
        let delta = builtin_extension("delta", &q, &t).unwrap();
        assert!(check_left_whiskering(&q, &t, &delta, &u, &b).unwrap().failed());
    }

    #[test]
    fn minimality_over_a_small_corpus() {
        let q = two();
        let (t, u, b) = setup(&q, MonadKind::Powerset);
        let xi = meet_theory();
        let txi: Arc<dyn ExtensionFamily> = Arc::new(barr_hofmann_extension(&q, &t, &xi).unwrap());
        let base = txi.clone();
        let above: Arc<dyn ExtensionFamily> = Arc::new(FnFamily::new("above", move |q, t, phi, x, y| {
            if phi.src().len() == 1 {
                base.column(q, t, phi, &crate::monads::TSet::new(vec![x.to_vec()], vec![0]), y).comps[0]
            } else {
                q.lattice().top()
            }
        }));
        let below: Arc<dyn ExtensionFamily> = Arc::new(FnFamily::new("below", |q, _t, phi, _x, _y| {
            let _ = phi;
            q.lattice().bottom()
        }));
        let law: Arc<dyn DistLaw> = builtin_law("delta", &q, &t).unwrap().into();
        let corpus = vec![txi, above, below, Arc::new(phi(law)) as Arc<dyn ExtensionFamily>];
        let cs = check_minimality(&q, &t, &xi, &corpus, &u, &b).unwrap();
        assert!(cs[0].passed() && cs[0].strict);
        assert!(cs[1].passed() && !cs[1].strict);
        assert_eq!(cs[2].status, crate::report::Status::Untested);
        assert_eq!(cs[3].status, crate::report::Status::Untested);
    }

    #[test]
    fn maximal_extension_ignores_the_source_point() {
        // Φ(λ^ξ)φ(x, y) = ξ(T(a_!·⃖φ)(y)) with a: X → 1
        let q = two();
        let (t, u, b) = setup(&q, MonadKind::Powerset);
        let xi = meet_theory();
        let lam: Arc<dyn DistLaw> = Arc::new(maximal_law(&xi));
        let oracle = FnFamily::new("oracle", |q, t, phi, _x, y| {
            let l = q.lattice();
            let col = |j: usize| value(l.join_all((0..phi.src().len()).map(|i| phi.get(i, j))));
            l.meet_all(t.map(y, |&j| col(j)).iter().map(|s| s.comps[0]))
        });
        assert!(check_same_family("same", "remark", &q, &t, &phi(lam), &oracle, &u, &b).unwrap().passed());
    }
}
