//! The discrete presheaf monad `P_Q` on sets over `Q₀`.
//!
//! A presheaf on `X` is a family `σ_x: |x| → s` with common codomain `s`.
//! Presheaf sets are enumerated in lexicographic order of (codomain,
//! components), which coincides with the derived `Ord` on [`Presheaf`].

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::qrel::{check_map, QRel, Relation};
use crate::monads::Budget;
use crate::quantaloid::{LaxHom, Quantaloid};
use crate::report::{Check, Tally};
use crate::util::{odometer, product, rng_for};

pub const DEFAULT_PX_LIMIT: usize = 4096;
pub const DEFAULT_PPX_LIMIT: usize = 65536;

/// A presheaf `σ` on a set over `Q₀`; the base array is kept by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    pub cod: usize,
    pub comps: Vec<usize>,
}

impl Presheaf {
    pub fn new(cod: usize, comps: Vec<usize>) -> Self {
        Presheaf { cod, comps }
    }

    pub fn bottom(q: &Quantaloid, base: &[usize], cod: usize) -> Self {
        Presheaf { cod, comps: base.iter().map(|&a| q.bot(a, cod)).collect() }
    }

    pub fn top(q: &Quantaloid, base: &[usize], cod: usize) -> Self {
        Presheaf { cod, comps: base.iter().map(|&a| q.top(a, cod)).collect() }
    }

    /// Checks the component boundaries against a base array.
    pub fn validate(&self, q: &Quantaloid, base: &[usize]) -> Result<()> {
        if self.cod >= q.n() {
            return Err(Error::schema("codomain", "unknown object"));
        }
        if self.comps.len() != base.len() {
            return Err(Error::schema("components", "one component per base element is required"));
        }
        for (x, &c) in self.comps.iter().enumerate() {
            if c >= q.hom(base[x], self.cod).len() {
                return Err(Error::schema(format!("components/{x}"), "component outside its hom-lattice"));
            }
        }
        Ok(())
    }
}

/// `σ ≤ σ'` iff the codomains agree and every component is below.
pub fn presheaf_leq(q: &Quantaloid, base: &[usize], a: &Presheaf, b: &Presheaf) -> bool {
    a.cod == b.cod
        && base.iter().enumerate().all(|(x, &r)| q.leq(r, a.cod, a.comps[x], b.comps[x]))
}

/// Componentwise join of presheaves with a common codomain.
pub fn presheaf_join(q: &Quantaloid, base: &[usize], a: &Presheaf, b: &Presheaf) -> Presheaf {
    debug_assert_eq!(a.cod, b.cod);
    Presheaf {
        cod: a.cod,
        comps: base.iter().enumerate().map(|(x, &r)| q.join(r, a.cod, a.comps[x], b.comps[x])).collect(),
    }
}

/// The number of presheaves on a base array.
pub fn count_presheaves(q: &Quantaloid, base: &[usize]) -> u128 {
    (0..q.n())
        .map(|s| product(base.iter().map(|&r| q.hom(r, s).len())))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// The enumerated set `PX` with its array `t` (the codomain map).
#[derive(Clone, Debug)]
pub struct PresheafSet {
    pub base: Vec<usize>,
    pub elems: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
    array: Vec<usize>,
}

impl PresheafSet {
    pub fn build(q: &Quantaloid, base: &[usize], limit: usize) -> Result<Self> {
        let total = count_presheaves(q, base);
        if total > limit as u128 {
            return Err(Error::budget(format!("P of a {}-element set", base.len()), total, limit as u128));
        }
        let mut elems = Vec::with_capacity(total as usize);
        for s in 0..q.n() {
            let sizes: Vec<usize> = base.iter().map(|&r| q.hom(r, s).len()).collect();
            for comps in odometer(&sizes) {
                elems.push(Presheaf { cod: s, comps });
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let array = elems.iter().map(|p| p.cod).collect();
        Ok(PresheafSet { base: base.to_vec(), elems, index, array })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The array of `PX`.
    pub fn array(&self) -> &[usize] {
        &self.array
    }

    pub fn index_of(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn get(&self, i: usize) -> &Presheaf {
        &self.elems[i]
    }

    /// Indices of the presheaves with a given codomain.
    pub fn with_cod(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.elems.len()).filter(move |&i| self.elems[i].cod == s)
    }
}

/// `(y y)_x = 1_{|y|}` if `x = y`, `⊥` otherwise.
pub fn yoneda(q: &Quantaloid, base: &[usize], y: usize) -> Presheaf {
    let s = base[y];
    Presheaf {
        cod: s,
        comps: base.iter().enumerate().map(|(x, &r)| if x == y { q.id(s) } else { q.bot(r, s) }).collect(),
    }
}

/// `(f_!σ)_y = ⋁_{fx=y} σ_x`.
pub fn direct_image(q: &Quantaloid, f: &[usize], dst: &[usize], sigma: &Presheaf) -> Presheaf {
    let mut comps: Vec<usize> = dst.iter().map(|&r| q.bot(r, sigma.cod)).collect();
    for (x, &y) in f.iter().enumerate() {
        comps[y] = q.join(dst[y], sigma.cod, comps[y], sigma.comps[x]);
    }
    Presheaf { cod: sigma.cod, comps }
}

/// `(f^!τ)_x = τ_{fx}`.
pub fn inverse_image(f: &[usize], tau: &Presheaf) -> Presheaf {
    Presheaf { cod: tau.cod, comps: f.iter().map(|&y| tau.comps[y]).collect() }
}

/// `s_X · g_!` evaluated at `w`, where `g(u) = universe[u]` is a presheaf on
/// `base` with codomain `|u|` and `w` is a presheaf on the universe:
/// `x ↦ ⋁_u w_u ∘ g(u)_x`.
pub fn bind(q: &Quantaloid, base: &[usize], universe: &[Presheaf], w: &Presheaf) -> Presheaf {
    let s = w.cod;
    let comps = base
        .iter()
        .enumerate()
        .map(|(x, &r)| {
            let h = q.hom(r, s);
            h.join_all(universe.iter().enumerate().map(|(u, g)| q.comp(r, g.cod, s, g.comps[x], w.comps[u])))
        })
        .collect();
    Presheaf { cod: s, comps }
}

/// `(s_X Σ)_x = ⋁_σ Σ_σ ∘ σ_x` for `Σ ∈ PPX`.
pub fn mult(q: &Quantaloid, px: &PresheafSet, big: &Presheaf) -> Presheaf {
    bind(q, &px.base, &px.elems, big)
}

/// The mate `Y → PX` of `φ: X ⇸ Y`: `mate(φ)(y)_x = φ(x,y)`.
pub fn mate(phi: &dyn Relation) -> Vec<Presheaf> {
    let (xs, ys) = (phi.src(), phi.dst());
    (0..ys.len())
        .map(|y| Presheaf { cod: ys[y], comps: (0..xs.len()).map(|x| phi.get(x, y)).collect() })
        .collect()
}

/// The relation `X ⇸ Y` whose mate is `g: Y → PX`.
pub fn unmate(g: &[Presheaf], src: &[usize]) -> QRel {
    let dst: Vec<usize> = g.iter().map(|p| p.cod).collect();
    QRel::from_fn(src, &dst, |x, y| g[y].comps[x])
}

/// `φ^⊙(τ)_x = ⋁_y τ_y ∘ φ(x,y)`, for `φ: X ⇸ Y` and `τ ∈ PY`.
pub fn kleisli_ext(q: &Quantaloid, phi: &dyn Relation, tau: &Presheaf) -> Presheaf {
    let (xs, ys) = (phi.src(), phi.dst());
    let s = tau.cod;
    Presheaf {
        cod: s,
        comps: (0..xs.len())
            .map(|x| {
                q.hom(xs[x], s)
                    .join_all((0..ys.len()).map(|y| q.comp(xs[x], ys[y], s, phi.get(x, y), tau.comps[y])))
            })
            .collect(),
    }
}

/// The counit `ε_X: X ⇸ PX`, `ε_X(x,σ) = σ_x`, evaluated on demand.
pub struct Counit<'a> {
    base: &'a [usize],
    px: &'a PresheafSet,
}

impl<'a> Counit<'a> {
    pub fn new(px: &'a PresheafSet) -> Self {
        Counit { base: &px.base, px }
    }
}

impl Relation for Counit<'_> {
    fn src(&self) -> &[usize] {
        self.base
    }
    fn dst(&self) -> &[usize] {
        self.px.array()
    }
    fn get(&self, x: usize, sigma: usize) -> usize {
        self.px.elems[sigma].comps[x]
    }
}

/// A presheaf drawn uniformly from `P X` given its base array.
pub fn random_presheaf(q: &Quantaloid, base: &[usize], rng: &mut impl Rng) -> Presheaf {
    let cod = rng.gen_range(0..q.n());
    Presheaf { cod, comps: base.iter().map(|&r| rng.gen_range(0..q.hom(r, cod).len())).collect() }
}

/// Renders a presheaf with hom-lattice labels, e.g. `⊤ ← [⊥, ⊤]`.
pub fn show_presheaf(q: &Quantaloid, base: &[usize], p: &Presheaf) -> String {
    let comps: Vec<&str> = base.iter().enumerate().map(|(x, &r)| q.hom(r, p.cod).label(p.comps[x])).collect();
    format!("{} ← [{}]", q.objects()[p.cod], comps.join(", "))
}

/// The monad laws of `(P, s, y)` on one base array, checked as equalities.
///
/// The unit laws quantify over `PX`. Associativity quantifies over `PPPX`:
/// exhaustively when it fits in `budget.ppx`, otherwise over the atoms
/// `a·δ_Σ` and bottoms that generate `PPPX` under joins (both sides preserve
/// joins), plus random points; when even `PPX` is too large it is sampled.
pub fn check_monad_laws(q: &Quantaloid, base: &[usize], budget: &Budget) -> Result<Vec<Check>> {
    let px = PresheafSet::build(q, base, budget.px)?;
    let dom = format!("|X| = {}", base.len());
    let mut out = Vec::new();

    let mut left = Tally::new("presheaf.unit-left", "s·y_P = 1");
    let mut right = Tally::new("presheaf.unit-right", "s·(y)_! = 1");
    let ys: Vec<usize> = (0..base.len()).map(|x| px.index_of(&yoneda(q, base, x)).unwrap()).collect();
    for (i, sigma) in px.elems.iter().enumerate() {
        let a = mult(q, &px, &yoneda(q, px.array(), i));
        left.same(a == *sigma, || format!("σ = {}", show_presheaf(q, base, sigma)));
        let b = mult(q, &px, &direct_image(q, &ys, px.array(), sigma));
        right.same(b == *sigma, || format!("σ = {}", show_presheaf(q, base, sigma)));
    }
    left.domain(format!("all of PX, {dom}"));
    right.domain(format!("all of PX, {dom}"));
    out.push(left.finish());
    out.push(right.finish());

    let mut assoc = Tally::new("presheaf.assoc", "s·s_P = s·(s)_!");
    let mut rng = rng_for(budget.seed, &format!("presheaf.assoc{base:?}"));
    match PresheafSet::build(q, px.array(), budget.ppx) {
        Ok(ppx) => {
            let s_px: Vec<usize> = ppx.elems.iter().map(|s| px.index_of(&mult(q, &px, s)).unwrap()).collect();
            let see = |big: &Presheaf, assoc: &mut Tally| {
                let a = mult(q, &px, &mult(q, &ppx, big));
                let b = mult(q, &px, &direct_image(q, &s_px, px.array(), big));
                assoc.same(a == b, || format!("Σ = {}", show_presheaf(q, ppx.array(), big)));
            };
            if count_presheaves(q, ppx.array()) <= budget.ppx as u128 {
                let pppx = PresheafSet::build(q, ppx.array(), budget.ppx)?;
                for big in &pppx.elems {
                    see(big, &mut assoc);
                }
                assoc.domain(format!("all of PPPX, {dom}"));
            } else {
                for c in 0..q.n() {
                    see(&Presheaf::bottom(q, ppx.array(), c), &mut assoc);
                    for (i, &r) in ppx.array().iter().enumerate() {
                        for a in 0..q.hom(r, c).len() {
                            let mut atom = Presheaf::bottom(q, ppx.array(), c);
                            atom.comps[i] = a;
                            see(&atom, &mut assoc);
                        }
                    }
                }
                for _ in 0..budget.samples {
                    see(&random_presheaf(q, ppx.array(), &mut rng), &mut assoc);
                }
                assoc.domain(format!("join-generators of PPPX plus {} random points, {dom}", budget.samples));
            }
        }
        Err(Error::Budget { .. }) => {
            for _ in 0..budget.samples {
                let inner: Vec<Presheaf> = (0..4).map(|_| random_presheaf(q, px.array(), &mut rng)).collect();
                let cod = rng.gen_range(0..q.n());
                let big = Presheaf {
                    cod,
                    comps: inner.iter().map(|s| rng.gen_range(0..q.hom(s.cod, cod).len())).collect(),
                };
                let a = mult(q, &px, &bind(q, px.array(), &inner, &big));
                let flat: Vec<Presheaf> = inner.iter().map(|s| mult(q, &px, s)).collect();
                let b = bind(q, base, &flat, &big);
                assoc.same(a == b, || format!("Σ over {} sampled presheaves", inner.len()));
            }
            assoc.mark_sampled();
            assoc.domain(format!("{} sampled points in PPPX, {dom}", budget.samples));
        }
        Err(e) => return Err(e),
    }
    out.push(assoc.finish());
    Ok(out)
}

/// Checks the rules `y_X ≤ f^!·y_Y·f` and `f^!·s_Y = s_X·(f^!)_!`, and the
/// monotonicity `φ ≤ φ', g ≤ g' ⇒ φ^⊙·g·h ≤ φ'^⊙·g'·h` on the given data.
#[allow(clippy::too_many_arguments)]
pub fn check_lemma31(
    q: &Quantaloid,
    x: &[usize],
    y: &[usize],
    f: &[usize],
    phi: &QRel,
    phi2: &QRel,
    g: &[Presheaf],
    g2: &[Presheaf],
    h: &[usize],
) -> Result<Vec<Check>> {
    check_map(f, x, y)?;
    let mut out = Vec::new();

    let premise = crate::qrel::rel_leq(q, phi, phi2)?
        && g.iter().zip(g2).all(|(a, b)| presheaf_leq(q, y, a, b));
    if premise {
        let mut mono = Tally::new("lemma31.monotone", "monotone whiskering");
        for (w, &z) in h.iter().enumerate() {
            let a = kleisli_ext(q, phi, &g[z]);
            let b = kleisli_ext(q, phi2, &g2[z]);
            mono.see(presheaf_leq(q, x, &a, &b), a == b, || format!("w = {w}"));
        }
        out.push(mono.finish());
    } else {
        out.push(Check::untested("lemma31.monotone", "monotone whiskering", "premise φ ≤ φ', g ≤ g' fails"));
    }

    let mut unit = Tally::new("lemma31.unit", "y ≤ f^!·y·f");
    for i in 0..x.len() {
        let a = yoneda(q, x, i);
        let b = inverse_image(f, &yoneda(q, y, f[i]));
        unit.see(presheaf_leq(q, x, &a, &b), a == b, || format!("x = {i}"));
    }
    out.push(unit.finish());

    let px = PresheafSet::build(q, x, DEFAULT_PX_LIMIT)?;
    let py = PresheafSet::build(q, y, DEFAULT_PX_LIMIT)?;
    let ppy = PresheafSet::build(q, py.array(), DEFAULT_PPX_LIMIT)?;
    let fshriek: Vec<usize> = py.elems.iter().map(|t| px.index_of(&inverse_image(f, t)).unwrap()).collect();
    let mut mu = Tally::new("lemma31.mult", "f^!·s = s·(f^!)_!");
    for big in &ppy.elems {
        let a = inverse_image(f, &mult(q, &py, big));
        let b = mult(q, &px, &direct_image(q, &fshriek, px.array(), big));
        mu.same(a == b, || format!("Σ = {}", show_presheaf(q, py.array(), big)));
    }
    out.push(mu.finish());
    Ok(out)
}

/// `ϑ_X(σ) = (ϑσ_x)_x`, a presheaf on `B X` whose array is `ϑ₀·|−|`.
pub fn theta_transform(theta: &LaxHom, base: &[usize], sigma: &Presheaf) -> Presheaf {
    Presheaf {
        cod: theta.obj(sigma.cod),
        comps: base.iter().enumerate().map(|(x, &r)| theta.apply(r, sigma.cod, sigma.comps[x])).collect(),
    }
}

/// Lax naturality and the unit and multiplication inequalities of `ϑ` as a
/// lax monad morphism, on one base array and all maps into the targets.
pub fn check_theta(
    src: &Quantaloid,
    dst: &Quantaloid,
    theta: &LaxHom,
    base: &[usize],
    targets: &[Vec<usize>],
) -> Result<Vec<Check>> {
    let bx: Vec<usize> = base.iter().map(|&r| theta.obj(r)).collect();
    let px = PresheafSet::build(src, base, DEFAULT_PX_LIMIT)?;
    let mut out = Vec::new();

    let mut nat = Tally::new("theta.natural", "(Bf)_!·ϑ ≤ ϑ·B(f_!)");
    for y in targets {
        let by: Vec<usize> = y.iter().map(|&r| theta.obj(r)).collect();
        for f in crate::qrel::all_maps(base, y, 1 << 16)? {
            for sigma in &px.elems {
                let a = direct_image(dst, &f, &by, &theta_transform(theta, base, sigma));
                let b = theta_transform(theta, y, &direct_image(src, &f, y, sigma));
                nat.see(presheaf_leq(dst, &by, &a, &b), a == b, || {
                    format!("f = {f:?}, σ = {}", show_presheaf(src, base, sigma))
                });
            }
        }
    }
    out.push(nat.finish());

    let mut unit = Tally::new("theta.unit", "y·B ≤ ϑ·By");
    for x in 0..base.len() {
        let a = yoneda(dst, &bx, x);
        let b = theta_transform(theta, base, &yoneda(src, base, x));
        unit.see(presheaf_leq(dst, &bx, &a, &b), a == b, || format!("x = {x}"));
    }
    out.push(unit.finish());

    let ppx = PresheafSet::build(src, px.array(), DEFAULT_PPX_LIMIT)?;
    let images: Vec<Presheaf> = px.elems.iter().map(|s| theta_transform(theta, base, s)).collect();
    let mut mu = Tally::new("theta.mult", "s·(ϑ)_!·ϑ_P ≤ ϑ·Bs");
    for big in &ppx.elems {
        let a = bind(dst, &bx, &images, &theta_transform(theta, px.array(), big));
        let b = theta_transform(theta, base, &mult(src, &px, big));
        mu.see(presheaf_leq(dst, &bx, &a, &b), a == b, || {
            format!("Σ = {}", show_presheaf(src, px.array(), big))
        });
    }
    out.push(mu.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::{diagonal, two};
    use crate::report::Status;

    #[test]
    fn sizes() {
        let q = two();
        assert_eq!(PresheafSet::build(&q, &[0, 0], 100).unwrap().len(), 4);
        assert_eq!(PresheafSet::build(&q, &[], 100).unwrap().len(), 1);
        let d2 = diagonal(&two()).unwrap();
        assert_eq!(PresheafSet::build(&d2, &[1], 100).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_is_sorted() {
        let d2 = diagonal(&two()).unwrap();
        let px = PresheafSet::build(&d2, &[0, 1, 1], 100).unwrap();
        assert!(px.elems.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_explicit() {
        let q = crate::quantaloid::luk(3);
        assert!(matches!(PresheafSet::build(&q, &[0; 7], 4096), Err(Error::Budget { .. })));
    }

    #[test]
    fn monad_laws_over_two() {
        let checks = check_monad_laws(&two(), &[0, 0], &Budget::default()).unwrap();
        assert_eq!(checks.len(), 3);
        for c in &checks {
            assert_eq!(c.status, Status::PassExhaustive, "{c}");
            assert!(c.strict);
        }
    }
}
