//! Lax λ-algebras, `Q`-categories and `(T,Q)`-categories on finite carriers.
//!
//! A structure `p: TX → PX` is stored as one presheaf per element of the
//! enumerated `TX`. The matching relation `α: X ⇸ TX` has `α(x, u) = p(u)_x`.

use std::sync::Arc;

use crate::distlaw::{builtin_law, DistLaw};
use crate::error::{Error, Result};
use crate::extension::{tabulate, ExtensionFamily};
use crate::monads::{Budget, Monad, MonadKind, SetMonad, TElem, TSet};
use crate::presheaf::{bind, direct_image, presheaf_leq, show_presheaf, yoneda, Counit, Presheaf, PresheafSet};
use crate::qrel::{cograph, compose, graph, QRel, Relation};
use crate::quantaloid::{add_chain, diagonal, two, Quantaloid};
use crate::report::{Check, Tally};
use crate::util::{odometer, rng_for};

/// A structure `p: TX → PX` on a set over `Q₀`.
#[derive(Clone, Debug)]
pub struct LaxAlgebra {
    pub base: Vec<usize>,
    pub tx: TSet,
    pub p: Vec<Presheaf>,
}

impl LaxAlgebra {
    /// Validates that `p` has one presheaf per element of `TX` and preserves arrays.
    pub fn new(q: &Quantaloid, t: &Monad, base: &[usize], p: Vec<Presheaf>, budget: &Budget) -> Result<Self> {
        let tx = t.tset(q, base, budget.domain)?;
        if p.len() != tx.len() {
            return Err(Error::schema("structure", format!("expected {} entries, one per element of TX", tx.len())));
        }
        for (i, s) in p.iter().enumerate() {
            s.validate(q, base).map_err(|e| Error::schema(format!("structure/{i}"), e.to_string()))?;
            if s.cod != tx.array[i] {
                return Err(Error::schema(format!("structure/{i}"), "p must preserve arrays"));
            }
        }
        Ok(LaxAlgebra { base: base.to_vec(), tx, p })
    }

    pub fn from_fn(
        q: &Quantaloid,
        t: &Monad,
        base: &[usize],
        budget: &Budget,
        f: impl Fn(&[usize]) -> Presheaf,
    ) -> Result<Self> {
        let tx = t.tset(q, base, budget.domain)?;
        let p = tx.elems.iter().map(|u| f(u)).collect();
        LaxAlgebra::new(q, t, base, p, budget)
    }

    pub fn at(&self, u: &[usize]) -> Option<&Presheaf> {
        self.tx.index_of(u).map(|i| &self.p[i])
    }
}

/// The points of `TTX` at which (g) is tested, with the index of `m_X(w)`.
struct MultPoints {
    points: Vec<(TElem, usize)>,
    sampled: bool,
    skipped: usize,
}

fn mult_points(t: &Monad, tx: &TSet, budget: &Budget, seed_name: &str) -> MultPoints {
    let n = tx.len();
    let (raw, sampled) = match SetMonad::enumerate(t, n, budget.domain) {
        Ok(all) => (all, false),
        Err(_) => {
            let mut rng = rng_for(budget.seed, seed_name);
            ((0..budget.samples).map(|_| t.sample(n, &mut rng, budget.max_set)).collect(), true)
        }
    };
    let mut points = Vec::with_capacity(raw.len());
    let mut skipped = 0;
    for w in raw {
        let inner: Vec<TElem> = w.iter().map(|&i| tx.elems[i].clone()).collect();
        match tx.index_of(&t.flatten(&inner)) {
            Some(j) => points.push((w, j)),
            None => skipped += 1,
        }
    }
    MultPoints { points, sampled, skipped }
}

fn list_note(t: &Monad, tally: &mut Tally) {
    if t.kind == MonadKind::List {
        tally.domain(format!("lists of length ≤ {}", t.list_len));
    }
}

fn unit_law(q: &Quantaloid, a: &LaxAlgebra) -> Check {
    let mut tally = Tally::new("alg.f", "(f) lax unit law y_X ≤ p·e_X");
    for x in 0..a.base.len() {
        let Some(px) = a.at(&[x]) else { continue };
        let y = yoneda(q, &a.base, x);
        tally.see(presheaf_leq(q, &a.base, &y, px), &y == px, || {
            format!("x = {x}: p(e x) = {}", show_presheaf(q, &a.base, px))
        });
    }
    tally.domain("all points of X");
    tally.finish()
}

fn mult_law(q: &Quantaloid, t: &Monad, law: &dyn DistLaw, a: &LaxAlgebra, pts: &MultPoints) -> Check {
    let mut tally = Tally::new("alg.g", "(g) lax multiplication law s_X·p_!·λ_X·Tp ≤ p·m_X");
    if pts.sampled {
        tally.mark_sampled();
    }
    for (w, j) in &pts.points {
        let z = t.map(w, |&i| a.p[i].clone());
        let rho = law.eval(q, t, &a.base, &z, &a.tx);
        let lhs = bind(q, &a.base, &a.p, &rho);
        let rhs = &a.p[*j];
        tally.see(presheaf_leq(q, &a.base, &lhs, rhs), &lhs == rhs, || {
            let ws: Vec<String> = w.iter().map(|&i| format!("{:?}", a.tx.elems[i])).collect();
            format!(
                "w = [{}]: s·p_!·λ·Tp(w) = {}, p(m w) = {}",
                ws.join(" "),
                show_presheaf(q, &a.base, &lhs),
                show_presheaf(q, &a.base, rhs)
            )
        });
    }
    if pts.skipped > 0 {
        tally.domain(format!("elements of TTX whose flattening lies in the universe ({} skipped)", pts.skipped));
    } else {
        tally.domain("all of TTX");
    }
    list_note(t, &mut tally);
    tally.finish()
}

/// Laws (f) and (g).
pub fn check_algebra(
    q: &Quantaloid,
    t: &Monad,
    law: &dyn DistLaw,
    a: &LaxAlgebra,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let pts = mult_points(t, &a.tx, budget, &format!("alg.g/{}/{}/{}", law.name(), t.name(), q.name()));
    Ok(vec![unit_law(q, a), mult_law(q, t, law, a, &pts)])
}

fn arrays_preserved(f: &[usize], src: &[usize], dst: &[usize]) -> Option<String> {
    if f.len() != src.len() {
        return Some(format!("f has {} entries for a {}-element domain", f.len(), src.len()));
    }
    (0..f.len()).find_map(|x| match dst.get(f[x]) {
        None => Some(format!("f({x}) = {} is outside the codomain", f[x])),
        Some(&b) if b != src[x] => Some(format!("f({x}) = {} changes the array from {} to {b}", f[x], src[x])),
        _ => None,
    })
}

/// (h) `f_!·p ≤ q·Tf`. A map that does not preserve arrays fails with a witness.
pub fn check_hom(q: &Quantaloid, t: &Monad, f: &[usize], a: &LaxAlgebra, b: &LaxAlgebra) -> Check {
    const NAME: &str = "alg.h";
    const LABEL: &str = "(h) lax homomorphism law f_!·p ≤ q·Tf";
    if let Some(w) = arrays_preserved(f, &a.base, &b.base) {
        return Check::fact(NAME, LABEL, false, Some(w));
    }
    let mut tally = Tally::new(NAME, LABEL);
    for (i, u) in a.tx.elems.iter().enumerate() {
        let v = t.fmap_vec(u, f);
        let Some(rhs) = b.at(&v) else { continue };
        let lhs = direct_image(q, f, &b.base, &a.p[i]);
        tally.see(presheaf_leq(q, &b.base, &lhs, rhs), &lhs == rhs, || {
            format!(
                "u = {u:?}: f_!(p u) = {}, q(Tf u) = {}",
                show_presheaf(q, &b.base, &lhs),
                show_presheaf(q, &b.base, rhs)
            )
        });
    }
    list_note(t, &mut tally);
    tally.finish()
}

/// A `Q`-category `(X, a)` with `a(x, y): |x| → |y|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCategory {
    pub base: Vec<usize>,
    pub a: QRel,
}

impl QCategory {
    /// The identity-law algebra `p(y)_x = a(x, y)`.
    pub fn to_algebra(&self, q: &Quantaloid, budget: &Budget) -> Result<LaxAlgebra> {
        let a = &self.a;
        LaxAlgebra::from_fn(q, &Monad::identity(), &self.base, budget, |u| {
            Presheaf::new(self.base[u[0]], (0..self.base.len()).map(|x| a.get(x, u[0])).collect())
        })
    }

    /// Reads an identity-monad algebra as a `Q`-category.
    pub fn from_algebra(alg: &LaxAlgebra) -> Result<Self> {
        let n = alg.base.len();
        let cols: Option<Vec<&Presheaf>> = (0..n).map(|y| alg.at(&[y])).collect();
        let cols = cols.ok_or_else(|| Error::Refused("not a structure for the identity monad".into()))?;
        let a = QRel::from_fn(&alg.base, &alg.base, |x, y| cols[y].comps[x]);
        Ok(QCategory { base: alg.base.clone(), a })
    }
}

/// `1_{|x|} ≤ a(x,x)` and `a(y,z)∘a(x,y) ≤ a(x,z)`, pointwise.
pub fn check_qcategory(q: &Quantaloid, c: &QCategory) -> Vec<Check> {
    let (base, a) = (&c.base, &c.a);
    let n = base.len();
    let mut refl = Tally::new("qcat.reflexive", "1_{|x|} ≤ a(x,x)");
    for x in 0..n {
        let (r, v) = (base[x], a.get(x, x));
        refl.see(q.leq(r, r, q.id(r), v), q.id(r) == v, || format!("x = {x}"));
    }
    let mut trans = Tally::new("qcat.transitive", "a(y,z)∘a(x,y) ≤ a(x,z)");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = q.comp(base[x], base[y], base[z], a.get(x, y), a.get(y, z));
                let rhs = a.get(x, z);
                trans.see(q.leq(base[x], base[z], lhs, rhs), lhs == rhs, || format!("x = {x}, y = {y}, z = {z}"));
            }
        }
    }
    vec![refl.finish(), trans.finish()]
}

/// A `(T,Q)`-category `(X, α: X ⇸ TX)`.
#[derive(Clone, Debug)]
pub struct TQCategory {
    pub base: Vec<usize>,
    pub tx: TSet,
    pub alpha: QRel,
}

/// `α = p^∘·ε_X`, composed as relations through the enumerated `PX`.
pub fn algebra_to_category(q: &Quantaloid, a: &LaxAlgebra, budget: &Budget) -> Result<TQCategory> {
    let px = PresheafSet::build(q, &a.base, budget.px)?;
    let p: Vec<usize> = a.p.iter().map(|s| px.index_of(s).expect("p lands in PX")).collect();
    let p_co = cograph(q, &p, &a.tx.array, px.array())?;
    let alpha = compose(q, &p_co, &Counit::new(&px))?;
    Ok(TQCategory { base: a.base.clone(), tx: a.tx.clone(), alpha })
}

/// `p = ⃖α`.
pub fn category_to_algebra(c: &TQCategory) -> LaxAlgebra {
    let n = c.base.len();
    let p = (0..c.tx.len())
        .map(|u| Presheaf::new(c.tx.array[u], (0..n).map(|x| c.alpha.get(x, u)).collect()))
        .collect();
    LaxAlgebra { base: c.base.clone(), tx: c.tx.clone(), p }
}

pub(crate) fn rel_tally(q: &Quantaloid, tally: &mut Tally, lhs: &QRel, rhs: &QRel, show: impl Fn(usize, usize) -> String) {
    let (src, dst) = (lhs.src(), lhs.dst());
    for x in 0..src.len() {
        for y in 0..dst.len() {
            let (a, b) = (lhs.get(x, y), rhs.get(x, y));
            tally.see(q.leq(src[x], dst[y], a, b), a == b, || show(x, y));
        }
    }
}

/// `1_X^∘ ≤ e_X^∘∘α` and `T̂α∘α ≤ m_X^∘∘α`, with every composite formed as
/// a relation.
pub fn check_category(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    c: &TQCategory,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let (base, tx) = (&c.base, &c.tx);
    let e: Vec<usize> = (0..base.len())
        .map(|x| tx.index_of(&[x]).ok_or_else(|| Error::Refused(format!("e({x}) is not enumerated"))))
        .collect::<Result<_>>()?;
    let lhs = QRel::identity(q, base);
    let rhs = compose(q, &cograph(q, &e, base, &tx.array)?, &c.alpha)?;
    let mut unit = Tally::new("cat.unit", "1_X^∘ ≤ e_X^∘∘α");
    rel_tally(q, &mut unit, &lhs, &rhs, |x, y| format!("x = {x}, x' = {y}"));

    let pts = mult_points(t, tx, budget, &format!("cat.mult/{}/{}/{}", fam.name(), t.name(), q.name()));
    let ttx_elems: Vec<TElem> = pts.points.iter().map(|(w, _)| w.clone()).collect();
    let ttx_array = ttx_elems.iter().map(|w| t.array_of(q, &tx.array, w)).collect();
    let ttx = TSet::new(ttx_elems, ttx_array);
    let m: Vec<usize> = pts.points.iter().map(|&(_, j)| j).collect();
    let lhs = compose(q, &tabulate(fam, q, t, &c.alpha, tx, &ttx), &c.alpha)?;
    let rhs = compose(q, &cograph(q, &m, &ttx.array, &tx.array)?, &c.alpha)?;
    let mut mult = Tally::new("cat.mult", "T̂α∘α ≤ m_X^∘∘α");
    if pts.sampled {
        mult.mark_sampled();
    }
    rel_tally(q, &mut mult, &lhs, &rhs, |x, w| format!("x = {x}, W = {:?}", ttx.elems[w]));
    list_note(t, &mut mult);
    Ok(vec![unit.finish(), mult.finish()])
}

/// `α∘f^∘ ≤ (Tf)^∘∘β` for `f: (X, α) → (Y, β)`.
pub fn check_functor(q: &Quantaloid, t: &Monad, f: &[usize], a: &TQCategory, b: &TQCategory) -> Result<Check> {
    const NAME: &str = "cat.functor";
    const LABEL: &str = "α∘f^∘ ≤ (Tf)^∘∘β";
    if let Some(w) = arrays_preserved(f, &a.base, &b.base) {
        return Ok(Check::fact(NAME, LABEL, false, Some(w)));
    }
    let tf: Vec<usize> = a
        .tx
        .elems
        .iter()
        .map(|u| b.tx.index_of(&t.fmap_vec(u, f)).ok_or_else(|| Error::Refused(format!("Tf({u:?}) is not enumerated"))))
        .collect::<Result<_>>()?;
    let lhs = compose(q, &a.alpha, &cograph(q, f, &a.base, &b.base)?)?;
    let rhs = compose(q, &cograph(q, &tf, &a.tx.array, &b.tx.array)?, &b.alpha)?;
    let mut tally = Tally::new(NAME, LABEL);
    rel_tally(q, &mut tally, &lhs, &rhs, |y, u| format!("y = {y}, u = {:?}", a.tx.elems[u]));
    Ok(tally.finish())
}

/// `p = ⋀ᵢ fᵢ^!·qᵢ·Tfᵢ`, pointwise `(pz)_x = ⋀ᵢ (qᵢ(Tfᵢ z))_{fᵢx}`. The flag
/// is set for the empty family, whose initial structure is indiscrete.
pub fn initial_structure(
    q: &Quantaloid,
    t: &Monad,
    base: &[usize],
    cone: &[(Vec<usize>, &LaxAlgebra)],
    budget: &Budget,
) -> Result<(LaxAlgebra, bool)> {
    for (i, (f, b)) in cone.iter().enumerate() {
        if let Some(w) = arrays_preserved(f, base, &b.base) {
            return Err(Error::schema(format!("cone/{i}"), w));
        }
    }
    let tx = t.tset(q, base, budget.domain)?;
    let mut p = Vec::with_capacity(tx.len());
    for (zi, z) in tx.elems.iter().enumerate() {
        let s = tx.array[zi];
        let mut comps = Vec::with_capacity(base.len());
        for (x, &r) in base.iter().enumerate() {
            let h = q.hom(r, s);
            let mut v = h.top();
            for (f, b) in cone {
                let Some(col) = b.at(&t.fmap_vec(z, f)) else {
                    return Err(Error::Refused(format!("T{f:?}({z:?}) lies outside the enumerated universe")));
                };
                v = h.meet(v, col.comps[f[x]]);
            }
            comps.push(v);
        }
        p.push(Presheaf::new(s, comps));
    }
    Ok((LaxAlgebra::new(q, t, base, p, budget)?, cone.is_empty()))
}

/// The initial structure as a relation, `α = ⋀ᵢ (Tfᵢ)^∘∘βᵢ∘(fᵢ)_∘`.
pub fn initial_category(
    q: &Quantaloid,
    t: &Monad,
    base: &[usize],
    cone: &[(Vec<usize>, &TQCategory)],
    budget: &Budget,
) -> Result<TQCategory> {
    let tx = t.tset(q, base, budget.domain)?;
    let mut alpha = QRel::top(q, base, &tx.array);
    for (f, b) in cone {
        let tf: Vec<usize> = tx
            .elems
            .iter()
            .map(|u| b.tx.index_of(&t.fmap_vec(u, f)).ok_or_else(|| Error::Refused(format!("T{f:?}({u:?}) is not enumerated"))))
            .collect::<Result<_>>()?;
        let pulled = compose(q, &cograph(q, &tf, &tx.array, &b.tx.array)?, &compose(q, &b.alpha, &graph(q, f, base, &b.base)?)?)?;
        for x in 0..base.len() {
            for u in 0..tx.len() {
                alpha.set(x, u, q.meet(base[x], tx.array[u], alpha.get(x, u), pulled.get(x, u)));
            }
        }
    }
    Ok(TQCategory { base: base.to_vec(), tx, alpha })
}

/// Every structure on `X` passing (f) and (g), in odometer order over the
/// candidate presheaves of each element of `TX`.
pub fn enumerate_algebras(
    q: &Quantaloid,
    t: &Monad,
    law: &dyn DistLaw,
    base: &[usize],
    budget: &Budget,
) -> Result<Vec<LaxAlgebra>> {
    let tx = t.tset(q, base, budget.domain)?;
    let px = PresheafSet::build(q, base, budget.px)?;
    let choices: Vec<Vec<usize>> = (0..tx.len())
        .map(|i| {
            let u = &tx.elems[i];
            px.with_cod(tx.array[i])
                .filter(|&s| {
                    // (f) only constrains p at units
                    u.len() != 1 || t.kind == MonadKind::Powerset && u.is_empty() || {
                        let x = u[0];
                        let sigma = px.get(s);
                        q.leq(base[x], sigma.cod, q.id(base[x]), sigma.comps[x])
                    }
                })
                .collect()
        })
        .collect();
    let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if total > budget.domain as u128 {
        return Err(Error::budget("candidate structures", total, budget.domain as u128));
    }
    let pts = mult_points(t, &tx, budget, &format!("enumerate/{}/{}/{}", law.name(), t.name(), q.name()));
    let sizes: Vec<usize> = choices.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for pick in odometer(&sizes) {
        let p = pick.iter().enumerate().map(|(i, &j)| px.get(choices[i][j]).clone()).collect();
        let a = LaxAlgebra { base: base.to_vec(), tx: tx.clone(), p };
        if unit_law(q, &a).passed() && !mult_law(q, t, law, &a, &pts).failed() {
            out.push(a);
        }
    }
    Ok(out)
}

fn require_powerset(t: &Monad) -> Result<()> {
    if t.kind == MonadKind::Powerset {
        Ok(())
    } else {
        Err(Error::Refused("closure spaces need the powerset monad".into()))
    }
}

/// The level closure `A^(u) = {x | c(A)(x) ≥ u}` of a `V`-closure space,
/// defined only for integral quantales.
pub fn level_closure(q: &Quantaloid, t: &Monad, c: &LaxAlgebra, set: &[usize], u: usize) -> Result<Vec<usize>> {
    require_powerset(t)?;
    if !q.is_quantale() || q.unit() != q.lattice().top() {
        return Err(Error::Refused(format!("{} is not an integral quantale", q.name())));
    }
    let ca = c.at(set).ok_or_else(|| Error::schema("set", "not a subset of the carrier"))?;
    Ok((0..c.base.len()).filter(|&x| q.lattice().leq(u, ca.comps[x])).collect())
}

/// `c(∅) = ⊥` and `c(A∪B) = c(A) ∨ c(B)`.
pub fn check_additive(q: &Quantaloid, t: &Monad, c: &LaxAlgebra) -> Result<Vec<Check>> {
    require_powerset(t)?;
    let l = q.lattice();
    let empty = c.at(&[]).expect("∅ is enumerated");
    let bottom = empty.comps.iter().all(|&v| v == l.bottom());
    let mut union = Tally::new("cls.union", "c(A∪B) = c(A) ∨ c(B)");
    for (i, a) in c.tx.elems.iter().enumerate() {
        for (j, b) in c.tx.elems.iter().enumerate() {
            let ab = t.normalize([a.clone(), b.clone()].concat());
            let lhs = &c.at(&ab).expect("unions are enumerated").comps;
            let rhs: Vec<usize> = (0..c.base.len()).map(|x| l.join(c.p[i].comps[x], c.p[j].comps[x])).collect();
            union.same(*lhs == rhs, || format!("A = {a:?}, B = {b:?}"));
        }
    }
    Ok(vec![
        Check::fact("cls.empty", "c(∅) = ⊥", bottom, (!bottom).then(|| "c(∅) is not ⊥".to_string())),
        union.finish(),
    ])
}

/// Inputs for the example instances.
#[derive(Clone, Debug)]
pub enum ExampleSpec {
    /// A multiordered set over `two` with `L` and `⊗`: the related pairs `(𝔵, z)`.
    Multiorder { n: usize, related: Vec<(TElem, usize)> },
    /// A partial order over `D2`: membership in `A` and the order on `A`.
    ParOrd { in_a: Vec<bool>, order: Vec<(usize, usize)> },
    /// `d⁺((x,α),(y,β)) = d(x,y) + max{α,β}` over `D(add_chain(n))`, for a
    /// distance table `d` over `add_chain(n)`.
    PartialMetricPlus { n: usize, d: Vec<Vec<usize>> },
}

/// A validated example with the setting it lives in.
pub struct Instance {
    pub q: Quantaloid,
    pub t: Monad,
    pub law: Arc<dyn DistLaw>,
    pub alg: LaxAlgebra,
    pub checks: Vec<Check>,
}

fn validated(q: Quantaloid, t: Monad, alg: LaxAlgebra, budget: &Budget, what: &str) -> Result<Instance> {
    let law: Arc<dyn DistLaw> = builtin_law(if t.kind == MonadKind::List { "tensor" } else { "identity" }, &q, &t)?.into();
    let checks = check_algebra(&q, &t, law.as_ref(), &alg, budget)?;
    if let Some(bad) = checks.iter().find(|c| c.failed()) {
        return Err(Error::Refused(format!("{what} fails {}: {}", bad.name, bad.witness.clone().unwrap_or_default())));
    }
    Ok(Instance { q, t, law, alg, checks })
}

/// Builds and validates an example instance.
pub fn build_example(spec: &ExampleSpec, budget: &Budget) -> Result<Instance> {
    match spec {
        ExampleSpec::Multiorder { n, related } => {
            let q = two();
            let t = Monad::standard(&q, MonadKind::List, budget.list_len)?;
            let base = vec![0; *n];
            let alg = LaxAlgebra::from_fn(&q, &t, &base, budget, |u| {
                Presheaf::new(0, (0..*n).map(|z| related.iter().any(|(v, y)| v == u && *y == z) as usize).collect())
            })?;
            validated(q, t, alg, budget, "the multiorder")
        }
        ExampleSpec::ParOrd { in_a, order } => {
            let q = diagonal(&two())?;
            let t = Monad::identity();
            let n = in_a.len();
            let base: Vec<usize> = in_a.iter().map(|&b| b as usize).collect();
            if let Some(&(x, y)) = order.iter().find(|&&(x, y)| x >= n || y >= n || !in_a[x] || !in_a[y]) {
                return Err(Error::Refused(format!("the pair ({x}, {y}) is not in A × A")));
            }
            let rel = |x: usize, y: usize| x == y && in_a[x] || order.contains(&(x, y));
            let a = QRel::from_fn(&base, &base, |x, y| rel(x, y) as usize);
            let cat = QCategory { base: base.clone(), a };
            if let Some(bad) = check_qcategory(&q, &cat).into_iter().find(Check::failed) {
                return Err(Error::Refused(format!("the order is not transitive: {}", bad.witness.unwrap_or_default())));
            }
            let alg = cat.to_algebra(&q, budget)?;
            validated(q, t, alg, budget, "the partial order")
        }
        ExampleSpec::PartialMetricPlus { n, d } => {
            let v = add_chain(*n);
            let q = diagonal(&v)?;
            let info = q.diagonal_info().expect("diagonal").clone();
            let k = d.len();
            if d.iter().any(|row| row.len() != k || row.iter().any(|&c| c > *n)) {
                return Err(Error::schema("d", format!("a square table of costs in 0..={n} is required")));
            }
            for x in 0..k {
                if d[x][x] != 0 {
                    return Err(Error::Refused(format!("d({x},{x}) = {} is not 0", d[x][x])));
                }
                for y in 0..k {
                    for z in 0..k {
                        if d[x][z] > (d[x][y] + d[y][z]).min(*n) {
                            return Err(Error::Refused(format!("the triangle inequality fails at ({x}, {y}, {z})")));
                        }
                    }
                }
            }
            // (x, α) is the element x·(n+1) + α, with array α
            let m = n + 1;
            let base: Vec<usize> = (0..k * m).map(|i| i % m).collect();
            let cost = |i: usize, j: usize| (d[i / m][j / m] + (i % m).max(j % m)).min(*n);
            let a = QRel::from_fn(&base, &base, |i, j| {
                info.lookup(base[i], base[j], cost(i, j)).expect("d⁺ lies below both arrays")
            });
            let cat = QCategory { base, a };
            let alg = cat.to_algebra(&q, budget)?;
            validated(q, Monad::identity(), alg, budget, "d⁺")
        }
    }
}
