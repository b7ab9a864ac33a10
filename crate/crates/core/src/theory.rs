//! Topological theories `ξ: TPQ₀ → PQ₀`, the maximal law `λ^ξ` they induce
//! and the Galois correspondence between theories and laws.
//!
//! An element of `TPQ₀` is passed as its entries, presheaves on `Q₀` (the
//! set of objects with the identity array). A theory belongs to one pair
//! `(Q, T)`; the `q` and `t` passed at evaluation must be that pair. For the
//! list monad, quantification over `TPQ₀` is bounded by the list length.

pub mod hofmann;

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::distlaw::{draw_elem, induced_xi, is_maximal, law_cod, law_leq, DistLaw, Universe};
use crate::error::{Error, Result};
use crate::monads::{Budget, Monad, MonadKind, TSet, Zeta};
use crate::presheaf::{direct_image, mult, presheaf_leq, random_presheaf, show_presheaf, yoneda, Presheaf, PresheafSet};
use crate::quantaloid::Quantaloid;
use crate::report::{Check, Tally};
use crate::util::{odometer, product, rng_for};

type XiFn = dyn Fn(&Quantaloid, &Monad, &[Presheaf]) -> Presheaf + Send + Sync;

#[derive(Clone)]
enum Repr {
    Table(Arc<HashMap<Vec<Presheaf>, Presheaf>>),
    Fn(Arc<XiFn>),
}

/// A candidate topological theory: a map `ξ: TPQ₀ → PQ₀`, given as a table
/// or as an evaluation function. Validity is decided by [`check_theory`].
#[derive(Clone)]
pub struct TopTheory {
    name: String,
    repr: Repr,
}

impl TopTheory {
    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(&Quantaloid, &Monad, &[Presheaf]) -> Presheaf + Send + Sync + 'static,
    ) -> Self {
        TopTheory { name: name.into(), repr: Repr::Fn(Arc::new(f)) }
    }

    /// A table keyed by elements of `TPQ₀` in the monad's normal form.
    pub fn from_table(name: impl Into<String>, entries: impl IntoIterator<Item = (Vec<Presheaf>, Presheaf)>) -> Self {
        TopTheory { name: name.into(), repr: Repr::Table(Arc::new(entries.into_iter().collect())) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `ξ(w)`.
    ///
    /// # Panics
    /// When a table has no entry for `w`.
    pub fn eval(&self, q: &Quantaloid, t: &Monad, w: &[Presheaf]) -> Presheaf {
        match &self.repr {
            Repr::Fn(f) => f(q, t, w),
            Repr::Table(tab) => {
                tab.get(w).cloned().unwrap_or_else(|| panic!("theory {} has no entry for {w:?}", self.name))
            }
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    /// The table entries in sorted order, if this is a table.
    pub fn entries(&self) -> Option<Vec<(Vec<Presheaf>, Presheaf)>> {
        match &self.repr {
            Repr::Table(tab) => {
                let mut v: Vec<_> = tab.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                v.sort();
                Some(v)
            }
            Repr::Fn(_) => None,
        }
    }

    /// Evaluates the theory on all of `TPQ₀` and stores the result as a
    /// table. Refused for lists, whose `TPQ₀` is infinite.
    pub fn tabulate(&self, q: &Quantaloid, t: &Monad, budget: &Budget) -> Result<TopTheory> {
        if t.kind == MonadKind::List {
            return Err(Error::Refused("theories for the list monad are kept as evaluation functions".into()));
        }
        let objs = Objects::new(q, budget)?;
        let tp = crate::monads::SetMonad::enumerate(t, objs.pq0.len(), budget.domain)?;
        let entries = tp.iter().map(|u| {
            let w = objs.entries(u);
            let v = self.eval(q, t, &w);
            (w, v)
        });
        Ok(TopTheory::from_table(self.name.clone(), entries.collect::<Vec<_>>()))
    }
}

/// `Q₀` and `PQ₀`.
pub struct Objects {
    pub ids: Vec<usize>,
    pub pq0: PresheafSet,
}

impl Objects {
    pub fn new(q: &Quantaloid, budget: &Budget) -> Result<Self> {
        let ids: Vec<usize> = (0..q.n()).collect();
        let pq0 = PresheafSet::build(q, &ids, budget.px)?;
        Ok(Objects { ids, pq0 })
    }

    pub fn entries(&self, u: &[usize]) -> Vec<Presheaf> {
        u.iter().map(|&i| self.pq0.elems[i].clone()).collect()
    }
}

/// The enumerated `TA`, with lists long enough to contain elements of
/// length `len`.
pub fn t_covering(q: &Quantaloid, t: &Monad, base: &[usize], len: usize, limit: usize) -> Result<TSet> {
    if t.kind == MonadKind::List && len > t.list_len {
        t.with_list_len(len).tset(q, base, limit)
    } else {
        t.tset(q, base, limit)
    }
}

/// Names accepted by [`builtin_theory`].
pub const BUILTIN_THEORIES: &[&str] = &["identity", "tensor", "top", "ultra"];

/// The theories induced by the builtin laws, written out directly.
pub fn builtin_theory(name: &str, q: &Quantaloid, t: &Monad) -> Result<TopTheory> {
    let refuse = |why: &str| Err(Error::Refused(format!("theory {name} over {} with {}: {why}", q.name(), t.name())));
    match name {
        "identity" => {
            if t.kind != MonadKind::Identity {
                return refuse("needs the identity monad");
            }
            Ok(TopTheory::from_fn("identity", |_q, _t, w| w[0].clone()))
        }
        "tensor" => {
            if t.kind != MonadKind::List {
                return refuse("needs the list monad");
            }
            if q.is_quantale() && t.zeta == Zeta::Trivial {
                Ok(TopTheory::from_fn("tensor", |q, _t, w| {
                    Presheaf::new(0, vec![w.iter().fold(q.unit(), |acc, s| q.tensor(acc, s.comps[0]))])
                }))
            } else if q.diagonal_info().is_some() && t.zeta == Zeta::Tensor {
                Ok(TopTheory::from_fn("tensor", diagonal_tensor_xi))
            } else {
                refuse("needs a quantale, or a diagonal quantaloid with ζ = tensor")
            }
        }
        "top" => {
            if t.kind != MonadKind::Powerset || !q.is_quantale() {
                return refuse("needs the powerset monad over a quantale");
            }
            Ok(TopTheory::from_fn("top", |q, _t, _w| Presheaf::new(0, vec![q.lattice().top()])))
        }
        "ultra" => {
            if t.kind != MonadKind::Ultrafilter || !q.is_quantale() {
                return refuse("needs the ultrafilter monad over a quantale");
            }
            Ok(TopTheory::from_fn("ultra", ultra_xi))
        }
        _ => Err(Error::Refused(format!("unknown theory {name}"))),
    }
}

/// `(ξ(σ¹,…,σⁿ))_u = ⋁_{v₁⊗…⊗vₙ=u} σ¹_{v₁}⊗…⊗σⁿ_{vₙ}` over a diagonal
/// quantaloid.
fn diagonal_tensor_xi(q: &Quantaloid, t: &Monad, w: &[Presheaf]) -> Presheaf {
    let info = q.diagonal_info().expect("diagonal quantaloid");
    let v = &info.base;
    let l = v.lattice();
    let cod = law_cod(q, t, w);
    let mut acc = vec![l.bottom(); q.n()];
    for vs in odometer(&vec![q.n(); w.len()]) {
        let u = vs.iter().fold(v.unit(), |a, &x| v.tensor(a, x));
        let d = vs.iter().zip(w).fold(v.unit(), |a, (&x, s)| v.tensor(a, info.elem(x, s.cod, s.comps[x])));
        acc[u] = l.join(acc[u], d);
    }
    let comps = acc
        .iter()
        .enumerate()
        .map(|(u, &d)| info.lookup(u, cod, d).expect("a tensor of components lies below both boundaries"))
        .collect();
    Presheaf { cod, comps }
}

/// `ξ(ż) = ⋀_{C∈ż} ⋁C` for a principal ultrafilter on `PQ₀ ≅ V`, with the
/// members of `ż` enumerated literally.
fn ultra_xi(q: &Quantaloid, _t: &Monad, w: &[Presheaf]) -> Presheaf {
    let l = q.lattice();
    let n = l.len();
    let s = w[0].comps[0];
    if n > 16 {
        return w[0].clone();
    }
    let mut acc = l.top();
    for mask in 0..1usize << n {
        if mask >> s & 1 == 1 {
            acc = l.meet(acc, l.join_all((0..n).filter(|i| mask >> i & 1 == 1)));
        }
    }
    Presheaf::new(0, vec![acc])
}

/// `ξ^λ = ζ_!·λ_{Q₀}`, evaluated on demand.
///
/// For lists the join runs over lists as long as the argument or the
/// configured bound, whichever is larger; this is exact for laws that
/// vanish off equal lengths and for maximal laws.
pub fn induced_theory(q: &Quantaloid, law: Arc<dyn DistLaw>) -> TopTheory {
    let ids: Vec<usize> = (0..q.n()).collect();
    let cache: Mutex<HashMap<usize, Arc<TSet>>> = Mutex::new(HashMap::new());
    let name = format!("ξ^{}", law.name());
    TopTheory::from_fn(name, move |q, t, w| {
        let len = if t.kind == MonadKind::List { w.len().max(t.list_len) } else { 0 };
        let tq0 = cache
            .lock()
            .expect("cover lock")
            .entry(len)
            .or_insert_with(|| Arc::new(t_covering(q, t, &ids, len, usize::MAX).expect("TQ₀ enumerates")))
            .clone();
        induced_xi(q, t, law.as_ref(), w, &tq0)
    })
}

/// `ξ^λ` together with the six diagrams for `ξ^λ` and `θ^λ = ξ_!·λ_{PQ₀}`.
///
/// The construction is refused when a diagram for `ξ`, or `s·θ ≤ ξ·Ts`,
/// fails: each of these follows from one of (b)–(e), so `λ` was not a law.
/// The unit and multiplication laws of `θ^λ` are reported but not required;
/// they fail for `δ`.
pub fn induce_theory(
    q: &Quantaloid,
    t: &Monad,
    law: Arc<dyn DistLaw>,
    budget: &Budget,
) -> Result<(TopTheory, Vec<Check>)> {
    let theory = induced_theory(q, law.clone());
    let checks = induced_diagrams(q, t, law.as_ref(), &theory, budget)?;
    let required = |c: &&Check| !matches!(c.name.as_str(), "induced.theta-unit" | "induced.theta-mult");
    if let Some(c) = checks.iter().filter(required).find(|c| c.failed()) {
        return Err(Error::Refused(format!(
            "{} fails for {}: {}",
            c.label,
            law.name(),
            c.witness.clone().unwrap_or_default()
        )));
    }
    Ok((theory, checks))
}

/// The maximal law `λ^ξ`: `(λ_X z)_u = (ξ(T(a_!)z))_{|u|}`.
pub struct MaximalLaw {
    theory: TopTheory,
}

impl DistLaw for MaximalLaw {
    fn name(&self) -> String {
        format!("λ^{}", self.theory.name)
    }

    fn eval(&self, q: &Quantaloid, t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        let ids: Vec<usize> = (0..q.n()).collect();
        let w = t.map(z, |s| direct_image(q, base, &ids, s));
        let rho = self.theory.eval(q, t, &w);
        Presheaf { cod: rho.cod, comps: tx.array.iter().map(|&r| rho.comps[r]).collect() }
    }
}

pub fn maximal_law(theory: &TopTheory) -> MaximalLaw {
    MaximalLaw { theory: theory.clone() }
}

/// `ξ` on all of `T(PQ₀)` up to a list length, as indices into `PQ₀`.
struct XiTable {
    tp: TSet,
    xi: Vec<Option<usize>>,
}

/// Shared state of the theory checks for one `(Q, T, ξ)`.
struct Ctx<'a> {
    q: &'a Quantaloid,
    t: &'a Monad,
    theory: &'a TopTheory,
    budget: &'a Budget,
    objs: Objects,
    ppq0: Option<PresheafSet>,
    tables: RefCell<HashMap<usize, Option<Arc<XiTable>>>>,
}

impl<'a> Ctx<'a> {
    fn new(q: &'a Quantaloid, t: &'a Monad, theory: &'a TopTheory, budget: &'a Budget) -> Result<Self> {
        let objs = Objects::new(q, budget)?;
        let ppq0 = PresheafSet::build(q, objs.pq0.array(), budget.ppx).ok();
        Ok(Ctx { q, t, theory, budget, objs, ppq0, tables: RefCell::new(HashMap::new()) })
    }

    fn xi(&self, w: &[Presheaf]) -> Presheaf {
        self.theory.eval(self.q, self.t, w)
    }

    fn rng(&self, check: &str) -> ChaCha8Rng {
        rng_for(self.budget.seed, &format!("{check}/{}/{}/{}", self.theory.name, self.t.name(), self.q.name()))
    }

    fn show_w(&self, w: &[Presheaf]) -> String {
        let parts: Vec<String> = w.iter().map(|s| show_presheaf(self.q, &self.objs.ids, s)).collect();
        format!("({})", parts.join("; "))
    }

    fn show_big(&self, z: &[Presheaf]) -> String {
        let parts: Vec<String> = z.iter().map(|s| show_presheaf(self.q, self.objs.pq0.array(), s)).collect();
        format!("({})", parts.join("; "))
    }

    fn random_sigma(&self, rng: &mut ChaCha8Rng) -> Presheaf {
        random_presheaf(self.q, &self.objs.ids, rng)
    }

    fn random_big(&self, rng: &mut ChaCha8Rng) -> Presheaf {
        random_presheaf(self.q, self.objs.pq0.array(), rng)
    }

    /// `ξ` tabulated on `T(PQ₀)` with lists up to `len`, or `None` beyond
    /// `budget.ppx`.
    fn table(&self, len: usize) -> Option<Arc<XiTable>> {
        let len = if self.t.kind == MonadKind::List { len.max(self.t.list_len) } else { 0 };
        if let Some(tab) = self.tables.borrow().get(&len) {
            return tab.clone();
        }
        let pq0 = &self.objs.pq0;
        let tab = t_covering(self.q, self.t, pq0.array(), len, self.budget.ppx).ok().map(|tp| {
            let xi = tp.elems.iter().map(|u| pq0.index_of(&self.xi(&self.objs.entries(u)))).collect();
            Arc::new(XiTable { tp, xi })
        });
        self.tables.borrow_mut().insert(len, tab.clone());
        tab
    }

    /// `θ = ξ_!·(ζ·Tt)^!·ξ·T(t_!)` at `Z ∈ TPPQ₀`, joining over the
    /// enumerated `TPQ₀`.
    fn theta(&self, z: &[Presheaf]) -> Option<Presheaf> {
        let (q, pq0) = (self.q, &self.objs.pq0);
        let tab = self.table(0)?;
        let tz = self.t.map(z, |s| direct_image(q, pq0.array(), &self.objs.ids, s));
        let rho = self.xi(&tz);
        let mut out = Presheaf::bottom(q, pq0.array(), rho.cod);
        for (i, tau) in tab.xi.iter().enumerate() {
            let r = tab.tp.array[i];
            if let Some(tau) = *tau {
                if pq0.array()[tau] == r {
                    out.comps[tau] = q.join(r, rho.cod, out.comps[tau], rho.comps[r]);
                }
            }
        }
        Some(out)
    }

    /// `θ^λ = ξ_!·λ_{PQ₀}` at `Z ∈ TPPQ₀`.
    fn theta_law(&self, law: &dyn DistLaw, z: &[Presheaf]) -> Option<Presheaf> {
        let (q, pq0) = (self.q, &self.objs.pq0);
        let tab = self.table(z.len())?;
        let lam = law.eval(q, self.t, pq0.array(), z, &tab.tp);
        let mut out = Presheaf::bottom(q, pq0.array(), lam.cod);
        for (i, tau) in tab.xi.iter().enumerate() {
            let r = tab.tp.array[i];
            if let Some(tau) = *tau {
                if pq0.array()[tau] == r {
                    out.comps[tau] = q.join(r, lam.cod, out.comps[tau], lam.comps[i]);
                }
            }
        }
        Some(out)
    }

    /// `s_{Q₀}·Θ` for `Θ ∈ PPQ₀`.
    fn flat(&self, big: &Presheaf) -> Presheaf {
        mult(self.q, &self.objs.pq0, big)
    }

    fn list_note(&self, tally: &mut Tally) {
        if self.t.kind == MonadKind::List {
            tally.domain(format!("lists of length ≤ {}", self.t.list_len));
        }
    }
}

/// Elements of `TC` for a carrier `C`: all of them when `C` is enumerated
/// and `TC` fits the domain budget, otherwise a seeded sample.
fn t_points<A: Clone + Ord>(
    t: &Monad,
    budget: &Budget,
    all: Option<&[A]>,
    rng: &mut ChaCha8Rng,
    gen: &mut dyn FnMut(&mut ChaCha8Rng) -> A,
) -> (Vec<Vec<A>>, bool) {
    if let Some(all) = all {
        if let Some(tc) = t.enumerate_checked(all.len(), budget.domain) {
            return (tc.iter().map(|u| u.iter().map(|&i| all[i].clone()).collect()).collect(), false);
        }
    }
    ((0..budget.samples).map(|_| draw_elem(t, budget, rng, &mut *gen)).collect(), true)
}

/// Elements of `TTC`, as for [`t_points`].
fn tt_points<A: Clone + Ord>(
    t: &Monad,
    budget: &Budget,
    all: Option<&[A]>,
    rng: &mut ChaCha8Rng,
    gen: &mut dyn FnMut(&mut ChaCha8Rng) -> A,
) -> (Vec<Vec<Vec<A>>>, bool) {
    if let Some(all) = all {
        if let Some(tc) = t.enumerate_checked(all.len(), budget.domain) {
            if let Some(ttc) = t.enumerate_checked(tc.len(), budget.domain) {
                let pts = ttc
                    .iter()
                    .map(|uu| uu.iter().map(|&j| tc[j].iter().map(|&i| all[i].clone()).collect()).collect())
                    .collect();
                return (pts, false);
            }
        }
    }
    let pts = (0..budget.samples)
        .map(|_| draw_elem(t, budget, rng, |r| draw_elem(t, budget, r, &mut *gen)))
        .collect();
    (pts, true)
}

/// `1 ≤ α·e` and `α·Tα ≤ α·m` for `α: TC → C`, where `C` is a set of
/// presheaves on `cbase`. Points where `α` is not evaluable are skipped and
/// counted in the domain description.
#[allow(clippy::too_many_arguments)]
fn lax_algebra(
    ctx: &Ctx,
    unit: (&str, &str),
    mul: (&str, &str),
    cbase: &[usize],
    all: Option<&[Presheaf]>,
    alpha: &dyn Fn(&[Presheaf]) -> Option<Presheaf>,
    show: &dyn Fn(&[Presheaf]) -> String,
) -> [Check; 2] {
    let (q, t, budget) = (ctx.q, ctx.t, ctx.budget);
    let mut gen = |r: &mut ChaCha8Rng| random_presheaf(q, cbase, r);

    let mut tu = Tally::new(unit.0, unit.1);
    let mut rng = ctx.rng(unit.0);
    let points: Vec<Presheaf> = match all {
        Some(all) => all.to_vec(),
        None => {
            tu.mark_sampled();
            (0..budget.samples).map(|_| gen(&mut rng)).collect()
        }
    };
    let mut skipped = 0;
    for s in &points {
        match alpha(std::slice::from_ref(s)) {
            Some(a) => tu.see(presheaf_leq(q, cbase, s, &a), *s == a, || format!("at {}", show(std::slice::from_ref(s)))),
            None => skipped += 1,
        }
    }
    if skipped > 0 {
        tu.domain(format!("{skipped} points beyond budget"));
    }

    let mut tm = Tally::new(mul.0, mul.1);
    let mut rng = ctx.rng(mul.0);
    let (points, sampled) = tt_points(t, budget, all, &mut rng, &mut gen);
    if sampled {
        tm.mark_sampled();
    }
    let mut skipped = 0;
    for w in &points {
        let inner: Option<Vec<Presheaf>> = w.iter().map(|wi| alpha(wi)).collect();
        let (Some(inner), Some(rhs)) = (inner, alpha(&t.flatten(w))) else {
            skipped += 1;
            continue;
        };
        let Some(lhs) = alpha(&t.normalize(inner)) else {
            skipped += 1;
            continue;
        };
        tm.see(presheaf_leq(q, cbase, &lhs, &rhs), lhs == rhs, || {
            let parts: Vec<String> = w.iter().map(|wi| show(wi)).collect();
            format!("W = [{}]", parts.join(", "))
        });
    }
    if skipped > 0 {
        tm.domain(format!("{skipped} points beyond budget"));
    }
    ctx.list_note(&mut tm);
    [tu.finish(), tm.finish()]
}

/// `y·ζ ≤ ξ·Ty` on `TQ₀`.
fn xi_unit_hom(ctx: &Ctx, name: &str, label: &str) -> Result<Check> {
    let (q, t) = (ctx.q, ctx.t);
    let ids = &ctx.objs.ids;
    let mut tally = Tally::new(name, label);
    let tq0 = t.tset(q, ids, ctx.budget.domain)?;
    for u in &tq0.elems {
        let lhs = yoneda(q, ids, t.zeta(q, u));
        let rhs = ctx.xi(&t.map(u, |&r| yoneda(q, ids, r)));
        tally.see(presheaf_leq(q, ids, &lhs, &rhs), lhs == rhs, || format!("u = {u:?}"));
    }
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

/// `s·θ ≤ ξ·Ts` on `TPPQ₀` for a given `θ`.
fn theta_hom(ctx: &Ctx, name: &str, label: &str, theta: &dyn Fn(&[Presheaf]) -> Option<Presheaf>) -> Check {
    let (q, t, budget) = (ctx.q, ctx.t, ctx.budget);
    let ids = &ctx.objs.ids;
    let mut tally = Tally::new(name, label);
    let mut rng = ctx.rng(name);
    let all = ctx.ppq0.as_ref().map(|p| p.elems.as_slice());
    let (points, sampled) = t_points(t, budget, all, &mut rng, &mut |r| ctx.random_big(r));
    if sampled {
        tally.mark_sampled();
    }
    let mut skipped = 0;
    for z in &points {
        let Some(th) = theta(z) else {
            skipped += 1;
            continue;
        };
        let lhs = ctx.flat(&th);
        let rhs = ctx.xi(&t.map(z, |s| ctx.flat(s)));
        tally.see(presheaf_leq(q, ids, &lhs, &rhs), lhs == rhs, || format!("Z = {}", ctx.show_big(z)));
    }
    if skipped > 0 {
        tally.domain(format!("{skipped} points beyond budget"));
    }
    ctx.list_note(&mut tally);
    tally.finish()
}

/// Condition 0, `t·ξ = ζ·Tt`.
fn condition0(ctx: &Ctx) -> Check {
    let (q, t) = (ctx.q, ctx.t);
    let mut tally = Tally::new("theory.0", "(0) array compatibility");
    let mut rng = ctx.rng("theory.0");
    let (points, sampled) = t_points(t, ctx.budget, Some(&ctx.objs.pq0.elems), &mut rng, &mut |r| ctx.random_sigma(r));
    if sampled {
        tally.mark_sampled();
    }
    for w in &points {
        let got = ctx.xi(w).cod;
        let want = law_cod(q, t, w);
        tally.same(got == want, || {
            format!("w = {}: ξ lands in {}, ζ·Tt gives {}", ctx.show_w(w), q.objects()[got], q.objects()[want])
        });
    }
    ctx.list_note(&mut tally);
    tally.finish()
}

/// Condition 3, `f ≤ g ⇒ ξ·Tf ≤ ξ·Tg` for `f, g: Y → PQ₀`.
///
/// It suffices to let `Y` index the entries of one element of `TY`: a
/// single point for identity and ultrafilters, list positions for lists,
/// and for the powerset any set of pairs `σ ≤ τ`.
fn condition3(ctx: &Ctx) -> Result<Check> {
    let (q, t, budget) = (ctx.q, ctx.t, ctx.budget);
    let ids = &ctx.objs.ids;
    let sigmas = &ctx.objs.pq0.elems;
    let mut tally = Tally::new("theory.3", "(3) monotonicity");
    let mut rng = ctx.rng("theory.3");
    let mut pairs = Vec::new();
    for (i, a) in sigmas.iter().enumerate() {
        for (j, b) in sigmas.iter().enumerate() {
            if presheaf_leq(q, ids, a, b) {
                pairs.push((i, j));
            }
        }
    }
    let see = |chosen: &[usize], tally: &mut Tally| {
        let zf = t.normalize(chosen.iter().map(|&p| sigmas[pairs[p].0].clone()).collect());
        let zg = t.normalize(chosen.iter().map(|&p| sigmas[pairs[p].1].clone()).collect());
        let a = ctx.xi(&zf);
        let b = ctx.xi(&zg);
        tally.see(presheaf_leq(q, ids, &a, &b), a == b, || format!("f = {}, g = {}", ctx.show_w(&zf), ctx.show_w(&zg)));
    };
    let n = pairs.len();
    match t.kind {
        MonadKind::Powerset if n < 64 && 1u128 << n <= budget.domain as u128 => {
            for mask in 0..1u64 << n {
                let chosen: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
                see(&chosen, &mut tally);
            }
            tally.domain("all sets of pairs σ ≤ τ in PQ₀");
        }
        MonadKind::Powerset => {
            tally.mark_sampled();
            for _ in 0..budget.samples {
                let chosen: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                see(&chosen, &mut tally);
            }
            tally.domain("sampled sets of pairs σ ≤ τ in PQ₀");
        }
        _ => {
            let k = if t.kind == MonadKind::List { t.list_len } else { 1 };
            let lens: Vec<usize> = if t.kind == MonadKind::List { (0..=k).collect() } else { vec![1] };
            for len in lens {
                let total = product(std::iter::repeat_n(n, len));
                if total <= budget.domain as u128 {
                    for tup in odometer(&vec![n; len]) {
                        see(&tup, &mut tally);
                    }
                } else {
                    tally.mark_sampled();
                    for _ in 0..budget.samples {
                        let tup: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
                        see(&tup, &mut tally);
                    }
                }
            }
            tally.domain(format!("pairs σ ≤ τ along elements of TY with |Y| ≤ {k}"));
        }
    }
    Ok(tally.finish())
}

/// Conditions 0–3 of a topological theory. The theory is strict when the
/// four checks of conditions 1 and 2 are strict; see [`is_strict`].
pub fn check_theory(q: &Quantaloid, t: &Monad, theory: &TopTheory, budget: &Budget) -> Result<Vec<Check>> {
    let ctx = Ctx::new(q, t, theory, budget)?;
    let mut out = vec![condition0(&ctx)];
    if out[0].failed() {
        out.push(Check::untested("theory.1", "(1) lax T-algebra laws", "condition 0 fails"));
        out.push(Check::untested("theory.2", "(2) lax T-homomorphism laws", "condition 0 fails"));
        out.push(condition3(&ctx)?);
        return Ok(out);
    }
    let xi = |w: &[Presheaf]| Some(ctx.xi(w));
    let show = |w: &[Presheaf]| ctx.show_w(w);
    let [u, m] = lax_algebra(
        &ctx,
        ("theory.1-unit", "(1) 1 ≤ ξ·e"),
        ("theory.1-mult", "(1) ξ·Tξ ≤ ξ·m"),
        &ctx.objs.ids,
        Some(&ctx.objs.pq0.elems),
        &xi,
        &show,
    );
    out.push(u);
    out.push(m);
    out.push(xi_unit_hom(&ctx, "theory.2-unit", "(2) y·ζ ≤ ξ·Ty")?);
    let mut th = theta_hom(&ctx, "theory.2-mult", "(2) s·θ ≤ ξ·Ts", &|z| ctx.theta(z));
    if t.kind == MonadKind::List {
        th.domain.push_str(&format!("; θ joins over lists of length ≤ {}", t.list_len));
    }
    out.push(th);
    out.push(condition3(&ctx)?);
    Ok(out)
}

/// Whether the checks of conditions 1 and 2 all held with equality.
pub fn is_strict(checks: &[Check]) -> bool {
    let rel: Vec<&Check> = checks.iter().filter(|c| c.name.starts_with("theory.1") || c.name.starts_with("theory.2")).collect();
    !rel.is_empty() && rel.iter().all(|c| c.passed() && c.strict)
}

/// The six diagrams for `ξ^λ` and `θ^λ`.
pub fn induced_diagrams(q: &Quantaloid, t: &Monad, law: &dyn DistLaw, theory: &TopTheory, budget: &Budget) -> Result<Vec<Check>> {
    let ctx = Ctx::new(q, t, theory, budget)?;
    let xi = |w: &[Presheaf]| Some(ctx.xi(w));
    let show = |w: &[Presheaf]| ctx.show_w(w);
    let [a, b] = lax_algebra(
        &ctx,
        ("induced.xi-unit", "1 ≤ ξ·e on PQ₀"),
        ("induced.xi-mult", "ξ·Tξ ≤ ξ·m on PQ₀"),
        &ctx.objs.ids,
        Some(&ctx.objs.pq0.elems),
        &xi,
        &show,
    );
    let c = xi_unit_hom(&ctx, "induced.xi-y", "y·ζ ≤ ξ·Ty")?;
    let theta = |z: &[Presheaf]| ctx.theta_law(law, z);
    let show_big = |z: &[Presheaf]| ctx.show_big(z);
    let [d, e] = lax_algebra(
        &ctx,
        ("induced.theta-unit", "1 ≤ θ·e on PPQ₀"),
        ("induced.theta-mult", "θ·Tθ ≤ θ·m on PPQ₀"),
        ctx.objs.pq0.array(),
        ctx.ppq0.as_ref().map(|p| p.elems.as_slice()),
        &theta,
        &show_big,
    );
    let f = theta_hom(&ctx, "induced.theta-s", "s·θ ≤ ξ·Ts", &theta);
    Ok(vec![a, b, c, d, e, f])
}

/// The lax algebra laws of `θ = ξ_!·(ζ·Tt)^!·ξ·T(t_!)` on `PPQ₀`.
pub fn check_theta(q: &Quantaloid, t: &Monad, theory: &TopTheory, budget: &Budget) -> Result<Vec<Check>> {
    let ctx = Ctx::new(q, t, theory, budget)?;
    let theta = |z: &[Presheaf]| ctx.theta(z);
    let show_big = |z: &[Presheaf]| ctx.show_big(z);
    let [u, m] = lax_algebra(
        &ctx,
        ("theta.unit", "1 ≤ θ·e on PPQ₀"),
        ("theta.mult", "θ·Tθ ≤ θ·m on PPQ₀"),
        ctx.objs.pq0.array(),
        ctx.ppq0.as_ref().map(|p| p.elems.as_slice()),
        &theta,
        &show_big,
    );
    Ok(vec![u, m])
}

/// `ξ_!·λ_{PQ₀} ≤ θ` where `θ` is built from `ξ = ξ^λ`.
pub fn check_theta_bound(q: &Quantaloid, t: &Monad, law: Arc<dyn DistLaw>, budget: &Budget) -> Result<Check> {
    let theory = induced_theory(q, law.clone());
    let ctx = Ctx::new(q, t, &theory, budget)?;
    let mut tally = Tally::new("theta.bound", "ξ_!·λ_PQ₀ ≤ ξ_!·(Tt)^!·ζ^!·ξ·T(t_!)");
    let mut rng = ctx.rng("theta.bound");
    let all = ctx.ppq0.as_ref().map(|p| p.elems.as_slice());
    let (points, sampled) = t_points(t, budget, all, &mut rng, &mut |r| ctx.random_big(r));
    if sampled {
        tally.mark_sampled();
    }
    let mut skipped = 0;
    for z in &points {
        let (Some(lo), Some(hi)) = (ctx.theta_law(law.as_ref(), z), ctx.theta(z)) else {
            skipped += 1;
            continue;
        };
        tally.see(presheaf_leq(q, ctx.objs.pq0.array(), &lo, &hi), lo == hi, || format!("Z = {}", ctx.show_big(z)));
    }
    if skipped > 0 {
        tally.domain(format!("{skipped} points beyond budget"));
    }
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

fn compare_theories(
    q: &Quantaloid,
    t: &Monad,
    a: &TopTheory,
    b: &TopTheory,
    budget: &Budget,
    name: &str,
    label: &str,
    leq: bool,
) -> Result<Check> {
    let ctx = Ctx::new(q, t, a, budget)?;
    let ids = &ctx.objs.ids;
    let mut tally = Tally::new(name, label);
    let mut rng = ctx.rng(name);
    let (points, sampled) = t_points(t, budget, Some(&ctx.objs.pq0.elems), &mut rng, &mut |r| ctx.random_sigma(r));
    if sampled {
        tally.mark_sampled();
    }
    for w in &points {
        let x = a.eval(q, t, w);
        let y = b.eval(q, t, w);
        let ok = if leq { presheaf_leq(q, ids, &x, &y) } else { x == y };
        tally.see(ok, x == y, || {
            format!(
                "w = {}: {} gives {}, {} gives {}",
                ctx.show_w(w),
                a.name,
                show_presheaf(q, ids, &x),
                b.name,
                show_presheaf(q, ids, &y)
            )
        });
    }
    ctx.list_note(&mut tally);
    Ok(tally.finish())
}

/// Equality of two theories on `TPQ₀`.
pub fn theory_eq(q: &Quantaloid, t: &Monad, a: &TopTheory, b: &TopTheory, budget: &Budget) -> Result<Check> {
    compare_theories(q, t, a, b, budget, "theory.eq", &format!("{} = {}", a.name, b.name), false)
}

/// Pointwise `ξ ≤ ξ'` on `TPQ₀`.
pub fn theory_leq(q: &Quantaloid, t: &Monad, a: &TopTheory, b: &TopTheory, budget: &Budget) -> Result<Check> {
    compare_theories(q, t, a, b, budget, "theory.leq", &format!("{} ≤ {}", a.name, b.name), true)
}

fn renamed(mut c: Check, name: &str, label: &str) -> Check {
    c.name = name.into();
    c.label = label.into();
    c
}

/// For a law `λ`: `ξ^{λ^{ξ^λ}} = ξ^λ`, `λ ≤ λ^{ξ^λ}` and maximality of
/// `λ^{ξ^λ}`.
pub fn check_galois_law(
    q: &Quantaloid,
    t: &Monad,
    law: Arc<dyn DistLaw>,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let xi = induced_theory(q, law.clone());
    let lam = maximal_law(&xi);
    let xi2 = induced_theory(q, Arc::new(maximal_law(&xi)));
    Ok(vec![
        renamed(theory_eq(q, t, &xi2, &xi, budget)?, "galois.closed", "ξ^{λ^{ξ^λ}} = ξ^λ"),
        renamed(law_leq(q, t, law.as_ref(), &lam, universe, budget)?, "galois.unit", "λ ≤ λ^{ξ^λ}"),
        renamed(is_maximal(q, t, &lam, universe, budget)?, "galois.maximal", "λ^{ξ^λ} is maximal"),
    ])
}

/// For a theory `ξ`: `ξ^{λ^ξ} = ξ` and maximality of `λ^ξ`.
pub fn check_galois_theory(
    q: &Quantaloid,
    t: &Monad,
    theory: &TopTheory,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let lam = maximal_law(theory);
    let back = induced_theory(q, Arc::new(maximal_law(theory)));
    Ok(vec![
        renamed(theory_eq(q, t, &back, theory, budget)?, "galois.counit", "ξ^{λ^ξ} = ξ"),
        renamed(is_maximal(q, t, &lam, universe, budget)?, "galois.maximal", "λ^ξ is maximal"),
    ])
}
