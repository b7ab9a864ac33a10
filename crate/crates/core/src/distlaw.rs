//! Lax distributive laws `λ: TP → PT` and their axioms.
//!
//! A law is an evaluation function: given the entries of an element of
//! `TPX` (in the monad's normal form) it returns the presheaf `λ_X(z)` on an
//! enumerated universe of `TX`. The checkers own all quantification, so
//! carriers such as `TPPX` are never materialized unless they are small.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monads::{Budget, Monad, MonadKind, TSet, Zeta};
use crate::presheaf::{
    bind, count_presheaves, direct_image, mult, presheaf_leq, random_presheaf, show_presheaf, yoneda, Presheaf,
    PresheafSet,
};
use crate::qrel::all_maps;
use crate::quantaloid::Quantaloid;
use crate::report::{Check, Tally};
use crate::util::{multisets, odometer, product, rng_for};

/// A family `λ_X: TPX → PTX`, evaluated pointwise.
pub trait DistLaw: Send + Sync {
    fn name(&self) -> String;
    /// `λ_X(z)` on the universe `tx` of `TX`, where `z` lists the entries of
    /// an element of `TPX` and `base` is the array of `X`.
    fn eval(&self, q: &Quantaloid, t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf;
}

/// The array of `z ∈ TPX`: `ζ` applied to the codomains.
pub fn law_cod(q: &Quantaloid, t: &Monad, z: &[Presheaf]) -> usize {
    t.zeta(q, &t.map(z, |s| s.cod))
}

/// The identity transformation, for the identity monad and for principal
/// ultrafilters (where `TX ≅ X`).
pub struct IdentityLaw;

impl DistLaw for IdentityLaw {
    fn name(&self) -> String {
        "identity".into()
    }

    fn eval(&self, _q: &Quantaloid, _t: &Monad, _base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        let sigma = &z[0];
        Presheaf { cod: sigma.cod, comps: tx.elems.iter().map(|u| sigma.comps[u[0]]).collect() }
    }
}

/// `(σ¹,…,σⁿ) ↦ σ` with `σ_{(x₁,…,xₘ)} = σ¹_{x₁}⊗…⊗σⁿ_{xₙ}` when `m = n`
/// and `⊥` otherwise. Over a diagonal quantaloid the tensor is taken in the
/// base quantale and read back as a morphism `⊗|xᵢ| ⇸ ⊗|σᵢ|`.
pub struct TensorLaw;

impl DistLaw for TensorLaw {
    fn name(&self) -> String {
        "tensor".into()
    }

    fn eval(&self, q: &Quantaloid, t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        let cod = law_cod(q, t, z);
        let info = q.diagonal_info();
        let comps = tx
            .elems
            .iter()
            .zip(&tx.array)
            .map(|(u, &r)| {
                if u.len() != z.len() {
                    return q.bot(r, cod);
                }
                match info {
                    None => u.iter().zip(z).fold(q.unit(), |acc, (&x, s)| q.tensor(acc, s.comps[x])),
                    Some(info) => {
                        let v = &info.base;
                        let d = u
                            .iter()
                            .zip(z)
                            .fold(v.unit(), |acc, (&x, s)| v.tensor(acc, info.elem(base[x], s.cod, s.comps[x])));
                        info.lookup(r, cod, d).expect("a tensor of components lies below both boundaries")
                    }
                }
            })
            .collect();
        Presheaf { cod, comps }
    }
}

/// `(δ_X F)(A) = ⋀_{x∈A} ⋁_{σ∈F} σ(x)` for the powerset monad over a quantale.
pub struct DeltaLaw;

impl DistLaw for DeltaLaw {
    fn name(&self) -> String {
        "delta".into()
    }

    fn eval(&self, q: &Quantaloid, _t: &Monad, _base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        let l = q.hom(0, 0);
        let comps = tx
            .elems
            .iter()
            .map(|a| l.meet_all(a.iter().map(|&x| l.join_all(z.iter().map(|s| s.comps[x])))))
            .collect();
        Presheaf { cod: 0, comps }
    }
}

/// `(β_X z)(x) = ⋀_{A∈x, C∈z} ⋁_{x'∈A, σ∈C} σ(x')` on principal ultrafilters
/// over a commutative chain.
///
/// Members of the principal ultrafilters `ẋ` and `σ̇` are enumerated
/// literally while `2^{|X|-1}·2^{|PX|-1}` stays below [`BetaLaw::LITERAL`];
/// beyond that only the generating members `{x}` and `{σ}` are used, which
/// gives the same meet because the inner join is monotone in `A` and `C`.
#[derive(Default)]
pub struct BetaLaw {
    px: Mutex<HashMap<Vec<usize>, Arc<PresheafSet>>>,
}

impl BetaLaw {
    pub const LITERAL: u128 = 1 << 12;

    pub fn new() -> Self {
        Self::default()
    }

    fn presheaves(&self, q: &Quantaloid, base: &[usize]) -> Arc<PresheafSet> {
        let mut cache = self.px.lock().expect("cache lock");
        cache
            .entry(base.to_vec())
            .or_insert_with(|| Arc::new(PresheafSet::build(q, base, usize::MAX).expect("small presheaf set")))
            .clone()
    }
}

impl DistLaw for BetaLaw {
    fn name(&self) -> String {
        "beta".into()
    }

    fn eval(&self, q: &Quantaloid, _t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        let l = q.hom(0, 0);
        let sigma = &z[0];
        let n = base.len();
        let npx = count_presheaves(q, base);
        let literal = n >= 1 && npx < 64 && (1u128 << (n - 1)).saturating_mul(1u128 << (npx - 1)) <= Self::LITERAL;
        let comps = if literal {
            let px = self.presheaves(q, base);
            let si = px.index_of(sigma).expect("σ is a presheaf on X");
            let m = px.len();
            tx.elems
                .iter()
                .map(|u| {
                    let x = u[0];
                    let mut acc = l.top();
                    for amask in 0..1usize << n {
                        if amask >> x & 1 == 0 {
                            continue;
                        }
                        for cmask in 0..1usize << m {
                            if cmask >> si & 1 == 0 {
                                continue;
                            }
                            let inner = l.join_all((0..n).filter(|i| amask >> i & 1 == 1).flat_map(|x2| {
                                (0..m).filter(move |j| cmask >> j & 1 == 1).map(move |j| (x2, j))
                            }).map(|(x2, j)| px.elems[j].comps[x2]));
                            acc = l.meet(acc, inner);
                        }
                    }
                    acc
                })
                .collect()
        } else {
            tx.elems.iter().map(|u| sigma.comps[u[0]]).collect()
        };
        Presheaf { cod: 0, comps }
    }
}

type EvalFn = dyn Fn(&Quantaloid, &Monad, &[usize], &[Presheaf], &TSet) -> Presheaf + Send + Sync;

/// A law given by a closure; used for violators and derived laws.
pub struct FnLaw {
    name: String,
    f: Box<EvalFn>,
}

impl FnLaw {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&Quantaloid, &Monad, &[usize], &[Presheaf], &TSet) -> Presheaf + Send + Sync + 'static,
    ) -> Self {
        FnLaw { name: name.into(), f: Box::new(f) }
    }
}

impl DistLaw for FnLaw {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn eval(&self, q: &Quantaloid, t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        (self.f)(q, t, base, z, tx)
    }
}

/// `δ` with the outer meet replaced by a join.
pub fn corrupted_delta() -> FnLaw {
    FnLaw::new("delta-join", |q, _t, _base, z, tx| {
        let l = q.hom(0, 0);
        let comps = tx
            .elems
            .iter()
            .map(|a| l.join_all(a.iter().map(|&x| l.join_all(z.iter().map(|s| s.comps[x])))))
            .collect();
        Presheaf { cod: 0, comps }
    })
}

fn is_chain(q: &Quantaloid) -> bool {
    let l = q.hom(0, 0);
    (0..l.len()).all(|a| (0..l.len()).all(|b| l.leq(a, b) || l.leq(b, a)))
}

/// Names accepted by [`builtin_law`].
pub const BUILTIN_LAWS: &[&str] = &["identity", "tensor", "delta", "beta"];

/// A builtin law, refusing pairs `(Q, T)` it is not defined for.
pub fn builtin_law(name: &str, q: &Quantaloid, t: &Monad) -> Result<Box<dyn DistLaw>> {
    let refuse = |why: &str| Err(Error::Refused(format!("law {name} over {} with {}: {why}", q.name(), t.name())));
    match name {
        "identity" => {
            if t.kind != MonadKind::Identity {
                return refuse("needs the identity monad");
            }
            Ok(Box::new(IdentityLaw))
        }
        "tensor" => {
            if t.kind != MonadKind::List {
                return refuse("needs the list monad");
            }
            let ok = if q.is_quantale() { t.zeta == Zeta::Trivial } else { q.diagonal_info().is_some() && t.zeta == Zeta::Tensor };
            if !ok {
                return refuse("needs a quantale, or a diagonal quantaloid with ζ = tensor");
            }
            Ok(Box::new(TensorLaw))
        }
        "delta" => {
            if t.kind != MonadKind::Powerset || !q.is_quantale() {
                return refuse("needs the powerset monad over a quantale");
            }
            Ok(Box::new(DeltaLaw))
        }
        "beta" => {
            if t.kind != MonadKind::Ultrafilter || !q.is_quantale() {
                return refuse("needs the ultrafilter monad over a quantale");
            }
            if !q.is_commutative() || !is_chain(q) {
                return refuse("only finite commutative chains are supported");
            }
            Ok(Box::new(BetaLaw::new()))
        }
        _ => Err(Error::Refused(format!("unknown law {name}"))),
    }
}

/// A random element of `T A` with entries drawn by `gen`: lists up to the
/// configured length, sets up to `budget.max_set` draws.
pub fn draw_elem<A: Ord>(
    t: &Monad,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
    mut gen: impl FnMut(&mut ChaCha8Rng) -> A,
) -> Vec<A> {
    let len = match t.kind {
        MonadKind::Identity | MonadKind::Ultrafilter => 1,
        MonadKind::List => rng.gen_range(0..=t.list_len),
        MonadKind::Powerset => rng.gen_range(0..=budget.max_set),
    };
    let v: Vec<A> = (0..len).map(|_| gen(rng)).collect();
    t.normalize(v)
}

/// A finite family of sets over `Q₀` on which laws are tested; maps are all
/// array-preserving maps between any two of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    pub arrays: Vec<Vec<usize>>,
}

impl Universe {
    /// Every array of the given sizes up to relabelling.
    pub fn sizes(q: &Quantaloid, sizes: &[usize]) -> Self {
        Universe { arrays: sizes.iter().flat_map(|&n| multisets(q.n(), n)).collect() }
    }

    pub fn of(arrays: Vec<Vec<usize>>) -> Self {
        Universe { arrays }
    }
}

/// Everything a checker needs about one set `X`.
struct Level {
    base: Vec<usize>,
    px: Option<PresheafSet>,
    tx: TSet,
    /// `T(PX)`, indices into `px`
    tpx: Option<TSet>,
    /// `λ_X` on `tpx`
    lam: Option<Vec<Presheaf>>,
}

impl Level {
    fn entries(&self, w: &[usize]) -> Vec<Presheaf> {
        let px = self.px.as_ref().expect("enumerated PX");
        w.iter().map(|&i| px.elems[i].clone()).collect()
    }
}

/// Evaluates laws on cached levels and owns the sampling policy.
pub struct LawHarness<'a> {
    pub q: &'a Quantaloid,
    pub t: &'a Monad,
    pub law: &'a dyn DistLaw,
    pub budget: &'a Budget,
    levels: Mutex<HashMap<Vec<usize>, Arc<Level>>>,
}

impl<'a> LawHarness<'a> {
    pub fn new(q: &'a Quantaloid, t: &'a Monad, law: &'a dyn DistLaw, budget: &'a Budget) -> Self {
        LawHarness { q, t, law, budget, levels: Mutex::new(HashMap::new()) }
    }

    fn level(&self, base: &[usize]) -> Result<Arc<Level>> {
        if let Some(l) = self.levels.lock().expect("level lock").get(base) {
            return Ok(l.clone());
        }
        let (q, t) = (self.q, self.t);
        let tx = t.tset(q, base, self.budget.domain)?;
        let px = PresheafSet::build(q, base, self.budget.px).ok();
        let tpx = px.as_ref().and_then(|px| t.tset(q, px.array(), self.budget.ppx).ok());
        let mut level = Level { base: base.to_vec(), px, tx, tpx, lam: None };
        if let Some(tpx) = &level.tpx {
            let lam = tpx.elems.iter().map(|w| self.law.eval(q, t, base, &level.entries(w), &level.tx)).collect();
            level.lam = Some(lam);
        }
        let level = Arc::new(level);
        self.levels.lock().expect("level lock").insert(base.to_vec(), level.clone());
        Ok(level)
    }

    /// `λ_X(z)` on the enumerated `TX`.
    pub fn apply(&self, base: &[usize], z: &[Presheaf]) -> Result<Presheaf> {
        let level = self.level(base)?;
        Ok(self.apply_at(&level, z))
    }

    fn apply_at(&self, level: &Level, z: &[Presheaf]) -> Presheaf {
        if let (Some(px), Some(tpx), Some(lam)) = (&level.px, &level.tpx, &level.lam) {
            let idx: Option<Vec<usize>> = z.iter().map(|s| px.index_of(s)).collect();
            if let Some(i) = idx.and_then(|idx| tpx.index_of(&idx)) {
                return lam[i].clone();
            }
        }
        self.law.eval(self.q, self.t, &level.base, z, &level.tx)
    }

    /// The enumerated `TX` for a base array.
    pub fn tset(&self, base: &[usize]) -> Result<TSet> {
        Ok(self.level(base)?.tx.clone())
    }

    fn draw<A: Ord>(&self, rng: &mut ChaCha8Rng, gen: impl FnMut(&mut ChaCha8Rng) -> A) -> Vec<A> {
        draw_elem(self.t, self.budget, rng, gen)
    }

    /// Elements of `TPX` to test: all of them when enumerated and within
    /// `limit`, otherwise a seeded sample. The flag says whether sampled.
    fn tpx_points(&self, level: &Level, limit: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<Presheaf>>, bool) {
        if let Some(tpx) = &level.tpx {
            if tpx.len() <= limit {
                return (tpx.elems.iter().map(|w| level.entries(w)).collect(), false);
            }
        }
        let pts = (0..self.budget.samples)
            .map(|_| self.draw(rng, |r| random_presheaf(self.q, &level.base, r)))
            .collect();
        (pts, true)
    }

    fn show_z(&self, base: &[usize], z: &[Presheaf]) -> String {
        let parts: Vec<String> = z.iter().map(|s| show_presheaf(self.q, base, s)).collect();
        format!("({})", parts.join("; "))
    }

    fn rng(&self, check: &str) -> ChaCha8Rng {
        rng_for(self.budget.seed, &format!("{check}/{}/{}/{}", self.law.name(), self.t.name(), self.q.name()))
    }
}

/// Runs (a)–(e) and monotonicity on a universe.
pub fn check_law(
    q: &Quantaloid,
    t: &Monad,
    law: &dyn DistLaw,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let h = LawHarness::new(q, t, law, budget);
    Ok(vec![
        check_a(&h, universe)?,
        check_b(&h, universe)?,
        check_c(&h, universe)?,
        check_d(&h, universe)?,
        check_e(&h, universe)?,
        check_monotone(&h, universe)?,
    ])
}

/// (a) `(Tf)_!·λ_X ≤ λ_Y·T(f_!)` for all maps in the universe.
pub fn check_a(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let (q, t) = (h.q, h.t);
    let mut tally = Tally::new("law.a", "(a) lax naturality of λ");
    let mut rng = h.rng("law.a");
    for a in &universe.arrays {
        for b in &universe.arrays {
            let maps = all_maps(a, b, h.budget.domain)?;
            if maps.is_empty() {
                continue;
            }
            let la = h.level(a)?;
            let lb = h.level(b)?;
            let limit = h.budget.domain / maps.len();
            let (points, sampled) = h.tpx_points(&la, limit, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            for f in &maps {
                let tf: Vec<Option<usize>> = la.tx.elems.iter().map(|u| lb.tx.index_of(&t.fmap_vec(u, f))).collect();
                for z in &points {
                    let left = h.apply_at(&la, z);
                    let cod = left.cod;
                    let mut lhs = Presheaf::bottom(q, &lb.tx.array, cod);
                    for (u, v) in tf.iter().enumerate() {
                        if let Some(v) = *v {
                            lhs.comps[v] = q.join(lb.tx.array[v], cod, lhs.comps[v], left.comps[u]);
                        }
                    }
                    let fz = t.map(z, |s| direct_image(q, f, b, s));
                    let rhs = h.apply_at(&lb, &fz);
                    tally.see(presheaf_leq(q, &lb.tx.array, &lhs, &rhs), lhs == rhs, || {
                        format!("f = {f:?}: {a:?} → {b:?}, z = {}", h.show_z(a, z))
                    });
                }
            }
        }
    }
    tally.domain(format!("{} sets and all maps between them", universe.arrays.len()));
    Ok(tally.finish())
}

/// (b) `y_TX ≤ λ_X·Ty_X`.
pub fn check_b(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let (q, t) = (h.q, h.t);
    let mut tally = Tally::new("law.b", "(b) lax P-unit law");
    for base in &universe.arrays {
        let level = h.level(base)?;
        let tx = &level.tx;
        for (i, u) in tx.elems.iter().enumerate() {
            let z = t.map(u, |&x| yoneda(q, base, x));
            let rhs = h.apply_at(&level, &z);
            let lhs = yoneda(q, &tx.array, i);
            tally.see(presheaf_leq(q, &tx.array, &lhs, &rhs), lhs == rhs, || format!("X = {base:?}, u = {u:?}"));
        }
    }
    tally.domain("all of TX");
    Ok(tally.finish())
}

/// (c) `s_TX·(λ_X)_!·λ_PX ≤ λ_X·Ts_X`, quantified over `TPPX`.
///
/// The left side is a join over `TPX`; when `TPX` is not enumerated the join
/// runs over a sample of it, which can only hide failures.
pub fn check_c(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let (q, t, budget) = (h.q, h.t, h.budget);
    let mut tally = Tally::new("law.c", "(c) lax P-multiplication law");
    let mut rng = h.rng("law.c");
    for base in &universe.arrays {
        let level = h.level(base)?;
        let Some(px) = &level.px else {
            tally.domain(format!("PX of {base:?} not enumerated"));
            tally.mark_sampled();
            continue;
        };
        // the part of TPX the inner join ranges over, with λ_X on it
        let (sub, lam): (TSet, Vec<Presheaf>) = match (&level.tpx, &level.lam) {
            (Some(tpx), Some(lam)) => (tpx.clone(), lam.clone()),
            _ => {
                tally.mark_sampled();
                tally.domain("inner join over sampled TPX");
                let mut ws: Vec<Vec<usize>> = (0..budget.samples)
                    .map(|_| h.draw(&mut rng, |r| r.gen_range(0..px.len())))
                    .collect();
                ws.sort();
                ws.dedup();
                let arr = ws.iter().map(|w| t.array_of(q, px.array(), w)).collect();
                let lam = ws.iter().map(|w| h.apply_at(&level, &level.entries(w))).collect();
                (TSet::new(ws, arr), lam)
            }
        };
        let ppx = PresheafSet::build(q, px.array(), budget.ppx).ok();
        let exhaustive = ppx.as_ref().and_then(|ppx| t.enumerate_checked(ppx.len(), budget.domain));
        let points: Vec<Vec<Presheaf>> = match (exhaustive, &ppx) {
            (Some(all), Some(ppx)) => all.iter().map(|w| w.iter().map(|&i| ppx.elems[i].clone()).collect()).collect(),
            _ => {
                tally.mark_sampled();
                (0..budget.samples).map(|_| h.draw(&mut rng, |r| random_presheaf(q, px.array(), r))).collect()
            }
        };
        for big in &points {
            let lpz = h.law.eval(q, t, px.array(), big, &sub);
            let lhs = bind(q, &level.tx.array, &lam, &lpz);
            let ts = t.map(big, |s| mult(q, px, s));
            let rhs = h.apply_at(&level, &ts);
            tally.see(presheaf_leq(q, &level.tx.array, &lhs, &rhs), lhs == rhs, || {
                format!("X = {base:?}, Z = {}", h.show_z(px.array(), big))
            });
        }
    }
    Ok(tally.finish())
}

/// (d) `(e_X)_! ≤ λ_X·e_PX`.
pub fn check_d(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("law.d", "(d) lax T-unit law");
    let mut rng = h.rng("law.d");
    for base in &universe.arrays {
        let level = h.level(base)?;
        let tx = &level.tx;
        let sigmas: Vec<Presheaf> = match &level.px {
            Some(px) => px.elems.clone(),
            None => {
                tally.mark_sampled();
                (0..h.budget.samples).map(|_| random_presheaf(q, base, &mut rng)).collect()
            }
        };
        let units: Vec<Option<usize>> = (0..base.len()).map(|x| tx.index_of(&[x])).collect();
        for sigma in &sigmas {
            let mut lhs = Presheaf::bottom(q, &tx.array, sigma.cod);
            for (x, u) in units.iter().enumerate() {
                if let Some(u) = *u {
                    lhs.comps[u] = q.join(tx.array[u], sigma.cod, lhs.comps[u], sigma.comps[x]);
                }
            }
            let rhs = h.apply_at(&level, std::slice::from_ref(sigma));
            tally.see(presheaf_leq(q, &tx.array, &lhs, &rhs), lhs == rhs, || {
                format!("X = {base:?}, σ = {}", show_presheaf(q, base, sigma))
            });
        }
    }
    Ok(tally.finish())
}

/// (e) `(m_X)_!·λ_TX·Tλ_X ≤ λ_X·m_PX`, quantified over `TTPX`.
pub fn check_e(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let (q, t, budget) = (h.q, h.t, h.budget);
    let mut tally = Tally::new("law.e", "(e) lax T-multiplication law");
    let mut rng = h.rng("law.e");
    for base in &universe.arrays {
        let level = h.level(base)?;
        let tx = &level.tx;
        let ttx = t.tset(q, &tx.array, budget.domain)?;
        let m_map: Vec<Option<usize>> = ttx
            .elems
            .iter()
            .map(|uu| {
                let inner: Vec<Vec<usize>> = uu.iter().map(|&i| tx.elems[i].clone()).collect();
                tx.index_of(&t.flatten(&inner))
            })
            .collect();
        let points: Vec<Vec<Vec<Presheaf>>> = match &level.tpx {
            Some(tpx) if t.count(tpx.len()) <= budget.domain as u128 => t
                .enumerate_checked(tpx.len(), budget.domain)
                .expect("within budget")
                .iter()
                .map(|ww| ww.iter().map(|&i| level.entries(&tpx.elems[i])).collect())
                .collect(),
            _ => {
                tally.mark_sampled();
                (0..budget.samples)
                    .map(|_| h.draw(&mut rng, |r| h.draw(r, |r2| random_presheaf(q, base, r2))))
                    .collect()
            }
        };
        for w in &points {
            let rhs = h.apply_at(&level, &t.flatten(w));
            let tl = t.map(w, |wi| h.apply_at(&level, wi));
            let v = h.law.eval(q, t, &tx.array, &tl, &ttx);
            let mut lhs = Presheaf::bottom(q, &tx.array, v.cod);
            for (uu, m) in m_map.iter().enumerate() {
                if let Some(u) = *m {
                    lhs.comps[u] = q.join(tx.array[u], v.cod, lhs.comps[u], v.comps[uu]);
                }
            }
            tally.see(presheaf_leq(q, &tx.array, &lhs, &rhs), lhs == rhs, || {
                let parts: Vec<String> = w.iter().map(|wi| h.show_z(base, wi)).collect();
                format!("X = {base:?}, W = [{}]", parts.join(", "))
            });
        }
    }
    if t.kind == MonadKind::List {
        tally.domain(format!("lists of length ≤ {}", t.list_len));
    }
    Ok(tally.finish())
}

/// `f ≤ g ⇒ λ_X·Tf ≤ λ_X·Tg` for `f, g: Y → PX` on a small `Y`.
pub fn check_monotone(h: &LawHarness, universe: &Universe) -> Result<Check> {
    let (q, t, budget) = (h.q, h.t, h.budget);
    let mut tally = Tally::new("law.monotone", "monotonicity");
    let mut rng = h.rng("law.monotone");
    let k = match t.kind {
        MonadKind::Identity | MonadKind::Ultrafilter => 1,
        MonadKind::List => t.list_len.min(2),
        MonadKind::Powerset => 2,
    };
    let ty = crate::monads::SetMonad::enumerate(t, k, budget.domain)?;
    for base in &universe.arrays {
        let level = h.level(base)?;
        let sigmas: Vec<Presheaf> = match &level.px {
            Some(px) => px.elems.clone(),
            None => (0..budget.samples).map(|_| random_presheaf(q, base, &mut rng)).collect(),
        };
        let mut pairs = Vec::new();
        for (i, a) in sigmas.iter().enumerate() {
            for (j, b) in sigmas.iter().enumerate() {
                if presheaf_leq(q, base, a, b) {
                    pairs.push((i, j));
                }
            }
        }
        let total = product(std::iter::repeat_n(pairs.len(), k)).saturating_mul(ty.len() as u128);
        let tuples: Vec<Vec<usize>> = if total <= budget.domain as u128 {
            odometer(&vec![pairs.len(); k]).collect()
        } else {
            tally.mark_sampled();
            (0..budget.samples).map(|_| (0..k).map(|_| rng.gen_range(0..pairs.len())).collect()).collect()
        };
        for tup in &tuples {
            for u in &ty {
                let zf = t.map(u, |&y| sigmas[pairs[tup[y]].0].clone());
                let zg = t.map(u, |&y| sigmas[pairs[tup[y]].1].clone());
                let a = h.apply_at(&level, &zf);
                let b = h.apply_at(&level, &zg);
                let le = presheaf_leq(q, &level.tx.array, &a, &b);
                tally.see(le, a == b, || format!("X = {base:?}, f = {}, g = {}", h.show_z(base, &zf), h.show_z(base, &zg)));
            }
        }
    }
    tally.domain(format!("f ≤ g: Y → PX with |Y| = {k}"));
    Ok(tally.finish())
}

/// `ζ_!·λ_{Q₀}(w)`: the theory induced by a law, at `w ∈ TPQ₀`.
pub fn induced_xi(q: &Quantaloid, t: &Monad, law: &dyn DistLaw, w: &[Presheaf], tq0: &TSet) -> Presheaf {
    let ids: Vec<usize> = (0..q.n()).collect();
    let rho = law.eval(q, t, &ids, w, tq0);
    let mut comps: Vec<usize> = (0..q.n()).map(|r| q.bot(r, rho.cod)).collect();
    for (v, &r) in tq0.array.iter().enumerate() {
        comps[r] = q.join(r, rho.cod, comps[r], rho.comps[v]);
    }
    Presheaf { cod: rho.cod, comps }
}

/// Checks `λ_X = (Ta)^!·ζ^!·ζ_!·λ_{Q₀}·T(a_!)` on the universe.
pub fn is_maximal(
    q: &Quantaloid,
    t: &Monad,
    law: &dyn DistLaw,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let h = LawHarness::new(q, t, law, budget);
    let ids: Vec<usize> = (0..q.n()).collect();
    let tq0 = t.tset(q, &ids, budget.domain)?;
    let mut tally = Tally::new("law.maximal", "λ = λ^ξ for ξ = ζ_!·λ_{Q₀}");
    let mut rng = h.rng("law.maximal");
    for base in &universe.arrays {
        let level = h.level(base)?;
        let (points, sampled) = h.tpx_points(&level, budget.domain, &mut rng);
        if sampled {
            tally.mark_sampled();
        }
        for z in &points {
            let left = h.apply_at(&level, z);
            let w = t.map(z, |s| direct_image(q, base, &ids, s));
            let xi = induced_xi(q, t, law, &w, &tq0);
            let right = Presheaf { cod: xi.cod, comps: level.tx.array.iter().map(|&r| xi.comps[r]).collect() };
            tally.same(left == right, || {
                format!(
                    "X = {base:?}, z = {}: λ gives {}, maximal law gives {}",
                    h.show_z(base, z),
                    show_presheaf(q, &level.tx.array, &left),
                    show_presheaf(q, &level.tx.array, &right)
                )
            });
        }
    }
    Ok(tally.finish())
}

/// Pointwise `λ ≤ λ'` on the universe.
pub fn law_leq(
    q: &Quantaloid,
    t: &Monad,
    lo: &dyn DistLaw,
    hi: &dyn DistLaw,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let a = LawHarness::new(q, t, lo, budget);
    let b = LawHarness::new(q, t, hi, budget);
    let mut tally = Tally::new("law.leq", format!("{} ≤ {}", lo.name(), hi.name()));
    let mut rng = a.rng("law.leq");
    for base in &universe.arrays {
        let la = a.level(base)?;
        let lb = b.level(base)?;
        let (points, sampled) = a.tpx_points(&la, budget.domain, &mut rng);
        if sampled {
            tally.mark_sampled();
        }
        for z in &points {
            let x = a.apply_at(&la, z);
            let y = b.apply_at(&lb, z);
            tally.see(presheaf_leq(q, &la.tx.array, &x, &y), x == y, || {
                format!("X = {base:?}, z = {}", a.show_z(base, z))
            });
        }
    }
    Ok(tally.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::{diagonal, luk, two};
    use crate::report::Status;

    fn run(q: &Quantaloid, kind: MonadKind, law: &str, sizes: &[usize]) -> Vec<Check> {
        let t = Monad::standard(q, kind, 2).unwrap();
        let law = builtin_law(law, q, &t).unwrap();
        check_law(q, &t, law.as_ref(), &Universe::sizes(q, sizes), &Budget::default()).unwrap()
    }

    #[test]
    fn identity_law_is_strict() {
        let d2 = diagonal(&two()).unwrap();
        for c in run(&d2, MonadKind::Identity, "identity", &[1, 2]) {
            assert_eq!(c.status, Status::PassExhaustive, "{c}");
            assert!(c.strict || c.name == "law.monotone", "{c}");
        }
    }

    #[test]
    fn tensor_over_two_is_strict() {
        for c in run(&two(), MonadKind::List, "tensor", &[1, 2]) {
            assert!(c.passed() && (c.strict || c.name == "law.monotone"), "{c}");
        }
    }

    #[test]
    fn delta_over_two_passes() {
        for c in run(&two(), MonadKind::Powerset, "delta", &[1, 2]) {
            assert_eq!(c.status, Status::PassExhaustive, "{c}");
        }
    }

    #[test]
    fn corrupted_delta_fails_c() {
        let q = two();
        let t = Monad::standard(&q, MonadKind::Powerset, 0).unwrap();
        let bad = corrupted_delta();
        let checks = check_law(&q, &t, &bad, &Universe::sizes(&q, &[1, 2]), &Budget::default()).unwrap();
        let c = checks.iter().find(|c| c.name == "law.c").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.is_some());
    }

    #[test]
    fn mismatched_pairs_are_refused() {
        let q = two();
        let l = Monad::standard(&q, MonadKind::List, 2).unwrap();
        assert!(builtin_law("delta", &q, &l).is_err());
        assert!(builtin_law("identity", &q, &l).is_err());
        let dl = diagonal(&luk(2)).unwrap();
        let p = Monad::standard(&dl, MonadKind::Powerset, 0).unwrap();
        assert!(builtin_law("delta", &dl, &p).is_err());
    }

    #[test]
    fn beta_reduces_to_evaluation() {
        let q = luk(2);
        let t = Monad::standard(&q, MonadKind::Ultrafilter, 0).unwrap();
        let beta = BetaLaw::new();
        let base = [0, 0];
        let tx = t.tset(&q, &base, 100).unwrap();
        for s in PresheafSet::build(&q, &base, 100).unwrap().elems {
            let out = beta.eval(&q, &t, &base, std::slice::from_ref(&s), &tx);
            assert_eq!(out.comps, s.comps);
        }
    }
}
