//! Extension families `φ ↦ T̂φ` and their correspondence with distribution
//! families.
//!
//! A family is evaluated column by column: the column at `v ∈ TY` is the
//! presheaf `⃖T̂φ(v)` on the enumerated `TX`. Equality of families always
//! means equality on the enumerated universe.
//!
//! The relation universe of every checker consists of all relations between
//! the sets of a [`Universe`], together with the counits `ε_X: X ⇸ PX`. Every
//! relation factors through a counit, and the correspondence proofs
//! specialize their variables to counits, so including them makes the
//! extension-side verdicts comparable with the law-side ones.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::{Arc, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distlaw::{check_law, draw_elem, DistLaw, FnLaw, Universe};
use crate::error::{Error, Result};
use crate::monads::{Budget, Monad, MonadKind, TSet};
use crate::presheaf::{kleisli_ext, presheaf_leq, Presheaf, PresheafSet};
use crate::qrel::{all_maps, cograph, compose, graph, rel_leq, QRel, Relation};
use crate::quantaloid::Quantaloid;
use crate::report::{Check, Status, Tally};
use crate::util::rng_for;

/// An assignment `φ ↦ T̂φ: TX ⇸ TY`.
pub trait ExtensionFamily: Send + Sync {
    fn name(&self) -> String;
    /// The column `⃖T̂φ(v)` on `tx`, for `v ∈ TY` in normal form. The value
    /// at `u ∈ tx` may depend on `u` but not on the rest of `tx`.
    fn column(&self, q: &Quantaloid, t: &Monad, phi: &dyn Relation, tx: &TSet, v: &[usize]) -> Presheaf;
}

/// `⃖φ(y)`, the column of `φ` at `y`.
pub fn mate_at(phi: &dyn Relation, y: usize) -> Presheaf {
    Presheaf { cod: phi.dst()[y], comps: (0..phi.src().len()).map(|x| phi.get(x, y)).collect() }
}

/// `T̂φ` tabulated on enumerated `TX` and `TY`.
pub fn tabulate(
    fam: &dyn ExtensionFamily,
    q: &Quantaloid,
    t: &Monad,
    phi: &dyn Relation,
    tx: &TSet,
    ty: &TSet,
) -> QRel {
    let cols: Vec<Presheaf> = ty.elems.iter().map(|v| fam.column(q, t, phi, tx, v)).collect();
    QRel::from_fn(&tx.array, &ty.array, |u, v| cols[v].comps[u])
}

/// `Φ(λ)`: `⃖T̂φ = λ_X·T⃖φ`.
pub struct Phi {
    law: Arc<dyn DistLaw>,
}

pub fn phi(law: Arc<dyn DistLaw>) -> Phi {
    Phi { law }
}

impl ExtensionFamily for Phi {
    fn name(&self) -> String {
        format!("Φ({})", self.law.name())
    }

    fn column(&self, q: &Quantaloid, t: &Monad, phi: &dyn Relation, tx: &TSet, v: &[usize]) -> Presheaf {
        let z = t.map(v, |&y| mate_at(phi, y));
        self.law.eval(q, t, phi.src(), &z, tx)
    }
}

/// `Ψ(T̂)`: `λ_X = ⃖T̂ε_X`.
///
/// When `PX` exceeds the enumeration limit, the counit is cut down to the
/// presheaves occurring in the argument. That is exact for families
/// satisfying (0) and an approximation otherwise.
pub struct Psi {
    fam: Arc<dyn ExtensionFamily>,
    px_limit: usize,
    px: Mutex<HashMap<Vec<usize>, Option<Arc<PresheafSet>>>>,
}

pub fn psi(fam: Arc<dyn ExtensionFamily>, budget: &Budget) -> Psi {
    Psi { fam, px_limit: budget.px, px: Mutex::new(HashMap::new()) }
}

impl Psi {
    fn presheaves(&self, q: &Quantaloid, base: &[usize]) -> Option<Arc<PresheafSet>> {
        let mut cache = self.px.lock().expect("cache lock");
        cache
            .entry(base.to_vec())
            .or_insert_with(|| PresheafSet::build(q, base, self.px_limit).ok().map(Arc::new))
            .clone()
    }
}

impl DistLaw for Psi {
    fn name(&self) -> String {
        format!("Ψ({})", self.fam.name())
    }

    fn eval(&self, q: &Quantaloid, t: &Monad, base: &[usize], z: &[Presheaf], tx: &TSet) -> Presheaf {
        if let Some(px) = self.presheaves(q, base) {
            let v = t.map(z, |s| px.index_of(s).expect("a presheaf on the base"));
            let eps = QRel::from_fn(base, px.array(), |x, s| px.elems[s].comps[x]);
            return self.fam.column(q, t, &eps, tx, &v);
        }
        let mut occurring: Vec<Presheaf> = z.to_vec();
        occurring.sort();
        occurring.dedup();
        let cods: Vec<usize> = occurring.iter().map(|s| s.cod).collect();
        let eps = QRel::from_fn(base, &cods, |x, s| occurring[s].comps[x]);
        let v = t.map(z, |s| occurring.binary_search(s).expect("listed"));
        self.fam.column(q, t, &eps, tx, &v)
    }
}

type EntryFn = dyn Fn(&Quantaloid, &Monad, &dyn Relation, &[usize], &[usize]) -> usize + Send + Sync;

/// A family given entrywise, `T̂φ(u, v) = f(φ, u, v)`.
pub struct FnFamily {
    name: String,
    f: Box<EntryFn>,
}

impl FnFamily {
    pub fn new(
        name: impl Into<String>,
        f: impl Fn(&Quantaloid, &Monad, &dyn Relation, &[usize], &[usize]) -> usize + Send + Sync + 'static,
    ) -> Self {
        FnFamily { name: name.into(), f: Box::new(f) }
    }
}

impl ExtensionFamily for FnFamily {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn column(&self, q: &Quantaloid, t: &Monad, phi: &dyn Relation, tx: &TSet, v: &[usize]) -> Presheaf {
        let cod = t.array_of(q, phi.dst(), v);
        Presheaf { cod, comps: tx.elems.iter().map(|u| (self.f)(q, t, phi, u, v)).collect() }
    }
}

/// Names accepted by [`builtin_extension`].
pub const BUILTIN_EXTENSIONS: &[&str] = &["identity", "tensor", "delta", "egli-milner", "top"];

/// Families given by direct formulas.
///
/// * `identity`: `T̂φ = φ` for the identity monad.
/// * `tensor`: `φ(x₁,y₁)⊗…⊗φ(xₙ,yₙ)` on lists of equal length, `⊥` otherwise.
/// * `delta`: `T̂φ(A,B) = ⋀_{x∈A} ⋁_{y∈B} φ(x,y)`.
/// * `egli-milner`: the meet of `delta` and its mirror image `⋀_{y∈B} ⋁_{x∈A} φ(x,y)`.
/// * `top`: every entry `⊤`.
pub fn builtin_extension(name: &str, q: &Quantaloid, t: &Monad) -> Result<FnFamily> {
    let refuse = |why: &str| Err(Error::Refused(format!("extension {name} over {} with {}: {why}", q.name(), t.name())));
    let quantale = q.is_quantale();
    match name {
        "identity" => {
            if t.kind != MonadKind::Identity {
                return refuse("needs the identity monad");
            }
            Ok(FnFamily::new("identity", |_q, _t, phi, u, v| phi.get(u[0], v[0])))
        }
        "tensor" => {
            if t.kind != MonadKind::List || !quantale {
                return refuse("needs the list monad over a quantale");
            }
            Ok(FnFamily::new("tensor", |q, _t, phi, u, v| {
                if u.len() != v.len() {
                    return q.bot(0, 0);
                }
                u.iter().zip(v).fold(q.unit(), |acc, (&x, &y)| q.tensor(acc, phi.get(x, y)))
            }))
        }
        "delta" | "egli-milner" => {
            if t.kind != MonadKind::Powerset || !quantale {
                return refuse("needs the powerset monad over a quantale");
            }
            let mirrored = name == "egli-milner";
            Ok(FnFamily::new(name, move |q, _t, phi, u, v| {
                let l = q.hom(0, 0);
                let fwd = l.meet_all(u.iter().map(|&x| l.join_all(v.iter().map(|&y| phi.get(x, y)))));
                if !mirrored {
                    return fwd;
                }
                let back = l.meet_all(v.iter().map(|&y| l.join_all(u.iter().map(|&x| phi.get(x, y)))));
                l.meet(fwd, back)
            }))
        }
        "top" => Ok(FnFamily::new("top", |q, t, phi, u, v| {
            q.top(t.array_of(q, phi.src(), u), t.array_of(q, phi.dst(), v))
        })),
        _ => Err(Error::Refused(format!("unknown extension {name}"))),
    }
}

/// `T̂φ(x, y) = ⋁_{y'} φ(x, y')` for the identity monad over a quantale;
/// monotone, but breaks (0).
pub fn row_join_family() -> FnFamily {
    FnFamily::new("row-join", |q, _t, phi, u, _v| {
        q.hom(0, 0).join_all((0..phi.dst().len()).map(|y| phi.get(u[0], y)))
    })
}

/// Renders a relation row by row with hom-lattice labels.
pub fn show_rel(q: &Quantaloid, r: &QRel) -> String {
    let rows: Vec<String> = (0..r.src.len())
        .map(|x| {
            let row: Vec<&str> =
                (0..r.dst.len()).map(|y| q.hom(r.src[x], r.dst[y]).label(r.get(x, y))).collect();
            row.join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn cmp(q: &Quantaloid, a: &QRel, b: &QRel) -> (bool, bool) {
    (rel_leq(q, a, b).expect("same boundaries"), a.entries == b.entries)
}

/// Caches and quantification policy for the extension-side checkers.
pub struct ExtHarness<'a> {
    pub q: &'a Quantaloid,
    pub t: &'a Monad,
    pub fam: &'a dyn ExtensionFamily,
    pub budget: &'a Budget,
    tsets: RefCell<HashMap<Vec<usize>, Rc<TSet>>>,
    pxs: RefCell<HashMap<Vec<usize>, Option<Rc<PresheafSet>>>>,
    memo: RefCell<HashMap<QRel, Rc<QRel>>>,
}

impl<'a> ExtHarness<'a> {
    pub fn new(q: &'a Quantaloid, t: &'a Monad, fam: &'a dyn ExtensionFamily, budget: &'a Budget) -> Self {
        ExtHarness {
            q,
            t,
            fam,
            budget,
            tsets: RefCell::new(HashMap::new()),
            pxs: RefCell::new(HashMap::new()),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn tset(&self, arr: &[usize]) -> Result<Rc<TSet>> {
        if let Some(ts) = self.tsets.borrow().get(arr) {
            return Ok(ts.clone());
        }
        let ts = Rc::new(self.t.tset(self.q, arr, self.budget.domain)?);
        self.tsets.borrow_mut().insert(arr.to_vec(), ts.clone());
        Ok(ts)
    }

    pub(crate) fn px(&self, arr: &[usize]) -> Option<Rc<PresheafSet>> {
        self.pxs
            .borrow_mut()
            .entry(arr.to_vec())
            .or_insert_with(|| PresheafSet::build(self.q, arr, self.budget.px).ok().map(Rc::new))
            .clone()
    }

    /// `ε_X: X ⇸ PX`, when `PX` and `TPX` are enumerable.
    pub(crate) fn counit(&self, arr: &[usize]) -> Option<QRel> {
        let px = self.px(arr)?;
        self.tset(px.array()).ok()?;
        Some(QRel::from_fn(arr, px.array(), |x, s| px.elems[s].comps[x]))
    }

    /// `T̂φ` on the enumerated `TX`, `TY`, memoized.
    pub fn ext(&self, phi: &QRel) -> Result<Rc<QRel>> {
        if let Some(r) = self.memo.borrow().get(phi) {
            return Ok(r.clone());
        }
        let tx = self.tset(&phi.src)?;
        let ty = self.tset(&phi.dst)?;
        let r = Rc::new(tabulate(self.fam, self.q, self.t, phi, &tx, &ty));
        self.memo.borrow_mut().insert(phi.clone(), r.clone());
        Ok(r)
    }

    /// `T̂φ(u, v)` for arbitrary `u ∈ TX`, `v ∈ TY`.
    pub(crate) fn entry(&self, phi: &dyn Relation, u: &[usize], v: &[usize]) -> usize {
        let one = TSet::new(vec![u.to_vec()], vec![self.t.array_of(self.q, phi.src(), u)]);
        self.fam.column(self.q, self.t, phi, &one, v).comps[0]
    }

    /// `Tf` as a map between enumerated sets.
    pub(crate) fn tmap(&self, f: &[usize], tx: &TSet, ty: &TSet) -> Vec<usize> {
        tx.elems.iter().map(|u| ty.index_of(&self.t.fmap_vec(u, f)).expect("Tf stays in the universe")).collect()
    }

    /// `e_X` as a map `X → TX`.
    pub(crate) fn units(&self, n: usize, tx: &TSet) -> Vec<usize> {
        (0..n).map(|x| tx.index_of(&[x]).expect("units are enumerated")).collect()
    }

    /// `m` on an element of `TTX`, read through the enumerated `TX`.
    pub(crate) fn flat(&self, tx: &TSet, uu: &[usize]) -> Vec<usize> {
        let inner: Vec<Vec<usize>> = uu.iter().map(|&i| tx.elems[i].clone()).collect();
        self.t.flatten(&inner)
    }

    pub(crate) fn random_rel(&self, a: &[usize], b: &[usize], rng: &mut ChaCha8Rng) -> QRel {
        let mut entries = Vec::with_capacity(a.len() * b.len());
        for &r in a {
            for &s in b {
                entries.push(rng.gen_range(0..self.q.hom(r, s).len()));
            }
        }
        QRel { src: a.to_vec(), dst: b.to_vec(), entries }
    }

    /// All relations `a ⇸ b`, or a sample when there are more than `budget.px`.
    pub(crate) fn rels(&self, a: &[usize], b: &[usize], rng: &mut ChaCha8Rng) -> (Vec<QRel>, bool) {
        match QRel::enumerate(self.q, a, b, self.budget.px) {
            Ok(all) => (all, false),
            Err(_) => ((0..self.budget.samples).map(|_| self.random_rel(a, b, rng)).collect(), true),
        }
    }

    /// Relations between universe sets plus the counits.
    pub(crate) fn phis(&self, universe: &Universe, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Vec<QRel> {
        let mut out = Vec::new();
        for a in &universe.arrays {
            for b in &universe.arrays {
                let (rs, sampled) = self.rels(a, b, rng);
                if sampled {
                    tally.mark_sampled();
                }
                out.extend(rs);
            }
            match self.counit(a) {
                Some(eps) => out.push(eps),
                None => tally.domain(format!("no counit on {a:?}")),
            }
        }
        out
    }

    /// Pairs `(φ, ψ)` with `φ: X ⇸ Y`, `ψ: Y ⇸ Z` between universe sets,
    /// and `ψ = ε_Y`, sampled beyond `budget.domain`.
    pub(crate) fn composable(&self, universe: &Universe, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Vec<(QRel, QRel)> {
        let mut out = Vec::new();
        for a in &universe.arrays {
            for b in &universe.arrays {
                let (phis, s1) = self.rels(a, b, rng);
                let mut psis = Vec::new();
                let mut s2 = false;
                for c in &universe.arrays {
                    let (rs, s) = self.rels(b, c, rng);
                    s2 |= s;
                    psis.extend(rs);
                }
                if let Some(eps) = self.counit(b) {
                    psis.push(eps);
                }
                if s1 || s2 {
                    tally.mark_sampled();
                }
                if phis.len() * psis.len() <= self.budget.domain {
                    for p in &phis {
                        for s in &psis {
                            out.push((p.clone(), s.clone()));
                        }
                    }
                } else {
                    tally.mark_sampled();
                    for _ in 0..self.budget.samples {
                        let p = &phis[rng.gen_range(0..phis.len())];
                        let s = &psis[rng.gen_range(0..psis.len())];
                        out.push((p.clone(), s.clone()));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn rng(&self, check: &str) -> ChaCha8Rng {
        rng_for(self.budget.seed, &format!("{check}/{}/{}/{}", self.fam.name(), self.t.name(), self.q.name()))
    }

    /// Elements of `T A` for `|A| = n`: all of them within `limit`, else a sample.
    pub(crate) fn t_points(&self, n: usize, limit: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<usize>>, bool) {
        match self.t.enumerate_checked(n, limit) {
            Some(all) => (all, false),
            None => {
                let pts = (0..self.budget.samples).map(|_| draw_elem(self.t, self.budget, rng, |r| r.gen_range(0..n))).collect();
                (pts, true)
            }
        }
    }
}

/// (0) `T̂(h°∘φ) = (Th)°∘T̂φ`, including `φ = ε_X` with `h = ⃖ψ`.
pub fn check_0(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.0", "(0) T̂(h°∘φ) = (Th)°∘T̂φ");
    let mut rng = h.rng("ext.0");
    let whisker = |phi: &QRel, hm: &[usize], z: &[usize], tally: &mut Tally| -> Result<()> {
        let lhs = h.ext(&compose(q, &cograph(q, hm, z, &phi.dst)?, phi)?)?;
        let (tz, ty) = (h.tset(z)?, h.tset(&phi.dst)?);
        let rhs = compose(q, &cograph(q, &h.tmap(hm, &tz, &ty), &tz.array, &ty.array)?, &*h.ext(phi)?)?;
        tally.same(*lhs == rhs, || format!("φ = {}, h = {hm:?}", show_rel(q, phi)));
        Ok(())
    };
    for a in &universe.arrays {
        for b in &universe.arrays {
            let (phis, sampled) = h.rels(a, b, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            for c in &universe.arrays {
                let maps = all_maps(c, b, h.budget.domain)?;
                for phi in &phis {
                    for hm in &maps {
                        whisker(phi, hm, c, &mut tally)?;
                    }
                }
            }
        }
        let (Some(eps), Some(px)) = (h.counit(a), h.px(a)) else { continue };
        for c in &universe.arrays {
            let (psis, sampled) = h.rels(a, c, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            for psi in &psis {
                let hm: Vec<usize> =
                    (0..c.len()).map(|z| px.index_of(&mate_at(psi, z)).expect("columns are presheaves")).collect();
                whisker(&eps, &hm, c, &mut tally)?;
            }
        }
    }
    tally.domain("maps between universe sets; counits whiskered by mates");
    Ok(tally.finish())
}

/// `T̂(ψ∘f_∘) = T̂ψ∘(Tf)_∘`.
pub fn check_graph_whiskering(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.0-graph", "T̂(ψ∘f_∘) = T̂ψ∘(Tf)_∘");
    let mut rng = h.rng("ext.0-graph");
    for a in &universe.arrays {
        for b in &universe.arrays {
            let maps = all_maps(a, b, h.budget.domain)?;
            let (ta, tb) = (h.tset(a)?, h.tset(b)?);
            for c in &universe.arrays {
                let (psis, sampled) = h.rels(b, c, &mut rng);
                if sampled {
                    tally.mark_sampled();
                }
                for f in &maps {
                    let tf = graph(q, &h.tmap(f, &ta, &tb), &ta.array, &tb.array)?;
                    for psi in &psis {
                        let lhs = h.ext(&compose(q, psi, &graph(q, f, a, b)?)?)?;
                        let rhs = compose(q, &*h.ext(psi)?, &tf)?;
                        tally.same(*lhs == rhs, || format!("f = {f:?}, ψ = {}", show_rel(q, psi)));
                    }
                }
            }
        }
    }
    Ok(tally.finish())
}

/// (1) `T̂ψ∘(Tg)° ≤ T̂(ψ∘g°)` for `g: A → B`, `ψ: A ⇸ Z`.
pub fn check_1(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.1", "(1) T̂ψ∘(Tg)° ≤ T̂(ψ∘g°)");
    let mut rng = h.rng("ext.1");
    let phis = h.phis(universe, &mut rng, &mut tally);
    for a in &universe.arrays {
        let ta = h.tset(a)?;
        for b in &universe.arrays {
            let tb = h.tset(b)?;
            for g in &all_maps(a, b, h.budget.domain)? {
                let tg = cograph(q, &h.tmap(g, &ta, &tb), &ta.array, &tb.array)?;
                for psi in phis.iter().filter(|p| &p.src == a) {
                    let lhs = compose(q, &*h.ext(psi)?, &tg)?;
                    let rhs = h.ext(&compose(q, psi, &cograph(q, g, a, b)?)?)?;
                    let (le, eq) = cmp(q, &lhs, &rhs);
                    tally.see(le, eq, || format!("g = {g:?}: {a:?} → {b:?}, ψ = {}", show_rel(q, psi)));
                }
            }
        }
    }
    Ok(tally.finish())
}

/// (2) `1_TX° ≤ T̂(1_X°)`.
pub fn check_2(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.2", "(2) 1_TX° ≤ T̂(1_X°)");
    for a in &universe.arrays {
        let ta = h.tset(a)?;
        let lhs = QRel::identity(q, &ta.array);
        let rhs = h.ext(&QRel::identity(q, a))?;
        let (le, eq) = cmp(q, &lhs, &rhs);
        tally.see(le, eq, || format!("X = {a:?}, T̂(1°) = {}", show_rel(q, &rhs)));
    }
    Ok(tally.finish())
}

/// (2') `(Tf)° ≤ T̂(f°)`; the same inequality is axiom 2 of a lax extension.
pub fn check_2p(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    cographs_below(h, universe, "ext.2'", "(2') (Tf)° ≤ T̂(f°)", false)
}

/// Axiom 1, `(Tf)_∘ ≤ T̂(f_∘)`.
pub fn check_ax1(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    cographs_below(h, universe, "lax.1", "1. (Tf)_∘ ≤ T̂(f_∘)", true)
}

fn cographs_below(h: &ExtHarness, universe: &Universe, name: &str, label: &str, graphs: bool) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new(name, label);
    let pick = |f: &[usize], a: &[usize], b: &[usize]| if graphs { graph(q, f, a, b) } else { cograph(q, f, a, b) };
    for a in &universe.arrays {
        let ta = h.tset(a)?;
        for b in &universe.arrays {
            let tb = h.tset(b)?;
            for f in &all_maps(a, b, h.budget.domain)? {
                let lhs = pick(&h.tmap(f, &ta, &tb), &ta.array, &tb.array)?;
                let rhs = h.ext(&pick(f, a, b)?)?;
                let (le, eq) = cmp(q, &lhs, &rhs);
                tally.see(le, eq, || format!("f = {f:?}: {a:?} → {b:?}"));
            }
        }
    }
    Ok(tally.finish())
}

/// (3) `T̂ψ∘T̂φ ≤ T̂(ψ∘φ)`; axiom 3 of a lax extension.
pub fn check_3(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.3", "(3) T̂ψ∘T̂φ ≤ T̂(ψ∘φ)");
    let mut rng = h.rng("ext.3");
    for (phi, psi) in h.composable(universe, &mut rng, &mut tally) {
        let lhs = compose(q, &*h.ext(&psi)?, &*h.ext(&phi)?)?;
        let rhs = h.ext(&compose(q, &psi, &phi)?)?;
        let (le, eq) = cmp(q, &lhs, &rhs);
        tally.see(le, eq, || format!("φ = {}, ψ = {}", show_rel(q, &phi), show_rel(q, &psi)));
    }
    tally.domain("composable pairs between universe sets, and ψ = ε_Y");
    Ok(tally.finish())
}

/// (3') `(T̂φ)^⊙·⃖T̂ε_Y ≤ ⃖T̂ε_X·Tφ^⊙`, quantified over `TPY`.
pub fn check_3p(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let (q, t) = (h.q, h.t);
    let mut tally = Tally::new("ext.3'", "(3') (T̂φ)^⊙·⃖T̂ε_Y ≤ ⃖T̂ε_X·Tφ^⊙");
    let mut rng = h.rng("ext.3'");
    let phis = h.phis(universe, &mut rng, &mut tally);
    for phi in &phis {
        let (Some(px), Some(eps_x)) = (h.px(&phi.src), h.counit(&phi.src)) else { continue };
        let Some(py) = h.px(&phi.dst) else {
            tally.domain(format!("P of {} points not enumerated", phi.dst.len()));
            tally.mark_sampled();
            continue;
        };
        let eps_y = QRel::from_fn(&phi.dst, py.array(), |y, s| py.elems[s].comps[y]);
        let (tx, ty) = (h.tset(&phi.src)?, h.tset(&phi.dst)?);
        let ext_phi = h.ext(phi)?;
        let image: Vec<usize> = py
            .elems
            .iter()
            .map(|tau| px.index_of(&kleisli_ext(q, phi, tau)).expect("φ^⊙ lands in PX"))
            .collect();
        let (points, sampled) = h.t_points(py.len(), h.budget.domain, &mut rng);
        if sampled {
            tally.mark_sampled();
        }
        for z in &points {
            let lhs = kleisli_ext(q, &*ext_phi, &h.fam.column(q, t, &eps_y, &ty, z));
            let rhs = h.fam.column(q, t, &eps_x, &tx, &t.fmap_vec(z, &image));
            tally.see(presheaf_leq(q, &tx.array, &lhs, &rhs), lhs == rhs, || {
                format!("φ = {}, z = {z:?}", show_rel(q, phi))
            });
        }
    }
    Ok(tally.finish())
}

/// (4) `φ∘e_X° ≤ e_Y°∘T̂φ`.
pub fn check_4(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.4", "(4) φ∘e_X° ≤ e_Y°∘T̂φ");
    let mut rng = h.rng("ext.4");
    for phi in h.phis(universe, &mut rng, &mut tally) {
        let (tx, ty) = (h.tset(&phi.src)?, h.tset(&phi.dst)?);
        let ex = cograph(q, &h.units(phi.src.len(), &tx), &phi.src, &tx.array)?;
        let ey = cograph(q, &h.units(phi.dst.len(), &ty), &phi.dst, &ty.array)?;
        let lhs = compose(q, &phi, &ex)?;
        let rhs = compose(q, &ey, &*h.ext(&phi)?)?;
        let (le, eq) = cmp(q, &lhs, &rhs);
        tally.see(le, eq, || format!("φ = {}", show_rel(q, &phi)));
    }
    Ok(tally.finish())
}

/// Axiom 4, `(e_Y)_∘∘φ ≤ T̂φ∘(e_X)_∘`.
pub fn check_ax4(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("lax.4", "4. (e_Y)_∘∘φ ≤ T̂φ∘(e_X)_∘");
    let mut rng = h.rng("lax.4");
    for phi in h.phis(universe, &mut rng, &mut tally) {
        let (tx, ty) = (h.tset(&phi.src)?, h.tset(&phi.dst)?);
        let ex = graph(q, &h.units(phi.src.len(), &tx), &phi.src, &tx.array)?;
        let ey = graph(q, &h.units(phi.dst.len(), &ty), &phi.dst, &ty.array)?;
        let lhs = compose(q, &ey, &phi)?;
        let rhs = compose(q, &*h.ext(&phi)?, &ex)?;
        let (le, eq) = cmp(q, &lhs, &rhs);
        tally.see(le, eq, || format!("φ = {}", show_rel(q, &phi)));
    }
    Ok(tally.finish())
}

/// The parts of (5) and axiom 5 that both need: for each tested `W ∈ TTY`,
/// the column `⃖T̂T̂φ(W)` on `TTX` and `m_Y W`.
struct DoubleColumns {
    tx: Rc<TSet>,
    ttx: Rc<TSet>,
    cols: Vec<(Vec<usize>, Presheaf)>,
    sampled: bool,
}

fn double_columns(h: &ExtHarness, phi: &QRel, limit: usize, rng: &mut ChaCha8Rng) -> Result<DoubleColumns> {
    let (tx, ty) = (h.tset(&phi.src)?, h.tset(&phi.dst)?);
    let ttx = h.tset(&tx.array)?;
    let ext_phi = h.ext(phi)?;
    let (ws, sampled) = h.t_points(ty.len(), limit, rng);
    let cols = ws
        .into_iter()
        .map(|w| {
            let col = h.fam.column(h.q, h.t, &*ext_phi, &ttx, &w);
            (h.flat(&ty, &w), col)
        })
        .collect();
    Ok(DoubleColumns { tx, ttx, cols, sampled })
}

/// (5) `T̂T̂φ∘m_X° ≤ m_Y°∘T̂φ`.
pub fn check_5(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.5", "(5) T̂T̂φ∘m_X° ≤ m_Y°∘T̂φ");
    let mut rng = h.rng("ext.5");
    let phis = h.phis(universe, &mut rng, &mut tally);
    let limit = h.budget.domain;
    for phi in &phis {
        let d = double_columns(h, phi, limit, &mut rng)?;
        if d.sampled {
            tally.mark_sampled();
        }
        let m: Vec<Option<usize>> = d.ttx.elems.iter().map(|uu| d.tx.index_of(&h.flat(&d.tx, uu))).collect();
        for (mw, col) in &d.cols {
            for (u, ua) in d.tx.elems.iter().enumerate() {
                let (r, s) = (d.tx.array[u], col.cod);
                let lhs = q.hom(r, s).join_all((0..m.len()).filter(|&i| m[i] == Some(u)).map(|i| col.comps[i]));
                let rhs = h.entry(phi, ua, mw);
                tally.see(q.leq(r, s, lhs, rhs), lhs == rhs, || format!("φ = {}, u = {ua:?}, m(W) = {mw:?}", show_rel(q, phi)));
            }
        }
    }
    if h.t.kind == MonadKind::List {
        tally.domain(format!("lists of length ≤ {}", h.t.list_len));
    }
    Ok(tally.finish())
}

/// Axiom 5, `(m_Y)_∘∘T̂T̂φ ≤ T̂φ∘(m_X)_∘`.
pub fn check_ax5(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("lax.5", "5. (m_Y)_∘∘T̂T̂φ ≤ T̂φ∘(m_X)_∘");
    let mut rng = h.rng("lax.5");
    let phis = h.phis(universe, &mut rng, &mut tally);
    let limit = h.budget.domain;
    for phi in &phis {
        let d = double_columns(h, phi, limit, &mut rng)?;
        if d.sampled {
            tally.mark_sampled();
        }
        // (m_Y)_∘∘T̂T̂φ at (UU, v) joins the columns with m(W) = v
        let mut lhs: HashMap<Vec<usize>, Presheaf> = HashMap::new();
        for (mw, col) in &d.cols {
            lhs.entry(mw.clone())
                .and_modify(|acc| {
                    for (i, c) in acc.comps.iter_mut().enumerate() {
                        *c = q.join(d.ttx.array[i], col.cod, *c, col.comps[i]);
                    }
                })
                .or_insert_with(|| col.clone());
        }
        let mut keys: Vec<&Vec<usize>> = lhs.keys().collect();
        keys.sort();
        for v in keys {
            let col = &lhs[v];
            for (i, uu) in d.ttx.elems.iter().enumerate() {
                let (r, s) = (d.ttx.array[i], col.cod);
                let rhs = h.entry(phi, &h.flat(&d.tx, uu), v);
                let l = col.comps[i];
                tally.see(q.leq(r, s, l, rhs), l == rhs, || format!("φ = {}, UU = {uu:?}, v = {v:?}", show_rel(q, phi)));
            }
        }
    }
    if h.t.kind == MonadKind::List {
        tally.domain(format!("lists of length ≤ {}", h.t.list_len));
    }
    Ok(tally.finish())
}

/// `φ ≤ φ' ⇒ T̂φ ≤ T̂φ'` between universe sets.
pub fn check_monotone(h: &ExtHarness, universe: &Universe) -> Result<Check> {
    let q = h.q;
    let mut tally = Tally::new("ext.monotone", "monotonicity of T̂");
    let mut rng = h.rng("ext.monotone");
    for a in &universe.arrays {
        for b in &universe.arrays {
            let (rs, sampled) = h.rels(a, b, &mut rng);
            if sampled {
                tally.mark_sampled();
            }
            for lo in &rs {
                for hi in &rs {
                    if !rel_leq(q, lo, hi)? {
                        continue;
                    }
                    let (el, eh) = (h.ext(lo)?, h.ext(hi)?);
                    let (le, eq) = cmp(q, &el, &eh);
                    tally.see(le, eq, || format!("φ = {} ≤ φ' = {}", show_rel(q, lo), show_rel(q, hi)));
                }
            }
        }
    }
    Ok(tally.finish())
}

fn renamed(c: &Check, name: &str, label: &str) -> Check {
    Check { name: name.into(), label: label.into(), ..c.clone() }
}

/// The axioms of a lax extension, plus monotonicity.
pub fn check_lax_extension(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let h = ExtHarness::new(q, t, fam, budget);
    lax_axioms(&h, universe)
}

fn lax_axioms(h: &ExtHarness, universe: &Universe) -> Result<Vec<Check>> {
    Ok(vec![
        check_ax1(h, universe)?,
        renamed(&check_2p(h, universe)?, "lax.2", "2. (Tf)° ≤ T̂(f°)"),
        renamed(&check_3(h, universe)?, "lax.3", "3. T̂ψ∘T̂φ ≤ T̂(ψ∘φ)"),
        check_ax4(h, universe)?,
        check_ax5(h, universe)?,
        check_monotone(h, universe)?,
    ])
}

/// The numbered conditions (0)–(5), (2'), (3') and monotonicity.
pub fn check_conditions(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let h = ExtHarness::new(q, t, fam, budget);
    conditions(&h, universe)
}

fn conditions(h: &ExtHarness, universe: &Universe) -> Result<Vec<Check>> {
    Ok(vec![
        check_0(h, universe)?,
        check_1(h, universe)?,
        check_2(h, universe)?,
        check_2p(h, universe)?,
        check_3(h, universe)?,
        check_3p(h, universe)?,
        check_4(h, universe)?,
        check_5(h, universe)?,
        check_monotone(h, universe)?,
    ])
}

fn find<'c>(checks: &'c [Check], name: &str) -> &'c Check {
    checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

fn all_or_none(name: &str, label: &str, verdicts: &[(&str, bool)]) -> Check {
    let agree = verdicts.iter().all(|v| v.1) || verdicts.iter().all(|v| !v.1);
    let shown: Vec<String> = verdicts.iter().map(|(n, v)| format!("{n} {}", if *v { "holds" } else { "fails" })).collect();
    Check::fact(name, label, agree, Some(shown.join(", ")))
}

/// The three equivalent conditions for a monotone family satisfying (3),
/// asserted all-or-none.
pub fn check_prop64(
    q: &Quantaloid,
    t: &Monad,
    fam: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    let h = ExtHarness::new(q, t, fam, budget);
    let mono = check_monotone(&h, universe)?;
    let three = check_3(&h, universe)?;
    let two = check_2(&h, universe)?.passed();
    let zero = check_0(&h, universe)?.passed();
    let graph_w = check_graph_whiskering(&h, universe)?.passed();
    let two_p = check_2p(&h, universe)?.passed();
    let ax1 = check_ax1(&h, universe)?.passed();
    let i = Check::fact("prop64.i", "(i) 1° ≤ T̂(1°) and (0)", two && zero, Some(format!("(2): {two}, (0): {zero}")));
    let ii = Check::fact(
        "prop64.ii",
        "(ii) 1° ≤ T̂(1°) and T̂(ψ∘f_∘) = T̂ψ∘(Tf)_∘",
        two && graph_w,
        Some(format!("(2): {two}, graph whiskering: {graph_w}")),
    );
    let iii = Check::fact(
        "prop64.iii",
        "(iii) (Tf)° ≤ T̂(f°) and (Tf)_∘ ≤ T̂(f_∘)",
        two_p && ax1,
        Some(format!("(2'): {two_p}, axiom 1: {ax1}")),
    );
    let equiv = if mono.passed() && three.passed() {
        all_or_none("prop64.equiv", "(i) ⇔ (ii) ⇔ (iii)", &[("(i)", i.passed()), ("(ii)", ii.passed()), ("(iii)", iii.passed())])
    } else {
        Check::untested("prop64.equiv", "(i) ⇔ (ii) ⇔ (iii)", "T̂ is not monotone or fails (3)")
    };
    Ok(vec![mono, three, i, ii, iii, equiv])
}

/// `ΨΦ(λ) = λ` on `TPX` for every universe set.
pub fn check_psi_phi(
    q: &Quantaloid,
    t: &Monad,
    law: Arc<dyn DistLaw>,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let round = psi(Arc::new(phi(law.clone())), budget);
    check_same_law("roundtrip.psi-phi", "ΨΦ(λ) = λ", q, t, &*law, &round, universe, budget)
}

/// Equality of two laws on `TPX` for the universe sets; sampled where
/// `TPX` is too large.
#[allow(clippy::too_many_arguments)]
pub fn check_same_law(
    name: &str,
    statement: &str,
    q: &Quantaloid,
    t: &Monad,
    a: &dyn DistLaw,
    b: &dyn DistLaw,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let mut tally = Tally::new(name, statement);
    let mut rng = rng_for(budget.seed, &format!("{name}/{}/{}/{}", a.name(), t.name(), q.name()));
    for base in &universe.arrays {
        let tx = t.tset(q, base, budget.domain)?;
        let px = PresheafSet::build(q, base, budget.px)?;
        let (points, sampled) = match t.enumerate_checked(px.len(), budget.domain) {
            Some(all) => (all, false),
            None => ((0..budget.samples).map(|_| draw_elem(t, budget, &mut rng, |r| r.gen_range(0..px.len()))).collect(), true),
        };
        if sampled {
            tally.mark_sampled();
        }
        for w in &points {
            let z: Vec<Presheaf> = w.iter().map(|&i| px.elems[i].clone()).collect();
            let x = a.eval(q, t, base, &z, &tx);
            let y = b.eval(q, t, base, &z, &tx);
            tally.same(x == y, || format!("X = {base:?}, z = {w:?}"));
        }
    }
    Ok(tally.finish())
}

/// `ΦΨ(T̂) = T̂` on the relation universe.
pub fn check_phi_psi(
    q: &Quantaloid,
    t: &Monad,
    fam: Arc<dyn ExtensionFamily>,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let round = phi(Arc::new(psi(fam.clone(), budget)));
    check_same_family("roundtrip.phi-psi", "ΦΨ(T̂) = T̂", q, t, &*fam, &round, universe, budget)
}

/// Equality of two families on the relation universe.
#[allow(clippy::too_many_arguments)]
pub fn check_same_family(
    name: &str,
    statement: &str,
    q: &Quantaloid,
    t: &Monad,
    a: &dyn ExtensionFamily,
    b: &dyn ExtensionFamily,
    universe: &Universe,
    budget: &Budget,
) -> Result<Check> {
    let h = ExtHarness::new(q, t, a, budget);
    let r = ExtHarness::new(q, t, b, budget);
    let mut tally = Tally::new(name, statement);
    let mut rng = h.rng(name);
    for phi in h.phis(universe, &mut rng, &mut tally) {
        let x = h.ext(&phi)?;
        let y = r.ext(&phi)?;
        tally.same(x == y, || {
            format!("φ = {}: {} gives {}, {} gives {}", show_rel(q, &phi), a.name(), show_rel(q, &x), b.name(), show_rel(q, &y))
        });
    }
    Ok(tally.finish())
}

/// Everything known about one family and its law.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub family: String,
    pub roundtrip: Check,
    pub conditions: Vec<Check>,
    pub axioms: Vec<Check>,
    /// (a)–(e) and monotonicity of `Ψ(T̂)`
    pub law: Vec<Check>,
    /// the implications between law-side and extension-side verdicts
    pub table: Vec<Check>,
    /// lax extension ⇔ (0)-family with a monotone lax distributive law
    pub theorem: Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CorrespondenceReport {
    pub fn checks(&self) -> Vec<Check> {
        let mut out = vec![self.roundtrip.clone()];
        out.extend(self.conditions.iter().cloned());
        out.extend(self.axioms.iter().filter(|c| c.name != "ext.monotone").cloned());
        out.extend(self.law.iter().cloned());
        out.extend(self.table.iter().cloned());
        out.push(self.theorem.clone());
        out
    }

    /// Number of failed table entries and theorem checks.
    pub fn discrepancies(&self) -> usize {
        self.table.iter().chain(std::iter::once(&self.theorem)).filter(|c| c.failed()).count()
    }
}

/// The implications between the law-side checks `law.a`–`law.e` and the
/// extension-side conditions, for a law and family related by `Φ`/`Ψ`.
pub fn correspondence_table(law: &[Check], ext: &[Check]) -> Vec<Check> {
    let v = |c: &Check| match c.status {
        Status::Untested => None,
        s => Some(s.passed()),
    };
    let l = |n: &str| v(find(law, &format!("law.{n}")));
    let e = |n: &str| v(find(ext, &format!("ext.{n}")));
    let rows: Vec<(&str, Option<bool>, Option<bool>, bool)> = vec![
        ("(a) ⇔ (1)", l("a"), e("1"), true),
        ("(b) ⇔ (2)", l("b"), e("2"), true),
        ("(b) ⇔ (2')", l("b"), e("2'"), true),
        ("(a) & (c) ⇒ (3)", l("a").zip(l("c")).map(|(a, c)| a && c), e("3"), false),
        ("(3) ⇔ (3')", e("3"), e("3'"), true),
        ("(3') ⇒ (c)", e("3'"), l("c"), false),
        ("(2') & (3) ⇒ (a)", e("2'").zip(e("3")).map(|(a, b)| a && b), l("a"), false),
        ("(d) ⇔ (4)", l("d"), e("4"), true),
        ("(e) ⇔ (5)", l("e"), e("5"), true),
    ];
    rows.into_iter()
        .enumerate()
        .map(|(i, (label, p, c, iff))| {
            let name = format!("table.{}", i + 1);
            match (p, c) {
                (Some(p), Some(c)) => {
                    let ok = if iff { p == c } else { !p || c };
                    Check::fact(&name, label, ok, Some(format!("left {p}, right {c}")))
                }
                _ => Check::untested(&name, label, "a side is untested"),
            }
        })
        .collect()
}

/// Runs both sides of the correspondence for one family.
///
/// The table relates `Ψ(T̂)` with `ΦΨ(T̂)`; when `T̂` passes the roundtrip
/// that is `T̂` itself, otherwise the conditions are evaluated again on
/// `ΦΨ(T̂)`.
pub fn check_extension_conditions(
    q: &Quantaloid,
    t: &Monad,
    fam: Arc<dyn ExtensionFamily>,
    universe: &Universe,
    budget: &Budget,
) -> Result<CorrespondenceReport> {
    let h = ExtHarness::new(q, t, &*fam, budget);
    let conds = conditions(&h, universe)?;
    let axioms = lax_axioms(&h, universe)?;
    let roundtrip = check_phi_psi(q, t, fam.clone(), universe, budget)?;
    let lam: Arc<dyn DistLaw> = Arc::new(psi(fam.clone(), budget));
    let law = check_law(q, t, &*lam, universe, budget)?;
    let (table, note) = if roundtrip.passed() {
        (correspondence_table(&law, &conds), None)
    } else {
        let image = phi(lam.clone());
        let ext = check_conditions(q, t, &image, universe, budget)?;
        (correspondence_table(&law, &ext), Some("T̂ ≠ ΦΨ(T̂): the table is evaluated on ΦΨ(T̂)".to_string()))
    };
    let ext_side = axioms.iter().all(Check::passed) && find(&conds, "ext.0").passed();
    let law_side = law.iter().all(Check::passed) && roundtrip.passed();
    let theorem = Check::fact(
        "theorem",
        "lax extension ⇔ Ψ(T̂) lax law with ΦΨ(T̂) = T̂",
        ext_side == law_side,
        Some(format!("axioms 1-5, monotone and (0): {ext_side}; laws and roundtrip: {law_side}")),
    );
    Ok(CorrespondenceReport { family: fam.name(), roundtrip, conditions: conds, axioms, law, table, theorem, note })
}

fn law_fn(
    name: &str,
    f: impl Fn(&Quantaloid, &[Presheaf], &[usize]) -> usize + Send + Sync + 'static,
) -> Arc<dyn DistLaw> {
    Arc::new(FnLaw::new(name, move |q, _t, _base, z, tx| Presheaf {
        cod: 0,
        comps: tx.elems.iter().map(|u| f(q, z, u)).collect(),
    }))
}

fn fam_fn(
    name: &str,
    f: impl Fn(&Quantaloid, &dyn Relation, &[usize], &[usize]) -> usize + Send + Sync + 'static,
) -> Arc<dyn ExtensionFamily> {
    Arc::new(FnFamily::new(name, move |q, _t, phi, u, v| f(q, phi, u, v)))
}

fn delta_entry(q: &Quantaloid, phi: &dyn Relation, a: &[usize], b: &[usize]) -> usize {
    let l = q.hom(0, 0);
    l.meet_all(a.iter().map(|&x| l.join_all(b.iter().map(|&y| phi.get(x, y)))))
}

fn row_support(q: &Quantaloid, phi: &dyn Relation) -> usize {
    let l = q.hom(0, 0);
    l.meet_all((0..phi.src().len()).map(|x| l.join_all((0..phi.dst().len()).map(|y| phi.get(x, y)))))
}

fn is_bottom(q: &Quantaloid, phi: &dyn Relation) -> bool {
    let l = q.hom(0, 0);
    (0..phi.src().len()).all(|x| (0..phi.dst().len()).all(|y| phi.get(x, y) == l.bottom()))
}

fn lists_tensor(q: &Quantaloid, z: &[Presheaf], u: &[usize], pos: &[usize]) -> usize {
    u.iter().zip(pos).fold(q.unit(), |acc, (&x, &i)| q.tensor(acc, z[i].comps[x]))
}

/// Strictly increasing maps `[0, m) → [0, n)`.
fn embeddings(m: usize, n: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    (m - 1..n)
        .flat_map(|last| {
            embeddings(m - 1, last).into_iter().map(move |mut p| {
                p.push(last);
                p
            })
        })
        .collect()
}

/// A corpus member: a family on a monad over a one-object quantale, with the
/// checks it is expected to fail among `ext.0`, the lax axioms,
/// `ext.monotone` and the `law.*` checks of its `Ψ`.
pub struct CorpusEntry {
    pub monad: MonadKind,
    pub family: Arc<dyn ExtensionFamily>,
    pub breaks: &'static [&'static str],
}

/// The check names [`CorpusEntry::breaks`] ranges over.
pub fn corpus_profile(r: &CorrespondenceReport) -> Vec<String> {
    r.checks()
        .iter()
        .filter(|c| {
            c.failed()
                && (c.name == "ext.0"
                    || c.name == "ext.monotone"
                    || c.name.starts_with("lax.")
                    || c.name.starts_with("law."))
        })
        .map(|c| c.name.clone())
        .collect()
}

/// Valid lax extensions together with violators that each break a single
/// law-side or extension-side axiom, as far as one can be broken alone.
pub fn violator_corpus() -> Vec<CorpusEntry> {
    use MonadKind::*;
    let entry = |monad, family, breaks| CorpusEntry { monad, family, breaks };
    let mirror = fam_fn("mirror-delta", |q, phi, a, b| {
        let l = q.hom(0, 0);
        l.meet_all(b.iter().map(|&y| l.join_all(a.iter().map(|&x| phi.get(x, y)))))
    });
    let subsequence = law_fn("subsequence", |q, z, u| {
        q.hom(0, 0).join_all(embeddings(u.len(), z.len()).iter().map(|p| lists_tensor(q, z, u, p)))
    });
    let add_first = law_fn("add-first", |q, z, u| {
        let l = q.hom(0, 0);
        let s = &z[0];
        if u[0] == 0 { l.join_all(s.comps.iter().copied()) } else { s.comps[u[0]] }
    });
    let support = law_fn("support", |q, z, _u| q.hom(0, 0).join_all(z[0].comps.iter().copied()));
    let bottom = law_fn("bottom", |q, _z, _u| q.hom(0, 0).bottom());
    let small = law_fn("small", |q, z, a| {
        let l = q.hom(0, 0);
        if a.len() > 1 {
            return l.bottom();
        }
        l.meet_all(a.iter().map(|&x| l.join_all(z.iter().map(|s| s.comps[x]))))
    });
    let prefix = law_fn("prefix", |q, z, u| {
        if u.len() > z.len() {
            return q.hom(0, 0).bottom();
        }
        lists_tensor(q, z, u, &(0..u.len()).collect::<Vec<_>>())
    });
    let empty_to_full = fam_fn("empty-to-full", |q, phi, u, v| {
        if is_bottom(q, phi) { q.hom(0, 0).top() } else { phi.get(u[0], v[0]) }
    });
    let total = fam_fn("total-only", |q, phi, u, v| q.hom(0, 0).meet(row_support(q, phi), phi.get(u[0], v[0])));
    let card = fam_fn("delta-card", |q, phi, a, b| {
        if a.len() <= b.len() { delta_entry(q, phi, a, b) } else { q.hom(0, 0).bottom() }
    });
    let builtin = |name: &str, kind| -> Arc<dyn ExtensionFamily> {
        let q = crate::quantaloid::two();
        let t = Monad::standard(&q, kind, 2).expect("standard monad");
        Arc::new(builtin_extension(name, &q, &t).expect("builtin extension"))
    };
    vec![
        entry(Identity, builtin("identity", Identity), &[]),
        entry(Identity, builtin("top", Identity), &[]),
        entry(Powerset, builtin("delta", Powerset), &[]),
        entry(Powerset, builtin("egli-milner", Powerset), &[]),
        entry(Powerset, mirror, &[]),
        entry(List, builtin("tensor", List), &[]),
        entry(List, Arc::new(phi(subsequence)), &[]),
        entry(Identity, Arc::new(phi(add_first)), &["lax.3", "law.a"]),
        entry(Identity, Arc::new(phi(support)), &["lax.3", "law.c"]),
        entry(Identity, Arc::new(phi(bottom)), &["lax.1", "lax.2", "lax.4", "law.b", "law.d"]),
        entry(Powerset, Arc::new(phi(small)), &["lax.1", "lax.2", "law.b"]),
        entry(List, Arc::new(phi(prefix)), &["lax.5", "law.e"]),
        entry(Identity, Arc::new(row_join_family()), &["ext.0", "lax.3"]),
        entry(Identity, empty_to_full, &["ext.0", "ext.monotone"]),
        entry(Identity, total, &["ext.0", "lax.2", "lax.4"]),
        entry(Powerset, card, &["ext.0", "lax.1", "lax.5", "law.c", "law.e", "law.monotone"]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distlaw::{builtin_law, IdentityLaw};
    use crate::quantaloid::{diagonal, two};

    fn setup(kind: MonadKind) -> (Quantaloid, Monad, Universe, Budget) {
        let q = two();
        let t = Monad::standard(&q, kind, 2).unwrap();
        let u = Universe::sizes(&q, &[1, 2]);
        (q, t, u, Budget::default())
    }

    #[test]
    fn phi_of_builtin_laws_is_the_direct_formula() {
        for (kind, name) in [(MonadKind::Identity, "identity"), (MonadKind::List, "tensor"), (MonadKind::Powerset, "delta")] {
            let (q, t, u, b) = setup(kind);
            let law: Arc<dyn DistLaw> = builtin_law(name, &q, &t).unwrap().into();
            let direct = builtin_extension(name, &q, &t).unwrap();
            let c = check_same_family("same", "Φ(λ) = formula", &q, &t, &phi(law), &direct, &u, &b).unwrap();
            assert!(c.passed(), "{name}: {:?}", c.witness);
        }
    }

    #[test]
    fn psi_phi_is_identity_on_builtin_laws() {
        for (kind, name) in [(MonadKind::Identity, "identity"), (MonadKind::List, "tensor"), (MonadKind::Powerset, "delta")] {
            let (q, t, u, b) = setup(kind);
            let law: Arc<dyn DistLaw> = builtin_law(name, &q, &t).unwrap().into();
            assert!(check_psi_phi(&q, &t, law, &u, &b).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn psi_of_identity_extension_is_identity_law() {
        let (q, t, u, b) = setup(MonadKind::Identity);
        let ext: Arc<dyn ExtensionFamily> = Arc::new(builtin_extension("identity", &q, &t).unwrap());
        let c = check_same_law("same", "Ψ(1) = 1", &q, &t, &psi(ext, &b), &IdentityLaw, &u, &b).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn row_join_breaks_the_roundtrip_with_a_witness() {
        let (q, t, u, b) = setup(MonadKind::Identity);
        let c = check_phi_psi(&q, &t, Arc::new(row_join_family()), &u, &b).unwrap();
        assert!(c.failed());
        assert!(c.witness.is_some());
    }

    #[test]
    fn delta_extension_satisfies_every_condition() {
        let (q, t, u, b) = setup(MonadKind::Powerset);
        let fam = builtin_extension("delta", &q, &t).unwrap();
        for c in check_conditions(&q, &t, &fam, &u, &b).unwrap() {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
        for c in check_lax_extension(&q, &t, &fam, &u, &b).unwrap() {
            assert!(c.passed(), "{}", c.name);
        }
    }

    #[test]
    fn identity_extension_is_strict() {
        let (q, t, u, b) = setup(MonadKind::Identity);
        let fam = builtin_extension("identity", &q, &t).unwrap();
        for c in check_lax_extension(&q, &t, &fam, &u, &b).unwrap() {
            assert_eq!(c.status, Status::PassExhaustive, "{}", c.name);
            assert!(c.strict || c.name == "ext.monotone", "{}", c.name);
        }
    }

    #[test]
    fn prop64_holds_for_identity_and_tensor() {
        for (kind, name) in [(MonadKind::Identity, "identity"), (MonadKind::List, "tensor")] {
            let (q, t, u, b) = setup(kind);
            let fam = builtin_extension(name, &q, &t).unwrap();
            let cs = check_prop64(&q, &t, &fam, &u, &b).unwrap();
            assert!(cs.iter().all(Check::passed), "{name}");
        }
    }

    #[test]
    fn prop64_cases_fail_together() {
        // Φ of a law failing (b): 2' fails first, (i) and (ii) follow
        let (q, t, u, b) = setup(MonadKind::Powerset);
        let small = violator_corpus().into_iter().find(|e| e.family.name() == "Φ(small)").unwrap();
        let cs = check_prop64(&q, &t, &*small.family, &u, &b).unwrap();
        let get = |n: &str| cs.iter().find(|c| c.name == n).unwrap().clone();
        assert!(get("ext.3").passed());
        for n in ["prop64.i", "prop64.ii", "prop64.iii"] {
            assert!(get(n).failed(), "{n}");
        }
        assert!(get("prop64.equiv").passed());
    }

    #[test]
    fn failing_b_fails_both_unit_conditions() {
        let (q, t, u, b) = setup(MonadKind::Powerset);
        let small = violator_corpus().into_iter().find(|e| e.family.name() == "Φ(small)").unwrap();
        let cs = check_conditions(&q, &t, &*small.family, &u, &b).unwrap();
        for n in ["ext.2", "ext.2'"] {
            assert!(cs.iter().find(|c| c.name == n).unwrap().failed(), "{n}");
        }
    }

    #[test]
    fn partial_list_extension_over_d2() {
        // x̂ is related to ŷ iff both lists live in the ⊤-part, have equal
        // length and are related pointwise
        let q = diagonal(&two()).unwrap();
        let t = Monad::standard(&q, MonadKind::List, 2).unwrap();
        let u = Universe::sizes(&q, &[1, 2]);
        let b = Budget::default();
        let law: Arc<dyn DistLaw> = builtin_law("tensor", &q, &t).unwrap().into();
        let oracle = FnFamily::new("partial", |q, t, phi, x, y| {
            let (a, c) = (t.array_of(q, phi.src(), x), t.array_of(q, phi.dst(), y));
            let inside = x.iter().all(|&i| phi.src()[i] == 1) && y.iter().all(|&j| phi.dst()[j] == 1);
            let related = x.len() == y.len() && x.iter().zip(y).all(|(&i, &j)| phi.get(i, j) == q.top(1, 1));
            if inside && related { q.top(a, c) } else { q.hom(a, c).bottom() }
        });
        let c = check_same_family("same", "Φ(⊗) on D2", &q, &t, &phi(law.clone()), &oracle, &u, &b).unwrap();
        assert!(c.passed(), "{:?}", c.witness);
        for c in check_lax_extension(&q, &t, &phi(law), &u, &b).unwrap() {
            assert!(c.passed(), "{}", c.name);
        }
    }

    #[test]
    fn builtin_extensions_refuse_mismatched_monads() {
        let q = two();
        let p = Monad::standard(&q, MonadKind::Powerset, 2).unwrap();
        assert!(builtin_extension("tensor", &q, &p).is_err());
        assert!(builtin_extension("identity", &q, &p).is_err());
        assert!(builtin_extension("nope", &q, &p).is_err());
    }

    #[test]
    fn embeddings_count_binomially() {
        assert_eq!(embeddings(0, 2).len(), 1);
        assert_eq!(embeddings(2, 3).len(), 3);
        assert_eq!(embeddings(3, 2).len(), 0);
    }
}
