//! Algebraic functors, change-of-base functors and the embedding `E_V` of
//! `DV`-categories into `V`-categories over `V`.

use std::sync::Arc;

use crate::distlaw::{builtin_law, DistLaw, Universe};
use crate::error::{Error, Result};
use crate::extension::{phi, ExtHarness};
use crate::laxalg::{rel_tally, LaxAlgebra, QCategory, TQCategory};
use crate::monads::{Budget, Monad, MonadKind, TSet};
use crate::presheaf::{
    bind, direct_image, mate, presheaf_leq, show_presheaf, theta_transform, yoneda, Presheaf, PresheafSet,
};
use crate::qrel::{all_maps, cograph, compose, QRel, Relation};
use crate::quantaloid::{globalizations, LaxHom, Quantaloid};
use crate::report::{Check, Tally};
use crate::util::rng_for;

/// `h_X(u, v)` from the base array, `u ∈ TX` with array `ru` and `v ∈ SX`
/// with array `rv`.
pub type HEntry = dyn Fn(&Quantaloid, &[usize], &[usize], usize, &[usize], usize) -> usize + Send + Sync;

/// A family `h_X: TX ⇸ SX`, given by its entries.
pub struct AlgebraicMorphism {
    name: String,
    h: Box<HEntry>,
}

impl AlgebraicMorphism {
    pub fn new(
        name: impl Into<String>,
        h: impl Fn(&Quantaloid, &[usize], &[usize], usize, &[usize], usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        AlgebraicMorphism { name: name.into(), h: Box::new(h) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `h_X` on enumerated `TX` and `SX`.
    pub fn relation(&self, q: &Quantaloid, base: &[usize], tx: &TSet, sx: &TSet) -> QRel {
        QRel::from_fn(&tx.array, &sx.array, |i, j| (self.h)(q, base, &tx.elems[i], tx.array[i], &sx.elems[j], sx.array[j]))
    }

    /// `τ_X = ⃖h_X: SX → P(TX)`.
    pub fn tau(&self, q: &Quantaloid, base: &[usize], tx: &TSet, sx: &TSet) -> Vec<Presheaf> {
        mate(&self.relation(q, base, tx, sx))
    }
}

/// `h_X = e_X^∘: TX ⇸ X`, into the identity monad.
pub fn counit_morphism() -> AlgebraicMorphism {
    AlgebraicMorphism::new("counit", |q, _base, u, ru, v, rv| if u == v { q.id(ru) } else { q.bot(ru, rv) })
}

/// `h_X = 1_{TX}`, from a monad to itself.
pub fn identity_morphism() -> AlgebraicMorphism {
    AlgebraicMorphism::new("identity", |q, _base, u, ru, v, rv| if u == v { q.id(ru) } else { q.bot(ru, rv) })
}

/// `h_X(ẋ, A) = k` iff `x ∈ A`, from principal ultrafilters to subsets.
pub fn ultrafilter_membership() -> AlgebraicMorphism {
    AlgebraicMorphism::new("membership", |q, _base, u, ru, v, rv| {
        if ru == rv && v.contains(&u[0]) {
            q.id(ru)
        } else {
            q.bot(ru, rv)
        }
    })
}

/// A monad with the law it distributes by.
#[derive(Clone)]
pub struct Side {
    pub t: Monad,
    pub law: Arc<dyn DistLaw>,
}

impl Side {
    pub fn builtin(q: &Quantaloid, kind: MonadKind, law: &str, list_len: usize) -> Result<Self> {
        let t = Monad::standard(q, kind, list_len)?;
        let law = builtin_law(law, q, &t)?.into();
        Ok(Side { t, law })
    }
}

fn closed(side: &Side) -> Result<()> {
    if side.t.kind == MonadKind::List {
        return Err(Error::Refused("bounded list universes are not closed under multiplication".into()));
    }
    Ok(())
}

fn index_map(t: &Monad, elems: &[Vec<usize>], into: &TSet, f: impl Fn(&[usize]) -> Vec<usize>) -> Result<Vec<usize>> {
    elems
        .iter()
        .map(|u| {
            let v = t.normalize(f(u));
            into.index_of(&v).ok_or_else(|| Error::Refused(format!("{v:?} lies outside the enumerated universe")))
        })
        .collect()
}

struct Level {
    tx: TSet,
    sx: TSet,
    h: QRel,
    tau: Vec<Presheaf>,
}

struct MorphismCtx<'a> {
    q: &'a Quantaloid,
    src: &'a Side,
    dst: &'a Side,
    h: &'a AlgebraicMorphism,
    budget: &'a Budget,
}

impl MorphismCtx<'_> {
    fn level(&self, base: &[usize]) -> Result<Level> {
        let tx = self.src.t.tset(self.q, base, self.budget.domain)?;
        let sx = self.dst.t.tset(self.q, base, self.budget.domain)?;
        let h = self.h.relation(self.q, base, &tx, &sx);
        let tau = mate(&h);
        Ok(Level { tx, sx, h, tau })
    }

    fn pt(&self, base: &[usize], p: &Presheaf) -> String {
        show_presheaf(self.q, base, p)
    }
}

/// Conditions a–e in relation form and a'–e' in map form, over the
/// universe. `T̂ = Φ(λ)` and `Ŝ = Φ(κ)`.
pub fn check_algebraic_morphism(
    q: &Quantaloid,
    src: &Side,
    dst: &Side,
    h: &AlgebraicMorphism,
    universe: &Universe,
    budget: &Budget,
) -> Result<Vec<Check>> {
    closed(src)?;
    closed(dst)?;
    let ctx = MorphismCtx { q, src, dst, h, budget };
    let that = phi(src.law.clone());
    let shat = phi(dst.law.clone());
    let ht = ExtHarness::new(q, &src.t, &that, budget);
    let hs = ExtHarness::new(q, &dst.t, &shat, budget);
    let (t, s) = (&src.t, &dst.t);
    let mut rng = rng_for(budget.seed, &format!("am/{}/{}/{}/{}", h.name(), t.name(), s.name(), q.name()));

    let mut a = Tally::new("am.a", "a. h_X∘(Tf)^∘ ≤ (Sf)^∘∘h_Y");
    let mut a1 = Tally::new("am.a'", "a'. (Tf)_!·τ_X ≤ τ_Y·Sf");
    let mut b = Tally::new("am.b", "b. e_X^∘ ≤ d_X^∘∘h_X");
    let mut b1 = Tally::new("am.b'", "b'. y_{TX}·e_X ≤ τ_X·d_X");
    let mut c = Tally::new("am.c", "c. Ŝh_X∘h_{TX}∘m_X^∘ ≤ n_X^∘∘h_X");
    let mut c1 = Tally::new("am.c'", "c'. (m_X)_!·s_{TTX}·(τ_{TX})_!·κ_{TX}·Sτ_X ≤ τ_X·n_X");
    let mut d = Tally::new("am.d", "d. Ŝφ∘h_X ≤ h_Y∘T̂φ");
    let mut d1 = Tally::new("am.d'", "d'. s_{TX}·(τ_X)_!·κ_X·Sg ≤ s_{TX}·(λ_X)_!·(Tg)_!·τ_Y");
    let mut e = Tally::new("am.e", "e. Ŝ(h_X∘α) ≤ Ŝh_X∘Ŝα");
    let mut e1 = Tally::new("am.e'", "e'. κ_X·Ss_X·S(p_!)·Sτ_X ≤ s_{SX}·(κ_X)_!·(Sp)_!·κ_{TX}·Sτ_X");

    for xa in &universe.arrays {
        let lx = ctx.level(xa)?;
        let n = xa.len();

        // b and b'
        let e_x = index_map(t, &(0..n).map(|x| vec![x]).collect::<Vec<_>>(), &lx.tx, |u| u.to_vec())?;
        let d_x = index_map(s, &(0..n).map(|x| vec![x]).collect::<Vec<_>>(), &lx.sx, |u| u.to_vec())?;
        let lhs = cograph(q, &e_x, xa, &lx.tx.array)?;
        let rhs = compose(q, &cograph(q, &d_x, xa, &lx.sx.array)?, &lx.h)?;
        rel_tally(q, &mut b, &lhs, &rhs, |u, x| format!("X = {xa:?}, u = {:?}, x = {x}", lx.tx.elems[u]));
        for x in 0..n {
            let y = yoneda(q, &lx.tx.array, e_x[x]);
            let r = &lx.tau[d_x[x]];
            b1.see(presheaf_leq(q, &lx.tx.array, &y, r), &y == r, || format!("X = {xa:?}, x = {x}"));
        }

        // a and a'
        for ya in &universe.arrays {
            let ly = ctx.level(ya)?;
            for f in all_maps(xa, ya, budget.domain)? {
                let tf = index_map(t, &lx.tx.elems, &ly.tx, |u| t.fmap_vec(u, &f))?;
                let sf = index_map(s, &lx.sx.elems, &ly.sx, |v| s.fmap_vec(v, &f))?;
                let lhs = compose(q, &lx.h, &cograph(q, &tf, &lx.tx.array, &ly.tx.array)?)?;
                let rhs = compose(q, &cograph(q, &sf, &lx.sx.array, &ly.sx.array)?, &ly.h)?;
                rel_tally(q, &mut a, &lhs, &rhs, |u, v| {
                    format!("f = {f:?}, u = {:?}, v = {:?}", ly.tx.elems[u], lx.sx.elems[v])
                });
                for v in 0..lx.sx.len() {
                    let l = direct_image(q, &tf, &ly.tx.array, &lx.tau[v]);
                    let r = &ly.tau[sf[v]];
                    a1.see(presheaf_leq(q, &ly.tx.array, &l, r), &l == r, || {
                        format!("f = {f:?}, v = {:?}: {} vs {}", lx.sx.elems[v], ctx.pt(&ly.tx.array, &l), ctx.pt(&ly.tx.array, r))
                    });
                }
            }
        }

        // c and c'
        let ttx = t.tset(q, &lx.tx.array, budget.domain)?;
        let stx = s.tset(q, &lx.tx.array, budget.domain)?;
        let ssx = s.tset(q, &lx.sx.array, budget.domain)?;
        let m = index_map(t, &ttx.elems, &lx.tx, |w| t.flatten(&w.iter().map(|&i| lx.tx.elems[i].clone()).collect::<Vec<_>>()))?;
        let nn = index_map(s, &ssx.elems, &lx.sx, |w| s.flatten(&w.iter().map(|&i| lx.sx.elems[i].clone()).collect::<Vec<_>>()))?;
        let h_tx = h.relation(q, &lx.tx.array, &ttx, &stx);
        let tau_tx = mate(&h_tx);
        let sh = hs.ext(&lx.h)?;
        let lhs = compose(q, &*sh, &compose(q, &h_tx, &cograph(q, &m, &ttx.array, &lx.tx.array)?)?)?;
        let rhs = compose(q, &cograph(q, &nn, &ssx.array, &lx.sx.array)?, &lx.h)?;
        rel_tally(q, &mut c, &lhs, &rhs, |u, w| format!("X = {xa:?}, u = {:?}, W = {:?}", lx.tx.elems[u], ssx.elems[w]));
        for (wi, w) in ssx.elems.iter().enumerate() {
            let st = s.map(w, |&j| lx.tau[j].clone());
            let rho = dst.law.eval(q, s, &lx.tx.array, &st, &stx);
            let l = direct_image(q, &m, &lx.tx.array, &bind(q, &ttx.array, &tau_tx, &rho));
            let r = &lx.tau[nn[wi]];
            c1.see(presheaf_leq(q, &lx.tx.array, &l, r), &l == r, || {
                format!("X = {xa:?}, W = {w:?}: {} vs {}", ctx.pt(&lx.tx.array, &l), ctx.pt(&lx.tx.array, r))
            });
        }

        // d and d'
        for ya in &universe.arrays {
            let ly = ctx.level(ya)?;
            let (rels, sampled) = ht.rels(xa, ya, &mut rng);
            if sampled {
                d.mark_sampled();
                d1.mark_sampled();
            }
            for r in &rels {
                let lhs = compose(q, &*hs.ext(r)?, &lx.h)?;
                let rhs = compose(q, &ly.h, &*ht.ext(r)?)?;
                rel_tally(q, &mut d, &lhs, &rhs, |u, v| {
                    format!("φ = {:?}, u = {:?}, v = {:?}", r.entries, lx.tx.elems[u], ly.sx.elems[v])
                });
                let g = mate(r);
                let lam_cols: Vec<Presheaf> = ly
                    .tx
                    .elems
                    .iter()
                    .map(|u| src.law.eval(q, t, xa, &t.map(u, |&y| g[y].clone()), &lx.tx))
                    .collect();
                for (vi, v) in ly.sx.elems.iter().enumerate() {
                    let k = dst.law.eval(q, s, xa, &s.map(v, |&y| g[y].clone()), &lx.sx);
                    let l = bind(q, &lx.tx.array, &lx.tau, &k);
                    let rr = bind(q, &lx.tx.array, &lam_cols, &ly.tau[vi]);
                    d1.see(presheaf_leq(q, &lx.tx.array, &l, &rr), l == rr, || {
                        format!("φ = {:?}, v = {v:?}: {} vs {}", r.entries, ctx.pt(&lx.tx.array, &l), ctx.pt(&lx.tx.array, &rr))
                    });
                }
            }
        }

        // e and e'
        let (alphas, sampled) = ht.rels(xa, &lx.tx.array, &mut rng);
        if sampled {
            e.mark_sampled();
            e1.mark_sampled();
        }
        let sh_x = hs.ext(&lx.h)?;
        for al in &alphas {
            let lhs = hs.ext(&compose(q, &lx.h, al)?)?;
            let rhs = compose(q, &*sh_x, &*hs.ext(al)?)?;
            rel_tally(q, &mut e, &lhs, &rhs, |v, w| format!("α = {:?}, v = {:?}, W = {:?}", al.entries, lx.sx.elems[v], ssx.elems[w]));
            let p = mate(al);
            let kp: Vec<Presheaf> =
                stx.elems.iter().map(|uu| dst.law.eval(q, s, xa, &s.map(uu, |&i| p[i].clone()), &lx.sx)).collect();
            for w in &ssx.elems {
                let st = s.map(w, |&j| lx.tau[j].clone());
                let inner = s.map(&st, |sigma| bind(q, xa, &p, sigma));
                let l = dst.law.eval(q, s, xa, &inner, &lx.sx);
                let rho = dst.law.eval(q, s, &lx.tx.array, &st, &stx);
                let r = bind(q, &lx.sx.array, &kp, &rho);
                e1.see(presheaf_leq(q, &lx.sx.array, &l, &r), l == r, || {
                    format!("α = {:?}, W = {w:?}: {} vs {}", al.entries, ctx.pt(&lx.sx.array, &l), ctx.pt(&lx.sx.array, &r))
                });
            }
        }
    }
    Ok([a, b, c, d, e, a1, b1, c1, d1, e1].into_iter().map(Tally::finish).collect())
}

/// `A_h(X, α) = (X, h_X∘α)`.
pub fn algebraic_functor(
    q: &Quantaloid,
    dst: &Side,
    h: &AlgebraicMorphism,
    cat: &TQCategory,
    budget: &Budget,
) -> Result<TQCategory> {
    let sx = dst.t.tset(q, &cat.base, budget.domain)?;
    let alpha = compose(q, &h.relation(q, &cat.base, &cat.tx, &sx), &cat.alpha)?;
    Ok(TQCategory { base: cat.base.clone(), tx: sx, alpha })
}

/// `A_τ(X, p) = (X, s_X·p_!·τ_X)`.
pub fn algebraic_functor_alg(
    q: &Quantaloid,
    dst: &Side,
    h: &AlgebraicMorphism,
    alg: &LaxAlgebra,
    budget: &Budget,
) -> Result<LaxAlgebra> {
    let sx = dst.t.tset(q, &alg.base, budget.domain)?;
    let tau = h.tau(q, &alg.base, &alg.tx, &sx);
    let p = tau.iter().map(|t| bind(q, &alg.base, &alg.p, t)).collect();
    LaxAlgebra::new(q, &dst.t, &alg.base, p, budget)
}

/// A lax homomorphism `ϑ: Q → R` with the monads and laws on both sides.
pub struct ChangeOfBase {
    pub theta: LaxHom,
    pub q: Quantaloid,
    pub r: Quantaloid,
    pub src: Side,
    pub dst: Side,
}

/// The three change-of-base homomorphisms attached to `DV`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Globalization {
    /// `ι: V → DV`
    Iota,
    /// `δ: DV → V`
    Delta,
    /// `γ: DV → V`
    Gamma,
}

impl Globalization {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "iota" => Some(Globalization::Iota),
            "delta" => Some(Globalization::Delta),
            "gamma" => Some(Globalization::Gamma),
            _ => None,
        }
    }
}

impl ChangeOfBase {
    /// `ι`, `δ` or `γ` for a diagonal quantaloid, with the identity monad
    /// and law or the list monad and `⊗`.
    pub fn globalization(dv: &Quantaloid, which: Globalization, kind: MonadKind, list_len: usize) -> Result<Self> {
        let info = dv.diagonal_info().ok_or_else(|| Error::Refused(format!("{} is not a diagonal quantaloid", dv.name())))?;
        let v = info.base.clone();
        let g = globalizations(dv)?;
        let law = match kind {
            MonadKind::Identity => "identity",
            MonadKind::List => "tensor",
            _ => return Err(Error::Refused("change of base along DV needs the identity or list monad".into())),
        };
        let (theta, q, r) = match which {
            Globalization::Iota => (g.iota, v, dv.clone()),
            Globalization::Delta => (g.delta, dv.clone(), v),
            Globalization::Gamma => (g.gamma, dv.clone(), v),
        };
        let src = Side::builtin(&q, kind, law, list_len)?;
        let dst = Side::builtin(&r, kind, law, list_len)?;
        Ok(ChangeOfBase { theta, q, r, src, dst })
    }

    /// `B_{ϑ₀}X`.
    pub fn b0(&self, base: &[usize]) -> Vec<usize> {
        base.iter().map(|&a| self.theta.obj(a)).collect()
    }

    /// `B̃_ϑφ(x, y) = ϑ(φ(x, y))`.
    pub fn b_rel(&self, phi: &dyn Relation) -> QRel {
        let (src, dst) = (phi.src(), phi.dst());
        QRel::from_fn(&self.b0(src), &self.b0(dst), |x, y| self.theta.apply(src[x], dst[y], phi.get(x, y)))
    }

    /// `B_{ϑ₀}T = TB_{ϑ₀}` on arrays of the enumerated `TX`.
    pub fn check_arrays(&self, universe: &Universe, budget: &Budget) -> Result<Check> {
        let mut tally = Tally::new("cob.arrays", "B_{ϑ₀}T = TB_{ϑ₀}");
        for xa in &universe.arrays {
            let tq = self.src.t.tset(&self.q, xa, budget.domain)?;
            let tr = self.dst.t.tset(&self.r, &self.b0(xa), budget.domain)?;
            for (i, u) in tq.elems.iter().enumerate() {
                let j = tr.index_of(u);
                let ok = j.is_some_and(|j| tr.array[j] == self.theta.obj(tq.array[i]));
                tally.same(ok, || format!("X = {xa:?}, u = {u:?}"));
            }
        }
        Ok(tally.finish())
    }

    /// (★) `ŤB̃_ϑφ ≤ B̃_ϑT̂φ` for all relations between universe sets.
    pub fn check_star(&self, universe: &Universe, budget: &Budget) -> Result<Check> {
        let that = phi(self.src.law.clone());
        let tcheck = phi(self.dst.law.clone());
        let hq = ExtHarness::new(&self.q, &self.src.t, &that, budget);
        let hr = ExtHarness::new(&self.r, &self.dst.t, &tcheck, budget);
        let mut rng = rng_for(budget.seed, &format!("cob.star/{}/{}", self.q.name(), self.r.name()));
        let mut tally = Tally::new("cob.star", "(★) ŤB̃_ϑφ ≤ B̃_ϑT̂φ");
        for xa in &universe.arrays {
            for ya in &universe.arrays {
                let (rels, sampled) = hq.rels(xa, ya, &mut rng);
                if sampled {
                    tally.mark_sampled();
                }
                for r in &rels {
                    let lhs = hr.ext(&self.b_rel(r))?;
                    let rhs = self.b_rel(hq.ext(r)?.as_ref());
                    rel_tally(&self.r, &mut tally, &lhs, &rhs, |u, v| format!("φ = {:?} at ({u}, {v})", r.entries));
                }
            }
        }
        tally.domain("compatible on universe");
        Ok(tally.finish())
    }

    /// (★★) `κB_{ϑ₀}·Tϑ ≤ ϑT·B_{ϑ₀}λ` on `TPX` for universe sets `X`.
    pub fn check_star_laws(&self, universe: &Universe, budget: &Budget) -> Result<Check> {
        let (q, r) = (&self.q, &self.r);
        let (tq, tr) = (&self.src.t, &self.dst.t);
        let mut rng = rng_for(budget.seed, &format!("cob.star2/{}/{}", q.name(), r.name()));
        let mut tally = Tally::new("cob.star2", "(★★) κB_{ϑ₀}·Tϑ ≤ ϑT·B_{ϑ₀}λ");
        for xa in &universe.arrays {
            let bx = self.b0(xa);
            let txq = tq.tset(q, xa, budget.domain)?;
            let txr = tr.tset(r, &bx, budget.domain)?;
            let px = PresheafSet::build(q, xa, budget.px)?;
            let points: Vec<Vec<Presheaf>> = match tq.enumerate_checked(px.len(), budget.domain) {
                Some(all) => all.iter().map(|w| w.iter().map(|&i| px.get(i).clone()).collect()).collect(),
                None => {
                    tally.mark_sampled();
                    (0..budget.samples)
                        .map(|_| tq.sample(px.len(), &mut rng, budget.max_set).iter().map(|&i| px.get(i).clone()).collect())
                        .collect()
                }
            };
            for z in &points {
                let bz = tr.map(z, |s| theta_transform(&self.theta, xa, s));
                let lhs = self.dst.law.eval(r, tr, &bx, &bz, &txr);
                let rhs = theta_transform(&self.theta, &txq.array, &self.src.law.eval(q, tq, xa, z, &txq));
                tally.see(presheaf_leq(r, &txr.array, &lhs, &rhs), lhs == rhs, || {
                    format!("X = {xa:?}: {} vs {}", show_presheaf(r, &txr.array, &lhs), show_presheaf(r, &txr.array, &rhs))
                });
            }
        }
        Ok(tally.finish())
    }

    /// `B_ϑ(X, α) = (B_{ϑ₀}X, B̃_ϑα)`, refused unless the arrays commute and
    /// (★) holds on the universe.
    pub fn apply(&self, cat: &TQCategory, universe: &Universe, budget: &Budget) -> Result<TQCategory> {
        for c in [self.check_arrays(universe, budget)?, self.check_star(universe, budget)?] {
            if c.failed() {
                return Err(Error::Refused(format!("{} fails: {}", c.label, c.witness.unwrap_or_default())));
            }
        }
        let base = self.b0(&cat.base);
        let tx = self.dst.t.tset(&self.r, &base, budget.domain)?;
        if tx.elems != cat.tx.elems {
            return Err(Error::Refused("the carriers of TX differ after change of base".into()));
        }
        Ok(TQCategory { base, tx, alpha: self.b_rel(&cat.alpha) })
    }

    /// `(X, p) ↦ (B_{ϑ₀}X, ϑ_X·B_{ϑ₀}p)`.
    pub fn apply_alg(&self, alg: &LaxAlgebra, budget: &Budget) -> Result<LaxAlgebra> {
        let p = alg.p.iter().map(|s| theta_transform(&self.theta, &alg.base, s)).collect();
        LaxAlgebra::new(&self.r, &self.dst.t, &self.b0(&alg.base), p, budget)
    }
}

/// `B_ϑ(X, a) = (X, ϑa)` for `Q`-categories.
pub fn change_of_base_qcat(theta: &LaxHom, c: &QCategory) -> QCategory {
    let base: Vec<usize> = c.base.iter().map(|&a| theta.obj(a)).collect();
    let a = QRel::from_fn(&base, &base, |x, y| theta.apply(c.base[x], c.base[y], c.a.get(x, y)));
    QCategory { base, a }
}

/// A `V`-category `(X, d)` with a norm `t: X → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormedCategory {
    pub d: QRel,
    pub t: Vec<usize>,
}

fn base_of(dv: &Quantaloid) -> Result<&Quantaloid> {
    Ok(&dv
        .diagonal_info()
        .ok_or_else(|| Error::Refused(format!("{} is not the diagonal of a divisible quantale", dv.name())))?
        .base)
}

/// `E_V(X, a) = (X, d)` with `d(x,y) = a(x,y)↙a(x,x)` and `tx = a(x,x)`.
pub fn ev_embedding(dv: &Quantaloid, c: &QCategory) -> Result<NormedCategory> {
    let v = base_of(dv)?;
    let info = dv.diagonal_info().expect("diagonal");
    let n = c.base.len();
    let val = |x: usize, y: usize| info.elem(c.base[x], c.base[y], c.a.get(x, y));
    let d = QRel::from_fn(&vec![0; n], &vec![0; n], |x, y| v.rlift(0, 0, 0, val(x, y), val(x, x)));
    Ok(NormedCategory { d, t: (0..n).map(|x| val(x, x)).collect() })
}

/// The reflector `a(x,y) = d(x,y)⊗tx`, refused when `t` is not a
/// `V`-functor into `(V, h)`.
pub fn reflector(dv: &Quantaloid, nc: &NormedCategory) -> Result<QCategory> {
    let v = base_of(dv)?;
    let info = dv.diagonal_info().expect("diagonal");
    let base = nc.t.clone();
    let n = base.len();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let val = v.tensor(nc.d.get(x, y), nc.t[x]);
            let e = info.lookup(base[x], base[y], val).ok_or_else(|| {
                Error::Refused(format!("t is not a V-functor: d({x},{y})⊗t({x}) is not below t({y})"))
            })?;
            entries.push(e);
        }
    }
    Ok(QCategory { base: base.clone(), a: QRel { src: base.clone(), dst: base, entries } })
}

/// The `V`-category laws for `d` and `d(x,y) ≤ h(tx,ty) = ty↙tx`.
pub fn check_normed(dv: &Quantaloid, nc: &NormedCategory) -> Result<Vec<Check>> {
    let v = base_of(dv)?;
    let n = nc.t.len();
    let mut out = crate::laxalg::check_qcategory(v, &QCategory { base: vec![0; n], a: nc.d.clone() });
    let mut norm = Tally::new("ev.norm", "d(x,y) ≤ h(tx,ty) = ty↙tx");
    for x in 0..n {
        for y in 0..n {
            let h = v.rlift(0, 0, 0, nc.t[y], nc.t[x]);
            let dxy = nc.d.get(x, y);
            norm.see(v.lattice().leq(dxy, h), dxy == h, || format!("x = {x}, y = {y}"));
        }
    }
    out.push(norm.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laxalg::{algebra_to_category, category_to_algebra, check_algebra, check_category, check_qcategory, enumerate_algebras};
    use crate::quantaloid::{add_chain, diagonal, two};

    fn preorder(n: usize, rel: &[(usize, usize)]) -> QCategory {
        let base = vec![0; n];
        QCategory { base: base.clone(), a: QRel::from_fn(&base, &base, |x, y| (x == y || rel.contains(&(x, y))) as usize) }
    }

    #[test]
    fn counit_morphism_from_powerset() {
        let q = two();
        let b = Budget::default();
        let src = Side::builtin(&q, MonadKind::Powerset, "delta", 0).unwrap();
        let dst = Side::builtin(&q, MonadKind::Identity, "identity", 0).unwrap();
        let cs = check_algebraic_morphism(&q, &src, &dst, &counit_morphism(), &Universe::sizes(&q, &[1, 2]), &b).unwrap();
        for c in &cs {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn membership_from_ultrafilters() {
        let q = two();
        let b = Budget::default();
        let src = Side::builtin(&q, MonadKind::Ultrafilter, "beta", 0).unwrap();
        let dst = Side::builtin(&q, MonadKind::Powerset, "delta", 0).unwrap();
        let cs = check_algebraic_morphism(&q, &src, &dst, &ultrafilter_membership(), &Universe::sizes(&q, &[1, 2]), &b).unwrap();
        for c in &cs {
            assert!(c.passed(), "{}: {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn singleton_membership_breaks_d() {
        let q = two();
        let b = Budget::default();
        let src = Side::builtin(&q, MonadKind::Ultrafilter, "beta", 0).unwrap();
        let dst = Side::builtin(&q, MonadKind::Powerset, "delta", 0).unwrap();
        let h = AlgebraicMorphism::new("singleton", |q, _b, u, ru, v, rv| if v == u { q.id(ru) } else { q.bot(ru, rv) });
        let cs = check_algebraic_morphism(&q, &src, &dst, &h, &Universe::sizes(&q, &[1, 2]), &b).unwrap();
        let get = |n: &str| cs.iter().find(|c| c.name == n).unwrap();
        assert!(get("am.d").failed());
        assert!(get("am.d").witness.as_ref().unwrap().contains("φ"));
        for (rel, map) in [("am.a", "am.a'"), ("am.b", "am.b'"), ("am.c", "am.c'"), ("am.d", "am.d'"), ("am.e", "am.e'")] {
            assert_eq!(get(rel).passed(), get(map).passed(), "{rel}");
        }
    }

    #[test]
    fn corollary_functor_lands_in_qcat() {
        let q = two();
        let b = Budget::default();
        let src = Side::builtin(&q, MonadKind::Powerset, "delta", 0).unwrap();
        let dst = Side::builtin(&q, MonadKind::Identity, "identity", 0).unwrap();
        for alg in enumerate_algebras(&q, &src.t, src.law.as_ref(), &[0, 0], &b).unwrap() {
            let by_map = algebraic_functor_alg(&q, &dst, &counit_morphism(), &alg, &b).unwrap();
            let cat = algebra_to_category(&q, &alg, &b).unwrap();
            let by_rel = algebraic_functor(&q, &dst, &counit_morphism(), &cat, &b).unwrap();
            assert_eq!(category_to_algebra(&by_rel).p, by_map.p);
            // p·e_X
            for (x, s) in by_map.p.iter().enumerate() {
                assert_eq!(Some(s), alg.at(&[x]));
            }
            assert!(check_qcategory(&q, &QCategory::from_algebra(&by_map).unwrap()).iter().all(Check::passed));
        }
    }

    #[test]
    fn identity_morphism_is_identity_functor() {
        let q = two();
        let b = Budget::default();
        let side = Side::builtin(&q, MonadKind::Identity, "identity", 0).unwrap();
        let alg = preorder(3, &[(0, 1)]).to_algebra(&q, &b).unwrap();
        assert_eq!(algebraic_functor_alg(&q, &side, &identity_morphism(), &alg, &b).unwrap().p, alg.p);
    }

    #[test]
    fn iota_embeds_preorders_as_total_partial_orders() {
        let d2 = diagonal(&two()).unwrap();
        let b = Budget::default();
        let cob = ChangeOfBase::globalization(&d2, Globalization::Iota, MonadKind::Identity, 0).unwrap();
        let u = Universe::sizes(&cob.q, &[1, 2]);
        let c = preorder(2, &[(0, 1)]);
        let cat = algebra_to_category(&cob.q, &c.to_algebra(&cob.q, &b).unwrap(), &b).unwrap();
        let out = cob.apply(&cat, &u, &b).unwrap();
        assert_eq!(out.base, vec![1, 1]);
        let a = QCategory::from_algebra(&category_to_algebra(&out)).unwrap().a;
        assert_eq!(a.entries, c.a.entries);
        let fam = phi(cob.dst.law.clone());
        assert!(check_category(&cob.r, &cob.dst.t, &fam, &out, &b).unwrap().iter().all(Check::passed));
    }

    #[test]
    fn gamma_subtracts_the_self_distance() {
        let v = add_chain(3);
        let dv = diagonal(&v).unwrap();
        let info = dv.diagonal_info().unwrap();
        let b = Budget::default();
        let inst = crate::laxalg::build_example(
            &crate::laxalg::ExampleSpec::PartialMetricPlus { n: 3, d: vec![vec![0, 1], vec![2, 0]] },
            &b,
        )
        .unwrap();
        let c = QCategory::from_algebra(&inst.alg).unwrap();
        let g = globalizations(&dv).unwrap().gamma;
        let out = change_of_base_qcat(&g, &c);
        let n = c.base.len();
        for x in 0..n {
            for y in 0..n {
                let axy = info.elem(c.base[x], c.base[y], c.a.get(x, y));
                let axx = info.elem(c.base[x], c.base[x], c.a.get(x, x));
                assert_eq!(out.a.get(x, y), axy.saturating_sub(axx));
            }
        }
        assert!(check_qcategory(&v, &out).iter().all(Check::passed));
        assert_eq!(out.a, ev_embedding(&dv, &c).unwrap().d);
    }

    #[test]
    fn delta_on_bounded_lists() {
        let v = add_chain(2);
        let dv = diagonal(&v).unwrap();
        let b = Budget::default();
        let cob = ChangeOfBase::globalization(&dv, Globalization::Delta, MonadKind::List, 2).unwrap();
        let u = Universe::sizes(&dv, &[1]);
        assert!(cob.check_arrays(&u, &b).unwrap().passed());
        assert!(cob.check_star(&u, &b).unwrap().passed());
        assert!(cob.check_star_laws(&u, &b).unwrap().passed());
        let info = dv.diagonal_info().unwrap();
        let fam = phi(cob.dst.law.clone());
        let mut seen = 0;
        for base in [vec![0], vec![1], vec![2]] {
            for alg in enumerate_algebras(&dv, &cob.src.t, cob.src.law.as_ref(), &base, &b).unwrap() {
                let cat = algebra_to_category(&dv, &alg, &b).unwrap();
                let out = cob.apply(&cat, &u, &b).unwrap();
                for (ui, w) in cat.tx.elems.iter().enumerate() {
                    let axy = info.elem(base[0], cat.tx.array[ui], cat.alpha.get(0, ui));
                    let selfs: usize = w.iter().map(|&x| base[x]).sum();
                    assert_eq!(out.alpha.get(0, ui), axy.min(2).saturating_sub(selfs.min(2)), "{w:?}");
                }
                assert!(check_category(&v, &cob.dst.t, &fam, &out, &b).unwrap().iter().all(Check::passed));
                seen += 1;
            }
        }
        assert!(seen > 3);
    }

    #[test]
    fn d2_embedding_reads_subset_order_and_membership() {
        let d2 = diagonal(&two()).unwrap();
        // A = {0, 1}, 0 ≤ 1, and 2 ∉ A
        let base = vec![1, 1, 0];
        let a = QRel::from_fn(&base, &base, |x, y| (x < 2 && y < 2 && (x == y || (x, y) == (0, 1))) as usize);
        let c = QCategory { base, a };
        let nc = ev_embedding(&d2, &c).unwrap();
        assert_eq!(nc.t, vec![1, 1, 0]);
        for x in 0..3 {
            for y in 0..3 {
                let want = x == 2 || (y < 2 && (x == y || (x, y) == (0, 1)));
                assert_eq!(nc.d.get(x, y) == 1, want, "({x}, {y})");
            }
        }
        assert!(check_normed(&d2, &nc).unwrap().iter().all(Check::passed));
        assert_eq!(reflector(&d2, &nc).unwrap(), c);
    }

    #[test]
    fn partial_metric_reflection() {
        let v = add_chain(3);
        let dv = diagonal(&v).unwrap();
        let b = Budget::default();
        let mut count = 0;
        for s in 0..4 {
            for t in 0..4 {
                for alg in enumerate_algebras(&dv, &Monad::identity(), &crate::distlaw::IdentityLaw, &[s, t], &b).unwrap() {
                    let c = QCategory::from_algebra(&alg).unwrap();
                    let nc = ev_embedding(&dv, &c).unwrap();
                    assert!(check_normed(&dv, &nc).unwrap().iter().all(Check::passed));
                    assert_eq!(reflector(&dv, &nc).unwrap(), c);
                    // the norm condition ty − tx ≤ d(x,y) in costs
                    for x in 0..2 {
                        for y in 0..2 {
                            assert!(nc.t[y].saturating_sub(nc.t[x]) <= nc.d.get(x, y));
                        }
                    }
                    count += 1;
                }
            }
        }
        assert!(count > 16);
    }

    #[test]
    fn truncation_breaks_surjectivity() {
        // d = 2, t = (2, 2): d⊗t saturates at 3, and 3↙2 = 1 < 2 as a cost
        let v = add_chain(3);
        let dv = diagonal(&v).unwrap();
        let nc = NormedCategory { d: QRel::from_fn(&[0, 0], &[0, 0], |x, y| if x == y { 0 } else { 2 }), t: vec![2, 2] };
        assert!(check_normed(&dv, &nc).unwrap().iter().all(Check::passed));
        let back = ev_embedding(&dv, &reflector(&dv, &nc).unwrap()).unwrap();
        assert_ne!(back, nc);
        assert_eq!(back.d.get(0, 1), 1);
    }

    #[test]
    fn alg_functor_preserves_homomorphisms() {
        let q = two();
        let b = Budget::default();
        let src = Side::builtin(&q, MonadKind::Powerset, "delta", 0).unwrap();
        let dst = Side::builtin(&q, MonadKind::Identity, "identity", 0).unwrap();
        let algs = enumerate_algebras(&q, &src.t, src.law.as_ref(), &[0, 0], &b).unwrap();
        let maps = all_maps(&[0, 0], &[0, 0], 100).unwrap();
        for a in &algs {
            for c in &algs {
                let (fa, fc) = (
                    algebraic_functor_alg(&q, &dst, &counit_morphism(), a, &b).unwrap(),
                    algebraic_functor_alg(&q, &dst, &counit_morphism(), c, &b).unwrap(),
                );
                for f in &maps {
                    if crate::laxalg::check_hom(&q, &src.t, f, a, c).passed() {
                        assert!(crate::laxalg::check_hom(&q, &dst.t, f, &fa, &fc).passed());
                    }
                }
            }
        }
        let _ = check_algebra;
    }
}
