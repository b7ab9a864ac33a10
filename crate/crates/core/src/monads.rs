//! Monads on sets over `Q₀` obtained by lifting `Set`-monads along a
//! `T`-algebra structure `ζ: TQ₀ → Q₀`.
//!
//! Elements of `TX` are vectors over the indices of `X`: identity and
//! (principal) ultrafilter elements have length one, powerset elements are
//! sorted without repetition, and lists are arbitrary. Lists are never
//! truncated; only the enumerated test universe is bounded by length.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presheaf::{DEFAULT_PPX_LIMIT, DEFAULT_PX_LIMIT};
use crate::quantaloid::Quantaloid;
use crate::report::{Check, Tally};
use crate::util::product;

pub type TElem = Vec<usize>;

/// Enumeration and sampling limits. Everything sampled is derived from `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// largest `PX` that is enumerated
    pub px: usize,
    /// largest `PPX` (or other second-level carrier) that is enumerated
    pub ppx: usize,
    /// largest number of test points per check before switching to sampling
    pub domain: usize,
    /// number of sampled points when a domain is too large
    pub samples: usize,
    /// longest list in the enumerated universe of the list monad
    pub list_len: usize,
    /// largest sampled subset for the powerset monad
    pub max_set: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            px: DEFAULT_PX_LIMIT,
            ppx: DEFAULT_PPX_LIMIT,
            domain: 200_000,
            samples: 500,
            list_len: 2,
            max_set: 3,
            seed: 7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonadKind {
    Identity,
    List,
    Powerset,
    Ultrafilter,
}

impl MonadKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "identity" | "id" => Some(MonadKind::Identity),
            "list" => Some(MonadKind::List),
            "powerset" => Some(MonadKind::Powerset),
            "ultrafilter" => Some(MonadKind::Ultrafilter),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonadKind::Identity => "identity",
            MonadKind::List => "list",
            MonadKind::Powerset => "powerset",
            MonadKind::Ultrafilter => "ultrafilter",
        }
    }
}

/// The algebra structure `ζ: TQ₀ → Q₀` used to lift a `Set`-monad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Zeta {
    /// `ζ(ẋ) = x`, for the identity and ultrafilter monads.
    Point,
    /// Everything goes to object `0`; the only choice over a quantale.
    Trivial,
    /// Fold of `⊗` over the objects of a diagonal quantaloid, empty list to `k`.
    Tensor,
    /// Fold of `∧` over the objects of a diagonal quantaloid.
    Meet,
    /// Fold of `∨` over the objects of a diagonal quantaloid.
    Join,
    /// An explicit table on the enumerated `TQ₀`.
    Table(Vec<(TElem, usize)>),
}

/// A `Set`-monad lifted to sets over `Q₀`.
#[derive(Clone, Debug)]
pub struct Monad {
    pub kind: MonadKind,
    pub zeta: Zeta,
    pub list_len: usize,
    table: HashMap<TElem, usize>,
}

/// The operations every law checker needs from a `Set`-monad, in a form
/// that can also be implemented by deliberately broken monads.
pub trait SetMonad {
    fn name(&self) -> String;
    fn unit(&self, x: usize) -> TElem;
    fn fmap(&self, u: &[usize], f: &dyn Fn(usize) -> usize) -> TElem;
    /// `m` on an element of `TTX` given as its inner elements; the outer
    /// structure is read in the monad's own normal form.
    fn mult(&self, w: &[TElem]) -> TElem;
    fn enumerate(&self, n: usize, limit: usize) -> Result<Vec<TElem>>;
    /// A random element of `TX` for `|X| = n`.
    fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> TElem;
}

impl Monad {
    fn raw(kind: MonadKind, zeta: Zeta, list_len: usize) -> Self {
        let table = match &zeta {
            Zeta::Table(t) => t.iter().cloned().collect(),
            _ => HashMap::new(),
        };
        Monad { kind, zeta, list_len, table }
    }

    /// Lifts a `Set`-monad along `ζ`, refusing when `ζ` violates
    /// `ζ·e = 1` or `ζ·m = ζ·Tζ` on the enumerated universe.
    pub fn lift(q: &Quantaloid, kind: MonadKind, zeta: Zeta, list_len: usize) -> Result<Self> {
        let m = Monad::raw(kind, zeta, list_len);
        if matches!(m.zeta, Zeta::Tensor | Zeta::Meet | Zeta::Join) && q.diagonal_info().is_none() && !q.is_quantale() {
            return Err(Error::Refused("this ζ needs a quantale or a diagonal quantaloid".into()));
        }
        if m.zeta == Zeta::Point && !matches!(kind, MonadKind::Identity | MonadKind::Ultrafilter) {
            return Err(Error::Refused("ζ = point only applies to the identity and ultrafilter monads".into()));
        }
        if m.zeta == Zeta::Trivial && q.n() != 1 {
            return Err(Error::Refused("ζ = trivial only applies to a quantale".into()));
        }
        let n = q.n();
        let tq = m.enumerate(n, 1 << 16)?;
        if let Zeta::Table(t) = &m.zeta {
            for u in &tq {
                if !t.iter().any(|(k, _)| k == u) {
                    return Err(Error::schema("zeta", format!("table has no entry for {u:?}")));
                }
            }
            if t.iter().any(|(_, v)| *v >= n) {
                return Err(Error::schema("zeta", "table value is not an object"));
            }
        }
        for r in 0..n {
            if m.zeta(q, &m.unit(r)) != r {
                return Err(Error::Refused(format!("ζ·e ≠ 1 at object {}", q.objects()[r])));
            }
        }
        let ttq = m.enumerate(tq.len(), 1 << 16)?;
        for w in &ttq {
            let inner: Vec<TElem> = w.iter().map(|&i| tq[i].clone()).collect();
            let flat = m.mult(&inner);
            if !m.in_universe(n, &flat) {
                continue;
            }
            let lhs = m.zeta(q, &flat);
            let rhs = m.zeta(q, &m.fmap(w, &|i| m.zeta(q, &tq[i])));
            if lhs != rhs {
                return Err(Error::Refused(format!("ζ·m ≠ ζ·Tζ at {inner:?}")));
            }
        }
        Ok(m)
    }

    /// The default lifting of a monad over `q`.
    pub fn standard(q: &Quantaloid, kind: MonadKind, list_len: usize) -> Result<Self> {
        let zeta = match kind {
            MonadKind::Identity | MonadKind::Ultrafilter => Zeta::Point,
            _ if q.n() == 1 => Zeta::Trivial,
            MonadKind::List => Zeta::Tensor,
            MonadKind::Powerset => Zeta::Join,
        };
        Monad::lift(q, kind, zeta, list_len)
    }

    /// The same monad with a different enumeration bound for lists.
    pub fn with_list_len(&self, list_len: usize) -> Self {
        Monad { list_len, ..self.clone() }
    }

    pub fn identity() -> Self {
        Monad::raw(MonadKind::Identity, Zeta::Point, 0)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn normalize<A: Ord>(&self, mut v: Vec<A>) -> Vec<A> {
        if self.kind == MonadKind::Powerset {
            v.sort();
            v.dedup();
        }
        v
    }

    pub fn unit_of<A>(&self, a: A) -> Vec<A> {
        vec![a]
    }

    pub fn map<A, B: Ord>(&self, u: &[A], f: impl FnMut(&A) -> B) -> Vec<B> {
        self.normalize(u.iter().map(f).collect())
    }

    pub fn flatten<A: Ord + Clone>(&self, w: &[Vec<A>]) -> Vec<A> {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => w[0].clone(),
            MonadKind::List => w.concat(),
            MonadKind::Powerset => self.normalize(w.concat()),
        }
    }

    /// Number of elements of the enumerated `TX` for `|X| = n`.
    pub fn count(&self, n: usize) -> u128 {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => n as u128,
            MonadKind::Powerset => {
                if n >= 127 {
                    u128::MAX
                } else {
                    1u128 << n
                }
            }
            MonadKind::List => (0..=self.list_len).map(|l| product(std::iter::repeat_n(n, l))).fold(0, u128::saturating_add),
        }
    }

    /// Whether `u` belongs to the enumerated universe over `0..n`.
    pub fn in_universe(&self, n: usize, u: &[usize]) -> bool {
        u.iter().all(|&x| x < n)
            && match self.kind {
                MonadKind::Identity | MonadKind::Ultrafilter => u.len() == 1,
                MonadKind::List => u.len() <= self.list_len,
                MonadKind::Powerset => u.windows(2).all(|w| w[0] < w[1]),
            }
    }

    /// Draws an element of `TX` for `|X| = n`.
    pub fn sample(&self, n: usize, rng: &mut impl Rng, max_set: usize) -> TElem {
        match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => vec![rng.gen_range(0..n)],
            MonadKind::List => {
                let len = if n == 0 { 0 } else { rng.gen_range(0..=self.list_len) };
                (0..len).map(|_| rng.gen_range(0..n)).collect()
            }
            MonadKind::Powerset => {
                if n <= 16 {
                    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
                } else {
                    let k = rng.gen_range(0..=max_set.min(n));
                    self.normalize((0..k).map(|_| rng.gen_range(0..n)).collect())
                }
            }
        }
    }

    /// `ζ` applied to an element of `TQ₀`.
    pub fn zeta(&self, q: &Quantaloid, u: &[usize]) -> usize {
        match &self.zeta {
            Zeta::Point => u[0],
            Zeta::Trivial => 0,
            Zeta::Tensor | Zeta::Meet | Zeta::Join => {
                let base = match q.diagonal_info() {
                    Some(info) => &info.base,
                    None => return 0,
                };
                let l = base.lattice();
                match self.zeta {
                    Zeta::Tensor => u.iter().fold(base.unit(), |acc, &v| base.tensor(acc, v)),
                    Zeta::Meet => l.meet_all(u.iter().copied()),
                    _ => l.join_all(u.iter().copied()),
                }
            }
            Zeta::Table(_) => *self.table.get(u).unwrap_or_else(|| panic!("ζ table has no entry for {u:?}")),
        }
    }

    /// The array of `u ∈ TX`: `ζ·Ta`.
    pub fn array_of(&self, q: &Quantaloid, base: &[usize], u: &[usize]) -> usize {
        self.zeta(q, &self.map(u, |&x| base[x]))
    }

    /// The enumerated `TX` over a base array.
    pub fn tset(&self, q: &Quantaloid, base: &[usize], limit: usize) -> Result<TSet> {
        let elems = self.enumerate(base.len(), limit)?;
        let array = elems.iter().map(|u| self.array_of(q, base, u)).collect();
        Ok(TSet::new(elems, array))
    }

    /// The enumerated `TX`, or `None` beyond `limit`.
    pub fn enumerate_checked(&self, n: usize, limit: usize) -> Option<Vec<TElem>> {
        SetMonad::enumerate(self, n, limit).ok()
    }

    /// `Tf` on an element.
    pub fn fmap_vec(&self, u: &[usize], f: &[usize]) -> TElem {
        self.map(u, |&x| f[x])
    }
}

impl SetMonad for Monad {
    fn name(&self) -> String {
        self.kind.name().into()
    }

    fn unit(&self, x: usize) -> TElem {
        vec![x]
    }

    fn fmap(&self, u: &[usize], f: &dyn Fn(usize) -> usize) -> TElem {
        self.map(u, |&x| f(x))
    }

    fn mult(&self, w: &[TElem]) -> TElem {
        self.flatten(w)
    }

    fn enumerate(&self, n: usize, limit: usize) -> Result<Vec<TElem>> {
        let total = self.count(n);
        if total > limit as u128 {
            return Err(Error::budget(format!("{} of a {}-element set", self.kind.name(), n), total, limit as u128));
        }
        Ok(match self.kind {
            MonadKind::Identity | MonadKind::Ultrafilter => (0..n).map(|x| vec![x]).collect(),
            MonadKind::Powerset => (0..1usize << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect(),
            MonadKind::List => {
                let mut out = Vec::new();
                for len in 0..=self.list_len {
                    out.extend(crate::util::odometer(&vec![n; len]));
                }
                out
            }
        })
    }

    fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> TElem {
        self.sample(n, rng, 3)
    }
}

/// An enumerated `TX` with its array and an index.
#[derive(Clone, Debug)]
pub struct TSet {
    pub elems: Vec<TElem>,
    pub array: Vec<usize>,
    index: HashMap<TElem, usize>,
}

impl TSet {
    pub fn new(elems: Vec<TElem>, array: Vec<usize>) -> Self {
        let index = elems.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        TSet { elems, array, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, u: &[usize]) -> Option<usize> {
        self.index.get(u).copied()
    }
}

/// Unit and associativity laws on `TX` and `TTTX` for `|X| = n`, sampling
/// `TTTX` when it exceeds `budget.domain`.
pub fn check_monad_laws(t: &dyn SetMonad, n: usize, budget: &Budget) -> Result<Vec<Check>> {
    let tx = t.enumerate(n, budget.ppx)?;
    let dom = format!("{} on {n} points", t.name());
    let mut out = Vec::new();

    let mut left = Tally::new("monad.unit-left", "m·eT = 1");
    let mut right = Tally::new("monad.unit-right", "m·Te = 1");
    for u in &tx {
        left.same(t.mult(std::slice::from_ref(u)) == *u, || format!("u = {u:?}"));
        let inner: Vec<TElem> = t.fmap(u, &|x| x).iter().map(|&x| t.unit(x)).collect();
        right.same(t.mult(&inner) == *u, || format!("u = {u:?}"));
    }
    left.domain(format!("all of TX, {dom}"));
    right.domain(format!("all of TX, {dom}"));
    out.push(left.finish());
    out.push(right.finish());

    let ttx = t.enumerate(tx.len(), budget.ppx)?;
    let flat = |w: &[usize]| -> TElem {
        let inner: Vec<TElem> = w.iter().map(|&i| tx[i].clone()).collect();
        t.mult(&inner)
    };
    let m_of: Vec<TElem> = ttx.iter().map(|w| flat(w)).collect();
    let mut assoc = Tally::new("monad.assoc", "m·mT = m·Tm");
    let check = |omega: &[usize], assoc: &mut Tally| {
        let level2: Vec<TElem> = omega.iter().map(|&i| ttx[i].clone()).collect();
        let lhs = flat(&t.mult(&level2));
        // Tm, with the values of m interned so the outer structure stays normal
        let mut seen: Vec<TElem> = Vec::new();
        let ids: Vec<usize> = omega
            .iter()
            .map(|&i| match seen.iter().position(|v| *v == m_of[i]) {
                Some(p) => p,
                None => {
                    seen.push(m_of[i].clone());
                    seen.len() - 1
                }
            })
            .collect();
        let ids = t.fmap(&ids, &|p| p);
        let inner: Vec<TElem> = ids.iter().map(|&p| seen[p].clone()).collect();
        let rhs = t.mult(&inner);
        assoc.same(lhs == rhs, || format!("Ω = {level2:?} over TX = {tx:?}"));
    };
    match t.enumerate(ttx.len(), budget.domain) {
        Ok(all) => {
            for omega in &all {
                check(omega, &mut assoc);
            }
            assoc.domain(format!("all of TTTX, {dom}"));
        }
        Err(Error::Budget { .. }) => {
            let mut rng = crate::util::rng_for(budget.seed, &format!("monad.assoc/{}/{n}", t.name()));
            for _ in 0..budget.samples {
                let omega = t.draw(ttx.len(), &mut rng);
                check(&omega, &mut assoc);
            }
            assoc.mark_sampled();
            assoc.domain(format!("{} sampled points of TTTX, {dom}", budget.samples));
        }
        Err(e) => return Err(e),
    }
    out.push(assoc.finish());
    Ok(out)
}

/// A `Set`-functor on finite sets, for the Beck–Chevalley test.
pub trait SetFunctor {
    fn elements(&self, n: usize) -> Vec<TElem>;
    fn apply(&self, u: &[usize], f: &[usize]) -> TElem;
}

impl SetFunctor for Monad {
    fn elements(&self, n: usize) -> Vec<TElem> {
        SetMonad::enumerate(self, n, usize::MAX).expect("unbounded enumeration")
    }

    fn apply(&self, u: &[usize], f: &[usize]) -> TElem {
        self.fmap_vec(u, f)
    }
}

/// Checks that the functor sends pullback squares of sets with at most
/// `max_size` elements to weak pullbacks. Returns a witness square on failure.
pub fn check_bc(t: &dyn SetFunctor, max_size: usize) -> std::result::Result<usize, String> {
    let mut squares = 0;
    for c in 1..=max_size {
        for a in 1..=max_size {
            for b in 1..=max_size {
                let fs: Vec<Vec<usize>> = crate::util::odometer(&vec![c; a]).collect();
                let gs: Vec<Vec<usize>> = crate::util::odometer(&vec![c; b]).collect();
                let ta = t.elements(a);
                let tb = t.elements(b);
                for f in &fs {
                    for g in &gs {
                        let pb: Vec<(usize, usize)> = (0..a)
                            .flat_map(|x| (0..b).map(move |y| (x, y)))
                            .filter(|&(x, y)| f[x] == g[y])
                            .collect();
                        let p1: Vec<usize> = pb.iter().map(|p| p.0).collect();
                        let p2: Vec<usize> = pb.iter().map(|p| p.1).collect();
                        let reached: HashSet<(TElem, TElem)> = t
                            .elements(pb.len())
                            .iter()
                            .map(|w| (t.apply(w, &p1), t.apply(w, &p2)))
                            .collect();
                        let tfa: Vec<TElem> = ta.iter().map(|u| t.apply(u, f)).collect();
                        let tgb: Vec<TElem> = tb.iter().map(|v| t.apply(v, g)).collect();
                        for (i, u) in ta.iter().enumerate() {
                            for (j, v) in tb.iter().enumerate() {
                                if tfa[i] == tgb[j] && !reached.contains(&(u.clone(), v.clone())) {
                                    return Err(format!(
                                        "f = {f:?}: {a} → {c}, g = {g:?}: {b} → {c}, u = {u:?}, v = {v:?}"
                                    ));
                                }
                            }
                        }
                        squares += 1;
                    }
                }
            }
        }
    }
    Ok(squares)
}

/// `can: T(X×Y) → TX × TY`, with pairs encoded as `x * |Y| + y`.
pub fn can_map(t: &Monad, w: &[usize], y_len: usize) -> (TElem, TElem) {
    (t.map(w, |&p| p / y_len), t.map(w, |&p| p % y_len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::{diagonal, luk, two};

    #[test]
    fn units_and_flattening() {
        let q = two();
        let p = Monad::standard(&q, MonadKind::Powerset, 0).unwrap();
        assert_eq!(p.unit_of(3), vec![3]);
        let l = Monad::standard(&q, MonadKind::List, 3).unwrap();
        assert_eq!(l.flatten(&[vec![0], vec![1, 2]]), vec![0, 1, 2]);
    }

    #[test]
    fn ultrafilters_on_three_points() {
        let u = Monad::standard(&two(), MonadKind::Ultrafilter, 0).unwrap();
        assert_eq!(SetMonad::enumerate(&u, 3, 100).unwrap().len(), 3);
    }

    #[test]
    fn tensor_zeta_on_diagonal() {
        let v = luk(3);
        let dv = diagonal(&v).unwrap();
        let l = Monad::lift(&dv, MonadKind::List, Zeta::Tensor, 2).unwrap();
        assert_eq!(l.zeta(&dv, &[]), 3);
        assert_eq!(l.zeta(&dv, &[2, 2]), 1);
    }

    #[test]
    fn bad_zeta_refused() {
        let dv = diagonal(&two()).unwrap();
        let table = vec![(vec![0], 1), (vec![1], 0)];
        assert!(Monad::lift(&dv, MonadKind::Identity, Zeta::Table(table), 0).is_err());
    }

    #[test]
    fn can_splits_pairs() {
        let l = Monad::standard(&two(), MonadKind::List, 2).unwrap();
        // pairs over X = {a,b}, Y = {x,y}: (a,x) = 0, (b,y) = 3
        assert_eq!(can_map(&l, &[0, 3], 2), (vec![0, 1], vec![0, 1]));
    }

    struct Const(usize);

    impl SetFunctor for Const {
        fn elements(&self, _n: usize) -> Vec<TElem> {
            (0..self.0).map(|i| vec![i]).collect()
        }

        fn apply(&self, u: &[usize], _f: &[usize]) -> TElem {
            u.to_vec()
        }
    }

    /// Triples with at most two distinct entries.
    struct TwoOfThree;

    impl SetFunctor for TwoOfThree {
        fn elements(&self, n: usize) -> Vec<TElem> {
            crate::util::odometer(&[n, n, n])
                .filter(|w| {
                    let mut d = w.clone();
                    d.sort();
                    d.dedup();
                    d.len() <= 2
                })
                .collect()
        }

        fn apply(&self, u: &[usize], f: &[usize]) -> TElem {
            u.iter().map(|&x| f[x]).collect()
        }
    }

    #[test]
    fn standard_monads_satisfy_bc() {
        for kind in [MonadKind::Identity, MonadKind::List, MonadKind::Powerset, MonadKind::Ultrafilter] {
            let t = Monad::standard(&two(), kind, 2).unwrap();
            assert!(check_bc(&t, 2).is_ok(), "{kind:?}");
        }
    }

    #[test]
    fn constant_functor_satisfies_bc() {
        assert!(check_bc(&Const(2), 3).is_ok());
    }

    #[test]
    fn two_of_three_fails_bc() {
        let w = check_bc(&TwoOfThree, 2).unwrap_err();
        assert!(w.contains("u = "), "{w}");
    }
}
