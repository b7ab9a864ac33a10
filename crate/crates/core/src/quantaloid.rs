//! Finite complete lattices and finite quantaloids.
//!
//! Objects, hom elements and identities are plain indices. A hom-lattice
//! stores its order, join and meet as dense tables, and composition is a
//! dense table per triple of objects. Internal homs are computed on demand
//! as joins, which is exact on finite carriers.

use std::fmt;

use crate::error::{Error, Result};

/// A finite lattice given by its order table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from an order table (`leq[a * n + b]` means `a ≤ b`).
    ///
    /// Returns a human-readable witness when the table is not a lattice order.
    pub fn from_leq(labels: Vec<String>, leq: Vec<bool>) -> std::result::Result<Self, String> {
        let n = labels.len();
        if n == 0 {
            return Err("empty carrier".into());
        }
        if leq.len() != n * n {
            return Err(format!("order table has {} entries, expected {}", leq.len(), n * n));
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(format!("not reflexive at {}", labels[a]));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(format!("not antisymmetric at {}, {}", labels[a], labels[b]));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(format!(
                            "not transitive at {} ≤ {} ≤ {}",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        let least = |cands: &[usize], below: bool| -> Option<usize> {
            cands.iter().copied().find(|&c| {
                cands.iter().all(|&d| if below { le(c, d) } else { le(d, c) })
            })
        };
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(&all, true).ok_or("no bottom element")?;
        let top = least(&all, false).ok_or("no top element")?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                join[a * n + b] = least(&ub, true).ok_or_else(|| {
                    format!("no least upper bound of {}, {}", labels[a], labels[b])
                })?;
                let lb: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                meet[a * n + b] = least(&lb, false).ok_or_else(|| {
                    format!("no greatest lower bound of {}, {}", labels[a], labels[b])
                })?;
            }
        }
        Ok(FiniteLattice { labels, leq, join, meet, bottom, top })
    }

    /// The chain whose elements are listed in ascending order.
    pub fn chain(labels: Vec<String>) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|i| i / n <= i % n).collect();
        Self::from_leq(labels, leq).expect("a chain is a lattice")
    }

    /// Builds a lattice from an order predicate on `0..n`.
    pub fn from_order(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> std::result::Result<Self, String> {
        let n = labels.len();
        let leq = (0..n * n).map(|i| le(i / n, i % n)).collect();
        Self::from_leq(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = usize>) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }
}

/// Bookkeeping for a quantaloid built by [`diagonal`]: the base quantale and
/// the embedding of each hom-set into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalInfo {
    pub base: Quantaloid,
    /// `elems[u * n + v][i]` is the base element of the i-th morphism `u ⇸ v`.
    pub elems: Vec<Vec<usize>>,
}

impl DiagonalInfo {
    /// The base element carried by the i-th morphism `u ⇸ v`.
    pub fn elem(&self, u: usize, v: usize, i: usize) -> usize {
        let n = self.base.hom(0, 0).len();
        self.elems[u * n + v][i]
    }

    /// The morphism `u ⇸ v` carried by base element `d`, if `d ≤ u ∧ v`.
    pub fn lookup(&self, u: usize, v: usize, d: usize) -> Option<usize> {
        let n = self.base.hom(0, 0).len();
        self.elems[u * n + v].iter().position(|&e| e == d)
    }
}

/// A finite quantaloid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantaloid {
    name: String,
    objects: Vec<String>,
    homs: Vec<FiniteLattice>,
    // compose[(r*n+s)*n+t][u * |hom(s,t)| + v] = v∘u
    compose: Vec<Vec<usize>>,
    ids: Vec<usize>,
    diagonal: Option<Box<DiagonalInfo>>,
}

impl Quantaloid {
    /// Tabulates a quantaloid from a composition function.
    ///
    /// `comp(r, s, t, u, v)` must return `v∘u` for `u: r → s`, `v: s → t`.
    pub fn from_fn(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        ids: Vec<usize>,
        comp: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Self {
        let n = objects.len();
        assert_eq!(homs.len(), n * n, "one hom-lattice per pair of objects");
        assert_eq!(ids.len(), n, "one identity per object");
        let mut compose = Vec::with_capacity(n * n * n);
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let (a, b, c) = (&homs[r * n + s], &homs[s * n + t], &homs[r * n + t]);
                    let mut table = Vec::with_capacity(a.len() * b.len());
                    for u in 0..a.len() {
                        for v in 0..b.len() {
                            let w = comp(r, s, t, u, v);
                            assert!(w < c.len(), "composite out of range");
                            table.push(w);
                        }
                    }
                    compose.push(table);
                }
            }
        }
        Quantaloid { name: name.into(), objects, homs, compose, ids, diagonal: None }
    }

    /// Quantale (one-object quantaloid) from a multiplication `a ⊗ b`.
    pub fn quantale(
        name: impl Into<String>,
        lattice: FiniteLattice,
        unit: usize,
        tensor: impl Fn(usize, usize) -> usize,
    ) -> Self {
        // v∘u = v ⊗ u
        Self::from_fn(name, vec!["*".into()], vec![lattice], vec![unit], |_, _, _, u, v| tensor(v, u))
    }

    /// Assembles a quantaloid from fully specified tables, reporting
    /// missing or out-of-range entries as schema errors.
    pub fn from_tables(
        name: impl Into<String>,
        objects: Vec<String>,
        homs: Vec<FiniteLattice>,
        ids: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = objects.len();
        if homs.len() != n * n || ids.len() != n || compose.len() != n * n * n {
            return Err(Error::schema("quantaloid", "table dimensions do not match the object list"));
        }
        let mut full = Vec::with_capacity(compose.len());
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let (a, b, c) = (&homs[r * n + s], &homs[s * n + t], &homs[r * n + t]);
                    let table = &compose[(r * n + s) * n + t];
                    if table.len() != a.len() * b.len() {
                        return Err(Error::schema(
                            format!("compose/{}/{}/{}", objects[r], objects[s], objects[t]),
                            "wrong table size",
                        ));
                    }
                    let mut out = Vec::with_capacity(table.len());
                    for (i, e) in table.iter().enumerate() {
                        let (u, v) = (i / b.len(), i % b.len());
                        let path = format!(
                            "compose/{}/{}/{}/{}/{}",
                            objects[r], objects[s], objects[t], a.label(u), b.label(v)
                        );
                        match e {
                            None => return Err(Error::schema(path, "missing composite")),
                            Some(w) if *w >= c.len() => {
                                return Err(Error::schema(path, "composite outside the hom-lattice"))
                            }
                            Some(w) => out.push(*w),
                        }
                    }
                    full.push(out);
                }
            }
        }
        for (s, &i) in ids.iter().enumerate() {
            if i >= homs[s * n + s].len() {
                return Err(Error::schema(format!("identities/{}", objects[s]), "identity outside hom-lattice"));
            }
        }
        Ok(Quantaloid { name: name.into(), objects, homs, compose: full, ids, diagonal: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom(&self, r: usize, s: usize) -> &FiniteLattice {
        &self.homs[r * self.n() + s]
    }

    pub fn id(&self, s: usize) -> usize {
        self.ids[s]
    }

    /// `v∘u` for `u: r → s` and `v: s → t`.
    pub fn comp(&self, r: usize, s: usize, t: usize, u: usize, v: usize) -> usize {
        let n = self.n();
        let b = self.homs[s * n + t].len();
        self.compose[(r * n + s) * n + t][u * b + v]
    }

    pub fn leq(&self, r: usize, s: usize, a: usize, b: usize) -> bool {
        self.hom(r, s).leq(a, b)
    }

    pub fn join(&self, r: usize, s: usize, a: usize, b: usize) -> usize {
        self.hom(r, s).join(a, b)
    }

    pub fn meet(&self, r: usize, s: usize, a: usize, b: usize) -> usize {
        self.hom(r, s).meet(a, b)
    }

    pub fn bot(&self, r: usize, s: usize) -> usize {
        self.hom(r, s).bottom()
    }

    pub fn top(&self, r: usize, s: usize) -> usize {
        self.hom(r, s).top()
    }

    /// `v↘w: r → s` for `v: s → t`, `w: r → t`: the largest `u` with `v∘u ≤ w`.
    pub fn rext(&self, r: usize, s: usize, t: usize, v: usize, w: usize) -> usize {
        let h = self.hom(r, s);
        h.join_all((0..h.len()).filter(|&u| self.leq(r, t, self.comp(r, s, t, u, v), w)))
    }

    /// `w↙u: s → t` for `w: r → t`, `u: r → s`: the largest `v` with `v∘u ≤ w`.
    pub fn rlift(&self, r: usize, s: usize, t: usize, w: usize, u: usize) -> usize {
        let h = self.hom(s, t);
        h.join_all((0..h.len()).filter(|&v| self.leq(r, t, self.comp(r, s, t, u, v), w)))
    }

    pub fn is_quantale(&self) -> bool {
        self.n() == 1
    }

    /// The single hom-lattice of a quantale.
    pub fn lattice(&self) -> &FiniteLattice {
        debug_assert!(self.is_quantale());
        &self.homs[0]
    }

    /// `a ⊗ b = a∘b` in a quantale.
    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.comp(0, 0, 0, b, a)
    }

    /// The unit `k` of a quantale.
    pub fn unit(&self) -> usize {
        self.ids[0]
    }

    pub fn is_commutative(&self) -> bool {
        let l = self.lattice();
        (0..l.len()).all(|a| (0..l.len()).all(|b| self.tensor(a, b) == self.tensor(b, a)))
    }

    /// Diagonal bookkeeping when this quantaloid was built by [`diagonal`].
    pub fn diagonal_info(&self) -> Option<&DiagonalInfo> {
        self.diagonal.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for Quantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} objects)", self.name, self.n())
    }
}

/// Materialized internal homs of a quantaloid.
#[derive(Clone, Debug)]
pub struct InternalHoms {
    n: usize,
    // right_ext[(r*n+s)*n+t][v * |hom(r,t)| + w] = v↘w
    right_ext: Vec<Vec<usize>>,
    // right_lift[(r*n+s)*n+t][w * |hom(r,s)| + u] = w↙u
    right_lift: Vec<Vec<usize>>,
    sizes: Vec<usize>,
}

impl InternalHoms {
    pub fn right_ext(&self, r: usize, s: usize, t: usize, v: usize, w: usize) -> usize {
        let n = self.n;
        self.right_ext[(r * n + s) * n + t][v * self.sizes[r * n + t] + w]
    }

    pub fn right_lift(&self, r: usize, s: usize, t: usize, w: usize, u: usize) -> usize {
        let n = self.n;
        self.right_lift[(r * n + s) * n + t][w * self.sizes[r * n + s] + u]
    }
}

pub fn internal_homs(q: &Quantaloid) -> InternalHoms {
    let n = q.n();
    let sizes: Vec<usize> = (0..n * n).map(|i| q.homs[i].len()).collect();
    let mut right_ext = Vec::new();
    let mut right_lift = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let mut ext = Vec::new();
                for v in 0..sizes[s * n + t] {
                    for w in 0..sizes[r * n + t] {
                        ext.push(q.rext(r, s, t, v, w));
                    }
                }
                right_ext.push(ext);
                let mut lift = Vec::new();
                for w in 0..sizes[r * n + t] {
                    for u in 0..sizes[r * n + s] {
                        lift.push(q.rlift(r, s, t, w, u));
                    }
                }
                right_lift.push(lift);
            }
        }
    }
    InternalHoms { n, right_ext, right_lift, sizes }
}

/// Outcome of one axiom in a validation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    fn push(&mut self, axiom: &'static str, witness: Option<String>) {
        self.checks.push(AxiomCheck { axiom, passed: witness.is_none(), witness });
    }
}

/// Checks associativity, unitality and preservation of binary joins and
/// bottom in each argument, with one witness per violated axiom.
pub fn validate_quantaloid(q: &Quantaloid) -> ValidationReport {
    let n = q.n();
    let o = |i: usize| q.objects[i].as_str();
    let mut rep = ValidationReport::default();

    let mut assoc = None;
    'a: for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                for z in 0..n {
                    for u in 0..q.hom(r, s).len() {
                        for v in 0..q.hom(s, t).len() {
                            for w in 0..q.hom(t, z).len() {
                                let left = q.comp(r, t, z, q.comp(r, s, t, u, v), w);
                                let right = q.comp(r, s, z, u, q.comp(s, t, z, v, w));
                                if left != right {
                                    assoc = Some(format!(
                                        "objects {},{},{},{}: u={} v={} w={}: (w∘v)∘u={} but w∘(v∘u)={}",
                                        o(r), o(s), o(t), o(z),
                                        q.hom(r, s).label(u), q.hom(s, t).label(v), q.hom(t, z).label(w),
                                        q.hom(r, z).label(right), q.hom(r, z).label(left)
                                    ));
                                    break 'a;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push("associativity", assoc);

    let mut unit = None;
    'u: for r in 0..n {
        for s in 0..n {
            for u in 0..q.hom(r, s).len() {
                let l = q.comp(r, s, s, u, q.id(s));
                let rr = q.comp(r, r, s, q.id(r), u);
                if l != u || rr != u {
                    unit = Some(format!("objects {},{}: u={}", o(r), o(s), q.hom(r, s).label(u)));
                    break 'u;
                }
            }
        }
    }
    rep.push("unitality", unit);

    let mut left_join = None;
    let mut right_join = None;
    let mut bottom = None;
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let (a, b) = (q.hom(r, s), q.hom(s, t));
                let c = q.hom(r, t);
                for v in 0..b.len() {
                    if bottom.is_none() && q.comp(r, s, t, a.bottom(), v) != c.bottom() {
                        bottom = Some(format!("objects {},{},{}: {}∘⊥ ≠ ⊥", o(r), o(s), o(t), b.label(v)));
                    }
                    for u1 in 0..a.len() {
                        for u2 in 0..a.len() {
                            if left_join.is_some() {
                                break;
                            }
                            let lhs = q.comp(r, s, t, a.join(u1, u2), v);
                            let rhs = c.join(q.comp(r, s, t, u1, v), q.comp(r, s, t, u2, v));
                            if lhs != rhs {
                                left_join = Some(format!(
                                    "objects {},{},{}: {}∘({}∨{}) = {} but joins give {}",
                                    o(r), o(s), o(t), b.label(v), a.label(u1), a.label(u2),
                                    c.label(lhs), c.label(rhs)
                                ));
                            }
                        }
                    }
                }
                for u in 0..a.len() {
                    if bottom.is_none() && q.comp(r, s, t, u, b.bottom()) != c.bottom() {
                        bottom = Some(format!("objects {},{},{}: ⊥∘{} ≠ ⊥", o(r), o(s), o(t), a.label(u)));
                    }
                    for v1 in 0..b.len() {
                        for v2 in 0..b.len() {
                            if right_join.is_some() {
                                break;
                            }
                            let lhs = q.comp(r, s, t, u, b.join(v1, v2));
                            let rhs = c.join(q.comp(r, s, t, u, v1), q.comp(r, s, t, u, v2));
                            if lhs != rhs {
                                right_join = Some(format!(
                                    "objects {},{},{}: ({}∨{})∘{} = {} but joins give {}",
                                    o(r), o(s), o(t), b.label(v1), b.label(v2), a.label(u),
                                    c.label(lhs), c.label(rhs)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push("joins preserved (right argument)", left_join);
    rep.push("joins preserved (left argument)", right_join);
    rep.push("bottom preserved", bottom);
    rep
}

/// Divisibility test result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub divisible: bool,
    pub integral: bool,
    /// A pair `u ≤ v` lacking the required factors.
    pub witness: Option<(usize, usize)>,
}

/// Tests whether every `u ≤ v` factors as `a⊗v = u = v⊗b`.
///
/// The candidates `a = u↙v` and `b = v↘u` are the largest possible factors,
/// so the search reduces to checking them.
pub fn check_divisible(q: &Quantaloid) -> Divisibility {
    assert!(q.is_quantale(), "divisibility is a quantale notion");
    let l = q.lattice();
    let integral = q.unit() == l.top();
    for v in 0..l.len() {
        for u in 0..l.len() {
            if !l.leq(u, v) {
                continue;
            }
            let a = q.rlift(0, 0, 0, u, v);
            let b = q.rext(0, 0, 0, v, u);
            if q.tensor(a, v) != u || q.tensor(v, b) != u {
                return Divisibility { divisible: false, integral, witness: Some((u, v)) };
            }
        }
    }
    Divisibility { divisible: true, integral, witness: None }
}

/// The two-element quantale with `⊗ = ∧`.
pub fn two() -> Quantaloid {
    let l = FiniteLattice::chain(vec!["0".into(), "1".into()]);
    Quantaloid::quantale("two", l, 1, |a, b| a.min(b))
}

/// The Łukasiewicz chain with elements `0..=n` read as `i/n`.
pub fn luk(n: usize) -> Quantaloid {
    assert!(n >= 1);
    let l = FiniteLattice::chain((0..=n).map(|i| i.to_string()).collect());
    Quantaloid::quantale(format!("luk({n})"), l, n, move |a, b| (a + b).saturating_sub(n))
}

fn cost_chain(n: usize) -> FiniteLattice {
    // index = cost; larger cost is lower in the order
    FiniteLattice::from_order((0..=n).map(|i| i.to_string()).collect(), |a, b| a >= b)
        .expect("a chain is a lattice")
}

/// Costs `0..=n` in reversed order with truncated addition, unit `0`.
pub fn add_chain(n: usize) -> Quantaloid {
    Quantaloid::quantale(format!("add_chain({n})"), cost_chain(n), 0, move |a, b| (a + b).min(n))
}

/// Costs `0..=n` in reversed order with `⊗ = max`, unit `0`.
pub fn max_chain(n: usize) -> Quantaloid {
    Quantaloid::quantale(format!("max_chain({n})"), cost_chain(n), 0, |a, b| a.max(b))
}

/// The free quantale over a finite monoid: subsets ordered by inclusion,
/// multiplied elementwise. `mul[a][b]` is the product `ab`.
pub fn free_monoid(names: &[&str], mul: &[Vec<usize>]) -> Result<Quantaloid> {
    let m = names.len();
    if m == 0 || m > 5 {
        return Err(Error::Refused("monoid must have between 1 and 5 elements".into()));
    }
    if mul.len() != m || mul.iter().any(|row| row.len() != m || row.iter().any(|&x| x >= m)) {
        return Err(Error::schema("monoid", "multiplication table must be square over the elements"));
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    return Err(Error::Refused(format!(
                        "monoid table is not associative at ({}, {}, {})",
                        names[a], names[b], names[c]
                    )));
                }
            }
        }
    }
    let e = (0..m)
        .find(|&e| (0..m).all(|a| mul[e][a] == a && mul[a][e] == a))
        .ok_or_else(|| Error::Refused("monoid table has no unit".into()))?;
    let size = 1usize << m;
    let labels: Vec<String> = (0..size)
        .map(|s| {
            let parts: Vec<&str> = (0..m).filter(|i| s >> i & 1 == 1).map(|i| names[i]).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let l = FiniteLattice::from_order(labels, |a, b| a & !b == 0).expect("a powerset is a lattice");
    let mul = mul.to_vec();
    let tensor = move |a: usize, b: usize| {
        let mut out = 0usize;
        for x in 0..m {
            if a >> x & 1 == 1 {
                for y in 0..m {
                    if b >> y & 1 == 1 {
                        out |= 1 << mul[x][y];
                    }
                }
            }
        }
        out
    };
    let name = format!("free_monoid({})", names.join(","));
    Ok(Quantaloid::quantale(name, l, 1 << e, tensor))
}

/// The free quantale over the cyclic group of order two.
pub fn free_z2() -> Quantaloid {
    free_monoid(&["e", "g"], &[vec![0, 1], vec![1, 0]]).expect("Z/2 is a monoid")
}

/// The diagonal construction `DV` of a divisible quantale.
///
/// Objects are the elements of `V`; morphisms `u ⇸ v` are the `d ≤ u ∧ v`,
/// and `e∘d = e ⊗ (v↘d)`.
pub fn diagonal(v: &Quantaloid) -> Result<Quantaloid> {
    if !v.is_quantale() {
        return Err(Error::Refused("the diagonal construction needs a quantale".into()));
    }
    let div = check_divisible(v);
    if let Some((a, b)) = div.witness {
        let l = v.lattice();
        return Err(Error::Refused(format!(
            "{} is not divisible: {} ≤ {} has no factorization",
            v.name(),
            l.label(a),
            l.label(b)
        )));
    }
    let l = v.lattice().clone();
    let n = l.len();
    let mut homs = Vec::with_capacity(n * n);
    let mut elems = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let m = l.meet(a, b);
            let carrier: Vec<usize> = (0..n).filter(|&d| l.leq(d, m)).collect();
            let labels = carrier.iter().map(|&d| l.label(d).to_string()).collect();
            let lat = FiniteLattice::from_order(labels, |i, j| l.leq(carrier[i], carrier[j]))
                .expect("a down-set of a lattice is a lattice");
            homs.push(lat);
            elems.push(carrier);
        }
    }
    let ids: Vec<usize> = (0..n)
        .map(|a| elems[a * n + a].iter().position(|&d| d == a).unwrap())
        .collect();
    let objects = l.labels().to_vec();
    let comp = |r: usize, s: usize, t: usize, i: usize, j: usize| {
        let d = elems[r * n + s][i];
        let e = elems[s * n + t][j];
        let out = v.tensor(e, v.rext(0, 0, 0, s, d));
        elems[r * n + t]
            .iter()
            .position(|&x| x == out)
            .expect("e ⊗ (v↘d) lies below the boundary meet")
    };
    let mut q = Quantaloid::from_fn(format!("D({})", v.name()), objects, homs, ids, comp);
    q.diagonal = Some(Box::new(DiagonalInfo { base: v.clone(), elems }));
    Ok(q)
}

/// A lax homomorphism between quantaloids: an object map and monotone
/// hom-maps. `hom_maps[r * n + s]` maps `hom(r,s)` into `hom(φr, φs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxHom {
    pub obj_map: Vec<usize>,
    pub hom_maps: Vec<Vec<usize>>,
}

impl LaxHom {
    pub fn identity(q: &Quantaloid) -> Self {
        let n = q.n();
        LaxHom {
            obj_map: (0..n).collect(),
            hom_maps: (0..n * n).map(|i| (0..q.homs[i].len()).collect()).collect(),
        }
    }

    /// `next · self`.
    pub fn then(&self, next: &LaxHom) -> LaxHom {
        let n = self.obj_map.len();
        let m = next.obj_map.len();
        let mut hom_maps = Vec::with_capacity(n * n);
        for r in 0..n {
            for s in 0..n {
                let (pr, ps) = (self.obj_map[r], self.obj_map[s]);
                let inner = &self.hom_maps[r * n + s];
                let outer = &next.hom_maps[pr * m + ps];
                hom_maps.push(inner.iter().map(|&d| outer[d]).collect());
            }
        }
        LaxHom { obj_map: self.obj_map.iter().map(|&r| next.obj_map[r]).collect(), hom_maps }
    }

    pub fn obj(&self, r: usize) -> usize {
        self.obj_map[r]
    }

    pub fn apply(&self, r: usize, s: usize, d: usize) -> usize {
        self.hom_maps[r * self.obj_map.len() + s][d]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxHomReport {
    /// monotonicity, unit law, composition law
    pub lax: ValidationReport,
    pub functorial: bool,
    pub preserves_joins: bool,
    pub strict: bool,
}

impl LaxHomReport {
    pub fn is_lax(&self) -> bool {
        self.lax.passed()
    }
}

/// Checks the lax homomorphism laws `1 ≤ φ1`, `φv∘φu ≤ φ(v∘u)` and
/// monotonicity, and records whether `φ` is a strict homomorphism.
pub fn check_lax_hom(phi: &LaxHom, src: &Quantaloid, dst: &Quantaloid) -> Result<LaxHomReport> {
    let n = src.n();
    if phi.obj_map.len() != n || phi.obj_map.iter().any(|&o| o >= dst.n()) {
        return Err(Error::schema("obj_map", "object map is not total into the target objects"));
    }
    if phi.hom_maps.len() != n * n {
        return Err(Error::schema("hom_maps", "one hom-map per pair of objects is required"));
    }
    for r in 0..n {
        for s in 0..n {
            let hm = &phi.hom_maps[r * n + s];
            let target = dst.hom(phi.obj(r), phi.obj(s));
            if hm.len() != src.hom(r, s).len() || hm.iter().any(|&d| d >= target.len()) {
                return Err(Error::schema(
                    format!("hom_maps/{}/{}", src.objects[r], src.objects[s]),
                    "hom-map is not total into the target hom-lattice",
                ));
            }
        }
    }
    let mut lax = ValidationReport::default();
    let mut mono = None;
    let mut joins = true;
    'm: for r in 0..n {
        for s in 0..n {
            let h = src.hom(r, s);
            let (pr, ps) = (phi.obj(r), phi.obj(s));
            for a in 0..h.len() {
                for b in 0..h.len() {
                    let (fa, fb) = (phi.apply(r, s, a), phi.apply(r, s, b));
                    if h.leq(a, b) && !dst.leq(pr, ps, fa, fb) {
                        mono = Some(format!("{} ≤ {} in hom({},{}) not preserved", h.label(a), h.label(b), src.objects[r], src.objects[s]));
                        break 'm;
                    }
                    if phi.apply(r, s, h.join(a, b)) != dst.join(pr, ps, fa, fb) {
                        joins = false;
                    }
                }
            }
            if phi.apply(r, s, h.bottom()) != dst.bot(pr, ps) {
                joins = false;
            }
        }
    }
    lax.push("monotone", mono);
    let mut unit = None;
    let mut functorial = true;
    for t in 0..n {
        let pt = phi.obj(t);
        let img = phi.apply(t, t, src.id(t));
        if !dst.leq(pt, pt, dst.id(pt), img) {
            unit = unit.or(Some(format!("object {}: 1 ≰ φ(1)", src.objects[t])));
        }
        if img != dst.id(pt) {
            functorial = false;
        }
    }
    lax.push("unit", unit);
    let mut comp = None;
    'c: for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let (pr, ps, pt) = (phi.obj(r), phi.obj(s), phi.obj(t));
                for u in 0..src.hom(r, s).len() {
                    for v in 0..src.hom(s, t).len() {
                        let lhs = dst.comp(pr, ps, pt, phi.apply(r, s, u), phi.apply(s, t, v));
                        let rhs = phi.apply(r, t, src.comp(r, s, t, u, v));
                        if lhs != rhs {
                            functorial = false;
                        }
                        if !dst.leq(pr, pt, lhs, rhs) {
                            comp = Some(format!(
                                "objects {},{},{}: u={} v={}",
                                src.objects[r], src.objects[s], src.objects[t],
                                src.hom(r, s).label(u), src.hom(s, t).label(v)
                            ));
                            break 'c;
                        }
                    }
                }
            }
        }
    }
    lax.push("composition", comp);
    let strict = lax.passed() && functorial && joins;
    Ok(LaxHomReport { lax, functorial, preserves_joins: joins, strict })
}

/// The embedding `ι: V → DV` and its retractions `δ`, `γ`.
#[derive(Clone, Debug)]
pub struct Globalizations {
    pub iota: LaxHom,
    pub delta: LaxHom,
    pub gamma: LaxHom,
}

/// Builds `ι(v) = v: k ⇸ k`, `δ(d: u ⇸ v) = v↘d` and `γ(d: u ⇸ v) = d↙u`.
pub fn globalizations(dv: &Quantaloid) -> Result<Globalizations> {
    let info = dv.diagonal_info().ok_or_else(|| Error::Refused("not a diagonal quantaloid".into()))?;
    let v = &info.base;
    let l = v.lattice();
    let n = l.len();
    let k = v.unit();
    let iota = LaxHom {
        obj_map: vec![k],
        hom_maps: vec![(0..n).map(|d| info.lookup(k, k, d).expect("k is the top element")).collect()],
    };
    let mut delta_maps = Vec::with_capacity(n * n);
    let mut gamma_maps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let carrier = &info.elems[a * n + b];
            delta_maps.push(carrier.iter().map(|&d| v.rext(0, 0, 0, b, d)).collect());
            gamma_maps.push(carrier.iter().map(|&d| v.rlift(0, 0, 0, d, a)).collect());
        }
    }
    Ok(Globalizations {
        iota,
        delta: LaxHom { obj_map: vec![0; n], hom_maps: delta_maps },
        gamma: LaxHom { obj_map: vec![0; n], hom_maps: gamma_maps },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for q in [two(), luk(3), add_chain(3), max_chain(2), free_z2()] {
            assert!(validate_quantaloid(&q).passed(), "{}", q.name());
        }
    }

    #[test]
    fn add_chain_truncates() {
        let q = add_chain(3);
        assert_eq!(q.tensor(2, 2), 3);
        assert_eq!(q.unit(), 0);
        assert_eq!(q.lattice().top(), 0);
        assert_eq!(q.lattice().bottom(), 3);
    }

    #[test]
    fn residuals_in_two() {
        let q = two();
        for w in 0..2 {
            assert_eq!(q.rext(0, 0, 0, 1, w), w);
        }
    }

    #[test]
    fn divisibility() {
        assert!(check_divisible(&two()).divisible);
        assert!(check_divisible(&luk(3)).divisible);
        let z2 = check_divisible(&free_z2());
        assert!(!z2.divisible);
        assert!(!z2.integral);
        assert!(diagonal(&free_z2()).is_err());
    }

    #[test]
    fn d2_hom_sets() {
        let d2 = diagonal(&two()).unwrap();
        assert_eq!(d2.hom(1, 1).len(), 2);
        for (a, b) in [(0, 0), (0, 1), (1, 0)] {
            assert_eq!(d2.hom(a, b).len(), 1);
        }
        assert!(validate_quantaloid(&d2).passed());
    }

    #[test]
    fn non_associative_monoid_is_refused() {
        let bad = free_monoid(&["a", "b"], &[vec![1, 0], vec![0, 0]]);
        assert!(matches!(bad, Err(Error::Refused(_))));
    }

    #[test]
    fn globalization_retractions() {
        let v = luk(3);
        let dv = diagonal(&v).unwrap();
        let g = globalizations(&dv).unwrap();
        let id = LaxHom::identity(&v);
        assert_eq!(g.iota.then(&g.delta), id);
        assert_eq!(g.iota.then(&g.gamma), id);
        assert!(check_lax_hom(&g.iota, &v, &dv).unwrap().strict);
    }
}
