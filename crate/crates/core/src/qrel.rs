//! Sets over the objects of a quantaloid and the relations between them.
//!
//! A set over `Q₀` is represented by its array: `arr[x]` is the object `|x|`.
//! Relations are dense matrices; [`Relation`] also admits lazily evaluated
//! relations such as counits, which are too large to tabulate.

use crate::error::{Error, Result};
use crate::quantaloid::Quantaloid;

/// A finite set with labels and an array map into `Q₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjOverQ {
    pub labels: Vec<String>,
    pub array: Vec<usize>,
}

impl ObjOverQ {
    pub fn new(labels: Vec<String>, array: Vec<usize>) -> Self {
        assert_eq!(labels.len(), array.len());
        ObjOverQ { labels, array }
    }

    /// Elements labelled `x0, x1, …`.
    pub fn anonymous(array: Vec<usize>) -> Self {
        let labels = (0..array.len()).map(|i| format!("x{i}")).collect();
        ObjOverQ { labels, array }
    }

    pub fn len(&self) -> usize {
        self.array.len()
    }

    pub fn is_empty(&self) -> bool {
        self.array.is_empty()
    }
}

/// Anything that can be read as a `Q`-relation `X ⇸ Y`.
pub trait Relation {
    fn src(&self) -> &[usize];
    fn dst(&self) -> &[usize];
    /// The entry `φ(x,y): |x| → |y|`.
    fn get(&self, x: usize, y: usize) -> usize;
}

/// A dense `Q`-relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRel {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub entries: Vec<usize>,
}

impl Relation for QRel {
    fn src(&self) -> &[usize] {
        &self.src
    }
    fn dst(&self) -> &[usize] {
        &self.dst
    }
    fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.dst.len() + y]
    }
}

impl QRel {
    pub fn from_fn(src: &[usize], dst: &[usize], f: impl Fn(usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(src.len() * dst.len());
        for x in 0..src.len() {
            for y in 0..dst.len() {
                entries.push(f(x, y));
            }
        }
        QRel { src: src.to_vec(), dst: dst.to_vec(), entries }
    }

    /// Tabulates any relation.
    pub fn tabulate(r: &dyn Relation) -> Self {
        QRel::from_fn(r.src(), r.dst(), |x, y| r.get(x, y))
    }

    pub fn bottom(q: &Quantaloid, src: &[usize], dst: &[usize]) -> Self {
        QRel::from_fn(src, dst, |x, y| q.bot(src[x], dst[y]))
    }

    pub fn top(q: &Quantaloid, src: &[usize], dst: &[usize]) -> Self {
        QRel::from_fn(src, dst, |x, y| q.top(src[x], dst[y]))
    }

    /// The identity relation `1_X^∘`.
    pub fn identity(q: &Quantaloid, arr: &[usize]) -> Self {
        QRel::from_fn(arr, arr, |x, y| if x == y { q.id(arr[x]) } else { q.bot(arr[x], arr[y]) })
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        let m = self.dst.len();
        self.entries[x * m + y] = v;
    }

    /// Checks that every entry lies in its hom-lattice.
    pub fn validate(&self, q: &Quantaloid) -> Result<()> {
        if self.entries.len() != self.src.len() * self.dst.len() {
            return Err(Error::schema("entries", "relation table has the wrong size"));
        }
        for x in 0..self.src.len() {
            for y in 0..self.dst.len() {
                if self.get(x, y) >= q.hom(self.src[x], self.dst[y]).len() {
                    return Err(Error::schema(format!("entries/{x}/{y}"), "entry outside its hom-lattice"));
                }
            }
        }
        Ok(())
    }

    /// The transpose `φ°: Y ⇸ X`, available over a commutative quantale.
    pub fn transpose(&self, q: &Quantaloid) -> Result<QRel> {
        if !q.is_quantale() || !q.is_commutative() {
            return Err(Error::Refused("transpose needs a commutative quantale".into()));
        }
        Ok(QRel::from_fn(&self.dst, &self.src, |y, x| self.get(x, y)))
    }

    /// Enumerates every relation `src ⇸ dst` in lexicographic order.
    pub fn enumerate(q: &Quantaloid, src: &[usize], dst: &[usize], limit: usize) -> Result<Vec<QRel>> {
        let sizes: Vec<usize> = (0..src.len() * dst.len())
            .map(|i| q.hom(src[i / dst.len()], dst[i % dst.len()]).len())
            .collect();
        let total = sizes.iter().try_fold(1u128, |acc, &s| acc.checked_mul(s as u128)).unwrap_or(u128::MAX);
        if total > limit as u128 {
            return Err(Error::budget("relations", total, limit as u128));
        }
        let mut out = Vec::with_capacity(total as usize);
        for digits in crate::util::odometer(&sizes) {
            out.push(QRel { src: src.to_vec(), dst: dst.to_vec(), entries: digits });
        }
        Ok(out)
    }
}

fn check_boundary(q: &Quantaloid, left: &[usize], right: &[usize]) -> Result<()> {
    if left != right {
        return Err(Error::Refused(format!(
            "boundary mismatch in {}: {:?} vs {:?}",
            q.name(),
            left,
            right
        )));
    }
    Ok(())
}

/// `(ψ∘φ)(x,z) = ⋁_y ψ(y,z)∘φ(x,y)`.
pub fn compose(q: &Quantaloid, psi: &dyn Relation, phi: &dyn Relation) -> Result<QRel> {
    check_boundary(q, phi.dst(), psi.src())?;
    let (xs, ys, zs) = (phi.src(), phi.dst(), psi.dst());
    Ok(QRel::from_fn(xs, zs, |x, z| {
        let h = q.hom(xs[x], zs[z]);
        h.join_all((0..ys.len()).map(|y| q.comp(xs[x], ys[y], zs[z], phi.get(x, y), psi.get(y, z))))
    }))
}

/// Entrywise order of two relations with the same boundaries.
pub fn rel_leq(q: &Quantaloid, a: &dyn Relation, b: &dyn Relation) -> Result<bool> {
    check_boundary(q, a.src(), b.src())?;
    check_boundary(q, a.dst(), b.dst())?;
    let (xs, ys) = (a.src(), a.dst());
    for x in 0..xs.len() {
        for y in 0..ys.len() {
            if !q.leq(xs[x], ys[y], a.get(x, y), b.get(x, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Entrywise join.
pub fn rel_join(q: &Quantaloid, a: &QRel, b: &QRel) -> QRel {
    QRel::from_fn(&a.src, &a.dst, |x, y| q.join(a.src[x], a.dst[y], a.get(x, y), b.get(x, y)))
}

/// Checks that `f: src → dst` preserves arrays.
pub fn check_map(f: &[usize], src: &[usize], dst: &[usize]) -> Result<()> {
    if f.len() != src.len() {
        return Err(Error::schema("map", "map is not total"));
    }
    for (x, &y) in f.iter().enumerate() {
        if y >= dst.len() {
            return Err(Error::schema(format!("map/{x}"), "image outside the codomain"));
        }
        if src[x] != dst[y] {
            return Err(Error::Refused(format!("map is not array-preserving at element {x}")));
        }
    }
    Ok(())
}

/// The graph `f_∘: X ⇸ Y`.
pub fn graph(q: &Quantaloid, f: &[usize], src: &[usize], dst: &[usize]) -> Result<QRel> {
    check_map(f, src, dst)?;
    Ok(QRel::from_fn(src, dst, |x, y| if f[x] == y { q.id(src[x]) } else { q.bot(src[x], dst[y]) }))
}

/// The cograph `f^∘: Y ⇸ X`.
pub fn cograph(q: &Quantaloid, f: &[usize], src: &[usize], dst: &[usize]) -> Result<QRel> {
    check_map(f, src, dst)?;
    Ok(QRel::from_fn(dst, src, |y, x| if f[x] == y { q.id(src[x]) } else { q.bot(dst[y], src[x]) }))
}

/// Which side a map is whiskered on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Whisker {
    /// `h^∘∘φ` for `φ: X ⇸ Z`, `h: Y → Z`.
    CographAfter,
    /// `h_∘∘φ` for `φ: X ⇸ Y`, `h: Y → Z`.
    GraphAfter,
    /// `φ∘h^∘` for `φ: X ⇸ Z`, `h: X → Y`.
    CographBefore,
    /// `φ∘h_∘` for `φ: Y ⇸ Z`, `h: X → Y`.
    GraphBefore,
}

/// Composes `φ` with the graph or cograph of `h` on the requested side.
/// `h_src`, `h_dst` are the arrays of the domain and codomain of `h`.
pub fn whisker(
    q: &Quantaloid,
    side: Whisker,
    h: &[usize],
    h_src: &[usize],
    h_dst: &[usize],
    phi: &dyn Relation,
) -> Result<QRel> {
    match side {
        Whisker::CographAfter => compose(q, &cograph(q, h, h_src, h_dst)?, phi),
        Whisker::GraphAfter => compose(q, &graph(q, h, h_src, h_dst)?, phi),
        Whisker::CographBefore => compose(q, phi, &cograph(q, h, h_src, h_dst)?),
        Whisker::GraphBefore => compose(q, phi, &graph(q, h, h_src, h_dst)?),
    }
}

/// All array-preserving maps `src → dst`.
pub fn all_maps(src: &[usize], dst: &[usize], limit: usize) -> Result<Vec<Vec<usize>>> {
    let choices: Vec<Vec<usize>> = src
        .iter()
        .map(|&a| (0..dst.len()).filter(|&y| dst[y] == a).collect())
        .collect();
    let total = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::budget("maps", total, limit as u128));
    }
    let sizes: Vec<usize> = choices.iter().map(|c| c.len()).collect();
    Ok(crate::util::odometer(&sizes)
        .map(|d| d.iter().enumerate().map(|(i, &j)| choices[i][j]).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::{diagonal, two};

    #[test]
    fn identity_is_neutral() {
        let q = two();
        let a = vec![0, 0];
        let b = vec![0, 0, 0];
        for phi in QRel::enumerate(&q, &a, &b, 1 << 10).unwrap() {
            assert_eq!(compose(&q, &phi, &QRel::identity(&q, &a)).unwrap(), phi);
            assert_eq!(compose(&q, &QRel::identity(&q, &b), &phi).unwrap(), phi);
        }
    }

    #[test]
    fn bottom_absorbs() {
        let q = diagonal(&two()).unwrap();
        let arr = vec![0, 1];
        let b = QRel::bottom(&q, &arr, &arr);
        let c = compose(&q, &b, &b).unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn boundary_mismatch() {
        let q = two();
        let a = QRel::bottom(&q, &[0], &[0, 0]);
        assert!(compose(&q, &a, &a).is_err());
    }

    #[test]
    fn strict_order_detected() {
        let q = two();
        let a = QRel::bottom(&q, &[0, 0], &[0]);
        let mut b = a.clone();
        b.set(1, 0, 1);
        assert!(rel_leq(&q, &a, &b).unwrap());
        assert!(!rel_leq(&q, &b, &a).unwrap());
    }

    #[test]
    fn maps_must_preserve_arrays() {
        let q = diagonal(&two()).unwrap();
        assert!(graph(&q, &[0], &[1], &[0, 1]).is_err());
        assert!(graph(&q, &[1], &[1], &[0, 1]).is_ok());
    }
}
