use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qlaws::distlaw::{builtin_law, check_law, DistLaw, Universe};
use qlaws::extension::{phi, ExtensionFamily};
use qlaws::functors::{ev_embedding, reflector, check_normed};
use qlaws::laxalg::QCategory;
use qlaws::monads::{Budget, Monad, MonadKind};
use qlaws::presheaf::{bind, direct_image, mate, presheaf_leq, unmate, yoneda, Presheaf};
use qlaws::qrel::{cograph, compose, graph, rel_join, rel_leq, QRel, Relation};
use qlaws::quantaloid::{add_chain, diagonal, free_z2, luk, max_chain, two, Quantaloid};
use qlaws::theory::hofmann::monotone_theories;
use qlaws::theory::{maximal_law, TopTheory};

fn zoo() -> &'static [Quantaloid] {
    static ZOO: OnceLock<Vec<Quantaloid>> = OnceLock::new();
    ZOO.get_or_init(|| {
        vec![
            two(),
            luk(3),
            add_chain(3),
            max_chain(2),
            free_z2(),
            diagonal(&two()).unwrap(),
            diagonal(&luk(2)).unwrap(),
            diagonal(&add_chain(2)).unwrap(),
        ]
    })
}

/// Raw draws, reduced modulo whatever range they land in.
#[derive(Clone, Debug)]
struct Raw(Vec<usize>);

impl Raw {
    fn take(&mut self, n: usize) -> usize {
        let r = self.0.pop().unwrap_or(0);
        if n == 0 { 0 } else { r % n }
    }

    fn array(&mut self, q: &Quantaloid, len: usize) -> Vec<usize> {
        (0..len).map(|_| self.take(q.n())).collect()
    }

    fn relation(&mut self, q: &Quantaloid, src: &[usize], dst: &[usize]) -> QRel {
        let mut r = QRel::bottom(q, src, dst);
        for x in 0..src.len() {
            for y in 0..dst.len() {
                r.set(x, y, self.take(q.hom(src[x], dst[y]).len()));
            }
        }
        r
    }

    fn presheaf(&mut self, q: &Quantaloid, base: &[usize], cod: usize) -> Presheaf {
        Presheaf::new(cod, base.iter().map(|&a| self.take(q.hom(a, cod).len())).collect())
    }
}

fn raw() -> impl Strategy<Value = Raw> {
    prop::collection::vec(any::<usize>(), 64).prop_map(Raw)
}

fn sizes() -> impl Strategy<Value = (usize, usize, usize)> {
    (0..4usize, 0..4usize, 0..4usize)
}

/// `(χ ↙ φ)(y, z) = ⋀_x χ(x, z) ↙ φ(x, y)`, entry by entry.
fn lift(q: &Quantaloid, chi: &QRel, phi: &QRel) -> QRel {
    QRel::from_fn(&phi.dst, &chi.dst, |y, z| {
        q.hom(phi.dst[y], chi.dst[z]).meet_all(
            (0..phi.src.len()).map(|x| q.rlift(phi.src[x], phi.dst[y], chi.dst[z], chi.get(x, z), phi.get(x, y))),
        )
    })
}

/// `(ψ ↘ χ)(x, y) = ⋀_z ψ(y, z) ↘ χ(x, z)`.
fn extend(q: &Quantaloid, psi: &QRel, chi: &QRel) -> QRel {
    QRel::from_fn(&chi.src, &psi.src, |x, y| {
        q.hom(chi.src[x], psi.src[y]).meet_all(
            (0..psi.dst.len()).map(|z| q.rext(chi.src[x], psi.src[y], psi.dst[z], psi.get(y, z), chi.get(x, z))),
        )
    })
}

fn closure(q: &Quantaloid, mut a: QRel) -> QRel {
    a = rel_join(q, &a, &QRel::identity(q, &a.src.clone()));
    loop {
        let next = rel_join(q, &a, &compose(q, &a, &a).unwrap());
        if next == a {
            return a;
        }
        a = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_residuated(qi in 0..8usize, (nx, ny, nz) in sizes(), mut r in raw()) {
        let q = &zoo()[qi];
        let (xs, ys, zs) = (r.array(q, nx), r.array(q, ny), r.array(q, nz));
        let phi = r.relation(q, &xs, &ys);
        let psi = r.relation(q, &ys, &zs);
        let chi = r.relation(q, &xs, &zs);
        let below = rel_leq(q, &compose(q, &psi, &phi).unwrap(), &chi).unwrap();
        prop_assert_eq!(below, rel_leq(q, &psi, &lift(q, &chi, &phi)).unwrap());
        prop_assert_eq!(below, rel_leq(q, &phi, &extend(q, &psi, &chi)).unwrap());
    }

    #[test]
    fn composition_is_associative_and_preserves_joins(qi in 0..8usize, (nx, ny, nz) in sizes(), nw in 0..3usize, mut r in raw()) {
        let q = &zoo()[qi];
        let (xs, ys, zs, ws) = (r.array(q, nx), r.array(q, ny), r.array(q, nz), r.array(q, nw));
        let phi = r.relation(q, &xs, &ys);
        let phi2 = r.relation(q, &xs, &ys);
        let psi = r.relation(q, &ys, &zs);
        let chi = r.relation(q, &zs, &ws);
        let c = |a: &QRel, b: &QRel| compose(q, a, b).unwrap();
        prop_assert_eq!(c(&chi, &c(&psi, &phi)), c(&c(&chi, &psi), &phi));
        prop_assert_eq!(c(&psi, &rel_join(q, &phi, &phi2)), rel_join(q, &c(&psi, &phi), &c(&psi, &phi2)));
        let psi2 = r.relation(q, &ys, &zs);
        prop_assert_eq!(c(&rel_join(q, &psi, &psi2), &phi), rel_join(q, &c(&psi, &phi), &c(&psi2, &phi)));
    }

    #[test]
    fn mate_is_an_order_isomorphism(qi in 0..8usize, (nx, ny, _) in sizes(), mut r in raw()) {
        let q = &zoo()[qi];
        let (xs, ys) = (r.array(q, nx), r.array(q, ny));
        let a = r.relation(q, &xs, &ys);
        let b = r.relation(q, &xs, &ys);
        let pointwise = mate(&a).iter().zip(mate(&b)).all(|(s, t)| presheaf_leq(q, &xs, s, &t));
        prop_assert_eq!(rel_leq(q, &a, &b).unwrap(), pointwise);
        prop_assert_eq!(unmate(&mate(&a), &xs), a);
    }

    #[test]
    fn graph_is_left_adjoint_to_cograph(qi in 0..8usize, nx in 0..4usize, ny in 1..4usize, mut r in raw()) {
        let q = &zoo()[qi];
        let ys = r.array(q, ny);
        let f: Vec<usize> = (0..nx).map(|_| r.take(ny)).collect();
        let xs: Vec<usize> = f.iter().map(|&y| ys[y]).collect();
        let fs = graph(q, &f, &xs, &ys).unwrap();
        let fo = cograph(q, &f, &xs, &ys).unwrap();
        prop_assert!(rel_leq(q, &QRel::identity(q, &xs), &compose(q, &fo, &fs).unwrap()).unwrap());
        prop_assert!(rel_leq(q, &compose(q, &fs, &fo).unwrap(), &QRel::identity(q, &ys)).unwrap());
    }

    #[test]
    fn direct_images_preserve_joins(qi in 0..8usize, nx in 0..4usize, ny in 1..4usize, mut r in raw()) {
        let q = &zoo()[qi];
        let ys = r.array(q, ny);
        let f: Vec<usize> = (0..nx).map(|_| r.take(ny)).collect();
        let xs: Vec<usize> = f.iter().map(|&y| ys[y]).collect();
        let s = r.take(q.n());
        let (a, b) = (r.presheaf(q, &xs, s), r.presheaf(q, &xs, s));
        let join = |p: &Presheaf, t: &Presheaf, base: &[usize]| {
            Presheaf::new(s, (0..base.len()).map(|i| q.join(base[i], s, p.comps[i], t.comps[i])).collect())
        };
        prop_assert_eq!(
            direct_image(q, &f, &ys, &join(&a, &b, &xs)),
            join(&direct_image(q, &f, &ys, &a), &direct_image(q, &f, &ys, &b), &ys)
        );
    }

    #[test]
    fn yoneda_is_a_unit_for_bind(qi in 0..8usize, nx in 0..4usize, nu in 1..4usize, mut r in raw()) {
        let q = &zoo()[qi];
        let xs = r.array(q, nx);
        let s = r.take(q.n());
        let sigma = r.presheaf(q, &xs, s);
        let ys: Vec<Presheaf> = (0..xs.len()).map(|y| yoneda(q, &xs, y)).collect();
        prop_assert_eq!(bind(q, &xs, &ys, &sigma), sigma);
        let universe: Vec<Presheaf> = (0..nu).map(|_| { let c = r.take(q.n()); r.presheaf(q, &xs, c) }).collect();
        let arr: Vec<usize> = universe.iter().map(|p| p.cod).collect();
        let i = r.take(nu);
        prop_assert_eq!(&bind(q, &xs, &universe, &yoneda(q, &arr, i)), &universe[i]);
    }

    #[test]
    fn embedding_then_reflection_is_the_identity(vi in 0..3usize, n in 1..5usize, mut r in raw()) {
        let v = [two(), luk(3), add_chain(3)][vi].clone();
        let dv = diagonal(&v).unwrap();
        let base = r.array(&dv, n);
        let a = closure(&dv, r.relation(&dv, &base, &base));
        let c = QCategory { base, a };
        let nc = ev_embedding(&dv, &c).unwrap();
        for chk in check_normed(&dv, &nc).unwrap() {
            prop_assert!(chk.passed(), "{}: {:?}", chk.name, chk.witness);
        }
        let back = reflector(&dv, &nc).unwrap();
        prop_assert_eq!(back.base, c.base);
        prop_assert_eq!(back.a, c.a);
    }
}

fn corpora() -> &'static [(Quantaloid, Monad, Vec<TopTheory>)] {
    static CORPORA: OnceLock<Vec<(Quantaloid, Monad, Vec<TopTheory>)>> = OnceLock::new();
    CORPORA.get_or_init(|| {
        [(two(), MonadKind::Powerset), (two(), MonadKind::Ultrafilter), (luk(2), MonadKind::Identity), (luk(2), MonadKind::Powerset)]
            .into_iter()
            .map(|(q, kind)| {
                let t = Monad::standard(&q, kind, 2).unwrap();
                let (xis, _) = monotone_theories(&q, &t, &Budget::default()).unwrap();
                (q, t, xis)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // the extension of a maximal law does not look at the source point
    #[test]
    fn maximal_extensions_ignore_the_source_point(ci in 0..4usize, xi in any::<usize>(), nx in 0..3usize, ny in 0..3usize, mut r in raw()) {
        let (q, t, xis) = &corpora()[ci];
        let xi = &xis[xi % xis.len()];
        let lam: Arc<dyn DistLaw> = Arc::new(maximal_law(xi));
        let fam = phi(lam);
        let (xs, ys) = (vec![0; nx], vec![0; ny]);
        let rel = r.relation(q, &xs, &ys);
        let tx = t.tset(q, &xs, 4096).unwrap();
        let ty = t.tset(q, &ys, 4096).unwrap();
        for v in &ty.elems {
            let col = fam.column(q, t, &rel, &tx, v);
            prop_assert!(col.comps.windows(2).all(|w| w[0] == w[1]), "{:?} at {v:?}", col.comps);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_checks_are_determined_by_the_seed(seed in any::<u64>()) {
        let q = two();
        let t = Monad::standard(&q, MonadKind::Powerset, 2).unwrap();
        let lam = builtin_law("delta", &q, &t).unwrap();
        let b = Budget { seed, domain: 500, samples: 20, ..Budget::default() };
        let u = Universe::sizes(&q, &[3]);
        let run = || serde_json::to_string(&check_law(&q, &t, lam.as_ref(), &u, &b).unwrap()).unwrap();
        prop_assert_eq!(run(), run());
    }
}
