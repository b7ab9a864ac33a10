//! The acceptance suite: one line per criterion.
//!
//! Runs without the libtest harness so that the verdict lines are always
//! printed. A criterion recorded as a known deviation is printed as FAIL
//! and must fail exactly where recorded; anything else failing, or a known
//! deviation starting to pass, fails the target.

use std::sync::Arc;
use std::time::Instant;

use qlaws::distlaw::{builtin_law, check_law, DistLaw, IdentityLaw, Universe};
use qlaws::extension::{
    builtin_extension, check_0, check_extension_conditions, check_phi_psi, check_psi_phi, corpus_profile, phi,
    row_join_family, violator_corpus, ExtHarness, ExtensionFamily,
};
use qlaws::laxalg::{
    algebra_to_category, build_example, category_to_algebra, check_functor, check_hom, check_qcategory,
    enumerate_algebras, ExampleSpec, LaxAlgebra, QCategory,
};
use qlaws::monads::{Budget, Monad, MonadKind};
use qlaws::presheaf::check_monad_laws;
use qlaws::qrel::{all_maps, QRel, Relation};
use qlaws::quantaloid::{
    add_chain, diagonal, free_z2, globalizations, luk, two, validate_quantaloid, LaxHom, Quantaloid,
};
use qlaws::report::Check;
use qlaws::theory::hofmann::{
    barr_hofmann_extension, check_admissible, check_induced_by_barr_hofmann, check_left_whiskering, check_minimality, compare_with_hofmann,
    monotone_theories,
};
use qlaws::theory::{builtin_theory, check_galois_law, check_galois_theory, maximal_law, TopTheory};
use qlaws::util::odometer;

/// One sub-statement of a criterion.
struct Item {
    what: String,
    ok: bool,
    detail: String,
}

fn item(what: impl Into<String>, ok: bool, detail: impl Into<String>) -> Item {
    Item { what: what.into(), ok, detail: detail.into() }
}

fn first_failure(cs: &[Check]) -> String {
    cs.iter()
        .find(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_else(|| c.status.to_string())))
        .unwrap_or_default()
}

fn monad(q: &Quantaloid, kind: MonadKind) -> Monad {
    Monad::standard(q, kind, 2).unwrap()
}

fn law(name: &str, q: &Quantaloid, t: &Monad) -> Arc<dyn DistLaw> {
    Arc::from(builtin_law(name, q, t).unwrap())
}

/// The builtin laws with the strictness the examples claim.
fn builtin_laws() -> Vec<(Quantaloid, MonadKind, &'static str, bool)> {
    vec![
        (two(), MonadKind::Identity, "identity", true),
        (two(), MonadKind::List, "tensor", true),
        (diagonal(&luk(3)).unwrap(), MonadKind::List, "tensor", true),
        (two(), MonadKind::Powerset, "delta", false),
        (luk(2), MonadKind::Powerset, "delta", false),
        (two(), MonadKind::Ultrafilter, "beta", false),
    ]
}

fn c1() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    for q in [two(), diagonal(&two()).unwrap(), luk(3), free_z2()] {
        let mut sampled = 0;
        let mut bad = String::new();
        let mut sets = 0;
        for n in 0..=3 {
            for base in Universe::sizes(&q, &[n]).arrays {
                sets += 1;
                let cs = check_monad_laws(&q, &base, &b).unwrap();
                sampled += cs.iter().filter(|c| c.status == qlaws::report::Status::PassSampled).count();
                if let Some(c) = cs.iter().find(|c| !c.passed() || !c.strict) {
                    bad = format!("X = {base:?}: {} {}", c.name, c.witness.clone().unwrap_or_default());
                }
            }
        }
        out.push(item(
            format!("P_Q strict over {}", q.name()),
            bad.is_empty(),
            if bad.is_empty() { format!("{sets} sets, {sampled} sampled checks") } else { bad },
        ));
    }
    out
}

fn c2() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    for (q, kind, name, strict) in builtin_laws() {
        let t = monad(&q, kind);
        let lam = law(name, &q, &t);
        let small = check_law(&q, &t, lam.as_ref(), &Universe::sizes(&q, &[1, 2]), &b).unwrap();
        let big = check_law(&q, &t, lam.as_ref(), &Universe::sizes(&q, &[3]), &b).unwrap();
        let all_pass = small.iter().chain(&big).all(Check::passed);
        let strict_ok = !strict || small.iter().chain(&big).filter(|c| c.name != "law.monotone").all(|c| c.strict);
        let points = big.iter().all(|c| c.status == qlaws::report::Status::PassExhaustive || c.points >= 500);
        let sampled: Vec<&str> = small.iter().filter(|c| c.status != qlaws::report::Status::PassExhaustive).map(|c| c.name.as_str()).collect();
        out.push(item(
            format!("{name} over {} with {}", q.name(), t.name()),
            all_pass && strict_ok && points,
            if !all_pass {
                first_failure(&small.iter().chain(&big).cloned().collect::<Vec<_>>())
            } else if !strict_ok {
                "not strict".into()
            } else if !points {
                "fewer than 500 points at size 3".into()
            } else if sampled.is_empty() {
                if strict { "strict".into() } else { "monotone".into() }
            } else {
                format!("sampled at sizes ≤ 2: {}", sampled.join(", "))
            },
        ));
    }
    out
}

fn meet_theory() -> TopTheory {
    TopTheory::from_fn("meet", |q, _t, w| {
        qlaws::presheaf::Presheaf::new(0, vec![q.lattice().meet_all(w.iter().map(|s| s.comps[0]))])
    })
}

fn c3() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    for (q, kind, name, _) in builtin_laws() {
        let t = monad(&q, kind);
        let u = Universe::sizes(&q, &[1, 2]);
        let cs = check_galois_law(&q, &t, law(name, &q, &t), &u, &b).unwrap();
        let ok = cs.iter().all(Check::passed) && cs[0].strict;
        out.push(item(format!("law {name} over {}", q.name()), ok, first_failure(&cs)));
    }
    let theories: Vec<(Quantaloid, MonadKind, TopTheory)> = vec![
        (two(), MonadKind::Identity, builtin_theory("identity", &two(), &Monad::identity()).unwrap()),
        (luk(2), MonadKind::Identity, builtin_theory("identity", &luk(2), &Monad::identity()).unwrap()),
        (luk(3), MonadKind::List, builtin_theory("tensor", &luk(3), &monad(&luk(3), MonadKind::List)).unwrap()),
        (two(), MonadKind::Powerset, builtin_theory("top", &two(), &monad(&two(), MonadKind::Powerset)).unwrap()),
        (two(), MonadKind::Powerset, meet_theory()),
        (two(), MonadKind::Ultrafilter, builtin_theory("ultra", &two(), &monad(&two(), MonadKind::Ultrafilter)).unwrap()),
    ];
    for (q, kind, xi) in theories {
        let t = monad(&q, kind);
        let u = Universe::sizes(&q, &[1, 2]);
        let cs = check_galois_theory(&q, &t, &xi, &u, &b).unwrap();
        out.push(item(format!("theory {} over {} with {}", xi.name(), q.name(), t.name()), cs.iter().all(Check::passed), first_failure(&cs)));
    }
    out
}

fn c4() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    for (q, kind, name, _) in builtin_laws() {
        let t = monad(&q, kind);
        let c = check_psi_phi(&q, &t, law(name, &q, &t), &Universe::sizes(&q, &[1, 2]), &b).unwrap();
        out.push(item(format!("ΨΦ = 1 on {name} over {}", q.name()), c.passed(), c.witness.unwrap_or_default()));
    }
    let q = two();
    let u = Universe::sizes(&q, &[1, 2]);
    let mut tested = 0;
    let mut bad = String::new();
    for e in violator_corpus() {
        let t = monad(&q, e.monad);
        let h = ExtHarness::new(&q, &t, e.family.as_ref(), &b);
        if !check_0(&h, &u).unwrap().passed() {
            continue;
        }
        tested += 1;
        let c = check_phi_psi(&q, &t, e.family.clone(), &u, &b).unwrap();
        if !c.passed() {
            bad = format!("{}: {}", e.family.name(), c.witness.unwrap_or_default());
        }
    }
    out.push(item("ΦΨ = 1 on (0)-families of the corpus", bad.is_empty(), if bad.is_empty() { format!("{tested} families") } else { bad }));
    let t = Monad::identity();
    let c = check_phi_psi(&q, &t, Arc::new(row_join_family()), &u, &b).unwrap();
    out.push(item("ΦΨ ≠ 1 on the planted (0)-violator", c.failed(), c.witness.unwrap_or_default()));
    out
}

fn c5() -> Vec<Item> {
    let q = two();
    let b = Budget::default();
    let u = Universe::sizes(&q, &[1, 2]);
    let corpus = violator_corpus();
    let mut out = vec![item("corpus has at least 12 families", corpus.len() >= 12, format!("{} families", corpus.len()))];
    let mut disc = 0;
    let mut profile = String::new();
    for e in &corpus {
        let t = monad(&q, e.monad);
        let r = check_extension_conditions(&q, &t, e.family.clone(), &u, &b).unwrap();
        disc += r.discrepancies();
        let p = corpus_profile(&r);
        if p != e.breaks {
            profile = format!("{}: breaks {:?}, expected {:?}", r.family, p, e.breaks);
        }
    }
    out.push(item("zero law/extension discrepancies", disc == 0, format!("{disc} discrepancies")));
    out.push(item("each family breaks exactly its recorded axioms", profile.is_empty(), profile));
    out
}

/// Reflexive and transitive relations on `n` points, by brute force over
/// all `2^(n²)` relations.
fn preorders(n: usize) -> usize {
    let rel = |m: u32, x: usize, y: usize| m >> (x * n + y) & 1 == 1;
    (0..1u32 << (n * n))
        .filter(|&m| {
            (0..n).all(|x| rel(m, x, x))
                && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel(m, x, y) && rel(m, y, z)) || rel(m, x, z))))
        })
        .count()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c6() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    let q = two();
    let t = Monad::identity();
    for n in 1..=3 {
        let got = enumerate_algebras(&q, &t, &IdentityLaw, &vec![0; n], &b).unwrap().len();
        let want = preorders(n);
        out.push(item(format!("(two, Id) at |X| = {n}"), got == want, format!("{got} algebras, {want} preorders")));
    }
    let d2 = diagonal(&two()).unwrap();
    for n in 1..=3 {
        let mut got = 0;
        for base in odometer(&vec![2; n]) {
            got += enumerate_algebras(&d2, &t, &IdentityLaw, &base, &b).unwrap().len();
        }
        let want: usize = (0..=n).map(|k| binom(n, k) * preorders(k)).sum();
        out.push(item(format!("(D2, Id) at |X| = {n}, all arrays"), got == want, format!("{got} algebras, {want} partial orders")));
    }
    out
}

fn c7() -> Vec<Item> {
    let b = Budget::default();
    let t = Monad::identity();
    let mut out = Vec::new();
    for q in [two(), diagonal(&two()).unwrap()] {
        let mut algs: Vec<LaxAlgebra> = Vec::new();
        for base in Universe::sizes(&q, &[1, 2]).arrays {
            algs.extend(enumerate_algebras(&q, &t, &IdentityLaw, &base, &b).unwrap());
        }
        let mut iso = true;
        for a in &algs {
            let c = algebra_to_category(&q, a, &b).unwrap();
            let back = category_to_algebra(&c);
            iso &= back.p == a.p && algebra_to_category(&q, &back, &b).unwrap().alpha == c.alpha;
        }
        let mut pairs = 0;
        let mut disagree = String::new();
        for a in &algs {
            for c in &algs {
                let (ca, cc) = (algebra_to_category(&q, a, &b).unwrap(), algebra_to_category(&q, c, &b).unwrap());
                for f in all_maps(&a.base, &c.base, 1000).unwrap() {
                    pairs += 1;
                    let h = check_hom(&q, &t, &f, a, c).passed();
                    let g = check_functor(&q, &t, &f, &ca, &cc).unwrap().passed();
                    if h != g && disagree.is_empty() {
                        disagree = format!("f = {f:?}: hom {h}, functor {g}");
                    }
                }
            }
        }
        out.push(item(format!("roundtrip over {}", q.name()), iso, format!("{} algebras", algs.len())));
        out.push(item(
            format!("hom verdicts agree over {}", q.name()),
            disagree.is_empty(),
            if disagree.is_empty() { format!("{pairs} maps") } else { disagree },
        ));
    }
    out
}

fn c8() -> Vec<Item> {
    let b = Budget::default();
    let mut forward = (0, String::new());
    let mut converse = (0, 0, String::new());
    let mut prop81 = (0, String::new());
    let mut thm83 = (0, String::new());
    let mut induced = (0, String::new());
    let mut exhaustive = true;
    for q in [two(), luk(2)] {
        for kind in [MonadKind::Identity, MonadKind::Powerset, MonadKind::Ultrafilter] {
            let t = monad(&q, kind);
            let u = Universe::sizes(&q, &[1, 2]);
            let (corpus, ex) = monotone_theories(&q, &t, &b).unwrap();
            exhaustive &= ex;
            for xi in &corpus {
                let cmp = compare_with_hofmann(&q, &t, xi, &b).unwrap();
                let at = format!("{} over {} with {}", xi.name(), q.name(), t.name());
                if cmp.natural_theory {
                    forward.0 += 1;
                    if !cmp.hofmann_passed && forward.1.is_empty() {
                        forward.1 = format!("{at}: {}", first_failure(&cmp.hofmann));
                    }
                }
                if cmp.hofmann_passed {
                    converse.0 += 1;
                    if cmp.natural_theory {
                        converse.1 += 1;
                    } else if converse.2.is_empty() {
                        converse.2 = format!("{at}: {}", first_failure(&cmp.definition));
                    }
                    let txi = barr_hofmann_extension(&q, &t, xi).unwrap();
                    let adm = check_admissible(&q, &t, &txi, &u, &b).unwrap();
                    let whisk = check_left_whiskering(&q, &t, &txi, &u, &b).unwrap();
                    let fams: Vec<Arc<dyn ExtensionFamily>> = std::iter::once(Arc::new(txi) as Arc<dyn ExtensionFamily>)
                        .chain(std::iter::once(Arc::new(phi(Arc::new(maximal_law(xi)))) as Arc<dyn ExtensionFamily>))
                        .chain(
                            ["identity", "delta", "egli-milner", "top"]
                                .iter()
                                .filter_map(|n| builtin_extension(n, &q, &t).ok())
                                .map(|f| Arc::new(f) as Arc<dyn ExtensionFamily>),
                        )
                        .collect();
                    let mins = check_minimality(&q, &t, xi, &fams, &u, &b).unwrap();
                    thm83.0 += 1;
                    induced.0 += 1;
                    let ind = check_induced_by_barr_hofmann(&q, &t, xi, &u, &b).unwrap();
                    if !ind.iter().all(Check::passed) && induced.1.is_empty() {
                        induced.1 = format!("{at}: {}", first_failure(&ind));
                    }
                    let ok = adm.passed() && adm.strict && whisk.passed() && mins.iter().all(|c| c.status != qlaws::report::Status::Fail);
                    if !ok && thm83.1.is_empty() {
                        thm83.1 = format!("{at}: {}", first_failure(&[adm, whisk].into_iter().chain(mins).collect::<Vec<_>>()));
                    }
                }
                prop81.0 += 1;
                if cmp.condition2 && !cmp.condition2_star && prop81.1.is_empty() {
                    prop81.1 = at;
                }
            }
        }
    }
    vec![
        item("corpora are exhaustive", exhaustive, ""),
        item(
            "natural theory ⟹ Hofmann",
            forward.1.is_empty(),
            match (forward.0, forward.1.is_empty()) {
                (0, true) => "vacuous: no natural theory in the corpora".to_string(),
                (n, true) => format!("{n} theories"),
                _ => forward.1.clone(),
            },
        ),
        item(
            "Hofmann ⟹ natural theory",
            converse.2.is_empty(),
            format!("{} of {} Hofmann theories; {}", converse.1, converse.0, converse.2),
        ),
        item("Hofmann ⟹ induced by Ψ(T_ξ)", induced.1.is_empty(), if induced.1.is_empty() { format!("{} theories", induced.0) } else { induced.1.clone() }),
        item("condition 2 ⟹ 2*", prop81.1.is_empty(), if prop81.1.is_empty() { format!("{} theories", prop81.0) } else { prop81.1.clone() }),
        item("T_ξ algebraic, left-whiskering and minimal", thm83.1.is_empty(), if thm83.1.is_empty() { format!("{} theories", thm83.0) } else { thm83.1.clone() }),
    ]
}

fn c9() -> Vec<Item> {
    let mut out = Vec::new();
    for v in [two(), luk(2), luk(3), add_chain(3)] {
        let dv = diagonal(&v).unwrap();
        let rep = validate_quantaloid(&dv);
        let bad = rep.failures().next().map(|a| format!("{}: {}", a.axiom, a.witness.clone().unwrap_or_default()));
        out.push(item(format!("{} validates", dv.name()), rep.passed(), bad.unwrap_or_default()));
        let g = globalizations(&dv).unwrap();
        let id = LaxHom::identity(&v);
        out.push(item(format!("δι = γι = 1 for {}", v.name()), g.iota.then(&g.delta) == id && g.iota.then(&g.gamma) == id, ""));
    }
    // objects ⊥, ⊤; hom(⊤, ⊤) = {⊥ < ⊤} with ∧; every other hom-set is {⊥}
    let d2 = diagonal(&two()).unwrap();
    let mut ok = d2.n() == 2 && d2.hom(1, 1).len() == 2 && d2.id(1) == 1 && d2.id(0) == 0;
    for r in 0..2 {
        for s in 0..2 {
            if (r, s) != (1, 1) {
                ok &= d2.hom(r, s).len() == 1;
            }
        }
    }
    for u in 0..2 {
        for v in 0..2 {
            ok &= d2.comp(1, 1, 1, u, v) == (u & v);
        }
    }
    out.push(item("D2 hom-sets", ok, ""));
    out
}

fn c10() -> Vec<Item> {
    let b = Budget::default();
    let mut out = Vec::new();
    let mut bad = String::new();
    let mut inputs = 0;
    for d01 in 0..=3 {
        for d10 in 0..=3 {
            inputs += 1;
            let spec = ExampleSpec::PartialMetricPlus { n: 3, d: vec![vec![0, d01], vec![d10, 0]] };
            match build_example(&spec, &b) {
                Ok(inst) => {
                    let c = QCategory::from_algebra(&inst.alg).unwrap();
                    if let Some(f) = check_qcategory(&inst.q, &c).into_iter().find(|c| !c.passed()) {
                        bad = format!("d = ({d01}, {d10}): {}", f.name);
                    }
                }
                Err(e) => bad = format!("d = ({d01}, {d10}): {e}"),
            }
        }
    }
    out.push(item("d⁺ gives D(add_chain(3))-categories", bad.is_empty(), if bad.is_empty() { format!("{inputs} inputs") } else { bad }));

    let v = add_chain(2);
    let q = diagonal(&v).unwrap();
    let info = q.diagonal_info().unwrap().clone();
    let t = Monad::identity();
    let xi = builtin_theory("identity", &q, &t).unwrap();
    let lam = maximal_law(&xi);
    let mut agree = true;
    let mut invariant = true;
    let mut count = 0;
    for base in odometer(&[3, 3]) {
        let mut got: Vec<QRel> = enumerate_algebras(&q, &t, &lam, &base, &b)
            .unwrap()
            .iter()
            .map(|a| QCategory::from_algebra(a).unwrap().a)
            .collect();
        got.sort();
        count += got.len();
        for a in &got {
            let e = |x: usize, y: usize| info.elem(base[x], base[y], a.get(x, y));
            for x in 0..2 {
                for y in 0..2 {
                    if e(x, x) == e(y, y) && e(x, y) != e(x, x) {
                        invariant = false;
                    }
                }
            }
        }
        // the oracle: every relation, filtered by the Q-category laws and
        // 1_{|x|} ≤ a(x,y) at equal arrays, composed entry by entry
        let sizes: Vec<usize> = (0..4).map(|i| q.hom(base[i / 2], base[i % 2]).len()).collect();
        let mut want: Vec<QRel> = odometer(&sizes)
            .map(|entries| QRel { src: base.clone(), dst: base.clone(), entries })
            .filter(|a| {
                let refl = (0..2).all(|x| q.leq(base[x], base[x], q.id(base[x]), a.get(x, x)));
                let trans = (0..2).all(|x| {
                    (0..2).all(|y| {
                        (0..2).all(|z| {
                            let c = q.comp(base[x], base[y], base[z], a.get(x, y), a.get(y, z));
                            q.leq(base[x], base[z], c, a.get(x, z))
                        })
                    })
                });
                let arrays = (0..2).all(|x| {
                    (0..2).all(|y| base[x] != base[y] || q.leq(base[x], base[y], q.id(base[x]), a.get(x, y)))
                });
                refl && trans && arrays
            })
            .collect();
        want.sort();
        agree &= got == want;
    }
    out.push(item("λ^ξ-algebras equal the oracle filter", agree, format!("{count} algebras over 9 arrays")));
    out.push(item("array-invariance holds", invariant, ""));
    out
}

fn c11() -> Vec<Item> {
    let runs: &[&[&str]] = &[
        &["check", "law", "--quantaloid", "builtin:two", "--monad", "powerset", "--law", "delta", "--sizes", "1,2,3", "--budget", "2000"],
        &["check", "law", "--quantaloid", "builtin:luk:2", "--monad", "powerset", "--law", "delta", "--sizes", "2"],
        &["check", "extension", "--quantaloid", "builtin:two", "--monad", "list", "--extension", "tensor"],
        &["roundtrip", "--quantaloid", "builtin:two", "--monad", "list", "--law", "tensor"],
        &["check", "hofmann", "--quantaloid", "builtin:luk:2", "--monad", "powerset", "--theory", "top"],
    ];
    let mut out = Vec::new();
    for args in runs {
        let argv = || std::iter::once("qlaws").chain(args.iter().copied()).chain(["--format", "json", "--seed", "11"]);
        let a = qlaws::cli::run(argv());
        let b = qlaws::cli::run(argv());
        out.push(item(
            args[..2].join(" ") + " " + args.last().unwrap(),
            a.code == b.code && a.code != 2 && a.stdout == b.stdout && !a.stdout.is_empty(),
            format!("exit {}, {} bytes", a.code, a.stdout.len()),
        ));
    }
    out
}

/// Sub-statements of criteria that are recorded as unattainable.
const KNOWN_RED: &[(usize, &str)] = &[(8, "Hofmann ⟹ natural theory")];

fn main() {
    type Criterion = (usize, &'static str, fn() -> Vec<Item>);
    let criteria: [Criterion; 11] = [
        (1, "presheaf monad laws hold strictly", c1),
        (2, "builtin laws pass (a)-(e) and monotonicity", c2),
        (3, "Galois closure of laws and theories", c3),
        (4, "Φ/Ψ roundtrips", c4),
        (5, "law/extension correspondence on the corpus", c5),
        (6, "algebra counts equal the oracle counts", c6),
        (7, "algebras and categories are isomorphic", c7),
        (8, "Hofmann suite", c8),
        (9, "diagonal construction", c9),
        (10, "example instances", c10),
        (11, "determinism", c11),
    ];
    let mut unexpected = 0;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let items = run();
        let secs = start.elapsed().as_secs_f64();
        let ok = items.iter().all(|i| i.ok);
        println!("criterion {n:>2}: {} {title} ({secs:.1}s)", if ok { "PASS" } else { "FAIL" });
        for i in &items {
            let known = KNOWN_RED.contains(&(n, i.what.as_str()));
            let tag = match (i.ok, known) {
                (true, false) => "ok",
                (false, true) => "red (known deviation)",
                (false, false) => "FAILED",
                (true, true) => "passes but is recorded as red",
            };
            if i.ok == known {
                unexpected += 1;
            }
            println!("    {tag:<10} {}{}", i.what, if i.detail.is_empty() { String::new() } else { format!(": {}", i.detail) });
        }
        if secs > 300.0 {
            println!("    FAILED     took longer than 5 minutes");
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected verdicts");
        std::process::exit(1);
    }
}
