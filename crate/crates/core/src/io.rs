//! JSON definitions for quantaloids, relations, presheaves, theories and
//! lax algebras.
//!
//! Every structure refers to hom-lattice elements and objects by label.
//! Parsing reports the JSON path of the first offending key.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::laxalg::TQCategory;
use crate::monads::{Budget, Monad, MonadKind, SetMonad, Zeta};
use crate::presheaf::Presheaf;
use crate::qrel::{QRel, Relation};
use crate::quantaloid::{add_chain, diagonal, free_z2, luk, max_chain, two, FiniteLattice, Quantaloid};
use crate::theory::{Objects, TopTheory};

fn join(path: &str, key: impl std::fmt::Display) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}/{key}")
    }
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| Error::schema(join(path, key), "missing key"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(path, "expected a string"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| Error::schema(path, "expected a non-negative integer"))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>> {
    arr(v, path)?.iter().enumerate().map(|(i, s)| string(s, &join(path, i)).map(str::to_string)).collect()
}

/// Reads a JSON file.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// A builtin quantaloid by name: `two`, `luk:N`, `add_chain:N`,
/// `max_chain:N`, `free_z2`, `d2`, or `diagonal:<builtin>`.
pub fn builtin_quantaloid(name: &str) -> Result<Quantaloid> {
    let (head, rest) = name.split_once(':').unwrap_or((name, ""));
    let n = || -> Result<usize> {
        rest.parse().map_err(|_| Error::Refused(format!("builtin {head} needs a size, e.g. {head}:3")))
    };
    match head {
        "two" => Ok(two()),
        "d2" => diagonal(&two()),
        "luk" => Ok(luk(n()?.max(1))),
        "add_chain" => Ok(add_chain(n()?)),
        "max_chain" => Ok(max_chain(n()?)),
        "free_z2" => Ok(free_z2()),
        "diagonal" => diagonal(&builtin_quantaloid(rest)?),
        _ => Err(Error::Refused(format!("unknown builtin quantaloid {name}"))),
    }
}

/// The builtin reference that rebuilds `q`, read off its name and
/// confirmed against the tables.
pub fn builtin_ref(q: &Quantaloid) -> Option<String> {
    fn guess(name: &str) -> Option<String> {
        if name == "two" || name == "free_monoid(e,g)" {
            return Some(if name == "two" { "two" } else { "free_z2" }.into());
        }
        let (head, arg) = name.strip_suffix(')')?.split_once('(')?;
        match head {
            "D" => guess(arg).map(|v| format!("diagonal:{v}")),
            "luk" | "add_chain" | "max_chain" => arg.parse::<usize>().ok().map(|n| format!("{head}:{n}")),
            _ => None,
        }
    }
    let name = guess(q.name())?;
    let rebuilt = builtin_quantaloid(&name).ok()?;
    (quantaloid_to_json(&rebuilt) == quantaloid_to_json(q)).then(|| format!("builtin:{name}"))
}

/// A quantaloid from a CLI argument: `builtin:<name>` or a file path.
pub fn load_quantaloid(arg: &str) -> Result<Quantaloid> {
    match arg.strip_prefix("builtin:") {
        Some(name) => builtin_quantaloid(name),
        None => parse_quantaloid(&read_json(Path::new(arg))?, ""),
    }
}

/// Parses `{"builtin": ...}` references and explicit table definitions.
pub fn parse_quantaloid(v: &Value, path: &str) -> Result<Quantaloid> {
    if let Some(s) = v.as_str() {
        return builtin_quantaloid(s.strip_prefix("builtin:").unwrap_or(s));
    }
    if let Some(b) = v.get("builtin") {
        let name = string(b, &join(path, "builtin"))?;
        let mut spec = name.to_string();
        if let Some(n) = v.get("n") {
            spec = format!("{name}:{}", index(n, &join(path, "n"))?);
        }
        if name == "diagonal" {
            return diagonal(&parse_quantaloid(field(v, path, "of")?, &join(path, "of"))?);
        }
        return builtin_quantaloid(&spec);
    }
    let name = match v.get("name") {
        Some(n) => string(n, &join(path, "name"))?.to_string(),
        None => "custom".to_string(),
    };
    let objects = strings(field(v, path, "objects")?, &join(path, "objects"))?;
    let n = objects.len();
    if n == 0 {
        return Err(Error::schema(join(path, "objects"), "at least one object is required"));
    }
    let obj = |s: &str, p: &str| -> Result<usize> {
        objects.iter().position(|o| o == s).ok_or_else(|| Error::schema(p, format!("unknown object {s}")))
    };

    let mut homs: Vec<Option<FiniteLattice>> = vec![None; n * n];
    let hp = join(path, "homs");
    for (i, h) in arr(field(v, path, "homs")?, &hp)?.iter().enumerate() {
        let p = join(&hp, i);
        let r = obj(string(field(h, &p, "src")?, &join(&p, "src"))?, &join(&p, "src"))?;
        let s = obj(string(field(h, &p, "dst")?, &join(&p, "dst"))?, &join(&p, "dst"))?;
        let elems = strings(field(h, &p, "elements")?, &join(&p, "elements"))?;
        let m = elems.len();
        let mut leq = vec![false; m * m];
        for a in 0..m {
            leq[a * m + a] = true;
        }
        let lp = join(&p, "leq");
        for (j, pair) in arr(field(h, &p, "leq")?, &lp)?.iter().enumerate() {
            let pp = join(&lp, j);
            let ab = strings(pair, &pp)?;
            if ab.len() != 2 {
                return Err(Error::schema(pp, "expected a pair [a, b] meaning a ≤ b"));
            }
            let pos = |s: &str| {
                elems.iter().position(|e| e == s).ok_or_else(|| Error::schema(&pp, format!("unknown element {s}")))
            };
            leq[pos(&ab[0])? * m + pos(&ab[1])?] = true;
        }
        for k in 0..m {
            for a in 0..m {
                for b in 0..m {
                    if leq[a * m + k] && leq[k * m + b] {
                        leq[a * m + b] = true;
                    }
                }
            }
        }
        if homs[r * n + s].is_some() {
            return Err(Error::schema(p, "duplicate hom-lattice"));
        }
        homs[r * n + s] = Some(FiniteLattice::from_leq(elems, leq).map_err(|why| Error::schema(lp, why))?);
    }
    let mut full = Vec::with_capacity(n * n);
    for (i, h) in homs.into_iter().enumerate() {
        full.push(h.ok_or_else(|| Error::schema(join(&hp, format!("{}/{}", objects[i / n], objects[i % n])), "missing hom-lattice"))?);
    }
    let homs = full;
    let elem = |r: usize, s: usize, v: &Value, p: &str| -> Result<usize> {
        let label = string(v, p)?;
        homs[r * n + s]
            .index_of(label)
            .ok_or_else(|| Error::schema(p, format!("{label} is not in hom({}, {})", objects[r], objects[s])))
    };

    let ip = join(path, "identities");
    let idv = field(v, path, "identities")?;
    let mut ids = Vec::with_capacity(n);
    for (s, o) in objects.iter().enumerate() {
        let p = join(&ip, o);
        ids.push(elem(s, s, field(idv, &ip, o)?, &p)?);
    }

    let mut compose: Vec<Vec<Option<usize>>> = Vec::with_capacity(n * n * n);
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                compose.push(vec![None; homs[r * n + s].len() * homs[s * n + t].len()]);
            }
        }
    }
    let cp = join(path, "compose");
    for (i, block) in arr(field(v, path, "compose")?, &cp)?.iter().enumerate() {
        let p = join(&cp, i);
        let (rst, triples, tp) = if block.is_array() {
            if n != 1 {
                return Err(Error::schema(p, "bare triples are only allowed for a quantale"));
            }
            ((0, 0, 0), std::slice::from_ref(block), p.clone())
        } else {
            let os = strings(field(block, &p, "objects")?, &join(&p, "objects"))?;
            if os.len() != 3 {
                return Err(Error::schema(join(&p, "objects"), "expected three objects [r, s, t]"));
            }
            let op = join(&p, "objects");
            let rst = (obj(&os[0], &op)?, obj(&os[1], &op)?, obj(&os[2], &op)?);
            let tp = join(&p, "table");
            (rst, arr(field(block, &p, "table")?, &tp)?.as_slice(), tp)
        };
        let (r, s, t) = rst;
        let wide = homs[s * n + t].len();
        for (j, tr) in triples.iter().enumerate() {
            let pj = if block.is_array() { tp.clone() } else { join(&tp, j) };
            let parts = arr(tr, &pj)?;
            if parts.len() != 3 {
                return Err(Error::schema(pj, "expected a triple [v, u, v∘u]"));
            }
            let vv = elem(s, t, &parts[0], &join(&pj, 0))?;
            let u = elem(r, s, &parts[1], &join(&pj, 1))?;
            let w = elem(r, t, &parts[2], &join(&pj, 2))?;
            compose[(r * n + s) * n + t][u * wide + vv] = Some(w);
        }
    }
    Quantaloid::from_tables(name, objects, homs, ids, compose)
}

/// The explicit table form of a quantaloid.
pub fn quantaloid_to_json(q: &Quantaloid) -> Value {
    let n = q.n();
    let o = q.objects();
    let mut homs = Vec::new();
    for r in 0..n {
        for s in 0..n {
            let l = q.hom(r, s);
            let mut leq = Vec::new();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if a != b && l.leq(a, b) {
                        leq.push(json!([l.label(a), l.label(b)]));
                    }
                }
            }
            homs.push(json!({"src": o[r], "dst": o[s], "elements": l.labels(), "leq": leq}));
        }
    }
    let ids: Map<String, Value> = (0..n).map(|s| (o[s].clone(), json!(q.hom(s, s).label(q.id(s))))).collect();
    let mut compose = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let mut table = Vec::new();
                for u in 0..q.hom(r, s).len() {
                    for v in 0..q.hom(s, t).len() {
                        table.push(json!([q.hom(s, t).label(v), q.hom(r, s).label(u), q.hom(r, t).label(q.comp(r, s, t, u, v))]));
                    }
                }
                if n == 1 {
                    compose = table;
                } else {
                    compose.push(json!({"objects": [o[r], o[s], o[t]], "table": table}));
                }
            }
        }
    }
    json!({"name": q.name(), "objects": o, "homs": homs, "identities": ids, "compose": compose})
}

/// A list of object labels.
pub fn parse_array(q: &Quantaloid, v: &Value, path: &str) -> Result<Vec<usize>> {
    strings(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| q.object_index(s).ok_or_else(|| Error::schema(join(path, i), format!("unknown object {s}"))))
        .collect()
}

pub fn array_to_json(q: &Quantaloid, a: &[usize]) -> Value {
    json!(a.iter().map(|&r| q.objects()[r].as_str()).collect::<Vec<_>>())
}

fn hom_elem(q: &Quantaloid, r: usize, s: usize, v: &Value, path: &str) -> Result<usize> {
    let label = string(v, path)?;
    q.hom(r, s).index_of(label).ok_or_else(|| {
        Error::schema(path, format!("{label} is not in hom({}, {})", q.objects()[r], q.objects()[s]))
    })
}

/// `{"src": [...], "dst": [...], "entries": [[x, y, e], ...]}`, omitted
/// entries are `⊥`.
pub fn parse_relation(q: &Quantaloid, v: &Value, path: &str) -> Result<QRel> {
    let src = parse_array(q, field(v, path, "src")?, &join(path, "src"))?;
    let dst = parse_array(q, field(v, path, "dst")?, &join(path, "dst"))?;
    let mut rel = QRel::bottom(q, &src, &dst);
    let ep = join(path, "entries");
    for (i, e) in arr(field(v, path, "entries")?, &ep)?.iter().enumerate() {
        let p = join(&ep, i);
        let parts = arr(e, &p)?;
        if parts.len() != 3 {
            return Err(Error::schema(p, "expected [x, y, element]"));
        }
        let x = index(&parts[0], &join(&p, 0))?;
        let y = index(&parts[1], &join(&p, 1))?;
        if x >= src.len() || y >= dst.len() {
            return Err(Error::schema(p, "index outside the carrier"));
        }
        rel.set(x, y, hom_elem(q, src[x], dst[y], &parts[2], &join(&p, 2))?);
    }
    Ok(rel)
}

/// Writes every entry that is not `⊥`.
pub fn relation_to_json(q: &Quantaloid, r: &QRel) -> Value {
    let mut entries = Vec::new();
    for x in 0..r.src.len() {
        for y in 0..r.dst.len() {
            let e = r.entries[x * r.dst.len() + y];
            if e != q.bot(r.src[x], r.dst[y]) {
                entries.push(json!([x, y, q.hom(r.src[x], r.dst[y]).label(e)]));
            }
        }
    }
    json!({"src": array_to_json(q, &r.src), "dst": array_to_json(q, &r.dst), "entries": entries})
}

/// `{"cod": s, "comps": [e_x, ...]}` over a base array.
pub fn parse_presheaf(q: &Quantaloid, base: &[usize], v: &Value, path: &str) -> Result<Presheaf> {
    let cs = string(field(v, path, "cod")?, &join(path, "cod"))?;
    let cod = q.object_index(cs).ok_or_else(|| Error::schema(join(path, "cod"), format!("unknown object {cs}")))?;
    let cp = join(path, "comps");
    let comps = arr(field(v, path, "comps")?, &cp)?;
    if comps.len() != base.len() {
        return Err(Error::schema(cp, format!("expected {} components", base.len())));
    }
    let comps = comps
        .iter()
        .enumerate()
        .map(|(x, c)| hom_elem(q, base[x], cod, c, &join(&cp, x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Presheaf::new(cod, comps))
}

pub fn presheaf_to_json(q: &Quantaloid, base: &[usize], p: &Presheaf) -> Value {
    let comps: Vec<&str> = base.iter().enumerate().map(|(x, &r)| q.hom(r, p.cod).label(p.comps[x])).collect();
    json!({"cod": q.objects()[p.cod], "comps": comps})
}

/// `ζ` from a CLI selector: `point`, `trivial`, `tensor`, `meet`, `join`
/// or `custom:<file>` with `{"entries": [[[objects...], object], ...]}`.
pub fn parse_zeta(q: &Quantaloid, arg: &str) -> Result<Zeta> {
    match arg {
        "point" => Ok(Zeta::Point),
        "trivial" => Ok(Zeta::Trivial),
        "tensor" => Ok(Zeta::Tensor),
        "meet" => Ok(Zeta::Meet),
        "join" => Ok(Zeta::Join),
        _ => match arg.strip_prefix("custom:") {
            Some(file) => zeta_from_json(q, &read_json(Path::new(file))?),
            None => Err(Error::Refused(format!("unknown ζ {arg}"))),
        },
    }
}

pub fn zeta_from_json(q: &Quantaloid, v: &Value) -> Result<Zeta> {
    let mut table = Vec::new();
    for (i, e) in arr(field(v, "", "entries")?, "entries")?.iter().enumerate() {
        let p = join("entries", i);
        let parts = arr(e, &p)?;
        if parts.len() != 2 {
            return Err(Error::schema(p, "expected [[objects...], object]"));
        }
        let u = parse_array(q, &parts[0], &join(&p, 0))?;
        let o = string(&parts[1], &join(&p, 1))?;
        let o = q.object_index(o).ok_or_else(|| Error::schema(join(&p, 1), format!("unknown object {o}")))?;
        table.push((u, o));
    }
    Ok(Zeta::Table(table))
}

/// A theory table: `{"name", "monad", "entries": [{"input": [...], "output": ...}]}`,
/// presheaves on `Q₀`.
pub fn theory_to_json(q: &Quantaloid, t: &Monad, xi: &TopTheory, budget: &Budget) -> Result<Value> {
    let table = if xi.is_table() { xi.clone() } else { xi.tabulate(q, t, budget)? };
    let ids: Vec<usize> = (0..q.n()).collect();
    let entries: Vec<Value> = table
        .entries()
        .expect("tabulated")
        .iter()
        .map(|(w, v)| {
            json!({
                "input": w.iter().map(|s| presheaf_to_json(q, &ids, s)).collect::<Vec<_>>(),
                "output": presheaf_to_json(q, &ids, v),
            })
        })
        .collect();
    Ok(json!({"name": xi.name(), "monad": t.name(), "entries": entries}))
}

/// Reads a theory table, keyed in the monad's normal form. Every element
/// of `TPQ₀` must have an entry.
pub fn parse_theory(q: &Quantaloid, t: &Monad, v: &Value, budget: &Budget) -> Result<TopTheory> {
    let ids: Vec<usize> = (0..q.n()).collect();
    let objs = Objects::new(q, budget)?;
    let name = match v.get("name") {
        Some(n) => string(n, "name")?.to_string(),
        None => "custom".into(),
    };
    let mut table = BTreeMap::new();
    for (i, e) in arr(field(v, "", "entries")?, "entries")?.iter().enumerate() {
        let p = join("entries", i);
        let ip = join(&p, "input");
        let mut u = Vec::new();
        for (j, s) in arr(field(e, &p, "input")?, &ip)?.iter().enumerate() {
            let sigma = parse_presheaf(q, &ids, s, &join(&ip, j))?;
            u.push(objs.pq0.index_of(&sigma).expect("every presheaf on Q₀ is enumerated"));
        }
        let u = t.normalize(u);
        if !t.in_universe(objs.pq0.len(), &u) {
            return Err(Error::schema(ip, format!("not an element of {}PQ₀", t.name())));
        }
        let out = parse_presheaf(q, &ids, field(e, &p, "output")?, &join(&p, "output"))?;
        table.insert(objs.entries(&u), out);
    }
    for u in SetMonad::enumerate(t, objs.pq0.len(), budget.domain)? {
        if !table.contains_key(&objs.entries(&u)) {
            return Err(Error::schema("entries", format!("no entry for input {u:?} (indices into PQ₀)")));
        }
    }
    Ok(TopTheory::from_table(name, table))
}

/// A lax algebra given by its structure relation `α: X ⇸ TX`.
pub struct StructureDef {
    pub q: Quantaloid,
    pub t: Monad,
    pub law: Option<String>,
    pub labels: Vec<String>,
    pub cat: TQCategory,
}

/// `{"quantaloid", "monad", "law", "array", "labels", "alpha": [[x, [u...], e], ...]}`.
///
/// The monad defaults to the identity; `u` may be a bare index for it.
/// Omitted entries are `⊥`.
pub fn parse_structure(v: &Value, budget: &Budget) -> Result<StructureDef> {
    let q = parse_quantaloid(field(v, "", "quantaloid")?, "quantaloid")?;
    let kind = match v.get("monad") {
        Some(m) => {
            let s = string(m, "monad")?;
            MonadKind::parse(s).ok_or_else(|| Error::schema("monad", format!("unknown monad {s}")))?
        }
        None => MonadKind::Identity,
    };
    let t = match v.get("zeta") {
        Some(z) => Monad::lift(&q, kind, parse_zeta(&q, string(z, "zeta")?)?, budget.list_len)?,
        None => Monad::standard(&q, kind, budget.list_len)?,
    };
    let law = v.get("law").map(|l| string(l, "law").map(str::to_string)).transpose()?;
    let base = parse_array(&q, field(v, "", "array")?, "array")?;
    let labels = match v.get("labels") {
        Some(l) => {
            let ls = strings(l, "labels")?;
            if ls.len() != base.len() {
                return Err(Error::schema("labels", "one label per element is required"));
            }
            ls
        }
        None => (0..base.len()).map(|i| format!("x{i}")).collect(),
    };
    let tx = t.tset(&q, &base, budget.domain)?;
    let mut alpha = QRel::bottom(&q, &base, &tx.array);
    for (i, e) in arr(field(v, "", "alpha")?, "alpha")?.iter().enumerate() {
        let p = join("alpha", i);
        let parts = arr(e, &p)?;
        if parts.len() != 3 {
            return Err(Error::schema(p, "expected [x, u, element]"));
        }
        let x = index(&parts[0], &join(&p, 0))?;
        let up = join(&p, 1);
        let u: Vec<usize> = match parts[1].as_array() {
            Some(us) => us.iter().enumerate().map(|(j, a)| index(a, &join(&up, j))).collect::<Result<_>>()?,
            None => vec![index(&parts[1], &up)?],
        };
        if x >= base.len() || u.iter().any(|&y| y >= base.len()) {
            return Err(Error::schema(p, "index outside the carrier"));
        }
        let u = t.normalize(u);
        let j = tx.index_of(&u).ok_or_else(|| Error::schema(&up, format!("{u:?} is not in the enumerated {}X", t.name())))?;
        alpha.set(x, j, hom_elem(&q, base[x], tx.array[j], &parts[2], &join(&p, 2))?);
    }
    Ok(StructureDef { q, t, law, labels, cat: TQCategory { base, tx, alpha } })
}

/// Writes a structure with its quantaloid in table form, unless `q_ref`
/// names it.
pub fn structure_to_json(q: &Quantaloid, q_ref: Option<&str>, t: &Monad, law: Option<&str>, labels: &[String], cat: &TQCategory) -> Value {
    let mut alpha = Vec::new();
    for x in 0..cat.base.len() {
        for (j, u) in cat.tx.elems.iter().enumerate() {
            let e = cat.alpha.get(x, j);
            if e != q.bot(cat.base[x], cat.tx.array[j]) {
                alpha.push(json!([x, u, q.hom(cat.base[x], cat.tx.array[j]).label(e)]));
            }
        }
    }
    let mut out = Map::new();
    let q_ref = q_ref.map(str::to_string).or_else(|| builtin_ref(q));
    out.insert("quantaloid".into(), q_ref.map_or_else(|| quantaloid_to_json(q), |r| json!(r)));
    out.insert("monad".into(), json!(t.name()));
    if let Some(l) = law {
        out.insert("law".into(), json!(l));
    }
    out.insert("array".into(), array_to_json(q, &cat.base));
    out.insert("labels".into(), json!(labels));
    out.insert("alpha".into(), json!(alpha));
    Value::Object(out)
}
