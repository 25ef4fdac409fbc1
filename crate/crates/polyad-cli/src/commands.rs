use polyad::axioms::{self, AxiomSystem};
use polyad::constructions::{direct_product, gluskin_groupoid, named_example, EXAMPLE_NAMES};
use polyad::group::Verification;
use polyad::permutations::{cycle, permutation_group};
use polyad::retract::Retract;
use polyad::structure::{self, CenterKind, CyclicKind};
use polyad::subgroups::{self, Side};
use polyad::{BinaryGroupTable, ElemSet, ElementId, NaryGroup, NaryGroupoid, PermutationMap};
use serde_json::{json, Value};

use crate::common::*;
use crate::pgf::{self, Notes};
use crate::{CenterKindArg, SideArg};

fn verification_json(v: Verification) -> Value {
    match v {
        Verification::Exhaustive => json!({ "mode": "exhaustive" }),
        Verification::Sampled { samples } => json!({ "mode": "sampled", "samples": samples }),
    }
}

fn verification_text(v: Verification) -> String {
    match v {
        Verification::Exhaustive => "exhaustive".into(),
        Verification::Sampled { samples } => format!("sampled ({samples} tuples; exhaustive check over budget)"),
    }
}

fn document(g: &NaryGroupoid) -> Output {
    let text = pgf::save(g);
    Output { json: json!({ "size": g.size(), "arity": g.arity(), "pgf": text }), text }
}

pub fn verify(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let mut t = Text::new();
    t.line(format!("size {}, arity {}", g.size(), g.arity()));
    t.line("associative: yes");
    t.line("every equation with one unknown is solvable: yes");
    t.line(format!("verification: {}", verification_text(g.verification())));
    Ok(Output {
        text: t.0,
        json: json!({
            "size": g.size(),
            "arity": g.arity(),
            "group": true,
            "verification": verification_json(g.verification()),
        }),
    })
}

fn cyclic_text(g: &NaryGroup, k: &CyclicKind) -> (String, Value) {
    match k {
        CyclicKind::Cyclic { generators } => {
            let gens: Vec<&str> = generators.iter().map(|&x| g.label(x)).collect();
            (
                format!("cyclic, generated by each of {{{}}}", gens.join(", ")),
                json!({ "kind": "cyclic", "generators": gens }),
            )
        }
        CyclicKind::Semicyclic => ("semicyclic, not cyclic".into(), json!({ "kind": "semicyclic" })),
        CyclicKind::Neither => ("neither cyclic nor semicyclic".into(), json!({ "kind": "neither" })),
    }
}

pub fn info(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let backing = pgf::save(g.groupoid());
    let kind = backing.lines().nth(1).and_then(|l| l.strip_prefix("kind ")).unwrap_or("table").to_string();
    let idem = structure::idempotents(&g);
    let units = structure::units(&g)?;
    let cyc = structure::classify_cyclic(&g)?;
    let (cyc_text, cyc_json) = cyclic_text(&g, &cyc);
    let solv = structure::classify_solvability(&g)?;
    let abelian = structure::is_abelian(&g);
    let semiabelian = structure::is_semiabelian(&g);
    let mut t = Text::new();
    t.line(format!("kind: {kind}"));
    t.line(format!("size: {}", g.size()));
    t.line(format!("arity: {}", g.arity()));
    t.line(format!("verification: {}", verification_text(g.verification())));
    t.line(format!("covering group order: {}", g.cover().order()));
    t.line(format!("idempotents: {}", idem.len()));
    t.line(format!("units: {}", units.len()));
    t.line(format!("abelian: {}", yes(abelian)));
    t.line(format!("semiabelian: {}", yes(semiabelian)));
    t.line(format!("cyclicity: {cyc_text}"));
    t.line(format!("semisolvable: {}", yes(solv.semisolvable)));
    t.line(format!("seminilpotent: {}", yes(solv.seminilpotent)));
    Ok(Output {
        text: t.0,
        json: json!({
            "kind": kind,
            "size": g.size(),
            "arity": g.arity(),
            "verification": verification_json(g.verification()),
            "cover_order": g.cover().order(),
            "idempotents": idem.len(),
            "units": units.len(),
            "abelian": abelian,
            "semiabelian": semiabelian,
            "cyclicity": cyc_json,
            "semisolvable": solv.semisolvable,
            "seminilpotent": solv.seminilpotent,
        }),
    })
}

fn selected(g: &NaryGroup, element: Option<&str>) -> CliResult<Vec<ElementId>> {
    match element {
        Some(e) => Ok(vec![parse_element(g, e)?]),
        None => Ok(g.elements().collect()),
    }
}

pub fn skew(ctx: &Ctx, file: &str, element: Option<&str>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let mut t = Text::new();
    let mut rows = Vec::new();
    for x in selected(&g, element)? {
        let s = g.skew(x);
        t.line(format!("skew({}) = {}", g.label(x), g.label(s)));
        rows.push(json!({ "element": g.label(x), "skew": g.label(s) }));
    }
    Ok(Output { text: t.0, json: json!({ "skew": rows }) })
}

pub fn order(ctx: &Ctx, file: &str, element: Option<&str>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let mut t = Text::new();
    let mut rows = Vec::new();
    for x in selected(&g, element)? {
        let m = structure::nadic_order(&g, x);
        t.line(format!("order({}) = {m}", g.label(x)));
        rows.push(json!({ "element": g.label(x), "order": m }));
    }
    Ok(Output { text: t.0, json: json!({ "orders": rows }) })
}

pub fn power(ctx: &Ctx, file: &str, element: &str, exp: i64) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let a = parse_element(&g, element)?;
    let p = structure::nadic_power(&g, a, exp);
    Ok(Output {
        text: format!("{}^[{exp}] = {}\n", g.label(a), g.label(p)),
        json: json!({ "element": g.label(a), "exponent": exp, "power": g.label(p) }),
    })
}

fn set_line(name: &str, g: &NaryGroup, s: &ElemSet) -> String {
    if s.is_empty() {
        format!("{name} = {{}} (empty)")
    } else {
        let count = if s.len() == 1 { "1 element".to_string() } else { format!("{} elements", s.len()) };
        format!("{name} = {} ({count})", fmt_set(g, s))
    }
}

pub fn units(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let e = structure::units(&g)?;
    Ok(Output { text: format!("{}\n", set_line("E(A)", &g, &e)), json: json!({ "units": set_json(&g, &e) }) })
}

pub fn idempotents(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let i = structure::idempotents(&g);
    Ok(Output { text: format!("{}\n", set_line("I(A)", &g, &i)), json: json!({ "idempotents": set_json(&g, &i) }) })
}

fn ms_for(g: &NaryGroup, m: Option<usize>) -> CliResult<Vec<usize>> {
    let all = structure::admissible_m(g.arity());
    match m {
        Some(m) if all.contains(&m) => Ok(vec![m]),
        Some(m) => Err(input(format!("m = {m} is not admissible: m-1 must divide n-1 = {}", g.arity() - 1))),
        None => Ok(all),
    }
}

pub fn center(ctx: &Ctx, file: &str, kind: CenterKindArg, m: Option<usize>, subset: Option<&str>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = subset.map(|s| parse_subset(&g, s)).transpose()?;
    let (ck, letter) = match kind {
        CenterKindArg::Standard => (CenterKind::Standard, "Z"),
        CenterKindArg::Weak => (CenterKind::Weak, "D"),
        CenterKindArg::T => (CenterKind::TypeT, "T"),
    };
    let mut t = Text::new();
    let mut rows = Vec::new();
    if b.is_none() && m.is_none() && matches!(kind, CenterKindArg::Standard) {
        let z = structure::center(&g)?;
        let s = structure::semicenter(&g)?;
        t.line(set_line("Z(A)", &g, &z));
        t.line(set_line("semicenter", &g, &s));
        rows.push(json!({ "name": "center", "set": set_json(&g, &z) }));
        rows.push(json!({ "name": "semicenter", "set": set_json(&g, &s) }));
    }
    for m in ms_for(&g, m)? {
        let set = structure::center_family(&g, &ck, m, b.as_ref())?;
        let name = match &b {
            Some(b) => format!("{letter}_A({}, m={m})", fmt_set(&g, b)),
            None => format!("{letter}(A, m={m})"),
        };
        t.line(set_line(&name, &g, &set));
        rows.push(json!({ "name": name, "m": m, "set": set_json(&g, &set) }));
    }
    Ok(Output { text: t.0, json: json!({ "centers": rows }) })
}

pub fn normalizer(ctx: &Ctx, file: &str, subset: &str, m: Option<usize>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = parse_subgroup(&g, subset)?;
    let mut t = Text::new();
    let mut rows = Vec::new();
    for m in ms_for(&g, m)? {
        let set = structure::normalizer_family(&g, &b, m)?;
        t.line(set_line(&format!("N(B, m={m})"), &g, &set));
        rows.push(json!({ "m": m, "set": set_json(&g, &set) }));
    }
    let checks = structure::normalizer_checks(&g, &b)?;
    t.line(set_line("HN(B)", &g, &checks.seminormalizer));
    t.line(format!("agrees with the retract normalizer: {}", yes(checks.retract_agrees)));
    t.line(format!("agrees with the correspondent group: {}", yes(checks.correspondent_agrees)));
    t.line(format!("agrees with the covering group: {}", yes(checks.cover_agrees)));
    Ok(Output {
        text: t.0,
        json: json!({
            "subgroup": set_json(&g, &b),
            "normalizers": rows,
            "seminormalizer": set_json(&g, &checks.seminormalizer),
            "retract_agrees": checks.retract_agrees,
            "correspondent_agrees": checks.correspondent_agrees,
            "cover_agrees": checks.cover_agrees,
        }),
    })
}

pub fn normality(ctx: &Ctx, file: &str, subset: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = parse_subgroup(&g, subset)?;
    let a = subgroups::normality_implications_audit(&g, &b)?;
    let mut t = Text::new();
    t.line(format!("subgroup: {}", fmt_set(&g, &b)));
    t.line(format!("invariant: {}", yes(a.invariant)));
    t.line(format!("semi-invariant: {}", yes(a.semi_invariant)));
    for (m, v) in &a.m_semi_invariant {
        t.line(format!("{m}-semi-invariant: {}", yes(*v)));
    }
    t.line(format!("normal: {}", yes(a.normal)));
    t.line(format!("weakly normal: {}", yes(a.weakly_normal)));
    let sigma_all = a.sigma_normal.iter().all(|(_, v)| *v);
    let sigma_any = a.sigma_normal.iter().filter(|(_, v)| *v).count();
    t.line(format!("sigma-normal for {sigma_any} of {} checked sigma", a.sigma_normal.len()));
    t.line(format!("implications consistent: {}", yes(a.consistent())));
    for v in &a.violations {
        t.line(format!("violation: {v}"));
    }
    let sigma: Vec<Value> =
        a.sigma_normal.iter().map(|(s, v)| json!({ "sigma": s.cycle_string(), "holds": v })).collect();
    let msemi: Vec<Value> = a.m_semi_invariant.iter().map(|(m, v)| json!({ "m": m, "holds": v })).collect();
    let out = Output {
        text: t.0,
        json: json!({
            "subgroup": set_json(&g, &b),
            "invariant": a.invariant,
            "semi_invariant": a.semi_invariant,
            "m_semi_invariant": msemi,
            "normal": a.normal,
            "weakly_normal": a.weakly_normal,
            "sigma_normal": sigma,
            "sigma_normal_all": sigma_all,
            "consistent": a.consistent(),
            "violations": a.violations,
        }),
    };
    if a.consistent() {
        Ok(out)
    } else {
        Err(CliError::Verification(format!("normality implications violated: {}", a.violations.join("; "))))
    }
}

pub fn subgroups(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let mut subs = subgroups::all_subgroups(&g)?;
    subs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.members.to_vec().cmp(&b.members.to_vec())));
    let mut t = Text::new();
    let mut orders: Vec<(usize, usize)> = Vec::new();
    for s in &subs {
        match orders.last_mut() {
            Some((o, c)) if *o == s.len() => *c += 1,
            _ => orders.push((s.len(), 1)),
        }
    }
    t.line(format!("{} subgroups", subs.len()));
    for (o, c) in &orders {
        t.line(format!("order {o}: {c} {}", if *c == 1 { "subgroup" } else { "subgroups" }));
    }
    for s in &subs {
        t.line(format!("  {}", fmt_set(&g, &s.members)));
    }
    let list: Vec<Value> = subs.iter().map(|s| set_json(&g, &s.members)).collect();
    let counts: Vec<Value> = orders.iter().map(|(o, c)| json!({ "order": o, "count": c })).collect();
    Ok(Output { text: t.0, json: json!({ "count": subs.len(), "by_order": counts, "subgroups": list }) })
}

pub fn cosets(ctx: &Ctx, file: &str, subset: &str, side: SideArg) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = parse_subgroup(&g, subset)?;
    let side = match side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    let d = subgroups::cosets(&g, &b, side)?;
    let mut t = Text::new();
    t.line(format!("index: {}", d.index()));
    let mut list = Vec::new();
    for (c, r) in d.cosets.iter().zip(&d.reps) {
        t.line(format!("  {} (representative {})", fmt_set(&g, c), g.label(*r)));
        list.push(json!({ "coset": set_json(&g, c), "representative": g.label(*r) }));
    }
    Ok(Output { text: t.0, json: json!({ "index": d.index(), "cosets": list }) })
}

pub fn factor(ctx: &Ctx, file: &str, subset: &str, emit: bool) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = parse_subgroup(&g, subset)?;
    let f = subgroups::factor_group(&g, &b)?;
    if emit {
        return Ok(document(f.group.groupoid()));
    }
    let mut t = Text::new();
    t.line(format!("factor group of order {}, arity {}", f.group.size(), f.group.arity()));
    let mut list = Vec::new();
    for (i, c) in f.cosets.cosets.iter().enumerate() {
        t.line(format!("  {}: {}", f.group.label(ElementId::new(i)), fmt_set(&g, c)));
        list.push(set_json(&g, c));
    }
    Ok(Output { text: t.0, json: json!({ "order": f.group.size(), "arity": f.group.arity(), "cosets": list }) })
}

pub fn conjugate(ctx: &Ctx, file: &str, subset: &str, to: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let b = parse_subgroup(&g, subset)?;
    let c = parse_subgroup(&g, to)?;
    let conj = subgroups::is_conjugate(&g, &b, &c)?;
    let semi = subgroups::is_semiconjugate(&g, &b, &c)?;
    let by = subgroups::conjugating_element(&g, &b, &c)?;
    let show = |x: Option<ElementId>| match x {
        Some(x) => format!("yes (x = {})", g.label(x)),
        None => "no".to_string(),
    };
    let lbl = |x: Option<ElementId>| x.map(|x| g.label(x).to_string());
    let mut t = Text::new();
    t.line(format!("B = {}, C = {}", fmt_set(&g, &b), fmt_set(&g, &c)));
    t.line(format!("conjugate: {}", show(conj)));
    t.line(format!("semiconjugate: {}", show(semi)));
    t.line(format!("B = [x C x~]: {}", show(by)));
    Ok(Output {
        text: t.0,
        json: json!({ "conjugate": lbl(conj), "semiconjugate": lbl(semi), "conjugating_element": lbl(by) }),
    })
}

pub fn post_cover(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let c = g.cover();
    let labels: Vec<String> = (0..c.order())
        .map(|p| {
            let w = g.class_representative(&c.canonical(p));
            w.letters().iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(" ")
        })
        .collect();
    let table = NaryGroupoid::from_table(c.order(), 2, c.as_binary().table().to_vec(), Some(labels))?;
    let grades: Vec<(usize, Vec<usize>)> =
        (1..g.arity()).map(|i| (i, c.grade(i).iter().map(|x| x.index()).collect())).collect();
    let mut text = format!(
        "# covering group of order {}; grade i holds the classes of words of length i mod {}; grade {} is A0\n",
        c.order(),
        g.arity() - 1,
        g.arity() - 1
    );
    text.push_str(&pgf::save_with_notes(&table, &Notes { grades: grades.clone() }));
    let grade_json: Vec<Value> = grades.iter().map(|(i, m)| json!({ "grade": i, "members": m })).collect();
    Ok(Output { json: json!({ "order": c.order(), "grades": grade_json, "pgf": text }), text })
}

fn anchor_of(g: &NaryGroup, anchor: Option<&str>) -> CliResult<ElementId> {
    anchor.map_or(Ok(ElementId(0)), |a| parse_element(g, a))
}

pub fn retract(ctx: &Ctx, file: &str, anchor: Option<&str>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let a = anchor_of(&g, anchor)?;
    let r = Retract::new(&g, a)?;
    let base =
        BinaryGroupTable::from_table(g.size(), r.table().table().to_vec(), Some(g.groupoid().labels().to_vec()))?;
    let rebuilt = gluskin_groupoid(&base, r.beta(), r.d(), g.arity(), &ctx.limits)?;
    let mut text = format!(
        "# retract at {}: identity {}, d = {}; loading this document rebuilds the operation\n",
        g.label(a),
        g.label(r.table().identity()),
        g.label(r.d())
    );
    text.push_str(&pgf::save(&rebuilt));
    Ok(Output {
        json: json!({
            "anchor": g.label(a),
            "identity": g.label(r.table().identity()),
            "beta": r.beta().images(),
            "d": g.label(r.d()),
            "pgf": text,
        }),
        text,
    })
}

pub fn classify(ctx: &Ctx, file: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let cyc = structure::classify_cyclic(&g)?;
    let (cyc_text, cyc_json) = cyclic_text(&g, &cyc);
    let ab = structure::abelianness(&g, &ctx.limits)?;
    let solv = structure::classify_solvability(&g)?;
    let idem = structure::idempotents(&g);
    let units = structure::units(&g)?;
    let mut t = Text::new();
    t.line(format!("cyclicity: {cyc_text}"));
    t.line(format!("abelian: {}", yes(ab.abelian)));
    t.line(format!("semiabelian: {}", yes(ab.semiabelian)));
    for (m, v) in &ab.m_semiabelian {
        t.line(format!("{m}-semiabelian: {}", yes(*v)));
    }
    t.line(format!("weakly semiabelian: {}", yes(ab.weakly_semiabelian)));
    let medial = if ab.commutative_exhaustive { "" } else { " (sampled)" };
    t.line(format!("commutative: {}{medial}", yes(ab.commutative)));
    t.line(format!("idempotent: {}", yes(idem.len() == g.size())));
    t.line(format!("has idempotents: {}", yes(!idem.is_empty())));
    t.line(format!("has units: {}", yes(!units.is_empty())));
    t.line(format!("semisolvable: {}", yes(solv.semisolvable)));
    t.line(format!("seminilpotent: {}", yes(solv.seminilpotent)));
    t.line(format!("retract derived length: {}", solv.derived_length));
    let pairs = |v: &[(usize, bool)]| -> Vec<Value> { v.iter().map(|(m, b)| json!({ "m": m, "holds": b })).collect() };
    Ok(Output {
        text: t.0,
        json: json!({
            "cyclicity": cyc_json,
            "abelian": ab.abelian,
            "semiabelian": ab.semiabelian,
            "m_semiabelian": pairs(&ab.m_semiabelian),
            "weakly_semiabelian": ab.weakly_semiabelian,
            "weakly_m_semiabelian": pairs(&ab.weakly_m),
            "t_semiabelian": pairs(&ab.t_semiabelian),
            "commutative": ab.commutative,
            "commutative_exhaustive": ab.commutative_exhaustive,
            "idempotent": idem.len() == g.size(),
            "idempotents": idem.len(),
            "units": units.len(),
            "semisolvable": solv.semisolvable,
            "seminilpotent": solv.seminilpotent,
            "derived_length": solv.derived_length,
        }),
    })
}

pub fn decompose(ctx: &Ctx, file: &str, anchor: Option<&str>) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let idem = structure::idempotents(&g);
    if idem.is_empty() {
        return Err(input("the group has no idempotents, so there is no anchor to decompose at"));
    }
    let anchors: Vec<ElementId> = match anchor {
        Some(a) => {
            let a = parse_element(&g, a)?;
            if !idem.contains(a) {
                return Err(input(format!("{} is not an idempotent", g.label(a))));
            }
            vec![a]
        }
        None => idem.iter().collect(),
    };
    let all_idempotent = idem.len() == g.size();
    let semiabelian = structure::is_semiabelian(&g);
    let decomps: Vec<(ElementId, Vec<(usize, ElemSet)>)> = if semiabelian {
        subgroups::sylow_hall_semiabelian(&g)?
            .into_iter()
            .filter(|d| anchors.contains(&d.anchor))
            .map(|d| (d.anchor, d.factors.into_iter().map(|(p, s)| (p, s.members)).collect()))
            .collect()
    } else if all_idempotent {
        anchors
            .iter()
            .map(|&a| {
                let parts = structure::idempotent_sylow_decomposition(&g, a)?;
                let with_p = parts
                    .into_iter()
                    .map(|s| (subgroups::factorize(s.len()).first().map_or(1, |f| f.0), s.members))
                    .collect();
                Ok((a, with_p))
            })
            .collect::<CliResult<_>>()?
    } else {
        return Err(input("Sylow decompositions need a semiabelian group with idempotents or an idempotent group"));
    };
    let mut t = Text::new();
    let mut rows = Vec::new();
    for (a, parts) in &decomps {
        let sets: Vec<subgroups::SubgroupSet> =
            parts.iter().map(|(_, s)| subgroups::SubgroupSet::from_set(&g, s.clone())).collect::<Result<_, _>>()?;
        let direct = subgroups::a_direct_decomposition(&g, *a, &sets)?;
        t.line(format!("anchor {} ({}-direct: {})", g.label(*a), g.label(*a), yes(direct)));
        let mut fs = Vec::new();
        for (p, s) in parts {
            t.line(format!("  p = {p}: {}", fmt_set(&g, s)));
            fs.push(json!({ "p": p, "subgroup": set_json(&g, s) }));
        }
        rows.push(json!({ "anchor": g.label(*a), "direct": direct, "factors": fs }));
    }
    Ok(Output { text: t.0, json: json!({ "decompositions": rows }) })
}

pub fn axioms(ctx: &Ctx, file: &str, systems: &[String]) -> CliResult<Output> {
    let g = load_groupoid(ctx, file)?;
    let n = g.arity();
    let list: Vec<AxiomSystem> = if systems.is_empty() {
        let mut v = axioms::all_systems(n);
        v.extend(axioms::counterexample_systems(n));
        v
    } else {
        systems.iter().map(|s| s.parse::<AxiomSystem>().map_err(CliError::from)).collect::<CliResult<_>>()?
    };
    let is_group = match g.is_group(&ctx.limits) {
        Ok(b) => Some(b),
        Err(polyad::Error::NotAssociative(_)) => Some(false),
        Err(_) => None,
    };
    let mut t = Text::new();
    t.line(format!("size {}, arity {n}", g.size()));
    t.line(format!("n-ary group: {}", is_group.map_or("unknown (over budget)", |b| if b { "yes" } else { "no" })));
    let mut rows = Vec::new();
    let mut disagree = Vec::new();
    for s in &list {
        let characterizing = s.is_characterizing(n);
        let (verdict, holds) = match axioms::check_axiom(&g, s, &ctx.limits) {
            Ok(b) => (if b { "holds".to_string() } else { "fails".to_string() }, Some(b)),
            Err(e) => (format!("not checked: {e}"), None),
        };
        if let (Some(h), Some(grp), true) = (holds, is_group, characterizing) {
            if h != grp {
                disagree.push(s.to_string());
            }
        }
        let mark = if characterizing { "" } else { " (not characterizing)" };
        t.line(format!("{s}: {verdict}{mark}"));
        rows.push(json!({ "system": s.to_string(), "characterizing": characterizing, "holds": holds }));
    }
    let out = Output {
        text: t.0,
        json: json!({ "size": g.size(), "arity": n, "is_group": is_group, "systems": rows, "disagreements": disagree }),
    };
    if disagree.is_empty() {
        Ok(out)
    } else {
        Err(CliError::Verification(format!(
            "characterizing systems disagree with the group test: {}",
            disagree.join(", ")
        )))
    }
}

pub fn axioms_audit(ctx: &Ctx, max_k: usize, max_n: usize, random: usize, seed: u64) -> CliResult<Output> {
    let corpus = axioms::audit_corpus(max_k, max_n, random, seed)?;
    let report = axioms::equivalence_audit(&corpus, &ctx.limits)?;
    let mut t = Text::new();
    t.line(format!("groupoids: {}", report.rows.len()));
    t.line(format!("n-ary groups: {}", report.groups()));
    t.line(format!("disagreements: {}", report.disagreements()));
    let mut bad = Vec::new();
    for row in &report.rows {
        if !row.disagreements.is_empty() {
            let names: Vec<String> = row.disagreements.iter().map(|s| s.to_string()).collect();
            t.line(format!("  {}: {}", row.name, names.join(", ")));
            bad.push(json!({ "name": row.name, "systems": names }));
        }
    }
    // How often each non-characterizing system holds on a non-group.
    let mut fooled: Vec<(String, usize)> = Vec::new();
    for row in report.rows.iter().filter(|r| !r.is_group) {
        for (s, v) in &row.counterexamples {
            if !*v {
                continue;
            }
            let name = s.to_string();
            match fooled.iter_mut().find(|(n, _)| *n == name) {
                Some((_, c)) => *c += 1,
                None => fooled.push((name, 1)),
            }
        }
    }
    fooled.sort();
    for (name, c) in &fooled {
        t.line(format!("{name} holds on {c} non-groups"));
    }
    let out = Output {
        text: t.0,
        json: json!({
            "groupoids": report.rows.len(),
            "groups": report.groups(),
            "disagreements": bad,
            "non_characterizing_holds_on_non_groups": fooled.iter().map(|(n, c)| json!({ "system": n, "count": c })).collect::<Vec<_>>(),
        }),
    };
    if report.disagreements() == 0 {
        Ok(out)
    } else {
        Err(CliError::Verification(format!("{} disagreements in the audit", report.disagreements())))
    }
}

pub fn perm_group(ctx: &Ctx, q: usize, n: usize, sigma: Option<&str>, arity: Option<usize>) -> CliResult<Output> {
    if n < 2 {
        return Err(input("n must be at least 2"));
    }
    let sigma = match sigma {
        Some(s) => PermutationMap::parse_cycles(s, n - 1)?,
        None => cycle(n),
    };
    let g = permutation_group(q, &sigma, arity, &ctx.limits).map_err(|e| match e {
        polyad::Error::NotAssociative(_) | polyad::Error::NotGroup(_) => verification_error(e, &[]),
        e => e.into(),
    })?;
    Ok(document(g.groupoid()))
}

pub fn product(ctx: &Ctx, files: &[String]) -> CliResult<Output> {
    if files.iter().filter(|f| *f == "-").count() > 1 {
        return Err(input("stdin can supply at most one factor"));
    }
    let gs = files.iter().map(|f| load_group(ctx, f)).collect::<CliResult<Vec<_>>>()?;
    let refs: Vec<&NaryGroup> = gs.iter().collect();
    let p = direct_product(&refs)?;
    Ok(document(p.groupoid()))
}

pub fn example(name: Option<&str>, list: bool) -> CliResult<Output> {
    if list || name.is_none() {
        let mut t = Text::new();
        for n in EXAMPLE_NAMES {
            t.line(*n);
        }
        return Ok(Output { text: t.0, json: json!({ "examples": EXAMPLE_NAMES }) });
    }
    let g = named_example(name.unwrap_or_default())?;
    Ok(document(g.groupoid()))
}

pub fn solve(ctx: &Ctx, file: &str, pattern: &str, rhs: &str) -> CliResult<Output> {
    let g = load_group(ctx, file)?;
    let slots: Vec<Option<ElementId>> = pattern
        .split_whitespace()
        .map(|t| if t == "_" || t == "?" { Ok(None) } else { parse_element(&g, t).map(Some) })
        .collect::<CliResult<_>>()?;
    let b = parse_element(&g, rhs)?;
    let x = g.solve(&slots, b)?;
    let filled: Vec<&str> = slots.iter().map(|s| g.label(s.unwrap_or(x))).collect();
    Ok(Output {
        text: format!("x = {}\n[{}] = {}\n", g.label(x), filled.join(" "), g.label(b)),
        json: json!({ "solution": g.label(x), "rhs": g.label(b) }),
    })
}
