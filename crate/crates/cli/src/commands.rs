//! One function per subcommand. Each returns a [`Report`] whose
//! `verification` map holds the invariants re-checked on the answer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use gtkit::abelian::{self, json_int, IntMatrix};
use gtkit::constructions::GroupSpec;
use gtkit::fingroup::{FinGroup, Limits, SeriesReport, Subgroup};
use gtkit::freegrp::{reduce, Alphabet, CosetTable};
use gtkit::gaction::{self, Action, ActionDescription};
use gtkit::matgrp::{self, SquareIntMatrix};
use gtkit::perm::Permutation;

use crate::report::{CliError, Report};

pub struct Context {
    pub limits: Limits,
    pub seed: u64,
}

fn build(spec: &str, ctx: &Context) -> Result<(GroupSpec, FinGroup), CliError> {
    let s = GroupSpec::parse(spec)?;
    let g = s.build(&ctx.limits)?;
    Ok((s, g))
}

fn labels(g: &FinGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

fn subgroup_json(g: &FinGroup, h: &Subgroup) -> Value {
    json!({
        "order": h.order(),
        "generators": labels(g, h.generators()),
        "normal": g.is_normal(h),
    })
}

fn brief(g: &FinGroup, h: &Subgroup) -> String {
    let gens = labels(g, h.generators());
    if gens.is_empty() {
        "⟨⟩".to_string()
    } else {
        format!("⟨{}⟩", gens.join(", "))
    }
}

pub fn analyze(spec: &str, ctx: &Context) -> Result<Report, CliError> {
    let (s, g) = build(spec, ctx)?;
    let mut r = Report::new("analyze", json!(s.to_string()));
    let ce = g.class_equation();
    let sylow = g.sylow_table();
    let comp = g.composition_series();
    let derived = g.derived_series();
    let solvable = derived.complete;
    let nilpotent = g.is_nilpotent();
    let simple = g.is_simple();
    let mut class_terms = vec![ce.center_size];
    class_terms.extend(ce.class_sizes());
    r.result = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "simple": simple,
        "solvable": solvable,
        "nilpotent": nilpotent,
        "nilpotency_class": g.nilpotency_class(),
        "exponent": g.exponent(),
        "center_size": ce.center_size,
        "class_equation": class_terms,
        "conjugacy_classes": ce.center_size + ce.classes.len(),
        "derived_length": solvable.then(|| derived.length()),
        "sylow": sylow,
        "composition_factors": comp.factor_orders(),
    });
    let eq: Vec<String> = class_terms.iter().map(usize::to_string).collect();
    r.line(format!("group: {s}"));
    r.line(format!("order: {}", g.order()));
    r.line(format!(
        "abelian: {}  cyclic: {}  simple: {}  solvable: {}  nilpotent: {}",
        g.is_abelian(),
        g.is_cyclic(),
        simple,
        solvable,
        nilpotent
    ));
    if let Some(c) = g.nilpotency_class() {
        r.line(format!("nilpotency class: {c}"));
    }
    r.line(format!("exponent: {}", g.exponent()));
    r.line(format!("center size: {}", ce.center_size));
    r.line(format!("class equation: {} = {}", g.order(), eq.join(" + ")));
    if solvable {
        r.line(format!("derived length: {}", derived.length()));
    }
    for row in &sylow {
        r.line(format!(
            "Sylow {}-subgroups: {} of order {}",
            row.p, row.count, row.subgroup_order
        ));
    }
    r.line(format!("composition factor orders: {:?}", comp.factor_orders()));

    r.check("class_equation_sums", ce.is_consistent());
    r.check(
        "sylow_counts",
        sylow
            .iter()
            .all(|row| row.count as u64 % row.p == 1 && g.order() % row.count == 0),
    );
    r.check(
        "composition_factor_product",
        comp.factor_orders().iter().product::<usize>() == g.order(),
    );
    r.check("series_complete", comp.complete);
    Ok(r)
}

pub fn subgroups(spec: &str, maximal: bool, ctx: &Context) -> Result<Report, CliError> {
    let (s, g) = build(spec, ctx)?;
    let mut r = Report::new("subgroups", json!({ "group": s.to_string(), "maximal": maximal }));
    let lim = Limits {
        max_subgroup_scan: ctx.limits.max_subgroup_scan.max(ctx.limits.max_order.min(512)),
        ..ctx.limits
    };
    let list = if maximal {
        g.maximal_subgroups(&lim)?
    } else {
        g.all_subgroups(&lim)?
    };
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for h in &list {
        *by_order.entry(h.order()).or_default() += 1;
    }
    r.result = json!({
        "count": list.len(),
        "by_order": by_order,
        "subgroups": list.iter().map(|h| subgroup_json(&g, h)).collect::<Vec<_>>(),
    });
    r.line(format!(
        "{} {}subgroups of {s} (order {})",
        list.len(),
        if maximal { "maximal " } else { "" },
        g.order()
    ));
    for h in &list {
        r.line(format!(
            "  order {:>5}  {}{}",
            h.order(),
            brief(&g, h),
            if g.is_normal(h) { "  normal" } else { "" }
        ));
    }
    r.check("lagrange", list.iter().all(|h| g.order() % h.order() == 0));
    if !maximal {
        r.check(
            "trivial_and_whole_present",
            list.first().is_some_and(|h| h.order() == 1) && list.last().is_some_and(|h| h.order() == g.order()),
        );
    }
    Ok(r)
}

fn series_json(g: &FinGroup, rep: &SeriesReport) -> Value {
    json!({
        "kind": rep.kind,
        "member_orders": rep.member_orders(),
        "members": rep.members.iter().map(|h| labels(g, h.generators())).collect::<Vec<_>>(),
        "factor_orders": rep.factor_orders(),
        "factor_names": rep.factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
        "length": rep.length(),
        "complete": rep.complete,
    })
}

fn chain_is_subnormal(g: &FinGroup, rep: &SeriesReport) -> bool {
    rep.members
        .windows(2)
        .all(|w| w[1].is_subset(&w[0]) && g.is_normal_in(&w[1], &w[0]))
}

pub fn series(spec: &str, kind: &str, random: bool, ctx: &Context) -> Result<Report, CliError> {
    let (s, g) = build(spec, ctx)?;
    let mut r = Report::new(
        "series",
        json!({ "group": s.to_string(), "kind": kind, "random": random, "seed": random.then_some(ctx.seed) }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let wanted: Vec<&str> = match kind {
        "all" => vec!["derived", "lower-central", "upper-central", "composition"],
        "derived" | "lower-central" | "upper-central" | "composition" => vec![kind],
        other => return Err(CliError::Usage(format!("unknown series kind {other:?}"))),
    };
    let mut out = serde_json::Map::new();
    r.line(format!("group: {s} (order {})", g.order()));
    for k in wanted {
        let rep = match k {
            "derived" => g.derived_series(),
            "lower-central" => g.lower_central_series(),
            "upper-central" => g.upper_central_series(),
            _ if random => g.composition_series_random(&mut rng),
            _ => g.composition_series(),
        };
        let orders: Vec<String> = rep.member_orders().iter().map(usize::to_string).collect();
        let names: Vec<String> = rep
            .factors
            .iter()
            .map(|f| f.name.clone().unwrap_or_else(|| format!("order {}", f.order)))
            .collect();
        r.line(format!(
            "{k}: {}{}",
            orders.join(" > "),
            if rep.complete { "" } else { "  (does not reach the end)" }
        ));
        r.line(format!("  factors: {}", names.join(", ")));
        r.check(&format!("{k}_subnormal"), chain_is_subnormal(&g, &rep));
        if k == "composition" {
            let factors = g.series_factors(&rep.members);
            r.check("composition_factors_simple", factors.iter().all(FinGroup::is_simple));
        }
        out.insert(k.to_string(), series_json(&g, &rep));
    }
    r.result = Value::Object(out);
    Ok(r)
}

pub fn sylow(spec: &str, p: Option<u64>, ctx: &Context) -> Result<Report, CliError> {
    let (s, g) = build(spec, ctx)?;
    let mut r = Report::new("sylow", json!({ "group": s.to_string(), "p": p }));
    let table = g.sylow_table();
    let primes: Vec<u64> = match p {
        Some(p) => vec![p],
        None => table.iter().map(|row| row.p).collect(),
    };
    let mut detail = Vec::new();
    r.line(format!("group: {s} (order {})", g.order()));
    let mut counts_ok = true;
    let mut conjugate_ok = true;
    for p in primes {
        let subs = g.sylow_subgroups(p)?;
        let count = subs.len();
        counts_ok &= count as u64 % p == 1 && g.order() % count == 0;
        let mut conj = g.conjugates_of(&subs[0]);
        conj.sort();
        conjugate_ok &= conj == subs;
        r.line(format!("p = {p}: {count} Sylow subgroups of order {}", subs[0].order()));
        for h in &subs {
            r.line(format!("  {}", brief(&g, h)));
        }
        detail.push(json!({
            "p": p,
            "count": count,
            "subgroup_order": subs[0].order(),
            "subgroups": subs.iter().map(|h| labels(&g, h.generators())).collect::<Vec<_>>(),
        }));
    }
    r.result = json!({ "order": g.order(), "table": detail });
    r.check("count_congruent_and_divides", counts_ok);
    r.check("pairwise_conjugate", conjugate_ok);
    Ok(r)
}

pub enum BurnsideInput {
    Factorizations { n: u64, k: usize },
    Conjugation { spec: String },
    Cosets { spec: String },
    Table { path: String },
}

fn orbit_stabilizer_holds(a: &Action) -> bool {
    (0..a.points()).all(|x| {
        let o = a.orbit(x).map(|o| o.len()).unwrap_or(0);
        let s = a.stabilizer(x).map(|s| s.order()).unwrap_or(0);
        o * s == a.group().order()
    })
}

pub fn burnside(input: BurnsideInput, ctx: &Context) -> Result<Report, CliError> {
    let (echo, action) = match &input {
        BurnsideInput::Factorizations { n, k } => (
            json!({ "action": "factorizations", "n": n, "k": k }),
            gaction::factorization_action(*n, *k, &ctx.limits)?,
        ),
        BurnsideInput::Conjugation { spec } => {
            let (s, g) = build(spec, ctx)?;
            (json!({ "action": "conjugation", "group": s.to_string() }), Action::conjugation(&g))
        }
        BurnsideInput::Cosets { spec } => {
            // cosets of a Sylow subgroup of the largest prime
            let (s, g) = build(spec, ctx)?;
            let h = match g.sylow_table().last() {
                Some(row) => g.sylow_subgroup(row.p)?,
                None => g.whole(),
            };
            (
                json!({ "action": "cosets", "group": s.to_string(), "subgroup_order": h.order() }),
                Action::on_cosets(&g, &h),
            )
        }
        BurnsideInput::Table { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            (
                json!({ "action": "table", "path": path }),
                ActionDescription::parse(&text)?.build(&ctx.limits)?,
            )
        }
    };
    let rep = action.burnside_count()?;
    let mut r = Report::new("burnside", echo);
    let hist = rep.chi_histogram();
    let reps: Vec<String> = rep.orbits.iter().map(|o| action.point_label(o[0])).collect();
    r.result = json!({
        "group_order": rep.group_order,
        "points": rep.points,
        "orbit_count": rep.orbit_count,
        "chi_total": rep.chi_total,
        "chi": rep.chi,
        "chi_histogram": hist.iter().map(|(f, c)| json!({ "fixed": f, "elements": c })).collect::<Vec<_>>(),
        "orbit_sizes": rep.orbits.iter().map(Vec::len).collect::<Vec<_>>(),
        "orbit_representatives": reps,
    });
    r.line(format!(
        "{} points, group of order {}",
        rep.points, rep.group_order
    ));
    for c in &rep.chi {
        r.line(format!("  χ({}) = {}", c.element, c.fixed));
    }
    r.line(format!(
        "orbits: {} = {} / {}",
        rep.orbit_count, rep.chi_total, rep.group_order
    ));
    r.check("chi_average_matches_orbits", rep.orbit_count * rep.group_order == rep.chi_total);
    r.check(
        "orbits_partition_domain",
        rep.orbits.iter().map(Vec::len).sum::<usize>() == rep.points,
    );
    r.check("orbit_stabilizer", orbit_stabilizer_holds(&action));
    Ok(r)
}

fn is_divisibility_chain(d: &[BigInt]) -> bool {
    d.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0))
}

fn unimodular(m: &IntMatrix) -> bool {
    m.det().is_ok_and(|d| d == BigInt::from(1) || d == BigInt::from(-1))
}

pub fn smith(matrix: &str) -> Result<Report, CliError> {
    let m = IntMatrix::parse(matrix)?;
    let mut r = Report::new("smith", json!(m));
    let sb = abelian::stacked_basis(&m)?;
    let inv = abelian::invariant_factors(&m);
    let diag: Vec<Value> = sb.diagonal.iter().map(json_int).collect();
    r.result = json!({
        "invariants": diag,
        "u": sb.u,
        "v": sb.v,
        "quotient": inv.to_string(),
        "torsion": inv.torsion.iter().map(json_int).collect::<Vec<_>>(),
        "free_rank": inv.rank,
    });
    let d: Vec<String> = sb.diagonal.iter().map(BigInt::to_string).collect();
    r.line(format!("invariants: [{}]", d.join(", ")));
    r.line(format!("quotient: {inv}"));
    let prod = sb.u.mul(&m).and_then(|x| x.mul(&sb.v));
    let diagonal_ok = prod.is_ok_and(|p| {
        (0..p.rows()).all(|i| {
            (0..p.cols()).all(|j| {
                let want = if i == j && i < sb.diagonal.len() {
                    sb.diagonal[i].clone()
                } else {
                    BigInt::from(0)
                };
                *p.get(i, j) == want
            })
        })
    });
    r.check("u_m_v_is_diagonal", diagonal_ok);
    r.check("u_v_unimodular", unimodular(&sb.u) && unimodular(&sb.v));
    r.check("divisibility_chain", is_divisibility_chain(&sb.diagonal));
    Ok(r)
}

pub fn abelian_invariants(spec: Option<&str>, relations: Option<&str>, ctx: &Context) -> Result<Report, CliError> {
    match (spec, relations) {
        (Some(spec), None) => {
            let (s, g) = build(spec, ctx)?;
            let mut r = Report::new("abelian-invariants", json!({ "group": s.to_string() }));
            let inv = abelian::decompose_finite_abelian(&g)?;
            let primary = abelian::primary_decomposition(&g)?;
            let torsion = inv.torsion_u64();
            r.result = json!({
                "torsion": torsion,
                "free_rank": 0,
                "decomposition": inv.to_string(),
                "primary": primary.iter().map(|(p, h)| json!({ "p": p, "order": h.order() })).collect::<Vec<_>>(),
            });
            r.line(format!("{s} ≅ {inv}"));
            for (p, h) in &primary {
                r.line(format!("  Sylow {p}-part: order {}", h.order()));
            }
            r.check("product_is_order", torsion.iter().product::<u64>() == g.order() as u64);
            r.check("divisibility_chain", is_divisibility_chain(&inv.torsion));
            r.check(
                "largest_is_exponent",
                torsion.last().copied().unwrap_or(1) == g.exponent() as u64,
            );
            Ok(r)
        }
        (None, Some(rel)) => {
            let m = IntMatrix::parse(rel)?;
            let mut r = Report::new("abelian-invariants", json!({ "relations": m }));
            let inv = abelian::invariant_factors(&m);
            r.result = json!({
                "torsion": inv.torsion.iter().map(json_int).collect::<Vec<_>>(),
                "free_rank": inv.rank,
                "decomposition": inv.to_string(),
            });
            r.line(format!("quotient: {inv}"));
            r.check("divisibility_chain", is_divisibility_chain(&inv.torsion));
            Ok(r)
        }
        _ => Err(CliError::Usage(
            "give either a group spec or --relations, not both".into(),
        )),
    }
}

fn parse_perms(texts: &[String], degree: Option<usize>) -> Result<Vec<Permutation>, CliError> {
    let first: Vec<Permutation> = texts
        .iter()
        .map(|t| Permutation::parse(t, None))
        .collect::<Result<_, _>>()?;
    let deg = degree.unwrap_or_else(|| first.iter().map(Permutation::degree).max().unwrap_or(1).max(1));
    Ok(texts
        .iter()
        .map(|t| Permutation::parse(t, Some(deg)))
        .collect::<Result<_, _>>()?)
}

pub struct FreeSubgroupArgs {
    pub rank: usize,
    pub images: Vec<String>,
    pub subgroup: Vec<String>,
    pub degree: Option<usize>,
    pub alphabet: Option<String>,
    pub rewrite: Option<String>,
}

pub fn free_subgroup(args: &FreeSubgroupArgs, ctx: &Context) -> Result<Report, CliError> {
    let mut all = args.images.clone();
    all.extend(args.subgroup.iter().cloned());
    let perms = parse_perms(&all, args.degree)?;
    let (images, k_gens) = perms.split_at(args.images.len());
    let alphabet = match &args.alphabet {
        Some(a) => Alphabet::parse_list(a)?,
        None => Alphabet::standard(args.rank),
    };
    if alphabet.rank() != args.rank {
        return Err(CliError::Usage(format!(
            "alphabet has {} letters, rank is {}",
            alphabet.rank(),
            args.rank
        )));
    }
    let ct = CosetTable::new(args.rank, images, k_gens, ctx.limits.max_order)?;
    let gens = ct.schreier_generators();
    let j = ct.index();
    let expected = j * (args.rank.saturating_sub(1)) + 1;
    let mut r = Report::new(
        "free-subgroup",
        json!({
            "rank": args.rank,
            "images": images.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "subgroup": k_gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    );
    let transversal: Vec<String> = ct.transversal().iter().map(|t| alphabet.format(t)).collect();
    let words: Vec<String> = gens.words().iter().map(|w| alphabet.format(w)).collect();
    r.line(format!("image group order: {}", ct.image_group().order()));
    r.line(format!("index: {j}"));
    r.line(format!("rank: {} (j(n-1)+1 = {expected})", gens.len()));
    r.line(format!("transversal: {}", transversal.join(", ")));
    r.line("generators:");
    for w in &words {
        r.line(format!("  {w}"));
    }
    let mut result = json!({
        "image_order": ct.image_group().order(),
        "index": j,
        "rank": gens.len(),
        "transversal": transversal,
        "generators": words,
    });
    r.check("rank_formula", args.rank == 0 || gens.len() == expected);
    r.check("schreier_transversal", ct.is_schreier());
    r.check(
        "generators_in_subgroup",
        gens.words().iter().all(|w| ct.contains(w).unwrap_or(false)),
    );
    if let Some(text) = &args.rewrite {
        let w = alphabet.parse(text)?;
        let rw = ct.rewrite_in_generators(&gens, &w)?;
        let rendered: Vec<String> = rw
            .iter()
            .map(|&(g, e)| if e == 1 { format!("s{}", g + 1) } else { format!("s{}^{e}", g + 1) })
            .collect();
        r.line(format!("{} = {}", alphabet.format(&w), if rendered.is_empty() { "1".into() } else { rendered.join(" ") }));
        result["rewrite"] = json!(rendered);
        r.check("rewrite_round_trip", gens.expand(args.rank, &rw) == w);
    }
    r.result = result;
    Ok(r)
}

pub fn reduce_word(word: &str, alphabet: &str) -> Result<Report, CliError> {
    let a = Alphabet::parse_list(alphabet)?;
    let raw = a.parse_raw(word)?;
    let w = reduce(a.rank(), &raw)?;
    let mut r = Report::new("reduce-word", json!({ "word": word, "alphabet": a.names() }));
    let text = a.format(&w);
    r.result = json!({ "reduced": text, "length": w.len(), "syllables": w.syllables().len() });
    r.line(&text);
    r.line(format!("length: {}", w.len()));
    let s = w.syllables();
    r.check(
        "reduced_form",
        s.iter().all(|&(_, e)| e != 0) && s.windows(2).all(|p| p[0].0 != p[1].0),
    );
    r.check("idempotent", reduce(a.rank(), s).is_ok_and(|v| v == w));
    Ok(r)
}

pub fn sl2_decompose(matrix: &str) -> Result<Report, CliError> {
    let m = SquareIntMatrix::parse(matrix)?;
    let mut r = Report::new("sl2-decompose", json!(m));
    let det = m.det();
    let elementary = matgrp::decompose_gln_z(&m)?;
    let mut result = json!({
        "dimension": m.dim(),
        "determinant": json_int(&det),
        "elementary": elementary,
    });
    r.line(format!("elementary: {elementary}"));
    r.check("elementary_reconstructs", elementary.evaluate() == m);
    r.check("at_most_one_sign_factor", elementary.neg_diag_count() <= 1);
    if m.dim() == 2 && det == BigInt::from(1) {
        let ab = matgrp::sl2_to_ab(&m)?;
        let bc = matgrp::sl2_to_bc(&m)?;
        let names = Alphabet::new(["A", "B"]);
        let bc_text: Vec<String> = bc
            .iter()
            .map(|(l, t)| if *t == 1 { format!("{l:?}") } else { format!("{l:?}^{t}") })
            .collect();
        let bc_text = if bc_text.is_empty() { "1".to_string() } else { bc_text.join(" ") };
        r.line(format!("B/C word: {bc_text}"));
        r.line(format!("A/B word: {}", names.format(&ab)));
        result["bc_word"] = json!(bc_text);
        result["ab_word"] = json!(names.format(&ab));
        r.check("bc_reconstructs", matgrp::evaluate_bc(&bc) == m);
        r.check("ab_reconstructs", matgrp::evaluate_ab(&ab) == m);
    }
    r.result = result;
    Ok(r)
}

pub fn aut(spec: &str, ctx: &Context) -> Result<Report, CliError> {
    let (s, g) = build(spec, ctx)?;
    let mut r = Report::new("aut", json!(s.to_string()));
    let a = g.aut_group(&ctx.limits)?;
    let inner = g.order() / g.center().order();
    let gens = labels(&a.group, a.group.generators());
    r.result = json!({
        "group_order": g.order(),
        "aut_order": a.group.order(),
        "inner_order": inner,
        "aut_abelian": a.group.is_abelian(),
        "generators": gens,
    });
    r.line(format!("|Aut({s})| = {}", a.group.order()));
    r.line(format!("|Inn({s})| = {inner}"));
    r.line("generators (images of the generators of G):");
    for l in &gens {
        r.line(format!("  {l}"));
    }
    r.check("inner_divides_aut", a.group.order() % inner == 0);
    let homs = a.maps.iter().all(|f| {
        g.elements()
            .all(|x| g.elements().all(|y| f[g.mul(x, y)] == g.mul(f[x], f[y])))
    });
    r.check("maps_are_automorphisms", homs);
    Ok(r)
}
