//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! `CROWN_SEED` reseeds every randomized criterion. All comparisons are exact.

use std::collections::{HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crown_core::curves::pseudo::{build_pseudocoronation, parse_ordering, Monodromy, DEFAULT_ORDERING};
use crown_core::curves::sample::{chain_file, random_system, Sample};
use crown_core::curves::{dehn_twist, intersection_count, minimal_position, minimal_position_seeded, to_stacked_diagram, PlCurve};
use crown_core::grading::{build_grading_system, build_grading_system_with, corner_equation, face_equation, SignConvention};
use crown_core::lattice::{solvable_moduli, solve_integer, solve_sparse, AffineLattice, IntMatrix, Solution};
use crown_core::moves::{arc_of_dart, r2_insert, random_move, MoveKind};
use crown_core::{compare, salient_set, Chord, Corner, Labeling, StackedDiagram};

const DEFAULT_SEED: u64 = 20_240_611;

const RANK_7_6: usize = 21;
const RANK_10_133: usize = 20;
const PIPELINE_BUDGET_SECS: f64 = 60.0;

const INVARIANCE_DIAGRAMS: usize = 100;
const MAX_REWRITES: usize = 10;
const MAX_FINGERS: usize = 2;
const SLIDES: usize = 50;
const BIGON_PAIRS: usize = 20;
const SIGN_FLIP_DIAGRAMS: usize = 40;
const LATTICE_SYSTEMS: usize = 500;
const LATTICE_MAX_VARS: usize = 6;
const LATTICE_ENTRY: i64 = 5;
const LATTICE_BOX: i64 = 20;
const MAX_MODULUS: u64 = 30;
const ADDITIVITY_PAIRS: usize = 50;
const CONFLUENCE_REPLAYS: usize = 50;

type Outcome = Result<String, String>;

fn main() {
    let seed = std::env::var("CROWN_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance seed {seed}");
    let criteria: [(&str, fn(&mut ChaCha8Rng) -> Outcome); 8] = [
        ("rank reproduction", rank_reproduction),
        ("move invariance", move_invariance),
        ("slide chord values", slide_chord_values),
        ("pair of bigons", pair_of_bigons),
        ("sign flip", sign_flip),
        ("lattice oracle", lattice_oracle),
        ("additivity", additivity),
        ("curve engine sanity", curve_sanity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| run(&mut rng))).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("[{}] PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[{}] FAIL {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// A random sample with genus 1..=4 and 3..=8 curves; combinations that do
/// not fill are redrawn.
fn draw_sample(rng: &mut ChaCha8Rng) -> Sample {
    loop {
        let g = rng.gen_range(1..=4);
        let k = rng.gen_range(3..=8);
        if let Ok(s) = random_system(g, k, rng, 20) {
            return s;
        }
    }
}

/// A sample diagram pushed out of minimal position by a few finger moves.
fn draw_diagram(rng: &mut ChaCha8Rng) -> StackedDiagram {
    let mut d = draw_sample(rng).diagram;
    for _ in 0..rng.gen_range(0..=MAX_FINGERS) {
        if let Some((_, next)) = random_move(&d, &[MoveKind::Finger], rng, 50) {
            d = next;
        }
    }
    d
}

fn full_lattice(d: &StackedDiagram, convention: SignConvention) -> Option<AffineLattice> {
    let sys = build_grading_system_with(d, convention).to_sparse();
    solve_sparse(&sys).expect("grading system solves").lattice().map(|l| l.canonicalize())
}

fn rank_reproduction(_: &mut ChaCha8Rng) -> Outcome {
    let mono = Monodromy::bundled();
    let ordering = parse_ordering(DEFAULT_ORDERING).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let mut sets = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for (knot, want) in [("7_6", RANK_7_6), ("10_133", RANK_10_133)] {
        let word = mono.knot(knot).ok_or(format!("no word for {knot}"))?;
        let p = build_pseudocoronation(word, &ordering, true).map_err(|e| format!("{knot}: {e}"))?;
        let s = salient_set(&p.diagram).map_err(|e| format!("{knot}: {e}"))?;
        ok &= s.system_rank == want && s.is_integral();
        lines.push(format!(
            "{knot} system rank {} (want {want}), integral {}, salient rank {}",
            s.system_rank,
            s.is_integral(),
            s.salient_rank()
        ));
        sets.push(s);
    }
    let equal = compare(&sets[0], &sets[1]).is_some();
    let secs = t.elapsed().as_secs_f64();
    ok &= !equal && secs < PIPELINE_BUDGET_SECS;
    lines.push(format!("compare {}", if equal { "EQUAL" } else { "NOT EQUAL" }));
    lines.push(format!("pipeline {secs:.1}s of {PIPELINE_BUDGET_SECS}s"));
    check(ok, lines.join("; "))
}

fn move_invariance(rng: &mut ChaCha8Rng) -> Outcome {
    let kinds = [MoveKind::R2Insert, MoveKind::R2Remove, MoveKind::R3, MoveKind::Slide];
    let mut tally: HashMap<&'static str, usize> = HashMap::new();
    let mut bad = Vec::new();
    for n in 0..INVARIANCE_DIAGRAMS {
        let mut d = draw_diagram(rng);
        let before = salient_set(&d).map_err(|e| e.to_string())?;
        let mut script = Vec::new();
        for _ in 0..rng.gen_range(1..=MAX_REWRITES) {
            let Some((cmd, next)) = random_move(&d, &kinds, rng, 100) else { break };
            *tally.entry(kind_name(&cmd.to_string())).or_default() += 1;
            script.push(cmd.to_string());
            d = next;
        }
        let after = salient_set(&d).map_err(|e| e.to_string())?;
        if before.lattice != after.lattice || script.is_empty() {
            bad.push(format!("#{n} [{}]", script.join(" | ")));
        }
    }
    let mut counts: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
    counts.sort();
    check(
        bad.is_empty(),
        format!(
            "{}/{INVARIANCE_DIAGRAMS} unchanged; moves {}{}",
            INVARIANCE_DIAGRAMS - bad.len(),
            counts.join(", "),
            if bad.is_empty() { String::new() } else { format!("; changed {}", bad.join(", ")) }
        ),
    )
}

fn kind_name(cmd: &str) -> &'static str {
    match cmd.split_whitespace().nth(1) {
        Some("r2") => "r2",
        Some("r2-") => "r2-",
        Some("r3") => "r3",
        Some("slide") => "slide",
        _ => "other",
    }
}

fn slide_chord_values(rng: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    let mut chords = 0;
    let mut bad = Vec::new();
    let mut attempts = 0;
    while done < SLIDES {
        attempts += 1;
        if attempts > 20 * SLIDES {
            return Err(format!("only {done} slides found in {attempts} draws"));
        }
        let d = draw_diagram(rng);
        let Some((cmd, e)) = random_move(&d, &[MoveKind::Slide], rng, 50) else { continue };
        done += 1;
        let sol = |d: &StackedDiagram| {
            let sys = build_grading_system(d).to_sparse();
            solve_sparse(&sys).expect("grading system solves")
        };
        let (s0, s1) = (sol(&d), sol(&e));
        for c in d.chords() {
            let Some(x) = e.crossing_by_name(d.name(c.crossing)) else { continue };
            let c1 = Chord { crossing: x, ..c };
            chords += 1;
            if s0.project(&[c.index()]) != s1.project(&[c1.index()]) {
                bad.push(format!("{cmd} chord {}", d.name(c.crossing)));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{done} slides, {chords} surviving chords, {} changed {}", bad.len(), bad.join(", ")),
    )
}

/// Three crossings of one consecutive pair bounding two bigons that share the middle one.
fn bigon_triple(d: &StackedDiagram) -> Option<[usize; 3]> {
    let k = d.curve_count();
    let bigons: Vec<(usize, usize)> = d
        .faces()
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| (f.corners()[0].crossing, f.corners()[1].crossing))
        .filter(|&(p, q)| {
            let (a, b) = d.crossing_curves(p);
            p != q && d.crossing_curves(q) == (a, b) && ((a + 1) % k == b || (b + 1) % k == a)
        })
        .collect();
    for (i, &(p, q)) in bigons.iter().enumerate() {
        for &(r, s) in &bigons[i + 1..] {
            for (mid, a, b) in [(p, q, if r == p { s } else { r }), (q, p, if r == q { s } else { r })] {
                if (r == mid || s == mid) && d.crossing_curves(a) == d.crossing_curves(mid) && a != b && b != mid {
                    return Some([a, mid, b]);
                }
            }
        }
    }
    None
}

fn pair_of_bigons(rng: &mut ChaCha8Rng) -> Outcome {
    let mut found = 0;
    let mut attempts = 0;
    let mut bad = Vec::new();
    while found < BIGON_PAIRS {
        attempts += 1;
        if attempts > 50 * BIGON_PAIRS {
            return Err(format!("only {found} patterns built in {attempts} draws"));
        }
        let s = draw_sample(rng);
        let d = s.diagram;
        let k = d.curve_count();
        let i = rng.gen_range(0..k);
        let j = (i + 1) % k;
        // A face touching both curves, then a second push inside the new bigon.
        let Some(d1) = push_between(&d, i, j, None, rng) else { continue };
        let Some(d2) = push_between(&d1.0, i, j, Some(&d1.1), rng) else { continue };
        let d2 = d2.0;
        let Some(triple) = bigon_triple(&d2) else { continue };
        found += 1;
        let Some(l) = full_lattice(&d2, SignConvention::Standard) else {
            bad.push("no integer solution".to_string());
            continue;
        };
        for lab in 0..k {
            let vars: Vec<usize> = triple.iter().map(|&x| d2.active_chord(x, Labeling(lab)).index()).collect();
            let equal = |v: &[BigInt]| v[vars[0]] == v[vars[1]] && v[vars[1]] == v[vars[2]];
            let basis_dir = l.basis().iter().all(|b| b[vars[0]] == b[vars[1]] && b[vars[1]] == b[vars[2]]);
            if !equal(l.particular()) || !basis_dir {
                bad.push(format!("labeling {} crossings {:?}", lab + 1, triple.map(|x| d2.name(x).to_string())));
            }
        }
    }
    check(
        bad.is_empty(),
        format!("{found} patterns, every labeling forces equal values{}", if bad.is_empty() { String::new() } else { format!("; broken {}", bad.join(", ")) }),
    )
}

/// R2 insertion between curves `i` and `j` in a random face touching both
/// (restricted to faces cornered at `within` when given).
fn push_between(
    d: &StackedDiagram,
    i: usize,
    j: usize,
    within: Option<&[usize]>,
    rng: &mut ChaCha8Rng,
) -> Option<(StackedDiagram, Vec<usize>)> {
    let mut faces: Vec<usize> = (0..d.faces().len())
        .filter(|&f| match within {
            Some(xs) => {
                let f = d.face(f);
                f.len() == 2 && f.corners().iter().all(|c| xs.contains(&c.crossing))
            }
            None => true,
        })
        .collect();
    faces.shuffle(rng);
    for f in faces {
        let face = d.face(f);
        let arcs: Vec<_> = (0..face.len()).map(|s| arc_of_dart(d, face.side(s)).0).collect();
        let a = arcs.iter().find(|a| a.curve == i);
        let b = arcs.iter().find(|a| a.curve == j);
        if let (Some(&a), Some(&b)) = (a, b) {
            if let Ok(r) = r2_insert(d, f, a, b) {
                return Some((r.diagram, r.new_crossings));
            }
        }
    }
    None
}

fn sign_flip(rng: &mut ChaCha8Rng) -> Outcome {
    let mut diagrams = Vec::new();
    for text in [include_str!("fixtures/torus.diagram"), include_str!("fixtures/sphere_bigons.diagram")] {
        diagrams.push(crown_core::parse_diagram(text).map_err(|e| e.to_string())?);
    }
    while diagrams.len() < SIGN_FLIP_DIAGRAMS {
        diagrams.push(draw_diagram(rng));
    }
    let mut bad = 0;
    let mut integral = 0;
    for d in &diagrams {
        let a = full_lattice(d, SignConvention::Standard);
        let b = full_lattice(d, SignConvention::Flipped);
        integral += usize::from(a.is_some());
        bad += usize::from(a != b);
    }
    check(
        bad == 0,
        format!("{} diagrams ({integral} with integer solutions), {bad} differ", diagrams.len()),
    )
}

/// Integer solutions of `a x = b` in the box, by meeting in the middle.
fn brute_solutions(a: &[Vec<i64>], b: &[i64], n: usize) -> Vec<Vec<i64>> {
    let h = n / 2;
    let half = |lo: usize, hi: usize| -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in lo..hi {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (-LATTICE_BOX..=LATTICE_BOX).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let image = |x: &[i64], off: usize| -> Vec<i64> {
        a.iter().map(|row| x.iter().enumerate().map(|(j, v)| row[off + j] * v).sum()).collect()
    };
    let mut left: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
    for x in half(0, h) {
        left.entry(image(&x, 0)).or_default().push(x);
    }
    let mut out = Vec::new();
    for y in half(h, n) {
        let need: Vec<i64> = image(&y, h).iter().zip(b).map(|(v, b)| b - v).collect();
        if let Some(xs) = left.get(&need) {
            for x in xs {
                out.push(x.iter().chain(&y).copied().collect());
            }
        }
    }
    out
}

/// Whether `a x = b (mod m)` has a solution, by meeting in the middle.
fn brute_modular(a: &[Vec<i64>], b: &[i64], n: usize, m: i64) -> bool {
    let h = n / 2;
    let key = |v: &[i64]| v.iter().fold(0u64, |k, x| k * m as u64 + x.rem_euclid(m) as u64);
    let points = |len: usize| -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out.into_iter().flat_map(|v| (0..m).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    };
    let image = |x: &[i64], off: usize| -> Vec<i64> {
        a.iter().map(|row| x.iter().enumerate().map(|(j, v)| row[off + j] * v).sum()).collect()
    };
    let left: HashSet<u64> = points(h).iter().map(|x| key(&image(x, 0))).collect();
    points(n - h).iter().any(|y| {
        let need: Vec<i64> = image(y, h).iter().zip(b).map(|(v, b)| b - v).collect();
        left.contains(&key(&need))
    })
}

fn lattice_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = Vec::new();
    let (mut consistent, mut points) = (0, 0);
    for s in 0..LATTICE_SYSTEMS {
        let n = rng.gen_range(1..=LATTICE_MAX_VARS);
        // Kernel dimension stays at most 3 so the box enumeration stays small.
        let rows = rng.gen_range(n.saturating_sub(3).max(1)..=n + 1);
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..n).map(|_| rng.gen_range(-LATTICE_ENTRY..=LATTICE_ENTRY)).collect())
            .collect();
        let b: Vec<i64> = if rng.gen_bool(0.5) {
            // Consistent by construction.
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
            a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect()
        } else {
            (0..rows).map(|_| rng.gen_range(-LATTICE_ENTRY..=LATTICE_ENTRY)).collect()
        };
        let am = IntMatrix::from_rows(&a);
        let bb: Vec<BigInt> = b.iter().map(|&v| BigInt::from(v)).collect();
        let brute = brute_solutions(&a, &b, n);
        points += brute.len();
        match solve_integer(&am, &bb).map_err(|e| e.to_string())? {
            Solution::Lattice(l) => {
                consistent += 1;
                let solves = am.mul_vec(l.particular()) == bb
                    && l.basis().iter().all(|g| am.mul_vec(g).iter().all(Zero::is_zero));
                let covers = brute
                    .iter()
                    .all(|x| l.contains(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()));
                if !solves || !covers {
                    bad.push(format!("system {s}: lattice differs from box"));
                }
            }
            Solution::Inconsistent(_) => {
                if !brute.is_empty() {
                    bad.push(format!("system {s}: reported inconsistent, box has solutions"));
                }
            }
        }
        let c = solvable_moduli(&am, &bb);
        for m in 1..=MAX_MODULUS {
            if c.admits(m) != brute_modular(&a, &b, n, m as i64) {
                bad.push(format!("system {s}: modulus {m}"));
            }
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{LATTICE_SYSTEMS} systems ({consistent} consistent, {points} box points), moduli 1..={MAX_MODULUS}{}",
            if bad.is_empty() { String::new() } else { format!("; disagree {}", bad.join(", ")) }
        ),
    )
}

fn additivity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    let mut bad = 0;
    let mut attempts = 0;
    while done < ADDITIVITY_PAIRS {
        attempts += 1;
        if attempts > 20 * ADDITIVITY_PAIRS {
            return Err(format!("only {done} pairs in {attempts} draws"));
        }
        let d = draw_diagram(rng);
        let nf = d.faces().len();
        let (f, g) = (rng.gen_range(0..nf), rng.gen_range(0..nf));
        let cf: HashSet<Corner> = d.face(f).corners().iter().copied().collect();
        if f == g || d.face(g).corners().iter().any(|c| cf.contains(c)) {
            continue;
        }
        done += 1;
        let l = Labeling(rng.gen_range(0..d.curve_count()));
        let union: Vec<Corner> = d.face(f).corners().iter().chain(d.face(g).corners()).copied().collect();
        let (terms, rhs) = corner_equation(&d, &union, l, SignConvention::Standard);
        let (ef, eg) = (face_equation(&d, f, l), face_equation(&d, g, l));
        let mut sum: HashMap<usize, i64> = HashMap::new();
        for (v, c) in ef.terms.iter().chain(&eg.terms) {
            *sum.entry(*v).or_default() += c;
        }
        sum.retain(|_, c| *c != 0);
        let got: HashMap<usize, i64> = terms.into_iter().collect();
        if got != sum || rhs != ef.rhs + eg.rhs {
            bad += 1;
        }
    }
    check(bad == 0, format!("{done} corner-disjoint face pairs, {bad} differ"))
}

fn pair_counts(curves: &[PlCurve]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            out.push(intersection_count(&curves[i], &curves[j]).expect("transverse"));
        }
    }
    out
}

fn curve_sanity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    // Disjoint twists on the chains.
    let mut disjoint = 0;
    for g in 1..=4 {
        let f = chain_file(g);
        for c in &f.curves {
            for t in &f.curves {
                if c.name == t.name || intersection_count(c, t).map_err(|e| e.to_string())? != 0 {
                    continue;
                }
                let tw = dehn_twist(&f.model, c, t, 1).map_err(|e| e.to_string())?;
                disjoint += 1;
                if tw.vertices != t.vertices {
                    ok = false;
                    notes.push(format!("twist of {} about {} moved it", t.name, c.name));
                }
            }
        }
    }
    notes.push(format!("{disjoint} disjoint twists identity"));

    // Twist and untwist, then minimal position.
    let mut restored = 0;
    let mut replays = 0;
    let mut genus_checks = 0;
    let mut trials = 0;
    while restored < 10 {
        trials += 1;
        if trials > 200 {
            return Err(format!("only {restored} twist round trips built"));
        }
        let s = draw_sample(rng);
        let emb = to_stacked_diagram(&s.model, &s.curves).map_err(|e| e.to_string())?;
        genus_checks += 1;
        if emb.diagram.genus() != s.model.genus() {
            ok = false;
            notes.push(format!("sample genus {} vs model {}", emb.diagram.genus(), s.model.genus()));
        }
        let k = s.curves.len();
        let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
        if i == j || intersection_count(&s.curves[i], &s.curves[j]).map_err(|e| e.to_string())? == 0 {
            continue;
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let Ok(tw) = dehn_twist(&s.model, &s.curves[i], &s.curves[j], sign) else { continue };
        let Ok(back) = dehn_twist(&s.model, &s.curves[i], &tw, -sign) else { continue };
        let mut sys = s.curves.clone();
        sys[j] = back;
        if sys[j].validate(&s.model).is_err() {
            continue;
        }
        restored += 1;
        let want = pair_counts(&s.curves);
        let m = minimal_position(&s.model, &sys).map_err(|e| e.to_string())?;
        if pair_counts(&m) != want {
            ok = false;
            notes.push(format!("round trip of curve {} about {} not restored", j + 1, i + 1));
        }
        let emb = to_stacked_diagram(&s.model, &m).map_err(|e| e.to_string())?;
        genus_checks += 1;
        if emb.diagram.genus() != s.model.genus() {
            ok = false;
            notes.push("genus changed after minimal position".into());
        }
        // Shuffled removal orders agree on the counts.
        if replays < CONFLUENCE_REPLAYS {
            for _ in 0..CONFLUENCE_REPLAYS / 5 {
                let r = minimal_position_seeded(&s.model, &sys, rng.gen()).map_err(|e| e.to_string())?;
                replays += 1;
                if pair_counts(&r) != want {
                    ok = false;
                    notes.push("shuffled reduction disagrees".into());
                }
            }
        }
    }
    notes.push(format!("{restored} twist round trips restored"));
    notes.push(format!("{replays} shuffled replays agree"));

    // Pipeline genus.
    let mono = Monodromy::bundled();
    let ordering = parse_ordering(DEFAULT_ORDERING).map_err(|e| e.to_string())?;
    let word = mono.knot("7_6").ok_or("no 7_6 word")?;
    let p = build_pseudocoronation(word, &ordering, true).map_err(|e| e.to_string())?;
    genus_checks += 1;
    if p.diagram.genus() != p.model.genus() {
        ok = false;
        notes.push(format!("pipeline genus {} vs model {}", p.diagram.genus(), p.model.genus()));
    }
    notes.push(format!("{genus_checks} genus checks"));
    check(ok, notes.join("; "))
}
