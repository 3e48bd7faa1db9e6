//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use artinian::betti::{
    betti_table, complete_intersection_betti, koszul_square_vanishes, monomial_betti_table, BettiTable,
};
use artinian::form::random_form;
use artinian::froberg::{extended_hl, froberg_series};
use artinian::ghost::{
    check_conjecture_window, check_prediction, last_module_ghost_instance, detect_ghosts, window_socle_degree,
};
use artinian::lefschetz::{check_wlp, degree_condition_checkers, DEFAULT_TRIALS};
use artinian::linkage::{colon_degreewise, linked_hilbert_function, monomial_colon, MonomialIdeal};
use artinian::points::{hypersurface_section_wlp, syzygy_data, PlanePoints, SectionMode};
use artinian::seed;
use artinian::{Field, GradedBasis, GradedIdeal, HilbertFunction, PrimeField, Quotient, RationalField};

const GOLDEN_DIAGRAM: &str = "\
; total:      1     6    13    10     2 
; --------------------------------------
;     0:      1     -     -     -     - 
;     1:      -     3     -     -     - 
;     2:      -     -     3     -     - 
;     3:      -     1     -     1     - 
;     4:      -     2    10     8     - 
;     5:      -     -     -     1     2 
";

const NON_WLP_IDEAL: &str = "x^2,xy,xz,y^3,z^3";

type Outcome = Result<String, String>;

#[derive(Default)]
struct Ctx {
    /// Every table computed so far, for the Euler-identity suite.
    tables: Vec<(String, BettiTable, HilbertFunction)>,
}

impl Ctx {
    fn betti<F: Field>(&mut self, label: &str, q: &Quotient<F>) -> Result<BettiTable, String> {
        let t = betti_table(q, None).map_err(|e| format!("{label}: {e}"))?;
        self.tables.push((label.to_string(), t.clone(), q.hilbert_function(None)));
        Ok(t)
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gfp() -> PrimeField {
    PrimeField::default()
}

fn monomial_quotient<F: Field>(field: F, s: &str) -> Quotient<F> {
    Quotient::new(MonomialIdeal::parse(s, Some(3)).unwrap().to_graded(field).unwrap())
}

fn multiset(table: &BettiTable, i: usize) -> Vec<usize> {
    table.shift_multiset(i)
}

fn criterion_1(ctx: &mut Ctx) -> Outcome {
    let t = ctx.betti("x^2,xy,xz,y^3,z^3", &monomial_quotient(gfp(), NON_WLP_IDEAL))?;
    let got = (multiset(&t, 1), multiset(&t, 2), multiset(&t, 3));
    let want = (vec![2, 2, 2, 3, 3], vec![3, 3, 3, 4, 4, 6], vec![4, 7]);
    ensure(got == want, || format!("shifts {got:?}, expected {want:?}"))?;
    Ok("β1 = 2^3 3^2, β2 = 3^3 4^2 6, β3 = 4 7".into())
}

fn criterion_2(ctx: &mut Ctx) -> Outcome {
    let results: Vec<(u64, Result<String, String>)> = (0..20u64)
        .into_par_iter()
        .map(|s| {
            let ideal = GradedIdeal::random(gfp(), 4, &[2, 2, 2, 4, 5, 5], s).unwrap();
            let q = Quotient::new(ideal.clone());
            match betti_table(&q, None).map(|t| t.render_diagram()) {
                Ok(d) if d == GOLDEN_DIAGRAM => (s, Ok(d)),
                Ok(d) => (s, Err(format!("{d}{}", ideal.to_document().to_json()))),
                Err(e) => (s, Err(e.to_string())),
            }
        })
        .collect();
    let q0 = Quotient::new(GradedIdeal::random(gfp(), 4, &[2, 2, 2, 4, 5, 5], 0).unwrap());
    ctx.betti("general 2,2,2,4,5,5 seed 0", &q0)?;
    let matches = results.iter().filter(|r| r.1.is_ok()).count();
    for (s, r) in &results {
        if let Err(e) = r {
            println!("    seed {s} deviates:\n{e}");
        }
    }
    ensure(matches >= 18, || format!("{matches}/20 seeds match"))?;
    Ok(format!("{matches}/20 seeds match the diagram byte-for-byte"))
}

fn criterion_3(ctx: &mut Ctx) -> Outcome {
    let degrees = [5, 5, 5, 7];
    let q = Quotient::new(GradedIdeal::random(gfp(), 3, &degrees, 1).unwrap());
    let t = ctx.betti("general 5,5,5,7", &q)?;
    let got = (t.shifts(2), t.shifts(3));
    let want = (vec![(10, 7), (11, 1)], vec![(11, 1), (12, 4)]);
    ensure(got == want, || format!("F2, F3 = {got:?}, expected {want:?}"))?;
    let report = detect_ghosts(&t, &degrees, None);
    let nk: Vec<_> = report.non_koszul().map(|g| (g.i, g.j)).collect();
    ensure(nk == [(2, 11)], || format!("non-Koszul ghosts {nk:?}"))?;
    let h = q.hilbert_function(None);
    let c = window_socle_degree(3, &degrees, &h).ok_or("no socle degree")?;
    ensure(c == 9 && h.socle_degree() == Some(9), || format!("c = {c}, h = {h}"))?;
    let w = check_conjecture_window(&t, &degrees, c);
    ensure(w.holds, || format!("window violated: {w:?}"))?;
    Ok("shift 11 shared by F2, F3 is non-Koszul; window holds with c = 9".into())
}

fn criterion_4(ctx: &mut Ctx) -> Outcome {
    let outcomes: Vec<Result<BettiTable, String>> = (0..10u64)
        .into_par_iter()
        .map(|s| {
            let inst = last_module_ghost_instance(gfp(), &[3, 3, 3, 3], s).map_err(|e| e.to_string())?;
            let q = Quotient::new(inst.ideal.clone());
            let t = betti_table(&q, None).map_err(|e| e.to_string())?;
            let check = check_prediction(&detect_ghosts(&t, &inst.degrees(), None), &inst.predicted);
            ensure(check.all_confirmed() && inst.predicted == [(3, 10)], || {
                format!("seed {s}: {check:?}\n{}", t.render_diagram())
            })?;
            Ok(t)
        })
        .collect();
    let mut agree = 0;
    for o in outcomes {
        match o {
            Ok(_) => agree += 1,
            Err(e) => println!("    {e}"),
        }
    }
    let inst = last_module_ghost_instance(gfp(), &[3, 3, 3, 3], 0).unwrap();
    ctx.betti("3,3,3,3 + 7,7 seed 0", &Quotient::new(inst.ideal))?;
    ensure(agree == 10, || format!("{agree}/10 seeds"))?;
    Ok("non-Koszul shift 10 shared by F3, F4 on 10/10 seeds".into())
}

fn criterion_5() -> Outcome {
    let mut instances = Vec::new();
    for r in 4..=8usize {
        let mut degrees = vec![2usize; r];
        loop {
            for s in 0..5u64 {
                instances.push((degrees.clone(), s));
            }
            // next nondecreasing vector over 2..=5
            match degrees.iter().rposition(|&d| d < 5) {
                Some(k) => {
                    let v = degrees[k] + 1;
                    degrees[k..].iter_mut().for_each(|d| *d = v);
                }
                None => break,
            }
        }
    }
    let failures: Vec<String> = instances
        .par_iter()
        .filter_map(|(degrees, s)| {
            let path: Vec<u64> = std::iter::once(seed::stream::INSTANCE)
                .chain(degrees.iter().map(|&d| d as u64))
                .collect();
            let seed = seed::derive(*s, &path);
            let q = Quotient::new(GradedIdeal::random(gfp(), 3, degrees, seed).unwrap());
            let h = q.hilbert_function(None);
            let p = froberg_series(3, degrees, None);
            let expected: Vec<usize> = p.values.iter().map(|&v| v as usize).take(h.values.len()).collect();
            let same = h.artinian_confirmed
                && expected == h.values
                && p.values[h.values.len()..].iter().all(|&v| v == 0);
            (!same).then(|| format!("{degrees:?} seed {s}: {h} vs {:?}", p.values))
        })
        .collect();
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    ensure(failures.is_empty(), || format!("{}/{} mismatches", failures.len(), instances.len()))?;
    Ok(format!("{}/{} instances match the series", instances.len(), instances.len()))
}

fn criterion_6_with<F: Field>(field: F) -> Result<(usize, usize), String> {
    let q = Quotient::new(GradedIdeal::random(field, 4, &[4; 6], 6).unwrap());
    Ok((q.dim(4), q.dim(5)))
}

fn criterion_6() -> Outcome {
    let hl = extended_hl(4, 4, 6);
    ensure(hl.t0 == Some(1) && hl.dim(1) == Some(32), || format!("{hl:?}"))?;
    let (d4, d5) = criterion_6_with(gfp())?;
    ensure(Some(d4 as i64) == hl.dim(0) && d5 == 32, || format!("dim A_4 = {d4}, dim A_5 = {d5}"))?;
    Ok("t0 = 1, dim A_5 = 32 by rank".into())
}

fn criterion_7a() -> Result<String, String> {
    let q = monomial_quotient(gfp(), NON_WLP_IDEAL);
    let v = check_wlp(&q, DEFAULT_TRIALS, 1).map_err(|e| e.to_string())?;
    let w = v.witnesses.first().ok_or("WLP holds on the example")?;
    ensure(!v.holds && (w.t, w.expected, w.achieved) == (1, 3, 2), || format!("{:?}", v.witnesses))?;
    let i1 = MonomialIdeal::parse(NON_WLP_IDEAL, Some(3)).unwrap();
    let j1 = MonomialIdeal::parse("x^2,y^3,z^3", Some(3)).unwrap();
    let i2 = monomial_colon(&j1, &i1).unwrap();
    ensure(i2 == MonomialIdeal::parse("x,y^3,z^3,y^2z^2", Some(3)).unwrap(), || format!("I2 = {i2}"))?;
    let j2 = MonomialIdeal::parse("x,y^3,z^3", Some(3)).unwrap();
    let i3 = monomial_colon(&j2, &i2).unwrap();
    ensure(i3 == MonomialIdeal::parse("x,y,z", Some(3)).unwrap(), || format!("I3 = {i3}"))?;
    Ok(format!("witness t=1 rank 2 < 3; I2 = {i2}, I3 = {i3}"))
}

fn criterion_7b() -> Result<String, String> {
    let mut rng = seed::rng(seed::derive(44, &[seed::stream::INSTANCE]));
    let vectors: Vec<Vec<usize>> = (0..5)
        .map(|_| {
            use rand::Rng;
            let r = rng.gen_range(5..=6);
            let mut d: Vec<usize> = (0..r).map(|_| rng.gen_range(2..=4)).collect();
            d.sort();
            d
        })
        .collect();
    let jobs: Vec<(Vec<usize>, u64)> = vectors
        .iter()
        .flat_map(|d| (0..20u64).map(move |s| (d.clone(), s)))
        .collect();
    let failures: Vec<String> = jobs
        .par_iter()
        .filter_map(|(d, s)| {
            let q = Quotient::new(GradedIdeal::random(gfp(), 4, d, *s).unwrap());
            match check_wlp(&q, DEFAULT_TRIALS, *s) {
                Ok(v) if v.holds => None,
                Ok(v) => Some(format!("{d:?} seed {s}: {:?}", v.witnesses)),
                Err(e) => Some(format!("{d:?} seed {s}: {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("WLP on {}/{} (degrees {vectors:?})", jobs.len(), jobs.len()))
}

fn criterion_7c() -> Result<String, String> {
    let f = gfp();
    // (label, ideal, which checker must fire)
    let mut cases: Vec<(String, GradedIdeal<PrimeField>, &'static str)> = Vec::new();
    for degrees in [vec![2, 3, 5], vec![2, 2, 2, 4], vec![2, 2, 3, 5], vec![2, 2, 2, 2, 5]] {
        let n = degrees.len();
        cases.push((format!("monomial CI {degrees:?}"), GradedIdeal::monomial_ci(f, &degrees).unwrap(), "ci"));
        for s in 0..5 {
            cases.push((
                format!("general CI {degrees:?} seed {s}"),
                GradedIdeal::random(f, n, &degrees, s).unwrap(),
                "ci",
            ));
        }
    }
    for (ci, d4) in [(vec![3, 3, 3], 4), (vec![2, 3, 4], 4), (vec![3, 3, 4], 4), (vec![2, 2, 2, 4], 4)] {
        let n = ci.len();
        let tag = if n == 3 { "aci3" } else { "aci" };
        let mono = GradedIdeal::monomial_ci(f, &ci).unwrap();
        // a monomial of degree d4 outside the complete intersection
        let outside = GradedBasis::shared(n, d4)
            .monomials()
            .iter()
            .rev()
            .find(|m| m.exponents().iter().zip(&ci).all(|(&e, &d)| (e as usize) < d))
            .cloned()
            .unwrap();
        cases.push((
            format!("monomial CI {ci:?} + monomial of degree {d4}"),
            mono.with_generators([artinian::Form::monomial(&f, &outside)]).unwrap(),
            tag,
        ));
        for s in 0..5 {
            let extra = random_form(&f, n, d4, seed::derive(s, &[seed::stream::GENERATOR, 99])).unwrap();
            cases.push((
                format!("monomial CI {ci:?} + general form of degree {d4} seed {s}"),
                mono.with_generators([extra]).unwrap(),
                tag,
            ));
            let mut degrees = ci.clone();
            degrees.push(d4);
            cases.push((
                format!("general ACI {degrees:?} seed {s}"),
                GradedIdeal::random(f, n, &degrees, s).unwrap(),
                tag,
            ));
        }
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(label, ideal, tag)| {
            let conds = degree_condition_checkers(ideal.nvars(), &ideal.degrees());
            let fires = match *tag {
                "ci" => conds.large_last_degree == Some(true),
                "aci3" => conds.lambda_minus_one == Some(true),
                _ => conds.aci_general == Some(true),
            };
            if !fires {
                return Some(format!("{label}: hypothesis does not hold ({conds:?})"));
            }
            match check_wlp(&Quotient::new(ideal.clone()), DEFAULT_TRIALS, 3) {
                Ok(v) if v.holds => None,
                Ok(v) => Some(format!("{label}: {:?}", v.witnesses)),
                Err(e) => Some(format!("{label}: {e}")),
            }
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("WLP on {}/{} presets", cases.len(), cases.len()))
}

fn criterion_7() -> Outcome {
    let a = criterion_7a().map_err(|e| format!("(a) {e}"))?;
    let b = criterion_7b().map_err(|e| format!("(b) {e}"))?;
    let c = criterion_7c().map_err(|e| format!("(c) {e}"))?;
    Ok(format!("(a) {a}; (b) {b}; (c) {c}"))
}

/// `h_{R/G}` from the formula and from the colon, plus the three lengths.
fn link_check<F: Field>(j: &GradedIdeal<F>, i: &GradedIdeal<F>) -> Result<(Vec<usize>, [usize; 3]), String> {
    let s = j.degrees().iter().sum::<usize>() - j.nvars();
    let qj = Quotient::new(j.clone());
    let qi = Quotient::new(i.clone());
    let (hj, hi) = (qj.hilbert_function(None), qi.hilbert_function(None));
    let hg = linked_hilbert_function(&hj, &hi, s).map_err(|e| e.to_string())?;
    for t in 0..=s + 1 {
        let by_colon = GradedBasis::shared(j.nvars(), t).len() - colon_degreewise(&qj, i, t);
        ensure(by_colon == hg.get(t), || format!("t = {t}: colon gives {by_colon}, formula {hg}"))?;
    }
    let lengths = [hj.length(), hi.length(), hg.length()];
    ensure(lengths[0] == lengths[1] + lengths[2], || format!("lengths {lengths:?}"))?;
    Ok((hg.values, lengths))
}

fn criterion_8_with<F: Field>(field: F) -> Result<Vec<(Vec<usize>, [usize; 3])>, String> {
    let j = GradedIdeal::random(field.clone(), 3, &[3, 3, 3], 1).unwrap();
    let i = j.with_generators([random_form(&field, 3, 5, 99).unwrap()]).unwrap();
    let first = link_check(&j, &i)?;
    ensure(first.0 == [1, 1, 0], || format!("h_G = {:?}", first.0))?;
    let mono = |s: &str| MonomialIdeal::parse(s, Some(3)).unwrap().to_graded(field.clone()).unwrap();
    let second = link_check(&mono("x^2,y^3,z^3"), &mono(NON_WLP_IDEAL))?;
    let third = link_check(&mono("x,y^3,z^3"), &mono("x,y^3,z^3,y^2z^2"))?;
    Ok(vec![first, second, third])
}

fn criterion_8() -> Outcome {
    let r = criterion_8_with(gfp())?;
    Ok(format!(
        "h_G = {:?}; monomial links {:?}, {:?}; lengths add",
        r[0].0, r[1].0, r[2].0
    ))
}

fn criterion_9() -> Outcome {
    let results: Vec<Result<(), String>> = (0..10u64)
        .into_par_iter()
        .map(|s| {
            let x = PlanePoints::general(gfp(), 5, s).map_err(|e| e.to_string())?;
            let syz = syzygy_data(&x).map_err(|e| e.to_string())?;
            ensure(syz.a == 4, || format!("seed {s}: {syz:?}"))?;
            for mode in [SectionMode::General, SectionMode::Product] {
                let r = hypersurface_section_wlp(&x, 3, mode, DEFAULT_TRIALS, s).map_err(|e| e.to_string())?;
                ensure(r.verdict.holds && r.threshold_met, || format!("seed {s} {mode:?}: {:?}", r.verdict.witnesses))?;
            }
            Ok(())
        })
        .collect();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("a = 4; WLP for general cubic and product of 3 lines on 10/10 seeds each".into())
}

fn criterion_10(ctx: &mut Ctx) -> Outcome {
    // ∂² = 0
    let mut squares: Vec<(String, Quotient<PrimeField>)> = vec![
        ("x^2,xy,xz,y^3,z^3".into(), monomial_quotient(gfp(), NON_WLP_IDEAL)),
        ("general 5,5,5,7".into(), Quotient::new(GradedIdeal::random(gfp(), 3, &[5, 5, 5, 7], 1).unwrap())),
        ("general 2,2,2,4,5,5".into(), Quotient::new(GradedIdeal::random(gfp(), 4, &[2, 2, 2, 4, 5, 5], 0).unwrap())),
    ];
    squares.push(("ci 2,3,3".into(), Quotient::new(GradedIdeal::random(gfp(), 3, &[2, 3, 3], 2).unwrap())));
    let mut pieces = 0;
    for (label, q) in &squares {
        let n = q.nvars();
        let s = q.hilbert_function(None).socle_degree().unwrap();
        for i in 1..n {
            for j in i + 1..=s + n {
                ensure(koszul_square_vanishes(q, i, j), || format!("{label}: ∂² ≠ 0 at ({i}, {j})"))?;
                pieces += 1;
            }
        }
    }

    // general complete intersections through the Koszul engine, monomial
    // ones through the lcm lattice, both against the subset formula
    let mut ci_count = 0;
    for n in 1..=5usize {
        let mut degrees = vec![1usize; n];
        loop {
            let expected = complete_intersection_betti(&degrees);
            let gens = GradedIdeal::monomial_ci(gfp(), &degrees).unwrap().monomial_generators().unwrap();
            let mono = monomial_betti_table(&gfp(), n, &gens);
            ensure(mono.nonzero().eq(expected.nonzero()), || format!("monomial CI {degrees:?}"))?;
            if n <= 3 && degrees.iter().all(|&d| d <= 3) {
                let q = Quotient::new(GradedIdeal::random(gfp(), n, &degrees, 5).unwrap());
                let t = ctx.betti(&format!("general CI {degrees:?}"), &q)?;
                ensure(t.nonzero().eq(expected.nonzero()), || format!("general CI {degrees:?}"))?;
            }
            ci_count += 1;
            match degrees.iter().rposition(|&d| d < 5) {
                Some(k) => {
                    let v = degrees[k] + 1;
                    degrees[k..].iter_mut().for_each(|d| *d = v);
                }
                None => break,
            }
        }
    }

    // Euler identity on every table of the run
    for (label, t, h) in &ctx.tables {
        ensure(t.satisfies_euler_identity(h), || format!("Euler identity fails on {label}"))?;
    }

    // backends agree on integer instances
    let qq = RationalField::default();
    let to_gfp = |i: &GradedIdeal<RationalField>| i.map_field(gfp()).unwrap();
    let c1 = betti_table(&monomial_quotient(qq, NON_WLP_IDEAL), None).unwrap();
    let c1p = betti_table(&monomial_quotient(gfp(), NON_WLP_IDEAL), None).unwrap();
    ensure(c1.nonzero().eq(c1p.nonzero()), || "criterion 1 tables differ".into())?;
    let i3 = GradedIdeal::random(qq, 3, &[5, 5, 5, 7], 1).unwrap();
    let c3 = betti_table(&Quotient::new(i3.clone()), None).unwrap();
    let c3p = betti_table(&Quotient::new(to_gfp(&i3)), None).unwrap();
    ensure(c3.nonzero().eq(c3p.nonzero()), || "criterion 3 tables differ".into())?;
    ensure(c3.shifts(2) == [(10, 7), (11, 1)], || format!("rational F2 = {:?}", c3.shifts(2)))?;
    let i6 = GradedIdeal::random(qq, 4, &[4; 6], 6).unwrap();
    let (q6, q6p) = (Quotient::new(i6.clone()), Quotient::new(to_gfp(&i6)));
    ensure(q6.dim(5) == 32 && q6p.dim(5) == 32, || "criterion 6 ranks differ".into())?;
    let r8 = criterion_8_with(qq)?;
    let r8p = criterion_8_with(gfp())?;
    ensure(r8 == r8p, || format!("criterion 8: {r8:?} vs {r8p:?}"))?;

    Ok(format!(
        "∂² = 0 on {pieces} pieces; {ci_count} CI tables; Euler on {} tables; backends agree on 1, 3, 6, 8",
        ctx.tables.len()
    ))
}

fn main() -> ExitCode {
    let mut ctx = Ctx::default();
    let mut failed = 0;
    let mut report = |id: usize, limit: Option<Duration>, f: &mut dyn FnMut(&mut Ctx) -> Outcome, ctx: &mut Ctx| {
        let start = Instant::now();
        let out = f(ctx);
        let elapsed = start.elapsed();
        let out = match (out, limit) {
            (Ok(msg), Some(l)) if elapsed > l => Err(format!("{msg}; took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match out {
            Ok(msg) => println!("criterion {id:>2}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    };
    let secs = |s| Some(Duration::from_secs(s));
    report(1, secs(1), &mut criterion_1, &mut ctx);
    report(2, secs(60), &mut criterion_2, &mut ctx);
    report(3, secs(10), &mut criterion_3, &mut ctx);
    report(4, secs(300), &mut criterion_4, &mut ctx);
    report(5, None, &mut |_| criterion_5(), &mut ctx);
    report(6, None, &mut |_| criterion_6(), &mut ctx);
    report(7, None, &mut |_| criterion_7(), &mut ctx);
    report(8, None, &mut |_| criterion_8(), &mut ctx);
    report(9, None, &mut |_| criterion_9(), &mut ctx);
    report(10, None, &mut criterion_10, &mut ctx);
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
