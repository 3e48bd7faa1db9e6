use std::fmt::Write as _;
use std::path::Path;

use artinian::betti::{betti_table, BettiTable};
use artinian::form::parse_monomials;
use artinian::froberg::froberg_series;
use artinian::ghost::{
    check_conjecture_window, check_prediction, detect_ghosts, last_module_ghost_instance, middle_ghost_default_degrees,
    middle_ghost_instance, socle_forms_instance, window_socle_degree, GhostReport,
};
use artinian::lefschetz::{
    check_property, degree_condition_checkers, restriction_avoids_kernel, LefschetzVerdict, Property,
};
use artinian::linkage::{colon_degreewise, colon_ideal, linked_hilbert_function, monomial_colon, MonomialIdeal};
use artinian::points::{hypersurface_section_wlp, syzygy_data, PlanePoints};
use artinian::{Backend, Error, Field, GradedBasis, GradedIdeal, HilbertFunction, IdealDocument, Quotient};
use serde_json::{json, Value};

use crate::args::{
    Command,
    BettiParams, FrobergParams, GhostParams, HilbertParams, LefschetzParams, LinkParams, PointConfig, PointsParams,
    Preset,
};
use crate::error::{CliError, CliResult};
use crate::instance::{read_document, requested_backend, resolve_backend, Source};
use crate::with_field;

/// A finished single-instance computation.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub backend: Backend,
    pub seed: u64,
    pub result: Value,
    pub instance: Option<IdealDocument>,
    /// Headline boolean of the experiment, used for sweep rates.
    pub outcome: Option<bool>,
    pub text: String,
}

struct Body {
    result: Value,
    text: String,
    instance: Option<IdealDocument>,
    outcome: Option<bool>,
}

fn params_value<T: serde::Serialize>(p: &T) -> Value {
    serde_json::to_value(p).expect("parameters serialize")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn report(command: &'static str, params: Value, backend: Backend, seed: u64, body: Body) -> Report {
    Report {
        command,
        params,
        backend,
        seed,
        result: body.result,
        instance: body.instance,
        outcome: body.outcome,
        text: body.text,
    }
}

/// Columns padded to the widest entry; `rows` are (label, cells).
pub fn aligned(rows: &[(&str, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let cols = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.1.get(c)).map(String::len).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for (label, cells) in rows {
        let mut line = format!("{label:<label_w$} |");
        for (c, w) in cells.iter().zip(&widths) {
            write!(line, " {c:>w$}").unwrap();
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn module_lines(table: &BettiTable) -> String {
    let mut out = String::new();
    for i in 1..=table.n {
        let shifts = table.shifts(i);
        if shifts.is_empty() {
            continue;
        }
        let terms: Vec<String> = shifts
            .iter()
            .map(|&(j, b)| if b == 1 { format!("R(-{j})") } else { format!("R(-{j})^{b}") })
            .collect();
        writeln!(out, "F{i}: {}", terms.join(" + ")).unwrap();
    }
    out
}

pub fn hilbert(p: &HilbertParams) -> CliResult<Report> {
    let src = Source::from_args(&p.instance)?;
    let backend = src.backend(&p.field)?;
    let body = with_field!(backend, |f| hilbert_with(f, &src, p.tmax)?);
    Ok(report("hilbert", params_value(p), backend, p.instance.seed, body))
}

fn hilbert_with<F: Field>(field: F, src: &Source, tmax: Option<usize>) -> CliResult<Body> {
    let ideal = src.build(field)?;
    let h = Quotient::new(ideal.clone()).hilbert_function(tmax);
    let text = format!(
        "h = {h}\nsocle degree {}, length {}\n",
        h.socle_degree().map_or("unknown".into(), |s| s.to_string()),
        h.length()
    );
    Ok(Body {
        result: json!({
            "hilbert_function": h.values,
            "artinian_confirmed": h.artinian_confirmed,
            "socle_degree": h.socle_degree(),
            "length": h.length(),
        }),
        text,
        instance: Some(ideal.to_document()),
        outcome: None,
    })
}

pub fn froberg(p: &FrobergParams) -> CliResult<Report> {
    if p.n == 0 {
        return Err(CliError::usage("--n must be positive"));
    }
    if p.degrees.contains(&0) {
        return Err(CliError::usage("degrees must be positive"));
    }
    let backend = resolve_backend(&p.field)?;
    let pred = froberg_series(p.n, &p.degrees, p.bound);
    let bound = pred.values.len() - 1;
    let cells = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>();
    let mut rows = vec![
        ("t", (0..=bound).map(|t| t.to_string()).collect()),
        ("predicted", cells(&pred.values)),
    ];
    let mut result = json!({ "prediction": pred });
    let mut outcome = None;
    let mut instance = None;
    if p.compare {
        let (h, doc) = with_field!(backend, |f| {
            let ideal = GradedIdeal::random(f, p.n, &p.degrees, p.seed)?;
            (Quotient::new(ideal.clone()).hilbert_function(Some(bound)), ideal.to_document())
        });
        let computed: Vec<u64> = (0..=bound).map(|t| h.get(t) as u64).collect();
        let matches = computed == pred.values;
        rows.push(("computed", cells(&computed)));
        result["computed"] = to_value(&computed);
        result["matches"] = json!(matches);
        outcome = Some(matches);
        instance = Some(doc);
    }
    let mut text = aligned(&rows);
    if let Some(m) = outcome {
        writeln!(text, "{}", if m { "matches the prediction" } else { "differs from the prediction" }).unwrap();
    }
    let body = Body {
        result,
        text,
        instance,
        outcome,
    };
    Ok(report("froberg", params_value(p), backend, p.seed, body))
}

pub fn lefschetz(property: Property, p: &LefschetzParams) -> CliResult<Report> {
    let src = Source::from_args(&p.instance)?;
    let backend = src.backend(&p.field)?;
    let body = with_field!(backend, |f| lefschetz_with(f, property, &src, p)?);
    let command = match property {
        Property::Wlp => "wlp",
        Property::Slp => "slp",
        Property::Mrp => "mrp",
    };
    Ok(report(command, params_value(p), backend, p.instance.seed, body))
}

fn verdict_text(v: &LefschetzVerdict) -> String {
    let mut out = format!(
        "{} {}\nh = {}\n",
        v.property,
        if v.holds { "holds" } else { "fails" },
        join(&v.hilbert_function)
    );
    for w in &v.witnesses {
        writeln!(
            out,
            "witness t={} d={}: expected rank {}, achieved {}",
            w.t, w.d, w.expected, w.achieved
        )
        .unwrap();
    }
    if let Some(note) = v.confidence_note() {
        writeln!(out, "{note}").unwrap();
    }
    out
}

fn lefschetz_with<F: Field>(field: F, property: Property, src: &Source, p: &LefschetzParams) -> CliResult<Body> {
    let ideal = src.build(field)?;
    let q = Quotient::new(ideal.clone());
    let v = check_property(&q, property, p.trials, p.instance.seed)?;
    let conditions = degree_condition_checkers(ideal.nvars(), &ideal.degrees());
    let mut text = verdict_text(&v);
    let mut result = json!({
        "holds": v.holds,
        "verdict": v,
        "degree_conditions": conditions,
        "note": v.confidence_note(),
    });
    if property == Property::Mrp {
        let slp = check_property(&q, Property::Slp, p.trials, p.instance.seed)?;
        result["slp_holds"] = json!(slp.holds);
        if slp.holds != v.holds {
            writeln!(text, "SLP {} on this instance", if slp.holds { "holds" } else { "fails" }).unwrap();
        }
    }
    if conditions.lambda_minus_two == Some(true) {
        // the regular sequence is F_1, F_2, F_3; the fourth form must survive restriction
        let gens = ideal.generators();
        let j = GradedIdeal::new(ideal.field().clone(), 3, gens[..3].to_vec())?;
        let found = restriction_avoids_kernel(&j, &gens[3], p.trials, p.instance.seed)?;
        result["side_hypothesis"] = json!({ "holds": found.is_some(), "linear_form_seed": found });
        writeln!(
            text,
            "fourth form {} restriction to a linear form",
            if found.is_some() { "survives" } else { "did not survive" }
        )
        .unwrap();
    }
    Ok(Body {
        result,
        text,
        instance: Some(ideal.to_document()),
        outcome: Some(v.holds),
    })
}

pub fn betti(p: &BettiParams, json_mode: bool) -> CliResult<Report> {
    if p.diagram && json_mode {
        return Err(CliError::usage("--diagram and --json are mutually exclusive"));
    }
    let src = Source::from_args(&p.instance)?;
    let backend = src.backend(&p.field)?;
    let body = with_field!(backend, |f| betti_with(f, &src, p)?);
    Ok(report("betti", params_value(p), backend, p.instance.seed, body))
}

fn betti_with<F: Field>(field: F, src: &Source, p: &BettiParams) -> CliResult<Body> {
    let ideal = src.build(field)?;
    let q = Quotient::new(ideal.clone());
    let table = betti_table(&q, p.jmax)?;
    let h = q.hilbert_function(None);
    let mut text = table.render_diagram();
    if !p.diagram {
        text.push_str(&module_lines(&table));
    }
    let shifts: Vec<_> = (0..=table.n).map(|i| table.shifts(i)).collect();
    Ok(Body {
        result: json!({
            "table": table,
            "totals": table.totals(),
            "shifts": shifts,
            "hilbert_function": h.values,
            "euler_identity": table.satisfies_euler_identity(&h),
        }),
        text,
        instance: Some(ideal.to_document()),
        outcome: None,
    })
}

pub fn ghosts(p: &GhostParams) -> CliResult<Report> {
    let backend;
    let body;
    if let Some(preset) = p.preset {
        let a = &p.instance;
        if a.ideal.is_some() || a.monomial.is_some() || a.monomial_ci {
            return Err(CliError::usage("--preset builds its own instance from --n, --degrees and --seed"));
        }
        let degrees = if !a.degrees.is_empty() {
            a.degrees.clone()
        } else if preset == Preset::MiddleGhost {
            let n = a.n.ok_or_else(|| CliError::usage("--preset middle-ghost needs --n or --degrees"))?;
            middle_ghost_default_degrees(n)
                .ok_or_else(|| CliError::usage("--preset middle-ghost needs 4 <= n <= 6"))?
        } else {
            return Err(CliError::usage("--preset needs the complete intersection --degrees"));
        };
        if a.n.is_some_and(|n| n != degrees.len()) {
            return Err(CliError::usage("--n must equal the number of complete intersection degrees"));
        }
        if p.q.is_some() && preset != Preset::SocleForms {
            return Err(CliError::usage("--q only applies to --preset socle-forms"));
        }
        backend = resolve_backend(&p.field)?;
        body = with_field!(backend, |f| {
            let inst = match preset {
                Preset::SocleForms => {
                    let q = p.q.ok_or_else(|| CliError::usage("--preset socle-forms needs --q"))?;
                    socle_forms_instance(f, &degrees, q, a.seed)?
                }
                Preset::LastModule => last_module_ghost_instance(f, &degrees, a.seed)?,
                Preset::MiddleGhost => middle_ghost_instance(f, &degrees, a.seed)?,
            };
            let info = json!({
                "preset": preset,
                "ci_degrees": inst.ci_degrees,
                "extra_count": inst.extra_count,
                "c": inst.c,
            });
            ghosts_with(inst.ideal.clone(), p.jmax, Some((inst.c, inst.predicted.clone(), info)))?
        });
    } else {
        if p.q.is_some() {
            return Err(CliError::usage("--q needs --preset socle-forms"));
        }
        let src = Source::from_args(&p.instance)?;
        backend = src.backend(&p.field)?;
        body = with_field!(backend, |f| ghosts_with(src.build(f)?, p.jmax, None)?);
    }
    Ok(report("ghosts", params_value(p), backend, p.instance.seed, body))
}

type Prediction = (usize, Vec<(usize, usize)>, Value);

fn ghost_lines(report: &GhostReport) -> String {
    let mut out = String::new();
    for g in &report.ghosts {
        let kind = match (g.koszul_explicable, g.koszul_sides) {
            (true, _) => "Koszul",
            (false, 1) => "non-Koszul, one side Koszul",
            _ => "non-Koszul",
        };
        writeln!(
            out,
            "F{}, F{} share R(-{}): {} and {} ({kind})",
            g.i,
            g.i + 1,
            g.j,
            g.beta_i,
            g.beta_next
        )
        .unwrap();
    }
    if report.ghosts.is_empty() {
        out.push_str("no ghost terms\n");
    }
    out
}

fn ghosts_with<F: Field>(ideal: GradedIdeal<F>, jmax: Option<usize>, preset: Option<Prediction>) -> CliResult<Body> {
    let q = Quotient::new(ideal.clone());
    let table = betti_table(&q, jmax)?;
    let h = q.hilbert_function(None);
    let degrees = ideal.degrees();
    let report = detect_ghosts(&table, &degrees, h.socle_degree());
    let c = match &preset {
        Some((c, _, _)) => Some(*c),
        None => window_socle_degree(ideal.nvars(), &degrees, &h),
    };
    let window = c.map(|c| check_conjecture_window(&table, &degrees, c));
    let mut text = table.render_diagram();
    text.push_str(&ghost_lines(&report));
    if let Some(w) = &window {
        writeln!(text, "window with c = {}: {}", w.c, if w.holds { "holds" } else { "violated" }).unwrap();
    }
    let mut result = json!({
        "table": table,
        "hilbert_function": h.values,
        "report": report,
        "window": window,
    });
    let mut outcome = window.as_ref().map(|w| w.holds);
    if let Some((_, predicted, info)) = preset {
        let check = check_prediction(&report, &predicted);
        for &(i, j) in &check.predicted {
            let state = if check.confirmed.contains(&(i, j)) { "confirmed" } else { "missing" };
            writeln!(text, "predicted F{i}, F{} share R(-{j}): {state}", i + 1).unwrap();
        }
        for &(i, j) in &check.unpredicted {
            writeln!(text, "unpredicted non-Koszul ghost F{i}, F{} R(-{j})", i + 1).unwrap();
        }
        outcome = Some(check.exact());
        result["instance"] = info;
        result["prediction"] = to_value(&check);
        result["exact"] = json!(check.exact());
    }
    Ok(Body {
        result,
        text,
        instance: Some(ideal.to_document()),
        outcome,
    })
}

struct Linked {
    hj: HilbertFunction,
    hi: HilbertFunction,
    socle: usize,
    formula: HilbertFunction,
    degreewise: Vec<usize>,
}

fn linked_pair<F: Field>(j: &GradedIdeal<F>, i: &GradedIdeal<F>) -> CliResult<(Linked, Quotient<F>)> {
    let qj = Quotient::new(j.clone());
    let qi = Quotient::new(i.clone());
    if !j.generators().iter().all(|g| qi.contains(g)) {
        return Err(Error::Precondition("J is not contained in I".into()).into());
    }
    let hj = qj.hilbert_function(None);
    let hi = qi.hilbert_function(None);
    let socle = hj.socle_degree().ok_or(Error::NotArtinian {
        t_max: qj.default_t_max(),
    })?;
    let formula = linked_hilbert_function(&hj, &hi, socle)?;
    let degreewise = (0..formula.values.len())
        .map(|t| GradedBasis::shared(j.nvars(), t).len() - colon_degreewise(&qj, i, t))
        .collect();
    Ok((
        Linked {
            hj,
            hi,
            socle,
            formula,
            degreewise,
        },
        qj,
    ))
}

impl Linked {
    fn agree(&self, other: &[usize]) -> bool {
        self.formula.values == other
    }

    fn lengths_add(&self) -> bool {
        self.hj.length() == self.hi.length() + self.formula.length()
    }

    fn json(&self) -> Value {
        json!({
            "hilbert_j": self.hj.values,
            "hilbert_i": self.hi.values,
            "socle_degree_j": self.socle,
            "linked_formula": self.formula.values,
            "linked_degreewise": self.degreewise,
            "lengths_add": self.lengths_add(),
        })
    }

    fn text(&self) -> String {
        format!(
            "h_J = {}\nh_I = {}\nh_G = {} (reflection in degree {}), colon dimensions {}\nlengths {} = {} + {}\n",
            self.hj,
            self.hi,
            join(&self.formula.values),
            self.socle,
            join(&self.degreewise),
            self.hj.length(),
            self.hi.length(),
            self.formula.length()
        )
    }
}

pub fn link(p: &LinkParams) -> CliResult<Report> {
    if p.monomial {
        let backend = resolve_backend(&p.field)?;
        let body = with_field!(backend, |f| link_monomial(f, p)?);
        return Ok(report("link", params_value(p), backend, 0, body));
    }
    let dj = read_document(Path::new(&p.j))?;
    let di = read_document(Path::new(&p.i))?;
    if dj.prime != di.prime {
        return Err(CliError::usage(format!("J is over {} but I is over {}", dj.prime, di.prime)));
    }
    if let Some(b) = requested_backend(&p.field)? {
        if b != dj.prime {
            return Err(CliError::usage(format!("ideal documents are over {}, but {b} was requested", dj.prime)));
        }
    }
    let backend = dj.prime;
    let body = with_field!(backend, |f| {
        let j = GradedIdeal::from_document(f, &dj)?;
        let i = GradedIdeal::from_document(f, &di)?;
        link_graded(&j, &i)?
    });
    Ok(report("link", params_value(p), backend, 0, body))
}

fn link_graded<F: Field>(j: &GradedIdeal<F>, i: &GradedIdeal<F>) -> CliResult<Body> {
    let (linked, qj) = linked_pair(j, i)?;
    let g = colon_ideal(&qj, i, linked.socle + 1)?;
    let hg = Quotient::new(g.clone()).hilbert_function(None);
    let back = Quotient::new(colon_ideal(&qj, &g, linked.socle + 1)?).hilbert_function(None);
    let agree = linked.agree(&linked.degreewise) && linked.agree(&hg.values);
    let mut result = linked.json();
    result["linked_computed"] = to_value(&hg.values);
    result["residual"] = to_value(&g.to_document());
    result["second_link_hilbert"] = to_value(&back.values);
    result["second_link_matches_i"] = json!(back.values == linked.hi.values);
    result["agree"] = json!(agree);
    let mut text = linked.text();
    writeln!(text, "formula {} the residual", if agree { "matches" } else { "differs from" }).unwrap();
    Ok(Body {
        result,
        text,
        instance: Some(i.to_document()),
        outcome: Some(agree && linked.lengths_add()),
    })
}

fn link_monomial<F: Field>(field: F, p: &LinkParams) -> CliResult<Body> {
    let parse_n = |s: &str| parse_monomials(s, None).map(|r| r.0).map_err(|e| CliError::usage(e.to_string()));
    let n = parse_n(&p.j)?.max(parse_n(&p.i)?);
    let mono = |s: &str| MonomialIdeal::parse(s, Some(n)).map_err(|e| CliError::usage(e.to_string()));
    let (mj, mi) = (mono(&p.j)?, mono(&p.i)?);
    if !mi.contains_ideal(&mj) {
        return Err(Error::Precondition("J is not contained in I".into()).into());
    }
    let mg = monomial_colon(&mj, &mi)?;
    let back = monomial_colon(&mj, &mg)?;
    let j = mj.to_graded(field.clone())?;
    let i = mi.to_graded(field)?;
    let (linked, _) = linked_pair(&j, &i)?;
    let monomial_dims: Vec<usize> = (0..linked.formula.values.len()).map(|t| mg.quotient_dim(t)).collect();
    let agree = linked.agree(&linked.degreewise) && linked.agree(&monomial_dims);
    let back_is_i = back.contains_ideal(&mi) && mi.contains_ideal(&back);
    let mut result = linked.json();
    result["J"] = json!(mj.to_string());
    result["I"] = json!(mi.to_string());
    result["residual"] = json!(mg.to_string());
    result["second_link"] = json!(back.to_string());
    result["second_link_matches_i"] = json!(back_is_i);
    result["linked_computed"] = to_value(&monomial_dims);
    result["agree"] = json!(agree);
    let mut text = format!("G = J : I = {mg}\nJ : G = {back}\n");
    text.push_str(&linked.text());
    writeln!(text, "formula {} the residual", if agree { "matches" } else { "differs from" }).unwrap();
    Ok(Body {
        result,
        text,
        instance: Some(i.to_document()),
        outcome: Some(agree && linked.lengths_add()),
    })
}

fn read_points(path: &Path) -> CliResult<Vec<[i64; 3]>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut points = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords: Vec<i64> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::io(path, format!("line {}: {e}", k + 1)))?;
        let p: [i64; 3] = coords
            .try_into()
            .map_err(|_| CliError::io(path, format!("line {}: expected three coordinates", k + 1)))?;
        points.push(p);
    }
    Ok(points)
}

pub fn points(p: &PointsParams) -> CliResult<Report> {
    let backend = resolve_backend(&p.field)?;
    let coords = match p.config {
        PointConfig::File => {
            let path = p.file.as_ref().ok_or_else(|| CliError::usage("--config file needs --file"))?;
            let c = read_points(path)?;
            if p.count.is_some_and(|e| e != c.len()) {
                return Err(CliError::usage(format!("--count does not match the {} points in the file", c.len())));
            }
            Some(c)
        }
        _ => {
            if p.file.is_some() {
                return Err(CliError::usage("--file needs --config file"));
            }
            if p.count.is_none_or(|e| e == 0) {
                return Err(CliError::usage("--count must be positive"));
            }
            None
        }
    };
    if p.fdeg == Some(0) {
        return Err(CliError::usage("--fdeg must be positive"));
    }
    let body = with_field!(backend, |f| {
        let x = match (p.config, &coords) {
            (PointConfig::File, Some(c)) => PlanePoints::from_integers(f, c)?,
            (PointConfig::Collinear, _) => PlanePoints::collinear(f, p.count.unwrap_or(0), p.seed)?,
            _ => PlanePoints::general(f, p.count.unwrap_or(0), p.seed)?,
        };
        points_with(&x, p)?
    });
    Ok(report("points", params_value(p), backend, p.seed, body))
}

fn points_with<F: Field>(x: &PlanePoints<F>, p: &PointsParams) -> CliResult<Body> {
    let field = x.field();
    let hx = x.hilbert_function();
    let syz = syzygy_data(x)?;
    let coords: Vec<Vec<String>> = x.points().iter().map(|q| q.iter().map(|c| field.format(c)).collect()).collect();
    let mut text = format!(
        "{} points, h_X = {}\ngenerators in degrees {}, syzygies in degrees {}, a = {}\n",
        x.degree(),
        join(&hx.values),
        join(&syz.generator_degrees),
        join(&syz.syzygy_degrees),
        syz.a
    );
    let mut result = json!({
        "count": x.degree(),
        "points": coords,
        "points_hilbert": hx.values,
        "stabilization_degree": x.stabilization_degree(),
        "syzygies": syz,
    });
    let mut outcome = None;
    if let Some(d) = p.fdeg {
        let r = hypersurface_section_wlp(x, d, p.fmode.into(), p.trials, p.seed)?;
        writeln!(
            text,
            "section of degree {d}: d >= a - 1 {}",
            if r.threshold_met { "holds" } else { "fails" }
        )
        .unwrap();
        text.push_str(&verdict_text(&r.verdict));
        outcome = Some(r.verdict.holds);
        result["section"] = to_value(&r);
        result["holds"] = json!(r.verdict.holds);
    }
    Ok(Body {
        result,
        text,
        instance: None,
        outcome,
    })
}

pub fn execute(command: &Command, json_mode: bool) -> CliResult<Report> {
    match command {
        Command::Hilbert(p) => hilbert(p),
        Command::Froberg(p) => froberg(p),
        Command::Wlp(p) => lefschetz(Property::Wlp, p),
        Command::Slp(p) => lefschetz(Property::Slp, p),
        Command::Mrp(p) => lefschetz(Property::Mrp, p),
        Command::Betti(p) => betti(p, json_mode),
        Command::Ghosts(p) => ghosts(p),
        Command::Link(p) => link(p),
        Command::Points(p) => points(p),
        Command::Sweep(_) => Err(CliError::usage("sweep is not a single-instance command")),
    }
}
