use std::io::Read;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use unrolling::cattribe::{
    is_isofibration, ran_along_p, reedy_factorize, reedy_fibration_failures, restrict_along_p, shape_degrees,
    tribe_factorize, unit, Diagram, DiagramMap, TribeClassReport, LIFT_CAP,
};
use unrolling::factcheck::{
    check_absolutely_dense, check_cofibering, check_grothendieck_fibration, check_preserves_classes, self_comma,
    ConnectivityReport,
};
use unrolling::fincat::{FinCat, FinFunctor};
use unrolling::format::{Document, Writer};
use unrolling::freecat::AmalgamPresentation;
use unrolling::reedy::{
    check_generalized_direct, check_generalized_reedy, check_lifting_condition, check_strict,
    check_unique_factorization, induce_dr_structure, ReedyStructure,
};
use unrolling::unroll::{build_dr, UnrolledCategory, HOM_BOUND};
use unrolling::verify::{self, VerifyConfig};
use unrolling::zoo::{self, CubeSpec, GroupTable};
use unrolling::CheckReport;

use crate::report::{Check, Report};
use crate::{Cli, CliError, Command, Outcome, TribeCommand, ZooCommand};

type Res<T> = Result<T, CliError>;

fn env_usize(name: &str, default: usize) -> Res<usize> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::usage(format!("{name} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn hom_bound() -> Res<usize> {
    env_usize("HOM_BOUND", HOM_BOUND)
}

fn command_line() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("unrolling {}", args.join(" "))
}

fn load(input: &str) -> Result<Document, unrolling::Error> {
    if input == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| unrolling::Error::Io { path: "<stdin>".into(), msg: e.to_string() })?;
        let mut doc = Document::default();
        doc.add_text(&text, Some(Path::new(".")))?;
        Ok(doc)
    } else {
        Document::read(input)
    }
}

fn write_file(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write `{}`: {e}", path.display())))
}

/// Writes the document to `--out`, or hands it back for standard output
/// with the report moved to standard error.
fn emit(cli: &Cli, mut report: Report, doc: String) -> Res<Outcome> {
    match &cli.out {
        Some(path) => {
            write_file(path, &doc)?;
            report.files.push(path.display().to_string());
            Ok(Outcome { report, document: None, report_to_stderr: false })
        }
        None => Ok(Outcome { report, document: Some(doc), report_to_stderr: true }),
    }
}

fn done(report: Report) -> Res<Outcome> {
    Ok(Outcome { report, document: None, report_to_stderr: false })
}

fn named(mut r: CheckReport, name: &str) -> CheckReport {
    r.check = format!("{} `{name}`", r.check);
    r
}

/// The Reedy annotation on `cat`: the named one, or the only one whose
/// category equals `cat`.
fn reedy_for(doc: &Document, cat: &FinCat, name: Option<&str>, role: &str) -> Res<ReedyStructure> {
    if let Some(n) = name {
        let s = doc.reedy_structure(n)?;
        if *s.base != *cat {
            return Err(CliError::usage(format!("reedy annotation `{n}` is not on the {role} category")));
        }
        return Ok(s.clone());
    }
    let found: Vec<_> = doc.reedy.iter().filter(|(_, s)| *s.base == *cat).collect();
    match found.as_slice() {
        [(_, s)] => Ok((*s).clone()),
        [] => Err(CliError::usage(format!("no reedy annotation on the {role} category"))),
        _ => Err(CliError::usage(format!(
            "several reedy annotations on the {role} category ({}); name one",
            found.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

struct Unrolled {
    name: String,
    pres: AmalgamPresentation,
    u: UnrolledCategory,
    structure: ReedyStructure,
}

fn unrolled(doc: &Document, name: Option<&str>) -> Res<Unrolled> {
    let (name, pres) = Document::pick(&doc.presentations, "presentation", name)?;
    let s = reedy_for(doc, &pres.r, None, "R")?;
    let s0 = reedy_for(doc, &pres.r0, None, "R_0")?;
    let u = build_dr(pres, hom_bound()?)?;
    let structure = induce_dr_structure(&u, &s, &s0)?;
    Ok(Unrolled { name: name.to_string(), pres: pres.clone(), u, structure })
}

fn dump_witness(cli: &Cli, report: &mut Report, r: &ConnectivityReport) -> Res<()> {
    if let (Some(path), Some(w)) = (&cli.witness, r.witnesses.first()) {
        let mut wr = Writer::new();
        wr.category("witness", &w.category);
        write_file(path, &wr.finish())?;
        report.files.push(path.display().to_string());
    }
    Ok(())
}

fn connectivity(r: &ConnectivityReport) -> Check {
    let mut c: Check = r.report.clone().into();
    for w in &r.witnesses {
        c.notes.push(format!("{}: components {:?}", w.label, w.components));
    }
    c
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let mut report = Report::new(command_line());
    match &cli.command {
        Command::CheckCat { input, name } => {
            match load(input) {
                Err(e @ unrolling::Error::Io { .. }) => return Err(e.into()),
                Err(e) => report.push(Check::verdict("category", false, vec![e.to_string()])),
                Ok(doc) => {
                    let (n, c) = Document::pick(&doc.categories, "category", name.as_deref())?;
                    let notes = vec![
                        format!("{} objects, {} arrows", c.n_objects(), c.n_arrows()),
                        format!("gaunt: {}", c.is_gaunt()),
                        format!("connected components: {}", c.components().len()),
                    ];
                    report.push(Check::verdict(format!("category `{n}`"), true, notes));
                }
            }
            done(report)
        }
        Command::CheckFunctor { input, name } => {
            match load(input) {
                Err(e @ unrolling::Error::Io { .. }) => return Err(e.into()),
                Err(e) => report.push(Check::verdict("functor", false, vec![e.to_string()])),
                Ok(doc) => {
                    let (n, f) = Document::pick(&doc.functors, "functor", name.as_deref())?;
                    let notes = vec![
                        format!("faithful and full: {}", f.is_fully_faithful()),
                        format!("essentially surjective: {}", f.is_essentially_surjective()),
                        format!("equivalence: {}", f.is_equivalence()),
                        format!("isomorphism: {}", f.is_isomorphism()),
                        format!("injective on objects: {}", f.is_injective_on_objects()),
                        format!("isofibration: {}", is_isofibration(f)),
                    ];
                    report.push(Check::verdict(format!("functor `{n}`"), true, notes));
                }
            }
            done(report)
        }
        Command::CheckReedy { input, reedy, strict, direct } => {
            let doc = load(input)?;
            let selected: Vec<(&String, &ReedyStructure)> = match reedy {
                Some(n) => vec![Document::pick(&doc.reedy, "reedy annotation", Some(n)).map(|(_, s)| (doc.reedy.keys().find(|k| *k == n).expect("picked"), s))?],
                None => doc.reedy.iter().collect(),
            };
            if selected.is_empty() {
                return Err(CliError::usage("no reedy annotation in the input"));
            }
            for (n, s) in selected {
                report.push(named(check_generalized_reedy(s), n));
                if *strict {
                    report.push(named(check_strict(s), n));
                    report.push(named(check_unique_factorization(s), n));
                }
                if *direct {
                    report.push(named(check_generalized_direct(s), n));
                }
            }
            done(report)
        }
        Command::CheckLifting { input, presentation } => {
            let doc = load(input)?;
            let (n, pres) = Document::pick(&doc.presentations, "presentation", presentation.as_deref())?;
            let s0 = reedy_for(&doc, &pres.r0, None, "R_0")?;
            report.push(named(check_lifting_condition(pres, &s0), n));
            done(report)
        }
        Command::Unroll { input, presentation } => unroll(cli, report, &load(input)?, presentation.as_deref()),
        Command::CheckDensity { input, functor, presentation } => {
            let doc = load(input)?;
            let r = if presentation.is_some() {
                check_absolutely_dense(&unrolled(&doc, presentation.as_deref())?.u.projection)
            } else {
                check_absolutely_dense(Document::pick(&doc.functors, "functor", functor.as_deref())?.1)
            };
            report.push(connectivity(&r));
            dump_witness(cli, &mut report, &r)?;
            done(report)
        }
        Command::CheckCofibering { input, functor, source_reedy, target_reedy, pi0, presentation } => {
            let doc = load(input)?;
            let r = if *pi0 {
                let un = unrolled(&doc, presentation.as_deref())?;
                let (comma, st) = self_comma(&un.u.projection, &un.structure);
                report.push(named(check_grothendieck_fibration(&comma.proj0), "pi_0"));
                report.push(named(check_preserves_classes(&comma.proj0, &st, &un.structure), "pi_0"));
                check_cofibering(&comma.proj0, &st, &un.structure)
            } else {
                let (_, f) = Document::pick(&doc.functors, "functor", functor.as_deref())?;
                let sc = reedy_for(&doc, &f.source, source_reedy.as_deref(), "source")?;
                let sd = reedy_for(&doc, &f.target, target_reedy.as_deref(), "target")?;
                check_cofibering(f, &sc, &sd)
            };
            report.push(connectivity(&r));
            dump_witness(cli, &mut report, &r)?;
            done(report)
        }
        Command::Tribe { command } => tribe(cli, report, command),
        Command::Zoo { command } => zoo_cmd(cli, report, command),
        Command::VerifyPaper { criterion } => {
            let cfg = VerifyConfig {
                hom_bound: hom_bound()?,
                lift_cap: env_usize("LIFT_CAP", LIFT_CAP)?,
                ..VerifyConfig::default()
            };
            let which: Vec<usize> = if criterion.is_empty() { (1..=verify::CRITERIA).collect() } else { criterion.clone() };
            if let Some(bad) = which.iter().find(|&&n| n == 0 || n > verify::CRITERIA) {
                return Err(CliError::usage(format!("criteria are numbered 1 to {}, got {bad}", verify::CRITERIA)));
            }
            for n in which {
                let c = verify::run(n, &cfg);
                let failed = c.details.iter().filter(|d| d.starts_with("FAILED")).count();
                report.push(Check {
                    name: format!("criterion {}: {}", c.number, c.title),
                    passed: c.passed,
                    violation_count: failed.max(usize::from(!c.passed)),
                    violations: Vec::new(),
                    notes: c.details,
                });
            }
            done(report)
        }
    }
}

#[derive(Serialize)]
struct SidecarObject {
    id: String,
    word: String,
    k: Option<String>,
    w: Option<String>,
    degree: usize,
}

#[derive(Serialize)]
struct Sidecar {
    presentation: String,
    hom_bound: usize,
    document: String,
    objects: Vec<SidecarObject>,
}

fn unroll(cli: &Cli, mut report: Report, doc: &Document, presentation: Option<&str>) -> Res<Outcome> {
    let un = unrolled(doc, presentation)?;
    let d = &*un.u.category;
    let mut w = Writer::new();
    w.category("R", &un.pres.r)
        .category("D_R", d)
        .functor("p", &un.u.projection, "D_R", "R")
        .reedy("D_R.reedy", "D_R", &un.structure);
    let text = w.finish();
    report.push(Check::verdict(
        format!("unrolled `{}`", un.name),
        true,
        vec![format!("{} objects, {} morphisms, hom bound {}", d.n_objects(), d.n_arrows(), un.u.hom_bound)],
    ));
    let Some(dir) = &cli.out else {
        return Ok(Outcome { report, document: Some(text), report_to_stderr: true });
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::usage(format!("cannot create `{}`: {e}", dir.display())))?;
    let doc_path = dir.join("dr.txt");
    write_file(&doc_path, &text)?;
    let objects = un
        .u
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| SidecarObject {
            id: d.object_id(i).to_string(),
            word: un.pres.render(&o.word),
            k: o.decomposition.k.map(|k| un.pres.r0.arrow_id(k).to_string()),
            w: o.decomposition.w.map(|x| un.pres.r.arrow_id(x).to_string()),
            degree: un.structure.degree[i],
        })
        .collect();
    let sidecar = Sidecar { presentation: un.name.clone(), hom_bound: un.u.hom_bound, document: "dr.txt".into(), objects };
    let side_path = dir.join("sidecar.json");
    write_file(&side_path, &(serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n"))?;
    report.files.push(doc_path.display().to_string());
    report.files.push(side_path.display().to_string());
    done(report)
}

/// The presentation whose `R` is `shape`, if the input has one.
fn over_r<'a>(doc: &'a Document, name: Option<&'a str>, shape: &FinCat) -> Res<Option<&'a str>> {
    if let Some(n) = name {
        let p = doc.presentation(n)?;
        if *p.r != *shape {
            return Err(CliError::usage(format!("the diagram is not over R of presentation `{n}`")));
        }
        return Ok(Some(n));
    }
    Ok(doc.presentations.iter().find(|(_, p)| *p.r == *shape).map(|(k, _)| k.as_str()))
}

fn fibrancy_check(name: String, m: &DiagramMap) -> Res<CheckReport> {
    let mut r = CheckReport::new(name);
    for z in reedy_fibration_failures(m)? {
        r.fail("relative-matching-not-isofibration", m.source.shape.object_id(z));
    }
    Ok(r)
}

fn tribe(cli: &Cli, mut report: Report, command: &TribeCommand) -> Res<Outcome> {
    match command {
        TribeCommand::CheckFibrant { input, diagram, presentation } => {
            let doc = load(input)?;
            let (dn, x) = Document::pick(&doc.diagrams, "diagram", diagram.as_deref())?;
            match over_r(&doc, presentation.as_deref(), &x.shape)? {
                Some(pn) => {
                    let un = unrolled(&doc, Some(pn))?;
                    let px = restrict_along_p(&un.u.projection, x)?;
                    report.push(fibrancy_check(format!("p-fibrant `{dn}`"), &DiagramMap::to_terminal(&px))?);
                }
                None => {
                    shape_degrees(&x.shape)?;
                    report.push(fibrancy_check(format!("Reedy fibrant `{dn}`"), &DiagramMap::to_terminal(x))?);
                }
            }
            done(report)
        }
        TribeCommand::Factorize { input, map, presentation } => {
            let doc = load(input)?;
            let (mn, m) = Document::pick(&doc.maps, "map", map.as_deref())?;
            let mut w = Writer::new();
            match over_r(&doc, presentation.as_deref(), &m.source.shape)? {
                Some(pn) => {
                    let un = unrolled(&doc, Some(pn))?;
                    let p = &un.u.projection;
                    for (side, d) in [("source", &m.source), ("target", &m.target)] {
                        report.push(fibrancy_check(format!("{side} of `{mn}` p-fibrant"), &DiagramMap::to_terminal(&restrict_along_p(p, d)?))?);
                    }
                    // The factorization is only defined between p-fibrant diagrams.
                    if !report.passed {
                        return done(report);
                    }
                    let fx = tribe_factorize(p, m)?;
                    report.push(classes("first factor pointwise anodyne", &fx.first_classes, true));
                    report.push(Check::verdict("second factor is a p-fibration", fx.second_is_p_fibration, Vec::new()));
                    report.push(Check::verdict("middle diagram p-fibrant", fx.middle_is_p_fibrant, Vec::new()));
                    report.push(Check::verdict("composite equals the map", fx.second.after(&fx.first).same_components(m), Vec::new()));
                    w.map("first", &fx.first).map("second", &fx.second);
                }
                None => {
                    let fx = reedy_factorize(m)?;
                    report.push(classes("first factor pointwise anodyne", &TribeClassReport::of(&fx.j), true));
                    report.push(fibrancy_check("second factor is a Reedy fibration".into(), &fx.q)?);
                    report.push(Check::verdict("composite equals the map", fx.q.after(&fx.j).same_components(m), Vec::new()));
                    w.map("first", &fx.j).map("second", &fx.q);
                }
            }
            emit_or_report(cli, report, w.finish())
        }
        TribeCommand::Kan { input, diagram, presentation } => {
            let doc = load(input)?;
            let (dn, x) = Document::pick(&doc.diagrams, "diagram", diagram.as_deref())?;
            let un = unrolled(&doc, presentation.as_deref())?;
            let p = &un.u.projection;
            let mut w = Writer::new();
            if *x.shape == *un.pres.r {
                let px = restrict_along_p(p, x)?;
                let eta = unit(p, x)?;
                let notes = values_note(&eta.target);
                report.push(Check::verdict(format!("unit `{dn}` -> p_* p^* `{dn}` is a pointwise isomorphism"), eta.is_pointwise_iso(), notes));
                w.diagram("restricted", &px).diagram("extended", &eta.target);
            } else if *x.shape == *un.u.category {
                let ext = ran_along_p(p, x)?;
                report.push(Check::verdict(format!("p_* `{dn}`"), true, values_note(&ext)));
                w.diagram("extended", &ext);
            } else {
                return Err(CliError::usage(format!("diagram `{dn}` is over neither R nor D_R")));
            }
            emit_or_report(cli, report, w.finish())
        }
    }
}

/// Factor diagrams go to `--out` when given; otherwise only the report is shown.
fn emit_or_report(cli: &Cli, report: Report, doc: String) -> Res<Outcome> {
    if cli.out.is_some() {
        emit(cli, report, doc)
    } else {
        done(report)
    }
}

fn values_note(d: &Diagram) -> Vec<String> {
    (0..d.shape.n_objects())
        .map(|o| format!("at `{}`: {} objects, {} arrows", d.shape.object_id(o), d.values[o].n_objects(), d.values[o].n_arrows()))
        .collect()
}

fn classes(name: &str, r: &TribeClassReport, anodyne: bool) -> Check {
    let passed = if anodyne { r.pointwise_anodyne } else { r.pointwise_fibration };
    let notes = r
        .components
        .iter()
        .map(|c| {
            format!(
                "at `{}`: isofibration {}, equivalence {}, injective on objects {}",
                c.object, c.isofibration, c.equivalence, c.injective_on_objects
            )
        })
        .collect();
    Check::verdict(name, passed, notes)
}

fn bundle(w: &mut Writer, name: &str, pres: &AmalgamPresentation, s: &ReedyStructure, s0: &ReedyStructure) {
    w.presentation_bundle(name, pres)
        .reedy(&format!("{name}.reedy"), &format!("{name}.r"), s)
        .reedy(&format!("{name}.r0.reedy"), &format!("{name}.r0"), s0);
}

fn zoo_cmd(cli: &Cli, mut report: Report, command: &ZooCommand) -> Res<Outcome> {
    let mut w = Writer::new();
    match command {
        ZooCommand::Group { name } => {
            let t = GroupTable::by_name(name).ok_or_else(|| CliError::usage(format!("unknown group `{name}`; try Z2, Z3 or S3")))?;
            let ex = zoo::group_category(&t)?;
            bundle(&mut w, name, &ex.presentation, &ex.reedy, &ex.sub_reedy);
            report.push(Check::verdict(format!("group `{name}`"), true, vec![format!("{} elements", t.len())]));
        }
        ZooCommand::Cube { dim, symmetries, degeneracies } => {
            if *dim > 3 {
                return Err(CliError::usage("cube dimension is at most 3"));
            }
            let spec = CubeSpec { max_dim: *dim, symmetries: *symmetries, degeneracies: *degeneracies };
            let cube = zoo::cube_category(&spec);
            let name = format!("cube{dim}{}{}", if *symmetries { "-sym" } else { "" }, if *degeneracies { "-deg" } else { "" });
            match (&cube.presentation, &cube.sub_reedy) {
                (Some(p), Some(s0)) => bundle(&mut w, &name, p, &cube.reedy, s0),
                _ => {
                    w.category(&name, &cube.category).reedy(&format!("{name}.reedy"), &name, &cube.reedy);
                }
            }
            let c = &cube.category;
            report.push(Check::verdict(format!("cube `{name}`"), true, vec![format!("{} objects, {} arrows", c.n_objects(), c.n_arrows())]));
        }
        ZooCommand::Fixture { name } => {
            match name.as_str() {
                "non-dense" => {
                    let fx = zoo::discrete_into_walking_iso();
                    bundle(&mut w, "fixture", &fx.presentation, &fx.reedy, &fx.sub_reedy);
                }
                "non-cofibering" => {
                    let fx = zoo::non_cofibering_fixture();
                    w.category("fixture.source", &fx.functor.source)
                        .category("fixture.target", &fx.functor.target)
                        .functor("fixture", &fx.functor, "fixture.source", "fixture.target")
                        .reedy("fixture.source.reedy", "fixture.source", &fx.source_reedy)
                        .reedy("fixture.target.reedy", "fixture.target", &fx.target_reedy);
                }
                "non-fibrant" => {
                    let ex = zoo::group_category(&GroupTable::cyclic(2))?;
                    bundle(&mut w, "Z2", &ex.presentation, &ex.reedy, &ex.sub_reedy);
                    let x = Diagram::constant(ex.presentation.r.clone(), Arc::new(zoo::walking_iso()));
                    // `y` is the fibrant contrast: discrete points swapped by the generator.
                    let d = Arc::new(FinCat::discrete(&["u", "v"]));
                    let swap = FinFunctor::new(d.clone(), d.clone(), vec![1, 0], vec![1, 0])?;
                    let y = Diagram::one_object(ex.presentation.r.clone(), d.clone(), vec![FinFunctor::identity(d), swap])?;
                    w.diagram("x", &x).diagram("y", &y).map("y_to_point", &DiagramMap::to_terminal(&y));
                }
                other => {
                    return Err(CliError::usage(format!("unknown fixture `{other}`; try non-dense, non-cofibering or non-fibrant")))
                }
            }
            report.push(Check::verdict(format!("fixture `{name}`"), true, Vec::new()));
        }
    }
    emit(cli, report, w.finish())
}
