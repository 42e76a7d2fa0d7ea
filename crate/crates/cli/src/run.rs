//! Command dispatch.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use stabq_core::cech::CechComplex;
use stabq_core::charges::{mobility, ChargeAnalysis, ChargeModule};
use stabq_core::code::CodeSpec;
use stabq_core::fpmod::FiniteStructure;
use stabq_core::oracle::{window_q0_stabilized, TorusInstance};
use stabq_core::ring::LaurentPoly;
use stabq_core::Error;

use crate::report::*;
use crate::specfile::parse_spec;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Charges,
    Mobility,
    Braid,
    Spin,
    Cocycle,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Charges => "charges",
            Command::Mobility => "mobility",
            Command::Braid => "braid",
            Command::Spin => "spin",
            Command::Cocycle => "cocycle",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub degree: Option<usize>,
    /// Raw class expressions, see [`parse_class`].
    pub classes: Option<Vec<String>>,
    pub ell_override: Option<u64>,
    pub window: Option<i64>,
    pub sides: Option<Vec<u64>>,
}

/// Parses `LxMx…` side lengths.
pub fn parse_sides(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(['x', 'X'])
        .map(|t| t.trim().parse::<u64>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<u64>>>()
        .ok_or_else(|| CliError::Invalid(format!("bad side lengths '{s}', expected e.g. 4x4")))
}

fn summary(spec: &CodeSpec) -> CodeSummary {
    CodeSummary {
        name: spec.name.clone(),
        dimension: spec.dim(),
        torsion: spec.ring().lattice().torsion.clone(),
        qudits: spec.qudits().to_vec(),
        modulus: spec.modulus(),
        stabilizers: spec.sigma().cols(),
    }
}

fn group(zero: bool, structure: Option<&FiniteStructure>) -> GroupReport {
    GroupReport { zero, finite: zero || structure.is_some(), factors: structure.map(|s| s.factors.clone()) }
}

fn charge_row(m: &ChargeModule) -> ChargeRow {
    ChargeRow {
        degree: m.degree,
        group: group(m.is_zero(), m.structure.as_ref()),
        dim_zero: m.dim_zero,
        annihilator: if m.is_zero() { vec!["1".into()] } else { m.annihilator.iter().map(LaurentPoly::render).collect() },
    }
}

fn reps(m: &ChargeModule) -> Vec<Vec<LaurentPoly>> {
    m.module.reps().map(<[_]>::to_vec).unwrap_or_default()
}

/// A class of `Q^p`:
/// - `k`: the `k`-th generator `g_k` of the presentation,
/// - `r@k`: the multiple `r·g_k` for a ring element `r`,
/// - `+` / `-`: `(1 ± x)·g_0`, the momentum sectors of a cyclic charge module.
pub fn parse_class(spec: &CodeSpec, m: &ChargeModule, text: &str) -> Result<Vec<LaurentPoly>, CliError> {
    let gens = reps(m);
    let r = spec.ring();
    let t = text.trim();
    let (coeff, idx) = match t {
        "+" => (LaurentPoly::one(r) + LaurentPoly::var(r, 0), 0),
        "-" => (LaurentPoly::one(r) - LaurentPoly::var(r, 0), 0),
        _ => match t.rsplit_once('@') {
            Some((poly, k)) => (LaurentPoly::parse(r, poly)?, parse_index(k)?),
            None => (LaurentPoly::one(r), parse_index(t)?),
        },
    };
    let g = gens.get(idx).ok_or_else(|| {
        CliError::Invalid(format!("class '{t}': Q^{} has {} generator(s)", m.degree, gens.len()))
    })?;
    Ok(g.iter().map(|x| &coeff * x).collect())
}

fn parse_index(s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::Invalid(format!("bad class index '{s}'")))
}

fn default_classes(m: &ChargeModule) -> (Vec<String>, Vec<Vec<LaurentPoly>>) {
    let g = reps(m);
    ((0..g.len()).map(|k| format!("g{k}")).collect(), g)
}

fn chosen_classes(spec: &CodeSpec, m: &ChargeModule, texts: &[String]) -> Result<(Vec<String>, Vec<Vec<LaurentPoly>>), CliError> {
    let vecs = texts.iter().map(|t| parse_class(spec, m, t)).collect::<Result<Vec<_>, _>>()?;
    Ok((texts.iter().map(|t| t.trim().to_string()).collect(), vecs))
}

fn mobility_report(spec: &CodeSpec, a: &ChargeAnalysis) -> Result<MobilityReport, CliError> {
    let m = mobility(spec.ring(), a)?;
    Ok(MobilityReport { mobile: m.mobile(), offending_degrees: m.offending(), ell: m.ell })
}

/// The period `ℓ`: the override, or the one certified by mobility.
fn period(spec: &CodeSpec, a: &ChargeAnalysis, opts: &Options) -> Result<u64, CliError> {
    match opts.ell_override {
        Some(0) => Err(CliError::Invalid("--ell-override must be positive".into())),
        Some(l) => Ok(l),
        None => Ok(mobility(spec.ring(), a)?.require()?),
    }
}

fn check_degree(spec: &CodeSpec, p: usize, top: usize) -> Result<(), CliError> {
    if p > top {
        return Err(CliError::Invalid(format!("degree {p} out of range 0..={top} for D = {}", spec.dim())));
    }
    Ok(())
}

pub fn run(cmd: Command, spec: &CodeSpec, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(cmd.name(), summary(spec));
    let d = spec.dim();
    if cmd == Command::Analyze {
        let inv = spec.invariants()?;
        report.invariants = Some(InvariantsReport {
            saturated: inv.saturated,
            lagrangian: inv.lagrangian,
            perp_equals_double_perp: inv.perp_is_double_perp,
            z: group(inv.z.is_zero()?, inv.z_structure.as_ref()),
            s: group(inv.s.is_zero()?, inv.s_structure.as_ref()),
        });
    }
    if cmd == Command::Oracle && !spec.is_uniform() {
        return oracle(spec, None, opts, report);
    }
    let a = ChargeAnalysis::compute(spec)?;
    match cmd {
        Command::Analyze | Command::Charges | Command::Mobility => {
            if cmd != Command::Mobility {
                report.resolution = Some(a.resolution.lengths());
            }
            if let Some(p) = opts.degree {
                check_degree(spec, p, d)?;
            }
            let rows = a.modules.iter().filter(|m| opts.degree.is_none_or(|p| p == m.degree)).map(charge_row).collect();
            report.charges = Some(rows);
            report.mobility = Some(mobility_report(spec, &a)?);
        }
        Command::Braid => {
            if d < 2 {
                return Err(Error::Unsupported("braiding pairs Q^p with Q^(D-2-p) and needs D ≥ 2".into()).into());
            }
            let ell = period(spec, &a, opts)?;
            let p = opts.degree.unwrap_or_else(|| (0..=d - 2).find(|&p| !a.modules[p].is_zero() && !a.modules[d - 2 - p].is_zero()).unwrap_or(0));
            check_degree(spec, p, d - 2)?;
            let q = d - 2 - p;
            let (ml, mr) = (&a.modules[p], &a.modules[q]);
            let ((ln, lv), (rn, rv)) = match &opts.classes {
                Some(c) if c.len() == 2 => (chosen_classes(spec, ml, &c[..1])?, chosen_classes(spec, mr, &c[1..])?),
                Some(_) => return Err(CliError::Invalid("braid takes exactly two classes: --classes a,b".into())),
                None => (default_classes(ml), default_classes(mr)),
            };
            let cx = CechComplex::new(spec, &a.resolution, ell)?;
            let left = lv.iter().map(|v| cx.ext_to_cech(p, v)).collect::<Result<Vec<_>, _>>()?;
            let right = rv.iter().map(|v| cx.ext_to_cech(q, v)).collect::<Result<Vec<_>, _>>()?;
            let omega0 = left
                .iter()
                .map(|x| right.iter().map(|y| Ok(cx.braiding(x, y)?.coeff0())).collect::<Result<Vec<u64>, Error>>())
                .collect::<Result<Vec<_>, _>>()?;
            report.braiding = Some(BraidingReport { ell, left_degree: p, right_degree: q, left: ln, right: rn, omega0 });
        }
        Command::Spin => {
            if d != 2 {
                return Err(Error::Unsupported("topological spin is defined for D = 2".into()).into());
            }
            let ell = period(spec, &a, opts)?;
            let m = &a.modules[0];
            let (names, vecs) = match &opts.classes {
                Some(c) => chosen_classes(spec, m, c)?,
                None => default_classes(m),
            };
            let cx = CechComplex::new(spec, &a.resolution, ell)?;
            let theta = vecs.iter().map(|v| cx.topological_spin(v)).collect::<Result<Vec<_>, _>>()?;
            let mutual = vecs
                .iter()
                .map(|e| vecs.iter().map(|f| cx.mutual_braiding(e, f)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            report.spin = Some(SpinReport { ell, classes: names, theta, mutual });
        }
        Command::Cocycle => {
            let ell = period(spec, &a, opts)?;
            let p = opts.degree.unwrap_or(0);
            check_degree(spec, p, d - 1)?;
            let m = &a.modules[p];
            let (names, vecs) = match &opts.classes {
                Some(c) => chosen_classes(spec, m, c)?,
                None => default_classes(m),
            };
            let cx = CechComplex::new(spec, &a.resolution, ell)?;
            let mut dumps = Vec::new();
            for (name, v) in names.into_iter().zip(&vecs) {
                let c = cx.ext_to_cech(p, v)?;
                let components = c
                    .comps
                    .iter()
                    .map(|(idx, f)| CocycleComponent {
                        directions: idx.iter().map(|i| i + 1).collect(),
                        denominator: idx.iter().map(|&i| f.den[i]).collect(),
                        numerator: f.num.iter().map(LaurentPoly::render).collect(),
                        window: opts.window.map(|w| cx.operator_window(f, None, w)),
                    })
                    .collect();
                dumps.push(CocycleDump { class: name, cech_degree: c.degree, components });
            }
            report.cocycles = Some(dumps);
        }
        Command::Oracle => return oracle(spec, Some(&a), opts, report),
    }
    Ok(report)
}

/// `S_i(e) = Σ_{k<L/ℓ} x_i^{kℓ} p_i(e)`, wrapping once around the torus.
fn torus_string(cx: &CechComplex, e: &[LaurentPoly], dir: usize, len: u64) -> Result<Vec<LaurentPoly>, Error> {
    let r = cx.ring().clone();
    let p = &cx.movers(e)?[dir];
    let mut s = LaurentPoly::zero(&r);
    for k in 0..(len / cx.ell()) as i64 {
        s = s + LaurentPoly::var_pow(&r, dir, k * cx.ell() as i64);
    }
    Ok(p.iter().map(|x| &s * x).collect())
}

fn oracle(spec: &CodeSpec, a: Option<&ChargeAnalysis>, opts: &Options, mut report: Report) -> Result<Report, CliError> {
    let d = spec.dim();
    let sides = opts.sides.clone().unwrap_or_else(|| vec![4; d]);
    let torus = TorusInstance::new(spec, &sides)?;
    let (gsd, gsd_error) = match torus.ground_state_degeneracy() {
        Ok(g) => (Some(g.to_string()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let mut out = OracleReport { sides: sides.clone(), isotropic: torus.is_isotropic(), ground_state_degeneracy: gsd, gsd_error, crossing: None, window: None };
    if let Some(a) = a {
        let mob = mobility(spec.ring(), a)?;
        let ell = opts.ell_override.or(mob.ell);
        if let Some(ell) = ell.filter(|&l| d == 2 && sides.iter().all(|s| s % l == 0)) {
            let cx = CechComplex::new(spec, &a.resolution, ell)?;
            let (names, vecs) = match &opts.classes {
                Some(c) => chosen_classes(spec, &a.modules[0], c)?,
                None => default_classes(&a.modules[0]),
            };
            let mut checks = Vec::new();
            for (ne, e) in names.iter().zip(&vecs) {
                for (nf, f) in names.iter().zip(&vecs) {
                    let s1 = torus.flatten(&torus_string(&cx, e, 0, sides[0])?);
                    let s2 = torus.flatten(&torus_string(&cx, f, 1, sides[1])?);
                    let commutator = torus.commutator_phase(&s2, &s1);
                    let omega0 = cx.braiding(&cx.ext_to_cech(0, e)?, &cx.ext_to_cech(0, f)?)?.coeff0();
                    checks.push(CrossingCheck { left: ne.clone(), right: nf.clone(), commutator, omega0, agree: commutator == omega0 });
                }
            }
            out.crossing = Some(checks);
        }
        if d == 2 || (opts.window.is_some() && d <= 3) {
            let w = opts.window.unwrap_or(2);
            let radii = vec![(w, w + 2), (w + 1, w + 3)];
            let q0 = a.modules[0].structure.as_ref().map(|s| s.order());
            let (estimate, error) = match window_q0_stabilized(spec, &a.resolution, &radii) {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            out.window = Some(WindowCheck {
                radii,
                agree: estimate.is_some() && estimate == q0,
                estimate: estimate.map(|v| v.to_string()),
                error,
                q0_order: q0.map(|v| v.to_string()),
            });
        }
    }
    report.oracle = Some(out);
    Ok(report)
}

/// Loads a spec file.
pub fn load(path: &Path) -> Result<CodeSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    parse_spec(&text)
}

/// Runs a command on every `*.json` file of a directory, in parallel,
/// returning results in file-name order.
pub fn run_batch(dir: &Path, cmd: Command, opts: &Options) -> Result<Vec<(PathBuf, Result<Report, CliError>)>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io(dir.display().to_string(), e.to_string()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    Ok(paths
        .into_par_iter()
        .map(|p| {
            let r = load(&p).and_then(|spec| run(cmd, &spec, opts));
            (p, r)
        })
        .collect())
}
