//! Structured reports and their text rendering.

use std::fmt::Write as _;

use serde::Serialize;
use stabq_core::cech::WindowTerm;

pub const SCHEMA: &str = "stabq-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub code: CodeSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charges: Option<Vec<ChargeRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobility: Option<MobilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub braiding: Option<BraidingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spin: Option<SpinReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycles: Option<Vec<CocycleDump>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

impl Report {
    pub fn new(command: &str, code: CodeSummary) -> Report {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            code,
            invariants: None,
            resolution: None,
            charges: None,
            mobility: None,
            braiding: None,
            spin: None,
            cocycles: None,
            oracle: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub name: String,
    pub dimension: usize,
    pub torsion: Vec<u32>,
    pub qudits: Vec<u64>,
    pub modulus: u64,
    pub stabilizers: usize,
}

/// A finitely generated module: invariant factors when finite.
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub zero: bool,
    pub finite: bool,
    pub factors: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub saturated: bool,
    pub lagrangian: bool,
    pub perp_equals_double_perp: bool,
    /// `L^{ωω}/L`.
    pub z: GroupReport,
    /// `L^ω/L^{ωω}`.
    pub s: GroupReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChargeRow {
    pub degree: usize,
    pub group: GroupReport,
    pub dim_zero: bool,
    pub annihilator: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobilityReport {
    pub mobile: bool,
    pub offending_degrees: Vec<usize>,
    pub ell: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidingReport {
    pub ell: u64,
    pub left_degree: usize,
    pub right_degree: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// `omega0[i][j] = Ω(φ_i, ψ_j)_0`.
    pub omega0: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinReport {
    pub ell: u64,
    pub classes: Vec<String>,
    pub theta: Vec<u64>,
    /// Crossing-string commutators `b(e_i, e_j)`.
    pub mutual: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleComponent {
    /// Directions (1-based) of the localization.
    pub directions: Vec<usize>,
    /// Powers of `t_i = 1 − x_i^ℓ` in the denominator, one per direction.
    pub denominator: Vec<u32>,
    pub numerator: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<WindowTerm>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleDump {
    pub class: String,
    pub cech_degree: usize,
    pub components: Vec<CocycleComponent>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingCheck {
    pub left: String,
    pub right: String,
    pub commutator: u64,
    pub omega0: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowCheck {
    pub radii: Vec<(i64, i64)>,
    pub estimate: Option<String>,
    pub error: Option<String>,
    pub q0_order: Option<String>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub sides: Vec<u64>,
    pub isotropic: bool,
    pub ground_state_degeneracy: Option<String>,
    pub gsd_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<Vec<CrossingCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowCheck>,
}

fn group_text(g: &GroupReport, n: u64) -> String {
    if g.zero {
        return "0".into();
    }
    match &g.factors {
        Some(f) => f.iter().map(|d| format!("Z_{d}")).collect::<Vec<_>>().join(" ⊕ "),
        None if g.finite => format!("finite over Z_{n}"),
        None => "infinite".into(),
    }
}

fn matrix_text(out: &mut String, rows: &[String], cols: &[String], m: &[Vec<u64>]) {
    let w = rows.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let _ = writeln!(out, "  {:w$}  {}", "", cols.join("  "));
    for (r, row) in rows.iter().zip(m) {
        let cells: Vec<String> = row.iter().zip(cols).map(|(v, c)| format!("{v:>width$}", width = c.chars().count())).collect();
        let _ = writeln!(out, "  {r:w$}  {}", cells.join("  "));
    }
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let c = &r.code;
    let mut out = String::new();
    let torsion = if c.torsion.is_empty() {
        String::new()
    } else {
        format!(" ⊕ {}", c.torsion.iter().map(|m| format!("Z_{m}")).collect::<Vec<_>>().join(" ⊕ "))
    };
    let _ = writeln!(
        out,
        "{}: Λ = Z^{}{torsion}, {} qudit(s) {:?}, {} stabilizer(s)",
        c.name, c.dimension, c.qudits.len(), c.qudits, c.stabilizers
    );
    if let Some(inv) = &r.invariants {
        let _ = writeln!(out, "saturated: {}, lagrangian: {}, L^ω = L^ωω: {}", inv.saturated, inv.lagrangian, inv.perp_equals_double_perp);
        let _ = writeln!(out, "Z = L^ωω/L: {}", group_text(&inv.z, c.modulus));
        let _ = writeln!(out, "S = L^ω/L^ωω: {}", group_text(&inv.s, c.modulus));
    }
    if let Some(res) = &r.resolution {
        let _ = writeln!(out, "resolution ranks: {res:?}");
    }
    if let Some(rows) = &r.charges {
        for row in rows {
            let ann = if row.group.zero { String::new() } else { format!("   Ann = ({})", row.annihilator.join(", ")) };
            let _ = writeln!(out, "Q^{}: {}{ann}", row.degree, group_text(&row.group, c.modulus));
        }
    }
    if let Some(m) = &r.mobility {
        match (m.mobile, m.ell) {
            (true, Some(ell)) => {
                let _ = writeln!(out, "mobile, ℓ = {ell}");
            }
            _ => {
                let d: Vec<String> = m.offending_degrees.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "not mobile at degree {}", d.join(", "));
            }
        }
    }
    if let Some(b) = &r.braiding {
        let _ = writeln!(out, "Ω₀ between Q^{} (rows) and Q^{} (columns), ℓ = {}:", b.left_degree, b.right_degree, b.ell);
        matrix_text(&mut out, &b.left, &b.right, &b.omega0);
    }
    if let Some(s) = &r.spin {
        let _ = writeln!(out, "topological spin (ℓ = {}):", s.ell);
        for (cl, t) in s.classes.iter().zip(&s.theta) {
            let _ = writeln!(out, "  θ({cl}) = {t}");
        }
        let _ = writeln!(out, "crossing-string braiding b:");
        matrix_text(&mut out, &s.classes, &s.classes, &s.mutual);
    }
    if let Some(cs) = &r.cocycles {
        for cc in cs {
            let _ = writeln!(out, "cocycle for {} in Č^{}:", cc.class, cc.cech_degree);
            for comp in &cc.components {
                let dirs: Vec<String> = comp.directions.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "  [{}] / t^{:?}: ({})", dirs.join(","), comp.denominator, comp.numerator.join(", "));
                if let Some(w) = &comp.window {
                    let _ = writeln!(out, "    window: {} site(s)", w.len());
                }
            }
        }
    }
    if let Some(o) = &r.oracle {
        let sides: Vec<String> = o.sides.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "torus {}: isotropic = {}", sides.join("x"), o.isotropic);
        match (&o.ground_state_degeneracy, &o.gsd_error) {
            (Some(g), _) => {
                let _ = writeln!(out, "ground-state degeneracy: {g}");
            }
            (_, Some(e)) => {
                let _ = writeln!(out, "ground-state degeneracy: {e}");
            }
            _ => {}
        }
        if let Some(cr) = &o.crossing {
            let ok = cr.iter().all(|c| c.agree);
            let _ = writeln!(out, "crossing strings vs Ω₀: {} pair(s), {}", cr.len(), if ok { "all agree" } else { "MISMATCH" });
            for c in cr.iter().filter(|c| !c.agree) {
                let _ = writeln!(out, "  {} × {}: commutator {} but Ω₀ = {}", c.left, c.right, c.commutator, c.omega0);
            }
        }
        if let Some(w) = &o.window {
            let est = w.estimate.clone().or(w.error.clone()).unwrap_or_default();
            let q0 = w.q0_order.clone().unwrap_or("?".into());
            let _ = writeln!(out, "window Q⁰ estimate {est} (|Q⁰| = {q0}): {}", if w.agree { "agree" } else { "differ" });
        }
    }
    out
}
