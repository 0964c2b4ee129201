//! Existence criteria for almost split sequences and triangles, decided
//! from boundedness, graded dimensions of simples and the cycle structure of
//! the quiver. Only finiteness is ever certified, so a criterion whose
//! hypothesis could not be confirmed within the caps is `unknown-at-cap`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Boundedness, GradedAlgebra};
use crate::error::Result;
use crate::presentations::{graded_dimension, GradedDim, Kind};
use crate::quiver::QuiverAnalysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Answer {
    Yes,
    No,
    UnknownAtCap,
}

impl Answer {
    pub fn label(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::UnknownAtCap => "unknown-at-cap",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub answer: Answer,
    /// The statement the verdict instantiates.
    pub criterion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Verdict {
    fn new(answer: Answer, criterion: &str, note: Option<String>) -> Verdict {
        Verdict { answer, criterion: criterion.to_string(), note }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sided {
    pub left: Verdict,
    pub right: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct HereditaryVerdicts {
    pub gmod_plus_p_left: Verdict,
    pub gmod_minus_i_right: Verdict,
    pub both_categories: Verdict,
    pub derived_left: Verdict,
    pub derived_right: Verdict,
    pub derived: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub boundedness: Boundedness,
    pub projective_dimensions: Vec<(String, GradedDim)>,
    pub injective_dimensions: Vec<(String, GradedDim)>,
    pub analysis: QuiverAnalysis,
    pub assumed_locally_bounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExistenceReport {
    pub gmod_plus_p: Sided,
    pub gmod_minus_i: Sided,
    pub gmod_b: Verdict,
    pub derived_b: Sided,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hereditary: Option<HereditaryVerdicts>,
    pub evidence: Evidence,
    pub caveats: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Degrees explored when certifying that `Λe_x` or `e_xΛ` is finite.
    pub degree: usize,
    /// Longest resolution attempted for each simple.
    pub resolution: usize,
}

impl Caps {
    pub fn uniform(cap: usize) -> Caps {
        Caps { degree: cap.max(1), resolution: cap }
    }
}

const LEFT_BOUNDED: &str = "locally left bounded => gmod+p and gmod-i have almost split sequences on the left";
const RIGHT_BOUNDED: &str = "locally right bounded => gmod+p and gmod-i have almost split sequences on the right";
const LOCALLY_BOUNDED: &str = "locally bounded => gmod^b has almost split sequences";
const PD_FINITE: &str =
    "locally bounded and every graded simple of finite graded projective dimension => D^b(gmod^b) has almost split triangles on the right";
const ID_FINITE: &str =
    "locally bounded and every graded simple of finite graded injective dimension => D^b(gmod^b) has almost split triangles on the left";
const PATH_START: &str = "R = 0: gmod+p kQ has almost split sequences on the left <=> Q has no infinite path with a starting point";
const PATH_END: &str = "R = 0: gmod-i kQ has almost split sequences on the right <=> Q has no infinite path with an end point";
const PATH_ANY: &str = "R = 0: gmod+p kQ and gmod-i kQ both have almost split sequences <=> Q has no infinite path";
const DPATH_START: &str = "R = 0: D^b(gmod+p kQ) has almost split triangles on the left <=> Q has no infinite path with a starting point";
const DPATH_END: &str = "R = 0: D^b(gmod+p kQ) has almost split triangles on the right <=> Q has no infinite path with an end point";
const DPATH_ANY: &str = "R = 0: D^b(gmod+p kQ) has almost split triangles <=> Q has no infinite path";

fn from_hypothesis(holds: bool, criterion: &str, note: Option<String>) -> Verdict {
    Verdict::new(if holds { Answer::Yes } else { Answer::UnknownAtCap }, criterion, if holds { None } else { note })
}

/// `Some(true)` means "an infinite path exists", which answers "no".
fn from_path_status(status: Option<bool>, criterion: &str) -> Verdict {
    match status {
        Some(false) => Verdict::new(Answer::Yes, criterion, None),
        Some(true) => Verdict::new(Answer::No, criterion, Some("the quiver has an oriented cycle".into())),
        None => Verdict::new(Answer::UnknownAtCap, criterion, Some("open vertices leave the ambient quiver undetermined".into())),
    }
}

fn combine(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

fn first_unbounded(b: &[(String, crate::algebra::Bound)]) -> Option<String> {
    b.iter().find(|(_, s)| !s.is_finite()).map(|(x, s)| format!("vertex {x}: {}", serde_json::to_string(s).unwrap_or_default()))
}

/// Graded dimensions of every simple, computed in parallel.
pub fn simple_dimensions(alg: &GradedAlgebra, kind: Kind, cap: usize) -> Result<Vec<(String, GradedDim)>> {
    let q = alg.quiver();
    (0..q.vertex_count())
        .into_par_iter()
        .map(|a| Ok((q.label(a).to_string(), graded_dimension(alg, a, kind, cap)?)))
        .collect()
}

pub fn existence_report(alg: &GradedAlgebra, caps: Caps, assume_locally_bounded: bool) -> Result<ExistenceReport> {
    let bounds = alg.boundedness(caps.degree)?;
    let mut caveats = Vec::new();
    let left_ok = bounds.left_bounded() || assume_locally_bounded;
    let right_ok = bounds.right_bounded() || assume_locally_bounded;
    if assume_locally_bounded && !(bounds.left_bounded() && bounds.right_bounded()) {
        caveats.push("local boundedness is a user assertion, not certified from the data".to_string());
    }
    let left_note = first_unbounded(&bounds.left).map(|w| format!("left boundedness not certified within {} degrees at {w}", caps.degree));
    let right_note =
        first_unbounded(&bounds.right).map(|w| format!("right boundedness not certified within {} degrees at {w}", caps.degree));
    if let Some(n) = &left_note {
        caveats.push(n.clone());
    }
    if let Some(n) = &right_note {
        caveats.push(n.clone());
    }
    let both_ok = left_ok && right_ok;
    let lb_note = || Some("local boundedness not certified".to_string());

    let (pds, ids) = if both_ok {
        let (p, i) = rayon::join(
            || simple_dimensions(alg, Kind::Proj, caps.resolution),
            || simple_dimensions(alg, Kind::Inj, caps.resolution),
        );
        (p?, i?)
    } else {
        (Vec::new(), Vec::new())
    };
    let describe = |v: &[(String, GradedDim)], what: &str| {
        v.iter().find(|(_, d)| d.finite().is_none()).map(|(x, d)| format!("{what} of S_{x}: {d}"))
    };
    let derived_right = if !both_ok {
        Verdict::new(Answer::UnknownAtCap, PD_FINITE, lb_note())
    } else {
        let bad = describe(&pds, "graded projective dimension");
        from_hypothesis(bad.is_none(), PD_FINITE, bad)
    };
    let derived_left = if !both_ok {
        Verdict::new(Answer::UnknownAtCap, ID_FINITE, lb_note())
    } else {
        let bad = describe(&ids, "graded injective dimension");
        from_hypothesis(bad.is_none(), ID_FINITE, bad)
    };
    for v in [&derived_left, &derived_right] {
        if let Some(n) = &v.note {
            if !caveats.contains(n) {
                caveats.push(n.clone());
            }
        }
    }

    let q = alg.quiver();
    let analysis = q.analyze();
    let hereditary = alg.relations().is_empty().then(|| {
        let fwd = analysis.forward_status(!q.open_out().is_empty());
        let bwd = analysis.backward_status(!q.open_in().is_empty());
        HereditaryVerdicts {
            gmod_plus_p_left: from_path_status(fwd, PATH_START),
            gmod_minus_i_right: from_path_status(bwd, PATH_END),
            both_categories: from_path_status(combine(fwd, bwd), PATH_ANY),
            derived_left: from_path_status(fwd, DPATH_START),
            derived_right: from_path_status(bwd, DPATH_END),
            derived: from_path_status(combine(fwd, bwd), DPATH_ANY),
        }
    });
    if analysis.open_frontier {
        caveats.push(analysis.caveat.clone());
    }

    Ok(ExistenceReport {
        gmod_plus_p: Sided {
            left: from_hypothesis(left_ok, LEFT_BOUNDED, left_note.clone()),
            right: from_hypothesis(right_ok, RIGHT_BOUNDED, right_note.clone()),
        },
        gmod_minus_i: Sided {
            left: from_hypothesis(left_ok, LEFT_BOUNDED, left_note),
            right: from_hypothesis(right_ok, RIGHT_BOUNDED, right_note),
        },
        gmod_b: from_hypothesis(both_ok, LOCALLY_BOUNDED, lb_note()),
        derived_b: Sided { left: derived_left, right: derived_right },
        hereditary,
        evidence: Evidence {
            boundedness: bounds,
            projective_dimensions: pds,
            injective_dimensions: ids,
            analysis,
            assumed_locally_bounded: assume_locally_bounded,
        },
        caveats,
    })
}

impl ExistenceReport {
    pub fn table(&self) -> String {
        let mut rows: Vec<(String, &Verdict)> = vec![
            ("gmod+p left".into(), &self.gmod_plus_p.left),
            ("gmod+p right".into(), &self.gmod_plus_p.right),
            ("gmod-i left".into(), &self.gmod_minus_i.left),
            ("gmod-i right".into(), &self.gmod_minus_i.right),
            ("gmod^b".into(), &self.gmod_b),
            ("D^b(gmod^b) left".into(), &self.derived_b.left),
            ("D^b(gmod^b) right".into(), &self.derived_b.right),
        ];
        if let Some(h) = &self.hereditary {
            rows.push(("hereditary gmod+p left".into(), &h.gmod_plus_p_left));
            rows.push(("hereditary gmod-i right".into(), &h.gmod_minus_i_right));
            rows.push(("hereditary both".into(), &h.both_categories));
            rows.push(("hereditary D^b left".into(), &h.derived_left));
            rows.push(("hereditary D^b right".into(), &h.derived_right));
            rows.push(("hereditary D^b".into(), &h.derived));
        }
        let mut out = String::new();
        for (name, v) in rows {
            out.push_str(&format!("{name:<26} {:<15} {}\n", v.answer.label(), v.criterion));
        }
        if !self.evidence.projective_dimensions.is_empty() {
            out.push_str("\nvertex  pd                          id\n");
            for ((x, p), (_, i)) in self.evidence.projective_dimensions.iter().zip(&self.evidence.injective_dimensions) {
                out.push_str(&format!("{x:<7} {:<27} {i}\n", p.to_string()));
            }
        }
        for c in &self.caveats {
            out.push_str(&format!("caveat: {c}\n"));
        }
        out
    }
}
