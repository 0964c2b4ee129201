//! Top and socle bases, projective covers, injective envelopes, minimal
//! graded (co)presentations and resolutions.

use serde::Serialize;

use crate::algebra::{AlgElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::gmodule::{morphism_from_generators, Edge, GradedModule, Morphism};

/// Default number of degrees added when a window turns out too small.
pub const DEFAULT_PAD: i64 = 5;

/// A pure element: a vector in the piece `M_degree(vertex)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureElement {
    pub degree: i64,
    pub vertex: usize,
    pub vector: Vec<Scalar>,
}

/// Pure elements lifting a basis of `top M`, lowest degrees first.
pub fn top_basis(m: &GradedModule) -> Result<Vec<PureElement>> {
    let (lo, _) = m.window();
    if m.edges().0 == Edge::Truncated {
        return Err(Error::window("top basis needs a module bounded below", lo));
    }
    let rad = m.radical_bases()?;
    let field = m.field();
    let mut out = Vec::new();
    for (k, row) in rad.iter().enumerate() {
        let i = lo + k as i64;
        for (x, r) in row.iter().enumerate() {
            let n = m.dim(i, x)?;
            for c in r.complement_indices() {
                let mut v = vec![field.zero(); n];
                v[c] = field.one();
                out.push(PureElement { degree: i, vertex: x, vector: v });
            }
        }
    }
    Ok(out)
}

/// Pure elements spanning `soc M`, lowest degrees first.
pub fn soc_basis(m: &GradedModule) -> Result<Vec<PureElement>> {
    let (s, incl) = m.socle()?;
    let mut out = Vec::new();
    for i in s.degrees() {
        for x in 0..s.algebra().vertex_count() {
            let b = incl.block(i, x)?;
            for c in 0..b.cols() {
                out.push(PureElement { degree: i, vertex: x, vector: b.column(c) });
            }
        }
    }
    Ok(out)
}

/// `⊕ P_{a}⟨s⟩` realized on `window` (extended down to the lowest
/// generator so that every summand is exact below).
pub fn projective_sum(alg: &GradedAlgebra, summands: &[(usize, i64)], window: (i64, i64)) -> Result<GradedModule> {
    let lo = summands.iter().map(|&(_, s)| -s).min().map_or(window.0, |g| g.min(window.0));
    let hi = window.1.max(lo);
    let parts = summands
        .iter()
        .map(|&(a, s)| GradedModule::projective(alg, a, s, Some((lo, hi))))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GradedModule> = parts.iter().collect();
    Ok(GradedModule::direct_sum(alg, &refs)?.module)
}

/// `⊕ I_a⟨s⟩` realized on `window`.
pub fn injective_sum(alg: &GradedAlgebra, summands: &[(usize, i64)], window: (i64, i64)) -> Result<GradedModule> {
    let neg: Vec<(usize, i64)> = summands.iter().map(|&(a, s)| (a, -s)).collect();
    Ok(projective_sum(&alg.opposite(), &neg, (-window.1, -window.0))?.dual_pieces())
}

/// A graded projective cover `f: P → M` with its kernel.
#[derive(Clone, Debug)]
pub struct Cover {
    /// `P = ⊕ P_{a_k}⟨s_k⟩`, one summand per top-basis element.
    pub summands: Vec<(usize, i64)>,
    /// Image of the generator `e_{a_k}` of the `k`-th summand.
    pub generators: Vec<Vec<Scalar>>,
    pub module: GradedModule,
    pub map: Morphism,
    pub kernel: GradedModule,
    pub inclusion: Morphism,
}

impl Cover {
    /// `Ker f ⊆ rad P`.
    pub fn kernel_in_radical(&self) -> Result<bool> {
        let rad = self.module.radical_bases()?;
        let (lo, _) = self.module.window();
        for (k, row) in rad.iter().enumerate() {
            let i = lo + k as i64;
            for (x, r) in row.iter().enumerate() {
                let kb = self.inclusion.block(i, x)?;
                if kb.cols() == 0 {
                    continue;
                }
                let both = Matrix::hstack(r.field(), r.rows(), &[r, &kb]);
                if both.rank() != r.cols() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the cover touches an open-out vertex of the quiver (the
    /// listed algebra may then differ from the true one).
    pub fn meets_frontier(&self, cap: usize) -> bool {
        let alg = self.module.algebra();
        self.summands.iter().any(|&(a, _)| alg.projective_meets_frontier(a, cap))
    }
}

/// Projective cover realized on `window` (default: the module's window).
pub fn projective_cover(m: &GradedModule, window: Option<(i64, i64)>) -> Result<Cover> {
    let tops = top_basis(m)?;
    let (mlo, mhi) = m.window();
    let (wl, mut wh) = window.unwrap_or((mlo, mhi));
    if m.edges().1 == Edge::Truncated {
        wh = wh.min(mhi);
    }
    let wl = wl.min(mlo);
    let summands: Vec<(usize, i64)> = tops.iter().map(|t| (t.vertex, -t.degree)).collect();
    let generators: Vec<Vec<Scalar>> = tops.into_iter().map(|t| t.vector).collect();
    let p = projective_sum(m.algebra(), &summands, (wl, wh))?;
    let map = morphism_from_generators(&p, &summands, m, &generators)?;
    if !map.is_surjective() {
        return Err(Error::Internal("projective cover is not onto".into()));
    }
    let (kernel, inclusion) = map.kernel()?;
    Ok(Cover { summands, generators, module: p, map, kernel, inclusion })
}

/// A graded injective envelope `g: M → I` with its cokernel.
#[derive(Clone, Debug)]
pub struct Envelope {
    /// `I = ⊕ I_{a_k}⟨s_k⟩`.
    pub summands: Vec<(usize, i64)>,
    pub module: GradedModule,
    pub map: Morphism,
    pub cokernel: GradedModule,
    pub projection: Morphism,
}

impl Envelope {
    /// `soc I ⊆ Im g`.
    pub fn socle_in_image(&self) -> Result<bool> {
        let (_, sincl) = self.module.socle()?;
        let img = self.map.image_bases()?;
        let (lo, _) = self.module.window();
        for (k, row) in img.iter().enumerate() {
            let i = lo + k as i64;
            for (x, b) in row.iter().enumerate() {
                let s = sincl.block(i, x).unwrap_or_else(|_| Matrix::zeros(b.field(), b.rows(), 0));
                if s.cols() == 0 {
                    continue;
                }
                let both = Matrix::hstack(b.field(), b.rows(), &[b, &s]);
                if both.rank() != b.cols() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Dualize a cover of `𝔇M` over the opposite algebra.
pub fn envelope_from_dual_cover(c: &Cover) -> Result<Envelope> {
    Ok(Envelope {
        summands: c.summands.iter().map(|&(a, t)| (a, -t)).collect(),
        module: c.module.dual_pieces(),
        map: c.map.dual_pieces()?,
        cokernel: c.kernel.dual_pieces(),
        projection: c.inclusion.dual_pieces()?,
    })
}

/// Injective envelope realized on `window` (default: the module's window).
pub fn injective_envelope(m: &GradedModule, window: Option<(i64, i64)>) -> Result<Envelope> {
    if m.edges().1 == Edge::Truncated {
        return Err(Error::window("injective envelope needs a module bounded above", m.window().1));
    }
    let d = m.dual_pieces();
    let c = projective_cover(&d, window.map(|(l, h)| (-h, -l)))?;
    envelope_from_dual_cover(&c)
}

/// A matrix of elements of `Λ` describing a map between sums of shifted
/// projectives `⊕_j P_{a_j}⟨s_j⟩ → ⊕_i P_{b_i}⟨t_i⟩`: the `(i, j)` entry
/// `u ∈ e_{a_j} Λ_{t_i - s_j} e_{b_i}` acts by right multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct PMap {
    pub alg: GradedAlgebra,
    pub source: Vec<(usize, i64)>,
    pub target: Vec<(usize, i64)>,
    /// `entries[i][j]`; `None` where the degree `t_i - s_j` is negative.
    pub entries: Vec<Vec<Option<AlgElement>>>,
}

impl PMap {
    pub fn identity(alg: &GradedAlgebra, summands: &[(usize, i64)]) -> PMap {
        let entries = summands
            .iter()
            .map(|&(b, t)| {
                summands
                    .iter()
                    .map(|&(a, s)| {
                        let d = t - s;
                        (d >= 0).then(|| {
                            if a == b && d == 0 {
                                alg.idempotent(a)
                            } else {
                                alg.zero_element(d as usize, b, a)
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        PMap { alg: alg.clone(), source: summands.to_vec(), target: summands.to_vec(), entries }
    }

    /// Every nonzero entry lies in the graded radical.
    pub fn is_radical(&self) -> bool {
        self.entries.iter().flatten().flatten().all(|u| u.degree >= 1 || u.is_zero())
    }

    /// `(-)^t`: entries transposed and sent to the opposite algebra.
    pub fn transpose(&self) -> Result<PMap> {
        let alg = self.alg.opposite();
        let mut entries = Vec::new();
        for j in 0..self.source.len() {
            let mut row = Vec::new();
            for i in 0..self.target.len() {
                row.push(match &self.entries[i][j] {
                    Some(u) => Some(self.alg.to_opposite(u)?),
                    None => None,
                });
            }
            entries.push(row);
        }
        Ok(PMap {
            alg,
            source: self.target.iter().map(|&(b, t)| (b, -t)).collect(),
            target: self.source.iter().map(|&(a, s)| (a, -s)).collect(),
            entries,
        })
    }

    /// Image of the `j`-th source generator as a vector of the target piece.
    fn generator_image(&self, j: usize) -> Vec<Scalar> {
        let (a, s) = self.source[j];
        let mut v = Vec::new();
        for (i, &(b, t)) in self.target.iter().enumerate() {
            let d = t - s;
            if d < 0 {
                continue;
            }
            match &self.entries[i][j] {
                Some(u) => v.extend(u.coeffs.iter().cloned()),
                None => v.extend(std::iter::repeat(self.alg.field().zero()).take(self.alg.piece_dim(d as usize, b, a))),
            }
        }
        v
    }

    /// The explicit module map on `window`.
    pub fn realize(&self, window: (i64, i64)) -> Result<Morphism> {
        let s = projective_sum(&self.alg, &self.source, window)?;
        let t = projective_sum(&self.alg, &self.target, (s.window().0, window.1))?;
        let images: Vec<Vec<Scalar>> = (0..self.source.len()).map(|j| self.generator_image(j)).collect();
        morphism_from_generators(&s, &self.source, &t, &images)
    }
}

/// The same data read as a map `⊕ I_{a_j}⟨s_j⟩ → ⊕ I_{b_i}⟨t_i⟩` with
/// components `I[u] = 𝔇(P[u°])`.
#[derive(Clone, Debug, PartialEq)]
pub struct IMap {
    pub data: PMap,
}

impl IMap {
    pub fn realize(&self, window: (i64, i64)) -> Result<Morphism> {
        self.data.transpose()?.realize((-window.1, -window.0))?.dual_pieces()
    }
}

/// Minimal graded projective presentation `P⁻¹ → P⁰ → M → 0`.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub module: GradedModule,
    pub p0: Vec<(usize, i64)>,
    pub p1: Vec<(usize, i64)>,
    /// `d⁻¹: P⁻¹ → P⁰`.
    pub d: PMap,
    pub cover: Cover,
    pub syzygy_cover: Cover,
    /// Whether every piece involved is known exactly (no truncation).
    pub exact: bool,
}

impl ProjPresentation {
    pub fn is_minimal(&self) -> bool {
        self.d.is_radical()
    }
}

fn presentation_on(m: &GradedModule, w: (i64, i64)) -> Result<ProjPresentation> {
    let alg = m.algebra().clone();
    let cover = projective_cover(m, Some(w))?;
    let syz = projective_cover(&cover.kernel, Some(w))?;
    let mut entries = vec![Vec::new(); cover.summands.len()];
    for (j, &(b, t)) in syz.summands.iter().enumerate() {
        let v = cover.inclusion.block(-t, b)?.mul_vec(&syz.generators[j]);
        let mut off = 0;
        for (i, &(a, s)) in cover.summands.iter().enumerate() {
            let d = s - t;
            if d < 0 {
                entries[i].push(None);
                continue;
            }
            let n = alg.piece_dim(d as usize, a, b);
            entries[i].push(Some(AlgElement { degree: d as usize, source: a, target: b, coeffs: v[off..off + n].to_vec() }));
            off += n;
        }
    }
    let d = PMap { alg, source: syz.summands.clone(), target: cover.summands.clone(), entries };
    let exact = cover.module.is_exact();
    Ok(ProjPresentation { module: m.clone(), p0: cover.summands.clone(), p1: syz.summands.clone(), d, cover, syzygy_cover: syz, exact })
}

pub fn minimal_presentation(m: &GradedModule) -> Result<ProjPresentation> {
    minimal_presentation_in(m, None, DEFAULT_PAD)
}

/// Minimal presentation computed on `window` (default: the module's window
/// plus `pad` degrees above). When projectives do not fit the window the
/// computation is repeated on a window grown by `pad`; agreement of the
/// summand lists is required, with one further retry.
pub fn minimal_presentation_in(m: &GradedModule, window: Option<(i64, i64)>, pad: i64) -> Result<ProjPresentation> {
    let (lo, hi) = m.window();
    let w = window.unwrap_or((lo, hi + pad));
    let first = presentation_on(m, w)?;
    if first.exact || m.edges().1 == Edge::Truncated {
        return Ok(first);
    }
    let second = presentation_on(m, (w.0, w.1 + pad))?;
    if second.p1 == first.p1 {
        return Ok(first);
    }
    let third = presentation_on(m, (w.0, w.1 + 2 * pad))?;
    if third.p1 == second.p1 {
        return Ok(second);
    }
    let deg = third.p1.iter().find(|s| !second.p1.contains(s)).map_or(w.1 + 2 * pad, |&(_, t)| -t);
    Err(Error::window("syzygy not finitely generated within the window", deg))
}

/// Minimal graded injective copresentation `0 → M → I⁰ → I¹`.
#[derive(Clone, Debug)]
pub struct InjCopresentation {
    pub module: GradedModule,
    pub i0: Vec<(usize, i64)>,
    pub i1: Vec<(usize, i64)>,
    /// `d⁰: I⁰ → I¹`.
    pub d: IMap,
    pub envelope: Envelope,
    /// The presentation of `𝔇M` over the opposite algebra it came from.
    pub dual: ProjPresentation,
}

impl InjCopresentation {
    pub fn is_minimal(&self) -> bool {
        self.d.data.is_radical()
    }
}

pub fn minimal_copresentation(m: &GradedModule) -> Result<InjCopresentation> {
    minimal_copresentation_in(m, None, DEFAULT_PAD)
}

pub fn minimal_copresentation_in(m: &GradedModule, window: Option<(i64, i64)>, pad: i64) -> Result<InjCopresentation> {
    if m.edges().1 == Edge::Truncated {
        return Err(Error::window("copresentation needs a module bounded above", m.window().1));
    }
    let dm = m.dual_pieces();
    let p = minimal_presentation_in(&dm, window.map(|(l, h)| (-h, -l)), pad)?;
    let op = dm.algebra();
    let i0: Vec<(usize, i64)> = p.p0.iter().map(|&(a, s)| (a, -s)).collect();
    let i1: Vec<(usize, i64)> = p.p1.iter().map(|&(b, t)| (b, -t)).collect();
    let mut entries = Vec::new();
    for j in 0..i1.len() {
        let mut row = Vec::new();
        for i in 0..i0.len() {
            row.push(match &p.d.entries[i][j] {
                Some(v) => Some(op.to_opposite(v)?),
                None => None,
            });
        }
        entries.push(row);
    }
    let d = IMap { data: PMap { alg: m.algebra().clone(), source: i0.clone(), target: i1.clone(), entries } };
    let envelope = envelope_from_dual_cover(&p.cover)?;
    Ok(InjCopresentation { module: m.clone(), i0, i1, d, envelope, dual: p })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Proj,
    Inj,
}

/// A graded projective or injective dimension. Only finiteness is ever
/// certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum GradedDim {
    Finite { value: usize },
    UnknownAtCap { cap: usize, reason: Option<String> },
}

impl GradedDim {
    pub fn finite(&self) -> Option<usize> {
        match self {
            GradedDim::Finite { value } => Some(*value),
            _ => None,
        }
    }
}

impl std::fmt::Display for GradedDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GradedDim::Finite { value } => write!(f, "{value}"),
            GradedDim::UnknownAtCap { cap, reason: None } => write!(f, ">= {cap} (unknown at cap)"),
            GradedDim::UnknownAtCap { cap, reason: Some(r) } => write!(f, "unknown at cap {cap} ({r})"),
        }
    }
}

/// One term of a resolution: the (co)cover summands and the next
/// (co)syzygy.
#[derive(Clone, Debug)]
pub struct ResolutionStep {
    pub summands: Vec<(usize, i64)>,
    pub certified: bool,
    pub syzygy: GradedModule,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub kind: Kind,
    pub steps: Vec<ResolutionStep>,
    pub dimension: GradedDim,
}

/// Iterated minimal covers (or envelopes), stopping at a certified zero
/// syzygy or after `cap + 1` steps.
pub fn resolution(m: &GradedModule, kind: Kind, cap: usize) -> Result<Resolution> {
    if m.is_exact() && m.is_zero() {
        return Err(Error::Precondition("resolution of the zero module".into()));
    }
    let start = match kind {
        Kind::Proj => m.clone(),
        Kind::Inj => {
            if m.edges().1 == Edge::Truncated {
                return Err(Error::window("injective resolution needs a module bounded above", m.window().1));
            }
            m.dual_pieces()
        }
    };
    let (lo, hi) = start.window();
    let w = (lo, hi + cap as i64 + DEFAULT_PAD);
    let reach = (w.1 - w.0 + 1).max(1) as usize;
    let mut cur = start;
    let mut steps = Vec::new();
    let mut frontier: Option<String> = None;
    for k in 0..=cap + 1 {
        if cur.is_exact() && cur.is_zero() {
            let dimension = match frontier {
                None => GradedDim::Finite { value: k - 1 },
                Some(r) => GradedDim::UnknownAtCap { cap, reason: Some(r) },
            };
            return Ok(finish(kind, steps, dimension));
        }
        if k == cap + 1 {
            break;
        }
        let c = projective_cover(&cur, Some(w))?;
        let mut certified = c.module.is_exact();
        if c.meets_frontier(reach) {
            certified = false;
            if frontier.is_none() {
                let alg = c.module.algebra();
                let v = c.summands.iter().find(|&&(a, _)| alg.projective_meets_frontier(a, reach)).unwrap().0;
                frontier = Some(format!("step {k}: summand at {} reaches an open vertex", alg.quiver().label(v)));
            }
        }
        let next = if c.kernel.is_exact() { c.kernel.trimmed() } else { c.kernel.clone() };
        steps.push(ResolutionStep { summands: c.summands.clone(), certified, syzygy: next.clone() });
        cur = next;
    }
    Ok(finish(kind, steps, GradedDim::UnknownAtCap { cap, reason: frontier }))
}

fn finish(kind: Kind, steps: Vec<ResolutionStep>, dimension: GradedDim) -> Resolution {
    let steps = match kind {
        Kind::Proj => steps,
        Kind::Inj => steps
            .into_iter()
            .map(|s| ResolutionStep {
                summands: s.summands.iter().map(|&(a, t)| (a, -t)).collect(),
                certified: s.certified,
                syzygy: s.syzygy.dual_pieces(),
            })
            .collect(),
    };
    Resolution { kind, steps, dimension }
}

/// Graded projective or injective dimension of `S_a`.
pub fn graded_dimension(alg: &GradedAlgebra, a: usize, kind: Kind, cap: usize) -> Result<GradedDim> {
    Ok(resolution(&GradedModule::simple(alg, a, 0), kind, cap)?.dimension)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::quiver::Quiver;

    fn fix_b() -> GradedAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        GradedAlgebra::new(Field::Rational, q, vec![]).unwrap()
    }

    fn fix_c() -> GradedAlgebra {
        let q = Quiver::new(
            &["1", "2", "3", "4", "5", "6"],
            &[("a", "1", "2"), ("b", "1", "3"), ("g", "2", "4"), ("d", "3", "4"), ("e", "4", "5"), ("z", "5", "6")],
        )
        .unwrap();
        GradedAlgebra::from_named(Field::Rational, q, &[vec![(1, vec!["g", "a"]), (-1, vec!["d", "b"])]]).unwrap()
    }

    #[test]
    fn cover_of_simple_and_projective() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let c = projective_cover(&s1, None).unwrap();
        assert_eq!(c.summands, vec![(0, 0)]);
        assert!(c.kernel_in_radical().unwrap());
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let c = projective_cover(&p1, None).unwrap();
        assert!(c.map.is_iso());
        assert!(c.kernel.is_zero());
    }

    #[test]
    fn presentation_fix_b_and_c() {
        let b = fix_b();
        let p = minimal_presentation(&GradedModule::simple(&b, 0, 0)).unwrap();
        assert_eq!(p.p0, vec![(0, 0)]);
        assert_eq!(p.p1, vec![(1, -1)]);
        assert!(p.is_minimal());
        assert_eq!(b.format_element(p.d.entries[0][0].as_ref().unwrap()), "a");

        let c = fix_c();
        let p = minimal_presentation(&GradedModule::simple(&c, 0, 0)).unwrap();
        assert_eq!(p.p1, vec![(1, -1), (2, -1)]);
        assert!(p.is_minimal());
        let r = resolution(&GradedModule::simple(&c, 0, 0), Kind::Proj, 10).unwrap();
        assert_eq!(r.dimension, GradedDim::Finite { value: 2 });
        assert_eq!(r.steps[2].summands, vec![(3, -2)]);
    }

    #[test]
    fn realized_presentation_is_a_complex() {
        let c = fix_c();
        let p = minimal_presentation(&GradedModule::simple(&c, 0, 0)).unwrap();
        let d = p.d.realize((0, 6)).unwrap();
        assert!(d.is_natural());
        let pi = p.cover.map.rehome(&d.target, &p.cover.map.target).unwrap();
        assert!(pi.compose_after(&d).unwrap().is_zero());
    }

    #[test]
    fn envelope_of_simple() {
        let b = fix_b();
        let e = injective_envelope(&GradedModule::simple(&b, 0, 0), None).unwrap();
        assert_eq!(e.summands, vec![(0, 0)]);
        assert!(e.socle_in_image().unwrap());
        assert!(e.map.is_natural());
        assert_eq!(e.module.dims_list(), vec![(0, 0, 1)]);
        let i2 = GradedModule::injective(&b, 1, 0, None).unwrap();
        let e = injective_envelope(&i2, None).unwrap();
        assert!(e.map.is_iso());
    }

    #[test]
    fn copresentation_matches_realization() {
        let b = fix_b();
        let cp = minimal_copresentation(&GradedModule::simple(&b, 1, 0)).unwrap();
        assert_eq!(cp.i0, vec![(1, 0)]);
        assert_eq!(cp.i1, vec![(0, 1)]);
        assert!(cp.is_minimal());
        let d = cp.d.realize((-2, 2)).unwrap();
        assert!(d.is_natural());
        assert!(!d.is_zero());
    }
}
