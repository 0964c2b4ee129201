//! Transpose, Nakayama functor, Auslander-Reiten translates, the AR formula
//! and almost split sequences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::gmodule::{GradedModule, Morphism};
use crate::homs::{
    end_algebra, ext1, factor_through_mono, find_isomorphism, is_strongly_indecomposable, lift_along_epi,
    stable_hom_dims, ExtSpace, Indecomposability,
};
use crate::presentations::{minimal_presentation, IMap, PMap, ProjPresentation, DEFAULT_PAD};

/// `Tr M` over the opposite algebra with its presentation.
#[derive(Clone, Debug)]
pub struct Transpose {
    pub module: GradedModule,
    /// `(P⁰)^t → (P⁻¹)^t`.
    pub presentation: PMap,
    pub source: ProjPresentation,
}

fn transpose_window(p: &PMap, span: i64) -> (i64, i64) {
    let degs: Vec<i64> = p.target.iter().map(|&(_, t)| -t).collect();
    let lo = degs.iter().copied().min().unwrap_or(0);
    let hi = degs.iter().copied().max().unwrap_or(0);
    (lo - 1, hi + span)
}

/// `Tr M = Coker (d⁻¹)^t`.
pub fn transpose(m: &GradedModule) -> Result<Transpose> {
    let pres = minimal_presentation(m)?;
    transpose_of(&pres)
}

pub fn transpose_of(pres: &ProjPresentation) -> Result<Transpose> {
    let t = pres.d.transpose()?;
    let op = t.alg.clone();
    if t.target.is_empty() {
        return Ok(Transpose { module: GradedModule::zero(&op), presentation: t, source: pres.clone() });
    }
    let (lo, hi) = pres.module.window();
    let w = transpose_window(&t, (hi - lo) + 2 * DEFAULT_PAD);
    let d = t.realize(w)?;
    let q = d.cokernel()?;
    let module = if q.module.is_exact() { q.module.trimmed() } else { q.module };
    Ok(Transpose { module, presentation: t, source: pres.clone() })
}

pub fn nakayama(p: &PMap) -> IMap {
    IMap { data: p.clone() }
}

pub fn nakayama_inverse(i: &IMap) -> PMap {
    i.data.clone()
}

/// A translate with a note when the input was projective (or injective).
#[derive(Clone, Debug)]
pub struct Translate {
    pub module: GradedModule,
    pub warning: Option<String>,
}

/// `𝔇 Tr M` without the indecomposability gate.
pub fn translate(m: &GradedModule) -> Result<Translate> {
    let tr = transpose(m)?;
    if tr.source.p1.is_empty() {
        return Ok(Translate {
            module: GradedModule::zero(m.algebra()),
            warning: Some("module is projective; its translate is zero".into()),
        });
    }
    if !tr.module.is_exact() {
        return Err(Error::window("transpose is not finite within the window", tr.module.window().1));
    }
    Ok(Translate { module: tr.module.dual()?.trimmed(), warning: None })
}

/// `Tr 𝔇 N` without the indecomposability gate.
pub fn translate_inverse(n: &GradedModule) -> Result<Translate> {
    if !n.is_exact() {
        return Err(Error::Precondition("inverse translate needs an exact module".into()));
    }
    let t = translate(&n.dual()?)?;
    // 𝔇 of 𝔇Tr𝔇N over the opposite algebra is Tr𝔇N.
    let module = if t.module.is_zero() { GradedModule::zero(n.algebra()) } else { t.module.dual()?.trimmed() };
    let warning = t.warning.map(|_| "module is injective; its inverse translate is zero".to_string());
    Ok(Translate { module, warning })
}

fn require_yes(m: &GradedModule) -> Result<()> {
    match is_strongly_indecomposable(m)? {
        Indecomposability::Yes => Ok(()),
        v => Err(Error::Precondition(format!("indecomposability verdict is {:?}, not yes", v.label()))),
    }
}

/// `τM = 𝔇 Tr M` for a strongly indecomposable module.
pub fn tau(m: &GradedModule) -> Result<Translate> {
    require_yes(m)?;
    translate(m)
}

/// `τ⁻N = Tr 𝔇 N` for a strongly indecomposable module.
pub fn tau_inverse(n: &GradedModule) -> Result<Translate> {
    require_yes(n)?;
    translate_inverse(n)
}

/// The two dimension identities of the AR formula for one pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArFormulaReport {
    pub stable_hom_mx: usize,
    pub ext_x_tau_m: usize,
    pub costable_hom_xm: usize,
    pub ext_tau_inv_m_x: usize,
}

impl ArFormulaReport {
    pub fn first_holds(&self) -> bool {
        self.stable_hom_mx == self.ext_x_tau_m
    }
    pub fn second_holds(&self) -> bool {
        self.costable_hom_xm == self.ext_tau_inv_m_x
    }
}

pub fn ar_formula_check(m: &GradedModule, x: &GradedModule) -> Result<ArFormulaReport> {
    let tm = translate(m)?.module;
    let tim = translate_inverse(m)?.module;
    ar_formula_with(m, x, &tm, &tim)
}

/// As [`ar_formula_check`] with the translates of `m` supplied.
pub fn ar_formula_with(m: &GradedModule, x: &GradedModule, tau_m: &GradedModule, tau_inv_m: &GradedModule) -> Result<ArFormulaReport> {
    Ok(ArFormulaReport {
        stable_hom_mx: stable_hom_dims(m, x)?.underline,
        ext_x_tau_m: ext1(x, tau_m)?.dim(),
        costable_hom_xm: stable_hom_dims(x, m)?.overline,
        ext_tau_inv_m_x: ext1(tau_inv_m, x)?.dim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ending,
    Starting,
}

/// What [`verify_almost_split`] established.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Certificate {
    pub exact: bool,
    /// Coordinates of the extension class in `Ext¹(C, A)`; nonzero means
    /// nonsplit.
    pub class: Vec<String>,
    pub nonsplit: bool,
    /// `ξ·f = 0` for each radical basis element `f` of `End(C)`.
    pub socle: Vec<bool>,
    pub left_is_tau: bool,
    pub indecomposable_ends: (String, String),
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `0 → A → E → C → 0` with its certificate.
#[derive(Clone, Debug)]
pub struct AlmostSplitSequence {
    pub left: GradedModule,
    pub middle: GradedModule,
    pub right: GradedModule,
    pub f: Morphism,
    pub g: Morphism,
    pub certificate: Certificate,
}

/// The extension `0 → N → E → M → 0` attached to a class of `Ext¹(M, N)`:
/// the pushout of `K → P⁰` along a representative `K → N`.
pub fn extension_from_class(ext: &ExtSpace, class: &[Scalar]) -> Result<(GradedModule, Morphism, Morphism)> {
    let a = &ext.n;
    let c = &ext.m;
    let alg = a.algebra();
    let h = ext.representative(class)?;
    let cover = &ext.cover;
    let sum = GradedModule::direct_sum(alg, &[a, &cover.module])?;
    let (ia, ip) = (&sum.injections[0], &sum.injections[1]);
    let phi = ia.compose_after(&h)?.sub(&ip.compose_after(&cover.inclusion)?)?;
    let q = phi.cokernel()?;
    let f_full = q.projection.compose_after(ia)?;
    let psi = cover.map.compose_after(&sum.projections[1])?;
    let g_full = q.factor(&psi)?;
    let full = &q.module;
    let bounds: Vec<(i64, i64)> = [a, c].iter().filter_map(|m| m.support()).collect();
    let lo = bounds.iter().map(|b| b.0).min().unwrap_or(0);
    let hi = bounds.iter().map(|b| b.1).max().unwrap_or(-1);
    let (wl, wh) = full.window();
    for i in wl..=wh {
        if (i < lo || i > hi) && (0..alg.vertex_count()).any(|x| full.dim(i, x).unwrap_or(0) > 0) {
            return Err(Error::Internal(format!("middle term nonzero outside the ends at degree {i}")));
        }
    }
    let e = full.close_window(lo, hi)?;
    let f = f_full.rehome(a, &e)?;
    let g = g_full.rehome(&e, c)?;
    Ok((e, f, g))
}

pub fn almost_split_sequence(c: &GradedModule, direction: Direction) -> Result<AlmostSplitSequence> {
    match direction {
        Direction::Ending => ending_at(c),
        Direction::Starting => {
            if !c.is_exact() {
                return Err(Error::Precondition("almost split sequences need an exact module".into()));
            }
            let s = ending_at(&c.dual()?)?;
            let left = s.right.dual()?;
            let f = s.g.dual()?.rehome(&left, &s.middle.dual()?)?;
            let g = s.f.dual()?;
            let mut seq = AlmostSplitSequence {
                left,
                middle: s.middle.dual()?,
                right: s.left.dual()?,
                f,
                g,
                certificate: Certificate::default(),
            };
            seq.certificate = verify_almost_split(&seq);
            Ok(seq)
        }
    }
}

fn ending_at(c: &GradedModule) -> Result<AlmostSplitSequence> {
    if !c.is_exact() || c.is_zero() {
        return Err(Error::Precondition("almost split sequences need a nonzero exact module".into()));
    }
    require_yes(c)?;
    let t = translate(c)?;
    if t.warning.is_some() {
        return Err(Error::Precondition("no almost split sequence ends at a projective module".into()));
    }
    let a = t.module;
    let ext = ext1(c, &a)?;
    if ext.dim() == 0 {
        return Err(Error::Internal("Ext¹(C, τC) vanishes for a non-projective indecomposable".into()));
    }
    let xi = socle_class(&ext, c)?;
    let (e, f, g) = extension_from_class(&ext, &xi)?;
    let mut seq = AlmostSplitSequence { left: a, middle: e, right: c.clone(), f, g, certificate: Certificate::default() };
    seq.certificate = verify_almost_split(&seq);
    Ok(seq)
}

/// First basis vector of the classes killed by `rad End(C)`.
pub fn socle_class(ext: &ExtSpace, c: &GradedModule) -> Result<Vec<Scalar>> {
    let field = c.field();
    let end = end_algebra(c)?;
    let mats = end.radical_elements()?.iter().map(|f| ext.right_action(f)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = mats.iter().collect();
    let stacked = Matrix::vstack(field, ext.dim(), &refs);
    let soc = stacked.kernel();
    if soc.cols() == 0 {
        return Err(Error::Internal("radical action has no common kernel".into()));
    }
    Ok(soc.column(0))
}

/// Check every certificate item; never errors, failures are recorded.
pub fn verify_almost_split(seq: &AlmostSplitSequence) -> Certificate {
    let mut cert = Certificate::default();
    if let Err(e) = fill_certificate(seq, &mut cert) {
        cert.failures.push(format!("error: {e}"));
    }
    cert
}

fn fill_certificate(seq: &AlmostSplitSequence, cert: &mut Certificate) -> Result<()> {
    let (a, e, c) = (&seq.left, &seq.middle, &seq.right);
    let gf = seq.g.compose_after(&seq.f)?;
    let nv = a.algebra().vertex_count();
    let mut dims_ok = a.is_exact() && e.is_exact() && c.is_exact();
    if dims_ok {
        let (l1, h1) = a.window();
        let (l2, h2) = e.window();
        let (l3, h3) = c.window();
        for i in l1.min(l2).min(l3)..=h1.max(h2).max(h3) {
            for x in 0..nv {
                if e.d(i, x) != a.d(i, x) + c.d(i, x) {
                    dims_ok = false;
                }
            }
        }
    }
    cert.exact = dims_ok
        && seq.f.is_natural()
        && seq.g.is_natural()
        && gf.is_zero()
        && seq.f.is_injective()
        && seq.g.is_surjective();
    if !cert.exact {
        cert.failures.push("exactness".into());
        return Ok(());
    }
    // Class of the sequence: lift the cover of C through g, restrict to the
    // syzygy, factor through f.
    let ext = ext1(c, a)?;
    let cov = &ext.cover;
    let lam = lift_along_epi(&cov.module, &cov.summands, &cov.generators, &seq.g)?;
    let lk = lam.compose_after(&cov.inclusion)?;
    let h = factor_through_mono(&lk, &seq.f)?.ok_or_else(|| Error::Internal("syzygy image not inside A".into()))?;
    let class = ext.class_of(&h)?;
    cert.class = class.iter().map(|s| s.to_string()).collect();
    cert.nonsplit = class.iter().any(|s| !s.is_zero());
    if !cert.nonsplit {
        cert.failures.push("nonsplit".into());
    }
    let va = is_strongly_indecomposable(a)?;
    let vc = is_strongly_indecomposable(c)?;
    cert.indecomposable_ends = (va.label().into(), vc.label().into());
    if !(va.is_yes() && vc.is_yes()) {
        cert.failures.push("indecomposable ends".into());
        return Ok(());
    }
    let end = end_algebra(c)?;
    for f in end.radical_elements()? {
        let act = ext.right_action(&f)?;
        cert.socle.push(act.mul_vec(&class).iter().all(Scalar::is_zero));
    }
    if cert.socle.iter().any(|ok| !ok) {
        cert.failures.push("socle".into());
    }
    let tc = translate(c)?.module;
    cert.left_is_tau = find_isomorphism(a, &tc, 64, 0)?.is_some();
    if !cert.left_is_tau {
        cert.failures.push("left term is not the translate".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::exactla::Field;
    use crate::gmodule::Edge;
    use crate::homs::ghom;
    use crate::quiver::Quiver;

    fn fix_b() -> GradedAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        GradedAlgebra::new(Field::Rational, q, vec![]).unwrap()
    }

    #[test]
    fn transpose_and_tau_fix_b() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let tr = transpose(&s1).unwrap();
        assert_eq!(tr.module.algebra(), &b.opposite());
        assert_eq!(tr.module.dims_list(), vec![(-1, 1, 1)]);
        let t = tau(&s1).unwrap();
        assert_eq!(t.module.dims_list(), vec![(1, 1, 1)]);
        assert!(t.module.same_data(&GradedModule::simple(&b, 1, -1)));
        let back = tau_inverse(&t.module).unwrap();
        assert!(back.module.same_data(&s1));
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let t = tau(&p1).unwrap();
        assert!(t.module.is_zero() && t.warning.is_some());
        assert!(transpose(&p1).unwrap().module.is_zero());
    }

    #[test]
    fn nakayama_example() {
        let b = fix_b();
        // P[a]: P_2<-1> → P_1.
        let u = b.arrow_element(0);
        let p = PMap { alg: b.clone(), source: vec![(1, -1)], target: vec![(0, 0)], entries: vec![vec![Some(u)]] };
        let pm = p.realize((-2, 2)).unwrap();
        assert!(pm.is_natural() && pm.is_injective());
        let i = nakayama(&p);
        let im = i.realize((-2, 2)).unwrap();
        assert!(im.is_natural());
        assert!(!im.is_zero());
        assert_eq!(im.source.dims_list(), GradedModule::injective(&b, 1, -1, None).unwrap().dims_list());
        assert_eq!(im.target.dims_list(), GradedModule::injective(&b, 0, 0, None).unwrap().dims_list());
        assert!(im.is_surjective());
        assert_eq!(nakayama_inverse(&i), p);
    }

    #[test]
    fn ar_formula_small() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let s2 = GradedModule::simple(&b, 1, -1);
        let r = ar_formula_check(&s1, &s2).unwrap();
        assert!(r.first_holds() && r.second_holds());
        assert_eq!(r.stable_hom_mx, 0);
        let r = ar_formula_check(&s1, &s1).unwrap();
        assert_eq!((r.stable_hom_mx, r.ext_x_tau_m), (1, 1));
    }

    #[test]
    fn fix_b_sequence_both_directions() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let seq = almost_split_sequence(&s1, Direction::Ending).unwrap();
        assert!(seq.certificate.pass(), "{:?}", seq.certificate);
        assert!(seq.left.same_data(&GradedModule::simple(&b, 1, -1)));
        assert!(seq.middle.same_data(&GradedModule::projective(&b, 0, 0, None).unwrap()));
        let s2 = GradedModule::simple(&b, 1, -1);
        let st = almost_split_sequence(&s2, Direction::Starting).unwrap();
        assert!(st.certificate.pass(), "{:?}", st.certificate);
        assert!(st.right.same_data(&s1));
        assert!(st.middle.same_data(&seq.middle));
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        assert!(almost_split_sequence(&p1, Direction::Ending).unwrap_err().is_refusal());
    }

    #[test]
    fn split_sequence_fails() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let s2 = GradedModule::simple(&b, 1, -1);
        let sum = GradedModule::direct_sum(&b, &[&s2, &s1]).unwrap();
        let seq = AlmostSplitSequence {
            left: s2,
            middle: sum.module.clone(),
            right: s1,
            f: sum.injections[0].clone(),
            g: sum.projections[1].clone(),
            certificate: Certificate::default(),
        };
        let cert = verify_almost_split(&seq);
        assert!(!cert.pass());
        assert!(cert.exact);
        assert!(cert.failures.contains(&"nonsplit".to_string()));
    }

    /// Square `w→z→y`, `w→x→y` without relations and the string module
    /// with a nilpotent endomorphism from its top at `x` to its socle at `x`.
    fn string_fixture() -> (GradedAlgebra, GradedModule) {
        let q = Quiver::new(
            &["w", "x", "y", "z"],
            &[("al", "x", "y"), ("be", "z", "y"), ("ga", "w", "z"), ("de", "w", "x")],
        )
        .unwrap();
        let f = Field::Rational;
        let alg = GradedAlgebra::new(f, q, vec![]).unwrap();
        let m = |r, c, v: &[i64]| Matrix::from_i64(f, r, c, v);
        // degree -1: w; degree 0: x (u = de p, v), z (q = ga p); degree 1: y.
        let dims = vec![vec![1, 0, 0, 0], vec![0, 2, 0, 1], vec![0, 0, 1, 0]];
        let maps = vec![
            vec![m(0, 0, &[]), m(0, 0, &[]), m(1, 1, &[1]), m(2, 1, &[1, 0])],
            vec![m(1, 2, &[0, 1]), m(1, 1, &[1]), m(0, 0, &[]), m(0, 0, &[])],
        ];
        let c = GradedModule::new(&alg, -1, 1, Edge::Exact, Edge::Exact, dims, maps).unwrap();
        assert!(c.validate().is_ok());
        (alg, c)
    }

    #[test]
    fn socle_condition_detects_wrong_class() {
        let (_, c) = string_fixture();
        assert_eq!(ghom(&c, &c).unwrap().dim(), 2);
        assert!(is_strongly_indecomposable(&c).unwrap().is_yes());
        let seq = almost_split_sequence(&c, Direction::Ending).unwrap();
        assert!(seq.certificate.pass(), "{:?}", seq.certificate);
        let a = translate(&c).unwrap().module;
        let ext = ext1(&c, &a).unwrap();
        assert!(ext.dim() >= 2);
        let good = socle_class(&ext, &c).unwrap();
        let field = c.field();
        let bad = (0..ext.dim())
            .map(|k| {
                let mut v = vec![field.zero(); ext.dim()];
                v[k] = field.one();
                v
            })
            .find(|v| {
                let m = Matrix::from_columns(field, ext.dim(), &[good.clone(), v.clone()]);
                m.rank() == 2
            })
            .unwrap();
        let (e, f, g) = extension_from_class(&ext, &bad).unwrap();
        let wrong = AlmostSplitSequence { left: a, middle: e, right: c, f, g, certificate: Certificate::default() };
        let cert = verify_almost_split(&wrong);
        assert!(cert.failures.contains(&"socle".to_string()), "{:?}", cert);
    }
}
