//! Graded Hom spaces, endomorphism algebras, stable Homs and `Ext¹`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::gmodule::{morphism_from_generators, Edge, GradedModule, Morphism};
use crate::poly::{coprime_split, Poly};
use crate::presentations::{injective_envelope, projective_cover, Cover};
use crate::quiver::Quiver;

/// Largest number of degrees a Hom computation will scan.
const MAX_SPAN: i64 = 4096;

/// A basis of `GHom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: GradedModule,
    pub target: GradedModule,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flat(&self) -> Matrix {
        let n = self.basis.first().map_or(0, |b| b.to_vec().len());
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(Morphism::to_vec).collect();
        Matrix::from_columns(self.source.field(), n, &cols)
    }

    /// Coordinates of `f` in the basis, `None` if `f` is not in the span.
    pub fn coordinates(&self, f: &Morphism) -> Result<Option<Vec<Scalar>>> {
        let f = f.rehome(&self.source, &self.target)?;
        if self.basis.is_empty() {
            return Ok(f.is_zero().then(Vec::new));
        }
        let v = f.to_vec();
        let b = Matrix::from_columns(self.source.field(), v.len(), &[v]);
        Ok(self.flat().solve(&b)?.map(|x| x.column(0)))
    }

    pub fn element(&self, coords: &[Scalar]) -> Result<Morphism> {
        let mut out = Morphism::zero(&self.source, &self.target)?;
        for (c, f) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&f.scale(c))?;
            }
        }
        Ok(out)
    }
}

/// Degrees where `M` may be nonzero: `None` for an unbounded side.
fn support_bounds(m: &GradedModule) -> (Option<i64>, Option<i64>) {
    let (lo, hi) = m.window();
    let (b, a) = m.edges();
    if m.is_exact() {
        if let Some((s, e)) = m.support() {
            return (Some(s), Some(e));
        }
        return (Some(0), Some(-1));
    }
    (
        (b == Edge::Exact).then_some(lo),
        (a == Edge::Exact).then_some(hi),
    )
}

fn meet(a: Option<i64>, b: Option<i64>, pick: fn(i64, i64) -> i64) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(pick(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// All degree-preserving morphisms `M → N`, by solving the naturality
/// equations piecewise.
pub fn ghom(m: &GradedModule, n: &GradedModule) -> Result<HomSpace> {
    if m.algebra() != n.algebra() {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    let (ml, mh) = support_bounds(m);
    let (nl, nh) = support_bounds(n);
    let lo = meet(ml, nl, i64::max);
    let hi = meet(mh, nh, i64::min);
    let (lo, hi) = match (lo, hi) {
        (Some(l), Some(h)) => (l, h),
        (None, _) => return Err(Error::window("Hom needs one of the modules bounded below", m.window().0.min(n.window().0))),
        (_, None) => return Err(Error::window("Hom needs one of the modules bounded above", m.window().1.max(n.window().1))),
    };
    if hi < lo {
        return Ok(HomSpace { source: m.clone(), target: n.clone(), basis: Vec::new() });
    }
    if hi - lo > MAX_SPAN {
        return Err(Error::window("Hom support too wide", hi));
    }
    let alg = m.algebra();
    let field = alg.field();
    let nv = alg.vertex_count();
    // Unknown blocks f_{i,x}: N_i(x) × M_i(x), row-major.
    let mut offs: BTreeMap<(i64, usize), (usize, usize, usize)> = BTreeMap::new();
    let mut nvars = 0;
    for i in lo..=hi {
        for x in 0..nv {
            let (r, c) = (n.dim(i, x)?, m.dim(i, x)?);
            if r * c > 0 {
                offs.insert((i, x), (nvars, r, c));
                nvars += r * c;
            }
        }
    }
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for i in lo - 1..=hi {
        for (a, ar) in alg.quiver().arrows().iter().enumerate() {
            let f0 = offs.get(&(i, ar.from)).copied();
            let f1 = offs.get(&(i + 1, ar.to)).copied();
            if f0.is_none() && f1.is_none() {
                continue;
            }
            let rows = n.dim(i + 1, ar.to)?;
            let cols = m.dim(i, ar.from)?;
            if rows * cols == 0 {
                continue;
            }
            let na = match f0 {
                Some(_) => Some(n.action(a, i)?),
                None => None,
            };
            let ma = match f1 {
                Some(_) => Some(m.action(a, i)?),
                None => None,
            };
            for r in 0..rows {
                for c in 0..cols {
                    let mut eq = vec![field.zero(); nvars];
                    if let (Some((o, _, fc)), Some(na)) = (f0, &na) {
                        for k in 0..na.cols() {
                            let v = na.get(r, k);
                            if !v.is_zero() {
                                eq[o + k * fc + c] = &eq[o + k * fc + c] + v;
                            }
                        }
                    }
                    if let (Some((o, _, fc)), Some(ma)) = (f1, &ma) {
                        for k in 0..ma.rows() {
                            let v = ma.get(k, c);
                            if !v.is_zero() {
                                eq[o + r * fc + k] = &eq[o + r * fc + k] - v;
                            }
                        }
                    }
                    if eq.iter().any(|v| !v.is_zero()) {
                        eqs.push(eq);
                    }
                }
            }
        }
    }
    let sol = if eqs.is_empty() {
        Matrix::identity(field, nvars)
    } else {
        Matrix::from_rows(field, nvars, &eqs).kernel()
    };
    let mut basis = Vec::new();
    for k in 0..sol.cols() {
        let v = sol.column(k);
        let blocks: Vec<Vec<Matrix>> = (lo..=hi)
            .map(|i| {
                (0..nv)
                    .map(|x| match offs.get(&(i, x)) {
                        Some(&(o, r, c)) => Matrix::new(field, r, c, v[o..o + r * c].to_vec()).expect("block"),
                        None => Matrix::zeros(field, n.dim(i, x).unwrap_or(0), m.dim(i, x).unwrap_or(0)),
                    })
                    .collect()
            })
            .collect();
        basis.push(Morphism::from_blocks_at(lo, m.clone(), n.clone(), blocks)?);
    }
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis })
}

/// `I_a⟨s⟩` realized on a window covering `M`.
pub fn injective_for(m: &GradedModule, a: usize, s: i64) -> Result<GradedModule> {
    let (lo, hi) = m.window();
    GradedModule::injective(m.algebra(), a, s, Some((lo.min(-s), hi.max(-s))))
}

/// `GHom(M, I_a⟨s⟩)`; its dimension is `dim M_{-s}(a)`.
pub fn ghom_to_injective(m: &GradedModule, a: usize, s: i64) -> Result<HomSpace> {
    ghom(m, &injective_for(m, a, s)?)
}

/// The morphism `M → I_a⟨s⟩` attached to a functional `φ` on `M_{-s}(a)`:
/// `f(m)(w) = φ(w·m)`.
pub fn morphism_to_injective(m: &GradedModule, a: usize, s: i64, phi: &[Scalar]) -> Result<Morphism> {
    let inj = injective_for(m, a, s)?;
    let op = m.algebra().opposite();
    let field = m.field();
    let (lo, hi) = m.window();
    let nv = m.algebra().vertex_count();
    if phi.len() != m.dim(-s, a)? {
        return Err(Error::DimensionMismatch("functional length".into()));
    }
    let row = Matrix::from_rows(field, phi.len(), &[phi.to_vec()]);
    let mut blocks = Vec::new();
    for i in lo..=hi {
        let mut r = Vec::new();
        for x in 0..nv {
            let d = -i - s;
            let cols = m.dim(i, x)?;
            if d < 0 {
                r.push(Matrix::zeros(field, inj.dim(i, x).unwrap_or(0), cols));
                continue;
            }
            let ws = op.piece_basis(d as usize, a, x)?;
            let rows: Vec<Vec<Scalar>> = ws
                .iter()
                .map(|w| Ok(row.mul(&m.path_action(&Quiver::reverse_path(w), i)?).row(0)))
                .collect::<Result<_>>()?;
            r.push(Matrix::from_rows(field, cols, &rows));
        }
        blocks.push(r);
    }
    Morphism::from_blocks_at(lo, m.clone(), inj, blocks)
}

/// `GEnd(M)` with structure constants and Jacobson radical.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub hom: HomSpace,
    /// `table[a][b]`: coordinates of `φ_a ∘ φ_b`.
    pub table: Vec<Vec<Vec<Scalar>>>,
    pub identity: Vec<Scalar>,
    /// Radical basis, as columns of coordinates.
    pub radical: Matrix,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    fn field(&self) -> Field {
        self.hom.source.field()
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let f = self.field();
        let mut m = Matrix::zeros(f, n, n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for b in 0..n {
                for k in 0..n {
                    let v = &(xa * &self.table[a][b][k]) + m.get(k, b);
                    m.set(k, b, v);
                }
            }
        }
        m
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.left_mult(x).mul_vec(y)
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    pub fn radical_elements(&self) -> Result<Vec<Morphism>> {
        (0..self.radical.cols()).map(|k| self.hom.element(&self.radical.column(k))).collect()
    }

    /// Evaluate a polynomial at `x`.
    fn eval(&self, p: &Poly, x: &[Scalar]) -> Vec<Scalar> {
        let l = self.left_mult(x);
        let mut acc = vec![self.field().zero(); self.dim()];
        for c in p.c.iter().rev() {
            acc = l.mul_vec(&acc);
            acc = acc.iter().zip(&self.identity).map(|(a, e)| a + &(c * e)).collect();
        }
        acc
    }

    /// Minimal polynomial of `x` from the first linear dependence among its
    /// powers.
    pub fn minimal_polynomial(&self, x: &[Scalar]) -> Result<Poly> {
        let f = self.field();
        let l = self.left_mult(x);
        let mut powers = vec![self.identity.clone()];
        loop {
            let next = l.mul_vec(powers.last().unwrap());
            let a = Matrix::from_columns(f, self.dim(), &powers);
            let b = Matrix::from_columns(f, self.dim(), &[next.clone()]);
            if let Some(c) = a.solve(&b)? {
                let mut coeffs: Vec<Scalar> = c.column(0).iter().map(|v| -v).collect();
                coeffs.push(f.one());
                return Ok(Poly::new(f, coeffs));
            }
            powers.push(next);
            if powers.len() > self.dim() + 1 {
                return Err(Error::Internal("powers never became dependent".into()));
            }
        }
    }
}

pub fn end_algebra(m: &GradedModule) -> Result<EndAlgebra> {
    if !m.is_exact() {
        return Err(Error::Precondition("endomorphism algebra needs an exact window".into()));
    }
    let hom = ghom(m, m)?;
    let n = hom.dim();
    let field = m.field();
    let p = field.characteristic();
    if p > 0 && p as usize <= n {
        return Err(Error::Unsupported(format!(
            "radical by trace form needs characteristic 0 or above {n} (got {p})"
        )));
    }
    let mut table = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let c = hom.basis[a].compose_after(&hom.basis[b])?;
            row.push(hom.coordinates(&c)?.ok_or_else(|| Error::Internal("composition left the Hom space".into()))?);
        }
        table.push(row);
    }
    let identity = hom
        .coordinates(&Morphism::identity(m))?
        .ok_or_else(|| Error::Internal("identity not in Hom space".into()))?;
    let mut e = EndAlgebra { hom, table, identity, radical: Matrix::zeros(field, n, 0) };
    let ls: Vec<Matrix> = (0..n).map(|a| e.left_mult(&unit(field, n, a))).collect();
    let trace = |m: &Matrix| (0..m.rows()).fold(field.zero(), |acc, k| &acc + m.get(k, k));
    let form = Matrix::from_fn(field, n, n, |a, b| trace(&ls[a].mul(&ls[b])));
    e.radical = form.kernel();
    check_nilpotent(&e)?;
    Ok(e)
}

fn unit(field: Field, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[k] = field.one();
    v
}

fn check_nilpotent(e: &EndAlgebra) -> Result<()> {
    let field = e.field();
    let n = e.dim();
    let rad: Vec<Vec<Scalar>> = (0..e.radical.cols()).map(|k| e.radical.column(k)).collect();
    let mut cur = rad.clone();
    for _ in 0..=n {
        if cur.is_empty() {
            return Ok(());
        }
        let mut prods = Vec::new();
        for x in &cur {
            for y in &rad {
                prods.push(e.mul(x, y));
            }
        }
        let m = Matrix::from_columns(field, n, &prods);
        let img = m.image();
        cur = (0..img.cols()).map(|k| img.column(k)).collect();
    }
    Err(Error::Internal("trace-form radical is not nilpotent".into()))
}

/// Three-valued answer of the indecomposability test.
#[derive(Clone, Debug)]
pub enum Indecomposability {
    /// `End(M)/rad` is the ground field.
    Yes,
    /// A nontrivial idempotent and the summands it cuts out.
    No { idempotent: Morphism, summands: (GradedModule, GradedModule) },
    /// No split found after `trials` candidates.
    Presumed { trials: usize },
}

impl Indecomposability {
    pub fn label(&self) -> &'static str {
        match self {
            Indecomposability::Yes => "yes",
            Indecomposability::No { .. } => "no",
            Indecomposability::Presumed { .. } => "presumed",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Indecomposability::Yes)
    }
}

/// Default number of pseudo-random endomorphisms tried.
pub const DEFAULT_BUDGET: usize = 64;

pub fn is_strongly_indecomposable(m: &GradedModule) -> Result<Indecomposability> {
    is_strongly_indecomposable_with(m, DEFAULT_BUDGET, 0)
}

pub fn is_strongly_indecomposable_with(m: &GradedModule, budget: usize, seed: u64) -> Result<Indecomposability> {
    if !m.is_exact() {
        return Err(Error::Precondition("indecomposability needs an exact window".into()));
    }
    if m.is_zero() {
        return Err(Error::Precondition("the zero module".into()));
    }
    let hom = ghom(m, m)?;
    if hom.dim() == 1 {
        return Ok(Indecomposability::Yes);
    }
    let e = end_algebra(m)?;
    let n = e.dim();
    if n - e.radical_dim() == 1 {
        return Ok(Indecomposability::Yes);
    }
    let field = m.field();
    let mut candidates: Vec<Vec<Scalar>> = (0..n).map(|k| unit(field, n, k)).collect();
    for a in 0..n {
        for b in a + 1..n {
            candidates.push((0..n).map(|k| if k == a || k == b { field.one() } else { field.zero() }).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range: i64 = match field {
        Field::Rational => 7,
        Field::Prime(p) => p.min(1 << 20) as i64,
    };
    for _ in 0..budget {
        candidates.push((0..n).map(|_| field.int(rng.gen_range(0..range) - if range == 7 { 3 } else { 0 })).collect());
    }
    let trials = candidates.len();
    for x in candidates {
        if let Some(split) = try_split(&e, &x)? {
            return Ok(split);
        }
    }
    Ok(Indecomposability::Presumed { trials })
}

fn try_split(e: &EndAlgebra, x: &[Scalar]) -> Result<Option<Indecomposability>> {
    let mp = e.minimal_polynomial(x)?;
    let Some((f, g)) = coprime_split(&mp) else { return Ok(None) };
    let (_, _, t) = f.ext_gcd(&g);
    // t·g ≡ 1 mod f and ≡ 0 mod g: an idempotent.
    let idem = e.eval(&t.mul(&g), x);
    let phi = e.hom.element(&idem)?;
    if !phi.compose_after(&phi)?.sub(&phi)?.is_zero() {
        return Err(Error::Internal("split element is not idempotent".into()));
    }
    let one = Morphism::identity(&e.hom.source);
    let other = one.sub(&phi)?;
    let (a, _) = phi.image()?;
    let (b, _) = other.image()?;
    if a.is_zero() || b.is_zero() {
        return Ok(None);
    }
    Ok(Some(Indecomposability::No { idempotent: phi, summands: (a.trimmed(), b.trimmed()) }))
}

/// Dimensions of the projectively and injectively stable Hom spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct StableHom {
    pub underline: usize,
    pub overline: usize,
}

fn span_rank(vs: &[Vec<Scalar>], field: Field) -> usize {
    match vs.first() {
        None => 0,
        Some(v) => Matrix::from_columns(field, v.len(), vs).rank(),
    }
}

fn covering_window(m: &GradedModule, n: &GradedModule) -> (i64, i64) {
    let (a, b) = m.window();
    let (c, d) = n.window();
    (a.min(c) - 1, b.max(d) + 1)
}

pub fn stable_hom_dims(m: &GradedModule, n: &GradedModule) -> Result<StableHom> {
    let h = ghom(m, n)?;
    let w = covering_window(m, n);
    let field = m.field();
    let cover = projective_cover(n, Some(w))?;
    let lifts = ghom(m, &cover.module)?;
    let vs: Vec<Vec<Scalar>> = lifts
        .basis
        .iter()
        .map(|f| Ok(cover.map.compose_after(f)?.rehome(m, n)?.to_vec()))
        .collect::<Result<_>>()?;
    let underline = h.dim() - span_rank(&vs, field);
    let env = injective_envelope(m, Some(w))?;
    let ext = ghom(&env.module, n)?;
    let vs: Vec<Vec<Scalar>> = ext
        .basis
        .iter()
        .map(|f| Ok(f.compose_after(&env.map)?.rehome(m, n)?.to_vec()))
        .collect::<Result<_>>()?;
    let overline = h.dim() - span_rank(&vs, field);
    Ok(StableHom { underline, overline })
}

/// Solve `ι ∘ x = g` piecewise for a monomorphism `ι: A → B`.
pub fn factor_through_mono(g: &Morphism, iota: &Morphism) -> Result<Option<Morphism>> {
    let a = &iota.source;
    let x = &g.source;
    let (lo, hi) = x.window();
    let nv = x.algebra().vertex_count();
    let mut blocks = Vec::new();
    for i in lo..=hi {
        let mut row = Vec::new();
        for v in 0..nv {
            let gb = g.block(i, v)?;
            let ib = if a.dim(i, v).unwrap_or(0) == 0 && gb.is_zero() {
                row.push(Matrix::zeros(x.field(), a.dim(i, v).unwrap_or(0), gb.cols()));
                continue;
            } else {
                iota.block(i, v)?
            };
            match ib.solve(&gb)? {
                Some(s) => row.push(s),
                None => return Ok(None),
            }
        }
        blocks.push(row);
    }
    Ok(Some(Morphism::from_blocks_at(lo, x.clone(), a.clone(), blocks)?))
}

/// Lift `ψ: P → C` along an epimorphism `g: E → C`, `P` a sum of
/// projectives with the listed generators.
pub fn lift_along_epi(p: &GradedModule, summands: &[(usize, i64)], psi_images: &[Vec<Scalar>], g: &Morphism) -> Result<Morphism> {
    let mut pre = Vec::new();
    for (k, &(a, s)) in summands.iter().enumerate() {
        let gb = g.block(-s, a)?;
        let b = Matrix::from_columns(g.source.field(), gb.rows(), &[psi_images[k].clone()]);
        let x = gb
            .solve(&b)?
            .ok_or_else(|| Error::Internal("element not in the image of an epimorphism".into()))?;
        pre.push(x.column(0));
    }
    morphism_from_generators(p, summands, &g.source, &pre)
}

/// `Ext¹(M, N)` as the cokernel of `GHom(P⁰, N) → GHom(K, N)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub m: GradedModule,
    pub n: GradedModule,
    pub cover: Cover,
    pub hom_kn: HomSpace,
    /// Rows map `Hom(K, N)` coordinates to class coordinates.
    proj: Matrix,
    /// Columns: Hom(K, N) coordinates of class representatives.
    reps: Matrix,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn syzygy(&self) -> &GradedModule {
        &self.cover.kernel
    }

    /// Class of `ψ: K → N`.
    pub fn class_of(&self, psi: &Morphism) -> Result<Vec<Scalar>> {
        let c = self
            .hom_kn
            .coordinates(psi)?
            .ok_or_else(|| Error::Precondition("map is not a homomorphism from the syzygy".into()))?;
        Ok(self.proj.mul_vec(&c))
    }

    pub fn representative(&self, class: &[Scalar]) -> Result<Morphism> {
        let c = self.reps.mul_vec(class);
        self.hom_kn.element(&c)
    }

    /// Restriction `K → K` of a lift of `f ∈ End(M)` to `P⁰`.
    pub fn lift_endomorphism(&self, f: &Morphism) -> Result<Morphism> {
        let c = &self.cover;
        let images: Vec<Vec<Scalar>> = c
            .summands
            .iter()
            .zip(&c.generators)
            .map(|(&(a, s), g)| Ok(f.block(-s, a)?.mul_vec(g)))
            .collect::<Result<_>>()?;
        let f0 = lift_along_epi(&c.module, &c.summands, &images, &c.map)?;
        let moved = f0.compose_after(&c.inclusion)?;
        factor_through_mono(&moved, &c.inclusion)?
            .ok_or_else(|| Error::Internal("lifted endomorphism does not preserve the syzygy".into()))
    }

    /// Matrix of `ξ ↦ ξ·f` on class coordinates.
    pub fn right_action(&self, f: &Morphism) -> Result<Matrix> {
        let f1 = self.lift_endomorphism(f)?;
        let field = self.m.field();
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| {
                let rep = self.representative(&unit(field, self.dim(), j))?;
                self.class_of(&rep.compose_after(&f1)?)
            })
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(field, self.dim(), &cols))
    }
}

pub fn ext1(m: &GradedModule, n: &GradedModule) -> Result<ExtSpace> {
    if m.algebra() != n.algebra() {
        return Err(Error::Precondition("modules over different algebras".into()));
    }
    let field = m.field();
    let w = covering_window(m, n);
    let cover = projective_cover(m, Some(w))?;
    let hom_kn = ghom(&cover.kernel, n)?;
    let hom_pn = ghom(&cover.module, n)?;
    let d = hom_kn.dim();
    let mut image = Vec::new();
    for h in &hom_pn.basis {
        let r = h.compose_after(&cover.inclusion)?;
        image.push(hom_kn.coordinates(&r)?.ok_or_else(|| Error::Internal("restriction left Hom(K, N)".into()))?);
    }
    let u = if image.is_empty() { Matrix::zeros(field, d, 0) } else { Matrix::from_columns(field, d, &image).image() };
    let comp = u.complement_indices();
    let reps = Matrix::from_fn(field, d, comp.len(), |r, c| if comp[c] == r { field.one() } else { field.zero() });
    let t = Matrix::hstack(field, d, &[&u, &reps]);
    let tinv = t.inverse().ok_or_else(|| Error::Internal("Ext complement is not a basis".into()))?;
    let proj = tinv.submatrix(u.cols(), comp.len(), 0, d);
    Ok(ExtSpace { m: m.clone(), n: n.clone(), cover, hom_kn, proj, reps })
}

/// Look for an isomorphism `A → B` among basis elements, pairwise sums,
/// pseudo-random combinations, and (over small prime fields) all of Hom.
pub fn find_isomorphism(a: &GradedModule, b: &GradedModule, budget: usize, seed: u64) -> Result<Option<Morphism>> {
    if !a.same_dims(b) {
        return Ok(None);
    }
    let h = ghom(a, b)?;
    let n = h.dim();
    let field = a.field();
    if a.is_zero() {
        return Ok(Some(Morphism::zero(a, b)?));
    }
    let test = |c: &[Scalar]| -> Result<Option<Morphism>> {
        let f = h.element(c)?;
        Ok(f.is_iso().then_some(f))
    };
    if let Field::Prime(p) = field {
        if (p as f64).powi(n as i32) <= 4096.0 {
            let total = (p as usize).pow(n as u32);
            for mut k in 0..total {
                let c: Vec<Scalar> = (0..n)
                    .map(|_| {
                        let d = k % p as usize;
                        k /= p as usize;
                        field.int(d as i64)
                    })
                    .collect();
                if let Some(f) = test(&c)? {
                    return Ok(Some(f));
                }
            }
            return Ok(None);
        }
    }
    for k in 0..n {
        if let Some(f) = test(&unit(field, n, k))? {
            return Ok(Some(f));
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let c: Vec<Scalar> = (0..n).map(|k| if k == x || k == y { field.one() } else { field.zero() }).collect();
            if let Some(f) = test(&c)? {
                return Ok(Some(f));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let c: Vec<Scalar> = (0..n).map(|_| field.int(rng.gen_range(-3..=3))).collect();
        if let Some(f) = test(&c)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;

    fn fix_a() -> GradedAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2")]).unwrap();
        GradedAlgebra::from_named(Field::Rational, q, &[vec![(1, vec!["b", "a"])]]).unwrap()
    }

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
    fn hom_dims_fix_b() {
        let b = fix_b();
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let s1 = GradedModule::simple(&b, 0, 0);
        let s2 = GradedModule::simple(&b, 1, 0);
        assert_eq!(ghom(&p1, &p1).unwrap().dim(), 1);
        assert_eq!(ghom(&s1, &s2).unwrap().dim(), 0);
        assert_eq!(ghom(&p1, &s1).unwrap().dim(), 1);
        let h = ghom(&p1, &p1).unwrap();
        assert!(h.basis[0].is_natural());
        // P_2<-1> → P_1 by the arrow.
        let p2 = GradedModule::projective(&b, 1, -1, None).unwrap();
        assert_eq!(ghom(&p2, &p1).unwrap().dim(), 1);
        assert_eq!(ghom(&p1, &p2).unwrap().dim(), 0);
    }

    #[test]
    fn hom_to_injective_normal_form() {
        let a = fix_a();
        let p1 = GradedModule::projective(&a, 0, 0, Some((0, 6))).unwrap();
        let h = ghom_to_injective(&p1, 1, -1).unwrap();
        assert_eq!(h.dim(), 1);
        let f = morphism_to_injective(&p1, 1, -1, &[Field::Rational.one()]).unwrap();
        assert!(f.is_natural());
        assert!(h.coordinates(&f).unwrap().is_some());
        let b = fix_b();
        let s = GradedModule::simple(&b, 0, 0);
        assert_eq!(ghom_to_injective(&s, 0, 0).unwrap().dim(), 1);
        assert_eq!(ghom_to_injective(&s, 1, 0).unwrap().dim(), 0);
    }

    #[test]
    fn end_algebras() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let e = end_algebra(&s1).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (1, 0));
        let ss = GradedModule::direct_sum(&b, &[&s1, &s1]).unwrap().module;
        let e = end_algebra(&ss).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (4, 0));
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let e = end_algebra(&p1).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (1, 0));
        let f2 = GradedAlgebra::new(Field::prime(2).unwrap(), b.quiver().clone(), vec![]).unwrap();
        let s = GradedModule::simple(&f2, 0, 0);
        let ss = GradedModule::direct_sum(&f2, &[&s, &s]).unwrap().module;
        assert!(matches!(end_algebra(&ss), Err(Error::Unsupported(_))));
    }

    #[test]
    fn radical_of_a_local_endomorphism_ring() {
        // k[x]/x^2 as a module over the loop algebra with a^2 = 0.
        let q = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        let alg = GradedAlgebra::from_named(Field::Rational, q, &[vec![(1, vec!["a", "a"])]]).unwrap();
        let p = GradedModule::projective(&alg, 0, 0, None).unwrap();
        let e = end_algebra(&p).unwrap();
        assert_eq!(e.dim(), 1);
        let sum = GradedModule::direct_sum(&alg, &[&p, &p.shift(-1)]).unwrap().module;
        let e = end_algebra(&sum).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (3, 1));
        assert_eq!(is_strongly_indecomposable(&sum).unwrap().label(), "no");
    }

    #[test]
    fn indecomposability_verdicts() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let s2 = GradedModule::simple(&b, 1, 0);
        assert!(is_strongly_indecomposable(&s1).unwrap().is_yes());
        let sum = GradedModule::direct_sum(&b, &[&s1, &s2]).unwrap().module;
        match is_strongly_indecomposable(&sum).unwrap() {
            Indecomposability::No { idempotent, summands } => {
                assert!(idempotent.is_natural());
                assert_eq!(summands.0.total_dim() + summands.1.total_dim(), 2);
            }
            v => panic!("expected a split, got {}", v.label()),
        }
        let c = fix_c();
        let p1 = GradedModule::projective(&c, 0, 0, None).unwrap();
        assert!(is_strongly_indecomposable(&p1).unwrap().is_yes());
    }

    #[test]
    fn stable_homs() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        assert_eq!(stable_hom_dims(&s1, &s1).unwrap().underline, 1);
        assert_eq!(stable_hom_dims(&p1, &s1).unwrap().underline, 0);
        let i2 = GradedModule::injective(&b, 1, 0, None).unwrap();
        assert_eq!(stable_hom_dims(&i2, &s1.shift(1)).unwrap().overline, 0);
    }

    #[test]
    fn ext_fix_b() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let s2 = GradedModule::simple(&b, 1, 0);
        assert_eq!(ext1(&s1, &s2.shift(-1)).unwrap().dim(), 1);
        assert_eq!(ext1(&s1, &s2).unwrap().dim(), 0);
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        assert_eq!(ext1(&p1, &s2.shift(-1)).unwrap().dim(), 0);
        let e = ext1(&s1, &s2.shift(-1)).unwrap();
        let id = Morphism::identity(&s1);
        let act = e.right_action(&id).unwrap();
        assert_eq!(act, Matrix::identity(Field::Rational, 1));
    }

    #[test]
    fn iso_search() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        let d = s1.dual().unwrap().dual().unwrap();
        assert!(find_isomorphism(&s1, &d, 8, 0).unwrap().is_some());
        let s2 = GradedModule::simple(&b, 1, 0);
        assert!(find_isomorphism(&s1, &s2, 8, 0).unwrap().is_none());
    }
}
