//! Graded modules as windowed piecewise data, and their morphisms.
//!
//! A module stores, for every degree `i` in a window `[lo, hi]` and vertex
//! `x`, the dimension of `M_i(x)`, and for every arrow `α: x → y` and degree
//! `lo ≤ i < hi` the matrix `M_i(α): M_i(x) → M_{i+1}(y)`. Each side of the
//! window is either exact (everything beyond it is zero) or truncated
//! (unknown). Accessors return an error rather than guess about unknown
//! data.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::quiver::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Exact,
    Truncated,
}

#[derive(Clone)]
pub struct GradedModule {
    alg: GradedAlgebra,
    lo: i64,
    hi: i64,
    below: Edge,
    above: Edge,
    dims: Vec<Vec<usize>>,
    maps: Vec<Vec<Matrix>>,
}

impl PartialEq for GradedModule {
    fn eq(&self, o: &GradedModule) -> bool {
        self.alg == o.alg
            && self.lo == o.lo
            && self.hi == o.hi
            && self.below == o.below
            && self.above == o.above
            && self.dims == o.dims
            && self.maps == o.maps
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedModule[{}..{} {:?}/{:?}] {}", self.lo, self.hi, self.below, self.above, self.dims_string())
    }
}

/// Result of [`GradedModule::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub degree: i64,
}

/// Output of [`GradedModule::classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub simple: bool,
    pub semisimple: bool,
    /// `(vertex label, shift, multiplicity)` of `S_a⟨s⟩` summands when
    /// semisimple.
    pub which: Vec<(String, i64, usize)>,
}

impl GradedModule {
    /// Assemble a module from raw data. `dims[i - lo][x]`, `maps[i - lo][a]`
    /// for `lo ≤ i < hi`.
    pub fn new(
        alg: &GradedAlgebra,
        lo: i64,
        hi: i64,
        below: Edge,
        above: Edge,
        dims: Vec<Vec<usize>>,
        maps: Vec<Vec<Matrix>>,
    ) -> Result<GradedModule> {
        let n = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
        let nv = alg.vertex_count();
        if dims.len() != n || dims.iter().any(|d| d.len() != nv) {
            return Err(Error::InvalidModule("dimension table does not match window".into()));
        }
        if maps.len() != n.saturating_sub(1) {
            return Err(Error::InvalidModule("map table does not match window".into()));
        }
        for (k, row) in maps.iter().enumerate() {
            if row.len() != alg.arrow_count() {
                return Err(Error::InvalidModule("one matrix per arrow expected".into()));
            }
            for (a, m) in row.iter().enumerate() {
                let ar = alg.quiver().arrow(a);
                if m.field() != alg.field() {
                    return Err(Error::FieldMismatch("module map".into()));
                }
                if m.rows() != dims[k + 1][ar.to] || m.cols() != dims[k][ar.from] {
                    return Err(Error::InvalidModule(format!(
                        "map {}@{} has shape {}x{}, expected {}x{}",
                        ar.name,
                        lo + k as i64,
                        m.rows(),
                        m.cols(),
                        dims[k + 1][ar.to],
                        dims[k][ar.from]
                    )));
                }
            }
        }
        Ok(GradedModule { alg: alg.clone(), lo, hi, below, above, dims, maps })
    }

    pub fn zero(alg: &GradedAlgebra) -> GradedModule {
        GradedModule {
            alg: alg.clone(),
            lo: 0,
            hi: -1,
            below: Edge::Exact,
            above: Edge::Exact,
            dims: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }
    pub fn field(&self) -> Field {
        self.alg.field()
    }
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
    pub fn edges(&self) -> (Edge, Edge) {
        (self.below, self.above)
    }
    pub fn is_exact(&self) -> bool {
        self.below == Edge::Exact && self.above == Edge::Exact
    }
    fn nv(&self) -> usize {
        self.alg.vertex_count()
    }
    fn in_window(&self, i: i64) -> bool {
        i >= self.lo && i <= self.hi
    }

    /// `dim M_i(x)`, or a window error when `i` lies on a truncated side.
    pub fn dim(&self, i: i64, x: usize) -> Result<usize> {
        if self.in_window(i) {
            Ok(self.dims[(i - self.lo) as usize][x])
        } else if i < self.lo && self.below == Edge::Exact || i > self.hi && self.above == Edge::Exact {
            Ok(0)
        } else {
            Err(Error::window("module piece outside a truncated window", i))
        }
    }

    /// Stored dimension inside the window, zero outside it.
    pub fn d_window(&self, i: i64, x: usize) -> usize {
        if self.in_window(i) {
            self.dims[(i - self.lo) as usize][x]
        } else {
            0
        }
    }

    /// Dimension lookup for modules already known to be exact.
    pub fn d(&self, i: i64, x: usize) -> usize {
        self.dim(i, x).expect("piece of an exact module")
    }

    /// `M_i(α): M_i(s(α)) → M_{i+1}(t(α))`.
    pub fn action(&self, a: usize, i: i64) -> Result<Matrix> {
        let ar = self.alg.quiver().arrow(a);
        if i >= self.lo && i < self.hi {
            return Ok(self.maps[(i - self.lo) as usize][a].clone());
        }
        let rows = self.dim(i + 1, ar.to)?;
        let cols = self.dim(i, ar.from)?;
        if rows == 0 || cols == 0 {
            Ok(Matrix::zeros(self.field(), rows, cols))
        } else {
            Err(Error::window("arrow action across the window edge", i))
        }
    }

    /// Action of a path (written order) starting in degree `i`.
    pub fn path_action(&self, p: &Path, i: i64) -> Result<Matrix> {
        let mut m = Matrix::identity(self.field(), self.dim(i, p.start)?);
        let mut deg = i;
        for &a in p.arrows.iter().rev() {
            m = self.action(a, deg)?.mul(&m);
            deg += 1;
        }
        Ok(m)
    }

    /// Apply a path to a single vector.
    pub fn apply_path(&self, p: &Path, i: i64, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut v = v.to_vec();
        let mut deg = i;
        for &a in p.arrows.iter().rev() {
            v = self.action(a, deg)?.mul_vec(&v);
            deg += 1;
        }
        Ok(v)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.is_exact() && self.total_dim() == 0
    }

    /// Lowest and highest degree with a nonzero piece inside the window.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (0..self.dims.len())
            .filter(|&k| self.dims[k].iter().any(|&d| d > 0))
            .map(|k| self.lo + k as i64)
            .collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Degrees in the window, in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Dimension vector as `(degree, vertex, dim)` for nonzero pieces.
    pub fn dims_list(&self) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        for i in self.degrees() {
            for x in 0..self.nv() {
                let d = self.dims[(i - self.lo) as usize][x];
                if d > 0 {
                    out.push((i, x, d));
                }
            }
        }
        out
    }

    pub fn dims_string(&self) -> String {
        let q = self.alg.quiver();
        let parts: Vec<String> =
            self.dims_list().iter().map(|(i, x, d)| format!("({i},{}):{d}", q.label(*x))).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Restrict an exact module to the window spanned by its support.
    pub fn trimmed(&self) -> GradedModule {
        if !self.is_exact() {
            return self.clone();
        }
        match self.support() {
            None => GradedModule::zero(&self.alg),
            Some((a, b)) => self.restrict(a, b).with_edges(Edge::Exact, Edge::Exact),
        }
    }

    fn with_edges(mut self, below: Edge, above: Edge) -> GradedModule {
        self.below = below;
        self.above = above;
        self
    }

    /// Piece data on `[a, b] ⊆ window`; edges inherited only where the new
    /// window reaches the old edge, otherwise truncated.
    pub fn restrict(&self, a: i64, b: i64) -> GradedModule {
        assert!(a >= self.lo && b <= self.hi && a <= b);
        let s = (a - self.lo) as usize;
        let e = (b - self.lo) as usize;
        GradedModule {
            alg: self.alg.clone(),
            lo: a,
            hi: b,
            below: if a == self.lo { self.below } else { Edge::Truncated },
            above: if b == self.hi { self.above } else { Edge::Truncated },
            dims: self.dims[s..=e].to_vec(),
            maps: self.maps[s..e].to_vec(),
        }
    }

    /// Exact module with a wider window (padding with zero pieces).
    pub fn widened(&self, a: i64, b: i64) -> Result<GradedModule> {
        if !self.is_exact() {
            return Err(Error::Precondition("only exact modules can be padded".into()));
        }
        let (a, b) = if self.hi >= self.lo { (a.min(self.lo), b.max(self.hi)) } else { (a, b) };
        if b < a {
            return Ok(GradedModule::zero(&self.alg));
        }
        let nv = self.nv();
        let dims: Vec<Vec<usize>> =
            (a..=b).map(|i| (0..nv).map(|x| self.d(i, x)).collect()).collect();
        let maps = (a..b)
            .map(|i| (0..self.alg.arrow_count()).map(|ar| self.action(ar, i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GradedModule::new(&self.alg, a, b, Edge::Exact, Edge::Exact, dims, maps)
    }

    /// Restrict to `[a, b]` and declare every piece outside zero. The caller
    /// vouches for the vanishing (e.g. from an exact sequence argument).
    pub fn close_window(&self, a: i64, b: i64) -> Result<GradedModule> {
        if b < a {
            return Ok(GradedModule::zero(&self.alg));
        }
        if a < self.lo || b > self.hi {
            return Err(Error::window("closing window outside the known data", if a < self.lo { a } else { b }));
        }
        Ok(self.restrict(a, b).with_edges(Edge::Exact, Edge::Exact))
    }

    /// Check relation annihilation on every degree where the data is known.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let q = self.alg.quiver();
        for r in self.alg.relations() {
            let d = r.degree() as i64;
            for i in self.lo..=self.hi - d {
                let mut acc: Option<Matrix> = None;
                let mut known = true;
                for (c, p) in &r.terms {
                    match self.path_action(p, i) {
                        Ok(m) => {
                            let m = m.scale(c);
                            acc = Some(match acc {
                                None => m,
                                Some(a) => a.add(&m),
                            });
                        }
                        Err(_) => known = false,
                    }
                }
                if known && acc.map_or(false, |m| !m.is_zero()) {
                    let rel = r
                        .terms
                        .iter()
                        .map(|(c, p)| format!("{c}*{}", q.format_path(p)))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    return Err(Violation { relation: rel, degree: i });
                }
            }
        }
        Ok(())
    }

    /// Grading shift: `M⟨s⟩_i = M_{i+s}`.
    pub fn shift(&self, s: i64) -> GradedModule {
        GradedModule { lo: self.lo - s, hi: self.hi - s, ..self.clone() }
    }

    /// Piecewise dual over the opposite algebra, without the exactness check.
    /// Truncation flags swap sides.
    pub(crate) fn dual_pieces(&self) -> GradedModule {
        let op = self.alg.opposite();
        let (lo, hi) = (-self.hi, -self.lo);
        let dims: Vec<Vec<usize>> = (lo..=hi).map(|j| self.dims[(-j - self.lo) as usize].clone()).collect();
        let maps = (lo..hi)
            .map(|j| {
                (0..self.alg.arrow_count())
                    .map(|a| self.maps[(-j - 1 - self.lo) as usize][a].transpose())
                    .collect()
            })
            .collect();
        GradedModule { alg: op, lo, hi, below: self.above, above: self.below, dims, maps }
    }

    /// `𝔇M` over the opposite algebra: `(𝔇M)_i(x) = D(M_{-i}(x))`, with the
    /// action of `α°` in degree `i` the transpose of `M_{-i-1}(α)`.
    pub fn dual(&self) -> Result<GradedModule> {
        if !self.is_exact() {
            return Err(Error::Precondition("duality needs an exact window".into()));
        }
        Ok(self.dual_pieces())
    }

    /// Direct sum with canonical injections and projections. The sum lives on
    /// the union of the windows; every summand must know its pieces there.
    pub fn direct_sum(alg: &GradedAlgebra, parts: &[&GradedModule]) -> Result<DirectSum> {
        let nv = alg.vertex_count();
        let field = alg.field();
        let nonempty: Vec<_> = parts.iter().filter(|m| m.hi >= m.lo).collect();
        let (lo, hi, below, above) = if nonempty.is_empty() {
            (0, -1, Edge::Exact, Edge::Exact)
        } else {
            let edge = |trunc: bool| if trunc { Edge::Truncated } else { Edge::Exact };
            (
                nonempty.iter().map(|m| m.lo).min().unwrap(),
                nonempty.iter().map(|m| m.hi).max().unwrap(),
                edge(parts.iter().any(|m| m.below == Edge::Truncated)),
                edge(parts.iter().any(|m| m.above == Edge::Truncated)),
            )
        };
        if parts.iter().any(|m| m.alg != *alg) {
            return Err(Error::Precondition("summands over different algebras".into()));
        }
        let dims: Vec<Vec<usize>> = (lo..=hi)
            .map(|i| (0..nv).map(|x| parts.iter().map(|m| m.dim(i, x)).sum::<Result<usize>>()).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for i in lo..hi {
            let mut row = Vec::new();
            for a in 0..alg.arrow_count() {
                let blocks = parts.iter().map(|m| m.action(a, i)).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&Matrix> = blocks.iter().collect();
                row.push(Matrix::block_diag(field, &refs));
            }
            maps.push(row);
        }
        let sum = GradedModule::new(alg, lo, hi, below, above, dims, maps)?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offsets = vec![vec![0usize; nv]; (hi - lo + 1).max(0) as usize];
        for m in parts {
            let mut inj = Vec::new();
            let mut proj = Vec::new();
            for i in m.lo..=m.hi {
                let mut ib = Vec::new();
                let mut pb = Vec::new();
                for x in 0..nv {
                    let k = (i - lo) as usize;
                    let dm = m.d_any(i, x);
                    let ds = sum.dims[k][x];
                    let mut e = Matrix::zeros(field, ds, dm);
                    e.paste(offsets[k][x], 0, &Matrix::identity(field, dm));
                    pb.push(e.transpose());
                    ib.push(e);
                    offsets[k][x] += dm;
                }
                inj.push(ib);
                proj.push(pb);
            }
            injections.push(Morphism::from_blocks_at(m.lo, (*m).clone(), sum.clone(), inj)?);
            // Projections are indexed over the sum's window.
            let mut pblocks = Vec::new();
            for i in lo..=hi {
                if i >= m.lo && i <= m.hi {
                    pblocks.push(proj[(i - m.lo) as usize].clone());
                } else {
                    pblocks.push((0..nv).map(|x| Matrix::zeros(field, 0, sum.dims[(i - lo) as usize][x])).collect());
                }
            }
            projections.push(Morphism::from_blocks_at(lo, sum.clone(), (*m).clone(), pblocks)?);
        }
        Ok(DirectSum { module: sum, injections, projections })
    }

    fn d_any(&self, i: i64, x: usize) -> usize {
        self.dim(i, x).unwrap_or(0)
    }

    /// Whether every arrow acts by zero.
    pub fn is_semisimple_data(&self) -> bool {
        self.maps.iter().flatten().all(Matrix::is_zero)
    }

    /// Graded semisimplicity test and simple-summand table.
    pub fn classify(&self) -> Result<Classification> {
        if !self.is_exact() {
            return Err(Error::Precondition("classification needs an exact window".into()));
        }
        let semisimple = self.is_semisimple_data();
        let which = if semisimple {
            self.dims_list()
                .into_iter()
                .map(|(i, x, d)| (self.alg.quiver().label(x).to_string(), -i, d))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Classification { simple: semisimple && self.total_dim() == 1, semisimple, which })
    }

    /// Submodule spanned per piece by the columns of `bases` (indexed over
    /// this module's window), with its inclusion.
    pub fn submodule(&self, bases: Vec<Vec<Matrix>>) -> Result<(GradedModule, Morphism)> {
        let dims: Vec<Vec<usize>> = bases.iter().map(|row| row.iter().map(Matrix::cols).collect()).collect();
        let mut maps = Vec::new();
        for i in self.lo..self.hi {
            let k = (i - self.lo) as usize;
            let mut row = Vec::new();
            for a in 0..self.alg.arrow_count() {
                let ar = self.alg.quiver().arrow(a);
                let img = self.maps[k][a].mul(&bases[k][ar.from]);
                let m = bases[k + 1][ar.to]
                    .solve(&img)?
                    .ok_or_else(|| Error::Internal("subspace data not closed under the action".into()))?;
                row.push(m);
            }
            maps.push(row);
        }
        let sub = GradedModule::new(&self.alg, self.lo, self.hi, self.below, self.above, dims, maps)?;
        let incl = Morphism::from_blocks_at(self.lo, sub.clone(), self.clone(), bases)?;
        Ok((sub, incl))
    }

    /// Quotient by a submodule given by piece bases (independent columns).
    pub fn quotient(&self, bases: &[Vec<Matrix>]) -> Result<Quotient> {
        let nv = self.nv();
        let field = self.field();
        let mut projs = Vec::new();
        let mut sections = Vec::new();
        for (k, row) in bases.iter().enumerate() {
            let i = self.lo + k as i64;
            let mut pr = Vec::new();
            let mut se = Vec::new();
            for x in 0..nv {
                let n = self.dims[k][x];
                let u = &row[x];
                let comp = u.complement_indices();
                let s = Matrix::from_fn(field, n, comp.len(), |r, c| {
                    if comp[c] == r {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                let t = Matrix::hstack(field, n, &[u, &s]);
                let tinv = t.inverse().ok_or_else(|| {
                    Error::Internal(format!("dependent submodule basis at degree {i}"))
                })?;
                pr.push(tinv.submatrix(u.cols(), comp.len(), 0, n));
                se.push(s);
            }
            projs.push(pr);
            sections.push(se);
        }
        let dims: Vec<Vec<usize>> = sections.iter().map(|r| r.iter().map(Matrix::cols).collect()).collect();
        let mut maps = Vec::new();
        for i in self.lo..self.hi {
            let k = (i - self.lo) as usize;
            let mut row = Vec::new();
            for a in 0..self.alg.arrow_count() {
                let ar = self.alg.quiver().arrow(a);
                row.push(projs[k + 1][ar.to].mul(&self.maps[k][a]).mul(&sections[k][ar.from]));
            }
            maps.push(row);
        }
        let q = GradedModule::new(&self.alg, self.lo, self.hi, self.below, self.above, dims, maps)?;
        let projection = Morphism::from_blocks_at(self.lo, self.clone(), q.clone(), projs)?;
        Ok(Quotient { module: q, projection, sections })
    }

    /// `rad M = JM`: at `(i, y)` the sum of images of arrows into `y`.
    pub fn radical_bases(&self) -> Result<Vec<Vec<Matrix>>> {
        let q = self.alg.quiver();
        let field = self.field();
        let mut out = Vec::new();
        for i in self.degrees() {
            let mut row = Vec::new();
            for y in 0..self.nv() {
                let n = self.dims[(i - self.lo) as usize][y];
                let mut imgs = Vec::new();
                for (a, ar) in q.arrows().iter().enumerate() {
                    if ar.to == y {
                        let m = self.action(a, i - 1).map_err(|_| {
                            Error::window("radical needs the degree below a truncated window", i)
                        })?;
                        imgs.push(m);
                    }
                }
                let refs: Vec<&Matrix> = imgs.iter().collect();
                row.push(Matrix::hstack(field, n, &refs).image());
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn radical(&self) -> Result<(GradedModule, Morphism)> {
        let b = self.radical_bases()?;
        self.submodule(b)
    }

    /// `top M = M / rad M` with its projection.
    pub fn top(&self) -> Result<Quotient> {
        let b = self.radical_bases()?;
        self.quotient(&b)
    }

    /// `soc M`: common kernel of all arrows leaving each piece. On a
    /// truncated-above module the top degree is dropped (its arrows are
    /// unknown) and the result is flagged truncated there.
    pub fn socle(&self) -> Result<(GradedModule, Morphism)> {
        let q = self.alg.quiver();
        let field = self.field();
        let hi = if self.above == Edge::Truncated { self.hi - 1 } else { self.hi };
        if hi < self.lo {
            return Err(Error::window("socle needs at least two degrees of a truncated module", self.hi));
        }
        let base = if hi == self.hi { self.clone() } else { self.restrict(self.lo, hi) };
        let mut bases = Vec::new();
        for i in self.lo..=hi {
            let mut row = Vec::new();
            for x in 0..self.nv() {
                let n = self.dims[(i - self.lo) as usize][x];
                let mut outs = Vec::new();
                for (a, ar) in q.arrows().iter().enumerate() {
                    if ar.from == x {
                        outs.push(self.action(a, i)?);
                    }
                }
                let refs: Vec<&Matrix> = outs.iter().collect();
                let stacked = Matrix::vstack(field, n, &refs);
                row.push(stacked.kernel());
            }
            bases.push(row);
        }
        let (s, incl) = base.submodule(bases)?;
        // Re-target the inclusion at the full module.
        let incl = Morphism::from_blocks_at(incl.lo, s.clone(), self.clone(), incl.blocks)?;
        Ok((s, incl))
    }

    /// `P_a⟨s⟩` realized on `window` (or on its full support when `None`,
    /// which requires `Λe_a` to be finite within `cap` degrees).
    pub fn projective(alg: &GradedAlgebra, a: usize, s: i64, window: Option<(i64, i64)>) -> Result<GradedModule> {
        const CAP: usize = 256;
        let nv = alg.vertex_count();
        let start = -s;
        let (lo, hi, below, above) = match window {
            Some((wl, wh)) => {
                let lo = wl.max(start);
                let top_deg = (wh + s).max(-1);
                let vanish = alg.vanishing_degree(a, (top_deg + 1).max(0) as usize);
                let above = match vanish {
                    Some(v) if v as i64 <= top_deg + 1 => Edge::Exact,
                    _ => Edge::Truncated,
                };
                let hi = match vanish {
                    Some(v) if above == Edge::Exact => (v as i64 - 1 - s).min(wh),
                    _ => wh,
                };
                (lo, hi, if wl <= start { Edge::Exact } else { Edge::Truncated }, above)
            }
            None => match alg.vanishing_degree(a, CAP) {
                Some(v) => (start, start + v as i64 - 1, Edge::Exact, Edge::Exact),
                None => {
                    return Err(Error::window(
                        format!("projective at {} is not finite; supply a window", alg.quiver().label(a)),
                        start + CAP as i64,
                    ))
                }
            },
        };
        if hi < lo {
            return Ok(GradedModule { below, above, ..GradedModule::zero(alg) }.normalize_empty(lo));
        }
        let dims: Vec<Vec<usize>> = (lo..=hi)
            .map(|i| (0..nv).map(|y| if i + s >= 0 { alg.piece_dim((i + s) as usize, a, y) } else { 0 }).collect())
            .collect();
        let maps = (lo..hi)
            .map(|i| {
                (0..alg.arrow_count())
                    .map(|ar| {
                        if i + s >= 0 {
                            alg.arrow_matrix(a, (i + s) as usize, ar)
                        } else {
                            let arrow = alg.quiver().arrow(ar);
                            Matrix::zeros(alg.field(), dims_at(alg, a, s, i + 1, arrow.to), 0)
                        }
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(alg, lo, hi, below, above, dims, maps)
    }

    fn normalize_empty(mut self, lo: i64) -> GradedModule {
        self.lo = lo;
        self.hi = lo - 1;
        self
    }

    /// `I_a⟨s⟩ = 𝔇(P°_a⟨-s⟩)`.
    pub fn injective(alg: &GradedAlgebra, a: usize, s: i64, window: Option<(i64, i64)>) -> Result<GradedModule> {
        let op = alg.opposite();
        let w = window.map(|(l, h)| (-h, -l));
        let p = GradedModule::projective(&op, a, -s, w)?;
        Ok(p.dual_pieces())
    }

    /// `S_a⟨s⟩`, one-dimensional at `(-s, a)`.
    pub fn simple(alg: &GradedAlgebra, a: usize, s: i64) -> GradedModule {
        let nv = alg.vertex_count();
        let mut d = vec![0; nv];
        d[a] = 1;
        GradedModule::new(alg, -s, -s, Edge::Exact, Edge::Exact, vec![d], Vec::new()).expect("simple module")
    }

    /// Raw map table (for serialization).
    pub fn map_table(&self) -> &[Vec<Matrix>] {
        &self.maps
    }

    /// Element-wise equality of piece data on exact modules, ignoring empty
    /// padding of the window.
    pub fn same_data(&self, o: &GradedModule) -> bool {
        self.alg == o.alg && self.is_exact() && o.is_exact() && self.trimmed() == o.trimmed()
    }

    /// Degreewise dimension equality on exact modules.
    pub fn same_dims(&self, o: &GradedModule) -> bool {
        self.is_exact() && o.is_exact() && self.dims_list() == o.dims_list()
    }
}

fn dims_at(alg: &GradedAlgebra, a: usize, s: i64, i: i64, y: usize) -> usize {
    if i + s >= 0 {
        alg.piece_dim((i + s) as usize, a, y)
    } else {
        0
    }
}

/// Output of [`GradedModule::direct_sum`].
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: GradedModule,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Output of [`GradedModule::quotient`]: the quotient, its projection, and
/// per piece a section (columns in the ambient piece mapping onto the
/// quotient's basis).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: GradedModule,
    pub projection: Morphism,
    pub sections: Vec<Vec<Matrix>>,
}

impl Quotient {
    /// Induced map `Q → N` from `ψ: M → N` vanishing on the submodule.
    pub fn factor(&self, psi: &Morphism) -> Result<Morphism> {
        let src = &self.projection.source;
        let nv = src.nv();
        let mut blocks = Vec::new();
        for i in self.module.lo..=self.module.hi {
            let k = (i - self.module.lo) as usize;
            let mut row = Vec::new();
            for x in 0..nv {
                row.push(psi.block(i, x)?.mul(&self.sections[k][x]));
            }
            blocks.push(row);
        }
        let f = Morphism::from_blocks_at(self.module.lo, self.module.clone(), psi.target.clone(), blocks)?;
        // Check: f ∘ projection = psi.
        let back = f.compose_after(&self.projection)?;
        if !back.sub(psi)?.is_zero() {
            return Err(Error::Internal("map does not vanish on the submodule".into()));
        }
        Ok(f)
    }
}

/// A degree-preserving module homomorphism, stored as one matrix per
/// `(i, x)` over the source window.
#[derive(Clone)]
pub struct Morphism {
    pub source: GradedModule,
    pub target: GradedModule,
    lo: i64,
    blocks: Vec<Vec<Matrix>>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({:?} -> {:?})", self.source, self.target)
    }
}

impl Morphism {
    /// Build from blocks indexed over `lo..` (one row of vertex blocks per
    /// degree). Degrees of the source window not covered get zero blocks.
    pub fn from_blocks_at(lo: i64, source: GradedModule, target: GradedModule, blocks: Vec<Vec<Matrix>>) -> Result<Morphism> {
        let nv = source.nv();
        let field = source.field();
        let mut full = Vec::new();
        for i in source.lo..=source.hi {
            let mut row = Vec::new();
            for x in 0..nv {
                let cols = source.dims[(i - source.lo) as usize][x];
                let k = i - lo;
                let b = if k >= 0 && (k as usize) < blocks.len() { Some(&blocks[k as usize][x]) } else { None };
                let rows = match target.dim(i, x) {
                    Ok(r) => r,
                    Err(e) => {
                        if cols == 0 {
                            b.map_or(0, Matrix::rows)
                        } else {
                            return Err(e);
                        }
                    }
                };
                match b {
                    Some(m) => {
                        if m.rows() != rows || m.cols() != cols {
                            return Err(Error::DimensionMismatch(format!(
                                "morphism block at ({i},{x}) is {}x{}, expected {rows}x{cols}",
                                m.rows(),
                                m.cols()
                            )));
                        }
                        row.push(m.clone());
                    }
                    None => row.push(Matrix::zeros(field, rows, cols)),
                }
            }
            full.push(row);
        }
        let lo = source.lo;
        Ok(Morphism { source, target, lo, blocks: full })
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Result<Morphism> {
        Morphism::from_blocks_at(source.lo, source.clone(), target.clone(), Vec::new())
    }

    pub fn identity(m: &GradedModule) -> Morphism {
        let blocks = m.dims.iter().map(|row| row.iter().map(|&d| Matrix::identity(m.field(), d)).collect()).collect();
        Morphism { source: m.clone(), target: m.clone(), lo: m.lo, blocks }
    }

    /// `f_{i,x}`; zero outside the source window.
    pub fn block(&self, i: i64, x: usize) -> Result<Matrix> {
        if i >= self.source.lo && i <= self.source.hi {
            Ok(self.blocks[(i - self.lo) as usize][x].clone())
        } else {
            let cols = self.source.dim(i, x)?;
            let rows = self.target.dim(i, x).unwrap_or(0);
            Ok(Matrix::zeros(self.source.field(), rows, cols))
        }
    }

    pub fn blocks(&self) -> &[Vec<Matrix>] {
        &self.blocks
    }

    /// Naturality squares `N_i(α) f_{i,x} = f_{i+1,y} M_i(α)` wherever the
    /// data is known.
    pub fn is_natural(&self) -> bool {
        let q = self.source.alg.quiver();
        for i in self.source.lo - 1..=self.source.hi {
            for (a, ar) in q.arrows().iter().enumerate() {
                let (Ok(ma), Ok(na)) = (self.source.action(a, i), self.target.action(a, i)) else { continue };
                let (Ok(f0), Ok(f1)) = (self.block(i, ar.from), self.block(i + 1, ar.to)) else { continue };
                if na.rows() != f1.rows() || na.cols() != f0.rows() {
                    continue;
                }
                if na.mul(&f0) != f1.mul(&ma) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Matrix::is_zero)
    }

    /// `self ∘ f` (apply `f` first).
    pub fn compose_after(&self, f: &Morphism) -> Result<Morphism> {
        let nv = f.source.nv();
        let mut blocks = Vec::new();
        for i in f.source.lo..=f.source.hi {
            let mut row = Vec::new();
            for x in 0..nv {
                let fb = f.block(i, x)?;
                let gb = self.block(i, x)?;
                if gb.cols() != fb.rows() {
                    return Err(Error::DimensionMismatch(format!("composition at ({i},{x})")));
                }
                row.push(gb.mul(&fb));
            }
            blocks.push(row);
        }
        Morphism::from_blocks_at(f.source.lo, f.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.zip(o, |a, b| a.sub(b))
    }

    fn zip(&self, o: &Morphism, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<Morphism> {
        if self.source.lo != o.source.lo || self.blocks.len() != o.blocks.len() {
            return Err(Error::DimensionMismatch("morphisms on different windows".into()));
        }
        let mut blocks = Vec::new();
        for (r1, r2) in self.blocks.iter().zip(&o.blocks) {
            let mut row = Vec::new();
            for (a, b) in r1.iter().zip(r2) {
                if a.rows() != b.rows() || a.cols() != b.cols() {
                    return Err(Error::DimensionMismatch("morphism blocks differ in shape".into()));
                }
                row.push(f(a, b));
            }
            blocks.push(row);
        }
        Ok(Morphism { source: self.source.clone(), target: self.target.clone(), lo: self.lo, blocks })
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            lo: self.lo,
            blocks: self.blocks.iter().map(|r| r.iter().map(|m| m.scale(c)).collect()).collect(),
        }
    }

    /// Flat coordinates: blocks in degree, vertex, row-major order.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.blocks.iter().flatten().flat_map(|m| m.data().iter().cloned()).collect()
    }

    /// Inverse of [`Morphism::to_vec`] given a template with the same shapes.
    pub fn from_vec(template: &Morphism, v: &[Scalar]) -> Morphism {
        let mut k = 0;
        let field = template.source.field();
        let blocks = template
            .blocks
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let n = m.rows() * m.cols();
                        let out = Matrix::new(field, m.rows(), m.cols(), v[k..k + n].to_vec()).expect("block");
                        k += n;
                        out
                    })
                    .collect()
            })
            .collect();
        Morphism { source: template.source.clone(), target: template.target.clone(), lo: template.lo, blocks }
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().flatten().all(|m| m.rank() == m.cols())
    }

    /// Surjective on every piece of the target (target pieces outside the
    /// source window must vanish).
    pub fn is_surjective(&self) -> bool {
        let t = &self.target;
        for i in t.lo..=t.hi {
            for x in 0..t.nv() {
                let d = t.dims[(i - t.lo) as usize][x];
                if d == 0 {
                    continue;
                }
                match self.block(i, x) {
                    Ok(b) if b.rank() == d => {}
                    _ => return false,
                }
            }
        }
        true
    }

    pub fn is_iso(&self) -> bool {
        self.source.same_dims(&self.target) && self.is_injective() && self.is_surjective()
    }

    /// Kernel as a submodule of the source, with its inclusion.
    pub fn kernel(&self) -> Result<(GradedModule, Morphism)> {
        let bases = self.blocks.iter().map(|row| row.iter().map(Matrix::kernel).collect()).collect();
        self.source.submodule(bases)
    }

    /// Image piece bases over the target window.
    pub fn image_bases(&self) -> Result<Vec<Vec<Matrix>>> {
        let t = &self.target;
        let mut out = Vec::new();
        for i in t.lo..=t.hi {
            let mut row = Vec::new();
            for x in 0..t.nv() {
                let d = t.dims[(i - t.lo) as usize][x];
                let b = if i >= self.source.lo && i <= self.source.hi {
                    self.blocks[(i - self.lo) as usize][x].image()
                } else {
                    match self.source.dim(i, x) {
                        Ok(_) => Matrix::zeros(t.field(), d, 0),
                        Err(e) => return Err(e),
                    }
                };
                row.push(b);
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn image(&self) -> Result<(GradedModule, Morphism)> {
        let b = self.image_bases()?;
        self.target.submodule(b)
    }

    pub fn cokernel(&self) -> Result<Quotient> {
        let b = self.image_bases()?;
        self.target.quotient(&b)
    }

    /// `𝔇f: 𝔇N → 𝔇M`, blocks transposed.
    pub fn dual(&self) -> Result<Morphism> {
        let s = self.target.dual()?;
        let t = self.source.dual()?;
        let nv = s.nv();
        let mut blocks = Vec::new();
        for j in s.lo..=s.hi {
            let mut row = Vec::new();
            for x in 0..nv {
                row.push(self.block(-j, x)?.transpose());
            }
            blocks.push(row);
        }
        Morphism::from_blocks_at(s.lo, s, t, blocks)
    }

    /// Piecewise dual of a map between possibly truncated modules.
    pub(crate) fn dual_pieces(&self) -> Result<Morphism> {
        let s = self.target.dual_pieces();
        let t = self.source.dual_pieces();
        let nv = s.nv();
        let mut blocks = Vec::new();
        for j in s.lo..=s.hi {
            let mut row = Vec::new();
            for x in 0..nv {
                row.push(self.block(-j, x)?.transpose());
            }
            blocks.push(row);
        }
        Morphism::from_blocks_at(s.lo, s, t, blocks)
    }

    /// The same maps between shifted modules.
    pub fn shift(&self, s: i64) -> Morphism {
        Morphism {
            source: self.source.shift(s),
            target: self.target.shift(s),
            lo: self.lo - s,
            blocks: self.blocks.clone(),
        }
    }

    /// Re-home on a source/target with identical data in a wider window.
    pub fn rehome(&self, source: &GradedModule, target: &GradedModule) -> Result<Morphism> {
        let nv = source.nv();
        let mut blocks = Vec::new();
        for i in source.lo..=source.hi {
            let mut row = Vec::new();
            for x in 0..nv {
                let b = self.block(i, x).unwrap_or_else(|_| Matrix::zeros(source.field(), 0, 0));
                if b.cols() == source.d(i, x) && b.rows() == target.dim(i, x)? {
                    row.push(b);
                } else {
                    row.push(Matrix::zeros(source.field(), target.dim(i, x)?, source.d(i, x)));
                }
            }
            blocks.push(row);
        }
        Morphism::from_blocks_at(source.lo, source.clone(), target.clone(), blocks)
    }
}

/// Morphism `⊕_k P_{a_k}⟨s_k⟩ → N` sending the generator `e_{a_k}` (in
/// degree `-s_k`) to `images[k] ∈ N_{-s_k}(a_k)`. `p` must be the direct
/// sum of the listed projectives.
pub fn morphism_from_generators(
    p: &GradedModule,
    summands: &[(usize, i64)],
    target: &GradedModule,
    images: &[Vec<Scalar>],
) -> Result<Morphism> {
    let alg = p.algebra().clone();
    let nv = alg.vertex_count();
    let field = alg.field();
    let mut blocks = Vec::new();
    for i in p.lo..=p.hi {
        let mut row = Vec::new();
        for y in 0..nv {
            let rows = target.dim(i, y).unwrap_or(0);
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for (k, &(a, s)) in summands.iter().enumerate() {
                let deg = i + s;
                if deg < 0 {
                    continue;
                }
                for path in alg.piece_basis(deg as usize, a, y)? {
                    if rows == 0 {
                        cols.push(Vec::new());
                        continue;
                    }
                    let v = target.apply_path(&path, -s, &images[k])?;
                    cols.push(v);
                }
            }
            if rows == 0 {
                row.push(Matrix::zeros(field, 0, cols.len()));
            } else {
                row.push(Matrix::from_columns(field, rows, &cols));
            }
        }
        blocks.push(row);
    }
    Morphism::from_blocks_at(p.lo, p.clone(), target.clone(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn fix_a() -> GradedAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "1"), ("b", "1", "2")]).unwrap();
        GradedAlgebra::from_named(Field::Rational, q, &[vec![(1, vec!["b", "a"])]]).unwrap()
    }

    fn fix_b() -> GradedAlgebra {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        GradedAlgebra::new(Field::Rational, q, vec![]).unwrap()
    }

    #[test]
    fn standard_projectives() {
        let b = fix_b();
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        assert_eq!(p1.dims_list(), vec![(0, 0, 1), (1, 1, 1)]);
        assert!(p1.is_exact());
        assert!(p1.validate().is_ok());
        let a = fix_a();
        let p = GradedModule::projective(&a, 0, 0, Some((0, 3))).unwrap();
        assert_eq!(p.dims_list(), vec![(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 0, 1), (3, 0, 1)]);
        assert_eq!(p.edges(), (Edge::Exact, Edge::Truncated));
        assert!(p.validate().is_ok());
    }

    #[test]
    fn injective_of_a2() {
        let b = fix_b();
        let i2 = GradedModule::injective(&b, 1, 0, None).unwrap();
        assert_eq!(i2.dims_list(), vec![(-1, 0, 1), (0, 1, 1)]);
        assert!(i2.is_exact());
        assert!(i2.validate().is_ok());
    }

    #[test]
    fn fix_a_socle_and_radical() {
        let a = fix_a();
        let p = GradedModule::projective(&a, 0, 0, Some((0, 6))).unwrap();
        let (soc, incl) = p.socle().unwrap();
        assert_eq!(soc.dims_list(), vec![(1, 1, 1)]);
        assert!(incl.is_natural());
        let (rad, _) = p.radical().unwrap();
        let mut expect = p.dims_list();
        expect.retain(|&(i, _, _)| i != 0);
        assert_eq!(rad.dims_list(), expect);
    }

    #[test]
    fn shift_and_dual() {
        let b = fix_b();
        let s1 = GradedModule::simple(&b, 0, 0);
        assert_eq!(s1.shift(-2).dims_list(), vec![(2, 0, 1)]);
        assert_eq!(s1.shift(-2).shift(2), s1);
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let d = p1.dual().unwrap();
        assert_eq!(d.algebra(), &b.opposite());
        assert_eq!(d.dual().unwrap(), p1);
        let ds = p1.shift(3).dual().unwrap();
        assert_eq!(ds.dims_list(), d.shift(-3).dims_list());
    }

    #[test]
    fn classify_cases() {
        let b = fix_b();
        let s2 = GradedModule::simple(&b, 1, -1);
        let c = s2.classify().unwrap();
        assert!(c.simple);
        assert_eq!(c.which, vec![("2".to_string(), -1, 1)]);
        let s1 = GradedModule::simple(&b, 0, 0);
        let sum = GradedModule::direct_sum(&b, &[&s1, &s1]).unwrap().module;
        let c = sum.classify().unwrap();
        assert!(c.semisimple && !c.simple);
        assert_eq!(c.which, vec![("1".to_string(), 0, 2)]);
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        assert!(!p1.classify().unwrap().semisimple);
    }

    #[test]
    fn top_and_cokernel() {
        let b = fix_b();
        let p1 = GradedModule::projective(&b, 0, 0, None).unwrap();
        let top = p1.top().unwrap();
        assert_eq!(top.module.dims_list(), vec![(0, 0, 1)]);
        assert!(top.projection.is_natural());
        assert!(top.projection.is_surjective());
    }

    #[test]
    fn planted_violation() {
        let q = Quiver::new(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "1", "3"), ("g", "2", "4"), ("d", "3", "4")],
        )
        .unwrap();
        let f = Field::Rational;
        let c = GradedAlgebra::from_named(f, q, &[vec![(1, vec!["g", "a"]), (-1, vec!["d", "b"])]]).unwrap();
        let one = Matrix::identity(f, 1);
        let z = |r, c| Matrix::zeros(f, r, c);
        let dims = vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]];
        // a, b, g, d all identity-like except d = 0.
        let maps = vec![
            vec![one.clone(), one.clone(), z(0, 0), z(0, 0)],
            vec![z(0, 0), z(0, 0), one.clone(), z(1, 1)],
        ];
        let m = GradedModule::new(&c, 0, 2, Edge::Exact, Edge::Exact, dims, maps).unwrap();
        let v = m.validate().unwrap_err();
        assert_eq!(v.degree, 0);
        assert!(GradedModule::zero(&c).validate().is_ok());
    }
}
