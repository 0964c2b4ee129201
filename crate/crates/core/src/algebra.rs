//! Graded quotients `Λ = kQ/R` of path algebras by homogeneous relations.
//!
//! For every vertex `x` the left projective `Λe_x` is built degree by
//! degree: the candidates in degree `i+1` are `α·b` for arrows `α` and
//! standard monomials `b` of degree `i`, and the relations cut them down by
//! a row reduction. Each degree stores its standard monomials and the
//! matrices of left multiplication by arrows, which is all that is needed
//! to multiply. Towers grow lazily under a lock and are never mutated once
//! a degree is filled.

use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::quiver::{Path, Quiver};

/// A homogeneous relation `Σ c_k p_k` over parallel paths of one length.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }
    pub fn start(&self) -> usize {
        self.terms[0].1.start
    }
    pub fn end(&self) -> usize {
        self.terms[0].1.end
    }

    fn reversed(&self) -> Relation {
        Relation { terms: self.terms.iter().map(|(c, p)| (c.clone(), Quiver::reverse_path(p))).collect() }
    }
}

struct Level {
    /// Standard monomials per target vertex.
    basis: Vec<Vec<Path>>,
    /// Left multiplication by each arrow from the previous degree into this
    /// one (empty for degree 0).
    incoming: Vec<Matrix>,
}

struct Tower {
    levels: Vec<Arc<Level>>,
    /// Set once a degree with no standard monomials has been reached.
    finished: bool,
}

struct Side {
    quiver: Quiver,
    relations: Vec<Relation>,
    towers: Vec<RwLock<Tower>>,
}

struct Inner {
    field: Field,
    sides: [Side; 2],
}

/// Handle to a graded algebra or its opposite. Cloning is cheap; both
/// orientations share one cache.
#[derive(Clone)]
pub struct GradedAlgebra {
    inner: Arc<Inner>,
    opposite: bool,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedAlgebra({} vertices, {} arrows, {} relations{})",
            self.quiver().vertex_count(),
            self.quiver().arrow_count(),
            self.relations().len(),
            if self.opposite { ", opposite" } else { "" }
        )
    }
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, o: &GradedAlgebra) -> bool {
        Arc::ptr_eq(&self.inner, &o.inner) && self.opposite == o.opposite
    }
}

/// An element of `e_y Λ_i e_x`, in coordinates over the standard monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub coeffs: Vec<Scalar>,
}

impl AlgElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// Total dimension of `Λe_x` (or `e_xΛ`) when certified finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Bound {
    Finite { dim: usize },
    UnboundedAtCap { profile: Vec<usize> },
    /// Finite on the listed data but reaching an open vertex, so the
    /// ambient module may be larger.
    Frontier { dim: usize, vertex: String },
}

impl Bound {
    pub fn is_finite(&self) -> bool {
        matches!(self, Bound::Finite { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Boundedness {
    /// Per vertex `x`: status of `Λe_x`.
    pub left: Vec<(String, Bound)>,
    /// Per vertex `x`: status of `e_xΛ`.
    pub right: Vec<(String, Bound)>,
}

impl Boundedness {
    pub fn left_bounded(&self) -> bool {
        self.left.iter().all(|(_, b)| b.is_finite())
    }
    pub fn right_bounded(&self) -> bool {
        self.right.iter().all(|(_, b)| b.is_finite())
    }
}

fn validate_relation(q: &Quiver, r: &Relation) -> Result<()> {
    let show = || {
        r.terms
            .iter()
            .map(|(c, p)| format!("{c}*{}", q.format_path(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let Some((_, first)) = r.terms.first() else {
        return Err(Error::InvalidRelation("empty relation".into()));
    };
    for (_, p) in &r.terms {
        if p.len() != first.len() {
            return Err(Error::NotHomogeneous(show()));
        }
        if p.start != first.start || p.end != first.end {
            return Err(Error::InvalidRelation(format!("paths not parallel in {}", show())));
        }
    }
    if first.len() < 2 {
        return Err(Error::RelationTooShort(show()));
    }
    Ok(())
}

impl Side {
    fn new(quiver: Quiver, relations: Vec<Relation>) -> Side {
        let towers = (0..quiver.vertex_count())
            .map(|x| {
                let basis = (0..quiver.vertex_count())
                    .map(|y| if y == x { vec![Path::trivial(x)] } else { Vec::new() })
                    .collect();
                RwLock::new(Tower { levels: vec![Arc::new(Level { basis, incoming: Vec::new() })], finished: false })
            })
            .collect();
        Side { quiver, relations, towers }
    }

    /// Levels `0..=degree` of the tower at `x` (fewer if it has finished).
    fn levels(&self, field: Field, x: usize, degree: usize) -> Vec<Arc<Level>> {
        {
            let t = self.towers[x].read();
            if t.levels.len() > degree || t.finished {
                return t.levels.iter().take(degree + 1).cloned().collect();
            }
        }
        let mut t = self.towers[x].write();
        while t.levels.len() <= degree && !t.finished {
            let next = self.build_next(field, &t.levels);
            if next.basis.iter().all(Vec::is_empty) {
                t.finished = true;
            }
            t.levels.push(Arc::new(next));
        }
        t.levels.iter().take(degree + 1).cloned().collect()
    }

    fn build_next(&self, field: Field, levels: &[Arc<Level>]) -> Level {
        let q = &self.quiver;
        let i = levels.len() - 1;
        let nv = q.vertex_count();
        let cur = &levels[i];
        let mut basis = vec![Vec::new(); nv];
        let mut incoming: Vec<Option<Matrix>> = vec![None; q.arrow_count()];
        for y in 0..nv {
            // Candidate monomials α·b grouped by arrow.
            let mut cands: Vec<(usize, usize, Path)> = Vec::new();
            let mut offset = vec![0usize; q.arrow_count()];
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.to != y {
                    continue;
                }
                offset[ai] = cands.len();
                for (bi, b) in cur.basis[a.from].iter().enumerate() {
                    let mut arrows = Vec::with_capacity(b.len() + 1);
                    arrows.push(ai);
                    arrows.extend_from_slice(&b.arrows);
                    cands.push((ai, bi, Path { start: b.start, end: y, arrows }));
                }
            }
            if cands.is_empty() {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.to == y {
                        incoming[ai] = Some(Matrix::zeros(field, 0, cur.basis[a.from].len()));
                    }
                }
                continue;
            }
            // Column order: descending lexicographic on arrow names.
            let mut order: Vec<usize> = (0..cands.len()).collect();
            order.sort_by(|&u, &v| q.path_names(&cands[v].2).cmp(&q.path_names(&cands[u].2)));
            let mut col_of = vec![0usize; cands.len()];
            for (c, &k) in order.iter().enumerate() {
                col_of[k] = c;
            }
            // Relation rows r·b.
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for r in &self.relations {
                let d = r.degree();
                if r.end() != y || d > i + 1 {
                    continue;
                }
                let lvl = i + 1 - d;
                let z = r.start();
                for bi in 0..levels[lvl].basis[z].len() {
                    let mut row = vec![field.zero(); cands.len()];
                    for (c, p) in &r.terms {
                        let last = p.arrows[0];
                        let mut v = vec![field.zero(); levels[lvl].basis[z].len()];
                        v[bi] = field.one();
                        let mut deg = lvl;
                        for &a in p.arrows[1..].iter().rev() {
                            v = levels[deg + 1].incoming[a].mul_vec(&v);
                            deg += 1;
                        }
                        debug_assert_eq!(deg, i);
                        for (k, val) in v.iter().enumerate() {
                            if !val.is_zero() {
                                let col = col_of[offset[last] + k];
                                row[col] = &row[col] + &(c * val);
                            }
                        }
                    }
                    if row.iter().any(|s| !s.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let rel = Matrix::from_rows(field, cands.len(), &rows);
            let e = rel.echelon();
            let mut pivot_row = vec![None; cands.len()];
            for (j, &p) in e.pivots.iter().enumerate() {
                pivot_row[p] = Some(j);
            }
            let free: Vec<usize> = (0..cands.len()).filter(|&c| pivot_row[c].is_none()).collect();
            let mut free_pos = vec![usize::MAX; cands.len()];
            for (k, &c) in free.iter().enumerate() {
                free_pos[c] = k;
            }
            basis[y] = free.iter().map(|&c| cands[order[c]].2.clone()).collect();
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.to != y {
                    continue;
                }
                let src = cur.basis[a.from].len();
                let mut m = Matrix::zeros(field, free.len(), src);
                for bi in 0..src {
                    let c = col_of[offset[ai] + bi];
                    match pivot_row[c] {
                        None => m.set(free_pos[c], bi, field.one()),
                        Some(j) => {
                            for (k, &f) in free.iter().enumerate() {
                                let v = e.rref.get(j, f);
                                if !v.is_zero() {
                                    m.set(k, bi, -v);
                                }
                            }
                        }
                    }
                }
                incoming[ai] = Some(m);
            }
        }
        Level { basis, incoming: incoming.into_iter().map(|m| m.expect("every arrow has a target")).collect() }
    }
}

impl GradedAlgebra {
    /// Build `kQ/R`. Relations are validated for homogeneity, parallelism and
    /// length at least two.
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Result<GradedAlgebra> {
        let mut rels = Vec::new();
        for r in relations {
            validate_relation(&quiver, &r)?;
            if let Some((c, _)) = r.terms.iter().find(|(c, _)| c.field() != field) {
                return Err(Error::FieldMismatch(format!("coefficient over {}", c.field().tag())));
            }
            let terms: Vec<_> = r.terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
            if !terms.is_empty() {
                rels.push(Relation { terms });
            }
        }
        let op_rels = rels.iter().map(Relation::reversed).collect();
        let op = quiver.opposite();
        Ok(GradedAlgebra {
            inner: Arc::new(Inner { field, sides: [Side::new(quiver, rels), Side::new(op, op_rels)] }),
            opposite: false,
        })
    }

    /// Relations given as `(coefficient, arrow names in written order)` lists.
    pub fn from_named(field: Field, quiver: Quiver, relations: &[Vec<(i64, Vec<&str>)>]) -> Result<GradedAlgebra> {
        let rels = relations
            .iter()
            .map(|terms| {
                Ok(Relation {
                    terms: terms
                        .iter()
                        .map(|(c, names)| Ok((field.int(*c), quiver.path(names)?)))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::new(field, quiver, rels)
    }

    fn side(&self) -> &Side {
        &self.inner.sides[self.opposite as usize]
    }

    pub fn field(&self) -> Field {
        self.inner.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.side().quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.side().relations
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    /// The opposite algebra `Λ°`, sharing caches with `self`.
    pub fn opposite(&self) -> GradedAlgebra {
        GradedAlgebra { inner: self.inner.clone(), opposite: !self.opposite }
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver().arrow_count()
    }

    fn levels(&self, x: usize, degree: usize) -> Vec<Arc<Level>> {
        self.side().levels(self.field(), x, degree)
    }

    /// Standard monomials of `e_y Λ_i e_x`.
    pub fn piece_basis(&self, i: usize, x: usize, y: usize) -> Result<Vec<Path>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let lv = self.levels(x, i);
        Ok(lv.get(i).map_or_else(Vec::new, |l| l.basis[y].clone()))
    }

    pub fn piece_dim(&self, i: usize, x: usize, y: usize) -> usize {
        let lv = self.levels(x, i);
        lv.get(i).map_or(0, |l| l.basis[y].len())
    }

    fn check_vertex(&self, x: usize) -> Result<()> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("index {x}")))
        }
    }

    /// Matrix of left multiplication by arrow `a` from `e_{s(a)}Λ_i e_x` to
    /// `e_{t(a)}Λ_{i+1} e_x`.
    pub fn arrow_matrix(&self, x: usize, i: usize, a: usize) -> Matrix {
        let lv = self.levels(x, i + 1);
        let arrow = self.quiver().arrow(a);
        match lv.get(i + 1) {
            Some(l) => l.incoming[a].clone(),
            None => {
                let src = lv.get(i).map_or(0, |l| l.basis[arrow.from].len());
                Matrix::zeros(self.field(), 0, src)
            }
        }
    }

    /// Degree `i` piece of `Λe_x` at `y` is zero for all `i ≥ d` once some
    /// whole degree vanished; returns that degree if reached within `cap`.
    pub fn vanishing_degree(&self, x: usize, cap: usize) -> Option<usize> {
        let lv = self.levels(x, cap);
        lv.iter().position(|l| l.basis.iter().all(Vec::is_empty))
    }

    /// Apply a path (written order) to a coordinate vector living in degree
    /// `i` of `Λe_x` at the path's start.
    pub fn act_path(&self, x: usize, i: usize, v: &[Scalar], path: &Path) -> Vec<Scalar> {
        let lv = self.levels(x, i + path.len());
        let mut v = v.to_vec();
        let mut deg = i;
        for &a in path.arrows.iter().rev() {
            match lv.get(deg + 1) {
                Some(l) => v = l.incoming[a].mul_vec(&v),
                None => return Vec::new(),
            }
            deg += 1;
        }
        v
    }

    /// Normal form of a path as an element.
    pub fn path_element(&self, p: &Path) -> AlgElement {
        let e = self.idempotent(p.start);
        let coeffs = self.act_path(p.start, 0, &e.coeffs, p);
        AlgElement { degree: p.len(), source: p.start, target: p.end, coeffs }
    }

    pub fn idempotent(&self, x: usize) -> AlgElement {
        AlgElement { degree: 0, source: x, target: x, coeffs: vec![self.field().one()] }
    }

    pub fn arrow_element(&self, a: usize) -> AlgElement {
        let ar = self.quiver().arrow(a).clone();
        self.path_element(&Path { start: ar.from, end: ar.to, arrows: vec![a] })
    }

    pub fn zero_element(&self, degree: usize, source: usize, target: usize) -> AlgElement {
        AlgElement {
            degree,
            source,
            target,
            coeffs: vec![self.field().zero(); self.piece_dim(degree, source, target)],
        }
    }

    /// Linear combination of paths, all parallel of one length.
    pub fn element(&self, terms: &[(Scalar, Path)]) -> Result<AlgElement> {
        let Some((_, p0)) = terms.first() else {
            return Err(Error::InvalidRelation("empty combination".into()));
        };
        let mut acc = self.zero_element(p0.len(), p0.start, p0.end);
        for (c, p) in terms {
            if p.len() != p0.len() || p.start != p0.start || p.end != p0.end {
                return Err(Error::NotHomogeneous("element terms differ in shape".into()));
            }
            let pe = self.path_element(p);
            for (a, b) in acc.coeffs.iter_mut().zip(&pe.coeffs) {
                *a = &*a + &(c * b);
            }
        }
        Ok(acc)
    }

    /// Product `u·v` (apply `v` first).
    pub fn multiply(&self, u: &AlgElement, v: &AlgElement) -> Result<AlgElement> {
        if u.source != v.target {
            return Err(Error::EndpointMismatch(format!(
                "left factor starts at {}, right factor ends at {}",
                self.quiver().label(u.source),
                self.quiver().label(v.target)
            )));
        }
        let basis = self.piece_basis(u.degree, u.source, u.target)?;
        let mut out = self.zero_element(u.degree + v.degree, v.source, u.target);
        for (c, p) in u.coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let w = self.act_path(v.source, v.degree, &v.coeffs, p);
            for (a, b) in out.coeffs.iter_mut().zip(&w) {
                *a = &*a + &(c * b);
            }
        }
        Ok(out)
    }

    pub fn add(&self, u: &AlgElement, v: &AlgElement) -> AlgElement {
        assert!(u.degree == v.degree && u.source == v.source && u.target == v.target);
        AlgElement {
            degree: u.degree,
            source: u.source,
            target: u.target,
            coeffs: u.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar, u: &AlgElement) -> AlgElement {
        AlgElement { coeffs: u.coeffs.iter().map(|a| a * c).collect(), ..u.clone() }
    }

    /// Translation `u ↦ u°` into the opposite algebra.
    pub fn to_opposite(&self, u: &AlgElement) -> Result<AlgElement> {
        let op = self.opposite();
        let basis = self.piece_basis(u.degree, u.source, u.target)?;
        let mut out = op.zero_element(u.degree, u.target, u.source);
        for (c, p) in u.coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let w = op.path_element(&Quiver::reverse_path(p));
            for (a, b) in out.coeffs.iter_mut().zip(&w.coeffs) {
                *a = &*a + &(c * b);
            }
        }
        Ok(out)
    }

    /// Matrix of right multiplication by `u ∈ e_a Λ_d e_b`, from
    /// `e_y Λ_i e_a` to `e_y Λ_{i+d} e_b`.
    pub fn right_mult_matrix(&self, u: &AlgElement, i: usize, y: usize) -> Matrix {
        let basis = self.levels(u.target, i).get(i).map_or_else(Vec::new, |l| l.basis[y].clone());
        let rows = self.piece_dim(i + u.degree, u.source, y);
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|p| {
                let w = self.act_path(u.source, u.degree, &u.coeffs, p);
                if w.is_empty() {
                    vec![self.field().zero(); rows]
                } else {
                    w
                }
            })
            .collect();
        Matrix::from_columns(self.field(), rows, &cols)
    }

    /// Whether `Λe_x` has a nonzero piece at `v` in degrees `0..=cap`.
    pub fn reaches(&self, x: usize, v: usize, cap: usize) -> bool {
        self.levels(x, cap).iter().any(|l| !l.basis[v].is_empty())
    }

    /// Whether `Λe_x` meets an open-out vertex, i.e. may continue past the
    /// listed quiver.
    pub fn projective_meets_frontier(&self, x: usize, cap: usize) -> bool {
        self.quiver().open_out().iter().any(|&v| self.reaches(x, v, cap))
    }

    fn bound_of(&self, x: usize, cap: usize) -> Bound {
        let lv = self.levels(x, cap);
        let dims: Vec<usize> = lv.iter().map(|l| l.basis.iter().map(Vec::len).sum()).collect();
        match dims.iter().position(|&d| d == 0) {
            Some(d) => {
                let dim = dims[..d].iter().sum();
                match self.quiver().open_out().iter().find(|&&v| self.reaches(x, v, cap)) {
                    Some(&v) => Bound::Frontier { dim, vertex: self.quiver().label(v).to_string() },
                    None => Bound::Finite { dim },
                }
            }
            None => Bound::UnboundedAtCap { profile: dims },
        }
    }

    /// Boundedness of every `Λe_x` (left) and `e_xΛ` (right), certified
    /// only when a whole degree vanishes by `cap`.
    pub fn boundedness(&self, cap: usize) -> Result<Boundedness> {
        if cap == 0 {
            return Err(Error::Precondition("degree cap must be positive".into()));
        }
        let op = self.opposite();
        let q = self.quiver();
        Ok(Boundedness {
            left: (0..q.vertex_count()).map(|x| (q.label(x).to_string(), self.bound_of(x, cap))).collect(),
            right: (0..q.vertex_count()).map(|x| (q.label(x).to_string(), op.bound_of(x, cap))).collect(),
        })
    }

    pub fn format_element(&self, u: &AlgElement) -> String {
        let basis = match self.piece_basis(u.degree, u.source, u.target) {
            Ok(b) => b,
            Err(_) => return "?".into(),
        };
        let terms: Vec<String> = u
            .coeffs
            .iter()
            .zip(&basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| {
                let name = self.quiver().format_path(p);
                if c.is_one() {
                    name
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
