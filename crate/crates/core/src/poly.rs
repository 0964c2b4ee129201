//! Univariate polynomials over the base field, enough to split minimal
//! polynomials into coprime factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactla::{Field, Scalar};

/// Coefficients from the constant term upward, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub field: Field,
    pub c: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut c: Vec<Scalar>) -> Poly {
        while c.last().map_or(false, Scalar::is_zero) {
            c.pop();
        }
        Poly { field, c }
    }

    pub fn one(field: Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().unwrap();
        Poly::new(self.field, self.c.iter().map(|a| a * &inv).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        Poly::new(
            self.field,
            (0..n).map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut out = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let inv = d.lead().inv().unwrap();
        if r.len() < d.c.len() {
            return (Poly::new(self.field, vec![]), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&coef * b);
            }
            q[k] = coef;
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g = gcd`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let zero = Poly::new(f, vec![]);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), zero.clone());
        let (mut t0, mut t1) = (zero, Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().inv().unwrap();
        let sc = |p: &Poly| Poly::new(f, p.c.iter().map(|a| a * &inv).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.c.iter().enumerate().skip(1).map(|(i, a)| a * &self.field.int(i as i64)).collect(),
        )
    }

    /// `self^e mod m` by repeated squaring (`e` as a big integer).
    fn powmod(&self, e: &BigInt, m: &Poly) -> Poly {
        let mut result = Poly::one(self.field).rem(m);
        let mut base = self.rem(m);
        let bits = e.bits();
        for k in 0..bits {
            if e.bit(k) {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        result
    }

    fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }
}

/// A nontrivial monic factor of the square-free part of `p`, when one can be
/// found: rational roots over `Q`, distinct-degree factors over `F_p`.
fn nontrivial_factor(p: &Poly) -> Option<Poly> {
    let f = p.field;
    let d = p.derivative();
    let sq = if d.is_zero() { p.monic() } else { p.divrem(&p.gcd(&d)).0.monic() };
    let n = sq.degree()?;
    if n <= 1 {
        return None;
    }
    match f {
        Field::Rational => rational_root(&sq).map(|r| Poly::new(f, vec![-&r, f.one()])),
        Field::Prime(q) => {
            let x = Poly::x(f);
            let qb = BigInt::from(q);
            let mut e = qb.clone();
            for _ in 1..=n {
                let h = x.powmod(&e, &sq).sub(&x);
                let g = sq.gcd(&h);
                let gd = g.degree().unwrap_or(0);
                if gd > 0 && gd < n {
                    return Some(g);
                }
                e *= &qb;
            }
            if q <= 4096 {
                for v in 0..q {
                    let r = f.int(v as i64);
                    if sq.eval(&r).is_zero() {
                        return Some(Poly::new(f, vec![-&r, f.one()]));
                    }
                }
            }
            None
        }
    }
}

fn rational_root(p: &Poly) -> Option<Scalar> {
    let f = p.field;
    // Clear denominators.
    let mut l = BigInt::one();
    for a in &p.c {
        l = l.lcm(a.as_rational()?.denom());
    }
    let ints: Vec<BigInt> = p.c.iter().map(|a| {
        let q = a.as_rational().unwrap();
        q.numer() * (&l / q.denom())
    }).collect();
    if ints[0].is_zero() {
        return Some(f.zero());
    }
    let small = |b: &BigInt| b.abs().to_u64().filter(|&v| v <= 1_000_000);
    let c0 = small(&ints[0])?;
    let cn = small(ints.last().unwrap())?;
    let divisors = |n: u64| (1..=n).filter(move |d| n % d == 0);
    for num in divisors(c0) {
        for den in divisors(cn) {
            for sign in [1i64, -1] {
                let r = f.parse_scalar(&format!("{}/{}", sign * num as i64, den)).ok()?;
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Split `p = f·g` with `gcd(f, g) = 1` and both nonconstant.
pub fn coprime_split(p: &Poly) -> Option<(Poly, Poly)> {
    let g = nontrivial_factor(p)?;
    // Collect the part of p supported on the factors of g.
    let mut part = Poly::one(p.field);
    let mut rest = p.monic();
    loop {
        let c = rest.gcd(&g);
        if c.degree() == Some(0) {
            break;
        }
        part = part.mul(&c);
        rest = rest.divrem(&c).0;
    }
    if rest.degree().unwrap_or(0) == 0 || part.degree().unwrap_or(0) == 0 {
        return None;
    }
    Some((part.monic(), rest.monic()))
}
