//! Univariate polynomial arithmetic over `F_p`, internal to the module
//! decomposition engine. Provides gcd, squarefree radical, distinct-degree
//! and equal-degree splitting, enough to extract a nontrivial coprime
//! factorization of a minimal polynomial when one exists.

use crate::kernel::Fp;
use crate::Seeded;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly {
    pub p: u64,
    /// Coefficients, `c[i]` multiplying `t^i`; no trailing zeros.
    pub c: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Poly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        Poly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0 by convention (callers check
    /// `is_zero` first where it matters).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn fp(&self) -> Fp {
        Fp { p: self.p }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.fp();
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = f.add(a, b);
        }
        Poly::new(self.p, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = self.fp();
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            c[i] = f.sub(a, b);
        }
        Poly::new(self.p, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.p);
        }
        let f = self.fp();
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.p, c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let f = self.fp();
        let inv = f.inv(*self.c.last().unwrap());
        Poly::new(self.p, self.c.iter().map(|&a| f.mul(a, inv)).collect())
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.fp();
        let mut r = self.c.clone();
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Poly::zero(self.p), self.clone());
        }
        let lead_inv = f.inv(*d.c.last().unwrap());
        let mut q = vec![0u64; self.deg() - dd + 1];
        for i in (dd..r.len()).rev() {
            let coef = f.mul(r[i], lead_inv);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &dc) in d.c.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(r[idx], f.mul(coef, dc));
            }
        }
        (Poly::new(self.p, q), Poly::new(self.p, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn extended_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(p), Poly::zero(p));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let f = Fp { p };
        let inv = f.inv(*r0.c.last().unwrap());
        let scale = |q: &Poly| Poly::new(p, q.c.iter().map(|&a| f.mul(a, inv)).collect());
        (scale(&r0), scale(&s0), scale(&t0))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.fp();
        if self.c.len() <= 1 {
            return Poly::zero(self.p);
        }
        let c = (1..self.c.len()).map(|i| f.mul(self.c[i], (i as u64) % self.p)).collect();
        Poly::new(self.p, c)
    }

    /// `self^e mod m` by square and multiply.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

/// Outcome of a splitting attempt on a minimal polynomial.
pub(crate) enum Split {
    /// `m = u * v` with `gcd(u, v) = 1`, both of positive degree.
    Coprime(Poly, Poly),
    /// `m` is irreducible.
    Irreducible,
    /// `m = f^k`, `k >= 2`, `f` irreducible: no coprime split exists.
    PrimePower,
}

/// Try to factor `m` as a product of two nontrivial coprime polynomials.
pub(crate) fn coprime_split(m: &Poly, rng: &mut Seeded, budget: usize) -> Split {
    let p = m.p;
    let m = m.monic();
    if m.deg() <= 1 {
        return Split::Irreducible;
    }
    // Radical: product of the distinct irreducible factors.
    let g = m.gcd(&m.derivative());
    let rad = if g.deg() == 0 { m.clone() } else { m.div_exact(&g).monic() };
    // In characteristic p a factor f^p has f' contributing zero; for the
    // session-scale polynomials here (deg << p) that case cannot occur.
    if rad.deg() < m.deg() {
        // m is not squarefree. Split off the squarefree-versus-repeated parts
        // if the radical itself splits; otherwise recurse on the radical.
        match split_squarefree(&rad, rng, budget) {
            Some((r1, _r2)) => return lift_split(&m, &r1),
            None => return if rad.deg() == 0 { Split::Irreducible } else { Split::PrimePower },
        }
    }
    match split_squarefree(&m, rng, budget) {
        Some((u, v)) => Split::Coprime(u, v),
        None => Split::Irreducible,
    }
}

/// Given squarefree `r` with at least two irreducible factors, find a split
/// `r = r1 * r2` into coprime nontrivial parts. Returns `None` when `r` is
/// irreducible (or the randomized stage exhausted its budget, which for
/// session-scale inputs has negligible probability).
fn split_squarefree(r: &Poly, rng: &mut Seeded, budget: usize) -> Option<(Poly, Poly)> {
    let p = r.p;
    if r.deg() <= 1 {
        return None;
    }
    // Distinct-degree stage: gcd(x^{p^d} - x, r) collects factors of degree d.
    let x = Poly::x(p);
    let mut frob = x.clone(); // x^{p^d} mod r
    for d in 1..=r.deg() {
        frob = frob.powmod(p, r);
        let g = frob.sub(&x).gcd(r);
        if g.deg() > 0 && g.deg() < r.deg() {
            let other = r.div_exact(&g).monic();
            return Some((g.monic(), other));
        }
        if g.deg() == r.deg() {
            // All factors have degree dividing d; irreducible iff d == deg.
            if d == r.deg() {
                return None;
            }
            return equal_degree_split(r, d, rng, budget);
        }
        if 2 * d >= r.deg() {
            // At most one factor of degree > d can remain; if we get here the
            // polynomial is irreducible.
            return None;
        }
    }
    None
}

/// Cantor-Zassenhaus equal-degree splitting: `r` squarefree, all factors of
/// degree `d`, at least two of them.
fn equal_degree_split(r: &Poly, d: usize, rng: &mut Seeded, budget: usize) -> Option<(Poly, Poly)> {
    let p = r.p;
    for _ in 0..budget {
        let w = Poly::new(p, (0..r.deg()).map(|_| rng.scalar(p)).collect());
        if w.deg() == 0 {
            continue;
        }
        // Norm of w down to F_p: prod_{i<d} w^{p^i} mod r.
        let mut norm = w.rem(r);
        let mut fr = w.rem(r);
        for _ in 1..d {
            fr = fr.powmod(p, r);
            norm = norm.mul(&fr).rem(r);
        }
        let e = norm.powmod((p - 1) / 2, r);
        let g = e.sub(&Poly::one(p)).gcd(r);
        if g.deg() > 0 && g.deg() < r.deg() {
            let other = r.div_exact(&g).monic();
            return Some((g.monic(), other));
        }
    }
    None
}

/// Given `m` and a nontrivial divisor `r1` of its radical, produce the
/// coprime split `m = u * v` where `u` carries every factor dividing `r1`.
fn lift_split(m: &Poly, r1: &Poly) -> Split {
    // u = gcd(m, r1^{deg m}): saturates multiplicities.
    let mut pw = r1.rem(m);
    let mut acc = Poly::one(m.p);
    let mut e = m.deg() as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&pw).rem(m);
        }
        pw = pw.mul(&pw).rem(m);
        e >>= 1;
    }
    let u = acc.gcd(m);
    if u.deg() == 0 || u.deg() == m.deg() {
        return Split::PrimePower;
    }
    let v = m.div_exact(&u).monic();
    Split::Coprime(u, v)
}

/// Coefficients of the idempotent polynomial `e` with `e = 1 mod u`,
/// `e = 0 mod v`, for coprime `u, v`.
pub(crate) fn crt_idempotent(u: &Poly, v: &Poly) -> Poly {
    let (g, s, _t) = u.extended_gcd(v);
    assert_eq!(g.deg(), 0, "factors not coprime");
    assert!(!g.is_zero());
    // s*u + t*v = 1, so e = s*u satisfies e = 0 mod u... we want the other:
    // e = s*u is 0 mod u and 1 mod v; swap roles accordingly.
    let e = s.mul(u);
    // e = 1 - e is 1 mod u, 0 mod v.
    Poly::one(u.p).sub(&e).rem(&u.mul(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 32003;

    #[test]
    fn divrem_roundtrip() {
        let a = Poly::new(P, vec![1, 2, 3, 4]);
        let b = Poly::new(P, vec![5, 1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let f = Poly::new(P, vec![1, 1]); // t + 1
        let g = Poly::new(P, vec![2, 1]); // t + 2
        let h = Poly::new(P, vec![3, 1]); // t + 3
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn splits_product_of_linear_factors() {
        let mut rng = Seeded::new(7);
        let m = Poly::new(P, vec![2, 3, 1]); // (t+1)(t+2)
        match coprime_split(&m, &mut rng, 16) {
            Split::Coprime(u, v) => {
                assert_eq!(u.mul(&v).monic(), m.monic());
                assert_eq!(u.gcd(&v).deg(), 0);
            }
            _ => panic!("expected split"),
        }
    }

    #[test]
    fn detects_irreducible_quadratic() {
        // t^2 - n for n a quadratic nonresidue is irreducible.
        let fp = Fp { p: P };
        let mut n = 2;
        while fp.pow(n, (P - 1) / 2) == 1 {
            n += 1;
        }
        let m = Poly::new(P, vec![fp.neg(n), 0, 1]);
        let mut rng = Seeded::new(3);
        assert!(matches!(coprime_split(&m, &mut rng, 16), Split::Irreducible));
    }

    #[test]
    fn detects_prime_power() {
        let f = Poly::new(P, vec![5, 1]);
        let m = f.mul(&f);
        let mut rng = Seeded::new(3);
        assert!(matches!(coprime_split(&m, &mut rng, 16), Split::PrimePower));
    }

    #[test]
    fn mixed_multiplicity_splits() {
        // (t+1)^2 (t+2): radical splits, lift separates multiplicities.
        let f = Poly::new(P, vec![1, 1]);
        let g = Poly::new(P, vec![2, 1]);
        let m = f.mul(&f).mul(&g);
        let mut rng = Seeded::new(11);
        match coprime_split(&m, &mut rng, 16) {
            Split::Coprime(u, v) => {
                assert_eq!(u.mul(&v).monic(), m.monic());
                assert_eq!(u.gcd(&v).deg(), 0);
                assert!(u.deg() > 0 && v.deg() > 0);
            }
            _ => panic!("expected split"),
        }
    }

    #[test]
    fn crt_idempotent_is_idempotent_mod_m() {
        let u = Poly::new(P, vec![1, 1]);
        let v = Poly::new(P, vec![2, 1]).mul(&Poly::new(P, vec![3, 1]));
        let m = u.mul(&v);
        let e = crt_idempotent(&u, &v);
        let e2 = e.mul(&e).rem(&m);
        assert_eq!(e2, e.rem(&m));
        // e = 1 mod u, 0 mod v.
        assert_eq!(e.rem(&u), Poly::one(P));
        assert!(e.rem(&v).is_zero());
    }
}
