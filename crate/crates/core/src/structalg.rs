//! Abstract finite-dimensional algebras given by a basis, structure constants
//! and a complete list of orthogonal idempotents, together with right modules
//! over them given by action matrices.
//!
//! Endomorphism algebras, trivial extensions, replicated algebras and orbit
//! algebras are all materialized in this form. The Jacobson radical is
//! computed from the trace form of the regular representation, which is valid
//! because the session modulus exceeds every algebra dimension.

use crate::kernel::{Fp, Matrix, RowSpan};
use crate::poly::{coprime_split, crt_idempotent, Poly, Split};
use crate::{Error, Result, Seeded};
use std::sync::Arc;

/// Sparse coefficient vector: sorted `(basis index, coefficient)` pairs.
pub type Sv = Vec<(u32, u64)>;

pub fn sv_from_dense(v: &[u64]) -> Sv {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect()
}

pub fn sv_to_dense(sv: &Sv, dim: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    for &(i, c) in sv {
        v[i as usize] = c;
    }
    v
}

/// Layer tags for algebras derived from repetitive categories.
#[derive(Debug, Clone)]
pub struct StructTags {
    /// `(layer, base label)` per basis element.
    pub basis: Vec<(i64, String)>,
    /// `(layer, base vertex)` per idempotent.
    pub idem: Vec<(i64, String)>,
}

/// A finite dimensional algebra by structure constants.
#[derive(Debug, Clone)]
pub struct StructAlgebra {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `table[i][j]` = product `b_i * b_j` as a sparse vector over the basis.
    pub table: Vec<Vec<Sv>>,
    /// Complete orthogonal idempotent list, as dense coefficient vectors.
    pub idempotents: Vec<Vec<u64>>,
    /// One display label per idempotent ("vertex" of the algebra).
    pub vertex_labels: Vec<String>,
    pub tags: Option<StructTags>,
}

impl StructAlgebra {
    pub fn fp(&self) -> Fp {
        Fp { p: self.p }
    }

    /// Identity element (sum of the idempotents).
    pub fn one(&self) -> Vec<u64> {
        let f = self.fp();
        let mut v = vec![0; self.dim];
        for e in &self.idempotents {
            for i in 0..self.dim {
                v[i] = f.add(v[i], e[i]);
            }
        }
        v
    }

    /// Product of two dense coefficient vectors.
    pub fn mul_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.fp();
        let mut out = vec![0u64; self.dim];
        for (i, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                let c = f.mul(ca, cb);
                for &(k, t) in &self.table[i][j] {
                    let slot = &mut out[k as usize];
                    *slot = f.add(*slot, f.mul(c, t));
                }
            }
        }
        out
    }

    /// Matrix of right multiplication by `a` on the regular module.
    pub fn right_mul_matrix(&self, a: &[u64]) -> Matrix {
        let f = self.fp();
        let mut m = Matrix::zeros(self.dim, self.dim, self.p);
        for i in 0..self.dim {
            for (j, &cj) in a.iter().enumerate() {
                if cj == 0 {
                    continue;
                }
                for &(k, t) in &self.table[i][j] {
                    let v = &mut m[(i, k as usize)];
                    *v = f.add(*v, f.mul(cj, t));
                }
            }
        }
        m
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mul_matrix(&self, a: &[u64]) -> Matrix {
        let f = self.fp();
        let mut m = Matrix::zeros(self.dim, self.dim, self.p);
        for j in 0..self.dim {
            for (i, &ci) in a.iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                for &(k, t) in &self.table[i][j] {
                    let v = &mut m[(j, k as usize)];
                    *v = f.add(*v, f.mul(ci, t));
                }
            }
        }
        m
    }

    /// Construction-time validation: associativity on all basis triples,
    /// orthogonality of the idempotents, identity behaviour of their sum,
    /// and the modulus bound.
    pub fn validate(&self) -> Result<()> {
        if (self.dim as u64) >= self.p {
            return Err(Error::ModulusTooSmall {
                p: self.p,
                dim: self.dim,
                what: format!("algebra {}", self.name),
            });
        }
        let f = self.fp();
        // Associativity on basis triples, exploiting sparsity of the table.
        for i in 0..self.dim {
            for j in 0..self.dim {
                let tij = &self.table[i][j];
                for k in 0..self.dim {
                    let mut lhs = vec![0u64; self.dim];
                    for &(l, c) in tij {
                        for &(m, t) in &self.table[l as usize][k] {
                            let slot = &mut lhs[m as usize];
                            *slot = f.add(*slot, f.mul(c, t));
                        }
                    }
                    let mut rhs = vec![0u64; self.dim];
                    for &(l, c) in &self.table[j][k] {
                        for &(m, t) in &self.table[i][l as usize] {
                            let slot = &mut rhs[m as usize];
                            *slot = f.add(*slot, f.mul(c, t));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "associativity fails on basis triple ({}, {}, {}) of {}",
                            self.labels[i], self.labels[j], self.labels[k], self.name
                        )));
                    }
                }
            }
        }
        // Idempotents: orthogonal, idempotent, summing to a two-sided identity.
        for (a, ea) in self.idempotents.iter().enumerate() {
            for (b, eb) in self.idempotents.iter().enumerate() {
                let prod = self.mul_vec(ea, eb);
                let expect = if a == b { ea.clone() } else { vec![0; self.dim] };
                if prod != expect {
                    return Err(Error::Invalid(format!(
                        "idempotents {} and {} of {} are not orthogonal idempotents",
                        self.vertex_labels[a], self.vertex_labels[b], self.name
                    )));
                }
            }
        }
        let one = self.one();
        for i in 0..self.dim {
            let mut b = vec![0; self.dim];
            b[i] = 1;
            if self.mul_vec(&one, &b) != b || self.mul_vec(&b, &one) != b {
                return Err(Error::Invalid(format!(
                    "idempotent sum is not an identity of {}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Jacobson radical as a matrix whose columns span the radical.
    /// Uses the trace form of the left regular representation; valid since
    /// `p > dim` is enforced at construction.
    pub fn radical(&self) -> Matrix {
        // tr(L_{b_k}) precomputed, then Gram[i][j] = tr(L_{b_i b_j}).
        let f = self.fp();
        let mut tr = vec![0u64; self.dim];
        for k in 0..self.dim {
            let mut t = 0u64;
            for m in 0..self.dim {
                for &(l, c) in &self.table[k][m] {
                    if l as usize == m {
                        t = f.add(t, c);
                    }
                }
            }
            tr[k] = t;
        }
        let mut gram = Matrix::zeros(self.dim, self.dim, self.p);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut g = 0u64;
                for &(k, c) in &self.table[i][j] {
                    g = f.add(g, f.mul(c, tr[k as usize]));
                }
                gram[(i, j)] = g;
            }
        }
        gram.nullspace()
    }

    /// Radical as an echelonized row span.
    pub fn radical_span(&self) -> RowSpan {
        let rad = self.radical();
        let mut span = RowSpan::new(self.dim, self.p);
        for j in 0..rad.cols {
            span.insert((0..rad.rows).map(|i| rad[(i, j)]).collect());
        }
        span
    }

    /// Span of the product of two subspaces (given by echelon row spans).
    pub fn span_product(&self, a: &RowSpan, b: &RowSpan) -> RowSpan {
        let mut out = RowSpan::new(self.dim, self.p);
        for x in a.basis_rows() {
            for y in b.basis_rows() {
                out.insert(self.mul_vec(x, y));
            }
        }
        out
    }

    /// The corner algebra `e A e` for an idempotent `e`, together with the
    /// lift of each new basis element into `A`.
    pub fn corner(&self, e: &[u64], name: &str) -> (StructAlgebra, Vec<Vec<u64>>) {
        let mut span = RowSpan::new(self.dim, self.p);
        let mut lifts: Vec<Vec<u64>> = Vec::new();
        for i in 0..self.dim {
            let mut b = vec![0; self.dim];
            b[i] = 1;
            let ebe = self.mul_vec(&self.mul_vec(e, &b), e);
            if span.insert(ebe.clone()) {
                lifts.push(ebe);
            }
        }
        let sub = self.subalgebra_on_span(&span, &lifts, vec![e.to_vec()], vec!["e".into()], name);
        (sub, lifts)
    }

    /// Build the algebra structure on a multiplicatively closed subspace.
    /// `lifts` are representatives of the span's basis (in insertion order,
    /// matching `span.basis_rows()` up to echelon reduction).
    fn subalgebra_on_span(
        &self,
        span: &RowSpan,
        lifts: &[Vec<u64>],
        idempotents: Vec<Vec<u64>>,
        vertex_labels: Vec<String>,
        name: &str,
    ) -> StructAlgebra {
        let dim = lifts.len();
        let basis_mat =
            Matrix::from_rows(lifts.to_vec(), self.dim, self.p).transpose();
        let coords = |v: &[u64]| -> Vec<u64> {
            let col = Matrix::from_rows(vec![v.to_vec()], self.dim, self.p).transpose();
            let x = basis_mat.solve(&col).expect("vector outside subalgebra span");
            (0..dim).map(|i| x[(i, 0)]).collect()
        };
        let mut table = vec![vec![Sv::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = self.mul_vec(&lifts[i], &lifts[j]);
                assert!(span.contains(&prod), "subspace not multiplicatively closed");
                table[i][j] = sv_from_dense(&coords(&prod));
            }
        }
        let idem = idempotents.iter().map(|e| coords(e)).collect();
        StructAlgebra {
            name: name.to_string(),
            p: self.p,
            dim,
            labels: (0..dim).map(|i| format!("b{i}")).collect(),
            table,
            idempotents: idem,
            vertex_labels,
            tags: None,
        }
    }

    /// Quotient algebra by a two-sided ideal given as a row span.
    /// Returns the quotient and the projection matrix (dim x qdim) sending a
    /// coefficient vector to quotient coordinates.
    pub fn quotient(&self, ideal: &RowSpan, name: &str) -> (StructAlgebra, Box<dyn Fn(&[u64]) -> Vec<u64>>, Vec<Vec<u64>>) {
        // Complement basis: residues of the standard basis, echelonized.
        let mut comp = RowSpan::new(self.dim, self.p);
        let mut reps: Vec<Vec<u64>> = Vec::new();
        for i in 0..self.dim {
            let mut b = vec![0; self.dim];
            b[i] = 1;
            let r = ideal.residue(&b);
            if r.iter().any(|&c| c != 0) && comp.insert(r) {
                let mut rep = vec![0; self.dim];
                rep[i] = 1;
                reps.push(rep);
            }
        }
        let qdim = reps.len();
        // Projection: reduce mod ideal, then solve against complement reps
        // reduced mod ideal.
        let red_reps: Vec<Vec<u64>> = reps.iter().map(|r| ideal.residue(r)).collect();
        let basis_mat = Matrix::from_rows(red_reps, self.dim, self.p).transpose();
        let ideal_cl = ideal.clone();
        let p = self.p;
        let dimn = self.dim;
        let proj = move |v: &[u64]| -> Vec<u64> {
            let r = ideal_cl.residue(v);
            let col = Matrix::from_rows(vec![r], dimn, p).transpose();
            let x = basis_mat.solve(&col).expect("projection solve failed");
            (0..qdim).map(|i| x[(i, 0)]).collect()
        };
        let mut table = vec![vec![Sv::new(); qdim]; qdim];
        for i in 0..qdim {
            for j in 0..qdim {
                let prod = self.mul_vec(&reps[i], &reps[j]);
                table[i][j] = sv_from_dense(&proj(&prod));
            }
        }
        let idem: Vec<Vec<u64>> = self.idempotents.iter().map(|e| proj(e)).collect();
        let q = StructAlgebra {
            name: name.to_string(),
            p: self.p,
            dim: qdim,
            labels: (0..qdim).map(|i| format!("q{i}")).collect(),
            table,
            idempotents: idem,
            vertex_labels: self.vertex_labels.clone(),
            tags: None,
        };
        (q, Box::new(proj), reps)
    }

    /// Minimal polynomial of an element, by linear algebra on its powers.
    pub(crate) fn min_poly(&self, a: &[u64]) -> Poly {
        let mut span = RowSpan::new(self.dim, self.p);
        let mut powers: Vec<Vec<u64>> = Vec::new();
        let mut cur = self.one();
        loop {
            if !span.insert(cur.clone()) {
                // cur is a combination of the earlier powers: solve for it.
                let mat = Matrix::from_rows(powers.clone(), self.dim, self.p).transpose();
                let col = Matrix::from_rows(vec![cur], self.dim, self.p).transpose();
                let x = mat.solve(&col).expect("dependency must be solvable");
                let f = self.fp();
                let mut coeffs: Vec<u64> =
                    (0..powers.len()).map(|i| f.neg(x[(i, 0)])).collect();
                coeffs.push(1);
                return Poly::new(self.p, coeffs);
            }
            powers.push(cur.clone());
            cur = self.mul_vec(&cur, a);
        }
    }

    /// Evaluate a polynomial at an element (Horner).
    pub(crate) fn eval_poly(&self, q: &Poly, a: &[u64]) -> Vec<u64> {
        let f = self.fp();
        let one = self.one();
        let mut acc = vec![0u64; self.dim];
        for &c in q.c.iter().rev() {
            acc = self.mul_vec(&acc, a);
            if c != 0 {
                for i in 0..self.dim {
                    acc[i] = f.add(acc[i], f.mul(c, one[i]));
                }
            }
        }
        acc
    }

    /// Is the algebra commutative?
    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                let mut a = vec![0; self.dim];
                a[i] = 1;
                let mut b = vec![0; self.dim];
                b[j] = 1;
                if self.mul_vec(&a, &b) != self.mul_vec(&b, &a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of searching for a nontrivial idempotent.
pub enum IdempotentSearch {
    /// A nontrivial idempotent (neither 0 nor 1).
    Found(Vec<u64>),
    /// Certified local: the algebra modulo its radical is a field.
    Local,
}

/// Search for a nontrivial idempotent of `alg`, or certify that `alg` is
/// local. Randomized but deterministic for a fixed seed; errors with
/// `Undetermined` when the budget is exhausted without a certificate.
pub fn find_idempotent(alg: &StructAlgebra, rng: &mut Seeded, budget: usize) -> Result<IdempotentSearch> {
    if (alg.dim as u64) >= alg.p {
        return Err(Error::ModulusTooSmall { p: alg.p, dim: alg.dim, what: format!("algebra {}", alg.name) });
    }
    let rad = alg.radical_span();
    let (semi, _proj, reps) = alg.quotient(&rad, "semisimple-quotient");
    if semi.dim == 1 {
        return Ok(IdempotentSearch::Local);
    }
    let commutative = semi.is_commutative();
    for _ in 0..budget {
        let x: Vec<u64> = (0..semi.dim).map(|_| rng.scalar(semi.p)).collect();
        let m = semi.min_poly(&x);
        match coprime_split(&m, rng, budget) {
            Split::Coprime(u, v) => {
                let epoly = crt_idempotent(&u, &v);
                let e_semi = semi.eval_poly(&epoly, &x);
                debug_assert_eq!(semi.mul_vec(&e_semi, &e_semi), e_semi);
                if e_semi.iter().all(|&c| c == 0) || e_semi == semi.one() {
                    continue;
                }
                // Lift along the nilpotent radical: a <- 3a^2 - 2a^3.
                let f = alg.fp();
                let mut a = vec![0u64; alg.dim];
                for (i, &c) in e_semi.iter().enumerate() {
                    if c != 0 {
                        for k in 0..alg.dim {
                            a[k] = f.add(a[k], f.mul(c, reps[i][k]));
                        }
                    }
                }
                let mut iters = 0;
                loop {
                    let a2 = alg.mul_vec(&a, &a);
                    if a2 == a {
                        break;
                    }
                    let a3 = alg.mul_vec(&a2, &a);
                    for k in 0..alg.dim {
                        a[k] = f.sub(f.mul(3, a2[k]), f.mul(2, a3[k]));
                    }
                    iters += 1;
                    if iters > 64 {
                        return Err(Error::Undetermined("idempotent lifting did not converge".into()));
                    }
                }
                if a.iter().all(|&c| c == 0) || a == alg.one() {
                    continue;
                }
                return Ok(IdempotentSearch::Found(a));
            }
            Split::Irreducible => {
                if commutative && m.deg() == semi.dim {
                    // F_p[x] is the whole semisimple quotient and is a field.
                    return Ok(IdempotentSearch::Local);
                }
            }
            Split::PrimePower => {}
        }
    }
    Err(Error::Undetermined(format!(
        "no idempotent found in {} within budget; split undetermined",
        alg.name
    )))
}

/// A right module over a `StructAlgebra`, as one action matrix per basis
/// element (row-vector convention: `v * action[i]` is the action of `b_i`).
#[derive(Debug, Clone)]
pub struct StructModule {
    pub alg: Arc<StructAlgebra>,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl StructModule {
    pub fn zero(alg: Arc<StructAlgebra>) -> Self {
        let action = (0..alg.dim).map(|_| Matrix::zeros(0, 0, alg.p)).collect();
        StructModule { alg, dim: 0, action }
    }

    /// The projective right module `e A` for an idempotent `e`, with the
    /// inclusion of its basis into `A` (rows).
    pub fn projective(alg: &Arc<StructAlgebra>, e: &[u64]) -> (Self, Vec<Vec<u64>>) {
        let mut span = RowSpan::new(alg.dim, alg.p);
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for i in 0..alg.dim {
            let mut b = vec![0; alg.dim];
            b[i] = 1;
            let eb = alg.mul_vec(e, &b);
            if span.insert(eb.clone()) {
                basis.push(eb);
            }
        }
        let dim = basis.len();
        let basis_mat = Matrix::from_rows(basis.clone(), alg.dim, alg.p).transpose();
        let mut action = Vec::with_capacity(alg.dim);
        for k in 0..alg.dim {
            let mut bk = vec![0; alg.dim];
            bk[k] = 1;
            let mut img = Matrix::zeros(dim, alg.dim, alg.p);
            for (r, v) in basis.iter().enumerate() {
                let w = alg.mul_vec(v, &bk);
                img.row_mut(r).copy_from_slice(&w);
            }
            // Express images in the submodule basis.
            let x = basis_mat.solve(&img.transpose()).expect("eA closed under action");
            action.push(x.transpose());
        }
        (StructModule { alg: Arc::clone(alg), dim, action }, basis)
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[u64]) -> Matrix {
        let f = Fp { p: self.alg.p };
        let mut m = Matrix::zeros(self.dim, self.dim, self.alg.p);
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for r in 0..self.dim {
                for col in 0..self.dim {
                    let v = &mut m[(r, col)];
                    *v = f.add(*v, f.mul(c, self.action[i][(r, col)]));
                }
            }
        }
        m
    }

    /// Row span of `M * U` for a subspace `U` of the algebra.
    pub fn image_of(&self, u: &RowSpan) -> RowSpan {
        let mut out = RowSpan::new(self.dim, self.alg.p);
        for a in u.basis_rows() {
            let m = self.act(a);
            for r in 0..m.rows {
                out.insert(m.row(r).to_vec());
                if out.dim() == self.dim {
                    return out;
                }
            }
        }
        out
    }

    /// Validate the module axioms (algebra map property), for tests.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.alg.dim {
            for j in 0..self.alg.dim {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(self.dim, self.dim, self.alg.p);
                for &(k, c) in &self.alg.table[i][j] {
                    rhs = rhs.add(&self.action[k as usize].scale(c));
                }
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "module action violates relation b{i} * b{j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 32003;

    /// k[t]/(t^2): one vertex, nilpotent radical.
    fn dual_numbers() -> StructAlgebra {
        let table = vec![
            vec![vec![(0, 1)], vec![(1, 1)]],
            vec![vec![(1, 1)], vec![]],
        ];
        StructAlgebra {
            name: "k[t]/(t2)".into(),
            p: P,
            dim: 2,
            labels: vec!["e".into(), "t".into()],
            table,
            idempotents: vec![vec![1, 0]],
            vertex_labels: vec!["*".into()],
            tags: None,
        }
    }

    /// k x k: two orthogonal idempotents.
    fn two_points() -> StructAlgebra {
        let table = vec![
            vec![vec![(0, 1)], vec![]],
            vec![vec![], vec![(1, 1)]],
        ];
        StructAlgebra {
            name: "kxk".into(),
            p: P,
            dim: 2,
            labels: vec!["e1".into(), "e2".into()],
            table,
            idempotents: vec![vec![1, 0], vec![0, 1]],
            vertex_labels: vec!["1".into(), "2".into()],
            tags: None,
        }
    }

    #[test]
    fn validates_and_finds_radical() {
        let a = dual_numbers();
        a.validate().unwrap();
        let rad = a.radical_span();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[0, 1]));

        let b = two_points();
        b.validate().unwrap();
        assert_eq!(b.radical_span().dim(), 0);
    }

    #[test]
    fn local_algebra_certified() {
        let a = dual_numbers();
        let mut rng = Seeded::new(1);
        match find_idempotent(&a, &mut rng, 16).unwrap() {
            IdempotentSearch::Local => {}
            _ => panic!("dual numbers are local"),
        }
    }

    #[test]
    fn product_algebra_splits() {
        let a = two_points();
        let mut rng = Seeded::new(1);
        match find_idempotent(&a, &mut rng, 32).unwrap() {
            IdempotentSearch::Found(e) => {
                assert_eq!(a.mul_vec(&e, &e), e);
                assert!(e != a.one());
                assert!(e.iter().any(|&c| c != 0));
            }
            _ => panic!("k x k has nontrivial idempotents"),
        }
    }

    #[test]
    fn min_poly_of_idempotent() {
        let a = two_points();
        // e1 has minimal polynomial t^2 - t.
        let m = a.min_poly(&[1, 0]);
        assert_eq!(m, Poly::new(P, vec![0, P - 1, 1]).monic());
    }

    #[test]
    fn projective_module_over_corner() {
        let a = Arc::new(two_points());
        let (pm, _basis) = StructModule::projective(&a, &[1u64, 0]);
        assert_eq!(pm.dim, 1);
        pm.validate().unwrap();
    }
}
