//! Algebra-level Brauer calculus: sandwich-map certification of Azumaya
//! algebras, class multiplication and inverse, and Morita-triviality
//! witnesses.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Ring, Scalar};

/// A finite-dimensional associative unital algebra by structure constants:
/// e_i·e_j = Σ_k mult[i·d² + j·d + k]·e_k.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    ring: Ring,
    dim: usize,
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(ring: Ring, dim: usize, mult: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Algebra> {
        if mult.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra("mult tensor has wrong length".into()));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra("unit vector has wrong length".into()));
        }
        if mult.iter().chain(unit.iter()).any(|s| !ring.contains(s)) {
            return Err(Error::RingMismatch("algebra constants".into()));
        }
        Ok(Algebra { ring, dim, mult, unit })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// e_i·e_j as a coefficient vector.
    pub fn mult_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim]
    }

    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ring.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if ring.is_zero(bj) {
                    continue;
                }
                let c = ring.mul(ai, bj);
                for (k, m) in self.mult_basis(i, j).iter().enumerate() {
                    if ring.is_zero(m) {
                        continue;
                    }
                    out[k] = ring.add(&out[k], &ring.mul(&c, m));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication x ↦ a·x.
    pub fn lmul_mat(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(&self.ring, self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = vec![self.ring.zero(); self.dim];
            e[j] = self.ring.one();
            let col = self.mul_vec(a, &e);
            for k in 0..self.dim {
                *m.at_mut(k, j) = col[k].clone();
            }
        }
        m
    }

    /// Matrix of right multiplication x ↦ x·a.
    pub fn rmul_mat(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(&self.ring, self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = vec![self.ring.zero(); self.dim];
            e[j] = self.ring.one();
            let col = self.mul_vec(&e, a);
            for k in 0..self.dim {
                *m.at_mut(k, j) = col[k].clone();
            }
        }
        m
    }

    /// Associativity and the two unit laws on basis triples.
    pub fn validate(&self) -> Result<()> {
        let ring = &self.ring;
        let basis = |i: usize| {
            let mut v = vec![ring.zero(); self.dim];
            v[i] = ring.one();
            v
        };
        for i in 0..self.dim {
            let e = basis(i);
            if self.mul_vec(&self.unit, &e) != e || self.mul_vec(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails at basis {i}")));
            }
            for j in 0..self.dim {
                let ej = basis(j);
                let eij = self.mul_vec(&e, &ej);
                for k in 0..self.dim {
                    let ek = basis(k);
                    let lhs = self.mul_vec(&eij, &ek);
                    let rhs = self.mul_vec(&e, &self.mul_vec(&ej, &ek));
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails at basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> Algebra {
        let mut mult = Vec::with_capacity(self.mult.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                mult.extend_from_slice(self.mult_basis(j, i));
            }
        }
        Algebra {
            ring: self.ring.clone(),
            dim: self.dim,
            mult,
            unit: self.unit.clone(),
        }
    }

    /// Componentwise tensor A ⊗_K B; basis (i,j) ↦ i·dim(B) + j.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("tensor of algebras".into()));
        }
        let ring = &self.ring;
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut mult = vec![ring.zero(); d * d * d];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let row = (i * db + j) * d + (k * db + l);
                        let ma = self.mult_basis(i, k);
                        let mb = other.mult_basis(j, l);
                        for (m, va) in ma.iter().enumerate() {
                            if ring.is_zero(va) {
                                continue;
                            }
                            for (n, vb) in mb.iter().enumerate() {
                                if ring.is_zero(vb) {
                                    continue;
                                }
                                mult[row * d + m * db + n] = ring.mul(va, vb);
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![ring.zero(); d];
        for (i, ua) in self.unit.iter().enumerate() {
            for (j, ub) in other.unit.iter().enumerate() {
                unit[i * db + j] = ring.mul(ua, ub);
            }
        }
        Algebra::new(ring.clone(), d, mult, unit)
    }

    // --- stock constructors ---

    /// K itself.
    pub fn ground(ring: &Ring) -> Algebra {
        Algebra {
            ring: ring.clone(),
            dim: 1,
            mult: vec![ring.one()],
            unit: vec![ring.one()],
        }
    }

    /// M_n(K) with the matrix-unit basis e_11, e_12, …, e_nn (row-major);
    /// e_ij∘e_kl = δ_jk·e_il.
    pub fn matrix_algebra(ring: &Ring, n: usize) -> Algebra {
        let d = n * n;
        let mut mult = vec![ring.zero(); d * d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if j != k {
                            continue;
                        }
                        let a = i * n + j;
                        let b = k * n + l;
                        let out = i * n + l;
                        mult[(a * d + b) * d + out] = ring.one();
                    }
                }
            }
        }
        let mut unit = vec![ring.zero(); d];
        for i in 0..n {
            unit[i * n + i] = ring.one();
        }
        Algebra {
            ring: ring.clone(),
            dim: d,
            mult,
            unit,
        }
    }

    /// GF(p^n) viewed as an n-dimensional GF(p)-algebra with basis
    /// 1, t, …, t^{n−1}; `modulus` low-to-high, monic, length n+1.
    pub fn field_extension_algebra(ring: &Ring, modulus: &[u64]) -> Result<Algebra> {
        let Ring::GaloisField { p, modulus: m } = ring else {
            return Err(Error::InvalidAlgebra(
                "field_extension_algebra needs a prime field".into(),
            ));
        };
        if m.len() != 2 {
            return Err(Error::InvalidAlgebra("base must be a prime field".into()));
        }
        let ext = Ring::galois_field(*p, modulus.len() - 1, Some(modulus.to_vec()))?;
        Self::from_extension_ring(&ext)
    }

    /// An extension field (GF(p^n) or Q[t]/(f)) as an algebra over its prime
    /// subfield, basis 1, t, …, t^{n−1}.
    pub fn from_extension_ring(ext: &Ring) -> Result<Algebra> {
        let base = ext.prime_subfield();
        let n = ext.extension_degree();
        let coords = |s: &Scalar| -> Vec<Scalar> {
            match s {
                Scalar::Gf(v) => v.iter().map(|&c| base.from_i64(c as i64)).collect(),
                Scalar::Quad(q) => q.iter().map(|r| Scalar::Rat(r.clone())).collect(),
                Scalar::Rat(r) => vec![Scalar::Rat(r.clone())],
            }
        };
        let basis_elem = |i: usize| -> Scalar {
            let t = match ext {
                Ring::GaloisField { .. } => {
                    if n == 1 {
                        return ext.one();
                    }
                    let mut v = smallvec::smallvec![0u64; n];
                    v[i] = 1;
                    Scalar::Gf(v)
                }
                Ring::QuadraticField { .. } => {
                    let mut q = [num::BigRational::from_integer(0.into()), num::BigRational::from_integer(0.into())];
                    q[i] = num::BigRational::from_integer(1.into());
                    Scalar::Quad(q)
                }
                Ring::Rationals => ext.one(),
            };
            t
        };
        let mut mult = vec![base.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = ext.mul(&basis_elem(i), &basis_elem(j));
                let c = coords(&prod);
                mult[(i * n + j) * n..(i * n + j + 1) * n].clone_from_slice(&c);
            }
        }
        let unit = coords(&ext.one());
        Algebra::new(base, n, mult, unit)
    }

    /// The split algebra K × K (basis of orthogonal idempotents).
    pub fn split_pair(ring: &Ring) -> Algebra {
        let mut mult = vec![ring.zero(); 8];
        mult[0] = ring.one(); // e0·e0 = e0
        mult[7] = ring.one(); // e1·e1 = e1
        Algebra {
            ring: ring.clone(),
            dim: 2,
            mult,
            unit: vec![ring.one(), ring.one()],
        }
    }

    /// Dual numbers K[x]/(x²), basis {1, x}.
    pub fn dual_numbers(ring: &Ring) -> Algebra {
        let mut mult = vec![ring.zero(); 8];
        mult[0] = ring.one(); // 1·1 = 1
        mult[1 * 2 + 1] = ring.one(); // 1·x = x  (index (0,1) → coeff of e1)
        mult[(2 + 0) * 2 + 1] = ring.one(); // x·1 = x
        Algebra {
            ring: ring.clone(),
            dim: 2,
            mult,
            unit: vec![ring.one(), ring.zero()],
        }
    }

    /// The quaternion algebra (a,b)_K with basis {1, i, j, k}: i² = a,
    /// j² = b, ij = k = −ji. Hamilton's quaternions are (−1,−1)_Q.
    pub fn quaternion(ring: &Ring, a: i64, b: i64) -> Algebra {
        let d = 4;
        let mut mult = vec![ring.zero(); d * d * d];
        let mut set = |x: usize, y: usize, k: usize, c: i64| {
            mult[(x * d + y) * d + k] = ring.from_i64(c);
        };
        for x in 0..4 {
            set(0, x, x, 1);
            if x > 0 {
                set(x, 0, x, 1);
            }
        }
        set(1, 1, 0, a); //  i·i = a
        set(1, 2, 3, 1); //  i·j = k
        set(1, 3, 2, a); //  i·k = a·j
        set(2, 1, 3, -1); // j·i = −k
        set(2, 2, 0, b); //  j·j = b
        set(2, 3, 1, -b); // j·k = −b·i
        set(3, 1, 2, -a); // k·i = −a·j
        set(3, 2, 1, b); //  k·j = b·i
        set(3, 3, 0, -(a * b)); // k·k = −ab
        Algebra {
            ring: ring.clone(),
            dim: d,
            mult,
            unit: {
                let mut u = vec![ring.zero(); 4];
                u[0] = ring.one();
                u
            },
        }
    }
}

/// Whether the linear map `f` (dim_tgt × dim_src) is a unital algebra
/// homomorphism src → tgt, checked on basis pairs.
pub fn is_algebra_hom(src: &Algebra, tgt: &Algebra, f: &Mat) -> bool {
    let ring = src.ring();
    if f.rows != tgt.dim() || f.cols != src.dim() {
        return false;
    }
    if f.apply(src.unit(), ring) != tgt.unit() {
        return false;
    }
    for i in 0..src.dim() {
        let mut ei = vec![ring.zero(); src.dim()];
        ei[i] = ring.one();
        let fi = f.apply(&ei, ring);
        for j in 0..src.dim() {
            let mut ej = vec![ring.zero(); src.dim()];
            ej[j] = ring.one();
            let lhs = f.apply(&src.mul_vec(&ei, &ej), ring);
            let rhs = tgt.mul_vec(&fi, &f.apply(&ej, ring));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The relabeling A ⊗ B → B ⊗ A, (i,j) ↦ (j,i), as a matrix.
pub fn tensor_swap_matrix(ring: &Ring, da: usize, db: usize) -> Mat {
    let d = da * db;
    let mut m = Mat::zeros(ring, d, d);
    for i in 0..da {
        for j in 0..db {
            *m.at_mut(j * da + i, i * db + j) = ring.one();
        }
    }
    m
}

/// The K-linear map A ⊗ A^op → End_K(A), a⊗b ↦ (x ↦ a·x·b), as a
/// dim² × dim² matrix. Row index (k,l) is the (e_l ↦ e_k)-entry of the
/// endomorphism; column index (i,j) is the basis tensor e_i ⊗ e_j.
pub fn sandwich_map(alg: &Algebra) -> Result<Mat> {
    alg.validate().map_err(|e| match e {
        Error::InvalidAlgebra(m) => Error::InvalidAlgebra(m),
        other => other,
    })?;
    let ring = alg.ring();
    let d = alg.dim();
    let mut m = Mat::zeros(ring, d * d, d * d);
    for i in 0..d {
        let mut ei = vec![ring.zero(); d];
        ei[i] = ring.one();
        for j in 0..d {
            let mut ej = vec![ring.zero(); d];
            ej[j] = ring.one();
            let col = i * d + j;
            for l in 0..d {
                let mut el = vec![ring.zero(); d];
                el[l] = ring.one();
                let img = alg.mul_vec(&alg.mul_vec(&ei, &el), &ej);
                for (k, v) in img.iter().enumerate() {
                    *m.at_mut(k * d + l, col) = v.clone();
                }
            }
        }
    }
    Ok(m)
}

/// The rank evidence behind an Azumaya verdict.
#[derive(Clone, Debug)]
pub enum AzumayaCertificate {
    /// Sandwich map bijective; the inverse matrix re-validates without a
    /// rank computation.
    Bijective { inverse: Mat },
    /// Rank-deficient; the kernel vector is a nonzero element of A⊗A^op
    /// killed by the sandwich map.
    Deficient { rank: usize, kernel: Vec<Scalar> },
}

pub fn azumaya_certificate(alg: &Algebra) -> Result<AzumayaCertificate> {
    let s = sandwich_map(alg)?;
    let ring = alg.ring();
    match s.inverse(ring) {
        Some(inverse) => Ok(AzumayaCertificate::Bijective { inverse }),
        None => {
            let rank = s.rank(ring);
            let kernel = s.kernel_basis(ring).into_iter().next().expect("deficient");
            Ok(AzumayaCertificate::Deficient { rank, kernel })
        }
    }
}

/// Azumaya over a field: the sandwich map has full rank dim².
pub fn is_azumaya(alg: &Algebra) -> Result<bool> {
    Ok(matches!(
        azumaya_certificate(alg)?,
        AzumayaCertificate::Bijective { .. }
    ))
}

/// A Brauer-class representative: an algebra with a stored bijectivity
/// certificate for its sandwich map.
#[derive(Clone, Debug)]
pub struct BrauerElement {
    pub algebra: Algebra,
    pub certificate: Mat,
}

impl BrauerElement {
    pub fn new(algebra: Algebra) -> Result<BrauerElement> {
        match azumaya_certificate(&algebra)? {
            AzumayaCertificate::Bijective { inverse } => Ok(BrauerElement {
                algebra,
                certificate: inverse,
            }),
            AzumayaCertificate::Deficient { rank, .. } => Err(Error::NotAzumaya(format!(
                "sandwich rank {rank} < {}",
                algebra.dim() * algebra.dim()
            ))),
        }
    }
}

/// Class multiplication: tensor product, re-certified.
pub fn brauer_mul(a: &Algebra, b: &Algebra) -> Result<BrauerElement> {
    if !is_azumaya(a)? {
        return Err(Error::NotAzumaya("left factor".into()));
    }
    if !is_azumaya(b)? {
        return Err(Error::NotAzumaya("right factor".into()));
    }
    BrauerElement::new(a.tensor(b)?)
}

/// Class inverse: the opposite algebra, re-certified.
pub fn brauer_inv(a: &Algebra) -> Result<BrauerElement> {
    if !is_azumaya(a)? {
        return Err(Error::NotAzumaya("argument".into()));
    }
    BrauerElement::new(a.opposite())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn stock_algebras_validate() {
        let ring = Ring::prime_field(3).unwrap();
        for alg in [
            Algebra::ground(&ring),
            Algebra::matrix_algebra(&ring, 2),
            Algebra::matrix_algebra(&ring, 3),
            Algebra::split_pair(&ring),
            Algebra::dual_numbers(&ring),
            Algebra::quaternion(&q(), -1, -1),
            Algebra::quaternion(&q(), -1, -3),
            Algebra::field_extension_algebra(&Ring::prime_field(2).unwrap(), &[1, 1, 1]).unwrap(),
            Algebra::from_extension_ring(&Ring::gaussian_rationals()).unwrap(),
        ] {
            alg.validate().expect("stock algebra is associative unital");
        }
    }

    #[test]
    fn sandwich_ground_is_identity() {
        let s = sandwich_map(&Algebra::ground(&q())).unwrap();
        assert_eq!(s, Mat::identity(&q(), 1));
    }

    #[test]
    fn sandwich_full_rank_matrix_algebra() {
        let ring = Ring::prime_field(3).unwrap();
        let m2 = Algebra::matrix_algebra(&ring, 2);
        let s = sandwich_map(&m2).unwrap();
        assert_eq!((s.rows, s.cols), (16, 16));
        assert_eq!(s.rank(&ring), 16);
        assert!(is_azumaya(&m2).unwrap());
    }

    #[test]
    fn split_pair_is_not_azumaya() {
        let ring = Ring::prime_field(2).unwrap();
        let kk = Algebra::split_pair(&ring);
        let cert = azumaya_certificate(&kk).unwrap();
        match cert {
            AzumayaCertificate::Deficient { rank, kernel } => {
                assert!(rank < 4);
                let s = sandwich_map(&kk).unwrap();
                assert!(crate::linalg::scalar_vec_is_zero(&ring, &s.apply(&kernel, &ring)));
            }
            _ => panic!("K×K must be rank-deficient"),
        }
    }

    #[test]
    fn gf4_over_gf2_is_not_azumaya() {
        let gf2 = Ring::prime_field(2).unwrap();
        let gf4 = Algebra::field_extension_algebra(&gf2, &[1, 1, 1]).unwrap();
        assert!(!is_azumaya(&gf4).unwrap());
    }

    #[test]
    fn hamilton_quaternions_are_azumaya() {
        let h = Algebra::quaternion(&q(), -1, -1);
        assert!(is_azumaya(&h).unwrap());
        assert!(is_azumaya(&Algebra::matrix_algebra(&q(), 3)).unwrap());
    }

    #[test]
    fn sandwich_is_algebra_hom_even_when_not_azumaya() {
        // A ⊗ A^op → End_K(A) is multiplicative regardless of Azumaya-ness.
        for alg in [
            Algebra::split_pair(&q()),
            Algebra::quaternion(&q(), -1, -1),
            Algebra::dual_numbers(&q()),
        ] {
            let s = sandwich_map(&alg).unwrap();
            let src = alg.tensor(&alg.opposite()).unwrap();
            let end = Algebra::matrix_algebra(&q(), alg.dim());
            assert!(is_algebra_hom(&src, &end, &s));
        }
    }

    #[test]
    fn brauer_arithmetic_units() {
        let ring = Ring::prime_field(5).unwrap();
        let m2 = Algebra::matrix_algebra(&ring, 2);
        let k = Algebra::ground(&ring);
        let prod = brauer_mul(&m2, &k).unwrap();
        assert_eq!(prod.algebra.dim(), 4);
        let inv = brauer_inv(&m2).unwrap();
        assert_eq!(inv.algebra.dim(), 4);
        assert!(brauer_mul(&Algebra::split_pair(&ring), &k).is_err());
        // dim(A⊗B) = dim A · dim B
        let h = Algebra::quaternion(&q(), -1, -1);
        let hh = brauer_mul(&h, &h).unwrap();
        assert_eq!(hh.algebra.dim(), 16);
    }

    #[test]
    fn tensor_swap_is_an_algebra_iso() {
        let a = Algebra::quaternion(&q(), -1, -1);
        let b = Algebra::matrix_algebra(&q(), 2);
        let ab = a.tensor(&b).unwrap();
        let ba = b.tensor(&a).unwrap();
        let swap = tensor_swap_matrix(&q(), a.dim(), b.dim());
        assert!(is_algebra_hom(&ab, &ba, &swap));
        assert!(swap.is_invertible(&q()));
    }
}
