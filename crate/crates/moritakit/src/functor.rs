//! K-linear functors and natural transformations.
//!
//! A [`KFunctor`] is an object map plus one matrix per hom space. Natural
//! transformations are computed as the kernel of the naturality linear
//! system; isomorphism testing searches that space for a componentwise
//! invertible element — exhaustively over finite fields, by bounded
//! enumeration and seeded rational sampling over Q.

use crate::category::{tensor_product, KCategory, Morphism};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Ring, Scalar, ScalarEmbedding};
use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct KFunctor {
    src: Arc<KCategory>,
    tgt: Arc<KCategory>,
    obj_map: Vec<usize>,
    hom_maps: Vec<Mat>,
}

impl KFunctor {
    pub fn new(
        src: Arc<KCategory>,
        tgt: Arc<KCategory>,
        obj_map: Vec<usize>,
        hom_maps: Vec<Mat>,
    ) -> Result<KFunctor> {
        let n = src.n_objects();
        if obj_map.len() != n || hom_maps.len() != n * n {
            return Err(Error::InvalidFunctor("map tables have wrong length".into()));
        }
        if obj_map.iter().any(|&x| x >= tgt.n_objects()) {
            return Err(Error::IndexOutOfRange("object map".into()));
        }
        if src.ring() != tgt.ring() {
            return Err(Error::RingMismatch("functor endpoints".into()));
        }
        let f = KFunctor {
            src,
            tgt,
            obj_map,
            hom_maps,
        };
        for x in 0..n {
            for y in 0..n {
                let m = f.hom_map(x, y);
                let rows = f.tgt.hom_dim(f.obj_map[x], f.obj_map[y]);
                let cols = f.src.hom_dim(x, y);
                if (m.rows, m.cols) != (rows, cols) {
                    return Err(Error::InvalidFunctor(format!(
                        "hom map ({},{}) has shape {}x{}, expected {}x{}",
                        f.src.object_name(x),
                        f.src.object_name(y),
                        m.rows,
                        m.cols,
                        rows,
                        cols
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(cat: Arc<KCategory>) -> KFunctor {
        let n = cat.n_objects();
        let ring = cat.ring().clone();
        let hom_maps = (0..n * n)
            .map(|i| Mat::identity(&ring, cat.hom_dim(i / n, i % n)))
            .collect();
        KFunctor {
            src: cat.clone(),
            tgt: cat,
            obj_map: (0..n).collect(),
            hom_maps,
        }
    }

    pub fn src(&self) -> &Arc<KCategory> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<KCategory> {
        &self.tgt
    }

    pub fn obj_image(&self, x: usize) -> usize {
        self.obj_map[x]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn hom_map(&self, x: usize, y: usize) -> &Mat {
        &self.hom_maps[x * self.src.n_objects() + y]
    }

    pub fn apply(&self, m: &Morphism) -> Morphism {
        let coeffs = self.hom_map(m.src, m.tgt).apply(&m.coeffs, self.src.ring());
        Morphism {
            src: self.obj_map[m.src],
            tgt: self.obj_map[m.tgt],
            coeffs,
        }
    }

    /// Functoriality: identities to identities and composition on basis pairs.
    pub fn validate(&self) -> Result<()> {
        for x in 0..self.src.n_objects() {
            let img = self.apply(&self.src.identity(x));
            if img != self.tgt.identity(self.obj_map[x]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} not preserved",
                    self.src.object_name(x)
                )));
            }
        }
        let n = self.src.n_objects();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for a in 0..self.src.hom_dim(y, z) {
                        let g = self.src.basis_morphism(y, z, a);
                        for b in 0..self.src.hom_dim(x, y) {
                            let f = self.src.basis_morphism(x, y, b);
                            let lhs = self.apply(&self.src.compose(&g, &f));
                            let rhs = self.tgt.compose(&self.apply(&g), &self.apply(&f));
                            if lhs != rhs {
                                return Err(Error::InvalidFunctor(format!(
                                    "composition not preserved at ({},{},{}) basis ({a},{b})",
                                    self.src.object_name(x),
                                    self.src.object_name(y),
                                    self.src.object_name(z)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// g ∘ self, requiring self.tgt == g.src structurally.
    pub fn then(&self, g: &KFunctor) -> Result<KFunctor> {
        if self.tgt.as_ref() != g.src.as_ref() {
            return Err(Error::ObjectMismatch("functor composition".into()));
        }
        let n = self.src.n_objects();
        let obj_map: Vec<usize> = (0..n).map(|x| g.obj_map[self.obj_map[x]]).collect();
        let ring = self.src.ring();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                g.hom_map(self.obj_map[x], self.obj_map[y])
                    .mul(self.hom_map(x, y), ring)
            })
            .collect();
        KFunctor::new(self.src.clone(), g.tgt.clone(), obj_map, hom_maps)
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.obj_map.iter().all(|&x| seen.insert(x))
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let seen: std::collections::HashSet<usize> = self.obj_map.iter().copied().collect();
        seen.len() == self.tgt.n_objects()
    }

    /// Every hom matrix square and invertible.
    pub fn is_fully_faithful(&self) -> bool {
        let n = self.src.n_objects();
        (0..n * n).all(|i| self.hom_maps[i].is_invertible(self.src.ring()))
    }

    /// Fully faithful + every target object isomorphic to an image object.
    pub fn is_essentially_surjective(&self, budget: &SearchBudget) -> bool {
        if self.is_surjective_on_objects() {
            return true;
        }
        let images: std::collections::HashSet<usize> = self.obj_map.iter().copied().collect();
        (0..self.tgt.n_objects()).all(|b| {
            images.contains(&b)
                || images
                    .iter()
                    .any(|&a| matches!(find_object_iso(&self.tgt, a, b, budget), SearchOutcome::Found(_)))
        })
    }
}

/// Components of a transformation F0 → F1, one morphism per source object.
#[derive(Clone, Debug, PartialEq)]
pub struct NatTransformation {
    pub components: Vec<Morphism>,
}

impl NatTransformation {
    /// Naturality squares on all basis morphisms.
    pub fn is_natural(&self, f0: &KFunctor, f1: &KFunctor) -> bool {
        let tgt = f0.tgt();
        let n = f0.src().n_objects();
        for x in 0..n {
            for y in 0..n {
                for b in 0..f0.src().hom_dim(x, y) {
                    let f = f0.src().basis_morphism(x, y, b);
                    let lhs = tgt.compose(&self.components[y], &f0.apply(&f));
                    let rhs = tgt.compose(&f1.apply(&f), &self.components[x]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A natural transformation with componentwise inverses.
#[derive(Clone, Debug)]
pub struct NaturalIso {
    pub transformation: NatTransformation,
    pub inverses: Vec<Morphism>,
}

/// Basis of the K-space of natural transformations F0 → F1, computed as the
/// kernel of the stacked naturality equations.
pub fn nat_trans_space(f0: &KFunctor, f1: &KFunctor) -> Result<Vec<NatTransformation>> {
    check_parallel(f0, f1)?;
    let src = f0.src();
    let tgt = f0.tgt();
    let ring = src.ring();
    let n = src.n_objects();
    let comp_dims: Vec<usize> = (0..n)
        .map(|x| tgt.hom_dim(f0.obj_image(x), f1.obj_image(x)))
        .collect();
    let offsets: Vec<usize> = comp_dims
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = comp_dims.iter().sum();
    // Rows: for each (x,y,basis f), the equation η_y∘F0(f) − F1(f)∘η_x = 0.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for b in 0..src.hom_dim(x, y) {
                let f = src.basis_morphism(x, y, b);
                let f0f = f0.apply(&f);
                let f1f = f1.apply(&f);
                // η_y ↦ η_y ∘ F0(f): precomposition matrix.
                let pre = tgt.right_mul_matrix(&f0f, f1.obj_image(y));
                // η_x ↦ F1(f) ∘ η_x: postcomposition matrix.
                let post = tgt.left_mul_matrix(&f1f, f0.obj_image(x));
                let eq_dim = tgt.hom_dim(f0.obj_image(x), f1.obj_image(y));
                for r in 0..eq_dim {
                    let mut row = vec![ring.zero(); total];
                    for c in 0..pre.cols {
                        row[offsets[y] + c] = pre.at(r, c).clone();
                    }
                    for c in 0..post.cols {
                        let cur = row[offsets[x] + c].clone();
                        row[offsets[x] + c] = ring.sub(&cur, post.at(r, c));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(ring, 0, total)
    } else {
        Mat::from_fn(rows.len(), total, |i, j| rows[i][j].clone())
    };
    let kernel = system.kernel_basis(ring);
    Ok(kernel
        .into_iter()
        .map(|v| NatTransformation {
            components: (0..n)
                .map(|x| Morphism {
                    src: f0.obj_image(x),
                    tgt: f1.obj_image(x),
                    coeffs: v[offsets[x]..offsets[x] + comp_dims[x]].to_vec(),
                })
                .collect(),
        })
        .collect())
}

fn check_parallel(f0: &KFunctor, f1: &KFunctor) -> Result<()> {
    if f0.src().as_ref() != f1.src().as_ref() || f0.tgt().as_ref() != f1.tgt().as_ref() {
        return Err(Error::ObjectMismatch("functors are not parallel".into()));
    }
    Ok(())
}

/// Budgets for invertible-element searches over infinite fields.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Cap on deterministic enumeration of {0,±1} coefficient vectors.
    pub enumeration: u64,
    /// Seeded random rational samples after enumeration.
    pub random_trials: u32,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget {
            enumeration: 1 << 16,
            random_trials: 40,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn seeded(seed: u64) -> SearchBudget {
        SearchBudget {
            seed,
            ..SearchBudget::default()
        }
    }
}

/// Outcome of a coefficient-space search.
#[derive(Clone, Debug)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole space was enumerated and nothing was accepted (a decision).
    Empty,
    /// Budget ran out before a decision (infinite field only).
    Exhausted,
}

/// Searches coefficient vectors c ∈ K^dim for one accepted by `try_c`.
/// Finite fields are enumerated exhaustively (a true decision); over Q and
/// its quadratic extensions, {0,1,−1} vectors are enumerated up to the
/// budget and then seeded random samples are drawn.
pub fn search_coefficients<T>(
    ring: &Ring,
    dim: usize,
    budget: &SearchBudget,
    mut try_c: impl FnMut(&[Scalar]) -> Option<T>,
) -> SearchOutcome<T> {
    if dim == 0 {
        return match try_c(&[]) {
            Some(t) => SearchOutcome::Found(t),
            None => SearchOutcome::Empty,
        };
    }
    if let Some(q) = ring.element_count() {
        let total = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(q));
        let total = total.expect("search space size overflow");
        let mut digits = vec![0u128; dim];
        for _ in 0..total {
            let c: Vec<Scalar> = digits.iter().map(|&d| ring.element_at(d)).collect();
            if let Some(t) = try_c(&c) {
                return SearchOutcome::Found(t);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        return SearchOutcome::Empty;
    }
    // Deterministic {0,1,−1} enumeration in base-3 counter order.
    let pool = [ring.zero(), ring.one(), ring.from_i64(-1)];
    let total3 = (0..dim).try_fold(1u64, |acc, _| acc.checked_mul(3));
    let capped = total3.map_or(budget.enumeration, |t| t.min(budget.enumeration));
    let mut digits = vec![0u8; dim];
    for _ in 0..capped {
        let c: Vec<Scalar> = digits.iter().map(|&d| pool[d as usize].clone()).collect();
        if let Some(t) = try_c(&c) {
            return SearchOutcome::Found(t);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < 3 {
                break;
            }
            *d = 0;
        }
    }
    if total3.map_or(false, |t| t <= budget.enumeration) {
        // Even a full sign-pattern enumeration is not a decision over Q;
        // fall through to sampling before giving up.
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_trials {
        let c: Vec<Scalar> = (0..dim)
            .map(|_| match ring {
                Ring::Rationals => {
                    Scalar::Rat(BigRational::from_integer(rng.gen_range(-20i64..=20).into()))
                }
                _ => ring.sample(&mut rng),
            })
            .collect();
        if let Some(t) = try_c(&c) {
            return SearchOutcome::Found(t);
        }
    }
    SearchOutcome::Exhausted
}

/// As [`search_coefficients`], but finite fields are also capped at
/// `finite_cap` candidates (witness searches honor their budget there;
/// isomorphism tests do not use this and stay exhaustive).
pub fn search_coefficients_capped<T>(
    ring: &Ring,
    dim: usize,
    finite_cap: u64,
    budget: &SearchBudget,
    mut try_c: impl FnMut(&[Scalar]) -> Option<T>,
) -> SearchOutcome<T> {
    let Some(q) = ring.element_count() else {
        return search_coefficients(ring, dim, budget, try_c);
    };
    if dim == 0 {
        return match try_c(&[]) {
            Some(t) => SearchOutcome::Found(t),
            None => SearchOutcome::Empty,
        };
    }
    let total = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(q));
    let capped_total = total.map_or(finite_cap as u128, |t| t.min(finite_cap as u128));
    let mut digits = vec![0u128; dim];
    for _ in 0..capped_total {
        let c: Vec<Scalar> = digits.iter().map(|&d| ring.element_at(d)).collect();
        if let Some(t) = try_c(&c) {
            return SearchOutcome::Found(t);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    if total.map_or(false, |t| t <= finite_cap as u128) {
        SearchOutcome::Empty
    } else {
        SearchOutcome::Exhausted
    }
}

/// Searches Hom(a,b) for an invertible morphism.
pub fn find_object_iso(
    cat: &KCategory,
    a: usize,
    b: usize,
    budget: &SearchBudget,
) -> SearchOutcome<Morphism> {
    // An isomorphism a ≅ b forces matching hom dimensions against every
    // object; a cheap sound refutation.
    for z in 0..cat.n_objects() {
        if cat.hom_dim(z, a) != cat.hom_dim(z, b) || cat.hom_dim(a, z) != cat.hom_dim(b, z) {
            return SearchOutcome::Empty;
        }
    }
    let dim = cat.hom_dim(a, b);
    search_coefficients(cat.ring(), dim, budget, |c| {
        let m = Morphism {
            src: a,
            tgt: b,
            coeffs: c.to_vec(),
        };
        cat.invert_morphism(&m).map(|_| m)
    })
}

/// Verdict of [`functor_iso_test`]: sound witness, definite refutation, or
/// an honest budget exhaustion (infinite fields only).
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Iso(NaturalIso),
    No,
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
}

/// Decides whether two parallel functors are naturally isomorphic.
/// Complete over finite fields; over Q the search is budgeted and may
/// return [`IsoVerdict::Inconclusive`].
pub fn functor_iso_test(f0: &KFunctor, f1: &KFunctor, budget: &SearchBudget) -> Result<IsoVerdict> {
    check_parallel(f0, f1)?;
    let tgt = f0.tgt();
    // Componentwise isomorphism needs matching hom dimensions at every
    // object; refute cheaply when they differ.
    for x in 0..f0.src().n_objects() {
        let (a, b) = (f0.obj_image(x), f1.obj_image(x));
        for z in 0..tgt.n_objects() {
            if tgt.hom_dim(z, a) != tgt.hom_dim(z, b) || tgt.hom_dim(a, z) != tgt.hom_dim(b, z) {
                return Ok(IsoVerdict::No);
            }
        }
    }
    let basis = nat_trans_space(f0, f1)?;
    let ring = f0.src().ring();
    let n = f0.src().n_objects();
    let outcome = search_coefficients(ring, basis.len(), budget, |c| {
        let components: Vec<Morphism> = (0..n)
            .map(|x| {
                let mut m = tgt.zero_morphism(f0.obj_image(x), f1.obj_image(x));
                for (bi, coeff) in c.iter().enumerate() {
                    if ring.is_zero(coeff) {
                        continue;
                    }
                    m = tgt.add_mor(&m, &tgt.scale_mor(coeff, &basis[bi].components[x]));
                }
                m
            })
            .collect();
        let mut inverses = Vec::with_capacity(n);
        for comp in &components {
            inverses.push(tgt.invert_morphism(comp)?);
        }
        Some(NaturalIso {
            transformation: NatTransformation { components },
            inverses,
        })
    });
    match outcome {
        SearchOutcome::Found(iso) => {
            debug_assert!(iso.transformation.is_natural(f0, f1));
            Ok(IsoVerdict::Iso(iso))
        }
        SearchOutcome::Empty => Ok(IsoVerdict::No),
        SearchOutcome::Exhausted => Ok(IsoVerdict::Inconclusive),
    }
}

/// F ⊗ G between the tensor-product categories.
pub fn tensor_functor(f: &KFunctor, g: &KFunctor) -> Result<KFunctor> {
    let src = tensor_product(f.src(), g.src())?;
    let tgt = tensor_product(f.tgt(), g.tgt())?;
    let (nf, ng) = (f.src().n_objects(), g.src().n_objects());
    let ngt = g.tgt().n_objects();
    let obj_map: Vec<usize> = (0..nf * ng)
        .map(|i| f.obj_image(i / ng) * ngt + g.obj_image(i % ng))
        .collect();
    let ring = f.src().ring();
    let n = nf * ng;
    let hom_maps = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let (xf, xg) = (x / ng, x % ng);
            let (yf, yg) = (y / ng, y % ng);
            f.hom_map(xf, yf).kron(g.hom_map(xg, yg), ring)
        })
        .collect();
    KFunctor::new(src, tgt, obj_map, hom_maps)
}

/// Base change of a functor along the canonical embedding to `target`.
pub fn functor_scalar_extension(f: &KFunctor, target: &Ring) -> Result<KFunctor> {
    let emb = ScalarEmbedding::canonical(f.src().ring(), target)?;
    let src = crate::category::scalar_extension(f.src(), target)?;
    let tgt = crate::category::scalar_extension(f.tgt(), target)?;
    let hom_maps = (0..src.n_objects() * src.n_objects())
        .map(|i| {
            let n = src.n_objects();
            let m = f.hom_map(i / n, i % n);
            Mat::from_fn(m.rows, m.cols, |r, c| emb.apply(m.at(r, c)))
        })
        .collect();
    KFunctor::new(src, tgt, f.obj_map().to_vec(), hom_maps)
}

/// The functor K → C picking object c (1 ↦ 1_c).
pub fn const_object_functor(tgt: Arc<KCategory>, c: usize) -> Result<KFunctor> {
    let ring = tgt.ring().clone();
    let k = crate::category::ground_category(&ring);
    let col = Mat::col_vec(tgt.identity_coeffs(c));
    KFunctor::new(k, tgt, vec![c], vec![col])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azumaya::Algebra;
    use crate::category::{algebra_as_category, ground_category};

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn identity_functor_validates_and_tests_iso_to_itself() {
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&gf(3), 2)).unwrap();
        let id = KFunctor::identity(m2.clone());
        id.validate().unwrap();
        assert!(id.is_fully_faithful());
        let verdict = functor_iso_test(&id, &id, &SearchBudget::default()).unwrap();
        assert!(verdict.is_iso());
    }

    #[test]
    fn nat_trans_space_of_identity_is_the_center() {
        // Center of M_2 is K: the endo-transformations of id form a line.
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&gf(5), 2)).unwrap();
        let id = KFunctor::identity(m2.clone());
        let basis = nat_trans_space(&id, &id).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_natural(&id, &id));

        let k = ground_category(&Ring::rationals());
        let idk = KFunctor::identity(k);
        assert_eq!(nat_trans_space(&idk, &idk).unwrap().len(), 1);
    }

    #[test]
    fn unit_functor_into_matrix_algebra() {
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&gf(2), 2)).unwrap();
        let unit = const_object_functor(m2, 0).unwrap();
        unit.validate().unwrap();
        assert!(!unit.is_fully_faithful()); // 1-dim into 4-dim
    }

    #[test]
    fn conjugation_is_found_as_natural_iso() {
        // F1 = conjugate of the identity by u = e_12 + e_21 on M_2.
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let id = KFunctor::identity(m2.clone());
        let mut u = m2.zero_morphism(0, 0);
        u.coeffs[1] = ring.one();
        u.coeffs[2] = ring.one();
        let uinv = m2.invert_morphism(&u).unwrap();
        // conj(f) = u∘f∘u^{-1} as a functor hom map.
        let conj_mat = Mat::from_fn(4, 4, |k, b| {
            let f = m2.basis_morphism(0, 0, b);
            let c = m2.compose(&u, &m2.compose(&f, &uinv));
            c.coeffs[k].clone()
        });
        let conj = KFunctor::new(m2.clone(), m2.clone(), vec![0], vec![conj_mat]).unwrap();
        conj.validate().unwrap();
        let verdict = functor_iso_test(&id, &conj, &SearchBudget::default()).unwrap();
        let IsoVerdict::Iso(iso) = verdict else {
            panic!("conjugation must be naturally isomorphic to the identity")
        };
        assert!(iso.transformation.is_natural(&id, &conj));
    }

    #[test]
    fn tensor_functor_of_identities_is_identity() {
        let ring = gf(2);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let k = ground_category(&ring);
        let t = tensor_functor(&KFunctor::identity(k), &KFunctor::identity(m2)).unwrap();
        t.validate().unwrap();
        assert!(t.is_fully_faithful());
    }

    #[test]
    fn functor_composition_and_base_change() {
        let ring = gf(2);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let unit = const_object_functor(m2.clone(), 0).unwrap();
        let idm2 = KFunctor::identity(m2);
        let comp = unit.then(&idm2).unwrap();
        comp.validate().unwrap();
        let gf4 = Ring::galois_field(2, 2, Some(vec![1, 1, 1])).unwrap();
        let ext = functor_scalar_extension(&comp, &gf4).unwrap();
        ext.validate().unwrap();
        assert_eq!(ext.src().ring(), &gf4);
    }

    #[test]
    fn object_iso_dimension_refutation() {
        // In K ⊔ K there is no isomorphism between the two objects'... hom
        // dims match, so search decides; in a category with dim mismatch the
        // refutation is immediate.
        let ring = gf(2);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let k = ground_category(&ring);
        let kk = crate::category::coproduct(&k, &m2).unwrap();
        assert!(matches!(
            find_object_iso(&kk, 0, 1, &SearchBudget::default()),
            SearchOutcome::Empty
        ));
    }
}
