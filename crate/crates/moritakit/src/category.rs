//! Finitely presented K-linear categories.
//!
//! A [`KCategory`] stores a finite object set, the dimension of every hom
//! space, bilinear composition as structure constants, and the identity
//! coefficient vectors. Hom spaces carry a fixed ordered basis and all maps
//! are matrices in those bases; basis orderings after constructions are
//! lexicographic on constituent indices.

use crate::azumaya::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{scalar_vec_add, scalar_vec_is_zero, scalar_vec_scale, Mat};
use crate::scalar::{Ring, Scalar, ScalarEmbedding};
use std::collections::BTreeMap;
use std::sync::Arc;

/// An element of a hom space, as coefficients over the fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    pub coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KCategory {
    ring: Ring,
    objects: Vec<String>,
    hom_dims: Vec<usize>,
    /// For each (x,y,z): the bilinear map Hom(y,z) × Hom(x,y) → Hom(x,z),
    /// flattened as [a·dxy·dxz + b·dxz + k] for g-basis a, f-basis b.
    comp: Vec<Vec<Scalar>>,
    identities: Vec<Vec<Scalar>>,
}

/// Axiom-check result of [`KCategory::validate`]; empty means valid.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl KCategory {
    pub fn new(
        ring: Ring,
        objects: Vec<String>,
        hom_dims: Vec<usize>,
        comp: Vec<Vec<Scalar>>,
        identities: Vec<Vec<Scalar>>,
    ) -> Result<KCategory> {
        let n = objects.len();
        if hom_dims.len() != n * n {
            return Err(Error::InvalidCategory("hom_dims has wrong length".into()));
        }
        if comp.len() != n * n * n {
            return Err(Error::InvalidCategory("comp has wrong length".into()));
        }
        if identities.len() != n {
            return Err(Error::InvalidCategory("identities has wrong length".into()));
        }
        let mut names = std::collections::HashSet::new();
        for o in &objects {
            if !names.insert(o.clone()) {
                return Err(Error::InvalidCategory(format!("duplicate object id {o:?}")));
            }
        }
        let cat = KCategory {
            ring,
            objects,
            hom_dims,
            comp,
            identities,
        };
        for x in 0..n {
            if cat.identities[x].len() != cat.hom_dim(x, x) {
                return Err(Error::InvalidCategory(format!(
                    "identity of {} has wrong length",
                    cat.objects[x]
                )));
            }
            for s in &cat.identities[x] {
                if !cat.ring.contains(s) {
                    return Err(Error::RingMismatch("identity coefficients".into()));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = cat.comp_table(x, y, z);
                    let expect = cat.hom_dim(y, z) * cat.hom_dim(x, y) * cat.hom_dim(x, z);
                    if t.len() != expect {
                        return Err(Error::InvalidCategory(format!(
                            "comp table ({},{},{}) has wrong length",
                            cat.objects[x], cat.objects[y], cat.objects[z]
                        )));
                    }
                    if t.iter().any(|s| !cat.ring.contains(s)) {
                        return Err(Error::RingMismatch("composition constants".into()));
                    }
                }
            }
        }
        Ok(cat)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom_dims[x * self.objects.len() + y]
    }

    pub fn comp_table(&self, x: usize, y: usize, z: usize) -> &[Scalar] {
        let n = self.objects.len();
        &self.comp[x * n * n + y * n + z]
    }

    pub fn identity(&self, x: usize) -> Morphism {
        Morphism {
            src: x,
            tgt: x,
            coeffs: self.identities[x].clone(),
        }
    }

    pub fn identity_coeffs(&self, x: usize) -> &[Scalar] {
        &self.identities[x]
    }

    pub fn zero_morphism(&self, x: usize, y: usize) -> Morphism {
        Morphism {
            src: x,
            tgt: y,
            coeffs: vec![self.ring.zero(); self.hom_dim(x, y)],
        }
    }

    pub fn basis_morphism(&self, x: usize, y: usize, k: usize) -> Morphism {
        let mut m = self.zero_morphism(x, y);
        m.coeffs[k] = self.ring.one();
        m
    }

    /// Composite g∘f of f: x→y and g: y→z.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Morphism {
        assert_eq!(g.src, f.tgt, "morphisms not composable");
        let (x, y, z) = (f.src, f.tgt, g.tgt);
        let (dxy, dxz) = (self.hom_dim(x, y), self.hom_dim(x, z));
        let table = self.comp_table(x, y, z);
        let mut out = vec![self.ring.zero(); dxz];
        for (a, ga) in g.coeffs.iter().enumerate() {
            if self.ring.is_zero(ga) {
                continue;
            }
            for (b, fb) in f.coeffs.iter().enumerate() {
                if self.ring.is_zero(fb) {
                    continue;
                }
                let gf = self.ring.mul(ga, fb);
                let base = a * dxy * dxz + b * dxz;
                for k in 0..dxz {
                    let c = &table[base + k];
                    if self.ring.is_zero(c) {
                        continue;
                    }
                    out[k] = self.ring.add(&out[k], &self.ring.mul(&gf, c));
                }
            }
        }
        Morphism {
            src: x,
            tgt: z,
            coeffs: out,
        }
    }

    pub fn add_mor(&self, a: &Morphism, b: &Morphism) -> Morphism {
        assert_eq!((a.src, a.tgt), (b.src, b.tgt));
        Morphism {
            src: a.src,
            tgt: a.tgt,
            coeffs: scalar_vec_add(&self.ring, &a.coeffs, &b.coeffs),
        }
    }

    pub fn scale_mor(&self, c: &Scalar, a: &Morphism) -> Morphism {
        Morphism {
            src: a.src,
            tgt: a.tgt,
            coeffs: scalar_vec_scale(&self.ring, c, &a.coeffs),
        }
    }

    pub fn mor_is_zero(&self, a: &Morphism) -> bool {
        scalar_vec_is_zero(&self.ring, &a.coeffs)
    }

    /// Matrix of postcomposition (m ∘ −): Hom(w, m.src) → Hom(w, m.tgt).
    pub fn left_mul_matrix(&self, m: &Morphism, w: usize) -> Mat {
        let cols = self.hom_dim(w, m.src);
        let rows = self.hom_dim(w, m.tgt);
        let mut out = Mat::zeros(&self.ring, rows, cols);
        for b in 0..cols {
            let f = self.basis_morphism(w, m.src, b);
            let comp = self.compose(m, &f);
            for k in 0..rows {
                *out.at_mut(k, b) = comp.coeffs[k].clone();
            }
        }
        out
    }

    /// Matrix of precomposition (− ∘ m): Hom(m.tgt, z) → Hom(m.src, z).
    pub fn right_mul_matrix(&self, m: &Morphism, z: usize) -> Mat {
        let cols = self.hom_dim(m.tgt, z);
        let rows = self.hom_dim(m.src, z);
        let mut out = Mat::zeros(&self.ring, rows, cols);
        for a in 0..cols {
            let g = self.basis_morphism(m.tgt, z, a);
            let comp = self.compose(&g, m);
            for k in 0..rows {
                *out.at_mut(k, a) = comp.coeffs[k].clone();
            }
        }
        out
    }

    /// Whether u: x→y has a two-sided inverse, and the inverse if so.
    pub fn invert_morphism(&self, u: &Morphism) -> Option<Morphism> {
        let (x, y) = (u.src, u.tgt);
        // Solve v∘u = 1_x and u∘v = 1_y jointly; both are linear in v.
        let pre = self.right_mul_matrix(u, x); // v ↦ v∘u : Hom(y,x) → Hom(x,x)
        let post = self.left_mul_matrix(u, y); // v ↦ u∘v : Hom(y,x) → Hom(y,y)
        let system = pre.vstack(&post);
        let mut rhs = self.identities[x].clone();
        rhs.extend_from_slice(&self.identities[y]);
        let v = system.solve(&rhs, &self.ring)?;
        Some(Morphism {
            src: y,
            tgt: x,
            coeffs: v,
        })
    }

    /// Report-style axiom check: bilinear composition is given by the
    /// representation, so only associativity and the unit laws can fail.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                let id_y = self.identity(y);
                let id_x = self.identity(x);
                for b in 0..self.hom_dim(x, y) {
                    let f = self.basis_morphism(x, y, b);
                    if self.compose(&id_y, &f) != f {
                        violations.push(format!(
                            "left unit law fails on basis {} of Hom({},{})",
                            b, self.objects[x], self.objects[y]
                        ));
                    }
                    if self.compose(&f, &id_x) != f {
                        violations.push(format!(
                            "right unit law fails on basis {} of Hom({},{})",
                            b, self.objects[x], self.objects[y]
                        ));
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for a in 0..self.hom_dim(y, z) {
                            let h = self.basis_morphism(y, z, a);
                            for b in 0..self.hom_dim(x, y) {
                                let g = self.basis_morphism(x, y, b);
                                let hg = self.compose(&h, &g);
                                for c in 0..self.hom_dim(w, x) {
                                    let f = self.basis_morphism(w, x, c);
                                    let lhs = self.compose(&hg, &f);
                                    let rhs = self.compose(&h, &self.compose(&g, &f));
                                    if lhs != rhs {
                                        violations.push(format!(
                                            "associativity fails at ({},{},{},{}) basis ({a},{b},{c})",
                                            self.objects[w],
                                            self.objects[x],
                                            self.objects[y],
                                            self.objects[z]
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

/// Incremental constructor: declare objects and hom dimensions, then fill
/// identities and basis-pair products.
pub struct CategoryBuilder {
    ring: Ring,
    objects: Vec<String>,
    hom_dims: Vec<usize>,
    comp: Vec<Vec<Scalar>>,
    identities: Vec<Vec<Scalar>>,
}

impl CategoryBuilder {
    pub fn new(ring: Ring, objects: Vec<String>, hom_dims: Vec<usize>) -> CategoryBuilder {
        let n = objects.len();
        assert_eq!(hom_dims.len(), n * n);
        let dim = |x: usize, y: usize| hom_dims[x * n + y];
        let mut comp = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp.push(vec![ring.zero(); dim(y, z) * dim(x, y) * dim(x, z)]);
                }
            }
        }
        let identities = (0..n).map(|x| vec![ring.zero(); dim(x, x)]).collect();
        CategoryBuilder {
            ring,
            objects,
            hom_dims,
            comp,
            identities,
        }
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.hom_dims[x * self.objects.len() + y]
    }

    pub fn set_identity(&mut self, x: usize, coeffs: Vec<Scalar>) {
        assert_eq!(coeffs.len(), self.dim(x, x));
        self.identities[x] = coeffs;
    }

    /// Product of basis elements: (a-th of Hom(y,z)) ∘ (b-th of Hom(x,y)).
    pub fn set_comp(&mut self, x: usize, y: usize, z: usize, a: usize, b: usize, out: Vec<Scalar>) {
        let n = self.objects.len();
        let (dxy, dxz) = (self.dim(x, y), self.dim(x, z));
        assert_eq!(out.len(), dxz);
        let table = &mut self.comp[x * n * n + y * n + z];
        let base = a * dxy * dxz + b * dxz;
        table[base..base + dxz].clone_from_slice(&out);
    }

    pub fn build(self) -> Result<KCategory> {
        KCategory::new(
            self.ring,
            self.objects,
            self.hom_dims,
            self.comp,
            self.identities,
        )
    }
}

/// The one-object category carrying an algebra as its endomorphisms.
pub fn algebra_as_category(alg: &Algebra) -> Result<Arc<KCategory>> {
    alg.validate()?;
    let ring = alg.ring().clone();
    let d = alg.dim();
    let mut b = CategoryBuilder::new(ring.clone(), vec!["o".into()], vec![d]);
    for a in 0..d {
        for c in 0..d {
            b.set_comp(0, 0, 0, a, c, alg.mult_basis(a, c).to_vec());
        }
    }
    b.set_identity(0, alg.unit().to_vec());
    Ok(Arc::new(b.build()?))
}

/// The ground field as a one-object category.
pub fn ground_category(ring: &Ring) -> Arc<KCategory> {
    let mut b = CategoryBuilder::new(ring.clone(), vec!["o".into()], vec![1]);
    b.set_comp(0, 0, 0, 0, 0, vec![ring.one()]);
    b.set_identity(0, vec![ring.one()]);
    Arc::new(b.build().expect("ground category is well-formed"))
}

// --- free K-category on a finite presentation ---

/// A finite ordinary category: objects, named arrows (including the
/// identities), and a total composition table on composable pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePresentation {
    pub objects: Vec<String>,
    /// (name, src, tgt) triples; names are unique.
    pub arrows: Vec<(String, String, String)>,
    /// Object → identity arrow name.
    pub identities: BTreeMap<String, String>,
    /// (g, f) → g∘f on composable pairs (tgt f = src g).
    pub compose: BTreeMap<(String, String), String>,
}

impl FinitePresentation {
    fn arrow(&self, name: &str) -> Option<&(String, String, String)> {
        self.arrows.iter().find(|(n, _, _)| n == name)
    }

    fn check(&self) -> Result<()> {
        let err = |m: String| Err(Error::InvalidPresentation(m));
        let mut names = std::collections::HashSet::new();
        for (n, s, t) in &self.arrows {
            if !names.insert(n.clone()) {
                return err(format!("duplicate arrow {n:?}"));
            }
            if !self.objects.contains(s) || !self.objects.contains(t) {
                return err(format!("arrow {n:?} has unknown endpoints"));
            }
        }
        for o in &self.objects {
            let Some(id) = self.identities.get(o) else {
                return err(format!("object {o:?} has no identity arrow"));
            };
            match self.arrow(id) {
                Some((_, s, t)) if s == o && t == o => {}
                _ => return err(format!("identity of {o:?} is not an endo-arrow")),
            }
        }
        let composable = |g: &(String, String, String), f: &(String, String, String)| f.2 == g.1;
        for (gn, gs, gt) in &self.arrows {
            for (fn_, fs, ft) in &self.arrows {
                if ft != gs {
                    continue;
                }
                let Some(h) = self.compose.get(&(gn.clone(), fn_.clone())) else {
                    return err(format!("missing composite {gn:?}∘{fn_:?}"));
                };
                match self.arrow(h) {
                    Some((_, hs, ht)) if hs == fs && ht == gt => {}
                    _ => return err(format!("composite {gn:?}∘{fn_:?} has wrong endpoints")),
                }
            }
        }
        // Unit laws.
        for (n, s, t) in &self.arrows {
            let id_t = &self.identities[t];
            let id_s = &self.identities[s];
            if self.compose[&(id_t.clone(), n.clone())] != *n
                || self.compose[&(n.clone(), id_s.clone())] != *n
            {
                return err(format!("unit law fails at arrow {n:?}"));
            }
        }
        // Associativity.
        for h in &self.arrows {
            for g in &self.arrows {
                if !composable(h, g) {
                    continue;
                }
                let hg = self.compose[&(h.0.clone(), g.0.clone())].clone();
                for f in &self.arrows {
                    if !composable(g, f) {
                        continue;
                    }
                    let gf = self.compose[&(g.0.clone(), f.0.clone())].clone();
                    if self.compose[&(hg.clone(), f.0.clone())]
                        != self.compose[&(h.0.clone(), gf)]
                    {
                        return err(format!(
                            "associativity fails at ({:?},{:?},{:?})",
                            h.0, g.0, f.0
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Free K-category: hom spaces are freely spanned by the arrow sets,
/// composition extends the table bilinearly.
pub fn free_kcategory(ring: &Ring, pres: &FinitePresentation) -> Result<Arc<KCategory>> {
    pres.check()?;
    let objects = pres.objects.clone();
    let n = objects.len();
    let oi = |name: &String| objects.iter().position(|o| o == name).unwrap();
    // Arrow basis per (src,tgt), in arrow-list order.
    let mut basis: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for (name, s, t) in &pres.arrows {
        basis.entry((oi(s), oi(t))).or_default().push(name.clone());
    }
    let dim_of = |x: usize, y: usize| basis.get(&(x, y)).map_or(0, |v| v.len());
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = dim_of(x, y);
        }
    }
    let mut b = CategoryBuilder::new(ring.clone(), objects.clone(), hom_dims);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let Some(gs) = basis.get(&(y, z)) else { continue };
                let Some(fs) = basis.get(&(x, y)) else { continue };
                let outs = basis.get(&(x, z));
                for (a, g) in gs.iter().enumerate() {
                    for (bidx, f) in fs.iter().enumerate() {
                        let h = &pres.compose[&(g.clone(), f.clone())];
                        let k = outs
                            .expect("composite lands in a declared hom set")
                            .iter()
                            .position(|x| x == h)
                            .expect("composite is a declared arrow");
                        let mut out = vec![ring.zero(); dim_of(x, z)];
                        out[k] = ring.one();
                        b.set_comp(x, y, z, a, bidx, out);
                    }
                }
            }
        }
    }
    for (x, o) in objects.iter().enumerate() {
        let id = &pres.identities[o];
        let k = basis[&(x, x)].iter().position(|a| a == id).unwrap();
        let mut coeffs = vec![ring.zero(); dim_of(x, x)];
        coeffs[k] = ring.one();
        b.set_identity(x, coeffs);
    }
    Ok(Arc::new(b.build()?))
}

// --- monoidal structure and base constructions ---

/// Tensor product of K-categories over the same ring: objects are pairs,
/// hom spaces are tensor products with the plain bilinear composition rule.
pub fn tensor_product(a: &KCategory, b: &KCategory) -> Result<Arc<KCategory>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(format!(
            "tensor of categories over {} and {}",
            a.ring().name(),
            b.ring().name()
        )));
    }
    let ring = a.ring().clone();
    let (na, nb) = (a.n_objects(), b.n_objects());
    let n = na * nb;
    let objects: Vec<String> = (0..n)
        .map(|i| format!("({},{})", a.object_name(i / nb), b.object_name(i % nb)))
        .collect();
    let dim = |x: usize, y: usize| a.hom_dim(x / nb, y / nb) * b.hom_dim(x % nb, y % nb);
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = dim(x, y);
        }
    }
    let mut bl = CategoryBuilder::new(ring.clone(), objects, hom_dims);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            for z in 0..n {
                let (za, zb) = (z / nb, z % nb);
                let (dyz_b, dxy_b, dxz_b) = (
                    b.hom_dim(yb, zb),
                    b.hom_dim(xb, yb),
                    b.hom_dim(xb, zb),
                );
                let dxz_a = a.hom_dim(xa, za);
                if dim(x, y) == 0 || dim(y, z) == 0 || dim(x, z) == 0 {
                    continue;
                }
                for ga in 0..a.hom_dim(ya, za) {
                    for gb in 0..dyz_b {
                        let gidx = ga * dyz_b + gb;
                        for fa in 0..a.hom_dim(xa, ya) {
                            let ca = &a.comp_table(xa, ya, za)
                                [ga * a.hom_dim(xa, ya) * dxz_a + fa * dxz_a..][..dxz_a];
                            for fb in 0..dxy_b {
                                let fidx = fa * dxy_b + fb;
                                let cb = &b.comp_table(xb, yb, zb)
                                    [gb * dxy_b * dxz_b + fb * dxz_b..][..dxz_b];
                                let mut out = vec![ring.zero(); dim(x, z)];
                                for (ka, va) in ca.iter().enumerate() {
                                    if ring.is_zero(va) {
                                        continue;
                                    }
                                    for (kb, vb) in cb.iter().enumerate() {
                                        if ring.is_zero(vb) {
                                            continue;
                                        }
                                        out[ka * dxz_b + kb] = ring.mul(va, vb);
                                    }
                                }
                                bl.set_comp(x, y, z, gidx, fidx, out);
                            }
                        }
                    }
                }
            }
        }
    }
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        let ia = a.identity_coeffs(xa);
        let ib = b.identity_coeffs(xb);
        let mut coeffs = vec![ring.zero(); dim(x, x)];
        for (p, va) in ia.iter().enumerate() {
            for (q, vb) in ib.iter().enumerate() {
                coeffs[p * b.hom_dim(xb, xb) + q] = ring.mul(va, vb);
            }
        }
        bl.set_identity(x, coeffs);
    }
    Ok(Arc::new(bl.build()?))
}

/// Opposite category: hom(x,y) := hom(y,x) with the same basis and the
/// transposed composition. An involution on presentations.
pub fn opposite(a: &KCategory) -> Arc<KCategory> {
    let ring = a.ring().clone();
    let n = a.n_objects();
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = a.hom_dim(y, x);
        }
    }
    let mut b = CategoryBuilder::new(ring, a.objects().to_vec(), hom_dims);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // op-compose of (a-th of A(z,y)) after (b-th of A(y,x)) is the
                // A-composite (b-th) ∘_A (a-th) read in A(z,x).
                for aa in 0..a.hom_dim(z, y) {
                    for bb in 0..a.hom_dim(y, x) {
                        let g = a.basis_morphism(y, x, bb);
                        let f = a.basis_morphism(z, y, aa);
                        let comp = a.compose(&g, &f);
                        b.set_comp(x, y, z, aa, bb, comp.coeffs);
                    }
                }
            }
        }
    }
    for x in 0..n {
        b.set_identity(x, a.identity_coeffs(x).to_vec());
    }
    Arc::new(b.build().expect("opposite of a well-formed category"))
}

/// Base change along a canonical embedding K → L: same objects and hom
/// dimensions, structure constants embedded.
pub fn scalar_extension(a: &KCategory, target: &Ring) -> Result<Arc<KCategory>> {
    let emb = ScalarEmbedding::canonical(a.ring(), target)?;
    let n = a.n_objects();
    let comp = (0..n * n * n)
        .map(|i| {
            let (x, rem) = (i / (n * n), i % (n * n));
            let (y, z) = (rem / n, rem % n);
            a.comp_table(x, y, z).iter().map(|s| emb.apply(s)).collect()
        })
        .collect();
    let identities = (0..n)
        .map(|x| a.identity_coeffs(x).iter().map(|s| emb.apply(s)).collect())
        .collect();
    Ok(Arc::new(KCategory::new(
        target.clone(),
        a.objects().to_vec(),
        a.hom_dims.clone(),
        comp,
        identities,
    )?))
}

/// Renames `name` by prefixing '~' until it avoids everything in `taken`.
pub fn fresh_name(name: &str, taken: &[String]) -> String {
    let mut candidate = name.to_string();
    while taken.iter().any(|t| t == &candidate) {
        candidate = format!("~{candidate}");
    }
    candidate
}

/// Disjoint union A ⊔ B; B-side objects are renamed with '~' on collision.
pub fn coproduct(a: &KCategory, b: &KCategory) -> Result<Arc<KCategory>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("coproduct over different rings".into()));
    }
    let ring = a.ring().clone();
    let (na, nb) = (a.n_objects(), b.n_objects());
    let mut objects = a.objects().to_vec();
    for o in b.objects() {
        let name = fresh_name(o, &objects);
        objects.push(name);
    }
    let n = na + nb;
    let side = |x: usize| if x < na { (0, x) } else { (1, x - na) };
    let dim = |x: usize, y: usize| {
        let ((sx, ix), (sy, iy)) = (side(x), side(y));
        if sx != sy {
            0
        } else if sx == 0 {
            a.hom_dim(ix, iy)
        } else {
            b.hom_dim(ix, iy)
        }
    };
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = dim(x, y);
        }
    }
    let mut bl = CategoryBuilder::new(ring.clone(), objects, hom_dims);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let ((sx, ix), (sy, iy), (sz, iz)) = (side(x), side(y), side(z));
                if sx != sy || sy != sz {
                    continue;
                }
                let cat: &KCategory = if sx == 0 { a } else { b };
                for aa in 0..cat.hom_dim(iy, iz) {
                    for bb in 0..cat.hom_dim(ix, iy) {
                        let g = cat.basis_morphism(iy, iz, aa);
                        let f = cat.basis_morphism(ix, iy, bb);
                        let comp = cat.compose(&g, &f);
                        bl.set_comp(x, y, z, aa, bb, comp.coeffs);
                    }
                }
            }
        }
    }
    for x in 0..n {
        let (sx, ix) = side(x);
        let cat: &KCategory = if sx == 0 { a } else { b };
        bl.set_identity(x, cat.identity_coeffs(ix).to_vec());
    }
    Ok(Arc::new(bl.build()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azumaya::Algebra;

    pub(crate) fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn ground_category_is_valid() {
        let k = ground_category(&Ring::rationals());
        assert!(k.is_valid());
        assert_eq!(k.hom_dim(0, 0), 1);
    }

    #[test]
    fn matrix_algebra_category_valid_and_unit_violation_detected() {
        let ring = gf(3);
        let m2 = Algebra::matrix_algebra(&ring, 2);
        let cat = algebra_as_category(&m2).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 4);
        assert!(cat.is_valid());

        // Break the identity: e_11 alone is not a unit.
        let mut bad = (*cat).clone();
        let mut id = vec![ring.zero(); 4];
        id[0] = ring.one();
        bad.identities[0] = id;
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.contains("unit law")));
    }

    #[test]
    fn gf4_as_gf2_algebra_category() {
        let ring = gf(2);
        let gf4 = Algebra::field_extension_algebra(&ring, &[1, 1, 1]).unwrap();
        let cat = algebra_as_category(&gf4).unwrap();
        assert_eq!(cat.hom_dim(0, 0), 2);
        assert!(cat.is_valid());
    }

    pub(crate) fn interval_presentation() -> FinitePresentation {
        let mut compose = BTreeMap::new();
        let arrows = vec![
            ("id0".to_string(), "0".to_string(), "0".to_string()),
            ("id1".to_string(), "1".to_string(), "1".to_string()),
            ("u".to_string(), "0".to_string(), "1".to_string()),
            ("v".to_string(), "1".to_string(), "0".to_string()),
        ];
        let table = [
            ("id0", "id0", "id0"),
            ("id1", "id1", "id1"),
            ("u", "id0", "u"),
            ("id1", "u", "u"),
            ("v", "id1", "v"),
            ("id0", "v", "v"),
            ("u", "v", "id1"),
            ("v", "u", "id0"),
        ];
        for (g, f, h) in table {
            compose.insert((g.to_string(), f.to_string()), h.to_string());
        }
        FinitePresentation {
            objects: vec!["0".into(), "1".into()],
            arrows,
            identities: [("0".into(), "id0".into()), ("1".into(), "id1".into())].into(),
            compose,
        }
    }

    #[test]
    fn free_category_on_interval() {
        let cat = free_kcategory(&Ring::rationals(), &interval_presentation()).unwrap();
        assert!(cat.is_valid());
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cat.hom_dim(x, y), 1);
            }
        }
        // u∘v = id1 with coefficient 1.
        let u = cat.basis_morphism(0, 1, 0);
        let v = cat.basis_morphism(1, 0, 0);
        assert_eq!(cat.compose(&u, &v), cat.identity(1));
        assert!(cat.invert_morphism(&u).is_some());
    }

    #[test]
    fn bad_presentation_rejected() {
        let mut pres = interval_presentation();
        pres.compose
            .insert(("u".to_string(), "v".to_string()), "v".to_string());
        assert!(matches!(
            free_kcategory(&Ring::rationals(), &pres),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn tensor_unit_and_dims() {
        let ring = gf(3);
        let k = ground_category(&ring);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let t = tensor_product(&k, &m2).unwrap();
        assert_eq!(t.hom_dim(0, 0), 4);
        assert!(t.is_valid());
        let tt = tensor_product(&m2, &m2).unwrap();
        assert_eq!(tt.hom_dim(0, 0), 16);
        assert!(tt.is_valid());
        let q = ground_category(&Ring::rationals());
        assert!(tensor_product(&k, &q).is_err());
    }

    #[test]
    fn opposite_is_involutive_and_valid() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let op = opposite(&m2);
        assert!(op.is_valid());
        assert_eq!(opposite(&op), m2);
        // e_12∘e_21 = e_11 in M_2; in the opposite it is e_22.
        // Basis order is row-major: e11,e12,e21,e22 → indices 0,1,2,3.
        let e12 = op.basis_morphism(0, 0, 1);
        let e21 = op.basis_morphism(0, 0, 2);
        let prod = op.compose(&e12, &e21);
        let mut expect = vec![ring.zero(); 4];
        expect[3] = ring.one();
        assert_eq!(prod.coeffs, expect);
    }

    #[test]
    fn scalar_extension_to_gf4_and_qi() {
        let m2q = algebra_as_category(&Algebra::matrix_algebra(&Ring::rationals(), 2)).unwrap();
        let qi = Ring::gaussian_rationals();
        let ext = scalar_extension(&m2q, &qi).unwrap();
        assert_eq!(ext.ring(), &qi);
        assert_eq!(ext.hom_dim(0, 0), 4);
        assert!(ext.is_valid());

        let e1 = crate::morita::generator_category(crate::morita::Generator::E1, &gf(2)).unwrap();
        let gf4 = Ring::galois_field(2, 2, Some(vec![1, 1, 1])).unwrap();
        let ext = scalar_extension(&e1, &gf4).unwrap();
        assert_eq!(ext.hom_dim(0, 0), 2);
        assert!(ext.is_valid());
    }

    #[test]
    fn coproduct_blocks() {
        let ring = gf(2);
        let k = ground_category(&ring);
        let kk = coproduct(&k, &k).unwrap();
        assert_eq!(kk.n_objects(), 2);
        assert_eq!(kk.hom_dim(0, 1), 0);
        assert_eq!(kk.hom_dim(1, 0), 0);
        assert_eq!(kk.object_name(1), "~o");
        assert!(kk.is_valid());
    }
}
