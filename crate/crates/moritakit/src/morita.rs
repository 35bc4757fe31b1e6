//! The Morita-equivalence decision procedure and the explicit homotopical
//! constructions around it: generator categories, pushout along the
//! interval inclusion, mapping cylinders, cylinder objects, saturation
//! witnesses, the represented homotopy-map calculus, and the
//! bimodule/functor dictionary.

use crate::category::{
    coproduct, free_kcategory, fresh_name, ground_category, tensor_product, CategoryBuilder,
    FinitePresentation, KCategory, Morphism,
};
use crate::envelopes::{
    materialize_full_subcategory, SatFunctor, SatObject, SatView, WordMor,
};
use crate::error::{Error, Result};
use crate::functor::{
    functor_iso_test, search_coefficients, IsoVerdict, KFunctor, NaturalIso, SearchBudget,
    SearchOutcome,
};
use crate::linalg::{Mat, SpanBuilder};
use crate::scalar::{Ring, Scalar};
use std::collections::BTreeMap;
use std::sync::Arc;

// --- generator categories ---

/// The finitely presented categories generating the model structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// The final category on one object, realized as K.
    Bullet,
    /// Two objects, one non-identity arrow 0 → 1.
    OneArrow,
    /// Two objects, a parallel pair 0 ⇉ 1.
    ParallelPair,
    /// Two objects, one isomorphism u: 0 → 1.
    IsoInterval,
    /// One object with a free idempotent e = e².
    E1,
    /// Universal retract: p: o → r, i: r → o, p∘i = 1_r.
    R1,
    /// Universal direct sum: o_1, o_2 and s with i_k, p_k.
    S2,
    /// The zero K-category: one object with End = 0.
    Zero,
}

/// Presentation of the interval category 𝐈 (two objects, one iso).
pub fn interval_presentation() -> FinitePresentation {
    let arrows = vec![
        ("id0".to_string(), "0".to_string(), "0".to_string()),
        ("id1".to_string(), "1".to_string(), "1".to_string()),
        ("u".to_string(), "0".to_string(), "1".to_string()),
        ("uinv".to_string(), "1".to_string(), "0".to_string()),
    ];
    let table = [
        ("id0", "id0", "id0"),
        ("id1", "id1", "id1"),
        ("u", "id0", "u"),
        ("id1", "u", "u"),
        ("uinv", "id1", "uinv"),
        ("id0", "uinv", "uinv"),
        ("u", "uinv", "id1"),
        ("uinv", "u", "id0"),
    ];
    FinitePresentation {
        objects: vec!["0".into(), "1".into()],
        arrows,
        identities: [("0".into(), "id0".into()), ("1".into(), "id1".into())].into(),
        compose: table
            .iter()
            .map(|(g, f, h)| ((g.to_string(), f.to_string()), h.to_string()))
            .collect(),
    }
}

fn one_arrow_presentation(parallel: bool) -> FinitePresentation {
    let mut arrows = vec![
        ("id0".to_string(), "0".to_string(), "0".to_string()),
        ("id1".to_string(), "1".to_string(), "1".to_string()),
        ("a".to_string(), "0".to_string(), "1".to_string()),
    ];
    if parallel {
        arrows.push(("b".to_string(), "0".to_string(), "1".to_string()));
    }
    let mut compose = BTreeMap::new();
    for (n, _, _) in &arrows {
        match n.as_str() {
            "id0" => {
                compose.insert(("id0".to_string(), "id0".to_string()), "id0".to_string());
            }
            "id1" => {
                compose.insert(("id1".to_string(), "id1".to_string()), "id1".to_string());
            }
            other => {
                compose.insert((other.to_string(), "id0".to_string()), other.to_string());
                compose.insert(("id1".to_string(), other.to_string()), other.to_string());
            }
        }
    }
    FinitePresentation {
        objects: vec!["0".into(), "1".into()],
        arrows,
        identities: [("0".into(), "id0".into()), ("1".into(), "id1".into())].into(),
        compose,
    }
}

/// Materializes a generator with its fixed basis and normal forms.
pub fn generator_category(g: Generator, ring: &Ring) -> Result<Arc<KCategory>> {
    Ok(match g {
        Generator::Bullet => ground_category(ring),
        Generator::OneArrow => free_kcategory(ring, &one_arrow_presentation(false))?,
        Generator::ParallelPair => free_kcategory(ring, &one_arrow_presentation(true))?,
        Generator::IsoInterval => free_kcategory(ring, &interval_presentation())?,
        Generator::Zero => {
            let b = CategoryBuilder::new(ring.clone(), vec!["o".into()], vec![0]);
            Arc::new(b.build()?)
        }
        Generator::E1 => {
            // End(o) = K[e]/(e²−e), basis {1, e}.
            let mut b = CategoryBuilder::new(ring.clone(), vec!["o".into()], vec![2]);
            let one = |k: usize| {
                let mut v = vec![ring.zero(); 2];
                v[k] = ring.one();
                v
            };
            b.set_comp(0, 0, 0, 0, 0, one(0)); // 1∘1 = 1
            b.set_comp(0, 0, 0, 0, 1, one(1)); // 1∘e = e
            b.set_comp(0, 0, 0, 1, 0, one(1)); // e∘1 = e
            b.set_comp(0, 0, 0, 1, 1, one(1)); // e∘e = e
            b.set_identity(0, one(0));
            Arc::new(b.build()?)
        }
        Generator::R1 => {
            // Objects o, r; End(o) basis {1_o, w = i∘p}; normal form w² = w.
            let dims = vec![2, 1, 1, 1]; // (o,o) (o,r) (r,o) (r,r)
            let mut b = CategoryBuilder::new(ring.clone(), vec!["o".into(), "r".into()], dims);
            let e = |k: usize, d: usize| {
                let mut v = vec![ring.zero(); d];
                v[k] = ring.one();
                v
            };
            b.set_comp(0, 0, 0, 0, 0, e(0, 2)); // 1∘1
            b.set_comp(0, 0, 0, 0, 1, e(1, 2)); // 1∘w
            b.set_comp(0, 0, 0, 1, 0, e(1, 2)); // w∘1
            b.set_comp(0, 0, 0, 1, 1, e(1, 2)); // w∘w = w
            b.set_comp(0, 0, 1, 0, 0, e(0, 1)); // p∘1 = p
            b.set_comp(0, 0, 1, 0, 1, e(0, 1)); // p∘w = p
            b.set_comp(0, 1, 0, 0, 0, e(1, 2)); // i∘p = w
            b.set_comp(0, 1, 1, 0, 0, e(0, 1)); // 1_r∘p = p
            b.set_comp(1, 0, 0, 0, 0, e(0, 1)); // 1∘i = i
            b.set_comp(1, 0, 0, 1, 0, e(0, 1)); // w∘i = i
            b.set_comp(1, 0, 1, 0, 0, e(0, 1)); // p∘i = 1_r
            b.set_comp(1, 1, 0, 0, 0, e(0, 1)); // i∘1_r = i
            b.set_comp(1, 1, 1, 0, 0, e(0, 1)); // 1_r∘1_r
            b.set_identity(0, e(0, 2));
            b.set_identity(1, e(0, 1));
            Arc::new(b.build()?)
        }
        Generator::S2 => {
            // Objects o1, o2, s; End(s) basis {u1 = i1p1, u2 = i2p2}.
            let names = vec!["o1".to_string(), "o2".to_string(), "s".to_string()];
            // dims indexed by (x,y) with x row: rows o1,o2,s.
            let dims = vec![
                1, 0, 1, // o1→o1, o1→o2, o1→s
                0, 1, 1, // o2→*
                1, 1, 2, // s→o1, s→o2, s→s
            ];
            let mut b = CategoryBuilder::new(ring.clone(), names, dims);
            let e = |k: usize, d: usize| {
                let mut v = vec![ring.zero(); d];
                v[k] = ring.one();
                v
            };
            for k in 0..2 {
                let o = k; // object index of o_{k+1}
                b.set_comp(o, o, o, 0, 0, e(0, 1)); // 1∘1
                b.set_comp(o, o, 2, 0, 0, e(0, 1)); // i_k∘1 = i_k
                b.set_comp(o, 2, o, 0, 0, e(0, 1)); // p_k∘i_k = 1
                b.set_comp(2, o, o, 0, 0, e(0, 1)); // 1∘p_k = p_k
                b.set_comp(o, 2, 2, k, 0, e(0, 1)); // u_k∘i_k = i_k
                b.set_comp(2, o, 2, 0, 0, e(k, 2)); // i_k∘p_k = u_k
                b.set_comp(2, 2, o, 0, k, e(0, 1)); // p_k∘u_k = p_k
                for a in 0..2 {
                    // u_a∘u_b = δ_ab u_a
                    b.set_comp(2, 2, 2, a, a, e(a, 2));
                }
            }
            b.set_identity(0, e(0, 1));
            b.set_identity(1, e(0, 1));
            let mut id_s = vec![ring.zero(); 2];
            id_s[0] = ring.one();
            id_s[1] = ring.one();
            b.set_identity(2, id_s);
            Arc::new(b.build()?)
        }
    })
}

/// The localizing functor R_1: E(1) → R(1), e ↦ i∘p.
pub fn retract_generator_functor(ring: &Ring) -> Result<KFunctor> {
    let e1 = generator_category(Generator::E1, ring)?;
    let r1 = generator_category(Generator::R1, ring)?;
    // o ↦ o; End map sends 1 ↦ 1_o, e ↦ w.
    KFunctor::new(e1, r1, vec![0], vec![Mat::identity(ring, 2)])
}

/// The localizing functor S_2: K ⊔ K → S(2).
pub fn sum_generator_functor(ring: &Ring) -> Result<KFunctor> {
    let k = ground_category(ring);
    let kk = coproduct(&k, &k)?;
    let s2 = generator_category(Generator::S2, ring)?;
    let mut hom_maps = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            if x == y {
                // 1 ↦ 1_{o_k}
                hom_maps.push(Mat::identity(ring, 1));
            } else {
                hom_maps.push(Mat::zeros(ring, 0, 0));
            }
        }
    }
    KFunctor::new(kk, s2, vec![0, 1], hom_maps)
}

// --- the Morita decision procedure ---

/// Every hom matrix of F invertible (square and full rank).
pub fn is_fully_faithful(f: &KFunctor) -> bool {
    f.is_fully_faithful()
}

/// The evidence behind a full-faithfulness failure.
#[derive(Clone, Debug)]
pub struct FfViolation {
    pub src: String,
    pub tgt: String,
    pub src_dim: usize,
    pub tgt_dim: usize,
    /// A kernel vector of the hom matrix when the failure is rank
    /// deficiency rather than a dimension mismatch.
    pub kernel: Option<Vec<Scalar>>,
}

/// None when F is fully faithful, otherwise the first violation.
pub fn ff_certificate(f: &KFunctor) -> Option<FfViolation> {
    let n = f.src().n_objects();
    for x in 0..n {
        for y in 0..n {
            let m = f.hom_map(x, y);
            let violation = |kernel| FfViolation {
                src: f.src().object_name(x).to_string(),
                tgt: f.src().object_name(y).to_string(),
                src_dim: m.cols,
                tgt_dim: m.rows,
                kernel,
            };
            if m.rows != m.cols {
                return Some(violation(None));
            }
            if !m.is_invertible(f.src().ring()) {
                let kernel = m.kernel_basis(f.src().ring()).into_iter().next();
                return Some(violation(kernel));
            }
        }
    }
    None
}

/// One summand of a trace-ideal witness: a composite through an image
/// object, scaled so the terms sum to the identity.
#[derive(Clone, Debug)]
pub struct GenerationTerm {
    pub image_index: usize,
    pub to_image: WordMor,
    pub from_image: WordMor,
}

/// For one base object y: 1_y = Σ from_image ∘ to_image.
#[derive(Clone, Debug)]
pub struct GenerationWitness {
    pub object: usize,
    pub terms: Vec<GenerationTerm>,
}

impl GenerationWitness {
    /// Re-validates the witness by composing and summing, no search.
    pub fn check(&self, view: &SatView) -> bool {
        let cat = view.base();
        let mut acc = cat.zero_morphism(self.object, self.object);
        for t in &self.terms {
            let prod = view.compose(&t.from_image, &t.to_image);
            if prod.src.len() != 1 || prod.tgt.len() != 1 {
                return false;
            }
            acc = cat.add_mor(&acc, prod.entry(0, 0));
        }
        acc == cat.identity(self.object)
    }
}

/// Decides additive generation: for every base object y of the view, 1_y
/// must lie in the trace ideal spanned by composites through the images,
/// closed under both End(y)-actions; the closure is iterated to a fixed
/// point (capped by dim End(y), where growth must stop).
pub fn additively_generates(images: &[SatObject], view: &SatView) -> Result<bool> {
    Ok(generation_witnesses(images, view)?.is_some())
}

/// As [`additively_generates`], returning per-object witnesses on success.
pub fn generation_witnesses(
    images: &[SatObject],
    view: &SatView,
) -> Result<Option<Vec<GenerationWitness>>> {
    let cat = view.base();
    let ring = cat.ring();
    let mut witnesses = Vec::new();
    for y in 0..cat.n_objects() {
        let y_obj = SatObject::base(cat, y);
        let end_dim = cat.hom_dim(y, y);
        // Terms g∘f with f: (y,1) → s, g: s → (y,1), as End(y) vectors.
        let mut terms: Vec<GenerationTerm> = Vec::new();
        let mut vectors: Vec<Vec<Scalar>> = Vec::new();
        let mut span = SpanBuilder::new(ring, end_dim);
        for (si, s) in images.iter().enumerate() {
            let to_hom = view.hom(&y_obj, s)?;
            let from_hom = view.hom(s, &y_obj)?;
            for f in &to_hom.basis {
                for g in &from_hom.basis {
                    let prod = view.compose(g, f);
                    let coeffs = prod.entry(0, 0).coeffs.clone();
                    if span.insert(&coeffs) {
                        terms.push(GenerationTerm {
                            image_index: si,
                            to_image: f.clone(),
                            from_image: g.clone(),
                        });
                        vectors.push(coeffs);
                    }
                }
            }
        }
        // Two-sided closure under End(y); each product stays a single
        // composite through an image: a∘(g∘f)∘b = (a∘g)∘(f∘b).
        for _ in 0..end_dim {
            let mut grew = false;
            let current: Vec<GenerationTerm> = terms.clone();
            for t in &current {
                for k in 0..end_dim {
                    let a = cat.basis_morphism(y, y, k);
                    let mut a_wm = WordMor::zero(cat, vec![y], vec![y]);
                    *a_wm.entry_mut(0, 0) = a;
                    for (left, right) in [(true, false), (false, true)] {
                        let (from_image, to_image) = if left {
                            (view.compose(&a_wm, &t.from_image), t.to_image.clone())
                        } else if right {
                            (t.from_image.clone(), view.compose(&t.to_image, &a_wm))
                        } else {
                            unreachable!()
                        };
                        let prod = view.compose(&from_image, &to_image);
                        let coeffs = prod.entry(0, 0).coeffs.clone();
                        if span.insert(&coeffs) {
                            terms.push(GenerationTerm {
                                image_index: t.image_index,
                                to_image,
                                from_image,
                            });
                            vectors.push(coeffs);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let identity = cat.identity_coeffs(y).to_vec();
        if !span.contains(&identity) {
            return Ok(None);
        }
        // Extract 1_y = Σ c_j·(g_j∘f_j) and fold the scalars into g_j.
        let gens = Mat::from_cols(ring, end_dim, &vectors);
        let coeffs = gens
            .solve(&identity, ring)
            .expect("span membership was just checked");
        let mut picked = Vec::new();
        for (j, c) in coeffs.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            picked.push(GenerationTerm {
                image_index: terms[j].image_index,
                to_image: terms[j].to_image.clone(),
                from_image: WordMor::scale(cat, c, &terms[j].from_image),
            });
        }
        let witness = GenerationWitness { object: y, terms: picked };
        debug_assert!(witness.check(view));
        witnesses.push(witness);
    }
    Ok(Some(witnesses))
}

/// Full faithfulness at the saturation level: the matrix from Hom(x,y) to
/// the demanded hom basis of (Fx, Fy) is invertible for every pair.
pub fn is_fully_faithful_sat(f: &SatFunctor) -> Result<bool> {
    let n = f.src().n_objects();
    let ring = f.src().ring();
    for x in 0..n {
        for y in 0..n {
            let hom = f.view().hom(f.obj_image(x), f.obj_image(y))?;
            let cols = f.src().hom_dim(x, y);
            let mut m = Mat::zeros(ring, hom.dim(), cols);
            for c in 0..cols {
                let Some(coords) = hom.coords(f.basis_image(x, y, c)) else {
                    return Ok(false);
                };
                for (r, v) in coords.into_iter().enumerate() {
                    *m.at_mut(r, c) = v;
                }
            }
            if !m.is_invertible(ring) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The decision: F is a Morita equivalence iff it is fully faithful and
/// its image additively generates the saturation of the target.
pub fn is_morita_equivalence(f: &KFunctor) -> Result<bool> {
    if !f.is_fully_faithful() {
        return Ok(false);
    }
    let view = SatView::new(f.tgt().clone());
    let images = functor_image_objects(f);
    additively_generates(&images, &view)
}

fn functor_image_objects(f: &KFunctor) -> Vec<SatObject> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..f.src().n_objects() {
        if seen.insert(f.obj_image(x)) {
            out.push(SatObject::base(f.tgt(), f.obj_image(x)));
        }
    }
    out
}

/// Morita-equivalence test for a functor already landing in a view.
pub fn is_morita_equivalence_sat(f: &SatFunctor) -> Result<bool> {
    if !is_fully_faithful_sat(f)? {
        return Ok(false);
    }
    let mut images: Vec<SatObject> = Vec::new();
    for x in 0..f.src().n_objects() {
        let s = f.obj_image(x).clone();
        if !images.contains(&s) {
            images.push(s);
        }
    }
    additively_generates(&images, f.view())
}

/// Exhaustive retract-search oracle: y is generated iff some word over the
/// image objects of length ≤ max_len admits (i, p) with p∘i = 1_y; both
/// matrices are enumerated outright.
pub fn retract_oracle(
    cat: &Arc<KCategory>,
    images: &[usize],
    y: usize,
    max_len: usize,
) -> bool {
    let ring = cat.ring();
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            if w.len() < max_len {
                for &s in images {
                    let mut nw = w.clone();
                    nw.push(s);
                    next.push(nw);
                }
            }
        }
        words.extend(next.iter().cloned());
        words.dedup();
    }
    let identity = cat.identity(y);
    for w in words.iter().filter(|w| !w.is_empty()) {
        let di = WordMor::ambient_dim(cat, &[y], w);
        let dp = WordMor::ambient_dim(cat, w, &[y]);
        let Some(q) = ring.element_count() else {
            panic!("retract oracle requires a finite field")
        };
        let count = |d: usize| -> u128 { (0..d).fold(1u128, |acc, _| acc * q) };
        for ii in 0..count(di) {
            let mut idx = ii;
            let icoeffs: Vec<Scalar> = (0..di)
                .map(|_| {
                    let s = ring.element_at(idx % q);
                    idx /= q;
                    s
                })
                .collect();
            let i_mor = WordMor::unflatten(cat, vec![y], w.clone(), &icoeffs);
            for pp in 0..count(dp) {
                let mut idx = pp;
                let pcoeffs: Vec<Scalar> = (0..dp)
                    .map(|_| {
                        let s = ring.element_at(idx % q);
                        idx /= q;
                        s
                    })
                    .collect();
                let p_mor = WordMor::unflatten(cat, w.clone(), vec![y], &pcoeffs);
                let comp = WordMor::compose(cat, &p_mor, &i_mor);
                if *comp.entry(0, 0) == identity {
                    return true;
                }
            }
        }
    }
    false
}

// --- pushout along the interval inclusion and the mapping cylinder ---

/// The pushout B̃ of A⊗F_K(0): A → A⊗F_K(𝐈) along F: A → B, with its
/// explicit four-case hom table.
#[derive(Clone, Debug)]
pub struct PushoutCylinder {
    pub f: KFunctor,
    pub btilde: Arc<KCategory>,
    /// B → B̃, the fully faithful equivalence onto the B side.
    pub g: KFunctor,
    /// A⊗F_K(𝐈) → B̃.
    pub h: KFunctor,
    /// A → A⊗F_K(𝐈) at end 0 (the map being pushed out).
    pub incl0: KFunctor,
    /// B̃ indices of the adjoined objects, per A object.
    pub a_side: Vec<usize>,
}

/// B̃-object → underlying B-object (identity on the B side, F on the A side).
fn btilde_underlying(f: &KFunctor, idx: usize) -> usize {
    let nb = f.tgt().n_objects();
    if idx < nb {
        idx
    } else {
        f.obj_image(idx - nb)
    }
}

pub fn pushout_cylinder(f: &KFunctor) -> Result<PushoutCylinder> {
    let a = f.src().clone();
    let b = f.tgt().clone();
    let ring = a.ring().clone();
    let (na, nb) = (a.n_objects(), b.n_objects());
    let n = nb + na;
    let mut names: Vec<String> = b.objects().to_vec();
    for x in 0..na {
        let name = fresh_name(a.object_name(x), &names);
        names.push(name);
    }
    let under = |x: usize| if x < nb { x } else { f.obj_image(x - nb) };
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = b.hom_dim(under(x), under(y));
        }
    }
    let mut bl = CategoryBuilder::new(ring.clone(), names, hom_dims);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ux, uy, uz) = (under(x), under(y), under(z));
                for aa in 0..b.hom_dim(uy, uz) {
                    for bb in 0..b.hom_dim(ux, uy) {
                        let g = b.basis_morphism(uy, uz, aa);
                        let fm = b.basis_morphism(ux, uy, bb);
                        bl.set_comp(x, y, z, aa, bb, b.compose(&g, &fm).coeffs);
                    }
                }
            }
        }
    }
    for x in 0..n {
        bl.set_identity(x, b.identity_coeffs(under(x)).to_vec());
    }
    let btilde = Arc::new(bl.build()?);
    // G: B → B̃ is the inclusion of the B side.
    let g = KFunctor::new(
        b.clone(),
        btilde.clone(),
        (0..nb).collect(),
        (0..nb * nb)
            .map(|i| Mat::identity(&ring, b.hom_dim(i / nb, i % nb)))
            .collect(),
    )?;
    // H: A⊗F_K(𝐈) → B̃ collapses every interval arrow to F.
    let interval = generator_category(Generator::IsoInterval, &ring)?;
    let tensor_src = tensor_product(&a, &interval)?;
    let mut h_obj = Vec::with_capacity(2 * na);
    for x in 0..na {
        h_obj.push(f.obj_image(x)); // (x,0) ↦ Fx on the B side
        h_obj.push(nb + x); // (x,1) ↦ adjoined x
    }
    let nt = tensor_src.n_objects();
    let mut h_maps = Vec::with_capacity(nt * nt);
    for tx in 0..nt {
        for ty in 0..nt {
            let (x, y) = (tx / 2, ty / 2);
            // Interval homs are 1-dimensional, so the tensor hom space is a
            // copy of A(x,y) and H acts by F's hom matrix.
            h_maps.push(f.hom_map(x, y).clone());
        }
    }
    let h = KFunctor::new(tensor_src.clone(), btilde.clone(), h_obj, h_maps)?;
    // A → A⊗F_K(𝐈) at end 0.
    let incl0 = KFunctor::new(
        a.clone(),
        tensor_src,
        (0..na).map(|x| 2 * x).collect(),
        (0..na * na)
            .map(|i| Mat::identity(&ring, a.hom_dim(i / na, i % na)))
            .collect(),
    )?;
    Ok(PushoutCylinder {
        f: f.clone(),
        btilde,
        g,
        h,
        incl0,
        a_side: (nb..n).collect(),
    })
}

impl PushoutCylinder {
    /// Whether (t0, t1) form a cocone: t1∘incl0 = t0∘F exactly.
    pub fn is_cocone(&self, t0: &KFunctor, t1: &KFunctor) -> Result<bool> {
        let left = self.incl0.then(t1)?;
        let right = self.f.then(t0)?;
        let n = left.src().n_objects();
        for x in 0..n {
            if left.obj_image(x) != right.obj_image(x) {
                return Ok(false);
            }
            for y in 0..n {
                if left.hom_map(x, y) != right.hom_map(x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// σ_x = H(1_x ⊗ u) and its exact inverse H(1_x ⊗ u⁻¹), as morphisms of
    /// the cocone target under t1.
    fn sigma(&self, t1: &KFunctor, x: usize, inverse: bool) -> Morphism {
        let a = self.f.src();
        // Basis of Hom((x,0),(x,1)) (or the reverse) is A(x,x) ⊗ {u±}; the
        // element 1_x ⊗ u has the identity's coefficients.
        let (sx, tx) = if inverse { (2 * x + 1, 2 * x) } else { (2 * x, 2 * x + 1) };
        let coeffs = a.identity_coeffs(x).to_vec();
        t1.apply(&Morphism {
            src: sx,
            tgt: tx,
            coeffs,
        })
    }

    /// The four-case mediator T: B̃ → C with T∘G = t0 and T∘H = t1.
    pub fn mediator(&self, t0: &KFunctor, t1: &KFunctor) -> Result<KFunctor> {
        if !self.is_cocone(t0, t1)? {
            return Err(Error::ObjectMismatch("not a cocone".into()));
        }
        let c = t0.tgt().clone();
        let b = self.f.tgt();
        let nb = b.n_objects();
        let n = self.btilde.n_objects();
        let ring = c.ring();
        let obj_map: Vec<usize> = (0..n)
            .map(|x| {
                if x < nb {
                    t0.obj_image(x)
                } else {
                    t1.obj_image(2 * (x - nb) + 1)
                }
            })
            .collect();
        let mut hom_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (ux, uy) = (btilde_underlying(&self.f, x), btilde_underlying(&self.f, y));
                let base = t0.hom_map(ux, uy).clone();
                let mut m = base;
                if y >= nb {
                    let sig = self.sigma(t1, y - nb, false);
                    m = c.left_mul_matrix(&sig, t0.obj_image(ux)).mul(&m, ring);
                }
                if x >= nb {
                    let sig_inv = self.sigma(t1, x - nb, true);
                    m = c.right_mul_matrix(&sig_inv, obj_map[y]).mul(&m, ring);
                }
                hom_maps.push(m);
            }
        }
        let t = KFunctor::new(self.btilde.clone(), c, obj_map, hom_maps)?;
        t.validate()
            .map_err(|_| Error::InvalidFunctor("mediator is not functorial".into()))?;
        // Commutation with the cocone legs.
        if !functors_equal(&self.g.then(&t)?, t0) || !functors_equal(&self.h.then(&t)?, t1) {
            return Err(Error::InvalidFunctor("mediator does not commute".into()));
        }
        Ok(t)
    }

    /// Uniqueness of the mediator by linear-system rank: the pinning
    /// equations T∘G = t0 and T∘H = t1, together with the source/target
    /// stripping equations through the adjoined isomorphisms, must
    /// determine every hom entry uniquely.
    pub fn mediator_is_unique(&self, t0: &KFunctor, t1: &KFunctor, t: &KFunctor) -> Result<bool> {
        let c = t0.tgt().clone();
        let b = self.f.tgt();
        let nb = b.n_objects();
        let n = self.btilde.n_objects();
        let ring = c.ring();
        // Unknowns: entries of T on pairs involving an adjoined object.
        let mut offsets = vec![usize::MAX; n * n];
        let mut total = 0usize;
        for x in 0..n {
            for y in 0..n {
                if x >= nb || y >= nb {
                    offsets[x * n + y] = total;
                    total += t.hom_map(x, y).rows * t.hom_map(x, y).cols;
                }
            }
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        // vec(M) index helper: row-major over (r, c).
        let entry_index = |x: usize, y: usize, r: usize, ccol: usize| {
            offsets[x * n + y] + r * t.hom_map(x, y).cols + ccol
        };
        // (a) T∘H = t1 pins combinations on mixed pairs.
        let nt = self.h.src().n_objects();
        for tx in 0..nt {
            for ty in 0..nt {
                let (x, y) = (self.h.obj_image(tx), self.h.obj_image(ty));
                if x < nb && y < nb {
                    continue;
                }
                let hmat = self.h.hom_map(tx, ty);
                let t1mat = t1.hom_map(tx, ty);
                // T_{x,y}·H = t1: for each column c of H and each row r.
                for col in 0..hmat.cols {
                    for r in 0..t1mat.rows {
                        let mut row = vec![ring.zero(); total];
                        for k in 0..hmat.rows {
                            let idx = entry_index(x, y, r, k);
                            row[idx] = ring.add(&row[idx], hmat.at(k, col));
                        }
                        rows.push(row);
                        rhs.push(t1mat.at(r, col).clone());
                    }
                }
            }
        }
        // (b) stripping: composing with the pinned isomorphisms σ reduces a
        // mixed hom to a B-side hom, where T is forced to be t0. For a basis
        // element a of B̃(x,y): ρ̃_y ∘ a ∘ σ̃_x is the same underlying
        // element seen on the B side, so T'(ρ̃_y)·T'(a)·T'(σ̃_x) = t0(a),
        // linear in T'(a) with known strips.
        for x in 0..n {
            for y in 0..n {
                if x < nb && y < nb {
                    continue;
                }
                let (ux, uy) = (btilde_underlying(&self.f, x), btilde_underlying(&self.f, y));
                let mut strip = Mat::identity(ring, c.hom_dim(t.obj_image(x), t.obj_image(y)));
                let mut cur_tgt = t.obj_image(y);
                if y >= nb {
                    let rho = self.sigma(t1, y - nb, true);
                    strip = c.left_mul_matrix(&rho, t.obj_image(x)).mul(&strip, ring);
                    cur_tgt = t0.obj_image(uy);
                }
                if x >= nb {
                    let sig = self.sigma(t1, x - nb, false);
                    strip = c.right_mul_matrix(&sig, cur_tgt).mul(&strip, ring);
                }
                let t0mat = t0.hom_map(ux, uy);
                for col in 0..self.btilde.hom_dim(x, y) {
                    for r in 0..strip.rows {
                        let mut row = vec![ring.zero(); total];
                        for k in 0..strip.cols {
                            let idx = entry_index(x, y, k, col);
                            row[idx] = ring.add(&row[idx], strip.at(r, k));
                        }
                        rows.push(row);
                        rhs.push(t0mat.at(r, col).clone());
                    }
                }
            }
        }
        if total == 0 {
            return Ok(true);
        }
        let system = Mat::from_fn(rows.len(), total, |i, j| rows[i][j].clone());
        // Unique solution iff full column rank; and t must satisfy it.
        if system.rank(ring) != total {
            return Ok(false);
        }
        let mut tvec = vec![ring.zero(); total];
        for x in 0..n {
            for y in 0..n {
                if x < nb && y < nb {
                    continue;
                }
                let m = t.hom_map(x, y);
                for r in 0..m.rows {
                    for ccol in 0..m.cols {
                        tvec[entry_index(x, y, r, ccol)] = m.at(r, ccol).clone();
                    }
                }
            }
        }
        for (row, want) in rows.iter().zip(&rhs) {
            let mut acc = ring.zero();
            for (a, b) in row.iter().zip(&tvec) {
                if ring.is_zero(a) || ring.is_zero(b) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, b));
            }
            if acc != *want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Exact equality of parallel functors (object maps and matrices).
pub fn functors_equal(f: &KFunctor, g: &KFunctor) -> bool {
    if f.src().as_ref() != g.src().as_ref() || f.tgt().as_ref() != g.tgt().as_ref() {
        return false;
    }
    let n = f.src().n_objects();
    (0..n).all(|x| f.obj_image(x) == g.obj_image(x))
        && (0..n).all(|x| (0..n).all(|y| f.hom_map(x, y) == g.hom_map(x, y)))
}

/// The mapping cylinder factorization F = Q∘J with J injective on objects
/// and Q a trivial fibration.
#[derive(Clone, Debug)]
pub struct MappingCylinder {
    pub pushout: PushoutCylinder,
    pub j: KFunctor,
    pub q: KFunctor,
}

pub fn mapping_cylinder(f: &KFunctor) -> Result<MappingCylinder> {
    let pushout = pushout_cylinder(f)?;
    let a = f.src().clone();
    let b = f.tgt().clone();
    let (na, nb) = (a.n_objects(), b.n_objects());
    let ring = a.ring();
    // J: A → B̃ onto the adjoined side, with F's hom matrices.
    let j = KFunctor::new(
        a.clone(),
        pushout.btilde.clone(),
        (0..na).map(|x| nb + x).collect(),
        (0..na * na)
            .map(|i| f.hom_map(i / na, i % na).clone())
            .collect(),
    )?;
    // Q: B̃ → B collapses the adjoined side onto the F-images.
    let n = pushout.btilde.n_objects();
    let q = KFunctor::new(
        pushout.btilde.clone(),
        b.clone(),
        (0..n).map(|x| btilde_underlying(f, x)).collect(),
        {
            let mut maps = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    let (ux, uy) = (btilde_underlying(f, x), btilde_underlying(f, y));
                    maps.push(Mat::identity(ring, b.hom_dim(ux, uy)));
                }
            }
            maps
        },
    )?;
    Ok(MappingCylinder { pushout, j, q })
}

impl MappingCylinder {
    /// Q∘J = F coefficient-exactly.
    pub fn factorization_is_exact(&self) -> Result<bool> {
        Ok(functors_equal(&self.j.then(&self.q)?, &self.pushout.f))
    }
}

// --- the cylinder object A ⊗ F_K(𝐈) ---

#[derive(Clone, Debug)]
pub struct CylinderObject {
    pub cylinder: Arc<KCategory>,
    pub j: [KFunctor; 2],
    pub q: KFunctor,
    /// A ⊔ A with the joint inclusion (J1, J2).
    pub coprod: Arc<KCategory>,
    pub j_pair: KFunctor,
}

pub fn cylinder_object(a: &Arc<KCategory>) -> Result<CylinderObject> {
    let ring = a.ring().clone();
    let interval = generator_category(Generator::IsoInterval, &ring)?;
    let cylinder = tensor_product(a, &interval)?;
    let na = a.n_objects();
    let mk_j = |end: usize| -> Result<KFunctor> {
        KFunctor::new(
            a.clone(),
            cylinder.clone(),
            (0..na).map(|x| 2 * x + end).collect(),
            (0..na * na)
                .map(|i| Mat::identity(&ring, a.hom_dim(i / na, i % na)))
                .collect(),
        )
    };
    let j = [mk_j(0)?, mk_j(1)?];
    // Q: (x,i) ↦ x, f⊗arrow ↦ f.
    let nt = cylinder.n_objects();
    let q = KFunctor::new(
        cylinder.clone(),
        a.clone(),
        (0..nt).map(|x| x / 2).collect(),
        (0..nt * nt)
            .map(|i| {
                let (tx, ty) = (i / nt, i % nt);
                Mat::identity(&ring, a.hom_dim(tx / 2, ty / 2))
            })
            .collect(),
    )?;
    let coprod = coproduct(a, a)?;
    let j_pair = KFunctor::new(
        coprod.clone(),
        cylinder.clone(),
        (0..2 * na)
            .map(|x| if x < na { 2 * x } else { 2 * (x - na) + 1 })
            .collect(),
        {
            let mut maps = Vec::with_capacity(4 * na * na);
            for x in 0..2 * na {
                for y in 0..2 * na {
                    let d = coprod.hom_dim(x, y);
                    maps.push(Mat::identity(&ring, d));
                }
            }
            maps
        },
    )?;
    Ok(CylinderObject {
        cylinder,
        j,
        q,
        coprod,
        j_pair,
    })
}

/// Builds the homotopy H: A⊗F_K(𝐈) → B from a natural isomorphism
/// F0 ≅ F1, with H∘J_i = F_i.
pub fn homotopy_from_nat_iso(
    f0: &KFunctor,
    f1: &KFunctor,
    iso: &NaturalIso,
) -> Result<KFunctor> {
    let a = f0.src().clone();
    let b = f0.tgt().clone();
    let ring = a.ring();
    let interval = generator_category(Generator::IsoInterval, ring)?;
    let cylinder = tensor_product(&a, &interval)?;
    let nt = cylinder.n_objects();
    let obj_map: Vec<usize> = (0..nt)
        .map(|t| {
            let (x, end) = (t / 2, t % 2);
            if end == 0 {
                f0.obj_image(x)
            } else {
                f1.obj_image(x)
            }
        })
        .collect();
    let mut hom_maps = Vec::with_capacity(nt * nt);
    for tx in 0..nt {
        for ty in 0..nt {
            let (x, ex) = (tx / 2, tx % 2);
            let (y, ey) = (ty / 2, ty % 2);
            let dim = a.hom_dim(x, y);
            let rows = b.hom_dim(obj_map[tx], obj_map[ty]);
            let mut m = Mat::zeros(ring, rows, dim);
            for c in 0..dim {
                let f = a.basis_morphism(x, y, c);
                let img: Morphism = match (ex, ey) {
                    (0, 0) => f0.apply(&f),
                    (1, 1) => f1.apply(&f),
                    // f ⊗ u: η_y ∘ F0(f).
                    (0, 1) => b.compose(&iso.transformation.components[y], &f0.apply(&f)),
                    // f ⊗ u⁻¹: F0(f) ∘ η_x^{-1}.
                    (1, 0) => b.compose(&f0.apply(&f), &iso.inverses[x]),
                    _ => unreachable!(),
                };
                for (r, v) in img.coeffs.into_iter().enumerate() {
                    *m.at_mut(r, c) = v;
                }
            }
            hom_maps.push(m);
        }
    }
    let h = KFunctor::new(cylinder, b, obj_map, hom_maps)?;
    h.validate()?;
    Ok(h)
}

/// Reads the natural isomorphism back off a homotopy: η_x = H(1_x ⊗ u).
pub fn nat_iso_from_homotopy(h: &KFunctor) -> Result<NaturalIso> {
    let cylinder = h.src();
    let a_dim = cylinder.n_objects() / 2;
    let mut components = Vec::with_capacity(a_dim);
    let mut inverses = Vec::with_capacity(a_dim);
    for x in 0..a_dim {
        // Hom((x,0),(x,1)) ≅ A(x,x): the element 1_x ⊗ u.
        let dim = cylinder.hom_dim(2 * x, 2 * x + 1);
        let id_coeffs: Vec<Scalar> = {
            // identity of (x, 0) in the tensor has the A-identity coefficients
            let id = cylinder.identity_coeffs(2 * x).to_vec();
            assert_eq!(id.len(), dim);
            id
        };
        components.push(h.apply(&Morphism {
            src: 2 * x,
            tgt: 2 * x + 1,
            coeffs: id_coeffs.clone(),
        }));
        inverses.push(h.apply(&Morphism {
            src: 2 * x + 1,
            tgt: 2 * x,
            coeffs: id_coeffs,
        }));
    }
    Ok(NaturalIso {
        transformation: crate::functor::NatTransformation { components },
        inverses,
    })
}

// --- saturation witnesses ---

/// Search outcome for one saturation requirement.
#[derive(Clone, Debug)]
pub enum WitnessOutcome<T> {
    Found(T),
    /// Exhaustive search completed without a witness.
    Absent,
    /// Budget ran out before a decision.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct SplitWitness {
    pub retract: usize,
    pub inject: Morphism,
    pub project: Morphism,
}

#[derive(Clone, Debug)]
pub struct SumWitness {
    pub sum_object: usize,
    pub inject: [Morphism; 2],
    pub project: [Morphism; 2],
}

#[derive(Clone, Debug)]
pub struct SaturationReport {
    pub zero_object: WitnessOutcome<usize>,
    /// Per sampled idempotent (object, coefficients): a splitting.
    pub splittings: Vec<(usize, Vec<Scalar>, WitnessOutcome<SplitWitness>)>,
    /// Per sampled object pair: a biproduct.
    pub direct_sums: Vec<(usize, usize, WitnessOutcome<SumWitness>)>,
}

impl SaturationReport {
    pub fn all_found(&self) -> bool {
        matches!(self.zero_object, WitnessOutcome::Found(_))
            && self
                .splittings
                .iter()
                .all(|(_, _, o)| matches!(o, WitnessOutcome::Found(_)))
            && self
                .direct_sums
                .iter()
                .all(|(_, _, o)| matches!(o, WitnessOutcome::Found(_)))
    }
}

/// Searches a finite category for saturation witnesses: a zero object,
/// splittings of (sampled) idempotents, and direct sums of object pairs.
/// Witness equations are solved by enumerating the injection data within
/// the budget and solving linearly for the projections.
pub fn saturation_witness_search(
    d: &Arc<KCategory>,
    budget: &SearchBudget,
) -> Result<SaturationReport> {
    let ring = d.ring();
    let n = d.n_objects();
    // Zero object: all homs in and out are zero-dimensional.
    let zero_object = match (0..n)
        .find(|&z| (0..n).all(|x| d.hom_dim(z, x) == 0 && d.hom_dim(x, z) == 0))
    {
        Some(z) => WitnessOutcome::Found(z),
        None => WitnessOutcome::Absent,
    };
    // Idempotent sampling per object.
    let mut splittings = Vec::new();
    for x in 0..n {
        let dim = d.hom_dim(x, x);
        let mut idems: Vec<Vec<Scalar>> = Vec::new();
        let cap = 64usize;
        let mut scan = |c: &[Scalar]| -> Option<()> {
            let m = Morphism {
                src: x,
                tgt: x,
                coeffs: c.to_vec(),
            };
            if d.compose(&m, &m) == m && idems.len() < cap {
                idems.push(c.to_vec());
            }
            None::<()>
        };
        let _ = search_coefficients(ring, dim, budget, &mut scan);
        for e in idems {
            let em = Morphism {
                src: x,
                tgt: x,
                coeffs: e.clone(),
            };
            let outcome = split_witness_search(d, &em, budget);
            splittings.push((x, e, outcome));
        }
    }
    // Direct sums for all pairs.
    let mut direct_sums = Vec::new();
    for x in 0..n {
        for y in 0..n {
            direct_sums.push((x, y, sum_witness_search(d, x, y, budget)));
        }
    }
    Ok(SaturationReport {
        zero_object,
        splittings,
        direct_sums,
    })
}

/// Finds (r, i, p) with p∘i = 1_r and i∘p = e, enumerating i and solving
/// linearly for p.
pub fn split_witness_search(
    d: &Arc<KCategory>,
    e: &Morphism,
    budget: &SearchBudget,
) -> WitnessOutcome<SplitWitness> {
    let ring = d.ring();
    let x = e.src;
    let mut exhausted = false;
    for r in 0..d.n_objects() {
        let di = d.hom_dim(r, x);
        let outcome = search_coefficients(ring, di, budget, |c| {
            let i = Morphism {
                src: r,
                tgt: x,
                coeffs: c.to_vec(),
            };
            // p∘i = 1_r (precompose i), i∘p = e (postcompose i).
            let pre = d.right_mul_matrix(&i, r);
            let post = d.left_mul_matrix(&i, x);
            let system = pre.vstack(&post);
            let mut rhs = d.identity_coeffs(r).to_vec();
            rhs.extend_from_slice(&e.coeffs);
            let p = system.solve(&rhs, ring)?;
            Some(SplitWitness {
                retract: r,
                inject: i,
                project: Morphism {
                    src: x,
                    tgt: r,
                    coeffs: p,
                },
            })
        });
        match outcome {
            SearchOutcome::Found(w) => return WitnessOutcome::Found(w),
            SearchOutcome::Exhausted => exhausted = true,
            SearchOutcome::Empty => {}
        }
    }
    if exhausted {
        WitnessOutcome::Unknown
    } else {
        WitnessOutcome::Absent
    }
}

/// Finds (s, i_k, p_k) with p_k∘i_k = 1, cross terms zero and
/// i_1∘p_1 + i_2∘p_2 = 1_s; injections are enumerated jointly.
pub fn sum_witness_search(
    d: &Arc<KCategory>,
    x: usize,
    y: usize,
    budget: &SearchBudget,
) -> WitnessOutcome<SumWitness> {
    let ring = d.ring();
    let mut exhausted = false;
    for s in 0..d.n_objects() {
        let (d1, d2) = (d.hom_dim(x, s), d.hom_dim(y, s));
        let outcome = search_coefficients(ring, d1 + d2, budget, |c| {
            let i1 = Morphism {
                src: x,
                tgt: s,
                coeffs: c[..d1].to_vec(),
            };
            let i2 = Morphism {
                src: y,
                tgt: s,
                coeffs: c[d1..].to_vec(),
            };
            // Unknowns (p1: s→x, p2: s→y); equations:
            //   p1∘i1 = 1_x, p1∘i2 = 0, p2∘i1 = 0, p2∘i2 = 1_y,
            //   i1∘p1 + i2∘p2 = 1_s.
            let (dp1, dp2) = (d.hom_dim(s, x), d.hom_dim(s, y));
            let z = |rows: usize, cols: usize| Mat::zeros(ring, rows, cols);
            let r11 = d.right_mul_matrix(&i1, x);
            let r12 = d.right_mul_matrix(&i2, x);
            let r21 = d.right_mul_matrix(&i1, y);
            let r22 = d.right_mul_matrix(&i2, y);
            let l1 = d.left_mul_matrix(&i1, s);
            let l2 = d.left_mul_matrix(&i2, s);
            let row1 = r11.hstack(&z(r11.rows, dp2));
            let row2 = r12.hstack(&z(r12.rows, dp2));
            let row3 = z(r21.rows, dp1).hstack(&r21);
            let row4 = z(r22.rows, dp1).hstack(&r22);
            let row5 = l1.hstack(&l2);
            let system = row1.vstack(&row2).vstack(&row3).vstack(&row4).vstack(&row5);
            let mut rhs = d.identity_coeffs(x).to_vec();
            rhs.extend(vec![ring.zero(); d.hom_dim(y, x)]);
            rhs.extend(vec![ring.zero(); d.hom_dim(x, y)]);
            rhs.extend_from_slice(d.identity_coeffs(y));
            rhs.extend_from_slice(d.identity_coeffs(s));
            let p = system.solve(&rhs, ring)?;
            Some(SumWitness {
                sum_object: s,
                inject: [i1, i2],
                project: [
                    Morphism {
                        src: s,
                        tgt: x,
                        coeffs: p[..dp1].to_vec(),
                    },
                    Morphism {
                        src: s,
                        tgt: y,
                        coeffs: p[dp1..].to_vec(),
                    },
                ],
            })
        });
        match outcome {
            SearchOutcome::Found(w) => return WitnessOutcome::Found(w),
            SearchOutcome::Exhausted => exhausted = true,
            SearchOutcome::Empty => {}
        }
    }
    if exhausted {
        WitnessOutcome::Unknown
    } else {
        WitnessOutcome::Absent
    }
}

// --- the homotopy-category hom calculus ---

/// A map in the Morita homotopy category, represented by a functor into the
/// saturation view of the target; two maps are equal iff their
/// representatives are naturally isomorphic.
#[derive(Clone, Debug)]
pub struct HoMap {
    pub rep: SatFunctor,
}

impl HoMap {
    pub fn identity(cat: &Arc<KCategory>) -> HoMap {
        HoMap {
            rep: SatFunctor::iota(cat),
        }
    }

    pub fn from_kfunctor(f: &KFunctor) -> HoMap {
        HoMap {
            rep: SatFunctor::from_kfunctor(f),
        }
    }

    pub fn src(&self) -> &Arc<KCategory> {
        self.rep.src()
    }

    pub fn tgt_base(&self) -> &Arc<KCategory> {
        self.rep.view().base()
    }
}

/// ψ∘φ via the unique-up-to-isomorphism extension of ψ's representative to
/// the saturation.
pub fn ho_compose(psi: &HoMap, phi: &HoMap) -> Result<HoMap> {
    if phi.tgt_base().as_ref() != psi.src().as_ref() {
        return Err(Error::ObjectMismatch("homotopy maps not composable".into()));
    }
    let n = phi.src().n_objects();
    let obj_map: Vec<SatObject> = (0..n)
        .map(|x| psi.rep.extend_object(phi.rep.obj_image(x)))
        .collect();
    let mut mor_images = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let imgs = (0..phi.src().hom_dim(x, y))
                .map(|b| psi.rep.extend_mor(phi.rep.basis_image(x, y, b)))
                .collect();
            mor_images.push(imgs);
        }
    }
    Ok(HoMap {
        rep: SatFunctor::new(
            phi.src().clone(),
            psi.rep.view().clone(),
            obj_map,
            mor_images,
        )?,
    })
}

/// Invertibility in the homotopy category: the representative is a Morita
/// equivalence into the view.
pub fn ho_is_iso(phi: &HoMap) -> Result<bool> {
    is_morita_equivalence_sat(&phi.rep)
}

/// Equality of homotopy maps: natural isomorphism of representatives,
/// decided on the materialized full subcategory spanned by both images.
pub fn ho_equal(a: &HoMap, b: &HoMap, budget: &SearchBudget) -> Result<IsoVerdict> {
    if a.src().as_ref() != b.src().as_ref() || a.tgt_base().as_ref() != b.tgt_base().as_ref() {
        return Err(Error::ObjectMismatch("homotopy maps not parallel".into()));
    }
    let mut objects = Vec::new();
    for x in 0..a.src().n_objects() {
        objects.push(a.rep.obj_image(x).clone());
        objects.push(b.rep.obj_image(x).clone());
    }
    let sub = materialize_full_subcategory(a.rep.view(), &objects)?;
    let fa = sub.restrict(&a.rep)?;
    let fb = sub.restrict(&b.rep)?;
    functor_iso_test(&fa, &fb, budget)
}

#[cfg(test)]
mod decision_tests {
    use super::*;
    use crate::azumaya::Algebra;
    use crate::category::algebra_as_category;
    use crate::envelopes::{additive_hull, karoubi};
    use crate::functor::{const_object_functor, find_object_iso};

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    fn m2(p: u64) -> Arc<KCategory> {
        algebra_as_category(&Algebra::matrix_algebra(&gf(p), 2)).unwrap()
    }

    fn e11(cat: &KCategory) -> Morphism {
        let mut e = cat.zero_morphism(0, 0);
        e.coeffs[0] = cat.ring().one();
        e
    }

    #[test]
    fn corner_functor_is_morita_equivalence_unit_is_not() {
        let m2 = m2(3);
        let kar = karoubi(&m2, &[e11(&m2)]).unwrap();
        let pe = kar.pair_index(0, &e11(&m2)).unwrap();
        let corner = const_object_functor(kar.cat.clone(), pe).unwrap();
        assert!(corner.is_fully_faithful());
        assert!(is_morita_equivalence(&corner).unwrap());

        let unit = const_object_functor(m2.clone(), 0).unwrap();
        assert!(!is_morita_equivalence(&unit).unwrap());
        let cert = ff_certificate(&unit).unwrap();
        assert_eq!((cert.src_dim, cert.tgt_dim), (1, 4));

        assert!(is_morita_equivalence(&KFunctor::identity(m2)).unwrap());
    }

    #[test]
    fn generation_of_split_pair_fails_on_one_factor() {
        let ring = gf(2);
        let kk = algebra_as_category(&Algebra::split_pair(&ring)).unwrap();
        let view = SatView::new(kk.clone());
        // (•, (1,0)): the first-factor idempotent.
        let mut idem = WordMor::identity(&kk, vec![0]);
        idem.entry_mut(0, 0).coeffs = vec![ring.one(), ring.zero()];
        let corner = SatObject {
            word: vec![0],
            idem,
        };
        assert!(!additively_generates(&[corner], &view).unwrap());
        // All base objects with identities generate.
        let full = SatObject::base(&kk, 0);
        let w = generation_witnesses(&[full], &view).unwrap().unwrap();
        assert!(w.iter().all(|x| x.check(&view)));
    }

    #[test]
    fn corner_object_generates_matrix_algebra() {
        let m2 = m2(2);
        let ring = gf(2);
        let view = SatView::new(m2.clone());
        let mut idem = WordMor::identity(&m2, vec![0]);
        let mut coeffs = vec![ring.zero(); 4];
        coeffs[0] = ring.one();
        idem.entry_mut(0, 0).coeffs = coeffs;
        let corner = SatObject {
            word: vec![0],
            idem,
        };
        let w = generation_witnesses(&[corner], &view).unwrap();
        assert!(w.is_some());
        assert!(w.unwrap().iter().all(|x| x.check(&view)));
    }

    #[test]
    fn iota_is_always_a_morita_equivalence() {
        for cat in [
            m2(2),
            generator_category(Generator::E1, &gf(2)).unwrap(),
            generator_category(Generator::R1, &gf(3)).unwrap(),
            generator_category(Generator::S2, &Ring::rationals()).unwrap(),
        ] {
            let iota = SatFunctor::iota(&cat);
            assert!(is_morita_equivalence_sat(&iota).unwrap());
        }
    }

    #[test]
    fn oracle_agrees_on_hand_picked_cases() {
        let ring = gf(2);
        let kk = algebra_as_category(&Algebra::split_pair(&ring)).unwrap();
        // K×K is generated by its own object...
        assert!(retract_oracle(&kk, &[0], 0, 3));
        // R(1): r is a retract of o.
        let r1 = generator_category(Generator::R1, &ring).unwrap();
        assert!(retract_oracle(&r1, &[0], 1, 2));
        // but o is not a retract of sums of r (End(o) has w ≠ 1).
        assert!(!retract_oracle(&r1, &[1], 0, 3));
        let view = SatView::new(r1.clone());
        let images = [SatObject::base(&r1, 1)];
        assert!(!additively_generates(&images, &view).unwrap());
    }

    #[test]
    fn pushout_of_identity_on_ground() {
        let ring = gf(2);
        let k = ground_category(&ring);
        let f = KFunctor::identity(k);
        let po = pushout_cylinder(&f).unwrap();
        assert!(po.btilde.is_valid());
        assert_eq!(po.btilde.n_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(po.btilde.hom_dim(x, y), 1);
            }
        }
        po.g.validate().unwrap();
        po.h.validate().unwrap();
        assert!(po.g.is_fully_faithful());
        assert!(matches!(
            find_object_iso(&po.btilde, 0, 1, &SearchBudget::default()),
            SearchOutcome::Found(_)
        ));
        // Square commutes: H∘incl0 = G∘F.
        assert!(po.is_cocone(&po.g, &po.h).unwrap());
    }

    #[test]
    fn pushout_of_unit_into_m2() {
        let m2 = m2(2);
        let unit = const_object_functor(m2.clone(), 0).unwrap();
        let po = pushout_cylinder(&unit).unwrap();
        assert!(po.btilde.is_valid());
        assert_eq!(po.btilde.n_objects(), 2);
        let adjoined = po.a_side[0];
        assert_eq!(po.btilde.hom_dim(adjoined, 0), 4);
        po.h.validate().unwrap();
        // Adjoined object is isomorphic to its F-image via 1_{Fx}.
        assert!(matches!(
            find_object_iso(&po.btilde, adjoined, 0, &SearchBudget::default()),
            SearchOutcome::Found(_)
        ));
    }

    /// The collapse A⊗F_K(𝐈) → B sending f⊗arrow to F(f).
    fn collapse_then(po: &PushoutCylinder) -> KFunctor {
        let f = &po.f;
        let tensor_src = po.h.src().clone();
        let nt = tensor_src.n_objects();
        let obj_map: Vec<usize> = (0..nt).map(|t| f.obj_image(t / 2)).collect();
        let maps = (0..nt * nt)
            .map(|i| f.hom_map((i / nt) / 2, (i % nt) / 2).clone())
            .collect();
        KFunctor::new(tensor_src, f.tgt().clone(), obj_map, maps).unwrap()
    }

    #[test]
    fn mediator_commutes_is_unique_and_recovers_q() {
        let m2 = m2(2);
        let unit = const_object_functor(m2.clone(), 0).unwrap();
        let mc = mapping_cylinder(&unit).unwrap();
        let po = &mc.pushout;
        let t0 = KFunctor::identity(m2.clone());
        let t1 = collapse_then(po);
        t1.validate().unwrap();
        let t = po.mediator(&t0, &t1).unwrap();
        assert!(functors_equal(&t, &mc.q));
        assert!(po.mediator_is_unique(&t0, &t1, &t).unwrap());
    }

    #[test]
    fn mapping_cylinder_factorization() {
        let ring = gf(2);
        for f in [
            KFunctor::identity(ground_category(&ring)),
            const_object_functor(m2(2), 0).unwrap(),
            retract_generator_functor(&ring).unwrap(),
        ] {
            let mc = mapping_cylinder(&f).unwrap();
            assert!(mc.factorization_is_exact().unwrap());
            assert!(mc.j.is_injective_on_objects());
            assert!(mc.q.is_surjective_on_objects());
            assert!(mc.q.is_fully_faithful());
            assert!(mc.q.is_essentially_surjective(&SearchBudget::default()));
            mc.j.validate().unwrap();
            mc.q.validate().unwrap();
        }
    }

    #[test]
    fn cylinder_of_ground_is_the_interval() {
        let ring = gf(3);
        let k = ground_category(&ring);
        let cyl = cylinder_object(&k).unwrap();
        assert_eq!(cyl.cylinder.n_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(cyl.cylinder.hom_dim(x, y), 1);
            }
        }
        for jf in &cyl.j {
            assert!(functors_equal(
                &jf.then(&cyl.q).unwrap(),
                &KFunctor::identity(k.clone())
            ));
        }
        cyl.j_pair.validate().unwrap();
        assert!(cyl.j_pair.is_injective_on_objects());
    }

    #[test]
    fn homotopies_biject_with_natural_isos() {
        // Conjugation by u = e_12 + e_21 on M_2 over GF(3).
        let ring = gf(3);
        let m2 = m2(3);
        let id = KFunctor::identity(m2.clone());
        let mut u = m2.zero_morphism(0, 0);
        u.coeffs[1] = ring.one();
        u.coeffs[2] = ring.one();
        let uinv = m2.invert_morphism(&u).unwrap();
        let conj_mat = Mat::from_fn(4, 4, |k, b| {
            let f = m2.basis_morphism(0, 0, b);
            m2.compose(&u, &m2.compose(&f, &uinv)).coeffs[k].clone()
        });
        let conj = KFunctor::new(m2.clone(), m2.clone(), vec![0], vec![conj_mat]).unwrap();
        let IsoVerdict::Iso(iso) = functor_iso_test(&id, &conj, &SearchBudget::default()).unwrap()
        else {
            panic!("conjugation is naturally isomorphic to the identity")
        };
        let h = homotopy_from_nat_iso(&id, &conj, &iso).unwrap();
        // H restricts to the two functors along the cylinder ends.
        let cyl = cylinder_object(&m2).unwrap();
        assert!(functors_equal(&cyl.j[0].then(&h).unwrap(), &id));
        assert!(functors_equal(&cyl.j[1].then(&h).unwrap(), &conj));
        // Round trip recovers the component.
        let back = nat_iso_from_homotopy(&h).unwrap();
        assert_eq!(back.transformation.components, iso.transformation.components);
    }

    #[test]
    fn saturation_witnesses_in_a_saturated_truncation() {
        let ring = gf(2);
        let e1 = generator_category(Generator::E1, &ring).unwrap();
        let e = e1.basis_morphism(0, 0, 1);
        let kar = karoubi(&e1, &[e]).unwrap();
        let hull = additive_hull(&kar.cat, 2, true).unwrap();
        let report = saturation_witness_search(&hull.cat, &SearchBudget::default()).unwrap();
        assert!(report.all_found(), "saturated truncation must pass: {report:?}");
    }

    #[test]
    fn ground_category_has_no_zero_object() {
        let k = ground_category(&gf(2));
        let report = saturation_witness_search(&k, &SearchBudget::default()).unwrap();
        assert!(matches!(report.zero_object, WitnessOutcome::Absent));
    }

    #[test]
    fn r1_splits_its_idempotent() {
        let ring = gf(2);
        let r1 = generator_category(Generator::R1, &ring).unwrap();
        // w = i∘p is the nontrivial idempotent of End(o).
        let w = r1.basis_morphism(0, 0, 1);
        let outcome = split_witness_search(&r1, &w, &SearchBudget::default());
        let WitnessOutcome::Found(sw) = outcome else {
            panic!("R(1) splits i∘p")
        };
        assert_eq!(sw.retract, 1);
        assert_eq!(r1.compose(&sw.project, &sw.inject), r1.identity(1));
        assert_eq!(r1.compose(&sw.inject, &sw.project), w);
    }

    #[test]
    fn homotopy_maps_corner_roundtrip() {
        // φ: K → Sat(M_2) picking (•, e_11); ψ: M_2 → Sat(K) via K².
        let ring = gf(2);
        let m2cat = m2(2);
        let k = ground_category(&ring);
        let m2view = SatView::new(m2cat.clone());
        let mut idem = WordMor::identity(&m2cat, vec![0]);
        idem.entry_mut(0, 0).coeffs = {
            let mut c = vec![ring.zero(); 4];
            c[0] = ring.one();
            c
        };
        let corner_obj = SatObject {
            word: vec![0],
            idem: idem.clone(),
        };
        let phi = HoMap {
            rep: SatFunctor::new(
                k.clone(),
                m2view,
                vec![corner_obj],
                vec![vec![idem]],
            )
            .unwrap(),
        };
        phi.rep.validate().unwrap();
        assert!(ho_is_iso(&phi).unwrap());

        // ψ sends the object to K² and e_ij to the matrix unit E_ij.
        let kview = SatView::new(k.clone());
        let double = SatObject::free(&k, vec![0, 0]);
        let mut images = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut wm = WordMor::zero(&k, vec![0, 0], vec![0, 0]);
                *wm.entry_mut(i, j) = k.identity(0);
                images.push(wm);
            }
        }
        let psi = HoMap {
            rep: SatFunctor::new(m2cat.clone(), kview, vec![double], vec![images]).unwrap(),
        };
        psi.rep.validate().unwrap();
        assert!(ho_is_iso(&psi).unwrap());

        let comp = ho_compose(&psi, &phi).unwrap();
        comp.rep.validate().unwrap();
        let verdict = ho_equal(&comp, &HoMap::identity(&k), &SearchBudget::default()).unwrap();
        assert!(verdict.is_iso(), "corner roundtrip is the identity class");
    }
}

#[cfg(test)]
mod generator_tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn generator_dimensions() {
        let e1 = generator_category(Generator::E1, &q()).unwrap();
        assert!(e1.is_valid());
        assert_eq!(e1.hom_dim(0, 0), 2);

        let r1 = generator_category(Generator::R1, &q()).unwrap();
        assert!(r1.is_valid());
        let (o, r) = (0, 1);
        assert_eq!(r1.hom_dim(o, o), 2);
        assert_eq!(r1.hom_dim(r, r), 1);
        assert_eq!(r1.hom_dim(o, r), 1);
        assert_eq!(r1.hom_dim(r, o), 1);
        // p∘i = 1_r and (ip)² = ip.
        let p = r1.basis_morphism(o, r, 0);
        let i = r1.basis_morphism(r, o, 0);
        assert_eq!(r1.compose(&p, &i), r1.identity(r));
        let w = r1.compose(&i, &p);
        assert_eq!(r1.compose(&w, &w), w);

        let s2 = generator_category(Generator::S2, &q()).unwrap();
        assert!(s2.is_valid());
        assert_eq!(s2.hom_dim(0, 1), 0);
        assert_eq!(s2.hom_dim(1, 0), 0);
        assert_eq!(s2.hom_dim(2, 2), 2);
        // p_k∘i_k = 1 and i_1p_1 + i_2p_2 = 1_s.
        let (i1, p1) = (s2.basis_morphism(0, 2, 0), s2.basis_morphism(2, 0, 0));
        let (i2, p2) = (s2.basis_morphism(1, 2, 0), s2.basis_morphism(2, 1, 0));
        assert_eq!(s2.compose(&p1, &i1), s2.identity(0));
        assert_eq!(s2.compose(&p2, &i2), s2.identity(1));
        let sum = s2.add_mor(&s2.compose(&i1, &p1), &s2.compose(&i2, &p2));
        assert_eq!(sum, s2.identity(2));

        let zero = generator_category(Generator::Zero, &q()).unwrap();
        assert!(zero.is_valid());
        assert_eq!(zero.hom_dim(0, 0), 0);

        for g in [Generator::Bullet, Generator::OneArrow, Generator::ParallelPair, Generator::IsoInterval] {
            assert!(generator_category(g, &q()).unwrap().is_valid());
        }
        let pp = generator_category(Generator::ParallelPair, &q()).unwrap();
        assert_eq!(pp.hom_dim(0, 1), 2);
    }

    #[test]
    fn generator_functors_validate() {
        let r = retract_generator_functor(&q()).unwrap();
        r.validate().unwrap();
        assert!(r.is_fully_faithful());
        let s = sum_generator_functor(&q()).unwrap();
        s.validate().unwrap();
    }
}
