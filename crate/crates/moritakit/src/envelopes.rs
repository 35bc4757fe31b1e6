//! The three envelopes: the additive hull A_⊕, the idempotent completion
//! A^♮, and the lazy saturation A⊕♮.
//!
//! The saturation is never materialized. [`SatView`] computes hom bases of
//! Hom((w,e),(w',e')) = e'·Mat(w,w')·e on demand; the truncated hull and
//! Karoubi materializations exist for tests and brute-force oracles. Basis
//! of a sandwiched subspace: row-reduce the map m ↦ e'∘m∘e and keep the
//! pivot columns, in lexicographic order.

use crate::category::{CategoryBuilder, KCategory, Morphism};
use crate::error::{Error, Result};
use crate::functor::KFunctor;
use crate::linalg::{ColSolver, Mat};
use crate::scalar::Scalar;
use std::sync::Arc;

/// A morphism of formal words: an m×n block matrix with entry (i,j) a base
/// morphism src[j] → tgt[i]. Flattened coordinates run row-major over
/// (i,j) and then over the base hom basis, matching the hull hom basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WordMor {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    entries: Vec<Morphism>,
}

impl WordMor {
    pub fn zero(cat: &KCategory, src: Vec<usize>, tgt: Vec<usize>) -> WordMor {
        let entries = tgt
            .iter()
            .flat_map(|&ti| src.iter().map(move |&sj| (sj, ti)))
            .map(|(sj, ti)| cat.zero_morphism(sj, ti))
            .collect();
        WordMor { src, tgt, entries }
    }

    pub fn identity(cat: &KCategory, word: Vec<usize>) -> WordMor {
        let mut m = WordMor::zero(cat, word.clone(), word.clone());
        for (i, &x) in word.iter().enumerate() {
            *m.entry_mut(i, i) = cat.identity(x);
        }
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Morphism {
        &self.entries[i * self.src.len() + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Morphism {
        &mut self.entries[i * self.src.len() + j]
    }

    /// Ambient hull-hom coordinates, row-major over (i,j) then basis index.
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.extend_from_slice(&e.coeffs);
        }
        out
    }

    pub fn unflatten(
        cat: &KCategory,
        src: Vec<usize>,
        tgt: Vec<usize>,
        coords: &[Scalar],
    ) -> WordMor {
        let mut m = WordMor::zero(cat, src, tgt);
        let mut pos = 0;
        for e in m.entries.iter_mut() {
            let d = e.coeffs.len();
            e.coeffs.clone_from_slice(&coords[pos..pos + d]);
            pos += d;
        }
        assert_eq!(pos, coords.len());
        m
    }

    pub fn compose(cat: &KCategory, g: &WordMor, f: &WordMor) -> WordMor {
        assert_eq!(g.src, f.tgt, "word morphisms not composable");
        let mut out = WordMor::zero(cat, f.src.clone(), g.tgt.clone());
        for i in 0..g.tgt.len() {
            for k in 0..f.src.len() {
                let mut acc = cat.zero_morphism(f.src[k], g.tgt[i]);
                for j in 0..g.src.len() {
                    let prod = cat.compose(g.entry(i, j), f.entry(j, k));
                    acc = cat.add_mor(&acc, &prod);
                }
                *out.entry_mut(i, k) = acc;
            }
        }
        out
    }

    pub fn add(cat: &KCategory, a: &WordMor, b: &WordMor) -> WordMor {
        assert_eq!((&a.src, &a.tgt), (&b.src, &b.tgt));
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| cat.add_mor(x, y))
            .collect();
        WordMor {
            src: a.src.clone(),
            tgt: a.tgt.clone(),
            entries,
        }
    }

    pub fn scale(cat: &KCategory, c: &Scalar, a: &WordMor) -> WordMor {
        WordMor {
            src: a.src.clone(),
            tgt: a.tgt.clone(),
            entries: a.entries.iter().map(|x| cat.scale_mor(c, x)).collect(),
        }
    }

    pub fn is_zero(&self, cat: &KCategory) -> bool {
        self.entries.iter().all(|e| cat.mor_is_zero(e))
    }

    pub fn is_idempotent(&self, cat: &KCategory) -> bool {
        self.src == self.tgt && WordMor::compose(cat, self, self) == *self
    }

    /// Dimension of the ambient hull hom space for (src → tgt).
    pub fn ambient_dim(cat: &KCategory, src: &[usize], tgt: &[usize]) -> usize {
        tgt.iter()
            .map(|&ti| src.iter().map(|&sj| cat.hom_dim(sj, ti)).sum::<usize>())
            .sum()
    }
}

/// An object of the saturation: a word with an idempotent block matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SatObject {
    pub word: Vec<usize>,
    pub idem: WordMor,
}

impl SatObject {
    /// (word, identity): the image of the hull inside the saturation.
    pub fn free(cat: &KCategory, word: Vec<usize>) -> SatObject {
        SatObject {
            word: word.clone(),
            idem: WordMor::identity(cat, word),
        }
    }

    pub fn base(cat: &KCategory, x: usize) -> SatObject {
        SatObject::free(cat, vec![x])
    }

    pub fn validate(&self, cat: &KCategory) -> Result<()> {
        if self.idem.src != self.word || self.idem.tgt != self.word {
            return Err(Error::ObjectMismatch("idempotent endpoints".into()));
        }
        if !self.idem.is_idempotent(cat) {
            return Err(Error::NotIdempotent);
        }
        Ok(())
    }

    pub fn display(&self, cat: &KCategory) -> String {
        let word: Vec<&str> = self.word.iter().map(|&x| cat.object_name(x)).collect();
        format!("({},e)", word.join("·"))
    }
}

/// Basis data for one demanded hom space of the saturation.
#[derive(Clone, Debug)]
pub struct SatHom {
    pub src: SatObject,
    pub tgt: SatObject,
    pub ambient_dim: usize,
    pub basis: Vec<WordMor>,
    solver: ColSolver,
}

impl SatHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a sandwiched word morphism in this basis.
    pub fn coords(&self, m: &WordMor) -> Option<Vec<Scalar>> {
        self.solver.coords(&m.flatten())
    }

    pub fn from_coords(&self, cat: &KCategory, coords: &[Scalar]) -> WordMor {
        assert_eq!(coords.len(), self.basis.len());
        let mut acc = WordMor::zero(cat, self.src.word.clone(), self.tgt.word.clone());
        for (c, b) in coords.iter().zip(&self.basis) {
            if cat.ring().is_zero(c) {
                continue;
            }
            acc = WordMor::add(cat, &acc, &WordMor::scale(cat, c, b));
        }
        acc
    }
}

/// The lazy saturation A⊕♮ of a base category: homs on demand, never
/// materialized.
#[derive(Clone, Debug)]
pub struct SatView {
    base: Arc<KCategory>,
}

/// Canonical structure maps of a binary direct sum in the view.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: SatObject,
    pub inject: [WordMor; 2],
    pub project: [WordMor; 2],
}

/// Canonical splitting of an idempotent in the view.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub object: SatObject,
    pub inject: WordMor,
    pub project: WordMor,
}

impl SatView {
    pub fn new(base: Arc<KCategory>) -> SatView {
        SatView { base }
    }

    pub fn base(&self) -> &Arc<KCategory> {
        &self.base
    }

    /// The empty word with its (empty) identity: a zero object.
    pub fn zero_object(&self) -> SatObject {
        SatObject::free(&self.base, vec![])
    }

    /// Basis of Hom((w,e),(w',e')) = e'·Mat(w,w')·e, with a coordinate
    /// solver for composition.
    pub fn hom(&self, s: &SatObject, t: &SatObject) -> Result<SatHom> {
        s.validate(&self.base)?;
        t.validate(&self.base)?;
        let cat = &self.base;
        let ring = cat.ring();
        let dim = WordMor::ambient_dim(cat, &s.word, &t.word);
        // Columns of the sandwiching map m ↦ e_t ∘ m ∘ e_s in ambient coords.
        let mut sandwich = Mat::zeros(ring, dim, dim);
        for col in 0..dim {
            let mut unit = vec![ring.zero(); dim];
            unit[col] = ring.one();
            let m = WordMor::unflatten(cat, s.word.clone(), t.word.clone(), &unit);
            let sm = WordMor::compose(cat, &t.idem, &WordMor::compose(cat, &m, &s.idem));
            for (row, v) in sm.flatten().into_iter().enumerate() {
                *sandwich.at_mut(row, col) = v;
            }
        }
        let (_, pivots) = sandwich.rref(ring);
        let basis_cols: Vec<Vec<Scalar>> = pivots.iter().map(|&c| sandwich.col(c)).collect();
        let basis: Vec<WordMor> = basis_cols
            .iter()
            .map(|v| WordMor::unflatten(cat, s.word.clone(), t.word.clone(), v))
            .collect();
        let solver = ColSolver::new(ring, &Mat::from_cols(ring, dim, &basis_cols));
        Ok(SatHom {
            src: s.clone(),
            tgt: t.clone(),
            ambient_dim: dim,
            basis,
            solver,
        })
    }

    pub fn compose(&self, g: &WordMor, f: &WordMor) -> WordMor {
        WordMor::compose(&self.base, g, f)
    }

    /// Identity of a saturation object is its idempotent.
    pub fn identity(&self, s: &SatObject) -> WordMor {
        s.idem.clone()
    }

    /// (w,e) ⊕ (w',e') = (w·w', diag(e,e')) with canonical structure maps
    /// satisfying p_k∘i_k = 1 and i_1∘p_1 + i_2∘p_2 = 1.
    pub fn direct_sum(&self, s: &SatObject, t: &SatObject) -> DirectSum {
        let cat = &self.base;
        let mut word = s.word.clone();
        word.extend_from_slice(&t.word);
        let mut idem = WordMor::zero(cat, word.clone(), word.clone());
        let (ns, nt) = (s.word.len(), t.word.len());
        for i in 0..ns {
            for j in 0..ns {
                *idem.entry_mut(i, j) = s.idem.entry(i, j).clone();
            }
        }
        for i in 0..nt {
            for j in 0..nt {
                *idem.entry_mut(ns + i, ns + j) = t.idem.entry(i, j).clone();
            }
        }
        let object = SatObject { word: word.clone(), idem };
        let mut i1 = WordMor::zero(cat, s.word.clone(), word.clone());
        let mut p1 = WordMor::zero(cat, word.clone(), s.word.clone());
        for i in 0..ns {
            for j in 0..ns {
                *i1.entry_mut(i, j) = s.idem.entry(i, j).clone();
                *p1.entry_mut(i, j) = s.idem.entry(i, j).clone();
            }
        }
        let mut i2 = WordMor::zero(cat, t.word.clone(), word.clone());
        let mut p2 = WordMor::zero(cat, word.clone(), t.word.clone());
        for i in 0..nt {
            for j in 0..nt {
                *i2.entry_mut(ns + i, j) = t.idem.entry(i, j).clone();
                *p2.entry_mut(i, ns + j) = t.idem.entry(i, j).clone();
            }
        }
        DirectSum {
            object,
            inject: [i1, i2],
            project: [p1, p2],
        }
    }

    /// Splits a sat-endomorphism idempotent f of s as i∘p with p∘i the
    /// identity of the new object (w, f).
    pub fn split(&self, s: &SatObject, f: &WordMor) -> Result<Splitting> {
        let cat = &self.base;
        if f.src != s.word || f.tgt != s.word {
            return Err(Error::ObjectMismatch("split idempotent endpoints".into()));
        }
        let stable = WordMor::compose(cat, &s.idem, &WordMor::compose(cat, f, &s.idem));
        if !f.is_idempotent(cat) || stable != *f {
            return Err(Error::NotIdempotent);
        }
        let object = SatObject {
            word: s.word.clone(),
            idem: f.clone(),
        };
        Ok(Splitting {
            object,
            inject: f.clone(),
            project: f.clone(),
        })
    }
}

// --- materialized truncations ---

/// A materialized truncation of the additive hull.
#[derive(Clone, Debug)]
pub struct HullCategory {
    pub cat: Arc<KCategory>,
    /// The word (of base object indices) behind each hull object.
    pub words: Vec<Vec<usize>>,
    pub base: Arc<KCategory>,
}

fn word_name(base: &KCategory, word: &[usize]) -> String {
    let parts: Vec<&str> = word.iter().map(|&x| base.object_name(x)).collect();
    format!("[{}]", parts.join(";"))
}

/// Materializes words of length ≤ bound (plus the empty word when
/// `with_zero`); composition is the block matrix rule.
pub fn additive_hull(base: &Arc<KCategory>, bound: usize, with_zero: bool) -> Result<HullCategory> {
    assert!(bound >= 1, "hull truncation bound must be at least 1");
    let nb = base.n_objects();
    let mut words: Vec<Vec<usize>> = Vec::new();
    if with_zero {
        words.push(vec![]);
    }
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..nb {
                let mut nw = w.clone();
                nw.push(x);
                next.push(nw);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let n = words.len();
    let names: Vec<String> = words.iter().map(|w| word_name(base, w)).collect();
    let mut hom_dims = vec![0usize; n * n];
    for (x, wx) in words.iter().enumerate() {
        for (y, wy) in words.iter().enumerate() {
            hom_dims[x * n + y] = WordMor::ambient_dim(base, wx, wy);
        }
    }
    let mut b = CategoryBuilder::new(base.ring().clone(), names, hom_dims.clone());
    let dim = |x: usize, y: usize| hom_dims[x * n + y];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if dim(x, y) == 0 || dim(y, z) == 0 {
                    continue;
                }
                for a in 0..dim(y, z) {
                    let mut unit = vec![base.ring().zero(); dim(y, z)];
                    unit[a] = base.ring().one();
                    let g = WordMor::unflatten(base, words[y].clone(), words[z].clone(), &unit);
                    for bb in 0..dim(x, y) {
                        let mut unit = vec![base.ring().zero(); dim(x, y)];
                        unit[bb] = base.ring().one();
                        let f =
                            WordMor::unflatten(base, words[x].clone(), words[y].clone(), &unit);
                        let comp = WordMor::compose(base, &g, &f);
                        b.set_comp(x, y, z, a, bb, comp.flatten());
                    }
                }
            }
        }
    }
    for (x, w) in words.iter().enumerate() {
        b.set_identity(x, WordMor::identity(base, w.clone()).flatten());
    }
    Ok(HullCategory {
        cat: Arc::new(b.build()?),
        words,
        base: base.clone(),
    })
}

impl HullCategory {
    pub fn word_index(&self, word: &[usize]) -> Option<usize> {
        self.words.iter().position(|w| w == word)
    }

    /// The canonical embedding σ: base → hull on length-1 words.
    pub fn embedding(&self) -> Result<KFunctor> {
        let nb = self.base.n_objects();
        let obj_map: Vec<usize> = (0..nb)
            .map(|x| self.word_index(&[x]).expect("length-1 words are present"))
            .collect();
        let ring = self.base.ring();
        let hom_maps = (0..nb * nb)
            .map(|i| Mat::identity(ring, self.base.hom_dim(i / nb, i % nb)))
            .collect();
        KFunctor::new(self.base.clone(), self.cat.clone(), obj_map, hom_maps)
    }
}

/// The hull functor F_⊕ between matching truncations, acting entrywise.
pub fn functor_plus(
    f: &KFunctor,
    src_hull: &HullCategory,
    tgt_hull: &HullCategory,
) -> Result<KFunctor> {
    if src_hull.words.len() != tgt_hull.words.len()
        || src_hull.words.iter().map(|w| w.len()).max() != tgt_hull.words.iter().map(|w| w.len()).max()
    {
        // Same base sizes can still disagree; the real check is that every
        // image word is present below.
    }
    if src_hull.base.as_ref() != f.src().as_ref() || tgt_hull.base.as_ref() != f.tgt().as_ref() {
        return Err(Error::ObjectMismatch("hull endpoints".into()));
    }
    let n = src_hull.words.len();
    let mut obj_map = Vec::with_capacity(n);
    for w in &src_hull.words {
        let fw: Vec<usize> = w.iter().map(|&x| f.obj_image(x)).collect();
        let Some(idx) = tgt_hull.word_index(&fw) else {
            return Err(Error::BoundMismatch(format!(
                "image word of length {} not materialized in the target hull",
                fw.len()
            )));
        };
        obj_map.push(idx);
    }
    let ring = f.src().ring();
    let mut hom_maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (wx, wy) = (&src_hull.words[x], &src_hull.words[y]);
            let cols = src_hull.cat.hom_dim(x, y);
            let rows = tgt_hull.cat.hom_dim(obj_map[x], obj_map[y]);
            let mut m = Mat::zeros(ring, rows, cols);
            for c in 0..cols {
                let mut unit = vec![ring.zero(); cols];
                unit[c] = ring.one();
                let wm = WordMor::unflatten(f.src(), wx.clone(), wy.clone(), &unit);
                // Entrywise image.
                let fw_src: Vec<usize> = wx.iter().map(|&o| f.obj_image(o)).collect();
                let fw_tgt: Vec<usize> = wy.iter().map(|&o| f.obj_image(o)).collect();
                let mut img = WordMor::zero(f.tgt(), fw_src, fw_tgt);
                for i in 0..wy.len() {
                    for j in 0..wx.len() {
                        *img.entry_mut(i, j) = f.apply(wm.entry(i, j));
                    }
                }
                for (r, v) in img.flatten().into_iter().enumerate() {
                    *m.at_mut(r, c) = v;
                }
            }
            hom_maps.push(m);
        }
    }
    KFunctor::new(src_hull.cat.clone(), tgt_hull.cat.clone(), obj_map, hom_maps)
}

/// A materialized full subcategory of A^♮ on listed idempotent pairs.
#[derive(Clone, Debug)]
pub struct KaroubiCategory {
    pub cat: Arc<KCategory>,
    /// (base object, idempotent) behind each materialized object.
    pub pairs: Vec<(usize, Morphism)>,
    pub base: Arc<KCategory>,
    /// Per-pair-square hom data: basis vectors inside the base hom space.
    homs: Vec<HomSubspace>,
}

#[derive(Clone, Debug)]
struct HomSubspace {
    basis: Vec<Vec<Scalar>>,
    solver: ColSolver,
}

/// Materializes the full subcategory of A^♮ on the identity pairs (always)
/// plus the listed idempotents, in order, duplicates dropped.
pub fn karoubi(base: &Arc<KCategory>, idems: &[Morphism]) -> Result<KaroubiCategory> {
    let ring = base.ring().clone();
    let mut pairs: Vec<(usize, Morphism, String)> = Vec::new();
    for x in 0..base.n_objects() {
        pairs.push((x, base.identity(x), format!("({},1)", base.object_name(x))));
    }
    for (k, e) in idems.iter().enumerate() {
        if e.src != e.tgt {
            return Err(Error::ObjectMismatch("idempotent endpoints".into()));
        }
        if base.compose(e, e) != *e {
            return Err(Error::NotIdempotent);
        }
        if pairs.iter().any(|(x, p, _)| *x == e.src && p == e) {
            continue;
        }
        pairs.push((e.src, e.clone(), format!("({},e{k})", base.object_name(e.src))));
    }
    let n = pairs.len();
    // Hom subspaces f·A(x,y)·e with deterministic pivot-column bases.
    let mut homs = Vec::with_capacity(n * n);
    for (sx, se, _) in &pairs {
        for (tx, te, _) in &pairs {
            let d = base.hom_dim(*sx, *tx);
            let mut sandwich = Mat::zeros(&ring, d, d);
            for c in 0..d {
                let m = base.basis_morphism(*sx, *tx, c);
                let sm = base.compose(te, &base.compose(&m, se));
                for (r, v) in sm.coeffs.into_iter().enumerate() {
                    *sandwich.at_mut(r, c) = v;
                }
            }
            let (_, pivots) = sandwich.rref(&ring);
            let basis: Vec<Vec<Scalar>> = pivots.iter().map(|&c| sandwich.col(c)).collect();
            let solver = ColSolver::new(&ring, &Mat::from_cols(&ring, d, &basis));
            homs.push(HomSubspace { basis, solver });
        }
    }
    let names: Vec<String> = pairs.iter().map(|(_, _, name)| name.clone()).collect();
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = homs[x * n + y].basis.len();
        }
    }
    let mut b = CategoryBuilder::new(ring.clone(), names, hom_dims.clone());
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                for (a, gv) in hyz.basis.iter().enumerate() {
                    let g = Morphism {
                        src: pairs[y].0,
                        tgt: pairs[z].0,
                        coeffs: gv.clone(),
                    };
                    for (bb, fv) in hxy.basis.iter().enumerate() {
                        let f = Morphism {
                            src: pairs[x].0,
                            tgt: pairs[y].0,
                            coeffs: fv.clone(),
                        };
                        let comp = base.compose(&g, &f);
                        let coords = hxz
                            .solver
                            .coords(&comp.coeffs)
                            .expect("composite stays in the sandwiched subspace");
                        b.set_comp(x, y, z, a, bb, coords);
                    }
                }
            }
        }
    }
    for x in 0..n {
        let coords = homs[x * n + x]
            .solver
            .coords(&pairs[x].1.coeffs)
            .expect("the idempotent is its own identity");
        b.set_identity(x, coords);
    }
    Ok(KaroubiCategory {
        cat: Arc::new(b.build()?),
        pairs: pairs.into_iter().map(|(x, e, _)| (x, e)).collect(),
        base: base.clone(),
        homs,
    })
}

impl KaroubiCategory {
    /// The canonical embedding τ: base → karoubi on identity pairs.
    pub fn embedding(&self) -> Result<KFunctor> {
        let nb = self.base.n_objects();
        let obj_map: Vec<usize> = (0..nb).collect(); // identity pairs come first
        let ring = self.base.ring();
        let n = self.pairs.len();
        let mut hom_maps = Vec::with_capacity(nb * nb);
        for x in 0..nb {
            for y in 0..nb {
                let h = &self.homs[x * n + y];
                let d = self.base.hom_dim(x, y);
                let mut m = Mat::zeros(ring, h.basis.len(), d);
                for c in 0..d {
                    let coords = h
                        .solver
                        .coords(&self.base.basis_morphism(x, y, c).coeffs)
                        .expect("identity sandwich is the full hom space");
                    for (r, v) in coords.into_iter().enumerate() {
                        *m.at_mut(r, c) = v;
                    }
                }
                hom_maps.push(m);
            }
        }
        KFunctor::new(self.base.clone(), self.cat.clone(), obj_map, hom_maps)
    }

    pub fn pair_index(&self, x: usize, e: &Morphism) -> Option<usize> {
        self.pairs.iter().position(|(px, pe)| *px == x && pe == e)
    }
}

// --- functors into a saturation view ---

/// A K-functor from a finitely presented category into a [`SatView`]. Basis
/// morphism images are stored as explicit word morphisms.
#[derive(Clone, Debug)]
pub struct SatFunctor {
    src: Arc<KCategory>,
    view: SatView,
    obj_map: Vec<SatObject>,
    mor_images: Vec<Vec<WordMor>>,
}

impl SatFunctor {
    pub fn new(
        src: Arc<KCategory>,
        view: SatView,
        obj_map: Vec<SatObject>,
        mor_images: Vec<Vec<WordMor>>,
    ) -> Result<SatFunctor> {
        let n = src.n_objects();
        if obj_map.len() != n || mor_images.len() != n * n {
            return Err(Error::InvalidFunctor("map tables have wrong length".into()));
        }
        if src.ring() != view.base().ring() {
            return Err(Error::RingMismatch("saturation functor endpoints".into()));
        }
        for s in &obj_map {
            s.validate(view.base())?;
        }
        let f = SatFunctor {
            src,
            view,
            obj_map,
            mor_images,
        };
        for x in 0..n {
            for y in 0..n {
                let imgs = &f.mor_images[x * n + y];
                if imgs.len() != f.src.hom_dim(x, y) {
                    return Err(Error::InvalidFunctor("basis image count".into()));
                }
                for m in imgs {
                    if m.src != f.obj_map[x].word || m.tgt != f.obj_map[y].word {
                        return Err(Error::ObjectMismatch("basis image endpoints".into()));
                    }
                }
            }
        }
        Ok(f)
    }

    /// ι∘F: the composite of an ordinary functor with the fibrant
    /// replacement embedding of its target.
    pub fn from_kfunctor(f: &KFunctor) -> SatFunctor {
        let view = SatView::new(f.tgt().clone());
        let n = f.src().n_objects();
        let obj_map: Vec<SatObject> = (0..n)
            .map(|x| SatObject::base(f.tgt(), f.obj_image(x)))
            .collect();
        let mut mor_images = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let imgs = (0..f.src().hom_dim(x, y))
                    .map(|b| {
                        let img = f.apply(&f.src().basis_morphism(x, y, b));
                        let mut wm = WordMor::zero(
                            f.tgt(),
                            vec![f.obj_image(x)],
                            vec![f.obj_image(y)],
                        );
                        *wm.entry_mut(0, 0) = img;
                        wm
                    })
                    .collect();
                mor_images.push(imgs);
            }
        }
        SatFunctor {
            src: f.src().clone(),
            view,
            obj_map,
            mor_images,
        }
    }

    /// The fibrant replacement ι_A: A → A⊕♮ itself.
    pub fn iota(cat: &Arc<KCategory>) -> SatFunctor {
        SatFunctor::from_kfunctor(&KFunctor::identity(cat.clone()))
    }

    pub fn src(&self) -> &Arc<KCategory> {
        &self.src
    }

    pub fn view(&self) -> &SatView {
        &self.view
    }

    pub fn obj_image(&self, x: usize) -> &SatObject {
        &self.obj_map[x]
    }

    pub fn basis_image(&self, x: usize, y: usize, b: usize) -> &WordMor {
        &self.mor_images[x * self.src.n_objects() + y][b]
    }

    pub fn apply(&self, m: &Morphism) -> WordMor {
        let cat = self.view.base();
        let ring = cat.ring();
        let mut acc = WordMor::zero(
            cat,
            self.obj_map[m.src].word.clone(),
            self.obj_map[m.tgt].word.clone(),
        );
        for (b, c) in m.coeffs.iter().enumerate() {
            if ring.is_zero(c) {
                continue;
            }
            let img = self.basis_image(m.src, m.tgt, b);
            acc = WordMor::add(cat, &acc, &WordMor::scale(cat, c, img));
        }
        acc
    }

    /// Functoriality plus idempotent-stability of every basis image.
    pub fn validate(&self) -> Result<()> {
        let cat = self.view.base();
        let n = self.src.n_objects();
        for x in 0..n {
            let img = self.apply(&self.src.identity(x));
            if img != self.obj_map[x].idem {
                return Err(Error::InvalidFunctor(
                    "identity not sent to the object idempotent".into(),
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for b in 0..self.src.hom_dim(x, y) {
                    let img = self.basis_image(x, y, b);
                    let stable = WordMor::compose(
                        cat,
                        &self.obj_map[y].idem,
                        &WordMor::compose(cat, img, &self.obj_map[x].idem),
                    );
                    if stable != *img {
                        return Err(Error::InvalidFunctor("image not idempotent-stable".into()));
                    }
                }
                for z in 0..n {
                    for a in 0..self.src.hom_dim(y, z) {
                        let g = self.src.basis_morphism(y, z, a);
                        for b in 0..self.src.hom_dim(x, y) {
                            let f = self.src.basis_morphism(x, y, b);
                            let lhs = self.apply(&self.src.compose(&g, &f));
                            let rhs =
                                WordMor::compose(cat, &self.apply(&g), &self.apply(&f));
                            if lhs != rhs {
                                return Err(Error::InvalidFunctor(
                                    "composition not preserved".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Unique-up-to-isomorphism extension to the saturation: a sat object
    /// over the source maps to the concatenated image word with the block
    /// matrix of entry images.
    pub fn extend_object(&self, s: &SatObject) -> SatObject {
        let idem = self.extend_mor(&s.idem);
        SatObject {
            word: idem.src.clone(),
            idem,
        }
    }

    pub fn extend_mor(&self, m: &WordMor) -> WordMor {
        let cat = self.view.base();
        let src_word: Vec<usize> = m
            .src
            .iter()
            .flat_map(|&x| self.obj_map[x].word.iter().copied())
            .collect();
        let tgt_word: Vec<usize> = m
            .tgt
            .iter()
            .flat_map(|&x| self.obj_map[x].word.iter().copied())
            .collect();
        let mut out = WordMor::zero(cat, src_word, tgt_word);
        let mut row_off = 0;
        for i in 0..m.tgt.len() {
            let rows = self.obj_map[m.tgt[i]].word.len();
            let mut col_off = 0;
            for j in 0..m.src.len() {
                let cols = self.obj_map[m.src[j]].word.len();
                let block = self.apply(m.entry(i, j));
                for bi in 0..rows {
                    for bj in 0..cols {
                        *out.entry_mut(row_off + bi, col_off + bj) = block.entry(bi, bj).clone();
                    }
                }
                col_off += cols;
            }
            row_off += rows;
        }
        out
    }
}

/// A finite full subcategory of a saturation view, materialized so the
/// ordinary functor/natural-transformation machinery applies.
#[derive(Clone, Debug)]
pub struct MaterializedSub {
    pub cat: Arc<KCategory>,
    pub objects: Vec<SatObject>,
    pub homs: Vec<SatHom>,
}

/// Materializes the full subcategory of the view on the given objects
/// (deduplicated, order preserved). Object names are positional.
pub fn materialize_full_subcategory(
    view: &SatView,
    objects: &[SatObject],
) -> Result<MaterializedSub> {
    let mut objs: Vec<SatObject> = Vec::new();
    for s in objects {
        if !objs.contains(s) {
            objs.push(s.clone());
        }
    }
    let n = objs.len();
    let base = view.base();
    let ring = base.ring().clone();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(view.hom(&objs[x], &objs[y])?);
        }
    }
    let names: Vec<String> = (0..n).map(|k| format!("s{k}")).collect();
    let mut hom_dims = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            hom_dims[x * n + y] = homs[x * n + y].dim();
        }
    }
    let mut b = CategoryBuilder::new(ring, names, hom_dims);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hyz, hxy, hxz) = (&homs[y * n + z], &homs[x * n + y], &homs[x * n + z]);
                for (a, g) in hyz.basis.iter().enumerate() {
                    for (bb, f) in hxy.basis.iter().enumerate() {
                        let comp = view.compose(g, f);
                        let coords = hxz
                            .coords(&comp)
                            .expect("composite stays in the demanded hom space");
                        b.set_comp(x, y, z, a, bb, coords);
                    }
                }
            }
        }
    }
    for x in 0..n {
        let coords = homs[x * n + x]
            .coords(&objs[x].idem)
            .expect("identity lies in its own hom space");
        b.set_identity(x, coords);
    }
    Ok(MaterializedSub {
        cat: Arc::new(b.build()?),
        objects: objs,
        homs,
    })
}

impl MaterializedSub {
    pub fn object_index(&self, s: &SatObject) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }

    /// Re-expresses a sat functor whose images all lie among `self.objects`
    /// as an ordinary functor into the materialized subcategory.
    pub fn restrict(&self, f: &SatFunctor) -> Result<KFunctor> {
        let n = f.src().n_objects();
        let m = self.objects.len();
        let mut obj_map = Vec::with_capacity(n);
        for x in 0..n {
            let Some(i) = self.object_index(f.obj_image(x)) else {
                return Err(Error::ObjectMismatch(
                    "functor image object not materialized".into(),
                ));
            };
            obj_map.push(i);
        }
        let ring = f.src().ring();
        let mut hom_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let hom = &self.homs[obj_map[x] * m + obj_map[y]];
                let cols = f.src().hom_dim(x, y);
                let mut mat = Mat::zeros(ring, hom.dim(), cols);
                for c in 0..cols {
                    let img = f.basis_image(x, y, c);
                    let coords = hom
                        .coords(img)
                        .ok_or_else(|| Error::InvalidFunctor("image outside hom space".into()))?;
                    for (r, v) in coords.into_iter().enumerate() {
                        *mat.at_mut(r, c) = v;
                    }
                }
                hom_maps.push(mat);
            }
        }
        KFunctor::new(f.src().clone(), self.cat.clone(), obj_map, hom_maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azumaya::Algebra;
    use crate::category::{algebra_as_category, ground_category};
    use crate::functor::const_object_functor;
    use crate::morita::{generator_category, Generator};
    use crate::scalar::Ring;

    fn gf(p: u64) -> Ring {
        Ring::prime_field(p).unwrap()
    }

    #[test]
    fn hull_of_ground_is_matrix_algebras() {
        let k = ground_category(&Ring::rationals());
        let hull = additive_hull(&k, 2, true).unwrap();
        assert!(hull.cat.is_valid());
        // Objects: [], [o], [o;o].
        assert_eq!(hull.cat.n_objects(), 3);
        let xx = hull.word_index(&[0, 0]).unwrap();
        assert_eq!(hull.cat.hom_dim(xx, xx), 4);
        // End([o;o]) is the 2×2 matrix algebra: check e_12∘e_21 = e_11.
        // Flatten order: (i,j) entries row-major, each 1-dim.
        let e12 = hull.cat.basis_morphism(xx, xx, 1);
        let e21 = hull.cat.basis_morphism(xx, xx, 2);
        let prod = hull.cat.compose(&e12, &e21);
        let mut expect = hull.cat.zero_morphism(xx, xx);
        expect.coeffs[0] = Ring::rationals().one();
        assert_eq!(prod, expect);
        // Empty word is a zero object.
        let z = hull.word_index(&[]).unwrap();
        for x in 0..hull.cat.n_objects() {
            assert_eq!(hull.cat.hom_dim(z, x), 0);
            assert_eq!(hull.cat.hom_dim(x, z), 0);
        }
    }

    #[test]
    fn hull_mixed_word_dims() {
        // 2 objects, all hom dims 1: Hom(x·y, x) is 2-dimensional.
        let ring = gf(2);
        let i = generator_category(Generator::IsoInterval, &ring).unwrap();
        let hull = additive_hull(&i, 2, false).unwrap();
        assert!(hull.cat.is_valid());
        let xy = hull.word_index(&[0, 1]).unwrap();
        let x = hull.word_index(&[0]).unwrap();
        assert_eq!(hull.cat.hom_dim(xy, x), 2);
        assert!(hull.embedding().unwrap().validate().is_ok());
    }

    #[test]
    fn hull_at_bound_one_is_isomorphic_presentation() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let hull = additive_hull(&m2, 1, false).unwrap();
        assert_eq!(hull.cat.n_objects(), m2.n_objects());
        let emb = hull.embedding().unwrap();
        emb.validate().unwrap();
        assert!(emb.is_fully_faithful());
        assert!(emb.is_surjective_on_objects());
    }

    #[test]
    fn functor_plus_acts_entrywise() {
        let ring = gf(2);
        let k = ground_category(&ring);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let unit = const_object_functor(m2.clone(), 0).unwrap();
        let hk = additive_hull(&k, 2, true).unwrap();
        let hm = additive_hull(&m2, 2, true).unwrap();
        let fp = functor_plus(&unit, &hk, &hm).unwrap();
        fp.validate().unwrap();
        // End([o;o]) in the source hull is 4-dim; image lands in the 16-dim
        // End of the target double word.
        let xx = hk.word_index(&[0, 0]).unwrap();
        let m = fp.hom_map(xx, xx);
        assert_eq!((m.rows, m.cols), (16, 4));

        // (G∘F)_⊕ = G_⊕ ∘ F_⊕ for G the identity.
        let idm = crate::functor::KFunctor::identity(m2.clone());
        let gp = functor_plus(&idm, &hm, &hm).unwrap();
        let comp_then_plus = functor_plus(&unit.then(&idm).unwrap(), &hk, &hm).unwrap();
        let plus_then_comp = fp.then(&gp).unwrap();
        for x in 0..hk.cat.n_objects() {
            assert_eq!(comp_then_plus.obj_image(x), plus_then_comp.obj_image(x));
            for y in 0..hk.cat.n_objects() {
                assert_eq!(comp_then_plus.hom_map(x, y), plus_then_comp.hom_map(x, y));
            }
        }
    }

    #[test]
    fn karoubi_of_e1_splits_the_idempotent() {
        let ring = gf(2);
        let e1 = generator_category(Generator::E1, &ring).unwrap();
        let e = e1.basis_morphism(0, 0, 1);
        let kar = karoubi(&e1, &[e]).unwrap();
        assert!(kar.cat.is_valid());
        let oe = kar.pair_index(0, &e1.basis_morphism(0, 0, 1)).unwrap();
        assert_eq!(kar.cat.hom_dim(oe, oe), 1);
        let o1 = 0; // identity pair comes first
        assert_eq!(kar.cat.hom_dim(o1, o1), 2);
    }

    #[test]
    fn karoubi_identity_pairs_reproduce_base() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let kar = karoubi(&m2, &[]).unwrap();
        assert_eq!(kar.cat.n_objects(), 1);
        let emb = kar.embedding().unwrap();
        emb.validate().unwrap();
        assert!(emb.is_fully_faithful());
        assert!(emb.is_surjective_on_objects());
    }

    #[test]
    fn karoubi_matrix_corner_dims() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let mut e11 = m2.zero_morphism(0, 0);
        e11.coeffs[0] = ring.one();
        let kar = karoubi(&m2, &[e11.clone()]).unwrap();
        assert!(kar.cat.is_valid());
        let pe = kar.pair_index(0, &e11).unwrap();
        let p1 = 0;
        assert_eq!(kar.cat.hom_dim(pe, pe), 1);
        assert_eq!(kar.cat.hom_dim(pe, p1), 2);
        assert_eq!(kar.cat.hom_dim(p1, pe), 2);
        // Non-idempotent is rejected.
        let mut nilp = m2.zero_morphism(0, 0);
        nilp.coeffs[1] = ring.one();
        assert!(matches!(karoubi(&m2, &[nilp]), Err(Error::NotIdempotent)));
    }

    #[test]
    fn sat_hom_end_of_free_object_is_base_end() {
        let ring = gf(2);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let view = SatView::new(m2.clone());
        let s = SatObject::base(&m2, 0);
        let hom = view.hom(&s, &s).unwrap();
        assert_eq!(hom.dim(), 4);
    }

    #[test]
    fn sat_hom_between_corners_of_m2() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let view = SatView::new(m2.clone());
        let base = SatObject::base(&m2, 0);
        let mut e11 = WordMor::identity(&m2, vec![0]);
        e11.entry_mut(0, 0).coeffs = vec![ring.one(), ring.zero(), ring.zero(), ring.zero()];
        let mut e22 = WordMor::identity(&m2, vec![0]);
        e22.entry_mut(0, 0).coeffs = vec![ring.zero(), ring.zero(), ring.zero(), ring.one()];
        let s = view.split(&base, &e11).unwrap().object;
        let t = view.split(&base, &e22).unwrap().object;
        let hom = view.hom(&s, &t).unwrap();
        // e22·M_2·e11 = span{e_21}.
        assert_eq!(hom.dim(), 1);
        assert_eq!(view.hom(&s, &s).unwrap().dim(), 1);
    }

    #[test]
    fn direct_sum_structure_maps() {
        let ring = gf(2);
        let k = ground_category(&ring);
        let view = SatView::new(k.clone());
        let x = SatObject::base(&k, 0);
        let ds = view.direct_sum(&x, &x);
        assert_eq!(ds.object.word, vec![0, 0]);
        for i in 0..2 {
            let pi = view.compose(&ds.project[i], &ds.inject[i]);
            assert_eq!(pi, x.idem);
        }
        let sum = WordMor::add(
            &k,
            &view.compose(&ds.inject[0], &ds.project[0]),
            &view.compose(&ds.inject[1], &ds.project[1]),
        );
        assert_eq!(sum, ds.object.idem);
        // Cross terms vanish.
        assert!(view
            .compose(&ds.project[0], &ds.inject[1])
            .is_zero(&k));
    }

    #[test]
    fn split_gives_retract() {
        let ring = gf(2);
        let e1 = generator_category(Generator::E1, &ring).unwrap();
        let view = SatView::new(e1.clone());
        let s = SatObject::base(&e1, 0);
        let mut e = WordMor::identity(&e1, vec![0]);
        e.entry_mut(0, 0).coeffs = vec![ring.zero(), ring.one()];
        let split = view.split(&s, &e).unwrap();
        let pi = view.compose(&split.project, &split.inject);
        assert_eq!(pi, split.object.idem);
        let ip = view.compose(&split.inject, &split.project);
        assert_eq!(ip, e);
        assert_eq!(view.hom(&split.object, &split.object).unwrap().dim(), 1);
    }

    #[test]
    fn sat_functor_extension_of_corner() {
        // G: K → SatView(M_2) picking (•, e_11); its extension takes the
        // free double word to a rank-2 idempotent object with 4-dim End.
        let ring = gf(2);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let k = ground_category(&ring);
        let view = SatView::new(m2.clone());
        let mut e11 = WordMor::identity(&m2, vec![0]);
        e11.entry_mut(0, 0).coeffs = vec![ring.one(), ring.zero(), ring.zero(), ring.zero()];
        let obj = SatObject {
            word: vec![0],
            idem: e11.clone(),
        };
        let g = SatFunctor::new(
            k.clone(),
            view.clone(),
            vec![obj],
            vec![vec![e11.clone()]],
        )
        .unwrap();
        g.validate().unwrap();
        let double = SatObject::free(&k, vec![0, 0]);
        let ext = g.extend_object(&double);
        ext.validate(&m2).unwrap();
        assert_eq!(ext.word, vec![0, 0]);
        let hom = view.hom(&ext, &ext).unwrap();
        assert_eq!(hom.dim(), 4);
    }

    #[test]
    fn iota_extension_restricts_to_identity() {
        let ring = gf(2);
        let e1 = generator_category(Generator::E1, &ring).unwrap();
        let iota = SatFunctor::iota(&e1);
        iota.validate().unwrap();
        let s = SatObject::free(&e1, vec![0, 0]);
        let ext = iota.extend_object(&s);
        assert_eq!(ext, s);
    }

    #[test]
    fn materialized_subcategory_is_valid_and_restriction_works() {
        let ring = gf(3);
        let m2 = algebra_as_category(&Algebra::matrix_algebra(&ring, 2)).unwrap();
        let view = SatView::new(m2.clone());
        let base = SatObject::base(&m2, 0);
        let mut e11 = WordMor::identity(&m2, vec![0]);
        e11.entry_mut(0, 0).coeffs = vec![ring.one(), ring.zero(), ring.zero(), ring.zero()];
        let corner = SatObject {
            word: vec![0],
            idem: e11,
        };
        let sub = materialize_full_subcategory(&view, &[base, corner.clone()]).unwrap();
        assert!(sub.cat.is_valid());
        assert_eq!(sub.cat.hom_dim(1, 1), 1);
        assert_eq!(sub.cat.hom_dim(0, 1), 2);

        let iota = SatFunctor::iota(&m2);
        let restricted = sub.restrict(&iota).unwrap();
        restricted.validate().unwrap();
        assert!(restricted.is_fully_faithful());
    }

    #[test]
    fn sat_hom_associativity_sampled() {
        let ring = gf(2);
        let e1 = generator_category(Generator::E1, &ring).unwrap();
        let view = SatView::new(e1.clone());
        let mut e = WordMor::identity(&e1, vec![0]);
        e.entry_mut(0, 0).coeffs = vec![ring.zero(), ring.one()];
        let objs = [
            SatObject::free(&e1, vec![0]),
            SatObject { word: vec![0], idem: e },
            SatObject::free(&e1, vec![0, 0]),
        ];
        for s in &objs {
            for t in &objs {
                for u in &objs {
                    let hst = view.hom(s, t).unwrap();
                    let htu = view.hom(t, u).unwrap();
                    for f in &hst.basis {
                        for g in &htu.basis {
                            for v in &objs {
                                let hv = view.hom(u, v).unwrap();
                                for h in &hv.basis {
                                    let lhs = view.compose(&view.compose(h, g), f);
                                    let rhs = view.compose(h, &view.compose(g, f));
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                        // Unit laws.
                        assert_eq!(view.compose(&t.idem, f), *f);
                        assert_eq!(view.compose(f, &s.idem), *f);
                    }
                }
            }
        }
    }
}
