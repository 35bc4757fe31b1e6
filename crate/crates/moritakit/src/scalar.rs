//! Ground rings and exact scalar arithmetic.
//!
//! A [`Ring`] is the spec of the ground field: the rationals, a finite field
//! GF(p^n) presented as GF(p)[t]/(modulus), or a quadratic extension
//! Q[t]/(modulus). Elements are [`Scalar`]s in canonical form: reduced
//! fractions with positive denominator, or fully modulus-reduced coefficient
//! vectors. All operations go through the ring object so that a `Scalar`
//! stays a plain value.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use rand::Rng;
use smallvec::{smallvec, SmallVec};
use std::fmt;

/// Inline-capacity coefficient vector for GF(p^n) elements; n ≤ 4 never
/// touches the heap, which matters in the idempotent search loops.
pub type GfCoeffs = SmallVec<[u64; 4]>;

/// The ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The field of rational numbers.
    Rationals,
    /// GF(p^n) = GF(p)[t]/(modulus); `modulus` has length n+1, is monic and
    /// irreducible over GF(p), coefficients stored low-to-high. Prime fields
    /// are the n = 1 case with modulus t.
    GaloisField { p: u64, modulus: Vec<u64> },
    /// Q[t]/(modulus) for a monic irreducible quadratic, low-to-high
    /// (so `modulus` = [c0, c1, 1] encodes t² + c1·t + c0).
    QuadraticField { modulus: Vec<BigRational> },
}

/// An element of a [`Ring`], in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gf(GfCoeffs),
    Quad([BigRational; 2]),
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Deterministic primality test by trial division; ground primes are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// --- polynomial helpers over GF(p), little-endian coefficient vectors ---

fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + (p - lead % p) % p * c) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_scale(p: u64, a: &[u64], c: u64) -> Vec<u64> {
    poly_trim(a.iter().map(|&x| x * c % p).collect())
}

fn poly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y % p) % p;
    }
    poly_trim(out)
}

fn inv_mod_p(p: u64, a: u64) -> u64 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !r1.is_empty() {
        let lead = *r1.last().unwrap();
        let monic = poly_scale(p, &r1, inv_mod_p(p, lead));
        let rem = poly_rem(p, &r0, &monic);
        r0 = r1;
        r1 = rem;
    }
    r0
}

/// Extended Euclid: returns (g, s) with s·a ≡ g (mod m), g the monic gcd.
fn poly_ext_gcd(p: u64, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (poly_trim(m.to_vec()), poly_trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
    while !r1.is_empty() {
        // Divide r0 by r1.
        let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
        let mut rem = r0.clone();
        let lead_inv = inv_mod_p(p, *r1.last().unwrap());
        while rem.len() >= r1.len() && !rem.is_empty() {
            let shift = rem.len() - r1.len();
            let c = *rem.last().unwrap() * lead_inv % p;
            q[shift] = (q[shift] + c) % p;
            let mut sub = vec![0u64; shift];
            sub.extend(poly_scale(p, &r1, c));
            rem = poly_sub(p, &rem, &sub);
        }
        let s2 = poly_sub(p, &s0, &poly_mul(p, &poly_trim(q), &s1));
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if r0.is_empty() {
        return (r0, s0);
    }
    let lead_inv = inv_mod_p(p, *r0.last().unwrap());
    (poly_scale(p, &r0, lead_inv), poly_scale(p, &s0, lead_inv))
}

/// x^(p^d) mod m, by d rounds of p-th powering.
fn frobenius_power(p: u64, d: usize, m: &[u64]) -> Vec<u64> {
    let mut r = poly_rem(p, &[0, 1], m);
    for _ in 0..d {
        let mut acc = vec![1u64];
        let mut base = r.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(p, &poly_mul(p, &acc, &base), m);
            }
            base = poly_rem(p, &poly_mul(p, &base, &base), m);
            e >>= 1;
        }
        r = acc;
    }
    r
}

/// Irreducibility over GF(p): f has no factor of degree ≤ deg(f)/2 iff
/// gcd(f, x^(p^d) − x) = 1 for d = 1..deg/2, plus a squarefree-at-the-top
/// check via d = deg itself (x^(p^deg) ≡ x mod f exactly when f splits in
/// GF(p^deg), which a degree-deg irreducible does).
fn gf_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let xpd = frobenius_power(p, d, f);
        let diff = poly_sub(p, &xpd, &[0, 1]);
        let g = poly_gcd(p, f, &diff);
        if g.len() != 1 {
            return false;
        }
    }
    let xpn = frobenius_power(p, deg, f);
    poly_sub(p, &xpn, &[0, 1]).is_empty()
}

fn rational_is_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    &(&sn * &sn) == n && &(&sd * &sd) == d
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring::Rationals
    }

    /// GF(p^n). `modulus` (low-to-high, length n+1, monic, irreducible) may
    /// be omitted only for n = 1, where t is used.
    pub fn galois_field(p: u64, n: usize, modulus: Option<Vec<u64>>) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidRing("p too large".into()));
        }
        if n == 0 {
            return Err(Error::InvalidRing("extension degree must be positive".into()));
        }
        let modulus = match modulus {
            Some(m) => m.iter().map(|c| c % p).collect::<Vec<_>>(),
            None if n == 1 => vec![0, 1],
            None => {
                return Err(Error::InvalidRing(
                    "modulus required for extension degree > 1".into(),
                ))
            }
        };
        if modulus.len() != n + 1 {
            return Err(Error::InvalidRing(format!(
                "modulus must have degree {n} (length {})",
                n + 1
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        if !gf_irreducible(p, &modulus) {
            return Err(Error::InvalidRing("modulus is reducible over GF(p)".into()));
        }
        Ok(Ring::GaloisField { p, modulus })
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        Ring::galois_field(p, 1, None)
    }

    /// Q[t]/(t² + c1·t + c0): `modulus` = [c0, c1, 1].
    pub fn quadratic_field(modulus: Vec<BigRational>) -> Result<Ring> {
        if modulus.len() != 3 {
            return Err(Error::InvalidRing(
                "quadratic extension modulus must have degree 2".into(),
            ));
        }
        if !modulus[2].is_one() {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        let disc = &modulus[1] * &modulus[1] - big(4) * &modulus[0];
        if rational_is_square(&disc) {
            return Err(Error::InvalidRing(
                "modulus is reducible over Q (square discriminant)".into(),
            ));
        }
        Ok(Ring::QuadraticField { modulus })
    }

    /// Q(i) = Q[t]/(t²+1).
    pub fn gaussian_rationals() -> Ring {
        Ring::QuadraticField {
            modulus: vec![big(1), big(0), big(1)],
        }
    }

    /// Degree over the prime subfield (Q or GF(p)); 1 for Q and GF(p).
    pub fn extension_degree(&self) -> usize {
        match self {
            Ring::Rationals => 1,
            Ring::GaloisField { modulus, .. } => modulus.len() - 1,
            Ring::QuadraticField { .. } => 2,
        }
    }

    /// The prime subfield (Q for characteristic 0).
    pub fn prime_subfield(&self) -> Ring {
        match self {
            Ring::Rationals | Ring::QuadraticField { .. } => Ring::Rationals,
            Ring::GaloisField { p, .. } => Ring::GaloisField {
                p: *p,
                modulus: vec![0, 1],
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::GaloisField { .. })
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Rationals => "Q".into(),
            Ring::GaloisField { p, modulus } => {
                let n = modulus.len() - 1;
                if n == 1 {
                    format!("GF({p})")
                } else {
                    format!("GF({p}^{n})")
                }
            }
            Ring::QuadraticField { modulus } => {
                format!("Q[t]/(t^2+({})t+({}))", modulus[1], modulus[0])
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::zero()),
            Ring::GaloisField { modulus, .. } => Scalar::Gf(smallvec![0; modulus.len() - 1]),
            Ring::QuadraticField { .. } => Scalar::Quad([BigRational::zero(), BigRational::zero()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(big(n)),
            Ring::GaloisField { p, modulus } => {
                let mut v: GfCoeffs = smallvec![0; modulus.len() - 1];
                v[0] = n.rem_euclid(*p as i64) as u64;
                Scalar::Gf(v)
            }
            Ring::QuadraticField { .. } => Scalar::Quad([big(n), BigRational::zero()]),
        }
    }

    /// Whether `s` is a canonical element of this ring.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Ring::Rationals, Scalar::Rat(_)) => true,
            (Ring::GaloisField { p, modulus }, Scalar::Gf(v)) => {
                v.len() == modulus.len() - 1 && v.iter().all(|c| c < p)
            }
            (Ring::QuadraticField { .. }, Scalar::Quad(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gf(v) => v.iter().all(|&c| c == 0),
            Scalar::Quad(q) => q[0].is_zero() && q[1].is_zero(),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        *s == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Ring::GaloisField { p, .. }, Scalar::Gf(x), Scalar::Gf(y)) => {
                Scalar::Gf(x.iter().zip(y.iter()).map(|(&u, &v)| (u + v) % p).collect())
            }
            (_, Scalar::Quad(x), Scalar::Quad(y)) => {
                Scalar::Quad([&x[0] + &y[0], &x[1] + &y[1]])
            }
            _ => panic!("scalar/ring mismatch in add"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Ring::GaloisField { p, .. }, Scalar::Gf(x)) => {
                Scalar::Gf(x.iter().map(|&u| (p - u % p) % p).collect())
            }
            (_, Scalar::Quad(x)) => Scalar::Quad([-&x[0], -&x[1]]),
            _ => panic!("scalar/ring mismatch in neg"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Ring::GaloisField { p, modulus }, Scalar::Gf(x), Scalar::Gf(y)) => {
                let n = modulus.len() - 1;
                if n == 1 {
                    return Scalar::Gf(smallvec![x[0] * y[0] % p]);
                }
                let prod = poly_mul(*p, x, y);
                let red = poly_rem(*p, &prod, modulus);
                let mut v: GfCoeffs = smallvec![0; n];
                for (i, c) in red.into_iter().enumerate() {
                    v[i] = c;
                }
                Scalar::Gf(v)
            }
            (Ring::QuadraticField { modulus }, Scalar::Quad(x), Scalar::Quad(y)) => {
                // (x0 + x1 t)(y0 + y1 t) with t² = −c1 t − c0.
                let c0 = &modulus[0];
                let c1 = &modulus[1];
                let t2 = &x[1] * &y[1];
                Scalar::Quad([
                    &x[0] * &y[0] - &t2 * c0,
                    &x[0] * &y[1] + &x[1] * &y[0] - &t2 * c1,
                ])
            }
            _ => panic!("scalar/ring mismatch in mul"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (_, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (Ring::GaloisField { p, modulus }, Scalar::Gf(x)) => {
                let n = modulus.len() - 1;
                if n == 1 {
                    return Ok(Scalar::Gf(smallvec![inv_mod_p(*p, x[0])]));
                }
                let (g, s) = poly_ext_gcd(*p, x, modulus);
                debug_assert_eq!(g, vec![1], "modulus not coprime to nonzero element");
                let red = poly_rem(*p, &s, modulus);
                let mut v: GfCoeffs = smallvec![0; n];
                for (i, c) in red.into_iter().enumerate() {
                    v[i] = c;
                }
                Scalar::Gf(v)
            }
            (Ring::QuadraticField { modulus }, Scalar::Quad(x)) => {
                // Conjugate of x0 + x1 t is (x0 − x1 c1) − x1 t; the norm
                // x·x̄ = x0² − x0 x1 c1 + x1² c0 is a nonzero rational.
                let c0 = &modulus[0];
                let c1 = &modulus[1];
                let norm = &x[0] * &x[0] - &x[0] * &x[1] * c1 + &x[1] * &x[1] * c0;
                debug_assert!(!norm.is_zero());
                let ninv = norm.recip();
                Scalar::Quad([(&x[0] - &x[1] * c1) * &ninv, -&x[1] * &ninv])
            }
            _ => panic!("scalar/ring mismatch in inv"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The checked entry point for the add/mul/inv/eq family: validates that
    /// both operands canonically belong to this ring before operating.
    pub fn checked_op(&self, op: RingOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
        if !self.contains(a) || b.map_or(false, |b| !self.contains(b)) {
            return Err(Error::RingMismatch(format!(
                "operands do not belong to {}",
                self.name()
            )));
        }
        match op {
            RingOp::Add => Ok(self.add(a, b.expect("add needs two operands"))),
            RingOp::Mul => Ok(self.mul(a, b.expect("mul needs two operands"))),
            RingOp::Sub => Ok(self.sub(a, b.expect("sub needs two operands"))),
            RingOp::Inv => self.inv(a),
            RingOp::Neg => Ok(self.neg(a)),
        }
    }

    /// Number of elements for finite rings.
    pub fn element_count(&self) -> Option<u128> {
        match self {
            Ring::GaloisField { p, modulus } => {
                let n = modulus.len() - 1;
                let mut acc: u128 = 1;
                for _ in 0..n {
                    acc = acc.checked_mul(*p as u128)?;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// The idx-th element in the deterministic base-p digit order.
    pub fn element_at(&self, mut idx: u128) -> Scalar {
        match self {
            Ring::GaloisField { p, modulus } => {
                let n = modulus.len() - 1;
                let mut v: GfCoeffs = smallvec![0; n];
                for c in v.iter_mut() {
                    *c = (idx % *p as u128) as u64;
                    idx /= *p as u128;
                }
                Scalar::Gf(v)
            }
            _ => panic!("element_at only on finite rings"),
        }
    }

    /// Seeded sampling: uniform over finite fields, small fractions over Q.
    pub fn sample(&self, rng: &mut impl Rng) -> Scalar {
        match self {
            Ring::Rationals => {
                let n = rng.gen_range(-4i64..=4);
                let d = rng.gen_range(1i64..=4);
                Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Ring::GaloisField { p, modulus } => {
                let n = modulus.len() - 1;
                Scalar::Gf((0..n).map(|_| rng.gen_range(0..*p)).collect())
            }
            Ring::QuadraticField { .. } => {
                let mut part = || {
                    let n = rng.gen_range(-3i64..=3);
                    BigRational::from_integer(BigInt::from(n))
                };
                Scalar::Quad([part(), part()])
            }
        }
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Render an element for reports; JSON encoding lives in [`crate::io`].
    pub fn display(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Gf(v) => {
                if v.len() == 1 {
                    v[0].to_string()
                } else {
                    format!(
                        "[{}]",
                        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                    )
                }
            }
            Scalar::Quad(q) => format!("{}+({})t", q[0], q[1]),
        }
    }
}

/// The operation selector for [`Ring::checked_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A canonical field embedding K → L, applied coefficientwise to transport
/// structure constants under base change.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarEmbedding {
    pub from: Ring,
    pub to: Ring,
}

impl ScalarEmbedding {
    /// The canonical embedding where one exists: identity, the constant
    /// embedding GF(p) → GF(p^n), or the constant embedding Q → Q[t]/(f).
    pub fn canonical(from: &Ring, to: &Ring) -> Result<ScalarEmbedding> {
        let ok = from == to
            || match (from, to) {
                (Ring::GaloisField { p: p1, modulus: m1 }, Ring::GaloisField { p: p2, .. }) => {
                    p1 == p2 && m1.len() == 2
                }
                (Ring::Rationals, Ring::QuadraticField { .. }) => true,
                _ => false,
            };
        if !ok {
            return Err(Error::RingMismatch(format!(
                "no canonical embedding {} -> {}",
                from.name(),
                to.name()
            )));
        }
        Ok(ScalarEmbedding {
            from: from.clone(),
            to: to.clone(),
        })
    }

    pub fn apply(&self, s: &Scalar) -> Scalar {
        if self.from == self.to {
            return s.clone();
        }
        match (s, &self.to) {
            (Scalar::Gf(v), Ring::GaloisField { modulus, .. }) => {
                let mut out: GfCoeffs = smallvec![0; modulus.len() - 1];
                out[0] = v[0];
                Scalar::Gf(out)
            }
            (Scalar::Rat(r), Ring::QuadraticField { .. }) => {
                Scalar::Quad([r.clone(), BigRational::zero()])
            }
            _ => panic!("embedding applied to foreign scalar"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf4() -> Ring {
        Ring::galois_field(2, 2, Some(vec![1, 1, 1])).unwrap()
    }

    #[test]
    fn gf2_characteristic() {
        let r = Ring::prime_field(2).unwrap();
        let one = r.one();
        assert_eq!(r.add(&one, &one), r.zero());
    }

    #[test]
    fn rational_product_reduces() {
        let r = Ring::rationals();
        let a = Scalar::Rat(BigRational::new(BigInt::from(2), BigInt::from(3)));
        let b = Scalar::Rat(BigRational::new(BigInt::from(3), BigInt::from(4)));
        let half = Scalar::Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(r.mul(&a, &b), half);
    }

    #[test]
    fn gf4_generator_square() {
        let r = gf4();
        let t = Scalar::Gf(smallvec![0, 1]);
        let t_plus_1 = Scalar::Gf(smallvec![1, 1]);
        assert_eq!(r.mul(&t, &t), t_plus_1);
    }

    #[test]
    fn gaussian_i_squared() {
        let r = Ring::gaussian_rationals();
        let i = Scalar::Quad([big(0), big(1)]);
        assert_eq!(r.mul(&i, &i), r.from_i64(-1));
        let one_plus_i = Scalar::Quad([big(1), big(1)]);
        let inv = r.inv(&one_plus_i).unwrap();
        assert_eq!(r.mul(&one_plus_i, &inv), r.one());
    }

    #[test]
    fn reducible_moduli_rejected() {
        // t²+1 = (t+1)² over GF(2).
        assert!(Ring::galois_field(2, 2, Some(vec![1, 0, 1])).is_err());
        // t²−1 over Q.
        assert!(Ring::quadratic_field(vec![big(-1), big(0), big(1)]).is_err());
        assert!(Ring::galois_field(4, 1, None).is_err());
    }

    #[test]
    fn element_enumeration_roundtrip() {
        let r = Ring::galois_field(3, 2, Some(vec![1, 0, 1])).unwrap(); // t²+1 over GF(3)
        assert_eq!(r.element_count(), Some(9));
        let mut seen = std::collections::HashSet::new();
        for i in 0..9 {
            seen.insert(format!("{:?}", r.element_at(i)));
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn checked_op_rejects_foreign_scalars() {
        let r = Ring::prime_field(2).unwrap();
        let q = Ring::rationals().one();
        assert!(matches!(
            r.checked_op(RingOp::Add, &q, Some(&r.one())),
            Err(Error::RingMismatch(_))
        ));
        assert!(matches!(
            r.checked_op(RingOp::Inv, &r.zero(), None),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn canonical_embeddings() {
        let gf2 = Ring::prime_field(2).unwrap();
        let e = ScalarEmbedding::canonical(&gf2, &gf4()).unwrap();
        assert_eq!(e.apply(&gf2.one()), gf4().one());
        let q = Ring::rationals();
        let qi = Ring::gaussian_rationals();
        let e = ScalarEmbedding::canonical(&q, &qi).unwrap();
        assert_eq!(e.apply(&q.from_i64(-2)), qi.from_i64(-2));
        assert!(ScalarEmbedding::canonical(&gf4(), &gf2).is_err());
    }

    fn field_axioms(r: &Ring, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..40 {
            let a = r.sample(&mut rng);
            let b = r.sample(&mut rng);
            let c = r.sample(&mut rng);
            assert_eq!(r.add(&a, &b), r.add(&b, &a));
            assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            assert_eq!(
                r.mul(&a, &r.add(&b, &c)),
                r.add(&r.mul(&a, &b), &r.mul(&a, &c))
            );
            assert_eq!(
                r.mul(&r.mul(&a, &b), &c),
                r.mul(&a, &r.mul(&b, &c))
            );
            assert_eq!(r.mul(&a, &r.one()), a);
            if !r.is_zero(&a) {
                let ai = r.inv(&a).unwrap();
                assert_eq!(r.mul(&a, &ai), r.one());
            }
        }
    }

    #[test]
    fn axioms_on_sampled_scalars() {
        field_axioms(&Ring::rationals(), 1);
        field_axioms(&Ring::prime_field(5).unwrap(), 2);
        field_axioms(&gf4(), 3);
        field_axioms(&Ring::galois_field(3, 2, Some(vec![1, 0, 1])).unwrap(), 4);
        field_axioms(&Ring::gaussian_rationals(), 5);
        field_axioms(
            &Ring::quadratic_field(vec![big(-5), big(0), big(1)]).unwrap(),
            6,
        );
    }

    proptest! {
        #[test]
        fn gf8_inverse_roundtrip(idx in 1u128..512) {
            let r = Ring::galois_field(2, 3, Some(vec![1, 1, 0, 1])).unwrap();
            let a = r.element_at(idx % 8);
            if !r.is_zero(&a) {
                let ai = r.inv(&a).unwrap();
                prop_assert_eq!(r.mul(&a, &ai), r.one());
            }
        }

        #[test]
        fn frobenius_is_additive_gf9(i in 0u128..9, j in 0u128..9) {
            let r = Ring::galois_field(3, 2, Some(vec![1, 0, 1])).unwrap();
            let (a, b) = (r.element_at(i), r.element_at(j));
            let frob = |x: &Scalar| r.pow(x, 3);
            prop_assert_eq!(frob(&r.add(&a, &b)), r.add(&frob(&a), &frob(&b)));
        }
    }
}
