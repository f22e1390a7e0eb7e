//! Ring handles and their canonical element representations.
//!
//! Five user-facing kinds are supported: the integers, the rationals,
//! integers mod n, finite fields presented as `F_p[x]/(f)` with `f`
//! irreducible, and quotients `k[x]/(m)` of a univariate polynomial ring
//! over a field.  A sixth kind, the plain polynomial ring `k[x]`, serves as
//! the Euclidean cover used when solving over the quotient kinds and is also
//! accepted by the normal-form routines.
//!
//! Every element has exactly one accepted representation: rationals are in
//! lowest terms with positive denominator, residues are least non-negative,
//! polynomial coefficients are trimmed and reduced mod the modulus.
//! Structural equality on `Elem` therefore decides ring equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A canonical element of some [`Ring`].  Which variant is accepted depends
/// on the ring kind; constructors on `Ring` always produce canonical forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    /// Polynomial coefficients over the base ring, ascending degree,
    /// trailing zeros trimmed.  The zero polynomial is the empty vector.
    Pol(Vec<Elem>),
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Rat(v) => write!(f, "{v}"),
            Elem::Mod(v) => write!(f, "{v}"),
            Elem::Pol(cs) => {
                write!(f, "poly[")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c:?}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Repr {
    Int,
    Rat,
    Mod(u64),
    Poly {
        base: Ring,
    },
    Quot {
        base: Ring,
        /// Monic modulus of degree >= 1, canonical coefficients over `base`.
        modulus: Vec<Elem>,
        /// True when the quotient is known to be a field.
        field: bool,
        /// True when constructed through [`Ring::galois_field`].
        gf: bool,
    },
}

/// A cheaply clonable handle on one of the supported rings.
#[derive(Clone)]
pub struct Ring(Arc<Repr>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Int => write!(f, "Z"),
            Repr::Rat => write!(f, "Q"),
            Repr::Mod(n) => write!(f, "Z/{n}"),
            Repr::Poly { base } => write!(f, "{base}[x]"),
            Repr::Quot { base, modulus, gf, .. } => {
                if *gf {
                    let q = self.size().unwrap_or(0);
                    write!(f, "GF({q})")
                } else {
                    write!(f, "{base}[x]/({})", poly_display(base, modulus))
                }
            }
        }
    }
}

fn poly_display(base: &Ring, cs: &[Elem]) -> String {
    let mut parts = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        if base.is_zero(c) {
            continue;
        }
        let cs = format!("{c:?}");
        parts.push(match i {
            0 => cs,
            1 if cs == "1" => "x".into(),
            1 => format!("{cs}*x"),
            _ if cs == "1" => format!("x^{i}"),
            _ => format!("{cs}*x^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl Ring {
    // ----- constructors -----

    pub fn integers() -> Ring {
        Ring(Arc::new(Repr::Int))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(Repr::Rat))
    }

    /// Integers mod `n`, elements stored as least non-negative residues.
    pub fn zmod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("zmod modulus {n} < 2")));
        }
        if n > (1 << 31) {
            return Err(Error::InvalidArgument(format!("zmod modulus {n} too large")));
        }
        Ok(Ring(Arc::new(Repr::Mod(n))))
    }

    /// Univariate polynomial ring over a field.
    pub fn poly(base: Ring) -> Result<Ring> {
        if !base.is_field() {
            return Err(Error::NotAField(format!("{base}")));
        }
        Ok(Ring(Arc::new(Repr::Poly { base })))
    }

    /// `base[x]/(modulus)` for a field `base` and a modulus of degree >= 1.
    /// The modulus is normalised to be monic.  Whether the quotient is a
    /// field is determined by an irreducibility test when the base is
    /// finite; over the rationals only degree-one moduli are marked fields.
    pub fn poly_quotient(base: Ring, modulus: &[Elem]) -> Result<Ring> {
        Self::quot_impl(base, modulus, false)
    }

    /// The finite field `F_p[x]/(f)`; errors unless `p` is prime and `f`
    /// is irreducible over `F_p`.
    pub fn galois_field(p: u64, modulus: &[Elem]) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let base = Ring::zmod(p)?;
        let r = Self::quot_impl(base, modulus, true)?;
        if !r.is_field() {
            return Err(Error::InvalidArgument(
                "galois_field modulus is reducible".into(),
            ));
        }
        Ok(r)
    }

    /// The prime field `F_p`.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ring::zmod(p)
    }

    fn quot_impl(base: Ring, modulus: &[Elem], gf: bool) -> Result<Ring> {
        if !base.is_field() {
            return Err(Error::NotAField(format!("{base}")));
        }
        let p = Ring::poly(base.clone())?;
        let m = p.canon(Elem::Pol(modulus.to_vec()))?;
        let mut cs = match m {
            Elem::Pol(cs) => cs,
            _ => unreachable!(),
        };
        if cs.len() < 2 {
            return Err(Error::InvalidArgument(
                "poly_quotient modulus must have degree >= 1".into(),
            ));
        }
        // make monic
        let lead = cs.last().unwrap().clone();
        if !base.is_one(&lead) {
            let li = base.inv(&lead).expect("field");
            for c in cs.iter_mut() {
                *c = base.mul(c, &li);
            }
        }
        let field = if base.is_finite() {
            poly_is_irreducible(&base, &cs)
        } else {
            cs.len() == 2
        };
        Ok(Ring(Arc::new(Repr::Quot { base, modulus: cs, field, gf })))
    }

    // ----- kind queries -----

    pub fn kind_name(&self) -> &'static str {
        match &*self.0 {
            Repr::Int => "integers",
            Repr::Rat => "rationals",
            Repr::Mod(_) => "zmod",
            Repr::Poly { .. } => "poly",
            Repr::Quot { gf: true, .. } => "gf",
            Repr::Quot { .. } => "polyquot",
        }
    }

    pub fn is_field(&self) -> bool {
        match &*self.0 {
            Repr::Int => false,
            Repr::Rat => true,
            Repr::Mod(n) => is_prime(*n),
            Repr::Poly { .. } => false,
            Repr::Quot { field, .. } => *field,
        }
    }

    /// Rings with a divisibility-decreasing division algorithm; these admit
    /// direct Smith normal forms.  Fields count trivially.
    pub fn is_euclidean(&self) -> bool {
        matches!(&*self.0, Repr::Int | Repr::Poly { .. }) || self.is_field()
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn size(&self) -> Option<u128> {
        match &*self.0 {
            Repr::Int | Repr::Rat | Repr::Poly { .. } => None,
            Repr::Mod(n) => Some(*n as u128),
            Repr::Quot { base, modulus, .. } => {
                let b = base.size()?;
                let deg = (modulus.len() - 1) as u32;
                b.checked_pow(deg)
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Repr::Int | Repr::Rat => 0,
            Repr::Mod(n) => *n,
            Repr::Poly { base } | Repr::Quot { base, .. } => base.characteristic(),
        }
    }

    /// Base field of the `poly` and quotient kinds.
    pub fn base_ring(&self) -> Option<Ring> {
        match &*self.0 {
            Repr::Poly { base } | Repr::Quot { base, .. } => Some(base.clone()),
            _ => None,
        }
    }

    /// Monic modulus of a quotient kind.
    pub fn modulus(&self) -> Option<Vec<Elem>> {
        match &*self.0 {
            Repr::Quot { modulus, .. } => Some(modulus.clone()),
            _ => None,
        }
    }

    pub fn zmod_n(&self) -> Option<u64> {
        match &*self.0 {
            Repr::Mod(n) => Some(*n),
            _ => None,
        }
    }

    // ----- canonical forms and arithmetic -----

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Repr::Int => Elem::Int(BigInt::zero()),
            Repr::Rat => Elem::Rat(BigRational::zero()),
            Repr::Mod(_) => Elem::Mod(0),
            Repr::Poly { .. } | Repr::Quot { .. } => Elem::Pol(Vec::new()),
        }
    }

    pub fn one(&self) -> Elem {
        match &*self.0 {
            Repr::Int => Elem::Int(BigInt::one()),
            Repr::Rat => Elem::Rat(BigRational::one()),
            Repr::Mod(_) => Elem::Mod(1),
            Repr::Poly { base } | Repr::Quot { base, .. } => Elem::Pol(vec![base.one()]),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            Repr::Int => Elem::Int(BigInt::from(v)),
            Repr::Rat => Elem::Rat(BigRational::from(BigInt::from(v))),
            Repr::Mod(n) => Elem::Mod(v.rem_euclid(*n as i64) as u64),
            Repr::Poly { base } | Repr::Quot { base, .. } => {
                let c = base.from_i64(v);
                if base.is_zero(&c) {
                    Elem::Pol(Vec::new())
                } else {
                    Elem::Pol(vec![c])
                }
            }
        }
    }

    /// Re-canonicalise an element built from raw parts; errors when the
    /// variant does not belong to this ring.
    pub fn canon(&self, e: Elem) -> Result<Elem> {
        match (&*self.0, e) {
            (Repr::Int, Elem::Int(v)) => Ok(Elem::Int(v)),
            (Repr::Rat, Elem::Rat(v)) => Ok(Elem::Rat(v)),
            (Repr::Rat, Elem::Int(v)) => Ok(Elem::Rat(BigRational::from(v))),
            (Repr::Mod(n), Elem::Mod(v)) => Ok(Elem::Mod(v % n)),
            (Repr::Mod(n), Elem::Int(v)) => {
                Ok(Elem::Mod(v.mod_floor(&BigInt::from(*n)).try_into().unwrap()))
            }
            (Repr::Poly { base }, Elem::Pol(cs)) => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    out.push(base.canon(c)?);
                }
                trim(base, &mut out);
                Ok(Elem::Pol(out))
            }
            (Repr::Quot { base, modulus, .. }, Elem::Pol(cs)) => {
                let mut out = Vec::with_capacity(cs.len());
                for c in cs {
                    out.push(base.canon(c)?);
                }
                trim(base, &mut out);
                let r = poly_rem(base, &out, modulus);
                Ok(Elem::Pol(r))
            }
            (_, e) => Err(Error::InvalidArgument(format!(
                "element {e:?} does not belong to {self}"
            ))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => v.is_zero(),
            Elem::Rat(v) => v.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Pol(cs) => cs.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Repr::Int, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (Repr::Rat, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Repr::Mod(n), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % n),
            (Repr::Poly { base }, Elem::Pol(x), Elem::Pol(y))
            | (Repr::Quot { base, .. }, Elem::Pol(x), Elem::Pol(y)) => {
                Elem::Pol(poly_add(base, x, y))
            }
            _ => panic!("ring/element mismatch in add over {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (Repr::Int, Elem::Int(x)) => Elem::Int(-x),
            (Repr::Rat, Elem::Rat(x)) => Elem::Rat(-x),
            (Repr::Mod(n), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { n - x }),
            (Repr::Poly { base }, Elem::Pol(x)) | (Repr::Quot { base, .. }, Elem::Pol(x)) => {
                Elem::Pol(x.iter().map(|c| base.neg(c)).collect())
            }
            _ => panic!("ring/element mismatch in neg over {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Repr::Int, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (Repr::Rat, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Repr::Mod(n), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (Repr::Poly { base }, Elem::Pol(x), Elem::Pol(y)) => {
                Elem::Pol(poly_mul(base, x, y))
            }
            (Repr::Quot { base, modulus, .. }, Elem::Pol(x), Elem::Pol(y)) => {
                let prod = poly_mul(base, x, y);
                Elem::Pol(poly_rem(base, &prod, modulus))
            }
            _ => panic!("ring/element mismatch in mul over {self}"),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if the element is a unit.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (Repr::Int, Elem::Int(x)) => {
                if x.is_one() || (-x).is_one() {
                    Some(Elem::Int(x.clone()))
                } else {
                    None
                }
            }
            (Repr::Rat, Elem::Rat(x)) => Some(Elem::Rat(x.recip())),
            (Repr::Mod(n), Elem::Mod(x)) => mod_inv(*x, *n).map(Elem::Mod),
            (Repr::Poly { base }, Elem::Pol(x)) => {
                if x.len() == 1 {
                    base.inv(&x[0]).map(|c| Elem::Pol(vec![c]))
                } else {
                    None
                }
            }
            (Repr::Quot { base, modulus, .. }, Elem::Pol(x)) => {
                // extended Euclid in base[x]
                let (g, s, _) = poly_gcdext(base, x, modulus);
                if g.len() == 1 {
                    let gi = base.inv(&g[0]).expect("field");
                    let mut s: Vec<Elem> = s.iter().map(|c| base.mul(c, &gi)).collect();
                    trim(base, &mut s);
                    Some(Elem::Pol(poly_rem(base, &s, modulus)))
                } else {
                    None
                }
            }
            _ => panic!("ring/element mismatch in inv over {self}"),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.inv(a).is_some()
    }

    /// `(u_inv, b)` with `b = u_inv * a` the unit-normalised associate:
    /// non-negative over the integers, monic for polynomials, `1` in fields.
    pub fn unit_normalize(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.one(), self.zero());
        }
        match (&*self.0, a) {
            (Repr::Int, Elem::Int(x)) => {
                if x.is_negative() {
                    (self.from_i64(-1), Elem::Int(-x))
                } else {
                    (self.one(), a.clone())
                }
            }
            (Repr::Poly { base }, Elem::Pol(x)) => {
                let li = base.inv(x.last().unwrap()).expect("field lead");
                let u = Elem::Pol(vec![li.clone()]);
                (u.clone(), self.mul(&u, a))
            }
            _ if self.is_field() => (self.inv(a).unwrap(), self.one()),
            _ => (self.one(), a.clone()),
        }
    }

    /// Division with remainder for the Euclidean kinds.
    pub fn divrem(&self, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
        if self.is_zero(b) {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        match (&*self.0, a, b) {
            (Repr::Int, Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_mod_floor(y);
                Ok((Elem::Int(q), Elem::Int(r)))
            }
            (Repr::Poly { base }, Elem::Pol(x), Elem::Pol(y)) => {
                let (q, r) = poly_divrem(base, x, y);
                Ok((Elem::Pol(q), Elem::Pol(r)))
            }
            _ if self.is_field() => {
                let q = self.mul(a, &self.inv(b).unwrap());
                Ok((q, self.zero()))
            }
            _ => Err(Error::UnsupportedRing { op: "divrem".into(), ring: format!("{self}") }),
        }
    }

    /// Euclidean size used to drive the normal-form pivoting; smaller is
    /// simpler.  Zero gets `None`.
    pub fn euclid_norm(&self, a: &Elem) -> Option<BigInt> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (Repr::Int, Elem::Int(x)) => Some(x.abs()),
            (Repr::Poly { .. }, Elem::Pol(cs)) => Some(BigInt::from(cs.len() as u64 - 1)),
            _ if self.is_field() => Some(BigInt::zero()),
            _ => None,
        }
    }

    /// True when `a` divides `b`; requires a Euclidean kind or a quotient
    /// kind (decided in the cover).
    pub fn divides(&self, a: &Elem, b: &Elem) -> bool {
        if self.is_zero(b) {
            return true;
        }
        if self.is_zero(a) {
            return false;
        }
        if self.is_euclidean() {
            let (_, r) = self.divrem(b, a).expect("euclidean");
            return self.is_zero(&r);
        }
        // quotient kinds: b = a*x solvable
        match self.enumerate() {
            Some(elems) => elems.iter().any(|x| self.mul(a, x) == *b),
            None => panic!("divides unsupported over {self}"),
        }
    }

    // ----- lifting between a quotient kind and its Euclidean cover -----

    /// Euclidean cover ring of a quotient kind: `Z` for `Z/n`, `k[x]` for
    /// `k[x]/(m)`.  Euclidean rings are their own cover.
    pub fn cover(&self) -> Ring {
        match &*self.0 {
            Repr::Mod(_) => Ring::integers(),
            Repr::Quot { base, .. } => Ring::poly(base.clone()).expect("field base"),
            _ => self.clone(),
        }
    }

    /// The modulus of `self` as an element of the cover ring.
    pub fn cover_modulus(&self) -> Option<Elem> {
        match &*self.0 {
            Repr::Mod(n) => Some(Elem::Int(BigInt::from(*n))),
            Repr::Quot { modulus, .. } => Some(Elem::Pol(modulus.clone())),
            _ => None,
        }
    }

    /// Canonical lift of an element into the cover ring.
    pub fn lift(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (Repr::Mod(_), Elem::Mod(v)) => Elem::Int(BigInt::from(*v)),
            (Repr::Quot { .. }, Elem::Pol(_)) => a.clone(),
            _ => a.clone(),
        }
    }

    /// Reduction of a cover-ring element back into `self`.
    pub fn reduce(&self, a: &Elem) -> Elem {
        match &*self.0 {
            Repr::Mod(n) => match a {
                Elem::Int(v) => Elem::Mod(v.mod_floor(&BigInt::from(*n)).try_into().unwrap()),
                Elem::Mod(v) => Elem::Mod(v % n),
                _ => panic!("bad reduce"),
            },
            Repr::Quot { base, modulus, .. } => match a {
                Elem::Pol(cs) => Elem::Pol(poly_rem(base, cs, modulus)),
                _ => panic!("bad reduce"),
            },
            _ => a.clone(),
        }
    }

    // ----- enumeration of finite rings -----

    /// All elements in a fixed deterministic order, for finite rings.
    pub fn enumerate(&self) -> Option<Vec<Elem>> {
        let n = self.size()?;
        let mut out = Vec::with_capacity(n as usize);
        for i in 0..n {
            out.push(self.elem_at(i));
        }
        Some(out)
    }

    /// Element at enumeration index `i` (finite rings only).
    pub fn elem_at(&self, i: u128) -> Elem {
        match &*self.0 {
            Repr::Mod(_) => Elem::Mod(i as u64),
            Repr::Quot { base, modulus, .. } => {
                let b = base.size().expect("finite base");
                let deg = modulus.len() - 1;
                let mut cs = Vec::with_capacity(deg);
                let mut rest = i;
                for _ in 0..deg {
                    cs.push(base.elem_at(rest % b));
                    rest /= b;
                }
                let mut cs = cs;
                trim(base, &mut cs);
                Elem::Pol(cs)
            }
            _ => panic!("elem_at on infinite ring {self}"),
        }
    }

    /// Enumeration index of an element (finite rings only).
    pub fn elem_index(&self, a: &Elem) -> u128 {
        match (&*self.0, a) {
            (Repr::Mod(_), Elem::Mod(v)) => *v as u128,
            (Repr::Quot { base, .. }, Elem::Pol(cs)) => {
                let b = base.size().expect("finite base");
                let mut idx = 0u128;
                for c in cs.iter().rev() {
                    idx = idx * b + base.elem_index(c);
                }
                idx
            }
            _ => panic!("elem_index on infinite ring {self}"),
        }
    }

    /// Small deterministic pseudorandom element driven by the given word
    /// source; infinite rings draw from a fixed small window.
    pub fn sample(&self, rng: &mut dyn rand::RngCore) -> Elem {
        match &*self.0 {
            Repr::Int => self.from_i64((rng.next_u64() % 9) as i64 - 4),
            Repr::Rat => {
                let num = (rng.next_u64() % 9) as i64 - 4;
                let den = (rng.next_u64() % 3) as i64 + 1;
                Elem::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            Repr::Mod(n) => Elem::Mod(rng.next_u64() % n),
            Repr::Poly { base } => {
                let deg = (rng.next_u64() % 3) as usize;
                let mut cs = Vec::with_capacity(deg + 1);
                for _ in 0..=deg {
                    cs.push(base.sample(rng));
                }
                trim(base, &mut cs);
                Elem::Pol(cs)
            }
            Repr::Quot { base, modulus, .. } => {
                let deg = modulus.len() - 1;
                let mut cs = Vec::with_capacity(deg);
                for _ in 0..deg {
                    cs.push(base.sample(rng));
                }
                trim(base, &mut cs);
                Elem::Pol(cs)
            }
        }
    }
}

// ----- polynomial helpers over a field base -----

pub(crate) fn trim(base: &Ring, cs: &mut Vec<Elem>) {
    while let Some(last) = cs.last() {
        if base.is_zero(last) {
            cs.pop();
        } else {
            break;
        }
    }
}

pub(crate) fn poly_add(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| base.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| base.zero());
        out.push(base.add(&x, &y));
    }
    trim(base, &mut out);
    out
}

pub(crate) fn poly_mul(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let p = base.mul(x, y);
            out[i + j] = base.add(&out[i + j], &p);
        }
    }
    trim(base, &mut out);
    out
}

/// Division with remainder in `base[x]`, `base` a field.
pub(crate) fn poly_divrem(base: &Ring, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    assert!(!b.is_empty(), "poly division by zero");
    let mut rem: Vec<Elem> = a.to_vec();
    trim(base, &mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![base.zero(); rem.len() - b.len() + 1];
    let li = base.inv(b.last().unwrap()).expect("field lead");
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = base.mul(rem.last().unwrap(), &li);
        quo[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = base.mul(&c, bc);
            rem[shift + i] = base.sub(&rem[shift + i], &t);
        }
        trim(base, &mut rem);
    }
    trim(base, &mut quo);
    (quo, rem)
}

pub(crate) fn poly_rem(base: &Ring, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    poly_divrem(base, a, m).1
}

/// Extended gcd in `base[x]`: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn poly_gcdext(
    base: &Ring,
    a: &[Elem],
    b: &[Elem],
) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let one = vec![base.one()];
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(base, &mut r0);
    trim(base, &mut r1);
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(base, &r0, &r1);
        let ns = poly_sub(base, &s0, &poly_mul(base, &q, &s1));
        let nt = poly_sub(base, &t0, &poly_mul(base, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    (r0, s0, t0)
}

pub(crate) fn poly_sub(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let nb: Vec<Elem> = b.iter().map(|c| base.neg(c)).collect();
    poly_add(base, a, &nb)
}

pub(crate) fn poly_gcd_monic(base: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (mut g, _, _) = poly_gcdext(base, a, b);
    if let Some(last) = g.last().cloned() {
        if !base.is_one(&last) {
            let li = base.inv(&last).expect("field");
            for c in g.iter_mut() {
                *c = base.mul(c, &li);
            }
        }
    }
    g
}

/// Irreducibility over a finite field base by trial division with all monic
/// divisors of degree at most `deg/2`.
pub(crate) fn poly_is_irreducible(base: &Ring, m: &[Elem]) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let elems = base.enumerate().expect("finite base");
    for d in 1..=deg / 2 {
        // monic candidates of degree d: d free coefficients
        let total = elems.len().pow(d as u32);
        for idx in 0..total {
            let mut cs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                cs.push(elems[rest % elems.len()].clone());
                rest /= elems.len();
            }
            cs.push(base.one());
            let (_, r) = poly_divrem(base, m, &cs);
            if r.is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        r0 -= q * r1;
        std::mem::swap(&mut r0, &mut r1);
        t0 -= q * t1;
        std::mem::swap(&mut t0, &mut t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}
