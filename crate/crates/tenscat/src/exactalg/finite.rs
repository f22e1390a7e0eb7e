//! Ring-level structure that the categorical layers consume: nilpotents,
//! idempotents, von Neumann regularity, the reduced replacement of a ring,
//! and enumeration of unital ring homomorphisms between finite rings.

use super::ring::{poly_divrem, poly_gcd_monic, poly_mul, trim, Elem, Ring};
use crate::{Error, Result};

/// Elements with some power zero, in enumeration order.  Infinite rings
/// are supported only when reduced, where the answer is `[0]`.
pub fn nilradical(r: &Ring) -> Result<Vec<Elem>> {
    if let Some(elems) = r.enumerate() {
        return Ok(elems.into_iter().filter(|x| is_nilpotent(r, x)).collect());
    }
    if is_reduced(r)? {
        Ok(vec![r.zero()])
    } else {
        Err(Error::InfiniteRing(format!(
            "cannot list the nilradical of {r}"
        )))
    }
}

fn is_nilpotent(r: &Ring, x: &Elem) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut p = x.clone();
    loop {
        if r.is_zero(&p) {
            return true;
        }
        if !seen.insert(p.clone()) {
            return false;
        }
        p = r.mul(&p, x);
    }
}

/// Whether the zero element is the only nilpotent.
pub fn is_reduced(r: &Ring) -> Result<bool> {
    if let Some(elems) = r.enumerate() {
        return Ok(elems.iter().all(|x| r.is_zero(x) || !is_nilpotent(r, x)));
    }
    match r.kind_name() {
        "integers" | "rationals" | "poly" => Ok(true),
        "polyquot" | "gf" => {
            let base = r.base_ring().expect("quotient base");
            let m = r.modulus().expect("quotient modulus");
            Ok(poly_is_squarefree(&base, &m))
        }
        _ => Err(Error::UnsupportedRing { op: "is_reduced".into(), ring: format!("{r}") }),
    }
}

/// Solutions of `e * e = e`, in enumeration order.  Infinite rings are
/// supported when the answer is forced to `[0, 1]` (domains and local
/// quotients of `Q[x]` by a prime power).
pub fn idempotents(r: &Ring) -> Result<Vec<Elem>> {
    if let Some(elems) = r.enumerate() {
        return Ok(elems
            .into_iter()
            .filter(|e| r.mul(e, e) == *e)
            .collect());
    }
    match r.kind_name() {
        "integers" | "rationals" | "poly" => Ok(vec![r.zero(), r.one()]),
        _ => Err(Error::InfiniteRing(format!(
            "cannot enumerate idempotents of {r}"
        ))),
    }
}

/// Every element has a weak inverse `x` with `a * x * a = a`.  Finite
/// rings are decided by exhaustive search; infinite kinds by structure.
pub fn is_von_neumann_regular(r: &Ring) -> Result<bool> {
    if let Some(elems) = r.enumerate() {
        for a in &elems {
            let found = elems.iter().any(|x| {
                let axa = r.mul(&r.mul(a, x), a);
                axa == *a
            });
            if !found {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    match r.kind_name() {
        "rationals" => Ok(true),
        "integers" | "poly" => Ok(false),
        "polyquot" | "gf" => is_reduced(r),
        _ => Err(Error::UnsupportedRing {
            op: "is_von_neumann_regular".into(),
            ring: format!("{r}"),
        }),
    }
}

// ----- reduced replacement -----

/// How a ring homomorphism is stored.
#[derive(Clone, Debug)]
enum HomRepr {
    Identity,
    /// image of the element at each enumeration index of the domain
    Table(Vec<Elem>),
    /// same Euclidean cover, codomain modulus dividing the domain modulus
    CoverReduce,
    /// quotient of a polynomial ring evaluated at a codomain point,
    /// coefficients carried over unchanged
    EvalAt(Elem),
}

#[derive(Clone, Debug)]
pub struct RingHom {
    pub domain: Ring,
    pub codomain: Ring,
    repr: HomRepr,
}

impl RingHom {
    pub fn identity(r: &Ring) -> Self {
        RingHom { domain: r.clone(), codomain: r.clone(), repr: HomRepr::Identity }
    }

    pub fn from_table(domain: Ring, codomain: Ring, table: Vec<Elem>) -> Self {
        RingHom { domain, codomain, repr: HomRepr::Table(table) }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match &self.repr {
            HomRepr::Identity => e.clone(),
            HomRepr::Table(t) => t[self.domain.elem_index(e) as usize].clone(),
            HomRepr::CoverReduce => self.codomain.reduce(&self.domain.lift(e)),
            HomRepr::EvalAt(a) => match e {
                Elem::Pol(cs) => {
                    let mut acc = self.codomain.zero();
                    for c in cs.iter().rev() {
                        acc = self.codomain.add(&self.codomain.mul(&acc, a), c);
                    }
                    acc
                }
                other => other.clone(),
            },
        }
    }

    /// Full multiplicative and additive check over a finite domain.
    pub fn verify(&self) -> Result<()> {
        let elems = self.domain.enumerate().ok_or_else(|| {
            Error::InfiniteRing("hom verification needs a finite domain".into())
        })?;
        if self.apply(&self.domain.one()) != self.codomain.one() {
            return Err(Error::InvalidArgument("hom does not fix the unit".into()));
        }
        for a in &elems {
            for b in &elems {
                let s = self.apply(&self.domain.add(a, b));
                let s2 = self.codomain.add(&self.apply(a), &self.apply(b));
                let p = self.apply(&self.domain.mul(a, b));
                let p2 = self.codomain.mul(&self.apply(a), &self.apply(b));
                if s != s2 || p != p2 {
                    return Err(Error::InvalidArgument("not a ring homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, next: &RingHom) -> Result<RingHom> {
        if self.codomain != next.domain {
            return Err(Error::EndpointMismatch("ring hom composition".into()));
        }
        let elems = self.domain.enumerate().ok_or_else(|| {
            Error::InfiniteRing("hom composition needs a finite domain".into())
        })?;
        let table = elems.iter().map(|e| next.apply(&self.apply(e))).collect();
        Ok(RingHom::from_table(self.domain.clone(), next.codomain.clone(), table))
    }

    pub fn eq_hom(&self, other: &RingHom) -> Result<bool> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Ok(false);
        }
        let elems = self.domain.enumerate().ok_or_else(|| {
            Error::InfiniteRing("hom comparison needs a finite domain".into())
        })?;
        Ok(elems.iter().all(|e| self.apply(e) == other.apply(e)))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let elems = self.domain.enumerate().ok_or_else(|| {
            Error::InfiniteRing("surjectivity check needs a finite domain".into())
        })?;
        let count = self.codomain.size().ok_or_else(|| {
            Error::InfiniteRing("surjectivity check needs a finite codomain".into())
        })?;
        let mut seen = std::collections::HashSet::new();
        for e in &elems {
            seen.insert(self.apply(e));
        }
        Ok(seen.len() as u128 == count)
    }
}

/// The reduced quotient `R / nil(R)` in canonical presentation, with the
/// quotient map.  Degree-one polynomial quotients collapse to the base
/// field.  The result is always von Neumann regular.
pub fn r_abs(r: &Ring) -> Result<(Ring, RingHom)> {
    match r.kind_name() {
        "integers" | "rationals" | "poly" => Ok((r.clone(), RingHom::identity(r))),
        "zmod" => {
            let n = r.zmod_n().expect("zmod");
            let rad = squarefree_u64(n);
            if rad == n {
                return Ok((r.clone(), RingHom::identity(r)));
            }
            let target = Ring::zmod(rad)?;
            let table = (0..n).map(|k| target.from_i64((k % rad) as i64)).collect();
            Ok((target.clone(), RingHom::from_table(r.clone(), target, table)))
        }
        "gf" => Ok((r.clone(), RingHom::identity(r))),
        "polyquot" => {
            let base = r.base_ring().expect("quotient base");
            let m = r.modulus().expect("quotient modulus");
            let m_red = poly_radical(&base, &m);
            if m_red == m {
                return Ok((r.clone(), RingHom::identity(r)));
            }
            if m_red.len() == 2 {
                // x - a collapses to the base field by evaluation at a
                let a = base.neg(&m_red[0]);
                let hom = RingHom {
                    domain: r.clone(),
                    codomain: base.clone(),
                    repr: HomRepr::EvalAt(a),
                };
                return Ok((base, hom));
            }
            let target = Ring::poly_quotient(base, &m_red)?;
            let hom = RingHom {
                domain: r.clone(),
                codomain: target.clone(),
                repr: HomRepr::CoverReduce,
            };
            Ok((target, hom))
        }
        _ => Err(Error::UnsupportedRing { op: "r_abs".into(), ring: format!("{r}") }),
    }
}

/// All unital ring homomorphisms between two finite rings, tabulated, in a
/// deterministic order.
pub fn ring_homs(a: &Ring, b: &Ring) -> Result<Vec<RingHom>> {
    if a.size().is_none() || b.size().is_none() {
        return Err(Error::InfiniteRing(
            "hom enumeration needs finite rings".into(),
        ));
    }
    match a.kind_name() {
        "zmod" => {
            let n = a.zmod_n().expect("zmod") as i64;
            if !b.is_zero(&b.from_i64(n)) {
                return Ok(Vec::new());
            }
            let table = (0..n).map(|k| b.from_i64(k)).collect();
            Ok(vec![RingHom::from_table(a.clone(), b.clone(), table)])
        }
        "gf" | "polyquot" => {
            let base = a.base_ring().expect("quotient base");
            let m = a.modulus().expect("quotient modulus");
            let base_homs = ring_homs(&base, b)?;
            let targets = b.enumerate().expect("finite codomain");
            let mut out = Vec::new();
            for bh in &base_homs {
                // images of the residue of x are roots of the pushed modulus
                for c in &targets {
                    let mut acc = b.zero();
                    for coeff in m.iter().rev() {
                        acc = b.add(&b.mul(&acc, c), &bh.apply(coeff));
                    }
                    if !b.is_zero(&acc) {
                        continue;
                    }
                    let table = a
                        .enumerate()
                        .expect("finite domain")
                        .iter()
                        .map(|e| match e {
                            Elem::Pol(cs) => {
                                let mut acc = b.zero();
                                for coeff in cs.iter().rev() {
                                    acc = b.add(&b.mul(&acc, c), &bh.apply(coeff));
                                }
                                acc
                            }
                            other => bh.apply(other),
                        })
                        .collect();
                    out.push(RingHom::from_table(a.clone(), b.clone(), table));
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedRing { op: "ring_homs".into(), ring: format!("{a}") }),
    }
}

/// Given a surjection `pi` and a map `h` out of the same finite domain,
/// the unique factoring map through `pi` if one exists.
pub fn factor_through(h: &RingHom, pi: &RingHom) -> Result<Option<RingHom>> {
    if h.domain != pi.domain {
        return Err(Error::EndpointMismatch("factor_through domains".into()));
    }
    let elems = h.domain.enumerate().ok_or_else(|| {
        Error::InfiniteRing("factoring needs a finite domain".into())
    })?;
    let mid_size = pi.codomain.size().ok_or_else(|| {
        Error::InfiniteRing("factoring needs a finite middle ring".into())
    })? as usize;
    let mut table: Vec<Option<Elem>> = vec![None; mid_size];
    for e in &elems {
        let idx = pi.codomain.elem_index(&pi.apply(e)) as usize;
        let img = h.apply(e);
        match &table[idx] {
            None => table[idx] = Some(img),
            Some(prev) => {
                if *prev != img {
                    return Ok(None);
                }
            }
        }
    }
    let table: Option<Vec<Elem>> = table.into_iter().collect();
    match table {
        // pi not surjective onto some index
        None => Err(Error::InvalidArgument("factor_through needs pi surjective".into())),
        Some(t) => Ok(Some(RingHom::from_table(
            pi.codomain.clone(),
            h.codomain.clone(),
            t,
        ))),
    }
}

// ----- factoring helpers -----

pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn squarefree_u64(n: u64) -> u64 {
    factor_u64(n).into_iter().map(|(p, _)| p).product()
}

/// Monic irreducible factors with multiplicities over a finite field,
/// found by trial division in degree order; also used for `Q` via the
/// derivative route in `poly_is_squarefree`.
pub(crate) fn poly_factor(base: &Ring, m: &[Elem]) -> Vec<(Vec<Elem>, u32)> {
    assert!(base.is_finite(), "factoring needs a finite base field");
    let mut rest = make_monic(base, m);
    let mut out: Vec<(Vec<Elem>, u32)> = Vec::new();
    let elems = base.enumerate().expect("finite base");
    let mut d = 1;
    while rest.len() > 1 {
        if d > rest.len() - 1 {
            break;
        }
        let total = (elems.len() as u128).pow(d as u32);
        for idx in 0..total {
            let mut cs = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                cs.push(elems[(r % elems.len() as u128) as usize].clone());
                r /= elems.len() as u128;
            }
            cs.push(base.one());
            let mut mult = 0;
            loop {
                let (q, rem) = poly_divrem(base, &rest, &cs);
                if rem.is_empty() {
                    rest = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                out.push((cs, mult));
            }
            if rest.len() <= 1 {
                break;
            }
        }
        d += 1;
    }
    out
}

fn make_monic(base: &Ring, m: &[Elem]) -> Vec<Elem> {
    let mut cs = m.to_vec();
    trim(base, &mut cs);
    if let Some(last) = cs.last().cloned() {
        if !base.is_one(&last) {
            let li = base.inv(&last).expect("field");
            for c in cs.iter_mut() {
                *c = base.mul(c, &li);
            }
        }
    }
    cs
}

fn derivative(base: &Ring, m: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::new();
    for (i, c) in m.iter().enumerate().skip(1) {
        let k = base.from_i64(i as i64);
        out.push(base.mul(&k, c));
    }
    trim(base, &mut out);
    out
}

pub(crate) fn poly_is_squarefree(base: &Ring, m: &[Elem]) -> bool {
    if base.is_finite() {
        return poly_factor(base, m).iter().all(|(_, k)| *k == 1);
    }
    // characteristic zero: squarefree iff coprime to the derivative
    let d = derivative(base, m);
    if d.is_empty() {
        return m.len() <= 2;
    }
    poly_gcd_monic(base, m, &d).len() == 1
}

/// Product of the distinct monic irreducible factors.
pub(crate) fn poly_radical(base: &Ring, m: &[Elem]) -> Vec<Elem> {
    if base.is_finite() {
        let mut out = vec![base.one()];
        for (f, _) in poly_factor(base, m) {
            out = poly_mul(base, &out, &f);
        }
        return out;
    }
    let d = derivative(base, m);
    if d.is_empty() {
        return make_monic(base, m);
    }
    let g = poly_gcd_monic(base, m, &d);
    let (q, _) = poly_divrem(base, &make_monic(base, m), &g);
    make_monic(base, &q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers_f2() -> Ring {
        let f2 = Ring::zmod(2).unwrap();
        let m = vec![f2.zero(), f2.zero(), f2.one()];
        Ring::poly_quotient(f2, &m).unwrap()
    }

    #[test]
    fn nilradical_of_small_rings() {
        let r4 = Ring::zmod(4).unwrap();
        let nil: Vec<i64> = nilradical(&r4)
            .unwrap()
            .iter()
            .map(|e| match e {
                Elem::Mod(v) => *v as i64,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(nil, vec![0, 2]);
        let r6 = Ring::zmod(6).unwrap();
        assert_eq!(nilradical(&r6).unwrap().len(), 1);
        let d = dual_numbers_f2();
        assert_eq!(nilradical(&d).unwrap().len(), 2);
        assert_eq!(nilradical(&Ring::integers()).unwrap(), vec![Ring::integers().zero()]);
    }

    #[test]
    fn idempotents_of_z6() {
        let r6 = Ring::zmod(6).unwrap();
        let idems: Vec<i64> = idempotents(&r6)
            .unwrap()
            .iter()
            .map(|e| match e {
                Elem::Mod(v) => *v as i64,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(idems, vec![0, 1, 3, 4]);
        let r4 = Ring::zmod(4).unwrap();
        assert_eq!(idempotents(&r4).unwrap().len(), 2);
    }

    #[test]
    fn regularity_matches_reducedness_on_finite_rings() {
        let rings = [
            Ring::zmod(4).unwrap(),
            Ring::zmod(6).unwrap(),
            Ring::zmod(12).unwrap(),
            Ring::prime_field(5).unwrap(),
            dual_numbers_f2(),
        ];
        for r in &rings {
            assert_eq!(
                is_von_neumann_regular(r).unwrap(),
                is_reduced(r).unwrap(),
                "finite commutative rings: regular iff reduced ({r})"
            );
        }
        assert!(is_von_neumann_regular(&Ring::zmod(6).unwrap()).unwrap());
        assert!(!is_von_neumann_regular(&Ring::zmod(4).unwrap()).unwrap());
        assert!(!is_von_neumann_regular(&Ring::integers()).unwrap());
        assert!(is_von_neumann_regular(&Ring::rationals()).unwrap());
    }

    #[test]
    fn reduced_replacement_of_z4_is_z2() {
        let r4 = Ring::zmod(4).unwrap();
        let (t, pi) = r_abs(&r4).unwrap();
        assert_eq!(t, Ring::zmod(2).unwrap());
        pi.verify().unwrap();
        assert!(pi.is_surjective().unwrap());
        assert!(is_von_neumann_regular(&t).unwrap());
    }

    #[test]
    fn reduced_replacement_of_dual_numbers_is_base_field() {
        let d = dual_numbers_f2();
        let (t, pi) = r_abs(&d).unwrap();
        assert_eq!(t, Ring::zmod(2).unwrap());
        pi.verify().unwrap();
        assert!(pi.is_surjective().unwrap());
    }

    #[test]
    fn reduced_replacement_keeps_reduced_rings() {
        for r in [Ring::zmod(6).unwrap(), Ring::prime_field(3).unwrap(), Ring::integers()] {
            let (t, _) = r_abs(&r).unwrap();
            assert_eq!(t, r);
        }
        // x^2(x+1) reduces to x(x+1), still not a field but now regular
        let f2 = Ring::zmod(2).unwrap();
        let m = vec![f2.zero(), f2.zero(), f2.one(), f2.one()];
        let r = Ring::poly_quotient(f2.clone(), &m).unwrap();
        let (t, pi) = r_abs(&r).unwrap();
        assert_eq!(t.size(), Some(4));
        assert!(is_von_neumann_regular(&t).unwrap());
        pi.verify().unwrap();
    }

    #[test]
    fn hom_enumeration_counts() {
        let z6 = Ring::zmod(6).unwrap();
        let z3 = Ring::zmod(3).unwrap();
        assert_eq!(ring_homs(&z6, &z3).unwrap().len(), 1);
        let z2 = Ring::zmod(2).unwrap();
        assert_eq!(ring_homs(&z2, &z3).unwrap().len(), 0);
        // the field with four elements has exactly two self-maps
        let m = vec![z2.one(), z2.one(), z2.one()];
        let f4 = Ring::galois_field(2, &m).unwrap();
        let self_maps = ring_homs(&f4, &f4).unwrap();
        assert_eq!(self_maps.len(), 2);
        for h in &self_maps {
            h.verify().unwrap();
        }
        assert_eq!(ring_homs(&f4, &z2).unwrap().len(), 0);
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(ring_homs(&z4, &f4).unwrap().len(), 1);
        let d = dual_numbers_f2();
        assert_eq!(ring_homs(&d, &z2).unwrap().len(), 1);
        assert_eq!(ring_homs(&d, &z4).unwrap().len(), 0);
        assert_eq!(ring_homs(&d, &d).unwrap().len(), 2);
    }

    #[test]
    fn maps_to_regular_targets_factor_uniquely_through_r_abs() {
        let z4 = Ring::zmod(4).unwrap();
        let (_, pi) = r_abs(&z4).unwrap();
        let z2 = Ring::zmod(2).unwrap();
        let m = vec![z2.one(), z2.one(), z2.one()];
        let targets = [
            Ring::zmod(2).unwrap(),
            Ring::zmod(6).unwrap(),
            Ring::galois_field(2, &m).unwrap(),
        ];
        for s in &targets {
            for h in ring_homs(&z4, s).unwrap() {
                let g = factor_through(&h, &pi).unwrap().expect("must factor");
                let composed = pi.then(&g).unwrap();
                assert!(composed.eq_hom(&h).unwrap());
            }
        }
        // and through a non-reduced target nothing is forced to factor:
        // the identity of Z/4 does not factor through Z/2
        let ident = RingHom::identity(&z4);
        assert!(factor_through(&ident, &pi).unwrap().is_none());
    }

    #[test]
    fn factor_helpers() {
        assert_eq!(factor_u64(12), vec![(2, 2), (3, 1)]);
        assert_eq!(squarefree_u64(12), 6);
        assert_eq!(squarefree_u64(30), 30);
        let f2 = Ring::zmod(2).unwrap();
        // x^3 + x^2 = x^2 (x + 1)
        let m = vec![f2.zero(), f2.zero(), f2.one(), f2.one()];
        let fs = poly_factor(&f2, &m);
        assert_eq!(fs.len(), 2);
        let mults: Vec<u32> = fs.iter().map(|(_, k)| *k).collect();
        assert!(mults.contains(&2) && mults.contains(&1));
        assert!(!poly_is_squarefree(&f2, &m));
        let rad = poly_radical(&f2, &m);
        // x (x + 1) = x^2 + x
        assert_eq!(rad.len(), 3);
    }
}
