//! Finite group representations over a field, with explicit matrices.
//! Hom modules are free: a basis of equivariant maps is computed once per
//! atom pair by exact nullspace and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Atom, Cat, TensorCat};
use crate::exactalg::{left_nullspace, solve_left, Elem, FpModule, Matrix, Ring};
use crate::{Error, Result};

/// Finite group given by its multiplication table; `mult[i][j]` is "i then
/// j".  Equality ignores the label and any permutation realisation.
#[derive(Clone, Debug)]
pub struct Group {
    pub label: String,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub e: usize,
    /// present when built from permutations, used for sign characters
    pub perms: Option<Vec<Vec<usize>>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.mult == other.mult
    }
}
impl Eq for Group {}
impl std::hash::Hash for Group {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mult.hash(state);
    }
}

impl Group {
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn from_table(label: &str, mult: Vec<Vec<usize>>) -> Result<Group> {
        let n = mult.len();
        if n == 0 || mult.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidInstance("malformed multiplication table".into()));
        }
        let e = (0..n)
            .find(|&c| (0..n).all(|g| mult[c][g] == g && mult[g][c] == g))
            .ok_or_else(|| Error::InvalidInstance("table has no identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mult[g][h] == e && mult[h][g] == e)
                .ok_or_else(|| Error::InvalidInstance("table has a non-invertible element".into()))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidInstance("table is not associative".into()));
                    }
                }
            }
        }
        Ok(Group { label: label.to_string(), mult, inv, e, perms: None })
    }

    pub fn cyclic(n: usize) -> Result<Arc<Group>> {
        if n == 0 {
            return Err(Error::InvalidInstance("cyclic group needs positive order".into()));
        }
        let mult = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let mut g = Group::from_table(&format!("Z/{n}"), mult)?;
        g.perms = None;
        Ok(Arc::new(g))
    }

    /// Symmetric group on `n` letters under "apply left, then right".
    pub fn symmetric(n: usize) -> Result<Arc<Group>> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidInstance("symmetric group size out of range".into()));
        }
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let m = perms.len();
        let mut mult = vec![vec![0usize; m]; m];
        for i in 0..m {
            for j in 0..m {
                let comp: Vec<usize> = (0..n).map(|k| perms[j][perms[i][k]]).collect();
                mult[i][j] = index[&comp];
            }
        }
        let mut g = Group::from_table(&format!("S{n}"), mult)?;
        g.perms = Some(perms);
        Ok(Arc::new(g))
    }
}

/// A representation: one invertible matrix per group element, acting on
/// row vectors.  Equality ignores the label.
#[derive(Clone, Debug)]
pub struct RepData {
    pub label: String,
    pub group: Arc<Group>,
    pub dim: usize,
    pub rho: Vec<Matrix>,
}

impl PartialEq for RepData {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.dim == other.dim && self.rho == other.rho
    }
}
impl Eq for RepData {}
impl std::hash::Hash for RepData {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.dim.hash(state);
        self.rho.hash(state);
    }
}

impl RepData {
    pub fn validate(&self, field: &Ring) -> Result<()> {
        let n = self.group.order();
        if self.rho.len() != n {
            return Err(Error::InvalidInstance("one matrix per group element required".into()));
        }
        for m in &self.rho {
            if m.rows != self.dim || m.cols != self.dim || m.ring != *field {
                return Err(Error::InvalidInstance("representation matrix shape mismatch".into()));
            }
        }
        let id = Matrix::identity(field.clone(), self.dim);
        if self.rho[self.group.e] != id {
            return Err(Error::InvalidInstance("identity element must act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let prod = self.rho[g].mul(&self.rho[h])?;
                if prod != self.rho[self.group.mult[g][h]] {
                    return Err(Error::InvalidInstance(
                        "matrices do not respect the group table".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<Group>, field: &Ring) -> Arc<RepData> {
        let n = group.order();
        Arc::new(RepData {
            label: "1".into(),
            group,
            dim: 1,
            rho: vec![Matrix::identity(field.clone(), 1); n],
        })
    }

    /// Right translation on the group algebra basis.
    pub fn regular(group: Arc<Group>, field: &Ring) -> Arc<RepData> {
        let n = group.order();
        let mut rho = Vec::with_capacity(n);
        for g in 0..n {
            rho.push(Matrix::from_fn(field.clone(), n, n, |h, k| {
                if group.mult[h][g] == k {
                    field.one()
                } else {
                    field.zero()
                }
            }));
        }
        Arc::new(RepData { label: "reg".into(), group, dim: n, rho })
    }

    /// The n-dimensional permutation action, for permutation groups.
    pub fn permutation(group: Arc<Group>, field: &Ring) -> Result<Arc<RepData>> {
        let perms = group
            .perms
            .clone()
            .ok_or_else(|| Error::InvalidInstance("group has no permutation realisation".into()))?;
        let n = perms.first().map(|p| p.len()).unwrap_or(0);
        let rho = perms
            .iter()
            .map(|p| {
                Matrix::from_fn(field.clone(), n, n, |i, j| {
                    if p[i] == j {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        Ok(Arc::new(RepData { label: "perm".into(), group, dim: n, rho }))
    }

    /// The parity character, for permutation groups.
    pub fn sign(group: Arc<Group>, field: &Ring) -> Result<Arc<RepData>> {
        let perms = group
            .perms
            .clone()
            .ok_or_else(|| Error::InvalidInstance("group has no permutation realisation".into()))?;
        let rho = perms
            .iter()
            .map(|p| {
                let mut invs = 0usize;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] > p[j] {
                            invs += 1;
                        }
                    }
                }
                let v = if invs % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                Matrix::from_fn(field.clone(), 1, 1, |_, _| v.clone())
            })
            .collect();
        Ok(Arc::new(RepData { label: "sgn".into(), group, dim: 1, rho }))
    }
}

type RepPair = (Arc<RepData>, Arc<RepData>);

pub struct RepCat {
    field: Ring,
    group: Arc<Group>,
    gens: Vec<Arc<RepData>>,
    basis_cache: Mutex<HashMap<RepPair, Arc<Matrix>>>,
}

pub fn rep_cat(field: Ring, group: Arc<Group>, gens: Vec<Arc<RepData>>) -> Result<Cat> {
    if !field.is_field() {
        return Err(Error::NotAField(format!("{field}")));
    }
    for g in &gens {
        if g.group != group {
            return Err(Error::InvalidInstance("generator has a different group".into()));
        }
        g.validate(&field)?;
    }
    Ok(Cat::new(Arc::new(RepCat {
        field,
        group,
        gens,
        basis_cache: Mutex::new(HashMap::new()),
    })))
}

impl RepCat {
    fn as_rep<'a>(&self, a: &'a Atom) -> Result<&'a Arc<RepData>> {
        match a {
            Atom::Rep(r) if r.group == self.group => Ok(r),
            other => Err(Error::InvalidInstance(format!(
                "representation category got foreign atom {other:?}"
            ))),
        }
    }

    /// Basis of equivariant matrices, each row a flattened map.
    fn basis(&self, a: &Arc<RepData>, b: &Arc<RepData>) -> Result<Arc<Matrix>> {
        let key = (a.clone(), b.clone());
        if let Some(m) = self.basis_cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let (da, db) = (a.dim, b.dim);
        let n = self.group.order();
        let ida = Matrix::identity(self.field.clone(), da);
        let idb = Matrix::identity(self.field.clone(), db);
        let mut stacked = Matrix::zero(self.field.clone(), 0, da * db);
        for g in 0..n {
            let lhs = a.rho[g].kronecker(&idb);
            let rhs = ida.kronecker(&b.rho[g].transpose());
            let block = lhs.sub(&rhs)?;
            stacked = if stacked.rows == 0 { block } else { stacked.vstack(&block)? };
        }
        // column nullspace of the stacked constraints
        let basis = Arc::new(left_nullspace(&stacked.transpose())?);
        self.basis_cache.lock().unwrap().insert(key, basis.clone());
        Ok(basis)
    }

    fn realize(&self, a: &Arc<RepData>, b: &Arc<RepData>, coords: &[Elem]) -> Result<Matrix> {
        let basis = self.basis(a, b)?;
        let mut flat = vec![self.field.zero(); a.dim * b.dim];
        for (k, c) in coords.iter().enumerate() {
            for j in 0..flat.len() {
                let t = self.field.mul(c, basis.at(k, j));
                flat[j] = self.field.add(&flat[j], &t);
            }
        }
        Ok(Matrix::from_fn(self.field.clone(), a.dim, b.dim, |i, j| flat[i * b.dim + j].clone()))
    }

    fn express(&self, a: &Arc<RepData>, b: &Arc<RepData>, m: &Matrix) -> Result<Vec<Elem>> {
        let basis = self.basis(a, b)?;
        let flat: Vec<Elem> = (0..a.dim * b.dim)
            .map(|k| m.at(k / b.dim, k % b.dim).clone())
            .collect();
        if basis.rows == 0 {
            if flat.iter().all(|e| self.field.is_zero(e)) {
                return Ok(Vec::new());
            }
            return Err(Error::InvalidInstance("map is not equivariant".into()));
        }
        let target = Matrix::row_vector(self.field.clone(), flat);
        match solve_left(&basis, &target)? {
            Some(x) => Ok(x.row(0)),
            None => Err(Error::InvalidInstance("map is not equivariant".into())),
        }
    }

    fn tensor_data(&self, a: &Arc<RepData>, b: &Arc<RepData>) -> Arc<RepData> {
        let n = self.group.order();
        let rho = (0..n).map(|g| a.rho[g].kronecker(&b.rho[g])).collect();
        Arc::new(RepData {
            label: format!("({}(x){})", a.label, b.label),
            group: self.group.clone(),
            dim: a.dim * b.dim,
            rho,
        })
    }
}

impl TensorCat for RepCat {
    fn ring(&self) -> Ring {
        self.field.clone()
    }

    fn label(&self) -> String {
        format!("rep({}, {})", self.group.label, self.field)
    }

    fn unit_atom(&self) -> Atom {
        Atom::Rep(RepData::trivial(self.group.clone(), &self.field))
    }

    fn base_atoms(&self) -> Vec<Atom> {
        self.gens.iter().map(|r| Atom::Rep(r.clone())).collect()
    }

    fn atom_label(&self, a: &Atom) -> String {
        match a {
            Atom::Rep(r) => r.label.clone(),
            _ => "?".into(),
        }
    }

    fn validate_atom(&self, a: &Atom) -> Result<()> {
        let r = self.as_rep(a)?;
        r.validate(&self.field)
    }

    fn hom(&self, a: &Atom, b: &Atom) -> Result<FpModule> {
        let (ra, rb) = (self.as_rep(a)?, self.as_rep(b)?);
        let basis = self.basis(ra, rb)?;
        Ok(FpModule::free(self.field.clone(), basis.rows))
    }

    fn id_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ra = self.as_rep(a)?;
        let id = Matrix::identity(self.field.clone(), ra.dim);
        self.express(ra, ra, &id)
    }

    fn compose_coords(
        &self,
        a: &Atom,
        b: &Atom,
        c: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        let (ra, rb, rc) = (self.as_rep(a)?, self.as_rep(b)?, self.as_rep(c)?);
        let mf = self.realize(ra, rb, f)?;
        let mg = self.realize(rb, rc, g)?;
        self.express(ra, rc, &mf.mul(&mg)?)
    }

    fn tensor_atom(&self, a: &Atom, b: &Atom) -> Result<Atom> {
        let (ra, rb) = (self.as_rep(a)?, self.as_rep(b)?);
        Ok(Atom::Rep(self.tensor_data(ra, rb)))
    }

    fn tensor_coords(
        &self,
        a1: &Atom,
        b1: &Atom,
        a2: &Atom,
        b2: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        let (ra1, rb1) = (self.as_rep(a1)?, self.as_rep(b1)?);
        let (ra2, rb2) = (self.as_rep(a2)?, self.as_rep(b2)?);
        let mf = self.realize(ra1, rb1, f)?;
        let mg = self.realize(ra2, rb2, g)?;
        let ta = self.tensor_data(ra1, ra2);
        let tb = self.tensor_data(rb1, rb2);
        self.express(&ta, &tb, &mf.kronecker(&mg))
    }

    fn symmetry_coords(&self, a: &Atom, b: &Atom) -> Result<Vec<Elem>> {
        let (ra, rb) = (self.as_rep(a)?, self.as_rep(b)?);
        let (da, db) = (ra.dim, rb.dim);
        let flip = Matrix::from_fn(self.field.clone(), da * db, db * da, |r, c| {
            let (i, j) = (r / db, r % db);
            if c == j * da + i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let ab = self.tensor_data(ra, rb);
        let ba = self.tensor_data(rb, ra);
        self.express(&ab, &ba, &flip)
    }

    fn dual_atom(&self, a: &Atom) -> Result<Atom> {
        let ra = self.as_rep(a)?;
        let n = self.group.order();
        let rho = (0..n).map(|g| ra.rho[self.group.inv[g]].transpose()).collect();
        Ok(Atom::Rep(Arc::new(RepData {
            label: format!("{}^", ra.label),
            group: self.group.clone(),
            dim: ra.dim,
            rho,
        })))
    }

    fn ev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ra = self.as_rep(a)?;
        let d = ra.dim;
        let pairing = Matrix::from_fn(self.field.clone(), d * d, 1, |r, _| {
            if r / d == r % d {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let da = match self.dual_atom(a)? {
            Atom::Rep(r) => r,
            _ => unreachable!(),
        };
        let dom = self.tensor_data(&da, ra);
        let triv = RepData::trivial(self.group.clone(), &self.field);
        self.express(&dom, &triv, &pairing)
    }

    fn coev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let ra = self.as_rep(a)?;
        let d = ra.dim;
        let copairing = Matrix::from_fn(self.field.clone(), 1, d * d, |_, c| {
            if c / d == c % d {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let da = match self.dual_atom(a)? {
            Atom::Rep(r) => r,
            _ => unreachable!(),
        };
        let cod = self.tensor_data(ra, &da);
        let triv = RepData::trivial(self.group.clone(), &self.field);
        self.express(&triv, &cod, &copairing)
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3_over_q() -> (Cat, Atom, Atom) {
        let g = Group::cyclic(3).unwrap();
        let q = Ring::rationals();
        let triv = RepData::trivial(g.clone(), &q);
        let reg = RepData::regular(g.clone(), &q);
        let cat = rep_cat(q, g, vec![triv.clone(), reg.clone()]).unwrap();
        (cat, Atom::Rep(triv), Atom::Rep(reg))
    }

    #[test]
    fn hom_dimensions_for_cyclic_group() {
        let (cat, triv, reg) = c3_over_q();
        assert_eq!(cat.atom_hom(&reg, &reg).unwrap().gens, 3);
        assert_eq!(cat.atom_hom(&triv, &reg).unwrap().gens, 1);
        assert_eq!(cat.atom_hom(&triv, &triv).unwrap().gens, 1);
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        let (cat, _, reg) = c3_over_q();
        let id = cat.id(&vec![reg]).unwrap();
        assert_eq!(cat.trace(&id).unwrap(), Ring::rationals().from_i64(3));
    }

    #[test]
    fn modular_regular_rep_has_vanishing_dimension() {
        let g = Group::cyclic(2).unwrap();
        let f2 = Ring::zmod(2).unwrap();
        let reg = RepData::regular(g.clone(), &f2);
        let cat = rep_cat(f2.clone(), g, vec![reg.clone()]).unwrap();
        assert_eq!(cat.atom_hom(&Atom::Rep(reg.clone()), &Atom::Rep(reg.clone())).unwrap().gens, 2);
        let id = cat.id(&vec![Atom::Rep(reg)]).unwrap();
        assert!(f2.is_zero(&cat.trace(&id).unwrap()));
    }

    #[test]
    fn triangles_and_symmetry_for_s3() {
        let g = Group::symmetric(3).unwrap();
        let q = Ring::rationals();
        let perm = RepData::permutation(g.clone(), &q).unwrap();
        let cat = rep_cat(q, g, vec![perm.clone()]).unwrap();
        let x = vec![Atom::Rep(perm)];
        let idx = cat.id(&x).unwrap();
        let left = cat
            .compose(
                &cat.tensor_mor(&cat.coev(&x).unwrap(), &idx).unwrap(),
                &cat.tensor_mor(&idx, &cat.ev(&x).unwrap()).unwrap(),
            )
            .unwrap();
        assert!(cat.mor_eq(&left, &idx).unwrap());
        let s = cat.symmetry(&x, &x).unwrap();
        let s2 = cat.compose(&s, &s).unwrap();
        let idxx = cat.id(&cat.tensor_ob(&x, &x).unwrap()).unwrap();
        assert!(cat.mor_eq(&s2, &idxx).unwrap());
    }

    #[test]
    fn sign_squares_to_trivial() {
        let g = Group::symmetric(3).unwrap();
        let q = Ring::rationals();
        let sgn = RepData::sign(g.clone(), &q).unwrap();
        let cat = rep_cat(q, g.clone(), vec![sgn.clone()]).unwrap();
        let t = cat.tensor_ob(&vec![Atom::Rep(sgn.clone())], &vec![Atom::Rep(sgn.clone())]).unwrap();
        let triv = Atom::Rep(RepData::trivial(g, &Ring::rationals()));
        assert_eq!(t, vec![triv]);
    }

    #[test]
    fn regular_endomorphisms_of_s3() {
        let g = Group::symmetric(3).unwrap();
        let q = Ring::rationals();
        let reg = RepData::regular(g.clone(), &q);
        let cat = rep_cat(q, g, vec![reg.clone()]).unwrap();
        assert_eq!(cat.atom_hom(&Atom::Rep(reg.clone()), &Atom::Rep(reg)).unwrap().gens, 6);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(Group::from_table("bad", vec![vec![0, 0], vec![0, 0]]).is_err());
        let g = Group::cyclic(2).unwrap();
        let f3 = Ring::zmod(3).unwrap();
        let bad = RepData {
            label: "x".into(),
            group: g,
            dim: 1,
            rho: vec![
                Matrix::identity(f3.clone(), 1),
                Matrix::from_i64(f3.clone(), 1, 1, &[0]),
            ],
        };
        assert!(bad.validate(&f3).is_err());
    }
}
