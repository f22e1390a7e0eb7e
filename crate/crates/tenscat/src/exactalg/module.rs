//! Finitely presented modules and their maps, in row-vector convention:
//! an element of a module with `g` generators is a length-`g` row, and a
//! map acts by `x -> x * mat`.

use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use super::linalg::{
    invariant_factors, left_nullspace, solve_left, RowReducer, RowSolver,
};
use super::matrix::Matrix;
use super::ring::{Elem, Ring};
use crate::{Error, Result};

/// Cokernel presentation `R^gens / rowspan(relations)`.
///
/// The reducer is built lazily on first use and shared across clones;
/// it is derived data, so equality and hashing ignore it.
#[derive(Clone, Debug)]
pub struct FpModule {
    pub ring: Ring,
    pub gens: usize,
    /// `relations.cols == gens`; rows span the submodule quotiented out.
    pub relations: Matrix,
    reduce: Arc<OnceLock<RowReducer>>,
}

impl PartialEq for FpModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.relations == other.relations
    }
}

impl Eq for FpModule {}

impl Hash for FpModule {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.gens.hash(state);
        self.relations.hash(state);
    }
}

impl FpModule {
    pub fn new(ring: Ring, gens: usize, relations: Matrix) -> Result<Self> {
        if relations.cols != gens && relations.rows != 0 {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns for {} generators",
                relations.cols, gens
            )));
        }
        let relations = if relations.rows == 0 {
            Matrix::zero(ring.clone(), 0, gens)
        } else {
            relations
        };
        if relations.ring != ring {
            return Err(Error::DimensionMismatch("relation ring mismatch".into()));
        }
        Ok(FpModule { ring, gens, relations, reduce: Arc::new(OnceLock::new()) })
    }

    pub fn free(ring: Ring, gens: usize) -> Self {
        let relations = Matrix::zero(ring.clone(), 0, gens);
        FpModule { ring, gens, relations, reduce: Arc::new(OnceLock::new()) }
    }

    pub fn zero_module(ring: Ring) -> Self {
        Self::free(ring, 0)
    }

    fn reducer(&self) -> &RowReducer {
        self.reduce.get_or_init(|| RowReducer::new(&self.ring, self.gens, &self.relations))
    }

    pub fn is_zero_module(&self) -> bool {
        (0..self.gens).all(|i| {
            let mut e = vec![self.ring.zero(); self.gens];
            e[i] = self.ring.one();
            self.reducer().is_zero(&e)
        })
    }

    /// Canonical representative of an element's residue class.
    pub fn canon_elem(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.gens, "element length");
        self.reducer().reduce(x)
    }

    pub fn elem_is_zero(&self, x: &[Elem]) -> bool {
        self.reducer().is_zero(x)
    }

    pub fn elem_eq(&self, x: &[Elem], y: &[Elem]) -> bool {
        assert_eq!(x.len(), y.len());
        let diff: Vec<Elem> =
            x.iter().zip(y).map(|(a, b)| self.ring.sub(a, b)).collect();
        self.elem_is_zero(&diff)
    }

    /// Invariant factors in the Euclidean cover; equal lists certify
    /// isomorphic modules and conversely.
    pub fn invariants(&self) -> Result<Vec<Elem>> {
        invariant_factors(&self.ring, self.gens, &self.relations)
    }

    pub fn is_isomorphic(&self, other: &FpModule) -> Result<bool> {
        if self.ring != other.ring {
            return Ok(false);
        }
        Ok(self.invariants()? == other.invariants()?)
    }

    /// Number of elements, when finite.
    pub fn size(&self) -> Result<Option<u128>> {
        // Invariant factors live in the ring itself when it is Euclidean,
        // otherwise in the cover (with modulus slack keeping them nonzero).
        let over = if self.ring.is_euclidean() {
            self.ring.clone()
        } else {
            self.ring.cover()
        };
        let mut total: u128 = 1;
        for d in self.invariants()? {
            match quotient_size(&over, &d) {
                None => return Ok(None),
                Some(k) => total = total.checked_mul(k).expect("module size overflow"),
            }
        }
        Ok(Some(total))
    }

    pub fn direct_sum(&self, other: &FpModule) -> Result<FpModule> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch("direct_sum ring mismatch".into()));
        }
        let rels = self.relations.direct_sum(&other.relations);
        FpModule::new(self.ring.clone(), self.gens + other.gens, rels)
    }

    /// Tensor product presentation: generators are pairs, relations are
    /// each side's relations applied in one slot.
    pub fn tensor(&self, other: &FpModule) -> Result<FpModule> {
        if self.ring != other.ring {
            return Err(Error::DimensionMismatch("tensor ring mismatch".into()));
        }
        let ring = self.ring.clone();
        let i1 = Matrix::identity(ring.clone(), self.gens);
        let i2 = Matrix::identity(ring.clone(), other.gens);
        let a = self.relations.kronecker(&i2);
        let b = i1.kronecker(&other.relations);
        let rels = if a.rows == 0 {
            b
        } else if b.rows == 0 {
            a
        } else {
            a.vstack(&b)?
        };
        FpModule::new(ring, self.gens * other.gens, rels)
    }
}

fn quotient_size(cover: &Ring, d: &Elem) -> Option<u128> {
    if cover.is_zero(d) {
        return cover.size();
    }
    match (cover.kind_name(), d) {
        ("integers", Elem::Int(n)) => {
            use num::{Signed, ToPrimitive};
            n.abs().to_u128()
        }
        ("poly", Elem::Pol(cs)) => {
            let base = cover.base_ring().expect("poly base");
            let q = base.size()?;
            let deg = cs.len().saturating_sub(1) as u32;
            q.checked_pow(deg)
        }
        // fields: nonzero invariant factors are units and were dropped
        _ => None,
    }
}

/// Map of presented modules acting by `x -> x * mat`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMap {
    pub dom: FpModule,
    pub cod: FpModule,
    /// `dom.gens x cod.gens`.
    pub mat: Matrix,
}

impl ModMap {
    /// Checks that relations of the domain land in relations of the
    /// codomain, so the map is well defined on residue classes.
    pub fn new(dom: FpModule, cod: FpModule, mat: Matrix) -> Result<Self> {
        if mat.rows != dom.gens || mat.cols != cod.gens {
            return Err(Error::DimensionMismatch(format!(
                "map matrix {}x{} between modules with {} and {} generators",
                mat.rows, mat.cols, dom.gens, cod.gens
            )));
        }
        let m = ModMap { dom, cod, mat };
        for k in 0..m.dom.relations.rows {
            let img = m.apply_raw(&m.dom.relations.row(k));
            if !m.cod.elem_is_zero(&img) {
                return Err(Error::InvalidArgument(
                    "map does not respect relations".into(),
                ));
            }
        }
        Ok(m)
    }

    pub fn identity(module: &FpModule) -> Self {
        let mat = Matrix::identity(module.ring.clone(), module.gens);
        ModMap { dom: module.clone(), cod: module.clone(), mat }
    }

    pub fn zero(dom: &FpModule, cod: &FpModule) -> Self {
        let mat = Matrix::zero(dom.ring.clone(), dom.gens, cod.gens);
        ModMap { dom: dom.clone(), cod: cod.clone(), mat }
    }

    fn apply_raw(&self, x: &[Elem]) -> Vec<Elem> {
        let row = Matrix::row_vector(self.dom.ring.clone(), x.to_vec());
        let out = row.mul(&self.mat).expect("shapes");
        out.row(0)
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.cod.canon_elem(&self.apply_raw(x))
    }

    pub fn compose(&self, then: &ModMap) -> Result<ModMap> {
        if self.cod != then.dom {
            return Err(Error::EndpointMismatch("module map composition".into()));
        }
        Ok(ModMap {
            dom: self.dom.clone(),
            cod: then.cod.clone(),
            mat: self.mat.mul(&then.mat)?,
        })
    }

    pub fn add(&self, other: &ModMap) -> Result<ModMap> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::EndpointMismatch("module map addition".into()));
        }
        Ok(ModMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.add(&other.mat)? })
    }

    pub fn is_zero_map(&self) -> bool {
        (0..self.mat.rows).all(|i| self.cod.elem_is_zero(&self.mat.row(i)))
    }

    pub fn eq_map(&self, other: &ModMap) -> bool {
        if self.dom != other.dom || self.cod != other.cod {
            return false;
        }
        let diff = self.mat.sub(&other.mat).expect("shapes");
        (0..diff.rows).all(|i| self.cod.elem_is_zero(&diff.row(i)))
    }

    /// Kernel as a presented module with its inclusion.
    pub fn kernel(&self) -> Result<(FpModule, ModMap)> {
        let gens = solutions_into_span(&self.mat, &self.cod.relations)?;
        let rels = solutions_into_span(&gens, &self.dom.relations)?;
        let ker = FpModule::new(self.dom.ring.clone(), gens.rows, rels)?;
        let incl = ModMap { dom: ker.clone(), cod: self.dom.clone(), mat: gens };
        Ok((ker, incl))
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> Result<(FpModule, ModMap)> {
        let rels = if self.mat.rows == 0 {
            self.cod.relations.clone()
        } else {
            self.cod.relations.vstack(&self.mat)?
        };
        let coker = FpModule::new(self.cod.ring.clone(), self.cod.gens, rels)?;
        let proj = ModMap {
            dom: self.cod.clone(),
            cod: coker.clone(),
            mat: Matrix::identity(self.cod.ring.clone(), self.cod.gens),
        };
        Ok((coker, proj))
    }

    /// Image presented on the domain generators (the coimage, which maps
    /// isomorphically onto the image).
    pub fn image(&self) -> Result<FpModule> {
        let rels = solutions_into_span(&self.mat, &self.cod.relations)?;
        FpModule::new(self.dom.ring.clone(), self.dom.gens, rels)
    }

    /// Some preimage row of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[Elem]) -> Result<Option<Vec<Elem>>> {
        let ring = self.dom.ring.clone();
        let stacked = if self.cod.relations.rows == 0 {
            self.mat.clone()
        } else {
            self.mat.vstack(&self.cod.relations)?
        };
        let target = Matrix::row_vector(ring.clone(), y.to_vec());
        match solve_left(&stacked, &target)? {
            None => Ok(None),
            Some(x) => Ok(Some(x.row(0)[..self.dom.gens].to_vec())),
        }
    }

    pub fn tensor_map(&self, other: &ModMap) -> Result<ModMap> {
        let dom = self.dom.tensor(&other.dom)?;
        let cod = self.cod.tensor(&other.cod)?;
        Ok(ModMap { dom, cod, mat: self.mat.kronecker(&other.mat) })
    }
}

/// Rows generating `{ x : x * constraint in rowspan(allowed) }`.
pub fn solutions_into_span(constraint: &Matrix, allowed: &Matrix) -> Result<Matrix> {
    let ring = constraint.ring.clone();
    if constraint.cols == 0 {
        // every row satisfies the empty constraint
        return Ok(Matrix::identity(ring, constraint.rows));
    }
    let stacked = if allowed.rows == 0 {
        constraint.clone()
    } else {
        constraint.vstack(&allowed.neg())?
    };
    let ns = left_nullspace(&stacked)?;
    Ok(Matrix::from_fn(ring, ns.rows, constraint.rows, |i, j| ns.at(i, j).clone()))
}

/// A subquotient `V/T` of an ambient free module, with row lifts of its
/// generators back into the ambient coordinates.
///
/// The solver for expressing ambient rows is built on first use and
/// shared across clones.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: FpModule,
    /// `module.gens x ambient_rank`; row `i` represents generator `i`.
    pub lifts: Matrix,
    /// rows spanning the trivial part `T` in ambient coordinates
    pub trivial: Matrix,
    solver: Arc<OnceLock<RowSolver>>,
}

impl Subquotient {
    /// Present `{x : x * constraint in rowspan(allowed)} / rowspan(trivial)`.
    pub fn present(
        constraint: &Matrix,
        allowed: &Matrix,
        trivial: &Matrix,
    ) -> Result<Subquotient> {
        let ring = constraint.ring.clone();
        let v = solutions_into_span(constraint, allowed)?;
        let rels = solutions_into_span(&v, trivial)?;
        let module = FpModule::new(ring, v.rows, rels)?;
        Ok(Subquotient {
            module,
            lifts: v,
            trivial: trivial.clone(),
            solver: Arc::new(OnceLock::new()),
        })
    }

    fn solver(&self) -> Result<&RowSolver> {
        if let Some(s) = self.solver.get() {
            return Ok(s);
        }
        let stacked = if self.trivial.rows == 0 {
            self.lifts.clone()
        } else {
            self.lifts.vstack(&self.trivial)?
        };
        let built = RowSolver::new(&stacked)?;
        Ok(self.solver.get_or_init(|| built))
    }

    /// Coordinates of an ambient row in terms of the generators, if it
    /// lies in `V` up to `T`.
    pub fn express(&self, ambient: &[Elem]) -> Result<Option<Vec<Elem>>> {
        let coeffs = self.solver()?.solve_row(ambient)?;
        Ok(coeffs.map(|x| x[..self.module.gens].to_vec()))
    }

    /// Ambient representative of a coordinate row.
    pub fn realize(&self, coords: &[Elem]) -> Vec<Elem> {
        assert_eq!(coords.len(), self.module.gens, "coordinate length");
        let ring = self.module.ring.clone();
        if self.module.gens == 0 {
            return vec![ring.zero(); self.lifts.cols];
        }
        let row = Matrix::row_vector(ring, coords.to_vec());
        row.mul(&self.lifts).expect("shapes").row(0)
    }
}

/// The module of maps `m1 -> m2`, presented as a subquotient of matrix
/// space flattened row-major, together with its generator lifts.
pub fn hom_module(m1: &FpModule, m2: &FpModule) -> Result<Subquotient> {
    if m1.ring != m2.ring {
        return Err(Error::DimensionMismatch("hom ring mismatch".into()));
    }
    let ring = m1.ring.clone();
    let ambient = m1.gens * m2.gens;
    let i2 = Matrix::identity(ring.clone(), m2.gens);
    // constraint: every relation row of m1 must land in rowspan(m2.relations)
    let r1 = &m1.relations;
    let mut constraint = Matrix::zero(ring.clone(), ambient, 0);
    let mut allowed = Matrix::zero(ring.clone(), 0, 0);
    for k in 0..r1.rows {
        let rk = Matrix::from_fn(ring.clone(), r1.cols, 1, |i, _| r1.at(k, i).clone());
        let block = rk.kronecker(&i2);
        constraint = constraint.hstack(&block)?;
        allowed = allowed.direct_sum(&m2.relations);
    }
    // trivial maps: generator i of m1 sent into rowspan(m2.relations)
    let mut triv_rows: Vec<Vec<Elem>> = Vec::new();
    for i in 0..m1.gens {
        for k in 0..m2.relations.rows {
            let mut row = vec![ring.zero(); ambient];
            for j in 0..m2.gens {
                row[i * m2.gens + j] = m2.relations.at(k, j).clone();
            }
            triv_rows.push(row);
        }
    }
    let trivial = if triv_rows.is_empty() {
        Matrix::zero(ring.clone(), 0, ambient)
    } else {
        Matrix::from_rows(ring.clone(), triv_rows)?
    };
    Subquotient::present(&constraint, &allowed, &trivial)
}

/// Interpret a flattened row as an actual module map.
pub fn flat_as_map(m1: &FpModule, m2: &FpModule, flat: &[Elem]) -> Result<ModMap> {
    if flat.len() != m1.gens * m2.gens {
        return Err(Error::DimensionMismatch("flat map length".into()));
    }
    let mat = Matrix::from_fn(m1.ring.clone(), m1.gens, m2.gens, |i, j| {
        flat[i * m2.gens + j].clone()
    });
    ModMap::new(m1.clone(), m2.clone(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_mod2() -> (Ring, FpModule) {
        let r = Ring::zmod(4).unwrap();
        let rels = Matrix::from_i64(r.clone(), 1, 1, &[2]);
        let m = FpModule::new(r.clone(), 1, rels).unwrap();
        (r, m)
    }

    #[test]
    fn kernel_of_doubling_on_z4() {
        let r = Ring::zmod(4).unwrap();
        let free = FpModule::free(r.clone(), 1);
        let double = ModMap::new(
            free.clone(),
            free.clone(),
            Matrix::from_i64(r.clone(), 1, 1, &[2]),
        )
        .unwrap();
        let (ker, incl) = double.kernel().unwrap();
        // kernel is {0, 2} = Z/2
        assert_eq!(ker.invariants().unwrap(), vec![Ring::integers().from_i64(2)]);
        assert_eq!(ker.size().unwrap(), Some(2));
        // inclusion composed with the map is zero
        let comp = incl.compose(&double).unwrap();
        assert!(comp.is_zero_map());
    }

    #[test]
    fn cokernel_and_image() {
        let r = Ring::zmod(4).unwrap();
        let free = FpModule::free(r.clone(), 1);
        let double =
            ModMap::new(free.clone(), free.clone(), Matrix::from_i64(r.clone(), 1, 1, &[2]))
                .unwrap();
        let (coker, proj) = double.cokernel().unwrap();
        assert_eq!(coker.size().unwrap(), Some(2));
        assert!(double.compose(&proj).unwrap().is_zero_map());
        let img = double.image().unwrap();
        assert_eq!(img.size().unwrap(), Some(2));
    }

    #[test]
    fn tensor_of_torsion_modules() {
        let (_, m) = z4_mod2();
        // (Z/2) tensor_{Z/4} (Z/2) = Z/2
        let t = m.tensor(&m).unwrap();
        assert_eq!(t.size().unwrap(), Some(2));
        assert_eq!(t.invariants().unwrap(), vec![Ring::integers().from_i64(2)]);
    }

    #[test]
    fn hom_counts_over_z4() {
        let r = Ring::zmod(4).unwrap();
        let free = FpModule::free(r.clone(), 1);
        let (_, m2) = z4_mod2();
        // Hom(Z/2, Z/4) = Z/2, Hom(Z/4, Z/2) = Z/2, Hom(Z/4, Z/4) = Z/4
        let h = hom_module(&m2, &free).unwrap();
        assert_eq!(h.module.size().unwrap(), Some(2));
        let h2 = hom_module(&free, &m2).unwrap();
        assert_eq!(h2.module.size().unwrap(), Some(2));
        let h3 = hom_module(&free, &free).unwrap();
        assert_eq!(h3.module.size().unwrap(), Some(4));
    }

    #[test]
    fn express_and_realize_round_trip() {
        let r = Ring::zmod(4).unwrap();
        let free = FpModule::free(r.clone(), 1);
        let (_, m2) = z4_mod2();
        let h = hom_module(&free, &m2).unwrap();
        for i in 0..h.module.gens {
            let mut coords = vec![r.zero(); h.module.gens];
            coords[i] = r.one();
            let amb = h.realize(&coords);
            let back = h.express(&amb).unwrap().expect("own generator");
            assert!(h.module.elem_eq(&coords, &back));
        }
    }

    #[test]
    fn preimage_solves_through_relations() {
        let r = Ring::zmod(4).unwrap();
        let free = FpModule::free(r.clone(), 1);
        let (_, m2) = z4_mod2();
        let proj = ModMap::new(free.clone(), m2.clone(), Matrix::from_i64(r.clone(), 1, 1, &[1]))
            .unwrap();
        // 3 maps to 1 = 3 mod 2-relation
        let pre = proj.preimage(&[r.from_i64(1)]).unwrap().expect("surjective");
        let img = proj.apply(&pre);
        assert!(m2.elem_eq(&img, &[r.from_i64(1)]));
    }

    #[test]
    fn zero_module_detection() {
        let z = Ring::integers();
        let rels = Matrix::from_i64(z.clone(), 2, 1, &[2, 3]);
        let m = FpModule::new(z.clone(), 1, rels).unwrap();
        assert!(m.is_zero_module());
        let rels2 = Matrix::from_i64(z.clone(), 1, 1, &[2]);
        let m2 = FpModule::new(z, 1, rels2).unwrap();
        assert!(!m2.is_zero_module());
    }
}
