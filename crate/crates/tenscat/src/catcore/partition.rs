//! Diagram category on finite point sets: morphisms are linear
//! combinations of set partitions of domain plus codomain points, and
//! closed components evaluate to a ring parameter.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Atom, Cat, TensorCat};
use crate::exactalg::{Elem, FpModule, Ring};
use crate::{Error, Result};

/// Set partitions of `{0..s}` as restricted growth strings in
/// lexicographic order, with an index for lookups.
struct PartBasis {
    rgs: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

pub struct PartCat {
    ring: Ring,
    t: Elem,
    max_points: u32,
    gens: Vec<u32>,
    bases: Mutex<HashMap<u32, Arc<PartBasis>>>,
    /// composition tables keyed by (m, n, k)
    comp: Mutex<HashMap<(u32, u32, u32), Arc<Vec<Vec<(usize, u32)>>>>>,
}

pub fn partition_cat(ring: Ring, t: Elem, max_points: u32, gens: Vec<u32>) -> Result<Cat> {
    let t = ring.canon(t)?;
    if gens.iter().any(|&g| g == 0 || g > max_points) {
        return Err(Error::InvalidInstance(
            "partition generators must be positive and within the point bound".into(),
        ));
    }
    Ok(Cat::new(Arc::new(PartCat {
        ring,
        t,
        max_points,
        gens,
        bases: Mutex::new(HashMap::new()),
        comp: Mutex::new(HashMap::new()),
    })))
}

fn enumerate_rgs(s: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; s as usize];
    fn rec(s: usize, i: usize, maxv: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == s {
            out.push(cur.clone());
            return;
        }
        for v in 0..=maxv + 1 {
            cur[i] = v;
            rec(s, i + 1, maxv.max(v), cur, out);
        }
    }
    if s == 0 {
        out.push(Vec::new());
    } else {
        cur[0] = 0;
        rec(s as usize, 1, 0, &mut cur, &mut out);
    }
    out
}

/// Relabel arbitrary block labels into first-occurrence order.
fn canonical_rgs(labels: &[usize]) -> Vec<usize> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(labels.len());
    for &l in labels {
        let next = map.len();
        let v = *map.entry(l).or_insert(next);
        out.push(v);
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

fn merge_rgs(uf: &mut UnionFind, rgs: &[usize], positions: &[usize]) {
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (p, &label) in positions.iter().zip(rgs) {
        match first.get(&label) {
            None => {
                first.insert(label, *p);
            }
            Some(&q) => uf.union(*p, q),
        }
    }
}

impl PartCat {
    fn points(&self, a: &Atom) -> Result<u32> {
        match a {
            Atom::Points(n) => Ok(*n),
            other => Err(Error::InvalidInstance(format!(
                "partition category got foreign atom {other:?}"
            ))),
        }
    }

    fn basis(&self, s: u32) -> Arc<PartBasis> {
        if let Some(b) = self.bases.lock().unwrap().get(&s) {
            return b.clone();
        }
        let rgs = enumerate_rgs(s);
        let index = rgs.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let b = Arc::new(PartBasis { rgs, index });
        self.bases.lock().unwrap().insert(s, b.clone());
        b
    }

    fn check_bound(&self, s: u32) -> Result<()> {
        if s > self.max_points {
            return Err(Error::BoundExceeded(format!(
                "{s} diagram points exceed the configured bound {}",
                self.max_points
            )));
        }
        Ok(())
    }

    fn compose_table(&self, m: u32, n: u32, k: u32) -> Result<Arc<Vec<Vec<(usize, u32)>>>> {
        if let Some(t) = self.comp.lock().unwrap().get(&(m, n, k)) {
            return Ok(t.clone());
        }
        let bf = self.basis(m + n);
        let bg = self.basis(n + k);
        let br = self.basis(m + k);
        let total = (m + n + k) as usize;
        let f_positions: Vec<usize> = (0..(m + n) as usize).collect();
        let g_positions: Vec<usize> = ((m as usize)..(m + n + k) as usize).collect();
        let mut table = Vec::with_capacity(bf.rgs.len());
        for rf in &bf.rgs {
            let mut row = Vec::with_capacity(bg.rgs.len());
            for rg in &bg.rgs {
                let mut uf = UnionFind::new(total);
                merge_rgs(&mut uf, rf, &f_positions);
                merge_rgs(&mut uf, rg, &g_positions);
                // closed components live entirely in the glued middle
                let mut middle_only: HashMap<usize, bool> = HashMap::new();
                for p in 0..total {
                    let r = uf.find(p);
                    let is_middle = p >= m as usize && p < (m + n) as usize;
                    middle_only
                        .entry(r)
                        .and_modify(|b| *b &= is_middle)
                        .or_insert(is_middle);
                }
                let loops = middle_only.values().filter(|&&b| b).count() as u32;
                let outer: Vec<usize> = (0..m as usize)
                    .chain((m + n) as usize..total)
                    .map(|p| uf.find(p))
                    .collect();
                let canon = canonical_rgs(&outer);
                let idx = *br.index.get(&canon).expect("canonical partition");
                row.push((idx, loops));
            }
            table.push(row);
        }
        let t = Arc::new(table);
        self.comp.lock().unwrap().insert((m, n, k), t.clone());
        Ok(t)
    }
}

impl TensorCat for PartCat {
    fn ring(&self) -> Ring {
        self.ring.clone()
    }

    fn label(&self) -> String {
        format!("partition({}, t={:?})", self.ring, self.t)
    }

    fn unit_atom(&self) -> Atom {
        Atom::Points(0)
    }

    fn base_atoms(&self) -> Vec<Atom> {
        self.gens.iter().map(|&n| Atom::Points(n)).collect()
    }

    fn atom_label(&self, a: &Atom) -> String {
        match a {
            Atom::Points(n) => format!("P{n}"),
            _ => "?".into(),
        }
    }

    fn validate_atom(&self, a: &Atom) -> Result<()> {
        self.points(a).map(|_| ())
    }

    fn hom(&self, a: &Atom, b: &Atom) -> Result<FpModule> {
        let (m, n) = (self.points(a)?, self.points(b)?);
        self.check_bound(m + n)?;
        let basis = self.basis(m + n);
        Ok(FpModule::free(self.ring.clone(), basis.rgs.len()))
    }

    fn id_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let n = self.points(a)?;
        self.check_bound(2 * n)?;
        let basis = self.basis(2 * n);
        let labels: Vec<usize> = (0..n as usize).chain(0..n as usize).collect();
        let idx = *basis.index.get(&canonical_rgs(&labels)).expect("identity diagram");
        let mut out = vec![self.ring.zero(); basis.rgs.len()];
        out[idx] = self.ring.one();
        Ok(out)
    }

    fn compose_coords(
        &self,
        a: &Atom,
        b: &Atom,
        c: &Atom,
        f: &[Elem],
        g: &[Elem],
    ) -> Result<Vec<Elem>> {
        let (m, n, k) = (self.points(a)?, self.points(b)?, self.points(c)?);
        self.check_bound(m + n)?;
        self.check_bound(n + k)?;
        self.check_bound(m + k)?;
        let table = self.compose_table(m, n, k)?;
        let br = self.basis(m + k);
        let mut out = vec![self.ring.zero(); br.rgs.len()];
        for (i, ci) in f.iter().enumerate() {
            if self.ring.is_zero(ci) {
                continue;
            }
            for (j, cj) in g.iter().enumerate() {
                if self.ring.is_zero(cj) {
                    continue;
                }
                let (idx, loops) = table[i][j];
                let mut c = self.ring.mul(ci, cj);
                c = self.ring.mul(&c, &self.ring.pow(&self.t, loops as u64));
                out[idx] = self.ring.add(&out[idx], &c);
            }
        }
        Ok(out)
    }

    fn tensor_atom(&self, a: &Atom, b: &Atom) -> Result<Atom> {
        Ok(Atom::Points(self.points(a)? + self.points(b)?))
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
        let (m1, n1) = (self.points(a1)?, self.points(b1)?);
        let (m2, n2) = (self.points(a2)?, self.points(b2)?);
        self.check_bound(m1 + n1)?;
        self.check_bound(m2 + n2)?;
        self.check_bound(m1 + m2 + n1 + n2)?;
        let b_f = self.basis(m1 + n1);
        let b_g = self.basis(m2 + n2);
        let b_r = self.basis(m1 + m2 + n1 + n2);
        let total = (m1 + m2 + n1 + n2) as usize;
        // global positions of each factor's points
        let f_positions: Vec<usize> = (0..m1 as usize)
            .chain((m1 + m2) as usize..(m1 + m2 + n1) as usize)
            .collect();
        let g_positions: Vec<usize> = (m1 as usize..(m1 + m2) as usize)
            .chain((m1 + m2 + n1) as usize..total)
            .collect();
        let mut out = vec![self.ring.zero(); b_r.rgs.len()];
        for (i, ci) in f.iter().enumerate() {
            if self.ring.is_zero(ci) {
                continue;
            }
            for (j, cj) in g.iter().enumerate() {
                if self.ring.is_zero(cj) {
                    continue;
                }
                let mut uf = UnionFind::new(total);
                merge_rgs(&mut uf, &b_f.rgs[i], &f_positions);
                merge_rgs(&mut uf, &b_g.rgs[j], &g_positions);
                let labels: Vec<usize> = (0..total).map(|p| uf.find(p)).collect();
                let idx = *b_r.index.get(&canonical_rgs(&labels)).expect("tensor partition");
                out[idx] = self.ring.add(&out[idx], &self.ring.mul(ci, cj));
            }
        }
        Ok(out)
    }

    fn symmetry_coords(&self, a: &Atom, b: &Atom) -> Result<Vec<Elem>> {
        let (m, n) = (self.points(a)?, self.points(b)?);
        self.check_bound(2 * (m + n))?;
        let basis = self.basis(2 * (m + n));
        let total = 2 * (m + n) as usize;
        let mut uf = UnionFind::new(total);
        let (m, n) = (m as usize, n as usize);
        for i in 0..m {
            // domain first block to codomain second block
            uf.union(i, m + n + n + i);
        }
        for j in 0..n {
            uf.union(m + j, m + n + j);
        }
        let labels: Vec<usize> = (0..total).map(|p| uf.find(p)).collect();
        let idx = *basis.index.get(&canonical_rgs(&labels)).expect("crossing diagram");
        let mut out = vec![self.ring.zero(); basis.rgs.len()];
        out[idx] = self.ring.one();
        Ok(out)
    }

    fn dual_atom(&self, a: &Atom) -> Result<Atom> {
        self.points(a)?;
        Ok(a.clone())
    }

    fn ev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        let n = self.points(a)?;
        self.check_bound(2 * n)?;
        let basis = self.basis(2 * n);
        let labels: Vec<usize> = (0..n as usize).chain(0..n as usize).collect();
        let idx = *basis.index.get(&canonical_rgs(&labels)).expect("pairing diagram");
        let mut out = vec![self.ring.zero(); basis.rgs.len()];
        out[idx] = self.ring.one();
        Ok(out)
    }

    fn coev_coords(&self, a: &Atom) -> Result<Vec<Elem>> {
        self.ev_coords(a)
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }

}
