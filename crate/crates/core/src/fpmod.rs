//! Finitely presented modules `coker(A)` and the homological toolkit built
//! on top of [`crate::gb`].

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gb::{kernel_mod, syzygies, Ambient, MVec, StrongGb, SubmoduleGb, Term};
use crate::linalg::{smith_prime_power, Smith, ZnMatrix};
use crate::ring::{prime_power, unit_vec, vec_is_zero, LaurentPoly, Matrix, RingRef};

/// `coker(rel)` with `rel` a `gens × r` matrix. `reps`, when present, holds
/// for each generator a representative vector in some ambient free module.
#[derive(Clone, Debug)]
pub struct FpModule {
    ring: RingRef,
    rel: Matrix,
    reps: Option<Vec<Vec<LaurentPoly>>>,
}

pub type Ideal = Vec<LaurentPoly>;

impl FpModule {
    pub fn new(rel: Matrix) -> FpModule {
        FpModule { ring: rel.ring().clone(), rel, reps: None }
    }

    pub fn with_reps(rel: Matrix, reps: Vec<Vec<LaurentPoly>>) -> FpModule {
        assert_eq!(rel.rows(), reps.len(), "one representative per generator");
        FpModule { ring: rel.ring().clone(), rel, reps: Some(reps) }
    }

    pub fn free(ring: &RingRef, g: usize) -> FpModule {
        FpModule::new(Matrix::zeros(ring, g, 0))
    }

    /// `R / ideal`.
    pub fn cyclic(ring: &RingRef, ideal: &[LaurentPoly]) -> FpModule {
        FpModule::new(Matrix::from_rows(ring, vec![ideal.to_vec()]))
    }

    pub fn zero(ring: &RingRef) -> FpModule {
        FpModule::free(ring, 0)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.rel.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.rel
    }

    pub fn reps(&self) -> Option<&[Vec<LaurentPoly>]> {
        self.reps.as_deref()
    }

    pub fn direct_sum(&self, o: &FpModule) -> FpModule {
        let rel = self.rel.block_diag(&o.rel);
        FpModule { ring: self.ring.clone(), rel, reps: None }
    }

    /// Removes generators eliminable through relations with a unit entry.
    pub fn prune(&self) -> FpModule {
        let ring = self.ring.clone();
        let mut cols: Vec<Vec<LaurentPoly>> = self.rel.columns();
        let mut gens = self.gens();
        let mut reps = self.reps.clone();
        let mut alive: Vec<usize> = (0..gens).collect();
        loop {
            cols.retain(|c| !vec_is_zero(c));
            let mut pick: Option<(usize, usize, usize)> = None;
            for (j, c) in cols.iter().enumerate() {
                let weight: usize = c.iter().map(|p| p.len()).sum();
                for (i, p) in c.iter().enumerate() {
                    if p.as_unit_monomial().is_some() && pick.is_none_or(|b| weight < b.2) {
                        pick = Some((i, j, weight));
                    }
                }
            }
            let Some((i, j, _)) = pick else { break };
            let piv = cols[j].clone();
            let inv = piv[i].unit_inverse().unwrap();
            for (c_idx, c) in cols.iter_mut().enumerate() {
                if c_idx == j || c[i].is_zero() {
                    continue;
                }
                let f = &c[i] * &inv;
                for k in 0..gens {
                    if !piv[k].is_zero() {
                        c[k] = &c[k] - &(&f * &piv[k]);
                    }
                }
            }
            cols.remove(j);
            for c in cols.iter_mut() {
                c.remove(i);
            }
            alive.remove(i);
            if let Some(r) = reps.as_mut() {
                r.remove(i);
            }
            gens -= 1;
        }
        let mut seen: Vec<Vec<LaurentPoly>> = Vec::new();
        for c in cols {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        let rel = Matrix::from_cols(&ring, gens, seen);
        FpModule { ring, rel, reps }
    }

    fn relation_gb(&self) -> Result<SubmoduleGb> {
        SubmoduleGb::new(&self.ring, self.gens(), &self.rel.columns())
    }

    pub fn is_zero(&self) -> Result<bool> {
        let m = self.prune();
        if m.gens() == 0 {
            return Ok(true);
        }
        let gb = m.relation_gb()?;
        Ok((0..m.gens()).all(|k| gb.contains(&unit_vec(&m.ring, m.gens(), k))))
    }

    /// True if `v` (a vector in generator coordinates) is zero in the module.
    pub fn is_zero_element(&self, v: &[LaurentPoly]) -> Result<bool> {
        Ok(self.relation_gb()?.contains(v))
    }

    /// `M^* = ker(A^†)`, presented by its generators and their syzygies.
    pub fn dual(&self) -> Result<FpModule> {
        let g = self.gens();
        let k = if self.rel.cols() == 0 {
            (0..g).map(|i| unit_vec(&self.ring, g, i)).collect()
        } else {
            kernel_mod(&self.rel.dagger(), None)?
        };
        subquotient(&self.ring, g, k, &[])
    }

    /// Generators of `Ann(M)`.
    pub fn annihilator(&self) -> Result<Ideal> {
        let m = self.prune();
        let g = m.gens();
        if g == 0 {
            return Ok(vec![LaurentPoly::one(&self.ring)]);
        }
        let mut acc: Option<Ideal> = None;
        for k in 0..g {
            let col = Matrix::from_cols(&self.ring, g, vec![unit_vec(&self.ring, g, k)]);
            let ann_k: Ideal = kernel_mod(&col, Some(&m.rel))?.into_iter().map(|v| v[0].clone()).collect();
            acc = Some(match acc {
                None => ann_k,
                Some(a) => intersect_ideals(&self.ring, &a, &ann_k)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Kernel of the natural map `M → M^{**}`.
    pub fn torsion_submodule(&self) -> Result<FpModule> {
        let g = self.gens();
        let k = if self.rel.cols() == 0 {
            (0..g).map(|i| unit_vec(&self.ring, g, i)).collect::<Vec<_>>()
        } else {
            kernel_mod(&self.rel.dagger(), None)?
        };
        let t = if k.is_empty() {
            (0..g).map(|i| unit_vec(&self.ring, g, i)).collect()
        } else {
            let km = Matrix::from_cols(&self.ring, g, k);
            kernel_mod(&km.dagger(), None)?
        };
        subquotient(&self.ring, g, t, &self.rel.columns())
    }

    /// True iff `R/Ann(M)` is finite.
    pub fn is_dim_zero(&self) -> Result<bool> {
        is_dim_zero(&self.ring, &self.annihilator()?)
    }

    pub fn finite_structure(&self) -> Result<FiniteStructure> {
        FiniteStructure::compute(self)
    }
}

/// Presentation of `span(U) / (span(U) ∩ span(W))` inside `R^rank`, i.e.
/// relations are the `c` with `U c ∈ span(W)`.
pub fn subquotient(
    ring: &RingRef,
    rank: usize,
    u: Vec<Vec<LaurentPoly>>,
    w: &[Vec<LaurentPoly>],
) -> Result<FpModule> {
    // generators already in span(W) contribute nothing
    let u: Vec<Vec<LaurentPoly>> = if w.is_empty() {
        u
    } else {
        let gbw = SubmoduleGb::new(ring, rank, w)?;
        u.into_iter().filter(|g| !gbw.contains(g)).collect()
    };
    if u.is_empty() {
        return Ok(FpModule::with_reps(Matrix::zeros(ring, 0, 0), vec![]));
    }
    let um = Matrix::from_cols(ring, rank, u.clone());
    let rel = if w.is_empty() {
        kernel_mod(&um, None)?
    } else {
        let wm = Matrix::from_cols(ring, rank, w.to_vec());
        kernel_mod(&um, Some(&wm))?
    };
    let relm = Matrix::from_cols(ring, u.len(), rel);
    Ok(FpModule::with_reps(relm, u).prune())
}

pub fn intersect_ideals(ring: &RingRef, a: &[LaurentPoly], b: &[LaurentPoly]) -> Result<Ideal> {
    let one = LaurentPoly::one(ring);
    let col = Matrix::from_cols(ring, 2, vec![vec![one.clone(), one]]);
    let z = LaurentPoly::zero(ring);
    let mut extra = Vec::new();
    for x in a {
        extra.push(vec![x.clone(), z.clone()]);
    }
    for y in b {
        extra.push(vec![z.clone(), y.clone()]);
    }
    if extra.is_empty() {
        return Ok(vec![]);
    }
    let em = Matrix::from_cols(ring, 2, extra);
    Ok(kernel_mod(&col, Some(&em))?.into_iter().map(|v| v[0].clone()).collect())
}

/// True iff `R/ideal` is finite, by the staircase test on `ideal + (p)`.
pub fn is_dim_zero(ring: &RingRef, ideal: &[LaurentPoly]) -> Result<bool> {
    let (p, _) = prime_power(ring.modulus()).ok_or(Error::CompositeModulus(ring.modulus()))?;
    let mut gens: Vec<Vec<LaurentPoly>> = ideal.iter().map(|r| vec![r.clone()]).collect();
    gens.push(vec![LaurentPoly::constant(ring, p as i64)]);
    Ok(SubmoduleGb::new(ring, 1, &gens)?.quotient_is_finite())
}

pub fn ideal_contains(ring: &RingRef, ideal: &[LaurentPoly], r: &LaurentPoly) -> Result<bool> {
    let gens: Vec<Vec<LaurentPoly>> = ideal.iter().map(|x| vec![x.clone()]).collect();
    Ok(SubmoduleGb::new(ring, 1, &gens)?.contains(std::slice::from_ref(r)))
}

/// Truncated free resolution `F_k → … → F_1 → F_0`, with `maps[i] = d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: RingRef,
    pub maps: Vec<Matrix>,
    /// True if a kernel vanished, so the resolution is finite.
    pub finite: bool,
}

impl Resolution {
    /// Wraps hand-written maps. Checks shapes and `d_i d_{i+1} = 0`; exactness
    /// is the caller's responsibility.
    pub fn from_maps(ring: &RingRef, maps: Vec<Matrix>, finite: bool) -> Result<Resolution> {
        for w in maps.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(Error::Structure("resolution maps have mismatched shapes".into()));
            }
        }
        let res = Resolution { ring: ring.clone(), maps, finite };
        if !res.verify()? {
            return Err(Error::Structure("consecutive resolution maps do not compose to zero".into()));
        }
        Ok(res)
    }

    pub fn rank(&self, i: usize) -> usize {
        if i == 0 {
            self.maps.first().map_or(0, |m| m.rows())
        } else if i <= self.maps.len() {
            self.maps[i - 1].cols()
        } else {
            0
        }
    }

    /// `d_i`, or `None` outside the computed range.
    pub fn d(&self, i: usize) -> Option<&Matrix> {
        (i >= 1).then(|| self.maps.get(i - 1)).flatten()
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Ranks `F_0, F_1, …`, ending in `0` when the resolution terminates.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..=self.maps.len()).map(|i| self.rank(i)).collect();
        if self.finite && v.last() != Some(&0) {
            v.push(0);
        }
        v
    }

    /// Checks `d_i d_{i+1} = 0` for all consecutive pairs.
    pub fn verify(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].try_mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Resolves `coker(rel)` to length `k` (or until a kernel vanishes).
pub fn free_resolution(m: &FpModule, k: usize) -> Result<Resolution> {
    let ring = m.ring.clone();
    let mut maps = Vec::new();
    let first: Vec<Vec<LaurentPoly>> = m.rel.columns().into_iter().filter(|c| !vec_is_zero(c)).collect();
    if first.is_empty() {
        return Ok(Resolution { ring, maps: vec![Matrix::zeros(&m.ring, m.gens(), 0)], finite: true });
    }
    maps.push(Matrix::from_cols(&ring, m.gens(), first));
    let mut finite = false;
    while maps.len() < k {
        let next = syzygies(maps.last().unwrap())?;
        if next.cols() == 0 {
            finite = true;
            break;
        }
        maps.push(next);
    }
    Ok(Resolution { ring, maps, finite })
}

/// `Ext^i(M̄, R)` from a resolution of `M`, with representatives in `F_i^*`.
pub fn ext(res: &Resolution, i: usize) -> Result<FpModule> {
    let ring = res.ring.clone();
    let fi = res.rank(i);
    if fi == 0 {
        return Ok(FpModule::with_reps(Matrix::zeros(&ring, 0, 0), vec![]));
    }
    let k: Vec<Vec<LaurentPoly>> = match res.d(i + 1) {
        Some(d) if d.cols() > 0 => kernel_mod(&d.dagger(), None)?,
        _ if i < res.maps.len() || res.finite => (0..fi).map(|j| unit_vec(&ring, fi, j)).collect(),
        _ => return Err(Error::Structure(format!("resolution too short for Ext^{i}"))),
    };
    let w: Vec<Vec<LaurentPoly>> = match res.d(i) {
        Some(d) if i >= 1 => d.dagger().columns(),
        _ => vec![],
    };
    subquotient(&ring, fi, k, &w)
}

/// Group structure of a finite module.
#[derive(Clone, Debug)]
pub struct FiniteStructure {
    /// Nontrivial invariant factors `d_1 | d_2 | …`.
    pub factors: Vec<u64>,
    /// Per lattice generator (free then torsion directions), the matrix of
    /// multiplication in the invariant-factor basis; row `k` holds the
    /// coordinates of `x·f_k`.
    pub translations: Vec<Vec<Vec<u64>>>,
    /// Invariant-factor generators in module generator coordinates.
    pub generators: Vec<Vec<LaurentPoly>>,
    gb: StrongGb,
    index: HashMap<Term, usize>,
    smith: Smith,
    keep: Vec<usize>,
    gens: usize,
}

impl FiniteStructure {
    const CAP: usize = 200_000;

    fn compute(m: &FpModule) -> Result<FiniteStructure> {
        let ring = m.ring.clone();
        let amb = Ambient::new(&ring)?;
        let (p, t) = prime_power(ring.modulus()).unwrap();
        let g = m.gens();
        let enc: Vec<MVec> = m.rel.columns().iter().map(|c| amb.encode(c, 0)).collect();
        let gb = StrongGb::compute(&amb, g, enc);
        let mut terms: Vec<(Term, u32)> = Vec::new();
        for pos in 0..g {
            let st = gb
                .standard_terms(pos, Self::CAP)
                .ok_or_else(|| Error::NotFinite(format!("more than {} standard terms", Self::CAP)))?;
            terms.extend(st);
        }
        let index: HashMap<Term, usize> = terms.iter().enumerate().map(|(i, (t, _))| (*t, i)).collect();
        let q = ring.modulus();
        let ns = terms.len();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (i, &(term, e)) in terms.iter().enumerate() {
            if e >= t {
                continue;
            }
            let pe = p.pow(e);
            let r = gb.nf(vec![(term, pe)]);
            let mut row = vec![0u64; ns];
            row[i] = pe;
            for (tt, c) in r {
                let j = index[&tt];
                row[j] = (row[j] + q - c) % q;
            }
            rows.push(row);
        }
        let mut rel = ZnMatrix::zeros(q, rows.len(), ns);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                rel.set(i, j, v);
            }
        }
        let smith = smith_prime_power(&rel, p, t);
        let keep: Vec<usize> = (0..ns).filter(|&k| smith.exps[k] > 0).collect();
        let factors: Vec<u64> = keep.iter().map(|&k| p.pow(smith.exps[k])).collect();
        let generators = keep
            .iter()
            .map(|&k| {
                let mut v: MVec = Vec::new();
                for j in 0..ns {
                    let c = smith.v_inv.get(k, j);
                    if c != 0 {
                        v.push((terms[j].0, c));
                    }
                }
                v.sort_by(|a, b| b.0.cmp(&a.0));
                amb.decode(&gb.nf(v), 0, g)
            })
            .collect();
        let mut fs = FiniteStructure {
            factors,
            translations: Vec::new(),
            generators,
            gb,
            index,
            smith,
            keep,
            gens: g,
        };
        let slots = ring.slots();
        for dir in 0..slots {
            let x = LaurentPoly::var(&ring, dir);
            let mut mat = Vec::new();
            for k in 0..fs.keep.len() {
                let v: Vec<LaurentPoly> = fs.generators[k].iter().map(|c| &x * c).collect();
                mat.push(fs.coords(&v));
            }
            fs.translations.push(mat);
        }
        Ok(fs)
    }

    /// Group order.
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Coordinates in the invariant-factor basis of an element given in
    /// module generator coordinates.
    pub fn coords(&self, v: &[LaurentPoly]) -> Vec<u64> {
        let amb = self.gb.ambient();
        let r = self.gb.nf(amb.encode(v, 0));
        let q = amb.ring().modulus();
        let ns = self.smith.v.rows;
        let mut c = vec![0u64; ns];
        for (t, a) in r {
            c[self.index[&t]] = a;
        }
        self.keep
            .iter()
            .enumerate()
            .map(|(kk, &k)| {
                let s = (0..ns).fold(0u128, |acc, j| (acc + c[j] as u128 * self.smith.v.get(j, k) as u128) % q as u128);
                (s as u64) % self.factors[kk]
            })
            .collect()
    }

    /// Multiplicative order of the translation matrix for direction `dir`.
    pub fn translation_order(&self, dir: usize, bound: u64) -> Option<u64> {
        let m = &self.translations[dir];
        let k = m.len();
        if k == 0 {
            return Some(1);
        }
        let ident: Vec<Vec<u64>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { 1 % self.factors[j] } else { 0 }).collect()).collect();
        let mut cur = m.clone();
        for ord in 1..=bound {
            if cur == ident {
                return Some(ord);
            }
            cur = self.compose(&cur, m);
        }
        None
    }

    /// `a` then `b`, as row-coordinate maps.
    pub fn compose(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let k = a.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let d = self.factors[j] as u128;
                        ((0..k).fold(0u128, |acc, l| acc + a[i][l] as u128 * b[l][j] as u128) % d) as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn module_gens(&self) -> usize {
        self.gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn p(r: &RingRef, s: &str) -> LaurentPoly {
        LaurentPoly::parse(r, s).unwrap()
    }

    #[test]
    fn dual_of_free_is_free() {
        let r = Ring::laurent(3, 1).unwrap();
        let d = FpModule::free(&r, 1).dual().unwrap();
        assert_eq!(d.gens(), 1);
        assert!(!d.is_zero().unwrap());
        assert_eq!(d.relations().cols(), 0);
    }

    #[test]
    fn dual_of_torsion_cyclic_vanishes() {
        let r = Ring::laurent(3, 1).unwrap();
        let m = FpModule::cyclic(&r, &[p(&r, "x - 1")]);
        assert!(m.dual().unwrap().is_zero().unwrap());
    }

    #[test]
    fn plaquette_quotient_structure() {
        let r = Ring::laurent(3, 2).unwrap();
        let q = FpModule::cyclic(&r, &[p(&r, "x - y"), p(&r, "x*y - 1")]);
        assert!(q.is_dim_zero().unwrap());
        let fs = q.finite_structure().unwrap();
        assert_eq!(fs.factors, vec![3, 3]);
        assert_eq!(fs.translations[0], fs.translations[1]);
        assert_ne!(fs.translation_order(0, 10), Some(1));
        assert_eq!(fs.translation_order(0, 10), Some(2));
    }

    #[test]
    fn annihilator_of_cyclic() {
        let r = Ring::laurent(9, 2).unwrap();
        let q = FpModule::cyclic(&r, &[p(&r, "x - y"), p(&r, "x*y - 1")]);
        let ann = q.annihilator().unwrap();
        assert!(ideal_contains(&r, &ann, &p(&r, "x - y")).unwrap());
        assert!(ideal_contains(&r, &ann, &p(&r, "x^2 - 1")).unwrap());
        assert!(!ideal_contains(&r, &ann, &p(&r, "x - 1")).unwrap());
    }

    #[test]
    fn zero_ideal_not_dim_zero() {
        let r = Ring::laurent(2, 1).unwrap();
        assert!(!is_dim_zero(&r, &[]).unwrap());
        assert!(is_dim_zero(&r, &[p(&r, "x - 1")]).unwrap());
    }
}
