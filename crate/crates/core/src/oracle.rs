//! Brute-force linear algebra on finite tori and finite windows of the
//! plane, used to cross-check the module-theoretic computations.

use std::collections::{BTreeMap, HashMap};

use crate::cech::WindowTerm;
use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::fpmod::Resolution;
use crate::linalg::{howell, nullspace, span_order_factored, ZnMatrix};
use crate::ring::{factorize, LaurentPoly, Matrix, RingRef};

/// A code compactified to the torus `Z_{L_1} × … × Z_{L_D}` (torsion
/// directions kept as they are).
#[derive(Clone, Debug)]
pub struct TorusInstance {
    n: u64,
    q: usize,
    sides: Vec<u64>,
    torsion: Vec<u32>,
    sites: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// One row per translate of each stabilizer column.
    pub stabilizers: ZnMatrix,
}

impl TorusInstance {
    pub fn new(spec: &CodeSpec, sides: &[u64]) -> Result<TorusInstance> {
        if !spec.is_uniform() {
            return Err(Error::Unsupported("torus flattening needs uniform qudit dimensions".into()));
        }
        let ring = spec.ring();
        if sides.len() != ring.rank() || sides.contains(&0) {
            return Err(Error::Structure(format!("need {} positive side lengths", ring.rank())));
        }
        let torsion = ring.lattice().torsion.clone();
        let mut ranges: Vec<i64> = sides.iter().map(|&s| s as i64).collect();
        ranges.extend(torsion.iter().map(|&m| m as i64));
        let sites = grid(&ranges);
        let index = sites.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut t = TorusInstance {
            n: spec.modulus(),
            q: spec.q(),
            sides: sides.to_vec(),
            torsion,
            sites,
            index,
            stabilizers: ZnMatrix::zeros(spec.modulus(), 0, 0),
        };
        let mut rows = Vec::new();
        for col in spec.sigma().columns() {
            for s in t.sites.clone() {
                let shifted: Vec<LaurentPoly> = col.iter().map(|p| p.shift(&s)).collect();
                rows.push(t.flatten(&shifted));
            }
        }
        t.stabilizers = to_matrix(t.n, t.dim(), rows);
        if !t.is_isotropic() {
            return Err(Error::Structure("translated stabilizers do not commute on this torus".into()));
        }
        Ok(t)
    }

    pub fn sites(&self) -> usize {
        self.sites.len()
    }

    /// Length of a flattened operator vector.
    pub fn dim(&self) -> usize {
        2 * self.q * self.sites.len()
    }

    fn wrap(&self, exp: &[i64]) -> usize {
        let d = self.sides.len();
        let mut key = exp.to_vec();
        for i in 0..d {
            key[i] = key[i].rem_euclid(self.sides[i] as i64);
        }
        for (j, &m) in self.torsion.iter().enumerate() {
            key[d + j] = key[d + j].rem_euclid(m as i64);
        }
        self.index[&key]
    }

    /// Site-major layout: `a_1..a_q, b_1..b_q` at each site.
    pub fn flatten(&self, v: &[LaurentPoly]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (row, p) in v.iter().enumerate() {
            for (e, c) in p.terms() {
                let k = self.wrap(e) * 2 * self.q + row;
                out[k] = (out[k] + c) % self.n;
            }
        }
        out
    }

    pub fn flatten_terms(&self, terms: &[WindowTerm]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for t in terms {
            let base = self.wrap(&t.site) * 2 * self.q;
            for (row, &c) in t.pauli.iter().enumerate() {
                out[base + row] = (out[base + row] + c) % self.n;
            }
        }
        out
    }

    /// `Σ_sites (b·a' − a·b')`: the commutator exponent of two operators.
    pub fn commutator_phase(&self, v: &[u64], w: &[u64]) -> u64 {
        pairing(self.n, self.q, v, w)
    }

    pub fn is_isotropic(&self) -> bool {
        let rows = self.stabilizers.row_vecs();
        let jrows = to_matrix(self.n, self.dim(), rows.iter().map(|r| self.j_row(r)).collect());
        let m = jrows.mul(&self.stabilizers.transpose());
        m.is_zero()
    }

    /// Row `r` with `r · v = pairing(s, v)`.
    fn j_row(&self, s: &[u64]) -> Vec<u64> {
        j_row(self.n, self.q, s)
    }

    /// `sqrt(|L^ω / L^{ωω}|)`.
    pub fn ground_state_degeneracy(&self) -> Result<u128> {
        let k1 = to_matrix(self.n, self.dim(), self.stabilizers.row_vecs().iter().map(|r| self.j_row(r)).collect());
        let perp = nullspace(&k1);
        let k2 = to_matrix(self.n, self.dim(), perp.iter().map(|r| self.j_row(r)).collect());
        let (e1, e2) = (span_order_factored(&k1), span_order_factored(&k2));
        let mut gsd: u128 = 1;
        let mut total: u128 = 1;
        for (p, &b) in &e2 {
            let a = e1.get(p).copied().unwrap_or(0);
            let diff = b.checked_sub(a).ok_or_else(|| Error::Structure("double complement larger than complement".into()))?;
            total = total.saturating_mul((*p as u128).saturating_pow(diff));
            if diff % 2 != 0 {
                return Err(Error::NonSquare(total.min(u64::MAX as u128) as u64));
            }
            gsd *= (*p as u128).pow(diff / 2);
        }
        Ok(gsd)
    }
}

pub fn ground_state_degeneracy(spec: &CodeSpec, sides: &[u64]) -> Result<u128> {
    TorusInstance::new(spec, sides)?.ground_state_degeneracy()
}

fn grid(ranges: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &r in ranges {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..r).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn to_matrix(n: u64, cols: usize, rows: Vec<Vec<u64>>) -> ZnMatrix {
    let mut m = ZnMatrix::zeros(n, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            if v != 0 {
                m.set(i, j, v);
            }
        }
    }
    m
}

fn j_row(n: u64, q: usize, s: &[u64]) -> Vec<u64> {
    let mut r = vec![0u64; s.len()];
    for base in (0..s.len()).step_by(2 * q) {
        for j in 0..q {
            r[base + j] = s[base + q + j];
            r[base + q + j] = (n - s[base + j]) % n;
        }
    }
    r
}

fn pairing(n: u64, q: usize, v: &[u64], w: &[u64]) -> u64 {
    let mut acc: u128 = 0;
    let n128 = n as u128;
    for base in (0..v.len()).step_by(2 * q) {
        for j in 0..q {
            let (a, b) = (v[base + j] as u128, v[base + q + j] as u128);
            let (a2, b2) = (w[base + j] as u128, w[base + q + j] as u128);
            acc = (acc + b * a2 + (n128 - a * b2 % n128)) % n128;
        }
    }
    acc as u64
}

/// Commutator exponent of two operators on the plane given as site lists.
pub fn plane_commutator(n: u64, a: &[WindowTerm], b: &[WindowTerm]) -> u64 {
    let by_site: HashMap<&Vec<i64>, &Vec<u64>> = b.iter().map(|t| (&t.site, &t.pauli)).collect();
    let mut acc = 0u64;
    for t in a {
        if let Some(w) = by_site.get(&t.site) {
            let q = t.pauli.len() / 2;
            acc = (acc + pairing(n, q, &t.pauli, w)) % n;
        }
    }
    acc
}

/// Site list of `x^shift · v` for an operator `v ∈ P`.
pub fn operator_terms(ring: &RingRef, v: &[LaurentPoly], shift: &[i64]) -> Vec<WindowTerm> {
    let mut sites: BTreeMap<Vec<i64>, Vec<u64>> = BTreeMap::new();
    let n = ring.modulus();
    for (row, p) in v.iter().enumerate() {
        for (e, c) in p.shift(shift).terms() {
            let entry = sites.entry(e.clone()).or_insert_with(|| vec![0; v.len()]);
            entry[row] = (entry[row] + c) % n;
        }
    }
    sites.into_iter().map(|(site, pauli)| WindowTerm { site, pauli }).collect()
}

/// Sites of the box `[−r, r]^D` times the full torsion part.
fn window_sites(ring: &RingRef, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..ring.rank() {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-r..=r).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    for &m in &ring.lattice().torsion {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..m as i64).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Sparse image of the unit vector `e_col · x^site` under `m`, keyed by
/// (target site, target row).
fn sparse_image(m: &Matrix, col: usize, site: &[i64]) -> Vec<((Vec<i64>, usize), u64)> {
    let mut out = Vec::new();
    for row in 0..m.rows() {
        for (e, c) in m.get(row, col).shift(site).terms() {
            out.push(((e.clone(), row), c));
        }
    }
    out
}

fn subtract(num: &BTreeMap<u64, u32>, den: &BTreeMap<u64, u32>) -> Result<BTreeMap<u64, u32>> {
    let mut out = num.clone();
    for (p, &e) in den {
        let slot = out.entry(*p).or_insert(0);
        *slot = slot.checked_sub(e).ok_or_else(|| Error::Structure("window quotient is not a group quotient".into()))?;
    }
    Ok(out)
}

fn to_u128(f: &BTreeMap<u64, u32>) -> Result<u128> {
    let overflow = || Error::Structure("window order overflows".into());
    f.iter().try_fold(1u128, |acc, (&p, &e)| acc.checked_mul((p as u128).checked_pow(e).ok_or_else(overflow)?).ok_or_else(overflow))
}

/// Heuristic estimate of `|Q^0|`: locally consistent syndromes supported in
/// the inner window, modulo syndromes of operators supported in the outer
/// window whose syndrome stays inside the inner window.
pub fn window_q0(spec: &CodeSpec, res: &Resolution, inner: i64, outer: i64) -> Result<u128> {
    let ring = spec.ring();
    if ring.rank() > 3 {
        return Err(Error::Unsupported("window estimates are limited to D ≤ 3".into()));
    }
    if inner > outer {
        return Err(Error::Structure("inner radius exceeds outer radius".into()));
    }
    let n = spec.modulus();
    let eps = spec.syndrome_map();
    let s = eps.rows();
    let inner_sites = window_sites(ring, inner);
    let mut inner_index: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    for site in &inner_sites {
        for row in 0..s {
            let k = inner_index.len();
            inner_index.insert((site.clone(), row), k);
        }
    }

    // locally consistent syndromes: kernel of d_2^† restricted to the window
    let mut consistent: BTreeMap<u64, u32> = BTreeMap::new();
    for (p, e) in factorize(n) {
        consistent.insert(p, e * inner_index.len() as u32);
    }
    if let Some(d2) = res.d(2).filter(|d| d.cols() > 0) {
        let d2t = d2.dagger();
        let mut cons_index: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
        let mut entries = Vec::new();
        for ((site, row), &col) in &inner_index {
            for (mut key, c) in sparse_image(&d2t, *row, site) {
                ring.lattice().normalize(&mut key.0);
                let len = cons_index.len();
                let r = *cons_index.entry(key).or_insert(len);
                entries.push((r, col, c));
            }
        }
        let mut m = ZnMatrix::zeros(n, inner_index.len(), cons_index.len());
        for (r, c, v) in entries {
            m.set(c, r, (m.get(c, r) + v) % n);
        }
        consistent = subtract(&consistent, &span_order_factored(&m))?;
    }

    // creatable syndromes: outer-window operators with syndrome inside
    let outer_sites = window_sites(ring, outer);
    let mut images: Vec<Vec<((Vec<i64>, usize), u64)>> = Vec::new();
    let mut outside: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
    for site in &outer_sites {
        for k in 0..eps.cols() {
            let img = sparse_image(&eps, k, site);
            for (key, _) in &img {
                let mut norm = key.clone();
                ring.lattice().normalize(&mut norm.0);
                if !inner_index.contains_key(&norm) && !outside.contains_key(&norm) {
                    let len = outside.len();
                    outside.insert(norm, len);
                }
            }
            images.push(img);
        }
    }
    let (no, ni) = (outside.len(), inner_index.len());
    let mut m = ZnMatrix::zeros(n, images.len(), no + ni);
    for (r, img) in images.iter().enumerate() {
        for (key, c) in img {
            let mut norm = key.clone();
            ring.lattice().normalize(&mut norm.0);
            let col = match inner_index.get(&norm) {
                Some(&i) => no + i,
                None => outside[&norm],
            };
            m.set(r, col, (m.get(r, col) + c) % n);
        }
    }
    let mut creatable: BTreeMap<u64, u32> = BTreeMap::new();
    for row in howell(&m) {
        let lead = row.iter().position(|&v| v != 0).unwrap();
        if lead >= no {
            for (p, e) in factorize(n / row[lead]) {
                *creatable.entry(p).or_insert(0) += e;
            }
        }
    }
    to_u128(&subtract(&consistent, &creatable)?)
}

/// Runs `window_q0` on successive radius pairs and reports the order once
/// the last two agree.
pub fn window_q0_stabilized(spec: &CodeSpec, res: &Resolution, radii: &[(i64, i64)]) -> Result<u128> {
    let mut orders = Vec::new();
    for &(a, b) in radii {
        orders.push(window_q0(spec, res, a, b)?);
    }
    match orders.as_slice() {
        [.., x, y] if x == y => Ok(*y),
        _ => Err(Error::NotStabilized(orders.iter().map(|&o| o.min(u64::MAX as u128) as u64).collect())),
    }
}
