//! Stabilizer codes `(n, Λ, L, P)`: the symplectic module `P`, isotropy,
//! `L^ω`, the invariants `Z` and `S`, and operations producing new codes.

use crate::error::{Error, Result};
use crate::fpmod::{subquotient, FiniteStructure, FpModule};
use crate::gb::{kernel_mod, SubmoduleGb};
use crate::ring::{factorize, gcd, lcm, unit_vec, LaurentPoly, Matrix, Ring, RingRef};

/// A translation-invariant stabilizer code. `sigma` is `2q × s` with rows
/// `0..q` holding the `a`-components of each qudit and rows `q..2q` the
/// `b`-components.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub name: String,
    ring: RingRef,
    qudits: Vec<u64>,
    sigma: Matrix,
}

impl CodeSpec {
    /// Builds and validates a code. The ring modulus must be the lcm of the
    /// qudit dimensions.
    pub fn new(name: impl Into<String>, ring: RingRef, qudits: Vec<u64>, sigma: Matrix) -> Result<CodeSpec> {
        let q = qudits.len();
        if sigma.rows() != 2 * q {
            return Err(Error::Structure(format!("sigma has {} rows, expected {} for {q} qudits", sigma.rows(), 2 * q)));
        }
        if qudits.iter().any(|&d| d < 2) {
            return Err(Error::Structure("qudit dimensions must be at least 2".into()));
        }
        let n = qudits.iter().fold(1, |a, &d| lcm(a, d));
        if !qudits.is_empty() && n != ring.modulus() {
            return Err(Error::Structure(format!("modulus {} is not the lcm {n} of the qudit dimensions", ring.modulus())));
        }
        let sigma = reduce_rows(&sigma, &qudits);
        let spec = CodeSpec { name: name.into(), ring, qudits, sigma };
        spec.check_isotropic()?;
        Ok(spec)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn qudits(&self) -> &[u64] {
        &self.qudits
    }

    pub fn q(&self) -> usize {
        self.qudits.len()
    }

    /// Rank `D` of the lattice.
    pub fn dim(&self) -> usize {
        self.ring.rank()
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn is_uniform(&self) -> bool {
        self.qudits.iter().all(|&d| d == self.modulus())
    }

    /// `Λ_ω = [[0, −D], [D, 0]]` with `D = diag(n/n_j)`.
    pub fn omega_matrix(&self) -> Matrix {
        let q = self.q();
        let n = self.modulus();
        let mut m = Matrix::zeros(&self.ring, 2 * q, 2 * q);
        for (j, &d) in self.qudits.iter().enumerate() {
            let s = (n / d) as i64;
            m.set(j, q + j, LaurentPoly::constant(&self.ring, -s));
            m.set(q + j, j, LaurentPoly::constant(&self.ring, s));
        }
        m
    }

    /// Relations `n_j e` of `P` for qudits smaller than the modulus.
    pub fn p_relations(&self) -> Vec<Vec<LaurentPoly>> {
        let q = self.q();
        let n = self.modulus();
        let mut out = Vec::new();
        for (j, &d) in self.qudits.iter().enumerate() {
            if d != n {
                for row in [j, q + j] {
                    let mut v = unit_vec(&self.ring, 2 * q, row);
                    v[row] = LaurentPoly::constant(&self.ring, d as i64);
                    out.push(v);
                }
            }
        }
        out
    }

    /// `ω(v, w) = v^† Λ_ω w`.
    pub fn omega(&self, v: &[LaurentPoly], w: &[LaurentPoly]) -> LaurentPoly {
        let q = self.q();
        let n = self.modulus();
        let mut acc = LaurentPoly::zero(&self.ring);
        for (j, &d) in self.qudits.iter().enumerate() {
            let s = (n / d) as i64;
            if !v[q + j].is_zero() && !w[j].is_zero() {
                acc = acc + (v[q + j].antipode() * &w[j]).scale(s);
            }
            if !v[j].is_zero() && !w[q + j].is_zero() {
                acc = acc - (v[j].antipode() * &w[q + j]).scale(s);
            }
        }
        acc
    }

    fn check_isotropic(&self) -> Result<()> {
        let cols = self.sigma.columns();
        for i in 0..cols.len() {
            for j in i..cols.len() {
                let w = self.omega(&cols[i], &cols[j]);
                if !w.is_zero() {
                    return Err(Error::NotIsotropic(i, j, w.render()));
                }
            }
        }
        Ok(())
    }

    /// Generators of `L` inside the free cover `R^{2q}` of `P`, together
    /// with the relations of `P`.
    pub fn l_generators(&self) -> Vec<Vec<LaurentPoly>> {
        let mut g = self.sigma.columns();
        g.extend(self.p_relations());
        g
    }

    /// The free cover map `[σ | N] : R^{s+r} → R^{2q}` presenting `P/L`.
    pub fn quotient(&self) -> FpModule {
        let mut m = self.sigma.clone();
        let rel = self.p_relations();
        if !rel.is_empty() {
            m = m.hcat(&Matrix::from_cols(&self.ring, 2 * self.q(), rel));
        }
        FpModule::new(m)
    }

    /// `ε = σ^† Λ_ω`, mapping `P` to the syndrome module.
    pub fn syndrome_map(&self) -> Matrix {
        self.sigma.dagger().try_mul(&self.omega_matrix()).unwrap()
    }

    /// `N^ω` for `N` generated by `gens`, as generators in `R^{2q}`.
    pub fn perp(&self, gens: &[Vec<LaurentPoly>]) -> Result<Vec<Vec<LaurentPoly>>> {
        let q2 = 2 * self.q();
        if gens.is_empty() {
            return Ok((0..q2).map(|k| unit_vec(&self.ring, q2, k)).collect());
        }
        let g = Matrix::from_cols(&self.ring, q2, gens.to_vec());
        let m = g.dagger().try_mul(&self.omega_matrix())?;
        kernel_mod(&m, None)
    }

    /// True if every generator lies in the span of `span` plus the relations of `P`.
    pub fn contained(&self, gens: &[Vec<LaurentPoly>], span: &[Vec<LaurentPoly>]) -> Result<bool> {
        let mut s = span.to_vec();
        s.extend(self.p_relations());
        let gb = SubmoduleGb::new(&self.ring, 2 * self.q(), &s)?;
        Ok(gens.iter().all(|g| gb.contains(g)))
    }

    pub fn invariants(&self) -> Result<CodeInvariants> {
        let l = self.sigma.columns();
        let lperp = self.perp(&l)?;
        let lperpperp = self.perp(&lperp)?;
        let q2 = 2 * self.q();
        let mut wz = self.l_generators();
        wz.retain(|v| !v.iter().all(|p| p.is_zero()));
        let z = subquotient(&self.ring, q2, lperpperp.clone(), &wz)?;
        let mut ws = lperpperp.clone();
        ws.extend(self.p_relations());
        let s = subquotient(&self.ring, q2, lperp.clone(), &ws)?;
        let saturated = self.contained(&lperpperp, &l)?;
        let s_zero = s.is_zero()?;
        let z_structure = finite_if_possible(&z)?;
        let s_structure = finite_if_possible(&s)?;
        let perp_equal = self.contained(&lperp, &lperpperp)?;
        Ok(CodeInvariants {
            lperp,
            lperpperp,
            z,
            s,
            saturated,
            lagrangian: saturated && s_zero,
            perp_is_double_perp: perp_equal,
            z_structure,
            s_structure,
        })
    }

    /// Direct sum over a common lattice, modulus the lcm.
    pub fn direct_sum(&self, o: &CodeSpec) -> Result<CodeSpec> {
        if self.ring.lattice() != o.ring.lattice() {
            return Err(Error::Structure("direct sum needs a common lattice".into()));
        }
        let n = lcm(self.modulus(), o.modulus());
        let ring = Ring::new(n, self.ring.lattice().clone())?;
        let (qa, qb) = (self.q(), o.q());
        let (sa, sb) = (self.sigma.cols(), o.sigma.cols());
        let mut m = Matrix::zeros(&ring, 2 * (qa + qb), sa + sb);
        let lift = |p: &LaurentPoly| p.map_exponents(&ring, |e| e.to_vec());
        for j in 0..sa {
            for i in 0..qa {
                m.set(i, j, lift(self.sigma.get(i, j)));
                m.set(qa + qb + i, j, lift(self.sigma.get(qa + i, j)));
            }
        }
        for j in 0..sb {
            for i in 0..qb {
                m.set(qa + i, sa + j, lift(o.sigma.get(i, j)));
                m.set(qa + qb + qa + i, sa + j, lift(o.sigma.get(qb + i, j)));
            }
        }
        let mut qudits = self.qudits.clone();
        qudits.extend(&o.qudits);
        CodeSpec::new(format!("{}+{}", self.name, o.name), ring, qudits, m)
    }

    /// Splits the code along the prime factorization of the modulus.
    /// Qudits with trivial component are dropped.
    pub fn crt_decompose(&self) -> Result<Vec<CodeSpec>> {
        let n = self.modulus();
        let mut out = Vec::new();
        for (p, a) in factorize(n) {
            let pa = p.pow(a);
            let ring = Ring::new(pa, self.ring.lattice().clone())?;
            let keep: Vec<usize> = (0..self.q()).filter(|&j| gcd(self.qudits[j], pa) > 1).collect();
            let qudits: Vec<u64> = keep.iter().map(|&j| gcd(self.qudits[j], pa)).collect();
            let q = self.q();
            let mut rows: Vec<usize> = keep.clone();
            rows.extend(keep.iter().map(|&j| q + j));
            let sigma = self.sigma.select_rows(&rows).map(&ring, |e| e.reduce_modulus(&ring));
            let name = if factorize(n).len() == 1 { self.name.clone() } else { format!("{}[{pa}]", self.name) };
            out.push(CodeSpec::new(name, ring, qudits, drop_zero_cols(&sigma))?);
        }
        Ok(out)
    }

    /// Base change along an injective homomorphism `Z^D → Z^{D'}`, given by
    /// the images of the generators (`images[i]` has length `D'`).
    pub fn stack(&self, images: &[Vec<i64>]) -> Result<CodeSpec> {
        let d = self.dim();
        if !self.ring.lattice().torsion.is_empty() {
            return Err(Error::Unsupported("stacking a lattice with torsion".into()));
        }
        if images.len() != d {
            return Err(Error::Structure(format!("need {d} generator images")));
        }
        let d2 = images.first().map_or(0, |v| v.len());
        if images.iter().any(|v| v.len() != d2) || integer_rank(images) != d {
            return Err(Error::Structure("embedding is not injective".into()));
        }
        let ring = Ring::laurent(self.modulus(), d2)?;
        let map = |e: &[i64]| -> Vec<i64> {
            let mut out = vec![0i64; d2];
            for (i, &k) in e.iter().enumerate() {
                for (o, &g) in out.iter_mut().zip(&images[i]) {
                    *o += k * g;
                }
            }
            out
        };
        let sigma = self.sigma.map(&ring, |p| p.map_exponents(&ring, map));
        CodeSpec::new(format!("{}-stacked", self.name), ring, self.qudits.clone(), sigma)
    }

    /// Restriction to a finite-index sublattice `Γ ⊂ Z^D` whose generators
    /// are the columns of `gens` (`gens[i][j]` = component `i` of generator `j`).
    pub fn coarse_grain(&self, gens: &[Vec<i64>]) -> Result<CodeSpec> {
        let d = self.dim();
        if !self.ring.lattice().torsion.is_empty() {
            return Err(Error::Unsupported("coarse-graining a lattice with torsion".into()));
        }
        if gens.len() != d || gens.iter().any(|r| r.len() != d) {
            return Err(Error::Structure(format!("sublattice needs a {d}x{d} generator matrix")));
        }
        let h = column_hermite(gens);
        if (0..d).any(|i| h[i][i] == 0) {
            return Err(Error::Structure("sublattice has infinite index".into()));
        }
        let reps = box_points(&(0..d).map(|i| h[i][i]).collect::<Vec<_>>());
        let k = reps.len();
        let rep_index = |v: &[i64]| -> usize {
            let mut idx = 0usize;
            for i in 0..d {
                idx = idx * h[i][i] as usize + v[i] as usize;
            }
            idx
        };
        // λ = rep + H γ
        let split = |lam: &[i64]| -> (usize, Vec<i64>) {
            let mut l = lam.to_vec();
            let mut g = vec![0i64; d];
            for i in (0..d).rev() {
                let qv = l[i].div_euclid(h[i][i]);
                g[i] = qv;
                for r in 0..d {
                    l[r] -= qv * h[r][i];
                }
            }
            (rep_index(&l), g)
        };
        let ring = Ring::laurent(self.modulus(), d)?;
        let q = self.q();
        let nq = q * k;
        let mut cols = Vec::new();
        for c in 0..self.sigma.cols() {
            for r0 in &reps {
                let mut col = vec![LaurentPoly::zero(&ring); 2 * nq];
                for row in 0..2 * q {
                    let (half, j) = (row / q, row % q);
                    for (e, coef) in self.sigma.get(row, c).terms() {
                        let lam: Vec<i64> = e.iter().zip(r0).map(|(a, b)| a + b).collect();
                        let (ri, g) = split(&lam);
                        let target = half * nq + ri * q + j;
                        col[target] = &col[target] + &LaurentPoly::monomial(&ring, coef as i64, g);
                    }
                }
                cols.push(col);
            }
        }
        let mut qudits = Vec::with_capacity(nq);
        for _ in 0..k {
            qudits.extend(&self.qudits);
        }
        let sigma = Matrix::from_cols(&ring, 2 * nq, cols);
        CodeSpec::new(format!("{}-coarse", self.name), ring, qudits, sigma)
    }

    /// A copy with the given stabilizer columns replaced, revalidated.
    pub fn with_sigma(&self, sigma: Matrix) -> Result<CodeSpec> {
        CodeSpec::new(self.name.clone(), self.ring.clone(), self.qudits.clone(), sigma)
    }
}

/// `Z`, `S` and the complements of `L`.
#[derive(Clone, Debug)]
pub struct CodeInvariants {
    pub lperp: Vec<Vec<LaurentPoly>>,
    pub lperpperp: Vec<Vec<LaurentPoly>>,
    pub z: FpModule,
    pub s: FpModule,
    pub saturated: bool,
    pub lagrangian: bool,
    /// `L^ω = L^{ωω}`.
    pub perp_is_double_perp: bool,
    pub z_structure: Option<FiniteStructure>,
    pub s_structure: Option<FiniteStructure>,
}

fn finite_if_possible(m: &FpModule) -> Result<Option<FiniteStructure>> {
    if m.gens() == 0 {
        return Ok(Some(m.finite_structure()?));
    }
    if m.is_dim_zero()? {
        Ok(Some(m.finite_structure()?))
    } else {
        Ok(None)
    }
}

fn reduce_rows(sigma: &Matrix, qudits: &[u64]) -> Matrix {
    let q = qudits.len();
    let ring = sigma.ring().clone();
    let mut m = sigma.clone();
    for i in 0..sigma.rows() {
        let d = qudits[i % q.max(1)];
        if d == ring.modulus() {
            continue;
        }
        for j in 0..sigma.cols() {
            let p = sigma.get(i, j);
            let r = LaurentPoly::from_terms(&ring, p.terms().map(|(e, c)| (e.clone(), (c % d) as i64)));
            m.set(i, j, r);
        }
    }
    m
}

fn drop_zero_cols(m: &Matrix) -> Matrix {
    let idx: Vec<usize> = (0..m.cols()).filter(|&j| !m.col(j).iter().all(|p| p.is_zero())).collect();
    m.select_cols(&idx)
}

/// Rank of an integer matrix given by rows.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = m[i][k] * a - m[rank][k] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Upper-triangular column Hermite form of a square integer matrix with
/// positive diagonal (zero diagonal entries signal singularity).
fn column_hermite(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = g.len();
    let mut h: Vec<Vec<i64>> = g.to_vec();
    // eliminate below the diagonal with column operations, from the last row up
    for i in (0..d).rev() {
        loop {
            let nz: Vec<usize> = (0..=i).filter(|&j| h[i][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    for r in 0..d {
                        h[r].swap(j, i);
                    }
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| h[i][j].abs()).unwrap();
            for &j in &nz {
                if j != piv {
                    let f = h[i][j] / h[i][piv];
                    for r in 0..d {
                        h[r][j] -= f * h[r][piv];
                    }
                }
            }
        }
        if h[i][i] < 0 {
            for row in h.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    h
}

fn box_points(sides: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &s in sides {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..s {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: &RingRef, s: &str) -> LaurentPoly {
        LaurentPoly::parse(r, s).unwrap()
    }

    fn toric2d(n: u64) -> CodeSpec {
        let r = Ring::laurent(n, 2).unwrap();
        let rows = [["1 - x^-1", "0"], ["1 - y^-1", "0"], ["0", "1 - y"], ["0", "x - 1"]];
        let m = Matrix::from_rows(&r, rows.iter().map(|row| row.iter().map(|s| p(&r, s)).collect()).collect());
        CodeSpec::new("toric2d", r, vec![n, n], m).unwrap()
    }

    #[test]
    fn conjugate_pair_is_not_isotropic() {
        let r = Ring::laurent(3, 1).unwrap();
        let m = Matrix::identity(&r, 2);
        match CodeSpec::new("bad", r, vec![3], m) {
            Err(Error::NotIsotropic(0, 1, _)) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn toric_is_lagrangian() {
        let c = toric2d(3);
        let inv = c.invariants().unwrap();
        assert!(inv.saturated);
        assert!(inv.lagrangian);
    }

    #[test]
    fn perp_of_nothing_is_everything() {
        let c = toric2d(2);
        assert_eq!(c.perp(&[]).unwrap().len(), 4);
    }

    #[test]
    fn coarse_grain_trivial_index() {
        let c = toric2d(2);
        let g = c.coarse_grain(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.q(), 2);
        assert_eq!(g.sigma().cols(), 2);
        let g2 = c.coarse_grain(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(g2.q(), 4);
        assert_eq!(g2.sigma().cols(), 4);
    }

    #[test]
    fn hermite_of_skew_basis() {
        let h = column_hermite(&[vec![2, 1], vec![0, 1]]);
        assert_eq!(h[1][0], 0);
        assert_eq!(h[0][0] * h[1][1], 2);
    }
}
