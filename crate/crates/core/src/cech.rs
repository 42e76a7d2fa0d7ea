//! The Čech complex on `t_i = 1 − x_i^ℓ`: cochains, differential, cup
//! product, residues, and the braiding and spin built from them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::fpmod::Resolution;
use crate::gb::{MatrixGb, SubmoduleGb};
use crate::ring::{vec_is_zero, zero_vec, LaurentPoly, Matrix, RingRef};

/// Largest extra power of `t` tried when lifting a fraction.
const LIFT_CAP: u32 = 8;

/// `num / ∏ t_i^{den_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    pub num: Vec<LaurentPoly>,
    pub den: Vec<u32>,
}

/// A Čech cochain of degree `p`: one fraction per `p`-element index set.
/// Missing components are zero.
#[derive(Clone, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub width: usize,
    pub comps: BTreeMap<Vec<usize>, Fraction>,
}

impl Cochain {
    pub fn zero(degree: usize, width: usize) -> Cochain {
        Cochain { degree, width, comps: BTreeMap::new() }
    }

    pub fn component(&self, idx: &[usize]) -> Option<&Fraction> {
        self.comps.get(idx)
    }

    pub fn insert(&mut self, idx: Vec<usize>, f: Fraction) {
        assert_eq!(idx.len(), self.degree, "index set size must equal the degree");
        if !vec_is_zero(&f.num) {
            self.comps.insert(idx, f);
        }
    }
}

/// Sorted `k`-element subsets of `0..d`.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// `C(m+k−1, k−1)` read as a polynomial in `m`, mod `n`: the coefficient of
/// `X^m` in the two-sided expansion `(1/t)_+^k − (1/t)_−^k`, `t = 1 − X`.
pub fn two_sided_coeff(k: u32, m: i64, n: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    if m >= 0 {
        binom_mod(m as u64 + k as u64 - 1, k as u64 - 1, n)
    } else if m <= -(k as i64) {
        let c = binom_mod((-m - 1) as u64, k as u64 - 1, n);
        if (k - 1).is_multiple_of(2) {
            c
        } else {
            (n - c) % n
        }
    } else {
        0
    }
}

/// Coefficient of `X^m` in `(1/t)_s^k` for a single orthant `s`.
pub fn one_sided_coeff(k: u32, m: i64, plus: bool, n: u64) -> u64 {
    if k == 0 {
        return u64::from(m == 0) % n;
    }
    if plus {
        if m >= 0 {
            binom_mod(m as u64 + k as u64 - 1, k as u64 - 1, n)
        } else {
            0
        }
    } else if m <= -(k as i64) {
        let c = binom_mod((-m - k as i64) as u64 + k as u64 - 1, k as u64 - 1, n);
        if k.is_multiple_of(2) {
            c
        } else {
            (n - c) % n
        }
    } else {
        0
    }
}

fn binom_mod(a: u64, b: u64, n: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=b as u128 {
        acc = acc * (a as u128 - b as u128 + i) / i;
    }
    (acc % n as u128) as u64
}

/// A finite sum of terms `r · ∏_i B_{k_i}(x_i^ℓ)`, an element of `R^#`.
#[derive(Clone, Debug)]
pub struct ResidueSeries {
    ring: RingRef,
    ell: u64,
    pub terms: Vec<(LaurentPoly, Vec<u32>)>,
}

impl ResidueSeries {
    pub fn zero(ring: &RingRef, ell: u64) -> ResidueSeries {
        ResidueSeries { ring: ring.clone(), ell, terms: Vec::new() }
    }

    /// `Res(num / ∏ t_i^{k_i})`.
    pub fn of_fraction(ring: &RingRef, ell: u64, num: &LaurentPoly, den: &[u32]) -> ResidueSeries {
        let mut s = ResidueSeries::zero(ring, ell);
        if den.iter().all(|&k| k > 0) && !num.is_zero() {
            s.terms.push((num.clone(), den.to_vec()));
        }
        s
    }

    pub fn coeff(&self, lambda: &[i64]) -> u64 {
        let n = self.ring.modulus();
        let d = self.ring.rank();
        let ell = self.ell as i64;
        let mut lam = lambda.to_vec();
        self.ring.lattice().normalize(&mut lam);
        let mut acc: u128 = 0;
        for (r, k) in &self.terms {
            'term: for (mu, c) in r.terms() {
                if mu[d..] != lam[d..] {
                    continue;
                }
                let mut prod: u128 = c as u128;
                for i in 0..d {
                    let diff = lam[i] - mu[i];
                    if diff.rem_euclid(ell) != 0 {
                        continue 'term;
                    }
                    let f = two_sided_coeff(k[i], diff / ell, n);
                    if f == 0 {
                        continue 'term;
                    }
                    prod = prod * f as u128 % n as u128;
                }
                acc = (acc + prod) % n as u128;
            }
        }
        acc as u64
    }

    /// Scalar part.
    pub fn coeff0(&self) -> u64 {
        self.coeff(&vec![0; self.ring.slots()])
    }

    pub fn add(&self, o: &ResidueSeries) -> ResidueSeries {
        let mut s = self.clone();
        s.terms.extend(o.terms.iter().cloned());
        s
    }

    pub fn neg(&self) -> ResidueSeries {
        self.scale(&LaurentPoly::constant(&self.ring, -1))
    }

    /// Multiplication by a ring element.
    pub fn scale(&self, r: &LaurentPoly) -> ResidueSeries {
        let terms = self.terms.iter().map(|(p, k)| (p * r, k.clone())).filter(|(p, _)| !p.is_zero()).collect();
        ResidueSeries { ring: self.ring.clone(), ell: self.ell, terms }
    }

    /// The image under `x^λ ↦ x^{−λ}`.
    pub fn antipode(&self) -> ResidueSeries {
        let d = self.ring.rank();
        let terms = self
            .terms
            .iter()
            .map(|(r, k)| {
                let mut f = r.antipode();
                for i in 0..d {
                    let sign = if (k[i] + 1) % 2 == 0 { 1 } else { -1 };
                    f = f * LaurentPoly::var_pow(&self.ring, i, self.ell as i64 * k[i] as i64).scale(sign);
                }
                (f, k.clone())
            })
            .collect();
        ResidueSeries { ring: self.ring.clone(), ell: self.ell, terms }
    }

    /// The involution induced by the ring antipode on top Čech classes:
    /// `conjugate(Res(x)) = Res(x̄) = (−1)^D · antipode(Res(x))`.
    pub fn conjugate(&self) -> ResidueSeries {
        let a = self.antipode();
        if self.ring.rank() % 2 == 1 {
            a.neg()
        } else {
            a
        }
    }

    /// Half-width of a window on which two series with these terms agree
    /// only if they are equal.
    fn window(&self, o: &ResidueSeries) -> i64 {
        let d = self.ring.rank();
        let mut kmax = 1;
        let mut spread = 0i64;
        for (r, k) in self.terms.iter().chain(&o.terms) {
            kmax = kmax.max(*k.iter().max().unwrap_or(&1) as i64);
            for i in 0..d {
                if let Some((lo, hi)) = r.exponent_range(i) {
                    spread = spread.max(lo.abs()).max(hi.abs());
                }
            }
        }
        spread + (kmax + 1) * self.ell as i64
    }

    /// Coefficientwise equality, decided on a finite window.
    pub fn equals(&self, o: &ResidueSeries) -> bool {
        let w = self.window(o);
        let d = self.ring.rank();
        let lat = self.ring.lattice();
        let mut ranges: Vec<Vec<i64>> = (0..d).map(|_| (-w..=w).collect()).collect();
        for &m in &lat.torsion {
            ranges.push((0..m as i64).collect());
        }
        let mut idx = vec![0usize; ranges.len()];
        loop {
            let lam: Vec<i64> = idx.iter().enumerate().map(|(i, &j)| ranges[i][j]).collect();
            if self.coeff(&lam) != o.coeff(&lam) {
                return false;
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return true;
                }
                idx[k] += 1;
                if idx[k] < ranges[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&ResidueSeries::zero(&self.ring, self.ell))
    }
}

/// One site of a windowed operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowTerm {
    pub site: Vec<i64>,
    pub pauli: Vec<u64>,
}

/// Čech machinery for one code and one period `ℓ`.
pub struct CechComplex {
    spec: CodeSpec,
    res: Resolution,
    ell: u64,
    t_pows: Vec<Vec<LaurentPoly>>,
    lifters: Vec<OnceLock<MatrixGb>>,
    l_gb: OnceLock<SubmoduleGb>,
}

impl CechComplex {
    /// `res` must resolve `P/L` starting with `d_1 = σ`.
    pub fn new(spec: &CodeSpec, res: &Resolution, ell: u64) -> Result<CechComplex> {
        if !spec.is_uniform() {
            return Err(Error::Unsupported("Čech cochains need uniform qudit dimensions".into()));
        }
        if ell == 0 {
            return Err(Error::Structure("period must be positive".into()));
        }
        let ring = spec.ring().clone();
        let t_pows = (0..ring.rank())
            .map(|i| {
                let t = LaurentPoly::one(&ring) - LaurentPoly::var_pow(&ring, i, ell as i64);
                let mut v = vec![LaurentPoly::one(&ring)];
                for k in 1..=24 {
                    let next = &v[k - 1] * &t;
                    v.push(next);
                }
                v
            })
            .collect();
        let lifters = (0..=res.maps.len() + 1).map(|_| OnceLock::new()).collect();
        Ok(CechComplex { spec: spec.clone(), res: res.clone(), ell, t_pows, lifters, l_gb: OnceLock::new() })
    }

    pub fn ring(&self) -> &RingRef {
        self.spec.ring()
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    /// `t_i^k`.
    pub fn t_pow(&self, i: usize, k: u32) -> LaurentPoly {
        let v = &self.t_pows[i];
        if (k as usize) < v.len() {
            v[k as usize].clone()
        } else {
            v[1].pow(k)
        }
    }

    fn t_prod(&self, extra: &[u32]) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ring());
        for (i, &k) in extra.iter().enumerate() {
            if k > 0 {
                acc = acc * self.t_pow(i, k);
            }
        }
        acc
    }

    /// Rewrites a fraction over a larger denominator.
    pub fn rescale(&self, f: &Fraction, den: &[u32]) -> Vec<LaurentPoly> {
        let extra: Vec<u32> = den.iter().zip(&f.den).map(|(a, b)| a - b).collect();
        let m = self.t_prod(&extra);
        f.num.iter().map(|x| x * &m).collect()
    }

    /// Fraction with denominator `t_idx^k` for a given index set.
    pub fn fraction(&self, num: Vec<LaurentPoly>, idx: &[usize], k: u32) -> Fraction {
        let mut den = vec![0u32; self.dim()];
        for &i in idx {
            den[i] = k;
        }
        Fraction { num, den }
    }

    /// `1 / t̄_i = −x_i^ℓ / t_i`: builds `num / ∏_{i∈conj} t̄_i^{k_i} ∏_{i∉conj} t_i^{k_i}`.
    pub fn fraction_conj(&self, num: Vec<LaurentPoly>, den: Vec<u32>, conj: &[usize]) -> Fraction {
        let ring = self.ring().clone();
        let mut m = LaurentPoly::one(&ring);
        for &i in conj {
            let k = den[i] as i64;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            m = m * LaurentPoly::monomial(&ring, sign, {
                let mut e = ring.lattice().zero();
                e[i] = self.ell as i64 * k;
                e
            });
        }
        Fraction { num: num.iter().map(|x| x * &m).collect(), den }
    }

    /// `(δφ)_{i_0…i_p} = Σ_j (−1)^j φ_{…î_j…}`.
    pub fn delta(&self, c: &Cochain) -> Cochain {
        let d = self.dim();
        let ring = self.ring().clone();
        let mut out = Cochain::zero(c.degree + 1, c.width);
        if c.degree == 0 {
            // a 0-cochain is a single element stored under the empty index
            if let Some(f) = c.comps.get(&Vec::new()) {
                for i in 0..d {
                    out.insert(vec![i], f.clone());
                }
            }
            return out;
        }
        for idx in subsets(d, c.degree + 1) {
            let mut den = vec![0u32; d];
            let mut parts = Vec::new();
            for j in 0..idx.len() {
                let mut face = idx.clone();
                face.remove(j);
                if let Some(f) = c.comps.get(&face) {
                    for (a, b) in den.iter_mut().zip(&f.den) {
                        *a = (*a).max(*b);
                    }
                    parts.push((j, f));
                }
            }
            if parts.is_empty() {
                continue;
            }
            let mut num = zero_vec(&ring, c.width);
            for (j, f) in parts {
                let v = self.rescale(f, &den);
                for (a, b) in num.iter_mut().zip(v) {
                    *a = if j % 2 == 0 { &*a + &b } else { &*a - &b };
                }
            }
            out.insert(idx, Fraction { num, den });
        }
        out
    }

    /// `(φ ⌣ ψ)_{i_0…i_{a+b−2}} = φ_{i_0…i_{a−1}} ⊗ ψ_{i_{a−1}…}` with the tensor
    /// given by `pair` on numerators. `φ` has degree `a ≥ 1`, `ψ` degree `b ≥ 1`.
    pub fn cup<F>(&self, phi: &Cochain, psi: &Cochain, width: usize, pair: F) -> Cochain
    where
        F: Fn(&[LaurentPoly], &[LaurentPoly]) -> Vec<LaurentPoly>,
    {
        let (a, b) = (phi.degree, psi.degree);
        assert!(a >= 1 && b >= 1, "cup product needs positive degrees");
        let mut out = Cochain::zero(a + b - 1, width);
        for idx in subsets(self.dim(), a + b - 1) {
            let (Some(f), Some(g)) = (phi.comps.get(&idx[..a]), psi.comps.get(&idx[a - 1..])) else { continue };
            let den: Vec<u32> = f.den.iter().zip(&g.den).map(|(x, y)| x + y).collect();
            out.insert(idx, Fraction { num: pair(&f.num, &g.num), den });
        }
        out
    }

    /// The pairing `ω(φ ⌣ ψ)` into `R`, antilinear in `φ`: denominators of
    /// `φ` become `t̄`.
    pub fn cup_omega(&self, phi: &Cochain, psi: &Cochain) -> Cochain {
        let conj_phi = self.conjugate_denominators(phi);
        self.cup(&conj_phi, psi, 1, |u, w| vec![self.spec.omega(u, w)])
    }

    fn conjugate_denominators(&self, c: &Cochain) -> Cochain {
        let mut out = Cochain::zero(c.degree, c.width);
        for (idx, f) in &c.comps {
            out.insert(idx.clone(), Fraction { num: self.conj_num(&f.num, &f.den), den: f.den.clone() });
        }
        out
    }

    /// Numerator `u'` with `ω(u'/t^k, w) = ω(u, w) / (t̄^k)`: since `ω` applies
    /// the antipode to its first argument, `u' = u · ∏ (−x_i^{−ℓ})^{k_i}`.
    fn conj_num(&self, u: &[LaurentPoly], den: &[u32]) -> Vec<LaurentPoly> {
        let ring = self.ring();
        let mut e = ring.lattice().zero();
        let mut sign = 1i64;
        for (i, &k) in den.iter().enumerate() {
            e[i] = -(self.ell as i64) * k as i64;
            if k % 2 == 1 {
                sign = -sign;
            }
        }
        let m = LaurentPoly::monomial(ring, sign, e);
        u.iter().map(|x| x * &m).collect()
    }

    /// Residue of the top component of a scalar `D`-cochain.
    pub fn residue(&self, c: &Cochain) -> ResidueSeries {
        let d = self.dim();
        let top: Vec<usize> = (0..d).collect();
        match c.comps.get(&top) {
            Some(f) => ResidueSeries::of_fraction(self.ring(), self.ell, &f.num[0], &f.den),
            None => ResidueSeries::zero(self.ring(), self.ell),
        }
    }

    /// Matrix whose solutions `D x = b` lift through `K^{m−1} → K^m`.
    fn lifter(&self, m: usize) -> Result<&MatrixGb> {
        if let Some(g) = self.lifters[m].get() {
            return Ok(g);
        }
        let mat = self.k_differential(m)?;
        let gb = MatrixGb::new(&mat, None)?;
        Ok(self.lifters[m].get_or_init(|| gb))
    }

    /// `K^{m−1} → K^m`: `ε = σ^†Λ` for `m = 1`, `d_m^†` otherwise.
    pub fn k_differential(&self, m: usize) -> Result<Matrix> {
        if m == 1 {
            return Ok(self.spec.syndrome_map());
        }
        self.res
            .d(m)
            .map(|d| d.dagger())
            .ok_or_else(|| Error::LiftFailed(format!("resolution too short for K^{m}")))
    }

    /// Solves `D x = t_idx^c · num` for the least `c ≤ LIFT_CAP`.
    fn lift_fraction(&self, m: usize, idx: &[usize], f: &Fraction) -> Result<Fraction> {
        let gb = self.lifter(m)?;
        for c in 0..=LIFT_CAP {
            let mut extra = vec![0u32; self.dim()];
            for &i in idx {
                extra[i] = c;
            }
            let tm = self.t_prod(&extra);
            let b: Vec<LaurentPoly> = f.num.iter().map(|x| x * &tm).collect();
            if let Ok(x) = gb.lift(&b) {
                let den = f.den.iter().zip(&extra).map(|(a, b)| a + b).collect();
                return Ok(Fraction { num: x, den });
            }
        }
        Err(Error::LiftFailed(format!("component {idx:?} does not lift through K^{}", m - 1)))
    }

    /// Runs the zig-zag from `q0 ∈ F_{i+1}^*` (a cocycle representing a class
    /// of `Q^i`) to a `P`-valued lift of a cocycle in `Č^{i+1}(P/L)`.
    pub fn ext_to_cech(&self, i: usize, q0: &[LaurentPoly]) -> Result<Cochain> {
        let d = self.dim();
        if i + 1 > d {
            return Err(Error::Structure(format!("charge degree {i} out of range")));
        }
        let mut cur = Cochain::zero(0, q0.len());
        cur.insert(vec![], Fraction { num: q0.to_vec(), den: vec![0; d] });
        for j in 1..=i + 1 {
            let m = i + 2 - j;
            let dc = self.delta(&cur);
            let width = self.k_differential(m)?.cols();
            let mut next = Cochain::zero(j, width);
            for (idx, f) in &dc.comps {
                let x = self.lift_fraction(m, idx, f)?;
                next.insert(idx.clone(), x);
            }
            cur = next;
        }
        Ok(cur)
    }

    fn l_gb(&self) -> Result<&SubmoduleGb> {
        if let Some(g) = self.l_gb.get() {
            return Ok(g);
        }
        let gb = SubmoduleGb::new(self.ring(), 2 * self.spec.q(), &self.spec.l_generators())?;
        Ok(self.l_gb.get_or_init(|| gb))
    }

    /// True if `f` lies in `L_{t_idx}`.
    pub fn in_l(&self, idx: &[usize], f: &Fraction) -> Result<bool> {
        let gb = self.l_gb()?;
        for c in 0..=LIFT_CAP {
            let mut extra = vec![0u32; self.dim()];
            for &i in idx {
                extra[i] = c;
            }
            let tm = self.t_prod(&extra);
            let b: Vec<LaurentPoly> = f.num.iter().map(|x| x * &tm).collect();
            if gb.contains(&b) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `δ` of a `P`-valued lift, certified to be `L`-valued.
    pub fn connecting(&self, phi: &Cochain) -> Result<Cochain> {
        let dp = self.delta(phi);
        for (idx, f) in &dp.comps {
            if !self.in_l(idx, f)? {
                return Err(Error::NotCocycle(format!("component {idx:?} of the coboundary is not in L")));
            }
        }
        Ok(dp)
    }

    /// `Ω(φ, ψ) = Res(ω(φ̄ ⌣ δψ))` for `P`-valued lifts of cocycles of
    /// degrees `a + b = D`.
    pub fn braiding(&self, phi: &Cochain, psi: &Cochain) -> Result<ResidueSeries> {
        let d = self.dim();
        if phi.degree + psi.degree != d {
            return Err(Error::Structure(format!(
                "braiding needs cochain degrees summing to {d}, got {} and {}",
                phi.degree, psi.degree
            )));
        }
        let dpsi = self.connecting(psi)?;
        let c = self.cup_omega(phi, &dpsi);
        Ok(self.residue(&c))
    }

    /// Movers `p_i` with `σ^†Λ p_i = (x_i^ℓ − 1) e`.
    pub fn movers(&self, e: &[LaurentPoly]) -> Result<Vec<Vec<LaurentPoly>>> {
        let gb = self.lifter(1)?;
        let ring = self.ring().clone();
        (0..self.dim())
            .map(|i| {
                let f = LaurentPoly::var_pow(&ring, i, self.ell as i64) - LaurentPoly::one(&ring);
                let b: Vec<LaurentPoly> = e.iter().map(|x| x * &f).collect();
                gb.lift(&b).map_err(|_| Error::LiftFailed(format!("no mover in direction {}", i + 1)))
            })
            .collect()
    }

    fn string(&self, i: usize, from: i64, to: i64) -> LaurentPoly {
        let ring = self.ring();
        let mut s = LaurentPoly::zero(ring);
        for k in from..=to {
            s = s + LaurentPoly::var_pow(ring, i, k * self.ell as i64);
        }
        s
    }

    fn apply(r: &LaurentPoly, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        v.iter().map(|x| r * x).collect()
    }

    /// The three-term spin expression at cutoff `c`.
    pub fn spin_at(&self, movers: &[Vec<LaurentPoly>], c: i64) -> u64 {
        let n = self.spec.modulus();
        let s1m = Self::apply(&self.string(0, -c, -1), &movers[0]);
        let s2m = Self::apply(&self.string(1, -c, -1), &movers[1]);
        let s1p = Self::apply(&self.string(0, 0, c), &movers[0]);
        let a = self.spec.omega(&s1m, &s2m).scalar_part();
        let b = self.spec.omega(&s2m, &s1p).scalar_part();
        let cc = self.spec.omega(&s1p, &s1m).scalar_part();
        (a + 2 * n - b - cc) % n
    }

    /// Topological spin: the spin expression at `c = 2, 4, 8, …` until two
    /// consecutive doublings agree.
    pub fn topological_spin(&self, e: &[LaurentPoly]) -> Result<u64> {
        if self.dim() != 2 {
            return Err(Error::Unsupported("topological spin is defined for D = 2".into()));
        }
        let mv = self.movers(e)?;
        let mut c = 2;
        let mut prev = self.spin_at(&mv, c);
        let mut agree = 0;
        while c < 1 << 12 {
            c *= 2;
            let v = self.spin_at(&mv, c);
            if v == prev {
                agree += 1;
                if agree == 2 {
                    return Ok(v);
                }
            } else {
                agree = 0;
            }
            prev = v;
        }
        Err(Error::Structure("spin did not stabilize".into()))
    }

    /// `Σ_{γ∈Γ} ω(p_1(e), p_2(f))_γ`: the crossing-string commutator.
    pub fn mutual_braiding(&self, e: &[LaurentPoly], f: &[LaurentPoly]) -> Result<u64> {
        let pe = self.movers(e)?;
        let pf = self.movers(f)?;
        Ok(self.lattice_sum(&self.spec.omega(&pe[0], &pf[1])))
    }

    /// Sum of the coefficients of `r` at points of `Γ = ℓZ^D` (torsion part 0).
    pub fn lattice_sum(&self, r: &LaurentPoly) -> u64 {
        let n = self.spec.modulus();
        let d = self.dim();
        let ell = self.ell as i64;
        r.terms()
            .filter(|(e, _)| e[..d].iter().all(|v| v.rem_euclid(ell) == 0) && e[d..].iter().all(|&v| v == 0))
            .fold(0, |a, (_, c)| (a + c) % n)
    }

    /// The cocycle `(−p_1/t_1, …, −p_D/t_D)` of a 2D excitation.
    pub fn excitation_cocycle(&self, e: &[LaurentPoly]) -> Result<Cochain> {
        let mv = self.movers(e)?;
        let mut c = Cochain::zero(1, 2 * self.spec.q());
        for (i, p) in mv.into_iter().enumerate() {
            let neg: Vec<LaurentPoly> = p.iter().map(|x| -x).collect();
            c.insert(vec![i], self.fraction(neg, &[i], 1));
        }
        Ok(c)
    }

    /// Expands a fraction on the window `[−w, w]^D`: in a single orthant
    /// (`Some(signs)`, `true` = `+`) or the signed orthant sum (`None`).
    pub fn operator_window(&self, f: &Fraction, orthant: Option<&[bool]>, w: i64) -> Vec<WindowTerm> {
        let ring = self.ring();
        let n = ring.modulus();
        let d = self.dim();
        let ell = self.ell as i64;
        let mut sites: BTreeMap<Vec<i64>, Vec<u64>> = BTreeMap::new();
        let width = f.num.len();
        let pts = box_points(d, w);
        for (row, r) in f.num.iter().enumerate() {
            for (mu, c) in r.terms() {
                for lam in &pts {
                    let mut prod = c as u128;
                    for i in 0..d {
                        let diff = lam[i] - mu[i];
                        let k = f.den[i];
                        let coef = if k == 0 {
                            u64::from(diff == 0)
                        } else if diff.rem_euclid(ell) != 0 {
                            0
                        } else {
                            match orthant {
                                Some(s) => one_sided_coeff(k, diff / ell, s[i], n),
                                None => two_sided_coeff(k, diff / ell, n),
                            }
                        };
                        prod = prod * coef as u128 % n as u128;
                        if prod == 0 {
                            break;
                        }
                    }
                    if prod != 0 {
                        let mut site = lam.clone();
                        site.extend_from_slice(&mu[d..]);
                        let e = sites.entry(site).or_insert_with(|| vec![0; width]);
                        e[row] = ((e[row] as u128 + prod) % n as u128) as u64;
                    }
                }
            }
        }
        sites
            .into_iter()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(site, pauli)| WindowTerm { site, pauli })
            .collect()
    }
}

fn box_points(d: usize, w: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for p in &out {
            for v in -w..=w {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}
