//! Charge modules `Q^i = Ext^{i+1}(P/L, R)`, mobility and momentum sectors.

use std::collections::HashMap;

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::fpmod::{ext, free_resolution, ideal_contains, FiniteStructure, FpModule, Ideal, Resolution};
use crate::gb::{Ambient, AmbientRef, MVec, StrongGb, Term};
use crate::linalg::{nullspace, span_order, ZnMatrix};
use crate::ring::{lcm, prime_power, LaurentPoly, RingRef};

/// `Q^i` together with the data derived from it.
#[derive(Clone, Debug)]
pub struct ChargeModule {
    pub degree: usize,
    /// Presentation with generator representatives in `F_{i+1}^*`.
    pub module: FpModule,
    pub annihilator: Ideal,
    pub dim_zero: bool,
    pub structure: Option<FiniteStructure>,
}

impl ChargeModule {
    pub fn is_zero(&self) -> bool {
        self.module.gens() == 0 || self.structure.as_ref().is_some_and(|s| s.factors.is_empty())
    }

    /// Invariant factors, when finite.
    pub fn factors(&self) -> Option<&[u64]> {
        self.structure.as_ref().map(|s| s.factors.as_slice())
    }
}

/// All charge modules of a code, from one resolution of `P/L`.
#[derive(Clone, Debug)]
pub struct ChargeAnalysis {
    pub resolution: Resolution,
    pub modules: Vec<ChargeModule>,
}

impl ChargeAnalysis {
    /// Resolves `P/L` to length `D + 3` and computes `Q^0 … Q^D`.
    pub fn compute(spec: &CodeSpec) -> Result<ChargeAnalysis> {
        let d = spec.dim();
        ChargeAnalysis::with_length(spec, d + 3, d)
    }

    pub fn with_length(spec: &CodeSpec, length: usize, max_degree: usize) -> Result<ChargeAnalysis> {
        if prime_power(spec.modulus()).is_none() {
            return Err(Error::CompositeModulus(spec.modulus()));
        }
        let resolution = free_resolution(&spec.quotient(), length)?;
        let mut modules = Vec::new();
        for i in 0..=max_degree {
            modules.push(charge_module(&resolution, i)?);
        }
        Ok(ChargeAnalysis { resolution, modules })
    }

    pub fn degree(&self, i: usize) -> Option<&ChargeModule> {
        self.modules.get(i)
    }
}

/// `Q^i` from a resolution of `P/L`.
pub fn charge_module(res: &Resolution, i: usize) -> Result<ChargeModule> {
    let module = ext(res, i + 1)?;
    let ring = res.ring().clone();
    if module.gens() == 0 {
        return Ok(ChargeModule {
            degree: i,
            structure: Some(module.finite_structure()?),
            module,
            annihilator: vec![LaurentPoly::one(&ring)],
            dim_zero: true,
        });
    }
    let annihilator = module.annihilator()?;
    let dim_zero = crate::fpmod::is_dim_zero(&ring, &annihilator)?;
    let structure = if dim_zero { Some(module.finite_structure()?) } else { None };
    Ok(ChargeModule { degree: i, module, annihilator, dim_zero, structure })
}

/// Result of the mobility analysis.
#[derive(Clone, Debug)]
pub struct Mobility {
    /// `(degree, dim_zero)` for every nonzero `Q^i`.
    pub flags: Vec<(usize, bool)>,
    /// Common period when every flag holds.
    pub ell: Option<u64>,
}

impl Mobility {
    pub fn mobile(&self) -> bool {
        self.flags.iter().all(|f| f.1)
    }

    pub fn offending(&self) -> Vec<usize> {
        self.flags.iter().filter(|f| !f.1).map(|f| f.0).collect()
    }

    /// The period, or [`Error::NotMobile`].
    pub fn require(&self) -> Result<u64> {
        self.ell.ok_or_else(|| Error::NotMobile(self.offending()))
    }
}

/// Mobility flags for `Q^0 … Q^{D−1}` and the period `ℓ`: the lcm over free
/// directions of the multiplicative order of translation, certified by
/// `x_k^ℓ − 1 ∈ Ann(Q^i)`.
pub fn mobility(ring: &RingRef, analysis: &ChargeAnalysis) -> Result<Mobility> {
    let d = ring.rank();
    let mut flags = Vec::new();
    let mut ell = 1u64;
    for cm in analysis.modules.iter().take(d) {
        if cm.is_zero() {
            continue;
        }
        flags.push((cm.degree, cm.dim_zero));
        if let Some(fs) = &cm.structure {
            let bound = fs.order().min(1 << 20) as u64 + 1;
            for k in 0..d {
                let o = fs
                    .translation_order(k, bound.max(2))
                    .ok_or_else(|| Error::NotFinite(format!("translation order in direction {k} not found")))?;
                ell = lcm(ell, o);
            }
        }
    }
    let mobile = flags.iter().all(|f| f.1);
    if !mobile {
        return Ok(Mobility { flags, ell: None });
    }
    for cm in analysis.modules.iter().take(d) {
        if cm.is_zero() {
            continue;
        }
        for k in 0..d {
            let t = LaurentPoly::var_pow(ring, k, ell as i64) - LaurentPoly::one(ring);
            if !ideal_contains(ring, &cm.annihilator, &t)? {
                return Err(Error::Structure(format!("x{}^{ell} - 1 not in Ann(Q^{})", k + 1, cm.degree)));
            }
        }
    }
    Ok(Mobility { flags, ell: Some(ell) })
}

/// A local factor of `R/Ann(Q)`.
#[derive(Clone, Debug)]
pub struct MomentumSector {
    /// Idempotent of `R/Ann` (a representative in `R`).
    pub idempotent: LaurentPoly,
    /// Index of the sector whose idempotent is the antipode of this one.
    pub conjugate: usize,
    /// For each free direction, the eigenvalue of translation mod `p` when it
    /// lies in `F_p`.
    pub eigenvalues: Vec<Option<u64>>,
    /// Order of the sector submodule `e·Q`.
    pub order: u128,
}

/// `R/I` over `Z_{p^t}` through a strong basis, with a monomial basis when finite.
struct Quotient {
    amb: AmbientRef,
    gb: StrongGb,
}

impl Quotient {
    fn new(ring: &RingRef, ideal: &[LaurentPoly]) -> Result<Quotient> {
        let amb = Ambient::new(ring)?;
        let gens: Vec<MVec> = ideal.iter().map(|r| amb.encode(std::slice::from_ref(r), 0)).collect();
        let gb = StrongGb::compute(&amb, 1, gens);
        Ok(Quotient { amb, gb })
    }

    fn reduce(&self, r: &LaurentPoly) -> LaurentPoly {
        let v = self.gb.nf(self.amb.encode(std::slice::from_ref(r), 0));
        self.amb.decode(&v, 0, 1).pop().unwrap()
    }

    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        self.reduce(&(a * b))
    }

    fn pow(&self, a: &LaurentPoly, mut k: u64) -> LaurentPoly {
        let mut base = self.reduce(a);
        let mut acc = self.reduce(&LaurentPoly::one(a.ring()));
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Decomposes `R/Ann(Q)` into local factors: Berlekamp splitting of
/// `R/(Ann + p)` followed by Hensel lifting of the idempotents.
pub fn momentum_sectors(ring: &RingRef, cm: &ChargeModule) -> Result<Vec<MomentumSector>> {
    let fs = cm
        .structure
        .as_ref()
        .ok_or_else(|| Error::NotFinite(format!("Q^{} has positive dimension", cm.degree)))?;
    let (p, t) = prime_power(ring.modulus()).ok_or(Error::CompositeModulus(ring.modulus()))?;
    let mut red_ideal = cm.annihilator.clone();
    red_ideal.push(LaurentPoly::constant(ring, p as i64));
    let fp = Quotient::new(ring, &red_ideal)?;
    let basis: Vec<Term> = fp
        .gb
        .standard_terms(0, 100_000)
        .ok_or_else(|| Error::NotFinite("quotient ring too large".into()))?
        .into_iter()
        .map(|(t, _)| t)
        .collect();
    let dim = basis.len();
    let index: HashMap<Term, usize> = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let to_poly = |t: &Term| fp.amb.decode(&vec![(*t, 1)], 0, 1).pop().unwrap();
    let coords = |r: &LaurentPoly| -> Vec<u64> {
        let mut c = vec![0u64; dim];
        for (t, a) in fp.gb.nf(fp.amb.encode(std::slice::from_ref(r), 0)) {
            c[index[&t]] = a % p;
        }
        c
    };
    // Frobenius minus identity; its kernel is the split subalgebra
    let mut fm = ZnMatrix::zeros(p, dim, dim);
    for (j, t) in basis.iter().enumerate() {
        let c = coords(&fp.pow(&to_poly(t), p));
        for i in 0..dim {
            let v = (c[i] + p - u64::from(i == j)) % p;
            fm.set(i, j, v);
        }
    }
    let fixed: Vec<LaurentPoly> = nullspace(&fm)
        .into_iter()
        .map(|v| {
            let mut r = LaurentPoly::zero(ring);
            for (j, &c) in v.iter().enumerate() {
                if c != 0 {
                    r = r + to_poly(&basis[j]).scale(c as i64);
                }
            }
            fp.reduce(&r)
        })
        .collect();
    let one = fp.reduce(&LaurentPoly::one(ring));
    let mut idems = vec![one.clone()];
    for b in &fixed {
        let mut next = Vec::new();
        for e in &idems {
            let mut pieces = Vec::new();
            for c in 0..p {
                let shifted = b - &LaurentPoly::constant(ring, c as i64);
                let f = fp.mul(e, &(&one - &fp.pow(&shifted, p - 1)));
                if !f.is_zero() {
                    pieces.push(f);
                }
            }
            next.extend(pieces);
        }
        idems = next;
        if idems.len() >= fixed.len() {
            break;
        }
    }
    // lift to R/Ann over Z_{p^t}
    let full = Quotient::new(ring, &cm.annihilator)?;
    let steps = (t as f64).log2().ceil() as u32 + 1;
    let mut lifted = Vec::new();
    for e0 in &idems {
        let mut e = full.reduce(e0);
        for _ in 0..steps {
            let e2 = full.mul(&e, &e);
            let e3 = full.mul(&e2, &e);
            e = full.reduce(&(e2.scale(3) - e3.scale(2)));
        }
        if full.mul(&e, &e) != e {
            return Err(Error::Structure("idempotent lifting did not converge".into()));
        }
        lifted.push(e);
    }
    let d = ring.rank();
    let mut sectors = Vec::new();
    for e in &lifted {
        let bar = full.reduce(&e.antipode());
        let conjugate = lifted.iter().position(|f| full.reduce(&(&bar - f)).is_zero()).unwrap_or(usize::MAX);
        let e_p = fp.reduce(e);
        let eigenvalues = (0..d)
            .map(|k| {
                (0..p).find(|&c| {
                    let m = LaurentPoly::var(ring, k) - LaurentPoly::constant(ring, c as i64);
                    fp.mul(&fp.pow(&m, dim as u64 + 1), &e_p).is_zero()
                })
            })
            .collect();
        sectors.push(MomentumSector { idempotent: e.clone(), conjugate, eigenvalues, order: submodule_order(fs, e) });
    }
    Ok(sectors)
}

/// Order of `r·Q` as a subgroup.
pub fn submodule_order(fs: &FiniteStructure, r: &LaurentPoly) -> u128 {
    if fs.factors.is_empty() {
        return 1;
    }
    let top = *fs.factors.iter().max().unwrap();
    let rows: Vec<Vec<i64>> = fs
        .generators
        .iter()
        .map(|g| {
            let v: Vec<LaurentPoly> = g.iter().map(|c| r * c).collect();
            fs.coords(&v).iter().zip(&fs.factors).map(|(&c, &d)| (c * (top / d)) as i64).collect()
        })
        .collect();
    span_order(&ZnMatrix::from_rows(top, fs.factors.len(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Matrix, Ring};

    fn p(r: &RingRef, s: &str) -> LaurentPoly {
        LaurentPoly::parse(r, s).unwrap()
    }

    fn plaquette(n: u64) -> CodeSpec {
        let r = Ring::laurent(n, 2).unwrap();
        let m = Matrix::from_rows(&r, vec![vec![p(&r, "1 - x*y")], vec![p(&r, "x - y")]]);
        CodeSpec::new("plaquette", r, vec![n], m).unwrap()
    }

    #[test]
    fn plaquette_charges_and_period() {
        let c = plaquette(3);
        let a = ChargeAnalysis::compute(&c).unwrap();
        assert_eq!(a.modules[0].factors().unwrap(), &[3, 3]);
        assert!(a.modules[1].is_zero());
        let m = mobility(c.ring(), &a).unwrap();
        assert_eq!(m.ell, Some(2));
    }

    #[test]
    fn plaquette_sectors_split_for_odd_p() {
        let c = plaquette(3);
        let a = ChargeAnalysis::compute(&c).unwrap();
        let s = momentum_sectors(c.ring(), &a.modules[0]).unwrap();
        assert_eq!(s.len(), 2);
        for (k, sec) in s.iter().enumerate() {
            assert_eq!(sec.conjugate, k);
            assert_eq!(sec.order, 3);
        }
        let c2 = plaquette(4);
        let a2 = ChargeAnalysis::compute(&c2).unwrap();
        assert_eq!(momentum_sectors(c2.ring(), &a2.modules[0]).unwrap().len(), 1);
    }
}
