//! Exact arithmetic in the group ring `Z_n[Λ]` with `Λ = Z^D ⊕ ⊕_j Z_{m_j}`.
//!
//! Elements are sparse maps from exponent vectors to residues in `[0, n)`.
//! The first `D` exponent slots are free directions, the remaining slots are
//! torsion directions and are always reduced into `[0, m_j)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported coefficient modulus.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A finitely generated abelian group `Z^rank ⊕ Z_{m_1} ⊕ ... ⊕ Z_{m_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeGroup {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u32>,
}

impl LatticeGroup {
    pub fn new(rank: usize, torsion: Vec<u32>) -> Result<Self> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::Structure(format!("torsion order {m} must be at least 2")));
        }
        Ok(LatticeGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        LatticeGroup { rank, torsion: Vec::new() }
    }

    /// Number of exponent slots (free plus torsion).
    pub fn slots(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn normalize(&self, exp: &mut [i64]) {
        for (j, &m) in self.torsion.iter().enumerate() {
            let e = &mut exp[self.rank + j];
            *e = e.rem_euclid(m as i64);
        }
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.slots()]
    }

    /// Number of elements of the torsion part.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().map(|&m| m as u64).product()
    }
}

/// The coefficient ring `Z_n` together with the lattice group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    modulus: u64,
    lattice: LatticeGroup,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(modulus: u64, lattice: LatticeGroup) -> Result<RingRef> {
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::Structure(format!("modulus {modulus} outside [2, 2^31]")));
        }
        Ok(Arc::new(Ring { modulus, lattice }))
    }

    pub fn laurent(modulus: u64, rank: usize) -> Result<RingRef> {
        Ring::new(modulus, LatticeGroup::free(rank))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn lattice(&self) -> &LatticeGroup {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank
    }

    pub fn slots(&self) -> usize {
        self.lattice.slots()
    }

    /// Same lattice, different modulus.
    pub fn with_modulus(&self, modulus: u64) -> Result<RingRef> {
        Ring::new(modulus, self.lattice.clone())
    }

    pub fn reduce(&self, c: i64) -> u64 {
        c.rem_euclid(self.modulus as i64) as u64
    }

    /// Display name of exponent slot `i`.
    pub fn var_name(&self, i: usize) -> String {
        let d = self.lattice.rank;
        if i < d {
            if d <= 4 {
                ["x", "y", "z", "w"][i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        } else {
            format!("u{}", i - d + 1)
        }
    }

    /// Resolve a variable name (`x`, `y`, `z`, `w`, `x1`.., `u`, `u1`..) to a slot.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        let d = self.lattice.rank;
        let s = self.lattice.torsion.len();
        let idx = match name {
            "x" => Some(0),
            "y" => Some(1),
            "z" => Some(2),
            "w" => Some(3),
            "u" if s == 1 => return Some(d),
            _ => None,
        };
        if let Some(i) = idx {
            return (i < d).then_some(i);
        }
        let (head, tail) = name.split_at(1);
        let k: usize = tail.parse().ok()?;
        match head {
            "x" if (1..=d).contains(&k) => Some(k - 1),
            "u" if (1..=s).contains(&k) => Some(d + k - 1),
            _ => None,
        }
    }
}

/// Graded order on exponent vectors used for rendering: total absolute
/// degree first, then lexicographic.
pub fn graded_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().map(|e| e.abs()).sum();
    let db: i64 = b.iter().map(|e| e.abs()).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// An element of `Z_n[Λ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: RingRef,
    terms: BTreeMap<Vec<i64>, u64>,
}

impl LaurentPoly {
    pub fn zero(ring: &RingRef) -> Self {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        Self::monomial(ring, c, ring.lattice.zero())
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(ring: &RingRef, c: i64, mut exp: Vec<i64>) -> Self {
        assert_eq!(exp.len(), ring.slots(), "exponent length mismatch");
        ring.lattice.normalize(&mut exp);
        let mut terms = BTreeMap::new();
        let c = ring.reduce(c);
        if c != 0 {
            terms.insert(exp, c);
        }
        LaurentPoly { ring: ring.clone(), terms }
    }

    /// The generator `x_i` (or `u_j` for torsion slots).
    pub fn var(ring: &RingRef, i: usize) -> Self {
        let mut e = ring.lattice.zero();
        e[i] = 1;
        Self::monomial(ring, 1, e)
    }

    /// `x_i^k` for a free or torsion slot.
    pub fn var_pow(ring: &RingRef, i: usize, k: i64) -> Self {
        let mut e = ring.lattice.zero();
        e[i] = k;
        Self::monomial(ring, 1, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, i64)>>(ring: &RingRef, terms: I) -> Self {
        let mut p = Self::zero(ring);
        for (mut e, c) in terms {
            ring.lattice.normalize(&mut e);
            p.add_term(e, ring.reduce(c));
        }
        p
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: &[i64]) -> u64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn scalar_part(&self) -> u64 {
        self.coeff(&self.ring.lattice.zero())
    }

    /// Adds `c·x^exp` in place; `exp` must already be normalized.
    pub(crate) fn add_term(&mut self, exp: Vec<i64>, c: u64) {
        if c == 0 {
            return;
        }
        let n = self.ring.modulus;
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c % n);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % n;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring && *self.ring != *other.ring {
            return Err(Error::Structure(format!(
                "ring mismatch: Z_{}[{:?}] vs Z_{}[{:?}]",
                self.ring.modulus, self.ring.lattice, other.ring.modulus, other.ring.lattice
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.ring.modulus as u128;
        let lat = &self.ring.lattice;
        let mut acc: BTreeMap<Vec<i64>, u128> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let mut e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                lat.normalize(&mut e);
                let slot = acc.entry(e).or_insert(0);
                *slot = (*slot + ca as u128 * cb as u128) % n;
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (e, c as u64)).collect();
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    /// Multiplies by an integer scalar.
    pub fn scale(&self, c: i64) -> Self {
        let c = self.ring.reduce(c) as u128;
        let n = self.ring.modulus as u128;
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, &a)| {
                let v = (a as u128 * c % n) as u64;
                (v != 0).then(|| (e.clone(), v))
            })
            .collect();
        LaurentPoly { ring: self.ring.clone(), terms }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let lat = &self.ring.lattice;
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e2: Vec<i64> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                lat.normalize(&mut e2);
                (e2, c)
            })
            .collect();
        LaurentPoly { ring: self.ring.clone(), terms }
    }

    /// `r ↦ r̄`: negates every exponent vector.
    pub fn antipode(&self) -> Self {
        let lat = &self.ring.lattice;
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e2: Vec<i64> = e.iter().map(|a| -a).collect();
                lat.normalize(&mut e2);
                (e2, c)
            })
            .collect();
        LaurentPoly { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Maps the polynomial into another ring through a map on exponent
    /// vectors (used for stacking and coarse-graining).
    pub fn map_exponents<F: Fn(&[i64]) -> Vec<i64>>(&self, target: &RingRef, f: F) -> Self {
        let mut out = Self::zero(target);
        for (e, &c) in &self.terms {
            let mut e2 = f(e);
            target.lattice.normalize(&mut e2);
            out.add_term(e2, target.reduce(c as i64));
        }
        out
    }

    /// Reduces coefficients into a ring with a modulus dividing this one.
    pub fn reduce_modulus(&self, target: &RingRef) -> Self {
        assert_eq!(target.lattice, self.ring.lattice);
        self.map_exponents(target, |e| e.to_vec())
    }

    /// Evaluates every free variable at 1 and every torsion variable at 1.
    pub fn augmentation(&self) -> u64 {
        let n = self.ring.modulus;
        self.terms.values().fold(0, |a, &c| (a + c) % n)
    }

    /// Smallest and largest exponent in free direction `i`.
    pub fn exponent_range(&self, i: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    /// True if the polynomial is `c·x^λ` with `c` a unit of `Z_n`.
    pub fn as_unit_monomial(&self) -> Option<(&Vec<i64>, u64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, &c) = self.terms.iter().next().unwrap();
        (gcd(c, self.ring.modulus) == 1).then_some((e, c))
    }

    /// Inverse of a unit monomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_unit_monomial()?;
        let inv = mod_inverse(c, self.ring.modulus)?;
        let neg: Vec<i64> = e.iter().map(|a| -a).collect();
        Some(Self::monomial(&self.ring, inv as i64, neg))
    }

    /// Canonical text: terms in graded order, coefficients in `[0, n)`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<i64>, u64)> = self.terms().collect();
        terms.sort_by(|a, b| graded_cmp(a.0, b.0));
        let mut out = String::new();
        for (k, (e, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| {
                    let name = self.ring.var_name(i);
                    if a == 1 {
                        name
                    } else {
                        format!("{name}^{a}")
                    }
                })
                .collect();
            match (c, mono.is_empty()) {
                (_, true) => out.push_str(&c.to_string()),
                (1, false) => out.push_str(&mono.join("*")),
                (_, false) => out.push_str(&format!("{c}*{}", mono.join("*"))),
            }
        }
        out
    }

    /// Parses the text form, e.g. `"1 - x^-1*y + 2*z^3"`.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Self> {
        crate::parse::parse_poly(ring, text)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("ring mismatch in polynomial arithmetic")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `ax + by = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, t))` if `n = p^t` for a prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, t)] => Some((*p, *t)),
        _ => None,
    }
}

/// A dense matrix of ring elements, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(ring: &RingRef, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![LaurentPoly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(ring));
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { ring: ring.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix from column vectors of common length `rows`.
    pub fn from_cols(ring: &RingRef, rows: usize, cols: Vec<Vec<LaurentPoly>>) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<LaurentPoly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// Transposition composed with antipode.
    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).antipode());
            }
        }
        m
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Structure(format!(
                "matrix shapes {}x{} and {}x{} do not compose",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).try_add(&a.try_mul(b)?)?;
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = LaurentPoly::zero(&self.ring);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat row mismatch");
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_cols(&self.ring, self.rows, cols)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Self::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_cols(&self.ring, self.rows, idx.iter().map(|&j| self.col(j)).collect())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(&self.ring, idx.iter().map(|&i| self.row(i)).collect())
    }

    pub fn map<F: Fn(&LaurentPoly) -> LaurentPoly>(&self, ring: &RingRef, f: F) -> Matrix {
        Matrix { ring: ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.render()).collect()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in self.render() {
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Componentwise `a + b`.
pub fn vec_add(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(r: &LaurentPoly, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    v.iter().map(|x| r * x).collect()
}

pub fn vec_is_zero(v: &[LaurentPoly]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn zero_vec(ring: &RingRef, n: usize) -> Vec<LaurentPoly> {
    vec![LaurentPoly::zero(ring); n]
}

pub fn unit_vec(ring: &RingRef, n: usize, k: usize) -> Vec<LaurentPoly> {
    let mut v = zero_vec(ring, n);
    v[k] = LaurentPoly::one(ring);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u64, d: usize) -> RingRef {
        Ring::laurent(n, d).unwrap()
    }

    fn p(r: &RingRef, s: &str) -> LaurentPoly {
        LaurentPoly::parse(r, s).unwrap()
    }

    #[test]
    fn product_over_z2_kills_constants() {
        let r = ring(2, 1);
        assert_eq!(p(&r, "1 - x^-1") * p(&r, "1 - x"), p(&r, "x^-1 + x"));
    }

    #[test]
    fn zero_absorbs() {
        let r = ring(5, 2);
        assert!((p(&r, "1 + x + y") * LaurentPoly::zero(&r)).is_zero());
    }

    #[test]
    fn sigma_entry_product_over_z4() {
        let r = ring(4, 2);
        // hand expansion: (1 - y^-1)(y - 1) = y - 1 - 1 + y^-1
        let brute = LaurentPoly::from_terms(&r, [(vec![0, 1], 1), (vec![0, 0], -2), (vec![0, -1], 1)]);
        let got = p(&r, "1 - y^-1") * p(&r, "y - 1");
        assert_eq!(got, brute);
        assert_eq!(got, p(&r, "-y - y^-1 + 2") * LaurentPoly::constant(&r, -1));
    }

    #[test]
    fn mismatched_rings_error() {
        let a = LaurentPoly::one(&ring(4, 1));
        let b = LaurentPoly::one(&ring(2, 1));
        assert!(matches!(a.try_mul(&b), Err(Error::Structure(_))));
        let c = LaurentPoly::one(&ring(4, 2));
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn antipode_examples() {
        let r = ring(7, 2);
        assert_eq!(p(&r, "x").antipode(), p(&r, "x^-1"));
        assert_eq!(p(&r, "1 + x + y^2").antipode(), p(&r, "1 + x^-1 + y^-2"));
    }

    #[test]
    fn scalar_part_examples() {
        let r = ring(4, 1);
        assert_eq!(p(&r, "3 + 2*x").scalar_part(), 3);
        assert_eq!(p(&r, "x + x^-1").scalar_part(), 0);
        for n in [3u64, 5, 9] {
            let r = ring(n, 1);
            assert_eq!((p(&r, "1 - x^-1") * p(&r, "1 - x")).scalar_part(), 2);
        }
    }

    #[test]
    fn torsion_slots_wrap() {
        let r = Ring::new(3, LatticeGroup::new(1, vec![4]).unwrap()).unwrap();
        let u = LaurentPoly::var(&r, 1);
        assert_eq!(u.pow(4), LaurentPoly::one(&r));
        assert_eq!(u.antipode(), u.pow(3));
    }

    #[test]
    fn render_is_canonical() {
        let r = ring(4, 2);
        assert_eq!(p(&r, "x - 1 + y^-1").render(), "3 + y^-1 + x");
        assert_eq!(p(&r, "2*x*y - 4").render(), "2*x*y");
    }
}
