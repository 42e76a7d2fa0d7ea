//! Strong Gröbner bases for submodules of free modules over `Z_{p^t}[Λ]`.
//!
//! Ring elements are encoded in the ambient polynomial ring
//! `Z_{p^t}[x_1..x_D, y_1..y_D, u_1..u_s]` with `x_i y_i = 1` and
//! `u_j^{m_j} = 1`; these relations are added to every basis at every
//! position. Terms are ordered position-over-term (lower position index is
//! larger) with graded lex on monomials.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{mod_inverse, prime_power, LaurentPoly, Matrix, RingRef};

pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono {
    e: [u16; MAX_VARS],
    deg: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { e: [0; MAX_VARS], deg: 0 };

    fn from_exps(exps: &[u16]) -> Mono {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Mono { e, deg: exps.iter().map(|&a| a as u32).sum() }
    }

    fn var_pow(v: usize, k: u16) -> Mono {
        let mut m = Mono::ONE;
        m.e[v] = k;
        m.deg = k as u32;
        m
    }

    fn mul(&self, o: &Mono) -> Mono {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.e[i] + o.e[i];
        }
        Mono { e, deg: self.deg + o.deg }
    }

    fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.e[i] <= o.e[i])
    }

    /// `o / self`, assuming divisibility.
    fn quotient(&self, o: &Mono) -> Mono {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = o.e[i] - self.e[i];
        }
        Mono { e, deg: o.deg - self.deg }
    }

    fn lcm(&self, o: &Mono) -> Mono {
        let mut e = [0; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(o.e[i]);
            deg += e[i] as u32;
        }
        Mono { e, deg }
    }

    fn coprime(&self, o: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    fn cmp_deglex(&self, o: &Mono) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| self.e.cmp(&o.e))
    }

    /// The single variable this monomial is a pure power of, if any.
    fn pure_var(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..MAX_VARS {
            if self.e[i] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub pos: u32,
    pub mono: Mono,
}

impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        o.pos.cmp(&self.pos).then_with(|| self.mono.cmp_deglex(&o.mono))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse module vector, terms strictly decreasing, coefficients in `(0, q)`.
pub type MVec = Vec<(Term, u64)>;

/// The ambient presentation of `Z_{p^t}[Λ]`.
#[derive(Debug)]
pub struct Ambient {
    ring: RingRef,
    p: u64,
    t: u32,
    q: u64,
    rank: usize,
    torsion: Vec<u32>,
}

pub type AmbientRef = Arc<Ambient>;

impl Ambient {
    pub fn new(ring: &RingRef) -> Result<AmbientRef> {
        let (p, t) = prime_power(ring.modulus()).ok_or(Error::CompositeModulus(ring.modulus()))?;
        let rank = ring.rank();
        let torsion = ring.lattice().torsion.clone();
        if 2 * rank + torsion.len() > MAX_VARS {
            return Err(Error::Unsupported(format!("more than {MAX_VARS} ambient variables")));
        }
        Ok(Arc::new(Ambient { ring: ring.clone(), p, t, q: ring.modulus(), rank, torsion }))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        2 * self.rank + self.torsion.len()
    }

    fn val(&self, c: u64) -> u32 {
        let mut c = c;
        let mut v = 0;
        while c.is_multiple_of(self.p) && v < self.t {
            c /= self.p;
            v += 1;
        }
        v
    }

    fn ppow(&self, e: u32) -> u64 {
        self.p.pow(e)
    }

    fn mulc(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    fn mono_of(&self, exp: &[i64]) -> Mono {
        let mut e = [0u16; MAX_VARS];
        let d = self.rank;
        for i in 0..d {
            if exp[i] >= 0 {
                e[i] = exp[i] as u16;
            } else {
                e[d + i] = (-exp[i]) as u16;
            }
        }
        for j in 0..self.torsion.len() {
            e[2 * d + j] = exp[d + j] as u16;
        }
        Mono::from_exps(&e[..self.nvars()])
    }

    fn exp_of(&self, m: &Mono) -> Vec<i64> {
        let d = self.rank;
        let mut out = vec![0i64; d + self.torsion.len()];
        for i in 0..d {
            out[i] = m.e[i] as i64 - m.e[d + i] as i64;
        }
        for j in 0..self.torsion.len() {
            out[d + j] = m.e[2 * d + j] as i64;
        }
        out
    }

    /// Encodes a vector of ring elements starting at position `offset`.
    pub fn encode(&self, v: &[LaurentPoly], offset: usize) -> MVec {
        let mut out: MVec = Vec::new();
        for (k, p) in v.iter().enumerate() {
            for (exp, c) in p.terms() {
                out.push((Term { pos: (offset + k) as u32, mono: self.mono_of(exp) }, c));
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Decodes positions `offset..offset+len` back into ring elements.
    pub fn decode(&self, v: &MVec, offset: usize, len: usize) -> Vec<LaurentPoly> {
        let mut out = vec![LaurentPoly::zero(&self.ring); len];
        for (t, c) in v {
            let k = t.pos as usize;
            if k >= offset && k < offset + len {
                let m = LaurentPoly::monomial(&self.ring, *c as i64, self.exp_of(&t.mono));
                out[k - offset] = &out[k - offset] + &m;
            }
        }
        out
    }

    /// `a - c·m·b` with both inputs sorted.
    fn sub_mul(&self, a: &[(Term, u64)], c: u64, m: &Mono, b: &[(Term, u64)]) -> MVec {
        let q = self.q;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let bt = (j < b.len()).then(|| Term { pos: b[j].0.pos, mono: b[j].0.mono.mul(m) });
            match (i < a.len(), bt) {
                (true, Some(bt)) => match a[i].0.cmp(&bt) {
                    Ordering::Greater => {
                        out.push(a[i]);
                        i += 1;
                    }
                    Ordering::Less => {
                        let v = (q - self.mulc(c, b[j].1)) % q;
                        if v != 0 {
                            out.push((bt, v));
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        let v = (a[i].1 + q - self.mulc(c, b[j].1)) % q;
                        if v != 0 {
                            out.push((bt, v));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (true, None) => {
                    out.push(a[i]);
                    i += 1;
                }
                (false, Some(bt)) => {
                    let v = (q - self.mulc(c, b[j].1)) % q;
                    if v != 0 {
                        out.push((bt, v));
                    }
                    j += 1;
                }
                (false, None) => unreachable!(),
            }
        }
        out
    }

    fn scale(&self, v: &[(Term, u64)], c: u64) -> MVec {
        v.iter()
            .filter_map(|&(t, a)| {
                let x = self.mulc(a, c);
                (x != 0).then_some((t, x))
            })
            .collect()
    }

    fn shift(&self, v: &[(Term, u64)], c: u64, m: &Mono) -> MVec {
        v.iter()
            .filter_map(|&(t, a)| {
                let x = self.mulc(a, c);
                (x != 0).then_some((Term { pos: t.pos, mono: t.mono.mul(m) }, x))
            })
            .collect()
    }

    /// Scales so that the leading coefficient is a power of `p`.
    fn normalize(&self, v: MVec) -> (MVec, u32) {
        let lc = v[0].1;
        let e = self.val(lc);
        let unit = lc / self.ppow(e);
        let inv = mod_inverse(unit % self.q, self.q).expect("unit part is invertible");
        let v = if inv == 1 { v } else { self.scale(&v, inv) };
        (v, e)
    }

    /// Ring relations `x_i y_i - 1` and `u_j^{m_j} - 1` at position `pos`.
    fn relations_at(&self, pos: u32) -> Vec<MVec> {
        let d = self.rank;
        let one = (Term { pos, mono: Mono::ONE }, self.q - 1);
        let mut out = Vec::new();
        for i in 0..d {
            let m = Mono::var_pow(i, 1).mul(&Mono::var_pow(d + i, 1));
            out.push(vec![(Term { pos, mono: m }, 1), one]);
        }
        for (j, &mj) in self.torsion.iter().enumerate() {
            let m = Mono::var_pow(2 * d + j, mj as u16);
            out.push(vec![(Term { pos, mono: m }, 1), one]);
        }
        out
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: MVec,
    lt: Term,
    e: u32,
    single: bool,
}

impl Elem {
    fn new(v: MVec, e: u32) -> Elem {
        let lt = v[0].0;
        let single = v.iter().all(|(t, _)| t.pos == lt.pos);
        Elem { v, lt, e, single }
    }
}

#[derive(PartialEq, Eq)]
struct Job {
    key: Term,
    kind: JobKind,
    seq: usize,
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum JobKind {
    Pair(usize, usize),
    Ann(usize),
}

impl Ord for Job {
    fn cmp(&self, o: &Self) -> Ordering {
        // min-heap on (degree, term, insertion order)
        o.key
            .mono
            .deg
            .cmp(&self.key.mono.deg)
            .then_with(|| o.key.cmp(&self.key))
            .then_with(|| o.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Job {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A strong Gröbner basis of a submodule of `A^npos` (including the ring
/// relations at every position).
#[derive(Clone, Debug)]
pub struct StrongGb {
    amb: AmbientRef,
    npos: usize,
    elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
}

impl StrongGb {
    pub fn compute(amb: &AmbientRef, npos: usize, gens: Vec<MVec>) -> StrongGb {
        StrongGb::compute_truncated(amb, npos, gens, npos)
    }

    /// Like [`StrongGb::compute`], but completes only the part with leading
    /// position below `complete_below`. Elements leading at later positions
    /// still generate that part of the module but need not form a basis of it.
    pub fn compute_truncated(amb: &AmbientRef, npos: usize, gens: Vec<MVec>, complete_below: usize) -> StrongGb {
        let mut b = Builder {
            complete_below,
            amb: amb.clone(),
            elems: Vec::new(),
            alive: Vec::new(),
            by_pos: vec![Vec::new(); npos],
            heap: BinaryHeap::new(),
            pending: HashSet::new(),
            seq: 0,
        };
        for pos in 0..npos {
            for r in amb.relations_at(pos as u32) {
                b.insert(r);
            }
        }
        for g in gens {
            let h = b.nf(g);
            if !h.is_empty() {
                b.insert(h);
            }
        }
        b.run();
        b.finish(npos)
    }

    pub fn ambient(&self) -> &AmbientRef {
        &self.amb
    }

    pub fn npos(&self) -> usize {
        self.npos
    }

    /// Canonical normal form: the unique remainder whose every term `c·T`
    /// has `0 ≤ c < p^e` where `p^e` is the smallest leading coefficient
    /// among basis elements whose leading monomial divides `T`.
    pub fn nf(&self, v: MVec) -> MVec {
        nf_with(&self.amb, &self.elems, &self.by_pos, None, v)
    }

    pub fn contains(&self, v: MVec) -> bool {
        self.nf(v).is_empty()
    }

    /// Elements with leading position at least `pos`.
    pub fn elements_from(&self, pos: usize) -> impl Iterator<Item = &MVec> {
        self.elems.iter().filter(move |e| e.lt.pos as usize >= pos).map(|e| &e.v)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Smallest leading-coefficient exponent among basis elements whose
    /// leading term divides `t`, or `None` if no leading term does.
    pub fn min_exponent(&self, t: &Term) -> Option<u32> {
        self.by_pos
            .get(t.pos as usize)?
            .iter()
            .filter(|&&i| self.elems[i].lt.mono.divides(&t.mono))
            .map(|&i| self.elems[i].e)
            .min()
    }

    /// True if the submodule at position `pos` has finite colength: every
    /// ambient variable has a pure power as a unit-coefficient leading term.
    pub fn staircase_finite(&self, pos: usize) -> bool {
        let n = self.amb.nvars();
        let mut seen = vec![false; n];
        for &i in &self.by_pos[pos] {
            let el = &self.elems[i];
            if el.e == 0 {
                if el.lt.mono.deg == 0 {
                    return true;
                }
                if let Some(v) = el.lt.mono.pure_var() {
                    seen[v] = true;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Standard terms at `pos` with nonzero range, in increasing order, or
    /// `None` if there are more than `cap` of them.
    pub fn standard_terms(&self, pos: usize, cap: usize) -> Option<Vec<(Term, u32)>> {
        let t = self.amb.t;
        let n = self.amb.nvars();
        let mut out = Vec::new();
        let mut seen: HashSet<Mono> = HashSet::new();
        let mut stack = vec![Mono::ONE];
        seen.insert(Mono::ONE);
        while let Some(m) = stack.pop() {
            let term = Term { pos: pos as u32, mono: m };
            let e = self.min_exponent(&term).unwrap_or(t);
            if e == 0 {
                continue;
            }
            out.push((term, e));
            if out.len() > cap {
                return None;
            }
            for v in 0..n {
                let m2 = m.mul(&Mono::var_pow(v, 1));
                if seen.insert(m2) {
                    stack.push(m2);
                }
            }
        }
        out.sort_by_key(|a| a.0);
        Some(out)
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.amb.t
    }

    /// Multiplies a vector by a ring element.
    pub fn mul_poly(&self, r: &LaurentPoly, v: &MVec) -> MVec {
        let rr = self.amb.encode(std::slice::from_ref(r), 0);
        let mut acc: MVec = Vec::new();
        for (t, c) in rr {
            let s = self.amb.shift(v, c, &t.mono);
            acc = add_sorted(&self.amb, &acc, &s);
        }
        self.nf(acc)
    }

    pub fn scale(&self, v: &MVec, c: u64) -> MVec {
        self.amb.scale(v, c)
    }

    pub fn sub(&self, a: &MVec, b: &MVec) -> MVec {
        self.amb.sub_mul(a, 1, &Mono::ONE, b)
    }
}

pub fn add_sorted(amb: &Ambient, a: &[(Term, u64)], b: &[(Term, u64)]) -> MVec {
    amb.sub_mul(a, amb.q - 1, &Mono::ONE, b)
}

/// Reduces `v` fully. When `track` is set, each step `v -= c·m·g_i` is
/// recorded so callers can recover cofactors.
fn nf_with(
    amb: &Ambient,
    elems: &[Elem],
    by_pos: &[Vec<usize>],
    alive: Option<&[bool]>,
    v: MVec,
) -> MVec {
    let mut f = v;
    // terms of `f` before `k` have already been moved to `out`
    let mut k = 0;
    let mut out: MVec = Vec::new();
    loop {
        let Some(&(lt, c)) = f.get(k) else { break };
        let mut best: Option<usize> = None;
        if let Some(list) = by_pos.get(lt.pos as usize) {
            for &i in list {
                if alive.is_some_and(|a| !a[i]) {
                    continue;
                }
                let el = &elems[i];
                if el.lt.mono.divides(&lt.mono) {
                    match best {
                        Some(b) if elems[b].e < el.e => {}
                        Some(b) if elems[b].e == el.e && elems[b].v.len() <= el.v.len() => {}
                        _ => best = Some(i),
                    }
                    if el.e == 0 && best == Some(i) && el.v.len() <= 2 {
                        break;
                    }
                }
            }
        }
        match best {
            None => {
                out.push((lt, c));
                k += 1;
            }
            Some(i) => {
                let el = &elems[i];
                let pe = amb.ppow(el.e);
                let qc = c / pe;
                let r = c % pe;
                if qc != 0 {
                    let m = el.lt.mono.quotient(&lt.mono);
                    f = amb.sub_mul(&f[k + 1..], qc, &m, &el.v[1..]);
                    k = 0;
                } else {
                    k += 1;
                }
                if r != 0 {
                    out.push((lt, r));
                }
            }
        }
    }
    out
}

struct Builder {
    amb: AmbientRef,
    complete_below: usize,
    elems: Vec<Elem>,
    alive: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    heap: BinaryHeap<Job>,
    pending: HashSet<(usize, usize)>,
    seq: usize,
}

impl Builder {
    fn nf(&self, v: MVec) -> MVec {
        nf_with(&self.amb, &self.elems, &self.by_pos, Some(&self.alive), v)
    }

    fn push(&mut self, key: Term, kind: JobKind) {
        self.seq += 1;
        if let JobKind::Pair(i, j) = kind {
            self.pending.insert((i, j));
        }
        self.heap.push(Job { key, kind, seq: self.seq });
    }

    /// Adds `v` (already reduced) to the basis. Older elements whose leading
    /// term becomes reducible are retired and their remainders reinserted.
    fn insert(&mut self, v: MVec) {
        let mut work = vec![(v, false)];
        while let Some((v, reduce)) = work.pop() {
            let v = if reduce { self.nf(v) } else { v };
            if v.is_empty() {
                continue;
            }
            let (v, e) = self.amb.normalize(v);
            let el = Elem::new(v, e);
            let pos = el.lt.pos as usize;
            let retired: Vec<usize> = self.by_pos[pos]
                .iter()
                .copied()
                .filter(|&i| self.alive[i] && self.elems[i].e >= e && el.lt.mono.divides(&self.elems[i].lt.mono))
                .collect();
            for &i in &retired {
                self.alive[i] = false;
            }
            let idx = self.elems.len();
            let complete = pos < self.complete_below;
            if e > 0 && complete {
                self.push(el.lt, JobKind::Ann(idx));
            }
            let others: Vec<usize> = if complete {
                self.by_pos[pos].iter().copied().filter(|&i| self.alive[i]).collect()
            } else {
                Vec::new()
            };
            for i in others {
                let o = &self.elems[i];
                let m = o.lt.mono.lcm(&el.lt.mono);
                if o.single && el.single && o.e == 0 && e == 0 && o.lt.mono.coprime(&el.lt.mono) {
                    continue;
                }
                self.push(Term { pos: pos as u32, mono: m }, JobKind::Pair(i, idx));
            }
            self.by_pos[pos].push(idx);
            self.elems.push(el);
            self.alive.push(true);
            for i in retired {
                work.push((self.elems[i].v.clone(), true));
            }
        }
    }

    fn chain_skip(&self, i: usize, j: usize, lcm: &Mono) -> bool {
        let emax = self.elems[i].e.max(self.elems[j].e);
        let pos = self.elems[i].lt.pos as usize;
        self.by_pos[pos].iter().any(|&k| {
            k != i
                && k != j
                && self.alive[k]
                && self.elems[k].e <= emax
                && self.elems[k].lt.mono.divides(lcm)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }

    fn run(&mut self) {
        while let Some(job) = self.heap.pop() {
            let s = match job.kind {
                JobKind::Ann(i) if !self.alive[i] => continue,
                JobKind::Pair(i, j) if !self.alive[i] || !self.alive[j] => {
                    self.pending.remove(&(i, j));
                    continue;
                }
                JobKind::Ann(i) => {
                    let el = &self.elems[i];
                    self.amb.scale(&el.v, self.amb.ppow(self.amb.t - el.e))
                }
                JobKind::Pair(i, j) => {
                    self.pending.remove(&(i, j));
                    if self.chain_skip(i, j, &job.key.mono) {
                        continue;
                    }
                    let (a, b) = (&self.elems[i], &self.elems[j]);
                    // order so that a has the smaller exponent
                    let (a, b) = if a.e <= b.e { (a, b) } else { (b, a) };
                    let ma = a.lt.mono.quotient(&job.key.mono);
                    let mb = b.lt.mono.quotient(&job.key.mono);
                    let sa = self.amb.shift(&a.v, self.amb.ppow(b.e - a.e), &ma);
                    self.amb.sub_mul(&sa, 1, &mb, &b.v)
                }
            };
            let h = self.nf(s);
            if !h.is_empty() {
                self.insert(h);
            }
        }
    }

    fn finish(mut self, npos: usize) -> StrongGb {
        // drop elements whose leading term is divisible by another's
        let n = self.elems.len();
        for i in 0..n {
            if !self.alive[i] {
                continue;
            }
            let pos = self.elems[i].lt.pos as usize;
            let redundant = self.by_pos[pos].iter().any(|&j| {
                j != i
                    && self.alive[j]
                    && self.elems[j].e <= self.elems[i].e
                    && self.elems[j].lt.mono.divides(&self.elems[i].lt.mono)
                    && (self.elems[j].lt.mono != self.elems[i].lt.mono || self.elems[j].e != self.elems[i].e || j < i)
            });
            if redundant {
                self.alive[i] = false;
            }
        }
        let mut elems = Vec::new();
        let mut by_pos = vec![Vec::new(); npos];
        for (i, el) in self.elems.into_iter().enumerate() {
            if self.alive[i] {
                by_pos[el.lt.pos as usize].push(elems.len());
                elems.push(el);
            }
        }
        StrongGb { amb: self.amb, npos, elems, by_pos }
    }
}

/// Gröbner data for a map `A: R^c → R^g / im(B)`, encoded as the module
/// generated by `(A e_j ; e_j)`, `(B e_k ; 0)` inside `R^{g+c}`.
#[derive(Clone, Debug)]
pub struct MatrixGb {
    gb: StrongGb,
    rows: usize,
    cols: usize,
}

impl MatrixGb {
    pub fn new(a: &Matrix, extra: Option<&Matrix>) -> Result<MatrixGb> {
        let amb = Ambient::new(a.ring())?;
        let (g, c) = (a.rows(), a.cols());
        let mut gens = Vec::new();
        for j in 0..c {
            let mut col = a.col(j);
            col.extend((0..c).map(|k| {
                if k == j {
                    LaurentPoly::one(a.ring())
                } else {
                    LaurentPoly::zero(a.ring())
                }
            }));
            gens.push(amb.encode(&col, 0));
        }
        if let Some(b) = extra {
            assert_eq!(b.rows(), g, "extra relation rows mismatch");
            for k in 0..b.cols() {
                gens.push(amb.encode(&b.col(k), 0));
            }
        }
        // the kernel part only needs generators, not a basis
        let gb = StrongGb::compute_truncated(&amb, g + c, gens, g);
        Ok(MatrixGb { gb, rows: g, cols: c })
    }

    /// Generators of `{x : A x ∈ im B}` (not minimized).
    pub fn kernel_raw(&self) -> Vec<Vec<LaurentPoly>> {
        let amb = self.gb.ambient();
        let mut out: Vec<Vec<LaurentPoly>> = Vec::new();
        for v in self.gb.elements_from(self.rows) {
            let x = amb.decode(v, self.rows, self.cols);
            if !x.iter().all(|p| p.is_zero()) && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Solves `A x ≡ b (mod im B)`.
    pub fn lift(&self, b: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        assert_eq!(b.len(), self.rows, "lift target length mismatch");
        let amb = self.gb.ambient();
        let r = self.gb.nf(amb.encode(b, 0));
        if r.iter().any(|(t, _)| (t.pos as usize) < self.rows) {
            return Err(Error::NoSolution);
        }
        Ok(amb.decode(&r, self.rows, self.cols).into_iter().map(|p| -p).collect())
    }

    pub fn contains(&self, b: &[LaurentPoly]) -> bool {
        let amb = self.gb.ambient();
        let r = self.gb.nf(amb.encode(b, 0));
        r.iter().all(|(t, _)| t.pos as usize >= self.rows)
    }
}

/// Gröbner basis of the submodule of `R^rank` generated by the given vectors.
#[derive(Clone, Debug)]
pub struct SubmoduleGb {
    gb: StrongGb,
    rank: usize,
}

impl SubmoduleGb {
    pub fn new(ring: &RingRef, rank: usize, gens: &[Vec<LaurentPoly>]) -> Result<SubmoduleGb> {
        let amb = Ambient::new(ring)?;
        let enc = gens.iter().map(|g| amb.encode(g, 0)).collect();
        Ok(SubmoduleGb { gb: StrongGb::compute(&amb, rank, enc), rank })
    }

    pub fn from_matrix(a: &Matrix) -> Result<SubmoduleGb> {
        SubmoduleGb::new(a.ring(), a.rows(), &a.columns())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gb(&self) -> &StrongGb {
        &self.gb
    }

    pub fn normal_form(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let amb = self.gb.ambient();
        amb.decode(&self.gb.nf(amb.encode(v, 0)), 0, self.rank)
    }

    pub fn contains(&self, v: &[LaurentPoly]) -> bool {
        let amb = self.gb.ambient();
        self.gb.contains(amb.encode(v, 0))
    }

    /// Finite colength test for an ideal (rank 1).
    pub fn quotient_is_finite(&self) -> bool {
        (0..self.rank).all(|k| self.gb.staircase_finite(k))
    }
}

/// Removes generators that lie in the span of the others (plus `extra`).
/// Small generators are preferred: a greedy pass keeps a generator only if
/// it is not in the span of the smaller ones kept so far, then the kept
/// set is pruned once more.
pub fn minimize_generators(
    ring: &RingRef,
    rank: usize,
    gens: Vec<Vec<LaurentPoly>>,
    extra: &[Vec<LaurentPoly>],
) -> Result<Vec<Vec<LaurentPoly>>> {
    let mut gens: Vec<Vec<LaurentPoly>> = gens.into_iter().filter(|g| !g.iter().all(|p| p.is_zero())).collect();
    let weight = |g: &Vec<LaurentPoly>| g.iter().map(|p| p.len()).sum::<usize>();
    gens.sort_by_key(weight);
    let mut kept: Vec<Vec<LaurentPoly>> = Vec::new();
    let mut gb: Option<SubmoduleGb> = if extra.is_empty() { None } else { Some(SubmoduleGb::new(ring, rank, extra)?) };
    for g in gens {
        if gb.as_ref().is_some_and(|b| b.contains(&g)) {
            continue;
        }
        kept.push(g);
        let mut span = kept.clone();
        span.extend(extra.iter().cloned());
        gb = Some(SubmoduleGb::new(ring, rank, &span)?);
    }
    // a later generator may make an earlier one redundant
    let mut k = kept.len();
    while k > 0 && kept.len() > 1 {
        k -= 1;
        let mut others: Vec<Vec<LaurentPoly>> =
            kept.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
        others.extend(extra.iter().cloned());
        if SubmoduleGb::new(ring, rank, &others)?.contains(&kept[k]) {
            kept.remove(k);
        }
    }
    Ok(kept)
}

/// Generators of `{x ∈ R^c : A x ∈ im B}`, minimized.
pub fn kernel_mod(a: &Matrix, extra: Option<&Matrix>) -> Result<Vec<Vec<LaurentPoly>>> {
    let mg = MatrixGb::new(a, extra)?;
    minimize_generators(a.ring(), a.cols(), mg.kernel_raw(), &[])
}

/// Columns generating `ker(A)`; an empty matrix (zero columns) if injective.
pub fn syzygies(a: &Matrix) -> Result<Matrix> {
    let k = kernel_mod(a, None)?;
    Ok(Matrix::from_cols(a.ring(), a.cols(), k))
}

/// Some `x` with `A x = b`, or [`Error::NoSolution`].
pub fn lift(a: &Matrix, b: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    MatrixGb::new(a, None)?.lift(b)
}
