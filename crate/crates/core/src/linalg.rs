//! Dense integer matrices over `Z_n`: Howell form and nullspaces for any
//! `n`, Smith form over prime powers.

use std::collections::BTreeMap;

use crate::ring::{ext_gcd, factorize, gcd, mod_inverse};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnMatrix {
    pub n: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ZnMatrix {
    pub fn zeros(n: u64, rows: usize, cols: usize) -> Self {
        ZnMatrix { n, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: u64, k: usize) -> Self {
        let mut m = Self::zeros(n, k, k);
        for i in 0..k {
            m.set(i, i, 1 % n);
        }
        m
    }

    pub fn from_rows(n: u64, cols: usize, rows: Vec<Vec<i64>>) -> Self {
        let mut m = Self::zeros(n, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v.rem_euclid(n as i64) as u64);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.n;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.cols, o.rows);
        let n = self.n as u128;
        let mut m = ZnMatrix::zeros(self.n, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u128;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = (m.get(i, j) as u128 + a * o.get(k, j) as u128) % n;
                    m.data[i * o.cols + j] = v as u64;
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> ZnMatrix {
        let mut m = ZnMatrix::zeros(self.n, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n as u128;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(0u128, |acc, j| (acc + self.get(i, j) as u128 * v[j] as u128) % n) as u64
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// A unit `u` of `Z_n` with `a·u ≡ gcd(a, n)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let g = gcd(a, n);
    if g == n {
        return 1 % n;
    }
    let m = n / g;
    let u0 = mod_inverse((a / g) % m, m).unwrap_or(1);
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += m;
    }
    u % n
}

/// Howell normal form of the row span of `a`. Rows are returned top to
/// bottom, each pivot a divisor of `n`.
pub fn howell(a: &ZnMatrix) -> Vec<Vec<u64>> {
    let n = a.n;
    let cols = a.cols;
    let mut rows: Vec<Vec<u64>> = a.row_vecs().into_iter().filter(|r| r.iter().any(|&v| v != 0)).collect();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        for i in r + 1..rows.len() {
            let b = rows[i][c];
            if b == 0 {
                continue;
            }
            let a0 = rows[r][c];
            let (g, s, t) = ext_gcd(a0 as i128, b as i128);
            let (u, v) = (a0 as i128 / g, b as i128 / g);
            let nn = n as i128;
            let (s, t, u, v) = (s.rem_euclid(nn) as u64, t.rem_euclid(nn) as u64, u.rem_euclid(nn) as u64, v.rem_euclid(nn) as u64);
            let (ri, rr) = (rows[i].clone(), rows[r].clone());
            for k in c..cols {
                let x = rr[k];
                let y = ri[k];
                rows[r][k] = (mulmod(s, x, n) + mulmod(t, y, n)) % n;
                rows[i][k] = (mulmod(u, y, n) + n - mulmod(v, x, n)) % n;
            }
        }
        let a0 = rows[r][c];
        if a0 == 0 {
            continue;
        }
        let u = normalizing_unit(a0, n);
        for k in c..cols {
            rows[r][k] = mulmod(rows[r][k], u, n);
        }
        let g = rows[r][c];
        for i in 0..r {
            let q = rows[i][c] / g;
            if q != 0 {
                for k in c..cols {
                    rows[i][k] = (rows[i][k] + n - mulmod(q, rows[r][k], n)) % n;
                }
            }
        }
        let ann = n / g;
        if ann != n && ann != 1 {
            let extra: Vec<u64> = rows[r].iter().map(|&x| mulmod(x, ann, n)).collect();
            if extra.iter().any(|&x| x != 0) {
                rows.push(extra);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|&v| v != 0));
    rows
}

/// Number of elements of the row span.
pub fn span_order(a: &ZnMatrix) -> u128 {
    let n = a.n;
    howell(a)
        .iter()
        .map(|row| {
            let lead = row.iter().find(|&&v| v != 0).copied().unwrap();
            (n / lead) as u128
        })
        .product()
}

/// Span order as prime exponents, for spans too large for `u128`.
pub fn span_order_factored(a: &ZnMatrix) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for row in howell(a) {
        let lead = row.iter().find(|&&v| v != 0).copied().unwrap();
        for (p, e) in factorize(a.n / lead) {
            *out.entry(p).or_insert(0) += e;
        }
    }
    out
}

/// Generators of `{x : A x = 0}` as rows.
pub fn nullspace(a: &ZnMatrix) -> Vec<Vec<u64>> {
    let n = a.n;
    let (m, k) = (a.rows, a.cols);
    let mut aug = ZnMatrix::zeros(n, k, m + k);
    for j in 0..k {
        for i in 0..m {
            aug.set(j, i, a.get(i, j));
        }
        aug.set(j, m + j, 1);
    }
    howell(&aug).into_iter().filter(|row| row[..m].iter().all(|&v| v == 0)).map(|row| row[m..].to_vec()).collect()
}

/// Order of the kernel of `A` acting on `Z_n^cols`.
pub fn kernel_order(a: &ZnMatrix) -> u128 {
    let total = (a.n as u128).pow(a.cols as u32);
    total / span_order(a)
}

/// Smith form of a relation matrix over `Z_{p^t}`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Exponents `a_k` of the diagonal `p^{a_k}`, one per generator, sorted
    /// ascending; `t` for missing rows.
    pub exps: Vec<u32>,
    /// Column transform `V` with relations `Rel·V` spanning the diagonal.
    pub v: ZnMatrix,
    pub v_inv: ZnMatrix,
}

pub fn smith_prime_power(rel: &ZnMatrix, p: u64, t: u32) -> Smith {
    let q = rel.n;
    let val = |c: u64| -> u32 {
        if c == 0 {
            return t;
        }
        let mut c = c;
        let mut v = 0;
        while c.is_multiple_of(p) {
            c /= p;
            v += 1;
        }
        v
    };
    let mut a = rel.clone();
    let m = a.cols;
    let mut v = ZnMatrix::identity(q, m);
    let mut vi = ZnMatrix::identity(q, m);
    let mut exps = Vec::new();
    let mut k = 0;
    while k < m && k < a.rows {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in k..a.rows {
            for j in k..m {
                let e = val(a.get(i, j));
                if e < t && best.is_none_or(|b| e < b.2) {
                    best = Some((i, j, e));
                }
            }
        }
        let Some((bi, bj, e)) = best else { break };
        if bi != k {
            for j in 0..m {
                let (x, y) = (a.get(k, j), a.get(bi, j));
                a.set(k, j, y);
                a.set(bi, j, x);
            }
        }
        if bj != k {
            for i in 0..a.rows {
                let (x, y) = (a.get(i, k), a.get(i, bj));
                a.set(i, k, y);
                a.set(i, bj, x);
            }
            for i in 0..m {
                let (x, y) = (v.get(i, k), v.get(i, bj));
                v.set(i, k, y);
                v.set(i, bj, x);
                let (x, y) = (vi.get(k, i), vi.get(bj, i));
                vi.set(k, i, y);
                vi.set(bj, i, x);
            }
        }
        // scale column k so the pivot is exactly p^e
        let piv = a.get(k, k);
        let unit = piv / p.pow(e);
        let uinv = mod_inverse(unit % q, q).unwrap();
        for i in 0..a.rows {
            a.set(i, k, mulmod(a.get(i, k), uinv, q));
        }
        for i in 0..m {
            v.set(i, k, mulmod(v.get(i, k), uinv, q));
            vi.set(k, i, mulmod(vi.get(k, i), unit, q));
        }
        let pe = p.pow(e);
        for i in 0..a.rows {
            if i == k {
                continue;
            }
            let f = a.get(i, k) / pe;
            if f != 0 {
                for j in 0..m {
                    let x = (a.get(i, j) + q - mulmod(f, a.get(k, j), q)) % q;
                    a.set(i, j, x);
                }
            }
        }
        for j in 0..m {
            if j == k {
                continue;
            }
            let f = a.get(k, j) / pe;
            if f != 0 {
                for i in 0..a.rows {
                    let x = (a.get(i, j) + q - mulmod(f, a.get(i, k), q)) % q;
                    a.set(i, j, x);
                }
                for i in 0..m {
                    let x = (v.get(i, j) + q - mulmod(f, v.get(i, k), q)) % q;
                    v.set(i, j, x);
                }
                for i in 0..m {
                    let x = (vi.get(k, i) + mulmod(f, vi.get(j, i), q)) % q;
                    vi.set(k, i, x);
                }
            }
        }
        exps.push(e);
        k += 1;
    }
    while exps.len() < m {
        exps.push(t);
    }
    Smith { exps, v, v_inv: vi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_identity_and_two() {
        let i = ZnMatrix::identity(5, 3);
        assert_eq!(howell(&i), i.row_vecs());
        assert!(nullspace(&i).is_empty());
        let two = ZnMatrix::from_rows(4, 1, vec![vec![2]]);
        assert_eq!(howell(&two), vec![vec![2]]);
        assert_eq!(nullspace(&two), vec![vec![2]]);
    }

    #[test]
    fn howell_contains_annihilator_rows() {
        // span of (2, 1) over Z_4 contains (0, 2)
        let a = ZnMatrix::from_rows(4, 2, vec![vec![2, 1]]);
        let h = howell(&a);
        assert_eq!(h, vec![vec![2, 1], vec![0, 2]]);
        assert_eq!(span_order(&a), 4);
    }

    #[test]
    fn smith_of_diagonal_relations() {
        let rel = ZnMatrix::from_rows(8, 2, vec![vec![2, 0], vec![0, 4], vec![6, 4]]);
        let s = smith_prime_power(&rel, 2, 3);
        assert_eq!(s.exps, vec![1, 2]);
        assert_eq!(s.v.mul(&s.v_inv), ZnMatrix::identity(8, 2));
    }
}
