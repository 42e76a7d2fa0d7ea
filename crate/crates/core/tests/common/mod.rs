#![allow(dead_code)]

use stabq_core::code::CodeSpec;
use stabq_core::ring::{LatticeGroup, LaurentPoly, Matrix, Ring, RingRef};
use rand::Rng;

pub fn poly(r: &RingRef, s: &str) -> LaurentPoly {
    LaurentPoly::parse(r, s).unwrap()
}

pub fn matrix(r: &RingRef, rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(r, rows.iter().map(|row| row.iter().map(|s| poly(r, s)).collect()).collect())
}

pub fn code(name: &str, n: u64, lattice: LatticeGroup, rows: &[&[&str]]) -> CodeSpec {
    let r = Ring::new(n, lattice).unwrap();
    let m = matrix(&r, rows);
    let q = m.rows() / 2;
    CodeSpec::new(name, r, vec![n; q], m).unwrap()
}

pub fn toric2d(n: u64) -> CodeSpec {
    code("toric2d", n, LatticeGroup::free(2), &[&["1 - x^-1", "0"], &["1 - y^-1", "0"], &["0", "y - 1"], &["0", "1 - x"]])
}

pub fn toric3d(n: u64) -> CodeSpec {
    code(
        "toric3d",
        n,
        LatticeGroup::free(3),
        &[
            &["1 - x^-1", "0", "0", "0"],
            &["1 - y^-1", "0", "0", "0"],
            &["1 - z^-1", "0", "0", "0"],
            &["0", "0", "z - 1", "y - 1"],
            &["0", "z - 1", "0", "1 - x"],
            &["0", "1 - y", "1 - x", "0"],
        ],
    )
}

/// Columns: g, then f_ij for i<j in lexicographic order. Rows a_1..a_4,
/// e_1..e_4, so that `ω(e_i, a_i) = 1`.
pub fn toric4d(n: u64) -> CodeSpec {
    let r = Ring::laurent(n, 4).unwrap();
    let mut m = Matrix::zeros(&r, 8, 7);
    for i in 0..4 {
        m.set(4 + i, 0, LaurentPoly::one(&r) - LaurentPoly::var_pow(&r, i, -1));
    }
    let mut c = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            let xi = LaurentPoly::var(&r, i) - LaurentPoly::one(&r);
            let xj = LaurentPoly::var(&r, j) - LaurentPoly::one(&r);
            m.set(j, c, -xi);
            m.set(i, c, xj);
            c += 1;
        }
    }
    CodeSpec::new("toric4d", r, vec![n; 4], m).unwrap()
}

pub fn pairs4() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            v.push((i, j));
        }
    }
    v
}

/// Rows a_ij (6) then e_ij (6), so that `ω(e_ij, a_ij) = 1`; columns
/// g_1..g_4, f_{1^c}..f_{4^c}.
pub fn toric4d_2form(n: u64) -> CodeSpec {
    let r = Ring::laurent(n, 4).unwrap();
    let pr = pairs4();
    let pos = |i: usize, j: usize| pr.iter().position(|&p| p == (i, j)).unwrap();
    let mut m = Matrix::zeros(&r, 12, 8);
    let one = LaurentPoly::one(&r);
    for i in 0..4 {
        for j in 0..4 {
            let t = &one - &LaurentPoly::var_pow(&r, j, -1);
            if j < i {
                m.set(6 + pos(j, i), i, -t);
            } else if j > i {
                m.set(6 + pos(i, j), i, t);
            }
        }
    }
    for l in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&k| k != l).collect();
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let xm = |a: usize| LaurentPoly::var(&r, a) - LaurentPoly::one(&r);
        m.set(pos(j, k), 4 + l, -xm(i));
        m.set(pos(i, k), 4 + l, xm(j));
        m.set(pos(i, j), 4 + l, -xm(k));
    }
    CodeSpec::new("toric4d_2form", r, vec![n; 6], m).unwrap()
}

pub fn ising(n: u64, d: usize) -> CodeSpec {
    let r = Ring::laurent(n, d).unwrap();
    let mut m = Matrix::zeros(&r, 2, d);
    for i in 0..d {
        m.set(0, i, LaurentPoly::var(&r, i) - LaurentPoly::one(&r));
    }
    CodeSpec::new(format!("ising{d}d"), r, vec![n], m).unwrap()
}

pub fn cylinder(n: u64, l: u32) -> CodeSpec {
    let lat = LatticeGroup::new(1, vec![l]).unwrap();
    // the finite direction is the torsion slot u, the infinite one is x
    code("cylinder", n, lat, &[&["1 - u^-1", "0"], &["1 - x^-1", "0"], &["0", "x - 1"], &["0", "1 - u"]])
}

pub fn plaquette(n: u64) -> CodeSpec {
    code("plaquette", n, LatticeGroup::free(2), &[&["1 - x*y"], &["x - y"]])
}

pub fn plaquette_variant(n: u64) -> CodeSpec {
    code("plaquette_variant", n, LatticeGroup::free(2), &[&["1 + x*y"], &["x + y"]])
}

pub fn haah() -> CodeSpec {
    code(
        "haah",
        2,
        LatticeGroup::free(3),
        &[
            &["1 + x*y + y*z + x*z", "0"],
            &["1 + x + y + z", "0"],
            &["0", "1 + x^-1 + y^-1 + z^-1"],
            &["0", "1 + x^-1*y^-1 + y^-1*z^-1 + x^-1*z^-1"],
        ],
    )
}

pub fn xcube() -> CodeSpec {
    code(
        "xcube",
        2,
        LatticeGroup::free(3),
        &[
            &["1 + x^-1 + y^-1 + x^-1*y^-1", "0", "0"],
            &["1 + y^-1 + z^-1 + y^-1*z^-1", "0", "0"],
            &["1 + x^-1 + z^-1 + x^-1*z^-1", "0", "0"],
            &["0", "1 + z", "0"],
            &["0", "1 + x", "1 + x"],
            &["0", "0", "1 + y"],
        ],
    )
}

pub fn z4_condensation() -> CodeSpec {
    code(
        "z4_condensation",
        4,
        LatticeGroup::free(2),
        &[
            &["2 + 2*x^-1", "0", "0", "0"],
            &["2 + 2*y^-1", "0", "0", "0"],
            &["0", "1 - y", "2", "0"],
            &["0", "1 - x", "0", "2"],
        ],
    )
}

/// Every bundled example at a representative modulus.
pub fn all_examples() -> Vec<CodeSpec> {
    vec![
        toric2d(3),
        toric3d(3),
        toric4d(2),
        toric4d_2form(2),
        ising(3, 1),
        ising(3, 2),
        ising(3, 3),
        cylinder(3, 3),
        plaquette(3),
        plaquette(4),
        plaquette_variant(3),
        haah(),
        xcube(),
        z4_condensation(),
    ]
}

/// Mutual containment of two ideals.
pub fn same_ideal(r: &RingRef, a: &[LaurentPoly], b: &[LaurentPoly]) -> bool {
    use stabq_core::fpmod::ideal_contains;
    a.iter().all(|x| ideal_contains(r, b, x).unwrap()) && b.iter().all(|x| ideal_contains(r, a, x).unwrap())
}

pub fn trivial(n: u64) -> CodeSpec {
    code("trivial", n, LatticeGroup::free(2), &[&["0"], &["1"]])
}

fn random_poly<R: rand::Rng>(r: &RingRef, rng: &mut R, terms: usize) -> LaurentPoly {
    let n = r.modulus() as i64;
    LaurentPoly::from_terms(
        r,
        (0..terms).map(|_| (vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)], rng.gen_range(1..n))),
    )
}

/// A random `q × q` matrix `S` with `S^† = S`.
fn random_hermitian<R: rand::Rng>(r: &RingRef, rng: &mut R, q: usize) -> Matrix {
    let mut s = Matrix::zeros(r, q, q);
    for i in 0..q {
        let h = random_poly(r, rng, 1);
        s.set(i, i, &h + &h.antipode());
        for j in i + 1..q {
            let terms = rng.gen_range(0..=1);
            let h = random_poly(r, rng, terms);
            s.set(j, i, h.antipode());
            s.set(i, j, h);
        }
    }
    s
}

/// A random symplectic automorphism of `R^{2q}` with the block form `ω`.
pub fn random_symplectic<R: rand::Rng>(r: &RingRef, rng: &mut R, q: usize) -> Matrix {
    let mut m = Matrix::identity(r, 2 * q);
    match rng.gen_range(0..3) {
        0 => {
            let s = random_hermitian(r, rng, q);
            for i in 0..q {
                for j in 0..q {
                    m.set(q + i, j, s.get(i, j).clone());
                }
            }
        }
        1 => {
            let t = random_hermitian(r, rng, q);
            for i in 0..q {
                for j in 0..q {
                    m.set(i, q + j, t.get(i, j).clone());
                }
            }
        }
        _ => {
            // A = I + c E_ij or a unit monomial on the diagonal; the b block gets (A^†)^{-1}
            let i = rng.gen_range(0..q);
            let j = rng.gen_range(0..q);
            if i != j {
                let c = random_poly(r, rng, 1);
                m.set(i, j, c.clone());
                m.set(q + j, q + i, -c.antipode());
            } else {
                let u = LaurentPoly::monomial(r, if rng.gen_bool(0.5) { 1 } else { -1 }, vec![rng.gen_range(-1..=1), rng.gen_range(-1..=1)]);
                m.set(i, i, u.clone());
                m.set(q + i, q + i, u.antipode().unit_inverse().unwrap());
            }
        }
    }
    m
}

/// Saturated Lagrangian codes over `Z_4` obtained from known ones by
/// random symplectic maps.
pub fn random_lagrangian_codes(count: usize, seed: u64) -> Vec<CodeSpec> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let bases = [
        toric2d(4),
        plaquette(4),
        z4_condensation(),
        plaquette(4).direct_sum(&trivial(4)).unwrap(),
        toric2d(4).direct_sum(&trivial(4)).unwrap(),
    ];
    (0..count)
        .map(|k| {
            let base = &bases[k % bases.len()];
            let r = base.ring().clone();
            let mut sigma = base.sigma().clone();
            // keep entries small enough for the Gröbner engine: one map on three qudits
            let maps = if base.q() > 2 { 1 } else { rng.gen_range(1..=2) };
            for _ in 0..maps {
                let m = random_symplectic(&r, &mut rng, base.q());
                sigma = m.try_mul(&sigma).unwrap();
            }
            let mut spec = base.with_sigma(sigma).unwrap();
            spec.name = format!("random_lagrangian_{k}");
            spec
        })
        .collect()
}
