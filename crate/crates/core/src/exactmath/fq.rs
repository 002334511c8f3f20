use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// Element of a finite field inside a [`FieldTower`].
///
/// `coords` are `F_p` digits in the flattened polynomial basis of the given
/// tower level (length `p^level`). Elements are kept at their minimal level:
/// arithmetic trims trailing zero blocks, so structural equality is semantic
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    level: usize,
    coords: Vec<u32>,
}

impl FqElem {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl core::fmt::Debug for FqElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Fq(L{}, {:?})", self.level, self.coords)
    }
}

/// Deterministic tower of Artin-Schreier extensions of `F_p`.
///
/// Level 0 is `F_p`; level `k` is obtained from level `k-1` by adjoining a
/// root of `x^p - x - theta_k`, where `theta_k` has no Artin-Schreier
/// preimage in level `k-1` (which makes the modulus irreducible). Given the
/// same sequence of extension requests, two towers are identical.
#[derive(Clone)]
pub struct FieldTower {
    p: u32,
    /// `thetas[k-1]` is the Artin-Schreier right-hand side of level `k`,
    /// stored with coordinates padded to the full length of level `k-1`.
    thetas: Vec<Vec<u32>>,
}

impl FieldTower {
    pub fn new(p: u32) -> FieldTower {
        assert!(p >= 2, "p must be a prime >= 2");
        FieldTower { p, thetas: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn top_level(&self) -> usize {
        self.thetas.len()
    }

    /// Absolute degree of a level over `F_p`.
    pub fn degree(&self, level: usize) -> usize {
        (self.p as usize).pow(level as u32)
    }

    pub fn theta(&self, level: usize) -> FqElem {
        assert!(level >= 1 && level <= self.top_level());
        self.finish(FqElem { level: level - 1, coords: self.thetas[level - 1].clone() })
    }

    pub fn zero(&self) -> FqElem {
        FqElem { level: 0, coords: vec![0] }
    }

    pub fn one(&self) -> FqElem {
        FqElem { level: 0, coords: vec![1] }
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.p as i64;
        let r = ((n % p) + p) % p;
        FqElem { level: 0, coords: vec![r as u32] }
    }

    /// Embeds into a (deeper or equal) level by zero-padding.
    pub fn embed(&self, a: &FqElem, level: usize) -> FqElem {
        assert!(level >= a.level, "cannot embed into a shallower level");
        let mut coords = a.coords.clone();
        coords.resize(self.degree(level), 0);
        FqElem { level, coords }
    }

    fn finish(&self, mut a: FqElem) -> FqElem {
        while a.level > 0 {
            let prev = self.degree(a.level - 1);
            if a.coords[prev..].iter().all(|&c| c == 0) {
                a.coords.truncate(prev);
                a.level -= 1;
            } else {
                break;
            }
        }
        a
    }

    fn common(&self, a: &FqElem, b: &FqElem) -> (FqElem, FqElem, usize) {
        let level = a.level.max(b.level);
        (self.embed(a, level), self.embed(b, level), level)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let (mut x, y, level) = self.common(a, b);
        for (c, d) in x.coords.iter_mut().zip(y.coords.iter()) {
            *c = (*c + *d) % self.p;
        }
        self.finish(FqElem { level, coords: x.coords })
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let coords = a.coords.iter().map(|&c| (self.p - c) % self.p).collect();
        self.finish(FqElem { level: a.level, coords })
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: u32, a: &FqElem) -> FqElem {
        let c = c % self.p;
        let coords = a.coords.iter().map(|&d| (d * c) % self.p).collect();
        self.finish(FqElem { level: a.level, coords })
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let (x, y, level) = self.common(a, b);
        let coords = self.mul_at(level, &x.coords, &y.coords);
        self.finish(FqElem { level, coords })
    }

    /// Recursive block multiplication modulo `x^p - x - theta` per level.
    fn mul_at(&self, level: usize, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as usize;
        if level == 0 {
            return vec![(a[0] as u64 * b[0] as u64 % self.p as u64) as u32];
        }
        let block = self.degree(level - 1);
        // school product into 2p-1 blocks over level-1
        let mut prod: Vec<Vec<u32>> = vec![vec![0; block]; 2 * p - 1];
        for i in 0..p {
            let ai = &a[i * block..(i + 1) * block];
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..p {
                let bj = &b[j * block..(j + 1) * block];
                if bj.iter().all(|&c| c == 0) {
                    continue;
                }
                let m = self.mul_at(level - 1, ai, bj);
                for (acc, v) in prod[i + j].iter_mut().zip(m.iter()) {
                    *acc = (*acc + *v) % self.p;
                }
            }
        }
        // reduce degrees >= p using x^p = x + theta
        let theta = &self.thetas[level - 1];
        for e in (p..=2 * p - 2).rev() {
            let c = core::mem::replace(&mut prod[e], vec![0; block]);
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            for (acc, v) in prod[e - p + 1].iter_mut().zip(c.iter()) {
                *acc = (*acc + *v) % self.p;
            }
            let ct = self.mul_at(level - 1, &c, theta);
            for (acc, v) in prod[e - p].iter_mut().zip(ct.iter()) {
                *acc = (*acc + *v) % self.p;
            }
        }
        let mut out = Vec::with_capacity(p * block);
        for blk in prod.into_iter().take(p) {
            out.extend(blk);
        }
        out
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p as u64)
    }

    /// The Artin-Schreier operator `x -> x^p - x`.
    pub fn artin_schreier(&self, a: &FqElem) -> FqElem {
        self.sub(&self.frobenius(a), a)
    }

    pub fn artin_schreier_iter(&self, a: &FqElem, times: u32) -> FqElem {
        let mut x = a.clone();
        for _ in 0..times {
            x = self.artin_schreier(&x);
        }
        x
    }

    /// Multiplicative inverse via `a^(q-2)`, `q = p^degree(level)`.
    pub fn inv(&self, a: &FqElem) -> Result<FqElem, Error> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        use num_bigint::BigUint;
        use num_traits::Zero as _;
        let q = BigUint::from(self.p).pow(self.degree(a.level) as u32);
        let mut e = q - 2u32;
        let mut base = a.clone();
        let mut acc = self.one();
        while !e.is_zero() {
            if e.bit(0) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Solves `x^p - x = theta` inside `level`, if a solution exists.
    ///
    /// The Artin-Schreier equation is `F_p`-linear, so this is Gaussian
    /// elimination for `(Frobenius - id) x = theta` on the flat coordinates.
    /// The returned solution is canonical: free coordinates (the kernel
    /// directions, containing the constants) are zeroed.
    #[allow(clippy::needless_range_loop)]
    pub fn as_solve(&self, level: usize, theta: &FqElem) -> Option<FqElem> {
        assert!(theta.level <= level, "theta must lie in the given level");
        let d = self.degree(level);
        let p = self.p;
        // columns of (Frob - id) on the basis
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(d);
        for j in 0..d {
            let mut coords = vec![0; d];
            coords[j] = 1;
            let e = FqElem { level, coords };
            let img = self.sub(&self.frobenius(&e), &e);
            cols.push(self.embed(&img, level).coords);
        }
        let rhs = self.embed(theta, level).coords;
        // augmented row-reduction over F_p
        let mut m: Vec<Vec<u32>> = (0..d)
            .map(|r| {
                let mut row: Vec<u32> = (0..d).map(|c| cols[c][r]).collect();
                row.push(rhs[r]);
                row
            })
            .collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; d];
        let mut rank = 0;
        for col in 0..d {
            let Some(pr) = (rank..d).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = mod_inv(m[rank][col], p);
            for v in m[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..d {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..=d {
                        m[r][c] = (m[r][c] + (p - f % p) * m[rank][c]) % p;
                    }
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
        }
        // inconsistent iff a zero row has nonzero rhs
        for r in rank..d {
            if m[r][d] != 0 {
                return None;
            }
        }
        let mut coords = vec![0; d];
        for (col, pivot) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pivot {
                coords[col] = m[*r][d];
            }
        }
        Some(self.finish(FqElem { level, coords }))
    }

    /// Adds a new level with modulus `x^p - x - theta` and returns its
    /// generator. The caller is responsible for `theta` having no
    /// Artin-Schreier preimage below (which makes the modulus irreducible).
    pub fn extend(&mut self, theta: &FqElem) -> FqElem {
        let top = self.top_level();
        let padded = self.embed(theta, top).coords;
        self.thetas.push(padded);
        let d = self.degree(top + 1);
        let mut coords = vec![0; d];
        coords[self.degree(top)] = 1;
        FqElem { level: top + 1, coords }
    }

    /// All elements of a level, in lexicographic coordinate order.
    /// Intended for brute-force oracles in tests; exponential in the degree.
    pub fn elements(&self, level: usize) -> impl Iterator<Item = FqElem> + '_ {
        let d = self.degree(level);
        let p = self.p;
        let total = (p as u64).pow(d as u32);
        (0..total).map(move |mut k| {
            let mut coords = vec![0; d];
            for c in coords.iter_mut() {
                *c = (k % p as u64) as u32;
                k /= p as u64;
            }
            self.finish(FqElem { level, coords })
        })
    }

    /// `a` rendered in the generators `g1, g2, ...` of the tower.
    pub fn render(&self, a: &FqElem) -> String {
        if a.level == 0 {
            return format!("{}", a.coords[0]);
        }
        let mut parts: Vec<String> = Vec::new();
        self.render_rec(a.level, &a.coords, &mut String::new(), &mut parts);
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join("+")
        }
    }

    fn render_rec(&self, level: usize, coords: &[u32], suffix: &mut String, out: &mut Vec<String>) {
        if level == 0 {
            if coords[0] != 0 {
                let c = coords[0];
                if suffix.is_empty() {
                    out.push(format!("{c}"));
                } else if c == 1 {
                    out.push(suffix[1..].into());
                } else {
                    out.push(format!("{c}{suffix}"));
                }
            }
            return;
        }
        let block = self.degree(level - 1);
        for e in 0..self.p as usize {
            let chunk = &coords[e * block..(e + 1) * block];
            let mut s = suffix.clone();
            if e == 1 {
                s = format!("*g{level}{s}");
            } else if e > 1 {
                s = format!("*g{level}^{e}{s}");
            }
            self.render_rec(level - 1, chunk, &mut s, out);
        }
    }
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p
    let mut e = p - 2;
    let mut base = a as u64 % p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    /// F_4 tower for p = 2: one extension by x^2 + x + 1.
    fn f4() -> (FieldTower, FqElem) {
        let mut tw = FieldTower::new(2);
        let one = tw.one();
        let g = tw.extend(&one);
        (tw, g)
    }

    #[test]
    fn frobenius_fixes_one() {
        let tw = FieldTower::new(2);
        assert_eq!(tw.frobenius(&tw.one()), tw.one());
    }

    #[test]
    fn characteristic_two_addition() {
        let (tw, g) = f4();
        assert!(tw.add(&g, &g).is_zero());
    }

    #[test]
    fn inverse_times_self_is_one() {
        let (tw, g) = f4();
        for a in tw.elements(1) {
            if a.is_zero() {
                assert!(tw.inv(&a).is_err());
                continue;
            }
            assert_eq!(tw.mul(&tw.inv(&a).unwrap(), &a), tw.one());
        }
        let _ = g;
    }

    #[test]
    fn generator_satisfies_its_modulus() {
        let (tw, g) = f4();
        // g^2 + g = 1, i.e. AS(g) = 1
        assert_eq!(tw.artin_schreier(&g), tw.one());
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        let (tw, _) = f4();
        let elems: Vec<_> = tw.elements(1).collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(
                    tw.frobenius(&tw.add(a, b)),
                    tw.add(&tw.frobenius(a), &tw.frobenius(b))
                );
                assert_eq!(
                    tw.frobenius(&tw.mul(a, b)),
                    tw.mul(&tw.frobenius(a), &tw.frobenius(b))
                );
            }
            // frob^degree = id on the level of that degree
            let mut x = a.clone();
            for _ in 0..2 {
                x = tw.frobenius(&x);
            }
            assert_eq!(&x, a);
        }
    }

    #[test]
    fn as_solve_examples() {
        let mut tw = FieldTower::new(2);
        // theta = 0 has the canonical solution 0
        let z = tw.zero();
        assert_eq!(tw.as_solve(0, &z), Some(tw.zero()));
        // x^2 + x = 1 has no root in F_2
        let one = tw.one();
        assert_eq!(tw.as_solve(0, &one), None);
        // ... but has root g in F_4
        let g = tw.extend(&one);
        assert_eq!(tw.as_solve(1, &one), Some(g));
    }

    #[test]
    fn as_solve_exhaustive_against_brute_force() {
        let (tw, _) = f4();
        for theta in tw.elements(1) {
            let solved = tw.as_solve(1, &theta);
            let brute: Vec<_> = tw
                .elements(1)
                .filter(|x| tw.artin_schreier(x) == theta)
                .collect();
            match solved {
                Some(x) => assert!(brute.contains(&x)),
                None => assert!(brute.is_empty()),
            }
        }
    }

    #[test]
    fn tower_determinism() {
        let build = || {
            let mut tw = FieldTower::new(2);
            let one = tw.one();
            let g = tw.extend(&one);
            let h = tw.extend(&g);
            (tw, g, h)
        };
        let (t1, g1, h1) = build();
        let (t2, g2, h2) = build();
        assert_eq!(g1, g2);
        assert_eq!(h1, h2);
        assert_eq!(t1.thetas, t2.thetas);
        assert_eq!(t1.mul(&h1, &g1), t2.mul(&h2, &g2));
    }

    #[test]
    fn p3_basics() {
        let mut tw = FieldTower::new(3);
        assert_eq!(tw.from_int(-1), tw.from_int(2));
        // x^3 - x - 1 has no root in F_3 (AS maps F_3 to 0)
        let one = tw.one();
        assert_eq!(tw.as_solve(0, &one), None);
        let g = tw.extend(&one);
        assert_eq!(tw.artin_schreier(&g), one);
        for a in tw.elements(1) {
            if !a.is_zero() {
                assert_eq!(tw.mul(&tw.inv(&a).unwrap(), &a), tw.one());
            }
        }
    }
}
