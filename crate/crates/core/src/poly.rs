//! Univariate polynomials over `F_p`, minimal polynomials of matrices, and
//! factorisation (square-free, distinct-degree, equal-degree).

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::{Fp, Matrix};

/// Polynomial with coefficients stored from the constant term upward. The
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fp,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: Fp, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_signed(field: Fp, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: Fp) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fp) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x(field: Fp) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, s: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *o.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(*self.coeffs.get(i).unwrap_or(&0), *o.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Poly::new(f, c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u32; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut r = Poly::one(self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.leading());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic gcd (zero only if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
            .collect();
        Poly::new(f, c)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut r = Poly::one(self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            b = b.mul(&b).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        let id = Matrix::identity(self.field, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&id.scale(c));
        }
        acc
    }

    /// Canonical order: degree, then coefficients from the constant term
    /// upward, each read as its symmetric residue.
    pub fn canonical_cmp(&self, o: &Poly) -> Ordering {
        let f = self.field;
        self.coeffs.len().cmp(&o.coeffs.len()).then_with(|| {
            let a = self.coeffs.iter().map(|&c| f.signed(c));
            let b = o.coeffs.iter().map(|&c| f.signed(c));
            a.cmp(b)
        })
    }
}

/// Minimal polynomial of a square matrix, found by detecting the first
/// linear dependency among `I, M, M^2, ...`.
pub fn min_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Usage(alloc::format!(
            "min_poly of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let f = m.field();
    let n = m.rows();
    let mut power = Matrix::identity(f, n);
    let mut basis = Matrix::zeros(f, n * n, 0);
    loop {
        let v = power.flatten_column();
        if let Some(c) = basis.solve(&v)? {
            // power = sum c_i M^i  =>  x^k - sum c_i x^i
            let mut coeffs: Vec<u32> = c.col(0).into_iter().map(|a| f.neg(a)).collect();
            coeffs.push(1);
            return Ok(Poly::new(f, coeffs));
        }
        basis = basis.hstack(&v);
        power = power.mul(m);
    }
}

/// Square-free decomposition: pairs `(g, e)` with `g` square-free, monic and
/// the input (made monic) equal to the product of `g^e`.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let field = p.field();
    let mut out = Vec::new();
    let f = p.monic();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if !c.is_one() {
        // c is a p-th power: take the p-th root coefficientwise
        let pp = field.p() as usize;
        let root_coeffs: Vec<u32> = c.coeffs().iter().step_by(pp).copied().collect();
        let root = Poly::new(field, root_coeffs);
        for (g, e) in squarefree_decomposition(&root) {
            out.push((g, e * pp));
        }
    }
    out
}

/// Distinct-degree split of a square-free monic polynomial: `(product of all
/// irreducible factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut xp = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        xp = xp.powmod(field.p() as u64, &rest);
        let g = rest.gcd(&xp.sub(&x));
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            xp = xp.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a product of distinct irreducibles all of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let field = f.field();
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let p = field.p() as u64;
    loop {
        let coeffs: Vec<u32> = (0..n).map(|_| (rng.next_u64() % p) as u32).collect();
        let a = Poly::new(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.powmod(p, f);
                norm = norm.mul(&frob).rem(f);
            }
            norm.powmod((p - 1) / 2, f).sub(&Poly::one(field))
        };
        let h = f.gcd(&g);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < n {
            let other = f.divrem(&h).0.monic();
            let mut out = equal_degree(&h, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted canonically. The splitting step is randomised from `seed`.
pub fn factor(p: &Poly, seed: u64) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::Usage("cannot factor the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (sq, e) in squarefree_decomposition(p) {
        for (g, d) in distinct_degree(&sq) {
            for irr in equal_degree(&g, d, &mut rng) {
                match out.iter_mut().find(|(q, _)| *q == irr) {
                    Some((_, m)) => *m += e,
                    None => out.push((irr, e)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    fn expand(f: Fp, factors: &[(Poly, usize)]) -> Poly {
        factors.iter().fold(Poly::one(f), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    #[test]
    fn min_poly_examples() {
        let f = f7();
        assert_eq!(min_poly(&Matrix::zeros(f, 2, 2)).unwrap(), Poly::x(f));
        assert_eq!(
            min_poly(&Matrix::identity(f, 2)).unwrap(),
            Poly::from_signed(f, &[-1, 1])
        );
        let nil = Matrix::from_rows(f, &[[0, 1], [0, 0]]);
        assert_eq!(min_poly(&nil).unwrap(), Poly::from_signed(f, &[0, 0, 1]));
        assert!(min_poly(&Matrix::zeros(f, 2, 3)).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = f7();
        let got = factor(&Poly::from_signed(f, &[-1, 0, 1]), 0).unwrap();
        assert_eq!(
            got,
            vec![(Poly::from_signed(f, &[-1, 1]), 1), (Poly::from_signed(f, &[1, 1]), 1)]
        );
        let irr = Poly::from_signed(f, &[1, 0, 1]);
        assert_eq!(factor(&irr, 0).unwrap(), vec![(irr.clone(), 1)]);
        assert_eq!(
            factor(&Poly::from_signed(f, &[0, 0, 1]), 0).unwrap(),
            vec![(Poly::x(f), 2)]
        );
        assert!(factor(&Poly::zero(f), 0).is_err());
    }

    #[test]
    fn factor_with_pth_power() {
        // (x+1)^7 * (x^2+1) over F_7: derivative of the first factor vanishes
        let f = f7();
        let p = Poly::from_signed(f, &[1, 1]).pow(7).mul(&Poly::from_signed(f, &[1, 0, 1]));
        let got = factor(&p, 3).unwrap();
        assert_eq!(
            got,
            vec![(Poly::from_signed(f, &[1, 1]), 7), (Poly::from_signed(f, &[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_over_f2() {
        let f = Fp::new(2).unwrap();
        // x^4 + x = x (x+1) (x^2+x+1)
        let p = Poly::from_signed(f, &[0, 1, 0, 0, 1]);
        let got = factor(&p, 1).unwrap();
        assert_eq!(got.len(), 3);
        assert_eq!(expand(f, &got), p);
    }

    proptest! {
        #[test]
        fn factorisation_reproduces_input(
            coeffs in proptest::collection::vec(0u32..31, 1..9),
            seed in any::<u64>(),
        ) {
            let f = Fp::new(31).unwrap();
            let mut c = coeffs;
            c.push(1);
            let p = Poly::new(f, c);
            let got = factor(&p, seed).unwrap();
            prop_assert_eq!(expand(f, &got), p.clone());
            // irreducible factors have no roots unless linear
            for (g, _) in &got {
                if g.degree().unwrap() > 1 {
                    prop_assert!((0..31).all(|x| g.eval(x) != 0));
                }
            }
            // same seed, same output
            prop_assert_eq!(factor(&p, seed).unwrap(), got);
        }

        #[test]
        fn min_poly_annihilates(entries in proptest::collection::vec(0u32..13, 16)) {
            let f = Fp::new(13).unwrap();
            let m = Matrix::from_vec(f, 4, 4, entries).unwrap();
            let mp = min_poly(&m).unwrap();
            prop_assert!(mp.eval_matrix(&m).is_zero());
            prop_assert_eq!(mp.leading(), 1);
            prop_assert!(mp.degree().unwrap() <= 4);
        }
    }
}
