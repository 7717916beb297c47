//! Dense univariate polynomials over a [`Ring`], with the exact algorithms
//! the discriminant machinery is built on: pseudo-division, primitive-PRS
//! gcd, and resultants by two independent routes (fraction-free Bareiss
//! elimination of the Sylvester matrix, and a primitive remainder sequence
//! with rational factor bookkeeping for Z coefficients).

use super::ring::{GcdRing, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    /// The monomial c * X^k.
    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).add_ref(&other.coeff(k)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).sub_ref(&other.coeff(k)));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg_ref()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, s: &R) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
        }
    }

    /// Multiply by X^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut m = R::zero();
            for _ in 0..k {
                m = m.add_ref(&R::one());
            }
            coeffs.push(c.mul_ref(&m));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, at: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(at).add_ref(c);
        }
        acc
    }

    /// Pseudo-remainder: the R with lc(d)^(deg self - deg d + 1) * self =
    /// q*d + R and deg R < deg d. Requires d nonzero and deg self >= deg d.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("prem by zero polynomial");
        let mut r = self.clone();
        let lead = d.leading().expect("nonzero").clone();
        let mut steps_left = self
            .degree()
            .map_or(0, |n| n.saturating_sub(dd) as i64 + 1);
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = Poly::monomial(r.leading().unwrap().clone(), dr - dd);
            r = r.mul_scalar(&lead).sub(&t.mul(d));
            steps_left -= 1;
        }
        // Pad so the overall factor is exactly lc(d)^(delta+1).
        for _ in 0..steps_left {
            r = r.mul_scalar(&lead);
        }
        r
    }

    /// Exact polynomial division: self = q * d. Panics if not divisible.
    pub fn exact_div_poly(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap();
        let mut r = self.clone();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            assert!(dr >= dd, "inexact polynomial division");
            let c = r.leading().unwrap().exact_div(lead);
            let k = dr - dd;
            q[k] = c.clone();
            r = r.sub(&Poly::monomial(c, k).mul(d));
            if r.is_zero() {
                break;
            }
        }
        assert!(r.is_zero(), "inexact polynomial division");
        Self::from_coeffs(q)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| f(c)).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.exact_div_poly(other)
    }
    fn is_negative(&self) -> bool {
        self.leading().map_or(false, |c| c.is_negative())
    }
}

impl<R: GcdRing> Poly<R> {
    /// Gcd of all coefficients, never negative. Content of zero is zero.
    pub fn content(&self) -> R {
        let mut c = R::zero();
        for a in &self.coeffs {
            c = c.gcd(a);
            if c == R::one() {
                break;
            }
        }
        c
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        if c == R::one() {
            self.clone()
        } else {
            Poly {
                coeffs: self.coeffs.iter().map(|a| a.exact_div(&c)).collect(),
            }
        }
    }

    /// Sign-normalized: the leading coefficient is made non-negative.
    pub fn normalized(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Polynomial gcd via primitive pseudo-remainder sequence; the result is
    /// primitive-times-content-gcd with non-negative leading coefficient.
    pub fn gcd_poly(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().mul_scalar(&c).normalized()
    }
}

impl<R: GcdRing> GcdRing for Poly<R> {
    fn gcd(&self, other: &Self) -> Self {
        self.gcd_poly(other)
    }
}

/// Determinant by fraction-free Bareiss elimination. Works over any ring
/// with exact division; every intermediate entry is a minor of the input.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap_row = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap_row {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return R::zero(),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = pivot
                    .mul_ref(&m[i][j])
                    .sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = R::zero();
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg_ref()
    } else {
        det
    }
}

/// Sylvester matrix of (a, b): deg(b) rows of a's coefficients followed by
/// deg(a) rows of b's, descending within each row.
fn sylvester<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Vec<Vec<R>> {
    let m = a.degree().expect("nonzero");
    let n = b.degree().expect("nonzero");
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![R::zero(); size];
        for k in 0..=m {
            row[i + k] = a.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![R::zero(); size];
        for k in 0..=n {
            row[i + k] = b.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant via the Sylvester determinant; the reference implementation.
/// Res(a, b) = 0 when either input is zero (degenerate convention), and for
/// constants Res(c, b) = c^deg(b).
pub fn resultant_bareiss<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    if m == 0 {
        return pow_ring(a.leading().unwrap(), n);
    }
    if n == 0 {
        return pow_ring(b.leading().unwrap(), m);
    }
    bareiss_determinant(sylvester(a, b))
}

fn pow_ring<R: Ring>(base: &R, e: usize) -> R {
    let mut acc = R::one();
    for _ in 0..e {
        acc = acc.mul_ref(base);
    }
    acc
}

/// Resultant of integer polynomials via a primitive remainder sequence,
/// carrying the scalar correction factors exactly as a rational. Must agree
/// bit for bit with [`resultant_bareiss`]; the test suite enforces this.
pub fn resultant_prs_z(a: &Poly<BigInt>, b: &Poly<BigInt>) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::from(0);
    }
    let mut big_a = a.clone();
    let mut big_b = b.clone();
    let mut mult = BigRational::one();
    if big_a.degree() < big_b.degree() {
        let (da, db) = (big_a.degree().unwrap(), big_b.degree().unwrap());
        if da % 2 == 1 && db % 2 == 1 {
            mult = -mult;
        }
        std::mem::swap(&mut big_a, &mut big_b);
    }
    loop {
        let ma = big_a.degree().unwrap();
        let mb = big_b.degree().unwrap();
        if mb == 0 {
            let lead = BigRational::from(big_b.leading().unwrap().clone());
            let value = mult * rational_pow(&lead, ma as i64);
            return rational_to_int(value);
        }
        let r = big_a.prem(&big_b);
        if r.is_zero() {
            return BigInt::from(0);
        }
        let delta = ma - mb;
        let dr = r.degree().unwrap();
        // Res(A,B) = (-1)^(ma*mb) * lc(B)^(ma - dr - (delta+1)*mb) * Res(B, R)
        if (ma * mb) % 2 == 1 {
            mult = -mult;
        }
        let lead = BigRational::from(big_b.leading().unwrap().clone());
        let exp = ma as i64 - dr as i64 - (delta as i64 + 1) * mb as i64;
        mult *= rational_pow(&lead, exp);
        let cont = r.content();
        let rp = r.primitive_part();
        // Res(B, cont * Rp) = cont^mb * Res(B, Rp)
        mult *= rational_pow(&BigRational::from(cont), mb as i64);
        big_a = big_b;
        big_b = rp;
    }
}

fn rational_pow(base: &BigRational, e: i64) -> BigRational {
    base.pow(e as i32)
}

fn rational_to_int(r: BigRational) -> BigInt {
    assert!(r.is_integer(), "resultant bookkeeping left a denominator");
    r.to_integer()
}

/// Discriminant with the sign normalization
/// disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f), n = deg f >= 1.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> R {
    let n = f.degree().expect("discriminant of zero polynomial");
    assert!(n >= 1, "discriminant needs positive degree");
    let res = resultant_bareiss(f, &f.derivative());
    let lead = f.leading().unwrap();
    let d = res.exact_div(lead);
    if (n * (n - 1) / 2) % 2 == 1 {
        d.neg_ref()
    } else {
        d
    }
}

/// Same normalization through the fast integer path.
pub fn discriminant_z_fast(f: &Poly<BigInt>) -> BigInt {
    let n = f.degree().expect("discriminant of zero polynomial");
    assert!(n >= 1, "discriminant needs positive degree");
    if n == 1 {
        return BigInt::from(1);
    }
    let res = resultant_prs_z(f, &f.derivative());
    let d = res.exact_div(f.leading().unwrap());
    if (n * (n - 1) / 2) % 2 == 1 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(coeffs: &[i64]) -> Poly<BigInt> {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let f = z(&[1, 2, 1]); // (x+1)^2
        let g = z(&[1, 1]);
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.sub(&f), Poly::zero());
        assert_eq!(f.derivative(), z(&[2, 2]));
        assert_eq!(f.eval(&BigInt::from(3)), BigInt::from(16));
    }

    #[test]
    fn gcd_strips_multiplicity() {
        // gcd((x-1)^2 (x+2), (x-1)(x+3)) = x-1
        let f = z(&[1, -1]).pow(2).mul(&z(&[2, 1]));
        let g = z(&[-1, 1]).mul(&z(&[3, 1]));
        assert_eq!(f.gcd_poly(&g), z(&[-1, 1]));
    }

    #[test]
    fn gcd_sign_normalized() {
        let f = z(&[-2, -2]); // -2(x+1)
        let g = z(&[-4, -4]);
        assert_eq!(f.gcd_poly(&g), z(&[2, 2]));
    }

    #[test]
    fn resultant_linear_pair() {
        // Res(x - a, x - b) = b - a with rows-of-first-first convention:
        // det [[1, -a], [1, -b]] = -b + a ... fixed by the classical identity
        // Res(f, g) = lc(f)^deg g * prod g(alpha_i) = g(a) = a - b.
        let f = z(&[-3, 1]); // x - 3
        let g = z(&[-5, 1]); // x - 5
        assert_eq!(resultant_bareiss(&f, &g), BigInt::from(-2)); // 3 - 5
        assert_eq!(resultant_prs_z(&f, &g), BigInt::from(-2));
    }

    #[test]
    fn resultant_shared_root_is_zero() {
        let f = z(&[-1, 0, 1]); // x^2 - 1
        let g = z(&[1, 1]); // x + 1
        assert_eq!(resultant_bareiss(&f, &g), BigInt::from(0));
        assert_eq!(resultant_prs_z(&f, &g), BigInt::from(0));
    }

    #[test]
    fn discriminant_quadratic() {
        // disc(x^2 + bx + c) = b^2 - 4c
        let f = z(&[7, 3, 1]);
        assert_eq!(discriminant(&f), BigInt::from(9 - 28));
        assert_eq!(discriminant_z_fast(&f), BigInt::from(9 - 28));
    }

    #[test]
    fn discriminant_of_linear_is_one() {
        assert_eq!(discriminant(&z(&[4, 2])), BigInt::from(1));
        assert_eq!(discriminant_z_fast(&z(&[4, 2])), BigInt::from(1));
    }

    #[test]
    fn prem_identity() {
        // lc(d)^(delta+1) * a = q*d + prem(a, d): check degree drop and the
        // divisibility identity via reconstruction.
        let a = z(&[3, 1, 4, 1, 5]);
        let d = z(&[2, 0, 3]);
        let r = a.prem(&d);
        assert!(r.degree().map_or(true, |dr| dr < 2));
        // (lc^3 a - r) must be divisible by d.
        let scaled = a.mul_scalar(&BigInt::from(27));
        let _q = scaled.sub(&r).exact_div_poly(&d);
    }

    #[test]
    fn fast_resultant_matches_bareiss_on_randoms() {
        // Deterministic pseudo-random corpus, including degree gaps and
        // negative leading coefficients.
        let mut state = 0x9E37_79B9u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 7) - 3
        };
        for _ in 0..600 {
            let da = (next().unsigned_abs() as usize % 5) + 1;
            let db = (next().unsigned_abs() as usize % 5) + 1;
            let a = Poly::from_coeffs(
                (0..=da).map(|_| BigInt::from(next())).collect::<Vec<_>>(),
            );
            let b = Poly::from_coeffs(
                (0..=db).map(|_| BigInt::from(next())).collect::<Vec<_>>(),
            );
            if a.is_zero() || b.is_zero() {
                continue;
            }
            assert_eq!(resultant_bareiss(&a, &b), resultant_prs_z(&a, &b));
        }
    }
}
