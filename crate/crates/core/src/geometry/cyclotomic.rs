use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_CONDUCTOR: u32 = 60;

/// `Φ_m` as integer coefficients, constant term first.
fn cyclotomic_polynomial(m: u32) -> &'static [i64] {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut polys: Vec<Vec<i64>> = vec![Vec::new(); MAX_CONDUCTOR as usize + 1];
        for n in 1..=MAX_CONDUCTOR as usize {
            // x^n − 1 divided by Φ_d for every proper divisor d
            let mut p = vec![0i64; n + 1];
            p[0] = -1;
            p[n] = 1;
            for d in 1..n {
                if n % d == 0 {
                    p = divide_monic(&p, &polys[d]);
                }
            }
            polys[n] = p;
        }
        polys
    });
    &table[m as usize]
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[i + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn check_conductor(m: u32) -> Result<u32> {
    if (1..=MAX_CONDUCTOR).contains(&m) {
        Ok(m)
    } else {
        Err(Error::UnsupportedConductor(m))
    }
}

/// An element of `Q(ζ_m)` as a polynomial in `ζ_m` of degree `< φ(m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Result<Self> {
        check_conductor(m)?;
        Ok(Self {
            m,
            coeffs: vec![BigRational::zero(); euler_phi(m)],
        })
    }

    pub fn rational(q: BigRational) -> Self {
        Self {
            m: 1,
            coeffs: vec![q],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `ζ_m^k`.
    pub fn zeta(m: u32, k: i64) -> Result<Self> {
        check_conductor(m)?;
        let e = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Ok(Self::reduce(m, raw))
    }

    fn reduce(m: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(m);
        let d = phi.len() - 1;
        for i in (d..raw.len()).rev() {
            let c = std::mem::take(&mut raw[i]);
            if c.is_zero() {
                continue;
            }
            for (j, &b) in phi.iter().enumerate().take(d) {
                if b != 0 {
                    raw[i - d + j] -= &c * BigRational::from_integer(b.into());
                }
            }
        }
        raw.resize(d, BigRational::zero());
        Self { m, coeffs: raw }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The same value written in `Q(ζ_target)`; `target` must be a multiple of the conductor.
    pub fn lift(&self, target: u32) -> Result<Self> {
        check_conductor(target)?;
        if !target.is_multiple_of(self.m) {
            return Err(Error::UnsupportedConductor(target));
        }
        if target == self.m {
            return Ok(self.clone());
        }
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Ok(Self::reduce(target, raw))
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let m = a.m.lcm(&b.m);
        Ok((a.lift(m)?, b.lift(m)?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Self { m: a.m, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other)?;
        let n = a.coeffs.len();
        let mut raw = vec![BigRational::zero(); (2 * n).max(1) - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Ok(Self::reduce(a.m, raw))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, by solving `self · y = 1` over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coeffs.len();
        // column j = self · ζ^j
        let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let col = self.try_mul(&Self::zeta(self.m, j as i64)?)?;
            for i in 0..n {
                a[i][j] = col.coeffs[i].clone();
            }
        }
        a[0][n] = BigRational::one();
        let sol = solve_rational(a, n).ok_or(Error::DivisionByZero)?;
        Ok(Self {
            m: self.m,
            coeffs: sol,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Writes the value as `q · ζ_m^k` when possible.
    pub fn as_rational_times_root(&self) -> Option<(BigRational, i64)> {
        for k in 0..self.m as i64 {
            let z = Self::zeta(self.m, -k).ok()?;
            if let Some(q) = self.try_mul(&z).ok()?.as_rational() {
                return Some((q, k));
            }
        }
        None
    }

    /// A square root of a value of the form `q · ζ^k`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (q, k) = self.as_rational_times_root().ok_or_else(|| {
            Error::Unsupported(format!("square root of {self} is not implemented"))
        })?;
        let root = sqrt_rational(&q)?.try_mul(&Self::zeta(2 * self.m, k)?)?;
        debug_assert!(root.try_mul(&root)? == *self);
        Ok(root)
    }
}

/// `√q` inside a cyclotomic field, via Gauss sums for each prime factor.
pub fn sqrt_rational(q: &BigRational) -> Result<Cyclotomic> {
    let num = q.numer().abs();
    let den = q.denom().clone();
    let prod = &num * &den;
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut rest = prod;
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        while (&rest % (&p * &p)).is_zero() {
            rest /= &p * &p;
            square *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            free *= &p;
        }
        p += 1;
    }
    free *= rest;
    let mut out = Cyclotomic::rational(BigRational::new(square, den));
    let mut f = free.to_u64().ok_or(Error::UnsupportedConductor(u32::MAX))?;
    let mut prime = 2u64;
    while f > 1 {
        if f % prime == 0 {
            f /= prime;
            out = out.try_mul(&sqrt_prime(prime)?)?;
        }
        prime += 1;
    }
    if q.is_negative() {
        out = out.try_mul(&Cyclotomic::zeta(4, 1)?)?;
    }
    Ok(out)
}

fn sqrt_prime(p: u64) -> Result<Cyclotomic> {
    if p == 2 {
        return Cyclotomic::zeta(8, 1)?.try_add(&Cyclotomic::zeta(8, 7)?);
    }
    let m = u32::try_from(p).map_err(|_| Error::UnsupportedConductor(u32::MAX))?;
    let mut g = Cyclotomic::zero(m)?;
    for a in 1..p {
        let residue = (1..p).any(|x| x * x % p == a);
        let z = Cyclotomic::zeta(m, a as i64)?;
        g = if residue { g + z } else { g - z };
    }
    if p % 4 == 1 {
        Ok(g)
    } else {
        g.try_mul(&Cyclotomic::zeta(4, 3)?)
    }
}

/// Solves an `n × n` augmented system over `Q`; `None` if singular.
fn solve_rational(mut a: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match Self::common(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $body(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                $body(self, rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Cyclotomic, b: &Cyclotomic| a
    .try_add(b)
    .expect("conductor out of range"));
binop!(Sub, sub, |a: &Cyclotomic, b: &Cyclotomic| a
    .try_add(&-b)
    .expect("conductor out of range"));
binop!(Mul, mul, |a: &Cyclotomic, b: &Cyclotomic| a
    .try_mul(b)
    .expect("conductor out of range"));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if c.is_one() => format!("z{}", self.m),
                1 => format!("{c}*z{}", self.m),
                _ if c.is_one() => format!("z{}^{i}", self.m),
                _ => format!("{c}*z{}^{i}", self.m),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta(m, k).unwrap()
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        assert!((Cyclotomic::one() + z(3, 1) + z(3, 2)).is_zero());
    }

    #[test]
    fn powers_and_lifting() {
        assert_eq!(z(12, 6), Cyclotomic::integer(-1));
        assert_eq!(z(6, 2), z(3, 1));
        let d = z(3, 1) - z(3, 2);
        assert_eq!(&d * &d, Cyclotomic::integer(-3));
        assert_eq!(z(7, 3).pow(7).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn inverses() {
        let x = Cyclotomic::integer(2) + z(5, 1);
        assert_eq!(&x * &x.inv().unwrap(), Cyclotomic::one());
        assert!(matches!(
            Cyclotomic::zero(5).unwrap().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn conductor_bounds() {
        assert!(matches!(
            Cyclotomic::zeta(61, 1),
            Err(Error::UnsupportedConductor(61))
        ));
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn square_roots() {
        for q in [2i64, 3, -3, 5, 6, -1, 12] {
            let r = sqrt_rational(&BigRational::from_integer(q.into())).unwrap();
            assert_eq!(&r * &r, Cyclotomic::integer(q));
        }
        let x = z(12, 1).scale(&BigRational::new(1.into(), 2.into()));
        let r = x.sqrt().unwrap();
        assert_eq!(&r * &r, x);
        assert_eq!(r.conductor(), 24);
    }
}
