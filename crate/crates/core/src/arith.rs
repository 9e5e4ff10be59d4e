//! Exact arithmetic shared by every other module: negative continued
//! fractions, quadratic residues, modular inverses and rational formatting.
//!
//! Residue computations take `i64` moduli and do all products in `i128`, so
//! no intermediate can overflow for any modulus that fits in an `i64`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::{Error, Int, Rational, Result};

/// Exact signed integer usable as the scalar of the generic layers.
///
/// Implemented for every type with the listed capabilities, in particular
/// `i64`, `i128` and [`num_bigint::BigInt`].
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Negative continued fraction `a_0 - 1/(a_1 - 1/(... - 1/a_n))` with every
/// `a_i <= -2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NegCf<I> {
    coeffs: Vec<I>,
}

impl<I: ExactInt> NegCf<I> {
    pub fn new(coeffs: Vec<I>) -> Result<Self> {
        let bound = I::from_i64(-2).expect("-2 fits every integer type");
        if coeffs.is_empty() || coeffs.iter().any(|a| *a > bound) {
            return Err(Error::InvalidContinuedFraction);
        }
        Ok(NegCf { coeffs })
    }

    pub fn coeffs(&self) -> &[I] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn value(&self) -> Ratio<I> {
        cf_value(self)
    }

    /// Same coefficients over another integer type.
    pub fn convert<J: ExactInt>(&self) -> NegCf<J> {
        NegCf {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| J::from_i128(a.to_i128().expect("coefficient fits in i128")).unwrap())
                .collect(),
        }
    }
}

impl<I: ExactInt> Display for NegCf<I> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Expands `-p/q` as a negative continued fraction with all terms `<= -2`.
pub fn neg_continued_fraction<I: ExactInt>(p: &I, q: &I) -> Result<NegCf<I>> {
    if !q.is_positive() || q >= p || !p.gcd(q).is_one() {
        return Err(Error::InvalidLens {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let (mut num, mut den) = (p.clone(), q.clone());
    let mut coeffs = Vec::new();
    loop {
        // -num/den = -c - 1/x with c = ceil(num/den), x = -den/(c*den - num)
        let c = num.div_ceil(&den);
        let rest = c.clone() * den.clone() - num;
        coeffs.push(-c);
        if rest.is_zero() {
            break;
        }
        num = den;
        den = rest;
    }
    NegCf::new(coeffs)
}

/// Exact value of a negative continued fraction.
pub fn cf_value<I: ExactInt>(cf: &NegCf<I>) -> Ratio<I> {
    let mut terms = cf.coeffs.iter().rev();
    let last = terms.next().expect("continued fraction is nonempty");
    terms.fold(Ratio::from_integer(last.clone()), |acc, a| {
        Ratio::from_integer(a.clone()) - acc.recip()
    })
}

/// Lookup table of the squares modulo `n`, zero included.
#[derive(Debug, Clone)]
pub struct SquareTable {
    modulus: i64,
    squares: Vec<bool>,
}

impl SquareTable {
    pub fn new(modulus: i64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus(modulus));
        }
        let n = modulus as i128;
        let mut squares = vec![false; modulus as usize];
        for k in 0..=(n / 2) {
            squares[(k * k % n) as usize] = true;
        }
        Ok(SquareTable { modulus, squares })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn contains(&self, a: i64) -> bool {
        self.squares[a.rem_euclid(self.modulus) as usize]
    }

    /// The squares as sorted residues in `[0, n)`.
    pub fn residues(&self) -> Vec<i64> {
        (0..self.modulus).filter(|&r| self.squares[r as usize]).collect()
    }
}

/// Whether `a` is congruent to a square modulo `n`. Zero counts as a square.
pub fn is_quadratic_residue(a: i64, n: i64) -> Result<bool> {
    Ok(SquareTable::new(n)?.contains(a))
}

/// Legendre symbol `(a/p)` for an odd prime `p` by Euler's criterion:
/// `1`, `-1`, or `0` when `p` divides `a`.
pub fn legendre(a: i64, p: i64) -> Result<i64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let a = a.rem_euclid(p);
    if a == 0 {
        return Ok(0);
    }
    let (mut base, mut e, mut acc) = (a, (p - 1) / 2, 1i64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    Ok(if acc == 1 { 1 } else { -1 })
}

/// Inverse of `q` modulo `p`, in `[1, p-1]`.
pub fn mod_inverse(q: i64, p: i64) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidModulus(p));
    }
    let egcd = (q as i128).rem_euclid(p as i128).extended_gcd(&(p as i128));
    if !egcd.gcd.is_one() {
        return Err(Error::NotInvertible { q, p });
    }
    Ok(egcd.x.rem_euclid(p as i128) as i64)
}

/// `(a * b) mod n` in `[0, n)` without overflow.
pub fn mul_mod(a: i64, b: i64, n: i64) -> i64 {
    ((a as i128) * (b as i128)).rem_euclid(n as i128) as i64
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Trial division; moduli here stay at desk scale.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn int_rational(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Wire form of a rational: always `"num/den"`, even for integers.
pub fn fmt_rational<I: ExactInt>(r: &Ratio<I>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n"` or `"n/d"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = Int::from_str(num).map_err(|_| err())?;
    let den = Int::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}
