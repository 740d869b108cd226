//! Exact arithmetic substrate: rational scalars, vectors, oriented
//! half-spaces, fraction-free linear algebra and exact rational points on
//! the unit circle.
//!
//! Every quantity is an arbitrary-precision rational kept in lowest terms
//! (this is what [`num_rational::BigRational`] guarantees), so no rounding
//! ever happens.  Elimination is done fraction-free (Bareiss) on integer
//! matrices obtained by clearing row denominators, which keeps intermediate
//! entries bounded by minors of the input instead of growing exponentially.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"-p"`, `"p/q"` or a finite decimal such as `"31.8"`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: `{token}`"));
    let t = token.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !ip_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{ip_digits}{fp}");
        let mut n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fp.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical textual form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// A point or direction in `R^dim` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    /// The zero vector of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    /// Builds a vector from machine integers.
    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| int(x)).collect())
    }

    /// The `i`-th standard basis vector of `R^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * k).collect())
    }

    /// Appends one coordinate.
    pub fn extended(&self, x: Rational) -> Vector {
        let mut v = self.0.clone();
        v.push(x);
        Vector(v)
    }
}

impl fmt::Display for Vector {
    /// Whitespace-separated rationals, the row format of the V/H files.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// The closed half-space `⟨normal, x⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: Rational,
}

impl Hyperplane {
    /// Creates a half-space; the normal must be nonzero.
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidArgument("hyperplane normal is zero".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    /// `offset − ⟨normal, x⟩`, nonnegative exactly on the half-space.
    pub fn slack(&self, x: &Vector) -> Rational {
        &self.offset - self.normal.dot(x)
    }

    /// Scales by a positive factor so that all entries are coprime integers.
    /// The half-space itself is unchanged.
    pub fn primitive(&self) -> Hyperplane {
        let mut entries: Vec<Rational> = self.normal.0.clone();
        entries.push(self.offset.clone());
        let ints = primitive_integer_row(&entries);
        let offset = Rational::from_integer(ints[ints.len() - 1].clone());
        let normal = Vector(ints[..ints.len() - 1].iter().cloned().map(Rational::from_integer).collect());
        Hyperplane { normal, offset }
    }

    /// Canonical representative of the *unoriented* hyperplane
    /// `⟨normal, x⟩ = offset`: coprime integers, sign chosen so that the
    /// offset is positive, or (offset zero) the first nonzero normal entry is
    /// positive.  Used for deduplication and golden files.
    pub fn canonical(&self) -> Hyperplane {
        let p = self.primitive();
        let flip = if p.offset.is_zero() {
            p.normal.0.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false)
        } else {
            p.offset.is_negative()
        };
        if flip {
            Hyperplane { normal: Vector(p.normal.0.iter().map(|x| -x).collect()), offset: -p.offset }
        } else {
            p
        }
    }
}

/// Clears denominators and divides by the gcd, keeping signs.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(ints)
}

/// Divides an integer vector by the gcd of its entries (no-op for zero).
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return v;
            }
        }
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// An exact rational point `(c, s)` on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirclePoint {
    pub c: Rational,
    pub s: Rational,
}

impl CirclePoint {
    /// Builds the point from the tangent of the half angle:
    /// `((1−t²)/(1+t²), 2t/(1+t²))`.
    pub fn from_half_tangent(t: &Rational) -> Self {
        let one = Rational::one();
        let t2 = t * t;
        let den = &one + &t2;
        CirclePoint { c: (&one - &t2) / &den, s: (t * Rational::from_integer(BigInt::from(2))) / den }
    }

    /// The point with coordinates swapped, i.e. the reflection of the angle
    /// `θ ↦ π/2 − θ`.
    pub fn swapped(&self) -> Self {
        CirclePoint { c: self.s.clone(), s: self.c.clone() }
    }

    /// Exact check of `c² + s² = 1`.
    pub fn is_on_circle(&self) -> bool {
        &self.c * &self.c + &self.s * &self.s == Rational::one()
    }

    /// Floating-point angle in turns, in `[0, 1)` (presentation only).
    pub fn turns_f64(&self) -> f64 {
        let a = to_f64(&self.s).atan2(to_f64(&self.c)) / std::f64::consts::TAU;
        if a < 0.0 {
            a + 1.0
        } else {
            a
        }
    }
}

/// Lossy conversion for presentation and heuristics only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator: scale down in binary.
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 900;
        let n = if shift > 0 { x.numer() >> shift as usize } else { x.numer().clone() };
        let d = if shift > 0 { x.denom() >> shift as usize } else { x.denom().clone() };
        n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
    })
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

/// Row echelon form of an integer matrix computed by Bareiss' fraction-free
/// elimination.  Returns the transformed matrix together with the pivot
/// column of each nonzero row (rows past the rank are zero).
pub fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in (c + 1)..ncols {
                let v = piv * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Scales each row of a rational matrix by the lcm of its denominators.
fn integer_rows(m: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.denom());
            }
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Exact rank of a rational matrix.
pub fn rank(m: &[Vec<Rational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    bareiss_echelon(integer_rows(m), ncols).1.len()
}

/// Exact rank of an integer matrix.
pub fn integer_rank(m: Vec<Vec<BigInt>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    bareiss_echelon(m, ncols).1.len()
}

/// Solution set of an affine system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    /// Exactly one solution.
    Unique(Vector),
    /// No solution.
    Inconsistent,
    /// `particular + span(basis)`, with `basis` linearly independent.
    Underdetermined { particular: Vector, basis: Vec<Vector> },
}

/// Back-substitution on an echelon form (rows past `pivots.len()` ignored).
/// `rhs_col` is the column holding the right-hand side, if any.
fn back_substitute(
    e: &[Vec<BigInt>],
    pivots: &[usize],
    nvars: usize,
    rhs_col: Option<usize>,
    free_values: &[(usize, Rational)],
) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); nvars];
    for (j, v) in free_values {
        x[*j] = v.clone();
    }
    for (k, &pc) in pivots.iter().enumerate().rev() {
        let row = &e[k];
        let mut acc = match rhs_col {
            Some(c) => Rational::from_integer(row[c].clone()),
            None => Rational::zero(),
        };
        for j in (pc + 1)..nvars {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[pc] = acc / Rational::from_integer(row[pc].clone());
    }
    x
}

/// Solves `A x = b` exactly.
pub fn solve_affine(a: &[Vec<Rational>], b: &Vector) -> Result<AffineSolution> {
    if a.len() != b.dim() {
        return Err(Error::DimensionMismatch(format!("{} equations but right-hand side of length {}", a.len(), b.dim())));
    }
    let nvars = a.first().map(|r| r.len()).unwrap_or(0);
    if a.iter().any(|r| r.len() != nvars) {
        return Err(Error::DimensionMismatch("ragged coefficient matrix".into()));
    }
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(&b.0)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (e, pivots) = bareiss_echelon(integer_rows(&aug), nvars + 1);
    if pivots.last() == Some(&nvars) {
        return Ok(AffineSolution::Inconsistent);
    }
    let particular = Vector(back_substitute(&e, &pivots, nvars, Some(nvars), &[]));
    let free: Vec<usize> = (0..nvars).filter(|j| !pivots.contains(j)).collect();
    if free.is_empty() {
        return Ok(AffineSolution::Unique(particular));
    }
    let basis = free.iter().map(|&f| Vector(back_substitute(&e, &pivots, nvars, None, &[(f, Rational::one())]))).collect();
    Ok(AffineSolution::Underdetermined { particular, basis })
}

/// Basis of the right nullspace `{x : M x = 0}` of a rational matrix with
/// `ncols` columns.
pub fn nullspace(m: &[Vec<Rational>], ncols: usize) -> Vec<Vector> {
    if m.is_empty() {
        return (0..ncols).map(|i| Vector::unit(ncols, i)).collect();
    }
    let (e, pivots) = bareiss_echelon(integer_rows(m), ncols);
    (0..ncols)
        .filter(|j| !pivots.contains(j))
        .map(|f| Vector(back_substitute(&e, &pivots, ncols, None, &[(f, Rational::one())])))
        .collect()
}

/// Primitive integer generator of the nullspace of an integer matrix whose
/// nullspace is one-dimensional; `None` otherwise.
pub fn integer_kernel_vector(m: Vec<Vec<BigInt>>, ncols: usize) -> Option<Vec<BigInt>> {
    let (e, pivots) = bareiss_echelon(m, ncols);
    if pivots.len() + 1 != ncols {
        return None;
    }
    let f = (0..ncols).find(|j| !pivots.contains(j))?;
    let x = back_substitute(&e, &pivots, ncols, None, &[(f, Rational::one())]);
    Some(primitive_integer_row(&x))
}

// ---------------------------------------------------------------------------
// Exact circle points
// ---------------------------------------------------------------------------

/// Fixed-point helpers with `prec` fractional bits, used to pick rational
/// approximations of trigonometric values and to certify their accuracy.
mod fixed {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn one(prec: usize) -> BigInt {
        BigInt::one() << prec
    }

    fn mul(a: &BigInt, b: &BigInt, prec: usize) -> BigInt {
        (a * b) >> prec
    }

    fn div(a: &BigInt, b: &BigInt, prec: usize) -> BigInt {
        (a << prec) / b
    }

    /// `atan(1/n)` by its alternating Taylor series.
    fn atan_inv(n: u32, prec: usize) -> BigInt {
        let n = BigInt::from(n);
        let n2 = &n * &n;
        let mut term = one(prec) / &n;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &n2;
            k += 1;
        }
        sum
    }

    /// π by Machin's formula.
    pub fn pi(prec: usize) -> BigInt {
        let p = prec + 16;
        (BigInt::from(16) * atan_inv(5, p) - BigInt::from(4) * atan_inv(239, p)) >> 16
    }

    /// `(sin x, cos x)` for `|x| ≤ 1` by Taylor series.
    pub fn sin_cos(x: &BigInt, prec: usize) -> (BigInt, BigInt) {
        let x2 = mul(x, x, prec);
        let mut s = BigInt::zero();
        let mut term = x.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            s += &term;
            term = -mul(&term, &x2, prec) / BigInt::from((k + 1) * (k + 2));
            k += 2;
        }
        let mut c = BigInt::zero();
        let mut term = one(prec);
        let mut k = 0u64;
        while !term.is_zero() {
            c += &term;
            term = -mul(&term, &x2, prec) / BigInt::from((k + 1) * (k + 2));
            k += 2;
        }
        (s, c)
    }

    /// `atan(t)` for `0 ≤ t ≤ 1` using two half-angle reductions.
    pub fn atan(t: &BigInt, prec: usize) -> BigInt {
        let mut t = t.clone();
        let mut factor = 1u32;
        for _ in 0..3 {
            // atan t = 2 atan(t / (1 + sqrt(1 + t²)))
            let r = ((one(prec) << prec) + (&t * &t)).sqrt();
            t = div(&t, &(one(prec) + r), prec);
            factor *= 2;
        }
        let t2 = mul(&t, &t, prec);
        let mut sum = BigInt::zero();
        let mut pow = t.clone();
        let mut k = 0u64;
        while !pow.is_zero() {
            let term = &pow / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            pow = mul(&pow, &t2, prec);
            k += 1;
        }
        sum * BigInt::from(factor)
    }

    pub fn tan(x: &BigInt, prec: usize) -> BigInt {
        let (s, c) = sin_cos(x, prec);
        div(&s, &c, prec)
    }
}

/// Exact rational point on the unit circle within `tol` turns of the angle
/// `2π·turns`, with the smallest continued-fraction denominator that meets
/// the tolerance.
///
/// The point is `((1−t²)/(1+t²), 2t/(1+t²))` where `t` is a convergent of
/// `tan(π·r)` for the angle `r` reduced to the first quadrant; quadrant
/// rotations are exact, so `(0, any)` gives `(1, 0)` and `(1/4, any)` gives
/// `(0, 1)`.
pub fn rational_circle_point(turns: &Rational, tol: &Rational) -> Result<CirclePoint> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("circle point tolerance must be positive".into()));
    }
    if turns.is_negative() || *turns >= Rational::one() {
        return Err(Error::InvalidArgument(format!("turns {turns} outside [0, 1)")));
    }
    let four = Rational::from_integer(BigInt::from(4));
    let quarter = (turns * &four).floor();
    let k = quarter.to_integer().to_usize().unwrap_or(0);
    let r = turns - quarter / four;
    let base = if r.is_zero() { CirclePoint { c: Rational::one(), s: Rational::zero() } } else { first_quadrant_point(&r, tol) };
    let mut p = base;
    for _ in 0..k {
        p = CirclePoint { c: -p.s, s: p.c };
    }
    Ok(p)
}

/// Point for `0 < r < 1/4` turns.
fn first_quadrant_point(r: &Rational, tol: &Rational) -> CirclePoint {
    // Working precision: comfortably finer than the tolerance.
    let tol_bits = {
        let inv = (Rational::one() / tol).ceil().to_integer();
        inv.bits() as usize
    };
    let mut prec = 64 + 2 * tol_bits;
    loop {
        if let Some(t) = half_tangent_within(r, tol, prec) {
            return CirclePoint::from_half_tangent(&t);
        }
        prec *= 2;
    }
}

/// Searches the convergents of `tan(π r)` for one whose angle is within
/// `tol` turns; `None` if precision ran out first.
fn half_tangent_within(r: &Rational, tol: &Rational, prec: usize) -> Option<Rational> {
    let pi = fixed::pi(prec);
    // θ/2 = π r in fixed point.
    let half = (&pi * r.numer()) / r.denom();
    let x = fixed::tan(&half, prec);
    // Error budget of the fixed-point evaluation, in turns (generous).
    let slack = Rational::new(BigInt::from(64), BigInt::one() << prec);
    let tol_eff = tol - &slack;
    if !tol_eff.is_positive() {
        return None;
    }
    // Continued fraction of X = x / 2^prec.
    let (mut num, mut den) = (x.clone(), BigInt::one() << prec);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    while !den.is_zero() {
        let (a, rem) = num.div_rem(&den);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        let t = Rational::new(p2.clone(), q2.clone());
        // angle(t) in turns = atan(t)/π.
        let tf = (t.numer() << prec) / t.denom();
        let angle = Rational::new(fixed::atan(&tf, prec), pi.clone());
        if (angle - r).abs() <= tol_eff {
            return Some(t);
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        num = std::mem::replace(&mut den, rem);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("31.8").unwrap(), rat(318, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn fixed_point_pi() {
        let p = fixed::pi(200);
        let approx = Rational::new(p, BigInt::one() << 200);
        let lo = parse_rational("3.14159265358979323846264338327950288").unwrap();
        let hi = parse_rational("3.14159265358979323846264338327950289").unwrap();
        assert!(approx > lo && approx < hi);
    }
}
