//! Exact truncated Laurent series in q^{1/D} over arbitrary-precision integers.
//!
//! A [`LaurentSeries`] stores coefficients on the exponent grid (1/D)·Z for a
//! per-series denominator `scale = D`. Binary operations promote both operands
//! to the lcm of their grids. The `order` field is an exclusive upper bound:
//! every coefficient at an exponent strictly below `order` is exact, and
//! nothing at or above `order` is ever exposed. Every operation computes the
//! tightest correct output order rather than keeping the input order, so an
//! identity check can never report a false positive from stale truncation
//! bookkeeping.

use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::Ratio;
use num::traits::{One, Signed, Zero};

use crate::error::{Result, SeriesError};

/// Exact rational exponent. Stored reduced with a positive denominator.
pub type Rational = Ratio<i64>;

/// Shorthand for `Rational::new(n, d)`.
pub fn rat(n: i64, d: i64) -> Rational {
    Ratio::new(n, d)
}

/// Shorthand for an integer exponent.
pub fn rint(n: i64) -> Rational {
    Ratio::from_integer(n)
}

/// Truncated Laurent series: coefficients of q^{idx/scale} for
/// idx = min_exp, min_exp+1, ... stored densely in `coeffs`.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    scale: i64,
    min_exp: i64,
    coeffs: Vec<BigInt>,
    order: Rational,
}

/// Smallest grid index at or above `order`, i.e. the exclusive storage bound
/// for a series of the given scale.
fn exp_bound(order: Rational, scale: i64) -> i64 {
    (order * Ratio::from_integer(scale)).ceil().to_integer()
}

impl LaurentSeries {
    /// The zero series on the integer grid, exact below `order`.
    pub fn zero(order: Rational) -> Self {
        LaurentSeries { scale: 1, min_exp: 0, coeffs: Vec::new(), order }
    }

    fn zero_scaled(scale: i64, order: Rational) -> Self {
        LaurentSeries { scale, min_exp: 0, coeffs: Vec::new(), order }
    }

    /// The constant series 1, exact below `order`.
    pub fn one(order: Rational) -> Self {
        let mut s = LaurentSeries { scale: 1, min_exp: 0, coeffs: vec![BigInt::one()], order };
        s.trim();
        s
    }

    /// Single term c·q^e. The grid is inferred from the exponent denominator.
    pub fn monomial(c: impl Into<BigInt>, e: Rational, order: Rational) -> Result<Self> {
        if order <= e {
            return Err(SeriesError::EmptyWindow { exp: e, order });
        }
        let scale = *e.denom();
        let mut s = LaurentSeries {
            scale,
            min_exp: *e.numer(),
            coeffs: vec![c.into()],
            order,
        };
        s.trim();
        Ok(s)
    }

    /// Dense window constructor used by the product builders.
    pub(crate) fn from_raw(scale: i64, min_exp: i64, coeffs: Vec<BigInt>, order: Rational) -> Self {
        let mut s = LaurentSeries { scale, min_exp, coeffs, order };
        s.trim();
        s
    }

    /// Build a series from (exponent, coefficient) pairs; the grid is the lcm
    /// of the exponent denominators. Terms at or above `order` are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, BigInt)>, order: Rational) -> Self {
        let terms: Vec<(Rational, BigInt)> = terms.into_iter().collect();
        let mut scale = 1i64;
        for (e, _) in &terms {
            scale = scale.lcm(e.denom());
        }
        let bound = exp_bound(order, scale);
        let mut idx_terms: Vec<(i64, BigInt)> = Vec::with_capacity(terms.len());
        let mut lo = i64::MAX;
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let idx = e.numer() * (scale / e.denom());
            if idx >= bound {
                continue;
            }
            lo = lo.min(idx);
            idx_terms.push((idx, c));
        }
        if idx_terms.is_empty() {
            return LaurentSeries::zero_scaled(scale, order);
        }
        let len = (bound - lo) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (idx, c) in idx_terms {
            coeffs[(idx - lo) as usize] += c;
        }
        let mut s = LaurentSeries { scale, min_exp: lo, coeffs, order };
        s.trim();
        s
    }

    /// Exclusive guarantee bound: coefficients are exact strictly below this.
    pub fn order(&self) -> Rational {
        self.order
    }

    /// Exponent grid denominator D.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// True when no nonzero coefficient is known below the order.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent of the lowest nonzero term, if any.
    pub fn valuation(&self) -> Option<Rational> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| rat(self.min_exp + i as i64, self.scale))
    }

    /// Valuation for order bookkeeping: known-zero series act like O(q^order).
    fn valuation_or_order(&self) -> Rational {
        self.valuation().unwrap_or(self.order)
    }

    fn trim(&mut self) {
        let bound = exp_bound(self.order, self.scale);
        if self.min_exp + self.coeffs.len() as i64 > bound {
            let keep = (bound - self.min_exp).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    /// Exact coefficient of q^e. Zero off-grid or off-window; exponents at or
    /// beyond the order are an error, never a silent zero.
    pub fn coefficient(&self, e: Rational) -> Result<BigInt> {
        if e >= self.order {
            return Err(SeriesError::BeyondTruncation { exp: e, order: self.order });
        }
        let scaled = e * Ratio::from_integer(self.scale);
        if !scaled.is_integer() {
            return Ok(BigInt::zero());
        }
        let idx = scaled.to_integer() - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return Ok(BigInt::zero());
        }
        Ok(self.coeffs[idx as usize].clone())
    }

    /// Nonzero terms in ascending exponent order, all strictly below `order`.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &BigInt)> {
        let scale = self.scale;
        let min = self.min_exp;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (rat(min + i as i64, scale), c))
    }

    /// Same coefficients on a finer grid. `new_scale` must be a multiple of
    /// the current scale.
    pub fn rescaled(&self, new_scale: i64) -> Self {
        assert!(new_scale > 0 && new_scale % self.scale == 0, "rescale target must refine the grid");
        let k = new_scale / self.scale;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_mul(k as usize)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * k as usize] = c.clone();
            }
        }
        let mut s = LaurentSeries {
            scale: new_scale,
            min_exp: self.min_exp * k,
            coeffs,
            order: self.order,
        };
        s.trim();
        s
    }

    /// Reduce the grid to the coarsest one carrying every nonzero term.
    pub fn normalized(&self) -> Self {
        let mut g = 0i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.min_exp + i as i64));
            }
        }
        let g = g.gcd(&self.scale);
        if g == 1 {
            return self.clone();
        }
        let new_scale = self.scale / g;
        let lo = self.valuation().map(|v| *v.numer() * (new_scale / v.denom())).unwrap_or(0);
        let bound = exp_bound(self.order, new_scale);
        let mut coeffs = vec![BigInt::zero(); (bound - lo).max(0) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (self.min_exp + i as i64) / g - lo;
                coeffs[idx as usize] = c.clone();
            }
        }
        let mut s = LaurentSeries { scale: new_scale, min_exp: lo, coeffs, order: self.order };
        s.trim();
        s
    }

    fn promoted(&self, other: &Self) -> (Self, Self) {
        let l = self.scale.lcm(&other.scale);
        (self.rescaled(l), other.rescaled(l))
    }

    /// Coefficientwise sum; result order is min(order_a, order_b).
    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.promoted(other);
        let order = a.order.min(b.order);
        let bound = exp_bound(order, a.scale);
        if a.coeffs.is_empty() && b.coeffs.is_empty() {
            return LaurentSeries::zero_scaled(a.scale, order);
        }
        let lo = match (a.coeffs.is_empty(), b.coeffs.is_empty()) {
            (true, false) => b.min_exp,
            (false, true) => a.min_exp,
            _ => a.min_exp.min(b.min_exp),
        };
        let mut coeffs = vec![BigInt::zero(); (bound - lo).max(0) as usize];
        for (src, min) in [(&a, a.min_exp), (&b, b.min_exp)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let idx = min + i as i64;
                if idx < bound && !c.is_zero() {
                    coeffs[(idx - lo) as usize] += c;
                }
            }
        }
        let mut s = LaurentSeries { scale: a.scale, min_exp: lo, coeffs, order };
        s.trim();
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = -std::mem::take(c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply by the single term c·q^e. Exact: the order shifts by e.
    pub fn mul_monomial(&self, c: impl Into<BigInt>, e: Rational) -> Self {
        let c = c.into();
        let order = self.order + e;
        if c.is_zero() {
            return LaurentSeries::zero_scaled(self.scale, order);
        }
        let scale = self.scale.lcm(e.denom());
        let a = self.rescaled(scale);
        let shift = e.numer() * (scale / e.denom());
        let mut s = LaurentSeries {
            scale,
            min_exp: a.min_exp + shift,
            coeffs: a.coeffs.iter().map(|x| x * &c).collect(),
            order,
        };
        s.trim();
        s
    }

    /// Multiply by a plain integer.
    pub fn scalar_mul(&self, c: i64) -> Self {
        self.mul_monomial(c, rint(0))
    }

    /// Cauchy product. The output order accounts for both truncation bounds
    /// and both valuations, so every reported coefficient is exact.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.promoted(other);
        let order = (a.order + b.valuation_or_order()).min(b.order + a.valuation_or_order());
        if a.is_zero() || b.is_zero() {
            return LaurentSeries::zero_scaled(a.scale, order);
        }
        let bound = exp_bound(order, a.scale);
        let lo = a.min_exp + b.min_exp;
        if bound <= lo {
            return LaurentSeries::zero_scaled(a.scale, order);
        }
        let mut coeffs = vec![BigInt::zero(); (bound - lo) as usize];
        // Schoolbook over nonzero entries only; theta-style operands are
        // sparse so this skips most index pairs.
        let a_terms: Vec<(i64, &BigInt)> = a
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (a.min_exp + i as i64, c))
            .collect();
        for (j, cb) in b.coeffs.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let jb = b.min_exp + j as i64;
            for &(ia, ca) in &a_terms {
                let k = ia + jb;
                if k >= bound {
                    break;
                }
                coeffs[(k - lo) as usize] += ca * cb;
            }
        }
        let mut s = LaurentSeries { scale: a.scale, min_exp: lo, coeffs, order };
        s.trim();
        s
    }

    /// Multiplicative inverse. Requires the lowest nonzero coefficient to be
    /// ±1; a valuation of q^v costs 2v of truncation order, which is the
    /// exact guarantee the recurrence provides.
    pub fn inverse(&self) -> Result<Self> {
        let v_idx = match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => self.min_exp + i as i64,
            None => return Err(SeriesError::NonInvertible),
        };
        let lead = &self.coeffs[(v_idx - self.min_exp) as usize];
        if !lead.magnitude().is_one() {
            return Err(SeriesError::NonInvertible);
        }
        let sign_neg = lead.is_negative();
        let bound = exp_bound(self.order, self.scale);
        let order = rat(bound - 2 * v_idx, self.scale);
        let len = bound - v_idx; // window of u = ±q^{-v}·self, starting at 1
        if len <= 0 {
            return Ok(LaurentSeries::zero_scaled(self.scale, order));
        }
        let len = len as usize;
        // u_k = s·a_{k+v}; c_0 = 1, c_n = -Σ_{k=1..n} u_k c_{n-k}
        let u = |k: usize| -> BigInt {
            let idx = v_idx + k as i64 - self.min_exp;
            if idx < 0 || idx as usize >= self.coeffs.len() {
                BigInt::zero()
            } else if sign_neg {
                -&self.coeffs[idx as usize]
            } else {
                self.coeffs[idx as usize].clone()
            }
        };
        let mut inv = vec![BigInt::zero(); len];
        inv[0] = BigInt::one();
        for n in 1..len {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                let uk = u(k);
                if uk.is_zero() || inv[n - k].is_zero() {
                    continue;
                }
                acc += uk * &inv[n - k];
            }
            inv[n] = -acc;
        }
        if sign_neg {
            for c in &mut inv {
                *c = -std::mem::take(c);
            }
        }
        let mut s = LaurentSeries { scale: self.scale, min_exp: -v_idx, coeffs: inv, order };
        s.trim();
        Ok(s)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(LaurentSeries::one(self.order));
        }
        let (mut base, mut e) = if n < 0 {
            (self.inverse()?, n.unsigned_abs())
        } else {
            (self.clone(), n as u64)
        };
        let mut acc: Option<LaurentSeries> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Substitution q -> q^k: exponents and the order both scale by k.
    pub fn substitute_power(&self, k: u32) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let k = k as i64;
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_mul(k as usize)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * k as usize] = c.clone();
            }
        }
        let mut s = LaurentSeries {
            scale: self.scale,
            min_exp: self.min_exp * k,
            coeffs,
            order: self.order * Ratio::from_integer(k),
        };
        s.trim();
        s.normalized()
    }

    /// Substitution q -> -q. Defined only when every nonzero term sits at an
    /// integer exponent.
    pub fn substitute_negate(&self) -> Result<Self> {
        let n = self.normalized();
        if n.scale != 1 {
            let exp = n
                .terms()
                .find(|(e, _)| !e.is_integer())
                .map(|(e, _)| e)
                .expect("scale > 1 implies a fractional term");
            return Err(SeriesError::FractionalGrid { exp });
        }
        let mut out = n.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let e = n.min_exp + i as i64;
            if e.rem_euclid(2) == 1 {
                *c = -std::mem::take(c);
            }
        }
        Ok(out)
    }

    /// Extract the arithmetic progression m·n + r of exponents:
    /// Σ c_{mn+r} q^n. Integer grid only.
    pub fn extract_progression(&self, m: u32, r: u32) -> Result<Self> {
        assert!(r < m, "residue must satisfy r < m");
        let n = self.normalized();
        if n.scale != 1 {
            let exp = n
                .terms()
                .find(|(e, _)| !e.is_integer())
                .map(|(e, _)| e)
                .expect("scale > 1 implies a fractional term");
            return Err(SeriesError::ProgressionOffGrid { exp });
        }
        let m_i = m as i64;
        let r_i = r as i64;
        let order = (n.order - rint(r_i)) / rint(m_i);
        let terms = n
            .terms()
            .filter(|(e, _)| (e.to_integer() - r_i).rem_euclid(m_i) == 0)
            .map(|(e, c)| (rint((e.to_integer() - r_i).div_euclid(m_i)), c.clone()))
            .collect::<Vec<_>>();
        Ok(LaurentSeries::from_terms(terms, order))
    }

    /// True when all coefficients agree strictly below min(order, order).
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// First exponent (ascending) where the two series differ below the
    /// common guarantee bound, with both coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Rational, BigInt, BigInt)> {
        let (a, b) = self.promoted(other);
        let order = a.order.min(b.order);
        let bound = exp_bound(order, a.scale);
        let lo = match (a.coeffs.is_empty(), b.coeffs.is_empty()) {
            (true, true) => return None,
            (true, false) => b.min_exp,
            (false, true) => a.min_exp,
            (false, false) => a.min_exp.min(b.min_exp),
        };
        let zero = BigInt::zero();
        for idx in lo..bound {
            let ca = a.get_idx(idx).unwrap_or(&zero);
            let cb = b.get_idx(idx).unwrap_or(&zero);
            if ca != cb {
                return Some((rat(idx, a.scale), ca.clone(), cb.clone()));
            }
        }
        None
    }

    fn get_idx(&self, idx: i64) -> Option<&BigInt> {
        let i = idx - self.min_exp;
        if i < 0 || i as usize >= self.coeffs.len() {
            None
        } else {
            Some(&self.coeffs[i as usize])
        }
    }
}

/// Equality compares coefficients strictly below the smaller order, after
/// promoting both series to the common grid.
impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

fn fmt_exp(e: Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_integer() {
        let n = e.to_integer();
        if n == 1 {
            write!(f, "q")
        } else if n > 1 {
            write!(f, "q^{}", n)
        } else {
            write!(f, "q^{{{}}}", n)
        }
    } else {
        write!(f, "q^{{{}/{}}}", e.numer(), e.denom())
    }
}

/// ASCII rendering in ascending exponent order: "1 + 2q + 2q^4 - q^{13/4}".
impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            if e.is_zero() {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}", mag)?;
                }
                fmt_exp(e, f)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
