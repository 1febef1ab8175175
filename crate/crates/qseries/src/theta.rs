//! q-Pochhammer products and Ramanujan theta functions.
//!
//! Everything here takes signed q-monomials ±q^e as arguments, never general
//! series: that is all the identities need, and it keeps sign bookkeeping
//! exact. Constructors:
//! - [`pochhammer`]: (λ; q^step)_∞ = Π (1 - λ q^{t·step})
//! - [`theta_sum`]: f(a, b) = Σ_t a^{t(t+1)/2} b^{t(t-1)/2}
//! - [`theta_product`]: the triple-product form (-a; ab)(-b; ab)(ab; ab)
//! - [`phi`], [`psi`], [`f_neg`], [`chi`]: the classical specializations

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::series::{rint, LaurentSeries, Rational};

/// Sign carried by a monomial argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A signed q-monomial ±q^e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedMonomial {
    pub sign: Sign,
    pub exp: Rational,
}

impl SignedMonomial {
    pub fn pos(exp: Rational) -> Self {
        SignedMonomial { sign: Sign::Plus, exp }
    }

    pub fn neg(exp: Rational) -> Self {
        SignedMonomial { sign: Sign::Minus, exp }
    }

    pub fn is_negative(&self) -> bool {
        self.sign == Sign::Minus
    }

    /// Flip the sign: x -> -x.
    pub fn negated(self) -> Self {
        SignedMonomial {
            sign: match self.sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            },
            exp: self.exp,
        }
    }

    /// Product of two monomials: signs multiply, exponents add.
    pub fn product(self, other: Self) -> Self {
        SignedMonomial {
            sign: if self.sign == other.sign { Sign::Plus } else { Sign::Minus },
            exp: self.exp + other.exp,
        }
    }

    /// Quotient b/a as a monomial: signs multiply, exponents subtract.
    pub fn quotient(self, other: Self) -> Self {
        SignedMonomial {
            sign: if self.sign == other.sign { Sign::Plus } else { Sign::Minus },
            exp: self.exp - other.exp,
        }
    }

    /// k-th power.
    pub fn power(self, k: u32) -> Self {
        SignedMonomial {
            sign: if self.sign == Sign::Minus && k % 2 == 1 { Sign::Minus } else { Sign::Plus },
            exp: self.exp * rint(k as i64),
        }
    }

    fn unit(&self) -> i64 {
        match self.sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// sign^k for a triangular-number power k >= 0.
    fn unit_pow(&self, k: i64) -> i64 {
        if self.sign == Sign::Minus && k.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    /// The monomial as a one-term series.
    pub fn to_series(self, order: Rational) -> Result<LaurentSeries> {
        LaurentSeries::monomial(self.unit(), self.exp, order)
    }

    /// Multiply a series by this monomial.
    pub fn apply_to(self, s: &LaurentSeries) -> LaurentSeries {
        s.mul_monomial(self.unit(), self.exp)
    }
}

/// One factor (±q^e; q^step)_∞ ^ power of a multi-factor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochFactor {
    pub mono: SignedMonomial,
    pub step: Rational,
    pub power: i32,
}

/// A product Π (±q^{e_i}; q^{step_i})_∞ ^ {p_i}; negative powers denote
/// denominator factors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub factors: Vec<PochFactor>,
}

impl PochhammerSpec {
    pub fn new() -> Self {
        PochhammerSpec { factors: Vec::new() }
    }

    pub fn factor(mut self, mono: SignedMonomial, step: Rational, power: i32) -> Self {
        self.factors.push(PochFactor { mono, step, power });
        self
    }

    /// (q^{a_1}, ..., q^{a_k}; q^m)_∞ ^ power on the integer grid.
    pub fn integer_quotient(mut self, exps: &[i64], modulus: i64, power: i32) -> Self {
        for &a in exps {
            self.factors.push(PochFactor {
                mono: SignedMonomial::pos(rint(a)),
                step: rint(modulus),
                power,
            });
        }
        self
    }
}

/// (λ; q^step)_∞ = Π_{t>=0} (1 - λ q^{t·step}) with λ = ±q^exp, truncated at
/// `order`. Factors whose first exponent lands at or beyond the order
/// contribute 1 and are skipped.
pub fn pochhammer(mono: SignedMonomial, step: Rational, order: Rational) -> Result<LaurentSeries> {
    if mono.exp <= rint(0) {
        return Err(SeriesError::DivergentProduct { exp: mono.exp });
    }
    assert!(step > rint(0), "pochhammer step must be positive");
    let scale = mono.exp.denom().lcm(step.denom());
    let bound = (order * rint(scale)).ceil().to_integer();
    if bound <= 0 {
        return Ok(LaurentSeries::zero(order));
    }
    let mut window = vec![BigInt::zero(); bound as usize];
    window[0] = BigInt::one();
    let step_idx = step.numer() * (scale / step.denom());
    let mut e_idx = mono.exp.numer() * (scale / mono.exp.denom());
    let s = mono.unit();
    while e_idx < bound {
        // in place: w <- w · (1 - s·q^{e_idx/scale})
        for i in (e_idx as usize..bound as usize).rev() {
            if !window[i - e_idx as usize].is_zero() {
                let delta = &window[i - e_idx as usize] * s;
                window[i] -= delta;
            }
        }
        e_idx += step_idx;
    }
    Ok(LaurentSeries::from_raw(scale, 0, window, order))
}

/// (λ; B)_∞ for a signed base B = ±q^w. A negative base splits into the two
/// even/odd positive-base products (λ; q^{2w})(-λ q^w; q^{2w}).
pub(crate) fn pochhammer_signed_base(
    mono: SignedMonomial,
    base: SignedMonomial,
    order: Rational,
) -> Result<LaurentSeries> {
    match base.sign {
        Sign::Plus => pochhammer(mono, base.exp, order),
        Sign::Minus => {
            let even = pochhammer(mono, base.exp * rint(2), order)?;
            let odd_mono = SignedMonomial {
                sign: mono.negated().sign,
                exp: mono.exp + base.exp,
            };
            let odd = pochhammer(odd_mono, base.exp * rint(2), order)?;
            Ok(even.mul(&odd))
        }
    }
}

/// Product of Pochhammer factors raised to integer powers.
pub fn pochhammer_multi(spec: &PochhammerSpec, order: Rational) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one(order);
    for f in &spec.factors {
        if f.power == 0 {
            continue;
        }
        let base = pochhammer(f.mono, f.step, order)?;
        acc = acc.mul(&base.pow(f.power as i64)?);
    }
    Ok(acc)
}

/// Ramanujan's general theta function
/// f(a, b) = Σ_{t=-∞}^{∞} a^{t(t+1)/2} b^{t(t-1)/2},
/// summed over every integer t whose term lands below `order`.
pub fn theta_sum(a: SignedMonomial, b: SignedMonomial, order: Rational) -> Result<LaurentSeries> {
    let sum = a.exp + b.exp;
    if sum <= rint(0) {
        return Err(SeriesError::ThetaDivergent { sum });
    }
    let tri = |t: i64| t * (t + 1) / 2;
    let term_exp = |t: i64| a.exp * rint(tri(t)) + b.exp * rint(tri(t - 1));
    let term_coeff = |t: i64| BigInt::from(a.unit_pow(tri(t)) * b.unit_pow(tri(t - 1)));

    let mut terms: Vec<(Rational, BigInt)> = Vec::new();
    // walk outward from t = 0; the exponent is a positive-definite quadratic
    // in t, so each direction eventually climbs past the order for good
    for dir in [1i64, -1] {
        let mut t = if dir == 1 { 0 } else { -1 };
        loop {
            let e = term_exp(t);
            if e < order {
                terms.push((e, term_coeff(t)));
            } else if term_exp(t + dir) >= e {
                break;
            }
            t += dir;
        }
    }
    Ok(LaurentSeries::from_terms(terms, order))
}

/// Jacobi triple product form: f(a, b) = (-a; ab)_∞ (-b; ab)_∞ (ab; ab)_∞.
pub fn theta_product(a: SignedMonomial, b: SignedMonomial, order: Rational) -> Result<LaurentSeries> {
    let sum = a.exp + b.exp;
    if sum <= rint(0) {
        return Err(SeriesError::ThetaDivergent { sum });
    }
    let ab = a.product(b);
    let f1 = pochhammer_signed_base(a.negated(), ab, order)?;
    let f2 = pochhammer_signed_base(b.negated(), ab, order)?;
    let f3 = pochhammer_signed_base(ab, ab, order)?;
    Ok(f1.mul(&f2).mul(&f3))
}

/// φ(x) = f(x, x) for a signed monomial argument.
pub fn phi_at(x: SignedMonomial, order: Rational) -> Result<LaurentSeries> {
    theta_sum(x, x, order)
}

/// ψ(x) = f(x, x³). Built directly from the sum so it works on any grid,
/// including ψ(-q^k).
pub fn psi_at(x: SignedMonomial, order: Rational) -> Result<LaurentSeries> {
    theta_sum(x, x.power(3), order)
}

/// χ(x) = (-x; x²)_∞.
pub fn chi_at(x: SignedMonomial, order: Rational) -> Result<LaurentSeries> {
    pochhammer(x.negated(), x.exp * rint(2), order)
}

/// φ(q^k) = Σ q^{k t²}.
pub fn phi(q_power: Rational, order: Rational) -> Result<LaurentSeries> {
    phi_at(SignedMonomial::pos(q_power), order)
}

/// ψ(q^k) = Σ_{t>=0} q^{k t(t+1)/2}.
pub fn psi(q_power: Rational, order: Rational) -> Result<LaurentSeries> {
    psi_at(SignedMonomial::pos(q_power), order)
}

/// f(-q^k) = f(-q^k, -q^{2k}) = (q^k; q^k)_∞.
pub fn f_neg(q_power: Rational, order: Rational) -> Result<LaurentSeries> {
    theta_sum(
        SignedMonomial::neg(q_power),
        SignedMonomial::neg(q_power * rint(2)),
        order,
    )
}

/// χ(q^k) = (-q^k; q^{2k})_∞.
pub fn chi(q_power: Rational, order: Rational) -> Result<LaurentSeries> {
    chi_at(SignedMonomial::pos(q_power), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn pos(n: i64, d: i64) -> SignedMonomial {
        SignedMonomial::pos(rat(n, d))
    }

    fn neg(n: i64, d: i64) -> SignedMonomial {
        SignedMonomial::neg(rat(n, d))
    }

    // =======================================================================
    // Pochhammer products
    // =======================================================================

    #[test]
    fn pochhammer_negative_lambda() {
        // (-q; q)_∞ below order 4 is (1+q)(1+q^2)(1+q^3)
        let p = pochhammer(neg(1, 1), rint(1), rint(4)).unwrap();
        assert_eq!(p.to_string(), "1 + q + q^2 + 2q^3");
    }

    #[test]
    fn euler_pentagonal_expansion() {
        let p = pochhammer(pos(1, 1), rint(1), rint(8)).unwrap();
        assert_eq!(p.to_string(), "1 - q - q^2 + q^5 + q^7");
    }

    #[test]
    fn single_factor_below_order() {
        let p = pochhammer(pos(2, 1), rint(2), rint(3)).unwrap();
        assert_eq!(p.to_string(), "1 - q^2");
    }

    #[test]
    fn divergent_product_is_an_error() {
        assert!(matches!(
            pochhammer(pos(0, 1), rint(1), rint(5)),
            Err(SeriesError::DivergentProduct { .. })
        ));
        assert!(matches!(
            pochhammer(pos(-1, 1), rint(1), rint(5)),
            Err(SeriesError::DivergentProduct { .. })
        ));
    }

    #[test]
    fn multi_empty_spec_is_one() {
        let one = pochhammer_multi(&PochhammerSpec::new(), rint(10)).unwrap();
        assert_eq!(one, LaurentSeries::one(rint(10)));
    }

    #[test]
    fn multi_order_twenty_eight_leading_terms() {
        let spec = PochhammerSpec::new().integer_quotient(&[6, 22], 28, 1);
        let p = pochhammer_multi(&spec, rint(24)).unwrap();
        assert_eq!(p.to_string(), "1 - q^6 - q^22");
    }

    // =======================================================================
    // Theta sums and the triple product
    // =======================================================================

    #[test]
    fn theta_sum_phi_is_squares() {
        let t = theta_sum(pos(1, 1), pos(1, 1), rint(10)).unwrap();
        assert_eq!(t.to_string(), "1 + 2q + 2q^4 + 2q^9");
    }

    #[test]
    fn theta_sum_psi_is_triangular() {
        let t = theta_sum(pos(1, 1), pos(3, 1), rint(11)).unwrap();
        assert_eq!(t.to_string(), "1 + q + q^3 + q^6 + q^10");
    }

    #[test]
    fn theta_sum_of_minus_one_vanishes() {
        for a in [pos(1, 1), pos(2, 1), pos(1, 2)] {
            let t = theta_sum(SignedMonomial::neg(rint(0)), a, rint(60)).unwrap();
            assert!(t.is_zero(), "f(-1, {:?}) should vanish identically", a);
        }
    }

    #[test]
    fn triple_product_matches_sum_for_phi() {
        let s = theta_sum(pos(1, 1), pos(1, 1), rint(40)).unwrap();
        let p = theta_product(pos(1, 1), pos(1, 1), rint(40)).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn f_neg_is_the_euler_product() {
        let sum = f_neg(rint(1), rint(30)).unwrap();
        let prod = pochhammer(pos(1, 1), rint(1), rint(30)).unwrap();
        assert_eq!(sum, prod);
        assert_eq!(sum.coefficient(rint(5)).unwrap(), BigInt::one());
        let tp = theta_product(neg(1, 1), neg(2, 1), rint(30)).unwrap();
        assert_eq!(tp, prod);
    }

    #[test]
    fn triple_product_on_quarter_grid_with_mixed_signs() {
        // the argument pair of (s3); ab = -q^{7/2} exercises the signed base
        let a = pos(1, 4);
        let b = neg(13, 4);
        let s = theta_sum(a, b, rint(20)).unwrap();
        let p = theta_product(a, b, rint(20)).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn jacobi_triple_product_small_grid() {
        let exps = [rat(1, 2), rint(1), rat(3, 2), rint(2)];
        for &ea in &exps {
            for &eb in &exps {
                for (sa, sb) in [
                    (Sign::Plus, Sign::Plus),
                    (Sign::Plus, Sign::Minus),
                    (Sign::Minus, Sign::Plus),
                    (Sign::Minus, Sign::Minus),
                ] {
                    let a = SignedMonomial { sign: sa, exp: ea };
                    let b = SignedMonomial { sign: sb, exp: eb };
                    let s = theta_sum(a, b, rint(30)).unwrap();
                    let p = theta_product(a, b, rint(30)).unwrap();
                    assert_eq!(s, p, "triple product at a={:?} b={:?}", a, b);
                }
            }
        }
    }

    #[test]
    fn named_specializations() {
        assert_eq!(phi(rint(1), rint(10)).unwrap().to_string(), "1 + 2q + 2q^4 + 2q^9");
        let psi7 = psi(rint(7), rint(50)).unwrap();
        assert_eq!(
            psi7.terms().map(|(e, _)| e.to_integer()).collect::<Vec<_>>(),
            vec![0, 7, 21, 42]
        );
        assert_eq!(chi(rint(1), rint(5)).unwrap().to_string(), "1 + q + q^3 + q^4");
        // φ(q^{7/2}) lives on the half grid
        let ph = phi(rat(7, 2), rint(20)).unwrap();
        assert_eq!(ph.coefficient(rat(7, 2)).unwrap(), BigInt::from(2));
    }

    // =======================================================================
    // Entry-30 style monomial identities, swept over a grid of arguments
    // =======================================================================

    fn grid() -> Vec<SignedMonomial> {
        let mut v = Vec::new();
        for e in [rat(1, 4), rat(1, 2), rint(1), rat(3, 2), rint(2)] {
            v.push(SignedMonomial::pos(e));
            v.push(SignedMonomial::neg(e));
        }
        v
    }

    #[test]
    fn splitting_identity_fa1() {
        // f(a,b) = f(a³b, ab³) + a·f(b/a, a⁵b³), needs (b/a).exp > 0
        let order = rint(25);
        let mut checked = 0;
        for a in grid() {
            for b in grid() {
                if b.exp <= a.exp {
                    continue;
                }
                let lhs = theta_sum(a, b, order).unwrap();
                let t1 = theta_sum(a.power(3).product(b), a.product(b.power(3)), order).unwrap();
                let t2 = theta_sum(b.quotient(a), a.power(5).product(b.power(3)), order).unwrap();
                let rhs = t1.add(&a.apply_to(&t2));
                assert_eq!(lhs, rhs, "fa1 at a={:?} b={:?}", a, b);
                checked += 1;
            }
        }
        assert!(checked >= 20);
    }

    #[test]
    fn product_identities_tf2_and_sr3() {
        let order = rint(25);
        for a in grid() {
            for b in grid() {
                // f(a,ab²)·f(b,a²b) = f(a,b)·ψ(ab)
                let lhs = theta_sum(a, a.product(b.power(2)), order)
                    .unwrap()
                    .mul(&theta_sum(b, a.power(2).product(b), order).unwrap());
                let rhs = theta_sum(a, b, order)
                    .unwrap()
                    .mul(&psi_at(a.product(b), order).unwrap());
                assert_eq!(lhs, rhs, "tf2 at a={:?} b={:?}", a, b);

                // f(a,b)·f(-a,-b) = f(-a²,-b²)·φ(-ab)
                let lhs = theta_sum(a, b, order)
                    .unwrap()
                    .mul(&theta_sum(a.negated(), b.negated(), order).unwrap());
                let rhs = theta_sum(a.power(2).negated(), b.power(2).negated(), order)
                    .unwrap()
                    .mul(&phi_at(a.product(b).negated(), order).unwrap());
                assert_eq!(lhs, rhs, "sr3 at a={:?} b={:?}", a, b);
            }
        }
    }

    #[test]
    fn squaring_identity_as3() {
        // f²(a,b) = f(a²,b²)·φ(ab) + 2a·f(b/a, a³b)·ψ(a²b²)
        let order = rint(25);
        for a in grid() {
            for b in grid() {
                if b.exp <= a.exp {
                    continue;
                }
                let f = theta_sum(a, b, order).unwrap();
                let lhs = f.mul(&f);
                let t1 = theta_sum(a.power(2), b.power(2), order)
                    .unwrap()
                    .mul(&phi_at(a.product(b), order).unwrap());
                let t2 = theta_sum(b.quotient(a), a.power(3).product(b), order)
                    .unwrap()
                    .mul(&psi_at(a.power(2).product(b.power(2)), order).unwrap());
                let rhs = t1.add(&a.apply_to(&t2).scalar_mul(2));
                assert_eq!(lhs, rhs, "as3 at a={:?} b={:?}", a, b);
            }
        }
    }
}
