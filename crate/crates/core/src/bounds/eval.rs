//! Value-level evaluators: enclosures (or exact values) for each side of
//! the catalogued inequalities, independent of any verdict machinery.
//! These back the CLI's `eval` subcommand, the interval checking paths,
//! and cross-form consistency tests.

use crate::error::Error;
use crate::exactnum::{self, binomial, factorial, ipow, ipow0, rat_nat, Natural, Rational};
use crate::rigor::{exp, log, pi_enclosure, pow, sqrt, Interval};
use crate::Result;

use super::{BoundId, Workspace};

fn iv_nat(x: &Natural) -> Interval {
    Interval::from_natural(x)
}

fn q_int(v: u64) -> Rational {
    exactnum::nat_to_rational(&Natural::from(v))
}

fn big(v: u64) -> num_bigint::BigInt {
    num_bigint::BigInt::from(v)
}

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn mul_chk(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::domain("parameter product overflows u64"))
}

/// `binom(n,k) * k^k * (n-k)^(n-k)` with the `0^0 = 1` convention.
pub fn binom_weighted(n: u64, k: u64, ws: &Workspace) -> Result<Natural> {
    if k > n {
        return Err(Error::domain(format!(
            "binom_weighted needs k <= n, got n={n} k={k}"
        )));
    }
    Ok(binomial(n, k) * ws.sp(k) * ws.sp(n - k))
}

/// Both Robbins-style factorial bounds:
/// `sqrt(2*pi*n) * n^n * e^(1/(12n+1) - n)` and the same with `1/(12n)`.
pub fn robbins_bounds(n: u64, p: u32) -> Result<(Interval, Interval)> {
    if n < 1 {
        return Err(Error::domain("robbins bounds need n >= 1"));
    }
    let w = p + 24;
    let nn = exactnum::self_pow(n);
    let root = sqrt(&pi_enclosure(w).mul(&iv_nat(&(nat(2) * nat(n))), w), w)?;
    let base = root.mul(&iv_nat(&nn), w);
    let lo_arg = Rational::new(1.into(), big(12) * big(n) + 1) - q_int(n);
    let hi_arg = Rational::new(1.into(), big(12) * big(n)) - q_int(n);
    let lower = base.mul(&exp(&Interval::from_rational(&lo_arg, w), w), w);
    let upper = base.mul(&exp(&Interval::from_rational(&hi_arg, w), w), w);
    Ok((lower.round_to(p), upper.round_to(p)))
}

/// `sqrt(m / (2*pi*(m-1)*n)) * (m^m / (m-1)^(m-1))^n`, the upper bound for
/// `binom(mn, n)`.
pub fn eq12_upper(m: u64, n: u64, p: u32) -> Result<Interval> {
    if m < 2 || n < 1 {
        return Err(Error::domain("eq12 upper bound needs m >= 2, n >= 1"));
    }
    let w = p + 24;
    let mn = mul_chk(m, n)?;
    let power = rat_nat(
        ipow(&Natural::from(m), mn)?,
        ipow(&Natural::from(m - 1), mn - n)?,
    );
    let denom = pi_enclosure(w).mul(&iv_nat(&(nat(2) * nat(m - 1) * nat(n))), w);
    let root = sqrt(&Interval::from_u64(m).div(&denom, w)?, w)?;
    Ok(root.mul(&Interval::from_rational(&power, w), w).round_to(p))
}

/// Stănică-style enclosures around `binom(mn, pn)`:
/// `U = sqrt(m / (2*pi*p*(m-p)*n)) * m^(mn) / (p^(pn) * (m-p)^((m-p)n))`
/// returned as `(e^(-1/(8n)) * U, U)`.
pub fn stanica_bounds(m: u64, pk: u64, n: u64, p: u32) -> Result<(Interval, Interval)> {
    if pk < 1 || m <= pk || n < 1 {
        return Err(Error::domain("stanica bounds need m > p >= 1, n >= 1"));
    }
    let w = p + 24;
    let mn = mul_chk(m, n)?;
    let pn = mul_chk(pk, n)?;
    let power = rat_nat(
        ipow(&Natural::from(m), mn)?,
        ipow(&Natural::from(pk), pn)? * ipow(&Natural::from(m - pk), mn - pn)?,
    );
    let denom = pi_enclosure(w).mul(&iv_nat(&(nat(2) * nat(pk) * nat(m - pk) * nat(n))), w);
    let root = sqrt(&Interval::from_u64(m).div(&denom, w)?, w)?;
    let upper = root.mul(&Interval::from_rational(&power, w), w);
    let damp = exp(
        &Interval::from_rational(&Rational::new((-1).into(), big(8) * big(n)), w),
        w,
    );
    Ok((upper.mul(&damp, w).round_to(p), upper.round_to(p)))
}

/// Hirschhorn-style factorial bounds and remainder: returns
/// `(lower, upper, r(n))` where
/// `lower = (pi^3 (8n^3+4n^2+n))^(1/6) * n^n * e^(-n)`,
/// `upper = (pi^3 (240n^3+120n^2+30n+1)/30)^(1/6) * n^n * e^(-n)`, and
/// `r(n) = 240n^2 * ((n!)^6 e^(6n) / (pi^3 n^(6n)) - 8n^3-4n^2-n - 1/30 + 11/(240n))`.
pub fn hirschhorn_bounds(n: u64, p: u32) -> Result<(Interval, Interval, Interval)> {
    if n < 2 {
        return Err(Error::domain("hirschhorn bounds need n >= 2"));
    }
    let w = p + 24;
    let pi3 = pi_enclosure(w).powi(3, w);
    let nn = exactnum::self_pow(n);
    let e_minus_n = exp(&Interval::from_i64(-i64::try_from(n).map_err(|_| Error::domain("n too large"))?), w);

    let (poly_lo, poly_hi) = hirschhorn_polys(n);
    let sixth = Interval::from_rational(&exactnum::rat(1, 6), w);
    let lower = pow(&pi3.mul(&iv_nat(&poly_lo), w), &sixth, w)?
        .mul(&iv_nat(&nn), w)
        .mul(&e_minus_n, w);
    let upper = pow(&pi3.mul(&iv_nat(&poly_hi), w).div_u64(30, w), &sixth, w)?
        .mul(&iv_nat(&nn), w)
        .mul(&e_minus_n, w);

    let r = hirschhorn_r_with(n, &factorial(n), p)?;
    Ok((lower.round_to(p), upper.round_to(p), r))
}

/// The cubics `8n^3 + 4n^2 + n` and `240n^3 + 120n^2 + 30n + 1` that
/// sandwich the sixth-power remainder.
pub(crate) fn hirschhorn_polys(n: u64) -> (Natural, Natural) {
    let n1 = nat(n);
    let n2 = &n1 * &n1;
    let n3 = &n2 * &n1;
    let lo = &n3 * nat(8) + &n2 * nat(4) + &n1;
    let hi = n3 * nat(240) + n2 * nat(120) + n1 * nat(30) + nat(1);
    (lo, hi)
}

/// The normalized remainder
/// `r(n) = 240n^2 ((n!)^6 e^(6n) / (pi^3 n^(6n)) - 8n^3 - 4n^2 - n - 1/30 + 11/(240n))`,
/// with `n!` supplied by the caller (block sweeps carry it incrementally).
/// The subtraction cancels the quantity down from ~`240n^5` to a handful,
/// so the working precision pads by `5 log2(n)` plus headroom.
pub(crate) fn hirschhorn_r_with(n: u64, fact: &Natural, p: u32) -> Result<Interval> {
    if n < 2 {
        return Err(Error::domain("remainder needs n >= 2"));
    }
    let w = p + 5 * (64 - (n + 1).leading_zeros()) + 48;
    let pi3 = pi_enclosure(w).powi(3, w);
    let n6n = ipow0(&exactnum::self_pow(n), 6);
    let f6 = ipow(fact, 6)?;
    let e6n = exp(&iv_nat(&(nat(6) * nat(n))), w);
    let x = iv_nat(&f6).mul(&e6n, w).div(&pi3.mul(&iv_nat(&n6n), w), w)?;
    let shift = exactnum::nat_to_rational(&hirschhorn_polys(n).0) + exactnum::rat(1, 30)
        - Rational::new(11.into(), big(240) * big(n));
    Ok(x.sub(&Interval::from_rational(&shift, w), w)
        .mul(&iv_nat(&(nat(240) * nat(n) * nat(n))), w)
        .round_to(p))
}

/// `sqrt(2/pi) * 2^n / sqrt(n)`, the central upper bound for `binom(n,k)`.
pub fn thm22_rhs(n: u64, p: u32) -> Result<Interval> {
    if n < 1 {
        return Err(Error::domain("rhs needs n >= 1"));
    }
    let w = p + 16;
    let t = Interval::from_u64(2).div(&pi_enclosure(w).mul(&Interval::from_u64(n), w), w)?;
    let shift = i64::try_from(n).map_err(|_| Error::domain("n too large"))?;
    Ok(sqrt(&t, w)?.scale2(shift).round_to(p))
}

/// `m / sqrt(2*pi*(m-1)*n) * m^n / (m-1)^(n(m-1)/m)` with the fractional
/// exponent split into an exact integer part and `exp((s/m) ln(m-1))`.
pub fn thm23_rhs(m: u64, n: u64, p: u32) -> Result<Interval> {
    if m < 3 || n < 1 {
        return Err(Error::domain("rhs needs m >= 3, n >= 1"));
    }
    let w = p + 24;
    let e_total = mul_chk(n, m - 1)?;
    let (q, s) = (e_total / m, e_total % m);
    let power = rat_nat(ipow(&Natural::from(m), n)?, ipow(&Natural::from(m - 1), q)?);
    let denom = pi_enclosure(w).mul(&iv_nat(&(nat(2) * nat(m - 1) * nat(n))), w);
    let root = sqrt(
        &iv_nat(&(nat(m) * nat(m))).div(&denom, w)?,
        w,
    )?;
    let frac = exp(
        &log(&Interval::from_u64(m - 1), w)?
            .mul(&Interval::from_rational(&Rational::new(s.into(), m.into()), w), w),
        w,
    );
    root.mul(&Interval::from_rational(&power, w), w)
        .div(&frac, w)
        .map(|iv| iv.round_to(p))
}

/// `(6n^2 - 5(k-1)) * n * (n-1)^(n-1) / (6n^2)` as an exact rational.
/// Negative if `k` is absurdly large; callers compare, not assume.
pub fn thm21_rational_rhs(n: u64, k: u64) -> Result<Rational> {
    if n < 2 || k < 1 {
        return Err(Error::domain("rational rhs needs n >= 2, k >= 1"));
    }
    let six_n2 = Rational::from_integer(big(6) * big(n) * big(n));
    let scale = &six_n2 - Rational::from_integer(big(5) * big(k - 1));
    let base = Natural::from(n) * ipow(&Natural::from(n - 1), n - 1)?;
    Ok(scale * exactnum::nat_to_rational(&base) / six_n2)
}

/// `e^(-11(k-1)/(12n^2)) * n * (n-1)^(n-1)` as an enclosure.
pub fn thm21_exp_rhs(n: u64, k: u64, p: u32) -> Result<Interval> {
    if n < 2 || k < 1 {
        return Err(Error::domain("exp rhs needs n >= 2, k >= 1"));
    }
    let w = p + 16;
    let arg = Rational::new(-(big(11) * big(k - 1)), big(12) * big(n) * big(n));
    let base = Natural::from(n) * ipow(&Natural::from(n - 1), n - 1)?;
    Ok(exp(&Interval::from_rational(&arg, w), w)
        .mul(&iv_nat(&base), w)
        .round_to(p))
}

fn delta_24(n: u64, k: u64) -> Result<u64> {
    if k < n / 5 || k > n {
        return Err(Error::domain(format!(
            "needs floor(n/5) <= k <= n, got n={n} k={k}"
        )));
    }
    Ok(k - n / 5)
}

/// `1 - 5d/(6n^2)` exactly.
fn thm24_scale(n: u64, d: u64) -> Rational {
    let six_n2 = big(6) * big(n) * big(n);
    Rational::new(&six_n2 - big(5) * big(d), six_n2)
}

/// `e^(-11(k - floor(n/5))/(12n^2)) * n^n / sqrt(n)` as an enclosure.
pub fn thm24_exp_rhs(n: u64, k: u64, p: u32) -> Result<Interval> {
    let d = delta_24(n, k)?;
    let w = p + 16;
    let arg = Rational::new(-(big(11) * big(d)), big(12) * big(n) * big(n));
    let nn = exactnum::self_pow(n);
    exp(&Interval::from_rational(&arg, w), w)
        .mul(&iv_nat(&nn), w)
        .div(&sqrt(&Interval::from_u64(n), w)?, w)
        .map(|iv| iv.round_to(p))
}

/// `(1 - 5(k - floor(n/5))/(6n^2)) * n^n / sqrt(n)` as an enclosure.
pub fn thm24_rational_rhs(n: u64, k: u64, p: u32) -> Result<Interval> {
    let d = delta_24(n, k)?;
    let w = p + 16;
    let scale = thm24_scale(n, d);
    let nn = exactnum::self_pow(n);
    Interval::from_rational(&(scale * exactnum::nat_to_rational(&nn)), w)
        .div(&sqrt(&Interval::from_u64(n), w)?, w)
        .map(|iv| iv.round_to(p))
}

/// `(1 - 5(k - floor(n/5))/(6n^2)) * 2^n / sqrt(n)` as an enclosure.
pub fn thm24_pow2_rhs(n: u64, k: u64, p: u32) -> Result<Interval> {
    let d = delta_24(n, k)?;
    let w = p + 16;
    let scale = thm24_scale(n, d);
    let shift = i64::try_from(n).map_err(|_| Error::domain("n too large"))?;
    Interval::from_rational(&scale, w)
        .scale2(shift)
        .div(&sqrt(&Interval::from_u64(n), w)?, w)
        .map(|iv| iv.round_to(p))
}

/// The two sides of the ratio comparison
/// `e^(11/(12n^2)) * g(k+1) < g(k)` with `g(j) = binom(n,j) j^j (n-j)^(n-j)`.
pub fn lemma21_sides(n: u64, k: u64, p: u32, ws: &Workspace) -> Result<(Interval, Natural)> {
    if n < 3 || k + 1 > n / 2 {
        return Err(Error::domain("ratio sides need n >= 3, k + 1 <= floor(n/2)"));
    }
    let w = p + 16;
    let grow = exp(
        &Interval::from_rational(&Rational::new(11.into(), big(12) * big(n) * big(n)), w),
        w,
    );
    let lhs = grow.mul(&iv_nat(&binom_weighted(n, k + 1, ws)?), w).round_to(p);
    Ok((lhs, binom_weighted(n, k, ws)?))
}

fn fmt_iv(iv: &Interval) -> String {
    format!("{iv:.30}")
}

fn fmt_q(q: &Rational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{} = {}", q, Interval::from_rational(q, 96))
    }
}

/// Labeled values for one bound at one parameter tuple — what `eval`
/// prints. Exact sides are rendered exactly; transcendental sides as
/// decimal enclosures.
pub fn describe(
    bound: BoundId,
    params: &[u64],
    p: u32,
    ws: &Workspace,
) -> Result<Vec<(String, String)>> {
    bound.hypothesis(params)?;
    let mut out: Vec<(String, String)> = Vec::new();
    let mut push = |label: &str, value: String| out.push((label.to_string(), value));
    match bound {
        BoundId::RobbinsLower | BoundId::RobbinsUpper => {
            let n = params[0];
            let (lower, upper) = robbins_bounds(n, p)?;
            if bound == BoundId::RobbinsLower {
                push("sqrt(2 pi n) n^n e^(1/(12n+1) - n)", fmt_iv(&lower));
                push("n!", factorial(n).to_string());
            } else {
                push("n!", factorial(n).to_string());
                push("sqrt(2 pi n) n^n e^(1/(12n) - n)", fmt_iv(&upper));
            }
        }
        BoundId::HirschhornLower | BoundId::HirschhornUpper | BoundId::HirschhornRemainder => {
            let n = params[0];
            let (lower, upper, r) = hirschhorn_bounds(n, p)?;
            match bound {
                BoundId::HirschhornLower => {
                    push("(pi^3 (8n^3+4n^2+n))^(1/6) (n/e)^n", fmt_iv(&lower));
                    push("n!", factorial(n).to_string());
                }
                BoundId::HirschhornUpper => {
                    push("n!", factorial(n).to_string());
                    push("(pi^3 (240n^3+120n^2+30n+1)/30)^(1/6) (n/e)^n", fmt_iv(&upper));
                }
                _ => {
                    push("r(n)", fmt_iv(&r));
                    push("window", "(5, 11)".to_string());
                }
            }
        }
        BoundId::Eq12Upper => {
            let (m, n) = (params[0], params[1]);
            push("binom(mn, n)", binomial(mul_chk(m, n)?, n).to_string());
            push("upper", fmt_iv(&eq12_upper(m, n, p)?));
        }
        BoundId::StanicaLower | BoundId::StanicaUpper => {
            let (m, pk, n) = (params[0], params[1], params[2]);
            let (lower, upper) = stanica_bounds(m, pk, n, p)?;
            let c = binomial(mul_chk(m, n)?, mul_chk(pk, n)?);
            if bound == BoundId::StanicaLower {
                push("e^(-1/(8n)) U(m,p,n)", fmt_iv(&lower));
                push("binom(mn, pn)", c.to_string());
            } else {
                push("binom(mn, pn)", c.to_string());
                push("U(m,p,n)", fmt_iv(&upper));
            }
        }
        BoundId::Thm21Rational => {
            let (n, k) = (params[0], params[1]);
            push(
                "binom(n,k) k^k (n-k)^(n-k)",
                binom_weighted(n, k, ws)?.to_string(),
            );
            push(
                "(1 - 5(k-1)/(6n^2)) n (n-1)^(n-1)",
                fmt_q(&thm21_rational_rhs(n, k)?),
            );
        }
        BoundId::Thm21Exp => {
            let (n, k) = (params[0], params[1]);
            push(
                "binom(n,k) k^k (n-k)^(n-k)",
                binom_weighted(n, k, ws)?.to_string(),
            );
            push(
                "e^(-11(k-1)/(12n^2)) n (n-1)^(n-1)",
                fmt_iv(&thm21_exp_rhs(n, k, p)?),
            );
        }
        BoundId::Thm22 => {
            let (n, k) = (params[0], params[1]);
            push("binom(n,k)", binomial(n, k).to_string());
            push("sqrt(2/pi) 2^n / sqrt(n)", fmt_iv(&thm22_rhs(n, p)?));
        }
        BoundId::Thm22Weak => {
            let (n, k) = (params[0], params[1]);
            let c = binomial(n, k);
            push(
                "25 binom(n,k)^2 n",
                (Natural::from(25u32) * &c * &c * Natural::from(n)).to_string(),
            );
            push(
                "16 * 4^n",
                (Natural::from(16u32) * ipow(&Natural::from(4u32), n)?).to_string(),
            );
        }
        BoundId::Thm23 => {
            let (m, n) = (params[0], params[1]);
            push(
                "binom(n, floor(n/m))",
                binomial(n, n / m).to_string(),
            );
            push(
                "m/sqrt(2 pi (m-1) n) m^n (m-1)^(-n(m-1)/m)",
                fmt_iv(&thm23_rhs(m, n, p)?),
            );
        }
        BoundId::Thm24Rational => {
            let (n, k) = (params[0], params[1]);
            push(
                "binom(n,k) k^k (n-k)^(n-k) sqrt(n)",
                fmt_iv(
                    &Interval::from_natural(&binom_weighted(n, k, ws)?)
                        .mul(&sqrt(&Interval::from_u64(n), p + 8)?, p + 8)
                        .round_to(p),
                ),
            );
            push(
                "(1 - 5(k - floor(n/5))/(6n^2)) n^n",
                fmt_q(
                    &(thm24_scale(n, k - n / 5)
                        * exactnum::nat_to_rational(&exactnum::self_pow(n))),
                ),
            );
        }
        BoundId::Thm24Exp => {
            let (n, k) = (params[0], params[1]);
            push(
                "binom(n,k) k^k (n-k)^(n-k)",
                binom_weighted(n, k, ws)?.to_string(),
            );
            push(
                "e^(-11(k - floor(n/5))/(12n^2)) n^n / sqrt(n)",
                fmt_iv(&thm24_exp_rhs(n, k, p)?),
            );
        }
        BoundId::Thm24Pow2 => {
            let (n, k) = (params[0], params[1]);
            let c = binomial(n, k);
            let six = nat(6) * nat(n) * nat(n);
            let b = &six - nat(5) * nat(k - n / 5);
            push(
                "(6n^2 binom(n,k))^2 n",
                (ipow0(&(&six * &c), 2) * Natural::from(n)).to_string(),
            );
            push(
                "(6n^2 - 5(k - floor(n/5)))^2 4^n",
                (ipow0(&b, 2) * ipow(&Natural::from(4u32), n)?).to_string(),
            );
        }
        BoundId::Corollary21 => {
            let (n, k) = (params[0], params[1]);
            push(
                "(binom(n,k) k^k (n-k)^(n-k))^2",
                ipow0(&binom_weighted(n, k, ws)?, 2).to_string(),
            );
            push(
                "n^(2n-1)",
                ipow(&Natural::from(n), mul_chk(2, n)? - 1)?.to_string(),
            );
        }
        BoundId::Lemma21Ratio => {
            let (n, k) = (params[0], params[1]);
            let (lhs, rhs) = lemma21_sides(n, k, p, ws)?;
            push("e^(11/(12n^2)) g(k+1)", fmt_iv(&lhs));
            push("g(k)", rhs.to_string());
        }
        BoundId::Lemma22 => {
            let (k, r) = (params[0], params[1]);
            let nn = mul_chk(5, k)?
                .checked_add(r)
                .ok_or_else(|| Error::domain("5k + r overflows"))?;
            push(
                "(binom(5k+r,k) k^k (4k+r)^(4k+r))^2",
                ipow0(&(binomial(nn, k) * ws.sp(k) * ws.sp(4 * k + r)), 2).to_string(),
            );
            push(
                "(5k+r)^(2(5k+r)-1)",
                ipow(&Natural::from(nn), mul_chk(2, nn)? - 1)?.to_string(),
            );
        }
        BoundId::Lemma23 => {
            let (n, k) = (params[0], params[1]);
            push("n^n", exactnum::self_pow(n).to_string());
            push(
                "2^n k^k (n-k)^(n-k)",
                (ipow(&Natural::from(2u32), n)? * ws.sp(k) * ws.sp(n - k)).to_string(),
            );
        }
        BoundId::Ineq21 => {
            let m = params[0];
            let series = Rational::from_integer(1.into())
                - Rational::new(1.into(), big(2) * big(m))
                + Rational::new(1.into(), big(3) * big(m) * big(m))
                - Rational::new(1.into(), big(4) * big(m) * big(m) * big(m));
            push("1 - 1/(2m) + 1/(3m^2) - 1/(4m^3)", fmt_q(&series));
            let w = p + 16;
            let lg = log(
                &Interval::from_rational(&Rational::new(big(m) + 1, big(m)), w),
                w,
            )?;
            push(
                "m ln((m+1)/m)",
                fmt_iv(&lg.mul(&Interval::from_u64(m), w).round_to(p)),
            );
        }
        BoundId::Ineq23 => {
            let m = params[0];
            let series = Rational::from_integer((-1).into())
                + Rational::new(1.into(), big(2) * big(m))
                + Rational::new(1.into(), big(6) * big(m) * big(m))
                + Rational::new(1.into(), big(12) * big(m) * big(m) * big(m));
            push("-1 + 1/(2m) + 1/(6m^2) + 1/(12m^3)", fmt_q(&series));
            let w = p + 16;
            let lg = log(
                &Interval::from_rational(&Rational::new(big(m - 1), big(m)), w),
                w,
            )?;
            push(
                "(m-1) ln((m-1)/m)",
                fmt_iv(&lg.mul(&Interval::from_u64(m - 1), w).round_to(p)),
            );
        }
        BoundId::Ineq25 => {
            let (n, k) = (params[0], params[1]);
            let (x, quad, lin) = super::check::ineq25_values(n, k);
            let w = p + 16;
            push(
                "e^(-x)",
                fmt_iv(&exp(&Interval::from_rational(&-&x, w), w).round_to(p)),
            );
            push("1 - x + x^2/2", fmt_q(&quad));
            push("1 - 5(k-1)/(6n^2)", fmt_q(&lin));
        }
        BoundId::Ineq26 => {
            let (m, r, n) = (params[0], params[1], params[2]);
            let (low, prod, high) = super::check::ineq26_values(m, r, n)?;
            push("(m/(m-1))^r (n+1-r)/(n+1)", fmt_q(&low));
            push("prod_(j<r) (n-j)/(n - (n-r)/m - j)", fmt_q(&prod));
            push("(m/(m-1))^r", fmt_q(&high));
        }
        BoundId::Ineq27 => {
            let (k, r) = (params[0], params[1]);
            let (lhs, rhs_scale) = super::check::ineq27_parts(k, r)?;
            push("N^3 (240N^3 + 120N^2 + 30N + 1)", lhs.to_string());
            let w = p + 16;
            push(
                "30 pi^3 (8k^3+4k^2+k)(8M^3+4M^2+M)",
                fmt_iv(
                    &pi_enclosure(w)
                        .powi(3, w)
                        .mul(&iv_nat(&rhs_scale), w)
                        .round_to(p),
                ),
            );
        }
        BoundId::Ineq28 => {
            let n = params[0];
            push("f(n)", crate::search::f_of_n(n)?.to_string());
            push("floor(n/2) - 1", (n / 2 - 1).to_string());
        }
    }
    Ok(out)
}
