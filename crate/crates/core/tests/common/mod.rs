//! Shared machinery for the integration suites: seeded random rational
//! expression trees evaluated both exactly and as directed enclosures.
#![allow(dead_code)]

use num_bigint::BigInt;
use pascaline::{Interval, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub enum Expr {
    Lit(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

pub fn gen_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let pick = if depth == 0 { 0 } else { rng.gen_range(0..8) };
    match pick {
        1 | 2 => Expr::Add(Box::new(gen_expr(rng, depth - 1)), Box::new(gen_expr(rng, depth - 1))),
        3 => Expr::Sub(Box::new(gen_expr(rng, depth - 1)), Box::new(gen_expr(rng, depth - 1))),
        4 | 5 => Expr::Mul(Box::new(gen_expr(rng, depth - 1)), Box::new(gen_expr(rng, depth - 1))),
        6 => Expr::Div(Box::new(gen_expr(rng, depth - 1)), Box::new(gen_expr(rng, depth - 1))),
        7 => Expr::Neg(Box::new(gen_expr(rng, depth - 1))),
        _ => {
            let num = rng.gen_range(-999i64..=999);
            let den = rng.gen_range(1i64..=999);
            Expr::Lit(Rational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
}

/// Exact value, or `None` when a division by exact zero occurs.
pub fn eval_exact(e: &Expr) -> Option<Rational> {
    use num_traits::Zero;
    Some(match e {
        Expr::Lit(q) => q.clone(),
        Expr::Add(a, b) => eval_exact(a)? + eval_exact(b)?,
        Expr::Sub(a, b) => eval_exact(a)? - eval_exact(b)?,
        Expr::Mul(a, b) => eval_exact(a)? * eval_exact(b)?,
        Expr::Div(a, b) => {
            let d = eval_exact(b)?;
            if d.is_zero() {
                return None;
            }
            eval_exact(a)? / d
        }
        Expr::Neg(a) => -eval_exact(a)?,
    })
}

/// Enclosure of the expression at working precision `p`. Errs only when a
/// divisor enclosure straddles zero at this precision.
pub fn eval_interval(e: &Expr, p: u32) -> Result<Interval, pascaline::Error> {
    Ok(match e {
        Expr::Lit(q) => Interval::from_rational(q, p),
        Expr::Add(a, b) => eval_interval(a, p)?.add(&eval_interval(b, p)?, p),
        Expr::Sub(a, b) => eval_interval(a, p)?.sub(&eval_interval(b, p)?, p),
        Expr::Mul(a, b) => eval_interval(a, p)?.mul(&eval_interval(b, p)?, p),
        Expr::Div(a, b) => eval_interval(a, p)?.div(&eval_interval(b, p)?, p)?,
        Expr::Neg(a) => eval_interval(a, p)?.neg(),
    })
}

/// Generate the next expression with a non-degenerate exact value.
pub fn next_expression(rng: &mut ChaCha8Rng, depth: u32) -> (Expr, Rational) {
    loop {
        let e = gen_expr(rng, depth);
        if let Some(v) = eval_exact(&e) {
            return (e, v);
        }
    }
}
