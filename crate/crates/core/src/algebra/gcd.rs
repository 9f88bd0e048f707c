//! Multivariate polynomial gcd over the rationals (recursive primitive PRS).

use super::poly::MPoly;
use super::rat::Rat;
use super::var::{Monomial, VarId};

/// Scales `p` so its leading coefficient is 1.
pub fn monic(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    p.div_rat(&p.leading_coeff())
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a.len() == 1 && b.len() == 1 {
        return monomial_gcd(a, b);
    }
    let Some(v) = a.vars().into_iter().chain(b.vars()).min() else {
        return MPoly::one();
    };
    let ain = a.contains_var(v);
    let bin = b.contains_var(v);
    match (ain, bin) {
        (false, false) => unreachable!("v was taken from one of the operands"),
        (true, false) => gcd(&content(a, v), b),
        (false, true) => gcd(a, &content(b, v)),
        (true, true) => {
            let ca = content(a, v);
            let cb = content(b, v);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let c = gcd(&ca, &cb);
            let g = primitive_gcd(pa, pb, v);
            monic(&c.mul(&g))
        }
    }
}

fn monomial_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let ma = a.leading().unwrap().0;
    let mb = b.leading().unwrap().0;
    let m = Monomial::from_pairs(ma.iter().filter_map(|&(v, e)| {
        let f = mb.exponent(v);
        (f > 0).then_some((v, e.min(f)))
    }));
    MPoly::term(m, Rat::one())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &MPoly, v: VarId) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &MPoly, v: VarId) -> MPoly {
    let c = content(p, v);
    monic(&p.div_exact(&c).expect("content divides"))
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
pub fn pseudo_rem(a: &MPoly, b: &MPoly, v: VarId) -> MPoly {
    let db = b.degree_in(v);
    let bc = b.coeffs_in(v);
    let lb = bc[&db].clone();
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = r.coeffs_in(v).remove(&dr).unwrap();
        // r <- lb * r - lr * v^(dr-db) * b
        let shift = Monomial::var_pow(v, dr - db);
        let t = lr.mul(b).mul_monomial(&shift);
        r = lb.mul(&r);
        r.sub_assign(&t);
    }
}

fn primitive_gcd(a: MPoly, b: MPoly, v: VarId) -> MPoly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            return primitive_part(&r1, v);
        }
        if r.degree_in(v) == 0 {
            return MPoly::one();
        }
        r0 = r1;
        r1 = primitive_part(&r, v);
    }
}
