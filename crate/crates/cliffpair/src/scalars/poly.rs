//! Dense univariate polynomials over a [`Field`], coefficients low to high.
//!
//! A polynomial is a plain `Vec` of field elements with no trailing zeros;
//! the zero polynomial is the empty vector.

use super::Field;

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F>) -> Poly<F> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<F: Field>(p: &Poly<F>) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F> {
    trim(f, vec![c])
}

/// `X^n`.
pub fn monomial<F: Field>(f: &F, n: usize) -> Poly<F> {
    let mut p = vec![f.zero(); n + 1];
    p[n] = f.one();
    p
}

pub fn add<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let db = degree::<F>(b).expect("polynomial division by zero");
    let lead_inv = f.inv(&b[db]).expect("leading coefficient is nonzero");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree::<F>(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, bi));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn rem<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    divrem(f, a, b).1
}

pub fn make_monic<F: Field>(f: &F, a: &Poly<F>) -> Poly<F> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => scale(f, a, &f.inv(lead).expect("nonzero leading coefficient")),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// `(g, s, t)` with `g = s·a + t·b` monic.
pub fn ext_gcd<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (constant(f, f.one()), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), constant(f, f.one()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = add(f, &s0, &mul(f, &q, &s1));
        let t2 = add(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lead) => {
            let li = f.inv(lead).expect("nonzero leading coefficient");
            (scale(f, &r0, &li), scale(f, &s0, &li), scale(f, &t0, &li))
        }
    }
}

pub fn eval<F: Field>(f: &F, p: &Poly<F>, x: &F::Elem) -> F::Elem {
    p.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Human-readable form in the variable `var`, highest degree first.
pub fn format<F: Field>(f: &F, p: &Poly<F>, var: &str) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (e, c) in p.iter().enumerate().rev() {
        if f.is_zero(c) {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        let coef = f.format_elem(c);
        terms.push(match (f.is_one(c), mono.is_empty()) {
            (_, true) => {
                if coef.contains('+') {
                    format!("({coef})")
                } else {
                    coef
                }
            }
            (true, false) => mono,
            (false, false) => {
                if coef.contains('+') {
                    format!("({coef})*{mono}")
                } else {
                    format!("{coef}*{mono}")
                }
            }
        });
    }
    terms.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Gf2k;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(f: &Gf2k, rng: &mut ChaCha8Rng, deg: usize) -> Poly<Gf2k> {
        trim(f, (0..=deg).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn division_identity_and_gcd() {
        let f = Gf2k::gf4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = random_poly(&f, &mut rng, 6);
            let b = random_poly(&f, &mut rng, 3);
            if b.is_empty() {
                continue;
            }
            let (q, r) = divrem(&f, &a, &b);
            assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
            assert!(degree::<Gf2k>(&r) < degree::<Gf2k>(&b));
            let (g, s, t) = ext_gcd(&f, &a, &b);
            assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
            assert_eq!(g, gcd(&f, &a, &b));
            assert!(rem(&f, &a, &g).is_empty());
            assert!(rem(&f, &b, &g).is_empty());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map() {
        let f = Gf2k::with_default_modulus(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_poly(&f, &mut rng, 4);
            let b = random_poly(&f, &mut rng, 4);
            for x in f.elements().unwrap() {
                let lhs = eval(&f, &mul(&f, &a, &b), &x);
                assert_eq!(lhs, f.mul(&eval(&f, &a, &x), &eval(&f, &b, &x)));
            }
        }
    }

    #[test]
    fn formatting() {
        let f = Gf2k::gf4();
        assert_eq!(format(&f, &vec![1, 1, 1], "X"), "X^2+X+1");
        assert_eq!(format(&f, &vec![3, 2], "t"), "g*t+(g+1)");
        assert_eq!(format(&f, &Vec::new(), "t"), "0");
    }
}
