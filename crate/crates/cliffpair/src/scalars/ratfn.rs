use rand::Rng;

use super::poly::{self, Poly};
use super::{Field, Gf2k, ScalarError};

/// `GF(2^k)(t)`: rational functions over a finite base field.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionField {
    base: Gf2k,
}

/// A reduced fraction: `gcd(num, den) = 1` and `den` monic.  Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: Vec<u32>,
    den: Vec<u32>,
}

impl Fraction {
    pub fn numerator(&self) -> &[u32] {
        &self.num
    }
    pub fn denominator(&self) -> &[u32] {
        &self.den
    }
}

impl RationalFunctionField {
    pub fn new(base: &Gf2k) -> Self {
        RationalFunctionField { base: base.clone() }
    }

    pub fn base(&self) -> &Gf2k {
        &self.base
    }

    /// The indeterminate `t`.
    pub fn t(&self) -> Fraction {
        Fraction { num: vec![0, 1], den: vec![1] }
    }

    /// Constant fraction from a base-field element.
    pub fn constant(&self, c: u32) -> Fraction {
        Fraction { num: poly::constant(&self.base, c), den: vec![1] }
    }

    /// Canonical fraction `num/den`.
    pub fn fraction_normalize(&self, num: &Poly<Gf2k>, den: &Poly<Gf2k>) -> Result<Fraction, ScalarError> {
        let f = &self.base;
        let num = poly::trim(f, num.clone());
        let den = poly::trim(f, den.clone());
        if den.is_empty() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.is_empty() {
            return Ok(Fraction { num, den: vec![1] });
        }
        let g = poly::gcd(f, &num, &den);
        let (n, _) = poly::divrem(f, &num, &g);
        let (d, _) = poly::divrem(f, &den, &g);
        let li = f.inv(d.last().expect("nonzero denominator")).expect("nonzero lead");
        Ok(Fraction { num: poly::scale(f, &n, &li), den: poly::scale(f, &d, &li) })
    }

    fn norm(&self, num: Poly<Gf2k>, den: Poly<Gf2k>) -> Fraction {
        self.fraction_normalize(&num, &den).expect("denominator is a product of nonzero polynomials")
    }

    fn parse_poly(&self, s: &str) -> Result<Poly<Gf2k>, ScalarError> {
        let f = &self.base;
        let t = s.trim();
        let t = strip_outer_parens(t);
        if t.is_empty() {
            return Err(ScalarError::parse(s, "empty polynomial"));
        }
        let mut acc: Poly<Gf2k> = Vec::new();
        for term in split_top_level(t, '+') {
            let term = term.trim();
            let (coef, exp) = match find_top_level(term, 't') {
                None => (f.parse_elem(strip_outer_parens(term))?, 0usize),
                Some(pos) => {
                    let prefix = term[..pos].trim().trim_end_matches('*').trim();
                    let suffix = term[pos + 1..].trim();
                    let c = if prefix.is_empty() { f.one() } else { f.parse_elem(strip_outer_parens(prefix))? };
                    let e = if suffix.is_empty() {
                        1
                    } else {
                        suffix
                            .strip_prefix('^')
                            .and_then(|x| x.trim().parse::<usize>().ok())
                            .ok_or_else(|| ScalarError::parse(s, "bad exponent of t"))?
                    };
                    (c, e)
                }
            };
            let mut m = vec![f.zero(); exp + 1];
            m[exp] = coef;
            acc = poly::add(f, &acc, &poly::trim(f, m));
        }
        Ok(acc)
    }
}

fn strip_outer_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') {
        let inner = &t[1..t.len() - 1];
        let mut depth = 0i32;
        for ch in inner.chars() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return t;
                    }
                }
                _ => {}
            }
        }
        return inner.trim();
    }
    t
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn find_top_level(s: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == target && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl Field for RationalFunctionField {
    type Elem = Fraction;

    fn zero(&self) -> Fraction {
        Fraction { num: Vec::new(), den: vec![1] }
    }
    fn one(&self) -> Fraction {
        Fraction { num: vec![1], den: vec![1] }
    }
    fn add(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let f = &self.base;
        if a.den == b.den {
            return self.norm(poly::add(f, &a.num, &b.num), a.den.clone());
        }
        let n = poly::add(f, &poly::mul(f, &a.num, &b.den), &poly::mul(f, &b.num, &a.den));
        self.norm(n, poly::mul(f, &a.den, &b.den))
    }
    fn mul(&self, a: &Fraction, b: &Fraction) -> Fraction {
        let f = &self.base;
        self.norm(poly::mul(f, &a.num, &b.num), poly::mul(f, &a.den, &b.den))
    }
    fn inv(&self, a: &Fraction) -> Option<Fraction> {
        if a.num.is_empty() {
            None
        } else {
            Some(self.norm(a.den.clone(), a.num.clone()))
        }
    }
    fn is_zero(&self, a: &Fraction) -> bool {
        a.num.is_empty()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fraction {
        let f = &self.base;
        let num: Vec<u32> = (0..3).map(|_| f.random(rng)).collect();
        let mut den: Vec<u32> = (0..2).map(|_| f.random(rng)).collect();
        if rng.gen_bool(0.5) {
            den = vec![1];
        }
        let den = poly::trim(f, den);
        let den = if den.is_empty() { vec![1] } else { den };
        self.norm(num, den)
    }
    fn elements(&self) -> Option<Vec<Fraction>> {
        None
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn format_elem(&self, a: &Fraction) -> String {
        let n = poly::format(&self.base, &a.num, "t");
        if a.den == vec![1] {
            n
        } else {
            let d = poly::format(&self.base, &a.den, "t");
            let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
            format!("{}/{}", wrap(n), wrap(d))
        }
    }
    fn parse_elem(&self, s: &str) -> Result<Fraction, ScalarError> {
        let parts = split_top_level(s, '/');
        match parts.as_slice() {
            [n] => Ok(self.norm(self.parse_poly(n)?, vec![1])),
            [n, d] => self.fraction_normalize(&self.parse_poly(n)?, &self.parse_poly(d)?),
            _ => Err(ScalarError::parse(s, "at most one '/' allowed")),
        }
    }
    fn name(&self) -> String {
        format!("{}(t)", self.base.name())
    }
    fn artin_schreier_solve(&self, _a: &Fraction) -> Result<Option<Fraction>, ScalarError> {
        Err(ScalarError::Undecided(self.name()))
    }
    fn artin_schreier_class(&self, _a: &Fraction) -> Result<bool, ScalarError> {
        Err(ScalarError::Undecided(self.name()))
    }
    fn sqrt(&self, _a: &Fraction) -> Option<Fraction> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2t() -> RationalFunctionField {
        RationalFunctionField::new(&Gf2k::gf2())
    }

    #[test]
    fn normalization_examples() {
        let k = f2t();
        assert_eq!(k.fraction_normalize(&vec![0, 1, 1], &vec![0, 1]).unwrap(), k.parse_elem("t+1").unwrap());
        assert_eq!(k.fraction_normalize(&vec![1], &vec![1]).unwrap(), k.one());
        let inv_t = k.fraction_normalize(&vec![0, 1], &vec![0, 0, 1]).unwrap();
        assert_eq!(inv_t.numerator(), &[1]);
        assert_eq!(inv_t.denominator(), &[0, 1]);
        assert_eq!(k.format_elem(&inv_t), "1/t");
        assert_eq!(k.fraction_normalize(&vec![1], &vec![]), Err(ScalarError::ZeroDenominator));
    }

    #[test]
    fn denominators_become_monic() {
        let k = RationalFunctionField::new(&Gf2k::gf4());
        let x = k.parse_elem("t/(g*t+1)").unwrap();
        assert_eq!(*x.denominator().last().unwrap(), 1);
        assert_eq!(k.parse_elem(&k.format_elem(&x)).unwrap(), x);
    }

    #[test]
    fn artin_schreier_is_undecided() {
        let k = f2t();
        assert!(matches!(k.artin_schreier_class(&k.t()), Err(ScalarError::Undecided(_))));
        assert!(matches!(k.artin_schreier_solve(&k.t()), Err(ScalarError::Undecided(_))));
    }

    #[test]
    fn parse_format_round_trip() {
        let k = RationalFunctionField::new(&Gf2k::gf4());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = k.random(&mut rng);
            assert_eq!(k.parse_elem(&k.format_elem(&x)).unwrap(), x);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(seed in any::<u64>()) {
            let k = RationalFunctionField::new(&Gf2k::gf4());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            prop_assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
            prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            prop_assert!(k.is_zero(&k.add(&a, &a)));
            if !k.is_zero(&a) {
                prop_assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
    }
}
