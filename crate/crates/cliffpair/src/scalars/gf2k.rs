use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::{Field, ScalarError};

/// `GF(2^k)` for `1 ≤ k ≤ 16`, elements packed little-endian into a `u32`
/// (bit `i` is the coefficient of `g^i`).
#[derive(Clone)]
pub struct Gf2k(Arc<Tables>);

struct Tables {
    k: u32,
    modulus: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_mask: u32,
    /// `(℘(x), x)` pairs forming an echelon basis of the image of `℘`.
    pe_basis: Vec<(u32, u32)>,
}

impl PartialEq for Gf2k {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl fmt::Debug for Gf2k {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2k({})", self.name())
    }
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn clmul_mod(a: u64, b: u64, m: u64) -> u64 {
    let dm = degree(m);
    let mut a = a;
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if degree(a) == dm {
            a ^= m;
        }
    }
    acc
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// `x^(2^e) mod m`.
fn frobenius_power_of_x(e: u32, m: u64) -> u64 {
    let mut x = poly_mod(2, m);
    for _ in 0..e {
        x = clmul_mod(x, x, m);
    }
    x
}

/// Irreducibility over GF(2): no roots, `x^(2^k) ≡ x`, and
/// `gcd(x^(2^d) − x, m) = 1` for every proper divisor `d` of `k`.
pub(crate) fn is_irreducible(m: u64) -> bool {
    let k = degree(m);
    if k < 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    if m & 1 == 0 || m.count_ones() % 2 == 0 {
        return false;
    }
    let k = k as u32;
    if frobenius_power_of_x(k, m) != poly_mod(2, m) {
        return false;
    }
    (1..k).filter(|d| k % d == 0).all(|d| {
        let h = frobenius_power_of_x(d, m) ^ poly_mod(2, m);
        poly_gcd(m, h) == 1
    })
}

/// Parses a GF(2) polynomial either as a little-endian bit list `[1,0,1]` or
/// as a sum of powers of `var`, returning its bit mask.
pub(crate) fn parse_gf2_poly(s: &str, var: char) -> Result<u64, ScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ScalarError::parse(s, "empty polynomial"));
    }
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| ScalarError::parse(s, "unterminated bit list"))?;
        let mut bits = 0u64;
        if inner.trim().is_empty() {
            return Ok(0);
        }
        for (i, b) in inner.split(',').enumerate() {
            if i >= 64 {
                return Err(ScalarError::parse(s, "bit list too long"));
            }
            match b.trim() {
                "0" => {}
                "1" => bits |= 1 << i,
                _ => return Err(ScalarError::parse(s, "bit list entries must be 0 or 1")),
            }
        }
        return Ok(bits);
    }
    let mut bits = 0u64;
    for term in t.split('+') {
        let term = term.trim();
        let e = if term == "0" {
            continue;
        } else if term == "1" {
            0
        } else if let Some(rest) = term.strip_prefix(var) {
            if rest.is_empty() {
                1
            } else {
                let p = rest
                    .strip_prefix('^')
                    .ok_or_else(|| ScalarError::parse(s, "expected ^ after variable"))?;
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| ScalarError::parse(s, "bad exponent"))?
            }
        } else {
            return Err(ScalarError::parse(s, format!("unexpected term {term:?}")));
        };
        if e >= 64 {
            return Err(ScalarError::parse(s, "exponent too large"));
        }
        bits ^= 1 << e;
    }
    Ok(bits)
}

pub(crate) fn format_gf2_poly(bits: u64, var: &str) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for e in (0..64).rev() {
        if bits >> e & 1 == 1 {
            terms.push(match e {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            });
        }
    }
    terms.join("+")
}

impl Gf2k {
    /// Field with the given modulus (bit mask, bit `i` = coefficient of `x^i`).
    pub fn from_modulus_bits(modulus: u64) -> Result<Self, ScalarError> {
        let k = degree(modulus);
        if !(1..=16).contains(&k) {
            return Err(ScalarError::UnsupportedDegree(k.max(0) as u32));
        }
        if !is_irreducible(modulus) {
            return Err(ScalarError::Reducible(format_gf2_poly(modulus, "g")));
        }
        Ok(Gf2k(Arc::new(Tables::build(k as u32, modulus))))
    }

    /// Field with modulus given as a little-endian coefficient bit list.
    pub fn from_modulus_list(bits: &[u8]) -> Result<Self, ScalarError> {
        let mut m = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            if b > 1 || i >= 64 {
                return Err(ScalarError::parse(&format!("{bits:?}"), "not a bit list"));
            }
            m |= (b as u64) << i;
        }
        Self::from_modulus_bits(m)
    }

    /// Field of degree `k` with the numerically smallest irreducible modulus
    /// (for `k = 1` the modulus is `x + 1`).
    pub fn with_default_modulus(k: u32) -> Result<Self, ScalarError> {
        if !(1..=16).contains(&k) {
            return Err(ScalarError::UnsupportedDegree(k));
        }
        let lo = 1u64 << k;
        let m = (lo + 1..2 * lo)
            .find(|&m| is_irreducible(m))
            .expect("irreducible polynomials exist in every degree");
        Self::from_modulus_bits(m)
    }

    pub fn gf2() -> Self {
        Self::from_modulus_bits(0b11).expect("x+1 is irreducible")
    }

    pub fn gf4() -> Self {
        Self::from_modulus_bits(0b111).expect("g^2+g+1 is irreducible")
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    /// The class of the indeterminate in the quotient ring.
    pub fn generator(&self) -> u32 {
        poly_mod(2, self.0.modulus) as u32
    }

    /// Absolute trace `Σ a^(2^i)`, computed by repeated squaring.
    pub fn absolute_trace(&self, a: u32) -> bool {
        let mut acc = 0u32;
        let mut x = a;
        for _ in 0..self.0.k {
            acc ^= x;
            x = self.mul(&x, &x);
        }
        debug_assert!(acc <= 1);
        acc == 1
    }
}

impl Tables {
    fn build(k: u32, modulus: u64) -> Self {
        let q = 1u64 << k;
        let order = (q - 1) as usize;
        let primitive = (1..q)
            .find(|&c| {
                let mut x = c;
                let mut n = 1usize;
                while x != 1 {
                    x = clmul_mod(x, c, modulus);
                    n += 1;
                    if n > order {
                        break;
                    }
                }
                n == order
            })
            .expect("the multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..order {
            exp[i] = x as u32;
            exp[i + order] = x as u32;
            log[x as usize] = i as u32;
            x = clmul_mod(x, primitive, modulus);
        }
        let mut t = Tables { k, modulus, exp, log, trace_mask: 0, pe_basis: Vec::new() };
        let mut mask = 0u32;
        for i in 0..k {
            let mut acc = 0u32;
            let mut y = 1u32 << i;
            for _ in 0..k {
                acc ^= y;
                y = t.mul(y, y);
            }
            if acc == 1 {
                mask |= 1 << i;
            }
        }
        t.trace_mask = mask;
        let mut basis: Vec<(u32, u32)> = Vec::new();
        for i in 0..k {
            let x = 1u32 << i;
            let mut v = t.mul(x, x) ^ x;
            let mut c = x;
            for &(bv, bc) in &basis {
                if v & (1 << (31 - bv.leading_zeros())) != 0 {
                    v ^= bv;
                    c ^= bc;
                }
            }
            if v != 0 {
                basis.push((v, c));
                basis.sort_by_key(|p| p.0.leading_zeros());
            }
        }
        t.pe_basis = basis;
        t
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }
}

impl Field for Gf2k {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        a ^ b
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            let order = self.0.exp.len() / 2;
            let l = self.0.log[*a as usize] as usize;
            Some(self.0.exp[(order - l) % order])
        }
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..(1u32 << self.0.k))
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..(1u32 << self.0.k)).collect())
    }
    fn size(&self) -> Option<u64> {
        Some(1u64 << self.0.k)
    }
    fn format_elem(&self, a: &u32) -> String {
        format_gf2_poly(*a as u64, "g")
    }
    fn parse_elem(&self, s: &str) -> Result<u32, ScalarError> {
        let bits = parse_gf2_poly(s, 'g')?;
        Ok(poly_mod(bits, self.0.modulus) as u32)
    }
    fn name(&self) -> String {
        if self.0.k == 1 {
            "gf2".to_string()
        } else {
            format!("gf{}:{}", 1u64 << self.0.k, format_gf2_poly(self.0.modulus, "g"))
        }
    }
    fn artin_schreier_solve(&self, a: &u32) -> Result<Option<u32>, ScalarError> {
        let mut v = *a;
        let mut x = 0u32;
        for &(bv, bc) in &self.0.pe_basis {
            if v & (1 << (31 - bv.leading_zeros())) != 0 {
                v ^= bv;
                x ^= bc;
            }
        }
        if v != 0 {
            return Ok(None);
        }
        Ok(Some(x & !1))
    }
    fn artin_schreier_class(&self, a: &u32) -> Result<bool, ScalarError> {
        Ok((a & self.0.trace_mask).count_ones() % 2 == 1)
    }
    fn sqrt(&self, a: &u32) -> Option<u32> {
        let mut x = *a;
        for _ in 1..self.0.k {
            x = self.0.mul(x, x);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_pe_image(f: &Gf2k) -> Vec<u32> {
        let mut v: Vec<u32> = f.elements().unwrap().iter().map(|x| f.mul(x, x) ^ x).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn irreducibility_by_trial_division() {
        for m in 4u64..512 {
            let d = degree(m);
            let reducible = (2u64..(1 << (d / 2 + 1)))
                .filter(|&p| degree(p) >= 1 && degree(p) <= d / 2)
                .any(|p| poly_mod(m, p) == 0);
            assert_eq!(is_irreducible(m), !reducible, "modulus {m:b}");
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(matches!(Gf2k::from_modulus_bits(0b101), Err(ScalarError::Reducible(_))));
        assert!(Gf2k::from_modulus_list(&[1, 1, 1]).is_ok());
        assert!(Gf2k::from_modulus_bits(1 << 17 | 0b1001).is_err());
    }

    #[test]
    fn gf2_artin_schreier() {
        let f = Gf2k::gf2();
        assert_eq!(f.artin_schreier_solve(&0).unwrap(), Some(0));
        assert_eq!(f.artin_schreier_solve(&1).unwrap(), None);
        assert!(f.artin_schreier_class(&1).unwrap());
        assert!(!f.artin_schreier_class(&0).unwrap());
    }

    #[test]
    fn gf4_artin_schreier() {
        let f = Gf2k::gf4();
        let g = f.generator();
        assert_eq!(f.artin_schreier_solve(&1).unwrap(), Some(g));
        assert!(f.artin_schreier_class(&g).unwrap());
        assert_eq!(brute_pe_image(&f), vec![0, 1]);
    }

    #[test]
    fn class_is_membership_in_image_for_small_fields() {
        for k in 1..=6 {
            let f = Gf2k::with_default_modulus(k).unwrap();
            let image = brute_pe_image(&f);
            assert_eq!(image.len(), f.elements().unwrap().len() / 2);
            for a in f.elements().unwrap() {
                let in_image = image.contains(&a);
                assert_eq!(f.artin_schreier_class(&a).unwrap(), !in_image);
                assert_eq!(f.absolute_trace(a), !in_image);
                match f.artin_schreier_solve(&a).unwrap() {
                    Some(x) => {
                        assert_eq!(f.mul(&x, &x) ^ x, a);
                        assert_eq!(x & 1, 0);
                    }
                    None => assert!(!in_image),
                }
            }
        }
    }

    #[test]
    fn class_is_additive_on_full_enumeration() {
        for k in 1..=4 {
            let f = Gf2k::with_default_modulus(k).unwrap();
            let els = f.elements().unwrap();
            for a in &els {
                for b in &els {
                    let lhs = f.artin_schreier_class(&f.add(a, b)).unwrap();
                    let rhs = f.artin_schreier_class(a).unwrap() ^ f.artin_schreier_class(b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let f = Gf2k::gf4();
        assert_eq!(f.parse_elem("[1,1]").unwrap(), 0b11);
        assert_eq!(f.parse_elem("g+1").unwrap(), 0b11);
        assert_eq!(f.parse_elem("g^2").unwrap(), 0b11);
        assert_eq!(f.format_elem(&0b11), "g+1");
        assert_eq!(f.format_elem(&0), "0");
        assert!(f.parse_elem("h").is_err());
        assert!(f.parse_elem("[2]").is_err());
    }

    #[test]
    fn table_multiplication_matches_carryless_reduction() {
        for k in [1u32, 2, 3, 4, 5, 8] {
            let f = Gf2k::with_default_modulus(k).unwrap();
            for a in f.elements().unwrap().into_iter().take(40) {
                for b in f.elements().unwrap() {
                    let slow = clmul_mod(a as u64, b as u64, f.modulus()) as u32;
                    assert_eq!(f.mul(&a, &b), slow);
                }
            }
        }
    }

    #[test]
    fn non_primitive_modulus_is_supported() {
        let f = Gf2k::from_modulus_bits(0b11111).unwrap();
        for a in 1..16u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }

    proptest! {
        #[test]
        fn field_axioms(k in 1u32..=16, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let f = Gf2k::with_default_modulus(k).unwrap();
            let mask = (1u32 << k) - 1;
            let (a, b, c) = (a & mask, b & mask, c & mask);
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&a, &a), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
            let r = f.sqrt(&a).unwrap();
            prop_assert_eq!(f.mul(&r, &r), a);
        }

        #[test]
        fn solve_present_iff_class_zero(k in 1u32..=16, a in any::<u32>()) {
            let f = Gf2k::with_default_modulus(k).unwrap();
            let a = a & ((1u32 << k) - 1);
            let sol = f.artin_schreier_solve(&a).unwrap();
            prop_assert_eq!(sol.is_some(), !f.artin_schreier_class(&a).unwrap());
            if let Some(x) = sol {
                prop_assert_eq!(f.mul(&x, &x) ^ x, a);
                let y = x ^ 1;
                prop_assert_eq!(f.mul(&y, &y) ^ y, a);
            }
        }
    }
}
