//! Dense bit-packed polynomials over GF(2).
//!
//! The counting paths spend almost all of their time in gcd/divrem of
//! characteristic-2 polynomials of degree up to a few thousand, so those
//! are done on `u64` words. Coefficient `i` of the polynomial is bit `i`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn from_coeffs(coeffs: &[u64]) -> Self {
        let mut words = vec![0u64; coeffs.len().div_ceil(64)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                words[i / 64] |= 1u64 << (i % 64);
            }
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    pub fn to_coeffs(&self) -> Vec<u64> {
        match self.deg() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.bit(i)).collect(),
        }
    }

    fn trim(&mut self) {
        while let Some(&w) = self.words.last() {
            if w == 0 {
                self.words.pop();
            } else {
                break;
            }
        }
    }

    fn bit(&self, i: usize) -> u64 {
        (self.words[i / 64] >> (i % 64)) & 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        let w = self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - w.leading_zeros() as usize))
    }

    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        let (q, r) = (shift / 64, shift % 64);
        let need = other.words.len() + q + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        if r == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + q] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (i, &w) in other.words.iter().enumerate() {
                self.words[i + q] ^= (w << r) | carry;
                carry = w >> (64 - r);
            }
            self.words[other.words.len() + q] ^= carry;
        }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Gf2Poly::zero();
        }
        let (a, b) = if self.words.len() < other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Gf2Poly::zero();
        for (wi, &w) in a.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                out.xor_shifted(b, wi * 64 + k);
                bits &= bits - 1;
            }
        }
        out.trim();
        out
    }

    /// Remainder of `self` by a nonzero `m`, destructive long division.
    pub fn rem(&self, m: &Gf2Poly) -> Gf2Poly {
        let dm = m.deg().expect("division by zero polynomial");
        let mut r = self.clone();
        while let Some(dr) = r.deg() {
            if dr < dm {
                break;
            }
            r.xor_shifted(m, dr - dm);
            r.trim();
        }
        r
    }

    pub fn divrem(&self, m: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dm = m.deg().expect("division by zero polynomial");
        let mut r = self.clone();
        let mut q = Gf2Poly::zero();
        while let Some(dr) = r.deg() {
            if dr < dm {
                break;
            }
            let shift = dr - dm;
            let need = shift / 64 + 1;
            if q.words.len() < need {
                q.words.resize(need, 0);
            }
            q.words[shift / 64] |= 1u64 << (shift % 64);
            r.xor_shifted(m, shift);
            r.trim();
        }
        q.trim();
        (q, r)
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}
