//! Small GF(2) helpers: carry-less products of machine words and a dense
//! linear solver used by the Artin-Schreier root finders.

/// Carry-less product of two 64-bit polynomials over GF(2).
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut r = 0u128;
    let mut a = a as u128;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

/// Degree of a nonzero GF(2) polynomial packed into a word.
pub fn deg128(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

/// Remainder of `a` modulo `m` in GF(2)[x].
pub fn rem128(mut a: u128, m: u128) -> u128 {
    let dm = deg128(m);
    while a != 0 && deg128(a) >= dm {
        a ^= m << (deg128(a) - dm);
    }
    a
}

pub fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem128(a, b);
        a = b;
        b = r;
    }
    a
}

/// `a * b mod m` for GF(2) polynomials of degree below 64.
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem128(clmul(a, b), m as u128) as u64
}

/// Rabin irreducibility test for a GF(2) polynomial of degree `m <= 63`.
pub fn is_irreducible_gf2(poly: u64) -> bool {
    if poly < 2 {
        return false;
    }
    let m = deg128(poly as u128) as u32;
    if m == 0 {
        return false;
    }
    // x^(2^m) == x mod poly
    let x = rem128(2, poly as u128) as u64;
    let mut t = x;
    for _ in 0..m {
        t = mulmod(t, t, poly);
    }
    if t != x {
        return false;
    }
    for p in prime_factors(m as u64) {
        let k = m as u64 / p;
        let mut t = x;
        for _ in 0..k {
            t = mulmod(t, t, poly);
        }
        if gcd128((t ^ x) as u128, poly as u128) != 1 {
            return false;
        }
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense GF(2) bit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }
    pub fn len(&self) -> usize {
        self.len
    }
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }
    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }
    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }
}

/// Solves `A u = c` over GF(2), where `columns[i]` is the image of the i-th
/// unit vector. Returns one solution when the system is consistent.
pub fn solve_gf2(columns: &[BitVec], rhs: &BitVec) -> Option<BitVec> {
    let n = columns.len();
    let rows = rhs.len();
    // augmented rows: n coefficient bits followed by the rhs bit
    let mut mat: Vec<BitVec> = (0..rows)
        .map(|r| {
            let mut row = BitVec::zeros(n + 1);
            for (i, col) in columns.iter().enumerate() {
                if col.get(r) {
                    row.set(i, true);
                }
            }
            row.set(n, rhs.get(r));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| mat[i].get(c)) else {
            continue;
        };
        mat.swap(r, p);
        let pivot = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if mat[r..].iter().any(|row| row.get(n)) {
        return None;
    }
    let mut sol = BitVec::zeros(n);
    for (i, &c) in pivots.iter().enumerate() {
        sol.set(c, mat[i].get(n));
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_of_small_polys() {
        assert!(is_irreducible_gf2(0b111)); // x^2+x+1
        assert!(is_irreducible_gf2(0x13)); // x^4+x+1
        assert!(!is_irreducible_gf2(0b101)); // (x+1)^2
        assert!(!is_irreducible_gf2(0x15)); // x^4+x^2+1 = (x^2+x+1)^2
        assert!(is_irreducible_gf2(0x11d));
    }

    #[test]
    fn solver_finds_consistent_solution() {
        // identity plus a dependent column
        let mut cols = vec![BitVec::zeros(3), BitVec::zeros(3), BitVec::zeros(3)];
        cols[0].set(0, true);
        cols[1].set(1, true);
        cols[2].set(0, true);
        cols[2].set(1, true);
        let mut rhs = BitVec::zeros(3);
        rhs.set(1, true);
        let sol = solve_gf2(&cols, &rhs).unwrap();
        let mut acc = BitVec::zeros(3);
        for (i, c) in cols.iter().enumerate() {
            if sol.get(i) {
                acc.xor_assign(c);
            }
        }
        assert_eq!(acc, rhs);
        rhs.set(2, true);
        assert!(solve_gf2(&cols, &rhs).is_none());
    }
}
