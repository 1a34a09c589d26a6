//! Column arithmetic: bit extraction, adjacent-bit swaps and the length of
//! the common low-order bit suffix.

/// The `k`-th rightmost binary digit of `j`: 1 iff `j mod 2^(k+1) >= 2^k`.
#[inline]
pub fn bit(k: u32, j: u64) -> u64 {
    (j >> k) & 1
}

/// The involution that swaps bits `i` and `i - 1` of `j`; identity for `i = 0`.
pub fn pi(i: u32, j: u64) -> u64 {
    if i == 0 {
        return j;
    }
    let hi = bit(i, j);
    let lo = bit(i - 1, j);
    (j - (hi << i) - (lo << (i - 1))) + (lo << i) + (hi << (i - 1))
}

/// Largest `d <= l` with `j1 ≡ j2 (mod 2^d)`.
#[inline]
pub fn delta(j1: u64, j2: u64, l: u32) -> u32 {
    (j1 ^ j2).trailing_zeros().min(l)
}
