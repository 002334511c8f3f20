use crate::Error;

/// `true` iff `p` does not divide the binomial coefficient `C(i, n)`.
///
/// By Lucas' theorem this holds exactly when every base-`p` digit of `n` is
/// bounded by the corresponding digit of `i`, so no big-integer arithmetic is
/// needed.
pub fn lucas_nonzero(i: u64, n: u64, p: u32) -> Result<bool, Error> {
    if n > i {
        return Err(Error::BinomialOutOfRange { i, n });
    }
    let p = p as u64;
    let (mut i, mut n) = (i, n);
    while n > 0 {
        if n % p > i % p {
            return Ok(false);
        }
        i /= p;
        n /= p;
    }
    Ok(true)
}

/// `C(i, n) mod p` via the digit-wise Lucas product.
///
/// Digit binomials satisfy `C(a, b) < p^p`, so they are computed by a short
/// Pascal recurrence in `u64`.
pub fn binom_mod_p(i: u64, n: u64, p: u32) -> Result<u32, Error> {
    if n > i {
        return Err(Error::BinomialOutOfRange { i, n });
    }
    let pl = p as u64;
    let mut acc: u64 = 1;
    let (mut i, mut n) = (i, n);
    while n > 0 || i > 0 {
        let (di, dn) = (i % pl, n % pl);
        acc = acc * small_binom_mod(di, dn, pl) % pl;
        if acc == 0 {
            return Ok(0);
        }
        i /= pl;
        n /= pl;
    }
    Ok(acc as u32)
}

fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    // row-by-row Pascal, reduced mod p; a < p so rows are tiny
    let mut row = [0u64; 64];
    row[0] = 1;
    for r in 1..=a as usize {
        for c in (1..=r.min(b as usize)).rev() {
            row[c] = (row[c] + row[c - 1]) % p;
        }
    }
    row[b as usize]
}
