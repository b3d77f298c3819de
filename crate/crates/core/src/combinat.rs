/// Binomial coefficient with the convention `C(a, b) = 0` when `b < 0` or `a < b`.
///
/// Only defined here for `a >= 0`; negative tops also give 0, which is what
/// every caller in this crate wants.
pub fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Falling factorial `b (b-1) ... (b-a+1)`; 1 when `a = 0`.
pub fn falling(b: u32, a: u32) -> u64 {
    debug_assert!(a <= b);
    ((b - a + 1)..=b).map(u64::from).product()
}
