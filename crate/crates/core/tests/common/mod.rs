/// Independent count of supercommutative monomials of degree `d` in the
/// `(m+n)^2` matrix-unit variables, odd variables appearing at most once.
pub fn brute_force_count(m: usize, n: usize, d: usize) -> u128 {
    let rank = m + n;
    let odd: Vec<bool> = (0..rank * rank).map(|k| (k / rank < m) != (k % rank < m)).collect();
    fn rec(k: usize, left: usize, odd: &[bool]) -> u128 {
        if k == odd.len() {
            return (left == 0) as u128;
        }
        let cap = if odd[k] { left.min(1) } else { left };
        (0..=cap).map(|e| rec(k + 1, left - e, odd)).sum()
    }
    rec(0, d, &odd)
}
