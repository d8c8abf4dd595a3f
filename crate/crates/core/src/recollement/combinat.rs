//! Small enumeration helpers shared by the diagram code.

/// All partial bijections between `0..a` and `0..b`, as sorted pair lists.
pub fn partial_matchings(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(i: usize, a: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == a {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, a, used, cur, out);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                cur.push((i, j));
                rec(i + 1, a, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, a, &mut vec![false; b], &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// Sign of a permutation in one-line notation.
pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(partial_matchings(2, 2).len(), 7);
        assert_eq!(partial_matchings(0, 3).len(), 1);
        assert_eq!(partial_matchings(3, 3).len(), 34);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(sign(&[1, 0, 2]), -1);
        assert_eq!(sign(&[1, 2, 0]), 1);
        assert_eq!(binomial(5, 2), 10);
    }
}
