//! Small combination-walking helpers used by shadows, cover profiles and
//! candidate generation.

/// Visit every k-combination of `0..n` in lexicographic order.
/// The callback may return `false` to stop early.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Visit every k-subset of `pool` (assumed strictly increasing) in
/// lexicographic order.
pub fn for_each_subset(pool: &[usize], k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut buf = vec![0usize; k];
    for_each_combination(pool.len(), k, |idx| {
        for (b, &i) in buf.iter_mut().zip(idx) {
            *b = pool[i];
        }
        f(&buf)
    });
}

/// All k-subsets of `pool`, materialized.
pub fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(pool, k, |s| {
        out.push(s.to_vec());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_and_count() {
        let all = subsets(&[0, 1, 2, 3], 2);
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut count = 0;
        for_each_combination(10, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn degenerate() {
        assert_eq!(subsets(&[0, 1], 3), Vec::<Vec<usize>>::new());
        assert_eq!(subsets(&[0, 1], 0), vec![Vec::<usize>::new()]);
    }
}
