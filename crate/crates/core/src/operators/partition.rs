//! Set partitions of `{0, .., m-1}` with blocks ordered by their minimum.

/// All partitions of `{0, .., m-1}`, generated from restricted growth strings.
/// Each block is increasing and blocks are ordered by their first element.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if m == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut labels = vec![0usize; m];
    loop {
        let blocks = 1 + *labels.iter().max().unwrap();
        let mut parts = vec![Vec::new(); blocks];
        for (i, &b) in labels.iter().enumerate() {
            parts[b].push(i);
        }
        out.push(parts);
        // advance the restricted growth string
        let mut i = m - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = *labels[..i].iter().max().unwrap();
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in labels.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Two-block partitions of `{0, .., m-1}` putting `m-2` and `m-1` in different blocks.
pub fn separating_two_block(m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    assert!(m >= 2);
    let free = m - 2;
    let mut out = Vec::with_capacity(1 << free);
    for mask in 0u64..(1u64 << free) {
        // bit set: element joins the block of m-2, otherwise the block of m-1
        let mut with_a = Vec::new();
        let mut with_b = Vec::new();
        for i in 0..free {
            if mask >> i & 1 == 1 {
                with_a.push(i);
            } else {
                with_b.push(i);
            }
        }
        with_a.push(m - 2);
        with_b.push(m - 1);
        if with_a[0] < with_b[0] {
            out.push((with_a, with_b));
        } else {
            out.push((with_b, with_a));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..8).map(|m| set_partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn blocks_are_ordered_by_minimum() {
        for p in set_partitions(5) {
            let mins: Vec<usize> = p.iter().map(|b| b[0]).collect();
            let mut sorted = mins.clone();
            sorted.sort();
            assert_eq!(mins, sorted);
            for b in &p {
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn separating_matches_filtered_enumeration() {
        for m in 2..7 {
            let mut expected: Vec<(Vec<usize>, Vec<usize>)> = set_partitions(m)
                .into_iter()
                .filter(|p| p.len() == 2)
                .filter(|p| !p.iter().any(|b| b.contains(&(m - 2)) && b.contains(&(m - 1))))
                .map(|p| (p[0].clone(), p[1].clone()))
                .collect();
            let mut got = separating_two_block(m);
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
        }
    }
}
