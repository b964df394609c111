use crate::superalgebra::{SuperMonomial, VariableContext};

/// All monomials of one (charge, weight, odd count) grading, in increasing
/// canonical order. The cohomological degree is `-eta_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub charge: i64,
    pub weight: u32,
    pub eta_count: usize,
    pub monomials: Vec<SuperMonomial>,
}

impl GradedPiece {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Enumerates every monomial with the given charge, weight and number of odd factors.
pub fn enumerate_piece(ctx: &VariableContext, charge: i64, weight: u32, eta_count: usize) -> GradedPiece {
    let n_vars = ctx.num_vars();
    let k = ctx.k();
    let mut monomials = Vec::new();
    if eta_count <= n_vars {
        for eta in subsets(n_vars, eta_count) {
            let eta_weight: u32 = eta.iter().map(|&mu| ctx.eta_weight(mu)).sum();
            let Some(y_total) = weight.checked_sub(eta_weight) else {
                continue;
            };
            let eta_charge: i64 = eta.iter().map(|&mu| ctx.eta_charge(mu)).sum();
            for v in compositions(y_total, k) {
                let y_charge: i64 = v
                    .iter()
                    .zip(ctx.degrees())
                    .map(|(&e, &d)| -(i64::from(e) * i64::from(d)))
                    .sum();
                let x_total = charge - eta_charge - y_charge;
                if x_total < 0 {
                    continue;
                }
                let Ok(x_total) = u32::try_from(x_total) else { continue };
                for u in compositions(x_total, ctx.n() + 1) {
                    let mut exps = v.clone();
                    exps.extend(u);
                    let m = SuperMonomial::new(ctx, exps, eta.clone()).expect("valid by construction");
                    monomials.push(m);
                }
            }
        }
    }
    monomials.sort();
    GradedPiece {
        charge,
        weight,
        eta_count,
        monomials,
    }
}

/// Upper bound on the size of a piece, computed without enumerating it.
pub fn piece_size_bound(ctx: &VariableContext, charge: i64, weight: u32, eta_count: usize) -> u128 {
    let n_vars = ctx.num_vars();
    if eta_count > n_vars {
        return 0;
    }
    let d_max = ctx.degrees().iter().copied().max().unwrap_or(0);
    let odd_sets = binomial_sat(n_vars as u128, eta_count as u128);
    // loosest odd part: every y partner (charge +d) and no weight spent
    let eta_charge_min = -(eta_count as i64);
    let x_max = (charge - eta_charge_min).saturating_add(i64::from(d_max) * i64::from(weight));
    if x_max < 0 {
        return 0;
    }
    let ys = binomial_sat(u128::from(weight) + ctx.k() as u128 - 1, ctx.k() as u128 - 1);
    let xs = binomial_sat(x_max as u128 + ctx.n() as u128 + 1, ctx.n() as u128 + 1);
    odd_sets.saturating_mul(ys).saturating_mul(xs)
}

fn binomial_sat(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Strictly increasing `size`-subsets of `0..n`, in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    go(0, n, size, &mut cur, &mut out);
    out
}

/// Exponent vectors of length `parts` summing to `total`.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; parts];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    go(0, total, &mut cur, &mut out);
    out
}
