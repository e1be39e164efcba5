//! Brute-force oracles shared by the integration suites.
//!
//! Everything here re-derives results straight from the definitions —
//! subset scans over explicit vertex lists, base-3 assignment counters,
//! exhaustive transport-plan enumeration — and stays independent of the
//! library's incremental searches and flow solver.

use graph_energy_core::geometry::{shortest_path_dist, Rational};
use graph_energy_core::Graph;

/// Minimum cut quotient over every nonempty proper subset.
pub fn naive_cheeger(g: &Graph) -> Rational {
    let n = g.n();
    let total_vol = 2 * g.m() as i64;
    let mut best: Option<Rational> = None;
    for mask in 1u32..((1 << n) - 1) {
        let inside = |v: usize| mask & (1 << v) != 0;
        let cut = g
            .edges()
            .iter()
            .filter(|&&(u, v)| inside(u) != inside(v))
            .count() as i64;
        let vol: i64 = (0..n)
            .filter(|&v| inside(v))
            .map(|v| g.degree(v) as i64)
            .sum();
        let value = Rational::new(cut, vol.min(total_vol - vol));
        best = Some(match best {
            Some(current) if current <= value => current,
            _ => value,
        });
    }
    best.expect("n >= 2")
}

/// Maximum bipartiteness quotient over every assignment of vertices to
/// (part one, part two, neither), both parts nonempty.
pub fn naive_dual_cheeger(g: &Graph) -> Rational {
    let n = g.n();
    let mut best: Option<Rational> = None;
    let assignments = 3usize.pow(n as u32);
    let mut side = vec![0u8; n];
    for code in 0..assignments {
        let mut rest = code;
        let mut vol = 0i64;
        let mut nonempty = [false, false];
        for (v, slot) in side.iter_mut().enumerate() {
            *slot = (rest % 3) as u8;
            rest /= 3;
            if *slot != 0 {
                nonempty[*slot as usize - 1] = true;
                vol += g.degree(v) as i64;
            }
        }
        if !(nonempty[0] && nonempty[1]) {
            continue;
        }
        let crossing = g
            .edges()
            .iter()
            .filter(|&&(u, v)| side[u] != 0 && side[v] != 0 && side[u] != side[v])
            .count() as i64;
        let value = Rational::new(2 * crossing, vol);
        best = Some(match best {
            Some(current) if current >= value => current,
            _ => value,
        });
    }
    best.expect("n >= 2")
}

/// Exact Wasserstein-1 between the uniform neighbor measures of `v` and `w`
/// by enumerating every integer transport plan with masses scaled by
/// `d_v d_w`.
///
/// The transportation polytope has integral vertices, so the integer optimum
/// is the exact optimum. Intended for small supports (max degree ≤ 4).
pub fn transport_plan_oracle(g: &Graph, v: usize, w: usize) -> Rational {
    let dist = shortest_path_dist(g);
    let sources = g.neighbors(v);
    let targets = g.neighbors(w);
    let costs: Vec<Vec<i64>> = sources
        .iter()
        .map(|&x| targets.iter().map(|&y| dist[x][y] as i64).collect())
        .collect();
    let row_supply = targets.len() as i64; // each source ships d_w units
    let col_demand = sources.len() as i64; // each target receives d_v units

    let mut col_remaining = vec![col_demand; targets.len()];
    let mut best: Option<i64> = None;
    search_plans(
        &costs,
        row_supply,
        0,
        0,
        row_supply,
        0,
        &mut col_remaining,
        &mut best,
    );
    Rational::new(
        best.expect("balanced transport is feasible"),
        (sources.len() * targets.len()) as i64,
    )
}

#[allow(clippy::too_many_arguments)]
fn search_plans(
    costs: &[Vec<i64>],
    row_supply: i64,
    row: usize,
    col: usize,
    row_left: i64,
    cost: i64,
    col_remaining: &mut [i64],
    best: &mut Option<i64>,
) {
    if let Some(b) = *best {
        if cost >= b {
            return; // costs are nonnegative, no plan below this branch wins
        }
    }
    if row == costs.len() {
        // row sums all placed and column slack is balanced, so this is a plan
        *best = Some(cost);
        return;
    }
    if col == col_remaining.len() {
        if row_left == 0 {
            search_plans(
                costs,
                row_supply,
                row + 1,
                0,
                row_supply,
                cost,
                col_remaining,
                best,
            );
        }
        return;
    }
    let cap = row_left.min(col_remaining[col]);
    for amount in 0..=cap {
        col_remaining[col] -= amount;
        search_plans(
            costs,
            row_supply,
            row,
            col + 1,
            row_left - amount,
            cost + amount * costs[row][col],
            col_remaining,
            best,
        );
        col_remaining[col] += amount;
    }
}
