//! Depth-first branch and bound over bounded integer variables.
//!
//! The system is: variables `v_k` in boxes; linear forms
//! `coef_j = Σ_k forms[j][k] v_k`; the goal is
//! `Σ_j max(hi_j coef_j, lo_j coef_j) < limit`,
//! `Σ_j min(lo_j coef_j, hi_j coef_j) > -limit`, some `coef_j != 0`, and
//! every side form within its range. Each term is convex (resp. concave)
//! and piecewise linear with its kink at 0, so its extremum over an interval
//! sits at an endpoint or at 0; that gives the pruning bounds.

use std::time::Instant;

pub(crate) struct Search {
    pub dom: Vec<(i128, i128)>,
    pub forms: Vec<Vec<i128>>,
    pub lo: Vec<i128>,
    pub hi: Vec<i128>,
    pub limit: i128,
    pub side: Vec<(Vec<i128>, i128, i128)>,
    /// Only explore vectors whose first nonzero entry is positive.
    pub symmetric: bool,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum SearchResult {
    Found(Vec<i128>),
    Infeasible,
    Timeout,
}

struct State<'a> {
    s: &'a Search,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
    /// suffix_min[j][k] = min over the free variables k.. of form j.
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
    side_min: Vec<Vec<i128>>,
    side_max: Vec<Vec<i128>>,
    assign: Vec<i128>,
}

fn suffixes(rows: &[&[i128]], dom: &[(i128, i128)]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let l = dom.len();
    let mut mins = Vec::with_capacity(rows.len());
    let mut maxs = Vec::with_capacity(rows.len());
    for row in rows {
        let mut mn = vec![0i128; l + 1];
        let mut mx = vec![0i128; l + 1];
        for k in (0..l).rev() {
            let (a, b) = (row[k] * dom[k].0, row[k] * dom[k].1);
            mn[k] = mn[k + 1] + a.min(b);
            mx[k] = mx[k + 1] + a.max(b);
        }
        mins.push(mn);
        maxs.push(mx);
    }
    (mins, maxs)
}

fn upper_term(lo: i128, hi: i128, c: i128) -> i128 {
    (hi * c).max(lo * c)
}

fn lower_term(lo: i128, hi: i128, c: i128) -> i128 {
    (lo * c).min(hi * c)
}

impl Search {
    pub fn run(
        &self,
        deadline: Option<Instant>,
        accept: &mut dyn FnMut(&[i128]) -> bool,
    ) -> SearchResult {
        if self.dom.iter().any(|&(a, b)| a > b) {
            return SearchResult::Infeasible;
        }
        let form_rows: Vec<&[i128]> = self.forms.iter().map(|r| r.as_slice()).collect();
        let side_rows: Vec<&[i128]> = self.side.iter().map(|(r, _, _)| r.as_slice()).collect();
        let (suffix_min, suffix_max) = suffixes(&form_rows, &self.dom);
        let (side_min, side_max) = suffixes(&side_rows, &self.dom);
        let mut st = State {
            s: self,
            deadline,
            nodes: 0,
            timed_out: false,
            suffix_min,
            suffix_max,
            side_min,
            side_max,
            assign: Vec::with_capacity(self.dom.len()),
        };
        let fixed = vec![0i128; self.forms.len()];
        let side_fixed = vec![0i128; self.side.len()];
        match st.dfs(&fixed, &side_fixed, true, accept) {
            Some(v) => SearchResult::Found(v),
            None if st.timed_out => SearchResult::Timeout,
            None => SearchResult::Infeasible,
        }
    }
}

impl State<'_> {
    fn prune(&self, k: usize, fixed: &[i128], side_fixed: &[i128]) -> bool {
        let s = self.s;
        let mut min_upper = 0i128;
        let mut max_lower = 0i128;
        let mut all_zero = true;
        for j in 0..s.forms.len() {
            let a = fixed[j] + self.suffix_min[j][k];
            let b = fixed[j] + self.suffix_max[j][k];
            if a != 0 || b != 0 {
                all_zero = false;
            }
            let (l, u) = (s.lo[j], s.hi[j]);
            let mut mu = upper_term(l, u, a).min(upper_term(l, u, b));
            let mut ml = lower_term(l, u, a).max(lower_term(l, u, b));
            if a <= 0 && 0 <= b {
                mu = mu.min(0);
                ml = ml.max(0);
            }
            min_upper += mu;
            max_lower += ml;
        }
        if all_zero || min_upper >= s.limit || max_lower <= -s.limit {
            return true;
        }
        for (i, (_, lo, hi)) in s.side.iter().enumerate() {
            let a = side_fixed[i] + self.side_min[i][k];
            let b = side_fixed[i] + self.side_max[i][k];
            if b < *lo || a > *hi {
                return true;
            }
        }
        false
    }

    fn dfs(
        &mut self,
        fixed: &[i128],
        side_fixed: &[i128],
        all_zero_so_far: bool,
        accept: &mut dyn FnMut(&[i128]) -> bool,
    ) -> Option<Vec<i128>> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return None;
        }
        let k = self.assign.len();
        if self.prune(k, fixed, side_fixed) {
            return None;
        }
        if k == self.s.dom.len() {
            // prune() with no free variables is an exact check
            return accept(&self.assign).then(|| self.assign.clone());
        }
        let (lo, hi) = self.s.dom[k];
        let lo = if self.s.symmetric && all_zero_so_far {
            lo.max(0)
        } else {
            lo
        };
        for val in values_near_zero(lo, hi) {
            let nf: Vec<i128> = fixed
                .iter()
                .zip(&self.s.forms)
                .map(|(f, row)| f + row[k] * val)
                .collect();
            let ns: Vec<i128> = side_fixed
                .iter()
                .zip(&self.s.side)
                .map(|(f, (row, _, _))| f + row[k] * val)
                .collect();
            self.assign.push(val);
            let r = self.dfs(&nf, &ns, all_zero_so_far && val == 0, accept);
            self.assign.pop();
            if r.is_some() || self.timed_out {
                return r;
            }
        }
        None
    }
}

/// `0, 1, -1, 2, -2, ...` restricted to `[lo, hi]`.
fn values_near_zero(lo: i128, hi: i128) -> impl Iterator<Item = i128> {
    let start = if lo > 0 {
        lo
    } else if hi < 0 {
        -hi
    } else {
        0
    };
    let reach = hi.abs().max(lo.abs());
    (start..=reach)
        .flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
        .filter(move |v| (lo..=hi).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_order() {
        let v: Vec<i128> = values_near_zero(-2, 3).collect();
        assert_eq!(v, vec![0, 1, -1, 2, -2, 3]);
        let v: Vec<i128> = values_near_zero(2, 4).collect();
        assert_eq!(v, vec![2, 3, 4]);
        let v: Vec<i128> = values_near_zero(-4, -3).collect();
        assert_eq!(v, vec![-3, -4]);
    }

    #[test]
    fn finds_difference() {
        // e1 = x + z + w, e2 = y + z + w, bounds [0,3], n = 7
        let s = Search {
            dom: vec![(-6, 6); 2],
            forms: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1], vec![0, 0]],
            lo: vec![0, 0, 0, 0, 1],
            hi: vec![3, 3, 3, 3, 1],
            limit: 7,
            side: vec![],
            symmetric: true,
        };
        match s.run(None, &mut |_| true) {
            SearchResult::Found(v) => assert_eq!(v, vec![1, -1]),
            other => panic!("{other:?}"),
        }
    }
}
