//! Two-phase revised simplex on standard-form problems
//! `min c'x  s.t.  A x = b, x >= 0`, with Dantzig pricing and a Bland
//! fallback once the objective stalls. Maintains an explicit basis inverse
//! with periodic refactorization.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterLimit,
}

/// Standard-form instance; columns stored column-major.
pub struct StandardLp {
    pub m: usize,
    pub n: usize,
    pub cols: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    /// Leading column pairs where column 2j+1 is the negation of column 2j
    /// (the split-variable layout of l1 problems); pricing then needs one
    /// dot product per pair instead of two.
    pub neg_pairs: usize,
}

pub struct StandardSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// Dual vector for the equality rows (in the caller's row orientation).
    pub y: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

const PRICE_TOL: f64 = 1e-9;
const RATIO_TOL: f64 = 1e-11;
const REFACTOR_EVERY: usize = 300;
const STALL_LIMIT: usize = 200;
/// Column count above which pricing switches to a rotating partial scan.
const PARTIAL_THRESHOLD: usize = 20_000;
/// Columns examined per iteration under partial pricing (once an improving
/// candidate has been found).
const PRICE_WINDOW: usize = 8_192;

struct Tableau {
    m: usize,
    /// columns of the working problem (original + artificials)
    cols: Vec<Vec<f64>>,
    b: Vec<f64>,
    binv: Vec<Vec<f64>>, // row-major m x m
    basis: Vec<usize>,
    xb: Vec<f64>,
}

impl Tableau {
    fn refactorize(&mut self) -> Result<()> {
        let m = self.m;
        // invert the basis matrix by Gauss-Jordan with partial pivoting
        let mut aug: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut row: Vec<f64> = self.basis.iter().map(|&j| self.cols[j][i]).collect();
                row.extend((0..m).map(|k| if k == i { 1.0 } else { 0.0 }));
                row
            })
            .collect();
        for k in 0..m {
            let (p, best) = (k..m)
                .map(|i| (i, aug[i][k].abs()))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if best <= 1e-12 {
                return Err(Error::Numerical("basis matrix became singular".into()));
            }
            aug.swap(k, p);
            let piv = aug[k][k];
            for v in &mut aug[k] {
                *v /= piv;
            }
            for i in 0..m {
                if i != k && aug[i][k].abs() > 0.0 {
                    let f = aug[i][k];
                    let (head, tail) = aug.split_at_mut(k.max(i));
                    let (src, dst) = if k < i {
                        (&head[k], &mut tail[0])
                    } else {
                        (&tail[0], &mut head[i])
                    };
                    let _ = (src, dst);
                    // fall through to the simple clone-based update below
                    let row_k = aug[k].clone();
                    for (x, rk) in aug[i].iter_mut().zip(&row_k) {
                        *x -= f * rk;
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                self.binv[i][j] = aug[i][m + j];
            }
        }
        self.recompute_xb();
        Ok(())
    }

    fn recompute_xb(&mut self) {
        for i in 0..self.m {
            self.xb[i] = (0..self.m).map(|k| self.binv[i][k] * self.b[k]).sum();
        }
    }

    fn duals(&self, c: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = c[bj];
            if cb != 0.0 {
                for k in 0..m {
                    y[k] += cb * self.binv[i][k];
                }
            }
        }
        y
    }

    fn reduced_cost(&self, j: usize, y: &[f64], c: &[f64]) -> f64 {
        let col = &self.cols[j];
        let mut dot = 0.0;
        for (a, b) in col.iter().zip(y) {
            dot += a * b;
        }
        c[j] - dot
    }

    fn pivot(&mut self, entering: usize, leaving_pos: usize, w: &[f64]) {
        let m = self.m;
        let theta = self.xb[leaving_pos] / w[leaving_pos];
        for i in 0..m {
            if i != leaving_pos {
                self.xb[i] -= theta * w[i];
            }
        }
        self.xb[leaving_pos] = theta;
        let piv = w[leaving_pos];
        let row: Vec<f64> = self.binv[leaving_pos].iter().map(|v| v / piv).collect();
        for i in 0..m {
            if i != leaving_pos {
                let f = w[i];
                if f != 0.0 {
                    for k in 0..m {
                        self.binv[i][k] -= f * row[k];
                    }
                }
            }
        }
        self.binv[leaving_pos] = row;
        self.basis[leaving_pos] = entering;
    }
}

/// True when row `i` of the basis inverse, scaled by its pivot entry, is
/// lexicographically smaller than row `li` scaled by its pivot entry.
fn lex_smaller(t: &Tableau, i: usize, li: usize, w: &[f64]) -> bool {
    for k in 0..t.m {
        let a = t.binv[i][k] / w[i];
        let b = t.binv[li][k] / w[li];
        if (a - b).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
            return a < b;
        }
    }
    false
}

/// One simplex phase: minimizes `c` over the allowed columns starting from
/// the current basis. Returns the status of the phase.
fn run_phase(
    t: &mut Tableau,
    c: &[f64],
    allowed: &dyn Fn(usize) -> bool,
    neg_pairs: usize,
    iter_budget: &mut usize,
    total_iters: &mut usize,
) -> Result<LpStatus> {
    let ncols = t.cols.len();
    let mut bland = false;
    let mut cursor = 0usize;
    let mut stall = 0usize;
    let mut last_obj = f64::INFINITY;
    let mut since_refactor = 0usize;
    let mut in_basis = vec![false; ncols];
    for &j in &t.basis {
        in_basis[j] = true;
    }
    loop {
        if *iter_budget == 0 {
            return Ok(LpStatus::IterLimit);
        }
        *iter_budget -= 1;
        *total_iters += 1;
        since_refactor += 1;
        if since_refactor >= REFACTOR_EVERY {
            t.refactorize()?;
            since_refactor = 0;
        }
        let y = t.duals(c);
        let scale = 1.0 + c.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        // partial pricing on very wide problems: scan from a rotating
        // cursor and stop once a full window has been examined with at
        // least one improving column in hand; a complete wrap with no
        // candidate still proves optimality
        let partial = !bland && ncols > PARTIAL_THRESHOLD;
        let start = if partial {
            let mut s = cursor % ncols;
            if s < 2 * neg_pairs {
                s &= !1usize;
            }
            s
        } else {
            0
        };
        let mut entering: Option<(usize, f64)> = None;
        let mut examined = 0usize;
        let mut j = start;
        let mut wrapped = false;
        'price: loop {
            if j >= ncols {
                if !partial {
                    break;
                }
                wrapped = true;
                j = 0;
            }
            if partial {
                if wrapped && j >= start {
                    break;
                }
                if examined >= PRICE_WINDOW && entering.is_some() {
                    break;
                }
            }
            if j + 1 < 2 * neg_pairs {
                // one dot product prices the +/- pair
                let col = &t.cols[j];
                let mut dot = 0.0;
                for (a, b) in col.iter().zip(&y) {
                    dot += a * b;
                }
                for (jj, d) in [(j, c[j] - dot), (j + 1, c[j + 1] + dot)] {
                    if in_basis[jj] || !allowed(jj) {
                        continue;
                    }
                    if d < -PRICE_TOL * scale {
                        if bland {
                            entering = Some((jj, d));
                            break 'price;
                        }
                        match entering {
                            Some((_, best)) if d >= best => {}
                            _ => entering = Some((jj, d)),
                        }
                    }
                }
                examined += 2;
                j += 2;
                continue;
            }
            if in_basis[j] || !allowed(j) {
                examined += 1;
                j += 1;
                continue;
            }
            let d = t.reduced_cost(j, &y, c);
            if d < -PRICE_TOL * scale {
                if bland {
                    entering = Some((j, d));
                    break;
                }
                match entering {
                    Some((_, best)) if d >= best => {}
                    _ => entering = Some((j, d)),
                }
            }
            examined += 1;
            j += 1;
        }
        let Some((j, _)) = entering else {
            return Ok(LpStatus::Optimal);
        };
        cursor = (j + 1) % ncols.max(1);
        // direction w = B^{-1} a_j
        let col = &t.cols[j];
        let mut w = vec![0.0; t.m];
        for i in 0..t.m {
            let mut acc = 0.0;
            for k in 0..t.m {
                acc += t.binv[i][k] * col[k];
            }
            w[i] = acc;
        }
        // ratio test with lexicographic tie-breaking: among rows attaining
        // the minimum ratio, keep the one whose scaled tableau row
        // (xb_i, Binv_i) / w_i is lexicographically smallest. Starting from
        // lex-positive rows this rules out cycling regardless of pricing,
        // which matters here: the recovery optima are sparse, so almost the
        // whole basis sits at zero and pivots are mostly degenerate.
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..t.m {
            if w[i] > RATIO_TOL {
                let ratio = t.xb[i].max(0.0) / w[i];
                let better = match leave {
                    None => true,
                    Some((li, lr)) => {
                        let tol = 1e-9 * (1.0 + lr.abs());
                        if ratio < lr - tol {
                            true
                        } else if ratio < lr + tol {
                            lex_smaller(t, i, li, &w)
                        } else {
                            false
                        }
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((leaving_pos, _)) = leave else {
            return Ok(LpStatus::Unbounded);
        };
        in_basis[t.basis[leaving_pos]] = false;
        in_basis[j] = true;
        t.pivot(j, leaving_pos, &w);

        let obj: f64 = t.basis.iter().zip(&t.xb).map(|(&bj, &v)| c[bj] * v).sum();
        if obj < last_obj - 1e-12 * (1.0 + last_obj.abs()) {
            stall = 0;
        } else {
            stall += 1;
            if stall > STALL_LIMIT {
                bland = true;
            }
        }
        last_obj = obj;
    }
}

pub fn solve_standard(lp: &StandardLp) -> Result<StandardSolution> {
    let m = lp.m;
    let n = lp.n;
    if lp.b.len() != m || lp.c.len() != n || lp.cols.len() != n {
        return Err(Error::Input("inconsistent standard-form dimensions".into()));
    }
    // orient rows so the right-hand side is nonnegative; remember the flips
    // to restore dual signs afterwards
    let mut flips = vec![1.0f64; m];
    let mut b = lp.b.clone();
    for i in 0..m {
        if b[i] < 0.0 {
            flips[i] = -1.0;
            b[i] = -b[i];
        }
    }
    let mut cols: Vec<Vec<f64>> = lp
        .cols
        .iter()
        .map(|col| col.iter().zip(&flips).map(|(v, f)| v * f).collect())
        .collect();
    // artificial columns
    for i in 0..m {
        let mut e = vec![0.0; m];
        e[i] = 1.0;
        cols.push(e);
    }

    let mut t = Tableau {
        m,
        cols,
        b: b.clone(),
        binv: (0..m)
            .map(|i| (0..m).map(|k| if k == i { 1.0 } else { 0.0 }).collect())
            .collect(),
        basis: (n..n + m).collect(),
        xb: b.clone(),
    };

    let mut total_iters = 0usize;
    let mut budget = 50_000usize.max(200 * (m + 1));

    // phase 1: drive the artificials to zero
    let mut c1 = vec![0.0; n];
    c1.extend(vec![1.0; m]);
    let p1 = run_phase(&mut t, &c1, &|_| true, lp.neg_pairs, &mut budget, &mut total_iters)?;
    if p1 == LpStatus::IterLimit {
        return Ok(StandardSolution {
            status: LpStatus::IterLimit,
            x: vec![0.0; n],
            y: vec![0.0; m],
            objective: f64::NAN,
            iterations: total_iters,
        });
    }
    let p1_obj: f64 = t.basis.iter().zip(&t.xb).map(|(&bj, &v)| c1[bj] * v).sum();
    if p1 == LpStatus::Unbounded || p1_obj > 1e-7 * (1.0 + b.iter().fold(0.0f64, |a, &v| a.max(v.abs()))) {
        return Ok(StandardSolution {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            y: vec![0.0; m],
            objective: f64::NAN,
            iterations: total_iters,
        });
    }
    // pivot any lingering artificial out of the basis where possible
    for pos in 0..m {
        if t.basis[pos] >= n {
            let mut replaced = false;
            for j in 0..n {
                if t.basis.contains(&j) {
                    continue;
                }
                let col = &t.cols[j];
                let mut wp = 0.0;
                for k in 0..m {
                    wp += t.binv[pos][k] * col[k];
                }
                if wp.abs() > 1e-8 {
                    let mut w = vec![0.0; m];
                    for i in 0..m {
                        let mut acc = 0.0;
                        for k in 0..m {
                            acc += t.binv[i][k] * col[k];
                        }
                        w[i] = acc;
                    }
                    t.pivot(j, pos, &w);
                    replaced = true;
                    break;
                }
            }
            // a redundant row keeps its artificial basic at value zero
            let _ = replaced;
        }
    }

    // phase 2 over the true objective; artificials may not re-enter
    let mut c2 = lp.c.clone();
    c2.extend(vec![0.0; m]);
    let p2 = run_phase(&mut t, &c2, &|j| j < n, lp.neg_pairs, &mut budget, &mut total_iters)?;

    let mut x = vec![0.0; n];
    for (pos, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.xb[pos];
        }
    }
    let y_flipped = t.duals(&c2);
    let y: Vec<f64> = y_flipped.iter().zip(&flips).map(|(v, f)| v * f).collect();
    let objective: f64 = x.iter().zip(&lp.c).map(|(a, b)| a * b).sum();
    Ok(StandardSolution {
        status: p2,
        x,
        y,
        objective,
        iterations: total_iters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_value() {
        // min x s.t. x = 1, x >= 0
        let lp = StandardLp {
            m: 1,
            n: 1,
            cols: vec![vec![1.0]],
            b: vec![1.0],
            c: vec![1.0],
            neg_pairs: 0,
        };
        let s = solve_standard(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-10);
        assert!((s.objective - 1.0).abs() < 1e-10);
    }

    #[test]
    fn symmetric_pair() {
        // min x1 + x2 s.t. x1 - x2 = 0 -> optimum 0
        let lp = StandardLp {
            m: 1,
            n: 2,
            cols: vec![vec![1.0], vec![-1.0]],
            b: vec![0.0],
            c: vec![1.0, 1.0],
            neg_pairs: 0,
        };
        let s = solve_standard(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!(s.objective.abs() < 1e-10);
    }

    #[test]
    fn infeasible_detected() {
        // x1 + x2 = -1 impossible with x >= 0? after row flip: -x1 - x2 = 1
        let lp = StandardLp {
            m: 1,
            n: 2,
            cols: vec![vec![1.0], vec![1.0]],
            b: vec![-1.0],
            c: vec![1.0, 1.0],
            neg_pairs: 0,
        };
        let s = solve_standard(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // min -x1 s.t. x1 - x2 = 0: push both to infinity
        let lp = StandardLp {
            m: 1,
            n: 2,
            cols: vec![vec![1.0], vec![-1.0]],
            b: vec![0.0],
            c: vec![-1.0, 0.0],
            neg_pairs: 0,
        };
        let s = solve_standard(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn duals_satisfy_strong_duality() {
        // min 2x1 + 3x2 s.t. x1 + x2 = 4, x1 - x2 = 0
        let lp = StandardLp {
            m: 2,
            n: 2,
            cols: vec![vec![1.0, 1.0], vec![1.0, -1.0]],
            b: vec![4.0, 0.0],
            c: vec![2.0, 3.0],
            neg_pairs: 0,
        };
        let s = solve_standard(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        let dual_obj = s.y[0] * 4.0 + s.y[1] * 0.0;
        assert!((s.objective - dual_obj).abs() < 1e-8 * (1.0 + s.objective.abs()));
    }
}
