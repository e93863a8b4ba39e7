//! Dancing-links exact cover over dense column indices.
//!
//! Node 0 is the root, nodes `1..=ncols` are column headers, and each row
//! occupies a contiguous run of nodes after that. Columns are chosen by
//! minimum remaining rows with ties going to the lowest column index, and
//! rows within a column are tried in row order, so the search order is a
//! pure function of the instance.

use std::ops::ControlFlow;

#[derive(Debug, Clone)]
pub struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    col: Vec<u32>,
    row: Vec<u32>,
    size: Vec<u32>,
    row_start: Vec<u32>,
}

impl Dlx {
    /// `rows[i]` lists the columns covered by row `i`; each must be
    /// strictly increasing and below `ncols`.
    pub fn new(ncols: usize, rows: &[Vec<u32>]) -> Self {
        Self::with_secondary(ncols, ncols, rows)
    }

    /// Columns at index `primary` and above are secondary: covered at most
    /// once instead of exactly once.
    pub fn with_secondary(primary: usize, ncols: usize, rows: &[Vec<u32>]) -> Self {
        debug_assert!(primary <= ncols);
        let nodes = 1 + ncols + rows.iter().map(Vec::len).sum::<usize>();
        let mut d = Dlx {
            left: Vec::with_capacity(nodes),
            right: Vec::with_capacity(nodes),
            up: Vec::with_capacity(nodes),
            down: Vec::with_capacity(nodes),
            col: Vec::with_capacity(nodes),
            row: Vec::with_capacity(nodes),
            size: vec![0; ncols + 1],
            row_start: Vec::with_capacity(rows.len()),
        };
        for i in 0..=ncols as u32 {
            if i as usize > primary {
                d.left.push(i);
                d.right.push(i);
            } else {
                d.left.push(if i == 0 { primary as u32 } else { i - 1 });
                d.right.push(if i as usize == primary { 0 } else { i + 1 });
            }
            d.up.push(i);
            d.down.push(i);
            d.col.push(i);
            d.row.push(u32::MAX);
        }
        for (r, cols) in rows.iter().enumerate() {
            let start = d.col.len() as u32;
            d.row_start.push(start);
            let len = cols.len() as u32;
            for (k, &c) in cols.iter().enumerate() {
                debug_assert!((c as usize) < ncols);
                debug_assert!(k == 0 || cols[k - 1] < c);
                let node = start + k as u32;
                let header = c + 1;
                d.left.push(if k == 0 { start + len - 1 } else { node - 1 });
                d.right.push(if k as u32 + 1 == len { start } else { node + 1 });
                let last = d.up[header as usize];
                d.up.push(last);
                d.down.push(header);
                d.down[last as usize] = node;
                d.up[header as usize] = node;
                d.col.push(header);
                d.row.push(r as u32);
                d.size[header as usize] += 1;
            }
        }
        d
    }

    fn cover(&mut self, c: u32) {
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = r;
        self.left[r as usize] = l;
        let mut i = self.down[c as usize];
        while i != c {
            let mut j = self.right[i as usize];
            while j != i {
                let (u, d) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = d;
                self.up[d as usize] = u;
                self.size[self.col[j as usize] as usize] -= 1;
                j = self.right[j as usize];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, c: u32) {
        let mut i = self.up[c as usize];
        while i != c {
            let mut j = self.left[i as usize];
            while j != i {
                let (u, d) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = j;
                self.up[d as usize] = j;
                self.size[self.col[j as usize] as usize] += 1;
                j = self.left[j as usize];
            }
            i = self.up[i as usize];
        }
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = c;
        self.left[r as usize] = c;
    }

    /// Active column with the fewest rows, or `None` when all are covered.
    fn choose(&self) -> Option<u32> {
        let mut c = self.right[0];
        let mut best: Option<(u32, u32)> = None;
        while c != 0 {
            let s = self.size[c as usize];
            if best.is_none_or(|(_, bs)| s < bs) {
                best = Some((c, s));
                if s == 0 {
                    break;
                }
            }
            c = self.right[c as usize];
        }
        best.map(|(c, _)| c)
    }

    /// Commits to `row` by covering all of its columns.
    ///
    /// Returns `false` (and leaves the matrix untouched) if one of the
    /// columns is already covered or the row was eliminated.
    pub fn select(&mut self, row: usize) -> bool {
        let start = self.row_start[row];
        let mut j = start;
        loop {
            let c = self.col[j as usize];
            let mut active = false;
            let mut k = self.down[c as usize];
            while k != c {
                if k == j {
                    active = true;
                    break;
                }
                k = self.down[k as usize];
            }
            if !active {
                return false;
            }
            j = self.right[j as usize];
            if j == start {
                break;
            }
        }
        let mut j = start;
        loop {
            self.cover(self.col[j as usize]);
            j = self.right[j as usize];
            if j == start {
                break;
            }
        }
        true
    }

    /// Rows of the column that would be branched on first, in order.
    pub fn first_branch(&self) -> Option<Vec<usize>> {
        let c = self.choose()?;
        let mut out = Vec::new();
        let mut i = self.down[c as usize];
        while i != c {
            out.push(self.row[i as usize] as usize);
            i = self.down[i as usize];
        }
        Some(out)
    }

    /// Rows covering the lowest-indexed active column, in order.
    pub fn rows_of_least_column(&self) -> Option<Vec<usize>> {
        let c = self.right[0];
        if c == 0 {
            return None;
        }
        let mut out = Vec::new();
        let mut i = self.down[c as usize];
        while i != c {
            out.push(self.row[i as usize] as usize);
            i = self.down[i as usize];
        }
        Some(out)
    }

    pub fn count(&mut self) -> u64 {
        let Some(c) = self.choose() else {
            return 1;
        };
        if self.size[c as usize] == 0 {
            return 0;
        }
        let mut total = 0;
        self.cover(c);
        let mut r = self.down[c as usize];
        while r != c {
            let mut j = self.right[r as usize];
            while j != r {
                self.cover(self.col[j as usize]);
                j = self.right[j as usize];
            }
            total += self.count();
            let mut j = self.left[r as usize];
            while j != r {
                self.uncover(self.col[j as usize]);
                j = self.left[j as usize];
            }
            r = self.down[r as usize];
        }
        self.uncover(c);
        total
    }

    /// Calls `visit` with the rows of every solution in search order until
    /// it returns `Break`.
    pub fn search<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut partial = Vec::new();
        self.search_inner(&mut partial, visit)
    }

    fn search_inner<F>(&mut self, partial: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(c) = self.choose() else {
            return visit(partial);
        };
        if self.size[c as usize] == 0 {
            return ControlFlow::Continue(());
        }
        self.cover(c);
        let mut r = self.down[c as usize];
        let mut flow = ControlFlow::Continue(());
        while r != c {
            partial.push(self.row[r as usize] as usize);
            let mut j = self.right[r as usize];
            while j != r {
                self.cover(self.col[j as usize]);
                j = self.right[j as usize];
            }
            flow = self.search_inner(partial, visit);
            let mut j = self.left[r as usize];
            while j != r {
                self.uncover(self.col[j as usize]);
                j = self.left[j as usize];
            }
            partial.pop();
            if flow.is_break() {
                break;
            }
            r = self.down[r as usize];
        }
        self.uncover(c);
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Knuth's example; the unique cover is rows 0, 3 and 4.
    fn knuth() -> (usize, Vec<Vec<u32>>) {
        (7, vec![vec![2, 4, 5], vec![0, 3, 6], vec![1, 2, 5], vec![0, 3], vec![1, 6], vec![3, 4, 6]])
    }

    #[test]
    fn knuth_example_has_one_solution() {
        let (n, rows) = knuth();
        let mut d = Dlx::new(n, &rows);
        assert_eq!(d.count(), 1);
        let mut sols = Vec::new();
        let _ = d.search(&mut |s: &[usize]| {
            let mut s = s.to_vec();
            s.sort();
            sols.push(s);
            ControlFlow::Continue(())
        });
        assert_eq!(sols, vec![vec![0, 3, 4]]);
        // links are fully restored
        assert_eq!(d.count(), 1);
    }

    #[test]
    fn select_then_count() {
        let (n, rows) = knuth();
        let mut d = Dlx::new(n, &rows);
        assert!(d.select(3));
        assert!(!d.select(1));
        assert_eq!(d.count(), 1);
        let mut e = Dlx::new(n, &rows);
        assert!(e.select(1));
        assert_eq!(e.count(), 0);
    }

    #[test]
    fn secondary_columns_are_optional() {
        // column 2 is secondary: rows {0,2} and {1,2} exclude each other
        let rows = vec![vec![0, 2], vec![1, 2], vec![0], vec![1]];
        assert_eq!(Dlx::with_secondary(2, 3, &rows).count(), 3);
        assert_eq!(Dlx::new(3, &rows).count(), 2);
    }

    #[test]
    fn empty_matrix_has_the_empty_solution() {
        assert_eq!(Dlx::new(0, &[]).count(), 1);
        assert_eq!(Dlx::new(2, &[vec![0]]).count(), 0);
    }

    #[test]
    fn dominoes_on_a_strip() {
        // 1x6 strip tiled by dominoes and monominoes: Fibonacci(7) = 13
        let mut rows = Vec::new();
        for i in 0..6u32 {
            rows.push(vec![i]);
            if i < 5 {
                rows.push(vec![i, i + 1]);
            }
        }
        assert_eq!(Dlx::new(6, &rows).count(), 13);
    }
}
