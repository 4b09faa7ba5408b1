//! Plain-text layout helpers shared by the subcommands.

use std::fmt::Write;

/// A `[p][q]` grid drawn with `q` increasing upward and `p` to the right.
pub fn grid<T: ToString>(title: &str, g: &[Vec<T>]) -> String {
    let cells: Vec<Vec<String>> = g.iter().map(|col| col.iter().map(T::to_string).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(g.len().to_string().len());
    let rows = cells.first().map_or(0, Vec::len);
    let mut out = format!("{title}\n");
    for q in (0..rows).rev() {
        let _ = write!(out, "{q:>4} |");
        for col in &cells {
            let _ = write!(out, " {:>width$}", col[q]);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "     +{}", "-".repeat(cells.len() * (width + 1)));
    out.push_str("      ");
    for p in 0..cells.len() {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    out
}

/// `name: a b c` on one line.
pub fn row<T: ToString>(name: &str, values: &[T]) -> String {
    let parts: Vec<String> = values.iter().map(T::to_string).collect();
    format!("{name}: {}\n", parts.join(" "))
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_runs_upward() {
        let g = vec![vec![1, 2], vec![3, 4]];
        let s = grid("t", &g);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[1], "   1 | 2 4");
        assert_eq!(lines[2], "   0 | 1 3");
        assert_eq!(lines[4], "       0 1");
    }
}
