//! Text format for K-data.
//!
//! ```text
//! # C*(Z_2)
//! K0 rank=2 torsion=[] unit=[1,1] labels=[d0,d1]
//! K1 rank=0 torsion=[]
//! ```
//!
//! Graphs list `vertex NAME` and `edge NAME SRC DST` blocks; each block holds
//! its K0/K1 lines, and edges add `s0`, `r0`, `s1`, `r1` as JSON integer
//! matrices (rows = target generators).

use num_bigint::BigInt;

use super::abgroup::{FgAbGroup, ZMat};
use super::sixterm::{Edge, GraphKData, KPair};
use crate::error::{QwError, Result};

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> QwError {
    QwError::Syntax { line, col, msg: msg.into() }
}

/// Split "[a,b,[c]]" into top-level items.
fn list_items(text: &str, line: usize, col: usize) -> Result<Vec<String>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(line, col, "expected a bracketed list"))?;
    let mut out = Vec::new();
    let (mut depth, mut cur) = (0i32, String::new());
    for ch in inner.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

fn ints(text: &str, line: usize, col: usize) -> Result<Vec<BigInt>> {
    list_items(text, line, col)?
        .iter()
        .map(|x| x.parse::<BigInt>().map_err(|_| syntax(line, col, format!("bad integer `{x}`"))))
        .collect()
}

/// Parse a `K0 ...` or `K1 ...` line body (after the keyword).
fn group_line(body: &str, line: usize, col0: usize) -> Result<FgAbGroup> {
    let mut rank = None;
    let mut torsion = Vec::new();
    let mut unit = None;
    let mut labels = None;
    // Fields are space separated; list values contain no spaces at depth 0.
    let mut rest = body.trim_start();
    while !rest.is_empty() {
        let col = col0 + (body.len() - rest.len());
        let (key, after) = rest.split_once('=').ok_or_else(|| syntax(line, col, "expected key=value"))?;
        let value_end = if after.starts_with('[') {
            let mut depth = 0;
            let mut end = after.len();
            for (i, ch) in after.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => {
                        depth -= 1;
                        if depth == 0 {
                            end = i + 1;
                            break;
                        }
                    }
                    _ => {}
                }
            }
            end
        } else {
            after.find(char::is_whitespace).unwrap_or(after.len())
        };
        let value = &after[..value_end];
        let vcol = col + key.len() + 1;
        match key.trim() {
            "rank" => {
                rank = Some(value.parse::<usize>().map_err(|_| syntax(line, vcol, "bad rank"))?);
            }
            "torsion" => torsion = ints(value, line, vcol)?,
            "unit" => unit = Some(ints(value, line, vcol)?),
            "labels" => labels = Some(list_items(value, line, vcol)?),
            other => return Err(syntax(line, col, format!("unknown field `{other}`"))),
        }
        rest = after[value_end..].trim_start();
    }
    let rank = rank.ok_or_else(|| syntax(line, col0, "missing rank="))?;
    if torsion.iter().any(|d| *d < BigInt::from(2)) {
        return Err(syntax(line, col0, "torsion orders must be at least 2"));
    }
    let mut g = FgAbGroup::from_invariants(rank, &torsion);
    if let Some(l) = labels {
        let l = l.into_iter().map(|x| if x.starts_with('[') { x } else { format!("[{x}]") }).collect();
        g = g.with_labels(l).map_err(|e| syntax(line, col0, e.to_string()))?;
    }
    if let Some(u) = unit {
        g = g.with_unit(u).map_err(|e| syntax(line, col0, e.to_string()))?;
    }
    Ok(g)
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let x = self.peek();
        self.pos += 1;
        x
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(1, |x| x.0)
    }

    fn keyword(&mut self, kw: &str) -> Result<(usize, &'a str)> {
        let (line, text) = self.next().ok_or_else(|| syntax(self.last_line(), 1, format!("expected `{kw}`")))?;
        match text.strip_prefix(kw) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => Ok((line, rest)),
            _ => Err(syntax(line, 1, format!("expected `{kw}`"))),
        }
    }

    fn kpair(&mut self) -> Result<KPair> {
        let (l0, b0) = self.keyword("K0")?;
        let k0 = group_line(b0, l0, 3)?;
        let (l1, b1) = self.keyword("K1")?;
        let k1 = group_line(b1, l1, 3)?;
        Ok(KPair::new(k0, k1))
    }
}

/// A single K0/K1 pair.
pub fn parse_kpair(text: &str) -> Result<KPair> {
    let mut lines = Lines::new(text);
    let k = lines.kpair()?;
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, 1, "trailing input after K1"));
    }
    Ok(k)
}

fn matrix(text: &str, rows: usize, cols: usize, line: usize, col: usize) -> Result<ZMat> {
    let v: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| syntax(line, col, e.to_string()))?;
    if v.len() != rows || v.iter().any(|r| r.len() != cols) {
        return Err(syntax(line, col, format!("expected a {rows}x{cols} matrix")));
    }
    Ok(ZMat::from_i64(&v, cols))
}

/// A graph of algebras with K-data on vertices and edges.
pub fn parse_graph(text: &str) -> Result<GraphKData> {
    let mut lines = Lines::new(text);
    let mut g = GraphKData::default();
    let mut names: Vec<String> = Vec::new();
    let mut pending: Vec<(usize, String, String, String, KPair, Vec<(usize, String)>)> = Vec::new();
    while let Some((line, head)) = lines.next() {
        let words: Vec<&str> = head.split_whitespace().collect();
        match words.as_slice() {
            ["vertex", name] => {
                let k = lines.kpair()?;
                names.push(name.to_string());
                g.vertex(name, k);
            }
            ["edge", name, src, dst] => {
                let k = lines.kpair()?;
                let mut maps = Vec::new();
                for kw in ["s0", "r0", "s1", "r1"] {
                    let (l, body) = lines.keyword(kw)?;
                    maps.push((l, body.trim().to_string()));
                }
                pending.push((line, name.to_string(), src.to_string(), dst.to_string(), k, maps));
            }
            _ => return Err(syntax(line, 1, "expected `vertex NAME` or `edge NAME SRC DST`")),
        }
    }
    for (line, name, src, dst, k, maps) in pending {
        let find = |v: &str| {
            names.iter().position(|x| x == v).ok_or_else(|| syntax(line, 1, format!("unknown vertex `{v}`")))
        };
        let (s, d) = (find(&src)?, find(&dst)?);
        let dims = [
            (g.vertices[s].k.k0.gens(), k.k0.gens()),
            (g.vertices[d].k.k0.gens(), k.k0.gens()),
            (g.vertices[s].k.k1.gens(), k.k1.gens()),
            (g.vertices[d].k.k1.gens(), k.k1.gens()),
        ];
        let mut ms = Vec::new();
        for ((l, body), (r, c)) in maps.iter().zip(dims) {
            ms.push(matrix(body, r, c, *l, 4)?);
        }
        let [s0, r0, s1, r1]: [ZMat; 4] = ms.try_into().unwrap();
        g.edge(Edge { name, src: s, dst: d, k, s0, r0, s1, r1 });
    }
    if g.vertices.is_empty() {
        return Err(QwError::Graph("no vertices".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcalc::solve_six_term;

    #[test]
    fn kpair_roundtrip() {
        let k = parse_kpair("K0 rank=2 torsion=[] unit=[1,1] labels=[d0,d1]\nK1 rank=0 torsion=[3]\n").unwrap();
        assert_eq!(k.k0.to_string(), "Z^2");
        assert_eq!(k.k1.to_string(), "Z/3");
        assert_eq!(k.k0.label(1), "[d1]");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_kpair("K0 rank=x\nK1 rank=0") {
            Err(QwError::Syntax { line, col, .. }) => assert_eq!((line, col), (1, 9)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn loop_graph() {
        let text = "vertex A\nK0 rank=1 unit=[1]\nK1 rank=1\nedge e A A\nK0 rank=1\nK1 rank=1\n\
                    s0 [[1]]\nr0 [[1]]\ns1 [[1]]\nr1 [[3]]\n";
        let sol = solve_six_term(&parse_graph(text).unwrap()).unwrap();
        assert_eq!(sol.k1.to_string(), "Z (+) Z/2");
    }
}
