use super::spec::{parse_raw_word, FiniteGroup, GroupSpec};
use crate::error::{QwError, Result};

fn syntax(msg: impl Into<String>) -> QwError {
    QwError::Syntax { line: 1, col: 1, msg: msg.into() }
}

/// Split at commas that are not nested in brackets.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' | '<' => depth += 1,
            ')' | ']' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out
}

/// Parse `cyclic(s) | int | trivial | free(m) | finite(@file) | finite([[..]])
/// | amalgam(spec,spec,k,word,word)`. Amalgam words use the global lettering:
/// the right factor's letters continue after the left factor's.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "int" | "Z" => return Ok(GroupSpec::Int),
        "trivial" => return GroupSpec::cyclic(1),
        _ => {}
    }
    let open = t.find('(').ok_or_else(|| syntax(format!("unknown group spec `{t}`")))?;
    if !t.ends_with(')') {
        return Err(syntax(format!("unbalanced parentheses in `{t}`")));
    }
    let head = &t[..open];
    let body = &t[open + 1..t.len() - 1];
    let number = |s: &str| -> Result<u64> {
        s.parse().map_err(|_| syntax(format!("expected a positive integer, got `{s}`")))
    };
    match head {
        "cyclic" => GroupSpec::cyclic(number(body)?),
        "free" => GroupSpec::free(number(body)? as usize),
        "finite" => parse_finite(body),
        "amalgam" => {
            let args = split_top_level(body);
            if args.len() != 5 {
                return Err(syntax("amalgam takes (spec, spec, k, word, word)"));
            }
            let left = parse_group_spec(&args[0])?;
            let right = parse_group_spec(&args[1])?;
            let k = number(&args[2])?;
            let lg = left.parse_word(&args[3])?;
            let offset = left.letter_count();
            let mut raw = parse_raw_word(&args[4])?;
            for l in raw.iter_mut() {
                if l.letter < offset {
                    return Err(QwError::UnknownGenerator(format!(
                        "letter {} belongs to the left factor",
                        (b'a' + l.letter as u8) as char
                    )));
                }
                l.letter -= offset;
            }
            let rg = right.normalize(&raw)?;
            GroupSpec::amalgam(left, right, k, lg, rg)
        }
        _ => Err(syntax(format!("unknown group spec `{head}`"))),
    }
}

fn parse_finite(body: &str) -> Result<GroupSpec> {
    let table: Vec<Vec<usize>> = if let Some(path) = body.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| QwError::Io(format!("{path}: {e}")))?;
        let rows: Vec<Vec<usize>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(|x| x.parse::<usize>()).collect())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| QwError::InvalidSpec(format!("{path}: {e}")))?;
        rows
    } else {
        serde_json::from_str(body).map_err(|e| QwError::InvalidSpec(format!("finite table: {e}")))?
    };
    // Tables may be written 1-based; detect by the absence of 0.
    let one_based = table.iter().flatten().all(|&x| x >= 1);
    let table = if one_based {
        table.into_iter().map(|r| r.into_iter().map(|x| x - 1).collect()).collect()
    } else {
        table
    };
    Ok(GroupSpec::Finite(FiniteGroup::new(table)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::GroupElement;

    #[test]
    fn specs() {
        assert_eq!(parse_group_spec("cyclic(3)").unwrap(), GroupSpec::Cyclic(3));
        assert_eq!(parse_group_spec(" free( 2 ) ").unwrap(), GroupSpec::Free(2));
        let g = parse_group_spec("amalgam(cyclic(6),cyclic(4),2,a^3,b^2)").unwrap();
        assert_eq!(g.letter_count(), 2);
        assert!(g.is_identity(&g.parse_word("a^3*b^2").unwrap()));
        let f = parse_group_spec("finite([[0,1],[1,0]])").unwrap();
        assert_eq!(f.parse_word("a1*a1").unwrap(), GroupElement::Finite(0));
        assert!(parse_group_spec("amalgam(cyclic(6),cyclic(4),2,a^3,a^2)").is_err());
        assert!(parse_group_spec("banana(3)").is_err());
    }
}
