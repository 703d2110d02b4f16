//! Matroids that are referred to by name.

use super::{Matroid, MatroidError};
use crate::subset::{k_subsets, GroundSubset};

fn triples(labels: &[&str]) -> Vec<GroundSubset> {
    labels
        .iter()
        .map(|l| GroundSubset::parse_label(l).expect("static label"))
        .collect()
}

const FANO_NONBASES: [&str; 7] = ["124", "135", "167", "236", "257", "347", "456"];
const PAPPUS_NONBASES: [&str; 9] = [
    "124", "135", "189", "236", "279", "378", "457", "468", "569",
];
const C_INTRO_NONBASES: [&str; 6] = ["124", "135", "167", "236", "257", "347"];

/// Identifiers of the rank-3 line-census matroids (`"5.1"` … `"7.6"`).
pub const TABLE_IDS: [&str; 17] = [
    "5.1", "5.2", "5.3", "6.1", "6.2", "6.3", "6.4", "6.5", "6.6", "6.7", "6.8", "7.1", "7.2",
    "7.3", "7.4", "7.5", "7.6",
];

fn table_lines(id: &str) -> Option<(usize, &'static [&'static str])> {
    let entry: (usize, &'static [&'static str]) = match id {
        "5.1" => (5, &["124"]),
        "5.2" => (5, &["124", "345"]),
        "5.3" => (5, &[]),
        "6.1" => (6, &["124"]),
        "6.2" => (6, &["124", "356"]),
        "6.3" => (6, &["124", "345"]),
        "6.4" => (6, &["124", "345", "136"]),
        "6.5" => (6, &["124", "135", "236", "456"]),
        "6.6" => (6, &["1245"]),
        "6.7" => (6, &["1245", "356"]),
        "6.8" => (6, &[]),
        "7.1" => (7, &["124", "135", "236", "347", "567"]),
        "7.2" => (7, &["124", "135", "167", "236", "257", "347"]),
        "7.3" => (7, &["124", "135", "236", "567"]),
        "7.4" => (7, &["124", "135", "236", "347"]),
        "7.5" => (7, &["124", "135", "236", "257", "347"]),
        "7.6" => (7, &["126", "1347", "257", "456"]),
        _ => return None,
    };
    Some(entry)
}

/// Rank-3 matroid of a line-census row such as `"6.3"`.
pub fn table_matroid(id: &str) -> Result<Matroid, MatroidError> {
    let (n, lines) = table_lines(id).ok_or_else(|| MatroidError::UnknownName(id.to_string()))?;
    Matroid::from_lines(n, triples(lines))
}

fn parse_triple(args: &str) -> Option<GroundSubset> {
    let args = args.trim();
    let inner = args
        .strip_prefix('(')
        .and_then(|a| a.strip_suffix(')'))
        .unwrap_or(args);
    let s = GroundSubset::parse_label(inner)?;
    (s.len() == 3 && s.within(7)).then_some(s)
}

fn parse_pair(args: &str) -> Option<(usize, usize)> {
    let inner = args.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Looks a matroid up by name.
///
/// Accepted keys: `fano`, `pappus`, `fig36`, `m1_37`, `m2_37`, `c_intro`,
/// `m_ijk(i,j,k)` or `m_124`, `mprime_ijk(i,j,k)` or `mprime_124`,
/// `uniform(d,n)`, and `table(6.3)` or `t6.3` for the line-census rows.
pub fn named_matroid(name: &str) -> Result<Matroid, MatroidError> {
    let key = name.trim().to_ascii_lowercase();
    let unknown = || MatroidError::UnknownName(name.to_string());
    match key.as_str() {
        "fano" => return Matroid::from_nonbases(7, 3, triples(&FANO_NONBASES)),
        "pappus" => return Matroid::from_nonbases(9, 3, triples(&PAPPUS_NONBASES)),
        "c_intro" => return Matroid::from_nonbases(7, 3, triples(&C_INTRO_NONBASES)),
        "fig36" => return Matroid::from_lines(6, triples(&["124", "135", "236", "456"])),
        "m1_37" => return table_matroid("7.1"),
        "m2_37" => return table_matroid("7.2"),
        _ => {}
    }
    if let Some(rest) = key.strip_prefix("mprime_ijk").or_else(|| key.strip_prefix("mprime_")) {
        let t = parse_triple(rest).ok_or_else(unknown)?;
        return Matroid::from_bases(
            7,
            3,
            k_subsets(7, 3).into_iter().filter(|b| b.intersection(t).len() == 2),
        );
    }
    if let Some(rest) = key.strip_prefix("m_ijk").or_else(|| key.strip_prefix("m_")) {
        let t = parse_triple(rest).ok_or_else(unknown)?;
        return Matroid::from_bases(
            7,
            3,
            k_subsets(7, 3).into_iter().filter(|b| b.intersection(t).len() >= 2),
        );
    }
    if let Some(rest) = key.strip_prefix("uniform") {
        let (d, n) = parse_pair(rest).ok_or_else(unknown)?;
        if n == 0 || d > n || n > 20 {
            return Err(unknown());
        }
        return Ok(Matroid::uniform(d, n));
    }
    let table_id = key
        .strip_prefix("table")
        .map(|r| r.trim().trim_start_matches('(').trim_end_matches(')').trim())
        .or_else(|| key.strip_prefix('t'));
    if let Some(id) = table_id {
        return table_matroid(id).map_err(|_| unknown());
    }
    Err(unknown())
}
