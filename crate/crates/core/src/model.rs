//! Problem instances: servers, replicated streams and entangled cliques.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::field_construct;

/// A Σ-QMAC instance. Server indices are 1-based; every subset is stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    field_p: u32,
    field_r: u32,
    servers: usize,
    names: Vec<String>,
    streams: Vec<Vec<usize>>,
    cliques: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricParams {
    pub s: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl SymmetricParams {
    pub fn new(s: usize, alpha: usize, beta: usize) -> Result<Self> {
        if s == 0 || alpha == 0 || beta == 0 || alpha > s || beta > s {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= alpha, beta <= S, got S={s} alpha={alpha} beta={beta}"
            )));
        }
        Ok(SymmetricParams { s, alpha, beta })
    }
}

fn check_subset(what: &str, set: &[usize], servers: usize) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::InvalidProblem(format!("{what} is empty")));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidProblem(format!("{what} lists server {} twice", w[0])));
        }
    }
    if let Some(&bad) = sorted.iter().find(|&&s| s == 0 || s > servers) {
        return Err(Error::InvalidProblem(format!("{what} uses server {bad} outside 1..={servers}")));
    }
    Ok(sorted)
}

fn default_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("w{i}")).collect()
}

impl Problem {
    /// Validates and builds a problem over the default data field F_2.
    pub fn new(servers: usize, streams: Vec<Vec<usize>>, cliques: Vec<Vec<usize>>) -> Result<Self> {
        let names = default_names(streams.len());
        Self::with_names(servers, names, streams, cliques)
    }

    pub fn with_names(
        servers: usize,
        names: Vec<String>,
        streams: Vec<Vec<usize>>,
        cliques: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if servers == 0 {
            return Err(Error::InvalidProblem("no servers".into()));
        }
        if streams.is_empty() {
            return Err(Error::InvalidProblem("no streams".into()));
        }
        if cliques.is_empty() {
            return Err(Error::InvalidProblem("no cliques".into()));
        }
        if names.len() != streams.len() {
            return Err(Error::InvalidProblem(format!("{} names for {} streams", names.len(), streams.len())));
        }
        if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
            return Err(Error::InvalidProblem(format!("invalid stream name {bad:?}")));
        }
        let streams = streams
            .iter()
            .enumerate()
            .map(|(k, w)| check_subset(&format!("stream {}", names[k]), w, servers))
            .collect::<Result<Vec<_>>>()?;
        let cliques = cliques
            .iter()
            .enumerate()
            .map(|(t, e)| check_subset(&format!("clique {}", t + 1), e, servers))
            .collect::<Result<Vec<_>>>()?;
        Ok(Problem { field_p: 2, field_r: 1, servers, names, streams, cliques })
    }

    /// Sets the data field F_{p^r} recorded with the problem.
    pub fn with_field(mut self, p: u32, r: u32) -> Result<Self> {
        field_construct(p as u64, r)?;
        self.field_p = p;
        self.field_r = r;
        Ok(self)
    }

    pub fn field(&self) -> (u32, u32) {
        (self.field_p, self.field_r)
    }

    /// Number of servers S.
    pub fn s(&self) -> usize {
        self.servers
    }

    /// Number of streams K.
    pub fn k(&self) -> usize {
        self.streams.len()
    }

    /// Number of cliques T.
    pub fn t(&self) -> usize {
        self.cliques.len()
    }

    /// Γ, the total clique size.
    pub fn gamma(&self) -> usize {
        self.cliques.iter().map(Vec::len).sum()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// W(k) for k = 1..K, stored at index k - 1.
    pub fn streams(&self) -> &[Vec<usize>] {
        &self.streams
    }

    /// E(t) for t = 1..T, stored at index t - 1.
    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn with_cliques(&self, cliques: Vec<Vec<usize>>) -> Result<Self> {
        let mut p = Problem::with_names(self.servers, self.names.clone(), self.streams.clone(), cliques)?;
        p.field_p = self.field_p;
        p.field_r = self.field_r;
        Ok(p)
    }

    /// True when the single clique contains every server.
    pub fn is_fully_entangled(&self) -> bool {
        self.cliques.len() == 1 && self.cliques[0].len() == self.servers
    }

    /// True when every clique is a single server.
    pub fn is_unentangled(&self) -> bool {
        self.cliques.iter().all(|e| e.len() == 1)
    }

    pub fn render(&self) -> String {
        let mut s = if self.field_r == 1 {
            format!("field {}\n", self.field_p)
        } else {
            format!("field {} {}\n", self.field_p, self.field_r)
        };
        s.push_str(&format!("servers {}\n", self.servers));
        for (name, w) in self.names.iter().zip(&self.streams) {
            s.push_str(&format!("stream {name}: {}\n", join(w)));
        }
        for e in &self.cliques {
            s.push_str(&format!("clique: {}\n", join(e)));
        }
        s
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> =
            self.names.iter().zip(&self.streams).map(|(n, w)| format!("{n}{{{}}}", join_c(w))).collect();
        let e: Vec<String> = self.cliques.iter().map(|e| format!("{{{}}}", join_c(e))).collect();
        write!(f, "S={} W=({}) E=({})", self.servers, w.join(", "), e.join(","))
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn join_c(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn valid_name(n: &str) -> bool {
    !n.is_empty() && n.chars().all(|c| !c.is_whitespace() && c != ':' && c != '#')
}

/// Parses the line-oriented problem format.
///
/// ```text
/// field 2
/// servers 4
/// stream a: 1 2
/// clique: 1 2
/// entangle beta 3
/// ```
pub fn parse_problem(text: &str) -> Result<Problem> {
    let mut field: Option<(u32, u32)> = None;
    let mut servers: Option<usize> = None;
    let mut names = Vec::new();
    let mut streams = Vec::new();
    let mut cliques = Vec::new();

    let parse_indices = |line: usize, list: &str| -> Result<Vec<usize>> {
        list.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("bad server index {t:?}"))))
            .collect()
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if field.is_none() && head != "field" {
            return Err(Error::parse(line_no, "the first line must be `field <p> [<r>]`"));
        }
        match head {
            "field" => {
                if field.is_some() {
                    return Err(Error::parse(line_no, "duplicate field line"));
                }
                let nums = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::parse(line_no, "field needs integer arguments"))?;
                let (p, r) = match nums[..] {
                    [p] => (p, 1),
                    [p, r] => (p, r),
                    _ => return Err(Error::parse(line_no, "usage: field <p> [<r>]")),
                };
                field_construct(p as u64, r).map_err(|e| Error::parse(line_no, e.to_string()))?;
                field = Some((p, r));
            }
            "servers" => {
                if servers.is_some() {
                    return Err(Error::parse(line_no, "duplicate servers line"));
                }
                let s: usize = rest.parse().map_err(|_| Error::parse(line_no, "usage: servers <S>"))?;
                if s == 0 {
                    return Err(Error::parse(line_no, "need at least one server"));
                }
                servers = Some(s);
            }
            "stream" | "clique:" | "entangle" => {
                let s = servers.ok_or_else(|| Error::parse(line_no, "`servers` must precede streams and cliques"))?;
                let check = |set: Vec<usize>, what: &str| {
                    check_subset(what, &set, s).map_err(|e| Error::parse(line_no, e.to_string()))
                };
                match head {
                    "stream" => {
                        let (name, list) = rest
                            .split_once(':')
                            .ok_or_else(|| Error::parse(line_no, "usage: stream <name>: <servers>"))?;
                        let name = name.trim();
                        if !valid_name(name) {
                            return Err(Error::parse(line_no, format!("invalid stream name {name:?}")));
                        }
                        streams.push(check(parse_indices(line_no, list)?, &format!("stream {name}"))?);
                        names.push(name.to_string());
                    }
                    "clique:" => {
                        cliques.push(check(parse_indices(line_no, rest)?, "clique")?);
                    }
                    _ => {
                        let args: Vec<&str> = rest.split_whitespace().collect();
                        match args[..] {
                            ["full"] => cliques.push((1..=s).collect()),
                            ["none"] => cliques.extend((1..=s).map(|i| vec![i])),
                            ["beta", b] => {
                                let b: usize = b.parse().map_err(|_| Error::parse(line_no, "bad beta"))?;
                                if b == 0 || b > s {
                                    return Err(Error::parse(line_no, format!("beta must be in 1..={s}")));
                                }
                                cliques.extend(colex_subsets(s, b));
                            }
                            _ => return Err(Error::parse(line_no, "usage: entangle full|none|beta <b>")),
                        }
                    }
                }
            }
            _ => return Err(Error::parse(line_no, format!("unknown directive {head:?}"))),
        }
    }
    let last = text.lines().count().max(1);
    let (p, r) = field.ok_or_else(|| Error::parse(last, "missing field line"))?;
    let s = servers.ok_or_else(|| Error::parse(last, "missing servers line"))?;
    if streams.is_empty() {
        return Err(Error::parse(last, "no streams"));
    }
    if cliques.is_empty() {
        return Err(Error::parse(last, "no cliques"));
    }
    Problem::with_names(s, names, streams, cliques)?.with_field(p, r)
}

/// All `k`-subsets of `[n]` (1-based) in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = lex_subsets(n, k);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// All `k`-subsets of `[n]` (1-based) in lexicographic order.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// K = C(S, α) streams and T = C(S, β) cliques, both in colex order.
pub fn symmetric_problem(params: SymmetricParams) -> Result<Problem> {
    let SymmetricParams { s, alpha, beta } = SymmetricParams::new(params.s, params.alpha, params.beta)?;
    Problem::new(s, colex_subsets(s, alpha), colex_subsets(s, beta))
}

/// Recovers `(S, α, β)` when the streams are exactly the α-subsets and the
/// cliques exactly the β-subsets of the servers, in any order.
pub fn detect_symmetric(p: &Problem) -> Option<SymmetricParams> {
    let alpha = p.streams.first()?.len();
    let beta = p.cliques.first()?.len();
    let same = |sets: &[Vec<usize>], k: usize| {
        let mut v = sets.to_vec();
        v.sort();
        v == lex_subsets(p.servers, k)
    };
    (same(&p.streams, alpha) && same(&p.cliques, beta)).then_some(SymmetricParams { s: p.servers, alpha, beta })
}

/// The pair-server problem: one server per pair {i, j} (lexicographic order),
/// seeing every stream stored on i or j, with no entanglement.
pub fn merged_map(p: &Problem) -> Result<Problem> {
    let s = p.s();
    if s < 2 {
        return Err(Error::InvalidProblem("merged map needs at least two servers".into()));
    }
    let pairs = lex_subsets(s, 2);
    let streams = p
        .streams()
        .iter()
        .map(|w| (1..=pairs.len()).filter(|&i| pairs[i - 1].iter().any(|x| w.contains(x))).collect::<Vec<_>>())
        .collect();
    let cliques = (1..=pairs.len()).map(|i| vec![i]).collect();
    let mut out = Problem::with_names(pairs.len(), p.names.clone(), streams, cliques)?;
    out.field_p = p.field_p;
    out.field_r = p.field_r;
    Ok(out)
}

/// Replaces the 3-clique `t` (1-based) by its three 2-subsets, appended at the end.
pub fn triangle_substitute(p: &Problem, t: usize) -> Result<Problem> {
    if t == 0 || t > p.t() {
        return Err(Error::IndexOutOfRange { index: t, bound: p.t() });
    }
    let e = &p.cliques[t - 1];
    if e.len() != 3 {
        return Err(Error::InvalidProblem(format!("clique {t} has {} servers, need 3", e.len())));
    }
    let (a, b, c) = (e[0], e[1], e[2]);
    let mut cliques: Vec<Vec<usize>> =
        p.cliques.iter().enumerate().filter(|&(i, _)| i != t - 1).map(|(_, e)| e.clone()).collect();
    cliques.extend([vec![a, b], vec![a, c], vec![b, c]]);
    p.with_cliques(cliques)
}

/// Places `p2` on servers after those of `p1` and joins all servers in one clique.
pub fn concat_problems(p1: &Problem, p2: &Problem) -> Result<Problem> {
    let s = p1.s() + p2.s();
    let mut streams = p1.streams.clone();
    streams.extend(p2.streams.iter().map(|w| w.iter().map(|&i| i + p1.s()).collect::<Vec<_>>()));
    let mut names = p1.names.clone();
    names.extend(p2.names.iter().cloned());
    let mut out = Problem::with_names(s, names, streams, vec![(1..=s).collect()])?;
    out.field_p = p1.field_p;
    out.field_r = p1.field_r;
    Ok(out)
}
