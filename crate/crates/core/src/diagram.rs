//! Oriented planar diagrams, and the 2-bridge closure of a braid word.
//!
//! The closure places an inert strand 0 to the left of the braid on
//! strands 1..=3. The top is always capped 0-1 and 2-3. The bottom is
//! capped the same way when the word ends in `s1`, and with the nested caps
//! 0-3 and 1-2 when it ends in `s2`.
//!
//! Crossings are stored in PD form: the four incident edge labels listed
//! counterclockwise starting from the incoming under-strand. Edge labels
//! start at one and run consecutively along the orientation of each
//! component. The orientation is found by walking down strand 0 from its
//! top cap. A second component, if any, is walked downward from the
//! leftmost unvisited top position.

use std::collections::HashMap;
use std::fmt;

use crate::braid::{BraidWord, Generator, SiteRef};
use crate::error::{Error, Result};

/// Bottom caps of the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CapRule {
    /// 0-1 and 2-3
    SideBySide,
    /// 0-3 and 1-2
    Nested,
}

impl CapRule {
    pub fn for_word(word: &BraidWord) -> CapRule {
        match word.last_generator() {
            Some(Generator::S2) => CapRule::Nested,
            _ => CapRule::SideBySide,
        }
    }

    fn partner(self, p: usize) -> usize {
        match (self, p) {
            (CapRule::SideBySide, 0) => 1,
            (CapRule::SideBySide, 1) => 0,
            (CapRule::SideBySide, 2) => 3,
            (CapRule::SideBySide, 3) => 2,
            (CapRule::Nested, 0) => 3,
            (CapRule::Nested, 3) => 0,
            (CapRule::Nested, 1) => 2,
            (CapRule::Nested, 2) => 1,
            _ => unreachable!("positions are 0..4"),
        }
    }
}

fn top_partner(p: usize) -> usize {
    CapRule::SideBySide.partner(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Counterclockwise from the incoming under-strand.
    pub edges: [usize; 4],
    /// +1 or -1
    pub sign: i8,
}

impl Crossing {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    components: usize,
    free_loops: usize,
    /// Syllable index -> crossing ids, for closures.
    site_map: Vec<Vec<usize>>,
    /// Vertical direction of both strands at each crossing (+1 down, -1 up),
    /// for closures.
    passages: Vec<[i8; 2]>,
    source: Option<BraidWord>,
}

impl PlanarDiagram {
    /// Round crossingless circle.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `n` disjoint crossingless circles.
    pub fn unlink(n: usize) -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            components: n,
            free_loops: n,
            site_map: Vec::new(),
            passages: Vec::new(),
            source: None,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn source_word(&self) -> Option<&BraidWord> {
        self.source.as_ref()
    }

    pub fn site_crossings(&self, site: SiteRef) -> Option<&[usize]> {
        self.site_map.get(site.0).map(|v| v.as_slice())
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Text PD code, one `X[a,b,c,d]` token per crossing.
    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.edges[0], c.edges[1], c.edges[2], c.edges[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a PD code. Orientation is recovered from the under-strands;
    /// crossing signs follow from it.
    pub fn from_pd_str(text: &str) -> Result<Self> {
        let mut quads = Vec::new();
        for token in text.split_whitespace() {
            let inner = token
                .strip_prefix("X[")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::MalformedPd(format!("bad token `{}`", token)))?;
            let labels = inner
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::MalformedPd(format!("bad label in `{}`", token)))?;
            let edges: [usize; 4] = labels
                .try_into()
                .map_err(|_| Error::MalformedPd(format!("`{}` needs four labels", token)))?;
            quads.push(edges);
        }
        if quads.is_empty() {
            return Err(Error::MalformedPd("no crossings".into()));
        }
        from_quads(quads)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

fn from_quads(quads: Vec<[usize; 4]>) -> Result<PlanarDiagram> {
    // every label twice
    let mut seen: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, q) in quads.iter().enumerate() {
        for (slot, &e) in q.iter().enumerate() {
            seen.entry(e).or_default().push((k, slot));
        }
    }
    if let Some((e, _)) = seen.iter().find(|(_, v)| v.len() != 2) {
        return Err(Error::MalformedPd(format!("edge {} does not appear exactly twice", e)));
    }

    // incoming[k] = Some(true) when slot 3 (d) is the incoming over end
    let mut d_incoming: Vec<Option<bool>> = vec![None; quads.len()];
    // role of (crossing, slot): true = the edge enters the crossing there
    let role = |k: usize, slot: usize, d_in: &Vec<Option<bool>>| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            1 => d_in[k].map(|d| !d),
            3 => d_in[k],
            _ => unreachable!(),
        }
    };
    loop {
        let mut progress = false;
        for apps in seen.values() {
            let (a, b) = (apps[0], apps[1]);
            let ra = role(a.0, a.1, &d_incoming);
            let rb = role(b.0, b.1, &d_incoming);
            if let (Some(x), None) = (ra, rb) {
                assign(&mut d_incoming, b, !x);
                progress = true;
            } else if let (None, Some(y)) = (ra, rb) {
                assign(&mut d_incoming, a, !y);
                progress = true;
            }
        }
        if !progress {
            match d_incoming.iter().position(|x| x.is_none()) {
                // an all-over component: either orientation is consistent
                Some(k) => d_incoming[k] = Some(true),
                None => break,
            }
        }
    }
    for apps in seen.values() {
        let (a, b) = (apps[0], apps[1]);
        if role(a.0, a.1, &d_incoming) == role(b.0, b.1, &d_incoming) {
            return Err(Error::MalformedPd("inconsistent orientation".into()));
        }
    }

    let mut uf = UnionFind::new(0);
    let mut index: HashMap<usize, usize> = HashMap::new();
    for &e in seen.keys() {
        let n = index.len();
        index.insert(e, n);
        uf.grow(n + 1);
    }
    for q in &quads {
        uf.union(index[&q[0]], index[&q[2]]);
        uf.union(index[&q[1]], index[&q[3]]);
    }
    let components = uf.count();

    let crossings = quads
        .into_iter()
        .zip(d_incoming)
        .map(|(edges, d_in)| Crossing { edges, sign: if d_in == Some(true) { 1 } else { -1 } })
        .collect();
    Ok(PlanarDiagram {
        crossings,
        components,
        free_loops: 0,
        site_map: Vec::new(),
        passages: Vec::new(),
        source: None,
    })
}

fn assign(d_incoming: &mut [Option<bool>], at: (usize, usize), enters: bool) {
    let (k, slot) = at;
    match slot {
        1 => d_incoming[k] = Some(!enters),
        3 => d_incoming[k] = Some(enters),
        _ => {}
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn grow(&mut self, n: usize) {
        while self.parent.len() < n {
            let i = self.parent.len();
            self.parent.push(i);
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

// Crossing corners; counterclockwise order is TR, TL, BL, BR.
const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;
const CCW: [usize; 4] = [TR, TL, BL, BR];

fn opposite(corner: usize) -> usize {
    match corner {
        TL => BR,
        BR => TL,
        TR => BL,
        BL => TR,
        _ => unreachable!(),
    }
}

struct Visit {
    crossing: usize,
    corner_in: usize,
    downward: bool,
}

/// Flat list of crossings: (left position, sign of the generator).
fn crossing_list(word: &BraidWord) -> Vec<(usize, i8)> {
    let mut out = Vec::with_capacity(word.crossing_count());
    for s in word.syllables() {
        let sign = if s.exponent > 0 { 1 } else { -1 };
        for _ in 0..s.exponent.unsigned_abs() {
            out.push((s.generator.index(), sign));
        }
    }
    out
}

/// Number of components of the closure, from the strand permutation and
/// the caps alone.
pub fn closure_component_count(word: &BraidWord) -> usize {
    // 0..4 top endpoints, 4..8 bottom endpoints
    let mut perm = [0usize, 1, 2, 3];
    for (pos, _) in crossing_list(word) {
        // perm maps a top position to its current position
        for p in perm.iter_mut() {
            if *p == pos {
                *p = pos + 1;
            } else if *p == pos + 1 {
                *p = pos;
            }
        }
    }
    let bottom = CapRule::for_word(word);
    let mut uf = UnionFind::new(8);
    for (top, &bot) in perm.iter().enumerate() {
        uf.union(top, 4 + bot);
    }
    for p in 0..4 {
        uf.union(p, top_partner(p));
        uf.union(4 + p, 4 + bottom.partner(p));
    }
    uf.count()
}

/// Plat closure of any nonempty word. A leading `s2` is allowed here; the
/// top caps absorb it.
pub fn plat_closure(word: &BraidWord) -> Result<PlanarDiagram> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let cs = crossing_list(word);
    let c = cs.len();
    let bottom = CapRule::for_word(word);
    let swap = |k: usize, p: usize| -> usize {
        let g = cs[k].0;
        if p == g {
            g + 1
        } else if p == g + 1 {
            g
        } else {
            p
        }
    };

    // (level, top position) of each strand segment already walked
    let mut walked = vec![[false; 4]; c];
    let mut traces: Vec<Vec<Visit>> = Vec::new();
    for start in 0..4 {
        if walked[0][start] {
            continue;
        }
        let mut visits = Vec::new();
        let (mut y, mut p, mut down) = (0usize, start, true);
        loop {
            if down {
                if y == c {
                    p = bottom.partner(p);
                    down = false;
                    continue;
                }
                if walked[y][p] {
                    break;
                }
                walked[y][p] = true;
                let g = cs[y].0;
                if p == g || p == g + 1 {
                    let corner_in = if p == g { TL } else { TR };
                    visits.push(Visit { crossing: y, corner_in, downward: true });
                }
                p = swap(y, p);
                y += 1;
            } else {
                if y == 0 {
                    p = top_partner(p);
                    down = true;
                    continue;
                }
                let tp = swap(y - 1, p);
                if walked[y - 1][tp] {
                    break;
                }
                walked[y - 1][tp] = true;
                let g = cs[y - 1].0;
                if p == g || p == g + 1 {
                    let corner_in = if p == g { BL } else { BR };
                    visits.push(Visit { crossing: y - 1, corner_in, downward: false });
                }
                p = tp;
                y -= 1;
            }
        }
        traces.push(visits);
    }

    // edge labels along each component
    let mut corner_edge = vec![[0usize; 4]; c];
    let mut dirs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); c];
    let mut next_label = 1usize;
    for visits in &traces {
        let m = visits.len();
        for (t, v) in visits.iter().enumerate() {
            let out_label = next_label + t;
            let in_label = next_label + (t + m - 1) % m;
            corner_edge[v.crossing][v.corner_in] = in_label;
            corner_edge[v.crossing][opposite(v.corner_in)] = out_label;
            dirs[v.crossing].push((v.corner_in, v.downward));
        }
        next_label += m;
    }

    let mut crossings = Vec::with_capacity(c);
    let mut passages = Vec::with_capacity(c);
    for (k, &(_, gen_sign)) in cs.iter().enumerate() {
        let d = &dirs[k];
        debug_assert_eq!(d.len(), 2);
        // positive generator: over strand runs TR-BL
        let is_over = |corner: usize| {
            let over_pair = if gen_sign > 0 { [TR, BL] } else { [TL, BR] };
            over_pair.contains(&corner)
        };
        let under_in = d
            .iter()
            .map(|(corner, _)| *corner)
            .find(|corner| !is_over(*corner))
            .expect("one passage is under");
        let start = CCW.iter().position(|&x| x == under_in).unwrap();
        let mut edges = [0usize; 4];
        for (i, e) in edges.iter_mut().enumerate() {
            *e = corner_edge[k][CCW[(start + i) % 4]];
        }
        let vertical = |down: bool| if down { 1i8 } else { -1 };
        let (d0, d1) = (vertical(d[0].1), vertical(d[1].1));
        crossings.push(Crossing { edges, sign: gen_sign * d0 * d1 });
        passages.push([d0, d1]);
    }

    let mut site_map = Vec::with_capacity(word.len());
    let mut offset = 0usize;
    for s in word.syllables() {
        let n = s.exponent.unsigned_abs() as usize;
        site_map.push((offset..offset + n).collect());
        offset += n;
    }

    Ok(PlanarDiagram {
        crossings,
        components: traces.len(),
        free_loops: 0,
        site_map,
        passages,
        source: Some(word.clone()),
    })
}

/// The 2-bridge closure: nonempty word whose first generator is `s1`.
pub fn two_bridge_closure(word: &BraidWord) -> Result<PlanarDiagram> {
    match word.first_generator() {
        None => Err(Error::EmptyWord),
        Some(Generator::S2) => Err(Error::LeadingSigma2),
        Some(Generator::S1) => plat_closure(word),
    }
}

pub fn component_count(d: &PlanarDiagram) -> usize {
    d.component_count()
}

/// Signed count of the two strand passages through the box of syllable
/// `site` (+1 downward, -1 upward). Zero means the strands are
/// antiparallel and a circle around the box is a crossing circle.
pub fn site_algebraic_intersection(d: &PlanarDiagram, site: SiteRef) -> Result<i64> {
    let word = d
        .source
        .as_ref()
        .ok_or_else(|| Error::MalformedPd("diagram has no braid source".into()))?;
    site.checked(word)?;
    if !d.is_knot() {
        return Err(Error::NotAKnot { components: d.components });
    }
    let k = d.site_map[site.0][0];
    let [a, b] = d.passages[k];
    Ok(a as i64 + b as i64)
}
