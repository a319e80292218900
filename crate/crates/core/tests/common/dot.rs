//! Recursive-descent checker for the DOT language (graph, node, edge and
//! attribute statements, subgraphs excluded).

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            out.push(Tok::Sym(if chars[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else if let Some(s) = ["{", "}", "[", "]", ";", ",", "="].iter().find(|s| s.starts_with(c)) {
            out.push(Tok::Sym(s));
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push(Tok::Id(s));
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            if i == start {
                return Err(format!("stray `{}`", c));
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character `{}`", c));
        }
    }
    Ok(out)
}

pub type Attrs = Vec<(String, String)>;

#[derive(Debug, Default)]
pub struct DotGraph {
    pub directed: bool,
    /// node id -> label
    pub labels: Vec<(String, Option<String>)>,
    pub edges: Vec<(String, String, Attrs)>,
}

impl DotGraph {
    pub fn label(&self, id: &str) -> Option<&str> {
        self.labels.iter().find(|(n, _)| n == id).and_then(|(_, l)| l.as_deref())
    }

    /// Longest directed path (in edges) ending at `dst`, ignoring loops.
    pub fn longest_path_into(&self, dst: &str) -> usize {
        fn go(g: &DotGraph, v: &str, seen: &mut Vec<String>) -> usize {
            let mut best = 0;
            for (s, d, _) in &g.edges {
                if d == v && s != d && !seen.contains(s) {
                    seen.push(s.clone());
                    best = best.max(1 + go(g, s, seen));
                    seen.pop();
                }
            }
            best
        }
        go(self, dst, &mut vec![dst.to_string()])
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), String> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(format!("expected `{}` at token {}, found {:?}", s, self.pos, self.peek()))
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.toks.get(self.pos) {
            Some(Tok::Id(s)) => {
                self.pos += 1;
                Ok(s.clone())
            }
            other => Err(format!("expected an ID at token {}, found {:?}", self.pos, other)),
        }
    }

    fn attr_list(&mut self) -> Result<Attrs, String> {
        let mut attrs = Vec::new();
        while self.eat("[") {
            while !self.eat("]") {
                let k = self.id()?;
                self.expect("=")?;
                let v = self.id()?;
                attrs.push((k, v));
                if !self.eat(",") {
                    self.eat(";");
                }
            }
        }
        Ok(attrs)
    }
}

pub fn parse(text: &str) -> Result<DotGraph, String> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut g = DotGraph::default();
    let mut kw = p.id()?;
    if kw.eq_ignore_ascii_case("strict") {
        kw = p.id()?;
    }
    g.directed = match kw.to_ascii_lowercase().as_str() {
        "digraph" => true,
        "graph" => false,
        _ => return Err(format!("expected graph or digraph, found `{}`", kw)),
    };
    if matches!(p.peek(), Some(Tok::Id(_))) {
        p.id()?;
    }
    p.expect("{")?;
    let edge_op = if g.directed { "->" } else { "--" };
    while !p.eat("}") {
        let first = p.id()?;
        if ["graph", "node", "edge"].contains(&first.as_str()) && p.peek() == Some(&Tok::Sym("[")) {
            p.attr_list()?;
        } else if p.eat("=") {
            p.id()?;
        } else if p.peek() == Some(&Tok::Sym(edge_op)) {
            let mut chain = vec![first];
            while p.eat(edge_op) {
                chain.push(p.id()?);
            }
            let attrs = p.attr_list()?;
            for pair in chain.windows(2) {
                g.edges.push((pair[0].clone(), pair[1].clone(), attrs.clone()));
            }
        } else {
            let attrs = p.attr_list()?;
            let label = attrs.into_iter().find(|(k, _)| k == "label").map(|(_, v)| v);
            g.labels.push((first, label));
        }
        p.eat(";");
    }
    if p.pos != p.toks.len() {
        return Err("trailing tokens after the graph".into());
    }
    Ok(g)
}
