use std::collections::HashMap;

#[derive(Debug, Clone, Default)]
struct Node {
    next: HashMap<char, u32>,
    terminal: Option<u32>,
}

/// Character trie mapping surfaces to entry indices.
#[derive(Debug, Clone)]
pub(crate) struct Trie {
    nodes: Vec<Node>,
}

impl Default for Trie {
    fn default() -> Self {
        Trie {
            nodes: vec![Node::default()],
        }
    }
}

impl Trie {
    pub(crate) fn insert(&mut self, surface: &str, value: u32) {
        let mut cur = 0usize;
        for ch in surface.chars() {
            cur = match self.nodes[cur].next.get(&ch) {
                Some(&n) => n as usize,
                None => {
                    let id = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[cur].next.insert(ch, id as u32);
                    id
                }
            };
        }
        self.nodes[cur].terminal = Some(value);
    }

    /// Every (value, length) whose surface starts at `pos`, shortest first.
    pub(crate) fn matches_at(&self, text: &[char], pos: usize) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        let mut cur = 0usize;
        for (i, ch) in text.iter().enumerate().skip(pos) {
            match self.nodes[cur].next.get(ch) {
                Some(&n) => cur = n as usize,
                None => break,
            }
            if let Some(v) = self.nodes[cur].terminal {
                out.push((v, i + 1 - pos));
            }
        }
        out
    }

    pub(crate) fn longest_at(&self, text: &[char], pos: usize) -> Option<(u32, usize)> {
        let mut best = None;
        let mut cur = 0usize;
        for (i, ch) in text.iter().enumerate().skip(pos) {
            match self.nodes[cur].next.get(ch) {
                Some(&n) => cur = n as usize,
                None => break,
            }
            if let Some(v) = self.nodes[cur].terminal {
                best = Some((v, i + 1 - pos));
            }
        }
        best
    }
}
