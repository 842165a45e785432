use alloc::vec::Vec;

use crate::monomial::Letter;

/// Prefix tree over words, mapping each stored word to a list of ids.
#[derive(Clone, Debug)]
pub(crate) struct WordTrie {
    nodes: Vec<Node>,
}

#[derive(Clone, Debug, Default)]
struct Node {
    children: Vec<(Letter, u32)>,
    ids: Vec<u32>,
}

impl Default for WordTrie {
    fn default() -> Self {
        WordTrie {
            nodes: alloc::vec![Node::default()],
        }
    }
}

impl WordTrie {
    pub(crate) fn insert(&mut self, word: impl IntoIterator<Item = Letter>, id: u32) {
        let mut at = 0usize;
        for l in word {
            at = match self.nodes[at].children.iter().find(|(c, _)| *c == l) {
                Some(&(_, next)) => next as usize,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[at].children.push((l, next as u32));
                    next
                }
            };
        }
        self.nodes[at].ids.push(id);
    }

    /// Calls `visit(depth, id)` for every stored word that is a prefix of `word`.
    #[inline]
    pub(crate) fn prefixes_of(
        &self,
        word: impl IntoIterator<Item = Letter>,
        mut visit: impl FnMut(usize, u32),
    ) {
        let mut at = 0usize;
        for &id in &self.nodes[0].ids {
            visit(0, id);
        }
        for (depth, l) in word.into_iter().enumerate() {
            match self.nodes[at].children.iter().find(|(c, _)| *c == l) {
                Some(&(_, next)) => at = next as usize,
                None => return,
            }
            for &id in &self.nodes[at].ids {
                visit(depth + 1, id);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn finds_stored_prefixes() {
        let mut t = WordTrie::default();
        t.insert([1, 2], 0);
        t.insert([1], 1);
        t.insert([2, 2], 2);
        let mut hits = vec![];
        t.prefixes_of([1, 2, 3], |d, id| hits.push((d, id)));
        assert_eq!(hits, vec![(1, 1), (2, 0)]);
    }
}
