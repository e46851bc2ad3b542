/// Disjoint sets over `0..n` with path halving and union by rank.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parents: Vec<usize>,
    ranks: Vec<u8>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        Self {
            parents: (0..size).collect(),
            ranks: vec![0; size],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parents[x] != x {
            let grandparent = self.parents[self.parents[x]];
            self.parents[x] = grandparent;
            x = grandparent;
        }
        x
    }

    /// Joins the sets of `a` and `b`. Returns whether anything changed.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        match self.ranks[a].cmp(&self.ranks[b]) {
            std::cmp::Ordering::Greater => self.parents[b] = a,
            std::cmp::Ordering::Less => self.parents[a] = b,
            std::cmp::Ordering::Equal => {
                self.parents[a] = b;
                self.ranks[b] += 1;
            }
        }
        true
    }

    /// Number of distinct sets among the given members.
    pub fn count_among(&mut self, members: impl IntoIterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.into_iter().map(|m| self.find(m)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_merge_sets() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.count_among(0..5), 3);
        uf.union(1, 4);
        assert_eq!(uf.find(0), uf.find(3));
        assert_eq!(uf.count_among(0..5), 2);
    }
}
