//! Union-find with path compression and union by size, used by the
//! bisimulation checker and by congruence closure on transition systems.

pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    /// Adds a fresh singleton and returns its index.
    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unions_and_finds() {
        let mut dsu = Dsu::new(4);
        assert!(dsu.union(0, 1));
        assert!(dsu.union(2, 3));
        assert_ne!(dsu.find(0), dsu.find(2));
        assert!(dsu.union(1, 3));
        assert!(!dsu.union(0, 2));
        assert_eq!(dsu.find(0), dsu.find(3));
        let fresh = dsu.push();
        assert_ne!(dsu.find(fresh), dsu.find(0));
    }
}
