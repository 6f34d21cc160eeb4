//! Finite groups as multiplication tables, and normal pairs `H ⊴ G`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table; `table[g][h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::BadGroup("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::BadGroup(format!("{} names for order {n}", names.len())));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::BadGroup("table is not square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::BadGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::BadGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::BadGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { table, inverse, identity, names })
    }

    /// Closes a multiplication rule over `0..n` into a table.
    pub fn from_rule(n: usize, names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        GroupTable::new(table, names)
    }

    pub fn trivial() -> Self {
        GroupTable::cyclic(1)
    }

    /// `Z/n` with element `k` named `"r^k"` (`"e"` for zero).
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| power_name("r", k)).collect();
        GroupTable::from_rule(n, names, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// Dihedral group of order `2n`: element `a + n*b` is `r^a s^b`, with `s r s = r^-1`.
    pub fn dihedral(n: usize) -> Self {
        let names = (0..2 * n)
            .map(|k| {
                let (a, b) = (k % n, k / n);
                match (a, b) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => power_name("r", a),
                    (0, _) => "s".to_string(),
                    _ => format!("{}s", power_name("r", a)),
                }
            })
            .collect();
        GroupTable::from_rule(2 * n, names, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let c = if b == 1 { (n - c) % n } else { c };
            (a + c) % n + n * ((b + d) % 2)
        })
        .expect("dihedral group")
    }

    /// `Z/2 x Z/2` with elements `e, a, b, ab`.
    pub fn klein() -> Self {
        let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
        GroupTable::from_rule(4, names, |x, y| x ^ y).expect("Klein four-group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check(&self, g: usize) -> Result<usize> {
        if g < self.order() {
            Ok(g)
        } else {
            Err(Error::BadGroupElement(g))
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.contains(&y) {
                    set.push(y);
                    frontier.push(y);
                }
            }
        }
        set.sort_unstable();
        set
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.span(&gens);
        for g in self.elements() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.span(&gens);
            }
        }
        gens
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => base.into(),
        _ => format!("{base}{k}"),
    }
}

/// A normal subgroup `H ⊴ G` with a coset transversal and the quotient `Γ = G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalPair {
    pub g: GroupTable,
    /// Elements of `H` in increasing index order.
    pub h: Vec<usize>,
    /// The subgroup as a group in its own right; element `k` is `h[k]`.
    pub h_table: GroupTable,
    /// `transversal[γ]` represents coset `γ`; coset 0 is `H` with representative `e`.
    pub transversal: Vec<usize>,
    /// Coset of each element of `G`.
    pub coset_of: Vec<usize>,
    pub gamma: GroupTable,
}

impl NormalPair {
    pub fn new(g: GroupTable, h: &[usize]) -> Result<Self> {
        let mut hs: Vec<usize> = h.to_vec();
        hs.sort_unstable();
        hs.dedup();
        for &x in &hs {
            g.check(x)?;
        }
        if !hs.contains(&g.identity()) {
            return Err(Error::BadGroup("subgroup misses the identity".into()));
        }
        for &a in &hs {
            for &b in &hs {
                if !hs.contains(&g.mul(a, b)) {
                    return Err(Error::BadGroup("subset is not closed under multiplication".into()));
                }
            }
        }
        for x in g.elements() {
            if hs.iter().any(|&y| !hs.contains(&g.mul(g.mul(x, y), g.inv(x)))) {
                return Err(Error::NonNormal(x));
            }
        }
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut transversal = Vec::new();
        let order = std::iter::once(g.identity()).chain(g.elements().filter(|&x| x != g.identity()));
        for x in order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(x);
            for &y in &hs {
                coset_of[g.mul(x, y)] = c;
            }
        }
        let k = transversal.len();
        let gamma_names = transversal.iter().map(|&s| g.name(s).to_string()).collect();
        let gamma = GroupTable::from_rule(k, gamma_names, |a, b| coset_of[g.mul(transversal[a], transversal[b])])?;
        let h_names = hs.iter().map(|&x| g.name(x).to_string()).collect();
        let h_table = GroupTable::from_rule(hs.len(), h_names, |a, b| {
            hs.iter().position(|&z| z == g.mul(hs[a], hs[b])).expect("closed")
        })?;
        Ok(NormalPair { g, h: hs, h_table, transversal, coset_of, gamma })
    }

    /// Position of a `G`-element of `H` in the subgroup table.
    pub fn h_index(&self, x: usize) -> Option<usize> {
        self.h.iter().position(|&y| y == x)
    }

    /// `(S_3, A_3)`.
    pub fn s3_a3() -> Self {
        NormalPair::new(GroupTable::dihedral(3), &[0, 1, 2]).expect("A3 is normal in S3")
    }

    /// `(Z/4, Z/2)`; the transversal `{e, r}` has `r r = r2 ∈ H`, so the cocycle is nontrivial.
    pub fn z4_z2() -> Self {
        NormalPair::new(GroupTable::cyclic(4), &[0, 2]).expect("subgroups of abelian groups are normal")
    }

    /// `(D_4, C_4)`.
    pub fn d4_c4() -> Self {
        NormalPair::new(GroupTable::dihedral(4), &[0, 1, 2, 3]).expect("C4 is normal in D4")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let s3 = GroupTable::dihedral(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.element_order(3), 2);
        assert!(GroupTable::klein().is_abelian());
        assert_eq!(GroupTable::klein().generators().len(), 2);
        assert_eq!(GroupTable::cyclic(3).generators(), vec![1]);
        assert_eq!(s3.span(&s3.generators()).len(), 6);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let names = || vec!["a".to_string(), "b".to_string()];
        assert!(GroupTable::new(vec![vec![0, 0], vec![0, 0]], names()).is_err());
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]], names()).is_err());
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 0]], names()).is_ok());
    }

    #[test]
    fn normal_pairs() {
        let p = NormalPair::s3_a3();
        assert_eq!(p.gamma.order(), 2);
        assert_eq!(p.transversal, vec![0, 3]);
        let q = NormalPair::d4_c4();
        assert_eq!(q.gamma.order(), 2);
        // <s> is not normal in S3
        assert!(matches!(NormalPair::new(GroupTable::dihedral(3), &[0, 3]), Err(Error::NonNormal(_))));
        let t = NormalPair::new(GroupTable::dihedral(3), &(0..6).collect::<Vec<_>>()).unwrap();
        assert_eq!(t.gamma.order(), 1);
    }
}
