use crate::error::{Error, Result};

use super::{DeltaMap, DeltaSet, SimplexRef};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
        {
            return Err(Error::InvalidAction(
                "multiplication table is not square".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidAction("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::InvalidAction(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidAction(
                            "multiplication is not associative".into(),
                        ));
                    }
                }
            }
        }
        Ok(Self { table, identity })
    }

    /// `ℤ/n` with element `k` standing for `k` (mod `n`).
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self {
            table: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group")
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut cur = g;
        let mut k = 1;
        while cur != self.identity {
            cur = self.mul(cur, g);
            k += 1;
        }
        k
    }

    /// Some element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&g| self.element_order(g) == self.order())
    }
}

/// A group acting on a Δ-set by Δ-automorphisms; `maps[g]` is the action of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub maps: Vec<DeltaMap>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, maps: Vec<DeltaMap>) -> Self {
        Self { group, maps }
    }

    pub fn trivial(x: &DeltaSet) -> Self {
        Self {
            group: FiniteGroup::cyclic(1),
            maps: vec![DeltaMap::identity(x)],
        }
    }

    /// The cyclic action generated by one automorphism of order dividing `n`.
    pub fn cyclic(n: usize, generator: DeltaMap) -> Self {
        let mut maps = Vec::with_capacity(n);
        let mut cur = DeltaMap::new(
            generator
                .assignment()
                .iter()
                .map(|a| (0..a.len()).collect())
                .collect(),
        );
        for _ in 0..n {
            maps.push(cur.clone());
            cur = cur.then(&generator);
        }
        Self {
            group: FiniteGroup::cyclic(n),
            maps,
        }
    }

    pub fn act(&self, g: usize, r: SimplexRef) -> SimplexRef {
        self.maps[g].apply(r)
    }

    pub fn validate(&self, x: &DeltaSet) -> Result<()> {
        if self.maps.len() != self.group.order() {
            return Err(Error::InvalidAction(format!(
                "{} maps for a group of order {}",
                self.maps.len(),
                self.group.order()
            )));
        }
        for (g, m) in self.maps.iter().enumerate() {
            m.check(x, x)
                .map_err(|e| Error::InvalidAction(format!("element {g}: {e}")))?;
            if !m.is_injective() {
                return Err(Error::InvalidAction(format!(
                    "element {g} is not a bijection"
                )));
            }
        }
        let e = self.group.identity();
        if self.maps[e] != DeltaMap::identity(x) {
            return Err(Error::InvalidAction(
                "identity element does not act trivially".into(),
            ));
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                // (gh)·s = g·(h·s)
                let gh = self.group.mul(g, h);
                if self.maps[h].then(&self.maps[g]) != self.maps[gh] {
                    return Err(Error::InvalidAction(format!(
                        "action does not respect the product of {g} and {h}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Orbits in dimension `n`, each sorted, ordered by their least member.
    pub fn orbits(&self, x: &DeltaSet, n: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; x.count(n)];
        let mut out = Vec::new();
        for k in 0..x.count(n) {
            if seen[k] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .maps
                .iter()
                .map(|m| m.apply(SimplexRef::new(n, k)).index)
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                seen[o] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// `X/G` with its projection. Each orbit is named by the lexicographically
/// least label among its members.
pub fn quotient(x: &DeltaSet, action: &GroupAction) -> Result<(DeltaSet, DeltaMap)> {
    action.validate(x)?;
    let dims = x.counts().len();
    let mut orbit_of: Vec<Vec<usize>> = Vec::with_capacity(dims);
    let mut labels = Vec::with_capacity(dims);
    let mut faces = Vec::with_capacity(dims);
    for n in 0..dims {
        let orbits = action.orbits(x, n);
        let mut which = vec![0; x.count(n)];
        let mut dim_labels = Vec::with_capacity(orbits.len());
        let mut dim_faces = Vec::with_capacity(orbits.len());
        for (o, members) in orbits.iter().enumerate() {
            for &k in members {
                which[k] = o;
            }
            let rep = *members
                .iter()
                .min_by(|&&a, &&b| x.labels(n)[a].cmp(&x.labels(n)[b]))
                .expect("orbits are nonempty");
            dim_labels.push(x.labels(n)[rep].clone());
            if n == 0 {
                dim_faces.push(Vec::new());
            } else {
                let r = SimplexRef::new(n, rep);
                dim_faces.push(
                    x.face_indices(r)
                        .iter()
                        .map(|&f| orbit_of[n - 1][f])
                        .collect(),
                );
            }
        }
        orbit_of.push(which);
        labels.push(dim_labels);
        faces.push(dim_faces);
    }
    let q = DeltaSet::from_parts(labels, faces)?;
    Ok((q, DeltaMap::new(orbit_of)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cyclic_groups() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.cyclic_generator(), Some(1));
        assert_eq!(g.inverse(2), 4);
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]]).is_err());
        // Klein four-group is not cyclic
        let v4 = FiniteGroup::new(vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(v4.cyclic_generator(), None);
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let d = fixtures::dunce_hat();
        let (q, p) = quotient(&d, &GroupAction::trivial(&d)).unwrap();
        assert_eq!(q, d);
        assert_eq!(p, DeltaMap::identity(&d));
    }

    #[test]
    fn three_cycle_rotation_gives_circle() {
        let cover = fixtures::cycle(3);
        let rot = fixtures::cycle_rotation(3);
        let (q, p) = quotient(&cover, &GroupAction::cyclic(3, rot)).unwrap();
        assert_eq!(q.counts(), vec![1, 1]);
        assert!(q.validate().is_ok());
        p.check(&cover, &q).unwrap();
        let e = SimplexRef::new(1, 0);
        assert_eq!(q.face(e, 0), q.face(e, 1));
    }

    #[test]
    fn swapping_two_points() {
        let x = DeltaSet::builder().vertex("a").vertex("b").build().unwrap();
        let swap = DeltaMap::new(vec![vec![1, 0]]);
        let (q, _) = quotient(&x, &GroupAction::cyclic(2, swap)).unwrap();
        assert_eq!(q.counts(), vec![1]);
        assert_eq!(q.labels(0), &["a".to_string()]);
    }

    #[test]
    fn bad_actions_are_rejected() {
        let x = DeltaSet::builder().vertex("a").vertex("b").build().unwrap();
        // not a bijection
        let collapse = GroupAction::new(
            FiniteGroup::cyclic(2),
            vec![DeltaMap::identity(&x), DeltaMap::new(vec![vec![0, 0]])],
        );
        assert!(quotient(&x, &collapse).is_err());
        // swap has order 2, not 3
        let wrong = GroupAction::cyclic(3, DeltaMap::new(vec![vec![1, 0]]));
        assert!(wrong.validate(&x).is_err());
    }
}
