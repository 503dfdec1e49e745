//! Finite groups given by a multiplication table: closure of generators
//! and structural classification of small 2-groups.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

/// Closes `gens` under `mul`, returning all elements with the identity
/// first. `eq` decides equality of representations.
pub fn closure<T: Clone>(
    identity: T,
    gens: &[T],
    bound: usize,
    mut mul: impl FnMut(&T, &T) -> Result<T>,
    eq: impl Fn(&T, &T) -> bool,
) -> Result<Vec<T>> {
    let mut elems = vec![identity];
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let prod = mul(&cur, g)?;
            if !elems.iter().any(|e| eq(e, &prod)) {
                if elems.len() >= bound {
                    return Err(Error::ClosureBound(bound));
                }
                elems.push(prod);
            }
        }
    }
    Ok(elems)
}

/// As [`closure`], identifying elements through a hashable key.
pub fn closure_keyed<T: Clone, K: Hash + Eq>(
    identity: T,
    gens: &[T],
    bound: usize,
    mut mul: impl FnMut(&T, &T) -> Result<T>,
    key: impl Fn(&T) -> K,
) -> Result<Vec<T>> {
    let mut seen = HashSet::new();
    seen.insert(key(&identity));
    let mut elems = vec![identity];
    let mut frontier = 0;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let prod = mul(&cur, g)?;
            if seen.insert(key(&prod)) {
                if elems.len() >= bound {
                    return Err(Error::ClosureBound(bound));
                }
                elems.push(prod);
            }
        }
    }
    Ok(elems)
}

/// A group as a Cayley table over indices `0..order`, identity at 0.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Builds the table of an already closed element list.
    pub fn from_elements<T>(
        elems: &[T],
        mut mul: impl FnMut(&T, &T) -> Result<T>,
        eq: impl Fn(&T, &T) -> bool,
    ) -> Result<FiniteGroup> {
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = mul(&elems[i], &elems[j])?;
                table[i][j] = elems
                    .iter()
                    .position(|e| eq(e, &p))
                    .ok_or_else(|| Error::Inconsistent("element set is not closed".into()))?;
            }
        }
        let g = FiniteGroup { table };
        g.check_axioms()?;
        Ok(g)
    }

    /// As [`FiniteGroup::from_elements`], locating products by key.
    pub fn from_keyed<T, K: Hash + Eq>(
        elems: &[T],
        mut mul: impl FnMut(&T, &T) -> Result<T>,
        key: impl Fn(&T) -> K,
    ) -> Result<FiniteGroup> {
        let index: HashMap<K, usize> = elems.iter().enumerate().map(|(i, e)| (key(e), i)).collect();
        if index.len() != elems.len() {
            return Err(Error::Inconsistent("repeated elements".into()));
        }
        let n = elems.len();
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = mul(&elems[i], &elems[j])?;
                table[i][j] = *index
                    .get(&key(&p))
                    .ok_or_else(|| Error::Inconsistent("element set is not closed".into()))?;
            }
        }
        let g = FiniteGroup { table };
        g.check_axioms()?;
        Ok(g)
    }

    /// Indices of the subgroup generated by `gens`, identity first.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        closure_keyed(0, gens, self.order(), |&a, &b| Ok(self.mul(a, b)), |&a| a)
            .expect("bounded by the group")
    }

    /// The subgroup on the given indices (identity first) as a group.
    pub fn subgroup(&self, elems: &[usize]) -> Result<FiniteGroup> {
        FiniteGroup::from_keyed(elems, |&a, &b| Ok(self.mul(a, b)), |&a| a)
    }

    /// Quotient by a normal subgroup given by its indices.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup> {
        let n = self.order();
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(a);
            for &h in normal {
                class[self.mul(a, h)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                table[i][j] = class[self.mul(reps[i], reps[j])];
            }
        }
        // well defined only for a normal subgroup
        for a in 0..n {
            for b in 0..n {
                if class[self.mul(a, b)] != table[class[a]][class[b]] {
                    return Err(Error::Inconsistent("subgroup is not normal".into()));
                }
            }
        }
        let g = FiniteGroup { table };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for i in 0..n {
            if self.table[0][i] != i || self.table[i][0] != i {
                return Err(Error::Inconsistent("element 0 is not the identity".into()));
            }
            let mut seen = vec![false; n];
            for j in 0..n {
                seen[self.table[i][j]] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Inconsistent("table row is not a permutation".into()));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("group")
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| (0..self.order()).all(|b| self.commute(a, b)))
            .collect()
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&a| self.mul(a, a) == 0).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    pub fn structure(&self) -> GroupStructure {
        let n = self.order();
        let orders: Vec<u64> = (0..n).map(|a| self.element_order(a)).collect();
        let max_order = orders.iter().copied().max().unwrap_or(1);
        let center = self.center();
        let involutions = self.involutions();
        let abelian = center.len() == n;
        let exponent_two = orders.iter().all(|&o| o <= 2);
        let kind = if max_order as usize == n {
            GroupKind::Cyclic
        } else if exponent_two {
            GroupKind::ElementaryAbelian
        } else if abelian {
            GroupKind::Abelian
        } else {
            self.classify_metacyclic(&orders, max_order)
                .unwrap_or(GroupKind::Other)
        };
        let mut histogram = std::collections::BTreeMap::new();
        for &o in &orders {
            *histogram.entry(o).or_insert(0usize) += 1;
        }
        GroupStructure {
            order: n,
            kind,
            center_order: center.len(),
            involution_count: involutions.len(),
            max_element_order: max_order,
            element_orders: histogram.into_iter().collect(),
        }
    }

    /// Dihedral, semidihedral or generalized quaternion, when a cyclic
    /// subgroup of index 2 exists.
    fn classify_metacyclic(&self, orders: &[u64], max_order: u64) -> Option<GroupKind> {
        let n = self.order();
        if 2 * max_order as usize != n || !n.is_power_of_two() {
            return None;
        }
        let r = orders.iter().position(|&o| o == max_order)?;
        let cyc: Vec<usize> = (0..max_order).map(|k| self.pow(r, k)).collect();
        let r_inv = self.inv(r);
        let outside: Vec<usize> = (0..n).filter(|a| !cyc.contains(a)).collect();
        let conj = |h: usize| self.mul(self.mul(h, r), self.inv(h));
        if let Some(&h) = outside.iter().find(|&&h| orders[h] == 2) {
            let c = conj(h);
            if c == r_inv {
                return Some(GroupKind::Dihedral);
            }
            if max_order >= 8 && c == self.pow(r, max_order / 2 - 1) {
                return Some(GroupKind::Semidihedral);
            }
            return None;
        }
        let h = outside[0];
        (conj(h) == r_inv && self.mul(h, h) == self.pow(r, max_order / 2))
            .then_some(GroupKind::Quaternion)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    ElementaryAbelian,
    Abelian,
    Dihedral,
    Semidihedral,
    Quaternion,
    Other,
}

impl GroupKind {
    pub fn name(&self) -> &'static str {
        match self {
            GroupKind::Cyclic => "cyclic",
            GroupKind::ElementaryAbelian => "elementary abelian",
            GroupKind::Abelian => "abelian",
            GroupKind::Dihedral => "dihedral",
            GroupKind::Semidihedral => "semidihedral",
            GroupKind::Quaternion => "generalized quaternion",
            GroupKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub order: usize,
    pub kind: GroupKind,
    pub center_order: usize,
    pub involution_count: usize,
    pub max_element_order: u64,
    /// `(element order, count)` pairs.
    pub element_orders: Vec<(u64, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pairs `(k, s)` for `r^k h^s` in a metacyclic group of order `2m`
    /// with `h r h^-1 = r^t` and `h^2 = r^c`.
    fn metacyclic(m: u64, t: u64, c: u64) -> FiniteGroup {
        let mut elems = Vec::new();
        for s in 0..2 {
            for k in 0..m {
                elems.push((k, s));
            }
        }
        let mul = |a: &(u64, u64), b: &(u64, u64)| -> Result<(u64, u64)> {
            // r^a h^s r^b h^u = r^(a + t^s b) h^(s+u)
            let tb = if a.1 == 1 { b.0 * t } else { b.0 };
            let mut k = a.0 + tb;
            let mut s = a.1 + b.1;
            if s == 2 {
                s = 0;
                k += c;
            }
            Ok((k % m, s))
        };
        FiniteGroup::from_elements(&elems, mul, |a, b| a == b).unwrap()
    }

    #[test]
    fn classifies_standard_groups() {
        let d = metacyclic(16, 15, 0).structure();
        assert_eq!(d.kind, GroupKind::Dihedral);
        assert_eq!(d.involution_count, 17);
        assert_eq!(d.center_order, 2);
        let sd = metacyclic(16, 7, 0).structure();
        assert_eq!(sd.kind, GroupKind::Semidihedral);
        assert_eq!(sd.involution_count, 9);
        let q = metacyclic(8, 7, 4).structure();
        assert_eq!(q.kind, GroupKind::Quaternion);
        assert_eq!(q.involution_count, 1);
        let c = metacyclic(8, 1, 0).structure();
        assert_eq!(c.kind, GroupKind::Abelian);
    }

    #[test]
    fn closure_of_generators() {
        let mul = |a: &u64, b: &u64| -> Result<u64> { Ok(a ^ b) };
        let elems = closure(0u64, &[1, 2, 4], 64, mul, |a, b| a == b).unwrap();
        assert_eq!(elems.len(), 8);
        let g = FiniteGroup::from_elements(&elems, mul, |a, b| a == b).unwrap();
        assert_eq!(g.structure().kind, GroupKind::ElementaryAbelian);
        assert!(closure(0u64, &[1, 2, 4], 4, mul, |a, b| a == b).is_err());
        let keyed = closure_keyed(0u64, &[1, 2, 4], 64, mul, |a| *a).unwrap();
        assert_eq!(keyed, elems);
    }

    #[test]
    fn subgroups_and_quotients() {
        let d = metacyclic(8, 7, 0);
        // rotation subgroup is cyclic of order 8; the quotient by the
        // center is dihedral of order 8
        let rot = d.generated(&[1]);
        assert_eq!(
            d.subgroup(&rot).unwrap().structure().kind,
            GroupKind::Cyclic
        );
        let q = d.quotient(&d.center()).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.structure().kind, GroupKind::Dihedral);
        let h = d.generated(&[8]);
        assert!(d.quotient(&h).is_err());
    }
}
