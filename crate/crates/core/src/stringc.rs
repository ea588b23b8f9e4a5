//! String C-group verification.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{subgroup_generated, Group, Subgroup};

pub const MAX_RANK: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringCError {
    #[error("rank {0} exceeds the supported maximum of 6")]
    RankTooLarge(usize),
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StringCReport {
    pub rank: usize,
    pub group_order: usize,
    pub involutions: bool,
    pub string_condition: bool,
    pub intersection_property: bool,
    /// Orders of `s_i s_{i+1}`.
    pub schlafli: Vec<u32>,
}

impl StringCReport {
    pub fn is_string_c_group(&self) -> bool {
        self.involutions && self.string_condition && self.intersection_property
    }
}

/// Checks the involution, string and intersection conditions; the last one
/// over every pair of generator subsets.
pub fn verify_string_cgroup(group: &Arc<Group>, gens: &[u32]) -> Result<StringCReport, StringCError> {
    let n = gens.len();
    if n > MAX_RANK {
        return Err(StringCError::RankTooLarge(n));
    }
    let involutions = gens.iter().all(|&s| group.element_order(s) == 2);
    let string_condition = (0..n).all(|i| {
        (i + 2..n).all(|j| group.mul(gens[i], gens[j]) == group.mul(gens[j], gens[i]))
    });
    let schlafli = gens
        .windows(2)
        .map(|w| group.element_order(group.mul(w[0], w[1])))
        .collect();
    let subgroups: Vec<Subgroup> = (0..1usize << n)
        .map(|mask| {
            let sub: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| gens[i]).collect();
            subgroup_generated(group, &sub)
        })
        .collect();
    let intersection_property = (0..1usize << n).all(|a| {
        (a + 1..1usize << n).all(|b| subgroups[a].intersection(&subgroups[b]) == subgroups[a & b].members())
    });
    let whole = &subgroups[(1usize << n) - 1];
    Ok(StringCReport {
        rank: n,
        group_order: whole.order(),
        involutions,
        string_condition,
        intersection_property,
        schlafli,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use crate::perm::{enumerate_group, DEFAULT_CAP};

    #[test]
    fn dihedral_rank_two() {
        let g = Arc::new(enumerate_group(&groups::dihedral(5), DEFAULT_CAP).unwrap());
        // two reflections: r and r * rot
        let r = g.generators()[1];
        let r2 = g.mul(r, g.generators()[0]);
        let rep = verify_string_cgroup(&g, &[r, r2]).unwrap();
        assert!(rep.is_string_c_group());
        assert_eq!(rep.schlafli, vec![5]);
        assert_eq!(rep.group_order, 10);
    }

    #[test]
    fn repeated_generator_fails() {
        let g = Arc::new(enumerate_group(&groups::dihedral(5), DEFAULT_CAP).unwrap());
        let r = g.generators()[1];
        let rep = verify_string_cgroup(&g, &[r, r]).unwrap();
        assert!(!rep.intersection_property);
    }

    #[test]
    fn tetrahedron() {
        // S4 with s0 = (0 1), s1 = (1 2), s2 = (2 3) has type {3,3}.
        let g = Arc::new(enumerate_group(&groups::symmetric(4), DEFAULT_CAP).unwrap());
        let t = |a: u32, b: u32| {
            g.index_of(&crate::perm::Permutation::from_cycles(4, &[vec![a, b]]).unwrap())
                .unwrap()
        };
        let rep = verify_string_cgroup(&g, &[t(0, 1), t(1, 2), t(2, 3)]).unwrap();
        assert!(rep.is_string_c_group());
        assert_eq!(rep.schlafli, vec![3, 3]);
        let bad = verify_string_cgroup(&g, &[t(0, 1), t(1, 2), t(0, 2)]).unwrap();
        assert!(!bad.string_condition);
        assert_eq!(
            verify_string_cgroup(&g, &[t(0, 1); 7]),
            Err(StringCError::RankTooLarge(7))
        );
    }
}
