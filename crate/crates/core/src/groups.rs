//! Generators for a few standard permutation groups.

use crate::perm::Permutation;

fn cycle(n: usize, points: &[u32]) -> Permutation {
    Permutation::from_cycles(n, &[points.to_vec()]).expect("valid cycle")
}

/// Cyclic group of order `n` acting regularly.
pub fn cyclic(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    vec![cycle(n, &(0..n as u32).collect::<Vec<_>>())]
}

/// Symmetric group on `n` points.
pub fn symmetric(n: usize) -> Vec<Permutation> {
    match n {
        0 | 1 => vec![Permutation::identity(n.max(1))],
        2 => vec![cycle(2, &[0, 1])],
        _ => vec![cycle(n, &[0, 1]), cycle(n, &(0..n as u32).collect::<Vec<_>>())],
    }
}

/// Alternating group on `n >= 3` points, generated by 3-cycles.
pub fn alternating(n: usize) -> Vec<Permutation> {
    (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect()
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon (`n >= 3`).
pub fn dihedral(n: usize) -> Vec<Permutation> {
    let rot = cycle(n, &(0..n as u32).collect::<Vec<_>>());
    let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
        .expect("reflection");
    vec![rot, refl]
}

/// The quaternion group acting on itself by right multiplication;
/// points `0..8` are `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> Vec<Permutation> {
    let p = |c: &[&[u32]]| {
        Permutation::from_cycles(8, &c.iter().map(|c| c.to_vec()).collect::<Vec<_>>())
            .expect("valid cycles")
    };
    vec![
        p(&[&[0, 2, 1, 3], &[4, 7, 5, 6]]),
        p(&[&[0, 4, 1, 5], &[2, 6, 3, 7]]),
    ]
}
