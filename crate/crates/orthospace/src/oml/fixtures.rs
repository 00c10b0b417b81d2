//! Small named lattices used throughout the tests and shipped as JSON
//! fixtures: the benzene ring O₆ (an ortholattice that is not
//! orthomodular) and the modular ortholattices MOₙ.

use super::FiniteOml;

/// Benzene ring O₆: 0 < a < b < 1 and 0 < b' < a' < 1, with a ↔ a',
/// b ↔ b'. Fails orthomodularity at (a, b): a ∨ (b ∧ a') = a ≠ b.
pub fn o6() -> FiniteOml {
    let labels = ["0", "a", "b", "b'", "a'", "1"];
    let mut leq = vec![(1, 2), (3, 4)];
    for x in 0..6 {
        leq.push((x, x));
        leq.push((0, x));
        leq.push((x, 5));
    }
    FiniteOml::from_leq_pairs(
        6,
        &leq,
        vec![5, 4, 3, 2, 1, 0],
        labels.iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

/// MOₙ: bottom, top, and 2n pairwise-incomparable atoms a₁,a₁',…,aₙ,aₙ'.
pub fn mo(n: usize) -> FiniteOml {
    assert!(n >= 1);
    let size = 2 * n + 2;
    let top = size - 1;
    let mut labels = vec!["0".to_string()];
    for i in 1..=n {
        labels.push(format!("a{i}"));
        labels.push(format!("a{i}'"));
    }
    labels.push("1".to_string());
    let mut leq = Vec::new();
    for x in 0..size {
        leq.push((x, x));
        leq.push((0, x));
        leq.push((x, top));
    }
    let mut ortho = vec![top];
    for i in 0..n {
        ortho.push(2 + 2 * i);
        ortho.push(1 + 2 * i);
    }
    ortho.push(0);
    FiniteOml::from_leq_pairs(size, &leq, ortho, labels).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(o6().size(), 6);
        assert_eq!(mo(1).size(), 4);
        assert_eq!(mo(2).size(), 6);
        assert_eq!(mo(2).atoms().len(), 4);
        assert_eq!(mo(3).size(), 8);
    }

    #[test]
    fn mo2_orthogonality() {
        let m = mo(2);
        let a = m.atoms();
        // each atom is orthogonal exactly to its primed partner
        for &x in &a {
            let partners: Vec<usize> = a
                .iter()
                .copied()
                .filter(|&y| y != x && m.orthogonal(x, y))
                .collect();
            assert_eq!(partners, vec![m.ortho(x)]);
        }
    }
}
