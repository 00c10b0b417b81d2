//! The OML law checker. Checks run in a fixed order — partial order,
//! bounds, lattice totality, orthocomplement laws, orthomodularity — and
//! the first violation is reported with a witness tuple that re-checks as
//! a genuine violation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{iter_bits, FiniteOml};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub law: Option<String>,
    pub witness: Vec<usize>,
    pub witness_labels: Vec<String>,
}

impl CheckReport {
    fn pass() -> Self {
        CheckReport {
            passed: true,
            law: None,
            witness: Vec::new(),
            witness_labels: Vec::new(),
        }
    }

    fn fail(l: &FiniteOml, law: &str, witness: Vec<usize>) -> Self {
        let witness_labels = witness.iter().map(|&x| l.label(x).to_string()).collect();
        CheckReport {
            passed: false,
            law: Some(law.to_string()),
            witness,
            witness_labels,
        }
    }
}

/// Check every OML law; lattices of one element are rejected as
/// degenerate (bottom = top breaks complementation).
pub fn check_oml(l: &FiniteOml) -> CheckReport {
    let n = l.size();
    if n == 0 {
        return CheckReport {
            passed: false,
            law: Some("nonempty".into()),
            witness: vec![],
            witness_labels: vec![],
        };
    }
    if n == 1 {
        return CheckReport::fail(l, "nondegeneracy", vec![0]);
    }

    // partial order
    for x in 0..n {
        if !l.le(x, x) {
            return CheckReport::fail(l, "reflexivity", vec![x]);
        }
    }
    if let Some((x, y)) = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            iter_bits(l.up_row(x), n)
                .find(|&y| y != x && l.le(y, x))
                .map(|y| (x, y))
        })
        .min()
    {
        return CheckReport::fail(l, "antisymmetry", vec![x, y]);
    }
    if let Some((x, y, z)) = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            let rx = l.up_row(x);
            for y in iter_bits(rx, n) {
                if y == x {
                    continue;
                }
                // up(y) ⊆ up(x)?
                let ry = l.up_row(y);
                for (w, (&above_y, &above_x)) in ry.iter().zip(rx).enumerate() {
                    let stray = above_y & !above_x;
                    if stray != 0 {
                        let z = w * 64 + stray.trailing_zeros() as usize;
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
        .min()
    {
        return CheckReport::fail(l, "transitivity", vec![x, y, z]);
    }

    // bounds: canonical order puts bottom first and top last
    if l.up_count(0) as usize != n {
        return CheckReport::fail(l, "bounds", vec![0]);
    }
    if l.down_count(n - 1) as usize != n {
        return CheckReport::fail(l, "bounds", vec![n - 1]);
    }

    // lattice totality
    if let Some((x, y)) = join_totality_violation(l) {
        return CheckReport::fail(l, "join-exists", vec![x, y]);
    }
    if let Some((x, y)) = meet_totality_violation(l) {
        return CheckReport::fail(l, "meet-exists", vec![x, y]);
    }

    // orthocomplement: involution, antitone, complement laws
    for x in 0..n {
        if l.ortho(l.ortho(x)) != x {
            return CheckReport::fail(l, "ortho-involution", vec![x]);
        }
    }
    if let Some((x, y)) = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            iter_bits(l.up_row(x), n)
                .find(|&y| !l.le(l.ortho(y), l.ortho(x)))
                .map(|y| (x, y))
        })
        .min()
    {
        return CheckReport::fail(l, "ortho-antitone", vec![x, y]);
    }
    for x in 0..n {
        if l.meet(x, l.ortho(x)) != Some(l.bottom()) {
            return CheckReport::fail(l, "complement-meet", vec![x]);
        }
        if l.join(x, l.ortho(x)) != Some(l.top()) {
            return CheckReport::fail(l, "complement-join", vec![x]);
        }
    }

    // orthomodular law: x ≤ y implies y = x ∨ (y ∧ x′); totality holds
    // at this point, so the trusted single-scan meet/join apply
    if let Some((x, y)) = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            let xp = l.ortho(x);
            for y in iter_bits(l.up_row(x), n) {
                if y == x {
                    continue;
                }
                let m = l.meet_trusted(y, xp);
                if l.join_trusted(x, m) != y {
                    return Some((x, y));
                }
            }
            None
        })
        .min()
    {
        return CheckReport::fail(l, "orthomodularity", vec![x, y]);
    }

    CheckReport::pass()
}

/// A pair with no least upper bound, if any.
///
/// For each fixed y the least-index common upper bound s(x,y) satisfies
/// the recursion s(x,y) = min over upper covers c of x of s(c,y) when x
/// and y are incomparable, because every common upper bound of x and y
/// lies above some cover of x. The join of x and y exists for all pairs
/// iff s(x,y) ≤ s(c,y) holds at every such step: the forward direction is
/// monotonicity of joins, and the backward direction follows by downward
/// induction on x. A failing step is itself a pair without a join, since
/// an existing join would be the least-index bound s(x,y).
fn join_totality_violation(l: &FiniteOml) -> Option<(usize, usize)> {
    let n = l.size();
    let (flat, offs) = csr(l.upper_covers());
    (0..n)
        .into_par_iter()
        .filter_map(|y| {
            // bit x of down(y) decides x ≤ y; bit x of up(y) decides y ≤ x
            let below_y = l.down_row(y);
            let above_y = l.up_row(y);
            let mut s = vec![u32::MAX; n];
            let mut bad: Option<usize> = None;
            for x in (0..n).rev() {
                if below_y[x / 64] >> (x % 64) & 1 == 1 {
                    s[x] = y as u32;
                } else if above_y[x / 64] >> (x % 64) & 1 == 1 {
                    s[x] = x as u32;
                } else {
                    let cs = &flat[offs[x]..offs[x + 1]];
                    let mut m = u32::MAX;
                    let mut uniform = true;
                    for &c in cs {
                        let v = s[c as usize];
                        if v != m {
                            // first assignment keeps uniform, later ones clear it
                            uniform = m == u32::MAX;
                            m = m.min(v);
                        }
                    }
                    // all cover bounds equal means m trivially below them
                    if !uniform && cs.iter().any(|&c| !l.le(m as usize, s[c as usize] as usize))
                    {
                        bad = Some(x);
                    }
                    s[x] = m;
                }
            }
            bad.map(|x| (x, y))
        })
        .min()
}

fn csr(covers: Vec<Vec<u32>>) -> (Vec<u32>, Vec<usize>) {
    let mut offs = Vec::with_capacity(covers.len() + 1);
    let mut flat = Vec::with_capacity(covers.iter().map(|c| c.len()).sum());
    offs.push(0);
    for c in covers {
        flat.extend_from_slice(&c);
        offs.push(flat.len());
    }
    (flat, offs)
}

fn meet_totality_violation(l: &FiniteOml) -> Option<(usize, usize)> {
    let n = l.size();
    let (flat, offs) = csr(l.lower_covers());
    (0..n)
        .into_par_iter()
        .filter_map(|y| {
            // s(x,y) = greatest-index common lower bound; bottom is index 0,
            // so the set is never empty once the bounds check has passed.
            let below_y = l.down_row(y);
            let above_y = l.up_row(y);
            let mut s = vec![0u32; n];
            let mut bad: Option<usize> = None;
            for x in 0..n {
                if above_y[x / 64] >> (x % 64) & 1 == 1 {
                    s[x] = y as u32;
                } else if below_y[x / 64] >> (x % 64) & 1 == 1 {
                    s[x] = x as u32;
                } else {
                    let cs = &flat[offs[x]..offs[x + 1]];
                    let mut m = u32::MAX;
                    let mut uniform = true;
                    for &c in cs {
                        let v = s[c as usize];
                        if v != m {
                            uniform = m == u32::MAX;
                            m = if m == u32::MAX { v } else { m.max(v) };
                        }
                    }
                    if !uniform
                        && bad.is_none()
                        && cs.iter().any(|&c| !l.le(s[c as usize] as usize, m as usize))
                    {
                        bad = Some(x);
                    }
                    s[x] = m;
                }
            }
            bad.map(|x| (x, y))
        })
        .min()
}

impl FiniteOml {
    #[doc(hidden)]
    pub fn profile_upper_covers(&self) -> usize {
        self.upper_covers().iter().map(|c| c.len()).sum()
    }
    #[doc(hidden)]
    pub fn profile_lower_covers(&self) -> usize {
        self.lower_covers().iter().map(|c| c.len()).sum()
    }
    #[doc(hidden)]
    pub fn profile_join_dp(&self) -> Option<(usize, usize)> {
        join_totality_violation(self)
    }
    #[doc(hidden)]
    pub fn profile_meet_dp(&self) -> Option<(usize, usize)> {
        meet_totality_violation(self)
    }
    #[doc(hidden)]
    pub fn profile_orthomod(&self) -> Option<(usize, usize)> {
        use rayon::prelude::*;
        let n = self.size();
        (0..n)
            .into_par_iter()
            .filter_map(|x| {
                let xp = self.ortho(x);
                for y in iter_bits(self.up_row(x), n) {
                    if y == x {
                        continue;
                    }
                    let m = self.meet_trusted(y, xp);
                    if self.join_trusted(x, m) != y {
                        return Some((x, y));
                    }
                }
                None
            })
            .min()
    }
    #[doc(hidden)]
    pub fn profile_transitivity(&self) -> Option<(usize, usize)> {
        use rayon::prelude::*;
        let n = self.size();
        (0..n)
            .into_par_iter()
            .filter_map(|x| {
                let rx = self.up_row(x);
                for y in iter_bits(rx, n) {
                    if y == x {
                        continue;
                    }
                    let ry = self.up_row(y);
                    for (&a, &b) in ry.iter().zip(rx) {
                        if a & !b != 0 {
                            return Some((x, y));
                        }
                    }
                }
                None
            })
            .min()
    }
}

/// Slow reference checker: scans all elements for bounds and recomputes
/// meets and joins by brute force. Used to cross-validate [`check_oml`]
/// on small lattices.
pub fn naive_check_oml(l: &FiniteOml) -> CheckReport {
    let n = l.size();
    if n <= 1 {
        return check_oml(l);
    }
    for x in 0..n {
        if !l.le(x, x) {
            return CheckReport::fail(l, "reflexivity", vec![x]);
        }
        for y in 0..n {
            if x != y && l.le(x, y) && l.le(y, x) {
                return CheckReport::fail(l, "antisymmetry", vec![x.min(y), x.max(y)]);
            }
            for z in 0..n {
                if l.le(x, y) && l.le(y, z) && !l.le(x, z) {
                    return CheckReport::fail(l, "transitivity", vec![x, y, z]);
                }
            }
        }
    }
    let bottom = (0..n).find(|&b| (0..n).all(|y| l.le(b, y)));
    let top = (0..n).find(|&t| (0..n).all(|y| l.le(y, t)));
    let (Some(bottom), Some(top)) = (bottom, top) else {
        return CheckReport::fail(l, "bounds", vec![0]);
    };
    let naive_join = |x: usize, y: usize| -> Option<usize> {
        let ubs: Vec<usize> = (0..n).filter(|&u| l.le(x, u) && l.le(y, u)).collect();
        ubs.iter()
            .copied()
            .find(|&m| ubs.iter().all(|&u| l.le(m, u)))
    };
    let naive_meet = |x: usize, y: usize| -> Option<usize> {
        let lbs: Vec<usize> = (0..n).filter(|&u| l.le(u, x) && l.le(u, y)).collect();
        lbs.iter()
            .copied()
            .find(|&m| lbs.iter().all(|&u| l.le(u, m)))
    };
    for x in 0..n {
        for y in 0..n {
            if naive_join(x, y).is_none() {
                return CheckReport::fail(l, "join-exists", vec![x.min(y), x.max(y)]);
            }
            if naive_meet(x, y).is_none() {
                return CheckReport::fail(l, "meet-exists", vec![x.min(y), x.max(y)]);
            }
        }
    }
    for x in 0..n {
        if l.ortho(l.ortho(x)) != x {
            return CheckReport::fail(l, "ortho-involution", vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if l.le(x, y) && !l.le(l.ortho(y), l.ortho(x)) {
                return CheckReport::fail(l, "ortho-antitone", vec![x, y]);
            }
        }
    }
    for x in 0..n {
        if naive_meet(x, l.ortho(x)) != Some(bottom) {
            return CheckReport::fail(l, "complement-meet", vec![x]);
        }
        if naive_join(x, l.ortho(x)) != Some(top) {
            return CheckReport::fail(l, "complement-join", vec![x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if l.le(x, y) && x != y {
                let m = naive_meet(y, l.ortho(x));
                if m.is_none() || naive_join(x, m.unwrap()) != Some(y) {
                    return CheckReport::fail(l, "orthomodularity", vec![x, y]);
                }
            }
        }
    }
    CheckReport::pass()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::super::{FiniteOml, Limits};
    use super::*;

    #[test]
    fn boolean_algebras_pass() {
        let limits = Limits::default();
        for k in 1..=4 {
            let b = FiniteOml::boolean_powerset(k, &limits).unwrap();
            let report = check_oml(&b);
            assert!(report.passed, "2^{k} failed: {report:?}");
        }
    }

    #[test]
    fn benzene_fails_orthomodularity_at_a_b() {
        let o6 = fixtures::o6();
        let report = check_oml(&o6);
        assert!(!report.passed);
        assert_eq!(report.law.as_deref(), Some("orthomodularity"));
        assert_eq!(report.witness_labels, vec!["a", "b"]);
        // the witness re-checks: a ∨ (b ∧ a') = a ≠ b
        let (x, y) = (report.witness[0], report.witness[1]);
        let m = o6.meet(y, o6.ortho(x)).unwrap();
        assert_eq!(o6.join(x, m), Some(x));
        assert_ne!(o6.join(x, m), Some(y));
    }

    #[test]
    fn mo_lattices_pass() {
        for k in 1..=3 {
            let mo = fixtures::mo(k);
            assert!(check_oml(&mo).passed, "MO{k} failed");
        }
    }

    #[test]
    fn trivial_lattice_is_degenerate() {
        let t = FiniteOml::trivial();
        let report = check_oml(&t);
        assert_eq!(report.law.as_deref(), Some("nondegeneracy"));
    }

    #[test]
    fn broken_posets_are_caught() {
        // missing reflexive pair
        let l = FiniteOml::from_leq_pairs(
            2,
            &[(0, 1), (1, 1)],
            vec![1, 0],
            vec!["0".into(), "1".into()],
        )
        .unwrap();
        assert_eq!(check_oml(&l).law.as_deref(), Some("reflexivity"));
        // no joins: two maximal elements
        let l = FiniteOml::from_leq_pairs(
            4,
            &[(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            vec![3, 2, 1, 0],
            vec!["0".into(), "x".into(), "p".into(), "q".into()],
        )
        .unwrap();
        let report = check_oml(&l);
        assert_eq!(report.law.as_deref(), Some("bounds"));
    }

    #[test]
    fn missing_join_detected() {
        // 0 < a,b < p,q < 1: a,b have two minimal upper bounds
        let mut leq = vec![(0usize, 0usize)];
        let n = 6; // 0,a,b,p,q,1
        for x in 0..n {
            leq.push((x, x));
            leq.push((0, x));
            leq.push((x, 5));
        }
        for &(x, y) in &[(1, 3), (1, 4), (2, 3), (2, 4)] {
            leq.push((x, y));
        }
        let l = FiniteOml::from_leq_pairs(
            n,
            &leq,
            vec![5, 4, 3, 2, 1, 0],
            (0..n).map(|i| i.to_string()).collect(),
        )
        .unwrap();
        let report = check_oml(&l);
        assert!(!report.passed);
        assert_eq!(report.law.as_deref(), Some("join-exists"));
        let naive = naive_check_oml(&l);
        assert_eq!(naive.law, report.law);
        // witness re-checks as genuine
        let (x, y) = (report.witness[0], report.witness[1]);
        assert_eq!(l.join(x, y), None);
    }

    #[test]
    fn fast_checker_agrees_with_naive_on_fixtures() {
        let limits = Limits::default();
        let mut lattices = vec![
            fixtures::o6(),
            fixtures::mo(1),
            fixtures::mo(2),
            fixtures::mo(3),
        ];
        for k in 1..=4 {
            lattices.push(FiniteOml::boolean_powerset(k, &limits).unwrap());
        }
        lattices.push(
            FiniteOml::product(&fixtures::mo(2), &fixtures::mo(1), &limits).unwrap(),
        );
        for l in &lattices {
            let fast = check_oml(l);
            let slow = naive_check_oml(l);
            assert_eq!(fast.passed, slow.passed);
            assert_eq!(fast.law, slow.law);
        }
    }
}
