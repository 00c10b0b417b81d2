//! The mutually-unbiased-bases configurations: the 22-ray partial
//! configuration parameterized by nonzero (x, y, z), the center test for
//! a block, the four unbiased bases of ℚ(ω)³, and the glued two-center
//! witness diagram that embeds into the ray space of ℚ(ω)³ but admits no
//! real realization.
//!
//! Every derived ray is pinned twice: once by its closed form in x, y, z
//! and once as the cross product of its generating pair. The builders
//! verify the two against each other along with distinctness and block
//! orthogonality, so a transcription slip anywhere is a hard error.

use std::collections::BTreeMap;
use std::time::Duration;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::greechie::{
    diagram_from_graph, find_embedding, DiagramEmbedding, DiagramError, GraphSpec,
    GreechieDiagram,
};
use crate::ray::{standard_basis, unbiased_wrt_block, Ray, Vector3};
use crate::scalar::{Eisenstein, ExactScalar, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MubError {
    #[error("x, y, z must all be nonzero")]
    ZeroComponent,
    #[error("configuration verification failed: {0}")]
    VerificationFailure(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Names of the 22 rays of the partial configuration, in vertex order.
/// The c-rays precede the b-rays so that the deterministic sub-diagram
/// search always extends along already-constrained vertices.
pub const FIGURE1_NAMES: [&str; 22] = [
    "u", "c1", "c2", "c3", "b1", "b2", "b3", "a1", "a2", "a3", "b12", "b13", "b23", "d1", "d2",
    "d3", "b112", "b212", "b113", "b313", "b223", "b323",
];

const FIGURE1_BLOCKS: [[&str; 3]; 12] = [
    ["a1", "b1", "c1"],
    ["a2", "b2", "c2"],
    ["a3", "b3", "c3"],
    ["u", "c1", "d1"],
    ["u", "c2", "d2"],
    ["u", "c3", "d3"],
    ["b1", "b112", "b12"],
    ["b12", "b212", "b2"],
    ["b2", "b223", "b23"],
    ["b23", "b323", "b3"],
    ["b3", "b313", "b13"],
    ["b13", "b113", "b1"],
];

/// The three dashed blocks that turn the partial configuration into the
/// center diagram; "t1".."t3" are their unnamed third points.
const DASHED_BLOCKS: [[&str; 3]; 3] = [
    ["c1", "t1", "b23"],
    ["c2", "t2", "b13"],
    ["c3", "t3", "b12"],
];

/// The abstract diagram of the partial configuration: 22 vertices,
/// 12 blocks.
pub fn figure1_diagram() -> GreechieDiagram {
    named_diagram(&FIGURE1_NAMES, &FIGURE1_BLOCKS, "")
}

/// The center diagram: the partial configuration plus the three dashed
/// blocks; 25 vertices, 15 blocks.
pub fn figure2_diagram() -> GreechieDiagram {
    let mut names: Vec<&str> = FIGURE1_NAMES.to_vec();
    names.extend(["t1", "t2", "t3"]);
    let blocks: Vec<[&str; 3]> = FIGURE1_BLOCKS
        .iter()
        .chain(DASHED_BLOCKS.iter())
        .copied()
        .collect();
    named_diagram(&names, &blocks, "")
}

fn named_diagram(names: &[&str], blocks: &[[&str; 3]], suffix: &str) -> GreechieDiagram {
    let labels: Vec<String> = names.iter().map(|n| format!("{n}{suffix}")).collect();
    let index = |n: &str| names.iter().position(|m| *m == n).unwrap();
    let blocks = blocks
        .iter()
        .map(|b| b.iter().map(|n| index(n)).collect())
        .collect();
    GreechieDiagram::new(labels, blocks).expect("configuration diagrams are valid")
}

/// The partial configuration realized over a concrete field: the 22 named
/// rays, the abstract diagram, and any orthogonalities beyond the drawn
/// blocks (none for generic parameters; the dashed ones appear exactly at
/// centers).
#[derive(Clone, Debug)]
pub struct Figure1Config<K: ExactScalar> {
    pub rays: Vec<(String, Ray<K>)>,
    pub diagram: GreechieDiagram,
    pub extra_orthogonalities: Vec<(String, String)>,
}

impl<K: ExactScalar> Figure1Config<K> {
    pub fn ray(&self, name: &str) -> &Ray<K> {
        &self
            .rays
            .iter()
            .find(|(n, _)| n == name)
            .expect("known ray name")
            .1
    }
}

/// The 22 rays by their closed forms.
fn figure1_vectors<K: ExactScalar>(x: &K, y: &K, z: &K) -> Vec<(String, Vector3<K>)> {
    let o = K::zero;
    let l = K::one;
    let c = |s: &K| s.conj();
    let m = |a: &K, b: &K| a.clone() * b.clone();
    // recurring products: α = xx̄, β = yȳ, γ = zz̄ are the component norms
    let alpha = m(x, &c(x));
    let beta = m(y, &c(y));
    let gamma = m(z, &c(z));
    let table: Vec<(&str, Vector3<K>)> = vec![
        ("u", Vector3::new(x.clone(), y.clone(), z.clone())),
        ("a1", Vector3::new(l(), o(), o())),
        ("a2", Vector3::new(o(), l(), o())),
        ("a3", Vector3::new(o(), o(), l())),
        ("b1", Vector3::new(o(), y.clone(), z.clone())),
        ("b2", Vector3::new(x.clone(), o(), z.clone())),
        ("b3", Vector3::new(x.clone(), y.clone(), o())),
        ("c1", Vector3::new(o(), c(z), -c(y))),
        ("c2", Vector3::new(c(z), o(), -c(x))),
        ("c3", Vector3::new(c(y), -c(x), o())),
        (
            "d1",
            Vector3::new(-(beta.clone() + gamma.clone()), m(&c(x), y), m(&c(x), z)),
        ),
        (
            "d2",
            Vector3::new(m(x, &c(y)), -(alpha.clone() + gamma.clone()), m(&c(y), z)),
        ),
        (
            "d3",
            Vector3::new(m(x, &c(z)), m(y, &c(z)), -(alpha.clone() + beta.clone())),
        ),
        (
            "b12",
            Vector3::new(c(&m(y, z)), c(&m(x, z)), -c(&m(x, y))),
        ),
        (
            "b13",
            Vector3::new(c(&m(y, z)), -c(&m(x, z)), c(&m(x, y))),
        ),
        (
            "b23",
            Vector3::new(-c(&m(y, z)), c(&m(x, z)), c(&m(x, y))),
        ),
        (
            "b112",
            Vector3::new(
                m(x, &beta) + m(x, &gamma),
                -m(y, &gamma),
                m(&beta, z),
            ),
        ),
        (
            "b212",
            Vector3::new(
                -m(x, &gamma),
                m(&alpha, y) + m(y, &gamma),
                m(&alpha, z),
            ),
        ),
        (
            "b113",
            Vector3::new(
                m(x, &beta) + m(x, &gamma),
                m(y, &gamma),
                -m(&beta, z),
            ),
        ),
        (
            "b313",
            Vector3::new(
                -m(x, &beta),
                m(&alpha, y),
                m(&alpha, z) + m(&beta, z),
            ),
        ),
        (
            "b223",
            Vector3::new(
                m(x, &gamma),
                m(y, &gamma) + m(&alpha, y),
                -m(&alpha, z),
            ),
        ),
        (
            "b323",
            Vector3::new(
                m(x, &beta),
                -m(&alpha, y),
                m(&alpha, z) + m(&beta, z),
            ),
        ),
    ];
    table
        .into_iter()
        .map(|(n, v)| (n.to_string(), v))
        .collect()
}

/// Build and fully verify the partial configuration at nonzero (x, y, z):
/// 22 pairwise-distinct rays, 12 pairwise-orthogonal blocks, and every
/// derived ray equal to the cross product of its generating pair.
pub fn build_figure1<K: ExactScalar>(x: &K, y: &K, z: &K) -> Result<Figure1Config<K>, MubError> {
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(MubError::ZeroComponent);
    }
    let vectors = figure1_vectors(x, y, z);
    // rays[i] corresponds to diagram vertex i
    let mut rays = Vec::with_capacity(vectors.len());
    for name in FIGURE1_NAMES {
        let v = &vectors.iter().find(|(n, _)| n == name).unwrap().1;
        let ray = Ray::new(v.clone())
            .map_err(|_| MubError::VerificationFailure(format!("ray {name} is zero")))?;
        rays.push((name.to_string(), ray));
    }
    let config = Figure1Config {
        rays,
        diagram: figure1_diagram(),
        extra_orthogonalities: Vec::new(),
    };

    // distinctness of all 22
    for (i, (na, ra)) in config.rays.iter().enumerate() {
        for (nb, rb) in config.rays.iter().take(i) {
            if ra == rb {
                return Err(MubError::VerificationFailure(format!(
                    "rays {nb} and {na} coincide"
                )));
            }
        }
    }
    // block orthogonality
    for block in &FIGURE1_BLOCKS {
        for i in 0..3 {
            for j in i + 1..3 {
                if !config.ray(block[i]).orthogonal(config.ray(block[j])) {
                    return Err(MubError::VerificationFailure(format!(
                        "block {block:?}: {} and {} are not orthogonal",
                        block[i], block[j]
                    )));
                }
            }
        }
    }
    // derived rays are cross products of their generating pairs
    let pairs: [(&str, &str, &str); 11] = [
        ("c1", "a1", "b1"),
        ("c2", "a2", "b2"),
        ("c3", "a3", "b3"),
        ("d1", "u", "c1"),
        ("d2", "u", "c2"),
        ("d3", "u", "c3"),
        ("b12", "b1", "b2"),
        ("b13", "b1", "b3"),
        ("b23", "b2", "b3"),
        ("b112", "b1", "b12"),
        ("b212", "b2", "b12"),
    ];
    let more: [(&str, &str, &str); 4] = [
        ("b113", "b1", "b13"),
        ("b313", "b3", "b13"),
        ("b223", "b2", "b23"),
        ("b323", "b3", "b23"),
    ];
    for (name, p, q) in pairs.iter().chain(more.iter()) {
        let crossed = config.ray(p).rep().cross(config.ray(q).rep());
        let crossed = Ray::new(crossed).map_err(|_| {
            MubError::VerificationFailure(format!("cross({p},{q}) vanished"))
        })?;
        if &crossed != config.ray(name) {
            return Err(MubError::VerificationFailure(format!(
                "{name} differs from cross({p},{q})"
            )));
        }
    }
    // orthogonalities beyond the drawn figure, reported not rejected; the
    // rim pairs a1,a2,a3 count as drawn (the enclosing circle) although
    // the rim is not one of the 12 diagram blocks
    let mut extra = Vec::new();
    let graph = config.diagram.co_block_graph();
    let rim = ["a1", "a2", "a3"];
    for (i, (na, ra)) in config.rays.iter().enumerate() {
        for (j, (nb, rb)) in config.rays.iter().enumerate().take(i) {
            if rim.contains(&na.as_str()) && rim.contains(&nb.as_str()) {
                continue;
            }
            if ra.orthogonal(rb) && !graph.adjacent(j, i) {
                extra.push((nb.clone(), na.clone()));
            }
        }
    }
    Ok(Figure1Config {
        extra_orthogonalities: extra,
        ..config
    })
}

/// Outcome of the center criterion at (x, y, z): the three dashed inner
/// products, whether they all vanish, and — independently — whether
/// ⟨x,y,z⟩ is unbiased with respect to the standard basis. The two
/// booleans provably agree; the builder asserts it.
#[derive(Clone, Debug)]
pub struct CenterCertificate<K: ExactScalar> {
    pub x: K,
    pub y: K,
    pub z: K,
    pub products: [K; 3],
    pub is_center: bool,
    pub is_unbiased: bool,
}

pub fn center_test<K: ExactScalar>(x: &K, y: &K, z: &K) -> Result<CenterCertificate<K>, MubError> {
    let config = build_figure1(x, y, z)?;
    // inner products on the table representatives, so the values match
    // the closed forms xz̄z − xȳy etc., not just their vanishing
    let vectors = figure1_vectors(x, y, z);
    let vec_of = |name: &str| &vectors.iter().find(|(n, _)| n == name).unwrap().1;
    let ip = |a: &str, b: &str| vec_of(a).inner(vec_of(b));
    let products = [ip("c1", "b23"), ip("c2", "b13"), ip("c3", "b12")];
    let is_center = products.iter().all(|p| p.is_zero());
    let u = config.ray("u").clone();
    let is_unbiased = unbiased_wrt_block(&u, &standard_basis::<K>())
        .expect("standard basis is a block");
    if is_center != is_unbiased {
        return Err(MubError::VerificationFailure(format!(
            "center/unbiased disagree at ({x},{y},{z})"
        )));
    }
    Ok(CenterCertificate {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        products,
        is_center,
        is_unbiased,
    })
}

/// The four mutually unbiased bases of ℚ(ω)³.
pub fn mub_table() -> [[Ray<Eisenstein>; 3]; 4] {
    let e = |a: Eisenstein, b: Eisenstein, c: Eisenstein| {
        Ray::new(Vector3::new(a, b, c)).expect("table rays are nonzero")
    };
    let o = Eisenstein::zero;
    let l = Eisenstein::one;
    let w = Eisenstein::omega;
    let w2 = Eisenstein::omega_sq;
    [
        [e(l(), o(), o()), e(o(), l(), o()), e(o(), o(), l())],
        [e(l(), l(), l()), e(l(), w(), w2()), e(l(), w2(), w())],
        [e(l(), w(), w()), e(l(), w2(), l()), e(l(), l(), w2())],
        [e(l(), w2(), w2()), e(l(), w(), l()), e(l(), l(), w())],
    ]
}

/// Verify the defining properties of the table: rows internally
/// orthogonal, and all 54 cross-basis pairs at squared cosine exactly 1/3.
pub fn verify_mub_table(table: &[[Ray<Eisenstein>; 3]; 4]) -> Result<(), MubError> {
    let third = Rational::new(1.into(), 3.into());
    for (bi, basis) in table.iter().enumerate() {
        for i in 0..3 {
            for j in i + 1..3 {
                if !basis[i].orthogonal(&basis[j]) {
                    return Err(MubError::VerificationFailure(format!(
                        "basis {bi}: rays {i},{j} not orthogonal"
                    )));
                }
            }
        }
    }
    for bi in 0..4 {
        for bj in bi + 1..4 {
            for u in &table[bi] {
                for v in &table[bj] {
                    if u.squared_cosine(v) != third {
                        return Err(MubError::VerificationFailure(format!(
                            "bases {bi},{bj} are not unbiased"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// The glued two-center diagram together with its ℚ(ω)³ realization.
#[derive(Clone, Debug)]
pub struct WitnessDiagram {
    pub diagram: GreechieDiagram,
    pub realization: Option<BTreeMap<String, Ray<Eisenstein>>>,
}

/// Two copies of the center diagram glued along a1, a2, a3 plus the block
/// joining the two centers: 47 vertices and 31 blocks. The realization
/// places the rims on the standard basis and the centers on (1,1,1) and
/// (1,ω,ω²). With `third_center_point` the center block gains a third ray
/// (the cross product of the centers), for diagrams whose blocks must all
/// have three elements.
pub fn build_witness(third_center_point: bool) -> Result<WitnessDiagram, MubError> {
    let one = Eisenstein::one();
    let w = Eisenstein::omega();
    let w2 = Eisenstein::omega_sq();

    let shared = ["a1", "a2", "a3"];
    let copy_names: Vec<&str> = FIGURE1_NAMES
        .iter()
        .copied()
        .filter(|n| !shared.contains(n))
        .chain(["t1", "t2", "t3"])
        .collect();

    let mut labels: Vec<String> = shared.iter().map(|s| s.to_string()).collect();
    for copy in ["1", "2"] {
        labels.extend(copy_names.iter().map(|n| format!("{n}.{copy}")));
    }
    let name_in = |n: &str, copy: &str| -> String {
        if shared.contains(&n) {
            n.to_string()
        } else {
            format!("{n}.{copy}")
        }
    };
    let mut blocks: Vec<Vec<String>> = Vec::new();
    for copy in ["1", "2"] {
        for block in FIGURE1_BLOCKS.iter().chain(DASHED_BLOCKS.iter()) {
            blocks.push(block.iter().map(|n| name_in(n, copy)).collect());
        }
    }
    let mut center_block = vec!["u.1".to_string(), "u.2".to_string()];
    if third_center_point {
        labels.push("tu".to_string());
        center_block.push("tu".to_string());
    }
    blocks.push(center_block);

    let index: BTreeMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let block_idx: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().map(|n| index[n.as_str()]).collect())
        .collect();
    let diagram = GreechieDiagram::new(labels.clone(), block_idx)?;

    // realization: copy 1 at (1,1,1), copy 2 at (1,ω,ω²)
    let mut realization = BTreeMap::new();
    for (copy, (x, y, z)) in [
        ("1", (one.clone(), one.clone(), one.clone())),
        ("2", (one.clone(), w.clone(), w2.clone())),
    ] {
        let config = build_figure1(&x, &y, &z)?;
        for (name, ray) in &config.rays {
            realization.insert(name_in(name, copy), ray.clone());
        }
        for [cn, tn, bn] in DASHED_BLOCKS {
            let crossed = config.ray(cn).rep().cross(config.ray(bn).rep());
            let t = Ray::new(crossed).map_err(|_| {
                MubError::VerificationFailure(format!("dashed third point {tn} vanished"))
            })?;
            realization.insert(name_in(tn, copy), t);
        }
    }
    if third_center_point {
        let t = Ray::new(
            realization["u.1"].rep().cross(realization["u.2"].rep()),
        )
        .map_err(|_| MubError::VerificationFailure("center cross vanished".into()))?;
        realization.insert("tu".to_string(), t);
    }

    // both copies must give the same standard-basis rim
    for a in shared {
        let expect = standard_basis::<Eisenstein>();
        let want = match a {
            "a1" => &expect[0],
            "a2" => &expect[1],
            _ => &expect[2],
        };
        if &realization[a] != want {
            return Err(MubError::VerificationFailure(format!(
                "rim ray {a} is not a standard basis ray"
            )));
        }
    }
    // all rays distinct
    let names: Vec<&String> = labels.iter().collect();
    for (i, na) in names.iter().enumerate() {
        for nb in names.iter().take(i) {
            if realization[na.as_str()] == realization[nb.as_str()] {
                return Err(MubError::VerificationFailure(format!(
                    "witness rays {nb} and {na} coincide"
                )));
            }
        }
    }
    // every block pairwise orthogonal, including the two centers
    for block in &blocks {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                if !realization[block[i].as_str()].orthogonal(&realization[block[j].as_str()]) {
                    return Err(MubError::VerificationFailure(format!(
                        "witness block {block:?} not orthogonal at {} , {}",
                        block[i], block[j]
                    )));
                }
            }
        }
    }
    Ok(WitnessDiagram {
        diagram,
        realization: Some(realization),
    })
}

/// How the bounded exhaustive search ended.
#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BoundedSearchOutcome {
    NoneFound,
    Found { mapping: Vec<usize> },
    Timeout,
}

/// The three real-obstruction certificates.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    /// min over σ,τ ∈ {±1}³ of |⟨σ,τ⟩| — equals 1, never 0.
    #[serde(with = "crate::scalar::rational_text")]
    pub sign_min_abs: Rational,
    pub sign_pairs: usize,
    /// seeded random orthogonal rational ray pairs with both unbiased.
    pub random_samples: usize,
    pub doubly_unbiased_violations: usize,
    /// bounded-height exhaustive host and the witness search outcome.
    pub height_bound: u32,
    pub host_rays: usize,
    pub host_blocks: usize,
    pub bounded_search: BoundedSearchOutcome,
}

/// Certify that the witness has no real realization three ways: the
/// ±1±1±1 ≠ 0 sign certificate, seeded random orthogonal pairs that are
/// never both unbiased, and an exhaustive bounded-height ray host with no
/// witness sub-diagram.
pub fn r3_obstruction_certificates(
    samples: usize,
    height_bound: u32,
    deadline: Duration,
    seed: u64,
) -> Result<ObstructionReport, MubError> {
    // (a) the 64-pair sign certificate
    let signs = [1i64, -1];
    let mut sign_min: Option<Rational> = None;
    let mut sign_pairs = 0;
    for &a in &signs {
        for &b in &signs {
            for &c in &signs {
                for &d in &signs {
                    for &e in &signs {
                        for &f in &signs {
                            let u = qvec(a, b, c);
                            let v = qvec(d, e, f);
                            let ip = u.inner(&v);
                            sign_pairs += 1;
                            if ip.is_zero() {
                                return Err(MubError::VerificationFailure(
                                    "a sign pattern produced orthogonal vectors".into(),
                                ));
                            }
                            let abs = if ip.is_negative() { -ip } else { ip };
                            sign_min = Some(match sign_min.take() {
                                Some(m) if m <= abs => m,
                                _ => abs,
                            });
                        }
                    }
                }
            }
        }
    }

    // (b) random orthogonal rational pairs, half of them biased toward
    // genuinely unbiased first rays so the check is not vacuous
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = standard_basis::<Rational>();
    let mut violations = 0;
    let mut done = 0;
    while done < samples {
        let u = if done % 2 == 0 {
            random_sign_pattern_vector(&mut rng)
        } else {
            random_rational_vector(&mut rng)
        };
        let w = random_rational_vector(&mut rng);
        let v = u.cross(&w);
        if v.is_zero() {
            continue;
        }
        let ru = Ray::new(u).expect("nonzero");
        let rv = Ray::new(v).expect("cross of independent vectors");
        debug_assert!(ru.orthogonal(&rv));
        let both = unbiased_wrt_block(&ru, &basis).expect("standard basis")
            && unbiased_wrt_block(&rv, &basis).expect("standard basis");
        if both {
            violations += 1;
        }
        done += 1;
    }

    // (c) exhaustive bounded-height host
    let witness = build_witness(false)?;
    let rays = bounded_height_rays(height_bound);
    let n = rays.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rays[i].orthogonal(&rays[j]) {
                edges.push((i, j));
            }
        }
    }
    let graph = GraphSpec::new(n, edges).expect("valid orthogonality graph");
    let host = diagram_from_graph(&graph);
    if host.blocks().iter().any(|b| b.len() > 3) {
        return Err(MubError::VerificationFailure(
            "rational ray host produced a clique of more than three rays".into(),
        ));
    }
    let bounded_search = match find_embedding(&witness.diagram, &host, false, deadline) {
        Ok(Some(DiagramEmbedding { mapping, .. })) => BoundedSearchOutcome::Found { mapping },
        Ok(None) => BoundedSearchOutcome::NoneFound,
        Err(DiagramError::Timeout) => BoundedSearchOutcome::Timeout,
        Err(e) => return Err(e.into()),
    };

    Ok(ObstructionReport {
        sign_min_abs: sign_min.expect("64 pairs scanned"),
        sign_pairs,
        random_samples: done,
        doubly_unbiased_violations: violations,
        height_bound,
        host_rays: n,
        host_blocks: host.block_count(),
        bounded_search,
    })
}

fn qvec(x: i64, y: i64, z: i64) -> Vector3<Rational> {
    Vector3::new(
        Rational::from_integer(x.into()),
        Rational::from_integer(y.into()),
        Rational::from_integer(z.into()),
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let n = rng.gen_range(-9i64..=9);
        if n != 0 {
            break n;
        }
    };
    Rational::new(num.into(), rng.gen_range(1i64..=9).into())
}

fn random_rational_vector(rng: &mut ChaCha8Rng) -> Vector3<Rational> {
    Vector3::new(
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
    )
}

/// A scaled ±1 pattern: unbiased with respect to the standard basis.
fn random_sign_pattern_vector(rng: &mut ChaCha8Rng) -> Vector3<Rational> {
    let s = random_rational(rng);
    let flip = |r: &mut ChaCha8Rng, v: &Rational| {
        if r.gen_bool(0.5) {
            -v.clone()
        } else {
            v.clone()
        }
    };
    let x = flip(rng, &s);
    let y = flip(rng, &s);
    let z = flip(rng, &s);
    Vector3::new(x, y, z)
}

/// Every ray of ℚ³ whose canonical representative has numerators and
/// denominators bounded by `h`: forms (1,r,s), (0,1,s), (0,0,1).
pub fn bounded_height_rays(h: u32) -> Vec<Ray<Rational>> {
    let mut values = vec![Rational::zero()];
    for q in 1..=h as i64 {
        for p in 1..=h as i64 {
            if num_integer::gcd(p, q) == 1 {
                values.push(Rational::new(p.into(), q.into()));
                values.push(Rational::new((-p).into(), q.into()));
            }
        }
    }
    values.sort();
    let one = Rational::one();
    let zero = Rational::zero();
    let mut rays = vec![Ray::new(Vector3::new(zero.clone(), zero.clone(), one.clone())).unwrap()];
    for s in &values {
        rays.push(Ray::new(Vector3::new(zero.clone(), one.clone(), s.clone())).unwrap());
    }
    for r in &values {
        for s in &values {
            rays.push(Ray::new(Vector3::new(one.clone(), r.clone(), s.clone())).unwrap());
        }
    }
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_eisenstein;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn figure1_diagram_shape() {
        let d = figure1_diagram();
        assert_eq!(d.vertex_count(), 22);
        assert_eq!(d.block_count(), 12);
        assert_eq!(d.min_loop_order(), Some(6));
        let d2 = figure2_diagram();
        assert_eq!(d2.vertex_count(), 25);
        assert_eq!(d2.block_count(), 15);
        // the dashed blocks close a five-block cycle
        assert_eq!(d2.min_loop_order(), Some(5));
    }

    #[test]
    fn figure1_at_ones_over_q() {
        let one = q(1, 1);
        let config = build_figure1(&one, &one, &one).unwrap();
        assert_eq!(config.rays.len(), 22);
        // at a center the three dashed orthogonalities appear
        let extras = config.extra_orthogonalities.clone();
        for (a, b) in [("c1", "b23"), ("c2", "b13"), ("c3", "b12")] {
            assert!(
                extras.iter().any(|(p, q)| (p == a && q == b) || (p == b && q == a)),
                "missing dashed pair {a},{b} in {extras:?}"
            );
        }
    }

    #[test]
    fn figure1_example_at_1_1_2() {
        let config = build_figure1(&q(1, 1), &q(1, 1), &q(2, 1)).unwrap();
        // d1 = ⟨−yȳ−zz̄, x̄y, x̄z⟩ = ⟨−5, 1, 2⟩
        let d1 = Ray::new(qvec(-5, 1, 2)).unwrap();
        assert_eq!(config.ray("d1"), &d1);
        // generic parameters: the drawn orthogonalities are exactly all,
        // restricted to the a/b/c/d rays
        let names: Vec<&str> = FIGURE1_NAMES
            .iter()
            .copied()
            .filter(|n| !n.starts_with("b1") && !n.starts_with("b2") && !n.starts_with("b3") || n.len() == 2)
            .collect();
        let graph = config.diagram.co_block_graph();
        let rim = ["a1", "a2", "a3"];
        for (i, (na, ra)) in config.rays.iter().enumerate() {
            for (j, (nb, rb)) in config.rays.iter().enumerate().take(i) {
                if names.contains(&na.as_str()) && names.contains(&nb.as_str()) {
                    // drawn = sharing a block, or lying together on the rim
                    let drawn = graph.adjacent(i, j)
                        || rim.contains(&na.as_str()) && rim.contains(&nb.as_str());
                    assert_eq!(ra.orthogonal(rb), drawn, "pair {nb},{na}");
                }
            }
        }
    }

    #[test]
    fn figure1_over_eisenstein() {
        let one = Eisenstein::one();
        let w = Eisenstein::omega();
        let w2 = Eisenstein::omega_sq();
        let config = build_figure1(&one, &w, &w2).unwrap();
        assert_eq!(config.rays.len(), 22);
    }

    #[test]
    fn figure1_rejects_zero_components() {
        assert!(matches!(
            build_figure1(&q(0, 1), &q(1, 1), &q(1, 1)),
            Err(MubError::ZeroComponent)
        ));
    }

    #[test]
    fn center_test_examples() {
        let cert = center_test(&q(1, 1), &q(1, 1), &q(1, 1)).unwrap();
        assert!(cert.is_center && cert.is_unbiased);
        assert!(cert.products.iter().all(|p| p.is_zero()));

        let cert = center_test(&q(1, 1), &q(1, 1), &q(2, 1)).unwrap();
        assert!(!cert.is_center && !cert.is_unbiased);
        // ⟨c1,b23⟩ = xz̄z − xȳy = 4 − 1 = 3
        assert_eq!(cert.products[0], q(3, 1));

        let cert = center_test(&Eisenstein::one(), &Eisenstein::omega(), &Eisenstein::omega_sq())
            .unwrap();
        assert!(cert.is_center && cert.is_unbiased);
    }

    #[test]
    fn center_products_match_closed_forms() {
        for (x, y, z) in [(q(1, 2), q(3, 1), q(2, 5)), (q(-2, 1), q(1, 3), q(4, 1))] {
            let cert = center_test(&x, &y, &z).unwrap();
            let norm = |s: &Rational| ExactScalar::norm(s);
            assert_eq!(cert.products[0], &x * (norm(&z) - norm(&y)));
            assert_eq!(cert.products[1], &y * (norm(&z) - norm(&x)));
            assert_eq!(cert.products[2], &z * (norm(&y) - norm(&x)));
        }
    }

    #[test]
    fn mub_table_verifies() {
        let table = mub_table();
        verify_mub_table(&table).unwrap();
        // row 1 is the standard basis
        assert_eq!(table[0], standard_basis::<Eisenstein>());
        // ⟨1,ω,ω⟩ against ⟨0,1,0⟩ has squared cosine 1/3
        assert_eq!(table[2][0].squared_cosine(&table[0][1]), q(1, 3));
        // rows of one basis are orthogonal
        assert!(table[1][1].orthogonal(&table[1][2]));
    }

    #[test]
    fn witness_counts_and_orthogonality() {
        let w = build_witness(false).unwrap();
        assert_eq!(w.diagram.vertex_count(), 47);
        assert_eq!(w.diagram.block_count(), 31);
        let real = w.realization.as_ref().unwrap();
        assert_eq!(real.len(), 47);
        // the centers are orthogonal: ⟨(1,1,1),(1,ω,ω²)⟩ = 0
        assert!(real["u.1"].orthogonal(&real["u.2"]));
        let u1 = parse_eisenstein("1").unwrap();
        assert_eq!(
            real["u.1"],
            Ray::new(Vector3::new(u1.clone(), u1.clone(), u1)).unwrap()
        );
        // one copy retains the five-block loop and nothing shorter
        assert_eq!(w.diagram.min_loop_order(), Some(5));

        let w3 = build_witness(true).unwrap();
        assert_eq!(w3.diagram.vertex_count(), 48);
        assert_eq!(w3.diagram.block_count(), 31);
    }

    #[test]
    fn obstruction_small() {
        let report =
            r3_obstruction_certificates(200, 2, Duration::from_secs(60), 42).unwrap();
        assert_eq!(report.sign_min_abs, q(1, 1));
        assert_eq!(report.sign_pairs, 64);
        assert_eq!(report.doubly_unbiased_violations, 0);
        assert_eq!(report.bounded_search, BoundedSearchOutcome::NoneFound);
        assert!(report.host_rays > 0 && report.host_blocks > 0);
    }

    #[test]
    fn bounded_rays_are_distinct_and_canonical() {
        let rays = bounded_height_rays(2);
        for (i, a) in rays.iter().enumerate() {
            for b in rays.iter().take(i) {
                assert_ne!(a, b);
            }
        }
        // h=2: values {0, ±1, ±2, ±1/2} → 7; rays = 1 + 7 + 49
        assert_eq!(rays.len(), 57);
    }

    #[test]
    fn cross_check_table_vs_cross_products_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let x = random_rational(&mut rng);
            let y = random_rational(&mut rng);
            let z = random_rational(&mut rng);
            build_figure1(&x, &y, &z).unwrap();
            let cert = center_test(&x, &y, &z).unwrap();
            assert_eq!(cert.is_center, cert.is_unbiased);
        }
        for _ in 0..40 {
            let e = |r: &mut ChaCha8Rng| {
                Eisenstein::new(
                    q(r.gen_range(-4i64..=4), r.gen_range(1i64..=3)),
                    q(r.gen_range(-4i64..=4), 1),
                )
            };
            let (x, y, z) = (e(&mut rng), e(&mut rng), e(&mut rng));
            if x.is_zero() || y.is_zero() || z.is_zero() {
                continue;
            }
            build_figure1(&x, &y, &z).unwrap();
            let cert = center_test(&x, &y, &z).unwrap();
            assert_eq!(cert.is_center, cert.is_unbiased);
        }
    }

    #[test]
    fn hexagon_midpoint_opposite_pairs_stay_positive_over_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let opposite = [("b112", "b323"), ("b212", "b313"), ("b113", "b223")];
        let mut tried = 0;
        while tried < 50 {
            let x = random_rational(&mut rng);
            let y = random_rational(&mut rng);
            let z = random_rational(&mut rng);
            let norms = [
                ExactScalar::norm(&x),
                ExactScalar::norm(&y),
                ExactScalar::norm(&z),
            ];
            if norms[0] == norms[1] || norms[1] == norms[2] || norms[0] == norms[2] {
                continue;
            }
            tried += 1;
            let config = build_figure1(&x, &y, &z).unwrap();
            let vectors = figure1_vectors(&x, &y, &z);
            let vec_of =
                |name: &str| &vectors.iter().find(|(n, _)| n == name).unwrap().1;
            for (a, b) in opposite {
                // on the table representatives these are positive
                let ip = vec_of(a).inner(vec_of(b));
                let r = ip.to_rational().expect("rational inner product over Q");
                assert!(r.is_positive(), "⟨{a},{b}⟩ = {r} at ({x},{y},{z})");
            }
            // any orthogonality beyond the drawn blocks joins a hexagon
            // element other than a bᵢ with an element off the hexagon
            let hexagon = [
                "b12", "b13", "b23", "b112", "b212", "b113", "b313", "b223", "b323",
            ];
            for (a, b) in &config.extra_orthogonalities {
                let on = hexagon.contains(&a.as_str());
                let on_b = hexagon.contains(&b.as_str());
                assert!(
                    on != on_b,
                    "extra pair ({a},{b}) at ({x},{y},{z}) breaks the hexagon rule"
                );
            }
        }
    }
}
