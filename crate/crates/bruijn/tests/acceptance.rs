//! One PASS/FAIL line per acceptance criterion, with wall time.
//!
//! The process exits non-zero when a criterion fails, unless the failure is
//! exactly one listed in `KNOWN_DISCREPANCIES` (the suite still prints FAIL
//! for it).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use bruijn::corpus;
use bruijn_core::classics::{self, EqualityCase, LinearSpace, PeriodicOddSeq, RepOutcome, Side};
use bruijn_core::dimers::{self, grid_embedding, UndirectedGraph};
use bruijn_core::exactalg::{binomial, rational_to_decimal, IntMatrix};
use bruijn_core::polya::{self, BuiltinGroup, ColorWeighting};
use bruijn_core::{debruijn, eulertours, permshapes, planetrees, BigInt};

const SEED: u64 = 20_240_501;

/// Criterion 9 expects 20 period-two fundaments with 0 < -b < a <= 100. The
/// strict region holds 19; the 20th is [1, -1], which sits on the -b = a
/// boundary. Tolerated only in exactly that shape.
const KNOWN_DISCREPANCIES: &[u32] = &[9];

struct Outcome {
    ok: bool,
    detail: String,
    /// The failure matches the documented discrepancy exactly.
    known: bool,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into(), known: false }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into(), known: false }
}

fn within(t: Duration, secs: u64, what: &str) -> Result<(), String> {
    if t <= Duration::from_secs(secs) {
        Ok(())
    } else {
        Err(format!("{what} took {t:.2?}, limit {secs} s"))
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return fail(format!($($msg)+));
        }
    };
}

fn c1_debruijn_counts() -> Outcome {
    let expected = [1u32, 1, 2, 16, 2048];
    for (n, &e) in (1..=5).zip(&expected) {
        let c = debruijn::count_pn_cycles(n).unwrap();
        ensure!(c == BigInt::from(e), "count_pn_cycles({n}) = {c}, want {e}");
    }
    for n in 1..=4u32 {
        let words = debruijn::enumerate_pn_cycles(n).unwrap();
        let distinct: BTreeSet<_> = words.iter().map(|w| w.canonical().to_string()).collect();
        ensure!(words.len() == expected[n as usize - 1] as usize, "n = {n}: enumerated {}", words.len());
        ensure!(distinct.len() == words.len(), "n = {n}: duplicate cycles");
        ensure!(words.iter().all(|w| debruijn::is_pn_cycle(w, n, 2)), "n = {n}: invalid cycle listed");
    }
    let start = Instant::now();
    let five = debruijn::enumerate_pn_cycles_with_limit(5, 5).unwrap();
    let t = start.elapsed();
    ensure!(five.len() == 2048, "n = 5 enumerated {}", five.len());
    if let Err(e) = within(t, 60, "n = 5 enumeration") {
        return fail(e);
    }
    pass(format!("1, 1, 2, 16, 2048; n <= 4 enumerated; n = 5 enumerated 2048 in {t:.2?}"))
}

fn c2_line_graph() -> Outcome {
    let start = Instant::now();
    for n in [2u32, 3] {
        let Some(map) = debruijn::line_graph_isomorphism(2, n).unwrap() else {
            return fail(format!("no isomorphism at n = {n}"));
        };
        // Re-check the map directly.
        let g = debruijn::build_graph(2, n).unwrap();
        let next = debruijn::build_graph(2, n + 1).unwrap();
        let arcs = g.graph().arcs();
        let mut mapped = Vec::new();
        for (e, &(_, h)) in arcs.iter().enumerate() {
            for (f, &(t, _)) in arcs.iter().enumerate() {
                if h == t {
                    mapped.push((map[e], map[f]));
                }
            }
        }
        let mut target = next.graph().arcs().to_vec();
        mapped.sort_unstable();
        target.sort_unstable();
        let bijective = map.iter().collect::<BTreeSet<_>>().len() == next.graph().node_count();
        ensure!(bijective && mapped == target, "map at n = {n} is not an isomorphism");
    }
    let t = start.elapsed();
    match within(t, 1, "line graph check") {
        Ok(()) => pass(format!("n = 2, 3 in {t:.2?}")),
        Err(e) => fail(e),
    }
}

fn c3_best() -> Outcome {
    let graphs = corpus::eulerian_digraphs(&mut corpus::rng(SEED), 240, 6, 10);
    for (i, g) in graphs.iter().enumerate() {
        ensure!(g.arc_count() <= 10 && eulertours::is_eulerian(g), "graph {i} is not an Eulerian digraph with <= 10 arcs");
        let best = eulertours::count_euler_tours(g).unwrap();
        let oracle = eulertours::enumerate_euler_tours(g).unwrap();
        ensure!(best == oracle, "graph {i}: product formula {best}, search {oracle}");
        let (core, _) = g.without_isolated();
        let counts: BTreeSet<BigInt> =
            (0..core.node_count()).map(|r| eulertours::count_arborescences(&core, r).unwrap()).collect();
        ensure!(counts.len() == 1, "graph {i}: arborescence counts depend on the root: {counts:?}");
    }
    pass(format!("{} graphs, exact agreement, root invariance", graphs.len()))
}

fn grids() -> Vec<(usize, usize)> {
    vec![(2, 2), (2, 3), (2, 4), (4, 4)]
}

fn c4_fkt() -> Outcome {
    let start = Instant::now();
    let graphs = corpus::planar_graphs(&mut corpus::rng(SEED), 400, 14);
    let mut matchable = 0;
    for (i, (g, emb)) in graphs.iter().enumerate() {
        ensure!(g.is_connected() && g.node_count() <= 14, "graph {i} outside the corpus contract");
        let fkt = dimers::count_matchings_fkt(g, &dimers::kasteleyn_orient(g, emb).unwrap()).unwrap();
        let brute = dimers::count_matchings_bruteforce(g).unwrap();
        ensure!(fkt == brute, "graph {i}: fkt {fkt}, brute force {brute}");
        if brute > BigInt::from(0) {
            matchable += 1;
        }
    }
    // Odd node counts give zero on both sides; insist on enough real work.
    ensure!(matchable >= 100, "only {matchable} corpus graphs have a perfect matching");
    let mut grid_counts = Vec::new();
    for (r, c) in grids() {
        let (g, emb) = grid_embedding(r, c).unwrap();
        let fkt = dimers::count_matchings_fkt(&g, &dimers::kasteleyn_orient(&g, &emb).unwrap()).unwrap();
        let brute = dimers::count_matchings_bruteforce(&g).unwrap();
        ensure!(fkt == brute, "{r}x{c} grid: fkt {fkt}, brute force {brute}");
        grid_counts.push(fkt.to_string());
    }
    let t = start.elapsed();
    if let Err(e) = within(t, 120, "FKT suite") {
        return fail(e);
    }
    pass(format!("{} planar graphs ({matchable} with matchings); grids {} in {t:.2?}", graphs.len(), grid_counts.join(", ")))
}

fn c5_pfaffian() -> Outcome {
    let mut tested = 0;
    let mut check = |g: &UndirectedGraph, o: &dimers::Orientation, what: &str| -> Result<(), String> {
        tested += 1;
        match dimers::is_pfaffian_orientation(g, o) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("{what}: orientation is not Pfaffian")),
            Err(e) => Err(format!("{what}: {e}")),
        }
    };
    for (i, (g, emb)) in corpus::planar_graphs(&mut corpus::rng(SEED), 400, 14).iter().enumerate() {
        if g.node_count() <= 12 {
            if let Err(e) = check(g, &dimers::kasteleyn_orient(g, emb).unwrap(), &format!("graph {i}")) {
                return fail(e);
            }
        }
    }
    for (r, c) in grids() {
        let (g, emb) = grid_embedding(r, c).unwrap();
        if g.node_count() <= 12 {
            if let Err(e) = check(&g, &dimers::kasteleyn_orient(&g, &emb).unwrap(), &format!("{r}x{c} grid")) {
                return fail(e);
            }
        }
    }
    pass(format!("{tested} graphs with <= 12 nodes"))
}

/// Cycle index as a sorted list of (coefficient, [(length, exponent)]).
fn census(b: BuiltinGroup) -> Vec<(usize, Vec<(usize, usize)>)> {
    let ci = polya::cycle_index(&b.group().unwrap());
    let mut v: Vec<_> = ci
        .type_counts()
        .iter()
        .map(|(t, &c)| (c, (1..=t.degree()).map(|l| (l, t.count(l))).filter(|&(_, e)| e > 0).collect()))
        .collect();
    v.sort();
    v
}

fn sorted(mut v: Vec<(usize, Vec<(usize, usize)>)>) -> Vec<(usize, Vec<(usize, usize)>)> {
    v.sort();
    v
}

fn c6_polya() -> Outcome {
    let faces = sorted(vec![
        (1, vec![(1, 6)]),
        (3, vec![(1, 2), (2, 2)]),
        (6, vec![(1, 2), (4, 1)]),
        (6, vec![(2, 3)]),
        (8, vec![(3, 2)]),
    ]);
    let vertices = sorted(vec![(1, vec![(1, 8)]), (9, vec![(2, 4)]), (6, vec![(4, 2)]), (8, vec![(1, 2), (3, 2)])]);
    let edges = sorted(vec![
        (1, vec![(1, 12)]),
        (3, vec![(2, 6)]),
        (6, vec![(4, 3)]),
        (6, vec![(1, 2), (2, 5)]),
        (8, vec![(3, 4)]),
    ]);
    for (b, want) in [(BuiltinGroup::CubeFaces, faces), (BuiltinGroup::CubeVertices, vertices), (BuiltinGroup::CubeEdges, edges)] {
        let got = census(b);
        ensure!(got == want, "{b}: cycle index terms {got:?}");
        ensure!(polya::cycle_index(&b.group().unwrap()).order() == 24, "{b}: order is not 24");
    }
    let ci = polya::cycle_index(&BuiltinGroup::CubeFaces.group().unwrap());
    let ten = polya::count_patterns(&ci, 2);
    ensure!(ten == BigInt::from(10), "two-colored cube faces: {ten}");
    let inv = polya::pattern_inventory(&ci, &ColorWeighting::from_names(&["z", "w"]).unwrap());
    let coeff = polya::inventory_coefficient(&inv, &[("z", 4), ("w", 2)]);
    ensure!(coeff == BigInt::from(2).into(), "z^4 w^2 coefficient {coeff}");
    let mut groups = vec![BuiltinGroup::CubeFaces, BuiltinGroup::CubeVertices, BuiltinGroup::CubeEdges];
    for n in 1..=8 {
        groups.push(BuiltinGroup::Cyclic(n));
        groups.push(BuiltinGroup::Dihedral(n));
    }
    for b in &groups {
        let g = b.group().unwrap();
        let ci = polya::cycle_index(&g);
        for names in [&["r", "b"][..], &["r", "g", "b"][..]] {
            let w = ColorWeighting::from_names(names).unwrap();
            let oracle = polya::orbit_inventory_oracle(&g, &w).unwrap();
            ensure!(polya::pattern_inventory(&ci, &w) == oracle, "{b}, {} colors: inventory differs from orbits", names.len());
        }
    }
    pass(format!("three cube indices term for term; 10; coefficient 2; {} groups x 2, 3 colors", groups.len()))
}

fn c7_shapes() -> Outcome {
    let start = Instant::now();
    let mut shapes = 0;
    for n in 1..=8 {
        for q in permshapes::Shape::all(n) {
            let fast = permshapes::psi(&q);
            let slow = permshapes::psi_bruteforce(&q).unwrap();
            ensure!(fast == slow, "shape {q}: psi {fast}, brute force {slow}");
            shapes += 1;
        }
    }
    let t = start.elapsed();
    if let Err(e) = within(t, 60, "exhaustive psi") {
        return fail(e);
    }
    let e: Vec<BigInt> = (0..=13).map(permshapes::euler_number).collect();
    let head: Vec<BigInt> = [1, 1, 1, 2, 5, 16, 61].into_iter().map(BigInt::from).collect();
    ensure!(e[..7] == head[..], "E_0..6 = {:?}", &e[..7]);
    for n in 1..=12usize {
        let rhs: BigInt = (1..=n).step_by(2).map(|j| binomial(n as u64, j as u64) * &e[j] * &e[n - j]).sum();
        ensure!(e[n + 1] == rhs, "recurrence fails at n = {n}");
    }
    for n in 4..=9 {
        ensure!(permshapes::niven_maximality(n).unwrap(), "alternating shapes not the unique maxima at n = {n}");
    }
    pass(format!("{shapes} shapes in {t:.2?}; E_0..6; recurrence n <= 12; maxima n = 4..9"))
}

fn relative_height_error(n: usize) -> f64 {
    let avg: f64 = rational_to_decimal(&planetrees::average_height(n).unwrap(), 15).parse().unwrap();
    let model = (n as f64 * std::f64::consts::PI).sqrt() - 0.5;
    (avg - model).abs() / model
}

fn c8_trees() -> Outcome {
    for n in 1..=10usize {
        let m = (n - 1) as u64;
        let catalan = binomial(2 * m, m) / BigInt::from(m + 1);
        let trees = planetrees::enumerate_plane_trees(n).unwrap();
        ensure!(BigInt::from(trees.len()) == catalan, "n = {n}: {} plane trees, Catalan {catalan}", trees.len());
        let binaries = planetrees::enumerate_binary_trees(2 * n - 1).unwrap();
        ensure!(BigInt::from(binaries.len()) == catalan, "{} binary trees with {} nodes", binaries.len(), 2 * n - 1);
        let mut images = BTreeSet::new();
        for t in &trees {
            ensure!(planetrees::ud_decode(&planetrees::ud_encode(t)).unwrap() == *t, "UD round trip fails");
            let b = planetrees::plane_to_binary(t);
            ensure!(planetrees::binary_to_plane(&b) == *t, "bijection does not invert");
            images.insert(b);
        }
        for b in &binaries {
            ensure!(planetrees::ke_decode(&planetrees::ke_encode(b)).unwrap() == *b, "KE round trip fails");
        }
        ensure!(images == binaries.iter().cloned().collect(), "n = {n}: bijection misses binary trees");
    }
    ensure!(planetrees::gf_identity_check(32).unwrap(), "series identities fail through degree 32");
    let e40 = relative_height_error(40);
    ensure!(e40 <= 0.1, "relative height error at 40 is {e40:.4}");
    let errs: Vec<f64> = (10..=60).step_by(10).map(relative_height_error).collect();
    ensure!(errs.windows(2).all(|w| w[1] < w[0]), "height error not decreasing: {errs:?}");
    pass(format!("n <= 10; series through 32; error at 40 = {e40:.4}; errors {:.4?}", errs))
}

/// `blocks` are k - 1 blocks of one partition whose union holds k blocks of
/// the other.
fn violates_hall(inst: &classics::RepInstance, side: Side, blocks: &[usize], contained: &[usize]) -> bool {
    let (mine, theirs) = match side {
        Side::U => (inst.u_blocks(), inst.b_blocks()),
        Side::B => (inst.b_blocks(), inst.u_blocks()),
    };
    let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    if contained.len() != blocks.len() + 1 || !distinct(blocks) || !distinct(contained) {
        return false;
    }
    let union: BTreeSet<usize> = blocks.iter().flat_map(|&i| mine[i].iter().copied()).collect();
    contained.iter().all(|&j| theirs[j].iter().all(|x| union.contains(x)))
}

fn c9_classics() -> Outcome {
    let start = Instant::now();
    let mut rng = corpus::rng(SEED);
    let uniform = corpus::uniform_rep_instances(&mut rng, 250, 40);
    for (i, inst) in uniform.iter().enumerate() {
        ensure!(inst.size() <= 40, "instance {i} too large");
        match classics::common_representatives(inst) {
            RepOutcome::System(x) => ensure!(inst.is_common_system(&x), "instance {i}: bad system"),
            RepOutcome::Failure(_) => return fail(format!("instance {i}: equal block sizes but no system")),
        }
    }
    let mut failures = 0;
    for (i, inst) in corpus::rep_instances(&mut rng, 400, 40).iter().enumerate() {
        match classics::common_representatives(inst) {
            RepOutcome::System(x) => ensure!(inst.is_common_system(&x), "arbitrary instance {i}: bad system"),
            RepOutcome::Failure(w) => {
                failures += 1;
                ensure!(violates_hall(inst, w.side, &w.blocks, &w.contained), "arbitrary instance {i}: certificate does not hold");
            }
        }
    }
    let r = classics::linear_space_validate(&LinearSpace::fano());
    ensure!(r.equality_case == Some(EqualityCase::ProjectivePlane { k: 3 }), "Fano classified as {:?}", r.equality_case);
    let accept = classics::fundament_decide(&PeriodicOddSeq::new(vec![1, -1]).unwrap());
    let reject = !classics::fundament_decide(&PeriodicOddSeq::new(vec![1, 1]).unwrap());
    ensure!(accept && reject, "[1,-1] accepted: {accept}; [1,1] rejected: {reject}");
    let scan = classics::two_period_fundaments(100);
    let t = start.elapsed();
    if let Err(e) = within(t, 120, "classics suite") {
        return fail(e);
    }
    let summary = format!(
        "{} uniform instances; {failures} certified failures; Fano k = 3; [1,-1] yes, [1,1] no; scan {t:.2?}",
        uniform.len()
    );
    if scan.len() == 20 {
        return pass(summary);
    }
    let known = scan.len() == 19 && !scan.contains(&(1, -1));
    Outcome { ok: false, detail: format!("{summary}; strict scan found {}, expected 20", scan.len()), known }
}

/// Leibniz: signed sum over all permutations.
fn leibniz(m: &IntMatrix) -> (BigInt, BigInt) {
    let n = m.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let (mut det, mut per) = (BigInt::from(0), BigInt::from(0));
    loop {
        let mut term = BigInt::from(1);
        for (i, &j) in perm.iter().enumerate() {
            term *= m.get(i, j);
        }
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        if inversions % 2 == 0 {
            det += &term;
        } else {
            det -= &term;
        }
        per += term;
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    (det, per)
}

fn c10_exact_algebra() -> Outcome {
    let mats = corpus::int_matrices(&mut corpus::rng(SEED), 1200, 6, -9, 9);
    for (i, m) in mats.iter().enumerate() {
        let (det, per) = leibniz(m);
        ensure!(m.det() == det, "matrix {i}: det {} vs Leibniz {det}", m.det());
        let ryser = m.permanent_ryser().unwrap();
        ensure!(ryser == per, "matrix {i}: permanent {ryser} vs expansion {per}");
    }
    pass(format!("{} matrices up to 6x6, determinant and permanent", mats.len()))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "De Bruijn counts", c1_debruijn_counts),
        (2, "line graph identity", c2_line_graph),
        (3, "Euler tour product formula", c3_best),
        (4, "planar matching counts", c4_fkt),
        (5, "Pfaffian orientations", c5_pfaffian),
        (6, "Polya enumeration", c6_polya),
        (7, "permutation shapes", c7_shapes),
        (8, "plane trees", c8_trees),
        (9, "classics", c9_classics),
        (10, "exact algebra", c10_exact_algebra),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let t = start.elapsed();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {status} [{t:>9.2?}] {name}: {}", o.detail);
        if !o.ok {
            if o.known && KNOWN_DISCREPANCIES.contains(&id) {
                println!("             known discrepancy, see README");
            } else {
                unexpected.push(id);
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
