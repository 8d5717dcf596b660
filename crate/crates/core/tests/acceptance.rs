//! Acceptance suite: one line per criterion with its outcome, elapsed time
//! and budget. Exits non-zero if any criterion fails or overruns.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use clospace::complexes::{cech, cosk1, cosk_inf, dc, g_functor, tr1, tr_inf, vr, Construction};
use clospace::filtration::{filtered_from_metric, filtered_from_sublevel, filtered_from_weighted_digraph, Decoration, FilteredClosureSpace, FiniteMetric};
use clospace::hom::homomorphisms;
use clospace::homology::{chain_complex, induced_maps_agree_integrally, space_homology, BaseInterval, Coefficients, Flavor, HomologyGroup, TheorySpec};
use clospace::homotopy::{homotopy_classes, OneStepSolver};
use clospace::linalg::integer::{integer_kernel, lattice_invariants_with};
use clospace::linalg::{lattice_invariants, PrimeField, SparseMatrix};
use clospace::persistence::{bottleneck, gh_distance, persistence_complex, persistence_tower, tower_to_diagram, PersistenceDiagram};
use clospace::{interval, product, ClosureSpace, ContinuousMap, Error, IntervalSpec, PointId, ProductKind};

use common::*;

const SEED: u64 = 0x5eed_c105;
const TOLERANCE: f64 = 1e-9;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: clospace::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn j1() -> ClosureSpace {
    interval(IntervalSpec::j1()).unwrap()
}

fn j_plus() -> ClosureSpace {
    interval(IntervalSpec::j_plus()).unwrap()
}

fn z(rank: usize) -> HomologyGroup {
    HomologyGroup::free(Coefficients::Integers, rank)
}

fn cubical(i: BaseInterval, p: ProductKind) -> Flavor {
    Flavor::cubical(i, p)
}

fn c1_directed_square() -> Outcome {
    let sq = product(&j_plus(), &j_plus(), ProductKind::Inductive);
    let cx = ok(chain_complex(&sq, cubical(BaseInterval::JPlus, ProductKind::Product), 2))?;
    let h1 = ok(cx.homology(1, Coefficients::Integers, false))?;
    ensure(h1 == z(1), || format!("H_1 = {h1}"))?;
    ensure(cx.boundary(2).is_zero(), || "boundary in degree 2 is non-zero".into())?;
    Ok(format!("H_1 = {h1}, ∂_2 = 0 on {} cubes", cx.rank(2)))
}

/// Dense integer vector on the 1-cubes given as vertex-pair coefficients.
fn chain_of(cells: &[Vec<usize>], terms: &[(usize, usize, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); cells.len()];
    for &(a, b, c) in terms {
        let k = cells.iter().position(|cell| cell == &vec![a, b]).expect("1-cube exists");
        v[k] += c;
    }
    v
}

/// Whether two integer lattices given by generators coincide.
fn same_lattice(rows: usize, first: &[Vec<BigInt>], second: &[Vec<BigInt>]) -> bool {
    let empty = SparseMatrix::new(rows);
    let joint: Vec<Vec<BigInt>> = first.iter().chain(second).cloned().collect();
    let j = lattice_invariants_with(&empty, &joint);
    lattice_invariants_with(&empty, first) == j && lattice_invariants_with(&empty, second) == j
}

fn c2_undirected_square() -> Outcome {
    let sq = product(&j1(), &j1(), ProductKind::Inductive);
    let cx = ok(chain_complex(&sq, cubical(BaseInterval::J1, ProductKind::Product), 2))?;
    let h1 = ok(cx.homology(1, Coefficients::Integers, false))?;
    ensure(h1 == z(1), || format!("H_1 = {h1}"))?;
    ensure(cx.rank(1) == 8 && cx.rank(2) == 40, || format!("chain ranks {} and {}", cx.rank(1), cx.rank(2)))?;
    let cycles = integer_kernel(cx.boundary(1));
    let image = lattice_invariants(cx.boundary(2));
    ensure(cycles.len() == 5, || format!("rank ker ∂_1 = {}", cycles.len()))?;
    ensure(image.rank == 4, || format!("rank im ∂_2 = {}", image.rank))?;
    // a, b, c, d = (0,0), (0,1), (1,0), (1,1) sit at indices 0..4.
    let (a, b, c, d) = (0, 1, 2, 3);
    let cells = cx.cells(1);
    let symmetric: Vec<Vec<BigInt>> = [(a, b), (a, c), (b, d), (c, d)]
        .iter()
        .map(|&(u, v)| chain_of(cells, &[(u, v, 1), (v, u, 1)]))
        .collect();
    let tau = chain_of(cells, &[(a, b, 1), (b, d, 1), (a, c, -1), (c, d, -1)]);
    let mut kernel_gens = symmetric.clone();
    kernel_gens.push(tau);
    ensure(same_lattice(cells.len(), &cycles, &kernel_gens), || "kernel generators differ".into())?;
    let image_gens: Vec<Vec<BigInt>> = (0..cx.boundary(2).ncols())
        .map(|j| {
            let mut v = vec![BigInt::from(0); cells.len()];
            for &(r, x) in cx.boundary(2).column(j) {
                v[r] = BigInt::from(x);
            }
            v
        })
        .collect();
    ensure(same_lattice(cells.len(), &image_gens, &symmetric), || "image generators differ".into())?;
    Ok("H_1 = Z^1, ker ∂_1 rank 5, im ∂_2 rank 4, generators match".into())
}

fn c3_j_plus_components() -> Outcome {
    for p in [ProductKind::Product, ProductKind::Inductive] {
        let h = ok(space_homology(&j_plus(), &TheorySpec::integral(cubical(BaseInterval::J1, p)), 0..=0))?;
        ensure(h[0] == z(2), || format!("H_0 under (J1,{p}) = {}", h[0]))?;
    }
    Ok("H_0 = Z^2 under both products".into())
}

fn power(j: &ClosureSpace, n: usize, p: ProductKind) -> ClosureSpace {
    (1..n).fold(if n == 0 { ClosureSpace::point() } else { j.clone() }, |acc, _| product(&acc, j, p))
}

fn c4_contractible_cubes() -> Outcome {
    let mut checked = 0;
    for (i, j) in [(BaseInterval::J1, j1()), (BaseInterval::JPlus, j_plus())] {
        for p in [ProductKind::Product, ProductKind::Inductive] {
            for n in 0..=2 {
                let x = power(&j, n, p);
                let theory = ok(TheorySpec::new(cubical(i, p), Coefficients::Integers, true))?;
                let h = ok(space_homology(&x, &theory, 0..=2))?;
                ensure(h.iter().all(HomologyGroup::is_trivial), || format!("({i},{p}) power {n}: {h:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} spaces acyclic in degrees 0-2"))
}

fn c5_three_point_complexes() -> Outcome {
    let labels: Vec<PointId> = ["x", "y", "z"].into_iter().map(PointId::from).collect();
    let closure = |p: usize| -> Vec<PointId> {
        let members: &[usize] = match p {
            0 | 1 => &[0, 1],
            _ => &[0, 1, 2],
        };
        members.iter().map(|&i| labels[i].clone()).collect()
    };
    let x = ok(ClosureSpace::build(labels.clone(), (0..3).map(|p| (labels[p].clone(), closure(p)))))?;
    let names = |k: &clospace::complexes::SimplicialComplex| -> BTreeSet<String> {
        k.labelled_simplices().iter().map(|s| s.iter().map(ToString::to_string).collect::<String>()).collect()
    };
    let expect = |v: &[&str]| -> BTreeSet<String> { v.iter().map(|s| s.to_string()).collect() };
    let (r, c) = (names(&vr(&x)), names(&cech(&x)));
    ensure(r == expect(&["x", "y", "z", "xy"]), || format!("vr = {r:?}"))?;
    ensure(c == expect(&["x", "y", "z", "xy", "xz", "yz", "xyz"]), || format!("cech = {c:?}"))?;
    Ok("vr has 4 simplices, cech has 7".into())
}

fn c6_homotopy_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let theories = [
        (IntervalSpec::j1(), BaseInterval::J1, ProductKind::Product),
        (IntervalSpec::j1(), BaseInterval::J1, ProductKind::Inductive),
        (IntervalSpec::j_plus(), BaseInterval::JPlus, ProductKind::Product),
        (IntervalSpec::j_plus(), BaseInterval::JPlus, ProductKind::Inductive),
    ];
    let mut pairs = 0;
    let mut attempts = 0;
    for (spec, base, kind) in theories {
        let mut found = 0;
        while found < 25 {
            attempts += 1;
            ensure(attempts < 20_000, || "could not generate enough homotopic pairs".into())?;
            let (n, m) = (rng.gen_range(1..=4), rng.gen_range(2..=5));
            let x = Arc::new(random_space(&mut rng, n, 0.5));
            let y = Arc::new(random_space(&mut rng, m, 0.6));
            let maps = homomorphisms(&x, &y);
            let f = maps.choose(&mut rng).unwrap().clone();
            let solver = ok(OneStepSolver::new(x.clone(), y.clone(), spec, kind))?;
            let partners: Vec<&Vec<usize>> = maps.iter().filter(|g| **g != f && solver.either_direction(&f, g).is_some()).collect();
            let Some(g) = partners.choose(&mut rng) else { continue };
            let fm = ok(ContinuousMap::new(x.clone(), y.clone(), f.clone()))?;
            let gm = ok(ContinuousMap::new(x.clone(), y.clone(), (*g).clone()))?;
            for n in 0..=1 {
                let agree = ok(induced_maps_agree_integrally(&fm, &gm, cubical(base, kind), n, false))?;
                ensure(agree, || format!("({spec},{kind}) degree {n}: f = {f:?}, g = {g:?}"))?;
            }
            found += 1;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} homotopic pairs, 0 failures"))
}

fn c7_product_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    for trial in 0..100 {
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let (x, y) = (random_space(&mut rng, n, 0.4), random_space(&mut rng, m, 0.4));
        let strong = product(&x, &y, ProductKind::Product);
        let boxed = product(&x, &y, ProductKind::Inductive);
        for a in 0..n {
            for b in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let (ea, eb) = (x.related(a, a2), y.related(b, b2));
                        let (p, q) = (a * m + b, a2 * m + b2);
                        let regular = ea && eb;
                        let cartesian = (a == a2 && eb) || (ea && b == b2);
                        ensure(strong.related(p, q) == regular, || format!("trial {trial}: × differs at ({a},{b})→({a2},{b2})"))?;
                        ensure(boxed.related(p, q) == cartesian, || format!("trial {trial}: ⊡ differs at ({a},{b})→({a2},{b2})"))?;
                    }
                }
            }
        }
        // Projections are continuous for both products.
        for prod in [&strong, &boxed] {
            let first: Vec<usize> = (0..n * m).map(|p| p / m).collect();
            let second: Vec<usize> = (0..n * m).map(|p| p % m).collect();
            ensure(continuous_by_definition(prod, &x, &first) && continuous_by_definition(prod, &y, &second), || {
                format!("trial {trial}: projection not continuous")
            })?;
        }
    }
    Ok("100 digraph pairs match both relational products".into())
}

fn same_maps(left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<usize, String> {
    let (l, r): (BTreeSet<_>, BTreeSet<_>) = (left.into_iter().collect(), right.into_iter().collect());
    ensure(l == r, || format!("hom-sets differ: {} vs {}", l.len(), r.len()))?;
    Ok(l.len())
}

fn c8_adjunctions() -> Outcome {
    let sizes = 1..=3;
    let spaces: Vec<ClosureSpace> = sizes.clone().flat_map(all_spaces).collect();
    let graphs: Vec<&ClosureSpace> = spaces.iter().filter(|s| s.is_symmetric()).collect();
    let complexes: Vec<_> = sizes.clone().flat_map(all_complexes).collect();
    let hypergraphs: Vec<_> = sizes.clone().flat_map(all_hypergraphs).collect();
    let mut counts = [0usize; 6];

    for k in &complexes {
        let gk = g_functor(k);
        let t = tr1(k);
        for y in &spaces {
            let left = homomorphisms(&gk, y);
            let vy = vr(y);
            let right = all_functions(k.len(), y.len()).into_iter().filter(|f| k.is_simplicial_map_to(&vy, f)).collect();
            counts[0] += same_maps(left, right).map_err(|e| format!("G ⊣ VR: {e}"))?;
        }
        for y in &graphs {
            let left = homomorphisms(&t, y);
            let cy = ok(cosk1(y))?;
            let right = all_functions(k.len(), y.len()).into_iter().filter(|f| k.is_simplicial_map_to(&cy, f)).collect();
            counts[1] += same_maps(left, right).map_err(|e| format!("tr1 ⊣ cosk1: {e}"))?;
        }
    }
    for h in &hypergraphs {
        let closed = dc(h);
        for f in &complexes {
            let target = f.as_hypergraph();
            let all = all_functions(h.labels().len(), f.len());
            let left = all.iter().filter(|m| closed.is_morphism_to(&target, m)).cloned().collect();
            let right = all.iter().filter(|m| h.is_morphism_to(&target, m)).cloned().collect();
            counts[2] += same_maps(left, right).map_err(|e| format!("dc ⊣ inclusion: {e}"))?;
        }
        if h.is_downward_closed() {
            let truncated = ok(tr_inf(h))?;
            for f in &complexes {
                let all = all_functions(h.labels().len(), f.len());
                let co = cosk_inf(f);
                let left = all.iter().filter(|m| truncated.is_simplicial_map_to(f, m)).cloned().collect();
                let right = all.iter().filter(|m| h.is_morphism_to(&co, m)).cloned().collect();
                counts[3] += same_maps(left, right).map_err(|e| format!("tr∞ ⊣ cosk∞: {e}"))?;
            }
        }
    }
    for x in &spaces {
        for y in &spaces {
            counts[4] += same_maps(homomorphisms(x, y), homomorphisms(x, &y.quasi_discrete_modification())).map_err(|e| format!("qd: {e}"))?;
        }
    }
    for x in &graphs {
        for y in &spaces {
            counts[5] += same_maps(homomorphisms(x, y), homomorphisms(x, &y.symmetrize())).map_err(|e| format!("s: {e}"))?;
        }
    }
    Ok(format!(
        "bijections: G⊣VR {}, tr1⊣cosk1 {}, dc⊣incl {}, tr∞⊣cosk∞ {}, qd {}, s {}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

fn c9_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let f2 = PrimeField::new(2).unwrap();
    for trial in 0..50 {
        let n = rng.gen_range(1..=5);
        let metric = random_metric(&mut rng, n, 6);
        let f = filtered_from_metric(&metric, Decoration::Closed);
        let direct = ok(persistence_complex(&f, Construction::Vr, 1, Coefficients::Prime(2)))?;
        for d in 0..=1 {
            let tower = ok(persistence_tower(&f2, &f, Flavor::Complex(Construction::Vr), d, false))?;
            let via_tower = ok(tower_to_diagram(&tower))?;
            ensure(via_tower == direct[d], || format!("trial {trial}, degree {d}: {via_tower:?} vs {:?}", direct[d]))?;
        }
    }
    Ok("50 metrics, diagrams identical in degrees 0-1".into())
}

fn bottleneck_or_infinity(a: &PersistenceDiagram, b: &PersistenceDiagram) -> clospace::Result<f64> {
    match bottleneck(a, b) {
        Err(Error::InfinityMismatch(..)) => Ok(f64::INFINITY),
        other => other,
    }
}

fn diagrams_of(f: &FilteredClosureSpace, flavor: Flavor) -> clospace::Result<Vec<PersistenceDiagram>> {
    let f2 = PrimeField::new(2).unwrap();
    (0..=1).map(|d| tower_to_diagram(&persistence_tower(&f2, f, flavor, d, false)?)).collect()
}

fn c10_sublevel_stability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let flavors = Flavor::all_cubical();
    let mut worst_ratio: f64 = 0.0;
    for trial in 0..100 {
        let n = rng.gen_range(1..=6);
        let x = random_space(&mut rng, n, 0.5);
        let f: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=8) as f64 / 2.0).collect();
        let g: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=8) as f64 / 2.0).collect();
        let sup = f.iter().zip(&g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let flavor = flavors[trial % flavors.len()];
        let df = ok(diagrams_of(&ok(filtered_from_sublevel(&x, &f))?, flavor))?;
        let dg = ok(diagrams_of(&ok(filtered_from_sublevel(&x, &g))?, flavor))?;
        for d in 0..=1 {
            let b = ok(bottleneck_or_infinity(&df[d], &dg[d]))?;
            ensure(b <= sup + TOLERANCE, || format!("trial {trial} ({flavor}), degree {d}: d_B = {b} > {sup}"))?;
            if sup > 0.0 {
                worst_ratio = worst_ratio.max(b / sup);
            }
        }
    }
    Ok(format!("100 pairs, 0 violations, max d_B/d_inf = {worst_ratio:.3}"))
}

fn random_filtered(rng: &mut ChaCha8Rng, use_metric: bool) -> FilteredClosureSpace {
    let n = rng.gen_range(1..=4);
    if use_metric {
        filtered_from_metric(&random_metric(rng, n, 6), Decoration::Closed)
    } else {
        filtered_from_weighted_digraph(&random_digraph(rng, n, 0.7, 8))
    }
}

fn c11_gh_stability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 11);
    let flavor = Flavor::cubical(BaseInterval::J1, ProductKind::Product);
    let mut tight = 0;
    for trial in 0..50 {
        let use_metric = trial % 2 == 0;
        let (x, y) = (random_filtered(&mut rng, use_metric), random_filtered(&mut rng, use_metric));
        let gh = ok(gh_distance(&x, &y, 4))?;
        let (dx, dy) = (ok(diagrams_of(&x, flavor))?, ok(diagrams_of(&y, flavor))?);
        for d in 0..=1 {
            let b = ok(bottleneck_or_infinity(&dx[d], &dy[d]))?;
            ensure(b <= 2.0 * gh + TOLERANCE, || format!("trial {trial}, degree {d}: d_B = {b} > 2 × {gh}"))?;
            if b > 0.0 && (b - 2.0 * gh).abs() <= TOLERANCE {
                tight += 1;
            }
        }
    }
    Ok(format!("50 pairs, 0 violations, {tight} tight"))
}

fn partition(classes: Vec<Vec<Vec<usize>>>) -> BTreeSet<BTreeSet<Vec<usize>>> {
    classes.into_iter().map(|c| c.into_iter().collect()).collect()
}

fn c12_homotopy_equivalences() -> Outcome {
    let first_group = [IntervalSpec::j1(), IntervalSpec::plain(2), IntervalSpec::top(2)];
    let mut second_group = vec![IntervalSpec::j_plus(), IntervalSpec::leq(2)];
    second_group.extend((0..4).map(|k| IntervalSpec::bits(2, k)));
    let spaces: Vec<Arc<ClosureSpace>> = (1..=3).flat_map(all_spaces).map(Arc::new).collect();
    let pairs: Vec<(usize, usize)> = (0..spaces.len()).flat_map(|i| (0..spaces.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<usize, String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&spaces[i], &spaces[j]);
            let mut map_pairs = 0;
            for kind in [ProductKind::Product, ProductKind::Inductive] {
                for group in [&first_group[..], &second_group[..]] {
                    let reference = partition(ok(homotopy_classes(x, y, group[0], kind))?);
                    for &spec in &group[1..] {
                        let other = partition(ok(homotopy_classes(x, y, spec, kind))?);
                        ensure(other == reference, || format!("{} vs {spec} ({kind}) differ on {x:?} → {y:?}", group[0]))?;
                    }
                }
                let bot = ok(homotopy_classes(x, y, IntervalSpec::bot(1), kind))?;
                ensure(bot.len() <= 1, || format!("bot:1 ({kind}) leaves {} classes on {x:?} → {y:?}", bot.len()))?;
                let maps = homomorphisms(x, y).len();
                map_pairs += maps * maps;
            }
            Ok(map_pairs)
        })
        .collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(format!("{} space pairs, {total} map pairs per product summed, all equivalences hold", pairs.len()))
}

fn c13_metric_gh() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 13);
    let two_point = |d: f64| FiniteMetric::from_fn(2, |i, j| if i == j { 0.0 } else { d }).unwrap();
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(1..=1000) as f64 / 37.0, rng.gen_range(1..=1000) as f64 / 37.0);
        let gh = ok(gh_distance(
            &filtered_from_metric(&two_point(a), Decoration::Closed),
            &filtered_from_metric(&two_point(b), Decoration::Closed),
            4,
        ))?;
        ensure((gh - (a - b).abs() / 2.0).abs() <= TOLERANCE, || format!("diameters {a}, {b}: {gh}"))?;
    }
    let mut worst: f64 = 0.0;
    for trial in 0..50 {
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (d, e) = (random_metric(&mut rng, n, 9), random_metric(&mut rng, m, 9));
        let gh = ok(gh_distance(&filtered_from_metric(&d, Decoration::Closed), &filtered_from_metric(&e, Decoration::Closed), 4))?;
        let oracle = metric_distortion_oracle(&d, &e) / 2.0;
        worst = worst.max((gh - oracle).abs());
        ensure((gh - oracle).abs() <= TOLERANCE, || format!("trial {trial}: {gh} vs oracle {oracle}"))?;
    }
    Ok(format!("100 comparisons, max deviation {worst:e}"))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "H_1 of the directed inductive square", budget: Duration::from_secs(1), run: c1_directed_square },
        Criterion { id: 2, name: "H_1 of the undirected inductive square", budget: Duration::from_secs(5), run: c2_undirected_square },
        Criterion { id: 3, name: "H_0 of J+ in J1 theories", budget: Duration::from_secs(1), run: c3_j_plus_components },
        Criterion { id: 4, name: "contractible cubes are acyclic", budget: Duration::from_secs(30), run: c4_contractible_cubes },
        Criterion { id: 5, name: "vr and cech of the three-point space", budget: Duration::from_secs(1), run: c5_three_point_complexes },
        Criterion { id: 6, name: "homotopy invariance fuzz", budget: Duration::from_secs(120), run: c6_homotopy_invariance },
        Criterion { id: 7, name: "product oracles", budget: Duration::from_secs(10), run: c7_product_oracles },
        Criterion { id: 8, name: "adjunction hom-set bijections", budget: Duration::from_secs(60), run: c8_adjunctions },
        Criterion { id: 9, name: "complex pipeline vs tower", budget: Duration::from_secs(120), run: c9_pipeline },
        Criterion { id: 10, name: "sublevel stability", budget: Duration::from_secs(120), run: c10_sublevel_stability },
        Criterion { id: 11, name: "GH stability", budget: Duration::from_secs(300), run: c11_gh_stability },
        Criterion { id: 12, name: "homotopy theory equivalences", budget: Duration::from_secs(300), run: c12_homotopy_equivalences },
        Criterion { id: 13, name: "metric GH specialisation", budget: Duration::from_secs(60), run: c13_metric_gh },
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let within = elapsed <= c.budget;
        let (status, detail) = match (&outcome, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "{status} [{:>2}] {} ({detail}) {:.2}s / {}s",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {failures} failed");
    if failures > 0 {
        std::process::exit(1);
    }
}
