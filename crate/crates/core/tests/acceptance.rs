mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use banakh::builder::{build, verify_certificate, BaseRadius, BuildSpec};
use banakh::graph::{build_mu, check, check_with, extend_to_full, hat, is_floppy_graph, ExtensionPolicy, HatTable};
use banakh::group::{
    certify_norm_at_least_one, dist_token, norm_equal, numeric_norm, sphere, DistToken, GroupElement, GroupOracle, Lattice,
};
use banakh::monoid::{
    ddot_set, dzik_reduce, is_floppy, is_half_group, is_p_divisible_in, DivisibilityWitness, Domain, FloppyVerdict,
    HalfGroupVerdict, Monoid, MonoidDesc, SearchWindow,
};
use banakh::rat::{int, parse_rat, Rat};
use banakh::space::{
    discrete_line, embed_in_real_line, gps_locate, hypersphere_map, orientation, Distance, Embedding, LineOracle,
    MetricFragment, Orientation, SphereOracle,
};
use banakh::Surd;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let m = Monoid::named("omega-minus-1").unwrap();
    let set = ddot_set(&m, &SearchWindow::new(int(10), 1));
    // independent: r >= 2 splits as 2 + (r - 2) once r - 2 >= 2
    let brute: Vec<Rat> = (1..=10).filter(|&r| r != 1 && !(2..=r - 2).any(|x| r - x != 1)).map(int).collect();
    ensure(set == vec![int(2), int(3)] && set == brute, || format!("got {set:?}, brute force {brute:?}"))?;
    Ok("{2, 3}".into())
}

fn criterion_2() -> Outcome {
    let mut pfree = [[0u64; 2001]; 3];
    for (k, p) in [2u64, 3, 5].into_iter().enumerate() {
        for n in 1..=2000u64 {
            pfree[k][n as usize] = common::factor(n).into_iter().filter(|(q, _)| *q != p).map(|(q, e)| q.pow(e)).product();
        }
    }
    // gcd table filled row by row from gcd(a, b) = gcd(b mod a, a)
    let mut gcds = vec![0u16; 2001 * 2001];
    for a in 1..=2000usize {
        for b in 0..=2000usize {
            gcds[a * 2001 + b] = if b % a == 0 { a as u16 } else { gcds[(b % a) * 2001 + a] };
        }
    }
    let mut runs = 0u64;
    for (k, p) in [2u64, 3, 5].into_iter().enumerate() {
        for a in 1..=2000u64 {
            for b in 1..=2000u64 {
                let t = dzik_reduce(a, b, p, |_| true).map_err(|e| format!("({a}, {b}, {p}): {e}"))?;
                let want = pfree[k][gcds[(a * 2001 + b) as usize] as usize];
                ensure(t.value == want, || format!("({a}, {b}, {p}): value {} but oracle {want}", t.value))?;
                for w in t.trace.windows(2) {
                    ensure(w[1].0 + w[1].1 < w[0].0 + w[0].1, || format!("({a}, {b}, {p}): trace sum does not drop"))?;
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} reductions"))
}

fn criterion_3() -> Outcome {
    let mut halves = 0;
    for gens in common::random_fingen(2026, 100) {
        let ints: Vec<i64> = gens.iter().map(|&g| g as i64).collect();
        let m = Monoid::fingen(&ints);
        let w = SearchWindow::new(m.conductor().unwrap() + m.unit().unwrap() * int(2), 1);
        let hg = match is_half_group(&m, &w).map_err(|e| e.to_string())? {
            HalfGroupVerdict::HalfGroup => true,
            HalfGroupVerdict::NotHalfGroup { .. } => false,
            HalfGroupVerdict::Inconclusive(why) => return Err(format!("{gens:?}: {why}")),
        };
        let div = |p| match is_p_divisible_in(&m, p, Domain::MMinusM, &w) {
            Ok(DivisibilityWitness::Divisible) => Ok(true),
            Ok(DivisibilityWitness::Counterexample(_)) => Ok(false),
            Ok(DivisibilityWitness::Inconclusive(why)) => Err(format!("{gens:?}: {why}")),
            Err(e) => Err(e.to_string()),
        };
        let brute = common::pm_closed(&gens);
        let (d2, d3) = (div(2)?, div(3)?);
        ensure(hg == brute && hg == d2 && hg == d3, || {
            format!("{gens:?}: half-group {hg}, closure {brute}, 2-divisible {d2}, 3-divisible {d3}")
        })?;
        halves += hg as usize;
    }
    Ok(format!("100 monoids, {halves} half-groups, 0 disagreements"))
}

fn criterion_4() -> Outcome {
    let cases: Vec<(&str, Monoid)> = vec![
        ("Z+", Monoid::fingen(&[1])),
        ("2Z+", Monoid::fingen(&[2])),
        ("omega-minus-1", Monoid::named("omega-minus-1").unwrap()),
        ("<2,3>", Monoid::fingen(&[2, 3])),
        ("<3,5>", Monoid::fingen(&[3, 5])),
    ];
    let mut pairs = 0;
    for (name, m) in &cases {
        let mu = build_mu(m, &Surd::from_int(1), &int(10), 1).map_err(|e| format!("{name}: {e}"))?;
        let g = &mu.graph;
        let paths = HatTable::new(g);
        for x in 0..g.n() {
            for y in x + 1..g.n() {
                let gap = Surd::from_rat((&mu.coords[x] - &mu.coords[y]).abs());
                let (formula, path) = (mu.formula_hat(x, y), paths.get(x, y).cloned());
                ensure(formula == path, || format!("{name} {}-{}: formula {formula:?}, path {path:?}", g.name(x), g.name(y)))?;
                let (c_path, c_formula) = (check(g, x, y), check_with(g, &mu, x, y));
                ensure(c_path == gap && c_formula == gap, || {
                    format!("{name} {}-{}: check {c_path} / {c_formula}, distance {gap}", g.name(x), g.name(y))
                })?;
                pairs += 1;
            }
        }
        let graph_floppy = is_floppy_graph(g).floppy;
        let monoid_floppy = matches!(is_floppy(m, &SearchWindow::new(int(10), 1)), FloppyVerdict::Floppy(_));
        ensure(graph_floppy == monoid_floppy, || format!("{name}: graph floppy {graph_floppy}, monoid floppy {monoid_floppy}"))?;
    }
    Ok(format!("5 monoids, {pairs} pairs"))
}

fn criterion_5() -> Outcome {
    let monoids: Vec<(Monoid, i64)> = vec![
        (Monoid::fingen(&[1]), 5),
        (Monoid::fingen(&[2]), 10),
        (Monoid::named("omega-minus-1").unwrap(), 5),
        (Monoid::fingen(&[2, 3]), 5),
        (Monoid::fingen(&[3, 5]), 5),
        (Monoid::fingen(&[2, 5]), 4),
        (Monoid::fingen(&[3, 4, 5]), 5),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut new_values = 0;
    let mut backtracks = 0;
    for seed in 0..50u64 {
        let (m, w) = &monoids[rng.gen_range(0..monoids.len())];
        let q = Rat::new(rng.gen_range(1..6).into(), rng.gen_range(1..4).into());
        let scale = if rng.gen_bool(0.3) { Surd::sqrt_prime(2, q).unwrap() } else { Surd::from_rat(q) };
        let g = build_mu(m, &scale, &int(*w), 1).map_err(|e| e.to_string())?.graph;
        ensure(g.n() <= 12, || format!("input {seed} has {} vertices", g.n()))?;
        let ext = extend_to_full(&g, &ExtensionPolicy::seeded(seed)).map_err(|e| format!("input {seed}: {e}"))?;
        let f = &ext.full;
        let n = f.n();
        let d = |a: usize, b: usize| f.edge(a, b).cloned().ok_or_else(|| format!("input {seed}: pair {a}-{b} missing"));
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ab, bc, ac) = (d(a, b)?, d(b, c)?, d(a, c)?);
                    ensure(&ab + &bc >= ac && &ab + &ac >= bc && &ac + &bc >= ab, || format!("input {seed}: triangle {a} {b} {c}"))?;
                }
            }
        }
        for (u, v, x) in g.edges() {
            ensure(f.edge(u, v) == Some(x), || format!("input {seed}: edge {u}-{v} changed"))?;
        }
        let mut seen = BTreeSet::new();
        for (u, v) in g.missing_pairs() {
            let x = d(u, v)?;
            let (lo, hi) = (check(&g, u, v), hat(&g, u, v).unwrap());
            ensure(lo < x && x < hi, || format!("input {seed}: {x} outside ({lo}, {hi}) at {u}-{v}"))?;
            ensure(seen.insert(x.clone()), || format!("input {seed}: value {x} repeated"))?;
        }
        new_values += seen.len();
        backtracks += ext.backtracks;
    }
    Ok(format!("50 inputs, {new_values} new values, {backtracks} backtracks"))
}

fn group_box() -> Vec<GroupElement> {
    let mut out = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                out.push(GroupElement::from_coeffs([(0, int(a)), (1, int(b)), (2, int(c))]));
            }
        }
    }
    out
}

#[derive(Default)]
struct GeoTally {
    gps: usize,
    lines: usize,
    triples: usize,
    compositions: [usize; 3],
}

fn gps_check<O: SphereOracle>(o: &O, a: &O::Point, b: &O::Point, p: &O::Point, t: &mut GeoTally) -> Result<(), String> {
    let hit = gps_locate(o, a, b, &o.dist(a, p), &o.dist(b, p)).map_err(|e| e.to_string())?;
    ensure(hit.as_ref() == Some(p), || format!("gps from {a:?}, {b:?} finds {hit:?} instead of {p:?}"))?;
    t.gps += 1;
    Ok(())
}

fn line_check<O: SphereOracle>(o: &O, a: &O::Point, b: &O::Point, n: usize, t: &mut GeoTally) -> Result<(), String> {
    let r = o.dist(a, b);
    let ab = discrete_line(o, a, b, n).map_err(|e| e.to_string())?;
    let ba = discrete_line(o, b, a, n).map_err(|e| e.to_string())?;
    for i in 0..ab.len() {
        for j in i + 1..ab.len() {
            ensure(o.dist(&ab[i], &ab[j]) == r.scaled(&int((j - i) as i64)), || format!("line {a:?} {b:?}: {i} {j}"))?;
        }
    }
    let n = n as i64;
    for k in 1 - n..=n {
        let m = 1 - k;
        ensure(ab[(k + n) as usize] == ba[(m + n) as usize], || format!("reflection fails on {a:?} {b:?} at {k}"))?;
    }
    t.lines += 1;
    Ok(())
}

fn triple_check<O: SphereOracle>(o: &O, c: &O::Point, x: &O::Point, y: &O::Point, z: &O::Point, t: &mut GeoTally) -> Result<(), String> {
    use Orientation::*;
    let or = |p: &O::Point, q: &O::Point| orientation(o, c, p, q).map_err(|e| e.to_string());
    let (xy, yz, xz, yx) = (or(x, y)?, or(y, z)?, or(x, z)?, or(y, x)?);
    ensure(xy == yx, || format!("orientation not symmetric at {c:?} {x:?} {y:?}"))?;
    let want = match (xy, yz) {
        (Parallel, Parallel) | (Antiparallel, Antiparallel) => Some(Parallel),
        (Parallel, Antiparallel) | (Antiparallel, Parallel) => Some(Antiparallel),
        _ => None,
    };
    if let Some(w) = want {
        ensure(xz == w, || format!("composition {xy:?} then {yz:?} gives {xz:?} at {c:?} {x:?} {y:?} {z:?}"))?;
        let slot = match (xy, yz) {
            (Parallel, Parallel) => 0,
            (Antiparallel, Antiparallel) => 1,
            _ => 2,
        };
        t.compositions[slot] += 1;
    }
    if xy == Antiparallel {
        ensure(o.dist(x, c).try_add(&o.dist(c, y)) == Some(o.dist(x, y)), || format!("antiparallel without additivity at {c:?} {x:?} {y:?}"))?;
    }
    t.triples += 1;
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut t = GeoTally::default();
    let zo = LineOracle::integers();
    for a in -20..=20 {
        for b in -20..=20 {
            if a == b {
                continue;
            }
            for p in -20..=20 {
                gps_check(&zo, &int(a), &int(b), &int(p), &mut t)?;
            }
        }
    }
    for (a, b) in [(0, 1), (0, -1), (3, 5), (-2, 7), (4, -4)] {
        line_check(&zo, &int(a), &int(b), 50, &mut t)?;
    }
    for c in -2..=2 {
        for x in -8..=8 {
            for y in -8..=8 {
                for z in -8..=8 {
                    if x != c && y != c && z != c {
                        triple_check(&zo, &int(c), &int(x), &int(y), &int(z), &mut t)?;
                    }
                }
            }
        }
    }

    let go = GroupOracle { lattice: Lattice::H };
    let pts = group_box();
    let origin = GroupElement::zero();
    for b in &pts {
        if *b == origin {
            continue;
        }
        for p in &pts {
            gps_check(&go, &origin, b, p, &mut t)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pick = |rng: &mut ChaCha8Rng| pts[rng.gen_range(0..pts.len())].clone();
    for _ in 0..50_000 {
        let (a, b, p) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if a != b {
            gps_check(&go, &a, &b, &p, &mut t)?;
        }
    }
    for n in [1usize, 7, 50] {
        for _ in 0..10 {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            if a != b {
                line_check(&go, &a, &b, n, &mut t)?;
            }
        }
    }
    for _ in 0..3000 {
        let c = pick(&mut rng);
        let v = pick(&mut rng);
        if v.is_zero() {
            continue;
        }
        let on_line = |rng: &mut ChaCha8Rng| {
            let k = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            c.add(&v.scale(&int(k), Lattice::H).unwrap())
        };
        let (x, y, z) = (on_line(&mut rng), on_line(&mut rng), on_line(&mut rng));
        triple_check(&go, &c, &x, &y, &z, &mut t)?;
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if x != c && y != c && z != c {
            triple_check(&go, &c, &x, &y, &z, &mut t)?;
        }
    }
    ensure(t.compositions.iter().all(|&k| k > 0), || format!("composition cases not all exercised: {:?}", t.compositions))?;
    Ok(format!(
        "{} gps queries, {} lines, {} triples ({} / {} / {} compositions)",
        t.gps, t.lines, t.triples, t.compositions[0], t.compositions[1], t.compositions[2]
    ))
}

fn criterion_7() -> Outcome {
    let pts = group_box();
    let mut equal = 0;
    for x in &pts {
        for y in &pts {
            let symbolic = norm_equal(x, y);
            let direct = x == y || *x == y.neg();
            ensure(symbolic == direct, || format!("norm_equal({x}, {y}) = {symbolic}"))?;
            if symbolic {
                equal += 1;
                ensure((numeric_norm(x, 7) - numeric_norm(y, 7)).abs() < 1e-9, || format!("numeric norms differ at {x}, {y}"))?;
            }
        }
    }
    let mut spheres = 0;
    for c in pts.iter().step_by(7) {
        for t in &pts {
            let tok = DistToken::of(t);
            let s = sphere(c, &tok);
            ensure(s.len() <= 2, || format!("sphere around {c} of radius {tok} has {} points", s.len()))?;
            if s.len() == 2 {
                ensure(dist_token(&s[0], &s[1]) == tok.scaled(&int(2)), || format!("sphere around {c} of radius {tok} has the wrong diameter"))?;
            }
            for p in &s {
                ensure(dist_token(c, p) == tok, || format!("{p} is not at distance {tok} from {c}"))?;
            }
            spheres += 1;
        }
    }
    let nonzero: Vec<&GroupElement> = pts.iter().filter(|x| !x.is_zero()).collect();
    for x in &nonzero {
        ensure(certify_norm_at_least_one(x), || format!("no certificate for ||{x}|| >= 1"))?;
    }
    Ok(format!("{} pairs ({equal} equal norms), {spheres} spheres, {} lattice points certified", pts.len() * pts.len(), nonzero.len()))
}

fn naturals(r: Surd) -> BaseRadius {
    BaseRadius { radius: r, monoid: MonoidDesc::named("naturals").unwrap() }
}

/// Realized coordinates in the class of `radius` are an initial segment of the monoid, the monoid
/// is floppy, and no `r` outside the set attains `min {a + b : b - a = r}`.
fn class_window_floppy(frag: &MetricFragment, radius: &Surd, m: &Monoid) -> Result<usize, String> {
    let mut qs = BTreeSet::from([Rat::zero()]);
    for a in 0..frag.n() {
        for b in a + 1..frag.n() {
            if let Some(q) = frag.dist(a, b).ratio_to(radius) {
                qs.insert(q);
            }
        }
    }
    let top = qs.last().cloned().unwrap();
    let expect: BTreeSet<Rat> = m.elements(&SearchWindow::new(top.clone(), 1)).into_iter().collect();
    ensure(qs == expect, || format!("realized set {qs:?} is not the monoid up to {top}"))?;
    ensure(matches!(is_floppy(m, &SearchWindow::new(top.clone(), 1)), FloppyVerdict::Floppy(_)), || "monoid not floppy".into())?;
    for a in &qs {
        for b in qs.iter().filter(|b| *b > a) {
            let r = b - a;
            if qs.contains(&r) {
                continue;
            }
            let least = qs.iter().filter_map(|x| qs.contains(&(x + &r)).then(|| x + x + &r)).min().unwrap();
            ensure(least > r, || format!("window not floppy at {r}"))?;
        }
    }
    Ok(qs.len())
}

fn criterion_8() -> Outcome {
    let spec = BuildSpec::new(vec![naturals(Surd::from_int(1))], 1, int(5), 8);
    let (frag, cert) = build(&spec).map_err(|e| e.to_string())?;
    let report = verify_certificate(&frag, &spec, &cert);
    ensure(report.ok(), || format!("line certificate: {:?}", report.failures().map(|c| c.name).collect::<Vec<_>>()))?;
    let coords = match embed_in_real_line(&frag) {
        Embedding::Coords(c) => c,
        Embedding::Obstruction(w) => return Err(format!("line fragment has obstruction {w:?}")),
    };
    let labels: Vec<Rat> = frag.names().iter().map(|s| parse_rat(s).unwrap()).collect();
    let want: BTreeSet<Rat> = (-5..=5).map(int).collect();
    ensure(labels.iter().cloned().collect::<BTreeSet<_>>() == want, || format!("points {:?}", frag.names()))?;
    let reflected = |s: i64| {
        let shift = coords[0].clone() - Surd::from_rat(&labels[0] * int(s));
        labels.iter().zip(&coords).all(|(l, c)| *c == Surd::from_rat(l * int(s)) + shift.clone())
    };
    ensure(reflected(1) || reflected(-1), || "coordinates do not match the labels up to reflection".into())?;
    let line_window = class_window_floppy(&frag, &Surd::from_int(1), &Monoid::fingen(&[1]))?;

    let spec2 = BuildSpec::new(vec![naturals(Surd::from_int(1)), naturals(Surd::parse("sqrt(2)").unwrap())], 2, int(2), 8);
    let (frag2, cert2) = build(&spec2).map_err(|e| e.to_string())?;
    let report2 = verify_certificate(&frag2, &spec2, &cert2);
    ensure(report2.ok(), || format!("two-class certificate: {:?}", report2.failures().map(|c| c.name).collect::<Vec<_>>()))?;
    let witness = match embed_in_real_line(&frag2) {
        Embedding::Obstruction(w) => w,
        Embedding::Coords(_) => return Err("two-class fragment embeds in the line".into()),
    };
    // the witness really is an obstruction: no distance of the triple is the sum of the other two
    if witness.len() == 3 {
        let (a, b, c) = (witness[0], witness[1], witness[2]);
        let (ab, bc, ac) = (frag2.dist(a, b), frag2.dist(b, c), frag2.dist(a, c));
        ensure(ab + bc != *ac && ab + ac != *bc && ac + bc != *ab, || format!("witness {witness:?} is collinear"))?;
    }
    let mut sizes = vec![];
    for r in [Surd::from_int(1), Surd::parse("sqrt(2)").unwrap()] {
        sizes.push(class_window_floppy(&frag2, &r, &Monoid::fingen(&[1]))?);
    }
    Ok(format!(
        "line: {} points, window of {line_window}; two classes: {} points, obstruction {:?}, windows of {sizes:?}",
        frag.n(),
        frag2.n(),
        witness.iter().map(|&i| frag2.names()[i].as_str()).collect::<Vec<_>>()
    ))
}

fn criterion_9() -> Outcome {
    let spec = BuildSpec::new(
        vec![BaseRadius { radius: Surd::from_int(1), monoid: MonoidDesc::named("omega-minus-1").unwrap() }],
        2,
        int(5),
        3,
    );
    let (frag, cert) = build(&spec).map_err(|e| e.to_string())?;
    let report = verify_certificate(&frag, &spec, &cert);
    ensure(report.ok(), || format!("certificate: {:?}", report.failures().map(|c| c.name).collect::<Vec<_>>()))?;
    let m = Monoid::named("omega-minus-1").unwrap();
    let idx = |s: &str| frag.index(s).ok_or_else(|| format!("no point {s}"));
    let oracle = banakh::space::FragmentOracle::new(frag.clone());
    let map = hypersphere_map(&oracle, &idx("0")?, &idx("2")?, &Surd::from_int(1), &m, &int(5), 1).map_err(|e| e.to_string())?;
    ensure(map.unverified() == 0, || format!("{} pairs without an upper bound", map.unverified()))?;
    // own bounds: members of {0, 2, 3, ...} below 40
    let member = |n: i64| n == 0 || n >= 2;
    for p in &map.pairs {
        let gap = (&p.t - &p.s).abs();
        let g = gap.to_integer().try_into().map_err(|_| "non-integral gap".to_string())?;
        let upper = (0..40i64).filter(|&v| member(v) && member(v + g)).map(|v| 2 * v + g).min().unwrap();
        let (lo, hi) = (Surd::from_rat(gap.clone()), Surd::from_int(upper));
        ensure(lo <= p.dist && p.dist <= hi, || format!("pair {} {}: {} outside [{lo}, {hi}]", p.s, p.t, p.dist))?;
        ensure((p.dist == lo) == member(g), || format!("pair {} {}: equality law fails at distance {}", p.s, p.t, p.dist))?;
        ensure(p.lower == lo && p.upper.as_ref() == Some(&hi), || format!("pair {} {}: reported bounds differ", p.s, p.t))?;
    }
    ensure(map.all_ok(), || "map reports a failed pair".into())?;
    Ok(format!("{} points in the space, {} map points, {} pairs", frag.n(), map.points.len(), map.pairs.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("indecomposables of omega minus 1", 1, criterion_1),
        ("reduction to the p-free gcd", 10, criterion_2),
        ("half-group equivalences", 30, criterion_3),
        ("floppy graph identities", 30, criterion_4),
        ("generic completion", 60, criterion_5),
        ("sphere geometry", 60, criterion_6),
        ("symbolic group norms", 30, criterion_7),
        ("builder round trip", 60, criterion_8),
        ("hypersphere bounds", 30, criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let res = match res {
            Ok(s) if took > Duration::from_secs(*limit) => Err(format!("{s}; took {took:.2?}, limit {limit} s")),
            r => r,
        };
        match res {
            Ok(detail) => println!("PASS {} {name}: {detail} ({took:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({took:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
