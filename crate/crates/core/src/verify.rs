//! The invariant suite behind `onsager verify`: one check per acceptance criterion.
//!
//! Each check recomputes its claim from an independent route where one exists
//! (brute-force linear algebra, realizations, numerical commutants) and records
//! what it compared in `detail`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{dg_check, generator_a, generator_g, OAElement};
use crate::chiralpotts::{build_chain, dg_check_exact, dg_check_numeric, fit_onsager_form, spectrum_sweep, Tolerances};
use crate::combinat::{
    alpha_by_linear_solve, alpha_closed_form, alpha_from_inversion, forward_transform, inversion_transform,
    BernoulliCache, StirlingTable,
};
use crate::ideals::{crt_lift, ideal_member, is_closed, ReciprocalPoly};
use crate::linalg::Matrix;
use crate::poly::LaurentPoly;
use crate::quotients::{
    ad_spectrum_x0, build_quotient, efh_basis, lambda_realization, project, y_reduction, QuotientAlgebra,
};
use crate::reps::{build_rep, is_irreducible, Spin};
use crate::scalar::{rat_int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Reduced instance counts and sizes.
    Fast,
    /// The full sizes, with runtime budgets enforced.
    Full,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [&str; 12] = [
    "Onsager relations",
    "Dolan-Grady condition",
    "ideal classification",
    "Chinese remainder lift",
    "quotient dimensions",
    "Y-reduction",
    "E/F/H relations",
    "ad X0 spectrum",
    "lambda model",
    "Stirling, Lah and Bernoulli identities",
    "representations",
    "chiral Potts",
];

/// Wall-clock budgets in seconds, enforced at [`Level::Full`].
fn budget(id: usize) -> Option<f64> {
    match id {
        1 => Some(1.0),
        5 => Some(10.0),
        12 => Some(60.0),
        _ => None,
    }
}

pub fn run_criterion(id: usize, level: Level) -> CriterionReport {
    let start = Instant::now();
    let result = match id {
        1 => onsager_relations(level),
        2 => dolan_grady(level),
        3 => ideal_classification(level),
        4 => crt(level),
        5 => quotient_dimensions(level),
        6 => y_reduction_routes(level),
        7 => efh_relations(level),
        8 => ad_spectrum(level),
        9 => lambda_model(level),
        10 => identities(level),
        11 => representations(level),
        12 => chiral_potts(level),
        _ => Err(format!("no criterion {id}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let (Level::Full, Some(limit)) = (level, budget(id)) {
        if seconds > limit {
            passed = false;
            detail = format!("{detail}; took {seconds:.2}s, budget {limit}s");
        }
    }
    let title = CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown").to_string();
    CriterionReport { id, title, passed, detail, seconds }
}

pub fn run_all(level: Level) -> Vec<CriterionReport> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, level)).collect()
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn onsager_relations(_: Level) -> Check {
    let r = 8;
    let a: Vec<OAElement> = (-2 * r..=2 * r).map(generator_a).collect();
    let g: Vec<OAElement> = (-2 * r..=2 * r).map(generator_g).collect();
    let at = |v: &[OAElement], m: i64| v[(m + 2 * r) as usize].clone();
    let mut count = 0;
    for l in -r..=r {
        for m in -r..=r {
            // [A_l, A_m] = 4 G_{l-m}
            ensure(at(&a, l).bracket(&at(&a, m)) == at(&g, l - m).scale(&int(4)), || format!("[A_{l}, A_{m}]"))?;
            // [G_l, A_m] = 2A_{m+l} - 2A_{m-l}
            let rhs = &at(&a, m + l).scale(&int(2)) - &at(&a, m - l).scale(&int(2));
            ensure(at(&g, l).bracket(&at(&a, m)) == rhs, || format!("[G_{l}, A_{m}]"))?;
            ensure(at(&g, l).bracket(&at(&g, m)).is_zero(), || format!("[G_{l}, G_{m}]"))?;
            count += 3;
        }
    }
    Ok(format!("{count} relations for |l|, |m| <= {r}"))
}

fn quotient_dg(q: &QuotientAlgebra, order: usize) -> std::result::Result<bool, String> {
    let p0 = project(&generator_a(0), &q.a, order).map_err(|e| e.to_string())?;
    let p1 = project(&generator_a(1), &q.a, order).map_err(|e| e.to_string())?;
    let defect = |b0: &[Scalar], b1: &[Scalar]| {
        let c = q.bracket(b1, b0);
        let t = q.bracket(b1, &q.bracket(b1, &c));
        t.iter().zip(&c).all(|(x, y)| (x - &(y * &int(16))).is_zero())
    };
    Ok(defect(&p0, &p1) && defect(&p1, &p0))
}

fn dolan_grady(level: Level) -> Check {
    ensure(dg_check(&generator_a(0), &generator_a(1)), || "A0, A1 in OA".into())?;
    ensure(dg_check(&generator_a(0).to_sl2(), &generator_a(1).to_sl2()), || "A0, A1 in the loop algebra".into())?;
    // ad A_m is cubic on all of OA, so a failing pair has to mix levels
    let mixed = &generator_a(1) + &generator_a(2);
    ensure(!dg_check(&generator_a(0), &mixed), || "A0, A1 + A2 unexpectedly satisfy DG".into())?;
    let max_l = if level == Level::Full { 6 } else { 3 };
    let mut quotients = 0;
    for a in ["2", "3", "i", "1", "-1", "1/2+i"] {
        let a: Scalar = a.parse().unwrap();
        for order in 1..=max_l {
            let q = build_quotient(&a, order).map_err(|e| e.to_string())?;
            ensure(quotient_dg(&q, order)?, || format!("OA_{{{a},{order}}}"))?;
            quotients += 1;
        }
    }
    let mut reps = 0;
    for (pts, spins) in [
        (vec!["2"], vec!["1/2"]),
        (vec!["3", "i"], vec!["1", "1/2"]),
        (vec!["1+i", "-2", "1"], vec!["1/2", "1/2", "1/2"]),
        (vec!["2/3"], vec!["3/2"]),
    ] {
        let pts: Vec<Scalar> = pts.iter().map(|s| s.parse().unwrap()).collect();
        let spins: Vec<Spin> = spins.iter().map(|s| s.parse().unwrap()).collect();
        let rep = build_rep(&pts, &spins).map_err(|e| e.to_string())?;
        ensure(dg_check(&rep.m0, &rep.m1), || format!("representation at {pts:?}"))?;
        reps += 1;
    }
    let max_sites = if level == Level::Full { 3 } else { 2 };
    for sites in 1..=max_sites {
        ensure(dg_check_exact(2, sites).map_err(|e| e.to_string())?, || format!("Ising chain, {sites} sites"))?;
    }
    Ok(format!("OA, loop algebra, {quotients} quotients, {reps} representations, Ising chains up to {max_sites} sites"))
}

fn scalar_pool() -> Vec<Scalar> {
    ["2", "3", "-2", "i", "1+i", "2i", "3/2", "-1/3", "2-i"].iter().map(|s| s.parse().unwrap()).collect()
}

fn random_reciprocal(rng: &mut ChaCha8Rng) -> ReciprocalPoly {
    let mut pool = scalar_pool();
    pool.shuffle(rng);
    let mut roots: Vec<(Scalar, usize)> = pool[..rng.gen_range(0..=2)].iter().map(|a| (a.clone(), rng.gen_range(1..=2))).collect();
    roots.push((int(1), rng.gen_range(0..=3)));
    roots.push((int(-1), rng.gen_range(0..=3)));
    ReciprocalPoly::from_roots(&roots).unwrap()
}

/// `t^shift · f mod modulus`, coefficient vector of length `deg modulus`.
fn residue(f: &LaurentPoly, modulus: &LaurentPoly, shift: i64) -> Vec<Scalar> {
    let d = modulus.degree().unwrap_or(0) as usize;
    let r = f.shift(shift).div_rem(modulus).unwrap().1;
    (0..d as i64).map(|k| r.coeff(k)).collect()
}

/// Basis of the window `p ∈ span{tᵏ : |k| ≤ D}`, `q ∈ span{tᵏ - t⁻ᵏ : 1 ≤ k ≤ D}`.
fn window(d: i64) -> Vec<OAElement> {
    let mut out: Vec<OAElement> =
        (-d..=d).map(|k| OAElement::new(LaurentPoly::monomial(Scalar::one(), k), LaurentPoly::zero()).unwrap()).collect();
    out.extend((1..=d).map(generator_g));
    out
}

/// Dimension of `{X ∈ span(basis) : m_p | p(f(X)), m_q | q(f(X)) for every map f}`.
fn conditioned_dim(
    basis: &[OAElement],
    maps: &[&dyn Fn(&OAElement) -> OAElement],
    p_mod: &LaurentPoly,
    q_mod: &LaurentPoly,
    shift: i64,
) -> usize {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for f in maps {
        let images: Vec<OAElement> = basis.iter().map(f).collect();
        for (getter, m) in [(0, p_mod), (1, q_mod)] {
            let cols: Vec<Vec<Scalar>> = images
                .iter()
                .map(|y| residue(if getter == 0 { y.p() } else { y.q() }, m, shift))
                .collect();
            for k in 0..m.degree().unwrap_or(0) as usize {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    basis.len() - Matrix::from_rows(rows).rank()
}

fn ideal_classification(level: Level) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let count = if level == Level::Full { 50 } else { 12 };
    let (mut closed, mut open) = (0, 0);
    for _ in 0..count {
        let p = random_reciprocal(&mut rng);
        let poly = p.poly().clone();
        let parity = poly.root_multiplicity(&int(1)).is_multiple_of(2) && poly.root_multiplicity(&int(-1)).is_multiple_of(2);
        let d = poly.degree().unwrap() + 4;
        let basis = window(d);
        let shift = 3 * d + 2;
        let a0 = generator_a(0);
        let a1 = generator_a(1);
        let br0 = |x: &OAElement| x.bracket(&a0);
        let br1 = |x: &OAElement| x.bracket(&a1);
        let id = |x: &OAElement| x.clone();
        let z_dim = conditioned_dim(&basis, &[&br0, &br1], &poly, &poly, shift);
        let i_dim = conditioned_dim(&basis, &[&id], &poly, &poly, shift);
        let predicted = conditioned_dim(&basis, &[&id], &p.tilde(), &poly, shift);
        let brute = z_dim == i_dim;
        ensure(z_dim == predicted, || format!("P = {poly}: dim Z = {z_dim}, the even-multiplicity rule gives {predicted}"))?;
        ensure(is_closed(&p) == parity && parity == brute, || {
            format!("P = {poly}: is_closed {}, parity {parity}, brute force {brute}", is_closed(&p))
        })?;
        if brute {
            closed += 1;
        } else {
            open += 1;
        }
    }
    Ok(format!("{count} polynomials ({closed} closed, {open} not closed)"))
}

fn random_element(rng: &mut ChaCha8Rng, spread: i64) -> OAElement {
    let mut p = LaurentPoly::zero();
    let mut r = LaurentPoly::zero();
    for k in -spread..=spread {
        p = &p + &LaurentPoly::monomial(Scalar::new(rat_int(rng.gen_range(-3..=3)), rat_int(rng.gen_range(-1..=1))), k);
        r = &r + &LaurentPoly::monomial(int(rng.gen_range(-3..=3)), k);
    }
    OAElement::from_p_and_antisymmetrized(p, &r)
}

fn crt(level: Level) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let count = if level == Level::Full { 100 } else { 20 };
    let mut pool = scalar_pool();
    pool.push(int(1));
    pool.push(int(-1));
    let mut residues = 0;
    for _ in 0..count {
        pool.shuffle(&mut rng);
        let k = rng.gen_range(2..=4);
        let targets: Vec<(OAElement, ReciprocalPoly)> = pool[..k]
            .iter()
            .map(|a| {
                let m = ReciprocalPoly::from_roots(&[(a.clone(), rng.gen_range(1..=2))]).unwrap();
                (random_element(&mut rng, 2), m)
            })
            .collect();
        let x = crt_lift(&targets).map_err(|e| e.to_string())?;
        for (y, m) in &targets {
            ensure(ideal_member(&(&x - y), m), || format!("residue mod {} fails", m.poly()))?;
            residues += 1;
        }
    }
    Ok(format!("{count} lifts, {residues} residues verified"))
}

fn quotient_dimensions(level: Level) -> Check {
    let (max_generic, max_one) = if level == Level::Full { (6, 9) } else { (4, 6) };
    let mut builds = 0;
    for a in ["2", "3", "i"] {
        let a: Scalar = a.parse().unwrap();
        for order in 1..=max_generic {
            let q = build_quotient(&a, order).map_err(|e| e.to_string())?;
            ensure(q.dim() == 3 * order, || format!("dim OA_{{{a},{order}}} = {}", q.dim()))?;
            ensure(q.check_antisymmetry() && q.check_jacobi(), || format!("Jacobi fails for OA_{{{a},{order}}}"))?;
            builds += 1;
        }
    }
    for order in 1..=max_one {
        let q = build_quotient(&Scalar::one(), order).map_err(|e| e.to_string())?;
        ensure(q.dim() == order + order / 2, || format!("dim OA_{{1,{order}}} = {}", q.dim()))?;
        ensure(q.check_antisymmetry() && q.check_jacobi(), || format!("Jacobi fails for OA_{{1,{order}}}"))?;
        ensure(!q.derived_series(&q.full_basis()).is_empty() && q.is_solvable(), || format!("OA_{{1,{order}}} not solvable"))?;
        builds += 1;
    }
    Ok(format!("{builds} quotients; 3L for a = 2, 3, i up to L = {max_generic}; L + [L/2] for a = 1 up to L = {max_one}"))
}

fn y_reduction_routes(level: Level) -> Check {
    let max = if level == Level::Full { 10 } else { 8 };
    for order in 1..=max {
        let r = y_reduction(order);
        ensure(r.routes_agree, || format!("linear solve and closed form differ at L = {order}"))?;
        ensure(r.odd_constraints_hold, || format!("odd constraints fail at L = {order}"))?;
    }
    Ok(format!("linear solve equals the Bernoulli closed form for L <= {max}"))
}

fn efh_relations(level: Level) -> Check {
    let max = if level == Level::Full { 5 } else { 3 };
    for l in 1..=max {
        let b = efh_basis(l).map_err(|e| e.to_string())?;
        if let Some((x, y)) = b.relation_violation() {
            return Err(format!("[{x}, {y}] differs from the truncated relations at l = {l}"));
        }
    }
    Ok(format!("all brackets match for l <= {max}"))
}

fn ad_spectrum(level: Level) -> Check {
    let max = if level == Level::Full { 5 } else { 3 };
    for l in 1..=max {
        let s = ad_spectrum_x0(l).map_err(|e| e.to_string())?;
        ensure(s.multiplicities() == (l, l, l), || format!("l = {l}: multiplicities {:?}", s.multiplicities()))?;
        ensure(s.diagonalizable, || format!("l = {l}: ad X0 not diagonalizable"))?;
        ensure(s.listed_vectors_ok && s.listed_vectors_span, || format!("l = {l}: listed eigenvectors fail"))?;
        ensure(s.zero_vectors_commute, || format!("l = {l}: 0-eigenvectors do not commute"))?;
    }
    Ok(format!("eigenvalues 0, 4, -4 with multiplicities (l, l, l) for l <= {max}"))
}

fn lambda_model(level: Level) -> Check {
    let max = if level == Level::Full { 8 } else { 6 };
    for order in 1..=max {
        let r = lambda_realization(order).map_err(|e| e.to_string())?;
        ensure(r.transports, || format!("L = {order}: transported constants differ"))?;
        ensure(r.lower_triangular && r.invertible && r.diagonal_ok, || format!("L = {order}: change matrix shape"))?;
        ensure(r.holds(), || format!("L = {order}: {r:?}"))?;
        let l = order / 2;
        if order % 2 == 1 {
            ensure(r.part_dims == (l + 1, l, l), || format!("L = {order}: parts {:?}", r.part_dims))?;
        }
    }
    Ok(format!("structure constants transported exactly for L <= {max}"))
}

fn identities(_: Level) -> Check {
    let t = StirlingTable::build(16);
    for a in 0..=8 {
        for b in 0..=8 {
            let want = num_bigint::BigInt::from(i32::from(a == b));
            ensure(t.inverse_pairing(a, b).unwrap() == want, || format!("Σ s S at ({a}, {b})"))?;
            if b <= a {
                ensure(t.lah_identity_check(a, b).unwrap(), || format!("Lah identity at ({a}, {b})"))?;
            }
        }
    }
    for j in 0..=8 {
        for k in 0..=8 - j {
            for a in 0..=8 {
                ensure(t.second_identity_check(j, k, a).unwrap(), || format!("second identity at ({j}, {k}, {a})"))?;
            }
        }
    }
    let cache = BernoulliCache::build(10);
    for k in 1..=8 {
        ensure(num_traits::Zero::is_zero(&cache.v_recurrence(k)), || format!("v-recurrence at k = {k}"))?;
    }
    let solved = alpha_by_linear_solve(7);
    for (j, s) in solved.iter().enumerate() {
        ensure(s == &alpha_closed_form(j, &cache), || format!("alpha_{j} closed form"))?;
        ensure(s == &alpha_from_inversion(j, &cache), || format!("alpha_{j} from the inversion"))?;
    }
    for j in 0..=8 {
        ensure(cache.d[j] == cache.d_closed_form(j), || format!("d_{} closed form", 2 * j))?;
    }
    let a: Vec<_> = (1..=6).map(|n| crate::scalar::rat(n * n - 3, n + 1)).collect();
    let b = inversion_transform(&a, &cache).map_err(|e| e.to_string())?;
    ensure(forward_transform(&b) == a, || "inversion round trip".into())?;
    Ok("Stirling inverse, both Lah-type identities, v-recurrence, alpha_j and d_2j closed forms".into())
}

fn representations(level: Level) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let count = if level == Level::Full { 30 } else { 10 };
    let points: Vec<Scalar> = ["2", "1/2", "3", "-2", "1", "-1", "i", "1+i", "2i", "3/2"].iter().map(|s| s.parse().unwrap()).collect();
    let spin_pool = [Spin::half(), Spin::from_twice(2).unwrap(), Spin::from_twice(3).unwrap()];
    let (mut irreducible, mut members, mut elements) = (0, 0, 0);
    for inst in 0..count {
        let (pts, spins) = loop {
            let n = rng.gen_range(1..=3);
            let pts: Vec<Scalar> = (0..n).map(|_| points.choose(&mut rng).unwrap().clone()).collect();
            let spins: Vec<Spin> = (0..n).map(|_| *spin_pool.choose(&mut rng).unwrap()).collect();
            if spins.iter().map(Spin::dim).product::<usize>() <= 16 {
                break (pts, spins);
            }
        };
        let rep = build_rep(&pts, &spins).map_err(|e| e.to_string())?;
        let kernel = rep.kernel_polynomial().map_err(|e| e.to_string())?;
        for trial in 0..6 {
            let base = random_element(&mut rng, 2);
            // half the trials are pushed into the ideal by multiplying with P
            let x = if trial % 2 == 0 {
                let p = kernel.poly();
                let r = &(base.q() + &LaurentPoly::monomial(Scalar::one(), 1)) * p;
                OAElement::from_p_and_antisymmetrized(base.p() * p, &r)
            } else {
                base
            };
            let zero = rep.image(&x).map_err(|e| e.to_string())?.is_zero();
            let member = ideal_member(&x, &kernel);
            ensure(zero == member, || format!("instance {inst}: image zero {zero}, ideal member {member}"))?;
            members += usize::from(member);
            elements += 1;
        }
        let criterion = is_irreducible(&pts).map_err(|e| e.to_string())?;
        let commutant = rep.commutant_dim();
        ensure(criterion == (commutant == 1), || {
            format!("instance {inst} at {pts:?}: criterion {criterion}, commutant dimension {commutant}")
        })?;
        irreducible += usize::from(criterion);
    }
    Ok(format!(
        "{count} representations ({irreducible} irreducible); {elements} elements, {members} in the kernel ideal"
    ))
}

fn chiral_potts(level: Level) -> Check {
    let tol = Tolerances::from_env().map_err(|e| e.to_string())?;
    let cap = if level == Level::Full { 64 } else { 27 };
    let mut chains = 0;
    for n in 2..=4usize {
        for sites in 1..=3usize {
            if n.pow(sites as u32) > cap {
                continue;
            }
            let c = build_chain(n, sites).map_err(|e| e.to_string())?;
            ensure(c.hermitian_defect() <= tol.hermitian, || format!("N = {n}, sites = {sites}: not Hermitian"))?;
            let dg = dg_check_numeric(&c);
            ensure(dg.relative < tol.dg, || format!("N = {n}, sites = {sites}: DG deviation {:e}", dg.relative))?;
            chains += 1;
        }
    }
    for sites in 1..=3 {
        ensure(dg_check_exact(2, sites).map_err(|e| e.to_string())?, || format!("exact DG fails for N = 2, sites = {sites}"))?;
    }
    ensure(dg_check_exact(4, 1).map_err(|e| e.to_string())?, || "exact DG fails for N = 4, sites = 1".into())?;

    let samples: Vec<f64> = (0..21).map(|i| 0.1 * i as f64).collect();
    let mut fits = Vec::new();
    for (n, sites, limit) in [(2, 1, 1e-8f64), (2, 2, 1e-8), (2, 3, 1e-8), (3, 2, 1e-6)] {
        let c = build_chain(n, sites).map_err(|e| e.to_string())?;
        let sweep = spectrum_sweep(&c, &samples);
        let f = fit_onsager_form(&sweep, n, limit.min(tol.fit)).map_err(|e| format!("N = {n}, sites = {sites}: {e}"))?;
        ensure(f.residual < limit, || format!("N = {n}, sites = {sites}: residual {:e}", f.residual))?;
        if n == 2 {
            ensure(f.all_spin_half, || format!("N = 2, sites = {sites}: some m_j is not ±1/2"))?;
        }
        fits.push(format!("N={n} L={sites}: {:.1e}", f.residual));
    }
    Ok(format!("{chains} chains Hermitian and DG; fits {}", fits.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_level_passes() {
        for id in [1, 3, 6, 10] {
            let r = run_criterion(id, Level::Fast);
            assert!(r.passed, "{}: {}", r.title, r.detail);
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        assert!(!run_criterion(13, Level::Fast).passed);
    }
}
