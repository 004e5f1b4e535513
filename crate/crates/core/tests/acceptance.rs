//! Acceptance criteria, one line of output per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout; the
//! process exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use qident::ffpoly::{fixed_t_target, telescoped_target, verify_fixed_t_product, verify_telescoped_product, FqPoly};
use qident::glnq::{
    census, census_report, exact_probability_max_part_lt, gl_order, gl_order_product_form, limit_probability,
    probability_by_cycle_index, semisimple_census,
};
use qident::hall_littlewood::{
    closed_form_specialization, gordon_term_at, hl_poly_cosets, hl_poly_full_sum, monomial_symmetric,
    principal_specialization, schur_via_alternants, theorem4_check,
};
use qident::partitions::enumerate_partitions;
use qident::qseries::{gordon_product_side, gordon_sum_side, partition_sum_side};
use qident::rational::{self, int, ratio, Rational};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gordon_identity() -> Outcome {
    let mut checked = 0;
    for k in 2..=4 {
        for i in 1..=k {
            let sum = gordon_sum_side(k, i, 40).map_err(|e| e.to_string())?;
            let prod = gordon_product_side(k, i, 40).map_err(|e| e.to_string())?;
            ensure(sum == prod, || format!("k={k} i={i} differ"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (k,i) pairs equal through x^40"))
}

fn dual_sum_side() -> Outcome {
    for k in 2..=4 {
        let by_partitions = partition_sum_side(k, 40).map_err(|e| e.to_string())?;
        let by_tuples = gordon_sum_side(k, k, 40).map_err(|e| e.to_string())?;
        ensure(by_partitions == by_tuples, || format!("k={k} differ"))?;
    }
    Ok("k = 2, 3, 4 equal through x^40".into())
}

fn irreducible_product() -> Outcome {
    for q in [2u64, 3, 5] {
        for t in 1..=3 {
            ensure(verify_fixed_t_product(q, t, 25) == fixed_t_target(q, t, 25), || {
                format!("fixed-t product q={q} t={t}")
            })?;
        }
        for t_max in 1..=6 {
            let tele = verify_telescoped_product(q, t_max, 25).map_err(|e| e.to_string())?;
            ensure(tele == telescoped_target(q, t_max, 25), || format!("telescoped q={q} t_max={t_max}"))?;
        }
    }
    Ok("fixed t in 1..3 and t_max in 1..6 exact through u^25 for q = 2, 3, 5".into())
}

fn kung_census() -> Outcome {
    let mut notes = Vec::new();
    for (n, q, order) in [(2usize, 2u64, 6u64), (2, 3, 48), (3, 2, 168)] {
        let report = census_report(n, q, census(n, q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(report.consistent(), || format!("GL({n},{q}) census disagrees with class sizes"))?;
        let size_sum: BigUint = report.rows.iter().map(|r| r.formula_size.clone()).sum();
        ensure(size_sum == BigUint::from(order), || format!("GL({n},{q}) sizes sum to {size_sum}"))?;
        if (n, q) == (2, 2) {
            let mut sizes: Vec<u64> = report.rows.iter().map(|r| r.count).collect();
            sizes.sort_unstable();
            ensure(sizes == vec![1, 2, 3], || format!("GL(2,2) sizes {sizes:?}"))?;
        }
        notes.push(format!("GL({n},{q}): {} classes, total {order}", report.rows.len()));
    }
    Ok(notes.join("; "))
}

/// Fraction of `GL(n, q)` whose partition at `z - 1` has largest part `< k`.
fn census_probability(n: usize, q: u64, k: u32) -> Result<Rational, String> {
    let phi = FqPoly::linear(q, 1);
    let tally = census(n, q).map_err(|e| e.to_string())?;
    let mut favourable = 0u64;
    let mut total = 0u64;
    for (class, count) in tally {
        total += count;
        if class.get(&phi).map_or(0, |l| l.largest_part()) < k {
            favourable += count;
        }
    }
    Ok(Rational::new(BigInt::from(favourable), BigInt::from(total)))
}

fn cycle_index_dual_path() -> Outcome {
    let mut cases = 0;
    for n in 0..=4 {
        for q in [2u64, 3] {
            for k in [2u32, 3] {
                for m in [1usize, 2] {
                    let p = exact_probability_max_part_lt(n, q, k, m).map_err(|e| e.to_string())?;
                    ensure(p.agree(), || format!("n={n} q={q} k={k} m={m}: {} vs {}", p.by_classes, p.by_cycle_index))?;
                    cases += 1;
                }
            }
        }
    }
    for (n, q, k, expected) in [(2u32, 2u64, 2u32, ratio(1, 2)), (2, 3, 2, ratio(5, 6))] {
        let formula = exact_probability_max_part_lt(n, q, k, 1).map_err(|e| e.to_string())?;
        let counted = census_probability(n as usize, q, k)?;
        ensure(formula.by_classes == expected && counted == expected, || {
            format!("P({n},{q},{k},1): formula {} census {counted}", formula.by_classes)
        })?;
    }
    Ok(format!("{cases} parameter sets agree; P(2,2,2,1) = 1/2 and P(2,3,2,1) = 5/6 by census"))
}

fn limit_bracket() -> Outcome {
    let tol = ratio(1, 100_000_000);
    let interval = limit_probability(3, 2, 1, &tol).map_err(|e| e.to_string())?;
    ensure(interval.width() <= tol, || format!("width {}", rational::to_decimal(&interval.width())))?;
    let p8 = probability_by_cycle_index(8, 3, 2, 1).map_err(|e| e.to_string())?;
    let p2 = probability_by_cycle_index(2, 3, 2, 1).map_err(|e| e.to_string())?;
    let d8 = interval.max_distance(&p8);
    ensure(d8 < ratio(1, 200), || format!("|P_8 - L| up to {}", rational::to_decimal(&d8)))?;
    // the closest possible distance from P_2 must exceed the farthest from P_8
    let near2 = if interval.contains(&p2) {
        Rational::zero()
    } else {
        (&p2 - interval.midpoint()).abs() - interval.width() / int(2)
    };
    ensure(d8 < near2, || "P_8 not closer than P_2".into())?;
    Ok(format!(
        "limit in [{}, {}]; |P_8 - L| <= {}; |P_2 - L| >= {}",
        rational::to_decimal(&interval.lo),
        rational::to_decimal(&interval.hi),
        rational::to_decimal(&d8),
        rational::to_decimal(&near2),
    ))
}

fn specialization_identity() -> Outcome {
    let tol = ratio(1, 1_000_000);
    for q in [2u64, 3, 5] {
        for k in [2u32, 3] {
            let check = theorem4_check(q, k, &tol).map_err(|e| e.to_string())?;
            ensure(check.consistent, || {
                format!(
                    "q={q} k={k}: lhs [{}, {}] rhs [{}, {}]",
                    rational::to_decimal(&check.lhs_interval.lo),
                    rational::to_decimal(&check.lhs_interval.hi),
                    rational::to_decimal(&check.rhs_interval.lo),
                    rational::to_decimal(&check.rhs_interval.hi)
                )
            })?;
        }
    }
    let mut terms = 0;
    for q in [2u64, 3, 5] {
        for lambda in enumerate_partitions(12, Some(4)) {
            let closed = closed_form_specialization(&lambda, q).map_err(|e| e.to_string())?;
            ensure(closed == gordon_term_at(&lambda, q), || format!("term {lambda} at q={q}"))?;
            terms += 1;
        }
    }
    Ok(format!("6 (q,k) pairs consistent at 1e-6; {terms} closed-form terms equal Gordon terms exactly"))
}

fn hall_littlewood_structure() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut cases = 0;
    for lambda in enumerate_partitions(4, None) {
        for n in lambda.len().max(1)..=4 {
            let cosets = hl_poly_cosets(&lambda, n).map_err(|e| e.to_string())?;
            let full = hl_poly_full_sum(&lambda, n).map_err(|e| e.to_string())?;
            ensure(cosets == full, || format!("{lambda} n={n}: definitions differ"))?;

            let mut points = 0;
            while points < 20 {
                let pt: Vec<Rational> = (0..n).map(|_| ratio(rng.gen_range(-30..=30), rng.gen_range(1..=9))).collect();
                let schur = match schur_via_alternants(&lambda, &pt) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let value = cosets.eval(&pt, &Rational::zero()).map_err(|e| e.to_string())?;
                ensure(value == schur, || format!("{lambda} n={n}: t=0 differs from Schur"))?;
                points += 1;
            }

            let expected: BTreeMap<Vec<u32>, Rational> = monomial_symmetric(&lambda, n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|e| (e, Rational::one()))
                .collect();
            ensure(cosets.at_t(&Rational::one()) == expected, || format!("{lambda} n={n}: t=1 differs"))?;
            cases += 1;
        }
    }
    for q in [2u64, 3] {
        for lambda in enumerate_partitions(3, None) {
            let limit = closed_form_specialization(&lambda, q).map_err(|e| e.to_string())?;
            let errors: Vec<Rational> = (lambda.len()..=lambda.len() + 5)
                .map(|n| principal_specialization(&lambda, q, n).map(|v| (v - &limit).abs()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if lambda.is_empty() {
                ensure(errors.iter().all(|e| e.is_zero()), || "empty partition not exact".into())?;
            } else {
                ensure(errors.windows(2).all(|w| w[1] < w[0]), || format!("{lambda} q={q}: error not decreasing"))?;
            }
        }
    }
    Ok(format!("{cases} (λ, n) cases; 20 Schur points each; specializations converge"))
}

fn identity_suite() -> Outcome {
    for lambda in enumerate_partitions(18, None) {
        ensure(lambda.sum_conj_sq() == lambda.size() + 2 * lambda.n_lambda(), || format!("{lambda}"))?;
    }
    for lambda in enumerate_partitions(12, None) {
        let conj = lambda.conjugate();
        let mut prefix = 0u64;
        for i in 1..=lambda.largest_part() + 1 {
            prefix += conj.parts().get(i as usize - 1).copied().unwrap_or(0) as u64;
            ensure(lambda.kung_d(i) == prefix, || format!("d_{i}({lambda})"))?;
        }
    }
    for q in [2u64, 3, 5] {
        for n in 0..=8 {
            ensure(rational::from_biguint(&gl_order(n, q)) == gl_order_product_form(n, q), || {
                format!("|GL({n},{q})|")
            })?;
        }
    }
    Ok("partition identities through size 18, d_i through 12, group orders n <= 8".into())
}

fn semisimple() -> Outcome {
    let tol = ratio(1, 1_000_000_000);
    let mut notes = Vec::new();
    for (n, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
        let c = semisimple_census(n, q, &tol).map_err(|e| e.to_string())?;
        ensure(c.criteria_agree(), || format!("Mat({n},{q}): {} vs {}", c.by_partitions, c.by_radical))?;
        notes.push(format!(
            "Mat({n},{q}) {}/{} = {} (product with exponent r-1: {}, with exponent r: {})",
            c.by_partitions,
            c.total,
            rational::to_decimal(&c.proportion),
            rational::to_decimal(&c.exponent_r_minus_1.midpoint()),
            rational::to_decimal(&c.exponent_r.midpoint()),
        ));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("gordon identity", gordon_identity),
        ("dual sum side", dual_sum_side),
        ("irreducible product", irreducible_product),
        ("kung census", kung_census),
        ("cycle index dual path", cycle_index_dual_path),
        ("limit bracket", limit_bracket),
        ("hall-littlewood specialization", specialization_identity),
        ("hall-littlewood structure", hall_littlewood_structure),
        ("identity suite", identity_suite),
        ("semisimple census", semisimple),
    ];
    let mut failures = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} [{name}]: PASS ({ms} ms) {detail}", index + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} [{name}]: FAIL ({ms} ms) {detail}", index + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
