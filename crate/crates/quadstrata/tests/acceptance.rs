// SPDX-License-Identifier: MIT OR Apache-2.0
//! Acceptance suite: nine criteria, one PASS/FAIL line each.
//!
//! Built with `harness = false`: `main` runs every criterion, prints its
//! line on stdout and exits with a failure status if any criterion fails.
//! Every tolerance and time limit is pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;

use quadstrata::constructors::{catalog, construct};
use quadstrata::core::{stratum_nonempty_holomorphic, validate_signature};
use quadstrata::oracle::{decide, Obstruction, OracleError, Status};
use quadstrata::search::{check_half_integer_lengths, check_sum_bound, search_witnesses};
use quadstrata::surface::{
    make_polar_part_even, make_polar_part_order2, verify, LocalInvariants, SurfaceBuilder, Twist,
};
use quadstrata::{ComponentSelector, GaussianRational, RootedResidueConfig, StratumSignature};

/// Exact comparisons everywhere: no numerical tolerance is used.
const EXACT_TOLERANCE: i64 = 0;
/// Wall-clock limit for the whole classification table.
const TABLE_LIMIT: Duration = Duration::from_secs(1);
/// Wall-clock limit for building and verifying one catalog witness.
const WITNESS_LIMIT: Duration = Duration::from_secs(1);
/// Wall-clock limit for the exhaustive triple check.
const TRIPLE_LIMIT: Duration = Duration::from_secs(60);
/// Largest root in the triple check.
const TRIPLE_MAX_ROOT: i64 = 10;
/// Largest number of double poles in the sweep.
const SWEEP_MAX_POLES: i64 = 5;
/// Largest root sum in the sweep.
const SWEEP_MAX_SUM: i64 = 12;
/// Number of all-even surfaces checked for non-primitivity.
const SQUARE_SURFACES: usize = 20;
/// Bounds of the holomorphic table.
const HOLO_MAX_GENUS: i64 = 3;
const HOLO_MAX_POSITIVE_SUM: i64 = 8;
/// Search budget used by the sweep.
const BUDGET: usize = 7;

fn g(s: &str) -> GaussianRational {
    s.parse().expect("literal")
}

fn gs(s: &str) -> Vec<GaussianRational> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| g(x.trim()))
        .collect()
}

/// Expected outcome of a table row.
#[derive(Clone, Debug)]
enum Expect {
    Yes(&'static str),
    No(Obstruction, &'static str),
    Error(OracleError),
}

struct Row {
    genus: i64,
    orders: &'static [i64],
    even: &'static str,
    double: &'static str,
    component: ComponentSelector,
    expect: Expect,
}

fn special(name: &str) -> Obstruction {
    Obstruction::SpecialFamily(name.into())
}

/// Rows transcribed from the classification statements.
fn table() -> Vec<Row> {
    use ComponentSelector::{RotationNumber as Rho, WholeStratum as All};
    use Expect::*;
    use Obstruction::*;
    let r = |genus, orders, even, double, component, expect| Row {
        genus,
        orders,
        even,
        double,
        component,
        expect,
    };
    vec![
        // Genus at least two: surjective on every component.
        r(2, &[6, 2, -4], "0", "", All, Yes("genus-ge2-surjective")),
        r(2, &[12, -8], "0", "", All, Yes("genus-ge2-surjective")),
        r(2, &[5, 3, -4], "1+i", "", All, Yes("genus-ge2-surjective")),
        r(3, &[10, -2], "", "1", All, Yes("genus-ge2-surjective")),
        r(
            2,
            &[6, 2, -4],
            "0",
            "",
            Rho(1),
            Error(OracleError::ComponentUnknownForGenusGe2),
        ),
        // Genus one.
        r(
            1,
            &[4, -4],
            "0",
            "",
            All,
            No(Origin, "genus1-origin-single-zero"),
        ),
        r(1, &[4, -4], "1", "", All, Yes("genus1-surjective")),
        r(
            1,
            &[8, -4, -4],
            "0,0",
            "",
            All,
            No(Origin, "genus1-origin-single-zero"),
        ),
        r(1, &[8, -4, -4], "1,0", "", All, Yes("genus1-surjective")),
        r(
            1,
            &[1, 3, -4],
            "0",
            "",
            All,
            No(Origin, "genus1-origin-odd-pair"),
        ),
        r(
            1,
            &[3, 5, -4, -4],
            "0,0",
            "",
            All,
            No(Origin, "genus1-origin-odd-pair"),
        ),
        r(1, &[3, 5, -4, -4], "0,i", "", All, Yes("genus1-surjective")),
        r(
            1,
            &[4, -2, -2],
            "",
            "1,1",
            All,
            No(ProportionalAllOnes, "genus1-all-ones-single-zero"),
        ),
        r(1, &[4, -2, -2], "", "1,2", All, Yes("genus1-surjective")),
        r(
            1,
            &[8, -2, -2, -2, -2],
            "",
            "1,1,1,1",
            All,
            No(ProportionalAllOnes, "genus1-all-ones-single-zero"),
        ),
        r(
            1,
            &[8, -2, -2, -2, -2],
            "",
            "i,-i,i,i",
            All,
            No(ProportionalAllOnes, "genus1-all-ones-single-zero"),
        ),
        r(
            1,
            &[1, 3, -2, -2],
            "",
            "1,1",
            All,
            No(ProportionalAllOnes, "genus1-all-ones-odd-pair"),
        ),
        r(
            1,
            &[3, 5, -2, -2, -2, -2],
            "",
            "2,2,2,2",
            All,
            No(ProportionalAllOnes, "genus1-all-ones-odd-pair"),
        ),
        r(
            1,
            &[6, -2, -2, -2],
            "",
            "1,1,1",
            All,
            Yes("genus1-surjective"),
        ),
        r(
            1,
            &[6, -6],
            "0",
            "",
            Rho(1),
            No(ExceptionalComponent, "genus1-exceptional-component"),
        ),
        r(1, &[6, -6], "0", "", Rho(3), Yes("genus1-surjective")),
        r(1, &[6, -6], "0", "", All, Yes("genus1-surjective")),
        r(1, &[6, -6], "1", "", Rho(1), Yes("genus1-surjective")),
        r(
            1,
            &[3, 3, -6],
            "0",
            "",
            Rho(1),
            No(ExceptionalComponent, "genus1-exceptional-component"),
        ),
        r(
            1,
            &[12, -6, -6],
            "0,0",
            "",
            Rho(3),
            No(ExceptionalComponent, "genus1-exceptional-component"),
        ),
        r(
            1,
            &[12, -6, -6],
            "0,0",
            "",
            Rho(1),
            Yes("genus1-surjective"),
        ),
        r(
            1,
            &[6, -6],
            "0",
            "",
            Rho(5),
            Error(OracleError::InvalidComponent(String::new())),
        ),
        r(
            1,
            &[6, -6],
            "0",
            "",
            Rho(2),
            Error(OracleError::InvalidComponent(String::new())),
        ),
        // Genus zero, at least four odd singularities.
        r(
            0,
            &[1, 1, -1, -1, -2, -2],
            "",
            "1,1",
            All,
            Yes("genus0-four-odd-surjective"),
        ),
        r(
            0,
            &[1, -1, -1, -1, -2],
            "",
            "1",
            All,
            Yes("genus0-four-odd-surjective"),
        ),
        r(
            0,
            &[3, 1, 1, -1, -4, -4],
            "0,0",
            "",
            All,
            Yes("genus0-four-odd-surjective"),
        ),
        // Two odd poles.
        r(
            0,
            &[2, -3, -3],
            "",
            "",
            All,
            Yes("genus0-two-odd-poles-surjective"),
        ),
        r(
            0,
            &[6, -3, -3, -4],
            "0",
            "",
            All,
            Yes("genus0-two-odd-poles-surjective"),
        ),
        // One odd pole and one odd zero.
        r(
            0,
            &[1, -5],
            "",
            "",
            All,
            Yes("genus0-one-odd-pole-surjective"),
        ),
        r(
            0,
            &[3, -3, -4],
            "0",
            "",
            All,
            No(Origin, "genus0-one-odd-pole-origin"),
        ),
        r(
            0,
            &[3, -3, -4],
            "1",
            "",
            All,
            Yes("genus0-one-odd-pole-origin"),
        ),
        r(
            0,
            &[3, 2, -3, -6],
            "0",
            "",
            All,
            Yes("genus0-one-odd-pole-surjective"),
        ),
        r(
            0,
            &[5, -3, -4, -2],
            "0",
            "1",
            All,
            Yes("genus0-one-odd-pole-origin"),
        ),
        // Two odd zeros, even and double poles.
        r(
            0,
            &[1, 3, -4, -2, -2],
            "0",
            "1,1",
            All,
            No(
                special("zero-and-equal-doubles"),
                "genus0-mixed-equal-doubles",
            ),
        ),
        r(
            0,
            &[1, 3, -4, -2, -2],
            "0",
            "1,2",
            All,
            Yes("genus0-mixed-surjective"),
        ),
        r(
            0,
            &[1, 3, -4, -2, -2],
            "1",
            "1,1",
            All,
            Yes("genus0-mixed-surjective"),
        ),
        r(
            0,
            &[3, 5, -4, -2, -2, -2, -2],
            "0",
            "1,-1,1,1",
            All,
            No(
                special("zero-and-equal-doubles"),
                "genus0-mixed-equal-doubles",
            ),
        ),
        r(
            0,
            &[3, 5, -4, -4, -2, -2],
            "0,0",
            "1,1",
            All,
            No(special("zeros-and-equal-pair"), "genus0-mixed-equal-pair"),
        ),
        r(
            0,
            &[3, 5, -4, -4, -2, -2],
            "0,1",
            "1,1",
            All,
            Yes("genus0-mixed-surjective"),
        ),
        r(
            0,
            &[3, 3, -4, -2, -2, -2],
            "1",
            "1,1,1",
            All,
            No(special("all-equal"), "genus0-mixed-all-equal"),
        ),
        r(
            0,
            &[3, 3, -4, -2, -2, -2],
            "1",
            "1,1,2",
            All,
            Yes("genus0-mixed-surjective"),
        ),
        r(
            0,
            &[1, 1, -4, -2],
            "i",
            "i",
            All,
            No(special("all-equal"), "genus0-mixed-all-equal"),
        ),
        r(
            0,
            &[3, 3, -4, -4, -2],
            "1,0",
            "1",
            All,
            No(special("one-equal-rest-zero"), "genus0-mixed-one-equal"),
        ),
        r(
            0,
            &[3, 3, -4, -4, -2],
            "0,-1",
            "1",
            All,
            No(special("one-equal-rest-zero"), "genus0-mixed-one-equal"),
        ),
        r(
            0,
            &[3, 3, -4, -4, -2],
            "1,1",
            "1",
            All,
            Yes("genus0-mixed-surjective"),
        ),
        // Two odd zeros, only even poles of order at most -4.
        r(
            0,
            &[1, 1, -6],
            "0",
            "",
            All,
            No(Origin, "genus0-even-poles-origin"),
        ),
        r(
            0,
            &[1, 1, -6],
            "1",
            "",
            All,
            Yes("genus0-even-poles-origin"),
        ),
        r(
            0,
            &[3, 3, -4, -6],
            "1,1",
            "",
            All,
            No(
                special("equal-special-pair"),
                "genus0-even-poles-special-pair",
            ),
        ),
        r(
            0,
            &[3, 3, -4, -6],
            "0,0",
            "",
            All,
            No(
                special("equal-special-pair"),
                "genus0-even-poles-special-pair",
            ),
        ),
        r(
            0,
            &[3, 3, -4, -6],
            "1,-1",
            "",
            All,
            No(
                special("equal-special-pair"),
                "genus0-even-poles-special-pair",
            ),
        ),
        r(
            0,
            &[3, 3, -4, -6],
            "1,2",
            "",
            All,
            Yes("genus0-even-poles-special-pair"),
        ),
        r(
            0,
            &[1, 3, -4, -4],
            "1,1",
            "",
            All,
            No(
                special("equal-special-pair"),
                "genus0-even-poles-special-pair",
            ),
        ),
        r(
            0,
            &[1, 3, -4, -4],
            "1,i",
            "",
            All,
            Yes("genus0-even-poles-special-pair"),
        ),
        r(
            0,
            &[3, 5, -4, -4, -4],
            "0,1,1",
            "",
            All,
            No(
                special("equal-special-pair"),
                "genus0-even-poles-special-pair",
            ),
        ),
        r(
            0,
            &[3, 5, -4, -4, -4],
            "1,1,1",
            "",
            All,
            Yes("genus0-even-poles-special-pair"),
        ),
        r(
            0,
            &[7, 5, -4, -4, -4, -4],
            "1,1,1,1",
            "",
            All,
            Yes("genus0-even-poles-special-pair"),
        ),
        r(
            0,
            &[1, 1, 2, -4, -4],
            "0,0",
            "",
            All,
            No(Origin, "genus0-even-poles-origin"),
        ),
        r(
            0,
            &[1, 1, 2, -4, -4],
            "1,1",
            "",
            All,
            Yes("genus0-even-poles-origin"),
        ),
        r(
            0,
            &[1, 1, 4, -4, -6],
            "0,0",
            "",
            All,
            Yes("genus0-even-poles-surjective"),
        ),
        // Two odd zeros, only double poles.
        r(
            0,
            &[1, 1, -2, -2, -2],
            "",
            "1,1,2",
            All,
            No(Triangular, "genus0-double-poles-triangular"),
        ),
        r(
            0,
            &[1, 1, -2, -2, -2],
            "",
            "1,2,4",
            All,
            Yes("genus0-double-poles-surjective"),
        ),
        r(
            0,
            &[1, 1, -2, -2, -2],
            "",
            "1,1,1",
            All,
            Yes("genus0-double-poles-surjective"),
        ),
        r(
            0,
            &[3, 3, -2, -2, -2, -2, -2],
            "",
            "1,2,3,3,3",
            All,
            No(Triangular, "genus0-double-poles-triangular"),
        ),
        r(
            0,
            &[-1, 1, -2, -2],
            "",
            "1,1",
            All,
            No(Crosse, "genus0-double-poles-crosse"),
        ),
        r(
            0,
            &[-1, 1, -2, -2],
            "",
            "1,2",
            All,
            Yes("genus0-double-poles-surjective"),
        ),
        r(
            0,
            &[1, 3, -2, -2, -2, -2],
            "",
            "1,1,2,2",
            All,
            No(Crosse, "genus0-double-poles-crosse"),
        ),
        r(
            0,
            &[1, 3, -2, -2, -2, -2],
            "",
            "i,i,i,i",
            All,
            No(Crosse, "genus0-double-poles-crosse"),
        ),
        r(
            0,
            &[1, 3, -2, -2, -2, -2],
            "",
            "1,2,3,4",
            All,
            Yes("genus0-double-poles-surjective"),
        ),
        r(
            0,
            &[-1, 3, -2, -2, -2],
            "",
            "1,1,1",
            All,
            No(ArithmeticOddSum, "genus0-double-poles-arithmetic-odd"),
        ),
        r(
            0,
            &[1, 5, -2, -2, -2, -2, -2],
            "",
            "1,1,1,1,2",
            All,
            No(ArithmeticEvenSum, "genus0-double-poles-arithmetic-even"),
        ),
        r(
            0,
            &[1, 5, -2, -2, -2, -2, -2],
            "",
            "1,1,1,1,i",
            All,
            Yes("genus0-double-poles-surjective"),
        ),
        r(0, &[-1, -1, -2], "", "1", All, Yes("genus0-degenerate")),
        // Errors.
        r(
            0,
            &[2, -2, -2, -2],
            "",
            "1,1,1",
            All,
            Error(OracleError::NonPrimitiveStratum),
        ),
        r(2, &[4], "", "", All, Error(OracleError::EmptyStratum)),
        r(1, &[1, -1], "", "", All, Error(OracleError::EmptyStratum)),
    ]
}

type Outcome = Result<String, String>;

fn same_error(a: &OracleError, b: &OracleError) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

/// Criterion 1: the classification table.
fn classification_regression() -> Outcome {
    let rows = table();
    let start = Instant::now();
    let mut failures = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let sig = StratumSignature::from_orders(row.genus, row.orders);
        let config = RootedResidueConfig::new(gs(row.even), gs(row.double));
        let got = decide(&sig, &config, row.component);
        let ok = match (&row.expect, &got) {
            (Expect::Yes(cite), Ok(v)) => {
                v.status != Status::NotRealizable && v.obstruction.is_none() && v.citation == *cite
            }
            (Expect::No(obs, cite), Ok(v)) => {
                v.status == Status::NotRealizable
                    && v.obstruction.as_ref() == Some(obs)
                    && v.citation == *cite
            }
            (Expect::Error(e), Err(f)) => same_error(e, f),
            _ => false,
        };
        if !ok {
            failures.push(format!(
                "row {i} {sig}: expected {:?}, got {got:?}",
                row.expect
            ));
        }
    }
    let elapsed = start.elapsed();
    if rows.len() < 50 {
        return Err(format!("only {} rows", rows.len()));
    }
    if !failures.is_empty() {
        return Err(failures.join("; "));
    }
    if elapsed > TABLE_LIMIT {
        return Err(format!("took {elapsed:?}, limit {TABLE_LIMIT:?}"));
    }
    Ok(format!("{} rows agree in {elapsed:.2?}", rows.len()))
}

/// Every verified surface of the suite, for the degree identity.
struct Collected(Vec<(String, LocalInvariants)>);

/// Criterion 2: catalog round trip.
fn witness_round_trip(all: &mut Collected) -> Outcome {
    let cases = catalog();
    if cases.len() < 30 {
        return Err(format!("only {} catalog cases", cases.len()));
    }
    let mut slowest = Duration::ZERO;
    for c in &cases {
        let start = Instant::now();
        let w = construct(&c.signature, &c.config, c.component)
            .map_err(|e| format!("{}: {e}", c.name))?;
        let inv = verify(&w.surface).map_err(|e| format!("{}: {e}", c.name))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let found = quadstrata::constructors::Claim::of(&inv);
        if found != w.claim {
            return Err(format!(
                "{}: claimed {:?}, verified {:?}",
                c.name, w.claim, found
            ));
        }
        if elapsed > WITNESS_LIMIT {
            return Err(format!("{}: took {elapsed:?}", c.name));
        }
        all.0.push((c.name.clone(), inv));
    }
    Ok(format!(
        "{} witnesses verified exactly, slowest {slowest:.2?}",
        cases.len()
    ))
}

fn sig_doubles(a1: i64, a2: i64, s: i64) -> StratumSignature {
    StratumSignature::new(0, &[a1, a2], &[], &[], s)
}

/// Criterion 3: triples on `(1, 1; (−2)³)`.
fn triple_check(all: &mut Collected) -> Outcome {
    let sig = sig_doubles(1, 1, 3);
    let start = Instant::now();
    let mut count = 0;
    for r1 in 1..=TRIPLE_MAX_ROOT {
        for r2 in r1..=TRIPLE_MAX_ROOT {
            for r3 in r2..=TRIPLE_MAX_ROOT {
                if r1.gcd(&r2).gcd(&r3) != 1 {
                    continue;
                }
                count += 1;
                let roots = [r1, r2, r3];
                let ws = search_witnesses(&sig, &roots, BUDGET).map_err(|e| e.to_string())?;
                if ws.is_empty() != (r3 == r1 + r2) {
                    return Err(format!("roots {roots:?}: {} witnesses", ws.len()));
                }
                if let Some(w) = ws.first() {
                    let inv = w.witness.verify().map_err(|e| e.to_string())?;
                    all.0.push((format!("triple {roots:?}"), inv));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > TRIPLE_LIMIT {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{count} coprime triples, witness iff r3 != r1 + r2, in {elapsed:.2?}"
    ))
}

fn tuples(len: usize, min: i64, max_sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let used: i64 = cur.iter().sum();
    let left = (len - cur.len()) as i64;
    let mut x = min;
    while used + x * left <= max_sum {
        cur.push(x);
        tuples(len, x, max_sum, cur, out);
        cur.pop();
        x += 1;
    }
}

/// One configuration of the sweep.
struct SweepPoint {
    sig: StratumSignature,
    roots: Vec<i64>,
}

fn sweep() -> Vec<SweepPoint> {
    let mut out = Vec::new();
    for s in 1..=SWEEP_MAX_POLES {
        let total = 2 * s - 4;
        for a1 in (-1..=total + 1).step_by(2) {
            let a2 = total - a1;
            if a2 < a1 {
                continue;
            }
            let mut rs = Vec::new();
            tuples(s as usize, 1, SWEEP_MAX_SUM, &mut Vec::new(), &mut rs);
            for roots in rs {
                out.push(SweepPoint {
                    sig: sig_doubles(a1, a2, s),
                    roots,
                });
            }
        }
    }
    out
}

/// Criteria 4 and 5 share the sweep: half-integrality of every witness
/// (with the root-sum bound) and agreement with the oracle.
fn sweep_checks(all: &mut Collected) -> (Outcome, Outcome) {
    let points = sweep();
    let mut witnesses = 0usize;
    let mut violations = Vec::new();
    let mut disagreements = Vec::new();
    for p in &points {
        let ws = match search_witnesses(&p.sig, &p.roots, BUDGET) {
            Ok(ws) => ws,
            Err(e) => {
                let msg = format!("{} {:?}: {e}", p.sig, p.roots);
                return (Err(msg.clone()), Err(msg));
            }
        };
        for w in &ws {
            witnesses += 1;
            if let Err(e) = check_half_integer_lengths(&p.roots, &w.normal_form.lengths) {
                violations.push(e.to_string());
            }
            if let Err(e) = check_sum_bound(&p.sig, &p.roots) {
                violations.push(e.to_string());
            }
        }
        if let Some(w) = ws.first() {
            match w.witness.verify() {
                Ok(inv) => all.0.push((format!("sweep {} {:?}", p.sig, p.roots), inv)),
                Err(e) => violations.push(e.to_string()),
            }
        }
        let config = RootedResidueConfig::doubles(&p.roots);
        let verdict = decide(&p.sig, &config, ComponentSelector::WholeStratum);
        let realizable = matches!(&verdict, Ok(v) if v.status == Status::Realizable);
        if realizable == ws.is_empty() {
            disagreements.push(format!(
                "{} {:?}: decide {verdict:?}, {} witnesses",
                p.sig,
                p.roots,
                ws.len()
            ));
        }
    }
    let c4 = if violations.is_empty() {
        Ok(format!(
            "{witnesses} witnesses over {} configurations, 0 violations",
            points.len()
        ))
    } else {
        Err(format!(
            "{} violations: {}",
            violations.len(),
            violations.join("; ")
        ))
    };
    let c5 = if disagreements.is_empty() {
        Ok(format!("{} configurations, 0 disagreements", points.len()))
    } else {
        Err(format!(
            "{} disagreements: {}",
            disagreements.len(),
            disagreements.join("; ")
        ))
    };
    (c4, c5)
}

/// Two polar parts with a single segment `v`, glued by translation:
/// a genus-zero surface whose singularities all have even order.
fn square_surface(
    b1: i64,
    t1: i64,
    b2: i64,
    t2: i64,
    v: &GaussianRational,
) -> Option<LocalInvariants> {
    let mut b = SurfaceBuilder::new();
    let upper = if b1 == 2 {
        make_polar_part_order2(std::slice::from_ref(v)).ok()?
    } else {
        make_polar_part_even(b1, t1, std::slice::from_ref(v), &[]).ok()?
    };
    let p1 = b.add_polar_part(upper, "p1").ok()?;
    let p2 = b
        .add_polar_part(
            make_polar_part_even(b2, t2, &[], std::slice::from_ref(v)).ok()?,
            "p2",
        )
        .ok()?;
    if b.glue_auto(p1.upper[0], p2.lower[0]).ok()? != Twist::Translation {
        return None;
    }
    verify(&b.finish().ok()?).ok()
}

/// Criterion 6: squares are flagged, odd-containing witnesses are not.
fn primitivity_detection(all: &mut Collected) -> Outcome {
    let mut squares = Vec::new();
    let vectors = [g("1"), g("1+i"), g("2-i")];
    'outer: for b1 in [2, 4, 6, 8] {
        for b2 in [4, 6, 8] {
            for t1 in 1..b1 / 2 {
                for t2 in 1..b2 / 2 {
                    for v in &vectors {
                        if let Some(inv) = square_surface(b1, t1.max(1), b2, t2, v) {
                            squares.push(((b1, t1, b2, t2), inv));
                            if squares.len() == SQUARE_SURFACES {
                                break 'outer;
                            }
                            break;
                        }
                    }
                }
            }
        }
    }
    if squares.len() < SQUARE_SURFACES {
        return Err(format!("only {} all-even surfaces built", squares.len()));
    }
    for (params, inv) in &squares {
        let all_even = inv
            .zero_orders
            .iter()
            .chain(inv.pole_orders.iter())
            .all(|a| a % 2 == 0);
        if inv.genus != 0 || !all_even {
            return Err(format!(
                "{params:?}: not a genus-zero all-even surface: {inv:?}"
            ));
        }
        if inv.primitive {
            return Err(format!("{params:?}: square flagged primitive"));
        }
        all.0.push((format!("square {params:?}"), inv.clone()));
    }
    let mut odd_cases = 0;
    for c in catalog() {
        if c.signature.orders().iter().any(|a| a % 2 != 0) {
            let w = construct(&c.signature, &c.config, c.component).map_err(|e| e.to_string())?;
            let inv = verify(&w.surface).map_err(|e| e.to_string())?;
            if !inv.primitive {
                return Err(format!("{}: flagged non-primitive", c.name));
            }
            odd_cases += 1;
        }
    }
    Ok(format!(
        "{} squares non-primitive, {odd_cases} odd-order witnesses primitive",
        squares.len()
    ))
}

fn holomorphic_signatures(genus: i64) -> Vec<StratumSignature> {
    // Positive orders as a non-increasing list with sum at most the bound,
    // completed by simple poles.
    fn parts(left: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for x in (1..=max.min(left)).rev() {
            cur.push(x);
            parts(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut ps = Vec::new();
    parts(
        HOLO_MAX_POSITIVE_SUM,
        HOLO_MAX_POSITIVE_SUM,
        &mut Vec::new(),
        &mut ps,
    );
    let target = 4 * genus - 4;
    ps.into_iter()
        .filter_map(|mut mu| {
            let simple = mu.iter().sum::<i64>() - target;
            if simple < 0 {
                return None;
            }
            mu.extend(std::iter::repeat_n(-1, simple as usize));
            Some(StratumSignature::from_orders(genus, &mu))
        })
        .collect()
}

/// Criterion 7: exactly four empty holomorphic strata.
fn empty_strata() -> Outcome {
    let expected = [
        StratumSignature::from_orders(1, &[]),
        StratumSignature::from_orders(1, &[1, -1]),
        StratumSignature::from_orders(2, &[4]),
        StratumSignature::from_orders(2, &[3, 1]),
    ];
    let mut empty = Vec::new();
    let mut total = 0;
    for genus in 0..=HOLO_MAX_GENUS {
        for sig in holomorphic_signatures(genus) {
            if validate_signature(&sig)
                .map(|v| v.forces_square)
                .unwrap_or(true)
            {
                continue;
            }
            total += 1;
            if !stratum_nonempty_holomorphic(&sig).map_err(|e| format!("{sig}: {e}"))? {
                empty.push(sig);
            }
        }
    }
    let mut got: Vec<String> = empty.iter().map(|s| s.canonical().to_string()).collect();
    let mut want: Vec<String> = expected.iter().map(|s| s.canonical().to_string()).collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(format!("empty strata {got:?}, expected {want:?}"));
    }
    Ok(format!(
        "{total} primitive holomorphic signatures, empty exactly {got:?}"
    ))
}

/// Criterion 8: degree identity on every verified surface.
fn degree_identity(all: &Collected) -> Outcome {
    for (name, inv) in &all.0 {
        let total: i64 = inv.zero_orders.iter().sum::<i64>() + inv.pole_orders.iter().sum::<i64>();
        if total - (4 * inv.genus - 4) != EXACT_TOLERANCE {
            return Err(format!(
                "{name}: orders sum to {total} in genus {}",
                inv.genus
            ));
        }
    }
    Ok(format!(
        "{} verified surfaces satisfy the identity",
        all.0.len()
    ))
}

/// Criterion 9: doubling every vector.
fn scaling_property() -> Outcome {
    let two = g("2");
    let four = g("4");
    let cases = catalog();
    for c in &cases {
        let w = construct(&c.signature, &c.config, c.component).map_err(|e| e.to_string())?;
        let base = verify(&w.surface).map_err(|e| e.to_string())?;
        let doubled = verify(&w.surface.scaled(&two)).map_err(|e| format!("{}: {e}", c.name))?;
        let same = base.genus == doubled.genus
            && base.zero_orders == doubled.zero_orders
            && base.pole_orders == doubled.pole_orders
            && base.primitive == doubled.primitive;
        if !same {
            return Err(format!("{}: invariants changed", c.name));
        }
        for (p, q) in base.poles.iter().zip(doubled.poles.iter()) {
            let expected = p.residue.as_ref().map(|r| r * &four);
            if p.label != q.label || expected != q.residue {
                return Err(format!(
                    "{}: residue of {} is {:?}, expected {:?}",
                    c.name, p.label, q.residue, expected
                ));
            }
        }
    }
    Ok(format!(
        "{} witnesses: invariants fixed, residues multiplied by 4",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let mut all = Collected(Vec::new());
    let c1 = classification_regression();
    let c2 = witness_round_trip(&mut all);
    let c3 = triple_check(&mut all);
    let (c4, c5) = sweep_checks(&mut all);
    let c6 = primitivity_detection(&mut all);
    let c7 = empty_strata();
    let c8 = degree_identity(&all);
    let c9 = scaling_property();
    let results = [
        ("classification regression", c1),
        ("witness round-trip", c2),
        ("exhaustive triple check", c3),
        ("half-integer lengths", c4),
        ("oracle-search agreement", c5),
        ("primitivity detection", c6),
        ("empty holomorphic strata", c7),
        ("degree identity", c8),
        ("scaling by two", c9),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
