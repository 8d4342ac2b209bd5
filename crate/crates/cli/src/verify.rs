//! Oracle-equivalence suites behind `dab verify`.

use dab_core::catalan::{catalan, dyck_oracle, partial_convolution, BigCount};
use dab_core::enumerate::{count_b, count_matrix, Recurrence};
use dab_core::perm::brute_count_matrix;
use dab_core::sample::uniformity_test;
use dab_core::{CountMatrix, Mode};

pub const VERIFY_MAX_M: usize = 6;

const CHI_SQUARE_DRAWS: usize = 50_000;
const CHI_SQUARE_LEVEL: f64 = 1e-3;

/// The first case a suite got wrong.
#[derive(Debug)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub got: String,
}

pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<Failure>,
}

fn cell_failure(
    m: usize,
    i: usize,
    j: usize,
    expected: impl ToString,
    got: impl ToString,
) -> Failure {
    Failure {
        case: format!("m={m} i={i} j={j}"),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn routes_agree(brute: &[CountMatrix]) -> SuiteReport {
    let mut cases = 0;
    for (k, oracle) in brute.iter().enumerate() {
        let m = k + 1;
        let mut rec = Recurrence::new(m);
        for i in 1..=2 * m {
            for j in 1..=2 * m {
                let want = oracle.exact_entry(i, j).expect("brute force is exact");
                let (mi, ii, ji) = (m as i64, i as i64, j as i64);
                let formula = count_b(mi, ii, ji).expect("cell in range");
                let recurrence = rec.eval(mi, ii, ji);
                cases += 1;
                for got in [formula, recurrence] {
                    if got != want {
                        return SuiteReport {
                            name: "brute = formula = recurrence",
                            cases,
                            failure: Some(cell_failure(m, i, j, want, got)),
                        };
                    }
                }
            }
        }
    }
    SuiteReport {
        name: "brute = formula = recurrence",
        cases,
        failure: None,
    }
}

fn symmetry(brute: &[CountMatrix], matrices: &[CountMatrix]) -> SuiteReport {
    let name = "matrix symmetry";
    let mut cases = 0;
    for (k, (mat, oracle)) in matrices.iter().zip(brute).enumerate() {
        let m = k + 1;
        let n = 2 * m;
        for i in 1..=n {
            for j in 1..=n {
                cases += 1;
                let x = mat.exact_entry(i, j).expect("exact");
                if x != oracle.exact_entry(i, j).expect("exact") {
                    let want = oracle.exact_entry(i, j).expect("exact");
                    return SuiteReport {
                        name,
                        cases,
                        failure: Some(cell_failure(m, i, j, want, x)),
                    };
                }
                for (p, q) in [(j, i), (n + 1 - j, n + 1 - i)] {
                    let y = mat.exact_entry(p, q).expect("exact");
                    if x != y {
                        return SuiteReport {
                            name,
                            cases,
                            failure: Some(cell_failure(m, p, q, &x, y)),
                        };
                    }
                }
            }
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

fn row_sums(matrices: &[CountMatrix]) -> SuiteReport {
    let name = "row and column sums";
    let mut cases = 0;
    for (k, mat) in matrices.iter().enumerate() {
        let m = k + 1;
        let total = catalan(m as i64).expect("m >= 1");
        for line in 1..=2 * m {
            cases += 2;
            let row = mat.exact_row_sum(line).expect("exact");
            let col = mat.exact_col_sum(line).expect("exact");
            for (what, got) in [("row", row), ("column", col)] {
                if got != total {
                    return SuiteReport {
                        name,
                        cases,
                        failure: Some(Failure {
                            case: format!("m={m} {what}={line}"),
                            expected: total.to_string(),
                            got: got.to_string(),
                        }),
                    };
                }
            }
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

fn partial_sums(max_m: usize) -> SuiteReport {
    let name = "p(r,s) identities";
    let mut cases = 0;
    let limit = 2 * max_m as i64;
    let c = |k: i64| catalan(k).expect("k >= -1");
    for r in 1..=limit {
        for s in 1..=limit {
            let p = partial_convolution(r, s).expect("r, s >= 1");
            let mut expanded = c(r + s - 2);
            for k in 1..s {
                expanded += c(k - 1) * partial_convolution(r, s - k).expect("r, s >= 1");
            }
            let mut checks: Vec<BigCount> = vec![expanded];
            if r + s - 1 <= limit {
                checks.push(dyck_oracle(r, s).expect("within oracle bound"));
            }
            for want in checks {
                cases += 1;
                if p != want {
                    return SuiteReport {
                        name,
                        cases,
                        failure: Some(Failure {
                            case: format!("r={r} s={s}"),
                            expected: want.to_string(),
                            got: p.to_string(),
                        }),
                    };
                }
            }
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

fn sampler(max_m: usize) -> SuiteReport {
    let name = "sampler chi-square";
    let mut cases = 0;
    for m in 2..=max_m {
        cases += 1;
        let test = uniformity_test(m, CHI_SQUARE_DRAWS, m as u64).expect("m within oracle bound");
        if test.p_value <= CHI_SQUARE_LEVEL {
            return SuiteReport {
                name,
                cases,
                failure: Some(Failure {
                    case: format!("m={m} draws={CHI_SQUARE_DRAWS} chi2={:.3}", test.statistic),
                    expected: format!("p > {CHI_SQUARE_LEVEL}"),
                    got: format!("p = {:.3e}", test.p_value),
                }),
            };
        }
    }
    SuiteReport {
        name,
        cases,
        failure: None,
    }
}

pub fn run(max_m: usize) -> Vec<SuiteReport> {
    let brute: Vec<CountMatrix> = (1..=max_m)
        .map(|m| brute_count_matrix(2 * m).expect("within oracle bound"))
        .collect();
    let matrices: Vec<CountMatrix> = (1..=max_m)
        .map(|m| count_matrix(m, Mode::Exact).expect("within exact bound"))
        .collect();
    vec![
        routes_agree(&brute),
        symmetry(&brute, &matrices),
        row_sums(&matrices),
        partial_sums(max_m),
        sampler(max_m),
    ]
}

pub fn render(reports: &[SuiteReport]) -> String {
    let mut s = format!("{:<30} {:>7}  result\n", "suite", "cases");
    for r in reports {
        let tag = if r.failure.is_some() { "FAIL" } else { "PASS" };
        s.push_str(&format!("{:<30} {:>7}  {tag}\n", r.name, r.cases));
    }
    for r in reports {
        if let Some(f) = &r.failure {
            s.push_str(&format!(
                "first failure in {}: {} expected={} got={}\n",
                r.name, f.case, f.expected, f.got
            ));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let reports = run(3);
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.failure.is_none(), "{}", r.name);
            assert!(r.cases > 0, "{}", r.name);
        }
        let table = render(&reports);
        assert!(table.starts_with("suite"));
        assert!(!table.contains("FAIL"));
    }

    #[test]
    fn failures_are_rendered() {
        let report = SuiteReport {
            name: "demo",
            cases: 4,
            failure: Some(cell_failure(2, 1, 3, 1, 2)),
        };
        let table = render(&[report]);
        assert!(table.contains("FAIL"));
        assert!(table.contains("first failure in demo: m=2 i=1 j=3 expected=1 got=2"));
    }
}
