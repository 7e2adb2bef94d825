use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use super::{render_table, to_f64, Check, ExperimentReport, Params, TrialRecord};
use crate::algebra::{octopus_x, octopus_y, Rational};
use crate::reptheory::{character_table, dimension, irrep};
use crate::spectral::lambda_star;
use crate::symgroup::{partitions_of, Partition};

const MATRIX_TOL: f64 = 1e-9;

// (α, f_α, χ^α(3,1), χ^α(2,2), X^α) as printed.
const REFERENCE_TABLE1: [(&str, i64, i64, i64, i64); 3] = [
    ("4", 1, 1, 1, 2),
    ("3,1", 3, 0, -1, 2),
    ("2,2", 2, -1, 2, -10),
];

// (α, β, f_α, χ^α(3,1,1), χ^α(2,2,1), X^β, F_{αβ}, Y^α) as printed.
#[allow(clippy::type_complexity)]
const REFERENCE_TABLE2: [(&str, &str, i64, i64, i64, i64, i64, i64); 7] = [
    ("5", "4", 1, 1, 1, 2, 3, 3),
    ("4,1", "4", 4, 1, 0, 2, 3, 3),
    ("4,1", "3,1", 4, 1, 0, 2, 3, 3),
    ("3,2", "3,1", 5, -1, 1, 2, -9, 3),
    ("3,2", "2,2", 5, -1, 1, -10, 3, 3),
    ("3,1,1", "3,1", 6, 0, -2, 2, 3, 3),
    ("3,1,1", "2,1,1", 6, 0, -2, 2, 3, 3),
];

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn int(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// `X^α = f_α⁻¹ [8 χ^α(3,1) − 6 χ^α(2,2)]` for `α ⊢ 4`.
fn x_value(alpha: &Partition) -> Rational {
    let ct = character_table(4);
    let f = dimension(alpha).to_i64().unwrap();
    let v = 8 * ct.value(alpha, &p("3,1")) - 6 * ct.value(alpha, &p("2,2"));
    Rational::new(v.into(), f.into())
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub alpha: Partition,
    pub f: i64,
    pub chi_31: i64,
    pub chi_22: i64,
    pub x: String,
    /// `λ*` of the explicit irrep matrix of `X̂`.
    pub lambda_star: f64,
}

/// Table of `X^α` over `α ⊢ 4`, computed from characters and from irrep matrices.
pub fn table1() -> ExperimentReport {
    let ct = character_table(4);
    let xhat = octopus_x([1, 2, 3, 4], 4).expect("valid indices");
    let total = xhat.trivial_eval();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (k, alpha) in partitions_of(4).iter().enumerate() {
        let f = dimension(alpha).to_i64().unwrap();
        let chi_31 = ct.value(alpha, &p("3,1"));
        let chi_22 = ct.value(alpha, &p("2,2"));
        let x = x_value(alpha);
        let lam = lambda_star(&irrep(alpha).evaluate(&xhat).expect("degree 4")).expect("symmetric");
        let mut checks = vec![
            Check::close("lambda_star_matches_formula", lam, to_f64(&x), MATRIX_TOL),
            Check::flag("x_at_most_trivial_value", x <= total),
        ];
        let reference = REFERENCE_TABLE1
            .iter()
            .find(|r| p(r.0) == *alpha || p(r.0) == alpha.conjugate());
        if let Some(&(_, pf, p31, p22, px)) = reference {
            checks.push(Check::exact("f", &f, &pf));
            checks.push(Check::exact("chi(3,1)", &chi_31, &p31));
            checks.push(Check::exact("chi(2,2)", &chi_22, &p22));
            checks.push(Check::exact("X", &int(&x), &Some(px)));
        }
        let slack = to_f64(&(&total - &x));
        records.push(TrialRecord::new(k, slack, checks, json!({ "alpha": alpha })));
        rows.push(Table1Row {
            alpha: alpha.clone(),
            f,
            chi_31,
            chi_22,
            x: x.to_string(),
            lambda_star: lam,
        });
    }
    records.push(TrialRecord::new(
        rows.len(),
        0.0,
        vec![Check::exact("trivial_value", &total.to_string(), &"2".to_string())],
        json!({ "element": "X" }),
    ));

    let shown: Vec<Vec<String>> = REFERENCE_TABLE1
        .iter()
        .map(|r| {
            let row = rows.iter().find(|x| x.alpha == p(r.0)).unwrap();
            vec![
                row.alpha.to_string(),
                row.f.to_string(),
                row.chi_31.to_string(),
                row.chi_22.to_string(),
                row.x.clone(),
            ]
        })
        .collect();
    let mut text = String::from("Table 1: X^a = f_a^-1 [8 chi^a(3,1) - 6 chi^a(2,2)],  I(X) = 2\n");
    text.push_str(&render_table(&["a", "f_a", "chi^a(3,1)", "chi^a(2,2)", "X^a"], &shown));
    text.push_str("(2,1,1) and (1,1,1,1) are conjugate to (3,1) and (4); their values coincide.\n");

    ExperimentReport::new(
        "table1",
        Params::new(Some(4), 0, None, Some(MATRIX_TOL)),
        records,
        json!({ "rows": rows, "trivial_value": total.to_string() }),
        text,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Table2Row {
    pub alpha: Partition,
    pub beta: Partition,
    pub f: i64,
    pub chi_311: i64,
    pub chi_221: i64,
    pub x_beta: String,
    pub f_ab: String,
    pub y: String,
    pub lambda_star: f64,
}

/// Table of `F_{αβ}` and `Y^α = max_{β∈α⁻} F_{αβ}` over `α ⊢ 5`.
pub fn table2() -> ExperimentReport {
    let ct = character_table(5);
    let yhat = octopus_y([1, 2, 3, 4], 5, 5).expect("valid indices");
    let total = yhat.trivial_eval();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for alpha in partitions_of(5) {
        let f = dimension(&alpha).to_i64().unwrap();
        let chi_311 = ct.value(&alpha, &p("3,1,1"));
        let chi_221 = ct.value(&alpha, &p("2,2,1"));
        let head = Rational::new((20 * chi_311 - 15 * chi_221).into(), f.into());
        let mut betas = alpha.branch_down();
        betas.sort_by(|a, b| b.cmp(a));
        let fs: Vec<(Partition, Rational, Rational)> = betas
            .into_iter()
            .map(|b| {
                let xb = x_value(&b);
                let fab = &head - &xb;
                (b, xb, fab)
            })
            .collect();
        let y = fs.iter().map(|t| t.2.clone()).max().expect("nonempty branching");
        let lam = lambda_star(&irrep(&alpha).evaluate(&yhat).expect("degree 5")).expect("symmetric");
        for (beta, xb, fab) in fs {
            let mut checks = vec![
                Check::close("lambda_star_matches_Y", lam, to_f64(&y), MATRIX_TOL),
                Check::flag("y_at_most_trivial_value", y <= total),
            ];
            let reference = REFERENCE_TABLE2.iter().find(|r| p(r.0) == alpha && p(r.1) == beta);
            let listed = reference.is_some();
            if let Some(&(_, _, pf, p311, p221, pxb, pfab, py)) = reference {
                checks.push(Check::exact("f", &f, &pf));
                checks.push(Check::exact("chi(3,1,1)", &chi_311, &p311));
                checks.push(Check::exact("chi(2,2,1)", &chi_221, &p221));
                checks.push(Check::exact("X^beta", &int(&xb), &Some(pxb)));
                checks.push(Check::exact("F", &int(&fab), &Some(pfab)));
                checks.push(Check::exact("Y", &int(&y), &Some(py)));
            }
            let k = records.len();
            records.push(TrialRecord::new(
                k,
                to_f64(&(&total - &y)),
                checks,
                json!({ "alpha": alpha, "beta": beta, "in_table": listed }),
            ));
            rows.push(Table2Row {
                alpha: alpha.clone(),
                beta,
                f,
                chi_311,
                chi_221,
                x_beta: xb.to_string(),
                f_ab: fab.to_string(),
                y: y.to_string(),
                lambda_star: lam,
            });
        }
    }
    let listed = REFERENCE_TABLE2
        .iter()
        .filter(|r| rows.iter().any(|x| x.alpha == p(r.0) && x.beta == p(r.1)))
        .count();
    let k = records.len();
    records.push(TrialRecord::new(
        k,
        0.0,
        vec![
            Check::exact("trivial_value", &total.to_string(), &"3".to_string()),
            Check::exact("rows_reproduced", &listed, &REFERENCE_TABLE2.len()),
        ],
        json!({ "element": "Y" }),
    ));

    let shown: Vec<Vec<String>> = REFERENCE_TABLE2
        .iter()
        .filter_map(|r| rows.iter().find(|x| x.alpha == p(r.0) && x.beta == p(r.1)))
        .map(|row| {
            vec![
                row.alpha.to_string(),
                row.beta.to_string(),
                row.f.to_string(),
                row.chi_311.to_string(),
                row.chi_221.to_string(),
                row.x_beta.clone(),
                row.f_ab.clone(),
                row.y.clone(),
            ]
        })
        .collect();
    let mut text = String::from(
        "Table 2: F_ab = f_a^-1 [20 chi^a(3,1,1) - 15 chi^a(2,2,1)] - X^b,  Y^a = max_b F_ab,  I(Y) = 3\n",
    );
    text.push_str(&render_table(
        &["a", "b", "f_a", "chi^a(3,1,1)", "chi^a(2,2,1)", "X^b", "F_ab", "Y^a"],
        &shown,
    ));
    text.push_str("Rows for (2,2,1), (2,1,1,1) and (1,1,1,1,1) are checked but not listed.\n");

    ExperimentReport::new(
        "table2",
        Params::new(Some(5), 0, None, Some(MATRIX_TOL)),
        records,
        json!({ "rows": rows, "trivial_value": total.to_string() }),
        text,
    )
}
