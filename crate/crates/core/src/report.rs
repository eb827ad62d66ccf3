//! Plot-ready CSV and JSON renderings.
//!
//! Numbers carry 17 significant digits so they round-trip exactly. CSV uses
//! `,` separators, `\n` line endings and a header row; booleans are `0`/`1`
//! in CSV and `true`/`false` in JSON.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::entangling::{Analysis, EpResult};
use crate::invariants::GridRecord;
use crate::majorana::{Constellation, SphereGrid, SymmetricState};
use crate::models::SweepRecord;

pub const GRID_HEADER: &str = "c1,c2,c3,s1,s2,arg_tr_m,abs_g,ep,perfect";
pub const SPHERE_HEADER: &str = "theta,phi,entropy";
pub const SWEEP_HEADER: &str = "t,ep,abs_g,perfect,boundary";
pub const ANALYSIS_HEADER: &str = "c1,c2,c3,s1,s2,abs_g,ep,perfect,boundary,hull_margin";

/// `{:.16e}`; non-finite values become `nan`/`inf`/`-inf` and `-0` prints
/// as `0`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        format!("{:.16e}", 0.0)
    } else if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Like [`fmt_num`] but `null` for non-finite values.
pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        fmt_num(x)
    } else {
        "null".to_string()
    }
}

fn csv_bool(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn json_array(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| json_num(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn json_complex(z: Complex64) -> String {
    json_array(&[z.re, z.im])
}

fn csv_row(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

pub fn grid_csv(records: &[GridRecord]) -> String {
    let mut out = format!("{GRID_HEADER}\n");
    for r in records {
        out.push_str(&csv_row(&[
            fmt_num(r.c.c1),
            fmt_num(r.c.c2),
            fmt_num(r.c.c3),
            fmt_num(r.coords.s1),
            fmt_num(r.coords.s2),
            fmt_num(r.arg_tr_m),
            fmt_num(r.abs_g),
            fmt_num(r.ep),
            csv_bool(r.perfect).to_string(),
        ]));
    }
    out
}

pub fn grid_json(records: &[GridRecord]) -> String {
    let rows: Vec<String> = records
        .iter()
        .map(|r| {
            format!(
                "{{\"c\": {}, \"s\": {}, \"arg_tr_m\": {}, \"abs_g\": {}, \"ep\": {}, \"perfect\": {}}}",
                json_array(&r.c.to_array()),
                json_array(&[r.coords.s1, r.coords.s2]),
                json_num(r.arg_tr_m),
                json_num(r.abs_g),
                json_num(r.ep),
                r.perfect
            )
        })
        .collect();
    json_list(&rows)
}

fn json_list(rows: &[String]) -> String {
    if rows.is_empty() {
        return "[]\n".to_string();
    }
    format!("[\n  {}\n]\n", rows.join(",\n  "))
}

pub fn sphere_csv(grid: &SphereGrid) -> String {
    let mut out = format!("{SPHERE_HEADER}\n");
    for s in &grid.samples {
        out.push_str(&csv_row(&[fmt_num(s.theta), fmt_num(s.phi), fmt_num(s.entropy)]));
    }
    out
}

pub fn sphere_json(grid: &SphereGrid) -> String {
    let rows: Vec<String> = grid
        .samples
        .iter()
        .map(|s| {
            format!(
                "{{\"theta\": {}, \"phi\": {}, \"entropy\": {}}}",
                json_num(s.theta),
                json_num(s.phi),
                json_num(s.entropy)
            )
        })
        .collect();
    json_list(&rows)
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in records {
        out.push_str(&csv_row(&[
            fmt_num(r.t),
            fmt_num(r.ep),
            fmt_num(r.abs_g),
            csv_bool(r.perfect).to_string(),
            csv_bool(r.boundary).to_string(),
        ]));
    }
    out
}

pub fn sweep_json(records: &[SweepRecord]) -> String {
    let rows: Vec<String> = records
        .iter()
        .map(|r| {
            format!(
                "{{\"t\": {}, \"ep\": {}, \"abs_g\": {}, \"perfect\": {}, \"boundary\": {}}}",
                json_num(r.t),
                json_num(r.ep),
                json_num(r.abs_g),
                r.perfect,
                r.boundary
            )
        })
        .collect();
    json_list(&rows)
}

/// `{"c": [...], "s": [...], "abs_g", "ep", "perfect", "boundary", "hull_margin"}`
pub fn classification_json(a: &Analysis) -> String {
    format!(
        "{{\"c\": {}, \"s\": {}, \"abs_g\": {}, \"ep\": {}, \"perfect\": {}, \"boundary\": {}, \"hull_margin\": {}}}\n",
        json_array(&a.point.to_array()),
        json_array(&[a.coords.s1, a.coords.s2]),
        json_num(a.abs_g),
        json_num(a.ep),
        a.class.is_perfect,
        a.class.on_boundary,
        json_num(a.class.hull_margin)
    )
}

pub fn classification_csv(a: &Analysis) -> String {
    let mut out = format!("{ANALYSIS_HEADER}\n");
    out.push_str(&csv_row(&[
        fmt_num(a.point.c1),
        fmt_num(a.point.c2),
        fmt_num(a.point.c3),
        fmt_num(a.coords.s1),
        fmt_num(a.coords.s2),
        fmt_num(a.abs_g),
        fmt_num(a.ep),
        csv_bool(a.class.is_perfect).to_string(),
        csv_bool(a.class.on_boundary).to_string(),
        fmt_num(a.class.hull_margin),
    ]));
    out
}

fn ep_object(r: &EpResult) -> String {
    let method = match r.method {
        crate::entangling::EpMethod::ClosedForm => "closed_form",
        crate::entangling::EpMethod::MonteCarlo => "monte_carlo",
    };
    format!(
        "{{\"ep\": {}, \"method\": \"{method}\", \"n_samples\": {}, \"std_error\": {}}}",
        json_num(r.ep),
        r.n_samples,
        json_num(r.std_error)
    )
}

/// A single result, or `{"closed_form": {...}, "monte_carlo": {...}}`.
pub fn ep_json(closed: &EpResult, mc: Option<&EpResult>) -> String {
    match mc {
        None => format!("{}\n", ep_object(closed)),
        Some(mc) => format!(
            "{{\"closed_form\": {}, \"monte_carlo\": {}}}\n",
            ep_object(closed),
            ep_object(mc)
        ),
    }
}

pub fn ep_csv(closed: &EpResult, mc: Option<&EpResult>) -> String {
    let mut out = "method,ep,n_samples,std_error\n".to_string();
    for r in std::iter::once(closed).chain(mc) {
        let method = match r.method {
            crate::entangling::EpMethod::ClosedForm => "closed_form",
            crate::entangling::EpMethod::MonteCarlo => "monte_carlo",
        };
        out.push_str(&csv_row(&[
            method.to_string(),
            fmt_num(r.ep),
            r.n_samples.to_string(),
            fmt_num(r.std_error),
        ]));
    }
    out
}

pub fn fraction_json(analytic: f64, monte_carlo: f64, n: usize, seed: u64) -> String {
    format!(
        "{{\"analytic\": {}, \"monte_carlo\": {}, \"n_samples\": {n}, \"seed\": {seed}}}\n",
        json_num(analytic),
        json_num(monte_carlo)
    )
}

pub fn fraction_csv(analytic: f64, monte_carlo: f64, n: usize, seed: u64) -> String {
    format!(
        "analytic,monte_carlo,n_samples,seed\n{},{},{n},{seed}\n",
        fmt_num(analytic),
        fmt_num(monte_carlo)
    )
}

fn star_pairs(c: &Constellation) -> [[f64; 2]; 2] {
    c.stars.map(|s| [s.theta, s.phi])
}

/// Stars, amplitudes, concurrence and star distance of one state.
pub fn majorana_json(state: &SymmetricState, stars: &Constellation, concurrence: f64, distance: f64) -> String {
    let amps: Vec<String> = state.amplitudes().iter().map(|&z| json_complex(z)).collect();
    let st: Vec<String> = star_pairs(stars).iter().map(|p| json_array(p)).collect();
    format!(
        "{{\"state\": [{}], \"stars\": [{}], \"concurrence\": {}, \"chordal_distance\": {}}}\n",
        amps.join(", "),
        st.join(", "),
        json_num(concurrence),
        json_num(distance)
    )
}

pub fn majorana_csv(state: &SymmetricState, stars: &Constellation, concurrence: f64, distance: f64) -> String {
    let mut out = String::from(
        "a0_re,a0_im,a1_re,a1_im,a2_re,a2_im,theta1,phi1,theta2,phi2,concurrence,chordal_distance\n",
    );
    let mut fields = Vec::new();
    for z in state.amplitudes() {
        fields.push(fmt_num(z.re));
        fields.push(fmt_num(z.im));
    }
    for [t, p] in star_pairs(stars) {
        fields.push(fmt_num(t));
        fields.push(fmt_num(p));
    }
    fields.push(fmt_num(concurrence));
    fields.push(fmt_num(distance));
    let _ = write!(out, "{}", csv_row(&fields));
    out
}
