//! Machine-readable result rows and their deterministic serialization.
//!
//! Numbers are printed with 17 significant digits (`{:.16e}`), enough for
//! exact f64 round-trips, and field order is fixed, so identical inputs
//! produce byte-identical output regardless of evaluation parallelism.

use conedet::determinant::DetResult;

#[derive(Debug, Clone)]
pub struct ResultRecord {
    pub beta: [f64; 3],
    pub area: f64,
    pub curvature: f64,
    pub geometry: &'static str,
    pub log_det: Option<f64>,
    pub zeta0: Option<f64>,
    pub action: Option<f64>,
    pub log_h: Option<f64>,
    /// C(βⱼ) per singularity.
    pub c_terms: [Option<f64>; 3],
    pub path: &'static str,
    /// |re-summed breakdown − log_det|.
    pub resum_residual: Option<f64>,
    /// |closed − quadrature| when both paths were evaluated.
    pub dual_residual: Option<f64>,
    pub error: Option<String>,
}

impl ResultRecord {
    pub fn from_result(beta: [f64; 3], area: f64, r: &DetResult) -> ResultRecord {
        let c = |name: &str| {
            r.terms
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| -v)
        };
        ResultRecord {
            beta,
            area,
            curvature: 2.0 * std::f64::consts::PI * (beta.iter().sum::<f64>() + 2.0) / area,
            geometry: r.geometry.as_str(),
            log_det: Some(r.log_det),
            zeta0: Some(r.zeta0),
            action: Some(r.action.action),
            log_h: Some(r.action.log_h),
            c_terms: [c("c_term_1"), c("c_term_2"), c("c_term_3")],
            path: r.path.as_str(),
            resum_residual: Some((r.resummed() - r.log_det).abs()),
            dual_residual: None,
            error: None,
        }
    }

    pub fn failed(beta: [f64; 3], area: f64, message: String) -> ResultRecord {
        ResultRecord {
            beta,
            area,
            curvature: 2.0 * std::f64::consts::PI * (beta.iter().sum::<f64>() + 2.0) / area,
            geometry: conedet::GeometryClass::from_degree(beta.iter().sum()).as_str(),
            log_det: None,
            zeta0: None,
            action: None,
            log_h: None,
            c_terms: [None, None, None],
            path: "none",
            resum_residual: None,
            dual_residual: None,
            error: Some(message),
        }
    }
}

/// 17 significant digits; round-trip exact for f64.
pub fn g17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "null".to_string(), g17)
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn record_json(r: &ResultRecord) -> String {
    format!(
        "{{\"beta\":[{},{},{}],\"area\":{},\"curvature\":{},\"geometry\":\"{}\",\
\"log_det\":{},\"zeta0\":{},\"action\":{},\"log_h\":{},\
\"c_terms\":[{},{},{}],\"path\":\"{}\",\"resum_residual\":{},\"dual_residual\":{},\"error\":{}}}",
        g17(r.beta[0]),
        g17(r.beta[1]),
        g17(r.beta[2]),
        g17(r.area),
        g17(r.curvature),
        r.geometry,
        opt(r.log_det),
        opt(r.zeta0),
        opt(r.action),
        opt(r.log_h),
        opt(r.c_terms[0]),
        opt(r.c_terms[1]),
        opt(r.c_terms[2]),
        r.path,
        opt(r.resum_residual),
        opt(r.dual_residual),
        r.error
            .as_deref()
            .map_or_else(|| "null".to_string(), |e| format!("\"{}\"", json_escape(e))),
    )
}

pub const CSV_HEADER: &str = "beta1,beta2,beta3,area,curvature,geometry,log_det,zeta0,action,log_h,c_term_1,c_term_2,c_term_3,path,resum_residual,dual_residual,error";

pub fn record_csv(r: &ResultRecord) -> String {
    let opt_csv = |x: Option<f64>| x.map_or_else(String::new, g17);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        g17(r.beta[0]),
        g17(r.beta[1]),
        g17(r.beta[2]),
        g17(r.area),
        g17(r.curvature),
        r.geometry,
        opt_csv(r.log_det),
        opt_csv(r.zeta0),
        opt_csv(r.action),
        opt_csv(r.log_h),
        opt_csv(r.c_terms[0]),
        opt_csv(r.c_terms[1]),
        opt_csv(r.c_terms[2]),
        r.path,
        opt_csv(r.resum_residual),
        opt_csv(r.dual_residual),
        r.error.as_deref().unwrap_or("").replace(',', ";"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_round_trips() {
        for &x in &[std::f64::consts::PI, -0.1654211437004509, 1e-300, 12345.678] {
            let s = g17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn json_has_stable_shape() {
        let r = ResultRecord::failed([-0.5, -0.5, -0.5], 1.0, "order must lie in (-1,0)".into());
        let j = record_json(&r);
        assert!(j.starts_with("{\"beta\":["));
        assert!(j.contains("\"error\":\"order must lie in (-1,0)\""));
        assert!(j.contains("\"log_det\":null"));
    }
}
