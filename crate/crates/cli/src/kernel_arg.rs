//! The kernel mini-language: `kind:key=val,key=val`.
//!
//! Kinds: `trunc-power` (theta, delta), `indicator` (theta), `cos`, `zero`,
//! `gaussian` (scale, cutoff), `tabulated` (nodes, values, interp) and
//! `expansion` (lambda, coeffs). List values are separated by `;`. Two
//! modifiers apply to any kind: `scale=θ` dilates the kernel to `g(t/θ)` and
//! `sinc=d` applies the sinc-power transform for `S^d`.

use std::collections::BTreeMap;

use spherepd::kernels::{scale_kernel, sinc_power_transform, Interpolation, KernelSpec};

fn number(key: &str, raw: &str) -> Result<f64, String> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| format!("{key}: expected a number, got {raw:?}"))
}

fn list(key: &str, raw: &str) -> Result<Vec<f64>, String> {
    raw.split(';').map(|v| number(key, v)).collect()
}

pub fn parse_kernel(spec: &str) -> Result<KernelSpec, String> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), r),
        None => (spec.trim(), ""),
    };
    let mut params = BTreeMap::new();
    for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {pair:?}"))?;
        if params.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("duplicate key {k:?}"));
        }
    }
    let mut take = |key: &str| params.remove(key);
    let mut need = |key: &str| take(key).ok_or_else(|| format!("{kind}: missing {key}"));
    let base = match kind {
        "trunc-power" | "truncated-power" => {
            let theta = number("theta", &need("theta")?)?;
            let delta = number("delta", &need("delta")?)?;
            KernelSpec::truncated_power(theta, delta)
        }
        "indicator" => KernelSpec::indicator(number("theta", &need("theta")?)?),
        "cos" | "cosine" => Ok(KernelSpec::cosine()),
        "zero" => Ok(KernelSpec::zero()),
        "gaussian" => {
            let scale = number("scale", &need("scale")?)?;
            let cutoff = number("cutoff", &need("cutoff")?)?;
            KernelSpec::gaussian(scale, cutoff)
        }
        "tabulated" => {
            let nodes = list("nodes", &need("nodes")?)?;
            let values = list("values", &need("values")?)?;
            let interp = match take("interp").as_deref() {
                None | Some("linear") => Interpolation::Linear,
                Some("cubic") => Interpolation::Cubic,
                Some(other) => return Err(format!("interp: expected linear or cubic, got {other:?}")),
            };
            KernelSpec::tabulated(nodes, values, interp)
        }
        "expansion" => {
            let lambda = number("lambda", &need("lambda")?)?;
            let coeffs = list("coeffs", &need("coeffs")?)?;
            KernelSpec::expansion(lambda, coeffs)
        }
        other => return Err(format!("unknown kernel kind {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let scale = take("scale").map(|v| number("scale", &v)).transpose()?;
    let sinc = take("sinc")
        .map(|v| {
            v.parse::<u32>()
                .map_err(|_| format!("sinc: expected a dimension, got {v:?}"))
        })
        .transpose()?;
    if let Some(extra) = params.keys().next() {
        return Err(format!("{kind}: unknown key {extra:?}"));
    }
    let mut g = base;
    if let Some(theta) = scale {
        g = scale_kernel(g, theta).map_err(|e| e.to_string())?;
    }
    if let Some(d) = sinc {
        g = sinc_power_transform(g, d).map_err(|e| e.to_string())?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_kinds() {
        let g = parse_kernel("trunc-power:theta=1,delta=2").unwrap();
        assert_eq!(g, KernelSpec::truncated_power(1.0, 2.0).unwrap());
        assert_eq!(parse_kernel("cos").unwrap(), KernelSpec::cosine());
        assert_eq!(parse_kernel("zero").unwrap(), KernelSpec::zero());
        let t = parse_kernel("tabulated:nodes=0;0.5;1,values=1;0.5;0,interp=cubic").unwrap();
        assert!((t.value(0.25) - 0.75).abs() < 1e-12);
        let e = parse_kernel("expansion:lambda=1,coeffs=1;-0.5").unwrap();
        assert!((e.value(0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn modifiers() {
        let g = parse_kernel("trunc-power:theta=3,delta=2,sinc=3").unwrap();
        let base = KernelSpec::truncated_power(3.0, 2.0).unwrap();
        assert_eq!(g, sinc_power_transform(base.clone(), 3).unwrap());
        let s = parse_kernel("indicator:theta=1,scale=0.5").unwrap();
        assert_eq!(s.value(0.49), 1.0);
        assert_eq!(s.value(0.51), 0.0);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "trunc-power:theta=1",
            "trunc-power:theta=x,delta=2",
            "warp:theta=1",
            "cos:extra=1",
            "trunc-power:theta=1,delta",
            "trunc-power:theta=1,theta=2,delta=1",
            "trunc-power:theta=-1,delta=2",
        ] {
            assert!(parse_kernel(bad).is_err(), "{bad}");
        }
    }
}
