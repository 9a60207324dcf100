use num_complex::Complex64;
use serde_json::{json, Value};

use descff::algebra::parse_element;
use descff::jfunctions::{assemble_form_factor, h11_element, h2_element, j_direct, j_rho_result};
use descff::kink::kink_constant;
use descff::numeric::QuadratureSpec;
use descff::reflection::{involution_defect, solve_reflection, SolveOptions};
use descff::sampling::Sampler;
use descff::special::{lambda_prime, reflection_const, vev_g};
use descff::{DescendantElement, Error, ModelParams, Result};

use crate::args::{Common, ConstantsArgs, EvalArgs, ReflectArgs, VerifyArgs};
use crate::output::{document, emit};
use crate::suites;

pub fn params(c: &Common) -> Result<ModelParams> {
    if !(c.tol > 0.0) {
        return Err(Error::Domain(format!("--tol must be positive, got {}", c.tol)));
    }
    let mp = ModelParams::new(c.p).with_tolerance(c.tol).with_precision(c.precision.into());
    mp.validate()?;
    Ok(mp)
}

fn cj(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn cj_list(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|z| cj(*z)).collect())
}

/// Inline syntax, a JSON term list, or the named level-2 elements h2 (needs a) and h11.
pub fn element(spec: &str, a: Option<Complex64>, mp: &ModelParams) -> Result<DescendantElement> {
    let s = spec.trim();
    match s {
        "h2" => {
            let a = a.ok_or_else(|| Error::Domain("h2 depends on a; pass --a".into()))?;
            h2_element(a, mp)
        }
        "h11" => Ok(h11_element()),
        _ if s.starts_with('[') => serde_json::from_str(s).map_err(|e| Error::Parse(format!("element JSON: {e}"))),
        _ => parse_element(s),
    }
}

pub fn eval(args: &EvalArgs) -> Result<i32> {
    let mp = params(&args.common)?;
    let g = element(&args.element, args.a, &mp)?;
    let xs: Vec<Complex64> = match (&args.x, &args.theta, args.n) {
        (Some(x), None, _) => x.clone(),
        (None, Some(t), _) => t.iter().map(|t| t.exp()).collect(),
        (None, None, Some(n)) => Sampler::new(args.common.seed).generic_points(n, &mp),
        (Some(_), Some(_), _) => return Err(Error::Domain("give either --x or --theta, not both".into())),
        (None, None, None) => return Err(Error::Domain("give the points with --x, --theta or --n".into())),
    };
    if let Some(n) = args.n {
        if n != xs.len() {
            return Err(Error::Domain(format!("--n {n} disagrees with {} given points", xs.len())));
        }
    }
    let result = match args.a {
        Some(a) => j_direct(&g, a, &xs, &mp)?,
        None => j_rho_result(&g, &xs, &mp)?,
    };
    let mut extra = json!({
        "a": args.a.map(cj),
        "element": serde_json::to_value(&g).expect("element serializes"),
        "x": cj_list(&xs),
        "result": serde_json::to_value(&result).expect("result serializes"),
    });
    if let (Some(t), Some(a)) = (&args.theta, args.a) {
        let ff = assemble_form_factor(&g, a, t, &mp, &QuadratureSpec::default())?;
        extra["theta"] = cj_list(t);
        extra["form_factor"] = serde_json::to_value(ff).expect("form factor serializes");
    }
    emit(&document("eval", &args.common, extra), &args.common)?;
    Ok(0)
}

pub fn reflect(args: &ReflectArgs) -> Result<i32> {
    let mp = params(&args.common)?;
    let opts = SolveOptions { n_max: args.n, per_n: 0, seed: args.common.seed };
    let sol = solve_reflection(args.level, args.a, &mp, &opts)?;
    let back = solve_reflection(args.level, -args.a, &mp, &opts)?;
    let extra = json!({
        "solution": serde_json::to_value(&sol).expect("solution serializes"),
        "involution_defect": involution_defect(&sol, &back),
    });
    emit(&document("reflect", &args.common, extra), &args.common)?;
    Ok(0)
}

pub fn constants(args: &ConstantsArgs) -> Result<i32> {
    let mp = params(&args.common)?;
    let quad = QuadratureSpec::default();
    let lam = lambda_prime(&mp, &quad)?;
    let vev = vev_g(args.a, &mp, &quad)?;
    let kink: Vec<Value> = (1..=4).map(|n| kink_constant(n, &mp).map(cj)).collect::<Result<_>>()?;
    let extra = json!({
        "a": cj(args.a),
        "alpha": cj(mp.alpha(args.a)),
        "alpha0": cj(mp.alpha0()),
        "lambda_prime": { "value": cj(lam.value), "error": lam.error },
        "vev": { "value": cj(vev.value), "error": vev.error },
        "reflection_factor": cj(reflection_const(args.a, &mp)?),
        "kink_constants": kink,
        "j1": -mp.m / 2.0,
    });
    emit(&document("constants", &args.common, extra), &args.common)?;
    Ok(0)
}

pub fn verify(args: &VerifyArgs) -> Result<i32> {
    let mp = params(&args.common)?;
    let checks = suites::run(args.suite, &mp, args.n, args.a, args.common.seed)?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let extra = json!({
        "suite": format!("{:?}", args.suite).to_lowercase(),
        "passed": checks.len() - failed,
        "failed": failed,
        "checks": serde_json::to_value(&checks).expect("checks serialize"),
    });
    emit(&document("verify", &args.common, extra), &args.common)?;
    Ok(if failed == 0 { 0 } else { 1 })
}
