use num_complex::Complex64;
use planarop::asym::{validate_with, RegionSpec};
use planarop::csv::{fmt_real, header_line};
use planarop::gammafam::{convergence_to_limit, curve_header, droplet_boundary, solve_gamma_params, trace_s_gamma};
use planarop::geometry::{default_d_beta_radius, eta_curve, trace_skeleton, zero_attraction_curve};
use planarop::lax::{synthesize_full, write_trace_csv};
use planarop::mpnum::{fhat, from_c64, hankel_ck, weber_d};
use planarop::zeros::{find_roots, write_roots_csv, zero_curve_stats};
use planarop::PlanarCurve;
use rug::{Complex, Float};
use serde_json::{json, Value};

use crate::config::{Overlay, RunConfig};
use crate::output::{emit, sibling, write_atomic};
use crate::svg::Figure;
use crate::{CliError, CurveKind, SpecialFn};

pub fn poly(cfg: &RunConfig) -> Result<(), CliError> {
    let syn = synthesize_full(&cfg.params, cfg.n, cfg.init, &cfg.ctx, false)?;
    let p = syn.polys.last().expect("synthesis returns P_n");
    emit(
        cfg.out.as_deref(),
        Box::new(|w| Ok(p.write_csv(w, &cfg.params, cfg.digits)?)),
    )?;
    if let Some(out) = &cfg.out {
        let path = sibling(out, "trace");
        write_atomic(&path, Box::new(|w| Ok(write_trace_csv(w, &syn.states, cfg.digits)?)))?;
    }
    Ok(())
}

fn curve_params(cfg: &RunConfig, kind: &str) -> String {
    let p = &cfg.params;
    let mut s = format!("a={} kind={kind} c={} N={}", p.a, p.c, p.big_n);
    match kind {
        "eta" => s.push_str(&format!(" eta={}", cfg.eta.unwrap_or(0.0))),
        "attraction" => s.push_str(&format!(" n={}", cfg.n)),
        _ => {}
    }
    s
}

fn need_eta(cfg: &RunConfig) -> Result<f64, CliError> {
    cfg.eta.ok_or_else(|| CliError::Usage("this needs --eta".into()))
}

/// 𝒮_γ and the components of ∂K_γ for `cfg.gamma`.
fn gamma_curves(cfg: &RunConfig) -> Result<(String, PlanarCurve, Vec<PlanarCurve>, String), CliError> {
    let gp = solve_gamma_params(cfg.params.a, cfg.gamma)?;
    let skel = trace_s_gamma(&gp, cfg.step)?;
    let droplet = droplet_boundary(&gp, cfg.samples);
    Ok((
        curve_header(&gp, "gamma_skeleton"),
        skel,
        droplet,
        curve_header(&gp, "droplet"),
    ))
}

pub fn zeros(cfg: &RunConfig) -> Result<(), CliError> {
    let p = &cfg.params;
    let syn = synthesize_full(p, cfg.n, cfg.init, &cfg.ctx, false)?;
    let poly = syn.polys.last().expect("synthesis returns P_n");
    let roots = find_roots(poly, &cfg.ctx)?;
    let skel = trace_skeleton(p, cfg.samples)?;

    let mut fig = Figure::default();
    let mut dist_curve: Option<PlanarCurve> = None;
    for ov in &cfg.overlay {
        match ov {
            Overlay::Skeleton => {
                fig.polyline(&skel.points, true, "black");
                dist_curve.get_or_insert_with(|| skel.clone());
            }
            Overlay::Eta => {
                let curve = eta_curve(p, need_eta(cfg)?, cfg.samples)?;
                fig.polyline(&curve.points, curve.closed, "blue");
                dist_curve.get_or_insert(curve);
            }
            Overlay::Attraction => {
                let curve = zero_attraction_curve(p, cfg.n, cfg.samples)?;
                fig.polyline(&curve.points, false, "green");
                dist_curve.get_or_insert(curve);
            }
            Overlay::Gamma => {
                let (_, s, droplet, _) = gamma_curves(cfg)?;
                fig.polyline(&s.points, false, "purple");
                for d in &droplet {
                    fig.polyline(&d.points, true, "gray");
                }
            }
        }
    }
    let dist_curve = dist_curve.unwrap_or_else(|| skel.clone());
    let beta = Complex64::new(p.beta, 0.0);
    let stats = zero_curve_stats(&roots, &dist_curve, &skel, beta, default_d_beta_radius(p));
    log::info!(
        "{} roots, max distance {:.3e}, ext {:.3}, int {:.3}",
        roots.len(),
        stats.max_dist,
        stats.frac_ext,
        stats.frac_int
    );
    emit(
        cfg.out.as_deref(),
        Box::new(|w| Ok(write_roots_csv(w, &roots, &stats, cfg.digits)?)),
    )?;

    if !cfg.overlay.is_empty() {
        fig.dots(&roots.to_c64(), "red");
        match &cfg.svg {
            Some(path) => {
                let text = fig.render();
                write_atomic(path, Box::new(move |w| Ok(w.write_all(text.as_bytes())?)))?;
            }
            None => log::warn!("overlay requested but no --svg or --out path; SVG skipped"),
        }
    }
    Ok(())
}

pub fn curves(cfg: &RunConfig, kind: CurveKind) -> Result<(), CliError> {
    let p = &cfg.params;
    match kind {
        CurveKind::Skeleton => {
            let c = trace_skeleton(p, cfg.samples)?;
            let h = curve_params(cfg, "skeleton");
            emit(cfg.out.as_deref(), Box::new(|w| Ok(c.write_csv(w, &h)?)))
        }
        CurveKind::Eta => {
            let c = eta_curve(p, need_eta(cfg)?, cfg.samples)?;
            let h = curve_params(cfg, "eta");
            emit(cfg.out.as_deref(), Box::new(|w| Ok(c.write_csv(w, &h)?)))
        }
        CurveKind::Attraction => {
            let c = zero_attraction_curve(p, cfg.n, cfg.samples)?;
            let h = curve_params(cfg, "attraction");
            emit(cfg.out.as_deref(), Box::new(|w| Ok(c.write_csv(w, &h)?)))
        }
        CurveKind::Gamma => {
            let (sh, s, droplet, dh) = gamma_curves(cfg)?;
            let part = |i: usize| format!("{dh} component={i}");
            match &cfg.out {
                Some(out) => {
                    write_atomic(out, Box::new(|w| Ok(s.write_csv(w, &sh)?)))?;
                    for (i, d) in droplet.iter().enumerate() {
                        let tag = if i == 0 {
                            "droplet".to_string()
                        } else {
                            format!("droplet{i}")
                        };
                        let h = part(i);
                        write_atomic(&sibling(out, &tag), Box::new(|w| Ok(d.write_csv(w, &h)?)))?;
                    }
                    Ok(())
                }
                None => emit(
                    None,
                    Box::new(|w| {
                        s.write_csv(&mut *w, &sh)?;
                        for (i, d) in droplet.iter().enumerate() {
                            d.write_csv(&mut *w, &part(i))?;
                        }
                        Ok(())
                    }),
                ),
            }
        }
        CurveKind::Hausdorff => {
            let exclude = 0.1;
            let rows = cfg
                .gammas
                .iter()
                .map(|&g| Ok(convergence_to_limit(&solve_gamma_params(p.a, g)?, cfg.step, exclude)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            let h = header_line(
                "hausdorff",
                &[
                    ("a", p.a.to_string()),
                    ("step", cfg.step.to_string()),
                    ("exclude", exclude.to_string()),
                ],
            );
            emit(
                cfg.out.as_deref(),
                Box::new(move |w| {
                    writeln!(w, "{h}")?;
                    writeln!(w, "gamma,skeleton_hausdorff,droplet_hausdorff,density_sup")?;
                    for r in &rows {
                        writeln!(
                            w,
                            "{},{},{},{}",
                            r.gamma, r.skeleton_hausdorff, r.droplet_hausdorff, r.density_sup
                        )?;
                    }
                    Ok(())
                }),
            )
        }
    }
}

pub fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let z = cfg.z.ok_or_else(|| CliError::Usage("validate needs --z".into()))?;
    let mut spec = RegionSpec::default_for(&cfg.params);
    if let Some(u) = cfg.u_band {
        spec.u_band = u;
    }
    if let Some(r) = cfg.d_beta_radius {
        spec.d_beta_radius = r;
    }
    spec.check(&cfg.params)?;
    let report = validate_with(&cfg.params, &spec, z, &cfg.ns, cfg.theorem, cfg.init, &cfg.ctx)?;
    log::info!("region {}, fitted order {:?}", report.region, report.fitted_order);
    let text = report.to_json()?;
    emit(cfg.out.as_deref(), Box::new(move |w| Ok(writeln!(w, "{text}")?)))
}

fn number(x: &Float, digits: Option<usize>) -> Result<Value, CliError> {
    if !x.is_finite() {
        return Err(CliError::Core(planarop::Error::Precision(format!(
            "non-finite value {x}"
        ))));
    }
    Ok(serde_json::from_str(&fmt_real(x, digits)).map_err(planarop::Error::from)?)
}

fn complex_json(z: &Complex, digits: Option<usize>) -> Result<Value, CliError> {
    Ok(json!({ "re": number(z.real(), digits)?, "im": number(z.imag(), digits)? }))
}

pub fn specialfn(cfg: &RunConfig, func: SpecialFn) -> Result<(), CliError> {
    let bits = cfg.ctx.bits();
    let c = Float::with_val(bits, cfg.params.c);
    let need_zeta = || {
        cfg.zeta
            .map(|z| from_c64(bits, z))
            .ok_or_else(|| CliError::Usage("this function needs --zeta".into()))
    };
    let zeta_json = |z: &Complex| json!({ "re": z.real().to_f64(), "im": z.imag().to_f64() });
    let doc = match func {
        SpecialFn::D => {
            let zeta = need_zeta()?;
            let v = weber_d(&c, &zeta, &cfg.ctx)?;
            json!({ "fn": "D", "c": cfg.params.c, "zeta": zeta_json(&zeta), "value": complex_json(&v, cfg.digits)? })
        }
        SpecialFn::Fhat => {
            let zeta = need_zeta()?;
            let v = fhat(&c, &zeta, &cfg.ctx)?;
            json!({ "fn": "fhat", "c": cfg.params.c, "zeta": zeta_json(&zeta), "value": complex_json(&v, cfg.digits)? })
        }
        SpecialFn::Ck => {
            let v = hankel_ck(&c, cfg.k);
            json!({ "fn": "ck", "c": cfg.params.c, "k": cfg.k, "value": number(&v, cfg.digits)? })
        }
    };
    let text = serde_json::to_string_pretty(&doc).map_err(planarop::Error::from)?;
    emit(cfg.out.as_deref(), Box::new(move |w| Ok(writeln!(w, "{text}")?)))
}
