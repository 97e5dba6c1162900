use std::fmt::Write;
use std::fs;

use serde::Serialize;
use serde_json::json;

use rpr_core::atlas::{self, sample_range, AtlasOptions, Window};
use rpr_core::geometry::config_from_slice;
use rpr_core::{assembly_modes, find_cusps, ManipulatorGeometry, SlicePose};

use crate::args::{Command, Common, Format};
use crate::output::Artifacts;
use crate::Failure;

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn require(v: Option<f64>, flag: &str, command: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure::usage(format!("{command} requires {flag}")))
}

fn load_geometry(c: &Common) -> Result<(ManipulatorGeometry, Vec<u8>), Failure> {
    let bytes = fs::read(&c.geom).map_err(|e| Failure::usage(format!("cannot read {}: {e}", c.geom.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::from(rpr_core::Error::InvalidGeometry("file is not UTF-8".into())))?;
    Ok((ManipulatorGeometry::from_json(&text)?, bytes))
}

fn positive(v: f64, flag: &str) -> Result<f64, Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Failure::usage(format!("{flag} must be positive, got {v}")))
    }
}

fn atlas_options(c: &Common) -> Result<AtlasOptions, Failure> {
    let window = match c.window {
        Some(w) => Some(Window::new(w.0[0], w.0[1], w.0[2], w.0[3])?),
        None => None,
    };
    Ok(AtlasOptions {
        grid: (c.grid as usize, c.grid as usize),
        region_resolution: (c.regions as usize, c.regions as usize),
        window,
        ..Default::default()
    })
}

fn cusps_csv(cusps: &[rpr_core::CuspPoint]) -> String {
    let mut out = String::from("l1,alpha,theta1,l2,l3,t,t1,residual_singular,residual_cusp\n");
    for c in cusps {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            c.l1, c.alpha, c.theta1, c.l2, c.l3, c.t, c.t1, c.residual_singular, c.residual_cusp
        );
    }
    out
}

/// Runs one command; returns what goes to standard output.
pub fn execute(cmd: &Command) -> Result<String, Failure> {
    let name = cmd.name();
    let c = cmd.common();
    let (geom, geom_bytes) = load_geometry(c)?;
    if let Command::Validate(_) = cmd {
        let (p, q) = geom.b3_platform();
        return Ok(to_json(&json!({
            "geometry": geom.to_file(),
            "beta": geom.beta(),
            "b3_platform": [p, q],
            "scale": geom.scale(),
        })));
    }
    let mut art = Artifacts::new(name, c);
    let stdout = match cmd {
        Command::Validate(_) => unreachable!(),
        Command::Ik(_) => {
            let l1 = positive(require(c.l1, "--l1", name)?, "--l1")?;
            let alpha = require(c.alpha, "--alpha", name)?;
            let theta1 = require(c.theta1, "--theta1", name)?;
            art.param("l1", l1);
            art.param("alpha", alpha);
            art.param("theta1", theta1);
            let conf = config_from_slice(&geom, &SlicePose::new(l1, alpha, theta1));
            let text = to_json(&conf);
            if art.wants(Format::Json) {
                art.write("ik.json", &text)?;
            }
            text
        }
        Command::Dk(_) => {
            let l = [
                require(c.l1, "--l1", name)?,
                require(c.l2, "--l2", name)?,
                require(c.l3, "--l3", name)?,
            ];
            art.param("lengths", l);
            let modes = assembly_modes(&geom, l)?;
            let rows: Vec<_> = modes
                .iter()
                .map(|m| {
                    json!({
                        "alpha": m.alpha,
                        "theta1": m.theta1,
                        "theta2": m.config.angles[1],
                        "theta3": m.config.angles[2],
                        "residual": m.residual,
                        "multiplicity": m.multiplicity,
                    })
                })
                .collect();
            let text = to_json(&rows);
            if art.wants(Format::Json) {
                art.write("modes.json", &text)?;
            }
            text
        }
        Command::Singular(_) => {
            let l1 = positive(require(c.l1, "--l1", name)?, "--l1")?;
            art.param("l1", l1);
            art.param("grid", c.grid);
            let curves = atlas::trace_singular_curves(&geom, l1, (c.grid as usize, c.grid as usize));
            if art.wants(Format::Csv) {
                art.write("curves.csv", &atlas::curves_csv(&curves))?;
            }
            if art.wants(Format::Json) {
                art.write("curves.json", &to_json(&curves))?;
            }
            let sizes: Vec<usize> = curves.iter().map(|c| c.samples.len()).collect();
            to_json(&json!({ "l1": l1, "branches": curves.len(), "samples": sizes }))
        }
        Command::Cusps(_) => {
            let l1 = positive(require(c.l1, "--l1", name)?, "--l1")?;
            art.param("l1", l1);
            let cusps = find_cusps(&geom, l1)?;
            let text = atlas::cusps_json(&cusps);
            if art.wants(Format::Json) {
                art.write("cusps.json", &text)?;
            }
            if art.wants(Format::Csv) {
                art.write("cusps.csv", &cusps_csv(&cusps))?;
            }
            text
        }
        Command::Atlas(_) => {
            let l1 = positive(require(c.l1, "--l1", name)?, "--l1")?;
            let opts = atlas_options(c)?;
            art.param("l1", l1);
            art.param("grid", c.grid);
            art.param("regions", c.regions);
            art.param("window", c.window.map(|w| w.0));
            let a = atlas::slice_atlas(&geom, l1, &opts)?;
            if art.wants(Format::Csv) {
                art.write("curves.csv", &atlas::curves_csv(&a.curves))?;
                art.write("cusps.csv", &cusps_csv(&a.cusps))?;
            }
            if art.wants(Format::Json) {
                art.write("atlas.json", &atlas::atlas_json(&a))?;
                art.write("cusps.json", &atlas::cusps_json(&a.cusps))?;
            }
            if art.wants(Format::Svg) {
                art.write("atlas.svg", &atlas::slice_svg(&a))?;
            }
            to_json(&json!({
                "l1": l1,
                "cusp_count": a.cusp_count,
                "branches": a.curves.len(),
                "region_signature": a.region_signature,
                "checks": a.checks,
            }))
        }
        Command::Sweep(_) | Command::Stabilize(_) => {
            let r = c.l1_range.ok_or_else(|| Failure::usage(format!("{name} requires --l1-range")))?;
            let opts = atlas_options(c)?;
            art.param("l1_range", [r.start, r.end, r.step]);
            art.param("grid", c.grid);
            art.param("regions", c.regions);
            let values = sample_range(r.start, r.end, r.step);
            let entries = atlas::sweep(&geom, &values, &opts);
            if let Command::Sweep(_) = cmd {
                if art.wants(Format::Csv) {
                    art.write("sweep.csv", &atlas::sweep_csv(&entries))?;
                }
                let text = atlas::sweep_json(&entries);
                if art.wants(Format::Json) {
                    art.write("sweep.json", &text)?;
                }
                text
            } else {
                let stable = atlas::stabilization_point(&entries);
                let text = to_json(&json!({ "l1_stable": stable, "entries": entries }));
                if art.wants(Format::Json) {
                    art.write("stabilization.json", &text)?;
                }
                text
            }
        }
    };
    art.finish(name, &c.geom, &geom_bytes)?;
    Ok(stdout)
}
