//! Degree bookkeeping of the eliminant.
//!
//! The resultant of the singularity and cusp polynomials is much larger than
//! the factor that carries the cusps. Its parts are peeled off with exact
//! gcds only: repeated factors, the factors whose roots are collapsed-leg
//! points or zeros of the adjugate row and column, and finally everything not
//! shared with the eliminant built from a different adjugate row and column
//! (genuine cusps satisfy the condition for every choice).

use serde::{Deserialize, Serialize};

use super::CuspReport;
use crate::error::Result;
use crate::geometry::ManipulatorGeometry;
use crate::polysolve::roots::RealRoot;
use crate::polysolve::{sylvester_resultant, trig_to_bipoly, ResultantMethod, TrigPoly, UniPoly};
use crate::slicepoly::ClosureTrig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDiagnostic {
    pub l1: f64,
    /// `(deg_t, deg_t1)` of the tan-half singularity polynomial.
    pub singular_degree: (usize, usize),
    /// `(deg_t, deg_t1)` of the tan-half cusp polynomial.
    pub cusp_degree: (usize, usize),
    pub resultant_degree: usize,
    /// Degree after dropping every factor of multiplicity above one.
    pub simple_degree: usize,
    /// Degree removed at each step, in order.
    pub removed: Vec<(String, usize)>,
    /// Degree of the remaining factor that carries the accepted cusp roots.
    pub relevant_degree: usize,
    /// Every accepted cusp root is a root of the remaining factor.
    pub carries_all_cusps: bool,
}

fn degree(p: &UniPoly) -> usize {
    p.degree().unwrap_or(0)
}

fn pair_resultant(a: &TrigPoly, b: &TrigPoly) -> Option<UniPoly> {
    sylvester_resultant(&trig_to_bipoly(a), &trig_to_bipoly(b), ResultantMethod::EvalInterp).ok()
}

/// `f` without its common factor with `g`.
fn remove_common(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let h = f.gcd(g);
    if degree(&h) == 0 {
        return f.clone();
    }
    f.div_exact(&h).expect("gcd divides")
}

/// `f` vanishes inside (or at) the bracket of `r`.
fn has_root(f: &UniPoly, r: &RealRoot) -> bool {
    if r.is_exact() {
        return f.eval_rational(&r.lo) == num_rational::BigRational::from_integer(0.into());
    }
    f.sign_at(&r.lo) != f.sign_at(&r.hi) || f.eval_rational(&r.lo) == num_rational::BigRational::from_integer(0.into())
}

/// Degree diagnostic of the unshifted elimination pass of `report`.
pub fn degree_diagnostic(geom: &ManipulatorGeometry, report: &CuspReport) -> Result<DegreeDiagnostic> {
    let l1 = report.l1;
    let pass = &report.pairs.passes[0];
    let cl = ClosureTrig::for_slice(geom, l1)?;
    let deg2 = |p: &crate::polysolve::BiPoly| (p.deg_t().unwrap_or(0), p.deg_t1().unwrap_or(0));

    let r = &pass.resultant;
    let simple = r.square_free_decomposition().into_iter().next().unwrap_or_else(|| r.clone());
    let mut f = simple.primitive();
    let mut removed = Vec::new();
    let mut strip = |f: &mut UniPoly, name: &str, g: Option<UniPoly>| {
        if let Some(g) = g {
            let next = remove_common(f, &g);
            removed.push((name.to_string(), degree(f) - degree(&next)));
            *f = next;
        }
    };

    strip(&mut f, "leg 2 collapsed", pair_resultant(&cl.x2, &cl.y2));
    strip(&mut f, "leg 3 collapsed", pair_resultant(&cl.x3, &cl.y3));
    let k = cl.k_factors();
    // first adjugate row (k1k2, -k2k5, k3k5) and column (k1k2, k3k4, -k1k4)
    for (i, j) in [(1, 4), (1, 2), (0, 4), (0, 2), (0, 3), (1, 3)] {
        strip(&mut f, &format!("k{} = k{} = 0", i + 1, j + 1), pair_resultant(&k[i], &k[j]));
    }
    let lc = pass.a.rows().last().cloned().unwrap_or_default().gcd(&pass.b.rows().last().cloned().unwrap_or_default());
    strip(&mut f, "leading coefficients", Some(lc));
    // genuine cusps satisfy the condition for every adjugate row and column
    let alt = pair_resultant(&cl.singularity(), &cl.cusp_with(1, 1)).map(|g| g.square_free_part());
    if let Some(g) = alt {
        let kept = f.gcd(&g);
        removed.push(("not shared with row 2 / column 2 eliminant".to_string(), degree(&f) - degree(&kept)));
        f = kept;
    }

    let accepted: Vec<&RealRoot> = report
        .cusps
        .iter()
        .filter_map(|c| {
            pass.t1_roots
                .iter()
                .find(|r| (r.value - c.t1).abs() <= 1e-9 * c.t1.abs().max(1.0))
        })
        .collect();
    let carries_all_cusps = accepted.len() == report.cusps.len() && accepted.iter().all(|r| has_root(&f, r));
    Ok(DegreeDiagnostic {
        l1,
        singular_degree: deg2(&pass.a),
        cusp_degree: deg2(&pass.b),
        resultant_degree: degree(r),
        simple_degree: degree(&simple),
        removed,
        relevant_degree: degree(&f),
        carries_all_cusps,
    })
}
