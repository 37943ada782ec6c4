//! Exact spectra of affine polar graphs three independent ways (closed-form
//! tables, character sums, dense numeric oracle), the Hoffman independence
//! bound, and the core verdicts.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Vect;
use crate::ovoid::known_independent_set;
use crate::polar::{AffineGraph, CertKind, VertexSetCertificate};
use crate::quadspace::{FormKind, SymForm};
use num_rational::Ratio;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    ClosedForm,
    CharacterSum,
    NumericOracle,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Source::ClosedForm => "closed_form",
            Source::CharacterSum => "character_sum",
            Source::NumericOracle => "numeric_oracle",
        };
        write!(f, "{s}")
    }
}

/// Eigenvalue/multiplicity pairs, sorted by eigenvalue descending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub pairs: Vec<(i128, u128)>,
    pub source: Source,
    pub vertex_count: u128,
}

impl SpectrumReport {
    fn from_pairs(mut pairs: Vec<(i128, u128)>, source: Source, vertex_count: u128) -> Result<SpectrumReport> {
        pairs.retain(|&(_, m)| m > 0);
        pairs.sort_by(|a, b| b.0.cmp(&a.0));
        // merge duplicates (the VO_2^- table collapse)
        let mut merged: Vec<(i128, u128)> = Vec::new();
        for (l, m) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == l => last.1 += m,
                _ => merged.push((l, m)),
            }
        }
        let report = SpectrumReport { pairs: merged, source, vertex_count };
        report.validate()?;
        Ok(report)
    }

    pub fn validate(&self) -> Result<()> {
        let total: u128 = self.pairs.iter().map(|&(_, m)| m).sum();
        let trace: i128 = self.pairs.iter().map(|&(l, m)| l * m as i128).sum();
        if total != self.vertex_count || trace != 0 {
            return Err(Error::VerificationFailed("spectrum report invariants"));
        }
        Ok(())
    }

    /// The valency (largest eigenvalue).
    pub fn lambda_max(&self) -> i128 {
        self.pairs.first().map_or(0, |&(l, _)| l)
    }

    pub fn lambda_min(&self) -> i128 {
        self.pairs.last().map_or(0, |&(l, _)| l)
    }

    /// |lambda| <= 2 sqrt(lambda_1 - 1) for all lambda not in {+-lambda_1}.
    pub fn is_ramanujan(&self) -> bool {
        let l1 = self.lambda_max();
        self.pairs
            .iter()
            .filter(|&&(l, _)| l != l1 && l != -l1)
            .all(|&(l, _)| l * l <= 4 * (l1 - 1))
    }
}

/// The closed-form spectrum tables for VO_n^eps(q).
pub fn spectrum_closed_form(kind: FormKind, n: usize, q: u64) -> Result<SpectrumReport> {
    let q = q as i128;
    let even = n % 2 == 0;
    match kind {
        FormKind::Parabolic if even => return Err(Error::BadParity("parabolic needs odd n >= 3")),
        FormKind::Parabolic if n < 3 => return Err(Error::BadParity("parabolic needs odd n >= 3")),
        FormKind::Hyperbolic | FormKind::Elliptic if !even => {
            return Err(Error::BadParity("hyperbolic/elliptic need even n >= 2"))
        }
        _ => {}
    }
    let vcount = q.pow(n as u32) as u128;
    let pairs: Vec<(i128, u128)> = match kind {
        FormKind::Hyperbolic => {
            let a = q.pow((n / 2 - 1) as u32); // q^{n/2-1}
            let b = q.pow((n / 2) as u32); // q^{n/2}
            vec![
                ((a + 1) * (b - 1), 1),
                (b - a - 1, ((a + 1) * (b - 1)) as u128),
                (-a - 1, (a * (q - 1) * (b - 1)) as u128),
            ]
        }
        FormKind::Elliptic => {
            let a = q.pow((n / 2 - 1) as u32);
            let b = q.pow((n / 2) as u32);
            vec![
                ((a - 1) * (b + 1), 1),
                (a - 1, (a * (q - 1) * (b + 1)) as u128),
                (-b + a - 1, ((a - 1) * (b + 1)) as u128),
            ]
        }
        FormKind::Parabolic => {
            let a = q.pow(((n - 1) / 2) as u32); // q^{(n-1)/2}
            let b = q.pow((n - 1) as u32); // q^{n-1}
            vec![
                (b - 1, 1),
                (a - 1, ((q - 1) * (b + a) / 2) as u128),
                (-1, (b - 1) as u128),
                (-a - 1, ((q - 1) * (b - a) / 2) as u128),
            ]
        }
    };
    SpectrumReport::from_pairs(pairs, Source::ClosedForm, vcount)
}

/// Character-sum spectrum: for each functional a, the eigenvalue
/// (|Delta| p - |S|)/(p - 1) with Delta = {s in S : Tr(a^T s) = 0}.
pub fn spectrum_character(form: &SymForm, budget: u128) -> Result<SpectrumReport> {
    let f = &form.field;
    let q = f.q() as u128;
    let n = form.n as u32;
    if q.pow(2 * n - 1) > budget {
        return Err(Error::BudgetExceeded("character sum q^(2n-1)"));
    }
    let g = AffineGraph::new(form.clone());
    let s_set = g.connection_set();
    let s_len = s_set.len() as i128;
    let p = f.p() as i128;
    let mut pairs: Vec<(i128, u128)> = Vec::new();
    for a in form.vectors() {
        let delta = s_set
            .iter()
            .filter(|s| {
                let mut dot = f.zero();
                for (ai, si) in a.iter().zip(s.iter()) {
                    dot = f.add(&dot, &f.mul(ai, si));
                }
                f.trace(&dot) == 0
            })
            .count() as i128;
        let num = delta * p - s_len;
        debug_assert_eq!(num % (p - 1), 0);
        pairs.push((num / (p - 1), 1));
    }
    SpectrumReport::from_pairs(pairs, Source::CharacterSum, q.pow(n))
}

/// Analytic character path: eigenvalue (q |Omega_0| - |S|)/(q - 1) where
/// Omega_0 = S intersected with the hyperplane a^T x = 0, counted through
/// the closed-form isotropic counts of the restricted form (the tangent /
/// secant hyperplane case analysis).
pub fn spectrum_character_analytic(form: &SymForm) -> Result<SpectrumReport> {
    let f = &form.field;
    let q = f.q() as i128;
    let n = form.n;
    let s_len = form.isotropic_count(&f.zero()) as i128 - 1;
    let mut pairs: Vec<(i128, u128)> = vec![(s_len, 1)]; // a = 0
    for a in form.vectors().skip(1) {
        // restriction of the form to the hyperplane a^T x = 0
        let row = crate::linalg::Mat::from_columns(f, &[a.clone()]).transpose();
        let basis = row.null_space();
        let h = crate::linalg::Mat::from_columns(f, &basis);
        let gram = h.transpose().mul(&form.a).mul(&h);
        let rank = gram.rank();
        let iso_in_hyperplane: i128 = if rank == n - 1 {
            SymForm::new(gram)?.isotropic_count(&f.zero()) as i128
        } else {
            // tangent hyperplane: one-dimensional radical splits off
            debug_assert_eq!(rank, n - 2);
            if rank == 0 {
                // n = 2: the hyperplane is the radical line itself
                q
            } else {
                let radical = gram.null_space();
                let mut cols: Vec<Vect> = Vec::new();
                for i in 0..n - 1 {
                    let mut e = vec![f.zero(); n - 1];
                    e[i] = f.one();
                    let mut cand = cols.clone();
                    cand.extend(radical.iter().cloned());
                    cand.push(e.clone());
                    if crate::linalg::Mat::from_columns(f, &cand).rank() == cand.len() {
                        cols.push(e);
                    }
                    if cols.len() == n - 2 {
                        break;
                    }
                }
                let c = crate::linalg::Mat::from_columns(f, &cols);
                let core = c.transpose().mul(&gram).mul(&c);
                q * SymForm::new(core)?.isotropic_count(&f.zero()) as i128
            }
        };
        let omega0 = iso_in_hyperplane - 1;
        let num = q * omega0 - s_len;
        debug_assert_eq!(num % (q - 1), 0);
        pairs.push((num / (q - 1), 1));
    }
    SpectrumReport::from_pairs(pairs, Source::CharacterSum, (q as u128).pow(n as u32))
}

/// Dense floating-point eigensolve as an independent cross-check.
pub fn spectrum_numeric_oracle(form: &SymForm, budget: u64) -> Result<SpectrumReport> {
    let g = AffineGraph::new(form.clone());
    let count = g.vertex_count();
    if count > budget {
        return Err(Error::BudgetExceeded("numeric oracle vertex count"));
    }
    let verts: Vec<Vect> = g.vertices().collect();
    let m = verts.len();
    let mut adj = nalgebra::DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        for j in i + 1..m {
            if g.adjacent(&verts[i], &verts[j]) {
                adj[(i, j)] = 1.0;
                adj[(j, i)] = 1.0;
            }
        }
    }
    let eigen = nalgebra::SymmetricEigen::new(adj);
    let mut pairs: Vec<(i128, u128)> = Vec::new();
    for &l in eigen.eigenvalues.iter() {
        let rounded = l.round();
        if (l - rounded).abs() >= 1e-6 {
            return Err(Error::NonIntegerEigenvalue(l));
        }
        pairs.push((rounded as i128, 1));
    }
    SpectrumReport::from_pairs(pairs, Source::NumericOracle, count as u128)
}

/// Hoffman bound |V| (-lambda_min) / (lambda_max - lambda_min), exact.
pub fn hoffman_alpha_bound(report: &SpectrumReport) -> Result<(Ratio<i128>, u128)> {
    let lmax = report.lambda_max();
    let lmin = report.lambda_min();
    if lmax <= 0 {
        return Err(Error::ZeroValency);
    }
    let bound = Ratio::new(report.vertex_count as i128 * -lmin, lmax - lmin);
    let floor = bound.floor().to_integer() as u128;
    Ok((bound, floor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CompleteCore,
    GraphIsCore,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::CompleteCore => "complete_core",
            Verdict::GraphIsCore => "graph_is_core",
            Verdict::Undecided => "undecided",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct CoreReport {
    pub graph: String,
    pub omega: u128,
    pub alpha_exact: Option<u128>,
    pub alpha_lower: u128,
    pub alpha_upper: u128,
    pub product_equality: bool,
    pub verdict: Verdict,
    /// complete core would imply an ovoid (parabolic/hyperbolic theorem).
    pub ovoid_implication: bool,
    pub witness: Option<VertexSetCertificate>,
}

/// Core verdict: elliptic graphs are cores (refute omega*alpha = |V| via the
/// Hoffman bound or exact search); parabolic/hyperbolic graphs are complete
/// cores exactly when a maximum independent set of size |V|/omega exists,
/// sought first among the known constructions, then by exact search.
pub fn core_verdict(form: &SymForm, vertex_budget: u64, node_budget: u64) -> Result<CoreReport> {
    let g = AffineGraph::new(form.clone());
    let class = g.class;
    let q = form.field.q();
    let vcount = (q as u128).pow(form.n as u32);
    let omega = (q as u128).pow(class.witt_index as u32);
    let quota = vcount / omega;
    let ovoid_implication = class.kind != FormKind::Elliptic;
    let graph = g.graph_id();
    if g.valency() == 0 {
        // edgeless: all of F_q^n is independent, the core is a single vertex
        return Ok(CoreReport {
            graph,
            omega,
            alpha_exact: Some(vcount),
            alpha_lower: vcount,
            alpha_upper: vcount,
            product_equality: true,
            verdict: Verdict::CompleteCore,
            ovoid_implication,
            witness: None,
        });
    }
    let spectrum = spectrum_closed_form(class.kind, form.n, q)?;
    let (_, hoffman_floor) = hoffman_alpha_bound(&spectrum)?;
    let mut alpha_upper = hoffman_floor.min(vcount);
    let mut alpha_lower = 1u128;
    let mut alpha_exact = None;
    let mut witness = None;
    // known constructions reach the quota in the parabolic/hyperbolic cases
    if ovoid_implication {
        if let Some(pts) = known_independent_set(form) {
            if g.verify_set(CertKind::Independent, &pts) && pts.len() as u128 == quota {
                alpha_lower = quota;
                witness = Some(VertexSetCertificate {
                    kind: CertKind::Independent,
                    graph: graph.clone(),
                    size: pts.len(),
                    vertices: pts,
                    verified: true,
                    optimal: None,
                });
            }
        }
    }
    if witness.is_none() && g.vertex_count() <= vertex_budget {
        let cert = g.exact_mis(vertex_budget, node_budget)?;
        if cert.optimal == Some(true) && cert.verified {
            alpha_exact = Some(cert.size as u128);
            alpha_lower = cert.size as u128;
            alpha_upper = cert.size as u128;
            witness = Some(cert);
        }
    }
    // omega * alpha <= |V| always, so alpha_lower = quota certifies equality
    let product_equality = alpha_lower >= quota;
    let verdict = if product_equality {
        Verdict::CompleteCore
    } else if alpha_upper < quota {
        Verdict::GraphIsCore
    } else {
        Verdict::Undecided
    };
    Ok(CoreReport {
        graph,
        omega,
        alpha_exact,
        alpha_lower,
        alpha_upper,
        product_equality,
        verdict,
        ovoid_implication,
        witness,
    })
}

/// Convenience: the canonical diagonal form of a given type over GF(q).
pub fn canonical_form(kind: FormKind, n: usize, field: &Field) -> Result<SymForm> {
    let f = field;
    let mut m = crate::linalg::Mat::identity(f, n);
    match kind {
        FormKind::Parabolic => {
            if n % 2 == 0 {
                return Err(Error::BadParity("parabolic needs odd n"));
            }
        }
        FormKind::Hyperbolic | FormKind::Elliptic => {
            if n % 2 == 1 {
                return Err(Error::BadParity("hyperbolic/elliptic need even n"));
            }
            let want = if kind == FormKind::Hyperbolic { 1 } else { -1 };
            // diag(1,...,1) or diag(1,...,1,d), whichever has the right type
            let disc_sign = f.eta(&f.from_int(if (n / 2) % 2 == 0 { 1 } else { -1 }));
            if disc_sign != want {
                m.set(n - 1, n - 1, f.find_nonsquare());
            }
        }
    }
    let form = SymForm::named(m, "canonical")?;
    debug_assert_eq!(form.classify().kind, kind);
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::DEFAULT_VERTEX_BUDGET;
    use crate::linalg::Mat;

    fn gf(p: u64) -> Field {
        Field::new(p, 1, None).unwrap()
    }

    #[test]
    fn closed_form_tables() {
        let r = spectrum_closed_form(FormKind::Elliptic, 4, 3).unwrap();
        assert_eq!(r.pairs, vec![(20, 1), (2, 60), (-7, 20)]);
        let r = spectrum_closed_form(FormKind::Hyperbolic, 4, 3).unwrap();
        assert_eq!(r.pairs, vec![(32, 1), (5, 32), (-4, 48)]);
        let r = spectrum_closed_form(FormKind::Parabolic, 5, 3).unwrap();
        assert_eq!(r.pairs, vec![(80, 1), (8, 90), (-1, 80), (-10, 72)]);
        let r = spectrum_closed_form(FormKind::Parabolic, 3, 3).unwrap();
        assert_eq!(r.pairs, vec![(8, 1), (2, 12), (-1, 8), (-4, 6)]);
        // VO_2^-(q): table collapses to the edgeless spectrum
        let r = spectrum_closed_form(FormKind::Elliptic, 2, 3).unwrap();
        assert_eq!(r.pairs, vec![(0, 9)]);
        assert!(spectrum_closed_form(FormKind::Parabolic, 4, 3).is_err());
        assert!(spectrum_closed_form(FormKind::Hyperbolic, 3, 3).is_err());
    }

    #[test]
    fn character_sum_examples_vo2_plus() {
        let f = gf(3);
        let form = SymForm::new(Mat::from_ints(&f, 2, 2, &[1, 0, 0, -1])).unwrap();
        let r = spectrum_character(&form, 1 << 30).unwrap();
        // {4:1, 1:4, -2:4}
        assert_eq!(r.pairs, vec![(4, 1), (1, 4), (-2, 4)]);
    }

    #[test]
    fn three_way_agreement_small() {
        let f3 = gf(3);
        let cases: Vec<(FormKind, usize)> = vec![
            (FormKind::Hyperbolic, 2),
            (FormKind::Elliptic, 2),
            (FormKind::Parabolic, 3),
            (FormKind::Hyperbolic, 4),
            (FormKind::Elliptic, 4),
        ];
        for (kind, n) in cases {
            let form = canonical_form(kind, n, &f3).unwrap();
            let closed = spectrum_closed_form(kind, n, 3).unwrap();
            let character = spectrum_character(&form, 1 << 40).unwrap();
            let analytic = spectrum_character_analytic(&form).unwrap();
            let numeric = spectrum_numeric_oracle(&form, 3000).unwrap();
            assert_eq!(closed.pairs, character.pairs, "{kind:?} n={n}");
            assert_eq!(closed.pairs, analytic.pairs, "{kind:?} n={n}");
            assert_eq!(closed.pairs, numeric.pairs, "{kind:?} n={n}");
        }
    }

    #[test]
    fn spectrum_is_congruence_invariant() {
        // a non-diagonal model must give the same character-sum spectrum
        let f = gf(3);
        let form = crate::quadspace::named_form("antidiag", &f, Some(4)).unwrap();
        let character = spectrum_character(&form, 1 << 40).unwrap();
        let closed = spectrum_closed_form(FormKind::Hyperbolic, 4, 3).unwrap();
        assert_eq!(character.pairs, closed.pairs);
    }

    #[test]
    fn hoffman_bounds() {
        let r = spectrum_closed_form(FormKind::Elliptic, 4, 3).unwrap();
        let (bound, floor) = hoffman_alpha_bound(&r).unwrap();
        assert_eq!(bound, Ratio::new(81 * 7, 27));
        assert_eq!(floor, 21);
        let r = spectrum_closed_form(FormKind::Hyperbolic, 4, 3).unwrap();
        assert_eq!(hoffman_alpha_bound(&r).unwrap().1, 9);
        let r = spectrum_closed_form(FormKind::Parabolic, 5, 3).unwrap();
        assert_eq!(hoffman_alpha_bound(&r).unwrap().1, 27);
        let r = spectrum_closed_form(FormKind::Elliptic, 2, 3).unwrap();
        assert_eq!(hoffman_alpha_bound(&r).unwrap_err(), Error::ZeroValency);
    }

    #[test]
    fn parabolic_graphs_are_ramanujan() {
        for (n, q) in [(3usize, 3u64), (5, 3), (3, 7), (3, 11), (5, 5), (7, 3)] {
            let r = spectrum_closed_form(FormKind::Parabolic, n, q).unwrap();
            assert!(r.is_ramanujan(), "n={n} q={q}");
        }
    }

    #[test]
    fn parabolic_multiplicity_identities() {
        for (n, q) in [(3usize, 3i128), (5, 3), (3, 5), (3, 7)] {
            let r = spectrum_closed_form(FormKind::Parabolic, n, q as u64).unwrap();
            let a = q.pow(((n - 1) / 2) as u32);
            let b = q.pow((n - 1) as u32);
            let by_value: std::collections::HashMap<i128, u128> = r.pairs.iter().cloned().collect();
            assert_eq!(by_value[&(a - 1)], ((q - 1) * (b + a) / 2) as u128);
            assert_eq!(by_value[&-1], (b - 1) as u128);
            assert_eq!(by_value[&(-a - 1)], ((q - 1) * (b - a) / 2) as u128);
        }
    }

    #[test]
    fn core_verdict_elliptic_4_3() {
        let f = gf(3);
        let form = canonical_form(FormKind::Elliptic, 4, &f).unwrap();
        let report = core_verdict(&form, DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert_eq!(report.verdict, Verdict::GraphIsCore);
        assert!(report.alpha_upper <= 21);
        assert!(3 * report.alpha_exact.unwrap() < 81);
        // Eq.-style strict bound alpha < q^{n/2+1}
        assert!(report.alpha_upper < 27);
        assert!(!report.ovoid_implication);
    }

    #[test]
    fn core_verdict_complete_cores() {
        let f = gf(3);
        let form = canonical_form(FormKind::Hyperbolic, 4, &f).unwrap();
        let report = core_verdict(&form, DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert_eq!(report.verdict, Verdict::CompleteCore);
        assert!(report.product_equality);
        assert_eq!(report.witness.as_ref().unwrap().size, 9);
        let form = crate::quadspace::named_form("paper-5x5", &f, None).unwrap();
        let report = core_verdict(&form, DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert_eq!(report.verdict, Verdict::CompleteCore);
        assert_eq!(report.witness.as_ref().unwrap().size, 27);
    }

    #[test]
    fn core_verdict_edgeless() {
        let f = gf(3);
        let form = canonical_form(FormKind::Elliptic, 2, &f).unwrap();
        let report = core_verdict(&form, DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert_eq!(report.verdict, Verdict::CompleteCore);
        assert_eq!(report.alpha_exact, Some(9));
    }

    #[test]
    fn hoffman_equality_neighbor_count_vo4_plus() {
        // every vertex outside a maximum independent set of VO_4^+(3) has
        // exactly -lambda_min = 4 neighbors inside it
        let f = gf(3);
        let form = canonical_form(FormKind::Hyperbolic, 4, &f).unwrap();
        let report = core_verdict(&form, DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        let indep = report.witness.unwrap().vertices;
        let g = AffineGraph::new(form);
        for v in g.vertices() {
            if indep.contains(&v) {
                continue;
            }
            let inside = indep.iter().filter(|u| g.adjacent(u, &v)).count();
            assert_eq!(inside, 4);
        }
    }
}
