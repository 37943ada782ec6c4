//! Affine polar graphs VO_n^eps(q) on F_q^n and quadric point graphs
//! Q_{n-1}^eps(q), with cliques, exact independent sets, the neighborhood
//! isomorphism onto a lexicographic product, diameter-2 witnesses, and
//! arc-transitivity witnesses.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};
use crate::linalg::{vec_is_zero, vec_scale, vec_sub, Mat, Vect};
use crate::mis::{max_independent_set, MisResult};
use crate::quadspace::{FormClass, SymForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_VERTEX_BUDGET: u64 = 10_000;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Clique,
    Independent,
}

/// A verified clique or independent set in a named graph.
#[derive(Clone, Debug)]
pub struct VertexSetCertificate {
    pub kind: CertKind,
    pub graph: String,
    pub vertices: Vec<Vect>,
    pub size: usize,
    pub verified: bool,
    /// None when optimality was not attempted (constructed sets).
    pub optimal: Option<bool>,
}

/// The Cayley graph on F_q^n with connection set {s != 0 : s^T A s = 0}.
#[derive(Clone, Debug)]
pub struct AffineGraph {
    pub form: SymForm,
    pub class: FormClass,
}

/// Projective isotropic points with perpendicularity adjacency.
#[derive(Clone, Debug)]
pub struct QuadricGraph {
    pub form: SymForm,
    pub class: FormClass,
    pub points: Vec<Vect>,
}

pub fn build_graphs(form: &SymForm) -> (AffineGraph, QuadricGraph) {
    (AffineGraph::new(form.clone()), QuadricGraph::new(form.clone()))
}

impl AffineGraph {
    pub fn new(form: SymForm) -> AffineGraph {
        let class = form.classify();
        AffineGraph { form, class }
    }

    pub fn field(&self) -> &Field {
        &self.form.field
    }

    pub fn n(&self) -> usize {
        self.form.n
    }

    pub fn vertex_count(&self) -> u64 {
        self.field().q().pow(self.n() as u32)
    }

    pub fn graph_id(&self) -> String {
        format!(
            "affine:{}:n={}:q={}:form={}",
            self.class.kind,
            self.n(),
            self.field().spec_string(),
            self.form.name
        )
    }

    /// |S| = isotropic_count(0) - 1.
    pub fn valency(&self) -> u64 {
        (self.form.isotropic_count(&self.field().zero()) - 1) as u64
    }

    pub fn adjacent(&self, x: &[Elt], y: &[Elt]) -> bool {
        let d = vec_sub(self.field(), x, y);
        !vec_is_zero(&d) && self.form.is_isotropic(&d)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vect> + '_ {
        self.form.vectors()
    }

    /// The connection set S (neighborhood of 0).
    pub fn connection_set(&self) -> Vec<Vect> {
        self.vertices().skip(1).filter(|s| self.form.is_isotropic(s)).collect()
    }

    fn certificate(&self, kind: CertKind, vertices: Vec<Vect>, optimal: Option<bool>) -> VertexSetCertificate {
        let verified = self.verify_set(kind, &vertices);
        VertexSetCertificate { kind, graph: self.graph_id(), size: vertices.len(), vertices, verified, optimal }
    }

    pub fn verify_set(&self, kind: CertKind, vertices: &[Vect]) -> bool {
        for (i, u) in vertices.iter().enumerate() {
            for v in &vertices[i + 1..] {
                let adj = self.adjacent(u, v);
                let want = matches!(kind, CertKind::Clique);
                if adj != want || vec_sub(self.field(), u, v).iter().all(|e| e.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// A maximum clique: the span of a maximal totally isotropic subspace
    /// (size q^r), or {0} for the edgeless elliptic n=2 case.
    pub fn max_clique(&self) -> Result<VertexSetCertificate> {
        let f = self.field();
        let vertices = if self.class.witt_index == 0 {
            vec![vec![f.zero(); self.n()]]
        } else {
            let basis = self.form.totally_isotropic_subspace()?;
            span(f, &basis)
        };
        let cert = self.certificate(CertKind::Clique, vertices, None);
        if !cert.verified {
            return Err(Error::VerificationFailed("totally isotropic span is not a clique"));
        }
        Ok(cert)
    }

    /// The map (point i, a) -> a * x_i from V(Q) x (F_q \ {0}) onto the
    /// neighborhood of 0, verified adjacency-preserving in both directions.
    pub fn neighborhood_iso(&self, quadric: &QuadricGraph) -> NeighborhoodIso {
        let f = self.field();
        let mut pairs: Vec<((usize, Elt), Vect)> = Vec::new();
        for (i, x) in quadric.points.iter().enumerate() {
            for code in 1..f.q() {
                let a = f.from_code(code);
                pairs.push(((i, a.clone()), vec_scale(f, &a, x)));
            }
        }
        // bijectivity onto N(0)
        let mut images: Vec<&Vect> = pairs.iter().map(|(_, v)| v).collect();
        images.sort_by_key(|v| encode(f, v));
        images.dedup();
        let mut neighborhood = self.connection_set();
        neighborhood.sort_by_key(|v| encode(f, v));
        let onto = images.len() == neighborhood.len()
            && images.iter().zip(&neighborhood).all(|(a, b)| **a == *b);
        // adjacency iff: lexicographic product Q[K_{q-1}] vs affine graph
        let mut both_ways = true;
        'outer: for (idx, ((i, a), u)) in pairs.iter().enumerate() {
            for ((j, b), v) in &pairs[idx + 1..] {
                let lex = if i == j { a != b } else { quadric.adjacent_points(*i, *j) };
                if lex != self.adjacent(u, v) {
                    both_ways = false;
                    break 'outer;
                }
            }
        }
        NeighborhoodIso { pairs, verified: onto && both_ways }
    }

    /// A common neighbor of two distinct non-adjacent vertices: z = x + v for
    /// the first isotropic v (lexicographic, or seeded sampling beyond the
    /// enumeration budget) with B(v, y-x) = Q(y-x)/2.
    pub fn common_neighbor(&self, x: &[Elt], y: &[Elt], seed: u64) -> Result<Vect> {
        let f = self.field();
        let w = vec_sub(f, y, x);
        if vec_is_zero(&w) || self.adjacent(x, y) {
            return Err(Error::PreconditionViolated("need distinct non-adjacent vertices"));
        }
        let c = self.form.evaluate(&w)?;
        let target = f.div(&c, &f.from_int(2))?;
        let found = if self.vertex_count() <= 1_000_000 {
            self.vertices()
                .skip(1)
                .find(|v| self.form.is_isotropic(v) && self.form.bilin(v, &w) == target)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hit = None;
            for _ in 0..2_000_000u64 {
                let v: Vect = (0..self.n()).map(|_| f.from_code(rng.gen_range(0..f.q()))).collect();
                if !vec_is_zero(&v) && self.form.is_isotropic(&v) && self.form.bilin(&v, &w) == target {
                    hit = Some(v);
                    break;
                }
            }
            hit
        };
        let v = found.ok_or(Error::NoWitness)?;
        let z = crate::linalg::vec_add(f, x, &v);
        debug_assert!(self.adjacent(&z, x) && self.adjacent(&z, y));
        Ok(z)
    }

    /// Affine automorphism mapping arc (x1,y1) to arc (x2,y2):
    /// Phi(z) = P z - (P x1 - x2) with P from the Witt extension on the
    /// isotropic differences.
    pub fn arc_mapping(&self, x1: &[Elt], y1: &[Elt], x2: &[Elt], y2: &[Elt]) -> Result<AffineMap> {
        if !self.adjacent(x1, y1) || !self.adjacent(x2, y2) {
            return Err(Error::NotAnArc);
        }
        let f = self.field();
        let d1 = vec_sub(f, y1, x1);
        let d2 = vec_sub(f, y2, x2);
        let q1 = Mat::from_columns(f, &[d1]);
        let q2 = Mat::from_columns(f, &[d2]);
        let p = self.form.witt_extension(&q1, &q2)?;
        let t = vec_sub(f, &p.mul_vec(x1), x2);
        let map = AffineMap { p, t };
        debug_assert_eq!(map.apply(x1), x2.to_vec());
        debug_assert_eq!(map.apply(y1), y2.to_vec());
        Ok(map)
    }

    /// Exact maximum independent set over all q^n vertices.
    pub fn exact_mis(&self, vertex_budget: u64, node_budget: u64) -> Result<VertexSetCertificate> {
        if self.vertex_count() > vertex_budget {
            return Err(Error::BudgetExceeded("affine graph vertex count"));
        }
        let verts: Vec<Vect> = self.vertices().collect();
        let adj = |i: usize, j: usize| self.adjacent(&verts[i], &verts[j]);
        let r = max_independent_set(verts.len(), &adj, node_budget);
        let chosen: Vec<Vect> = r.set.iter().map(|&i| verts[i].clone()).collect();
        Ok(self.certificate(CertKind::Independent, chosen, Some(r.optimal)))
    }
}

/// Verified image of the lexicographic-product isomorphism onto N(0).
pub struct NeighborhoodIso {
    pub pairs: Vec<((usize, Elt), Vect)>,
    pub verified: bool,
}

/// z -> P z - t.
#[derive(Clone, Debug)]
pub struct AffineMap {
    pub p: Mat,
    pub t: Vect,
}

impl AffineMap {
    pub fn apply(&self, z: &[Elt]) -> Vect {
        vec_sub(&self.p.field, &self.p.mul_vec(z), &self.t)
    }
}

impl QuadricGraph {
    pub fn new(form: SymForm) -> QuadricGraph {
        let class = form.classify();
        let f = form.field.clone();
        let points: Vec<Vect> = form
            .vectors()
            .skip(1)
            .filter(|x| {
                let lead = x.iter().find(|e| !e.is_zero());
                lead == Some(&f.one()) && form.is_isotropic(x)
            })
            .collect();
        QuadricGraph { form, class, points }
    }

    pub fn field(&self) -> &Field {
        &self.form.field
    }

    pub fn graph_id(&self) -> String {
        format!(
            "quadric:{}:n={}:q={}:form={}",
            self.class.kind,
            self.form.n,
            self.field().spec_string(),
            self.form.name
        )
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn adjacent_points(&self, i: usize, j: usize) -> bool {
        i != j && self.form.bilin(&self.points[i], &self.points[j]).is_zero()
    }

    /// Exact maximum independent set (= maximum partial ovoid support).
    pub fn exact_mis(&self, node_budget: u64) -> VertexSetCertificate {
        let adj = |i: usize, j: usize| self.adjacent_points(i, j);
        let r: MisResult = max_independent_set(self.points.len(), &adj, node_budget);
        let vertices: Vec<Vect> = r.set.iter().map(|&i| self.points[i].clone()).collect();
        let verified = self.verify_independent(&vertices);
        VertexSetCertificate {
            kind: CertKind::Independent,
            graph: self.graph_id(),
            size: vertices.len(),
            vertices,
            verified,
            optimal: Some(r.optimal),
        }
    }

    pub fn verify_independent(&self, pts: &[Vect]) -> bool {
        for (i, u) in pts.iter().enumerate() {
            for v in &pts[i + 1..] {
                if self.form.bilin(u, v).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// All q^r vectors in the span of the basis, in code order of coefficients.
pub fn span(f: &Field, basis: &[Vect]) -> Vec<Vect> {
    let q = f.q();
    let r = basis.len();
    let n = basis.first().map_or(0, |b| b.len());
    let total = q.pow(r as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut v = vec![f.zero(); n];
        for b in basis.iter().rev() {
            let coef = f.from_code(code % q);
            code /= q;
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = f.add(vi, &f.mul(&coef, bi));
            }
        }
        out.push(v);
    }
    out.sort_by_key(|v| encode(f, v));
    out.dedup();
    out
}

/// Base-q code of a vector, first coordinate most significant.
pub fn encode(f: &Field, v: &[Elt]) -> u64 {
    v.iter().fold(0, |acc, e| acc * f.q() + f.code(e))
}

pub fn decode(f: &Field, n: usize, mut code: u64) -> Vect {
    let mut v = vec![f.zero(); n];
    for i in (0..n).rev() {
        v[i] = f.from_code(code % f.q());
        code /= f.q();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadspace::named_form;

    fn gf(p: u64) -> Field {
        Field::new(p, 1, None).unwrap()
    }

    fn diag_form(f: &Field, entries: &[i64]) -> SymForm {
        let n = entries.len();
        let mut ints = vec![0i64; n * n];
        for (i, &e) in entries.iter().enumerate() {
            ints[i * n + i] = e;
        }
        SymForm::new(Mat::from_ints(f, n, n, &ints)).unwrap()
    }

    fn vo_minus4_3() -> (AffineGraph, QuadricGraph) {
        let f = gf(3);
        build_graphs(&diag_form(&f, &[1, -1, -1, -1]))
    }

    #[test]
    fn build_graph_examples() {
        let (g, q) = vo_minus4_3();
        assert_eq!(g.vertex_count(), 81);
        assert_eq!(g.valency(), 20);
        assert_eq!(q.point_count(), 10);
        // elliptic n=4 quadric graph is edgeless
        for i in 0..10 {
            for j in 0..10 {
                assert!(!q.adjacent_points(i, j));
            }
        }
        let f = gf(3);
        let (g5, q5) = build_graphs(&diag_form(&f, &[1, 1, 1, 1, 1]));
        assert_eq!(g5.vertex_count(), 243);
        assert_eq!(g5.valency(), 80);
        assert_eq!(q5.point_count(), 40);
        let (_, q1) = build_graphs(&diag_form(&f, &[1, -1]));
        assert_eq!(q1.point_count(), 2);
    }

    #[test]
    fn quadric_point_counts_match_closed_form() {
        for (p, entries) in [(3u64, vec![1i64, -1, -1, -1]), (3, vec![1, 1, 1]), (5, vec![1, -1, 1, -1]), (7, vec![1, 1, 1])] {
            let f = gf(p);
            let form = diag_form(&f, &entries);
            let (_, quad) = build_graphs(&form);
            let expect = (form.isotropic_count(&f.zero()) - 1) / (f.q() as u128 - 1);
            assert_eq!(quad.point_count() as u128, expect);
        }
    }

    #[test]
    fn adjacency_basics() {
        let f = gf(3);
        let g = AffineGraph::new(named_form("minkowski", &f, Some(4)).unwrap());
        let zero = vec![f.zero(); 4];
        assert!(!g.adjacent(&zero, &zero));
        let u = decode(&f, 4, encode(&f, &[f.one(), f.one(), f.zero(), f.zero()]));
        assert!(g.adjacent(&zero, &u));
        assert!(g.adjacent(&u, &zero));
    }

    #[test]
    fn quadric_adjacency_antidiag_example() {
        let f = gf(3);
        let (_, quad) = build_graphs(&named_form("antidiag", &f, Some(5)).unwrap());
        let e1 = quad.points.iter().position(|p| p[0] == f.one() && p[1..].iter().all(|e| e.is_zero())).unwrap();
        let e5 = quad.points.iter().position(|p| p[4] == f.one() && p[..4].iter().all(|e| e.is_zero())).unwrap();
        assert!(!quad.adjacent_points(e1, e5)); // x^T A y = 1
    }

    #[test]
    fn max_clique_sizes() {
        let f = gf(3);
        let g = AffineGraph::new(diag_form(&f, &[1, -1, -1, -1]));
        assert_eq!(g.max_clique().unwrap().size, 3);
        let g5 = AffineGraph::new(diag_form(&f, &[1, 1, 1, 1, 1]));
        assert_eq!(g5.max_clique().unwrap().size, 9);
        let edgeless = AffineGraph::new(diag_form(&f, &[1, 1]));
        assert_eq!(edgeless.max_clique().unwrap().size, 1);
    }

    #[test]
    fn neighborhood_iso_small_cases() {
        let f = gf(3);
        // VO_2^-(3): empty neighborhood, empty bijection
        let (g, q) = build_graphs(&diag_form(&f, &[1, 1]));
        let iso = g.neighborhood_iso(&q);
        assert!(iso.pairs.is_empty() && iso.verified);
        // VO_4^+(3): 16 quadric points, valency 32
        let (g, q) = build_graphs(&diag_form(&f, &[1, -1, 1, -1]));
        let iso = g.neighborhood_iso(&q);
        assert_eq!(iso.pairs.len(), 32);
        assert!(iso.verified);
        assert_eq!(g.valency(), 32);
    }

    #[test]
    fn lexicographic_product_laws() {
        // alpha(Q[K_{q-1}]) = alpha(Q) and omega(Q[K_{q-1}]) = (q-1) omega(Q)
        let f = gf(3);
        let (g, quad) = build_graphs(&diag_form(&f, &[1, -1, 1, -1]));
        let iso = g.neighborhood_iso(&quad);
        let imgs: Vec<Vect> = iso.pairs.iter().map(|(_, v)| v.clone()).collect();
        let n0_adj = |i: usize, j: usize| g.adjacent(&imgs[i], &imgs[j]);
        let alpha_n0 = max_independent_set(imgs.len(), &n0_adj, 1 << 28).set.len();
        let alpha_q = quad.exact_mis(1 << 28).size;
        assert_eq!(alpha_n0, alpha_q);
        let omega_n0 = max_independent_set(imgs.len(), &|i, j| i != j && !n0_adj(i, j), 1 << 28).set.len();
        let omega_q = max_independent_set(quad.point_count(), &|i, j| i != j && !quad.adjacent_points(i, j), 1 << 28)
            .set
            .len();
        assert_eq!(omega_n0, 2 * omega_q);
        assert_eq!(omega_q as u64, quad.class.generator_size);
    }

    #[test]
    fn common_neighbor_cases() {
        let f = gf(3);
        let g = AffineGraph::new(diag_form(&f, &[1, 1, 1]));
        let zero = vec![f.zero(); 3];
        let e1 = decode(&f, 3, 9);
        assert!(!g.adjacent(&zero, &e1));
        let z = g.common_neighbor(&zero, &e1, 0).unwrap();
        assert!(g.adjacent(&z, &zero) && g.adjacent(&z, &e1));
        // adjacent inputs rejected
        let u = decode(&f, 3, encode(&f, &[f.one(), f.one(), f.one()]));
        assert!(g.adjacent(&zero, &u));
        assert!(g.common_neighbor(&zero, &u, 0).is_err());
        // elliptic case has diameter 2 as well
        let (g4, _) = vo_minus4_3();
        let zero4 = vec![f.zero(); 4];
        let y = decode(&f, 4, 27);
        assert!(!g4.adjacent(&zero4, &y));
        let z = g4.common_neighbor(&zero4, &y, 0).unwrap();
        assert!(g4.adjacent(&z, &zero4) && g4.adjacent(&z, &y));
    }

    #[test]
    fn arc_mapping_examples() {
        let f = gf(3);
        let g = AffineGraph::new(diag_form(&f, &[1, 1, 1, 1]));
        let zero = vec![f.zero(); 4];
        let y1 = decode(&f, 4, encode(&f, &[f.one(), f.one(), f.one(), f.zero()]));
        // identity arc
        let m = g.arc_mapping(&zero, &y1, &zero, &y1).unwrap();
        assert_eq!(m.apply(&zero), zero);
        assert_eq!(m.apply(&y1), y1);
        // a second arc
        let y2 = decode(&f, 4, encode(&f, &[f.one(), f.one(), f.from_int(2), f.zero()]));
        assert!(g.adjacent(&zero, &y2));
        let m = g.arc_mapping(&zero, &y1, &zero, &y2).unwrap();
        assert_eq!(m.apply(&y1), y2);
        // automorphism: spot-check edges
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        while checked < 100 {
            let u = decode(&f, 4, rng.gen_range(0..81));
            let v = decode(&f, 4, rng.gen_range(0..81));
            if g.adjacent(&u, &v) {
                assert!(g.adjacent(&m.apply(&u), &m.apply(&v)));
                checked += 1;
            }
        }
        // non-adjacent pair is not an arc
        let e1 = decode(&f, 4, 27);
        assert_eq!(g.arc_mapping(&zero, &e1, &zero, &y1).unwrap_err(), Error::NotAnArc);
    }

    #[test]
    fn exact_mis_examples() {
        let f = gf(3);
        // edgeless VO_2^-(3): alpha = 9
        let g = AffineGraph::new(diag_form(&f, &[1, 1]));
        let cert = g.exact_mis(DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert_eq!(cert.size, 9);
        assert!(cert.verified && cert.optimal == Some(true));
        // Q_4(3): alpha = 10
        let (_, quad) = build_graphs(&diag_form(&f, &[1, 1, 1, 1, 1]));
        let cert = quad.exact_mis(1 << 28);
        assert_eq!(cert.size, 10);
        assert!(cert.verified && cert.optimal == Some(true));
    }

    #[test]
    fn mis_vo4_minus_3_certifies_core() {
        let (g, _) = vo_minus4_3();
        let cert = g.exact_mis(DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap();
        assert!(cert.verified && cert.optimal == Some(true));
        assert!(3 * cert.size < 81);
        assert!(cert.size <= 21);
        // omega * alpha <= |V|
        let omega = g.max_clique().unwrap().size;
        assert!(omega * cert.size <= 81);
    }

    #[test]
    fn no_homomorphism_strictness_vo3() {
        let f = gf(3);
        let g = AffineGraph::new(diag_form(&f, &[1, 1, 1]));
        let alpha_g = g.exact_mis(DEFAULT_VERTEX_BUDGET, 1 << 28).unwrap().size;
        // closed neighborhood of 0
        let mut closed = g.connection_set();
        closed.push(vec![f.zero(); 3]);
        let adj = |i: usize, j: usize| g.adjacent(&closed[i], &closed[j]);
        let alpha_n0 = max_independent_set(closed.len(), &adj, 1 << 28).set.len();
        // alpha(N0)/|N0| > alpha(G)/q^n, cross-multiplied
        assert!(alpha_n0 * 27 > alpha_g * closed.len());
    }

    #[test]
    fn translation_invariance() {
        let f = gf(3);
        let (g, _) = vo_minus4_3();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = decode(&f, 4, 35);
        for _ in 0..200 {
            let u = decode(&f, 4, rng.gen_range(0..81));
            let v = decode(&f, 4, rng.gen_range(0..81));
            let uc = crate::linalg::vec_add(&f, &u, &c);
            let vc = crate::linalg::vec_add(&f, &v, &c);
            assert_eq!(g.adjacent(&u, &v), g.adjacent(&uc, &vc));
        }
    }

    #[test]
    fn regularity_spot_check() {
        let (g, _) = vo_minus4_3();
        let f = gf(3);
        for code in [0u64, 1, 17, 80] {
            let v = decode(&f, 4, code);
            let deg = g.vertices().filter(|u| g.adjacent(u, &v)).count() as u64;
            assert_eq!(deg, g.valency());
        }
    }
}
