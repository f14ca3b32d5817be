//! The Dorroh coring `Ĉ = 𝒞 × A`, comodule lifts and their inverses.
//!
//! Basis of `Ĉ`: the carrier basis `(e_c, 0)` first, then `(0, u_b)`.

use crate::algebra::Bimodule;
use crate::coring::{check_coring_morphism, validate_coring, CoringOverA, Side, TensorChain};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Scalar, SparseRow};
use crate::validation::{first_failing, ValidationReport};

#[derive(Clone, Debug)]
pub struct DorrohCoring {
    pub base: CoringOverA,
    pub coring: CoringOverA,
    /// `ι: A → Ĉ`, `a ↦ (0, a)`.
    pub embedding: DenseMatrix,
    /// `π: Ĉ → 𝒞`, dropping the `A` component.
    pub projection: DenseMatrix,
}

impl DorrohCoring {
    /// Index of `(0, u_b)`.
    pub fn algebra_index(&self, b: usize) -> usize {
        self.base.dim() + b
    }

    /// Terms of `(0, 1_A)`.
    pub fn unit_terms(&self) -> SparseRow {
        let unit = self.base.algebra().unit().expect("checked in build_dorroh");
        unit.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(b, v)| (self.algebra_index(b), v.clone()))
            .collect()
    }
}

fn block_diag(top: &DenseMatrix, bottom: &DenseMatrix) -> DenseMatrix {
    let (m, d) = (top.rows(), bottom.rows());
    let mut out = DenseMatrix::zeros(top.field(), m + d, m + d);
    for r in 0..m {
        for c in 0..m {
            out.set(r, c, top.get(r, c).clone());
        }
    }
    for r in 0..d {
        for c in 0..d {
            out.set(m + r, m + c, bottom.get(r, c).clone());
        }
    }
    out
}

/// `Δ̂(c,a) = Σ(c₁,0)⊗(c₂,0) + (0,1)⊗(c,a) + (c,a)⊗(0,1) − (0,a)⊗(0,1)` and
/// `ε̂(c,a) = a`.
pub fn build_dorroh(cr: &CoringOverA) -> Result<DorrohCoring> {
    let alg = cr.algebra();
    let unit = alg.require_unit().map_err(|_| Error::NotUnital)?;
    let f = cr.field();
    let m = cr.dim();
    let da = alg.dim();
    let big = m + da;
    let carrier = cr.carrier();
    let left = (0..da)
        .map(|a| block_diag(&carrier.left[a], &alg.left_multiplication(&alg.basis_vector(a))))
        .collect();
    let right = (0..da)
        .map(|a| block_diag(&carrier.right[a], &alg.right_multiplication(&alg.basis_vector(a))))
        .collect();
    let hat = Bimodule {
        field: f,
        dim: big,
        left,
        right,
    };
    let one: Vec<(usize, Scalar)> = unit
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(b, v)| (m + b, v.clone()))
        .collect();
    let mut delta = Vec::with_capacity(big);
    for c in 0..m {
        let mut row: SparseRow = cr
            .delta_terms(c)
            .iter()
            .map(|(i, v)| ((i / m) * big + i % m, v.clone()))
            .collect();
        row.extend(one.iter().map(|(u, v)| (u * big + c, v.clone())));
        row.extend(one.iter().map(|(u, v)| (c * big + u, v.clone())));
        delta.push(row);
    }
    for b in 0..da {
        delta.push(one.iter().map(|(u, v)| (u * big + m + b, v.clone())).collect());
    }
    let mut counit = DenseMatrix::zeros(f, da, big);
    let mut embedding = DenseMatrix::zeros(f, big, da);
    for b in 0..da {
        counit.set(b, m + b, f.one());
        embedding.set(m + b, b, f.one());
    }
    let mut projection = DenseMatrix::zeros(f, m, big);
    for c in 0..m {
        projection.set(c, c, f.one());
    }
    let coring = CoringOverA::new(format!("{}^", cr.name()), alg.clone(), hat, delta, Some(counit))?;
    Ok(DorrohCoring {
        base: cr.clone(),
        coring,
        embedding,
        projection,
    })
}

/// Counital coring axioms of `Ĉ`, `π` as a coring morphism onto the base,
/// and `ι` injective, bilinear with `ε̂∘ι = id_A`.
pub fn validate_dorroh(d: &DorrohCoring) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.extend_prefixed("coring", validate_coring(&d.coring));
    report.push("counit_present", d.coring.counit().is_none().then(Vec::new));
    let alg = d.base.algebra();
    let id_a = DenseMatrix::identity(d.base.field(), alg.dim());
    report.extend_prefixed(
        "projection",
        check_coring_morphism(&d.projection, &id_a, &d.coring, &d.base),
    );
    report.push("embedding_injective", (d.embedding.rank() != alg.dim()).then(Vec::new));
    let hat = d.coring.carrier();
    let w = first_failing(alg.dim(), |a| {
        let e = alg.basis_vector(a);
        let l = d.embedding.mul(&alg.left_multiplication(&e)).expect("shapes")
            == hat.left[a].mul(&d.embedding).expect("shapes");
        let r = d.embedding.mul(&alg.right_multiplication(&e)).expect("shapes")
            == hat.right[a].mul(&d.embedding).expect("shapes");
        l && r
    });
    report.push("embedding_bilinear", w);
    if let Some(e) = d.coring.counit() {
        report.push("counit_after_embedding", (e.mul(&d.embedding).expect("shapes") != id_a).then(Vec::new));
    }
    report
}

/// `K = 𝒞 × {0}`: a subbimodule with `ε̂(K) = 0` and
/// `Δ̂(K) ⊆ K⊗_AĈ + Ĉ⊗_AK`.
pub fn check_coideal_embedding(d: &DorrohCoring) -> ValidationReport {
    let m = d.base.dim();
    let big = d.coring.dim();
    let mut report = ValidationReport::new();
    let hat = d.coring.carrier();
    let w = first_failing(m, |c| {
        hat.left
            .iter()
            .chain(&hat.right)
            .all(|mat| (m..big).all(|r| mat.get(r, c).is_zero()))
    });
    report.push("subbimodule", w);
    let w = match d.coring.counit() {
        Some(e) => first_failing(m, |c| e.column(c).iter().all(Scalar::is_zero)),
        None => Some(Vec::new()),
    };
    report.push("counit_vanishes", w);

    let mut span = d.coring.pair_tensor().quotient().relations().clone();
    let f = d.coring.field();
    for p in 0..big {
        for q in 0..big {
            if p < m || q < m {
                span.insert([(p * big + q, f.one())]);
            }
        }
    }
    let w = first_failing(m, |c| span.contains(d.coring.delta_terms(c).iter().cloned()));
    report.push("comultiplication_in_coideal_sum", w);
    report
}

/// A right comodule (`module ⊗_A 𝒞`, index `x·m + k`) or a left comodule
/// (`𝒞 ⊗_A module`, index `k·dim + x`) over a coring with carrier dimension
/// `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleOverCoring {
    pub side: Side,
    pub module: Bimodule,
    pub coaction: Vec<SparseRow>,
}

impl ComoduleOverCoring {
    /// `𝒞` over itself with `Δ` as coaction.
    pub fn regular(cr: &CoringOverA, side: Side) -> Self {
        let module = match side {
            Side::Right => cr.carrier().right_only(),
            Side::Left => cr.carrier().left_only(),
        };
        ComoduleOverCoring {
            side,
            module,
            coaction: (0..cr.dim()).map(|c| cr.delta_terms(c).to_vec()).collect(),
        }
    }

    pub fn zero(cr: &CoringOverA, side: Side) -> Self {
        let z = Bimodule::zero(cr.field(), cr.algebra().dim());
        let module = match side {
            Side::Right => z.right_only(),
            Side::Left => z.left_only(),
        };
        ComoduleOverCoring {
            side,
            module,
            coaction: Vec::new(),
        }
    }

    fn split(&self, i: usize, m: usize) -> (usize, usize) {
        match self.side {
            Side::Right => (i / m, i % m),
            Side::Left => (i % self.module.dim, i / self.module.dim),
        }
    }

    /// `(module index, coring index, coefficient)` terms of `ϱ(e_x)`.
    fn terms(&self, x: usize, m: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.coaction[x].iter().map(move |(i, v)| {
            let (y, k) = self.split(*i, m);
            (y, k, v)
        })
    }
}

fn comodule_chain(cr: &CoringOverA, comod: &ComoduleOverCoring, copies: usize) -> Result<TensorChain> {
    let mut factors = vec![cr.carrier(); copies];
    match comod.side {
        Side::Right => factors.insert(0, &comod.module),
        Side::Left => factors.push(&comod.module),
    }
    TensorChain::new(&factors)
}

/// Linearity and coassociativity of the coaction; counitality when the
/// coring stores a counit.
pub fn validate_comodule(cr: &CoringOverA, comod: &ComoduleOverCoring) -> ValidationReport {
    let mut report = ValidationReport::new();
    let m = cr.dim();
    let dim = comod.module.dim;
    let ok_shape = comod.coaction.len() == dim
        && comod.coaction.iter().flatten().all(|(i, _)| *i < dim * m);
    report.push("shape", (!ok_shape).then(Vec::new));
    if !ok_shape {
        return report;
    }
    report.extend_prefixed("module", comod.module.validate(cr.algebra()));
    let (pair, triple) = match (comodule_chain(cr, comod, 1), comodule_chain(cr, comod, 2)) {
        (Ok(p), Ok(t)) => (p, t),
        _ => {
            report.push("module_actions", Some(Vec::new()));
            return report;
        }
    };
    let put = |y: usize, k: usize| match comod.side {
        Side::Right => vec![y, k],
        Side::Left => vec![k, y],
    };

    // ϱ(x·a) = ϱ(x)·a (right comodule) or ϱ(a·x) = a·ϱ(x) (left comodule)
    let (mod_act, coring_act) = match comod.side {
        Side::Right => (&comod.module.right, &cr.carrier().right),
        Side::Left => (&comod.module.left, &cr.carrier().left),
    };
    let mut w = None;
    'lin: for a in 0..cr.algebra().dim() {
        let mcols = crate::coring::sparse_columns(&mod_act[a]);
        let ccols = crate::coring::sparse_columns(&coring_act[a]);
        for x in 0..dim {
            let mut diff = Vec::new();
            for (x2, v) in &mcols[x] {
                diff.extend(comod.terms(*x2, m).map(|(y, k, w)| (put(y, k), v * w)));
            }
            for (y, k, v) in comod.terms(x, m) {
                diff.extend(ccols[k].iter().map(|(k2, w)| (put(y, *k2), -(v * w))));
            }
            if !pair.is_zero_class(diff) {
                w = Some(vec![a, x]);
                break 'lin;
            }
        }
    }
    report.push("coaction_linear", w);

    let w = first_failing(dim, |x| {
        let mut diff: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for (y, k, v) in comod.terms(x, m) {
            // coaction applied again to the module leg
            for (y2, k2, w) in comod.terms(y, m) {
                let idx = match comod.side {
                    Side::Right => vec![y2, k2, k],
                    Side::Left => vec![k, k2, y2],
                };
                diff.push((idx, v * w));
            }
            // comultiplication applied to the coring leg
            for (i, w) in cr.delta_terms(k) {
                let (p, q) = (i / m, i % m);
                let idx = match comod.side {
                    Side::Right => vec![y, p, q],
                    Side::Left => vec![p, q, y],
                };
                diff.push((idx, -(v * w)));
            }
        }
        triple.is_zero_class(diff)
    });
    report.push("coassociativity", w);

    if let Some(e) = cr.counit() {
        let f = cr.field();
        let w = first_failing(dim, |x| {
            let mut total = vec![f.zero(); dim];
            for (y, k, v) in comod.terms(x, m) {
                let act = match comod.side {
                    Side::Right => comod.module.right_matrix(&e.column(k)),
                    Side::Left => comod.module.left_matrix(&e.column(k)),
                };
                for (t, u) in total.iter_mut().zip(act.column(y)) {
                    *t += &(v * &u);
                }
            }
            total.iter().enumerate().all(|(i, v)| if i == x { v.is_one() } else { v.is_zero() })
        });
        report.push("counitality", w);
    }
    report
}

fn require_coassociative(cr: &CoringOverA, comod: &ComoduleOverCoring) -> Result<()> {
    let r = validate_comodule(cr, comod);
    match r.first_failure() {
        Some(chk) => Err(Error::InvariantFailure(format!("comodule fails {}", chk.name))),
        None => Ok(()),
    }
}

fn lift(d: &DorrohCoring, comod: &ComoduleOverCoring) -> ComoduleOverCoring {
    let m = d.base.dim();
    let big = d.coring.dim();
    let dim = comod.module.dim;
    let one = d.unit_terms();
    let idx = |y: usize, k: usize| match comod.side {
        Side::Right => y * big + k,
        Side::Left => k * dim + y,
    };
    let coaction = (0..dim)
        .map(|x| {
            let mut row: SparseRow = comod.terms(x, m).map(|(y, k, v)| (idx(y, k), v.clone())).collect();
            row.extend(one.iter().map(|(u, v)| (idx(x, *u), v.clone())));
            row
        })
        .collect();
    ComoduleOverCoring {
        side: comod.side,
        module: comod.module.clone(),
        coaction,
    }
}

/// `m ↦ Σ m₀⊗(m₁,0) + m⊗(0,1_A)`.
pub fn lift_right_comodule(d: &DorrohCoring, comod: &ComoduleOverCoring) -> Result<ComoduleOverCoring> {
    if comod.side != Side::Right {
        return Err(Error::InvalidParameter("expected a right comodule".into()));
    }
    require_coassociative(&d.base, comod)?;
    Ok(lift(d, comod))
}

/// `n ↦ Σ (n₋₁,0)⊗n₀ + (0,1_A)⊗n`.
pub fn lift_left_comodule(d: &DorrohCoring, comod: &ComoduleOverCoring) -> Result<ComoduleOverCoring> {
    if comod.side != Side::Left {
        return Err(Error::InvalidParameter("expected a left comodule".into()));
    }
    require_coassociative(&d.base, comod)?;
    Ok(lift(d, comod))
}

/// Applies `π` to the coring leg of a coaction over `Ĉ`.
pub fn forget(d: &DorrohCoring, comod: &ComoduleOverCoring) -> ComoduleOverCoring {
    let m = d.base.dim();
    let big = d.coring.dim();
    let dim = comod.module.dim;
    let coaction = (0..dim)
        .map(|x| {
            comod
                .terms(x, big)
                .filter(|(_, k, _)| *k < m)
                .map(|(y, k, v)| match comod.side {
                    Side::Right => (y * m + k, v.clone()),
                    Side::Left => (k * dim + y, v.clone()),
                })
                .collect()
        })
        .collect();
    ComoduleOverCoring {
        side: comod.side,
        module: comod.module.clone(),
        coaction,
    }
}

/// A `(𝒟, 𝒞)`-bicomodule on one bimodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicomodule {
    pub module: Bimodule,
    /// Over `𝒟 ⊗ module`, index `k·dim + x`.
    pub left_coaction: Vec<SparseRow>,
    /// Over `module ⊗ 𝒞`, index `x·m + k`.
    pub right_coaction: Vec<SparseRow>,
}

impl Bicomodule {
    /// A coring over itself, with `Δ` on both sides.
    pub fn regular(cr: &CoringOverA) -> Self {
        let delta: Vec<SparseRow> = (0..cr.dim()).map(|c| cr.delta_terms(c).to_vec()).collect();
        Bicomodule {
            module: cr.carrier().clone(),
            left_coaction: delta.clone(),
            right_coaction: delta,
        }
    }

    pub fn zero(cr: &CoringOverA) -> Self {
        Bicomodule {
            module: Bimodule::zero(cr.field(), cr.algebra().dim()),
            left_coaction: Vec::new(),
            right_coaction: Vec::new(),
        }
    }

    pub fn left_part(&self) -> ComoduleOverCoring {
        ComoduleOverCoring {
            side: Side::Left,
            module: self.module.clone(),
            coaction: self.left_coaction.clone(),
        }
    }

    pub fn right_part(&self) -> ComoduleOverCoring {
        ComoduleOverCoring {
            side: Side::Right,
            module: self.module.clone(),
            coaction: self.right_coaction.clone(),
        }
    }
}

/// Both one-sided comodule checks and `(ϱ^𝒟⊗id)∘ϱ^𝒞 = (id⊗ϱ^𝒞)∘ϱ^𝒟`.
pub fn validate_bicomodule(dl: &CoringOverA, cr: &CoringOverA, b: &Bicomodule) -> ValidationReport {
    let mut report = ValidationReport::new();
    report.extend_prefixed("left", validate_comodule(dl, &b.left_part()));
    report.extend_prefixed("right", validate_comodule(cr, &b.right_part()));
    if !report.passed() {
        return report;
    }
    let chain = match TensorChain::new(&[dl.carrier(), &b.module, cr.carrier()]) {
        Ok(c) => c,
        Err(_) => {
            report.push("compatibility", Some(Vec::new()));
            return report;
        }
    };
    let (l, r) = (b.left_part(), b.right_part());
    let (md, mc) = (dl.dim(), cr.dim());
    let w = first_failing(b.module.dim, |x| {
        let mut diff: Vec<(Vec<usize>, Scalar)> = Vec::new();
        for (y, k, v) in r.terms(x, mc) {
            diff.extend(l.terms(y, md).map(|(y2, p, w)| (vec![p, y2, k], v * w)));
        }
        for (y, p, v) in l.terms(x, md) {
            diff.extend(r.terms(y, mc).map(|(y2, k, w)| (vec![p, y2, k], -(v * w))));
        }
        chain.is_zero_class(diff)
    });
    report.push("compatibility", w);
    report
}

/// Lifts both coactions to the Dorroh corings.
pub fn lift_bicomodule(dl: &DorrohCoring, cr: &DorrohCoring, b: &Bicomodule) -> Result<Bicomodule> {
    let r = validate_bicomodule(&dl.base, &cr.base, b);
    if let Some(chk) = r.first_failure() {
        return Err(Error::InvariantFailure(format!("bicomodule fails {}", chk.name)));
    }
    Ok(Bicomodule {
        module: b.module.clone(),
        left_coaction: lift(dl, &b.left_part()).coaction,
        right_coaction: lift(cr, &b.right_part()).coaction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::Corpus;
    use crate::coring::induce_coring;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    fn dorroh_of(entry: Corpus) -> DorrohCoring {
        build_dorroh(&induce_coring(&entry.build(Q).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn counit_reads_algebra_component() {
        let d = dorroh_of(Corpus::Grouplike(2));
        let e = d.coring.counit().unwrap();
        assert_eq!(e.column(0), vec![Q.zero(); 2]);
        assert_eq!(e.column(2), vec![Q.one(), Q.zero()]);
    }

    #[test]
    fn delta_of_unit_is_unit_tensor_unit() {
        let d = dorroh_of(Corpus::DualNumbers);
        let big = d.coring.dim();
        let one = d.unit_terms();
        let pair = d.coring.pair_tensor();
        let mut lhs: SparseRow = Vec::new();
        for (u, v) in &one {
            lhs.extend(d.coring.delta_terms(*u).iter().map(|(i, w)| (*i, v * w)));
        }
        for (u, v) in &one {
            for (u2, w) in &one {
                lhs.push((u * big + u2, -(v * w)));
            }
        }
        assert!(pair.is_zero_class(lhs));
    }

    #[test]
    fn dorroh_of_dualnumbers_is_counital() {
        let d = dorroh_of(Corpus::DualNumbers);
        assert_eq!(d.coring.dim(), 4);
        let r = validate_dorroh(&d);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(check_coideal_embedding(&d).passed());
    }

    #[test]
    fn perturbed_counit_breaks_coideal() {
        let c = Corpus::Grouplike(2).build(Q).unwrap();
        let d = build_dorroh(&induce_coring(&c).unwrap()).unwrap();
        let unit = d.base.algebra().unit().unwrap().to_vec();
        let mut e = d.coring.counit().unwrap().clone();
        for (col, eps) in c.epsilon().unwrap().iter().enumerate() {
            for (a, u) in unit.iter().enumerate() {
                e.add_to(a, col, &(eps * u));
            }
        }
        let bad = DorrohCoring {
            coring: d.coring.clone().with_counit(Some(e)).unwrap(),
            ..d
        };
        let r = check_coideal_embedding(&bad);
        assert!(!r.check_passed("counit_vanishes"));
        assert_eq!(r.get("counit_vanishes").unwrap().witness, Some(vec![0]));
    }

    #[test]
    fn regular_comodule_lifts_and_forgets() {
        let d = dorroh_of(Corpus::DualNumbers);
        for side in [Side::Right, Side::Left] {
            let reg = ComoduleOverCoring::regular(&d.base, side);
            let base_report = validate_comodule(&d.base, &reg);
            assert!(base_report.passed());
            let lifted = match side {
                Side::Right => lift_right_comodule(&d, &reg).unwrap(),
                Side::Left => lift_left_comodule(&d, &reg).unwrap(),
            };
            let r = validate_comodule(&d.coring, &lifted);
            assert!(r.passed(), "{side:?}: {:?}", r.first_failure());
            assert!(r.check_passed("counitality"));
            assert_eq!(forget(&d, &lifted), reg);
        }
    }

    #[test]
    fn zero_comodule_lifts() {
        let d = dorroh_of(Corpus::Trivial);
        let z = ComoduleOverCoring::zero(&d.base, Side::Right);
        let lifted = lift_right_comodule(&d, &z).unwrap();
        assert!(validate_comodule(&d.coring, &lifted).passed());
    }

    #[test]
    fn wrong_side_rejected() {
        let d = dorroh_of(Corpus::Trivial);
        let reg = ComoduleOverCoring::regular(&d.base, Side::Left);
        assert!(lift_right_comodule(&d, &reg).is_err());
    }

    #[test]
    fn bicomodule_lifts() {
        let d = dorroh_of(Corpus::Grouplike(2));
        let b = Bicomodule::regular(&d.base);
        let lifted = lift_bicomodule(&d, &d, &b).unwrap();
        let r = validate_bicomodule(&d.coring, &d.coring, &lifted);
        assert!(r.passed(), "{:?}", r.first_failure());

        let zero_left = Bicomodule {
            left_coaction: vec![Vec::new(); 2],
            ..b
        };
        let lifted = lift_bicomodule(&d, &d, &zero_left).unwrap();
        assert!(validate_bicomodule(&d.coring, &d.coring, &lifted).passed());

        let z = Bicomodule::zero(&d.base);
        let lifted = lift_bicomodule(&d, &d, &z).unwrap();
        assert!(validate_bicomodule(&d.coring, &d.coring, &lifted).passed());
    }
}
