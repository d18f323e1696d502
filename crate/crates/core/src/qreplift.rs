//! The quantum representation `ρ_d : U_q(gl(m|n)) → End(V_q^{⊗d})` over `Q(q)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::kostant::dimension_count;
use crate::linalg::{bareiss_rank, densify, solve_in_span};
use crate::matrix::SparseMatrix;
use crate::qalgebra::{
    basis_term, enumerate_basis_yq, expand_root_vector, identity_catalogue, qa_pow, QAlgebraError, QAtom, QBasisElement,
    QExpr, QPoly, QTerm, Letter,
};
use crate::qfield::{gaussian_binomial, laurent_gcd, specialize, LaurentPoly, Rational, RatFn};
use crate::replift::{compare, first_failure, integer_vector, super_bracket, tensor_action, weight_projection, TensorBasis};
use crate::report::VerificationReport;
use crate::superroot::{all_roots, enumerate_weights, simple_root, Dims, RootError, Weight};

pub type QMatrix = SparseMatrix<RatFn>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QReplError {
    #[error(transparent)]
    Algebra(#[from] QAlgebraError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("weight {0} is not in Λ(m|n,d)")]
    NotInLambda(Weight),
    #[error("specialization point must avoid 0, 1 and -1")]
    BadSpecialization,
    #[error("image lies outside the span of the basis images")]
    OutsideSpan,
}

fn qa(dims: &Dims, a: usize, k: i64) -> RatFn {
    RatFn::from_poly(qa_pow(dims, a, k))
}

fn int(c: i64) -> RatFn {
    RatFn::from_int(c)
}

/// Images of the generators and of the derived elements, with caches for root vectors and atoms.
pub struct QRep {
    dims: Dims,
    basis: TensorBasis,
    letters: HashMap<Letter, QMatrix>,
    roots: Mutex<HashMap<(usize, usize), Arc<QMatrix>>>,
    atoms: Mutex<HashMap<QAtom, Arc<QMatrix>>>,
}

impl QRep {
    pub fn new(dims: &Dims) -> Self {
        let basis = TensorBasis::new(dims);
        let r = dims.rank();
        let eigen = |a: usize, sgn: i64| move |b: u8| if b as usize == a { qa(dims, a, sgn) } else { int(1) };
        let mut letters = HashMap::new();
        for a in 1..=r {
            letters.insert(Letter::K(a), k_diagonal(dims, &basis, a, 1));
            letters.insert(Letter::KInv(a), k_diagonal(dims, &basis, a, -1));
        }
        for a in 1..r {
            let p = dims.simple_root_parity(a);
            // Δ(E_a) = E_a ⊗ K_a^{-1} K_{a+1} + 1 ⊗ E_a
            let (ka_inv, ka1) = (eigen(a, -1), eigen(a + 1, 1));
            let e = tensor_action(
                &basis,
                p,
                |x| (x as usize == a + 1).then(|| (a as u8, int(1))),
                |_| int(1),
                |x| &ka_inv(x) * &ka1(x),
            );
            // Δ(F_a) = F_a ⊗ 1 + K_a K_{a+1}^{-1} ⊗ F_a
            let (ka, ka1_inv) = (eigen(a, 1), eigen(a + 1, -1));
            let f = tensor_action(
                &basis,
                p,
                |x| (x as usize == a).then(|| (a as u8 + 1, int(1))),
                |x| &ka(x) * &ka1_inv(x),
                |_| int(1),
            );
            letters.insert(Letter::E(a), e);
            letters.insert(Letter::F(a), f);
        }
        Self {
            dims: *dims,
            basis,
            letters,
            roots: Mutex::new(HashMap::new()),
            atoms: Mutex::new(HashMap::new()),
        }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn basis(&self) -> &TensorBasis {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn identity(&self) -> QMatrix {
        QMatrix::identity(self.size())
    }

    pub fn zero(&self) -> QMatrix {
        QMatrix::zeros(self.size(), self.size())
    }

    pub fn letter(&self, l: Letter) -> Result<&QMatrix, QReplError> {
        l.validate(&self.dims)?;
        Ok(&self.letters[&l])
    }

    fn gen(&self, l: Letter) -> &QMatrix {
        &self.letters[&l]
    }

    /// `ρ(K_a^exp)`.
    pub fn k_power(&self, a: usize, exp: i64) -> QMatrix {
        k_diagonal(&self.dims, &self.basis, a, exp)
    }

    /// `ρ(E_{a,b})` with the default intermediate index.
    pub fn root_vector(&self, a: usize, b: usize) -> Arc<QMatrix> {
        if let Some(m) = self.roots.lock().expect("cache lock").get(&(a, b)) {
            return m.clone();
        }
        let m = Arc::new(self.root_vector_via(a, b, None).expect("valid root"));
        self.roots.lock().expect("cache lock").insert((a, b), m.clone());
        m
    }

    /// `ρ(E_{a,b})` through the recursion with outermost intermediate index `via`.
    pub fn root_vector_via(&self, a: usize, b: usize, via: Option<usize>) -> Result<QMatrix, QReplError> {
        self.dims.check_index(a)?;
        self.dims.check_index(b)?;
        if a == b {
            return Err(RootError::DegenerateRoot(a).into());
        }
        if b == a + 1 {
            return Ok(self.gen(Letter::E(a)).clone());
        }
        if a == b + 1 {
            return Ok(self.gen(Letter::F(b)).clone());
        }
        let c = via.unwrap_or(a.min(b) + 1);
        if c <= a.min(b) || c >= a.max(b) {
            return Err(QAlgebraError::BadVia { a, b, c }.into());
        }
        let left = self.root_vector(a, c);
        let right = self.root_vector(c, b);
        let k = if a < b { -1 } else { 1 };
        Ok(left.mul(&right).sub(&right.mul(&left).scale(&qa(&self.dims, c, k))))
    }

    /// `ρ(E_{a,b})^M / [M]!`; zero for an odd root and `M >= 2`.
    pub fn divided(&self, a: usize, b: usize, power: u32) -> QMatrix {
        let atom = QAtom::root(a, b, power);
        if atom.vanishes(&self.dims) {
            return self.zero();
        }
        let f = RatFn::from_poly(crate::qfield::quantum_factorial(power));
        self.root_vector(a, b)
            .pow(power)
            .scale(&f.inv().expect("[M]! is nonzero"))
    }

    /// `ρ([K_a; c over t])`, by the defining product.
    pub fn k_binom(&self, a: usize, c: i64, t: u32) -> QMatrix {
        self.binom_product(a, &self.k_power(a, 1), &self.k_power(a, -1), c, t)
    }

    /// `ρ([K_{a,b}; c over t])`, by the defining product in `q_a`.
    pub fn k_pair_binom(&self, a: usize, b: usize, c: i64, t: u32) -> QMatrix {
        let x = self.k_power(a, 1).mul(&self.k_power(b, -1));
        let xi = self.k_power(a, -1).mul(&self.k_power(b, 1));
        self.binom_product(a, &x, &xi, c, t)
    }

    fn binom_product(&self, a: usize, x: &QMatrix, xi: &QMatrix, c: i64, t: u32) -> QMatrix {
        let dims = &self.dims;
        (1..=t as i64).fold(self.identity(), |acc, s| {
            let den = (&qa(dims, a, s) - &qa(dims, a, -s)).inv().expect("q_a^s != q_a^-s");
            let factor = x.scale(&qa(dims, a, c - s + 1)).sub(&xi.scale(&qa(dims, a, -c + s - 1)));
            acc.mul(&factor.scale(&den))
        })
    }

    /// `ρ(K_μ) = Π_a ρ([K_a over μ_a])`.
    pub fn k_mu(&self, mu: &Weight) -> QMatrix {
        (1..=self.dims.rank()).fold(self.identity(), |acc, a| acc.mul(&self.k_binom(a, 0, mu.at(a) as u32)))
    }

    /// `ρ(1_λ)`, computed as `ρ(K_λ)` and checked against the weight-space projection.
    pub fn idempotent(&self, lambda: &Weight) -> Result<Arc<QMatrix>, QReplError> {
        if !lambda.in_lambda(&self.dims) {
            return Err(QReplError::NotInLambda(lambda.clone()));
        }
        let m = self.atom(&QAtom::Idem(lambda.clone()));
        let projection: QMatrix = weight_projection(&self.basis, lambda);
        assert_eq!(*m, projection, "K_λ differs from weight projection at {lambda}");
        Ok(m)
    }

    /// `1_λ` if `λ ∈ Λ(m|n,d)`, otherwise zero.
    pub fn idempotent_or_zero(&self, lambda: &Weight) -> QMatrix {
        match self.idempotent(lambda) {
            Ok(m) => (*m).clone(),
            Err(_) => self.zero(),
        }
    }

    /// The image of one atom, cached.
    pub fn atom(&self, atom: &QAtom) -> Arc<QMatrix> {
        if let Some(m) = self.atoms.lock().expect("cache lock").get(atom) {
            return m.clone();
        }
        let m = match atom {
            QAtom::Root { a, b, power } => self.divided(*a, *b, *power),
            QAtom::K { a, exp } => self.k_power(*a, *exp),
            QAtom::KPair { a, b, exp } => self.k_power(*a, *exp).mul(&self.k_power(*b, -exp)),
            QAtom::KBinom { a, c, t } => self.k_binom(*a, *c, *t),
            QAtom::KPairBinom { a, b, c, t } => self.k_pair_binom(*a, *b, *c, *t),
            QAtom::Idem(l) => self.k_mu(l),
        };
        let m = Arc::new(m);
        self.atoms.lock().expect("cache lock").insert(atom.clone(), m.clone());
        m
    }

    pub fn term(&self, t: &QTerm) -> QMatrix {
        if t.is_zero(&self.dims) {
            return self.zero();
        }
        let mut acc = self.identity().scale(&t.coeff);
        for a in &t.atoms {
            acc = acc.mul(&self.atom(a));
        }
        acc
    }

    pub fn poly(&self, p: &QPoly) -> QMatrix {
        p.terms.iter().fold(self.zero(), |acc, t| acc.add(&self.term(t)))
    }

    /// The image of a linear combination of words.
    pub fn eval_expr(&self, x: &QExpr) -> Result<QMatrix, QReplError> {
        let mut acc = self.zero();
        for (w, c) in x.terms() {
            let mut m = self.identity().scale(c);
            for l in &w.0 {
                m = m.mul(self.letter(*l)?);
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }

    /// `ρ(E_A 1_λ F_C)`.
    pub fn basis_image(&self, y: &QBasisElement) -> QMatrix {
        self.term(&basis_term(&self.dims, y))
    }
}

/// Diagonal matrix of `K_a^exp`: `q_a^{exp · r_a}` on a tensor index with occupancy `r`.
fn k_diagonal(dims: &Dims, basis: &TensorBasis, a: usize, exp: i64) -> QMatrix {
    QMatrix::from_diagonal((0..basis.len()).map(|k| qa(dims, a, exp * basis.occupancy(k).at(a))))
}

pub fn rho_q_generator(dims: &Dims, g: Letter) -> Result<QMatrix, QReplError> {
    Ok(QRep::new(dims).letter(g)?.clone())
}

pub fn rho_q_divided(dims: &Dims, a: usize, b: usize, power: u32) -> Result<QMatrix, QReplError> {
    dims.check_index(a)?;
    dims.check_index(b)?;
    if a == b {
        return Err(RootError::DegenerateRoot(a).into());
    }
    Ok(QRep::new(dims).divided(a, b, power))
}

pub fn rho_q_k_binom(dims: &Dims, a: usize, c: i64, t: u32) -> Result<QMatrix, QReplError> {
    dims.check_index(a)?;
    Ok(QRep::new(dims).k_binom(a, c, t))
}

pub fn rho_q_idempotent(dims: &Dims, lambda: &Weight) -> Result<QMatrix, QReplError> {
    Ok((*QRep::new(dims).idempotent(lambda)?).clone())
}

/// Checks every defining relation of both quantum presentations and the minimal polynomial of each `K_a`.
pub fn verify_relations_quantum(dims: &Dims) -> VerificationReport {
    let rep = QRep::new(dims);
    let mut report = VerificationReport::new(format!("quantum relations, {dims}"));
    let r = dims.rank();
    let m = dims.m();
    let gen = |l: Letter| rep.gen(l);
    let k = |a: usize, e: i64| rep.k_power(a, e);
    let q = |a: usize, e: i64| qa(dims, a, e);
    let pairs = |lo: usize, hi: usize| (lo..=hi).flat_map(move |a| (lo..=hi).map(move |b| (a, b)));

    let mut outcomes = Vec::new();
    for (a, b) in pairs(1, r) {
        for (x, y) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            outcomes.push(compare(&k(a, x).mul(&k(b, y)), &k(b, y).mul(&k(a, x)), format!("K{a}^{x} K{b}^{y}")));
        }
    }
    for a in 1..=r {
        outcomes.push(compare(&gen(Letter::K(a)).mul(gen(Letter::KInv(a))), &rep.identity(), format!("K{a} K{a}^-1")));
        outcomes.push(compare(&gen(Letter::KInv(a)).mul(gen(Letter::K(a))), &rep.identity(), format!("K{a}^-1 K{a}")));
    }
    report.record("k-commute", "K_a^M K_b^N = K_b^N K_a^M, K_a K_a^{-1} = K_a^{-1} K_a = 1", first_failure(outcomes));

    let delta = |x: usize, y: usize| i64::from(x == y);
    let mut outcomes = Vec::new();
    for a in 1..=r {
        for b in 1..r {
            let ex = delta(a, b) - delta(a, b + 1);
            let ka = gen(Letter::K(a));
            let (e, f) = (gen(Letter::E(b)), gen(Letter::F(b)));
            outcomes.push(compare(&ka.mul(e), &e.mul(ka).scale(&q(a, ex)), format!("K{a} E{b}")));
            outcomes.push(compare(&ka.mul(f), &f.mul(ka).scale(&q(a, -ex)), format!("K{a} F{b}")));
        }
    }
    report.record(
        "k-root-weight",
        "K_a E_{b,b+1} = q_a^{δ_ab - δ_a,b+1} E_{b,b+1} K_a, K_a E_{b+1,b} = q_a^{δ_a,b+1 - δ_ab} E_{b+1,b} K_a",
        first_failure(outcomes),
    );

    let mut outcomes = Vec::new();
    for (a, b) in pairs(1, r - 1) {
        let (pa, pb) = (dims.simple_root_parity(a), dims.simple_root_parity(b));
        let lhs = super_bracket(gen(Letter::E(a)), pa, gen(Letter::F(b)), pb);
        let rhs = if a == b {
            let den = (&q(a, 1) - &q(a, -1)).inv().expect("nonzero");
            k(a, 1).mul(&k(a + 1, -1)).sub(&k(a, -1).mul(&k(a + 1, 1))).scale(&den)
        } else {
            rep.zero()
        };
        outcomes.push(compare(&lhs, &rhs, format!("[E{a}, F{b}]")));
        if a.abs_diff(b) > 1 {
            for l in [Letter::E as fn(usize) -> Letter, Letter::F] {
                let (x, y) = (gen(l(a)), gen(l(b)));
                outcomes.push(compare(&x.mul(y), &y.mul(x), format!("{} {}", l(a), l(b))));
            }
        }
    }
    report.record(
        "ef-bracket",
        "[E_{a,a+1}, E_{b+1,b}] = δ_ab (K_a K_{a+1}^{-1} - K_a^{-1} K_{a+1}) / (q_a - q_a^{-1}); distant E's and F's commute",
        first_failure(outcomes),
    );

    report.record(
        "odd-square",
        "E_{m,m+1}^2 = E_{m+1,m}^2 = 0",
        first_failure([
            compare(&gen(Letter::E(m)).pow(2), &rep.zero(), "E_m^2"),
            compare(&gen(Letter::F(m)).pow(2), &rep.zero(), "F_m^2"),
        ]),
    );

    if dims.m() >= 2 && dims.n() >= 2 {
        let e = |a: usize, b: usize| rep.root_vector(a, b);
        let rel = |x: &QMatrix, y: &QMatrix, c: RatFn, ctx: String| compare(&x.mul(y), &y.mul(x).scale(&c), ctx);
        let mut outcomes = Vec::new();
        for a in (1..=r - 2).filter(|&a| a != m) {
            outcomes.push(rel(&e(a + 1, a), &e(a + 2, a), q(a, 1), format!("(a) a={a}")));
            outcomes.push(rel(&e(a, a + 1), &e(a, a + 2), q(a, 1), format!("(b) a={a}")));
        }
        for a in (2..=r - 1).filter(|&a| a != m) {
            outcomes.push(rel(&e(a + 1, a - 1), &e(a + 1, a), q(a, 1), format!("(c) a={a}")));
            outcomes.push(rel(&e(a - 1, a + 1), &e(a, a + 1), q(a, 1), format!("(d) a={a}")));
        }
        outcomes.push(compare(&super_bracket(&e(m + 1, m), 1, &e(m + 2, m - 1), 1), &rep.zero(), "[E_{m+1,m}, E_{m+2,m-1}]"));
        outcomes.push(compare(&super_bracket(&e(m, m + 1), 1, &e(m - 1, m + 2), 1), &rep.zero(), "[E_{m,m+1}, E_{m-1,m+2}]"));
        report.record(
            "serre",
            "E_{a+1,a} E_{a+2,a} = q_a E_{a+2,a} E_{a+1,a}, E_{a,a+1} E_{a,a+2} = q_a E_{a,a+2} E_{a,a+1}, E_{a+1,a-1} E_{a+1,a} = q_a E_{a+1,a} E_{a+1,a-1}, E_{a-1,a+1} E_{a,a+1} = q_a E_{a,a+1} E_{a-1,a+1} (a != m); [E_{m+1,m}, E_{m+2,m-1}] = [E_{m,m+1}, E_{m-1,m+2}] = 0",
            first_failure(outcomes),
        );
    }

    let prod = (1..=r).fold(rep.identity(), |acc, a| acc.mul(&k(a, if dims.is_odd(a) { -1 } else { 1 })));
    report.record(
        "k-product",
        "K_1 ... K_m K_{m+1}^{-1} ... K_{m+n}^{-1} = q^d",
        compare(&prod, &QMatrix::scalar(rep.size(), RatFn::q_pow(dims.d() as i64)), "product"),
    );

    let d = dims.d() as i64;
    let factors = |a: usize| -> Vec<QMatrix> { (0..=d).map(|s| gen(Letter::K(a)).add_scalar(&-q(a, s))).collect() };
    report.record(
        "k-annihilator",
        "(K_a - 1)(K_a - q_a) ... (K_a - q_a^d) = 0",
        first_failure((1..=r).map(|a| compare(&QMatrix::product(rep.size(), &factors(a)), &rep.zero(), format!("a={a}")))),
    );
    report.record(
        "k-minimal-polynomial",
        "minimal polynomial of K_a is (x - 1)(x - q_a) ... (x - q_a^d)",
        first_failure((1..=r).flat_map(|a| {
            let fs = factors(a);
            (0..=d as usize)
                .map(|skip| {
                    let p = QMatrix::product(rep.size(), fs.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, f)| f));
                    if p.is_zero() {
                        Err(format!("a={a}: dropping factor (x - q_a^{skip}) still annihilates"))
                    } else {
                        Ok(())
                    }
                })
                .collect::<Vec<_>>()
        })),
    );

    idempotent_presentation_into(&rep, &mut report);
    report
}

fn idempotent_presentation_into(rep: &QRep, report: &mut VerificationReport) {
    let dims = *rep.dims();
    let r = dims.rank();
    let weights = enumerate_weights(&dims);
    let idem = |l: &Weight| rep.idempotent_or_zero(l);

    let mut outcomes = Vec::new();
    for l in &weights {
        for u in &weights {
            let rhs = if l == u { idem(l) } else { rep.zero() };
            outcomes.push(compare(&idem(l).mul(&idem(u)), &rhs, format!("λ={l} μ={u}")));
        }
    }
    let sum = weights.iter().fold(rep.zero(), |acc, l| acc.add(&idem(l)));
    outcomes.push(compare(&sum, &rep.identity(), "Σ 1_λ"));
    report.record("idempotent-orthogonality", "1_λ 1_μ = δ_λμ 1_λ, Σ_λ 1_λ = 1", first_failure(outcomes));

    let mut outcomes = Vec::new();
    for a in 1..r {
        let al = simple_root(&dims, a);
        let e = rep.gen(Letter::E(a));
        let f = rep.gen(Letter::F(a));
        for l in &weights {
            let up = l.add(&al);
            let down = l.sub(&al);
            outcomes.push(compare(&e.mul(&idem(l)), &idem(&up).mul(e), format!("E_{a} 1_{l}")));
            outcomes.push(compare(&f.mul(&idem(l)), &idem(&down).mul(f), format!("F_{a} 1_{l}")));
            outcomes.push(compare(&idem(l).mul(e), &e.mul(&idem(&down)), format!("1_{l} E_{a}")));
            outcomes.push(compare(&idem(l).mul(f), &f.mul(&idem(&up)), format!("1_{l} F_{a}")));
        }
    }
    report.record(
        "idempotent-shift",
        "E_a 1_λ = 1_{λ+α_a} E_a, F_a 1_λ = 1_{λ-α_a} F_a, 1_λ E_a = E_a 1_{λ-α_a}, 1_λ F_a = F_a 1_{λ+α_a} (zero outside Λ(m|n,d))",
        first_failure(outcomes),
    );

    let mut outcomes = Vec::new();
    for (a, b) in (1..r).flat_map(|a| (1..r).map(move |b| (a, b))) {
        let (pa, pb) = (dims.simple_root_parity(a), dims.simple_root_parity(b));
        let lhs = super_bracket(rep.gen(Letter::E(a)), pa, rep.gen(Letter::F(b)), pb);
        let rhs = if a == b {
            let s = if pa * pb == 1 { -1 } else { 1 };
            weights.iter().fold(rep.zero(), |acc, l| {
                let c = RatFn::from_poly(gaussian_binomial(l.at(b) - s * l.at(b + 1), 1));
                acc.add(&idem(l).scale(&c))
            })
        } else {
            rep.zero()
        };
        outcomes.push(compare(&lhs, &rhs, format!("a={a} b={b}")));
    }
    report.record(
        "ef-bracket-idempotent",
        "[E_a, F_b] = δ_ab Σ_λ [λ_b - (-1)^{E_a F_b} λ_{b+1}] 1_λ, with [z] the quantum integer",
        first_failure(outcomes),
    );
}

/// Verifies every catalogued commutation identity, independence of root vectors
/// from the intermediate index, and root vector / idempotent commutation.
pub fn verify_commutation_quantum(dims: &Dims, max_power: u32) -> VerificationReport {
    let rep = QRep::new(dims);
    let mut report = VerificationReport::new(format!("quantum commutation, {dims}, powers <= {max_power}"));
    let catalogue = identity_catalogue(dims, max_power);
    let outcomes: Vec<Result<(), String>> = catalogue
        .par_iter()
        .map(|inst| compare(&rep.poly(&inst.lhs), &rep.poly(&inst.rhs), inst.describe()))
        .collect();
    let mut families: BTreeMap<&str, (String, Vec<Result<(), String>>)> = BTreeMap::new();
    let mut order = Vec::new();
    for (inst, out) in catalogue.iter().zip(outcomes) {
        let entry = families.entry(inst.name.as_str()).or_insert_with(|| {
            order.push(inst.name.as_str());
            (inst.citation.clone(), Vec::new())
        });
        entry.1.push(out);
    }
    for name in order {
        let (citation, outs) = families.remove(name).expect("family recorded");
        report.record(format!("{name} ({} instances)", outs.len()), citation, first_failure(outs));
    }

    let r = dims.rank();
    let mut outcomes = Vec::new();
    for a in 1..=r {
        for b in (1..=r).filter(|&b| a.abs_diff(b) > 1) {
            let default = rep.root_vector(a, b);
            for c in a.min(b) + 1..a.max(b) {
                let via = rep.root_vector_via(a, b, Some(c)).expect("valid via");
                outcomes.push(compare(&via, &default, format!("E_{{{a},{b}}} via {c}")));
            }
            let words = rep
                .eval_expr(&expand_root_vector(dims, a, b, None).expect("valid root"))
                .expect("valid letters");
            outcomes.push(compare(&words, &default, format!("E_{{{a},{b}}} word expansion")));
        }
    }
    report.record(
        "root-vector-via",
        "E_{a,b} = E_{a,c} E_{c,b} - q_c^{∓1} E_{c,b} E_{a,c} is the same for every a < c < b (or b < c < a)",
        first_failure(outcomes),
    );

    let weights = enumerate_weights(dims);
    let mut outcomes = Vec::new();
    for root in all_roots(dims) {
        let x = rep.root_vector(root.i, root.j);
        let alpha = root.as_weight(r);
        for l in &weights {
            let idem = rep.idempotent_or_zero(l);
            outcomes.push(compare(
                &x.mul(&idem),
                &rep.idempotent_or_zero(&l.add(&alpha)).mul(&x),
                format!("E_{{{},{}}} 1_{l}", root.i, root.j),
            ));
            outcomes.push(compare(
                &idem.mul(&x),
                &x.mul(&rep.idempotent_or_zero(&l.sub(&alpha))),
                format!("1_{l} E_{{{},{}}}", root.i, root.j),
            ));
        }
    }
    report.record(
        "root-idempotent",
        "E_{b,c} 1_λ = 1_{λ+α} E_{b,c} and 1_λ E_{b,c} = E_{b,c} 1_{λ-α} (zero outside Λ(m|n,d))",
        first_failure(outcomes),
    );
    report
}

/// Quantum weight idempotent calculus.
pub fn verify_idempotents_quantum(dims: &Dims) -> VerificationReport {
    let rep = QRep::new(dims);
    let mut report = VerificationReport::new(format!("quantum idempotents, {dims}"));
    let r = dims.rank();
    let d = dims.d();
    let weights = enumerate_weights(dims);
    let idem = |l: &Weight| (*rep.idempotent(l).expect("weight in Λ")).clone();
    let gauss = |z: i64, t: u32| RatFn::from_poly(gaussian_binomial(z, t));

    let mut outcomes = Vec::new();
    for l in &weights {
        outcomes.push(compare(&rep.k_mu(l), &weight_projection(rep.basis(), l), format!("λ={l}")));
        for u in &weights {
            let rhs = if l == u { idem(l) } else { rep.zero() };
            outcomes.push(compare(&idem(l).mul(&idem(u)), &rhs, format!("λ={l} μ={u}")));
        }
    }
    let sum = weights.iter().fold(rep.zero(), |acc, l| acc.add(&idem(l)));
    outcomes.push(compare(&sum, &rep.identity(), "Σ 1_λ"));
    report.record(
        "idempotents-complete",
        "1_λ = K_λ is the λ weight projection; 1_λ 1_μ = δ_λμ 1_λ; Σ_λ 1_λ = 1",
        first_failure(outcomes),
    );

    let mus: Vec<Weight> = (0..=d + 1).flat_map(|k| enumerate_weights(&dims.with_degree(k))).collect();
    report.record(
        "k-mu-vanishing",
        "K_μ = 0 for |μ| > d",
        first_failure(
            mus.iter()
                .filter(|u| u.size() > d as i64)
                .map(|u| compare(&rep.k_mu(u), &rep.zero(), format!("μ={u}"))),
        ),
    );

    let mut outcomes = Vec::new();
    for l in &weights {
        for a in 1..=r {
            for e in [1, -1] {
                outcomes.push(compare(
                    &rep.k_power(a, e).mul(&idem(l)),
                    &idem(l).scale(&qa(dims, a, e * l.at(a))),
                    format!("K_{a}^{e} 1_{l}"),
                ));
            }
            for c in -1..=1 {
                for t in 0..=d as u32 + 1 {
                    outcomes.push(compare(
                        &rep.k_binom(a, c, t).mul(&idem(l)),
                        &idem(l).scale(&gauss(l.at(a) + c, t)),
                        format!("[K_{a};{c} over {t}] 1_{l}"),
                    ));
                }
            }
        }
    }
    report.record(
        "k-eigenvalues",
        "K_a^{±1} 1_λ = q_a^{±λ_a} 1_λ, [K_a; c over t] 1_λ = [λ_a + c over t] 1_λ",
        first_failure(outcomes),
    );

    let lambda_mu = |l: &Weight, u: &Weight| -> RatFn {
        (1..=r).fold(RatFn::one(), |acc, a| &acc * &gauss(l.at(a), u.at(a) as u32))
    };
    let mut outcomes = Vec::new();
    for u in &mus {
        let ku = rep.k_mu(u);
        let mut expansion = rep.zero();
        for l in &weights {
            let c = lambda_mu(l, u);
            outcomes.push(compare(&ku.mul(&idem(l)), &idem(l).scale(&c), format!("K_{u} 1_{l}")));
            expansion = expansion.add(&idem(l).scale(&c));
        }
        outcomes.push(compare(&ku, &expansion, format!("K_{u} expansion")));
    }
    report.record(
        "k-mu-expansion",
        "K_μ 1_λ = λ_μ 1_λ and K_μ = Σ_λ λ_μ 1_λ with λ_μ = Π_a [λ_a over μ_a]",
        first_failure(outcomes),
    );
    report
}

/// How the rank over `Q(q)` was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    Specialized,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRankCertificate {
    pub rank: usize,
    pub basis_size: usize,
    pub expected: u128,
    pub method: RankMethod,
}

impl QRankCertificate {
    pub fn passed(&self) -> bool {
        self.rank == self.basis_size && self.basis_size as u128 == self.expected
    }
}

/// Common multiple of the denominators, so that every scaled entry is a Laurent polynomial.
fn laurent_vector(v: &[(usize, RatFn)]) -> Vec<(usize, LaurentPoly)> {
    let l = v.iter().fold(LaurentPoly::one(), |acc, (_, x)| {
        let g = laurent_gcd(&acc, x.den());
        (&acc * x.den()).div_exact(&g).expect("gcd divides")
    });
    v.iter()
        .map(|(i, x)| (*i, (x.num() * &l).div_exact(x.den()).expect("denominator divides")))
        .collect()
}

/// Rank of `ρ(Y_q)` over `Q(q)`.
///
/// The rank at `q0` is a lower bound for the generic rank, which is at most
/// `|Y_q|`; if the bound is attained nothing more is needed. Otherwise, or if
/// `force_exact` is set, fraction-free elimination over `Z[q, q^{-1}]` decides.
pub fn basis_rank_certify_q(
    dims: &Dims,
    q0: &Rational,
    force_exact: bool,
) -> Result<(VerificationReport, QRankCertificate), QReplError> {
    let bad = [-1, 0, 1].iter().any(|k| *q0 == Rational::from_integer(BigInt::from(*k)));
    if bad {
        return Err(QReplError::BadSpecialization);
    }
    let rep = QRep::new(dims);
    let ys = enumerate_basis_yq(dims);
    let vectors: Vec<Vec<(usize, RatFn)>> = ys.par_iter().map(|y| rep.basis_image(y).flatten()).collect();

    let specialized = if force_exact {
        None
    } else {
        let spec: Option<Vec<Vec<(usize, BigInt)>>> = vectors
            .iter()
            .map(|v| {
                let s: Option<Vec<(usize, Rational)>> =
                    v.iter().map(|(i, x)| specialize(x, q0).ok().map(|r| (*i, r))).collect();
                s.map(|s| integer_vector(&s))
            })
            .collect();
        spec.map(|s| bareiss_rank(densify(&s)))
    };
    let (rank, method) = match specialized {
        Some(r) if r == ys.len() => (r, RankMethod::Specialized),
        _ => {
            let polys: Vec<Vec<(usize, LaurentPoly)>> = vectors.par_iter().map(|v| laurent_vector(v)).collect();
            (bareiss_rank(densify(&polys)), RankMethod::Exact)
        }
    };
    let cert = QRankCertificate {
        rank,
        basis_size: ys.len(),
        expected: dimension_count(dims),
        method,
    };
    let mut report = VerificationReport::new(format!("quantum basis rank, {dims}"));
    report.record(
        "basis-rank",
        "rank ρ(Y_q) over Q(q) = |Y_q| = dim S(m|n,d)",
        if cert.passed() {
            Ok(())
        } else {
            Err(format!(
                "rank {} |Y_q| {} formula {} ({:?})",
                cert.rank, cert.basis_size, cert.expected, cert.method
            ))
        },
    );
    Ok((report, cert))
}

/// Coordinates of `ρ(term)` in the basis `ρ(Y_q)`, listing only nonzero coordinates.
pub fn coordinates_in_yq(dims: &Dims, term: &QTerm) -> Result<Vec<(QBasisElement, RatFn)>, QReplError> {
    for atom in &term.atoms {
        if let QAtom::Root { a, b, .. } = atom {
            crate::superroot::Root::new(dims, *a, *b)?;
        }
    }
    let rep = QRep::new(dims);
    let target = rep.term(term).flatten();
    let ys = enumerate_basis_yq(dims);
    let columns: Vec<Vec<(usize, RatFn)>> = ys.par_iter().map(|y| rep.basis_image(y).flatten()).collect();
    let x = solve_in_span(&columns, &target).ok_or(QReplError::OutsideSpan)?;
    Ok(ys.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// The pieces of the element acting on tensor space as the parity sign `σ_d`.
#[derive(Debug, Clone)]
pub struct OmegaParts {
    /// `ω_{s,a}`, indexed by `(s, a)`.
    pub omega_s_a: BTreeMap<(usize, usize), QMatrix>,
    /// `Ω_a = Σ_s ω_{s,a}`, indexed by `a`.
    pub omega_a: BTreeMap<usize, QMatrix>,
    pub omega: QMatrix,
    /// `σ_d`: `(-1)^{parity of the tensor index}` on the diagonal.
    pub sigma: QMatrix,
}

/// Builds `ω_{s,a}`, `Ω_a`, `Ω` from `ρ(K_a)`, and `σ_d` directly from parities.
pub fn omega_construct(dims: &Dims) -> OmegaParts {
    let rep = QRep::new(dims);
    let d = dims.d();
    let n = rep.size();
    let mut omega_s_a = BTreeMap::new();
    let mut omega_a = BTreeMap::new();
    for a in 1..=dims.rank() {
        let ka = rep.gen(Letter::K(a));
        let mut total = rep.zero();
        for s in 0..=d {
            let qs = qa(dims, a, s as i64);
            let mut num = rep.identity();
            let mut den = RatFn::one();
            for k in (0..=d).filter(|&k| k != s) {
                num = num.mul(&ka.add_scalar(&-qa(dims, a, k as i64)));
                den = &den * &(&qs - &qa(dims, a, k as i64));
            }
            let twist = if s % 2 == 1 && dims.is_odd(a) { -1 } else { 1 };
            num = num.mul(&ka.add_scalar(&(&int(twist) - &qs)));
            let w = num.scale(&den.inv().expect("distinct powers of q_a"));
            total = total.add(&w);
            omega_s_a.insert((s, a), w);
        }
        omega_a.insert(a, total);
    }
    let omega = QMatrix::product(n, omega_a.values());
    let sigma = QMatrix::from_diagonal((0..n).map(|k| int(if rep.basis().parity(k) == 1 { -1 } else { 1 })));
    OmegaParts {
        omega_s_a,
        omega_a,
        omega,
        sigma,
    }
}

/// Checks the pieces of [`omega_construct`] against their predicted actions.
pub fn verify_omega(dims: &Dims) -> (VerificationReport, OmegaParts) {
    let parts = omega_construct(dims);
    let rep = QRep::new(dims);
    let basis = rep.basis();
    let n = rep.size();
    let mut report = VerificationReport::new(format!("sign operator, {dims}"));

    let mut outcomes = Vec::new();
    for (&(s, a), w) in &parts.omega_s_a {
        let expected = QMatrix::from_diagonal((0..n).map(|k| {
            let ra = basis.occupancy(k).at(a);
            if ra != s as i64 {
                int(0)
            } else if ra % 2 == 1 && dims.is_odd(a) {
                int(-1)
            } else {
                int(1)
            }
        }));
        outcomes.push(compare(w, &expected, format!("ω_{{{s},{a}}}")));
    }
    report.record(
        "omega-s-a",
        "ω_{s,a} acts as (-1)^{r_a ā} on indices with r_a = s and as 0 otherwise",
        first_failure(outcomes),
    );

    report.record(
        "omega-a",
        "Ω_a = Σ_s ω_{s,a} acts as (-1)^{r_a ā}",
        first_failure(parts.omega_a.iter().map(|(&a, m)| {
            let expected = QMatrix::from_diagonal((0..n).map(|k| {
                int(if basis.occupancy(k).at(a) % 2 == 1 && dims.is_odd(a) { -1 } else { 1 })
            }));
            compare(m, &expected, format!("Ω_{a}"))
        })),
    );

    report.record("omega-is-sigma", "Ω = Π_a Ω_a = σ_d", compare(&parts.omega, &parts.sigma, "Ω"));
    report.record(
        "omega-involution",
        "Ω^2 = 1",
        compare(&parts.omega.mul(&parts.omega), &rep.identity(), "Ω^2"),
    );

    let r = dims.rank();
    let mut letters: Vec<Letter> = (1..r).flat_map(|a| [Letter::E(a), Letter::F(a)]).collect();
    letters.extend((1..=r).flat_map(|a| [Letter::K(a), Letter::KInv(a)]));
    report.record(
        "omega-grading",
        "Ω ρ(g) Ω^{-1} = (-1)^ḡ ρ(g)",
        first_failure(letters.into_iter().map(|l| {
            let g = rep.gen(l);
            let lhs = parts.omega.mul(g).mul(&parts.omega);
            let rhs = if l.parity(dims) == 1 { g.neg() } else { g.clone() };
            compare(&lhs, &rhs, l)
        })),
    );
    (report, parts)
}

/// `{"rows": N, "cols": N, "entries": [[r, c, {"num": ..., "den": ...}], ...]}`.
pub fn qmatrix_to_json(m: &QMatrix) -> serde_json::Value {
    serde_json::json!({
        "rows": m.n_rows(),
        "cols": m.n_cols(),
        "entries": m.entries().map(|(r, c, v)| serde_json::json!([r, c, v])).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::quantum_integer;

    fn dims(m: usize, n: usize, d: usize) -> Dims {
        Dims::new(m, n, d).unwrap()
    }

    fn diag(entries: Vec<RatFn>) -> QMatrix {
        QMatrix::from_diagonal(entries)
    }

    fn q(k: i64) -> RatFn {
        RatFn::q_pow(k)
    }

    #[test]
    fn generator_examples() {
        let g = dims(1, 1, 1);
        assert_eq!(rho_q_generator(&g, Letter::K(1)).unwrap(), diag(vec![q(1), int(1)]));
        assert_eq!(rho_q_generator(&g, Letter::K(2)).unwrap(), diag(vec![int(1), q(-1)]));
        let e = rho_q_generator(&g, Letter::E(1)).unwrap();
        let f = rho_q_generator(&g, Letter::F(1)).unwrap();
        assert_eq!(e.mul(&f).add(&f.mul(&e)), QMatrix::identity(2));
        assert!(rho_q_generator(&g, Letter::E(2)).is_err());
    }

    #[test]
    fn divided_examples() {
        let g = dims(2, 1, 2);
        let rep = QRep::new(&g);
        assert_eq!(rep.divided(1, 3, 0), rep.identity());
        let e1 = rep.gen(Letter::E(1));
        let two = RatFn::from_poly(quantum_integer(2));
        assert_eq!(rep.divided(1, 2, 2), e1.pow(2).scale(&two.inv().unwrap()));
        assert!(rep.divided(2, 3, 2).is_zero());
        let g = dims(1, 1, 3);
        let e = rho_q_divided(&g, 1, 2, 1).unwrap();
        assert!(e.pow(2).is_zero());
    }

    #[test]
    fn k_binom_examples() {
        let g = dims(1, 1, 1);
        assert_eq!(rho_q_k_binom(&g, 1, 0, 1).unwrap(), diag(vec![int(1), int(0)]));
        assert_eq!(rho_q_k_binom(&g, 1, 3, 0).unwrap(), QMatrix::identity(2));
        let g = dims(1, 1, 2);
        let two = RatFn::from_poly(quantum_integer(2));
        assert_eq!(rho_q_k_binom(&g, 2, 0, 1).unwrap(), diag(vec![int(0), int(1), int(1), two]));
        // diagonal entries agree with the Gaussian binomial in the occupation number
        let g = dims(2, 1, 2);
        let rep = QRep::new(&g);
        for a in 1..=3 {
            for c in -2..=2 {
                for t in 0..=3 {
                    let m = rep.k_binom(a, c, t);
                    for k in 0..rep.size() {
                        let z = rep.basis().occupancy(k).at(a) + c;
                        assert_eq!(m.get(k, k), RatFn::from_poly(gaussian_binomial(z, t)));
                    }
                }
            }
        }
    }

    #[test]
    fn idempotent_examples() {
        let g = dims(1, 1, 1);
        assert_eq!(rho_q_idempotent(&g, &Weight(vec![1, 0])).unwrap(), diag(vec![int(1), int(0)]));
        assert!(rho_q_idempotent(&g, &Weight(vec![2, 0])).is_err());
        let g = dims(1, 1, 2);
        let rep = QRep::new(&g);
        let sum = enumerate_weights(&g)
            .iter()
            .fold(rep.zero(), |acc, l| acc.add(&rep.idempotent_or_zero(l)));
        assert_eq!(sum, rep.identity());
        let i11 = rep.idempotent_or_zero(&Weight(vec![1, 1]));
        assert_eq!(rep.gen(Letter::K(1)).mul(&i11), i11.scale(&q(1)));
    }

    #[test]
    fn relations_small() {
        for (m, n, d) in [(1, 1, 1), (1, 1, 2), (2, 1, 2)] {
            let r = verify_relations_quantum(&dims(m, n, d));
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn relation_examples() {
        let g = dims(1, 1, 1);
        let rep = QRep::new(&g);
        let prod = rep.k_power(1, 1).mul(&rep.k_power(2, -1));
        assert_eq!(prod, QMatrix::scalar(2, q(1)));
        let g = dims(1, 1, 2);
        let rep = QRep::new(&g);
        assert_eq!(*rep.gen(Letter::K(1)), diag(vec![q(2), q(1), q(1), int(1)]));
        let p = (0..=2).fold(rep.identity(), |acc, s| acc.mul(&rep.gen(Letter::K(1)).add_scalar(&-q(s))));
        assert!(p.is_zero());
    }

    #[test]
    fn commutation_small() {
        for (m, n, d) in [(1, 1, 1), (1, 1, 2), (2, 1, 2)] {
            let r = verify_commutation_quantum(&dims(m, n, d), 2);
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn commutation_examples() {
        let g = dims(1, 1, 1);
        let rep = QRep::new(&g);
        let (e, f) = (rep.root_vector(1, 2), rep.root_vector(2, 1));
        let k12 = rep.k_power(1, 1).mul(&rep.k_power(2, -1));
        let k21 = rep.k_power(1, -1).mul(&rep.k_power(2, 1));
        let rhs = k12.sub(&k21).scale(&(&q(1) - &q(-1)).inv().unwrap());
        assert_eq!(e.mul(&f).add(&f.mul(&e)), rhs);
        assert_eq!(rhs, rep.identity());
        let g = dims(2, 1, 2);
        let rep = QRep::new(&g);
        let (e12, e13) = (rep.root_vector(1, 2), rep.root_vector(1, 3));
        assert!(e12.mul(&e13).sub(&e13.mul(&e12).scale(&q(1))).is_zero());
    }

    #[test]
    fn idempotents_small() {
        for (m, n, d) in [(1, 1, 2), (2, 1, 2)] {
            let r = verify_idempotents_quantum(&dims(m, n, d));
            assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn rank_examples() {
        let two = Rational::from_integer(BigInt::from(2));
        let (r, c) = basis_rank_certify_q(&dims(1, 1, 1), &two, false).unwrap();
        assert!(r.all_passed());
        assert_eq!(c.rank, 4);
        let (_, c) = basis_rank_certify_q(&dims(1, 1, 2), &two, false).unwrap();
        assert_eq!((c.rank, c.method), (8, RankMethod::Specialized));
        let (_, c) = basis_rank_certify_q(&dims(1, 1, 2), &two, true).unwrap();
        assert_eq!((c.rank, c.method), (8, RankMethod::Exact));
        let one = Rational::from_integer(BigInt::from(1));
        assert!(basis_rank_certify_q(&dims(1, 1, 1), &one, false).is_err());
    }

    #[test]
    fn omega_examples() {
        let (r, parts) = verify_omega(&dims(1, 1, 1));
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(parts.omega, diag(vec![int(1), int(-1)]));
        let (r, parts) = verify_omega(&dims(1, 1, 2));
        assert!(r.all_passed());
        assert_eq!(parts.sigma, diag(vec![int(1), int(-1), int(-1), int(1)]));
        let (r, parts) = verify_omega(&dims(2, 1, 2));
        assert!(r.all_passed());
        let basis = TensorBasis::new(&dims(2, 1, 2));
        for k in 0..basis.len() {
            let r3 = basis.occupancy(k).at(3);
            assert_eq!(parts.omega.get(k, k), int(if r3 % 2 == 1 { -1 } else { 1 }));
        }
    }

    #[test]
    fn perturbed_identities_fail() {
        let g = dims(2, 2, 3);
        let rep = QRep::new(&g);
        let cat = identity_catalogue(&g, 2);
        let mut checked = 0;
        for inst in cat.iter().filter(|i| i.name == "positive-divided" || i.name == "mixed-divided") {
            let lhs = rep.poly(&inst.lhs);
            if lhs.is_zero() {
                continue;
            }
            let mut rhs = inst.rhs.clone();
            rhs.terms[0].coeff = &rhs.terms[0].coeff * &q(1);
            assert_ne!(lhs, rep.poly(&rhs), "{}", inst.describe());
            checked += 1;
        }
        assert!(checked > 20);
    }

    #[test]
    fn literal_antiautomorphism_breaks_identities() {
        // without q -> q^{-1} on coefficients the image of K_1 E_1 = q E_1 K_1 is false
        let g = dims(2, 1, 2);
        let rep = QRep::new(&g);
        let cat = identity_catalogue(&g, 1);
        let inst = cat
            .iter()
            .find(|i| i.name == "positive-pair" && i.rhs.terms[0].coeff == q(1))
            .expect("an instance with coefficient q");
        let anti = inst.tau();
        assert_eq!(rep.poly(&anti.lhs), rep.poly(&anti.rhs));
        let mut literal = anti.rhs.clone();
        for t in &mut literal.terms {
            t.coeff = t.coeff.bar();
        }
        assert_ne!(rep.poly(&anti.lhs), rep.poly(&literal));
    }

    #[test]
    fn integer_bracket_coefficient_is_only_classical() {
        let g = dims(1, 1, 2);
        let rep = QRep::new(&g);
        let idem = rep.idempotent_or_zero(&Weight(vec![2, 0]));
        let (e, f) = (rep.gen(Letter::E(1)), rep.gen(Letter::F(1)));
        let lhs = e.mul(f).add(&f.mul(e)).mul(&idem);
        assert_ne!(lhs, idem.scale(&int(2)));
        assert_eq!(lhs, idem.scale(&RatFn::from_poly(quantum_integer(2))));
    }

    #[test]
    fn quantum_coordinates() {
        let g = dims(1, 1, 1);
        let term = QTerm::new(RatFn::one(), vec![QAtom::root(2, 1, 1), QAtom::root(1, 2, 1)]);
        let coords = coordinates_in_yq(&g, &term).unwrap();
        assert_eq!(coords.len(), 1);
        assert_eq!(coords[0].0.lambda, Weight(vec![0, 1]));
        assert_eq!(coords[0].1, RatFn::one());
        let k = QTerm::new(RatFn::one(), vec![QAtom::K { a: 1, exp: 1 }]);
        let coords = coordinates_in_yq(&g, &k).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(coords.iter().any(|(y, c)| y.lambda == Weight(vec![1, 0]) && *c == q(1)));
    }

    #[test]
    fn qmatrix_json_shape() {
        let j = qmatrix_to_json(&rho_q_generator(&dims(1, 1, 1), Letter::K(1)).unwrap());
        assert_eq!(j["rows"], 2);
        assert_eq!(j["entries"].as_array().unwrap().len(), 2);
        assert!(j["entries"][0][2].get("num").is_some());
    }
}
