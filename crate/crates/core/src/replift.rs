//! The classical representation `ρ_d` of `U(gl(m|n))` on `V^{⊗d}` over `Q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::kostant::{dimension_count, enumerate_basis_y, BasisElement, KostantError, KostantFactor, KostantMonomial};
use crate::linalg::{bareiss_rank, densify, solve_in_span, SparseEchelon};
use crate::matrix::SparseMatrix;
use crate::qfield::{binomial, Rational};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::superroot::{all_roots, enumerate_weights, pair_weights, simple_root, Dims, Root, RootError, Weight};

pub type RepMatrix = SparseMatrix<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplError {
    #[error("unknown or out-of-range generator `{0}`")]
    BadGenerator(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Kostant(#[from] KostantError),
    #[error("weight {0} is not in Λ(m|n,d)")]
    NotInLambda(Weight),
    #[error("K factors have no classical image")]
    QuantumFactor,
    #[error("image lies outside the span of the basis images")]
    OutsideSpan,
}

/// The basis `v_{i_1} ⊗ ... ⊗ v_{i_d}` of `V^{⊗d}` in lexicographic order of `(i_1, ..., i_d)`.
#[derive(Debug, Clone)]
pub struct TensorBasis {
    dims: Dims,
    letters: Vec<Vec<u8>>,
}

impl TensorBasis {
    pub fn new(dims: &Dims) -> Self {
        let r = dims.rank() as u8;
        let mut letters = vec![Vec::new()];
        for _ in 0..dims.d() {
            letters = letters
                .into_iter()
                .flat_map(|w: Vec<u8>| {
                    (1..=r).map(move |a| {
                        let mut v = w.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        Self { dims: *dims, letters }
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self, k: usize) -> &[u8] {
        &self.letters[k]
    }

    pub fn position(&self, w: &[u8]) -> usize {
        let r = self.dims.rank();
        w.iter().fold(0, |acc, &a| acc * r + (a as usize - 1))
    }

    /// `Σ_t parity(i_t) mod 2`.
    pub fn parity(&self, k: usize) -> u8 {
        self.letters[k].iter().map(|&a| self.dims.parity(a as usize)).sum::<u8>() % 2
    }

    /// `r_a = #{t : i_t = a}` for every `a`, as a weight.
    pub fn occupancy(&self, k: usize) -> Weight {
        let mut w = Weight::zero(self.dims.rank());
        for &a in &self.letters[k] {
            w.0[a as usize - 1] += 1;
        }
        w
    }
}

/// `Σ_t (left ⊗ ... ⊗ left ⊗ site ⊗ right ⊗ ... ⊗ right)` acting with Koszul signs:
/// an operator of parity `p` picks up `(-1)^{p · (parities of the factors it passes)}`.
/// `left` and `right` are diagonal, given by their eigenvalue on each `v_a`.
pub(crate) fn tensor_action<T: Scalar>(
    basis: &TensorBasis,
    op_parity: u8,
    site: impl Fn(u8) -> Option<(u8, T)>,
    left: impl Fn(u8) -> T,
    right: impl Fn(u8) -> T,
) -> SparseMatrix<T> {
    let dims = *basis.dims();
    let n = basis.len();
    let mut out = SparseMatrix::zeros(n, n);
    for col in 0..n {
        let w = basis.letters(col);
        let mut prefix_parity = 0u8;
        for t in 0..w.len() {
            if let Some((new, c)) = site(w[t]) {
                let mut coeff = c;
                for &a in &w[..t] {
                    coeff = coeff.mul(&left(a));
                }
                for &a in &w[t + 1..] {
                    coeff = coeff.mul(&right(a));
                }
                if op_parity * prefix_parity % 2 == 1 {
                    coeff = coeff.neg();
                }
                let mut v = w.to_vec();
                v[t] = new;
                out.add_to(basis.position(&v), col, &coeff);
            }
            prefix_parity ^= dims.parity(w[t] as usize);
        }
    }
    out
}

/// Diagonal 0/1 projection onto basis vectors with occupancy `λ`.
pub(crate) fn weight_projection<T: Scalar>(basis: &TensorBasis, lambda: &Weight) -> SparseMatrix<T> {
    SparseMatrix::from_diagonal((0..basis.len()).map(|k| {
        if basis.occupancy(k) == *lambda {
            T::one()
        } else {
            T::zero()
        }
    }))
}

/// The signed transposition of tensor factors `t` and `t+1` (0-based):
/// `v ⊗ w ↦ (-1)^{parity(v) parity(w)} w ⊗ v`.
pub(crate) fn signed_transposition<T: Scalar>(basis: &TensorBasis, t: usize) -> SparseMatrix<T> {
    let dims = basis.dims();
    let n = basis.len();
    let mut out = SparseMatrix::zeros(n, n);
    for col in 0..n {
        let mut w = basis.letters(col).to_vec();
        let sign = dims.parity(w[t] as usize) * dims.parity(w[t + 1] as usize);
        w.swap(t, t + 1);
        out.set(basis.position(&w), col, T::from_int(if sign == 1 { -1 } else { 1 }));
    }
    out
}

/// Supercommutator `xy - (-1)^{px py} yx`.
pub(crate) fn super_bracket<T: Scalar>(x: &SparseMatrix<T>, px: u8, y: &SparseMatrix<T>, py: u8) -> SparseMatrix<T> {
    let xy = x.mul(y);
    let yx = y.mul(x);
    if px * py == 1 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// `Ok` if equal, otherwise the first differing entry prefixed by `context`.
pub(crate) fn compare<T: Scalar>(lhs: &SparseMatrix<T>, rhs: &SparseMatrix<T>, context: impl fmt::Display) -> Result<(), String> {
    match lhs.first_mismatch(rhs) {
        None => Ok(()),
        Some(w) => Err(format!(
            "{context}: entry ({}, {}) is {} on the left, {} on the right",
            w.row, w.col, w.left, w.right
        )),
    }
}

/// Folds many outcomes into one, keeping the first failure.
pub(crate) fn first_failure(outcomes: impl IntoIterator<Item = Result<(), String>>) -> Result<(), String> {
    outcomes.into_iter().find(|r| r.is_err()).unwrap_or(Ok(()))
}

/// Generators `e_i`, `f_i` (`1 <= i < m+n`) and `H_i` (`1 <= i <= m+n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
}

impl Generator {
    pub fn all(dims: &Dims) -> Vec<Generator> {
        let r = dims.rank();
        (1..r)
            .map(Generator::E)
            .chain((1..r).map(Generator::F))
            .chain((1..=r).map(Generator::H))
            .collect()
    }

    pub fn parity(&self, dims: &Dims) -> u8 {
        match *self {
            Generator::E(i) | Generator::F(i) => dims.simple_root_parity(i),
            Generator::H(_) => 0,
        }
    }

    pub fn validate(&self, dims: &Dims) -> Result<(), ReplError> {
        let ok = match *self {
            Generator::E(i) | Generator::F(i) => i >= 1 && i < dims.rank(),
            Generator::H(i) => i >= 1 && i <= dims.rank(),
        };
        ok.then_some(()).ok_or_else(|| ReplError::BadGenerator(self.to_string()))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::H(i) => write!(f, "H{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = ReplError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ReplError::BadGenerator(s.to_string());
        let (head, idx) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let i: usize = idx.parse().map_err(|_| bad())?;
        match head {
            "e" | "E" => Ok(Generator::E(i)),
            "f" | "F" => Ok(Generator::F(i)),
            "H" | "h" => Ok(Generator::H(i)),
            _ => Err(bad()),
        }
    }
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn factorial(k: u32) -> Rational {
    (1..=k as i64).fold(rat(1), |acc, i| acc * rat(i))
}

/// Images of the generators and of the derived elements used throughout.
pub struct ClassicalRep {
    dims: Dims,
    basis: TensorBasis,
    units: HashMap<(usize, usize), RepMatrix>,
    idempotents: Mutex<HashMap<Weight, Arc<RepMatrix>>>,
}

impl ClassicalRep {
    pub fn new(dims: &Dims) -> Self {
        let basis = TensorBasis::new(dims);
        let r = dims.rank();
        let units = (1..=r)
            .flat_map(|i| (1..=r).map(move |j| (i, j)))
            .map(|(i, j)| {
                let p = (dims.parity(i) + dims.parity(j)) % 2;
                let m = tensor_action(
                    &basis,
                    p,
                    |a| (a as usize == j).then(|| (i as u8, rat(1))),
                    |_| rat(1),
                    |_| rat(1),
                );
                ((i, j), m)
            })
            .collect();
        Self {
            dims: *dims,
            basis,
            units,
            idempotents: Mutex::new(HashMap::new()),
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

    pub fn identity(&self) -> RepMatrix {
        RepMatrix::identity(self.size())
    }

    pub fn zero(&self) -> RepMatrix {
        RepMatrix::zeros(self.size(), self.size())
    }

    /// `ρ(E_{i,j})`; for `i = j` this is `ρ(H_i)`.
    pub fn unit(&self, i: usize, j: usize) -> &RepMatrix {
        &self.units[&(i, j)]
    }

    pub fn generator(&self, g: Generator) -> Result<RepMatrix, ReplError> {
        g.validate(&self.dims)?;
        Ok(match g {
            Generator::E(i) => self.unit(i, i + 1).clone(),
            Generator::F(i) => self.unit(i + 1, i).clone(),
            Generator::H(i) => self.unit(i, i).clone(),
        })
    }

    pub fn root_vector(&self, root: &Root) -> &RepMatrix {
        self.unit(root.i, root.j)
    }

    /// `ρ(x_α)^k / k!`; zero for odd `α` and `k >= 2`.
    pub fn divided_root(&self, root: &Root, k: u32) -> RepMatrix {
        if root.is_odd() && k >= 2 {
            return self.zero();
        }
        self.root_vector(root).pow(k).scale(&factorial(k).recip())
    }

    /// `ρ(Σ_i c_i H_i)`.
    pub fn cartan(&self, coeffs: &[i64]) -> RepMatrix {
        coeffs
            .iter()
            .enumerate()
            .fold(self.zero(), |acc, (i, c)| acc.add(&self.unit(i + 1, i + 1).scale(&rat(*c))))
    }

    /// `binom(h + shift, s)` for a matrix `h`: `Π_{k<s} (h + shift - k) / s!`.
    pub fn matrix_binom(&self, h: &RepMatrix, shift: i64, s: u32) -> RepMatrix {
        let prod = (0..s as i64).fold(self.identity(), |acc, k| acc.mul(&h.add_scalar(&rat(shift - k))));
        prod.scale(&factorial(s).recip())
    }

    /// `binom(H_i, s)`.
    pub fn h_binom(&self, i: usize, s: u32) -> RepMatrix {
        self.matrix_binom(self.unit(i, i), 0, s)
    }

    /// `H_μ = Π_i binom(H_i, μ_i)` for any nonnegative `μ`.
    pub fn h_mu(&self, mu: &Weight) -> RepMatrix {
        (1..=self.dims.rank()).fold(self.identity(), |acc, i| acc.mul(&self.h_binom(i, mu.at(i) as u32)))
    }

    /// `1_λ`, computed as a product of Cartan binomials and checked against the weight-space projection.
    pub fn idempotent(&self, lambda: &Weight) -> Result<Arc<RepMatrix>, ReplError> {
        if !lambda.in_lambda(&self.dims) {
            return Err(ReplError::NotInLambda(lambda.clone()));
        }
        if let Some(m) = self.idempotents.lock().expect("cache lock").get(lambda) {
            return Ok(m.clone());
        }
        let product = self.h_mu(lambda);
        let projection = weight_projection(&self.basis, lambda);
        assert_eq!(product, projection, "binomial product differs from weight projection at {lambda}");
        let m = Arc::new(product);
        self.idempotents
            .lock()
            .expect("cache lock")
            .insert(lambda.clone(), m.clone());
        Ok(m)
    }

    /// `1_λ` if `λ ∈ Λ(m|n,d)`, otherwise zero.
    pub fn idempotent_or_zero(&self, lambda: &Weight) -> RepMatrix {
        match self.idempotent(lambda) {
            Ok(m) => (*m).clone(),
            Err(_) => self.zero(),
        }
    }

    /// Strict left-to-right product of the factor images.
    pub fn kostant(&self, mono: &KostantMonomial) -> Result<RepMatrix, ReplError> {
        if mono.is_zero() {
            return Ok(self.zero());
        }
        let mut acc = self.identity();
        for f in mono.factors() {
            let m = match f {
                KostantFactor::RootPower { root, r } => {
                    Root::new(&self.dims, root.i, root.j)?;
                    self.divided_root(root, *r)
                }
                KostantFactor::CartanBinom { i, s } => {
                    self.dims.check_index(*i)?;
                    self.h_binom(*i, *s)
                }
                KostantFactor::KUnit { .. } => return Err(ReplError::QuantumFactor),
                KostantFactor::Idem(l) => (*self.idempotent(l)?).clone(),
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }

    /// `ρ(e_A 1_λ f_C)`.
    pub fn basis_image(&self, y: &BasisElement) -> RepMatrix {
        self.kostant(&y.monomial(&self.dims)).expect("basis monomials are well formed")
    }
}

pub fn rho_generator(dims: &Dims, g: Generator) -> Result<RepMatrix, ReplError> {
    ClassicalRep::new(dims).generator(g)
}

pub fn rho_divided_root(dims: &Dims, root: &Root, k: u32) -> RepMatrix {
    ClassicalRep::new(dims).divided_root(root, k)
}

pub fn rho_idempotent(dims: &Dims, lambda: &Weight) -> Result<RepMatrix, ReplError> {
    Ok((*ClassicalRep::new(dims).idempotent(lambda)?).clone())
}

pub fn rho_kostant(dims: &Dims, mono: &KostantMonomial) -> Result<RepMatrix, ReplError> {
    ClassicalRep::new(dims).kostant(mono)
}

/// Checks every defining relation of both presentations, plus the minimal polynomial of each `H_i`.
pub fn verify_relations_classical(dims: &Dims) -> VerificationReport {
    let rep = ClassicalRep::new(dims);
    let mut report = VerificationReport::new(format!("classical relations, {dims}"));
    relations_into(&rep, &mut report);
    report
}

pub(crate) fn relations_into(rep: &ClassicalRep, report: &mut VerificationReport) {
    let dims = *rep.dims();
    let r = dims.rank();
    let m = dims.m();
    let gen = |g: Generator| rep.generator(g).expect("generator in range");
    let h = |i: usize| rep.unit(i, i).clone();
    let sign = |i: usize| if dims.is_odd(i) { -1 } else { 1 };

    report.record(
        "cartan-commute",
        "[H_i, H_j] = 0",
        first_failure(
            (1..=r).flat_map(|i| (1..=r).map(move |j| (i, j)))
                .map(|(i, j)| compare(&super_bracket(&h(i), 0, &h(j), 0), &rep.zero(), format!("i={i} j={j}"))),
        ),
    );

    report.record(
        "ef-bracket",
        "[e_i, f_j] = δ_ij (H_i - (-1)^{e_i f_j} H_{j+1})",
        first_failure((1..r).flat_map(|i| (1..r).map(move |j| (i, j))).map(|(i, j)| {
            let (e, f) = (Generator::E(i), Generator::F(j));
            let (pe, pf) = (e.parity(&dims), f.parity(&dims));
            let lhs = super_bracket(&gen(e), pe, &gen(f), pf);
            let rhs = if i == j {
                let s = if pe * pf == 1 { -1 } else { 1 };
                h(i).sub(&h(j + 1).scale(&rat(s)))
            } else {
                rep.zero()
            };
            compare(&lhs, &rhs, format!("i={i} j={j}"))
        })),
    );

    report.record(
        "cartan-weight",
        "[H_i, e_j] = (-1)^i (ε_i, α_j) e_j and [H_i, f_j] = -(-1)^i (ε_i, α_j) f_j",
        first_failure((1..=r).flat_map(|i| (1..r).map(move |j| (i, j))).flat_map(|(i, j)| {
            let c = sign(i) * pair_weights(&dims, &Weight::epsilon(r, i), &simple_root(&dims, j));
            let e = gen(Generator::E(j));
            let f = gen(Generator::F(j));
            [
                compare(&super_bracket(&h(i), 0, &e, 0), &e.scale(&rat(c)), format!("e: i={i} j={j}")),
                compare(&super_bracket(&h(i), 0, &f, 0), &f.scale(&rat(-c)), format!("f: i={i} j={j}")),
            ]
        })),
    );

    for (tag, mk) in [("e", Generator::E as fn(usize) -> Generator), ("f", Generator::F)] {
        let mut outcomes = Vec::new();
        let x = |i: usize| (gen(mk(i)), mk(i).parity(&dims));
        let (xm, pm) = x(m);
        outcomes.push(compare(&super_bracket(&xm, pm, &xm, pm), &rep.zero(), format!("[{tag}_m, {tag}_m]")));
        for i in (1..r).filter(|&i| i != m) {
            for j in (1..r).filter(|&j| j != i) {
                let k = 1 + pair_weights(&dims, &simple_root(&dims, i), &simple_root(&dims, j)).unsigned_abs();
                let (xi, pi) = x(i);
                let (mut acc, mut pacc) = x(j);
                for _ in 0..k {
                    acc = super_bracket(&xi, pi, &acc, pacc);
                    pacc = (pacc + pi) % 2;
                }
                outcomes.push(compare(&acc, &rep.zero(), format!("(ad {tag}_{i})^{k} {tag}_{j}")));
            }
        }
        if dims.m() >= 2 && dims.n() >= 2 {
            let (a, pa) = x(m - 1);
            let (b, pb) = x(m + 1);
            let inner = super_bracket(&xm, pm, &b, pb);
            let mid = super_bracket(&a, pa, &inner, (pm + pb) % 2);
            let outer = super_bracket(&xm, pm, &mid, (pa + pm + pb) % 2);
            outcomes.push(compare(&outer, &rep.zero(), format!("quartic {tag}")));
        }
        report.record(
            format!("serre-{tag}"),
            format!(
                "[{tag}_m, {tag}_m] = 0, (ad {tag}_i)^(1+|(α_i, α_j)|) {tag}_j = 0 (i != m), [{tag}_m, [{tag}_(m-1), [{tag}_m, {tag}_(m+1)]]] = 0"
            ),
            first_failure(outcomes),
        );
    }

    let total = (1..=r).fold(rep.zero(), |acc, i| acc.add(&h(i)));
    report.record(
        "cartan-sum",
        "H_1 + ... + H_{m+n} = d",
        compare(&total, &RepMatrix::scalar(rep.size(), rat(dims.d() as i64)), "sum"),
    );

    let d = dims.d() as i64;
    let factors = |i: usize| -> Vec<RepMatrix> { (0..=d).map(|k| h(i).add_scalar(&rat(-k))).collect() };
    report.record(
        "cartan-annihilator",
        "H_i (H_i - 1) ... (H_i - d) = 0",
        first_failure((1..=r).map(|i| {
            compare(&RepMatrix::product(rep.size(), &factors(i)), &rep.zero(), format!("i={i}"))
        })),
    );
    report.record(
        "cartan-minimal-polynomial",
        "minimal polynomial of H_i is x (x - 1) ... (x - d)",
        first_failure((1..=r).flat_map(|i| {
            let fs = factors(i);
            (0..=d as usize)
                .map(|skip| {
                    let p = RepMatrix::product(
                        rep.size(),
                        fs.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, f)| f),
                    );
                    if p.is_zero() {
                        Err(format!("i={i}: dropping factor (x - {skip}) still annihilates"))
                    } else {
                        Ok(())
                    }
                })
                .collect::<Vec<_>>()
        })),
    );

    idempotent_presentation_into(rep, report);
}

fn idempotent_presentation_into(rep: &ClassicalRep, report: &mut VerificationReport) {
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
    for i in 1..r {
        let a = simple_root(&dims, i);
        let e = rep.generator(Generator::E(i)).expect("in range");
        let f = rep.generator(Generator::F(i)).expect("in range");
        for l in &weights {
            let up = l.add(&a);
            let down = l.sub(&a);
            outcomes.push(compare(&e.mul(&idem(l)), &idem(&up).mul(&e), format!("e_{i} 1_{l}")));
            outcomes.push(compare(&f.mul(&idem(l)), &idem(&down).mul(&f), format!("f_{i} 1_{l}")));
            outcomes.push(compare(&idem(l).mul(&e), &e.mul(&idem(&down)), format!("1_{l} e_{i}")));
            outcomes.push(compare(&idem(l).mul(&f), &f.mul(&idem(&up)), format!("1_{l} f_{i}")));
        }
    }
    report.record(
        "idempotent-shift",
        "e_i 1_λ = 1_{λ+α_i} e_i, f_i 1_λ = 1_{λ-α_i} f_i, 1_λ e_i = e_i 1_{λ-α_i}, 1_λ f_i = f_i 1_{λ+α_i} (zero outside Λ(m|n,d))",
        first_failure(outcomes),
    );

    let mut outcomes = Vec::new();
    for i in 1..r {
        for j in 1..r {
            let (e, f) = (Generator::E(i), Generator::F(j));
            let (pe, pf) = (e.parity(&dims), f.parity(&dims));
            let lhs = super_bracket(
                &rep.generator(e).expect("in range"),
                pe,
                &rep.generator(f).expect("in range"),
                pf,
            );
            let rhs = if i == j {
                let s = if pe * pf == 1 { -1 } else { 1 };
                weights.iter().fold(rep.zero(), |acc, l| {
                    acc.add(&idem(l).scale(&rat(l.at(j) - s * l.at(j + 1))))
                })
            } else {
                rep.zero()
            };
            outcomes.push(compare(&lhs, &rhs, format!("i={i} j={j}")));
        }
    }
    report.record(
        "ef-bracket-idempotent",
        "[e_i, f_j] = δ_ij Σ_λ (λ_j - (-1)^{e_i f_j} λ_{j+1}) 1_λ",
        first_failure(outcomes),
    );
}

/// Checks the root vector commutator, the divided power product rule, the
/// divided power commutation formulas for every parity combination, and the
/// root vector / weight idempotent commutation, for all roots and powers up to `max_power`.
pub fn verify_commutation_classical(dims: &Dims, max_power: u32) -> VerificationReport {
    let rep = ClassicalRep::new(dims);
    let mut report = VerificationReport::new(format!("classical commutation, {dims}, powers <= {max_power}"));
    let roots = all_roots(dims);
    let r = dims.rank();
    let pairs: Vec<(Root, Root)> = roots.iter().flat_map(|a| roots.iter().map(move |b| (*a, *b))).collect();
    let powers = |root: &Root| -> Vec<u32> {
        let top = if root.is_odd() { 1 } else { max_power };
        (1..=top).collect()
    };

    let outcomes: Vec<_> = pairs
        .par_iter()
        .map(|(a, b)| {
            let lhs = super_bracket(rep.root_vector(a), a.parity, rep.root_vector(b), b.parity);
            let rhs = if a.is_opposite(b) {
                rep.cartan(&a.coroot(r))
            } else if let Some(s) = a.try_add(b) {
                rep.root_vector(&s).scale(&rat(a.structure_constant(b).expect("sum is a root")))
            } else {
                rep.zero()
            };
            compare(&lhs, &rhs, format!("α={a} β={b}"))
        })
        .collect();
    report.record(
        "root-bracket",
        "[x_α, x_β] = H_α if α+β = 0; c_{α,β} x_{α+β} if α+β ∈ Φ; 0 otherwise",
        first_failure(outcomes),
    );

    let outcomes: Vec<_> = roots
        .par_iter()
        .flat_map_iter(|a| {
            let top = if a.is_odd() { 1 } else { max_power };
            let rep = &rep;
            (0..=top).flat_map(move |p| (0..=top).map(move |q| (p, q))).map(move |(p, q)| {
                let lhs = rep.divided_root(a, p).mul(&rep.divided_root(a, q));
                let c = binomial((p + q) as i64, p);
                let rhs = rep.divided_root(a, p + q).scale(&Rational::from_integer(c));
                compare(&lhs, &rhs, format!("α={a} a={p} b={q}"))
            })
        })
        .collect();
    report.record(
        "divided-product",
        "x_α^(a) x_α^(b) = binom(a+b, a) x_α^(a+b)",
        first_failure(outcomes),
    );

    let outcomes: Vec<_> = pairs
        .par_iter()
        .flat_map_iter(|(a, b)| {
            let mut out = Vec::new();
            for &p in &powers(a) {
                for &s in &powers(b) {
                    if let Some(res) = divided_commutation(&rep, a, p, b, s) {
                        out.push(res);
                    }
                }
            }
            out
        })
        .collect();
    let mut by_kind: BTreeMap<&'static str, Vec<Result<(), String>>> = BTreeMap::new();
    for (kind, res) in outcomes {
        by_kind.entry(kind).or_default().push(res);
    }
    for (kind, citation) in [
        (
            "divided-even-even",
            "x_α^(r) x_β^(s) = x_β^(s) x_α^(r) + Σ_j (x_β^(s-j) binom(H_α-r-s+2j, j) x_α^(r-j) | c^j x_β^(s-j) x_{α+β}^(j) x_α^(r-j))",
        ),
        ("divided-even-odd", "x_α^(r) x_β = x_β x_α^(r) + c_{α,β} x_{α+β} x_α^(r-1)"),
        ("divided-odd-even", "x_α x_β^(r) = x_β^(r) x_α + c_{α,β} x_{α+β} x_β^(r-1)"),
        ("odd-odd", "x_α x_β = -x_β x_α + (H_α | x_{α+β} | 0)"),
    ] {
        report.record(kind, citation, first_failure(by_kind.remove(kind).unwrap_or_default()));
    }

    let weights = enumerate_weights(dims);
    let outcomes: Vec<_> = roots
        .par_iter()
        .flat_map_iter(|a| {
            let x = rep.root_vector(a);
            let aw = a.as_weight(r);
            let rep = &rep;
            weights.iter().flat_map(move |l| {
                let up = l.add(&aw);
                let down = l.sub(&aw);
                [
                    compare(
                        &x.mul(&rep.idempotent_or_zero(l)),
                        &rep.idempotent_or_zero(&up).mul(x),
                        format!("x_{a} 1_{l}"),
                    ),
                    compare(
                        &rep.idempotent_or_zero(l).mul(x),
                        &x.mul(&rep.idempotent_or_zero(&down)),
                        format!("1_{l} x_{a}"),
                    ),
                ]
            })
        })
        .collect();
    report.record(
        "root-idempotent",
        "x_α 1_λ = 1_{λ+α} x_α and 1_λ x_α = x_α 1_{λ-α} (zero outside Λ(m|n,d))",
        first_failure(outcomes),
    );
    report
}

fn divided_commutation(
    rep: &ClassicalRep,
    a: &Root,
    p: u32,
    b: &Root,
    s: u32,
) -> Option<(&'static str, Result<(), String>)> {
    let r = rep.dims().rank();
    let xa = |k: u32| rep.divided_root(a, k);
    let xb = |k: u32| rep.divided_root(b, k);
    let ctx = format!("α={a} r={p} β={b} s={s}");
    let base = xb(s).mul(&xa(p));
    match (a.is_odd(), b.is_odd()) {
        (false, false) => {
            let lhs = xa(p).mul(&xb(s));
            let mut rhs = base;
            if a.is_opposite(b) {
                let ha = rep.cartan(&a.coroot(r));
                for j in 1..=p.min(s) {
                    let shift = 2 * j as i64 - p as i64 - s as i64;
                    let mid = rep.matrix_binom(&ha, shift, j);
                    rhs = rhs.add(&xb(s - j).mul(&mid).mul(&xa(p - j)));
                }
            } else if let Some(sum) = a.try_add(b) {
                let c = a.structure_constant(b).expect("sum is a root");
                for j in 1..=p.min(s) {
                    let term = xb(s - j).mul(&rep.divided_root(&sum, j)).mul(&xa(p - j));
                    rhs = rhs.add(&term.scale(&rat(c.pow(j))));
                }
            }
            Some(("divided-even-even", compare(&lhs, &rhs, ctx)))
        }
        (false, true) => {
            let lhs = xa(p).mul(&xb(1));
            let mut rhs = base;
            if let Some(sum) = a.try_add(b) {
                let c = a.structure_constant(b).expect("sum is a root");
                rhs = rhs.add(&rep.root_vector(&sum).mul(&xa(p - 1)).scale(&rat(c)));
            }
            Some(("divided-even-odd", compare(&lhs, &rhs, ctx)))
        }
        (true, false) => {
            let lhs = xa(1).mul(&xb(s));
            let mut rhs = base;
            if let Some(sum) = a.try_add(b) {
                let c = a.structure_constant(b).expect("sum is a root");
                rhs = rhs.add(&rep.root_vector(&sum).mul(&xb(s - 1)).scale(&rat(c)));
            }
            Some(("divided-odd-even", compare(&lhs, &rhs, ctx)))
        }
        (true, true) => {
            let lhs = xa(1).mul(&xb(1));
            let mut rhs = base.neg();
            if a.is_opposite(b) {
                rhs = rhs.add(&rep.cartan(&a.coroot(r)));
            } else if let Some(sum) = a.try_add(b) {
                rhs = rhs.add(rep.root_vector(&sum));
            }
            Some(("odd-odd", compare(&lhs, &rhs, ctx)))
        }
    }
}

/// Weight idempotent calculus: orthogonality, completeness, vanishing of
/// `H_μ` for `|μ| > d`, eigenvalues of Cartan binomials, and the expansion of `H_μ`.
pub fn verify_idempotents_classical(dims: &Dims) -> VerificationReport {
    let rep = ClassicalRep::new(dims);
    let mut report = VerificationReport::new(format!("classical idempotents, {dims}"));
    let r = dims.rank();
    let d = dims.d();
    let weights = enumerate_weights(dims);
    let idem = |l: &Weight| (*rep.idempotent(l).expect("weight in Λ")).clone();

    let mut outcomes = Vec::new();
    for l in &weights {
        outcomes.push(compare(&idem(l), &weight_projection(rep.basis(), l), format!("λ={l}")));
        for u in &weights {
            let rhs = if l == u { idem(l) } else { rep.zero() };
            outcomes.push(compare(&idem(l).mul(&idem(u)), &rhs, format!("λ={l} μ={u}")));
        }
    }
    let sum = weights.iter().fold(rep.zero(), |acc, l| acc.add(&idem(l)));
    outcomes.push(compare(&sum, &rep.identity(), "Σ 1_λ"));
    report.record(
        "idempotents-complete",
        "1_λ = Π binom(H_i, λ_i) is the λ weight projection; 1_λ 1_μ = δ_λμ 1_λ; Σ_λ 1_λ = 1",
        first_failure(outcomes),
    );

    let mus: Vec<Weight> = (0..=d + 1).flat_map(|k| enumerate_weights(&dims.with_degree(k))).collect();
    report.record(
        "h-mu-vanishing",
        "H_μ = 0 for |μ| > d",
        first_failure(
            mus.iter()
                .filter(|u| u.size() > d as i64)
                .map(|u| compare(&rep.h_mu(u), &rep.zero(), format!("μ={u}"))),
        ),
    );

    let mut outcomes = Vec::new();
    for l in &weights {
        for i in 1..=r {
            outcomes.push(compare(
                &rep.unit(i, i).mul(&idem(l)),
                &idem(l).scale(&rat(l.at(i))),
                format!("H_{i} 1_{l}"),
            ));
            for k in 0..=d as u32 + 1 {
                let c = Rational::from_integer(binomial(l.at(i), k));
                outcomes.push(compare(
                    &rep.h_binom(i, k).mul(&idem(l)),
                    &idem(l).scale(&c),
                    format!("binom(H_{i},{k}) 1_{l}"),
                ));
            }
        }
    }
    report.record(
        "cartan-eigenvalues",
        "H_i 1_λ = λ_i 1_λ, binom(H_i, k) 1_λ = binom(λ_i, k) 1_λ",
        first_failure(outcomes),
    );

    let lambda_mu = |l: &Weight, u: &Weight| -> Rational {
        Rational::from_integer((1..=r).fold(BigInt::one(), |acc, i| acc * binomial(l.at(i), u.at(i) as u32)))
    };
    let mut outcomes = Vec::new();
    for u in &mus {
        let hu = rep.h_mu(u);
        let mut expansion = rep.zero();
        for l in &weights {
            let c = lambda_mu(l, u);
            outcomes.push(compare(&hu.mul(&idem(l)), &idem(l).scale(&c), format!("H_{u} 1_{l}")));
            expansion = expansion.add(&idem(l).scale(&c));
        }
        outcomes.push(compare(&hu, &expansion, format!("H_{u} expansion")));
    }
    report.record(
        "h-mu-expansion",
        "H_μ 1_λ = λ_μ 1_λ and H_μ = Σ_λ λ_μ 1_λ with λ_μ = Π binom(λ_i, μ_i)",
        first_failure(outcomes),
    );
    report
}

/// The outcome of a rank certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub basis_size: usize,
    pub expected: u128,
}

impl RankCertificate {
    pub fn passed(&self) -> bool {
        self.rank == self.basis_size && self.basis_size as u128 == self.expected
    }
}

/// Clears denominators of a rational vector, giving an integer vector on the same line.
pub(crate) fn integer_vector(v: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    let l = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    v.iter().map(|(i, x)| (*i, x.numer() * (&l / x.denom()))).collect()
}

/// Exact rank of `ρ(Y)`, compared against `|Y|` and the dimension formula.
pub fn basis_rank_certify(dims: &Dims) -> (VerificationReport, RankCertificate) {
    let rep = ClassicalRep::new(dims);
    let ys = enumerate_basis_y(dims);
    let vectors: Vec<Vec<(usize, BigInt)>> = ys
        .par_iter()
        .map(|y| integer_vector(&rep.basis_image(y).flatten()))
        .collect();
    let rank = bareiss_rank(densify(&vectors));
    let cert = RankCertificate {
        rank,
        basis_size: ys.len(),
        expected: dimension_count(dims),
    };
    let mut report = VerificationReport::new(format!("classical basis rank, {dims}"));
    report.record(
        "basis-rank",
        "rank ρ(Y) = |Y| = dim S(m|n,d)",
        if cert.passed() {
            Ok(())
        } else {
            Err(format!("rank {} |Y| {} formula {}", cert.rank, cert.basis_size, cert.expected))
        },
    );
    (report, cert)
}

/// Coordinates of `ρ(mono)` in the basis `ρ(Y)`, listing only nonzero coordinates.
pub fn coordinates_in_y(dims: &Dims, mono: &KostantMonomial) -> Result<Vec<(BasisElement, Rational)>, ReplError> {
    let rep = ClassicalRep::new(dims);
    let target = rep.kostant(mono)?.flatten();
    let ys = enumerate_basis_y(dims);
    let columns: Vec<Vec<(usize, Rational)>> = ys.par_iter().map(|y| rep.basis_image(y).flatten()).collect();
    let x = solve_in_span(&columns, &target).ok_or(ReplError::OutsideSpan)?;
    Ok(ys.into_iter().zip(x).filter(|(_, c)| !Zero::is_zero(c)).collect())
}

/// Generators commute with every signed adjacent transposition, and the
/// commutant of the symmetric group has the expected dimension.
pub fn verify_schur_weyl(dims: &Dims) -> VerificationReport {
    let rep = ClassicalRep::new(dims);
    let mut report = VerificationReport::new(format!("Schur-Weyl duality, {dims}"));
    let swaps: Vec<RepMatrix> = (0..dims.d().saturating_sub(1))
        .map(|t| signed_transposition(rep.basis(), t))
        .collect();
    let mut outcomes = Vec::new();
    for g in Generator::all(dims) {
        let x = rep.generator(g).expect("in range");
        for (t, s) in swaps.iter().enumerate() {
            outcomes.push(compare(&x.mul(s), &s.mul(&x), format!("{g} s_{}", t + 1)));
        }
    }
    report.record("generators-commute-with-swaps", "ρ(g) s_t = s_t ρ(g)", first_failure(outcomes));
    let dim = commutant_dimension(dims);
    let expected = dimension_count(dims);
    report.record(
        "commutant-dimension",
        "dim End_{Σ_d}(V^⊗d) = dim S(m|n,d)",
        if dim as u128 == expected {
            Ok(())
        } else {
            Err(format!("commutant {dim}, formula {expected}"))
        },
    );
    report
}

/// `dim {X : s_t X = X s_t for all t}`, by exact elimination on the linear conditions.
pub fn commutant_dimension(dims: &Dims) -> usize {
    let basis = TensorBasis::new(dims);
    let n = basis.len();
    let mut ech = SparseEchelon::<Rational>::new();
    for t in 0..dims.d().saturating_sub(1) {
        let s: RepMatrix = signed_transposition(&basis, t);
        let st = s.transpose();
        // (s X - X s)_{a,b} = Σ_k s_{a,k} X_{k,b} - Σ_k X_{a,k} s_{k,b}
        for a in 0..n {
            for b in 0..n {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, v) in s.row(a) {
                    *row.entry(k * n + b).or_insert_with(|| rat(0)) += v;
                }
                for (k, v) in st.row(b) {
                    *row.entry(a * n + k).or_insert_with(|| rat(0)) -= v;
                }
                row.retain(|_, v| !Zero::is_zero(v));
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    n * n - ech.rank()
}

/// `{"rows": N, "cols": N, "entries": [[r, c, "p/q"], ...]}`.
pub fn matrix_to_json(m: &RepMatrix) -> serde_json::Value {
    serde_json::json!({
        "rows": m.n_rows(),
        "cols": m.n_cols(),
        "entries": m.entries().map(|(r, c, v)| serde_json::json!([r, c, v.to_string()])).collect::<Vec<_>>(),
    })
}

/// Dense comma-separated rendering, one matrix row per line.
pub fn matrix_to_csv<T: Scalar>(m: &SparseMatrix<T>) -> String {
    let mut out = String::new();
    for r in 0..m.n_rows() {
        let row: Vec<String> = (0..m.n_cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
