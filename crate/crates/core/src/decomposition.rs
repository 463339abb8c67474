//! Grouping the simple-tensor basis into summands indexed by orthogonal
//! weights, exact invariance verification under the diagram action, and the
//! relabeling isomorphisms between summands in the same orbit.
//!
//! Every check here is an exact equality over the field; nothing is
//! probabilistic and there are no tolerances.

use std::collections::BTreeSet;

use num::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::{enumerate_diagrams, generator_diagrams, BrauerDiagram, DiagramError};
use crate::perm::Permutation;
use crate::scalars::{FieldSpec, FormKind, Scalar};
use crate::tensor_action::{phi_row, ActionError, FormSpec, SparseVector, TensorIndex, DENSE_CAP};
use crate::weights::{
    dominant_representative, fiber, image_weights, normalize_weight, pi_map, signed_perm_apply,
    Composition, OrthWeight, SignedPermutation, WeightError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("summand dimension does not fit the report")]
    DimensionOverflow,
    #[error("relabeling degree {got} does not match l = {expected}")]
    BadLift { expected: usize, got: usize },
    #[error("permutation degree {got} does not match n = {expected}")]
    BadRelabeling { expected: usize, got: usize },
}

/// The ambient setting: tensor degree `r` over `k^n` with a chosen form kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Context {
    pub n: usize,
    pub r: usize,
    pub kind: FormKind,
}

impl Context {
    pub fn new(n: usize, r: usize, kind: FormKind) -> Self {
        Context { n, r, kind }
    }

    pub fn form(&self, field: FieldSpec) -> Result<FormSpec, ActionError> {
        FormSpec::new(self.kind, self.n, field)
    }
}

/// Whether invariance is checked against the generating diagrams only or
/// against every diagram of the given rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum CheckMode {
    #[default]
    Generators,
    AllDiagrams,
}

/// What a summand basis is labeled by.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleLabel {
    Perm(Composition),
    Orth(OrthWeight),
}

/// A labeled set of basis tensors inside `(k^n)^⊗r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleBasis {
    pub label: ModuleLabel,
    pub basis: Vec<TensorIndex>,
    pub context: Context,
}

/// All multi-indices of the given weight, in lexicographic order.
pub fn indices_of_weight(lambda: &Composition) -> Vec<TensorIndex> {
    let n = lambda.n();
    let r = lambda.total();
    let mut counts = lambda.parts().to_vec();
    let mut cur = Vec::with_capacity(r);
    let mut out = Vec::new();
    fn rec(
        counts: &mut [usize],
        cur: &mut Vec<usize>,
        r: usize,
        n: usize,
        out: &mut Vec<TensorIndex>,
    ) {
        if cur.len() == r {
            out.push(TensorIndex::new(cur.clone(), n).expect("values stay in range"));
            return;
        }
        for v in 1..=n {
            if counts[v - 1] > 0 {
                counts[v - 1] -= 1;
                cur.push(v);
                rec(counts, cur, r, n, out);
                cur.pop();
                counts[v - 1] += 1;
            }
        }
    }
    rec(&mut counts, &mut cur, r, n, &mut out);
    out
}

/// The basis of the permutation-module summand for `lambda`.
pub fn build_perm_module(lambda: &Composition, context: Context) -> ModuleBasis {
    ModuleBasis {
        label: ModuleLabel::Perm(lambda.clone()),
        basis: indices_of_weight(lambda),
        context,
    }
}

/// The basis of the summand for `xi`: the union of the weight bases over its
/// fiber, in lexicographic order.
pub fn build_module(xi: &OrthWeight, context: Context) -> Result<ModuleBasis, DecompError> {
    let xi = normalize_weight(xi, context.n, context.r)?;
    let mut basis = Vec::new();
    for lambda in fiber(&xi, context.n, context.r)? {
        basis.extend(indices_of_weight(&lambda));
    }
    basis.sort();
    Ok(ModuleBasis {
        label: ModuleLabel::Orth(xi),
        basis,
        context,
    })
}

/// The diagrams used for invariance checking: the standard generators when
/// `r ≥ 2`, and nothing at all when `r = 1` (the only diagram is the
/// identity strand).
pub fn invariance_generators(r: usize) -> Vec<BrauerDiagram> {
    if r < 2 {
        Vec::new()
    } else {
        generator_diagrams(r).expect("r >= 2")
    }
}

/// On failure, the offending generator, input basis tensor, and output term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub generator: BrauerDiagram,
    pub input: TensorIndex,
    pub output: TensorIndex,
    pub coefficient: Scalar,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvarianceCheck {
    pub verified: bool,
    pub certificate: Option<Certificate>,
}

/// Checks that the summand of `xi` is stable under the action: every output
/// term of every checked diagram applied to every basis tensor must fold
/// back onto `xi`.
pub fn verify_invariance(
    xi: &OrthWeight,
    context: Context,
    field: FieldSpec,
    mode: CheckMode,
) -> Result<InvarianceCheck, DecompError> {
    let form = context.form(field)?;
    let module = build_module(xi, context)?;
    let xi = match &module.label {
        ModuleLabel::Orth(w) => w.clone(),
        ModuleLabel::Perm(_) => unreachable!(),
    };
    let diagrams = match mode {
        CheckMode::Generators => invariance_generators(context.r),
        CheckMode::AllDiagrams => enumerate_diagrams(context.r)?,
    };
    for g in &diagrams {
        for v in &module.basis {
            for (u, c) in phi_row(g, &form, v)? {
                if pi_map(&u.weight(context.n)) != xi {
                    return Ok(InvarianceCheck {
                        verified: false,
                        certificate: Some(Certificate {
                            generator: g.clone(),
                            input: v.clone(),
                            output: u,
                            coefficient: c,
                        }),
                    });
                }
            }
        }
    }
    Ok(InvarianceCheck {
        verified: true,
        certificate: None,
    })
}

/// One row of a decomposition report.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SummandReport {
    pub xi: Vec<i64>,
    pub parity: Option<u8>,
    pub dim: u64,
    pub fiber_size: u64,
    pub dominant: Vec<i64>,
    pub verified: bool,
}

/// The full decomposition of `(k^n)^⊗r` into weight summands, with exact
/// per-summand verification status.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub r: usize,
    pub form: FormKind,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub summands: Vec<SummandReport>,
    pub total_dim: u64,
}

impl DecompositionReport {
    pub fn all_verified(&self) -> bool {
        self.summands.iter().all(|s| s.verified)
    }
}

/// Builds every summand, checks that the bases partition the full index set
/// with total dimension `n^r`, and verifies invariance of each summand.
pub fn full_decomposition(
    context: Context,
    field: FieldSpec,
    mode: CheckMode,
) -> Result<DecompositionReport, DecompError> {
    let _ = context.form(field)?;
    let size = (context.n as u128).pow(context.r as u32);
    if size > DENSE_CAP as u128 {
        return Err(ActionError::DenseCapExceeded {
            size,
            cap: DENSE_CAP,
        }
        .into());
    }

    let mut summands = Vec::new();
    let mut seen: BTreeSet<TensorIndex> = BTreeSet::new();
    let mut total = 0u64;
    for xi in image_weights(context.n, context.r) {
        let module = build_module(&xi, context)?;
        let fiber_size = fiber(&xi, context.n, context.r)?.len() as u64;
        let dim = module.basis.len() as u64;
        let expected_dim = crate::weights::dim_n(&xi, context.n, context.r)?
            .to_u64()
            .ok_or(DecompError::DimensionOverflow)?;
        let disjoint = module.basis.iter().all(|t| seen.insert(t.clone()));
        let check = verify_invariance(&xi, context, field, mode)?;
        summands.push(SummandReport {
            xi: xi.entries().to_vec(),
            parity: normalize_weight(&xi, context.n, context.r)?.parity(),
            dim,
            fiber_size,
            dominant: dominant_representative(&xi).entries().to_vec(),
            verified: check.verified && disjoint && dim == expected_dim,
        });
        total += dim;
    }
    let complete = total == size as u64 && seen.len() as u64 == total;
    if !complete {
        // A gap or overlap in the bases invalidates every summand's status.
        for s in &mut summands {
            s.verified = false;
        }
    }
    Ok(DecompositionReport {
        n: context.n,
        r: context.r,
        form: context.kind,
        characteristic: field.characteristic(),
        summands,
        total_dim: total,
    })
}

/// The relabeling bijection on `{1..n}` induced by a signed permutation of
/// the first `l` indices: position `i ≤ l` goes to `σ(i)` or its reversal
/// partner according to the sign, and reversal partners track along.
fn lift_to_indices(w: &SignedPermutation, n: usize) -> Result<Permutation, DecompError> {
    let l = n / 2;
    if w.l() != l {
        return Err(DecompError::BadLift {
            expected: l,
            got: w.l(),
        });
    }
    let mut images = vec![0usize; n];
    for i in 1..=l {
        let j = w.perm().apply(i);
        let target = if w.signs()[j - 1] > 0 { j } else { n + 1 - j };
        images[i - 1] = target;
        images[n - i] = n + 1 - target;
    }
    if n % 2 == 1 {
        images[l] = l + 1;
    }
    Ok(Permutation::from_images(images).expect("lift is a bijection"))
}

fn relabel(t: &TensorIndex, w: &Permutation, n: usize) -> TensorIndex {
    let indices: Vec<usize> = t.indices().iter().map(|&i| w.apply(i)).collect();
    TensorIndex::new(indices, n).expect("relabeling stays in range")
}

/// Checks that relabeling basis vectors by (the lift of) `w` maps the
/// summand of `xi` onto the summand of `w(xi)` and intertwines the action of
/// every generator diagram, as sparse operators conjugated by the
/// relabeling.
///
/// Under the skew form the lift is realized as a monomial isometry rather
/// than a plain permutation matrix: a relabeled basis vector additionally
/// picks up the sign `∏_a sgn(i_a)` where `sgn(i') = ε_i ε_{w(i)}` on each
/// reversal pair. Under the symmetric form all signs are `+1`.
pub fn iso_check(
    xi: &OrthWeight,
    w: &SignedPermutation,
    context: Context,
    field: FieldSpec,
) -> Result<bool, DecompError> {
    let form = context.form(field)?;
    let n = context.n;
    let lift = lift_to_indices(w, n)?;
    let xi = normalize_weight(xi, n, context.r)?;
    let moved = signed_perm_apply(w, &xi)?;

    // Per-index signs making the lift an isometry of the skew form.
    let sgn: Vec<i64> = match context.kind {
        FormKind::Symmetric => vec![1; n],
        FormKind::Skew => {
            let mut sgn = vec![1i64; n];
            for i in 1..=n / 2 {
                let eps = |x: usize| if x <= n / 2 { 1i64 } else { -1 };
                sgn[n - i] = eps(i) * eps(lift.apply(i));
            }
            sgn
        }
    };
    let tensor_sign = |t: &TensorIndex| -> Scalar {
        let mut acc = Scalar::one(field);
        for &i in t.indices() {
            if sgn[i - 1] < 0 {
                acc = -&acc;
            }
        }
        acc
    };

    let source = build_module(&xi, context)?;
    let target = build_module(&moved, context)?;
    let relabeled: BTreeSet<TensorIndex> = source
        .basis
        .iter()
        .map(|t| relabel(t, &lift, n))
        .collect();
    let target_set: BTreeSet<TensorIndex> = target.basis.iter().cloned().collect();
    if relabeled != target_set {
        return Ok(false);
    }

    for g in invariance_generators(context.r) {
        for t in &source.basis {
            let mut lhs = SparseVector::new();
            for (u, c) in phi_row(&g, &form, t)? {
                crate::tensor_action::add_term(&mut lhs, relabel(&u, &lift, n), &c * &tensor_sign(&u));
            }
            let mut rhs = SparseVector::new();
            let t_moved = relabel(t, &lift, n);
            let t_sign = tensor_sign(t);
            for (u, c) in phi_row(&g, &form, &t_moved)? {
                crate::tensor_action::add_term(&mut rhs, u, &c * &t_sign);
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that relabeling basis indices by a bijection `w` of `{1..n}` maps
/// the weight-module basis of `lambda` onto that of the permuted weight and
/// commutes with every adjacent place transposition.
pub fn perm_module_iso_check(lambda: &Composition, w: &Permutation) -> Result<bool, DecompError> {
    let n = lambda.n();
    if w.degree() != n {
        return Err(DecompError::BadRelabeling {
            expected: n,
            got: w.degree(),
        });
    }
    let r = lambda.total();
    let mut target_parts = vec![0usize; n];
    for i in 1..=n {
        target_parts[w.apply(i) - 1] = lambda.parts()[i - 1];
    }
    let target = Composition::new(target_parts);

    let source_basis = indices_of_weight(lambda);
    let relabeled: BTreeSet<TensorIndex> =
        source_basis.iter().map(|t| relabel(t, w, n)).collect();
    let target_set: BTreeSet<TensorIndex> =
        indices_of_weight(&target).into_iter().collect();
    if relabeled != target_set {
        return Ok(false);
    }

    for a in 1..r {
        let swap = Permutation::transposition(r, a, a + 1).expect("in range");
        for t in &source_basis {
            let lhs = relabel(&crate::tensor_action::apply_permutation(t, &swap), w, n);
            let rhs = crate::tensor_action::apply_permutation(&relabel(t, w, n), &swap);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that the place-permutation orbit of one basis tensor of weight
/// `lambda` is the whole weight basis.
pub fn transitivity_check(lambda: &Composition) -> bool {
    let basis = indices_of_weight(lambda);
    let r = lambda.total();
    let start = match basis.first() {
        Some(t) => t.clone(),
        None => return false,
    };
    let mut seen: BTreeSet<TensorIndex> = [start.clone()].into_iter().collect();
    let mut frontier = vec![start];
    while let Some(t) = frontier.pop() {
        for a in 1..r {
            let swap = Permutation::transposition(r, a, a + 1).expect("in range");
            let next = crate::tensor_action::apply_permutation(&t, &swap);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.len() == basis.len() && basis.iter().all(|t| seen.contains(t))
}
