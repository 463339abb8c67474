//! The simple-tensor basis of `(k^n)^⊗r`, the two defining bilinear forms,
//! and the right action of diagrams as exact sparse operators.
//!
//! Both forms pair `e_i` with `e_{i'}` where `i' = n+1-i`: the symmetric form
//! takes value 1 there, the skew form takes `ε_i` (+1 for `i` in the first
//! half, -1 in the second). Vertical edges of a diagram copy indices top to
//! bottom, a top horizontal edge evaluates the form on its two labels, and a
//! bottom horizontal edge emits the dual pairing element, summing over `n`
//! output choices.
//!
//! Sign convention for the skew form: the operator of a diagram carries the
//! global sign `(-1)^{crossing_number}`, and bottom horizontal edges are
//! paired right-to-left. This is the unique choice under which the assignment
//! is multiplicative with loop parameter `-n` (the relation `c_0 s_1 = c_0`
//! already forces a sign on the strand swaps, because the invariant element
//! emitted by a cup is antisymmetric). Consequences, pinned by tests:
//! a permutation diagram acts by its sign times the place permutation, and
//! the contraction acts on `e_{i_1} ⊗ e_{i_2} ⊗ …` by `ε_{i_2}` times the
//! closed formula implemented in [`apply_c0`]. Under the symmetric form the
//! edge products are used as written and no signs appear.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::diagrams::BrauerDiagram;
use crate::perm::Permutation;
use crate::scalars::{reduce_int, FieldSpec, FormKind, Scalar, ScalarError};
use crate::weights::{weight_of, Composition};

/// Ceiling on `n^r` for whole-operator materialization and full-basis scans.
pub const DENSE_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error(transparent)]
    Form(#[from] ScalarError),
    #[error("basis index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected a multi-index of length {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("scalar field does not match the form's field")]
    FieldMismatch,
    #[error("dense scan of {size} basis tensors exceeds the cap of {cap}")]
    DenseCapExceeded { size: u128, cap: u64 },
    #[error("cannot parse {0:?}")]
    ParseError(String),
}

/// A defining bilinear form on `k^n`: symmetric (characteristic ≠ 2) or
/// skew (even `n`), over an exact field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FormSpec {
    kind: FormKind,
    n: usize,
    field: FieldSpec,
}

impl FormSpec {
    pub fn new(kind: FormKind, n: usize, field: FieldSpec) -> Result<Self, ActionError> {
        if n == 0 {
            return Err(ActionError::IndexOutOfRange { index: 0, n });
        }
        match kind {
            FormKind::Symmetric if field.characteristic() == 2 => {
                Err(ScalarError::SymmetricCharTwo.into())
            }
            FormKind::Skew if n % 2 != 0 => Err(ScalarError::SkewOddDimension(n).into()),
            _ => Ok(FormSpec { kind, n, field }),
        }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// The reversal index `i' = n+1-i`.
    pub fn dual_index(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// `ε_i`: +1 when `i < i'`, -1 otherwise.
    pub fn epsilon(&self, i: usize) -> i64 {
        if i < self.dual_index(i) {
            1
        } else {
            -1
        }
    }
}

/// `(e_i, e_m)`: nonzero exactly when `m = i'`, with value 1 (symmetric)
/// or `ε_i` (skew).
pub fn form_value(i: usize, m: usize, form: &FormSpec) -> Scalar {
    assert!(i >= 1 && i <= form.n() && m >= 1 && m <= form.n(), "basis index out of range");
    if m != form.dual_index(i) {
        return Scalar::zero(form.field());
    }
    match form.kind() {
        FormKind::Symmetric => Scalar::one(form.field()),
        FormKind::Skew => reduce_int(form.epsilon(i), form.field()),
    }
}

/// The dual basis vector `e*_j = c·e_m` with `(e_i, e*_j) = δ_{ij}`:
/// `(j', 1)` for the symmetric form, `(j', ε_j)` for the skew form.
pub fn dual_vector(j: usize, form: &FormSpec) -> (usize, Scalar) {
    assert!(j >= 1 && j <= form.n(), "basis index out of range");
    match form.kind() {
        FormKind::Symmetric => (form.dual_index(j), Scalar::one(form.field())),
        FormKind::Skew => (form.dual_index(j), reduce_int(form.epsilon(j), form.field())),
    }
}

/// A multi-index `(i_1, …, i_r)` with entries in `1..=n`, labeling the simple
/// tensor `e_{i_1} ⊗ … ⊗ e_{i_r}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TensorIndex {
    indices: Vec<usize>,
}

impl TensorIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self, ActionError> {
        for &i in &indices {
            if i == 0 || i > n {
                return Err(ActionError::IndexOutOfRange { index: i, n });
            }
        }
        Ok(TensorIndex { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn r(&self) -> usize {
        self.indices.len()
    }

    /// Base-`n` code, bijective with `0..n^r`; lexicographic order of index
    /// sequences agrees with numeric order of codes.
    pub fn rank(&self, n: usize) -> u64 {
        self.indices
            .iter()
            .fold(0u64, |acc, &i| acc * n as u64 + (i as u64 - 1))
    }

    pub fn from_rank(mut code: u64, n: usize, r: usize) -> Self {
        let mut indices = vec![1usize; r];
        for slot in (0..r).rev() {
            indices[slot] = (code % n as u64) as usize + 1;
            code /= n as u64;
        }
        TensorIndex { indices }
    }

    /// All multi-indices for given `n`, `r` in lexicographic order, guarded
    /// by [`DENSE_CAP`].
    pub fn all(n: usize, r: usize) -> Result<Vec<TensorIndex>, ActionError> {
        let size = (n as u128).pow(r as u32);
        if size > DENSE_CAP as u128 {
            return Err(ActionError::DenseCapExceeded {
                size,
                cap: DENSE_CAP,
            });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut cur = vec![1usize; r];
        loop {
            out.push(TensorIndex {
                indices: cur.clone(),
            });
            let mut slot = r;
            loop {
                if slot == 0 {
                    return Ok(out);
                }
                slot -= 1;
                if cur[slot] < n {
                    cur[slot] += 1;
                    for x in cur.iter_mut().skip(slot + 1) {
                        *x = 1;
                    }
                    break;
                }
            }
        }
    }

    /// The occurrence-count weight of this multi-index.
    pub fn weight(&self, n: usize) -> Composition {
        weight_of(&self.indices, n).expect("indices validated on construction")
    }

    pub fn parse(s: &str, r: usize, n: usize) -> Result<Self, ActionError> {
        let indices = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ActionError::ParseError(s.to_string()))?;
        if indices.len() != r {
            return Err(ActionError::RankMismatch {
                expected: r,
                got: indices.len(),
            });
        }
        TensorIndex::new(indices, n)
    }
}

impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// A vector in the simple-tensor basis, stored sparsely.
pub type SparseVector = BTreeMap<TensorIndex, Scalar>;

/// Adds `c` to the coefficient of `idx`, keeping the map free of zeros.
pub fn add_term(v: &mut SparseVector, idx: TensorIndex, c: Scalar) {
    use std::collections::btree_map::Entry;
    match v.entry(idx) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Formats a sparse vector as `i1,…,ir:coeff` terms joined by `;`.
pub fn format_vector(v: &SparseVector) -> String {
    let terms: Vec<String> = v.iter().map(|(t, c)| format!("{t}:{c}")).collect();
    terms.join(";")
}

/// Parses the `;`-separated term encoding produced by [`format_vector`].
pub fn parse_vector(
    s: &str,
    r: usize,
    n: usize,
    field: FieldSpec,
) -> Result<SparseVector, ActionError> {
    let mut out = SparseVector::new();
    for term in s.split(';') {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (idx, coeff) = term
            .rsplit_once(':')
            .ok_or_else(|| ActionError::ParseError(term.to_string()))?;
        let idx = TensorIndex::parse(idx, r, n)?;
        let coeff =
            Scalar::parse(coeff, field).map_err(|_| ActionError::ParseError(term.to_string()))?;
        add_term(&mut out, idx, coeff);
    }
    Ok(out)
}

/// Place permutation on the right: slot `(a)σ` of the output holds slot `a`
/// of the input, so `(t·σ)·ρ = t·(σρ)`.
pub fn apply_permutation(t: &TensorIndex, perm: &Permutation) -> TensorIndex {
    assert_eq!(t.r(), perm.degree(), "rank mismatch");
    let mut out = vec![0usize; t.r()];
    for a in 1..=t.r() {
        out[perm.apply(a) - 1] = t.indices()[a - 1];
    }
    TensorIndex { indices: out }
}

/// The closed contraction formula on the first two slots: zero unless
/// `i_1 = i_2'`, otherwise `Σ_j e_j ⊗ e_{j'} ⊗ tail` with coefficient 1
/// (symmetric) or `ε_j` (skew).
///
/// Under the skew form the diagram operator [`phi_row`] of the contraction
/// equals this formula times `ε_{i_2}`; under the symmetric form they agree
/// exactly.
pub fn apply_c0(t: &TensorIndex, form: &FormSpec) -> Vec<(TensorIndex, Scalar)> {
    assert!(t.r() >= 2, "contraction needs at least two slots");
    let i1 = t.indices()[0];
    let i2 = t.indices()[1];
    if i1 != form.dual_index(i2) {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(form.n());
    for j in 1..=form.n() {
        let mut indices = t.indices().to_vec();
        indices[0] = j;
        indices[1] = form.dual_index(j);
        let coeff = match form.kind() {
            FormKind::Symmetric => Scalar::one(form.field()),
            FormKind::Skew => reduce_int(form.epsilon(j), form.field()),
        };
        out.push((TensorIndex { indices }, coeff));
    }
    out
}

/// One row of the diagram operator: the image of the basis tensor `t` under
/// the right action of `d`. Output terms are sorted by index and carry only
/// nonzero (unit) coefficients.
pub fn phi_row(
    d: &BrauerDiagram,
    form: &FormSpec,
    t: &TensorIndex,
) -> Result<Vec<(TensorIndex, Scalar)>, ActionError> {
    let r = d.r();
    if t.r() != r {
        return Err(ActionError::RankMismatch {
            expected: r,
            got: t.r(),
        });
    }
    for &i in t.indices() {
        if i == 0 || i > form.n() {
            return Err(ActionError::IndexOutOfRange {
                index: i,
                n: form.n(),
            });
        }
    }
    let skew = form.kind() == FormKind::Skew;
    let mut negate = skew && d.crossing_number() % 2 == 1;

    for (a, b) in d.top_horizontal_edges() {
        let ia = t.indices()[a];
        if t.indices()[b] != form.dual_index(ia) {
            return Ok(Vec::new());
        }
        if skew && form.epsilon(ia) < 0 {
            negate = !negate;
        }
    }

    let mut template = vec![0usize; r];
    for (a, b) in d.vertical_edges() {
        template[b] = t.indices()[a];
    }

    let one = Scalar::one(form.field());
    let base = if negate { -&one } else { one.clone() };
    let mut rows: Vec<(Vec<usize>, Scalar)> = vec![(template, base)];
    for (a, b) in d.bottom_horizontal_edges() {
        let mut next = Vec::with_capacity(rows.len() * form.n());
        for (indices, coeff) in &rows {
            for m in 1..=form.n() {
                let mut out = indices.clone();
                out[a] = m;
                out[b] = form.dual_index(m);
                // Right-to-left pairing: the sign comes from the right vertex.
                let c = if skew && form.epsilon(form.dual_index(m)) < 0 {
                    -coeff
                } else {
                    coeff.clone()
                };
                next.push((out, c));
            }
        }
        rows = next;
    }
    let mut out: Vec<(TensorIndex, Scalar)> = rows
        .into_iter()
        .map(|(indices, c)| (TensorIndex { indices }, c))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// The full matrix of a diagram acting on `(k^n)^⊗r`, stored row-sparsely
/// and keyed by input index. Empty rows are omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseOperator {
    r: usize,
    n: usize,
    field: FieldSpec,
    rows: BTreeMap<TensorIndex, Vec<(TensorIndex, Scalar)>>,
}

impl SparseOperator {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn row(&self, t: &TensorIndex) -> &[(TensorIndex, Scalar)] {
        self.rows.get(t).map_or(&[], |r| r.as_slice())
    }

    pub fn rows(&self) -> impl Iterator<Item = (&TensorIndex, &[(TensorIndex, Scalar)])> {
        self.rows.iter().map(|(k, v)| (k, v.as_slice()))
    }

    /// Applies the operator on the right of a sparse vector.
    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (t, c) in v {
            for (u, w) in self.row(t) {
                add_term(&mut out, u.clone(), c * w);
            }
        }
        out
    }

    /// JSON dump: rows keyed by input index string, each a list of
    /// `[output index string, coefficient string]` pairs.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        for (t, row) in &self.rows {
            let terms: Vec<Value> = row
                .iter()
                .map(|(u, c)| json!([u.to_string(), c.to_string()]))
                .collect();
            obj.insert(t.to_string(), Value::Array(terms));
        }
        Value::Object(obj)
    }
}

/// Materializes the operator of `d` over every basis tensor, guarded by
/// [`DENSE_CAP`]. Construction walks admissible outputs only, so the cost is
/// proportional to the number of nonzero entries.
pub fn phi_operator(d: &BrauerDiagram, form: &FormSpec) -> Result<SparseOperator, ActionError> {
    let r = d.r();
    let mut rows = BTreeMap::new();
    for t in TensorIndex::all(form.n(), r)? {
        let row = phi_row(d, form, &t)?;
        if !row.is_empty() {
            rows.insert(t, row);
        }
    }
    Ok(SparseOperator {
        r,
        n: form.n(),
        field: form.field(),
        rows,
    })
}

/// Exhaustively checks the multiplication law of the action at rank `r`:
/// acting by `d1` then `d2` must equal `delta^s` times the action of the
/// product diagram, for every diagram pair and every basis tensor. Returns
/// the first offending `(d1, d2, input)` triple, or `None` when the law
/// holds.
pub fn representation_property(
    r: usize,
    form: &FormSpec,
) -> Result<Option<(BrauerDiagram, BrauerDiagram, TensorIndex)>, ActionError> {
    use crate::diagrams::{diagram_multiply, enumerate_diagrams};
    use crate::scalars::delta_parameter;

    let delta = delta_parameter(form.kind(), form.n(), form.field())
        .expect("form construction enforces the delta preconditions");
    let all = enumerate_diagrams(r).map_err(|e| ActionError::ParseError(e.to_string()))?;
    let ops: Vec<SparseOperator> = all
        .iter()
        .map(|d| phi_operator(d, form))
        .collect::<Result<_, _>>()?;
    let basis = TensorIndex::all(form.n(), r)?;
    for (i, d1) in all.iter().enumerate() {
        for (j, d2) in all.iter().enumerate() {
            let prod = diagram_multiply(d1, d2).expect("equal ranks");
            let scale = delta.pow(prod.cycles as u64);
            let prod_op = phi_operator(&prod.diagram, form)?;
            for t in &basis {
                let mut lhs = SparseVector::new();
                for (u, c) in ops[i].row(t) {
                    for (v, w) in ops[j].row(u) {
                        add_term(&mut lhs, v.clone(), c * w);
                    }
                }
                let mut rhs = SparseVector::new();
                for (u, c) in prod_op.row(t) {
                    add_term(&mut rhs, u.clone(), c * &scale);
                }
                if lhs != rhs {
                    return Ok(Some((d1.clone(), d2.clone(), t.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Right action of an algebra element (a linear combination of diagrams) on
/// a sparse vector.
pub fn act(
    vector: &SparseVector,
    element: &[(BrauerDiagram, Scalar)],
    form: &FormSpec,
) -> Result<SparseVector, ActionError> {
    let field = form.field();
    let mut out = SparseVector::new();
    for (d, c) in element {
        if c.field() != field {
            return Err(ActionError::FieldMismatch);
        }
        if c.is_zero() {
            continue;
        }
        for (t, v) in vector {
            if v.field() != field {
                return Err(ActionError::FieldMismatch);
            }
            for (u, w) in phi_row(d, form, t)? {
                add_term(&mut out, u, &(&w * v) * c);
            }
        }
    }
    Ok(out)
}
