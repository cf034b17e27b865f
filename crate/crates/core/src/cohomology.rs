//! The bracket as a linear map off the tensor cube, the induced slot action
//! of a linear map on the cube, a kernel-based membership test for
//! quasiderivations, and degree 0/1 coboundary operators for two coefficient
//! actions (through the bracket, and the zero action).
//!
//! Cube coordinates: the ordered basis triple `(i, j, k)` sits at index
//! `(i*n + j)*n + k`. A 1-cochain stores one algebra vector per ordered
//! basis triple and is extended to vector arguments by multilinearity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::algebra::{Algebra, BracketTable};
use crate::map_spaces::{self};
use crate::matrix::{axpy, is_zero_vector, solve_exact, zero_vector, Matrix};
use crate::scalar::{int, Scalar};
use crate::subspace::Subspace;
use num_traits::Zero;

/// Coordinate of the ordered triple `(i, j, k)` in the tensor cube.
pub fn cube_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < n && j < n && k < n);
    (i * n + j) * n + k
}

fn cube_unindex(n: usize, idx: usize) -> (usize, usize, usize) {
    (idx / (n * n), (idx / n) % n, idx % n)
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a + b;
    }
}

fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = &*a - b;
    }
}

/// Matrix of the bracket as a linear map from the tensor cube `F^(n^3)` to
/// `F^n`: column `(i*n + j)*n + k` holds `[e_i, e_j, e_k]`.
pub fn mu_matrix(a: &Algebra) -> Matrix {
    let n = a.dim();
    let table = BracketTable::new(a);
    let mut m = Matrix::zero(n, n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let Some(w) = table.get(i, j, k) {
                    let col = cube_index(n, i, j, k);
                    for (r, entry) in w.iter().enumerate() {
                        if !entry.is_zero() {
                            m.set(r, col, entry.clone());
                        }
                    }
                }
            }
        }
    }
    m
}

/// Kernel of the bracket map on the full tensor cube. Its codimension is
/// the dimension of the derived subalgebra.
pub fn mu_kernel(a: &Algebra) -> Subspace {
    Subspace::nullspace_of(&mu_matrix(a))
}

/// The induced action of `f` on the tensor cube: the sum of the three maps
/// applying `f` in one slot and the identity in the other two.
pub fn f_star(f: &Matrix) -> Matrix {
    assert!(f.is_square(), "slot extension of a non-square map");
    let n = f.rows();
    let nnn = n * n * n;
    let mut m = Matrix::zero(nnn, nnn);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let col = cube_index(n, i, j, k);
                for s in 0..n {
                    for (target, entry) in [
                        (cube_index(n, s, j, k), f.get(s, i)),
                        (cube_index(n, i, s, k), f.get(s, j)),
                        (cube_index(n, i, j, s), f.get(s, k)),
                    ] {
                        if !entry.is_zero() {
                            let v = m.get(target, col) + entry;
                            m.set(target, col, v);
                        }
                    }
                }
            }
        }
    }
    m
}

/// Applies the slot extension of `f` to a cube vector without materializing
/// the dense cube matrix.
pub fn apply_f_star(n: usize, f: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(v.len(), n * n * n, "cube vector of the wrong length");
    assert!(f.rows() == n && f.cols() == n, "map size must match the cube side");
    let mut out = zero_vector(n * n * n);
    for (idx, coeff) in v.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let (i, j, k) = cube_unindex(n, idx);
        for s in 0..n {
            for (target, entry) in [
                (cube_index(n, s, j, k), f.get(s, i)),
                (cube_index(n, i, s, k), f.get(s, j)),
                (cube_index(n, i, j, s), f.get(s, k)),
            ] {
                if !entry.is_zero() {
                    let add = coeff * entry;
                    out[target] = &out[target] + &add;
                }
            }
        }
    }
    out
}

fn kernel_preserved(a: &Algebra, table: &BracketTable, kernel: &Subspace, f: &Matrix) -> bool {
    let n = a.dim();
    for row in kernel.basis_rows() {
        let image = apply_f_star(n, f, &row);
        let mut acc = zero_vector(n);
        for (idx, coeff) in image.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (i, j, k) = cube_unindex(n, idx);
            if let Some(w) = table.get(i, j, k) {
                axpy(&mut acc, coeff, w);
            }
        }
        if !is_zero_vector(&acc) {
            return false;
        }
    }
    true
}

/// Membership test for quasiderivations through the bracket kernel: `f`
/// admits a companion map exactly when the slot extension of `f` maps the
/// kernel of the bracket into itself. Membership of an image vector is
/// decided by applying the bracket matrix to it, never by reducing against
/// the kernel basis.
pub fn is_qder_via_kernel(a: &Algebra, f: &Matrix) -> bool {
    let n = a.dim();
    assert!(f.rows() == n && f.cols() == n, "map size must match the algebra dimension");
    let table = BracketTable::new(a);
    let kernel = mu_kernel(a);
    kernel_preserved(a, &table, &kernel, f)
}

/// A 1-cochain: one algebra vector per ordered basis triple, the tabulated
/// form of a trilinear map from the cube into the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain1 {
    n: usize,
    values: Vec<Vec<Scalar>>,
}

impl Cochain1 {
    pub fn zero(n: usize) -> Self {
        Cochain1 { n, values: vec![zero_vector(n); n * n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Vec<Scalar>) -> Self {
        let mut values = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = f(i, j, k);
                    assert_eq!(v.len(), n, "cochain value of the wrong length");
                    values.push(v);
                }
            }
        }
        Cochain1 { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        &self.values[cube_index(self.n, i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    /// Value on `(w, e_j, e_k)`, the first slot extended multilinearly.
    pub fn eval_slot1(&self, w: &[Scalar], j: usize, k: usize) -> Vec<Scalar> {
        let mut acc = zero_vector(self.n);
        for (s, c) in w.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut acc, c, self.get(s, j, k));
            }
        }
        acc
    }

    /// Value on `(e_i, w, e_k)`, the second slot extended multilinearly.
    pub fn eval_slot2(&self, i: usize, w: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = zero_vector(self.n);
        for (s, c) in w.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut acc, c, self.get(i, s, k));
            }
        }
        acc
    }

    /// Value on `(e_i, e_j, w)`, the third slot extended multilinearly.
    pub fn eval_slot3(&self, i: usize, j: usize, w: &[Scalar]) -> Vec<Scalar> {
        let mut acc = zero_vector(self.n);
        for (s, c) in w.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut acc, c, self.get(i, j, s));
            }
        }
        acc
    }
}

/// Derivation defect of `f`, tabulated on ordered basis triples:
/// `f([x,y,z]) - [f(x),y,z] - [x,f(y),z] - [x,y,f(z)]`. Vanishes exactly
/// when `f` is a derivation.
pub fn delta0_adjoint(a: &Algebra, f: &Matrix) -> Cochain1 {
    let n = a.dim();
    assert!(f.rows() == n && f.cols() == n, "map size must match the algebra dimension");
    let table = BracketTable::new(a);
    let cols: Vec<Vec<Scalar>> = (0..n).map(|c| f.column(c)).collect();
    Cochain1::from_fn(n, |i, j, k| {
        let mut acc = match table.get(i, j, k) {
            Some(w) => f.apply(w),
            None => zero_vector(n),
        };
        sub_into(&mut acc, &table.bracket_v_e_e(&cols[i], j, k));
        sub_into(&mut acc, &table.bracket_e_v_e(i, &cols[j], k));
        sub_into(&mut acc, &table.bracket_e_e_v(i, j, &cols[k]));
        acc
    })
}

/// Composition of `f` with the bracket, tabulated on ordered basis triples:
/// the same coboundary when the action on coefficients is dropped.
pub fn delta0_trivial(a: &Algebra, f: &Matrix) -> Cochain1 {
    let n = a.dim();
    assert!(f.rows() == n && f.cols() == n, "map size must match the algebra dimension");
    let table = BracketTable::new(a);
    Cochain1::from_fn(n, |i, j, k| match table.get(i, j, k) {
        Some(w) => f.apply(w),
        None => zero_vector(n),
    })
}

/// Degree-1 coboundary of a 1-cochain with the zero action on coefficients,
/// at one ordered basis 5-tuple: the cochain value with `[x_i, x4, x5]`
/// substituted into slot i, summed over the three slots, minus the value on
/// `([x1,x2,x3], x4, x5)`.
pub fn delta1_trivial(table: &BracketTable, c: &Cochain1, t: [usize; 5]) -> Vec<Scalar> {
    let [x1, x2, x3, x4, x5] = t;
    let mut acc = zero_vector(c.n());
    if let Some(w) = table.get(x1, x4, x5) {
        add_into(&mut acc, &c.eval_slot1(w, x2, x3));
    }
    if let Some(w) = table.get(x2, x4, x5) {
        add_into(&mut acc, &c.eval_slot2(x1, w, x3));
    }
    if let Some(w) = table.get(x3, x4, x5) {
        add_into(&mut acc, &c.eval_slot3(x1, x2, w));
    }
    if let Some(w) = table.get(x1, x2, x3) {
        sub_into(&mut acc, &c.eval_slot1(w, x4, x5));
    }
    acc
}

/// Degree-1 coboundary of a 1-cochain with coefficients acted on through
/// the bracket, at one ordered basis 5-tuple. Adds to the zero-action
/// coboundary the four terms bracketing one cochain value against the
/// remaining arguments.
pub fn delta1_adjoint(table: &BracketTable, c: &Cochain1, t: [usize; 5]) -> Vec<Scalar> {
    let [x1, x2, x3, x4, x5] = t;
    let mut acc = delta1_trivial(table, c, t);
    let v = c.get(x1, x4, x5);
    if !is_zero_vector(v) {
        add_into(&mut acc, &table.bracket_v_e_e(v, x2, x3));
    }
    let v = c.get(x2, x4, x5);
    if !is_zero_vector(v) {
        add_into(&mut acc, &table.bracket_e_v_e(x1, v, x3));
    }
    let v = c.get(x3, x4, x5);
    if !is_zero_vector(v) {
        add_into(&mut acc, &table.bracket_e_e_v(x1, x2, v));
    }
    let v = c.get(x1, x2, x3);
    if !is_zero_vector(v) {
        sub_into(&mut acc, &table.bracket_v_e_e(v, x4, x5));
    }
    acc
}

/// Cap for scans over ordered basis 5-tuples. When the full count `n^5` is
/// within `cap` the scan is exhaustive; otherwise `cap` tuples are drawn
/// with a seeded deterministic generator and the report says so.
#[derive(Clone, Copy, Debug)]
pub struct TupleBudget {
    pub cap: usize,
    pub seed: u64,
}

impl Default for TupleBudget {
    fn default() -> Self {
        TupleBudget { cap: 32 * 1024, seed: 0 }
    }
}

impl TupleBudget {
    /// The 5-tuples a scan should visit, and whether they are a sample.
    pub fn five_tuples(&self, n: usize) -> (Vec<[usize; 5]>, bool) {
        if n == 0 {
            return (Vec::new(), false);
        }
        let total = n.pow(5);
        if total <= self.cap {
            let mut out = Vec::with_capacity(total);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            for e in 0..n {
                                out.push([a, b, c, d, e]);
                            }
                        }
                    }
                }
            }
            (out, false)
        } else {
            let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
            let out = (0..self.cap)
                .map(|_| {
                    let mut t = [0usize; 5];
                    for slot in &mut t {
                        *slot = rng.gen_range(0..n);
                    }
                    t
                })
                .collect();
            (out, true)
        }
    }

    pub fn total(&self, n: usize) -> usize {
        n.pow(5)
    }
}

/// Outcome of a 5-tuple identity scan.
#[derive(Clone, Copy, Debug)]
pub struct ScanReport {
    /// Tuples actually visited.
    pub checked: usize,
    /// Tuples in the full range.
    pub total: usize,
    /// True when the scan was a seeded sample instead of exhaustive.
    pub sampled: bool,
    /// Tuples where the identity failed.
    pub failures: usize,
    /// One failing tuple, when any failed.
    pub first_failure: Option<[usize; 5]>,
}

impl ScanReport {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn empty() -> ScanReport {
        ScanReport { checked: 0, total: 0, sampled: false, failures: 0, first_failure: None }
    }

    /// Combines two scans of the same identity family.
    pub fn merge(mut self, other: &ScanReport) -> ScanReport {
        self.checked += other.checked;
        self.total += other.total;
        self.sampled |= other.sampled;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
        self
    }
}

fn scan5(n: usize, budget: TupleBudget, mut fails: impl FnMut([usize; 5]) -> bool) -> ScanReport {
    let (tuples, sampled) = budget.five_tuples(n);
    let mut failures = 0usize;
    let mut first_failure = None;
    for &t in &tuples {
        if fails(t) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(t);
            }
        }
    }
    ScanReport { checked: tuples.len(), total: budget.total(n), sampled, failures, first_failure }
}

/// Checks that the bracket-action coboundary of `c` vanishes on basis
/// 5-tuples, up to the budget.
pub fn delta1_adjoint_vanishes(a: &Algebra, c: &Cochain1, budget: TupleBudget) -> ScanReport {
    let table = BracketTable::new(a);
    scan5(a.dim(), budget, |t| !is_zero_vector(&delta1_adjoint(&table, c, t)))
}

/// Checks that the zero-action coboundary of `c` vanishes on basis
/// 5-tuples, up to the budget.
pub fn delta1_trivial_vanishes(a: &Algebra, c: &Cochain1, budget: TupleBudget) -> ScanReport {
    let table = BracketTable::new(a);
    scan5(a.dim(), budget, |t| !is_zero_vector(&delta1_trivial(&table, c, t)))
}

/// Scans the exchange identity
/// `[g([x,y,z]),u,v] = [g([x,u,v]),y,z] + [x,g([y,u,v]),z] + [x,y,g([z,u,v])]`
/// on basis 5-tuples, up to the budget. Every difference f - f' of a
/// quasiderivation pair satisfies it.
pub fn bracket_exchange_identity(a: &Algebra, g: &Matrix, budget: TupleBudget) -> ScanReport {
    let n = a.dim();
    assert!(g.rows() == n && g.cols() == n, "map size must match the algebra dimension");
    let table = BracketTable::new(a);
    let g_of = |i: usize, j: usize, k: usize| -> Vec<Scalar> {
        match table.get(i, j, k) {
            Some(w) => g.apply(w),
            None => zero_vector(n),
        }
    };
    scan5(n, budget, |[x, y, z, u, v]| {
        let mut lhs = table.bracket_v_e_e(&g_of(x, y, z), u, v);
        sub_into(&mut lhs, &table.bracket_v_e_e(&g_of(x, u, v), y, z));
        sub_into(&mut lhs, &table.bracket_e_v_e(x, &g_of(y, u, v), z));
        sub_into(&mut lhs, &table.bracket_e_e_v(x, y, &g_of(z, u, v)));
        !is_zero_vector(&lhs)
    })
}

/// Solves for a map `g` whose composition with the bracket reproduces the
/// derivation defect of `f`. Returns the least-index solution, or `None`
/// when no such map exists; solvability is equivalent to `f` being a
/// quasiderivation. Both sides are alternating, so triples with strictly
/// increasing indices determine the system.
pub fn trivial_coboundary_witness(a: &Algebra, f: &Matrix) -> Option<Matrix> {
    let n = a.dim();
    assert!(f.rows() == n && f.cols() == n, "map size must match the algebra dimension");
    let defect = delta0_adjoint(a, f);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let w = a.basis_bracket(i, j, k);
                let target = defect.get(i, j, k);
                for r in 0..n {
                    let mut row = zero_vector(n * n);
                    let mut relevant = false;
                    for (c, wc) in w.iter().enumerate() {
                        if !wc.is_zero() {
                            row[r * n + c] = wc.clone();
                            relevant = true;
                        }
                    }
                    if relevant || !target[r].is_zero() {
                        rows.push(row);
                        rhs.push(target[r].clone());
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Some(Matrix::zero(n, n));
    }
    let m = Matrix::from_rows(n * n, rows);
    solve_exact(&m, &rhs).map(|flat| Matrix::from_flat(n, n, &flat))
}

/// A map with small random integer entries, for randomized cross-checks.
pub fn random_map(n: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3i64..=3)))
}

/// Joint report of the coboundary characterizations of quasiderivations.
#[derive(Clone, Debug)]
pub struct QderCoboundaryReport {
    /// Pair-basis elements examined.
    pub pairs_checked: usize,
    /// The derivation defect of f equals (f - f') composed with the
    /// bracket, for every pair-basis element.
    pub defect_matches_difference: bool,
    /// Solvability of the witness system agrees with quasiderivation
    /// membership over the probe maps.
    pub witness_equivalence: bool,
    /// Probe maps used for the solvability comparison.
    pub probes: usize,
    /// Exchange-identity scan aggregated over the pair-basis differences.
    pub exchange: ScanReport,
}

impl QderCoboundaryReport {
    pub fn all_ok(&self) -> bool {
        self.defect_matches_difference && self.witness_equivalence && self.exchange.ok()
    }
}

/// Runs the checks tying quasiderivations to the two coboundary operators;
/// see [`QderCoboundaryReport`] for what each field certifies.
pub fn qder_coboundary_checks(a: &Algebra, budget: TupleBudget) -> QderCoboundaryReport {
    let n = a.dim();
    let pairs = map_spaces::qder_pairs(a);
    let qder = map_spaces::qder(a);

    let mut defect_matches = true;
    let mut differences: Vec<Matrix> = Vec::new();
    for tuple in pairs.basis_tuples() {
        let f = &tuple[0];
        let fprime = &tuple[1];
        let diff = f.sub(fprime);
        if delta0_adjoint(a, f) != delta0_trivial(a, &diff) {
            defect_matches = false;
        }
        differences.push(diff);
    }
    let mut exchange = ScanReport::empty();
    for diff in &differences {
        exchange = exchange.merge(&bracket_exchange_identity(a, diff, budget));
    }

    // Probe maps: the quasiderivation basis, every matrix unit, and a few
    // random maps. Solvability of the witness system must match membership.
    let mut probes: Vec<Matrix> = qder.basis_matrices();
    for r in 0..n {
        for c in 0..n {
            let mut m = Matrix::zero(n, n);
            m.set(r, c, int(1));
            probes.push(m);
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(budget.seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..8 {
        probes.push(random_map(n, &mut rng));
    }
    let mut witness_equivalence = true;
    for f in &probes {
        let solvable = trivial_coboundary_witness(a, f).is_some();
        if solvable != qder.contains(f) {
            witness_equivalence = false;
        }
    }

    QderCoboundaryReport {
        pairs_checked: differences.len(),
        defect_matches_difference: defect_matches,
        witness_equivalence,
        probes: probes.len(),
        exchange,
    }
}

/// Outcome of cross-checking the kernel membership test against solved
/// subspace membership.
#[derive(Clone, Copy, Debug)]
pub struct KernelAuditReport {
    /// Maps tested.
    pub total: usize,
    /// Maps that were quasiderivations.
    pub members: usize,
    /// Maps where the two tests disagreed.
    pub mismatches: usize,
}

impl KernelAuditReport {
    pub fn all_agree(&self) -> bool {
        self.mismatches == 0
    }
}

/// Cross-checks the kernel membership test against membership in the solved
/// quasiderivation space, over the space's own basis, every matrix unit,
/// and `samples` seeded random maps. Half the random maps are drawn from
/// the span of the basis so both outcomes occur.
pub fn kernel_equivalence_audit(a: &Algebra, samples: usize, seed: u64) -> KernelAuditReport {
    let n = a.dim();
    let qder = map_spaces::qder(a);
    let basis = qder.basis_matrices();
    let table = BracketTable::new(a);
    let kernel = mu_kernel(a);

    let mut maps: Vec<Matrix> = basis.clone();
    for r in 0..n {
        for c in 0..n {
            let mut m = Matrix::zero(n, n);
            m.set(r, c, int(1));
            maps.push(m);
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for s in 0..samples {
        if s % 2 == 0 || basis.is_empty() {
            maps.push(random_map(n, &mut rng));
        } else {
            let mut m = Matrix::zero(n, n);
            for b in &basis {
                let c = int(rng.gen_range(-3i64..=3));
                m = m.add(&b.scale(&c));
            }
            maps.push(m);
        }
    }

    let mut members = 0usize;
    let mut mismatches = 0usize;
    let total = maps.len();
    for f in &maps {
        let via_kernel = kernel_preserved(a, &table, &kernel, f);
        let via_space = qder.contains(f);
        if via_space {
            members += 1;
        }
        if via_kernel != via_space {
            mismatches += 1;
        }
    }
    KernelAuditReport { total, members, mismatches }
}
