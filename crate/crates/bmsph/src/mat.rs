//! Exact sign-matrix kernel: storage, integer Gram products, signed
//! permutations, and block slicing.
//!
//! Entries are conceptually ±1 and stored as `i8`; inner products are
//! computed over bit-packed rows (inner product = cols − 2·mismatches via
//! XOR + popcount), so every Gram value is an exact integer.

use crate::error::{Error, Result};

/// Rectangular matrix with entries in {+1, −1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl SignMatrix {
    /// Builds from row-major ±1 entries.
    pub fn new(rows: usize, cols: usize, data: Vec<i8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|&v| v != 1 && v != -1) {
            return Err(Error::DimensionMismatch(format!(
                "entry at flat index {pos} is {} (must be +1 or -1)",
                data[pos]
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert!(v == 1 || v == -1, "sign entries must be +1 or -1");
                data.push(v);
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[i8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Copy with the entry at (r, c) negated. Used by mutation tests.
    pub fn flipped(&self, r: usize, c: usize) -> Self {
        let mut out = self.clone();
        out.data[r * self.cols + c] = -out.data[r * self.cols + c];
        out
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hconcat(parts: &[&SignMatrix]) -> Result<Self> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::DimensionMismatch(
                "hconcat parts differ in row count".into(),
            ));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for m in parts {
                data.extend_from_slice(m.row(r));
            }
        }
        Ok(Self { rows, cols, data })
    }

    /// Keeps rows `lo..hi`.
    pub fn row_slice(&self, lo: usize, hi: usize) -> Self {
        Self {
            rows: hi - lo,
            cols: self.cols,
            data: self.data[lo * self.cols..hi * self.cols].to_vec(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vconcat(&self, other: &SignMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vconcat parts differ in column count".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Exact integer matrix, the result type of [`gram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    /// First (row-major) entry violating "diagonal = `diag`, off-diagonal =
    /// `off`", if any. Only meaningful for square matrices.
    pub fn first_non_diag_const(&self, diag: i64, off: i64) -> Option<(usize, usize, i64)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                let want = if r == c { diag } else { off };
                if v != want {
                    return Some((r, c, v));
                }
            }
        }
        None
    }

    /// True iff the matrix equals `diag`·I + `off`·(J − I).
    pub fn is_diag_const(&self, diag: i64, off: i64) -> bool {
        self.first_non_diag_const(diag, off).is_none()
    }
}

/// All pairwise row inner products between `a` and `b` as an exact integer
/// matrix: entry (i, j) = ⟨a_i, b_j⟩.
pub fn gram(a: &SignMatrix, b: &SignMatrix) -> Result<IntMatrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "gram needs equal column counts, got {} and {}",
            a.cols, b.cols
        )));
    }
    let pa = PackedRows::from_matrix(a);
    let pb = PackedRows::from_matrix(b);
    let mut data = Vec::with_capacity(a.rows * b.rows);
    for i in 0..a.rows {
        for j in 0..b.rows {
            data.push(pa.dot(i, &pb, j));
        }
    }
    Ok(IntMatrix {
        rows: a.rows,
        cols: b.rows,
        data,
    })
}

/// Sign-matrix rows packed one bit per entry (set bit = −1). Padding bits
/// stay zero, so XOR across full words never touches them.
#[derive(Debug, Clone)]
pub(crate) struct PackedRows {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) words_per_row: usize,
    pub(crate) bits: Vec<u64>,
}

impl PackedRows {
    pub(crate) fn from_matrix(m: &SignMatrix) -> Self {
        let words_per_row = m.cols.div_ceil(64).max(1);
        let mut bits = vec![0u64; m.rows * words_per_row];
        for r in 0..m.rows {
            for c in 0..m.cols {
                if m.get(r, c) < 0 {
                    bits[r * words_per_row + c / 64] |= 1u64 << (c % 64);
                }
            }
        }
        Self {
            rows: m.rows,
            cols: m.cols,
            words_per_row,
            bits,
        }
    }

    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// ⟨row i of self, row j of other⟩; both sides must share `cols`.
    pub(crate) fn dot(&self, i: usize, other: &PackedRows, j: usize) -> i64 {
        debug_assert_eq!(self.cols, other.cols);
        let a = self.row_words(i);
        let b = other.row_words(j);
        let mut mismatches = 0u32;
        for (x, y) in a.iter().zip(b) {
            mismatches += (x ^ y).count_ones();
        }
        self.cols as i64 - 2 * i64::from(mismatches)
    }
}

/// A [`SignMatrix`] with a declared partition into `block_count` column
/// blocks of width `block_width`; the shape constraint rows = width² and
/// count = width + 1 is the multi-splittable candidate form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedMatrix {
    matrix: SignMatrix,
    block_width: usize,
    block_count: usize,
}

impl BlockedMatrix {
    pub fn new(matrix: SignMatrix, block_width: usize) -> Result<Self> {
        if block_width == 0 || matrix.cols() % block_width != 0 {
            return Err(Error::ShapeMismatch(format!(
                "{} columns do not split into width-{block_width} blocks",
                matrix.cols()
            )));
        }
        let block_count = matrix.cols() / block_width;
        if matrix.rows() != block_width * block_width {
            return Err(Error::ShapeMismatch(format!(
                "{} rows, expected block_width^2 = {}",
                matrix.rows(),
                block_width * block_width
            )));
        }
        if block_count != block_width + 1 {
            return Err(Error::ShapeMismatch(format!(
                "{block_count} blocks, expected block_width + 1 = {}",
                block_width + 1
            )));
        }
        Ok(Self {
            matrix,
            block_width,
            block_count,
        })
    }

    pub fn matrix(&self) -> &SignMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SignMatrix {
        self.matrix
    }

    /// Block width p.
    pub fn p(&self) -> usize {
        self.block_width
    }

    pub fn block_width(&self) -> usize {
        self.block_width
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    /// Number of blocks in a half-selection, (p+1)/2.
    pub fn half(&self) -> usize {
        (self.block_count).div_ceil(2)
    }

    /// The `i`-th width-p block as its own matrix.
    pub fn block(&self, i: usize) -> SignMatrix {
        let w = self.block_width;
        SignMatrix::from_fn(self.matrix.rows(), w, |r, c| self.matrix.get(r, i * w + c))
    }

    /// Horizontal concatenation of the selected blocks in ascending index
    /// order; `selection` is treated as a set.
    pub fn select_blocks(&self, selection: &[usize]) -> Result<SignMatrix> {
        let mut sel: Vec<usize> = selection.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if let Some(&bad) = sel.iter().find(|&&i| i >= self.block_count) {
            return Err(Error::IndexOutOfRange(format!(
                "block index {bad} with {} blocks",
                self.block_count
            )));
        }
        let w = self.block_width;
        let rows = self.matrix.rows();
        let cols = sel.len() * w;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let full = self.matrix.row(r);
            for &i in &sel {
                data.extend_from_slice(&full[i * w..(i + 1) * w]);
            }
        }
        Ok(SignMatrix {
            rows,
            cols,
            data,
        })
    }

    /// Per-block packed rows; block width ≤ 64 always holds here, so each
    /// block row is a single word.
    pub(crate) fn packed_blocks(&self) -> Vec<PackedRows> {
        (0..self.block_count)
            .map(|i| PackedRows::from_matrix(&self.block(i)))
            .collect()
    }
}

/// A permutation of indices together with a ±1 sign per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutation length {} vs sign length {}",
                perm.len(),
                signs.len()
            )));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(Error::DimensionMismatch(
                    "permutation is not a bijection".into(),
                ));
            }
            seen[i] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::DimensionMismatch("signs must be +1 or -1".into()));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Identity ordering with the given signs.
    pub fn signs_only(signs: Vec<i8>) -> Result<Self> {
        let n = signs.len();
        Self::new((0..n).collect(), signs)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1) && self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Applies signed row and column permutations: entry (i, j) of the result is
/// `rowp.signs[i] · colp.signs[j] · h[rowp.perm[i], colp.perm[j]]`.
pub fn apply_signed_perms(
    h: &SignMatrix,
    rowp: &SignedPermutation,
    colp: &SignedPermutation,
) -> Result<SignMatrix> {
    if rowp.len() != h.rows() || colp.len() != h.cols() {
        return Err(Error::DimensionMismatch(format!(
            "permutation sizes {}x{} vs matrix {}x{}",
            rowp.len(),
            colp.len(),
            h.rows(),
            h.cols()
        )));
    }
    Ok(SignMatrix::from_fn(h.rows(), h.cols(), |i, j| {
        rowp.signs[i] * colp.signs[j] * h.get(rowp.perm[i], colp.perm[j])
    }))
}

/// Outcome of a verification pass. `witness` describes the first failing
/// pair/selection (lexicographically, independent of execution order) and is
/// absent exactly when `passed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks_run: u64,
    pub witness: Option<String>,
}

impl VerifyReport {
    pub fn pass(checks_run: u64) -> Self {
        Self {
            passed: true,
            checks_run,
            witness: None,
        }
    }

    pub fn fail(checks_run: u64, witness: String) -> Self {
        Self {
            passed: false,
            checks_run,
            witness: Some(witness),
        }
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed {
            write!(f, "passed ({} checks)", self.checks_run)
        } else {
            write!(
                f,
                "FAILED after {} checks: {}",
                self.checks_run,
                self.witness.as_deref().unwrap_or("(no witness)")
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn paper_9x12() -> BlockedMatrix {
        let rows = [
            "++-++-++-++-",
            "++-+-++-++-+",
            "++--++-++-++",
            "+-+++-+-+-++",
            "+-+-++++-+-+",
            "+-++-+-++++-",
            "-++++--+++-+",
            "-+++-+++--++",
            "-++-+++-+++-",
        ];
        let data: Vec<i8> = rows
            .iter()
            .flat_map(|r| r.chars().map(|ch| if ch == '+' { 1 } else { -1 }))
            .collect();
        BlockedMatrix::new(SignMatrix::new(9, 12, data).unwrap(), 3).unwrap()
    }

    #[test]
    fn gram_of_orthogonal_rows() {
        let h = paper_9x12();
        let g = gram(h.matrix(), h.matrix()).unwrap();
        assert!(g.is_diag_const(12, 0));
    }

    #[test]
    fn gram_trivia() {
        let plus = SignMatrix::new(1, 5, vec![1; 5]).unwrap();
        let minus = SignMatrix::new(1, 5, vec![-1; 5]).unwrap();
        assert_eq!(gram(&plus, &minus).unwrap().get(0, 0), -5);
        assert_eq!(gram(&plus, &plus).unwrap().get(0, 0), 5);
    }

    #[test]
    fn gram_dimension_mismatch() {
        let a = SignMatrix::new(1, 3, vec![1; 3]).unwrap();
        let b = SignMatrix::new(1, 4, vec![1; 4]).unwrap();
        assert!(matches!(gram(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn select_blocks_shapes() {
        let h = paper_9x12();
        let s = h.select_blocks(&[0, 1]).unwrap();
        assert_eq!((s.rows(), s.cols()), (9, 6));
        let all = h.select_blocks(&[0, 1, 2, 3]).unwrap();
        assert_eq!(&all, h.matrix());
        let empty = h.select_blocks(&[]).unwrap();
        assert_eq!((empty.rows(), empty.cols()), (9, 0));
        assert!(matches!(
            h.select_blocks(&[4]),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn signed_perm_identity_and_involution() {
        let h = paper_9x12().into_matrix();
        let id_r = SignedPermutation::identity(9);
        let id_c = SignedPermutation::identity(12);
        assert_eq!(apply_signed_perms(&h, &id_r, &id_c).unwrap(), h);

        let neg_r = SignedPermutation::signs_only(vec![-1; 9]).unwrap();
        let once = apply_signed_perms(&h, &neg_r, &id_c).unwrap();
        assert_ne!(once, h);
        let twice = apply_signed_perms(&once, &neg_r, &id_c).unwrap();
        assert_eq!(twice, h);
    }

    #[test]
    fn bad_permutation_rejected() {
        assert!(SignedPermutation::new(vec![0, 0, 1], vec![1, 1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 3, 1], vec![1, 1, 1]).is_err());
        assert!(SignedPermutation::new(vec![0, 1], vec![1, 2]).is_err());
    }

    #[test]
    fn blocked_shape_enforced() {
        let m = SignMatrix::new(9, 12, vec![1; 108]).unwrap();
        assert!(BlockedMatrix::new(m.clone(), 3).is_ok());
        assert!(BlockedMatrix::new(m.clone(), 4).is_err());
        let wrong_rows = SignMatrix::new(8, 12, vec![1; 96]).unwrap();
        assert!(BlockedMatrix::new(wrong_rows, 3).is_err());
    }

    prop_compose! {
        fn sign_matrix(max_rows: usize, max_cols: usize)
            (rows in 1..=max_rows, cols in 1..=max_cols)
            (entries in prop::collection::vec(prop::bool::ANY, rows * cols),
             rows in Just(rows), cols in Just(cols))
            -> SignMatrix
        {
            let data = entries.into_iter().map(|b| if b { 1 } else { -1 }).collect();
            SignMatrix::new(rows, cols, data).unwrap()
        }
    }

    fn permutation_of(n: usize) -> impl Strategy<Value = SignedPermutation> {
        (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(prop::bool::ANY, n),
        )
            .prop_map(|(perm, signs)| {
                let signs = signs.into_iter().map(|b| if b { 1 } else { -1 }).collect();
                SignedPermutation::new(perm, signs).unwrap()
            })
    }

    fn matrix_with_perms() -> impl Strategy<Value = (SignMatrix, SignedPermutation, SignedPermutation)>
    {
        sign_matrix(6, 8).prop_flat_map(|h| {
            let (rows, cols) = (h.rows(), h.cols());
            (Just(h), permutation_of(rows), permutation_of(cols))
        })
    }

    proptest! {
        // Gram of a signed-permuted matrix is the sign-conjugated,
        // row-permuted Gram of the original.
        #[test]
        fn gram_conjugation((h, rp, cp) in matrix_with_perms()) {
            let g = gram(&h, &h).unwrap();
            let hp = apply_signed_perms(&h, &rp, &cp).unwrap();
            let gp = gram(&hp, &hp).unwrap();
            for i in 0..h.rows() {
                for j in 0..h.rows() {
                    let expect = i64::from(rp.signs()[i]) * i64::from(rp.signs()[j])
                        * g.get(rp.perm()[i], rp.perm()[j]);
                    prop_assert_eq!(gp.get(i, j), expect);
                }
            }
        }
    }

    #[test]
    fn gram_is_bilinear_over_disjoint_selections() {
        let h = paper_9x12();
        let s1 = h.select_blocks(&[0, 2]).unwrap();
        let s2 = h.select_blocks(&[1, 3]).unwrap();
        let whole = h.select_blocks(&[0, 1, 2, 3]).unwrap();
        let g1 = gram(&s1, &s1).unwrap();
        let g2 = gram(&s2, &s2).unwrap();
        let g = gram(&whole, &whole).unwrap();
        for i in 0..9 {
            for j in 0..9 {
                assert_eq!(g.get(i, j), g1.get(i, j) + g2.get(i, j));
            }
        }
    }
}
