//! Free class-2 nilpotent invariants for Cayley-ball deduplication.
//!
//! Ball enumeration must decide, for many candidate words at once, which of
//! them represent the same group element. Pairwise oracle calls inside a
//! bucket scale quadratically, so buckets need to be small — and the classic
//! bucket key, the abelianization modulo the relator lattice, is blind to
//! order of letters. This module refines it one nilpotency class deeper.
//!
//! Map each word `w` to `φ(w) = (p | r)` where `p ∈ Z^g` is the exponent
//! vector and `r` has one coordinate per generator pair `s < t` counting
//! signed "s before t" inversions (the discrete signed area; for two
//! generators this is the Heisenberg group). `φ` is a homomorphism onto the
//! free class-2 nilpotent group, with product
//! `(p, r)·(p', r') = (p + p', r + r' + C(p, p'))`, `C(x, y)_{st} = x_s·y_t`.
//!
//! If `u = v` in the presented group, then `φ(v) − φ(u)` lies in the lattice
//! `Λ` generated by the rows `(P_i | R_i)` (images of the relators) together
//! with the central rows `(0 | C(e_s, P_i))` and `(0 | C(P_i, e_s))` for
//! every generator `s` and relator `i`: images of conjugated relators differ
//! from `(P_i | R_i)` by `D(x, P_i) = C(x, P_i) − C(P_i, x)`, products of
//! normal-closure elements add `C(P, P')` cross terms, and the correction
//! `C(p_u, P_k)` from left context is linear in its first slot — all of
//! which the central rows span. Reducing `φ(w)` to the canonical residue
//! modulo `Λ` (via a Hermite-form basis) therefore yields a *sound* bucket
//! key: distinct keys certify distinct group elements.

use crate::presentation::Presentation;
use crate::words::{Lit, Word};

/// Precomputed class-2 key machine for one presentation.
#[derive(Debug, Clone)]
pub struct NilpotentKeyer {
    generators: usize,
    /// Pair coordinate layout: `pairs[k] = (s, t)` with `s < t`.
    pairs: Vec<(usize, usize)>,
    /// Echelon basis of the invariance lattice Λ: rows sorted by pivot
    /// column, positive pivots, entries above each pivot reduced.
    basis: Vec<Vec<i64>>,
    /// Pivot column of each basis row.
    pivot_cols: Vec<usize>,
}

impl NilpotentKeyer {
    pub fn new(p: &Presentation) -> NilpotentKeyer {
        let g = p.alphabet().generator_count();
        let mut pairs = Vec::with_capacity(g * (g - 1) / 2);
        for s in 0..g {
            for t in (s + 1)..g {
                pairs.push((s, t));
            }
        }
        let d = g + pairs.len();
        let mut keyer = NilpotentKeyer {
            generators: g,
            pairs,
            basis: Vec::new(),
            pivot_cols: Vec::new(),
        };
        // Lattice rows: relator images plus central cross rows.
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for r in p.relators() {
            let mut img = vec![0i64; d];
            for &l in r.letters() {
                keyer.apply(&mut img, l);
            }
            let exps: Vec<i64> = img[..g].to_vec();
            rows.push(img);
            for s in 0..g {
                let mut left = vec![0i64; d];
                let mut right = vec![0i64; d];
                for (k, &(ps, pt)) in keyer.pairs.iter().enumerate() {
                    // C(e_s, P)_{(ps,pt)} = [ps == s] * P_pt
                    if ps == s {
                        left[g + k] = exps[pt];
                    }
                    // C(P, e_s)_{(ps,pt)} = P_ps * [pt == s]
                    if pt == s {
                        right[g + k] = exps[ps];
                    }
                }
                rows.push(left);
                rows.push(right);
            }
        }
        let (basis, pivot_cols) = hermite_rows(rows, d);
        keyer.basis = basis;
        keyer.pivot_cols = pivot_cols;
        keyer
    }

    /// Length of the invariant vectors: generators + pairs.
    pub fn dimension(&self) -> usize {
        self.generators + self.pairs.len()
    }

    pub fn identity_vector(&self) -> Vec<i64> {
        vec![0; self.dimension()]
    }

    /// Update `vec = φ(w)` to `φ(w·l)` in place. Appending `x_t^ε` adds
    /// `ε·p_s` to every pair coordinate `(s, t)` (the new letter closes an
    /// inversion with every earlier `x_s`) and then `ε` to `p_t`.
    pub fn apply(&self, vec: &mut [i64], l: Lit) {
        let t = l.generator() as usize;
        let eps: i64 = if l.is_inverse() { -1 } else { 1 };
        for (k, &(s, pt)) in self.pairs.iter().enumerate() {
            if pt == t {
                vec[self.generators + k] += eps * vec[s];
            }
        }
        vec[t] += eps;
    }

    /// Canonical residue of `vec` modulo Λ: for each pivot, Euclid-reduce
    /// the pivot coordinate into `[0, pivot)`. Words equal in the group
    /// always share a residue; distinct residues certify distinct elements.
    pub fn canonical(&self, vec: &[i64]) -> Vec<i64> {
        let mut v = vec.to_vec();
        for (row, &col) in self.basis.iter().zip(&self.pivot_cols) {
            let m = row[col];
            let q = v[col].div_euclid(m);
            if q != 0 {
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= q * ri;
                }
            }
        }
        v
    }

    /// `φ(w)` reduced to its canonical residue — the bucket key.
    pub fn key_of_word(&self, w: &Word) -> Vec<i64> {
        let mut v = self.identity_vector();
        for &l in w.letters() {
            self.apply(&mut v, l);
        }
        self.canonical(&v)
    }

    /// Raw (unreduced) invariant of a word; exposed for incremental use.
    pub fn raw_of_word(&self, w: &Word) -> Vec<i64> {
        let mut v = self.identity_vector();
        for &l in w.letters() {
            self.apply(&mut v, l);
        }
        v
    }
}

/// Integer row echelon (Hermite) form: rows sorted by pivot column with
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
/// Returns the basis rows and their pivot columns.
fn hermite_rows(mut rows: Vec<Vec<i64>>, d: usize) -> (Vec<Vec<i64>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for col in 0..d {
        // Gather remaining rows with support starting at `col`.
        let mut work: Vec<Vec<i64>> = Vec::new();
        let mut rest: Vec<Vec<i64>> = Vec::new();
        for r in rows {
            if r[col] != 0 {
                work.push(r);
            } else {
                rest.push(r);
            }
        }
        rows = rest;
        if work.is_empty() {
            continue;
        }
        // Euclid-combine all rows supported at this column into one.
        let mut lead = work.pop().unwrap();
        for mut other in work {
            // gcd loop on the `col` entries.
            loop {
                if other[col] == 0 {
                    break;
                }
                let q = lead[col].div_euclid(other[col]);
                if q != 0 {
                    for (a, b) in lead.iter_mut().zip(&other) {
                        *a -= q * b;
                    }
                }
                std::mem::swap(&mut lead, &mut other);
                if other[col] == 0 {
                    break;
                }
            }
            if other.iter().any(|&x| x != 0) {
                rows.push(other);
            }
        }
        if lead[col] < 0 {
            for x in lead.iter_mut() {
                *x = -*x;
            }
        }
        debug_assert!(lead[col] > 0);
        basis.push(lead);
        pivot_cols.push(col);
    }
    // Reduce entries above each pivot for a unique normal form.
    for i in (0..basis.len()).rev() {
        let col = pivot_cols[i];
        let m = basis[i][col];
        for j in 0..i {
            let q = basis[j][col].div_euclid(m);
            if q != 0 {
                let (upper, lower) = basis.split_at_mut(i);
                for (a, b) in upper[j].iter_mut().zip(&lower[0]) {
                    *a -= q * b;
                }
            }
        }
    }
    (basis, pivot_cols)
}
