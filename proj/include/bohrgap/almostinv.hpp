#pragma once

// The three explicit sequence constructions: orthogonalization of
// almost-invariant vectors, the epsilon-scaling witness construction,
// and the weak-null sparsification selection.

#include <optional>
#include <vector>

#include "bohrgap/groups.hpp"
#include "bohrgap/reps.hpp"

namespace bohrgap {

struct OrthoStep {
    int k;  // number of vectors already chosen
    int m;  // input index selected for step k+1 (0-based)
};

struct OrthoResult {
    std::vector<VecF> vectors;    // pairwise orthogonal unit vectors
    std::vector<OrthoStep> steps; // selection record, first vector excluded
    bool exhausted = false;       // scan ran out of input before `want`
};

/// Orthogonalizes a sequence of unit vectors: w1 = v1; at step k the scan
/// moves forward to the first index m > k (and past all previous
/// selections) with |<v_m, w_i>| < 1/k for i <= k, projects out
/// span(w_1..w_k) and normalizes. Ties resolve to the smallest
/// admissible index. With want < 0 the scan runs until the finite input
/// is exhausted; otherwise NoAdmissibleIndex is raised when fewer than
/// `want` vectors can be produced.
OrthoResult orthogonalize(const std::vector<VecF>& seq, int want = -1);

/// Verbatim right-hand side of the step inequality
/// ||g w_{k+1} - w_{k+1}|| <= (1 - 1/sqrt(k))^-1 (||g v_m - v_m|| + 2/sqrt(k));
/// infinite at k = 1.
double ortho_defect_bound(int k, double input_defect);

struct WitnessBundleQ {
    std::vector<Rational> epsilons;  // selected eps_n, eps_n < 2^-n
    std::vector<int> picked;         // selected input indices
    std::vector<VecQ> scaled;        // w_n = v_n / sqrt(eps_n)
    VecQ combined;                   // w = 1/2 sum eps_n w_n
    std::optional<VecQ> invariant_witness;  // short-circuit when some eps = 0
};

struct WitnessBundleF {
    std::vector<double> epsilons;
    std::vector<int> picked;
    std::vector<VecF> scaled;
    VecF combined;
    std::optional<VecF> invariant_witness;
};

/// Exact witness construction on pairwise orthogonal unit vectors with
/// per-vector defect constants eps. Greedily selects the subsequence
/// with eps_n < 2^-n (n = 1..N); if some eps is zero the vector is
/// invariant and short-circuits as the witness itself. Each selected eps
/// must have a rational square root so that w_n = v_n / sqrt(eps_n)
/// stays exact; otherwise ExactSqrtUnavailable.
WitnessBundleQ scale_and_witness(const std::vector<VecQ>& ortho,
                                 const std::vector<Rational>& eps, int n_terms);

/// Float-mode twin; the exact <w, w_n> = 1/2 identity degrades to a
/// 1e-9 tolerance.
WitnessBundleF scale_and_witness(const std::vector<VecF>& ortho, const std::vector<double>& eps,
                                 int n_terms);

struct SparsifyResult {
    std::vector<int> indices;    // selected k_1 < k_2 < ... (0-based)
    std::vector<VecF> selected;  // w_n = v_{k_n}
    VecF combined;               // v = sum_n 2^-n w_n
};

/// Weak-null sparsification: w_1 is the first vector; step n picks the
/// smallest index k_n > k_{n-1} with |<v_{k_n}, g w_j>| < 2^{-n^2} for
/// all j < n and g among elems, elems^-1 applied through the rep.
/// SelectionFailed(n) when the finite input has no admissible index.
SparsifyResult sparsify_weak_null(const std::vector<VecF>& seq,
                                  const std::vector<GroupElem>& elems, const RegularRep& rep,
                                  int n_terms);

/// The 1_{[0,n)}/sqrt(n) window family in l^2(Z), n = 1..count.
std::vector<VecF> window_family(int count);
/// The standard basis family e_0, e_1, ... in l^2(Z).
std::vector<VecF> basis_family(int count);

}  // namespace bohrgap
