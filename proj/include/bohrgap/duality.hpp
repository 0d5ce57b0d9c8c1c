#pragma once

// Finite abelian groups, their character duals, automorphism actions and
// the dual action, fixed-point counting, conjugacy transport of dual
// maps, and ergodicity of toral automorphisms.

#include <optional>
#include <string>
#include <vector>

#include "bohrgap/exactalg.hpp"
#include "bohrgap/groups.hpp"

namespace bohrgap {

inline constexpr std::size_t kOrderCap = std::size_t{1} << 20;

using Tuple = std::vector<long>;  // element of a finite abelian group
using IntMat = std::vector<std::vector<long long>>;

/// Finite abelian group in invariant-factor form n_1 | n_2 | ... | n_r,
/// each factor >= 2. Elements are r-tuples, coordinate i taken mod n_i.
class FiniteAbelian {
public:
    explicit FiniteAbelian(std::vector<long> factors, std::size_t cap = kOrderCap);

    const std::vector<long>& factors() const { return n_; }
    int rank() const { return static_cast<int>(n_.size()); }
    std::size_t order() const { return order_; }

    Tuple reduce(Tuple x) const;  // coordinate-wise mod n_i
    Tuple add(const Tuple& a, const Tuple& b) const;
    Tuple neg(const Tuple& a) const;
    Tuple zero() const { return Tuple(n_.size(), 0); }

    /// All elements in lexicographic order; zero() first.
    std::vector<Tuple> elements() const;

private:
    std::vector<long> n_;
    std::size_t order_;
};

/// Character of a FiniteAbelian group, stored as its coefficient tuple:
/// chi(x) = sum_i a_i x_i / n_i mod 1.
struct Character {
    Tuple coeffs;

    TorusValue eval(const FiniteAbelian& a, const Tuple& x) const;
    bool operator==(const Character& o) const { return coeffs == o.coeffs; }
    bool operator<(const Character& o) const { return coeffs < o.coeffs; }
};

/// All |A| characters, lexicographic by coefficients.
std::vector<Character> enumerate_dual(const FiniteAbelian& a);

/// Action on a FiniteAbelian group by automorphisms: one r x r integer
/// matrix per generator of the acting group, applied to tuples mod n_i.
/// Construction verifies each matrix respects the invariant-factor
/// structure (n_i | M_ij n_j) and permutes the group (brute force).
class AutoAction {
public:
    AutoAction(FiniteAbelian base, GroupSpec acting, std::vector<IntMat> gens);

    const FiniteAbelian& base() const { return base_; }
    const std::vector<IntMat>& generator_mats() const { return mats_; }
    const GroupSpec& acting_group() const { return acting_; }

    Tuple apply(std::size_t gen, const Tuple& x) const;
    Tuple apply_inverse(std::size_t gen, const Tuple& x) const;
    /// Dual action of generator `gen`: chi |-> chi o (gen^-1 .).
    Character dual_apply(std::size_t gen, const Character& chi) const;

private:
    FiniteAbelian base_;
    GroupSpec acting_;
    std::vector<IntMat> mats_;
    // permutation tables over the element enumeration, one per generator
    std::vector<std::vector<std::size_t>> perm_, inv_perm_;
};

/// Matrix application x |-> Mx reduced into A; no bijectivity check.
Tuple mat_apply(const FiniteAbelian& a, const IntMat& m, const Tuple& x);

/// (# fixed elements of A, # fixed characters under the dual action),
/// both by brute force over all generators of the action.
std::pair<std::size_t, std::size_t> fixed_counts(const AutoAction& act);

/// The transported dual map xi*: Characters(A) -> Characters(A'),
/// [xi* chi](v') = chi(xi^-1 v').
class DualTransport {
public:
    DualTransport(const FiniteAbelian& a, const FiniteAbelian& b,
                  std::vector<std::size_t> inverse_table);

    Character apply(const Character& chi) const;

private:
    FiniteAbelian a_, b_;
    std::vector<std::size_t> inv_;  // index of xi^-1(b.elements()[j]) in a.elements()
};

/// Verifies xi (an integer matrix inducing a map A -> A') is a bijective
/// homomorphism intertwining act and act', then returns the dual map.
/// NotIsomorphism / NotIntertwining carry a witness element in their
/// message.
DualTransport dual_conjugacy_transport(const IntMat& xi, const AutoAction& act,
                                       const AutoAction& act_prime);

struct ErgodicityVerdict {
    bool ergodic = false;
    int cyclotomic_index = 0;          // k with Phi_k | charpoly, when not ergodic
    std::optional<Tuple> witness;      // nonzero lattice vector with finite orbit
    std::size_t orbit_size = 0;        // orbit length of the witness, when present
    IntPoly charpoly;                  // det(xI - M)
};

/// Characteristic polynomial det(xI - M) by exact interpolation.
IntPoly charpoly_exact(const IntMat& m);

/// Determinant by fraction-free elimination.
Int det_exact(const IntMat& m);

/// Ergodicity of the toral automorphism induced by a unimodular integer
/// matrix: ergodic iff the characteristic polynomial has no cyclotomic
/// factor. NotErgodic reports the least cyclotomic index k and, when one
/// exists with sup-norm <= 1000, an integer vector in ker Phi_k(M).
ErgodicityVerdict toral_ergodicity(const IntMat& m);

/// Parses invariant factors: "2,4,8" (an optional "abelian =" prefix is
/// accepted).
FiniteAbelian parse_abelian(const std::string& text, std::size_t cap = kOrderCap);
/// Parses a square integer matrix: rows separated by '/' or newlines,
/// entries by spaces or commas ("2 1 / 1 1").
IntMat parse_int_matrix(const std::string& text);
/// Parses a generator list of matrices separated by lines containing "--".
std::vector<IntMat> parse_action_mats(const std::string& text);

}  // namespace bohrgap
