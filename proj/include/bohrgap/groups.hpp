#pragma once

// Finitely generated group models (free groups, Z^d, finite permutation
// groups), symmetric generating measures and Cayley-ball enumeration.

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "bohrgap/exactalg.hpp"

namespace bohrgap {

struct FreeGroup {
    int rank;  // >= 1
};
struct ZPow {
    int dim;  // >= 1
};
using Perm = std::vector<long>;  // images of 0..n-1
struct PermGroup {
    int degree;
    std::vector<Perm> gens;
};
using GroupSpec = std::variant<FreeGroup, ZPow, PermGroup>;

/// Group element in canonical form: a reduced word (letters +-1..+-k),
/// an integer vector, or a permutation.
class GroupElem {
public:
    using Word = std::vector<int>;
    using ZVec = std::vector<long long>;

    GroupElem() = default;

    static GroupElem word(Word letters);  // reduces adjacent x x^-1
    static GroupElem zvec(ZVec v);
    static GroupElem perm(Perm p);

    const std::variant<Word, ZVec, Perm>& value() const { return v_; }
    bool is_word() const { return std::holds_alternative<Word>(v_); }
    bool is_zvec() const { return std::holds_alternative<ZVec>(v_); }
    bool is_perm() const { return std::holds_alternative<Perm>(v_); }
    const Word& as_word() const { return std::get<Word>(v_); }
    const ZVec& as_zvec() const { return std::get<ZVec>(v_); }
    const Perm& as_perm() const { return std::get<Perm>(v_); }

    GroupElem operator*(const GroupElem& o) const;
    GroupElem inverse() const;
    bool is_identity() const;

    /// Word length: reduced length for free words, L1 norm for Z^d,
    /// 0 for permutations (their ball depth is tracked by BFS).
    long length() const;

    bool operator==(const GroupElem& o) const { return v_ == o.v_; }
    bool operator!=(const GroupElem& o) const { return v_ != o.v_; }
    /// Total order: (length, lexicographic), used for deterministic
    /// ball ordering and as map key.
    bool operator<(const GroupElem& o) const;

    /// Words as "a b' a" (prime = inverse), Z^d as "(1,-2)", perms as
    /// image lists "[1 0 2]".
    std::string to_string() const;

private:
    std::variant<Word, ZVec, Perm> v_;
};

GroupElem identity_of(const GroupSpec& spec);

/// The standard generators (free: letters; Z^d: unit vectors; perm: the
/// listed permutations), without inverses.
std::vector<GroupElem> standard_generators(const GroupSpec& spec);

/// gens together with their inverses, deduplicated, identity excluded.
std::vector<GroupElem> symmetric_closure(const std::vector<GroupElem>& gens);

/// Breadth-first ball of radius r: all products of at most r generators,
/// ordered by word length then lexicographically. Index 0 is the identity.
std::vector<GroupElem> cayley_ball(const GroupSpec& spec, const std::vector<GroupElem>& gens,
                                   int r, std::size_t cap = 2000000);

/// Symmetric finitely supported probability measure; support must contain
/// the identity and be closed under inverses with equal weights.
struct GenMeasure {
    std::vector<std::pair<GroupElem, Rational>> support;

    const Rational* weight_of(const GroupElem& g) const;
    Rational identity_weight() const;
    /// Smallest weight among non-identity support elements.
    Rational min_nonidentity_weight() const;
    std::vector<GroupElem> support_elems() const;
    /// Non-identity support elements.
    std::vector<GroupElem> generators() const;
};

/// Checks all GenMeasure invariants; for PermGroup also verifies that the
/// support generates the group by closure. Returns mu unchanged.
GenMeasure validate_measure(const GroupSpec& spec, const GenMeasure& mu);

/// Uniform measure on {e} u gens u gens^-1.
GenMeasure lazy_uniform(const GroupSpec& spec);

/// Full enumeration of a finite permutation group (closure of its
/// generators); throws BallTooLarge beyond cap.
std::vector<GroupElem> enumerate_perm_group(const PermGroup& spec, std::size_t cap = 2000000);

// Plain-text forms: "free:2" | "z:2" | "perm:4:(0 1 2 3),(0 1)".
GroupSpec parse_group_spec(const std::string& text);
/// Measure file: lines "elem weight", elements as words ("a b' a"),
/// "e" for identity.
GenMeasure parse_measure(const GroupSpec& spec, const std::string& text);
GroupElem parse_elem(const GroupSpec& spec, const std::string& word);

}  // namespace bohrgap
