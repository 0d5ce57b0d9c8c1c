#pragma once

// Additive conjugacy for rotations of the plane: exact decision via
// minimal polynomials and construction of the intertwining field
// isomorphism on the rotation number's number field.

#include <complex>
#include <optional>
#include <string>

#include "bohrgap/exactalg.hpp"

namespace bohrgap {

/// Axis-aligned rectangle with rational corners, used to select one
/// root of a minimal polynomial.
struct Rect {
    Rational x0, x1, y0, y1;

    bool contains(std::complex<double> z, double slack = 1e-9) const;
    std::string to_string() const;
};

/// A unit-modulus complex number, either algebraic (normalized
/// irreducible minimal polynomial plus an isolating rectangle holding
/// exactly one of its roots) or a tagged transcendental. Construction
/// verifies irreducibility, uniqueness of the selected root, and that
/// the refined root lies on the unit circle to within 1e-12.
class UnitAlgebraic {
public:
    static UnitAlgebraic algebraic(IntPoly minpoly, Rect rect);
    static UnitAlgebraic transcendental(std::string label);
    /// zeta_n^a with the minimal polynomial and rectangle derived.
    static UnitAlgebraic root_of_unity(int n, int a);

    bool is_algebraic() const { return algebraic_; }
    const IntPoly& minpoly() const;
    const Rect& rect() const;
    std::complex<double> root() const;  // refined numeric root
    const std::string& label() const;

    std::string to_string() const;  // "alg:<coeffs>:<rect>" | "trans:<label>"

private:
    UnitAlgebraic() = default;
    bool algebraic_ = false;
    IntPoly minpoly_;
    Rect rect_;
    std::complex<double> root_;
    std::string label_;
};

struct EvalResult {
    std::optional<NumberFieldElem> residue;  // p mod minpoly; absent for transcendental
    bool zero = false;
};

/// Reduces p modulo minpoly(z); zero flag iff minpoly(z) | p. For a
/// transcendental z only p = 0 evaluates to zero and no residue exists.
EvalResult eval_at(const UnitAlgebraic& z, const IntPoly& p);

struct ConjugacyVerdict {
    bool conjugate = false;
    /// Shared minimal polynomial (Conjugate, both algebraic), or a
    /// separating polynomial vanishing at exactly one of the two
    /// (NotConjugate); zero when both are transcendental.
    IntPoly certificate;
};

/// Conjugate iff both transcendental, or both algebraic with the same
/// normalized minimal polynomial.
ConjugacyVerdict decide_conjugacy(const UnitAlgebraic& z, const UnitAlgebraic& w);

/// The field isomorphism Q(z) -> Q(w) for Galois-conjugate z, w: the
/// shared modulus m is kept and residues transfer by coefficient
/// identity, so Xi(z) = w and Xi fixes the rationals.
class XiMap {
public:
    XiMap(IntPoly modulus, Rect domain_root, Rect codomain_root);

    const IntPoly& modulus() const { return mod_; }
    const Rect& domain_root() const { return dom_; }
    const Rect& codomain_root() const { return cod_; }

    NumberFieldElem apply(const NumberFieldElem& x) const;

private:
    IntPoly mod_;
    Rect dom_, cod_;
};

/// Requires decide_conjugacy(z, w) Conjugate with both algebraic;
/// TranscendentalInput when either is transcendental, NotConjugate
/// otherwise.
XiMap build_xi(const UnitAlgebraic& z, const UnitAlgebraic& w);

/// "alg:<coeffs>:<x0,x1,y0,y1>" (coeffs space separated, constant term
/// first, rect corners rational) or "trans:<label>".
UnitAlgebraic parse_unit_algebraic(const std::string& text);

}  // namespace bohrgap
