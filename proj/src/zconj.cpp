#include "bohrgap/zconj.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace bohrgap {

// ------------------------------------------------------------------- Rect

bool Rect::contains(std::complex<double> z, double slack) const {
    return z.real() >= x0.get_d() - slack && z.real() <= x1.get_d() + slack &&
           z.imag() >= y0.get_d() - slack && z.imag() <= y1.get_d() + slack;
}

std::string Rect::to_string() const {
    return x0.get_str() + "," + x1.get_str() + "," + y0.get_str() + "," + y1.get_str();
}

// ----------------------------------------------------------- root isolation

namespace {

std::vector<std::complex<double>> all_roots(const IntPoly& p) {
    int d = p.degree();
    std::vector<double> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i)].get_d();
    if (d == 1) return {{-c[0] / c[1], 0.0}};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)];
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

std::complex<double> newton_refine(const IntPoly& p, std::complex<double> z) {
    int d = p.degree();
    for (int it = 0; it < 100; ++it) {
        std::complex<double> v = 0, dv = 0;
        for (int i = d; i >= 0; --i) {
            dv = dv * z + v;
            v = v * z + p[static_cast<std::size_t>(i)].get_d();
        }
        if (std::abs(dv) == 0) break;
        std::complex<double> step = v / dv;
        z -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

Rational rational_floor_1e6(double x) {
    return Rational(static_cast<long>(std::floor(x * 1e6)), 1000000);
}

}  // namespace

// ---------------------------------------------------------- UnitAlgebraic

UnitAlgebraic UnitAlgebraic::algebraic(IntPoly minpoly, Rect rect) {
    UnitAlgebraic u;
    u.algebraic_ = true;
    u.minpoly_ = poly_normalize(minpoly);
    if (u.minpoly_.degree() < 1) throw Error("UnitAlgebraic: minimal polynomial must be nonconstant");
    // cyclotomic polynomials are irreducible outright; this also keeps
    // high-order roots of unity clear of the generic degree cap
    auto cyc = cyclotomic_factor(u.minpoly_, u.minpoly_.degree());
    bool irreducible = cyc.has_value() && IntPoly::cyclotomic(*cyc) == u.minpoly_;
    if (!irreducible && !poly_is_irreducible(u.minpoly_))
        throw Error("UnitAlgebraic: minimal polynomial is reducible: " + u.minpoly_.to_string());
    u.rect_ = rect;
    int inside = 0;
    std::complex<double> pick;
    for (std::complex<double> r : all_roots(u.minpoly_)) {
        r = newton_refine(u.minpoly_, r);
        if (rect.contains(r)) {
            // eigenvalue doubles may refine to the same root; dedupe
            if (inside > 0 && std::abs(r - pick) < 1e-7) continue;
            ++inside;
            pick = r;
        }
    }
    if (inside != 1)
        throw RootSelectorAmbiguous("UnitAlgebraic: rectangle " + rect.to_string() + " holds " +
                                    std::to_string(inside) + " roots of " + u.minpoly_.to_string());
    u.root_ = pick;
    if (std::abs(std::abs(pick) - 1.0) > 1e-12)
        throw NotOnUnitCircle("UnitAlgebraic: selected root has |z| = " +
                              std::to_string(std::abs(pick)));
    return u;
}

UnitAlgebraic UnitAlgebraic::transcendental(std::string label) {
    UnitAlgebraic u;
    u.algebraic_ = false;
    u.label_ = std::move(label);
    return u;
}

UnitAlgebraic UnitAlgebraic::root_of_unity(int n, int a) {
    if (n < 1) throw Error("root_of_unity: order must be positive");
    long g = std::gcd(static_cast<long>(((a % n) + n) % n), static_cast<long>(n));
    if (g == 0) g = n;  // a = 0 mod n
    int order = n / static_cast<int>(g);
    double angle = 2.0 * M_PI * a / n;
    // primitive roots of order m are at least 2 sin(pi/m) apart
    double hw = order <= 2 ? 0.25 : 0.45 * std::sin(M_PI / order);
    Rational cx = rational_floor_1e6(std::cos(angle));
    Rational cy = rational_floor_1e6(std::sin(angle));
    Rational h = rational_floor_1e6(hw);
    return algebraic(IntPoly::cyclotomic(order), Rect{cx - h, cx + h, cy - h, cy + h});
}

const IntPoly& UnitAlgebraic::minpoly() const {
    if (!algebraic_) throw TranscendentalInput("UnitAlgebraic: no minimal polynomial");
    return minpoly_;
}

const Rect& UnitAlgebraic::rect() const {
    if (!algebraic_) throw TranscendentalInput("UnitAlgebraic: no root selector");
    return rect_;
}

std::complex<double> UnitAlgebraic::root() const {
    if (!algebraic_) throw TranscendentalInput("UnitAlgebraic: no numeric root");
    return root_;
}

const std::string& UnitAlgebraic::label() const {
    if (algebraic_) throw Error("UnitAlgebraic: algebraic input has no label");
    return label_;
}

std::string UnitAlgebraic::to_string() const {
    if (!algebraic_) return "trans:" + label_;
    std::string coeffs;
    for (int i = 0; i <= minpoly_.degree(); ++i) {
        if (i) coeffs += ' ';
        coeffs += minpoly_[static_cast<std::size_t>(i)].get_str();
    }
    return "alg:" + coeffs + ":" + rect_.to_string();
}

// ---------------------------------------------------------------- eval_at

EvalResult eval_at(const UnitAlgebraic& z, const IntPoly& p) {
    EvalResult r;
    if (!z.is_algebraic()) {
        r.zero = p.is_zero();
        return r;
    }
    r.residue = NumberFieldElem::from_poly(z.minpoly(), p);
    r.zero = r.residue->is_zero();
    return r;
}

// ------------------------------------------------------- decide_conjugacy

ConjugacyVerdict decide_conjugacy(const UnitAlgebraic& z, const UnitAlgebraic& w) {
    ConjugacyVerdict v;
    if (!z.is_algebraic() && !w.is_algebraic()) {
        v.conjugate = true;  // certificate stays zero: no separating polynomial
        return v;
    }
    if (z.is_algebraic() != w.is_algebraic()) {
        v.conjugate = false;
        // the algebraic one's minpoly separates: it never vanishes at a
        // transcendental number
        v.certificate = z.is_algebraic() ? z.minpoly() : w.minpoly();
        return v;
    }
    if (z.minpoly() == w.minpoly()) {
        v.conjugate = true;
        v.certificate = z.minpoly();
    } else {
        v.conjugate = false;
        // distinct irreducibles share no root
        v.certificate = z.minpoly();
    }
    return v;
}

// ------------------------------------------------------------------ XiMap

XiMap::XiMap(IntPoly modulus, Rect domain_root, Rect codomain_root)
    : mod_(poly_normalize(modulus)), dom_(domain_root), cod_(codomain_root) {}

NumberFieldElem XiMap::apply(const NumberFieldElem& x) const {
    if (x.modulus() != mod_) throw DimensionMismatch("XiMap: modulus mismatch");
    return NumberFieldElem(mod_, x.residue());
}

XiMap build_xi(const UnitAlgebraic& z, const UnitAlgebraic& w) {
    if (!z.is_algebraic() || !w.is_algebraic())
        throw TranscendentalInput("build_xi: both inputs must be algebraic");
    ConjugacyVerdict v = decide_conjugacy(z, w);
    if (!v.conjugate)
        throw NotConjugate("build_xi: inputs are not Galois conjugates (separating polynomial " +
                           v.certificate.to_string() + ")");
    return XiMap(z.minpoly(), z.rect(), w.rect());
}

// ---------------------------------------------------------------- parsing

namespace {

Rational parse_rational(const std::string& s) {
    try {
        Rational q(s, 10);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + s + "'");
    }
}

}  // namespace

UnitAlgebraic parse_unit_algebraic(const std::string& text) {
    if (text.rfind("trans:", 0) == 0) return UnitAlgebraic::transcendental(text.substr(6));
    if (text.rfind("alg:", 0) != 0)
        throw ParseError("parse_unit_algebraic: expected alg:... or trans:..., got '" + text + "'");
    std::string body = text.substr(4);
    std::size_t sep = body.rfind(':');
    if (sep == std::string::npos)
        throw ParseError("parse_unit_algebraic: missing rectangle in '" + text + "'");
    IntPoly p = IntPoly::from_string(body.substr(0, sep));
    std::vector<Rational> corners;
    std::istringstream in(body.substr(sep + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) corners.push_back(parse_rational(tok));
    if (corners.size() != 4)
        throw ParseError("parse_unit_algebraic: rectangle needs 4 corners, got " +
                         std::to_string(corners.size()));
    return UnitAlgebraic::algebraic(p, Rect{corners[0], corners[1], corners[2], corners[3]});
}

}  // namespace bohrgap
