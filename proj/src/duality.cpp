#include "bohrgap/duality.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bohrgap {

// ---------------------------------------------------------- FiniteAbelian

FiniteAbelian::FiniteAbelian(std::vector<long> factors, std::size_t cap) : n_(std::move(factors)) {
    // an empty factor list is the trivial group
    order_ = 1;
    for (std::size_t i = 0; i < n_.size(); ++i) {
        if (n_[i] < 2) throw Error("FiniteAbelian: invariant factors must be >= 2");
        if (i > 0 && n_[i] % n_[i - 1] != 0)
            throw Error("FiniteAbelian: invariant factors must form a divisibility chain");
        if (order_ > cap / static_cast<std::size_t>(n_[i]))
            throw OrderCapExceeded("FiniteAbelian: order exceeds cap " + std::to_string(cap));
        order_ *= static_cast<std::size_t>(n_[i]);
    }
}

Tuple FiniteAbelian::reduce(Tuple x) const {
    if (x.size() != n_.size()) throw DimensionMismatch("FiniteAbelian: tuple has wrong rank");
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] %= n_[i];
        if (x[i] < 0) x[i] += n_[i];
    }
    return x;
}

Tuple FiniteAbelian::add(const Tuple& a, const Tuple& b) const {
    if (a.size() != b.size()) throw DimensionMismatch("FiniteAbelian: tuple rank mismatch");
    Tuple r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return reduce(std::move(r));
}

Tuple FiniteAbelian::neg(const Tuple& a) const {
    Tuple r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return reduce(std::move(r));
}

std::vector<Tuple> FiniteAbelian::elements() const {
    std::vector<Tuple> out;
    out.reserve(order_);
    Tuple x(n_.size(), 0);
    if (n_.empty()) return {x};
    for (;;) {
        out.push_back(x);
        // lexicographic odometer, last coordinate fastest
        std::size_t i = n_.size();
        while (i-- > 0) {
            if (++x[i] < n_[i]) break;
            x[i] = 0;
            if (i == 0) return out;
        }
    }
}

namespace {

// position of a reduced tuple in FiniteAbelian::elements()
std::size_t tuple_index(const FiniteAbelian& a, const Tuple& x) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        idx = idx * static_cast<std::size_t>(a.factors()[i]) + static_cast<std::size_t>(x[i]);
    return idx;
}

std::string tuple_str(const Tuple& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    return s + ")";
}

}  // namespace

// -------------------------------------------------------------- Character

TorusValue Character::eval(const FiniteAbelian& a, const Tuple& x) const {
    if (coeffs.size() != x.size() || x.size() != a.factors().size())
        throw DimensionMismatch("Character: rank mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        s += Rational(coeffs[i]) * x[i] / a.factors()[i];
    return TorusValue::exact(s);
}

std::vector<Character> enumerate_dual(const FiniteAbelian& a) {
    std::vector<Character> out;
    out.reserve(a.order());
    for (Tuple& t : a.elements()) out.push_back(Character{std::move(t)});
    return out;
}

// -------------------------------------------------------------- AutoAction

Tuple mat_apply(const FiniteAbelian& a, const IntMat& m, const Tuple& x) {
    if (m.size() != x.size()) throw DimensionMismatch("mat_apply: matrix/tuple shape mismatch");
    Tuple r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.size()) throw DimensionMismatch("mat_apply: ragged matrix");
        long long acc = 0;
        long ni = a.factors()[i];
        for (std::size_t j = 0; j < x.size(); ++j)
            acc += ((m[i][j] % ni) * (x[j] % ni)) % ni;
        r[i] = static_cast<long>(((acc % ni) + ni) % ni);
    }
    return r;
}

AutoAction::AutoAction(FiniteAbelian base, GroupSpec acting, std::vector<IntMat> gens)
    : base_(std::move(base)), acting_(std::move(acting)), mats_(std::move(gens)) {
    const std::size_t r = static_cast<std::size_t>(base_.rank());
    const auto& n = base_.factors();
    for (const IntMat& m : mats_) {
        if (m.size() != r) throw InvalidAction("AutoAction: matrix has wrong shape");
        for (std::size_t i = 0; i < r; ++i) {
            if (m[i].size() != r) throw InvalidAction("AutoAction: matrix has wrong shape");
            // well-defined mod the invariant factors: M e_j has order dividing n_j
            for (std::size_t j = 0; j < r; ++j)
                if ((m[i][j] * n[j]) % n[i] != 0)
                    throw InvalidAction("AutoAction: matrix does not respect invariant factors");
        }
    }
    std::vector<Tuple> elems = base_.elements();
    for (const IntMat& m : mats_) {
        std::vector<std::size_t> perm(elems.size()), inv(elems.size(), elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            std::size_t t = tuple_index(base_, mat_apply(base_, m, elems[i]));
            perm[i] = t;
            if (inv[t] != elems.size())
                throw InvalidAction("AutoAction: generator map is not a bijection (collision at " +
                                    tuple_str(elems[t]) + ")");
            inv[t] = i;
        }
        perm_.push_back(std::move(perm));
        inv_perm_.push_back(std::move(inv));
    }
}

Tuple AutoAction::apply(std::size_t gen, const Tuple& x) const {
    return mat_apply(base_, mats_.at(gen), base_.reduce(x));
}

Tuple AutoAction::apply_inverse(std::size_t gen, const Tuple& x) const {
    std::size_t idx = inv_perm_.at(gen)[tuple_index(base_, base_.reduce(x))];
    // decode the mixed-radix index back into a tuple
    Tuple t(base_.factors().size());
    for (std::size_t i = t.size(); i-- > 0;) {
        long ni = base_.factors()[i];
        t[i] = static_cast<long>(idx % static_cast<std::size_t>(ni));
        idx /= static_cast<std::size_t>(ni);
    }
    return t;
}

Character AutoAction::dual_apply(std::size_t gen, const Character& chi) const {
    const auto& n = base_.factors();
    Tuple b(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        Tuple ej(n.size(), 0);
        ej[j] = 1;
        // (g chi)(e_j) = chi(g^-1 e_j) = b_j / n_j
        Rational v = chi.eval(base_, apply_inverse(gen, ej)).rational() * n[j];
        if (v.get_den() != 1)
            throw InvalidAction("dual_apply: character value has unexpected denominator");
        b[j] = static_cast<long>(mpz_class(v.get_num() % n[j]).get_si());
    }
    return Character{base_.reduce(std::move(b))};
}

// ------------------------------------------------------------ fixed counts

std::pair<std::size_t, std::size_t> fixed_counts(const AutoAction& act) {
    const FiniteAbelian& a = act.base();
    std::size_t ngen = act.generator_mats().size();
    std::size_t fixed_elems = 0;
    for (const Tuple& x : a.elements()) {
        bool fixed = true;
        for (std::size_t g = 0; g < ngen && fixed; ++g) fixed = act.apply(g, x) == x;
        if (fixed) ++fixed_elems;
    }
    std::size_t fixed_chars = 0;
    for (const Character& chi : enumerate_dual(a)) {
        bool fixed = true;
        for (std::size_t g = 0; g < ngen && fixed; ++g) fixed = act.dual_apply(g, chi) == chi;
        if (fixed) ++fixed_chars;
    }
    return {fixed_elems, fixed_chars};
}

// -------------------------------------------------------- conjugacy transport

DualTransport::DualTransport(const FiniteAbelian& a, const FiniteAbelian& b,
                             std::vector<std::size_t> inverse_table)
    : a_(a), b_(b), inv_(std::move(inverse_table)) {}

Character DualTransport::apply(const Character& chi) const {
    std::vector<Tuple> a_elems = a_.elements();
    const auto& n = b_.factors();
    Tuple c(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        Tuple ej(n.size(), 0);
        ej[j] = 1;
        const Tuple& pre = a_elems[inv_[tuple_index(b_, ej)]];
        Rational v = chi.eval(a_, pre).rational() * n[j];
        if (v.get_den() != 1)
            throw NotIsomorphism("DualTransport: transported value has unexpected denominator");
        c[j] = static_cast<long>(mpz_class(v.get_num() % n[j]).get_si());
    }
    return Character{b_.reduce(std::move(c))};
}

DualTransport dual_conjugacy_transport(const IntMat& xi, const AutoAction& act,
                                       const AutoAction& act_prime) {
    const FiniteAbelian& a = act.base();
    const FiniteAbelian& b = act_prime.base();
    if (act.generator_mats().size() != act_prime.generator_mats().size())
        throw NotIntertwining("dual_conjugacy_transport: actions have different generator counts");
    if (xi.size() != static_cast<std::size_t>(b.rank()))
        throw NotIsomorphism("dual_conjugacy_transport: xi has wrong shape");
    const auto& na = a.factors();
    const auto& nb = b.factors();
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (xi[i].size() != static_cast<std::size_t>(a.rank()))
            throw NotIsomorphism("dual_conjugacy_transport: xi has wrong shape");
        for (std::size_t j = 0; j < xi[i].size(); ++j)
            if ((xi[i][j] * na[j]) % nb[i] != 0)
                throw NotIsomorphism(
                    "dual_conjugacy_transport: xi does not respect invariant factors");
    }
    if (a.order() != b.order())
        throw NotIsomorphism("dual_conjugacy_transport: groups have different orders");

    auto xi_apply = [&](const Tuple& x) {
        Tuple r(nb.size(), 0);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            long long acc = 0;
            long ni = nb[i];
            for (std::size_t j = 0; j < x.size(); ++j)
                acc += ((xi[i][j] % ni) * (x[j] % ni)) % ni;
            r[i] = static_cast<long>(((acc % ni) + ni) % ni);
        }
        return r;
    };

    std::vector<Tuple> a_elems = a.elements();
    std::vector<std::size_t> inverse(b.order(), b.order());
    for (std::size_t i = 0; i < a_elems.size(); ++i) {
        std::size_t t = tuple_index(b, xi_apply(a_elems[i]));
        if (inverse[t] != b.order())
            throw NotIsomorphism("dual_conjugacy_transport: xi is not injective (collision at " +
                                 tuple_str(a_elems[i]) + ")");
        inverse[t] = i;
    }
    std::size_t ngen = act.generator_mats().size();
    for (std::size_t i = 0; i < a_elems.size(); ++i)
        for (std::size_t g = 0; g < ngen; ++g)
            if (xi_apply(act.apply(g, a_elems[i])) != act_prime.apply(g, xi_apply(a_elems[i])))
                throw NotIntertwining("dual_conjugacy_transport: xi fails to intertwine at " +
                                      tuple_str(a_elems[i]) + " (generator " + std::to_string(g) +
                                      ")");
    return DualTransport(a, b, std::move(inverse));
}

// ---------------------------------------------------------- toral automorphisms

Int det_exact(const IntMat& m) {
    const std::size_t d = m.size();
    std::vector<std::vector<Int>> a(d, std::vector<Int>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if (m[i].size() != d) throw DimensionMismatch("det_exact: square matrix expected");
        for (std::size_t j = 0; j < d; ++j) a[i][j] = Int(static_cast<long>(m[i][j]));
    }
    // Bareiss fraction-free elimination
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < d && a[p][k] == 0) ++p;
            if (p == d) return Int(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < d; ++i)
            for (std::size_t j = k + 1; j < d; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
        prev = a[k][k];
    }
    return sign * a[d - 1][d - 1];
}

IntPoly charpoly_exact(const IntMat& m) {
    const std::size_t d = m.size();
    for (const auto& row : m)
        if (row.size() != d) throw DimensionMismatch("charpoly_exact: square matrix expected");
    // det(kI - M) at k = 0..d, then exact Lagrange interpolation
    std::vector<Rational> vals(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        IntMat shifted = m;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) shifted[i][j] = -m[i][j];
            shifted[i][i] += static_cast<long long>(k);
        }
        vals[k] = Rational(det_exact(shifted));
    }
    QPoly p;  // Newton's forward-difference form keeps everything small
    QPoly basis{Rational(1)};
    std::vector<Rational> diag = vals;
    for (std::size_t k = 0; k <= d; ++k) {
        if (k > 0) {
            for (std::size_t i = 0; i + k <= d; ++i)
                diag[i] = (diag[i + 1] - diag[i]) / Rational(static_cast<long>(k));
            // basis *= (x - (k-1))
            QPoly nb(basis.size() + 1, Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                nb[i + 1] += basis[i];
                nb[i] -= basis[i] * Rational(static_cast<long>(k - 1));
            }
            basis = std::move(nb);
        }
        if (p.size() < basis.size()) p.resize(basis.size(), Rational(0));
        for (std::size_t i = 0; i < basis.size(); ++i) p[i] += basis[i] * diag[0];
        if (k > 0) diag.resize(d + 1 - k);
    }
    std::vector<Int> coeffs;
    for (const Rational& q : p) {
        if (q.get_den() != 1) throw Error("charpoly_exact: interpolation left a denominator");
        coeffs.push_back(Int(q.get_num()));
    }
    return IntPoly(std::move(coeffs));
}

namespace {

// nonzero integer vector in the rational kernel of an exact matrix,
// scaled primitive; empty when the kernel is trivial
std::vector<Int> integer_kernel_vector(std::vector<std::vector<Rational>> a) {
    const std::size_t d = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    std::vector<bool> is_pivot(d, false);
    for (std::size_t col = 0; col < d && row < d; ++col) {
        std::size_t p = row;
        while (p < d && a[p][col] == 0) ++p;
        if (p == d) continue;
        std::swap(a[row], a[p]);
        Rational inv = Rational(1) / a[row][col];
        for (std::size_t j = col; j < d; ++j) a[row][j] *= inv;
        for (std::size_t i = 0; i < d; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rational f = a[i][col];
            for (std::size_t j = col; j < d; ++j) a[i][j] -= f * a[row][j];
        }
        pivot_col.push_back(col);
        is_pivot[col] = true;
        ++row;
    }
    std::size_t free_col = d;
    for (std::size_t c = 0; c < d; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == d) return {};
    std::vector<Rational> v(d, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free_col];
    Int lcm(1);
    for (const Rational& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> w(d);
    Int g(0);
    for (std::size_t i = 0; i < d; ++i) {
        Rational q = v[i] * lcm;
        w[i] = Int(q.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    for (Int& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return w;
}

}  // namespace

ErgodicityVerdict toral_ergodicity(const IntMat& m) {
    const std::size_t d = m.size();
    for (const auto& row : m)
        if (row.size() != d) throw DimensionMismatch("toral_ergodicity: square matrix expected");
    Int det = det_exact(m);
    if (det != 1 && det != -1)
        throw NotUnimodular("toral_ergodicity: |det| = " + det.get_str() + ", expected 1");
    ErgodicityVerdict out;
    out.charpoly = charpoly_exact(m);
    auto k = cyclotomic_factor(out.charpoly, static_cast<int>(d));
    if (!k) {
        out.ergodic = true;
        return out;
    }
    out.cyclotomic_index = *k;
    // witness: integer vector killed by Phi_k(M^T); its M^T-orbit is
    // finite since Phi_k divides x^k - 1
    IntPoly phi = IntPoly::cyclotomic(*k);
    std::vector<std::vector<Rational>> mt(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) mt[i][j] = Rational(static_cast<long>(m[j][i]));
    // evaluate phi at the matrix by Horner
    std::vector<std::vector<Rational>> acc(d, std::vector<Rational>(d, Rational(0)));
    for (int c = phi.degree(); c >= 0; --c) {
        std::vector<std::vector<Rational>> next(d, std::vector<Rational>(d, Rational(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                for (std::size_t t = 0; t < d; ++t) next[i][j] += acc[i][t] * mt[t][j];
                if (i == j) next[i][j] += Rational(phi[static_cast<std::size_t>(c)]);
            }
        acc = std::move(next);
    }
    std::vector<Int> w = integer_kernel_vector(std::move(acc));
    if (!w.empty()) {
        bool small = true;
        for (const Int& x : w)
            if (mpz_cmpabs_ui(x.get_mpz_t(), 1000) > 0) small = false;
        if (small) {
            Tuple wt(d);
            for (std::size_t i = 0; i < d; ++i) wt[i] = static_cast<long>(w[i].get_si());
            // orbit length under M^T (divides k)
            std::vector<Int> cur(w);
            std::size_t steps = 0;
            do {
                std::vector<Int> next(d, Int(0));
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j)
                        next[i] += Int(static_cast<long>(m[j][i])) * cur[j];
                cur = std::move(next);
                ++steps;
            } while (cur != w && steps <= static_cast<std::size_t>(*k));
            if (cur == w) {
                out.witness = std::move(wt);
                out.orbit_size = steps;
            }
        }
    }
    return out;
}

// ----------------------------------------------------------------- parsing

FiniteAbelian parse_abelian(const std::string& text, std::size_t cap) {
    std::string body = text;
    std::size_t eq = body.find('=');
    if (eq != std::string::npos) body = body.substr(eq + 1);
    std::vector<long> factors;
    std::string tok;
    std::istringstream in(body);
    while (std::getline(in, tok, ',')) {
        std::istringstream t(tok);
        long v;
        if (!(t >> v)) throw ParseError("parse_abelian: bad invariant factor '" + tok + "'");
        factors.push_back(v);
    }
    if (factors.empty()) throw ParseError("parse_abelian: no invariant factors in '" + text + "'");
    return FiniteAbelian(std::move(factors), cap);
}

IntMat parse_int_matrix(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), '/', '\n');
    std::replace(t.begin(), t.end(), ',', ' ');
    IntMat m;
    std::istringstream in(t);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::vector<long long> r;
        long long v;
        while (row >> v) r.push_back(v);
        if (!r.empty()) m.push_back(std::move(r));
    }
    if (m.empty()) throw ParseError("parse_int_matrix: no rows in '" + text + "'");
    for (const auto& r : m)
        if (r.size() != m[0].size()) throw ParseError("parse_int_matrix: ragged rows");
    return m;
}

std::vector<IntMat> parse_action_mats(const std::string& text) {
    std::vector<IntMat> out;
    std::string chunk;
    std::istringstream in(text);
    std::string line;
    auto flush = [&] {
        if (chunk.find_first_not_of(" \t\n") != std::string::npos)
            out.push_back(parse_int_matrix(chunk));
        chunk.clear();
    };
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
        if (trimmed == "--") {
            flush();
        } else {
            chunk += line;
            chunk += '\n';
        }
    }
    flush();
    if (out.empty()) throw ParseError("parse_action_mats: no matrices");
    return out;
}

}  // namespace bohrgap
