#include "bohrgap/exactalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace bohrgap {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::from_string(const std::string& text) {
    std::istringstream in(text);
    std::vector<Int> c;
    std::string tok;
    while (in >> tok) c.emplace_back(tok);
    return IntPoly(std::move(c));
}

IntPoly IntPoly::x_power(int n) {
    std::vector<Int> c(static_cast<std::size_t>(n) + 1, 0);
    c.back() = 1;
    return IntPoly(std::move(c));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const Int& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> c(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> c(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> c(c_);
    for (Int& a : c) a = -a;
    return IntPoly(std::move(c));
}

Int IntPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

IntPoly IntPoly::reversed() const {
    std::vector<Int> c(c_.rbegin(), c_.rend());
    return IntPoly(std::move(c));
}

std::string IntPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out << ' ';
        out << c_[i].get_str();
    }
    return out.str();
}

// ----------------------------------------------------------------- QPoly

QPoly qpoly_from(const IntPoly& p) {
    QPoly q;
    q.reserve(p.coeffs().size());
    for (const Int& a : p.coeffs()) q.emplace_back(a);
    return q;
}

void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int qpoly_degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    qpoly_trim(c);
    return c;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
    QPoly c(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    qpoly_trim(c);
    return c;
}

void qpoly_divrem(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem) {
    if (den.empty()) throw DivisionByZero("qpoly_divrem: zero divisor");
    rem = num;
    qpoly_trim(rem);
    quot.assign(rem.size() > den.size() ? rem.size() - den.size() + 1 : 1, Rational(0));
    const Rational& lead = den.back();
    while (rem.size() >= den.size() && !rem.empty()) {
        std::size_t shift = rem.size() - den.size();
        Rational f = rem.back() / lead;
        quot[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i) rem[shift + i] -= f * den[i];
        qpoly_trim(rem);
    }
    qpoly_trim(quot);
}

QPoly qpoly_gcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
    QPoly r0 = a, r1 = b;
    qpoly_trim(r0);
    qpoly_trim(r1);
    QPoly u0{Rational(1)}, u1{}, v0{}, v1{Rational(1)};
    while (!r1.empty()) {
        QPoly q, r;
        qpoly_divrem(r0, r1, q, r);
        QPoly u2 = qpoly_sub(u0, qpoly_mul(q, u1));
        QPoly v2 = qpoly_sub(v0, qpoly_mul(q, v1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!r0.empty()) {
        Rational lead = r0.back();
        for (Rational& x : r0) x /= lead;
        for (Rational& x : u0) x /= lead;
        for (Rational& x : v0) x /= lead;
    }
    u = std::move(u0);
    v = std::move(v0);
    return r0;
}

// --------------------------------------------------------- normalization

IntPoly poly_normalize(const IntPoly& p) {
    if (p.is_zero()) return p;
    Int cont = p.content();
    std::vector<Int> c;
    c.reserve(p.coeffs().size());
    for (const Int& a : p.coeffs()) c.push_back(a / cont);
    if (c.back() < 0)
        for (Int& a : c) a = -a;
    return IntPoly(std::move(c));
}

bool poly_divides(const IntPoly& d, const IntPoly& p) {
    if (d.is_zero()) throw DivisionByZero("poly_divides: zero divisor");
    if (p.is_zero()) return true;
    if (d.degree() > p.degree()) return false;
    QPoly quot, rem;
    qpoly_divrem(qpoly_from(p), qpoly_from(d), quot, rem);
    return rem.empty();
}

// --------------------------------------------------- cyclotomic polynomials

int euler_phi(int k) {
    int result = k, n = k;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

IntPoly IntPoly::cyclotomic(int k) {
    static std::map<int, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d, computed bottom-up.
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0 || cache.count(d)) continue;
        IntPoly num = IntPoly::x_power(d) - IntPoly{1};
        QPoly q = qpoly_from(num);
        for (int e = 1; e < d; ++e) {
            if (d % e != 0) continue;
            QPoly quot, rem;
            qpoly_divrem(q, qpoly_from(cache.at(e)), quot, rem);
            q = std::move(quot);
        }
        std::vector<Int> c;
        c.reserve(q.size());
        for (const Rational& x : q) c.push_back(x.get_num());  // exact division
        cache.emplace(d, IntPoly(std::move(c)));
    }
    return cache.at(k);
}

std::optional<int> cyclotomic_factor(const IntPoly& p, int d) {
    if (p.is_zero()) return std::nullopt;
    int bound = 2 * d * d;
    for (int k = 1; k <= std::max(bound, 1); ++k) {
        if (euler_phi(k) > d) continue;
        if (poly_divides(IntPoly::cyclotomic(k), p)) return k;
    }
    return std::nullopt;
}

// ------------------------------------------------- irreducibility over Q

namespace {

// Polynomial arithmetic over GF(p) for small p, coefficients as uint32.
using FpPoly = std::vector<std::uint32_t>;

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    // reduce mod m (m monic); residue keeps indices < deg(m)
    std::size_t dm = m.size() - 1;
    for (std::size_t k = c.size(); k-- > dm;) {
        std::uint64_t f = c[k];
        if (f == 0) continue;
        std::size_t shift = k - dm;
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::uint64_t sub = f * m[i] % p;
            c[shift + i] = (c[shift + i] + p - sub) % p;
        }
    }
    FpPoly r;
    r.reserve(dm);
    for (std::size_t i = 0; i < dm && i < c.size(); ++i)
        r.push_back(static_cast<std::uint32_t>(c[i]));
    fp_trim(r);
    return r;
}

std::uint64_t fp_inv(std::uint64_t a, std::uint64_t p) {
    // Fermat
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        // a mod b
        std::uint64_t inv = fp_inv(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = a.back() * inv % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::uint64_t sub = f * b[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
            fp_trim(a);
        }
        std::swap(a, b);
    }
    // make monic
    if (!a.empty()) {
        std::uint64_t inv = fp_inv(a.back(), p);
        for (auto& x : a) x = static_cast<std::uint32_t>(x * inv % p);
    }
    return a;
}

FpPoly fp_derivative(const FpPoly& f, std::uint64_t p) {
    FpPoly d;
    for (std::size_t i = 1; i < f.size(); ++i)
        d.push_back(static_cast<std::uint32_t>(static_cast<std::uint64_t>(f[i]) * (i % p) % p));
    fp_trim(d);
    return d;
}

FpPoly fp_powmod_x(std::uint64_t e, const FpPoly& m, std::uint64_t p, FpPoly base) {
    // base^e mod m
    FpPoly r{1};
    while (e) {
        if (e & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// Degrees (with multiplicity by count) of irreducible factors of f mod p,
// or nullopt when f mod p is not usable (degree drop / not squarefree).
std::optional<std::vector<int>> fp_factor_degrees(const IntPoly& poly, std::uint64_t p) {
    FpPoly f;
    for (const Int& a : poly.coeffs()) {
        Int r = a % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        f.push_back(static_cast<std::uint32_t>(r.get_ui()));
    }
    fp_trim(f);
    if (static_cast<int>(f.size()) - 1 != poly.degree()) return std::nullopt;
    // monic
    std::uint64_t inv = fp_inv(f.back(), p);
    for (auto& x : f) x = static_cast<std::uint32_t>(x * inv % p);
    // squarefree check
    FpPoly g = fp_gcd(f, fp_derivative(f, p), p);
    if (g.size() > 1) return std::nullopt;

    // distinct-degree factorization
    std::vector<int> degs;
    FpPoly rest = f;
    FpPoly h{0, 1};  // x mod rest
    int i = 0;
    while (static_cast<int>(rest.size()) - 1 > 0) {
        ++i;
        if (2 * i > static_cast<int>(rest.size()) - 1) {
            degs.push_back(static_cast<int>(rest.size()) - 1);
            break;
        }
        h = fp_powmod_x(p, rest, p, h);  // h = h^p mod rest
        FpPoly hx = h;
        // h - x
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = static_cast<std::uint32_t>((hx[1] + p - 1) % p);
        fp_trim(hx);
        FpPoly gi = fp_gcd(rest, hx, p);
        if (gi.size() > 1) {
            int total = static_cast<int>(gi.size()) - 1;
            for (int c = 0; c < total / i; ++c) degs.push_back(i);
            // rest /= gi  (division in GF(p), gi monic)
            FpPoly a = rest;
            FpPoly quot(a.size() - gi.size() + 1, 0);
            while (a.size() >= gi.size() && !a.empty()) {
                std::uint64_t fac = a.back();
                std::size_t shift = a.size() - gi.size();
                quot[shift] = static_cast<std::uint32_t>(fac);
                for (std::size_t k = 0; k < gi.size(); ++k) {
                    std::uint64_t sub = fac * gi[k] % p;
                    a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + p - sub) % p);
                }
                fp_trim(a);
            }
            rest = std::move(quot);
            fp_trim(rest);
            if (rest.size() > 1) h = fp_mulmod(h, FpPoly{1}, rest, p);
        }
    }
    return degs;
}

// All divisors of |n| (n != 0); nullopt when factoring stalls.
std::optional<std::vector<Int>> all_divisors(const Int& n_in) {
    Int n = abs(n_in);
    if (n == 0) return std::nullopt;
    std::vector<std::pair<Int, int>> fact;
    Int m = n;
    for (long p = 2; p < 1000000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            fact.emplace_back(p, e);
        }
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 30) == 0) return std::nullopt;  // composite leftover
        fact.emplace_back(m, 1);
    }
    std::vector<Int> divs{1};
    for (auto& [p, e] : fact) {
        std::size_t sz = divs.size();
        Int pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > 4096) return std::nullopt;  // combinatorial cap
            }
        }
    }
    return divs;
}

// nullopt when the divisor enumeration of c0 / leading stalls
std::optional<bool> has_rational_root(const IntPoly& p) {
    // candidate roots r/s with r | c0, s | cn
    const Int& c0 = p[0];
    if (c0 == 0) return true;  // x divides
    auto rs = all_divisors(c0);
    auto ss = all_divisors(p.leading());
    if (!rs || !ss) return std::nullopt;
    for (const Int& r : *rs)
        for (const Int& s : *ss) {
            Rational cand(r, s);
            cand.canonicalize();
            if (p.eval(cand) == 0 || p.eval(-cand) == 0) return true;
        }
    return false;
}

// Lagrange interpolation through integer points; returns nullopt if the
// result is not an integer polynomial.
std::optional<IntPoly> interpolate_integer(const std::vector<long>& xs,
                                           const std::vector<Int>& ys) {
    std::size_t n = xs.size();
    QPoly acc;
    for (std::size_t i = 0; i < n; ++i) {
        QPoly term{Rational(ys[i])};
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            // term *= (x - xs[j]) / (xs[i] - xs[j])
            Rational denom(xs[i] - xs[j]);
            QPoly lin{Rational(-xs[j]) / denom, Rational(1) / denom};
            term = qpoly_mul(term, lin);
        }
        acc = qpoly_sub(acc, qpoly_mul(term, QPoly{Rational(-1)}));
    }
    qpoly_trim(acc);
    std::vector<Int> c;
    for (const Rational& q : acc) {
        if (q.get_den() != 1) return std::nullopt;
        c.push_back(q.get_num());
    }
    return IntPoly(std::move(c));
}

// Kronecker-style search for a factor of degree exactly d. Returns true
// if a nontrivial factor is found.
bool kronecker_has_factor(const IntPoly& p, int d) {
    std::vector<long> xs;
    std::vector<std::vector<Int>> divlists;
    long x = 0;
    while (static_cast<int>(xs.size()) < d + 1) {
        Int v = p.eval(Int(x));
        if (v == 0) return true;  // linear factor
        auto divs = all_divisors(v);
        if (divs) {
            xs.push_back(x);
            // signed divisors
            std::vector<Int> sd;
            sd.reserve(divs->size() * 2);
            for (const Int& t : *divs) {
                sd.push_back(t);
                sd.push_back(-t);
            }
            divlists.push_back(std::move(sd));
        }
        x = (x > 0) ? -x : -x + 1;  // 0, 1, -1, 2, -2, ...
        if (x > 40) throw Error("kronecker: could not factor enough evaluation values");
    }
    // enumerate divisor tuples
    std::vector<std::size_t> idx(xs.size(), 0);
    std::uint64_t combos = 1;
    for (auto& dl : divlists) {
        combos *= dl.size();
        if (combos > 20000000ULL)
            throw Error("kronecker: search space too large at degree " + std::to_string(d));
    }
    while (true) {
        std::vector<Int> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = divlists[i][idx[i]];
        auto cand = interpolate_integer(xs, ys);
        if (cand && cand->degree() == d && poly_divides(*cand, p)) return true;
        // next tuple
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < divlists[i].size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    return false;
}

}  // namespace

bool poly_is_irreducible(const IntPoly& p_in, int degree_cap) {
    IntPoly p = poly_normalize(p_in);
    int n = p.degree();
    if (n < 1) return false;
    if (n > degree_cap)
        throw DegreeCapExceeded("degree " + std::to_string(n) + " exceeds cap " +
                                std::to_string(degree_cap));
    if (n == 1) return true;
    std::optional<bool> root = has_rational_root(p);
    if (root.has_value() && *root) return false;
    if (!root.has_value() && n <= 3)
        throw Error("poly_is_irreducible: rational-root divisor enumeration stalled");
    if (root.has_value() && n <= 3) return true;  // no rational root suffices up to cubic

    // Factor-degree patterns modulo several small primes: possible factor
    // degrees over Z are subset sums of each mod-p degree multiset.
    static const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
    int used = 0;
    for (std::uint64_t q : primes) {
        if (used >= 6) break;
        auto degs = fp_factor_degrees(p, q);
        if (!degs) continue;
        ++used;
        std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
        sums[0] = true;
        for (int d : *degs)
            for (int s = n; s >= d; --s)
                if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = true;
        for (int s = 0; s <= n; ++s)
            if (!sums[static_cast<std::size_t>(s)]) possible[static_cast<std::size_t>(s)] = false;
        bool any_proper = false;
        for (int s = 1; s < n; ++s)
            if (possible[static_cast<std::size_t>(s)]) any_proper = true;
        if (!any_proper) return true;
    }

    // Bounded integer-factor search over the surviving degrees. Degree 1
    // is retried here only when the rational-root test was inconclusive.
    for (int d = root.has_value() ? 2 : 1; d <= n / 2; ++d) {
        if (!possible[static_cast<std::size_t>(d)]) continue;
        if (kronecker_has_factor(p, d)) return false;
    }
    return true;
}

// --------------------------------------------------------- number fields

NumberFieldElem::NumberFieldElem(IntPoly modulus, QPoly residue)
    : mod_(std::move(modulus)), res_(std::move(residue)) {
    if (mod_.degree() < 1) throw Error("NumberFieldElem: modulus must have degree >= 1");
    qpoly_trim(res_);
    if (qpoly_degree(res_) >= mod_.degree()) {
        QPoly quot, rem;
        qpoly_divrem(res_, qpoly_from(mod_), quot, rem);
        res_ = std::move(rem);
    }
}

NumberFieldElem NumberFieldElem::from_poly(const IntPoly& modulus, const IntPoly& p) {
    return NumberFieldElem(modulus, qpoly_from(p));
}

NumberFieldElem NumberFieldElem::zero(const IntPoly& modulus) {
    return NumberFieldElem(modulus, QPoly{});
}

NumberFieldElem NumberFieldElem::one(const IntPoly& modulus) {
    return NumberFieldElem(modulus, QPoly{Rational(1)});
}

NumberFieldElem NumberFieldElem::generator(const IntPoly& modulus) {
    return NumberFieldElem(modulus, QPoly{Rational(0), Rational(1)});
}

void NumberFieldElem::check_compatible(const NumberFieldElem& o) const {
    if (mod_ != o.mod_) throw DimensionMismatch("NumberFieldElem: modulus mismatch");
}

NumberFieldElem NumberFieldElem::operator+(const NumberFieldElem& o) const {
    check_compatible(o);
    return NumberFieldElem(mod_, qpoly_sub(res_, qpoly_mul(o.res_, QPoly{Rational(-1)})));
}

NumberFieldElem NumberFieldElem::operator-(const NumberFieldElem& o) const {
    check_compatible(o);
    return NumberFieldElem(mod_, qpoly_sub(res_, o.res_));
}

NumberFieldElem NumberFieldElem::operator*(const NumberFieldElem& o) const {
    check_compatible(o);
    return NumberFieldElem(mod_, qpoly_mul(res_, o.res_));
}

NumberFieldElem NumberFieldElem::operator*(const Rational& q) const {
    QPoly r = res_;
    for (Rational& x : r) x *= q;
    qpoly_trim(r);
    return NumberFieldElem(mod_, std::move(r));
}

NumberFieldElem NumberFieldElem::pow(long n) const {
    NumberFieldElem base = (n < 0) ? nf_inverse(*this) : *this;
    unsigned long e = (n < 0) ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    NumberFieldElem r = one(mod_);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool NumberFieldElem::operator==(const NumberFieldElem& o) const {
    return mod_ == o.mod_ && res_ == o.res_;
}

std::string NumberFieldElem::to_string() const {
    if (res_.empty()) return "0";
    std::ostringstream out;
    for (std::size_t i = 0; i < res_.size(); ++i) {
        if (i) out << ' ';
        out << res_[i].get_str();
    }
    return out.str();
}

NumberFieldElem nf_inverse(const NumberFieldElem& a) {
    if (a.is_zero()) throw DivisionByZero("nf_inverse of zero");
    QPoly u, v;
    QPoly g = qpoly_gcd_ext(a.residue(), qpoly_from(a.modulus()), u, v);
    if (qpoly_degree(g) != 0)
        throw Error("nf_inverse: modulus not irreducible or element not invertible");
    return NumberFieldElem(a.modulus(), std::move(u));
}

// ------------------------------------------------------------ torus values

Rational mod1(const Rational& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - Rational(fl);
}

TorusValue TorusValue::exact(const Rational& q) {
    TorusValue t;
    t.exact_ = true;
    t.q_ = mod1(q);
    return t;
}

TorusValue TorusValue::approx(double x) {
    TorusValue t;
    t.exact_ = false;
    double r = x - std::floor(x);
    if (r >= 1.0 - 1e-12) r = 0.0;  // snap
    if (r < 0) r = 0.0;
    t.f_ = r;
    return t;
}

const Rational& TorusValue::rational() const {
    if (!exact_) throw Error("TorusValue: float value has no exact form");
    return q_;
}

double TorusValue::as_double() const { return exact_ ? q_.get_d() : f_; }

TorusValue TorusValue::operator+(const TorusValue& o) const {
    if (exact_ && o.exact_) return exact(q_ + o.q_);
    return approx(as_double() + o.as_double());
}

TorusValue TorusValue::operator-() const {
    if (exact_) return exact(-q_);
    return approx(-f_);
}

bool TorusValue::operator==(const TorusValue& o) const {
    if (exact_ && o.exact_) return q_ == o.q_;
    return std::abs(as_double() - o.as_double()) < 1e-9 ||
           std::abs(std::abs(as_double() - o.as_double()) - 1.0) < 1e-9;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    Int num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        Int rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        Rational r(rn, rd);
        r.canonicalize();
        return r;
    }
    return std::nullopt;
}

}  // namespace bohrgap
