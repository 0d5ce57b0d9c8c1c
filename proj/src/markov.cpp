#include "bohrgap/markov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace bohrgap {

// ----------------------------------------------------------- P_mu, D_mu

namespace {

template <class S>
SparseVec<S> apply_P_sparse(const RegularRep& rep, const GenMeasure& mu, const SparseVec<S>& v) {
    SparseVec<S> acc;
    for (const auto& [h, w] : mu.support) {
        S weight = [&] {
            if constexpr (std::is_same_v<S, double>)
                return w.get_d();
            else
                return w;
        }();
        for (const auto& [label, coeff] : v.entries()) {
            GroupElem moved = h * label;
            if (rep.in_ball(moved)) acc.add(moved, coeff * weight);
        }
    }
    return acc;
}

}  // namespace

VecF apply_P(const RegularRep& rep, const GenMeasure& mu, const VecF& v) {
    return apply_P_sparse(rep, mu, v);
}
VecQ apply_P(const RegularRep& rep, const GenMeasure& mu, const VecQ& v) {
    return apply_P_sparse(rep, mu, v);
}
VecF apply_D(const RegularRep& rep, const GenMeasure& mu, const VecF& v) {
    return v - apply_P(rep, mu, v);
}
VecQ apply_D(const RegularRep& rep, const GenMeasure& mu, const VecQ& v) {
    return v - apply_P(rep, mu, v);
}

Eigen::MatrixXd averaging_matrix(const RepSpec& rep, const GenMeasure& mu) {
    int n = finite_dim(rep);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [h, w] : mu.support) p += w.get_d() * rep_matrix(rep, h);
    return p;
}

Eigen::VectorXd apply_P(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& v) {
    return averaging_matrix(rep, mu) * v;
}
Eigen::VectorXd apply_D(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& v) {
    return v - apply_P(rep, mu, v);
}

// ------------------------------------------------- truncated power method

namespace {

// Neighbor table of the truncated P_mu: per support element, the image
// index of every ball element (or -1 when pushed outside the ball).
struct TruncatedOperator {
    std::size_t dim;
    std::vector<double> weights;            // per support element
    std::vector<std::vector<long>> target;  // [support][ball index] -> index or -1

    explicit TruncatedOperator(const RegularRep& rep, const GenMeasure& mu) {
        const auto& ball = rep.ball();
        dim = ball.size();
        for (const auto& [h, w] : mu.support) {
            weights.push_back(w.get_d());
            std::vector<long> t(dim, -1);
            for (std::size_t i = 0; i < dim; ++i) {
                auto j = rep.index_of(h * ball[i]);
                if (j) t[i] = static_cast<long>(*j);
            }
            target.push_back(std::move(t));
        }
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t s = 0; s < weights.size(); ++s) {
            double w = weights[s];
            const auto& t = target[s];
            for (std::size_t i = 0; i < dim; ++i)
                if (t[i] >= 0) y[static_cast<std::size_t>(t[i])] += w * x[i];
        }
    }
};

double power_iteration(const TruncatedOperator& op, double tol, int max_iter) {
    std::vector<double> x(op.dim, 0.0), y(op.dim, 0.0);
    x[0] = 1.0;  // delta at the identity
    double rayleigh = 0.0, prev = 2.0;
    for (int it = 0; it < max_iter; ++it) {
        op.apply(x, y);
        double yy = 0.0, xy = 0.0;
        for (std::size_t i = 0; i < op.dim; ++i) {
            yy += y[i] * y[i];
            xy += x[i] * y[i];
        }
        rayleigh = xy;  // x is unit
        if (yy == 0.0) return 0.0;
        if (std::abs(rayleigh - prev) < tol) return rayleigh;
        prev = rayleigh;
        double inv = 1.0 / std::sqrt(yy);
        for (std::size_t i = 0; i < op.dim; ++i) x[i] = y[i] * inv;
    }
    throw NotConverged("power iteration: no convergence within " + std::to_string(max_iter) +
                       " iterations");
}

}  // namespace

double spectral_radius_truncated(const GroupSpec& group, const GenMeasure& mu, int r, double tol,
                                 int max_iter, std::size_t ball_cap) {
    RegularRep rep(group, r, ball_cap);
    TruncatedOperator op(rep, mu);
    return power_iteration(op, tol, max_iter);
}

// --------------------------------------------------------- kesten verdict

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Gap: return "Gap";
        case Verdict::NoGap: return "NoGap";
        default: return "Inconclusive";
    }
}

namespace {

// Fit l_i = L - c/(r_i + a)^2 through three consecutive samples and
// return L; nullopt when the fit is degenerate.
std::optional<double> limit_extrapolate(double r1, double l1, double r2, double l2, double r3,
                                        double l3) {
    double d21 = l2 - l1, d32 = l3 - l2;
    if (d21 <= 0 || d32 <= 0) return std::nullopt;
    double want = d32 / d21;
    auto f = [](double r, double a) { return 1.0 / ((r + a) * (r + a)); };
    auto ratio = [&](double a) { return (f(r2, a) - f(r3, a)) / (f(r1, a) - f(r2, a)); };
    double lo = -r1 + 1e-6, hi = 1e6;
    if ((ratio(lo) - want) * (ratio(hi) - want) > 0) return std::nullopt;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if ((ratio(lo) - want) * (ratio(mid) - want) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    double a = 0.5 * (lo + hi);
    double c = d32 / (f(r2, a) - f(r3, a));
    if (c <= 0) return std::nullopt;
    double limit = l3 + c * f(r3, a);
    if (limit < l3 || limit > 1.5) return std::nullopt;
    return limit;
}

SpectralReport finite_group_verdict(const PermGroup& group, const GenMeasure& mu) {
    SpectralReport rep;
    rep.finite_exact = true;
    RegularRep reg(GroupSpec(group), 1 << 20);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(reg.dim()),
                                              static_cast<Eigen::Index>(reg.dim()));
    for (const auto& [h, w] : mu.support) {
        double weight = w.get_d();
        for (std::size_t i = 0; i < reg.dim(); ++i) {
            auto j = reg.index_of(h * reg.ball()[i]);
            p(static_cast<Eigen::Index>(*j), static_cast<Eigen::Index>(i)) += weight;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
    const auto& ev = es.eigenvalues();
    double top = ev(ev.size() - 1);
    double second = ev.size() > 1 ? ev(ev.size() - 2) : top;
    rep.estimates.push_back(top);
    rep.plateau_value = second;
    if (second < 1.0 - 1e-8) {
        rep.verdict = Verdict::Gap;
        rep.margin = 1.0 - second;
    } else {
        rep.verdict = Verdict::NoGap;
        rep.margin = 0.0;
    }
    return rep;
}

}  // namespace

SpectralReport kesten_verdict(const GroupSpec& group, const GenMeasure& mu,
                              const std::vector<int>& radii, double theta) {
    validate_measure(group, mu);
    if (const auto* pg = std::get_if<PermGroup>(&group)) return finite_group_verdict(*pg, mu);

    SpectralReport rep;
    for (int r : radii) {
        double est = spectral_radius_truncated(group, mu, r);
        rep.radii.push_back(r);
        rep.estimates.push_back(est);
        if (est >= 1.0 - 1e-3) {
            rep.verdict = Verdict::NoGap;
            rep.plateau_value = est;
            rep.margin = 1.0 - est;
            return rep;
        }
        std::size_t n = rep.estimates.size();
        if (n >= 3) {
            auto limit = limit_extrapolate(rep.radii[n - 3], rep.estimates[n - 3], rep.radii[n - 2],
                                           rep.estimates[n - 2], rep.radii[n - 1],
                                           rep.estimates[n - 1]);
            rep.extrapolated.push_back(limit.value_or(est));
        }
        // raw plateau (finite-dimensional saturation)
        if (n >= 2 && std::abs(rep.estimates[n - 1] - rep.estimates[n - 2]) < 1e-6 &&
            rep.estimates[n - 1] <= theta) {
            rep.verdict = Verdict::Gap;
            rep.plateau_value = rep.estimates[n - 1];
            rep.margin = theta - rep.plateau_value;
            return rep;
        }
    }
    std::size_t m = rep.extrapolated.size();
    if (m >= 2 && std::abs(rep.extrapolated[m - 1] - rep.extrapolated[m - 2]) < 1e-3 &&
        rep.extrapolated[m - 1] <= theta) {
        rep.verdict = Verdict::Gap;
        rep.plateau_value = rep.extrapolated[m - 1];
        rep.margin = theta - rep.plateau_value;
        return rep;
    }
    rep.verdict = Verdict::Inconclusive;
    rep.plateau_value = rep.estimates.empty() ? 0.0 : rep.estimates.back();
    rep.margin = theta - rep.plateau_value;
    return rep;
}

// ------------------------------------------------------ invariant vectors

std::vector<Eigen::VectorXd> invariant_subspace(const RepSpec& rep, const GenMeasure& mu,
                                                double threshold) {
    int n = finite_dim(rep);
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n) - averaging_matrix(rep, mu);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
    std::vector<Eigen::VectorXd> basis;
    for (int i = 0; i < n; ++i)
        if (svd.singularValues()(i) < threshold) basis.push_back(svd.matrixV().col(i));
    return basis;
}

Eigen::VectorXd solve_D(const RepSpec& rep, const GenMeasure& mu, const Eigen::VectorXd& b,
                        double tol) {
    if (!invariant_subspace(rep, mu).empty())
        throw SingularOperator("solve_D: D_mu has nontrivial kernel (invariant vectors exist)");
    int n = finite_dim(rep);
    if (b.size() != n) throw DimensionMismatch("solve_D: rhs has wrong dimension");
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n) - averaging_matrix(rep, mu);
    // plain CG on the SPD matrix d
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = b, p = b;
    double bnorm = b.norm();
    if (bnorm == 0) return x;
    double rr = r.squaredNorm();
    for (int it = 0; it < 20 * n + 100; ++it) {
        if (std::sqrt(rr) <= tol * bnorm) return x;
        Eigen::VectorXd dp = d * p;
        double alpha = rr / p.dot(dp);
        x += alpha * p;
        r -= alpha * dp;
        double rr2 = r.squaredNorm();
        p = r + (rr2 / rr) * p;
        rr = rr2;
    }
    // fall back to a direct solve if CG stalls numerically
    Eigen::VectorXd xd = d.ldlt().solve(b);
    if ((d * xd - b).norm() <= tol * bnorm) return xd;
    throw NotConverged("solve_D: conjugate gradient did not reach tolerance");
}

// ---------------------------------------------------------- gap bound audit

GapAudit gap_bound_audit(const RepSpec& rep, const GenMeasure& mu, int samples, unsigned seed) {
    if (!invariant_subspace(rep, mu).empty())
        throw HasInvariantVector("gap_bound_audit: representation has invariant vectors");
    int n = finite_dim(rep);
    std::vector<Eigen::MatrixXd> defect_ops;
    for (const GroupElem& h : mu.generators())
        defect_ops.push_back(Eigen::MatrixXd::Identity(n, n) - rep_matrix(rep, h));

    // certified lower bound: min over the sphere of the mean squared
    // defect, which lower-bounds the max squared defect
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (const auto& op : defect_ops) q += op.transpose() * op;
    q /= static_cast<double>(defect_ops.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    double eps_cert = std::sqrt(std::max(0.0, es.eigenvalues()(0)));

    // multi-start projected subgradient descent on max_h ||(I - pi_h) v||
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    auto maxdefect = [&](const Eigen::VectorXd& v) {
        double m = 0;
        for (const auto& op : defect_ops) m = std::max(m, (op * v).norm());
        return m;
    };
    double eps_opt = std::numeric_limits<double>::infinity();
    for (int start = 0; start < 16; ++start) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = gauss(rng);
        v.normalize();
        for (int it = 0; it < 300; ++it) {
            // subgradient at the active generator
            double best = -1;
            Eigen::MatrixXd const* active = nullptr;
            for (const auto& op : defect_ops) {
                double d = (op * v).norm();
                if (d > best) {
                    best = d;
                    active = &op;
                }
            }
            if (best < 1e-14) break;
            Eigen::VectorXd grad = active->transpose() * (*active * v) / best;
            grad -= grad.dot(v) * v;  // tangent projection
            double step = 0.2 / (1.0 + 0.05 * it);
            v = (v - step * grad).normalized();
        }
        eps_opt = std::min(eps_opt, maxdefect(v));
    }

    GapAudit audit;
    audit.epsilon = eps_cert;
    audit.epsilon_opt = eps_opt;
    audit.samples = samples;
    audit.bound = 1.0 - 0.5 * eps_cert * eps_cert * mu.identity_weight().get_d() *
                            mu.min_nonidentity_weight().get_d();

    Eigen::MatrixXd p = averaging_matrix(rep, mu);
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = gauss(rng);
        v.normalize();
        audit.max_observed = std::max(audit.max_observed, (p * v).squaredNorm());
    }
    audit.passed = audit.max_observed <= audit.bound + 1e-9;
    return audit;
}

}  // namespace bohrgap
