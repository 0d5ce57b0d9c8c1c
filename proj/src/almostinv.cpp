#include "bohrgap/almostinv.hpp"

#include <cmath>

namespace bohrgap {

// ---------------------------------------------------------- orthogonalize

double ortho_defect_bound(int k, double input_defect) {
    if (k <= 1) return std::numeric_limits<double>::infinity();
    double rk = 1.0 / std::sqrt(static_cast<double>(k));
    return (input_defect + 2.0 * rk) / (1.0 - rk);
}

OrthoResult orthogonalize(const std::vector<VecF>& seq, int want) {
    OrthoResult out;
    if (seq.empty()) {
        if (want > 0) throw NoAdmissibleIndex("orthogonalize: empty input");
        return out;
    }
    for (const VecF& v : seq)
        if (std::abs(norm(v) - 1.0) > 1e-8)
            throw Error("orthogonalize: input vectors must be unit norm");

    out.vectors.push_back(seq[0]);
    int last = 0;
    while (want < 0 || static_cast<int>(out.vectors.size()) < want) {
        int k = static_cast<int>(out.vectors.size());
        // first admissible index m > max(k, last)
        int m = std::max(k, last + 1);
        bool found = false;
        for (; m < static_cast<int>(seq.size()); ++m) {
            bool ok = true;
            for (const VecF& w : out.vectors)
                if (std::abs(seq[static_cast<std::size_t>(m)].inner(w)) >= 1.0 / k) {
                    ok = false;
                    break;
                }
            if (ok) {
                found = true;
                break;
            }
        }
        if (!found) {
            if (want > 0)
                throw NoAdmissibleIndex("orthogonalize: no admissible index at step k=" +
                                        std::to_string(k));
            out.exhausted = true;
            return out;
        }
        const VecF& vm = seq[static_cast<std::size_t>(m)];
        VecF residual = vm;
        for (const VecF& w : out.vectors) {
            double c = vm.inner(w);
            residual = residual - w.scaled(c);
        }
        double rn = norm(residual);
        if (rn <= 1e-8)
            throw DegenerateProjection("orthogonalize: selected vector lies in the chosen span");
        out.vectors.push_back(residual.scaled(1.0 / rn));
        out.steps.push_back({k, m});
        last = m;
    }
    return out;
}

// --------------------------------------------------------------- witness

namespace {

Rational pow2_neg(int n) {
    Rational r(1);
    for (int i = 0; i < n; ++i) r /= 2;
    return r;
}

}  // namespace

WitnessBundleQ scale_and_witness(const std::vector<VecQ>& ortho, const std::vector<Rational>& eps,
                                 int n_terms) {
    if (ortho.size() != eps.size())
        throw DimensionMismatch("scale_and_witness: vector/defect count mismatch");
    WitnessBundleQ out;
    // invariant vector short-circuit
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (eps[i] == 0) {
            out.invariant_witness = ortho[i];
            return out;
        }
    std::size_t next = 0;
    for (int n = 1; n <= n_terms; ++n) {
        Rational cap = pow2_neg(n);
        while (next < eps.size() && eps[next] >= cap) ++next;
        if (next >= eps.size())
            throw SubsequenceExhausted("scale_and_witness: fewer than " + std::to_string(n_terms) +
                                       " vectors meet eps_n < 2^-n (stuck at n=" +
                                       std::to_string(n) + ")");
        auto sqrt_eps = rational_sqrt(eps[next]);
        if (!sqrt_eps)
            throw ExactSqrtUnavailable("scale_and_witness: eps has no rational square root: " +
                                       eps[next].get_str());
        out.epsilons.push_back(eps[next]);
        out.picked.push_back(static_cast<int>(next));
        out.scaled.push_back(ortho[next].scaled(Rational(1) / *sqrt_eps));
        // contribution eps_n w_n / 2 = sqrt(eps_n) v_n / 2
        out.combined = out.combined + ortho[next].scaled(*sqrt_eps / 2);
        ++next;
    }
    return out;
}

WitnessBundleF scale_and_witness(const std::vector<VecF>& ortho, const std::vector<double>& eps,
                                 int n_terms) {
    if (ortho.size() != eps.size())
        throw DimensionMismatch("scale_and_witness: vector/defect count mismatch");
    WitnessBundleF out;
    for (std::size_t i = 0; i < eps.size(); ++i)
        if (eps[i] == 0) {
            out.invariant_witness = ortho[i];
            return out;
        }
    std::size_t next = 0;
    for (int n = 1; n <= n_terms; ++n) {
        double cap = std::pow(2.0, -n);
        while (next < eps.size() && eps[next] >= cap) ++next;
        if (next >= eps.size())
            throw SubsequenceExhausted("scale_and_witness: fewer than " + std::to_string(n_terms) +
                                       " vectors meet eps_n < 2^-n (stuck at n=" +
                                       std::to_string(n) + ")");
        double s = std::sqrt(eps[next]);
        out.epsilons.push_back(eps[next]);
        out.picked.push_back(static_cast<int>(next));
        out.scaled.push_back(ortho[next].scaled(1.0 / s));
        out.combined = out.combined + ortho[next].scaled(s / 2.0);
        ++next;
    }
    return out;
}

// --------------------------------------------------------------- sparsify

SparsifyResult sparsify_weak_null(const std::vector<VecF>& seq,
                                  const std::vector<GroupElem>& elems, const RegularRep& rep,
                                  int n_terms) {
    if (seq.empty()) throw SelectionFailed("sparsify_weak_null: empty input");
    std::vector<GroupElem> moves;
    if (!elems.empty()) {
        // g ranges over {e, g_1, g_1^-1, ..., g_m, g_m^-1}; with m = 0
        // there are no constraints at all
        moves.push_back(identity_of(rep.group()));
        for (const GroupElem& g : elems) {
            moves.push_back(g);
            moves.push_back(g.inverse());
        }
    }
    SparsifyResult out;
    out.indices.push_back(0);
    out.selected.push_back(seq[0]);
    out.combined = seq[0].scaled(0.5);
    for (int n = 2; n <= n_terms; ++n) {
        double cap = std::pow(2.0, -static_cast<double>(n) * n);
        bool found = false;
        for (int k = out.indices.back() + 1; k < static_cast<int>(seq.size()); ++k) {
            bool ok = true;
            for (const VecF& w : out.selected) {
                for (const GroupElem& g : moves) {
                    if (std::abs(seq[static_cast<std::size_t>(k)].inner(apply_g(rep, g, w))) >=
                        cap) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) {
                out.indices.push_back(k);
                out.selected.push_back(seq[static_cast<std::size_t>(k)]);
                out.combined =
                    out.combined + seq[static_cast<std::size_t>(k)].scaled(std::pow(2.0, -n));
                found = true;
                break;
            }
        }
        if (!found)
            throw SelectionFailed("sparsify_weak_null: no admissible index at step n=" +
                                  std::to_string(n));
    }
    return out;
}

// ----------------------------------------------------------- seed families

std::vector<VecF> window_family(int count) {
    std::vector<VecF> out;
    for (int n = 1; n <= count; ++n) {
        VecF v;
        double c = 1.0 / std::sqrt(static_cast<double>(n));
        for (int i = 0; i < n; ++i) v.set(GroupElem::zvec({i}), c);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<VecF> basis_family(int count) {
    std::vector<VecF> out;
    for (int n = 0; n < count; ++n) {
        VecF v;
        v.set(GroupElem::zvec({n}), 1.0);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace bohrgap
