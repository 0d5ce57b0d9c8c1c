#pragma once

// Orthogonal representation backends and vector operations: group
// actions on vectors, inner products, invariance defects, realification
// of unitary representations, and the sigma evaluation map into R/Z.

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "bohrgap/exactalg.hpp"
#include "bohrgap/groups.hpp"

namespace bohrgap {

/// Finitely supported vector over a countable basis labeled by group
/// elements. Scalar is double (float mode) or Rational (exact mode).
template <class S>
class SparseVec {
public:
    using Map = std::map<GroupElem, S>;

    SparseVec() = default;

    void set(const GroupElem& label, const S& value) {
        if (value == S(0))
            e_.erase(label);
        else
            e_[label] = value;
    }
    void add(const GroupElem& label, const S& value) {
        auto it = e_.find(label);
        if (it == e_.end()) {
            if (value != S(0)) e_[label] = value;
        } else {
            it->second += value;
            if (it->second == S(0)) e_.erase(it);
        }
    }
    S get(const GroupElem& label) const {
        auto it = e_.find(label);
        return it == e_.end() ? S(0) : it->second;
    }
    const Map& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }
    std::size_t support_size() const { return e_.size(); }

    SparseVec operator+(const SparseVec& o) const {
        SparseVec r = *this;
        for (const auto& [k, v] : o.e_) r.add(k, v);
        return r;
    }
    SparseVec operator-(const SparseVec& o) const {
        SparseVec r = *this;
        for (const auto& [k, v] : o.e_) r.add(k, S(0) - v);
        return r;
    }
    SparseVec scaled(const S& a) const {
        SparseVec r;
        if (a == S(0)) return r;
        for (const auto& [k, v] : e_) r.e_[k] = v * a;
        return r;
    }

    S inner(const SparseVec& o) const {
        // iterate the smaller support
        const Map& small = e_.size() <= o.e_.size() ? e_ : o.e_;
        const Map& big = e_.size() <= o.e_.size() ? o.e_ : e_;
        S acc(0);
        for (const auto& [k, v] : small) {
            auto it = big.find(k);
            if (it != big.end()) acc += v * it->second;
        }
        return acc;
    }
    S norm_sq() const { return inner(*this); }

private:
    Map e_;
};

using VecF = SparseVec<double>;
using VecQ = SparseVec<Rational>;

double norm(const VecF& v);
double norm(const VecQ& v);  // sqrt of the exact norm^2, as double

VecF to_float(const VecQ& v);

/// Truncated left regular representation on the Cayley ball of radius r.
/// Coefficients pushed outside the ball are dropped (Dirichlet
/// truncation), so the truncated averaging operator stays self-adjoint
/// and its top eigenvalue is monotone in r.
class RegularRep {
public:
    RegularRep(GroupSpec spec, int radius, std::size_t cap = 2000000);

    const GroupSpec& group() const { return spec_; }
    int radius() const { return radius_; }
    const std::vector<GroupElem>& ball() const { return ball_; }
    std::size_t dim() const { return ball_.size(); }
    bool in_ball(const GroupElem& g) const;
    std::optional<std::size_t> index_of(const GroupElem& g) const;

private:
    GroupSpec spec_;
    int radius_;
    std::vector<GroupElem> ball_;
    std::map<GroupElem, std::size_t> index_;
    bool finite_saturated_;  // perm groups: ball is the whole group
};

/// Finite-dimensional representation given by orthogonal generator
/// images. Images are stored per canonical group element (generators and
/// their inverses); elements of Z = ZPow(1) act through integer powers.
class MatrixRep {
public:
    MatrixRep(GroupSpec spec, int dim);

    void set_image(const GroupElem& g, const Eigen::MatrixXd& m, double tol = 1e-10);
    int dim() const { return dim_; }
    const GroupSpec& group() const { return spec_; }

    Eigen::MatrixXd image(const GroupElem& g) const;

private:
    GroupSpec spec_;
    int dim_;
    std::map<GroupElem, Eigen::MatrixXd> images_;
};

/// Irreducible Z-representation by multiplication with an algebraic unit
/// z (root of `modulus` selected numerically). Exact action: the
/// multiplication-by-x operator on Q[x]/(m); float action: the realified
/// 2x2 rotation by the numeric root.
class ZRotationRep {
public:
    ZRotationRep(IntPoly modulus, std::complex<double> root);

    const IntPoly& modulus() const { return mod_; }
    std::complex<double> root() const { return root_; }
    int field_degree() const { return mod_.degree(); }

    Eigen::MatrixXd rotation2() const;  // realified [[Re,-Im],[Im,Re]]
    NumberFieldElem apply(long n, const NumberFieldElem& x) const;  // z^n * x

private:
    IntPoly mod_;
    std::complex<double> root_;
};

class DirectSumRep;

using RepSpec = std::variant<RegularRep, MatrixRep, ZRotationRep, std::shared_ptr<DirectSumRep>>;

class DirectSumRep {
public:
    explicit DirectSumRep(std::vector<RepSpec> parts);
    const std::vector<RepSpec>& parts() const { return parts_; }
    int dim() const { return dim_; }

private:
    std::vector<RepSpec> parts_;
    int dim_;
};

/// Dimension of a finite-dimensional rep (Matrix, ZRotation float view,
/// DirectSum); throws for Regular.
int finite_dim(const RepSpec& rep);

/// Generator image of g as a dense matrix, for finite-dimensional reps.
Eigen::MatrixXd rep_matrix(const RepSpec& rep, const GroupElem& g);

// ----------------------------------------------------------- operations

VecF apply_g(const RegularRep& rep, const GroupElem& g, const VecF& v);
VecQ apply_g(const RegularRep& rep, const GroupElem& g, const VecQ& v);
Eigen::VectorXd apply_g(const RepSpec& rep, const GroupElem& g, const Eigen::VectorXd& v);

struct DefectReport {
    double norm = 0;
    std::vector<std::pair<GroupElem, double>> defects;  // ||hv - v|| per generator
    double max_defect = 0;
};

DefectReport invariance_defect(const RegularRep& rep, const GenMeasure& mu, const VecF& v);
DefectReport invariance_defect(const RepSpec& rep, const GenMeasure& mu,
                               const Eigen::VectorXd& v);

/// Realification of a complex matrix: each entry a+bi becomes the block
/// [[a,-b],[b,a]]. Input columns must be unitary within tol.
Eigen::MatrixXd realify(const Eigen::MatrixXcd& u, double tol = 1e-10);

/// Exact realification for rational complex matrices (re, im parts).
/// Result is 2d x 2d; exactly orthogonal when the input is unitary.
std::vector<std::vector<Rational>> realify_exact(const std::vector<std::vector<Rational>>& re,
                                                 const std::vector<std::vector<Rational>>& im);

TorusValue sigma_eval(const VecQ& v, const VecQ& w);
TorusValue sigma_eval(const VecF& v, const VecF& w);
TorusValue sigma_eval(const Eigen::VectorXd& v, const Eigen::VectorXd& w);

// Vector file format: lines "label<TAB>coefficient".
std::string vec_to_text(const VecF& v);
VecF vec_from_text(const GroupSpec& spec, const std::string& text);

}  // namespace bohrgap
