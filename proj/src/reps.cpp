#include "bohrgap/reps.hpp"

#include <cmath>
#include <sstream>

namespace bohrgap {

double norm(const VecF& v) { return std::sqrt(v.norm_sq()); }
double norm(const VecQ& v) { return std::sqrt(v.norm_sq().get_d()); }

VecF to_float(const VecQ& v) {
    VecF r;
    for (const auto& [k, q] : v.entries()) r.set(k, q.get_d());
    return r;
}

// ------------------------------------------------------------- RegularRep

RegularRep::RegularRep(GroupSpec spec, int radius, std::size_t cap)
    : spec_(std::move(spec)), radius_(radius) {
    ball_ = cayley_ball(spec_, standard_generators(spec_), radius, cap);
    for (std::size_t i = 0; i < ball_.size(); ++i) index_[ball_[i]] = i;
    finite_saturated_ = std::holds_alternative<PermGroup>(spec_);
}

bool RegularRep::in_ball(const GroupElem& g) const {
    if (!finite_saturated_) return g.length() <= radius_;
    return index_.count(g) > 0;
}

std::optional<std::size_t> RegularRep::index_of(const GroupElem& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

template <class S>
SparseVec<S> regular_apply(const RegularRep& rep, const GroupElem& g, const SparseVec<S>& v) {
    SparseVec<S> r;
    for (const auto& [label, coeff] : v.entries()) {
        GroupElem moved = g * label;
        if (rep.in_ball(moved)) r.add(moved, coeff);
    }
    return r;
}

}  // namespace

VecF apply_g(const RegularRep& rep, const GroupElem& g, const VecF& v) {
    return regular_apply(rep, g, v);
}
VecQ apply_g(const RegularRep& rep, const GroupElem& g, const VecQ& v) {
    return regular_apply(rep, g, v);
}

// -------------------------------------------------------------- MatrixRep

MatrixRep::MatrixRep(GroupSpec spec, int dim) : spec_(std::move(spec)), dim_(dim) {}

void MatrixRep::set_image(const GroupElem& g, const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != dim_ || m.cols() != dim_)
        throw DimensionMismatch("MatrixRep: image has wrong shape");
    if ((m.transpose() * m - Eigen::MatrixXd::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > tol)
        throw NotOrthogonal("MatrixRep: generator image is not orthogonal");
    images_[g] = m;
    images_[g.inverse()] = m.transpose();
}

Eigen::MatrixXd MatrixRep::image(const GroupElem& g) const {
    if (g.is_identity()) return Eigen::MatrixXd::Identity(dim_, dim_);
    auto it = images_.find(g);
    if (it != images_.end()) return it->second;
    // Z = ZPow(1): integer powers of the single generator image
    if (g.is_zvec() && g.as_zvec().size() == 1) {
        long long n = g.as_zvec()[0];
        GroupElem gen = GroupElem::zvec({1});
        auto git = images_.find(n > 0 ? gen : gen.inverse());
        if (git == images_.end()) throw UnknownGenerator("MatrixRep: no image for Z generator");
        Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(dim_, dim_);
        long long k = std::llabs(n);
        Eigen::MatrixXd base = git->second;
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }
    throw UnknownGenerator("MatrixRep: no image for " + g.to_string());
}

// ------------------------------------------------------------ ZRotationRep

ZRotationRep::ZRotationRep(IntPoly modulus, std::complex<double> root)
    : mod_(poly_normalize(modulus)), root_(root) {
    if (mod_.degree() < 1) throw Error("ZRotationRep: modulus must have degree >= 1");
}

Eigen::MatrixXd ZRotationRep::rotation2() const {
    Eigen::MatrixXd m(2, 2);
    m << root_.real(), -root_.imag(), root_.imag(), root_.real();
    return m;
}

NumberFieldElem ZRotationRep::apply(long n, const NumberFieldElem& x) const {
    if (x.modulus() != mod_) throw DimensionMismatch("ZRotationRep: modulus mismatch");
    return NumberFieldElem::generator(mod_).pow(n) * x;
}

// ------------------------------------------------------------ DirectSumRep

DirectSumRep::DirectSumRep(std::vector<RepSpec> parts) : parts_(std::move(parts)), dim_(0) {
    for (const RepSpec& p : parts_) dim_ += finite_dim(p);
}

int finite_dim(const RepSpec& rep) {
    if (const auto* m = std::get_if<MatrixRep>(&rep)) return m->dim();
    if (std::holds_alternative<ZRotationRep>(rep)) return 2;
    if (const auto* d = std::get_if<std::shared_ptr<DirectSumRep>>(&rep)) return (*d)->dim();
    throw DimensionMismatch("finite_dim: regular representation is not finite-dimensional");
}

Eigen::MatrixXd rep_matrix(const RepSpec& rep, const GroupElem& g) {
    if (const auto* m = std::get_if<MatrixRep>(&rep)) return m->image(g);
    if (const auto* z = std::get_if<ZRotationRep>(&rep)) {
        if (!g.is_zvec() || g.as_zvec().size() != 1)
            throw UnknownGenerator("ZRotationRep: expects elements of Z");
        long long n = g.as_zvec()[0];
        Eigen::MatrixXd r = z->rotation2();
        Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(2, 2);
        Eigen::MatrixXd base = n >= 0 ? r : Eigen::MatrixXd(r.transpose());
        long long k = std::llabs(n);
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }
    if (const auto* d = std::get_if<std::shared_ptr<DirectSumRep>>(&rep)) {
        int n = (*d)->dim();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
        int off = 0;
        for (const RepSpec& p : (*d)->parts()) {
            int pd = finite_dim(p);
            m.block(off, off, pd, pd) = rep_matrix(p, g);
            off += pd;
        }
        return m;
    }
    throw DimensionMismatch("rep_matrix: regular representation has no dense matrix");
}

Eigen::VectorXd apply_g(const RepSpec& rep, const GroupElem& g, const Eigen::VectorXd& v) {
    Eigen::MatrixXd m = rep_matrix(rep, g);
    if (m.cols() != v.size()) throw DimensionMismatch("apply_g: vector has wrong dimension");
    return m * v;
}

// ----------------------------------------------------------------- defect

DefectReport invariance_defect(const RegularRep& rep, const GenMeasure& mu, const VecF& v) {
    if (v.is_zero()) throw ZeroVector("invariance_defect: zero vector");
    DefectReport r;
    r.norm = norm(v);
    for (const GroupElem& h : mu.generators()) {
        double d = norm(apply_g(rep, h, v) - v);
        r.defects.emplace_back(h, d);
        r.max_defect = std::max(r.max_defect, d);
    }
    return r;
}

DefectReport invariance_defect(const RepSpec& rep, const GenMeasure& mu,
                               const Eigen::VectorXd& v) {
    if (v.norm() == 0) throw ZeroVector("invariance_defect: zero vector");
    DefectReport r;
    r.norm = v.norm();
    for (const GroupElem& h : mu.generators()) {
        double d = (apply_g(rep, h, v) - v).norm();
        r.defects.emplace_back(h, d);
        r.max_defect = std::max(r.max_defect, d);
    }
    return r;
}

// ------------------------------------------------------------ realification

Eigen::MatrixXd realify(const Eigen::MatrixXcd& u, double tol) {
    const auto n = u.rows();
    if (u.cols() != n) throw DimensionMismatch("realify: square matrix expected");
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
        throw NotUnitary("realify: input is not unitary");
    Eigen::MatrixXd m(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            double a = u(i, j).real(), b = u(i, j).imag();
            m(2 * i, 2 * j) = a;
            m(2 * i, 2 * j + 1) = -b;
            m(2 * i + 1, 2 * j) = b;
            m(2 * i + 1, 2 * j + 1) = a;
        }
    return m;
}

std::vector<std::vector<Rational>> realify_exact(const std::vector<std::vector<Rational>>& re,
                                                 const std::vector<std::vector<Rational>>& im) {
    std::size_t n = re.size();
    if (im.size() != n) throw DimensionMismatch("realify_exact: re/im shape mismatch");
    std::vector<std::vector<Rational>> m(2 * n, std::vector<Rational>(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (re[i].size() != n || im[i].size() != n)
            throw DimensionMismatch("realify_exact: ragged input");
        for (std::size_t j = 0; j < n; ++j) {
            m[2 * i][2 * j] = re[i][j];
            m[2 * i][2 * j + 1] = -im[i][j];
            m[2 * i + 1][2 * j] = im[i][j];
            m[2 * i + 1][2 * j + 1] = re[i][j];
        }
    }
    return m;
}

// ------------------------------------------------------------- sigma_eval

TorusValue sigma_eval(const VecQ& v, const VecQ& w) { return TorusValue::exact(v.inner(w)); }
TorusValue sigma_eval(const VecF& v, const VecF& w) { return TorusValue::approx(v.inner(w)); }
TorusValue sigma_eval(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
    if (v.size() != w.size()) throw DimensionMismatch("sigma_eval: dimension mismatch");
    return TorusValue::approx(v.dot(w));
}

// ---------------------------------------------------------------- file io

std::string vec_to_text(const VecF& v) {
    std::ostringstream out;
    for (const auto& [k, x] : v.entries()) out << k.to_string() << '\t' << x << '\n';
    return out.str();
}

VecF vec_from_text(const GroupSpec& spec, const std::string& text) {
    VecF v;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("vector line missing TAB: " + line);
        GroupElem g = parse_elem(spec, line.substr(0, tab));
        v.add(g, std::stod(line.substr(tab + 1)));
    }
    return v;
}

}  // namespace bohrgap
