#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace coneminq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kUnitTol = 1e-12;
inline constexpr double kAngleTol = 1e-12;

// Error hierarchy; every named precondition failure maps to one of these.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPointed : Error { using Error::Error; };
struct DegenerateCone : Error { using Error::Error; };
struct UnsupportedDim : Error { using Error::Error; };
struct OutsideDomain : Error { using Error::Error; };
struct OutsideOmega : Error { using Error::Error; };
struct InvalidDirection : Error { using Error::Error; };
struct NonPositive : Error { using Error::Error; };
struct Unbounded : Error { using Error::Error; };
struct MismatchedNormals : Error { using Error::Error; };
struct InvalidP : Error { using Error::Error; };
struct EmptyTruncation : Error { using Error::Error; };
struct ZeroMass : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct NonNegativityViolation : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct InputError : Error { using Error::Error; };

/// Unit vector with normalization enforced on construction.
class UnitVector {
  public:
    explicit UnitVector(Vec v) : v_(std::move(v)) {
        const double n = v_.norm();
        if (n <= 0.0) throw InvalidDirection("zero vector cannot be normalized");
        v_ /= n;
    }
    const Vec& vec() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }
    double dot(const Vec& o) const { return v_.dot(o); }

  private:
    Vec v_;
};

inline Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

inline Vec normalized(const Vec& v) {
    const double n = v.norm();
    if (n <= 0.0) throw InvalidDirection("zero vector cannot be normalized");
    return v / n;
}

inline double angle_between(const Vec& a, const Vec& b) {
    const double c = a.dot(b) / (a.norm() * b.norm());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

/// Compensated (Kahan) accumulator; summation order is part of the output
/// contract, so all reductions go through this in fixed index order.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace coneminq
