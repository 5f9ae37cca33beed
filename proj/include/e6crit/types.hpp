#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace e6crit {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Powers of pi rounded once from their exact values.
namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double pi2 = 9.8696044010893586188344909998762;
inline constexpr double pi4 = 97.409091034002437236440332688705;
inline constexpr double pi6 = 961.38919357530443703021944365242;
inline constexpr double pi7 = 3020.2932277767920675142064930720;
inline constexpr double pi8 = 9488.5310160705740071285755039068;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double sqrt3 = std::numbers::sqrt3;
}  // namespace constants

enum class ErrorKind {
    Domain,
    PrecisionUnreachable,
    InvalidUse,
    BoundaryZero,
    NonIntegral,
    NoConvergence,
    RootCollision,
    Membership,
    ContinuationStall,
    BranchJump,
    LatticePoint,
    G2TooSmall,
    PathTooClose,
    Stiffness,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// A point of the upper half-plane.
class HalfPlanePoint {
public:
    HalfPlanePoint(double re, double im) : re_(re), im_(im) {
        if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im))
            throw Error(ErrorKind::Domain, "point is not in the upper half-plane");
    }
    explicit HalfPlanePoint(Complex z) : HalfPlanePoint(z.real(), z.imag()) {}

    double re() const noexcept { return re_; }
    double im() const noexcept { return im_; }
    Complex value() const noexcept { return {re_, im_}; }

private:
    double re_;
    double im_;
};

/// A real number or the point at infinity of the real projective line.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;
    constexpr ExtendedReal(double v) : value_(v), infinite_(false) {}
    static constexpr ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    constexpr double value() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// A complex number or the point at infinity of the Riemann sphere.
class ExtendedComplex {
public:
    ExtendedComplex() = default;
    ExtendedComplex(Complex v) : value_(v), infinite_(false) {}
    static ExtendedComplex infinity() {
        ExtendedComplex r;
        r.infinite_ = true;
        return r;
    }

    bool is_infinite() const noexcept { return infinite_; }
    Complex value() const {
        if (infinite_) throw Error(ErrorKind::InvalidUse, "value of the point at infinity");
        return value_;
    }

private:
    Complex value_{};
    bool infinite_ = false;
};

enum class Half { Left, On, Right };

inline Half half_of(Complex tau, double tol = 0.0) {
    const double d = tau.real() - 0.5;
    if (d < -tol) return Half::Left;
    if (d > tol) return Half::Right;
    return Half::On;
}

const char* to_string(Half h) noexcept;

}  // namespace e6crit
