#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "e6crit/eisenstein.hpp"
#include "e6crit/types.hpp"

namespace e6crit {

enum class Group { SL2Z, Gamma0_2 };

const char* to_string(Group g) noexcept;

/// Element of SL(2,Z)/{+-I}, stored with c > 0, or c == 0 and d > 0.
class UnimodularMatrix {
public:
    using Int = std::int64_t;

    UnimodularMatrix() : a_(1), b_(0), c_(0), d_(1) {}
    /// Throws Error(InvalidUse) unless ad - bc == 1.
    UnimodularMatrix(Int a, Int b, Int c, Int d);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix translation(Int n) { return {1, n, 0, 1}; }

    Int a() const noexcept { return a_; }
    Int b() const noexcept { return b_; }
    Int c() const noexcept { return c_; }
    Int d() const noexcept { return d_; }

    bool is_identity() const noexcept { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
    bool in_gamma0_2() const noexcept { return c_ % 2 == 0; }

    /// Cusp parameter -d/c; infinite when c == 0.
    ExtendedReal cusp_parameter() const;

    UnimodularMatrix inverse() const { return {d_, -b_, -c_, a_}; }
    std::array<Int, 4> entries() const { return {a_, b_, c_, d_}; }

    /// Automorphy factor c tau + d.
    Complex factor(Complex tau) const {
        return static_cast<double>(c_) * tau + static_cast<double>(d_);
    }

    friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y);
    friend bool operator==(const UnimodularMatrix& x, const UnimodularMatrix& y) = default;

    std::string to_string() const;

private:
    Int a_, b_, c_, d_;
};

/// gamma_1 = (0 1; -1 1) and gamma_2 = (1 -1; 1 0): F0 = F u gamma_1(F) u gamma_2(F).
UnimodularMatrix gamma1();
UnimodularMatrix gamma2();

Complex mobius_apply(const UnimodularMatrix& g, Complex tau);
HalfPlanePoint mobius_apply(const UnimodularMatrix& g, const HalfPlanePoint& tau);

/// gamma and reduced point with gamma . reduced == input.
struct Reduction {
    UnimodularMatrix gamma;
    Complex reduced;
    /// Reduced point lies within 1e-12 of the domain boundary.
    bool near_boundary = false;
};

/// Membership tests with closed boundaries widened by tol.
bool in_F(Complex tau, double tol = 1e-12);
bool in_F0(Complex tau, double tol = 1e-12);

/// Reduction into F = {0 <= Re <= 1, |tau| >= 1, |tau - 1| >= 1}.
Reduction reduce_to_F(const HalfPlanePoint& tau);

/// Reduction into F0 = {0 <= Re <= 1, |tau - 1/2| >= 1/2}; gamma has even c.
Reduction reduce_to_F0(const HalfPlanePoint& tau);

/// Bundle at g . tau from the bundle at tau, via the weight 4/6 laws and the
/// quasi-period vector law.
EisensteinEval transform_eval(const EisensteinEval& ev, const UnimodularMatrix& g);

/// Series evaluation at any point of H: reduces into F first when Im tau is
/// below the series floor and transports the bundle back.
EisensteinEval eval_anywhere(const HalfPlanePoint& tau, const Precision& prec = {});

}  // namespace e6crit
