#include "lattice_sum.hpp"

#include <cmath>

namespace oracle {

namespace {

using cd = std::complex<double>;

// sum_{m > N} (x + m)^{-k}, by Euler-Maclaurin from N.
cd tail_plus(cd x, int N, int k) {
    const cd a = x + static_cast<double>(N);
    const double kk = k;
    const cd f = std::pow(a, -kk);
    const cd f1 = -kk * std::pow(a, -kk - 1);
    const cd f3 = -kk * (kk + 1) * (kk + 2) * std::pow(a, -kk - 3);
    const cd f5 = -kk * (kk + 1) * (kk + 2) * (kk + 3) * (kk + 4) * std::pow(a, -kk - 5);
    const cd integral = std::pow(a, 1.0 - kk) / (kk - 1.0);
    return integral - 0.5 * f - f1 / 12.0 + f3 / 720.0 - f5 / 30240.0;
}

// sum over all m (m != 0 when n == 0) of (n tau + m)^{-k}.
cd row_sum(cd w, bool skip_zero, int N, int k) {
    cd s = 0.0;
    for (int m = N; m >= 1; --m) {
        s += std::pow(w + static_cast<double>(m), -k);
        s += std::pow(w - static_cast<double>(m), -k);
    }
    if (!skip_zero) s += std::pow(w, -k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s += tail_plus(w, N, k) + sign * tail_plus(-w, N, k);
    return s;
}

}  // namespace

LatticeInvariants lattice_invariants(cd tau, int bound) {
    cd G2 = 0.0, G4 = 0.0, G6 = 0.0;
    for (int n = -bound; n <= bound; ++n) {
        const cd w = static_cast<double>(n) * tau;
        G2 += row_sum(w, n == 0, bound, 2);
        G4 += row_sum(w, n == 0, bound, 4);
        G6 += row_sum(w, n == 0, bound, 6);
    }
    return {60.0 * G4, 140.0 * G6, G2};
}

}  // namespace oracle
