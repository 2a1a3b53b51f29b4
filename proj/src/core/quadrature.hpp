#ifndef LGPOLY_QUADRATURE_HPP
#define LGPOLY_QUADRATURE_HPP

#include <vector>

namespace lgp::quad {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre on [-1, 1]; nodes cached per m.
const Rule& gauss_legendre(int m);

// Gauss-Legendre mapped to [a, b].
Rule gauss_legendre_on(int m, double a, double b);

// Nodes of the Gauss-Chebyshev rule for weight 1/sqrt(1-u^2) on (-1, 1):
// integral f(u)/sqrt(1-u^2) du ~= (pi/m) sum f(x_k).
Rule chebyshev1(int m);

// Nodes/weights for weight sqrt(1-u^2):
// integral f(u) sqrt(1-u^2) du ~= sum w_k f(x_k).
Rule chebyshev2(int m);

// Composite Gauss-Legendre over given panel edges.
Rule composite(const std::vector<double>& edges, int m_per_panel);

// One panel [a, b] with the exponential map y = a + (b-a)(e^{k t}-1)/(e^k-1),
// t in [0, 1]; concentrates nodes near a.
Rule exp_mapped_panel(double a, double b, int m, double k = 4.0);

} // namespace lgp::quad

#endif
