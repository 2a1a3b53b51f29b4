#ifndef LGPOLY_COMPLEXFN_HPP
#define LGPOLY_COMPLEXFN_HPP

#include <complex>

namespace lgp {

using cplx = std::complex<double>;

// Principal-branch log-Gamma, continuous on the plane cut along (-infinity, 0].
// Stirling series for Re z >= 10, upward recurrence below, reflection for Re z < 0.
// Throws Error(pole) at non-positive integers.
cplx log_gamma(cplx z);

// Digamma psi = Gamma'/Gamma with the same domain handling as log_gamma.
cplx digamma(cplx z);

// Polygamma psi^{(k)} for k in {1, 2}. Throws Error(unsupported_order) otherwise.
cplx polygamma(int k, cplx z);

} // namespace lgp

#endif
