#include "complexfn.hpp"

#include <cmath>

#include "errors.hpp"

namespace lgp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kStirlingRe = 10.0;

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr double kLgCoef[8] = {
    1.0 / 12.0,     -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
};
// B_{2k} / (2k), k = 1..8
constexpr double kPsiCoef[8] = {
    1.0 / 12.0, -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,  -3617.0 / 8160.0,
};
// B_{2k}, k = 1..8
constexpr double kBern[8] = {
    1.0 / 6.0,  -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void check_pole(cplx z) {
    if (is_nonpositive_integer(z))
        fail(ErrorCode::pole, "log-Gamma family pole at non-positive integer");
}

// Stirling series, valid for Re z >= kStirlingRe.
cplx log_gamma_stirling(cplx z) {
    cplx lz = std::log(z);
    cplx acc = (z - 0.5) * lz - z + kHalfLog2Pi;
    cplx iz2 = 1.0 / (z * z);
    cplx t = 1.0 / z;
    for (double c : kLgCoef) {
        acc += c * t;
        t *= iz2;
    }
    return acc;
}

cplx digamma_stirling(cplx z) {
    cplx iz = 1.0 / z;
    cplx iz2 = iz * iz;
    cplx acc = std::log(z) - 0.5 * iz;
    cplx t = iz2;
    for (double c : kPsiCoef) {
        acc -= c * t;
        t *= iz2;
    }
    return acc;
}

cplx trigamma_stirling(cplx z) {
    cplx iz = 1.0 / z;
    cplx iz2 = iz * iz;
    cplx acc = iz + 0.5 * iz2;
    cplx t = iz * iz2;
    for (double c : kBern) {
        acc += c * t;
        t *= iz2;
    }
    return acc;
}

cplx tetragamma_stirling(cplx z) {
    cplx iz = 1.0 / z;
    cplx iz2 = iz * iz;
    cplx acc = -iz2 - iz2 * iz;
    cplx t = iz2 * iz2;
    double k2 = 3.0;
    for (double c : kBern) {
        acc -= k2 * c * t;
        t *= iz2;
        k2 += 2.0;
    }
    return acc;
}

// log sin(pi z) for Im z >= 0, chosen so that the reflection formula below
// yields the branch of log-Gamma that is continuous off (-infinity, 0].
cplx log_sin_pi_upper(cplx z) {
    const cplx i(0.0, 1.0);
    cplx w = std::exp(2.0 * kPi * i * z); // |w| <= 1 in the upper half plane
    return -i * kPi * z + i * kPi / 2.0 - std::log(2.0) + std::log(1.0 - w);
}

// cot(pi z), overflow-free for large |Im z|.
cplx cot_pi(cplx z) {
    const cplx i(0.0, 1.0);
    if (z.imag() > 0.0) {
        cplx w = std::exp(2.0 * kPi * i * z);
        return i * (w + 1.0) / (w - 1.0);
    }
    if (z.imag() < 0.0) return std::conj(cot_pi(std::conj(z)));
    double sp = std::sin(kPi * z.real());
    return cplx(std::cos(kPi * z.real()) / sp, 0.0);
}

// 1 / sin^2(pi z), same stability treatment.
cplx inv_sin2_pi(cplx z) {
    const cplx i(0.0, 1.0);
    if (z.imag() > 0.0) {
        cplx w = std::exp(2.0 * kPi * i * z);
        cplx d = 1.0 - w;
        return -4.0 * w / (d * d);
    }
    if (z.imag() < 0.0) return std::conj(inv_sin2_pi(std::conj(z)));
    double sp = std::sin(kPi * z.real());
    return cplx(1.0 / (sp * sp), 0.0);
}

// cos(pi z) / sin^3(pi z).
cplx cos_over_sin3_pi(cplx z) {
    const cplx i(0.0, 1.0);
    if (z.imag() > 0.0) {
        cplx w = std::exp(2.0 * kPi * i * z);
        cplx d = 1.0 - w;
        return 4.0 * i * w * (w + 1.0) / (d * d * d);
    }
    if (z.imag() < 0.0) return std::conj(cos_over_sin3_pi(std::conj(z)));
    double sp = std::sin(kPi * z.real());
    return cplx(std::cos(kPi * z.real()) / (sp * sp * sp), 0.0);
}

cplx log_gamma_right(cplx z) {
    // Recurrence lift into the Stirling region; logs accumulated additively so
    // the result stays on the principal branch for Re z > 0.
    cplx shift(0.0, 0.0);
    while (z.real() < kStirlingRe) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(z) - shift;
}

cplx digamma_right(cplx z) {
    cplx shift(0.0, 0.0);
    while (z.real() < kStirlingRe) {
        shift += 1.0 / z;
        z += 1.0;
    }
    return digamma_stirling(z) - shift;
}

cplx trigamma_right(cplx z) {
    cplx shift(0.0, 0.0);
    while (z.real() < kStirlingRe) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    return trigamma_stirling(z) + shift;
}

cplx tetragamma_right(cplx z) {
    cplx shift(0.0, 0.0);
    while (z.real() < kStirlingRe) {
        shift += 2.0 / (z * z * z);
        z += 1.0;
    }
    return tetragamma_stirling(z) - shift;
}

} // namespace

cplx log_gamma(cplx z) {
    check_pole(z);
    if (z.real() >= 0.0) return log_gamma_right(z);
    if (z.imag() >= 0.0)
        return std::log(kPi) - log_sin_pi_upper(z) - log_gamma_right(1.0 - z);
    return std::conj(log_gamma(std::conj(z)));
}

cplx digamma(cplx z) {
    check_pole(z);
    if (z.real() >= 0.0) return digamma_right(z);
    return digamma_right(1.0 - z) - kPi * cot_pi(z);
}

cplx polygamma(int k, cplx z) {
    require(k == 1 || k == 2, ErrorCode::unsupported_order,
            "polygamma supports orders 1 and 2 only");
    check_pole(z);
    if (k == 1) {
        if (z.real() >= 0.0) return trigamma_right(z);
        return -trigamma_right(1.0 - z) + kPi * kPi * inv_sin2_pi(z);
    }
    if (z.real() >= 0.0) return tetragamma_right(z);
    return tetragamma_right(1.0 - z) - 2.0 * kPi * kPi * kPi * cos_over_sin3_pi(z);
}

} // namespace lgp
