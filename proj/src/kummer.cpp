#include "floqent/kummer.hpp"

#include <cmath>

namespace floqent {

namespace {

bool is_nonpositive_integer(Complex b) {
    if (std::abs(b.imag()) > 0.0) return false;
    const double r = b.real();
    return r <= 0.0 && std::abs(r - std::round(r)) == 0.0;
}

constexpr int kTermBudget = 10000;

}  // namespace

Complex kummer_1f1(Complex a, Complex b, Complex z) {
    if (is_nonpositive_integer(b))
        throw std::invalid_argument("kummer_1f1: b must not be a non-positive integer");
    Complex sum = 1.0;
    Complex term = 1.0;
    int quiet = 0;
    for (int n = 0; n < kTermBudget; ++n) {
        term *= (a + double(n)) * z / ((b + double(n)) * double(n + 1));
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) {
            if (++quiet >= 3) return sum;
        } else {
            quiet = 0;
        }
    }
    throw std::runtime_error("kummer_1f1: series did not converge within the term budget");
}

LandauZenerEntries landau_zener_entries(double coupling, double slope, double t) {
    if (slope == 0.0)
        throw std::invalid_argument("landau_zener_entries: slope must be nonzero");
    const Complex kappa = kI * coupling * coupling / (2.0 * slope);
    const Complex s = kI * slope * t * t / 2.0;
    const Complex phase = std::exp(-kI * slope * t * t / 4.0);
    LandauZenerEntries e;
    e.a = phase * kummer_1f1(kappa, 0.5, s);
    e.b = kI * coupling * t * phase * kummer_1f1(0.5 + kappa, 1.5, s);
    return e;
}

Matrix landau_zener_propagator(double coupling, double slope, double t) {
    const auto e = landau_zener_entries(coupling, slope, t);
    Matrix u(2, 2);
    u << e.a, -e.b, std::conj(e.b), std::conj(e.a);
    return u;
}

}  // namespace floqent
