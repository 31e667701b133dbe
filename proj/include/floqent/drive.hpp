// drive.hpp — T-periodic scalar drive profiles, as Fourier data plus analytic class tags

#pragma once

#include "floqent/ops.hpp"

#include <map>
#include <string>

namespace floqent {

/// A real, T-periodic drive amplitude f(t) = sum_k c_k e^{-i k w t}, with
/// c_{-k} = c_k^*. Delta-kick trains carry no truncating Fourier series and
/// are represented by their kick area instead.
struct PeriodicDrive {
    enum class Kind { monochromatic, bichromatic, sawtooth, delta_kick, custom };

    Kind kind = Kind::monochromatic;
    double omega = 1.0;
    std::map<int, Complex> coeffs;  // k -> c_k, zero entries pruned, no k = 0 for the stock profiles
    double amplitude = 0.0;         // F
    double amplitude_2 = 0.0;       // F' (bichromatic only)
    double kick_area = 0.0;         // F*T (delta_kick only)

    double period() const { return kTwoPi / omega; }

    /// True iff f(t + T/2) = -f(t), equivalent to vanishing even Fourier coefficients.
    bool half_period_antisymmetric() const;

    /// Instantaneous amplitude. Exact analytic forms for the stock profiles;
    /// Fourier synthesis for custom coefficients. Undefined for delta kicks.
    double value(double t) const;

    /// sum_{k != 0} |c_k|; equals F for monochromatic and F + F' for bichromatic.
    double amplitude_sum() const;

    int max_harmonic() const;

    void validate() const;  // conjugate symmetry, positive frequency

    static PeriodicDrive monochromatic(double F, double omega);
    static PeriodicDrive bichromatic(double F, double F_prime, double omega);
    static PeriodicDrive sawtooth(double F, double omega, int harmonics = 64);
    static PeriodicDrive delta_kick(double F, double omega);
    static PeriodicDrive custom(std::map<int, Complex> coeffs, double omega);

    static Kind kind_from_string(const std::string& name);
    static std::string kind_to_string(Kind kind);
};

}  // namespace floqent
