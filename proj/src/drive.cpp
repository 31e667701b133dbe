#include "floqent/drive.hpp"

#include <cmath>

namespace floqent {

namespace {
constexpr double kPruneTol = 0.0;  // exact zeros only; callers may pass tiny coefficients deliberately
}

bool PeriodicDrive::half_period_antisymmetric() const {
    if (kind == Kind::delta_kick) return false;
    for (const auto& [k, c] : coeffs)
        if (k % 2 == 0 && std::abs(c) > 1e-14) return false;
    return true;
}

double PeriodicDrive::value(double t) const {
    switch (kind) {
        case Kind::monochromatic:
            return amplitude * std::cos(omega * t);
        case Kind::bichromatic:
            return amplitude * std::cos(omega * t) + amplitude_2 * std::cos(2.0 * omega * t);
        case Kind::sawtooth: {
            const double x = t / period();
            return amplitude * (x - std::floor(x) - 0.5);
        }
        case Kind::delta_kick:
            throw std::domain_error("PeriodicDrive::value: delta-kick train has no pointwise amplitude");
        case Kind::custom: {
            Complex acc = 0.0;
            for (const auto& [k, c] : coeffs) acc += c * std::exp(-kI * double(k) * omega * t);
            return acc.real();
        }
    }
    return 0.0;
}

double PeriodicDrive::amplitude_sum() const {
    if (kind == Kind::delta_kick) return kick_area / period();
    double s = 0.0;
    for (const auto& [k, c] : coeffs)
        if (k != 0) s += std::abs(c);
    return s;
}

int PeriodicDrive::max_harmonic() const {
    int m = 0;
    for (const auto& [k, c] : coeffs) m = std::max(m, std::abs(k));
    return m;
}

void PeriodicDrive::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("PeriodicDrive: omega must be positive");
    for (const auto& [k, c] : coeffs) {
        const auto it = coeffs.find(-k);
        const Complex mirror = it == coeffs.end() ? Complex{0.0, 0.0} : it->second;
        if (std::abs(mirror - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c)))
            throw std::invalid_argument("PeriodicDrive: coefficients must satisfy c_{-k} = conj(c_k)");
    }
}

namespace {

PeriodicDrive base(PeriodicDrive::Kind kind, double omega) {
    PeriodicDrive d;
    d.kind = kind;
    d.omega = omega;
    if (!(omega > 0.0)) throw std::invalid_argument("PeriodicDrive: omega must be positive");
    return d;
}

}  // namespace

PeriodicDrive PeriodicDrive::monochromatic(double F, double omega) {
    PeriodicDrive d = base(Kind::monochromatic, omega);
    d.amplitude = F;
    if (std::abs(F) > kPruneTol) {
        d.coeffs[1] = F / 2.0;
        d.coeffs[-1] = F / 2.0;
    }
    return d;
}

PeriodicDrive PeriodicDrive::bichromatic(double F, double F_prime, double omega) {
    PeriodicDrive d = base(Kind::bichromatic, omega);
    d.amplitude = F;
    d.amplitude_2 = F_prime;
    if (std::abs(F) > kPruneTol) {
        d.coeffs[1] = F / 2.0;
        d.coeffs[-1] = F / 2.0;
    }
    if (std::abs(F_prime) > kPruneTol) {
        d.coeffs[2] = F_prime / 2.0;
        d.coeffs[-2] = F_prime / 2.0;
    }
    return d;
}

PeriodicDrive PeriodicDrive::sawtooth(double F, double omega, int harmonics) {
    if (harmonics < 1) throw std::invalid_argument("PeriodicDrive::sawtooth: harmonics must be >= 1");
    PeriodicDrive d = base(Kind::sawtooth, omega);
    d.amplitude = F;
    if (std::abs(F) > kPruneTol) {
        // f(t) = F ((t/T mod 1) - 1/2)  =>  c_k = -i F / (2 pi k)
        for (int k = 1; k <= harmonics; ++k) {
            const Complex c = Complex{0.0, -F / (kTwoPi * k)};
            d.coeffs[k] = c;
            d.coeffs[-k] = std::conj(c);
        }
    }
    return d;
}

PeriodicDrive PeriodicDrive::delta_kick(double F, double omega) {
    PeriodicDrive d = base(Kind::delta_kick, omega);
    d.amplitude = F;
    d.kick_area = F * d.period();
    return d;
}

PeriodicDrive PeriodicDrive::custom(std::map<int, Complex> coeffs, double omega) {
    PeriodicDrive d = base(Kind::custom, omega);
    coeffs.erase(0);  // constant offsets belong in the static Hamiltonian
    d.coeffs = std::move(coeffs);
    d.validate();
    double amp = 0.0;
    for (const auto& [k, c] : d.coeffs) amp += std::abs(c);
    d.amplitude = amp;
    return d;
}

PeriodicDrive::Kind PeriodicDrive::kind_from_string(const std::string& name) {
    if (name == "monochromatic") return Kind::monochromatic;
    if (name == "bichromatic") return Kind::bichromatic;
    if (name == "sawtooth") return Kind::sawtooth;
    if (name == "delta_kick") return Kind::delta_kick;
    if (name == "custom") return Kind::custom;
    throw std::invalid_argument("unknown drive kind: " + name);
}

std::string PeriodicDrive::kind_to_string(Kind kind) {
    switch (kind) {
        case Kind::monochromatic: return "monochromatic";
        case Kind::bichromatic: return "bichromatic";
        case Kind::sawtooth: return "sawtooth";
        case Kind::delta_kick: return "delta_kick";
        case Kind::custom: return "custom";
    }
    return "?";
}

}  // namespace floqent
