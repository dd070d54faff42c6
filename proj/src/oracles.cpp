#include "magnls/oracles.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>

namespace magnls {

namespace {

double trampoline(double x, void* params) {
    auto* fn = static_cast<const std::function<double(double)>*>(params);
    return (*fn)(x);
}

struct GslQuiet {
    GslQuiet() { gsl_set_error_handler_off(); }
};

}  // namespace

double integrate_1d(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    static GslQuiet quiet;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4096);
    gsl_function gf;
    gf.function = trampoline;
    gf.params = const_cast<void*>(static_cast<const void*>(&f));
    double result = 0.0, abserr = 0.0;
    const int status =
        gsl_integration_qag(&gf, a, b, 0.0, rel_tol, 4096, GSL_INTEG_GAUSS61, ws, &result, &abserr);
    gsl_integration_workspace_free(ws);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("integrate_1d failed with GSL status " + std::to_string(status));
    return result;
}

double exact_variance(const VarianceParams& params, double t) {
    if (params.B == 0.0) throw std::invalid_argument("exact_variance: B must be nonzero");
    const double B = params.B;
    const double mean = params.f0 / (2.0 * B * B);
    return mean + (params.g0 - mean) * std::cos(2.0 * B * t) +
           params.gdot0 / (2.0 * B) * std::sin(2.0 * B * t);
}

std::optional<double> first_zero(const VarianceParams& params) {
    if (params.B == 0.0) throw std::invalid_argument("first_zero: B must be nonzero");
    const double B = std::abs(params.B);  // g(t) is even in B
    const double mean = params.f0 / (2.0 * B * B);
    const double c = params.g0 - mean;
    const double s = params.gdot0 / (2.0 * B);
    const double amp = std::hypot(c, s);
    if (amp < std::abs(mean)) return std::nullopt;
    const double phi = std::atan2(s, c);
    const double base = std::acos(std::clamp(-mean / amp, -1.0, 1.0));
    double best = std::numeric_limits<double>::infinity();
    for (double sgn : {+1.0, -1.0}) {
        const double th = phi + sgn * base;
        const double k0 = std::ceil(-th / kTwoPi - 1e-15);
        for (double k : {k0, k0 + 1.0}) {
            const double t = (th + kTwoPi * k) / (2.0 * B);
            if (t > 1e-14 && t < best) best = t;
        }
    }
    if (!std::isfinite(best)) return std::nullopt;
    return best;
}

BlowupVerdict blowup_sufficient(double f0, double gdot0, double mu, double p, int d) {
    const double critical = 1.0 + 4.0 / d;
    const double upper = d == 2 ? std::numeric_limits<double>::infinity() : 1.0 + 4.0 / (d - 2.0);
    if (!(mu < 0.0) || p < critical || p >= upper) return BlowupVerdict::Inconclusive;
    if (f0 < 0.0) return BlowupVerdict::BlowsUp;
    if (f0 == 0.0 && gdot0 < 0.0) return BlowupVerdict::BlowsUp;
    return BlowupVerdict::Inconclusive;
}

bool blowup_condition_p3_d2(double f0, double g0, double gdot0, double B) {
    return f0 * g0 < B * B * g0 * g0 + 0.25 * gdot0 * gdot0;
}

std::optional<std::pair<double, double>> b_window(double e0, double l3_exp, double rho_norm_sq) {
    if (e0 >= 0.0) throw std::invalid_argument("b_window: requires E0 < 0");
    if (!(l3_exp < 0.0)) throw std::invalid_argument("b_window: analyzed branch requires <L3> < 0");
    const double b_min = std::abs(e0 / l3_exp);
    const double b_max = 2.0 * std::sqrt(-e0) / std::sqrt(rho_norm_sq);
    if (b_min >= b_max) return std::nullopt;
    return std::make_pair(b_min, b_max);
}

bool admissible(double q, double r, int d) {
    const double inf = std::numeric_limits<double>::infinity();
    if (!(q >= 2.0)) return false;
    if (q == 2.0 && r == inf && d == 2) return false;
    if (q == inf) return r == 2.0;
    if (r == inf) return std::abs(2.0 / q - 0.5 * d) < 1e-12;
    return std::abs(2.0 / q - d * (0.5 - 1.0 / r)) < 1e-12;
}

namespace {

constexpr double kA = 400.0;  // u(rho) = c rho e^{-a rho^2}, c = 2a/sqrt(pi)

double profile(double rho) { return (2.0 * kA / std::sqrt(kPi)) * rho * std::exp(-kA * rho * rho); }

double profile_deriv(double rho) {
    return (2.0 * kA / std::sqrt(kPi)) * (1.0 - 2.0 * kA * rho * rho) * std::exp(-kA * rho * rho);
}

}  // namespace

ExampleCertificate certify_example() {
    ExampleCertificate cert;
    const double cutoff = 0.6;  // e^{-400 rho^2} is ~1e-63 by rho = 0.6
    cert.mass = kTwoPi * integrate_1d([](double r) { return profile(r) * profile(r) * r; }, 0.0, cutoff);
    cert.kinetic0 = kTwoPi * integrate_1d(
                        [](double r) {
                            const double du = profile_deriv(r);
                            const double u = profile(r);
                            return (du * du + u * u / (r * r)) * r;
                        },
                        1e-12, cutoff);
    cert.l6_power =
        kTwoPi * integrate_1d([](double r) { return std::pow(profile(r), 6.0) * r; }, 0.0, cutoff);
    cert.e0 = cert.kinetic0 - cert.l6_power / 3.0;
    cert.l3 = -cert.mass;
    cert.rho_norm_sq =
        kTwoPi * integrate_1d([](double r) { return std::pow(r * profile(r), 2.0) * r; }, 0.0, cutoff);
    cert.g0 = 0.25 * cert.rho_norm_sq;
    cert.ratio = cert.l3 * cert.l3 / cert.rho_norm_sq;
    cert.window = cert.e0 < 0.0 && cert.l3 < 0.0
                      ? b_window(cert.e0, cert.l3, cert.rho_norm_sq)
                      : std::nullopt;
    return cert;
}

ScalarField paper_example_state(const Grid& grid) {
    if (grid.dim() != 2) throw std::invalid_argument("paper_example_state: 2D only");
    // width ~ 1/sqrt(800): demand a few cells across the peak
    if (grid.spacing() > 0.01)
        throw GuardError("paper_example_state: grid spacing too coarse for the 1/sqrt(800) width");
    return sample_field(grid, [](double x1, double x2, double) {
        const double r2 = x1 * x1 + x2 * x2;
        // u(rho) e^{-i theta} = c e^{-a rho^2} (x1 - i x2)
        return (2.0 * kA / std::sqrt(kPi)) * std::exp(-kA * r2) * c64{x1, -x2};
    });
}

}  // namespace magnls
