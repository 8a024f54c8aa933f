#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "pfcm/errors.hpp"

namespace pfcm {

// Which centroid/imputation weight to use. PaperLiteral applies the exponents
// to the scaled memberships, (a*u)^m + (b*t)^tau; ClassicPfcm scales the
// powered memberships, a*u^m + b*t^tau. The two coincide at a = b = 1.
enum class WeightForm { PaperLiteral, ClassicPfcm };

struct Parameters {
    double m = 2.0;          // fuzzifier, > 1
    double tau = 2.0;        // possibilistic exponent, > 1
    double alpha = 1.0;      // fuzzy weight, > 0
    double beta = 1.0;       // possibilistic weight, >= 0
    double epsilon = 1e-5;   // centroid convergence threshold, > 0
    std::size_t c = 2;       // cluster count, 1 < c < n
    std::size_t max_iter = 1000;
    WeightForm weight_form = WeightForm::PaperLiteral;
};

// Bounds that do not involve the data size. Violations are configuration
// errors, never silent clamps.
inline void validate_parameters(const Parameters& p) {
    if (!(p.m > 1.0)) throw ConfigError("m must exceed 1");
    if (!(p.tau > 1.0)) throw ConfigError("tau must exceed 1");
    if (!(p.alpha > 0.0)) throw ConfigError("alpha must be positive");
    if (!(p.beta >= 0.0)) throw ConfigError("beta must be non-negative");
    if (!(p.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (p.c < 2) throw ConfigError("c must exceed 1");
    if (p.max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

// Full check against a concrete dataset size.
inline void validate_parameters(const Parameters& p, std::size_t n) {
    validate_parameters(p);
    if (p.c >= n) throw ConfigError("c must be less than n (c=" + std::to_string(p.c) +
                                    ", n=" + std::to_string(n) + ")");
}

inline double combined_weight(double u, double t, const Parameters& p) {
    using std::pow;
    if (p.weight_form == WeightForm::PaperLiteral)
        return pow(p.alpha * u, p.m) + pow(p.beta * t, p.tau);
    return p.alpha * pow(u, p.m) + p.beta * pow(t, p.tau);
}

}  // namespace pfcm
