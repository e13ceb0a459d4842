#pragma once

#include <cstdint>

namespace ratekit {

struct DefaultRisk {
    double pi = 0.0;     // default probability
    double lambda = 0.0; // loss given default
    void validate() const;
};

// Exact one-period risky rate from equality of expected gross returns:
// (1 + r_tilde)(1 - pi*lambda) = 1 + r_f. variance_premium is an additive
// hook for a risk-averse lender's extra compensation; it defaults to zero
// and no functional form is supplied here.
double risky_rate_exact(double r_f, const DefaultRisk& risk, double variance_premium = 0.0);

// First-order spread pi*lambda, the expected per-unit loss from default.
double risk_premium_first_order(const DefaultRisk& risk);

// (1 - pi)(1 + r_tilde) + pi (1 + r_tilde)(1 - lambda).
double expected_gross_return(double r_tilde, const DefaultRisk& risk);

// Mean realized gross return over n seeded Bernoulli(pi) default draws.
// Draw i is a pure function of (seed, i), so the result is independent of
// evaluation order and reproducible bit-for-bit.
double simulate_default_returns(double r_tilde, const DefaultRisk& risk, std::uint64_t n,
                                std::uint64_t seed);

} // namespace ratekit
