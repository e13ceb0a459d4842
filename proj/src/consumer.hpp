#pragma once

#include "numerics.hpp"

namespace ratekit {

enum class UtilityKind { Log, ConstantIes };

// One-parameter family of per-period utilities, indexed by the
// intertemporal elasticity of substitution sigma. Log is exactly
// ConstantIes with sigma = 1; marginal utility is u'(c) = c^(-1/sigma).
struct UtilityFamily {
    UtilityKind kind = UtilityKind::Log;
    double ies_sigma = 1.0;

    static UtilityFamily log_utility() { return {UtilityKind::Log, 1.0}; }
    static UtilityFamily constant_ies(double sigma) { return {UtilityKind::ConstantIes, sigma}; }

    double sigma() const { return kind == UtilityKind::Log ? 1.0 : ies_sigma; }
    double marginal(double c) const;
    double value(double c) const;
    void validate() const;
};

struct Preferences {
    double rho = 0.0; // time-preference rate
    UtilityFamily utility;

    double beta() const { return 1.0 / (1.0 + rho); }
    void validate() const;
};

struct Endowment {
    double m1 = 0.0;
    double m2 = 0.0;
    void validate() const;
};

// savings = m1 - c1; negative for a borrower.
struct Allocation {
    double c1 = 0.0;
    double c2 = 0.0;
    double savings = 0.0;
};

// Response of period-1 consumption to the interest rate, split into the
// compensated (substitution) part and the endowment-income part
// (m1 - c1) * dc1/dW, with the lump-sum wealth transfer delivered in the
// second period. Under that convention total = substitution + income is an
// exact identity.
struct SlutskyDecomposition {
    double total = 0.0;
    double substitution = 0.0;
    double income = 0.0;
};

// Lifetime wealth m1 + m2 / (1 + r).
double wealth(const Endowment& endow, double r);

// Solves u'(c1) = beta (1+r) u'(c2) on the budget line c1 + c2/(1+r) = W by
// root finding on the Euler residual in c1.
Allocation solve_consumption(const Preferences& prefs, const Endowment& endow, double r);

// Independent algebraic route: c1 = W / (1 + beta^sigma (1+r)^(sigma-1)).
double consumption_closed_form(const Preferences& prefs, double lifetime_wealth, double r);

SlutskyDecomposition slutsky_decompose(const Preferences& prefs, const Endowment& endow, double r);

// ds/dr = -(total dc1/dr).
double savings_response(const Preferences& prefs, const Endowment& endow, double r);

} // namespace ratekit
