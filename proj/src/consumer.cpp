#include "consumer.hpp"

#include "errors.hpp"

#include <cmath>
#include <utility>

namespace ratekit {

void UtilityFamily::validate() const {
    if (kind == UtilityKind::ConstantIes && !(ies_sigma > 0.0))
        fail(Errc::InvalidArgument, "UtilityFamily: ies_sigma must be positive");
}

double UtilityFamily::marginal(double c) const {
    if (kind == UtilityKind::Log) return 1.0 / c;
    return std::pow(c, -1.0 / ies_sigma);
}

double UtilityFamily::value(double c) const {
    const double s = sigma();
    if (s == 1.0) return std::log(c);
    const double expo = 1.0 - 1.0 / s;
    return std::pow(c, expo) / expo;
}

void Preferences::validate() const {
    if (!(rho >= 0.0) || !std::isfinite(rho))
        fail(Errc::InvalidArgument, "Preferences: rho must be finite and nonnegative");
    utility.validate();
}

void Endowment::validate() const {
    if (!(m1 >= 0.0) || !(m2 >= 0.0))
        fail(Errc::InvalidArgument, "Endowment: incomes must be nonnegative");
    if (!(m1 + m2 > 0.0)) fail(Errc::InvalidArgument, "Endowment: total income must be positive");
}

double wealth(const Endowment& endow, double r) {
    endow.validate();
    if (!(r > -1.0)) fail(Errc::InvalidArgument, "wealth: rate must exceed -1");
    return endow.m1 + endow.m2 / (1.0 + r);
}

namespace {

// Bracket guard: marginal utility diverges at zero consumption, so the
// Euler residual changes sign strictly inside (0, W).
constexpr double kBracketMargin = 1e-12;

// Internal tolerance for the consumption solves. Derivatives of c1 are taken
// at step 1e-6, so c1 itself has to be resolved to machine level.
const Tolerance kSolveTol{1e-30, 4e-16, 400};

std::pair<double, double> solve_on_budget(const Preferences& prefs, double w, double r) {
    const double beta = prefs.beta();
    const double gross = 1.0 + r;
    const UtilityFamily& u = prefs.utility;
    auto euler_residual = [&](double c1) {
        const double c2 = (w - c1) * gross;
        return u.marginal(c1) - beta * gross * u.marginal(c2);
    };
    double c1 = find_root(euler_residual, w * kBracketMargin, w * (1.0 - kBracketMargin), kSolveTol);
    return {c1, (w - c1) * gross};
}

double lifetime_utility(const Preferences& prefs, double c1, double c2) {
    return prefs.utility.value(c1) + prefs.beta() * prefs.utility.value(c2);
}

// Wealth that restores `target` lifetime utility at rate r. Indirect utility
// is strictly increasing in wealth, so a geometric bracket expansion around
// the guess always straddles the root.
double compensated_wealth(const Preferences& prefs, double target, double guess, double r) {
    auto gap = [&](double w) {
        auto [c1, c2] = solve_on_budget(prefs, w, r);
        return lifetime_utility(prefs, c1, c2) - target;
    };
    double lo = guess * 0.5, hi = guess * 2.0;
    for (int i = 0; i < 120 && gap(lo) > 0.0; ++i) lo *= 0.5;
    for (int i = 0; i < 120 && gap(hi) < 0.0; ++i) hi *= 2.0;
    return find_root(gap, lo, hi, kSolveTol);
}

} // namespace

Allocation solve_consumption(const Preferences& prefs, const Endowment& endow, double r) {
    prefs.validate();
    const double w = wealth(endow, r);
    if (!(w > 0.0) || !std::isfinite(w))
        fail(Errc::Infeasible, "solve_consumption: lifetime wealth must be positive and finite");
    auto [c1, c2] = solve_on_budget(prefs, w, r);
    return {c1, c2, endow.m1 - c1};
}

double consumption_closed_form(const Preferences& prefs, double lifetime_wealth, double r) {
    prefs.validate();
    if (!(lifetime_wealth > 0.0))
        fail(Errc::InvalidArgument, "consumption_closed_form: wealth must be positive");
    if (!(r > -1.0)) fail(Errc::InvalidArgument, "consumption_closed_form: rate must exceed -1");
    const double s = prefs.utility.sigma();
    return lifetime_wealth / (1.0 + std::pow(prefs.beta(), s) * std::pow(1.0 + r, s - 1.0));
}

SlutskyDecomposition slutsky_decompose(const Preferences& prefs, const Endowment& endow, double r) {
    const double h = 1e-6; // absolute step for rate derivatives
    if (!(r - h > -1.0))
        fail(Errc::InvalidArgument, "slutsky_decompose: rate too close to -1 to perturb");

    const Allocation base = solve_consumption(prefs, endow, r);
    const double w0 = wealth(endow, r);
    const double u0 = lifetime_utility(prefs, base.c1, base.c2);

    auto c1_at_rate = [&](double rr) { return solve_consumption(prefs, endow, rr).c1; };
    const double total = (c1_at_rate(r + h) - c1_at_rate(r - h)) / (2.0 * h);

    auto c1_compensated = [&](double rr) {
        const double wc = compensated_wealth(prefs, u0, wealth(endow, rr), rr);
        return solve_on_budget(prefs, wc, rr).first;
    };
    const double substitution = (c1_compensated(r + h) - c1_compensated(r - h)) / (2.0 * h);

    // Lump-sum transfers arrive at the end of the horizon, so the wealth
    // derivative carries the discount back to present value; with that
    // convention total = substitution + income is an exact identity.
    const double hw = default_diff_step(w0);
    auto c1_at_wealth = [&](double ww) { return solve_on_budget(prefs, ww, r).first; };
    const double dc1_dw = (c1_at_wealth(w0 + hw) - c1_at_wealth(w0 - hw)) / (2.0 * hw);
    const double income = (endow.m1 - base.c1) * dc1_dw / (1.0 + r);

    return {total, substitution, income};
}

double savings_response(const Preferences& prefs, const Endowment& endow, double r) {
    return -slutsky_decompose(prefs, endow, r).total;
}

} // namespace ratekit
