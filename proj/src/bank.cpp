#include "bank.hpp"

#include "errors.hpp"
#include "numerics.hpp"

#include <algorithm>
#include <cmath>

namespace ratekit {

void ReserveRule::validate() const {
    switch (kind) {
    case ReserveKind::Linear:
        if (!(ratio >= 0.0)) fail(Errc::InvalidArgument, "ReserveRule: ratio must be nonnegative");
        break;
    case ReserveKind::BinomialQuantile:
        if (!(presentation_prob >= 0.0 && presentation_prob <= 1.0))
            fail(Errc::InvalidArgument, "ReserveRule: presentation probability must be in [0,1]");
        if (!(failure_tolerance > 0.0 && failure_tolerance < 1.0))
            fail(Errc::InvalidArgument, "ReserveRule: failure tolerance must be in (0,1)");
        if (!(note_unit > 0.0)) fail(Errc::InvalidArgument, "ReserveRule: note unit must be positive");
        break;
    }
}

void BankParams::validate() const {
    if (!(kappa >= 0.0)) fail(Errc::InvalidArgument, "BankParams: kappa must be nonnegative");
    if (!(loan_size > 0.0)) fail(Errc::InvalidArgument, "BankParams: loan size must be positive");
    risk.validate();
    rule.validate();
}

double required_reserve(const ReserveRule& rule, double loan_size) {
    rule.validate();
    if (!(loan_size >= 0.0)) fail(Errc::InvalidArgument, "required_reserve: loan size must be nonnegative");
    if (loan_size == 0.0) return 0.0;

    switch (rule.kind) {
    case ReserveKind::Linear:
        return rule.ratio * loan_size;
    case ReserveKind::BinomialQuantile: {
        if (rule.presentation_prob == 0.0) return 0.0;
        const double note_count = std::floor(loan_size / rule.note_unit);
        if (note_count > 9e15)
            fail(Errc::InvalidArgument, "required_reserve: note count too large for the quantile rule");
        const long long notes = static_cast<long long>(note_count);
        const long long k =
            binomial_quantile(notes, rule.presentation_prob, 1.0 - rule.failure_tolerance);
        // any positive issue carries some redemption exposure
        return rule.note_unit * static_cast<double>(std::max<long long>(1, k));
    }
    }
    fail(Errc::Internal, "required_reserve: unknown rule kind");
}

double encumbrance_premium(double kappa, const ReserveRule& rule, double loan_size) {
    if (!(kappa >= 0.0)) fail(Errc::InvalidArgument, "encumbrance_premium: kappa must be nonnegative");
    if (!(loan_size > 0.0)) fail(Errc::InvalidArgument, "encumbrance_premium: loan size must be positive");
    if (kappa == 0.0) {
        rule.validate();
        return 0.0;
    }
    return kappa * required_reserve(rule, loan_size) / loan_size;
}

ThreeTermDecomposition lending_rate(double r_f, const BankParams& params) {
    params.validate();
    if (!std::isfinite(r_f)) fail(Errc::InvalidArgument, "lending_rate: r_f must be finite");
    ThreeTermDecomposition d;
    d.time_preference = r_f;
    d.risk_premium = risk_premium_first_order(params.risk);
    d.phi = encumbrance_premium(params.kappa, params.rule, params.loan_size);
    d.total = d.time_preference + d.risk_premium + d.phi;
    return d;
}

bool two_term_limit_check(double r_f, const BankParams& params) {
    return lending_rate(r_f, params).phi <= 1e-12;
}

} // namespace ratekit
