#pragma once

#include "credit.hpp"

namespace ratekit {

enum class ReserveKind { Linear, BinomialQuantile };

// Required-reserve rule r*(L): the redemption reserve a note-issuing bank
// holds against a loan (= note issue) of size L.
//
// Linear:           r*(L) = ratio * L.
// BinomialQuantile: notes are presented independently with probability q
//   over the life of the loan; the reserve covers redemption demand except
//   with probability at most failure_tolerance, i.e. the (1 - eps) quantile
//   of Binomial(floor(L / note_unit), q), in note units. A positive issue
//   with q > 0 always encumbers at least one note unit.
struct ReserveRule {
    ReserveKind kind = ReserveKind::Linear;
    double ratio = 0.0;
    double presentation_prob = 0.0;
    double failure_tolerance = 0.01;
    double note_unit = 1.0;

    static ReserveRule linear(double ratio) {
        ReserveRule r;
        r.kind = ReserveKind::Linear;
        r.ratio = ratio;
        return r;
    }
    static ReserveRule binomial_quantile(double q, double eps = 0.01, double note_unit = 1.0) {
        ReserveRule r;
        r.kind = ReserveKind::BinomialQuantile;
        r.presentation_prob = q;
        r.failure_tolerance = eps;
        r.note_unit = note_unit;
        return r;
    }
    void validate() const;
};

struct BankParams {
    double kappa = 0.0;     // opportunity cost per unit of encumbered reserve per period
    double loan_size = 0.0; // L; notes issued N = L
    DefaultRisk risk;
    ReserveRule rule;
    void validate() const;
};

// r_bank = time_preference + risk_premium + phi. total is constructed as
// the exact sum of the three components, never measured separately.
struct ThreeTermDecomposition {
    double time_preference = 0.0;
    double risk_premium = 0.0;
    double phi = 0.0;
    double total = 0.0;
};

double required_reserve(const ReserveRule& rule, double loan_size);

// phi = kappa * r*(L) / L, the per-unit opportunity cost of the reserve
// property encumbered for the life of the loan. Takes no preference input:
// the premium is a balance-sheet cost, independent of the bank's own
// intertemporal substitution.
double encumbrance_premium(double kappa, const ReserveRule& rule, double loan_size);

// Lending rate of a money-issuing bank, r_f + pi*lambda + phi, with the
// first-order risk premium as in the additive per-unit cost identity.
ThreeTermDecomposition lending_rate(double r_f, const BankParams& params);

// True iff phi vanishes (within 1e-12) so the two-term decomposition of
// ordinary credit obtains: no real redemption (kappa = 0) or no redemption
// demand.
bool two_term_limit_check(double r_f, const BankParams& params);

} // namespace ratekit
