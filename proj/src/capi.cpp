#include "ratekit/ratekit.h"

#include "bank.hpp"
#include "cliometrics.hpp"
#include "consumer.hpp"
#include "credit.hpp"
#include "errors.hpp"
#include "portfolio.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace ratekit;

struct ratekit_panel {
    PanelDataset data;
};

namespace {

thread_local std::string g_last_error;

ratekit_status to_status(Errc code) {
    switch (code) {
    case Errc::Ok: return RATEKIT_OK;
    case Errc::InvalidArgument: return RATEKIT_ERR_INVALID_ARGUMENT;
    case Errc::Bracket: return RATEKIT_ERR_BRACKET;
    case Errc::NoConvergence: return RATEKIT_ERR_NO_CONVERGENCE;
    case Errc::Infeasible: return RATEKIT_ERR_INFEASIBLE;
    case Errc::Unpriceable: return RATEKIT_ERR_UNPRICEABLE;
    case Errc::BadConfig: return RATEKIT_ERR_BAD_CONFIG;
    case Errc::Io: return RATEKIT_ERR_IO;
    case Errc::Internal: return RATEKIT_ERR_INTERNAL;
    }
    return RATEKIT_ERR_INTERNAL;
}

ratekit_status fail_status(ratekit_status status, const char* message) {
    g_last_error = message;
    return status;
}

// Runs a core call, translating exceptions into status codes.
template <typename Fn>
ratekit_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return RATEKIT_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RATEKIT_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RATEKIT_ERR_INTERNAL;
    }
}

Preferences to_prefs(const ratekit_preferences& p) {
    Preferences prefs;
    prefs.rho = p.rho;
    switch (p.utility_kind) {
    case RATEKIT_UTILITY_LOG:
        prefs.utility = UtilityFamily::log_utility();
        break;
    case RATEKIT_UTILITY_CONSTANT_IES:
        prefs.utility = UtilityFamily::constant_ies(p.ies_sigma);
        break;
    default:
        fail(Errc::InvalidArgument, "unknown utility kind");
    }
    return prefs;
}

Endowment to_endow(const ratekit_endowment& e) { return Endowment{e.m1, e.m2}; }

DefaultRisk to_risk(const ratekit_default_risk& r) { return DefaultRisk{r.pi, r.lambda}; }

ReserveRule to_rule(const ratekit_reserve_rule& r) {
    ReserveRule rule;
    switch (r.kind) {
    case RATEKIT_RESERVE_LINEAR:
        rule = ReserveRule::linear(r.ratio);
        break;
    case RATEKIT_RESERVE_BINOMIAL_QUANTILE:
        rule = ReserveRule::binomial_quantile(r.presentation_prob, r.failure_tolerance, r.note_unit);
        break;
    default:
        fail(Errc::InvalidArgument, "unknown reserve rule kind");
    }
    return rule;
}

Regime to_regime(int regime) {
    switch (regime) {
    case RATEKIT_REGIME_FREE_BANKING: return Regime::FreeBanking;
    case RATEKIT_REGIME_FIAT_NO_REDEMPTION: return Regime::FiatNoRedemption;
    case RATEKIT_REGIME_FIAT_BACKSTOP_COLLINEAR: return Regime::FiatBackstopCollinear;
    default: fail(Errc::BadConfig, "unknown regime");
    }
}

RegimeConfig to_config(const ratekit_regime_config& c) {
    RegimeConfig cfg;
    cfg.regime = to_regime(c.regime);
    cfg.n_banks = c.n_banks;
    cfg.n_periods = c.n_periods;
    cfg.r_f = c.r_f;
    cfg.kappa_true = c.kappa_true;
    cfg.pi_lo = c.pi_lo;
    cfg.pi_hi = c.pi_hi;
    cfg.lambda_lo = c.lambda_lo;
    cfg.lambda_hi = c.lambda_hi;
    cfg.q_lo = c.q_lo;
    cfg.q_hi = c.q_hi;
    cfg.noise_sd = c.noise_sd;
    cfg.seed = c.seed;
    cfg.loan_size = c.loan_size;
    cfg.failure_tolerance = c.failure_tolerance;
    return cfg;
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) fail(Errc::Internal, "out of memory");
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

constexpr const char* kNullArgument = "null argument";

} // namespace

extern "C" {

const char* ratekit_version(void) { return "0.1.0"; }

const char* ratekit_status_name(ratekit_status status) {
    switch (status) {
    case RATEKIT_OK: return "ok";
    case RATEKIT_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RATEKIT_ERR_BRACKET: return "bracket";
    case RATEKIT_ERR_NO_CONVERGENCE: return "no_convergence";
    case RATEKIT_ERR_INFEASIBLE: return "infeasible";
    case RATEKIT_ERR_UNPRICEABLE: return "unpriceable";
    case RATEKIT_ERR_BAD_CONFIG: return "bad_config";
    case RATEKIT_ERR_IO: return "io";
    case RATEKIT_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* ratekit_last_error(void) { return g_last_error.c_str(); }

ratekit_status ratekit_wealth(const ratekit_endowment* endow, double r, double* out) {
    if (!endow || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = wealth(to_endow(*endow), r); });
}

ratekit_status ratekit_solve_consumption(const ratekit_preferences* prefs,
                                         const ratekit_endowment* endow, double r,
                                         ratekit_allocation* out) {
    if (!prefs || !endow || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        const Allocation a = solve_consumption(to_prefs(*prefs), to_endow(*endow), r);
        *out = {a.c1, a.c2, a.savings};
    });
}

ratekit_status ratekit_slutsky_decompose(const ratekit_preferences* prefs,
                                         const ratekit_endowment* endow, double r,
                                         ratekit_slutsky* out) {
    if (!prefs || !endow || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        const SlutskyDecomposition d = slutsky_decompose(to_prefs(*prefs), to_endow(*endow), r);
        *out = {d.total, d.substitution, d.income};
    });
}

ratekit_status ratekit_savings_response(const ratekit_preferences* prefs,
                                        const ratekit_endowment* endow, double r, double* out) {
    if (!prefs || !endow || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = savings_response(to_prefs(*prefs), to_endow(*endow), r); });
}

ratekit_status ratekit_solve_portfolio(const ratekit_preferences* prefs,
                                       const ratekit_endowment* endow, double r,
                                       ratekit_portfolio_allocation* out) {
    if (!prefs || !endow || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        const PortfolioAllocation a = solve_portfolio(to_prefs(*prefs), to_endow(*endow), r);
        *out = {a.c1, a.c2, a.cash, a.bonds, a.kkt_mu, a.kkt_nu};
    });
}

ratekit_status ratekit_cash_dominated(double r, int* out) {
    if (!out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = cash_dominated(r) ? 1 : 0; });
}

ratekit_status ratekit_risky_rate_exact(double r_f, const ratekit_default_risk* risk, double* out) {
    if (!risk || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = risky_rate_exact(r_f, to_risk(*risk)); });
}

ratekit_status ratekit_risk_premium_first_order(const ratekit_default_risk* risk, double* out) {
    if (!risk || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = risk_premium_first_order(to_risk(*risk)); });
}

ratekit_status ratekit_expected_gross_return(double r_tilde, const ratekit_default_risk* risk,
                                             double* out) {
    if (!risk || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = expected_gross_return(r_tilde, to_risk(*risk)); });
}

ratekit_status ratekit_simulate_default_returns(double r_tilde, const ratekit_default_risk* risk,
                                                uint64_t n, uint64_t seed, double* out) {
    if (!risk || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = simulate_default_returns(r_tilde, to_risk(*risk), n, seed); });
}

ratekit_status ratekit_required_reserve(const ratekit_reserve_rule* rule, double loan_size,
                                        double* out) {
    if (!rule || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = required_reserve(to_rule(*rule), loan_size); });
}

ratekit_status ratekit_encumbrance_premium(double kappa, const ratekit_reserve_rule* rule,
                                           double loan_size, double* out) {
    if (!rule || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = encumbrance_premium(kappa, to_rule(*rule), loan_size); });
}

ratekit_status ratekit_lending_rate(double r_f, const ratekit_bank_params* params,
                                    ratekit_rate_decomposition* out) {
    if (!params || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        BankParams bp{params->kappa, params->loan_size, to_risk(params->risk), to_rule(params->rule)};
        const ThreeTermDecomposition d = lending_rate(r_f, bp);
        *out = {d.time_preference, d.risk_premium, d.phi, d.total};
    });
}

ratekit_status ratekit_two_term_limit_check(double r_f, const ratekit_bank_params* params,
                                            int* out) {
    if (!params || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        BankParams bp{params->kappa, params->loan_size, to_risk(params->risk), to_rule(params->rule)};
        *out = two_term_limit_check(r_f, bp) ? 1 : 0;
    });
}

void ratekit_regime_config_init(ratekit_regime_config* config) {
    if (!config) return;
    const RegimeConfig d;
    config->regime = RATEKIT_REGIME_FREE_BANKING;
    config->n_banks = d.n_banks;
    config->n_periods = d.n_periods;
    config->r_f = d.r_f;
    config->kappa_true = d.kappa_true;
    config->pi_lo = d.pi_lo;
    config->pi_hi = d.pi_hi;
    config->lambda_lo = d.lambda_lo;
    config->lambda_hi = d.lambda_hi;
    config->q_lo = d.q_lo;
    config->q_hi = d.q_hi;
    config->noise_sd = d.noise_sd;
    config->seed = d.seed;
    config->loan_size = d.loan_size;
    config->failure_tolerance = d.failure_tolerance;
}

ratekit_status ratekit_generate_panel(const ratekit_regime_config* config, ratekit_panel** out) {
    if (!config || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = new ratekit_panel{generate_panel(to_config(*config))}; });
}

void ratekit_panel_free(ratekit_panel* panel) { delete panel; }

size_t ratekit_panel_row_count(const ratekit_panel* panel) {
    return panel ? panel->data.rows.size() : 0;
}

ratekit_status ratekit_panel_get_row(const ratekit_panel* panel, size_t index,
                                     ratekit_panel_row* out) {
    if (!panel || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    if (index >= panel->data.rows.size())
        return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, "row index out of range");
    const PanelRow& row = panel->data.rows[index];
    out->bank_id = row.bank_id;
    out->period = row.period;
    out->observed_spread = row.observed_spread;
    out->default_loss = row.default_loss;
    out->redemption_proxy = row.redemption_proxy;
    out->regime = static_cast<int>(row.regime);
    return RATEKIT_OK;
}

ratekit_status ratekit_panel_to_csv(const ratekit_panel* panel, char** out) {
    if (!panel || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = copy_string(panel_to_csv(panel->data)); });
}

ratekit_status ratekit_panel_from_csv(const char* text, ratekit_panel** out) {
    if (!text || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] { *out = new ratekit_panel{panel_from_csv(text)}; });
}

ratekit_status ratekit_estimate(const ratekit_panel* panel, ratekit_identification_report* out) {
    if (!panel || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        const IdentificationReport r = estimate(panel->data);
        *out = {r.kappa_hat, r.kappa_se, r.default_coef, r.condition_number, r.identified ? 1 : 0};
    });
}

ratekit_status ratekit_run_experiment(const ratekit_regime_config* config,
                                      ratekit_identification_report* out) {
    if (!config || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        const IdentificationReport r = run_experiment(to_config(*config));
        *out = {r.kappa_hat, r.kappa_se, r.default_coef, r.condition_number, r.identified ? 1 : 0};
    });
}

ratekit_status ratekit_report_to_json(const ratekit_identification_report* report, char** out) {
    if (!report || !out) return fail_status(RATEKIT_ERR_INVALID_ARGUMENT, kNullArgument);
    return guarded([&] {
        IdentificationReport r;
        r.kappa_hat = report->kappa_hat;
        r.kappa_se = report->kappa_se;
        r.default_coef = report->default_coef;
        r.condition_number = report->condition_number;
        r.identified = report->identified != 0;
        *out = copy_string(report_to_json(r));
    });
}

void ratekit_string_free(char* s) { std::free(s); }

} // extern "C"
