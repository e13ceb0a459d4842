/*
 * ratekit — interest-rate formation models behind a C API.
 *
 * The library covers four layers of one modeling stack: two-period
 * consumption-saving with its Slutsky decomposition, the cash/bond
 * portfolio split, defaultable one-period credit pricing, and the lending
 * rate of a note-issuing bank including the reserve-encumbrance premium.
 * On top sits a synthetic-panel experiment that asks when that premium can
 * be separated from the default risk premium by pooled least squares.
 *
 * Conventions: every fallible call returns a ratekit_status and writes its
 * result through out-parameters. RATEKIT_OK is zero. A failing call leaves
 * out-parameters untouched and stores a human-readable detail message
 * retrievable with ratekit_last_error() (thread-local). Panels are opaque
 * handles released with ratekit_panel_free(); strings returned through
 * char** are released with ratekit_string_free().
 */

#ifndef RATEKIT_H
#define RATEKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RATEKIT_API __declspec(dllexport)
#elif defined(__GNUC__)
#define RATEKIT_API __attribute__((visibility("default")))
#else
#define RATEKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

RATEKIT_API const char* ratekit_version(void);

typedef enum ratekit_status {
    RATEKIT_OK = 0,
    RATEKIT_ERR_INVALID_ARGUMENT = 1,
    RATEKIT_ERR_BRACKET = 2,
    RATEKIT_ERR_NO_CONVERGENCE = 3,
    RATEKIT_ERR_INFEASIBLE = 4,
    RATEKIT_ERR_UNPRICEABLE = 5,
    RATEKIT_ERR_BAD_CONFIG = 6,
    RATEKIT_ERR_IO = 7,
    RATEKIT_ERR_INTERNAL = 8
} ratekit_status;

RATEKIT_API const char* ratekit_status_name(ratekit_status status);
RATEKIT_API const char* ratekit_last_error(void);

/* ---- consumer ------------------------------------------------------- */

typedef enum ratekit_utility_kind {
    RATEKIT_UTILITY_LOG = 0,
    RATEKIT_UTILITY_CONSTANT_IES = 1
} ratekit_utility_kind;

typedef struct ratekit_preferences {
    int utility_kind; /* ratekit_utility_kind */
    double rho;       /* time-preference rate, >= 0; beta = 1/(1+rho) */
    double ies_sigma; /* elasticity of substitution; ignored for LOG */
} ratekit_preferences;

typedef struct ratekit_endowment {
    double m1;
    double m2;
} ratekit_endowment;

typedef struct ratekit_allocation {
    double c1;
    double c2;
    double savings; /* m1 - c1 */
} ratekit_allocation;

typedef struct ratekit_slutsky {
    double total;        /* d c1 / d r */
    double substitution; /* compensated d c1 / d r */
    double income;       /* (m1 - c1) * d c1 / d wealth */
} ratekit_slutsky;

RATEKIT_API ratekit_status ratekit_wealth(const ratekit_endowment* endow, double r, double* out);
RATEKIT_API ratekit_status ratekit_solve_consumption(const ratekit_preferences* prefs,
                                                     const ratekit_endowment* endow, double r,
                                                     ratekit_allocation* out);
RATEKIT_API ratekit_status ratekit_slutsky_decompose(const ratekit_preferences* prefs,
                                                     const ratekit_endowment* endow, double r,
                                                     ratekit_slutsky* out);
RATEKIT_API ratekit_status ratekit_savings_response(const ratekit_preferences* prefs,
                                                    const ratekit_endowment* endow, double r,
                                                    double* out);

/* ---- portfolio ------------------------------------------------------ */

typedef struct ratekit_portfolio_allocation {
    double c1;
    double c2;
    double cash;
    double bonds;
    double kkt_mu; /* multiplier on cash >= 0 */
    double kkt_nu; /* multiplier on bonds >= 0 */
} ratekit_portfolio_allocation;

RATEKIT_API ratekit_status ratekit_solve_portfolio(const ratekit_preferences* prefs,
                                                   const ratekit_endowment* endow, double r,
                                                   ratekit_portfolio_allocation* out);
RATEKIT_API ratekit_status ratekit_cash_dominated(double r, int* out);

/* ---- credit --------------------------------------------------------- */

typedef struct ratekit_default_risk {
    double pi;     /* default probability in [0,1] */
    double lambda; /* loss given default in [0,1] */
} ratekit_default_risk;

RATEKIT_API ratekit_status ratekit_risky_rate_exact(double r_f, const ratekit_default_risk* risk,
                                                    double* out);
RATEKIT_API ratekit_status ratekit_risk_premium_first_order(const ratekit_default_risk* risk,
                                                            double* out);
RATEKIT_API ratekit_status ratekit_expected_gross_return(double r_tilde,
                                                         const ratekit_default_risk* risk,
                                                         double* out);
RATEKIT_API ratekit_status ratekit_simulate_default_returns(double r_tilde,
                                                            const ratekit_default_risk* risk,
                                                            uint64_t n, uint64_t seed, double* out);

/* ---- bank ----------------------------------------------------------- */

typedef enum ratekit_reserve_kind {
    RATEKIT_RESERVE_LINEAR = 0,
    RATEKIT_RESERVE_BINOMIAL_QUANTILE = 1
} ratekit_reserve_kind;

typedef struct ratekit_reserve_rule {
    int kind;                 /* ratekit_reserve_kind */
    double ratio;             /* LINEAR: r*(L) = ratio * L */
    double presentation_prob; /* BINOMIAL_QUANTILE: per-note probability q */
    double failure_tolerance; /* BINOMIAL_QUANTILE: epsilon in (0,1) */
    double note_unit;         /* BINOMIAL_QUANTILE: denomination, > 0 */
} ratekit_reserve_rule;

typedef struct ratekit_bank_params {
    double kappa;     /* opportunity cost per unit of encumbered reserve */
    double loan_size; /* L > 0; notes issued N = L */
    ratekit_default_risk risk;
    ratekit_reserve_rule rule;
} ratekit_bank_params;

typedef struct ratekit_rate_decomposition {
    double time_preference;
    double risk_premium;
    double phi;
    double total;
} ratekit_rate_decomposition;

RATEKIT_API ratekit_status ratekit_required_reserve(const ratekit_reserve_rule* rule,
                                                    double loan_size, double* out);
RATEKIT_API ratekit_status ratekit_encumbrance_premium(double kappa,
                                                       const ratekit_reserve_rule* rule,
                                                       double loan_size, double* out);
RATEKIT_API ratekit_status ratekit_lending_rate(double r_f, const ratekit_bank_params* params,
                                                ratekit_rate_decomposition* out);
RATEKIT_API ratekit_status ratekit_two_term_limit_check(double r_f,
                                                        const ratekit_bank_params* params,
                                                        int* out);

/* ---- cliometrics ---------------------------------------------------- */

typedef enum ratekit_regime {
    RATEKIT_REGIME_FREE_BANKING = 0,
    RATEKIT_REGIME_FIAT_NO_REDEMPTION = 1,
    RATEKIT_REGIME_FIAT_BACKSTOP_COLLINEAR = 2
} ratekit_regime;

typedef struct ratekit_regime_config {
    int regime; /* ratekit_regime */
    uint32_t n_banks;
    uint32_t n_periods;
    double r_f;
    double kappa_true;
    double pi_lo, pi_hi;
    double lambda_lo, lambda_hi;
    double q_lo, q_hi;
    double noise_sd;
    uint64_t seed;
    double loan_size;
    double failure_tolerance;
} ratekit_regime_config;

/* Fills the reference parameterization (free banking, 50 banks x 100
 * periods, kappa 0.05, noise 0.002, loan size 1000, epsilon 0.01). */
RATEKIT_API void ratekit_regime_config_init(ratekit_regime_config* config);

typedef struct ratekit_panel ratekit_panel; /* opaque */

typedef struct ratekit_panel_row {
    uint32_t bank_id;
    uint32_t period;
    double observed_spread;
    double default_loss;
    double redemption_proxy;
    int regime; /* ratekit_regime */
} ratekit_panel_row;

typedef struct ratekit_identification_report {
    double kappa_hat;
    double kappa_se;
    double default_coef;
    double condition_number;
    int identified;
} ratekit_identification_report;

RATEKIT_API ratekit_status ratekit_generate_panel(const ratekit_regime_config* config,
                                                  ratekit_panel** out);
RATEKIT_API void ratekit_panel_free(ratekit_panel* panel);
RATEKIT_API size_t ratekit_panel_row_count(const ratekit_panel* panel);
RATEKIT_API ratekit_status ratekit_panel_get_row(const ratekit_panel* panel, size_t index,
                                                 ratekit_panel_row* out);
RATEKIT_API ratekit_status ratekit_panel_to_csv(const ratekit_panel* panel, char** out);
RATEKIT_API ratekit_status ratekit_panel_from_csv(const char* text, ratekit_panel** out);
RATEKIT_API ratekit_status ratekit_estimate(const ratekit_panel* panel,
                                            ratekit_identification_report* out);
RATEKIT_API ratekit_status ratekit_run_experiment(const ratekit_regime_config* config,
                                                  ratekit_identification_report* out);
RATEKIT_API ratekit_status ratekit_report_to_json(const ratekit_identification_report* report,
                                                  char** out);
RATEKIT_API void ratekit_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* RATEKIT_H */
