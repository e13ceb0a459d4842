// Exercises the shared-library C surface: status codes, out-parameters,
// opaque panel lifecycle, and agreement with the core values.

#include <ratekit/ratekit.h>

#include <doctest.h>

#include <cmath>
#include <string>

namespace {

ratekit_preferences log_prefs(double rho) {
    ratekit_preferences p{};
    p.utility_kind = RATEKIT_UTILITY_LOG;
    p.rho = rho;
    p.ies_sigma = 1.0;
    return p;
}

} // namespace

TEST_CASE("capi: version and status names") {
    CHECK(std::string(ratekit_version()) == "0.1.0");
    CHECK(std::string(ratekit_status_name(RATEKIT_OK)) == "ok");
    CHECK(std::string(ratekit_status_name(RATEKIT_ERR_UNPRICEABLE)) == "unpriceable");
}

TEST_CASE("capi: consumption solve round-trips the reference values") {
    const ratekit_preferences prefs = log_prefs(0.05);
    const ratekit_endowment endow{100.0, 0.0};
    ratekit_allocation alloc{};
    REQUIRE(ratekit_solve_consumption(&prefs, &endow, 0.10, &alloc) == RATEKIT_OK);
    CHECK(std::fabs(alloc.c1 - 51.219512195121951) <= 1e-8);
    CHECK(std::fabs(alloc.savings - 48.780487804878049) <= 1e-8);

    double w = 0.0;
    REQUIRE(ratekit_wealth(&endow, 0.10, &w) == RATEKIT_OK);
    CHECK(w == doctest::Approx(100.0));

    ratekit_slutsky slutsky{};
    REQUIRE(ratekit_slutsky_decompose(&prefs, &endow, 0.10, &slutsky) == RATEKIT_OK);
    CHECK(std::fabs(slutsky.total) <= 1e-6);
    CHECK(std::fabs(slutsky.total - (slutsky.substitution + slutsky.income)) <= 1e-5);

    double ds_dr = 1.0;
    REQUIRE(ratekit_savings_response(&prefs, &endow, 0.10, &ds_dr) == RATEKIT_OK);
    CHECK(std::fabs(ds_dr) <= 1e-6);
}

TEST_CASE("capi: error codes carry a detail message and leave outputs alone") {
    const ratekit_preferences bad = log_prefs(-1.5);
    const ratekit_endowment endow{100.0, 0.0};
    ratekit_allocation alloc{-7.0, -7.0, -7.0};
    CHECK(ratekit_solve_consumption(&bad, &endow, 0.10, &alloc) ==
          RATEKIT_ERR_INVALID_ARGUMENT);
    CHECK(alloc.c1 == -7.0);
    CHECK(std::string(ratekit_last_error()).find("rho") != std::string::npos);

    CHECK(ratekit_solve_consumption(nullptr, &endow, 0.10, &alloc) ==
          RATEKIT_ERR_INVALID_ARGUMENT);

    const ratekit_default_risk total_loss{1.0, 1.0};
    double rt = 0.0;
    CHECK(ratekit_risky_rate_exact(0.03, &total_loss, &rt) == RATEKIT_ERR_UNPRICEABLE);

    const ratekit_endowment no_m1{0.0, 50.0};
    const ratekit_preferences prefs = log_prefs(0.05);
    ratekit_portfolio_allocation p{};
    CHECK(ratekit_solve_portfolio(&prefs, &no_m1, 0.10, &p) == RATEKIT_ERR_INFEASIBLE);
}

TEST_CASE("capi: portfolio and cash dominance") {
    const ratekit_preferences prefs = log_prefs(0.05);
    const ratekit_endowment endow{100.0, 0.0};
    ratekit_portfolio_allocation p{};
    REQUIRE(ratekit_solve_portfolio(&prefs, &endow, 0.10, &p) == RATEKIT_OK);
    CHECK(p.cash == 0.0);
    CHECK(std::fabs(p.bonds - 48.780487804878049) <= 1e-8);

    int dominated = 0;
    REQUIRE(ratekit_cash_dominated(0.01, &dominated) == RATEKIT_OK);
    CHECK(dominated == 1);
    REQUIRE(ratekit_cash_dominated(0.0, &dominated) == RATEKIT_OK);
    CHECK(dominated == 0);
}

TEST_CASE("capi: credit pricing block") {
    const ratekit_default_risk risk{0.02, 0.5};
    double exact = 0.0, first = 0.0, gross = 0.0, mc = 0.0;
    REQUIRE(ratekit_risky_rate_exact(0.03, &risk, &exact) == RATEKIT_OK);
    CHECK(std::fabs(exact - 4.0 / 99.0) <= 1e-12);
    REQUIRE(ratekit_risk_premium_first_order(&risk, &first) == RATEKIT_OK);
    CHECK(first == doctest::Approx(0.01));
    REQUIRE(ratekit_expected_gross_return(exact, &risk, &gross) == RATEKIT_OK);
    CHECK(std::fabs(gross - 1.03) <= 1e-12);
    REQUIRE(ratekit_simulate_default_returns(exact, &risk, 10000, 7, &mc) == RATEKIT_OK);
    double mc2 = 0.0;
    REQUIRE(ratekit_simulate_default_returns(exact, &risk, 10000, 7, &mc2) == RATEKIT_OK);
    CHECK(mc == mc2);
}

TEST_CASE("capi: bank block") {
    ratekit_reserve_rule rule{};
    rule.kind = RATEKIT_RESERVE_LINEAR;
    rule.ratio = 0.1;
    double reserve = 0.0, phi = 0.0;
    REQUIRE(ratekit_required_reserve(&rule, 1000.0, &reserve) == RATEKIT_OK);
    CHECK(reserve == doctest::Approx(100.0));
    REQUIRE(ratekit_encumbrance_premium(0.04, &rule, 1000.0, &phi) == RATEKIT_OK);
    CHECK(phi == doctest::Approx(0.004));

    ratekit_bank_params params{};
    params.kappa = 0.04;
    params.loan_size = 1000.0;
    params.risk = {0.02, 0.5};
    params.rule = rule;
    ratekit_rate_decomposition d{};
    REQUIRE(ratekit_lending_rate(0.03, &params, &d) == RATEKIT_OK);
    CHECK(std::fabs(d.total - 0.044) <= 1e-15);

    int two_term = 0;
    REQUIRE(ratekit_two_term_limit_check(0.03, &params, &two_term) == RATEKIT_OK);
    CHECK(two_term == 0);
    params.kappa = 0.0;
    REQUIRE(ratekit_two_term_limit_check(0.03, &params, &two_term) == RATEKIT_OK);
    CHECK(two_term == 1);
}

TEST_CASE("capi: panel lifecycle, serialization and estimation") {
    ratekit_regime_config config{};
    ratekit_regime_config_init(&config);
    config.seed = 321;

    ratekit_panel* panel = nullptr;
    REQUIRE(ratekit_generate_panel(&config, &panel) == RATEKIT_OK);
    REQUIRE(panel != nullptr);
    CHECK(ratekit_panel_row_count(panel) == 5000);

    ratekit_panel_row row{};
    REQUIRE(ratekit_panel_get_row(panel, 0, &row) == RATEKIT_OK);
    CHECK(row.bank_id == 0);
    CHECK(row.period == 0);
    CHECK(row.regime == RATEKIT_REGIME_FREE_BANKING);
    CHECK(ratekit_panel_get_row(panel, 999999, &row) == RATEKIT_ERR_INVALID_ARGUMENT);

    char* csv = nullptr;
    REQUIRE(ratekit_panel_to_csv(panel, &csv) == RATEKIT_OK);
    REQUIRE(csv != nullptr);
    const std::string csv_text(csv);
    ratekit_string_free(csv);
    CHECK(csv_text.rfind("bank_id,period,", 0) == 0);

    ratekit_panel* reread = nullptr;
    REQUIRE(ratekit_panel_from_csv(csv_text.c_str(), &reread) == RATEKIT_OK);
    CHECK(ratekit_panel_row_count(reread) == 5000);

    ratekit_identification_report direct{}, rounded{}, composed{};
    REQUIRE(ratekit_estimate(panel, &direct) == RATEKIT_OK);
    REQUIRE(ratekit_estimate(reread, &rounded) == RATEKIT_OK);
    CHECK(std::fabs(direct.kappa_hat - rounded.kappa_hat) <= 1e-9);
    CHECK(direct.identified == 1);

    REQUIRE(ratekit_run_experiment(&config, &composed) == RATEKIT_OK);
    CHECK(composed.kappa_hat == direct.kappa_hat);
    CHECK(composed.kappa_se == direct.kappa_se);

    char* json = nullptr;
    REQUIRE(ratekit_report_to_json(&direct, &json) == RATEKIT_OK);
    const std::string json_text(json);
    ratekit_string_free(json);
    CHECK(json_text.find("\"kappa_hat\":") != std::string::npos);
    CHECK(json_text.find("\"identified\":true") != std::string::npos);

    ratekit_panel_free(panel);
    ratekit_panel_free(reread);

    CHECK(ratekit_panel_from_csv("not,a,panel\n", &reread) == RATEKIT_ERR_BAD_CONFIG);
}

TEST_CASE("capi: config validation surfaces as bad_config") {
    ratekit_regime_config config{};
    ratekit_regime_config_init(&config);
    config.n_banks = 0;
    ratekit_identification_report report{};
    CHECK(ratekit_run_experiment(&config, &report) == RATEKIT_ERR_BAD_CONFIG);

    config.regime = 99;
    CHECK(ratekit_run_experiment(&config, &report) == RATEKIT_ERR_BAD_CONFIG);
}
