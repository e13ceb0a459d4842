#include "cliometrics.hpp"

#include "errors.hpp"
#include "numerics.hpp"
#include "rng.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace ratekit {

const char* regime_name(Regime regime) {
    switch (regime) {
    case Regime::FreeBanking: return "free_banking";
    case Regime::FiatNoRedemption: return "fiat_no_redemption";
    case Regime::FiatBackstopCollinear: return "fiat_backstop_collinear";
    }
    return "unknown";
}

std::optional<Regime> regime_from_name(std::string_view name) {
    if (name == "free_banking") return Regime::FreeBanking;
    if (name == "fiat_no_redemption") return Regime::FiatNoRedemption;
    if (name == "fiat_backstop_collinear") return Regime::FiatBackstopCollinear;
    return std::nullopt;
}

void RegimeConfig::validate() const {
    auto range_ok = [](double lo, double hi, double dom_lo, double dom_hi) {
        return lo >= dom_lo && hi <= dom_hi && lo <= hi;
    };
    if (static_cast<std::uint64_t>(n_banks) * n_periods < 10)
        fail(Errc::BadConfig, "RegimeConfig: need at least 10 bank-periods");
    if (!range_ok(pi_lo, pi_hi, 0.0, 1.0))
        fail(Errc::BadConfig, "RegimeConfig: pi range must sit inside [0,1]");
    if (!range_ok(lambda_lo, lambda_hi, 0.0, 1.0))
        fail(Errc::BadConfig, "RegimeConfig: lambda range must sit inside [0,1]");
    if (!range_ok(q_lo, q_hi, 0.0, 1.0))
        fail(Errc::BadConfig, "RegimeConfig: q range must sit inside [0,1]");
    if (!(noise_sd >= 0.0)) fail(Errc::BadConfig, "RegimeConfig: noise_sd must be nonnegative");
    if (!(kappa_true >= 0.0)) fail(Errc::BadConfig, "RegimeConfig: kappa_true must be nonnegative");
    if (!(loan_size > 0.0)) fail(Errc::BadConfig, "RegimeConfig: loan_size must be positive");
    if (!(failure_tolerance > 0.0 && failure_tolerance < 1.0))
        fail(Errc::BadConfig, "RegimeConfig: failure_tolerance must be in (0,1)");
    if (!std::isfinite(r_f)) fail(Errc::BadConfig, "RegimeConfig: r_f must be finite");
}

namespace {

double lerp(double lo, double hi, double u) { return lo + (hi - lo) * u; }

// Fixed draw layout per bank-period cell: indices 0..2 are the uniform
// fundamentals (pi, lambda, q), indices 3..4 feed the Gaussian noise.
PanelRow make_row(const RegimeConfig& cfg, std::uint32_t bank, std::uint32_t period) {
    const std::uint64_t key = panel_cell_key(cfg.seed, bank, period);
    const double pi = lerp(cfg.pi_lo, cfg.pi_hi, stream_unit(key, 0));
    const double lambda = lerp(cfg.lambda_lo, cfg.lambda_hi, stream_unit(key, 1));
    const double q = lerp(cfg.q_lo, cfg.q_hi, stream_unit(key, 2));
    const double noise =
        cfg.noise_sd == 0.0
            ? 0.0
            : cfg.noise_sd * gaussian_from_units(stream_unit(key, 3), stream_unit(key, 4));

    PanelRow row;
    row.bank_id = bank;
    row.period = period;
    row.regime = cfg.regime;
    row.default_loss = pi * lambda;

    if (cfg.regime == Regime::FiatBackstopCollinear) {
        row.redemption_proxy = kBackstopProxyScale * row.default_loss;
    } else {
        const ReserveRule rule = ReserveRule::binomial_quantile(q, cfg.failure_tolerance, 1.0);
        row.redemption_proxy = required_reserve(rule, cfg.loan_size) / cfg.loan_size;
    }

    const double phi =
        cfg.regime == Regime::FiatNoRedemption ? 0.0 : cfg.kappa_true * row.redemption_proxy;
    row.observed_spread = row.default_loss + phi + noise;
    return row;
}

} // namespace

PanelDataset generate_panel(const RegimeConfig& config) {
    config.validate();
    PanelDataset ds;
    ds.config = config;
    ds.rows.reserve(static_cast<std::size_t>(config.n_banks) * config.n_periods);
    for (std::uint32_t bank = 0; bank < config.n_banks; ++bank)
        for (std::uint32_t period = 0; period < config.n_periods; ++period)
            ds.rows.push_back(make_row(config, bank, period));
    return ds;
}

IdentificationReport estimate(const PanelDataset& dataset) {
    const std::size_t n = dataset.rows.size();
    if (n == 0) fail(Errc::InvalidArgument, "estimate: empty panel");

    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PanelRow& row = dataset.rows[i];
        x(static_cast<Eigen::Index>(i), 0) = 1.0;
        x(static_cast<Eigen::Index>(i), 1) = row.default_loss;
        x(static_cast<Eigen::Index>(i), 2) = row.redemption_proxy;
        y(static_cast<Eigen::Index>(i)) = row.observed_spread;
    }
    const LeastSquaresFit fit = ols_fit(x, y);

    IdentificationReport report;
    report.kappa_hat = fit.coefficients[2];
    report.kappa_se = fit.standard_errors[2];
    report.default_coef = fit.coefficients[1];
    report.condition_number = fit.condition_number;
    report.identified =
        fit.condition_number < kCollinearityThreshold && std::isfinite(report.kappa_se);
    return report;
}

IdentificationReport run_experiment(const RegimeConfig& config) {
    return estimate(generate_panel(config));
}

namespace {

void append_number(std::string& out, double v) {
    char buf[48];
    if (v == 0.0) v = 0.0; // serialize negative zero as plain zero
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out += buf;
}

} // namespace

std::string panel_to_csv(const PanelDataset& dataset) {
    std::string out = "bank_id,period,observed_spread,default_loss,redemption_proxy,regime\n";
    char head[64];
    for (const PanelRow& row : dataset.rows) {
        std::snprintf(head, sizeof head, "%u,%u,", row.bank_id, row.period);
        out += head;
        append_number(out, row.observed_spread);
        out += ',';
        append_number(out, row.default_loss);
        out += ',';
        append_number(out, row.redemption_proxy);
        out += ',';
        out += regime_name(row.regime);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        fail(Errc::BadConfig, "panel_from_csv: malformed numeric field '" + s + "'");
    return v;
}

std::uint32_t parse_u32(const std::string& s) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0')
        fail(Errc::BadConfig, "panel_from_csv: malformed integer field '" + s + "'");
    return static_cast<std::uint32_t>(v);
}

} // namespace

PanelDataset panel_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail(Errc::BadConfig, "panel_from_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "bank_id,period,observed_spread,default_loss,redemption_proxy,regime")
        fail(Errc::BadConfig, "panel_from_csv: unexpected header");

    PanelDataset ds;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 6) fail(Errc::BadConfig, "panel_from_csv: expected 6 fields per row");
        PanelRow row;
        row.bank_id = parse_u32(f[0]);
        row.period = parse_u32(f[1]);
        row.observed_spread = parse_double(f[2]);
        row.default_loss = parse_double(f[3]);
        row.redemption_proxy = parse_double(f[4]);
        const auto regime = regime_from_name(f[5]);
        if (!regime) fail(Errc::BadConfig, "panel_from_csv: unknown regime tag '" + f[5] + "'");
        row.regime = *regime;
        ds.rows.push_back(row);
    }
    if (ds.rows.empty()) fail(Errc::BadConfig, "panel_from_csv: no data rows");
    // The generating config is unknown for externally loaded panels.
    ds.config.n_banks = 0;
    ds.config.n_periods = 0;
    ds.config.regime = ds.rows.front().regime;
    return ds;
}

std::string report_to_json(const IdentificationReport& report) {
    std::string out = "{\"kappa_hat\":";
    append_number(out, report.kappa_hat);
    out += ",\"kappa_se\":";
    append_number(out, report.kappa_se);
    out += ",\"default_coef\":";
    append_number(out, report.default_coef);
    out += ",\"condition_number\":";
    append_number(out, report.condition_number);
    out += ",\"identified\":";
    out += report.identified ? "true" : "false";
    out += '}';
    return out;
}

} // namespace ratekit
