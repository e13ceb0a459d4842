#pragma once

#include "bank.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ratekit {

// Institutional regimes for the synthetic panel.
//
// FreeBanking: redemption pressure (the per-note presentation probability q)
//   varies independently of default fundamentals and the encumbrance
//   premium kappa_true * r*(L)/L is priced into the spread.
// FiatNoRedemption: the redemption window is closed; the premium is absent
//   (kappa forced to zero) although the redemption proxy is still recorded.
// FiatBackstopCollinear: a backstop absorbs redemption pressure so the
//   recorded proxy moves one-for-one with default losses; the premium is
//   priced but observationally equivalent to the risk premium.
enum class Regime { FreeBanking, FiatNoRedemption, FiatBackstopCollinear };

const char* regime_name(Regime regime);
std::optional<Regime> regime_from_name(std::string_view name);

struct RegimeConfig {
    Regime regime = Regime::FreeBanking;
    std::uint32_t n_banks = 50;
    std::uint32_t n_periods = 100;
    double r_f = 0.03;
    double kappa_true = 0.05;
    double pi_lo = 0.005, pi_hi = 0.05;
    double lambda_lo = 0.2, lambda_hi = 0.8;
    double q_lo = 0.02, q_hi = 0.15;
    double noise_sd = 0.002;
    std::uint64_t seed = 0;
    double loan_size = 1000.0;       // note units issued per bank-period
    double failure_tolerance = 0.01; // reserve-rule epsilon
    void validate() const;
};

struct PanelRow {
    std::uint32_t bank_id = 0;
    std::uint32_t period = 0;
    double observed_spread = 0.0;
    double default_loss = 0.0;     // pi * lambda for the bank-period
    double redemption_proxy = 0.0; // r*(L) / L for the bank-period
    Regime regime = Regime::FreeBanking;
};

struct PanelDataset {
    std::vector<PanelRow> rows;
    RegimeConfig config;
};

struct IdentificationReport {
    double kappa_hat = 0.0;
    double kappa_se = 0.0;
    double default_coef = 0.0;
    double condition_number = 0.0;
    bool identified = false;
};

// Condition-number threshold above which a fit is flagged as collinear.
inline constexpr double kCollinearityThreshold = 1e8;

// Proportionality constant tying the recorded redemption proxy to default
// losses under FiatBackstopCollinear.
inline constexpr double kBackstopProxyScale = 1.0;

// Draw one panel. Every bank-period cell consumes a fixed block of the
// (seed, bank, period) random stream, so regeneration is bit-identical and
// independent of generation order.
PanelDataset generate_panel(const RegimeConfig& config);

// Pooled least squares of observed_spread on (intercept, default_loss,
// redemption_proxy). kappa_hat is the redemption-proxy coefficient.
IdentificationReport estimate(const PanelDataset& dataset);

IdentificationReport run_experiment(const RegimeConfig& config);

// CSV with header bank_id,period,observed_spread,default_loss,
// redemption_proxy,regime; 12 significant digits, LF line terminators.
std::string panel_to_csv(const PanelDataset& dataset);

// Parses the CSV format written by panel_to_csv. The generating config is
// not recoverable from the file; the returned dataset carries only rows.
PanelDataset panel_from_csv(const std::string& text);

// Flat JSON object with the five report fields, 12 significant digits.
std::string report_to_json(const IdentificationReport& report);

} // namespace ratekit
