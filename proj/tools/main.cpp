// ratekit command line: solve and sweep the consumption-saving problem,
// split savings across cash and bonds, price defaultable credit and the
// note-issuing bank's lending rate, and run panel identification
// experiments from JSON configs.
//
// Exit codes: 0 success, 2 invalid input, 3 computation failure.

#include <ratekit/ratekit.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

int exit_code_for(ratekit_status status) {
    switch (status) {
    case RATEKIT_OK:
        return kExitOk;
    case RATEKIT_ERR_INVALID_ARGUMENT:
    case RATEKIT_ERR_INFEASIBLE:
    case RATEKIT_ERR_UNPRICEABLE:
    case RATEKIT_ERR_BAD_CONFIG:
        return kExitInput;
    default:
        return kExitCompute;
    }
}

int report_failure(ratekit_status status) {
    std::cerr << "ratekit: " << ratekit_status_name(status) << ": " << ratekit_last_error()
              << "\n";
    return exit_code_for(status);
}

std::string machine_number(double v) {
    char buf[48];
    if (v == 0.0) v = 0.0; // print negative zero as plain zero
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string human_number(double v) {
    char buf[48];
    if (v == 0.0) v = 0.0;
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

using NamedValues = std::vector<std::pair<std::string, double>>;

std::string key_value_table(const NamedValues& rows) {
    std::size_t width = 0;
    for (const auto& [key, _] : rows) width = std::max(width, key.size());
    std::string out;
    for (const auto& [key, value] : rows) {
        out += key;
        out.append(width - key.size() + 2, ' ');
        out += human_number(value);
        out += '\n';
    }
    return out;
}

std::string flat_json(const NamedValues& rows) {
    std::string out = "{";
    bool first = true;
    for (const auto& [key, value] : rows) {
        if (!first) out += ',';
        first = false;
        out += '"';
        out += key;
        out += "\":";
        out += machine_number(value);
    }
    out += "}\n";
    return out;
}

struct GlobalOptions {
    std::string format; // empty means the subcommand default
    std::string output_path;
    std::optional<std::uint64_t> seed;
};

// Writes the primary payload to --output when given, else to stdout.
int emit(const GlobalOptions& global, const std::string& payload) {
    if (global.output_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(global.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "ratekit: cannot open output path '" << global.output_path << "'\n";
        return kExitCompute;
    }
    out << payload;
    return out.good() ? kExitOk : kExitCompute;
}

int reject_format(const std::string& format, const char* command) {
    std::cerr << "ratekit: format '" << format << "' is not supported by " << command << "\n";
    return kExitInput;
}

struct ConsumerArgs {
    std::string utility = "log";
    double sigma = 1.0;
    double rho = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double r = 0.0;
};

void add_consumer_flags(CLI::App* cmd, ConsumerArgs& args, bool with_rate) {
    cmd->add_option("--utility", args.utility, "Utility family: log or ces")
        ->check(CLI::IsMember({"log", "ces"}));
    cmd->add_option("--sigma", args.sigma, "Elasticity of substitution for ces utility");
    cmd->add_option("--rho", args.rho, "Time-preference rate");
    cmd->add_option("--m1", args.m1, "Period-1 income");
    cmd->add_option("--m2", args.m2, "Period-2 income");
    if (with_rate) cmd->add_option("--r", args.r, "Interest rate")->required();
}

ratekit_preferences to_preferences(const ConsumerArgs& args) {
    ratekit_preferences prefs{};
    prefs.utility_kind =
        args.utility == "ces" ? RATEKIT_UTILITY_CONSTANT_IES : RATEKIT_UTILITY_LOG;
    prefs.rho = args.rho;
    prefs.ies_sigma = args.sigma;
    return prefs;
}

int run_solve(const GlobalOptions& global, const ConsumerArgs& args) {
    const ratekit_preferences prefs = to_preferences(args);
    const ratekit_endowment endow{args.m1, args.m2};
    ratekit_allocation alloc{};
    if (ratekit_status s = ratekit_solve_consumption(&prefs, &endow, args.r, &alloc))
        return report_failure(s);

    const NamedValues rows{{"c1", alloc.c1}, {"c2", alloc.c2}, {"savings", alloc.savings}};
    const std::string format = global.format.empty() ? "table" : global.format;
    if (format == "table") return emit(global, key_value_table(rows));
    if (format == "json") return emit(global, flat_json(rows));
    return reject_format(format, "solve");
}

int run_portfolio(const GlobalOptions& global, const ConsumerArgs& args) {
    const ratekit_preferences prefs = to_preferences(args);
    const ratekit_endowment endow{args.m1, args.m2};
    ratekit_portfolio_allocation alloc{};
    if (ratekit_status s = ratekit_solve_portfolio(&prefs, &endow, args.r, &alloc))
        return report_failure(s);

    const NamedValues rows{{"c1", alloc.c1},     {"c2", alloc.c2},
                           {"cash", alloc.cash}, {"bonds", alloc.bonds},
                           {"kkt_mu", alloc.kkt_mu}, {"kkt_nu", alloc.kkt_nu}};
    const std::string format = global.format.empty() ? "table" : global.format;
    if (format == "table") return emit(global, key_value_table(rows));
    if (format == "json") return emit(global, flat_json(rows));
    return reject_format(format, "portfolio");
}

struct SweepArgs {
    ConsumerArgs consumer;
    double r_from = 0.0;
    double r_to = 0.0;
    int r_steps = 0;
};

int run_sweep(const GlobalOptions& global, const SweepArgs& args) {
    if (args.r_steps < 1) {
        std::cerr << "ratekit: --r-steps must be at least 1\n";
        return kExitInput;
    }
    const ratekit_preferences prefs = to_preferences(args.consumer);
    const ratekit_endowment endow{args.consumer.m1, args.consumer.m2};

    struct SweepRow {
        double r, c1, c2, s, ds_dr;
    };
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(args.r_steps));
    for (int i = 0; i < args.r_steps; ++i) {
        const double r = args.r_steps == 1
                             ? args.r_from
                             : args.r_from + (args.r_to - args.r_from) * i / (args.r_steps - 1);
        ratekit_allocation alloc{};
        if (ratekit_status s = ratekit_solve_consumption(&prefs, &endow, r, &alloc))
            return report_failure(s);
        double ds_dr = 0.0;
        if (ratekit_status s = ratekit_savings_response(&prefs, &endow, r, &ds_dr))
            return report_failure(s);
        rows.push_back({r, alloc.c1, alloc.c2, alloc.savings, ds_dr});
    }

    const std::string format = global.format.empty() ? "csv" : global.format;
    std::string payload;
    if (format == "csv") {
        payload = "r,c1,c2,s,ds_dr\n";
        for (const SweepRow& row : rows) {
            payload += machine_number(row.r) + ',' + machine_number(row.c1) + ',' +
                       machine_number(row.c2) + ',' + machine_number(row.s) + ',' +
                       machine_number(row.ds_dr) + '\n';
        }
    } else if (format == "table") {
        payload = "r        c1         c2         s          ds_dr\n";
        for (const SweepRow& row : rows) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%-8.4f %-10.4f %-10.4f %-10.4f %-10.4f\n", row.r,
                          row.c1, row.c2, row.s, row.ds_dr);
            payload += buf;
        }
    } else if (format == "json") {
        payload = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) payload += ',';
            payload += flat_json({{"r", rows[i].r},
                                  {"c1", rows[i].c1},
                                  {"c2", rows[i].c2},
                                  {"s", rows[i].s},
                                  {"ds_dr", rows[i].ds_dr}});
            payload.pop_back(); // inner newline
        }
        payload += "]\n";
    } else {
        return reject_format(format, "sweep");
    }
    return emit(global, payload);
}

struct PriceArgs {
    double r_f = 0.0;
    double pi = 0.0;
    double lambda = 0.0;
    std::optional<double> kappa;
    std::string reserve_spec;
    double loan = 0.0;
};

// Reserve rule flag syntax: linear:<ratio> or binomial:<q>[,<eps>[,<unit>]]
bool parse_reserve_spec(const std::string& spec, ratekit_reserve_rule* rule) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return false;
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    std::vector<double> values;
    std::stringstream ss(rest);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size()) return false;
        } catch (...) {
            return false;
        }
    }
    *rule = {};
    if (kind == "linear" && values.size() == 1) {
        rule->kind = RATEKIT_RESERVE_LINEAR;
        rule->ratio = values[0];
        return true;
    }
    if (kind == "binomial" && !values.empty() && values.size() <= 3) {
        rule->kind = RATEKIT_RESERVE_BINOMIAL_QUANTILE;
        rule->presentation_prob = values[0];
        rule->failure_tolerance = values.size() > 1 ? values[1] : 0.01;
        rule->note_unit = values.size() > 2 ? values[2] : 1.0;
        return true;
    }
    return false;
}

int run_price(const GlobalOptions& global, const PriceArgs& args) {
    const ratekit_default_risk risk{args.pi, args.lambda};
    double exact = 0.0;
    if (ratekit_status s = ratekit_risky_rate_exact(args.r_f, &risk, &exact))
        return report_failure(s);
    double first_order = 0.0;
    if (ratekit_status s = ratekit_risk_premium_first_order(&risk, &first_order))
        return report_failure(s);

    NamedValues rows{{"risky_rate_exact", exact}, {"first_order_spread", first_order}};

    if (args.kappa.has_value()) {
        ratekit_bank_params params{};
        params.kappa = *args.kappa;
        params.loan_size = args.loan;
        params.risk = risk;
        if (!parse_reserve_spec(args.reserve_spec, &params.rule)) {
            std::cerr << "ratekit: invalid --reserve spec '" << args.reserve_spec
                      << "' (use linear:<ratio> or binomial:<q>[,<eps>[,<unit>]])\n";
            return kExitInput;
        }
        ratekit_rate_decomposition decomp{};
        if (ratekit_status s = ratekit_lending_rate(args.r_f, &params, &decomp))
            return report_failure(s);
        rows.emplace_back("time_preference", decomp.time_preference);
        rows.emplace_back("risk_premium", decomp.risk_premium);
        rows.emplace_back("phi", decomp.phi);
        rows.emplace_back("lending_rate", decomp.total);
    }

    const std::string format = global.format.empty() ? "table" : global.format;
    if (format == "table") return emit(global, key_value_table(rows));
    if (format == "json") return emit(global, flat_json(rows));
    return reject_format(format, "price");
}

struct ExperimentArgs {
    std::string config_path;
    std::string panel_out;
};

int load_config(const std::string& path, std::uint64_t seed_override, bool has_seed_override,
                ratekit_regime_config* config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "ratekit: cannot read config '" << path << "'\n";
        return kExitInput;
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        std::cerr << "ratekit: invalid JSON in '" << path << "': " << e.what() << "\n";
        return kExitInput;
    }

    ratekit_regime_config_init(config);
    try {
        if (doc.at("schema_version").get<int>() != 1) {
            std::cerr << "ratekit: unsupported schema_version in '" << path << "'\n";
            return kExitInput;
        }
        const std::string regime = doc.at("regime").get<std::string>();
        if (regime == "free_banking") config->regime = RATEKIT_REGIME_FREE_BANKING;
        else if (regime == "fiat_no_redemption") config->regime = RATEKIT_REGIME_FIAT_NO_REDEMPTION;
        else if (regime == "fiat_backstop_collinear")
            config->regime = RATEKIT_REGIME_FIAT_BACKSTOP_COLLINEAR;
        else {
            std::cerr << "ratekit: unknown regime '" << regime << "'\n";
            return kExitInput;
        }
        config->n_banks = doc.at("n_banks").get<std::uint32_t>();
        config->n_periods = doc.at("n_periods").get<std::uint32_t>();
        config->seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("r_f")) config->r_f = doc["r_f"].get<double>();
        if (doc.contains("kappa_true")) config->kappa_true = doc["kappa_true"].get<double>();
        if (doc.contains("noise_sd")) config->noise_sd = doc["noise_sd"].get<double>();
        if (doc.contains("loan_size")) config->loan_size = doc["loan_size"].get<double>();
        if (doc.contains("failure_tolerance"))
            config->failure_tolerance = doc["failure_tolerance"].get<double>();
        auto read_range = [&doc](const char* key, double* lo, double* hi) {
            if (!doc.contains(key)) return true;
            const auto& range = doc[key];
            if (!range.is_array() || range.size() != 2) return false;
            *lo = range[0].get<double>();
            *hi = range[1].get<double>();
            return true;
        };
        if (!read_range("pi_range", &config->pi_lo, &config->pi_hi) ||
            !read_range("lambda_range", &config->lambda_lo, &config->lambda_hi) ||
            !read_range("q_range", &config->q_lo, &config->q_hi)) {
            std::cerr << "ratekit: ranges must be two-element arrays [lo, hi]\n";
            return kExitInput;
        }
    } catch (const std::exception& e) {
        std::cerr << "ratekit: invalid config '" << path << "': " << e.what() << "\n";
        return kExitInput;
    }
    if (has_seed_override) config->seed = seed_override;
    return kExitOk;
}

int run_experiment_cmd(const GlobalOptions& global, const ExperimentArgs& args) {
    ratekit_regime_config config{};
    if (int rc = load_config(args.config_path, global.seed.value_or(0), global.seed.has_value(),
                             &config))
        return rc;

    ratekit_panel* panel = nullptr;
    if (ratekit_status s = ratekit_generate_panel(&config, &panel)) return report_failure(s);

    ratekit_identification_report report{};
    ratekit_status s = ratekit_estimate(panel, &report);
    if (s != RATEKIT_OK) {
        ratekit_panel_free(panel);
        return report_failure(s);
    }

    if (!args.panel_out.empty()) {
        char* csv = nullptr;
        s = ratekit_panel_to_csv(panel, &csv);
        if (s != RATEKIT_OK) {
            ratekit_panel_free(panel);
            return report_failure(s);
        }
        std::ofstream out(args.panel_out, std::ios::binary);
        if (!out || !(out << csv)) {
            std::cerr << "ratekit: cannot write panel to '" << args.panel_out << "'\n";
            ratekit_string_free(csv);
            ratekit_panel_free(panel);
            return kExitCompute;
        }
        ratekit_string_free(csv);
    }
    ratekit_panel_free(panel);

    const std::string format = global.format.empty() ? "json" : global.format;
    if (format == "json") {
        char* json = nullptr;
        if (ratekit_status js = ratekit_report_to_json(&report, &json)) return report_failure(js);
        std::string payload(json);
        ratekit_string_free(json);
        payload += '\n';
        return emit(global, payload);
    }
    if (format == "table") {
        NamedValues rows{{"kappa_hat", report.kappa_hat},
                         {"kappa_se", report.kappa_se},
                         {"default_coef", report.default_coef},
                         {"condition_number", report.condition_number},
                         {"identified", report.identified ? 1.0 : 0.0}};
        return emit(global, key_value_table(rows));
    }
    return reject_format(format, "experiment");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interest-rate formation models: consumption-saving, portfolio choice,\n"
                 "credit pricing, bank lending rates, and panel identification experiments"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--format", global.format, "Output format: table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--output", global.output_path, "Write output to a file instead of stdout");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "Override the experiment seed");

    ConsumerArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the two-period consumption-saving problem");
    solve_cmd->fallthrough();
    add_consumer_flags(solve_cmd, solve_args, true);

    ConsumerArgs portfolio_args;
    auto* portfolio_cmd =
        app.add_subcommand("portfolio", "Split savings between cash and bonds (r >= 0)");
    portfolio_cmd->fallthrough();
    add_consumer_flags(portfolio_cmd, portfolio_args, true);

    SweepArgs sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Tabulate c1, c2, s and ds/dr over an interest-rate grid");
    sweep_cmd->fallthrough();
    add_consumer_flags(sweep_cmd, sweep_args.consumer, false);
    sweep_cmd->add_option("--r-from", sweep_args.r_from, "First grid rate")->required();
    sweep_cmd->add_option("--r-to", sweep_args.r_to, "Last grid rate")->required();
    sweep_cmd->add_option("--r-steps", sweep_args.r_steps, "Number of grid points")->required();

    PriceArgs price_args;
    auto* price_cmd =
        app.add_subcommand("price", "Price a defaultable loan; add bank flags for the three-term rate");
    price_cmd->fallthrough();
    price_cmd->add_option("--rf", price_args.r_f, "Risk-free rate")->required();
    price_cmd->add_option("--pi", price_args.pi, "Default probability")->required();
    price_cmd->add_option("--lambda", price_args.lambda, "Loss given default")->required();
    double kappa_value = 0.0;
    auto* kappa_opt = price_cmd->add_option("--kappa", kappa_value,
                                            "Reserve opportunity cost (enables the bank view)");
    price_cmd->add_option("--reserve", price_args.reserve_spec,
                          "Reserve rule: linear:<ratio> or binomial:<q>[,<eps>[,<unit>]]")
        ->needs(kappa_opt);
    price_cmd->add_option("--loan", price_args.loan, "Loan size L")->needs(kappa_opt);
    kappa_opt->needs(price_cmd->get_option("--reserve"));
    kappa_opt->needs(price_cmd->get_option("--loan"));

    ExperimentArgs experiment_args;
    auto* experiment_cmd =
        app.add_subcommand("experiment", "Generate a synthetic panel and estimate the spread model");
    experiment_cmd->fallthrough();
    experiment_cmd->add_option("--config", experiment_args.config_path, "RegimeConfig JSON path")
        ->required();
    experiment_cmd->add_option("--panel-out", experiment_args.panel_out,
                               "Also write the generated panel CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ratekit: " << e.what() << "\n";
        return kExitInput;
    }
    if (seed_opt->count() > 0) global.seed = seed_value;
    if (kappa_opt->count() > 0) price_args.kappa = kappa_value;

    if (solve_cmd->parsed()) return run_solve(global, solve_args);
    if (portfolio_cmd->parsed()) return run_portfolio(global, portfolio_args);
    if (sweep_cmd->parsed()) return run_sweep(global, sweep_args);
    if (price_cmd->parsed()) return run_price(global, price_args);
    if (experiment_cmd->parsed()) return run_experiment_cmd(global, experiment_args);
    return kExitInput;
}
