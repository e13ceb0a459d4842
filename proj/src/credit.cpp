#include "credit.hpp"

#include "errors.hpp"
#include "rng.hpp"

#include <cmath>

namespace ratekit {

void DefaultRisk::validate() const {
    if (!(pi >= 0.0 && pi <= 1.0)) fail(Errc::InvalidArgument, "DefaultRisk: pi must be in [0,1]");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        fail(Errc::InvalidArgument, "DefaultRisk: lambda must be in [0,1]");
}

double risky_rate_exact(double r_f, const DefaultRisk& risk, double variance_premium) {
    risk.validate();
    if (!(r_f > -1.0)) fail(Errc::InvalidArgument, "risky_rate_exact: r_f must exceed -1");
    const double expected_loss = risk.pi * risk.lambda;
    if (!(expected_loss < 1.0))
        fail(Errc::Unpriceable, "risky_rate_exact: expected loss of one per unit lent cannot be priced");
    return (1.0 + r_f) / (1.0 - expected_loss) - 1.0 + variance_premium;
}

double risk_premium_first_order(const DefaultRisk& risk) {
    risk.validate();
    return risk.pi * risk.lambda;
}

double expected_gross_return(double r_tilde, const DefaultRisk& risk) {
    risk.validate();
    return (1.0 + r_tilde) * (1.0 - risk.pi * risk.lambda);
}

double simulate_default_returns(double r_tilde, const DefaultRisk& risk, std::uint64_t n,
                                std::uint64_t seed) {
    risk.validate();
    if (n < 1) fail(Errc::InvalidArgument, "simulate_default_returns: need at least one draw");
    const double full = 1.0 + r_tilde;
    const double recovered = full * (1.0 - risk.lambda);
    std::uint64_t defaults = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (stream_unit(seed, i) < risk.pi) ++defaults;
    const double nd = static_cast<double>(n);
    return (full * static_cast<double>(n - defaults) + recovered * static_cast<double>(defaults)) / nd;
}

} // namespace ratekit
