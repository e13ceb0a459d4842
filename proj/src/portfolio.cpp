#include "portfolio.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace ratekit {

bool cash_dominated(double r) {
    if (!(r >= 0.0)) fail(Errc::InvalidArgument, "cash_dominated: rate must be nonnegative");
    return r > 0.0;
}

PortfolioAllocation solve_portfolio(const Preferences& prefs, const Endowment& endow, double r) {
    prefs.validate();
    endow.validate();
    if (!(r >= 0.0)) fail(Errc::InvalidArgument, "solve_portfolio: rate must be nonnegative");
    if (!(endow.m1 > 0.0))
        fail(Errc::Infeasible, "solve_portfolio: m1 = 0 leaves nothing to consume or save in period 1");

    const Allocation unconstrained = solve_consumption(prefs, endow, r);

    PortfolioAllocation out;
    const double snap = 1e-9 * std::max(1.0, endow.m1);
    if (unconstrained.savings >= -snap) {
        out.c1 = unconstrained.c1;
        out.c2 = unconstrained.c2;
        out.bonds = std::max(0.0, unconstrained.savings);
    } else {
        // Desired borrowing has no instrument here; the corner with both
        // asset constraints binding is the KKT solution.
        out.c1 = endow.m1;
        out.c2 = endow.m2;
        out.bonds = 0.0;
    }
    out.cash = 0.0;

    const double beta = prefs.beta();
    const double mu1 = prefs.utility.marginal(out.c1);
    const double mu2 = prefs.utility.marginal(out.c2);
    out.kkt_mu = mu1 - beta * mu2;
    out.kkt_nu = mu1 - beta * (1.0 + r) * mu2;
    return out;
}

} // namespace ratekit
