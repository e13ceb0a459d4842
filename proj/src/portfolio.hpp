#pragma once

#include "consumer.hpp"

namespace ratekit {

// Savings split between non-interest-bearing cash and bonds paying gross
// 1 + r, both constrained nonnegative. kkt_mu and kkt_nu are the
// multipliers on cash >= 0 and bonds >= 0.
struct PortfolioAllocation {
    double c1 = 0.0;
    double c2 = 0.0;
    double cash = 0.0;
    double bonds = 0.0;
    double kkt_mu = 0.0;
    double kkt_nu = 0.0;
};

// True iff holding cash is strictly dominated by bonds, i.e. r > 0.
bool cash_dominated(double r);

// Two-stage problem: choose (c1, c2, cash, bonds) subject to
// c1 + cash + bonds = m1 and c2 = m2 + cash + (1+r) bonds. For r > 0 the
// solution holds no cash and the consumption pair coincides with
// solve_consumption; at r = 0 the instruments are identical and the tie is
// broken by holding all savings in bonds. There is no borrowing
// instrument: an agent who would like c1 > m1 consumes the endowment.
PortfolioAllocation solve_portfolio(const Preferences& prefs, const Endowment& endow, double r);

} // namespace ratekit
