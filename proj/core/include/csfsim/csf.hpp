#pragma once

namespace csfsim {

/// Season run totals for one team. Both totals must be strictly positive;
/// the log-linearized estimators cannot handle zero or negative runs.
struct RunTotals {
    double runs_scored;
    double runs_allowed;
};

/// Exponent of the ratio-form (Tullock) win model. Larger alpha means a
/// less noisy mapping from runs to wins.
struct TullockParams {
    double alpha;
};

/// Log-odds sensitivity of the difference-form win model, per run of
/// season run differential.
struct DifferenceParams {
    double beta;
};

/// Numerically safe logistic 1/(1+e^-t). Saturates toward 0 and 1 but
/// never returns either endpoint exactly, so log-odds of the result
/// stays finite.
double logistic(double t);

/// Ratio-form expected win percentage rs^a / (rs^a + ra^a), evaluated in
/// log space so large exponents do not overflow.
/// Throws std::domain_error on non-positive runs or alpha.
double tullock_win_pct(const RunTotals& rt, const TullockParams& p);

/// Classic Pythagorean expectation: the ratio form with exponent fixed at 2.
double james_win_pct(const RunTotals& rt);

/// Difference-form expected win percentage 1/(1 + e^{beta*(ra - rs)}).
/// Throws std::domain_error on non-positive runs or beta.
double difference_win_pct(const RunTotals& rt, const DifferenceParams& p);

/// Win probability times games played.
/// Throws std::domain_error unless 0 < win_pct < 1 and games >= 1.
double expected_wins(double win_pct, int games);

/// Actual wins minus expected wins.
double luck(double actual_wins, double expected);

}  // namespace csfsim
