#include "csfsim/csf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace csfsim {

double logistic(double t) {
    double w;
    if (t >= 0.0) {
        w = 1.0 / (1.0 + std::exp(-t));
    } else {
        const double e = std::exp(t);
        w = e / (1.0 + e);
    }
    // Keep the result strictly inside (0,1).
    if (w >= 1.0) {
        w = std::nextafter(1.0, 0.0);
    } else if (w <= 0.0) {
        w = std::numeric_limits<double>::denorm_min();
    }
    return w;
}

double tullock_win_pct(const RunTotals& rt, const TullockParams& p) {
    if (!(rt.runs_scored > 0.0) || !(rt.runs_allowed > 0.0)) {
        throw std::domain_error("tullock_win_pct: runs totals must be > 0");
    }
    if (!(p.alpha > 0.0)) {
        throw std::domain_error("tullock_win_pct: alpha must be > 0");
    }
    // rs^a/(rs^a+ra^a) == logistic(a * ln(rs/ra)), exact as an identity.
    const double t = p.alpha * (std::log(rt.runs_scored) - std::log(rt.runs_allowed));
    return logistic(t);
}

double james_win_pct(const RunTotals& rt) {
    return tullock_win_pct(rt, TullockParams{2.0});
}

double difference_win_pct(const RunTotals& rt, const DifferenceParams& p) {
    if (!(rt.runs_scored > 0.0) || !(rt.runs_allowed > 0.0)) {
        throw std::domain_error("difference_win_pct: runs totals must be > 0");
    }
    if (!(p.beta > 0.0)) {
        throw std::domain_error("difference_win_pct: beta must be > 0");
    }
    return logistic(p.beta * (rt.runs_scored - rt.runs_allowed));
}

double expected_wins(double win_pct, int games) {
    if (!(win_pct > 0.0 && win_pct < 1.0)) {
        throw std::domain_error("expected_wins: win_pct must be in (0,1)");
    }
    if (games < 1) {
        throw std::domain_error("expected_wins: games must be >= 1");
    }
    return win_pct * static_cast<double>(games);
}

double luck(double actual_wins, double expected) {
    return actual_wins - expected;
}

}  // namespace csfsim
