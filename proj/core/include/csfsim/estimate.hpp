#pragma once

#include <span>
#include <string>
#include <vector>

#include "csfsim/sim.hpp"

namespace csfsim {

enum class ModelForm { tullock, difference };

std::string to_string(ModelForm form);
ModelForm model_form_from_string(const std::string& name);

/// What to do with a degenerate season (win percentage exactly 0 or 1,
/// whose log-odds is infinite).
enum class DegeneratePolicy {
    drop,            ///< remove the row (changes n)
    clamp_half_win,  ///< replace wins with 0.5 or G - 0.5
};

struct FitOptions {
    ModelForm form = ModelForm::tullock;
    bool fixed_effects = false;
    DegeneratePolicy degenerate_policy = DegeneratePolicy::clamp_half_win;
    bool intercept = false;
};

/// One transformed observation. Regressor layout:
/// [intercept?] [slope regressor] [T-1 team dummies?].
struct RegressionSample {
    std::vector<double> x;
    double y;
    int iteration;
    int team_id;
};

/// One fitted model: one column of the comparison table.
struct FitReport {
    ModelForm form = ModelForm::tullock;
    FitOptions options;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    long n = 0;
    int k = 0;  ///< AIC parameter count = coefficients + 1 (error variance)
    double rss = 0.0;
    double r2 = 0.0;             ///< centered, even for through-origin fits
    double r2_uncentered = 0.0;  ///< secondary: 1 - rss / sum(y^2)
    double rmse = 0.0;           ///< sqrt(rss/n) on the log-odds scale
    double rmse_win_pct = 0.0;   ///< secondary: RMSE on the win-percentage scale
    double loglik = 0.0;
    double aic = 0.0;
    bool perfect_fit = false;  ///< rss == 0; loglik/aic carry +inf/-inf sentinels
};

struct ComparisonReport {
    FitReport tullock;
    FitReport difference;
    double evidence_ratio = 1.0;  ///< P(tullock) / P(difference)
    double evidence_log = 0.0;    ///< natural-log exponent (aic_d - aic_t)/2
    ModelForm preferred = ModelForm::tullock;
};

/// ln(w / (1-w)). Throws std::domain_error unless 0 < w < 1.
double log_odds(double w);

/// Transforms rows for the ratio-form fit: x = ln(rs/ra), y = log-odds of
/// win percentage. Throws std::runtime_error if a row has non-positive runs
/// or if the drop policy removes every row.
std::vector<RegressionSample> linearize_tullock(std::span<const TeamSeasonLine> rows,
                                                const FitOptions& opts);

/// Transforms rows for the difference-form fit: x = rs - ra, same y.
std::vector<RegressionSample> linearize_difference(std::span<const TeamSeasonLine> rows,
                                                   const FitOptions& opts);

struct OlsResult {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    double rss = 0.0;
};

/// Least squares via Householder QR with column pivoting. Standard errors
/// are sqrt(rss/(n-k)) times sqrt(diag((X'X)^-1)).
/// Throws std::runtime_error naming the offending column if X is rank
/// deficient, or if n < k.
OlsResult ols(const std::vector<std::vector<double>>& x_rows,
              const std::vector<double>& y);

/// Profile Gaussian log-likelihood of an OLS fit:
/// -(n/2) * (ln 2pi + ln(rss/n) + 1).
/// Throws std::domain_error at rss <= 0 (callers report a perfect fit
/// with an infinite sentinel instead).
double gaussian_loglik(double rss, long n);

/// Akaike information criterion -2*loglik + 2*k.
double aic(double loglik, int k);

/// Relative likelihood exp((aic_b - aic_a)/2) that model a minimizes
/// information loss versus model b. Underflows saturate to 0; callers
/// wanting the magnitude keep the exponent (aic_b - aic_a)/2.
double evidence_ratio(double aic_a, double aic_b);

FitReport fit_model(const SimDataset& data, const FitOptions& opts);

ComparisonReport compare_models(const SimDataset& data, FitOptions opts);

}  // namespace csfsim
