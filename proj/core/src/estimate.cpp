#include "csfsim/estimate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "csfsim/csf.hpp"

namespace csfsim {

namespace {

constexpr double kTwoPiLog = 1.8378770664093453;  // ln(2*pi)

struct LinearizedRow {
    double slope_x;
    double win_pct;
    int iteration;
    int team_id;
};

std::vector<LinearizedRow> preprocess(std::span<const TeamSeasonLine> rows,
                                      const FitOptions& opts, bool difference_form) {
    if (rows.empty()) {
        throw std::runtime_error("linearize: no rows");
    }
    std::vector<LinearizedRow> out;
    out.reserve(rows.size());
    std::size_t row_no = 0;
    for (const auto& row : rows) {
        ++row_no;
        if (!(row.rs > 0.0) || !(row.ra > 0.0)) {
            throw std::runtime_error("linearize: row " + std::to_string(row_no) +
                                     " has non-positive run totals");
        }
        const double games = row.wins + row.losses;
        if (!(games > 0.0)) {
            throw std::runtime_error("linearize: row " + std::to_string(row_no) +
                                     " has no games");
        }
        double wins = row.wins;
        if (wins <= 0.0 || wins >= games) {
            if (opts.degenerate_policy == DegeneratePolicy::drop) {
                continue;
            }
            wins = (wins <= 0.0) ? 0.5 : games - 0.5;
        }
        const double wp = wins / games;
        const double x = difference_form ? row.rs - row.ra
                                         : std::log(row.rs) - std::log(row.ra);
        out.push_back({x, wp, row.iteration, row.team_id});
    }
    if (out.empty()) {
        throw std::runtime_error("linearize: every row is degenerate under the drop policy");
    }
    return out;
}

std::vector<RegressionSample> assemble(const std::vector<LinearizedRow>& rows,
                                       const FitOptions& opts) {
    std::set<int> team_set;
    if (opts.fixed_effects) {
        for (const auto& r : rows) {
            team_set.insert(r.team_id);
        }
        if (team_set.size() < 2) {
            throw std::runtime_error("linearize: fixed effects need >= 2 distinct teams");
        }
    }
    // Baseline team for the dummies is the smallest team_id.
    std::vector<int> dummy_teams(team_set.begin(), team_set.end());
    if (!dummy_teams.empty()) {
        dummy_teams.erase(dummy_teams.begin());
    }

    std::vector<RegressionSample> samples;
    samples.reserve(rows.size());
    for (const auto& r : rows) {
        RegressionSample s;
        s.iteration = r.iteration;
        s.team_id = r.team_id;
        s.y = log_odds(r.win_pct);
        if (opts.intercept) {
            s.x.push_back(1.0);
        }
        s.x.push_back(r.slope_x);
        for (const int id : dummy_teams) {
            s.x.push_back(r.team_id == id ? 1.0 : 0.0);
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace

std::string to_string(ModelForm form) {
    return form == ModelForm::tullock ? "tullock" : "difference";
}

ModelForm model_form_from_string(const std::string& name) {
    if (name == "tullock") {
        return ModelForm::tullock;
    }
    if (name == "difference") {
        return ModelForm::difference;
    }
    throw std::runtime_error("unknown model form '" + name + "'");
}

double log_odds(double w) {
    if (!(w > 0.0 && w < 1.0)) {
        throw std::domain_error("log_odds: argument must be in (0,1)");
    }
    return std::log(w / (1.0 - w));
}

std::vector<RegressionSample> linearize_tullock(std::span<const TeamSeasonLine> rows,
                                                const FitOptions& opts) {
    return assemble(preprocess(rows, opts, false), opts);
}

std::vector<RegressionSample> linearize_difference(std::span<const TeamSeasonLine> rows,
                                                   const FitOptions& opts) {
    return assemble(preprocess(rows, opts, true), opts);
}

OlsResult ols(const std::vector<std::vector<double>>& x_rows, const std::vector<double>& y) {
    const auto n = static_cast<Eigen::Index>(x_rows.size());
    if (n == 0 || x_rows.front().empty()) {
        throw std::runtime_error("ols: empty design matrix");
    }
    const auto k = static_cast<Eigen::Index>(x_rows.front().size());
    if (static_cast<std::size_t>(n) != y.size()) {
        throw std::runtime_error("ols: X and y row counts differ");
    }
    if (n < k) {
        throw std::runtime_error("ols: fewer rows than regressors");
    }

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd Y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = x_rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != k) {
            throw std::runtime_error("ols: ragged design matrix at row " + std::to_string(i));
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            X(i, j) = row[static_cast<std::size_t>(j)];
        }
        Y(i) = y[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k) {
        const Eigen::Index bad = qr.colsPermutation().indices()(qr.rank());
        throw std::runtime_error("ols: design matrix is rank deficient (column " +
                                 std::to_string(bad) + ")");
    }
    const Eigen::VectorXd beta = qr.solve(Y);
    const Eigen::VectorXd residuals = Y - X * beta;
    const double rss = residuals.squaredNorm();

    OlsResult out;
    out.coefficients.assign(beta.data(), beta.data() + k);
    out.rss = rss;
    out.standard_errors.resize(static_cast<std::size_t>(k), 0.0);
    if (n > k) {
        const double sigma2 = rss / static_cast<double>(n - k);
        const Eigen::MatrixXd gram_inv =
            (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
        for (Eigen::Index j = 0; j < k; ++j) {
            out.standard_errors[static_cast<std::size_t>(j)] =
                std::sqrt(std::max(0.0, sigma2 * gram_inv(j, j)));
        }
    }
    return out;
}

double gaussian_loglik(double rss, long n) {
    if (!(rss > 0.0)) {
        throw std::domain_error("gaussian_loglik: rss must be > 0 (perfect fit?)");
    }
    if (n < 1) {
        throw std::domain_error("gaussian_loglik: n must be >= 1");
    }
    const double dn = static_cast<double>(n);
    return -(dn / 2.0) * (kTwoPiLog + std::log(rss / dn) + 1.0);
}

double aic(double loglik, int k) {
    return -2.0 * loglik + 2.0 * static_cast<double>(k);
}

double evidence_ratio(double aic_a, double aic_b) {
    return std::exp((aic_b - aic_a) / 2.0);
}

FitReport fit_model(const SimDataset& data, const FitOptions& opts) {
    const auto samples = (opts.form == ModelForm::tullock)
                             ? linearize_tullock(data.rows, opts)
                             : linearize_difference(data.rows, opts);

    std::vector<std::vector<double>> x_rows;
    std::vector<double> y;
    x_rows.reserve(samples.size());
    y.reserve(samples.size());
    for (const auto& s : samples) {
        x_rows.push_back(s.x);
        y.push_back(s.y);
    }

    const OlsResult fit = ols(x_rows, y);

    FitReport report;
    report.form = opts.form;
    report.options = opts;
    report.coefficients = fit.coefficients;
    report.standard_errors = fit.standard_errors;
    report.n = static_cast<long>(samples.size());
    report.k = static_cast<int>(fit.coefficients.size()) + 1;
    report.rss = fit.rss;

    const double dn = static_cast<double>(report.n);
    double ybar = 0.0;
    for (const double v : y) {
        ybar += v;
    }
    ybar /= dn;
    double tss = 0.0;
    double tss_uncentered = 0.0;
    for (const double v : y) {
        tss += (v - ybar) * (v - ybar);
        tss_uncentered += v * v;
    }
    report.r2 = tss > 0.0 ? 1.0 - fit.rss / tss : (fit.rss == 0.0 ? 1.0 : 0.0);
    report.r2_uncentered =
        tss_uncentered > 0.0 ? 1.0 - fit.rss / tss_uncentered : (fit.rss == 0.0 ? 1.0 : 0.0);
    report.rmse = std::sqrt(fit.rss / dn);

    double wp_sq_err = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double yhat = 0.0;
        for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
            yhat += samples[i].x[j] * fit.coefficients[j];
        }
        const double w_hat = logistic(yhat);
        const double w_obs = logistic(samples[i].y);
        wp_sq_err += (w_hat - w_obs) * (w_hat - w_obs);
    }
    report.rmse_win_pct = std::sqrt(wp_sq_err / dn);

    if (fit.rss > 0.0) {
        report.loglik = gaussian_loglik(fit.rss, report.n);
        report.aic = aic(report.loglik, report.k);
    } else {
        report.perfect_fit = true;
        report.loglik = std::numeric_limits<double>::infinity();
        report.aic = -std::numeric_limits<double>::infinity();
    }
    return report;
}

ComparisonReport compare_models(const SimDataset& data, FitOptions opts) {
    ComparisonReport report;
    opts.form = ModelForm::tullock;
    report.tullock = fit_model(data, opts);
    opts.form = ModelForm::difference;
    report.difference = fit_model(data, opts);

    report.evidence_log = (report.difference.aic - report.tullock.aic) / 2.0;
    if (std::isnan(report.evidence_log)) {
        // both fits perfect: treat as a tie
        report.evidence_log = 0.0;
    }
    report.evidence_ratio = std::exp(report.evidence_log);
    report.preferred = report.tullock.aic <= report.difference.aic ? ModelForm::tullock
                                                                   : ModelForm::difference;
    return report;
}

}  // namespace csfsim
