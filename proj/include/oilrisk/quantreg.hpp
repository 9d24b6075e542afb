#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oilrisk/linalg.hpp"
#include "oilrisk/panel.hpp"
#include "oilrisk/testresult.hpp"

namespace oilrisk {

struct NamedColumn {
    std::string name;
    std::vector<double> values;
};

// Declarative description of one regression.
struct ModelSpec {
    std::string target;
    std::vector<std::string> factors;
    bool intercept = true;
    std::vector<double> quantiles;
    std::vector<NamedColumn> dummies;  // binary indicator columns

    void validate(const FactorPanel& panel) const;
};

// Design matrix [intercept | factors | dummies] with column names.
struct Design {
    Matrix x;
    std::vector<std::string> names;
};
Design build_design(const FactorPanel& panel, const ModelSpec& spec);

// Pinball loss rho_tau(u) = u * (tau - 1{u < 0}). tau must lie in (0,1).
double check_loss(double u, double tau);
double total_check_loss(std::span<const double> residuals, double tau);

struct QrOptions {
    double tol = 1e-8;  // duality gap convergence threshold
    int max_iter = 200;
};

// Fitted quantile regression at one tau.
struct QrFit {
    double tau = 0.5;
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;  // empty until bootstrap inference runs
    std::vector<double> p_values;    // ditto
    std::vector<double> residuals;   // y - X beta, exactly
    std::vector<double> fitted;
    double check_loss = 0.0;
    double pseudo_r2 = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;

    [[nodiscard]] double coefficient(const std::string& name) const;
};

// Minimizes sum rho_tau(y - X beta) through the equivalent bounded-variable
// LP, solved by a Mehrotra predictor-corrector interior-point method.
// Throws DataError on rank-deficient designs and SolverError (with the
// iteration trace) when the duality gap fails to close.
QrFit fit_qr(const Matrix& x, std::span<const double> y,
             const std::vector<std::string>& names, double tau, QrOptions options = {});
QrFit fit_qr(const FactorPanel& panel, const ModelSpec& spec, double tau,
             QrOptions options = {});

// Koenker-Machado R1(tau) = 1 - V_full / V_intercept. Throws
// std::domain_error when the intercept-only loss is zero (constant target).
double pseudo_r2(const QrFit& fit, std::span<const double> y);

struct OlsFit {
    std::vector<std::string> names;
    std::vector<double> coefficients;
    std::vector<double> residuals;
    std::vector<double> fitted;
    double r2 = 0.0;
    double sigma2 = 0.0;  // RSS / (n - p)

    [[nodiscard]] std::size_t n_params() const { return names.size(); }
    [[nodiscard]] double coefficient(const std::string& name) const;
};

// Least squares via Householder QR of the design matrix.
OlsFit fit_ols(const Matrix& x, std::span<const double> y,
               const std::vector<std::string>& names);
OlsFit fit_ols(const FactorPanel& panel, const ModelSpec& spec);

struct BootstrapInference {
    std::vector<std::string> names;
    std::vector<double> std_errors;
    std::vector<double> p_values;        // two-sided normal approximation
    std::vector<int> replicate_counts;   // replicates contributing per coefficient
    int dropped = 0;                     // rank-deficient replicates discarded
};

// Pairs bootstrap: resample rows with replacement B times, refit, take the
// standard deviation of each coefficient across replicates. Deterministic
// given (seed); every replicate derives its own sub-seed from (seed, index).
// A replicate whose resampled design is rank-deficient is dropped; more than
// 20% dropped raises InferenceError. Indicator columns that vanish from a
// resample (all zero) are excluded from that replicate only, and their
// coefficients are summarized over the replicates that retain them.
BootstrapInference bootstrap_se(const Matrix& x, std::span<const double> y,
                                const std::vector<std::string>& names, double tau,
                                int replications, std::uint64_t seed,
                                QrOptions options = {});
BootstrapInference bootstrap_se(const FactorPanel& panel, const ModelSpec& spec,
                                double tau, int replications, std::uint64_t seed,
                                QrOptions options = {});

// F-test that the named factors are jointly zero in the least-squares fit.
TestResult joint_zero_ftest(const FactorPanel& panel, const ModelSpec& spec,
                            const std::vector<std::string>& restricted);

// Mean-point quantile ordering check: returns a warning line per adjacent
// pair of fits whose fitted value at the column means decreases as tau
// increases. Reported, never enforced.
std::vector<std::string> crossing_warnings(const Matrix& x,
                                           const std::vector<QrFit>& fits);

// Deterministic per-replicate seed stream (splitmix64 over (seed, index)).
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace oilrisk
