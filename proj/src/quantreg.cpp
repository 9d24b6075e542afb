#include "oilrisk/quantreg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "oilrisk/distributions.hpp"
#include "oilrisk/errors.hpp"

namespace oilrisk {

namespace {

constexpr double kStepFactor = 0.99995;  // fraction of the step to the boundary

std::vector<double> compute_residuals(const Matrix& x, std::span<const double> y,
                                      std::span<const double> beta,
                                      std::vector<double>& fitted) {
    fitted = matvec(x, beta);
    std::vector<double> r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] - fitted[i];
    return r;
}

// Rank probe: Householder pivots of the design must all be usable.
void require_full_rank(const Matrix& x) {
    std::vector<double> zero(x.rows(), 0.0);
    householder_lstsq(x, zero);  // throws DataError when rank deficient
}

// Vertex polish: an optimal quantile regression interpolates p observations,
// so after the interior point converges, solve the interpolation system
// through the p smallest-|residual| rows and report that vertex when its
// loss is no worse (within tolerance). This sharpens near-converged unique
// optima to exact order statistics and breaks flat-optimum ties toward a
// deterministic face vertex.
void polish_vertex(const Matrix& x, std::span<const double> y, double tau,
                   std::vector<double>& beta, double& loss) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (n < p) return;

    std::vector<double> fitted;
    const auto r = compute_residuals(x, y, beta, fitted);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(r[a]) < std::abs(r[b]); });

    Matrix xs(p, p);
    std::vector<double> ys(p);
    for (std::size_t k = 0; k < p; ++k) {
        for (std::size_t j = 0; j < p; ++j) xs(k, j) = x(order[k], j);
        ys[k] = y[order[k]];
    }
    std::vector<double> candidate;
    try {
        candidate = householder_lstsq(xs, ys);
    } catch (const DataError&) {
        return;  // degenerate subset; stay with the interior-point iterate
    }
    std::vector<double> cf;
    const auto cr = compute_residuals(x, y, candidate, cf);
    const double closs = total_check_loss(cr, tau);
    if (closs <= loss + 1e-12 * (1.0 + std::abs(loss))) {
        beta = std::move(candidate);
        loss = closs;
    }
}

}  // namespace

double check_loss(double u, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::domain_error("check_loss: tau must lie in (0,1)");
    }
    return u * (tau - (u < 0.0 ? 1.0 : 0.0));
}

double total_check_loss(std::span<const double> residuals, double tau) {
    double s = 0.0;
    for (double u : residuals) s += check_loss(u, tau);
    return s;
}

void ModelSpec::validate(const FactorPanel& panel) const {
    for (const auto& f : factors) {
        static_cast<void>(panel.factor_index(f));  // throws when absent
    }
    for (const auto& d : dummies) {
        if (d.values.size() != panel.rows()) {
            throw std::invalid_argument("dummy column '" + d.name + "' has wrong length");
        }
        for (double v : d.values) {
            if (v != 0.0 && v != 1.0) {
                throw std::invalid_argument("dummy column '" + d.name + "' is not binary");
            }
        }
    }
}

Design build_design(const FactorPanel& panel, const ModelSpec& spec) {
    spec.validate(panel);
    const std::size_t n = panel.rows();
    const std::size_t p = (spec.intercept ? 1 : 0) + spec.factors.size() + spec.dummies.size();
    Design design;
    design.x = Matrix(n, p);
    std::size_t col = 0;
    if (spec.intercept) {
        for (std::size_t i = 0; i < n; ++i) design.x(i, col) = 1.0;
        design.names.push_back("Intercept");
        ++col;
    }
    for (const auto& f : spec.factors) {
        design.x.set_column(col, panel.factors.column(panel.factor_index(f)));
        design.names.push_back(f);
        ++col;
    }
    for (const auto& d : spec.dummies) {
        design.x.set_column(col, d.values);
        design.names.push_back(d.name);
        ++col;
    }
    return design;
}

double QrFit::coefficient(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return coefficients[j];
    }
    throw std::invalid_argument("no coefficient named '" + name + "'");
}

double OlsFit::coefficient(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j] == name) return coefficients[j];
    }
    throw std::invalid_argument("no coefficient named '" + name + "'");
}

// Interior-point quantile regression.
//
// The dual of min_b sum rho_tau(y - Xb) is the bounded LP
//     min c'a  s.t.  X'a = (1-tau) X'1,  0 <= a <= 1,  c = -y,
// whose equality multipliers are -beta. Solved with a Mehrotra
// predictor-corrector; each iteration reduces to a p x p Cholesky solve of
// X' D X with D the complementarity scaling.
QrFit fit_qr(const Matrix& x, std::span<const double> y,
             const std::vector<std::string>& names, double tau, QrOptions options) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("fit_qr: tau must lie in (0,1)");
    if (y.size() != n) throw std::invalid_argument("fit_qr: y length mismatch");
    if (n <= p + 1) throw std::invalid_argument("fit_qr: need n > p + 1");
    require_full_rank(x);

    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = -y[i];

    std::vector<double> a(n, 1.0 - tau);   // primal, X'a = rhs exactly
    std::vector<double> s(n, tau);         // slack to the upper bound
    std::vector<double> z(n), w(n), nu(p);

    // Initial multipliers from the unweighted normal equations.
    {
        std::vector<double> ones(n, 1.0);
        Matrix m = cross_weighted(x, ones);
        if (!cholesky_solve(m, matvec_t(x, c), nu)) {
            throw DataError("fit_qr: design matrix is rank deficient");
        }
        const auto xnu = matvec(x, nu);
        for (std::size_t i = 0; i < n; ++i) {
            const double chat = c[i] - xnu[i];
            z[i] = std::max(chat, 0.0) + 1e-4;
            w[i] = std::max(-chat, 0.0) + 1e-4;
        }
    }

    double gap = std::inner_product(a.begin(), a.end(), z.begin(), 0.0) +
                 std::inner_product(s.begin(), s.end(), w.begin(), 0.0);
    int it = 0;
    std::vector<double> d(n), dx(n), dz(n), dw(n), rhs_vec(n), nu_hat(p);

    while (gap > options.tol && it < options.max_iter) {
        ++it;
        for (std::size_t i = 0; i < n; ++i) d[i] = 1.0 / (z[i] / a[i] + w[i] / s[i]);

        // Affine direction: (X'DX) nu_hat = X'D c, dx = D (X nu_hat - c).
        for (std::size_t i = 0; i < n; ++i) rhs_vec[i] = d[i] * c[i];
        Matrix m = cross_weighted(x, d);
        if (!cholesky_solve(m, matvec_t(x, rhs_vec), nu_hat)) {
            // Near-degenerate scaling; tiny ridge keeps the factorization alive.
            Matrix mj = m;
            double tr = 0.0;
            for (std::size_t q = 0; q < p; ++q) tr += m(q, q);
            for (std::size_t q = 0; q < p; ++q) mj(q, q) += 1e-13 * (tr + 1.0);
            if (!cholesky_solve(mj, matvec_t(x, rhs_vec), nu_hat)) {
                throw SolverError("fit_qr: normal system breakdown", it, gap);
            }
        }
        const auto xnu = matvec(x, nu_hat);
        for (std::size_t i = 0; i < n; ++i) {
            dx[i] = d[i] * (xnu[i] - c[i]);
            dz[i] = -z[i] - (z[i] / a[i]) * dx[i];
            dw[i] = -w[i] + (w[i] / s[i]) * dx[i];
        }

        auto step_to_boundary = [&](const std::vector<double>& v, const std::vector<double>& dv,
                                    bool negate) {
            double alpha = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                const double di = negate ? -dv[i] : dv[i];
                if (di < 0.0) alpha = std::min(alpha, -v[i] / di);
            }
            return alpha;
        };
        double alpha_p =
            std::min(step_to_boundary(a, dx, false), step_to_boundary(s, dx, true));
        double alpha_d =
            std::min(step_to_boundary(z, dz, false), step_to_boundary(w, dw, false));
        alpha_p = std::min(1.0, kStepFactor * alpha_p);
        alpha_d = std::min(1.0, kStepFactor * alpha_d);

        if (std::min(alpha_p, alpha_d) < 1.0) {
            // Mehrotra corrector.
            double g_aff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                g_aff += (a[i] + alpha_p * dx[i]) * (z[i] + alpha_d * dz[i]) +
                         (s[i] - alpha_p * dx[i]) * (w[i] + alpha_d * dw[i]);
            }
            const double sigma = std::pow(g_aff / gap, 3);
            const double mu_target = sigma * gap / (2.0 * static_cast<double>(n));

            for (std::size_t i = 0; i < n; ++i) {
                const double corr_z = (mu_target - dx[i] * dz[i]) / a[i];
                const double corr_w = (mu_target + dx[i] * dw[i]) / s[i];  // ds = -dx
                rhs_vec[i] = d[i] * (c[i] - (corr_z - corr_w));
            }
            Matrix m2 = cross_weighted(x, d);
            if (!cholesky_solve(m2, matvec_t(x, rhs_vec), nu_hat)) {
                throw SolverError("fit_qr: corrector system breakdown", it, gap);
            }
            const auto xnu2 = matvec(x, nu_hat);
            for (std::size_t i = 0; i < n; ++i) {
                const double corr_z = (mu_target - dx[i] * dz[i]) / a[i];
                const double corr_w = (mu_target + dx[i] * dw[i]) / s[i];
                const double dxi = d[i] * (xnu2[i] - c[i] + (corr_z - corr_w));
                dz[i] = -z[i] - (z[i] / a[i]) * dxi + corr_z;
                dw[i] = -w[i] + (w[i] / s[i]) * dxi + corr_w;
                dx[i] = dxi;
            }
            alpha_p = std::min(step_to_boundary(a, dx, false), step_to_boundary(s, dx, true));
            alpha_d = std::min(step_to_boundary(z, dz, false), step_to_boundary(w, dw, false));
            alpha_p = std::min(1.0, kStepFactor * alpha_p);
            alpha_d = std::min(1.0, kStepFactor * alpha_d);
        }

        for (std::size_t i = 0; i < n; ++i) {
            a[i] += alpha_p * dx[i];
            s[i] -= alpha_p * dx[i];
            z[i] += alpha_d * dz[i];
            w[i] += alpha_d * dw[i];
        }
        for (std::size_t j = 0; j < p; ++j) nu[j] += alpha_d * (nu_hat[j] - nu[j]);

        gap = std::inner_product(a.begin(), a.end(), z.begin(), 0.0) +
              std::inner_product(s.begin(), s.end(), w.begin(), 0.0);
    }

    if (gap > options.tol) {
        throw SolverError("fit_qr: duality gap " + std::to_string(gap) + " after " +
                              std::to_string(it) + " iterations",
                          it, gap);
    }

    std::vector<double> beta(p);
    for (std::size_t j = 0; j < p; ++j) beta[j] = -nu[j];

    std::vector<double> fitted;
    auto residuals = compute_residuals(x, y, beta, fitted);
    double loss = total_check_loss(residuals, tau);
    polish_vertex(x, y, tau, beta, loss);
    residuals = compute_residuals(x, y, beta, fitted);
    loss = total_check_loss(residuals, tau);

    QrFit fit;
    fit.tau = tau;
    fit.names = names.empty() ? std::vector<std::string>(p, "") : names;
    if (fit.names.size() != p) throw std::invalid_argument("fit_qr: name count mismatch");
    fit.coefficients = std::move(beta);
    fit.residuals = std::move(residuals);
    fit.fitted = std::move(fitted);
    fit.check_loss = loss;
    fit.iterations = it;
    return fit;
}

QrFit fit_qr(const FactorPanel& panel, const ModelSpec& spec, double tau, QrOptions options) {
    const auto design = build_design(panel, spec);
    auto fit = fit_qr(design.x, panel.target, design.names, tau, options);
    fit.pseudo_r2 = pseudo_r2(fit, panel.target);
    return fit;
}

double pseudo_r2(const QrFit& fit, std::span<const double> y) {
    // Intercept-only loss from a constant-column fit of the same solver.
    Matrix ones(y.size(), 1, 1.0);
    const auto base = fit_qr(ones, y, {"Intercept"}, fit.tau);
    double scale = 0.0;
    for (double v : y) scale += std::abs(v);
    if (base.check_loss <= 1e-12 * (1.0 + scale)) {
        throw std::domain_error("pseudo_r2 undefined: intercept-only check loss is zero");
    }
    const double r2 = 1.0 - fit.check_loss / base.check_loss;
    return std::max(0.0, r2);
}

OlsFit fit_ols(const Matrix& x, std::span<const double> y,
               const std::vector<std::string>& names) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (y.size() != n) throw std::invalid_argument("fit_ols: y length mismatch");
    if (n <= p) throw std::invalid_argument("fit_ols: need n > p");

    OlsFit fit;
    fit.names = names.empty() ? std::vector<std::string>(p, "") : names;
    if (fit.names.size() != p) throw std::invalid_argument("fit_ols: name count mismatch");
    fit.coefficients = householder_lstsq(x, y);
    fit.fitted = matvec(x, fit.coefficients);
    fit.residuals.resize(n);
    double rss = 0.0, tss = 0.0;
    double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = y[i] - fit.fitted[i];
        rss += fit.residuals[i] * fit.residuals[i];
        tss += (y[i] - mean) * (y[i] - mean);
    }
    fit.sigma2 = rss / static_cast<double>(n - p);
    fit.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    return fit;
}

OlsFit fit_ols(const FactorPanel& panel, const ModelSpec& spec) {
    const auto design = build_design(panel, spec);
    return fit_ols(design.x, panel.target, design.names);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over the combined state; cheap and collision-free enough
    // for seeding independent generators.
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

BootstrapInference bootstrap_se(const Matrix& x, std::span<const double> y,
                                const std::vector<std::string>& names, double tau,
                                int replications, std::uint64_t seed, QrOptions options) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (replications < 100) {
        throw std::invalid_argument("bootstrap_se: replication count must be >= 100");
    }

    // Fit once on the full sample for the t-ratio point estimates.
    const auto full = fit_qr(x, y, names, tau, options);

    std::vector<std::vector<double>> draws(p);
    int dropped = 0;

    std::vector<std::size_t> rows(n);
    Matrix xb(n, p);
    std::vector<double> yb(n);

    for (int rep = 0; rep < replications; ++rep) {
        std::mt19937_64 rng(replicate_seed(seed, static_cast<std::uint64_t>(rep)));
        for (std::size_t i = 0; i < n; ++i) {
            // Lemire multiply-shift keeps index sampling identical across
            // standard libraries.
            const unsigned __int128 wide =
                static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n);
            rows[i] = static_cast<std::size_t>(wide >> 64);
        }

        // Indicator columns can vanish from a resample; exclude them from
        // this replicate rather than discarding it.
        std::vector<std::size_t> live;
        for (std::size_t j = 0; j < p; ++j) {
            bool nonzero = false;
            for (std::size_t i = 0; i < n && !nonzero; ++i) {
                if (x(rows[i], j) != 0.0) nonzero = true;
            }
            if (nonzero) live.push_back(j);
        }

        Matrix xr(n, live.size());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < live.size(); ++j) xr(i, j) = x(rows[i], live[j]);
            yb[i] = y[rows[i]];
        }

        try {
            const auto fit = fit_qr(xr, yb, std::vector<std::string>(live.size(), ""), tau,
                                    options);
            for (std::size_t j = 0; j < live.size(); ++j) {
                draws[live[j]].push_back(fit.coefficients[j]);
            }
        } catch (const DataError&) {
            ++dropped;
        } catch (const SolverError&) {
            ++dropped;
        }
    }

    if (dropped * 5 > replications) {
        throw InferenceError("bootstrap_se: " + std::to_string(dropped) + " of " +
                             std::to_string(replications) + " replicates were rank deficient");
    }

    BootstrapInference out;
    out.names = full.names;
    out.std_errors.resize(p);
    out.p_values.resize(p);
    out.replicate_counts.resize(p);
    out.dropped = dropped;
    for (std::size_t j = 0; j < p; ++j) {
        const auto& v = draws[j];
        out.replicate_counts[j] = static_cast<int>(v.size());
        if (v.size() < 2) {
            out.std_errors[j] = std::numeric_limits<double>::quiet_NaN();
            out.p_values[j] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        double ss = 0.0;
        for (double b : v) ss += (b - mean) * (b - mean);
        const double se = std::sqrt(ss / (v.size() - 1));
        out.std_errors[j] = se;
        if (se == 0.0) {
            out.p_values[j] = full.coefficients[j] == 0.0 ? 1.0 : 0.0;
        } else {
            const double t = std::abs(full.coefficients[j]) / se;
            out.p_values[j] = 2.0 * (1.0 - normal_cdf(t));
        }
    }
    return out;
}

BootstrapInference bootstrap_se(const FactorPanel& panel, const ModelSpec& spec, double tau,
                                int replications, std::uint64_t seed, QrOptions options) {
    const auto design = build_design(panel, spec);
    return bootstrap_se(design.x, panel.target, design.names, tau, replications, seed, options);
}

TestResult joint_zero_ftest(const FactorPanel& panel, const ModelSpec& spec,
                            const std::vector<std::string>& restricted) {
    if (restricted.empty()) {
        throw std::invalid_argument("joint_zero_ftest: restricted set is empty");
    }
    std::set<std::string> drop(restricted.begin(), restricted.end());
    for (const auto& name : restricted) {
        if (std::find(spec.factors.begin(), spec.factors.end(), name) == spec.factors.end()) {
            throw std::invalid_argument("joint_zero_ftest: '" + name + "' is not in the model");
        }
    }

    const auto full = fit_ols(panel, spec);
    ModelSpec reduced = spec;
    reduced.factors.clear();
    for (const auto& f : spec.factors) {
        if (!drop.count(f)) reduced.factors.push_back(f);
    }
    const auto restricted_fit = fit_ols(panel, reduced);

    const double n = static_cast<double>(panel.rows());
    const double p = static_cast<double>(full.n_params());
    const double q = static_cast<double>(restricted.size());
    double rss_f = 0.0, rss_r = 0.0;
    for (double e : full.residuals) rss_f += e * e;
    for (double e : restricted_fit.residuals) rss_r += e * e;

    TestResult result;
    result.name = "joint-f";
    result.statistic = ((rss_r - rss_f) / q) / (rss_f / (n - p));
    result.df1 = q;
    result.df2 = n - p;
    result.p_value = 1.0 - f_cdf(result.statistic, q, n - p);
    result.verdict = *result.p_value < 0.05 ? Verdict::Reject : Verdict::FailToReject;
    return result;
}

std::vector<std::string> crossing_warnings(const Matrix& x, const std::vector<QrFit>& fits) {
    std::vector<std::string> warnings;
    if (fits.size() < 2) return warnings;
    const std::size_t p = x.cols();
    std::vector<double> mean_row(p, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < p; ++j) mean_row[j] += x(i, j);
    }
    for (double& m : mean_row) m /= static_cast<double>(x.rows());

    auto fitted_at_mean = [&](const QrFit& f) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) s += mean_row[j] * f.coefficients[j];
        return s;
    };

    std::vector<const QrFit*> ordered;
    for (const auto& f : fits) ordered.push_back(&f);
    std::sort(ordered.begin(), ordered.end(),
              [](const QrFit* a, const QrFit* b) { return a->tau < b->tau; });
    for (std::size_t k = 1; k < ordered.size(); ++k) {
        const double lo = fitted_at_mean(*ordered[k - 1]);
        const double hi = fitted_at_mean(*ordered[k]);
        if (hi < lo) {
            warnings.push_back("quantile crossing at the mean point between tau=" +
                               std::to_string(ordered[k - 1]->tau) + " and tau=" +
                               std::to_string(ordered[k]->tau));
        }
    }
    return warnings;
}

}  // namespace oilrisk
