#include "cutpoint/nrm.hpp"

#include <cmath>

#include "cutpoint/errors.hpp"
#include "cutpoint/special_functions.hpp"

namespace cutpoint {

namespace {

double dot_affine(const std::vector<double>& beta, const std::vector<double>& z) {
    if (beta.size() != z.size() + 1) throw ComputeError("NRM: covariate dimension mismatch");
    double v = beta[0];
    for (std::size_t j = 0; j < z.size(); ++j) v += beta[j + 1] * z[j];
    return v;
}

// Solves the (p+1)x(p+1) normal equations by Gaussian elimination with
// partial pivoting.
std::vector<double> solve_normal_equations(std::vector<std::vector<double>> m, std::vector<double> rhs) {
    const std::size_t k = rhs.size();
    double scale = 0.0;
    for (auto& row : m)
        for (double v : row) scale = std::max(scale, std::fabs(v));
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12 * std::max(1.0, scale))
            throw ComputeError("nrm_fit: rank-deficient design matrix");
        std::swap(m[col], m[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = col + 1; r < k; ++r) {
            double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> beta(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t c = i + 1; c < k; ++c) v -= m[i][c] * beta[c];
        beta[i] = v / m[i][i];
    }
    return beta;
}

void fit_class(const Dataset& d, int y, std::vector<double>& beta, double& sigma) {
    const std::size_t p = d.dim();
    const std::size_t k = p + 1;

    std::size_t n_class = 0;
    std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (const auto& s : d.samples()) {
        if (s.y != y) continue;
        ++n_class;
        std::vector<double> row(k, 1.0);
        for (std::size_t j = 0; j < p; ++j) row[j + 1] = s.z[j];
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b <= a; ++b) xtx[a][b] += row[a] * row[b];
            xty[a] += row[a] * s.x;
        }
    }
    if (n_class < k + 1)
        throw ComputeError("nrm_fit: class " + std::string(y > 0 ? "+1" : "-1") +
                           " needs at least p + 2 samples");
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) xtx[a][b] = xtx[b][a];

    beta = solve_normal_equations(xtx, xty);

    double ssr = 0.0, marker_scale = 0.0;
    for (const auto& s : d.samples()) {
        if (s.y != y) continue;
        double r = s.x - dot_affine(beta, s.z);
        ssr += r * r;
        marker_scale = std::max(marker_scale, std::fabs(s.x));
    }
    sigma = std::sqrt(std::max(ssr, 0.0) / static_cast<double>(n_class - k));
    if (sigma < 1e-10 * std::max(1.0, marker_scale))
        throw ComputeError("nrm_fit: residual SD is numerically zero (exactly linear class)");
}

}  // namespace

double NrmModel::mean_pos(const std::vector<double>& z) const { return dot_affine(beta_pos, z); }
double NrmModel::mean_neg(const std::vector<double>& z) const { return dot_affine(beta_neg, z); }

NrmModel nrm_fit(const Dataset& d) {
    NrmModel m;
    fit_class(d, +1, m.beta_pos, m.sigma_pos);
    fit_class(d, -1, m.beta_neg, m.sigma_neg);
    return m;
}

double nrm_cut(const NrmModel& m, const std::vector<double>& z) {
    double mu_p = m.mean_pos(z), mu_n = m.mean_neg(z);
    double s_p = m.sigma_pos, s_n = m.sigma_neg;
    double mid = 0.5 * (mu_p + mu_n);

    if (std::fabs(s_p - s_n) <= 1e-12 * std::max(s_p, s_n)) return mid;

    // (c - mu_n)^2 / s_n^2 - (c - mu_p)^2 / s_p^2 + 2 log(s_n / s_p) = 0
    double in2 = 1.0 / (s_n * s_n), ip2 = 1.0 / (s_p * s_p);
    double qa = in2 - ip2;
    double qb = -2.0 * (mu_n * in2 - mu_p * ip2);
    double qc = mu_n * mu_n * in2 - mu_p * mu_p * ip2 + 2.0 * std::log(s_n / s_p);
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) disc = 0.0;  // roundoff; the crossing always exists for s_p != s_n
    double sq = std::sqrt(disc);
    double r1 = (-qb - sq) / (2.0 * qa);
    double r2 = (-qb + sq) / (2.0 * qa);

    double lo = std::min(mu_p, mu_n), hi = std::max(mu_p, mu_n);
    bool in1 = r1 >= lo && r1 <= hi;
    bool in2r = r2 >= lo && r2 <= hi;
    if (in1 && !in2r) return r1;
    if (in2r && !in1) return r2;
    return std::fabs(r1 - mid) <= std::fabs(r2 - mid) ? r1 : r2;
}

double nrm_youden(const NrmModel& m, const std::vector<double>& z) {
    double c = nrm_cut(m, z);
    return normal_cdf(c, m.mean_neg(z), m.sigma_neg) - normal_cdf(c, m.mean_pos(z), m.sigma_pos);
}

}  // namespace cutpoint
