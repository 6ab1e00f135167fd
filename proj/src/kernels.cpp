#include "cutpoint/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "cutpoint/errors.hpp"

namespace cutpoint {

void KernelSpec::validate() const {
    if (kind == KernelKind::gaussian && (!std::isfinite(sigma) || sigma <= 0.0))
        throw ComputeError("KernelSpec: gaussian sigma must be finite and positive");
}

std::string kernel_kind_name(KernelKind k) {
    return k == KernelKind::gaussian ? "gaussian" : "linear";
}

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "gaussian") return KernelKind::gaussian;
    if (name == "linear") return KernelKind::linear;
    throw ParseError("unknown kernel '" + name + "' (expected gaussian or linear)");
}

double kernel_eval(const KernelSpec& k, const std::vector<double>& z1, const std::vector<double>& z2) {
    if (z1.size() != z2.size()) throw ComputeError("kernel_eval: dimension mismatch");
    if (k.kind == KernelKind::linear) {
        double dot = 0.0;
        for (std::size_t i = 0; i < z1.size(); ++i) dot += z1[i] * z2[i];
        return dot;
    }
    k.validate();
    double d2 = 0.0;
    for (std::size_t i = 0; i < z1.size(); ++i) {
        double d = z1[i] - z2[i];
        d2 += d * d;
    }
    return std::exp(-d2 / (2.0 * k.sigma * k.sigma));
}

void matvec(const Matrix& m, const std::vector<double>& x, std::vector<double>& y) {
    y.assign(m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        const double* row = m.v.data() + i * m.n;
        double acc = 0.0;
        for (std::size_t j = 0; j < m.n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

Matrix gram(const std::vector<std::vector<double>>& profiles, const KernelSpec& kernel) {
    kernel.validate();
    const std::size_t n = profiles.size();
    for (const auto& z : profiles)
        if (z.size() != profiles[0].size()) throw ComputeError("gram: dimension mismatch");
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double v = kernel_eval(kernel, profiles[i], profiles[j]);
            out.at(i, j) = v;
            out.at(j, i) = v;
        }
    }
    return out;
}

double median_heuristic(const std::vector<std::vector<double>>& profiles) {
    const std::size_t n = profiles.size();
    if (n < 2) throw ComputeError("median_heuristic: need at least two profiles");
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < profiles[i].size(); ++k) {
                double d = profiles[i][k] - profiles[j][k];
                d2 += d * d;
            }
            if (d2 > 0.0) dists.push_back(std::sqrt(d2));
        }
    }
    if (dists.empty()) throw ComputeError("median_heuristic: all profiles coincide");
    std::sort(dists.begin(), dists.end());
    std::size_t m = dists.size();
    if (m % 2 == 1) return dists[m / 2];
    return 0.5 * (dists[m / 2 - 1] + dists[m / 2]);
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& profiles) {
    if (profiles.empty()) throw ComputeError("Standardizer: empty profile set");
    const std::size_t p = profiles[0].size();
    const double n = static_cast<double>(profiles.size());
    Standardizer s;
    s.means.assign(p, 0.0);
    s.scales.assign(p, 1.0);
    for (const auto& z : profiles) {
        if (z.size() != p) throw ComputeError("Standardizer: dimension mismatch");
        for (std::size_t j = 0; j < p; ++j) s.means[j] += z[j];
    }
    for (std::size_t j = 0; j < p; ++j) s.means[j] /= n;
    if (profiles.size() > 1) {
        std::vector<double> ss(p, 0.0);
        for (const auto& z : profiles)
            for (std::size_t j = 0; j < p; ++j) {
                double d = z[j] - s.means[j];
                ss[j] += d * d;
            }
        for (std::size_t j = 0; j < p; ++j) {
            double sd = std::sqrt(ss[j] / (n - 1.0));
            if (sd < 1e-12)
                throw ComputeError("Standardizer: covariate " + std::to_string(j + 1) +
                                   " is (numerically) constant");
            s.scales[j] = sd;
        }
    }
    return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& z) const {
    if (z.size() != means.size()) throw ComputeError("Standardizer::apply: dimension mismatch");
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = (z[j] - means[j]) / scales[j];
    return out;
}

std::vector<double> Standardizer::invert(const std::vector<double>& z) const {
    if (z.size() != means.size()) throw ComputeError("Standardizer::invert: dimension mismatch");
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j] * scales[j] + means[j];
    return out;
}

std::vector<std::vector<double>> Standardizer::apply_all(const std::vector<std::vector<double>>& zs) const {
    std::vector<std::vector<double>> out;
    out.reserve(zs.size());
    for (const auto& z : zs) out.push_back(apply(z));
    return out;
}

double RkhsFunction::eval(const std::vector<double>& z) const {
    if (a.size() != profiles.size()) throw ComputeError("RkhsFunction: coefficient/profile mismatch");
    double acc = b;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * kernel_eval(kernel, profiles[i], z);
    return acc;
}

double rkhs_norm_sq(const RkhsFunction& f, const Matrix& g) {
    if (g.n != f.a.size()) throw ComputeError("rkhs_norm_sq: gram size mismatch");
    std::vector<double> ka;
    matvec(g, f.a, ka);
    double v = 0.0;
    for (std::size_t i = 0; i < f.a.size(); ++i) v += f.a[i] * ka[i];
    if (v < 0.0) {
        double scale = 1.0;
        for (double ai : f.a) scale += ai * ai;
        if (v < -1e-10 * scale) throw ComputeError("rkhs_norm_sq: gram matrix is not PSD");
        v = 0.0;
    }
    return v;
}

}  // namespace cutpoint
