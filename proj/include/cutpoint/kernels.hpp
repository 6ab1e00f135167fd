#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cutpoint {

enum class KernelKind { gaussian, linear };

struct KernelSpec {
    KernelKind kind = KernelKind::gaussian;
    double sigma = 1.0;  // gaussian bandwidth; ignored for linear

    void validate() const;
};

std::string kernel_kind_name(KernelKind k);
KernelKind kernel_kind_from_name(const std::string& name);

double kernel_eval(const KernelSpec& k, const std::vector<double>& z1, const std::vector<double>& z2);

// Dense square matrix, row-major.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> v;

    Matrix() = default;
    explicit Matrix(std::size_t n_) : n(n_), v(n_ * n_, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return v[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return v[i * n + j]; }
};

// y = M x
void matvec(const Matrix& m, const std::vector<double>& x, std::vector<double>& y);

Matrix gram(const std::vector<std::vector<double>>& profiles, const KernelSpec& kernel);

// Median of nonzero pairwise Euclidean distances. Errors when all profiles
// coincide.
double median_heuristic(const std::vector<std::vector<double>>& profiles);

// Per-coordinate centering/scaling by sample mean and standard deviation.
struct Standardizer {
    std::vector<double> means;
    std::vector<double> scales;

    static Standardizer fit(const std::vector<std::vector<double>>& profiles);
    std::vector<double> apply(const std::vector<double>& z) const;
    std::vector<double> invert(const std::vector<double>& z) const;
    std::vector<std::vector<double>> apply_all(const std::vector<std::vector<double>>& zs) const;
};

// Kernel expansion b + sum_i a_i K(z_i, z) over stored (standardized) profiles.
struct RkhsFunction {
    std::vector<double> a;
    double b = 0.0;
    std::vector<std::vector<double>> profiles;
    KernelSpec kernel;

    double eval(const std::vector<double>& z) const;
};

// a^T K a, clamped at zero; `g` must be the Gram matrix of f.profiles.
double rkhs_norm_sq(const RkhsFunction& f, const Matrix& g);

}  // namespace cutpoint
