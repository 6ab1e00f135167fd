#include "cutpoint/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "cutpoint/errors.hpp"
#include "cutpoint/rng.hpp"
#include "cutpoint/special_functions.hpp"

namespace cutpoint {

bool ClassParams::valid() const {
    if (!std::isfinite(p1) || !std::isfinite(p2)) return false;
    if (family == Family::normal) return p2 > 0.0;
    return p1 > 0.0 && p2 > 0.0;
}

double ClassParams::mean() const { return family == Family::normal ? p1 : p1 * p2; }

double ClassParams::sd() const {
    return family == Family::normal ? std::sqrt(p2) : std::sqrt(p1) * p2;
}

double ClassParams::pdf(double x) const {
    return family == Family::normal ? normal_pdf(x, p1, std::sqrt(p2)) : gamma_pdf(x, p1, p2);
}

double ClassParams::cdf(double x) const {
    return family == Family::normal ? normal_cdf(x, p1, std::sqrt(p2)) : gamma_cdf(x, p1, p2);
}

TruthOracle::TruthOracle(int example_id) : example_id_(example_id) {
    if (example_id < 1 || example_id > 4) throw ComputeError("TruthOracle: example id must be 1..4");
}

ClassParams TruthOracle::params(int y, const std::vector<double>& z) const {
    if (z.size() != covariate_dim()) throw ComputeError("TruthOracle: covariate dimension mismatch");

    // Common location/scale drivers: t is the linear index, q the location
    // base (squared coordinates for the 3-d designs).
    double t, q;
    if (example_id_ <= 2) {
        t = z[0];
        q = z[0];
    } else {
        t = z[0] + z[1] + z[2];
        q = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
    }

    double boost = example_id_ <= 2 ? std::sqrt(t - 0.5) : std::sqrt(std::fabs(t));
    double loc = 6.0 + 1.5 * q + 1.5 * std::sin(t);
    double disp = normal_cdf(2.0 * t - 6.0);

    ClassParams p;
    if (y > 0) {
        p.p1 = loc + 1.2 + boost;
        disp += 1.2;
    } else {
        p.p1 = loc;
        disp += 0.4;
    }
    if (example_id_ == 1 || example_id_ == 3) {
        p.family = Family::normal;
        p.p2 = disp;  // variance
    } else {
        p.family = Family::gamma;
        p.p2 = std::sqrt(disp);  // scale
    }
    return p;
}

double TruthOracle::true_cut(const std::vector<double>& z) const {
    return density_crossing(params(+1, z), params(-1, z));
}

double density_crossing(const ClassParams& pos, const ClassParams& neg) {
    if (!pos.valid() || !neg.valid())
        throw ComputeError("density_crossing: degenerate class distribution");

    auto g = [&](double c) { return pos.pdf(c) - neg.pdf(c); };

    double lo = std::min(neg.mean(), pos.mean());
    double hi = std::max(neg.mean(), pos.mean());
    double spread = std::max(neg.sd(), pos.sd());
    if (pos.family == Family::gamma) lo = std::max(lo, 1e-12);

    double glo = g(lo), ghi = g(hi);
    int expansions = 0;
    while (glo * ghi > 0.0) {
        if (++expansions > 4)
            throw ComputeError("density_crossing: no crossing inside the expanded bracket");
        lo -= 3.0 * spread;
        hi += 3.0 * spread;
        if (pos.family == Family::gamma) lo = std::max(lo, 1e-12);
        glo = g(lo);
        ghi = g(hi);
    }
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;

    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if (gm * glo < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

double TruthOracle::true_youden(const std::vector<double>& z) const {
    double c = true_cut(z);
    return params(-1, z).cdf(c) - params(+1, z).cdf(c);
}

Dataset generate(const SimSpec& spec) {
    if (spec.n < 2) throw ComputeError("generate: need n >= 2");
    if (spec.example_id < 1 || spec.example_id > 4)
        throw ComputeError("generate: example id must be 1..4");

    TruthOracle oracle(spec.example_id);
    Rng rng(spec.seed);
    const std::size_t p = oracle.covariate_dim();

    std::vector<LabeledSample> samples;
    samples.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        LabeledSample s;
        s.y = rng.uniform() < 0.5 ? 1 : -1;
        ClassParams cp;
        int tries = 0;
        while (true) {
            s.z.clear();
            if (p == 1) {
                s.z.push_back(rng.uniform(1.0, 5.0));
            } else {
                for (std::size_t j = 0; j < 3; ++j) s.z.push_back(rng.normal(1.0, 1.0));
            }
            cp = oracle.params(s.y, s.z);
            if (cp.valid()) break;
            if (++tries >= 1000)
                throw ComputeError("generate: covariate resampling cap reached (degenerate design)");
        }
        if (cp.family == Family::normal)
            s.x = rng.normal(cp.p1, std::sqrt(cp.p2));
        else
            s.x = rng.gamma(cp.p1, cp.p2);
        samples.push_back(std::move(s));
    }
    return Dataset(std::move(samples));
}

}  // namespace cutpoint
