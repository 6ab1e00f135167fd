#include "cutpoint/cae.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cutpoint/errors.hpp"
#include "cutpoint/losses.hpp"
#include "cutpoint/pooled.hpp"
#include "cutpoint/rng.hpp"

namespace cutpoint {

void FitConfig::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ComputeError("FitConfig: delta must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ComputeError("FitConfig: lambda must be positive");
    if (dca_max_iter < 1 || inner_max_iter < 1) throw ComputeError("FitConfig: iteration caps must be >= 1");
    if (!(dca_rel_tol > 0.0) || !(inner_rel_tol > 0.0))
        throw ComputeError("FitConfig: tolerances must be positive");
}

Standardizer identity_standardizer(std::size_t p) {
    Standardizer s;
    s.means.assign(p, 0.0);
    s.scales.assign(p, 1.0);
    return s;
}

namespace {

struct GroupedProblem {
    const std::vector<double>* x;
    const std::vector<int>* y;
    const std::vector<double>* w;      // \hat w(y_i) / n
    const std::vector<int>* group;
    const Matrix* gram;                // unique-profile Gram
    double delta = 0.1;
    double lambda = 1.0;
};

struct CoreResult {
    std::vector<double> coef;  // per-group coefficient sums
    double b = 0.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Margins and the subproblem objective at (coef, b) given cached gram * coef.
double subproblem_objective(const GroupedProblem& pb, const std::vector<double>& t,
                            const std::vector<double>& coef, double b,
                            const std::vector<double>& gc, std::vector<double>& u) {
    const auto& x = *pb.x;
    const auto& y = *pb.y;
    const auto& w = *pb.w;
    const auto& g = *pb.group;
    const std::size_t n = x.size();
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double c = b + gc[g[i]];
        double ui = static_cast<double>(y[i]) * (x[i] - c);
        u[i] = ui;
        if (ui < pb.delta) obj += w[i] * (pb.delta - ui) / pb.delta;
        obj -= t[i] * ui;
    }
    double pen = 0.0;
    for (std::size_t s = 0; s < coef.size(); ++s) pen += coef[s] * gc[s];
    return obj + 0.5 * pb.lambda * pen;
}

// Exact primal stationarity check at a warm start; a zero subgradient means
// the point is already optimal for this subproblem.
bool warm_start_stationary(const GroupedProblem& pb, const std::vector<double>& t,
                           const std::vector<double>& coef, double b) {
    const auto& x = *pb.x;
    const auto& y = *pb.y;
    const auto& w = *pb.w;
    const auto& g = *pb.group;
    const Matrix& gram = *pb.gram;
    std::vector<double> gc;
    matvec(gram, coef, gc);
    std::vector<double> resid(gram.n, 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double u = static_cast<double>(y[i]) * (x[i] - b - gc[g[i]]);
        double di = (u < pb.delta ? -w[i] / pb.delta : 0.0) - t[i];
        if (di == 0.0) continue;
        double ydi = static_cast<double>(y[i]) * di;
        resid[g[i]] += ydi;
        gb -= ydi;
    }
    if (gb != 0.0) return false;
    std::vector<double> gresid;
    matvec(gram, resid, gresid);
    for (std::size_t s = 0; s < gram.n; ++s)
        if (pb.lambda * gc[s] - gresid[s] != 0.0) return false;
    return true;
}

// Dual coordinate ascent (maximal-violating-pair SMO) for the subproblem.
//
// With c_i = w_i/delta and the substitution beta_i = y_i (t_i + alpha_i),
// alpha_i in [0, c_i] being the hinge multipliers, the dual is
//   max -beta^T r - (1/(2 lambda)) beta^T K beta,  r_i = x_i - delta y_i,
//   subject to sum_i beta_i = 0 and per-sample boxes, and a = -beta/lambda.
// beta = 0 is always feasible, so the solve is cold-started and the caller
// keeps its warm start when that scores better.
CoreResult smo_solve(const GroupedProblem& pb, const std::vector<double>& t,
                     const std::vector<double>& warm_coef, double warm_b, int max_iter,
                     double rel_tol) {
    const auto& x = *pb.x;
    const auto& y = *pb.y;
    const auto& w = *pb.w;
    const auto& g = *pb.group;
    const Matrix& gram = *pb.gram;
    const std::size_t n = x.size();
    const std::size_t m = gram.n;

    CoreResult warm;
    warm.coef = warm_coef;
    warm.b = warm_b;
    {
        std::vector<double> gc, u(n);
        matvec(gram, warm.coef, gc);
        warm.objective = subproblem_objective(pb, t, warm.coef, warm.b, gc, u);
    }
    if (warm_start_stationary(pb, t, warm_coef, warm_b)) {
        warm.converged = true;
        return warm;
    }

    std::vector<double> r(n), lo(n), hi(n), beta(n, 0.0);
    double r_scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ci = w[i] / pb.delta;
        if (t[i] > 1e-12 * ci || t[i] < -(1.0 + 1e-12) * ci)
            throw ComputeError("inner solver: linear term outside [-w/delta, 0]");
        r[i] = x[i] - pb.delta * static_cast<double>(y[i]);
        if (y[i] > 0) {
            lo[i] = t[i];
            hi[i] = t[i] + ci;
        } else {
            lo[i] = -t[i] - ci;
            hi[i] = -t[i];
        }
        r_scale = std::max(r_scale, std::fabs(r[i]));
    }
    const double kkt_tol = std::max(1e-12, rel_tol) * r_scale;

    std::vector<double> ub(m, 0.0);  // gram * (group sums of beta)
    int iter = 0;
    bool converged = false;
    while (iter < max_iter) {
        ++iter;
        double g_up = -std::numeric_limits<double>::infinity();
        double g_dn = std::numeric_limits<double>::infinity();
        std::size_t p = n, q = n;
        for (std::size_t i = 0; i < n; ++i) {
            double gi = r[i] + ub[g[i]] / pb.lambda;
            if (beta[i] > lo[i] && gi > g_up) {
                g_up = gi;
                p = i;
            }
            if (beta[i] < hi[i] && gi < g_dn) {
                g_dn = gi;
                q = i;
            }
        }
        if (p == n || q == n || g_up - g_dn < kkt_tol) {
            converged = true;
            break;
        }
        double denom = (gram.at(g[p], g[p]) + gram.at(g[q], g[q]) - 2.0 * gram.at(g[p], g[q])) /
                       pb.lambda;
        double room_p = beta[p] - lo[p];
        double room_q = hi[q] - beta[q];
        double room = std::min(room_p, room_q);
        double step = denom > 0.0 ? std::min((g_up - g_dn) / denom, room) : room;
        if (!(step > 0.0)) {
            converged = true;
            break;
        }
        beta[p] -= step;
        beta[q] += step;
        if (step == room_p) beta[p] = lo[p];
        if (step == room_q) beta[q] = hi[q];
        const double* row_p = gram.v.data() + g[p] * m;
        const double* row_q = gram.v.data() + g[q] * m;
        for (std::size_t s = 0; s < m; ++s) ub[s] += step * (row_q[s] - row_p[s]);
    }

    CoreResult out;
    out.iterations = iter;
    out.converged = converged;
    out.coef.assign(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.coef[g[i]] -= beta[i] / pb.lambda;

    // offset: average G over free vectors, else midpoint of the KKT interval
    double free_sum = 0.0;
    std::size_t free_cnt = 0;
    double g_up = -std::numeric_limits<double>::infinity();
    double g_dn = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double gi = r[i] + ub[g[i]] / pb.lambda;
        if (beta[i] > lo[i] && beta[i] < hi[i]) {
            free_sum += gi;
            ++free_cnt;
        }
        if (beta[i] > lo[i]) g_up = std::max(g_up, gi);
        if (beta[i] < hi[i]) g_dn = std::min(g_dn, gi);
    }
    if (free_cnt > 0) {
        out.b = free_sum / static_cast<double>(free_cnt);
    } else if (std::isfinite(g_up) && std::isfinite(g_dn)) {
        out.b = 0.5 * (g_up + g_dn);
    } else if (std::isfinite(g_dn)) {
        out.b = g_dn;  // one-sided KKT interval b <= g_dn
    } else if (std::isfinite(g_up)) {
        out.b = g_up;
    } else {
        out.b = warm_b;
    }

    {
        std::vector<double> gc, u(n);
        matvec(gram, out.coef, gc);
        out.objective = subproblem_objective(pb, t, out.coef, out.b, gc, u);
    }
    // Never hand back anything worse than the warm start.
    if (warm.objective < out.objective) {
        warm.iterations = iter;
        warm.converged = converged;
        return warm;
    }
    return out;
}

double fitted_objective(const GroupedProblem& pb, const PsiDelta& psi, const std::vector<double>& coef,
                        double b, const std::vector<double>& gc, std::vector<double>& u) {
    const auto& x = *pb.x;
    const auto& y = *pb.y;
    const auto& w = *pb.w;
    const auto& g = *pb.group;
    double risk = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double c = b + gc[g[i]];
        u[i] = static_cast<double>(y[i]) * (x[i] - c);
        risk += w[i] * psi.loss(u[i]);
    }
    double pen = 0.0;
    for (std::size_t s = 0; s < coef.size(); ++s) pen += coef[s] * gc[s];
    return risk + 0.5 * pb.lambda * pen;
}

}  // namespace

double cae_objective(const Dataset& d, const RkhsFunction& f, const Standardizer& st, double delta,
                     double lambda, const Matrix& g) {
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("cae_objective: both classes must be nonempty");
    PsiDelta psi(delta);
    ClassWeights cw = class_weights(d);
    const double n = static_cast<double>(d.size());
    double risk = 0.0;
    for (const auto& s : d.samples()) {
        double c = f.eval(st.apply(s.z));
        double u = static_cast<double>(s.y) * (s.x - c);
        risk += (s.y > 0 ? cw.w_pos : cw.w_neg) / n * psi.loss(u);
    }
    return risk + 0.5 * lambda * rkhs_norm_sq(f, g);
}

InnerResult inner_solve(const Dataset& d, const Matrix& g, double delta, double lambda,
                        const std::vector<double>& linear_term, const std::vector<double>& a0,
                        double b0, int max_iter, double rel_tol) {
    const std::size_t n = d.size();
    if (g.n != n || a0.size() != n || linear_term.size() != n)
        throw ComputeError("inner_solve: size mismatch");
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("inner_solve: both classes must be nonempty");

    std::vector<double> x = d.markers();
    std::vector<int> y = d.labels();
    ClassWeights cw = class_weights(d);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = (y[i] > 0 ? cw.w_pos : cw.w_neg) / static_cast<double>(n);
    std::vector<int> group(n);
    for (std::size_t i = 0; i < n; ++i) group[i] = static_cast<int>(i);

    GroupedProblem pb{&x, &y, &w, &group, &g, delta, lambda};
    CoreResult core = smo_solve(pb, linear_term, a0, b0, max_iter, rel_tol);
    return InnerResult{std::move(core.coef), core.b, core.objective, core.iterations, core.converged};
}

FitWorkspace prepare_fit(const Dataset& d, const FitConfig& cfg) {
    FitConfig checked = cfg;
    if (checked.lambda <= 0.0) checked.lambda = 1.0;  // resolved per fit
    checked.validate();
    if (d.size() < 2) throw ComputeError("dca_fit: need at least two samples");
    if (d.n_pos() == 0 || d.n_neg() == 0)
        throw ComputeError("dca_fit: both classes must be nonempty");

    FitWorkspace ws;
    ws.config = cfg;
    ws.x = d.markers();
    ws.y = d.labels();
    ClassWeights cw = class_weights(d);
    ws.w.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        ws.w[i] = (ws.y[i] > 0 ? cw.w_pos : cw.w_neg) / static_cast<double>(d.size());

    auto raw = d.profiles();
    ws.standardizer = d.dim() > 0 ? Standardizer::fit(raw) : identity_standardizer(0);
    ws.zstd = ws.standardizer.apply_all(raw);

    // Merge bit-identical standardized profiles; the kernel expansion only
    // sees one coefficient per distinct profile.
    std::map<std::vector<double>, int> index;
    ws.group.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto [it, inserted] = index.try_emplace(ws.zstd[i], static_cast<int>(ws.unique.size()));
        if (inserted) {
            ws.unique.push_back(ws.zstd[i]);
            ws.group_size.push_back(0);
        }
        ws.group[i] = it->second;
        ++ws.group_size[it->second];
    }

    ws.kernel = cfg.kernel;
    if (ws.kernel.kind == KernelKind::gaussian && ws.kernel.sigma <= 0.0)
        ws.kernel.sigma = d.dim() > 0 ? median_heuristic(ws.zstd) : 1.0;
    ws.kernel.validate();
    ws.gram_unique = gram(ws.unique, ws.kernel);
    ws.pooled_cut = pooled_fit(d).cut;
    return ws;
}

FitOutput fit_prepared(const FitWorkspace& ws, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ComputeError("fit_prepared: lambda must be positive");
    PsiDelta psi(ws.config.delta);
    const std::size_t n = ws.x.size();
    const std::size_t m = ws.unique.size();

    GroupedProblem pb{&ws.x, &ws.y, &ws.w, &ws.group, &ws.gram_unique, ws.config.delta, lambda};

    std::vector<double> coef(m, 0.0);
    double b = ws.pooled_cut;
    std::vector<double> gc(m, 0.0), u(n), t(n, 0.0);

    // The DC linearization is flat below the margin band, so the iteration
    // would stall at the pooled constant. Initialize at the minimizer of the
    // convex hinge part instead (zero linear term), warm-started at a = 0 and
    // b = pooled cut; the DC refinement then trims the misclassified side.
    {
        CoreResult init = smo_solve(pb, t, coef, b, ws.config.inner_max_iter, ws.config.inner_rel_tol);
        coef = std::move(init.coef);
        b = init.b;
        matvec(ws.gram_unique, coef, gc);
    }

    std::vector<double> trace;
    double s_prev = fitted_objective(pb, psi, coef, b, gc, u);
    trace.push_back(s_prev);

    int k = 0;
    for (; k < ws.config.dca_max_iter; ++k) {
        for (std::size_t i = 0; i < n; ++i) t[i] = ws.w[i] * psi.subgrad_g2(u[i]);
        CoreResult inner = smo_solve(pb, t, coef, b, ws.config.inner_max_iter, ws.config.inner_rel_tol);

        std::vector<double> cand_gc, cand_u(n);
        matvec(ws.gram_unique, inner.coef, cand_gc);
        double s_new = fitted_objective(pb, psi, inner.coef, inner.b, cand_gc, cand_u);

        double slack = 2.0 * ws.config.inner_rel_tol * std::max(1.0, std::fabs(s_prev));
        if (s_new > s_prev + slack) {
            std::ostringstream msg;
            msg << "dca_fit: objective increased at iteration " << (k + 1) << " (";
            for (double v : trace) msg << v << " ";
            msg << "-> " << s_new << ")";
            throw ComputeError(msg.str());
        }
        if (s_new > s_prev) {
            // solver-tolerance noise; keep the current iterate
            ++k;
            break;
        }
        coef = std::move(inner.coef);
        b = inner.b;
        gc = std::move(cand_gc);
        u = std::move(cand_u);
        trace.push_back(s_new);
        bool done = std::fabs(s_prev - s_new) < ws.config.dca_rel_tol * std::max(1.0, std::fabs(s_prev));
        s_prev = s_new;
        if (done) {
            ++k;
            break;
        }
    }

    FitOutput out;
    out.model.standardizer = ws.standardizer;
    out.model.config = ws.config;
    out.model.config.lambda = lambda;
    out.model.config.kernel = ws.kernel;
    out.model.objective_trace = std::move(trace);
    out.model.dca_iterations = k;
    out.model.c_fn.kernel = ws.kernel;
    out.model.c_fn.b = b;
    out.model.c_fn.profiles = ws.zstd;
    out.model.c_fn.a.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.model.c_fn.a[i] = coef[ws.group[i]] / static_cast<double>(ws.group_size[ws.group[i]]);
    out.train_pred.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.train_pred[i] = b + gc[ws.group[i]];
    return out;
}

CaeModel dca_fit(const Dataset& d, const FitConfig& cfg) {
    cfg.validate();
    FitWorkspace ws = prepare_fit(d, cfg);
    return fit_prepared(ws, cfg.lambda).model;
}

double CaeModel::predict(const std::vector<double>& z) const {
    return c_fn.eval(standardizer.apply(z));
}

double pick_lambda_by_score(const std::vector<double>& lambdas, const std::vector<double>& scores) {
    if (lambdas.empty() || lambdas.size() != scores.size())
        throw ComputeError("pick_lambda_by_score: empty or mismatched inputs");
    std::size_t best = 0;
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        bool better = scores[i] > scores[best];
        bool tie_smaller = scores[i] == scores[best] && lambdas[i] < lambdas[best];
        if (better || tie_smaller) best = i;
    }
    return lambdas[best];
}

double cv_select_lambda(const Dataset& d, const FitConfig& cfg, const std::vector<double>& grid,
                        int folds) {
    if (folds < 2) throw ComputeError("cv_select_lambda: need at least 2 folds");
    if (grid.empty()) throw ComputeError("cv_select_lambda: empty lambda grid");

    std::vector<double> lambdas = grid;
    std::sort(lambdas.begin(), lambdas.end());

    std::vector<std::size_t> perm(d.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rng rng(cfg.seed);
    rng.shuffle(perm);
    std::vector<int> fold_of(d.size());
    for (std::size_t pos = 0; pos < perm.size(); ++pos)
        fold_of[perm[pos]] = static_cast<int>(pos % static_cast<std::size_t>(folds));

    std::vector<double> score_sum(lambdas.size(), 0.0);
    int usable = 0;

    for (int f = 0; f < folds; ++f) {
        std::vector<LabeledSample> train;
        std::vector<const LabeledSample*> val;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (fold_of[i] == f)
                val.push_back(&d[i]);
            else
                train.push_back(d[i]);
        }
        std::size_t val_pos = 0, val_neg = 0, train_pos = 0, train_neg = 0;
        for (const auto* s : val) (s->y > 0 ? val_pos : val_neg)++;
        for (const auto& s : train) (s.y > 0 ? train_pos : train_neg)++;
        if (val_pos == 0 || val_neg == 0 || train_pos == 0 || train_neg == 0) {
            std::cerr << "cv_select_lambda: fold " << f << " is missing a class, skipping\n";
            continue;
        }
        ++usable;
        Dataset train_set(std::move(train));
        FitWorkspace ws = prepare_fit(train_set, cfg);
        for (std::size_t gi = 0; gi < lambdas.size(); ++gi) {
            CaeModel model = fit_prepared(ws, lambdas[gi]).model;
            std::size_t tp = 0, tn = 0;
            for (const auto* s : val) {
                double c = model.predict(s->z);
                if (s->y > 0 && s->x >= c) ++tp;
                if (s->y < 0 && s->x < c) ++tn;
            }
            score_sum[gi] += 2.0 * (static_cast<double>(tp) / static_cast<double>(val_pos) +
                                    static_cast<double>(tn) / static_cast<double>(val_neg));
        }
    }
    if (usable == 0) throw ComputeError("cv_select_lambda: every fold was missing a class");
    for (auto& s : score_sum) s /= static_cast<double>(usable);
    return pick_lambda_by_score(lambdas, score_sum);
}

std::vector<double> default_lambda_grid() {
    std::vector<double> g;
    g.reserve(61);
    for (int s = 1; s <= 61; ++s) g.push_back(std::pow(10.0, (s - 31) / 10.0));
    return g;
}

std::vector<double> default_h_grid() {
    std::vector<double> g;
    g.reserve(41);
    for (int s = 1; s <= 41; ++s) g.push_back(std::pow(10.0, (s - 31) / 10.0));
    return g;
}

// --- model serialization ------------------------------------------------

void CaeModel::save(const std::string& path) const {
    nlohmann::json j;
    j["kernel"] = kernel_kind_name(c_fn.kernel.kind);
    j["sigma"] = c_fn.kernel.sigma;
    j["means"] = standardizer.means;
    j["scales"] = standardizer.scales;
    j["b"] = c_fn.b;
    j["a"] = c_fn.a;
    j["profiles"] = c_fn.profiles;
    j["delta"] = config.delta;
    j["lambda"] = config.lambda;
    j["objective_trace"] = objective_trace;
    std::ofstream out(path);
    if (!out) throw ParseError("CaeModel::save: cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw ParseError("CaeModel::save: write to '" + path + "' failed");
}

CaeModel CaeModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("CaeModel::load: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("CaeModel::load: invalid JSON in '" + path + "': " + e.what());
    }
    CaeModel m;
    try {
        m.c_fn.kernel.kind = kernel_kind_from_name(j.at("kernel").get<std::string>());
        m.c_fn.kernel.sigma = j.at("sigma").get<double>();
        m.standardizer.means = j.at("means").get<std::vector<double>>();
        m.standardizer.scales = j.at("scales").get<std::vector<double>>();
        m.c_fn.b = j.at("b").get<double>();
        m.c_fn.a = j.at("a").get<std::vector<double>>();
        m.c_fn.profiles = j.at("profiles").get<std::vector<std::vector<double>>>();
        m.config.delta = j.at("delta").get<double>();
        m.config.lambda = j.at("lambda").get<double>();
        m.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("CaeModel::load: malformed model file '" + path + "': " + e.what());
    }
    m.config.kernel = m.c_fn.kernel;
    if (m.c_fn.a.size() != m.c_fn.profiles.size())
        throw ParseError("CaeModel::load: coefficient/profile length mismatch");
    m.dca_iterations = std::max<int>(0, static_cast<int>(m.objective_trace.size()) - 1);
    return m;
}

}  // namespace cutpoint
