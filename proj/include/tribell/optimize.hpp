#pragma once

#include <functional>

#include "tribell/catalog.hpp"
#include "tribell/polytope.hpp"
#include "tribell/quantum.hpp"

namespace tribell {

struct OptimizationConfig {
    int restarts = 32;
    int max_iterations = 4000;  // objective evaluations per restart
    double tolerance = 1e-10;
    bool symmetric_parties = true;
    std::uint64_t seed = 1;
    int threads = 1;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("grid must be nonempty");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return g;
}

// ---------------------------------------------------------------------------
// Derivative-free simplex descent (minimization).

namespace detail {

struct SimplexResult {
    std::vector<double> x;
    double f = 0;
    int evals = 0;
};

inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                 std::vector<double> x0, double step, int max_evals, double ftol) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    int evals = 0;
    for (int i = 1; i <= n; ++i) xs[i][i - 1] += step;
    for (int i = 0; i <= n; ++i) {
        fs[i] = fn(xs[i]);
        ++evals;
    }
    std::vector<int> order(n + 1);
    while (evals < max_evals) {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[n], second = order[n - 1];
        if (fs[worst] - fs[best] < ftol) break;
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int c = 0; c < n; ++c) centroid[c] += xs[i][c];
        }
        for (double& c : centroid) c /= n;
        auto blend = [&](double t) {
            std::vector<double> p(n);
            for (int c = 0; c < n; ++c) p[c] = centroid[c] + t * (centroid[c] - xs[worst][c]);
            return p;
        };
        auto xr = blend(1.0);
        double fr = fn(xr);
        ++evals;
        if (fr < fs[best]) {
            auto xe = blend(2.0);
            double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                xs[worst] = std::move(xe);
                fs[worst] = fe;
            } else {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            }
        } else if (fr < fs[second]) {
            xs[worst] = std::move(xr);
            fs[worst] = fr;
        } else {
            auto xc = blend(fr < fs[worst] ? 0.5 : -0.5);
            double fc = fn(xc);
            ++evals;
            if (fc < std::min(fr, fs[worst])) {
                xs[worst] = std::move(xc);
                fs[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {  // shrink toward best
                    if (i == best) continue;
                    for (int c = 0; c < n; ++c)
                        xs[i][c] = xs[best][c] + 0.5 * (xs[i][c] - xs[best][c]);
                    fs[i] = fn(xs[i]);
                    ++evals;
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    return {xs[best], fs[best], evals};
}

/// Coordinate probes of step `probe` around x; true when no probe improves f
/// by at least `gain`. An improving probe is written back into x.
inline bool stationary_at(const std::function<double(const std::vector<double>&)>& fn,
                          std::vector<double>& x, double fx, double probe, double gain) {
    for (size_t c = 0; c < x.size(); ++c)
        for (double sgn : {1.0, -1.0}) {
            std::vector<double> y = x;
            y[c] += sgn * probe;
            if (fn(y) < fx - gain) {
                x = std::move(y);
                return false;
            }
        }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The published optimal measurement settings.

/// d=4 settings, identical for the three parties:
/// setting 1: (0, arccos(-1/3)/3, arccos(-1/3)/3 - pi/3, pi/3)
/// setting 2: (0, arcsin(7/9)/3, arcsin(7/9)/3 + pi/6, -pi/6)
inline PhaseSettings paper_settings_d4() {
    const double u = std::acos(-1.0 / 3.0) / 3.0;
    const double v = std::asin(7.0 / 9.0) / 3.0;
    return PhaseSettings::symmetric({0.0, u, u - M_PI / 3.0, M_PI / 3.0},
                                    {0.0, v, v + M_PI / 6.0, -M_PI / 6.0});
}

/// The value of the d=5 inequality is not constant along the published
/// constraint curve; this beta1 maximizes it there.
inline constexpr double kQuintitCurveBeta1 = 0.470589744695119;

/// d=5 settings, identical for the three parties:
/// setting 1: (0, b1, b2, -b2, -b1), setting 2 adds (0, pi/5, 2pi/5, -2pi/5, -pi/5),
/// with b2 solved from cos(3 b1) - cos(3 b2) = 1/2.
inline PhaseSettings paper_settings_d5(double beta1 = kQuintitCurveBeta1) {
    const double target = std::cos(3.0 * beta1) - 0.5;
    if (target < -1.0 || target > 1.0)
        throw std::invalid_argument("beta1 leaves cos(3 b1) - 1/2 outside [-1,1]");
    const double beta2 = std::acos(target) / 3.0;
    return PhaseSettings::symmetric(
        {0.0, beta1, beta2, -beta2, -beta1},
        {0.0, beta1 + M_PI / 5.0, beta2 + 2.0 * M_PI / 5.0, -beta2 - 2.0 * M_PI / 5.0,
         -beta1 - M_PI / 5.0});
}

/// Sum over triples of the largest coefficient: no distribution can beat it.
inline double algebraic_max(const BellInequality& q) {
    long long cap2 = 0;
    for (int t = 0; t < 8; ++t) {
        long long m = q.c2[static_cast<size_t>(t) * q.d];
        for (int r = 1; r < q.d; ++r) m = std::max(m, q.c2[static_cast<size_t>(t) * q.d + r]);
        cap2 += m;
    }
    return 0.5 * static_cast<double>(cap2);
}

// ---------------------------------------------------------------------------
// Maximal violation over multiport phase settings.

struct PhaseOptResult {
    double value = 0;
    PhaseSettings settings;
    bool converged = false;
    int evaluations = 0;
};

namespace detail {

// Phase vectors are gauge-fixed to phi^0 = 0; only differences enter the
// probabilities.
inline PhaseSettings settings_from_params(const std::vector<double>& x, int d, bool symmetric) {
    PhaseSettings s = PhaseSettings::zero(d);
    const int per = d - 1;
    for (int party = 0; party < 3; ++party)
        for (int set = 0; set < 2; ++set) {
            const int block = symmetric ? set : party * 2 + set;
            for (int l = 1; l < d; ++l) s.phi[party][set][l] = x[block * per + l - 1];
        }
    return s;
}

inline std::vector<double> params_from_settings(const PhaseSettings& s, bool symmetric) {
    const int per = s.d - 1;
    std::vector<double> x(static_cast<size_t>(symmetric ? 2 : 6) * per);
    for (int party = 0; party < (symmetric ? 1 : 3); ++party)
        for (int set = 0; set < 2; ++set)
            for (int l = 1; l < s.d; ++l) {
                const int block = symmetric ? set : party * 2 + set;
                x[block * per + l - 1] = s.phi[party][set][l] - s.phi[party][set][0];
            }
    return x;
}

}  // namespace detail

inline PhaseOptResult maximize_violation_phases(const BellInequality& ineq, const PureState& state,
                                                const OptimizationConfig& config) {
    if (ineq.d != state.d) throw std::invalid_argument("inequality and state dimension mismatch");
    const int d = ineq.d;
    const bool sym = config.symmetric_parties;
    const int dims = (sym ? 2 : 6) * (d - 1);
    auto objective = [&](const std::vector<double>& x) {
        PhaseSettings s = detail::settings_from_params(x, d, sym);
        return -evaluate_lhs(ineq, modular_table(joint_all(state, s)));
    };
    std::vector<std::vector<double>> seeds;
    if (d == 4) seeds.push_back(detail::params_from_settings(paper_settings_d4(), sym));
    if (d == 5) seeds.push_back(detail::params_from_settings(paper_settings_d5(), sym));
    if (!sym) {
        // the symmetric optimum is always admissible: run the reduced search
        // first and lift its winner into the full space
        OptimizationConfig pre = config;
        pre.symmetric_parties = true;
        pre.restarts = std::max(1, config.restarts / 2);
        PhaseOptResult symres = maximize_violation_phases(ineq, state, pre);
        seeds.push_back(detail::params_from_settings(symres.settings, false));
    }
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uni(-M_PI, M_PI);
    PhaseOptResult best;
    best.value = -1e300;
    int evals = 0;
    for (int restart = 0; restart < config.restarts; ++restart) {
        std::vector<double> x0;
        if (restart < static_cast<int>(seeds.size())) {
            x0 = seeds[restart];
        } else {
            x0.resize(dims);
            for (auto& v : x0) v = uni(rng);
        }
        auto r = detail::nelder_mead(objective, std::move(x0), 0.4, config.max_iterations,
                                     config.tolerance * 1e-2);
        evals += r.evals;
        auto polish =
            detail::nelder_mead(objective, r.x, 1e-3, config.max_iterations / 4, config.tolerance * 1e-3);
        evals += polish.evals;
        if (polish.f < r.f) r = polish;
        if (-r.f > best.value) {
            best.value = -r.f;
            best.settings = detail::settings_from_params(r.x, d, sym);
        }
    }
    // stationarity: coordinate probes of 1e-5 may not improve by 1e-7
    std::vector<double> xb = detail::params_from_settings(best.settings, sym);
    double fb = -best.value;
    best.converged = false;
    for (int round = 0; round < 4; ++round) {
        if (detail::stationary_at(objective, xb, fb, 1e-5, 1e-7)) {
            best.converged = true;
            break;
        }
        auto r = detail::nelder_mead(objective, xb, 1e-4, config.max_iterations / 2,
                                     config.tolerance * 1e-3);
        evals += r.evals;
        if (r.f < fb) {
            fb = r.f;
            xb = r.x;
        }
    }
    best.value = -fb;
    best.settings = detail::settings_from_params(xb, d, sym);
    best.evaluations = evals;
    if (best.value > algebraic_max(ineq) + 1e-9)
        throw std::runtime_error("optimizer exceeded the algebraic maximum; evaluation is broken");
    return best;
}

// ---------------------------------------------------------------------------
// Maximal violation over qubit Bloch observables.

struct QubitOptResult {
    double value = 0;
    ObservableSet observables{};
    bool converged = false;
};

namespace detail {

using BlochSet = std::array<std::array<std::array<double, 3>, 2>, 3>;

inline int tidx(int al, int be, int ga) { return (al * 4 + be) * 4 + ga; }

inline double corr_lhs_bloch(const CorrelationInequality& q, const std::array<double, 64>& T,
                             const BlochSet& n) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (q.triples[i][j][k] == 0) continue;
                double e = 0;
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        for (int z = 0; z < 3; ++z)
                            e += n[0][i][x] * n[1][j][y] * n[2][k][z] * T[tidx(x + 1, y + 1, z + 1)];
                s += q.triples[i][j][k] * e;
            }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double eab = 0, eac = 0, ebc = 0;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    eab += n[0][i][x] * n[1][j][y] * T[tidx(x + 1, y + 1, 0)];
                    eac += n[0][i][x] * n[2][j][y] * T[tidx(x + 1, 0, y + 1)];
                    ebc += n[1][i][x] * n[2][j][y] * T[tidx(0, x + 1, y + 1)];
                }
            s += q.ab[i][j] * eab + q.ac[i][j] * eac + q.bc[i][j] * ebc;
        }
    for (int i = 0; i < 2; ++i)
        for (int x = 0; x < 3; ++x)
            s += q.a[i] * n[0][i][x] * T[tidx(x + 1, 0, 0)] +
                 q.b[i] * n[1][i][x] * T[tidx(0, x + 1, 0)] + q.c[i] * n[2][i][x] * T[tidx(0, 0, x + 1)];
    return s;
}

// d lhs / d n[party][setting]; the objective is linear in each Bloch vector.
inline std::array<double, 3> bloch_gradient(const CorrelationInequality& q,
                                            const std::array<double, 64>& T, const BlochSet& n,
                                            int party, int setting) {
    std::array<double, 3> g{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double coef = q.triples[i][j][k];
                if (coef == 0) continue;
                if ((party == 0 && i != setting) || (party == 1 && j != setting) ||
                    (party == 2 && k != setting))
                    continue;
                for (int x = 0; x < 3; ++x) {
                    double e = 0;
                    for (int y = 0; y < 3; ++y)
                        for (int z = 0; z < 3; ++z) {
                            if (party == 0)
                                e += n[1][j][y] * n[2][k][z] * T[tidx(x + 1, y + 1, z + 1)];
                            else if (party == 1)
                                e += n[0][i][y] * n[2][k][z] * T[tidx(y + 1, x + 1, z + 1)];
                            else
                                e += n[0][i][y] * n[1][j][z] * T[tidx(y + 1, z + 1, x + 1)];
                        }
                    g[x] += coef * e;
                }
            }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (party == 0 && i == setting && q.ab[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.ab[i][j] * n[1][j][y] * T[tidx(x + 1, y + 1, 0)];
            if (party == 1 && j == setting && q.ab[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.ab[i][j] * n[0][i][y] * T[tidx(y + 1, x + 1, 0)];
            if (party == 0 && i == setting && q.ac[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.ac[i][j] * n[2][j][y] * T[tidx(x + 1, 0, y + 1)];
            if (party == 2 && j == setting && q.ac[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.ac[i][j] * n[0][i][y] * T[tidx(y + 1, 0, x + 1)];
            if (party == 1 && i == setting && q.bc[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.bc[i][j] * n[2][j][y] * T[tidx(0, x + 1, y + 1)];
            if (party == 2 && j == setting && q.bc[i][j] != 0)
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) g[x] += q.bc[i][j] * n[1][i][y] * T[tidx(0, y + 1, x + 1)];
        }
    const double* single = party == 0 ? q.a : party == 1 ? q.b : q.c;
    if (single[setting] != 0)
        for (int x = 0; x < 3; ++x) {
            int a = party == 0 ? x + 1 : 0, b = party == 1 ? x + 1 : 0, c = party == 2 ? x + 1 : 0;
            g[x] += single[setting] * T[tidx(a, b, c)];
        }
    return g;
}

/// Each Bloch vector in turn is replaced by the maximizer of the (linear)
/// restriction, i.e. the normalized gradient; monotone, stops at a local max.
inline double bloch_ascent(const CorrelationInequality& q, const std::array<double, 64>& T,
                           BlochSet& n, int max_sweeps = 2000) {
    double last = corr_lhs_bloch(q, T, n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int party = 0; party < 3; ++party)
            for (int setting = 0; setting < 2; ++setting) {
                auto g = bloch_gradient(q, T, n, party, setting);
                double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
                if (norm > 1e-14)
                    for (int x = 0; x < 3; ++x) n[party][setting][x] = g[x] / norm;
            }
        double v = corr_lhs_bloch(q, T, n);
        if (v - last < 1e-14) return v;
        last = v;
    }
    return last;
}

inline BlochSet bloch_from_angles(const std::vector<double>& ang) {
    BlochSet n;
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 2; ++s) {
            double th = ang[(p * 2 + s) * 2], ph = ang[(p * 2 + s) * 2 + 1];
            n[p][s] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        }
    return n;
}

}  // namespace detail

inline QubitOptResult maximize_violation_qubit(const CorrelationInequality& cineq,
                                               const PureState& state,
                                               const OptimizationConfig& config) {
    if (state.d != 2) throw std::invalid_argument("qubit optimizer requires a d=2 state");
    const auto T = pauli_correlation_tensor(state);
    auto objective = [&](const std::vector<double>& ang) {
        return -detail::corr_lhs_bloch(cineq, T, detail::bloch_from_angles(ang));
    };
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uth(0.0, M_PI), uph(-M_PI, M_PI);
    QubitOptResult best;
    best.value = -1e300;
    detail::BlochSet bestn{};
    for (int restart = 0; restart < config.restarts; ++restart) {
        std::vector<double> ang(12);
        if (restart == 0) {
            // equatorial seed; optimal observables of the GHZ-type maxima lie
            // in the XY plane
            for (int q = 0; q < 6; ++q) {
                ang[q * 2] = M_PI / 2;
                ang[q * 2 + 1] = q * M_PI / 6;
            }
        } else {
            for (int q = 0; q < 6; ++q) {
                ang[q * 2] = uth(rng);
                ang[q * 2 + 1] = uph(rng);
            }
        }
        auto r = detail::nelder_mead(objective, ang, 0.5, std::min(config.max_iterations, 800),
                                     1e-9);
        detail::BlochSet n = detail::bloch_from_angles(r.x);
        double v = detail::bloch_ascent(cineq, T, n);
        if (v > best.value) {
            best.value = v;
            bestn = n;
        }
    }
    // the ascent is stationary by construction; verify on the angle chart too
    std::vector<double> ang(12);
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 2; ++s) {
            const auto& v = bestn[p][s];
            ang[(p * 2 + s) * 2] = std::acos(std::clamp(v[2], -1.0, 1.0));
            ang[(p * 2 + s) * 2 + 1] = std::atan2(v[1], v[0]);
        }
    best.converged = detail::stationary_at(objective, ang, -best.value, 1e-5, 1e-7);
    if (!best.converged) {
        detail::BlochSet n = detail::bloch_from_angles(ang);
        double v = detail::bloch_ascent(cineq, T, n);
        if (v > best.value) {
            best.value = v;
            bestn = n;
        }
    }
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 2; ++s)
            best.observables[p][s] = {bestn[p][s][0], bestn[p][s][1], bestn[p][s][2]};
    return best;
}

// ---------------------------------------------------------------------------
// Noise thresholds.

enum class ThresholdKind { fidelity, visibility };

struct ThresholdReport {
    double quantum = 0;
    double classical = 0;
    double value = 0;
    ThresholdKind kind = ThresholdKind::fidelity;
    bool violation = false;  // false: Q <= B, threshold undefined
};

/// Fidelity F = 1 - B/Q (largest white-noise admixture still violating);
/// visibility V = B/Q. F + V = 1.
inline ThresholdReport threshold(double quantum, double classical, ThresholdKind kind) {
    if (quantum <= 0) throw std::invalid_argument("quantum value must be positive");
    ThresholdReport r;
    r.quantum = quantum;
    r.classical = classical;
    r.kind = kind;
    r.violation = quantum > classical;
    if (r.violation)
        r.value = kind == ThresholdKind::fidelity ? 1.0 - classical / quantum : classical / quantum;
    return r;
}

// ---------------------------------------------------------------------------
// Parameter sweeps behind the paper's figures.

struct SweepRow {
    double xi = 0;
    double beta = 0;  // NaN for one-parameter families
    double value = 0;
    double bound = 0;
    double ratio = 0;
    bool converged = false;
    ObservableSet observables{};  // optimal settings, kept for round-trip checks
};

inline std::vector<SweepRow> sweep_generalized_ghz(const CorrelationInequality& cineq,
                                                   const std::vector<double>& xi_grid,
                                                   const OptimizationConfig& config) {
    if (xi_grid.empty()) throw std::invalid_argument("grid must be nonempty");
    std::vector<SweepRow> rows;
    rows.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        auto r = maximize_violation_qubit(cineq, generalized_ghz(xi), config);
        rows.push_back({xi, std::nan(""), r.value, cineq.bound, r.value / cineq.bound, r.converged,
                        r.observables});
    }
    return rows;
}

inline std::vector<SweepRow> sweep_generalized_w(const CorrelationInequality& cineq, double beta,
                                                 const std::vector<double>& xi_grid,
                                                 const OptimizationConfig& config) {
    if (xi_grid.empty()) throw std::invalid_argument("grid must be nonempty");
    std::vector<SweepRow> rows;
    rows.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        auto r = maximize_violation_qubit(cineq, generalized_w(beta, xi), config);
        rows.push_back({xi, beta, r.value, cineq.bound, r.value / cineq.bound, r.converged,
                        r.observables});
    }
    return rows;
}

/// Probability-form sweep over the generalized GHZ family (d=2 only), driven
/// by the multiport phase optimizer.
inline std::vector<SweepRow> sweep_generalized_ghz(const BellInequality& ineq,
                                                   const std::vector<double>& xi_grid,
                                                   const OptimizationConfig& config) {
    if (ineq.d != 2)
        throw std::invalid_argument("probability-form sweeps support d=2 (generalized GHZ) only");
    if (xi_grid.empty()) throw std::invalid_argument("grid must be nonempty");
    std::vector<SweepRow> rows;
    rows.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        auto r = maximize_violation_phases(ineq, generalized_ghz(xi), config);
        rows.push_back({xi, std::nan(""), r.value, 0.5 * static_cast<double>(ineq.bound2),
                        r.value / (0.5 * static_cast<double>(ineq.bound2)), r.converged, {}});
    }
    return rows;
}

/// Bisects the boundary of the violation region of the generalized GHZ family
/// in (lo, hi); requires a sign change of (max value - bound) across it.
inline double locate_violation_crossing(const CorrelationInequality& cineq,
                                        const OptimizationConfig& config, double lo, double hi,
                                        double xtol = 1e-6) {
    auto violates = [&](double xi) {
        auto r = maximize_violation_qubit(cineq, generalized_ghz(xi), config);
        return r.value > cineq.bound + 1e-9;
    };
    bool vlo = violates(lo), vhi = violates(hi);
    if (vlo == vhi) throw std::runtime_error("no violation crossing bracketed by [lo, hi]");
    while (hi - lo > xtol) {
        double mid = 0.5 * (lo + hi);
        if (violates(mid) == vlo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Random-state violation probe.

struct ProbeSample {
    int index = 0;
    bool entangled = false;
    double margin = 0;
    bool inconclusive = false;
};

struct ProbeReport {
    int samples = 0;
    int entangled_count = 0;
    int product_count = 0;
    int inconclusive_count = 0;
    int counterexample_count = 0;
    double min_margin = 0;
    int min_margin_index = -1;
    std::vector<ProbeSample> counterexamples;
};

/// Samples random pure three-qubit states (Haar-like and canonical-form) and
/// checks that every entangled one violates the given inequality. Margins
/// below 1e-7 are inconclusive rather than counterexamples; a margin below
/// -1e-7 is reported as a counterexample candidate.
inline ProbeReport violates_all_entangled_probe(const CorrelationInequality& cineq,
                                                int sample_count, std::uint64_t seed,
                                                const OptimizationConfig& config) {
    if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
    ProbeReport rep;
    rep.samples = sample_count;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uphi(0.0, M_PI);
    std::exponential_distribution<double> expo(1.0);
    bool first = true;
    for (int idx = 0; idx < sample_count; ++idx) {
        PureState state;
        if (idx % 2 == 0) {
            state = random_pure_state(rng());
        } else {
            std::array<double, 5> mu;
            double tot = 0;
            for (auto& m : mu) {
                m = expo(rng);
                tot += m;
            }
            for (auto& m : mu) m /= tot;
            state = canonical_state(mu, uphi(rng));
        }
        auto ent = entanglement_check(state);
        if (!ent.entangled()) {
            ++rep.product_count;
            continue;
        }
        ++rep.entangled_count;
        OptimizationConfig c = config;
        c.seed = config.seed + idx;
        auto r = maximize_violation_qubit(cineq, state, c);
        double margin = r.value - cineq.bound;
        if (first || margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.min_margin_index = idx;
            first = false;
        }
        if (margin < 1e-7) {
            ++rep.inconclusive_count;
            if (margin <= -1e-7) {
                ++rep.counterexample_count;
                rep.counterexamples.push_back({idx, true, margin, false});
            }
        }
    }
    return rep;
}

}  // namespace tribell
