#pragma once

#include <random>

#include "tribell/polytope.hpp"

namespace tribell {

/// E values of a binary deterministic strategy, outcome v valued (-1)^v.
inline CorrelationValues binary_strategy_expectations(const DeterministicStrategy& s) {
    auto sgn = [](int o) { return o ? -1.0 : 1.0; };
    CorrelationValues v;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                v.triples[i - 1][j - 1][k - 1] = sgn(s.a(i)) * sgn(s.b(j)) * sgn(s.c(k));
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            v.ab[i - 1][j - 1] = sgn(s.a(i)) * sgn(s.b(j));
            v.ac[i - 1][j - 1] = sgn(s.a(i)) * sgn(s.c(j));
            v.bc[i - 1][j - 1] = sgn(s.b(i)) * sgn(s.c(j));
        }
    for (int i = 1; i <= 2; ++i) {
        v.a[i - 1] = sgn(s.a(i));
        v.b[i - 1] = sgn(s.b(i));
        v.c[i - 1] = sgn(s.c(i));
    }
    return v;
}

/// LHS of a d-outcome inequality on a binary strategy: outcomes 0/1 only, so
/// the residue a_i+b_j+c_k never wraps for d >= 4.
inline double binary_strategy_lhs(const BellInequality& q, const DeterministicStrategy& s) {
    long long v2 = 0;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                v2 += q.c2[static_cast<size_t>(triple_index(i, j, k)) * q.d +
                           (s.a(i) + s.b(j) + s.c(k)) % q.d];
    return 0.5 * static_cast<double>(v2);
}

struct EquivalenceReport {
    bool equivalent = false;
    double scale = 0;   // LHS_prob = scale * LHS_corr + offset
    double offset = 0;
    double max_discrepancy = 0;           // over strategies and random mixtures
    double max_strategy_discrepancy = 0;  // over the 64 deterministic strategies
    std::string witness;                  // a strategy where the best affine fit fails
};

/// Checks that a probability-form inequality restricted to binary outcomes is
/// an affine rescaling of a correlation-form inequality: the relation is
/// fitted on the 64 deterministic strategies and then re-verified on them and
/// on random non-signaling mixtures.
inline EquivalenceReport prob_corr_equivalence(const BellInequality& pineq,
                                               const CorrelationInequality& cineq,
                                               int random_samples = 50, std::uint64_t seed = 1,
                                               double tol = 1e-10) {
    EquivalenceReport rep;
    std::array<double, 64> pv{}, cv{};
    for (int n = 0; n < 64; ++n) {
        DeterministicStrategy s;
        for (int b = 0; b < 6; ++b) s.x[b] = (n >> (5 - b)) & 1;
        pv[n] = binary_strategy_lhs(pineq, s);
        cv[n] = evaluate_correlation(cineq, binary_strategy_expectations(s));
    }
    // least-squares affine fit p = scale * c + offset
    double sc = 0, sp = 0, scc = 0, scp = 0;
    for (int n = 0; n < 64; ++n) {
        sc += cv[n];
        sp += pv[n];
        scc += cv[n] * cv[n];
        scp += cv[n] * pv[n];
    }
    const double det = 64.0 * scc - sc * sc;
    if (std::abs(det) < 1e-9) {
        // degenerate: correlation side constant on all strategies
        rep.equivalent = false;
        rep.witness = "correlation LHS constant over all deterministic strategies";
        return rep;
    }
    rep.scale = (64.0 * scp - sc * sp) / det;
    rep.offset = (sp - rep.scale * sc) / 64.0;
    auto worst_residual = [&](double scale, double offset, int* arg) {
        double m = 0;
        for (int n = 0; n < 64; ++n) {
            double resid = std::abs(pv[n] - (scale * cv[n] + offset));
            if (resid > m) {
                m = resid;
                if (arg) *arg = n;
            }
        }
        return m;
    };
    // the relations of interest are small rationals; prefer the snapped fit
    // when it reproduces the strategies at least as well
    const double snap_scale = std::round(rep.scale * 24.0) / 24.0;
    const double snap_offset = std::round(rep.offset * 24.0) / 24.0;
    if (worst_residual(snap_scale, snap_offset, nullptr) <=
        worst_residual(rep.scale, rep.offset, nullptr)) {
        rep.scale = snap_scale;
        rep.offset = snap_offset;
    }
    int worst = 0;
    rep.max_strategy_discrepancy = worst_residual(rep.scale, rep.offset, &worst);
    rep.max_discrepancy = rep.max_strategy_discrepancy;
    // random non-signaling behaviors: mixtures of deterministic strategies
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    for (int t = 0; t < random_samples; ++t) {
        std::array<double, 64> wgt;
        double tot = 0;
        for (auto& w : wgt) {
            w = expo(rng);
            tot += w;
        }
        double pmix = 0, cmix = 0;
        for (int n = 0; n < 64; ++n) {
            pmix += wgt[n] / tot * pv[n];
            cmix += wgt[n] / tot * cv[n];
        }
        double resid = std::abs(pmix - (rep.scale * cmix + rep.offset));
        rep.max_discrepancy = std::max(rep.max_discrepancy, resid);
    }
    rep.equivalent = rep.max_discrepancy <= tol;
    if (!rep.equivalent) {
        DeterministicStrategy s;
        for (int b = 0; b < 6; ++b) s.x[b] = (worst >> (5 - b)) & 1;
        rep.witness = "strategy a=(" + std::to_string(s.x[0]) + "," + std::to_string(s.x[1]) +
                      ") b=(" + std::to_string(s.x[2]) + "," + std::to_string(s.x[3]) + ") c=(" +
                      std::to_string(s.x[4]) + "," + std::to_string(s.x[5]) + ")";
    }
    return rep;
}

}  // namespace tribell
