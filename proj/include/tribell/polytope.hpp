#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "tribell/inequality.hpp"

namespace tribell {

inline constexpr int kMaxEnumerationD = 8;

/// One outcome per (party, setting): the vertices of the local polytope.
struct DeterministicStrategy {
    std::array<int, 6> x{};  // a1,a2,b1,b2,c1,c2

    int a(int i) const { return x[i - 1]; }
    int b(int j) const { return x[2 + j - 1]; }
    int c(int k) const { return x[4 + k - 1]; }

    friend bool operator==(const DeterministicStrategy& l, const DeterministicStrategy& r) {
        return l.x == r.x;
    }
};

inline unsigned long long strategy_count(int d) {
    if (d < 2 || d > kMaxEnumerationD)
        throw std::invalid_argument("strategy enumeration supports 2 <= d <= 8");
    unsigned long long n = 1;
    for (int i = 0; i < 6; ++i) n *= static_cast<unsigned>(d);
    return n;
}

// Lexicographic order with a1 most significant.
inline DeterministicStrategy strategy_from_index(int d, unsigned long long idx) {
    DeterministicStrategy s;
    for (int pos = 5; pos >= 0; --pos) {
        s.x[pos] = static_cast<int>(idx % d);
        idx /= d;
    }
    return s;
}

template <class F>
void for_each_strategy(int d, F&& f) {
    const unsigned long long n = strategy_count(d);
    for (unsigned long long i = 0; i < n; ++i) f(strategy_from_index(d, i));
}

inline std::vector<DeterministicStrategy> enumerate_strategies(int d) {
    std::vector<DeterministicStrategy> out;
    out.reserve(strategy_count(d));
    for_each_strategy(d, [&](const DeterministicStrategy& s) { out.push_back(s); });
    return out;
}

inline ModularProbabilityTable strategy_table(const DeterministicStrategy& s, int d) {
    for (int v : s.x)
        if (v < 0 || v >= d) throw std::invalid_argument("strategy outcome out of range");
    ModularProbabilityTable t = ModularProbabilityTable::zero(d);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k) t.at(i, j, k, (s.a(i) + s.b(j) + s.c(k)) % d) = 1.0;
    return t;
}

/// Twice the inequality value on a deterministic strategy; exact.
inline long long lhs2_on_strategy(const BellInequality& q, const DeterministicStrategy& s) {
    long long v = 0;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                v += q.c2[static_cast<size_t>(triple_index(i, j, k)) * q.d +
                          (s.a(i) + s.b(j) + s.c(k)) % q.d];
    return v;
}

struct ClassicalMaxResult {
    half_int value;
    unsigned long long maximizer_count = 0;
    DeterministicStrategy witness;  // lexicographically first maximizer
};

/// Exact maximum of the inequality over all d^6 deterministic strategies.
/// Chunked enumeration; merge order is fixed so the result is independent of
/// the thread count.
inline ClassicalMaxResult classical_max(const BellInequality& q, int threads = 1) {
    const unsigned long long n = strategy_count(q.d);
    struct Partial {
        long long best = 0;
        unsigned long long count = 0;
        unsigned long long first = 0;
        bool any = false;
    };
    auto scan = [&](unsigned long long lo, unsigned long long hi) {
        Partial p;
        for (unsigned long long i = lo; i < hi; ++i) {
            long long v = lhs2_on_strategy(q, strategy_from_index(q.d, i));
            if (!p.any || v > p.best) {
                p.best = v;
                p.count = 1;
                p.first = i;
                p.any = true;
            } else if (v == p.best) {
                ++p.count;
            }
        }
        return p;
    };
    std::vector<Partial> parts;
    if (threads <= 1) {
        parts.push_back(scan(0, n));
    } else {
        const int nt = std::min<unsigned long long>(threads, n);
        parts.resize(nt);
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) {
            unsigned long long lo = n * t / nt, hi = n * (t + 1) / nt;
            pool.emplace_back([&, t, lo, hi] { parts[t] = scan(lo, hi); });
        }
        for (auto& th : pool) th.join();
    }
    Partial total;
    for (const auto& p : parts) {
        if (!p.any) continue;
        if (!total.any || p.best > total.best) {
            total = p;
        } else if (p.best == total.best) {
            total.count += p.count;  // chunks are in lex order, first stays first
        }
    }
    return {half_int{total.best}, total.count, strategy_from_index(q.d, total.first)};
}

struct CorrelationMaxResult {
    double value = 0;
    std::array<int, 6> signs{};  // +-1 assignment a1,a2,b1,b2,c1,c2
};

/// Exact maximum over the 64 deterministic +-1 assignments.
inline CorrelationMaxResult classical_max_correlation(const CorrelationInequality& q) {
    CorrelationMaxResult best;
    bool any = false;
    for (int mask = 0; mask < 64; ++mask) {
        double s[6];
        for (int b = 0; b < 6; ++b) s[b] = (mask >> b) & 1 ? -1.0 : 1.0;
        CorrelationValues v;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) v.triples[i][j][k] = s[i] * s[2 + j] * s[4 + k];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                v.ab[i][j] = s[i] * s[2 + j];
                v.ac[i][j] = s[i] * s[4 + j];
                v.bc[i][j] = s[2 + i] * s[4 + j];
            }
        for (int i = 0; i < 2; ++i) {
            v.a[i] = s[i];
            v.b[i] = s[2 + i];
            v.c[i] = s[4 + i];
        }
        double val = evaluate_correlation(q, v);
        if (!any || val > best.value) {
            any = true;
            best.value = val;
            for (int b = 0; b < 6; ++b) best.signs[b] = static_cast<int>(s[b]);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Collins-Gisin coordinates: truncated-outcome indicators P(a|i), P(ab|ij),
// P(abc|ijk) with outcomes restricted to 0..d-2. Dimension (2d-1)^3 - 1.

using CGVector = std::vector<signed char>;

inline int cg_dimension(int d) {
    const int m = 2 * d - 1;
    return m * m * m - 1;
}

inline CGVector cg_embed(const DeterministicStrategy& s, int d) {
    const int dm = d - 1;
    CGVector v(cg_dimension(d), 0);
    size_t pos = 0;
    const int out[3][2] = {{s.x[0], s.x[1]}, {s.x[2], s.x[3]}, {s.x[4], s.x[5]}};
    for (int party = 0; party < 3; ++party)
        for (int i = 0; i < 2; ++i)
            for (int o = 0; o < dm; ++o) v[pos++] = out[party][i] == o;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int o1 = 0; o1 < dm; ++o1)
                    for (int o2 = 0; o2 < dm; ++o2)
                        v[pos++] = out[pr[0]][i] == o1 && out[pr[1]][j] == o2;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int o1 = 0; o1 < dm; ++o1)
                    for (int o2 = 0; o2 < dm; ++o2)
                        for (int o3 = 0; o3 < dm; ++o3)
                            v[pos++] = out[0][i] == o1 && out[1][j] == o2 && out[2][k] == o3;
    return v;
}

/// Linear functional (w, const) with 2*LHS(s) = w . cg_embed(s) + const for
/// every deterministic strategy; the second, independent evaluation path.
struct CGFunctional {
    std::vector<long long> w2;
    long long const2 = 0;
};

inline CGFunctional cg_functional(const BellInequality& q) {
    const int d = q.d, dm = d - 1;
    CGFunctional f;
    f.w2.assign(cg_dimension(d), 0);
    const int single_base[3] = {0, 2 * dm, 4 * dm};
    const int pair_block = 4 * dm * dm;
    const int pair_base0 = 6 * dm;                       // AB, then AC, then BC
    const int triple_base = 6 * dm + 3 * pair_block;
    auto single_idx = [&](int party, int setting, int o) {
        return single_base[party] + setting * dm + o;
    };
    auto pair_idx = [&](int which, int s1, int s2, int o1, int o2) {
        return pair_base0 + which * pair_block + ((s1 * 2 + s2) * dm + o1) * dm + o2;
    };
    auto triple_idx3 = [&](int i, int j, int k, int o1, int o2, int o3) {
        return triple_base + ((((i * 2 + j) * 2 + k) * dm + o1) * dm + o2) * dm + o3;
    };
    // P(abc|ijk) expands over the truncated indicators: a factor with outcome
    // d-1 contributes (1 - sum_v I(v)).
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const long long* row = &q.c2[static_cast<size_t>((i * 2 + j) * 2 + k) * d];
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        for (int c = 0; c < d; ++c) {
                            long long f2 = row[(a + b + c) % d];
                            if (f2 == 0) continue;
                            // affine form per party: list of coords with sign, plus constant
                            struct Form {
                                int lo, n;  // outcome range contributing
                                int sign;
                                int cnst;
                            };
                            auto form = [&](int o) {
                                if (o < dm) return Form{o, 1, +1, 0};
                                return Form{0, dm, -1, 1};
                            };
                            Form fa = form(a), fb = form(b), fc = form(c);
                            // triple part
                            for (int oa = fa.lo; oa < fa.lo + fa.n; ++oa)
                                for (int ob = fb.lo; ob < fb.lo + fb.n; ++ob)
                                    for (int oc = fc.lo; oc < fc.lo + fc.n; ++oc)
                                        f.w2[triple_idx3(i, j, k, oa, ob, oc)] +=
                                            f2 * fa.sign * fb.sign * fc.sign;
                            // pair parts (one constant factor)
                            if (fc.cnst)
                                for (int oa = fa.lo; oa < fa.lo + fa.n; ++oa)
                                    for (int ob = fb.lo; ob < fb.lo + fb.n; ++ob)
                                        f.w2[pair_idx(0, i, j, oa, ob)] += f2 * fa.sign * fb.sign;
                            if (fb.cnst)
                                for (int oa = fa.lo; oa < fa.lo + fa.n; ++oa)
                                    for (int oc = fc.lo; oc < fc.lo + fc.n; ++oc)
                                        f.w2[pair_idx(1, i, k, oa, oc)] += f2 * fa.sign * fc.sign;
                            if (fa.cnst)
                                for (int ob = fb.lo; ob < fb.lo + fb.n; ++ob)
                                    for (int oc = fc.lo; oc < fc.lo + fc.n; ++oc)
                                        f.w2[pair_idx(2, j, k, ob, oc)] += f2 * fb.sign * fc.sign;
                            // single parts (two constant factors)
                            if (fb.cnst && fc.cnst)
                                for (int oa = fa.lo; oa < fa.lo + fa.n; ++oa)
                                    f.w2[single_idx(0, i, oa)] += f2 * fa.sign;
                            if (fa.cnst && fc.cnst)
                                for (int ob = fb.lo; ob < fb.lo + fb.n; ++ob)
                                    f.w2[single_idx(1, j, ob)] += f2 * fb.sign;
                            if (fa.cnst && fb.cnst)
                                for (int oc = fc.lo; oc < fc.lo + fc.n; ++oc)
                                    f.w2[single_idx(2, k, oc)] += f2 * fc.sign;
                            if (fa.cnst && fb.cnst && fc.cnst) f.const2 += f2;
                        }
            }
    return f;
}

inline long long evaluate_cg_functional(const CGFunctional& f, const CGVector& v) {
    long long s = f.const2;
    for (size_t n = 0; n < f.w2.size(); ++n) s += f.w2[n] * v[n];
    return s;
}

/// Incremental fraction-free Gaussian elimination over the integers. Rows are
/// gcd-normalized after each combination step; all arithmetic is exact and a
/// blow-up beyond 62 bits aborts instead of returning a wrong rank.
class AffineRankAccumulator {
  public:
    explicit AffineRankAccumulator(int cols) : cols_(cols) {}

    bool add(std::vector<long long> v) {
        for (size_t n = 0; n < rows_.size(); ++n) {
            const auto& row = rows_[n];
            const int p = pivots_[n];
            if (v[p] == 0) continue;
            const __int128 rp = row[p], vp = v[p];
            long long g = 0;
            for (int c = 0; c < cols_; ++c) {
                __int128 nv = rp * v[c] - vp * row[c];
                v[c] = detail::narrow128(nv);
                g = std::gcd(g, v[c] < 0 ? -v[c] : v[c]);
            }
            if (g > 1)
                for (auto& x : v) x /= g;
        }
        int pivot = -1;
        for (int c = 0; c < cols_; ++c)
            if (v[c] != 0) {
                pivot = c;
                break;
            }
        if (pivot < 0) return false;
        if (v[pivot] < 0)
            for (auto& x : v) x = -x;
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

    bool add_cg_difference(const CGVector& v, const CGVector& base) {
        std::vector<long long> diff(cols_);
        for (int c = 0; c < cols_; ++c) diff[c] = static_cast<long long>(v[c]) - base[c];
        return add(std::move(diff));
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    int cols_;
    std::vector<std::vector<long long>> rows_;
    std::vector<int> pivots_;
};

struct TightnessReport {
    bool is_valid = false;     // classical max <= bound
    bool is_attained = false;  // classical max == bound
    unsigned long long saturating_count = 0;
    int affine_rank = 0;
    int polytope_dim = 0;
    bool is_facet = false;
    half_int classical_value;
};

/// Certifies facet-ness: enumerates the strategies attaining the classical
/// maximum and computes the exact affine rank of their Collins-Gisin vectors.
inline TightnessReport facet_check(const BellInequality& q, bool unsafe_large = false,
                                   int threads = 1) {
    if (q.d > 5 && !unsafe_large)
        throw std::invalid_argument("facet_check limited to d <= 5 (pass unsafe_large to override)");
    TightnessReport rep;
    rep.polytope_dim = cg_dimension(q.d);
    ClassicalMaxResult mx = classical_max(q, threads);
    rep.classical_value = mx.value;
    rep.is_valid = mx.value.twice <= q.bound2;
    rep.is_attained = mx.value.twice == q.bound2;
    AffineRankAccumulator acc(rep.polytope_dim);
    CGVector base;
    const int ceiling = rep.polytope_dim - 1;  // saturators lie on a hyperplane
    for_each_strategy(q.d, [&](const DeterministicStrategy& s) {
        if (lhs2_on_strategy(q, s) != mx.value.twice) return;
        ++rep.saturating_count;
        CGVector v = cg_embed(s, q.d);
        if (base.empty()) {
            base = std::move(v);
            return;
        }
        if (acc.rank() < ceiling) acc.add_cg_difference(v, base);
    });
    rep.affine_rank = rep.saturating_count ? acc.rank() : 0;
    rep.is_facet = rep.is_valid && rep.is_attained && rep.affine_rank == rep.polytope_dim - 1;
    return rep;
}

inline std::string certificate_text(const BellInequality& q, const TightnessReport& r) {
    std::string out;
    out += "facet-certificate\n";
    out += to_text(q);
    out += "classical_max=" + r.classical_value.str() + "\n";
    out += "saturating_count=" + std::to_string(r.saturating_count) + "\n";
    out += "affine_rank=" + std::to_string(r.affine_rank) + "\n";
    out += "polytope_dim=" + std::to_string(r.polytope_dim) + "\n";
    out += std::string("valid=") + (r.is_valid ? "true" : "false") + "\n";
    out += std::string("attained=") + (r.is_attained ? "true" : "false") + "\n";
    out += std::string("verdict=") + (r.is_facet ? "facet" : "not-facet") + "\n";
    return out;
}

inline long long coefficient_sum2(const BellInequality& q) {
    long long s = 0;
    for (long long v : q.c2) s += v;
    return s;
}

/// Value on the uniform table p = 1/d; zero for every catalog inequality.
inline double white_noise_lhs(const BellInequality& q) {
    return 0.5 * static_cast<double>(coefficient_sum2(q)) / q.d;
}

/// Affine rank of the full vertex set; must equal (2d-1)^3 - 1.
inline int polytope_dimension_selftest(int d) {
    const int D = cg_dimension(d);
    AffineRankAccumulator acc(D);
    CGVector base;
    for_each_strategy(d, [&](const DeterministicStrategy& s) {
        if (acc.rank() >= D) return;
        CGVector v = cg_embed(s, d);
        if (base.empty()) {
            base = std::move(v);
            return;
        }
        acc.add_cg_difference(v, base);
    });
    return acc.rank();
}

}  // namespace tribell
