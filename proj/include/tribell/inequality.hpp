#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tribell/exact.hpp"

namespace tribell {

// Setting indices i,j,k are 1-based in {1,2}; outcome residues are 0-based.
inline constexpr int kTripleCount = 8;

inline int triple_index(int i, int j, int k) {
    if (i < 1 || i > 2 || j < 1 || j > 2 || k < 1 || k > 2)
        throw std::invalid_argument("setting indices must be 1 or 2");
    return (i - 1) * 4 + (j - 1) * 2 + (k - 1);
}

inline std::array<int, 3> triple_from_index(int t) {
    return {1 + ((t >> 2) & 1), 1 + ((t >> 1) & 1), 1 + (t & 1)};
}

/// A three-party two-setting Bell inequality on joint outcome residues:
///   sum_{ijk,r} f^r_{ijk} P(a_i+b_j+c_k = r mod d)  <=  bound.
/// Coefficients are stored as 2*f so half-integer entries stay exact.
struct BellInequality {
    int d = 0;
    long long bound2 = 0;  // 2 * classical bound
    std::string label;
    std::vector<long long> c2;  // 8*d entries, 2 * f^r_{ijk}

    long long coeff2(int i, int j, int k, int r) const {
        return c2[static_cast<size_t>(triple_index(i, j, k)) * d + check_residue(r)];
    }
    double coeff(int i, int j, int k, int r) const {
        return static_cast<double>(coeff2(i, j, k, r)) / 2.0;
    }
    half_int bound() const { return half_int{bound2}; }

    bool integer_coeffs() const {
        for (long long v : c2)
            if (v % 2 != 0) return false;
        return bound2 % 2 == 0;
    }

    int check_residue(int r) const {
        if (r < 0 || r >= d) throw std::invalid_argument("residue out of range");
        return r;
    }

    static BellInequality from_integer_rows(int d, long long bound, std::string label,
                                            const std::array<std::vector<long long>, 8>& rows) {
        BellInequality q;
        q.d = d;
        q.bound2 = 2 * bound;
        q.label = std::move(label);
        q.c2.assign(static_cast<size_t>(8) * d, 0);
        for (int t = 0; t < 8; ++t) {
            if (static_cast<int>(rows[t].size()) != d)
                throw std::invalid_argument("coefficient row length must equal d");
            for (int r = 0; r < d; ++r) q.c2[static_cast<size_t>(t) * d + r] = 2 * rows[t][r];
        }
        return q;
    }

    friend bool operator==(const BellInequality& a, const BellInequality& b) {
        return a.d == b.d && a.bound2 == b.bound2 && a.c2 == b.c2;
    }
};

/// P(a_i+b_j+c_k = r mod d) for all 8 setting triples.
struct ModularProbabilityTable {
    int d = 0;
    std::vector<double> p;  // 8*d entries

    double at(int i, int j, int k, int r) const {
        return p[static_cast<size_t>(triple_index(i, j, k)) * d + r];
    }
    double& at(int i, int j, int k, int r) {
        return p[static_cast<size_t>(triple_index(i, j, k)) * d + r];
    }

    static ModularProbabilityTable zero(int d) {
        ModularProbabilityTable t;
        t.d = d;
        t.p.assign(static_cast<size_t>(8) * d, 0.0);
        return t;
    }
    static ModularProbabilityTable uniform(int d) {
        ModularProbabilityTable t = zero(d);
        for (double& v : t.p) v = 1.0 / d;
        return t;
    }

    // Each triple's residue distribution must be normalized and nonnegative.
    void check_valid(double tol = 1e-12) const {
        for (int t = 0; t < 8; ++t) {
            double s = 0;
            for (int r = 0; r < d; ++r) {
                double v = p[static_cast<size_t>(t) * d + r];
                if (v < -tol) throw std::runtime_error("negative probability in modular table");
                s += v;
            }
            if (std::abs(s - 1.0) > tol)
                throw std::runtime_error("modular table row not normalized");
        }
    }
};

inline double evaluate_lhs(const BellInequality& q, const ModularProbabilityTable& t) {
    if (q.d != t.d) throw std::invalid_argument("inequality and table dimension mismatch");
    double s = 0;
    for (size_t n = 0; n < q.c2.size(); ++n) s += 0.5 * static_cast<double>(q.c2[n]) * t.p[n];
    return s;
}

/// Displacement of probabilities: P(.=r) -> P(.=r+m). Coefficient of residue r
/// in the result equals the coefficient of (r-m mod d) in the input.
inline BellInequality shift_outcomes(const BellInequality& q, int m) {
    if (m < 0 || m >= q.d) throw std::invalid_argument("shift must satisfy 0 <= m <= d-1");
    BellInequality out = q;
    for (int t = 0; t < 8; ++t)
        for (int r = 0; r < q.d; ++r)
            out.c2[static_cast<size_t>(t) * q.d + r] =
                q.c2[static_cast<size_t>(t) * q.d + (r - m % q.d + q.d) % q.d];
    return out;
}

/// sigma maps party slot p (0=A,1=B,2=C) to its new slot; residues untouched.
inline BellInequality permute_parties(const BellInequality& q, const std::array<int, 3>& sigma) {
    bool seen[3] = {false, false, false};
    for (int p : sigma) {
        if (p < 0 || p > 2 || seen[p]) throw std::invalid_argument("sigma is not a permutation");
        seen[p] = true;
    }
    BellInequality out = q;
    for (int t = 0; t < 8; ++t) {
        auto s = triple_from_index(t);
        std::array<int, 3> ns{};
        for (int p = 0; p < 3; ++p) ns[sigma[p]] = s[p];
        for (int r = 0; r < q.d; ++r)
            out.c2[static_cast<size_t>(triple_index(ns[0], ns[1], ns[2])) * q.d + r] =
                q.c2[static_cast<size_t>(t) * q.d + r];
    }
    return out;
}

struct NormalizedCoefficients {
    std::vector<double> values;  // f/(d(d-1)), triple-major
    double min_value = 0, max_value = 0;
    bool within_unit = true;
};

inline NormalizedCoefficients normalized_coefficients(const BellInequality& q) {
    NormalizedCoefficients n;
    const double scale = static_cast<double>(q.d) * (q.d - 1);
    n.values.reserve(q.c2.size());
    for (long long v : q.c2) {
        double x = 0.5 * static_cast<double>(v) / scale;
        n.values.push_back(x);
        n.min_value = std::min(n.min_value, x);
        n.max_value = std::max(n.max_value, x);
        if (x < -1.0 || x > 1.0) n.within_unit = false;
    }
    return n;
}

/// Subtracts delta(i,j,k) from every residue coefficient of the triple, using
/// sum_r P(.=r) = 1; the bound drops by the delta total, so the reformed
/// inequality holds for exactly the same local models.
inline BellInequality reform_lhs(const BellInequality& q, const std::array<long long, 8>& deltas) {
    BellInequality out = q;
    long long total = 0;
    for (int t = 0; t < 8; ++t) {
        total += deltas[t];
        for (int r = 0; r < q.d; ++r)
            out.c2[static_cast<size_t>(t) * q.d + r] -= 2 * deltas[t];
    }
    out.bound2 -= 2 * total;
    return out;
}

/// Exact rescaling by num/den (positive); throws if any entry would leave the
/// half-integer grid.
inline BellInequality scale_inequality(const BellInequality& q, long long num, long long den) {
    if (num <= 0 || den <= 0) throw std::invalid_argument("scale must be positive");
    BellInequality out = q;
    auto scale1 = [&](long long v) {
        __int128 w = static_cast<__int128>(v) * num;
        if (w % den != 0) throw std::invalid_argument("scale does not preserve half-integers");
        return detail::narrow128(w / den);
    };
    for (auto& v : out.c2) v = scale1(v);
    out.bound2 = scale1(out.bound2);
    return out;
}

// ---------------------------------------------------------------------------
// Correlation-function form (dichotomic observables, outcomes +-1).

/// Expectation values E for all triples, pairs and singles of a two-setting
/// three-qubit experiment.
struct CorrelationValues {
    double triples[2][2][2] = {};
    double ab[2][2] = {}, ac[2][2] = {}, bc[2][2] = {};
    double a[2] = {}, b[2] = {}, c[2] = {};

    double triple(int i, int j, int k) const { return triples[i - 1][j - 1][k - 1]; }
    double pair_ab(int i, int j) const { return ab[i - 1][j - 1]; }
    double pair_ac(int i, int k) const { return ac[i - 1][k - 1]; }
    double pair_bc(int j, int k) const { return bc[j - 1][k - 1]; }
    double single_a(int i) const { return a[i - 1]; }
    double single_b(int j) const { return b[j - 1]; }
    double single_c(int k) const { return c[k - 1]; }

    bool within_unit(double tol = 1e-12) const {
        auto ok = [tol](double v) { return v >= -1.0 - tol && v <= 1.0 + tol; };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    if (!ok(triples[i][j][k])) return false;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!ok(ab[i][j]) || !ok(ac[i][j]) || !ok(bc[i][j])) return false;
        for (int i = 0; i < 2; ++i)
            if (!ok(a[i]) || !ok(b[i]) || !ok(c[i])) return false;
        return true;
    }
};

/// Linear functional over correlation functions with a classical bound.
/// A two-party reduction is represented by zero triple coefficients.
struct CorrelationInequality {
    std::string label;
    double bound = 0;
    double triples[2][2][2] = {};
    double ab[2][2] = {}, ac[2][2] = {}, bc[2][2] = {};
    double a[2] = {}, b[2] = {}, c[2] = {};

    bool three_party() const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    if (triples[i][j][k] != 0) return true;
        return false;
    }
};

inline double evaluate_correlation(const CorrelationInequality& q, const CorrelationValues& v) {
    double s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                s += q.triples[i][j][k] * v.triples[i][j][k];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s += q.ab[i][j] * v.ab[i][j] + q.ac[i][j] * v.ac[i][j] + q.bc[i][j] * v.bc[i][j];
    for (int i = 0; i < 2; ++i) s += q.a[i] * v.a[i] + q.b[i] * v.b[i] + q.c[i] * v.c[i];
    return s;
}

/// Pins one party's observables to the deterministic values (v1, v2) in
/// {-1,+1} and collects terms. The constant term moves into the bound.
inline CorrelationInequality restrict_party_deterministic(const CorrelationInequality& q,
                                                          int party, double v1, double v2) {
    if (party < 0 || party > 2) throw std::invalid_argument("party must be 0, 1 or 2");
    if (std::abs(std::abs(v1) - 1.0) > 1e-12 || std::abs(std::abs(v2) - 1.0) > 1e-12)
        throw std::invalid_argument("deterministic values must be +-1");
    const double val[2] = {v1, v2};
    CorrelationInequality out;
    out.label = q.label + "|" + "ABC"[party] + (v1 > 0 ? "+" : "-") + (v2 > 0 ? "+" : "-");
    double constant = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double t = q.triples[i][j][k];
                if (t == 0) continue;
                if (party == 0)
                    out.bc[j][k] += t * val[i];
                else if (party == 1)
                    out.ac[i][k] += t * val[j];
                else
                    out.ab[i][j] += t * val[k];
            }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (party == 0) {
                out.bc[i][j] += q.bc[i][j];
                out.b[j] += q.ab[i][j] * val[i];
                out.c[j] += q.ac[i][j] * val[i];
            } else if (party == 1) {
                out.ac[i][j] += q.ac[i][j];
                out.a[i] += q.ab[i][j] * val[j];
                out.c[j] += q.bc[i][j] * val[i];
            } else {
                out.ab[i][j] += q.ab[i][j];
                out.a[i] += q.ac[i][j] * val[j];
                out.b[i] += q.bc[i][j] * val[j];
            }
        }
    for (int i = 0; i < 2; ++i) {
        if (party == 0) {
            out.b[i] += q.b[i];
            out.c[i] += q.c[i];
            constant += q.a[i] * val[i];
        } else if (party == 1) {
            out.a[i] += q.a[i];
            out.c[i] += q.c[i];
            constant += q.b[i] * val[i];
        } else {
            out.a[i] += q.a[i];
            out.b[i] += q.b[i];
            constant += q.c[i] * val[i];
        }
    }
    out.bound = q.bound - constant;
    return out;
}

// ---------------------------------------------------------------------------
// Full joint outcome distributions (one per setting triple).

struct OutcomeDistribution {
    int d = 0;
    std::vector<double> p;  // d^3 entries, index (a*d + b)*d + c

    double at(int a, int b, int c) const {
        return p[(static_cast<size_t>(a) * d + b) * d + c];
    }
    double& at(int a, int b, int c) { return p[(static_cast<size_t>(a) * d + b) * d + c]; }

    static OutcomeDistribution zero(int d) {
        OutcomeDistribution o;
        o.d = d;
        o.p.assign(static_cast<size_t>(d) * d * d, 0.0);
        return o;
    }
    double total() const {
        double s = 0;
        for (double v : p) s += v;
        return s;
    }
};

struct JointDistribution {
    int d = 0;
    std::array<OutcomeDistribution, 8> per_triple;

    const OutcomeDistribution& at(int i, int j, int k) const {
        return per_triple[triple_index(i, j, k)];
    }
    OutcomeDistribution& at(int i, int j, int k) { return per_triple[triple_index(i, j, k)]; }

    static JointDistribution zero(int d) {
        JointDistribution j;
        j.d = d;
        for (auto& o : j.per_triple) o = OutcomeDistribution::zero(d);
        return j;
    }
};

/// Dichotomic expectation values from a binary-outcome joint distribution,
/// outcome v contributing (-1)^v. Marginals are computed per traced-out
/// setting and must agree (no-signaling) within tol.
inline CorrelationValues expectations_from_joint(const JointDistribution& joint,
                                                 double tol = 1e-10) {
    if (joint.d != 2) throw std::invalid_argument("expectations_from_joint requires d=2");
    CorrelationValues v;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const auto& P = joint.per_triple[i * 4 + j * 2 + k];
                double e = 0, n = 0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            e += ((a + b + c) % 2 ? -1.0 : 1.0) * P.at(a, b, c);
                            n += P.at(a, b, c);
                        }
                if (std::abs(n - 1.0) > tol)
                    throw std::runtime_error("joint distribution not normalized");
                v.triples[i][j][k] = e;
            }
    // pair marginals, checked against both settings of the traced party
    auto pair_expect = [&](int axis, int s1, int s2, int traced_setting) {
        int idx[3];
        double e = 0;
        int free0 = axis == 0 ? 1 : 0;
        int free1 = axis == 2 ? 1 : 2;
        idx[axis] = traced_setting;
        idx[free0] = s1;
        idx[free1] = s2;
        const auto& P = joint.per_triple[idx[0] * 4 + idx[1] * 2 + idx[2]];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) {
                    int o[3] = {a, b, c};
                    int par = (o[free0] + o[free1]) % 2;
                    e += (par ? -1.0 : 1.0) * P.at(a, b, c);
                }
        return e;
    };
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            // traced party: C for ab, B for ac, A for bc
            double e0 = pair_expect(2, s1, s2, 0), e1 = pair_expect(2, s1, s2, 1);
            if (std::abs(e0 - e1) > tol)
                throw std::runtime_error("no-signaling violated in pair marginal E(A" +
                                         std::to_string(s1 + 1) + "B" + std::to_string(s2 + 1) + ")");
            v.ab[s1][s2] = 0.5 * (e0 + e1);
            e0 = pair_expect(1, s1, s2, 0);
            e1 = pair_expect(1, s1, s2, 1);
            if (std::abs(e0 - e1) > tol)
                throw std::runtime_error("no-signaling violated in pair marginal E(A C)");
            v.ac[s1][s2] = 0.5 * (e0 + e1);
            e0 = pair_expect(0, s1, s2, 0);
            e1 = pair_expect(0, s1, s2, 1);
            if (std::abs(e0 - e1) > tol)
                throw std::runtime_error("no-signaling violated in pair marginal E(B C)");
            v.bc[s1][s2] = 0.5 * (e0 + e1);
        }
    // single-party marginals over the four settings of the other two parties
    for (int party = 0; party < 3; ++party)
        for (int s = 0; s < 2; ++s) {
            double ref = 0;
            bool first = true;
            for (int u = 0; u < 2; ++u)
                for (int w = 0; w < 2; ++w) {
                    int idx[3];
                    idx[party] = s;
                    idx[(party + 1) % 3] = u;
                    idx[(party + 2) % 3] = w;
                    const auto& P = joint.per_triple[idx[0] * 4 + idx[1] * 2 + idx[2]];
                    double e = 0;
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c) {
                                int o[3] = {a, b, c};
                                e += (o[party] ? -1.0 : 1.0) * P.at(a, b, c);
                            }
                    if (first) {
                        ref = e;
                        first = false;
                    } else if (std::abs(e - ref) > tol) {
                        throw std::runtime_error("no-signaling violated in single marginal");
                    }
                }
            if (party == 0)
                v.a[s] = ref;
            else if (party == 1)
                v.b[s] = ref;
            else
                v.c[s] = ref;
        }
    return v;
}

// ---------------------------------------------------------------------------
// Plain-text serialization. Bell inequalities: a `bell` header followed by one
// coefficient row per setting triple, lexicographic in (i,j,k). Correlation
// inequalities: a `corr` header followed by term:coefficient lines.

namespace detail {

inline std::string format_exact(double v) {
    char buf[64];
    if (v == static_cast<long long>(v)) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        double back = 0;
        std::sscanf(buf, "%lg", &back);
        if (back != v) std::snprintf(buf, sizeof buf, "%.19g", v);
    }
    return buf;
}

inline std::string format_half(long long twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    // exact decimal: odd/2 always ends in .5
    long long h = twice / 2;
    long long frac5 = twice < 0 ? -(twice % 2) : twice % 2;
    std::string s = (twice < 0 && h == 0) ? "-0" : std::to_string(h);
    return s + (frac5 ? ".5" : "");
}

inline long long parse_half(const std::string& tok) {
    size_t dot = tok.find('.');
    if (dot == std::string::npos) return 2 * std::stoll(tok);
    if (tok.substr(dot) != ".5") throw std::invalid_argument("coefficient not a half-integer: " + tok);
    std::string ip = tok.substr(0, dot);
    bool neg = !ip.empty() && ip[0] == '-';
    long long whole = (ip == "-" || ip == "-0" || ip == "0" || ip.empty()) ? 0 : std::stoll(ip);
    long long tw = 2 * whole + (neg || whole < 0 ? -1 : 1);
    return tw;
}

}  // namespace detail

inline std::string to_text(const BellInequality& q) {
    std::string out = "bell d=" + std::to_string(q.d) + " bound=" + detail::format_half(q.bound2) +
                      " label=" + q.label + "\n";
    for (int t = 0; t < 8; ++t) {
        auto s = triple_from_index(t);
        out += std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]);
        for (int r = 0; r < q.d; ++r)
            out += " " + detail::format_half(q.c2[static_cast<size_t>(t) * q.d + r]);
        out += "\n";
    }
    return out;
}

inline BellInequality parse_bell_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "bell") throw std::invalid_argument("expected 'bell' header");
    BellInequality q;
    std::string field;
    for (int n = 0; n < 3 && in >> field; ++n) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed bell header field");
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "d")
            q.d = std::stoi(val);
        else if (key == "bound")
            q.bound2 = detail::parse_half(val);
        else if (key == "label")
            q.label = val;
        else
            throw std::invalid_argument("unknown bell header field: " + key);
    }
    if (q.d < 2) throw std::invalid_argument("bell header must set d >= 2");
    q.c2.assign(static_cast<size_t>(8) * q.d, 0);
    for (int row = 0; row < 8; ++row) {
        std::string key;
        if (!(in >> key)) throw std::invalid_argument("missing coefficient row");
        if (key.size() != 3) throw std::invalid_argument("bad triple key: " + key);
        int t = triple_index(key[0] - '0', key[1] - '0', key[2] - '0');
        for (int r = 0; r < q.d; ++r) {
            std::string tok;
            if (!(in >> tok)) throw std::invalid_argument("short coefficient row: " + key);
            q.c2[static_cast<size_t>(t) * q.d + r] = detail::parse_half(tok);
        }
    }
    return q;
}

inline std::string to_text(const CorrelationInequality& q) {
    std::string out = "corr bound=" + detail::format_exact(q.bound) + " label=" + q.label + "\n";
    auto term = [&](const std::string& name, double v) {
        if (v != 0) out += name + ":" + detail::format_exact(v) + "\n";
    };
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                term("A" + std::to_string(i + 1) + "B" + std::to_string(j + 1) + "C" +
                         std::to_string(k + 1),
                     q.triples[i][j][k]);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            term("A" + std::to_string(i + 1) + "B" + std::to_string(j + 1), q.ab[i][j]);
            term("A" + std::to_string(i + 1) + "C" + std::to_string(j + 1), q.ac[i][j]);
            term("B" + std::to_string(i + 1) + "C" + std::to_string(j + 1), q.bc[i][j]);
        }
    for (int i = 0; i < 2; ++i) {
        term("A" + std::to_string(i + 1), q.a[i]);
        term("B" + std::to_string(i + 1), q.b[i]);
        term("C" + std::to_string(i + 1), q.c[i]);
    }
    return out;
}

inline CorrelationInequality parse_corr_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "corr") throw std::invalid_argument("expected 'corr' header");
    CorrelationInequality q;
    std::string field;
    for (int n = 0; n < 2 && in >> field; ++n) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed corr header field");
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "bound")
            q.bound = std::stod(val);
        else if (key == "label")
            q.label = val;
        else
            throw std::invalid_argument("unknown corr header field: " + key);
    }
    std::string item;
    while (in >> item) {
        auto colon = item.rfind(':');
        if (colon == std::string::npos) throw std::invalid_argument("malformed corr term: " + item);
        std::string name = item.substr(0, colon);
        double v = std::stod(item.substr(colon + 1));
        // name is a concatenation of party+setting tokens, e.g. A1B2C1 or B1C2 or A2
        int party_setting[3] = {-1, -1, -1};
        for (size_t pos = 0; pos < name.size(); pos += 2) {
            if (pos + 1 >= name.size()) throw std::invalid_argument("malformed corr term: " + item);
            int party = name[pos] == 'A' ? 0 : name[pos] == 'B' ? 1 : name[pos] == 'C' ? 2 : -1;
            int setting = name[pos + 1] - '0';
            if (party < 0 || setting < 1 || setting > 2)
                throw std::invalid_argument("malformed corr term: " + item);
            party_setting[party] = setting - 1;
        }
        int np = (party_setting[0] >= 0) + (party_setting[1] >= 0) + (party_setting[2] >= 0);
        if (np == 3)
            q.triples[party_setting[0]][party_setting[1]][party_setting[2]] = v;
        else if (np == 2) {
            if (party_setting[2] < 0)
                q.ab[party_setting[0]][party_setting[1]] = v;
            else if (party_setting[1] < 0)
                q.ac[party_setting[0]][party_setting[2]] = v;
            else
                q.bc[party_setting[1]][party_setting[2]] = v;
        } else if (np == 1) {
            if (party_setting[0] >= 0)
                q.a[party_setting[0]] = v;
            else if (party_setting[1] >= 0)
                q.b[party_setting[1]] = v;
            else
                q.c[party_setting[2]] = v;
        } else {
            throw std::invalid_argument("malformed corr term: " + item);
        }
    }
    return q;
}

}  // namespace tribell
