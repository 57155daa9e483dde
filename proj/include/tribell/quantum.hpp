#pragma once

#include <complex>
#include <random>

#include "tribell/inequality.hpp"

namespace tribell {

using cdouble = std::complex<double>;

/// Tripartite pure state, amplitudes indexed (a,b,c) in {0..d-1}^3.
struct PureState {
    int d = 0;
    std::vector<cdouble> amp;  // (a*d + b)*d + c

    cdouble at(int a, int b, int c) const { return amp[(static_cast<size_t>(a) * d + b) * d + c]; }
    cdouble& at(int a, int b, int c) { return amp[(static_cast<size_t>(a) * d + b) * d + c]; }

    double norm2() const {
        double s = 0;
        for (const auto& v : amp) s += std::norm(v);
        return s;
    }
    void check_normalized(double tol = 1e-12) const {
        if (std::abs(norm2() - 1.0) > tol) throw std::runtime_error("state not normalized");
    }

    static PureState zero(int d) {
        PureState s;
        s.d = d;
        s.amp.assign(static_cast<size_t>(d) * d * d, cdouble{});
        return s;
    }
};

inline PureState basis_state(int d, int a, int b, int c) {
    PureState s = PureState::zero(d);
    s.at(a, b, c) = 1.0;
    return s;
}

/// (1/sqrt(d)) sum_k |kkk>.
inline PureState ghz_state(int d) {
    if (d < 2) throw std::invalid_argument("ghz_state requires d >= 2");
    PureState s = PureState::zero(d);
    for (int k = 0; k < d; ++k) s.at(k, k, k) = 1.0 / std::sqrt(static_cast<double>(d));
    return s;
}

/// cos(xi)|000> + sin(xi)|111>.
inline PureState generalized_ghz(double xi) {
    if (xi < 0 || xi > M_PI / 2 + 1e-12)
        throw std::invalid_argument("generalized_ghz requires xi in [0, pi/2]");
    PureState s = PureState::zero(2);
    s.at(0, 0, 0) = std::cos(xi);
    s.at(1, 1, 1) = std::sin(xi);
    return s;
}

/// sin(beta)cos(xi)|100> + sin(beta)sin(xi)|010> + cos(beta)|001>.
inline PureState generalized_w(double beta, double xi) {
    if (beta < 0 || beta > M_PI / 2 + 1e-12 || xi < 0 || xi > M_PI / 2 + 1e-12)
        throw std::invalid_argument("generalized_w requires beta, xi in [0, pi/2]");
    PureState s = PureState::zero(2);
    s.at(1, 0, 0) = std::sin(beta) * std::cos(xi);
    s.at(0, 1, 0) = std::sin(beta) * std::sin(xi);
    s.at(0, 0, 1) = std::cos(beta);
    return s;
}

inline PureState w_state() { return generalized_w(std::acos(1.0 / std::sqrt(3.0)), M_PI / 4); }

/// Five-parameter canonical form of a three-qubit pure state:
/// sqrt(mu0)|000> + sqrt(mu1)e^{i phi}|100> + sqrt(mu2)|101> + sqrt(mu3)|110>
/// + sqrt(mu4)|111>, sum mu = 1, 0 <= phi <= pi.
inline PureState canonical_state(const std::array<double, 5>& mu, double phi) {
    double total = 0;
    for (double m : mu) {
        if (m < 0) throw std::invalid_argument("canonical_state requires mu >= 0");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("canonical_state requires sum mu = 1");
    if (phi < 0 || phi > M_PI + 1e-12)
        throw std::invalid_argument("canonical_state requires phi in [0, pi]");
    PureState s = PureState::zero(2);
    s.at(0, 0, 0) = std::sqrt(mu[0]);
    s.at(1, 0, 0) = std::sqrt(mu[1]) * std::polar(1.0, phi);
    s.at(1, 0, 1) = std::sqrt(mu[2]);
    s.at(1, 1, 0) = std::sqrt(mu[3]);
    s.at(1, 1, 1) = std::sqrt(mu[4]);
    return s;
}

/// Haar-like sample: complex Gaussian amplitudes, normalized. Reproducible.
inline PureState random_pure_state(std::uint64_t seed, int d = 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    PureState s = PureState::zero(d);
    for (auto& v : s.amp) v = cdouble(g(rng), g(rng));
    double n = std::sqrt(s.norm2());
    for (auto& v : s.amp) v /= n;
    return s;
}

/// Per party and setting, the d phase-shifter angles of the multiport device.
struct PhaseSettings {
    int d = 0;
    std::array<std::array<std::vector<double>, 2>, 3> phi;  // [party][setting-1]

    const std::vector<double>& get(int party, int setting) const {
        return phi[party][setting - 1];
    }
    std::vector<double>& get(int party, int setting) { return phi[party][setting - 1]; }

    static PhaseSettings zero(int d) {
        PhaseSettings s;
        s.d = d;
        for (auto& p : s.phi)
            for (auto& v : p) v.assign(d, 0.0);
        return s;
    }
    /// Same two phase vectors for every party.
    static PhaseSettings symmetric(const std::vector<double>& s1, const std::vector<double>& s2) {
        PhaseSettings s;
        s.d = static_cast<int>(s1.size());
        if (s2.size() != s1.size()) throw std::invalid_argument("setting vectors must share length");
        for (auto& p : s.phi) {
            p[0] = s1;
            p[1] = s2;
        }
        return s;
    }
};

/// Unbiased symmetric multiport beam splitter, U_kl = alpha^{kl} e^{i phi_l}/sqrt(d)
/// with alpha = exp(2 pi i / d). Row-major d x d.
inline std::vector<cdouble> multiport_unitary(int d, const std::vector<double>& phases) {
    if (static_cast<int>(phases.size()) != d)
        throw std::invalid_argument("phase vector length must equal d");
    std::vector<cdouble> u(static_cast<size_t>(d) * d);
    const double w = 2.0 * M_PI / d;
    const double rd = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
            u[static_cast<size_t>(k) * d + l] = rd * std::polar(1.0, w * ((k * l) % d) + phases[l]);
    return u;
}

/// P(a,b,c) = |<abc| U_A x U_B x U_C |psi>|^2 for the chosen setting triple.
inline OutcomeDistribution joint_distribution(const PureState& state, const PhaseSettings& settings,
                                              int i, int j, int k) {
    if (state.d != settings.d) throw std::invalid_argument("state and settings dimension mismatch");
    const int d = state.d;
    auto ua = multiport_unitary(d, settings.get(0, i));
    auto ub = multiport_unitary(d, settings.get(1, j));
    auto uc = multiport_unitary(d, settings.get(2, k));
    // staged one-axis contractions
    std::vector<cdouble> t1(state.amp.size()), t2(state.amp.size());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                cdouble s{};
                for (int x = 0; x < d; ++x)
                    s += ua[static_cast<size_t>(a) * d + x] * state.amp[(static_cast<size_t>(x) * d + b) * d + c];
                t1[(static_cast<size_t>(a) * d + b) * d + c] = s;
            }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                cdouble s{};
                for (int y = 0; y < d; ++y)
                    s += ub[static_cast<size_t>(b) * d + y] * t1[(static_cast<size_t>(a) * d + y) * d + c];
                t2[(static_cast<size_t>(a) * d + b) * d + c] = s;
            }
    OutcomeDistribution out = OutcomeDistribution::zero(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                cdouble s{};
                for (int z = 0; z < d; ++z)
                    s += uc[static_cast<size_t>(c) * d + z] * t2[(static_cast<size_t>(a) * d + b) * d + z];
                out.at(a, b, c) = std::norm(s);
            }
    return out;
}

inline JointDistribution joint_all(const PureState& state, const PhaseSettings& settings) {
    JointDistribution j = JointDistribution::zero(state.d);
    for (int i = 1; i <= 2; ++i)
        for (int jj = 1; jj <= 2; ++jj)
            for (int k = 1; k <= 2; ++k) j.at(i, jj, k) = joint_distribution(state, settings, i, jj, k);
    return j;
}

inline ModularProbabilityTable modular_table(const JointDistribution& joint) {
    const int d = joint.d;
    ModularProbabilityTable t = ModularProbabilityTable::zero(d);
    for (int n = 0; n < 8; ++n) {
        const auto& P = joint.per_triple[n];
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c)
                    t.p[static_cast<size_t>(n) * d + (a + b + c) % d] += P.at(a, b, c);
    }
    return t;
}

/// Closed form of the GHZ_d modular probabilities:
/// P(r) = (1/d^2)[d + 2 sum_{m<l} cos((phi^l - phi^m) + 2 pi (l-m) r / d)]
/// with phi^l the per-level sum of the three parties' phases.
inline ModularProbabilityTable ghz_closed_form_table(int d, const PhaseSettings& settings) {
    if (settings.d != d) throw std::invalid_argument("settings dimension mismatch");
    ModularProbabilityTable t = ModularProbabilityTable::zero(d);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k) {
                std::vector<double> phi(d);
                for (int l = 0; l < d; ++l)
                    phi[l] = settings.get(0, i)[l] + settings.get(1, j)[l] + settings.get(2, k)[l];
                for (int r = 0; r < d; ++r) {
                    double s = d;
                    for (int m = 0; m < d; ++m)
                        for (int l = m + 1; l < d; ++l)
                            s += 2.0 * std::cos(phi[l] - phi[m] + 2.0 * M_PI * (l - m) * r / d);
                    t.at(i, j, k, r) = s / (static_cast<double>(d) * d);
                }
            }
    return t;
}

/// Mixes in white noise: p -> (1-F) p + F/d, the modular image of the
/// maximally mixed state.
inline ModularProbabilityTable mix_white_noise(const ModularProbabilityTable& t, double F) {
    if (F < 0 || F > 1) throw std::invalid_argument("noise fraction must lie in [0,1]");
    ModularProbabilityTable out = t;
    for (auto& v : out.p) v = (1.0 - F) * v + F / t.d;
    return out;
}

// ---------------------------------------------------------------------------
// Qubit observables and correlation functions.

struct QubitObservable {
    double nx = 0, ny = 0, nz = 1;

    void check_unit(double tol = 1e-12) const {
        if (std::abs(nx * nx + ny * ny + nz * nz - 1.0) > tol)
            throw std::invalid_argument("Bloch vector must be unit length");
    }
    static QubitObservable from_angles(double theta, double phi) {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }
};

using ObservableSet = std::array<std::array<QubitObservable, 2>, 3>;  // [party][setting-1]

/// <psi| s_al x s_be x s_ga |psi> for Pauli indices 0..3 (0 = identity).
/// Real for Hermitian operators; the 64 entries determine every E value.
inline std::array<double, 64> pauli_correlation_tensor(const PureState& state) {
    if (state.d != 2) throw std::invalid_argument("pauli tensor requires d=2");
    static const cdouble sig[4][2][2] = {
        {{1, 0}, {0, 1}},
        {{0, 1}, {1, 0}},
        {{0, cdouble(0, -1)}, {cdouble(0, 1), 0}},
        {{1, 0}, {0, -1}},
    };
    std::array<double, 64> T{};
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be)
            for (int ga = 0; ga < 4; ++ga) {
                cdouble s{};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c) {
                            cdouble acc{};
                            for (int x = 0; x < 2; ++x)
                                for (int y = 0; y < 2; ++y)
                                    for (int z = 0; z < 2; ++z)
                                        acc += sig[al][a][x] * sig[be][b][y] * sig[ga][c][z] *
                                               state.at(x, y, z);
                            s += std::conj(state.at(a, b, c)) * acc;
                        }
                T[(al * 4 + be) * 4 + ga] = s.real();
            }
    return T;
}

namespace detail {

inline double tensor_entry(const std::array<double, 64>& T, int al, int be, int ga) {
    return T[(al * 4 + be) * 4 + ga];
}

}  // namespace detail

/// All triple, pair and single expectation values of Bloch observables.
inline CorrelationValues qubit_expectations(const PureState& state, const ObservableSet& obs) {
    for (const auto& party : obs)
        for (const auto& o : party) o.check_unit();
    const auto T = pauli_correlation_tensor(state);
    auto vec = [&](int party, int s) {
        const auto& o = obs[party][s];
        return std::array<double, 3>{o.nx, o.ny, o.nz};
    };
    CorrelationValues v;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                double s = 0;
                auto na = vec(0, i), nb = vec(1, j), nc = vec(2, k);
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y)
                        for (int z = 0; z < 3; ++z)
                            s += na[x] * nb[y] * nc[z] * detail::tensor_entry(T, x + 1, y + 1, z + 1);
                v.triples[i][j][k] = s;
            }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto na = vec(0, i), nb = vec(1, j), nc = vec(2, j);
            double sab = 0, sac = 0, sbc = 0;
            auto nb2 = vec(1, i);
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) {
                    sab += na[x] * nb[y] * detail::tensor_entry(T, x + 1, y + 1, 0);
                    sac += na[x] * nc[y] * detail::tensor_entry(T, x + 1, 0, y + 1);
                    sbc += nb2[x] * nc[y] * detail::tensor_entry(T, 0, x + 1, y + 1);
                }
            v.ab[i][j] = sab;
            v.ac[i][j] = sac;
            v.bc[i][j] = sbc;
        }
    for (int i = 0; i < 2; ++i) {
        auto na = vec(0, i), nb = vec(1, i), nc = vec(2, i);
        double sa = 0, sb = 0, sc = 0;
        for (int x = 0; x < 3; ++x) {
            sa += na[x] * detail::tensor_entry(T, x + 1, 0, 0);
            sb += nb[x] * detail::tensor_entry(T, 0, x + 1, 0);
            sc += nc[x] * detail::tensor_entry(T, 0, 0, x + 1);
        }
        v.a[i] = sa;
        v.b[i] = sb;
        v.c[i] = sc;
    }
    return v;
}

/// A pure tripartite state is product across a cut iff the one-party reduced
/// state is pure (second eigenvalue below tol).
struct EntanglementReport {
    std::array<bool, 3> product_cut{};  // A|BC, B|AC, C|AB
    std::array<double, 3> second_eigenvalue{};

    bool entangled() const { return !product_cut[0] && !product_cut[1] && !product_cut[2]; }
    bool fully_product() const { return product_cut[0] && product_cut[1] && product_cut[2]; }
};

inline EntanglementReport entanglement_check(const PureState& state, double tol = 1e-10) {
    if (state.d != 2) throw std::invalid_argument("entanglement_check requires d=2");
    state.check_normalized(1e-9);
    EntanglementReport rep;
    for (int party = 0; party < 3; ++party) {
        // 2x2 reduced density matrix of this party
        cdouble rho[2][2] = {};
        for (int v = 0; v < 2; ++v)
            for (int w = 0; w < 2; ++w)
                for (int o1 = 0; o1 < 2; ++o1)
                    for (int o2 = 0; o2 < 2; ++o2) {
                        int idx1[3], idx2[3];
                        idx1[party] = v;
                        idx2[party] = w;
                        idx1[(party + 1) % 3] = idx2[(party + 1) % 3] = o1;
                        idx1[(party + 2) % 3] = idx2[(party + 2) % 3] = o2;
                        rho[v][w] += state.at(idx1[0], idx1[1], idx1[2]) *
                                     std::conj(state.at(idx2[0], idx2[1], idx2[2]));
                    }
        const double tr = rho[0][0].real() + rho[1][1].real();
        const double det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).real();
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
        const double lam2 = tr / 2.0 - disc;
        rep.second_eigenvalue[party] = lam2;
        rep.product_cut[party] = lam2 < tol;
    }
    return rep;
}

/// The d=2 multiport device measures in the equatorial Bloch direction set by
/// the phase difference: outcome +-1 observable cos(delta) X - sin(delta) Y.
inline QubitObservable bloch_from_multiport_d2(const std::vector<double>& phases) {
    if (phases.size() != 2) throw std::invalid_argument("d=2 phase vector expected");
    const double delta = phases[1] - phases[0];
    return {std::cos(delta), -std::sin(delta), 0.0};
}

// ---------------------------------------------------------------------------
// Plain-text records for states and settings.

inline std::string to_text(const PureState& s) {
    std::string out = "state d=" + std::to_string(s.d) + "\n";
    char buf[96];
    for (int a = 0; a < s.d; ++a)
        for (int b = 0; b < s.d; ++b)
            for (int c = 0; c < s.d; ++c) {
                cdouble v = s.at(a, b, c);
                if (v == cdouble{}) continue;
                std::snprintf(buf, sizeof buf, "amp %d %d %d %.17g %.17g\n", a, b, c, v.real(),
                              v.imag());
                out += buf;
            }
    return out;
}

inline PureState parse_state_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "state") throw std::invalid_argument("expected 'state' header");
    std::string field;
    in >> field;
    if (field.rfind("d=", 0) != 0) throw std::invalid_argument("expected d= field");
    PureState s = PureState::zero(std::stoi(field.substr(2)));
    while (in >> tag) {
        if (tag != "amp") throw std::invalid_argument("expected amp record");
        int a, b, c;
        double re, im;
        in >> a >> b >> c >> re >> im;
        s.at(a, b, c) = cdouble(re, im);
    }
    return s;
}

inline std::string to_text(const PhaseSettings& s) {
    std::string out = "settings d=" + std::to_string(s.d) + "\n";
    char buf[64];
    for (int party = 0; party < 3; ++party)
        for (int setting = 1; setting <= 2; ++setting) {
            out += std::string("phase ") + "ABC"[party] + std::to_string(setting);
            for (double v : s.get(party, setting)) {
                std::snprintf(buf, sizeof buf, " %.17g", v);
                out += buf;
            }
            out += "\n";
        }
    return out;
}

inline PhaseSettings parse_settings_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    if (tag != "settings") throw std::invalid_argument("expected 'settings' header");
    std::string field;
    in >> field;
    if (field.rfind("d=", 0) != 0) throw std::invalid_argument("expected d= field");
    PhaseSettings s = PhaseSettings::zero(std::stoi(field.substr(2)));
    while (in >> tag) {
        if (tag != "phase") throw std::invalid_argument("expected phase record");
        std::string key;
        in >> key;
        int party = key[0] == 'A' ? 0 : key[0] == 'B' ? 1 : 2;
        int setting = key[1] - '0';
        for (int l = 0; l < s.d; ++l) in >> s.get(party, setting)[l];
    }
    return s;
}

}  // namespace tribell
