#pragma once

#include <string>
#include <vector>

#include "tribell/inequality.hpp"

namespace tribell {

enum class CatalogForm { probability, correlation };

struct CatalogEntry {
    std::string name;
    CatalogForm form;
    int d;            // outcome count (correlation entries are dichotomic)
    double bound;
    std::string role;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"mermin-corr", CatalogForm::correlation, 2, 2,
         "three-qubit correlation inequality, triples only"},
        {"mermin-prob", CatalogForm::probability, 2, 2,
         "probability form of mermin-corr"},
        {"qutrit", CatalogForm::probability, 3, 6,
         "three-qutrit joint-probability inequality"},
        {"quartit", CatalogForm::probability, 4, 12,
         "three-ququart joint-probability inequality"},
        {"quintit", CatalogForm::probability, 5, 4,
         "three-ququint joint-probability inequality"},
        {"quartit-reduced", CatalogForm::probability, 4, 12,
         "quartit with outcomes displaced by 2; reduces to qubit-corr on binary outcomes"},
        {"qubit-corr", CatalogForm::correlation, 2, 3,
         "correlation form of quartit-reduced, carries pair and single terms"},
        {"qutrit-corr-q", CatalogForm::correlation, 2, 1,
         "bound-1 form of the qutrit-descended three-qubit inequality"},
        {"qubit-corr-q", CatalogForm::correlation, 2, 1,
         "qubit-corr rescaled to bound 1"},
        {"quintit-reduced", CatalogForm::probability, 5, 4,
         "quintit with outcomes displaced by 2; reduces to mermin-corr-alt on binary outcomes"},
        {"mermin-corr-alt", CatalogForm::correlation, 2, 2,
         "displaced Mermin correlation inequality produced by the quintit reduction"},
    };
    return entries;
}

namespace detail {

[[noreturn]] inline void unknown_catalog_name(const std::string& name) {
    std::string msg = "unknown inequality '" + name + "'; valid names:";
    for (const auto& e : catalog_entries()) msg += " " + e.name;
    throw std::invalid_argument(msg);
}

}  // namespace detail

inline bool catalog_has(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return true;
    return false;
}

inline const CatalogEntry& catalog_lookup(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return e;
    detail::unknown_catalog_name(name);
}

/// Probability-form entries, coefficient rows in triple order
/// 111,112,121,122,211,212,221,222.
///
/// quintit-reduced is stored in its complete d=5 form: the published reduction
/// drops the -2 P(.=4) terms on the (112),(121),(211) triples because residue 4
/// is unreachable for binary outcomes, but without them the inequality has
/// local bound 6, not 4. The complete form equals quintit displaced by m=2.
inline BellInequality catalog_probability(const std::string& name) {
    using Rows = std::array<std::vector<long long>, 8>;
    if (name == "mermin-prob") {
        Rows rows = {{{0, 0}, {1, -1}, {1, -1}, {0, 0}, {1, -1}, {0, 0}, {0, 0}, {-1, 1}}};
        return BellInequality::from_integer_rows(2, 2, name, rows);
    }
    if (name == "qutrit") {
        Rows rows = {{{-1, -1, 2},
                      {1, -2, 1},
                      {1, -2, 1},
                      {2, -1, -1},
                      {1, -2, 1},
                      {2, -1, -1},
                      {2, -1, -1},
                      {-2, -2, 4}}};
        return BellInequality::from_integer_rows(3, 6, name, rows);
    }
    if (name == "quartit") {
        Rows rows = {{{-5, 1, 3, 1},
                      {3, -7, 3, 1},
                      {3, -7, 3, 1},
                      {3, 1, -5, 1},
                      {3, -7, 3, 1},
                      {3, 1, -5, 1},
                      {3, 1, -5, 1},
                      {-1, -3, -1, 5}}};
        return BellInequality::from_integer_rows(4, 12, name, rows);
    }
    if (name == "quintit") {
        Rows rows = {{{-2, 1, 0, 0, 1},
                      {1, 0, -2, 0, 1},
                      {1, 0, -2, 0, 1},
                      {1, 0, 0, 1, -2},
                      {1, 0, -2, 0, 1},
                      {1, 0, 0, 1, -2},
                      {1, 0, 0, 1, -2},
                      {0, -2, 0, 1, 1}}};
        return BellInequality::from_integer_rows(5, 4, name, rows);
    }
    if (name == "quartit-reduced") {
        Rows rows = {{{3, 1, -5, 1},
                      {3, 1, 3, -7},
                      {3, 1, 3, -7},
                      {-5, 1, 3, 1},
                      {3, 1, 3, -7},
                      {-5, 1, 3, 1},
                      {-5, 1, 3, 1},
                      {-1, 5, -1, -3}}};
        return BellInequality::from_integer_rows(4, 12, name, rows);
    }
    if (name == "quintit-reduced") {
        Rows rows = {{{0, 1, -2, 1, 0},
                      {0, 1, 1, 0, -2},
                      {0, 1, 1, 0, -2},
                      {1, -2, 1, 0, 0},
                      {0, 1, 1, 0, -2},
                      {1, -2, 1, 0, 0},
                      {1, -2, 1, 0, 0},
                      {1, 1, 0, -2, 0}}};
        return BellInequality::from_integer_rows(5, 4, name, rows);
    }
    if (catalog_has(name)) throw std::invalid_argument("'" + name + "' is a correlation-form inequality");
    detail::unknown_catalog_name(name);
}

inline CorrelationInequality catalog_correlation(const std::string& name) {
    CorrelationInequality q;
    q.label = name;
    if (name == "mermin-corr") {
        q.bound = 2;
        q.triples[0][0][1] = 1;  // A1B1C2
        q.triples[0][1][0] = 1;  // A1B2C1
        q.triples[1][0][0] = 1;  // A2B1C1
        q.triples[1][1][1] = -1; // A2B2C2
        return q;
    }
    if (name == "mermin-corr-alt") {
        q.bound = 2;
        q.triples[0][0][0] = -1;
        q.triples[0][1][1] = 1;
        q.triples[1][0][1] = 1;
        q.triples[1][1][0] = 1;
        return q;
    }
    if (name == "qubit-corr" || name == "qubit-corr-q") {
        const double s = name == "qubit-corr" ? 1.0 : 1.0 / 3.0;
        q.bound = name == "qubit-corr" ? 3.0 : 1.0;
        q.triples[0][0][0] = -s;
        q.triples[0][0][1] = s;
        q.triples[0][1][0] = s;
        q.triples[1][0][0] = s;
        q.triples[1][1][1] = -s;
        q.ab[0][1] = q.ab[1][0] = q.ab[1][1] = -s;
        q.ac[0][1] = q.ac[1][0] = q.ac[1][1] = -s;
        q.bc[0][1] = q.bc[1][0] = q.bc[1][1] = -s;
        q.a[0] = q.b[0] = q.c[0] = s;
        return q;
    }
    if (name == "qutrit-corr-q") {
        q.bound = 1;
        q.triples[0][0][0] = 0.25;
        q.triples[0][1][1] = -0.25;
        q.triples[1][0][1] = -0.25;
        q.triples[1][1][0] = -0.25;
        q.triples[1][1][1] = 0.5;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                q.ab[i][j] = -0.25;
                q.ac[i][j] = 0.25;
                q.bc[i][j] = 0.25;
            }
        return q;
    }
    if (catalog_has(name)) throw std::invalid_argument("'" + name + "' is a probability-form inequality");
    detail::unknown_catalog_name(name);
}

}  // namespace tribell
