// observables.hpp: named set of field and matter expectation values

#pragma once

#include <array>
#include <string_view>

namespace dicke {

/// Expectation values, squared fluctuations and two correlations.
/// q = (a + a^dag)/sqrt2, p = i(a^dag - a)/sqrt2, J_x = (J_+ + J_-)/2,
/// J_y = (J_+ - J_-)/(2i), n = a^dag a, Lambda = n + J_z + j.
struct ObservableSet {
    double q = 0, p = 0, jx = 0, jy = 0, jz = 0, n = 0, lambda = 0;
    double var_q = 0, var_p = 0, var_jx = 0, var_jy = 0, var_jz = 0, var_n = 0, var_lambda = 0;
    double jz_n = 0;  // <J_z a^dag a>
    double jx_q = 0;  // <J_x q>

    static constexpr std::size_t size = 16;

    std::array<double, size> values() const {
        return {q, p, jx, jy, jz, n, lambda, var_q, var_p, var_jx, var_jy, var_jz, var_n, var_lambda, jz_n, jx_q};
    }
};

enum class Observable {
    q, p, jx, jy, jz, n, lambda,
    var_q, var_p, var_jx, var_jy, var_jz, var_n, var_lambda,
    jz_n, jx_q,
};

inline constexpr std::array<Observable, ObservableSet::size> all_observables{
    Observable::q, Observable::p, Observable::jx, Observable::jy, Observable::jz,
    Observable::n, Observable::lambda, Observable::var_q, Observable::var_p,
    Observable::var_jx, Observable::var_jy, Observable::var_jz, Observable::var_n,
    Observable::var_lambda, Observable::jz_n, Observable::jx_q,
};

/// Column-friendly identifier, e.g. "var_jx".
constexpr std::string_view name(Observable o) {
    constexpr std::array<std::string_view, ObservableSet::size> names{
        "q", "p", "jx", "jy", "jz", "n", "lambda", "var_q", "var_p", "var_jx",
        "var_jy", "var_jz", "var_n", "var_lambda", "jz_n", "jx_q"};
    return names[static_cast<std::size_t>(o)];
}

inline double get(const ObservableSet& s, Observable o) { return s.values()[static_cast<std::size_t>(o)]; }

}  // namespace dicke
