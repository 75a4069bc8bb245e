// figures.hpp: plot-ready datasets for the nine standard figures
//
//   1  projected-surface gradient at the coherent critical point, N = 20
//   2  d<H>/dq at the coherent critical point for N = 20, 50, 100
//   3  exact and variational ground energies per parity, N = 20
//   4  F against x for N = 2, 10, 20, 100
//   5  (Delta J_x)^2 / N^2: projected, exact and coherent, N = 10
//   6  (Delta q)^2: projected, exact and coherent, N = 10
//   7  joint photon/excitation distributions at gamma = 0.55 and 1, N = 10
//   8  ground-state fidelity per parity for N = 10, 20, 40, 50
//   9  photon and excited-atom marginals at gamma = 0.55 and 1, N = 10

#pragma once

#include "dicke/dataset.hpp"
#include "dicke/exact.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dicke {

/// Raised for requests that are malformed rather than failed computations.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GammaGrid {
    double min;
    double max;
    int steps;  // number of points; steps == 1 requires min == max

    std::vector<double> points() const;
};

struct FigureOptions {
    double omega_a = 1.0;
    std::optional<std::vector<int>> n_atoms;
    std::optional<GammaGrid> gamma;
    ConvergeOptions converge{};
    unsigned jobs = 1;
};

struct FigureInfo {
    int id;
    std::string title;
    std::vector<int> default_n;
    GammaGrid default_grid;  // x grid for figure 4
};

const FigureInfo& figure_info(int id);

/// Throws UsageError for ids outside 1..9.
Dataset figure_data(int id, const FigureOptions& options = {});

}  // namespace dicke
