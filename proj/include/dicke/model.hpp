// model.hpp: Dicke model parameters, parity-blocked Fock x Dicke basis, and operator assembly
//
// H = a^dag a + omega_a J_z + (gamma / sqrt(N)) (a^dag + a)(J_+ + J_-)
//
// Basis states are |nu> (x) |j, m> with m = n_e - j. The excitation number
// lambda = nu + n_e is conserved modulo 2, so H is block diagonal in the
// even/odd parity sectors.

#pragma once

#include <Eigen/Sparse>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dicke {

/// Physical parameters. Energies are in units of the field frequency.
class ModelParams {
public:
    ModelParams(double omega_a, double gamma, int n_atoms);

    double omega_a() const noexcept { return omega_a_; }
    double gamma() const noexcept { return gamma_; }
    int n_atoms() const noexcept { return n_atoms_; }

    double j() const noexcept { return 0.5 * n_atoms_; }
    double gamma_c() const noexcept;
    /// Signed reduced coupling gamma / gamma_c.
    double x() const noexcept { return gamma_ / gamma_c(); }
    double abs_x() const noexcept;
    bool superradiant() const noexcept { return abs_x() > 1.0; }

    ModelParams with_gamma(double gamma) const { return {omega_a_, gamma, n_atoms_}; }

private:
    double omega_a_;
    double gamma_;
    int n_atoms_;
};

/// sqrt(omega_a) / 2. Throws std::domain_error for omega_a <= 0.
double gamma_critical(double omega_a);

enum class Parity { even, odd };
/// Parity sector of a basis; `full` is the unprojected basis.
enum class Sector { even, odd, full };

inline int parity_sign(Parity p) noexcept { return p == Parity::even ? 1 : -1; }
inline Sector sector_of(Parity p) noexcept { return p == Parity::even ? Sector::even : Sector::odd; }
std::string to_string(Parity p);
std::string to_string(Sector s);
Parity parse_parity(const std::string& s);

struct BasisState {
    int nu;   // photon number
    int n_e;  // excited atoms, m = n_e - j
    int lambda() const noexcept { return nu + n_e; }
    bool operator==(const BasisState&) const = default;
};

/// Ordered enumeration of basis states with nu + n_e <= lambda_max, filtered
/// by parity. Ordering is lambda ascending, then nu ascending.
class SectorBasis {
public:
    SectorBasis(int n_atoms, int lambda_max, Sector sector);

    int n_atoms() const noexcept { return n_atoms_; }
    int lambda_max() const noexcept { return lambda_max_; }
    Sector sector() const noexcept { return sector_; }
    std::size_t size() const noexcept { return states_.size(); }
    std::span<const BasisState> states() const noexcept { return states_; }
    const BasisState& operator[](std::size_t i) const { return states_[i]; }

    /// Position of (nu, n_e), or nullopt when the state is outside the basis.
    std::optional<std::size_t> index(int nu, int n_e) const noexcept;

private:
    int n_atoms_;
    int lambda_max_;
    Sector sector_;
    std::vector<BasisState> states_;
    std::vector<long> lookup_;  // (lambda_max + 1) x (n_atoms + 1), -1 = absent
};

SectorBasis build_sector_basis(const ModelParams& params, int lambda_max, Sector sector);
inline SectorBasis build_sector_basis(const ModelParams& params, int lambda_max, Parity parity) {
    return build_sector_basis(params, lambda_max, sector_of(parity));
}

/// Closed-form dimensions for integer j. Return nullopt for half-integer j.
struct SectorDimensions {
    std::size_t total;
    std::size_t even;
    std::size_t odd;
};
std::size_t full_dimension_closed_form(int n_atoms, int lambda_max);
std::optional<SectorDimensions> sector_dimensions_closed_form(int n_atoms, int lambda_max);

/// Real symmetric operator in a SectorBasis. Off-diagonal entries are stored
/// in both triangles with bit-identical values.
struct OperatorMatrix {
    using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    Sparse matrix;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
    /// max |M[a,b] - M[b,a]|
    double asymmetry() const;
};

/// Variational truncation: couplings leaving the basis are dropped.
OperatorMatrix build_hamiltonian(const ModelParams& params, const SectorBasis& basis);
/// Diagonal matrix of lambda = nu + n_e.
OperatorMatrix excitation_operator(const SectorBasis& basis);
/// Diagonal matrix exp(i pi Lambda) with entries (-1)^lambda.
OperatorMatrix parity_operator(const SectorBasis& basis);

}  // namespace dicke
