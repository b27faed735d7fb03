#pragma once

// Generators of PT-symmetric (H, P) pairs. All models are complex symmetric
// (H^T = H) and satisfy P conj(H) P = H exactly in floating point.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ptgram/linalg.hpp"
#include "ptgram/pt_structure.hpp"

namespace ptgram {

struct Model {
    MatrixXc hamiltonian;
    ParityOperator<double> parity;
};

enum class ModelFamily { TwoLevel, LatticeChain, DiscretizedSchrodinger, RandomPT };

std::string_view to_string(ModelFamily family) noexcept;
/// Accepts "two-level", "lattice-chain", "discretized-schrodinger", "random-pt".
ModelFamily parse_model_family(std::string_view name);

struct ModelSpec {
    ModelFamily family = ModelFamily::TwoLevel;
    double g = 1.0;
    double b = 2.0;
    Eigen::Index n = 16;
    double gamma = 0.1;
    double t = 1.0;
    std::vector<Eigen::Index> gain_sites{0};
    double epsilon = 1.0;
    double L = 5.0;
    std::uint64_t seed = 0;
    double scale = 0.5;
    bool unbroken_only = false;

    Eigen::Index dim() const { return family == ModelFamily::TwoLevel ? 2 : n; }
};

/// H = [[i g, b], [b, -i g]], P = swap. Eigenvalues +-sqrt(b^2 - g^2).
Model two_level(double g, double b);

/// Open tight-binding chain with hopping t and gain/loss +i gamma at each site
/// k in `gain_sites`, -i gamma at its mirror n-1-k. P = grid reversal.
Model lattice_chain(Eigen::Index n, double gamma, double t, const std::vector<Eigen::Index>& gain_sites = {0});

/// -d^2/dx^2 + x^2 (i x)^epsilon on n grid points symmetric about 0 on [-L, L],
/// second-order central differences with Dirichlet ends. P = grid reversal.
Model discretized_schrodinger(Eigen::Index n, double L, double epsilon);

inline constexpr int kRandomPTMaxRetries = 64;
inline constexpr double kEnsembleConditionLimit = 1e8;

/// Random PT-symmetric complex-symmetric matrix, deterministic in `seed`.
/// A = K + (0.3 X + i scale Y) / sqrt(n) with K the mirror-symmetric chain of
/// couplings sqrt((j+1)(n-j-1))/2 (equally spaced spectrum) and X, Y real
/// symmetric with N(0,1) entries; H = (A + P conj(A) P) / 2.
/// With unbroken_only, draws whose spectrum is not entirely real or whose
/// eigenvector condition exceeds kEnsembleConditionLimit are redrawn from the
/// same stream; EnsembleExhausted after kRandomPTMaxRetries attempts.
Model random_pt(Eigen::Index n, std::uint64_t seed, double scale = 0.5, bool unbroken_only = false);

Model build_model(const ModelSpec& spec);

}  // namespace ptgram
