#include "ptgram/models.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "ptgram/biortho.hpp"

namespace ptgram {
namespace {

using namespace std::complex_literals;

MatrixXc pt_symmetrize(const MatrixXc& a, const MatrixXc& p) {
    return (a + p * a.conjugate() * p) / 2.0;
}

bool acceptable_unbroken(const MatrixXc& h) {
    try {
        const auto eig = eigendecompose(h);
        if (!classify_spectrum(eig.values).unbroken) return false;
        return condition_number(eig.vectors) <= kEnsembleConditionLimit;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

std::string_view to_string(ModelFamily family) noexcept {
    switch (family) {
        case ModelFamily::TwoLevel: return "two-level";
        case ModelFamily::LatticeChain: return "lattice-chain";
        case ModelFamily::DiscretizedSchrodinger: return "discretized-schrodinger";
        case ModelFamily::RandomPT: return "random-pt";
    }
    return "unknown";
}

ModelFamily parse_model_family(std::string_view name) {
    for (const auto family : {ModelFamily::TwoLevel, ModelFamily::LatticeChain, ModelFamily::DiscretizedSchrodinger,
                               ModelFamily::RandomPT}) {
        if (name == to_string(family)) return family;
    }
    throw Error(ErrorKind::InvalidInput, "unknown model family '" + std::string(name) + "'");
}

Model two_level(double g, double b) {
    MatrixXc h(2, 2);
    h << 1i * g, b, b, -1i * g;
    return {h, make_parity(ParityKind::SwapPairs, 2)};
}

Model lattice_chain(Eigen::Index n, double gamma, double t, const std::vector<Eigen::Index>& gain_sites) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "lattice chain needs n >= 2");
    MatrixXc h = MatrixXc::Zero(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        h(j, j + 1) = t;
        h(j + 1, j) = t;
    }
    for (const Eigen::Index k : gain_sites) {
        const Eigen::Index mirror = n - 1 - k;
        if (k < 0 || k >= n || k == mirror) {
            throw Error(ErrorKind::InvalidInput, "gain site " + std::to_string(k) + " is invalid for n = " +
                                                     std::to_string(n));
        }
        h(k, k) += 1i * gamma;
        h(mirror, mirror) -= 1i * gamma;
    }
    return {h, make_parity(ParityKind::GridReversal, n)};
}

Model discretized_schrodinger(Eigen::Index n, double L, double epsilon) {
    if (n < 8) throw Error(ErrorKind::InvalidGrid, "grid needs at least 8 points");
    if (!(L > 0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidGrid, "half-width L must be positive");
    if (!std::isfinite(epsilon)) throw Error(ErrorKind::InvalidGrid, "epsilon must be finite");

    const double h = 2.0 * L / static_cast<double>(n - 1);
    const double kinetic = 1.0 / (h * h);
    // Build the left half and mirror it so x_{n-1-j} = -x_j and the potential
    // obeys V(-x) = conj(V(x)) bit-exactly.
    Eigen::VectorXcd potential(n);
    for (Eigen::Index j = 0; j < n / 2; ++j) {
        const double x = -L + h * static_cast<double>(j);
        const std::complex<double> v = x * x * std::pow(std::complex<double>(0.0, x), epsilon);
        potential(j) = v;
        potential(n - 1 - j) = std::conj(v);
    }
    if (n % 2 == 1) potential(n / 2) = 0.0;

    MatrixXc hm = MatrixXc::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        hm(j, j) = 2.0 * kinetic + potential(j);
        if (j + 1 < n) {
            hm(j, j + 1) = -kinetic;
            hm(j + 1, j) = -kinetic;
        }
    }
    return {hm, make_parity(ParityKind::GridReversal, n)};
}

Model random_pt(Eigen::Index n, std::uint64_t seed, double scale, bool unbroken_only) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "random PT model needs n >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto parity = make_parity(ParityKind::GridReversal, n);
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(n));

    const int attempts = unbroken_only ? kRandomPTMaxRetries : 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        MatrixXc a = MatrixXc::Zero(n, n);
        for (Eigen::Index j = 0; j + 1 < n; ++j) {
            const double coupling = 0.5 * std::sqrt(static_cast<double>((j + 1) * (n - j - 1)));
            a(j, j + 1) = coupling;
            a(j + 1, j) = coupling;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = r; c < n; ++c) {
                const double x = normal(rng);
                const double y = normal(rng);
                const std::complex<double> entry = amplitude * std::complex<double>(0.3 * x, scale * y);
                a(r, c) += entry;
                if (c != r) a(c, r) += entry;
            }
        }
        MatrixXc h = pt_symmetrize(a, parity.matrix);
        if (!unbroken_only || acceptable_unbroken(h)) return {std::move(h), parity};
    }
    throw Error(ErrorKind::EnsembleExhausted,
                "no unbroken draw within " + std::to_string(kRandomPTMaxRetries) + " attempts");
}

Model build_model(const ModelSpec& spec) {
    switch (spec.family) {
        case ModelFamily::TwoLevel: return two_level(spec.g, spec.b);
        case ModelFamily::LatticeChain: return lattice_chain(spec.n, spec.gamma, spec.t, spec.gain_sites);
        case ModelFamily::DiscretizedSchrodinger: return discretized_schrodinger(spec.n, spec.L, spec.epsilon);
        case ModelFamily::RandomPT: return random_pt(spec.n, spec.seed, spec.scale, spec.unbroken_only);
    }
    throw Error(ErrorKind::InvalidInput, "unknown model family");
}

}  // namespace ptgram
