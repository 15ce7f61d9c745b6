#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sawtooth/errors.hpp"
#include "sawtooth/localization.hpp"

using namespace sawtooth;

namespace {

Eigen::VectorXd fock_vector(const SectorBasis& basis, FockState s) {
  Eigen::VectorXd v =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.dim()));
  v[static_cast<Eigen::Index>(rank(basis, s))] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("perturbative state coefficients and support") {
  const SectorBasis b = build_sector_basis(10, 5);

  {
    const ModelParams ising{10, 0.0, 0.0, 1.0};
    const PerturbativeState phi = build_phi_loc(ising, b);
    CHECK(phi.c2 == 0.0);
    CHECK(phi.c3 == 0.0);
    // equal superposition of the domain wall and its complement
    const Eigen::Index dw =
        static_cast<Eigen::Index>(rank(b, domain_wall_state(10)));
    const Eigen::Index cdw = static_cast<Eigen::Index>(
        rank(b, ph_complement(domain_wall_state(10), 10)));
    CHECK(phi.vector[dw] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(phi.vector[cdw] == doctest::Approx(1.0 / std::sqrt(2.0)));
    int nonzero = 0;
    for (Eigen::Index i = 0; i < phi.vector.size(); ++i) {
      if (phi.vector[i] != 0.0) ++nonzero;
    }
    CHECK(nonzero == 2);
  }

  {
    const ModelParams p{10, -0.1, -0.1, 1.0};
    const PerturbativeState phi = build_phi_loc(p, b);
    CHECK(phi.c2 == doctest::Approx(-0.09).epsilon(1e-14));
    CHECK(phi.c3 == doctest::Approx(-0.09).epsilon(1e-14));
    CHECK(phi.vector.norm() == doctest::Approx(1.0).epsilon(1e-14));
    int nonzero = 0;
    for (Eigen::Index i = 0; i < phi.vector.size(); ++i) {
      if (phi.vector[i] != 0.0) ++nonzero;
    }
    CHECK(nonzero == 6);
    // invariant under the complement map
    for (std::size_t k = 0; k < b.dim(); ++k) {
      const std::size_t kc = rank(b, ph_complement(b.states[k], 10));
      CHECK(phi.vector[static_cast<Eigen::Index>(k)] ==
            doctest::Approx(phi.vector[static_cast<Eigen::Index>(kc)])
                .epsilon(1e-14));
    }
  }

  {
    // destructive suppression: negative Jp/V shrinks the admixtures
    const ModelParams neg{10, -0.5, -0.5, 1.0};
    const ModelParams pos{10, -0.5, 0.5, 1.0};
    const PerturbativeState phin = build_phi_loc(neg, b);
    const PerturbativeState phip = build_phi_loc(pos, b);
    CHECK(std::abs(phin.c2) < std::abs(phip.c2));
    CHECK(std::abs(phin.c3) < std::abs(phip.c3));
  }

  CHECK_THROWS_AS(build_phi_loc({12, -0.1, -0.1, 1.0},
                                build_sector_basis(12, 6)),
                  unsupported_size_error);
  CHECK_THROWS_AS(build_phi_loc({10, -0.1, -0.1, 0.0}, b),
                  std::invalid_argument);
}

TEST_CASE("locating the localized eigenstate") {
  const SectorBasis b = build_sector_basis(10, 5);
  const Eigen::VectorXd dw = fock_vector(b, domain_wall_state(10));

  {
    // Ising limit: degenerate doublet, overlap at least 1/sqrt(2)
    const ModelParams p{10, 0.0, 0.0, 1.0};
    const SpectralData spec =
        diagonalize(build_hamiltonian(p, b, InteractionConvention::plain));
    const LocalizedEigenstate loc = find_localized_eigenstate(spec, dw);
    CHECK(loc.overlap >= 1.0 / std::sqrt(2.0) - 1e-9);
  }
  {
    const ModelParams p{10, -0.3, -0.3, 1.0};
    const SpectralData spec =
        diagonalize(build_hamiltonian(p, b, InteractionConvention::plain));
    CHECK(find_localized_eigenstate(spec, dw).overlap > 0.5);
  }
  {
    const ModelParams p{10, -3.0, -3.0, 1.0};
    const SpectralData spec =
        diagonalize(build_hamiltonian(p, b, InteractionConvention::plain));
    CHECK(find_localized_eigenstate(spec, dw).overlap < 0.35);
  }
}

TEST_CASE("fidelity") {
  const SectorBasis b = build_sector_basis(10, 5);
  const ModelParams p{10, -0.4, -0.4, 1.0};
  const SpectralData spec =
      diagonalize(build_hamiltonian(p, b, InteractionConvention::plain));

  // identical / orthogonal limits, via states assembled from eigenvectors
  PerturbativeState as_eig;
  as_eig.vector = spec.vectors.col(5);
  CHECK(fidelity(as_eig, spec, 5) == doctest::Approx(1.0).epsilon(1e-12));
  as_eig.vector = spec.vectors.col(6);
  CHECK(fidelity(as_eig, spec, 5) == doctest::Approx(0.0).epsilon(1e-12));

  // wide-regime agreement holds with the PH-symmetric convention, where the
  // located eigenstate is a definite-parity partner of the DW doublet
  const ModelParams deep{10, -0.4, -0.4, 1.0};
  const SpectralData dspec = diagonalize(
      build_hamiltonian(deep, b, InteractionConvention::symmetrized));
  const Eigen::VectorXd dw = fock_vector(b, domain_wall_state(10));
  const PerturbativeState phi = build_phi_loc(deep, b);
  const LocalizedEigenstate loc = find_localized_eigenstate(dspec, phi.vector);
  CHECK(fidelity(phi, dspec, loc.index) >= 0.9);
}

TEST_CASE("fidelity projects onto degenerate subspaces") {
  const SectorBasis b = build_sector_basis(10, 5);
  const ModelParams ising{10, 0.0, 0.0, 1.0};
  const SpectralData spec =
      diagonalize(build_hamiltonian(ising, b, InteractionConvention::plain));
  const Eigen::VectorXd dw = fock_vector(b, domain_wall_state(10));
  const LocalizedEigenstate loc = find_localized_eigenstate(spec, dw);
  const PerturbativeState phi = build_phi_loc(ising, b);
  // phi spans the DW/complement doublet; projection onto the degenerate
  // subspace recovers the full weight regardless of eigenvector mixing
  CHECK(fidelity(phi, spec, loc.index) == doctest::Approx(1.0).epsilon(1e-9));
}
