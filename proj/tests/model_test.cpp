#include <algorithm>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "lightcone/error.hpp"
#include "lightcone/model/hamiltonian.hpp"
#include "lightcone/model/state.hpp"
#include "oracles/kron_hamiltonian.hpp"

using namespace lightcone;
using namespace lightcone::model;

namespace {

std::shared_ptr<const FockBasis> make_basis(int m, int n_max) {
  return std::make_shared<const FockBasis>(FockBasis::build(m, n_max));
}

Eigen::VectorXd spectrum(const SparseHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig{Eigen::MatrixXcd(h.matrix()), Eigen::EigenvaluesOnly};
  return eig.eigenvalues();
}

}  // namespace

TEST(Grid, SmallestGrid) {
  const auto g = FieldGrid::build(2, 1.0, 1.0, 1.0);
  EXPECT_EQ(std::vector<double>(g.momenta().begin(), g.momenta().end()), (std::vector<double>{-1, 1}));
  EXPECT_EQ(std::vector<double>(g.frequencies().begin(), g.frequencies().end()), (std::vector<double>{1, 1}));
  EXPECT_EQ(g.dk(), 1.0);
}

TEST(Grid, FrequenciesScaleWithSpeed) {
  const auto g = FieldGrid::build(4, 2.0, 2.0, 1.0);
  EXPECT_EQ(std::vector<double>(g.momenta().begin(), g.momenta().end()), (std::vector<double>{-2, -1, 1, 2}));
  EXPECT_EQ(std::vector<double>(g.frequencies().begin(), g.frequencies().end()), (std::vector<double>{4, 2, 2, 4}));
}

TEST(Grid, ParityAndBox) {
  const auto g = FieldGrid::build(64, 20.0, 1.0, 1.0);
  for (int j = 0; j < g.mode_count(); ++j) {
    EXPECT_EQ(g.momenta()[g.partner(j)], -g.momenta()[j]);
    EXPECT_GT(g.frequencies()[j], 0.0);
  }
  EXPECT_NEAR(g.box_length(), 2 * std::numbers::pi / 0.625, 1e-12);
}

TEST(Grid, Errors) {
  EXPECT_THROW(FieldGrid::build(3, 1, 1, 1), ArgumentError);
  EXPECT_THROW(FieldGrid::build(0, 1, 1, 1), ArgumentError);
  EXPECT_THROW(FieldGrid::build(2, -1, 1, 1), ArgumentError);
  EXPECT_THROW(FieldGrid::build(2, 1, 0, 1), ArgumentError);
  EXPECT_THROW(FieldGrid::build(2, 1, 1, std::nan("")), ArgumentError);
}

TEST(Basis, Dimensions) {
  EXPECT_EQ(FockBasis::build(2, 1).dimension(), 12u);
  EXPECT_EQ(FockBasis::build(4, 2).dimension(), 60u);
  EXPECT_EQ(FockBasis::build(1, 0).dimension(), 4u);
  EXPECT_EQ(FockBasis::build(64, 2).dimension(), 4u * (1 + 64 + 2080));
}

TEST(Basis, LabelIndexBijection) {
  for (auto [m, n] : {std::pair{3, 3}, {5, 2}, {1, 4}, {6, 1}}) {
    const auto b = FockBasis::build(m, n);
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < b.dimension(); ++i) {
      const auto label = b.label(i);
      EXPECT_EQ(b.index(label), i);
      EXPECT_TRUE(std::is_sorted(label.photons.begin(), label.photons.end()));
      EXPECT_LE(static_cast<int>(label.photons.size()), n);
      if (i % 4 == 0) EXPECT_TRUE(seen.insert(label.photons).second);
    }
  }
}

TEST(Basis, Errors) {
  EXPECT_THROW(FockBasis::build(0, 1), ArgumentError);
  EXPECT_THROW(FockBasis::build(4, -1), ArgumentError);
  EXPECT_THROW(FockBasis::build(4096, 3), ResourceLimitError);
  EXPECT_THROW(FockBasis::build(8, 2, 100), ResourceLimitError);
  const auto b = FockBasis::build(4, 1);
  EXPECT_THROW(b.label(b.dimension()), ArgumentError);
  EXPECT_THROW(b.index(BasisLabel{Level::ground, Level::ground, {0, 1}}), ArgumentError);
  EXPECT_THROW(b.index(BasisLabel{Level::ground, Level::ground, {4}}), ArgumentError);
}

TEST(Hamiltonian, ExactlyHermitian) {
  const auto basis = make_basis(8, 2);
  const auto grid = FieldGrid::build(8, 3.0, 1.3, 0.7);
  const auto h = assemble_hamiltonian({{1.1, 0.3, -0.2}, {0.9, -0.17, 0.41}}, grid, basis);
  EXPECT_EQ(h.hermiticity_defect(), 0.0);
  for (int r = 0; r < h.matrix().outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(h.matrix(), r); it; ++it) {
      EXPECT_EQ(it.value(), std::conj(h.entry(it.col(), r)));
    }
  }
}

TEST(Hamiltonian, OffDiagonalStructure) {
  const auto basis = make_basis(4, 2);
  const auto h = assemble_hamiltonian({{1, 0.1, 0}, {1, 0.2, 0.5}}, FieldGrid::build(4, 2, 1, 1), basis);
  for (int r = 0; r < h.matrix().outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(h.matrix(), r); it; ++it) {
      if (it.col() == r) continue;
      const auto a = basis->label(r), b = basis->label(it.col());
      const int flips = (a.a != b.a) + (a.b != b.b);
      EXPECT_EQ(flips, 1);
      const auto& big = a.photons.size() > b.photons.size() ? a.photons : b.photons;
      const auto& small = a.photons.size() > b.photons.size() ? b.photons : a.photons;
      ASSERT_EQ(big.size(), small.size() + 1);
      EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
  }
}

TEST(Hamiltonian, DecoupledSpectrum) {
  const auto basis = make_basis(4, 2);
  const auto grid = FieldGrid::build(4, 2.0, 1.0, 1.0);
  const auto h = assemble_hamiltonian({{1, 0, 0}, {1, 0, 0.3}}, grid, basis);
  std::vector<double> expected;
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const auto l = basis->label(i);
    double e = 0.5 * ((l.a == Level::excited) ? 1 : -1) + 0.5 * ((l.b == Level::excited) ? 1 : -1);
    for (int m : l.photons) e += grid.frequencies()[m];
    expected.push_back(e);
    EXPECT_EQ(h.entry(i, i).real(), e);
  }
  EXPECT_EQ(h.matrix().nonZeros(), static_cast<Eigen::Index>(basis->dimension()));
  std::sort(expected.begin(), expected.end());
  const auto ev = spectrum(h);
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(ev[static_cast<Eigen::Index>(i)], expected[i], 1e-12);
}

TEST(Hamiltonian, GroundStateMatchesKroneckerOracle) {
  const auto basis = make_basis(2, 1);
  const auto h = assemble_hamiltonian({{1, 0.1, 0}, {1, 0, 0}}, FieldGrid::build(2, 1, 1, 1), basis);
  oracle::KronInput in;
  in.d_A = 0.1;
  const auto sys = oracle::build_kron(in);
  ASSERT_EQ(sys.h.rows(), 12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig{sys.h, Eigen::EigenvaluesOnly};
  EXPECT_NEAR(spectrum(h)[0], eig.eigenvalues()[0], 1e-12);
}

TEST(Hamiltonian, EntriesMatchKroneckerOracle) {
  oracle::KronInput in{1.2, 0.8, 0.13, -0.07, -0.3, 0.45, 1.5, 0.6, 4, 2.5, 2};
  const auto sys = oracle::build_kron(in);
  const auto basis = make_basis(in.modes, in.n_max);
  const auto grid = FieldGrid::build(in.modes, in.k_max, in.speed, in.normalization);
  const auto h = assemble_hamiltonian({{in.omega_A, in.d_A, in.x_A}, {in.omega_B, in.d_B, in.x_B}}, grid, basis);
  ASSERT_EQ(static_cast<std::size_t>(sys.h.rows()), h.dimension());
  std::vector<std::size_t> map;
  for (const auto& occ : sys.occ) {
    BasisLabel label{static_cast<Level>(occ[0]), static_cast<Level>(occ[1]), {}};
    for (int j = 0; j < in.modes; ++j) label.photons.insert(label.photons.end(), occ[2 + j], j);
    map.push_back(basis->index(label));
  }
  double worst = 0.0;
  for (Eigen::Index r = 0; r < sys.h.rows(); ++r)
    for (Eigen::Index c = 0; c < sys.h.cols(); ++c)
      worst = std::max(worst, std::abs(sys.h(r, c) - h.entry(map[r], map[c])));
  EXPECT_LT(worst, 1e-14);
}

TEST(Hamiltonian, MirrorSymmetry) {
  // Swap A and B and reflect positions about the midpoint.
  const auto basis = make_basis(6, 2);
  const auto grid = FieldGrid::build(6, 3.0, 1.0, 1.0);
  const auto h1 = assemble_hamiltonian({{1.0, 0.2, 0.1}, {1.3, 0.05, 0.7}}, grid, basis);
  const auto h2 = assemble_hamiltonian({{1.3, 0.05, 0.1}, {1.0, 0.2, 0.7}}, grid, basis);
  const auto s1 = spectrum(h1), s2 = spectrum(h2);
  EXPECT_LT((s1 - s2).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hamiltonian, CouplingScalingIsEntryExact) {
  const auto basis = make_basis(8, 2);
  for (double s : {2.0, 0.5, 4.0}) {
    const auto h1 = assemble_hamiltonian({{1, 0.02, 0}, {1, 0.03, 0.15}}, FieldGrid::build(8, 5, 1, 1), basis);
    const auto h2 =
        assemble_hamiltonian({{1, 0.02 / s, 0}, {1, 0.03 / s, 0.15}}, FieldGrid::build(8, 5, 1, s * s), basis);
    EXPECT_EQ(h1.matrix().nonZeros(), h2.matrix().nonZeros());
    EXPECT_TRUE(Eigen::MatrixXcd(h1.matrix()) == Eigen::MatrixXcd(h2.matrix())) << "s = " << s;
  }
}

TEST(Hamiltonian, ZeroDipoleEntriesAreNotStored) {
  const auto basis = make_basis(4, 1);
  const auto h = assemble_hamiltonian({{1, 0.1, 0}, {1, 0.0, 1}}, FieldGrid::build(4, 2, 1, 1), basis);
  for (int r = 0; r < h.matrix().outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(h.matrix(), r); it; ++it)
      if (it.col() != r) EXPECT_NE(basis->label(r).a, basis->label(it.col()).a);
}

TEST(Hamiltonian, Errors) {
  const auto basis = make_basis(4, 1);
  EXPECT_THROW(assemble_hamiltonian({{1, 0, 0}, {1, 0, 0}}, FieldGrid::build(2, 1, 1, 1), basis), ArgumentError);
  EXPECT_THROW(assemble_hamiltonian({{0, 0, 0}, {1, 0, 0}}, FieldGrid::build(4, 1, 1, 1), basis), ArgumentError);
  EXPECT_THROW(assemble_hamiltonian({{1, 0, 0}, {1, 0, INFINITY}}, FieldGrid::build(4, 1, 1, 1), basis), ArgumentError);
  EXPECT_THROW(assemble_hamiltonian({{1, 0, 0}, {1, 0, 0}}, FieldGrid::build(4, 1, 1, 1), nullptr), ArgumentError);
}

TEST(Triplets, RoundTrip) {
  const auto basis = make_basis(4, 2);
  const auto h = assemble_hamiltonian({{1, 0.1, 0}, {1, 0.2, 0.3}}, FieldGrid::build(4, 2, 1, 1), basis);
  std::stringstream ss;
  write_triplets(ss, h);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("# lightcone sparse hamiltonian v1\n# dimension 60\n", 0), 0u);
  const auto back = read_triplets(ss);
  EXPECT_EQ(back.dimension, 60u);
  EXPECT_TRUE(Eigen::MatrixXcd(back.matrix) == Eigen::MatrixXcd(h.matrix()));
}

TEST(Triplets, Malformed) {
  std::stringstream missing("0 0 1 0\n");
  EXPECT_THROW(read_triplets(missing), ArgumentError);
  std::stringstream range("# dimension 2\n2 0 1 0\n");
  EXPECT_THROW(read_triplets(range), ArgumentError);
  std::stringstream junk("# dimension 2\n0 x 1 0\n");
  EXPECT_THROW(read_triplets(junk), ArgumentError);
}

TEST(States, Switch) {
  const auto basis = make_basis(4, 2);
  const auto s = switch_state(basis);
  EXPECT_EQ((s.amplitudes.array() != 0.0).count(), 2);
  const auto eg = basis->index({Level::excited, Level::ground, {}});
  const auto ge = basis->index({Level::ground, Level::excited, {}});
  EXPECT_EQ(s.amplitudes[eg], std::complex<double>(1 / std::sqrt(2.0)));
  EXPECT_EQ(s.amplitudes[ge], std::complex<double>(1 / std::sqrt(2.0)));
  EXPECT_NEAR(s.norm(), 1.0, 1e-15);
  EXPECT_EQ(s.amplitudes[basis->index({Level::ground, Level::ground, {}})], 0.0);
}

TEST(States, Products) {
  const auto basis = make_basis(4, 2);
  const auto eg = product_state(basis, Level::excited, Level::ground);
  const auto ge = product_state(basis, Level::ground, Level::excited);
  EXPECT_EQ(eg.amplitudes[basis->index({Level::excited, Level::ground, {}})], 1.0);
  EXPECT_EQ(ge.amplitudes[basis->index({Level::ground, Level::excited, {}})], 1.0);
  EXPECT_EQ(eg.amplitudes.squaredNorm(), 1.0);
  EXPECT_EQ(eg.amplitudes.dot(ge.amplitudes), 0.0);
  EXPECT_EQ(initial_state(basis, InitialState::gA_eB).amplitudes, ge.amplitudes);
  EXPECT_EQ(parse_initial_state("eA_gB"), InitialState::eA_gB);
  EXPECT_THROW(parse_initial_state("both"), ArgumentError);
}
