// Copyright 2026 The kellyq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kellyq/qmath.hpp"
#include "oracles.hpp"

namespace kellyq {
namespace {

using testing::Rng;

double max_reconstruction_error(const ComplexMatrix& m, const Spectrum& s) {
  const ComplexMatrix lambda = ComplexMatrix::diagonal(s.eigenvalues);
  return max_abs_diff(m, s.eigenvectors * lambda * s.eigenvectors.adjoint());
}

TEST(EigHermitian, IdentityKeepsBasisOrder) {
  const Spectrum s = eig_hermitian(ComplexMatrix::identity(2));
  EXPECT_EQ(s.eigenvalues, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(s.eigenvectors, ComplexMatrix::identity(2));
}

TEST(EigHermitian, DiagonalInput) {
  const double d[] = {0.3, 0.7};
  const Spectrum s = eig_hermitian(ComplexMatrix::diagonal(d));
  EXPECT_DOUBLE_EQ(s.eigenvalues[0], 0.7);
  EXPECT_DOUBLE_EQ(s.eigenvalues[1], 0.3);
}

TEST(EigHermitian, PauliXMatchesCharacteristicPolynomial) {
  const ComplexMatrix x(2, 2, {0.0, 1.0, 1.0, 0.0});
  const Spectrum s = eig_hermitian(x);
  const auto expect = testing::eigenvalues_2x2(0.0, 0.0, 1.0);
  EXPECT_NEAR(s.eigenvalues[0], expect[0], 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], expect[1], 1e-14);
  EXPECT_LT(max_reconstruction_error(x, s), 1e-12);
}

TEST(EigHermitian, ComplexTwoByTwoMatchesClosedForm) {
  const Complex b(0.3, -0.4);
  const ComplexMatrix m(2, 2, {0.2, b, std::conj(b), -0.5});
  const auto expect = testing::eigenvalues_2x2(0.2, -0.5, b);
  const Spectrum s = eig_hermitian(m);
  EXPECT_NEAR(s.eigenvalues[0], expect[0], 1e-13);
  EXPECT_NEAR(s.eigenvalues[1], expect[1], 1e-13);
}

TEST(EigHermitian, RandomReconstructionAndOrthonormality) {
  Rng rng(7);
  for (std::size_t n : {1u, 2u, 3u, 4u, 6u, 8u, 16u}) {
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix m = testing::random_hermitian(rng, n);
      const Spectrum s = eig_hermitian(m);
      EXPECT_LT(max_reconstruction_error(m, s), 1e-9) << "n=" << n;
      EXPECT_LT(max_abs_diff(s.eigenvectors.adjoint() * s.eigenvectors, ComplexMatrix::identity(n)), 1e-9);
      EXPECT_TRUE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
  }
}

TEST(EigHermitian, DeterministicAndPhaseNormalized) {
  Rng rng(11);
  const ComplexMatrix m = testing::random_hermitian(rng, 5);
  const Spectrum a = eig_hermitian(m);
  const Spectrum b = eig_hermitian(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
  for (std::size_t k = 0; k < 5; ++k) {
    std::size_t i = 0;
    while (std::abs(a.eigenvectors(i, k)) <= 1e-12) ++i;
    EXPECT_GT(a.eigenvectors(i, k).real(), 0.0);
    EXPECT_EQ(a.eigenvectors(i, k).imag(), 0.0);
  }
}

TEST(EigHermitian, DegenerateSpectrumIsReconstructed) {
  Rng rng(3);
  const ComplexMatrix u = testing::random_unitary(rng, 4);
  const double d[] = {0.4, 0.4, 0.1, 0.1};
  const ComplexMatrix m = u * ComplexMatrix::diagonal(d) * u.adjoint();
  const Spectrum s = eig_hermitian(m);
  EXPECT_LT(max_reconstruction_error(m, s), 1e-9);
  EXPECT_NEAR(s.eigenvalues[0], 0.4, 1e-12);
  EXPECT_NEAR(s.eigenvalues[3], 0.1, 1e-12);
}

TEST(EigHermitian, RejectsNonHermitian) {
  const ComplexMatrix m(2, 2, {0.0, 1.0, 0.0, 0.0});
  try {
    eig_hermitian(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Tensor, IdentityAndProjectors) {
  EXPECT_EQ(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));
  const double p0[] = {1.0, 0.0};
  const double p1[] = {0.0, 1.0};
  const double expect[] = {0.0, 1.0, 0.0, 0.0};
  EXPECT_EQ(tensor(ComplexMatrix::diagonal(p0), ComplexMatrix::diagonal(p1)), ComplexMatrix::diagonal(expect));
}

TEST(Tensor, ScalarBilinearity) {
  const ComplexMatrix a = ComplexMatrix::identity(2) * Complex(3.0, 0.0);
  const ComplexMatrix b = ComplexMatrix::identity(3) * Complex(0.5, 0.0);
  EXPECT_EQ(tensor(a, b), ComplexMatrix::identity(6) * Complex(1.5, 0.0));
}

TEST(Tensor, Associative) {
  Rng rng(5);
  for (std::size_t da : {1u, 2u}) {
    for (std::size_t db : {2u, 3u}) {
      const ComplexMatrix a = testing::ginibre(rng, da, da);
      const ComplexMatrix b = testing::ginibre(rng, db, db);
      const ComplexMatrix c = testing::ginibre(rng, 2, 2);
      EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-14);
    }
  }
}

TEST(PartialTrace, ProductStateRecoversFactor) {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix ra = testing::random_state(rng, 2);
    const DensityMatrix rb = testing::random_state(rng, 3);
    const std::size_t dims[] = {2, 3};
    const std::size_t keep_a[] = {0};
    const std::size_t keep_b[] = {1};
    const DensityMatrix prod = tensor(ra, rb);
    EXPECT_LT(max_abs_diff(partial_trace(prod, dims, keep_a).matrix(), ra.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(prod, dims, keep_b).matrix(), rb.matrix()), 1e-12);
  }
}

TEST(PartialTrace, BellMarginalIsMaximallyMixed) {
  const DensityMatrix bell = testing::bell_state();
  const std::size_t dims[] = {2, 2};
  const std::size_t keep_b[] = {1};
  EXPECT_LT(max_abs_diff(partial_trace(bell, dims, keep_b).matrix(), DensityMatrix::maximally_mixed(2).matrix()),
            1e-15);
}

TEST(PartialTrace, MatchesFourIndexOracle) {
  Rng rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = testing::random_state(rng, 4);
    const std::size_t dims[] = {2, 2};
    const std::size_t keep_a[] = {0};
    const DensityMatrix ra = partial_trace(rho, dims, keep_a);
    const auto oracle = testing::trace_out_second_qubit(rho.matrix());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_LT(std::abs(ra.matrix()(i, j) - oracle[i][j]), 1e-14);
    EXPECT_NEAR(ra.matrix().trace().real(), 1.0, 1e-10);
  }
}

TEST(PartialTrace, TripartiteMiddleFactor) {
  Rng rng(29);
  const DensityMatrix a = testing::random_state(rng, 2);
  const DensityMatrix b = testing::random_state(rng, 3);
  const DensityMatrix c = testing::random_state(rng, 2);
  const DensityMatrix abc = tensor(tensor(a, b), c);
  const std::size_t dims[] = {2, 3, 2};
  const std::size_t keep_b[] = {1};
  const std::size_t keep_ac[] = {0, 2};
  EXPECT_LT(max_abs_diff(partial_trace(abc, dims, keep_b).matrix(), b.matrix()), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(abc, dims, keep_ac).matrix(), tensor(a, c).matrix()), 1e-12);
}

TEST(PartialTrace, DimensionMismatch) {
  const std::size_t dims[] = {2, 3};
  const std::size_t keep[] = {0};
  try {
    partial_trace(testing::bell_state(), dims, keep);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ValidateDensity, AcceptsMaximallyMixed) {
  const double d[] = {0.5, 0.5};
  EXPECT_NO_THROW(validate_density(ComplexMatrix::diagonal(d)));
}

TEST(ValidateDensity, TraceNotOne) {
  const double d[] = {0.5, 0.6};
  try {
    validate_density(ComplexMatrix::diagonal(d));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TraceNotOne);
  }
}

TEST(ValidateDensity, NotPsdNamesEigenvalue) {
  const ComplexMatrix m(2, 2, {0.5, 0.6, 0.6, 0.5});
  // 2x2 formula: 0.5 +- 0.6
  EXPECT_NEAR(testing::eigenvalues_2x2(0.5, 0.5, 0.6)[1], -0.1, 1e-15);
  try {
    validate_density(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    const std::string msg = e.what();
    const auto at = msg.find("smallest eigenvalue = ");
    ASSERT_NE(at, std::string::npos);
    EXPECT_NEAR(std::stod(msg.substr(at + 22)), -0.1, 1e-12);
  }
}

TEST(ValidateDensity, NotHermitian) {
  const ComplexMatrix m(2, 2, {0.5, 0.1, 0.0, 0.5});
  try {
    validate_density(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(ValidateDensity, SymmetrizesWithinTolerance) {
  const ComplexMatrix m(2, 2, {0.5, Complex(0.1, 1e-12), Complex(0.1, 0.0), 0.5});
  const DensityMatrix rho = validate_density(m);
  EXPECT_EQ(hermiticity_error(rho.matrix()), 0.0);
}

TEST(MatrixLiteral, ParsesRowsBitExact) {
  const std::vector<std::string> lines = {"0.5+0.0j 0+0.1j", "0-0.1j 0.5+0j"};
  const ComplexMatrix m = parse_matrix(lines);
  EXPECT_EQ(m(0, 0), Complex(0.5, 0.0));
  EXPECT_EQ(m(0, 1), Complex(0.0, 0.1));
  EXPECT_EQ(m(1, 0), Complex(0.0, -0.1));
  EXPECT_EQ(parse_complex("1e-3-2.5e+2j"), Complex(1e-3, -2.5e2));
  EXPECT_EQ(parse_complex("-0.25"), Complex(-0.25, 0.0));
  EXPECT_EQ(parse_complex("0.7071067811865476+0j").real(), 0.7071067811865476);
}

TEST(MatrixLiteral, MalformedNamesRow) {
  const std::vector<std::string> lines = {"0.5+0j 0+0j", "0+0j 0.5+xj"};
  try {
    parse_matrix(lines);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
  const std::vector<std::string> ragged = {"0.5+0j 0+0j", "0.5+0j"};
  EXPECT_THROW(parse_matrix(ragged), Error);
}

}  // namespace
}  // namespace kellyq
