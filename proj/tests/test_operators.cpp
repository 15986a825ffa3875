#include <doctest.h>

#include <cmath>
#include <sstream>

#include "anderson/operators.hpp"
#include "anderson/spectral.hpp"

using namespace anderson;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("anderson_matrix entries") {
  const auto op = anderson_matrix(from_bit_string("0110"), DisorderParam(4.0));
  CHECK(op.diag == std::vector<double>{2, 6, 6, 2});
  CHECK(op.offdiag == std::vector<double>{-1, -1, -1});
  CHECK(op.max_norm() == 6.0);
  CHECK_THROWS_AS(TridiagonalOperator({1, 2}, {}), DomainError);
}

TEST_CASE("laplacian matrices and closed-form spectra") {
  const auto f2 = laplacian_spectrum(2, LaplacianKind::Free);
  CHECK(f2[0] == doctest::Approx(1.0));
  CHECK(f2[1] == doctest::Approx(3.0));
  const auto n2 = laplacian_spectrum(2, LaplacianKind::Neumann);
  CHECK(n2[0] == doctest::Approx(0.0));
  CHECK(n2[1] == doctest::Approx(2.0));
  CHECK(laplacian_matrix(3, LaplacianKind::Dirichlet).diag == std::vector<double>{3, 2, 3});
  CHECK(laplacian_matrix(3, LaplacianKind::Neumann).diag == std::vector<double>{1, 2, 1});
  CHECK(laplacian_matrix(1, LaplacianKind::Dirichlet).diag == std::vector<double>{4});
  CHECK(laplacian_matrix(1, LaplacianKind::Neumann).diag == std::vector<double>{0});
  CHECK(laplacian_spectrum(1, LaplacianKind::Dirichlet)[0] == doctest::Approx(4.0));
  CHECK(laplacian_spectrum(1, LaplacianKind::Neumann)[0] == 0.0);
  CHECK(laplacian_spectrum(1, LaplacianKind::Free)[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(laplacian_spectrum(0, LaplacianKind::Free), DomainError);

  for (auto kind : {LaplacianKind::Free, LaplacianKind::Dirichlet, LaplacianKind::Neumann}) {
    for (std::int64_t n : {1, 2, 3, 7, 50, 133}) {
      CHECK_MESSAGE(max_abs_diff(dense_eigenvalues(laplacian_matrix(n, kind)), laplacian_spectrum(n, kind)) < 1e-10,
                    to_string(kind) << " n=" << n);
    }
  }
}

TEST_CASE("block specs on a small realization") {
  // V = 0 0 1 0 1 0 0 0 1 : Y = (2, 1, 3), L = (3, 5, 9)
  const auto g = gap_statistics(from_bit_string("001010001"));
  const auto del = deleted_block_spec(g);
  CHECK(del.dimension() == 6);
  const auto neu = neumann_block_spec(g, DisorderParam(4.0));
  CHECK(neu.dimension() == 9);
  CHECK(neu.counted_dimension() == 9);
  const auto pad = padded_dirichlet_spec(g);
  REQUIRE(pad.blocks.size() == 4);
  CHECK(pad.blocks[0].size == 3);
  CHECK(pad.blocks[0].boundary);
  CHECK(pad.blocks[1].size == 3);
  CHECK(pad.blocks[1].kind == LaplacianKind::Dirichlet);
  CHECK(pad.blocks[2].size == 5);
  CHECK(pad.blocks[3].size == 1);
  CHECK(pad.blocks[3].boundary);
  CHECK(pad.dimension() == 9 + 3);
  CHECK(pad.counted_dimension() == 8);
  CHECK_THROWS_AS(padded_dirichlet_spec(gap_statistics(from_bit_string("0001"))), DomainError);

  // zero gaps are dropped
  const auto adjacent = deleted_block_spec(gap_statistics(from_bit_string("11")));
  CHECK(adjacent.blocks.empty());
}

TEST_CASE("block spectrum equals dense solve of the assembled blocks") {
  const auto g = gap_statistics(from_bit_string("0010100010000011"));
  for (const auto& spec : {deleted_block_spec(g), neumann_block_spec(g, DisorderParam(20.0)), padded_dirichlet_spec(g)}) {
    std::vector<double> dense;
    for (const auto& b : spec.blocks) {
      const auto ev = dense_eigenvalues(block_matrix(b));
      dense.insert(dense.end(), ev.begin(), ev.end());
    }
    std::sort(dense.begin(), dense.end());
    CHECK(max_abs_diff(dense, block_spectrum(spec)) < 1e-12);
  }
}

TEST_CASE("doubled operator") {
  const auto d = doubled_operator(from_bit_string("01"), DisorderParam(4.0));
  CHECK(d.doubled.diag == std::vector<double>{2, 4, 4});
  CHECK(d.ones == 1);
  const auto e = doubled_operator(from_bit_string("1010100"), DisorderParam(6.0));
  CHECK(e.base.length() == 5);
  CHECK(e.doubled.diag == std::vector<double>{5, 5, 2, 5, 5, 2, 5, 5});
  CHECK_THROWS_AS(doubled_operator(from_bit_string("000"), DisorderParam(4.0)), DomainError);
}

TEST_CASE("truncate at last one") {
  CHECK(to_bit_string(truncate_at_last_one(from_bit_string("0100100"))) == "01001");
  CHECK(truncate_at_last_one(from_bit_string("000")).values.empty());
}

TEST_CASE("operator text round trip") {
  const auto op = anderson_matrix(sample_potential(BernoulliParam(0.4), 50, Seed{1, 2}), DisorderParam(4.5));
  std::stringstream ss;
  write_operator(ss, op);
  const auto back = read_operator(ss);
  CHECK(back.diag == op.diag);
  CHECK(back.offdiag == op.offdiag);
  std::stringstream bad("nonsense\n");
  CHECK_THROWS_AS(read_operator(bad), DomainError);
  std::stringstream truncated("# tridiagonal n=3\n2 -1\n");
  CHECK_THROWS_AS(read_operator(truncated), DomainError);
}
