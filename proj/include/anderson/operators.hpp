#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "anderson/potential.hpp"
#include "anderson/types.hpp"

namespace anderson {

/// Real symmetric tridiagonal matrix: diag(0..n-1), offdiag(0..n-2).
struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalOperator() = default;
  TridiagonalOperator(std::vector<double> d, std::vector<double> e);

  std::size_t size() const { return diag.size(); }
  /// max |entry|
  double max_norm() const;
};

enum class LaplacianKind { Free, Dirichlet, Neumann };

const char* to_string(LaplacianKind k);

/// One direct summand: a Laplacian of the given kind plus diag_shift * Id.
/// Boundary blocks are part of the operator but excluded from IDS counts.
struct Block {
  std::int64_t size = 0;
  LaplacianKind kind = LaplacianKind::Free;
  double diag_shift = 0.0;
  bool boundary = false;
};

struct BlockOperatorSpec {
  std::vector<Block> blocks;

  std::int64_t dimension() const;
  std::int64_t counted_dimension() const;
  /// Adds a block; zero-size blocks are dropped.
  void add(const Block& b);
};

/// -Delta_L + zeta V on sites 1..L: diag 2 + zeta V(j), offdiag -1.
TridiagonalOperator anderson_matrix(const PotentialRealization& real, DisorderParam zeta);

/// Closed-form eigenvalues, ascending.
std::vector<double> laplacian_spectrum(std::int64_t n, LaplacianKind kind);

/// Free: diag 2. Dirichlet adds the corner matrix A_n (3 at both ends),
/// Neumann subtracts it (1 at both ends). For n = 1 both corners hit the
/// same entry, giving 4 and 0.
TridiagonalOperator laplacian_matrix(std::int64_t n, LaplacianKind kind);

/// Principal submatrix left after deleting every potential site: free blocks of size Y_i.
BlockOperatorSpec deleted_block_spec(const GapStatistics& gaps);

/// Every zero-run and every potential site decoupled with Neumann corners:
/// Neumann(Y_i) blocks and one 1x1 block of value zeta per potential site.
BlockOperatorSpec neumann_block_spec(const GapStatistics& gaps, DisorderParam zeta);

/// Lower comparison operator for the doubled chain: Dirichlet(Y_i + 2) for the
/// interior gaps i >= 2, flanked by a free (Y_1 + 1) block and a 1x1 block of
/// value 2 which are flagged as boundary blocks.
BlockOperatorSpec padded_dirichlet_spec(const GapStatistics& gaps);

/// A realization truncated at its last one, and the chain obtained by
/// doubling every potential site with half the coupling.
struct DoubledRealization {
  PotentialRealization base;
  TridiagonalOperator doubled;
  std::int64_t ones = 0;
};

DoubledRealization doubled_operator(const PotentialRealization& real, DisorderParam zeta);

/// Realization truncated at its last one (possibly empty).
PotentialRealization truncate_at_last_one(const PotentialRealization& real);

/// Matrix of one block (Laplacian plus shift).
TridiagonalOperator block_matrix(const Block& b);

/// Union of the closed-form block spectra, ascending. Boundary blocks are
/// included only when include_boundary is set.
std::vector<double> block_spectrum(const BlockOperatorSpec& spec, bool include_boundary = true);

/// "# tridiagonal n=<n>" followed by n lines "diag offdiag"; the last offdiag is written as 0.
void write_operator(std::ostream& os, const TridiagonalOperator& op);
TridiagonalOperator read_operator(std::istream& is);

}  // namespace anderson
