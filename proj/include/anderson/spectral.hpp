#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anderson/operators.hpp"
#include "anderson/types.hpp"

namespace anderson {

// Eigenvalue counting for symmetric tridiagonal matrices.
//
// The count of eigenvalues below x is the number of negative pivots of the
// LDL^T factorization of A - xI:
//   d_1 = a_1 - x,   d_j = (a_j - x) - b_{j-1}^2 / d_{j-1}.
// A pivot with |d| below the underflow threshold is replaced by +eps*scale in
// Strict mode and -eps*scale in Weak mode, i.e. the matrix is nudged so that
// an eigenvalue sitting exactly at x is excluded (Strict) or included (Weak).

/// Serial reference: one energy, one pass.
std::int64_t sturm_count(const TridiagonalOperator& op, double x, CountMode mode);

/// Reference curve: sturm_count per energy, no parallelism.
std::vector<std::int64_t> counting_curve_serial(const TridiagonalOperator& op, std::span<const double> energies,
                                                CountMode mode);

/// Production curve: energies are processed in interleaved lanes so the
/// division chains overlap, and lane groups are distributed over OpenMP
/// threads. Bit-identical to counting_curve_serial.
std::vector<std::int64_t> counting_curve(const TridiagonalOperator& op, std::span<const double> energies,
                                         CountMode mode);

/// Single-threaded lane kernel (what each OpenMP task runs).
std::vector<std::int64_t> counting_curve_lanes(const TridiagonalOperator& op, std::span<const double> energies,
                                               CountMode mode);

/// All eigenvalues ascending via a dense symmetric tridiagonal QR solve.
/// Guarded by ResourceLimits::max_dense.
std::vector<double> dense_eigenvalues(const TridiagonalOperator& op);

/// Closed-form count of block eigenvalues relative to x; boundary blocks are skipped.
std::int64_t block_count(const BlockOperatorSpec& spec, double x, CountMode mode);

/// Closed-form count for a single Laplacian block of the given kind (no shift).
std::int64_t laplacian_count(std::int64_t n, LaplacianKind kind, double x, CountMode mode);

/// Throws DomainError unless energies are sorted ascending.
void require_sorted(std::span<const double> energies);

}  // namespace anderson
