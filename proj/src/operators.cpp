#include "anderson/operators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "anderson/csv.hpp"

namespace anderson {

TridiagonalOperator::TridiagonalOperator(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  const std::size_t want = diag.empty() ? 0 : diag.size() - 1;
  if (offdiag.size() != want)
    throw DomainError("tridiagonal operator needs n-1 off-diagonal entries");
}

double TridiagonalOperator::max_norm() const {
  double m = 0.0;
  for (double a : diag) m = std::max(m, std::abs(a));
  for (double b : offdiag) m = std::max(m, std::abs(b));
  return m;
}

const char* to_string(LaplacianKind k) {
  switch (k) {
    case LaplacianKind::Free: return "free";
    case LaplacianKind::Dirichlet: return "dirichlet";
    case LaplacianKind::Neumann: return "neumann";
  }
  return "?";
}

std::int64_t BlockOperatorSpec::dimension() const {
  std::int64_t n = 0;
  for (const auto& b : blocks) n += b.size;
  return n;
}

std::int64_t BlockOperatorSpec::counted_dimension() const {
  std::int64_t n = 0;
  for (const auto& b : blocks)
    if (!b.boundary) n += b.size;
  return n;
}

void BlockOperatorSpec::add(const Block& b) {
  if (b.size < 0) throw DomainError("block size must be >= 0");
  if (b.size > 0) blocks.push_back(b);
}

TridiagonalOperator anderson_matrix(const PotentialRealization& real, DisorderParam zeta) {
  const std::size_t n = real.length();
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = 2.0 + zeta.value() * real.values[j];
  return {std::move(d), std::vector<double>(n ? n - 1 : 0, -1.0)};
}

std::vector<double> laplacian_spectrum(std::int64_t n, LaplacianKind kind) {
  if (n <= 0) throw DomainError("Laplacian size must be >= 1, got " + std::to_string(n));
  std::vector<double> ev(static_cast<std::size_t>(n));
  const double nd = static_cast<double>(n);
  for (std::int64_t k = 1; k <= n; ++k) {
    double angle = 0.0;
    switch (kind) {
      case LaplacianKind::Free: angle = std::numbers::pi * k / (2.0 * (nd + 1.0)); break;
      case LaplacianKind::Dirichlet: angle = std::numbers::pi * k / (2.0 * nd); break;
      case LaplacianKind::Neumann: angle = std::numbers::pi * (k - 1) / (2.0 * nd); break;
    }
    const double s = std::sin(angle);
    ev[static_cast<std::size_t>(k - 1)] = 4.0 * s * s;
  }
  return ev;
}

TridiagonalOperator laplacian_matrix(std::int64_t n, LaplacianKind kind) {
  if (n <= 0) throw DomainError("Laplacian size must be >= 1, got " + std::to_string(n));
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> d(un, 2.0);
  const double corner = kind == LaplacianKind::Dirichlet ? 1.0 : kind == LaplacianKind::Neumann ? -1.0 : 0.0;
  d.front() += corner;
  d.back() += corner;
  return {std::move(d), std::vector<double>(un - 1, -1.0)};
}

BlockOperatorSpec deleted_block_spec(const GapStatistics& gaps) {
  BlockOperatorSpec spec;
  for (auto y : gaps.gaps) spec.add({y, LaplacianKind::Free, 0.0, false});
  return spec;
}

BlockOperatorSpec neumann_block_spec(const GapStatistics& gaps, DisorderParam zeta) {
  BlockOperatorSpec spec;
  for (auto y : gaps.gaps) {
    spec.add({y, LaplacianKind::Neumann, 0.0, false});
    // Neumann(1) is the 1x1 zero matrix, so the shift is the eigenvalue.
    spec.add({1, LaplacianKind::Neumann, zeta.value(), false});
  }
  return spec;
}

BlockOperatorSpec padded_dirichlet_spec(const GapStatistics& gaps) {
  if (gaps.count() < 2) throw DomainError("padded Dirichlet decomposition needs at least two ones");
  BlockOperatorSpec spec;
  spec.add({gaps.gaps.front() + 1, LaplacianKind::Free, 0.0, true});
  for (std::size_t i = 1; i < gaps.count(); ++i)
    spec.add({gaps.gaps[i] + 2, LaplacianKind::Dirichlet, 0.0, false});
  spec.add({1, LaplacianKind::Free, 0.0, true});
  return spec;
}

PotentialRealization truncate_at_last_one(const PotentialRealization& real) {
  PotentialRealization out{real.p, real.values};
  while (!out.values.empty() && out.values.back() == 0) out.values.pop_back();
  return out;
}

DoubledRealization doubled_operator(const PotentialRealization& real, DisorderParam zeta) {
  DoubledRealization out;
  out.base = truncate_at_last_one(real);
  if (out.base.values.empty()) throw DomainError("doubling needs a realization with at least one 1");
  const auto gaps = gap_statistics(out.base);
  out.ones = static_cast<std::int64_t>(gaps.count());
  const auto n = static_cast<std::size_t>(gaps.last_one() + out.ones);
  std::vector<double> d(n, 2.0);
  const double half = zeta.value() / 2.0;
  // Sites L_k + k - 1 and L_k + k (1-based) carry zeta/2.
  for (std::size_t k = 1; k <= gaps.count(); ++k) {
    const auto site = static_cast<std::size_t>(gaps.ones_positions[k - 1]) + k;
    d[site - 2] += half;
    d[site - 1] += half;
  }
  out.doubled = TridiagonalOperator(std::move(d), std::vector<double>(n - 1, -1.0));
  return out;
}

TridiagonalOperator block_matrix(const Block& b) {
  auto m = laplacian_matrix(b.size, b.kind);
  for (auto& a : m.diag) a += b.diag_shift;
  return m;
}

std::vector<double> block_spectrum(const BlockOperatorSpec& spec, bool include_boundary) {
  std::vector<double> ev;
  for (const auto& b : spec.blocks) {
    if (b.boundary && !include_boundary) continue;
    for (double l : laplacian_spectrum(b.size, b.kind)) ev.push_back(l + b.diag_shift);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

void write_operator(std::ostream& os, const TridiagonalOperator& op) {
  os << "# tridiagonal n=" << op.size() << '\n';
  for (std::size_t i = 0; i < op.size(); ++i) {
    os << format_double(op.diag[i]) << ' '
       << format_double(i + 1 < op.size() ? op.offdiag[i] : 0.0) << '\n';
  }
}

TridiagonalOperator read_operator(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind("# tridiagonal n=", 0) != 0)
    throw DomainError("operator file must start with '# tridiagonal n=<n>'");
  const auto n = std::stoull(header.substr(16));
  std::vector<double> d(n), e(n ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0, b = 0;
    if (!(is >> a >> b)) throw DomainError("operator file truncated at row " + std::to_string(i));
    d[i] = a;
    if (i + 1 < n) e[i] = b;
  }
  return {std::move(d), std::move(e)};
}

}  // namespace anderson
