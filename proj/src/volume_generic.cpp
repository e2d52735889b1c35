#include "zonovol/volume_generic.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "zonovol/combinatorics.hpp"
#include "zonovol/linalg.hpp"

namespace zonovol {

namespace {

// Neumaier's compensated sum: the correction absorbs whichever operand
// loses low-order bits.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Copies the selected columns into scratch, one column after another.
// determinant_inplace reads scratch row-major, so it actually sees the
// transposed selection; determinants are transpose-invariant.
void gather_columns(const Eigen::MatrixXd& Z, const IndexTuple& labels,
                    double* scratch) {
  const int n = static_cast<int>(Z.rows());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    std::memcpy(scratch + j * n, Z.col(labels[j] - 1).data(),
                sizeof(double) * n);
  }
}

// The recursion's cross terms measure slivers spanned by nearly parallel
// A^k B columns. When the system expands (eigenvalues above 1), the true
// sliver volume falls below the double-precision rounding noise of the
// assembled columns somewhere around k = 250 for mildly spread spectra, and
// |det| then rectifies that noise into a growing positive bias. Forming the
// columns and taking the determinants in binary128 pushes the breakdown far
// past any horizon the tool targets.
using quad = __float128;

inline quad qabs(quad v) { return v < 0 ? -v : v; }

quad qdet_inplace(quad* a, int n) {
  quad det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    quad best = qabs(a[static_cast<std::size_t>(c) * n + c]);
    for (int r = c + 1; r < n; ++r) {
      const quad v = qabs(a[static_cast<std::size_t>(r) * n + c]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (pivot != c) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[static_cast<std::size_t>(c) * n + j],
                  a[static_cast<std::size_t>(pivot) * n + j]);
      }
      det = -det;
    }
    const quad d = a[static_cast<std::size_t>(c) * n + c];
    if (d == 0) return 0;
    det *= d;
    for (int r = c + 1; r < n; ++r) {
      const quad f = a[static_cast<std::size_t>(r) * n + c] / d;
      for (int j = c + 1; j < n; ++j) {
        a[static_cast<std::size_t>(r) * n + j] -=
            f * a[static_cast<std::size_t>(c) * n + j];
      }
    }
  }
  return det;
}

}  // namespace

VolumeResult volume_exact(const RealMatrix& Z) {
  const int n = static_cast<int>(Z.rows());
  const int m = static_cast<int>(Z.cols());
  VolumeResult res;
  res.method = VolumeMethod::Exact;

  if (m < n) {
    res.notes = "rank-deficient: " + std::to_string(m) +
                " generators in dimension " + std::to_string(n);
    return res;
  }
  // Generators like A^k B can span many orders of magnitude while staying
  // honestly full-rank; normalizing the columns (rank-preserving) keeps the
  // rank test about directions, not scales.
  Eigen::MatrixXd directions = Z.mat();
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    const double norm = directions.col(j).norm();
    if (norm > 0.0) directions.col(j) /= norm;
  }
  const int rank = numeric_rank(RealMatrix(std::move(directions)));
  if (rank < n) {
    res.notes = "rank-deficient: generator matrix has rank " +
                std::to_string(rank) + " in dimension " + std::to_string(n);
    return res;
  }

  TupleStream stream(TupleSet::omega(m, n));
  IndexTuple t;
  std::vector<double> scratch(static_cast<std::size_t>(n) * n);
  CompensatedSum acc;
  while (stream.next(t)) {
    gather_columns(Z.mat(), t, scratch.data());
    acc.add(std::abs(detail::determinant_inplace(scratch.data(), n)));
    ++res.det_count;
  }
  res.volume = acc.value();
  return res;
}

VolumeResult volume_recursive(const SystemModel& model, int horizon) {
  if (horizon < 1) {
    throw DimensionError("horizon must be at least 1, got " +
                         std::to_string(horizon));
  }
  const int n = static_cast<int>(model.state_dim());
  const int r = static_cast<int>(model.input_dim());
  VolumeResult res;
  res.method = VolumeMethod::Recursive;
  res.horizon = horizon;

  if (static_cast<long long>(r) * horizon < n) {
    res.notes = "rank-deficient: " + std::to_string(r * horizon) +
                " generators in dimension " + std::to_string(n);
    return res;
  }

  // First horizon with at least n columns; shorter horizons have volume 0,
  // so the two-term recursion is seeded with exact volumes here.
  const int first = (n + r - 1) / r;
  const int cols = r * horizon;

  // [B, AB, A^2 B, ...] column by column in binary128 (see qdet_inplace);
  // P is column-major, A row-major.
  std::vector<quad> A(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[static_cast<std::size_t>(i) * n + j] =
        model.A()(i, j);
  std::vector<quad> P(static_cast<std::size_t>(n) * cols);
  for (int c = 0; c < r; ++c)
    for (int i = 0; i < n; ++i) P[static_cast<std::size_t>(c) * n + i] =
        model.B()(i, c);
  for (int c = r; c < cols; ++c) {
    for (int i = 0; i < n; ++i) {
      quad s = 0;
      for (int j = 0; j < n; ++j) {
        s += A[static_cast<std::size_t>(i) * n + j] *
             P[static_cast<std::size_t>(c - r) * n + j];
      }
      P[static_cast<std::size_t>(c) * n + i] = s;
    }
  }

  auto seed = [&](int k) -> VolumeResult {
    Eigen::MatrixXd head(n, r * k);
    for (int c = 0; c < r * k; ++c)
      for (int i = 0; i < n; ++i) head(i, c) =
          static_cast<double>(P[static_cast<std::size_t>(c) * n + i]);
    VolumeResult v = volume_exact(RealMatrix(std::move(head)));
    res.det_count += v.det_count;
    return v;
  };

  VolumeResult s0 = seed(first);
  if (horizon == first) {
    res.volume = s0.volume;
    res.notes = std::move(s0.notes);
    return res;
  }
  VolumeResult s1 = seed(first + 1);
  if (horizon == first + 1) {
    res.volume = s1.volume;
    res.notes = std::move(s1.notes);
    return res;
  }

  std::vector<quad> lu(A);
  const quad q = qabs(qdet_inplace(lu.data(), n));
  ++res.det_count;

  quad v_prev2 = s0.volume;
  quad v_prev1 = s1.volume;
  IndexTuple t;
  std::vector<quad> scratch(static_cast<std::size_t>(n) * n);

  for (int k = first + 2; k <= horizon; ++k) {
    // Cross terms: selections that take j columns from the first block,
    // l from the newest block, and the rest strictly in between.
    quad cross = 0;
    for (int j = 1; j <= r; ++j) {
      for (int l = 1; l <= r; ++l) {
        const int mid = n - j - l;
        CrossStream cs({TupleSet::theta(0, 0, j, r),
                        TupleSet::theta(1, k - 2, mid, r),
                        TupleSet::theta(k - 1, k - 1, l, r)});
        while (cs.next(t)) {
          // Column labels are 1-based; the transposed copy is fine because
          // determinants are transpose-invariant.
          for (std::size_t sel = 0; sel < t.size(); ++sel) {
            const std::size_t src = static_cast<std::size_t>(t[sel] - 1) * n;
            for (int i = 0; i < n; ++i) scratch[sel * n + i] = P[src + i];
          }
          cross += qabs(qdet_inplace(scratch.data(), n));
          ++res.det_count;
        }
      }
    }
    const quad v = (1 + q) * v_prev1 - q * v_prev2 + cross;
    v_prev2 = v_prev1;
    v_prev1 = v;
  }

  res.volume = static_cast<double>(v_prev1);
  return res;
}

}  // namespace zonovol
