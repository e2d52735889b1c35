#include "zonovol/combinatorics.hpp"

#include <limits>
#include <string>

namespace zonovol {

std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  constexpr unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (long long i = 1; i <= k; ++i) {
    // result * (n-k+i) is divisible by i because the running value is
    // itself the binomial C(n-k+i-1, i-1) times accumulated factors.
    result = result * static_cast<unsigned __int128>(n - k + i);
    result /= static_cast<unsigned __int128>(i);
    if (result > cap) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(result);
}

TupleSet::TupleSet(int lo, int hi, int arity, int width)
    : lo_(lo), hi_(hi), arity_(arity), width_(width) {}

TupleSet TupleSet::theta(int lo_block, int hi_block, int arity,
                         int input_width) {
  if (input_width < 1) {
    throw ContractViolation("input width must be positive, got " +
                            std::to_string(input_width));
  }
  if (lo_block < 0) {
    throw ContractViolation("block index must be nonnegative, got " +
                            std::to_string(lo_block));
  }
  return TupleSet(lo_block, hi_block, arity, input_width);
}

TupleSet TupleSet::omega(int universe, int arity) {
  if (universe < 0) {
    throw ContractViolation("universe size must be nonnegative, got " +
                            std::to_string(universe));
  }
  return TupleSet(0, universe - 1, arity, 1);
}

long long TupleSet::label_count() const {
  if (hi_ < lo_) return 0;
  return static_cast<long long>(width_) * (hi_ - lo_ + 1);
}

std::uint64_t TupleSet::count() const {
  if (arity_ < 0) return 0;
  return binomial(label_count(), arity_);
}

TupleStream::TupleStream(TupleSet set) : set_(set), done_(false) {
  reset();
}

void TupleStream::reset() {
  const int arity = set_.arity();
  done_ = arity < 0 || arity > set_.label_count();
  if (done_) return;
  offsets_.resize(arity);
  for (int i = 0; i < arity; ++i) offsets_[i] = i;
}

bool TupleStream::next(IndexTuple& out) {
  if (done_) return false;
  const int arity = set_.arity();
  const int first = set_.first_label();
  out.resize(arity);
  for (int i = 0; i < arity; ++i) out[i] = first + offsets_[i];

  // Advance like an odometer: bump the rightmost position that still has
  // room, then pack the tail right behind it.
  const long long labels = set_.label_count();
  int i = arity - 1;
  while (i >= 0 && offsets_[i] == labels - arity + i) --i;
  if (i < 0) {
    done_ = true;
  } else {
    ++offsets_[i];
    for (int j = i + 1; j < arity; ++j) offsets_[j] = offsets_[j - 1] + 1;
  }
  return true;
}

CrossStream::CrossStream(std::vector<TupleSet> parts)
    : total_arity_(0), done_(false) {
  if (parts.empty()) {
    throw ContractViolation("cross product needs at least one part");
  }
  // Parts contributing labels must sit on disjoint ascending ranges.
  int prev_last = 0;
  for (const TupleSet& p : parts) {
    if (p.arity() > 0 && p.label_count() > 0) {
      if (p.first_label() <= prev_last) {
        throw ContractViolation(
            "part label ranges overlap or are out of order near label " +
            std::to_string(p.first_label()));
      }
      prev_last = p.last_label();
    }
    if (p.arity() > 0) total_arity_ += p.arity();
  }
  streams_.reserve(parts.size());
  for (const TupleSet& p : parts) streams_.emplace_back(p);
  current_.resize(parts.size());
  prime();
}

void CrossStream::prime() {
  done_ = false;
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    if (!streams_[i].next(current_[i])) {
      done_ = true;
      return;
    }
  }
}

void CrossStream::reset() {
  for (auto& s : streams_) s.reset();
  prime();
}

bool CrossStream::next(IndexTuple& out) {
  if (done_) return false;
  out.clear();
  out.reserve(total_arity_);
  for (const IndexTuple& part : current_) {
    out.insert(out.end(), part.begin(), part.end());
  }
  // Odometer carry, rightmost part fastest.
  for (std::size_t i = streams_.size(); i-- > 0;) {
    if (streams_[i].next(current_[i])) return true;
    streams_[i].reset();
    streams_[i].next(current_[i]);
  }
  done_ = true;
  return true;
}

std::uint64_t CrossStream::count() const {
  unsigned __int128 prod = 1;
  constexpr unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
  for (const auto& s : streams_) {
    prod *= static_cast<unsigned __int128>(s.set().count());
    if (prod > cap) return std::numeric_limits<std::uint64_t>::max();
    if (prod == 0) return 0;
  }
  return static_cast<std::uint64_t>(prod);
}

}  // namespace zonovol
