#ifndef ZONOVOL_COMBINATORICS_HPP
#define ZONOVOL_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "zonovol/errors.hpp"

namespace zonovol {

/// Strictly increasing 1-based column labels.
using IndexTuple = std::vector<int>;

/// C(n, k), saturating at the largest uint64 instead of overflowing.
std::uint64_t binomial(long long n, long long k);

/// The family of ascending arity-tuples drawn from a contiguous label range.
/// Column blocks are input_width wide: block b covers labels
/// input_width*b + 1 .. input_width*(b+1). Negative arity, or arity larger
/// than the number of labels, describes the empty family; arity zero
/// describes the family holding one empty tuple.
class TupleSet {
public:
  /// Tuples over the labels of blocks lo_block .. hi_block inclusive.
  static TupleSet theta(int lo_block, int hi_block, int arity, int input_width);
  /// Tuples over labels 1 .. universe (block width 1).
  static TupleSet omega(int universe, int arity);

  int arity() const { return arity_; }
  int input_width() const { return width_; }
  int first_label() const { return width_ * lo_ + 1; }
  int last_label() const { return width_ * (hi_ + 1); }
  /// Number of labels in the range (0 when hi_block < lo_block).
  long long label_count() const;
  /// Number of tuples (saturating).
  std::uint64_t count() const;

private:
  TupleSet(int lo, int hi, int arity, int width);
  int lo_;
  int hi_;
  int arity_;
  int width_;
};

/// Streams the tuples of one TupleSet in lexicographic order.
class TupleStream {
public:
  explicit TupleStream(TupleSet set);

  /// Writes the next tuple into out; returns false once exhausted.
  bool next(IndexTuple& out);
  void reset();
  const TupleSet& set() const { return set_; }

private:
  TupleSet set_;
  std::vector<int> offsets_;  // 0-based positions into the label range
  bool done_;
};

/// Streams the concatenations of one tuple from each part, parts ordered
/// left to right, rightmost part advancing fastest. Parts that can emit a
/// nonempty tuple must occupy pairwise disjoint, strictly increasing label
/// ranges so that every concatenation stays strictly increasing.
class CrossStream {
public:
  explicit CrossStream(std::vector<TupleSet> parts);

  bool next(IndexTuple& out);
  void reset();
  /// Product of the part counts (saturating).
  std::uint64_t count() const;

private:
  void prime();
  std::vector<TupleStream> streams_;
  std::vector<IndexTuple> current_;
  int total_arity_;
  bool done_;
};

}  // namespace zonovol

#endif
