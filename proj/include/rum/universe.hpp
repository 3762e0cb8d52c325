#ifndef RUM_UNIVERSE_HPP
#define RUM_UNIVERSE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rum/errors.hpp"

namespace rum {

// Alternatives live as indices 0..n-1; labels appear only at I/O boundaries.
class Universe {
 public:
  static constexpr int kHardCap = 8;
  static constexpr int kWarnThreshold = 7;

  // Throws DomainError on duplicate/empty labels, CapExceeded when
  // labels.size() > cap. `cap` itself may exceed kHardCap only when the
  // caller explicitly overrides it (RUMIDENT_CAP).
  explicit Universe(std::vector<std::string> labels, int cap = kHardCap);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // throws DomainError
  bool single_char_labels() const;
  // n >= 7: exact enumeration costs grow factorially; callers should warn.
  bool needs_cost_warning() const { return size() >= kWarnThreshold; }

  bool operator==(const Universe& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
};

// A strict ranking of all alternatives, best first.
struct LinearOrder {
  std::vector<std::uint8_t> ranking;

  static LinearOrder from_labels(const Universe& u, const std::string& text);
  std::string to_string(const Universe& u) const;

  int size() const { return static_cast<int>(ranking.size()); }
  // Position of alternative `alt` (0 = most preferred).
  int position_of(int alt) const;
  // Bitmask of the k most preferred alternatives.
  std::uint32_t top_set_mask(int k) const;

  auto operator<=>(const LinearOrder&) const = default;
};

// Lexicographic rank of `o` among all n! orders (Lehmer code).
std::size_t order_index(const LinearOrder& o);

struct Segment {
  enum class Kind { Initial, Terminal };
  std::vector<std::uint8_t> items;
  Kind kind = Kind::Initial;
  int k = 0;  // split level: Initial holds k items, Terminal n-k

  std::string to_string(const Universe& u) const;
  auto operator<=>(const Segment&) const = default;
};

// Nonempty subset of the universe, as a bitmask.
struct Menu {
  std::uint32_t mask = 0;

  static Menu of(std::initializer_list<int> alts);
  bool contains(int alt) const { return (mask >> alt) & 1u; }
  int size() const { return __builtin_popcount(mask); }
  std::vector<int> members() const;
  auto operator<=>(const Menu&) const = default;
};

// Four distinct orders {o1,o2} / {o3,o4} related by swapping k-initial
// segments, canonically normalized: o1 < o2, o3 < o4, o1 < o3 (so the
// lexicographically smallest of the four sits in the top pair).
struct ConjugateSquare {
  LinearOrder o1, o2;  // top pair
  LinearOrder o3, o4;  // swapped pair
  int k = 0;

  auto operator<=>(const ConjugateSquare&) const = default;
};

std::vector<LinearOrder> enumerate_orders(const Universe& u);

// First k entries of `o`, order preserved. Throws DomainError unless
// 1 <= k <= n.
Segment initial_segment(const LinearOrder& o, int k);
// The n-k least preferred entries, order preserved.
Segment terminal_segment(const LinearOrder& o, int k);

// Reassembles an order from an initial and a terminal segment with the same
// split level; the item sets must partition the universe.
LinearOrder concatenate(const Segment& up, const Segment& down);

// All levels 2 <= k <= n-2 at which o1,o2 form a separable pair: equal top-k
// sets, different top-k orderings, different bottom orderings. Empty result
// means not separable.
std::vector<int> separable_levels(const LinearOrder& o1, const LinearOrder& o2);

// Canonical square obtained by swapping the k-initial segments of a
// separable pair. Throws DomainError if the pair is not separable at k.
ConjugateSquare make_conjugate_square(const LinearOrder& o1,
                                      const LinearOrder& o2, int k);

// Every canonical square exactly once, sorted by (k, o1, o2, o3).
std::vector<ConjugateSquare> enumerate_conjugate_squares(const Universe& u);

}  // namespace rum

#endif
