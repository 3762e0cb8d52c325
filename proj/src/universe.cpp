#include "rum/universe.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rum {

Universe::Universe(std::vector<std::string> labels, int cap)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw DomainError("universe needs at least one alternative");
  if (static_cast<int>(labels_.size()) > cap) {
    throw CapExceeded("universe has " + std::to_string(labels_.size()) +
                      " alternatives, cap is " + std::to_string(cap));
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw DomainError("empty alternative label");
    if (!seen.insert(l).second) throw DomainError("duplicate label: " + l);
  }
}

int Universe::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels_[i] == label) return i;
  throw DomainError("unknown alternative: " + label);
}

bool Universe::single_char_labels() const {
  return std::all_of(labels_.begin(), labels_.end(),
                     [](const std::string& l) { return l.size() == 1; });
}

LinearOrder LinearOrder::from_labels(const Universe& u, const std::string& text) {
  LinearOrder o;
  if (u.single_char_labels()) {
    for (char c : text) o.ranking.push_back(static_cast<std::uint8_t>(
        u.index_of(std::string(1, c))));
  } else {
    // multi-char labels: comma separated
    std::string cur;
    for (char c : text) {
      if (c == ',') {
        o.ranking.push_back(static_cast<std::uint8_t>(u.index_of(cur)));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) o.ranking.push_back(static_cast<std::uint8_t>(u.index_of(cur)));
  }
  if (o.size() != u.size()) throw DomainError("order '" + text + "' does not rank every alternative");
  std::vector<bool> used(u.size(), false);
  for (auto a : o.ranking) {
    if (used[a]) throw DomainError("order '" + text + "' repeats an alternative");
    used[a] = true;
  }
  return o;
}

std::string LinearOrder::to_string(const Universe& u) const {
  std::string out;
  bool sep = !u.single_char_labels();
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (sep && i) out += ',';
    out += u.label(ranking[i]);
  }
  return out;
}

int LinearOrder::position_of(int alt) const {
  for (int i = 0; i < size(); ++i)
    if (ranking[i] == alt) return i;
  throw DomainError("alternative not in order");
}

std::uint32_t LinearOrder::top_set_mask(int k) const {
  std::uint32_t m = 0;
  for (int i = 0; i < k; ++i) m |= 1u << ranking[i];
  return m;
}

std::size_t order_index(const LinearOrder& o) {
  const int n = o.size();
  std::size_t idx = 0, fact = 1;
  // factorials up to n-1, accumulated right to left
  std::vector<std::size_t> facts(n, 1);
  for (int i = 1; i < n; ++i) facts[i] = facts[i - 1] * i;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (o.ranking[j] < o.ranking[i]) ++smaller;
    idx += smaller * facts[n - 1 - i];
  }
  (void)fact;
  return idx;
}

std::string Segment::to_string(const Universe& u) const {
  std::string out;
  bool sep = !u.single_char_labels();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (sep && i) out += ',';
    out += u.label(items[i]);
  }
  return out;
}

Menu Menu::of(std::initializer_list<int> alts) {
  Menu m;
  for (int a : alts) m.mask |= 1u << a;
  return m;
}

std::vector<int> Menu::members() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if ((mask >> i) & 1u) out.push_back(i);
  return out;
}

std::vector<LinearOrder> enumerate_orders(const Universe& u) {
  const int n = u.size();
  LinearOrder o;
  o.ranking.resize(n);
  std::iota(o.ranking.begin(), o.ranking.end(), 0);
  std::vector<LinearOrder> out;
  do {
    out.push_back(o);
  } while (std::next_permutation(o.ranking.begin(), o.ranking.end()));
  return out;
}

Segment initial_segment(const LinearOrder& o, int k) {
  if (k < 1 || k > o.size()) throw DomainError("segment level out of range");
  Segment s;
  s.kind = Segment::Kind::Initial;
  s.k = k;
  s.items.assign(o.ranking.begin(), o.ranking.begin() + k);
  return s;
}

Segment terminal_segment(const LinearOrder& o, int k) {
  if (k < 1 || k > o.size()) throw DomainError("segment level out of range");
  Segment s;
  s.kind = Segment::Kind::Terminal;
  s.k = k;
  s.items.assign(o.ranking.begin() + k, o.ranking.end());
  return s;
}

LinearOrder concatenate(const Segment& up, const Segment& down) {
  if (up.kind != Segment::Kind::Initial || down.kind != Segment::Kind::Terminal)
    throw DomainError("concatenate needs an initial and a terminal segment");
  if (up.k != down.k) throw DomainError("segments split at different levels");
  LinearOrder o;
  o.ranking = up.items;
  o.ranking.insert(o.ranking.end(), down.items.begin(), down.items.end());
  std::uint32_t seen = 0;
  for (auto a : o.ranking) {
    if (seen & (1u << a)) throw DomainError("segments overlap");
    seen |= 1u << a;
  }
  if (seen + 1 != (1u << o.ranking.size()))
    throw DomainError("segments do not cover the universe");
  return o;
}

std::vector<int> separable_levels(const LinearOrder& o1, const LinearOrder& o2) {
  if (o1.size() != o2.size()) throw DomainError("orders over different universes");
  const int n = o1.size();
  std::vector<int> out;
  for (int k = 2; k <= n - 2; ++k) {
    if (o1.top_set_mask(k) != o2.top_set_mask(k)) continue;
    bool top_equal = std::equal(o1.ranking.begin(), o1.ranking.begin() + k,
                                o2.ranking.begin());
    bool bot_equal = std::equal(o1.ranking.begin() + k, o1.ranking.end(),
                                o2.ranking.begin() + k);
    if (!top_equal && !bot_equal) out.push_back(k);
  }
  return out;
}

namespace {

ConjugateSquare canonical_square(LinearOrder a1, LinearOrder a2, LinearOrder b1,
                                 LinearOrder b2, int k) {
  if (a2 < a1) std::swap(a1, a2);
  if (b2 < b1) std::swap(b1, b2);
  ConjugateSquare s;
  if (b1 < a1) {
    s.o1 = b1; s.o2 = b2; s.o3 = a1; s.o4 = a2;
  } else {
    s.o1 = a1; s.o2 = a2; s.o3 = b1; s.o4 = b2;
  }
  s.k = k;
  return s;
}

}  // namespace

ConjugateSquare make_conjugate_square(const LinearOrder& o1,
                                      const LinearOrder& o2, int k) {
  auto levels = separable_levels(o1, o2);
  if (std::find(levels.begin(), levels.end(), k) == levels.end())
    throw DomainError("orders do not form a separable pair at level " +
                      std::to_string(k));
  LinearOrder o3 = concatenate(initial_segment(o1, k), terminal_segment(o2, k));
  LinearOrder o4 = concatenate(initial_segment(o2, k), terminal_segment(o1, k));
  return canonical_square(o1, o2, o3, o4, k);
}

std::vector<ConjugateSquare> enumerate_conjugate_squares(const Universe& u) {
  const int n = u.size();
  std::vector<ConjugateSquare> out;
  for (int k = 2; k <= n - 2; ++k) {
    // choose the top-k set, then an unordered pair of orderings on each side
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      std::vector<std::uint8_t> top, bot;
      for (int i = 0; i < n; ++i)
        ((mask >> i) & 1u ? top : bot).push_back(static_cast<std::uint8_t>(i));

      std::vector<std::vector<std::uint8_t>> tops, bots;
      {
        auto p = top;
        do tops.push_back(p); while (std::next_permutation(p.begin(), p.end()));
        p = bot;
        do bots.push_back(p); while (std::next_permutation(p.begin(), p.end()));
      }
      auto order_of = [](const std::vector<std::uint8_t>& a,
                         const std::vector<std::uint8_t>& b) {
        LinearOrder o;
        o.ranking = a;
        o.ranking.insert(o.ranking.end(), b.begin(), b.end());
        return o;
      };
      for (std::size_t i = 0; i < tops.size(); ++i)
        for (std::size_t j = i + 1; j < tops.size(); ++j)
          for (std::size_t p = 0; p < bots.size(); ++p)
            for (std::size_t q = p + 1; q < bots.size(); ++q)
              out.push_back(canonical_square(
                  order_of(tops[i], bots[p]), order_of(tops[j], bots[q]),
                  order_of(tops[i], bots[q]), order_of(tops[j], bots[p]), k));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ConjugateSquare& a, const ConjugateSquare& b) {
              return std::tie(a.k, a.o1, a.o2, a.o3) <
                     std::tie(b.k, b.o1, b.o2, b.o3);
            });
  return out;
}

}  // namespace rum
