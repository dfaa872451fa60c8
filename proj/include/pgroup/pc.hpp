#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "group.hpp"

namespace pgroup {

// (generator, exponent) pairs in strictly increasing generator order.
// Generators are 0-based here; the JSON format is 1-based.
using PcWord = std::vector<std::pair<int, int>>;

struct PcPresentation {
  std::uint32_t prime = 3;
  int ngens = 0;
  // i -> value of g_i^p, a word in g_{i+1}..g_n. Missing means g_i^p = 1.
  std::map<int, PcWord> powers;
  // (j, i) with j > i -> value of g_j^{g_i}, a word in g_j..g_n.
  // Missing means g_i and g_j commute.
  std::map<std::pair<int, int>, PcWord> conjugates;
};

namespace detail {

// Collection from the left on exponent vectors with entries in 0..p-1.
class Collector {
 public:
  explicit Collector(const PcPresentation& pres)
      : p_(static_cast<int>(pres.prime)), n_(pres.ngens), powers_(n_), conj_(n_ * n_),
        commutes_(n_ * n_, 1) {
    for (const auto& [i, w] : pres.powers) powers_[i] = expand(w);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) conj_[j * n_ + i] = {j};
    for (const auto& [key, w] : pres.conjugates) {
      auto [j, i] = key;
      conj_[j * n_ + i] = expand(w);
      commutes_[j * n_ + i] = (w == PcWord{{j, 1}});
    }
  }

  int ngens() const noexcept { return n_; }
  int prime() const noexcept { return p_; }

  std::vector<int> decode(std::uint64_t index) const {
    std::vector<int> e(n_);
    for (int i = 0; i < n_; ++i) {
      e[i] = static_cast<int>(index % static_cast<std::uint64_t>(p_));
      index /= static_cast<std::uint64_t>(p_);
    }
    return e;
  }

  std::uint64_t encode(const std::vector<int>& e) const {
    std::uint64_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(e[i]);
    return idx;
  }

  // Multiplies the normal word `e` in place by the normal word `rhs`.
  void multiply(std::vector<int>& e, const std::vector<int>& rhs) const {
    std::vector<int> stack;
    for (int i = n_ - 1; i >= 0; --i)
      for (int k = 0; k < rhs[i]; ++k) stack.push_back(i);
    collect(e, stack);
  }

 private:
  static std::vector<int> expand(const PcWord& w) {
    std::vector<int> letters;
    for (auto [g, x] : w)
      for (int k = 0; k < x; ++k) letters.push_back(g);
    return letters;
  }

  // `stack` holds pending letters, the next one at the back.
  void collect(std::vector<int>& e, std::vector<int>& stack) const {
    std::vector<int> pending;
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      bool tail_commutes = true;
      for (int j = i + 1; j < n_; ++j)
        if (e[j] && !commutes_[j * n_ + i]) {
          tail_commutes = false;
          break;
        }
      if (tail_commutes && e[i] + 1 < p_) {
        ++e[i];
        continue;
      }
      // prefix * g_i^(e_i+1) * (tail)^(g_i)
      pending.clear();
      if (++e[i] == p_) {
        e[i] = 0;
        pending.insert(pending.end(), powers_[i].begin(), powers_[i].end());
      }
      for (int j = i + 1; j < n_; ++j) {
        for (int k = 0; k < e[j]; ++k)
          pending.insert(pending.end(), conj_[j * n_ + i].begin(), conj_[j * n_ + i].end());
        e[j] = 0;
      }
      stack.insert(stack.end(), pending.rbegin(), pending.rend());
    }
  }

  int p_;
  int n_;
  std::vector<std::vector<int>> powers_;
  std::vector<std::vector<int>> conj_;
  std::vector<char> commutes_;
};

inline void validate_word(const PcWord& w, int first_allowed, int n, int p, const std::string& what) {
  int last = -1;
  for (auto [g, x] : w) {
    if (g < first_allowed || g >= n)
      throw Error(ErrorKind::InvalidWord, what + ": generator " + std::to_string(g + 1) +
                                              " is not a permitted later generator");
    if (g <= last)
      throw Error(ErrorKind::InvalidWord, what + ": generators not strictly increasing");
    if (x < 0 || x >= p)
      throw Error(ErrorKind::InvalidWord, what + ": exponent out of range 0..p-1");
    last = g;
  }
}

inline PcWord strip_zeros(const PcWord& w) {
  PcWord out;
  for (auto [g, x] : w)
    if (x != 0) out.emplace_back(g, x);
  return out;
}

}  // namespace detail

// Realizes a pc presentation of a p-group as a FiniteGroup on normal words.
// Multiplication is collection from the left. Consistency is established by
// checking (xy)g = x(yg) for all x, y and pc generators g when the group is
// small enough for a table, and by the standard overlap test words otherwise.
inline FiniteGroup build_from_pc(PcPresentation pres, std::string label = "pc") {
  Prime p(pres.prime);
  const int n = pres.ngens;
  if (n < 0) throw Error(ErrorKind::InvalidWord, "negative generator count");
  for (auto& [i, w] : pres.powers) {
    if (i < 0 || i >= n) throw Error(ErrorKind::InvalidWord, "power relation for unknown generator");
    detail::validate_word(w, i + 1, n, static_cast<int>(p), "power relation of g" + std::to_string(i + 1));
    w = detail::strip_zeros(w);
  }
  for (auto& [key, w] : pres.conjugates) {
    auto [j, i] = key;
    if (!(0 <= i && i < j && j < n))
      throw Error(ErrorKind::InvalidWord, "conjugate relation needs j > i");
    detail::validate_word(w, j, n, static_cast<int>(p),
                          "conjugate relation g" + std::to_string(j + 1) + "^g" + std::to_string(i + 1));
    w = detail::strip_zeros(w);
  }
  std::uint64_t order = ipow(p, static_cast<std::uint64_t>(n));
  if (order > kElementCap)
    throw Error(ErrorKind::SizeLimitExceeded, "p^n exceeds element cap");

  auto col = std::make_shared<const detail::Collector>(pres);
  MulFn mul = [col](Elem a, Elem b) -> Elem {
    auto e = col->decode(a);
    col->multiply(e, col->decode(b));
    return static_cast<Elem>(col->encode(e));
  };
  std::vector<Elem> gens;
  for (int i = 0; i < n; ++i) gens.push_back(static_cast<Elem>(ipow(p, static_cast<std::uint64_t>(i))));

  if (order > kTableCap) {
    // Overlap consistency test words on generators:
    // (g_k g_j) g_i, (g_j^(p-1) g_j) g_i, (g_j g_i^(p-1)) g_i, (g_i g_i^(p-1)) g_i.
    auto g = [&](int i) { return gens[static_cast<std::size_t>(i)]; };
    auto assoc = [&](Elem a, Elem b, Elem c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
    auto gpow = [&](int i, int k) {
      Elem r = kIdentity;
      for (int t = 0; t < k; ++t) r = mul(r, g(i));
      return r;
    };
    const int pi = static_cast<int>(p);
    for (int i = 0; i < n; ++i) {
      if (!assoc(g(i), gpow(i, pi - 1), g(i)))
        throw Error(ErrorKind::InconsistentPresentation, "overlap g_i^p g_i fails");
      for (int j = i + 1; j < n; ++j) {
        if (!assoc(gpow(j, pi - 1), g(j), g(i)) || !assoc(g(j), gpow(i, pi - 1), g(i)))
          throw Error(ErrorKind::InconsistentPresentation, "power overlap fails");
        for (int k = j + 1; k < n; ++k)
          if (!assoc(g(k), g(j), g(i)))
            throw Error(ErrorKind::InconsistentPresentation, "overlap g_k g_j g_i fails");
      }
    }
  }

  FiniteGroup G = FiniteGroup::from_function(p, order, mul, gens, std::move(label));
  if (G.has_table()) {
    const auto N = static_cast<Elem>(order);
    for (Elem x = 0; x < N; ++x)
      for (Elem y = 0; y < N; ++y) {
        Elem xy = G.mul(x, y);
        for (Elem gi : gens)
          if (G.mul(xy, gi) != G.mul(x, G.mul(y, gi)))
            throw Error(ErrorKind::InconsistentPresentation, "collection is not associative");
      }
  }
  return G;
}

}  // namespace pgroup
