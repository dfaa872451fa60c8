#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace pgroup {

using MulFn = std::function<Elem(Elem, Elem)>;

// An explicit finite p-group on the element domain 0..order-1 with identity 0.
//
// The object is a cheap handle onto immutable shared state, so copies are
// free and may be read from any number of threads.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  // Builds a group from a multiplication function. Identity, inverse and
  // p-power order laws are checked for every element, generation by `gens` is
  // checked, and associativity is checked exhaustively for order <= 243 and on
  // `assoc_samples` random triples above that. assoc_samples == 0 skips the
  // associativity check; derived groups (quotients, subgroups) use that.
  static FiniteGroup from_function(Prime p, std::uint64_t order, MulFn mul, std::vector<Elem> gens,
                                   std::string label, std::size_t assoc_samples = 100000) {
    int n = log_p(order, p);
    if (n < 0) throw Error(ErrorKind::OrderMismatch, "group order is not a power of p");
    if (order > kElementCap)
      throw Error(ErrorKind::SizeLimitExceeded,
                  "order " + std::to_string(order) + " exceeds element cap " +
                      std::to_string(kElementCap));
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->log_order = n;
    impl->order = order;
    impl->label = std::move(label);
    for (Elem g : gens)
      if (g >= order) throw Error(ErrorKind::InvalidWord, "generator index out of range");
    impl->gens = std::move(gens);

    const auto N = static_cast<Elem>(order);
    if (order <= kTableCap) {
      impl->table.resize(order * order);
      for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b) impl->table[std::size_t{a} * N + b] = mul(a, b);
    } else {
      impl->mul = std::move(mul);
    }
    FiniteGroup G(std::move(impl));
    G.finish(assoc_samples);
    return G;
  }

  std::uint32_t prime() const noexcept { return impl_->p; }
  std::uint64_t order() const noexcept { return impl_ ? impl_->order : 0; }
  int log_order() const noexcept { return impl_->log_order; }
  const std::string& label() const noexcept { return impl_->label; }
  std::span<const Elem> generators() const noexcept { return impl_->gens; }
  bool valid() const noexcept { return static_cast<bool>(impl_); }

  Elem mul(Elem a, Elem b) const {
    if (!impl_->table.empty()) return impl_->table[std::size_t{a} * impl_->order + b];
    return impl_->mul(a, b);
  }
  Elem inv(Elem a) const noexcept { return impl_->inv[a]; }
  Elem pth_power(Elem a) const noexcept { return impl_->ppow[a]; }

  Elem pow(Elem a, std::uint64_t k) const {
    Elem r = kIdentity;
    Elem base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  // x^(p^i)
  Elem ppow(Elem a, int i) const {
    for (int j = 0; j < i && a != kIdentity; ++j) a = impl_->ppow[a];
    return a;
  }

  // [a,b] = a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  // a^b = b^-1 a b
  Elem conj(Elem a, Elem b) const { return mul(mul(inv(b), a), b); }

  // log_p of the order of x.
  int element_log_order(Elem x) const noexcept { return impl_->log_ord[x]; }
  std::uint64_t element_order(Elem x) const noexcept {
    return ipow(impl_->p, static_cast<std::uint64_t>(impl_->log_ord[x]));
  }
  int log_exponent() const noexcept { return impl_->log_exp; }
  std::uint64_t exponent() const noexcept {
    return ipow(impl_->p, static_cast<std::uint64_t>(impl_->log_exp));
  }

  bool is_abelian() const {
    for (Elem a : impl_->gens)
      for (Elem b : impl_->gens)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool has_table() const noexcept { return !impl_->table.empty(); }

  // A shared identity for caching keyed on a group.
  const void* id() const noexcept { return impl_.get(); }

  FiniteGroup with_label(std::string label) const {
    auto copy = std::make_shared<Impl>(*impl_);
    copy->label = std::move(label);
    return FiniteGroup(std::move(copy));
  }

 private:
  struct Impl {
    std::uint32_t p = 3;
    int log_order = 0;
    std::uint64_t order = 1;
    std::vector<Elem> table;
    MulFn mul;
    std::vector<Elem> inv;
    std::vector<Elem> ppow;
    std::vector<std::uint8_t> log_ord;
    int log_exp = 0;
    std::vector<Elem> gens;
    std::string label;
  };

  explicit FiniteGroup(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  void finish(std::size_t assoc_samples) {
    auto& I = const_cast<Impl&>(*impl_);
    const auto N = static_cast<Elem>(I.order);
    for (Elem x = 0; x < N; ++x)
      if (mul(kIdentity, x) != x || mul(x, kIdentity) != x)
        throw Error(ErrorKind::InconsistentPresentation, "index 0 is not a two-sided identity");

    I.inv.assign(N, kIdentity);
    I.ppow.assign(N, kIdentity);
    I.log_ord.assign(N, 0);
    for (Elem x = 0; x < N; ++x) {
      Elem y = x;
      std::uint64_t k = 1;
      Elem prev = kIdentity;
      while (y != kIdentity) {
        if (k == static_cast<std::uint64_t>(I.p)) I.ppow[x] = y;
        prev = y;
        y = mul(y, x);
        ++k;
        if (k > I.order + 1)
          throw Error(ErrorKind::InconsistentPresentation, "element without finite order");
      }
      if (k == static_cast<std::uint64_t>(I.p)) I.ppow[x] = y;
      // k is now the order of x; prev = x^(k-1)
      int lo = log_p(k, I.p);
      if (lo < 0)
        throw Error(ErrorKind::InconsistentPresentation,
                    "element order " + std::to_string(k) + " is not a power of p");
      I.log_ord[x] = static_cast<std::uint8_t>(lo);
      I.inv[x] = (k == 1) ? kIdentity : prev;
      I.log_exp = std::max(I.log_exp, lo);
    }
    for (Elem x = 0; x < N; ++x)
      if (mul(x, I.inv[x]) != kIdentity || mul(I.inv[x], x) != kIdentity)
        throw Error(ErrorKind::InconsistentPresentation, "inverse law fails");

    // Generation: breadth-first search on the Cayley graph.
    std::vector<char> seen(N, 0);
    std::vector<Elem> queue{kIdentity};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (Elem g : I.gens) {
        Elem y = mul(queue[h], g);
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    if (queue.size() != I.order)
      throw Error(ErrorKind::InconsistentPresentation,
                  "distinguished generators do not generate the group");

    if (assoc_samples == 0) return;
    if (I.order <= 243) {
      for (Elem a = 0; a < N; ++a)
        for (Elem b = 0; b < N; ++b) {
          Elem ab = mul(a, b);
          for (Elem c = 0; c < N; ++c)
            if (mul(ab, c) != mul(a, mul(b, c)))
              throw Error(ErrorKind::InconsistentPresentation, "multiplication is not associative");
        }
    } else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ I.order);
      std::uniform_int_distribution<Elem> d(0, N - 1);
      for (std::size_t s = 0; s < assoc_samples; ++s) {
        Elem a = d(rng), b = d(rng), c = d(rng);
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error(ErrorKind::InconsistentPresentation, "multiplication is not associative");
      }
    }
  }

  std::shared_ptr<const Impl> impl_;
};

// A total element map between two groups.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<Elem> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {}

  const FiniteGroup& source() const noexcept { return source_; }
  const FiniteGroup& target() const noexcept { return target_; }
  Elem operator()(Elem x) const noexcept { return map_[x]; }
  std::span<const Elem> map() const noexcept { return map_; }

  bool is_surjective() const {
    std::vector<char> hit(target_.order(), 0);
    for (Elem y : map_) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  // Checks f(xy) = f(x)f(y) on all generator pairs and on `samples` random pairs.
  bool spot_check(std::size_t samples = 1000, std::uint64_t seed = 1) const {
    auto ok = [&](Elem x, Elem y) {
      return map_[source_.mul(x, y)] == target_.mul(map_[x], map_[y]);
    };
    for (Elem x : source_.generators())
      for (Elem y : source_.generators())
        if (!ok(x, y)) return false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(source_.order() - 1));
    for (std::size_t i = 0; i < samples; ++i)
      if (!ok(d(rng), d(rng))) return false;
    return true;
  }

  GroupHom then(const GroupHom& next) const {
    std::vector<Elem> m(map_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = next(map_[i]);
    return GroupHom(source_, next.target(), std::move(m));
  }

 private:
  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Elem> map_;
};

}  // namespace pgroup
