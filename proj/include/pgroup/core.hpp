#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgroup {

// Dense element index. The identity is always 0.
using Elem = std::uint32_t;

inline constexpr Elem kIdentity = 0;

// Hard cap on the number of elements of any constructed group.
inline constexpr std::uint64_t kElementCap = 250000;

// Groups up to this size get a full Cayley table.
inline constexpr std::uint64_t kTableCap = 4096;

// Default cap on the number of normal subgroups an enumeration may produce.
inline constexpr std::size_t kDefaultNormalBudget = 1000000;

enum class ErrorKind {
  NotOddPrime,
  InvalidWord,
  InconsistentPresentation,
  SizeLimitExceeded,
  NotAutomorphism,
  OrderMismatch,
  NotAbelian,
  NotNormal,
  BudgetExceeded,
  GreedyOracleMismatch,
  NotAnEtaSeries,
  ValidationFailed,
  TheoremViolated,
  NoValidS,
  UnknownName,
  ParamOutOfRange,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotOddPrime: return "NotOddPrime";
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::InconsistentPresentation: return "InconsistentPresentation";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GreedyOracleMismatch: return "GreedyOracleMismatch";
    case ErrorKind::NotAnEtaSeries: return "NotAnEtaSeries";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::TheoremViolated: return "TheoremViolated";
    case ErrorKind::NoValidS: return "NoValidS";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// An odd prime. Construction from anything else throws NotOddPrime.
class Prime {
 public:
  explicit Prime(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p < 3 || p > 0xffffu || !is_prime(p))
      throw Error(ErrorKind::NotOddPrime, std::to_string(p) + " is not an odd prime");
  }
  std::uint32_t value() const noexcept { return p_; }
  operator std::uint32_t() const noexcept { return p_; }

 private:
  std::uint32_t p_;
};

// Saturating integer power; returns UINT64_MAX on overflow.
constexpr std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

// Exponent k with p^k == n; -1 if n is not a power of p.
constexpr int log_p(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return -1;
  int k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

// Fixed-size bitset over an element domain. Equality and hashing make it
// the canonical identity of a subgroup.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t domain() const noexcept { return n_; }

  bool test(Elem x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(Elem x) noexcept { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Elem x) noexcept { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool is_subset_of(const ElemSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  ElemSet& operator&=(const ElemSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElemSet& operator|=(const ElemSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(count());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        f(static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ull;
    return h;
  }

  friend bool operator==(const ElemSet&, const ElemSet&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElemSetHash {
  std::size_t operator()(const ElemSet& s) const noexcept { return s.hash(); }
};

}  // namespace pgroup
