#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "group.hpp"

namespace pgroup {

namespace detail {

// Mixed-radix coordinates, least significant first.
struct MixedRadix {
  std::vector<std::uint64_t> radix;

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (auto r : radix) s = (s > UINT64_MAX / r) ? UINT64_MAX : s * r;
    return s;
  }
  void decode(std::uint64_t idx, std::vector<std::uint64_t>& out) const {
    out.resize(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
      out[i] = idx % radix[i];
      idx /= radix[i];
    }
  }
  std::uint64_t encode(const std::vector<std::uint64_t>& c) const {
    std::uint64_t idx = 0;
    for (std::size_t i = radix.size(); i-- > 0;) idx = idx * radix[i] + c[i];
    return idx;
  }
};

}  // namespace detail

// Direct product of cyclic groups of orders p^e_1, ..., p^e_k. Element
// coordinates are mixed radix with the first factor least significant.
inline FiniteGroup build_abelian(Prime p, const std::vector<int>& exps, std::string label = {}) {
  detail::MixedRadix mr;
  for (int e : exps) {
    if (e < 1) throw Error(ErrorKind::ParamOutOfRange, "abelian invariant exponents must be >= 1");
    mr.radix.push_back(ipow(p, static_cast<std::uint64_t>(e)));
  }
  const std::uint64_t order = mr.size();
  if (order > kElementCap) throw Error(ErrorKind::SizeLimitExceeded, "abelian group exceeds element cap");
  if (label.empty()) {
    label = "abelian(" + std::to_string(p.value()) + ",[";
    for (std::size_t i = 0; i < exps.size(); ++i) label += (i ? "," : "") + std::to_string(exps[i]);
    label += "])";
  }
  MulFn mul = [mr](Elem a, Elem b) -> Elem {
    std::uint64_t idx = 0, scale = 1;
    std::uint64_t x = a, y = b;
    for (auto r : mr.radix) {
      idx += ((x % r + y % r) % r) * scale;
      scale *= r;
      x /= r;
      y /= r;
    }
    return static_cast<Elem>(idx);
  };
  std::vector<Elem> gens;
  std::uint64_t scale = 1;
  for (auto r : mr.radix) {
    gens.push_back(static_cast<Elem>(scale));
    scale *= r;
  }
  return FiniteGroup::from_function(p, order, std::move(mul), std::move(gens), std::move(label));
}

// Coordinates of UT_n(Z/p^m): the entries strictly above the diagonal,
// row-major, as a mixed-radix number in base p^m.
struct UnitriangularCoords {
  int n = 2;
  std::uint64_t modulus = 3;

  std::size_t entries() const { return static_cast<std::size_t>(n * (n - 1) / 2); }

  // Full n x n matrix (row-major) for an element index.
  std::vector<std::uint64_t> matrix(std::uint64_t idx) const {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i * n + i)] = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        a[static_cast<std::size_t>(i * n + j)] = idx % modulus;
        idx /= modulus;
      }
    return a;
  }

  std::uint64_t index(const std::vector<std::uint64_t>& a) const {
    std::uint64_t idx = 0;
    for (int i = n - 1; i >= 0; --i)
      for (int j = n - 1; j > i; --j) idx = idx * modulus + a[static_cast<std::size_t>(i * n + j)] % modulus;
    return idx;
  }

  std::uint64_t entry(std::uint64_t idx, int row, int col) const {
    return matrix(idx)[static_cast<std::size_t>(row * n + col)];
  }
};

// Upper unitriangular n x n matrices over Z/p^m, generated by the elementary
// transvections I + E_{i,i+1}.
inline FiniteGroup build_unitriangular(int n, Prime p, int m) {
  if (n < 2 || m < 1) throw Error(ErrorKind::ParamOutOfRange, "unitriangular needs n >= 2, m >= 1");
  const auto e = static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n * (n - 1) / 2);
  const std::uint64_t order = ipow(p, e);
  if (order > kElementCap)
    throw Error(ErrorKind::SizeLimitExceeded, "UT_" + std::to_string(n) + "(Z/" +
                                                  std::to_string(p.value()) + "^" + std::to_string(m) +
                                                  ") exceeds element cap");
  UnitriangularCoords uc{n, ipow(p, static_cast<std::uint64_t>(m))};
  MulFn mul = [uc](Elem x, Elem y) -> Elem {
    const int d = uc.n;
    auto A = uc.matrix(x);
    auto B = uc.matrix(y);
    std::vector<std::uint64_t> C(A.size(), 0);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        std::uint64_t s = 0;
        for (int k = i; k <= j; ++k)
          s = (s + A[static_cast<std::size_t>(i * d + k)] * B[static_cast<std::size_t>(k * d + j)]) % uc.modulus;
        C[static_cast<std::size_t>(i * d + j)] = s;
      }
    return static_cast<Elem>(uc.index(C));
  };
  std::vector<Elem> gens;
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(n * n), 0);
    a[static_cast<std::size_t>(i * n + i + 1)] = 1;
    gens.push_back(static_cast<Elem>(uc.index(a)));
  }
  return FiniteGroup::from_function(p, order, std::move(mul), std::move(gens),
                                    "unitriangular(" + std::to_string(n) + "," +
                                        std::to_string(p.value()) + "," + std::to_string(m) + ")");
}

// <alpha> x| M for abelian M, where alpha has order p^t and acts on M by the
// automorphism sending the i-th distinguished generator of M to alpha_images[i]
// (m -> m^alpha, so [x, alpha] = x^-1 alpha(x)). Elements are pairs
// (a, m) = alpha^a m with index a*|M| + m, and
// (a1, m1)(a2, m2) = (a1 + a2, alpha^a2(m1) m2).
inline FiniteGroup build_semidirect(const FiniteGroup& M, const std::vector<Elem>& alpha_images, int t,
                                    std::string label = "semidirect") {
  if (!M.is_abelian()) throw Error(ErrorKind::NotAbelian, "semidirect base must be abelian");
  if (t < 1) throw Error(ErrorKind::ParamOutOfRange, "alpha order exponent must be >= 1");
  const auto mgens = M.generators();
  if (alpha_images.size() != mgens.size())
    throw Error(ErrorKind::NotAutomorphism, "need one image per generator of M");
  const auto m_order = static_cast<Elem>(M.order());
  for (Elem y : alpha_images)
    if (y >= m_order) throw Error(ErrorKind::NotAutomorphism, "image outside M");

  // Extend along the Cayley graph, checking every edge.
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> act(m_order, kUnset);
  act[kIdentity] = kIdentity;
  std::vector<Elem> queue{kIdentity};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Elem x = queue[h];
    for (std::size_t k = 0; k < mgens.size(); ++k) {
      Elem y = M.mul(x, mgens[k]);
      Elem fy = M.mul(act[x], alpha_images[k]);
      if (act[y] == kUnset) {
        act[y] = fy;
        queue.push_back(y);
      } else if (act[y] != fy) {
        throw Error(ErrorKind::NotAutomorphism, "generator images do not define a homomorphism");
      }
    }
  }
  {
    std::vector<char> hit(m_order, 0);
    for (Elem y : act) hit[y] = 1;
    for (char c : hit)
      if (!c) throw Error(ErrorKind::NotAutomorphism, "generator images do not define a bijection");
  }

  const std::uint64_t a_order = ipow(M.prime(), static_cast<std::uint64_t>(t));
  const std::uint64_t order = a_order * M.order();
  if (a_order > kElementCap || order > kElementCap)
    throw Error(ErrorKind::SizeLimitExceeded, "semidirect product exceeds element cap");

  // powers[a][m] = alpha^a(m)
  auto powers = std::make_shared<std::vector<Elem>>(a_order * m_order);
  auto& P = *powers;
  for (Elem m = 0; m < m_order; ++m) P[m] = m;
  for (std::uint64_t a = 1; a < a_order; ++a)
    for (Elem m = 0; m < m_order; ++m) P[a * m_order + m] = act[P[(a - 1) * m_order + m]];
  for (Elem m = 0; m < m_order; ++m)
    if (act[P[(a_order - 1) * m_order + m]] != m)
      throw Error(ErrorKind::OrderMismatch, "alpha^(p^t) is not the identity automorphism");

  MulFn mul = [powers, M, m_order, a_order](Elem x, Elem y) -> Elem {
    const Elem a1 = x / m_order, m1 = x % m_order;
    const Elem a2 = y / m_order, m2 = y % m_order;
    const auto a = static_cast<Elem>((std::uint64_t{a1} + a2) % a_order);
    const Elem m = M.mul((*powers)[std::size_t{a2} * m_order + m1], m2);
    return a * m_order + m;
  };
  std::vector<Elem> gens{m_order};
  for (Elem g : mgens) gens.push_back(g);
  return FiniteGroup::from_function(Prime(M.prime()), order, std::move(mul), std::move(gens),
                                    std::move(label));
}

}  // namespace pgroup
