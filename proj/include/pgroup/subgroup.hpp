#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "core.hpp"
#include "group.hpp"

namespace pgroup {

// A subgroup of an explicit group, identified by its element set. The
// generator witness is irredundant: each generator enlarged the closure of the
// ones before it.
class Subgroup {
 public:
  Subgroup() = default;

  const FiniteGroup& group() const noexcept { return G_; }
  const ElemSet& set() const noexcept { return set_; }
  std::span<const Elem> elements() const noexcept { return elems_; }
  std::span<const Elem> generators() const noexcept { return gens_; }
  std::uint64_t order() const noexcept { return elems_.size(); }
  int log_order() const noexcept { return log_p(order(), G_.prime()); }
  bool contains(Elem x) const noexcept { return set_.test(x); }
  bool is_trivial() const noexcept { return elems_.size() == 1; }
  bool is_whole() const noexcept { return elems_.size() == G_.order(); }
  std::optional<bool> normal_hint() const noexcept { return normal_; }

  bool is_subgroup_of(const Subgroup& o) const noexcept { return set_.is_subset_of(o.set_); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.set_ == b.set_; }

  // Sorted element indices, the serialized form.
  std::vector<Elem> sorted_elements() const { return set_.elements(); }

 private:
  friend class SubgroupBuilder;
  FiniteGroup G_;
  ElemSet set_;
  std::vector<Elem> elems_;
  std::vector<Elem> gens_;
  std::optional<bool> normal_;
};

// Incremental closure: adding a generator extends the element list by right
// multiplication, touching only what is new.
class SubgroupBuilder {
 public:
  explicit SubgroupBuilder(const FiniteGroup& G) {
    h_.G_ = G;
    h_.set_ = ElemSet(G.order());
    h_.set_.set(kIdentity);
    h_.elems_.push_back(kIdentity);
  }
  explicit SubgroupBuilder(const Subgroup& H) : h_(H) { h_.normal_.reset(); }

  bool contains(Elem x) const noexcept { return h_.set_.test(x); }

  // Returns true when x was not already in the subgroup.
  bool add(Elem x) {
    if (h_.set_.test(x)) return false;
    const FiniteGroup& G = h_.G_;
    h_.gens_.push_back(x);
    const std::size_t old = h_.elems_.size();
    for (std::size_t i = 0; i < old; ++i) push(G.mul(h_.elems_[i], x));
    for (std::size_t i = old; i < h_.elems_.size(); ++i)
      for (Elem g : h_.gens_) push(G.mul(h_.elems_[i], g));
    return true;
  }

  void add_all(std::span<const Elem> xs) {
    for (Elem x : xs) add(x);
  }

  std::span<const Elem> generators() const noexcept { return h_.gens_; }
  std::uint64_t order() const noexcept { return h_.elems_.size(); }

  Subgroup build(std::optional<bool> normal = std::nullopt) && {
    h_.normal_ = normal;
    return std::move(h_);
  }

 private:
  void push(Elem y) {
    if (!h_.set_.test(y)) {
      h_.set_.set(y);
      h_.elems_.push_back(y);
    }
  }
  Subgroup h_;
};

inline Subgroup trivial_subgroup(const FiniteGroup& G) { return SubgroupBuilder(G).build(true); }

inline Subgroup whole_group(const FiniteGroup& G) {
  SubgroupBuilder b(G);
  b.add_all(G.generators());
  return std::move(b).build(true);
}

// Smallest subgroup containing gens.
inline Subgroup closure(const FiniteGroup& G, std::span<const Elem> gens) {
  SubgroupBuilder b(G);
  b.add_all(gens);
  return std::move(b).build();
}

inline Subgroup closure(const FiniteGroup& G, std::initializer_list<Elem> gens) {
  return closure(G, std::span<const Elem>(gens.begin(), gens.size()));
}

inline Subgroup closure_of_set(const FiniteGroup& G, const ElemSet& s) {
  SubgroupBuilder b(G);
  s.for_each([&](Elem x) { b.add(x); });
  return std::move(b).build();
}

// H extended by extra generators.
inline Subgroup extend(const Subgroup& H, std::span<const Elem> extra) {
  SubgroupBuilder b(H);
  b.add_all(extra);
  return std::move(b).build();
}

// Conjugation-closure by the generators of G.
inline bool is_normal(const FiniteGroup& G, const Subgroup& H) {
  if (auto h = H.normal_hint()) return *h;
  for (Elem h : H.generators())
    for (Elem g : G.generators())
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

inline Subgroup normal_closure(const FiniteGroup& G, std::span<const Elem> gens) {
  SubgroupBuilder b(G);
  b.add_all(gens);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Elem> hg(b.generators().begin(), b.generators().end());
    for (Elem h : hg)
      for (Elem g : G.generators())
        changed |= b.add(G.conj(h, g));
  }
  return std::move(b).build(true);
}

inline Subgroup normal_closure(const FiniteGroup& G, std::initializer_list<Elem> gens) {
  return normal_closure(G, std::span<const Elem>(gens.begin(), gens.size()));
}

// Product of two normal subgroups.
inline Subgroup join(const Subgroup& A, const Subgroup& B) {
  if (B.is_subgroup_of(A)) return A;
  if (A.is_subgroup_of(B)) return B;
  SubgroupBuilder b(A);
  b.add_all(B.generators());
  const bool normal = A.normal_hint().value_or(false) && B.normal_hint().value_or(false);
  return std::move(b).build(normal ? std::optional<bool>(true) : std::nullopt);
}

inline Subgroup intersection(const Subgroup& A, const Subgroup& B) {
  ElemSet s = A.set();
  s &= B.set();
  return closure_of_set(A.group(), s);
}

// [A, B]. For normal A and B this is the normal closure of the commutators of
// generator pairs; otherwise every pair of elements is used.
inline Subgroup commutator_subgroup(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
  if (A.is_trivial() || B.is_trivial()) return trivial_subgroup(G);
  if (is_normal(G, A) && is_normal(G, B)) {
    std::vector<Elem> cs;
    for (Elem a : A.generators())
      for (Elem b : B.generators()) cs.push_back(G.commutator(a, b));
    return normal_closure(G, cs);
  }
  SubgroupBuilder sb(G);
  for (Elem a : A.elements())
    for (Elem b : B.elements()) sb.add(G.commutator(a, b));
  return std::move(sb).build();
}

// [N, G] for normal N.
inline Subgroup commutator_with_group(const FiniteGroup& G, const Subgroup& N) {
  std::vector<Elem> cs;
  for (Elem a : N.generators())
    for (Elem g : G.generators()) cs.push_back(G.commutator(a, g));
  return normal_closure(G, cs);
}

// [N, G, ..., G] with k copies of G.
inline Subgroup iterated_commutator(const FiniteGroup& G, const Subgroup& N, int k) {
  Subgroup cur = N;
  for (int i = 0; i < k && !cur.is_trivial(); ++i)
    cur = is_normal(G, cur) ? commutator_with_group(G, cur) : commutator_subgroup(G, cur, whole_group(G));
  return cur;
}

// { x^(p^i) : x in N }, without closure.
inline ElemSet power_image(const FiniteGroup& G, const Subgroup& N, int i) {
  ElemSet s(G.order());
  for (Elem x : N.elements()) s.set(G.ppow(x, i));
  return s;
}

// N^(p^i): generated by the p^i-th powers of all elements of N.
inline Subgroup power_subgroup(const FiniteGroup& G, const Subgroup& N, int i) {
  if (i == 0) return N;
  SubgroupBuilder b(G);
  for (Elem x : N.elements()) b.add(G.ppow(x, i));
  // A verbal subgroup of a normal subgroup is normal.
  return std::move(b).build(is_normal(G, N) ? std::optional<bool>(true) : std::nullopt);
}

inline Subgroup omega_subgroup(const FiniteGroup& G, int i) {
  SubgroupBuilder b(G);
  const auto n = static_cast<Elem>(G.order());
  for (Elem x = 0; x < n; ++x)
    if (G.element_log_order(x) <= i) b.add(x);
  return std::move(b).build(true);
}

enum class SeriesKind { UpperCentral, LowerCentral, Eta, Custom };
enum class Direction { Ascending, Descending };

constexpr std::string_view to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::UpperCentral: return "upper-central";
    case SeriesKind::LowerCentral: return "lower-central";
    case SeriesKind::Eta: return "eta";
    case SeriesKind::Custom: return "custom";
  }
  return "custom";
}

struct SubgroupSeries {
  SeriesKind kind = SeriesKind::Custom;
  Direction direction = Direction::Ascending;
  std::vector<Subgroup> terms;

  std::size_t size() const noexcept { return terms.size(); }
  const Subgroup& operator[](std::size_t i) const { return terms[i]; }

  bool is_chain() const {
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
      bool ok = direction == Direction::Ascending ? terms[i].is_subgroup_of(terms[i + 1])
                                                  : terms[i + 1].is_subgroup_of(terms[i]);
      if (!ok) return false;
    }
    return true;
  }

  std::vector<int> log_orders() const {
    std::vector<int> out;
    for (const auto& t : terms) out.push_back(t.log_order());
    return out;
  }
};

// {x : [x, g] in K for every generator g}, the preimage of Z(G/K).
inline Subgroup center_modulo(const FiniteGroup& G, const Subgroup& K) {
  SubgroupBuilder b(G);
  b.add_all(K.generators());
  const auto n = static_cast<Elem>(G.order());
  for (Elem x = 0; x < n; ++x) {
    if (b.contains(x)) continue;
    bool central = true;
    for (Elem g : G.generators())
      if (!K.contains(G.commutator(x, g))) {
        central = false;
        break;
      }
    if (central) b.add(x);
  }
  return std::move(b).build(true);
}

inline Subgroup center(const FiniteGroup& G) { return center_modulo(G, trivial_subgroup(G)); }

// Z_0 = 1 < Z_1 < ... < Z_c = G.
inline SubgroupSeries upper_central_series(const FiniteGroup& G) {
  SubgroupSeries s{SeriesKind::UpperCentral, Direction::Ascending, {trivial_subgroup(G)}};
  while (!s.terms.back().is_whole()) {
    Subgroup next = center_modulo(G, s.terms.back());
    if (next.order() == s.terms.back().order())
      throw Error(ErrorKind::ValidationFailed, "upper central series stalls: group is not nilpotent");
    s.terms.push_back(std::move(next));
  }
  return s;
}

// gamma_1 = G > gamma_2 > ... > gamma_{c+1} = 1.
inline SubgroupSeries lower_central_series(const FiniteGroup& G) {
  SubgroupSeries s{SeriesKind::LowerCentral, Direction::Descending, {whole_group(G)}};
  while (!s.terms.back().is_trivial()) {
    Subgroup next = commutator_with_group(G, s.terms.back());
    if (next.order() == s.terms.back().order())
      throw Error(ErrorKind::ValidationFailed, "lower central series stalls: group is not nilpotent");
    s.terms.push_back(std::move(next));
  }
  return s;
}

// gamma_i(G) with 1-based i; trivial past the end of the series.
inline Subgroup gamma(const SubgroupSeries& lcs, int i) {
  if (i < 1) i = 1;
  if (static_cast<std::size_t>(i) > lcs.size()) return lcs.terms.back();
  return lcs.terms[static_cast<std::size_t>(i - 1)];
}

// Phi(G) = G^p [G, G].
inline Subgroup frattini(const FiniteGroup& G) {
  Subgroup W = whole_group(G);
  return join(power_subgroup(G, W, 1), commutator_with_group(G, W));
}

inline int nilpotency_class(const FiniteGroup& G) {
  return static_cast<int>(lower_central_series(G).size()) - 1;
}

inline int coclass(const FiniteGroup& G) { return G.log_order() - nilpotency_class(G); }

inline bool is_maximal_class(const FiniteGroup& G) {
  return G.log_order() >= 4 && coclass(G) == 1;
}

// Minimal number of generators, log_p |G : Phi(G)|.
inline int rank(const FiniteGroup& G) { return G.log_order() - frattini(G).log_order(); }

// Every normal subgroup of G, sorted by order and then by elements.
//
// Breadth-first from the trivial subgroup: N is extended by x with x^p in N and
// [x, g] in N for every generator g, so N<x> is normal of order p|N|. Every
// normal subgroup is the top of a chain of such steps.
inline std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& G,
                                                        std::size_t budget = kDefaultNormalBudget) {
  std::vector<Subgroup> out{trivial_subgroup(G)};
  std::unordered_set<ElemSet, ElemSetHash> seen{out.front().set()};
  const auto n = static_cast<Elem>(G.order());
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Subgroup N = out[head];
    ElemSet covered = N.set();
    for (Elem x = 0; x < n; ++x) {
      if (covered.test(x) || !N.contains(G.pth_power(x))) continue;
      bool central = true;
      for (Elem g : G.generators())
        if (!N.contains(G.commutator(x, g))) {
          central = false;
          break;
        }
      if (!central) continue;
      SubgroupBuilder b(N);
      b.add(x);
      Subgroup M = std::move(b).build(true);
      covered |= M.set();
      if (seen.insert(M.set()).second) {
        out.push_back(std::move(M));
        if (out.size() > budget)
          throw Error(ErrorKind::BudgetExceeded,
                      "more than " + std::to_string(budget) + " normal subgroups");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.sorted_elements() < b.sorted_elements();
  });
  return out;
}

// The subgroup H as a group in its own right, elements relabeled in
// increasing order of their index in G. Returns the group and the inclusion.
inline std::pair<FiniteGroup, GroupHom> subgroup_as_group(const Subgroup& H) {
  const FiniteGroup& G = H.group();
  auto elems = std::make_shared<std::vector<Elem>>(H.sorted_elements());
  auto pos = std::make_shared<std::vector<Elem>>(G.order(), 0);
  for (std::size_t i = 0; i < elems->size(); ++i) (*pos)[(*elems)[i]] = static_cast<Elem>(i);
  MulFn mul = [G, elems, pos](Elem a, Elem b) { return (*pos)[G.mul((*elems)[a], (*elems)[b])]; };
  std::vector<Elem> gens;
  for (Elem g : H.generators()) gens.push_back((*pos)[g]);
  FiniteGroup S = FiniteGroup::from_function(Prime(G.prime()), H.order(), std::move(mul), std::move(gens),
                                             G.label() + ".sub", 0);
  return {S, GroupHom(S, G, *elems)};
}

// G/N on coset labels: coset ids are assigned in order of their least element,
// so the identity coset is 0.
inline std::pair<FiniteGroup, GroupHom> quotient(const FiniteGroup& G, const Subgroup& N) {
  if (!is_normal(G, N)) throw Error(ErrorKind::NotNormal, "quotient by a non-normal subgroup");
  const auto n = static_cast<Elem>(G.order());
  constexpr Elem kUnset = ~Elem{0};
  auto label = std::make_shared<std::vector<Elem>>(n, kUnset);
  auto reps = std::make_shared<std::vector<Elem>>();
  for (Elem x = 0; x < n; ++x) {
    if ((*label)[x] != kUnset) continue;
    const auto c = static_cast<Elem>(reps->size());
    reps->push_back(x);
    for (Elem k : N.elements()) (*label)[G.mul(x, k)] = c;
  }
  MulFn mul = [G, label, reps](Elem a, Elem b) { return (*label)[G.mul((*reps)[a], (*reps)[b])]; };
  std::vector<Elem> gens;
  for (Elem g : G.generators()) {
    Elem c = (*label)[g];
    if (c != kIdentity && std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  FiniteGroup Q = FiniteGroup::from_function(Prime(G.prime()), reps->size(), std::move(mul),
                                             std::move(gens), G.label() + "/N", 0);
  return {Q, GroupHom(G, Q, *label)};
}

// f^-1(S) for a subgroup S of the target.
inline Subgroup preimage(const GroupHom& f, const Subgroup& S) {
  ElemSet s(f.source().order());
  const auto n = static_cast<Elem>(f.source().order());
  for (Elem x = 0; x < n; ++x)
    if (S.contains(f(x))) s.set(x);
  SubgroupBuilder b(f.source());
  // kernel generators first keeps the witness short
  s.for_each([&](Elem x) {
    if (f(x) == kIdentity) b.add(x);
  });
  s.for_each([&](Elem x) { b.add(x); });
  return std::move(b).build(S.normal_hint());
}

inline Subgroup image(const GroupHom& f, const Subgroup& H) {
  SubgroupBuilder b(f.target());
  for (Elem g : H.generators()) b.add(f(g));
  return std::move(b).build();
}

}  // namespace pgroup
