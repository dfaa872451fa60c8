#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "group.hpp"
#include "subgroup.hpp"

namespace pgroup {

// The normal subgroups of G with [M, G] and M^p cached per subgroup.
class NormalLattice {
 public:
  explicit NormalLattice(const FiniteGroup& G, std::size_t budget = kDefaultNormalBudget)
      : G_(G), subs_(enumerate_normal_subgroups(G, budget)) {
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      index_.emplace(subs_[i].set(), i);
      comm_.push_back(commutator_with_group(G_, subs_[i]));
      pow_.push_back(power_subgroup(G_, subs_[i], 1));
    }
  }

  const FiniteGroup& group() const noexcept { return G_; }
  std::size_t size() const noexcept { return subs_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<Subgroup>& subgroups() const noexcept { return subs_; }
  const Subgroup& commutator(std::size_t i) const { return comm_[i]; }
  const Subgroup& power(std::size_t i) const { return pow_[i]; }

  std::optional<std::size_t> find(const Subgroup& H) const {
    auto it = index_.find(H.set());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(const Subgroup& H) const {
    auto i = find(H);
    if (!i) throw Error(ErrorKind::NotNormal, "subgroup is not normal in the lattice group");
    return *i;
  }

  std::size_t trivial_index() const noexcept { return 0; }
  std::size_t whole_index() const noexcept { return subs_.size() - 1; }

  // M/K powerfully embedded in G/K, i.e. [M, G] <= M^p K. Requires K <= M.
  bool embedded_mod(std::size_t m, std::size_t k) const {
    return contained_in_product(comm_[m], pow_[m], subs_[k]);
  }

  // [M, G] <= M^p
  bool embedded(std::size_t m) const { return comm_[m].is_subgroup_of(pow_[m]); }

 private:
  // C <= P K for normal P and K.
  bool contained_in_product(const Subgroup& C, const Subgroup& P, const Subgroup& K) const {
    for (Elem c : C.generators()) {
      if (P.contains(c) || K.contains(c)) continue;
      bool found = false;
      for (Elem k : K.elements())
        if (P.contains(G_.mul(c, k))) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  }

  FiniteGroup G_;
  std::vector<Subgroup> subs_;
  std::unordered_map<ElemSet, std::size_t, ElemSetHash> index_;
  std::vector<Subgroup> comm_;
  std::vector<Subgroup> pow_;
};

}  // namespace pgroup
