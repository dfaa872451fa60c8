#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core.hpp"
#include "eta.hpp"
#include "group.hpp"
#include "lattice.hpp"
#include "pf.hpp"
#include "subgroup.hpp"

namespace pgroup {

// p^e written as (p, e). Reports never carry raw orders.
struct PPower {
  std::uint32_t p = 0;
  int e = 0;
  bool operator==(const PPower&) const = default;
};

inline void to_json(nlohmann::json& j, const PPower& x) { j = nlohmann::json::array({x.p, x.e}); }
inline void from_json(const nlohmann::json& j, PPower& x) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "p-power must be [p, e]");
  x.p = j.at(0).get<std::uint32_t>();
  x.e = j.at(1).get<int>();
}

struct OmegaEntry {
  int i = 0;
  PPower order, exponent, bound;
  bool operator==(const OmegaEntry&) const = default;
};

struct PfSection {
  bool is_pf = false;
  std::vector<std::vector<Elem>> witness;  // sorted element arrays, empty when not PF
  bool operator==(const PfSection&) const = default;
};

struct OmegaSection {
  int ell = 0;
  std::vector<OmegaEntry> rows;
  bool operator==(const OmegaSection&) const = default;
};

struct ShalevSection {
  bool applicable = false;
  int coclass = 0;
  std::uint64_t m = 0;
  int s = -1;
  std::uint64_t d = 0;
  bool uniserial = false;
  std::vector<std::pair<int, bool>> power_checks;
  bool operator==(const ShalevSection&) const = default;
};

struct AnalysisReport {
  std::string label;
  std::uint32_t prime = 0;
  PPower order, exponent;
  bool abelian = false;
  int nilpotency_class = 0;
  int coclass = 0;
  bool maximal_class = false;
  std::vector<PPower> upper_central, lower_central, eta_series;
  std::vector<Elem> eta;  // elements of eta(G)
  int powerful_class = 0;
  bool powerful = false;
  bool potent = false;
  std::vector<std::pair<int, bool>> power_surjective;  // (i, G^(p^i) = {x^(p^i)})
  std::optional<PfSection> pf;
  std::optional<OmegaSection> omega;
  std::optional<ShalevSection> shalev;
  std::vector<std::string> skipped;
  bool operator==(const AnalysisReport&) const = default;
};

// Sections that `skip` may name.
inline const std::set<std::string>& analysis_sections() {
  static const std::set<std::string> s{"pf", "omega", "shalev", "power"};
  return s;
}

struct AnalysisOptions {
  std::size_t budget = kDefaultNormalBudget;
  std::set<std::string> skip;
};

inline AnalysisReport analyze(const FiniteGroup& G, const AnalysisOptions& opt = {}) {
  for (const auto& s : opt.skip)
    if (!analysis_sections().count(s)) throw Error(ErrorKind::ParamOutOfRange, "unknown section \"" + s + "\"");
  const std::uint32_t p = G.prime();
  auto pp = [p](int e) { return PPower{p, e}; };
  auto orders = [&](const SubgroupSeries& s) {
    std::vector<PPower> v;
    for (int e : s.log_orders()) v.push_back(pp(e));
    return v;
  };

  AnalysisReport r;
  r.label = G.label();
  r.prime = p;
  r.order = pp(G.log_order());
  r.exponent = pp(G.log_exponent());
  r.abelian = G.is_abelian();
  const auto ucs = upper_central_series(G);
  const auto lcs = lower_central_series(G);
  r.nilpotency_class = static_cast<int>(lcs.size()) - 1;
  r.coclass = G.log_order() - r.nilpotency_class;
  r.maximal_class = is_maximal_class(G);
  r.upper_central = orders(ucs);
  r.lower_central = orders(lcs);

  NormalLattice L(G, opt.budget);
  auto eta_report = upper_eta_series(G, opt.budget);
  r.eta_series = orders(eta_report.series);
  r.eta = eta(L).sorted_elements();
  r.powerful_class = eta_report.powerful_class;
  r.powerful = r.powerful_class <= 1;
  r.potent = is_potent(G);

  if (r.powerful_class > r.nilpotency_class)
    throw Error(ErrorKind::ValidationFailed, "powerful class exceeds nilpotency class");
  for (std::size_t i = 0; i < ucs.size(); ++i) {
    const Subgroup& e = eta_report.series.terms[std::min(i, eta_report.series.size() - 1)];
    if (!ucs.terms[i].is_subgroup_of(e)) throw Error(ErrorKind::ValidationFailed, "Z_i not contained in eta_i");
  }

  if (opt.skip.count("power")) {
    r.skipped.push_back("power");
  } else {
    for (int i = 1; i <= G.log_exponent(); ++i) r.power_surjective.emplace_back(i, is_power_surjective(G, i));
  }
  if (opt.skip.count("pf")) {
    r.skipped.push_back("pf");
  } else {
    PfSection s;
    if (auto f = is_pf_embedded(L, L[L.whole_index()])) {
      s.is_pf = true;
      for (const auto& t : f->terms) s.witness.push_back(t.sorted_elements());
    }
    r.pf = std::move(s);
  }
  if (opt.skip.count("omega")) {
    r.skipped.push_back("omega");
  } else {
    auto t = omega_exponent_check(G, r.powerful_class);
    OmegaSection s;
    s.ell = t.ell;
    for (const auto& row : t.rows) s.rows.push_back({row.i, pp(row.log_order), pp(row.log_exponent), pp(row.log_bound)});
    r.omega = std::move(s);
  }
  if (opt.skip.count("shalev")) {
    r.skipped.push_back("shalev");
  } else {
    auto rep = verify_shalev(G, &L);
    r.shalev = ShalevSection{rep.applicable, rep.coclass, rep.m, rep.s, rep.d, rep.uniserial, rep.power_checks};
  }
  return r;
}

inline nlohmann::json to_json(const AnalysisReport& r) {
  using nlohmann::json;
  json j;
  j["label"] = r.label;
  j["prime"] = r.prime;
  j["order"] = r.order;
  j["exponent"] = r.exponent;
  j["abelian"] = r.abelian;
  j["nilpotency_class"] = r.nilpotency_class;
  j["coclass"] = r.coclass;
  j["maximal_class"] = r.maximal_class;
  j["upper_central_series"] = r.upper_central;
  j["lower_central_series"] = r.lower_central;
  j["eta_series"] = r.eta_series;
  j["eta"] = r.eta;
  j["powerful_class"] = r.powerful_class;
  j["powerful"] = r.powerful;
  j["potent"] = r.potent;
  json ps = json::array();
  for (auto [i, v] : r.power_surjective) ps.push_back({{"i", i}, {"value", v}});
  j["power_surjective"] = ps;
  j["pf"] = r.pf ? json{{"is_pf", r.pf->is_pf}, {"witness", r.pf->witness}} : json(nullptr);
  if (r.omega) {
    json rows = json::array();
    for (const auto& row : r.omega->rows)
      rows.push_back({{"i", row.i}, {"order", row.order}, {"exponent", row.exponent}, {"bound", row.bound}});
    j["omega"] = {{"ell", r.omega->ell}, {"rows", rows}};
  } else {
    j["omega"] = nullptr;
  }
  if (r.shalev) {
    json checks = json::array();
    for (auto [i, ok] : r.shalev->power_checks) checks.push_back({{"i", i}, {"holds", ok}});
    j["shalev"] = {{"applicable", r.shalev->applicable}, {"coclass", r.shalev->coclass}, {"m", r.shalev->m},
                   {"s", r.shalev->s},  {"d", r.shalev->d},  {"uniserial", r.shalev->uniserial},
                   {"power_checks", checks}};
  } else {
    j["shalev"] = nullptr;
  }
  j["skipped"] = r.skipped;
  return j;
}

inline AnalysisReport report_from_json(const nlohmann::json& j) {
  static const std::set<std::string> keys{
      "label",          "prime", "order",          "exponent",    "abelian",  "nilpotency_class",
      "coclass",        "maximal_class", "upper_central_series", "lower_central_series", "eta_series", "eta",
      "powerful_class", "powerful", "potent", "power_surjective", "pf", "omega", "shalev", "skipped"};
  try {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "report must be an object");
    for (const auto& [k, v] : j.items())
      if (!keys.count(k)) throw Error(ErrorKind::ParseError, "unknown report field \"" + k + "\"");
    AnalysisReport r;
    r.label = j.at("label").get<std::string>();
    r.prime = j.at("prime").get<std::uint32_t>();
    r.order = j.at("order").get<PPower>();
    r.exponent = j.at("exponent").get<PPower>();
    r.abelian = j.at("abelian").get<bool>();
    r.nilpotency_class = j.at("nilpotency_class").get<int>();
    r.coclass = j.at("coclass").get<int>();
    r.maximal_class = j.at("maximal_class").get<bool>();
    r.upper_central = j.at("upper_central_series").get<std::vector<PPower>>();
    r.lower_central = j.at("lower_central_series").get<std::vector<PPower>>();
    r.eta_series = j.at("eta_series").get<std::vector<PPower>>();
    r.eta = j.at("eta").get<std::vector<Elem>>();
    r.powerful_class = j.at("powerful_class").get<int>();
    r.powerful = j.at("powerful").get<bool>();
    r.potent = j.at("potent").get<bool>();
    for (const auto& e : j.at("power_surjective")) r.power_surjective.emplace_back(e.at("i").get<int>(), e.at("value").get<bool>());
    if (const auto& pf = j.at("pf"); !pf.is_null())
      r.pf = PfSection{pf.at("is_pf").get<bool>(), pf.at("witness").get<std::vector<std::vector<Elem>>>()};
    if (const auto& om = j.at("omega"); !om.is_null()) {
      OmegaSection s;
      s.ell = om.at("ell").get<int>();
      for (const auto& row : om.at("rows"))
        s.rows.push_back({row.at("i").get<int>(), row.at("order").get<PPower>(), row.at("exponent").get<PPower>(),
                          row.at("bound").get<PPower>()});
      r.omega = std::move(s);
    }
    if (const auto& sh = j.at("shalev"); !sh.is_null()) {
      ShalevSection s;
      s.applicable = sh.at("applicable").get<bool>();
      s.coclass = sh.at("coclass").get<int>();
      s.m = sh.at("m").get<std::uint64_t>();
      s.s = sh.at("s").get<int>();
      s.d = sh.at("d").get<std::uint64_t>();
      s.uniserial = sh.at("uniserial").get<bool>();
      for (const auto& c : sh.at("power_checks")) s.power_checks.emplace_back(c.at("i").get<int>(), c.at("holds").get<bool>());
      r.shalev = std::move(s);
    }
    r.skipped = j.at("skipped").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

namespace detail {

inline std::string show(const PPower& x) { return std::to_string(x.p) + "^" + std::to_string(x.e); }

inline std::string show(const std::vector<PPower>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + show(v[i]);
  return s;
}

}  // namespace detail

inline std::string render_text(const AnalysisReport& r) {
  using detail::show;
  std::ostringstream o;
  auto row = [&](const std::string& k, const std::string& v) {
    o << "  " << k << std::string(k.size() < 22 ? 22 - k.size() : 1, ' ') << v << "\n";
  };
  auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
  o << r.label << "\n";
  row("order", show(r.order));
  row("exponent", show(r.exponent));
  row("abelian", yes(r.abelian));
  row("nilpotency class", std::to_string(r.nilpotency_class));
  row("coclass", std::to_string(r.coclass));
  row("maximal class", yes(r.maximal_class));
  row("upper central series", show(r.upper_central));
  row("lower central series", show(r.lower_central));
  row("upper eta-series", show(r.eta_series));
  row("eta(G)", show(PPower{r.prime, log_p(r.eta.size(), r.prime)}));
  row("powerful class", std::to_string(r.powerful_class));
  row("powerful", yes(r.powerful));
  row("potent", yes(r.potent));
  if (!r.power_surjective.empty()) {
    std::string s;
    for (auto [i, v] : r.power_surjective) s += (s.empty() ? "" : ", ") + ("i=" + std::to_string(i) + ":" + yes(v));
    row("power-surjective", s);
  }
  if (r.pf) row("PF-group", r.pf->is_pf ? "yes (filtration length " + std::to_string(r.pf->witness.size()) + ")" : "no");
  if (r.omega) {
    row("omega ell", std::to_string(r.omega->ell));
    for (const auto& w : r.omega->rows)
      row("Omega_" + std::to_string(w.i), "order " + show(w.order) + ", exponent " + show(w.exponent) + " <= " + show(w.bound));
  }
  if (r.shalev) {
    if (!r.shalev->applicable) {
      row("uniserial check", "not applicable");
    } else {
      row("uniserial check", "m=" + std::to_string(r.shalev->m) + " s=" + std::to_string(r.shalev->s) +
                                 " d=" + std::to_string(r.shalev->d) + " uniserial=" + yes(r.shalev->uniserial));
    }
  }
  if (!r.skipped.empty()) {
    std::string s;
    for (const auto& x : r.skipped) s += (s.empty() ? "" : ", ") + x;
    row("skipped", s);
  }
  return o.str();
}

}  // namespace pgroup
