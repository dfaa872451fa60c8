// Command-line front end: analyze, verify, series, catalog.
//
// Exit codes: 0 success, 1 property failure, 2 malformed input,
// 3 normal-subgroup budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgroup/pgroup.hpp"

namespace {

using namespace pgroup;

constexpr int kExitOk = 0;
constexpr int kExitProperty = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded: return kExitBudget;
    case ErrorKind::TheoremViolated:
    case ErrorKind::ValidationFailed:
    case ErrorKind::GreedyOracleMismatch:
    case ErrorKind::NoValidS:
    case ErrorKind::NotAnEtaSeries: return kExitProperty;
    default: return kExitInput;
  }
}

struct GroupSource {
  std::string file;
  std::string catalog;
  int prime = 0;  // 0: the entry's default
  std::vector<std::string> params;

  void attach(CLI::App* cmd) {
    cmd->add_option("file", file, "pgroup-v1 definition file");
    cmd->add_option("--catalog", catalog, "catalog entry name");
    cmd->add_option("--prime", prime, "prime for a catalog entry");
    cmd->add_option("--param", params, "catalog parameter key=value (lists as 2,1)");
  }

  CatalogRef ref() const {
    CatalogRef r{catalog, {}};
    r.params["prime"] = {prime ? prime : static_cast<int>(catalog_default_prime(catalog))};
    for (const auto& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ParseError, "parameter \"" + kv + "\" is not key=value");
      std::vector<int> vals;
      std::stringstream ss(kv.substr(eq + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          vals.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "parameter \"" + kv + "\" has a non-integer value");
        }
      }
      if (vals.empty()) throw Error(ErrorKind::ParseError, "parameter \"" + kv + "\" has no value");
      r.params[kv.substr(0, eq)] = vals;
    }
    return r;
  }

  FiniteGroup build() const {
    if (file.empty() == catalog.empty()) throw Error(ErrorKind::ParseError, "give exactly one of FILE or --catalog");
    if (!catalog.empty()) return ref().build();
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    return build_definition(parse_definition(buf.str()));
  }
};

void print_series(const SubgroupSeries& s, const std::string& type, bool json) {
  const std::uint32_t p = s.terms.front().group().prime();
  if (json) {
    Json terms = Json::array();
    for (const auto& t : s.terms) {
      std::vector<Elem> gens(t.generators().begin(), t.generators().end());
      terms.push_back({{"order", PPower{p, t.log_order()}}, {"generators", gens}});
    }
    std::cout << dump_canonical({{"type", type}, {"terms", terms}});
    return;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& t = s.terms[i];
    std::cout << i << "  " << p << "^" << t.log_order() << "  <";
    for (std::size_t k = 0; k < t.generators().size(); ++k) std::cout << (k ? ", " : "") << t.generators()[k];
    std::cout << ">\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Powerful class, eta-series and potent filtrations of finite p-groups"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::uint64_t max_order = 729;
  std::size_t budget = kDefaultNormalBudget;
  std::uint64_t seed = VerifyOptions{}.seed;
  app.add_flag("--json", json, "machine-readable output");
  app.add_option("--max-order", max_order, "largest catalog group order for verify")->capture_default_str();
  app.add_option("--budget", budget, "cap on the number of normal subgroups")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  GroupSource analyze_src;
  std::vector<std::string> skip;
  auto* analyze_cmd = app.add_subcommand("analyze", "report every invariant of one group");
  analyze_src.attach(analyze_cmd);
  analyze_cmd->add_option("--skip", skip, "omit a section: pf, omega, shalev, power");

  std::string suite;
  bool extended = false;
  std::string data_dir;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites over the catalog");
  verify_cmd->add_option("suite", suite, "eta-lemmas | small-pwc | omega | coclass | catalog-regression | all")
      ->required();
  verify_cmd->add_flag("--extended", extended, "include the order 3^7 and 5^5 catalog groups");
  verify_cmd->add_option("--data-dir", data_dir, "directory holding catalog.json");

  GroupSource series_src;
  std::string series_type = "eta";
  auto* series_cmd = app.add_subcommand("series", "list a subgroup series");
  series_src.attach(series_cmd);
  series_cmd->add_option("--type", series_type, "eta | upper-central | lower-central")
      ->check(CLI::IsMember({"eta", "upper-central", "lower-central"}));

  auto* catalog_cmd = app.add_subcommand("catalog", "built-in groups");
  catalog_cmd->require_subcommand(1);
  catalog_cmd->add_subcommand("list", "list entries");
  GroupSource get_src;
  std::string out_file;
  auto* get_cmd = catalog_cmd->add_subcommand("get", "emit a pgroup-v1 definition");
  get_cmd->add_option("name", get_src.catalog, "entry name")->required();
  get_cmd->add_option("--prime", get_src.prime, "prime");
  get_cmd->add_option("--param", get_src.params, "parameter key=value");
  get_cmd->add_option("-o,--output", out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze_cmd) {
      AnalysisOptions opt;
      opt.budget = budget;
      opt.skip.insert(skip.begin(), skip.end());
      AnalysisReport r = analyze(analyze_src.build(), opt);
      std::cout << (json ? dump_canonical(to_json(r)) : render_text(r));
      return kExitOk;
    }
    if (*verify_cmd) {
      VerifyOptions opt;
      opt.max_order = max_order;
      opt.extended = extended;
      opt.seed = seed;
      opt.budget = budget;
      opt.data_dir = data_dir;
      auto results = run_verify(suite, opt);
      std::cout << (json ? dump_canonical(results_json(results)) : results_text(results));
      return all_passed(results) ? kExitOk : kExitProperty;
    }
    if (*series_cmd) {
      FiniteGroup G = series_src.build();
      SubgroupSeries s = series_type == "eta"             ? upper_eta_series(G, budget).series
                         : series_type == "upper-central" ? upper_central_series(G)
                                                          : lower_central_series(G);
      print_series(s, series_type, json);
      return kExitOk;
    }
    if (*catalog_cmd) {
      if (*get_cmd) {
        CatalogRef ref = get_src.ref();
        ref.build();  // validates name and parameters
        std::string text = dump_canonical(definition_to_json(catalog_definition(ref)));
        if (out_file.empty()) {
          std::cout << text;
        } else {
          std::ofstream out(out_file);
          if (!out) throw Error(ErrorKind::ParseError, "cannot write " + out_file);
          out << text;
        }
        return kExitOk;
      }
      if (json) {
        Json a = Json::array();
        for (const auto& e : catalog_entries())
          a.push_back({{"name", e.name}, {"description", e.description}, {"params", e.params},
                       {"default_prime", catalog_default_prime(e.name)}});
        std::cout << dump_canonical(a);
      } else {
        for (const auto& e : catalog_entries()) {
          std::string ps = "prime";
          for (const auto& k : e.params) ps += "," + k;
          std::cout << e.name << std::string(e.name.size() < 20 ? 20 - e.name.size() : 1, ' ') << "[" << ps << "]  "
                    << e.description << "\n";
        }
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
