// Command-line front end: every command prints one JSON report on stdout.
//
//   abba classify A.json
//   abba rankseq A.json
//   abba decide A.json B.json [--construct]
//   abba unitary A.json B.json [--max-word-len 6] [--direct]
//   abba search --family normal --size 3 [--rank 2 | --max-rank 2] [--trials 500]
//   abba catalog list | show NAME [--export DIR]
//
// Exit codes: 0 completed (verdicts live in the payload), 1 internal error,
// 2 invalid input or usage.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "abba/catalog.hpp"
#include "abba/classes.hpp"
#include "abba/errors.hpp"
#include "abba/io.hpp"
#include "abba/linalg.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/search.hpp"
#include "abba/similarity.hpp"
#include "abba/unitary.hpp"

namespace {

using namespace abba;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr const char* kSchemaVersion = "1";

struct GlobalOptions {
  double tol_scale = 1.0;
  std::optional<double> rank_tol;
  std::optional<double> residual_tol;
  std::optional<double> max_condition;
  std::uint64_t seed = 0;
  std::string format = "json";

  TolerancePolicy policy() const {
    TolerancePolicy p = TolerancePolicy{}.scaled(tol_scale);
    if (rank_tol) p.rank_rel_tol = *rank_tol;
    if (residual_tol) p.residual_tol = *residual_tol;
    if (max_condition) p.max_condition = *max_condition;
    p.validate();
    return p;
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result;
  std::vector<std::string> warnings;

  void warn(const std::vector<std::string>& ws) { warnings.insert(warnings.end(), ws.begin(), ws.end()); }

  Json to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["inputs"] = inputs;
    j["result"] = result;
    j["warnings"] = warnings;
    return j;
  }
};

Json tolerance_json(const TolerancePolicy& t) {
  Json j;
  j["rank_rel_tol"] = t.rank_rel_tol;
  j["residual_tol"] = t.residual_tol;
  j["max_condition"] = t.max_condition;
  return j;
}

AnyMatrix load(const std::string& path, Report& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  AnyMatrix m;
  try {
    m = parse_matrix(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  Json entry;
  entry["path"] = path;
  entry["fnv1a64"] = fnv1a_hex(bytes);
  if (!report.inputs.contains("files")) report.inputs["files"] = Json::array();
  report.inputs["files"].push_back(std::move(entry));
  return m;
}

// Brings two inputs onto one backend; an exact operand meeting a float one is rounded.
std::pair<AnyMatrix, AnyMatrix> unify(AnyMatrix a, AnyMatrix b, Report& report) {
  if (a.index() == b.index()) return {std::move(a), std::move(b)};
  report.warnings.push_back("inputs use different scalar backends; the exact operand was rounded to float");
  auto to_float = [](const AnyMatrix& m) -> AnyMatrix {
    return std::visit([](const auto& x) { return Matrix<Complex>(convert<Complex>(x)); }, m);
  };
  return {to_float(a), to_float(b)};
}

void require_square(const AnyMatrix& m, const std::string& what) {
  std::visit(
      [&](const auto& x) {
        if (!x.is_square()) throw DimensionError(what + " must be square, got " + x.shape());
      },
      m);
}

Json cmd_classify(const std::string& path, const GlobalOptions& g, Report& report) {
  const AnyMatrix m = load(path, report);
  require_square(m, "classify input");
  const auto tol = g.policy();
  return std::visit([&](const auto& x) { return to_json(classify(x, tol)); }, m);
}

Json cmd_rankseq(const std::string& path, const GlobalOptions& g, Report& report) {
  const AnyMatrix m = load(path, report);
  require_square(m, "rankseq input");
  const auto tol = g.policy();
  return std::visit(
      [&](const auto& x) {
        const RankSequence seq = rank_sequence(x, tol);
        report.warn(seq.warnings);
        return to_json(seq);
      },
      m);
}

struct DecideOptions {
  std::string a, b;
  bool construct = false;
  int attempts = kDefaultAttempts;
};

template <Scalar T>
Json decide_typed(const Matrix<T>& a, const Matrix<T>& b, const DecideOptions& opt, const GlobalOptions& g,
                  const TolerancePolicy& tol, Report& report) {
  const SimilarityVerdict verdict = decide_product_similarity(a, b, tol);
  report.warn(verdict.warnings);
  Json j;
  j["verdict"] = to_json(verdict);
  j["method"] = nullptr;
  j["certificate"] = nullptr;
  if (!opt.construct) return j;
  if (!verdict.similar) {
    report.warnings.push_back("no certificate: AB and BA are not similar");
    return j;
  }
  const bool hyp_a = is_psd(a, tol) || realpart_psd_same_rank(a, tol);
  if (hyp_a && is_ep(b, tol)) {
    try {
      j["certificate"] = to_json(construct_similarity_psd_ep(a, b, tol));
      j["method"] = "psd-ep-construction";
      return j;
    } catch (const UnsupportedError& e) {
      report.warnings.push_back(std::string("explicit construction unavailable, falling back to search: ") + e.what());
    } catch (const HypothesisError& e) {
      report.warnings.push_back(std::string("explicit construction not applicable: ") + e.what());
    }
  }
  const Matrix<T> ab = a * b;
  const Matrix<T> ba = b * a;
  if (auto cert = find_intertwiner(ab, ba, g.seed, opt.attempts, tol)) {
    j["certificate"] = to_json(*cert);
    j["method"] = "intertwiner-search";
  } else {
    report.warnings.push_back("intertwiner search exhausted " + std::to_string(opt.attempts) +
                              " attempts without an invertible sample");
  }
  return j;
}

Json cmd_decide(const DecideOptions& opt, const GlobalOptions& g, Report& report) {
  AnyMatrix first = load(opt.a, report);
  AnyMatrix second = load(opt.b, report);
  auto [a, b] = unify(std::move(first), std::move(second), report);
  require_square(a, "A");
  require_square(b, "B");
  if (opt.attempts <= 0) throw UsageError("--attempts must be positive");
  report.inputs["construct"] = opt.construct;
  report.inputs["attempts"] = opt.attempts;
  const auto tol = g.policy();
  return std::visit(
      [&](const auto& ma) {
        using M = std::decay_t<decltype(ma)>;
        return decide_typed(ma, std::get<M>(b), opt, g, tol, report);
      },
      a);
}

struct UnitaryOptions {
  std::string a, b;
  std::size_t max_word_len = kDefaultMaxWordLength;
  bool direct = false;
};

template <Scalar T>
Json unitary_typed(const Matrix<T>& a, const Matrix<T>& b, const UnitaryOptions& opt, const TolerancePolicy& tol) {
  const Matrix<T> m1 = opt.direct ? a : Matrix<T>(a * b);
  const Matrix<T> m2 = opt.direct ? b : Matrix<T>(b * a);
  Json j;
  j["compared"] = opt.direct ? "A vs B" : "AB vs BA";
  j["screen"] = to_json(word_trace_screen(m1, m2, opt.max_word_len, tol));
  if (m1.rows() == 2) {
    j["two_by_two_unitarily_similar"] = decide_unitary_2x2(m1, m2, tol);
  } else {
    j["two_by_two_unitarily_similar"] = nullptr;
  }
  j["rank_one_witness"] = nullptr;
  if (!opt.direct) {
    const Matrix<Complex> fa = convert<Complex>(a);
    const Matrix<Complex> fb = convert<Complex>(b);
    if (is_normal(fa, tol) && is_normal(fb, tol)) {
      // Either factor may play the rank-one role since AB ~u BA is symmetric in A and B.
      const bool a_small = rank(fa, tol) <= 1;
      const bool b_small = rank(fb, tol) <= 1;
      if (a_small || b_small) {
        const RankOneResult r = a_small ? rank_one_normal_unitary(fa, fb, tol) : rank_one_normal_unitary(fb, fa, tol);
        Json w;
        w["rank_one_factor"] = a_small ? "A" : "B";
        if (const auto* u = std::get_if<RankOneUnitaryWitness>(&r)) {
          w["kind"] = "unitary";
          w["u"] = to_json(u->u);
          w["residual"] = u->residual;
          w["unitarity_residual"] = u->unitarity_residual;
        } else {
          w["kind"] = "commuting";
          w["residual"] = std::get<Commuting>(r).residual;
        }
        j["rank_one_witness"] = std::move(w);
      }
    }
  }
  return j;
}

Json cmd_unitary(const UnitaryOptions& opt, const GlobalOptions& g, Report& report) {
  AnyMatrix first = load(opt.a, report);
  AnyMatrix second = load(opt.b, report);
  auto [a, b] = unify(std::move(first), std::move(second), report);
  require_square(a, "A");
  require_square(b, "B");
  const bool same = std::visit([&](const auto& x) { return std::visit([&](const auto& y) { return x.rows() == y.rows(); }, b); }, a);
  if (!same) throw DimensionError("A and B must have the same size");
  if (opt.max_word_len == 0 || opt.max_word_len > 12) throw UsageError("--max-word-len must be in 1..12");
  report.inputs["max_word_len"] = opt.max_word_len;
  report.inputs["direct"] = opt.direct;
  const auto tol = g.policy();
  return std::visit(
      [&](const auto& ma) {
        using M = std::decay_t<decltype(ma)>;
        return unitary_typed(ma, std::get<M>(b), opt, tol);
      },
      a);
}

struct SearchOptions {
  std::string family = "normal";
  std::size_t size = 3;
  std::optional<std::size_t> rank;
  std::optional<std::size_t> max_rank;
  std::size_t trials = 500;
  std::string backend = "exact";
};

Json cmd_search(const SearchOptions& opt, const GlobalOptions& g, Report& report) {
  SearchSpec spec;
  try {
    spec.family = parse_family(opt.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.n = opt.size;
  if (opt.rank && opt.max_rank) throw UsageError("--rank and --max-rank are mutually exclusive");
  if (opt.rank) spec.rank = {RankConstraint::Kind::exactly, *opt.rank};
  if (opt.max_rank) spec.rank = {RankConstraint::Kind::at_most, *opt.max_rank};
  spec.trials = opt.trials;
  spec.seed = g.seed;
  if (opt.backend == "exact") {
    spec.backend = Backend::exact;
  } else if (opt.backend == "float") {
    spec.backend = Backend::floating;
  } else {
    throw UsageError("--backend must be exact or float");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json s;
  s["family"] = std::string(to_string(spec.family));
  s["size"] = spec.n;
  s["rank"] = opt.rank ? Json(*opt.rank) : Json(nullptr);
  s["max_rank"] = opt.max_rank ? Json(*opt.max_rank) : Json(nullptr);
  s["trials"] = spec.trials;
  s["seed"] = spec.seed;
  s["backend"] = std::string(to_string(spec.backend));
  report.inputs["spec"] = s;
  const auto findings = search_counterexample(spec, g.policy());
  Json j;
  j["trials"] = spec.trials;
  j["findings"] = to_json(findings);
  return j;
}

struct CatalogOptions {
  std::string name;
  std::string export_dir;
  std::string backend = "exact";
};

Json cmd_catalog_list(Report&) {
  Json arr = Json::array();
  for (const auto& f : catalog()) {
    Json j;
    j["name"] = f.name;
    j["description"] = f.description;
    Json names = Json::array();
    for (const auto& [k, m] : f.matrices) names.push_back(k);
    j["matrices"] = std::move(names);
    j["claims"] = f.claims.size();
    arr.push_back(std::move(j));
  }
  Json out;
  out["fixtures"] = std::move(arr);
  return out;
}

Json cmd_catalog_show(const CatalogOptions& opt, const GlobalOptions& g, Report& report) {
  const auto fixture = find_fixture(opt.name);
  if (!fixture) throw UsageError("unknown fixture '" + opt.name + "'");
  Backend backend;
  if (opt.backend == "exact") {
    backend = Backend::exact;
  } else if (opt.backend == "float") {
    backend = Backend::floating;
  } else {
    throw UsageError("--backend must be exact or float");
  }
  report.inputs["name"] = opt.name;
  report.inputs["backend"] = opt.backend;
  Json j = to_json(*fixture, backend, g.policy());
  if (!opt.export_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(opt.export_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ParseError("cannot create " + dir.string() + ": " + ec.message());
    Json written = Json::array();
    for (const auto& [key, m] : fixture->matrices) {
      const fs::path file = dir / (fixture->name + "-" + key + ".json");
      if (backend == Backend::exact) {
        write_matrix_file(file, m);
      } else {
        write_matrix_file(file, convert<Complex>(m));
      }
      written.push_back(file.string());
    }
    j["exported"] = std::move(written);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide and certify similarity of AB and BA"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol_scale, "Scale factor applied to rank and residual tolerances")
      ->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", g.rank_tol, "Relative singular-value cutoff (default 1e-10)");
  app.add_option("--residual-tol", g.residual_tol, "Accepted relative residual (default 1e-10)");
  app.add_option("--max-condition", g.max_condition, "Largest accepted condition number (default 1e8)");
  app.add_option("--seed", g.seed, "Seed for randomized steps");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json"}));

  std::string single_path;
  auto* classify_cmd = app.add_subcommand("classify", "Structural predicates of a matrix");
  classify_cmd->add_option("matrix", single_path, "Matrix file")->required();
  auto* rankseq_cmd = app.add_subcommand("rankseq", "Rank sequence of a square matrix");
  rankseq_cmd->add_option("matrix", single_path, "Matrix file")->required();

  DecideOptions decide_opt;
  auto* decide_cmd = app.add_subcommand("decide", "Is AB similar to BA?");
  decide_cmd->add_option("a", decide_opt.a, "Matrix file for A")->required();
  decide_cmd->add_option("b", decide_opt.b, "Matrix file for B")->required();
  decide_cmd->add_flag("--construct", decide_opt.construct, "Also produce a similarity certificate");
  decide_cmd->add_option("--attempts", decide_opt.attempts, "Intertwiner sampling budget");

  UnitaryOptions unitary_opt;
  auto* unitary_cmd = app.add_subcommand("unitary", "Word-trace screen for unitary similarity of AB and BA");
  unitary_cmd->add_option("a", unitary_opt.a, "Matrix file for A")->required();
  unitary_cmd->add_option("b", unitary_opt.b, "Matrix file for B")->required();
  unitary_cmd->add_option("--max-word-len", unitary_opt.max_word_len, "Longest word checked");
  unitary_cmd->add_flag("--direct", unitary_opt.direct, "Compare A with B instead of AB with BA");

  SearchOptions search_opt;
  auto* search_cmd = app.add_subcommand("search", "Randomized search for pairs with AB not similar to BA");
  search_cmd->add_option("--family", search_opt.family, "normal, hermitian, psd, ep or zero-one-normal");
  search_cmd->add_option("--size", search_opt.size, "Matrix size n");
  search_cmd->add_option("--rank", search_opt.rank, "rank(A) exactly");
  search_cmd->add_option("--max-rank", search_opt.max_rank, "rank(A) at most");
  search_cmd->add_option("--trials", search_opt.trials, "Number of sampled pairs");
  search_cmd->add_option("--backend", search_opt.backend, "exact or float");

  CatalogOptions catalog_opt;
  auto* catalog_cmd = app.add_subcommand("catalog", "Named example matrices");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "List fixtures");
  auto* show_cmd = catalog_cmd->add_subcommand("show", "Show a fixture and evaluate its claims");
  show_cmd->add_option("name", catalog_opt.name, "Fixture name")->required();
  show_cmd->add_option("--export", catalog_opt.export_dir, "Write the matrices as files into DIR");
  show_cmd->add_option("--backend", catalog_opt.backend, "exact or float");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Report report;
  try {
    Json result;
    if (*classify_cmd) {
      report.command = "classify";
      result = cmd_classify(single_path, g, report);
    } else if (*rankseq_cmd) {
      report.command = "rankseq";
      result = cmd_rankseq(single_path, g, report);
    } else if (*decide_cmd) {
      report.command = "decide";
      result = cmd_decide(decide_opt, g, report);
    } else if (*unitary_cmd) {
      report.command = "unitary";
      result = cmd_unitary(unitary_opt, g, report);
    } else if (*search_cmd) {
      report.command = "search";
      result = cmd_search(search_opt, g, report);
    } else if (*list_cmd) {
      report.command = "catalog list";
      result = cmd_catalog_list(report);
    } else if (*show_cmd) {
      report.command = "catalog show";
      result = cmd_catalog_show(catalog_opt, g, report);
    }
    report.inputs["seed"] = g.seed;
    report.inputs["tolerance"] = tolerance_json(g.policy());
    report.result = std::move(result);
    std::cout << report.to_json().dump(2) << '\n';
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
