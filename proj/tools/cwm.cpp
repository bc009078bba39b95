// Command-line front end: entailment queries, classification, preferred
// types, normal-form dumps and the engine/oracle fuzzing harness.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "cwm/entailment.hpp"
#include "cwm/errors.hpp"
#include "cwm/generator.hpp"
#include "cwm/json_io.hpp"
#include "cwm/normalize.hpp"
#include "cwm/oracle.hpp"
#include "cwm/parser.hpp"

namespace {

constexpr int kExitEntailed = 0;
constexpr int kExitNotEntailed = 1;
constexpr int kExitError = 2;

struct CliError {
  std::string message;
};

cwm::KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{"cannot open KB file '" + path + "'"};
  std::stringstream buf;
  buf << in.rdbuf();
  cwm::ParseResult r = cwm::parse_kb(buf.str());
  if (!r.ok()) {
    std::string msg = path + ": KB has errors";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.to_string();
    throw CliError{msg};
  }
  return std::move(*r.kb);
}

cwm::Query load_query(const std::string& text) {
  cwm::QueryParseResult r = cwm::parse_query(text);
  if (!r.ok())
    throw CliError{"bad query '" + text + "': " +
                   r.diagnostics.front().to_string()};
  return *r.query;
}

unsigned resolve_threads() {
  if (const char* env = std::getenv("CWM_THREADS")) {
    long v = std::atol(env);
    if (v > 0) return (unsigned)v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

int run_entails(const std::string& kb_path, const std::string& query_text,
                bool json, bool check_oracle, std::uint64_t budget) {
  cwm::KnowledgeBase kb = load_kb(kb_path);
  cwm::Query q = load_query(query_text);
  cwm::DecideOptions opts;
  opts.candidate_budget = budget;
  cwm::EntailmentVerdict v = cwm::decide_entailment(kb, q, opts);
  if (check_oracle) {
    cwm::ComparableVerdict ours = cwm::comparable(v);
    cwm::ComparableVerdict ref = cwm::comparable(cwm::oracle_decide(kb, q));
    if (!(ours == ref))
      throw CliError{"engine/oracle disagreement: engine " + ours.to_string() +
                     " vs oracle " + ref.to_string()};
    std::cerr << "oracle agrees\n";
  }
  if (json)
    std::cout << cwm::verdict_to_json(v, true) << '\n';
  else
    std::cout << cwm::explain(v);
  return v.entailed ? kExitEntailed : kExitNotEntailed;
}

int run_classify(const std::string& kb_path, bool json) {
  cwm::KnowledgeBase kb = load_kb(kb_path);
  auto compiled = cwm::CompiledKB::compile(cwm::normalize_kb(kb));
  cwm::StrictClassifier classifier(compiled);
  std::vector<std::string> lines;
  for (const auto& a : kb.signature.concepts) {
    cwm::ClassId ca = compiled->class_id(a);
    if (classifier.unsatisfiable(ca)) lines.push_back(a + " <= Bot");
    for (const auto& b : kb.signature.concepts) {
      if (a == b) continue;
      if (classifier.subsumes(ca, compiled->class_id(b)))
        lines.push_back(a + " <= " + b);
    }
  }
  std::sort(lines.begin(), lines.end());
  if (json) {
    std::cout << "{\"schema\":1,\"subsumptions\":[";
    for (std::size_t i = 0; i < lines.size(); ++i)
      std::cout << (i ? "," : "") << '"' << lines[i] << '"';
    std::cout << "]}\n";
  } else {
    for (const auto& l : lines) std::cout << l << '\n';
  }
  return kExitEntailed;
}

int run_types(const std::string& kb_path, const std::string& subject_text,
              bool json, std::uint64_t budget) {
  cwm::KnowledgeBase kb = load_kb(kb_path);
  cwm::ConceptParseResult c = cwm::parse_concept(subject_text);
  if (!c.ok())
    throw CliError{"bad subject concept '" + subject_text + "': " +
                   c.diagnostics.front().to_string()};
  // The preferred types for a subject are the preferred types of any query
  // on it; Top as the object decides nothing and keeps the run cheap.
  cwm::Query q{*c.concept_expr, cwm::ConceptExpr::top(), true};
  cwm::DecideOptions opts;
  opts.candidate_budget = budget;
  cwm::EntailmentVerdict v = cwm::decide_entailment(kb, q, opts);
  if (json) {
    std::cout << cwm::verdict_to_json(v, true) << '\n';
    return kExitEntailed;
  }
  if (v.vacuous) {
    std::cout << "subject " << subject_text
              << " has no consistent type (unsatisfiable)\n";
    return kExitEntailed;
  }
  std::cout << "candidates: " << v.candidate_count
            << ", preferred: " << v.preferred.size() << '\n';
  const auto& src = v.kb->source();
  for (const auto& t : v.preferred) {
    std::cout << "type {";
    bool first = true;
    std::set<std::string> names;
    t.concepts.for_each(
        [&](cwm::ClassId cid) { names.insert(v.kb->display_name(cid)); });
    for (const auto& n : names) {
      std::cout << (first ? "" : ", ") << n;
      first = false;
    }
    std::cout << "}  weights:";
    for (std::size_t i = 0; i < src.distinguished.size(); ++i)
      std::cout << ' ' << src.distinguished[i] << '='
                << t.weights[i].to_string();
    std::cout << '\n';
  }
  return kExitEntailed;
}

int run_normalize(const std::string& kb_path) {
  cwm::KnowledgeBase kb = load_kb(kb_path);
  std::cout << cwm::render_normalized(cwm::normalize_kb(kb));
  return kExitEntailed;
}

// ---- fuzz mode ------------------------------------------------------------

struct FuzzCase {
  bool ran = false;
  bool error = false;
  bool disagreed = false;
  std::string detail;
};

FuzzCase run_fuzz_case(std::uint64_t kb_seed, std::uint64_t budget) {
  FuzzCase out;
  out.ran = true;
  cwm::KnowledgeBase kb = cwm::gen_random_kb(kb_seed);
  cwm::Query q = cwm::gen_random_query(kb_seed * 7919 + 13, kb);
  try {
    cwm::DecideOptions opts;
    opts.candidate_budget = budget;
    cwm::ComparableVerdict engine =
        cwm::comparable(cwm::decide_entailment(kb, q, opts));
    cwm::ComparableVerdict oracle = cwm::comparable(cwm::oracle_decide(kb, q));
    if (!(engine == oracle)) {
      out.disagreed = true;
      out.detail = "engine " + engine.to_string() + " vs oracle " +
                   oracle.to_string();
    }
  } catch (const std::exception& e) {
    out.error = true;
    out.detail = e.what();
  }
  return out;
}

bool still_disagrees(const cwm::KnowledgeBase& kb, const cwm::Query& q,
                     std::uint64_t budget) {
  try {
    cwm::DecideOptions opts;
    opts.candidate_budget = budget;
    return !(cwm::comparable(cwm::decide_entailment(kb, q, opts)) ==
             cwm::comparable(cwm::oracle_decide(kb, q)));
  } catch (const std::exception&) {
    return false;
  }
}

cwm::KnowledgeBase minimize_reproducer(cwm::KnowledgeBase kb,
                                       const cwm::Query& q,
                                       std::uint64_t budget) {
  return cwm::shrink_kb(std::move(kb), [&](const cwm::KnowledgeBase& smaller) {
    return still_disagrees(smaller, q, budget);
  });
}

int run_fuzz(std::uint64_t n, std::uint64_t seed, std::uint64_t budget) {
  std::vector<FuzzCase> results(n);
  std::atomic<std::uint64_t> next{0};
  unsigned workers =
      (unsigned)std::min<std::uint64_t>(n ? n : 1, resolve_threads());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::uint64_t i = next.fetch_add(1);
        if (i >= n) return;
        results[i] = run_fuzz_case(seed + i, budget);
      }
    });
  for (auto& t : pool) t.join();

  // Deterministic aggregation by case index.
  for (std::uint64_t i = 0; i < n; ++i) {
    if (results[i].error)
      throw CliError{"fuzz case " + std::to_string(i) + " (seed " +
                     std::to_string(seed + i) +
                     ") failed: " + results[i].detail};
    if (!results[i].disagreed) continue;

    std::uint64_t kb_seed = seed + i;
    cwm::KnowledgeBase kb = cwm::gen_random_kb(kb_seed);
    cwm::Query q = cwm::gen_random_query(kb_seed * 7919 + 13, kb);
    cwm::KnowledgeBase minimized = minimize_reproducer(kb, q, budget);
    std::string path = "cwm-fuzz-repro.kb";
    std::ofstream out(path);
    out << "# engine/oracle disagreement, seed " << kb_seed << '\n';
    out << "# query: " << q.to_string() << '\n';
    out << "# " << results[i].detail << '\n';
    out << cwm::render_kb(minimized);
    std::cerr << "disagreement at case " << i << " (seed " << kb_seed
              << "): " << results[i].detail << '\n'
              << "minimized reproducer written to " << path << '\n';
    return kExitNotEntailed;
  }
  std::cout << n << " cases, engine and oracle agree on all\n";
  return kExitEntailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cwm: entailment for weighted defeasible EL-bottom knowledge bases "
      "under concept-wise multipreference semantics"};
  app.require_subcommand(1);

  std::string kb_path, query_text;
  bool json = false, check_oracle = false;
  std::uint64_t budget = cwm::DecideOptions{}.candidate_budget;
  std::uint64_t fuzz_n = 100, fuzz_seed = 1;

  auto* entails = app.add_subcommand(
      "entails", "decide a typicality or strict subsumption query");
  entails->add_option("--kb", kb_path, "KB file")->required();
  entails->add_option("--query", query_text,
                      "query, e.g. \"T(Emp) <= Young\" or \"A <= B\"")
      ->required();
  entails->add_flag("--json", json, "emit the result as JSON");
  entails->add_flag("--oracle", check_oracle,
                    "cross-check against the brute-force oracle");
  entails->add_option("--budget", budget, "candidate saturation budget");

  auto* classify =
      app.add_subcommand("classify", "print all strict subsumptions");
  classify->add_option("--kb", kb_path, "KB file")->required();
  classify->add_flag("--json", json, "emit the result as JSON");

  auto* types = app.add_subcommand(
      "types", "print the preferred candidate types for a subject concept");
  types->add_option("--kb", kb_path, "KB file")->required();
  types->add_option("--query", query_text, "subject concept, e.g. \"Emp\"")
      ->required();
  types->add_flag("--json", json, "emit the result as JSON");
  types->add_option("--budget", budget, "candidate saturation budget");

  auto* normalize =
      app.add_subcommand("normalize", "print the KB in normal form");
  normalize->add_option("--kb", kb_path, "KB file")->required();

  auto* fuzz = app.add_subcommand(
      "fuzz", "random differential testing of engine vs oracle");
  fuzz->add_option("--n", fuzz_n, "number of cases");
  fuzz->add_option("--seed", fuzz_seed, "base seed");
  fuzz->add_option("--budget", budget, "candidate saturation budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (entails->parsed())
      return run_entails(kb_path, query_text, json, check_oracle, budget);
    if (classify->parsed()) return run_classify(kb_path, json);
    if (types->parsed()) return run_types(kb_path, query_text, json, budget);
    if (normalize->parsed()) return run_normalize(kb_path);
    if (fuzz->parsed()) return run_fuzz(fuzz_n, fuzz_seed, budget);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
