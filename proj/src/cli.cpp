#include "segal/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "segal/adjunction.hpp"
#include "segal/checkers.hpp"
#include "segal/corpus.hpp"
#include "segal/document.hpp"
#include "segal/homology.hpp"
#include "segal/iso.hpp"
#include "segal/nerve.hpp"
#include "segal/presheaf.hpp"
#include "segal/segal_space.hpp"

#ifndef SEGAL_DATA_DIR
#define SEGAL_DATA_DIR "."
#endif

namespace segal {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  bool timing = false;
  std::string input;
  std::optional<int> max_dim;
  int bound = 3;
  std::string strategy = "iso";
  std::string family = "boundaries";
  std::string suite;
  int jobs = 1;
  std::string name;
  std::vector<std::string> args;
};

struct Entry {
  std::string item;
  std::string check;
  Verdict verdict;
};

int int_arg(const std::string& s, const char* what, int lo, int hi) {
  int v = 0;
  std::istringstream in(s);
  if (!(in >> v) || !in.eof() || v < lo || v > hi)
    throw UsageError(std::string("bad ") + what + " '" + s + "' (expected " + std::to_string(lo) + ".." + std::to_string(hi) + ")");
  return v;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A path, the path with ".segal" appended, or a shipped document name.
std::filesystem::path resolve(const std::string& name) {
  namespace fs = std::filesystem;
  for (const fs::path& p : {fs::path(name), fs::path(name + ".segal"), fs::path(SEGAL_DATA_DIR) / name, fs::path(SEGAL_DATA_DIR) / (name + ".segal")})
    if (fs::is_regular_file(p)) return p;
  throw UsageError("cannot find input '" + name + "'");
}

Document load(const std::string& name) {
  const auto path = resolve(name);
  try {
    return parse_document(read_file(path));
  } catch (const ParseError& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

FiniteCategory category_arg(const std::string& name) {
  for (const auto& nc : named_categories())
    if (nc.name == name) return nc.category;
  const Document d = load(name);
  if (d.kind != DocumentKind::category) throw UsageError("'" + name + "' is not a category");
  return *d.category;
}

std::string ref_str(const SimplexRef& r) {
  std::string s = std::to_string(r.cell.dim) + "." + std::to_string(r.cell.index);
  if (r.degeneracy) {
    s += "@";
    bool first = true;
    for (int j : r.word()) {
      s += (first ? "" : ",") + std::to_string(j);
      first = false;
    }
  }
  return s;
}

std::string certificate(const Verdict& v) {
  if (v.lift) {
    std::string s = "lift";
    const SimplicialMap& l = *v.lift;
    for (int n = 0; n <= l.source()->dimension(); ++n)
      for (int k = 0; k < l.source()->cell_count(n); ++k) s += " " + std::to_string(n) + "." + std::to_string(k) + "->" + ref_str(l.image({n, k}));
    return s;
  }
  if (v.counterexample) {
    const LiftingProblem& p = *v.counterexample;
    const SimplicialSet& a = *p.i.source();
    std::string s = "counterexample: no lift of the square with top";
    for (int n = 0; n <= a.dimension(); ++n)
      for (int k = 0; k < a.cell_count(n); ++k) s += " " + std::to_string(n) + "." + std::to_string(k) + "->" + ref_str(p.top.image({n, k}));
    return s;
  }
  return {};
}

int exit_status(const std::vector<Entry>& entries) {
  bool unknown = false;
  for (const Entry& e : entries) {
    if (e.verdict.status == Status::fails) return exit_fails;
    if (e.verdict.status == Status::unknown) unknown = true;
  }
  return unknown ? exit_unknown : exit_holds;
}

void emit_report(std::ostream& out, const Options& o, const std::string& command, const std::vector<Entry>& entries, std::optional<double> ms) {
  const int status = exit_status(entries);
  if (o.format == "machine") {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["command"] = command;
    j["results"] = nlohmann::ordered_json::array();
    for (const Entry& e : entries) {
      nlohmann::ordered_json r;
      if (!e.item.empty()) r["item"] = e.item;
      r["check"] = e.check;
      r["status"] = to_string(e.verdict.status);
      r["strategy"] = e.verdict.strategy;
      r["bound"] = e.verdict.bound;
      r["detail"] = e.verdict.detail;
      if (const std::string c = certificate(e.verdict); !c.empty()) r["certificate"] = c;
      j["results"].push_back(std::move(r));
    }
    j["exit_status"] = status;
    if (ms) j["timing_ms"] = *ms;
    out << j.dump(2) << "\n";
    return;
  }
  out << "command: " << command << "\n";
  for (const Entry& e : entries) {
    out << (e.item.empty() ? "" : e.item + " ") << e.check << ": " << to_string(e.verdict.status) << "\n";
    if (!e.verdict.strategy.empty()) out << "  strategy: " << e.verdict.strategy << "\n";
    out << "  bound: " << e.verdict.bound << "\n";
    if (!e.verdict.detail.empty()) out << "  detail: " << e.verdict.detail << "\n";
    if (const std::string c = certificate(e.verdict); !c.empty()) out << "  certificate: " << c << "\n";
  }
  if (ms) out << "timing: " << *ms << " ms\n";
  out << "status: " << status << "\n";
}

void emit_document(std::ostream& out, const Options& o, const std::string& command, DocumentKind kind, const std::string& text) {
  if (o.format == "machine") {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["command"] = command;
    j["kind"] = to_string(kind);
    j["document"] = text;
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
}

// build

Document build(const Options& o) {
  const auto& a = o.args;
  auto need = [&](std::size_t n, const char* usage) {
    if (a.size() != n) throw UsageError(std::string("usage: build ") + o.name + " " + usage);
  };
  Document d;
  d.kind = DocumentKind::simplicial;
  if (o.name == "simplex" || o.name == "boundary") {
    need(1, "N");
    const int n = int_arg(a[0], "dimension", o.name == "simplex" ? 0 : 1, 10);
    d.simplicial = share(o.name == "simplex" ? standard(n) : boundary(n));
  } else if (o.name == "horn") {
    need(2, "N K");
    const int n = int_arg(a[0], "dimension", 1, 10);
    d.simplicial = share(horn(n, int_arg(a[1], "horn index", 0, n)));
  } else if (o.name == "F" || o.name == "G" || o.name == "I") {
    need(1, "N");
    const int n = int_arg(a[0], "dimension", o.name == "G" ? 1 : 0, 8);
    d.kind = DocumentKind::bisimplicial;
    d.bisimplicial = o.name == "F" ? share(generator_F(n)) : o.name == "G" ? generator_G(n).object : generator_I(n).object;
  } else if (o.name == "nerve") {
    need(2, "CATEGORY N");
    d.simplicial = nerve(category_arg(a[0]), int_arg(a[1], "truncation", 0, 8)).object;
  } else if (o.name == "chaotic") {
    need(2, "N M");
    d.simplicial = nerve(chaotic_groupoid(int_arg(a[0], "object bound", 0, 6)), int_arg(a[1], "truncation", 0, 8)).object;
  } else if (o.name == "disc") {
    need(2, "CATEGORY N");
    d.kind = DocumentKind::bisimplicial;
    d.bisimplicial = share(disc_nerve(category_arg(a[0]), int_arg(a[1], "truncation", 0, 8)));
  } else if (o.name == "category") {
    need(1, "NAME");
    d.kind = DocumentKind::category;
    d.category = std::make_shared<const FiniteCategory>(category_arg(a[0]));
  }
  return d;
}

// apply

int need_max_dim(const Options& o) {
  if (!o.max_dim) throw UsageError("apply " + o.name + " needs --max-dim");
  return *o.max_dim;
}

[[noreturn]] void wrong_kind(const Options& o, const Document& d) {
  throw UsageError(o.name + " does not accept a " + to_string(d.kind) + " document");
}

SSetPtr as_simplicial(const Options& o, const Document& d, int nerve_dim) {
  if (d.kind == DocumentKind::simplicial) return d.simplicial;
  if (d.kind == DocumentKind::category) return nerve(*d.category, nerve_dim).object;
  wrong_kind(o, d);
}

BSetPtr as_bisimplicial(const Options& o, const Document& d) {
  if (d.kind != DocumentKind::bisimplicial) wrong_kind(o, d);
  return d.bisimplicial;
}

Document apply(const Options& o, const Document& in) {
  Document d;
  d.kind = DocumentKind::simplicial;
  if (o.name == "k-shriek") {
    d.simplicial = k_shriek(as_simplicial(o, in, need_max_dim(o)), need_max_dim(o)).value;
  } else if (o.name == "k-upper") {
    const int n = need_max_dim(o);
    d.simplicial = in.kind == DocumentKind::category ? k_upper(nerve(*in.category, n), n).value : k_upper(as_simplicial(o, in, n), n).value;
  } else if (o.name == "t-shriek") {
    d.simplicial = t_shriek(as_bisimplicial(o, in), need_max_dim(o)).value;
  } else if (o.name == "t-upper") {
    const int n = need_max_dim(o);
    d.kind = DocumentKind::bisimplicial;
    d.bisimplicial = in.kind == DocumentKind::category ? t_upper(nerve(*in.category, n), n, n) : t_upper(as_simplicial(o, in, n), n, n);
  } else if (o.name == "core-J") {
    d.simplicial = core_J(as_simplicial(o, in, o.max_dim.value_or(o.bound + 1)), o.bound).object;
  } else if (o.name == "diagonal") {
    d.simplicial = share(diagonal(*as_bisimplicial(o, in)));
  }
  return d;
}

std::vector<std::string> homology_lines(const SimplicialSet& x) {
  std::vector<std::string> out;
  const auto groups = homology(x);
  for (std::size_t k = 0; k < groups.size(); ++k) out.push_back("H_" + std::to_string(k) + " = " + groups[k].str());
  return out;
}

// check

std::vector<NamedInclusion> family(const Options& o) {
  if (o.family == "horns") return horn_inclusions(o.bound, false);
  if (o.family == "inner-horns") return horn_inclusions(o.bound, true);
  return boundary_inclusions(o.bound);
}

Verdict check(const Options& o, const Document& in) {
  if (o.name == "kan" || o.name == "qcat") {
    if (in.kind == DocumentKind::category) {
      const Nerve n = nerve(*in.category, o.bound + 1);
      return o.name == "kan" ? is_kan(n, o.bound) : is_quasi_category(n, o.bound);
    }
    const SSetPtr x = as_simplicial(o, in, 0);
    return o.name == "kan" ? is_kan(x, o.bound) : is_quasi_category(x, o.bound);
  }
  if (o.name == "triv-fib" || o.name == "lifting") {
    const SSetPtr x = as_simplicial(o, in, o.bound + 1);
    const SimplicialMap f = to_point(x, share(point()));
    return o.name == "triv-fib" ? is_trivial_fibration(f, o.bound) : has_rlp(f, family(o), o.bound);
  }
  if (o.name == "segal") return check_segal(as_bisimplicial(o, in), strategy_from_string(o.strategy), o.bound);
  if (o.name == "complete") return check_complete(as_bisimplicial(o, in), o.bound, strategy_from_string(o.strategy));
  // adiagram
  const BSetPtr x = as_bisimplicial(o, in);
  const int n = o.max_dim.value_or(o.bound);
  const ADiagramReport r = check_adiagram(adiagram_from_bisimplicial(*x, n));
  Verdict v;
  v.status = r.ok ? Status::holds : Status::fails;
  v.strategy = "exhaustive";
  v.bound = n;
  if (r.ok) {
    v.detail = "every axiom holds over Delta_{<=" + std::to_string(n) + "}";
  } else {
    v.detail = r.axiom + " fails at";
    for (int w : r.witness) v.detail += " " + std::to_string(w);
    if (!r.detail.empty()) v.detail += ": " + r.detail;
  }
  return v;
}

// corpus

struct Task {
  std::string item;
  std::string check;
  std::function<Verdict()> run;
};

std::vector<Task> suite_tasks(const std::string& suite) {
  std::vector<Task> tasks;
  const bool all = suite == "all";
  if (all || suite == "simplicial")
    for (const auto& nc : simplicial_corpus()) {
      tasks.push_back({nc.name, "kan", [x = nc.object] { return is_kan(x, 3); }});
      tasks.push_back({nc.name, "qcat", [x = nc.object] { return is_quasi_category(x, 3); }});
    }
  if (all || suite == "bisimplicial")
    for (const auto& nb : bisimplicial_corpus()) {
      tasks.push_back({nb.name, "segal", [x = nb.object] { return check_segal(x, Strategy::iso, 2); }});
      tasks.push_back({nb.name, "complete", [x = nb.object] { return check_complete(x, 2); }});
    }
  if (all || suite == "categories")
    for (const auto& nc : named_categories()) {
      auto n = std::make_shared<const Nerve>(nerve(nc.category, 4));
      tasks.push_back({nc.name, "kan", [n] { return is_kan(*n, 3); }});
      tasks.push_back({nc.name, "qcat", [n] { return is_quasi_category(*n, 3); }});
      tasks.push_back({nc.name, "core-J", [n, c = nc.category] {
                         Verdict v;
                         v.strategy = "iso";
                         v.bound = 3;
                         const SSetPtr j = core_J(skeleton(n->object, 3).object).object;
                         const bool iso = isomorphic(*j, *nerve(iso_subcategory(c), 3).object);
                         v.status = iso ? Status::holds : Status::fails;
                         v.detail = iso ? "J(BC) is isomorphic to B(Iso C) through dimension 3" : "J(BC) and B(Iso C) differ";
                         return v;
                       }});
    }
  if (tasks.empty()) throw UsageError("unknown suite '" + suite + "' (simplicial, bisimplicial, categories, all)");
  return tasks;
}

std::vector<Entry> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<Entry> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Verdict v;
      try {
        v = tasks[i].run();
      } catch (const std::exception& e) {
        v.status = Status::unknown;
        v.detail = std::string("error: ") + e.what();
      }
      out[i] = {tasks[i].item, tasks[i].check, std::move(v)};
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

void common_flags(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app->add_flag("--timing", o.timing, "report wall-clock time");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite models of simplicial, bisimplicial and presheaf constructions", "segal_cli"};
  app.require_subcommand(1);

  auto* build_cmd = app.add_subcommand("build", "emit a document for a standard object");
  build_cmd->add_option("shape", o.name, "simplex, boundary, horn, F, G, I, nerve, chaotic, disc or category")
      ->required()
      ->check(CLI::IsMember({"simplex", "boundary", "horn", "F", "G", "I", "nerve", "chaotic", "disc", "category"}));
  build_cmd->add_option("args", o.args, "shape parameters");
  common_flags(build_cmd, o);

  auto* apply_cmd = app.add_subcommand("apply", "apply a functor to a document");
  apply_cmd->add_option("functor", o.name)->required()->check(CLI::IsMember({"k-shriek", "k-upper", "t-shriek", "t-upper", "core-J", "diagonal", "homology"}));
  apply_cmd->add_option("--input", o.input, "document path or shipped name")->required();
  apply_cmd->add_option("--max-dim", o.max_dim, "truncation bound N");
  apply_cmd->add_option("--bound", o.bound, "precheck bound for core-J")->check(CLI::Range(0, 6));
  common_flags(apply_cmd, o);

  auto* check_cmd = app.add_subcommand("check", "run a checker on a document");
  check_cmd->add_option("checker", o.name)->required()->check(CLI::IsMember({"kan", "qcat", "triv-fib", "segal", "complete", "lifting", "adiagram"}));
  check_cmd->add_option("--input", o.input, "document path or shipped name")->required();
  check_cmd->add_option("--strategy", o.strategy, "iso, rlp, homology or homotopy")->check(CLI::IsMember({"iso", "rlp", "homology", "homotopy"}));
  check_cmd->add_option("--bound", o.bound, "dimension bound")->check(CLI::Range(0, 6));
  check_cmd->add_option("--max-dim", o.max_dim, "truncation for adiagram");
  check_cmd->add_option("--family", o.family, "lifting family")->check(CLI::IsMember({"horns", "inner-horns", "boundaries"}));
  common_flags(check_cmd, o);

  auto* corpus_cmd = app.add_subcommand("corpus", "corpus runs");
  corpus_cmd->require_subcommand(1);
  auto* run_cmd = corpus_cmd->add_subcommand("run", "run a suite");
  run_cmd->add_option("--suite", o.suite, "simplicial, bisimplicial, categories or all")->required();
  run_cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 64));
  common_flags(run_cmd, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_holds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (o.max_dim && (*o.max_dim < 0 || *o.max_dim > 8)) {
    err << "error: --max-dim must lie in 0..8\n";
    return exit_usage;
  }

  const std::string command = join(args);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&]() -> std::optional<double> {
    if (!o.timing) return std::nullopt;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    if (*build_cmd) {
      const Document d = build(o);
      emit_document(out, o, command, d.kind, serialize(d));
      return exit_holds;
    }
    if (*apply_cmd) {
      const Document in = load(o.input);
      if (in.kind == DocumentKind::presheaf) {
        if (o.name == "t-shriek" || o.name == "t-upper" || o.name == "diagonal") wrong_kind(o, in);
        const int param = o.name == "homology" || o.name == "core-J" ? o.bound : need_max_dim(o);
        const SectionwiseResult r = sectionwise_apply(o.name, *in.presheaf, param);
        if (!r.natural) throw std::invalid_argument("sectionwise " + o.name + " is not natural: " + r.detail);
        if (r.presheaf) {
          emit_document(out, o, command, DocumentKind::presheaf, serialize(*r.presheaf));
        } else if (o.format == "machine") {
          nlohmann::ordered_json j;
          j["version"] = 1;
          j["command"] = command;
          j["sections"] = r.report;
          out << j.dump(2) << "\n";
        } else {
          for (const auto& l : r.report) out << l << "\n";
        }
        return exit_holds;
      }
      if (o.name == "homology") {
        SSetPtr x;
        if (in.kind == DocumentKind::category) {
          x = nerve(*in.category, need_max_dim(o)).object;
        } else {
          x = as_simplicial(o, in, 0);
          if (o.max_dim) x = skeleton(x, *o.max_dim).object;
        }
        const auto lines = homology_lines(*x);
        if (o.format == "machine") {
          nlohmann::ordered_json j;
          j["version"] = 1;
          j["command"] = command;
          j["homology"] = lines;
          if (auto ms = elapsed()) j["timing_ms"] = *ms;
          out << j.dump(2) << "\n";
        } else {
          for (const auto& l : lines) out << l << "\n";
          if (auto ms = elapsed()) out << "timing: " << *ms << " ms\n";
        }
        return exit_holds;
      }
      const Document d = apply(o, in);
      emit_document(out, o, command, d.kind, serialize(d));
      return exit_holds;
    }
    std::vector<Entry> entries;
    if (*check_cmd) {
      const Document in = load(o.input);
      entries.push_back({"", o.name, check(o, in)});
    } else {
      entries = run_tasks(suite_tasks(o.suite), o.jobs);
    }
    emit_report(out, o, command, entries, elapsed());
    return exit_status(entries);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace segal
