#include "circast/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "circast/json_io.hpp"

namespace circast::cli {

namespace {

using io::json;

enum class Format { text, json };

struct Options {
  Format format = Format::text;
  int n = 0;
  std::string in;
  std::string out;
  std::string group;
  int agl = 0;
  int jobs = 1;
  int max_ni = 0;
  bool all_thin = false;
  bool symmetric = false;
  std::string dedupe = "none";
  std::size_t limit = 0;
  std::string timeout;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("--in is required");
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return io::parse(buffer.str());
}

std::chrono::milliseconds parse_duration(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("bad duration \"" + text + "\"");
  }
  const std::string unit = text.substr(used);
  double ms = 0;
  if (unit.empty() || unit == "s") {
    ms = value * 1000.0;
  } else if (unit == "ms") {
    ms = value;
  } else if (unit == "m" || unit == "min") {
    ms = value * 60000.0;
  } else {
    throw UsageError("bad duration unit \"" + unit + "\"");
  }
  if (ms < 0) throw UsageError("negative duration");
  return std::chrono::milliseconds(static_cast<long long>(ms));
}

// Accepts an IndexPartition or one entry of a search result.
IndexPartition partition_from_any(const json& j) {
  if (j.is_object() && j.contains("partition")) return io::index_partition_from_json(j["partition"]);
  return io::index_partition_from_json(j);
}

std::string pairs_text(const PairSet& set) {
  std::string out = "{";
  bool first = true;
  set.for_each([&](Pair p) {
    if (!first) out += ", ";
    out += to_string(p);
    first = false;
  });
  return out + "}";
}

std::string profile_text(const ThinProfile& profile) {
  std::string out = "{";
  for (CoordPair ab : kCoordPairs) {
    if (!profile.has(ab)) continue;
    if (out.size() > 1) out += ",";
    out += std::string(name(ab));
  }
  return out + "}";
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void print_regularity(std::ostream& out, const IndexPartition& p, const ASTRegularityReport& report) {
  out << "n = " << p.n() << ", " << p.size() << " part(s)\n";
  for (std::size_t k = 0; k < report.part_stats.size(); ++k) {
    const auto& rs = report.part_stats[k];
    out << "  part " << k << ": " << pairs_text(p.part(k));
    if (rs.ok) out << "  n_I = " << rs.stats->n_I;
    out << "\n";
  }
  if (report.ok) {
    out << "AST-regular\n";
  } else {
    out << "not AST-regular: condition (" << report.failure->condition << ") fails: " << report.failure->message
        << "\n";
  }
}

void print_ast_report(std::ostream& out, const TriplePartition& ast, const ASTReport& report) {
  out << "n = " << ast.n() << ", m = " << ast.m() << "\n";
  for (int id = 0; id <= ast.m(); ++id) out << "  R" << id << ": " << ast.relation(id).size() << " triples\n";
  if (report.ok) {
    out << "AST verified (A1, A2, A3 hold)" << (report.symmetric ? ", symmetric" : "") << "\n";
    for (int id = 4; id <= ast.m(); ++id) {
      const auto k = static_cast<std::size_t>(id - 4);
      out << "  R" << id << ": n1 = " << report.tensor->n1[k] << ", n2 = " << report.tensor->n2[k]
          << ", n3 = " << report.tensor->n3[k] << "\n";
    }
  } else {
    for (const auto& f : report.failures) out << "fails " << f.axiom << ": " << f.message << "\n";
  }
}

int cmd_gen_x(const Options& o, std::ostream& out) {
  const PairSet x = build_pair_universe(make_domain(o.n));
  if (o.format == Format::json) {
    emit(out, io::to_json(x));
  } else {
    out << "X for n = " << o.n << ": " << x.size() << " pairs\n" << pairs_text(x) << "\n";
  }
  return kSuccess;
}

int cmd_verify_partition(const Options& o, std::ostream& out) {
  const IndexPartition p = partition_from_any(read_json_file(o.in));
  const ASTRegularityReport report = is_ast_regular(p, o.jobs);
  if (o.format == Format::json) {
    emit(out, io::to_json(report));
  } else {
    print_regularity(out, p, report);
  }
  return report.ok ? kSuccess : kNegative;
}

int cmd_build(const Options& o, std::ostream& out, std::ostream& err) {
  const IndexPartition p = partition_from_any(read_json_file(o.in));
  const ASTRegularityReport report = is_ast_regular(p, o.jobs);
  if (!report.ok) {
    err << "not AST-regular: condition (" << report.failure->condition << "): " << report.failure->message << "\n";
    if (o.format == Format::json) emit(out, io::to_json(report));
    return kNegative;
  }
  const TriplePartition ast = build_ast(p);
  const json j = io::to_json(ast);
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw UsageError("cannot write " + o.out);
    file << j.dump() << "\n";
    if (o.format == Format::text) out << "wrote AST with m = " << ast.m() << " to " << o.out << "\n";
  } else if (o.format == Format::json) {
    out << j.dump() << "\n";
  } else {
    out << "circulant AST on n = " << ast.n() << " points, m = " << ast.m() << "\n";
    for (int id = 0; id <= ast.m(); ++id) out << "  R" << id << ": " << ast.relation(id).size() << " triples\n";
  }
  return kSuccess;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  const TriplePartition ast = io::triple_partition_from_json(read_json_file(o.in));
  try {
    const IndexPartition p = extract_partition(ast);
    if (o.format == Format::json) {
      emit(out, io::to_json(p));
    } else {
      out << "index partition with " << p.size() << " part(s)\n";
      for (std::size_t k = 0; k < p.size(); ++k) out << "  part " << k << ": " << pairs_text(p.part(k)) << "\n";
    }
    return kSuccess;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotCirculantAST) throw;
    err << e.what() << "\n";
    if (o.format == Format::json) emit(out, json{{"ok", false}, {"error", e.what()}});
    return kNegative;
  }
}

int cmd_verify_ast(const Options& o, std::ostream& out) {
  const TriplePartition ast = io::triple_partition_from_json(read_json_file(o.in));
  const ASTReport report = verify_ast(ast, o.jobs);
  if (o.format == Format::json) {
    emit(out, io::to_json(report));
  } else {
    print_ast_report(out, ast, report);
  }
  return report.ok ? kSuccess : kNegative;
}

int cmd_params(const Options& o, std::ostream& out) {
  const TriplePartition ast = io::triple_partition_from_json(read_json_file(o.in));
  const ASTReport report = verify_ast(ast, o.jobs);
  if (!report.ok) {
    if (o.format == Format::json) {
      emit(out, io::to_json(report));
    } else {
      print_ast_report(out, ast, report);
    }
    return kNegative;
  }
  const DerivedParameters derived = derived_parameters(*report.tensor);
  if (o.format == Format::json) {
    json rows = json::array();
    for (int id = 4; id <= ast.m(); ++id) {
      const auto k = static_cast<std::size_t>(id - 4);
      rows.push_back(json{{"id", id},
                          {"n1", report.tensor->n1[k]},
                          {"n2", report.tensor->n2[k]},
                          {"n3", report.tensor->n3[k]},
                          {"sum_p_i2k_2", derived.n1[k]},
                          {"sum_p_1ik_1", derived.n2[k]}});
    }
    emit(out, json{{"n", ast.n()}, {"m", ast.m()}, {"identities_hold", true}, {"relations", std::move(rows)}});
  } else {
    out << "relation  n1  n2  n3  sum p_{i2k}^2  sum p_{1ik}^1\n";
    for (int id = 4; id <= ast.m(); ++id) {
      const auto k = static_cast<std::size_t>(id - 4);
      out << "  R" << id << "     " << report.tensor->n1[k] << "   " << report.tensor->n2[k] << "   "
          << report.tensor->n3[k] << "   " << derived.n1[k] << "              " << derived.n2[k] << "\n";
    }
  }
  return kSuccess;
}

json thin_entry(int id, const TernaryRelation& r) {
  const ThinProfile profile = thin_profile(r);
  json witnesses = json::array();
  if (is_circulant(r)) {
    for (CoordPair ab : kCoordPairs) {
      if (profile.has(ab)) witnesses.push_back(io::to_json(thin_witness(r, ab)));
    }
  }
  return json{{"id", id}, {"size", r.size()}, {"circulant", is_circulant(r)}, {"profile", io::to_json(profile)},
              {"witnesses", std::move(witnesses)}};
}

int cmd_thin(const Options& o, std::ostream& out) {
  const json input = read_json_file(o.in);
  std::vector<TernaryRelation> relations;
  if (input.is_object() && input.contains("relations")) {
    relations = io::triple_partition_from_json(input).relations();
  } else if (input.is_object() && input.contains("triples")) {
    relations.push_back(io::relation_from_json(input));
  } else if (input.is_object() && input.contains("pairs")) {
    relations.push_back(expand(io::pair_set_from_json(input)));
  } else if (input.is_object() && (input.contains("parts") || input.contains("partition"))) {
    const IndexPartition partition = partition_from_any(input);
    for (const PairSet& part : partition.parts()) relations.push_back(expand(part));
  } else {
    throw Error(ErrorCode::ParseError, "expected a relation, AST, pair set or index partition");
  }
  json rows = json::array();
  for (std::size_t k = 0; k < relations.size(); ++k) rows.push_back(thin_entry(static_cast<int>(k), relations[k]));
  if (o.format == Format::json) {
    emit(out, json{{"relations", std::move(rows)}});
  } else {
    for (const json& row : rows) {
      ThinProfile profile;
      for (const auto& ab : row["profile"]) {
        const auto parsed = parse_coord_pair(ab.get<std::string>());
        if (*parsed == CoordPair::p12) profile.ab12 = true;
        if (*parsed == CoordPair::p13) profile.ab13 = true;
        if (*parsed == CoordPair::p23) profile.ab23 = true;
      }
      out << "relation " << row["id"].get<int>() << " (" << row["size"].get<std::size_t>()
          << " triples): thin for " << profile_text(profile) << "\n";
      for (const json& w : row["witnesses"]) {
        out << "  ab = " << w["ab"].get<std::string>() << ", rho =";
        for (const auto& [y, v] : w["rho"].items()) out << " " << y << "->" << v.get<int>();
        out << (w["derangement"].get<bool>() ? "  (nontrivial)" : "  (trivial)") << "\n";
      }
    }
  }
  return kSuccess;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  const PairSet index_set = io::pair_set_from_json(read_json_file(o.in));
  MatchingDecomposition decomposition;
  try {
    decomposition = matching_decomposition(index_set);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRegular) throw;
    err << e.what() << "\n";
    return kNegative;
  }
  if (o.format == Format::json) {
    json parts = io::to_json(decomposition);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      parts[k]["thin23"] = thin_profile(expand(decomposition.parts[k])).ab23;
    }
    emit(out, parts);
  } else {
    out << decomposition.parts.size() << " perfect matching(s)\n";
    for (const PairSet& part : decomposition.parts) {
      out << "  " << pairs_text(part) << "  thin for " << profile_text(thin_profile(expand(part))) << "\n";
    }
  }
  return kSuccess;
}

int cmd_orbits(const Options& o, std::ostream& out) {
  GroupSpec group;
  if (o.agl != 0 && !o.group.empty()) throw UsageError("give either --group or --agl");
  if (o.agl != 0) {
    group = agl1(o.agl);
  } else if (!o.group.empty()) {
    group = io::group_spec_from_json(read_json_file(o.group));
  } else {
    throw UsageError("one of --group or --agl is required");
  }
  const TriplePartition partition = orbit_partition_on_triples(group);
  const bool two_transitive = is_two_transitive(group);
  const bool circulant = shift_invariance_check(partition);
  const ASTReport report = verify_ast(partition, o.jobs);
  std::optional<IndexPartition> index;
  if (report.ok && circulant) index = extract_partition(partition);

  if (o.format == Format::json) {
    json sizes = json::array();
    for (int id = 4; id <= partition.m(); ++id) sizes.push_back(partition.relation(id).size());
    json j{{"group", io::to_json(group)},
           {"two_transitive", two_transitive},
           {"circulant", circulant},
           {"is_ast", report.ok},
           {"orbit_sizes", std::move(sizes)},
           {"partition", io::to_json(partition)},
           {"report", io::to_json(report)}};
    j["index_partition"] = index ? io::to_json(*index) : json(nullptr);
    emit(out, j);
  } else {
    out << "group on n = " << group.n << " points, generators:";
    for (const auto& g : group.generators) out << " " << (g.cycles().empty() ? "()" : g.cycles());
    out << "\n" << partition.m() - 3 << " orbit(s) on distinct triples:";
    for (int id = 4; id <= partition.m(); ++id) out << " " << partition.relation(id).size();
    out << "\n2-transitive: " << (two_transitive ? "yes" : "no") << "\nshift-invariant: "
        << (circulant ? "yes" : "no") << "\nAST: " << (report.ok ? "yes" : "no") << "\n";
    if (!report.ok) {
      for (const auto& f : report.failures) out << "  fails " << f.axiom << ": " << f.message << "\n";
    }
    if (index) {
      for (std::size_t k = 0; k < index->size(); ++k) out << "  part " << k << ": " << pairs_text(index->part(k)) << "\n";
    }
  }
  return report.ok ? kSuccess : kNegative;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  SearchConfig config;
  config.n = make_domain(o.n).n;
  if (o.max_ni > 0) config.max_nI = o.max_ni;
  config.require_all_thin = o.all_thin;
  config.require_symmetric = o.symmetric;
  if (o.dedupe == "multiplier") {
    config.dedupe = Dedupe::multiplier;
  } else if (o.dedupe != "none") {
    throw UsageError("--dedupe must be none or multiplier");
  }
  if (o.limit > 0) config.limit = o.limit;
  if (!o.timeout.empty()) config.time_budget = parse_duration(o.timeout);
  config.jobs = o.jobs;

  const SearchResult result = search_ast_regular(config);
  if (o.format == Format::json) {
    emit(out, io::to_json(result, config));
  } else {
    out << "n = " << config.n << ": " << result.partitions.size() << " AST-regular partition(s), "
        << (result.complete ? "complete" : "incomplete") << ", " << result.nodes << " nodes\n";
    for (std::size_t k = 0; k < result.partitions.size(); ++k) {
      const IndexPartition& p = result.partitions[k].partition;
      out << "[" << k << "] " << p.size() << " part(s)\n";
      for (std::size_t q = 0; q < p.size(); ++q) {
        out << "    " << pairs_text(p.part(q)) << "  n_I = " << result.partitions[k].report.part_stats[q].stats->n_I
            << "\n";
      }
    }
  }
  err << "search finished in " << result.seconds << " s\n";
  return kSuccess;
}

int cmd_symmetrise(const Options& o, std::ostream& out) {
  const PairSet sym = symmetrise(io::pair_set_from_json(read_json_file(o.in)));
  if (o.format == Format::json) {
    emit(out, io::to_json(sym));
  } else {
    out << sym.size() << " pair(s): " << pairs_text(sym) << "\n";
  }
  return kSuccess;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotASTRegular:
    case ErrorCode::NotCirculantAST:
    case ErrorCode::NotRegular:
    case ErrorCode::NotThin:
    case ErrorCode::IdentityViolation:
      return kNegative;
    default:
      return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant association schemes on triples"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto add_in = [&](CLI::App* sub, const std::string& what) { sub->add_option("--in", o.in, what)->required(); };
  auto add_jobs = [&](CLI::App* sub) { sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256)); };

  auto* gen_x = app.add_subcommand("gen-x", "Print the pair universe X");
  gen_x->add_option("--n", o.n, "Size of the base set")->required();

  auto* verify_partition = app.add_subcommand("verify-partition", "Check AST-regularity of an index partition");
  add_in(verify_partition, "IndexPartition JSON");
  add_jobs(verify_partition);

  auto* build = app.add_subcommand("build", "Build the circulant AST of an AST-regular partition");
  add_in(build, "IndexPartition JSON");
  build->add_option("--out", o.out, "Write the AST here instead of stdout");
  add_jobs(build);

  auto* extract_cmd = app.add_subcommand("extract", "Recover the index partition of a circulant AST");
  add_in(extract_cmd, "TriplePartition JSON");

  auto* verify_ast_cmd = app.add_subcommand("verify-ast", "Verify the AST axioms");
  add_in(verify_ast_cmd, "TriplePartition JSON");
  add_jobs(verify_ast_cmd);

  auto* thin = app.add_subcommand("thin", "Thin profiles and witnesses");
  add_in(thin, "Relation, AST, PairSet or IndexPartition JSON");

  auto* decompose = app.add_subcommand("decompose", "Split a regular index set into perfect matchings");
  add_in(decompose, "PairSet JSON");

  auto* orbits = app.add_subcommand("orbits", "Orbit partition of a permutation group on triples");
  orbits->add_option("--group", o.group, "GroupSpec JSON file");
  orbits->add_option("--agl", o.agl, "Use AGL(1,p) for the prime p");
  add_jobs(orbits);

  auto* search = app.add_subcommand("search", "Enumerate AST-regular partitions of X");
  search->add_option("--n", o.n, "Size of the base set")->required();
  search->add_option("--max-ni", o.max_ni, "Largest n_I allowed for a part");
  search->add_flag("--all-thin", o.all_thin, "Every part must have n_I = 1");
  search->add_flag("--symmetric", o.symmetric, "Every part must be Sym(3)-invariant");
  search->add_option("--dedupe", o.dedupe, "none or multiplier");
  search->add_option("--limit", o.limit, "Stop after this many partitions");
  search->add_option("--timeout", o.timeout, "Time budget, e.g. 60s or 500ms");
  add_jobs(search);

  auto* symmetrise_cmd = app.add_subcommand("symmetrise", "Sym(3)-closure of an index set");
  add_in(symmetrise_cmd, "PairSet JSON");

  auto* params = app.add_subcommand("params", "Derived parameters of a verified AST");
  add_in(params, "TriplePartition JSON");
  add_jobs(params);

  std::vector<const char*> argv{"circast"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  o.format = format == "json" ? Format::json : Format::text;

  try {
    if (gen_x->parsed()) return cmd_gen_x(o, out);
    if (verify_partition->parsed()) return cmd_verify_partition(o, out);
    if (build->parsed()) return cmd_build(o, out, err);
    if (extract_cmd->parsed()) return cmd_extract(o, out, err);
    if (verify_ast_cmd->parsed()) return cmd_verify_ast(o, out);
    if (thin->parsed()) return cmd_thin(o, out);
    if (decompose->parsed()) return cmd_decompose(o, out, err);
    if (orbits->parsed()) return cmd_orbits(o, out);
    if (search->parsed()) return cmd_search(o, out, err);
    if (symmetrise_cmd->parsed()) return cmd_symmetrise(o, out);
    if (params->parsed()) return cmd_params(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace circast::cli
