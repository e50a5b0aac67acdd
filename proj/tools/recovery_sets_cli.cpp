// recovery_sets: construct, verify, bound and search families of disjoint
// recovery sets from the command line.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "recsets/bounds.hpp"
#include "recsets/constructions.hpp"
#include "recsets/ilp.hpp"
#include "recsets/json_io.hpp"
#include "recsets/oracle.hpp"
#include "recsets/verifier.hpp"

using namespace recsets;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitInvalidFamily = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInternal = 3;

// Raised for a failed self-check, mapped to exit code 3.
struct InternalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  unsigned threads = 0;
  bool timing = false;

  std::uint32_t q = 2;
  unsigned k = 0;
  unsigned d = 0;
  std::string method = "auto";
  std::string k_range, d_range;
  bool verbatim_refined = false;
  std::string input;
  bool emit_model = false;
  double node_limit = 0;
  double time_limit = 0;
  unsigned max_set_size = 0;
  bool no_pruning = false;
};

unsigned thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  if (const char* env = std::getenv("RECOVERY_SETS_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("RECOVERY_SETS_THREADS must be a positive integer");
  }
  return 1;
}

std::pair<unsigned, unsigned> parse_range(const std::string& s, const char* what) {
  auto num = [&](const std::string& t) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size() || v > 1000) throw std::invalid_argument(std::string("bad ") + what + " range '" + s + "'");
    return static_cast<unsigned>(v);
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const unsigned v = num(s);
    return {v, v};
  }
  const unsigned lo = num(s.substr(0, dots)), hi = num(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument(std::string("empty ") + what + " range '" + s + "'");
  return {lo, hi};
}

std::string point_string(const FqVector& v, std::uint32_t q) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (q > 10 && i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

Json document(const std::string& command, Json parameters) {
  Json doc;
  doc["schemaVersion"] = kSchemaVersion;
  doc["command"] = command;
  doc["parameters"] = std::move(parameters);
  return doc;
}

Json field_header(const FiniteField& f, std::optional<unsigned> column_degree) {
  Json j = field_to_json(f);
  if (column_degree && static_cast<double>(*column_degree) * std::log2(static_cast<double>(f.q())) <= 24)
    j["columnModulus"] = find_primitive_poly(f, *column_degree);
  return j;
}

RecoveryFamily build(const Options& o) {
  if (o.method == "auto") return construct(o.q, o.k, o.d);
  if (o.method == "general") return construct_general_q(o.q, o.k, o.d);
  if (o.method == "basic") {
    if (o.k != o.d) throw std::invalid_argument("method basic needs d = k");
    return construct_basic(FiniteField::make(o.q), o.k);
  }
  if (o.q != 2) throw std::invalid_argument("method " + o.method + " is binary only");
  if (o.method == "d2" && o.d == 2) return construct_d2(o.k);
  if (o.method == "d4" && o.d == 4) return construct_d4(o.k);
  if (o.method == "d5" && o.d == 5) return construct_d5(o.k);
  if (o.method == "perfect") return construct_perfect(o.k, o.d);
  throw std::invalid_argument("method " + o.method + " does not apply to d = " + std::to_string(o.d));
}

void print_family_text(std::ostream& os, const RecoveryFamily& fam) {
  os << "method " << fam.method << "\n";
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    os << "set " << i << ":";
    for (const auto& p : fam.sets[i].points) os << " " << point_string(p, fam.field.q());
    os << "\n";
  }
  for (const auto& n : fam.notes) os << "note: " << n << "\n";
}

void print_certificate_text(std::ostream& os, const Certificate& c) {
  os << "family size " << c.family_size << "\n";
  os << "disjoint " << (c.disjoint_ok ? "yes" : "no") << ", spanning " << (c.spanning_ok ? "yes" : "no") << ", points "
     << (c.universe_ok ? "ok" : "bad") << " (" << c.points_used << " of " << c.points_total << " used)\n";
  for (const auto& p : c.problems) os << "problem: " << p << "\n";
  os << (c.valid() ? "VALID" : "INVALID") << "\n";
}

int cmd_construct(const Options& o, Json& doc, std::ostream& text) {
  RecoveryFamily fam = build(o);
  const Certificate cert = verify_family(fam);
  doc["field"] = field_header(fam.field, o.d);
  doc["payload"] = {{"family", family_to_json(fam)}, {"certificate", certificate_to_json(cert)}};
  if (o.format == "text") {
    print_family_text(text, fam);
    print_certificate_text(text, cert);
  }
  if (!cert.valid()) throw InternalFailure("constructed family failed verification");
  return 0;
}

int cmd_bounds(const Options& o, Json& doc, std::ostream& text) {
  const auto [klo, khi] = parse_range(o.k_range, "k");
  const auto [dlo, dhi] = parse_range(o.d_range, "d");
  if (dlo == 0) throw std::invalid_argument("d must be at least 1");
  BoundsOptions bo;
  bo.verbatim_refined_upper = o.verbatim_refined;
  const auto table = bound_table(o.q, klo, khi, dlo, dhi, bo);
  Json rows = Json::array();
  for (const auto& r : table) rows.push_back(bounds_to_json(r));
  doc["field"] = field_header(FiniteField::make(o.q), std::nullopt);
  doc["payload"] = {{"table", rows}};
  if (o.format == "csv") {
    text << "q,k,d,lower,upper,exact,provenance\n";
    for (const auto& r : table) {
      text << r.q << "," << r.k << "," << r.d << "," << r.lower << "," << r.upper << ","
           << (r.exact ? std::to_string(*r.exact) : "") << ",";
      for (std::size_t i = 0; i < r.provenance.size(); ++i)
        text << (i ? ";" : "") << r.provenance[i].tag << "=" << r.provenance[i].value;
      text << "\n";
    }
  } else if (o.format == "text") {
    for (const auto& r : table) {
      text << "N_" << r.q << "(" << r.k << "," << r.d << "): " << r.lower << " <= N <= " << r.upper;
      if (r.exact) text << "  exact " << *r.exact;
      text << "\n";
      for (const auto& t : r.provenance) text << "  " << to_string(t.kind) << " " << t.value << "  " << t.tag << "\n";
    }
  }
  return 0;
}

int cmd_verify(const Options& o, Json& doc, std::ostream& text) {
  std::string raw;
  if (o.input == "-") {
    raw.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(o.input);
    if (!in) throw FormatError("cannot read " + o.input);
    raw.assign(std::istreambuf_iterator<char>(in), {});
  }
  Json j;
  try {
    j = Json::parse(raw);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  ParsedFamily parsed = family_from_json(j);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  const Certificate cert = verify_family(parsed.family);
  doc["field"] = field_header(parsed.family.field, std::nullopt);
  doc["payload"] = {{"certificate", certificate_to_json(cert)}, {"warnings", parsed.warnings}};
  if (o.format == "text") print_certificate_text(text, cert);
  return cert.valid() ? 0 : kExitInvalidFamily;
}

int cmd_ilp(const Options& o, Json& doc, std::ostream& text) {
  const IlpModel m = build_ilp_d2(o.k);
  if (o.emit_model) {
    text << export_model(m);
    return 0;
  }
  const IlpResult r = solve_ilp(m);
  if (r.status == IlpStatus::Optimal && !check_dual(m, r.lp_dual).feasible)
    throw InternalFailure("LP dual certificate is infeasible");
  doc["payload"] = {{"ilp", ilp_to_json(m, r)}};
  if (o.format == "text") {
    text << "status " << to_string(r.status) << "\n";
    if (r.status == IlpStatus::Optimal) {
      text << "optimum " << r.optimum << "\n";
      for (std::size_t i = 0; i < m.names.size(); ++i) text << "  " << m.names[i] << " = " << r.assignment[i] << "\n";
      text << "LP bound " << rational_string(r.lp_bound) << "\n";
    }
  }
  return 0;
}

int cmd_oracle(const Options& o, Json& doc, std::ostream& text) {
  SearchConfig cfg;
  if (o.node_limit < 0 || o.time_limit < 0) throw std::invalid_argument("limits must be nonnegative");
  cfg.node_limit = static_cast<std::uint64_t>(o.node_limit);
  cfg.time_limit = o.time_limit;
  cfg.max_set_size = o.max_set_size;
  cfg.bound_pruning = !o.no_pruning;
  cfg.threads = thread_count(o);
  const OracleResult r = exact_N(o.q, o.k, o.d, cfg);
  doc["field"] = field_header(r.witness.field, std::nullopt);
  doc["payload"] = {{"oracle", oracle_to_json(r)}};
  if (o.format == "text") {
    text << "N_" << o.q << "(" << o.k << "," << o.d << ") " << (r.status == OracleStatus::Exact ? "= " : ">= ") << r.value
         << "\n";
    if (!r.reason.empty()) text << "lower bound only: " << r.reason << "\n";
    print_family_text(text, r.witness);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disjoint recovery sets for subspaces of F_q^k over the simplex code"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", o.threads, "Worker threads for the oracle (default RECOVERY_SETS_THREADS or 1)");
  app.add_flag("--timing", o.timing, "Add wall-clock timing outside the payload");

  auto add_qkd = [&](CLI::App* c) {
    c->add_option("--q", o.q, "Field size")->required();
    c->add_option("--k", o.k, "Ambient dimension")->required();
    c->add_option("--d", o.d, "Target dimension")->required();
  };

  auto* construct_cmd = app.add_subcommand("construct", "Build a family and certify it");
  add_qkd(construct_cmd);
  construct_cmd->add_option("--method", o.method, "auto, basic, d2, d4, d5, perfect or general")
      ->check(CLI::IsMember({"auto", "basic", "d2", "d4", "d5", "perfect", "general"}));

  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate closed-form bounds");
  bounds_cmd->add_option("--q", o.q, "Field size")->required();
  bounds_cmd->add_option("--k", o.k_range, "k or lo..hi")->required();
  bounds_cmd->add_option("--d", o.d_range, "d or lo..hi")->required();
  bounds_cmd->add_flag("--verbatim-refined", o.verbatim_refined, "Use q^k in the middle term of the refined upper bound");

  auto* verify_cmd = app.add_subcommand("verify", "Re-verify a family document");
  verify_cmd->add_option("input", o.input, "Family JSON file, or - for stdin")->required();

  auto* ilp_cmd = app.add_subcommand("ilp", "Solve the integer program for binary d = 2");
  ilp_cmd->add_option("--k", o.k, "Ambient dimension")->required();
  ilp_cmd->add_flag("--emit-model", o.emit_model, "Print the model in LP format instead of solving");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search for the maximum family");
  add_qkd(oracle_cmd);
  oracle_cmd->add_option("--node-limit", o.node_limit, "Search node budget, e.g. 1e6 (0 = none)");
  oracle_cmd->add_option("--time-limit", o.time_limit, "Seconds (0 = none)");
  oracle_cmd->add_option("--max-set-size", o.max_set_size, "Largest set explored (0 = k)");
  oracle_cmd->add_flag("--no-pruning", o.no_pruning, "Disable the counting bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream text;
  Json doc;
  int rc = 0;
  try {
    if (o.format == "csv" && !bounds_cmd->parsed()) throw std::invalid_argument("csv output is only for bounds tables");
    if (construct_cmd->parsed()) {
      doc = document("construct", {{"q", o.q}, {"k", o.k}, {"d", o.d}, {"method", o.method}});
      rc = cmd_construct(o, doc, text);
    } else if (bounds_cmd->parsed()) {
      doc = document("bounds", {{"q", o.q}, {"k", o.k_range}, {"d", o.d_range}, {"verbatimRefined", o.verbatim_refined}});
      rc = cmd_bounds(o, doc, text);
    } else if (verify_cmd->parsed()) {
      doc = document("verify", {{"input", o.input}});
      rc = cmd_verify(o, doc, text);
    } else if (ilp_cmd->parsed()) {
      doc = document("ilp", {{"k", o.k}, {"emitModel", o.emit_model}});
      rc = cmd_ilp(o, doc, text);
    } else {
      doc = document("oracle", {{"q", o.q},
                                {"k", o.k},
                                {"d", o.d},
                                {"nodeLimit", static_cast<std::uint64_t>(o.node_limit)},
                                {"timeLimit", o.time_limit},
                                {"maxSetSize", o.max_set_size}});
      rc = cmd_oracle(o, doc, text);
    }
  } catch (const InternalFailure& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    if (o.format == "json" && doc.contains("payload")) std::cout << doc.dump(2) << "\n";
    else std::cout << text.str();
    return kExitInternal;
  } catch (const std::logic_error& e) {
    // invalid_argument, domain_error and FormatError are all logic_errors but
    // mean bad input; anything else from this family is a broken invariant.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e) ||
        dynamic_cast<const std::out_of_range*>(&e)) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadInput;
    }
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  if (o.emit_model || o.format != "json") {
    std::cout << text.str();
    if (o.timing)
      std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  } else {
    if (o.timing)
      doc["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    std::cout << doc.dump(2) << "\n";
  }
  return rc;
}
