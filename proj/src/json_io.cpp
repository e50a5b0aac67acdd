#include "recsets/json_io.hpp"

#include <sstream>

namespace recsets {

namespace {

Json vector_json(const FqVector& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(static_cast<unsigned>(x));
  return a;
}

template <class T>
T need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

FqVector vector_from_json(const FiniteField& f, unsigned k, const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != k) throw FormatError(where + ": expected an array of " + std::to_string(k) + " scalars");
  FqVector v;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= f.q())
      throw FormatError(where + ": scalars must be integers in 0.." + std::to_string(f.q() - 1));
    v.push_back(static_cast<Scalar>(x.get<std::uint64_t>()));
  }
  return v;
}

}  // namespace

Json field_to_json(const FiniteField& f) {
  Json j;
  j["p"] = f.p();
  j["e"] = f.e();
  j["q"] = f.q();
  j["modulus"] = f.modulus();
  return j;
}

FiniteField field_from_json(const Json& j) {
  const auto p = need<std::uint32_t>(j, "p");
  const auto e = need<unsigned>(j, "e");
  const auto modulus = need<Poly>(j, "modulus");
  try {
    FiniteField f(p, e, modulus);
    if (j.contains("q") && j.at("q") != f.q()) throw FormatError("field q does not equal p^e");
    return f;
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& ex) {
    throw FormatError(std::string("invalid field: ") + ex.what());
  }
}

Json family_to_json(const RecoveryFamily& family) {
  Json j;
  j["field"] = field_to_json(family.field);
  j["k"] = family.k;
  j["d"] = family.d;
  j["method"] = family.method;
  j["formulaLower"] = family.formula_lower;
  Json target = Json::array();
  for (const auto& row : family.target.basis()) target.push_back(vector_json(row));
  j["target"] = target;
  Json sets = Json::array();
  for (const auto& s : family.sets) {
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back(vector_json(canonical(family.field, p)));
    sets.push_back(pts);
  }
  j["size"] = family.sets.size();
  j["sets"] = sets;
  j["notes"] = family.notes;
  return j;
}

ParsedFamily family_from_json(const Json& doc) {
  const Json* j = &doc;
  if (doc.is_object() && doc.contains("payload")) {
    const Json& payload = doc.at("payload");
    if (payload.is_object() && payload.contains("family")) j = &payload.at("family");
    else if (payload.is_object() && payload.contains("witness")) j = &payload.at("witness");
    else throw FormatError("document payload carries no family");
  }
  if (!j->is_object()) throw FormatError("family must be a JSON object");
  if (!j->contains("field")) throw FormatError("missing field 'field'");
  FiniteField f = field_from_json(j->at("field"));
  const auto k = need<unsigned>(*j, "k");
  const auto d = need<unsigned>(*j, "d");
  if (d == 0 || d > k || k > 64) throw FormatError("need 1 <= d <= k <= 64");

  Subspace target = default_target(f, k, d);
  if (j->contains("target")) {
    const Json& t = j->at("target");
    if (!t.is_array()) throw FormatError("target must be an array of vectors");
    Matrix rows;
    for (std::size_t i = 0; i < t.size(); ++i) rows.push_back(vector_from_json(f, k, t[i], "target row " + std::to_string(i)));
    target = Subspace(f, k, rows);
    if (target.dim() != d) throw FormatError("target rows span a space of dimension " + std::to_string(target.dim()));
  }

  ParsedFamily out{RecoveryFamily(f, k, d, target), {}};
  out.family.method = j->value("method", std::string("input"));
  out.family.formula_lower = j->value("formulaLower", std::uint64_t{0});
  try {
    out.family.notes = j->value("notes", std::vector<std::string>{});
  } catch (const Json::exception&) {
    throw FormatError("notes must be an array of strings");
  }
  if (!j->contains("sets") || !j->at("sets").is_array()) throw FormatError("missing array 'sets'");
  const Json& sets = j->at("sets");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!sets[i].is_array()) throw FormatError("set " + std::to_string(i) + " must be an array of points");
    RecoverySet rs;
    for (std::size_t p = 0; p < sets[i].size(); ++p) {
      const std::string where = "set " + std::to_string(i) + " point " + std::to_string(p);
      FqVector v = vector_from_json(f, k, sets[i][p], where);
      if (is_zero(v)) throw FormatError(where + ": the zero vector is not a point");
      FqVector c = canonical(f, v);
      if (c != v) out.warnings.push_back(where + ": non-canonical representative rescaled");
      rs.points.push_back(std::move(c));
    }
    out.family.sets.push_back(std::move(rs));
  }
  return out;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["q"] = c.q;
  j["k"] = c.k;
  j["d"] = c.d;
  j["valid"] = c.valid();
  j["familySize"] = c.family_size;
  j["disjointOK"] = c.disjoint_ok;
  j["spanningOK"] = c.spanning_ok;
  j["universeOK"] = c.universe_ok;
  j["pointsUsed"] = c.points_used;
  j["pointsTotal"] = c.points_total;
  j["method"] = c.method;
  Json hist = Json::object();
  for (const auto& [size, count] : c.size_histogram) hist[std::to_string(size)] = count;
  j["sizeHistogram"] = hist;
  j["problems"] = c.problems;
  return j;
}

Json bounds_to_json(const BoundsRecord& r) {
  Json j;
  j["q"] = r.q;
  j["k"] = r.k;
  j["d"] = r.d;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
  Json terms = Json::array();
  for (const auto& t : r.provenance) terms.push_back({{"tag", t.tag}, {"kind", to_string(t.kind)}, {"value", t.value}});
  j["provenance"] = terms;
  j["remarks"] = r.remarks;
  return j;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Json ilp_to_json(const IlpModel& m, const IlpResult& r) {
  Json j;
  j["k"] = m.k;
  j["status"] = to_string(r.status);
  if (r.status == IlpStatus::Optimal) {
    j["optimum"] = r.optimum;
    Json a = Json::object();
    for (std::size_t i = 0; i < m.names.size(); ++i) a[m.names[i]] = r.assignment[i];
    j["assignment"] = a;
    j["lpBound"] = rational_string(r.lp_bound);
    Json z = Json::array();
    for (const auto& v : r.lp_dual) z.push_back(rational_string(v));
    j["dual"] = z;
    const DualCheck dc = check_dual(m, r.lp_dual);
    j["dualFeasible"] = dc.feasible;
    j["dualObjective"] = rational_string(dc.objective);
  }
  j["nodes"] = r.nodes;
  return j;
}

Json oracle_to_json(const OracleResult& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["value"] = r.value;
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["candidateSets"] = r.candidate_sets;
  j["witness"] = family_to_json(r.witness);
  return j;
}

}  // namespace recsets
