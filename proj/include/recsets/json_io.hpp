#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "recsets/bounds.hpp"
#include "recsets/family.hpp"
#include "recsets/ilp.hpp"
#include "recsets/oracle.hpp"
#include "recsets/verifier.hpp"

namespace recsets {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {p, e, q, modulus}; the modulus lists coefficients constant term first.
Json field_to_json(const FiniteField& f);
FiniteField field_from_json(const Json& j);

/// Points are arrays of scalars 0..q-1, constant term first in each scalar's
/// polynomial basis.
Json family_to_json(const RecoveryFamily& family);

struct ParsedFamily {
  RecoveryFamily family;
  /// One line per representative that had to be rescaled to canonical form.
  std::vector<std::string> warnings;
};

/// Accepts a bare family object or a construct/oracle output document.
/// Throws FormatError on anything that is not a well-formed family.
ParsedFamily family_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Json bounds_to_json(const BoundsRecord& r);
Json ilp_to_json(const IlpModel& m, const IlpResult& r);
Json oracle_to_json(const OracleResult& r);

/// Exact rationals as "a/b" strings, or "a" for integers.
std::string rational_string(const Rational& r);

}  // namespace recsets
