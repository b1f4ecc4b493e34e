#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hypermat/identities.hpp"
#include "hypermat/matrix.hpp"

namespace hypermat::io {

using Json = nlohmann::ordered_json;

/// {"dim": n, "entries": [[[re, im], ...], ...]} in row-major order.
Json encode_matrix(const CMatrix& m);

/// Parses the shared matrix encoding. A bare number or [re, im] pair is read
/// as a 1x1 matrix. Ragged rows, wrong dims and non-finite values raise
/// ParseError naming the JSON path (e.g. "/num/0/entries/1").
CMatrix parse_matrix(const Json& j, const std::string& path);

/// A real number or [re, im] pair.
Complex parse_complex(const Json& j, const std::string& path);

Json encode_case(const IdentityCase& c);
IdentityCase parse_case(const Json& j, const std::string& path);

/// Accepts {"cases": [...]}, a bare array of cases, or a single case object.
std::vector<IdentityCase> parse_cases(const Json& j);

Json encode_report(const VerificationReport& r);
Json encode_summary(const SuiteResult& s);
/// {"reports": [...], "summary": {...}}.
Json encode_suite(const SuiteResult& s);

/// One row per report, flat columns; strings are quoted when needed.
std::string suite_to_csv(const SuiteResult& s);

}  // namespace hypermat::io
