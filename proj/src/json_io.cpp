#include "hypermat/json_io.hpp"

#include <cmath>
#include <sstream>

#include "hypermat/errors.hpp"

namespace hypermat::io {

namespace {

double parse_real(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "value is not finite");
  return v;
}

int parse_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "/" + key, "missing field");
  return *it;
}

Json encode_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

// Doubles print in their shortest round-trip form; non-finite values become null.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string optional_text(const std::optional<T>& v) {
  if (!v) return "";
  std::ostringstream os;
  os.precision(17);
  os << *v;
  return os.str();
}

std::string double_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Json encode_matrix(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(encode_complex(m(i, k)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["dim"] = m.rows();
  out["entries"] = std::move(rows);
  return out;
}

Complex parse_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return {parse_real(j, path), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {parse_real(j[0], path + "/0"), parse_real(j[1], path + "/1")};
  }
  throw ParseError(path, "expected a number or [re, im] pair");
}

CMatrix parse_matrix(const Json& j, const std::string& path) {
  if (j.is_number() || j.is_array()) {
    CMatrix m(1, 1);
    m(0, 0) = parse_complex(j, path);
    return m;
  }
  if (!j.is_object()) throw ParseError(path, "expected a matrix object");
  const Json& dim_j = member(j, "dim", path);
  const int dim = parse_int(dim_j, path + "/dim");
  if (dim < 1) throw ParseError(path + "/dim", "dim must be >= 1");
  const Json& entries = member(j, "entries", path);
  const std::string epath = path + "/entries";
  if (!entries.is_array()) throw ParseError(epath, "expected an array of rows");
  if (static_cast<int>(entries.size()) != dim) {
    throw ParseError(epath, "expected " + std::to_string(dim) + " rows, got " +
                                std::to_string(entries.size()));
  }
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::string rpath = epath + "/" + std::to_string(i);
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError(rpath, "expected a row array");
    if (static_cast<int>(row.size()) != dim) {
      throw ParseError(rpath, "ragged row: expected " + std::to_string(dim) + " entries, got " +
                                  std::to_string(row.size()));
    }
    for (int k = 0; k < dim; ++k) {
      const std::string cpath = rpath + "/" + std::to_string(k);
      const Json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_array() || cell.size() != 2) throw ParseError(cpath, "expected [re, im]");
      m(i, k) = parse_complex(cell, cpath);
    }
  }
  return m;
}

Json encode_case(const IdentityCase& c) {
  Json out;
  out["identity"] = to_string(c.identity);
  out["seed"] = c.triple.seed;
  out["dim"] = c.triple.dim();
  Json params;
  params["P"] = encode_matrix(c.triple.p);
  params["Q"] = encode_matrix(c.triple.q);
  params["R"] = encode_matrix(c.triple.r);
  out["params"] = std::move(params);
  Json scalars = Json::object();
  if (c.scalars.z) scalars["z"] = *c.scalars.z;
  if (c.scalars.w) scalars["w"] = *c.scalars.w;
  if (c.scalars.q) scalars["q"] = *c.scalars.q;
  if (c.scalars.n) scalars["n"] = *c.scalars.n;
  if (c.scalars.k) scalars["k"] = *c.scalars.k;
  out["scalars"] = std::move(scalars);
  out["tol"] = c.tol;
  return out;
}

IdentityCase parse_case(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a case object");
  IdentityCase c;
  const Json& id = member(j, "identity", path);
  if (!id.is_string()) throw ParseError(path + "/identity", "expected a string");
  try {
    c.identity = identity_from_string(id.get<std::string>());
  } catch (const PreconditionError& e) {
    throw ParseError(path + "/identity", e.what());
  }
  std::uint64_t seed = 0;
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer()) {
      throw ParseError(path + "/seed", "expected an integer");
    }
    seed = it->get<std::uint64_t>();
  }
  const std::string ppath = path + "/params";
  const Json& params = member(j, "params", path);
  CMatrix p = parse_matrix(member(params, "P", ppath), ppath + "/P");
  CMatrix q = parse_matrix(member(params, "Q", ppath), ppath + "/Q");
  CMatrix r = parse_matrix(member(params, "R", ppath), ppath + "/R");
  if (p.rows() != q.rows() || p.rows() != r.rows()) {
    throw ParseError(ppath, "P, Q, R must share one dim");
  }
  if (auto it = j.find("dim"); it != j.end()) {
    if (parse_int(*it, path + "/dim") != p.rows()) throw ParseError(path + "/dim", "does not match params");
  }
  c.triple = make_triple(std::move(p), std::move(q), std::move(r), seed);
  if (auto it = j.find("scalars"); it != j.end()) {
    const std::string spath = path + "/scalars";
    if (!it->is_object()) throw ParseError(spath, "expected an object");
    for (const auto& [key, value] : it->items()) {
      const std::string kpath = spath + "/" + key;
      if (key == "z") {
        c.scalars.z = parse_real(value, kpath);
      } else if (key == "w") {
        c.scalars.w = parse_real(value, kpath);
      } else if (key == "q") {
        c.scalars.q = parse_int(value, kpath);
      } else if (key == "n") {
        c.scalars.n = parse_int(value, kpath);
      } else if (key == "k") {
        c.scalars.k = parse_int(value, kpath);
      } else {
        throw ParseError(kpath, "unknown scalar");
      }
    }
  }
  if (auto it = j.find("tol"); it != j.end()) {
    c.tol = parse_real(*it, path + "/tol");
    if (!(c.tol > 0.0)) throw ParseError(path + "/tol", "tol must be positive");
  }
  return c;
}

std::vector<IdentityCase> parse_cases(const Json& j) {
  std::vector<IdentityCase> out;
  const Json* list = &j;
  std::string base;
  if (j.is_object() && j.contains("cases")) {
    list = &j["cases"];
    base = "/cases";
  } else if (j.is_object()) {
    out.push_back(parse_case(j, ""));
    return out;
  }
  if (!list->is_array()) throw ParseError(base.empty() ? "/" : base, "expected an array of cases");
  for (std::size_t i = 0; i < list->size(); ++i) {
    out.push_back(parse_case((*list)[i], base + "/" + std::to_string(i)));
  }
  return out;
}

Json encode_report(const VerificationReport& r) {
  Json out = encode_case(r.identity_case);
  out.erase("tol");
  out["residual"] = number_or_null(r.residual);
  out["tol"] = r.identity_case.tol;
  out["passed"] = r.passed;
  out["skipped"] = r.skipped;
  out["probe"] = r.probe;
  out["lhs_route"] = r.lhs_route;
  out["rhs_route"] = r.rhs_route;
  out["terms_or_nodes"] = r.terms_or_nodes;
  Json checks = Json::array();
  for (const auto& c : r.cross_checks) {
    checks.push_back(Json{{"route", c.route}, {"residual", number_or_null(c.residual)}});
  }
  out["cross_checks"] = std::move(checks);
  if (r.lhs.size() != 0) out["lhs"] = encode_matrix(r.lhs);
  if (r.rhs.size() != 0) out["rhs"] = encode_matrix(r.rhs);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json encode_summary(const SuiteResult& s) {
  Json per = Json::object();
  for (IdentityId id : kAllIdentities) {
    auto it = s.tally.find(to_string(id));
    if (it == s.tally.end()) continue;
    per[it->first] = Json{{"passed", it->second.passed},
                          {"failed", it->second.failed},
                          {"skipped", it->second.skipped}};
  }
  const DiscrepancyReport& d = s.discrepancy;
  Json disc{{"cases", d.cases},
            {"threshold", d.threshold},
            {"T7_proof_within", d.proof_within},
            {"T7_proof_max_residual", number_or_null(d.proof_max_residual)},
            {"T7_stmt_within", d.stmt_within},
            {"T7_stmt_max_residual", number_or_null(d.stmt_max_residual)},
            {"verdict", d.verdict}};
  Json out;
  out["total"] = s.reports.size();
  out["all_passed"] = s.all_passed();
  out["per_identity"] = std::move(per);
  out["t7_discrepancy"] = std::move(disc);
  return out;
}

Json encode_suite(const SuiteResult& s) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(encode_report(r));
  Json out;
  out["reports"] = std::move(reports);
  out["summary"] = encode_summary(s);
  return out;
}

std::string suite_to_csv(const SuiteResult& s) {
  std::ostringstream os;
  os << "identity,seed,dim,z,w,q,n,k,residual,tol,passed,skipped,probe,lhs_route,rhs_route,"
        "terms_or_nodes,note\n";
  for (const auto& r : s.reports) {
    const auto& c = r.identity_case;
    std::string counts;
    for (std::size_t i = 0; i < r.terms_or_nodes.size(); ++i) {
      if (i) counts += ';';
      counts += std::to_string(r.terms_or_nodes[i]);
    }
    os << to_string(c.identity) << ',' << c.triple.seed << ',' << c.triple.dim() << ','
       << optional_text(c.scalars.z) << ',' << optional_text(c.scalars.w) << ','
       << optional_text(c.scalars.q) << ',' << optional_text(c.scalars.n) << ','
       << optional_text(c.scalars.k) << ',' << double_text(r.residual) << ','
       << double_text(c.tol) << ',' << (r.passed ? "true" : "false") << ','
       << (r.skipped ? "true" : "false") << ',' << (r.probe ? "true" : "false") << ','
       << csv_field(r.lhs_route) << ',' << csv_field(r.rhs_route) << ',' << counts << ','
       << csv_field(r.note) << '\n';
  }
  return os.str();
}

}  // namespace hypermat::io
