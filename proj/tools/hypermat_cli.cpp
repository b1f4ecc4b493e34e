// Command-line front end: evaluate matrix special functions, verify case
// files, run the seeded identity suite and generate case files.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypermat/errors.hpp"
#include "hypermat/euler.hpp"
#include "hypermat/identities.hpp"
#include "hypermat/json_io.hpp"
#include "hypermat/series.hpp"
#include "hypermat/special.hpp"

namespace {

using hypermat::CMatrix;
using hypermat::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input = "-";
  std::string out;
  std::uint64_t seed = 42;
  std::vector<int> dims{1, 2, 3};
  double tol = 1e-7;
  int cases = 5;
  std::string format = "json";
  std::vector<std::string> identities;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output '" + path + "'");
  out << text;
  out.close();
  if (!out) throw IoError("error writing '" + path + "'");
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw hypermat::ParseError("", std::string("invalid JSON: ") + e.what());
  }
}

const Json& field(const Json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw hypermat::ParseError("/" + key, "missing field");
  return *it;
}

CMatrix matrix_field(const Json& doc, const std::string& key) {
  return hypermat::io::parse_matrix(field(doc, key), "/" + key);
}

std::vector<CMatrix> matrix_list(const Json& doc, const std::string& key) {
  const Json& list = field(doc, key);
  if (!list.is_array()) throw hypermat::ParseError("/" + key, "expected an array of matrices");
  std::vector<CMatrix> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(hypermat::io::parse_matrix(list[i], "/" + key + "/" + std::to_string(i)));
  }
  return out;
}

int int_field(const Json& doc, const std::string& key, int fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer()) throw hypermat::ParseError("/" + key, "expected an integer");
  return it->get<int>();
}

double real_field(const Json& doc, const std::string& key, double fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number()) throw hypermat::ParseError("/" + key, "expected a number");
  return it->get<double>();
}

Json evaluate(const Json& doc) {
  if (!doc.is_object()) throw hypermat::ParseError("", "expected an object");
  const Json& fn_j = field(doc, "fn");
  if (!fn_j.is_string()) throw hypermat::ParseError("/fn", "expected a string");
  const std::string fn = fn_j.get<std::string>();
  Json out;
  out["fn"] = fn;
  Json diag = Json::object();
  CMatrix result;
  if (fn == "gamma") {
    result = hypermat::gamma_matrix(matrix_field(doc, "p"));
  } else if (fn == "beta") {
    const CMatrix p = matrix_field(doc, "p");
    const CMatrix q = matrix_field(doc, "q");
    const std::string route = doc.value("route", "gamma");
    if (route == "gamma") {
      result = hypermat::beta_matrix(p, q);
    } else if (route == "integral") {
      result = hypermat::beta_matrix_integral(p, q);
    } else {
      throw hypermat::ParseError("/route", "expected \"gamma\" or \"integral\"");
    }
    diag["route"] = route;
  } else if (fn == "pochhammer") {
    const int m = int_field(doc, "m", -1);
    if (m < 0) throw hypermat::ParseError("/m", "expected a non-negative integer");
    result = hypermat::pochhammer(matrix_field(doc, "p"), m);
  } else if (fn == "pfq") {
    hypermat::SeriesConfig cfg;
    cfg.tol = real_field(doc, "tol", cfg.tol);
    cfg.max_terms = int_field(doc, "max_terms", cfg.max_terms);
    const hypermat::Complex z = hypermat::io::parse_complex(field(doc, "z"), "/z");
    const auto params = hypermat::HyperParams::make(matrix_list(doc, "num"), matrix_list(doc, "den"));
    const hypermat::SeriesResult r = hypermat::pfq(params, z, cfg);
    result = r.value;
    diag["terms"] = r.terms_used;
    diag["converged"] = r.converged;
    diag["accelerated"] = r.accelerated;
    diag["last_term_norm"] = r.last_term_norm;
  } else if (fn == "euler_integral") {
    const hypermat::Complex z = hypermat::io::parse_complex(field(doc, "z"), "/z");
    const int q_exp = int_field(doc, "q_exp", 2);
    const double tol = real_field(doc, "tol", 1e-12);
    const std::string method = doc.value("method", "tanh-sinh");
    hypermat::QuadratureMethod qm;
    if (method == "tanh-sinh") {
      qm = hypermat::QuadratureMethod::kDoubleExponential;
    } else if (method == "gauss-jacobi") {
      qm = hypermat::QuadratureMethod::kGaussJacobi;
    } else {
      throw hypermat::ParseError("/method", "expected \"tanh-sinh\" or \"gauss-jacobi\"");
    }
    const auto spec = hypermat::EulerIntegralSpec::make(matrix_field(doc, "p"), matrix_field(doc, "q"),
                                                        matrix_field(doc, "r"), z, q_exp);
    const hypermat::EulerResult r = hypermat::euler_integral(spec, tol, qm);
    result = r.value;
    diag["nodes"] = r.nodes;
    diag["converged"] = true;
    diag["last_difference"] = r.last_difference;
    diag["method"] = hypermat::to_string(r.method);
  } else {
    throw hypermat::ParseError(
        "/fn", "unknown function '" + fn + "' (gamma, beta, pochhammer, pfq, euler_integral)");
  }
  out["result"] = hypermat::io::encode_matrix(result);
  out["diagnostics"] = std::move(diag);
  return out;
}

std::vector<hypermat::IdentityId> selected_identities(const Options& o) {
  std::vector<hypermat::IdentityId> ids;
  if (o.identities.empty()) return {std::begin(hypermat::kAllIdentities), std::end(hypermat::kAllIdentities)};
  for (const auto& name : o.identities) ids.push_back(hypermat::identity_from_string(name));
  return ids;
}

std::string render(const hypermat::SuiteResult& result, const std::string& format) {
  if (format == "csv") return hypermat::io::suite_to_csv(result);
  return hypermat::io::encode_suite(result).dump(2) + "\n";
}

int finish_suite(const hypermat::SuiteResult& result, const Options& o) {
  write_output(o.out, render(result, o.format));
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  for (const auto& [name, t] : result.tally) {
    passed += t.passed;
    failed += t.failed;
    skipped += t.skipped;
  }
  std::cerr << "cases: " << result.reports.size() << " passed: " << passed << " failed: " << failed
            << " skipped: " << skipped << "\n";
  if (result.discrepancy.cases > 0) std::cerr << result.discrepancy.summary_line() << "\n";
  return result.all_passed() ? kExitOk : kExitFailed;
}

template <typename Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const hypermat::ParseError& e) {
    std::cerr << "malformed input at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what()
              << "\n";
    return kExitMalformed;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const hypermat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypermat: matrix gamma/beta/hypergeometric functions and Euler integral identities"};
  app.require_subcommand(1);
  Options o;

  auto add_suite_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "suite seed")->capture_default_str();
    sub->add_option("--dims", o.dims, "matrix dimensions, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(1, 6))
        ->capture_default_str();
    sub->add_option("--tol", o.tol, "base residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--cases", o.cases, "cases per identity and dim")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--identities", o.identities, "restrict to these identities (e.g. T1,T7_proof)")
        ->delimiter(',');
  };
  auto add_output = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", o.out, "output file (default stdout)");
    if (with_format) {
      sub->add_option("--format", o.format, "report format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->capture_default_str();
    }
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate gamma, beta, pochhammer, pfq or euler_integral");
  eval->add_option("input", o.input, "input JSON file ('-' for stdin)");
  add_output(eval, false);

  CLI::App* verify = app.add_subcommand("verify", "verify the cases in a case file");
  verify->add_option("input", o.input, "case file ('-' for stdin)");
  add_output(verify, true);

  CLI::App* suite = app.add_subcommand("suite", "run the seeded identity suite");
  add_suite_flags(suite);
  add_output(suite, true);

  CLI::App* gen = app.add_subcommand("gen-cases", "write the suite's cases as a case file");
  add_suite_flags(gen);
  add_output(gen, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  const int threads = hypermat::threads_from_environment();
  if (*eval) {
    return guarded([&] {
      const Json result = evaluate(parse_json(read_input(o.input)));
      write_output(o.out, result.dump(2) + "\n");
      return kExitOk;
    });
  }
  if (*verify) {
    return guarded([&] {
      const auto cases = hypermat::io::parse_cases(parse_json(read_input(o.input)));
      return finish_suite(hypermat::run_cases(cases, threads), o);
    });
  }
  if (*suite) {
    return guarded([&] {
      return finish_suite(
          hypermat::run_suite(o.seed, o.dims, o.cases, o.tol, threads, selected_identities(o)), o);
    });
  }
  return guarded([&] {
    const auto cases =
        hypermat::generate_suite_cases(o.seed, o.dims, o.cases, o.tol, selected_identities(o));
    Json list = Json::array();
    for (const auto& c : cases) list.push_back(hypermat::io::encode_case(c));
    Json doc;
    doc["cases"] = std::move(list);
    write_output(o.out, doc.dump(2) + "\n");
    return kExitOk;
  });
}
