#include "abba/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "abba/errors.hpp"

namespace abba {

namespace {

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) throw ParseError("malformed float literal '" + text + "'");
  if (!std::isfinite(value)) throw ParseError("non-finite float literal '" + text + "'");
  return value;
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("matrix document is missing \"") + key + "\"");
  return doc.at(key);
}

std::size_t require_dimension(const Json& doc, const char* key) {
  const Json& v = require(doc, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

template <Scalar T>
Matrix<T> read_entries(const Json& entries, std::size_t rows, std::size_t cols) {
  if (!entries.is_array() || entries.size() != rows) {
    throw ParseError("\"entries\" must be an array of " + std::to_string(rows) + " rows");
  }
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = entries[i];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const Json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") must be [\"re\", \"im\"]");
      }
      const auto re = e[0].get<std::string>();
      const auto im = e[1].get<std::string>();
      if constexpr (is_exact_v<T>) {
        m(i, j) = Exact(GaussianRational::parse_rational(re), GaussianRational::parse_rational(im));
      } else {
        m(i, j) = Complex(parse_double(re), parse_double(im));
      }
    }
  }
  return m;
}

}  // namespace

AnyMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  const Json& scalar = require(doc, "scalar");
  if (!scalar.is_string()) throw ParseError("\"scalar\" must be \"exact\" or \"float\"");
  const std::size_t rows = require_dimension(doc, "rows");
  const std::size_t cols = require_dimension(doc, "cols");
  const Json& entries = require(doc, "entries");
  const auto kind = scalar.get<std::string>();
  if (kind == "exact") return read_entries<Exact>(entries, rows, cols);
  if (kind == "float") return read_entries<Complex>(entries, rows, cols);
  throw ParseError("\"scalar\" must be \"exact\" or \"float\", got \"" + kind + "\"");
}

AnyMatrix parse_matrix(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(doc);
}

AnyMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json scalar_to_json(const Exact& z) { return Json::array({format_part(z.real()), format_part(z.imag())}); }
Json scalar_to_json(const Complex& z) { return Json::array({format_part(z.real()), format_part(z.imag())}); }

template <Scalar T>
Json to_json(const Matrix<T>& m) {
  Json j;
  j["scalar"] = is_exact_v<T> ? "exact" : "float";
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_to_json(m(i, k)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

template Json to_json<Exact>(const Matrix<Exact>&);
template Json to_json<Complex>(const Matrix<Complex>&);

Json to_json(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json(m).dump(2) << '\n';
}

Json to_json(const RankSequence& seq) {
  Json j;
  j["n"] = seq.n;
  j["terms"] = seq.terms;
  j["limit"] = seq.terms.empty() ? 0 : seq.limit();
  j["drops"] = drops(seq);
  return j;
}

Json to_json(const ClassReport& report) {
  Json j;
  j["hermitian"] = report.hermitian;
  j["normal"] = report.normal;
  j["psd"] = report.psd;
  j["ep"] = report.ep;
  j["realpart_psd_same_rank"] = report.realpart_psd_same_rank;
  j["rank"] = report.rank;
  Json w = Json::object();
  for (const auto& [k, v] : report.witnesses) w[k] = v;
  j["witnesses"] = std::move(w);
  return j;
}

Json to_json(const SimilarityVerdict& verdict) {
  Json j;
  j["similar"] = verdict.similar;
  j["reason"] = std::string(to_string(verdict.reason));
  j["seq_ab"] = to_json(verdict.seq_ab);
  j["seq_ba"] = to_json(verdict.seq_ba);
  return j;
}

Json to_json(const CertificateCheck& check) {
  Json j;
  j["residual"] = check.residual;
  j["residual_ok"] = check.residual_ok;
  j["invertible"] = check.invertible;
  j["determinant"] = check.determinant ? scalar_to_json(*check.determinant) : Json(nullptr);
  j["condition"] = check.condition ? Json(*check.condition) : Json(nullptr);
  j["passed"] = check.passed();
  return j;
}

Json to_json(const Finding& finding) {
  Json j;
  j["trial"] = finding.trial;
  j["a"] = to_json(finding.a);
  j["b"] = to_json(finding.b);
  j["seq_ab"] = to_json(finding.seq_ab);
  j["seq_ba"] = to_json(finding.seq_ba);
  return j;
}

Json to_json(const std::vector<Finding>& findings) {
  Json arr = Json::array();
  for (const auto& f : findings) arr.push_back(to_json(f));
  return arr;
}

Json to_json(const ClaimResult& result) {
  Json j;
  j["statement"] = result.statement;
  j["passed"] = result.passed;
  j["detail"] = result.detail;
  return j;
}

Json to_json(const Fixture& fixture, Backend backend, const TolerancePolicy& tol) {
  Json j;
  j["name"] = fixture.name;
  j["description"] = fixture.description;
  j["backend"] = std::string(to_string(backend));
  Json mats = Json::object();
  for (const auto& [name, m] : fixture.matrices) {
    mats[name] = backend == Backend::exact ? to_json(m) : to_json(convert<Complex>(m));
  }
  j["matrices"] = std::move(mats);
  Json claims = Json::array();
  bool all = true;
  for (const auto& r : fixture.evaluate(backend, tol)) {
    all = all && r.passed;
    claims.push_back(to_json(r));
  }
  j["claims"] = std::move(claims);
  j["all_passed"] = all;
  return j;
}

}  // namespace abba
