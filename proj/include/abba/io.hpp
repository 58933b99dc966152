#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "abba/catalog.hpp"
#include "abba/classes.hpp"
#include "abba/matrix.hpp"
#include "abba/rank_sequence.hpp"
#include "abba/search.hpp"
#include "abba/similarity.hpp"
#include "abba/unitary.hpp"

namespace abba {

using Json = nlohmann::ordered_json;

// Matrix file format:
//   { "scalar": "exact" | "float", "rows": n, "cols": m,
//     "entries": [[ ["re", "im"], ... ], ...] }
// Parts are strings. Exact parts are "p", "-p" or "p/q"; float parts are
// decimal literals. All parse failures throw ParseError.

AnyMatrix matrix_from_json(const Json& doc);
AnyMatrix parse_matrix(std::string_view text);
AnyMatrix read_matrix_file(const std::filesystem::path& path);

template <Scalar T>
Json to_json(const Matrix<T>& m);
Json to_json(const AnyMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const AnyMatrix& m);

Json scalar_to_json(const Exact& z);
Json scalar_to_json(const Complex& z);

Json to_json(const RankSequence& seq);
Json to_json(const ClassReport& report);
Json to_json(const SimilarityVerdict& verdict);
Json to_json(const CertificateCheck& check);

template <Scalar T>
Json to_json(const SimilarityCertificate<T>& cert) {
  Json j;
  j["t"] = to_json(cert.t);
  const Json check = to_json(cert.check);
  for (const auto& [key, value] : check.items()) j[key] = value;
  j["det_or_cond"] = cert.check.determinant ? check["determinant"] : check["condition"];
  return j;
}

template <Scalar T>
Json to_json(const WordTraceReport<T>& report) {
  Json j;
  j["distinguished"] = report.distinguished;
  j["max_len"] = report.max_len;
  j["words_checked"] = report.words_checked;
  j["word"] = report.word ? Json(report.word->str()) : Json(nullptr);
  if (report.traces) {
    j["traces"] = Json::array({scalar_to_json(report.traces->first), scalar_to_json(report.traces->second)});
  } else {
    j["traces"] = nullptr;
  }
  return j;
}

Json to_json(const Finding& finding);
Json to_json(const std::vector<Finding>& findings);
Json to_json(const ClaimResult& result);
/// Name, description, matrices and claim results on `backend`.
Json to_json(const Fixture& fixture, Backend backend, const TolerancePolicy& tol = {});

}  // namespace abba
