#include "abba/search.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "abba/random.hpp"
#include "abba/similarity.hpp"

namespace abba {

namespace {

std::size_t draw_rank(Rng& rng, const RankConstraint& c, std::size_t n) {
  switch (c.kind) {
    case RankConstraint::Kind::exactly:
      return c.value;
    case RankConstraint::Kind::at_most:
      return std::uniform_int_distribution<std::size_t>(0, c.value)(rng);
    case RankConstraint::Kind::any:
      break;
  }
  return std::uniform_int_distribution<std::size_t>(0, n)(rng);
}

template <Scalar T>
std::pair<Matrix<T>, Matrix<T>> draw(const SearchSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  const std::size_t ra = draw_rank(rng, spec.rank, n);
  const std::size_t rb = std::uniform_int_distribution<std::size_t>(0, n)(rng);
  switch (spec.family) {
    case Family::normal:
      return {random_normal<T>(rng, n, ra), random_normal<T>(rng, n, rb)};
    case Family::hermitian:
      return {random_hermitian<T>(rng, n, ra), random_hermitian<T>(rng, n, rb)};
    case Family::psd:
      return {random_psd<T>(rng, n, ra), random_normal<T>(rng, n, rb)};
    case Family::ep:
      return {random_realpart_psd<T>(rng, n, ra), random_ep<T>(rng, n, rb)};
    case Family::zero_one_normal:
      return {random_zero_one_normal<T>(rng, n, ra), random_zero_one_normal<T>(rng, n, rb)};
  }
  throw std::logic_error("unknown family");
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::normal:
      return "normal";
    case Family::hermitian:
      return "hermitian";
    case Family::psd:
      return "psd";
    case Family::ep:
      return "ep";
    case Family::zero_one_normal:
      return "zero-one-normal";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::normal, Family::hermitian, Family::psd, Family::ep, Family::zero_one_normal}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

void SearchSpec::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (n == 0) throw std::invalid_argument("size must be positive");
  if (rank.kind != RankConstraint::Kind::any && rank.value > n) {
    throw std::invalid_argument("rank bound " + std::to_string(rank.value) + " exceeds size " + std::to_string(n));
  }
}

std::pair<AnyMatrix, AnyMatrix> sample_pair(const SearchSpec& spec, std::size_t trial) {
  spec.validate();
  Rng rng = trial_rng(spec.seed, trial);
  if (spec.backend == Backend::exact) {
    auto [a, b] = draw<Exact>(spec, rng);
    return {AnyMatrix(std::move(a)), AnyMatrix(std::move(b))};
  }
  auto [a, b] = draw<Complex>(spec, rng);
  return {AnyMatrix(std::move(a)), AnyMatrix(std::move(b))};
}

std::vector<Finding> search_counterexample(const SearchSpec& spec, const TolerancePolicy& tol) {
  spec.validate();
  std::vector<Finding> findings;
  for (std::size_t trial = 0; trial < spec.trials; ++trial) {
    auto [a, b] = sample_pair(spec, trial);
    const SimilarityVerdict verdict = std::visit(
        [&](const auto& ma) {
          using M = std::decay_t<decltype(ma)>;
          return decide_product_similarity(ma, std::get<M>(b), tol);
        },
        a);
    if (!verdict.similar) findings.push_back({trial, std::move(a), std::move(b), verdict.seq_ab, verdict.seq_ba});
  }
  return findings;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> minimal_counterexample_analysis(int n, int cap,
                                                                                          bool require_distinct) {
  const auto seqs = enumerate_tail_sequences(n, cap);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = require_distinct ? i + 1 : i; j < seqs.size(); ++j) {
      const auto& s = seqs[i];
      const auto& t = seqs[j];
      const int second_s = s.size() > 1 ? s[1] : s[0];
      const int second_t = t.size() > 1 ? t[1] : t[0];
      if (second_s != second_t) continue;
      if (s.back() != t.back()) continue;
      if (second_s == n - 1) continue;
      out.emplace_back(s, t);
    }
  }
  return out;
}

}  // namespace abba
