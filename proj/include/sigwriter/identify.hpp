#pragma once

// Feature-matrix distances, ranked retrieval, and Top-N evaluation.

#include <sigwriter/codebook.hpp>
#include <sigwriter/errors.hpp>

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sigwriter {

enum class Metric { manhattan, chi2 };

std::string to_string(Metric m);
/// Accepts "manhattan" and "chi2". Throws ConfigError.
Metric parse_metric(const std::string& s);
/// χ² for fine polygonization (ε below 0.6), Manhattan otherwise.
Metric default_metric(double epsilon);
inline Metric resolve_metric(std::optional<Metric> requested, double epsilon) {
  return requested ? *requested : default_metric(epsilon);
}

namespace detail {
template <typename A, typename B>
void require_same_shape(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionMismatch("feature matrices differ in size: " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + " vs " + std::to_string(v.rows()) + "x" +
                            std::to_string(v.cols()));
  }
}
}  // namespace detail

template <typename A, typename B>
double manhattan_distance(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  detail::require_same_shape(u, v);
  return (u - v).cwiseAbs().sum();
}

/// Sum of (u - v)^2 / (u + v) over cells with u + v > 0.
template <typename A, typename B>
double chi2_distance(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  detail::require_same_shape(u, v);
  const auto diff = (u - v).array();
  const auto sum = (u + v).array();
  return (sum > 0.0).select(diff.square() / sum, 0.0).sum();
}

inline double distance(const FeatureMatrix& u, const FeatureMatrix& v, Metric metric) {
  return metric == Metric::chi2 ? chi2_distance(u.values, v.values) : manhattan_distance(u.values, v.values);
}

struct DocumentDescriptor {
  std::string doc_id;
  std::string writer_id;
  FeatureMatrix matrix;
  std::string source;
};

struct RankedCandidate {
  std::string doc_id;
  std::string writer_id;
  double distance = 0.0;
};

struct RankingResult {
  std::string query_id;
  std::vector<RankedCandidate> candidates;  ///< ascending distance, ties by doc id
};

/// Ranks every gallery document except the query itself (matched by doc id).
/// Throws std::invalid_argument if nothing is left to rank.
RankingResult rank(const DocumentDescriptor& query, std::span<const DocumentDescriptor> gallery, Metric metric);

/// Top-N accuracies for one evaluation run.
struct AccuracyReport {
  std::vector<int> tops;
  std::vector<std::size_t> hits;  ///< parallel to tops
  std::size_t queries = 0;
  std::vector<std::string> warnings;

  /// Fraction in [0, 1] for N, which must be one of `tops`.
  double accuracy(int n) const;
};

/// Leave-one-out: each document queries all others. Queries whose writer
/// has no other document count as misses. Throws std::invalid_argument for
/// galleries with fewer than two documents or an empty `tops`.
AccuracyReport evaluate_loo(std::span<const DocumentDescriptor> gallery, Metric metric, std::vector<int> tops);

/// Each query is ranked against the templates only. Queries whose writer has
/// no template count as misses.
AccuracyReport evaluate_queryset(std::span<const DocumentDescriptor> templates,
                                 std::span<const DocumentDescriptor> queries, Metric metric, std::vector<int> tops);

/// One line of an accuracy table.
struct ReportRow {
  std::string dataset;
  AccuracyReport report;
  int w = 0;
  int m = 0;
  int M = 0;
};

/// Columns: dataset, one Top-N column per N (percent), w, m, M.
std::string format_report_csv(std::span<const ReportRow> rows);
std::string format_report_table(std::span<const ReportRow> rows);

}  // namespace sigwriter
