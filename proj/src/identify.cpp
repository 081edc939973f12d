#include <sigwriter/identify.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sigwriter {

std::string to_string(Metric m) { return m == Metric::chi2 ? "chi2" : "manhattan"; }

Metric parse_metric(const std::string& s) {
  if (s == "manhattan") return Metric::manhattan;
  if (s == "chi2") return Metric::chi2;
  throw ConfigError("unknown metric: " + s + " (expected manhattan, chi2 or auto)");
}

Metric default_metric(double epsilon) { return epsilon < 0.6 ? Metric::chi2 : Metric::manhattan; }

RankingResult rank(const DocumentDescriptor& query, std::span<const DocumentDescriptor> gallery, Metric metric) {
  RankingResult result{query.doc_id, {}};
  for (const auto& doc : gallery) {
    if (doc.doc_id == query.doc_id) continue;
    result.candidates.push_back({doc.doc_id, doc.writer_id, distance(query.matrix, doc.matrix, metric)});
  }
  if (result.candidates.empty()) throw std::invalid_argument("rank: gallery has no documents besides the query");
  std::sort(result.candidates.begin(), result.candidates.end(), [](const auto& a, const auto& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.doc_id < b.doc_id;
  });
  return result;
}

double AccuracyReport::accuracy(int n) const {
  const auto it = std::find(tops.begin(), tops.end(), n);
  if (it == tops.end()) throw std::invalid_argument("Top-" + std::to_string(n) + " was not evaluated");
  return queries == 0 ? 0.0 : static_cast<double>(hits[it - tops.begin()]) / static_cast<double>(queries);
}

namespace {

void normalize_tops(std::vector<int>& tops) {
  if (tops.empty()) throw std::invalid_argument("no Top-N values requested");
  for (int n : tops) {
    if (n < 1) throw std::invalid_argument("Top-N values must be >= 1");
  }
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
}

// Rank of the first same-writer candidate (1-based), or 0 if none.
std::size_t first_hit(const RankingResult& r, const std::string& writer) {
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (r.candidates[i].writer_id == writer) return i + 1;
  }
  return 0;
}

AccuracyReport tally(std::vector<int> tops, const std::vector<std::size_t>& first_hits) {
  AccuracyReport report;
  report.tops = std::move(tops);
  report.hits.assign(report.tops.size(), 0);
  report.queries = first_hits.size();
  for (std::size_t h : first_hits) {
    for (std::size_t t = 0; t < report.tops.size(); ++t) {
      if (h != 0 && h <= static_cast<std::size_t>(report.tops[t])) ++report.hits[t];
    }
  }
  return report;
}

}  // namespace

AccuracyReport evaluate_loo(std::span<const DocumentDescriptor> gallery, Metric metric, std::vector<int> tops) {
  normalize_tops(tops);
  if (gallery.size() < 2) throw std::invalid_argument("leave-one-out needs at least two documents");

  std::map<std::string, std::size_t> docs_per_writer;
  for (const auto& d : gallery) ++docs_per_writer[d.writer_id];

  std::vector<std::size_t> hits(gallery.size());
  detail::parallel_for(gallery.size(), [&](std::size_t q) {
    hits[q] = first_hit(rank(gallery[q], gallery, metric), gallery[q].writer_id);
  });

  AccuracyReport report = tally(std::move(tops), hits);
  if (docs_per_writer.size() == 1) {
    report.warnings.push_back("gallery contains a single writer; leave-one-out accuracy is trivial");
  }
  for (const auto& [writer, count] : docs_per_writer) {
    if (count == 1) {
      report.warnings.push_back("writer " + writer + " has a single document; its query counts as a miss");
    }
  }
  return report;
}

AccuracyReport evaluate_queryset(std::span<const DocumentDescriptor> templates,
                                 std::span<const DocumentDescriptor> queries, Metric metric, std::vector<int> tops) {
  normalize_tops(tops);
  if (templates.empty()) throw std::invalid_argument("query-set evaluation needs at least one template");
  if (queries.empty()) throw std::invalid_argument("query-set evaluation needs at least one query");

  std::set<std::string> template_ids, template_writers;
  for (const auto& t : templates) {
    template_ids.insert(t.doc_id);
    template_writers.insert(t.writer_id);
  }
  for (const auto& q : queries) {
    if (template_ids.count(q.doc_id)) {
      throw std::invalid_argument("document " + q.doc_id + " is both a template and a query");
    }
  }

  std::vector<std::size_t> hits(queries.size());
  detail::parallel_for(queries.size(), [&](std::size_t q) {
    hits[q] = first_hit(rank(queries[q], templates, metric), queries[q].writer_id);
  });

  AccuracyReport report = tally(std::move(tops), hits);
  std::set<std::string> missing;
  for (const auto& q : queries) {
    if (!template_writers.count(q.writer_id)) missing.insert(q.writer_id);
  }
  for (const auto& w : missing) {
    report.warnings.push_back("writer " + w + " has no template; its queries count as misses");
  }
  return report;
}

namespace {

std::vector<int> union_of_tops(std::span<const ReportRow> rows) {
  std::set<int> all;
  for (const auto& r : rows) all.insert(r.report.tops.begin(), r.report.tops.end());
  return {all.begin(), all.end()};
}

std::string percent(const AccuracyReport& report, int n) {
  if (std::find(report.tops.begin(), report.tops.end(), n) == report.tops.end()) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * report.accuracy(n));
  return buf;
}

std::vector<std::vector<std::string>> cells(std::span<const ReportRow> rows, const std::vector<int>& tops) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> header{"dataset"};
  for (int n : tops) header.push_back("Top-" + std::to_string(n));
  header.insert(header.end(), {"w", "m", "M"});
  out.push_back(std::move(header));
  for (const auto& r : rows) {
    std::vector<std::string> line{r.dataset};
    for (int n : tops) line.push_back(percent(r.report, n));
    line.insert(line.end(), {std::to_string(r.w), std::to_string(r.m), std::to_string(r.M)});
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

std::string format_report_csv(std::span<const ReportRow> rows) {
  std::ostringstream out;
  for (const auto& line : cells(rows, union_of_tops(rows))) {
    for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << line[i];
    out << '\n';
  }
  return out.str();
}

std::string format_report_table(std::span<const ReportRow> rows) {
  const auto table = cells(rows, union_of_tops(rows));
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& line : table)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

  std::ostringstream out;
  auto rule = [&] {
    for (std::size_t i = 0; i < width.size(); ++i) out << (i ? "-+-" : "") << std::string(width[i], '-');
    out << '\n';
  };
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t i = 0; i < table[r].size(); ++i) {
      const auto& s = table[r][i];
      const std::string pad(width[i] - s.size(), ' ');
      out << (i ? " | " : "") << (i == 0 ? s + pad : pad + s);
    }
    out << '\n';
    if (r == 0) rule();
  }
  return out.str();
}

}  // namespace sigwriter
