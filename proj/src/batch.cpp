#include "oddity/batch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oddity/error.hpp"

namespace oddity {

double ConceptReport::ratio() const noexcept {
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

ProblemResult solve_one(const LabeledProblem& problem, const RunConfig& config) {
  ProblemResult r{problem.id, problem.concept_tag, problem.expected, {}, {}};
  try {
    r.verdict = solve_problem(std::span<const GrayRaster, kPanels>(problem.panels), config);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.verdict.explanation = std::string("error: ") + e.what();
  }
  return r;
}

}  // namespace

std::vector<ProblemResult> solve_batch(std::span<const LabeledProblem> problems, const RunConfig& config) {
  config.validate();
  std::vector<ProblemResult> out(problems.size());
  const long long n = static_cast<long long>(problems.size());
#ifdef _OPENMP
  const int threads = config.parallelism > 0 ? config.parallelism : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (long long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = solve_one(problems[static_cast<std::size_t>(i)], config);
  }
  return out;
}

std::vector<ProblemResult> solve_batch_serial(std::span<const LabeledProblem> problems, const RunConfig& config) {
  config.validate();
  std::vector<ProblemResult> out;
  out.reserve(problems.size());
  for (const auto& p : problems) out.push_back(solve_one(p, config));
  return out;
}

BatchReport summarize(std::vector<ProblemResult> results) {
  BatchReport report;
  std::map<std::string, ConceptReport> by_concept;
  for (const auto& r : results) {
    auto& c = by_concept[r.concept_tag];
    c.concept_tag = r.concept_tag;
    for (ConceptReport* agg : {&c, &report.overall}) {
      ++agg->total;
      if (r.correct()) {
        ++agg->correct;
      } else if (r.verdict.skipped() && r.error.empty()) {
        ++agg->skipped;
      }
    }
    if (!r.error.empty()) report.errors.push_back(r.id + ": " + r.error);
  }
  for (auto& [name, c] : by_concept) report.concepts.push_back(c);
  report.problems = std::move(results);
  return report;
}

}  // namespace oddity
