#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "oddity/config.hpp"
#include "oddity/solver.hpp"

namespace oddity {

struct LabeledProblem {
  std::string id;
  std::string concept_tag;
  std::array<GrayRaster, kPanels> panels;
  int expected = -1;  // 0-based odd panel
};

struct ProblemResult {
  std::string id;
  std::string concept_tag;
  int expected = -1;
  Verdict verdict;
  std::string error;  // non-empty when the problem could not be solved

  bool correct() const noexcept { return verdict.answer && *verdict.answer == expected; }
};

struct ConceptReport {
  std::string concept_tag;
  int correct = 0;
  int total = 0;
  int skipped = 0;

  int incorrect() const noexcept { return total - correct - skipped; }
  /// Skipped problems count against the ratio. NaN when total is 0.
  double ratio() const noexcept;
};

struct BatchReport {
  std::vector<ConceptReport> concepts;  // sorted by concept_tag name
  ConceptReport overall{.concept_tag = "overall"};
  std::vector<ProblemResult> problems;  // input order
  std::vector<std::string> errors;
};

/// Solves problems concurrently, at most config.parallelism at a time.
/// Results keep input order and are independent of the schedule.
std::vector<ProblemResult> solve_batch(std::span<const LabeledProblem> problems, const RunConfig& config);

/// Single-threaded reference for solve_batch.
std::vector<ProblemResult> solve_batch_serial(std::span<const LabeledProblem> problems, const RunConfig& config);

BatchReport summarize(std::vector<ProblemResult> results);

}  // namespace oddity
