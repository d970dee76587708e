#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssmc/config.hpp"

namespace ssmc::validation {

/// One measured part of a criterion: the worst residual over its points and
/// the pinned tolerance it is judged against.
struct Part {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::size_t point = 0;  ///< index of the worst point
  std::string note;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Part> parts;

  bool pass() const;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
  std::size_t points = 16;
};

// Tolerances of the acceptance criteria.
inline constexpr double kClosedFormTol = 1e-8;
inline constexpr double kFdTol = 1e-6;
inline constexpr double kFdStep = 1e-5;
inline constexpr double kChainTol = 1e-8;
inline constexpr double kGrwTol = 1e-8;
inline constexpr double kEfeTol = 1e-9;
inline constexpr double kBarrierTol = 1e-10;
inline constexpr double kPerturbation = 1e-3;
inline constexpr std::size_t kEquivalenceTrials = 100;
inline constexpr std::size_t kRandomPairs = 50;

Criterion closed_form_anchor(const AcceptanceOptions& o);
Criterion ad_vs_fd(const AcceptanceOptions& o);
Criterion de_sitter_chain(const AcceptanceOptions& o);
Criterion grw_identities(const AcceptanceOptions& o);
Criterion einstein_type_equivalences(const AcceptanceOptions& o);
Criterion relativity(const AcceptanceOptions& o);
Criterion concircular_equivalence(const AcceptanceOptions& o);
Criterion determinism(const AcceptanceOptions& o);

std::vector<Criterion> run_acceptance(const AcceptanceOptions& o);

/// Text: one line per criterion followed by its parts. Machine: one CHECK
/// record per part, named acceptance.<id>.<part>.
std::string format_acceptance(const std::vector<Criterion>& results, ReportFormat format);

}  // namespace ssmc::validation
