#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vcsc/ingest.hpp"

namespace vcsc {

struct SynthConfig {
  std::size_t firms = 100;
  std::size_t companies = 300;
  std::size_t rounds_per_company = 3;  // each company draws 1..rounds_per_company rounds
  double syndication_rate = 0.5;       // chance a round gets co-investors beyond the lead
  double exit_rate = 0.3;              // chance a (firm, company) position exits
  std::uint64_t seed = 1;
};

struct SyntheticEvents {
  std::vector<InvestmentEvent> investments;
  std::vector<ExitEvent> exits;
};

/// Every company has a lead investor present in all its rounds; leads are
/// assigned round-robin over a shuffled firm list so every firm leads a
/// company when companies >= firms. Co-investor slots are filled with firms
/// that have not invested yet before drawing at random, so every firm
/// appears whenever there are enough slots. Every exit references an
/// existing (firm, company) position. Throws INVALID_ARGUMENT on zero counts
/// or rates outside [0, 1].
SyntheticEvents generate_synthetic_eventlog(const SynthConfig& config);

/// Writes investments.csv and exits.csv into `dir` (created if needed).
void write_synthetic(const SyntheticEvents& events, const std::filesystem::path& dir);

}  // namespace vcsc
