#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vpg/graph.hpp"
#include "vpg/rep.hpp"

namespace vpg {

struct SearchLimits {
  std::uint64_t maxNodes = 50'000'000;
  std::uint64_t maxMillis = 600'000;
  std::optional<int> gridOverride;  // side length of the canonical grid
};

struct WitnessCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

// True iff every curve is an axis-parallel integer-grid path with at most k
// bends and the intersection graph equals g (overlaps/touchings count).
WitnessCheck validate_witness(const Graph& g, const Representation& rep, int k);

struct RecognitionResult {
  enum Kind { Member, NonMember, Inconclusive } kind = Inconclusive;
  Representation witness;           // Member only; always validated
  int searchBound = 0;              // canonical grid side length searched
  std::uint64_t nodesExplored = 0;
  std::string resourceLimit;        // Inconclusive: "nodes" or "time"
};

// Exhaustive search over the canonical n(k+2) grid. NonMember is reported
// only after the complete canonical space was exhausted; resource cutoffs
// yield Inconclusive. Deterministic for fixed inputs and limits.
RecognitionResult recognize_bk(const Graph& g, int k, const SearchLimits& limits = {});

}  // namespace vpg
