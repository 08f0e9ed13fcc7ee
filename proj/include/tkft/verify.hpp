#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tkft/cantor.hpp"
#include "tkft/gshift.hpp"

namespace tkft {

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::uint64_t fuel = 100000;
  // volume: check this map instead of the generated corpus maps.
  std::optional<BlockMap> blockmap;
};

// Every report is a function of the options alone (no timings), ending in
// a "result pass" or "result fail" line.
struct SuiteReport {
  std::string name;
  bool passed = true;
  std::string text;
};

SuiteReport verify_conjugacy_tm_gshift(const SuiteOptions& o, int machines = 20, int configs = 100,
                                       int steps = 50);
SuiteReport verify_conjugacy_gshift_blockmap(const SuiteOptions& o, int words = 1000);
SuiteReport verify_volume(const SuiteOptions& o);
SuiteReport verify_betti(const SuiteOptions& o, int graphs = 50);
SuiteReport verify_reach(const SuiteOptions& o);
SuiteReport verify_lenc(const SuiteOptions& o);
SuiteReport verify_oracle_murec(const SuiteOptions& o);
SuiteReport verify_hamdemo(const SuiteOptions& o);

const std::vector<std::string>& suite_names();
// Throws MalformedInput for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& o);

// The shifts checked for conjugacy and volume: the full shift, the
// bijective completion of jump_shift, compiled reversible machines and random
// permutation shifts.
std::vector<std::pair<std::string, GeneralizedShift>> corpus_shifts(std::uint64_t seed);

}  // namespace tkft
