#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dynrad {

struct CampaignCounts {
    int transitivity = 10'000;
    int arithmetic = 100'000;
    int cover_trials = 200;
    int heavy_trials = 200;
    int async_trials = 200;
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The randomized property campaign behind `verify-lemmas`: covering
// reflexivity/transitivity, both ceil-log2 lemmas, certificate validity of
// every cover construction, the heavy-preimage argmax and bound, and the
// async in-degree bound. Deterministic per seed.
std::vector<CheckLine> run_lemma_campaign(std::uint64_t seed, const CampaignCounts& counts);

}  // namespace dynrad
