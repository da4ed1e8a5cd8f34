#ifndef LOADCLUST_SYNTH_HPP
#define LOADCLUST_SYNTH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loadclust/ingest.hpp"

namespace loadclust {

// A behavioural ground-truth archetype for the generator.
struct Archetype {
    std::string name;
    double base_load = 200.0;        // watts
    double peak_magnitude = 1000.0;  // watts above base
    double peak_time_mean = 120.0;   // minutes after 16:00, in [0,235]
    double peak_time_jitter = 0.0;   // std of daily peak-time noise, minutes
    double trough_time_jitter = 0.0;
    double energy_scale = 1.0;
};

struct SynthSpec {
    struct Group {
        Archetype archetype;
        int households = 1;
    };
    std::vector<Group> archetypes;
    int days = 2;  // working days
    std::uint64_t seed = 0;

    void validate() const;  // throws BadCount on violated invariants
};

// The study-scale default: 180 households over 250 working days, four
// archetypes on the usage x variability grid.
SynthSpec default_corpus_spec(std::uint64_t seed, int households = 180, int days = 250);

// Two archetypes differing only in peak-time jitter (5 vs 60 minutes).
SynthSpec two_archetype_spec(std::uint64_t seed, int households_per_archetype = 45,
                             int days = 100);

// Emits 48 in-window readings per household and working day: a base load plus
// a peak bump centred at the jittered peak time and a dip at the jittered
// trough time, snapped to the slot grid. Deterministic given spec.seed.
std::vector<MeterReading> generate(const SynthSpec& spec);

// household_id -> archetype name, consistent with generate's output order.
std::map<std::string, std::string> ground_truth_labels(const SynthSpec& spec);

}  // namespace loadclust

#endif
