#ifndef INTENT_SYNTHETIC_HPP
#define INTENT_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>

#include "intent/ingest.hpp"

namespace intent {

// Mission counts per intent class for the synthetic log generator.
struct SyntheticSpec {
    std::size_t informational = 0;
    std::size_t navigational = 0;
    std::size_t transactional = 0;
    std::uint64_t seed = 0;
};

// Builds a labeled corpus from per-class behavioral templates:
// navigational missions are one or two repeats of a brand query with a
// single click whose domain echoes the query; informational missions
// reformulate multi-word queries across several sessions with long gaps
// and clicks on diverse domains; transactional missions fire click
// bursts that revisit a small set of shop domains. The class-conditional
// feature distributions are separable by construction, and navigational
// missions carry a strictly higher mean query/domain similarity than
// informational ones. Deterministic for a fixed spec.
LogCorpus generate_synthetic_corpus(const SyntheticSpec& spec);

} // namespace intent

#endif
