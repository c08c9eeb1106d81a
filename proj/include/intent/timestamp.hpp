#ifndef INTENT_TIMESTAMP_HPP
#define INTENT_TIMESTAMP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace intent {

// Seconds since the Unix epoch, UTC, second precision. Query logs carry
// timestamps as `YYYY-MM-DD HH:MM:SS`; anything finer is truncated at
// ingest.
using EpochSeconds = std::int64_t;

// Strict parse of `YYYY-MM-DD HH:MM:SS` including calendar validation
// (leap years, days per month). Returns nullopt on any deviation.
std::optional<EpochSeconds> try_parse_timestamp(std::string_view text);

std::string format_timestamp(EpochSeconds t);

} // namespace intent

#endif
