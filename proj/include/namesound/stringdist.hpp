#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "namesound/corpus.hpp"

namespace namesound::stringdist {

// All metrics compare Unicode code points of the given (already normalized)
// strings; they also accept arbitrary raw strings, including empty ones.

/// Levenshtein distance: insertions, deletions, substitutions.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Restricted Damerau-Levenshtein (optimal string alignment): adjacent
/// transpositions cost one, and no substring is edited twice. Differs from
/// the unrestricted metric on inputs like ("ca", "abc"), 3 here versus 2.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

/// Jaro similarity with the Winkler prefix boost (prefix up to 4, p = 0.1).
double jaro_winkler_similarity(std::string_view a, std::string_view b);

enum class Metric { Edit, DamerauLevenshtein, JaroWinkler };

std::optional<Metric> parse_metric(std::string_view tag);  // edit | dl | jw
std::string_view to_string(Metric m);

/// Primary key of an ordering; ties always fall back to the candidate's
/// normalized string.
enum class OrderingKey { EditAscending, DamerauAscending };

struct OrderingFunction {
  OrderingKey key = OrderingKey::EditAscending;

  std::size_t score(std::string_view query, std::string_view candidate) const;
};

std::optional<OrderingKey> parse_ordering(std::string_view tag);  // edit | dl

/// Sorts `candidates` by (distance to `query`, candidate) ascending.
std::vector<Name> order_candidates(const Name& query, std::vector<Name> candidates,
                                   OrderingFunction f = {});

}  // namespace namesound::stringdist
