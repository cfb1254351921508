#pragma once

#include <string>

#include "diffbasis/certifier.hpp"
#include "diffbasis/exact_search.hpp"
#include "json.hpp"

namespace diffbasis {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

// Each document starts with "schema". With stable = true, fields that depend
// on timing or scheduling (elapsed_ms, nodes_explored) are left out.
Json to_json(const SearchResult& result, bool stable);
Json to_json(const ProofChainReport& report);
Json to_json(const RefutationResult& result);
Json to_json(const BoundCertificate& certificate, bool stable);

// Table row without the schema header.
Json search_row(const SearchResult& result, bool stable);
// One line of a streamed elimination trace.
Json trace_line(const EliminatedBox& box);

Json error_json(const std::string& message, int exit_code);

}  // namespace diffbasis
