#pragma once

#include <string>

#include <json.hpp>

#include "flasque/homalg/complex.hpp"
#include "flasque/homalg/module.hpp"
#include "flasque/sheaf/mod_sheaf.hpp"
#include "flasque/sheaf/presheaf.hpp"
#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

using Json = nlohmann::ordered_json;

/// Every document carries "format": 1 and a "kind". Parsing errors are
/// InputError naming the offending field.
inline constexpr int kFormatVersion = 1;

Json to_json(const FinPoset& p);
FinPoset poset_from_json(const Json& j);

Json to_json(const FinCategory& c);
FinCategory category_from_json(const Json& j);

Json to_json(const MonotoneMap& f);
MonotoneMap map_from_json(const Json& j);

/// Free modules are written as their rank; others as
/// {"generators": n, "relations": [[...], ...]} with one row per relation.
Json to_json(const FPModule& m);
FPModule module_from_json(const Json& j, const Ring& ring);

/// The site is embedded unless `embed_site` is false; when the document has
/// no "site", `site` must be supplied.
Json to_json(const SetSheaf& f, bool embed_site = true);
SetSheaf set_sheaf_from_json(const Json& j, PosetPtr site = nullptr);

Json to_json(const ModSheaf& f, bool embed_site = true);
ModSheaf mod_sheaf_from_json(const Json& j, PosetPtr site = nullptr);

Json to_json(const SetPresheaf& f, bool embed_category = true);
SetPresheaf presheaf_from_json(const Json& j, CategoryPtr category = nullptr);

/// {"H0": "Z", "H1": "Z/2", ...}
Json to_json(const CohomologyTable& t);

/// Reads a file; parse errors carry line and column.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);
std::string read_text_file(const std::string& path);

/// Parses a document of any kind and serializes it again.
Json round_trip(const Json& j);

/// The "kind" field, or an InputError.
std::string json_kind(const Json& j);

}  // namespace flasque
