#pragma once
// Persistence (JSON for schemas, instances, catalogs, graphoids and cubes),
// ingestion of call records from CSV and the synthetic call-data generator.

#include "graphoid/cubes.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace graphoid {

using Json = nlohmann::json;

// Whole file, or standard input/output for "-".
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
Json read_json(const std::string& path);

Json value_to_json(const Value& v);
// Untyped literal; callers coerce it to the level type.
Value value_from_json(const Json& j);

Json schema_to_json(const DimensionSchema& schema);
DimensionSchema schema_from_json(const Json& j);

// "schema" is written as the schema object; on reading it may also be the
// name of an entry in `schemas`.
Json instance_to_json(const DimensionInstance& instance);
DimensionInstance instance_from_json(const Json& j, const std::vector<DimensionSchema>& schemas = {});

// {"schemas": [...], "instances": [...]}; every instance becomes a dimension.
Json catalog_to_json(const Catalog& catalog);
CatalogPtr catalog_from_json(const Json& j);
CatalogPtr load_catalog(const std::string& path);

Json graphoid_to_json(const Graphoid& g);
Graphoid graphoid_from_json(const Json& j, CatalogPtr catalog);
Graphoid load_graphoid(const std::string& path, CatalogPtr catalog);

Json cube_to_json(const Cube& c);
Cube cube_from_json(const Json& j, CatalogPtr catalog);

// Kind of a JSON document by its keys: "schema", "instance", "catalog",
// "graphoid", "cube" or "" when unrecognized.
std::string detect_kind(const Json& j);

// One row per (call, participant).
struct CallRecord {
    std::int64_t call_id = 0;
    std::int64_t caller = 0;
    std::vector<std::int64_t> participants;
    std::string start; // YYYY-MM-DDTHH:MM:SS
    std::string end;
    std::int64_t duration = 0; // seconds

    friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

inline constexpr const char* kCallsHeader = "CallId,CallerId,Participant,StartTime,EndTime,Duration";

std::vector<CallRecord> parse_calls(std::istream& in);
std::string calls_to_csv(const std::vector<CallRecord>& calls);

// The #Phone / #Call graphoid of a set of call records. The catalog needs a
// Phone dimension whose bottom level holds the phone ids, and a Time
// dimension with a Day level. Integer bottoms give node id = phone id;
// otherwise a phone's node id is 11 plus its position in the bottom level.
Graphoid calls_to_graphoid(const std::vector<CallRecord>& calls, CatalogPtr catalog);
Graphoid ingest_calls(std::istream& in, CatalogPtr catalog);

struct GeneratorConfig {
    std::size_t phone_count = 100;
    std::size_t user_count = 60;
    std::size_t call_count = 1000;
    std::size_t max_group_size = 4;
    Date first_day{2016, 10, 1};
    std::size_t day_count = 31;
    std::int64_t min_duration = 1;
    std::int64_t max_duration = 3600;
    std::vector<std::string> operators{"Claro", "Movistar", "Personal", "Vodafone", "ATT"};
    // (city, country)
    std::vector<std::pair<std::string, std::string>> cities{
        {"Buenos Aires", "Argentina"}, {"Salta", "Argentina"}, {"Cordoba", "Argentina"},
        {"Antwerp", "Belgium"},        {"Brussels", "Belgium"}, {"Hasselt", "Belgium"}};
    std::uint64_t seed = 1;

    static GeneratorConfig desk();
    static GeneratorConfig d1();
    static GeneratorConfig d2();
};

struct Dataset {
    CatalogPtr catalog;
    std::vector<CallRecord> calls;
    Graphoid graph;
};

Dataset generate(const GeneratorConfig& config);

} // namespace graphoid
