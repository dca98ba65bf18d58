#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "fuzzsum/json.hpp"

#include "fuzzsum/domain.hpp"

namespace fuzzsum {

/// Schema file layout:
///
///   { "relation": "Employee",
///     "attributes": [ { "name": "Age", "ftype": "FTYPE2", "cluster_count": 3,
///                       "labels": [ {"name": "Young", "trapezoid": [0,0,25,35]}, "Adult", ... ],
///                       "similarity": [[1,0.4,...], ...] } ] }
///
/// A label may be given as a bare string. cluster_count defaults to the
/// number of labels. The result is validated; violations raise SchemaError.
Schema schema_from_json(const Json& j);
Json schema_to_json(const Schema& schema);
Schema load_schema(const std::string& path);

/// Parses one CSV cell: bare number, `$Label`, `~a,b,c,d`, `#UNKNOWN`,
/// `#UNDEFINED`, `#NULL`. An empty cell is Null.
FuzzyValue parse_cell(std::string_view cell);

/// Reads a dataset whose header row is the tuple-id column followed by every
/// schema attribute (any order). Trapezoid cells may be quoted or left bare;
/// a bare `~a,b,c,d` spans four comma-separated fields.
Dataset read_dataset_csv(std::istream& in, const Schema& schema);
Dataset load_dataset_csv(const std::string& path, const Schema& schema);

/// Reads a whole file, raising IoError when it cannot be opened.
std::string read_file(const std::string& path);
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fuzzsum
