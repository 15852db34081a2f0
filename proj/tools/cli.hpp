#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "conesphere/geometry.hpp"
#include "conesphere/result.hpp"

namespace conesphere::cli {

enum class Format { Csv, Jsonl };

struct QueryRecord {
  std::optional<CanonicalGeometry> canonical;
  std::optional<SceneGeometry> scene;
  std::optional<Method> method;
  bool degrees = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
};

/// One output row: the reduced geometry and either a result or an error.
struct ResultRecord {
  std::size_t row = 0;
  CanonicalGeometry geom;
  VolumeResult result;
  std::string error;
  bool ok() const { return error.empty(); }
};

/// A batch input row: a parsed query or the reason it could not be parsed.
struct ParsedRow {
  std::optional<QueryRecord> query;
  std::string error;
};

/// Throws InvalidInput on a malformed record.
QueryRecord parse_json_record(const std::string& line);

/// Rows in input order; blank lines are skipped. A CSV header row is required.
std::vector<ParsedRow> read_batch(std::istream& in, Format f);

/// Reduced geometry with the angle converted to radians.
CanonicalGeometry resolve(const QueryRecord& q);

void write_header(std::ostream& out, Format f);
void write_record(std::ostream& out, const ResultRecord& r, Format f);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace conesphere::cli
