#pragma once

#include <iosfwd>
#include <string>

#include "hinrisk/csv.hpp"
#include "hinrisk/hin.hpp"

namespace hinrisk {

// Tabular sources for one network, in the flat-file layout:
//   nodes:      id,type,timestamp        (timestamp blank or integer epoch-days)
//   attributes: id,attr_name,attr_value  (attr_value is a categorical token)
//   edges:      id,src,dst,relation,timestamp
//   labels:     id,risky                 (risky in {0,1}; news: 1 = negative polarity)
struct HinSources {
  csv::Table nodes;
  csv::Table attributes;
  csv::Table edges;
  csv::Table labels;
};

// Parses and validates the four tables into a fully indexed Hin. Errors carry
// file, line and column: unknown types, dangling edges, duplicate ids,
// relation/endpoint mismatches, malformed numbers.
Hin load_hin(const Schema& schema, const HinSources& sources);

// Convenience wrapper reading the four files from disk.
Hin load_hin_files(const Schema& schema, const std::string& nodes_path,
                   const std::string& attributes_path, const std::string& edges_path,
                   const std::string& labels_path);

// Writes a Hin back out in the same four-file layout (used by the synthetic
// generator and round-trip tests).
void write_hin_files(const Hin& hin, const std::string& nodes_path,
                     const std::string& attributes_path, const std::string& edges_path,
                     const std::string& labels_path);

}  // namespace hinrisk
