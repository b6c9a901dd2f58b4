#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textadv/attack.hpp"

namespace textadv {

// A parsed CSV file: one header row plus rectangular data rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Header position of a column, exact match.
  std::optional<std::size_t> column(std::string_view name) const;
};

// RFC-4180 reader: quoted fields may contain commas, doubled quotes, and
// line breaks; rows end with LF or CRLF. Every row must match the header
// width. `name` labels parse errors.
CsvTable read_csv(std::istream& in, const std::string& name = "<stream>");
CsvTable read_csv_file(const std::string& path);

// Quotes a field only when it contains a comma, quote, or line break;
// embedded quotes are doubled.
std::string csv_quote(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

struct DatasetLoadOptions {
  // Text columns in input order; empty selects every non-label column.
  std::vector<std::string> text_columns;
  std::string label_column = "label";
  // Reject files without the label column instead of loading unlabeled
  // examples.
  bool require_label = false;
};

// Loads attack/train/eval examples. A single text column becomes a plain
// input; several become a column-labeled input. Labels, when the column
// exists, must be non-negative integers.
std::vector<DatasetExample> load_dataset_csv(const std::string& path,
                                             const DatasetLoadOptions& options = {});

}  // namespace textadv
