#include "textadv/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace textadv {

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t row, const std::string& what) {
  throw std::runtime_error(name + ": row " + std::to_string(row) + ": " + what);
}

}  // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable read_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes "" from an absent final field
  std::size_t row = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    ++row;
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_started) fail(name, row, "quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (in.peek() == '\n') in.get(c);
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) fail(name, row, "unterminated quoted field");
  // A final line without a trailing newline still counts as a record.
  if (field_started || !field.empty() || !record.empty()) end_record();

  if (records.empty()) throw std::runtime_error(name + ": empty CSV");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != table.header.size()) {
      fail(name, i + 1,
           "expected " + std::to_string(table.header.size()) + " fields, got " +
               std::to_string(records[i].size()));
    }
    table.rows.push_back(std::move(records[i]));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  return read_csv(in, path);
}

std::string csv_quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_quote(fields[i]);
  }
  out << "\r\n";
}

std::vector<DatasetExample> load_dataset_csv(const std::string& path,
                                             const DatasetLoadOptions& options) {
  CsvTable table = read_csv_file(path);

  std::optional<std::size_t> label_col = table.column(options.label_column);
  if (options.require_label && !label_col) {
    throw std::runtime_error(path + ": missing label column \"" + options.label_column + "\"");
  }

  std::vector<std::size_t> text_cols;
  if (options.text_columns.empty()) {
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      if (!label_col || i != *label_col) text_cols.push_back(i);
    }
  } else {
    for (const std::string& name : options.text_columns) {
      std::optional<std::size_t> col = table.column(name);
      if (!col) throw std::runtime_error(path + ": missing text column \"" + name + "\"");
      text_cols.push_back(*col);
    }
  }
  if (text_cols.empty()) throw std::runtime_error(path + ": no text columns");

  std::vector<DatasetExample> examples;
  examples.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::vector<std::string>& row = table.rows[r];
    DatasetExample example;
    if (text_cols.size() == 1) {
      example.text = AttackedText(row[text_cols.front()]);
    } else {
      std::vector<std::pair<std::string, std::string>> columns;
      for (std::size_t col : text_cols) columns.emplace_back(table.header[col], row[col]);
      example.text = AttackedText::from_columns(columns);
    }
    if (label_col) {
      const std::string& raw = row[*label_col];
      bool digits = !raw.empty() && raw.find_first_not_of("0123456789") == std::string::npos;
      if (!digits) fail(path, r + 2, "bad label \"" + raw + "\"");
      example.label = static_cast<std::size_t>(std::stoull(raw));
    }
    examples.push_back(std::move(example));
  }
  return examples;
}

}  // namespace textadv
