#include "textadv/writers.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

#include "textadv/dataset.hpp"

namespace textadv {

namespace {

using nlohmann::json;

std::string render_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

TextDiff word_diff(const AttackedText& original, const AttackedText& perturbed) {
  TextDiff diff;
  diff.original.assign(original.num_words(), WordMark::kDeleted);
  diff.perturbed.assign(perturbed.num_words(), WordMark::kInserted);
  for (std::size_t i = 0; i < perturbed.num_words(); ++i) {
    int oi = perturbed.original_index(i);
    if (oi < 0 || static_cast<std::size_t>(oi) >= original.num_words()) continue;
    bool changed = perturbed.word_at(i) != original.word_at(static_cast<std::size_t>(oi));
    diff.original[static_cast<std::size_t>(oi)] =
        changed ? WordMark::kSubstituted : WordMark::kSame;
    diff.perturbed[i] = changed ? WordMark::kSubstituted : WordMark::kSame;
  }
  return diff;
}

std::string render_victim_output(const VictimOutput& output) {
  if (const auto* text = std::get_if<std::string>(&output)) return *text;
  const auto& scores = std::get<std::vector<double>>(output);
  std::string rendered = "[";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (i > 0) rendered += ", ";
    rendered += render_double(scores[i]);
  }
  rendered += "]";
  return rendered;
}

void WriterSet::add(std::unique_ptr<ResultWriter> writer) {
  writers_.push_back(std::move(writer));
}

void WriterSet::write_result(const AttackResult& result, std::size_t index) {
  for (auto& writer : writers_) writer->write_result(result, index);
}

void WriterSet::write_summary(const AttackSummary& summary) {
  for (auto& writer : writers_) writer->write_summary(summary);
}

namespace {

// --- plain text ---------------------------------------------------------------

class PlainWriter final : public ResultWriter {
 public:
  PlainWriter(std::ostream& out, bool color) : out_(out), color_(color) {}

  void write_result(const AttackResult& result, std::size_t index) override {
    std::string rule(30, '-');
    out_ << rule << " Result " << (index + 1) << " " << rule << "\n";
    out_ << "[" << to_string(result.status) << "] "
         << render_victim_output(result.original_output);
    if (result.status != AttackStatus::kSkipped) {
      out_ << " --> " << render_victim_output(result.perturbed_output);
    }
    out_ << "\n\n";
    TextDiff diff = word_diff(result.original, result.perturbed);
    out_ << marked_text(result.original, diff.original, /*green=*/false) << "\n";
    if (result.status != AttackStatus::kSkipped) {
      out_ << "\n" << marked_text(result.perturbed, diff.perturbed, /*green=*/true) << "\n";
    }
    out_ << "\n";
  }

  void write_summary(const AttackSummary& summary) override {
    out_ << "Number of successful attacks: " << summary.successes << "\n"
         << "Number of failed attacks: " << summary.failures << "\n"
         << "Number of skipped attacks: " << summary.skipped << "\n"
         << "Number of maximized attacks: " << summary.maximized << "\n"
         << "Attack success rate: " << render_double(100.0 * summary.success_rate) << "%\n"
         << "Average perturbed word %: "
         << render_double(summary.mean_percent_words_perturbed) << "%\n"
         << "Average num. queries: " << render_double(summary.mean_queries) << "\n";
    out_.flush();
  }

 private:
  std::string marked_text(const AttackedText& text, const std::vector<WordMark>& marks,
                          bool green) const {
    const char* open = color_ ? (green ? "\x1b[92m[[" : "\x1b[91m[[") : "[[";
    const char* close = color_ ? "]]\x1b[0m" : "]]";
    std::string rendered;
    for (std::size_t i = 0; i < text.num_words(); ++i) {
      rendered += text.separators()[i];
      if (marks[i] == WordMark::kSame) {
        rendered += text.word_at(i);
      } else {
        rendered += open;
        rendered += text.word_at(i);
        rendered += close;
      }
    }
    rendered += text.separators()[text.num_words()];
    return rendered;
  }

  std::ostream& out_;
  bool color_;
};

// --- csv ----------------------------------------------------------------------

class CsvWriter final : public ResultWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {
    write_csv_row(out_, {"original_text", "perturbed_text", "original_output",
                         "perturbed_output", "ground_truth", "status", "num_queries"});
  }

  void write_result(const AttackResult& result, std::size_t) override {
    write_csv_row(out_, {result.original.text(), result.perturbed.text(),
                         render_victim_output(result.original_output),
                         render_victim_output(result.perturbed_output),
                         result.ground_truth ? std::to_string(*result.ground_truth) : "",
                         std::string(to_string(result.status)),
                         std::to_string(result.num_queries)});
  }

  void write_summary(const AttackSummary&) override { out_.flush(); }

 private:
  std::ostream& out_;
};

// --- html ---------------------------------------------------------------------

std::string html_escape(std::string_view text) {
  std::string escaped;
  escaped.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': escaped += "&amp;"; break;
      case '<': escaped += "&lt;"; break;
      case '>': escaped += "&gt;"; break;
      default: escaped += c;
    }
  }
  return escaped;
}

class HtmlWriter final : public ResultWriter {
 public:
  explicit HtmlWriter(std::ostream& out) : out_(out) {
    out_ << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
            "<title>attack results</title>\n<style>\n"
            "table { border-collapse: collapse; }\n"
            "td, th { border: 1px solid #999; padding: 4px 8px; vertical-align: top; }\n"
            ".sub { background: #ffd0d0; }\n"
            ".ins { background: #d0ffd0; }\n"
            ".del { background: #ffd0d0; text-decoration: line-through; }\n"
            "</style>\n</head>\n<body>\n<table>\n"
            "<tr><th>#</th><th>status</th><th>original</th><th>perturbed</th>"
            "<th>queries</th></tr>\n";
  }

  void write_result(const AttackResult& result, std::size_t index) override {
    TextDiff diff = word_diff(result.original, result.perturbed);
    out_ << "<tr><td>" << (index + 1) << "</td><td>" << to_string(result.status) << "</td><td>"
         << marked_html(result.original, diff.original, /*original_side=*/true) << "</td><td>"
         << marked_html(result.perturbed, diff.perturbed, /*original_side=*/false)
         << "</td><td>" << result.num_queries << "</td></tr>\n";
  }

  void write_summary(const AttackSummary& summary) override {
    out_ << "</table>\n<p>successes: " << summary.successes
         << ", failures: " << summary.failures << ", skipped: " << summary.skipped
         << ", maximized: " << summary.maximized
         << ", success rate: " << render_double(100.0 * summary.success_rate)
         << "%, mean perturbed word %: "
         << render_double(summary.mean_percent_words_perturbed)
         << ", mean queries: " << render_double(summary.mean_queries) << "</p>\n"
         << "</body>\n</html>\n";
    out_.flush();
  }

 private:
  static const char* mark_class(WordMark mark, bool original_side) {
    switch (mark) {
      case WordMark::kSubstituted: return "sub";
      case WordMark::kInserted: return "ins";
      case WordMark::kDeleted: return "del";
      case WordMark::kSame: break;
    }
    (void)original_side;
    return nullptr;
  }

  std::string marked_html(const AttackedText& text, const std::vector<WordMark>& marks,
                          bool original_side) const {
    std::string rendered;
    for (std::size_t i = 0; i < text.num_words(); ++i) {
      rendered += html_escape(text.separators()[i]);
      if (const char* cls = mark_class(marks[i], original_side)) {
        rendered += "<span class=\"";
        rendered += cls;
        rendered += "\">";
        rendered += html_escape(text.word_at(i));
        rendered += "</span>";
      } else {
        rendered += html_escape(text.word_at(i));
      }
    }
    rendered += html_escape(text.separators()[text.num_words()]);
    return rendered;
  }

  std::ostream& out_;
};

// --- json lines -----------------------------------------------------------------

json output_to_json(const VictimOutput& output) {
  if (const auto* text = std::get_if<std::string>(&output)) return *text;
  return std::get<std::vector<double>>(output);
}

class JsonlWriter final : public ResultWriter {
 public:
  explicit JsonlWriter(std::ostream& out) : out_(out) {}

  void write_result(const AttackResult& result, std::size_t index) override {
    json record{{"index", index},
                {"status", to_string(result.status)},
                {"original_text", result.original.text()},
                {"perturbed_text", result.perturbed.text()},
                {"original_output", output_to_json(result.original_output)},
                {"perturbed_output", output_to_json(result.perturbed_output)},
                {"original_score", result.original_score},
                {"perturbed_score", result.perturbed_score},
                {"num_queries", result.num_queries},
                {"wall_time_seconds", result.wall_time_seconds}};
    record["ground_truth"] =
        result.ground_truth ? json(*result.ground_truth) : json(nullptr);
    out_ << record.dump() << "\n";
  }

  void write_summary(const AttackSummary& summary) override {
    json record{{"summary",
                 {{"total", summary.total},
                  {"successes", summary.successes},
                  {"failures", summary.failures},
                  {"skipped", summary.skipped},
                  {"maximized", summary.maximized},
                  {"success_rate", summary.success_rate},
                  {"mean_percent_words_perturbed", summary.mean_percent_words_perturbed},
                  {"mean_queries", summary.mean_queries},
                  {"total_wall_time_seconds", summary.total_wall_time_seconds}}}};
    out_ << record.dump() << "\n";
    out_.flush();
  }

 private:
  std::ostream& out_;
};

}  // namespace

std::unique_ptr<ResultWriter> make_plain_writer(std::ostream& out, bool color) {
  return std::make_unique<PlainWriter>(out, color);
}

std::unique_ptr<ResultWriter> make_csv_writer(std::ostream& out) {
  return std::make_unique<CsvWriter>(out);
}

std::unique_ptr<ResultWriter> make_html_writer(std::ostream& out) {
  return std::make_unique<HtmlWriter>(out);
}

std::unique_ptr<ResultWriter> make_jsonl_writer(std::ostream& out) {
  return std::make_unique<JsonlWriter>(out);
}

AttackSummary read_jsonl_summary(std::istream& in) {
  std::string line;
  std::optional<AttackSummary> found;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json record = json::parse(line);
    if (!record.is_object() || !record.contains("summary")) continue;
    const json& s = record["summary"];
    AttackSummary summary;
    summary.total = s.at("total").get<std::size_t>();
    summary.successes = s.at("successes").get<std::size_t>();
    summary.failures = s.at("failures").get<std::size_t>();
    summary.skipped = s.at("skipped").get<std::size_t>();
    summary.maximized = s.at("maximized").get<std::size_t>();
    summary.success_rate = s.at("success_rate").get<double>();
    summary.mean_percent_words_perturbed = s.at("mean_percent_words_perturbed").get<double>();
    summary.mean_queries = s.at("mean_queries").get<double>();
    summary.total_wall_time_seconds = s.at("total_wall_time_seconds").get<double>();
    found = summary;
  }
  if (!found) throw std::runtime_error("JSON-lines stream has no summary record");
  return *found;
}

}  // namespace textadv
