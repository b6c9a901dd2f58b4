#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "textadv/attack.hpp"
#include "textadv/attacked_text.hpp"

namespace textadv {

enum class WordMark { kSame, kSubstituted, kInserted, kDeleted };

// Word-level edits of a result pair, read off the perturbed text's ancestry:
// each surviving word marks the original position it came from, unmapped
// perturbed words are insertions, and original positions nothing maps to are
// deletions.
struct TextDiff {
  std::vector<WordMark> original;   // kSame / kSubstituted / kDeleted
  std::vector<WordMark> perturbed;  // kSame / kSubstituted / kInserted
};
TextDiff word_diff(const AttackedText& original, const AttackedText& perturbed);

// Probability vectors render as "[p0, p1, ...]" with round-trip-exact
// numbers; text outputs render verbatim.
std::string render_victim_output(const VictimOutput& output);

// Streaming observer over one attack run: a record per result in dataset
// order, then one closing summary.
class ResultWriter {
 public:
  virtual ~ResultWriter() = default;
  virtual void write_result(const AttackResult& result, std::size_t index) = 0;
  virtual void write_summary(const AttackSummary& summary) = 0;
};

// Human-readable records. Changed words are wrapped in [[..]]; with color on
// they are also ANSI-highlighted (original red, perturbed green).
std::unique_ptr<ResultWriter> make_plain_writer(std::ostream& out, bool color);

// RFC-4180 rows under the header original_text,perturbed_text,
// original_output,perturbed_output,ground_truth,status,num_queries. The
// header is written up front so an empty run still yields a valid file.
std::unique_ptr<ResultWriter> make_csv_writer(std::ostream& out);

// Standalone page with one table row per result; word edits are marked with
// <span> classes (sub/ins/del) on both sides.
std::unique_ptr<ResultWriter> make_html_writer(std::ostream& out);

// One JSON object per result plus a trailing {"summary": ...} record.
std::unique_ptr<ResultWriter> make_jsonl_writer(std::ostream& out);

// Fans a single result stream out to every attached writer, in order.
class WriterSet final : public ResultWriter {
 public:
  void add(std::unique_ptr<ResultWriter> writer);
  std::size_t size() const { return writers_.size(); }

  void write_result(const AttackResult& result, std::size_t index) override;
  void write_summary(const AttackSummary& summary) override;

 private:
  std::vector<std::unique_ptr<ResultWriter>> writers_;
};

// Recovers the summary record from a JSON-lines results file. The doubles
// reload bit-exactly. Throws when the stream has no summary record.
AttackSummary read_jsonl_summary(std::istream& in);

}  // namespace textadv
