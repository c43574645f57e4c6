// Self-describing structured-text result documents: a versioned header of
// "key value" lines, then optional named tables with a column-header row.
// Deterministic formatting (%.12g) so documents are stable for a given
// input, config and seed.
//
//   # evbayes report v1
//   command propriety
//   status proper
//   [partials]
//   level truncation log_value ...
//   0 8 -1.234 ...
//   [end]

#ifndef EVBAYES_REPORT_HPP
#define EVBAYES_REPORT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace evbayes::report {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

class Document {
 public:
  explicit Document(const std::string& command);

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long value);

  Table& add_table(const std::string& name,
                   const std::vector<std::string>& columns);

  void write(std::ostream& out) const;
  void write_file(const std::string& path) const;

  const std::string& get(const std::string& key) const;

  static Document read(std::istream& in);
  static Document read_file(const std::string& path);
  const std::vector<Table>& tables() const { return tables_; }

  static std::string format(double value);

 private:
  Document() = default;
  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<Table> tables_;
};

}  // namespace evbayes::report

#endif
