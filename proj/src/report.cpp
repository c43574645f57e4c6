#include "evbayes/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace evbayes::report {

namespace {
constexpr const char* kMagic = "# evbayes report v1";
}

Document::Document(const std::string& command) {
  fields_.emplace_back("command", command);
}

void Document::set(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
}

void Document::set(const std::string& key, double value) {
  set(key, format(value));
}

void Document::set(const std::string& key, long value) {
  set(key, std::to_string(value));
}

std::string Document::format(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Table& Document::add_table(const std::string& name,
                           const std::vector<std::string>& columns) {
  tables_.push_back(Table{name, columns, {}});
  return tables_.back();
}

void Document::write(std::ostream& out) const {
  out << kMagic << "\n";
  for (const auto& [k, v] : fields_) out << k << " " << v << "\n";
  for (const auto& t : tables_) {
    out << "[" << t.name << "]\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? " " : "") << t.columns[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? " " : "") << row[i];
      }
      out << "\n";
    }
    out << "[end]\n";
  }
}

void Document::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  write(out);
}

const std::string& Document::get(const std::string& key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return v;
  }
  throw std::out_of_range("report field not present: " + key);
}

Document Document::read(std::istream& in) {
  Document doc;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw std::runtime_error("not an evbayes report document");
  }
  Table* open = nullptr;
  bool header_pending = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[end]") {
        open = nullptr;
        continue;
      }
      doc.tables_.push_back(Table{line.substr(1, line.size() - 2), {}, {}});
      open = &doc.tables_.back();
      header_pending = true;
      continue;
    }
    std::istringstream ls(line);
    if (open) {
      std::vector<std::string> cells;
      std::string cell;
      while (ls >> cell) cells.push_back(cell);
      if (header_pending) {
        open->columns = std::move(cells);
        header_pending = false;
      } else {
        open->rows.push_back(std::move(cells));
      }
    } else {
      std::string key;
      ls >> key;
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      doc.fields_.emplace_back(key, rest);
    }
  }
  return doc;
}

Document Document::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path);
  return read(in);
}

}  // namespace evbayes::report
