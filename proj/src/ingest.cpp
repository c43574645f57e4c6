#include "evbayes/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace evbayes::ingest {

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::excesses: return "excesses";
    case Mode::maxima: return "maxima";
    case Mode::raw_threshold: return "raw+threshold";
    case Mode::raw_blocks: return "raw+blocks";
  }
  return "?";
}

std::vector<double> read_column(std::istream& in, const std::string& source_name) {
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    // strip whitespace
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    if (tok[0] == '#') continue;

    std::size_t used = 0;
    double v = 0.0;
    bool numeric = false;
    try {
      v = std::stod(tok, &used);
      numeric = used == tok.size();
    } catch (const std::exception&) {
      numeric = false;
    }
    if (!numeric) {
      if (first_content) {  // header line
        first_content = false;
        continue;
      }
      std::ostringstream msg;
      msg << source_name << ":" << lineno << ": not a number: '" << tok << "'";
      throw std::runtime_error(msg.str());
    }
    first_content = false;
    values.push_back(v);
  }
  if (values.empty()) {
    throw std::runtime_error(source_name + ": no numeric data found");
  }
  return values;
}

std::vector<double> read_column_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return read_column(in, path);
}

evd::ExcessSample excesses_over_threshold(const std::vector<double>& raw,
                                          double threshold) {
  std::vector<double> z;
  for (double x : raw) {
    if (x > threshold) z.push_back(x - threshold);
  }
  if (z.empty()) {
    std::ostringstream msg;
    msg << "no observations exceed the threshold " << threshold;
    throw std::runtime_error(msg.str());
  }
  return evd::ExcessSample(threshold, std::move(z));
}

evd::BlockMaximaSample block_maxima(const std::vector<double>& raw,
                                    int block_size) {
  if (block_size <= 0) throw std::invalid_argument("block size must be positive");
  std::vector<double> maxima;
  const std::size_t blocks = raw.size() / block_size;
  if (blocks == 0) {
    throw std::runtime_error("fewer observations than one complete block");
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    double mx = raw[b * block_size];
    for (int i = 1; i < block_size; ++i) {
      mx = std::max(mx, raw[b * block_size + i]);
    }
    maxima.push_back(mx);
  }
  return evd::BlockMaximaSample(std::move(maxima));
}

evd::ExcessSample as_excesses(const std::vector<double>& values, double threshold) {
  return evd::ExcessSample(threshold, values);
}

evd::BlockMaximaSample as_maxima(const std::vector<double>& values) {
  return evd::BlockMaximaSample(values);
}

}  // namespace evbayes::ingest
