// Data ingestion: a single numeric column (optional header line, blank lines
// and '#' comments skipped) into a validated sample. Raw modes extract
// excesses over a threshold or per-block maxima.

#ifndef EVBAYES_INGEST_HPP
#define EVBAYES_INGEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "evbayes/evd.hpp"

namespace evbayes::ingest {

enum class Mode { excesses, maxima, raw_threshold, raw_blocks };

const char* mode_name(Mode m);

// Parses one numeric value per line; a non-numeric first line is treated as
// a header and skipped. Throws std::runtime_error naming the offending line
// on malformed input or when nothing remains.
std::vector<double> read_column(std::istream& in, const std::string& source_name);
std::vector<double> read_column_file(const std::string& path);

// Excesses z = x - u of the raw values above u; error when none exceed.
evd::ExcessSample excesses_over_threshold(const std::vector<double>& raw,
                                          double threshold);

// Per-block maxima of consecutive blocks of `block_size` values; a trailing
// partial block is dropped. Error when no complete block exists.
evd::BlockMaximaSample block_maxima(const std::vector<double>& raw,
                                    int block_size);

// Values already in sample form (sorted + tie-checked by the sample types).
evd::ExcessSample as_excesses(const std::vector<double>& values, double threshold);
evd::BlockMaximaSample as_maxima(const std::vector<double>& values);

}  // namespace evbayes::ingest

#endif
