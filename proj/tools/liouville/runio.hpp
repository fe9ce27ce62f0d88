// Copyright 2026 The Liouville Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIOUVILLE_TOOLS_RUNIO_HPP
#define LIOUVILLE_TOOLS_RUNIO_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace liouville::tools {

// 17 significant digits; round-trips every double through strtod.
std::string fmt_g(double v);
// Short human form ("%g") used only inside CSV header labels.
std::string fmt_short(double v);
std::string fmt_i(std::int64_t v);

// One CSV row under construction.  Cells are joined by commas without
// quoting; every emitted cell is numeric.
class Row {
 public:
  Row& cell(double v);
  Row& cell(std::int64_t v);
  Row& cell(int v);
  Row& cell(const std::string& v);
  const std::string& str() const { return line_; }

 private:
  std::string line_;
  bool first_ = true;
};

// Replicate-ordered row storage.  Workers fill disjoint blocks and the
// merge order is the block index, never completion order, so parallel
// runs render byte-identical CSVs.
struct Table {
  std::string header;
  std::vector<std::vector<std::string>> blocks;
  std::vector<char> done;

  void resize(std::int64_t n_blocks);
  std::vector<std::string>& block(std::int64_t i);
  void mark_done(std::int64_t i);
  // Appends a fresh, already-completed single-row block.
  void append_serial(std::string line);
  // Header plus every row, LF line endings.  only_done skips blocks whose
  // mark_done was never reached (partial output headed for quarantine).
  std::string render(bool only_done) const;
  std::int64_t rows_done() const;
};

// LIOUVILLE_THREADS clamped to [1, 64]; unset or unparsable reads as 1.
int thread_budget();

// Runs body(0), ..., body(n-1) on up to `threads` workers pulling indices
// from a shared counter.  The first exception wins, remaining workers
// drain, and the winner is rethrown on the calling thread after the join.
void parallel_replicates(std::int64_t n, int threads,
                         const std::function<void(std::int64_t)>& body);

std::string utc_compact_stamp();
std::string utc_iso_stamp();

// <output_dir>/<command>-<label or timestamp>.  A labeled directory that
// already exists is refused so no artifact is ever overwritten; timestamp
// collisions fall back to a numeric suffix.
std::filesystem::path make_run_dir(const std::string& output_dir,
                                   const std::string& command,
                                   const std::string& label);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace liouville::tools

#endif  // LIOUVILLE_TOOLS_RUNIO_HPP
