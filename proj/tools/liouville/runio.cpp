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

#include "runio.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "liouville/errors.hpp"

namespace liouville::tools {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_i(std::int64_t v) { return std::to_string(v); }

Row& Row::cell(double v) { return cell(fmt_g(v)); }
Row& Row::cell(std::int64_t v) { return cell(fmt_i(v)); }
Row& Row::cell(int v) { return cell(static_cast<std::int64_t>(v)); }

Row& Row::cell(const std::string& v) {
  if (!first_) line_ += ',';
  first_ = false;
  line_ += v;
  return *this;
}

void Table::resize(std::int64_t n_blocks) {
  blocks.assign(static_cast<std::size_t>(n_blocks), {});
  done.assign(static_cast<std::size_t>(n_blocks), 0);
}

std::vector<std::string>& Table::block(std::int64_t i) {
  return blocks[static_cast<std::size_t>(i)];
}

void Table::mark_done(std::int64_t i) { done[static_cast<std::size_t>(i)] = 1; }

void Table::append_serial(std::string line) {
  blocks.push_back({std::move(line)});
  done.push_back(1);
}

std::string Table::render(bool only_done) const {
  std::string out = header;
  out += '\n';
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (only_done && !done[i]) continue;
    for (const std::string& row : blocks[i]) {
      out += row;
      out += '\n';
    }
  }
  return out;
}

std::int64_t Table::rows_done() const {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (done[i]) n += static_cast<std::int64_t>(blocks[i].size());
  }
  return n;
}

int thread_budget() {
  const char* raw = std::getenv("LIOUVILLE_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0') return 1;
  if (v < 1) return 1;
  if (v > 64) return 64;
  return static_cast<int>(v);
}

void parallel_replicates(std::int64_t n, int threads,
                         const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  int workers = threads < 1 ? 1 : threads;
  if (static_cast<std::int64_t>(workers) > n) workers = static_cast<int>(n);
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr first;
  auto work = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        stop.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (std::thread& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

namespace {

std::string stamp(const char* format) {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, format, &tm);
  return buf;
}

}  // namespace

std::string utc_compact_stamp() { return stamp("%Y%m%dT%H%M%SZ"); }
std::string utc_iso_stamp() { return stamp("%Y-%m-%dT%H:%M:%SZ"); }

std::filesystem::path make_run_dir(const std::string& output_dir,
                                   const std::string& command,
                                   const std::string& label) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) {
    throw_invalid("output-dir-create",
                  "cannot create output directory " + output_dir);
  }
  if (!label.empty()) {
    fs::path dir = fs::path(output_dir) / (command + "-" + label);
    if (fs::exists(dir)) {
      throw_invalid("run-dir-exists",
                    "refusing to overwrite " + dir.string());
    }
    fs::create_directories(dir);
    return dir;
  }
  std::string base = command + "-" + utc_compact_stamp();
  fs::path dir = fs::path(output_dir) / base;
  for (int k = 2; fs::exists(dir); ++k) {
    if (k > 99) {
      throw_invalid("run-dir-exists", "cannot find a free run directory");
    }
    dir = fs::path(output_dir) / (base + "-" + std::to_string(k));
  }
  fs::create_directories(dir);
  return dir;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    throw_invalid("write-failed", "cannot write " + path.string());
  }
}

}  // namespace liouville::tools
