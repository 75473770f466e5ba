#pragma once

// Trace CSV: k,t_k,gamma_k,x_0..x_{d-1},V,u_value,min_norm,step_norm,noise_norm.
// Reals use the shortest decimal form that parses back to the same double.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "incluso/engine.hpp"
#include "incluso/harness/config.hpp"

namespace incluso::harness {

inline void append_double(std::string& out, double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  out.append(buf, end);
}

inline std::string csv_header(Index dim) {
  std::string h = "k,t_k,gamma_k";
  for (Index i = 0; i < dim; ++i) h += ",x_" + std::to_string(i);
  h += ",V,u_value,min_norm,step_norm,noise_norm\n";
  return h;
}

inline std::string trace_to_csv(const Trace& tr) {
  std::string out = csv_header(tr.dim());
  out.reserve(out.size() + tr.size() * static_cast<std::size_t>(24 * (tr.dim() + 8)));
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const auto& r = tr.records[k];
    out += std::to_string(k);
    for (double v : {r.t, r.gamma}) {
      out.push_back(',');
      append_double(out, v);
    }
    for (Index i = 0; i < tr.dim(); ++i) {
      out.push_back(',');
      append_double(out, tr.iterates[k][i]);
    }
    for (double v : {r.V, r.u_value, r.min_norm, r.step_norm, r.noise_norm}) {
      out.push_back(',');
      append_double(out, v);
    }
    out.push_back('\n');
  }
  return out;
}

/// Writes to a sibling temporary file, then renames over the target.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// The declared columns of a trace CSV, row by row.
struct TraceTable {
  Index dim = 0;
  std::vector<std::size_t> k;
  std::vector<Vector> x;
  std::vector<StepRecord> records;  // y_gap is not stored and stays 0

  std::size_t size() const { return k.size(); }
};

inline TraceTable parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("trace csv: empty file");
  std::vector<std::string> header;
  {
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      header.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
  }
  if (header.size() < 9) throw UsageError("trace csv: too few columns");
  TraceTable t;
  t.dim = static_cast<Index>(header.size() - 8);
  if (csv_header(t.dim) != line + "\n") throw UsageError("trace csv: unexpected header");
  const std::size_t ncol = header.size();
  std::vector<double> cells(ncol);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t start = 0;
    std::size_t col = 0;
    std::size_t kval = 0;
    while (start <= line.size()) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      if (col >= ncol) throw UsageError("trace csv line " + std::to_string(lineno) + ": too many cells");
      const char* b = line.data() + start;
      const char* e = line.data() + comma;
      std::from_chars_result res{};
      if (col == 0) res = std::from_chars(b, e, kval);
      else res = std::from_chars(b, e, cells[col]);
      if (res.ec != std::errc() || res.ptr != e) {
        throw UsageError("trace csv line " + std::to_string(lineno) + ": bad cell in column " + header[col]);
      }
      ++col;
      start = comma + 1;
    }
    if (col != ncol) throw UsageError("trace csv line " + std::to_string(lineno) + ": too few cells");
    if (kval != t.k.size()) throw UsageError("trace csv line " + std::to_string(lineno) + ": k out of sequence");
    t.k.push_back(kval);
    Vector x(t.dim);
    for (Index i = 0; i < t.dim; ++i) x[i] = cells[3 + static_cast<std::size_t>(i)];
    t.x.push_back(std::move(x));
    const std::size_t o = 3 + static_cast<std::size_t>(t.dim);
    StepRecord r;
    r.t = cells[1];
    r.gamma = cells[2];
    r.V = cells[o];
    r.u_value = cells[o + 1];
    r.min_norm = cells[o + 2];
    r.step_norm = cells[o + 3];
    r.noise_norm = cells[o + 4];
    t.records.push_back(r);
  }
  if (t.k.empty()) throw UsageError("trace csv: no rows");
  return t;
}

inline TraceTable read_trace_csv(const std::filesystem::path& path) { return parse_trace_csv(read_file(path)); }

}  // namespace incluso::harness
