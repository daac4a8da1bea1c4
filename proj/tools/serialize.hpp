#pragma once

// Deterministic JSON and CSV emitters. Every run of the same scenario must
// produce identical bytes, so floats are always printed as %.16e (17
// significant digits), negative zero is normalized away, key order is the
// insertion order and nothing depends on locale.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace emit {

/// 17-significant-digit scientific form, round-trip exact for doubles.
inline std::string fmt_double(double x) {
  x += 0.0;  // -0.0 -> +0.0 so the sign of zero never leaks into the output
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

/// Streaming JSON writer with two-space indentation. Keys appear in call
/// order; the caller is responsible for schema conformance.
class JsonWriter {
 public:
  std::string take() && { return std::move(out_); }
  const std::string& str() const { return out_; }

  void begin_object() {
    separate();
    out_ += '{';
    stack_.push_back(true);
  }
  void end_object() { close('}'); }
  void begin_array() {
    separate();
    out_ += '[';
    stack_.push_back(true);
  }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    separate();
    out_ += '"';
    out_ += k;
    out_ += "\": ";
    after_key_ = true;
  }

  void value(double v) {
    separate();
    if (std::isfinite(v)) {
      out_ += fmt_double(v);
    } else {
      out_ += "null";  // JSON has no infinities; consumers read null as "diverged"
    }
  }
  void value(const std::string& v) {
    separate();
    out_ += '"';
    out_ += v;  // emitted strings are fixed tokens, never user text
    out_ += '"';
  }
  void value(bool v) {
    separate();
    out_ += v ? "true" : "false";
  }

  void key_value(const std::string& k, double v) {
    key(k);
    value(v);
  }
  void key_value(const std::string& k, const std::string& v) {
    key(k);
    value(v);
  }
  void key_value(const std::string& k, bool v) {
    key(k);
    value(v);
  }

  void value(const std::complex<double>& c) {
    begin_object();
    key_value("re", c.real());
    key_value("im", c.imag());
    end_object();
  }

  void value(const Eigen::MatrixXcd& m) {
    begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      begin_array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) value(m(i, j));
      end_array();
    }
    end_array();
  }

 private:
  // Inserts the comma/newline/indent owed before a new element.
  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (stack_.empty()) return;
    if (!stack_.back()) out_ += ',';
    stack_.back() = false;
    out_ += '\n';
    out_.append(2 * stack_.size(), ' ');
  }

  void close(char c) {
    const bool empty = stack_.back();
    stack_.pop_back();
    if (!empty) {
      out_ += '\n';
      out_.append(2 * stack_.size(), ' ');
    }
    out_ += c;
  }

  std::string out_;
  std::vector<bool> stack_;  // true while the open container is still empty
  bool after_key_ = false;
};

/// Row-oriented CSV writer. Cells are preformatted tokens (numbers, fixed
/// words), so no quoting or escaping is ever needed.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  std::vector<std::string>& new_row() {
    rows_.emplace_back();
    rows_.back().reserve(header_.size());
    return rows_.back();
  }

  std::string take() const {
    std::string out = join(header_);
    for (const auto& row : rows_) out += join(row);
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    return line;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline void push_complex(std::vector<std::string>& row, const std::complex<double>& c) {
  row.push_back(fmt_double(c.real()));
  row.push_back(fmt_double(c.imag()));
}

inline void push_matrix(std::vector<std::string>& row, const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) push_complex(row, m(i, j));
}

/// Column labels m_<i><j>_re / m_<i><j>_im for a flattened matrix.
inline void matrix_header(std::vector<std::string>& header, const std::string& name, int rows,
                          int cols) {
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const std::string base = name + "_" + std::to_string(i) + std::to_string(j);
      header.push_back(base + "_re");
      header.push_back(base + "_im");
    }
  }
}

}  // namespace emit
