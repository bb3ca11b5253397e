/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "brb/error.hpp"

namespace brb {

namespace {

using json = nlohmann::json;

/// Forward iterator over a buffer that counts the newlines it has passed.
class LineCountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  struct Lines {
    int current = 1;
    int before_last = 1;  // line before the most recent character was read
  };

  LineCountingIterator() = default;
  LineCountingIterator(const char* p, Lines* lines) : p_(p), lines_(lines) {}

  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (lines_ != nullptr) {
      lines_->before_last = lines_->current;
      if (*p_ == '\n') ++lines_->current;
    }
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    LineCountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const LineCountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const LineCountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_ = nullptr;
  Lines* lines_ = nullptr;
};

/// Records the line of every value, keyed by JSON pointer.
class LineMapper : public nlohmann::json_sax<json> {
 public:
  explicit LineMapper(const LineCountingIterator::Lines* lines) : lines_(lines) {}

  std::map<std::string, int> lines;

  bool null() override { return scalar(lines_->current); }
  bool boolean(bool) override { return scalar(lines_->current); }
  bool number_integer(number_integer_t) override { return scalar(lines_->before_last); }
  bool number_unsigned(number_unsigned_t) override { return scalar(lines_->before_last); }
  bool number_float(number_float_t, const string_t&) override {
    return scalar(lines_->before_last);
  }
  bool string(string_t&) override { return scalar(lines_->current); }
  bool binary(binary_t&) override { return scalar(lines_->current); }
  bool start_object(std::size_t) override { return open(false); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(true); }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    frames_.back().key = escape(k);
    return true;
  }
  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index = 0;
    std::string key;
  };

  static std::string escape(const std::string& k) {
    std::string out;
    for (char c : k) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  std::string path() const {
    std::string p;
    for (const auto& f : frames_) {
      p += '/';
      p += f.array ? std::to_string(f.index) : f.key;
    }
    return p;
  }

  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  bool scalar(int line) {
    lines.emplace(path(), line);
    advance();
    return true;
  }
  bool open(bool array) {
    lines.emplace(path(), lines_->current);
    frames_.push_back({array, 0, {}});
    return true;
  }
  bool close() {
    frames_.pop_back();
    advance();
    return true;
  }

  const LineCountingIterator::Lines* lines_;
  std::vector<Frame> frames_;
};

class Document {
 public:
  Document(const std::string& text, std::string origin) : origin_(std::move(origin)) {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, origin_ + ": " + e.what());
    }
    LineCountingIterator::Lines counter;
    LineMapper mapper(&counter);
    LineCountingIterator first(text.data(), &counter);
    LineCountingIterator last(text.data() + text.size(), nullptr);
    json::sax_parse(first, last, &mapper);
    lines_ = std::move(mapper.lines);
  }

  json root;

  [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
    throw Error(ErrorCode::InvalidInput,
                origin_ + ": line " + std::to_string(line_of(pointer)) + ": " + msg);
  }

  int line_of(std::string pointer) const {
    while (true) {
      const auto it = lines_.find(pointer);
      if (it != lines_.end()) return it->second;
      const auto slash = pointer.rfind('/');
      if (slash == std::string::npos) return 1;
      pointer.resize(slash);
    }
  }

  const json& at(const std::string& pointer) const {
    return root.at(json::json_pointer(pointer));
  }

  double number(const std::string& pointer) const {
    const json& v = at(pointer);
    if (!v.is_number()) fail(pointer, "expected a number at " + pointer);
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(pointer, "non-finite number at " + pointer);
    return x;
  }

  std::size_t index(const std::string& pointer) const {
    const json& v = at(pointer);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail(pointer, "expected a non-negative integer at " + pointer);
    }
    return v.get<std::size_t>();
  }

  const json& array(const std::string& pointer, const char* what) const {
    const json& v = at(pointer);
    if (!v.is_array()) fail(pointer, std::string(what) + " must be an array");
    return v;
  }

 private:
  std::string origin_;
  std::map<std::string, int> lines_;
};

ComplexMatrix parse_matrix(const Document& doc, const std::string& ptr, std::size_t d) {
  const json& m = doc.array(ptr, "matrix");
  auto entry = [&](const std::string& p) {
    const json& e = doc.at(p);
    if (!e.is_array() || e.size() != 2) {
      doc.fail(p, "matrix entries must be [re, im] pairs");
    }
    return complex(doc.number(p + "/0"), doc.number(p + "/1"));
  };
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const bool flat = m.size() == d * d && (d == 1 || (m[0].is_array() && m[0].size() == 2 &&
                                                     m[0][0].is_number()));
  if (flat) {
    for (std::size_t k = 0; k < d * d; ++k) {
      out(Eigen::Index(k / d), Eigen::Index(k % d)) = entry(ptr + "/" + std::to_string(k));
    }
  } else {
    if (m.size() != d) {
      doc.fail(ptr, "matrix must have " + std::to_string(d) + " rows");
    }
    for (std::size_t i = 0; i < d; ++i) {
      const std::string row = ptr + "/" + std::to_string(i);
      if (doc.array(row, "matrix row").size() != d) {
        doc.fail(row, "matrix row must have " + std::to_string(d) + " entries");
      }
      for (std::size_t j = 0; j < d; ++j) {
        out(Eigen::Index(i), Eigen::Index(j)) = entry(row + "/" + std::to_string(j));
      }
    }
  }
  return ComplexMatrix(out);
}

std::vector<Measurement> parse_party(const Document& doc, const std::string& ptr,
                                     std::size_t d) {
  std::vector<Measurement> out;
  const json& settings = doc.array(ptr, "measurement list");
  for (std::size_t x = 0; x < settings.size(); ++x) {
    const std::string sp = ptr + "/" + std::to_string(x);
    const json& outcomes = doc.array(sp, "measurement setting");
    Measurement m;
    for (std::size_t a = 0; a < outcomes.size(); ++a) {
      m.push_back(parse_matrix(doc, sp + "/" + std::to_string(a), d));
    }
    out.push_back(std::move(m));
  }
  return out;
}

LoadedScenario parse_bell(const Document& doc) {
  const json& root = doc.root;
  if (!root.contains("dims")) doc.fail("", "missing \"dims\"");
  const json& dims = doc.array("/dims", "\"dims\"");
  if (dims.size() != 2) doc.fail("/dims", "\"dims\" must list two local dimensions");
  const std::size_t da = doc.index("/dims/0");
  const std::size_t db = doc.index("/dims/1");
  if (da == 0 || db == 0) doc.fail("/dims", "dimensions must be positive");
  if (da * db > kMaxDim) doc.fail("/dims", "joint dimension exceeds " + std::to_string(kMaxDim));

  BellScenario s;
  if (root.contains("psd_tolerance")) s.psd_tolerance = doc.number("/psd_tolerance");
  const json& meas = root.at("measurements");
  if (!meas.is_object() || !meas.contains("alice") || !meas.contains("bob")) {
    doc.fail("/measurements", "\"measurements\" needs \"alice\" and \"bob\"");
  }
  s.alice = parse_party(doc, "/measurements/alice", da);
  s.bob = parse_party(doc, "/measurements/bob", db);

  if (!root.contains("coefficients")) doc.fail("", "missing \"coefficients\"");
  const json& coeffs = doc.array("/coefficients", "\"coefficients\"");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const std::string p = "/coefficients/" + std::to_string(k);
    const json& c = coeffs[k];
    for (const char* key : {"a", "b", "x", "y", "c"}) {
      if (!c.is_object() || !c.contains(key)) {
        doc.fail(p, std::string("coefficient is missing \"") + key + "\"");
      }
    }
    BellTerm t{doc.index(p + "/a"), doc.index(p + "/b"), doc.index(p + "/x"),
               doc.index(p + "/y"), doc.number(p + "/c")};
    if (t.x >= s.alice.size() || t.a >= s.alice[t.x].size()) {
      doc.fail(p, "alice index (a=" + std::to_string(t.a) + ", x=" + std::to_string(t.x) +
                      ") outside the measurements");
    }
    if (t.y >= s.bob.size() || t.b >= s.bob[t.y].size()) {
      doc.fail(p, "bob index (b=" + std::to_string(t.b) + ", y=" + std::to_string(t.y) +
                      ") outside the measurements");
    }
    s.terms.push_back(t);
  }

  try {
    s.validate();
  } catch (const Error& e) {
    doc.fail("/measurements", e.what());
  }

  LoadedScenario out;
  out.op = build_bell_operator(s);
  out.dims = {da, db};
  try {
    out.local_bound = local_bound(s);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLargeToEnumerate) throw;
    out.local_bound = std::numeric_limits<double>::quiet_NaN();
  }
  out.bell = std::move(s);
  return out;
}

LoadedScenario parse_correlation(const Document& doc) {
  const json& c = doc.at("/correlation");
  for (const char* key : {"g", "bloch_a", "bloch_b"}) {
    if (!c.is_object() || !c.contains(key)) {
      doc.fail("/correlation", std::string("\"correlation\" is missing \"") + key + "\"");
    }
  }
  CorrelationScenario s;
  auto vectors = [&](const std::string& ptr) {
    std::vector<BlochVector> out;
    const json& list = doc.array(ptr, "Bloch vector list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      if (doc.array(p, "Bloch vector").size() != 3) doc.fail(p, "Bloch vectors have 3 entries");
      BlochVector v{doc.number(p + "/0"), doc.number(p + "/1"), doc.number(p + "/2")};
      try {
        observable_from_bloch(v);
      } catch (const Error& e) {
        doc.fail(p, e.what());
      }
      out.push_back(v);
    }
    return out;
  };
  s.bloch_a = vectors("/correlation/bloch_a");
  s.bloch_b = vectors("/correlation/bloch_b");
  const json& g = doc.array("/correlation/g", "\"g\"");
  if (g.size() != s.bloch_a.size()) {
    doc.fail("/correlation/g", "\"g\" needs one row per Alice setting");
  }
  for (std::size_t x = 0; x < g.size(); ++x) {
    const std::string p = "/correlation/g/" + std::to_string(x);
    if (doc.array(p, "row of g").size() != s.bloch_b.size()) {
      doc.fail(p, "rows of \"g\" need one entry per Bob setting");
    }
    std::vector<double> row;
    for (std::size_t y = 0; y < s.bloch_b.size(); ++y) {
      row.push_back(doc.number(p + "/" + std::to_string(y)));
    }
    s.g.push_back(std::move(row));
  }

  LoadedScenario out;
  out.op = build_correlation_operator(s);
  out.dims = {2, 2};
  out.local_bound = local_bound(s);
  out.correlation = std::move(s);
  return out;
}

}  // namespace

LoadedScenario parse_scenario(const std::string& text, const std::string& origin) {
  const Document doc(text, origin);
  if (!doc.root.is_object()) doc.fail("", "scenario must be a JSON object");
  const bool has_m = doc.root.contains("measurements");
  const bool has_c = doc.root.contains("correlation");
  if (has_m == has_c) {
    doc.fail("", "exactly one of \"measurements\" or \"correlation\" is required");
  }
  try {
    LoadedScenario out = has_m ? parse_bell(doc) : parse_correlation(doc);
    out.name = origin;
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, origin + ": " + e.what());
  }
}

LoadedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

LoadedScenario builtin_scenario(const std::string& name) {
  LoadedScenario out;
  out.name = name;
  out.dims = {2, 2};
  if (name == "chsh-c4") {
    out.correlation = chsh_c4_fixture();
    out.op = build_correlation_operator(*out.correlation);
    out.local_bound = local_bound(*out.correlation);
  } else if (name == "i3322") {
    out.bell = i3322_fixture();
    out.op = build_bell_operator(*out.bell);
    out.local_bound = local_bound(*out.bell);
  } else if (name == "steering-f2") {
    out.op = steering_operator_f2(pauli::z(), pauli::x());
    out.local_bound = std::numbers::sqrt2;
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown builtin scenario \"" + name + "\"");
  }
  return out;
}

std::vector<std::string> builtin_names() { return {"chsh-c4", "i3322", "steering-f2"}; }

}  // namespace brb
